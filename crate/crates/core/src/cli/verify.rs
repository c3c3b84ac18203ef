//! Verification suites run by `higgsmot verify`.

use clap::ValueEnum;

use crate::curvezeta::{functional_equation_holds, CurveModel};
use crate::exactring::{nilcone_class, MotClass};
use crate::pipeline::{harder_limit_check, periodicity_check, slope_factorization_check, torsion_identity_check};
use crate::plethystic::{exp_pleth, log_pleth, GradedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Zeta,
    Pleth,
    Torsion,
    Slope,
    Periodicity,
    Harder,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Zeta => "zeta",
            Suite::Pleth => "pleth",
            Suite::Torsion => "torsion",
            Suite::Slope => "slope",
            Suite::Periodicity => "periodicity",
            Suite::Harder => "harder",
            Suite::All => "all",
        }
    }

    const CONCRETE: [Suite; 6] =
        [Suite::Zeta, Suite::Pleth, Suite::Torsion, Suite::Slope, Suite::Periodicity, Suite::Harder];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: Suite,
    pub label: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl CheckResult {
    fn new(suite: Suite, label: String, outcome: Result<bool, String>) -> Self {
        match outcome {
            Ok(passed) => CheckResult { suite, label, passed, detail: None },
            Err(e) => CheckResult { suite, label, passed: false, detail: Some(e) },
        }
    }

    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        match &self.detail {
            Some(d) => format!("{tag}  {:<12} {}: {d}", self.suite.name(), self.label),
            None => format!("{tag}  {:<12} {}", self.suite.name(), self.label),
        }
    }
}

/// Expands `all` and removes duplicates, keeping a fixed order.
pub fn expand(suites: &[Suite]) -> Vec<Suite> {
    let mut out: Vec<Suite> = if suites.contains(&Suite::All) {
        Suite::CONCRETE.to_vec()
    } else {
        suites.to_vec()
    };
    out.sort();
    out.dedup();
    out
}

fn pleth_checks(out: &mut Vec<CheckResult>) {
    let l = MotClass::lefschetz();
    let one = MotClass::one();
    let mut arg = GradedSeries::new(0, 8);
    arg.set(0, 1, &one / &(&l - &one));
    let e = exp_pleth(&arg).unwrap();
    out.push(CheckResult::new(
        Suite::Pleth,
        "nilpotent-cone classes equal Exp(z/(L-1)) through z^8".into(),
        Ok((0..=8).all(|k| e.get(0, k) == nilcone_class(k))),
    ));
    let mut f = GradedSeries::new(3, 4);
    f.set(1, 0, l.clone());
    f.set(1, 2, MotClass::u());
    f.set(2, 1, &MotClass::v() - &MotClass::from_int(3));
    f.set(0, 3, &one / &(&l - &one));
    let mut g = GradedSeries::new(3, 4);
    g.set(1, 1, MotClass::from_int(2));
    g.set(3, 0, &l * &MotClass::u());
    let ef = exp_pleth(&f).unwrap();
    out.push(CheckResult::new(
        Suite::Pleth,
        "Log inverts Exp on a mixed series".into(),
        Ok(log_pleth(&ef).unwrap() == f),
    ));
    out.push(CheckResult::new(
        Suite::Pleth,
        "Exp turns sums into products".into(),
        Ok(exp_pleth(&f.add(&g)).unwrap() == ef.multiply(&exp_pleth(&g).unwrap())),
    ));
}

/// Runs the suites for a curve; `rank` sizes the rank-dependent checks.
pub fn run(c: &CurveModel, rank: u32, suites: &[Suite]) -> Vec<CheckResult> {
    let g = c.genus();
    let mut out = Vec::new();
    for suite in expand(suites) {
        match suite {
            Suite::Zeta => out.push(CheckResult::new(
                suite,
                format!("functional equation of the zeta function (g={g})"),
                Ok(functional_equation_holds(c)),
            )),
            Suite::Pleth => pleth_checks(&mut out),
            Suite::Torsion => out.push(CheckResult::new(
                suite,
                format!("torsion sheaf identity through z^8 (g={g})"),
                Ok(torsion_identity_check(c, 8)),
            )),
            Suite::Slope => {
                let (r, d) = (rank.max(1), 2 * rank.max(1));
                let res = slope_factorization_check(c, r, d).map_err(|e| e.to_string()).and_then(|s| {
                    if s.passed {
                        Ok(true)
                    } else {
                        Err(format!("first mismatch at {:?}", s.first_mismatch.unwrap()))
                    }
                });
                out.push(CheckResult::new(
                    suite,
                    format!("slope factorization of the nonnegative series up to ({r}, {d}) (g={g})"),
                    res,
                ));
            }
            Suite::Periodicity => {
                for r in 2..=rank.max(2) {
                    let ri = r as i64;
                    let bound = ri * (ri - 1) * (g as i64 - 1);
                    let lo = (bound + 1).max(0);
                    let hi = lo + 2 * ri - 1;
                    out.push(CheckResult::new(
                        suite,
                        format!("H_{{{r},d}} = H_{{{r},d+{r}}} for d in [{lo}, {hi}] (g={g})"),
                        periodicity_check(c, r, bound + 1, hi).map_err(|e| e.to_string()),
                    ));
                }
            }
            Suite::Harder => {
                for r in 2..=rank.max(2) {
                    for d in -1..=1 {
                        out.push(CheckResult::new(
                            suite,
                            format!("Harder limit of full-flag classes, r={r} d={d} (g={g})"),
                            harder_limit_check(c, r, d).map_err(|e| e.to_string()),
                        ));
                    }
                }
            }
            Suite::All => unreachable!("expanded above"),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvezeta::make_curve;

    #[test]
    fn all_expands_to_every_suite() {
        assert_eq!(expand(&[Suite::All, Suite::Zeta]).len(), 6);
        assert_eq!(expand(&[Suite::Harder, Suite::Zeta, Suite::Zeta]), vec![Suite::Zeta, Suite::Harder]);
    }

    #[test]
    fn genus_zero_passes_everything() {
        let res = run(&make_curve(0).unwrap(), 2, &[Suite::All]);
        assert!(res.iter().all(|r| r.passed), "{res:?}");
        assert!(res.iter().any(|r| r.suite == Suite::Harder));
    }
}
