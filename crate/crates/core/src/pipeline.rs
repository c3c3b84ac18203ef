//! The generating series `Omega`, the classes `B_{r,d}` and `H_{r,d}`, the
//! semistable and connection classes, and the identities used to cross-check
//! them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use rayon::prelude::*;

use crate::curvezeta::{make_curve, vol, zeta_const, CurveModel};
use crate::exactring::{nilcone_class, MotClass};
use crate::partitions::{partitions_of, Partition};
use crate::plethystic::{exp_pleth, log_pleth, pow_pleth, primitive, ray_exp, GradedSeries, PlethysticError};
use crate::residues::{j_mot_rational, res_lambda, ResidueError, MAX_Z_VARS};
use crate::univariate::{RatFn, UnivariateError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error(
        "truncation (r_max, d_max) = ({have_r}, {have_d}) is too small; \
         rank {need_r} and degree {need_d} are required"
    )]
    InsufficientTruncation { need_r: u32, need_d: u32, have_r: u32, have_d: u32 },
    #[error("twists e = {e} and e + 1 disagree for (r, d) = ({r}, {d})")]
    StabilizationFailure { r: u32, d: i64, e: i64 },
    #[error("exponent of L still depends on d_{index} (coefficient {coefficient})")]
    NonConstantExponent { index: usize, coefficient: i64 },
    #[error("degree {d_lo} is not above the periodicity bound {bound}")]
    BelowPeriodicityBound { d_lo: i64, bound: i64 },
    #[error("rank must be positive")]
    ZeroRank,
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error(transparent)]
    Plethystic(#[from] PlethysticError),
    #[error(transparent)]
    Univariate(#[from] UnivariateError),
}

/// Truncation bounds a table was built with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Provenance {
    pub r_max: u32,
    pub d_max: u32,
    pub partitions: usize,
}

/// `Omega`, `B` and `H` for one curve on the box `r <= r_max`, `d <= d_max`.
pub struct HiggsTable {
    curve: CurveModel,
    omega: GradedSeries,
    b: BTreeMap<(u32, u32), MotClass>,
    h: BTreeMap<(u32, u32), MotClass>,
    provenance: Provenance,
}

type TermCache = Mutex<HashMap<(u32, Partition), RatFn>>;
type TableCache = Mutex<HashMap<u32, Vec<Arc<HiggsTable>>>>;

fn term_cache() -> &'static TermCache {
    static CACHE: OnceLock<TermCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn table_cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `L^{(g-1)<lambda,lambda>} J_lambda(z) res_lambda(z)`, memoized per genus.
fn omega_term(c: &CurveModel, lambda: &Partition) -> Result<RatFn, ResidueError> {
    let key = (c.genus(), lambda.clone());
    if let Some(f) = term_cache().lock().unwrap().get(&key) {
        return Ok(f.clone());
    }
    let g = c.genus() as i64;
    let f = j_mot_rational(c, lambda)
        .mul(&res_lambda(c, lambda)?)
        .scale(&MotClass::l_pow((g - 1) * lambda.pairing() as i64));
    term_cache().lock().unwrap().insert(key, f.clone());
    Ok(f)
}

impl HiggsTable {
    pub fn build(c: &CurveModel, r_max: u32, d_max: u32) -> Result<HiggsTable, PipelineError> {
        if r_max as usize > MAX_Z_VARS {
            return Err(PipelineError::InsufficientTruncation {
                need_r: r_max,
                need_d: d_max,
                have_r: MAX_Z_VARS as u32,
                have_d: d_max,
            });
        }
        let parts: Vec<Partition> = (0..=r_max).flat_map(partitions_of).collect();
        let rows: Vec<(u32, Vec<MotClass>)> = parts
            .par_iter()
            .map(|lam| -> Result<_, PipelineError> {
                let s = omega_term(c, lam)?.series(d_max as usize)?;
                Ok((lam.size(), s.coeffs().to_vec()))
            })
            .collect::<Result<_, _>>()?;
        let mut acc: BTreeMap<(u32, u32), MotClass> = BTreeMap::new();
        for (r, coeffs) in rows {
            for (d, x) in coeffs.into_iter().enumerate() {
                let slot = acc.entry((r, d as u32)).or_insert_with(MotClass::zero);
                *slot += &x;
            }
        }
        let omega = GradedSeries::from_map(acc, r_max, d_max);
        let b_series = log_pleth(&omega)?.scale(&MotClass::lefschetz());
        let b: BTreeMap<(u32, u32), MotClass> =
            b_series.iter().filter(|((r, _), _)| *r > 0).map(|(k, c)| (*k, c.clone())).collect();

        let g = c.genus() as i64;
        let mut h = BTreeMap::new();
        for r0 in 1..=r_max {
            for d0 in 0..=d_max {
                if r0.gcd(&d0) != 1 {
                    continue;
                }
                let on_ray: BTreeMap<(u32, u32), MotClass> = b
                    .iter()
                    .filter(|((r, d), _)| primitive((*r, *d)) == (r0, d0))
                    .map(|(k, c)| (*k, c.clone()))
                    .collect();
                for ((r, d), x) in ray_exp(&on_ray, (r0, d0), r_max, d_max)? {
                    let r2 = (r as i64) * (r as i64);
                    h.insert((r, d), &MotClass::l_pow((g - 1) * r2) * &x);
                }
            }
        }
        Ok(HiggsTable {
            curve: c.clone(),
            omega,
            b,
            h,
            provenance: Provenance { r_max, d_max, partitions: parts.len() },
        })
    }

    /// A memoized table of this genus covering the box, built on demand.
    pub fn shared(c: &CurveModel, r_max: u32, d_max: u32) -> Result<Arc<HiggsTable>, PipelineError> {
        let g = c.genus();
        if let Some(list) = table_cache().lock().unwrap().get(&g) {
            if let Some(t) = list.iter().find(|t| t.covers(r_max, d_max)) {
                return Ok(t.clone());
            }
        }
        let t = Arc::new(HiggsTable::build(c, r_max, d_max)?);
        let mut cache = table_cache().lock().unwrap();
        let list = cache.entry(g).or_default();
        list.retain(|old| !t.covers(old.provenance.r_max, old.provenance.d_max));
        list.push(t.clone());
        Ok(t)
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn covers(&self, r: u32, d: u32) -> bool {
        r <= self.provenance.r_max && d <= self.provenance.d_max
    }

    fn check(&self, r: u32, d: u32) -> Result<(), PipelineError> {
        if self.covers(r, d) {
            Ok(())
        } else {
            Err(PipelineError::InsufficientTruncation {
                need_r: r,
                need_d: d,
                have_r: self.provenance.r_max,
                have_d: self.provenance.d_max,
            })
        }
    }

    pub fn omega(&self) -> &GradedSeries {
        &self.omega
    }

    pub fn b_map(&self) -> &BTreeMap<(u32, u32), MotClass> {
        &self.b
    }

    pub fn h_map(&self) -> &BTreeMap<(u32, u32), MotClass> {
        &self.h
    }

    pub fn b(&self, r: u32, d: u32) -> Result<MotClass, PipelineError> {
        self.check(r, d)?;
        Ok(self.b.get(&(r, d)).cloned().unwrap_or_else(MotClass::zero))
    }

    pub fn h(&self, r: u32, d: u32) -> Result<MotClass, PipelineError> {
        if r == 0 {
            return Err(PipelineError::ZeroRank);
        }
        self.check(r, d)?;
        Ok(self.h.get(&(r, d)).cloned().unwrap_or_else(MotClass::zero))
    }

    /// `1 + sum L^{(1-g) r^2} H_{r,d} w^r z^d` over the rays of slope `d0/r0`.
    fn ray_series(&self, h: &BTreeMap<(u32, u32), MotClass>, r0: u32, d0: u32) -> GradedSeries {
        let g = self.curve.genus() as i64;
        let (r_max, d_max) = (self.provenance.r_max, self.provenance.d_max);
        let mut s = GradedSeries::one(r_max, d_max);
        for ((r, d), x) in h {
            if *r > 0 && primitive((*r, *d)) == (r0, d0) {
                let r2 = (*r as i64) * (*r as i64);
                s.set(*r, *d, &MotClass::l_pow((1 - g) * r2) * x);
            }
        }
        s
    }

    /// Compares `Pow(Omega, L)` with the product over slopes built from `h`.
    pub fn slope_check_against(&self, h: &BTreeMap<(u32, u32), MotClass>) -> Result<SlopeCheck, PipelineError> {
        let (r_max, d_max) = (self.provenance.r_max, self.provenance.d_max);
        let lhs = pow_pleth(&self.omega, &MotClass::lefschetz())?;
        let mut rhs = GradedSeries::one(r_max, d_max);
        for r0 in 1..=r_max {
            for d0 in 0..=d_max {
                if r0.gcd(&d0) == 1 {
                    rhs = rhs.multiply(&self.ray_series(h, r0, d0));
                }
            }
        }
        for r in 0..=r_max {
            for d in 0..=d_max {
                if lhs.get(r, d) != rhs.get(r, d) {
                    return Ok(SlopeCheck { passed: false, first_mismatch: Some((r, d)) });
                }
            }
        }
        Ok(SlopeCheck { passed: true, first_mismatch: None })
    }
}

/// Outcome of the slope factorization, with the first bad coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlopeCheck {
    pub passed: bool,
    pub first_mismatch: Option<(u32, u32)>,
}

pub fn omega_series(c: &CurveModel, r_max: u32, d_max: u32) -> Result<GradedSeries, PipelineError> {
    let t = HiggsTable::shared(c, r_max, d_max)?;
    Ok(t.omega().truncate(r_max, d_max))
}

pub fn b_classes(c: &CurveModel, r_max: u32, d_max: u32) -> Result<BTreeMap<(u32, u32), MotClass>, PipelineError> {
    let t = HiggsTable::shared(c, r_max, d_max)?;
    Ok(t.b_map()
        .iter()
        .filter(|((r, d), _)| *r <= r_max && *d <= d_max)
        .map(|(k, x)| (*k, x.clone()))
        .collect())
}

pub fn h_rd(c: &CurveModel, r: u32, d: u32) -> Result<MotClass, PipelineError> {
    if r == 0 {
        return Err(PipelineError::ZeroRank);
    }
    HiggsTable::shared(c, r, d)?.h(r, d)
}

/// Least twist `e` with `e > (r-1)(g-1) - d/r` and `d + e r >= 0`.
pub fn twist_for(g: u32, r: u32, d: i64) -> i64 {
    let r = r as i64;
    let g = g as i64;
    let bound_floor = Integer::div_floor(&((r - 1) * (g - 1) * r - d), &r);
    let nonneg = Integer::div_ceil(&-d, &r);
    (bound_floor.max(0) + 1).max(nonneg)
}

/// Largest degree touched by [`mss_class`], witness included.
pub fn mss_degree_needed(g: u32, r: u32, d: i64) -> u32 {
    let e = twist_for(g, r, d);
    (d + (e + 1) * r as i64) as u32
}

/// `[M^ss_{r,d}] = H_{r, d + e r}`, checked against the twist `e + 1`.
pub fn mss_class(c: &CurveModel, r: u32, d: i64) -> Result<MotClass, PipelineError> {
    if r == 0 {
        return Err(PipelineError::ZeroRank);
    }
    let e = twist_for(c.genus(), r, d);
    let d1 = (d + e * r as i64) as u32;
    let d2 = d1 + r;
    let t = HiggsTable::shared(c, r, d2)?;
    let x = t.h(r, d1)?;
    if x != t.h(r, d2)? {
        return Err(PipelineError::StabilizationFailure { r, d, e });
    }
    Ok(x)
}

/// `[Conn_r] = [M^ss_{r,0}]`.
pub fn conn_class(c: &CurveModel, r: u32) -> Result<MotClass, PipelineError> {
    mss_class(c, r, 0)
}

/// Classes of HN-nonnegative stacks at `(r, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonnegClasses {
    pub e_nilp: MotClass,
    pub e_end: MotClass,
    pub m_nonneg: MotClass,
}

pub fn nonneg_classes(c: &CurveModel, r: u32, d: u32) -> Result<NonnegClasses, PipelineError> {
    let t = HiggsTable::shared(c, r, d)?;
    let omega = t.omega().truncate(r, d);
    let e_end = pow_pleth(&omega, &MotClass::lefschetz())?.get(r, d);
    let g = c.genus() as i64;
    let r2 = (r as i64) * (r as i64);
    Ok(NonnegClasses {
        e_nilp: omega.get(r, d),
        m_nonneg: &MotClass::l_pow((g - 1) * r2) * &e_end,
        e_end,
    })
}

/// Product of the slope series against `Pow(Omega, L)` on the whole box.
pub fn slope_factorization_check(c: &CurveModel, r_max: u32, d_max: u32) -> Result<SlopeCheck, PipelineError> {
    let t = HiggsTable::shared(c, r_max, d_max)?;
    if t.covers(r_max + 1, d_max) || t.covers(r_max, d_max + 1) {
        // A larger cached table: compare on the requested box only.
        let small = HiggsTable::build(c, r_max, d_max)?;
        return small.slope_check_against(small.h_map());
    }
    t.slope_check_against(t.h_map())
}

/// `Pow(sum [N_l] z^l, A) = Exp([X] z / (L - 1))` through `z^{d_max}`.
pub fn torsion_identity_with(c: &CurveModel, a: &MotClass, d_max: u32) -> bool {
    let mut nil = GradedSeries::new(0, d_max);
    for l in 0..=d_max {
        nil.set(0, l, nilcone_class(l));
    }
    let lhs = pow_pleth(&nil, a).expect("constant term is 1");
    let one = MotClass::one();
    let first = c.class_of_x() / &(&MotClass::lefschetz() - &one);
    let mut arg = GradedSeries::new(0, d_max);
    arg.set(0, 1, first);
    let rhs = exp_pleth(&arg).expect("no constant term");
    lhs == rhs
}

pub fn torsion_identity_check(c: &CurveModel, d_max: u32) -> bool {
    torsion_identity_with(c, c.class_of_x(), d_max)
}

/// Normalization of the rank-one factor in full-flag classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagNormalization {
    /// `[Jac] / (L - 1)` per step, the class of the Picard stack.
    Picard,
    /// `[Jac]` per step.
    Jacobian,
}

/// A power of `L` whose exponent is affine in `d_1, ..., d_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineExponent {
    pub constant: i64,
    pub linear: Vec<i64>,
}

/// Exponent of `L` in the full-flag class as a function of `d_1..d_s`.
pub fn flag_exponent(g: u32, s: usize) -> AffineExponent {
    let (g, si) = (g as i64, s as i64);
    AffineExponent {
        constant: (g - 1) * si * (si - 1) / 2,
        linear: (1..=si).map(|i| 2 * i - si - 1).collect(),
    }
}

pub fn flag_class_with(c: &CurveModel, degrees: &[i64], norm: FlagNormalization) -> MotClass {
    assert!(!degrees.is_empty(), "a flag has at least one step");
    let ex = flag_exponent(c.genus(), degrees.len());
    let e = ex.constant + ex.linear.iter().zip(degrees).map(|(a, d)| a * d).sum::<i64>();
    let step = match norm {
        FlagNormalization::Picard => c.pic_stack().clone(),
        FlagNormalization::Jacobian => c.jac().clone(),
    };
    &MotClass::l_pow(e) * &step.pow(degrees.len() as i64).unwrap()
}

/// `L^{(g-1)s(s-1)/2 + sum (2i-s-1) d_i} ([Jac]/(L-1))^s`.
pub fn flag_class(c: &CurveModel, degrees: &[i64]) -> MotClass {
    flag_class_with(c, degrees, FlagNormalization::Picard)
}

/// Default weights `(2r-2) d_1 + ... + 2 d_{r-1}`.
pub fn harder_weights(r: u32) -> Vec<i64> {
    (1..r as i64).map(|i| 2 * (r as i64) - 2 * i).collect()
}

/// Harder's limit with explicit weights and normalization.
pub fn harder_limit_with(
    c: &CurveModel,
    r: u32,
    d: i64,
    weights: &[i64],
    norm: FlagNormalization,
) -> Result<bool, PipelineError> {
    assert!(r >= 2, "the limit needs at least two steps");
    let s = r as usize;
    assert_eq!(weights.len(), s - 1);
    // Substitute d_r = d - d_1 - ... - d_{r-1} and add the weights.
    let flag = flag_exponent(c.genus(), s);
    let last = flag.linear[s - 1];
    for i in 0..s - 1 {
        let coeff = flag.linear[i] - last + weights[i];
        if coeff != 0 {
            return Err(PipelineError::NonConstantExponent { index: i + 1, coefficient: coeff });
        }
    }
    // The remaining class at d_1 = ... = d_{r-1} = 0.
    let mut degrees = vec![0i64; s];
    degrees[s - 1] = d;
    let lhs = flag_class_with(c, &degrees, norm);

    let g = c.genus() as i64;
    let ri = r as i64;
    let one = MotClass::one();
    let l_minus_1 = &MotClass::lefschetz() - &one;
    let mut zprod = MotClass::one();
    for i in 2..=ri {
        zprod = &zprod * &zeta_const(c, -i).expect("negative argument avoids the poles");
    }
    let e = (ri - 1) * d + (1 - g) * (ri - 1) * (ri + 2) / 2;
    let front = &(&MotClass::l_pow(e) * &c.jac().pow(ri - 1).unwrap())
        / &(&l_minus_1.pow(ri - 1).unwrap() * &zprod);
    let rhs = &front * &vol(c, r);
    Ok(lhs == rhs)
}

pub fn harder_limit_check(c: &CurveModel, r: u32, d: i64) -> Result<bool, PipelineError> {
    harder_limit_with(c, r, d, &harder_weights(r), FlagNormalization::Picard)
}

/// `H_{r,d} = H_{r,d+r}` for `d` in `[d_lo, d_hi]`; degrees start at zero.
pub fn periodicity_check(c: &CurveModel, r: u32, d_lo: i64, d_hi: i64) -> Result<bool, PipelineError> {
    if r == 0 {
        return Err(PipelineError::ZeroRank);
    }
    let ri = r as i64;
    let bound = ri * (ri - 1) * (c.genus() as i64 - 1);
    if d_lo <= bound {
        return Err(PipelineError::BelowPeriodicityBound { d_lo, bound });
    }
    let lo = d_lo.max(0);
    if d_hi < lo {
        return Ok(true);
    }
    let t = HiggsTable::shared(c, r, (d_hi + ri) as u32)?;
    for d in lo..=d_hi {
        if t.h(r, d as u32)? != t.h(r, (d + ri) as u32)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience for callers holding only a genus.
pub fn curve(g: u32) -> CurveModel {
    make_curve(g as i64).expect("nonnegative genus")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::gl_class;

    fn l() -> MotClass {
        MotClass::lefschetz()
    }

    fn one() -> MotClass {
        MotClass::one()
    }

    fn rank_one(c: &CurveModel) -> MotClass {
        &MotClass::l_pow(c.genus() as i64) * c.pic_stack()
    }

    #[test]
    fn omega_low_coefficients() {
        for g in 0..=2 {
            let c = curve(g);
            let om = omega_series(&c, 2, 4).unwrap();
            assert!(om.get(0, 0).is_one());
            for d in 1..=4 {
                assert!(om.get(0, d).is_zero());
            }
            let linv = MotClass::l_pow(-1);
            let expect = &(&MotClass::l_pow(g as i64 - 1) * &c.p_at(&linv)) / &(&one() - &linv);
            for d in 0..=4 {
                assert_eq!(om.get(1, d), expect, "g={g} d={d}");
            }
        }
        // Hand expansion of the two rank-two terms at z^0 for g = 0.
        let c = curve(0);
        let om = omega_series(&c, 2, 0).unwrap();
        let l = l();
        let lm1 = &l - &one();
        let expect = &l / &(&lm1 * &(&(&l * &l) - &one()));
        assert_eq!(om.get(2, 0), expect);
    }

    #[test]
    fn b_low_coefficients() {
        for g in 0..=2 {
            let c = curve(g);
            let b = b_classes(&c, 2, 3).unwrap();
            assert!(b.keys().all(|(r, _)| *r > 0));
            let linv = MotClass::l_pow(-1);
            let expect = &(&MotClass::l_pow(g as i64) * &c.p_at(&linv)) / &(&one() - &linv);
            for d in 0..=3 {
                assert_eq!(b[&(1, d)], expect);
            }
        }
        // Second-order Log at (2, 0) vanishes for g = 0.
        let b = b_classes(&curve(0), 2, 0).unwrap();
        assert!(b.get(&(2, 0)).is_none_or(|x| x.is_zero()));
    }

    #[test]
    fn h_rank_one_and_genus_zero() {
        for g in 0..=3 {
            let c = curve(g);
            for d in 0..=5 {
                assert_eq!(h_rd(&c, 1, d).unwrap(), rank_one(&c), "g={g} d={d}");
            }
        }
        let c = curve(0);
        for d in 0..=4 {
            let h = h_rd(&c, 2, d).unwrap();
            if d % 2 == 0 {
                assert_eq!(h, gl_class(2).inv().unwrap());
            } else {
                assert!(h.is_zero());
            }
        }
        for d in 0..=6 {
            let h = h_rd(&c, 3, d).unwrap();
            if d % 3 == 0 {
                assert_eq!(h, gl_class(3).inv().unwrap(), "d={d}");
            } else {
                assert!(h.is_zero(), "d={d}");
            }
        }
    }

    #[test]
    fn h_on_primitive_ray_is_linear_in_b() {
        for g in 0..=2 {
            let c = curve(g);
            let t = HiggsTable::shared(&c, 2, 3).unwrap();
            let expect = &MotClass::l_pow(4 * (g as i64 - 1)) * &t.b(2, 1).unwrap();
            assert_eq!(t.h(2, 1).unwrap(), expect);
        }
    }

    #[test]
    fn genus_one_coprime_classes() {
        let c = curve(1);
        let expect = &l() * c.pic_stack();
        assert_eq!(mss_class(&c, 2, 1).unwrap(), expect);
        assert_eq!(mss_class(&c, 2, -1).unwrap(), expect);
    }

    #[test]
    fn twist_choice() {
        assert_eq!(twist_for(0, 1, -5), 6);
        assert_eq!(twist_for(1, 2, 0), 1);
        assert_eq!(twist_for(2, 3, -1), 3);
        assert_eq!(twist_for(2, 2, 0), 2);
        for g in 0..=3 {
            for r in 1..=3u32 {
                for d in -4..=4i64 {
                    let e = twist_for(g, r, d);
                    let ri = r as i64;
                    assert!(e * ri > (ri - 1) * (g as i64 - 1) * ri - d);
                    assert!(d + e * ri >= 0);
                }
            }
        }
    }

    #[test]
    fn mss_and_conn_examples() {
        for g in 0..=2 {
            let c = curve(g);
            assert_eq!(mss_class(&c, 1, -5).unwrap(), rank_one(&c));
            assert_eq!(conn_class(&c, 1).unwrap(), rank_one(&c));
        }
        let c = curve(0);
        assert_eq!(mss_class(&c, 2, 1).unwrap(), h_rd(&c, 2, 3).unwrap());
        assert_eq!(conn_class(&c, 2).unwrap(), mss_class(&c, 2, 0).unwrap());
        let c = curve(1);
        let x = conn_class(&c, 2).unwrap();
        assert_eq!(x, h_rd(&c, 2, 2).unwrap());
        assert_eq!(x, h_rd(&c, 2, 4).unwrap());
    }

    #[test]
    fn nonneg_examples() {
        let c = curve(1);
        let n = nonneg_classes(&c, 0, 0).unwrap();
        assert!(n.e_nilp.is_one() && n.e_end.is_one() && n.m_nonneg.is_one());
        for g in 0..=2 {
            let c = curve(g);
            for d in 0..=2 {
                let n = nonneg_classes(&c, 1, d).unwrap();
                assert_eq!(n.e_end, &l() * &n.e_nilp);
                assert_eq!(n.m_nonneg, &MotClass::l_pow(g as i64 - 1) * &n.e_end);
            }
        }
    }

    #[test]
    fn slope_factorization_and_fault() {
        let c = curve(0);
        assert_eq!(slope_factorization_check(&c, 2, 4).unwrap().passed, true);
        let t = HiggsTable::build(&c, 2, 4).unwrap();
        let mut h = t.h_map().clone();
        let bad = h.get(&(2, 2)).cloned().unwrap() + one();
        h.insert((2, 2), bad);
        let r = t.slope_check_against(&h).unwrap();
        assert_eq!(r, SlopeCheck { passed: false, first_mismatch: Some((2, 2)) });
    }

    #[test]
    fn torsion_identity() {
        for g in 0..=2 {
            let c = curve(g);
            assert!(torsion_identity_check(&c, 8));
        }
        assert!(!torsion_identity_with(&curve(1), &l(), 8));
    }

    #[test]
    fn flag_examples() {
        let c = curve(2);
        assert_eq!(flag_class(&c, &[7]), c.pic_stack().clone());
        let p2 = c.pic_stack().pow(2).unwrap();
        assert_eq!(flag_class(&c, &[1, 4]), &MotClass::l_pow(1 + 4 - 1) * &p2);
        assert_eq!(flag_class(&c, &[3, 3]), &l() * &p2);
    }

    #[test]
    fn harder_limit_and_faults() {
        for g in 0..=2 {
            let c = curve(g);
            for r in 2..=3 {
                for d in -1..=1 {
                    assert!(harder_limit_check(&c, r, d).unwrap(), "g={g} r={r} d={d}");
                }
            }
        }
        let c = curve(1);
        let w = harder_weights(2);
        assert!(!harder_limit_with(&c, 2, 0, &w, FlagNormalization::Jacobian).unwrap());
        assert!(matches!(
            harder_limit_with(&c, 3, 0, &[4, 1], FlagNormalization::Picard),
            Err(PipelineError::NonConstantExponent { index: 2, .. })
        ));
    }

    #[test]
    fn periodicity_examples() {
        assert!(periodicity_check(&curve(0), 2, -1, 4).unwrap());
        assert!(periodicity_check(&curve(1), 3, 1, 6).unwrap());
        assert!(matches!(
            periodicity_check(&curve(2), 2, 2, 6),
            Err(PipelineError::BelowPeriodicityBound { bound: 2, .. })
        ));
    }

    #[test]
    fn insufficient_truncation() {
        let t = HiggsTable::build(&curve(0), 1, 2).unwrap();
        assert!(matches!(t.h(2, 0), Err(PipelineError::InsufficientTruncation { need_r: 2, .. })));
        assert!(matches!(t.h(1, 3), Err(PipelineError::InsufficientTruncation { need_d: 3, .. })));
    }
}
