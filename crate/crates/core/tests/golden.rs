//! Golden values for the symmetrized kernel and the iterated residues.
//!
//! Run with `HIGGSMOT_BLESS=1` to rewrite the files after an intended change.

use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use higgsmot::curvezeta::make_curve;
use higgsmot::exactring::ClassRepr;
use higgsmot::partitions::enumerate_partitions;
use higgsmot::residues::{l_mot, res_lambda, MultiRational, MultiRationalRepr};
use higgsmot::univariate::{RatFn, UPoly};

#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct RatFnRepr {
    shift: i64,
    numerator: Vec<ClassRepr>,
    denominator: Vec<ClassRepr>,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct ResidueEntry {
    partition: Vec<u32>,
    value: RatFnRepr,
}

fn coeffs(p: &UPoly) -> Vec<ClassRepr> {
    p.coeffs().iter().map(|c| c.clone().into()).collect()
}

fn repr(f: &RatFn) -> RatFnRepr {
    RatFnRepr { shift: f.shift(), numerator: coeffs(f.num()), denominator: coeffs(f.den()) }
}

fn from_repr(r: &RatFnRepr) -> RatFn {
    let poly = |v: &[ClassRepr]| UPoly::from_coeffs(v.iter().map(|c| c.clone().try_into().unwrap()).collect());
    RatFn::with_shift(poly(&r.numerator), poly(&r.denominator), r.shift).unwrap()
}

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name)
}

fn bless() -> bool {
    std::env::var_os("HIGGSMOT_BLESS").is_some()
}

/// The stored file contents, rewritten from `value` first when blessing.
fn golden_text<T: Serialize>(name: &str, value: &T) -> String {
    let text = serde_json::to_string_pretty(value).unwrap() + "\n";
    let p = path(name);
    if bless() {
        fs::write(&p, &text).unwrap();
    }
    fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}; bless to create", p.display()))
}

#[test]
fn kernel_golden() {
    for g in 0..=2u32 {
        let c = make_curve(g as i64).unwrap();
        for n in 1..=3 {
            let k = l_mot(&c, n);
            let name = format!("lmot_g{g}_n{n}.json");
            let stored = golden_text(&name, &k.to_repr());
            let parsed: MultiRationalRepr = serde_json::from_str(&stored).unwrap();
            let back = MultiRational::from_repr(&parsed).expect("stored kernel parses");
            assert!(back.same_value(&k), "{name} differs from the computed kernel");
        }
    }
}

#[test]
fn residue_golden() {
    for g in 0..=2u32 {
        let c = make_curve(g as i64).unwrap();
        let entries: Vec<ResidueEntry> = enumerate_partitions(3)
            .into_iter()
            .filter(|lam| !lam.is_empty())
            .map(|lam| ResidueEntry { partition: lam.parts().to_vec(), value: repr(&res_lambda(&c, &lam).unwrap()) })
            .collect();
        let name = format!("res_g{g}.json");
        let stored = golden_text(&name, &entries);
        let parsed: Vec<ResidueEntry> = serde_json::from_str(&stored).unwrap();
        assert_eq!(parsed.len(), entries.len());
        for (a, b) in parsed.iter().zip(&entries) {
            assert_eq!(a.partition, b.partition);
            assert!(from_repr(&a.value).same_value(&from_repr(&b.value)), "{name} {:?}", a.partition);
        }
    }
}
