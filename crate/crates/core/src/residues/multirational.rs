//! Rational functions in `z_1..z_n` over Q(u, v), stored as an integer
//! polynomial in `(u, v, z_1, ..., z_n)` over a product of known factors.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::exactring::{Monomial, MotClass, Poly, MAX_VARS};
use crate::univariate::UPoly;

/// Largest number of `z` variables that fits the packed monomial.
pub const MAX_Z_VARS: usize = MAX_VARS - 2;

/// Index of `z_i` (1-based) among the polynomial variables.
#[inline]
pub fn zvar(i: usize) -> usize {
    i + 1
}

pub fn z_poly(n: usize, i: usize) -> Poly {
    Poly::var(n + 2, zvar(i))
}

/// `c * u^a v^b`, `a, b >= 0`.
pub fn uv_monomial(n: usize, a: u32, b: u32, c: i64) -> Poly {
    let mut e = vec![0u32; n + 2];
    e[0] = a;
    e[1] = b;
    Poly::monomial(n + 2, Monomial::from_exponents(&e), c)
}

/// `value = num / prod den_i^{m_i}` with every factor primitive, of
/// positive leading coefficient and not dividing `num`.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiRational {
    n: usize,
    num: Poly,
    den: Vec<(Poly, u32)>,
}

impl MultiRational {
    /// Builds and reduces `num / prod factors`; factors should be irreducible
    /// for the result to be canonical.
    pub fn new(n: usize, num: Poly, factors: Vec<(Poly, u32)>) -> Self {
        assert!(n <= MAX_Z_VARS, "too many z variables");
        assert_eq!(num.nvars(), n + 2);
        let mut num = num;
        let mut merged: Vec<(Poly, u32)> = Vec::new();
        for (f, m) in factors {
            assert!(!f.is_zero(), "zero denominator factor");
            if m == 0 {
                continue;
            }
            let content = f.content();
            let mut f = f.div_scalar_exact(&content);
            if f.leading_coeff().is_some_and(|c| c.is_negative()) {
                f = f.neg();
                if m % 2 == 1 {
                    num = num.neg();
                }
            }
            // Integer content stays as a constant factor.
            if !content.is_one() {
                let c = Poly::constant(n + 2, content.clone());
                match merged.iter_mut().find(|(g, _)| *g == c) {
                    Some(slot) => slot.1 += m,
                    None => merged.push((c, m)),
                }
            }
            if f.is_one() {
                continue;
            }
            match merged.iter_mut().find(|(g, _)| *g == f) {
                Some(slot) => slot.1 += m,
                None => merged.push((f, m)),
            }
        }
        if num.is_zero() {
            return MultiRational { n, num, den: Vec::new() };
        }
        for slot in merged.iter_mut() {
            while slot.1 > 0 {
                match num.div_exact(&slot.0) {
                    Some(q) => {
                        num = q;
                        slot.1 -= 1;
                    }
                    None => break,
                }
            }
        }
        merged.retain(|(_, m)| *m > 0);
        merged.sort_by(|a, b| b.0.terms().cmp(a.0.terms()).then(a.1.cmp(&b.1)));
        MultiRational { n, num, den: merged }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn denominator(&self) -> Poly {
        let mut acc = Poly::one(self.n + 2);
        for (f, m) in &self.den {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    /// Value equality by cross-multiplication.
    pub fn same_value(&self, other: &MultiRational) -> bool {
        self.n == other.n && &self.num * &other.denominator() == &other.num * &self.denominator()
    }

    /// Applies `z_i -> z_{perm[i-1]}`.
    pub fn permute(&self, perm: &[usize]) -> MultiRational {
        let num = permute_poly(&self.num, self.n, perm);
        let den = self.den.iter().map(|(f, m)| (permute_poly(f, self.n, perm), *m)).collect();
        MultiRational::new(self.n, num, den)
    }

    /// Substitutes `z_i -> c_i z^{k_i}` for all `i` and returns the
    /// numerator and denominator as polynomials in `z`.
    pub fn specialize(&self, subs: &[(MotClass, usize)]) -> (UPoly, UPoly) {
        let num = specialize_poly(&self.num, self.n, subs);
        let mut den = UPoly::one();
        for (f, m) in &self.den {
            den = &den * &specialize_poly(f, self.n, subs).pow(*m);
        }
        (num, den)
    }

    pub fn to_repr(&self) -> MultiRationalRepr {
        MultiRationalRepr {
            n: self.n,
            numerator: poly_repr(&self.num),
            denominator: self
                .den
                .iter()
                .map(|(f, m)| FactorRepr { factor: poly_repr(f), multiplicity: *m })
                .collect(),
        }
    }

    pub fn from_repr(r: &MultiRationalRepr) -> Option<MultiRational> {
        let num = repr_poly(r.n, &r.numerator)?;
        let mut den = Vec::new();
        for f in &r.denominator {
            den.push((repr_poly(r.n, &f.factor)?, f.multiplicity));
        }
        Some(MultiRational::new(r.n, num, den))
    }
}

pub(crate) fn permute_poly(p: &Poly, n: usize, perm: &[usize]) -> Poly {
    p.map_monomials(n + 2, |m| {
        let mut e = vec![0u32; n + 2];
        e[0] = m.exponent(0);
        e[1] = m.exponent(1);
        for i in 1..=n {
            e[zvar(perm[i - 1])] += m.exponent(zvar(i));
        }
        Monomial::from_exponents(&e)
    })
}

/// Substitutes every `z_i -> c_i z^{k_i}` in `p`.
pub(crate) fn specialize_poly(p: &Poly, n: usize, subs: &[(MotClass, usize)]) -> UPoly {
    assert_eq!(subs.len(), n);
    let mut out: Vec<MotClass> = Vec::new();
    let mut cache: Vec<Vec<MotClass>> = vec![vec![MotClass::one()]; n];
    for (m, c) in p.terms() {
        let mut coeff = &MotClass::from_bigint(c.clone()) * &MotClass::monomial(m.exponent(0) as i64, m.exponent(1) as i64);
        let mut deg = 0usize;
        for i in 1..=n {
            let e = m.exponent(zvar(i)) as usize;
            if e == 0 {
                continue;
            }
            let powers = &mut cache[i - 1];
            while powers.len() <= e {
                let next = powers.last().unwrap() * &subs[i - 1].0;
                powers.push(next);
            }
            coeff = &coeff * &powers[e];
            deg += e * subs[i - 1].1;
        }
        if out.len() <= deg {
            out.resize(deg + 1, MotClass::zero());
        }
        out[deg] += &coeff;
    }
    UPoly::from_coeffs(out)
}

/// Result of `z_k -> c z_m` with `c = u^a v^b` (Laurent): the substituted
/// polynomial equals `u^{s_u} v^{s_v} * poly`.
pub(crate) fn subst_var_monomial(p: &Poly, n: usize, k: usize, m: usize, a: i64, b: i64) -> (Poly, i64, i64) {
    let top = p.degree(zvar(k)) as i64;
    let su = a.min(0) * top;
    let sv = b.min(0) * top;
    let q = p.map_monomials(n + 2, |mono| {
        let mut e = mono.exponents(n + 2);
        let ek = e[zvar(k)] as i64;
        e[zvar(k)] = 0;
        e[zvar(m)] += ek as u32;
        e[0] = (e[0] as i64 + a * ek - su) as u32;
        e[1] = (e[1] as i64 + b * ek - sv) as u32;
        Monomial::from_exponents(&e)
    });
    (q, su, sv)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermReprN {
    pub coefficient: String,
    /// Exponents of `(u, v, z_1, ..., z_n)`.
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRepr {
    pub factor: Vec<TermReprN>,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiRationalRepr {
    pub n: usize,
    pub numerator: Vec<TermReprN>,
    pub denominator: Vec<FactorRepr>,
}

fn poly_repr(p: &Poly) -> Vec<TermReprN> {
    p.terms()
        .iter()
        .map(|(m, c)| TermReprN { coefficient: c.to_string(), exponents: m.exponents(p.nvars()) })
        .collect()
}

fn repr_poly(n: usize, terms: &[TermReprN]) -> Option<Poly> {
    let mut out = Vec::new();
    for t in terms {
        if t.exponents.len() != n + 2 {
            return None;
        }
        let c: BigInt = t.coefficient.parse().ok()?;
        out.push((Monomial::from_exponents(&t.exponents), c));
    }
    Some(Poly::from_terms(n + 2, out))
}

impl fmt::Debug for MultiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MultiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = ["u".to_string(), "v".to_string()]
            .into_iter()
            .chain((1..=self.n).map(|i| format!("z{i}")))
            .collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "({})", self.num.display_with(&refs))?;
        if self.den.is_empty() {
            return Ok(());
        }
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(p, m)| {
                let s = format!("({})", p.display_with(&refs));
                if *m == 1 {
                    s
                } else {
                    format!("{s}^{m}")
                }
            })
            .collect();
        write!(f, " / ({})", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_cancels_known_factors() {
        let n = 2;
        let f = &z_poly(n, 1) - &(&uv_monomial(n, 1, 1, 1) * &z_poly(n, 2));
        let g = &Poly::one(n + 2) - &z_poly(n, 1);
        let num = &(&f * &g) * &z_poly(n, 2);
        let r = MultiRational::new(n, num, vec![(f.clone(), 2), (g.neg(), 1)]);
        assert_eq!(r.factors().len(), 1);
        // Factors are normalized to a positive leading coefficient.
        assert_eq!(r.factors()[0], (f.neg(), 1));
        assert_eq!(r.numerator(), &z_poly(n, 2));
    }

    #[test]
    fn repr_roundtrip() {
        let n = 2;
        let f = &z_poly(n, 1) - &(&uv_monomial(n, 1, 1, 1) * &z_poly(n, 2));
        let r = MultiRational::new(n, z_poly(n, 2), vec![(f, 1)]);
        let back = MultiRational::from_repr(&r.to_repr()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn monomial_substitution_tracks_laurent_shift() {
        let n = 2;
        // z_1 - L z_2 with z_2 -> L^{-1} z_1 vanishes.
        let f = &z_poly(n, 1) - &(&uv_monomial(n, 1, 1, 1) * &z_poly(n, 2));
        let (q, _, _) = subst_var_monomial(&f, n, 2, 1, -1, -1);
        assert!(q.is_zero());
        // 1 - z_2 -> 1 - z_1/L = L^{-1} (L - z_1).
        let g = &Poly::one(n + 2) - &z_poly(n, 2);
        let (q, su, sv) = subst_var_monomial(&g, n, 2, 1, -1, -1);
        assert_eq!((su, sv), (-1, -1));
        assert_eq!(q, &uv_monomial(n, 1, 1, 1) - &z_poly(n, 1));
    }
}
