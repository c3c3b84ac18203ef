//! Sparse multivariate polynomials over the integers.
//!
//! Monomials are packed into a single `u128`: the top 16 bits hold the total
//! degree and the remaining seven 16-bit lanes hold the exponents of
//! variables `0..7`, variable 0 in the most significant lane. Comparing the
//! packed words therefore orders monomials graded-lexicographically with
//! `x0 > x1 > ...`, which is the global monomial order of the crate.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const MAX_VARS: usize = 7;

const LANE_MASK: u128 = 0xFFFF;
const TOTAL_SHIFT: u32 = 112;

// Dense accumulators above these sizes fall back to hashing.
const DENSE_SMALL_LIMIT: u128 = 1 << 21;
const DENSE_BIG_LIMIT: u128 = 1 << 17;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    #[inline]
    fn lane_shift(var: usize) -> u32 {
        96 - 16 * var as u32
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut word = 0u128;
        let mut total = 0u32;
        for (i, &e) in exps.iter().enumerate() {
            total += e;
            word |= (e as u128) << Self::lane_shift(i);
        }
        assert!(total <= 0xFFFF, "monomial degree overflow");
        Monomial(word | ((total as u128) << TOTAL_SHIFT))
    }

    pub fn var(var: usize, exp: u32) -> Self {
        assert!(var < MAX_VARS);
        assert!(exp <= 0xFFFF, "monomial degree overflow");
        Monomial(((exp as u128) << Self::lane_shift(var)) | ((exp as u128) << TOTAL_SHIFT))
    }

    #[inline]
    pub fn exponent(self, var: usize) -> u32 {
        ((self.0 >> Self::lane_shift(var)) & LANE_MASK) as u32
    }

    #[inline]
    pub fn total_degree(self) -> u32 {
        (self.0 >> TOTAL_SHIFT) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    #[inline]
    pub fn mul(self, other: Monomial) -> Monomial {
        assert!(
            self.total_degree() + other.total_degree() <= 0xFFFF,
            "monomial degree overflow"
        );
        Monomial(self.0 + other.0)
    }

    #[inline]
    pub fn divides(self, other: Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exponent(i) <= other.exponent(i))
    }

    /// `self / other`, if `other` divides `self`.
    #[inline]
    pub fn checked_div(self, other: Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(self.0 - other.0))
        } else {
            None
        }
    }

    /// Lane-wise minimum (the gcd of two monomials).
    pub fn gcd(self, other: Monomial) -> Monomial {
        let exps: Vec<u32> = (0..MAX_VARS)
            .map(|i| self.exponent(i).min(other.exponent(i)))
            .collect();
        Monomial::from_exponents(&exps)
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents(MAX_VARS))
    }
}

/// A polynomial in `nvars` variables with integer coefficients.
///
/// Terms are kept strictly decreasing in the monomial order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, Monomial::ONE, c)
    }

    pub fn monomial(nvars: usize, m: Monomial, c: impl Into<BigInt>) -> Self {
        assert!(nvars <= MAX_VARS);
        let c = c.into();
        if c.is_zero() {
            Poly::zero(nvars)
        } else {
            Poly { nvars, terms: vec![(m, c)] }
        }
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars);
        Self::monomial(nvars, Monomial::var(var, 1), 1)
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            *map.entry(m).or_insert_with(BigInt::zero) += c;
        }
        let terms = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Poly { nvars, terms }
    }


    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, BigInt)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn degree(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.total_degree()).unwrap_or(0)
    }

    /// Smallest total degree among the terms.
    pub fn low_degree(&self) -> u32 {
        self.terms.last().map(|(m, _)| m.total_degree()).unwrap_or(0)
    }

    /// The largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((first, _)) => it.fold(*first, |acc, (m, _)| acc.gcd(*m)),
        }
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        if k.is_one() {
            return self.clone();
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    /// Divides every coefficient by `k`; panics if some coefficient is not a multiple.
    pub fn div_scalar_exact(&self, k: &BigInt) -> Poly {
        assert!(!k.is_zero(), "division by zero");
        if k.is_one() {
            return self.clone();
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let (q, r) = c.div_rem(k);
                    assert!(r.is_zero(), "inexact scalar division");
                    (*m, q)
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: Monomial) -> Option<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, c) in &self.terms {
            terms.push((t.checked_div(m)?, c.clone()));
        }
        Some(Poly { nvars: self.nvars, terms })
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Rewrites every monomial through `f`. The map must be injective on the
    /// support or coefficients are merged.
    pub fn map_monomials<F>(&self, nvars: usize, mut f: F) -> Poly
    where
        F: FnMut(Monomial) -> Monomial,
    {
        Poly::from_terms(nvars, self.terms.iter().map(|(m, c)| (f(*m), c.clone())))
    }

    /// Substitutes `x_i -> x_i^n` for every variable.
    pub fn inflate(&self, n: u32) -> Poly {
        if n == 1 {
            return self.clone();
        }
        // Order is preserved by scaling all exponents.
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let exps: Vec<u32> = (0..self.nvars).map(|i| m.exponent(i) * n).collect();
                (Monomial::from_exponents(&exps), c.clone())
            })
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    /// Swaps two variables.
    pub fn swap_vars(&self, a: usize, b: usize) -> Poly {
        let nv = self.nvars;
        self.map_monomials(nv, |m| {
            let mut e = m.exponents(nv);
            e.swap(a, b);
            Monomial::from_exponents(&e)
        })
    }

    /// Exact division `self / d`. Returns `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, d.nvars);
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero(self.nvars));
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let q = m.checked_div(*dm)?;
                let (qc, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                terms.push((q, qc));
            }
            return Some(Poly { nvars: self.nvars, terms });
        }
        // Degree screening.
        for i in 0..self.nvars {
            if d.degree(i) > self.degree(i) {
                return None;
            }
        }
        if self.total_degree() < d.total_degree() {
            return None;
        }
        match dense_box(self.nvars, &self.degrees(), DENSE_BIG_LIMIT) {
            Some(layout) => div_exact_dense(self, d, &layout),
            None => div_exact_sparse(self, d),
        }
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.nvars];
        for (m, _) in &self.terms {
            for (i, slot) in out.iter_mut().enumerate() {
                *slot = (*slot).max(m.exponent(i));
            }
        }
        out
    }

    /// Evaluates variable `var` at an integer, keeping the variable slot (now absent).
    pub fn eval_var(&self, var: usize, value: &BigInt) -> Poly {
        let mut powers: Vec<BigInt> = vec![BigInt::one()];
        let nv = self.nvars;
        Poly::from_terms(
            nv,
            self.terms.iter().map(|(m, c)| {
                let e = m.exponent(var) as usize;
                while powers.len() <= e {
                    let next = powers.last().unwrap() * value;
                    powers.push(next);
                }
                let mut exps = m.exponents(nv);
                exps[var] = 0;
                (Monomial::from_exponents(&exps), c * &powers[e])
            }),
        )
    }

    fn add_impl(&self, other: &Poly, negate_other: bool) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            if a[i].0 > b[j].0 {
                out.push(a[i].clone());
                i += 1;
            } else if a[i].0 < b[j].0 {
                let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate_other { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { nvars: self.nvars, terms: out }
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let nv = self.nvars;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(nv);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(*m).scale(c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(*m).scale(c);
        }
        let da = self.degrees();
        let db = other.degrees();
        let dsum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| x + y).collect();
        let small = {
            let n = self.terms.len().min(other.terms.len()) as u64;
            let nbits = 64 - n.leading_zeros() as u64;
            self.max_coeff_bits() + other.max_coeff_bits() + nbits + 1 <= 126
        };
        let limit = if small { DENSE_SMALL_LIMIT } else { DENSE_BIG_LIMIT };
        if let Some(layout) = dense_box(nv, &dsum, limit) {
            let ia: Vec<usize> = self.terms.iter().map(|(m, _)| layout.index(*m)).collect();
            let ib: Vec<usize> = other.terms.iter().map(|(m, _)| layout.index(*m)).collect();
            if small {
                let ca: Vec<i128> = self.terms.iter().map(|(_, c)| c.to_i128().unwrap()).collect();
                let cb: Vec<i128> = other.terms.iter().map(|(_, c)| c.to_i128().unwrap()).collect();
                let mut acc = vec![0i128; layout.size];
                for (x, &xa) in ia.iter().zip(&ca) {
                    for (y, &yb) in ib.iter().zip(&cb) {
                        acc[x + y] += xa * yb;
                    }
                }
                let terms = acc
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| *c != 0)
                    .map(|(idx, c)| (layout.monomial(idx), BigInt::from(c)))
                    .collect::<Vec<_>>();
                return Poly::from_unsorted_unique(nv, terms);
            }
            let mut acc: Vec<BigInt> = vec![BigInt::zero(); layout.size];
            for (x, (_, xa)) in ia.iter().zip(&self.terms) {
                for (y, (_, yb)) in ib.iter().zip(&other.terms) {
                    acc[x + y] += xa * yb;
                }
            }
            let terms = acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(idx, c)| (layout.monomial(idx), c))
                .collect::<Vec<_>>();
            return Poly::from_unsorted_unique(nv, terms);
        }
        if small {
            let mut acc: HashMap<Monomial, i128> = HashMap::new();
            for (ma, ca) in &self.terms {
                let ca = ca.to_i128().unwrap();
                for (mb, cb) in &other.terms {
                    *acc.entry(ma.mul(*mb)).or_insert(0) += ca * cb.to_i128().unwrap();
                }
            }
            let terms = acc
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(m, c)| (m, BigInt::from(c)))
                .collect();
            return Poly::from_unsorted_unique(nv, terms);
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(*mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Poly::from_unsorted_unique(nv, terms)
    }

    fn from_unsorted_unique(nvars: usize, mut terms: Vec<(Monomial, BigInt)>) -> Poly {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { nvars, terms }
    }
}

/// Mixed-radix indexing of the exponent box `[0, deg_i]`.
struct DenseLayout {
    nvars: usize,
    radix: Vec<usize>,
    stride: Vec<usize>,
    size: usize,
}

impl DenseLayout {
    #[inline]
    fn index(&self, m: Monomial) -> usize {
        (0..self.nvars).map(|i| m.exponent(i) as usize * self.stride[i]).sum()
    }

    fn monomial(&self, mut idx: usize) -> Monomial {
        let mut exps = vec![0u32; self.nvars];
        for i in 0..self.nvars {
            exps[i] = (idx / self.stride[i]) as u32;
            idx %= self.stride[i];
        }
        Monomial::from_exponents(&exps)
    }

    fn contains(&self, exps: &[i64]) -> bool {
        exps.iter()
            .zip(&self.radix)
            .all(|(&e, &r)| e >= 0 && (e as usize) < r)
    }
}

fn dense_box(nvars: usize, degrees: &[u32], limit: u128) -> Option<DenseLayout> {
    let mut size: u128 = 1;
    for &d in degrees {
        size *= d as u128 + 1;
        if size > limit {
            return None;
        }
    }
    let radix: Vec<usize> = degrees.iter().map(|&d| d as usize + 1).collect();
    let mut stride = vec![1usize; nvars];
    for i in (0..nvars.saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * radix[i + 1];
    }
    Some(DenseLayout { nvars, radix, stride, size: size as usize })
}

fn div_exact_dense(a: &Poly, d: &Poly, layout: &DenseLayout) -> Option<Poly> {
    let nv = a.nvars;
    let (lm, lc) = d.terms[0].clone();
    // Offsets of divisor terms relative to its leading monomial.
    let rel: Vec<(Vec<i64>, &BigInt)> = d
        .terms
        .iter()
        .map(|(m, c)| {
            let e: Vec<i64> = (0..nv).map(|i| m.exponent(i) as i64 - lm.exponent(i) as i64).collect();
            (e, c)
        })
        .collect();
    let mut rem: Vec<BigInt> = vec![BigInt::zero(); layout.size];
    for (m, c) in &a.terms {
        rem[layout.index(*m)] = c.clone();
    }
    // All monomials of the box in decreasing order.
    let mut order: Vec<Monomial> = (0..layout.size).map(|i| layout.monomial(i)).collect();
    order.sort_unstable_by(|x, y| y.cmp(x));
    let mut quotient = Vec::new();
    let mut exps = vec![0i64; nv];
    for m in order {
        let idx = layout.index(m);
        if rem[idx].is_zero() {
            continue;
        }
        let qm = m.checked_div(lm)?;
        let (qc, r) = rem[idx].div_rem(&lc);
        if !r.is_zero() {
            return None;
        }
        rem[idx] = BigInt::zero();
        for (off, c) in rel.iter().skip(1) {
            for i in 0..nv {
                exps[i] = m.exponent(i) as i64 + off[i];
            }
            if !layout.contains(&exps) {
                return None;
            }
            let j: usize = (0..nv).map(|i| exps[i] as usize * layout.stride[i]).sum();
            rem[j] -= &qc * *c;
        }
        quotient.push((qm, qc));
    }
    Some(Poly { nvars: nv, terms: quotient })
}

fn div_exact_sparse(a: &Poly, d: &Poly) -> Option<Poly> {
    let (lm, lc) = d.terms[0].clone();
    let mut rem: BTreeMap<Monomial, BigInt> = a.terms.iter().cloned().collect();
    let mut quotient = Vec::new();
    while let Some((m, c)) = rem.pop_last() {
        let qm = m.checked_div(lm)?;
        let (qc, r) = c.div_rem(&lc);
        if !r.is_zero() {
            return None;
        }
        for (dm, dc) in d.terms.iter().skip(1) {
            let key = qm.mul(*dm);
            let entry = rem.entry(key).or_insert_with(BigInt::zero);
            *entry -= &qc * dc;
            if entry.is_zero() {
                rem.remove(&key);
            }
        }
        quotient.push((qm, qc));
    }
    Some(Poly { nvars: a.nvars, terms: quotient })
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.mul_impl(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

impl Poly {
    /// Renders with the given variable names, highest terms first.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, name) in names.iter().enumerate().take(self.nvars) {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push((*name).to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["u", "v", "z1", "z2", "z3", "z4", "z5"];
        write!(f, "{}", self.display_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(terms: &[((u32, u32), i64)]) -> Poly {
        Poly::from_terms(
            2,
            terms
                .iter()
                .map(|&((a, b), c)| (Monomial::from_exponents(&[a, b]), BigInt::from(c))),
        )
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let a = Monomial::from_exponents(&[2, 0]);
        let b = Monomial::from_exponents(&[1, 1]);
        let c = Monomial::from_exponents(&[0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert_eq!(a.mul(b), Monomial::from_exponents(&[3, 1]));
        assert!(b.divides(a.mul(b)));
        assert_eq!(a.gcd(b), Monomial::from_exponents(&[1, 0]));
    }

    #[test]
    fn multiply_and_divide_back() {
        let a = p2(&[((1, 1), 1), ((0, 0), -1)]);
        let b = p2(&[((2, 0), 3), ((0, 1), -2), ((0, 0), 5)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        let not_factor = p2(&[((1, 0), 1), ((0, 0), 1)]);
        assert_eq!(prod.div_exact(&not_factor), None);
    }

    #[test]
    fn big_coefficients_take_the_bigint_path() {
        let huge: BigInt = BigInt::from(1u8) << 100;
        let a = Poly::from_terms(
            2,
            vec![
                (Monomial::from_exponents(&[1, 0]), huge.clone()),
                (Monomial::ONE, BigInt::from(1)),
            ],
        );
        let sq = &a * &a;
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.terms()[0].1, &huge * &huge);
        assert_eq!(sq.div_exact(&a), Some(a));
    }

    #[test]
    fn sparse_division_in_many_variables() {
        let nv = 5;
        let x = |i| Poly::var(nv, i);
        let f = &(&x(2) - &(&x(0) * &x(3))) * &(&Poly::one(nv) - &x(4));
        let g = &(&x(3) + &x(1)) * &x(2);
        let prod = &f * &g;
        assert_eq!(prod.div_exact(&f), Some(g));
    }

    #[test]
    fn eval_and_inflate() {
        let a = p2(&[((2, 1), 1), ((0, 0), -1)]);
        assert_eq!(a.inflate(2), p2(&[((4, 2), 1), ((0, 0), -1)]));
        let at2 = a.eval_var(0, &BigInt::from(2));
        assert_eq!(at2, p2(&[((0, 1), 4), ((0, 0), -1)]));
    }
}
