//! Truncated power series in `(w, z)` graded by (rank, degree), with the
//! plethystic exponential, logarithm and power structure.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::exactring::MotClass;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlethysticError {
    #[error("Exp needs a series with zero constant term")]
    NonzeroConstantTerm,
    #[error("Log needs a series with constant term 1")]
    ConstantTermNotOne,
    #[error("key ({0}, {1}) does not lie on the requested ray")]
    KeyOffRay(u32, u32),
}

/// `sum c_{r,d} w^r z^d` known for `r <= r_max`, `d <= d_max`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSeries {
    coeffs: BTreeMap<(u32, u32), MotClass>,
    r_max: u32,
    d_max: u32,
}

impl GradedSeries {
    pub fn new(r_max: u32, d_max: u32) -> Self {
        GradedSeries { coeffs: BTreeMap::new(), r_max, d_max }
    }

    pub fn one(r_max: u32, d_max: u32) -> Self {
        let mut s = Self::new(r_max, d_max);
        s.set(0, 0, MotClass::one());
        s
    }

    pub fn from_map(map: BTreeMap<(u32, u32), MotClass>, r_max: u32, d_max: u32) -> Self {
        let mut s = Self::new(r_max, d_max);
        for ((r, d), c) in map {
            s.set(r, d, c);
        }
        s
    }

    pub fn r_max(&self) -> u32 {
        self.r_max
    }

    pub fn d_max(&self) -> u32 {
        self.d_max
    }

    pub fn in_range(&self, r: u32, d: u32) -> bool {
        r <= self.r_max && d <= self.d_max
    }

    pub fn get(&self, r: u32, d: u32) -> MotClass {
        self.coeffs.get(&(r, d)).cloned().unwrap_or_else(MotClass::zero)
    }

    pub fn get_ref(&self, r: u32, d: u32) -> Option<&MotClass> {
        self.coeffs.get(&(r, d))
    }

    /// Sets a coefficient; keys outside the truncation box are dropped.
    pub fn set(&mut self, r: u32, d: u32, c: MotClass) {
        if !self.in_range(r, d) {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&(r, d));
        } else {
            self.coeffs.insert((r, d), c);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &MotClass)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_term(&self) -> MotClass {
        self.get(0, 0)
    }

    /// Restriction to a smaller box.
    pub fn truncate(&self, r_max: u32, d_max: u32) -> GradedSeries {
        let r_max = r_max.min(self.r_max);
        let d_max = d_max.min(self.d_max);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|((r, d), _)| *r <= r_max && *d <= d_max)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        GradedSeries { coeffs, r_max, d_max }
    }

    pub fn add(&self, other: &GradedSeries) -> GradedSeries {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GradedSeries) -> GradedSeries {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &GradedSeries, op: impl Fn(&MotClass, &MotClass) -> MotClass) -> GradedSeries {
        let mut out = GradedSeries::new(self.r_max.min(other.r_max), self.d_max.min(other.d_max));
        let zero = MotClass::zero();
        let keys: std::collections::BTreeSet<(u32, u32)> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        for (r, d) in keys {
            if !out.in_range(r, d) {
                continue;
            }
            let a = self.coeffs.get(&(r, d)).unwrap_or(&zero);
            let b = other.coeffs.get(&(r, d)).unwrap_or(&zero);
            out.set(r, d, op(a, b));
        }
        out
    }

    pub fn scale(&self, c: &MotClass) -> GradedSeries {
        let mut out = GradedSeries::new(self.r_max, self.d_max);
        for ((r, d), x) in &self.coeffs {
            out.set(*r, *d, x * c);
        }
        out
    }

    /// Cauchy product, truncated to the smaller box.
    pub fn multiply(&self, other: &GradedSeries) -> GradedSeries {
        let r_max = self.r_max.min(other.r_max);
        let d_max = self.d_max.min(other.d_max);
        let mut acc: BTreeMap<(u32, u32), Vec<MotClass>> = BTreeMap::new();
        for ((r1, d1), a) in &self.coeffs {
            if *r1 > r_max || *d1 > d_max {
                continue;
            }
            for ((r2, d2), b) in &other.coeffs {
                let (r, d) = (r1 + r2, d1 + d2);
                if r > r_max || d > d_max {
                    continue;
                }
                acc.entry((r, d)).or_default().push(a * b);
            }
        }
        let sums = acc.into_iter().map(|(k, terms)| (k, terms.into_iter().sum())).collect();
        GradedSeries::from_map(sums, r_max, d_max)
    }
}

impl fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedSeries[r<={}, d<={}]", self.r_max, self.d_max)?;
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

/// `psi_n` on series: `c w^r z^d -> psi_n(c) w^{nr} z^{nd}`.
///
/// The truncation box is unchanged: every coefficient inside it is determined
/// by coefficients of `f` inside the same box.
pub fn series_adams(n: u32, f: &GradedSeries) -> GradedSeries {
    assert!(n >= 1);
    let mut out = GradedSeries::new(f.r_max, f.d_max);
    for ((r, d), c) in &f.coeffs {
        out.set(r * n, d * n, c.adams(n));
    }
    out
}

// Grading weight used by the Euler-type recurrences below.
#[inline]
fn weight(r: u32, d: u32) -> i64 {
    (r + d) as i64
}

fn keys_in_order(r_max: u32, d_max: u32) -> Vec<(u32, u32)> {
    let mut keys: Vec<(u32, u32)> = (0..=r_max)
        .flat_map(|r| (0..=d_max).map(move |d| (r, d)))
        .filter(|&(r, d)| (r, d) != (0, 0))
        .collect();
    keys.sort_by_key(|&(r, d)| (weight(r, d), r));
    keys
}

/// `exp` of a series without constant term, via `W(k) F_k = sum W(j) S_j F_{k-j}`.
fn formal_exp(s: &GradedSeries) -> GradedSeries {
    let mut f = GradedSeries::one(s.r_max, s.d_max);
    for (r, d) in keys_in_order(s.r_max, s.d_max) {
        let mut terms = Vec::new();
        for ((r1, d1), sc) in &s.coeffs {
            if *r1 > r || *d1 > d {
                continue;
            }
            if let Some(fc) = f.get_ref(r - r1, d - d1) {
                terms.push((sc * fc).scale_int(&weight(*r1, *d1).into()));
            }
        }
        let acc: MotClass = terms.into_iter().sum();
        if !acc.is_zero() {
            f.set(r, d, acc.div_int(weight(r, d)));
        }
    }
    f
}

/// `log` of a series with constant term 1.
fn formal_log(f: &GradedSeries) -> GradedSeries {
    let mut g = GradedSeries::new(f.r_max, f.d_max);
    for (r, d) in keys_in_order(f.r_max, f.d_max) {
        let w = weight(r, d);
        let mut terms = vec![f.get(r, d).scale_int(&w.into())];
        for ((r1, d1), gc) in &g.coeffs {
            if *r1 > r || *d1 > d || (*r1, *d1) == (r, d) {
                continue;
            }
            if let Some(fc) = f.get_ref(r - r1, d - d1) {
                terms.push((gc * fc).scale_int(&(-weight(*r1, *d1)).into()));
            }
        }
        let acc: MotClass = terms.into_iter().sum();
        if !acc.is_zero() {
            g.set(r, d, acc.div_int(w));
        }
    }
    g
}

fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn max_adams_index(f: &GradedSeries) -> u32 {
    // psi_n of any nonzero key leaves the box once n exceeds both bounds.
    f.r_max.max(f.d_max).max(1)
}

/// Plethystic exponential `exp(sum_n psi_n(f) / n)`.
pub fn exp_pleth(f: &GradedSeries) -> Result<GradedSeries, PlethysticError> {
    if !f.constant_term().is_zero() {
        return Err(PlethysticError::NonzeroConstantTerm);
    }
    let mut s = GradedSeries::new(f.r_max, f.d_max);
    for n in 1..=max_adams_index(f) {
        let term = series_adams(n, f);
        if term.is_empty() {
            continue;
        }
        s = s.add(&term.scale(&MotClass::ratio(1, n as i64).unwrap()));
    }
    Ok(formal_exp(&s))
}

/// Plethystic logarithm `sum_n mu(n)/n psi_n(log f)`.
pub fn log_pleth(f: &GradedSeries) -> Result<GradedSeries, PlethysticError> {
    if !f.constant_term().is_one() {
        return Err(PlethysticError::ConstantTermNotOne);
    }
    let g = formal_log(f);
    let mut out = GradedSeries::new(f.r_max, f.d_max);
    for n in 1..=max_adams_index(f) {
        let mu = mobius(n);
        if mu == 0 {
            continue;
        }
        let term = series_adams(n, &g);
        if term.is_empty() {
            continue;
        }
        out = out.add(&term.scale(&MotClass::ratio(mu, n as i64).unwrap()));
    }
    Ok(out)
}

/// Power structure `Pow(f, A) = Exp(A Log f)`.
pub fn pow_pleth(f: &GradedSeries, a: &MotClass) -> Result<GradedSeries, PlethysticError> {
    exp_pleth(&log_pleth(f)?.scale(a))
}

/// Exp restricted to one ray `d/r = const` through the primitive vector `ray`.
///
/// Entries are given in `(r, d)` coordinates; the computation runs in the
/// single variable `t = w^{r0} z^{d0}`.
pub fn ray_exp(
    b: &BTreeMap<(u32, u32), MotClass>,
    ray: (u32, u32),
    r_max: u32,
    d_max: u32,
) -> Result<BTreeMap<(u32, u32), MotClass>, PlethysticError> {
    let (r0, d0) = primitive(ray);
    let k_of = |r: u32, d: u32| -> Option<u32> {
        if r == 0 || (r as u64) * (d0 as u64) != (d as u64) * (r0 as u64) || r % r0 != 0 {
            None
        } else {
            Some(r / r0)
        }
    };
    let mut k_max = r_max / r0;
    if d0 > 0 {
        k_max = k_max.min(d_max / d0);
    }
    let mut t = GradedSeries::new(k_max, 0);
    for ((r, d), c) in b {
        let k = k_of(*r, *d).ok_or(PlethysticError::KeyOffRay(*r, *d))?;
        t.set(k, 0, c.clone());
    }
    let e = exp_pleth(&t)?;
    Ok(e.iter()
        .filter(|((k, _), _)| *k > 0)
        .map(|((k, _), c)| ((k * r0, k * d0), c.clone()))
        .collect())
}

/// Primitive vector on the ray through `(r, d)`, `r > 0`.
pub fn primitive(ray: (u32, u32)) -> (u32, u32) {
    let (r, d) = ray;
    assert!(r > 0, "rays have positive rank");
    let g = r.gcd(&d);
    (r / g, d / g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::nilcone_class;
    use proptest::prelude::*;

    fn l() -> MotClass {
        MotClass::lefschetz()
    }

    fn mono(r: u32, d: u32, c: MotClass, r_max: u32, d_max: u32) -> GradedSeries {
        let mut s = GradedSeries::new(r_max, d_max);
        s.set(r, d, c);
        s
    }

    #[test]
    fn multiply_examples() {
        let one = GradedSeries::one(3, 3);
        let f = mono(1, 1, MotClass::u(), 3, 3).add(&one);
        assert_eq!(f.multiply(&one), f);
        let a = one.add(&mono(1, 1, MotClass::one(), 3, 3));
        let b = one.sub(&mono(1, 1, MotClass::one(), 3, 3));
        let expect = one.sub(&mono(2, 2, MotClass::one(), 3, 3));
        assert_eq!(a.multiply(&b), expect);
    }

    #[test]
    fn adams_examples() {
        let f = mono(1, 1, MotClass::one(), 4, 4);
        assert_eq!(series_adams(2, &f), mono(2, 2, MotClass::one(), 4, 4));
        let g = mono(1, 0, MotClass::u(), 4, 4);
        assert_eq!(series_adams(2, &g), mono(2, 0, MotClass::monomial(2, 0), 4, 4));
        assert_eq!(series_adams(1, &g), g);
    }

    #[test]
    fn exp_of_a_point() {
        let e = exp_pleth(&mono(0, 1, MotClass::one(), 0, 6)).unwrap();
        for d in 0..=6 {
            assert!(e.get(0, d).is_one());
        }
        assert_eq!(log_pleth(&e).unwrap(), mono(0, 1, MotClass::one(), 0, 6));
    }

    #[test]
    fn nilpotent_cone_series() {
        let x = (&l() - &MotClass::one()).inv().unwrap();
        let e = exp_pleth(&mono(0, 1, x, 0, 6)).unwrap();
        for d in 0..=6 {
            assert_eq!(e.get(0, d), nilcone_class(d));
        }
    }

    #[test]
    fn pow_examples() {
        let geo = exp_pleth(&mono(0, 1, MotClass::one(), 0, 5)).unwrap();
        assert_eq!(pow_pleth(&geo, &MotClass::one()).unwrap(), geo);
        let p = pow_pleth(&geo, &l()).unwrap();
        for d in 0..=5 {
            assert_eq!(p.get(0, d), MotClass::l_pow(d as i64));
        }
    }

    #[test]
    fn errors() {
        assert_eq!(exp_pleth(&GradedSeries::one(1, 1)), Err(PlethysticError::NonzeroConstantTerm));
        assert_eq!(log_pleth(&GradedSeries::new(1, 1)), Err(PlethysticError::ConstantTermNotOne));
        let mut b = BTreeMap::new();
        b.insert((1, 2), MotClass::one());
        assert_eq!(ray_exp(&b, (1, 1), 3, 3), Err(PlethysticError::KeyOffRay(1, 2)));
    }

    #[test]
    fn ray_exp_examples() {
        let mut b = BTreeMap::new();
        b.insert((1, 3), MotClass::u());
        let out = ray_exp(&b, (1, 3), 1, 5).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[&(1, 3)], MotClass::u());
        assert!(ray_exp(&BTreeMap::new(), (2, 1), 4, 4).unwrap().is_empty());

        // Oracle: the full two-variable Exp, restricted to the ray.
        let mut b = BTreeMap::new();
        b.insert((1, 1), MotClass::u());
        b.insert((2, 2), &l() + &MotClass::from_int(2));
        let out = ray_exp(&b, (2, 2), 2, 2).unwrap();
        let full = exp_pleth(&GradedSeries::from_map(b.clone(), 2, 2)).unwrap();
        assert_eq!(out[&(2, 2)], full.get(2, 2));
        assert_eq!(out[&(1, 1)], full.get(1, 1));
    }

    #[test]
    fn mobius_values() {
        let expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1];
        for (n, &m) in (1..=10).zip(&expect) {
            assert_eq!(mobius(n), m);
        }
    }

    fn small_class() -> impl Strategy<Value = MotClass> {
        (-3i64..=3, 0i64..=2, 0i64..=2, 0i64..=1).prop_map(|(c, a, b, den)| {
            let x = &MotClass::from_int(c) * &MotClass::monomial(a, b);
            if den == 1 {
                &x / &(&l() - &MotClass::one())
            } else {
                x
            }
        })
    }

    fn arb_series(r_max: u32, d_max: u32) -> impl Strategy<Value = GradedSeries> {
        proptest::collection::vec(((0..=r_max, 0..=d_max), small_class()), 0..5).prop_map(
            move |entries| {
                let mut s = GradedSeries::new(r_max, d_max);
                for ((r, d), c) in entries {
                    if (r, d) != (0, 0) {
                        s.set(r, d, c);
                    }
                }
                s
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn exp_log_are_inverse(f in arb_series(2, 3)) {
            let e = exp_pleth(&f).unwrap();
            prop_assert_eq!(log_pleth(&e).unwrap(), f);
        }

        #[test]
        fn exp_is_a_homomorphism(f in arb_series(2, 3), g in arb_series(2, 3)) {
            let lhs = exp_pleth(&f.add(&g)).unwrap();
            let rhs = exp_pleth(&f).unwrap().multiply(&exp_pleth(&g).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pow_is_bimultiplicative(f in arb_series(1, 3), g in arb_series(1, 3), a in small_class(), b in small_class()) {
            let ef = exp_pleth(&f).unwrap();
            let eg = exp_pleth(&g).unwrap();
            let lhs = pow_pleth(&ef, &(&a + &b)).unwrap();
            let rhs = pow_pleth(&ef, &a).unwrap().multiply(&pow_pleth(&ef, &b).unwrap());
            prop_assert_eq!(lhs, rhs);
            let lhs = pow_pleth(&ef.multiply(&eg), &a).unwrap();
            let rhs = pow_pleth(&ef, &a).unwrap().multiply(&pow_pleth(&eg, &a).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn series_adams_is_a_ring_map(f in arb_series(2, 3), g in arb_series(2, 3), n in 1u32..3) {
            let f1 = f.add(&GradedSeries::one(2, 3));
            let g1 = g.add(&GradedSeries::one(2, 3));
            prop_assert_eq!(series_adams(n, &f1.multiply(&g1)), series_adams(n, &f1).multiply(&series_adams(n, &g1)));
            prop_assert_eq!(series_adams(n, &f.add(&g)), series_adams(n, &f).add(&series_adams(n, &g)));
        }

        #[test]
        fn ray_factors_are_recovered_from_a_product(c1 in small_class(), c2 in small_class(), c3 in small_class()) {
            // Two rays: slope 1 and slope 0.
            let mut b1 = BTreeMap::new();
            b1.insert((1, 1), c1.clone());
            b1.insert((2, 2), c2.clone());
            let mut b0 = BTreeMap::new();
            b0.insert((1, 0), c3.clone());
            let (rm, dm) = (2, 2);
            let f1 = ray_exp(&b1, (1, 1), rm, dm).unwrap();
            let f0 = ray_exp(&b0, (1, 0), rm, dm).unwrap();
            let mut s1 = GradedSeries::one(rm, dm);
            for ((r, d), c) in &f1 { s1.set(*r, *d, c.clone()); }
            let mut s0 = GradedSeries::one(rm, dm);
            for ((r, d), c) in &f0 { s0.set(*r, *d, c.clone()); }
            let prod = s1.multiply(&s0);
            // Log of the product is additive over rays.
            let mut all = b1.clone();
            all.extend(b0.clone());
            let expect = GradedSeries::from_map(all, rm, dm);
            prop_assert_eq!(log_pleth(&prod).unwrap(), expect);
        }
    }
}
