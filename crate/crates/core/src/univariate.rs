//! Polynomials, rational functions and truncated power series in one
//! variable `z` over [`MotClass`].

use std::fmt;

use crate::exactring::MotClass;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UnivariateError {
    #[error("denominator vanishes at the evaluation point")]
    PoleAt,
    #[error("function has a pole at z = 0 and no power-series expansion")]
    NotAPowerSeries,
    #[error("pole of order {0} at the residue point")]
    HigherOrderPole(u32),
    #[error("zero denominator")]
    ZeroDenominator,
}

/// Dense polynomial; coefficient `k` multiplies `z^k`. No trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<MotClass>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(MotClass::one())
    }

    pub fn constant(c: MotClass) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(c: MotClass, k: usize) -> Self {
        let mut coeffs = vec![MotClass::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    /// `1 - c z^k`.
    pub fn one_minus(c: MotClass, k: usize) -> Self {
        &UPoly::one() - &UPoly::monomial(c, k)
    }

    pub fn from_coeffs(mut coeffs: Vec<MotClass>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[MotClass] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> MotClass {
        self.coeffs.get(k).cloned().unwrap_or_else(MotClass::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divides by `z^k`; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> UPoly {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        UPoly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn shift_up(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![MotClass::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    pub fn scale(&self, c: &MotClass) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &MotClass) -> MotClass {
        let mut acc = MotClass::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Substitutes `z -> c z^b`.
    pub fn subst(&self, c: &MotClass, b: usize) -> UPoly {
        if b == 0 {
            return UPoly::constant(self.eval(c));
        }
        let mut out = vec![MotClass::zero(); self.coeffs.len().saturating_sub(1) * b + 1];
        let mut power = MotClass::one();
        for (k, x) in self.coeffs.iter().enumerate() {
            out[k * b] = x * &power;
            power = &power * c;
        }
        UPoly::from_coeffs(out)
    }

    /// Coefficientwise map.
    pub fn map(&self, f: impl Fn(&MotClass) -> MotClass) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Division by `z - x`: returns quotient and remainder.
    pub fn div_linear(&self, x: &MotClass) -> (UPoly, MotClass) {
        if self.is_zero() {
            return (UPoly::zero(), MotClass::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![MotClass::zero(); n - 1];
        let mut carry = MotClass::zero();
        for k in (0..n).rev() {
            let cur = &self.coeffs[k] + &(&carry * x);
            if k == 0 {
                return (UPoly::from_coeffs(q), cur);
            }
            q[k - 1] = cur.clone();
            carry = cur;
        }
        unreachable!()
    }

    /// Multiplicity of the root `x` and the cofactor.
    pub fn root_multiplicity(&self, x: &MotClass) -> (u32, UPoly) {
        assert!(!self.is_zero());
        let mut cur = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = cur.div_linear(x);
            if !r.is_zero() {
                return (m, cur);
            }
            cur = q;
            m += 1;
        }
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl<'a> std::ops::Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &'a UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> std::ops::Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &'a UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> std::ops::Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &'a UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![MotClass::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        UPoly::from_coeffs(out)
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*z^{k}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `z^shift * num(z) / den(z)` with `num(0) != 0` (unless zero) and `den(0) != 0`.
///
/// Not reduced: equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RatFn {
    num: UPoly,
    den: UPoly,
    shift: i64,
}

impl RatFn {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self, UnivariateError> {
        Self::with_shift(num, den, 0)
    }

    pub fn with_shift(num: UPoly, den: UPoly, shift: i64) -> Result<Self, UnivariateError> {
        if den.is_zero() {
            return Err(UnivariateError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFn::zero());
        }
        let vn = num.valuation().unwrap();
        let vd = den.valuation().unwrap();
        Ok(RatFn {
            num: num.shift_down(vn),
            den: den.shift_down(vd),
            shift: shift + vn as i64 - vd as i64,
        })
    }

    pub fn zero() -> Self {
        RatFn { num: UPoly::zero(), den: UPoly::one(), shift: 0 }
    }

    pub fn constant(c: MotClass) -> Self {
        RatFn::from_poly(UPoly::constant(c))
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFn::new(p, UPoly::one()).unwrap()
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value, if this is a constant function in reduced-looking form.
    pub fn as_constant(&self) -> Option<MotClass> {
        if self.is_zero() {
            return Some(MotClass::zero());
        }
        if self.shift == 0 && self.num.degree() == Some(0) && self.den.degree() == Some(0) {
            return Some(self.num.coeff(0).checked_div(&self.den.coeff(0)).unwrap());
        }
        None
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        if self.is_zero() || other.is_zero() {
            return RatFn::zero();
        }
        RatFn {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
            shift: self.shift + other.shift,
        }
    }

    pub fn scale(&self, c: &MotClass) -> RatFn {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone(), shift: self.shift }
    }

    pub fn mul_z_pow(&self, k: i64) -> RatFn {
        if self.is_zero() {
            return RatFn::zero();
        }
        RatFn { num: self.num.clone(), den: self.den.clone(), shift: self.shift + k }
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(other.shift);
        let a = (&self.num * &other.den).shift_up((self.shift - s) as usize);
        let b = (&other.num * &self.den).shift_up((other.shift - s) as usize);
        let den = if self.den == other.den { self.den.clone() } else { &self.den * &other.den };
        let num = if self.den == other.den {
            &self.num.shift_up((self.shift - s) as usize) + &other.num.shift_up((other.shift - s) as usize)
        } else {
            &a + &b
        };
        RatFn::with_shift(num, den, s).unwrap()
    }

    pub fn inv(&self) -> Result<RatFn, UnivariateError> {
        RatFn::with_shift(self.den.clone(), self.num.clone(), -self.shift)
    }

    /// Value equality by cross-multiplication.
    pub fn same_value(&self, other: &RatFn) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.shift == other.shift && &self.num * &other.den == &other.num * &self.den
    }

    /// Substitutes `z -> c z^b` with `b >= 1`.
    pub fn subst(&self, c: &MotClass, b: usize) -> RatFn {
        assert!(b >= 1);
        if self.is_zero() {
            return RatFn::zero();
        }
        let factor = c.pow(self.shift).expect("substitution scale must be invertible");
        RatFn::with_shift(
            self.num.subst(c, b).scale(&factor),
            self.den.subst(c, b),
            self.shift * b as i64,
        )
        .unwrap()
    }

    /// Substitutes `z -> 1 / (c z)`.
    pub fn subst_inverse(&self, c: &MotClass) -> RatFn {
        if self.is_zero() {
            return RatFn::zero();
        }
        let cinv = c.inv().expect("invertible scale");
        // p(1/(cz)) = z^{-deg} * sum_k p_k c^{-k} z^{deg-k}
        let flip = |p: &UPoly| -> (UPoly, i64) {
            let deg = p.degree().unwrap();
            let mut out = vec![MotClass::zero(); deg + 1];
            let mut power = MotClass::one();
            for k in 0..=deg {
                out[deg - k] = &p.coeff(k) * &power;
                power = &power * &cinv;
            }
            (UPoly::from_coeffs(out), deg as i64)
        };
        let (n, dn) = flip(&self.num);
        let (d, dd) = flip(&self.den);
        let factor = cinv.pow(self.shift).unwrap();
        RatFn::with_shift(n.scale(&factor), d, dd - dn - self.shift).unwrap()
    }

    pub fn eval(&self, x: &MotClass) -> Result<MotClass, UnivariateError> {
        if self.is_zero() {
            return Ok(MotClass::zero());
        }
        if x.is_zero() {
            return match self.shift {
                s if s > 0 => Ok(MotClass::zero()),
                0 => Ok(self.num.coeff(0).checked_div(&self.den.coeff(0)).unwrap()),
                _ => Err(UnivariateError::PoleAt),
            };
        }
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(UnivariateError::PoleAt);
        }
        let n = &self.num.eval(x) * &x.pow(self.shift).unwrap();
        Ok(n.checked_div(&d).unwrap())
    }

    /// Expansion at `z = 0` through `z^order`.
    pub fn series(&self, order: usize) -> Result<SeriesZ, UnivariateError> {
        if self.is_zero() {
            return Ok(SeriesZ::zero(order));
        }
        if self.shift < 0 {
            return Err(UnivariateError::NotAPowerSeries);
        }
        let shift = self.shift as usize;
        let d0_inv = self.den.coeff(0).inv().expect("den(0) != 0 by construction");
        let mut out = vec![MotClass::zero(); order + 1];
        if shift > order {
            return Ok(SeriesZ::from_coeffs(out));
        }
        let m = order - shift;
        let mut c: Vec<MotClass> = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut acc = self.num.coeff(k);
            for (j, dj) in self.den.coeffs().iter().enumerate().skip(1) {
                if j > k {
                    break;
                }
                if !dj.is_zero() && !c[k - j].is_zero() {
                    acc -= &(dj * &c[k - j]);
                }
            }
            c.push(&acc * &d0_inv);
        }
        for (k, x) in c.into_iter().enumerate() {
            out[k + shift] = x;
        }
        Ok(SeriesZ::from_coeffs(out))
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{} * [{:?}] / [{:?}]", self.shift, self.num, self.den)
    }
}

/// Residue `((x - z) f(z))|_{z=x}`; zero when `f` is regular at `x`.
pub fn simple_pole_residue(f: &RatFn, x: &MotClass) -> Result<MotClass, UnivariateError> {
    if f.is_zero() {
        return Ok(MotClass::zero());
    }
    if x.is_zero() {
        return match f.shift {
            s if s >= 0 => Ok(MotClass::zero()),
            -1 => Ok(-(f.num.coeff(0).checked_div(&f.den.coeff(0)).unwrap())),
            s => Err(UnivariateError::HigherOrderPole((-s) as u32)),
        };
    }
    let (md, dred) = f.den.root_multiplicity(x);
    let (mn, nred) = f.num.root_multiplicity(x);
    if md <= mn {
        return Ok(MotClass::zero());
    }
    if md - mn >= 2 {
        return Err(UnivariateError::HigherOrderPole(md - mn));
    }
    // (x - z) / (z - x) = -1 on the stripped factor.
    let value = &nred.eval(x) * &x.pow(f.shift).unwrap();
    Ok(-(value.checked_div(&dred.eval(x)).unwrap()))
}

/// Truncated power series `sum_{k <= order} c_k z^k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeriesZ {
    coeffs: Vec<MotClass>,
}

impl SeriesZ {
    pub fn zero(order: usize) -> Self {
        SeriesZ { coeffs: vec![MotClass::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = MotClass::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<MotClass>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least the constant term");
        SeriesZ { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MotClass] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &MotClass {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> SeriesZ {
        assert!(order <= self.order());
        SeriesZ { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn mul(&self, other: &SeriesZ) -> SeriesZ {
        let order = self.order().min(other.order());
        let mut out = vec![MotClass::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        SeriesZ { coeffs: out }
    }

    pub fn add(&self, other: &SeriesZ) -> SeriesZ {
        let order = self.order().min(other.order());
        SeriesZ {
            coeffs: (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn scale(&self, c: &MotClass) -> SeriesZ {
        SeriesZ { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }
}

impl fmt::Debug for SeriesZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> MotClass {
        MotClass::lefschetz()
    }

    fn int(n: i64) -> MotClass {
        MotClass::from_int(n)
    }

    #[test]
    fn geometric_series() {
        let f = RatFn::new(UPoly::one(), UPoly::one_minus(l(), 1)).unwrap();
        let s = f.series(4).unwrap();
        for k in 0..=4 {
            assert_eq!(s.coeff(k), &MotClass::l_pow(k as i64));
        }
    }

    #[test]
    fn residue_examples() {
        let f = RatFn::new(UPoly::one(), UPoly::one_minus(int(1), 1)).unwrap();
        assert_eq!(simple_pole_residue(&f, &int(1)).unwrap(), int(1));
        assert!(simple_pole_residue(&f, &int(2)).unwrap().is_zero());
        let sq = RatFn::new(UPoly::one(), UPoly::one_minus(int(1), 1).pow(2)).unwrap();
        assert_eq!(simple_pole_residue(&sq, &int(1)), Err(UnivariateError::HigherOrderPole(2)));
        let at0 = RatFn::with_shift(UPoly::constant(int(3)), UPoly::one(), -1).unwrap();
        assert_eq!(simple_pole_residue(&at0, &MotClass::zero()).unwrap(), int(-3));
    }

    #[test]
    fn inverse_substitution_is_an_involution() {
        let f = RatFn::with_shift(
            &UPoly::one_minus(MotClass::u(), 1) * &UPoly::one_minus(int(2), 2),
            UPoly::one_minus(l(), 1),
            3,
        )
        .unwrap();
        let back = f.subst_inverse(&l()).subst_inverse(&l());
        assert!(back.same_value(&f));
    }

    #[test]
    fn addition_and_evaluation_agree() {
        let f = RatFn::new(UPoly::one(), UPoly::one_minus(l(), 1)).unwrap();
        let g = RatFn::with_shift(UPoly::constant(MotClass::v()), UPoly::one_minus(int(1), 1), -2).unwrap();
        let x = MotClass::u();
        let lhs = f.add(&g).eval(&x).unwrap();
        let rhs = &f.eval(&x).unwrap() + &g.eval(&x).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(f.mul(&g).eval(&x).unwrap(), &f.eval(&x).unwrap() * &g.eval(&x).unwrap());
    }

    #[test]
    fn div_linear_roundtrip() {
        let p = &UPoly::one_minus(l(), 1) * &UPoly::one_minus(MotClass::u(), 1);
        let root = l().inv().unwrap();
        let (m, rest) = p.root_multiplicity(&root);
        assert_eq!(m, 1);
        assert_eq!(rest, UPoly::one_minus(MotClass::u(), 1).scale(&-l()));
    }
}
