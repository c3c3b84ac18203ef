//! Curves in the Hodge realization and their zeta functions.
//!
//! A genus `g` curve has `P_X(T) = (1 - uT)^g (1 - vT)^g`, `[X] = 1 - g u - g v + uv`
//! and `zeta_X(z) = P_X(z) / ((1 - z)(1 - L z))`.

use crate::exactring::MotClass;
use crate::plethystic::{exp_pleth, GradedSeries};
use crate::univariate::{RatFn, SeriesZ, UPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("genus must be nonnegative, got {0}")]
    NegativeGenus(i64),
    #[error("zeta_X has a pole at L^{0}")]
    PoleAtArgument(i64),
    #[error("curve model invariant failed: {0}")]
    InvariantViolation(&'static str),
}

#[derive(Clone, Debug)]
pub struct CurveModel {
    genus: u32,
    p_num: UPoly,
    class_of_x: MotClass,
    jac: MotClass,
    pic_stack: MotClass,
}

pub fn make_curve(g: i64) -> Result<CurveModel, CurveError> {
    if g < 0 {
        return Err(CurveError::NegativeGenus(g));
    }
    let genus = g as u32;
    let p_num = &UPoly::one_minus(MotClass::u(), 1).pow(genus)
        * &UPoly::one_minus(MotClass::v(), 1).pow(genus);
    let gi = MotClass::from_int(g);
    let class_of_x =
        &(&(&MotClass::one() - &(&gi * &MotClass::u())) - &(&gi * &MotClass::v())) + &MotClass::lefschetz();
    let jac = p_num.eval(&MotClass::one());
    let pic_stack = &jac / &(&MotClass::lefschetz() - &MotClass::one());
    let curve = CurveModel { genus, p_num, class_of_x, jac, pic_stack };
    curve.check_invariants()?;
    Ok(curve)
}

impl CurveModel {
    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn p_num(&self) -> &UPoly {
        &self.p_num
    }

    pub fn class_of_x(&self) -> &MotClass {
        &self.class_of_x
    }

    pub fn jac(&self) -> &MotClass {
        &self.jac
    }

    pub fn pic_stack(&self) -> &MotClass {
        &self.pic_stack
    }

    /// `P_X(x)`.
    pub fn p_at(&self, x: &MotClass) -> MotClass {
        self.p_num.eval(x)
    }

    /// `zeta_X(z)` as a rational function.
    pub fn zeta(&self) -> RatFn {
        zeta_eval(self, 0, 1).expect("z-dependent argument never hits a pole")
    }

    fn check_invariants(&self) -> Result<(), CurveError> {
        let g = self.genus as usize;
        if !self.p_num.coeff(0).is_one() {
            return Err(CurveError::InvariantViolation("P_X(0) = 1"));
        }
        if self.p_num.degree() != Some(2 * g) || self.p_num.coeff(2 * g) != MotClass::l_pow(g as i64) {
            return Err(CurveError::InvariantViolation("top term of P_X is L^g T^(2g)"));
        }
        if !functional_equation_holds(self) {
            return Err(CurveError::InvariantViolation("functional equation"));
        }
        let lhs = self.p_at(&MotClass::l_pow(-1));
        if lhs != &MotClass::l_pow(-(g as i64)) * &self.jac {
            return Err(CurveError::InvariantViolation("P_X(1/L) = L^(-g) P_X(1)"));
        }
        Ok(())
    }
}

/// `zeta_X(1/(L z)) = L^{1-g} z^{2-2g} zeta_X(z)` as rational functions.
pub fn functional_equation_holds(c: &CurveModel) -> bool {
    let z = c.zeta();
    let lhs = z.subst_inverse(&MotClass::lefschetz());
    let g = c.genus as i64;
    let rhs = z.mul_z_pow(2 - 2 * g).scale(&MotClass::l_pow(1 - g));
    lhs.same_value(&rhs)
}

/// `zeta_X(L^a z^b)`; a constant function when `b = 0`.
pub fn zeta_eval(c: &CurveModel, a: i64, b: u32) -> Result<RatFn, CurveError> {
    if b == 0 {
        return zeta_const(c, a).map(RatFn::constant);
    }
    let la = MotClass::l_pow(a);
    let b = b as usize;
    let num = c.p_num.subst(&la, b);
    let den = &UPoly::one_minus(la, b) * &UPoly::one_minus(MotClass::l_pow(a + 1), b);
    Ok(RatFn::new(num, den).expect("nonzero denominator"))
}

/// `zeta_X(L^a)`, defined for `a` outside `{0, -1}`.
pub fn zeta_const(c: &CurveModel, a: i64) -> Result<MotClass, CurveError> {
    if a == 0 || a == -1 {
        return Err(CurveError::PoleAtArgument(a));
    }
    let la = MotClass::l_pow(a);
    let den = &(&MotClass::one() - &la) * &(&MotClass::one() - &MotClass::l_pow(a + 1));
    Ok(&c.p_at(&la) / &den)
}

/// The regularized value `zeta*_X(L^{-p} z^q)`.
pub fn zeta_star(c: &CurveModel, p: u32, q: u32) -> RatFn {
    if q > 0 || p > 1 {
        return zeta_eval(c, -(p as i64), q).expect("argument avoids the poles");
    }
    RatFn::constant(zeta_star_const(c, p))
}

/// The constant cases `q = 0` of [`zeta_star`].
pub fn zeta_star_const(c: &CurveModel, p: u32) -> MotClass {
    let one = MotClass::one();
    match p {
        0 => &c.jac / &(&one - &MotClass::lefschetz()),
        1 => &c.p_at(&MotClass::l_pow(-1)) / &(&one - &MotClass::l_pow(-1)),
        _ => zeta_const(c, -(p as i64)).expect("p > 1 avoids the poles"),
    }
}

/// `zeta_A(z) = Exp(A z)` through `z^order`.
pub fn zeta_of_class(a: &MotClass, order: usize) -> SeriesZ {
    let mut f = GradedSeries::new(0, order as u32);
    f.set(0, 1, a.clone());
    let e = exp_pleth(&f).expect("zero constant term");
    SeriesZ::from_coeffs((0..=order as u32).map(|d| e.get(0, d)).collect())
}

/// `vol_r = L^{(g-1)(r^2-1)} [Jac] zeta_X(L^-2) ... zeta_X(L^-r) / (L - 1)`.
pub fn vol(c: &CurveModel, r: u32) -> MotClass {
    assert!(r >= 1);
    let g = c.genus as i64;
    let r2 = (r as i64) * (r as i64);
    let mut acc = &MotClass::l_pow((g - 1) * (r2 - 1)) * &c.pic_stack;
    for i in 2..=r as i64 {
        acc = &acc * &zeta_const(c, -i).unwrap();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::univariate::simple_pole_residue;

    fn l() -> MotClass {
        MotClass::lefschetz()
    }

    fn one() -> MotClass {
        MotClass::one()
    }

    #[test]
    fn make_curve_examples() {
        let c0 = make_curve(0).unwrap();
        assert_eq!(c0.p_num(), &UPoly::one());
        assert_eq!(c0.class_of_x(), &(&one() + &l()));
        assert!(c0.jac().is_one());

        let c1 = make_curve(1).unwrap();
        let expect = &UPoly::one_minus(MotClass::u(), 1) * &UPoly::one_minus(MotClass::v(), 1);
        assert_eq!(c1.p_num(), &expect);
        assert_eq!(c1.jac(), &(&(&one() - &MotClass::u()) * &(&one() - &MotClass::v())));

        let c2 = make_curve(2).unwrap();
        assert_eq!(c2.p_num().degree(), Some(4));
        assert_eq!(c2.p_num().coeff(4), MotClass::l_pow(2));

        assert_eq!(make_curve(-1).unwrap_err(), CurveError::NegativeGenus(-1));
    }

    #[test]
    fn functional_equation_for_small_genus() {
        for g in 0..=4 {
            assert!(functional_equation_holds(&make_curve(g).unwrap()));
        }
    }

    #[test]
    fn zeta_eval_examples() {
        let c0 = make_curve(0).unwrap();
        let f = zeta_eval(&c0, -1, 1).unwrap();
        let expect = RatFn::new(
            UPoly::one(),
            &UPoly::one_minus(MotClass::l_pow(-1), 1) * &UPoly::one_minus(one(), 1),
        )
        .unwrap();
        assert!(f.same_value(&expect));

        let c1 = make_curve(1).unwrap();
        let f = zeta_eval(&c1, 0, 1).unwrap();
        let expect = RatFn::new(
            &UPoly::one_minus(MotClass::u(), 1) * &UPoly::one_minus(MotClass::v(), 1),
            &UPoly::one_minus(one(), 1) * &UPoly::one_minus(l(), 1),
        )
        .unwrap();
        assert!(f.same_value(&expect));

        for g in 0..3 {
            let c = make_curve(g).unwrap();
            let v = zeta_eval(&c, -2, 0).unwrap().as_constant().unwrap();
            assert!(!v.is_zero());
            assert_eq!(zeta_eval(&c, 0, 0).unwrap_err(), CurveError::PoleAtArgument(0));
            assert_eq!(zeta_eval(&c, -1, 0).unwrap_err(), CurveError::PoleAtArgument(-1));
        }
    }

    #[test]
    fn zeta_star_cases() {
        let c = make_curve(2).unwrap();
        let linv = MotClass::l_pow(-1);
        assert_eq!(
            zeta_star(&c, 1, 0).as_constant().unwrap(),
            &c.p_at(&linv) / &(&one() - &linv)
        );
        assert_eq!(zeta_star(&c, 0, 0).as_constant().unwrap(), c.jac() / &(&one() - &l()));
        assert_eq!(zeta_star(&c, 2, 0).as_constant().unwrap(), zeta_const(&c, -2).unwrap());
    }

    #[test]
    fn zeta_star_is_a_residue_of_zeta_dz_over_z() {
        for g in 0..3 {
            let c = make_curve(g).unwrap();
            let f = c.zeta().mul_z_pow(-1);
            assert_eq!(simple_pole_residue(&f, &MotClass::l_pow(-1)).unwrap(), zeta_star_const(&c, 1));
            assert_eq!(simple_pole_residue(&f, &one()).unwrap(), zeta_star_const(&c, 0));
        }
    }

    #[test]
    fn zeta_of_class_examples() {
        let s = zeta_of_class(&one(), 5);
        assert!(s.coeffs().iter().all(|c| c.is_one()));
        let s = zeta_of_class(&l(), 5);
        for d in 0..=5 {
            assert_eq!(s.coeff(d), &MotClass::l_pow(d as i64));
        }
        // Independent oracle: expand the rational function directly.
        let c1 = make_curve(1).unwrap();
        let s = zeta_of_class(c1.class_of_x(), 6);
        assert_eq!(s, c1.zeta().series(6).unwrap());
    }

    #[test]
    fn zeta_of_class_is_additive_and_twists() {
        let a = MotClass::u();
        let b = &MotClass::v() - &MotClass::from_int(3);
        let sum = zeta_of_class(&(&a + &b), 5);
        assert_eq!(sum, zeta_of_class(&a, 5).mul(&zeta_of_class(&b, 5)));
        let la = zeta_of_class(&(&l() * &a), 5);
        let plain = zeta_of_class(&a, 5);
        for d in 0..=5 {
            assert_eq!(la.coeff(d), &(plain.coeff(d) * &MotClass::l_pow(d as i64)));
        }
    }

    #[test]
    fn vol_examples() {
        let c0 = make_curve(0).unwrap();
        assert_eq!(vol(&c0, 1), c0.jac() / &(&l() - &one()));
        let z2 = (&(&one() - &MotClass::l_pow(-2)) * &(&one() - &MotClass::l_pow(-1))).inv().unwrap();
        assert_eq!(vol(&c0, 2), &(&MotClass::l_pow(-3) / &(&l() - &one())) * &z2);
        let c1 = make_curve(1).unwrap();
        let expect = &(&(c1.jac() * &zeta_const(&c1, -2).unwrap()) * &zeta_const(&c1, -3).unwrap())
            / &(&l() - &one());
        assert_eq!(vol(&c1, 3), expect);
    }
}
