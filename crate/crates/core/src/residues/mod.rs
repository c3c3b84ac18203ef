//! Partition-indexed kernels: `J_lambda`, the iterated residues `res_lambda`
//! of the symmetrized kernel, and their `z`-expansions `H_lambda`.

mod lmot;
mod multirational;

use std::collections::HashMap;

use rayon::prelude::*;

use crate::curvezeta::{zeta_star, CurveModel};
use crate::exactring::{MotClass, Poly};
use crate::partitions::Partition;
use crate::univariate::{RatFn, SeriesZ, UPoly, UnivariateError};

pub use crate::univariate::simple_pole_residue;
pub use lmot::{l_mot, permutations};
pub use multirational::{
    FactorRepr, MultiRational, MultiRationalRepr, TermReprN, MAX_Z_VARS,
};

use multirational::{specialize_poly, subst_var_monomial, zvar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResidueError {
    #[error("Q_lambda(0) is not invertible for lambda = {0}")]
    NonInvertibleQAtZero(String),
    #[error("pole of order {order} along z_{var}")]
    HigherOrderPole { var: usize, order: u32 },
    #[error("partition has {0} parts; at most {MAX_Z_VARS} are supported")]
    TooManyParts(usize),
    #[error(transparent)]
    Univariate(#[from] UnivariateError),
}

/// `J_lambda(z) = prod_{s} zeta*(L^{-1-l(s)} z^{a(s)})` as a rational function.
pub fn j_mot_rational(c: &CurveModel, lambda: &Partition) -> RatFn {
    let mut acc = RatFn::constant(MotClass::one());
    let mut cache: HashMap<(u32, u32), RatFn> = HashMap::new();
    for (i, j) in lambda.boxes() {
        let (a, l) = lambda.arm_leg(i, j).expect("box of the diagram");
        let f = cache.entry((a, l)).or_insert_with(|| zeta_star(c, 1 + l, a));
        acc = acc.mul(f);
    }
    acc
}

/// `J_lambda` expanded through `z^order`.
pub fn j_mot(c: &CurveModel, lambda: &Partition, order: usize) -> SeriesZ {
    j_mot_rational(c, lambda)
        .series(order)
        .expect("J_lambda is a power series")
}

/// Substitution `z_a -> L^{1-a} z^{b(a)}`.
fn block_substitution(lambda: &Partition) -> Vec<(MotClass, usize)> {
    let bd = lambda.block_data();
    bd.block
        .iter()
        .enumerate()
        .map(|(idx, &b)| (MotClass::l_pow(-(idx as i64)), b as usize))
        .collect()
}

/// Pairs `(j, j+1)` inside one block, as the indices `j`.
fn within_block(lambda: &Partition) -> Vec<usize> {
    let bd = lambda.block_data();
    (1..bd.n()).filter(|&j| bd.block[j - 1] == bd.block[j]).collect()
}

// c1 z^k1 - c2 z^k2
fn binomial(c1: &MotClass, k1: usize, c2: &MotClass, k2: usize) -> UPoly {
    &UPoly::monomial(c1.clone(), k1) - &UPoly::monomial(c2.clone(), k2)
}

/// The iterated residue `res_lambda` as `z^s P_lambda(z) / Q_lambda(z)`.
///
/// Clears the within-block pole factors `(1 - L z_{j+1}/z_j)` and substitutes
/// `z_a -> L^{1-a} z^{b(a)}` term by term in the permutation sum.
pub fn res_lambda(c: &CurveModel, lambda: &Partition) -> Result<RatFn, ResidueError> {
    if lambda.is_empty() {
        return Ok(RatFn::constant(MotClass::one()));
    }
    let n = lambda.len();
    if n > MAX_Z_VARS {
        return Err(ResidueError::TooManyParts(n));
    }
    let g = c.genus();
    let subs = block_substitution(lambda);
    let within = within_block(lambda);
    let l = MotClass::lefschetz();
    let u = MotClass::u();
    let v = MotClass::v();
    let zc = |a: usize| &subs[a - 1].0;
    let zk = |a: usize| subs[a - 1].1;

    // Substituted linear factors.
    let twisted = |j: usize, i: usize, t: &MotClass| binomial(zc(j), zk(j), &(t * zc(i)), zk(i));
    let one_minus = |a: usize| binomial(&MotClass::one(), 0, zc(a), zk(a));

    let mut pair_u: HashMap<(usize, usize), UPoly> = HashMap::new();
    let mut pair_v: HashMap<(usize, usize), UPoly> = HashMap::new();
    let mut pair_l: HashMap<(usize, usize), UPoly> = HashMap::new();
    for a in 1..=n {
        for b in 1..=n {
            if a != b {
                pair_u.insert((a, b), twisted(a, b, &u).pow(g));
                pair_v.insert((a, b), twisted(a, b, &v).pow(g));
                pair_l.insert((a, b), twisted(a, b, &l));
            }
        }
    }
    let om: Vec<UPoly> = (1..=n).map(one_minus).collect();

    let terms: Vec<UPoly> = permutations(n)
        .into_par_iter()
        .map(|(sigma, sgn)| {
            let mut t = UPoly::constant(MotClass::from_int(sgn));
            for i in 1..=n {
                for j in i + 1..=n {
                    let (a, b) = (sigma[i - 1], sigma[j - 1]);
                    if g > 0 {
                        t = &t * &pair_u[&(b, a)];
                        t = &t * &pair_v[&(b, a)];
                    }
                }
            }
            for &a in &sigma[..n - 1] {
                t = t.scale(zc(a)).shift_up(zk(a));
            }
            for p in 0..n {
                for q in p + 2..n {
                    t = &t * &pair_l[&(sigma[p], sigma[q])];
                }
            }
            for a in 1..=n {
                if a != sigma[0] {
                    t = &t * &om[a - 1];
                }
            }
            t
        })
        .collect();
    let mut num = UPoly::zero();
    for t in &terms {
        num = &num + t;
    }

    let mut den = UPoly::one();
    for i in 1..=n {
        for j in i + 1..=n {
            if g > 0 {
                den = &den * &pair_u[&(j, i)];
                den = &den * &pair_v[&(j, i)];
            }
            let cleared = j == i + 1 && within.contains(&i);
            if !cleared {
                den = &den * &pair_l[&(i, j)];
            }
        }
    }
    for p in &om {
        den = &den * p;
    }
    for &j in &within {
        den = den.scale(zc(j)).shift_up(zk(j));
    }
    let f = RatFn::new(num, den)?;
    if f.shift() < 0 {
        return Err(ResidueError::NonInvertibleQAtZero(lambda.to_string()));
    }
    Ok(f)
}

/// `H_lambda(z)`: the expansion of `res_lambda` through `z^order`.
pub fn h_mot(c: &CurveModel, lambda: &Partition, order: usize) -> Result<SeriesZ, ResidueError> {
    Ok(res_lambda(c, lambda)?.series(order)?)
}

/// Working state of the sequential residue: `scale * num / prod den`.
struct Scaled {
    n: usize,
    scale: MotClass,
    num: Poly,
    den: Vec<(Poly, u32)>,
}

impl Scaled {
    // Multiplies by u^a v^b raised to `times` (negative for division).
    fn shift_scale(&mut self, su: i64, sv: i64, times: i64) {
        if su != 0 || sv != 0 {
            self.scale = &self.scale * &MotClass::monomial(su * times, sv * times);
        }
    }

    /// `res_{z_k = z_m / L} (.) dz_k / z_k`; `None` when regular there.
    fn residue(mut self, k: usize, m: usize) -> Result<Option<Scaled>, ResidueError> {
        let n = self.n;
        let vanishes: Vec<bool> = self
            .den
            .iter()
            .map(|(f, _)| subst_var_monomial(f, n, k, m, -1, -1).0.is_zero())
            .collect();
        for (slot, &v) in self.den.iter_mut().zip(&vanishes) {
            if !v {
                continue;
            }
            while slot.1 > 0 {
                match self.num.div_exact(&slot.0) {
                    Some(q) => {
                        self.num = q;
                        slot.1 -= 1;
                    }
                    None => break,
                }
            }
        }
        let order: u32 = self.den.iter().zip(&vanishes).filter(|(_, &v)| v).map(|((_, m), _)| *m).sum();
        if order == 0 {
            return Ok(None);
        }
        if order > 1 {
            return Err(ResidueError::HigherOrderPole { var: k, order });
        }
        let idx = self
            .den
            .iter()
            .zip(&vanishes)
            .position(|((_, mult), &v)| v && *mult == 1)
            .unwrap();
        let (phi, _) = self.den.remove(idx);
        // phi = a (z_k - x) with a free of every z.
        let lead = linear_coefficient(&phi, n, k);
        self.scale = (&self.scale * &MotClass::lefschetz())
            .checked_div(&-lead)
            .expect("pole factor has a nonzero slope");
        self.den.push((Poly::var(n + 2, zvar(m)), 1));

        let (num, su, sv) = subst_var_monomial(&self.num, n, k, m, -1, -1);
        self.num = num;
        self.shift_scale(su, sv, 1);
        let mut den = Vec::with_capacity(self.den.len());
        for (f, mult) in std::mem::take(&mut self.den) {
            let (q, su, sv) = subst_var_monomial(&f, n, k, m, -1, -1);
            self.shift_scale(su, sv, -(mult as i64));
            den.push((q, mult));
        }
        self.den = den;
        Ok(Some(self))
    }
}

// Coefficient of z_k in a factor of degree one in z_k, as a class.
fn linear_coefficient(phi: &Poly, n: usize, k: usize) -> MotClass {
    assert_eq!(phi.degree(zvar(k)), 1, "pole factor must be linear in the residue variable");
    let mut acc = MotClass::zero();
    for (mono, c) in phi.terms() {
        if mono.exponent(zvar(k)) != 1 {
            continue;
        }
        for i in 1..=n {
            if i != k {
                assert_eq!(mono.exponent(zvar(i)), 0, "pole factor mixes other variables into its slope");
            }
        }
        acc += &(&MotClass::from_bigint(c.clone())
            * &MotClass::monomial(mono.exponent(0) as i64, mono.exponent(1) as i64));
    }
    acc
}

/// `res_lambda` by one-variable residues taken one at a time on the reduced
/// kernel, innermost ratio first, then substituting the block leaders.
pub fn sequential_res_lambda(c: &CurveModel, lambda: &Partition) -> Result<RatFn, ResidueError> {
    if lambda.is_empty() {
        return Ok(RatFn::constant(MotClass::one()));
    }
    let n = lambda.len();
    if n > MAX_Z_VARS {
        return Err(ResidueError::TooManyParts(n));
    }
    let kernel = l_mot(c, n);
    let mut state = Scaled {
        n,
        scale: MotClass::one(),
        num: kernel.numerator().clone(),
        den: kernel.factors().to_vec(),
    };
    let mut within = within_block(lambda);
    within.sort_unstable_by(|a, b| b.cmp(a));
    for j in within {
        match state.residue(j + 1, j)? {
            Some(next) => state = next,
            None => return Ok(RatFn::zero()),
        }
    }
    let subs = block_substitution(lambda);
    let num = specialize_poly(&state.num, n, &subs).scale(&state.scale);
    let mut den = UPoly::one();
    for (f, m) in &state.den {
        den = &den * &specialize_poly(f, n, &subs).pow(*m);
    }
    Ok(RatFn::new(num, den)?)
}
