//! The symmetrized kernel `L^mot(z_n, ..., z_1)`.
//!
//! With `P_ij = (z_j - u z_i)^g (z_j - v z_i)^g` the `zeta~(z_i/z_j)` factors
//! clear to
//!
//! ```text
//! L^mot = N / ( prod_{i<j} P_ij * prod_{i<j} (z_i - L z_j) * prod_a (1 - z_a) )
//! N     = sum_sigma sgn(sigma) sigma(prod P_ij) sigma(z_1 ... z_{n-1}) C_sigma
//! ```
//!
//! where `C_sigma` collects `(z_a - L z_b)` over pairs with `b` at least two
//! places after `a` in the word `sigma(1) ... sigma(n)`, and `(1 - z_a)` for
//! every `a != sigma(1)`.

use rayon::prelude::*;

use crate::curvezeta::CurveModel;
use crate::exactring::Poly;

use super::multirational::{uv_monomial, z_poly, MultiRational, MAX_Z_VARS};

/// All permutations of `1..=n` with their signs, lexicographically.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push((cur.clone(), sign(&cur)));
        // Next permutation in lexicographic order.
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

fn sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(z_j - c z_i)` for a `(u, v)` exponent pair `c = u^a v^b`.
fn twisted_diff(n: usize, j: usize, i: usize, a: u32, b: u32) -> Poly {
    &z_poly(n, j) - &(&uv_monomial(n, a, b, 1) * &z_poly(n, i))
}

fn one_minus_z(n: usize, a: usize) -> Poly {
    &Poly::one(n + 2) - &z_poly(n, a)
}

/// `prod_{i<j} (z_j - u z_i)^g (z_j - v z_i)^g`.
pub(crate) fn pair_product(n: usize, g: u32) -> Poly {
    let mut acc = Poly::one(n + 2);
    if g == 0 {
        return acc;
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let pu = twisted_diff(n, j, i, 1, 0).pow(g);
            let pv = twisted_diff(n, j, i, 0, 1).pow(g);
            acc = &acc * &(&pu * &pv);
        }
    }
    acc
}

/// Denominator factors of the cleared kernel, before reduction.
pub(crate) fn kernel_factors(n: usize, g: u32) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if g > 0 {
                out.push((twisted_diff(n, j, i, 1, 0), g));
                out.push((twisted_diff(n, j, i, 0, 1), g));
            }
            out.push((twisted_diff(n, i, j, 1, 1), 1));
        }
    }
    for a in 1..=n {
        out.push((one_minus_z(n, a), 1));
    }
    out
}

/// The numerator `N` of the cleared kernel.
pub(crate) fn kernel_numerator(n: usize, g: u32) -> Poly {
    let base = pair_product(n, g);
    let terms: Vec<Poly> = permutations(n)
        .into_par_iter()
        .map(|(sigma, sgn)| {
            let mut t = super::multirational::permute_poly(&base, n, &sigma);
            let mut extra = Poly::constant(n + 2, sgn);
            for &a in &sigma[..n - 1] {
                extra = &extra * &z_poly(n, a);
            }
            for p in 0..n {
                for q in p + 2..n {
                    extra = &extra * &twisted_diff(n, sigma[p], sigma[q], 1, 1);
                }
            }
            for a in 1..=n {
                if a != sigma[0] {
                    extra = &extra * &one_minus_z(n, a);
                }
            }
            t = &t * &extra;
            t
        })
        .collect();
    let mut acc = Poly::zero(n + 2);
    for t in &terms {
        acc = &acc + t;
    }
    acc
}

/// `L^mot(z_n, ..., z_1)` as one reduced rational function.
pub fn l_mot(c: &CurveModel, n: usize) -> MultiRational {
    assert!(n >= 1, "the kernel needs at least one variable");
    assert!(n <= MAX_Z_VARS, "at most {MAX_Z_VARS} variables are supported");
    let g = c.genus();
    MultiRational::new(n, kernel_numerator(n, g), kernel_factors(n, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvezeta::make_curve;
    use crate::residues::multirational::permute_poly;

    #[test]
    fn permutation_signs() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms[0], (vec![1, 2, 3], 1));
        assert_eq!(perms[1], (vec![1, 3, 2], -1));
        assert_eq!(perms.iter().map(|(_, s)| s).sum::<i64>(), 0);
        assert_eq!(permutations(1), vec![(vec![1], 1)]);
    }

    #[test]
    fn rank_one_kernel() {
        let c = make_curve(2).unwrap();
        let k = l_mot(&c, 1);
        assert_eq!(k.numerator(), &Poly::constant(3, -1));
        assert_eq!(k.factors(), &[(one_minus_z(1, 1).neg(), 1)]);
    }

    #[test]
    fn numerator_is_alternating() {
        for g in 0..=1 {
            for n in 2..=3 {
                let num = kernel_numerator(n, g);
                for (sigma, sgn) in permutations(n) {
                    let moved = permute_poly(&num, n, &sigma);
                    let expect = if sgn == 1 { num.clone() } else { num.neg() };
                    assert_eq!(moved, expect, "g={g} n={n} sigma={sigma:?}");
                }
            }
        }
    }

    #[test]
    fn reduced_denominator_divides_the_factor_product() {
        for g in 0..=2 {
            let c = make_curve(g as i64).unwrap();
            let k = l_mot(&c, 3);
            let all = kernel_factors(3, g);
            for (f, m) in k.factors() {
                let avail: u32 = all.iter().filter(|(h, _)| h == f || h.neg() == *f).map(|(_, m)| *m).sum();
                assert!(*m <= avail, "factor {f:?} exceeds its budget");
            }
        }
    }
}
