//! Polynomial gcds over the integers in one and two variables.
//!
//! Both use dense modular images with Chinese remaindering; the bivariate
//! case evaluates the second variable and interpolates (Brown's algorithm).
//! Every modular candidate is confirmed by exact trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp;
use super::poly::{Monomial, Poly};

// ---- univariate, dense, coefficient i of x^i ----

pub(crate) type UPolyZ = Vec<BigInt>;

fn utrim(a: &mut UPolyZ) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn ucontent(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn uscale_div(a: &[BigInt], k: &BigInt) -> UPolyZ {
    a.iter().map(|c| c / k).collect()
}

/// Exact division over Z[x]; `None` if not exact.
pub(crate) fn udiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<UPolyZ> {
    let mut a: UPolyZ = a.to_vec();
    utrim(&mut a);
    let mut b: UPolyZ = b.to_vec();
    utrim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lc = b[db].clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let top = &a[k + db];
        if top.is_zero() {
            continue;
        }
        let (qc, r) = top.div_rem(&lc);
        if !r.is_zero() {
            return None;
        }
        for (i, bc) in b.iter().enumerate() {
            a[k + i] -= &qc * bc;
        }
        q[k] = qc;
    }
    if a.iter().any(|c| !c.is_zero()) {
        return None;
    }
    utrim(&mut q);
    Some(q)
}

#[cfg(test)]
fn umul(a: &[BigInt], b: &[BigInt]) -> UPolyZ {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// gcd in Z[x] with positive leading coefficient; gcd(0, 0) = 0.
pub(crate) fn ugcd(a: &[BigInt], b: &[BigInt]) -> UPolyZ {
    let mut a: UPolyZ = a.to_vec();
    let mut b: UPolyZ = b.to_vec();
    utrim(&mut a);
    utrim(&mut b);
    if a.is_empty() {
        return normalize_sign(b);
    }
    if b.is_empty() {
        return normalize_sign(a);
    }
    let ca = ucontent(&a);
    let cb = ucontent(&b);
    let c = ca.gcd(&cb);
    let pa = uscale_div(&a, &ca);
    let pb = uscale_div(&b, &cb);
    if pa.len() == 1 || pb.len() == 1 {
        return vec![c];
    }
    if let Some(g) = trivial_divisor(&pa, &pb) {
        return g.into_iter().map(|x| x * &c).collect();
    }
    let gamma = pa.last().unwrap().gcd(pb.last().unwrap());
    let mut acc: Option<(UPolyZ, BigInt)> = None;
    let mut last: Option<UPolyZ> = None;
    for &p in modp::primes() {
        if modp::is_zero_mod(pa.last().unwrap(), p) || modp::is_zero_mod(pb.last().unwrap(), p) {
            continue;
        }
        let mut g = modp::gcd(modp::reduce(&pa, p), modp::reduce(&pb, p), p);
        if g.len() == 1 {
            return vec![c];
        }
        let gm = modp::to_signed_mod(&gamma, p);
        for x in g.iter_mut() {
            *x = modp::mulmod(*x, gm, p);
        }
        acc = match acc.take() {
            None => Some((g.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(p))),
            Some((vals, m)) => {
                if g.len() < vals.len() {
                    last = None;
                    Some((g.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(p)))
                } else if g.len() > vals.len() {
                    Some((vals, m))
                } else {
                    let vals: UPolyZ = vals
                        .iter()
                        .zip(&g)
                        .map(|(v, &r)| modp::crt_step(v, &m, r, p))
                        .collect();
                    Some((vals, m * p))
                }
            }
        };
        let (vals, m) = acc.as_ref().unwrap();
        let cand: UPolyZ = vals.iter().map(|v| modp::symmetric(v, m)).collect();
        if last.as_ref() == Some(&cand) {
            let cc = ucontent(&cand);
            let prim = normalize_sign(uscale_div(&cand, &cc));
            if udiv_exact(&pa, &prim).is_some() && udiv_exact(&pb, &prim).is_some() {
                return prim.into_iter().map(|x| x * &c).collect();
            }
        }
        last = Some(cand);
    }
    panic!("ran out of primes in univariate gcd");
}

// Cheap check: one primitive input divides the other.
fn trivial_divisor(pa: &[BigInt], pb: &[BigInt]) -> Option<UPolyZ> {
    if pa.len() <= pb.len() && udiv_exact(pb, pa).is_some() {
        return Some(normalize_sign(pa.to_vec()));
    }
    if pb.len() <= pa.len() && udiv_exact(pa, pb).is_some() {
        return Some(normalize_sign(pb.to_vec()));
    }
    None
}

fn normalize_sign(mut a: UPolyZ) -> UPolyZ {
    utrim(&mut a);
    if a.last().is_some_and(|c| c.is_negative()) {
        for c in a.iter_mut() {
            *c = -&*c;
        }
    }
    a
}

// ---- bivariate ----

/// Dense bivariate polynomial: `rows[i]` is the coefficient of `x^i`,
/// itself a dense polynomial in `y`.
#[derive(Clone, Debug, PartialEq)]
struct Dense2 {
    rows: Vec<UPolyZ>,
}

impl Dense2 {
    fn from_poly(p: &Poly, main: usize) -> Self {
        let other = 1 - main;
        let dx = p.degree(main) as usize;
        let mut rows: Vec<UPolyZ> = vec![Vec::new(); dx + 1];
        for (m, c) in p.terms() {
            let i = m.exponent(main) as usize;
            let j = m.exponent(other) as usize;
            let row = &mut rows[i];
            if row.len() <= j {
                row.resize(j + 1, BigInt::zero());
            }
            row[j] = c.clone();
        }
        Dense2 { rows }
    }

    fn to_poly(&self, main: usize) -> Poly {
        let other = 1 - main;
        let mut terms = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut e = [0u32; 2];
                e[main] = i as u32;
                e[other] = j as u32;
                terms.push((Monomial::from_exponents(&e), c.clone()));
            }
        }
        Poly::from_terms(2, terms)
    }

    fn degree_y(&self) -> usize {
        self.rows.iter().map(|r| r.len().saturating_sub(1)).max().unwrap_or(0)
    }

    fn lc(&self) -> &UPolyZ {
        self.rows.last().unwrap()
    }

    fn content(&self) -> UPolyZ {
        let mut g: UPolyZ = Vec::new();
        for r in &self.rows {
            g = ugcd(&g, r);
            if g.len() == 1 && g[0].is_one() {
                break;
            }
        }
        g
    }

    fn div_rows(&self, d: &[BigInt]) -> Self {
        Dense2 {
            rows: self
                .rows
                .iter()
                .map(|r| {
                    if r.is_empty() {
                        Vec::new()
                    } else {
                        udiv_exact(r, d).expect("row content must divide")
                    }
                })
                .collect(),
        }
    }

    fn reduce(&self, p: u64) -> Vec<Vec<u64>> {
        self.rows.iter().map(|r| modp::reduce(r, p)).collect()
    }
}

/// gcd of two bivariate polynomials (variables 0 and 1).
///
/// The result has positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd2(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.nvars(), 2);
    assert_eq!(b.nvars(), 2);
    if a.is_zero() {
        return positive(b.clone());
    }
    if b.is_zero() {
        return positive(a.clone());
    }
    let mono = a.monomial_content().gcd(b.monomial_content());
    let a1 = a.div_monomial(a.monomial_content()).unwrap();
    let b1 = b.div_monomial(b.monomial_content()).unwrap();
    let ca = a1.content();
    let cb = b1.content();
    let c = ca.gcd(&cb);
    let a1 = a1.div_scalar_exact(&ca);
    let b1 = b1.div_scalar_exact(&cb);
    let scalar = Poly::monomial(2, mono, c);
    if a1.is_constant() || b1.is_constant() {
        return scalar;
    }
    if a1 == b1 || a1 == b1.neg() {
        return &scalar * &positive(a1);
    }
    // Pick the main variable with the smaller degree; evaluate the other.
    let main = if a1.degree(0).max(b1.degree(0)) <= a1.degree(1).max(b1.degree(1)) { 0 } else { 1 };
    let da = Dense2::from_poly(&a1, main);
    let db = Dense2::from_poly(&b1, main);
    let conta = da.content();
    let contb = db.content();
    let cont = ugcd(&conta, &contb);
    let cont_poly = Dense2 { rows: vec![cont] }.to_poly(main);
    let pa = da.div_rows(&conta);
    let pb = db.div_rows(&contb);
    let base = &scalar * &cont_poly;
    if pa.rows.len() == 1 || pb.rows.len() == 1 {
        return base;
    }
    let pa_poly = pa.to_poly(main);
    let pb_poly = pb.to_poly(main);
    if pb_poly.div_exact(&pa_poly).is_some() {
        return &base * &positive(pa_poly);
    }
    if pa_poly.div_exact(&pb_poly).is_some() {
        return &base * &positive(pb_poly);
    }
    let g = brown(&pa, &pb, &pa_poly, &pb_poly, main);
    &base * &g
}

fn positive(p: Poly) -> Poly {
    if p.leading_coeff().is_some_and(|c| c.is_negative()) {
        p.neg()
    } else {
        p
    }
}

// Inputs are primitive in the main variable with degree >= 1 there.
fn brown(a: &Dense2, b: &Dense2, a_poly: &Poly, b_poly: &Poly, main: usize) -> Poly {
    let gamma = ugcd(a.lc(), b.lc());
    let bound = gamma.len() - 1 + a.degree_y().min(b.degree_y());
    let npoints = bound + 1;
    let mut acc: Option<(Vec<UPolyZ>, BigInt)> = None;
    let mut last: Option<Vec<UPolyZ>> = None;
    for (pi, &p) in modp::primes().iter().enumerate() {
        let lca = modp::reduce(a.lc(), p);
        let lcb = modp::reduce(b.lc(), p);
        if lca.is_empty() || lcb.is_empty() {
            continue;
        }
        let ar = a.reduce(p);
        let br = b.reduce(p);
        let gp = modp::reduce(&gamma, p);
        let mut xs: Vec<u64> = Vec::with_capacity(npoints);
        let mut images: Vec<Vec<u64>> = Vec::with_capacity(npoints);
        let mut cur_deg = usize::MAX;
        let mut point = 2 + 1000 * pi as u64;
        let mut trivial = false;
        while xs.len() < npoints {
            point += 1;
            if modp::eval(&lca, point, p) == 0 || modp::eval(&lcb, point, p) == 0 {
                continue;
            }
            let ua: Vec<u64> = ar.iter().map(|r| modp::eval(r, point, p)).collect();
            let ub: Vec<u64> = br.iter().map(|r| modp::eval(r, point, p)).collect();
            let mut g = modp::gcd(ua, ub, p);
            let deg = g.len() - 1;
            if deg == 0 {
                trivial = true;
                break;
            }
            if deg < cur_deg {
                cur_deg = deg;
                xs.clear();
                images.clear();
            } else if deg > cur_deg {
                continue;
            }
            let s = modp::eval(&gp, point, p);
            for c in g.iter_mut() {
                *c = modp::mulmod(*c, s, p);
            }
            xs.push(point);
            images.push(g);
        }
        if trivial {
            return Poly::one(2);
        }
        // Interpolate each main-variable coefficient.
        let rows: Vec<Vec<u64>> = (0..=cur_deg)
            .map(|i| {
                let ys: Vec<u64> = images.iter().map(|g| g[i]).collect();
                modp::interpolate(&xs, &ys, p)
            })
            .collect();
        let lift = |rows: &[Vec<u64>]| -> Vec<UPolyZ> {
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect()
        };
        acc = match acc.take() {
            None => Some((lift(&rows), BigInt::from(p))),
            Some((vals, m)) => {
                if rows.len() < vals.len() {
                    last = None;
                    Some((lift(&rows), BigInt::from(p)))
                } else if rows.len() > vals.len() {
                    Some((vals, m))
                } else {
                    let width = npoints;
                    let mut combined = Vec::with_capacity(vals.len());
                    for (vrow, prow) in vals.iter().zip(&rows) {
                        let mut out = Vec::with_capacity(width);
                        for j in 0..width {
                            let v = vrow.get(j).cloned().unwrap_or_else(BigInt::zero);
                            let r = prow.get(j).copied().unwrap_or(0);
                            out.push(modp::crt_step(&v, &m, r, p));
                        }
                        combined.push(out);
                    }
                    Some((combined, m * p))
                }
            }
        };
        let (vals, m) = acc.as_ref().unwrap();
        let mut cand: Vec<UPolyZ> = vals
            .iter()
            .map(|r| {
                let mut row: UPolyZ = r.iter().map(|v| modp::symmetric(v, m)).collect();
                utrim(&mut row);
                row
            })
            .collect();
        for row in cand.iter_mut() {
            utrim(row);
        }
        if last.as_ref() == Some(&cand) {
            let d = Dense2 { rows: cand.clone() };
            let cont = d.content();
            let prim = positive(d.div_rows(&cont).to_poly(main));
            if a_poly.div_exact(&prim).is_some() && b_poly.div_exact(&prim).is_some() {
                return prim;
            }
        }
        last = Some(cand);
    }
    panic!("ran out of primes in bivariate gcd");
}
