//! Word-size prime field arithmetic and dense univariate polynomials mod p.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::Signed;

// Moduli stay below 2^31, so products of residues fit in a u64.

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

#[inline]
pub fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powmod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // Deterministic witness set for 64-bit integers.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2^31, largest first.
pub fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(1024);
        let mut n = (1u64 << 31) - 1;
        while out.len() < 1024 {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

pub fn big_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Incremental Chinese remaindering for a single integer.
///
/// `value` is kept in `[0, modulus)`.
pub fn crt_step(value: &BigInt, modulus: &BigInt, r: u64, p: u64) -> BigInt {
    let cur = big_mod(value, p);
    let minv = invmod(big_mod(modulus, p), p);
    let t = mulmod(submod(r, cur, p), minv, p);
    value + modulus * BigInt::from(t)
}

/// Maps `[0, m)` to the symmetric range `(-m/2, m/2]`.
pub fn symmetric(value: &BigInt, modulus: &BigInt) -> BigInt {
    let half: BigInt = modulus >> 1;
    if value > &half {
        value - modulus
    } else {
        value.clone()
    }
}

pub fn to_signed_mod(x: &BigInt, p: u64) -> u64 {
    if x.sign() == Sign::Minus {
        let r = big_mod(&x.abs(), p);
        if r == 0 {
            0
        } else {
            p - r
        }
    } else {
        big_mod(x, p)
    }
}

// ---- dense univariate polynomials, coefficient i of x^i ----

pub fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in a.iter().rev() {
        acc = addmod(mulmod(acc, x, p), c, p);
    }
    acc
}

pub fn make_monic(a: &mut [u64], p: u64) {
    if let Some(&lc) = a.last() {
        let inv = invmod(lc, p);
        for c in a.iter_mut() {
            *c = mulmod(*c, inv, p);
        }
    }
}

/// Remainder of `a` modulo `b` (b nonzero, trimmed).
pub fn rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    trim(&mut a);
    let db = b.len() - 1;
    let inv = invmod(*b.last().unwrap(), p);
    while a.len() > db {
        let da = a.len() - 1;
        let q = mulmod(*a.last().unwrap(), inv, p);
        if q != 0 {
            let shift = da - db;
            for (i, &bc) in b.iter().enumerate() {
                a[shift + i] = submod(a[shift + i], mulmod(q, bc, p), p);
            }
        }
        a.pop();
        trim(&mut a);
    }
    a
}

/// Monic gcd; empty vector if both inputs vanish.
pub fn gcd(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
    let mut a = a;
    let mut b = b;
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(a, &b, p);
        a = b;
        b = r;
    }
    make_monic(&mut a, p);
    a
}

/// Inverts every (nonzero) entry with a single modular inversion.
pub fn batch_invert(a: &mut [u64], p: u64) {
    if a.is_empty() {
        return;
    }
    let mut prefix = Vec::with_capacity(a.len());
    let mut acc = 1u64;
    for &x in a.iter() {
        prefix.push(acc);
        acc = mulmod(acc, x, p);
    }
    let mut inv = invmod(acc, p);
    for i in (0..a.len()).rev() {
        let x = a[i];
        a[i] = mulmod(inv, prefix[i], p);
        inv = mulmod(inv, x, p);
    }
}

/// Newton interpolation through `(xs[i], ys[i])`, returned in monomial basis.
pub fn interpolate(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let mut coef = ys.to_vec();
    let mut inv = vec![0u64; n];
    for j in 1..n {
        for i in j..n {
            inv[i] = submod(xs[i], xs[i - j], p);
        }
        batch_invert(&mut inv[j..], p);
        for i in (j..n).rev() {
            let num = submod(coef[i], coef[i - 1], p);
            coef[i] = mulmod(num, inv[i], p);
        }
    }
    // Horner on the Newton form.
    let mut out = vec![0u64; n];
    let mut len = 0usize;
    for k in (0..n).rev() {
        // out = out * (x - xs[k]) + coef[k]
        let mut next = vec![0u64; len + 1];
        for i in 0..len {
            next[i + 1] = addmod(next[i + 1], out[i], p);
            next[i] = submod(next[i], mulmod(out[i], xs[k], p), p);
        }
        next[0] = addmod(next[0], coef[k], p);
        len += 1;
        out[..len].copy_from_slice(&next[..len]);
    }
    let mut out = out;
    trim(&mut out);
    out
}

/// Reduces a slice of integers mod p.
pub fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a.iter().map(|c| to_signed_mod(c, p)).collect();
    trim(&mut v);
    v
}

pub fn is_zero_mod(a: &BigInt, p: u64) -> bool {
    to_signed_mod(a, p) == 0
}
