//! Text and LaTeX rendering of classes.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::exactring::{MotClass, Poly};

#[derive(Clone, Copy)]
enum Style {
    Text,
    Latex,
}

// Monomial u^a v^b, written as a power of L when a = b and `in_l` holds.
fn monomial(a: u32, b: u32, in_l: bool, style: Style) -> String {
    let power = |name: &str, e: u32| match (e, style) {
        (0, _) => String::new(),
        (1, _) => name.to_string(),
        (e, Style::Text) => format!("{name}^{e}"),
        (e, Style::Latex) => format!("{name}^{{{e}}}"),
    };
    if in_l {
        let l = match style {
            Style::Text => "L",
            Style::Latex => "\\mathbb{L}",
        };
        return power(l, a);
    }
    let (pu, pv) = (power("u", a), power("v", b));
    match (pu.is_empty(), pv.is_empty(), style) {
        (true, _, _) => pv,
        (_, true, _) => pu,
        (false, false, Style::Text) => format!("{pu}*{pv}"),
        (false, false, Style::Latex) => format!("{pu}{pv}"),
    }
}

fn poly(p: &Poly, in_l: bool, style: Style) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let mono = monomial(m.exponent(0), m.exponent(1), in_l, style);
        let mag: BigInt = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if k == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        match (mono.is_empty(), mag.is_one(), style) {
            (true, _, _) => out.push_str(&mag.to_string()),
            (false, true, _) => out.push_str(&mono),
            (false, false, Style::Text) => out.push_str(&format!("{mag}*{mono}")),
            (false, false, Style::Latex) => out.push_str(&format!("{mag}{mono}")),
        }
    }
    out
}

fn wrap(s: String, p: &Poly) -> String {
    if p.len() > 1 {
        format!("({s})")
    } else {
        s
    }
}

/// `num/den`, in powers of `L` when the class is a function of `L` alone.
pub fn text(x: &MotClass) -> String {
    let in_l = x.is_in_l();
    let num = poly(x.numer(), in_l, Style::Text);
    if x.denom().is_one() {
        return num;
    }
    let den = poly(x.denom(), in_l, Style::Text);
    format!("{}/{}", wrap(num, x.numer()), wrap(den, x.denom()))
}

pub fn latex(x: &MotClass) -> String {
    let in_l = x.is_in_l();
    let num = poly(x.numer(), in_l, Style::Latex);
    if x.denom().is_one() {
        return num;
    }
    let den = poly(x.denom(), in_l, Style::Latex);
    format!("\\frac{{{num}}}{{{den}}}")
}
