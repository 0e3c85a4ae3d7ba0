//! Fixed inputs shared by the benchmarks.

use trop_core::{parse, Expr, RatFunc, TropPoly};

pub fn frac(text: &str, vars: &[&str]) -> RatFunc {
    parse(text, vars).expect("fixture parses").to_ratfunc()
}

pub fn poly(text: &str, vars: &[&str]) -> TropPoly {
    match parse(text, vars).expect("fixture parses") {
        Expr::Poly(p) => p,
        Expr::Frac(_) => panic!("fixture `{text}` is not a polynomial"),
    }
}

/// A line arrangement-ish polynomial with `k` generic terms in two variables.
pub fn generic_poly(k: i64) -> TropPoly {
    let terms: Vec<String> = (0..k).map(|i| format!("{{{}}}*x^{}*y^{}", (i * 7) % 5 - 2, i % 4 - 1, (i * 3) % 5 - 2)).collect();
    poly(&terms.join(" + "), &["x", "y"])
}
