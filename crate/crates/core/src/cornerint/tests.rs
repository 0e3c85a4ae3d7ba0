use super::*;
use crate::skeletons::{corner_locus, skel_is_empty, skel_subset};
use crate::tropexpr::{parse, parse_ratfunc, Expr};
use crate::tropnum::q;

const XY: &[&str] = &["x", "y"];

fn rf(s: &str, vars: &[&str]) -> RatFunc {
    parse_ratfunc(s, vars).unwrap()
}

fn poly(s: &str, vars: &[&str]) -> TropPoly {
    match parse(s, vars).unwrap() {
        Expr::Poly(p) => p,
        _ => panic!(),
    }
}

#[test]
fn hat_of_tropical_line() {
    let line = poly("x + y + {0}", XY);
    let parts: Vec<String> = hat_summands(&line).iter().map(|s| s.to_string()).collect();
    assert_eq!(parts, vec!["x/(y + {0})", "y/(x + {0})", "{0}/(x + y)"]);
    let c = corner_locus(&line);
    assert!(skel_equal(&skeleton(&hat(&line)), &c));
}

#[test]
fn hat_of_binomial_is_abs() {
    let f = hat(&poly("x + {0}", &["x"]));
    for v in -5..=5 {
        assert_eq!(f.eval(&[q(v)]), q(v.abs()));
    }
    assert_eq!(tilde(&poly("x + {0}", &["x"])), rf("abs(x)", &["x"]));
}

#[test]
fn degenerate_hat() {
    let p = poly("x", &["x"]);
    assert!(hat_is_degenerate(&p));
    assert!(skel_is_empty(&hat(&p)));
    // a ghost monomial is a corner root everywhere
    let g = poly("x + x", &["x"]);
    assert!(!hat_is_degenerate(&g));
    assert_eq!(hat(&g).eval(&[q(3)]), q(0));
}

#[test]
fn underline_examples() {
    assert_eq!(underline(&rf("{0}/(x + y)", XY)), poly("x + y + {0}", XY));
    assert_eq!(underline(&rf("x/(y + {0})", XY)), poly("x + y + {0}", XY));
    assert_eq!(underline(&rf("(x + {0})/(x + y)", XY)), poly("x + x + y + {0}", XY));
}

#[test]
fn essential_examples() {
    let e = essential_form(&rf("(x + x + {0})/y", XY));
    assert_eq!(e, rf("(x + {0})/y", XY));
    let f = rf("x/(y + {0})", XY);
    assert_eq!(essential_form(&f), f);
    let line = poly("x + y + {0}", XY);
    assert_eq!(essential_summands(&line).len(), 2);
}

#[test]
fn regularity_examples() {
    assert!(is_regular(&rf("x/(y + {0})", XY)));
    assert!(!is_regular(&rf("(x + {0})/{0}", &["x"])));
    assert!(is_regular(&hat(&poly("x + y + {0}", XY))));
}

#[test]
fn corner_integrality_examples() {
    assert!(is_corner_integral(&rf("x", &["x"])).integral);
    let r = is_corner_integral(&rf("((x + {1})*x)/(x + {1})", &["x"]));
    assert!(!r.integral);
    assert_eq!(r.violations.len(), 1);
    assert_eq!(r.violations[0].side, Side::Num);
    assert_eq!(r.violations[0].witness, vec![q(1)]);
    assert_eq!(
        serde_json::to_string(&r).unwrap(),
        r#"{"integral":false,"violations":[{"side":"num","pair":[0,1],"witness":["1/1"]}]}"#
    );
    let reduced = rf("(x + y)*(x + y + {0})/((x + {0})*(y + {0}))", XY);
    assert!(is_corner_integral(&reduced).integral);
    assert!(is_regular(&reduced));
}

#[test]
fn closure_examples() {
    let x = rf("x", &["x"]);
    assert_eq!(ci_closure(&x).to_string(), rf("abs(x)", &["x"]).pruned().to_string());
    let f = rf("{0}/(x + y)", XY);
    let phi = ci_closure(&f);
    assert!(skel_equal(&skeleton(&phi), &corner_locus(&poly("x + y + {0}", XY))));
    let b = rf("min(abs(x), {1})", &["x"]);
    let pb = ci_closure(&b);
    for v in -6..=6 {
        assert_eq!(pb.eval(&[q(v)]), b.eval(&[q(v)]));
    }
    assert!(skel_subset(&skeleton(&f), &skeleton(&phi)));
}
