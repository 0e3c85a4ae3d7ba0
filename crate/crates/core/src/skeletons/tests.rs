use super::*;
use crate::tropexpr::{parse, parse_ratfunc, Expr, Monomial};
use crate::tropnum::{q, qr, TropScalar};
use num_traits::Zero;
use proptest::prelude::*;

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

fn pt(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

fn aff(g: &[i64], c: i64) -> Affine {
    Affine::new(g.iter().map(|&x| q(x)).collect(), q(c))
}

#[test]
fn skeleton_of_a_variable_is_the_origin() {
    let s = skeleton(&rf("x", &["x"]));
    assert_eq!(s.pieces.len(), 1);
    assert!(s.contains_point(&pt(&[0])));
    assert!(!s.contains_point(&pt(&[1])));
    assert_eq!(s.pieces[0].dim(), 0);
}

#[test]
fn skeleton_of_x_over_y_plus_one() {
    let f = rf("x/(y + {0})", XY);
    let s = skeleton(&f);
    assert_eq!(s.pieces.len(), 2);
    let ray = Polyhedron::universe(2).with_eq(aff(&[1, -1], 0)).with_ineq(aff(&[0, 1], 0));
    let down = Polyhedron::universe(2).with_eq(aff(&[1, 0], 0)).with_ineq(aff(&[0, -1], 0));
    assert!(vanishes_on(&f, &ray));
    assert!(vanishes_on(&f, &down));
    for p in &s.pieces {
        assert_eq!(p.dim(), 1);
    }
    for i in -6..=6 {
        for j in -6..=6 {
            let x = pt(&[i, j]);
            assert_eq!(s.contains_point(&x), ray.contains(&x) || down.contains(&x));
        }
    }
}

#[test]
fn bounded_below_has_empty_skeleton() {
    let f = rf("abs(x) + {1}", &["x"]);
    assert!(skeleton(&f).is_empty());
    assert_eq!(empty_skeleton_bound(&f), Some(q(1)));
    assert!(!skel_is_empty(&rf("x", &["x"])));
    assert!(!skel_is_empty(&rf("min(abs(x), {1})", &["x"])));
}

#[test]
fn tropical_line_corner_locus() {
    let c = corner_locus(&poly("x + y + {0}", XY));
    assert_eq!(c.pieces.len(), 3);
    let rays = [
        Polyhedron::universe(2).with_eq(aff(&[1, -1], 0)).with_ineq(aff(&[1, 0], 0)),
        Polyhedron::universe(2).with_eq(aff(&[1, 0], 0)).with_ineq(aff(&[0, -1], 0)),
        Polyhedron::universe(2).with_eq(aff(&[0, 1], 0)).with_ineq(aff(&[-1, 0], 0)),
    ];
    for r in &rays {
        assert!(c.pieces.iter().any(|p| super::piece_within(p, r) && super::piece_within(r, p)));
    }
}

#[test]
fn ghost_and_single_corner_loci() {
    let g = corner_locus(&poly("x + x", &["x"]));
    assert_eq!(g.pieces.len(), 1);
    assert_eq!(g.pieces[0].dim(), 1);
    assert!(corner_locus(&poly("x*y", XY)).is_empty());
}

#[test]
fn containment_examples() {
    let origin = skeleton(&rf("abs(x) + abs(y)", XY));
    let axis = skeleton(&rf("x", XY));
    assert!(skel_subset(&origin, &axis));
    assert!(!skel_subset(&axis, &origin));
    assert!(skel_contains(&axis, &origin));
}

#[test]
fn thickening_examples() {
    let x = rf("x", &["x"]);
    let t = thicken(&x, &q(1), &q(1)).unwrap();
    let s = skeleton(&t);
    for (v, inside) in [(-1, true), (0, true), (1, true), (2, false), (-2, false)] {
        assert_eq!(s.contains_point(&pt(&[v])), inside, "{v}");
    }
    assert!(!s.contains_point(&[qr(3, 2)]));
    let f = rf("x/(y + {0})", XY);
    assert!(skel_equal(&skeleton(&thicken(&f, &q(0), &q(0)).unwrap()), &skeleton(&f)));
    let wide = skeleton(&thicken(&x, &q(2), &q(1)).unwrap());
    assert!(skel_contains(&wide, &s));
    assert!(!skel_contains(&s, &wide));
    assert!(skel_in_interior(&skeleton(&x), &t));
    assert!(!skel_in_interior(&skeleton(&x), &thicken(&x, &q(0), &q(1)).unwrap()));
    assert!(thicken(&x, &q(-1), &q(0)).is_err());
}

fn arb_frac() -> impl Strategy<Value = RatFunc> {
    let mono = (proptest::collection::vec(-2i64..=2, 2), -6i64..=6)
        .prop_map(|(e, c)| Monomial::new(e.into_iter().map(q).collect(), TropScalar::new(qr(c, 2))));
    (proptest::collection::vec(mono.clone(), 1..=3), proptest::collection::vec(mono, 1..=3))
        .prop_map(|(a, b)| RatFunc::new(TropPoly::from_monomials(2, a), TropPoly::from_monomials(2, b)).unwrap())
}

fn grid() -> Vec<Vec<Q>> {
    (-5..=5).flat_map(|i| (-5..=5).map(move |j| vec![qr(i, 2), qr(j, 2)])).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn grid_membership_is_exact(f in arb_frac()) {
        let s = skeleton(&f);
        for x in grid() {
            prop_assert_eq!(s.contains_point(&x), f.eval(&x).is_zero());
        }
    }

    #[test]
    fn skeleton_ignores_inversion_and_abs(f in arb_frac()) {
        let s = skeleton(&f);
        prop_assert!(skel_equal(&s, &skeleton(&f.inv())));
        prop_assert!(skel_equal(&s, &skeleton(&f.abs())));
    }

    #[test]
    fn join_intersects_and_meet_unites(f in arb_frac(), g in arb_frac()) {
        let (sf, sg) = (skeleton(&f), skeleton(&g));
        let join = skeleton(&f.abs().add(&g.abs()).pruned());
        let meet = skeleton(&f.abs().meet(&g.abs()).pruned());
        for x in grid() {
            prop_assert_eq!(join.contains_point(&x), sf.contains_point(&x) && sg.contains_point(&x));
            prop_assert_eq!(meet.contains_point(&x), sf.contains_point(&x) || sg.contains_point(&x));
        }
        prop_assert!(skel_subset(&join, &sf) && skel_subset(&join, &sg));
        prop_assert!(skel_subset(&sf, &meet) && skel_subset(&sg, &meet));
    }
}
