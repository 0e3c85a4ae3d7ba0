use super::*;
use crate::skeletons::{skel_contains, skel_equal};
use crate::tropexpr::parse_ratfunc;
use crate::tropnum::{q, qr};
use proptest::prelude::*;

const X: &[&str] = &["x"];
const XY: &[&str] = &["x", "y"];

fn rf(s: &str, vars: &[&str]) -> RatFunc {
    parse_ratfunc(s, vars).unwrap()
}

fn k(s: &str, vars: &[&str]) -> KernelGen {
    KernelGen::new(rf(s, vars))
}

fn absval(f: &RatFunc, x: &[Q]) -> Q {
    f.eval(x).abs()
}

/// Independent check of a non-membership witness: the required exponent at the
/// witness (or far enough along its ray) exceeds `bound`.
pub(crate) fn witness_exceeds(g: &RatFunc, f: &RatFunc, w: &Witness, bound: i64) -> bool {
    let bound = q(bound);
    match &w.ray {
        None => absval(f, &w.point).is_zero() && absval(g, &w.point).is_positive(),
        Some(r) => {
            let mut t = q(1);
            for _ in 0..80 {
                let x: Vec<Q> = w.point.iter().zip(r).map(|(p, d)| p + &t * d).collect();
                if absval(g, &x) > &bound * absval(f, &x) {
                    return true;
                }
                t *= q(2);
            }
            false
        }
    }
}

#[test]
fn meet_and_join_of_variables() {
    let (x, y) = (k("x", XY), k("y", XY));
    let m = gen_meet(&x, &y).unwrap();
    let s = skeleton(&m.gen);
    assert!(s.contains_point(&[q(0), q(5)]) && s.contains_point(&[q(-3), q(0)]));
    assert!(!s.contains_point(&[q(1), q(1)]));
    let j = gen_join(&x, &y).unwrap();
    let s = skeleton(&j.gen);
    assert_eq!(s.pieces.len(), 1);
    assert!(s.contains_point(&[q(0), q(0)]) && !s.contains_point(&[q(0), q(1)]));
    assert!(similar(&gen_meet(&x, &x).unwrap(), &x).unwrap());
    let one = KernelGen::new(RatFunc::one(2));
    assert!(similar(&gen_join(&x, &one).unwrap(), &x).unwrap());
    let o = gen_join(&k("{0} + x", X), &k("{0} + x^-1", X)).unwrap();
    assert!(similar(&o, &k("x", X)).unwrap());
    let c = gen_meet(&k("x", X), &k("{1}", X)).unwrap();
    assert!(similar(&c, &k("min(abs(x), {1})", X)).unwrap());
    assert!(gen_meet(&x, &k("x", X)).is_err());
}

#[test]
fn membership_examples() {
    let x = k("x", X);
    let bounded = k("min(abs(x), {1})", X);
    assert_eq!(member(&bounded.gen, &x), Membership::Yes(1));
    let Membership::No(w) = member(&x.gen, &bounded) else { panic!() };
    assert!(w.ray.is_some());
    assert!(witness_exceeds(&x.gen, &bounded.gen, &w, 1000));
    assert_eq!(member(&rf("x^3", X), &x), Membership::Yes(3));
    assert_eq!(member(&rf("x^1/2", X), &x), Membership::Yes(1));
    assert_eq!(member(&RatFunc::one(1), &x), Membership::Yes(0));
    // x vanishes at the origin where y does not
    let Membership::No(w) = member(&rf("y", XY), &k("x", XY)) else { panic!() };
    assert!(witness_exceeds(&rf("y", XY), &rf("x", XY), &w, 1000));
    let Membership::No(w) = member(&rf("x + {1}", X), &x) else { panic!() };
    assert_eq!(w, Witness { point: vec![q(0)], ray: None }, "{w:?}");
}

#[test]
fn membership_json() {
    let v = serde_json::to_string(&Membership::Yes(3)).unwrap();
    assert_eq!(v, r#"{"member":true,"n":3}"#);
    let w = Membership::No(Witness { point: vec![q(0)], ray: Some(vec![q(1)]) });
    assert_eq!(
        serde_json::to_string(&w).unwrap(),
        r#"{"member":false,"witness":{"point":["0/1"],"ray":["1/1"]}}"#
    );
}

#[test]
fn similarity_examples() {
    let f = rf("x/(y + {0})", XY);
    assert!(similar(&KernelGen::new(f.clone()), &KernelGen::new(f.abs())).unwrap());
    assert!(similar(&k("x", X), &k("x^2", X)).unwrap());
    assert!(!similar(&k("x", X), &k("min(abs(x), {1})", X)).unwrap());
}

#[test]
fn orthogonality_examples() {
    assert!(orthogonal(&k("{0} + x", X), &k("{0} + x^-1", X)).unwrap());
    assert!(!orthogonal(&k("x", XY), &k("y", XY)).unwrap());
    let f = k("x/(y + {0})", XY);
    assert!(orthogonal(&f, &KernelGen::new(RatFunc::one(2))).unwrap());
}

#[test]
fn omega_examples() {
    let x = k("x", X);
    let w = omega(&x, &TropScalar::from_int(1)).unwrap();
    assert!(similar(&w, &k("min(abs(x), {1})", X)).unwrap());
    assert!(skel_equal(&skeleton(&w.gen), &skeleton(&x.gen)));
    assert!(omega(&x, &TropScalar::from_int(0)).is_err());
    let one = KernelGen::new(RatFunc::one(1));
    assert!(omega(&one, &TropScalar::from_int(2)).unwrap().gen.is_identically_one());
    let f = k("abs(x) + {2}", X);
    let w = omega(&f, &TropScalar::from_int(1)).unwrap();
    assert!(skel_is_empty(&f.gen) && skel_is_empty(&w.gen));
}

#[test]
fn boundedness_examples() {
    assert!(bounded_above(&rf("min(abs(x), {1})", X)));
    assert_eq!(upper_bound(&rf("min(abs(x), {1})", X)), Some(q(1)));
    assert!(!bounded_above(&rf("x", X)));
    assert!(!bounded_above(&rf("x/(y + {0})", XY)));
    assert!(bounded_below(&rf("abs(x) + {1}", X)));
    assert!(!bounded_below(&rf("x", X)));
}

#[test]
fn unbounded_copy_examples() {
    let f = k("min(abs(x), {1})", X);
    let u = unbounded_copy(&f).unwrap();
    assert!(!bounded_above(&u.gen));
    assert!(skel_equal(&skeleton(&u.gen), &skeleton(&f.gen)));
    assert!(member(&f.gen, &u).is_yes());
    assert!(matches!(unbounded_copy(&k("x", X)), Err(TropError::NotBoundedAbove)));

    // skeleton away from the axes: the cutoff must clear the point (2, -3)
    let p = point_kernel(&[q(2), q(-3)]);
    let b = omega(&p, &TropScalar::from_int(1)).unwrap();
    let u = unbounded_copy(&b).unwrap();
    assert!(skel_equal(&skeleton(&u.gen), &skeleton(&p.gen)));
    assert!(!bounded_above(&u.gen));

    // a diagonal skeleton escapes in both coordinates at once
    let d = omega(&k("x/y", XY), &TropScalar::from_int(1)).unwrap();
    assert!(matches!(unbounded_copy(&d), Err(TropError::UnboundedSkeleton)));
}

#[test]
fn point_kernels() {
    let o = point_kernel(&[q(0), q(0)]);
    assert!(similar(&o, &k("abs(x) + abs(y)", XY)).unwrap());
    let p = point_kernel(&[q(2), q(-1)]);
    let s = skeleton(&p.gen);
    assert_eq!(s.pieces.len(), 1);
    assert!(s.contains_point(&[q(2), q(-1)]) && !s.contains_point(&[q(2), q(0)]));
    // a point of a larger skeleton does not generate a kernel containing the line's
    let line = rf("x", XY);
    assert!(!member(&p.gen, &KernelGen::new(line.clone())).is_yes());
    // and a point of the skeleton lies in it, so its maximal kernel contains the line's
    assert!(member(&line, &point_kernel(&[q(0), qr(7, 2)])).is_yes());
}

fn arb_frac(n: usize) -> impl Strategy<Value = RatFunc> {
    let mono = (proptest::collection::vec(-2i64..=2, n), -4i64..=4)
        .prop_map(|(e, c)| Monomial::new(e.into_iter().map(q).collect(), TropScalar::new(qr(c, 2))));
    (proptest::collection::vec(mono.clone(), 1..=3), proptest::collection::vec(mono, 1..=2))
        .prop_map(move |(a, b)| RatFunc::new(TropPoly::from_monomials(n, a), TropPoly::from_monomials(n, b)).unwrap())
}

fn grid2() -> Vec<Vec<Q>> {
    (-6..=6).flat_map(|i| (-6..=6).map(move |j| vec![qr(i, 2), qr(j, 2)])).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn membership_is_certified(f in arb_frac(2), g in arb_frac(2)) {
        match member(&g, &KernelGen::new(f.clone())) {
            Membership::Yes(n) => {
                let n = q(n as i64);
                for x in grid2() {
                    prop_assert!(absval(&g, &x) <= &n * absval(&f, &x));
                }
                prop_assert!(skel_contains(&skeleton(&g), &skeleton(&f)));
            }
            Membership::No(w) => prop_assert!(witness_exceeds(&g, &f, &w, 1000)),
        }
    }

    #[test]
    fn membership_is_a_preorder(f in arb_frac(2), g in arb_frac(2), h in arb_frac(2)) {
        let (kf, kg) = (KernelGen::new(f.clone()), KernelGen::new(g.clone()));
        prop_assert!(member(&f, &kf).is_yes());
        if member(&f, &kg).is_yes() && member(&g, &KernelGen::new(h.clone())).is_yes() {
            prop_assert!(member(&f, &KernelGen::new(h)).is_yes());
        }
    }

    #[test]
    fn lattice_identities(f in arb_frac(1), g in arb_frac(1), h in arb_frac(1)) {
        let (f, g, h) = (KernelGen::new(f), KernelGen::new(g), KernelGen::new(h));
        let lhs = gen_meet(&gen_join(&f, &h).unwrap(), &gen_join(&g, &h).unwrap()).unwrap();
        let rhs = gen_join(&gen_meet(&f, &g).unwrap(), &h).unwrap();
        prop_assert!(similar(&lhs, &rhs).unwrap());
        let a = TropScalar::from_int(1);
        let om = omega(&gen_meet(&f, &g).unwrap(), &a).unwrap();
        let mo = gen_meet(&omega(&f, &a).unwrap(), &omega(&g, &a).unwrap()).unwrap();
        prop_assert!(similar(&om, &mo).unwrap());
        let oj = omega(&gen_join(&f, &g).unwrap(), &a).unwrap();
        let jo = gen_join(&omega(&f, &a).unwrap(), &omega(&g, &a).unwrap()).unwrap();
        prop_assert!(similar(&oj, &jo).unwrap());
    }

    #[test]
    fn orthogonal_skeletons_cover(f in arb_frac(2), g in arb_frac(2)) {
        let (kf, kg) = (KernelGen::new(f.clone()), KernelGen::new(g.clone()));
        let o = orthogonal(&kf, &kg).unwrap();
        let covered = grid2().iter().all(|x| f.eval(x).is_zero() || g.eval(x).is_zero());
        if o {
            prop_assert!(covered);
        }
        // thickened pairs: orthogonal by construction
        let up = KernelGen::new(f.add(&RatFunc::one(2)));
        let down = KernelGen::new(f.inv().add(&RatFunc::one(2)));
        prop_assert!(orthogonal(&up, &down).unwrap());
    }
}
