use super::*;
use crate::tropnum::{q, qr};
use proptest::prelude::*;

fn aff(g: &[i64], c: i64) -> Affine {
    Affine::new(g.iter().map(|&x| q(x)).collect(), q(c))
}

#[test]
fn min_over_half_line() {
    let p = Polyhedron::universe(1).with_ineq(aff(&[1], -2));
    match lp_optimize(&aff(&[1], 0), &p, Sense::Min) {
        LpOutcome::Optimal { value, point, .. } => {
            assert_eq!(value, q(2));
            assert_eq!(point, vec![q(2)]);
        }
        o => panic!("{o:?}"),
    }
}

#[test]
fn max_unbounded_has_ray() {
    let p = Polyhedron::universe(1).with_ineq(aff(&[1], 0));
    match lp_optimize(&aff(&[1], 0), &p, Sense::Max) {
        LpOutcome::Unbounded { point, ray } => {
            assert!(p.contains(&point));
            assert_eq!(ray, vec![q(1)]);
        }
        o => panic!("{o:?}"),
    }
}

#[test]
fn farkas_certificate() {
    let p = Polyhedron::universe(1)
        .with_ineq(aff(&[1], -1))
        .with_ineq(aff(&[-1], 0));
    match lp_optimize(&aff(&[1], 0), &p, Sense::Max) {
        LpOutcome::Infeasible(cert) => {
            assert!(cert.verify(&p));
            assert_eq!(cert.ineq, vec![q(1), q(1)]);
        }
        o => panic!("{o:?}"),
    }
}

#[test]
fn infeasible_equalities_certify() {
    let p = Polyhedron::universe(2)
        .with_eq(aff(&[1, 1], 0))
        .with_eq(aff(&[1, 1], -1));
    match lp_optimize(&aff(&[0, 0], 0), &p, Sense::Max) {
        LpOutcome::Infeasible(cert) => assert!(cert.verify(&p)),
        o => panic!("{o:?}"),
    }
}

#[test]
fn dims() {
    assert_eq!(poly_dim(&Polyhedron::universe(2).with_eq(aff(&[1, 0], 0))), 1);
    let empty = Polyhedron::universe(1)
        .with_ineq(aff(&[1], 0))
        .with_ineq(aff(&[-1], -1));
    assert_eq!(poly_dim(&empty), -1);
    assert_eq!(poly_dim(&Polyhedron::universe(3)), 3);
    // x ≥ y, y ≥ x, x ≤ 1 in ℚ²: a ray, dimension 1 with implicit equality.
    let p = Polyhedron::universe(2)
        .with_ineq(aff(&[1, -1], 0))
        .with_ineq(aff(&[-1, 1], 0))
        .with_ineq(aff(&[-1, 0], 1));
    assert_eq!(poly_dim(&p), 1);
}

#[test]
fn strict_points() {
    let w = has_strict_point(&Polyhedron::universe(1), &[aff(&[1], 0)]).unwrap();
    assert_eq!(w, vec![q(1)]);
    assert!(has_strict_point(&Polyhedron::universe(1).with_eq(aff(&[1], 0)), &[aff(&[1], 0)]).is_none());
    let w = has_strict_point(
        &Polyhedron::universe(1).with_ineq(aff(&[1], 0)),
        &[aff(&[1], 0), aff(&[-1], 1)],
    )
    .unwrap();
    // Oracle: the gap x ≥ δ, 1 − x ≥ δ is maximized at the midpoint.
    assert_eq!(w, vec![qr(1, 2)]);
}

#[test]
fn zero_variable_problems() {
    let ok = Polyhedron::universe(0).with_ineq(Affine::constant(0, q(1)));
    assert!(!ok.is_empty());
    let bad = Polyhedron::universe(0).with_ineq(Affine::constant(0, q(-1)));
    match lp_optimize(&Affine::zero(0), &bad, Sense::Max) {
        LpOutcome::Infeasible(c) => assert!(c.verify(&bad)),
        o => panic!("{o:?}"),
    }
}

fn arb_poly(n: usize) -> impl Strategy<Value = Polyhedron> {
    let form = (proptest::collection::vec(-3i64..=3, n), -4i64..=4)
        .prop_map(|(g, c)| Affine::new(g.into_iter().map(q).collect(), q(c)));
    (
        proptest::collection::vec(form.clone(), 0..=1),
        proptest::collection::vec(form, 1..=6),
    )
        .prop_map(move |(eqs, ineqs)| Polyhedron::new(n, eqs, ineqs))
}

fn grid_points(n: usize) -> Vec<Vec<Q>> {
    let axis: Vec<Q> = (-8..=8).map(|i| qr(i, 2)).collect();
    let mut pts = vec![vec![]];
    for _ in 0..n {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |a| {
                    let mut v = p.clone();
                    v.push(a.clone());
                    v
                })
            })
            .collect();
    }
    pts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn outcomes_verify(p in arb_poly(2), obj in proptest::collection::vec(-3i64..=3, 2)) {
        let obj = Affine::new(obj.into_iter().map(q).collect(), q(0));
        match lp_optimize(&obj, &p, Sense::Max) {
            LpOutcome::Optimal { value, point, duals } => {
                prop_assert!(p.contains(&point));
                prop_assert_eq!(obj.eval(&point), value.clone());
                // Strong duality: the multipliers certify the same bound.
                prop_assert!(duals.ineq.iter().all(|l| !l.is_negative()));
                let mut acc = obj.clone();
                let mut bound = obj.c.clone();
                for (l, a) in duals.ineq.iter().zip(&p.ineqs) {
                    acc = acc.add(&a.scale(l));
                    bound += l * &a.c;
                }
                for (m, a) in duals.eq.iter().zip(&p.eqs) {
                    acc = acc.add(&a.scale(m));
                    bound += m * &a.c;
                }
                prop_assert!(acc.grad.iter().all(|g| g.is_zero()));
                prop_assert_eq!(bound, value.clone());
                for x in grid_points(2) {
                    if p.contains(&x) {
                        prop_assert!(obj.eval(&x) <= value);
                    }
                }
            }
            LpOutcome::Unbounded { point, ray } => {
                prop_assert!(p.contains(&point));
                prop_assert!(obj.lin(&ray).is_positive());
                for e in &p.eqs {
                    prop_assert!(e.lin(&ray).is_zero());
                }
                for a in &p.ineqs {
                    prop_assert!(!a.lin(&ray).is_negative());
                }
            }
            LpOutcome::Infeasible(cert) => {
                prop_assert!(cert.verify(&p));
            }
        }
    }

    #[test]
    fn full_dim_iff_strict_interior(p in arb_poly(2)) {
        let p = Polyhedron::new(2, vec![], p.ineqs);
        let full = poly_dim(&p) == 2;
        let strict = has_strict_point(&Polyhedron::universe(2), &p.ineqs).is_some();
        prop_assert_eq!(full, strict);
    }

    #[test]
    fn relint_point_is_interior(p in arb_poly(3)) {
        if let Some(h) = relint(&p) {
            prop_assert!(p.contains(&h.point));
            for a in &h.ineqs {
                prop_assert!(a.eval(&h.point).is_positive());
            }
            for e in &h.eqs {
                prop_assert!(h.vanishes(e));
            }
            prop_assert_eq!(h.dim() as i64 + rank(&h.eqs.iter().map(|e| e.grad.clone()).collect::<Vec<_>>()) as i64, 3);
        } else {
            prop_assert!(p.is_empty());
        }
    }
}
