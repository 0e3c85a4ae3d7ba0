use num_traits::{One, Signed, Zero};

use super::{linalg, lp_optimize, Affine, LpOutcome, Polyhedron, Sense};
use crate::tropnum::Q;

/// Maximizes `δ` subject to `p` and `s(x) ≥ δ` for every `s` in `strict`, with `δ ≤ 1`.
/// Returns `(δ*, x, multipliers on strict)` or `None` if `p` is empty.
fn gap_lp(p: &Polyhedron, strict: &[Affine]) -> Option<(Q, Vec<Q>, Vec<Q>)> {
    let n = p.nvars;
    let mut lifted = Polyhedron::universe(n + 1);
    lifted.eqs = p.eqs.iter().map(|a| a.lift(1)).collect();
    lifted.ineqs = strict
        .iter()
        .map(|s| {
            let mut a = s.lift(1);
            a.grad[n] = -Q::one();
            a
        })
        .collect();
    let mut cap = Affine::constant(n + 1, Q::one());
    cap.grad[n] = -Q::one();
    lifted.ineqs.push(cap);
    lifted.ineqs.extend(p.ineqs.iter().map(|a| a.lift(1)));
    match lp_optimize(&Affine::var(n + 1, n), &lifted, Sense::Max) {
        LpOutcome::Optimal { value, mut point, duals } => {
            point.truncate(n);
            let mult = duals.ineq[..strict.len()].to_vec();
            Some((value, point, mult))
        }
        LpOutcome::Infeasible(_) => None,
        LpOutcome::Unbounded { .. } => unreachable!("δ is capped"),
    }
}

/// A point of `p` where every form in `strict` is positive, if one exists.
pub fn has_strict_point(p: &Polyhedron, strict: &[Affine]) -> Option<Vec<Q>> {
    let (d, x, _) = gap_lp(p, strict)?;
    d.is_positive().then_some(x)
}

/// Affine hull data for a nonempty polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    /// A relative-interior point.
    pub point: Vec<Q>,
    /// Explicit plus implicit equalities.
    pub eqs: Vec<Affine>,
    /// Inequalities that are strictly satisfiable together (all positive at `point`).
    pub ineqs: Vec<Affine>,
    /// Basis of the direction space of the affine hull.
    pub basis: Vec<Vec<Q>>,
}

impl Hull {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether `f` is identically zero on the polyhedron.
    pub fn vanishes(&self, f: &Affine) -> bool {
        f.eval(&self.point).is_zero() && self.basis.iter().all(|b| f.lin(b).is_zero())
    }

    /// Whether `f` is constant on the polyhedron.
    pub fn is_constant_on(&self, f: &Affine) -> bool {
        self.basis.iter().all(|b| f.lin(b).is_zero())
    }

    pub fn region(&self, nvars: usize) -> Polyhedron {
        Polyhedron::new(nvars, self.eqs.clone(), self.ineqs.clone())
    }
}

/// Finds implicit equalities by repeated gap LPs: at a zero optimum every inequality
/// carrying a positive multiplier is tight on the whole polyhedron.
pub fn relint(p: &Polyhedron) -> Option<Hull> {
    let mut eqs = p.eqs.clone();
    let mut ineqs = p.ineqs.clone();
    loop {
        let cur = Polyhedron::new(p.nvars, eqs.clone(), Vec::new());
        let (d, x, mult) = gap_lp(&cur, &ineqs)?;
        if d.is_negative() {
            return None;
        }
        if d.is_positive() {
            let grads: Vec<Vec<Q>> = eqs.iter().map(|e| e.grad.clone()).collect();
            let basis = linalg::nullspace(&grads, p.nvars);
            return Some(Hull { point: x, eqs, ineqs, basis });
        }
        let mut keep = Vec::new();
        for (a, m) in ineqs.into_iter().zip(mult) {
            if m.is_positive() {
                eqs.push(a);
            } else {
                keep.push(a);
            }
        }
        ineqs = keep;
    }
}

pub fn poly_dim(p: &Polyhedron) -> i64 {
    relint(p).map_or(-1, |h| h.dim() as i64)
}
