//! Exact rational linear programming and H-polyhedron primitives.

mod fastq;
mod hull;
pub mod linalg;
mod simplex;

use std::fmt;

use num_traits::{Signed, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::tropnum::{fmt_q, Q};
use fastq::R;

pub use hull::{has_strict_point, poly_dim, relint, Hull};
pub use linalg::rank;

/// `⟨grad, x⟩ + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub grad: Vec<Q>,
    pub c: Q,
}

impl Affine {
    pub fn new(grad: Vec<Q>, c: Q) -> Self {
        Affine { grad, c }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Affine { grad: vec![Q::zero(); nvars], c }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::constant(nvars, Q::zero())
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut a = Self::zero(nvars);
        a.grad[i] = Q::from_integer(1.into());
        a
    }

    pub fn nvars(&self) -> usize {
        self.grad.len()
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        linalg::dot(&self.grad, x) + &self.c
    }

    /// Directional derivative along `r`.
    pub fn lin(&self, r: &[Q]) -> Q {
        linalg::dot(&self.grad, r)
    }

    pub fn sub(&self, o: &Affine) -> Affine {
        Affine {
            grad: self.grad.iter().zip(&o.grad).map(|(a, b)| a - b).collect(),
            c: &self.c - &o.c,
        }
    }

    pub fn add(&self, o: &Affine) -> Affine {
        Affine {
            grad: self.grad.iter().zip(&o.grad).map(|(a, b)| a + b).collect(),
            c: &self.c + &o.c,
        }
    }

    pub fn scale(&self, k: &Q) -> Affine {
        Affine {
            grad: self.grad.iter().map(|a| a * k).collect(),
            c: &self.c * k,
        }
    }

    pub fn neg(&self) -> Affine {
        Affine {
            grad: self.grad.iter().map(|a| -a).collect(),
            c: -&self.c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.grad.iter().all(|g| g.is_zero())
    }

    /// Positive rescaling making the first nonzero coefficient ±1; a canonical key
    /// for the half-space `self ≥ 0`.
    pub fn normalized(&self) -> Affine {
        let lead = self
            .grad
            .iter()
            .chain(std::iter::once(&self.c))
            .find(|x| !x.is_zero());
        match lead {
            Some(l) => self.scale(&(Q::from_integer(1.into()) / l.abs())),
            None => self.clone(),
        }
    }

    /// Lifts into a space with `extra` trailing variables, all with coefficient zero.
    pub fn lift(&self, extra: usize) -> Affine {
        let mut g = self.grad.clone();
        g.extend(std::iter::repeat_n(Q::zero(), extra));
        Affine { grad: g, c: self.c.clone() }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .grad
            .iter()
            .chain(std::iter::once(&self.c))
            .map(fmt_q)
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

// Serialized as `[g1, …, gn, c]` with every entry a "p/q" string.
impl Serialize for Affine {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.grad.len() + 1))?;
        for g in &self.grad {
            seq.serialize_element(&fmt_q(g))?;
        }
        seq.serialize_element(&fmt_q(&self.c))?;
        seq.end()
    }
}

/// `{x : eqs(x) = 0, ineqs(x) ≥ 0}`. Always closed; strict inequalities are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    pub nvars: usize,
    pub eqs: Vec<Affine>,
    pub ineqs: Vec<Affine>,
}

impl Polyhedron {
    pub fn universe(nvars: usize) -> Self {
        Polyhedron { nvars, eqs: Vec::new(), ineqs: Vec::new() }
    }

    pub fn new(nvars: usize, eqs: Vec<Affine>, ineqs: Vec<Affine>) -> Self {
        Polyhedron { nvars, eqs, ineqs }
    }

    pub fn with_eq(mut self, a: Affine) -> Self {
        self.eqs.push(a);
        self
    }

    pub fn with_ineq(mut self, a: Affine) -> Self {
        self.ineqs.push(a);
        self
    }

    pub fn intersect(&self, o: &Polyhedron) -> Polyhedron {
        let mut p = self.clone();
        p.eqs.extend(o.eqs.iter().cloned());
        p.ineqs.extend(o.ineqs.iter().cloned());
        p
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.eqs.iter().all(|e| e.eval(x).is_zero())
            && self.ineqs.iter().all(|i| !i.eval(x).is_negative())
    }

    pub fn feasible_point(&self) -> Option<Vec<Q>> {
        match lp_optimize(&Affine::zero(self.nvars), self, Sense::Max) {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.feasible_point().is_none()
    }

    pub fn dim(&self) -> i64 {
        poly_dim(self)
    }

    pub fn maximize(&self, obj: &Affine) -> LpOutcome {
        lp_optimize(obj, self, Sense::Max)
    }

    pub fn minimize(&self, obj: &Affine) -> LpOutcome {
        lp_optimize(obj, self, Sense::Min)
    }
}

impl Serialize for Polyhedron {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Polyhedron", 2)?;
        st.serialize_field("eq", &self.eqs)?;
        st.serialize_field("ineq", &self.ineqs)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

/// Multipliers proving infeasibility: `Σ λ_k ineq_k + Σ μ_e eq_e` has zero gradient
/// and a negative constant, with every `λ_k ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub ineq: Vec<Q>,
    pub eq: Vec<Q>,
}

impl Certificate {
    pub fn verify(&self, p: &Polyhedron) -> bool {
        if self.ineq.len() != p.ineqs.len() || self.eq.len() != p.eqs.len() {
            return false;
        }
        if self.ineq.iter().any(|l| l.is_negative()) {
            return false;
        }
        let mut acc = Affine::zero(p.nvars);
        for (l, a) in self.ineq.iter().zip(&p.ineqs) {
            acc = acc.add(&a.scale(l));
        }
        for (m, a) in self.eq.iter().zip(&p.eqs) {
            acc = acc.add(&a.scale(m));
        }
        acc.is_constant() && acc.c.is_negative()
    }
}

/// Lagrange multipliers at an optimum, for the objective as maximized:
/// `obj.grad + Σ λ_k g_k + Σ μ_e g_e = 0` and `value = obj.c + Σ λ_k c_k + Σ μ_e c_e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Duals {
    pub ineq: Vec<Q>,
    pub eq: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Q, point: Vec<Q>, duals: Duals },
    /// `point` is feasible; the objective improves without bound along `ray`.
    Unbounded { point: Vec<Q>, ray: Vec<Q> },
    Infeasible(Certificate),
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Q> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible(_))
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, LpOutcome::Unbounded { .. })
    }
}

fn split_multipliers(p: &Polyhedron, y: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let k = p.ineqs.len();
    let ineq = y[..k].to_vec();
    let eq = (0..p.eqs.len())
        .map(|e| &y[k + 2 * e] - &y[k + 2 * e + 1])
        .collect();
    (ineq, eq)
}

/// Optimizes an affine objective over `p`, solving the LP through its dual so the
/// tableau has `nvars` rows.
pub fn lp_optimize(obj: &Affine, p: &Polyhedron, sense: Sense) -> LpOutcome {
    assert_eq!(obj.nvars(), p.nvars, "objective dimension");
    let o: Vec<R> = obj
        .grad
        .iter()
        .map(|g| match sense {
            Sense::Max => R::from_q(g),
            Sense::Min => R::from_q(g).neg(),
        })
        .collect();
    // Primal rows a·x ≤ b.
    let neg = |a: &Affine| a.grad.iter().map(|g| R::from_q(g).neg()).collect::<Vec<R>>();
    let mut cols = Vec::with_capacity(p.ineqs.len() + 2 * p.eqs.len());
    let mut b = Vec::with_capacity(cols.capacity());
    for a in &p.ineqs {
        cols.push(neg(a));
        b.push(R::from_q(&a.c));
    }
    for a in &p.eqs {
        cols.push(neg(a));
        b.push(R::from_q(&a.c));
        cols.push(a.grad.iter().map(R::from_q).collect());
        b.push(R::from_q(&a.c).neg());
    }

    match simplex::solve(&cols, &b, &o) {
        simplex::StdOutcome::Optimal { y, pi } => {
            let (ineq, eq) = split_multipliers(p, &y);
            LpOutcome::Optimal { value: obj.eval(&pi), point: pi, duals: Duals { ineq, eq } }
        }
        simplex::StdOutcome::Unbounded { ray } => {
            let (ineq, eq) = split_multipliers(p, &ray);
            LpOutcome::Infeasible(Certificate { ineq, eq })
        }
        simplex::StdOutcome::Infeasible { pi: ray } => {
            let zero = vec![R::ZERO; p.nvars];
            match simplex::solve(&cols, &b, &zero) {
                simplex::StdOutcome::Optimal { pi, .. } => {
                    LpOutcome::Unbounded { point: pi, ray }
                }
                simplex::StdOutcome::Unbounded { ray } => {
                    let (ineq, eq) = split_multipliers(p, &ray);
                    LpOutcome::Infeasible(Certificate { ineq, eq })
                }
                simplex::StdOutcome::Infeasible { .. } => {
                    unreachable!("the zero objective is always dual feasible")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests;
