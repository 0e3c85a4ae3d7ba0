//! Hat, tilde and underline maps, essential forms, regularity and corner-integrality.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::ratlp::{has_strict_point, Affine, Polyhedron};
use crate::skeletons::{skel_equal, skeleton};
use crate::tropexpr::{Monomial, RatFunc, Term, TropPoly};
use crate::tropnum::{fmt_q, Q};

/// Terms counted with multiplicity: a ghost contributes two identical copies.
fn expanded(p: &TropPoly) -> Vec<Monomial> {
    p.terms()
        .iter()
        .flat_map(|t| std::iter::repeat_n(t.mono.clone(), t.mult as usize))
        .collect()
}

/// Whether `hat` falls back to the constant `{1}`: a single tangible term has no
/// corner roots, and the zero element that would express that is not represented.
pub fn hat_is_degenerate(p: &TropPoly) -> bool {
    expanded(p).len() < 2
}

/// The distinct summands `fᵢ / Σ_{j≠i} fⱼ` of the hat map.
pub fn hat_summands(p: &TropPoly) -> Vec<RatFunc> {
    let copies = expanded(p);
    let n = p.nvars();
    let mut out: Vec<RatFunc> = Vec::new();
    if copies.len() < 2 {
        return out;
    }
    for i in 0..copies.len() {
        let rest = copies
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, m)| m.clone());
        let s = RatFunc::new(TropPoly::monomial(copies[i].clone()), TropPoly::tangible_sum(n, rest))
            .expect("nonempty sides");
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

fn sum_all(n: usize, parts: &[RatFunc]) -> RatFunc {
    parts
        .iter()
        .skip(1)
        .fold(parts.first().cloned().unwrap_or_else(|| RatFunc::one(n)), |acc, s| acc.add(s))
}

/// `f̂ = Σᵢ fᵢ / Σ_{j≠i} fⱼ` over a common denominator; its skeleton is the corner locus.
pub fn hat(p: &TropPoly) -> RatFunc {
    if hat_is_degenerate(p) {
        return RatFunc::constant(p.nvars(), Q::from_integer(1.into()));
    }
    sum_all(p.nvars(), &hat_summands(p))
}

/// `f̃ = ⋀ᵢ |fᵢ / Σ_{j≠i} fⱼ|`, similar to `f̂`.
pub fn tilde(p: &TropPoly) -> RatFunc {
    if hat_is_degenerate(p) {
        return hat(p);
    }
    let mut abs_parts: Vec<RatFunc> = Vec::new();
    for s in hat_summands(p) {
        let a = s.abs().pruned();
        if !abs_parts.contains(&a) {
            abs_parts.push(a);
        }
    }
    let mut it = abs_parts.into_iter();
    let first = it.next().expect("at least two summands");
    it.fold(first, |acc, a| acc.meet(&a).pruned())
}

/// All numerator and denominator monomials summed supertropically. A monomial that
/// occurs on both sides with the same coefficient becomes a ghost; with different
/// coefficients the larger one is kept.
pub fn underline(f: &RatFunc) -> TropPoly {
    let terms: Vec<Term> = f
        .num
        .monomials()
        .chain(f.den.monomials())
        .cloned()
        .map(Term::tangible)
        .collect();
    TropPoly::new(f.nvars(), terms)
}

/// Greedily removes monomials (numerator first, ascending index) whose removal keeps
/// the skeleton, repeating until nothing more can go.
pub fn essential_form(f: &RatFunc) -> RatFunc {
    let target = skeleton(f);
    let mut cur = f.clone();
    loop {
        let mut changed = false;
        for side in 0..2 {
            let mut i = 0;
            loop {
                let poly = if side == 0 { &cur.num } else { &cur.den };
                if i >= poly.len() || poly.len() == 1 {
                    break;
                }
                let cand = if side == 0 {
                    RatFunc { num: cur.num.without(i), den: cur.den.clone() }
                } else {
                    RatFunc { num: cur.num.clone(), den: cur.den.without(i) }
                };
                if skel_equal(&skeleton(&cand), &target) {
                    cur = cand;
                    changed = true;
                } else {
                    i += 1;
                }
            }
        }
        if !changed {
            return cur;
        }
    }
}

/// Indices of the hat summands kept by greedy ascending removal under skeleton equality.
pub fn essential_summands(p: &TropPoly) -> Vec<usize> {
    let parts = hat_summands(p);
    let n = p.nvars();
    let target = skeleton(&hat(p));
    let mut keep: Vec<usize> = (0..parts.len()).collect();
    let mut k = 0;
    while k < keep.len() && keep.len() > 1 {
        let trial: Vec<usize> = keep.iter().copied().filter(|&i| i != keep[k]).collect();
        let f = sum_all(n, &trial.iter().map(|&i| parts[i].clone()).collect::<Vec<_>>());
        if skel_equal(&skeleton(&f.pruned()), &target) {
            keep = trial;
        } else {
            k += 1;
        }
    }
    keep
}

fn strict_dominance(forms: &[Affine], i: usize) -> Vec<Affine> {
    (0..forms.len()).filter(|&k| k != i).map(|k| forms[i].sub(&forms[k])).collect()
}

/// False iff some monomial shared by numerator and denominator strictly dominates
/// both sides somewhere. Meaningful on essential forms.
pub fn is_regular(f: &RatFunc) -> bool {
    let (hn, hd) = (f.num.forms(), f.den.forms());
    let universe = Polyhedron::universe(f.nvars());
    for (i, a) in f.num.monomials().enumerate() {
        for (j, b) in f.den.monomials().enumerate() {
            if a != b {
                continue;
            }
            let mut strict = strict_dominance(&hn, i);
            strict.extend(strict_dominance(&hd, j));
            if has_strict_point(&universe, &strict).is_some() {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Num,
    Den,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub side: Side,
    pub pair: (usize, usize),
    pub witness: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiReport {
    pub integral: bool,
    pub violations: Vec<Violation>,
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Violation", 3)?;
        st.serialize_field("side", if self.side == Side::Num { "num" } else { "den" })?;
        st.serialize_field("pair", &[self.pair.0, self.pair.1])?;
        st.serialize_field("witness", &self.witness.iter().map(fmt_q).collect::<Vec<_>>())?;
        st.end()
    }
}

impl Serialize for CiReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CiReport", 2)?;
        st.serialize_field("integral", &self.integral)?;
        st.serialize_field("violations", &self.violations)?;
        st.end()
    }
}

fn side_violations(side: Side, own: &TropPoly, other: &TropPoly, out: &mut Vec<Violation>) {
    let n = own.nvars();
    let live = own.live_indices();
    let forms = own.forms();
    let other_live = other.live_indices();
    let oforms = other.forms();
    for (a, &i) in live.iter().enumerate() {
        let ineqs: Vec<Affine> =
            live.iter().filter(|&&k| k != i).map(|&k| forms[i].sub(&forms[k])).collect();
        let strict: Vec<Affine> = other_live.iter().map(|&t| forms[i].sub(&oforms[t])).collect();
        for &j in &live[a + 1..] {
            let tie = Polyhedron::new(n, vec![forms[i].sub(&forms[j])], ineqs.clone());
            if let Some(w) = has_strict_point(&tie, &strict) {
                out.push(Violation { side, pair: (i, j), witness: w });
            }
        }
    }
}

/// Every corner root of the numerator must satisfy `g ≥ h`, and symmetrically.
pub fn is_corner_integral(f: &RatFunc) -> CiReport {
    let mut violations = Vec::new();
    side_violations(Side::Num, &f.num, &f.den, &mut violations);
    side_violations(Side::Den, &f.den, &f.num, &mut violations);
    CiReport { integral: violations.is_empty(), violations }
}

/// `Φ(f) = |f| ∧ (|f⁻¹ ⊕ 𝟙| ⊕ h̃) ∧ (|f ⊕ 𝟙| ⊕ g̃)` for `f = h/g`.
///
/// A side with a single effective monomial has no corner roots; its tilde would be
/// the empty-skeleton constant, so its meet factor is omitted rather than letting a
/// bounded term cap `Φ`.
pub fn ci_closure(f: &RatFunc) -> RatFunc {
    let n = f.nvars();
    let one = RatFunc::one(n);
    let mut phi = f.abs().pruned();
    let h = f.num.pruned();
    if h.len() >= 2 {
        let t = f.inv().add(&one).abs().pruned().add(&tilde(&h)).pruned();
        phi = phi.meet(&t).pruned();
    }
    let g = f.den.pruned();
    if g.len() >= 2 {
        let t = f.add(&one).abs().pruned().add(&tilde(&g)).pruned();
        phi = phi.meet(&t).pruned();
    }
    phi
}

#[cfg(test)]
mod tests;
