//! Skeletons (zero sets in log scale) and corner loci as finite unions of polyhedra.

use num_traits::Signed;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cellgeo::{cells_of, refine_polys, restrict_at_point};
use crate::cornerint::hat;
use crate::error::{Result, TropError};
use crate::ratlp::{relint, Affine, Hull, LpOutcome, Polyhedron};
use crate::tropexpr::{RatFunc, TropPoly};
use crate::tropnum::Q;

/// A union of nonempty closed polyhedra, together with rational functions whose
/// skeletons have the same union. The definers are what make containment
/// decidable piecewise.
#[derive(Clone, Debug)]
pub struct SkelSet {
    pub nvars: usize,
    pub pieces: Vec<Polyhedron>,
    pub definers: Vec<RatFunc>,
}

impl SkelSet {
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains_point(&self, x: &[Q]) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn union(&self, o: &SkelSet) -> SkelSet {
        let mut pieces = self.pieces.clone();
        pieces.extend(o.pieces.iter().cloned());
        let mut definers = self.definers.clone();
        definers.extend(o.definers.iter().cloned());
        SkelSet { nvars: self.nvars, pieces, definers }.simplify()
    }

    /// Drops pieces contained in another single piece. A relative-interior point of
    /// the smaller piece must lie in the larger one, which rules out most pairs
    /// without an LP.
    fn simplify(mut self) -> Self {
        let hulls: Vec<Option<Hull>> = self.pieces.iter().map(relint).collect();
        let mut keep = vec![true; self.pieces.len()];
        for i in 0..self.pieces.len() {
            let Some(hi) = &hulls[i] else {
                keep[i] = false;
                continue;
            };
            for j in 0..self.pieces.len() {
                if i == j || !keep[j] {
                    continue;
                }
                let Some(hj) = &hulls[j] else { continue };
                // equal pieces: keep the first
                if hi.dim() > hj.dim() || (hi.dim() == hj.dim() && j > i) {
                    continue;
                }
                if !self.pieces[j].contains(&hi.point) {
                    continue;
                }
                if hi.dim() == 0 || piece_within(&self.pieces[i], &self.pieces[j]) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let mut k = keep.into_iter();
        self.pieces.retain(|_| k.next().unwrap());
        self
    }
}

impl Serialize for SkelSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SkelSet", 2)?;
        st.serialize_field("nvars", &self.nvars)?;
        st.serialize_field("pieces", &self.pieces)?;
        st.end()
    }
}

fn min_of(p: &Polyhedron, a: &Affine) -> Option<Q> {
    match p.minimize(a) {
        LpOutcome::Optimal { value, .. } => Some(value),
        _ => None,
    }
}

/// `a ⊆ b` for single polyhedra, by checking each constraint of `b` over `a`.
fn piece_within(a: &Polyhedron, b: &Polyhedron) -> bool {
    let ge0 = |f: &Affine| min_of(a, f).is_some_and(|v| !v.is_negative());
    b.ineqs.iter().all(ge0) && b.eqs.iter().all(|e| ge0(e) && ge0(&e.neg()))
}

fn dominance(forms: &[Affine], i: usize, live: &[usize]) -> Vec<Affine> {
    live.iter().filter(|&&k| k != i).map(|&k| forms[i].sub(&forms[k])).collect()
}

/// `{x : f(x) = 𝟙}`.
pub fn skeleton(f: &RatFunc) -> SkelSet {
    let n = f.nvars();
    let (hn, hd) = (f.num.live_indices(), f.den.live_indices());
    let (fnum, fden) = (f.num.forms(), f.den.forms());
    let mut pieces = Vec::new();
    for &i in &hn {
        for &j in &hd {
            let mut ineqs = dominance(&fnum, i, &hn);
            ineqs.extend(dominance(&fden, j, &hd));
            let p = Polyhedron::new(n, vec![fnum[i].sub(&fden[j])], ineqs);
            if !p.is_empty() {
                pieces.push(p);
            }
        }
    }
    SkelSet { nvars: n, pieces, definers: vec![f.clone()] }.simplify()
}

/// Points where the maximum of `p` is attained at least twice or by a ghost term.
pub fn corner_locus(p: &TropPoly) -> SkelSet {
    let n = p.nvars();
    let live = p.live_indices();
    let forms = p.forms();
    let mut pieces = Vec::new();
    for (a, &i) in live.iter().enumerate() {
        if p.terms()[i].is_ghost() {
            let q = Polyhedron::new(n, vec![], dominance(&forms, i, &live));
            if !q.is_empty() {
                pieces.push(q);
            }
        }
        for &j in &live[a + 1..] {
            let q = Polyhedron::new(n, vec![forms[i].sub(&forms[j])], dominance(&forms, i, &live));
            if !q.is_empty() {
                pieces.push(q);
            }
        }
    }
    SkelSet { nvars: n, pieces, definers: vec![hat(p)] }.simplify()
}

/// Whether `f` vanishes identically on the polyhedron `piece`.
pub fn vanishes_on(f: &RatFunc, piece: &Polyhedron) -> bool {
    refine_polys(&[&f.num, &f.den], piece)
        .iter()
        .all(|c| c.vanishes(&restrict_at_point(f, c)))
}

/// Whether `piece ⊆ ⋃ Skel(g)` over `defs`. A single definer covering the piece is
/// tried first; otherwise the piece is refined by all of them at once.
pub fn covered_by(defs: &[RatFunc], piece: &Polyhedron) -> bool {
    if defs.iter().any(|d| vanishes_on(d, piece)) {
        return true;
    }
    if defs.len() < 2 {
        return false;
    }
    let polys: Vec<&TropPoly> = defs.iter().flat_map(|d| [&d.num, &d.den]).collect();
    refine_polys(&polys, piece)
        .iter()
        .all(|c| defs.iter().any(|d| c.vanishes(&restrict_at_point(d, c))))
}

/// `a ⊆ b`: every piece of `a` is covered by the definers of `b`.
pub fn skel_subset(a: &SkelSet, b: &SkelSet) -> bool {
    a.pieces.iter().all(|p| covered_by(&b.definers, p))
}

/// `a ⊇ b`.
pub fn skel_contains(a: &SkelSet, b: &SkelSet) -> bool {
    skel_subset(b, a)
}

pub fn skel_equal(a: &SkelSet, b: &SkelSet) -> bool {
    skel_subset(a, b) && skel_subset(b, a)
}

/// If `Skel(f)` is empty, the largest `γ` with `|f| ≥ γ` everywhere; `None` otherwise.
pub fn empty_skeleton_bound(f: &RatFunc) -> Option<Q> {
    let mut gamma: Option<Q> = None;
    for c in cells_of(f) {
        let l = restrict_at_point(f, &c);
        if !c.region.clone().with_eq(l.clone()).is_empty() {
            return None;
        }
        // no zero in a convex cell: the sign of ℓ is constant there
        let oriented = if l.eval(&c.point).is_positive() { l } else { l.neg() };
        let LpOutcome::Optimal { value, .. } = c.region.minimize(&oriented) else {
            unreachable!("a sign-definite affine form is bounded on its side");
        };
        gamma = Some(match gamma {
            Some(g) if g <= value => g,
            _ => value,
        });
    }
    gamma
}

pub fn skel_is_empty(f: &RatFunc) -> bool {
    empty_skeleton_bound(f).is_some()
}

/// `(α⁻¹f ⊕ 𝟙) ⊕ (β⁻¹f⁻¹ ⊕ 𝟙)`, whose skeleton is the stripe `−β ≤ f ≤ α`.
pub fn thicken(f: &RatFunc, alpha: &Q, beta: &Q) -> Result<RatFunc> {
    if alpha.is_negative() || beta.is_negative() {
        return Err(TropError::InvalidInput("thickening widths must be ≥ 0".into()));
    }
    let one = RatFunc::one(f.nvars());
    let up = f.scale(&-alpha).add(&one).pruned();
    let down = f.inv().scale(&-beta).add(&one).pruned();
    Ok(up.add(&down).pruned())
}

/// `a ⊆ int(Skel(g))`: no piece of `a` meets a linearity cell of `g` on which `g` is
/// not identically 𝟙 (the closure of `{g ≠ 𝟙}` is the union of those cells).
pub fn skel_in_interior(a: &SkelSet, g: &RatFunc) -> bool {
    for c in cells_of(g) {
        let l = restrict_at_point(g, &c);
        if c.vanishes(&l) {
            continue;
        }
        if a.pieces.iter().any(|p| !p.intersect(&c.region).is_empty()) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests;
