//! Linearity cells of tropical polynomials and their common refinements.

use num_traits::{Signed, Zero};

use crate::error::{Result, TropError};
use crate::ratlp::{has_strict_point, relint, Affine, LpOutcome, Polyhedron};
use crate::tropexpr::{RatFunc, TropPoly};
use crate::tropnum::Q;

/// A closed region on which each participating polynomial has a fixed set of
/// maximal monomials. Cells are relatively full-dimensional in the region they
/// refine and may overlap on faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub region: Polyhedron,
    /// A relative-interior point.
    pub point: Vec<Q>,
    /// Basis of the direction space of the affine hull of `region`.
    pub basis: Vec<Vec<Q>>,
    /// Per polynomial, the monomials attaining the maximum throughout the cell.
    pub active: Vec<Vec<usize>>,
}

impl Cell {
    pub fn active_num(&self) -> &[usize] {
        &self.active[0]
    }

    pub fn active_den(&self) -> &[usize] {
        &self.active[1]
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether `a` is identically zero on the cell.
    pub fn vanishes(&self, a: &Affine) -> bool {
        a.eval(&self.point).is_zero() && self.is_constant_on(a)
    }

    pub fn is_constant_on(&self, a: &Affine) -> bool {
        self.basis.iter().all(|b| a.lin(b).is_zero())
    }
}

/// Common refinement of the dominance partitions of `polys`, restricted to `base`.
pub fn refine_polys(polys: &[&TropPoly], base: &Polyhedron) -> Vec<Cell> {
    let Some(h) = relint(base) else {
        return Vec::new();
    };
    let mut cells = vec![Cell {
        region: h.region(base.nvars),
        point: h.point,
        basis: h.basis,
        active: Vec::new(),
    }];
    for p in polys {
        let forms = p.forms();
        let mut next = Vec::new();
        for parent in &cells {
            let mut children: Vec<Cell> = Vec::new();
            let affine_hull = Polyhedron::new(base.nvars, parent.region.eqs.clone(), Vec::new());
            for i in 0..forms.len() {
                if children.iter().any(|c| c.active.last().unwrap().contains(&i)) {
                    continue;
                }
                let mut new_ineqs = Vec::new();
                let mut impossible = false;
                for (j, fj) in forms.iter().enumerate() {
                    if j == i {
                        continue;
                    }
                    let d = forms[i].sub(fj);
                    // Constant differences on the parent are decided without an LP.
                    if parent.is_constant_on(&d) {
                        if d.eval(&parent.point).is_negative() {
                            impossible = true;
                            break;
                        }
                        continue;
                    }
                    new_ineqs.push(d);
                }
                if impossible {
                    continue;
                }
                let mut strict = parent.region.ineqs.clone();
                strict.extend(new_ineqs.iter().cloned());
                let Some(pt) = has_strict_point(&affine_hull, &strict) else {
                    continue;
                };
                let mut region = parent.region.clone();
                region.ineqs.extend(new_ineqs);
                trim(&mut region);
                let mut active = parent.active.clone();
                active.push(p.argmax(&pt));
                children.push(Cell { region, point: pt, basis: parent.basis.clone(), active });
            }
            next.extend(children);
        }
        cells = next;
    }
    cells
}

/// Drops constant, parallel-weaker and LP-redundant inequalities; the set is
/// unchanged but later LPs over it get much smaller.
fn trim(region: &mut Polyhedron) {
    let mut kept: Vec<Affine> = Vec::new();
    for a in region.ineqs.drain(..) {
        let Some(lead) = a.grad.iter().find(|x| !x.is_zero()).map(|x| x.abs()) else {
            if a.c.is_negative() {
                kept.push(a);
            }
            continue;
        };
        let a = a.scale(&lead.recip());
        match kept.iter_mut().find(|k| k.grad == a.grad) {
            Some(k) if a.c < k.c => *k = a,
            Some(_) => {}
            None => kept.push(a),
        }
    }
    if kept.len() > region.nvars + 1 {
        let mut i = 0;
        while i < kept.len() {
            let a = kept.remove(i);
            let rest = Polyhedron::new(region.nvars, region.eqs.clone(), kept.clone());
            match rest.minimize(&a) {
                LpOutcome::Optimal { value, .. } if !value.is_negative() => {}
                _ => {
                    kept.insert(i, a);
                    i += 1;
                }
            }
        }
    }
    region.ineqs = kept;
}

pub fn dominance_cells(p: &TropPoly) -> Vec<Cell> {
    refine_polys(&[p], &Polyhedron::universe(p.nvars()))
}

/// Linearity cells of a single rational function (numerator and denominator).
pub fn cells_of(f: &RatFunc) -> Vec<Cell> {
    refine_polys(&[&f.num, &f.den], &Polyhedron::universe(f.nvars()))
}

/// Cells on which the numerators and denominators of both functions are linear.
/// `active` is ordered `[f.num, f.den, g.num, g.den]`.
pub fn refine(f: &RatFunc, g: &RatFunc) -> Vec<Cell> {
    refine_polys(&[&f.num, &f.den, &g.num, &g.den], &Polyhedron::universe(f.nvars()))
}

/// The affine form of `f` at the cell's interior point. Valid on the whole cell
/// whenever the cell came from a refinement that includes `f`.
pub fn restrict_at_point(f: &RatFunc, c: &Cell) -> Affine {
    let i = f.num.argmax(&c.point)[0];
    let j = f.den.argmax(&c.point)[0];
    f.num.terms()[i].mono.affine().sub(&f.den.terms()[j].mono.affine())
}

/// The affine form of `f` on the cell, verified by LP to be valid on all of it.
pub fn restrict(f: &RatFunc, c: &Cell) -> Result<Affine> {
    for p in [&f.num, &f.den] {
        let lead = p.terms()[p.argmax(&c.point)[0]].mono.affine();
        for t in p.terms() {
            let gap = lead.sub(&t.mono.affine());
            match c.region.minimize(&gap) {
                LpOutcome::Optimal { value, .. } if !value.is_negative() => {}
                LpOutcome::Infeasible(_) => return Err(TropError::IncompatibleCell),
                _ => return Err(TropError::IncompatibleCell),
            }
        }
    }
    Ok(restrict_at_point(f, c))
}
