//! HO-decompositions: a principal kernel as an intersection of HS×region pieces,
//! one per tie pattern on the skeleton, plus bounded parts away from it.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::cellgeo::{cells_of, restrict_at_point};
use crate::cornerint::essential_form;
use crate::error::{Result, TropError};
use crate::kernelalg::{similar, KernelGen};
use crate::ratlp::linalg::{greedy_basis, rank, rref};
use crate::ratlp::{relint, Affine, LpOutcome, Polyhedron};
use crate::skeletons::{vanishes_on, SkelSet};
use crate::tropexpr::{Monomial, RatFunc, TropPoly};
use crate::tropnum::{fmt_q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoComponent {
    /// HP-fractions that vanish on the piece (a rank basis of the ties).
    pub hs_gens: Vec<Monomial>,
    /// `g` stands for the order fraction `𝟙 ⊕ g`, i.e. the half-space `g ≤ 0`.
    pub order_gens: Vec<Monomial>,
    pub bounded: bool,
    /// `None` for bounded components.
    pub piece: Option<Polyhedron>,
    /// Bounded components: the quotient monomial on the cells and `min |f|` there.
    pub quotient: Option<Monomial>,
    pub gamma: Option<Q>,
}

fn mono_of(a: &Affine) -> Monomial {
    Monomial::new(a.grad.clone(), crate::tropnum::TropScalar::new(a.c.clone()))
}

fn homog(a: &Affine) -> Vec<Q> {
    let mut v = a.grad.clone();
    v.push(a.c.clone());
    v
}

/// Tie pattern: maximal numerator and denominator monomials at a point.
type Pattern = (Vec<usize>, Vec<usize>);

struct Decomposer {
    n: usize,
    hf: Vec<Affine>,
    gf: Vec<Affine>,
}

impl Decomposer {
    fn pattern_at(&self, x: &[Q]) -> Pattern {
        let top = |fs: &[Affine]| {
            let vals: Vec<Q> = fs.iter().map(|a| a.eval(x)).collect();
            let m = vals.iter().max().unwrap().clone();
            (0..fs.len()).filter(|&i| vals[i] == m).collect::<Vec<_>>()
        };
        (top(&self.hf), top(&self.gf))
    }

    /// Closed face where at least the monomials of `p` tie and `f = 𝟙`.
    fn face(&self, (h, g): &Pattern) -> Polyhedron {
        let (i0, j0) = (h[0], g[0]);
        let mut eqs = vec![self.hf[i0].sub(&self.gf[j0])];
        eqs.extend(h[1..].iter().map(|&i| self.hf[i].sub(&self.hf[i0])));
        eqs.extend(g[1..].iter().map(|&j| self.gf[j].sub(&self.gf[j0])));
        let mut ineqs: Vec<Affine> = (0..self.hf.len())
            .filter(|k| !h.contains(k))
            .map(|k| self.hf[i0].sub(&self.hf[k]))
            .collect();
        ineqs.extend((0..self.gf.len()).filter(|l| !g.contains(l)).map(|l| self.gf[j0].sub(&self.gf[l])));
        Polyhedron::new(self.n, eqs, ineqs)
    }

    fn component(&self, p: &Pattern) -> HoComponent {
        let (h, g) = p;
        let ties: Vec<Affine> = h
            .iter()
            .flat_map(|&i| g.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.hf[i].sub(&self.gf[j]))
            .filter(|a| !a.is_constant())
            .collect();
        let rows: Vec<Vec<Q>> = ties.iter().map(homog).collect();
        let hs: Vec<Affine> = greedy_basis(&rows).into_iter().map(|k| ties[k].clone()).collect();
        let mut orders: Vec<Affine> = (0..self.hf.len())
            .filter(|k| !h.contains(k))
            .map(|k| self.hf[k].sub(&self.hf[h[0]]))
            .chain((0..self.gf.len()).filter(|l| !g.contains(l)).map(|l| self.gf[l].sub(&self.gf[g[0]])))
            .collect();
        let base = Polyhedron::new(self.n, hs.clone(), Vec::new());
        // drop half-spaces implied by the remaining ones on the affine span
        let mut k = 0;
        while k < orders.len() {
            let mut rest = base.clone();
            rest.ineqs = orders.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, o)| o.neg()).collect();
            let implied = matches!(rest.maximize(&orders[k]), LpOutcome::Optimal { value, .. } if !value.is_positive());
            if implied {
                orders.remove(k);
            } else {
                k += 1;
            }
        }
        let piece = Polyhedron::new(self.n, hs.clone(), orders.iter().map(Affine::neg).collect());
        HoComponent {
            hs_gens: hs.iter().map(mono_of).collect(),
            order_gens: orders.iter().map(mono_of).collect(),
            bounded: false,
            piece: Some(piece),
            quotient: None,
            gamma: None,
        }
    }
}

/// Merge key: the row-reduced span of the HS part, and the order half-spaces
/// reduced modulo that span.
fn dedup_key(c: &HoComponent, n: usize) -> (Vec<Vec<Q>>, BTreeSet<Vec<Q>>) {
    let rows: Vec<Vec<Q>> = c.hs_gens.iter().map(|m| homog(&m.affine())).collect();
    let (span, pivots) = rref(&rows, n + 1);
    let span: Vec<Vec<Q>> = span.into_iter().take(pivots.len()).collect();
    let orders = c
        .order_gens
        .iter()
        .map(|m| {
            let mut v = homog(&m.affine());
            for (row, &p) in span.iter().zip(&pivots) {
                if !v[p].is_zero() {
                    let f = v[p].clone();
                    for (x, r) in v.iter_mut().zip(row) {
                        *x -= &f * r;
                    }
                }
            }
            // scale so the key ignores positive multiples
            let lead = v.iter().find(|x| !x.is_zero()).map(|x| x.abs());
            if let Some(l) = lead {
                v.iter_mut().for_each(|x| *x /= &l);
            }
            v
        })
        .collect();
    (span, orders)
}

/// Components of `⟨f⟩`: unbounded ones in discovery order (skeleton pieces first,
/// then their faces), followed by bounded ones.
pub fn ho_decompose(f: &RatFunc) -> Vec<HoComponent> {
    let f = f.pruned();
    let n = f.nvars();
    let d = Decomposer { n, hf: f.num.forms(), gf: f.den.forms() };

    let mut seen: BTreeSet<Pattern> = BTreeSet::new();
    let mut queue: VecDeque<Pattern> = VecDeque::new();
    for i in 0..d.hf.len() {
        for j in 0..d.gf.len() {
            if let Some(h) = relint(&d.face(&(vec![i], vec![j]))) {
                let p = d.pattern_at(&h.point);
                if seen.insert(p.clone()) {
                    queue.push_back(p);
                }
            }
        }
    }
    let mut order = Vec::new();
    while let Some(p) = queue.pop_front() {
        let (h, g) = &p;
        let grow = (0..d.hf.len())
            .filter(|k| !h.contains(k))
            .map(|k| {
                let mut h2 = h.clone();
                h2.push(k);
                h2.sort();
                (h2, g.clone())
            })
            .chain((0..d.gf.len()).filter(|l| !g.contains(l)).map(|l| {
                let mut g2 = g.clone();
                g2.push(l);
                g2.sort();
                (h.clone(), g2)
            }));
        for q in grow {
            if let Some(hull) = relint(&d.face(&q)) {
                let r = d.pattern_at(&hull.point);
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        order.push(p);
    }

    let mut comps: Vec<HoComponent> = Vec::new();
    let mut keys = Vec::new();
    for p in &order {
        let c = d.component(p);
        let key = dedup_key(&c, n);
        if !keys.contains(&key) {
            keys.push(key);
            comps.push(c);
        }
    }
    comps.extend(bounded_components(&f));
    comps
}

/// Cells whose quotient monomial never reaches `𝟙`, grouped by that monomial.
fn bounded_components(f: &RatFunc) -> Vec<HoComponent> {
    let mut out: Vec<HoComponent> = Vec::new();
    for c in cells_of(f) {
        let l = restrict_at_point(f, &c);
        if !c.region.clone().with_eq(l.clone()).is_empty() {
            continue;
        }
        let oriented = if l.eval(&c.point).is_positive() { l.clone() } else { l.neg() };
        let LpOutcome::Optimal { value, .. } = c.region.minimize(&oriented) else {
            unreachable!("a sign-definite form is bounded on its side");
        };
        let q = mono_of(&l);
        match out.iter_mut().find(|b| b.quotient.as_ref() == Some(&q)) {
            Some(b) => {
                let g = b.gamma.as_mut().unwrap();
                if value < *g {
                    *g = value;
                }
            }
            None => out.push(HoComponent {
                hs_gens: Vec::new(),
                order_gens: Vec::new(),
                bounded: true,
                piece: None,
                quotient: Some(q),
                gamma: Some(value),
            }),
        }
    }
    out
}

/// An irregular kernel has a piece of its skeleton with no HS part, i.e. a
/// full region on which numerator and denominator agree.
pub fn is_regular_via_decomp(comps: &[HoComponent]) -> bool {
    !comps.iter().any(|c| !c.bounded && c.hs_gens.is_empty())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Hp,
    Hs,
    Order,
    Region,
    Ho,
    General,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Hp => "HP",
            Classification::Hs => "HS",
            Classification::Order => "order",
            Classification::Region => "region",
            Classification::Ho => "HO",
            Classification::General => "general",
        }
    }
}

fn abs_sum(n: usize, fs: impl IntoIterator<Item = RatFunc>) -> RatFunc {
    fs.into_iter().fold(RatFunc::one(n), |acc, f| acc.add(&f.abs())).pruned()
}

fn order_frac(m: &Monomial) -> RatFunc {
    let n = m.nvars();
    RatFunc::from_poly(&TropPoly::tangible_sum(n, [Monomial::one(n), m.clone()]))
}

/// The HP / HS / order / region / HO type of `⟨f⟩`, if it has one.
pub fn classify(f: &RatFunc) -> Classification {
    let p = f.pruned();
    // the essential form keeps the skeleton but need not keep the kernel
    let e = essential_form(&p);
    let e = if e == p || similar(&KernelGen::new(e.clone()), &KernelGen::new(p.clone())).unwrap_or(false) {
        e
    } else {
        p
    };
    let n = e.nvars();
    if let Some(m) = e.as_monomial() {
        return if m.is_hp() { Classification::Hp } else { Classification::General };
    }
    // syntactic order fraction 𝟙 ⊕ m
    if e.den.len() == 1 && e.den.terms()[0].mono.is_constant() && e.num.len() == 2 && e.num.is_tangible() {
        let d = &e.den.terms()[0].mono;
        let ms: Vec<Monomial> = e.num.monomials().map(|m| m.div(d)).collect();
        if ms.iter().any(|m| m.is_constant() && m.coeff.value().is_zero()) && ms.iter().any(|m| m.is_hp()) {
            return Classification::Order;
        }
    }
    let comps = ho_decompose(&e);
    if comps.iter().any(|c| c.bounded) {
        return Classification::General;
    }
    let maximal = maximal_components(&comps, n);
    let [c] = maximal.as_slice() else {
        return Classification::General;
    };
    let class = match (c.hs_gens.is_empty(), c.order_gens.len()) {
        (false, 0) => Classification::Hs,
        (true, 0) => return Classification::General,
        (true, 1) => Classification::Order,
        (true, _) => Classification::Region,
        (false, _) => Classification::Ho,
    };
    match similar(&KernelGen::new(e), &KernelGen::new(component_gen(c, n))) {
        Ok(true) => class,
        _ => Classification::General,
    }
}

/// Unbounded components whose piece lies in no other component's piece.
pub fn maximal_components(comps: &[HoComponent], nvars: usize) -> Vec<&HoComponent> {
    let unb: Vec<&HoComponent> = comps.iter().filter(|c| !c.bounded).collect();
    let gens: Vec<RatFunc> = unb.iter().map(|c| component_gen(c, nvars)).collect();
    let within = |i: usize, j: usize| {
        let piece = unb[i].piece.as_ref().expect("unbounded components have pieces");
        vanishes_on(&gens[j], piece)
    };
    (0..unb.len())
        .filter(|&i| !(0..unb.len()).any(|j| j != i && within(i, j) && !(within(j, i) && j > i)))
        .map(|i| unb[i])
        .collect()
}

/// Rank of the exponent matrix of a family of HP-fractions.
pub fn condeg(gens: &[Monomial]) -> Result<usize> {
    if let Some(m) = gens.iter().find(|m| !m.is_hp()) {
        return Err(TropError::NotHp(m.to_string()));
    }
    Ok(rank(&gens.iter().map(|m| m.exps.clone()).collect::<Vec<_>>()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HdimReport {
    pub nvars: usize,
    pub condegs: Vec<usize>,
    pub codims: Vec<usize>,
}

pub fn hyperdim_of(comps: &[HoComponent], nvars: usize) -> HdimReport {
    let condegs: Vec<usize> = comps
        .iter()
        .filter(|c| !c.bounded)
        .map(|c| condeg(&c.hs_gens).expect("hs generators are HP-fractions"))
        .collect();
    let codims = condegs.iter().map(|d| nvars - d).collect();
    HdimReport { nvars, condegs, codims }
}

pub fn hyperdim(f: &RatFunc) -> HdimReport {
    hyperdim_of(&ho_decompose(f), f.nvars())
}

/// ℛ-convex dependence of HP-fractions: the gradient of `f` lies in the span of
/// those of `s`.
pub fn convexly_dependent(f: &Monomial, s: &[Monomial]) -> bool {
    let mut rows: Vec<Vec<Q>> = s.iter().map(|m| m.exps.clone()).collect();
    let r = rank(&rows);
    rows.push(f.exps.clone());
    rank(&rows) == r
}

/// A strictly descending chain `⟨b₁,…,b_r⟩ ⊃ … ⊃ ⟨b₁⟩ ⊃ ⟨𝟙⟩` from a greedy basis of
/// `gens`; `r + 1` entries, the last one empty.
pub fn hs_chain(gens: &[Monomial]) -> Result<Vec<Vec<Monomial>>> {
    condeg(gens)?;
    let Some(n) = gens.first().map(Monomial::nvars) else {
        return Ok(vec![Vec::new()]);
    };
    let common = Polyhedron::new(n, gens.iter().map(Monomial::affine).collect(), Vec::new());
    if common.is_empty() {
        return Err(TropError::EmptySkeleton);
    }
    let rows: Vec<Vec<Q>> = gens.iter().map(|m| m.exps.clone()).collect();
    let basis: Vec<Monomial> = greedy_basis(&rows).into_iter().map(|i| gens[i].clone()).collect();
    Ok((0..=basis.len()).rev().map(|k| basis[..k].to_vec()).collect())
}

pub fn component_json(c: &HoComponent, names: &[String]) -> Value {
    let fm = |ms: &[Monomial]| ms.iter().map(|m| m.fmt_with(names)).collect::<Vec<_>>();
    let mut v = json!({
        "hs": fm(&c.hs_gens),
        "orders": fm(&c.order_gens),
        "bounded": c.bounded,
        "condeg": condeg(&c.hs_gens).unwrap_or(0),
    });
    if let (Some(q), Some(g)) = (&c.quotient, &c.gamma) {
        v["quotient"] = json!(q.fmt_with(names));
        v["gamma"] = json!(fmt_q(g));
    }
    v
}

pub fn decomposition_json(comps: &[HoComponent], nvars: usize, names: &[String]) -> Value {
    json!({
        "components": comps.iter().map(|c| component_json(c, names)).collect::<Vec<_>>(),
        "hdim": hyperdim_of(comps, nvars).condegs,
    })
}

/// `⊕|hs| ⊕ ⊕(𝟙 ⊕ o)`: a generator of an unbounded component, whose skeleton is its piece.
pub fn component_gen(c: &HoComponent, nvars: usize) -> RatFunc {
    let hs = abs_sum(nvars, c.hs_gens.iter().cloned().map(RatFunc::monomial));
    hs.add(&abs_sum(nvars, c.order_gens.iter().map(order_frac))).pruned()
}

/// Union of the unbounded pieces, each defined by its component generator.
pub fn pieces_union(comps: &[HoComponent], nvars: usize) -> SkelSet {
    let unb = comps.iter().filter(|c| !c.bounded);
    SkelSet {
        nvars,
        pieces: unb.clone().filter_map(|c| c.piece.clone()).collect(),
        definers: unb.map(|c| component_gen(c, nvars)).collect(),
    }
}
