//! Principal kernels through their generators: lattice operations, membership,
//! similarity, orthogonality, boundedness and the bounded/unbounded copies.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::cellgeo::{cells_of, refine, restrict_at_point, Cell};
use crate::error::{Result, TropError};
use crate::ratlp::{lp_optimize, Affine, LpOutcome, Polyhedron, Sense};
use crate::skeletons::{skel_is_empty, skeleton};
use crate::tropexpr::{Monomial, RatFunc, TropPoly};
use crate::tropnum::{fmt_q, TropScalar, Q};

/// The principal kernel `⟨gen⟩`. Operations work with `|gen|`, which generates the
/// same kernel and is nonnegative in log scale.
#[derive(Clone, Debug)]
pub struct KernelGen {
    pub gen: RatFunc,
    pub nvars: usize,
    abs: RatFunc,
}

impl KernelGen {
    pub fn new(gen: RatFunc) -> Self {
        let nvars = gen.nvars();
        let abs = gen.abs().pruned();
        KernelGen { gen, nvars, abs }
    }

    /// Wraps a function already known to be nonnegative and pruned.
    fn from_abs(abs: RatFunc) -> Self {
        KernelGen { nvars: abs.nvars(), gen: abs.clone(), abs }
    }

    pub fn abs(&self) -> &RatFunc {
        &self.abs
    }
}

impl From<RatFunc> for KernelGen {
    fn from(f: RatFunc) -> Self {
        KernelGen::new(f)
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(TropError::DimensionMismatch { expected: a, got: b })
    }
}

/// `⟨f⟩ ∩ ⟨g⟩ = ⟨|f| ∧ |g|⟩`.
pub fn gen_meet(f: &KernelGen, g: &KernelGen) -> Result<KernelGen> {
    check_dims(f.nvars, g.nvars)?;
    Ok(KernelGen::from_abs(f.abs.meet(&g.abs).pruned()))
}

/// `⟨f⟩·⟨g⟩ = ⟨|f| ⊕ |g|⟩`.
pub fn gen_join(f: &KernelGen, g: &KernelGen) -> Result<KernelGen> {
    check_dims(f.nvars, g.nvars)?;
    Ok(KernelGen::from_abs(f.abs.add(&g.abs).pruned()))
}

/// Why `g ∉ ⟨f⟩`: either `|f|(point) = 0 < |g|(point)` (`ray` is `None`), or along
/// `point + t·ray` the function `|f|` stays constant while `|g|` grows without bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub point: Vec<Q>,
    pub ray: Option<Vec<Q>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `|g| ≤ n·|f|` everywhere.
    Yes(u64),
    No(Witness),
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes(_))
    }
}

impl Serialize for Membership {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs = |v: &[Q]| v.iter().map(fmt_q).collect::<Vec<_>>();
        let mut m = s.serialize_map(Some(2))?;
        match self {
            Membership::Yes(n) => {
                m.serialize_entry("member", &true)?;
                m.serialize_entry("n", n)?;
            }
            Membership::No(w) => {
                m.serialize_entry("member", &false)?;
                let ray = w.ray.as_deref().map(strs);
                m.serialize_entry(
                    "witness",
                    &serde_json::json!({ "point": strs(&w.point), "ray": ray }),
                )?;
            }
        }
        m.end()
    }
}

/// Subregions of `c` on which `la` and `lb` have a fixed sign, with the forms
/// oriented to be nonnegative there.
fn signed_parts(c: &Cell, la: &Affine, lb: &Affine) -> Vec<(Polyhedron, Affine, Affine)> {
    let orient = |l: &Affine| -> Vec<Affine> {
        if c.is_constant_on(l) {
            vec![if l.eval(&c.point).is_negative() { l.neg() } else { l.clone() }]
        } else {
            vec![l.clone(), l.neg()]
        }
    };
    let mut out = Vec::new();
    for a in orient(la) {
        for b in orient(lb) {
            let region = c.region.clone().with_ineq(a.clone()).with_ineq(b.clone());
            out.push((region, a.clone(), b));
        }
    }
    out
}

fn hom_form(a: &Affine) -> Affine {
    let mut g = a.grad.clone();
    g.push(a.c.clone());
    Affine::new(g, Q::zero())
}

/// Homogenizes `p` with a trailing variable `t ≥ 0`: `(y, t)` with `y/t ∈ p`, or
/// `t = 0` and `y` in the recession cone.
fn homogenize(p: &Polyhedron) -> Polyhedron {
    let n = p.nvars;
    let mut h = Polyhedron::new(
        n + 1,
        p.eqs.iter().map(hom_form).collect(),
        p.ineqs.iter().map(hom_form).collect(),
    );
    h.ineqs.push(Affine::var(n + 1, n));
    h
}

/// On `p` (where `a, b ≥ 0`): `Ok(sup b/a)` or a witness that the ratio is unbounded.
fn ratio_bound(p: &Polyhedron, a: &Affine, b: &Affine) -> std::result::Result<Q, Witness> {
    let n = p.nvars;
    let mut norm = hom_form(a);
    norm.c = -Q::one();
    let lp = homogenize(p).with_eq(norm);
    match lp_optimize(&hom_form(b), &lp, Sense::Max) {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Unbounded { point, ray } => {
            if ray[n].is_positive() {
                let x = ray[..n].iter().map(|v| v / &ray[n]).collect();
                return Err(Witness { point: x, ray: None });
            }
            let x0 = if point[n].is_positive() {
                point[..n].iter().map(|v| v / &point[n]).collect()
            } else {
                p.feasible_point().expect("an unbounded ratio needs a nonempty region")
            };
            Err(Witness { point: x0, ray: Some(ray[..n].to_vec()) })
        }
        // `a` vanishes on all of `p` (or `p` is empty): only `b ≡ 0` is allowed
        LpOutcome::Infeasible(_) => match p.maximize(b) {
            LpOutcome::Infeasible(_) => Ok(Q::zero()),
            LpOutcome::Optimal { value, point, .. } => {
                if value.is_positive() {
                    Err(Witness { point, ray: None })
                } else {
                    Ok(Q::zero())
                }
            }
            LpOutcome::Unbounded { point, ray } => {
                // move far enough along the ray for b to turn positive
                let slope = b.lin(&ray);
                let t = (-b.eval(&point) / &slope).max(Q::zero()) + Q::one();
                let x = point.iter().zip(&ray).map(|(p, r)| p + &t * r).collect();
                Err(Witness { point: x, ray: None })
            }
        },
    }
}

fn ceil_nat(q: &Q) -> u64 {
    let c = q.numer().div_ceil(q.denom());
    u64::try_from(c.max(num_bigint::BigInt::zero())).unwrap_or(u64::MAX)
}

/// Decides `g ∈ ⟨f⟩`, i.e. `|g| ≤ n·|f|` for some `n`, cell by cell on the common
/// refinement of `f` and `g`.
pub fn member(g: &RatFunc, f: &KernelGen) -> Membership {
    let g = g.pruned();
    let fg = f.gen.pruned();
    member_on(&refine(&fg, &g), &g, &fg)
}

/// Membership of `g` in `⟨f⟩` over a common refinement of both.
fn member_on(cells: &[Cell], g: &RatFunc, f: &RatFunc) -> Membership {
    let mut best = Q::zero();
    for c in cells {
        let lf = restrict_at_point(f, c);
        let lg = restrict_at_point(g, c);
        if lg.is_zero() || c.vanishes(&lg) {
            continue;
        }
        for (region, a, b) in signed_parts(c, &lf, &lg) {
            match ratio_bound(&region, &a, &b) {
                Ok(v) => best = best.max(v),
                Err(w) => return Membership::No(w),
            }
        }
    }
    Membership::Yes(ceil_nat(&best))
}

/// `f ∼ g`: each generates the other's kernel.
pub fn similar(f: &KernelGen, g: &KernelGen) -> Result<bool> {
    check_dims(f.nvars, g.nvars)?;
    let (fp, gp) = (f.gen.pruned(), g.gen.pruned());
    let cells = refine(&fp, &gp);
    Ok(member_on(&cells, &fp, &gp).is_yes() && member_on(&cells, &gp, &fp).is_yes())
}

/// `|f| ∧ |g| ≡ 𝟙`: on every common linearity cell one of the two vanishes.
pub fn orthogonal(f: &KernelGen, g: &KernelGen) -> Result<bool> {
    check_dims(f.nvars, g.nvars)?;
    let (fp, gp) = (f.gen.pruned(), g.gen.pruned());
    Ok(refine(&fp, &gp).iter().all(|c| {
        c.vanishes(&restrict_at_point(&fp, c)) || c.vanishes(&restrict_at_point(&gp, c))
    }))
}

/// The bounded copy `|f| ∧ α`, which has the same skeleton.
pub fn omega(f: &KernelGen, alpha: &TropScalar) -> Result<KernelGen> {
    if !alpha.value().is_positive() {
        return Err(TropError::InvalidInput("the bound α must be positive".into()));
    }
    let a = RatFunc::constant(f.nvars, alpha.value().clone());
    Ok(KernelGen::from_abs(f.abs.meet(&a).pruned()))
}

/// `sup |f|`, if finite.
pub fn upper_bound(f: &RatFunc) -> Option<Q> {
    let f = f.pruned();
    let mut sup = Q::zero();
    for c in cells_of(&f) {
        let l = restrict_at_point(&f, &c);
        for side in [l.clone(), l.neg()] {
            match c.region.maximize(&side) {
                LpOutcome::Optimal { value, .. } => sup = sup.max(value),
                LpOutcome::Unbounded { .. } => return None,
                LpOutcome::Infeasible(_) => {}
            }
        }
    }
    Some(sup)
}

pub fn bounded_above(f: &RatFunc) -> bool {
    upper_bound(f).is_some()
}

/// `|f| ≥ γ > 0` everywhere, equivalently an empty skeleton.
pub fn bounded_below(f: &RatFunc) -> bool {
    skel_is_empty(f)
}

/// `sup min_i |x_i|` over the skeleton of `f`, floored at zero.
fn coordinate_reach(f: &RatFunc) -> Result<Q> {
    let n = f.nvars();
    let mut beta = Q::zero();
    for piece in skeleton(f).pieces {
        for mask in 0u32..(1 << n) {
            let sign = |i: usize| if mask >> i & 1 == 1 { -Q::one() } else { Q::one() };
            let mut lp = Polyhedron::new(
                n + 1,
                piece.eqs.iter().map(|a| a.lift(1)).collect(),
                piece.ineqs.iter().map(|a| a.lift(1)).collect(),
            );
            for i in 0..n {
                let sx = Affine::var(n + 1, i).scale(&sign(i));
                let mut gap = sx.clone();
                gap.grad[n] = -Q::one();
                lp = lp.with_ineq(sx).with_ineq(gap);
            }
            match lp_optimize(&Affine::var(n + 1, n), &lp, Sense::Max) {
                LpOutcome::Optimal { value, .. } => beta = beta.max(value),
                LpOutcome::Unbounded { .. } => return Err(TropError::UnboundedSkeleton),
                LpOutcome::Infeasible(_) => {}
            }
        }
    }
    Ok(beta)
}

/// For `f` bounded above, the unbounded generator `f' = (𝟙 ⊕ β⁻¹(|x₁| ∧ … ∧ |xₙ|)) ⊕ |f|`
/// with `⟨f⟩ = ⟨f'⟩ ∩ ⟨ℍ⟩` and the same skeleton. `β` is chosen so the cutoff does
/// not reach the skeleton, which needs the skeleton to avoid escaping in every
/// coordinate at once.
pub fn unbounded_copy(f: &KernelGen) -> Result<KernelGen> {
    if !bounded_above(&f.gen) {
        return Err(TropError::NotBoundedAbove);
    }
    let n = f.nvars;
    let beta = coordinate_reach(&f.gen)?;
    let mut wedge = RatFunc::var(n, 0).abs();
    for i in 1..n {
        wedge = wedge.meet(&RatFunc::var(n, i).abs()).pruned();
    }
    let g = wedge.scale(&-beta).add(&RatFunc::one(n));
    Ok(KernelGen::from_abs(g.add(&f.abs).pruned()))
}

/// The maximal kernel of the point `a`: `⊕ᵢ |xᵢ − aᵢ|`, whose skeleton is `{a}`.
pub fn point_kernel(a: &[Q]) -> KernelGen {
    let n = a.len();
    if n == 0 {
        return KernelGen::from_abs(RatFunc::one(0));
    }
    let mut monos = Vec::with_capacity(2 * n);
    for (i, ai) in a.iter().enumerate() {
        let mut e = vec![Q::zero(); n];
        e[i] = Q::one();
        monos.push(Monomial::new(e.clone(), TropScalar::new(-ai.clone())));
        e[i] = -Q::one();
        monos.push(Monomial::new(e, TropScalar::new(ai.clone())));
    }
    let num = TropPoly::tangible_sum(n, monos);
    let f = RatFunc::new(num, TropPoly::one(n)).expect("nonempty denominator");
    KernelGen::from_abs(f)
}

#[cfg(test)]
mod tests;
