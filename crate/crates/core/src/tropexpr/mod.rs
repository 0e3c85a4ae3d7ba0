//! Laurent monomials, supertropical polynomials and tropical rational functions.

mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Result, TropError};
use crate::ratlp::{has_strict_point, Affine, Polyhedron};
use crate::tropnum::{fmt_q_short, Q, TropScalar};

pub use parse::{parse, parse_ratfunc, parse_scalar};

/// Conventional variable names used by `Display`: `x`, `y`, `z`, then `x1…xn`.
pub fn default_names(n: usize) -> Vec<String> {
    match n {
        0 => vec![],
        1..=3 => ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect(),
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

/// `coeff · x₁^e₁ ⋯ xₙ^eₙ`; in log scale the affine form `⟨e, x⟩ + coeff`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exps: Vec<Q>,
    pub coeff: TropScalar,
}

impl Monomial {
    pub fn new(exps: Vec<Q>, coeff: TropScalar) -> Self {
        Monomial { exps, coeff }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Monomial { exps: vec![Q::zero(); nvars], coeff: TropScalar::new(c) }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::zero())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = Q::one();
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|e| e.is_zero())
    }

    /// A hyperplane fraction is a non-constant Laurent monomial.
    pub fn is_hp(&self) -> bool {
        !self.is_constant()
    }

    pub fn affine(&self) -> Affine {
        Affine::new(self.exps.clone(), self.coeff.value().clone())
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.exps.iter().zip(x).map(|(e, v)| e * v).sum::<Q>() + self.coeff.value()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect(),
            coeff: self.coeff.mul(&o.coeff),
        }
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        self.mul(&o.inv())
    }

    pub fn inv(&self) -> Monomial {
        Monomial { exps: self.exps.iter().map(|e| -e).collect(), coeff: self.coeff.inv() }
    }

    pub fn pow(&self, k: &Q) -> Monomial {
        Monomial { exps: self.exps.iter().map(|e| e * k).collect(), coeff: self.coeff.pow(k) }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        if !self.coeff.is_one() || self.is_constant() {
            parts.push(self.coeff.to_string());
        }
        for (e, name) in self.exps.iter().zip(names) {
            if e.is_zero() {
                continue;
            }
            if e.is_one() {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{}", fmt_q_short(e)));
            }
        }
        parts.join("*")
    }

    fn factor_count(&self) -> usize {
        let vars = self.exps.iter().filter(|e| !e.is_zero()).count();
        vars + usize::from(!self.coeff.is_one() && vars > 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names(self.nvars())))
    }
}

/// A monomial with multiplicity; `mult == 2` marks a ghost term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub mult: u8,
}

impl Term {
    pub fn tangible(mono: Monomial) -> Self {
        Term { mono, mult: 1 }
    }

    pub fn ghost(mono: Monomial) -> Self {
        Term { mono, mult: 2 }
    }

    pub fn is_ghost(&self) -> bool {
        self.mult >= 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalResult {
    pub value: TropScalar,
    pub ghost: bool,
}

/// Supertropical polynomial, kept canonical: one term per exponent vector, ordered
/// by exponent vector descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropPoly {
    nvars: usize,
    terms: Vec<Term>,
}

// Max coefficient wins; equal maxima from two tangible copies, or any ghost at the
// maximum, yield a ghost.
fn merge_super(acc: &mut BTreeMap<Vec<Q>, (TropScalar, u8)>, t: Term) {
    match acc.get_mut(&t.mono.exps) {
        None => {
            acc.insert(t.mono.exps, (t.mono.coeff, t.mult.min(2)));
        }
        Some((c, m)) => {
            if t.mono.coeff > *c {
                *c = t.mono.coeff;
                *m = t.mult.min(2);
            } else if t.mono.coeff == *c {
                *m = 2;
            }
        }
    }
}

fn merge_tangible(acc: &mut BTreeMap<Vec<Q>, TropScalar>, m: Monomial) {
    match acc.get_mut(&m.exps) {
        None => {
            acc.insert(m.exps, m.coeff);
        }
        Some(c) => {
            if m.coeff > *c {
                *c = m.coeff;
            }
        }
    }
}

impl TropPoly {
    /// Builds and normalizes. Panics on an empty term list or inconsistent arity.
    pub fn new(nvars: usize, terms: Vec<Term>) -> Self {
        assert!(!terms.is_empty(), "a tropical polynomial needs at least one term");
        assert!(terms.iter().all(|t| t.mono.nvars() == nvars), "arity mismatch");
        let mut acc = BTreeMap::new();
        for t in terms {
            merge_super(&mut acc, t);
        }
        TropPoly {
            nvars,
            terms: acc
                .into_iter()
                .rev()
                .map(|(exps, (coeff, mult))| Term { mono: Monomial { exps, coeff }, mult })
                .collect(),
        }
    }

    pub fn from_monomials(nvars: usize, monos: Vec<Monomial>) -> Self {
        Self::new(nvars, monos.into_iter().map(Term::tangible).collect())
    }

    /// Tangible sum: duplicate exponent vectors keep the larger coefficient.
    pub fn tangible_sum(nvars: usize, monos: impl IntoIterator<Item = Monomial>) -> Self {
        let mut acc = BTreeMap::new();
        for m in monos {
            merge_tangible(&mut acc, m);
        }
        assert!(!acc.is_empty(), "a tropical polynomial needs at least one term");
        TropPoly {
            nvars,
            terms: acc
                .into_iter()
                .rev()
                .map(|(exps, coeff)| Term::tangible(Monomial { exps, coeff }))
                .collect(),
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        TropPoly { nvars: m.nvars(), terms: vec![Term::tangible(m)] }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(Monomial::one(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|t| &t.mono)
    }

    pub fn is_tangible(&self) -> bool {
        self.terms.iter().all(|t| !t.is_ghost())
    }

    /// Forgets ghost marks; the function is unchanged.
    pub fn tangible(&self) -> TropPoly {
        TropPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|t| Term::tangible(t.mono.clone())).collect(),
        }
    }

    /// Log-scale value `max_i L_i(x)`.
    pub fn max_at(&self, x: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|t| t.mono.eval(x))
            .max()
            .expect("nonempty polynomial")
    }

    /// Indices of the terms attaining the maximum at `x`.
    pub fn argmax(&self, x: &[Q]) -> Vec<usize> {
        let vals: Vec<Q> = self.terms.iter().map(|t| t.mono.eval(x)).collect();
        let m = vals.iter().max().expect("nonempty polynomial");
        (0..vals.len()).filter(|&i| vals[i] == *m).collect()
    }

    pub fn evaluate(&self, x: &[Q]) -> Result<EvalResult> {
        if x.len() != self.nvars {
            return Err(TropError::DimensionMismatch { expected: self.nvars, got: x.len() });
        }
        let arg = self.argmax(x);
        let ghost = arg.len() >= 2 || self.terms[arg[0]].is_ghost();
        Ok(EvalResult { value: TropScalar::new(self.terms[arg[0]].mono.eval(x)), ghost })
    }

    pub fn to_affine_forms(&self) -> Vec<(Affine, u8)> {
        self.terms.iter().map(|t| (t.mono.affine(), t.mult)).collect()
    }

    pub fn forms(&self) -> Vec<Affine> {
        self.terms.iter().map(|t| t.mono.affine()).collect()
    }

    /// Supertropical sum.
    pub fn add(&self, o: &TropPoly) -> TropPoly {
        TropPoly::new(self.nvars, self.terms.iter().chain(&o.terms).cloned().collect())
    }

    /// Supertropical product: ghosts are absorbing and coinciding products become ghosts.
    pub fn mul(&self, o: &TropPoly) -> TropPoly {
        let mut terms = Vec::with_capacity(self.len() * o.len());
        for a in &self.terms {
            for b in &o.terms {
                terms.push(Term { mono: a.mono.mul(&b.mono), mult: a.mult.max(b.mult) });
            }
        }
        TropPoly::new(self.nvars, terms)
    }

    pub fn pow(&self, k: u32) -> TropPoly {
        let mut acc = TropPoly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Tangible sum of the underlying functions.
    pub fn tadd(&self, o: &TropPoly) -> TropPoly {
        TropPoly::tangible_sum(self.nvars, self.monomials().chain(o.monomials()).cloned())
    }

    /// Tangible product of the underlying functions.
    pub fn tmul(&self, o: &TropPoly) -> TropPoly {
        TropPoly::tangible_sum(
            self.nvars,
            self.monomials().flat_map(|a| o.monomials().map(move |b| a.mul(b))),
        )
    }

    pub fn tpow(&self, k: u32) -> TropPoly {
        if self.len() == 1 {
            return TropPoly::monomial(self.terms[0].mono.pow(&Q::from_integer(k.into())));
        }
        let mut acc = TropPoly::one(self.nvars);
        for _ in 0..k {
            acc = acc.tmul(self);
        }
        acc
    }

    pub fn scale(&self, c: &Q) -> TropPoly {
        TropPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: Monomial { exps: t.mono.exps.clone(), coeff: TropScalar::new(t.mono.coeff.value() + c) },
                    mult: t.mult,
                })
                .collect(),
        }
    }

    /// Indices of terms whose dominance cell is full-dimensional. The remaining
    /// terms only ever attain the maximum on ties with live terms, so dropping them
    /// changes neither values nor tie loci.
    pub fn live_indices(&self) -> Vec<usize> {
        if self.len() == 1 {
            return vec![0];
        }
        let forms = self.forms();
        let mut live = vec![false; forms.len()];
        for x in sample_points(self.nvars) {
            let arg = self.argmax(&x);
            if arg.len() == 1 {
                live[arg[0]] = true;
            }
        }
        let universe = Polyhedron::universe(self.nvars);
        for i in 0..forms.len() {
            if live[i] {
                continue;
            }
            let strict: Vec<Affine> = (0..forms.len())
                .filter(|&j| j != i)
                .map(|j| forms[i].sub(&forms[j]))
                .collect();
            live[i] = has_strict_point(&universe, &strict).is_some();
        }
        (0..forms.len()).filter(|&i| live[i]).collect()
    }

    pub fn select(&self, idx: &[usize]) -> TropPoly {
        TropPoly { nvars: self.nvars, terms: idx.iter().map(|&i| self.terms[i].clone()).collect() }
    }

    pub fn without(&self, i: usize) -> TropPoly {
        let mut t = self.terms.clone();
        t.remove(i);
        TropPoly { nvars: self.nvars, terms: t }
    }

    pub fn pruned(&self) -> TropPoly {
        self.select(&self.live_indices())
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for t in &self.terms {
            let s = t.mono.fmt_with(names);
            if t.is_ghost() {
                parts.push(s.clone());
            }
            parts.push(s);
        }
        parts.join(" + ")
    }

    fn needs_parens(&self) -> bool {
        self.len() > 1 || self.terms[0].is_ghost()
    }
}

fn sample_points(n: usize) -> Vec<Vec<Q>> {
    let axis: Vec<i64> = if n <= 3 { vec![-3, -1, 0, 1, 3] } else { vec![-1, 0, 1] };
    let mut pts: Vec<Vec<Q>> = vec![vec![]];
    for _ in 0..n {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&a| {
                    let mut v = p.clone();
                    v.push(Q::from_integer(a.into()));
                    v
                })
            })
            .collect();
    }
    pts
}

impl fmt::Display for TropPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names(self.nvars)))
    }
}

/// Quotient `num / den` of tangible polynomials; evaluates to `num(x) − den(x)`.
/// The presentation is kept as given: no monomial cancellation happens here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    pub num: TropPoly,
    pub den: TropPoly,
}

impl RatFunc {
    pub fn new(num: TropPoly, den: TropPoly) -> Result<Self> {
        if den.is_empty() || num.is_empty() {
            return Err(TropError::EmptyDenominator);
        }
        if num.nvars() != den.nvars() {
            return Err(TropError::DimensionMismatch { expected: num.nvars(), got: den.nvars() });
        }
        Ok(RatFunc { num: num.tangible(), den: den.tangible() })
    }

    fn raw(num: TropPoly, den: TropPoly) -> Self {
        RatFunc { num, den }
    }

    pub fn from_poly(p: &TropPoly) -> Self {
        RatFunc::raw(p.tangible(), TropPoly::one(p.nvars()))
    }

    pub fn monomial(m: Monomial) -> Self {
        let n = m.nvars();
        RatFunc::raw(TropPoly::monomial(m), TropPoly::one(n))
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        RatFunc::monomial(Monomial::constant(nvars, c))
    }

    /// The identity 𝟙.
    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::zero())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        RatFunc::monomial(Monomial::var(nvars, i))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.num.max_at(x) - self.den.max_at(x)
    }

    pub fn evaluate(&self, x: &[Q]) -> Result<EvalResult> {
        if x.len() != self.nvars() {
            return Err(TropError::DimensionMismatch { expected: self.nvars(), got: x.len() });
        }
        Ok(EvalResult { value: TropScalar::new(self.eval(x)), ghost: false })
    }

    /// `a/b ⊕ c/d = (ad ⊕ cb)/(bd)`.
    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::raw(
            self.num.tmul(&o.den).tadd(&o.num.tmul(&self.den)),
            self.den.tmul(&o.den),
        )
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::raw(self.num.tmul(&o.num), self.den.tmul(&o.den))
    }

    pub fn div(&self, o: &RatFunc) -> RatFunc {
        RatFunc::raw(self.num.tmul(&o.den), self.den.tmul(&o.num))
    }

    pub fn inv(&self) -> RatFunc {
        RatFunc::raw(self.den.clone(), self.num.clone())
    }

    /// `|a/b| = (a² ⊕ b²)/(ab)`.
    pub fn abs(&self) -> RatFunc {
        RatFunc::raw(
            self.num.tpow(2).tadd(&self.den.tpow(2)),
            self.num.tmul(&self.den),
        )
    }

    /// `a/b ∧ c/d = ac/(ad ⊕ bc)`.
    pub fn meet(&self, o: &RatFunc) -> RatFunc {
        RatFunc::raw(
            self.num.tmul(&o.num),
            self.num.tmul(&o.den).tadd(&self.den.tmul(&o.num)),
        )
    }

    pub fn pow(&self, k: i64) -> RatFunc {
        let e = k.unsigned_abs() as u32;
        let p = RatFunc::raw(self.num.tpow(e), self.den.tpow(e));
        if k < 0 {
            p.inv()
        } else {
            p
        }
    }

    /// Tropical multiplication by the constant `c`.
    pub fn scale(&self, c: &Q) -> RatFunc {
        RatFunc::raw(self.num.scale(c), self.den.clone())
    }

    /// When both sides are single monomials, their quotient.
    pub fn as_monomial(&self) -> Option<Monomial> {
        (self.num.len() == 1 && self.den.len() == 1)
            .then(|| self.num.terms()[0].mono.div(&self.den.terms()[0].mono))
    }

    /// Drops monomials that never strictly attain their side's maximum, and writes a
    /// quotient of two monomials as a single monomial over 𝟙. The function is unchanged.
    pub fn pruned(&self) -> RatFunc {
        let f = RatFunc::raw(self.num.pruned(), self.den.pruned());
        match f.as_monomial() {
            Some(m) => RatFunc::monomial(m),
            None => f,
        }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let n = self.num.fmt_with(names);
        let d = self.den.fmt_with(names);
        let n = if self.num.needs_parens() { format!("({n})") } else { n };
        let d = if self.den.needs_parens() || self.den.terms()[0].mono.factor_count() > 1 {
            format!("({d})")
        } else {
            d
        };
        format!("{n}/{d}")
    }

    /// Whether the function is identically 𝟙 on the whole space.
    pub fn is_identically_one(&self) -> bool {
        let p = self.pruned();
        match p.as_monomial() {
            Some(m) => m.is_constant() && m.coeff.is_one(),
            None => false,
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names(self.nvars())))
    }
}

/// Result of parsing: a supertropical polynomial when the text uses only `+`, `*`
/// and `^`, otherwise a rational function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Poly(TropPoly),
    Frac(RatFunc),
}

impl Expr {
    pub fn nvars(&self) -> usize {
        match self {
            Expr::Poly(p) => p.nvars(),
            Expr::Frac(f) => f.nvars(),
        }
    }

    pub fn evaluate(&self, x: &[Q]) -> Result<EvalResult> {
        match self {
            Expr::Poly(p) => p.evaluate(x),
            Expr::Frac(f) => f.evaluate(x),
        }
    }

    /// The rational function (tangible) view; a polynomial `p` becomes `p/𝟙`.
    pub fn to_ratfunc(&self) -> RatFunc {
        match self {
            Expr::Poly(p) => RatFunc::from_poly(p),
            Expr::Frac(f) => f.clone(),
        }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        match self {
            Expr::Poly(p) => p.fmt_with(names),
            Expr::Frac(f) => f.fmt_with(names),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names(self.nvars())))
    }
}
