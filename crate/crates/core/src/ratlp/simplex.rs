//! Two-phase dense tableau simplex for `min bᵀy  s.t.  M y = o, y ≥ 0`.
//!
//! The public LP entry point feeds this the dual of the user's problem, so the
//! tableau has one row per variable of the original problem rather than one per
//! constraint. That keeps pivots cheap in the low-dimensional regime we live in.

use std::sync::OnceLock;

use super::fastq::R;
use crate::tropnum::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pivot {
    Bland,
    Dantzig,
}

fn pivot_rule() -> Pivot {
    static RULE: OnceLock<Pivot> = OnceLock::new();
    *RULE.get_or_init(|| match std::env::var("TROP_LP_PIVOT").as_deref() {
        Ok("dantzig") => Pivot::Dantzig,
        _ => Pivot::Bland,
    })
}

// Dantzig can cycle on degenerate problems; after this many degenerate pivots in
// a row we fall back to Bland, which cannot.
const DEGENERATE_LIMIT: usize = 50;

#[derive(Debug)]
pub enum StdOutcome {
    /// `y` is optimal; `pi` solves the dual (multipliers per row).
    Optimal { y: Vec<Q>, pi: Vec<Q> },
    /// `ray ≥ 0`, `M ray = 0`, `bᵀ ray < 0`.
    Unbounded { ray: Vec<Q> },
    /// No feasible `y`; `pi` satisfies `piᵀM ≤ 0` and `piᵀo > 0`.
    Infeasible { pi: Vec<Q> },
}

struct Tableau {
    t: Vec<Vec<R>>,
    rhs: Vec<R>,
    cost: Vec<R>,
    // minus the current objective value
    z: R,
    basis: Vec<usize>,
}

fn axpy(row: &mut [R], f: &R, src: &[R]) {
    for (x, y) in row.iter_mut().zip(src) {
        if !y.is_zero() {
            *x = x.sub(&f.mul(y));
        }
    }
}

impl Tableau {
    fn pivot(&mut self, p: usize, e: usize) {
        let inv = self.t[p][e].recip();
        for x in self.t[p].iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        self.rhs[p] = self.rhs[p].mul(&inv);
        let prow = std::mem::take(&mut self.t[p]);
        let prhs = self.rhs[p].clone();
        for i in 0..self.t.len() {
            if i == p || self.t[i][e].is_zero() {
                continue;
            }
            let f = self.t[i][e].clone();
            axpy(&mut self.t[i], &f, &prow);
            self.rhs[i] = self.rhs[i].sub(&f.mul(&prhs));
        }
        if !self.cost[e].is_zero() {
            let f = self.cost[e].clone();
            axpy(&mut self.cost, &f, &prow);
            self.z = self.z.sub(&f.mul(&prhs));
        }
        self.t[p] = prow;
        self.basis[p] = e;
    }

    fn set_costs(&mut self, c: &[R]) {
        self.cost = c.to_vec();
        self.z = R::ZERO;
        for (i, &b) in self.basis.iter().enumerate() {
            if c[b].is_zero() {
                continue;
            }
            axpy(&mut self.cost, &c[b], &self.t[i]);
            self.z = self.z.sub(&c[b].mul(&self.rhs[i]));
        }
    }

    /// Runs to optimality over columns `< allowed`. Returns the entering column on unboundedness.
    fn run(&mut self, allowed: usize) -> Result<(), usize> {
        let mut rule = pivot_rule();
        let mut degenerate = 0;
        loop {
            let entering = match rule {
                Pivot::Bland => (0..allowed).find(|&j| self.cost[j].is_negative()),
                Pivot::Dantzig => (0..allowed)
                    .filter(|&j| self.cost[j].is_negative())
                    .min_by(|&a, &b| self.cost[a].cmp(&self.cost[b])),
            };
            let Some(e) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, R)> = None;
            for i in 0..self.t.len() {
                if !self.t[i][e].is_positive() {
                    continue;
                }
                let ratio = self.rhs[i].div(&self.t[i][e]);
                let better = match &leave {
                    None => true,
                    Some((l, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((p, ratio)) = leave else {
                return Err(e);
            };
            if ratio.is_zero() {
                degenerate += 1;
                if degenerate > DEGENERATE_LIMIT {
                    rule = Pivot::Bland;
                }
            } else {
                degenerate = 0;
            }
            self.pivot(p, e);
        }
    }
}

/// `cols[j]` is column `j` of `M` (length `o.len()`).
pub fn solve(cols: &[Vec<R>], b: &[R], o: &[R]) -> StdOutcome {
    let d = o.len();
    let m = cols.len();
    let sign: Vec<bool> = o.iter().map(|x| x.is_negative()).collect();
    let mut t = vec![vec![R::ZERO; m + d]; d];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..d {
            t[i][j] = if sign[i] { col[i].neg() } else { col[i].clone() };
        }
    }
    for (i, row) in t.iter_mut().enumerate() {
        row[m + i] = R::ONE;
    }
    let rhs: Vec<R> = o.iter().map(|x| x.abs()).collect();
    let mut tab = Tableau { t, rhs, cost: Vec::new(), z: R::ZERO, basis: (m..m + d).collect() };

    let mut c1 = vec![R::ZERO; m + d];
    for c in c1.iter_mut().skip(m) {
        *c = R::ONE;
    }
    tab.set_costs(&c1);
    tab.run(m + d).expect("phase one is bounded below");
    let unflip = |v: R, i: usize| if sign[i] { v.neg() } else { v };
    if tab.z.is_negative() {
        let pi = (0..d).map(|i| unflip(R::ONE.sub(&tab.cost[m + i]), i).to_q()).collect();
        return StdOutcome::Infeasible { pi };
    }

    // Drive artificials out of the basis; rows where that is impossible are redundant
    // and keep their artificial at level zero for the rest of the solve.
    for i in 0..d {
        if tab.basis[i] >= m {
            if let Some(j) = (0..m).find(|&j| !tab.t[i][j].is_zero()) {
                tab.pivot(i, j);
            }
        }
    }

    let mut c2 = vec![R::ZERO; m + d];
    c2[..m].clone_from_slice(b);
    tab.set_costs(&c2);
    if let Err(e) = tab.run(m) {
        let mut ray = vec![R::ZERO; m];
        ray[e] = R::ONE;
        for (i, &bv) in tab.basis.iter().enumerate() {
            if bv < m {
                ray[bv] = tab.t[i][e].neg();
            }
        }
        return StdOutcome::Unbounded { ray: ray.iter().map(R::to_q).collect() };
    }
    let mut y = vec![Q::default(); m];
    for (i, &bv) in tab.basis.iter().enumerate() {
        if bv < m {
            y[bv] = tab.rhs[i].to_q();
        }
    }
    let pi = (0..d).map(|i| unflip(tab.cost[m + i].neg(), i).to_q()).collect();
    StdOutcome::Optimal { y, pi }
}
