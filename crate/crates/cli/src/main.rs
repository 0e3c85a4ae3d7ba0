mod corpus;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use trop_core::cornerint::{ci_closure, essential_form, is_corner_integral, is_regular};
use trop_core::hodecomp::{decomposition_json, ho_decompose, hs_chain, hyperdim, pieces_union};
use trop_core::kernelalg::{member, orthogonal, similar};
use trop_core::skeletons::{corner_locus, skeleton, thicken};
use trop_core::tropnum::{fmt_q, parse_q};
use trop_core::{parse, Expr, KernelGen, Monomial, RatFunc, SkelSet, TropError};

use svg::Viewport;

#[derive(Parser, Debug)]
#[command(name = "trop", version, about = "Exact tropical algebra from the command line")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Expression; repeat for commands taking several.
    #[arg(short = 'e', long = "expr")]
    exprs: Vec<String>,
    /// Comma-separated variable names, in coordinate order.
    #[arg(long, value_delimiter = ',', required = true)]
    vars: Vec<String>,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Plot the resulting set (two variables only).
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Plot window `x0,x1,y0,y1`.
    #[arg(long, allow_hyphen_values = true)]
    viewport: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate at a point.
    Eval {
        #[command(flatten)]
        c: Common,
        /// Comma-separated rational coordinates.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Skeleton `{f = 𝟙}`.
    Skel(Common),
    /// Corner locus of a (super)tropical polynomial.
    Corner(Common),
    /// Is the first expression in the kernel generated by the second?
    Member(Common),
    /// Do the two expressions generate the same kernel?
    Similar(Common),
    /// Is `|f| ∧ |g|` identically 𝟙?
    Orthogonal(Common),
    /// Corner-integrality, with a witness per violation.
    #[command(name = "ci-check")]
    CiCheck(Common),
    /// Smallest corner-integral kernel inside `⟨f⟩`.
    #[command(name = "ci-close")]
    CiClose(Common),
    /// Drop summands not needed for the skeleton.
    Essential(Common),
    /// Is the fraction regular?
    Regular(Common),
    /// HO-decomposition of the principal kernel.
    Hodecomp(Common),
    /// Convexity degrees of the unbounded components.
    Hdim(Common),
    /// Descending chain of HS-kernels from HP generators.
    Chain(Common),
    /// Stripe `-β ≤ f ≤ α` around the skeleton.
    Thicken {
        #[command(flatten)]
        c: Common,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Re-run every case in a corpus directory against its goldens.
    Corpus {
        dir: PathBuf,
        /// Rewrite goldens instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

/// Result of one invocation, with files kept in memory until the caller decides
/// where they go.
#[derive(Debug, Default)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
    pub files: Vec<(PathBuf, String)>,
}

enum Fail {
    Parse(String),
    Semantic(String),
}

impl From<TropError> for Fail {
    fn from(e: TropError) -> Fail {
        if e.is_parse() {
            Fail::Parse(e.to_string())
        } else {
            Fail::Semantic(e.to_string())
        }
    }
}

struct Job<'a> {
    c: &'a Common,
    names: Vec<String>,
    exprs: Vec<Expr>,
}

impl<'a> Job<'a> {
    fn new(c: &'a Common) -> Result<Job<'a>, Fail> {
        let names: Vec<String> = c.vars.iter().map(|v| v.trim().to_string()).collect();
        if names.is_empty() || names.iter().any(|n| n.is_empty()) {
            return Err(Fail::Parse("--vars needs at least one variable name".into()));
        }
        let vs: Vec<&str> = names.iter().map(String::as_str).collect();
        let exprs = c.exprs.iter().map(|e| parse(e, &vs)).collect::<Result<Vec<_>, _>>()?;
        Ok(Job { c, names, exprs })
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn want(&self, k: usize) -> Result<(), Fail> {
        if self.exprs.len() != k {
            return Err(Fail::Semantic(format!("expected {k} expression(s), got {}", self.exprs.len())));
        }
        Ok(())
    }

    fn one(&self) -> Result<RatFunc, Fail> {
        self.want(1)?;
        Ok(self.exprs[0].to_ratfunc())
    }

    fn two(&self) -> Result<(RatFunc, RatFunc), Fail> {
        self.want(2)?;
        Ok((self.exprs[0].to_ratfunc(), self.exprs[1].to_ratfunc()))
    }

    fn show(&self, f: &RatFunc) -> String {
        f.fmt_with(&self.names)
    }
}

fn no_svg(c: &Common) -> Result<(), Fail> {
    match c.svg {
        Some(_) => Err(Fail::Semantic("--svg is only available for commands producing a set".into())),
        None => Ok(()),
    }
}

fn plot(job: &Job, set: &SkelSet, out: &mut Output) -> Result<(), Fail> {
    let Some(path) = &job.c.svg else {
        return Ok(());
    };
    let vp = match &job.c.viewport {
        Some(s) => Viewport::parse(s).map_err(Fail::Semantic)?,
        None => Viewport::default(),
    };
    let label = job.c.exprs.join(" ; ");
    let doc = svg::plot_svg(set, &vp, &label).map_err(Fail::Semantic)?;
    out.files.push((path.clone(), doc));
    Ok(())
}

fn point(s: &str, n: usize) -> Result<Vec<trop_core::Q>, Fail> {
    let v: Vec<_> = s
        .split(',')
        .map(|t| parse_q(t).ok_or_else(|| Fail::Parse(format!("bad rational `{t}`"))))
        .collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(TropError::DimensionMismatch { expected: n, got: v.len() }.into());
    }
    Ok(v)
}

fn monomial(e: &Expr) -> Result<Monomial, Fail> {
    e.to_ratfunc()
        .as_monomial()
        .ok_or_else(|| Fail::Semantic("chain generators must be Laurent monomials".into()))
}

fn dispatch(cmd: &Cmd, out: &mut Output) -> Result<Value, Fail> {
    let value = match cmd {
        Cmd::Eval { c, at } => {
            let job = Job::new(c)?;
            no_svg(c)?;
            job.want(1)?;
            let r = job.exprs[0].evaluate(&point(at, job.nvars())?)?;
            json!({ "value": r.value, "ghost": r.ghost })
        }
        Cmd::Skel(c) => {
            let job = Job::new(c)?;
            let s = skeleton(&job.one()?);
            plot(&job, &s, out)?;
            serde_json::to_value(&s).unwrap()
        }
        Cmd::Corner(c) => {
            let job = Job::new(c)?;
            job.want(1)?;
            let Expr::Poly(p) = &job.exprs[0] else {
                return Err(Fail::Semantic("corner loci are defined for polynomials only".into()));
            };
            let s = corner_locus(p);
            plot(&job, &s, out)?;
            serde_json::to_value(&s).unwrap()
        }
        Cmd::Member(c) => {
            let job = Job::new(c)?;
            no_svg(c)?;
            let (g, f) = job.two()?;
            serde_json::to_value(member(&g, &KernelGen::new(f))).unwrap()
        }
        Cmd::Similar(c) => {
            let job = Job::new(c)?;
            no_svg(c)?;
            let (f, g) = job.two()?;
            json!({ "similar": similar(&KernelGen::new(f), &KernelGen::new(g))? })
        }
        Cmd::Orthogonal(c) => {
            let job = Job::new(c)?;
            no_svg(c)?;
            let (f, g) = job.two()?;
            json!({ "orthogonal": orthogonal(&KernelGen::new(f), &KernelGen::new(g))? })
        }
        Cmd::CiCheck(c) => {
            let job = Job::new(c)?;
            no_svg(c)?;
            serde_json::to_value(is_corner_integral(&job.one()?)).unwrap()
        }
        Cmd::CiClose(c) => {
            let job = Job::new(c)?;
            let phi = ci_closure(&job.one()?);
            plot(&job, &skeleton(&phi), out)?;
            json!({ "closure": job.show(&phi) })
        }
        Cmd::Essential(c) => {
            let job = Job::new(c)?;
            no_svg(c)?;
            let f = job.one()?;
            let e = essential_form(&f);
            json!({ "essential": job.show(&e) })
        }
        Cmd::Regular(c) => {
            let job = Job::new(c)?;
            no_svg(c)?;
            json!({ "regular": is_regular(&job.one()?) })
        }
        Cmd::Hodecomp(c) => {
            let job = Job::new(c)?;
            let f = job.one()?;
            let comps = ho_decompose(&f);
            plot(&job, &pieces_union(&comps, job.nvars()), out)?;
            decomposition_json(&comps, job.nvars(), &job.names)
        }
        Cmd::Hdim(c) => {
            let job = Job::new(c)?;
            no_svg(c)?;
            let h = hyperdim(&job.one()?);
            json!({ "nvars": h.nvars, "condegs": h.condegs, "codims": h.codims })
        }
        Cmd::Chain(c) => {
            let job = Job::new(c)?;
            no_svg(c)?;
            let gens = job.exprs.iter().map(monomial).collect::<Result<Vec<_>, _>>()?;
            let chain = hs_chain(&gens)?;
            let fm = |ms: &[Monomial]| ms.iter().map(|m| m.fmt_with(&job.names)).collect::<Vec<_>>();
            json!({
                "condeg": chain.len() - 1,
                "chain": chain.iter().map(|k| fm(k)).collect::<Vec<_>>(),
            })
        }
        Cmd::Thicken { c, alpha, beta } => {
            let job = Job::new(c)?;
            let f = job.one()?;
            let a = parse_q(alpha.trim_matches(|ch| ch == '{' || ch == '}'))
                .ok_or_else(|| Fail::Parse(format!("bad α `{alpha}`")))?;
            let b = parse_q(beta.trim_matches(|ch| ch == '{' || ch == '}'))
                .ok_or_else(|| Fail::Parse(format!("bad β `{beta}`")))?;
            let t = thicken(&f, &a, &b)?;
            plot(&job, &skeleton(&t), out)?;
            json!({ "thickened": job.show(&t), "alpha": fmt_q(&a), "beta": fmt_q(&b) })
        }
        Cmd::Corpus { dir, bless } => {
            return corpus::run_dir(dir, *bless, out).map_err(Fail::Semantic);
        }
    };
    Ok(value)
}

/// Runs one invocation without touching the filesystem (except for `corpus`).
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut out = Output::default();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                out.code = 1;
                out.stderr = text;
            } else {
                out.stdout = text;
            }
            return out;
        }
    };
    let json_path = match &cli.cmd {
        Cmd::Eval { c, .. } | Cmd::Thicken { c, .. } => c.json.clone(),
        Cmd::Skel(c)
        | Cmd::Corner(c)
        | Cmd::Member(c)
        | Cmd::Similar(c)
        | Cmd::Orthogonal(c)
        | Cmd::CiCheck(c)
        | Cmd::CiClose(c)
        | Cmd::Essential(c)
        | Cmd::Regular(c)
        | Cmd::Hodecomp(c)
        | Cmd::Hdim(c)
        | Cmd::Chain(c) => c.json.clone(),
        Cmd::Corpus { .. } => None,
    };
    match dispatch(&cli.cmd, &mut out) {
        Ok(Value::Null) => {}
        Ok(v) => {
            let text = format!("{}\n", serde_json::to_string(&v).unwrap());
            match json_path {
                Some(p) => out.files.push((p, text)),
                None => out.stdout.push_str(&text),
            }
        }
        Err(Fail::Parse(m)) => {
            out.code = 1;
            out.files.clear();
            out.stderr = format!("error: {m}\n");
        }
        Err(Fail::Semantic(m)) => {
            out.code = 2;
            out.files.clear();
            out.stderr = format!("error: {m}\n");
        }
    }
    out
}

fn main() -> ExitCode {
    let mut out = run(std::env::args_os());
    for (path, content) in &out.files {
        if let Err(e) = std::fs::write(path, content) {
            out.stderr.push_str(&format!("error: cannot write {}: {e}\n", path.display()));
            out.code = 2;
        }
    }
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code)
}
