//! The `tl` command-line driver.
//!
//! Exit codes: 0 success or PASS, 1 verification FAIL, 2 usage or input
//! error, 3 a morphism is not evaluable at the requested root of unity.

mod args;
mod input;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use tl_core::diagram::{enumerate_diagrams, hom_dim};
use tl_core::ideal::{
    constancy_check, gram_matrix, ideal_truncation, negligible_basis, negligible_basis_generic, pairing_rank_mod_p, verify_even_subcategory,
    verify_main_theorem, GramMatrix, TruncationOptions, VerificationReport, VerifyConfig, CERT_PRIME,
};
use tl_core::linalg::{self, Echelon};
use tl_core::rootspec::{evaluate_morphism, z_left_with};
use tl_core::tower::{bratteli_graph, BratteliPath, IdempotentCache, YoungDiagram};
use tl_core::{CycloRing, Error, GenericRing, Morphism, Result, Ring};

pub use args::{CacheAction, Cli, Command, Mode, OutFormat};
pub use input::{load, parse_expr, AnyMorphism};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_EVALUABLE: i32 = 3;

/// Environment variable that overrides `--cache-dir`.
pub const CACHE_ENV: &str = "TL_CACHE_DIR";

/// Output of one command in every format it supports.
struct Rendered {
    json: Value,
    text: String,
    dot: Option<String>,
    code: i32,
}

impl Rendered {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Rendered { json, text: text.into(), dot: None, code: EXIT_OK }
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotEvaluable { .. } => EXIT_NOT_EVALUABLE,
        Error::VerificationFailed(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn error_json(kind: &str, message: &str, code: i32) -> String {
    json!({ "error": { "kind": kind, "message": message }, "exit_code": code }).to_string()
}

/// Cache directory: `TL_CACHE_DIR`, then `--cache-dir`, then the user cache.
pub fn cache_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or(flag)
        .or_else(|| dirs::cache_dir().map(|d| d.join("tl-ideal-lab")))
}

struct Context {
    seed: u64,
    jobs: Option<usize>,
    cache_dir: Option<PathBuf>,
}

impl Context {
    fn cache(&self) -> Result<IdempotentCache> {
        match &self.cache_dir {
            Some(dir) => IdempotentCache::with_dir(dir),
            None => Ok(IdempotentCache::in_memory()),
        }
    }

    fn load(&self, arg: &str) -> Result<AnyMorphism> {
        load(arg, || self.cache())
    }
}

/// Runs `tl` with the given arguments (including the program name), writing
/// the report to `out` and errors to `err`. Returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = writeln!(err, "{}", error_json("Usage", e.to_string().trim(), EXIT_USAGE));
            return EXIT_USAGE;
        }
    };
    let ctx = Context { seed: cli.seed, jobs: cli.jobs, cache_dir: cache_dir(cli.cache_dir.clone()) };
    let format = cli.out;
    let result = dispatch(&ctx, cli.command).and_then(|r| {
        let body = match format {
            OutFormat::Json => serde_json::to_string_pretty(&r.json)? + "\n",
            OutFormat::Text => {
                let mut t = r.text;
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                t
            }
            OutFormat::Dot => r.dot.ok_or_else(|| Error::BadParameter("--out dot is only available for bratteli".into()))?,
        };
        Ok((body, r.code))
    });
    match result {
        Ok((body, code)) => {
            if out.write_all(body.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            code
        }
        Err(e) => {
            let code = exit_code(&e);
            let _ = writeln!(err, "{}", error_json(e.kind(), &e.to_string(), code));
            code
        }
    }
}

/// Runs `tl` on the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn morphism_out<R: Ring>(m: &Morphism<R>) -> Result<Rendered>
where
    R::Elem: std::fmt::Display,
{
    Ok(Rendered::new(to_json(m)?, m.to_string()))
}

fn any_out(m: &AnyMorphism) -> Result<Rendered> {
    match m {
        AnyMorphism::Generic(m) => morphism_out(m),
        AnyMorphism::Cyclo(m) => morphism_out(m),
    }
}

fn binary(ctx: &Context, a: &str, b: &str, ell: Option<u32>, op: fn(&AnyMorphism, &AnyMorphism) -> Result<AnyMorphism>) -> Result<Rendered> {
    let (a, b) = (ctx.load(a)?, ctx.load(b)?);
    let (a, b) = match input::common_ell(ell, &[&a, &b])? {
        None => (a, b),
        Some(l) => (AnyMorphism::Cyclo(a.at(l)?), AnyMorphism::Cyclo(b.at(l)?)),
    };
    any_out(&op(&a, &b)?)
}

fn compose(b: &AnyMorphism, a: &AnyMorphism) -> Result<AnyMorphism> {
    match (b, a) {
        (AnyMorphism::Generic(b), AnyMorphism::Generic(a)) => Ok(AnyMorphism::Generic(b.compose(a)?)),
        (AnyMorphism::Cyclo(b), AnyMorphism::Cyclo(a)) => Ok(AnyMorphism::Cyclo(b.compose(a)?)),
        _ => Err(Error::RingMismatch("mixed rings".into())),
    }
}

fn tensor(a: &AnyMorphism, b: &AnyMorphism) -> Result<AnyMorphism> {
    match (a, b) {
        (AnyMorphism::Generic(a), AnyMorphism::Generic(b)) => Ok(AnyMorphism::Generic(a.tensor(b)?)),
        (AnyMorphism::Cyclo(a), AnyMorphism::Cyclo(b)) => Ok(AnyMorphism::Cyclo(a.tensor(b)?)),
        _ => Err(Error::RingMismatch("mixed rings".into())),
    }
}

fn maybe_at(m: Morphism, ell: Option<u32>) -> Result<AnyMorphism> {
    Ok(match ell {
        None => AnyMorphism::Generic(m),
        Some(l) => AnyMorphism::Cyclo(evaluate_morphism(&m, l)?),
    })
}

fn dispatch(ctx: &Context, command: Command) -> Result<Rendered> {
    match command {
        Command::Dim(c) => {
            let d = hom_dim(c.m, c.n);
            Ok(Rendered::new(json!({ "m": c.m, "n": c.n, "dim": d.to_string() }), d.to_string()))
        }
        Command::Compose { b, a, ell } => binary(ctx, &b, &a, ell, compose),
        Command::Tensor { a, b, ell } => binary(ctx, &a, &b, ell, tensor),
        Command::Trace { a, ell } => {
            let a = ctx.load(&a)?;
            match input::common_ell(ell, &[&a])? {
                None => {
                    let tr = a.generic()?.trace()?;
                    Ok(Rendered::new(json!({ "ring": "generic", "trace": to_json(&tr)? }), tr.to_string()))
                }
                Some(l) => {
                    let tr = a.at(l)?.trace()?;
                    Ok(Rendered::new(json!({ "ring": { "cyclo": l }, "trace": to_json(&tr)? }), tr.to_string()))
                }
            }
        }
        Command::Jw { n, ell } => {
            if n == 0 {
                return Err(Error::BadParameter("JW_n needs n ≥ 1".into()));
            }
            let jw = (*ctx.cache()?.path_idempotent(&BratteliPath::single_row(n))?).clone();
            any_out(&maybe_at(jw, ell)?)
        }
        Command::Pathidem { path, ell } => {
            let p = (*ctx.cache()?.path_idempotent(&BratteliPath::parse(&path)?)?).clone();
            any_out(&maybe_at(p, ell)?)
        }
        Command::Zleft { lambda, ell, evaluate } => {
            let z = z_left_with(&ctx.cache()?, YoungDiagram::parse(&lambda)?, ell)?;
            any_out(&maybe_at(z, evaluate.then_some(ell))?)
        }
        Command::Bratteli { max_n } => {
            let g = bratteli_graph(max_n);
            let mut text = String::new();
            for (level, vertices) in g.levels.iter().enumerate() {
                let names: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
                text.push_str(&format!("{level}: {}\n", names.join(" ")));
            }
            let mut r = Rendered::new(to_json(&g)?, text);
            r.dot = Some(g.to_dot());
            Ok(r)
        }
        Command::Gram { cell, ell, mode } => gram(ctx, cell.m, cell.n, ell, mode),
        Command::Neg { cell, ell } => neg(cell.m, cell.n, ell),
        Command::Ideal { gen, cell, ell, max_levels } => {
            let g = ctx.load(&gen)?;
            let opts = TruncationOptions { ceiling: None, max_levels };
            match input::common_ell(ell, &[&g])? {
                None => ideal_out(&ideal_truncation(&g.generic()?, cell.m, cell.n, &opts)?, GenericRing),
                Some(l) => ideal_out(&ideal_truncation(&g.at(l)?, cell.m, cell.n, &opts)?, CycloRing::new(l)?),
            }
        }
        Command::Verify(s) => verify(ctx, &s, false),
        Command::VerifyEven(s) => verify(ctx, &s, true),
        Command::Constancy { e, f, ell, diagrams } => {
            let (e, f) = (ctx.load(&e)?.generic()?, ctx.load(&f)?.generic()?);
            let mut all = enumerate_diagrams(f.dom(), e.dom());
            if let Some(k) = diagrams {
                all.shuffle(&mut ChaCha8Rng::seed_from_u64(ctx.seed));
                all.truncate(k);
            }
            let report = constancy_check(&e, &f, &all, ell)?;
            let text = format!("generic {} specialized {} equal {}", report.generic_dim, report.specialized_dim, report.equal);
            Ok(Rendered::new(to_json(&report)?, text))
        }
        Command::Cache { action } => cache(ctx, action),
    }
}

#[derive(Serialize)]
struct GramReport<'a, E> {
    #[serde(flatten)]
    gram: &'a GramMatrix<E>,
    rank: usize,
}

fn matrix_text<E: std::fmt::Display>(rows: &[Vec<E>]) -> String {
    rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\t")).collect::<Vec<_>>().join("\n")
}

fn gram(ctx: &Context, m: usize, n: usize, ell: Option<u32>, mode: Mode) -> Result<Rendered> {
    match (mode, ell) {
        (Mode::CertifyGeneric, Some(_)) => Err(Error::BadParameter("certify-generic works over ℚ(t); drop --ell".into())),
        (Mode::CertifyGeneric, None) => {
            if (m + n) % 2 == 1 {
                return Err(Error::ParityError(format!("Hom({m},{n}) is zero")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            let points: Vec<u64> = (0..2).map(|_| rand::Rng::gen_range(&mut rng, 2..CERT_PRIME - 1)).collect();
            let ranks: Vec<usize> = points.iter().map(|&x| pairing_rank_mod_p(m, n, x, CERT_PRIME)).collect();
            let size = hom_dim(m, n) as usize;
            let full = ranks.iter().any(|&r| r == size);
            let j = json!({ "m": m, "n": n, "prime": CERT_PRIME, "points": points, "ranks": ranks, "size": size, "full_rank": full });
            let text = format!("size {size} ranks {ranks:?} at t = {points:?} mod 2^61-1: {}", if full { "full rank" } else { "not certified" });
            let mut r = Rendered::new(j, text);
            r.code = if full { EXIT_OK } else { EXIT_FAIL };
            Ok(r)
        }
        (Mode::Exact, None) => {
            let g = gram_matrix(m, n, &GenericRing)?;
            let rank = linalg::generic_rank(&g.entries);
            let text = format!("{}\nrank {rank}", matrix_text(&g.entries));
            Ok(Rendered::new(to_json(&GramReport { gram: &g, rank })?, text))
        }
        (Mode::Exact, Some(l)) => {
            let g = gram_matrix(m, n, &CycloRing::new(l)?)?;
            let rank = linalg::rank(&g.entries);
            let text = format!("{}\nrank {rank}", matrix_text(&g.entries));
            Ok(Rendered::new(to_json(&GramReport { gram: &g, rank })?, text))
        }
    }
}

fn basis_out<R: Ring>(m: usize, n: usize, ring: R, basis: &Echelon<R::Elem>, extra: Value) -> Result<Rendered>
where
    R::Elem: std::fmt::Display,
{
    let ms: Vec<Morphism<R>> = basis.basis().into_iter().map(|row| Morphism::from_sparse(m, n, ring.clone(), row)).collect();
    let mut text = format!("dim {}\n", ms.len());
    for x in &ms {
        text.push_str(&format!("{x}\n"));
    }
    let mut j = json!({ "m": m, "n": n, "ring": to_json(&ring.tag())?, "dim": ms.len(), "basis": to_json(&ms)? });
    if let (Value::Object(o), Value::Object(e)) = (&mut j, extra) {
        o.extend(e);
    }
    Ok(Rendered::new(j, text))
}

fn neg(m: usize, n: usize, ell: Option<u32>) -> Result<Rendered> {
    match ell {
        None => basis_out(m, n, GenericRing, &negligible_basis_generic(m, n)?, json!({})),
        Some(l) => basis_out(m, n, CycloRing::new(l)?, &negligible_basis(m, n, l)?, json!({})),
    }
}

fn ideal_out<R: Ring>(span: &tl_core::ideal::IdealSpan<R::Elem>, ring: R) -> Result<Rendered>
where
    R::Elem: std::fmt::Display,
{
    let levels: Vec<Value> = span.levels.iter().map(|&(s, d)| json!({ "s": s, "dim": d })).collect();
    basis_out(span.m, span.n, ring, &span.basis, json!({ "levels": levels, "stop": to_json(&span.stop)? }))
}

fn report_text(r: &VerificationReport) -> String {
    let mut t = format!("ell {}\n   m   n  neg  ideal  equal\n", r.ell);
    for c in &r.cells {
        let ok = c.equal && c.samples_ok && c.closure_ok;
        t.push_str(&format!("{:>4}{:>4}{:>5}{:>7}  {}\n", c.m, c.n, c.neg_dim, c.ideal_dim, ok));
    }
    t.push_str(if r.passed() { "PASS\n" } else { "FAIL\n" });
    t
}

fn verify(ctx: &Context, s: &args::Sweep, even: bool) -> Result<Rendered> {
    if s.max_n == 0 {
        return Err(Error::BadParameter("--max-n must be at least 1".into()));
    }
    let cfg = VerifyConfig { ell: s.ell, max_n: s.max_n, seed: ctx.seed, samples: s.samples, sandwiches: s.sandwiches, jobs: ctx.jobs };
    let report = if even { verify_even_subcategory(&cfg)? } else { verify_main_theorem(&cfg)? };
    let mut r = Rendered::new(to_json(&report)?, report_text(&report));
    r.code = if report.passed() { EXIT_OK } else { EXIT_FAIL };
    Ok(r)
}

fn cache(ctx: &Context, action: CacheAction) -> Result<Rendered> {
    let dir = ctx.cache_dir.clone().ok_or_else(|| Error::BadParameter("no cache directory available".into()))?;
    let shown = dir.display().to_string();
    match action {
        CacheAction::Path => Ok(Rendered::new(json!({ "dir": shown }), shown)),
        CacheAction::List => {
            let entries: Vec<String> = if dir.is_dir() {
                IdempotentCache::with_dir(&dir)?.entries()?.iter().filter_map(|p| p.file_name()?.to_str().map(String::from)).collect()
            } else {
                Vec::new()
            };
            Ok(Rendered::new(json!({ "dir": shown, "entries": entries }), entries.join("\n")))
        }
        CacheAction::Clear => {
            let removed = if dir.is_dir() { IdempotentCache::with_dir(&dir)?.clear()? } else { 0 };
            Ok(Rendered::new(json!({ "dir": shown, "removed": removed }), format!("removed {removed}")))
        }
    }
}
