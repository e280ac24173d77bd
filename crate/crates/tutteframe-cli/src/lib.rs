//! The `tutteframe` command line.

pub mod cache;
pub mod zoo;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use tutteframe::arith::fmt_rat;
use tutteframe::bitseq::{norm, norm_closed};
use tutteframe::flatexpand::{flat_tensor, flat_tensor_mobius, total_f, tutte_from_tensor};
use tutteframe::frame::{gammabar_closed, gammabar_norms, gammabar_oracle, tutte_via_frame, Decomposition};
use tutteframe::ginvariant::{catenary_data, format_gamma, gamma_symbols, tutte_via_sp};
use tutteframe::matroid::tutte::{tutte_deletion_contraction, tutte_direct};
use tutteframe::polynomial::{poly_from_json, poly_to_json, render_tableau, Poly, TableauFormat};
use tutteframe::{Composition, Error, Limits, Matroid, SliceConstraint};

use cache::Cache;

#[derive(Parser, Debug)]
#[command(name = "tutteframe", version, about = "Exact Tutte polynomials of matroids by several routes")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Tableau)]
    format: Format,
    /// Worker threads for the parallel reductions.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cache directory (default: $TUTTEFRAME_CACHE or the user cache directory).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest ground set for the subset-sum route.
    #[arg(long, global = true, default_value_t = 24)]
    max_direct_n: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a Tutte polynomial.
    Compute {
        #[arg(long)]
        matroid: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Compute by several routes and compare exactly.
    Verify {
        #[arg(long)]
        matroid: String,
        /// Comma-separated routes (default: all five).
        #[arg(long, value_enum, value_delimiter = ',')]
        routes: Vec<Method>,
    },
    /// Symbol expansion of a gamma-basis element.
    Gamma {
        #[arg(long)]
        composition: String,
    },
    /// A gamma-bar frame element.
    FrameElement {
        #[arg(long)]
        composition: String,
        #[arg(long, value_enum, default_value_t = Form::Closed)]
        form: Form,
    },
    /// Flag counts by size-increment composition.
    Catenary {
        #[arg(long)]
        matroid: String,
    },
    /// The flat tensor of a loopless matroid.
    Ftensor {
        #[arg(long)]
        matroid: String,
        /// Print magnitudes.
        #[arg(long)]
        unsigned: bool,
        /// Print the collapsed F-tableau instead.
        #[arg(long)]
        collapse: bool,
        /// Use truncated contractions rather than flags.
        #[arg(long)]
        contractions: bool,
    },
    /// Weighted size of a filter or one of its slices.
    Norm {
        #[arg(long)]
        composition: String,
        /// Clauses such as "s5<=2" or "s3=0,s4<=1".
        #[arg(long)]
        slice: Option<String>,
    },
    /// The built-in matroid collection.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
}

#[derive(Subcommand, Debug)]
enum ZooAction {
    List,
    RunAll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tableau,
    Json,
    Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Delcon,
    Ginv,
    Frame,
    Ftensor,
    Auto,
}

impl Method {
    const ROUTES: [Method; 5] = [Method::Direct, Method::Delcon, Method::Ginv, Method::Frame, Method::Ftensor];

    fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Delcon => "delcon",
            Method::Ginv => "ginv",
            Method::Frame => "frame",
            Method::Ftensor => "ftensor",
            Method::Auto => "auto",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Form {
    Closed,
    Norms,
    Oracle,
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Cap { .. } => 3,
            Error::Parse(_) | Error::InvalidComposition(_) | Error::Loops(_) | Error::Range(_) | Error::OutsideBox(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<(), Failure>;

/// Parse `args` (program name first), run, and return the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let mut buf: Vec<u8> = Vec::new();
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, &mut buf)),
            Err(e) => Err(Failure { code: 2, message: format!("cannot start {n} threads: {e}") }),
        },
        None => dispatch(&cli, &mut buf),
    };
    if let Err(e) = out.write_all(&buf).and_then(|_| out.flush()) {
        let _ = writeln!(err, "error: write failed: {e}");
        return 1;
    }
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    Limits { direct_n: cli.max_direct_n, ..Limits::default() }
}

fn io(e: std::io::Error) -> Failure {
    Failure { code: 1, message: format!("write failed: {e}") }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let lim = limits(cli);
    match &cli.command {
        Command::Compute { matroid, method } => {
            let m = Matroid::construct(matroid)?;
            let p = compute_cached(cli, &m, *method, &lim)?;
            write_poly(out, cli.format, &p, m.n(), m.r())
        }
        Command::Verify { matroid, routes } => verify(cli, out, matroid, routes, &lim),
        Command::Gamma { composition } => {
            let a: Composition = composition.parse()?;
            let g = gamma_symbols(&a, &lim)?;
            match cli.format {
                Format::Json => {
                    let terms: Vec<Value> =
                        g.terms().map(|(b, c)| json!({"bits": b.to_string(), "c": c.to_string()})).collect();
                    let v = json!({"composition": a.parts(), "n": g.n, "r": g.r, "terms": terms});
                    writeln!(out, "{v}").map_err(io)
                }
                _ => writeln!(out, "gamma({a}) = {}", format_gamma(&a, &g)).map_err(io),
            }
        }
        Command::FrameElement { composition, form } => {
            let a: Composition = composition.parse()?;
            let p = match form {
                Form::Closed => gammabar_closed(&a),
                Form::Norms => gammabar_norms(&a, &lim)?,
                Form::Oracle => gammabar_oracle(&a, &lim)?,
            };
            let d = Decomposition::of(&a);
            match cli.format {
                Format::Json => {
                    let mut v = poly_to_json(&p, a.n(), a.r());
                    v["composition"] = json!(a.parts());
                    v["decomposition"] = decomposition_json(&d);
                    writeln!(out, "{v}").map_err(io)
                }
                Format::Poly => writeln!(out, "{}", p.to_poly_string()).map_err(io),
                Format::Tableau => {
                    writeln!(out, "gamma-bar({a}) = {}", display_decomposition(&a, &d)).map_err(io)?;
                    write_poly(out, Format::Tableau, &p, a.n(), a.r())
                }
            }
        }
        Command::Catenary { matroid } => {
            let m = Matroid::construct(matroid)?;
            let cat = catenary_data(&m, &lim)?;
            match cli.format {
                Format::Json => {
                    let v: Vec<Value> = cat
                        .iter()
                        .map(|(a, nu)| json!({"composition": a.parts(), "nu": int_value(nu)}))
                        .collect();
                    writeln!(out, "{}", Value::Array(v)).map_err(io)
                }
                _ => {
                    for (a, nu) in cat.iter() {
                        writeln!(out, "{a}\t{nu}").map_err(io)?;
                    }
                    Ok(())
                }
            }
        }
        Command::Ftensor { matroid, unsigned, collapse, contractions } => {
            let m = Matroid::construct(matroid)?;
            let t = if *contractions { flat_tensor_mobius(&m, &lim)? } else { flat_tensor(&m, &lim)? };
            let text = match (cli.format, *collapse) {
                (Format::Json, false) => format!("{}\n", t.to_json(*unsigned)),
                (Format::Json, true) => format!("{}\n", total_f(&t).to_json()),
                (_, false) => t.render_text(*unsigned),
                (_, true) => total_f(&t).render_text(),
            };
            out.write_all(text.as_bytes()).map_err(io)
        }
        Command::Norm { composition, slice } => {
            let a: Composition = composition.parse()?;
            let value = match slice {
                Some(s) => norm(&a, &s.parse::<SliceConstraint>()?, &lim)?,
                None => norm_closed(&a),
            };
            match cli.format {
                Format::Json => writeln!(out, "{}", json!({"composition": a.parts(), "slice": slice, "norm": int_value(&value)})),
                _ => writeln!(out, "{value}"),
            }
            .map_err(io)
        }
        Command::Zoo { action } => match action {
            ZooAction::List => {
                for e in zoo::ZOO {
                    let kinds: Vec<&str> = e
                        .fixtures
                        .iter()
                        .map(|(_, f)| match f {
                            zoo::Fixture::Tableau(_) => "tableau",
                            zoo::Fixture::Catenary(_) => "catenary",
                            zoo::Fixture::Tensor(_) | zoo::Fixture::TensorAbs(_) => "f-tensor",
                            zoo::Fixture::Mobius(_) => "mobius",
                        })
                        .collect();
                    writeln!(out, "{:<12} {:<40} {}", e.name, e.spec, kinds.join(",")).map_err(io)?;
                }
                Ok(())
            }
            ZooAction::RunAll => {
                let mut bad = 0;
                for e in zoo::ZOO {
                    let report = zoo::check_entry(e, &lim)?;
                    if report.failures.is_empty() {
                        writeln!(out, "{:<12} ok ({} ms)", report.name, report.millis).map_err(io)?;
                    } else {
                        bad += 1;
                        writeln!(out, "{:<12} FAILED", report.name).map_err(io)?;
                        for f in &report.failures {
                            writeln!(out, "  {f}").map_err(io)?;
                        }
                    }
                }
                if bad > 0 {
                    return Err(Failure { code: 1, message: format!("{bad} zoo entr{} failed", if bad == 1 { "y" } else { "ies" }) });
                }
                Ok(())
            }
        },
    }
}

fn int_value(v: &tutteframe::arith::Int) -> Value {
    match i64::try_from(v) {
        Ok(k) => json!(k),
        Err(_) => json!(v.to_string()),
    }
}

fn write_poly(out: &mut dyn Write, format: Format, p: &Poly, n: usize, r: usize) -> CmdResult {
    let text = match format {
        Format::Tableau => render_tableau(p, n, r, TableauFormat::Text)?,
        Format::Json => format!("{}\n", render_tableau(p, n, r, TableauFormat::Json)?),
        Format::Poly => format!("{}\n", p.to_poly_string()),
    };
    out.write_all(text.as_bytes()).map_err(io)
}

fn resolve(m: &Matroid, method: Method, lim: &Limits) -> Method {
    match method {
        Method::Auto if m.n() <= 12.min(lim.direct_n) => Method::Direct,
        Method::Auto => Method::Frame,
        other => other,
    }
}

fn compute(m: &Matroid, method: Method, lim: &Limits) -> tutteframe::Result<Poly> {
    match method {
        Method::Direct => tutte_direct(m, lim),
        Method::Delcon => tutte_deletion_contraction(m, lim),
        Method::Ginv => tutte_via_sp(m, lim),
        Method::Frame | Method::Auto => tutte_via_frame(m, lim),
        Method::Ftensor => tutte_from_tensor(&flat_tensor(m, lim)?),
    }
}

fn with_hint(m: &Matroid, method: Method, e: Error, lim: &Limits) -> Failure {
    let mut f = Failure::from(e.clone());
    if e.is_infeasible() {
        let alt = if method != Method::Frame {
            Method::Frame
        } else if m.n() <= lim.direct_n {
            Method::Direct
        } else {
            Method::Delcon
        };
        f.message.push_str(&format!(" (try --method {})", alt.name()));
    }
    f
}

fn compute_cached(cli: &Cli, m: &Matroid, method: Method, lim: &Limits) -> Result<Poly, Failure> {
    let method = resolve(m, method, lim);
    let cache = (!cli.no_cache).then(|| Cache::locate(cli.cache.as_deref()));
    let key = Cache::key(m.spec(), method.name());
    if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
        if let Ok((p, _, _)) = poly_from_json(&hit) {
            return Ok(p);
        }
    }
    let p = compute(m, method, lim).map_err(|e| with_hint(m, method, e, lim))?;
    if let Some(c) = &cache {
        // A failed write only costs a recomputation later.
        let _ = c.put(&key, &poly_to_json(&p, m.n(), m.r()));
    }
    Ok(p)
}

fn digest(p: &Poly) -> String {
    let bytes = poly_to_json(p, 0, 0).to_string();
    hex::encode(Sha256::digest(bytes.as_bytes()))[..16].to_string()
}

/// First `(i, j)` where `p` and `q` differ, in increasing order.
fn first_difference(p: &Poly, q: &Poly) -> Option<(u32, u32)> {
    let mut keys: Vec<(u32, u32)> = p.terms().chain(q.terms()).map(|(k, _)| *k).collect();
    keys.sort_unstable();
    keys.into_iter().find(|&(i, j)| p.coeff(i, j) != q.coeff(i, j))
}

fn verify(cli: &Cli, out: &mut dyn Write, spec: &str, routes: &[Method], lim: &Limits) -> CmdResult {
    let m = Matroid::construct(spec)?;
    let routes: Vec<Method> = if routes.is_empty() { Method::ROUTES.to_vec() } else { routes.to_vec() };
    if routes.contains(&Method::Auto) {
        return Err(Failure { code: 2, message: "verify takes explicit routes, not auto".into() });
    }
    let mut done: Vec<(Method, Poly, u128)> = Vec::new();
    let mut skipped: Vec<(Method, String)> = Vec::new();
    for &route in &routes {
        let start = Instant::now();
        match compute(&m, route, lim) {
            Ok(p) => done.push((route, p, start.elapsed().as_millis())),
            Err(e @ (Error::Cap { .. } | Error::Loops(_))) => skipped.push((route, e.to_string())),
            Err(e) => return Err(e.into()),
        }
    }
    if done.len() < 2 {
        return Err(Failure {
            code: 3,
            message: format!("fewer than two feasible routes for {}", m.spec()),
        });
    }
    let base = &done[0].1;
    let mismatch = done[1..]
        .iter()
        .find_map(|(route, p, _)| first_difference(base, p).map(|at| (*route, at, p)));
    if cli.format == Format::Json {
        let v = json!({
            "matroid": m.spec(),
            "routes": done.iter().map(|(r, p, ms)| json!({"route": r.name(), "digest": digest(p), "ms": ms})).collect::<Vec<_>>(),
            "skipped": skipped.iter().map(|(r, why)| json!({"route": r.name(), "reason": why})).collect::<Vec<_>>(),
            "pass": mismatch.is_none(),
        });
        writeln!(out, "{v}").map_err(io)?;
    } else {
        writeln!(out, "matroid {}", m.spec()).map_err(io)?;
        for (r, p, ms) in &done {
            writeln!(out, "  {:<8} {}  {} ms", r.name(), digest(p), ms).map_err(io)?;
        }
        for (r, why) in &skipped {
            writeln!(out, "  {:<8} skipped: {why}", r.name()).map_err(io)?;
        }
        if mismatch.is_none() {
            writeln!(out, "pass").map_err(io)?;
            write_poly(out, Format::Tableau, base, m.n(), m.r())?;
        }
    }
    match mismatch {
        None => Ok(()),
        Some((route, (i, j), p)) => Err(Failure {
            code: 1,
            message: format!(
                "{} and {} differ at x^{i} y^{j}: {} vs {}",
                done[0].0.name(),
                route.name(),
                fmt_rat(&base.coeff(i, j)),
                fmt_rat(&p.coeff(i, j))
            ),
        }),
    }
}

fn decomposition_json(d: &Decomposition) -> Value {
    let terms: Vec<Value> = d
        .terms
        .iter()
        .map(|t| {
            json!({"k": t.k, "h": t.h, "coeff": fmt_rat(&t.coeff), "x_exp": t.x_exp, "d": t.d, "alpha": t.alpha})
        })
        .collect();
    json!({"loops": d.loops, "leading": fmt_rat(&d.leading), "terms": terms})
}

/// `c T(U_{r,n}) + (xy-x-y)[c (x-1)^e tau(d,alpha) + ...]`, with `y^a0` in front when there are loops.
fn display_decomposition(a: &Composition, d: &Decomposition) -> String {
    use num_traits::Signed;
    let mut s = String::new();
    if d.loops > 0 {
        s.push_str(&format!("y^{} * (", d.loops));
    }
    s.push_str(&format!("{} T(U_{{{},{}}})", fmt_rat(&d.leading), a.r(), a.n() - d.loops));
    if !d.terms.is_empty() {
        s.push_str(" + (xy-x-y)[");
        for (idx, t) in d.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (idx, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(&fmt_rat(&t.coeff.abs()));
            match t.x_exp {
                0 => {}
                1 => s.push_str(" (x-1)"),
                e => s.push_str(&format!(" (x-1)^{e}")),
            }
            s.push_str(&format!(" tau({},{})", t.d, t.alpha));
        }
        s.push(']');
    }
    if d.loops > 0 {
        s.push(')');
    }
    s
}
