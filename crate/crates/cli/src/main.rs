mod expr;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use wittlab::hh::whh::classical_witt_group;
use wittlab::hh::{hesselholt_seq_check, whh0, AlgebraSpec};
use wittlab::tate::maps::{frob_f, restrict_r, ver_v};
use wittlab::tate::nc::{commutative_projection, solve_nc_c, verify_commutative, verify_nc};
use wittlab::tate::{WittSpace, DEFAULT_LIMIT};
use wittlab::verify::{all_passed, run_suite, Suite, VerifyConfig};
use wittlab::witt::big::{big_add, big_mul, big_product_polys, from_series, ghost_big, render_product, to_series};
use wittlab::witt::universal::render;
use wittlab::witt::{universal_polys, BigWitt, PolyKind};
use wittlab::exact::Integers;
use wittlab::Error;

#[derive(Parser)]
#[command(name = "wittlab", version, about = "Exact Witt vector and Hochschild-Witt computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Resource limit on ambient basis tuples (overrides WITTLAB_LIMIT)
    #[arg(long, global = true)]
    limit: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BigOp {
    Add,
    Mul,
    Ghost,
    ToSeries,
    FromSeries,
    Polys,
}

#[derive(Subcommand)]
enum Command {
    /// Print universal Witt polynomials in canonical text form
    GenPolys {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        n: usize,
        /// sum, product, negation or frobenius
        #[arg(long)]
        kind: String,
        /// Write to this file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate an expression in W_n(F_p) built from +, *, F, V, R, T(k) and integers
    Padic {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        n: usize,
        expr: String,
    },
    /// Big Witt vectors over Z truncated at N; vectors are JSON arrays
    Big {
        #[arg(short = 'N')]
        big_n: usize,
        #[arg(long, value_enum)]
        op: BigOp,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Structure of W_n(F_p^d) and the images of V, F, R
    Qgroup {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        n: u32,
        #[arg(short)]
        d: u64,
    },
    /// Non-commutative correction polynomials c_1..c_i
    Ncpoly {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        i: u32,
    },
    /// W_nHH_0 of an algebra given as JSON
    Whh {
        algebra: PathBuf,
        #[arg(short)]
        n: u32,
    },
    /// Run verification suites: classical, big, tate, hh or all
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        /// Directory holding the golden polynomial files
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

struct Report {
    text: String,
    json: Value,
    ok: bool,
}

fn limit(common: &Common) -> Result<usize, Failure> {
    if let Some(l) = common.limit {
        return Ok(l);
    }
    match std::env::var("WITTLAB_LIMIT") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::Input(format!("WITTLAB_LIMIT is not a number: {s:?}"))),
        Err(_) => Ok(DEFAULT_LIMIT),
    }
}

fn check_prime(p: u64) -> Result<(), Failure> {
    if wittlab::exact::int::is_prime(p) {
        Ok(())
    } else {
        Err(Failure::Input(format!("p = {p} is not prime")))
    }
}

fn parse_vector(s: Option<&String>, name: &str) -> Result<Vec<BigInt>, Failure> {
    let s = s.ok_or_else(|| Failure::Input(format!("--{name} is required")))?;
    let v: Vec<Value> = serde_json::from_str(s).map_err(|e| Failure::Input(format!("--{name}: {e}")))?;
    v.iter()
        .map(|x| match x {
            Value::Number(k) => k.to_string().parse::<BigInt>().ok(),
            Value::String(k) => k.parse::<BigInt>().ok(),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Failure::Input(format!("--{name} must be an array of integers")))
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| match i64::try_from(x) {
                Ok(k) => json!(k),
                Err(_) => json!(x.to_string()),
            })
            .collect(),
    )
}

fn show(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn gen_polys(p: u64, n: usize, kind: &str, output: Option<&PathBuf>) -> Result<Report, Failure> {
    check_prime(p)?;
    if n == 0 {
        return Err(Failure::Input("n must be at least 1".into()));
    }
    let kind: PolyKind = kind.parse()?;
    let text = render(kind, &universal_polys(p, n, kind)?);
    if let Some(path) = output {
        fs::write(path, &text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    let lines: Vec<&str> = text.lines().collect();
    Ok(Report {
        json: json!({"p": p, "n": n, "kind": kind.name(), "polynomials": lines}),
        text: if output.is_some() { String::new() } else { text.trim_end().to_string() },
        ok: true,
    })
}

fn padic(p: u64, n: usize, src: &str) -> Result<Report, Failure> {
    check_prime(p)?;
    if n == 0 {
        return Err(Failure::Input("n must be at least 1".into()));
    }
    let v = expr::evaluate(p, n, src)?;
    let value = wittlab::witt::padic::padic_convert(&v);
    let digits: Vec<String> = v.comps.iter().map(|c| c.to_string()).collect();
    let modulus = BigInt::from(p).pow(v.len() as u32);
    Ok(Report {
        text: format!("({}) = {} mod {}", digits.join(","), value, modulus),
        json: json!({"p": p, "n": v.len(), "components": ints(&v.comps), "value": value.to_string(), "modulus": modulus.to_string()}),
        ok: true,
    })
}

fn big(big_n: usize, op: BigOp, a: Option<&String>, b: Option<&String>) -> Result<Report, Failure> {
    if big_n == 0 {
        return Err(Failure::Input("N must be at least 1".into()));
    }
    let vector = |s: Option<&String>, name: &str| -> Result<BigWitt<BigInt>, Failure> {
        let v = parse_vector(s, name)?;
        if v.len() != big_n {
            return Err(Failure::Input(format!("--{name} needs {big_n} entries, got {}", v.len())));
        }
        Ok(BigWitt::new(v))
    };
    let z = Integers;
    let (name, out) = match op {
        BigOp::Polys => {
            let text = render_product(&big_product_polys(big_n)?);
            let lines: Vec<&str> = text.lines().collect();
            return Ok(Report { json: json!({"N": big_n, "product": lines}), text: text.trim_end().to_string(), ok: true });
        }
        BigOp::Add => ("sum", big_add(&z, &vector(a, "a")?, &vector(b, "b")?)?.comps),
        BigOp::Mul => ("product", big_mul(&z, &vector(a, "a")?, &vector(b, "b")?)?.comps),
        BigOp::Ghost => ("ghost", ghost_big(&z, &vector(a, "a")?)),
        BigOp::ToSeries => ("series", to_series(&z, &vector(a, "a")?)),
        BigOp::FromSeries => {
            let s = parse_vector(a, "a")?;
            if s.len() != big_n + 1 || s[0] != BigInt::from(1) {
                return Err(Failure::Input(format!("series needs {} coefficients starting with 1", big_n + 1)));
            }
            ("vector", from_series(&z, &s).comps)
        }
    };
    Ok(Report { text: format!("{name} = {}", show(&out)), json: json!({"N": big_n, name: ints(&out)}), ok: true })
}

fn qgroup(p: u64, n: u32, d: u64, limit: usize) -> Result<Report, Failure> {
    check_prime(p)?;
    if n == 0 || d == 0 {
        return Err(Failure::Input("n and d must be at least 1".into()));
    }
    let w = WittSpace::q(p, n, d, limit)?;
    let order = w.group.order().map(|o| o.to_string()).unwrap_or_else(|| "infinite".into());
    let mut text = vec![
        format!("W_{n}(F_{p}^{d}) = {}", w.group.structure()),
        format!("order {order}"),
        format!("basis tuples {}", w.num_tuples()),
    ];
    let factors: Vec<String> = w.group.invariant_factors().iter().map(|f| f.to_string()).collect();
    let mut ops = serde_json::Map::new();
    if n >= 2 {
        let lower = WittSpace::q(p, n - 1, d, limit)?;
        let wide = WittSpace::q(p, n - 1, d.pow(p as u32), limit)?;
        let images = [
            ("R", restrict_r(&w, &lower, limit)?.image_order()),
            ("F", frob_f(&w, &wide)?.image_order()),
            ("V", ver_v(&wide, &w)?.image_order()),
        ];
        for (name, o) in images {
            text.push(format!("|im {name}| = {o}"));
            ops.insert(name.to_string(), json!(o.to_string()));
        }
    }
    Ok(Report {
        text: text.join("\n"),
        json: json!({"p": p, "n": n, "d": d, "structure": w.group.structure(), "invariant_factors": factors,
                     "order": order, "basis_tuples": w.num_tuples(), "image_orders": ops}),
        ok: true,
    })
}

fn ncpoly(p: u64, upto: u32, limit: usize) -> Result<Report, Failure> {
    check_prime(p)?;
    let cs = solve_nc_c(p, upto, limit)?;
    let projections: Vec<_> = cs.iter().map(commutative_projection).collect();
    let verified = verify_nc(p, &cs) && verify_commutative(p, &projections);
    let shown: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
    let mut text: Vec<String> = shown.iter().enumerate().map(|(k, c)| format!("c{} = {c}", k + 1)).collect();
    text.push(format!("verified: {verified}"));
    Ok(Report { text: text.join("\n"), json: json!({"p": p, "c": shown, "verified": verified}), ok: verified })
}

fn whh(path: &std::path::Path, n: u32, limit: usize) -> Result<Report, Failure> {
    if n == 0 {
        return Err(Failure::Input("n must be at least 1".into()));
    }
    let a = AlgebraSpec::load(path)?;
    let w = whh0(&a, n, limit)?;
    let order = w.group.order().map(|o| o.to_string()).unwrap_or_else(|| "infinite".into());
    let mut text = vec![format!("W_{n}HH_0 = {}", w.group.structure()), format!("order {order}")];
    let mut out = json!({"p": a.p, "dim": a.dim, "n": n, "structure": w.group.structure(), "order": order});
    if a.is_commutative() {
        let classical = classical_witt_group(&a, n as usize)?;
        let matches = classical.isomorphic(&w.group);
        text.push(format!("classical W_{n}(A) = {}", classical.structure()));
        text.push(format!("matches classical: {matches}"));
        out["classical"] = json!(classical.structure());
        out["matches_classical"] = json!(matches);
    }
    if n >= 2 {
        let r = hesselholt_seq_check(&a, n - 1, limit)?;
        text.push(format!(
            "sequence HH_0 -> W_{n}HH_0 -> W_{}HH_0 -> 0: right exact {}, middle exact {}, left injective {}",
            n - 1,
            r.right_exact,
            r.middle_exact,
            r.left_injective
        ));
        out["sequence"] = serde_json::to_value(&r).expect("report serializes");
    }
    Ok(Report { text: text.join("\n"), json: out, ok: true })
}

fn verify(suite: &str, golden_dir: Option<&PathBuf>, limit: usize) -> Result<Report, Failure> {
    let suite: Suite = suite.parse()?;
    let mut cfg = VerifyConfig { limit, ..VerifyConfig::default() };
    if let Some(dir) = golden_dir {
        cfg.golden_dir = dir.clone();
    }
    let checks = run_suite(suite, &cfg);
    let ok = all_passed(&checks);
    let mut text: Vec<String> = checks
        .iter()
        .map(|c| {
            let status = match (c.passed, c.blocking) {
                (true, _) => "PASS",
                (false, true) => "FAIL",
                (false, false) => "FAIL (non-blocking)",
            };
            format!("[{status}] {:>2} {}: {}", c.criterion, c.name, c.detail)
        })
        .collect();
    let passed = checks.iter().filter(|c| c.passed).count();
    text.push(format!("{suite}: {passed}/{} checks passed; {}", checks.len(), if ok { "pass" } else { "fail" }));
    Ok(Report { text: text.join("\n"), json: json!({"suite": suite.to_string(), "passed": ok, "checks": checks}), ok })
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let limit = limit(&cli.common)?;
    match &cli.command {
        Command::GenPolys { p, n, kind, output } => gen_polys(*p, *n, kind, output.as_ref()),
        Command::Padic { p, n, expr } => padic(*p, *n, expr),
        Command::Big { big_n, op, a, b } => big(*big_n, *op, a.as_ref(), b.as_ref()),
        Command::Qgroup { p, n, d } => qgroup(*p, *n, *d, limit),
        Command::Ncpoly { p, i } => ncpoly(*p, *i, limit),
        Command::Whh { algebra, n } => whh(algebra, *n, limit),
        Command::Verify { suite, golden_dir } => verify(suite, golden_dir.as_ref(), limit),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json_out = cli.common.format == Format::Json;
    match run(&cli) {
        Ok(report) => {
            if json_out {
                let mut v = report.json;
                v["schema"] = json!(1);
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else if !report.text.is_empty() {
                println!("{}", report.text);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
