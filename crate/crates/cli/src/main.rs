use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use cmcert::certify::kernel::default_kernel_grid;
use cmcert::certify::{self, Check, Report, Routes, Sign, Status, SuiteConfig, Witness};
use cmcert::numeric::{parse_rational, rat_int, BigRational};
use cmcert::paperlib::{self, decomposition_identities, f_lambda, Body, FForm};
use cmcert::{Engine, Error, GridSpec, Interval};

#[derive(Parser, Debug)]
#[command(name = "cmcert", version, about = "Certify complete monotonicity of [psi']^2 + psi'' minus rational bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Evaluation grid, `log:START:END:COUNT` or `linear:START:END:COUNT`.
    #[arg(long, global = true, value_parser = parse_grid)]
    grid: Option<GridSpec>,
    /// Highest derivative order for complete-monotonicity checks.
    #[arg(long, global = true, default_value_t = 12)]
    orders: usize,
    /// Absolute tolerance for quadrature and identity checks.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Exit 0 even when some checks are indeterminate.
    #[arg(long, global = true)]
    allow_indeterminate: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enclose one named function at one point.
    Eval {
        #[arg(long = "fn")]
        name: String,
        #[arg(long, value_parser = parse_exact, default_value = "0")]
        lambda: BigRational,
        #[arg(long, value_parser = parse_exact)]
        x: BigRational,
        /// Exponent for `conj-side`.
        #[arg(long, value_parser = parse_exact, default_value = "1")]
        exponent: BigRational,
    },
    /// Grid certification of (-1)^n (±f_λ)^(n) >= 0.
    CertifyCm {
        #[arg(long, value_parser = parse_exact)]
        lambda: BigRational,
        #[arg(long, value_parser = parse_sign, default_value = "plus")]
        sign: Sign,
    },
    /// Exact θ-chain, ratio and kernel identities.
    KernelVerify,
    /// Classic inequalities and bound decompositions.
    BoundsCheck,
    /// Closed-form h_λ against quadrature of its Laplace integral.
    LaplaceCheck {
        #[arg(long, value_parser = parse_exact, value_delimiter = ',', default_values = ["0", "4"])]
        lambda: Vec<BigRational>,
        #[arg(long, value_parser = parse_exact, value_delimiter = ',', default_values = ["1", "2", "5"])]
        x: Vec<BigRational>,
    },
    /// λ(x) on the grid and its asymptotic model.
    Profile,
    /// Witnesses that neither f_λ nor −f_λ is nonnegative for 0 < λ < 4.
    SweepSharpness {
        #[arg(long, value_parser = parse_exact, value_delimiter = ',')]
        lambda: Vec<BigRational>,
    },
    /// Exploratory scan of the exponent conjecture.
    ConjectureScan {
        #[arg(long, value_parser = parse_exact, value_delimiter = ',', default_values = ["6/5"])]
        alpha: Vec<BigRational>,
        #[arg(long, value_parser = parse_exact, value_delimiter = ',', default_values = ["1"])]
        beta: Vec<BigRational>,
    },
    /// Every suite.
    All,
}

fn parse_exact(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    GridSpec::parse(s).map_err(|e| e.to_string())
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn rats(v: &[BigRational]) -> Value {
    v.iter().map(|q| Value::String(q.to_string())).collect()
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::CertifyCm { .. } => "certify-cm",
            Command::KernelVerify => "kernel-verify",
            Command::BoundsCheck => "bounds-check",
            Command::LaplaceCheck { .. } => "laplace-check",
            Command::Profile => "profile",
            Command::SweepSharpness { .. } => "sweep-sharpness",
            Command::ConjectureScan { .. } => "conjecture-scan",
            Command::All => "all",
        }
    }

    fn params(&self) -> Map<String, Value> {
        let mut m = Map::new();
        match self {
            Command::Eval { name, lambda, x, exponent } => {
                m.insert("fn".into(), json!(name));
                m.insert("lambda".into(), json!(lambda.to_string()));
                m.insert("x".into(), json!(x.to_string()));
                m.insert("exponent".into(), json!(exponent.to_string()));
            }
            Command::CertifyCm { lambda, sign } => {
                m.insert("lambda".into(), json!(lambda.to_string()));
                m.insert("sign".into(), json!(sign.to_string()));
            }
            Command::LaplaceCheck { lambda, x } => {
                m.insert("lambda".into(), rats(lambda));
                m.insert("x".into(), rats(x));
            }
            Command::SweepSharpness { lambda } => {
                m.insert("lambda".into(), rats(&sharpness_lambdas(lambda)));
            }
            Command::ConjectureScan { alpha, beta } => {
                m.insert("alpha".into(), rats(alpha));
                m.insert("beta".into(), rats(beta));
            }
            _ => {}
        }
        m
    }
}

fn sharpness_lambdas(given: &[BigRational]) -> Vec<BigRational> {
    if given.is_empty() {
        certify::analysis::default_sharpness_lambdas()
    } else {
        given.to_vec()
    }
}

fn eval_named(name: &str, lambda: &BigRational, x: &BigRational, exponent: &BigRational, engine: &Engine) -> cmcert::Result<Report> {
    let f = paperlib::lookup(name, lambda, exponent)?;
    let xi = Interval::from_rational(x);
    let v = match &f.body {
        Body::Closed(c) => Routes::new(c).eval(&xi, engine)?,
        _ => f.eval(&xi, engine)?,
    };
    let mut r = Report::new();
    let w = Witness::enclosure(name, Some(xi.mid()), None, &v, Status::Pass);
    r.push(Check::new(format!("eval/{name}"), Status::Pass).with_witness(w).with_detail(format!("domain {}", f.domain)));
    Ok(r)
}

fn run(cmd: &Command, common: &Common, engine: &Engine) -> cmcert::Result<Report> {
    let mut cfg = SuiteConfig::default();
    if let Some(g) = &common.grid {
        cfg.grid = g.clone();
    }
    cfg.orders = common.orders;
    cfg.tol = common.tol;
    let grid = &cfg.grid;
    match cmd {
        Command::Eval { name, lambda, x, exponent } => eval_named(name, lambda, x, exponent, engine),
        Command::CertifyCm { lambda, sign } => {
            let f = f_lambda(lambda, FForm::Direct);
            Ok(certify::check_cm(&format!("cm/f/lambda={lambda}"), &f, *sign, cfg.orders, grid, engine)?.to_report())
        }
        Command::KernelVerify => {
            let mut r = certify::verify_kernel()?;
            r.extend(certify::verify_ratio(&default_kernel_grid())?);
            Ok(r)
        }
        Command::BoundsCheck => {
            let mut r = certify::classic_inequalities(grid, engine)?;
            r.extend(decomposition_identities());
            Ok(r)
        }
        Command::LaplaceCheck { lambda, x } => {
            let mut r = Report::new();
            for l in lambda {
                r.extend(certify::verify_laplace(l, x, cfg.tol, engine)?.0);
            }
            Ok(r)
        }
        Command::Profile => {
            let g = common.grid.clone().unwrap_or(cfg.profile_grid);
            let mut r = certify::verify_lambda_profile(&g, engine)?;
            r.extend(certify::asymptotic_check(&[rat_int(10), rat_int(30), rat_int(100)], engine)?);
            Ok(r)
        }
        Command::SweepSharpness { lambda } => certify::sharpness_report(&sharpness_lambdas(lambda), engine),
        Command::ConjectureScan { alpha, beta } => certify::conjecture_scan(alpha, beta, grid, engine),
        Command::All => certify::run_all(&cfg, engine),
    }
}

fn config_json(cli: &Cli) -> Value {
    let c = &cli.common;
    let mut m = cli.command.params();
    let grid = c.grid.clone().unwrap_or_else(|| SuiteConfig::default().grid);
    m.insert("grid".into(), json!(grid.to_string()));
    m.insert("orders".into(), json!(c.orders));
    m.insert("tol".into(), json!(c.tol));
    m.insert("allow_indeterminate".into(), json!(c.allow_indeterminate));
    Value::Object(m)
}

fn render_json(cli: &Cli, r: &Report) -> String {
    let mut doc = json!({
        "command": cli.command.name(),
        "config": config_json(cli),
        "checks": r.checks,
        "summary": r.summary(),
    });
    if !r.discrepancies.is_empty() {
        doc["discrepancies"] = json!(r.discrepancies);
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

fn render_csv(r: &Report) -> io::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["check", "x", "n", "lo", "hi", "status"])?;
    let opt = |v: Option<String>| v.unwrap_or_default();
    for c in &r.checks {
        if c.witnesses.is_empty() {
            w.write_record([c.name.as_str(), "", "", "", "", c.status.as_str()])?;
        }
        for wt in &c.witnesses {
            w.write_record([
                c.name.clone(),
                opt(wt.x.map(|x| format!("{x:e}"))),
                opt(wt.n.map(|n| n.to_string())),
                format!("{:e}", wt.lo),
                format!("{:e}", wt.hi),
                wt.status.as_str().to_string(),
            ])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| io::Error::new(io::ErrorKind::Other, e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::Parse(_) | Error::Config(_) => ExitCode::from(2),
        Error::Domain(_) | Error::Inconsistent(_) => ExitCode::from(3),
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
    if let Ok(n) = std::env::var("CM_CERTIFY_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: CM_CERTIFY_THREADS must be a positive integer, got {n:?}");
                return ExitCode::from(2);
            }
        }
    }
    let engine = Engine::default();
    let report = match run(&cli.command, &cli.common, &engine) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_for(&e);
        }
    };
    let text = match cli.common.format {
        Format::Json => render_json(&cli, &report),
        Format::Csv => match render_csv(&report) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
        },
    };
    let written = match &cli.common.out {
        Some(p) => fs::write(p, &text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(2);
    }
    let s = report.summary();
    eprintln!(
        "{}: {} checks, {} pass, {} fail, {} indeterminate",
        cli.command.name(),
        s.total,
        s.pass,
        s.fail,
        s.indeterminate
    );
    let ok = match report.status() {
        Status::Pass => true,
        Status::Indeterminate => cli.common.allow_indeterminate,
        Status::Fail => false,
    };
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
