//! `pnscheme`: proof nets, their ideals, and the numerics around them.
//!
//! Exit codes: 0 success, 1 verification failure, 2 resource limit, 64 usage or input error.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pnscheme::hilbert::{d_binomial_expansion, gotzmann_number, hilbert_function, macaulay_bracket, macaulay_diff_set, Grading, HilbertError};
use pnscheme::invariance::{check_invariance, church_power, InvarianceError};
use pnscheme::net::{church, church_cut_against_zero, validate_shallow, NetError, ProofNet};
use pnscheme::poly::{
    buchberger_over, dehomogenize, eliminate_over, format_ideal, format_polynomial, parse_field_spec, parse_ideal, parse_order, Ideal,
    Limits, MonomialOrder, PolyError, PrimeField,
};
use pnscheme::reduction::{find_redexes, normalize, pick, reduce_step, ReductionError, Step, Strategy};
use pnscheme::scheme::{net_ideal, SchemeError, SchemeOptions};
use serde_json::json;

#[derive(Parser)]
#[command(name = "pnscheme", version, about = "Shallow MELL proof nets as polynomial ideals")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

/// Every flag can also be set through the environment variable named next to it.
#[derive(Args)]
struct Config {
    /// Monomial order: grevlex, lex or elim:<v1,v2,...>
    #[arg(long, global = true, env = "PNSCHEME_ORDER", default_value = "grevlex")]
    order: String,
    /// Coefficient field: q or fp:<p>
    #[arg(long, global = true, env = "PNSCHEME_FIELD", default_value = "q")]
    field: String,
    /// Largest degree of a Hilbert table
    #[arg(long, global = true, env = "PNSCHEME_DMAX", default_value_t = 12)]
    dmax: u32,
    /// Degree of the slice carrying box charts
    #[arg(long = "truncation-degree", global = true, env = "PNSCHEME_TRUNCATION_DEGREE", default_value_t = 1)]
    truncation_degree: u32,
    /// Largest number of reduction steps
    #[arg(long, global = true, env = "PNSCHEME_FUEL", default_value_t = 1000)]
    fuel: usize,
    /// Redex choice: leftmost or by-kind
    #[arg(long, global = true, env = "PNSCHEME_STRATEGY", default_value = "leftmost")]
    strategy: String,
    /// Largest S-pair degree before giving up
    #[arg(long = "max-degree", global = true, env = "PNSCHEME_MAX_DEGREE", default_value_t = Limits::default().max_degree)]
    max_degree: u32,
    /// Largest working basis before giving up
    #[arg(long = "max-basis", global = true, env = "PNSCHEME_MAX_BASIS", default_value_t = Limits::default().max_basis)]
    max_basis: usize,
    #[arg(long, global = true, env = "PNSCHEME_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a net is shallow; exits 1 otherwise
    Validate { net: Option<PathBuf> },
    /// Apply reduction steps and print the resulting net
    Reduce {
        net: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Write one JSON record per step to this file
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Reduce to a cut-free net
    Normalize {
        net: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Print the net ideal and its variable registry
    Ideal {
        net: Option<PathBuf>,
        /// Set the primed variables to 1
        #[arg(long)]
        dehomogenize: bool,
    },
    /// Reduced Gröbner basis of an ideal file
    Gb { ideal: Option<PathBuf> },
    /// Elimination ideal keeping the listed variables
    Eliminate {
        ideal: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<String>,
    },
    /// Hilbert table in the grading that pairs each x with x'
    Hilbert { ideal: Option<PathBuf> },
    /// Gotzmann number of a Hilbert table (TSV `d h` lines, as printed by `hilbert`)
    Gotzmann { table: Option<PathBuf> },
    /// d-binomial expansion, difference set and bracket of c
    Macaulay { c: u64, d: u32 },
    /// Church numeral net
    Church {
        n: usize,
        /// Cut the numeral against the promoted zero
        #[arg(long)]
        cut_against_zero: bool,
        /// Print the relation between the numeral's endpoints instead of the net
        #[arg(long, conflicts_with = "cut_against_zero")]
        power: bool,
    },
    /// Compare eliminated conclusion ideals before and after reduction
    Check {
        net: Option<PathBuf>,
        /// Steps to apply; normal form when omitted
        #[arg(long)]
        steps: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Resource(_) => 2,
            Failure::Usage(_) => 64,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) | Failure::Resource(m) => m,
        }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::ResourceLimit(_) => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<NetError> for Failure {
    fn from(e: NetError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::FuelExhausted(_) => Failure::Resource(e.to_string()),
            ReductionError::Net(n) => n.into(),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

impl From<SchemeError> for Failure {
    fn from(e: SchemeError) -> Self {
        match e {
            SchemeError::Poly(p) => p.into(),
            SchemeError::Net(n) => n.into(),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

impl From<InvarianceError> for Failure {
    fn from(e: InvarianceError) -> Self {
        if e.is_resource_limit() {
            return Failure::Resource(e.to_string());
        }
        match e {
            InvarianceError::Scheme(s) => s.into(),
            InvarianceError::Reduction(r) => r.into(),
            InvarianceError::Poly(p) => p.into(),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

impl From<HilbertError> for Failure {
    fn from(e: HilbertError) -> Self {
        match e {
            HilbertError::ResourceLimit(_) | HilbertError::NotStabilized(_) => Failure::Resource(e.to_string()),
            HilbertError::Poly(p) => p.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Ctx {
    limits: Limits,
    prime: Option<PrimeField>,
    strategy: Strategy,
    opts: SchemeOptions,
    config: Config,
}

impl Ctx {
    fn new(config: Config) -> Result<Self, Failure> {
        if config.dmax < 2 {
            return Err(Failure::Usage("--dmax must be at least 2".into()));
        }
        if config.truncation_degree == 0 {
            return Err(Failure::Usage("--truncation-degree must be positive".into()));
        }
        let prime = parse_field_spec(&config.field)?;
        let strategy = config.strategy.parse().map_err(Failure::Usage)?;
        Ok(Ctx {
            limits: Limits { max_degree: config.max_degree, max_basis: config.max_basis },
            prime,
            strategy,
            opts: SchemeOptions { truncation: config.truncation_degree },
            config,
        })
    }

    fn json(&self) -> bool {
        self.config.format == Format::Json
    }

    fn order(&self, ideal: &Ideal) -> Result<MonomialOrder, Failure> {
        Ok(parse_order(&self.config.order, &ideal.ring)?)
    }
}

fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn read_net(path: Option<&Path>) -> Result<ProofNet, Failure> {
    Ok(ProofNet::from_json(&read_input(path)?)?)
}

fn read_ideal(path: Option<&Path>) -> Result<Ideal, Failure> {
    Ok(parse_ideal(&read_input(path)?, None)?)
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("value serializes") + "\n"
}

fn write_trace(path: &Path, steps: &[Step]) -> Result<(), Failure> {
    let body: String = steps.iter().map(|s| serde_json::to_string(s).expect("step serializes") + "\n").collect();
    std::fs::write(path, body).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn field_name(ctx: &Ctx) -> String {
    ctx.prime.as_ref().map_or("q".to_string(), |p| format!("fp:{}", p.modulus()))
}

fn basis_output(ctx: &Ctx, ideal: &Ideal, order: &MonomialOrder) -> String {
    if ctx.json() {
        let gens: Vec<String> = ideal.gens.iter().map(|g| format_polynomial(&ideal.ring, g, order)).collect();
        pretty(&json!({"vars": ideal.ring.names(), "order": ctx.config.order, "field": field_name(ctx), "basis": gens}))
    } else {
        format_ideal(ideal, order)
    }
}

fn run(cmd: Command, ctx: &Ctx) -> Result<String, Failure> {
    match cmd {
        Command::Validate { net } => {
            let report = validate_shallow(&read_net(net.as_deref())?);
            let out = if ctx.json() {
                pretty(&report)
            } else {
                let mut s = String::from(if report.shallow { "shallow\n" } else { "not shallow\n" });
                for v in &report.violations {
                    s.push_str(&format!("  {:?} at {}: {}\n", v.rule, v.location, v.detail));
                }
                s
            };
            if report.shallow {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Verification(format!("{} violation(s)", report.violations.len())))
            }
        }
        Command::Reduce { net, steps, trace } => {
            let mut cur = read_net(net.as_deref())?;
            let mut records = Vec::new();
            for k in 1..=steps {
                let redexes = find_redexes(&cur);
                let Some(r) = pick(&redexes, ctx.strategy).cloned() else { break };
                let (next, correspondence) = reduce_step(&cur, &r)?;
                records.push(Step { step: k, kind: r.kind, cut: r.cut, links: r.links, correspondence });
                cur = next;
            }
            if let Some(t) = trace {
                write_trace(&t, &records)?;
            }
            Ok(cur.to_json())
        }
        Command::Normalize { net, trace } => {
            let n = normalize(&read_net(net.as_deref())?, ctx.strategy, ctx.config.fuel)?;
            if let Some(t) = trace {
                write_trace(&t, &n.steps)?;
            }
            Ok(n.net.to_json())
        }
        Command::Ideal { net, dehomogenize: affine } => {
            let (mut ideal, registry) = net_ideal(&read_net(net.as_deref())?, &ctx.opts)?;
            if affine {
                ideal = dehomogenize(&ideal, |v| v.ends_with('\''));
            }
            let order = ctx.order(&ideal)?;
            if ctx.json() {
                let gens: Vec<String> = ideal.gens.iter().map(|g| format_polynomial(&ideal.ring, g, &order)).collect();
                Ok(pretty(&json!({"vars": ideal.ring.names(), "generators": gens, "registry": registry})))
            } else {
                let registry = serde_json::to_string(&registry).expect("registry serializes");
                Ok(format!("{}# registry: {registry}\n", format_ideal(&ideal, &order)))
            }
        }
        Command::Gb { ideal } => {
            let ideal = read_ideal(ideal.as_deref())?;
            let order = ctx.order(&ideal)?;
            let gb = buchberger_over(&ideal, ctx.prime.as_ref(), &order, ctx.limits)?;
            Ok(basis_output(ctx, &Ideal::new(ideal.ring.clone(), gb), &order))
        }
        Command::Eliminate { ideal, keep } => {
            let ideal = read_ideal(ideal.as_deref())?;
            if let Some(v) = keep.iter().find(|v| ideal.ring.index_of(v).is_none()) {
                return Err(Failure::Usage(format!("unknown variable `{v}` in --keep")));
            }
            let e = eliminate_over(&ideal, &keep, ctx.prime.as_ref(), ctx.limits)?;
            Ok(basis_output(ctx, &e, &MonomialOrder::Grevlex))
        }
        Command::Hilbert { ideal } => {
            let ideal = read_ideal(ideal.as_deref())?;
            let table = hilbert_function(&ideal, &Grading::from_primed_pairs(&ideal.ring), ctx.config.dmax)?;
            let footer = match gotzmann_number(&table) {
                Ok(g) => json!({"j": g.j, "gotzmann": g.gotzmann, "diff_set": g.diff_set}),
                Err(HilbertError::NotStabilized(_)) => json!({"j": null, "gotzmann": null, "diff_set": null}),
                Err(e) => return Err(e.into()),
            };
            if ctx.json() {
                let mut v = footer;
                v["table"] = json!(table);
                Ok(pretty(&v))
            } else {
                let mut s: String = table.iter().enumerate().map(|(d, h)| format!("{d}\t{h}\n")).collect();
                s.push_str(&(footer.to_string() + "\n"));
                Ok(s)
            }
        }
        Command::Gotzmann { table } => {
            let mut values = Vec::new();
            for line in read_input(table.as_deref())?.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') || line.starts_with('{') {
                    continue;
                }
                let cols: Vec<&str> = line.split_whitespace().collect();
                let h = match cols.as_slice() {
                    [d, h] if d.parse::<usize>().ok() == Some(values.len()) => h.parse::<u64>().ok(),
                    _ => None,
                };
                let Some(h) = h else {
                    return Err(Failure::Usage(format!("expected `{}<TAB>h`, got `{line}`", values.len())));
                };
                values.push(h);
            }
            let g = gotzmann_number(&values)?;
            Ok(if ctx.json() { pretty(&g) } else { format!("{}\n", g.gotzmann) })
        }
        Command::Macaulay { c, d } => {
            if c == 0 || d == 0 {
                return Err(Failure::Usage("c and d must be positive".into()));
            }
            let e = d_binomial_expansion(c, d)?;
            let diff = macaulay_diff_set(c, d)?;
            let bracket = macaulay_bracket(c, d)?;
            if ctx.json() {
                let terms: Vec<_> = e.iter().map(|&(k, i)| json!({"k": k, "i": i})).collect();
                Ok(pretty(&json!({"c": c, "d": d, "expansion": terms, "diff_set": diff, "bracket": bracket})))
            } else {
                let terms: Vec<String> = e.iter().map(|(k, i)| format!("C({k},{i})")).collect();
                let diff: Vec<String> = diff.iter().map(u64::to_string).collect();
                Ok(format!("{c} = {}\ndiff set: ({})\nbracket: {bracket}\n", terms.join(" + "), diff.join(",")))
            }
        }
        Command::Church { n, cut_against_zero, power } => {
            if power {
                let p = church_power(n, ctx.limits)?;
                return Ok(if ctx.json() { pretty(&p) } else { format!("{}\n", p.relation) });
            }
            Ok(if cut_against_zero { church_cut_against_zero(n) } else { church(n) }.to_json())
        }
        Command::Check { net, steps } => {
            let net = read_net(net.as_deref())?;
            let report = check_invariance(&net, ctx.strategy, steps, ctx.config.fuel, &ctx.opts, ctx.limits)?;
            let out = pretty(&report);
            if report.equal {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Verification("eliminated conclusion ideals differ".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 64 } else { 0 });
        }
    };
    let result = Ctx::new(cli.config).and_then(|ctx| run(cli.command, &ctx));
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("pnscheme: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
