//! `hallrf`: command-line front end for the Hall-group toolkit.
//!
//! Exit status is 0 on success, 1 when the computation itself fails (bad
//! word, search exhausted, witness not found) and 2 on usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use hallrf::dfunc::{period_mod, DFunction, GrowthFn, PrimeFunction};
use hallrf::growth::interval::rational_to_f64;
use hallrf::growth::{
    build_d, build_p, build_q, check_intermediate, check_sequence_lemmas, tower_grid, CompRoot, DTerm,
    LogScaleNumber, PTerm,
};
use hallrf::hall::{word_norm, GroupElement, QuotientSpec, DEFAULT_RADIUS_CAP};
use hallrf::harness::{rf_lower_probe, rf_upper_table, table_csv, ExperimentConfig, TableCertificate, WitnessCertificate};
use hallrf::params::SequenceParams;
use hallrf::witness::{conj_membership_test, gint_witness, lamplighter_witness, verify_witness};
use num_rational::BigRational;

#[derive(Parser)]
#[command(name = "hallrf", version, about = "Exact computation in Hall's group and its quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    /// Hall's group with free centre.
    Free,
    /// `Z wr Z` (trivial centre).
    Lamplighter,
    /// `G_d` for the Hall d-function with trivial prime function.
    Hall,
    /// `G_d` for the fast-growth d-function with `f = identity`.
    FastGrowth,
    /// Relation-centre group on the toy parameters `d = (2, 4)`, `q = (35, 7)`.
    Toy,
}

#[derive(Clone, Copy, ValueEnum)]
enum DName {
    Hall,
    FastGrowth,
    Identity,
    Zero,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sequence {
    D,
    P,
    Q,
    Lemmas,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of a word.
    Reduce {
        word: String,
        #[arg(long, value_enum, default_value = "free")]
        group: Group,
    },
    /// Word length with respect to `{t, a_0}`.
    WordNorm {
        word: String,
        #[arg(long, value_enum, default_value = "free")]
        group: Group,
        #[arg(long, default_value_t = DEFAULT_RADIUS_CAP)]
        cap: u32,
    },
    /// Find and verify a finite quotient in which the element survives.
    Separate {
        word: String,
        #[arg(long, value_enum)]
        group: Group,
    },
    /// Residual-finiteness table from a TOML experiment config.
    RfTable {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        /// Overrides `output` from the config; `-` for stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Periods of `d mod q`.
    Period {
        #[arg(long, value_enum, default_value = "fast-growth")]
        d: DName,
        /// TOML file describing the d-function (overrides `--d`).
        #[arg(long)]
        d_config: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 4, 5, 7, 8, 9])]
        q: Vec<u64>,
        #[arg(long, default_value_t = 100_000)]
        bound: u64,
    },
    /// Decide conjugacy of `g1 = a_0 ... a_{3^i - 1}` and `g1 c_1^{n(i)/p^i}`.
    ConjTest {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        p: u64,
        /// Scripted prime function as `index:prime` pairs; trivial when absent.
        #[arg(long, value_delimiter = ',')]
        script: Vec<String>,
        #[arg(long, default_value_t = 1_000)]
        bound: u64,
    },
    /// Lower-bound probe for `G_d` with fast-growth `d`.
    Probe {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 9)]
        q_max: u64,
        #[arg(long, default_value_t = 100_000)]
        bound: u64,
    },
    /// Growth sequences as CSV.
    Seq {
        #[arg(value_enum)]
        which: Sequence,
        #[arg(long, default_value_t = 4)]
        count: usize,
        /// Index for `q`.
        #[arg(long, default_value_t = 1)]
        n: i64,
    },
    /// Compositional root of `exp`: values, or the intermediate-growth scan.
    Froot {
        /// `n` with `f^n = exp` (equally spaced breakpoints).
        #[arg(long, default_value_t = 10)]
        order: u32,
        /// Points to evaluate; runs the growth scan when absent.
        #[arg(long, value_delimiter = ',')]
        x: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<hallrf::Error> for Failure {
    fn from(e: hallrf::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Domain(e)
    }
}

type CliResult = Result<(), Failure>;

fn spec_of(group: Group) -> Result<QuotientSpec, Failure> {
    Ok(match group {
        Group::Free => QuotientSpec::FreeCenter,
        Group::Lamplighter => QuotientSpec::TrivialCenter,
        Group::Hall => QuotientSpec::cyclic(DFunction::hall_trivial()),
        Group::FastGrowth => QuotientSpec::cyclic(fast_identity()?),
        Group::Toy => QuotientSpec::relation(SequenceParams::toy()),
    })
}

fn fast_identity() -> Result<DFunction, Failure> {
    Ok(DFunction::fast_growth(GrowthFn::Identity)?)
}

fn parse(word: &str, group: Group) -> Result<GroupElement, Failure> {
    Ok(GroupElement::parse(word, &spec_of(group)?)?)
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(|e| Failure::Domain(e.to_string()))
}

fn reduce(word: &str, group: Group) -> CliResult {
    println!("{}", parse(word, group)?);
    Ok(())
}

fn norm(word: &str, group: Group, cap: u32) -> CliResult {
    let g = parse(word, group)?;
    match word_norm(&g, cap)? {
        Some(k) => {
            println!("{k}");
            Ok(())
        }
        None => Err(format!("norm of {g} exceeds {cap}").into()),
    }
}

fn separate(word: &str, group: Group) -> CliResult {
    let g = parse(word, group)?;
    let witness = match group {
        Group::Lamplighter => lamplighter_witness(&g)?,
        Group::Toy => gint_witness(&g)?.witness,
        _ => return Err(Failure::Usage("separate supports --group lamplighter or toy".into())),
    };
    let cert = WitnessCertificate::new(&g, witness);
    cert.verify(g.spec())?;
    let check = verify_witness(&g, &cert.witness)?;
    println!("{}", cert.to_json());
    eprintln!("element: {g}");
    eprintln!("image: {}", check.image);
    eprintln!("quotient order: {}", check.order);
    eprintln!("verified: {}", check.nontrivial);
    Ok(())
}

fn write_out(target: Option<&str>, text: &str) -> CliResult {
    match target {
        None | Some("-") => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text).map_err(|e| format!("{path}: {e}").into()),
    }
}

fn rf_table(path: &Path, format: TableFormat, out: Option<String>) -> CliResult {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let config = ExperimentConfig::from_toml(&text)?;
    let rows = rf_upper_table(&config)?;
    let body = match format {
        TableFormat::Csv => table_csv(&rows),
        TableFormat::Json => TableCertificate::new(&config, rows).to_json() + "\n",
    };
    write_out(out.as_deref().or(config.output.as_deref()), &body)
}

fn load_d(name: DName, config: Option<&Path>) -> Result<DFunction, Failure> {
    if let Some(path) = config {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        return toml::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())));
    }
    Ok(match name {
        DName::Hall => DFunction::hall_trivial(),
        DName::FastGrowth => fast_identity()?,
        DName::Identity => DFunction::Identity,
        DName::Zero => DFunction::Zero,
    })
}

fn period(d: &DFunction, qs: &[u64], bound: u64) -> CliResult {
    println!("q,period,window");
    for &q in qs {
        match period_mod(d, q, bound)? {
            Some(c) => println!("{q},{},{}", c.period, c.window),
            None => println!("{q},,"),
        }
    }
    Ok(())
}

fn parse_script(entries: &[String]) -> Result<PrimeFunction, Failure> {
    if entries.is_empty() {
        return Ok(PrimeFunction::Trivial);
    }
    let pairs = entries
        .iter()
        .map(|s| {
            let bad = || Failure::Usage(format!("expected index:prime, got {s}"));
            let (j, p) = s.split_once(':').ok_or_else(bad)?;
            Ok((j.trim().parse::<u64>().map_err(|_| bad())?, p.trim().parse::<u64>().map_err(|_| bad())?))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let pf = PrimeFunction::Scripted { entries: pairs };
    pf.validate()?;
    Ok(pf)
}

fn conj_test(i: u32, p: u64, script: &[String], bound: u64) -> CliResult {
    let pf = parse_script(script)?;
    let verdict = conj_membership_test(i, p, &pf, bound)?;
    println!("{}", json(&verdict)?);
    Ok(())
}

fn probe(n: u64, q_max: u64, bound: u64) -> CliResult {
    let report = rf_lower_probe(Arc::new(fast_identity()?), n, q_max, bound)?;
    println!("{}", json(&report)?);
    Ok(())
}

fn seq(which: Sequence, count: usize, n: i64) -> CliResult {
    let root = CompRoot::equally_spaced(10)?;
    match which {
        Sequence::D => {
            println!("index,exact,descriptor");
            for t in build_d(count)? {
                match t {
                    DTerm::Exact { index, value, .. } => println!("{index},{value},"),
                    DTerm::Symbolic { index, tilde } => println!("{index},,~{tilde}"),
                }
            }
        }
        Sequence::P => {
            println!("index,exact,proven,descriptor");
            for t in build_p(&root, count)? {
                match t {
                    PTerm::Exact { index, tilde, prime, proven } => println!("{index},{prime},{proven},~{tilde}"),
                    PTerm::Symbolic { index, tilde } => println!("{index},,,~{tilde}"),
                }
            }
        }
        Sequence::Q => {
            let ps = build_p(&root, (5 * n + 12).max(1) as usize)?;
            println!("n,value");
            println!("{n},{}", build_q(n, &ps));
        }
        Sequence::Lemmas => {
            let ds: Vec<_> = build_d(2)
                ?
                .into_iter()
                .filter_map(|t| t.value().cloned())
                .collect();
            let report = check_sequence_lemmas(&ds, 100)?;
            println!("n,d,nu2,two_power_ok,ratio_primorial,prime_cover");
            for r in &report.rows {
                let opt = |x: Option<u64>| x.map(|v| v.to_string()).unwrap_or_default();
                println!(
                    "{},{},{},{},{},{}",
                    r.n,
                    r.d,
                    r.nu2,
                    r.two_power_ok,
                    opt(r.ratio_primorial),
                    opt(r.prime_cover)
                );
            }
            if !report.all_ok {
                return Err(Failure::Domain("sequence lemma check failed".into()));
            }
        }
    }
    Ok(())
}

fn froot(order: u32, xs: &[f64], times: u32) -> CliResult {
    let root = CompRoot::equally_spaced(order)?;
    if xs.is_empty() {
        let grid = tower_grid(5, 2_000);
        println!("degree,eps,points,monotone,poly_crossover,poly_violations,eps_threshold,eps_violations");
        for degree in 1..=3 {
            for eps in [0.3, 0.5] {
                let r = check_intermediate(&root, degree, eps, &grid);
                let show = |x: Option<LogScaleNumber>| x.map(|v| v.to_string()).unwrap_or_default();
                println!(
                    "{degree},{eps},{},{},{},{},{},{}",
                    r.points,
                    r.monotone,
                    show(r.poly_crossover),
                    r.poly_violations,
                    show(r.eps_threshold),
                    r.eps_violations
                );
            }
        }
        return Ok(());
    }
    println!("x,times,value,lo,hi");
    for &x in xs {
        if x.is_nan() || x < 0.0 {
            return Err(Failure::Usage(format!("x must be >= 0, got {x}")));
        }
        let v = root.iterate_log(LogScaleNumber::from_f64(x), times);
        let exact = BigRational::from_float(x).ok_or_else(|| format!("{x} is not finite"))?;
        let (lo, hi) = match root.iterate_certified(&exact, times, 40) {
            Ok(iv) => (format!("{:e}", rational_to_f64(&iv.lo)), format!("{:e}", rational_to_f64(&iv.hi))),
            Err(_) => (String::new(), String::new()),
        };
        println!("{x},{times},{v},{lo},{hi}");
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Reduce { word, group } => reduce(&word, group),
        Command::WordNorm { word, group, cap } => norm(&word, group, cap),
        Command::Separate { word, group } => separate(&word, group),
        Command::RfTable { config, format, out } => rf_table(&config, format, out),
        Command::Period { d, d_config, q, bound } => period(&load_d(d, d_config.as_deref())?, &q, bound),
        Command::ConjTest { i, p, script, bound } => conj_test(i, p, &script, bound),
        Command::Probe { n, q_max, bound } => probe(n, q_max, bound),
        Command::Seq { which, count, n } => seq(which, count, n),
        Command::Froot { order, x, times } => froot(order, &x, times),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
