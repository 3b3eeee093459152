//! `prelie`: enumerate trees, evaluate the blow-up differential, extract Lie
//! kernels and run the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use prelie::blowup::delta;
use prelie::bridge::{basis_tree_vectors, lie_kernel_basis, ComponentSpec};
use prelie::scalars::format_fraction;
use prelie::suite::{dimension_row, run_suite, DimensionRow, SuiteKind, SuiteReport};
use prelie::trees::{enumerate_special_trees, enumerate_trees, parse_tree, Mode};
use prelie::{DecoratedTree, Scalar, TreeVector};

#[derive(Parser, Debug)]
#[command(
    name = "prelie",
    version,
    about = "Free pre-Lie algebras, the blow-up differential and its Lie kernel"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Worker threads; never changes the output.
    #[arg(long, global = true, env = "PRELIE_THREADS", value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tree enumeration.
    Trees {
        #[command(subcommand)]
        command: TreesCommand,
    },
    /// Apply δ to a degree-0 tree, e.g. `delta "1(2,3)"`.
    Delta { tree: String },
    /// Reduced basis of ker δ on one component.
    Kernel {
        #[arg(long, value_parser = positive)]
        n: usize,
        #[command(flatten)]
        component: ComponentArgs,
    },
    /// Run verification suites up to a size bound.
    Verify {
        suite: VerifyTarget,
        #[arg(long, value_parser = positive)]
        max_n: usize,
        /// Largest accepted --max-n.
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// Table of tree counts, rank and kernel dimension of δ.
    Dims {
        #[arg(long, value_parser = positive)]
        max_n: usize,
        #[command(flatten)]
        component: ComponentArgs,
    },
}

#[derive(Subcommand, Debug)]
enum TreesCommand {
    /// List canonical trees, one per line, sorted.
    Enum {
        #[arg(long, value_parser = positive)]
        n: usize,
        /// List degree-1 trees (one extra `@` vertex).
        #[arg(long)]
        special: bool,
        /// Decorate from an alphabet of this size instead of multilinearly.
        #[arg(long, value_parser = positive_u32)]
        alphabet: Option<u32>,
    },
}

#[derive(Args, Debug)]
struct ComponentArgs {
    /// Decorate from an alphabet of this size instead of multilinearly.
    #[arg(long, value_parser = positive_u32)]
    alphabet: Option<u32>,
    /// Largest accepted size.
    #[arg(long, default_value_t = 6)]
    bound: usize,
}

impl ComponentArgs {
    fn mode(&self) -> Mode {
        mode_of(self.alphabet)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyTarget {
    All,
    Square,
    Leibniz,
    Prelie,
    Oracle,
}

impl VerifyTarget {
    fn suites(self) -> Vec<SuiteKind> {
        match self {
            Self::All => SuiteKind::ALL.to_vec(),
            Self::Square => vec![SuiteKind::Square],
            Self::Leibniz => vec![SuiteKind::Leibniz],
            Self::Prelie => vec![SuiteKind::Prelie],
            Self::Oracle => vec![SuiteKind::Oracle],
        }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_u32(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn mode_of(alphabet: Option<u32>) -> Mode {
    alphabet.map_or(Mode::Multilinear, Mode::Alphabet)
}

/// Failure of a command, mapped onto the exit-code contract.
enum Failure {
    Usage(String),
    Verification,
}

impl From<prelie::Error> for Failure {
    fn from(e: prelie::Error) -> Self {
        Self::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::Usage(format!("output error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self::Usage(format!("output error: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

fn check_bound(n: usize, bound: usize) -> CmdResult {
    if n > bound {
        return Err(Failure::Usage(format!("size {n} exceeds --bound {bound}")));
    }
    Ok(())
}

/// Signed coefficient for plain output: `+1`, `-2`, `+3/2`.
fn plain_coefficient(c: &Scalar) -> String {
    let s = c.to_string();
    if s.starts_with('-') {
        s
    } else {
        format!("+{s}")
    }
}

fn term_json(t: &DecoratedTree, c: &Scalar) -> Value {
    json!({ "coefficient": format_fraction(c), "tree": t.to_string() })
}

fn vector_json(x: &TreeVector) -> Value {
    Value::Array(x.iter().map(|(t, c)| term_json(t, c)).collect())
}

fn write_json(out: &mut impl Write, v: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}

fn cmd_enum(out: &mut impl Write, format: Format, n: usize, special: bool, alphabet: Option<u32>) -> CmdResult {
    let mode = mode_of(alphabet);
    let trees = if special {
        enumerate_special_trees(n, mode)?
    } else {
        enumerate_trees(n, mode)?
    };
    match format {
        Format::Plain => {
            for t in &trees {
                writeln!(out, "{t}")?;
            }
        }
        Format::Json => write_json(out, &Value::Array(trees.iter().map(|t| json!(t.to_string())).collect()))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["tree"])?;
            for t in &trees {
                w.write_record([t.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_delta(out: &mut impl Write, format: Format, expr: &str) -> CmdResult {
    let t = parse_tree(expr)?;
    let d = delta(&TreeVector::from_tree(t))?;
    match format {
        Format::Plain => {
            if d.is_zero() {
                writeln!(out, "0")?;
            }
            for (t, c) in d.iter() {
                writeln!(out, "{} {t}", plain_coefficient(c))?;
            }
        }
        Format::Json => write_json(out, &vector_json(&d))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["coefficient", "tree"])?;
            for (t, c) in d.iter() {
                w.write_record([format_fraction(c), t.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_kernel(out: &mut impl Write, format: Format, n: usize, args: &ComponentArgs) -> CmdResult {
    check_bound(n, args.bound)?;
    let basis = basis_tree_vectors(&lie_kernel_basis(ComponentSpec::new(n, args.mode())?)?);
    match format {
        Format::Plain => {
            for (i, v) in basis.iter().enumerate() {
                writeln!(out, "v{}: {v}", i + 1)?;
            }
            writeln!(out, "dim = {}", basis.len())?;
        }
        Format::Json => write_json(
            out,
            &json!({ "dim": basis.len(), "basis": basis.iter().map(vector_json).collect::<Vec<_>>() }),
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["vector", "coefficient", "tree"])?;
            for (i, v) in basis.iter().enumerate() {
                for (t, c) in v.iter() {
                    w.write_record([(i + 1).to_string(), format_fraction(c), t.to_string()])?;
                }
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn cmd_verify(out: &mut impl Write, format: Format, target: VerifyTarget, max_n: usize, bound: usize) -> CmdResult {
    check_bound(max_n, bound)?;
    let reports: Vec<SuiteReport> = target
        .suites()
        .into_iter()
        .map(|k| run_suite(k, max_n))
        .collect::<prelie::Result<_>>()?;
    let passed = reports.iter().all(SuiteReport::passed);
    match format {
        Format::Plain => {
            for r in &reports {
                writeln!(out, "suite {} (max-n {}): {}", r.kind, r.max_n, status(r.passed()))?;
                for c in &r.checks {
                    writeln!(
                        out,
                        "  {}: {} ({} cases, {} failed)",
                        c.name,
                        status(c.passed()),
                        c.cases,
                        c.failed
                    )?;
                    for e in &c.examples {
                        writeln!(out, "    counterexample: {e}")?;
                    }
                }
            }
            writeln!(out, "overall: {}", status(passed))?;
        }
        Format::Json => {
            let suites: Vec<Value> = reports
                .iter()
                .map(|r| {
                    let checks: Vec<Value> = r
                        .checks
                        .iter()
                        .map(|c| {
                            json!({
                                "name": c.name,
                                "passed": c.passed(),
                                "cases": c.cases,
                                "failed": c.failed,
                                "counterexamples": c.examples,
                            })
                        })
                        .collect();
                    json!({ "suite": r.kind.name(), "passed": r.passed(), "checks": checks })
                })
                .collect();
            write_json(out, &json!({ "max_n": max_n, "passed": passed, "suites": suites }))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["suite", "check", "cases", "failed", "status"])?;
            for r in &reports {
                for c in &r.checks {
                    w.write_record([
                        r.kind.name().to_string(),
                        c.name.clone(),
                        c.cases.to_string(),
                        c.failed.to_string(),
                        status(c.passed()).to_string(),
                    ])?;
                }
            }
            w.flush()?;
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_dims(out: &mut impl Write, format: Format, max_n: usize, args: &ComponentArgs) -> CmdResult {
    check_bound(max_n, args.bound)?;
    let rows: Vec<DimensionRow> = (1..=max_n)
        .map(|n| dimension_row(ComponentSpec::new(n, args.mode())?))
        .collect::<prelie::Result<_>>()?;
    let fields = |r: &DimensionRow| {
        [
            r.n.to_string(),
            r.trees.to_string(),
            r.special_trees.to_string(),
            r.rank.to_string(),
            r.kernel_dim.to_string(),
            r.expected.to_string(),
            if r.ok() { "ok" } else { "MISMATCH" }.to_string(),
        ]
    };
    let header = ["n", "trees", "special_trees", "rank", "kernel_dim", "expected", "match"];
    match format {
        Format::Plain => {
            writeln!(out, "{}", header.join("\t"))?;
            for r in &rows {
                writeln!(out, "{}", fields(r).join("\t"))?;
            }
        }
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "trees": r.trees,
                        "special_trees": r.special_trees,
                        "rank": r.rank,
                        "kernel_dim": r.kernel_dim,
                        "expected": r.expected,
                        "match": r.ok(),
                    })
                })
                .collect();
            write_json(out, &Value::Array(v))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(header)?;
            for r in &rows {
                w.write_record(fields(r))?;
            }
            w.flush()?;
        }
    }
    if rows.iter().all(DimensionRow::ok) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> CmdResult {
    match &cli.command {
        Command::Trees {
            command: TreesCommand::Enum { n, special, alphabet },
        } => cmd_enum(out, cli.format, *n, *special, *alphabet),
        Command::Delta { tree } => cmd_delta(out, cli.format, tree),
        Command::Kernel { n, component } => cmd_kernel(out, cli.format, *n, component),
        Command::Verify { suite, max_n, bound } => cmd_verify(out, cli.format, *suite, *max_n, *bound),
        Command::Dims { max_n, component } => cmd_dims(out, cli.format, *max_n, component),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = cli.threads {
        builder = builder.num_threads(k as usize);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("prelie: cannot start worker threads: {e}");
            return ExitCode::from(2);
        }
    };
    let mut buf = Vec::new();
    let result = pool.install(|| run(&cli, &mut buf));
    let mut stdout = io::stdout().lock();
    let flushed = stdout.write_all(&buf).and_then(|()| stdout.flush());
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(2),
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("prelie: {msg}");
            ExitCode::from(2)
        }
    }
}
