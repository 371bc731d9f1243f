//! The `hornkit` command line.
//!
//! Exit status: 0 when the product is nonzero (or the command succeeded),
//! 10 when it is zero, 2 on malformed input, 1 on any other failure.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hornkit::diagram::{inequality_text, overlay, pattern_grid, two_step_grid, witness_diagram};
use hornkit::exactla::{Field, DEFAULT_PRIME};
use hornkit::horn::{horn_verdict, lr_verdict, numeric_verdict, HornSolver, Verdict};
use hornkit::parse::{parse_classes, parse_shape, parse_step_string};
use hornkit::strings::{string_to_partition, Partition, StepString};
use hornkit::tangent::{blocks_of, common_shape, hat_x, hat_y, Block, PatternSpace};
use hornkit::witness::find_witness;
use hornkit::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NONZERO: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_ZERO: u8 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Diagram,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Horn,
    Lr,
    Numeric,
    All,
}

#[derive(Debug, Parser)]
#[command(name = "hornkit", version, about = "Vanishing of Grassmannian Schubert products")]
pub struct Cli {
    /// Prime modulus for the randomized linear algebra.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    pub prime: u64,

    #[arg(long, global = true, env = "HORNKIT_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Independent samples for the numeric method.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a product of classes is zero, e.g. "0,1,3,3/4x5 ; 3,3,3,5/4x5".
    Check {
        classes: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Horn)]
        method: MethodArg,
    },
    /// List the Horn inequalities for s classes on Gr(r, n).
    Inequalities {
        r: usize,
        n: usize,
        s: usize,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Find a violated Horn inequality for a vanishing product.
    Witness { classes: String },
    /// Draw the tangent pattern of a partition or a 012-string.
    Diagram {
        input: String,
        /// "d,r,n" for a 012-string; inferred from the letters when omitted.
        #[arg(long)]
        shape: Option<String>,
    },
}

/// Settings shared by every command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub field: Field,
    pub seed: u64,
    pub trials: usize,
    pub format: Format,
}

enum Failure {
    Input { source: String, err: Error },
    Usage(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Input { source: String::new(), err: e },
            Error::InvalidPartition(_) | Error::InvalidString(_) | Error::ShapeMismatch(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

fn with_source<T>(src: &str, r: Result<T, Error>) -> Result<T, Failure> {
    r.map_err(|err| match err {
        Error::Parse { .. } => Failure::Input { source: src.to_string(), err },
        other => Failure::from(other),
    })
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let to_stdout = !e.use_stderr();
            let _ = if to_stdout { write!(out, "{e}") } else { write!(err, "{e}") };
            return if to_stdout { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Input { source, err: e }) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::Parse { pos, .. } = e {
                if !source.is_empty() {
                    let col = source.get(..pos).map_or(pos, |s| s.chars().count());
                    let _ = writeln!(err, "  {source}\n  {}^", " ".repeat(col));
                }
            }
            EXIT_USAGE
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Other(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<u8, Failure> {
    let field = Field::new(cli.prime).map_err(|e| Failure::Usage(e.to_string()))?;
    let config = RunConfig { field, seed: cli.seed, trials: cli.trials as usize, format: cli.format };
    match &cli.command {
        Command::Check { classes, method } => {
            let ls = with_source(classes, parse_classes(classes))?;
            check(&config, &ls, *method, out)
        }
        Command::Inequalities { r, n, s, limit } => inequalities(&config, *r, *n, *s, *limit, out),
        Command::Witness { classes } => {
            let ls = with_source(classes, parse_classes(classes))?;
            witness(&config, &ls, out)
        }
        Command::Diagram { input, shape } => diagram(&config, input, shape.as_deref(), out),
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Other(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

#[derive(Serialize)]
struct CheckReport<'a> {
    classes: &'a [Partition],
    r: usize,
    n: usize,
    prime: u64,
    seed: u64,
    trials: usize,
    nonzero: bool,
    agree: bool,
    verdicts: Vec<Verdict>,
}

fn verdict_line(v: &Verdict) -> String {
    let word = if v.nonzero { "nonzero" } else { "zero" };
    let mut line = format!("{}: {word}", v.method);
    if let Some(viol) = &v.violated {
        line += &format!("; violated {} (slack {})", inequality_text(&viol.inequality), viol.slack);
    }
    if let Some(t) = &v.transversality {
        line += &format!(
            "; intersection dim {} expected {} in dim {}",
            t.achieved_dim, t.expected_dim, t.ambient_dim
        );
    }
    line
}

fn check(config: &RunConfig, ls: &[Partition], method: MethodArg, out: &mut dyn Write) -> Result<u8, Failure> {
    let (r, c) = common_shape(ls)?;
    let mut verdicts = Vec::new();
    if matches!(method, MethodArg::Horn | MethodArg::All) {
        verdicts.push(horn_verdict(ls)?);
    }
    if matches!(method, MethodArg::Lr | MethodArg::All) {
        verdicts.push(lr_verdict(ls)?);
    }
    if matches!(method, MethodArg::Numeric | MethodArg::All) {
        verdicts.push(numeric_verdict(config.field, ls, config.seed, config.trials)?);
    }
    let nonzero = verdicts[0].nonzero;
    let agree = verdicts.iter().all(|v| v.nonzero == nonzero);
    let report = CheckReport {
        classes: ls,
        r,
        n: r + c,
        prime: config.field.modulus(),
        seed: config.seed,
        trials: config.trials,
        nonzero,
        agree,
        verdicts,
    };
    match config.format {
        Format::Json => write_json(out, &report)?,
        Format::Text | Format::Diagram => {
            if config.format == Format::Diagram {
                out.write_all(overlay(&ls.iter().map(hat_x).collect::<Vec<_>>()).as_bytes())?;
            }
            let names: Vec<String> = ls.iter().map(ToString::to_string).collect();
            writeln!(out, "classes {} in Gr({r},{})", names.join(" ; "), r + c)?;
            for v in &report.verdicts {
                writeln!(out, "{}", verdict_line(v))?;
            }
        }
    }
    if !agree {
        return Err(Failure::Other("the methods disagree".into()));
    }
    Ok(if nonzero { EXIT_NONZERO } else { EXIT_ZERO })
}

fn inequalities(
    config: &RunConfig,
    r: usize,
    n: usize,
    s: usize,
    limit: Option<usize>,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    let solver = HornSolver::shared();
    let stream = solver.inequalities(r, n, s)?;
    for h in stream.take(limit.unwrap_or(usize::MAX)) {
        match config.format {
            Format::Json => writeln!(out, "{}", serde_json::to_string(&h).map_err(|e| Failure::Other(e.to_string()))?)?,
            Format::Text | Format::Diagram => writeln!(out, "d={} {}", h.d, inequality_text(&h))?,
        }
    }
    Ok(EXIT_OK)
}

fn witness(config: &RunConfig, ls: &[Partition], out: &mut dyn Write) -> Result<u8, Failure> {
    let trace = find_witness(config.field, ls, config.seed)?;
    match config.format {
        Format::Json => write_json(out, &trace)?,
        Format::Diagram => out.write_all(witness_diagram(&trace).as_bytes())?,
        Format::Text => {
            for (k, level) in trace.levels.iter().enumerate() {
                let words: Vec<String> = level.kernel_positions.iter().map(ToString::to_string).collect();
                writeln!(
                    out,
                    "level {}: Gr({},{}) nullity {} kernel positions {}",
                    k + 1,
                    level.r,
                    level.n,
                    level.nullity,
                    if words.is_empty() { "-".to_string() } else { words.join(" ") }
                )?;
            }
            let certs: Vec<String> = trace.certificates.iter().map(ToString::to_string).collect();
            writeln!(out, "certificates {}", certs.join(" "))?;
            writeln!(
                out,
                "violated {} (slack {})",
                inequality_text(&trace.final_inequality),
                trace.slack
            )?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct BlockReport {
    block: &'static str,
    partition: Partition,
    grid: Vec<String>,
}

#[derive(Serialize)]
struct DiagramReport {
    input: String,
    kind: &'static str,
    dimension: usize,
    grid: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    blocks: Vec<BlockReport>,
}

fn lines(s: &str) -> Vec<String> {
    s.lines().map(str::to_string).collect()
}

fn block_name(b: Block) -> &'static str {
    match b {
        Block::ZeroOne => "01",
        Block::ZeroTwo => "02",
        Block::OneTwo => "12",
    }
}

fn diagram(config: &RunConfig, input: &str, shape: Option<&str>, out: &mut dyn Write) -> Result<u8, Failure> {
    let report = if input.contains('/') {
        let lambda = with_source(input, hornkit::parse::parse_partition(input))?;
        grassmannian_report(input, &hat_x(&lambda))
    } else {
        let sigma: StepString = with_source(input, parse_step_string(input))?;
        if sigma.steps() <= 1 && shape.is_none() {
            grassmannian_report(input, &hat_x(&string_to_partition(&sigma)?))
        } else {
            let (d, r, n) = match shape {
                Some(text) => with_source(text, parse_shape(text))?,
                None => (sigma.count(2), sigma.count(1) + sigma.count(2), sigma.len()),
            };
            let y = hat_y(&sigma, d, r, n)?;
            let blocks = Block::ALL
                .iter()
                .zip(blocks_of(&y))
                .map(|(&b, p)| BlockReport {
                    block: block_name(b),
                    partition: hornkit::tangent::block_partition(&sigma, b).expect("valid two-step string"),
                    grid: lines(&pattern_grid(&p)),
                })
                .collect();
            DiagramReport {
                input: input.trim().to_string(),
                kind: "two-step",
                dimension: y.free_count(),
                grid: lines(&two_step_grid(&y)),
                blocks,
            }
        }
    };
    match config.format {
        Format::Json => write_json(out, &report)?,
        Format::Text | Format::Diagram => {
            for line in &report.grid {
                writeln!(out, "{line}")?;
            }
            for b in &report.blocks {
                writeln!(out, "\nσ({}) = {}", b.block, b.partition)?;
                for line in &b.grid {
                    writeln!(out, "{line}")?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn grassmannian_report(input: &str, p: &PatternSpace) -> DiagramReport {
    DiagramReport {
        input: input.trim().to_string(),
        kind: "grassmannian",
        dimension: p.dim(),
        grid: lines(&pattern_grid(p)),
        blocks: Vec::new(),
    }
}
