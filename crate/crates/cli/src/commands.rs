use std::fs;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hsiao::codec::parse_bits;
use hsiao::delta::{generate_delta, DeltaSpec};
use hsiao::format::{self, MatrixFormat};
use hsiao::harness::{inject_faults, measure_grid, FaultMode, Grid, WidthSelection};
use hsiao::planner::{build_check_matrix, plan_blocks, verify_hsiao, CheckMatrix};
use hsiao::{verify_balanced, DecodeOutcome, SecDed, Strategy};
use thiserror::Error;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] hsiao::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(2)
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "hsiao", version, about = "Hsiao SEC-DED check matrices from recursively balanced blocks")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate the check matrix for k data bits.
    Gen {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        render: RenderArgs,
    },
    /// Generate one balanced block with R rows, column weight J and m columns.
    Delta {
        #[arg(long = "r")]
        rows: usize,
        #[arg(long = "j")]
        weight: usize,
        #[arg(long = "m")]
        width: usize,
        #[command(flatten)]
        render: RenderArgs,
    },
    /// Check a matrix file. With --j, checks balance for column weight J;
    /// without it, checks the Hsiao conditions (odd distinct columns, row
    /// spread at most one).
    Verify {
        #[arg(long = "j")]
        weight: Option<usize>,
        #[arg(long, default_value = "txt")]
        format: MatrixFormat,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Encode a data bit string.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        /// Data bits, e.g. 0110; read from --in or stdin when omitted.
        data: Option<String>,
    },
    /// Decode a received word; prints `kind[:position] payload`.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        /// Received bits; read from --in or stdin when omitted.
        word: Option<String>,
    },
    /// Count generator work over a grid of specs and print CSV.
    ///
    /// Columns: rows,weight,width,strategy,element_writes,row_moves,recursion_depth,ratio
    /// where ratio = element_writes / (rows * width * (log2(width) + 1)), 0 for width 0.
    /// One row per spec and strategy, specs in ascending (rows, weight, width).
    /// Summary lines follow as '#' comments.
    Bench {
        /// Row counts: N, A..B or A-B.
        #[arg(long = "r")]
        rows: String,
        /// Column weights (default: all).
        #[arg(long = "j")]
        weights: Option<String>,
        /// Widths: all, full (m = C(R,J)), N, A..B or A-B.
        #[arg(long = "m", default_value = "all")]
        widths: String,
        /// Strategies to measure (repeatable; default both).
        #[arg(long)]
        strategy: Vec<Strategy>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inject single and double bit flips and report decoder outcomes.
    ///
    /// Exhaustive mode flips every position and position pair over all data
    /// words (k <= 12) or over --trials seeded data words. Random mode draws
    /// --trials seeded fault patterns. --format txt prints key=value lines,
    /// csv prints class,injected,handled,miscorrections,residual.
    Inject {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "exhaustive")]
        mode: FaultMode,
        #[arg(long, default_value_t = 256)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "txt")]
        format: MatrixFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[arg(long, default_value = "shift")]
    strategy: Strategy,
    #[arg(long, default_value = "txt")]
    format: MatrixFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CodeArgs {
    /// Build the code for k data bits.
    #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
    k: Option<usize>,
    /// Use the check matrix stored in this file instead.
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long, default_value = "shift")]
    strategy: Strategy,
    /// Format of --matrix.
    #[arg(long, default_value = "txt")]
    format: MatrixFormat,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_input(path: Option<&PathBuf>) -> Result<String> {
    match path {
        Some(p) => Ok(fs::read_to_string(p)?),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn validate_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(CliError::Input("k must be at least 1".into()));
    }
    Ok(())
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn status(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { k, render } => cmd_gen(k, &render),
        Command::Delta {
            rows,
            weight,
            width,
            render,
        } => cmd_delta(DeltaSpec::new(rows, weight, width), &render),
        Command::Verify {
            weight,
            format,
            input,
        } => cmd_verify(weight, format, input.as_ref()),
        Command::Encode { code, data } => cmd_encode(&code, data),
        Command::Decode { code, word } => cmd_decode(&code, word),
        Command::Bench {
            rows,
            weights,
            widths,
            strategy,
            out,
        } => cmd_bench(&rows, weights.as_deref(), &widths, strategy, out.as_ref()),
        Command::Inject {
            k,
            mode,
            trials,
            seed,
            format,
            out,
        } => cmd_inject(k, mode, trials, seed, format, out.as_ref()),
    }
}

fn cmd_gen(k: usize, args: &RenderArgs) -> Result<ExitCode> {
    validate_k(k)?;
    let plan = plan_blocks(k)?;
    let cm = build_check_matrix(k, args.strategy)?;
    let mut text = format::render(&cm.h, args.format);
    text.push_str(&format!(
        "# k={} R={} n={} strategy={}\n",
        k, plan.check_bits, plan.length, args.strategy
    ));
    text.push_str(&format!(
        "# blocks={}\n",
        plan.blocks
            .iter()
            .map(DeltaSpec::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    ));
    text.push_str(&format!("# parity_positions={}\n", join(&cm.parity_positions)));
    text.push_str(&format!(
        "# ones={} row_weights={}\n",
        cm.h.count_ones(),
        join(cm.h.row_weights())
    ));
    text.push_str(&format!("# generator=hsiao {VERSION}\n"));
    write_output(args.out.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_delta(spec: DeltaSpec, args: &RenderArgs) -> Result<ExitCode> {
    let mat = generate_delta(spec, args.strategy)?;
    let mut text = format::render(&mat, args.format);
    text.push_str(&format!(
        "# spec={} strategy={} row_weights={}\n",
        spec,
        args.strategy,
        join(mat.row_weights())
    ));
    write_output(args.out.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(weight: Option<usize>, fmt: MatrixFormat, input: Option<&PathBuf>) -> Result<ExitCode> {
    let mat = format::parse(&read_input(input)?, fmt)?;
    let (lines, pass) = match weight {
        Some(j) => {
            let r = verify_balanced(&mat, j);
            let pass = r.is_balanced();
            (
                format!(
                    "check=balanced\nweight={j}\ncolumn_weight_ok={}\ncolumns_distinct={}\nrow_weights={}\nmax_row_delta={}\nheavy_rows_on_top={}\n",
                    r.column_weight_ok,
                    r.columns_distinct,
                    join(&r.row_weights),
                    r.max_row_delta,
                    r.heavy_rows_on_top
                ),
                pass,
            )
        }
        None => {
            let r = verify_hsiao(&mat);
            (
                format!(
                    "check=hsiao\nodd_columns={}\ncolumns_distinct={}\nrow_weights={}\nmax_row_delta={}\n",
                    r.odd_columns,
                    r.columns_distinct,
                    join(&r.row_weights),
                    r.max_row_delta
                ),
                r.is_valid(),
            )
        }
    };
    let status_line = if pass { "status=pass\n" } else { "status=fail\n" };
    write_output(None, &(lines + status_line))?;
    Ok(status(pass))
}

fn load_codec(args: &CodeArgs) -> Result<SecDed> {
    let cm = match (&args.matrix, args.k) {
        (Some(path), _) => {
            let mat = format::parse(&fs::read_to_string(path)?, args.format)?;
            CheckMatrix::from_matrix(mat)?
        }
        (None, Some(k)) => {
            validate_k(k)?;
            build_check_matrix(k, args.strategy)?
        }
        (None, None) => return Err(CliError::Input("either --k or --matrix is required".into())),
    };
    Ok(SecDed::new(cm)?)
}

fn bit_argument(arg: Option<String>, input: Option<&PathBuf>) -> Result<Vec<u8>> {
    let text = match arg {
        Some(s) => s,
        None => read_input(input)?
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .unwrap_or("")
            .to_string(),
    };
    Ok(parse_bits(text.trim())?)
}

fn cmd_encode(args: &CodeArgs, data: Option<String>) -> Result<ExitCode> {
    let codec = load_codec(args)?;
    let data = bit_argument(data, args.input.as_ref())?;
    let word = codec.encode(&data)?;
    write_output(args.out.as_ref(), &format!("{word}\n"))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_decode(args: &CodeArgs, word: Option<String>) -> Result<ExitCode> {
    let codec = load_codec(args)?;
    let word = bit_argument(word, args.input.as_ref())?;
    let outcome = codec.decode(&word)?;
    write_output(args.out.as_ref(), &format!("{outcome}\n"))?;
    Ok(status(matches!(
        outcome,
        DecodeOutcome::NoError { .. } | DecodeOutcome::Corrected { .. }
    )))
}

fn parse_range(text: &str, what: &str) -> Result<RangeInclusive<usize>> {
    let bad = || CliError::Input(format!("invalid {what} range '{text}'"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let range = if let Some((a, b)) = text.split_once("..") {
        num(a)?..=num(b.trim_start_matches('='))?
    } else if let Some((a, b)) = text.split_once('-') {
        num(a)?..=num(b)?
    } else {
        let n = num(text)?;
        n..=n
    };
    if range.is_empty() {
        return Err(bad());
    }
    Ok(range)
}

/// Upper bound on rows for bench grids; C(24, 12) columns already take a while.
const BENCH_MAX_ROWS: usize = 24;

fn cmd_bench(
    rows: &str,
    weights: Option<&str>,
    widths: &str,
    strategies: Vec<Strategy>,
    out: Option<&PathBuf>,
) -> Result<ExitCode> {
    let rows = parse_range(rows, "row")?;
    if *rows.start() == 0 || *rows.end() > BENCH_MAX_ROWS {
        return Err(CliError::Input(format!(
            "row range must lie within 1..{BENCH_MAX_ROWS}"
        )));
    }
    let weights = weights.map(|w| parse_range(w, "weight")).transpose()?;
    let widths = match widths {
        "all" => WidthSelection::All,
        "full" => WidthSelection::Full,
        other => WidthSelection::Range(parse_range(other, "width")?),
    };
    let grid = Grid {
        rows,
        weights,
        widths,
    };
    let specs = grid.specs()?;
    let strategies = if strategies.is_empty() {
        Strategy::ALL.to_vec()
    } else {
        strategies
    };
    let report = measure_grid(&specs, &strategies)?;
    let mut text = report.to_csv();
    for line in report.to_key_value().lines() {
        text.push_str(&format!("# {line}\n"));
    }
    write_output(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_inject(
    k: usize,
    mode: FaultMode,
    trials: u64,
    seed: u64,
    fmt: MatrixFormat,
    out: Option<&PathBuf>,
) -> Result<ExitCode> {
    validate_k(k)?;
    let report = inject_faults(k, mode, trials, seed)?;
    let text = match fmt {
        MatrixFormat::Txt => report.to_key_value(),
        MatrixFormat::Csv => report.to_csv(),
        MatrixFormat::Hex => {
            return Err(CliError::Input("inject reports support txt or csv".into()))
        }
    };
    write_output(out, &text)?;
    Ok(status(report.miscorrections() == 0))
}
