use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cutkit::engine::{compute_table, GrundyTable, GrundyValue};
use cutkit::export::{self, ExportError, Row};
use cutkit::notation::Notation;
use cutkit::play::{best_move, outcome, position_value, Outcome, Position};
use cutkit::regularity::{ap_test, detect, RegularityError};
use cutkit::ruleset::{to_take_and_break, RulesetSpec};
use cutkit::tables::{check_ap_table, check_solved_table, RowCheck};

/// Sprague-Grundy analysis of partition (CUT) games.
#[derive(Parser)]
#[command(name = "cutkit", version)]
struct Cli {
    /// Worker threads for the table computation.
    #[arg(long, global = true, env = "CUTKIT_THREADS", default_value_t = 1)]
    threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print G(1..=n).
    Seq {
        #[arg(short, long)]
        cuts: RulesetSpec,
        #[arg(short = 'n', long = "max-heap")]
        max_heap: usize,
    },
    /// Look for (ultimate) periodic or arithmetic-periodic structure.
    Detect {
        #[arg(short, long)]
        cuts: RulesetSpec,
        #[arg(short = 'n', long = "max-heap")]
        max_heap: usize,
        /// Largest period tried [default: n/8].
        #[arg(long)]
        max_p: Option<usize>,
        /// Largest preperiod allowed [default: n/4].
        #[arg(long)]
        max_n0: Option<usize>,
    },
    /// Run the arithmetic-periodicity test and print its certificate.
    Aptest {
        #[arg(short, long)]
        cuts: RulesetSpec,
        #[arg(short = 'n', long = "max-heap")]
        max_heap: usize,
    },
    /// Print the equivalent take-and-break code.
    Convert {
        #[arg(short, long)]
        cuts: RulesetSpec,
    },
    /// Decide the winner of a sum of heaps and give a winning move.
    Solve {
        #[arg(short, long)]
        cuts: RulesetSpec,
        /// Heap sizes, e.g. 4,7,7.
        #[arg(short, long)]
        position: Position,
    },
    /// Recompute the reference tables and compare.
    Table {
        #[arg(value_enum)]
        which: Which,
    },
    /// CSV scatter data `n,grundy`.
    Plot {
        #[arg(short, long)]
        cuts: RulesetSpec,
        #[arg(short = 'n', long = "max-heap")]
        max_heap: usize,
        /// Add a column flagging values more than --window below the running maximum.
        #[arg(long)]
        dropouts: bool,
        #[arg(long, default_value_t = 8)]
        window: GrundyValue,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Solved,
    Ap,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) if broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// A closed stdout (`cutkit seq ... | head`) is not an error.
fn broken_pipe(e: &anyhow::Error) -> bool {
    let pipe = |io: &io::Error| io.kind() == io::ErrorKind::BrokenPipe;
    let csv_pipe = |c: &csv::Error| matches!(c.kind(), csv::ErrorKind::Io(io) if pipe(io));
    e.chain().any(|c| {
        c.downcast_ref::<io::Error>().is_some_and(pipe)
            || c.downcast_ref::<csv::Error>().is_some_and(csv_pipe)
            || matches!(c.downcast_ref::<ExportError>(), Some(ExportError::Csv(c)) if csv_pipe(c))
    })
}

fn table(cuts: &RulesetSpec, n: usize, threads: usize) -> Result<GrundyTable> {
    compute_table(cuts, n, threads).with_context(|| format!("computing G(1..={n}) for {cuts}"))
}

/// Returns whether every check passed; only `table` can fail a check.
fn run(cli: &Cli) -> Result<bool> {
    let mut out = io::stdout().lock();
    let threads = cli.threads.max(1);
    match &cli.cmd {
        Cmd::Seq { cuts, max_heap } => {
            let t = table(cuts, *max_heap, threads)?;
            match cli.format {
                Format::Plain => {
                    let vals: Vec<String> = t.values().iter().map(|v| v.to_string()).collect();
                    writeln!(out, "{}", vals.join(" "))?;
                }
                Format::Csv => export::write_csv(t.values(), &mut out)?,
                Format::Json => {
                    writeln!(out, "{}", export::to_json(&cuts.to_string(), t.values()))?
                }
            }
        }
        Cmd::Detect {
            cuts,
            max_heap,
            max_p,
            max_n0,
        } => {
            let n = *max_heap;
            let t = table(cuts, n, threads)?;
            let hyp = detect(&t, max_p.unwrap_or(n / 8), max_n0.unwrap_or(n / 4))?;
            match (cli.format, hyp) {
                (Format::Json, h) => {
                    let h = h.map(|h| json!({"kind": h.kind(), "n0": h.n0, "p": h.p, "s": h.s}));
                    writeln!(
                        out,
                        "{}",
                        json!({"ruleset": cuts.to_string(), "checked_N": n, "hypothesis": h})
                    )?;
                }
                (_, Some(h)) => {
                    writeln!(out, "{h}")?;
                    let seq = Notation::new(t.values()[h.n0..h.n0 + h.p].to_vec(), h.s);
                    writeln!(out, "repeating part from n={}: {seq}", h.n0 + 1)?;
                }
                (_, None) => writeln!(out, "no regularity found within bounds")?,
            }
        }
        Cmd::Aptest { cuts, max_heap } => {
            let t = table(cuts, *max_heap, threads)?;
            let cert = match ap_test(cuts, &t) {
                Ok(report) => serde_json::to_value(report.certificate(cuts))?,
                Err(RegularityError::NoCandidatePeriod { .. }) => json!({
                    "ruleset": cuts.to_string(),
                    "p": null, "t": null, "s": null,
                    "ap1": false, "ap2": false, "ap3": false,
                    "ap3_method": null, "thm_condition": false,
                    "verdict": "Failed(NoCandidatePeriod)",
                    "checked_N": max_heap,
                }),
                Err(e) => return Err(e.into()),
            };
            if cli.format == Format::Json {
                writeln!(out, "{cert}")?;
            } else {
                for (k, v) in cert.as_object().expect("object") {
                    match v {
                        serde_json::Value::String(s) => writeln!(out, "{k}: {s}")?,
                        v => writeln!(out, "{k}: {v}")?,
                    }
                }
            }
        }
        Cmd::Convert { cuts } => {
            let code = to_take_and_break(cuts)?;
            writeln!(out, "{code}")?;
            if code.digits.iter().all(|&d| d < 16) {
                let hex: String = code.digits.iter().map(|d| format!("{d:X}")).collect();
                writeln!(out, "hexadecimal: {}.{hex}", code.d0)?;
            }
        }
        Cmd::Solve { cuts, position } => {
            let t = table(cuts, position.max_heap().max(1), threads)?;
            let value = position_value(position, &t)?;
            let mv = best_move(position, &t)?;
            if cli.format == Format::Json {
                let doc = json!({
                    "ruleset": cuts.to_string(),
                    "position": position.to_string(),
                    "value": value,
                    "outcome": if value == 0 { "previous" } else { "first" },
                    "move": mv.as_ref().map(|m| m.to_string()),
                });
                writeln!(out, "{doc}")?;
            } else {
                match (outcome(position, &t)?, mv) {
                    (Outcome::PreviousPlayerWins, _) => writeln!(out, "previous player wins")?,
                    (Outcome::PlayerToMoveWins, Some(m)) => {
                        writeln!(out, "first player wins: {m}")?
                    }
                    (Outcome::PlayerToMoveWins, None) => {
                        bail!("no winning move found from a nonzero position")
                    }
                }
            }
        }
        Cmd::Table { which } => {
            let rows = match which {
                Which::Solved => check_solved_table(2000, threads)?,
                Which::Ap => check_ap_table(threads)?,
            };
            print_rows(&mut out, &rows, cli.format)?;
            return Ok(rows.iter().all(|r| r.pass));
        }
        Cmd::Plot {
            cuts,
            max_heap,
            dropouts,
            window,
        } => {
            let t = table(cuts, *max_heap, threads)?;
            if *dropouts {
                writeln!(out, "n,grundy,dropout")?;
                let mut max = 0;
                for (i, &g) in t.values().iter().enumerate() {
                    let drop = g + window < max;
                    writeln!(out, "{},{g},{}", i + 1, drop as u8)?;
                    max = max.max(g);
                }
            } else {
                let rows = t
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(i, &grundy)| Row { n: i + 1, grundy });
                export::write_rows_csv(rows, &mut out)?;
            }
        }
    }
    Ok(true)
}

fn print_rows(out: &mut impl Write, rows: &[RowCheck], format: Format) -> Result<()> {
    let status = |r: &RowCheck| if r.pass { "PASS" } else { "FAIL" };
    match format {
        Format::Plain => {
            for r in rows {
                writeln!(out, "{} | {} | {}", status(r), r.label, r.ruleset)?;
                writeln!(out, "    expected: {}", r.expected)?;
                writeln!(out, "    computed: {}", r.computed)?;
            }
            let passed = rows.iter().filter(|r| r.pass).count();
            writeln!(out, "{passed}/{} rows pass", rows.len())?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["status", "label", "ruleset", "expected", "computed"])?;
            for r in rows {
                w.write_record([status(r), &r.label, &r.ruleset, &r.expected, &r.computed])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let doc: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({"label": r.label, "ruleset": r.ruleset, "expected": r.expected,
                           "computed": r.computed, "pass": r.pass})
                })
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(doc))?;
        }
    }
    Ok(())
}
