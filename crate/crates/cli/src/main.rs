//! `percword`: tables, verification sweeps and simulations for M-seen words.
//!
//! Exit codes: 0 success, 1 verification failure or internal error, 2 usage error.

mod output;
mod verify;
mod words;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use percword::exactprob::{
    build_automaton, exact_seen_probability, exhaustive_seen_probability, max_word_probability,
};
use percword::moments::{growth_constant, renewal_table};
use percword::montecarlo::{
    admissible_path_exists, coupling_chain_demo, estimate_seen_probability, estimate_x_seen_in_y,
    red_grid, EstimateReport, RngConfig,
};
use percword::rational::{check_open_unit, parse_rational, to_f64};
use percword::recursions::{u_table, vn_pair_recursion, DEFAULT_GRID_BOUND};
use percword::{ExactValue, SequencePrefix};

use output::{emit_json, emit_text, sink, Format};
use words::WordArgs;

/// A problem with the command line itself; exits with status 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

#[derive(Debug, Parser)]
#[command(name = "percword", version, about = "Exact and simulated M-seen probabilities of binary words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Alternating-word probabilities v_n, v_n' and ratios v_(n+1)/v_n.
    Vn {
        #[arg(long = "M")]
        window: usize,
        #[arg(long = "N")]
        max_index: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification sweep; exits 1 on any violation.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
        #[arg(long = "M", default_value_t = 2)]
        window: usize,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long = "N", default_value_t = 100)]
        max_index: usize,
        /// Start parameter for the coupling suite.
        #[arg(long, default_value_t = 0.9)]
        p: f64,
        /// Target parameter for the coupling suite.
        #[arg(long, default_value_t = 0.1)]
        target: f64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact probability that a word is M-seen.
    Exact {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long = "M")]
        window: usize,
        /// Probability of a one, as a fraction or decimal.
        #[arg(long, default_value = "1/2")]
        p: String,
        /// Use brute-force enumeration of all prefixes (p = 1/2 only).
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximum and minimum seeing probability over all words of length n.
    Maxword {
        #[arg(long)]
        n: usize,
        #[arg(long = "M")]
        window: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Growth constant c_M of the random-word second moment.
    Cm {
        #[arg(long = "M")]
        window: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-block tables u_pq, w_pq and delta_pq.
    Twoblock {
        #[arg(long = "M")]
        window: usize,
        #[arg(long, default_value_t = DEFAULT_GRID_BOUND)]
        p: usize,
        #[arg(long, default_value_t = DEFAULT_GRID_BOUND)]
        q: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Renewal table u_n, r_n, V_n.
    Renewal {
        #[arg(long = "M")]
        window: usize,
        #[arg(long = "N")]
        max_index: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo estimate for a fixed word, or for a random word when no
    /// word is given (then --n, --p-x and --p-y are used).
    Simulate {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long = "M")]
        window: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long = "p-x")]
        p_x: Option<f64>,
        #[arg(long = "p-y")]
        p_y: Option<f64>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Push samples through a chain of couplings from p to a target parameter.
    Couple {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        target: f64,
        /// Output length per sample; inputs are 2^k times longer.
        #[arg(long, default_value_t = 64)]
        length: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Red grid of two bit strings; reports path existence on stderr.
    Grid {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long = "M")]
        window: usize,
        #[arg(long, value_enum, default_value = "pbm")]
        format: GridFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Adjacency dump of the seeing automaton.
    Automaton {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long = "M")]
        window: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GridFormat {
    Pbm,
    Csv,
}

#[derive(Serialize)]
struct VnRow {
    n: usize,
    v: ExactValue,
    v_prime: ExactValue,
    ratio: Option<f64>,
}

#[derive(Serialize)]
struct ExactReport {
    word: String,
    #[serde(rename = "M")]
    window: usize,
    p: String,
    method: &'static str,
    probability: ExactValue,
}

#[derive(Serialize)]
struct MaxwordReport {
    n: usize,
    #[serde(rename = "M")]
    window: usize,
    max: ExactValue,
    maximizers: Vec<String>,
    min: ExactValue,
    minimizers: Vec<String>,
}

#[derive(Serialize)]
struct TwoBlockRow {
    p: usize,
    q: usize,
    u: ExactValue,
    w: ExactValue,
    delta: ExactValue,
}

#[derive(Serialize)]
struct RenewalRow {
    n: usize,
    u: ExactValue,
    r: ExactValue,
    #[serde(rename = "V")]
    v: ExactValue,
    ratio: Option<f64>,
}

#[derive(Serialize)]
struct RandomWordReport {
    #[serde(rename = "M")]
    window: usize,
    n: usize,
    p_x: f64,
    p_y: f64,
    trials: u64,
    estimate: f64,
    stderr: f64,
    seed: u64,
}

fn usage<E: fmt::Display>(e: E) -> anyhow::Error {
    Usage(e.to_string()).into()
}

/// Parameter problems are usage errors; budget and consistency failures are not.
fn classify(e: percword::Error) -> anyhow::Error {
    use percword::Error::*;
    match e {
        StateCapExceeded { .. } | NoConvergence { .. } | Inconsistent(_) | Csv(_) => e.into(),
        _ => Usage(e.to_string()).into(),
    }
}

/// Runs a command; `Ok(false)` means a verification failed.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Vn { window, max_index, format, out } => {
            let table = vn_pair_recursion(window, max_index).map_err(classify)?;
            match format {
                Format::Csv => table.write_csv(sink(&out)?)?,
                Format::Json => {
                    let ratios = table.ratios();
                    let rows: Vec<VnRow> = (0..=table.max_index())
                        .map(|n| VnRow {
                            n,
                            v: table.v(n).into(),
                            v_prime: table.v_prime(n).into(),
                            ratio: ratios.get(n).copied(),
                        })
                        .collect();
                    emit_json(&rows, &out)?;
                }
            }
        }
        Command::Verify { suite, window, n, max_index, p, target, trials, seed, tol, out } => {
            let bounds =
                verify::Bounds { window, n, big_n: max_index, p, target, trials, seed, tol };
            let report = verify::run(suite, &bounds)?;
            emit_json(&report, &out)?;
            return Ok(report.passed);
        }
        Command::Exact { word, window, p, oracle, out } => {
            let w = word.resolve()?;
            let prob = parse_rational(&p).map_err(classify)?;
            check_open_unit(&prob).map_err(classify)?;
            let (value, method) = if oracle {
                if prob != percword::rational::rat(1, 2) {
                    return Err(usage("--oracle enumerates prefixes and needs p = 1/2"));
                }
                (exhaustive_seen_probability(&w, window).map_err(classify)?, "enumeration")
            } else {
                (exact_seen_probability(&w, window, &prob).map_err(classify)?, "automaton")
            };
            let report = ExactReport {
                word: w.to_string(),
                window,
                p: prob.to_string(),
                method,
                probability: (&value).into(),
            };
            emit_json(&report, &out)?;
        }
        Command::Maxword { n, window, out } => {
            let e = max_word_probability(n, window).map_err(classify)?;
            let names = |ws: &[percword::BinaryWord]| ws.iter().map(ToString::to_string).collect();
            let report = MaxwordReport {
                n,
                window,
                max: (&e.max).into(),
                maximizers: names(&e.maximizers),
                min: (&e.min).into(),
                minimizers: names(&e.minimizers),
            };
            emit_json(&report, &out)?;
        }
        Command::Cm { window, tol, out } => {
            let g = growth_constant(window, tol).map_err(classify)?;
            emit_json(&g, &out)?;
            return Ok(g.methods_agree);
        }
        Command::Twoblock { window, p, q, format, out } => {
            let table = u_table(window, p, q).map_err(classify)?;
            match format {
                Format::Csv => table.write_csv(sink(&out)?)?,
                Format::Json => {
                    let mut rows = Vec::new();
                    for i in 0..=p {
                        for j in 0..=q {
                            rows.push(TwoBlockRow {
                                p: i,
                                q: j,
                                u: table.u.at(i, j).into(),
                                w: table.w.at(i, j).into(),
                                delta: table.delta.at(i, j).into(),
                            });
                        }
                    }
                    emit_json(&rows, &out)?;
                }
            }
        }
        Command::Renewal { window, max_index, format, out } => {
            let table = renewal_table(window, max_index).map_err(classify)?;
            match format {
                Format::Csv => table.write_csv(sink(&out)?)?,
                Format::Json => {
                    let ratios = table.ratios();
                    let rows: Vec<RenewalRow> = (0..=table.max_index())
                        .map(|n| RenewalRow {
                            n,
                            u: (&table.u[n]).into(),
                            r: (&table.r[n]).into(),
                            v: (&table.v[n]).into(),
                            ratio: ratios.get(n).map(to_f64),
                        })
                        .collect();
                    emit_json(&rows, &out)?;
                }
            }
        }
        Command::Simulate { word, window, p, p_x, p_y, trials, seed, out } => {
            let config = RngConfig::new(seed);
            if word.given() == 0 {
                let (Some(n), Some(p_x), Some(p_y)) = (word.n, p_x, p_y) else {
                    return Err(usage("give a word, or --n with --p-x and --p-y"));
                };
                let est = estimate_x_seen_in_y(window, p_x, p_y, n, trials, &config).map_err(classify)?;
                let report = RandomWordReport {
                    window,
                    n,
                    p_x,
                    p_y,
                    trials,
                    estimate: est.estimate,
                    stderr: est.stderr,
                    seed,
                };
                emit_json(&report, &out)?;
            } else {
                let w = word.resolve()?;
                let est = estimate_seen_probability(&w, window, p, trials, &config).map_err(classify)?;
                emit_json(&EstimateReport::new(&w, window, p, seed, &est), &out)?;
            }
        }
        Command::Couple { p, target, length, trials, seed, out } => {
            let report =
                coupling_chain_demo(p, target, length, trials, &RngConfig::new(seed)).map_err(classify)?;
            emit_json(&report, &out)?;
            return Ok(report.passes());
        }
        Command::Grid { x, y, window, format, out } => {
            let x: SequencePrefix = x.parse().map_err(classify)?;
            let y: SequencePrefix = y.parse().map_err(classify)?;
            let grid = red_grid(&x, &y);
            let path = admissible_path_exists(&grid, window).map_err(classify)?;
            match format {
                GridFormat::Pbm => emit_text(&grid.to_pbm(), &out)?,
                GridFormat::Csv => grid.write_csv(sink(&out)?)?,
            }
            eprintln!("admissible path (M={window}): {path}");
        }
        Command::Automaton { word, window, out } => {
            let w = word.resolve()?;
            let automaton = build_automaton(&w, window).map_err(classify)?;
            emit_text(&automaton.dump(), &out)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<Usage>() {
                Some(_) => 2,
                None => 1,
            };
            ExitCode::from(code)
        }
    }
}
