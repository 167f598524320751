//! The `lamplighter` command line.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails,
//! 2 for usage, parse and configuration errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::cayley::{self, Exec, Format};
use crate::error::{Error, Result};
use crate::group::{GammaGroup, PresentationId};
use crate::json;
use crate::lamp2;
use crate::report::Report;
use crate::ring::RingSpec;
use crate::trees;

#[derive(Debug, Parser)]
#[command(name = "lamplighter", version, about = "Generalized lamplighter groups and horocyclic products of trees")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Config {
    /// Coefficient ring: `Z` or `Z/<m>`.
    #[arg(long, global = true, default_value = "Z/2", value_parser = parse_ring)]
    pub ring: RingSpec,
    /// Rank.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, global = true, default_value_t = 2)]
    pub radius: u32,
    /// Generator coefficients range over `[-b, b]` when the ring is `Z`.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub coeff_bound: u64,
    /// Output format; `export` also takes dot, graphml and edge-csv.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

fn parse_ring(s: &str) -> std::result::Result<RingSpec, String> {
    RingSpec::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Dot,
    Graphml,
    EdgeCsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    /// The Cayley graph of the group.
    Cayley,
    /// The 1-skeleton of the horocyclic product.
    Hn,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a word and print the element as JSON.
    Eval {
        /// Word, or `-` to read stdin.
        word: String,
        /// Also render the rank-2 board.
        #[arg(long)]
        board: bool,
    },
    /// Print the normal form of a word.
    Nf {
        word: String,
    },
    /// Map an element (JSON or word) to its vertex.
    Phi {
        input: String,
    },
    /// Map a vertex (JSON) back to its element.
    PhiInv {
        input: String,
    },
    /// Summarize a ball layer by layer.
    Ball {
        #[arg(long, value_enum, default_value_t = GraphKind::Cayley)]
        kind: GraphKind,
        #[arg(long)]
        serial: bool,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Export a ball as DOT, GraphML, edge CSV or JSON.
    Export {
        #[arg(long, value_enum, default_value_t = GraphKind::Cayley)]
        kind: GraphKind,
        #[arg(long)]
        serial: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// Compare the Cayley ball with H_n(R) through phi.
    Iso {
        #[arg(long)]
        serial: bool,
    },
    /// Evaluate relator families; all applicable ones unless `--pres` is given.
    Relators {
        /// Presentation id, e.g. `i`, `ii`, `iii`, `2`, `mod`, `complex`, `g2-ii`.
        #[arg(long)]
        pres: Option<String>,
        /// Parameter range; defaults to `--coeff-bound`.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Classify the 3-cycles of a rank-2 ball.
    TwoCells {
        #[arg(long)]
        serial: bool,
    },
    /// Compare board propagation, closed forms and the polynomial.
    Propagation {
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        height: i64,
    },
}

fn exec(serial: bool) -> Exec {
    if serial {
        Exec::Serial
    } else {
        Exec::Parallel
    }
}

/// Output of a command before it is written.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

fn render(config: &Config, v: &Value) -> String {
    match config.format {
        OutputFormat::Json => json::compact(v) + "\n",
        _ => json::pretty(v) + "\n",
    }
}

fn render_report(config: &Config, r: &Report) -> Outcome {
    let text = match config.format {
        OutputFormat::Json => json::compact(&r.to_json()) + "\n",
        _ => r.to_text(),
    };
    Outcome {
        text,
        passed: r.passed(),
    }
}

fn read_arg(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Config(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        Ok(arg.to_string())
    }
}

fn group(config: &Config) -> Result<GammaGroup> {
    GammaGroup::new(config.n as usize, config.ring)
}

fn graph_format(config: &Config) -> Format {
    match config.format {
        OutputFormat::Text | OutputFormat::Dot => Format::Dot,
        OutputFormat::Json => Format::Json,
        OutputFormat::Graphml => Format::GraphMl,
        OutputFormat::EdgeCsv => Format::Csv,
    }
}

fn build_graph(config: &Config, kind: GraphKind, serial: bool) -> Result<cayley::LabeledGraph> {
    let gr = group(config)?;
    Ok(match kind {
        GraphKind::Cayley => cayley::cayley_ball(&gr, config.radius, config.coeff_bound, exec(serial))?.to_graph(),
        GraphKind::Hn => cayley::hn_ball(gr.n(), gr.ring(), config.radius, config.coeff_bound, exec(serial))?.to_graph(),
    })
}

fn execute(config: &Config, command: &Command) -> Result<Outcome> {
    if matches!(config.format, OutputFormat::Dot | OutputFormat::Graphml | OutputFormat::EdgeCsv)
        && !matches!(command, Command::Export { .. })
    {
        return Err(Error::Config(format!(
            "--format {:?} only applies to `export`",
            config.format
        )));
    }
    match command {
        Command::Eval { word, board } => {
            let gr = group(config)?;
            let g = gr.parse_and_eval(&read_arg(word)?)?;
            let element = json::group_element_to_json(&gr, &g);
            if !board {
                return Ok(Outcome::ok(render(config, &element)));
            }
            let state = lamp2::lamplighter_state(&gr, &g)?;
            Ok(Outcome::ok(match config.format {
                OutputFormat::Json => {
                    let mut m = Map::new();
                    m.insert("board".into(), Value::String(state.to_text()));
                    m.insert("element".into(), element);
                    m.insert("grid".into(), Value::String(state.render_grid()));
                    json::compact(&Value::Object(m)) + "\n"
                }
                _ => format!("{}\n{}\n{}", json::pretty(&element), state.to_text(), state.render_grid()),
            }))
        }
        Command::Nf { word } => {
            let gr = group(config)?;
            let g = gr.parse_and_eval(&read_arg(word)?)?;
            let nf = gr.normal_form(&g)?.to_string();
            Ok(Outcome::ok(match config.format {
                OutputFormat::Json => {
                    let mut m = Map::new();
                    m.insert("normal_form".into(), Value::String(nf));
                    json::compact(&Value::Object(m)) + "\n"
                }
                _ => nf + "\n",
            }))
        }
        Command::Phi { input } => {
            let gr = group(config)?;
            let text = read_arg(input)?;
            let g = if text.trim_start().starts_with('{') {
                json::group_element_from_json(&gr, &json::parse(&text)?)?
            } else {
                gr.parse_and_eval(&text)?
            };
            let v = trees::phi(&gr, &g)?;
            Ok(Outcome::ok(render(config, &json::vertex_to_json(&v))))
        }
        Command::PhiInv { input } => {
            let gr = group(config)?;
            let v = json::vertex_from_json(gr.ring(), &json::parse(&read_arg(input)?)?)?;
            if v.rank() != gr.n() {
                return Err(Error::ContextMismatch(format!(
                    "vertex of rank {} for a group of rank {}",
                    v.rank(),
                    gr.n()
                )));
            }
            let g = trees::phi_inv(&gr, &v)?;
            Ok(Outcome::ok(render(config, &json::group_element_to_json(&gr, &g))))
        }
        Command::Ball { kind, serial } => {
            let graph = build_graph(config, *kind, *serial)?;
            let mut r = Report::new(format!(
                "{} ball of Γ_{}({}), radius {}",
                match kind {
                    GraphKind::Cayley => "Cayley",
                    GraphKind::Hn => "H",
                },
                config.n,
                config.ring,
                config.radius
            ));
            r.set("vertices", graph.vertices.len() as u64);
            r.set("edges", graph.edges.len() as u64);
            for v in &graph.vertices {
                r.count(&format!("layer {:03}", v.layer), 1);
            }
            Ok(render_report(config, &r))
        }
        Command::Export { kind, serial } => {
            let graph = build_graph(config, *kind, *serial)?;
            let mut text = graph.export(graph_format(config));
            if !text.ends_with('\n') {
                text.push('\n');
            }
            Ok(Outcome::ok(text))
        }
        Command::Verify { check } => {
            let gr = group(config)?;
            let report = match check {
                Check::Iso { serial } => cayley::verify_iso(&gr, config.radius, config.coeff_bound, exec(*serial))?,
                Check::Relators { pres, bound } => {
                    let bound = bound.unwrap_or(config.coeff_bound);
                    let ids = match pres {
                        Some(name) => vec![PresentationId::resolve(name, gr.n())?],
                        None => PresentationId::applicable(&gr),
                    };
                    if ids.is_empty() {
                        return Err(Error::Unsupported(format!(
                            "no presentation applies to Γ_{}({})",
                            gr.n(),
                            gr.ring()
                        )));
                    }
                    let mut all = Report::new(format!(
                        "relators in Γ_{}({}), bound {bound}",
                        gr.n(),
                        gr.ring()
                    ));
                    for id in ids {
                        let r = cayley::verify_relators(&gr, id, bound)?;
                        all.note(format!(
                            "{id}: {} relators, {}",
                            r.counts.get("relators").copied().unwrap_or(0),
                            if r.passed() { "all trivial" } else { "FAILURES" }
                        ));
                        all.absorb(r);
                    }
                    all
                }
                Check::TwoCells { serial } => {
                    cayley::two_cell_report(&gr, config.radius, config.coeff_bound, exec(*serial))?
                }
                Check::Propagation { samples, seed, height } => {
                    lamp2::verify_propagation(&gr, *samples, *height, *seed)?
                }
            };
            Ok(render_report(config, &report))
        }
    }
}

/// Runs the CLI on `args` (including the program name), writing to the
/// given streams, and returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.config, &cli.command) {
        Ok(outcome) => {
            let written = match &cli.config.out {
                Some(path) => fs::write(path, outcome.text.as_bytes())
                    .map_err(|e| format!("writing {}: {e}", path.display())),
                None => stdout
                    .write_all(outcome.text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

/// Runs the CLI on the process arguments.
pub fn run() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
