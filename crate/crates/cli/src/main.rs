use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use misnet_cli::check::{run_query, Query};
use misnet_cli::input::{parse_config, parse_set, parse_word, read_graph};
use misnet_cli::report::{render_csv, render_text, tally};
use misnet_cli::survey::{classify, create_new, generate, ClassifyOptions};

/// Exit code for malformed input.
const EXIT_USAGE: u8 = 64;
/// Exit code for an internal consistency failure.
const EXIT_SOFTWARE: u8 = 70;
/// Exit code for file system failures.
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "misnet", version, about = "Sequential Boolean-network dynamics on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every graph of a graph6 file as permissible or not.
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Worker threads; defaults to all cores.
        #[arg(long, env = "MISNET_JOBS")]
        jobs: Option<usize>,
        /// Continue an interrupted run, skipping input lines already recorded.
        #[arg(long)]
        resume: bool,
        /// Permit inputs with graphs on nine or more vertices.
        #[arg(long)]
        allow_long: bool,
    },
    /// Decide one query; exit code 0 yes, 1 no, 2 unknown.
    Check {
        #[command(subcommand)]
        query: CheckCommand,
    },
    /// Count verdicts per vertex count in classify output.
    Report {
        #[arg(long)]
        input: PathBuf,
        /// Emit CSV instead of an aligned table.
        #[arg(long)]
        csv: bool,
    },
    /// Write all connected graphs on `min..=max` vertices as graph6.
    Generate {
        #[arg(long, default_value_t = 1)]
        min: usize,
        #[arg(long)]
        max: usize,
        /// Output file; standard output when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Graph in graph6 or digraph6 form.
    #[arg(long)]
    graph6: Option<String>,
    /// Edge list such as `0-1,1>2` (`-` undirected, `>` an arc).
    #[arg(long)]
    edges: Option<String>,
    /// Vertex count for --edges, to include isolated vertices.
    #[arg(long)]
    vertices: Option<usize>,
}

#[derive(Args)]
struct SetArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Comma-separated vertices.
    #[arg(long)]
    set: String,
}

#[derive(Args)]
struct WordArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Comma-separated vertex sequence.
    #[arg(long)]
    word: String,
}

#[derive(Args)]
struct PermisArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Permutation to verify; searches for one when absent.
    #[arg(long)]
    word: Option<String>,
}

#[derive(Args)]
struct ConfigArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Bit string with vertex 0 first, or a decimal mask.
    #[arg(long)]
    config: String,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Some maximal independent set avoids the set.
    Constituency(SetArgs),
    /// The set is a district.
    District(SetArgs),
    /// The word fixes the MIS network.
    FixingWord(WordArgs),
    /// Every permutation of the set, applied twice, fixes the network.
    FixingSet(SetArgs),
    /// The permutation is a permis, or the graph is permissible.
    Permis(PermisArgs),
    /// Every maximal independent set is reachable from the configuration.
    Universal(ConfigArgs),
    /// The word takes every configuration to an independent set.
    Prefix(WordArgs),
    /// The word takes every independent set to a maximal one.
    Suffix(WordArgs),
    /// Some word fixes the kernel network of the digraph.
    KernelFixable(GraphArgs),
    /// The word fixes the independent network.
    IndFixing(WordArgs),
    /// The word fixes the dominating network.
    DomFixing(WordArgs),
}

fn graph_of(a: &GraphArgs) -> Result<misnet::DiGraph> {
    read_graph(a.graph6.as_deref(), a.edges.as_deref(), a.vertices)
}

fn check(cmd: CheckCommand) -> Result<u8> {
    let with_set = |a: SetArgs, f: fn(misnet::VertexSet) -> Query| -> Result<_> {
        let g = graph_of(&a.graph)?;
        let s = parse_set(&a.set, g.n())?;
        Ok((g, f(s)))
    };
    let with_word = |a: WordArgs, f: fn(misnet::Word) -> Query| -> Result<_> {
        let g = graph_of(&a.graph)?;
        let w = parse_word(&a.word, g.n())?;
        Ok((g, f(w)))
    };
    let (g, q) = match cmd {
        CheckCommand::Constituency(a) => with_set(a, Query::Constituency)?,
        CheckCommand::District(a) => with_set(a, Query::District)?,
        CheckCommand::FixingSet(a) => with_set(a, Query::FixingSet)?,
        CheckCommand::FixingWord(a) => with_word(a, Query::FixingWord)?,
        CheckCommand::Prefix(a) => with_word(a, Query::Prefix)?,
        CheckCommand::Suffix(a) => with_word(a, Query::Suffix)?,
        CheckCommand::IndFixing(a) => with_word(a, Query::IndFixing)?,
        CheckCommand::DomFixing(a) => with_word(a, Query::DomFixing)?,
        CheckCommand::Permis(a) => {
            let g = graph_of(&a.graph)?;
            let w = a.word.as_deref().map(|w| parse_word(w, g.n())).transpose()?;
            (g, Query::Permis(w))
        }
        CheckCommand::Universal(a) => {
            let g = graph_of(&a.graph)?;
            let x = parse_config(&a.config, g.n())?;
            (g, Query::Universal(x))
        }
        CheckCommand::KernelFixable(a) => (graph_of(&a)?, Query::KernelFixable),
    };
    let answer = run_query(&g, &q)?;
    println!("{}", serde_json::to_string(&answer)?);
    Ok(answer.verdict.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Classify {
            input,
            output,
            jobs,
            resume,
            allow_long,
        } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .context("starting worker pool")?;
            let opts = ClassifyOptions {
                input,
                output,
                resume,
                allow_long,
            };
            let t = pool.install(|| classify(&opts))?;
            print!("{}", render_text(&t));
            Ok(0)
        }
        Command::Check { query } => check(query),
        Command::Report { input, csv } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let t = tally(&text);
            if csv {
                print!("{}", render_csv(&t)?);
                for (line, reason) in &t.corrupt {
                    eprintln!("corrupt record at line {line}: {reason}");
                }
            } else {
                print!("{}", render_text(&t));
            }
            Ok(0)
        }
        Command::Generate { min, max, output } => {
            let count = match output {
                Some(path) => {
                    let mut out = io::BufWriter::new(create_new(&path)?);
                    let c = generate(min, max, &mut out)?;
                    out.flush()?;
                    c
                }
                None => generate(min, max, &mut io::stdout().lock())?,
            };
            eprintln!("{count} graphs");
            Ok(0)
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(misnet::Error::Internal(_)) = cause.downcast_ref::<misnet::Error>() {
            return EXIT_SOFTWARE;
        }
        if cause.downcast_ref::<io::Error>().is_some() {
            return EXIT_IO;
        }
    }
    EXIT_USAGE
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
