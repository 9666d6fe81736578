use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tailfill_core::bench::measure;
use tailfill_core::fuzz::{run, FuzzConfig};
use tailfill_core::oracle::HARD_MAX_VERTICES;
use tailfill_core::{
    find_violation, generate, p4_sparse_tree, qt_tree, solve, split_partition, threshold_tree, Edge, GenSpec, Graph, GraphClass,
    GraphError, Mode, Oracle, OracleError, RecognizeError, TailError,
};

#[derive(Parser)]
#[command(name = "tailfill", version, about = "Minimum completions after adding a pendant edge to a graph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Graph file (`n m` header, then one `a b` line per edge); `-` reads stdin.
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership; prints the certificate, or a forbidden subgraph (exit 1).
    Recognize {
        #[arg(long)]
        class: GraphClass,
        #[command(flatten)]
        input: Input,
    },
    /// Print the class structure of a member graph.
    Tree {
        #[arg(long)]
        class: GraphClass,
        #[command(flatten)]
        input: Input,
    },
    /// Minimum fill for the tail `u w`, with `w` printed as vertex `n`.
    Tail {
        #[arg(long)]
        class: GraphClass,
        #[arg(long)]
        u: usize,
        #[arg(long, default_value_t = Mode::Corrected)]
        mode: Mode,
        #[command(flatten)]
        input: Input,
    },
    /// Exhaustive search. With `--u`, the tail completion; without it, a
    /// membership check of the file itself.
    Oracle {
        #[arg(long)]
        class: GraphClass,
        #[arg(long)]
        u: Option<usize>,
        /// Largest number of vertices searched.
        #[arg(long, default_value_t = HARD_MAX_VERTICES)]
        max_vertices: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Print a random member of the class.
    Gen {
        #[arg(long)]
        class: GraphClass,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also print the certificate, as comment lines.
        #[arg(long)]
        certificate: bool,
    },
    /// Compare the algorithm with the oracle on generated instances.
    Fuzz {
        #[arg(long)]
        class: GraphClass,
        /// Largest instance size.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = Mode::Corrected)]
        mode: Mode,
    },
    /// Time the tail algorithm on prebuilt structures.
    Bench {
        #[arg(long)]
        class: GraphClass,
        /// Comma separated instance sizes.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A failed command: exit code and message for stderr.
struct Failure {
    code: u8,
    msg: String,
}

const SEMANTIC: u8 = 1;
const USAGE: u8 = 2;
const NOT_IN_CLASS: u8 = 3;
const BAD_ID: u8 = 4;

impl Failure {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        Failure { code, msg: msg.into() }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let code = if matches!(e, GraphError::VertexOutOfRange { .. }) { BAD_ID } else { USAGE };
        Failure::new(code, e.to_string())
    }
}

impl From<RecognizeError> for Failure {
    fn from(e: RecognizeError) -> Self {
        match e {
            RecognizeError::Graph(e) => e.into(),
            RecognizeError::InvalidStructure(_) => Failure::new(SEMANTIC, e.to_string()),
            _ => Failure::new(NOT_IN_CLASS, e.to_string()),
        }
    }
}

impl From<TailError> for Failure {
    fn from(e: TailError) -> Self {
        match e {
            TailError::Graph(e) => e.into(),
            TailError::Recognize(e) => e.into(),
            _ => Failure::new(SEMANTIC, e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Graph(e) => e.into(),
            OracleError::InstanceTooLarge { .. } => Failure::new(USAGE, e.to_string()),
            _ => Failure::new(SEMANTIC, e.to_string()),
        }
    }
}

fn read_graph(input: &Input) -> Result<Graph, Failure> {
    let text = if input.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&input.file)
    }
    .map_err(|e| Failure::new(USAGE, format!("{}: {e}", input.file.display())))?;
    Ok(Graph::parse(&text)?)
}

fn certificate(g: &Graph, class: GraphClass) -> Result<String, RecognizeError> {
    Ok(match class {
        GraphClass::Split => split_partition(g)?.serialize(),
        GraphClass::Threshold => threshold_tree(g)?.serialize(),
        GraphClass::Qt => qt_tree(g)?.serialize(),
        GraphClass::P4Sparse => p4_sparse_tree(g)?.serialize(),
    })
}

fn line_end(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn fill_report(count: usize, edges: &[Edge]) -> String {
    let mut out = format!("fill {count}\n");
    for (a, b) in edges {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

/// Runs a command; the output goes to stdout whatever the exit code.
fn execute(command: Command) -> Result<(String, u8), Failure> {
    match command {
        Command::Recognize { class, input } => {
            let g = read_graph(&input)?;
            match certificate(&g, class) {
                Ok(c) => Ok((line_end(c), 0)),
                Err(RecognizeError::Graph(e)) => Err(e.into()),
                Err(e) => Ok((format!("{e}\n"), SEMANTIC)),
            }
        }
        Command::Tree { class, input } => {
            let g = read_graph(&input)?;
            match certificate(&g, class) {
                Ok(c) => Ok((line_end(c), 0)),
                Err(e) if e.witness().is_some() => Ok((format!("{e}\n"), NOT_IN_CLASS)),
                Err(e) => Err(e.into()),
            }
        }
        Command::Tail { class, u, mode, input } => {
            let g = read_graph(&input)?;
            match solve(&g, class, u, mode) {
                Ok(r) => Ok((fill_report(r.fill_count, &r.fill_edges), 0)),
                Err(TailError::Recognize(e)) if e.witness().is_some() => Ok((format!("{e}\n"), NOT_IN_CLASS)),
                Err(e) => Err(e.into()),
            }
        }
        Command::Oracle { class, u, max_vertices, input } => {
            let g = read_graph(&input)?;
            if max_vertices > HARD_MAX_VERTICES {
                return Err(Failure::new(USAGE, format!("--max-vertices is at most {HARD_MAX_VERTICES}")));
            }
            match u {
                Some(u) => {
                    let r = Oracle::new(class).max_vertices(max_vertices).min_tail_completion(&g, u)?;
                    Ok((fill_report(r.fill_count, &r.fill_edges), 0))
                }
                None => match find_violation(&g, class) {
                    None => Ok((format!("member {class}\n"), 0)),
                    Some(w) => {
                        let list: Vec<String> = w.iter().map(usize::to_string).collect();
                        Ok((format!("not {class}: vertices {}\n", list.join(" ")), SEMANTIC))
                    }
                },
            }
        }
        Command::Gen { class, n, seed, certificate } => {
            let (g, cert) = generate(&GenSpec::new(class, n, seed)).map_err(|e| Failure::new(USAGE, e.to_string()))?;
            let mut out = String::new();
            if certificate {
                for l in cert.serialize().lines() {
                    let _ = writeln!(out, "# {l}");
                }
            }
            out.push_str(&g.to_text());
            Ok((out, 0))
        }
        Command::Fuzz { class, n, iters, seed, mode } => {
            if n == 0 || n >= HARD_MAX_VERTICES {
                return Err(Failure::new(USAGE, format!("--n must be between 1 and {}", HARD_MAX_VERTICES - 1)));
            }
            let mut config = FuzzConfig::new(class, n, iters, seed);
            config.mode = mode;
            let report = run(&config);
            let mut out = String::new();
            if let Some(m) = report.mismatch {
                let _ = writeln!(out, "mismatch at iteration {}: {}", m.case.index, m.failure);
                let _ = writeln!(out, "u {}", m.case.u);
                out.push_str(&m.case.graph.to_text());
                return Ok((out, SEMANTIC));
            }
            let _ = writeln!(out, "checked {}", report.checked);
            for (family, count) in &report.wins {
                let _ = writeln!(out, "{family} {count}");
            }
            Ok((out, 0))
        }
        Command::Bench { class, sizes, runs, seed } => {
            if sizes.is_empty() || sizes.contains(&0) {
                return Err(Failure::new(USAGE, "--sizes needs at least one positive size"));
            }
            let mut out = format!("{:>10} {:>12} {:>12} {:>12} {:>7}\n", "n", "build_ms", "median_us", "mean_us", "ratio");
            let mut prev: Option<f64> = None;
            for &n in &sizes {
                let m = measure(class, n, seed, runs).map_err(|e| Failure::new(USAGE, e.to_string()))?;
                let median = m.median().as_secs_f64() * 1e6;
                let ratio = prev.map_or_else(|| "-".to_string(), |p| format!("{:.2}", median / p));
                let _ = writeln!(
                    out,
                    "{n:>10} {:>12.3} {median:>12.3} {:>12.3} {ratio:>7}",
                    m.build.as_secs_f64() * 1e3,
                    m.mean().as_secs_f64() * 1e6
                );
                prev = Some(median);
            }
            Ok((out, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
