//! Command-line surface: construct, recognize, verify, oracle cross-check,
//! generate, benchmark.
//!
//! Exit codes: 0 success (or "yes"), 1 usage/parse/io errors, 2 input not
//! trivially perfect (obstruction printed), 3 negative result (recognition
//! "no", verification violations, oracle disagreement).

use std::fs;
use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use leafroot::construct::{optimal_leaf_root, ConstructError, Parity, ParityMode};
use leafroot::cotree::build_cotree;
use leafroot::gen::{enumerate_small_tpgs, gen_family_f, gen_random_tpg, gen_star};
use leafroot::graph::{parse_graph, remove_true_twins, Graph};
use leafroot::verify::{brute_force_optimal, is_k_leaf_root, OracleLimits};
use leafroot::wtree::CompressedTree;

#[derive(Parser)]
#[command(
    name = "leafroot",
    version,
    about = "Optimal leaf roots of trivially perfect graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
    Best,
}

impl From<ParityArg> for ParityMode {
    fn from(p: ParityArg) -> ParityMode {
        match p {
            ParityArg::Odd => ParityMode::Odd,
            ParityArg::Even => ParityMode::Even,
            ParityArg::Best => ParityMode::Best,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FormatArg {
    /// Tree text (`T` header plus edge and leaf lines) or graph edge list.
    Edges,
    Dot,
    Newick,
    /// Cotree dump of the (twin-reduced) graph.
    Cotree,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the document here instead of stdout.
    #[arg(long)]
    output: Option<String>,
    #[arg(long, value_enum, default_value_t = FormatArg::Edges)]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an optimal leaf root of the input graph.
    Construct {
        /// Edge-list file, or `-` for stdin.
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value_t = ParityArg::Best)]
        parity: ParityArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Decide whether the input graph is a k-leaf power.
    Recognize {
        #[arg(long)]
        input: String,
        #[arg(short)]
        k: u64,
    },
    /// Check a tree document against a graph at threshold k.
    Verify {
        #[arg(long)]
        input: String,
        /// Tree document as produced by `construct --format edges`.
        #[arg(long)]
        tree: String,
        /// Defaults to the k recorded in the tree document.
        #[arg(short)]
        k: Option<u64>,
    },
    /// Cross-check construction against the exhaustive oracle; CSV on stdout.
    Oracle {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Time construction across sizes and report scaling ratios.
    Bench {
        /// Comma-separated vertex counts, e.g. 10000,100000,1000000.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Star with t leaves.
    Star {
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Level i of the recursive hard family.
    Family {
        #[arg(long)]
        i: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Seeded random twin-free instance.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        branching: usize,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Every small instance up to max-n vertices, one per canonical shape.
    Enumerate {
        #[arg(long)]
        max_n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("LEAFROOT_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
    // Exit code 2 is reserved for non-trivially-perfect input, so flag
    // errors leave through code 1 like every other usage problem.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help and --version render on stdout and succeed.
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Construct { input, parity, out } => cmd_construct(&input, parity.into(), &out),
        Command::Recognize { input, k } => cmd_recognize(&input, k),
        Command::Verify { input, tree, k } => cmd_verify(&input, &tree, k),
        Command::Oracle { max_n } => cmd_oracle(max_n),
        Command::Gen(kind) => cmd_gen(kind),
        Command::Bench { sizes, seed } => cmd_bench(&sizes, seed),
    }
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| e.to_string())?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn load_graph(path: &str) -> Result<Graph, String> {
    parse_graph(&read_input(path)?).map_err(|e| e.to_string())
}

fn emit(out: &OutputArgs, document: &str) -> Result<(), String> {
    match &out.output {
        Some(path) => fs::write(path, document).map_err(|e| format!("{path}: {e}")),
        None => {
            print!("{document}");
            Ok(())
        }
    }
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Odd => "odd",
        Parity::Even => "even",
    }
}

fn cmd_construct(input: &str, mode: ParityMode, out: &OutputArgs) -> Result<ExitCode, String> {
    let g = load_graph(input)?;
    let result = match optimal_leaf_root(&g, mode) {
        Ok(r) => r,
        Err(ConstructError::NotTriviallyPerfect(w)) => {
            println!("not trivially perfect; {w}");
            return Ok(ExitCode::from(2));
        }
        Err(e) => return Err(e.to_string()),
    };
    let document = match out.format {
        FormatArg::Edges => result.tree.to_text(result.k),
        FormatArg::Dot => result.tree.to_dot(),
        FormatArg::Newick => format!("{}\n", result.tree.to_newick()),
        FormatArg::Cotree => {
            let (reduced, _) = remove_true_twins(&g);
            build_cotree(&reduced).map_err(|e| e.to_string())?.to_text()
        }
    };
    emit(out, &document)?;
    println!(
        "k={} parity={} n={} diam={} rad={} dmin={}",
        result.k,
        parity_name(result.parity),
        g.vertex_count(),
        result.meta.diameter,
        result.meta.radius,
        result.meta.dmin
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_recognize(input: &str, k: u64) -> Result<ExitCode, String> {
    if k < 2 {
        return Err("k must be at least 2".to_string());
    }
    let g = load_graph(input)?;
    let mode = if k % 2 == 1 {
        ParityMode::Odd
    } else {
        ParityMode::Even
    };
    let result = match optimal_leaf_root(&g, mode) {
        Ok(r) => r,
        Err(ConstructError::NotTriviallyPerfect(w)) => {
            println!("not trivially perfect; {w}");
            return Ok(ExitCode::from(2));
        }
        Err(e) => return Err(e.to_string()),
    };
    let yes = result.k <= k;
    println!(
        "kappa={} k={} answer={}",
        result.k,
        k,
        if yes { "yes" } else { "no" }
    );
    Ok(if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn cmd_verify(input: &str, tree_path: &str, k: Option<u64>) -> Result<ExitCode, String> {
    let g = load_graph(input)?;
    let (tree, file_k) = CompressedTree::from_text(&read_input(tree_path)?)?;
    let k = k.unwrap_or(file_k);
    let report = is_k_leaf_root(&tree, &g, k).map_err(|e| e.to_string())?;
    if report.ok {
        println!("ok k={} pairs={}", k, report.checked_pairs);
        Ok(ExitCode::SUCCESS)
    } else {
        for v in &report.violations {
            let (a, b) = v.pair;
            let relation = if v.adjacent { "edge" } else { "non-edge" };
            println!("violation: {relation} {a} {b} at distance {}", v.distance);
        }
        println!(
            "failed k={} violations={} pairs={}",
            k,
            report.violations.len(),
            report.checked_pairs
        );
        Ok(ExitCode::from(3))
    }
}

fn cmd_oracle(max_n: usize) -> Result<ExitCode, String> {
    let graphs = enumerate_small_tpgs(max_n).map_err(|e| e.to_string())?;
    let limits = OracleLimits {
        max_n: max_n.max(6),
        ..OracleLimits::default()
    };
    println!("graph-id,n,parity,k_construct,k_oracle,agree");
    let mut disagreements = 0usize;
    for (i, g) in graphs.iter().enumerate() {
        for (parity, mode) in [
            (Parity::Odd, ParityMode::Odd),
            (Parity::Even, ParityMode::Even),
        ] {
            let constructed = optimal_leaf_root(g, mode).map_err(|e| e.to_string())?;
            let (oracle_k, _) =
                brute_force_optimal(g, parity, limits).map_err(|e| e.to_string())?;
            let agree = constructed.k == oracle_k;
            if !agree {
                disagreements += 1;
            }
            println!(
                "tpg-{}-{},{},{},{},{},{}",
                g.vertex_count(),
                i,
                g.vertex_count(),
                parity_name(parity),
                constructed.k,
                oracle_k,
                agree
            );
        }
    }
    Ok(if disagreements == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn cmd_gen(kind: GenCommand) -> Result<ExitCode, String> {
    let (g, out) = match kind {
        GenCommand::Star { t, out } => (gen_star(t).map_err(|e| e.to_string())?, out),
        GenCommand::Family { i, out } => (gen_family_f(i).map_err(|e| e.to_string())?, out),
        GenCommand::Random {
            n,
            seed,
            branching,
            depth,
            out,
        } => (
            gen_random_tpg(n, seed, branching, depth).map_err(|e| e.to_string())?,
            out,
        ),
        GenCommand::Enumerate { max_n, out } => {
            let graphs = enumerate_small_tpgs(max_n).map_err(|e| e.to_string())?;
            let mut document = String::new();
            for (i, g) in graphs.iter().enumerate() {
                document.push_str(&format!("# graph {i}\n"));
                document.push_str(&g.to_edge_list());
            }
            emit(&out, &document)?;
            return Ok(ExitCode::SUCCESS);
        }
    };
    let document = match out.format {
        FormatArg::Cotree => {
            let (reduced, _) = remove_true_twins(&g);
            build_cotree(&reduced).map_err(|e| e.to_string())?.to_text()
        }
        _ => g.to_edge_list(),
    };
    emit(&out, &document)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(sizes: &[usize], seed: u64) -> Result<ExitCode, String> {
    if sizes.is_empty() {
        return Err("--sizes must name at least one instance size".to_string());
    }
    println!(
        "{:>10} {:>12} {:>12} {:>12} {:>6}",
        "n", "m", "gen-ms", "construct-ms", "k"
    );
    let mut times: Vec<(usize, f64)> = Vec::new();
    for &n in sizes {
        let t0 = Instant::now();
        let g = gen_random_tpg(n, seed, 8, 12).map_err(|e| e.to_string())?;
        let gen_ms = t0.elapsed().as_secs_f64() * 1e3;
        let t1 = Instant::now();
        let result = optimal_leaf_root(&g, ParityMode::Best).map_err(|e| e.to_string())?;
        let construct_ms = t1.elapsed().as_secs_f64() * 1e3;
        println!(
            "{:>10} {:>12} {:>12.2} {:>12.2} {:>6}",
            n,
            g.edge_count(),
            gen_ms,
            construct_ms,
            result.k
        );
        times.push((n, construct_ms));
    }
    for pair in times.windows(2) {
        let (n0, t0) = pair[0];
        let (n1, t1) = pair[1];
        let size_ratio = n1 as f64 / n0 as f64;
        let time_ratio = if t0 > 0.0 { t1 / t0 } else { f64::INFINITY };
        println!("ratio n {n0} -> {n1}: size x{size_ratio:.1}, time x{time_ratio:.2}");
    }
    Ok(ExitCode::SUCCESS)
}
