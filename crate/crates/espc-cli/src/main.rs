//! `espc` command line: build, query, verify, inspect, and benchmark
//! shortest-path-counting indexes.
//!
//! Output is structured (`key=value` lines and CSV) so benchmark and
//! verification flows can be scripted. Exit codes: 0 ok, 1 usage error,
//! 2 data error (I/O, parse, overflow, bounds), 3 verification failure.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use espc::label::parallel::DEFAULT_LANDMARKS;
use espc::{
    batch_query, build_timed, io as index_io, oracle, spc_query, BuildConfig, BuildOptions,
    BuilderKind, Graph, OrderKind, PropagationMode, QueryResult, ReduceSetting, Scheduler,
    SpcIndex, DEFAULT_DELTA,
};

#[derive(Parser)]
#[command(name = "espc", version, about = "Exact shortest-path counting over 2-hop labels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Degree,
    Elim,
    Hybrid,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuilderArg {
    Seq,
    Pspc,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Pull,
    Push,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchedulerArg {
    Static,
    Dynamic,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceArg {
    None,
    Shell,
    Twin,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    /// Preferential attachment (scale-free).
    Pa,
    /// Erdős–Rényi style uniform edges.
    Er,
}

#[derive(Args)]
struct BuildFlags {
    /// Vertex ordering heuristic.
    #[arg(long, value_enum, default_value = "degree")]
    order: OrderArg,
    /// Degree threshold splitting core and fringe parts of the hybrid order.
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: u32,
    /// Label builder.
    #[arg(long, value_enum, default_value = "pspc")]
    builder: BuilderArg,
    /// Propagation mode of the pspc builder.
    #[arg(long, value_enum, default_value = "pull")]
    mode: ModeArg,
    /// Worker threads for the pspc builder.
    #[arg(long, default_value_t = default_threads())]
    threads: usize,
    /// Number of landmark vertices for pruning filters.
    #[arg(long, default_value_t = DEFAULT_LANDMARKS)]
    landmarks: usize,
    /// Work assignment within a round.
    #[arg(long, value_enum, default_value = "static")]
    scheduler: SchedulerArg,
    /// Graph reductions applied before indexing.
    #[arg(long, value_enum, default_value = "none")]
    reduce: ReduceArg,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from an edge-list graph and write it to disk.
    Build {
        /// Edge-list file (whitespace-separated pairs; '#'/'%' comments).
        #[arg(long)]
        graph: PathBuf,
        /// Output index path.
        #[arg(long)]
        index: PathBuf,
        #[command(flatten)]
        flags: BuildFlags,
    },
    /// Answer one s-t query from an index (original ids); prints "dist count".
    Query {
        #[arg(long)]
        index: PathBuf,
        s: u32,
        t: u32,
    },
    /// Answer a file of queries (one "s t" per line); prints one result per
    /// line plus the mean per-query latency.
    Batch {
        #[arg(long)]
        index: PathBuf,
        /// Pairs file.
        pairs: PathBuf,
        #[arg(long, default_value_t = default_threads())]
        threads: usize,
    },
    /// Print index statistics.
    Stats {
        #[arg(long)]
        index: PathBuf,
    },
    /// Compare every pair against the brute-force oracle; exit 3 on mismatch.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        index: PathBuf,
        /// Largest vertex count the oracle will accept.
        #[arg(long, default_value_t = oracle::DEFAULT_ORACLE_BOUND)]
        bound: usize,
    },
    /// Build across a thread ladder and report speedups and query throughput
    /// as CSV.
    Bench {
        /// Edge-list file; omit to generate a graph.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Topology of the generated graph.
        #[arg(long, value_enum, default_value = "pa")]
        gen_kind: GenKind,
        /// Vertices of the generated graph.
        #[arg(long, default_value_t = 20_000)]
        gen_n: usize,
        /// Edges per vertex of the generated graph (attachment count for pa).
        #[arg(long, default_value_t = 5.0)]
        gen_factor: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest worker count of the {1, 2, 4, ...} ladder.
        #[arg(long, default_value_t = default_threads())]
        max_threads: usize,
        #[command(flatten)]
        flags: BuildFlags,
    },
    /// Generate a random graph and write it as an edge list.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2.0)]
        factor: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

impl BuildFlags {
    fn options(&self) -> BuildOptions {
        BuildOptions {
            reduce: match self.reduce {
                ReduceArg::None => ReduceSetting::None,
                ReduceArg::Shell => ReduceSetting::Shell,
                ReduceArg::Twin => ReduceSetting::Twin,
                ReduceArg::Both => ReduceSetting::Both,
            },
            order: match self.order {
                OrderArg::Degree => OrderKind::Degree,
                OrderArg::Elim => OrderKind::Elimination,
                OrderArg::Hybrid => OrderKind::Hybrid,
            },
            delta: self.delta,
            builder: match self.builder {
                BuilderArg::Seq => BuilderKind::Seq,
                BuilderArg::Pspc => BuilderKind::Pspc,
            },
            parallel: BuildConfig {
                mode: match self.mode {
                    ModeArg::Pull => PropagationMode::Pull,
                    ModeArg::Push => PropagationMode::Push,
                },
                workers: self.threads.max(1),
                landmark_count: self.landmarks,
                scheduler: match self.scheduler {
                    SchedulerArg::Static => Scheduler::Static,
                    SchedulerArg::Dynamic => Scheduler::DynamicCost,
                },
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Keep clap's rendering but force usage errors onto exit code 1.
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_graph(path: &Path) -> espc::Result<Graph> {
    let g = Graph::load_edge_list(BufReader::new(File::open(path)?))?;
    g.validate()?;
    Ok(g)
}

fn load_index(path: &Path) -> espc::Result<SpcIndex> {
    index_io::load(BufReader::new(File::open(path)?))
}

fn run(cmd: Command) -> espc::Result<ExitCode> {
    match cmd {
        Command::Build { graph, index, flags } => {
            let g = load_graph(&graph)?;
            let (idx, t) = build_timed(&g, &flags.options())?;
            let mut out = BufWriter::new(File::create(&index)?);
            let bytes = index_io::save(&idx, &mut out)?;
            out.flush()?;
            println!("graph_n={} graph_m={}", g.num_vertices(), g.num_edges());
            println!("reduce_s={:.6}", t.reduce_s);
            println!("order_s={:.6}", t.order_s);
            println!("landmark_s={:.6}", t.landmark_s);
            println!("label_s={:.6}", t.label_s);
            println!("total_s={:.6}", t.total_s);
            println!("index_bytes={bytes}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Query { index, s, t } => {
            let idx = load_index(&index)?;
            println!("{}", spc_query(&idx, s, t)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Batch { index, pairs, threads } => {
            let idx = load_index(&index)?;
            let parsed = read_pairs(&pairs)?;
            let start = Instant::now();
            let results = batch_query(&idx, &parsed, threads.max(1))?;
            let elapsed = start.elapsed();
            let stdout = std::io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            for r in &results {
                writeln!(out, "{r}")?;
            }
            let mean_us = if results.is_empty() {
                0.0
            } else {
                elapsed.as_secs_f64() * 1e6 / results.len() as f64
            };
            writeln!(out, "mean_query_us={mean_us:.3}")?;
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Stats { index } => {
            let idx = load_index(&index)?;
            let s = index_io::stats(&idx);
            println!("n_orig={}", idx.num_orig_vertices);
            println!("m_orig={}", idx.num_orig_edges);
            println!("n_indexed={}", idx.order.len());
            println!("entries={}", s.entries);
            println!("bytes={}", s.bytes);
            println!("per_vertex_mean={:.3}", s.per_vertex_mean);
            println!("per_vertex_max={}", s.per_vertex_max);
            for (d, c) in s.dist_histogram.iter().enumerate() {
                println!("dist_{d}={c}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { graph, index, bound } => {
            let g = load_graph(&graph)?;
            let idx = load_index(&index)?;
            verify(&g, &idx, bound)
        }
        Command::Bench {
            graph,
            gen_kind,
            gen_n,
            gen_factor,
            seed,
            max_threads,
            flags,
        } => {
            let g = match graph {
                Some(path) => load_graph(&path)?,
                None => match gen_kind {
                    GenKind::Pa => {
                        Graph::generate_preferential(gen_n, gen_factor.round().max(1.0) as usize, seed)
                    }
                    GenKind::Er => Graph::generate_random(gen_n, gen_factor, seed),
                },
            };
            bench(&g, &flags, max_threads, seed)
        }
        Command::Gen { n, factor, seed, out } => {
            if n == 0 {
                return Err(espc::Error::InvalidInput("gen requires n >= 1".into()));
            }
            let g = Graph::generate_random(n, factor, seed);
            let mut w = BufWriter::new(File::create(&out)?);
            g.write_edge_list(&mut w)?;
            w.flush()?;
            println!("n={} m={}", g.num_vertices(), g.num_edges());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_pairs(path: &Path) -> espc::Result<Vec<(u32, u32)>> {
    let mut pairs = Vec::new();
    for (i, line) in BufReader::new(File::open(path)?).lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tok = trimmed.split_whitespace();
        let parse = |t: Option<&str>| -> espc::Result<u32> {
            t.and_then(|x| x.parse().ok()).ok_or(espc::Error::Parse {
                line: i + 1,
                msg: "expected two vertex ids".into(),
            })
        };
        let s = parse(tok.next())?;
        let t = parse(tok.next())?;
        if tok.next().is_some() {
            return Err(espc::Error::Parse {
                line: i + 1,
                msg: "expected exactly two ids".into(),
            });
        }
        pairs.push((s, t));
    }
    Ok(pairs)
}

fn verify(g: &Graph, idx: &SpcIndex, bound: usize) -> espc::Result<ExitCode> {
    let n = g.num_vertices();
    let table = oracle::all_pairs_oracle(g, Some(bound))?;
    for s in 0..n as u32 {
        for t in 0..n as u32 {
            let got = spc_query(idx, s, t)?;
            let (ed, ec) = (table[s as usize].dist[t as usize], table[s as usize].sigma[t as usize]);
            let expected = if ed == oracle::UNREACHABLE {
                QueryResult::UNREACHABLE
            } else {
                QueryResult::reachable(ed, ec)
            };
            if got != expected {
                println!("mismatch s={s} t={t} got=({got}) expected=({expected})");
                return Ok(ExitCode::from(3));
            }
        }
    }
    println!("verified_pairs={}", n * n);
    Ok(ExitCode::SUCCESS)
}

fn bench(g: &Graph, flags: &BuildFlags, max_threads: usize, seed: u64) -> espc::Result<ExitCode> {
    let base = flags.options();
    let mut ladder = vec![1usize];
    while let Some(&last) = ladder.last() {
        if last * 2 > max_threads.max(1) {
            break;
        }
        ladder.push(last * 2);
    }
    println!("threads,build_s,speedup");
    let mut t1 = None;
    let mut ratio4 = None;
    let mut last_idx = None;
    for &t in &ladder {
        let mut opts = base.clone();
        opts.builder = BuilderKind::Pspc;
        opts.parallel.workers = t;
        let (idx, timings) = build_timed(g, &opts)?;
        let secs = timings.total_s;
        let t1v = *t1.get_or_insert(secs);
        println!("{t},{secs:.4},{:.3}", t1v / secs);
        if t == 4 {
            ratio4 = Some(secs / t1v);
        }
        last_idx = Some(idx);
    }
    if let Some(r) = ratio4 {
        if r <= 0.7 {
            println!("speedup_check=pass ratio4={r:.3}");
        } else {
            println!("speedup_check=warn ratio4={r:.3}");
            eprintln!(
                "warning: 4-worker build took {r:.2}x the 1-worker time (threshold 0.70)"
            );
        }
    }

    if let Some(idx) = last_idx {
        use rand::{Rng, SeedableRng};
        let n = idx.num_orig_vertices as u32;
        if n > 0 {
            println!("batch_size,mean_query_us,queries_per_s");
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
            for batch in [1_000usize, 10_000, 100_000] {
                let pairs: Vec<(u32, u32)> = (0..batch)
                    .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
                    .collect();
                let start = Instant::now();
                batch_query(&idx, &pairs, max_threads.max(1))?;
                let el = start.elapsed().as_secs_f64();
                println!("{batch},{:.3},{:.0}", el * 1e6 / batch as f64, batch as f64 / el);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
