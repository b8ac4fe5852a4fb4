use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use kgcage::bounds::refined_lower_bound;
use kgcage::canon::DEFAULT_CAPACITY;
use kgcage::constructions::{reduce_all, reduce_by_cycle};
use kgcage::covers::{builtin_families, canonical_double_cover, search_k13loop_lifts, Group, VoltageAssignment};
use kgcage::filter::{check, FilterSpec};
use kgcage::graph::{girth, graph6, Graph};
use kgcage::{generate_all, GenerateOptions};

#[derive(Parser)]
#[command(name = "kgcage", version, about = "Regular graphs of given girth with no cycle one longer")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Every (k,g,g+1)-free graph on n vertices, one per isomorphism class.
    Generate(GenerateArgs),
    /// Lower bounds on the order.
    Bounds {
        #[arg(short)]
        k: u64,
        #[arg(short)]
        g: u64,
    },
    /// Smallest cubic lifts of the star with three loops.
    LiftSearch(LiftSearchArgs),
    /// Canonical double cover of each input graph.
    Cover(InOut),
    /// Lift of the star with three loops for one group and loop triple.
    Lift {
        /// cyclic:M, dihedral:M, dicyclic:M, file:PATH, or a product A*B.
        #[arg(long)]
        group: String,
        #[arg(long, value_delimiter = ',', required = true)]
        loops: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Drop two adjacent vertices of a shortest cycle (girth h -> h-2).
    Reduce {
        #[command(flatten)]
        io: InOut,
        #[arg(short)]
        k: usize,
        /// Every shortest cycle and every edge on it.
        #[arg(long)]
        all_cycles: bool,
        /// Every matching of the remaining neighbours (implies --all-cycles).
        #[arg(long)]
        all_pairings: bool,
    },
    /// Keep the inputs that are (k,g,g+1)-free graphs.
    Filter {
        #[command(flatten)]
        io: InOut,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        g: usize,
        #[arg(long)]
        odd_girth: Option<usize>,
        /// Print a verdict per input on stderr.
        #[arg(short, long)]
        verbose: bool,
    },
}

#[derive(Args)]
struct InOut {
    /// graph6 input; `-` or absent reads stdin.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(short)]
    n: usize,
    #[arg(short)]
    k: usize,
    #[arg(short)]
    g: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
    #[arg(long)]
    no_dedup: bool,
    /// Forms kept by the dedup store before it is switched off.
    #[arg(long, env = "KGCAGE_DEDUP_CAP", default_value_t = DEFAULT_CAPACITY)]
    dedup_cap: usize,
    #[arg(long, default_value_t = 12)]
    split_depth: usize,
    /// Search even when n is below the lower bound.
    #[arg(long)]
    no_bound_check: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LiftSearchArgs {
    #[arg(short)]
    g: usize,
    /// cyclic:MAX, families:MAX, or a directory of Cayley tables.
    #[arg(long, default_value = "cyclic:20")]
    groups: String,
    /// Largest group order tried.
    #[arg(long, default_value_t = usize::MAX)]
    cap: usize,
    /// Write the lift of every witness here.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A flag value that parsed but makes no sense; exits with status 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: String) -> anyhow::Error {
    UsageError(msg).into()
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn input(path: Option<&Path>) -> Result<Box<dyn BufRead>> {
    Ok(match path {
        Some(p) if p != Path::new("-") => {
            Box::new(BufReader::new(File::open(p).with_context(|| format!("opening {}", p.display()))?))
        }
        _ => Box::new(BufReader::new(io::stdin())),
    })
}

/// Decoded graphs plus the number of malformed lines (already logged).
fn read_graphs(path: Option<&Path>) -> Result<(Vec<Graph>, usize)> {
    let mut out = Vec::new();
    let mut bad = 0;
    for rec in graph6::read_all(input(path)?) {
        let rec = rec?;
        match rec.graph {
            Ok(g) => out.push(g),
            Err(e) => {
                log::warn!("line {}: {e}", rec.line);
                bad += 1;
            }
        }
    }
    Ok((out, bad))
}

fn parse_group(spec: &str) -> Result<Group> {
    if let Some((a, b)) = spec.split_once('*') {
        return Ok(Group::direct_product(&parse_group(a)?, &parse_group(b)?));
    }
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| usage(format!("--group: {spec} is not of the form kind:arg")))?;
    let num = || arg.parse::<usize>().map_err(|_| usage(format!("--group: bad number in {spec}")));
    Ok(match kind {
        "cyclic" => Group::cyclic(num()?)?,
        "dihedral" => Group::dihedral(num()?)?,
        "dicyclic" => Group::dicyclic(num()?)?,
        "file" => load_table(Path::new(arg))?,
        _ => return Err(usage(format!("--group: unknown kind {kind}"))),
    })
}

fn load_table(p: &Path) -> Result<Group> {
    let name = p.file_stem().map_or("table".into(), |s| s.to_string_lossy().into_owned());
    let f = File::open(p).with_context(|| format!("opening {}", p.display()))?;
    Group::load_cayley_table(name, BufReader::new(f)).with_context(|| format!("loading {}", p.display()))
}

fn group_source(spec: &str) -> Result<Vec<Group>> {
    if let Some(max) = spec.strip_prefix("cyclic:") {
        let max: usize = max.parse().map_err(|_| usage(format!("--groups: bad bound in {spec}")))?;
        return (1..=max).map(|m| Ok(Group::cyclic(m)?)).collect();
    }
    if let Some(max) = spec.strip_prefix("families:") {
        let max: usize = max.parse().map_err(|_| usage(format!("--groups: bad bound in {spec}")))?;
        return Ok(builtin_families(max));
    }
    let mut paths: Vec<PathBuf> = std::fs::read_dir(spec)
        .with_context(|| format!("reading group directory {spec}"))?
        .map(|e| e.map(|e| e.path()))
        .collect::<io::Result<_>>()?;
    paths.sort();
    let mut groups = paths.iter().map(|p| load_table(p)).collect::<Result<Vec<_>>>()?;
    groups.sort_by_key(|g| g.order());
    Ok(groups)
}

fn generate(a: GenerateArgs) -> Result<()> {
    let opts = GenerateOptions {
        workers: a.workers.into(),
        dedup: !a.no_dedup,
        dedup_capacity: a.dedup_cap,
        split_depth: a.split_depth,
        check_lower_bound: !a.no_bound_check,
    };
    let mut out = output(a.out.as_deref())?;
    let start = Instant::now();
    let mut io_err = None;
    let (count, stats) = generate_all(a.n, a.k, a.g, &opts, |g| {
        if io_err.is_none() {
            io_err = writeln!(out, "{}", graph6::encode(g)).err();
        }
    })?;
    if let Some(e) = io_err {
        return Err(e.into());
    }
    out.flush()?;
    if let Some(why) = &stats.skipped {
        eprintln!("skipped: {why}");
    }
    eprintln!(
        "{count} graphs, {} nodes, {} dedup hits{}, {:.2?}",
        stats.nodes,
        stats.dedup_hits,
        if stats.dedup_overflowed { " (dedup overflowed)" } else { "" },
        start.elapsed()
    );
    Ok(())
}

fn lift_search(a: LiftSearchArgs) -> Result<()> {
    let groups = group_source(&a.groups)?;
    let start = Instant::now();
    let r = search_k13loop_lifts(a.g, &groups, a.cap);
    match r.order {
        Some(n) => println!("order {n}"),
        None => println!("none"),
    }
    for w in &r.witnesses {
        println!("{} {},{},{}", w.group, w.loops[0], w.loops[1], w.loops[2]);
    }
    if let Some(p) = &a.out {
        let mut out = output(Some(p))?;
        for w in &r.witnesses {
            let group = groups.iter().find(|g| g.name() == w.group).expect("witness group is in the source");
            let lift = VoltageAssignment::k13_loop(group.clone(), w.loops)?.lift()?;
            writeln!(out, "{}", graph6::encode(&lift))?;
        }
        out.flush()?;
    }
    eprintln!(
        "{} groups, {} triples, {:.2?}",
        r.groups_tried,
        r.triples_tried,
        start.elapsed()
    );
    Ok(())
}

/// Runs a subcommand. `Ok(false)` means it finished but some inputs were
/// malformed.
fn run(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Generate(a) => generate(a)?,
        Cmd::Bounds { k, g } => {
            let r = refined_lower_bound(k, g)?;
            print!("{}", r.key_values());
        }
        Cmd::LiftSearch(a) => lift_search(a)?,
        Cmd::Cover(io) => {
            let (graphs, bad) = read_graphs(io.input.as_deref())?;
            let mut out = output(io.out.as_deref())?;
            for g in &graphs {
                writeln!(out, "{}", graph6::encode(&canonical_double_cover(g)))?;
            }
            out.flush()?;
            return Ok(bad == 0);
        }
        Cmd::Lift { group, loops, out } => {
            let group = parse_group(&group)?;
            let loops: [u32; 3] = loops
                .try_into()
                .map_err(|l: Vec<u32>| usage(format!("--loops: need three voltages, got {}", l.len())))?;
            let lift = VoltageAssignment::k13_loop(group, loops)?.lift()?;
            let mut w = output(out.as_deref())?;
            writeln!(w, "{}", graph6::encode(&lift))?;
            w.flush()?;
        }
        Cmd::Reduce {
            io,
            k,
            all_cycles,
            all_pairings,
        } => {
            let (graphs, bad) = read_graphs(io.input.as_deref())?;
            let mut out = output(io.out.as_deref())?;
            for g in &graphs {
                let h = girth(g).context("input graph is acyclic")?;
                if all_cycles || all_pairings {
                    for (plan, r) in reduce_all(g, k, h, all_pairings)? {
                        let s = r.with_context(|| format!("plan {plan:?}"))?;
                        writeln!(out, "{}", graph6::encode(&s))?;
                    }
                } else {
                    writeln!(out, "{}", graph6::encode(&reduce_by_cycle(g, k, h)?))?;
                }
            }
            out.flush()?;
            return Ok(bad == 0);
        }
        Cmd::Filter {
            io,
            k,
            g,
            odd_girth,
            verbose,
        } => {
            let spec = FilterSpec { k, g, odd_girth };
            let mut out = output(io.out.as_deref())?;
            let mut bad = 0;
            let (mut seen, mut kept) = (0, 0);
            for rec in graph6::read_all(input(io.input.as_deref())?) {
                let rec = rec?;
                let graph = match rec.graph {
                    Ok(x) => x,
                    Err(e) => {
                        log::warn!("line {}: {e}", rec.line);
                        bad += 1;
                        continue;
                    }
                };
                seen += 1;
                let v = check(&graph, spec).with_context(|| format!("line {}", rec.line))?;
                if verbose {
                    eprintln!("line {}: {v}", rec.line);
                }
                if v.pass {
                    kept += 1;
                    writeln!(out, "{}", graph6::encode(&graph))?;
                }
            }
            out.flush()?;
            eprintln!("{kept} of {seen} kept");
            return Ok(bad == 0);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.is::<UsageError>() { 2 } else { 1 })
        }
    }
}
