use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use princlat::blocks::{
    anchor_block, build_S, build_S0, build_T, build_T_dual, certify_block, edge_block, edge_block_dual, middle_block,
    verify_S, BlockSpec, LabeledLattice,
};
use princlat::congruence::{all_congruences, least_containing, principal_congruence, CongruenceEngine, Partition};
use princlat::dot;
use princlat::graph::{certify_graph, frucht_graph, group_from_spec, representing_graph, Graph, GraphJson};
use princlat::order::{Lattice, LatticeJson, Poset, PosetJson};
use princlat::report::Report;
use princlat::representation::{audit_representation, represent, verify_representation, RepresentationInput};
use princlat::symmetry::{graph_automorphisms_with, lattice_automorphisms_with, GroupTable, PermGroup, SearchOptions};

#[derive(Parser)]
#[command(name = "princlat", version, about = "Lattices with prescribed principal congruences and automorphism group")]
struct Cli {
    /// Worker threads for parallel steps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Node budget for automorphism and isomorphism searches.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit and certify a block or the tower lattice S(n).
    Blocks(BlocksArgs),
    /// Build a graph whose automorphism group is the given group.
    Frucht(FruchtArgs),
    /// Build a lattice for a bounded poset and a group.
    Represent(RepresentArgs),
    /// Check Princ and Aut of a lattice against a poset and a group.
    Verify(VerifyArgs),
    /// The poset of principal congruences of a lattice.
    Princ(PrincArgs),
    /// The automorphism group of a lattice or graph.
    Aut(AutArgs),
    /// All congruences of a small lattice, cross-checked with the closure.
    Oracle(OracleArgs),
    /// Normalise a JSON file and optionally render it as DOT.
    Export(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BlockName {
    Middle,
    Anchor,
    Edge,
    EdgeDual,
    T,
    TDual,
    S0,
}

#[derive(Args)]
struct Output {
    /// JSON artifact path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// DOT rendering path.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// JSON report path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct BlocksArgs {
    /// Build S(n).
    #[arg(long, conflicts_with = "block")]
    s: Option<u32>,
    /// Build a named block instead.
    #[arg(long, value_enum)]
    block: Option<BlockName>,
    /// Index for t, t-dual and s0.
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// Run the certification and exit 1 if it fails.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct FruchtArgs {
    /// Group spec: c<n>, d<n>, s<n>, v4, trivial, AxB or table:<file>.
    #[arg(long)]
    group: String,
    /// Prefer the smallest graph on at most six vertices.
    #[arg(long)]
    small: bool,
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct RepresentArgs {
    #[arg(long)]
    poset: PathBuf,
    #[arg(long)]
    group: String,
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    lattice: PathBuf,
    #[arg(long)]
    poset: PathBuf,
    #[arg(long)]
    group: String,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct PrincArgs {
    #[arg(long)]
    lattice: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct AutArgs {
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    lattice: Option<PathBuf>,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    lattice: PathBuf,
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long, group = "input")]
    lattice: Option<PathBuf>,
    #[arg(long, group = "input")]
    poset: Option<PathBuf>,
    #[arg(long, group = "input")]
    graph: Option<PathBuf>,
    #[arg(long, group = "input")]
    group: Option<String>,
    #[command(flatten)]
    output: Output,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let opts = SearchOptions::default().with_budget(cli.budget);
    match run(cli.command, &opts) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means a certification ran and failed.
fn run(command: Command, opts: &SearchOptions) -> Result<bool> {
    match command {
        Command::Blocks(a) => blocks(a),
        Command::Frucht(a) => frucht(a),
        Command::Represent(a) => represent_cmd(a, opts),
        Command::Verify(a) => verify_cmd(a, opts),
        Command::Princ(a) => princ(a),
        Command::Aut(a) => aut(a, opts),
        Command::Oracle(a) => oracle(a),
        Command::Export(a) => export(a),
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Lattice JSON, or poset JSON whose order is a lattice.
fn read_lattice(path: &Path) -> Result<Lattice> {
    let v = read_json(path)?;
    let l = if v.get("bottom").is_some() {
        Lattice::from_json(&serde_json::from_value::<LatticeJson>(v)?)
    } else {
        let p: PosetJson = serde_json::from_value(v)?;
        Poset::from_json(&p).and_then(Lattice::from_poset)
    };
    l.with_context(|| format!("{} is not a lattice", path.display()))
}

fn read_poset(path: &Path) -> Result<Poset> {
    let p: PosetJson = serde_json::from_value(read_json(path)?)?;
    Poset::from_json(&p).with_context(|| format!("{} is not a poset", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    let g: GraphJson = serde_json::from_value(read_json(path)?)?;
    Graph::from_json(&g).with_context(|| format!("{} is not a graph", path.display()))
}

fn read_group(spec: &str) -> Result<GroupTable> {
    group_from_spec(spec).with_context(|| format!("group {spec:?}"))
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match path {
        Some(p) => fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn print_report(r: &Report) {
    eprint!("{r}");
}

fn labeled_json(b: &LabeledLattice) -> Value {
    let labels: BTreeMap<String, u32> = b.labels.iter().map(|(k, &v)| (k.to_string(), v)).collect();
    json!({ "lattice": b.lattice.to_json(), "labels": labels })
}

fn blocks(a: BlocksArgs) -> Result<bool> {
    let (b, report) = match (a.s, a.block) {
        (Some(n), _) => {
            let s = build_S(n)?;
            let r = if a.verify { Some(verify_S(&s, n)?) } else { None };
            (s, r)
        }
        (None, Some(name)) => {
            let (b, spec) = match name {
                BlockName::Middle => (middle_block(), Some(BlockSpec::middle())),
                BlockName::Anchor => (anchor_block(), Some(BlockSpec::anchor())),
                BlockName::Edge => (edge_block(), Some(BlockSpec::edge())),
                BlockName::EdgeDual => (edge_block_dual(), Some(BlockSpec::edge())),
                BlockName::T => (build_T(a.n), None),
                BlockName::TDual => (build_T_dual(a.n), None),
                BlockName::S0 => (build_S0(a.n)?, None),
            };
            let r = match (a.verify, spec) {
                (true, Some(spec)) => Some(certify_block(&b, &spec)?),
                (true, None) => {
                    let mut r = Report::new();
                    let e = CongruenceEngine::new(&b.lattice);
                    r.push("simple", e.is_simple(), "");
                    r.push("length", true, b.lattice.length().to_string());
                    Some(r)
                }
                (false, _) => None,
            };
            (b, r)
        }
        (None, None) => bail!("pass --s <n> or --block <name>"),
    };
    write_json(a.output.out.as_deref(), &labeled_json(&b))?;
    write_text(a.output.dot.as_deref(), &dot::labeled_dot(&b))?;
    match report {
        Some(r) => {
            print_report(&r);
            if let Some(p) = &a.output.report {
                write_json(Some(p), &r)?;
            }
            Ok(r.passed())
        }
        None => Ok(true),
    }
}

fn frucht(a: FruchtArgs) -> Result<bool> {
    let g = read_group(&a.group)?;
    let graph = if a.small { representing_graph(&g)? } else { frucht_graph(&g)? };
    write_json(a.output.out.as_deref(), &graph.to_json())?;
    write_text(a.output.dot.as_deref(), &dot::graph_dot(&graph))?;
    if !a.verify {
        return Ok(true);
    }
    let ok = certify_graph(&graph, &g)?;
    let r = json!({
        "vertices": graph.vertex_count(),
        "edges": graph.edges().len(),
        "group_order": g.order(),
        "certified": ok,
    });
    eprintln!("[{}] Aut(graph) = G: {} vertices, |G| = {}", if ok { "pass" } else { "FAIL" }, graph.vertex_count(), g.order());
    if let Some(p) = &a.output.report {
        write_json(Some(p), &r)?;
    }
    Ok(ok)
}

fn represent_cmd(a: RepresentArgs, opts: &SearchOptions) -> Result<bool> {
    let p = read_poset(&a.poset)?;
    let g = read_group(&a.group)?;
    let input = RepresentationInput::new(p.clone(), g.clone())?;
    let rep = represent(&input)?;
    write_json(a.output.out.as_deref(), &rep.lattice().to_json())?;
    write_text(a.output.dot.as_deref(), &dot::representation_dot(&rep))?;

    let mut report = json!({
        "elements": rep.lattice().len(),
        "frame_elements": rep.frame.lattice().len(),
        "graph": rep.graph.to_json(),
        "blocks": rep.assignment,
        "frame_checks": rep.frame_report,
        "build_timings_ms": rep.timings_ms,
    });
    let mut ok = true;
    if a.verify {
        let v = verify_representation(rep.lattice(), &p, &g, opts)?;
        let audit = audit_representation(&rep, &p)?;
        print_report(&v.checks);
        print_report(&audit);
        eprintln!("length {} (claimed {}), selfdual {:?}", v.length, princlat::representation::CLAIMED_LENGTH, v.selfdual);
        ok = v.passed() && audit.passed();
        report["verification"] = serde_json::to_value(&v)?;
        report["audits"] = serde_json::to_value(&audit)?;
    }
    if let Some(path) = &a.output.report {
        write_json(Some(path), &report)?;
    }
    Ok(ok)
}

fn verify_cmd(a: VerifyArgs, opts: &SearchOptions) -> Result<bool> {
    let l = read_lattice(&a.lattice)?;
    let p = read_poset(&a.poset)?;
    let g = read_group(&a.group)?;
    let v = verify_representation(&l, &p, &g, opts)?;
    print_report(&v.checks);
    eprintln!("length {}, selfdual {:?}", v.length, v.selfdual);
    write_json(a.report.as_deref(), &v)?;
    Ok(v.passed())
}

fn princ(a: PrincArgs) -> Result<bool> {
    let l = read_lattice(&a.lattice)?;
    let e = CongruenceEngine::new(&l);
    let pp = e.principal_poset();
    let blocks: Vec<Partition> = pp.sets.iter().map(|s| e.partition(s)).collect();
    let PosetJson { n, covers } = pp.poset.to_json();
    let out = json!({ "n": n, "covers": covers, "generators": pp.reps, "congruences": blocks });
    write_json(a.output.out.as_deref(), &out)?;
    write_text(a.output.dot.as_deref(), &dot::princ_dot(&pp, &e))?;
    Ok(true)
}

fn group_json(g: &PermGroup) -> Value {
    json!({ "order": g.order(), "degree": g.degree(), "elements": g.to_json() })
}

fn aut(a: AutArgs, opts: &SearchOptions) -> Result<bool> {
    let g = match (&a.lattice, &a.graph) {
        (Some(l), _) => lattice_automorphisms_with(&read_lattice(l)?, opts)?,
        (None, Some(g)) => graph_automorphisms_with(&read_graph(g)?, opts)?,
        (None, None) => bail!("pass --lattice or --graph"),
    };
    write_json(a.out.as_deref(), &group_json(&g))?;
    Ok(true)
}

fn oracle(a: OracleArgs) -> Result<bool> {
    let l = read_lattice(&a.lattice)?;
    let all = all_congruences(&l)?;
    write_json(a.output.out.as_deref(), &all)?;
    if !a.verify {
        return Ok(true);
    }
    let mut r = Report::new();
    let mut mismatch = None;
    let mut pairs = 0;
    'outer: for x in 0..l.len() as u32 {
        for y in 0..l.len() as u32 {
            if x < y && l.leq(x, y) {
                pairs += 1;
                let closure = principal_congruence(&l, x, y)?;
                if least_containing(&all, x, y) != Some(&closure) {
                    mismatch = Some((x, y));
                    break 'outer;
                }
            }
        }
    }
    r.push(
        "closure agrees with the oracle",
        mismatch.is_none(),
        match mismatch {
            Some((x, y)) => format!("con({x}, {y}) differs"),
            None => format!("{pairs} comparable pairs, {} congruences", all.len()),
        },
    );
    print_report(&r);
    if let Some(p) = &a.output.report {
        write_json(Some(p), &r)?;
    }
    Ok(r.passed())
}

fn export(a: ExportArgs) -> Result<bool> {
    let out = a.output.out.as_deref();
    let dot_path = a.output.dot.as_deref();
    if let Some(p) = &a.lattice {
        let l = read_lattice(p)?;
        write_json(out, &l.to_json())?;
        write_text(dot_path, &dot::lattice_dot(&l))?;
    } else if let Some(p) = &a.poset {
        let q = read_poset(p)?;
        write_json(out, &q.to_json())?;
        write_text(dot_path, &dot::poset_dot(&q, &BTreeMap::new()))?;
    } else if let Some(p) = &a.graph {
        let g = read_graph(p)?;
        write_json(out, &g.to_json())?;
        write_text(dot_path, &dot::graph_dot(&g))?;
    } else if let Some(spec) = &a.group {
        write_json(out, &read_group(spec)?)?;
    } else {
        bail!("pass one of --lattice, --poset, --graph, --group");
    }
    Ok(true)
}
