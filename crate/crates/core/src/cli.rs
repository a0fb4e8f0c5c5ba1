//! Command-line front end for the `popg` binary.
//!
//! Exit codes: 0 success, 1 checks failed, 2 usage or parse error,
//! 3 enumeration budget exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::embed::{emit_dot, emit_svg};
use crate::format::{parse_popg, serialize_parts, PopgDocument};
use crate::graph::{edge_poset, validate_processive, ProcessiveGraph};
use crate::induce::induce_vertex_order;
use crate::oracle::{
    self, converse_search, random_processive, theorem_sweep, GraphCatalogSpec, IndexExtensions, OracleError,
    DEFAULT_BUDGET,
};
use crate::order::{check_conjugate, check_p1, check_p2, conjugate_relation, ConjugateVerdict};
use crate::par::Execution;
use crate::pop::{anchors, check_consecutive, check_interval, make_pop, Outcome, PopError, PopGraph};
use crate::poset::LinearOrder;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "popg", version, about = "Planar orders on processive graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DrawFormat {
    Svg,
    Dot,
}

#[derive(Debug, clap::Args)]
struct SweepArgs {
    #[arg(long)]
    max_edges: usize,
    /// Defaults to twice the edge bound.
    #[arg(long)]
    max_vertices: Option<usize>,
    #[arg(long)]
    connected_only: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

impl SweepArgs {
    fn spec(&self) -> GraphCatalogSpec {
        let mut spec = GraphCatalogSpec::up_to_edges(self.max_edges);
        if let Some(v) = self.max_vertices {
            spec.max_vertices = v;
        }
        if self.connected_only {
            spec = spec.connected_only();
        }
        spec
    }

    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check processivity and the planar-order axioms of the edge order.
    Validate { file: PathBuf },
    /// Print the extreme incoming and outgoing edges of every vertex.
    Anchors { file: PathBuf },
    /// Check consecutiveness and interval adjacency at every vertex.
    Lemma { file: PathBuf },
    /// Print the conjugate relation of the edge order and check it.
    Conjugate { file: PathBuf },
    /// Print the induced vertex order, one id per line.
    Induce { file: PathBuf },
    /// Stream linear extensions of the edge poset, one per line.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        planar_only: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Check every planar edge order of every small graph.
    Sweep(SweepArgs),
    /// Search for planar vertex orders not induced by any planar edge order.
    Converse(SweepArgs),
    /// Render the POP-graph.
    Draw {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = DrawFormat::Svg)]
        format: DrawFormat,
    },
    /// Generate a random processive graph.
    Gen {
        #[arg(long)]
        internal: usize,
        #[arg(long)]
        extra: usize,
        #[arg(long)]
        seed: u64,
    },
}

/// Outcome of a subcommand that did not finish normally.
struct Exit(i32);

type CmdResult = Result<i32, Exit>;

fn fail(err: &mut dyn Write, code: i32, msg: impl std::fmt::Display) -> Exit {
    let _ = writeln!(err, "error: {msg}");
    Exit(code)
}

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Validate { file } => cmd_validate(&file, out, err),
        Command::Anchors { file } => cmd_anchors(&file, out, err),
        Command::Lemma { file } => cmd_lemma(&file, out, err),
        Command::Conjugate { file } => cmd_conjugate(&file, out, err),
        Command::Induce { file } => cmd_induce(&file, out, err),
        Command::Enumerate {
            file,
            planar_only,
            budget,
        } => cmd_enumerate(&file, planar_only, budget, out, err),
        Command::Sweep(args) => cmd_sweep(&args, out, err),
        Command::Converse(args) => cmd_converse(&args, out, err),
        Command::Draw {
            file,
            out: path,
            format,
        } => cmd_draw(&file, &path, format, out, err),
        Command::Gen { internal, extra, seed } => cmd_gen(internal, extra, seed, out),
    };
    match result {
        Ok(code) | Err(Exit(code)) => code,
    }
}

fn load(path: &Path, err: &mut dyn Write) -> Result<PopgDocument, Exit> {
    let text = fs::read_to_string(path).map_err(|e| fail(err, EXIT_USAGE, format!("{}: {e}", path.display())))?;
    parse_popg(&text).map_err(|e| fail(err, EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load_processive(
    path: &Path,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(ProcessiveGraph, LinearOrder), Exit> {
    let doc = load(path, err)?;
    match validate_processive(doc.graph) {
        Ok(g) => Ok((g, doc.order)),
        Err(violations) => {
            let _ = writeln!(out, "processive: FAIL");
            for v in violations {
                let _ = writeln!(out, "  {v}");
            }
            Err(Exit(EXIT_CHECK_FAILED))
        }
    }
}

fn load_pop(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Result<PopGraph, Exit> {
    let (g, order) = load_processive(path, out, err)?;
    match make_pop(g, order) {
        Ok(pop) => Ok(pop),
        Err(PopError::NotPlanar(v)) => {
            let _ = write!(out, "edge order is not planar\n{v}");
            Err(Exit(EXIT_CHECK_FAILED))
        }
        Err(e) => Err(fail(err, EXIT_USAGE, e)),
    }
}

fn cmd_validate(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let (g, order) = load_processive(path, out, err)?;
    let _ = writeln!(out, "processive: ok");
    let poset = edge_poset(&g);
    let p1 = check_p1(&poset, &order).map_err(|e| fail(err, EXIT_USAGE, e))?;
    let p2 = check_p2(&poset, &order).map_err(|e| fail(err, EXIT_USAGE, e))?;
    let verdict = |n: usize| {
        if n == 0 {
            "ok".to_string()
        } else {
            format!("FAIL ({n})")
        }
    };
    let _ = writeln!(out, "P1: {}, P2: {}", verdict(p1.len()), verdict(p2.len()));
    for (a, b) in &p1 {
        let _ = writeln!(out, "  P1 violation: {a} -> {b} but {b} precedes {a}");
    }
    for (a, b, c) in &p2 {
        let _ = writeln!(out, "  P2 violation: {a} < {b} < {c} with {a} -> {c}");
    }
    Ok(if p1.is_empty() && p2.is_empty() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn cmd_anchors(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let pop = load_pop(path, out, err)?;
    let show = |e: Option<String>| e.unwrap_or_else(|| "-".into());
    for v in pop.graph().vertex_ids() {
        let a = anchors(&pop, v).expect("vertex is in the graph");
        let _ = writeln!(
            out,
            "{v}\ti-={}\ti+={}\to-={}\to+={}",
            show(a.i_minus),
            show(a.i_plus),
            show(a.o_minus),
            show(a.o_plus)
        );
    }
    Ok(EXIT_OK)
}

fn cmd_lemma(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let pop = load_pop(path, out, err)?;
    let rank = |r: Option<usize>| r.map_or("-".to_string(), |r| r.to_string());
    let hull = |h: Option<(usize, usize)>| h.map_or("-".to_string(), |(a, b)| format!("[{a},{b}]"));
    let mut failed = 0;
    for (c, i) in check_consecutive(&pop).into_iter().zip(check_interval(&pop)) {
        failed += usize::from(c.outcome == Outcome::Fail) + usize::from(i.outcome == Outcome::Fail);
        let _ = writeln!(
            out,
            "{}\tconsecutive {} (i+ {}, o- {})\tinterval {} (I {}, O {})",
            c.vertex,
            c.outcome,
            rank(c.i_plus_rank),
            rank(c.o_minus_rank),
            i.outcome,
            hull(i.in_hull),
            hull(i.out_hull)
        );
    }
    let _ = writeln!(out, "failures: {failed}");
    Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_conjugate(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let (g, order) = load_processive(path, out, err)?;
    let poset = edge_poset(&g);
    let rel = conjugate_relation(&poset, &order).map_err(|e| fail(err, EXIT_USAGE, e))?;
    let mut pairs = rel.pairs();
    pairs.sort_by_key(|(a, b)| (order.rank(a), order.rank(b)));
    for (a, b) in &pairs {
        let _ = writeln!(out, "{a} < {b}");
    }
    match check_conjugate(&poset, &rel).map_err(|e| fail(err, EXIT_USAGE, e))? {
        ConjugateVerdict::Conjugate => {
            let _ = writeln!(out, "conjugate: yes");
            Ok(EXIT_OK)
        }
        ConjugateVerdict::Fails(w) => {
            let _ = writeln!(out, "conjugate: no ({w})");
            Ok(EXIT_CHECK_FAILED)
        }
    }
}

fn cmd_induce(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let pop = load_pop(path, out, err)?;
    for v in induce_vertex_order(&pop).iter() {
        let _ = writeln!(out, "{v}");
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(path: &Path, planar_only: bool, budget: u64, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let (g, _) = load_processive(path, out, err)?;
    let poset = edge_poset(&g);
    let budget = oracle::Budget::new(budget);
    for seq in IndexExtensions::new(&poset, planar_only) {
        budget.charge(1).map_err(|e| fail(err, EXIT_BUDGET, e))?;
        let line: Vec<&str> = seq.iter().map(|&e| g.edge_id(e)).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    Ok(EXIT_OK)
}

fn oracle_exit(err: &mut dyn Write, e: OracleError) -> Exit {
    let code = match e {
        OracleError::BudgetExceeded { .. } => EXIT_BUDGET,
        OracleError::InvalidSpec(_) => EXIT_USAGE,
        OracleError::InducedNotPlanar { .. } => EXIT_CHECK_FAILED,
    };
    fail(err, code, e)
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let summary = theorem_sweep(&args.spec(), args.exec(), args.budget).map_err(|e| oracle_exit(err, e))?;
    let _ = writeln!(out, "graphs: {}", summary.graphs);
    let _ = writeln!(out, "planar edge orders: {}", summary.orders);
    let _ = writeln!(out, "failures: {}", summary.failures.len());
    for f in &summary.failures {
        let _ = writeln!(
            out,
            "  graph #{} order [{}]: induced [{}]",
            f.graph,
            f.edge_order.join(" "),
            f.detail.order.join(" ")
        );
    }
    Ok(if summary.failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn cmd_converse(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let reports = converse_search(&args.spec(), args.exec(), args.budget).map_err(|e| oracle_exit(err, e))?;
    let with_witness: Vec<(usize, &oracle::ConverseReport)> =
        reports.iter().enumerate().filter(|(_, r)| r.has_witness()).collect();
    let _ = writeln!(out, "graphs: {}", reports.len());
    let _ = writeln!(
        out,
        "planar vertex orders: {}",
        reports.iter().map(|r| r.vertex_planar_orders).sum::<usize>()
    );
    let _ = writeln!(
        out,
        "induced vertex orders: {}",
        reports.iter().map(|r| r.induced_orders).sum::<usize>()
    );
    let _ = writeln!(out, "graphs with witnesses: {}", with_witness.len());
    for (i, r) in with_witness {
        let g = r.graph.graph();
        let listing = LinearOrder::new(g.edge_records().map(|e| e.id)).expect("edge ids are unique");
        let _ = writeln!(
            out,
            "\n# graph #{i}: {} planar vertex orders, {} induced",
            r.vertex_planar_orders, r.induced_orders
        );
        let _ = write!(out, "{}", serialize_parts(g, &listing));
        for w in &r.witnesses {
            let _ = writeln!(out, "# witness: {}", w.join(" "));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_draw(path: &Path, target: &Path, format: DrawFormat, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let pop = load_pop(path, out, err)?;
    let doc = match format {
        DrawFormat::Svg => emit_svg(&pop),
        DrawFormat::Dot => emit_dot(&pop),
    };
    fs::write(target, doc).map_err(|e| fail(err, EXIT_USAGE, format!("{}: {e}", target.display())))?;
    Ok(EXIT_OK)
}

fn cmd_gen(internal: usize, extra: usize, seed: u64, out: &mut dyn Write) -> CmdResult {
    let g = random_processive(internal, extra, seed);
    let poset = edge_poset(&g);
    let order = match IndexExtensions::new(&poset, true).next() {
        Some(seq) => LinearOrder::from_indices(poset.elements(), &seq),
        None => {
            let _ = writeln!(out, "# no planar edge order exists; edges in listing order");
            LinearOrder::new(g.edge_records().map(|e| e.id)).expect("edge ids are unique")
        }
    };
    let _ = write!(out, "{}", serialize_parts(&g, &order));
    Ok(EXIT_OK)
}
