//! p3c: maximal laminar families of 3-cutsets in 3-connected planar graphs.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use p3c::bcs::{build_bcs, Origin};
use p3c::decompose::{maximal_laminar_family, DecompositionResult, Mode};
use p3c::generators;
use p3c::oracle;
use p3c::planar::{parse_graph, EmbeddedPlanarGraph};
use p3c::render::render_svg;

const EXIT_USAGE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "p3c", version, about = "laminar 3-cutset decompositions of 3-connected planar graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a maximal laminar family of 3-cutsets and its tree decomposition
    Decompose(DecomposeArgs),
    /// Brute-force enumeration and classification of all 3-cutsets
    Oracle(OracleArgs),
    /// Generate a test graph in the text format
    Gen(GenArgs),
    /// Time the pipeline over a size schedule and report a scaling slope
    Bench(BenchArgs),
    /// Draw a graph and the cut curves of a decomposition result as SVG
    Render(RenderArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    All,
    Nontrivial,
    Nonshiftable,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::All => Mode::All,
            ModeArg::Nontrivial => Mode::Nontrivial,
            ModeArg::Nonshiftable => Mode::NonShiftable,
        }
    }
}

#[derive(Args)]
struct DecomposeArgs {
    /// input graph file
    input: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    mode: ModeArg,
    /// vertex for nonshiftable mode
    #[arg(long)]
    v: Option<usize>,
    /// re-check the output against the brute-force oracle
    #[arg(long)]
    verify: bool,
    /// skip the quadratic 3-connectivity check (large benchmark inputs)
    #[arg(long)]
    skip_3conn_check: bool,
    /// seed for sampled verification on large inputs
    #[arg(long, default_value = "0")]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// include frames and cycle node lists in the output
    #[arg(long)]
    diagnostics: bool,
    /// write the barycentric subdivision as a tagged graph file
    #[arg(long)]
    dump_bcs: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    input: PathBuf,
    /// classify v-non-shiftability against this vertex
    #[arg(long)]
    v: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// wheel | prism-stack | apollonian | random-reduced
    family: String,
    /// size parameter (wheel rim length, prism levels, vertex count)
    size: usize,
    #[arg(long, default_value = "0")]
    seed: u64,
    /// edge deletions for random-reduced
    #[arg(long)]
    deletions: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value = "prism-stack")]
    family: String,
    /// comma-separated vertex counts, e.g. 1000,3000,10000
    #[arg(long, default_value = "")]
    sizes: String,
    #[arg(long, value_enum, default_value = "all")]
    mode: ModeArg,
    #[arg(long, default_value = "0")]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    input: PathBuf,
    /// decomposition result JSON (from `p3c decompose`)
    #[arg(long)]
    result: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct TreeOut {
    bags: Vec<Vec<usize>>,
    edges: Vec<p3c::treedec::TdEdge>,
}

#[derive(Serialize)]
struct StatsOut {
    frames: usize,
    pieces: usize,
    conflict_nodes: usize,
    conflict_edges: usize,
    runtime_ms: u64,
}

#[derive(Serialize)]
struct FrameOut {
    pole_vertex: usize,
    pole_face: usize,
    k: usize,
    paths: Vec<Vec<(char, usize)>>,
}

#[derive(Serialize)]
struct DiagnosticsOut {
    frames: Vec<FrameOut>,
    family_cycles: Vec<Vec<(char, usize)>>,
    provenance: Vec<String>,
}

#[derive(Serialize)]
struct DecomposeOut {
    mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertex_v: Option<usize>,
    cutsets: Vec<[usize; 3]>,
    tree: TreeOut,
    stats: StatsOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostics: Option<DiagnosticsOut>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap prints help/version through the error path with status 0
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let code = match cli.cmd {
        Cmd::Decompose(a) => cmd_decompose(a),
        Cmd::Oracle(a) => cmd_oracle(a),
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Bench(a) => cmd_bench(a),
        Cmd::Render(a) => cmd_render(a),
    };
    ExitCode::from(code)
}

fn read_graph(path: &PathBuf, skip_3conn: bool) -> Result<EmbeddedPlanarGraph, (u8, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| (EXIT_INVALID, format!("cannot read {}: {e}", path.display())))?;
    let mut g = parse_graph(&text).map_err(|e| (EXIT_INVALID, e.to_string()))?;
    g.trace_faces().map_err(|e| (EXIT_INVALID, e.to_string()))?;
    if !skip_3conn {
        match g.check_3_connectivity() {
            Ok(true) => {}
            Ok(false) => return Err((EXIT_INVALID, "input graph is not 3-connected".into())),
            Err(e) => return Err((EXIT_INVALID, e.to_string())),
        }
    }
    Ok(g)
}

fn write_out(out: &Option<PathBuf>, content: &str) -> Result<(), (u8, String)> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| (EXIT_INVALID, format!("cannot write {}: {e}", path.display()))),
        None => {
            if content.ends_with('\n') {
                print!("{content}");
            } else {
                println!("{content}");
            }
            Ok(())
        }
    }
}

fn fail(err: (u8, String)) -> u8 {
    eprintln!("error: {}", err.1);
    err.0
}

fn cycle_tags(bcs: &p3c::bcs::BcsGraph, nodes: &[usize]) -> Vec<(char, usize)> {
    nodes
        .iter()
        .map(|&x| {
            let o = bcs.origin(x);
            (o.tag(), o.id())
        })
        .collect()
}

fn cmd_decompose(a: DecomposeArgs) -> u8 {
    let mode: Mode = a.mode.into();
    if mode == Mode::NonShiftable && a.v.is_none() {
        eprintln!("error: --mode nonshiftable requires --v");
        return EXIT_USAGE;
    }
    let g = match read_graph(&a.input, a.skip_3conn_check) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    if let Some(v) = a.v {
        if v >= g.n() {
            return fail((EXIT_INVALID, format!("vertex {v} not in the graph")));
        }
    }
    let result = match maximal_laminar_family(&g, mode, a.v) {
        Ok(r) => r,
        Err(e) => return fail((EXIT_INVALID, e.to_string())),
    };
    if result.frame_candidates > 50 * g.m() {
        eprintln!(
            "note: frame scan generated {} candidate paths (more than 50m = {}); \
             high-degree inputs make this step superlinear",
            result.frame_candidates,
            50 * g.m()
        );
    }
    if let Some(path) = &a.dump_bcs {
        let bcs = build_bcs(&g).expect("validated input");
        if let Err(e) = std::fs::write(path, bcs.to_text()) {
            return fail((EXIT_INVALID, format!("cannot write {}: {e}", path.display())));
        }
    }

    let diagnostics = if a.diagnostics {
        let bcs = build_bcs(&g).expect("validated input");
        let scan = p3c::frames::find_maximal_big_frames(&bcs);
        Some(DiagnosticsOut {
            frames: scan
                .frames
                .iter()
                .map(|f| FrameOut {
                    pole_vertex: match bcs.origin(f.pole_vertex) {
                        Origin::Vertex(v) => v,
                        _ => unreachable!(),
                    },
                    pole_face: match bcs.origin(f.pole_face) {
                        Origin::Face(x) => x,
                        _ => unreachable!(),
                    },
                    k: f.k(),
                    paths: f.paths.iter().map(|p| cycle_tags(&bcs, p)).collect(),
                })
                .collect(),
            family_cycles: result
                .family
                .iter()
                .map(|fe| cycle_tags(&bcs, &fe.cycle.nodes))
                .collect(),
            provenance: result
                .family
                .iter()
                .map(|fe| format!("{:?}", fe.provenance).to_lowercase())
                .collect(),
        })
    } else {
        None
    };

    let out = DecomposeOut {
        mode,
        vertex_v: a.v,
        cutsets: result.family.iter().map(|f| f.cutset).collect(),
        tree: TreeOut {
            bags: result.tree.bags.clone(),
            edges: result.tree.edges.clone(),
        },
        stats: StatsOut {
            frames: result.stats.frames,
            pieces: result.stats.pieces,
            conflict_nodes: result.stats.conflict_nodes,
            conflict_edges: result.stats.conflict_edges,
            runtime_ms: result.stats.runtime_ms,
        },
        diagnostics,
    };
    let json = serde_json::to_string_pretty(&out).expect("serializable");
    if let Err(e) = write_out(&a.out, &json) {
        return fail(e);
    }
    if a.verify {
        if let Err(msg) = verify_result(&g, &result, a.seed) {
            eprintln!("verification failed: {msg}");
            return EXIT_VERIFY;
        }
        eprintln!("verification passed");
    }
    0
}

fn verify_result(g: &EmbeddedPlanarGraph, r: &DecompositionResult, seed: u64) -> Result<(), String> {
    let fam: Vec<[usize; 3]> = r.family.iter().map(|f| f.cutset).collect();
    let mode = match (r.mode, r.v) {
        (Mode::All, _) => oracle::OracleMode::All,
        (Mode::Nontrivial, _) => oracle::OracleMode::Nontrivial,
        (Mode::NonShiftable, Some(v)) => oracle::OracleMode::NonShiftable(v),
        (Mode::NonShiftable, None) => return Err("missing vertex".into()),
    };
    for &t in &fam {
        if !oracle::is_cutset(g, t) {
            return Err(format!("{t:?} is not a cutset"));
        }
        if !oracle::eligible(g, t, mode) {
            return Err(format!("{t:?} is not in the requested class"));
        }
    }
    match oracle::is_maximal_laminar(g, &fam, mode, oracle::EXHAUSTIVE_CAP, 10_000, seed) {
        oracle::MaximalityVerdict::Maximal => {}
        oracle::MaximalityVerdict::NotLaminar(x, y) => {
            return Err(format!(
                "family members {x:?} and {y:?} cross; components of g-{x:?}: {:?}",
                g.components_without(&x)
            ));
        }
        oracle::MaximalityVerdict::Counterexample(x) => {
            return Err(format!(
                "family is not maximal: {x:?} fits; components of g-{x:?}: {:?}",
                g.components_without(&x)
            ));
        }
    }
    match oracle::validate_tree_decomposition(g, &r.tree, &fam) {
        oracle::TreeVerdict::Valid => Ok(()),
        oracle::TreeVerdict::Invalid(msg) => Err(format!("tree decomposition invalid: {msg}")),
    }
}

fn cmd_oracle(a: OracleArgs) -> u8 {
    let g = match read_graph(&a.input, false) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    if let Some(v) = a.v {
        if v >= g.n() {
            return fail((EXIT_INVALID, format!("vertex {v} not in the graph")));
        }
    }
    let report = oracle::report(&g, a.v);
    let json = serde_json::to_string_pretty(&report).expect("serializable");
    match write_out(&a.out, &json) {
        Ok(()) => 0,
        Err(e) => fail(e),
    }
}

fn gen_graph(family: &str, size: usize, seed: u64, deletions: Option<usize>) -> Result<EmbeddedPlanarGraph, String> {
    match family {
        "wheel" => generators::wheel(size).map_err(|e| e.to_string()),
        "prism-stack" | "prism_stack" => generators::prism_stack(size).map_err(|e| e.to_string()),
        "apollonian" => generators::apollonian(size, seed).map_err(|e| e.to_string()),
        "random-reduced" | "random_reduced" => {
            let d = deletions.unwrap_or_else(|| (size / 5).max(1));
            let (g, done) = generators::random_reduced(size, seed, d).map_err(|e| e.to_string())?;
            if done < d {
                eprintln!("note: performed {done} of {d} requested deletions");
            }
            Ok(g)
        }
        other => Err(format!("unknown family `{other}`")),
    }
}

fn cmd_gen(a: GenArgs) -> u8 {
    let mut g = match gen_graph(&a.family, a.size, a.seed, a.deletions) {
        Ok(g) => g,
        Err(msg) => return fail((EXIT_USAGE, msg)),
    };
    if g.f() == 0 {
        g.trace_faces().expect("generated embeddings are valid");
    }
    match write_out(&a.out, &g.to_text()) {
        Ok(()) => 0,
        Err(e) => fail(e),
    }
}

fn cmd_bench(a: BenchArgs) -> u8 {
    let sizes: Vec<usize> = a
        .sizes
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .unwrap_or_default();
    let mode: Mode = a.mode.into();
    let mut csv = String::from("family,n,ms,frames,pieces,conflict_nodes,conflict_edges\n");
    let mut points: Vec<(f64, f64)> = Vec::new();
    for &n in &sizes {
        // size parameter per family: vertex count for the named families
        let size = match a.family.as_str() {
            "wheel" => n.saturating_sub(1).max(4),
            "prism-stack" | "prism_stack" => (n / 3).saturating_sub(1).max(1),
            _ => n,
        };
        let mut g = match gen_graph(&a.family, size, a.seed, None) {
            Ok(g) => g,
            Err(msg) => return fail((EXIT_USAGE, msg)),
        };
        if g.f() == 0 {
            g.trace_faces().expect("generated embeddings are valid");
        }
        let t0 = Instant::now();
        let r = match maximal_laminar_family(&g, mode, None) {
            Ok(r) => r,
            Err(e) => return fail((EXIT_INVALID, e.to_string())),
        };
        let ms = t0.elapsed().as_secs_f64() * 1e3;
        csv.push_str(&format!(
            "{},{},{:.1},{},{},{},{}\n",
            a.family,
            g.n(),
            ms,
            r.stats.frames,
            r.stats.pieces,
            r.stats.conflict_nodes,
            r.stats.conflict_edges
        ));
        points.push((g.n() as f64, ms.max(0.01)));
    }
    if points.len() >= 2 {
        let slope = loglog_slope(&points);
        csv.push_str(&format!("# loglog_slope,{slope:.3}\n"));
        eprintln!("log-log slope: {slope:.3}");
    }
    match write_out(&a.out, &csv) {
        Ok(()) => 0,
        Err(e) => fail(e),
    }
}

fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

fn cmd_render(a: RenderArgs) -> u8 {
    let g = match read_graph(&a.input, true) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let result_text = match std::fs::read_to_string(&a.result) {
        Ok(t) => t,
        Err(e) => return fail((EXIT_INVALID, format!("cannot read {}: {e}", a.result.display()))),
    };
    let parsed: serde_json::Value = match serde_json::from_str(&result_text) {
        Ok(v) => v,
        Err(e) => return fail((EXIT_INVALID, format!("bad result file: {e}"))),
    };
    let cutsets: Vec<[usize; 3]> = match parsed.get("cutsets").and_then(|c| c.as_array()) {
        Some(arr) => {
            let mut out = Vec::with_capacity(arr.len());
            for t in arr {
                let xs: Option<Vec<usize>> = t
                    .as_array()
                    .map(|v| v.iter().filter_map(|x| x.as_u64().map(|u| u as usize)).collect());
                match xs.as_deref() {
                    Some([a, b, c]) => out.push([*a, *b, *c]),
                    _ => return fail((EXIT_INVALID, "bad cutset entry in result file".into())),
                }
            }
            out
        }
        None => return fail((EXIT_INVALID, "result file has no cutsets".into())),
    };
    match render_svg(&g, &cutsets) {
        Ok(svg) => match write_out(&a.out, &svg) {
            Ok(()) => 0,
            Err(e) => fail(e),
        },
        Err(e) => fail((EXIT_INVALID, e.to_string())),
    }
}
