//! Command-line surface: generate instances, color them, verify colorings,
//! export DOT, and sweep benchmark grids.
//!
//! Exit codes are a stable contract: 0 success, 1 verification failure,
//! 2 usage or parameter error, 3 internal invariant failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Mutex;
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::{Parser, Subcommand, ValueEnum};

use sepcolor::doc::{ColoringDocument, GraphDocument, LoadedInstance};
use sepcolor::dot::render_dot;
use sepcolor::graph::Graph;
use sepcolor::konig::{Bipartition, EdgeColoring, KonigError, check_bipartite, konig_color};
use sepcolor::pipeline::{PipelineError, greedy_baseline, run_pipeline};
use sepcolor::verify::{compare_greedy, verify_bound, verify_coloring};
use sepcolor::witness::{
    InstanceBundle, RungPattern, gen_even_cycle, gen_even_torus, gen_random_bipartite,
    gen_two_ended_ladder,
};

const EXIT_VERIFICATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "sepcolor",
    version,
    about = "Edge-color bipartite graphs within Delta + s colors using separation witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance document from a named family.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Color a graph document and write a coloring document.
    Color {
        /// Input graph document.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Pipeline)]
        mode: Mode,
        /// Accept a witness radius other than the paper's 10*delta+1.
        #[arg(long)]
        radius_override: Option<usize>,
        /// Edge-order seed for greedy mode.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify a (graph, coloring) document pair.
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Render a colored graph as DOT.
    ExportDot {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sweep a generator grid, comparing the pipeline against greedy; write CSV.
    Bench {
        #[command(subcommand)]
        sweep: Sweep,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Pipeline,
    Greedy,
    Konig,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RungPatternArg {
    Full,
    Alternating,
}

impl From<RungPatternArg> for RungPattern {
    fn from(p: RungPatternArg) -> Self {
        match p {
            RungPatternArg::Full => RungPattern::Full,
            RungPatternArg::Alternating => RungPattern::Alternating,
        }
    }
}

#[derive(Subcommand)]
enum Family {
    /// Even cycle C_{2*n_half} with alternating witness arcs.
    EvenCycle {
        #[arg(long)]
        n_half: usize,
        #[arg(long)]
        arc_length: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// 4-regular torus grid with alternating witness slabs.
    EvenTorus {
        #[arg(long)]
        width: usize,
        #[arg(long)]
        height: usize,
        #[arg(long)]
        slab_thickness: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Finite ladder window of a two-ended graph.
    Ladder {
        #[arg(long)]
        length: usize,
        #[arg(long, value_enum, default_value_t = RungPatternArg::Full)]
        rung_pattern: RungPatternArg,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Seeded random bipartite graph with a trivial (s = 0) witness.
    RandomBipartite {
        #[arg(long)]
        n_left: usize,
        #[arg(long)]
        n_right: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum Sweep {
    /// Grid over even cycles.
    EvenCycle {
        /// Comma-separated n_half values.
        #[arg(long, value_delimiter = ',')]
        n_half: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        arc_length: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[command(flatten)]
        common: BenchCommon,
    },
    /// Grid over even tori.
    EvenTorus {
        #[arg(long, value_delimiter = ',')]
        width: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        height: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        slab_thickness: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[command(flatten)]
        common: BenchCommon,
    },
    /// Grid over ladders.
    Ladder {
        #[arg(long, value_delimiter = ',')]
        length: Vec<usize>,
        #[arg(long, value_enum, default_value_t = RungPatternArg::Full)]
        rung_pattern: RungPatternArg,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[command(flatten)]
        common: BenchCommon,
    },
    /// Grid over seeded random bipartite instances.
    RandomBipartite {
        #[arg(long, value_delimiter = ',')]
        n_left: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        n_right: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        max_degree: Vec<usize>,
        /// Comma-separated instance seeds.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        #[command(flatten)]
        common: BenchCommon,
    },
}

#[derive(clap::Args)]
struct BenchCommon {
    #[arg(long)]
    out: PathBuf,
    /// Seeds for the greedy baseline's edge order.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
    greedy_seeds: Vec<u64>,
    /// Worker threads; instances are independent and rows are sorted, so
    /// concurrency never changes the output bytes.
    #[arg(long, default_value_t = 4)]
    jobs: usize,
    /// Append a wall-clock column. Off by default so output stays
    /// byte-reproducible.
    #[arg(long)]
    timings: bool,
}

/// Errors at the CLI boundary, each mapped to a stable exit code.
enum CliError {
    Usage(String),
    Verification(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Verification(_) => EXIT_VERIFICATION,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Verification(m) | CliError::Internal(m) => m,
        }
    }
}

fn usage(err: impl std::fmt::Display) -> CliError {
    CliError::Usage(err.to_string())
}

fn from_pipeline_error(err: PipelineError) -> CliError {
    if err.is_internal() {
        CliError::Internal(err.to_string())
    } else {
        CliError::Usage(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate { family } => generate(family),
        Command::Color {
            input,
            out,
            mode,
            radius_override,
            seed,
        } => color(&input, &out, mode, radius_override, seed),
        Command::Verify { graph, coloring } => verify(&graph, &coloring),
        Command::ExportDot {
            graph,
            coloring,
            out,
        } => export_dot(&graph, &coloring, &out),
        Command::Bench { sweep } => bench(sweep),
    }
}

fn generate(family: Family) -> Result<(), CliError> {
    let (bundle, out) = match family {
        Family::EvenCycle {
            n_half,
            arc_length,
            r,
            out,
        } => (gen_even_cycle(n_half, arc_length, r).map_err(usage)?, out),
        Family::EvenTorus {
            width,
            height,
            slab_thickness,
            r,
            out,
        } => (
            gen_even_torus(width, height, slab_thickness, r).map_err(usage)?,
            out,
        ),
        Family::Ladder {
            length,
            rung_pattern,
            r,
            out,
        } => (
            gen_two_ended_ladder(length, rung_pattern.into(), r).map_err(usage)?,
            out,
        ),
        Family::RandomBipartite {
            n_left,
            n_right,
            max_degree,
            seed,
            out,
        } => (gen_random_bipartite(n_left, n_right, max_degree, seed), out),
    };
    let doc = GraphDocument::from_bundle(&bundle);
    write_file(&out, &doc.to_json())
}

fn color(
    input: &Path,
    out: &Path,
    mode: Mode,
    radius_override: Option<usize>,
    seed: u64,
) -> Result<(), CliError> {
    let instance = read_graph_document(input)?;
    let g = &instance.graph;
    match mode {
        Mode::Pipeline => {
            let witness = instance.witness.as_ref().ok_or_else(|| {
                CliError::Usage("pipeline mode requires a witness block in the document".into())
            })?;
            let b = bipartition_of(&instance)?;
            let output =
                run_pipeline(g, &b, witness, radius_override).map_err(from_pipeline_error)?;
            let doc = ColoringDocument::for_pipeline(&output);
            write_file(out, &doc.to_json())?;
            expect_pass(verify_coloring(g, &output.coloring))?;
            expect_pass(verify_bound(g, witness, &output.coloring))?;
            Ok(())
        }
        Mode::Greedy => {
            let coloring = greedy_baseline(g, seed);
            let doc = ColoringDocument::for_greedy(g, &coloring, seed);
            write_file(out, &doc.to_json())?;
            expect_pass(verify_coloring(g, &coloring))?;
            Ok(())
        }
        Mode::Konig => {
            let b = bipartition_of(&instance)?;
            let coloring = konig_color(g, &b).map_err(usage)?;
            let doc = ColoringDocument::for_konig(g, &coloring);
            write_file(out, &doc.to_json())?;
            expect_pass(verify_coloring(g, &coloring))?;
            Ok(())
        }
    }
}

/// Bipartition from the document when present, otherwise derived; an odd
/// cycle makes the graph unusable for König-based modes.
fn bipartition_of(instance: &LoadedInstance) -> Result<Bipartition, CliError> {
    match &instance.bipartition {
        Some(b) => Ok(b.clone()),
        None => check_bipartite(&instance.graph).map_err(|err| match err {
            KonigError::NotBipartite(cycle) => {
                CliError::Usage(format!("graph is not bipartite; odd cycle: {cycle:?}"))
            }
            other => CliError::Usage(other.to_string()),
        }),
    }
}

fn verify(graph_path: &Path, coloring_path: &Path) -> Result<(), CliError> {
    let instance = read_graph_document(graph_path)?;
    let coloring = read_coloring_document(coloring_path, &instance.graph)?;
    let coloring_report = verify_coloring(&instance.graph, &coloring).map_err(|e| usage(e))?;
    let bound_report = match &instance.witness {
        Some(w) => Some(verify_bound(&instance.graph, w, &coloring).map_err(|e| usage(e))?),
        None => None,
    };
    let pass = coloring_report.pass && bound_report.as_ref().is_none_or(|r| r.pass);
    let report = serde_json::json!({
        "coloring": coloring_report,
        "bound": bound_report,
        "pass": pass,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    if pass {
        Ok(())
    } else {
        Err(CliError::Verification("verification failed".into()))
    }
}

fn export_dot(graph_path: &Path, coloring_path: &Path, out: &Path) -> Result<(), CliError> {
    let instance = read_graph_document(graph_path)?;
    let coloring = read_coloring_document(coloring_path, &instance.graph)?;
    write_file(out, &render_dot(&instance.graph, &coloring))
}

struct BenchRow {
    key: String,
    params: String,
    delta: usize,
    witness_size: usize,
    pipeline_palette: usize,
    greedy_min: usize,
    greedy_max: usize,
    max_component: usize,
    wall_ms: u128,
}

fn bench(sweep: Sweep) -> Result<(), CliError> {
    let (jobs, common) = match &sweep {
        Sweep::EvenCycle { common, .. }
        | Sweep::EvenTorus { common, .. }
        | Sweep::Ladder { common, .. }
        | Sweep::RandomBipartite { common, .. } => (common.jobs.max(1), common),
    };
    let out = common.out.clone();
    let greedy_seeds = common.greedy_seeds.clone();
    let timings = common.timings;

    let instances: Vec<(String, Result<InstanceBundle, String>)> = expand_sweep(&sweep);

    // Independent instances; claimed by index off a shared counter. Rows are
    // sorted by parameter string afterwards, so scheduling cannot leak into
    // the output.
    let results: Vec<Mutex<Option<Result<BenchRow, String>>>> =
        instances.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(instances.len().max(1)) {
            scope.spawn(|| {
                loop {
                    let idx = next.fetch_add(1, Ordering::Relaxed);
                    if idx >= instances.len() {
                        break;
                    }
                    let (params, bundle) = &instances[idx];
                    let row = bench_one(params, bundle, &greedy_seeds);
                    *results[idx].lock().expect("bench worker poisoned") = Some(row);
                }
            });
        }
    });

    let mut rows = Vec::with_capacity(instances.len());
    for (slot, (params, bundle)) in results.iter().zip(&instances) {
        let row = slot
            .lock()
            .expect("bench worker poisoned")
            .take()
            .expect("every claimed index stores a result");
        match row {
            Ok(row) => rows.push(row),
            Err(message) => {
                // Serialize the failing instance for replay before aborting.
                if let Ok(b) = bundle {
                    let dump = out.with_extension("fail.json");
                    let _ = std::fs::write(&dump, GraphDocument::from_bundle(b).to_json());
                    return Err(CliError::Verification(format!(
                        "instance {params} failed verification ({message}); written to {}",
                        dump.display()
                    )));
                }
                return Err(CliError::Usage(format!("instance {params}: {message}")));
            }
        }
    }
    rows.sort_by(|a, b| a.key.cmp(&b.key));

    let mut csv = String::from(
        "family,params,delta,s,pipeline_palette,greedy_min,greedy_max,max_component_size",
    );
    if timings {
        csv.push_str(",wall_ms");
    }
    csv.push('\n');
    let family_name = match &sweep {
        Sweep::EvenCycle { .. } => "even-cycle",
        Sweep::EvenTorus { .. } => "even-torus",
        Sweep::Ladder { .. } => "ladder",
        Sweep::RandomBipartite { .. } => "random-bipartite",
    };
    for row in &rows {
        write!(
            csv,
            "{family_name},{},{},{},{},{},{},{}",
            row.params,
            row.delta,
            row.witness_size,
            row.pipeline_palette,
            row.greedy_min,
            row.greedy_max,
            row.max_component,
        )
        .expect("writing to a string cannot fail");
        if timings {
            write!(csv, ",{}", row.wall_ms).expect("writing to a string cannot fail");
        }
        csv.push('\n');
    }
    write_file(&out, &csv)
}

fn expand_sweep(sweep: &Sweep) -> Vec<(String, Result<InstanceBundle, String>)> {
    let mut instances = Vec::new();
    match sweep {
        Sweep::EvenCycle {
            n_half,
            arc_length,
            r,
            ..
        } => {
            for &n in n_half {
                let params = format!("n_half={n};arc_length={arc_length};r={r}");
                instances.push((
                    params,
                    gen_even_cycle(n, *arc_length, *r).map_err(|e| e.to_string()),
                ));
            }
        }
        Sweep::EvenTorus {
            width,
            height,
            slab_thickness,
            r,
            ..
        } => {
            for &w in width {
                for &h in height {
                    let params =
                        format!("width={w};height={h};slab_thickness={slab_thickness};r={r}");
                    instances.push((
                        params,
                        gen_even_torus(w, h, *slab_thickness, *r).map_err(|e| e.to_string()),
                    ));
                }
            }
        }
        Sweep::Ladder {
            length,
            rung_pattern,
            r,
            ..
        } => {
            for &len in length {
                let pattern: RungPattern = (*rung_pattern).into();
                let params = format!("length={len};rung_pattern={};r={r}", pattern.as_str());
                instances.push((
                    params,
                    gen_two_ended_ladder(len, pattern, *r).map_err(|e| e.to_string()),
                ));
            }
        }
        Sweep::RandomBipartite {
            n_left,
            n_right,
            max_degree,
            seeds,
            ..
        } => {
            for &nl in n_left {
                for &nr in n_right {
                    for &md in max_degree {
                        for &seed in seeds {
                            let params =
                                format!("n_left={nl};n_right={nr};max_degree={md};seed={seed}");
                            instances.push((params, Ok(gen_random_bipartite(nl, nr, md, seed))));
                        }
                    }
                }
            }
        }
    }
    instances
}

fn bench_one(
    params: &str,
    bundle: &Result<InstanceBundle, String>,
    greedy_seeds: &[u64],
) -> Result<BenchRow, String> {
    let bundle = bundle.as_ref().map_err(|e| e.clone())?;
    let started = std::time::Instant::now();
    let table =
        compare_greedy(&bundle.graph, &bundle.witness, greedy_seeds).map_err(|e| e.to_string())?;
    if !table.pipeline_ok {
        return Err("pipeline coloring failed verification".into());
    }
    let bound = bundle.graph.max_degree() + bundle.witness.s();
    if table.pipeline_palette > bound {
        return Err(format!(
            "pipeline used {} colors, above delta + s = {bound}",
            table.pipeline_palette
        ));
    }
    Ok(BenchRow {
        key: params.to_string(),
        params: params.to_string(),
        delta: table.delta,
        witness_size: table.witness_size,
        pipeline_palette: table.pipeline_palette,
        greedy_min: table.greedy_min.unwrap_or(0),
        greedy_max: table.greedy_max.unwrap_or(0),
        max_component: bundle.witness.component_bound(),
        wall_ms: started.elapsed().as_millis(),
    })
}

fn expect_pass(
    report: Result<sepcolor::verify::VerificationReport, sepcolor::verify::VerifyError>,
) -> Result<(), CliError> {
    let report = report.map_err(|e| CliError::Usage(e.to_string()))?;
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "{} check failed: {:?}",
            report.check, report.counterexample
        )))
    }
}

fn read_graph_document(path: &Path) -> Result<LoadedInstance, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let doc = GraphDocument::parse(&text).map_err(usage)?;
    doc.load().map_err(usage)
}

fn read_coloring_document(path: &Path, g: &Graph) -> Result<EdgeColoring, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let doc = ColoringDocument::parse(&text).map_err(usage)?;
    doc.to_coloring(g).map_err(usage)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}
