use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use brac_core::graph::{nd_partition, vertex_cover, CoverMode};
use brac_core::kernel::fen::{extract_kernel, SplitRule};
use brac_core::kernel::vc::{nd_to_vertex_cover, vc_kernelize, NdCover, ThresholdRule, VcVerdict};
use brac_core::kernel::{lift, RecipeDetail};
use brac_core::solver::{solve, SearchMode, SolveOptions, SolveVerdict};
use brac_core::{
    generate_instance, parse_drawing, parse_instance, parse_kernel, render_svg, serialize_drawing, serialize_instance,
    serialize_kernel, validate, Error, GenKind, SvgStyle, DEFAULT_TOL,
};
use clap::{Parser, Subcommand, ValueEnum};

/// Bend-restricted RAC drawings: validate, kernelize, solve, lift, render.
#[derive(Parser)]
#[command(name = "brac", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a drawing against an instance.
    Validate {
        instance: PathBuf,
        drawing: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Compute a kernel.
    Kernel {
        #[command(subcommand)]
        kind: KernelCmd,
    },
    /// Look for a drawing within the bend budget.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Numeric)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Turn a drawing of a kernel into a drawing of the original instance.
    Lift {
        kind: LiftKind,
        kernel_result: PathBuf,
        kernel_drawing: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Render a drawing as SVG; violations are highlighted.
    Render {
        instance: PathBuf,
        drawing: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Generate a random instance with a bounded parameter.
    Gen {
        kind: LiftKind,
        #[arg(long)]
        param: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        b: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum KernelCmd {
    /// Feedback-edge-number kernel.
    Fen {
        instance: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
        /// Print partition and bound statistics to stderr.
        #[arg(long)]
        report: bool,
    },
    /// Vertex-cover kernel.
    Vc {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Cover::Exact)]
        cover: Cover,
        /// Reject types above max(2, 7-i)+b (the default).
        #[arg(long, conflicts_with = "strict_theorem")]
        strict_lemma: bool,
        /// Reject types above max(3, 7-i)+b.
        #[arg(long)]
        strict_theorem: bool,
    },
    /// Vertex cover from the neighborhood-diversity partition.
    Nd { instance: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Planar,
    Numeric,
    Grid,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cover {
    Exact,
    Approx2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LiftKind {
    Fen,
    Vc,
}

const YES: u8 = 0;
const NO: u8 = 1;
const UNKNOWN: u8 = 2;
const USAGE: u8 = 3;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<brac_core::Instance> {
    parse_instance(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Validate { instance, drawing, tol } => {
            let inst = load_instance(&instance)?;
            let d = parse_drawing(&read(&drawing)?, &inst.graph).with_context(|| format!("{}", drawing.display()))?;
            let report = validate(&inst.graph, &d, &inst.budget, tol)?;
            if report.is_valid() {
                println!("valid: {} bends, {} crossings", report.total_bends, report.crossing_count);
                Ok(YES)
            } else {
                println!("invalid: {} violations", report.violations.len());
                for v in &report.violations {
                    println!("  {v}");
                }
                Ok(NO)
            }
        }
        Cmd::Kernel { kind: KernelCmd::Fen { instance, out, report } } => {
            let inst = load_instance(&instance)?;
            let r = extract_kernel(&inst, SplitRule::Proof)?;
            if report {
                let (sum, bound) = r.chain();
                eprintln!("fen {}", r.fen);
                eprintln!("paths {} (lengths {:?})", r.partition.paths.len(), r.partition.lengths());
                eprintln!("short paths {} gap {:?}", r.split.i0, r.split.gap);
                eprintln!("kernel {} vertices, {} edges", r.kernel.graph.vertex_count(), r.kernel.graph.edge_count());
                eprintln!("edge bound {}", r.size_bound());
                eprintln!("chain {sum} <= {bound}");
            }
            emit(out.as_deref(), &serialize_kernel(&r.kernel, &r.recipe))?;
            Ok(YES)
        }
        Cmd::Kernel { kind: KernelCmd::Vc { instance, cover, strict_lemma: _, strict_theorem } } => {
            let inst = load_instance(&instance)?;
            let mode = match cover {
                Cover::Exact => CoverMode::Exact,
                Cover::Approx2 => CoverMode::Approx2,
            };
            let rule = if strict_theorem { ThresholdRule::Theorem } else { ThresholdRule::Lemma };
            let c = vertex_cover(&inst.graph, mode);
            let r = vc_kernelize(&inst, &c, rule)?;
            print!("{}", serialize_kernel(&r.kernel, &r.recipe));
            match &r.verdict {
                VcVerdict::Reject(why) => {
                    eprintln!("reject: {why}");
                    Ok(NO)
                }
                _ => Ok(YES),
            }
        }
        Cmd::Kernel { kind: KernelCmd::Nd { instance } } => {
            let inst = load_instance(&instance)?;
            let ndp = nd_partition(&inst.graph);
            println!("nd {}", ndp.size());
            match nd_to_vertex_cover(&inst.graph, &ndp, &inst.budget) {
                NdCover::Cover(c) => {
                    let ids: Vec<String> = c.vertices.iter().map(|v| v.to_string()).collect();
                    println!("cover {} : {}", c.size(), ids.join(" "));
                    Ok(YES)
                }
                NdCover::Reject { slack, budget } => {
                    println!("reject: slack {slack} exceeds budget {budget}");
                    Ok(NO)
                }
            }
        }
        Cmd::Solve { instance, mode, seed, restarts, iters, out } => {
            let inst = load_instance(&instance)?;
            let mode = match mode {
                Mode::Planar => SearchMode::Planar,
                Mode::Numeric => SearchMode::Numeric,
                Mode::Grid => SearchMode::Grid,
            };
            let mut opts = SolveOptions::with_mode(mode);
            opts.search.seed = seed;
            opts.search.restarts = restarts;
            opts.search.iters = iters;
            let outcome = solve(&inst, &opts);
            let stats = format!("{} branches, {} search iterations", outcome.stats.branches, outcome.stats.search_iterations);
            match &outcome.verdict {
                SolveVerdict::Yes(d) => {
                    eprintln!("yes ({stats})");
                    emit(out.as_deref(), &serialize_drawing(&inst.graph, d))?;
                    Ok(YES)
                }
                SolveVerdict::No => {
                    eprintln!("no, relative to the search grid ({stats})");
                    Ok(NO)
                }
                SolveVerdict::Unknown => {
                    eprintln!("unknown ({stats})");
                    Ok(UNKNOWN)
                }
            }
        }
        Cmd::Lift { kind, kernel_result, kernel_drawing, out } => {
            let kf = parse_kernel(&read(&kernel_result)?).with_context(|| format!("{}", kernel_result.display()))?;
            let matches = matches!(
                (kind, &kf.recipe.detail),
                (LiftKind::Fen, RecipeDetail::Fen { .. }) | (LiftKind::Vc, RecipeDetail::Vc { .. })
            );
            if !matches {
                bail!("{} holds a different kind of kernel", kernel_result.display());
            }
            let d = parse_drawing(&read(&kernel_drawing)?, &kf.kernel.graph)
                .with_context(|| format!("{}", kernel_drawing.display()))?;
            let lifted = lift(&kf.kernel, &kf.recipe, &d, DEFAULT_TOL)?;
            emit(out.as_deref(), &serialize_drawing(&kf.recipe.original.graph, &lifted))?;
            Ok(YES)
        }
        Cmd::Render { instance, drawing, out } => {
            let inst = load_instance(&instance)?;
            let d = parse_drawing(&read(&drawing)?, &inst.graph).with_context(|| format!("{}", drawing.display()))?;
            let report = validate(&inst.graph, &d, &inst.budget, DEFAULT_TOL)?;
            emit(out.as_deref(), &render_svg(&inst, &d, &SvgStyle::default(), Some(&report)))?;
            Ok(YES)
        }
        Cmd::Gen { kind, param, n, b, seed } => {
            let kind = match kind {
                LiftKind::Fen => GenKind::BoundedFen,
                LiftKind::Vc => GenKind::BoundedVc,
            };
            print!("{}", serialize_instance(&generate_instance(kind, param, n, b, seed)?));
            Ok(YES)
        }
    }
}

/// Failures that are answers about the input rather than misuse.
fn is_negative(err: &anyhow::Error) -> bool {
    matches!(
        err.downcast_ref::<Error>(),
        Some(
            Error::InvalidKernelDrawing(_)
                | Error::LiftFailed(_)
                | Error::InsufficientPathVertices { .. }
                | Error::NoCrossingFreeMember { .. }
        )
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { YES });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_negative(&e) { NO } else { USAGE })
        }
    }
}
