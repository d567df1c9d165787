use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context as _;
use clap::{Parser, Subcommand};

use tcframe::bounds::Context;
use tcframe::cuplength::Limits;
use tcframe::report::{examples_report, frame_bundle_report, render_text, ring_report, Compute, ReportDocument};
use tcframe::FieldSpec;

/// Exact cohomology-ring computations and TC bounds for oriented frame bundles.
///
/// Exit status: 0 on success, 2 when the report carries warnings, 1 on error.
#[derive(Parser, Debug)]
#[command(name = "tcframe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Search nodes per top-level branch.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u64>,

    /// Largest algebra dimension that may be built, tensor squares included.
    #[arg(long, global = true, value_name = "N")]
    capacity: Option<usize>,

    /// Worker threads; changes speed, never output.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect a ring given by catalog id (e.g. so:5:char2) or ring file.
    Ring {
        reference: String,
        /// Coefficient field, e.g. char=2, char0, Q.
        #[arg(long, value_name = "FIELD")]
        field: Option<FieldSpec>,
        /// Comma-separated: cl, zcl-basic, zcl-full, basis, poincare.
        #[arg(long, value_delimiter = ',', default_value = "poincare,cl")]
        compute: Vec<Compute>,
    },
    /// Bound TC(F(M)) for a manifold descriptor file.
    FrameBundle { descriptor: PathBuf },
    /// Run the built-in examples against their published values.
    Examples,
}

fn run(cli: &Cli) -> anyhow::Result<ReportDocument> {
    let mut limits = Limits::default();
    if let Some(b) = cli.budget {
        limits.search_budget = b;
    }
    if let Some(c) = cli.capacity {
        limits.max_dim = c;
        limits.zcl_full_max_dim = limits.zcl_full_max_dim.min(c);
    }
    let ctx = Context {
        limits,
        ..Context::default()
    };
    let doc = match &cli.command {
        Command::Ring {
            reference,
            field,
            compute,
        } => ring_report(reference, *field, compute, &limits)?,
        Command::FrameBundle { descriptor } => {
            frame_bundle_report(descriptor, &ctx).with_context(|| format!("while bounding {}", descriptor.display()))?
        }
        Command::Examples => examples_report(&ctx)?,
    };
    Ok(doc)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let mut doc = match run(&cli) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    if cli.timing {
        doc.timing_us = Some(start.elapsed().as_micros() as u64);
    }
    let text = if cli.json {
        doc.to_json() + "\n"
    } else {
        render_text(&doc)
    };
    if let Err(e) = std::io::stdout().lock().write_all(text.as_bytes()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    // discrepancies in the example table are report content
    if doc.warnings.is_empty() || matches!(cli.command, Command::Examples) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
