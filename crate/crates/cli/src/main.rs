use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rigidity_cli::{cache, report, tables, CliError};
use rigidity_core::bertini::DEFAULT_SAMPLES;
use rigidity_core::models::MODEL_NAMES;
use rigidity_core::pipeline::{RunOptions, Verdict};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Debug, Parser)]
#[command(name = "rigidity", about = "Order-two rigidity verifier for rank-two Hermitian symmetric spaces")]
struct Cli {
    /// Character cache directory.
    #[arg(long, global = true, env = cache::CACHE_ENV)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Run the rigidity pipeline and print the certificate.
    Verify {
        #[arg(required = true)]
        models: Vec<String>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Random samples for the genericity test.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the decomposition tables of a model.
    Tables {
        model: String,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Decompose a module expression such as `S^3T*⊗N` or `(T⊗T*)^frc⊗T*`.
    Decompose { model: String, expr: String },
}

fn usage(e: &dyn std::fmt::Display) -> ExitCode {
    eprintln!("error: {}", e);
    eprintln!("known models: {}", MODEL_NAMES.join(", "));
    ExitCode::from(2)
}

fn fail(e: CliError) -> ExitCode {
    if e.is_usage() {
        usage(&e)
    } else {
        eprintln!("error: {}", e);
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cache = cache::resolve_dir(cli.cache);
    match cli.cmd {
        Cmd::Verify {
            models,
            seed,
            samples,
            format,
            out,
        } => {
            let opts = RunOptions {
                seed,
                samples,
                ..Default::default()
            };
            let mut reports = Vec::new();
            let mut all_rigid = true;
            for m in &models {
                match rigidity_cli::verify(m, &opts, cache.as_ref()) {
                    Ok(v) => {
                        if v.verdict != Verdict::Rigid {
                            all_rigid = false;
                            let surv: Vec<String> = v
                                .report
                                .orders
                                .iter()
                                .flat_map(|o| o.survivors.iter().map(move |s| format!("order {}: {}", o.k, s.weight)))
                                .collect();
                            eprintln!("{}: INCOMPLETE, survivors: {}", m, surv.join("; "));
                        }
                        reports.push(v.report);
                    }
                    Err(e) => return fail(e),
                }
            }
            let text = match format {
                Format::Json => report::to_json(&reports),
                Format::Md => report::to_markdown(&reports),
            };
            match out {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, text) {
                        eprintln!("error: cannot write {}: {}", p.display(), e);
                        return ExitCode::from(1);
                    }
                }
                None => print!("{}", text),
            }
            if all_rigid {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Cmd::Tables { model, format } => match rigidity_cli::tables_for(&model, cache.as_ref()) {
            Ok(t) => {
                match format {
                    Format::Json => println!("{}", serde_json::to_string_pretty(&t).expect("table serializes")),
                    Format::Md => print!("{}", tables::render_markdown(&t)),
                }
                if t.mismatches().is_empty() && t.rows.iter().all(|r| r.mass_ok()) {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => fail(e),
        },
        Cmd::Decompose { model, expr } => match rigidity_cli::decompose(&model, &expr, cache.as_ref()) {
            Ok(d) => {
                println!("{} =", d.canonical);
                for l in &d.lines {
                    println!("  {}", l);
                }
                println!("total dimension {} (expected {})", d.total, d.value.expected_dim);
                if d.total == d.value.expected_dim {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => fail(e),
        },
    }
}
