use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use syslab::complex::{check_local_6_large, FlagComplex};
use syslab::lab::run::{run_file, RunOptions, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};

#[derive(Parser)]
#[command(name = "syslab", version, about = "Geodesic constructions on systolic complexes")]
struct Cli {
    /// Worker threads for pair sweeps.
    #[arg(long, global = true, env = "SYSLAB_JOBS")]
    jobs: Option<usize>,
    /// Constant overrides, e.g. `C=300,D=900` or `C=1,empirical=true`.
    #[arg(long, global = true)]
    constants: Option<String>,
    /// Seed for pair sampling, overriding the scenario.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a scenario and write its report.
    Run {
        scenario: PathBuf,
        /// Directory for the report and figures.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render the figures of a scenario.
    Render {
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check that every vertex link of a complex file is 6-large.
    Check { complex: PathBuf },
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return exit(if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS });
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("syslab: {e}");
            return exit(EXIT_INPUT);
        }
    }
    match cli.cmd {
        Cmd::Run { scenario, out } => {
            let opts = RunOptions { seed: cli.seed, out, figures_only: false };
            let (code, rep) = run_file(&scenario, cli.constants.as_deref(), &opts);
            match rep {
                Ok(r) => {
                    for t in &r.tasks {
                        println!("{:<6} {} ({}, {:.0} ms)", format!("{:?}", t.status).to_lowercase(), t.name, t.kind, t.wall_ms);
                        for a in t.assertions.iter().filter(|a| !a.passed) {
                            println!("       {}: measured {} > {} = {}", a.name, a.measured, a.constant, a.bound);
                        }
                        if let Some(e) = &t.error {
                            println!("       {e}");
                        }
                    }
                }
                Err(e) => eprintln!("syslab: {e}"),
            }
            exit(code)
        }
        Cmd::Render { scenario, out } => {
            let opts = RunOptions { seed: cli.seed, out: Some(out), figures_only: true };
            let (code, rep) = run_file(&scenario, cli.constants.as_deref(), &opts);
            match rep {
                Ok(r) => {
                    for t in &r.tasks {
                        match &t.error {
                            Some(e) => println!("error  {}: {e}", t.name),
                            None => println!("wrote  {}", t.outputs["file"].as_str().unwrap_or("?")),
                        }
                    }
                }
                Err(e) => eprintln!("syslab: {e}"),
            }
            exit(code)
        }
        Cmd::Check { complex } => {
            let c = match std::fs::read_to_string(&complex)
                .map_err(|e| syslab::Error::Io(format!("{}: {e}", complex.display())))
                .and_then(|t| FlagComplex::parse(&t))
            {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("syslab: {e}");
                    return exit(EXIT_INPUT);
                }
            };
            let r = check_local_6_large(&c);
            println!("{} vertices, {} edges, {} links checked", c.len(), c.edge_count(), r.vertices_checked);
            match r.witness {
                None => {
                    println!("pass: every link is 6-large");
                    exit(EXIT_PASS)
                }
                Some((v, cycle)) => {
                    println!("fail: link of {v:?} has the induced cycle {cycle:?}");
                    exit(EXIT_FAIL)
                }
            }
        }
    }
}
