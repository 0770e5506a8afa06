use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cokasch::oracle::{default_budget, Budget};
use cokasch::workspace::{run_tasks, RunOptions, Task, TaskReport, Workspace};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "cokasch", version, about = "Co-Kasch, Kasch, Cartan and H-ring checks for finite rings and their modules")]
struct Cli {
    /// JSON workspace; the built-in fixtures are used when omitted.
    #[arg(long, global = true)]
    workspace: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomized harness.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of seeded random rings the harness adds to the workspace rings.
    #[arg(long, global = true, default_value_t = 100)]
    budget: usize,
    /// Record wall-clock time per task (makes reports run-dependent).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the workspace, or report on one entry of it.
    Validate {
        #[arg(long, default_value = "all")]
        target: String,
    },
    /// Simple modules of a ring with their covering idempotents.
    Simples {
        #[arg(long)]
        ring: String,
    },
    /// Cartan matrix of a ring.
    Cartan {
        #[arg(long)]
        ring: String,
    },
    /// Co-Kasch check for a module, or for every principal indecomposable of a ring.
    CheckCokasch {
        #[arg(long, required_unless_present = "ring", conflicts_with = "ring")]
        module: Option<String>,
        #[arg(long)]
        ring: Option<String>,
    },
    /// Kasch check for a module.
    CheckKasch {
        #[arg(long)]
        module: String,
    },
    /// H-ring check through Ext between distinct simples.
    CheckHring {
        #[arg(long)]
        ring: String,
    },
    /// Build the non-split extension witnessing a failed H-ring check.
    WitnessHring {
        #[arg(long)]
        ring: String,
    },
    /// Co-Kasch check for a symbolic ℤ-module such as "Z + Z/12 + Prufer(3) + Q".
    CheckZ {
        #[arg(long)]
        zmodule: String,
    },
    /// Run the verification harness.
    Verify {
        /// Proposition id, or "all".
        #[arg(long, default_value = "all")]
        prop: String,
        /// Workspace ring to use, or "all".
        #[arg(long, default_value = "all")]
        ring: String,
    },
    /// Run the task list stored in the workspace.
    Run,
}

fn load(path: &Option<PathBuf>) -> Result<Workspace> {
    let Some(path) = path else {
        return Ok(Workspace::builtin());
    };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Workspace::from_json(&text).with_context(|| format!("{}", path.display()))
}

fn task(command: &str, target: &str) -> Task {
    Task { command: command.into(), target: target.into() }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

fn render_text(r: &TaskReport) -> String {
    let verdict = r.verdict.map_or("-".to_string(), |v| v.to_string());
    let mut out = format!("{} {}: {verdict}\n", r.task, r.target);
    if let Some(w) = &r.witness {
        out += &format!("  witness: {}\n", serde_json::to_string(w).expect("witnesses serialize"));
    }
    if r.task == "verify" {
        for res in r.details["results"].as_array().into_iter().flatten() {
            let failures = res["failures"].as_array().map_or(0, Vec::len);
            let status = if failures == 0 { "pass" } else { "FAIL" };
            out +=
                &format!("  {}: {status} ({} rings, {} instances, {failures} failures)\n", res["prop"].as_str().unwrap_or("?"), res["rings"], res["instances"]);
            for f in res["failures"].as_array().into_iter().flatten().take(10) {
                out += &format!("    {}\n", f.as_str().unwrap_or_default());
            }
        }
    } else if let Some(obj) = r.details.as_object() {
        for (k, v) in obj {
            out += &format!("  {k}: {}\n", compact(v));
        }
    }
    if let Some(t) = &r.timings {
        out += &format!("  time: {:.1} ms\n", t.millis);
    }
    out
}

fn run(cli: Cli) -> Result<bool> {
    let mut ws = load(&cli.workspace)?;
    let budget = Budget { random_rings: cli.budget, ..default_budget() };
    let opts = RunOptions { seed: cli.seed, budget, timings: cli.timings };
    let tasks = match &cli.command {
        Command::Validate { target } => vec![task("validate", target)],
        Command::Simples { ring } => vec![task("simples", ring)],
        Command::Cartan { ring } => vec![task("cartan", ring)],
        Command::CheckCokasch { module, ring } => vec![task("check-cokasch", module.as_deref().or(ring.as_deref()).unwrap_or_default())],
        Command::CheckKasch { module } => vec![task("check-kasch", module)],
        Command::CheckHring { ring } => vec![task("check-hring", ring)],
        Command::WitnessHring { ring } => vec![task("witness-hring", ring)],
        Command::CheckZ { zmodule } => vec![task("check-z", zmodule)],
        Command::Verify { prop, ring } => {
            if ring != "all" {
                let Some(r) = ws.rings.get(ring).cloned() else { bail!("unknown ring {ring:?}") };
                ws.rings = [(ring.clone(), r)].into_iter().collect();
            }
            vec![task("verify", prop)]
        }
        Command::Run => {
            if ws.tasks.is_empty() {
                bail!("the workspace has no tasks");
            }
            ws.tasks.clone()
        }
    };
    let reports = run_tasks(&ws, &tasks, &opts);
    for r in &reports {
        match cli.format {
            Format::Json => println!("{}", serde_json::to_string(r).expect("reports serialize")),
            Format::Text => print!("{}", render_text(r)),
        }
    }
    Ok(reports.iter().all(|r| !r.failed))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
