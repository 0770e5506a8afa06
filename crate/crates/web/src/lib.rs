//! wasm-bindgen entry points for the static demo page. Every function takes a workspace
//! as JSON text (empty for the built-in one) and returns task reports as a JSON array.

use cokasch::oracle::default_budget;
use cokasch::workspace::{run_tasks, RunOptions, Task, Workspace};
use wasm_bindgen::prelude::*;

fn load(workspace: &str) -> Result<Workspace, String> {
    if workspace.trim().is_empty() {
        return Ok(Workspace::builtin());
    }
    Workspace::from_json(workspace).map_err(|e| format!("{}: {}", e.location, e.message))
}

fn run(ws: &Workspace, commands: &[&str], target: &str) -> String {
    let tasks: Vec<Task> = commands.iter().map(|c| Task { command: c.to_string(), target: target.to_string() }).collect();
    let opts = RunOptions { seed: 0, budget: default_budget(), timings: false };
    serde_json::to_string_pretty(&run_tasks(ws, &tasks, &opts)).expect("reports serialize")
}

/// The built-in fixtures as an editable workspace document.
#[wasm_bindgen]
pub fn builtin_workspace() -> String {
    serde_json::to_string_pretty(&Workspace::builtin().to_file()).expect("workspace serializes")
}

/// Simples, Cartan matrix, projective co-Kasch check and H-ring check with its extension witness.
#[wasm_bindgen]
pub fn ring_report(workspace: &str, ring: &str) -> Result<String, String> {
    let ws = load(workspace)?;
    ws.ring(ring)?;
    Ok(run(&ws, &["simples", "cartan", "check-cokasch", "check-hring", "witness-hring"], ring))
}

/// Co-Kasch and Kasch verdicts for a workspace module, or `regular(RING)`.
#[wasm_bindgen]
pub fn module_report(workspace: &str, module: &str) -> Result<String, String> {
    let ws = load(workspace)?;
    ws.module(module)?;
    Ok(run(&ws, &["validate", "check-cokasch", "check-kasch"], module))
}

/// Co-Kasch verdict for a ℤ-module expression such as `Z/4 + Prufer(3)`.
#[wasm_bindgen]
pub fn zmodule_report(expression: &str) -> Result<String, String> {
    let ws = Workspace::builtin();
    ws.zmodule(expression)?;
    Ok(run(&ws, &["check-z"], expression))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: &str) -> Vec<Value> {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn builtin_round_trips() {
        let text = builtin_workspace();
        let r = parse(&ring_report(&text, "T2F2").unwrap());
        assert_eq!(r[1]["details"]["matrix"], serde_json::json!([[1, 1], [0, 1]]));
        assert_eq!(r[4]["details"]["isomorphic_to_cover"], true);
    }

    #[test]
    fn modules_and_zmodules() {
        let m = parse(&module_report("", "e22R").unwrap());
        assert_eq!(m[1]["verdict"], true);
        assert!(module_report("", "regular(Z4)").is_ok());
        assert!(module_report("", "nope").is_err());
        assert_eq!(parse(&zmodule_report("Q + Z/6").unwrap())[0]["witness"]["p"], 5);
        assert!(zmodule_report("Z/0").is_err());
    }

    #[test]
    fn workspace_errors_carry_locations() {
        let err = ring_report("{ \"rings\": 3 }", "R").unwrap_err();
        assert!(err.starts_with("line "), "{err}");
    }
}
