//! JSON workspaces and the task runner behind the command-line tool.
//!
//! A workspace names rings, modules and ℤ-module expressions, plus a task list:
//!
//! ```json
//! {
//!   "rings":    { "T2F2": { "orders": [2,2,2], "mul": [...], "one": [1,0,1] } },
//!   "modules":  { "e11R": { "ring": "T2F2", "orders": [2,2], "action": { "0": [[1,0],[0,0]], "1": [[0,1],[0,0]], "2": [[0,0],[0,1]] } },
//!                 "e22R": { "ring": "T2F2", "principal": [0,0,1] } },
//!   "zmodules": { "ZQ": "Z + Q" },
//!   "tasks":    [ { "command": "check-cokasch", "target": "e11R" } ]
//! }
//! ```
//!
//! Action matrices missing from `action` are zero. A module target may also be
//! written `regular(RING)`.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::fixtures;
use crate::kasch::{check_projective_cokasch, construct_extension, ext1, is_co_kasch, is_h_ring, is_kasch, PropertyReport, Witness};
use crate::module::{composition_profile, is_isomorphic, principal_module, simple_catalog, FiniteModule, ModuleTable, SimpleCatalog};
use crate::oracle::{run_harness, Budget, PROPOSITIONS};
use crate::par::map_ordered;
use crate::presentation::IntMatrix;
use crate::ring::{FiniteRing, RingTable};
use crate::zmod::{is_co_kasch_z, is_torsion, primary_support, ZModuleExpr};

pub const COMMANDS: &[&str] = &["validate", "simples", "cartan", "check-cokasch", "check-kasch", "check-hring", "witness-hring", "check-z", "verify"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{location}: {message}")]
pub struct WorkspaceError {
    pub location: String,
    pub message: String,
}

fn err(location: impl Into<String>, message: impl ToString) -> WorkspaceError {
    WorkspaceError { location: location.into(), message: message.to_string() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleSpec {
    Action { ring: String, orders: Vec<i64>, action: BTreeMap<String, IntMatrix> },
    Principal { ring: String, principal: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Task {
    pub command: String,
    pub target: String,
}

/// The on-disk shape.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    #[serde(default)]
    pub rings: BTreeMap<String, RingTable>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub zmodules: BTreeMap<String, String>,
    #[serde(default)]
    pub tasks: Vec<Task>,
}

#[derive(Clone, Debug)]
pub struct NamedModule {
    pub ring: String,
    pub module: FiniteModule,
}

/// A workspace whose every entry has been validated.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub rings: BTreeMap<String, Arc<FiniteRing>>,
    pub modules: BTreeMap<String, NamedModule>,
    pub zmodules: BTreeMap<String, ZModuleExpr>,
    pub tasks: Vec<Task>,
}

impl Workspace {
    pub fn from_json(text: &str) -> Result<Workspace, WorkspaceError> {
        let file: WorkspaceFile = serde_json::from_str(text).map_err(|e| err(format!("line {}, column {}", e.line(), e.column()), e))?;
        Workspace::from_file(file)
    }

    pub fn from_file(file: WorkspaceFile) -> Result<Workspace, WorkspaceError> {
        let mut rings = BTreeMap::new();
        for (name, table) in file.rings {
            let ring = FiniteRing::validate(table).map_err(|e| err(format!("rings.{name}"), e))?;
            rings.insert(name, ring);
        }
        let mut modules = BTreeMap::new();
        for (name, spec) in file.modules {
            let loc = format!("modules.{name}");
            let ring_name = match &spec {
                ModuleSpec::Action { ring, .. } | ModuleSpec::Principal { ring, .. } => ring.clone(),
            };
            let ring = rings.get(&ring_name).ok_or_else(|| err(&loc, format!("unknown ring {ring_name:?}")))?;
            let module = build_module(ring, spec).map_err(|m| err(&loc, m))?;
            modules.insert(name, NamedModule { ring: ring_name, module });
        }
        let mut zmodules = BTreeMap::new();
        for (name, text) in file.zmodules {
            let expr = text.parse().map_err(|e| err(format!("zmodules.{name}"), e))?;
            zmodules.insert(name, expr);
        }
        let ws = Workspace { rings, modules, zmodules, tasks: file.tasks };
        for (i, task) in ws.tasks.iter().enumerate() {
            ws.check_task(task).map_err(|m| err(format!("tasks[{i}]"), m))?;
        }
        Ok(ws)
    }

    /// Serializes back to the on-disk shape; modules are written in explicit action form.
    pub fn to_file(&self) -> WorkspaceFile {
        WorkspaceFile {
            rings: self.rings.iter().map(|(n, r)| (n.clone(), r.table())).collect(),
            modules: self
                .modules
                .iter()
                .map(|(n, m)| {
                    let action = m.module.actions().iter().enumerate().map(|(k, a)| (k.to_string(), a.clone())).collect();
                    (n.clone(), ModuleSpec::Action { ring: m.ring.clone(), orders: m.module.orders().to_vec(), action })
                })
                .collect(),
            zmodules: self.zmodules.iter().map(|(n, z)| (n.clone(), z.to_string())).collect(),
            tasks: self.tasks.clone(),
        }
    }

    /// Fixture rings, the two principal indecomposables of `T2F2`, and the ℤ-module table.
    pub fn builtin() -> Workspace {
        let rings: BTreeMap<String, Arc<FiniteRing>> = fixtures::rings().into_iter().map(|(n, r)| (n.to_string(), r)).collect();
        let t2 = rings["T2F2"].clone();
        let mut modules = BTreeMap::new();
        for (name, e) in [("e11R", vec![1, 0, 0]), ("e22R", vec![0, 0, 1])] {
            modules.insert(name.to_string(), NamedModule { ring: "T2F2".into(), module: principal_module(&t2, &e) });
        }
        let zmodules = ["Q", "Z + Q", "Prufer(2)", "Z/2 + Prufer(2)", "Z/6", "Q + Z/6"]
            .into_iter()
            .map(|s| (s.to_string(), s.parse().expect("builtin expressions parse")))
            .collect();
        Workspace { rings, modules, zmodules, tasks: Vec::new() }
    }

    pub fn ring(&self, name: &str) -> Result<&Arc<FiniteRing>, String> {
        self.rings.get(name).ok_or_else(|| format!("unknown ring {name:?}"))
    }

    /// A named module, or `regular(RING)`.
    pub fn module(&self, name: &str) -> Result<NamedModule, String> {
        if let Some(inner) = name.strip_prefix("regular(").and_then(|r| r.strip_suffix(')')) {
            let ring = self.ring(inner)?;
            return Ok(NamedModule { ring: inner.to_string(), module: FiniteModule::regular(ring) });
        }
        self.modules.get(name).cloned().ok_or_else(|| format!("unknown module {name:?}"))
    }

    pub fn zmodule(&self, name: &str) -> Result<ZModuleExpr, String> {
        match self.zmodules.get(name) {
            Some(z) => Ok(z.clone()),
            None => name.parse().map_err(|e| format!("unknown ℤ-module {name:?} ({e})")),
        }
    }

    fn check_task(&self, task: &Task) -> Result<(), String> {
        let t = task.target.as_str();
        match task.command.as_str() {
            "validate" => (t == "all" || self.rings.contains_key(t) || self.module(t).is_ok() || self.zmodule(t).is_ok())
                .then_some(())
                .ok_or_else(|| format!("unknown target {t:?}")),
            "simples" | "cartan" | "check-hring" | "witness-hring" => self.ring(t).map(|_| ()),
            "check-cokasch" => self.ring(t).map(|_| ()).or_else(|_| self.module(t).map(|_| ())),
            "check-kasch" => self.module(t).map(|_| ()),
            "check-z" => self.zmodule(t).map(|_| ()),
            "verify" => (t == "all" || PROPOSITIONS.contains(&t)).then_some(()).ok_or_else(|| format!("unknown proposition {t:?}")),
            other => Err(format!("unknown command {other:?}")),
        }
    }
}

fn build_module(ring: &Arc<FiniteRing>, spec: ModuleSpec) -> Result<FiniteModule, String> {
    match spec {
        ModuleSpec::Principal { principal, .. } => {
            if principal.len() != ring.rank() {
                return Err(format!("principal generator needs {} coordinates", ring.rank()));
            }
            Ok(principal_module(ring, &ring.reduce(&principal)))
        }
        ModuleSpec::Action { orders, action, .. } => {
            let m = orders.len();
            let mut actions = vec![IntMatrix::zeros(m, m); ring.rank()];
            for (key, matrix) in action {
                let k: usize = key.parse().map_err(|_| format!("action key {key:?} is not a basis index"))?;
                if k >= ring.rank() {
                    return Err(format!("action key {k} is out of range for a ring of rank {}", ring.rank()));
                }
                actions[k] = matrix;
            }
            FiniteModule::validate(ring, ModuleTable { orders, actions }).map_err(|e| e.to_string())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    pub budget: Budget,
    pub timings: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timings {
    pub millis: f64,
}

/// One line of the machine-readable report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TaskReport {
    pub task: String,
    pub target: String,
    pub verdict: Option<bool>,
    pub witness: Option<Witness>,
    pub details: Value,
    pub timings: Option<Timings>,
    /// Set when the task could not run or a harness reported failures.
    pub failed: bool,
}

fn module_json(m: &FiniteModule) -> Value {
    json!({ "orders": m.orders(), "actions": m.actions() })
}

fn catalog_json(c: &SimpleCatalog) -> Value {
    let idempotents = &c.ring().primitive_decomposition().idempotents;
    let simples: Vec<Value> = (0..c.len())
        .map(|i| {
            json!({
                "index": i,
                "module": module_json(&c.simples[i]),
                "end_size": c.end_sizes[i] as u64,
                "cover_idempotent": idempotents[c.cover_idempotent[i]],
            })
        })
        .collect();
    json!(simples)
}

fn property(task: &Task, report: PropertyReport, details: Value) -> TaskReport {
    TaskReport {
        task: task.command.clone(),
        target: task.target.clone(),
        verdict: Some(report.verdict),
        witness: report.witness,
        details,
        timings: None,
        failed: false,
    }
}

fn plain(task: &Task, verdict: Option<bool>, details: Value) -> TaskReport {
    TaskReport { task: task.command.clone(), target: task.target.clone(), verdict, witness: None, details, timings: None, failed: false }
}

fn run_one(ws: &Workspace, task: &Task, opts: &RunOptions) -> Result<TaskReport, String> {
    let t = task.target.as_str();
    Ok(match task.command.as_str() {
        "validate" => {
            let details = if t == "all" {
                json!({ "rings": ws.rings.len(), "modules": ws.modules.len(), "zmodules": ws.zmodules.len() })
            } else if let Ok(r) = ws.ring(t) {
                json!({ "kind": "ring", "size": r.size(), "orders": r.orders() })
            } else if let Ok(m) = ws.module(t) {
                json!({ "kind": "module", "ring": m.ring, "size": m.module.size() as u64, "orders": m.module.orders() })
            } else {
                json!({ "kind": "zmodule", "expression": ws.zmodule(t)?.to_string() })
            };
            plain(task, Some(true), details)
        }
        "simples" => {
            let c = simple_catalog(ws.ring(t)?);
            plain(task, None, json!({ "simples": catalog_json(&c) }))
        }
        "cartan" => {
            let c = simple_catalog(ws.ring(t)?);
            let p = check_projective_cokasch(&c);
            plain(task, Some(p.cartan_diagonal), json!({ "matrix": p.cartan.entries, "row_sums": p.cartan.row_sums(), "diagonal": p.cartan_diagonal }))
        }
        "check-cokasch" if ws.rings.contains_key(t) => {
            let c = simple_catalog(ws.ring(t)?);
            let p = check_projective_cokasch(&c);
            let details = json!({
                "scope": "principal indecomposables",
                "covers": p.covers.iter().map(|r| r.verdict).collect::<Vec<_>>(),
                "cartan": p.cartan.entries,
                "cartan_diagonal": p.cartan_diagonal,
                "equivalence_holds": p.equivalence_holds(),
            });
            property(task, p.report(), details)
        }
        "check-cokasch" | "check-kasch" => {
            let m = ws.module(t)?;
            let c = simple_catalog(ws.ring(&m.ring)?);
            let report = if task.command == "check-kasch" { is_kasch(&m.module, &c) } else { is_co_kasch(&m.module, &c) };
            let profile = composition_profile(&m.module, &c);
            property(task, report, json!({ "ring": m.ring, "size": m.module.size() as u64, "profile": profile.multiplicities }))
        }
        "check-hring" => {
            let c = simple_catalog(ws.ring(t)?);
            let sizes: Vec<Vec<u64>> = (0..c.len()).map(|s| (0..c.len()).map(|u| ext1(&c, s, u).expect("catalog indices").size as u64).collect()).collect();
            let details = json!({ "ext_sizes": sizes, "assumption": "finite rings are artinian, hence right max" });
            property(task, is_h_ring(&c), details)
        }
        "witness-hring" => {
            let c = simple_catalog(ws.ring(t)?);
            let report = is_h_ring(&c);
            let details = match &report.witness {
                Some(Witness::ExtClass { source, target, cocycle, .. }) => {
                    let ext = ext1(&c, *source, *target).expect("catalog indices");
                    let phi = ext.cocycle.clone().expect("nonzero class");
                    debug_assert_eq!(phi.matrix(), cocycle);
                    let x = construct_extension(&c, *source, *target, &phi).map_err(|e| e.to_string())?;
                    let ck = is_co_kasch(&x, &c);
                    json!({
                        "extension": module_json(&x),
                        "extension_co_kasch": ck.verdict,
                        "extension_witness": ck.witness,
                        "isomorphic_to_cover": is_isomorphic(&x, &c.projective_cover(*source)),
                    })
                }
                _ => json!({ "extension": null }),
            };
            property(task, report, details)
        }
        "check-z" => {
            let z = ws.zmodule(t)?;
            let details = json!({ "expression": z.to_string(), "torsion": is_torsion(&z), "primary_support": primary_support(&z) });
            property(task, is_co_kasch_z(&z), details)
        }
        "verify" => {
            let props: Vec<&str> = if t == "all" { PROPOSITIONS.to_vec() } else { vec![t] };
            let rings: Vec<(String, Arc<FiniteRing>)> = ws.rings.iter().map(|(n, r)| (n.clone(), r.clone())).collect();
            let mut results = Vec::new();
            for p in props {
                results.push(run_harness(p, &rings, &opts.budget, opts.seed).map_err(|e| e.to_string())?);
            }
            let passed = results.iter().all(|r| r.passed());
            let mut report = plain(task, Some(passed), json!({ "seed": opts.seed, "budget": opts.budget, "results": results }));
            report.failed = !passed;
            report
        }
        other => return Err(format!("unknown command {other:?}")),
    })
}

/// Runs tasks, possibly concurrently; reports come back in task order.
pub fn run_tasks(ws: &Workspace, tasks: &[Task], opts: &RunOptions) -> Vec<TaskReport> {
    map_ordered(tasks, |task| {
        // no clock on wasm32-unknown-unknown, so only read it on request
        let start = opts.timings.then(Instant::now);
        let mut report = run_one(ws, task, opts).unwrap_or_else(|message| {
            let mut r = plain(task, None, json!({ "error": message }));
            r.failed = true;
            r
        });
        if let Some(start) = start {
            report.timings = Some(Timings { millis: start.elapsed().as_secs_f64() * 1000.0 });
        }
        report
    })
}
