//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use cokasch::fixtures;
use cokasch::kasch::{cartan_of, construct_extension, ext1, is_co_kasch, is_h_ring, is_kasch, Witness};
use cokasch::module::{hom_space, is_isomorphic, quotient_module, simple_catalog, subfactor, FiniteModule, SimpleCatalog, Submodule};
use cokasch::oracle::{brute_co_kasch, brute_kasch, default_budget, enumerate_submodules, run_harness, Budget};
use cokasch::ring::FiniteRing;
use cokasch::zmod::{is_co_kasch_z, is_p_divisible, ZModuleExpr};

type Check = Result<String, String>;
type Pool = Vec<(String, SimpleCatalog, Vec<(FiniteModule, usize)>)>;

fn fixture_list() -> Vec<(String, Arc<FiniteRing>)> {
    fixtures::rings().into_iter().map(|(n, r)| (n.to_string(), r)).collect()
}

fn ring(name: &str) -> Arc<FiniteRing> {
    fixtures::rings().into_iter().find(|(n, _)| *n == name).expect("fixture").1
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, format!("took {:.1?}, limit {limit:?}", start.elapsed()))
}

/// Composition factor indices along one chain of maximal submodules.
fn chain_factors(m: &FiniteModule, catalog: &SimpleCatalog) -> Vec<usize> {
    let all = enumerate_submodules(m).expect("small module");
    let mut counts = vec![0; catalog.len()];
    let mut top = Submodule::whole(m);
    while !top.is_zero() {
        let below = all
            .iter()
            .filter(|s| s.is_subset_of(&top) && s.size() < top.size())
            .find(|s| !all.iter().any(|t| s.is_subset_of(t) && t.is_subset_of(&top) && t.size() > s.size() && t.size() < top.size()))
            .expect("maximal submodule")
            .clone();
        counts[catalog.index_of(&subfactor(&top, &below)).expect("simple factor")] += 1;
        top = below;
    }
    counts
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let expected = [("F2xF2", vec![vec![1, 0], vec![0, 1]]), ("T2F2", vec![vec![1, 1], vec![0, 1]]), ("Z4", vec![vec![2]]), ("F2dual", vec![vec![2]])];
    for (name, frozen) in &expected {
        let (catalog, cartan) = cartan_of(&ring(name));
        let chains: Vec<Vec<usize>> = (0..catalog.len()).map(|i| chain_factors(&catalog.projective_cover(i), &catalog)).collect();
        ensure(&chains == frozen, format!("{name}: composition series give {chains:?}"))?;
        ensure(&cartan.entries == frozen, format!("{name}: cartan {:?}", cartan.entries))?;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("4 fixtures match composition series in {:.1?}", start.elapsed()))
}

fn harness(prop: &str, budget: &Budget) -> Result<(usize, usize), String> {
    let r = run_harness(prop, &fixture_list(), budget, 7).map_err(|e| e.to_string())?;
    ensure(r.passed(), format!("{prop}: {} failures, first: {}", r.failures.len(), r.failures.first().cloned().unwrap_or_default()))?;
    Ok((r.rings, r.instances))
}

fn criterion_2() -> Check {
    let budget = default_budget();
    ensure(budget.random_rings >= 100 && budget.random_ring_size <= 64, "budget below 100 rings")?;
    let (rings, instances) = harness("3.10", &budget)?;
    ensure(rings >= 105, format!("only {rings} rings"))?;
    Ok(format!("{rings} rings, {instances} instances, 0 failures"))
}

fn free_quotients(r: &Arc<FiniteRing>, cap: u128) -> Vec<FiniteModule> {
    let reg = FiniteModule::regular(r);
    let free = reg.direct_sum(&reg);
    enumerate_submodules(&free).expect("small").into_iter().filter(|k| free.size() / k.size() <= cap).map(|k| quotient_module(&free, &k).0).collect()
}

fn criterion_3() -> Check {
    let t2 = ring("T2F2");
    let catalog = simple_catalog(&t2);
    let report = is_h_ring(&catalog);
    ensure(!report.verdict, "T2F2 reported as an H-ring")?;
    let Some(Witness::ExtClass { source, target, .. }) = report.witness else {
        return Err("no Ext witness".into());
    };
    let phi = ext1(&catalog, source, target).map_err(|e| e.to_string())?.cocycle.ok_or("zero Ext class")?;
    let x = construct_extension(&catalog, source, target, &phi).map_err(|e| e.to_string())?;
    ensure(x.elements().any(|g| Submodule::generated(&x, &[g]).is_whole()), "extension is not cyclic")?;
    ensure(!is_co_kasch(&x, &catalog).verdict, "extension is co-Kasch")?;
    let e11 = cokasch::module::principal_module(&t2, &[1, 0, 0]);
    ensure(is_isomorphic(&x, &e11), "extension is not isomorphic to e11R")?;
    let mut checked = 0;
    for name in ["F2", "Z4", "F2dual", "F2xF2"] {
        let r = ring(name);
        let c = simple_catalog(&r);
        ensure(is_h_ring(&c).verdict, format!("{name} is not an H-ring"))?;
        for q in free_quotients(&r, 256) {
            ensure(is_co_kasch(&q, &c).verdict, format!("{name}: quotient {:?} is not co-Kasch", q.orders()))?;
            checked += 1;
        }
    }
    Ok(format!("T2F2 witness X ≅ e11R, cyclic, not co-Kasch; 4 H-rings, {checked} quotients co-Kasch"))
}

/// Distinct modules N/K (K ⊆ N) of R⊕R, and of R⊕R⊕R when |R| ≤ 4, with at most 64
/// elements, together with the number of pairs realizing each.
fn subfactor_pool() -> Pool {
    let mut out = Vec::new();
    for (name, r) in fixture_list() {
        let reg = FiniteModule::regular(&r);
        let mut frees = vec![reg.direct_sum(&reg)];
        if r.size() <= 4 {
            frees.push(frees[0].direct_sum(&reg));
        }
        let mut modules: Vec<(FiniteModule, usize)> = Vec::new();
        for free in frees {
            let subs = enumerate_submodules(&free).expect("small");
            for n in &subs {
                for k in subs.iter().filter(|k| k.is_subset_of(n) && n.size() / k.size() <= 64) {
                    let q = subfactor(n, k);
                    match modules.iter_mut().find(|(m, _)| m == &q) {
                        Some((_, count)) => *count += 1,
                        None => modules.push((q, 1)),
                    }
                }
            }
        }
        out.push((name, simple_catalog(&r), modules));
    }
    out
}

fn criterion_4(pool: &Pool) -> Check {
    let start = Instant::now();
    let (mut pairs, mut distinct) = (0, 0);
    for (name, catalog, modules) in pool {
        for (m, count) in modules {
            let fast = (is_co_kasch(m, catalog).verdict, is_kasch(m, catalog).verdict);
            let brute = (brute_co_kasch(m, catalog).map_err(|e| e.to_string())?.verdict, brute_kasch(m, catalog).map_err(|e| e.to_string())?.verdict);
            ensure(fast == brute, format!("{name}: {:?} fast {fast:?} brute {brute:?}", m.table()))?;
            pairs += count;
            distinct += 1;
        }
    }
    ensure(pairs >= 500, format!("only {pairs} instances"))?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("{pairs} instances ({distinct} distinct modules), 0 disagreements in {:.1?}", start.elapsed()))
}

fn criterion_5() -> Check {
    let budget = default_budget();
    let mut parts = Vec::new();
    for prop in ["2.3", "2.7", "2.9"] {
        let (_, instances) = harness(prop, &budget)?;
        ensure(instances >= 200, format!("{prop}: only {instances} instances"))?;
        parts.push(format!("{prop}: {instances}"));
    }
    Ok(format!("{}, 0 failures", parts.join(", ")))
}

fn criterion_6(pool: &Pool) -> Check {
    let (mut modules, mut spaces) = (0, 0);
    for (name, catalog, entries) in pool {
        for (m, _) in entries.iter().filter(|(m, _)| is_co_kasch(m, catalog).verdict) {
            let subs = enumerate_submodules(m).map_err(|e| e.to_string())?;
            for n in &subs {
                for k in subs.iter().filter(|k| k.is_subset_of(n) && k.size() < n.size()) {
                    let q = subfactor(n, k);
                    ensure(!hom_space(m, &q).is_zero(), format!("falsification candidate: {name}: {:?}, N = {:?}, K = {:?}", m.table(), n.basis(), k.basis()))?;
                    spaces += 1;
                }
            }
            modules += 1;
        }
    }
    Ok(format!("{modules} co-Kasch modules, {spaces} nonzero subfactors, no falsification candidates"))
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let table = [
        ("Q", false, None),
        ("Z + Q", true, None),
        ("Prufer(2)", false, None),
        ("Z/2 + Prufer(2)", true, None),
        ("Z/6", true, None),
        ("Q + Z/6", false, Some(5)),
    ];
    for (text, verdict, prime) in table {
        let m: ZModuleExpr = text.parse().map_err(|e| format!("{text}: {e}"))?;
        let r = is_co_kasch_z(&m);
        ensure(r.verdict == verdict, format!("{text}: verdict {}", r.verdict))?;
        match (r.witness, prime) {
            (Some(Witness::Prime { p }), _) => {
                ensure(is_p_divisible(&m, p), format!("{text}: not divisible at {p}"))?;
                ensure(prime.is_none_or(|q| q == p), format!("{text}: witness {p}"))?;
            }
            (None, None) => {}
            (w, _) => return Err(format!("{text}: witness {w:?}")),
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("6 modules in {:.1?}", start.elapsed()))
}

fn criterion_8() -> Check {
    let run = || -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_cokasch")).args(["verify", "--seed", "7", "--format", "json"]).output().map_err(|e| e.to_string())?;
        ensure(out.status.success(), format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)))?;
        Ok(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    ensure(!a.is_empty() && a == b, "reports differ between runs")?;
    Ok(format!("{} bytes, identical", a.len()))
}

fn main() -> ExitCode {
    let pool = subfactor_pool();
    let criteria: Vec<(usize, Box<dyn Fn() -> Check + '_>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(criterion_2)),
        (3, Box::new(criterion_3)),
        (4, Box::new(|| criterion_4(&pool))),
        (5, Box::new(criterion_5)),
        (6, Box::new(|| criterion_6(&pool))),
        (7, Box::new(criterion_7)),
        (8, Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (n, check) in criteria {
        match check() {
            Ok(msg) => println!("criterion {n}: PASS {msg}"),
            Err(msg) => {
                println!("criterion {n}: FAIL {msg}");
                failed += 1;
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
