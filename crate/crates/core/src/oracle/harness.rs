use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{brute_co_kasch, brute_kasch, enumerate_submodules, random_rings, simple_subfactors, witness_holds, OracleError};
use crate::kasch::{check_projective_cokasch, construct_extension, is_co_kasch, is_h_ring, is_kasch, Witness};
use crate::module::{
    composition_profile, hom_space, quotient_module, radical, semisimple_multiplicities, simple_catalog, subfactor, FiniteModule, SimpleCatalog, Submodule,
    ENUMERATIVE_CAP, MODULE_SIZE_CAP,
};
use crate::par::map_ordered;
use crate::ring::FiniteRing;

/// Harness ids, in the order `verify` runs them.
pub const PROPOSITIONS: &[&str] = &["2.2", "2.3", "2.4", "2.5", "2.6", "2.7", "2.9", "3.1", "3.9", "3.10", "3.17", "kasch"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Seeded random rings added to the fixtures.
    pub random_rings: usize,
    pub random_ring_size: u128,
    /// Largest module handed to the brute-force oracles.
    pub module_size: u128,
    /// Modules (or module pairs) sampled per random ring; fixture rings use their full pools.
    pub per_ring: usize,
}

pub fn default_budget() -> Budget {
    Budget { random_rings: 100, random_ring_size: 64, module_size: 64, per_ring: 8 }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarnessResult {
    pub prop: String,
    pub seed: u64,
    pub rings: usize,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl HarnessResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct RingCase {
    name: String,
    ring: Arc<FiniteRing>,
    catalog: SimpleCatalog,
    fixture: bool,
    seed: u64,
}

#[derive(Clone)]
struct PoolModule {
    label: String,
    module: FiniteModule,
}

#[derive(Default)]
struct Tally {
    instances: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.instances += other.instances;
        self.failures.extend(other.failures);
    }
}

fn fmt_vecs(v: &[Vec<i64>]) -> String {
    serde_json::to_string(v).expect("integer vectors serialize")
}

/// The free module used to generate test modules: `R ⊕ R` when it is small enough to enumerate, else `R`.
fn free_module(ring: &Arc<FiniteRing>) -> (FiniteModule, &'static str) {
    let r = FiniteModule::regular(ring);
    if r.size() * r.size() <= ENUMERATIVE_CAP {
        (r.direct_sum(&r), "R+R")
    } else {
        (r, "R")
    }
}

/// Distinct quotients of the free module of size at most `max_size`.
fn quotient_pool(case: &RingCase, max_size: u128) -> Vec<PoolModule> {
    let (free, free_name) = free_module(&case.ring);
    let subs = enumerate_submodules(&free).expect("free module is within the enumerative cap");
    let mut pool: Vec<PoolModule> = Vec::new();
    for k in subs {
        if free.size() / k.size() > max_size {
            continue;
        }
        let (q, _) = quotient_module(&free, &k);
        if pool.iter().any(|p| p.module == q) {
            continue;
        }
        pool.push(PoolModule { label: format!("{}: ({free_name})/<{}>", case.name, fmt_vecs(&k.basis())), module: q });
    }
    pool
}

fn sampled<T: Clone>(case: &RingCase, items: Vec<T>, per_ring: usize, salt: u64) -> Vec<T> {
    if case.fixture || items.len() <= per_ring {
        return items;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(case.seed ^ salt);
    let mut items = items;
    items.shuffle(&mut rng);
    items.truncate(per_ring);
    items
}

fn co_kasch_pool(case: &RingCase, budget: &Budget) -> Vec<PoolModule> {
    let pool = quotient_pool(case, budget.module_size);
    let good: Vec<PoolModule> = pool.into_iter().filter(|p| is_co_kasch(&p.module, &case.catalog).verdict).collect();
    sampled(case, good, budget.per_ring, 0xc0)
}

fn oracle_support(m: &FiniteModule, catalog: &SimpleCatalog) -> BTreeSet<usize> {
    let subs = simple_subfactors(m).expect("within the enumerative cap");
    (0..subs.pairs.len())
        .map(|t| {
            let (k, n) = subs.pair(t);
            catalog.index_of(&subfactor(n, k)).expect("simple subfactor is in the catalog")
        })
        .collect()
}

fn profile_support(m: &FiniteModule, catalog: &SimpleCatalog) -> BTreeSet<usize> {
    composition_profile(m, catalog).support().into_iter().collect()
}

fn check_oracle_equivalence(case: &RingCase, budget: &Budget, kasch: bool) -> Tally {
    let mut t = Tally::default();
    let pool = sampled(case, quotient_pool(case, budget.module_size), budget.per_ring, 0x22);
    for p in pool {
        let fast = if kasch { is_kasch(&p.module, &case.catalog) } else { is_co_kasch(&p.module, &case.catalog) };
        let slow = if kasch { brute_kasch(&p.module, &case.catalog) } else { brute_co_kasch(&p.module, &case.catalog) };
        let slow = slow.expect("pool modules are within the enumerative cap");
        t.check(fast.verdict == slow.verdict, || format!("{}: fast verdict {} but brute verdict {}", p.label, fast.verdict, slow.verdict));
        if !fast.verdict {
            t.check(witness_holds(&p.module, &case.catalog, &fast), || format!("{}: witness {:?} does not check", p.label, fast.witness));
        }
    }
    t
}

fn check_sum_with_regular(case: &RingCase, budget: &Budget) -> Tally {
    let mut t = Tally::default();
    let r = FiniteModule::regular(&case.ring);
    let pool = sampled(case, quotient_pool(case, budget.module_size), budget.per_ring, 0x23);
    for p in pool {
        if p.module.size() * r.size() > MODULE_SIZE_CAP {
            continue;
        }
        let x = p.module.direct_sum(&r);
        let fast = is_co_kasch(&x, &case.catalog).verdict;
        t.check(fast, || format!("{} (+) R is not co-Kasch", p.label));
        if x.size() <= budget.module_size {
            let slow = brute_co_kasch(&x, &case.catalog).expect("within cap").verdict;
            t.check(slow, || format!("{} (+) R is not co-Kasch by brute force", p.label));
        }
    }
    t
}

fn check_factor_sets(case: &RingCase, budget: &Budget, doubled: bool) -> Tally {
    let mut t = Tally::default();
    let pool = sampled(case, quotient_pool(case, budget.module_size), budget.per_ring, 0x24);
    for p in pool {
        let oracle = oracle_support(&p.module, &case.catalog);
        let fast = if doubled { profile_support(&p.module.direct_sum(&p.module), &case.catalog) } else { profile_support(&p.module, &case.catalog) };
        t.check(oracle == fast, || format!("{}: oracle simple subfactors {oracle:?} but composition factors {fast:?}", p.label));
        if doubled && p.module.size() * p.module.size() <= 16 {
            let sum = p.module.direct_sum(&p.module);
            let big = oracle_support(&sum, &case.catalog);
            t.check(big == oracle, || format!("{}: simples of M (+) M {big:?} differ from those of M {oracle:?}", p.label));
        }
    }
    t
}

fn check_projective_generators(case: &RingCase) -> Tally {
    let mut t = Tally::default();
    for i in 0..case.catalog.len() {
        let p = case.catalog.projective_cover(i);
        if p.size() > ENUMERATIVE_CAP {
            continue;
        }
        let fast = is_co_kasch(&p, &case.catalog).verdict;
        let oracle = oracle_support(&p, &case.catalog);
        let all_quotients = oracle.iter().all(|&j| hom_space(&p, &case.catalog.simples[j]).iter_maps().any(|f| f.is_surjective()));
        t.check(fast == all_quotients, || format!("{}: e_{i}R co-Kasch = {fast} but every simple subfactor is a quotient = {all_quotients}", case.name));
    }
    t
}

fn check_direct_sums(case: &RingCase, budget: &Budget) -> Tally {
    let mut t = Tally::default();
    let good = co_kasch_pool(case, budget);
    let mut pairs: Vec<(usize, usize)> = (0..good.len()).flat_map(|a| (a..good.len()).map(move |b| (a, b))).collect();
    if case.fixture {
        let mut rng = ChaCha8Rng::seed_from_u64(case.seed ^ 0x27);
        pairs.shuffle(&mut rng);
        pairs.truncate(64);
    } else {
        pairs = sampled(case, pairs, budget.per_ring, 0x27);
    }
    for (a, b) in pairs {
        let (m, n) = (&good[a], &good[b]);
        if m.module.size() * n.module.size() > MODULE_SIZE_CAP {
            continue;
        }
        let sum = m.module.direct_sum(&n.module);
        t.check(is_co_kasch(&sum, &case.catalog).verdict, || format!("{} (+) {} is not co-Kasch", m.label, n.label));
        if sum.size() <= budget.module_size {
            let slow = brute_co_kasch(&sum, &case.catalog).expect("within cap").verdict;
            t.check(slow, || format!("{} (+) {} is not co-Kasch by brute force", m.label, n.label));
        }
    }
    t
}

fn check_radical_quotients(case: &RingCase, budget: &Budget) -> Tally {
    let mut t = Tally::default();
    for p in co_kasch_pool(case, budget) {
        let rad = radical(&p.module);
        for k in enumerate_submodules(&p.module).expect("within cap") {
            if !k.is_subset_of(&rad) {
                continue;
            }
            let (q, _) = quotient_module(&p.module, &k);
            let fast = is_co_kasch(&q, &case.catalog).verdict;
            let slow = brute_co_kasch(&q, &case.catalog).expect("within cap").verdict;
            t.check(fast && slow, || format!("{} / <{}> is not co-Kasch (fast {fast}, brute {slow})", p.label, fmt_vecs(&k.basis())));
        }
    }
    t
}

fn check_radical_proper(case: &RingCase, budget: &Budget) -> Tally {
    let mut t = Tally::default();
    for p in co_kasch_pool(case, budget) {
        if p.module.is_zero() {
            continue;
        }
        t.check(!radical(&p.module).is_whole(), || format!("{}: Rad(M) = M", p.label));
    }
    t
}

fn is_cyclic(m: &FiniteModule) -> bool {
    m.elements().any(|x| Submodule::generated(m, &[x]).is_whole())
}

fn check_h_ring(case: &RingCase) -> Tally {
    let mut t = Tally::default();
    let report = is_h_ring(&case.catalog);
    let (free, free_name) = free_module(&case.ring);
    let mut all_co_kasch = true;
    for k in enumerate_submodules(&free).expect("within cap") {
        let (q, _) = quotient_module(&free, &k);
        let ok = is_co_kasch(&q, &case.catalog).verdict;
        all_co_kasch &= ok;
        t.check(ok || !report.verdict, || format!("{}: H-ring but ({free_name})/<{}> is not co-Kasch", case.name, fmt_vecs(&k.basis())));
    }
    t.check(report.verdict == all_co_kasch, || {
        format!("{}: is_h_ring = {} but all quotients of {free_name} co-Kasch = {all_co_kasch}", case.name, report.verdict)
    });
    if let Some(Witness::ExtClass { source, target, .. }) = report.witness {
        let ext = crate::kasch::ext1(&case.catalog, source, target).expect("catalog indices");
        let phi = ext.cocycle.expect("nonzero Ext carries a cocycle");
        let x = construct_extension(&case.catalog, source, target, &phi).expect("non-split cocycle");
        let (top, _) = quotient_module(&x, &radical(&x));
        let local = semisimple_multiplicities(&top, &case.catalog).iter().sum::<usize>() == 1;
        let not_co_kasch = !is_co_kasch(&x, &case.catalog).verdict;
        let brute_ok = x.size() > ENUMERATIVE_CAP || !brute_co_kasch(&x, &case.catalog).expect("within cap").verdict;
        t.check(is_cyclic(&x) && local && not_co_kasch && brute_ok, || {
            format!("{}: extension of S_{source} by S_{target} is not a cyclic local non-co-Kasch module", case.name)
        });
    }
    t
}

fn check_cartan_equivalence(case: &RingCase) -> Tally {
    let mut t = Tally::default();
    let r = check_projective_cokasch(&case.catalog);
    t.check(r.equivalence_holds(), || {
        format!("{}: projectives co-Kasch = {} but Cartan {:?} diagonal = {}", case.name, r.all_co_kasch, r.cartan.entries, r.cartan_diagonal)
    });
    for (i, report) in r.covers.iter().enumerate() {
        let p = case.catalog.projective_cover(i);
        if p.size() <= ENUMERATIVE_CAP {
            let slow = brute_co_kasch(&p, &case.catalog).expect("within cap").verdict;
            t.check(slow == report.verdict, || format!("{}: e_{i}R fast {} brute {slow}", case.name, report.verdict));
        }
    }
    t
}

fn check_retractable(case: &RingCase, budget: &Budget) -> Tally {
    let mut t = Tally::default();
    for p in co_kasch_pool(case, budget) {
        let subs = enumerate_submodules(&p.module).expect("within cap");
        for n in &subs {
            if !n.is_zero() {
                let h = hom_space(&p.module, &n.to_module().module);
                t.check(!h.is_zero(), || format!("falsification candidate: {}: Hom(M, N) = 0 for N = <{}>", p.label, fmt_vecs(&n.basis())));
            }
            for k in &subs {
                if k.size() < n.size() && k.is_subset_of(n) {
                    let q = subfactor(n, k);
                    t.check(hom_space(&p.module, &q).size() > 1, || {
                        format!("falsification candidate: {}: Hom(M, N/K) = 0 for N = <{}>, K = <{}>", p.label, fmt_vecs(&n.basis()), fmt_vecs(&k.basis()))
                    });
                }
            }
        }
    }
    t
}

fn run_case(prop: &str, case: &RingCase, budget: &Budget) -> Tally {
    match prop {
        "2.2" => check_oracle_equivalence(case, budget, false),
        "kasch" => check_oracle_equivalence(case, budget, true),
        "2.3" => check_sum_with_regular(case, budget),
        "2.4" => check_factor_sets(case, budget, false),
        "2.5" => check_factor_sets(case, budget, true),
        "2.6" => check_projective_generators(case),
        "2.7" => check_direct_sums(case, budget),
        "2.9" => check_radical_quotients(case, budget),
        "3.1" => check_radical_proper(case, budget),
        "3.9" => check_h_ring(case),
        "3.10" => check_cartan_equivalence(case),
        "3.17" => check_retractable(case, budget),
        _ => unreachable!("proposition ids are validated before dispatch"),
    }
}

/// Runs one proposition over the given rings plus `budget.random_rings` seeded random rings.
/// The result depends only on the arguments.
pub fn run_harness(prop: &str, fixtures: &[(String, Arc<FiniteRing>)], budget: &Budget, seed: u64) -> Result<HarnessResult, OracleError> {
    if !PROPOSITIONS.contains(&prop) {
        return Err(OracleError::UnknownProposition(prop.to_string()));
    }
    let mut rings: Vec<(String, Arc<FiniteRing>, bool)> = fixtures.iter().map(|(n, r)| (n.clone(), r.clone(), true)).collect();
    rings.extend(random_rings(budget.random_rings, seed, budget.random_ring_size).into_iter().map(|(n, r)| (n, r, false)));
    let indexed: Vec<_> = rings.into_iter().enumerate().collect();
    let cases: Vec<RingCase> = map_ordered(&indexed, |(i, (name, ring, fixture))| RingCase {
        name: name.clone(),
        catalog: simple_catalog(ring),
        ring: ring.clone(),
        fixture: *fixture,
        seed: seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(*i as u64),
    });
    let tallies = map_ordered(&cases, |case| run_case(prop, case, budget));
    let mut total = Tally::default();
    for t in tallies {
        total.absorb(t);
    }
    Ok(HarnessResult { prop: prop.to_string(), seed, rings: cases.len(), instances: total.instances, failures: total.failures })
}
