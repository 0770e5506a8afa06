//! Brute-force, definition-level checks and the randomized verification harness.
//!
//! Nothing here uses composition factors. Subfactors come from the full submodule
//! lattice, and images or embeddings are found by scanning every homomorphism.

mod harness;
mod random;

use std::collections::HashSet;

use thiserror::Error;

use crate::kasch::{PropertyReport, Witness};
use crate::module::{hom_space, subfactor, FiniteModule, SimpleCatalog, Submodule, ENUMERATIVE_CAP};
use crate::presentation::Subgroup;

pub use harness::{default_budget, run_harness, Budget, HarnessResult, PROPOSITIONS};
pub use random::{random_ring, random_rings, subring_table};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("module of order {0} exceeds the enumerative cap of 256")]
    CapExceeded(u128),
    #[error("unknown proposition id {0:?}")]
    UnknownProposition(String),
}

/// Every submodule exactly once, in breadth-first join order starting from `0`.
pub fn enumerate_submodules(m: &FiniteModule) -> Result<Vec<Submodule>, OracleError> {
    if m.size() > ENUMERATIVE_CAP {
        return Err(OracleError::CapExceeded(m.size()));
    }
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let mut cyclic: Vec<Submodule> = Vec::new();
    for x in m.elements() {
        let c = Submodule::generated(m, &[x]);
        if seen.insert(c.subgroup().clone()) {
            cyclic.push(c);
        }
    }
    seen.clear();
    let zero = Submodule::zero(m);
    seen.insert(zero.subgroup().clone());
    let mut all = vec![zero];
    let mut head = 0;
    while head < all.len() {
        let current = all[head].clone();
        head += 1;
        for c in &cyclic {
            if c.is_subset_of(&current) {
                continue;
            }
            let joined = current.join(c);
            if seen.insert(joined.subgroup().clone()) {
                all.push(joined);
            }
        }
    }
    Ok(all)
}

/// All pairs `K ⊆ N ⊆ M` with `N/K` simple.
#[derive(Clone, Debug)]
pub struct SubfactorEnumeration {
    pub parent: FiniteModule,
    pub submodules: Vec<Submodule>,
    /// Indices into `submodules`, as `(k, n)`.
    pub pairs: Vec<(usize, usize)>,
}

impl SubfactorEnumeration {
    pub fn pair(&self, t: usize) -> (&Submodule, &Submodule) {
        let (k, n) = self.pairs[t];
        (&self.submodules[k], &self.submodules[n])
    }
}

/// `N/K` is simple exactly when no submodule lies strictly between `K` and `N`.
pub fn simple_subfactors(m: &FiniteModule) -> Result<SubfactorEnumeration, OracleError> {
    let submodules = enumerate_submodules(m)?;
    let n = submodules.len();
    let below: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a != b && submodules[a].is_subset_of(&submodules[b])).collect()).collect();
    let mut pairs = Vec::new();
    for hi in 0..n {
        for lo in 0..n {
            if !below[lo][hi] {
                continue;
            }
            if !(0..n).any(|mid| below[lo][mid] && below[mid][hi]) {
                pairs.push((lo, hi));
            }
        }
    }
    Ok(SubfactorEnumeration { parent: m.clone(), submodules, pairs })
}

fn catalog_index(q: &FiniteModule, catalog: &SimpleCatalog) -> usize {
    catalog.index_of(q).expect("a simple subfactor is isomorphic to some catalog entry")
}

/// Literal definition: every simple subfactor is the image of some map out of `M`.
pub fn brute_co_kasch(m: &FiniteModule, catalog: &SimpleCatalog) -> Result<PropertyReport, OracleError> {
    let subs = simple_subfactors(m)?;
    let mut answered: Vec<(FiniteModule, bool)> = Vec::new();
    for t in 0..subs.pairs.len() {
        let (k, n) = subs.pair(t);
        let q = subfactor(n, k);
        let hit = match answered.iter().find(|(seen, _)| seen == &q) {
            Some(&(_, hit)) => hit,
            None => {
                let hit = hom_space(m, &q).iter_maps().any(|f| f.is_surjective());
                answered.push((q.clone(), hit));
                hit
            }
        };
        if !hit {
            let witness = Witness::Subfactor { simple: catalog_index(&q, catalog), n: n.basis(), k: k.basis() };
            return Ok(PropertyReport::fail("co-kasch", witness));
        }
    }
    Ok(PropertyReport::pass("co-kasch"))
}

/// Literal definition: every simple subfactor admits an injective map into `M`.
pub fn brute_kasch(m: &FiniteModule, catalog: &SimpleCatalog) -> Result<PropertyReport, OracleError> {
    let subs = simple_subfactors(m)?;
    let mut answered: Vec<(FiniteModule, bool)> = Vec::new();
    for t in 0..subs.pairs.len() {
        let (k, n) = subs.pair(t);
        let q = subfactor(n, k);
        let hit = match answered.iter().find(|(seen, _)| seen == &q) {
            Some(&(_, hit)) => hit,
            None => {
                let hit = hom_space(&q, m).iter_maps().any(|f| f.is_injective());
                answered.push((q.clone(), hit));
                hit
            }
        };
        if !hit {
            let witness = Witness::Subfactor { simple: catalog_index(&q, catalog), n: n.basis(), k: k.basis() };
            return Ok(PropertyReport::fail("kasch", witness));
        }
    }
    Ok(PropertyReport::pass("kasch"))
}

/// Re-checks a negative co-Kasch or Kasch witness from scratch.
pub fn witness_holds(m: &FiniteModule, catalog: &SimpleCatalog, report: &PropertyReport) -> bool {
    let Some(Witness::Subfactor { simple, n, k }) = &report.witness else {
        return report.verdict;
    };
    let (n, k) = (Submodule::generated(m, n), Submodule::generated(m, k));
    if !k.is_subset_of(&n) {
        return false;
    }
    let q = subfactor(&n, &k);
    if *simple >= catalog.len() || !crate::module::is_isomorphic(&q, &catalog.simples[*simple]) {
        return false;
    }
    match report.property.as_str() {
        "co-kasch" => hom_space(m, &q).is_zero(),
        "kasch" => hom_space(&q, m).is_zero(),
        _ => false,
    }
}
