use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use super::{hom_space, quotient_module, subfactor, FiniteModule, Submodule};
use crate::presentation::Subgroup;
use crate::ring::FiniteRing;

/// Isomorphism classes of simple right modules, ordered by their cover idempotents.
#[derive(Clone, Debug)]
pub struct SimpleCatalog {
    ring: Arc<FiniteRing>,
    pub simples: Vec<FiniteModule>,
    /// `|End(S)|` per simple.
    pub end_sizes: Vec<u128>,
    /// Index into `ring.primitive_decomposition()` whose principal module has this simple as top.
    pub cover_idempotent: Vec<usize>,
}

impl SimpleCatalog {
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    /// Catalog index of a simple module.
    pub fn index_of(&self, s: &FiniteModule) -> Option<usize> {
        self.simples.iter().position(|t| is_isomorphic(s, t))
    }

    /// `e_i R` for the cover idempotent of simple `i`, as a standalone module.
    pub fn projective_cover(&self, i: usize) -> FiniteModule {
        let e = &self.ring.primitive_decomposition().idempotents[self.cover_idempotent[i]];
        principal_module(&self.ring, e)
    }
}

/// `eR` as a standalone module.
pub fn principal_module(ring: &Arc<FiniteRing>, e: &[i64]) -> FiniteModule {
    let r = FiniteModule::regular(ring);
    Submodule::generated(&r, &[e.to_vec()]).to_module().module
}

/// Finds the simple modules as minimal cyclic submodules of `R/J`, one per isomorphism class.
pub fn simple_catalog(ring: &Arc<FiniteRing>) -> SimpleCatalog {
    let regular = FiniteModule::regular(ring);
    let j = Submodule::generated(&regular, &ring.radical_ideal().basis());
    let (top, _) = quotient_module(&regular, &j);

    let elements: Vec<Vec<i64>> = top.elements().collect();
    let cyclic: Vec<Submodule> = elements.iter().map(|x| Submodule::generated(&top, std::slice::from_ref(x))).collect();
    let index_of = |x: &[i64]| -> usize { x.iter().zip(top.orders()).rev().fold(0usize, |acc, (&c, &o)| acc * o as usize + c as usize) };

    let mut seen: HashSet<Subgroup> = HashSet::new();
    let mut simples: Vec<FiniteModule> = Vec::new();
    for (x, c) in elements.iter().zip(&cyclic) {
        if c.is_zero() || seen.contains(c.subgroup()) {
            continue;
        }
        let minimal = c.elements().iter().filter(|y| y.iter().any(|&v| v != 0)).all(|y| cyclic[index_of(y)].size() == c.size());
        if !minimal {
            continue;
        }
        debug_assert_eq!(&elements[index_of(x)], x);
        seen.insert(c.subgroup().clone());
        let s = c.to_module().module;
        if !simples.iter().any(|t| is_isomorphic(&s, t)) {
            simples.push(s);
        }
    }

    let decomposition = ring.primitive_decomposition();
    let mut entries: Vec<(usize, FiniteModule)> = simples
        .into_iter()
        .map(|s| {
            // Hom(eR, S) ≅ S·e, so eR covers S exactly when e acts nontrivially on S.
            let cover = decomposition
                .idempotents
                .iter()
                .position(|e| (0..s.rank()).any(|i| s.act(&s.generator(i), e).iter().any(|&v| v != 0)))
                .expect("every simple is the top of some principal indecomposable");
            (cover, s)
        })
        .collect();
    entries.sort_by_key(|(cover, _)| *cover);
    let end_sizes = entries.iter().map(|(_, s)| hom_space(s, s).size()).collect();
    let (cover_idempotent, simples) = entries.into_iter().unzip();
    SimpleCatalog { ring: ring.clone(), simples, end_sizes, cover_idempotent }
}

/// `M ≅ N`, decided by searching `Hom(M, N)` for a bijection.
pub fn is_isomorphic(m: &FiniteModule, n: &FiniteModule) -> bool {
    if !m.same_ring(n) || m.size() != n.size() {
        return false;
    }
    if m.invariant_factors() != n.invariant_factors() {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    hom_space(m, n).find_isomorphism().is_some()
}

/// Multiplicity of each catalog simple among the composition factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionProfile {
    pub multiplicities: Vec<usize>,
    /// Length of each layer `M·J^t / M·J^{t+1}` of the radical series.
    pub layer_lengths: Vec<usize>,
}

impl CompositionProfile {
    pub fn length(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.multiplicities.len()).filter(|&j| self.multiplicities[j] > 0).collect()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.multiplicities[j] > 0
    }
}

/// Multiplicity of each simple in a semisimple module `L`, from `|Hom(L, S)| = |End S|^m`.
pub fn semisimple_multiplicities(layer: &FiniteModule, catalog: &SimpleCatalog) -> Vec<usize> {
    let mut mult = Vec::with_capacity(catalog.len());
    for (s, &end) in catalog.simples.iter().zip(&catalog.end_sizes) {
        let mut h = hom_space(layer, s).size();
        let mut m = 0usize;
        while h > 1 {
            assert!(
                h.is_multiple_of(end),
                "composition multiplicity is not integral: |Hom| = {} is not a power of |End S| = {end} (layer orders {:?})",
                hom_space(layer, s).size(),
                layer.orders()
            );
            h /= end;
            m += 1;
        }
        mult.push(m);
    }
    let product: u128 = catalog.simples.iter().zip(&mult).map(|(s, &m)| s.size().pow(m as u32)).product();
    assert_eq!(product, layer.size(), "layer {:?} is not the sum of its counted simple factors", layer.orders());
    mult
}

/// Composition factors along the radical series `M ⊇ MJ ⊇ MJ² ⊇ … ⊇ 0`.
pub fn composition_profile(m: &FiniteModule, catalog: &SimpleCatalog) -> CompositionProfile {
    assert!(m.ring() == catalog.ring(), "catalog belongs to a different ring");
    let mut multiplicities = vec![0usize; catalog.len()];
    let mut layer_lengths = Vec::new();
    let mut current = Submodule::whole(m);
    while !current.is_zero() {
        let next = current.times_radical();
        assert!(next.size() < current.size(), "radical series stalled; J(R) is not nilpotent");
        let layer = subfactor(&current, &next);
        let mult = semisimple_multiplicities(&layer, catalog);
        layer_lengths.push(mult.iter().sum());
        for (t, x) in multiplicities.iter_mut().zip(mult) {
            *t += x;
        }
        current = next;
    }
    CompositionProfile { multiplicities, layer_lengths }
}
