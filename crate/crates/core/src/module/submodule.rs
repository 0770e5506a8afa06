use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{FiniteModule, ModuleElement, ModuleMap};
use crate::presentation::{quotient_presentation, solve_congruence_system, IntMatrix, Subgroup, SubgroupPresentation};
use crate::ring::FiniteRing;

/// A submodule, stored by its canonical (Howell) basis.
#[derive(Clone, Debug)]
pub struct Submodule {
    parent: FiniteModule,
    generators: Vec<ModuleElement>,
    group: Subgroup,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.parent == other.parent
    }
}

impl Eq for Submodule {}

impl Hash for Submodule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.group.hash(state);
    }
}

impl Submodule {
    /// Smallest submodule containing `elements`: alternately take the additive
    /// span and adjoin `x·b_k` for every basis vector until nothing new appears.
    pub fn generated(parent: &FiniteModule, elements: &[ModuleElement]) -> Submodule {
        let reduced: Vec<ModuleElement> = elements.iter().map(|e| e.iter().zip(parent.orders()).map(|(&x, &o)| x.rem_euclid(o)).collect()).collect();
        let mut group = Subgroup::generated(parent.orders(), &reduced);
        loop {
            let basis = group.basis();
            let fresh: Vec<ModuleElement> =
                basis.iter().flat_map(|b| (0..parent.ring().rank()).map(move |k| parent.act_basis(b, k))).filter(|y| !group.contains(y)).collect();
            if fresh.is_empty() {
                break;
            }
            let mut gens = basis;
            gens.extend(fresh);
            group = Subgroup::generated(parent.orders(), &gens);
        }
        Submodule { parent: parent.clone(), generators: reduced, group }
    }

    pub fn zero(parent: &FiniteModule) -> Submodule {
        Submodule::generated(parent, &[])
    }

    pub fn whole(parent: &FiniteModule) -> Submodule {
        let gens: Vec<ModuleElement> = (0..parent.rank()).map(|i| parent.generator(i)).collect();
        Submodule::generated(parent, &gens)
    }

    pub fn parent(&self) -> &FiniteModule {
        &self.parent
    }

    pub fn generators(&self) -> &[ModuleElement] {
        &self.generators
    }

    /// Canonical basis (Howell rows in module coordinates).
    pub fn basis(&self) -> Vec<ModuleElement> {
        self.group.basis()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.group
    }

    pub fn size(&self) -> u128 {
        self.group.order()
    }

    pub fn is_zero(&self) -> bool {
        self.group.is_trivial()
    }

    pub fn is_whole(&self) -> bool {
        self.size() == self.parent.size()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.group.contains(x)
    }

    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        self.group.is_subgroup_of(&other.group)
    }

    pub fn elements(&self) -> Vec<ModuleElement> {
        self.group.elements()
    }

    /// `N + N'`.
    pub fn join(&self, other: &Submodule) -> Submodule {
        let group = self.group.join(&other.group);
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Submodule { parent: self.parent.clone(), generators, group }
    }

    /// `N·J(R)`, the radical of `N`.
    pub fn times_radical(&self) -> Submodule {
        let j = self.parent.ring().radical_ideal().basis();
        let products: Vec<ModuleElement> = self.basis().iter().flat_map(|x| j.iter().map(move |r| self.parent.act(x, r))).collect();
        Submodule::generated(&self.parent, &products)
    }

    /// This submodule as a module in its own cyclic coordinates.
    pub fn to_module(&self) -> SubmoduleEmbedding {
        let presentation = self.group.presentation();
        let parent = &self.parent;
        let actions = (0..parent.ring().rank())
            .map(|k| {
                let rows: Vec<Vec<i64>> = presentation
                    .generators
                    .iter()
                    .map(|g| presentation.coordinates(&parent.act_basis(g, k)).expect("submodule is closed under the action"))
                    .collect();
                IntMatrix::from_rows(&rows, presentation.orders().len())
            })
            .collect();
        let module = FiniteModule::from_parts(parent.ring().clone(), presentation.orders().to_vec(), actions);
        let inclusion = ModuleMap::from_parts(&module, parent, IntMatrix::from_rows(&presentation.generators, parent.rank()));
        SubmoduleEmbedding { module, inclusion, presentation }
    }
}

/// A submodule `N ⊆ M` re-presented as a standalone module with its inclusion map.
#[derive(Clone, Debug)]
pub struct SubmoduleEmbedding {
    pub module: FiniteModule,
    pub inclusion: ModuleMap,
    presentation: SubgroupPresentation,
}

impl SubmoduleEmbedding {
    /// Coordinates in [`Self::module`] of an element of `N`.
    pub fn coordinates(&self, x: &[i64]) -> Option<ModuleElement> {
        self.presentation.coordinates(x)
    }

    /// A submodule `K ⊆ N` of the parent, seen inside the standalone module.
    pub fn restrict(&self, k: &Submodule) -> Submodule {
        let gens: Vec<ModuleElement> = k.basis().iter().map(|x| self.coordinates(x).expect("restricted submodule must lie inside the embedded one")).collect();
        Submodule::generated(&self.module, &gens)
    }
}

/// `M/K` in canonical cyclic coordinates, with the projection `M → M/K`.
pub fn quotient_module(m: &FiniteModule, k: &Submodule) -> (FiniteModule, ModuleMap) {
    let qp = quotient_presentation(m.orders(), &k.basis());
    let actions = m
        .actions()
        .iter()
        .map(|a| {
            let rows: Vec<Vec<i64>> = (0..qp.orders.len()).map(|t| qp.project(&a.apply_row(qp.lift.row(t), m.orders()))).collect();
            IntMatrix::from_rows(&rows, qp.orders.len())
        })
        .collect();
    let q = FiniteModule::from_parts(m.ring().clone(), qp.orders.clone(), actions);
    let projection = ModuleMap::from_parts(m, &q, qp.projection.clone());
    (q, projection)
}

/// The subfactor `N/K` for `K ⊆ N ⊆ M`.
pub fn subfactor(n: &Submodule, k: &Submodule) -> FiniteModule {
    let emb = n.to_module();
    let inner = emb.restrict(k);
    quotient_module(&emb.module, &inner).0
}

/// `Rad(M) = M·J(R)`.
pub fn radical(m: &FiniteModule) -> Submodule {
    Submodule::whole(m).times_radical()
}

/// `Soc(M) = {x ∈ M : x·J(R) = 0}`.
pub fn socle(m: &FiniteModule) -> Submodule {
    let j = m.ring().radical_ideal().basis();
    let n = m.rank();
    let mut rows = Vec::new();
    let mut moduli = Vec::new();
    for r in &j {
        let a = m.action_matrix(r);
        for c in 0..n {
            rows.push((0..n).map(|i| a[(i, c)]).collect::<Vec<i64>>());
            moduli.push(m.orders()[c]);
        }
    }
    let a = IntMatrix::from_rows(&rows, n);
    let zero = vec![0; rows.len()];
    let sol = solve_congruence_system(&a, &moduli, &zero, m.orders()).expect("homogeneous system is consistent");
    Submodule::generated(m, &sol.homogeneous)
}

/// `J(R)` as a right ideal of the regular module.
pub fn jacobson_radical(ring: &Arc<FiniteRing>) -> Submodule {
    let r = FiniteModule::regular(ring);
    Submodule::generated(&r, &ring.radical_ideal().basis())
}
