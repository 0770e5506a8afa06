//! Co-Kasch, Kasch and H-ring deciders, Cartan matrices and `Ext¹` between simples.
//!
//! Over a finite ring the simple subfactors of `M` are, up to isomorphism, its
//! composition factors. So `M` is co-Kasch iff every composition factor occurs in
//! `M/Rad M`, and Kasch iff every composition factor occurs in `Soc M`.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::module::{
    composition_profile, hom_space, quotient_module, radical, semisimple_multiplicities, simple_catalog, socle, FiniteModule, ModuleMap, ModuleTable,
    SimpleCatalog, Submodule,
};
use crate::presentation::{IntMatrix, Subgroup};
use crate::ring::FiniteRing;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KaschError {
    #[error("simple index {0} is not in the catalog")]
    UnknownSimple(usize),
    #[error("cocycle is not a map from the radical of the projective cover of S_{0} to S_{1}")]
    WrongCocycleShape(usize, usize),
    #[error("cocycle lies in the image of Hom(P, T); the extension splits")]
    SplitCocycle,
}

/// `c_ij` = multiplicity of `S_j` in `e_i R`, rows and columns in catalog order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    pub entries: Vec<Vec<usize>>,
}

impl CartanMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &c)| i == j || c == 0))
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }
}

/// Checkable evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `N/K ≅ S_simple` with `K ⊆ N ⊆ M`, given by generators in `M`'s coordinates.
    Subfactor { simple: usize, n: Vec<Vec<i64>>, k: Vec<Vec<i64>> },
    /// A nonzero class in `Ext¹(S_source, S_target)` and the non-split extension it defines.
    ExtClass { source: usize, target: usize, ext_size: u128, cocycle: IntMatrix, extension: ModuleTable },
    /// A principal indecomposable that fails the property.
    Projective { cover: usize, inner: Box<Witness> },
    /// A prime `p` with `pM = M`.
    Prime { p: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub verdict: bool,
    pub witness: Option<Witness>,
}

impl PropertyReport {
    pub fn pass(property: &str) -> PropertyReport {
        PropertyReport { property: property.to_string(), verdict: true, witness: None }
    }

    pub fn fail(property: &str, witness: Witness) -> PropertyReport {
        PropertyReport { property: property.to_string(), verdict: false, witness: Some(witness) }
    }
}

/// `M ⊇ MJ ⊇ MJ² ⊇ … ⊇ 0`, ending with the zero submodule.
pub fn radical_series(m: &FiniteModule) -> Vec<Submodule> {
    let mut series = vec![Submodule::whole(m)];
    while !series.last().unwrap().is_zero() {
        let next = series.last().unwrap().times_radical();
        series.push(next);
    }
    series
}

/// A pair `K ⊆ N ⊆ M` with `N/K ≅ S_j`, found inside a radical layer where `S_j` occurs.
pub fn find_subfactor(m: &FiniteModule, catalog: &SimpleCatalog, j: usize) -> Option<(Submodule, Submodule)> {
    let s = &catalog.simples[j];
    let series = radical_series(m);
    for w in series.windows(2) {
        let (upper, lower) = (&w[0], &w[1]);
        let emb = upper.to_module();
        let inner = emb.restrict(lower);
        let (layer, proj) = quotient_module(&emb.module, &inner);
        let homs = hom_space(s, &layer);
        let Some(f) = homs.generators().into_iter().find(|f| !f.is_zero()) else {
            continue;
        };
        let pre = proj.preimage(&f.image());
        let n_gens: Vec<Vec<i64>> = pre.basis().iter().map(|x| emb.inclusion.apply(x)).collect();
        return Some((Submodule::generated(m, &n_gens), lower.clone()));
    }
    None
}

fn subfactor_witness(m: &FiniteModule, catalog: &SimpleCatalog, j: usize) -> Witness {
    let (n, k) = find_subfactor(m, catalog, j).expect("a composition factor occurs in some radical layer");
    Witness::Subfactor { simple: j, n: n.basis(), k: k.basis() }
}

/// Every simple subfactor of `M` is a homomorphic image of `M`.
pub fn is_co_kasch(m: &FiniteModule, catalog: &SimpleCatalog) -> PropertyReport {
    let profile = composition_profile(m, catalog);
    let (top, _) = quotient_module(m, &radical(m));
    let top_mult = semisimple_multiplicities(&top, catalog);
    match profile.support().into_iter().find(|&j| top_mult[j] == 0) {
        None => PropertyReport::pass("co-kasch"),
        Some(j) => PropertyReport::fail("co-kasch", subfactor_witness(m, catalog, j)),
    }
}

/// Every simple subfactor of `M` embeds in `M`.
pub fn is_kasch(m: &FiniteModule, catalog: &SimpleCatalog) -> PropertyReport {
    let profile = composition_profile(m, catalog);
    let soc = socle(m).to_module().module;
    let soc_mult = semisimple_multiplicities(&soc, catalog);
    match profile.support().into_iter().find(|&j| soc_mult[j] == 0) {
        None => PropertyReport::pass("kasch"),
        Some(j) => PropertyReport::fail("kasch", subfactor_witness(m, catalog, j)),
    }
}

pub fn cartan_matrix(catalog: &SimpleCatalog) -> CartanMatrix {
    let entries = (0..catalog.len()).map(|i| composition_profile(&catalog.projective_cover(i), catalog).multiplicities).collect();
    CartanMatrix { entries }
}

/// `Ext¹(S, T)` as the cokernel of restriction `Hom(P, T) → Hom(Ω, T)`, where `P ↠ S`
/// is the projective cover and `Ω = Rad P`.
#[derive(Clone, Debug)]
pub struct Ext1 {
    pub source: usize,
    pub target: usize,
    pub size: u128,
    /// A map `Ω → T` outside the split image, when the group is nonzero.
    pub cocycle: Option<ModuleMap>,
    split_image: Subgroup,
}

impl Ext1 {
    pub fn is_zero(&self) -> bool {
        self.size == 1
    }

    /// Whether a map `Ω → T` restricts from `P`, i.e. represents the zero class.
    pub fn is_split(&self, cocycle: &ModuleMap) -> bool {
        self.split_image.contains(&cocycle.matrix().to_rows().concat())
    }
}

struct Presentation {
    projective: FiniteModule,
    syzygy: crate::module::SubmoduleEmbedding,
}

fn cover_presentation(catalog: &SimpleCatalog, s: usize) -> Presentation {
    let projective = catalog.projective_cover(s);
    let syzygy = radical(&projective).to_module();
    Presentation { projective, syzygy }
}

pub fn ext1(catalog: &SimpleCatalog, s: usize, t: usize) -> Result<Ext1, KaschError> {
    for i in [s, t] {
        if i >= catalog.len() {
            return Err(KaschError::UnknownSimple(i));
        }
    }
    let target = &catalog.simples[t];
    let pres = cover_presentation(catalog, s);
    let from_omega = hom_space(&pres.syzygy.module, target);
    let from_p = hom_space(&pres.projective, target);
    let restricted: Vec<Vec<i64>> = from_p.generators().iter().map(|f| pres.syzygy.inclusion.then(f).matrix().to_rows().concat()).collect();
    let split_image = Subgroup::generated(from_omega.as_subgroup().ambient_orders(), &restricted);
    debug_assert!(split_image.is_subgroup_of(from_omega.as_subgroup()));
    let size = from_omega.size() / split_image.order();
    let cocycle = from_omega.generators().into_iter().find(|f| !split_image.contains(&f.matrix().to_rows().concat()));
    Ok(Ext1 { source: s, target: t, size, cocycle, split_image })
}

/// The pushout `X = (T ⊕ P)/{(φ(w), −w) : w ∈ Ω}`, a non-split extension `0 → T → X → S → 0`.
pub fn construct_extension(catalog: &SimpleCatalog, s: usize, t: usize, cocycle: &ModuleMap) -> Result<FiniteModule, KaschError> {
    let ext = ext1(catalog, s, t)?;
    let pres = cover_presentation(catalog, s);
    let target = &catalog.simples[t];
    if cocycle.source() != &pres.syzygy.module || cocycle.target() != target {
        return Err(KaschError::WrongCocycleShape(s, t));
    }
    if ext.is_split(cocycle) {
        return Err(KaschError::SplitCocycle);
    }
    let sum = target.direct_sum(&pres.projective);
    let relations: Vec<Vec<i64>> = (0..pres.syzygy.module.rank())
        .map(|i| {
            let w = pres.syzygy.module.generator(i);
            let mut v = cocycle.apply(&w);
            v.extend(pres.syzygy.inclusion.apply(&w).iter().map(|&x| -x));
            v
        })
        .collect();
    let rel = Submodule::generated(&sum, &relations);
    Ok(quotient_module(&sum, &rel).0)
}

/// A right H-ring: `Ext¹(S_i, S_j) = 0` whenever `i ≠ j`.
pub fn is_h_ring(catalog: &SimpleCatalog) -> PropertyReport {
    for s in 0..catalog.len() {
        for t in 0..catalog.len() {
            if s == t {
                continue;
            }
            let ext = ext1(catalog, s, t).expect("indices come from the catalog");
            if let Some(phi) = &ext.cocycle {
                let x = construct_extension(catalog, s, t, phi).expect("cocycle is non-split by construction");
                return PropertyReport::fail(
                    "h-ring",
                    Witness::ExtClass { source: s, target: t, ext_size: ext.size, cocycle: phi.matrix().clone(), extension: x.table() },
                );
            }
        }
    }
    PropertyReport::pass("h-ring")
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectiveCoKasch {
    pub covers: Vec<PropertyReport>,
    pub cartan: CartanMatrix,
    pub all_co_kasch: bool,
    pub cartan_diagonal: bool,
}

impl ProjectiveCoKasch {
    /// All principal indecomposables co-Kasch ⟺ Cartan diagonal.
    pub fn equivalence_holds(&self) -> bool {
        self.all_co_kasch == self.cartan_diagonal
    }

    pub fn report(&self) -> PropertyReport {
        match self.covers.iter().enumerate().find(|(_, r)| !r.verdict) {
            None => PropertyReport::pass("projective-co-kasch"),
            Some((i, r)) => PropertyReport::fail(
                "projective-co-kasch",
                Witness::Projective { cover: i, inner: Box::new(r.witness.clone().expect("negative verdicts carry witnesses")) },
            ),
        }
    }
}

pub fn check_projective_cokasch(catalog: &SimpleCatalog) -> ProjectiveCoKasch {
    let covers: Vec<PropertyReport> = (0..catalog.len()).map(|i| is_co_kasch(&catalog.projective_cover(i), catalog)).collect();
    let cartan = cartan_matrix(catalog);
    let all_co_kasch = covers.iter().all(|r| r.verdict);
    let cartan_diagonal = cartan.is_diagonal();
    ProjectiveCoKasch { covers, cartan, all_co_kasch, cartan_diagonal }
}

/// Convenience: the catalog and Cartan matrix of a ring in one call.
pub fn cartan_of(ring: &Arc<FiniteRing>) -> (SimpleCatalog, CartanMatrix) {
    let catalog = simple_catalog(ring);
    let c = cartan_matrix(&catalog);
    (catalog, c)
}
