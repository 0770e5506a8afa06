//! Finite right modules over a [`FiniteRing`].
//!
//! A module is an additive group `⊕ ℤ/e_i` with one action matrix per ring basis
//! element: `g_i · b_k = Σ_j (A_k)_{ij} g_j`. Elements are row vectors, so the
//! action of `b_k` is right multiplication by `A_k`.

mod catalog;
mod map;
mod submodule;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{quotient_presentation, IntMatrix};
use crate::ring::FiniteRing;

pub use catalog::{composition_profile, is_isomorphic, principal_module, semisimple_multiplicities, simple_catalog, CompositionProfile, SimpleCatalog};
pub use map::{hom_space, HomSpace, ModuleMap};
pub use submodule::{jacobson_radical, quotient_module, radical, socle, subfactor, Submodule, SubmoduleEmbedding};

/// Cap on `|M|` for any module.
pub const MODULE_SIZE_CAP: u128 = 4096;
/// Cap on `|M|` for operations that enumerate submodules.
pub const ENUMERATIVE_CAP: u128 = 256;

pub type ModuleElement = Vec<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("generator order {order} at index {index} must be at least 2")]
    BadOrder { index: usize, order: i64 },
    #[error("module of order {0} exceeds the cap of 4096")]
    TooLarge(u128),
    #[error("malformed action: {0}")]
    Shape(String),
    #[error("action of basis element {k} is not well defined at entry ({i}, {j})")]
    WellDefined { k: usize, i: usize, j: usize },
    #[error("action of basis element {k} is not killed by its additive order {order}")]
    RingOrder { k: usize, order: i64 },
    #[error("unity does not act as the identity")]
    Unital,
    #[error("action is not compatible with the product b_{i}·b_{j}")]
    Compatibility { i: usize, j: usize },
    #[error("modules over different rings")]
    RingMismatch,
}

/// Raw module description (orders plus one action matrix per ring basis element).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleTable {
    pub orders: Vec<i64>,
    pub actions: Vec<IntMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    orders: Vec<i64>,
    actions: Vec<IntMatrix>,
}

impl FiniteModule {
    /// Validates a module description against every axiom.
    pub fn validate(ring: &Arc<FiniteRing>, table: ModuleTable) -> Result<FiniteModule, ModuleError> {
        let ModuleTable { orders, mut actions } = table;
        let m = orders.len();
        for (index, &order) in orders.iter().enumerate() {
            if order < 2 {
                return Err(ModuleError::BadOrder { index, order });
            }
        }
        let size = orders.iter().try_fold(1u128, |acc, &o| acc.checked_mul(o as u128)).unwrap_or(u128::MAX);
        if size > MODULE_SIZE_CAP {
            return Err(ModuleError::TooLarge(size));
        }
        if actions.len() != ring.rank() {
            return Err(ModuleError::Shape(format!("expected {} action matrices, got {}", ring.rank(), actions.len())));
        }
        for (k, a) in actions.iter_mut().enumerate() {
            if m > 0 && (a.rows() != m || a.cols() != m) {
                return Err(ModuleError::Shape(format!("action {k} must be {m}×{m}")));
            }
            if m == 0 {
                *a = IntMatrix::zeros(0, 0);
            }
            for i in 0..m {
                for j in 0..m {
                    if (orders[i] * a[(i, j)]).rem_euclid(orders[j]) != 0 {
                        return Err(ModuleError::WellDefined { k, i, j });
                    }
                }
            }
            a.reduce_columns(&orders);
        }
        let module = FiniteModule { ring: ring.clone(), orders, actions };
        module.check_axioms()?;
        Ok(module)
    }

    fn check_axioms(&self) -> Result<(), ModuleError> {
        let ring = &self.ring;
        let identity = IntMatrix::identity(self.rank());
        for (k, a) in self.actions.iter().enumerate() {
            let order = ring.orders()[k];
            let mut scaled = a.clone();
            for i in 0..self.rank() {
                for j in 0..self.rank() {
                    scaled[(i, j)] *= order;
                }
            }
            scaled.reduce_columns(&self.orders);
            if !scaled.is_zero() {
                return Err(ModuleError::RingOrder { k, order });
            }
        }
        if self.action_matrix(ring.one()) != identity {
            return Err(ModuleError::Unital);
        }
        for i in 0..ring.rank() {
            for j in 0..ring.rank() {
                let lhs = self.actions[i].mul_mod(&self.actions[j], &self.orders);
                let rhs = self.action_matrix(ring.structure_constant(i, j));
                if lhs != rhs {
                    return Err(ModuleError::Compatibility { i, j });
                }
            }
        }
        Ok(())
    }

    /// Internal constructor for modules built from validated data.
    pub(crate) fn from_parts(ring: Arc<FiniteRing>, orders: Vec<i64>, mut actions: Vec<IntMatrix>) -> FiniteModule {
        for a in actions.iter_mut() {
            a.reduce_columns(&orders);
        }
        let module = FiniteModule { ring, orders, actions };
        debug_assert_eq!(module.check_axioms(), Ok(()));
        module
    }

    /// `R` as a right module over itself.
    pub fn regular(ring: &Arc<FiniteRing>) -> FiniteModule {
        let n = ring.rank();
        let actions = (0..n)
            .map(|k| {
                let rows: Vec<Vec<i64>> = (0..n).map(|i| ring.structure_constant(i, k).to_vec()).collect();
                IntMatrix::from_rows(&rows, n)
            })
            .collect();
        FiniteModule::from_parts(ring.clone(), ring.orders().to_vec(), actions)
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> FiniteModule {
        FiniteModule::from_parts(ring.clone(), vec![], vec![IntMatrix::zeros(0, 0); ring.rank()])
    }

    pub fn table(&self) -> ModuleTable {
        ModuleTable { orders: self.orders.clone(), actions: self.actions.clone() }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.actions
    }

    /// Number of additive generators.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }

    pub fn is_zero(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn zero_element(&self) -> ModuleElement {
        vec![0; self.rank()]
    }

    pub fn generator(&self, i: usize) -> ModuleElement {
        let mut e = self.zero_element();
        e[i] = 1;
        e
    }

    pub fn same_ring(&self, other: &FiniteModule) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    /// Matrix of the action of an arbitrary ring element.
    pub fn action_matrix(&self, r: &[i64]) -> IntMatrix {
        let m = self.rank();
        let mut out = IntMatrix::zeros(m, m);
        for (k, &c) in r.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for i in 0..m {
                for j in 0..m {
                    out[(i, j)] += c * self.actions[k][(i, j)];
                }
            }
        }
        out.reduce_columns(&self.orders);
        out
    }

    pub fn act_basis(&self, x: &[i64], k: usize) -> ModuleElement {
        self.actions[k].apply_row(x, &self.orders)
    }

    /// `x · r`.
    pub fn act(&self, x: &[i64], r: &[i64]) -> ModuleElement {
        let mut out = self.zero_element();
        for (k, &c) in r.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let y = self.act_basis(x, k);
            for ((o, &v), &e) in out.iter_mut().zip(&y).zip(&self.orders) {
                *o = (*o + c * v).rem_euclid(e);
            }
        }
        out
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> ModuleElement {
        x.iter().zip(y).zip(&self.orders).map(|((&a, &b), &o)| (a + b).rem_euclid(o)).collect()
    }

    pub fn element_at(&self, mut index: u128) -> ModuleElement {
        self.orders
            .iter()
            .map(|&o| {
                let c = (index % o as u128) as i64;
                index /= o as u128;
                c
            })
            .collect()
    }

    /// All elements, coordinate 0 varying fastest.
    pub fn elements(&self) -> impl Iterator<Item = ModuleElement> + '_ {
        (0..self.size()).map(|i| self.element_at(i))
    }

    /// Canonical invariant factors of the additive group.
    pub fn invariant_factors(&self) -> Vec<i64> {
        quotient_presentation(&self.orders, &[]).orders
    }

    /// `M ⊕ N` with block-diagonal action.
    pub fn direct_sum(&self, other: &FiniteModule) -> FiniteModule {
        assert!(self.same_ring(other), "direct sum of modules over different rings");
        let (m, n) = (self.rank(), other.rank());
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| {
                let mut out = IntMatrix::zeros(m + n, m + n);
                for i in 0..m {
                    for j in 0..m {
                        out[(i, j)] = a[(i, j)];
                    }
                }
                for i in 0..n {
                    for j in 0..n {
                        out[(m + i, m + j)] = b[(i, j)];
                    }
                }
                out
            })
            .collect();
        FiniteModule::from_parts(self.ring.clone(), orders, actions)
    }

    /// Canonical re-presentation: same module in invariant-factor coordinates.
    pub fn canonical(&self) -> FiniteModule {
        quotient_module(self, &Submodule::zero(self)).0
    }
}
