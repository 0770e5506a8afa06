//! Finite unital rings given by structure constants.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{solve_congruence_system, IntMatrix, Subgroup};

/// Hard cap on `|R|`.
pub const RING_SIZE_CAP: u128 = 4096;

/// Coefficient vector over the additive basis, reduced mod the basis orders.
pub type RingElement = Vec<i64>;

/// Unvalidated structure-constant table, as read from a workspace file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingTable {
    pub orders: Vec<i64>,
    /// `mul[i][j]` holds the coordinates of `b_i · b_j`.
    pub mul: Vec<Vec<Vec<i64>>>,
    pub one: Vec<i64>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("ring has no additive generators (the trivial ring is not allowed)")]
    Trivial,
    #[error("basis order {order} at index {index} must be at least 2")]
    BadOrder { index: usize, order: i64 },
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("ring of order {0} exceeds the cap of 4096")]
    TooLarge(u128),
    #[error("well-definedness fails at (i, j, k) = ({i}, {j}, {k}): orders do not kill the structure constant")]
    WellDefined { i: usize, j: usize, k: usize },
    #[error("associativity fails at basis triple ({i}, {j}, {k})")]
    Associativity { i: usize, j: usize, k: usize },
    #[error("unity axiom fails at basis element {i}")]
    Unity { i: usize },
}

/// A validated finite ring. Immutable; lazily cached radical data is thread-safe.
#[derive(Debug, Serialize)]
pub struct FiniteRing {
    orders: Vec<i64>,
    mul: Vec<Vec<Vec<i64>>>,
    one: Vec<i64>,
    #[serde(skip)]
    radical: OnceLock<Subgroup>,
    #[serde(skip)]
    decomposition: OnceLock<IdempotentDecomposition>,
}

impl Clone for FiniteRing {
    fn clone(&self) -> Self {
        FiniteRing { orders: self.orders.clone(), mul: self.mul.clone(), one: self.one.clone(), radical: OnceLock::new(), decomposition: OnceLock::new() }
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders && self.mul == other.mul && self.one == other.one
    }
}

impl Eq for FiniteRing {}

/// Orthogonal primitive idempotents summing to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentDecomposition {
    pub idempotents: Vec<RingElement>,
}

fn reduce_vec(v: &mut [i64], orders: &[i64]) {
    for (x, &o) in v.iter_mut().zip(orders) {
        *x = x.rem_euclid(o);
    }
}

impl FiniteRing {
    /// Checks every ring axiom on basis elements and seals the table.
    pub fn validate(table: RingTable) -> Result<Arc<FiniteRing>, RingError> {
        let RingTable { orders, mut mul, mut one } = table;
        let n = orders.len();
        if n == 0 {
            return Err(RingError::Trivial);
        }
        for (index, &order) in orders.iter().enumerate() {
            if order < 2 {
                return Err(RingError::BadOrder { index, order });
            }
        }
        let size = orders.iter().try_fold(1u128, |acc, &o| acc.checked_mul(o as u128)).unwrap_or(u128::MAX);
        if size > RING_SIZE_CAP {
            return Err(RingError::TooLarge(size));
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n || row.iter().any(|c| c.len() != n)) {
            return Err(RingError::Shape(format!("multiplication table must be {n}×{n}×{n}")));
        }
        if one.len() != n {
            return Err(RingError::Shape(format!("unity must have {n} coordinates")));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = mul[i][j][k];
                    if (orders[i] * c).rem_euclid(orders[k]) != 0 || (orders[j] * c).rem_euclid(orders[k]) != 0 {
                        return Err(RingError::WellDefined { i, j, k });
                    }
                }
                reduce_vec(&mut mul[i][j], &orders);
            }
        }
        reduce_vec(&mut one, &orders);
        let ring = FiniteRing { orders, mul, one, radical: OnceLock::new(), decomposition: OnceLock::new() };
        let basis: Vec<RingElement> = (0..n).map(|i| ring.basis_element(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let ij = ring.mul(&basis[i], &basis[j]);
                for k in 0..n {
                    let jk = ring.mul(&basis[j], &basis[k]);
                    if ring.mul(&ij, &basis[k]) != ring.mul(&basis[i], &jk) {
                        return Err(RingError::Associativity { i, j, k });
                    }
                }
            }
        }
        for (i, b) in basis.iter().enumerate() {
            if &ring.mul(&ring.one, b) != b || &ring.mul(b, &ring.one) != b {
                return Err(RingError::Unity { i });
            }
        }
        Ok(Arc::new(ring))
    }

    pub fn table(&self) -> RingTable {
        RingTable { orders: self.orders.clone(), mul: self.mul.clone(), one: self.one.clone() }
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product::<i64>() as usize
    }

    pub fn one(&self) -> &RingElement {
        &self.one
    }

    pub fn zero(&self) -> RingElement {
        vec![0; self.rank()]
    }

    pub fn basis_element(&self, i: usize) -> RingElement {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    /// Structure constants `c[i][j]`.
    pub fn structure_constant(&self, i: usize, j: usize) -> &[i64] {
        &self.mul[i][j]
    }

    pub fn mul(&self, x: &[i64], y: &[i64]) -> RingElement {
        let mut out = self.zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let s = xi * yj;
                for (o, &c) in out.iter_mut().zip(&self.mul[i][j]) {
                    *o += s * c;
                }
            }
        }
        reduce_vec(&mut out, &self.orders);
        out
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> RingElement {
        let mut out: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        reduce_vec(&mut out, &self.orders);
        out
    }

    pub fn sub(&self, x: &[i64], y: &[i64]) -> RingElement {
        let mut out: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        reduce_vec(&mut out, &self.orders);
        out
    }

    pub fn reduce(&self, x: &[i64]) -> RingElement {
        let mut v = x.to_vec();
        reduce_vec(&mut v, &self.orders);
        v
    }

    /// Element with the given index; coordinate 0 varies fastest.
    pub fn element_at(&self, mut index: usize) -> RingElement {
        self.orders
            .iter()
            .map(|&o| {
                let c = (index % o as usize) as i64;
                index /= o as usize;
                c
            })
            .collect()
    }

    pub fn index_of(&self, x: &[i64]) -> usize {
        x.iter().zip(&self.orders).rev().fold(0usize, |acc, (&c, &o)| acc * o as usize + c.rem_euclid(o) as usize)
    }

    /// All elements in deterministic order.
    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.size()).map(|i| self.element_at(i))
    }

    /// Matrix of `y ↦ x·y` on the additive basis (row `j` = `x·b_j`).
    fn left_multiplication(&self, x: &[i64]) -> IntMatrix {
        let rows: Vec<Vec<i64>> = (0..self.rank()).map(|j| self.mul(x, &self.basis_element(j))).collect();
        IntMatrix::from_rows(&rows, self.rank())
    }

    /// Two-sided inverse, if `x` is a unit.
    pub fn inverse(&self, x: &[i64]) -> Option<RingElement> {
        // x·y = 1 is linear in y; constraint k reads Σ_j y_j (x·b_j)_k ≡ 1_k (mod d_k).
        let a = self.left_multiplication(x).transpose();
        let sol = solve_congruence_system(&a, &self.orders, &self.one, &self.orders)?;
        let y = sol.particular.clone();
        if self.mul(&y, x) == self.one {
            return Some(y);
        }
        sol.enumerate().into_iter().find(|y| self.mul(y, x) == self.one && self.mul(x, y) == self.one)
    }

    pub fn is_unit(&self, x: &[i64]) -> bool {
        self.inverse(x).is_some()
    }

    fn compute_radical(&self) -> Subgroup {
        let size = self.size();
        let mut unit = vec![false; size];
        for (i, x) in self.elements().enumerate() {
            unit[i] = self.is_unit(&x);
        }
        let elements: Vec<RingElement> = self.elements().collect();
        let members: Vec<RingElement> = elements
            .iter()
            .filter(|x| {
                let lm = self.left_multiplication(x);
                elements.iter().all(|y| {
                    let xy = lm.apply_row(y, &self.orders);
                    unit[self.index_of(&self.sub(&self.one, &xy))]
                })
            })
            .cloned()
            .collect();
        let j = Subgroup::generated(&self.orders, &members);
        debug_assert_eq!(j.order(), members.len() as u128, "quasi-regular set is not an additive group");
        debug_assert!(members.iter().all(|x| elements.iter().all(|r| j.contains(&self.mul(x, r)) && j.contains(&self.mul(r, x)))));
        j
    }

    /// The Jacobson radical as an additive subgroup, by the quasi-regularity test:
    /// `x ∈ J` iff `1 − x·y` is a unit for every `y`.
    pub fn radical_ideal(&self) -> &Subgroup {
        self.radical.get_or_init(|| self.compute_radical())
    }

    pub fn enumerate_idempotents(&self) -> Vec<RingElement> {
        self.elements().filter(|e| &self.mul(e, e) == e).collect()
    }

    /// `e ≠ 0` idempotent whose corner `eRe` holds no idempotents besides 0 and `e`.
    pub fn is_primitive(&self, e: &[i64]) -> bool {
        if e.iter().all(|&x| x == 0) || self.mul(e, e) != e {
            return false;
        }
        let zero = self.zero();
        self.elements().all(|x| {
            let f = self.mul(&self.mul(e, &x), e);
            f == zero || f == e || self.mul(&f, &f) != f
        })
    }

    fn compute_decomposition(&self) -> IdempotentDecomposition {
        let primitive: Vec<RingElement> = self.enumerate_idempotents().into_iter().filter(|e| self.is_primitive(e)).collect();
        let zero = self.zero();
        let orthogonal = |a: &RingElement, b: &RingElement| self.mul(a, b) == zero && self.mul(b, a) == zero;

        fn search(
            ring: &FiniteRing,
            primitive: &[RingElement],
            start: usize,
            chosen: &mut Vec<usize>,
            sum: &RingElement,
            orthogonal: &dyn Fn(&RingElement, &RingElement) -> bool,
        ) -> bool {
            if sum == ring.one() {
                return true;
            }
            for k in start..primitive.len() {
                if chosen.iter().all(|&c| orthogonal(&primitive[c], &primitive[k])) {
                    chosen.push(k);
                    let next = ring.add(sum, &primitive[k]);
                    if search(ring, primitive, k + 1, chosen, &next, orthogonal) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }

        let mut chosen = Vec::new();
        let found = search(self, &primitive, 0, &mut chosen, &zero, &orthogonal);
        assert!(found, "finite unital ring without a complete primitive idempotent system");
        IdempotentDecomposition { idempotents: chosen.into_iter().map(|k| primitive[k].clone()).collect() }
    }

    /// First complete orthogonal system of primitive idempotents in element order.
    pub fn primitive_decomposition(&self) -> &IdempotentDecomposition {
        self.decomposition.get_or_init(|| self.compute_decomposition())
    }
}
