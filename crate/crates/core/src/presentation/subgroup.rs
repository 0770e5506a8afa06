//! Subgroups of `⊕ ℤ/e_i` in Howell normal form.
//!
//! The ambient group embeds into `(ℤ/L)^m`, `L = lcm(e)`, by scaling coordinate
//! `i` by `L/e_i`. Subgroups are then ℤ/L-submodules, and the Howell form of a
//! generating set is unique: pivots divide `L`, entries above a pivot lie in
//! `0..pivot`, and `(L/p)·row` is spanned by the rows below it. Equality of
//! subgroups is therefore equality of Howell rows.

use std::hash::{Hash, Hasher};

use super::arith::{element_order, ext_gcd, lcm_all, unit_normalizer};
use super::congruence::solve_congruence_system;
use super::matrix::IntMatrix;
use super::quotient::{quotient_presentation, QuotientPresentation};

#[derive(Clone, Debug)]
pub struct Subgroup {
    orders: Vec<i64>,
    modulus: i64,
    /// Howell rows in embedded `(ℤ/L)^m` coordinates.
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders && self.rows == other.rows
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.orders.hash(state);
        self.rows.hash(state);
    }
}

fn howell(mut a: Vec<Vec<i64>>, l: i64, m: usize) -> (Vec<Vec<i64>>, Vec<usize>) {
    let l128 = i128::from(l);
    let reduce = |row: &mut Vec<i64>| {
        for x in row.iter_mut() {
            *x = x.rem_euclid(l);
        }
    };
    a.retain(|r| r.iter().any(|&x| x.rem_euclid(l) != 0));
    for r in a.iter_mut() {
        reduce(r);
    }
    let mut pivots = Vec::new();
    let mut k = 0;
    for j in 0..m {
        let Some(i0) = (k..a.len()).find(|&i| a[i][j] != 0) else {
            continue;
        };
        a.swap(k, i0);
        for i in k + 1..a.len() {
            if a[i][j] == 0 {
                continue;
            }
            let (x, y) = (i128::from(a[k][j]), i128::from(a[i][j]));
            let (g, s, t) = ext_gcd(x, y);
            let (u, v) = (-y / g, x / g);
            let (rk, ri) = (a[k].clone(), a[i].clone());
            for c in 0..m {
                let (p, q) = (i128::from(rk[c]), i128::from(ri[c]));
                a[k][c] = (s * p + t * q).rem_euclid(l128) as i64;
                a[i][c] = (u * p + v * q).rem_euclid(l128) as i64;
            }
        }
        let (unit, _) = unit_normalizer(i128::from(a[k][j]), l128);
        if unit != 1 {
            for x in a[k].iter_mut() {
                *x = (i128::from(*x) * unit).rem_euclid(l128) as i64;
            }
        }
        let p = a[k][j];
        for i in 0..k {
            let q = a[i][j] / p;
            if q != 0 {
                let pivot_row = a[k].clone();
                for (x, &y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = (*x - q * y).rem_euclid(l);
                }
            }
        }
        let mult = l / p;
        let extra: Vec<i64> = a[k].iter().map(|&x| (x * mult).rem_euclid(l)).collect();
        if extra.iter().any(|&x| x != 0) {
            a.push(extra);
        }
        pivots.push(j);
        k += 1;
    }
    a.truncate(k);
    (a, pivots)
}

impl Subgroup {
    /// The subgroup of `⊕ ℤ/orders` generated by `gens`.
    pub fn generated(orders: &[i64], gens: &[Vec<i64>]) -> Self {
        assert!(orders.iter().all(|&o| o >= 1), "orders must be positive");
        let l = lcm_all(orders.iter().copied());
        let scale: Vec<i64> = orders.iter().map(|&o| l / o).collect();
        let embedded: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| {
                assert_eq!(g.len(), orders.len(), "generator length mismatch");
                g.iter().zip(&scale).map(|(&x, &s)| (x * s).rem_euclid(l)).collect()
            })
            .collect();
        let (rows, pivots) = howell(embedded, l, orders.len());
        Subgroup { orders: orders.to_vec(), modulus: l, rows, pivots }
    }

    pub fn trivial(orders: &[i64]) -> Self {
        Self::generated(orders, &[])
    }

    pub fn whole(orders: &[i64]) -> Self {
        let gens: Vec<Vec<i64>> = (0..orders.len())
            .map(|i| {
                let mut e = vec![0; orders.len()];
                e[i] = 1;
                e
            })
            .collect();
        Self::generated(orders, &gens)
    }

    pub fn ambient_orders(&self) -> &[i64] {
        &self.orders
    }

    fn embed(&self, v: &[i64]) -> Vec<i64> {
        v.iter().zip(&self.orders).map(|(&x, &o)| (x.rem_euclid(o) * (self.modulus / o)).rem_euclid(self.modulus)).collect()
    }

    fn unembed(&self, v: &[i64]) -> Vec<i64> {
        v.iter().zip(&self.orders).map(|(&x, &o)| x / (self.modulus / o)).collect()
    }

    /// Coefficients `c` with `v = Σ c_r · basis()[r]`, or `None` when `v ∉ H`.
    pub fn coefficients(&self, v: &[i64]) -> Option<Vec<i64>> {
        let mut w = self.embed(v);
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let p = row[c];
            if w[c] % p != 0 {
                return None;
            }
            let q = w[c] / p;
            if q != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = (*x - q * y).rem_euclid(self.modulus);
                }
            }
            coeffs.push(q);
        }
        w.iter().all(|&x| x == 0).then_some(coeffs)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coefficients(v).is_some()
    }

    /// The Howell rows in ambient coordinates (a canonical generating set).
    pub fn basis(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(|r| self.unembed(r)).collect()
    }

    /// Range of the `r`-th coefficient in the unique normal-form expansion.
    fn coefficient_ranges(&self) -> Vec<i64> {
        self.rows.iter().zip(&self.pivots).map(|(r, &c)| self.modulus / r[c]).collect()
    }

    pub fn order(&self) -> u128 {
        self.coefficient_ranges().iter().try_fold(1u128, |acc, &r| acc.checked_mul(r as u128)).expect("subgroup order overflows u128")
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.orders, other.orders, "join of subgroups of different groups");
        let mut gens = self.basis();
        gens.extend(other.basis());
        Subgroup::generated(&self.orders, &gens)
    }

    /// All elements, each listed once.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let ranges = self.coefficient_ranges();
        let basis = self.basis();
        let mut out = Vec::new();
        let mut coeff = vec![0i64; ranges.len()];
        loop {
            let mut v = vec![0i64; self.orders.len()];
            for (b, &c) in basis.iter().zip(&coeff) {
                for ((x, &y), &o) in v.iter_mut().zip(b).zip(&self.orders) {
                    *x = (*x + c * y).rem_euclid(o);
                }
            }
            out.push(v);
            let mut i = 0;
            loop {
                if i == coeff.len() {
                    return out;
                }
                coeff[i] += 1;
                if coeff[i] < ranges[i] {
                    break;
                }
                coeff[i] = 0;
                i += 1;
            }
        }
    }

    /// Present this subgroup as `⊕ ℤ/d_t` with explicit generators.
    pub fn presentation(&self) -> SubgroupPresentation {
        let basis = self.basis();
        let basis_orders: Vec<i64> = basis.iter().map(|b| element_order(b, &self.orders)).collect();
        let mut columns = IntMatrix::zeros(self.orders.len(), basis.len());
        for (r, b) in basis.iter().enumerate() {
            for (i, &x) in b.iter().enumerate() {
                columns[(i, r)] = x;
            }
        }
        let zero = vec![0; self.orders.len()];
        let relations = solve_congruence_system(&columns, &self.orders, &zero, &basis_orders).expect("homogeneous system is always consistent").homogeneous;
        let quotient = quotient_presentation(&basis_orders, &relations);
        let generators = (0..quotient.orders.len())
            .map(|t| {
                let mut v = vec![0i64; self.orders.len()];
                for (r, b) in basis.iter().enumerate() {
                    let c = quotient.lift[(t, r)];
                    for ((x, &y), &o) in v.iter_mut().zip(b).zip(&self.orders) {
                        *x = (*x + c * y).rem_euclid(o);
                    }
                }
                v
            })
            .collect();
        SubgroupPresentation { subgroup: self.clone(), quotient, basis_orders, generators }
    }
}

/// A subgroup `H ⊆ G` written as `⊕ ℤ/orders` with generators in `G`.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    subgroup: Subgroup,
    quotient: QuotientPresentation,
    basis_orders: Vec<i64>,
    /// Generator `t` as an element of the ambient group.
    pub generators: Vec<Vec<i64>>,
}

impl SubgroupPresentation {
    pub fn orders(&self) -> &[i64] {
        &self.quotient.orders
    }

    /// Coordinates of `v ∈ H` in the cyclic presentation.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let c = self.subgroup.coefficients(v)?;
        let c: Vec<i64> = c.iter().zip(&self.basis_orders).map(|(&x, &o)| x.rem_euclid(o)).collect();
        Some(self.quotient.project(&c))
    }
}
