//! Hand-written fixture rings.

use std::sync::Arc;

use crate::ring::{FiniteRing, RingTable};

fn build(table: RingTable) -> Arc<FiniteRing> {
    FiniteRing::validate(table).expect("fixture ring must validate")
}

/// The prime field F₂.
pub fn f2() -> Arc<FiniteRing> {
    z_mod(2)
}

/// ℤ/n with the single generator 1.
pub fn z_mod(n: i64) -> Arc<FiniteRing> {
    build(z_mod_table(n))
}

pub fn z_mod_table(n: i64) -> RingTable {
    RingTable { orders: vec![n], mul: vec![vec![vec![1]]], one: vec![1] }
}

/// F₂[x]/(x²), the dual numbers over F₂ (fixture name `F2dual`), basis (1, x).
pub fn f2_dual() -> Arc<FiniteRing> {
    build(RingTable { orders: vec![2, 2], mul: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]], one: vec![1, 0] })
}

/// Upper-triangular 2×2 matrices over F₂, basis (e₁₁, e₁₂, e₂₂).
pub fn t2_f2() -> Arc<FiniteRing> {
    build(t2_f2_table())
}

pub fn t2_f2_table() -> RingTable {
    let z = vec![0, 0, 0];
    let (e11, e12, e22) = (vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]);
    RingTable {
        orders: vec![2, 2, 2],
        mul: vec![vec![e11.clone(), e12.clone(), z.clone()], vec![z.clone(), z.clone(), e12.clone()], vec![z.clone(), z, e22.clone()]],
        one: vec![1, 0, 1],
    }
}

/// F₂ × F₂, basis ((1,0), (0,1)).
pub fn f2_times_f2() -> Arc<FiniteRing> {
    build(product_table(&z_mod_table(2), &z_mod_table(2)))
}

/// Structure constants of the direct product `R × S`.
pub fn product_table(r: &RingTable, s: &RingTable) -> RingTable {
    let (n, m) = (r.orders.len(), s.orders.len());
    let mut orders = r.orders.clone();
    orders.extend(&s.orders);
    let mut mul = vec![vec![vec![0; n + m]; n + m]; n + m];
    for (i, row) in r.mul.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            mul[i][j][..n].copy_from_slice(c);
        }
    }
    for (i, row) in s.mul.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            mul[n + i][n + j][n..].copy_from_slice(c);
        }
    }
    let mut one = r.one.clone();
    one.extend(&s.one);
    RingTable { orders, mul, one }
}

/// The named fixture rings, in a fixed order.
pub fn rings() -> Vec<(&'static str, Arc<FiniteRing>)> {
    vec![("F2", f2()), ("Z4", z_mod(4)), ("F2dual", f2_dual()), ("T2F2", t2_f2()), ("F2xF2", f2_times_f2())]
}
