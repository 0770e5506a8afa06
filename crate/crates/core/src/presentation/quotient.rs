use super::arith::lcm_all;
use super::matrix::IntMatrix;
use super::smith::Elimination;

/// A finitely presented abelian group: generators modulo the rows of a relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianPresentation {
    pub generator_count: usize,
    pub relation_matrix: IntMatrix,
}

impl AbelianPresentation {
    pub fn new(generator_count: usize, relations: Vec<Vec<i64>>) -> Self {
        AbelianPresentation { generator_count, relation_matrix: IntMatrix::from_rows(&relations, generator_count) }
    }

    /// Invariant factors `d_1 | d_2 | ...` of the group, with order-1 factors pruned
    /// and free factors reported as 0.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let sf = super::smith::smith_decompose(&self.relation_matrix);
        let mut diag = sf.diagonal();
        diag.resize(self.generator_count, 0);
        diag.into_iter().filter(|&d| d != 1).collect()
    }
}

/// `(⊕ ℤ/ambient) / ⟨subgroup⟩` in canonical cyclic coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPresentation {
    /// Cyclic orders `d_1 | d_2 | ...`, all ≥ 2.
    pub orders: Vec<i64>,
    /// Row `i`: the image of ambient generator `i` in the new coordinates.
    pub projection: IntMatrix,
    /// Row `t`: an ambient element lifting new generator `t`.
    pub lift: IntMatrix,
}

impl QuotientPresentation {
    pub fn project(&self, v: &[i64]) -> Vec<i64> {
        self.projection.apply_row(v, &self.orders)
    }

    pub fn size(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }
}

/// Cyclic decomposition of a quotient of `⊕ ℤ/ambient_orders`.
///
/// The ambient moduli are appended to the sub-generators as extra relation rows
/// and the whole relation matrix is reduced over ℤ/L, `L = lcm(ambient_orders)`.
pub fn quotient_presentation(ambient_orders: &[i64], sub_generators: &[Vec<i64>]) -> QuotientPresentation {
    let n = ambient_orders.len();
    assert!(ambient_orders.iter().all(|&o| o >= 1), "ambient orders must be positive");
    let l = lcm_all(ambient_orders.iter().copied());
    let mut relations: Vec<Vec<i64>> = sub_generators
        .iter()
        .map(|g| {
            assert_eq!(g.len(), n, "sub-generator length mismatch");
            g.iter().zip(ambient_orders).map(|(&x, &o)| x.rem_euclid(o)).collect()
        })
        .collect();
    for (i, &o) in ambient_orders.iter().enumerate() {
        let mut row = vec![0; n];
        row[i] = o;
        relations.push(row);
    }
    let rel = IntMatrix::from_rows(&relations, n);
    let mut elim = Elimination::new(&rel, Some(l), false, true);
    elim.run(true);
    let v = elim.v_matrix();
    let vinv = elim.vinv_matrix();

    let kept: Vec<usize> = (0..n).filter(|&t| elim.cyclic_order(t) > 1).collect();
    let orders: Vec<i64> = kept.iter().map(|&t| elim.cyclic_order(t)).collect();
    let mut projection = IntMatrix::zeros(n, kept.len());
    for i in 0..n {
        for (c, &t) in kept.iter().enumerate() {
            projection[(i, c)] = v[(i, t)].rem_euclid(orders[c]);
        }
    }
    let mut lift = IntMatrix::zeros(kept.len(), n);
    for (r, &t) in kept.iter().enumerate() {
        for j in 0..n {
            lift[(r, j)] = vinv[(t, j)].rem_euclid(ambient_orders[j]);
        }
    }
    QuotientPresentation { orders, projection, lift }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn cyclic_quotients() {
        let q = quotient_presentation(&[4], &[vec![2]]);
        assert_eq!(q.orders, vec![2]);
        let q = quotient_presentation(&[2, 2], &[vec![1, 1]]);
        assert_eq!(q.orders, vec![2]);
        let q = quotient_presentation(&[6], &[]);
        assert_eq!(q.orders, vec![6]);
        assert_eq!(super::super::arith::gcd(q.project(&[1])[0], 6), 1);
    }

    #[test]
    fn projection_kills_subgroup_and_lift_splits() {
        let amb = [4, 6, 2];
        let subs = vec![vec![2, 3, 1], vec![0, 2, 0]];
        let q = quotient_presentation(&amb, &subs);
        for s in &subs {
            assert!(q.project(s).iter().all(|&x| x == 0));
        }
        for t in 0..q.orders.len() {
            let img = q.project(q.lift.row(t));
            let mut e = vec![0; q.orders.len()];
            e[t] = 1;
            assert_eq!(img, e);
        }
        // surjective: images of ambient elements cover the quotient
        let mut seen = HashSet::new();
        for a in 0..4 {
            for b in 0..6 {
                for c in 0..2 {
                    seen.insert(q.project(&[a, b, c]));
                }
            }
        }
        assert_eq!(seen.len() as u128, q.size());
    }

    #[test]
    fn free_factor_reported() {
        let p = AbelianPresentation::new(2, vec![vec![2, 0]]);
        assert_eq!(p.invariant_factors(), vec![2, 0]);
    }
}
