use std::collections::{BTreeSet, HashSet, VecDeque};

use cokasch::presentation::{quotient_presentation, smith_decompose, solve_congruence_system, IntMatrix};
use proptest::prelude::*;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-20i64..=20, c), r).prop_map(move |rows| IntMatrix::from_rows(&rows, c)))
}

/// All vectors of the box `0..orders[0] × 0..orders[1] × …`.
fn box_elements(orders: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &o in orders {
        out = out.into_iter().flat_map(|v| (0..o).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Subgroup generated by `gens`, by breadth-first closure under addition.
fn closure(orders: &[i64], gens: &[Vec<i64>]) -> HashSet<Vec<i64>> {
    let zero = vec![0; orders.len()];
    let mut seen = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<i64> = x.iter().zip(g).zip(orders).map(|((a, b), o)| (a + b).rem_euclid(*o)).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// A congruence system that is well defined on `⊕ ℤ/var_orders`.
#[derive(Debug, Clone)]
struct System {
    a: Vec<Vec<i64>>,
    moduli: Vec<i64>,
    b: Vec<i64>,
    var_orders: Vec<i64>,
}

fn system_strategy() -> impl Strategy<Value = System> {
    let orders = prop::sample::select(vec![2i64, 3, 4, 5, 6, 8]);
    let moduli = prop::sample::select(vec![2i64, 3, 4, 6, 8, 9, 12]);
    (prop::collection::vec(orders, 1..=3), prop::collection::vec(moduli, 0..=3))
        .prop_filter("ambient group of at most 256 elements", |(o, _)| o.iter().product::<i64>() <= 256)
        .prop_flat_map(|(var_orders, moduli)| {
            let cols = var_orders.len();
            let rows = moduli.len();
            let coeffs = prop::collection::vec(prop::collection::vec(0i64..12, cols), rows);
            let rhs = prop::collection::vec(0i64..12, rows);
            (Just(var_orders), Just(moduli), coeffs, rhs)
        })
        .prop_map(|(var_orders, moduli, coeffs, b)| {
            // a_rj must be a multiple of m_r / gcd(m_r, order_j) so that x_j is read mod order_j
            let a = coeffs.iter().zip(&moduli).map(|(row, &m)| row.iter().zip(&var_orders).map(|(&c, &o)| c * (m / gcd(m, o))).collect()).collect();
            System { a, moduli, b, var_orders }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn smith_is_an_equivalence_to_a_divisibility_chain(m in matrix_strategy()) {
        let s = smith_decompose(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        prop_assert!(matches!(s.u.determinant(), 1 | -1));
        prop_assert!(matches!(s.v.determinant(), 1 | -1));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[0] >= 0 && w[1] >= 0);
            if w[0] == 0 {
                prop_assert_eq!(w[1], 0);
            } else {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }
    }

    #[test]
    fn congruence_solver_matches_exhaustive_scan(sys in system_strategy()) {
        let cols = sys.var_orders.len();
        let a = IntMatrix::from_rows(&sys.a, cols);
        let expected: BTreeSet<Vec<i64>> = box_elements(&sys.var_orders)
            .into_iter()
            .filter(|x| {
                sys.a.iter().zip(&sys.moduli).zip(&sys.b).all(|((row, &m), &b)| {
                    (row.iter().zip(x).map(|(c, v)| c * v).sum::<i64>() - b).rem_euclid(m) == 0
                })
            })
            .collect();
        match solve_congruence_system(&a, &sys.moduli, &sys.b, &sys.var_orders) {
            None => prop_assert!(expected.is_empty()),
            Some(sol) => {
                let got: BTreeSet<Vec<i64>> = sol.enumerate().into_iter().collect();
                prop_assert_eq!(sol.count(), got.len() as u128);
                prop_assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn quotient_size_times_subgroup_size_is_ambient(
        orders in prop::collection::vec(prop::sample::select(vec![2i64, 3, 4, 6, 8, 9]), 1..=3),
        raw in prop::collection::vec(prop::collection::vec(0i64..72, 3), 0..=3),
    ) {
        prop_assume!(orders.iter().product::<i64>() <= 256);
        let gens: Vec<Vec<i64>> = raw.iter().map(|g| g.iter().zip(&orders).map(|(x, o)| x.rem_euclid(*o)).collect()).collect();
        let q = quotient_presentation(&orders, &gens);
        let sub = closure(&orders, &gens);
        prop_assert_eq!(q.size() * sub.len() as u128, orders.iter().product::<i64>() as u128);
        for g in &gens {
            prop_assert!(q.project(g).iter().all(|&c| c == 0));
        }
        // the projection separates cosets: equal images exactly when the difference lies in the subgroup
        let elems = box_elements(&orders);
        let images: HashSet<Vec<i64>> = elems.iter().map(|x| q.project(x)).collect();
        prop_assert_eq!(images.len() as u128, q.size());
    }
}

#[test]
fn fixed_examples() {
    let s = smith_decompose(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]], 2));
    assert_eq!(s.diagonal(), vec![2, 4]);
    assert_eq!(quotient_presentation(&[4], &[vec![2]]).orders, vec![2]);
    assert_eq!(quotient_presentation(&[2, 2], &[vec![1, 1]]).orders, vec![2]);
    let q = quotient_presentation(&[5], &[]);
    assert_eq!(q.orders, vec![5]);
    assert_eq!(q.project(&[3]).len(), 1);
    // the 2 cosets of ⟨(1,1)⟩ in (ℤ/2)², counted directly
    let sub = closure(&[2, 2], &[vec![1, 1]]);
    assert_eq!(4 / sub.len(), 2);
}
