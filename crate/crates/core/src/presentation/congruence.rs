use super::arith::lcm_all;
use super::matrix::IntMatrix;
use super::smith::Elimination;
use super::subgroup::Subgroup;

/// Solutions of `A·x ≡ b` with `x` ranging over `⊕ ℤ/var_orders`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceSolution {
    pub var_orders: Vec<i64>,
    pub particular: Vec<i64>,
    /// Generators of the homogeneous solution group (zero vectors dropped).
    pub homogeneous: Vec<Vec<i64>>,
}

impl CongruenceSolution {
    pub fn homogeneous_group(&self) -> Subgroup {
        Subgroup::generated(&self.var_orders, &self.homogeneous)
    }

    pub fn count(&self) -> u128 {
        self.homogeneous_group().order()
    }

    /// Every solution, each once.
    pub fn enumerate(&self) -> Vec<Vec<i64>> {
        self.homogeneous_group()
            .elements()
            .into_iter()
            .map(|h| h.iter().zip(&self.particular).zip(&self.var_orders).map(|((&a, &b), &o)| (a + b).rem_euclid(o)).collect())
            .collect()
    }
}

/// Solves `Σ_j A[r][j]·x_j ≡ b[r] (mod moduli[r])` for `x ∈ ⊕ ℤ/var_orders`.
///
/// Returns `None` when the system is inconsistent. The solution set is the image
/// in `⊕ ℤ/var_orders` of all integer solutions.
pub fn solve_congruence_system(a: &IntMatrix, moduli: &[i64], b: &[i64], var_orders: &[i64]) -> Option<CongruenceSolution> {
    let (rows, cols) = (a.rows(), a.cols());
    assert_eq!(moduli.len(), rows, "one modulus per constraint row");
    assert_eq!(b.len(), rows, "one right-hand side per constraint row");
    assert_eq!(var_orders.len(), cols, "one order per variable");
    assert!(moduli.iter().chain(var_orders).all(|&m| m >= 1), "moduli must be positive");

    // Lift every row to a congruence mod L by scaling with L / m_r.
    let l = lcm_all(moduli.iter().chain(var_orders).copied());
    let mut scaled = IntMatrix::zeros(rows, cols);
    let mut rhs = vec![0i128; rows];
    for r in 0..rows {
        let s = l / moduli[r];
        for j in 0..cols {
            scaled[(r, j)] = (a[(r, j)].rem_euclid(moduli[r]) * s).rem_euclid(l);
        }
        rhs[r] = i128::from((b[r].rem_euclid(moduli[r]) * s).rem_euclid(l));
    }

    let mut elim = Elimination::new(&scaled, Some(l), true, true);
    elim.run(false);
    let u = elim.u_matrix();
    let v = elim.v_matrix();
    let l128 = i128::from(l);
    let c: Vec<i128> = (0..rows).map(|r| (0..rows).fold(0i128, |acc, k| (acc + i128::from(u[(r, k)]) * rhs[k]).rem_euclid(l128))).collect();

    let rank_span = rows.min(cols);
    let mut w = vec![0i128; cols];
    let mut homogeneous_w: Vec<(usize, i128)> = Vec::new();
    for t in 0..cols {
        let d = if t < rank_span { elim.diagonal_entry(t) } else { 0 };
        let ct = if t < rows { c[t] } else { 0 };
        if d == 0 {
            if ct != 0 {
                return None;
            }
            homogeneous_w.push((t, 1));
        } else {
            if ct % d != 0 {
                return None;
            }
            w[t] = ct / d;
            homogeneous_w.push((t, l128 / d));
        }
    }
    if c.iter().skip(cols).any(|&x| x != 0) {
        return None;
    }

    let reduce = |vec: Vec<i128>| -> Vec<i64> { vec.iter().zip(var_orders).map(|(&x, &o)| i64::try_from(x.rem_euclid(i128::from(o))).unwrap()).collect() };
    let column_times = |t: usize, k: i128| -> Vec<i128> { (0..cols).map(|j| i128::from(v[(j, t)]) * k).collect() };

    let mut particular = vec![0i128; cols];
    for (t, &wt) in w.iter().enumerate() {
        if wt != 0 {
            for (p, x) in particular.iter_mut().zip(column_times(t, wt)) {
                *p = (*p + x).rem_euclid(l128);
            }
        }
    }
    let homogeneous = homogeneous_w.into_iter().map(|(t, k)| reduce(column_times(t, k))).filter(|g| g.iter().any(|&x| x != 0)).collect();
    Some(CongruenceSolution { var_orders: var_orders.to_vec(), particular: reduce(particular), homogeneous })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_x_zero_mod_four() {
        let a = IntMatrix::from(vec![vec![2]]);
        let s = solve_congruence_system(&a, &[4], &[0], &[4]).unwrap();
        let mut sols = s.enumerate();
        sols.sort();
        assert_eq!(sols, vec![vec![0], vec![2]]);
        assert_eq!(s.homogeneous_group().basis(), vec![vec![2]]);
    }

    #[test]
    fn parity_obstruction() {
        let a = IntMatrix::from(vec![vec![2]]);
        assert!(solve_congruence_system(&a, &[4], &[1], &[4]).is_none());
    }

    #[test]
    fn empty_system_is_everything() {
        let a = IntMatrix::zeros(0, 2);
        let s = solve_congruence_system(&a, &[], &[], &[3, 4]).unwrap();
        assert_eq!(s.count(), 12);
    }

    #[test]
    fn mixed_moduli_against_scan() {
        let a = IntMatrix::from(vec![vec![3, 1], vec![2, 4]]);
        let moduli = [2, 8];
        let b = [1, 2];
        let orders = [12, 8];
        let s = solve_congruence_system(&a, &moduli, &b, &orders).unwrap();
        let mut got = s.enumerate();
        got.sort();
        let mut want = Vec::new();
        for x in 0..12 {
            for y in 0..8 {
                if (3 * x + y - 1i64).rem_euclid(2) == 0 && (2 * x + 4 * y - 2i64).rem_euclid(8) == 0 {
                    want.push(vec![x, y]);
                }
            }
        }
        assert_eq!(got, want);
    }
}
