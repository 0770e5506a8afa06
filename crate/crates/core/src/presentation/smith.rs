//! Diagonal and Smith normal forms over ℤ and over ℤ/L.
//!
//! One elimination routine serves both settings. In the modular setting every
//! entry (and every tracked transform) lives in `0..L`, and each pivot is first
//! rescaled by a unit so that it divides `L`; multiples of the pivot then stay
//! multiples after reduction, and the divisibility chain survives.

use super::arith::{gcd, unit_normalizer};
use super::matrix::IntMatrix;

/// Result of [`smith_decompose`]: `u · m · v = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The diagonal entries `d_1 | d_2 | ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)]).collect()
    }
}

/// Smith normal form over ℤ with unimodular transforms.
///
/// Pivots are chosen as the smallest nonzero absolute value in the active
/// block, ties broken by lowest row then lowest column.
pub fn smith_decompose(m: &IntMatrix) -> SmithForm {
    let mut e = Elimination::new(m, None, true, true);
    e.run(true);
    SmithForm { u: e.u_matrix(), d: e.matrix(), v: e.v_matrix() }
}

pub(crate) struct Elimination {
    a: Vec<Vec<i128>>,
    rows: usize,
    cols: usize,
    modulus: Option<i128>,
    u: Option<Vec<Vec<i128>>>,
    v: Option<Vec<Vec<i128>>>,
    vinv: Option<Vec<Vec<i128>>>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn to_int_matrix(a: &[Vec<i128>], cols: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|&x| i64::try_from(x).expect("entry exceeds i64 range")).collect()).collect();
    IntMatrix::from_rows(&rows, cols)
}

impl Elimination {
    pub(crate) fn new(m: &IntMatrix, modulus: Option<i64>, track_u: bool, track_v: bool) -> Self {
        let modulus = modulus.map(i128::from);
        if let Some(l) = modulus {
            assert!(l >= 1, "modulus must be positive");
        }
        let mut a: Vec<Vec<i128>> = (0..m.rows()).map(|i| m.row(i).iter().map(|&x| i128::from(x)).collect()).collect();
        if let Some(l) = modulus {
            for row in &mut a {
                for x in row.iter_mut() {
                    *x = x.rem_euclid(l);
                }
            }
        }
        Elimination {
            rows: m.rows(),
            cols: m.cols(),
            a,
            modulus,
            u: track_u.then(|| identity(m.rows())),
            v: track_v.then(|| identity(m.cols())),
            vinv: track_v.then(|| identity(m.cols())),
        }
    }

    fn norm(&self, x: i128) -> i128 {
        match self.modulus {
            Some(l) => x.rem_euclid(l),
            None => x,
        }
    }

    fn axpy(&self, dst: &mut [i128], src: &[i128], q: i128) {
        for (d, &s) in dst.iter_mut().zip(src) {
            let t = s.checked_mul(q).and_then(|t| d.checked_add(t)).expect("integer overflow in Smith elimination");
            *d = self.norm(t);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    /// row_dst += q · row_src
    fn add_row(&mut self, dst: usize, src: usize, q: i128) {
        if q == 0 {
            return;
        }
        let src_row = self.a[src].clone();
        let mut dst_row = std::mem::take(&mut self.a[dst]);
        self.axpy(&mut dst_row, &src_row, q);
        self.a[dst] = dst_row;
        if let Some(mut u) = self.u.take() {
            let s = u[src].clone();
            self.axpy(&mut u[dst], &s, q);
            self.u = Some(u);
        }
    }

    fn scale_row(&mut self, i: usize, c: i128) {
        let mut row = std::mem::take(&mut self.a[i]);
        for x in row.iter_mut() {
            *x = self.norm(x.checked_mul(c).expect("integer overflow in Smith elimination"));
        }
        self.a[i] = row;
        if let Some(mut u) = self.u.take() {
            for x in u[i].iter_mut() {
                *x = self.norm(x.checked_mul(c).expect("integer overflow in Smith elimination"));
            }
            self.u = Some(u);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(vinv) = &mut self.vinv {
            vinv.swap(i, j);
        }
    }

    /// col_dst += q · col_src; the inverse transform gets row_src -= q · row_dst.
    fn add_col(&mut self, dst: usize, src: usize, q: i128) {
        if q == 0 {
            return;
        }
        let modulus = self.modulus;
        let step = |x: i128, y: i128| -> i128 {
            let t = y.checked_mul(q).and_then(|t| x.checked_add(t)).expect("integer overflow in Smith elimination");
            match modulus {
                Some(l) => t.rem_euclid(l),
                None => t,
            }
        };
        for row in &mut self.a {
            row[dst] = step(row[dst], row[src]);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row[dst] = step(row[dst], row[src]);
            }
        }
        if let Some(mut vinv) = self.vinv.take() {
            let d = vinv[dst].clone();
            self.axpy(&mut vinv[src], &d, -q);
            self.vinv = Some(vinv);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.scale_row(i, -1);
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(i128, usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.a[i][j].abs();
                if x != 0 && best.is_none_or(|(b, _, _)| x < b) {
                    best = Some((x, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Diagonalizes the matrix. With `divisibility`, also enforces `d_t | d_{t+1}`.
    pub(crate) fn run(&mut self, divisibility: bool) {
        let steps = self.rows.min(self.cols);
        for t in 0..steps {
            loop {
                let Some((pi, pj)) = self.find_pivot(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                match self.modulus {
                    Some(l) => {
                        let (unit, _) = unit_normalizer(self.a[t][t], l);
                        if unit != 1 {
                            self.scale_row(t, unit);
                        }
                    }
                    None => {
                        if self.a[t][t] < 0 {
                            self.negate_row(t);
                        }
                    }
                }
                let p = self.a[t][t];
                for i in t + 1..self.rows {
                    let q = self.a[i][t].div_euclid(p);
                    self.add_row(i, t, -q);
                }
                for j in t + 1..self.cols {
                    let q = self.a[t][j].div_euclid(p);
                    self.add_col(j, t, -q);
                }
                let dirty = (t + 1..self.rows).any(|i| self.a[i][t] != 0) || (t + 1..self.cols).any(|j| self.a[t][j] != 0);
                if dirty {
                    continue;
                }
                if divisibility {
                    let offender = (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| self.a[i][j] % p != 0));
                    if let Some(i) = offender {
                        self.add_row(t, i, 1);
                        continue;
                    }
                }
                break;
            }
        }
    }

    pub(crate) fn diagonal_entry(&self, t: usize) -> i128 {
        self.a[t][t]
    }

    pub(crate) fn matrix(&self) -> IntMatrix {
        to_int_matrix(&self.a, self.cols)
    }

    pub(crate) fn u_matrix(&self) -> IntMatrix {
        to_int_matrix(self.u.as_ref().expect("row transform not tracked"), self.rows)
    }

    pub(crate) fn v_matrix(&self) -> IntMatrix {
        to_int_matrix(self.v.as_ref().expect("column transform not tracked"), self.cols)
    }

    pub(crate) fn vinv_matrix(&self) -> IntMatrix {
        to_int_matrix(self.vinv.as_ref().expect("column transform not tracked"), self.cols)
    }

    /// Order of the cyclic factor cut out by diagonal position `t` (modular mode).
    pub(crate) fn cyclic_order(&self, t: usize) -> i64 {
        let l = self.modulus.expect("cyclic orders need a modulus");
        let d = if t < self.rows.min(self.cols) { self.a[t][t] } else { 0 };
        i64::try_from(gcd(d, l)).expect("order exceeds i64")
    }
}
