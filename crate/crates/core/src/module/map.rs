use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FiniteModule, ModuleElement, Submodule};
use crate::presentation::{solve_congruence_system, CongruenceSolution, IntMatrix, Subgroup};

/// An R-linear map `f(g_i) = Σ_j H_{ij} g'_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: FiniteModule,
    target: FiniteModule,
    matrix: IntMatrix,
}

impl ModuleMap {
    /// Checks additivity and equivariance before wrapping the matrix.
    pub fn new(source: &FiniteModule, target: &FiniteModule, mut matrix: IntMatrix) -> Option<ModuleMap> {
        if matrix.rows() != source.rank() || (matrix.cols() != target.rank() && source.rank() > 0) {
            return None;
        }
        if source.rank() == 0 {
            matrix = IntMatrix::zeros(0, target.rank());
        }
        for i in 0..source.rank() {
            for j in 0..target.rank() {
                if (source.orders()[i] * matrix[(i, j)]).rem_euclid(target.orders()[j]) != 0 {
                    return None;
                }
            }
        }
        matrix.reduce_columns(target.orders());
        let f = ModuleMap { source: source.clone(), target: target.clone(), matrix };
        f.is_equivariant().then_some(f)
    }

    pub(crate) fn from_parts(source: &FiniteModule, target: &FiniteModule, mut matrix: IntMatrix) -> ModuleMap {
        if source.rank() == 0 {
            matrix = IntMatrix::zeros(0, target.rank());
        }
        matrix.reduce_columns(target.orders());
        let f = ModuleMap { source: source.clone(), target: target.clone(), matrix };
        debug_assert!(f.is_equivariant());
        f
    }

    fn is_equivariant(&self) -> bool {
        (0..self.source.ring().rank()).all(|k| {
            (0..self.source.rank()).all(|i| {
                let g = self.source.generator(i);
                self.apply(&self.source.act_basis(&g, k)) == self.target.act_basis(&self.apply(&g), k)
            })
        })
    }

    pub fn source(&self) -> &FiniteModule {
        &self.source
    }

    pub fn target(&self) -> &FiniteModule {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[i64]) -> ModuleElement {
        self.matrix.apply_row(x, self.target.orders())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ModuleMap) -> ModuleMap {
        assert_eq!(self.target, g.source, "composition of non-composable maps");
        let m = self.matrix.mul_mod(&g.matrix, g.target.orders());
        ModuleMap::from_parts(&self.source, &g.target, m)
    }

    pub fn image(&self) -> Submodule {
        Submodule::generated(&self.target, &self.matrix.to_rows())
    }

    /// Order of the image, from the canonical basis of the images of generators.
    pub fn image_order(&self) -> u128 {
        Subgroup::generated(self.target.orders(), &self.matrix.to_rows()).order()
    }

    pub fn kernel(&self) -> Submodule {
        self.preimage(&Submodule::zero(&self.target))
    }

    /// `{x : f(x) ∈ sub}`.
    pub fn preimage(&self, sub: &Submodule) -> Submodule {
        let (m, n) = (self.source.rank(), self.target.rank());
        let basis = sub.basis();
        // unknowns: x (m coordinates) then coefficients c over sub's basis; f(x) − Σ c_r s_r ≡ 0
        let mut a = IntMatrix::zeros(n, m + basis.len());
        for j in 0..n {
            for i in 0..m {
                a[(j, i)] = self.matrix[(i, j)];
            }
            for (r, s) in basis.iter().enumerate() {
                a[(j, m + r)] = -s[j];
            }
        }
        let mut var_orders = self.source.orders().to_vec();
        var_orders.extend(basis.iter().map(|s| crate::presentation::arith::element_order(s, self.target.orders())));
        let zero = vec![0; n];
        let sol = solve_congruence_system(&a, self.target.orders(), &zero, &var_orders).expect("homogeneous system is consistent");
        let gens: Vec<Vec<i64>> = sol.homogeneous.iter().map(|g| g[..m].to_vec()).collect();
        Submodule::generated(&self.source, &gens)
    }

    pub fn is_injective(&self) -> bool {
        self.image_order() == self.source.size()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_order() == self.target.size()
    }
}

/// `Hom_R(M, N)` as a subgroup of `⊕_{i,j} ℤ/e'_j` (one coordinate per matrix entry).
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: FiniteModule,
    target: FiniteModule,
    solution: CongruenceSolution,
    group: Subgroup,
}

/// Above this many maps, enumeration is refused.
pub const HOM_ENUMERATION_CAP: u128 = 4096;

/// All equivariant maps `M → N`, by solving the linear congruences that encode
/// additive well-definedness and `f(x·b_k) = f(x)·b_k`.
pub fn hom_space(source: &FiniteModule, target: &FiniteModule) -> HomSpace {
    assert!(source.same_ring(target), "Hom between modules over different rings");
    let (m, n) = (source.rank(), target.rank());
    let var = |i: usize, j: usize| i * n + j;
    let var_orders: Vec<i64> = (0..m * n).map(|v| target.orders()[v % n]).collect();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut moduli: Vec<i64> = Vec::new();
    for i in 0..m {
        for j in 0..n {
            let mut row = vec![0; m * n];
            row[var(i, j)] = source.orders()[i];
            rows.push(row);
            moduli.push(target.orders()[j]);
        }
    }
    for k in 0..source.ring().rank() {
        let a = &source.actions()[k];
        let b = &target.actions()[k];
        for i in 0..m {
            for j in 0..n {
                // Σ_l A_il H_lj − Σ_l H_il B_lj ≡ 0 (mod e'_j)
                let mut row = vec![0; m * n];
                for l in 0..m {
                    row[var(l, j)] += a[(i, l)];
                }
                for l in 0..n {
                    row[var(i, l)] -= b[(l, j)];
                }
                rows.push(row);
                moduli.push(target.orders()[j]);
            }
        }
    }
    let a = IntMatrix::from_rows(&rows, m * n);
    let rhs = vec![0; rows.len()];
    let solution = solve_congruence_system(&a, &moduli, &rhs, &var_orders).expect("homogeneous system is consistent");
    let group = solution.homogeneous_group();
    HomSpace { source: source.clone(), target: target.clone(), solution, group }
}

impl HomSpace {
    pub fn source(&self) -> &FiniteModule {
        &self.source
    }

    pub fn target(&self) -> &FiniteModule {
        &self.target
    }

    pub fn size(&self) -> u128 {
        self.group.order()
    }

    pub fn is_zero(&self) -> bool {
        self.group.is_trivial()
    }

    pub fn as_subgroup(&self) -> &Subgroup {
        &self.group
    }

    fn to_map(&self, v: &[i64]) -> ModuleMap {
        let n = self.target.rank();
        let rows: Vec<Vec<i64>> = (0..self.source.rank()).map(|i| v[i * n..(i + 1) * n].to_vec()).collect();
        ModuleMap::from_parts(&self.source, &self.target, IntMatrix::from_rows(&rows, n))
    }

    /// Flattens a map's matrix into this space's coordinates.
    pub fn coordinates(&self, f: &ModuleMap) -> Vec<i64> {
        f.matrix().to_rows().concat()
    }

    pub fn contains(&self, f: &ModuleMap) -> bool {
        self.group.contains(&self.coordinates(f))
    }

    /// A canonical generating set.
    pub fn generators(&self) -> Vec<ModuleMap> {
        self.group.basis().iter().map(|v| self.to_map(v)).collect()
    }

    /// Every map, when there are at most [`HOM_ENUMERATION_CAP`] of them.
    pub fn maps(&self) -> Option<Vec<ModuleMap>> {
        (self.size() <= HOM_ENUMERATION_CAP).then(|| self.group.elements().iter().map(|v| self.to_map(v)).collect())
    }

    /// Every map, without the enumeration cap.
    pub fn iter_maps(&self) -> impl Iterator<Item = ModuleMap> + '_ {
        self.group.elements().into_iter().map(|v| self.to_map(&v))
    }

    /// Some bijective map, if one exists. Full scan when small, otherwise seeded random
    /// combinations of generators followed by an exhaustive scan.
    pub fn find_isomorphism(&self) -> Option<ModuleMap> {
        if self.source.size() != self.target.size() {
            return None;
        }
        if let Some(all) = self.maps() {
            return all.into_iter().find(ModuleMap::is_injective);
        }
        let gens = self.group.basis();
        let orders = self.group.ambient_orders();
        let mut rng = ChaCha8Rng::seed_from_u64(0x15015);
        for _ in 0..512 {
            let mut v = vec![0i64; orders.len()];
            for g in &gens {
                let c: i64 = rng.gen_range(0..64);
                for ((x, &y), &o) in v.iter_mut().zip(g).zip(orders) {
                    *x = (*x + c * y).rem_euclid(o);
                }
            }
            let f = self.to_map(&v);
            if f.is_injective() {
                return Some(f);
            }
        }
        self.group.elements().iter().map(|v| self.to_map(v)).find(ModuleMap::is_injective)
    }

    /// The underlying congruence solution.
    pub fn solution(&self) -> &CongruenceSolution {
        &self.solution
    }
}
