//! Seeded random finite rings: subrings of `M_n(ℤ/m)` generated by `1` and a few
//! random matrices, re-expressed through structure constants and revalidated.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fixtures::product_table;
use crate::presentation::Subgroup;
use crate::ring::{FiniteRing, RingTable};

const RETRY_CAP: usize = 1000;

fn mat_mul(a: &[i64], b: &[i64], n: usize, m: i64) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % m;
            }
        }
    }
    out
}

/// Structure constants of the subring of `M_n(ℤ/m)` generated by `gens`, or `None`
/// if it has more than `max_size` elements.
pub fn subring_table(n: usize, m: i64, gens: &[Vec<i64>], max_size: u128) -> Option<RingTable> {
    let orders = vec![m; n * n];
    let identity: Vec<i64> = (0..n * n).map(|t| i64::from(t / n == t % n)).collect();
    let mut seed = vec![identity.clone()];
    seed.extend(gens.iter().map(|g| g.iter().map(|x| x.rem_euclid(m)).collect()));
    let mut group = Subgroup::generated(&orders, &seed);
    loop {
        if group.order() > max_size {
            return None;
        }
        let basis = group.basis();
        let fresh: Vec<Vec<i64>> =
            basis.iter().flat_map(|a| basis.iter().map(move |b| (a, b))).map(|(a, b)| mat_mul(a, b, n, m)).filter(|p| !group.contains(p)).collect();
        if fresh.is_empty() {
            break;
        }
        let mut all = basis;
        all.extend(fresh);
        group = Subgroup::generated(&orders, &all);
    }
    let pres = group.presentation();
    let coords = |v: &[i64]| pres.coordinates(v).expect("subring is closed");
    let mul = pres.generators.iter().map(|a| pres.generators.iter().map(|b| coords(&mat_mul(a, b, n, m))).collect()).collect();
    Some(RingTable { orders: pres.orders().to_vec(), mul, one: coords(&identity) })
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, m: i64, upper: bool) -> Vec<i64> {
    (0..n * n).map(|t| if upper && t / n > t % n { 0 } else { rng.gen_range(0..m) }).collect()
}

/// One random ring with at most `max_size` elements, by rejection sampling.
pub fn random_ring(rng: &mut ChaCha8Rng, max_size: u128) -> Arc<FiniteRing> {
    for _ in 0..RETRY_CAP {
        let (n, m) = *[(1usize, 0i64), (2, 2), (2, 3), (2, 4), (3, 2), (2, 5), (3, 3)].choose(rng).unwrap();
        let table = if n == 1 {
            let k = rng.gen_range(2..=max_size.min(64) as i64);
            crate::fixtures::z_mod_table(k)
        } else {
            let upper = rng.gen_bool(0.6);
            let count = rng.gen_range(1..=2);
            let gens: Vec<Vec<i64>> = (0..count).map(|_| random_matrix(rng, n, m, upper)).collect();
            match subring_table(n, m, &gens, max_size) {
                Some(t) => t,
                None => continue,
            }
        };
        if let Ok(ring) = FiniteRing::validate(table) {
            return ring;
        }
    }
    panic!("no random ring found within {RETRY_CAP} attempts");
}

/// `count` named random rings; about one in five is a product of two smaller ones.
pub fn random_rings(count: usize, seed: u64, max_size: u128) -> Vec<(String, Arc<FiniteRing>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(String, Arc<FiniteRing>)> = Vec::with_capacity(count);
    while out.len() < count {
        let name = format!("random-{seed}-{}", out.len());
        if rng.gen_bool(0.2) && max_size >= 4 {
            let a = random_ring(&mut rng, max_size / 2);
            let b = random_ring(&mut rng, max_size / a.size() as u128);
            if (a.size() * b.size()) as u128 <= max_size {
                let ring = FiniteRing::validate(product_table(&a.table(), &b.table())).expect("product of rings is a ring");
                out.push((name, ring));
                continue;
            }
        }
        out.push((name, random_ring(&mut rng, max_size)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upper_triangular_f2_subring() {
        // 1, e11, e12 generate all of T₂(F₂)
        let t = subring_table(2, 2, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]], 64).unwrap();
        let r = FiniteRing::validate(t).unwrap();
        assert_eq!(r.size(), 8);
        assert!(subring_table(3, 2, &[vec![0, 1, 0, 0, 0, 0, 1, 0, 0]], 4).is_none());
    }

    #[test]
    fn seeded_and_bounded() {
        let a = random_rings(20, 7, 64);
        let b = random_rings(20, 7, 64);
        assert_eq!(a, b);
        assert!(a.iter().all(|(_, r)| r.size() <= 64));
    }
}
