//! Small integer helpers.

pub fn gcd<T>(a: T, b: T) -> T
where
    T: Copy + PartialEq + Default + std::ops::Rem<Output = T> + std::ops::Neg<Output = T> + PartialOrd,
{
    let zero = T::default();
    let (mut a, mut b) = (if a < zero { -a } else { a }, if b < zero { -b } else { b });
    while b != zero {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b) * b).abs()
}

pub fn lcm_all(xs: impl IntoIterator<Item = i64>) -> i64 {
    xs.into_iter().fold(1, lcm)
}

/// Returns `(g, s, t)` with `s·a + t·b = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Finds a unit `u` modulo `l` with `u·x ≡ gcd(x, l) (mod l)`.
///
/// Returns `(u, gcd(x, l))`. For `x ≡ 0` the unit is 1.
pub fn unit_normalizer(x: i128, l: i128) -> (i128, i128) {
    let x = x.rem_euclid(l);
    let g = gcd(x, l);
    if x == 0 || l == 1 {
        return (1, g);
    }
    let lp = l / g;
    let (_, s, _) = ext_gcd(x / g, lp);
    let base = s.rem_euclid(lp);
    let mut u = base;
    while gcd(u, l) != 1 {
        u += lp;
    }
    (u % l, g)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Order of `v` in `⊕ ℤ/orders[i]`.
pub fn element_order(v: &[i64], orders: &[i64]) -> i64 {
    v.iter().zip(orders).fold(1, |acc, (&x, &o)| lcm(acc, o / gcd(x.rem_euclid(o), o)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizer_hits_gcd() {
        for l in 1..=36i128 {
            for x in 0..l {
                let (u, g) = unit_normalizer(x, l);
                assert_eq!(gcd(u, l), 1, "u={u} l={l}");
                assert_eq!((u * x).rem_euclid(l), g % l);
            }
        }
    }

    #[test]
    fn factor_and_primes() {
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert!(is_prime(5) && !is_prime(1) && !is_prime(9));
        assert_eq!(element_order(&[2, 3], &[4, 6]), 2);
    }
}
