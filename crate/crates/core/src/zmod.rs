//! Symbolic ℤ-modules built from `ℤ`, `ℤ/n`, Prüfer groups `ℤ(p^∞)` and `ℚ`.
//!
//! A ℤ-module of this shape is co-Kasch iff `pM ≠ M` for every prime `p` with
//! `T_p(M) ≠ 0` when `M` is torsion, and for every prime at all otherwise.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::fixtures::z_mod;
use crate::kasch::{PropertyReport, Witness};
use crate::module::{FiniteModule, ModuleTable, MODULE_SIZE_CAP};
use crate::presentation::arith::{factorize, is_prime, lcm_all};
use crate::presentation::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZAtom {
    FreeZ,
    Cyclic(u64),
    Prufer(u64),
    Rationals,
}

impl fmt::Display for ZAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZAtom::FreeZ => write!(f, "Z"),
            ZAtom::Cyclic(n) => write!(f, "Z/{n}"),
            ZAtom::Prufer(p) => write!(f, "Prufer({p})"),
            ZAtom::Rationals => write!(f, "Q"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZParseError {
    #[error("unrecognized atom {0:?} (expected Z, Z/n, Prufer(p) or Q)")]
    UnknownAtom(String),
    #[error("cyclic order must be at least 2, got {0}")]
    SmallCyclic(u64),
    #[error("Prufer group needs a prime, got {0}")]
    NotPrime(u64),
}

/// A finite multiset of atoms; the empty multiset is the zero module.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZModuleExpr {
    pub atoms: Vec<ZAtom>,
}

impl ZModuleExpr {
    pub fn new(mut atoms: Vec<ZAtom>) -> ZModuleExpr {
        atoms.sort();
        ZModuleExpr { atoms }
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn direct_sum(&self, other: &ZModuleExpr) -> ZModuleExpr {
        ZModuleExpr::new(self.atoms.iter().chain(&other.atoms).copied().collect())
    }

    fn has_free(&self) -> bool {
        self.atoms.contains(&ZAtom::FreeZ)
    }

    /// The additive group as a module over `ℤ/exponent`, when every atom is cyclic
    /// and the group has at most 4096 elements.
    pub fn finite_module(&self) -> Option<FiniteModule> {
        let orders: Vec<i64> = self
            .atoms
            .iter()
            .map(|a| match a {
                ZAtom::Cyclic(n) => Some(*n as i64),
                _ => None,
            })
            .collect::<Option<_>>()?;
        let size = orders.iter().try_fold(1u128, |acc, &o| acc.checked_mul(o as u128))?;
        if size > MODULE_SIZE_CAP {
            return None;
        }
        let ring = z_mod(lcm_all(orders.iter().copied()).max(2));
        let table = ModuleTable { orders: orders.clone(), actions: vec![IntMatrix::identity(orders.len())] };
        Some(FiniteModule::validate(&ring, table).expect("a finite abelian group is a module over ℤ/exponent"))
    }
}

impl fmt::Display for ZModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.atoms.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn parse_atom(s: &str) -> Result<ZAtom, ZParseError> {
    let unknown = || ZParseError::UnknownAtom(s.to_string());
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    match compact.as_str() {
        "Z" => return Ok(ZAtom::FreeZ),
        "Q" => return Ok(ZAtom::Rationals),
        _ => {}
    }
    if let Some(n) = compact.strip_prefix("Z/") {
        let n: u64 = n.parse().map_err(|_| unknown())?;
        return if n >= 2 { Ok(ZAtom::Cyclic(n)) } else { Err(ZParseError::SmallCyclic(n)) };
    }
    let inner = compact.strip_prefix("Prufer(").or_else(|| compact.strip_prefix("Z(")).and_then(|r| r.strip_suffix(')')).ok_or_else(unknown)?;
    let p: u64 = inner.trim_end_matches("^inf").parse().map_err(|_| unknown())?;
    if is_prime(p) {
        Ok(ZAtom::Prufer(p))
    } else {
        Err(ZParseError::NotPrime(p))
    }
}

impl FromStr for ZModuleExpr {
    type Err = ZParseError;

    /// `"Z + Z/12 + Prufer(3) + Q"`; `"0"` or an empty string is the zero module.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(ZModuleExpr::default());
        }
        let atoms = s.split('+').map(parse_atom).collect::<Result<Vec<_>, _>>()?;
        Ok(ZModuleExpr::new(atoms))
    }
}

impl Serialize for ZModuleExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ZModuleExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `M = T(M)`.
pub fn is_torsion(m: &ZModuleExpr) -> bool {
    !m.atoms.iter().any(|a| matches!(a, ZAtom::FreeZ | ZAtom::Rationals))
}

/// Primes `p` with `T_p(M) ≠ 0`.
pub fn primary_support(m: &ZModuleExpr) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for a in &m.atoms {
        match *a {
            ZAtom::Cyclic(n) => out.extend(factorize(n).into_iter().map(|(p, _)| p)),
            ZAtom::Prufer(p) => {
                out.insert(p);
            }
            ZAtom::FreeZ | ZAtom::Rationals => {}
        }
    }
    out
}

/// `pM = M`.
pub fn is_p_divisible(m: &ZModuleExpr, p: u64) -> bool {
    assert!(is_prime(p), "{p} is not prime");
    m.atoms.iter().all(|a| match *a {
        ZAtom::FreeZ => false,
        ZAtom::Cyclic(n) => n % p != 0,
        ZAtom::Prufer(_) | ZAtom::Rationals => true,
    })
}

fn smallest_prime_coprime_to(ns: &[u64]) -> u64 {
    (2..).find(|&p| is_prime(p) && ns.iter().all(|n| n % p != 0)).expect("infinitely many primes")
}

pub fn is_co_kasch_z(m: &ZModuleExpr) -> PropertyReport {
    const NAME: &str = "co-kasch-z";
    if is_torsion(m) {
        return match primary_support(m).into_iter().find(|&p| is_p_divisible(m, p)) {
            None => PropertyReport::pass(NAME),
            Some(p) => PropertyReport::fail(NAME, Witness::Prime { p }),
        };
    }
    if m.has_free() {
        return PropertyReport::pass(NAME);
    }
    let cyclic: Vec<u64> = m
        .atoms
        .iter()
        .filter_map(|a| match a {
            ZAtom::Cyclic(n) => Some(*n),
            _ => None,
        })
        .collect();
    let p = smallest_prime_coprime_to(&cyclic);
    debug_assert!(is_p_divisible(m, p));
    PropertyReport::fail(NAME, Witness::Prime { p })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expr(s: &str) -> ZModuleExpr {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        let m = expr("Z + Z/12 + Prufer(3) + Q");
        assert_eq!(m.atoms, vec![ZAtom::FreeZ, ZAtom::Cyclic(12), ZAtom::Prufer(3), ZAtom::Rationals]);
        assert_eq!(expr(&m.to_string()), m);
        assert_eq!(expr("Z(2^inf)"), expr("Prufer(2)"));
        assert!(expr("0").is_zero());
        assert_eq!("Z/1".parse::<ZModuleExpr>(), Err(ZParseError::SmallCyclic(1)));
        assert_eq!("Prufer(4)".parse::<ZModuleExpr>(), Err(ZParseError::NotPrime(4)));
        assert!("R".parse::<ZModuleExpr>().is_err());
    }

    #[test]
    fn basic_predicates() {
        assert!(is_torsion(&expr("Z/6 + Prufer(2)")));
        assert!(!is_torsion(&expr("Z")));
        assert!(!is_torsion(&expr("Q")));
        assert_eq!(primary_support(&expr("Z/12")), BTreeSet::from([2, 3]));
        assert_eq!(primary_support(&expr("Prufer(5) + Z")), BTreeSet::from([5]));
        assert!(primary_support(&expr("0")).is_empty());
        assert!(is_p_divisible(&expr("Prufer(2)"), 2));
        assert!(is_p_divisible(&expr("Z/6"), 5));
        assert!(!is_p_divisible(&expr("Z"), 3));
    }

    #[test]
    fn verdicts() {
        let cases = [
            ("Q", false, Some(2)),
            ("Z + Q", true, None),
            ("Prufer(2)", false, Some(2)),
            ("Z/2 + Prufer(2)", true, None),
            ("Z/6", true, None),
            ("Q + Z/6", false, Some(5)),
            ("0", true, None),
        ];
        for (s, verdict, prime) in cases {
            let r = is_co_kasch_z(&expr(s));
            assert_eq!(r.verdict, verdict, "{s}");
            assert_eq!(r.witness, prime.map(|p| Witness::Prime { p }), "{s}");
        }
    }
}
