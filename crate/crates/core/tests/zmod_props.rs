use cokasch::kasch::is_co_kasch;
use cokasch::module::simple_catalog;
use cokasch::zmod::{is_co_kasch_z, is_p_divisible, ZAtom, ZModuleExpr};

/// Multisets of cyclic orders (non-decreasing) with product at most `cap`.
fn cyclic_multisets(cap: u64) -> Vec<Vec<u64>> {
    fn go(min: u64, budget: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(prefix.clone());
        for n in min..=budget {
            prefix.push(n);
            go(n, budget / n, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(2, cap, &mut Vec::new(), &mut out);
    out
}

fn expr(orders: &[u64]) -> ZModuleExpr {
    ZModuleExpr::new(orders.iter().map(|&n| ZAtom::Cyclic(n)).collect())
}

#[test]
fn finite_groups_agree_with_the_module_engine() {
    let all = cyclic_multisets(64);
    assert!(all.len() > 100);
    for orders in all {
        let z = expr(&orders);
        assert!(is_co_kasch_z(&z).verdict, "{z}");
        let Some(m) = z.finite_module() else {
            assert!(z.is_zero());
            continue;
        };
        let catalog = simple_catalog(m.ring());
        assert!(is_co_kasch(&m, &catalog).verdict, "{z}");
    }
}

fn sample_exprs() -> Vec<ZModuleExpr> {
    let atoms = [ZAtom::FreeZ, ZAtom::Cyclic(4), ZAtom::Cyclic(6), ZAtom::Cyclic(15), ZAtom::Prufer(2), ZAtom::Prufer(3), ZAtom::Rationals];
    let mut out = vec![ZModuleExpr::default()];
    for a in atoms {
        out.push(ZModuleExpr::new(vec![a]));
        for b in atoms {
            out.push(ZModuleExpr::new(vec![a, b]));
        }
    }
    out
}

#[test]
fn adding_a_free_summand_makes_any_module_co_kasch() {
    for m in sample_exprs() {
        let with_z = m.direct_sum(&ZModuleExpr::new(vec![ZAtom::FreeZ]));
        assert!(is_co_kasch_z(&with_z).verdict, "{with_z}");
    }
}

#[test]
fn verdicts_are_closed_under_direct_sums() {
    let exprs = sample_exprs();
    for a in &exprs {
        for b in &exprs {
            if is_co_kasch_z(a).verdict && is_co_kasch_z(b).verdict {
                assert!(is_co_kasch_z(&a.direct_sum(b)).verdict, "{a} (+) {b}");
            }
        }
    }
}

#[test]
fn negative_witnesses_are_divisible_primes() {
    for m in sample_exprs() {
        let r = is_co_kasch_z(&m);
        if let Some(cokasch::kasch::Witness::Prime { p }) = r.witness {
            assert!(!r.verdict);
            assert!(is_p_divisible(&m, p), "{m} at {p}");
        }
    }
}
