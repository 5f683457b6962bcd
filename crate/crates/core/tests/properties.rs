use std::sync::OnceLock;

use proptest::prelude::*;
use psubchi::catalog::{build_str, parse_spec, GroupSpec};
use psubchi::eulercat::{weights, Kind, Side};
use psubchi::groupcore::{frattini, p_core, quotient_group, PermGroup};
use psubchi::moebius::Rational;
use psubchi::psub::{Scope, SylowLattice};

const GROUPS: &[&str] = &["S4", "A5", "Dih:6", "SL2:3", "S3xS3", "C2cubeByC3", "Q8xC3", "G288"];

fn groups() -> &'static Vec<PermGroup> {
    static CELL: OnceLock<Vec<PermGroup>> = OnceLock::new();
    CELL.get_or_init(|| GROUPS.iter().map(|s| build_str(s).unwrap()).collect())
}

fn rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1..i64::MAX).prop_map(|(n, d)| Rational::new(n, d))
}

fn spec() -> impl Strategy<Value = GroupSpec> {
    let leaf = prop_oneof![
        (1usize..12).prop_map(GroupSpec::Sym),
        (1usize..12).prop_map(GroupSpec::Alt),
        (1usize..40).prop_map(GroupSpec::Cyc),
        (1usize..40).prop_map(GroupSpec::Dih),
        (prop_oneof![Just(2u64), Just(3), Just(5)], 1u32..5).prop_map(|(p, k)| GroupSpec::ElemAb { p, k }),
        Just(GroupSpec::Q8),
        prop_oneof![Just(2u64), Just(4), Just(9), Just(13)].prop_map(GroupSpec::SL2),
        Just(GroupSpec::G288),
        Just(GroupSpec::C2cubeByC3),
    ];
    leaf.prop_recursive(3, 8, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| GroupSpec::Product(Box::new(a), Box::new(b)))
    })
}

proptest! {
    #[test]
    fn rational_display_round_trips(r in rational()) {
        let back: Rational = r.to_string().parse().unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn rational_field_laws(a in rational(), b in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a.clone());
        }
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn spec_display_round_trips(s in spec()) {
        // products print without parentheses, so nesting may change but the realization may not
        let back = parse_spec(&s.to_string()).unwrap();
        prop_assert_eq!(back.to_string(), s.to_string());
        prop_assert_eq!(back.generators().unwrap(), s.generators().unwrap());
    }

    #[test]
    fn conjugation_is_an_automorphism(gi in 0..GROUPS.len(), x in any::<u32>(), y in any::<u32>(), a in any::<u32>(), b in any::<u32>()) {
        let g = &groups()[gi];
        let n = g.order() as u32;
        let (x, y, a, b) = (x % n, y % n, a % n, b % n);
        prop_assert_eq!(g.element_order(g.conj(x, a)), g.element_order(x));
        prop_assert_eq!(g.conj(g.mul(x, y), a), g.mul(g.conj(x, a), g.conj(y, a)));
        prop_assert_eq!(g.conj(g.conj(x, a), b), g.conj(x, g.mul(a, b)));
        prop_assert_eq!(g.conj(x, a), g.mul(g.mul(g.inv(a), x), a));
    }
}

#[test]
fn class_flags_against_direct_computation() {
    for (name, g) in GROUPS.iter().zip(groups()) {
        for p in [2, 3] {
            let lattice = SylowLattice::new(g, p).unwrap();
            for c in lattice.classes().iter().skip(1) {
                let h = &c.representative;
                let q = quotient_group(g, &c.normalizer, h).unwrap();
                let radical = p_core(q.group(), p).unwrap().is_trivial();
                assert_eq!(c.flags.p_radical, radical, "{name} p={p} class {}", c.id);
                let ea = frattini(g, h, p).unwrap().is_trivial();
                assert_eq!(c.flags.elementary_abelian, ea, "{name} p={p} class {}", c.id);
            }
        }
    }
}

#[test]
fn centric_is_closed_upwards() {
    for (name, g) in GROUPS.iter().zip(groups()) {
        for p in [2, 3] {
            let lattice = SylowLattice::new(g, p).unwrap();
            let subs = lattice.subgroups();
            for (i, h) in subs.iter().enumerate() {
                if !lattice.classes()[lattice.class_of(i)].flags.p_selfcentralizing {
                    continue;
                }
                for (j, k) in subs.iter().enumerate() {
                    if h.is_subgroup_of(k) {
                        let ck = &lattice.classes()[lattice.class_of(j)];
                        assert!(ck.flags.p_selfcentralizing, "{name} p={p}: {i} ≤ {j}");
                    }
                }
            }
        }
    }
}

#[test]
fn weighting_and_coweighting_sums_agree() {
    for (name, g) in GROUPS.iter().zip(groups()) {
        for p in [2, 3] {
            let lattice = SylowLattice::new(g, p).unwrap();
            for scope in [Scope::All, Scope::Nonidentity, Scope::Centric] {
                let table = lattice.table(scope);
                for kind in Kind::ALL {
                    let w = weights(&table, kind, Side::Weighting).unwrap().sum();
                    let cw = weights(&table, kind, Side::Coweighting).unwrap().sum();
                    assert_eq!(w, cw, "{name} p={p} {scope} {kind}");
                }
            }
        }
    }
}
