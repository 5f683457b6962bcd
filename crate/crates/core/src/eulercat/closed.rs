use num_bigint::BigInt;

use super::Kind;
use crate::error::{input, invariant, Result};
use crate::groupcore::{
    centralizer_in, is_p_group, p_part, p_residual, sylow, PermGroup, Subgroup,
};
use crate::moebius::{class_mobius, signed_hall_value, Rational};
use crate::psub::{Scope, SubgroupClass, SubgroupClassTable, SylowLattice};

pub(crate) fn log_p(mut n: u64, p: u64) -> u64 {
    let mut e = 0;
    while n > 1 {
        n /= p;
        e += 1;
    }
    e
}

/// Hall's `μ(K) = μ(1, K)` for a class representative.
pub fn class_mu(class: &SubgroupClass, p: u64) -> BigInt {
    if class.flags.elementary_abelian {
        signed_hall_value(p, log_p(class.order(), p))
    } else {
        BigInt::from(0)
    }
}

/// `χ(S*_G) = Σ_K −μ(K)` over all nonidentity `p`-subgroups.
pub fn chi_s_star(g: &PermGroup, p: u64) -> Result<Rational> {
    let lattice = SylowLattice::new(g, p)?;
    Ok(lattice
        .classes()
        .iter()
        .filter(|c| !c.representative.is_trivial())
        .map(|c| Rational::from(-class_mu(c, p) * BigInt::from(c.class_size)))
        .sum())
}

/// `|C_G(K)|_{p'}` for centric `K`, as `|C_G(K)| / |Z(K)|` after checking
/// that `Z(K)` is a Sylow subgroup of `C_G(K)`.
pub(crate) fn centric_p_prime(class: &SubgroupClass, p: u64) -> Result<u64> {
    let c = class.centralizer_order();
    let z = class.center_order();
    if p_part(c, p) != z {
        return invariant(format!(
            "|C_G(K)|_p = {} differs from |Z(K)| = {z} on a centric class",
            p_part(c, p)
        ));
    }
    Ok(c / z)
}

/// Closed forms in terms of Hall's μ (nonidentity scope) or the class Möbius
/// function restricted to centric classes.
pub fn chi_closed(table: &SubgroupClassTable, kind: Kind) -> Result<Rational> {
    let g = table.group();
    let p = table.prime();
    let order = Rational::from(g.order());
    match table.scope() {
        Scope::Nonidentity => {
            let classes = table.classes();
            let term = |c: &SubgroupClass, denom: u64| {
                Rational::new(-class_mu(c, p), BigInt::from(denom))
            };
            Ok(match kind {
                Kind::S => classes
                    .iter()
                    .map(|c| term(c, 1) * Rational::from(c.class_size))
                    .sum(),
                Kind::T => classes.iter().map(|c| term(c, c.normalizer_order())).sum(),
                Kind::L => {
                    let mut s = Rational::zero();
                    for c in classes {
                        let r = p_residual(g, &c.centralizer, p)?.order();
                        s += term(c, c.normalizer_order()) * Rational::from(r);
                    }
                    s
                }
                Kind::F | Kind::Ftilde => classes
                    .iter()
                    .map(|c| term(c, c.normalizer_order()) * Rational::from(c.centralizer_order()))
                    .sum(),
                Kind::O => {
                    let mu = class_mobius(table)?;
                    let mut s = Rational::zero();
                    for (a, row) in mu.iter().enumerate() {
                        let h = Rational::from(classes[a].order());
                        s += row.iter().sum::<Rational>() * h;
                    }
                    s
                }
            })
        }
        Scope::Centric => {
            let classes = table.classes();
            let mu = class_mobius(table)?;
            let mut s = Rational::zero();
            for (a, row) in mu.iter().enumerate() {
                for (b, v) in row.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let h = classes[a].order();
                    let factor = match kind {
                        Kind::S | Kind::T => 1,
                        Kind::L => centric_p_prime(&classes[b], p)?,
                        Kind::F => classes[b].centralizer_order(),
                        Kind::O => h,
                        Kind::Ftilde => h * centric_p_prime(&classes[b], p)?,
                    };
                    s += v * Rational::from(factor);
                }
            }
            if kind == Kind::S {
                s *= order;
            }
            Ok(s)
        }
        other => input(format!("no closed form for scope `{other}`")),
    }
}

/// `χ(T*) + ((p−1)/p) Σ_{[C] cyclic} 1/|O(C)|` with `|O(C)| = |N_G(C):C|`.
pub fn chi_orbit_cyclic(table: &SubgroupClassTable) -> Result<Rational> {
    if table.scope() != Scope::Nonidentity {
        return input("the cyclic-sum formula needs the nonidentity table");
    }
    let p = table.prime();
    let t = chi_closed(table, Kind::T)?;
    let cyclic: Rational = table
        .classes()
        .iter()
        .filter(|c| c.flags.cyclic)
        .map(|c| Rational::new(c.order(), c.normalizer_order()))
        .sum();
    Ok(t + Rational::new(p - 1, p) * cyclic)
}

/// Euler characteristics of the categories on all `p`-subgroups, identity included.
pub fn chi_full_category(g: &PermGroup, p: u64, kind: Kind) -> Result<Rational> {
    let order = g.order();
    Ok(match kind {
        Kind::S | Kind::F | Kind::Ftilde => Rational::one(),
        Kind::T => Rational::new(1, order),
        Kind::L => {
            let residual = p_residual(g, &g.whole(), p)?.order();
            Rational::new(residual, order)
        }
        Kind::O => {
            let lattice = SylowLattice::new(g, p)?;
            let cyclic: Rational = lattice
                .classes()
                .iter()
                .filter(|c| c.flags.cyclic && !c.representative.is_trivial())
                .map(|c| Rational::new(c.order(), c.normalizer_order()))
                .sum();
            Rational::new(1, order) + Rational::new(p - 1, p) * cyclic
        }
    })
}

/// Conjugacy classes of elements as (representative, centralizer order).
pub(crate) fn element_classes(g: &PermGroup, within: &Subgroup, acting: &Subgroup) -> Vec<(u32, u64)> {
    let mut seen = fixedbitset::FixedBitSet::with_capacity(g.order() as usize);
    let gens = acting.generators(g).to_vec();
    let mut out = Vec::new();
    for &x in within.elements() {
        if seen.contains(x as usize) {
            continue;
        }
        let mut orbit = vec![x];
        seen.insert(x as usize);
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            for &s in &gens {
                let z = g.conj(y, s);
                if !seen.contains(z as usize) {
                    seen.insert(z as usize);
                    orbit.push(z);
                }
            }
            i += 1;
        }
        out.push((x, acting.order() / orbit.len() as u64));
    }
    out
}

/// `|G|^{-1} Σ_{x ∈ G} χ(S*_{C_G(x)})`, summed over conjugacy classes.
pub fn chi_f_via_centralizers(g: &PermGroup, p: u64) -> Result<Rational> {
    let whole = g.whole();
    let mut total = Rational::zero();
    for (x, c_order) in element_classes(g, &whole, &whole) {
        let c = centralizer_in(g, &whole, &g.subgroup_generated(&[x]))?;
        debug_assert_eq!(c.order(), c_order);
        let chi = chi_s_star(&g.subgroup_as_group(&c), p)?;
        total += chi / Rational::from(c_order);
    }
    Ok(total)
}

/// Result of the normal-Sylow formula for the Frobenius category.
#[derive(Debug, Clone)]
pub struct NormalSylowF {
    pub chi: Rational,
    /// Element-level weighting `k^H = #{x : C_P(x) = H}/|G|`, over the
    /// subgroups where it is nonzero, sorted by (order, key).
    pub weighting: Vec<(Subgroup, Rational)>,
}

pub fn chi_f_normal_sylow(g: &PermGroup, p: u64) -> Result<NormalSylowF> {
    let s = sylow(g, p)?;
    if crate::groupcore::normalizer(g, &s)?.order() != g.order() {
        return input("the Sylow subgroup is not normal");
    }
    let mut counts: std::collections::BTreeMap<Vec<u32>, u64> = Default::default();
    let mut nontrivial = 0u64;
    for x in 0..g.order() as u32 {
        let fixed: Vec<u32> = s
            .elements()
            .iter()
            .copied()
            .filter(|&y| g.commutes(x, y))
            .collect();
        if fixed.len() > 1 {
            nontrivial += 1;
            *counts.entry(fixed).or_default() += 1;
        }
    }
    let n = g.order();
    let mut weighting: Vec<(Subgroup, Rational)> = counts
        .into_iter()
        .map(|(e, c)| Ok((g.subgroup_from_elements(&e)?, Rational::new(c, n))))
        .collect::<Result<_>>()?;
    weighting.sort_by(|a, b| (a.0.order(), a.0.canonical_key()).cmp(&(b.0.order(), b.0.canonical_key())));
    Ok(NormalSylowF {
        chi: Rational::new(nontrivial, n),
        weighting,
    })
}

/// `#{φ ∈ F_G(P) : C_P(φ) > 1} / |F_G(P)|` for abelian `P`.
pub fn chi_f_abelian_sylow(g: &PermGroup, p: u64) -> Result<Rational> {
    let s = sylow(g, p)?;
    let gens = s.generators(g).to_vec();
    if !gens.iter().all(|&a| gens.iter().all(|&b| g.commutes(a, b))) {
        return input("the Sylow subgroup is not abelian");
    }
    let n = crate::groupcore::normalizer(g, &s)?;
    // each coset of C_G(P) acts the same way, so count in N_G(P) directly
    let fixing = n
        .elements()
        .iter()
        .filter(|&&x| s.elements().iter().any(|&y| y != 0 && g.commutes(x, y)))
        .count() as u64;
    Ok(Rational::new(fixing, n.order()))
}

/// `Σ_{1 < K ≤ P} −μ(K)/|F_G(K,P)|` with `|F_G(K,P)| = |N_G(K,P)|/|C_G(K)|`.
pub fn chi_sylow_restricted_f(g: &PermGroup, p: u64) -> Result<Rational> {
    let lattice = SylowLattice::new(g, p)?;
    let classes = lattice.classes();
    let mut in_p = vec![0u64; classes.len()];
    for i in 0..lattice.subgroups().len() {
        in_p[lattice.class_of(i)] += 1;
    }
    let mut total = Rational::zero();
    for (i, k) in lattice.subgroups().iter().enumerate() {
        if k.is_trivial() {
            continue;
        }
        debug_assert!(is_p_group(k, p));
        let c = &classes[lattice.class_of(i)];
        let transporter = c.normalizer_order() * in_p[c.id];
        total += Rational::new(-class_mu(c, p) * BigInt::from(c.centralizer_order()), BigInt::from(transporter));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_str;
    use crate::psub::enumerate_classes;

    fn closed(spec: &str, p: u64, kind: Kind) -> String {
        let g = build_str(spec).unwrap();
        chi_closed(&enumerate_classes(&g, p, Scope::Nonidentity).unwrap(), kind)
            .unwrap()
            .to_string()
    }

    #[test]
    fn small_closed_values() {
        assert_eq!(closed("A4", 2, Kind::S), "1");
        assert_eq!(closed("A4", 2, Kind::T), "1/12");
        assert_eq!(closed("A4", 2, Kind::L), "1/12");
        assert_eq!(closed("A4", 2, Kind::F), "1/3");
        assert_eq!(closed("A4", 2, Kind::O), "1/3");
        assert_eq!(closed("S3", 2, Kind::S), "3");
        assert_eq!(closed("A5", 5, Kind::S), "6");
        assert_eq!(closed("SL2:5", 5, Kind::F), "1/2");
    }

    #[test]
    fn orbit_cyclic_values() {
        for (spec, want) in [("A4", "1/3"), ("S3", "1")] {
            let g = build_str(spec).unwrap();
            let t = enumerate_classes(&g, 2, Scope::Nonidentity).unwrap();
            assert_eq!(chi_orbit_cyclic(&t).unwrap().to_string(), want);
        }
    }

    #[test]
    fn special_f_routes() {
        let a4 = build_str("A4").unwrap();
        assert_eq!(chi_f_via_centralizers(&a4, 2).unwrap(), Rational::new(1, 3));
        assert_eq!(chi_f_abelian_sylow(&a4, 2).unwrap(), Rational::new(1, 3));
        assert_eq!(chi_sylow_restricted_f(&a4, 2).unwrap(), Rational::new(1, 3));
        assert_eq!(chi_f_normal_sylow(&a4, 2).unwrap().chi, Rational::new(1, 3));
        let s3 = build_str("S3").unwrap();
        assert_eq!(chi_f_via_centralizers(&s3, 3).unwrap(), Rational::new(1, 2));
        assert_eq!(chi_f_normal_sylow(&s3, 3).unwrap().chi, Rational::new(1, 2));
        let a5 = build_str("A5").unwrap();
        assert_eq!(chi_f_abelian_sylow(&a5, 5).unwrap(), Rational::new(1, 2));
        assert!(chi_f_normal_sylow(&a5, 2).is_err());
        assert!(chi_f_abelian_sylow(&build_str("S4").unwrap(), 2).is_err());
    }

    #[test]
    fn full_category_values() {
        let s3 = build_str("S3").unwrap();
        assert_eq!(chi_full_category(&s3, 2, Kind::T).unwrap(), Rational::new(1, 6));
        assert_eq!(chi_full_category(&s3, 2, Kind::S).unwrap(), Rational::one());
        // O^2(S3) = A3
        assert_eq!(chi_full_category(&s3, 2, Kind::L).unwrap(), Rational::new(1, 2));
    }
}
