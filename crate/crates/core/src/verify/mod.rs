//! Identity checks with exact residuals, and conjecture scans that report
//! instead of asserting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::catalog::{build, GroupSpec};
use crate::error::{Error, Result};
use crate::eulercat::{
    chi_closed, chi_f_normal_sylow, chi_s_star, class_mu, local_weighting, weights, Kind, Side,
};
use crate::groupcore::{p_core, p_part, PermGroup};
use crate::moebius::Rational;
use crate::psub::{Scope, SylowLattice};

/// Residuals of the three combinatorial identities obtained by equating the
/// local and closed weightings of `S*`, `F*` and `O*`, summed over all
/// nonidentity `p`-subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialResiduals {
    /// `Σ_H (1 − χ(S*_{N(H)/H}) + μ(H))`
    pub poset: Rational,
    /// `Σ_H Σ_{x ∈ C_G(H)} (1 − χ(S*_{C̄(x)}) + μ(H))`
    pub frobenius: Rational,
    /// `Σ_H (|H| − χ(S*_{N(H)/H})|H| + μ(H)) − ((p−1)/p) Σ_C |C|`
    pub orbit: Rational,
}

impl CombinatorialResiduals {
    pub fn all_zero(&self) -> bool {
        self.poset.is_zero() && self.frobenius.is_zero() && self.orbit.is_zero()
    }
}

pub fn verify_combinatorial_identities(g: &PermGroup, p: u64) -> Result<CombinatorialResiduals> {
    let table = SylowLattice::new(g, p)?.table(Scope::Nonidentity);
    let order = Rational::from(g.order());
    let mut mu_sum = Rational::zero();
    let mut mu_c_sum = Rational::zero();
    let mut cyclic_sum = Rational::zero();
    for c in table.classes() {
        let mu = Rational::from(class_mu(c, p) * BigInt::from(c.class_size));
        mu_c_sum += &mu * Rational::from(c.centralizer_order());
        mu_sum += mu;
        if c.flags.cyclic {
            cyclic_sum += Rational::from(c.class_size * c.order());
        }
    }
    let local = |kind| local_weighting(&table, kind).map(|w| w.sum());
    let s_local = local(Kind::S)?;
    let f_local = local(Kind::F)? * &order;
    let o_local = local(Kind::O)? * &order;
    Ok(CombinatorialResiduals {
        poset: s_local + &mu_sum,
        frobenius: f_local + mu_c_sum,
        orbit: o_local + mu_sum - Rational::new(p - 1, p) * cyclic_sum,
    })
}

/// Residuals of `1 − χ(C*_{G1×G2}) = (1 − χ(C*_{G1}))(1 − χ(C*_{G2}))` for `C = S, F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductResiduals {
    pub poset: Rational,
    pub frobenius: Rational,
}

fn chi_f_star(g: &PermGroup, p: u64) -> Result<Rational> {
    chi_closed(&SylowLattice::new(g, p)?.table(Scope::Nonidentity), Kind::F)
}

pub fn verify_products(a: &GroupSpec, b: &GroupSpec, p: u64) -> Result<ProductResiduals> {
    let ga = build(a)?;
    let gb = build(b)?;
    let gab = build(&GroupSpec::Product(Box::new(a.clone()), Box::new(b.clone())))?;
    let one = Rational::one();
    let reduced = |x: Rational| &one - x;
    let s = reduced(chi_s_star(&gab, p)?)
        - reduced(chi_s_star(&ga, p)?) * reduced(chi_s_star(&gb, p)?);
    let f = reduced(chi_f_star(&gab, p)?)
        - reduced(chi_f_star(&ga, p)?) * reduced(chi_f_star(&gb, p)?);
    Ok(ProductResiduals {
        poset: s,
        frobenius: f,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Integrality {
    pub chi_f: Rational,
    pub chi_o: Rational,
    /// `|G|_{p'} χ(F*) ∈ Z`
    pub f_scaled_integral: bool,
    /// `|G|_{p'} χ(O*) ∈ Z`
    pub o_scaled_integral: bool,
    /// `p ∤ denom(χ(F*))`
    pub f_p_local: bool,
}

impl Integrality {
    pub fn holds(&self) -> bool {
        self.f_scaled_integral && self.o_scaled_integral && self.f_p_local
    }
}

pub fn verify_integrality(g: &PermGroup, p: u64) -> Result<Integrality> {
    let table = SylowLattice::new(g, p)?.table(Scope::Nonidentity);
    let chi_f = chi_closed(&table, Kind::F)?;
    let chi_o = chi_closed(&table, Kind::O)?;
    let pprime = Rational::from(g.order() / p_part(g.order(), p));
    Ok(Integrality {
        f_scaled_integral: (&chi_f * &pprime).is_integer(),
        o_scaled_integral: (&chi_o * &pprime).is_integer(),
        f_p_local: chi_f.denom().gcd(&BigInt::from(p)).is_one(),
        chi_f,
        chi_o,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportReport {
    /// Classes (by table position) outside the claimed support where a value is nonzero,
    /// as `(category, side, position)`.
    pub offending: Vec<(Kind, Side, usize)>,
    /// When the Sylow subgroup is normal: whether the `F` weighting equals the
    /// centralizer-count formula class by class.
    pub normal_sylow_match: Option<bool>,
}

impl SupportReport {
    pub fn holds(&self) -> bool {
        self.offending.is_empty() && self.normal_sylow_match != Some(false)
    }
}

pub fn verify_support(g: &PermGroup, p: u64) -> Result<SupportReport> {
    let table = SylowLattice::new(g, p)?.table(Scope::Nonidentity);
    let mut offending = Vec::new();
    for kind in [Kind::S, Kind::T, Kind::O] {
        let w = weights(&table, kind, Side::Weighting)?;
        for i in w.support() {
            if !table.classes()[i].flags.p_radical {
                offending.push((kind, Side::Weighting, i));
            }
        }
    }
    for kind in [Kind::S, Kind::T, Kind::L, Kind::F] {
        let w = weights(&table, kind, Side::Coweighting)?;
        for i in w.support() {
            if !table.classes()[i].flags.elementary_abelian {
                offending.push((kind, Side::Coweighting, i));
            }
        }
    }
    let normal_sylow_match = match chi_f_normal_sylow(g, p) {
        Ok(ns) => {
            let w = weights(&table, Kind::F, Side::Weighting)?;
            let matches = table.classes().iter().enumerate().all(|(i, c)| {
                let element_level = ns
                    .weighting
                    .iter()
                    .find(|(h, _)| *h == c.representative)
                    .map(|(_, v)| v.clone())
                    .unwrap_or_else(Rational::zero);
                element_level * Rational::from(c.class_size) == w.values[i]
            });
            Some(matches)
        }
        Err(Error::Input(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(SupportReport {
        offending,
        normal_sylow_match,
    })
}

/// One group that could not be scanned, with the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skipped {
    pub group: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuillenEntry {
    pub group: String,
    pub order: u64,
    pub chi_s: Rational,
    pub op_order: u64,
    /// `(χ(S*) ≠ 1) ⇔ (O_p(G) = 1)`
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuillenScan {
    pub prime: u64,
    pub entries: Vec<QuillenEntry>,
    pub skipped: Vec<Skipped>,
}

impl QuillenScan {
    pub fn counterexamples(&self) -> impl Iterator<Item = &QuillenEntry> {
        self.entries.iter().filter(|e| !e.consistent)
    }
}

fn skip_or<T>(r: Result<T>, group: &str, skipped: &mut Vec<Skipped>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e @ Error::Resource { .. }) => {
            skipped.push(Skipped {
                group: group.to_string(),
                reason: e.to_string(),
            });
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Checks `χ(S*_G) ≠ 1 ⇔ O_p(G) = 1` on each group. Groups that hit a
/// resource cap are listed as skipped.
pub fn scan_quillen(groups: &[GroupSpec], p: u64) -> Result<QuillenScan> {
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for spec in groups {
        let name = spec.to_string();
        let Some(g) = skip_or(build(spec), &name, &mut skipped)? else {
            continue;
        };
        let Some(chi_s) = skip_or(chi_s_star(&g, p), &name, &mut skipped)? else {
            continue;
        };
        let op_order = p_core(&g, p)?.order();
        let consistent = (chi_s != Rational::one()) == (op_order == 1);
        entries.push(QuillenEntry {
            group: name,
            order: g.order(),
            chi_s,
            op_order,
            consistent,
        });
    }
    Ok(QuillenScan {
        prime: p,
        entries,
        skipped,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FRadicalWitness {
    pub group: String,
    /// Table position of the centric class.
    pub class: usize,
    pub class_order: u64,
    pub weight: Rational,
    pub f_radical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FRadicalScan {
    pub prime: u64,
    pub groups_checked: usize,
    pub classes_checked: usize,
    pub counterexamples: Vec<FRadicalWitness>,
    pub skipped: Vec<Skipped>,
    /// Smallest and largest `χ(F*)` seen among groups of order divisible by `p`.
    pub chi_f_min: Option<(Rational, String)>,
    pub chi_f_max: Option<(Rational, String)>,
}

/// Checks that the centric `F̃` weighting is nonzero exactly on F-radical classes.
pub fn scan_fradical_support(groups: &[GroupSpec], p: u64) -> Result<FRadicalScan> {
    let mut scan = FRadicalScan {
        prime: p,
        groups_checked: 0,
        classes_checked: 0,
        counterexamples: Vec::new(),
        skipped: Vec::new(),
        chi_f_min: None,
        chi_f_max: None,
    };
    for spec in groups {
        let name = spec.to_string();
        let Some(g) = skip_or(build(spec), &name, &mut scan.skipped)? else {
            continue;
        };
        let Some(lattice) = skip_or(SylowLattice::new(&g, p), &name, &mut scan.skipped)? else {
            continue;
        };
        let table = lattice.table(Scope::Centric);
        let w = weights(&table, Kind::Ftilde, Side::Weighting)?;
        for (i, c) in table.classes().iter().enumerate() {
            scan.classes_checked += 1;
            if w.values[i].is_zero() == c.flags.f_radical {
                scan.counterexamples.push(FRadicalWitness {
                    group: name.clone(),
                    class: i,
                    class_order: c.order(),
                    weight: w.values[i].clone(),
                    f_radical: c.flags.f_radical,
                });
            }
        }
        if g.order() % p == 0 {
            let chi_f = chi_closed(&lattice.table(Scope::Nonidentity), Kind::F)?;
            if scan.chi_f_min.as_ref().is_none_or(|(m, _)| chi_f < *m) {
                scan.chi_f_min = Some((chi_f.clone(), name.clone()));
            }
            if scan.chi_f_max.as_ref().is_none_or(|(m, _)| chi_f > *m) {
                scan.chi_f_max = Some((chi_f, name.clone()));
            }
        }
        scan.groups_checked += 1;
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_str, parse_spec};

    #[test]
    fn identities_small() {
        for (s, p) in [("S3", 2), ("A4", 2), ("C5", 2), ("A5", 3)] {
            let r = verify_combinatorial_identities(&build_str(s).unwrap(), p).unwrap();
            assert!(r.all_zero(), "{s}: {r:?}");
        }
    }

    #[test]
    fn products() {
        let s3 = parse_spec("S3").unwrap();
        let r = verify_products(&s3, &s3, 2).unwrap();
        assert!(r.poset.is_zero() && r.frobenius.is_zero());
        let s3s3 = build_str("S3xS3").unwrap();
        assert_eq!(chi_s_star(&s3s3, 2).unwrap(), Rational::from(-3));
        let r = verify_products(&parse_spec("A4").unwrap(), &parse_spec("C1").unwrap(), 2).unwrap();
        assert!(r.poset.is_zero() && r.frobenius.is_zero());
    }

    #[test]
    fn integrality() {
        let r = verify_integrality(&build_str("A6").unwrap(), 2).unwrap();
        assert!(r.holds());
        assert_eq!(r.chi_f, Rational::new(1, 3));
    }

    #[test]
    fn support() {
        for s in ["A4", "S3", "C2cubeByC3"] {
            let r = verify_support(&build_str(s).unwrap(), 2).unwrap();
            assert!(r.holds(), "{s}: {r:?}");
        }
        let r = verify_support(&build_str("C2cubeByC3").unwrap(), 2).unwrap();
        assert_eq!(r.normal_sylow_match, Some(true));
    }

    #[test]
    fn quillen_examples() {
        let specs: Vec<GroupSpec> = ["A4", "A5", "C2"].iter().map(|s| parse_spec(s).unwrap()).collect();
        let r = scan_quillen(&specs, 2).unwrap();
        assert_eq!(r.counterexamples().count(), 0);
        assert_eq!(r.entries[1].chi_s, Rational::from(5));
        assert_eq!(r.entries[0].op_order, 4);
    }

    #[test]
    fn fradical_examples() {
        let specs: Vec<GroupSpec> = ["Dih:12", "Dih:4"].iter().map(|s| parse_spec(s).unwrap()).collect();
        let r = scan_fradical_support(&specs, 2).unwrap();
        assert!(r.counterexamples.is_empty(), "{:?}", r.counterexamples);
        assert_eq!(r.groups_checked, 2);
    }
}
