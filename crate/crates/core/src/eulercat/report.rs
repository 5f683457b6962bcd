use super::closed::{
    chi_closed, chi_f_abelian_sylow, chi_f_normal_sylow, chi_f_via_centralizers,
    chi_full_category, chi_orbit_cyclic, chi_sylow_restricted_f,
};
use super::local::local_weighting;
use super::zeta::{weights, Side, WeightVector};
use super::Kind;
use crate::error::{invariant, Error, Result};
use crate::groupcore::PermGroup;
use crate::moebius::Rational;
use crate::psub::{Scope, SubgroupClassTable, SylowLattice};

/// One way of computing an Euler characteristic, with its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route {
    pub name: &'static str,
    pub value: Rational,
}

/// Every route that applies to `kind` on this table. The first two are
/// always the weighting and coweighting sums of the class ζ-matrix.
pub fn routes(table: &SubgroupClassTable, kind: Kind) -> Result<(WeightVector, WeightVector, Vec<Route>)> {
    let g = table.group();
    let p = table.prime();
    let w = weights(table, kind, Side::Weighting)?;
    let cw = weights(table, kind, Side::Coweighting)?;
    let mut out = vec![
        Route {
            name: "weighting",
            value: w.sum(),
        },
        Route {
            name: "coweighting",
            value: cw.sum(),
        },
    ];
    let mut add = |name, value: Result<Rational>| -> Result<()> {
        out.push(Route {
            name,
            value: value?,
        });
        Ok(())
    };
    match table.scope() {
        Scope::Nonidentity => {
            add("closed", chi_closed(table, kind))?;
            if matches!(kind, Kind::S | Kind::T | Kind::O | Kind::F) {
                add("local", local_weighting(table, kind).map(|v| v.sum()))?;
            }
            match kind {
                Kind::O => add("cyclic_sum", chi_orbit_cyclic(table))?,
                Kind::F => {
                    add("centralizers", chi_f_via_centralizers(g, p))?;
                    add("sylow_restricted", chi_sylow_restricted_f(g, p))?;
                    match chi_f_normal_sylow(g, p) {
                        Ok(r) => add("normal_sylow", Ok(r.chi))?,
                        Err(Error::Input(_)) => {}
                        Err(e) => return Err(e),
                    }
                    match chi_f_abelian_sylow(g, p) {
                        Ok(v) => add("abelian_sylow", Ok(v))?,
                        Err(Error::Input(_)) => {}
                        Err(e) => return Err(e),
                    }
                }
                Kind::Ftilde => add("frobenius", super::zeta::chi(table, Kind::F))?,
                _ => {}
            }
        }
        Scope::Centric => {
            add("closed", chi_closed(table, kind))?;
            if kind == Kind::Ftilde {
                add("local", local_weighting(table, kind).map(|v| v.sum()))?;
                add("frobenius", super::zeta::chi(table, Kind::F))?;
            }
        }
        Scope::All => add("full_category", chi_full_category(g, p, kind))?,
        Scope::ElementaryAbelian => {
            if matches!(kind, Kind::S | Kind::T | Kind::L | Kind::F) {
                let star = table.lattice().table(Scope::Nonidentity);
                add("nonidentity", chi_closed(&star, kind))?;
            }
        }
        Scope::Radical => {
            if matches!(kind, Kind::S | Kind::T | Kind::O) {
                let star = table.lattice().table(Scope::Nonidentity);
                add("nonidentity", chi_closed(&star, kind))?;
            }
        }
    }
    Ok((w, cw, out))
}

#[derive(Debug, Clone)]
pub struct KindReport {
    pub kind: Kind,
    pub chi: Rational,
    /// The first independent route (or the coweighting sum when there is none).
    pub chi_alt: Rational,
    pub routes: Vec<Route>,
    pub weighting: WeightVector,
    pub coweighting: WeightVector,
}

impl KindReport {
    /// `(route name, route value − χ)` for every route.
    pub fn residuals(&self) -> impl Iterator<Item = (&'static str, Rational)> + '_ {
        self.routes.iter().map(|r| (r.name, &r.value - &self.chi))
    }
}

#[derive(Debug, Clone)]
pub struct ChiReport {
    pub group: String,
    pub order: u64,
    pub prime: u64,
    pub scope: Scope,
    pub table: SubgroupClassTable,
    pub kinds: Vec<KindReport>,
}

impl ChiReport {
    pub fn kind(&self, kind: Kind) -> Option<&KindReport> {
        self.kinds.iter().find(|k| k.kind == kind)
    }

    /// Nonzero residuals as `(kind, route, residual)`.
    pub fn violations(&self) -> Vec<(Kind, &'static str, Rational)> {
        self.kinds
            .iter()
            .flat_map(|k| {
                k.residuals()
                    .filter(|(_, r)| !r.is_zero())
                    .map(move |(name, r)| (k.kind, name, r))
            })
            .collect()
    }

    pub fn check(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            return Ok(());
        }
        let parts: Vec<String> = v
            .iter()
            .map(|(k, name, r)| format!("{k}/{name} off by {r}"))
            .collect();
        invariant(format!("{} at p={}: {}", self.group, self.prime, parts.join(", ")))
    }
}

/// Computes every applicable route for each kind without judging agreement.
pub fn build_report(
    name: &str,
    g: &PermGroup,
    p: u64,
    scope: Scope,
    kinds: &[Kind],
) -> Result<ChiReport> {
    let table = SylowLattice::new(g, p)?.table(scope);
    let mut out = Vec::with_capacity(kinds.len());
    for &kind in kinds {
        let (weighting, coweighting, routes) = routes(&table, kind)?;
        let chi = routes[0].value.clone();
        let chi_alt = routes
            .get(2)
            .unwrap_or(&routes[1])
            .value
            .clone();
        out.push(KindReport {
            kind,
            chi,
            chi_alt,
            routes,
            weighting,
            coweighting,
        });
    }
    Ok(ChiReport {
        group: name.to_string(),
        order: g.order(),
        prime: p,
        scope,
        table,
        kinds: out,
    })
}

/// [`build_report`] followed by [`ChiReport::check`].
pub fn chi_report(name: &str, g: &PermGroup, p: u64, scope: Scope, kinds: &[Kind]) -> Result<ChiReport> {
    let r = build_report(name, g, p, scope, kinds)?;
    r.check()?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_str;

    fn values(spec: &str, p: u64, scope: Scope) -> Vec<String> {
        let g = build_str(spec).unwrap();
        let r = chi_report(spec, &g, p, scope, &Kind::ALL).unwrap();
        r.kinds.iter().map(|k| k.chi.to_string()).collect()
    }

    #[test]
    fn a4_all_routes() {
        assert_eq!(
            values("A4", 2, Scope::Nonidentity),
            ["1", "1/12", "1/12", "1/3", "1/3", "1/3"]
        );
        assert_eq!(
            values("A4", 2, Scope::Centric),
            ["1", "1/12", "1/12", "1/3", "1/3", "1/3"]
        );
    }

    #[test]
    fn s3_values() {
        assert_eq!(
            values("S3", 2, Scope::Nonidentity),
            ["3", "1/2", "1/2", "1", "1", "1"]
        );
        let full = values("S3", 2, Scope::All);
        assert_eq!(full[0], "1");
        assert_eq!(full[1], "1/6");
    }

    #[test]
    fn empty_scope() {
        assert_eq!(values("C7", 2, Scope::Nonidentity), ["0"; 6]);
    }

    #[test]
    fn p_group_values() {
        assert_eq!(
            values("Dih:4", 2, Scope::Nonidentity),
            ["1", "1/8", "1/8", "1", "1", "1"]
        );
    }
}
