//! Weightings computed class by class from local data at each subgroup.

use num_bigint::BigInt;

use super::closed::{centric_p_prime, chi_s_star, element_classes, log_p};
use super::{Kind, Side, WeightVector};
use crate::error::{input, Result};
use crate::groupcore::{centralizer, centralizer_in, quotient_group};
use crate::moebius::{signed_hall_value, Rational};
use crate::psub::{Scope, SubgroupClassTable, SylowLattice};

/// Class-level weighting `k^[H] = |[H]| k^H` from local formulas.
///
/// `S`, `T`, `O`, `F` need the nonidentity table; `Ftilde` needs the centric one.
pub fn local_weighting(table: &SubgroupClassTable, kind: Kind) -> Result<WeightVector> {
    let expected = if kind == Kind::Ftilde {
        Scope::Centric
    } else {
        Scope::Nonidentity
    };
    if table.scope() != expected || kind == Kind::L {
        return input(format!(
            "no local weighting for {kind} on scope `{}`",
            table.scope()
        ));
    }
    let g = table.group();
    let p = table.prime();
    let mut values = Vec::with_capacity(table.len());
    for c in table.classes() {
        let h = &c.representative;
        let n = &c.normalizer;
        let q = quotient_group(g, n, h)?;
        let value = match kind {
            Kind::S | Kind::T | Kind::O => {
                let reduced = Rational::one() - chi_s_star(q.group(), p)?;
                match kind {
                    Kind::S => reduced * Rational::from(c.class_size),
                    Kind::T => reduced / Rational::from(c.normalizer_order()),
                    _ => reduced * Rational::new(c.order(), c.normalizer_order()),
                }
            }
            Kind::F => {
                let mut total = Rational::zero();
                for (x, _) in element_classes(g, &c.centralizer, n) {
                    let cx = centralizer_in(g, n, &g.subgroup_generated(&[x]))?;
                    let image = q.image(g, &cx)?;
                    let chi = chi_s_star(&q.group().subgroup_as_group(&image), p)?;
                    total += (Rational::one() - chi) / Rational::from(cx.order());
                }
                total
            }
            Kind::Ftilde => {
                centric_p_prime(c, p)?;
                // elementary abelian p-subgroups K/H of N_G(H)/H, up to conjugacy there
                let lattice = SylowLattice::new(q.group(), p)?;
                let mut total = Rational::zero();
                for kc in lattice.classes().iter().filter(|k| k.flags.elementary_abelian) {
                    let k = q.preimage(g, &kc.representative)?;
                    let ck = centralizer(g, &k)?;
                    let z = k.elements().iter().filter(|&&x| ck.contains(x)).count() as u64;
                    if crate::groupcore::p_part(ck.order(), p) != z {
                        return crate::error::invariant("overgroup of a centric subgroup is not centric");
                    }
                    let mu = signed_hall_value(p, log_p(kc.order(), p));
                    total += Rational::from(mu * BigInt::from(kc.class_size * (ck.order() / z)));
                }
                total * Rational::new(c.order(), c.normalizer_order())
            }
            Kind::L => unreachable!(),
        };
        values.push(value);
    }
    Ok(WeightVector {
        side: Side::Weighting,
        kind,
        scope: table.scope(),
        values,
    })
}
