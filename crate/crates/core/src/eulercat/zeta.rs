use super::Kind;
use crate::error::{input, invariant, Result};
use crate::groupcore::{p_residual, transporter, PermGroup, Subgroup};
use crate::moebius::{transporter_counts, Rational};
use crate::psub::{Scope, SubgroupClassTable};

fn exact_div(n: u64, d: u64, what: &str) -> Result<u64> {
    if d == 0 || !n.is_multiple_of(d) {
        return invariant(format!("{what}: {n} is not divisible by {d}"));
    }
    Ok(n / d)
}

/// `|C_K(L)|` for subgroups `L, K` of `G`.
pub(crate) fn centralizer_order_in(g: &PermGroup, k: &Subgroup, l: &Subgroup) -> u64 {
    let gens = l.generators(g);
    k.elements()
        .iter()
        .filter(|&&x| gens.iter().all(|&s| g.commutes(s, x)))
        .count() as u64
}

/// `|C(H,K)|` computed from the definition, by brute force over `G`.
///
/// For `S` this is 1 or 0 according to inclusion.
pub fn morphism_count(
    g: &PermGroup,
    p: u64,
    kind: Kind,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<Rational> {
    if kind == Kind::S {
        return Ok(Rational::from(h.is_subgroup_of(k) as u64));
    }
    let tr = transporter(g, h, k)?;
    let n = tr.len() as u64;
    let centralizer = || crate::groupcore::centralizer(g, h);
    let value = match kind {
        Kind::S => unreachable!(),
        Kind::T => n,
        Kind::L => exact_div(n, p_residual(g, &centralizer()?, p)?.order(), "L morphisms")?,
        Kind::F => exact_div(n, centralizer()?.order(), "F morphisms")?,
        Kind::O => exact_div(n, k.order(), "O morphisms")?,
        Kind::Ftilde => {
            let mut total = 0u64;
            for &x in &tr {
                let conj = crate::groupcore::conjugate_subgroup(g, h, x);
                total += centralizer_order_in(g, k, &conj);
            }
            exact_div(total, centralizer()?.order() * k.order(), "F~ morphisms")?
        }
    };
    Ok(Rational::from(value))
}

/// Class-level ζ-matrix: `entries[a][b] = |C(H_a, K_b)|` on representatives.
#[derive(Debug, Clone)]
pub struct ZetaMatrix {
    pub table: SubgroupClassTable,
    pub kind: Kind,
    pub entries: Vec<Vec<Rational>>,
}

pub fn zeta_matrix(table: &SubgroupClassTable, kind: Kind) -> Result<ZetaMatrix> {
    if kind == Kind::S {
        return input("the poset has no class-level ζ-matrix; use the transporter category");
    }
    let g = table.group();
    let p = table.prime();
    let classes = table.classes();
    let counts = transporter_counts(table);
    let divisors: Vec<u64> = match kind {
        Kind::L => classes
            .iter()
            .map(|c| p_residual(g, &c.centralizer, p).map(|r| r.order()))
            .collect::<Result<_>>()?,
        Kind::F | Kind::Ftilde => classes.iter().map(|c| c.centralizer_order()).collect(),
        _ => vec![1; classes.len()],
    };
    let burnside = if kind == Kind::Ftilde {
        Some(burnside_sums(table))
    } else {
        None
    };
    let mut entries = vec![vec![Rational::zero(); classes.len()]; classes.len()];
    for a in 0..classes.len() {
        for b in 0..classes.len() {
            let n = counts[a][b];
            if n == 0 {
                continue;
            }
            let k_order = classes[b].order();
            let value = match kind {
                Kind::T => n,
                Kind::L | Kind::F => exact_div(n, divisors[a], "class morphisms")?,
                Kind::O => exact_div(n, k_order, "orbit morphisms")?,
                Kind::Ftilde => {
                    let s = burnside.as_ref().unwrap()[a][b];
                    exact_div(
                        classes[a].normalizer_order() * s,
                        divisors[a] * k_order,
                        "exterior quotient morphisms",
                    )?
                }
                Kind::S => unreachable!(),
            };
            entries[a][b] = Rational::from(value);
        }
    }
    Ok(ZetaMatrix {
        table: table.clone(),
        kind,
        entries,
    })
}

/// `Σ_{L ≤ K_b, L ~ H_a} |C_{K_b}(L)|` for all class pairs.
fn burnside_sums(table: &SubgroupClassTable) -> Vec<Vec<u64>> {
    let lattice = table.lattice();
    let g = table.group();
    let classes = table.classes();
    let mut out = vec![vec![0u64; classes.len()]; classes.len()];
    let mut position = vec![None; lattice.classes().len()];
    for (i, c) in classes.iter().enumerate() {
        position[c.id] = Some(i);
    }
    for (b, kc) in classes.iter().enumerate() {
        for &j in lattice.below(kc.id) {
            if let Some(a) = position[lattice.class_of(j)] {
                out[a][b] +=
                    centralizer_order_in(g, &kc.representative, &lattice.subgroups()[j]);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Weighting,
    Coweighting,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Weighting => "weighting",
            Side::Coweighting => "coweighting",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weighting" => Ok(Side::Weighting),
            "coweighting" => Ok(Side::Coweighting),
            _ => input(format!("unknown side `{s}`")),
        }
    }
}

/// Class-level values `k^[a]` (weighting) or `k_[a]` (coweighting), in table order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub side: Side,
    pub kind: Kind,
    pub scope: Scope,
    pub values: Vec<Rational>,
}

impl WeightVector {
    pub fn sum(&self) -> Rational {
        self.values.iter().sum()
    }

    /// Positions with nonzero value.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&i| !self.values[i].is_zero())
            .collect()
    }
}

/// Back-substitution for `ζ k = 1`.
pub fn solve_weighting(zm: &ZetaMatrix) -> Result<WeightVector> {
    let m = &zm.entries;
    let n = m.len();
    let mut k = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut rhs = Rational::one();
        for j in i + 1..n {
            if !m[i][j].is_zero() {
                rhs -= &m[i][j] * &k[j];
            }
        }
        k[i] = rhs
            .checked_div(&m[i][i])
            .ok_or_else(|| crate::Error::Invariant(format!("zero diagonal at {i}")))?;
    }
    Ok(WeightVector {
        side: Side::Weighting,
        kind: zm.kind,
        scope: zm.table.scope(),
        values: k,
    })
}

/// Forward substitution for `k ζ = 1`.
pub fn solve_coweighting(zm: &ZetaMatrix) -> Result<WeightVector> {
    let m = &zm.entries;
    let n = m.len();
    let mut k = vec![Rational::zero(); n];
    for j in 0..n {
        let mut rhs = Rational::one();
        for i in 0..j {
            if !m[i][j].is_zero() {
                rhs -= &k[i] * &m[i][j];
            }
        }
        k[j] = rhs
            .checked_div(&m[j][j])
            .ok_or_else(|| crate::Error::Invariant(format!("zero diagonal at {j}")))?;
    }
    Ok(WeightVector {
        side: Side::Coweighting,
        kind: zm.kind,
        scope: zm.table.scope(),
        values: k,
    })
}

/// Weighting or coweighting of any kind; `S` values are `|G|` times the `T` values.
pub fn weights(table: &SubgroupClassTable, kind: Kind, side: Side) -> Result<WeightVector> {
    let base = if kind == Kind::S { Kind::T } else { kind };
    let zm = zeta_matrix(table, base)?;
    let mut w = match side {
        Side::Weighting => solve_weighting(&zm)?,
        Side::Coweighting => solve_coweighting(&zm)?,
    };
    if kind == Kind::S {
        let order = Rational::from(table.group().order());
        for v in &mut w.values {
            *v *= &order;
        }
        w.kind = Kind::S;
    }
    Ok(w)
}

/// Matrix route: the sum of the weighting, checked against the coweighting.
pub fn chi(table: &SubgroupClassTable, kind: Kind) -> Result<Rational> {
    let w = weights(table, kind, Side::Weighting)?.sum();
    let c = weights(table, kind, Side::Coweighting)?.sum();
    if w != c {
        return invariant(format!(
            "{kind}: weighting sums to {w} but coweighting to {c}"
        ));
    }
    Ok(w)
}
