//! Exact rationals, Möbius functions of `p`-subgroup posets, and Gaussian binomials.

mod rational;

pub use rational::Rational;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{input, invariant, Result};
use crate::groupcore::{frattini, is_p_group, is_prime, PermGroup, Subgroup};
use crate::psub::{Scope, SubgroupClassTable};

/// `p^e` as a big integer.
pub fn big_pow(p: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// `(-1)^n p^(n choose 2)`.
pub fn signed_hall_value(p: u64, n: u64) -> BigInt {
    let v = big_pow(p, n * n.saturating_sub(1) / 2);
    if n % 2 == 1 {
        -v
    } else {
        v
    }
}

fn log_p(mut n: u64, p: u64) -> u64 {
    let mut e = 0;
    while n > 1 {
        n /= p;
        e += 1;
    }
    e
}

/// Möbius function of the subgroup lattice of a `p`-group between `H ≤ K`:
/// `(-1)^n p^(n choose 2)` when `Φ(K) ≤ H` and `|K:H| = p^n`, else 0.
pub fn mu_hall(g: &PermGroup, h: &Subgroup, k: &Subgroup, p: u64) -> Result<BigInt> {
    if !h.is_subgroup_of(k) {
        return input("mu_hall needs H ≤ K");
    }
    if !is_p_group(k, p) {
        return input(format!("subgroup of order {} is not a {p}-group", k.order()));
    }
    let phi = frattini(g, k, p)?;
    if !phi.is_subgroup_of(h) {
        return Ok(BigInt::zero());
    }
    Ok(signed_hall_value(p, log_p(k.order() / h.order(), p)))
}

/// `μ(K) = μ(1, K)`.
pub fn mu_of(g: &PermGroup, k: &Subgroup, p: u64) -> Result<BigInt> {
    mu_hall(g, &g.trivial_subgroup(), k, p)
}

/// A finite poset on `0..n` given by its order relation.
#[derive(Debug, Clone)]
pub struct FinitePoset {
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Builds the poset and checks reflexivity, antisymmetry and transitivity.
    pub fn new(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let leq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| leq(a, b)).collect()).collect();
        for a in 0..n {
            if !leq[a][a] {
                return input(format!("relation is not reflexive at {a}"));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return input(format!("relation is not antisymmetric at ({a}, {b})"));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return input(format!("relation is not transitive at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(FinitePoset { leq })
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// `μ(a, c)` for every `c ≥ a`, by the defining recursion.
    pub fn mu_row(&self, a: usize) -> Vec<Option<i64>> {
        let n = self.len();
        let mut above: Vec<usize> = (0..n).filter(|&c| self.leq[a][c]).collect();
        // number of elements below is a linear extension
        above.sort_by_key(|&c| (0..n).filter(|&x| self.leq[x][c]).count());
        let mut mu: Vec<Option<i64>> = vec![None; n];
        for &c in &above {
            let v = if c == a {
                1
            } else {
                -above
                    .iter()
                    .filter(|&&d| d != c && self.leq[d][c])
                    .map(|&d| mu[d].expect("linear extension visits smaller elements first"))
                    .sum::<i64>()
            };
            mu[c] = Some(v);
        }
        mu
    }
}

/// Recursive Möbius function: `μ(a,a) = 1`, `Σ_{a ≤ c ≤ b} μ(a,c) = 0` for `a < b`.
pub fn mu_poset_oracle(poset: &FinitePoset, a: usize, b: usize) -> Result<i64> {
    if !poset.leq(a, b) {
        return input(format!("{a} is not below {b}"));
    }
    Ok(poset.mu_row(a)[b].expect("b lies above a"))
}

/// Inverse of an upper-triangular matrix with nonzero diagonal.
pub fn upper_triangular_inverse(m: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut inv = vec![vec![Rational::zero(); n]; n];
    for j in 0..n {
        let Some(d) = m[j][j].recip() else {
            return invariant(format!("zero diagonal entry at {j}"));
        };
        inv[j][j] = d.clone();
        for i in (0..j).rev() {
            let mut s = Rational::zero();
            for k in i + 1..=j {
                if !m[i][k].is_zero() && !inv[k][j].is_zero() {
                    s += &m[i][k] * &inv[k][j];
                }
            }
            let Some(di) = m[i][i].recip() else {
                return invariant(format!("zero diagonal entry at {i}"));
            };
            inv[i][j] = -(s * di);
        }
    }
    Ok(inv)
}

/// `|N_G(H,K)| = |N_G(H)| · #{L ≤ K : L ~ H}` for all class pairs of the table.
pub fn transporter_counts(table: &SubgroupClassTable) -> Vec<Vec<u64>> {
    let lattice = table.lattice();
    let classes = table.classes();
    let mut out = vec![vec![0u64; classes.len()]; classes.len()];
    for (b, kc) in classes.iter().enumerate() {
        let mut per_class = vec![0u64; lattice.classes().len()];
        for &j in lattice.below(kc.id) {
            per_class[lattice.class_of(j)] += 1;
        }
        for (a, hc) in classes.iter().enumerate() {
            out[a][b] = hc.normalizer_order() * per_class[hc.id];
        }
    }
    out
}

/// The class Möbius matrix `[μ]([H],[K]) = (1/|N_G(H)|) Σ_{L ∈ [K]} μ(H, L)`.
///
/// Computed from μ-transporters,
/// `[μ]([H],[K]) = (-1)^n p^(n choose 2) #{L ≤ K : L ~ H, Φ(K) ≤ L} / |N_G(K)|`,
/// and checked against the inverse of the transporter ζ-matrix.
pub fn class_mobius(table: &SubgroupClassTable) -> Result<Vec<Vec<Rational>>> {
    if matches!(table.scope(), Scope::ElementaryAbelian | Scope::Radical) {
        return input(format!(
            "class Möbius needs an upward-closed scope, not `{}`",
            table.scope()
        ));
    }
    let via_transporter = class_mobius_transporter(table)?;
    let zeta: Vec<Vec<Rational>> = transporter_counts(table)
        .into_iter()
        .map(|row| row.into_iter().map(Rational::from).collect())
        .collect();
    let via_inverse = upper_triangular_inverse(&zeta)?;
    if via_transporter != via_inverse {
        return invariant("μ-transporter and inverted ζ-matrix disagree");
    }
    Ok(via_transporter)
}

/// The μ-transporter route alone.
pub fn class_mobius_transporter(table: &SubgroupClassTable) -> Result<Vec<Vec<Rational>>> {
    let lattice = table.lattice();
    let g = lattice.group();
    let p = lattice.prime();
    let classes = table.classes();
    let mut out = vec![vec![Rational::zero(); classes.len()]; classes.len()];
    for (b, kc) in classes.iter().enumerate() {
        let k = &kc.representative;
        let phi = frattini(g, k, p)?;
        let mut per_class = vec![0u64; lattice.classes().len()];
        for &j in lattice.below(kc.id) {
            if phi.is_subgroup_of(&lattice.subgroups()[j]) {
                per_class[lattice.class_of(j)] += 1;
            }
        }
        for (a, hc) in classes.iter().enumerate() {
            let c = per_class[hc.id];
            if c == 0 {
                continue;
            }
            let n = log_p(k.order() / hc.order(), p);
            out[a][b] = Rational::new(
                signed_hall_value(p, n) * BigInt::from(c),
                BigInt::from(kc.normalizer_order()),
            );
        }
    }
    Ok(out)
}

/// Gaussian `p`-binomial: the number of `d`-dimensional subspaces of `F_p^n`.
pub fn gauss_binom(n: u64, d: u64, p: u64) -> Result<BigInt> {
    if d > n {
        return input(format!("gauss_binom needs d ≤ n, got d={d}, n={n}"));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..d {
        num *= big_pow(p, n - i) - 1;
        den *= big_pow(p, i + 1) - 1;
    }
    Ok(num / den)
}

/// `Σ_{d=0}^{n} (-1)^d [n d]_p p^(d choose 2) p^(n-d)`: `p - 1` for `n = 1`, 0 beyond.
pub fn alternating_power_sum(n: u64, p: u64) -> Result<BigInt> {
    if n == 0 {
        return input("alternating_power_sum needs n ≥ 1");
    }
    if !is_prime(p) {
        return input(format!("{p} is not prime"));
    }
    let mut total = BigInt::zero();
    for d in 0..=n {
        let term = gauss_binom(n, d, p)? * signed_hall_value(p, d) * big_pow(p, n - d);
        total += term;
    }
    Ok(total)
}
