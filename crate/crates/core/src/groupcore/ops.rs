//! Subgroup operators on a materialized [`PermGroup`].
//!
//! Everything here is a filter over element indices; there is no stabilizer
//! chain machinery. Generators of the subgroup being tested are used wherever
//! a condition only needs checking on a generating set.

use super::group::{PermGroup, Subgroup};
use crate::error::{input, Result};

/// Highest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    assert!(p >= 2 && n > 0);
    let mut m = n;
    let mut part = 1;
    while m.is_multiple_of(p) {
        m /= p;
        part *= p;
    }
    part
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn is_p_power(n: u64, p: u64) -> bool {
    p_part(n, p) == n
}

pub fn conjugate_subgroup(g: &PermGroup, h: &Subgroup, x: u32) -> Subgroup {
    let mut elems: Vec<u32> = h.elements().iter().map(|&e| g.conj(e, x)).collect();
    elems.sort_unstable();
    Subgroup::from_sorted(g, elems)
}

/// Elements of `within` commuting with every element of `h`.
pub fn centralizer_in(g: &PermGroup, within: &Subgroup, h: &Subgroup) -> Result<Subgroup> {
    g.check_parent(within)?;
    g.check_parent(h)?;
    let gens = h.generators(g);
    let elems = within
        .elements()
        .iter()
        .copied()
        .filter(|&x| gens.iter().all(|&s| g.commutes(s, x)))
        .collect();
    Ok(Subgroup::from_sorted(g, elems))
}

pub fn centralizer(g: &PermGroup, h: &Subgroup) -> Result<Subgroup> {
    centralizer_in(g, &g.whole(), h)
}

pub fn center(g: &PermGroup, h: &Subgroup) -> Result<Subgroup> {
    centralizer_in(g, h, h)
}

/// Elements `x` of `within` with `h^x = h`.
pub fn normalizer_in(g: &PermGroup, within: &Subgroup, h: &Subgroup) -> Result<Subgroup> {
    g.check_parent(within)?;
    g.check_parent(h)?;
    let gens = h.generators(g);
    let elems = within
        .elements()
        .iter()
        .copied()
        .filter(|&x| gens.iter().all(|&s| h.contains(g.conj(s, x))))
        .collect();
    Ok(Subgroup::from_sorted(g, elems))
}

pub fn normalizer(g: &PermGroup, h: &Subgroup) -> Result<Subgroup> {
    normalizer_in(g, &g.whole(), h)
}

/// The transporter set `N_G(H, K) = { x : H^x ≤ K }`, sorted.
pub fn transporter(g: &PermGroup, h: &Subgroup, k: &Subgroup) -> Result<Vec<u32>> {
    g.check_parent(h)?;
    g.check_parent(k)?;
    if h.order() > k.order() || !k.order().is_multiple_of(h.order()) {
        return Ok(Vec::new());
    }
    let gens = h.generators(g);
    Ok((0..g.order() as u32)
        .filter(|&x| gens.iter().all(|&s| k.contains(g.conj(s, x))))
        .collect())
}

/// Some `x` with `H^x ≤ K`, scanning in canonical order.
pub fn transporter_witness(g: &PermGroup, h: &Subgroup, k: &Subgroup) -> Option<u32> {
    if h.order() > k.order() || !k.order().is_multiple_of(h.order()) {
        return None;
    }
    let gens = h.generators(g);
    (0..g.order() as u32).find(|&x| gens.iter().all(|&s| k.contains(g.conj(s, x))))
}

pub fn is_normal_in(g: &PermGroup, n: &Subgroup, m: &Subgroup) -> bool {
    if !m.is_subgroup_of(n) {
        return false;
    }
    let mg = m.generators(g);
    n.generators(g)
        .iter()
        .all(|&x| mg.iter().all(|&s| m.contains(g.conj(s, x))))
}

pub fn is_p_group(h: &Subgroup, p: u64) -> bool {
    is_p_power(h.order(), p)
}

/// `Φ(K) = [K, K] K^p` for a `p`-group `K`.
pub fn frattini(g: &PermGroup, k: &Subgroup, p: u64) -> Result<Subgroup> {
    g.check_parent(k)?;
    if !is_p_group(k, p) {
        return input(format!("subgroup of order {} is not a {p}-group", k.order()));
    }
    let mut gens: Vec<u32> = k.elements().iter().map(|&x| g.pow(x, p)).collect();
    let kg = k.generators(g).to_vec();
    let abelian = kg.iter().all(|&a| kg.iter().all(|&b| g.commutes(a, b)));
    if !abelian {
        for &a in k.elements() {
            for &b in k.elements() {
                let c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
                gens.push(c);
            }
        }
    }
    gens.sort_unstable();
    gens.dedup();
    gens.retain(|&x| x != 0);
    Ok(incremental_closure(g, &gens))
}

/// `⟨gens⟩`, skipping generators already inside the running closure.
fn incremental_closure(g: &PermGroup, gens: &[u32]) -> Subgroup {
    let mut used: Vec<u32> = Vec::new();
    let mut current = g.trivial_subgroup();
    for &x in gens {
        if !current.contains(x) {
            used.push(x);
            current = g.closure_from(current.elements(), &used);
        }
    }
    current
}

/// A Sylow `p`-subgroup of `within`, built greedily: repeatedly adjoin the
/// smallest-index `p`-element of the normalizer lying outside the current
/// subgroup until the order reaches `|within|_p`.
pub fn sylow_in(g: &PermGroup, within: &Subgroup, p: u64) -> Result<Subgroup> {
    g.check_parent(within)?;
    let target = p_part(within.order(), p);
    let mut s = g.trivial_subgroup();
    let mut gens: Vec<u32> = Vec::new();
    while s.order() < target {
        let n = normalizer_in(g, within, &s)?;
        let x = n
            .elements()
            .iter()
            .copied()
            .find(|&x| !s.contains(x) && is_p_power(g.element_order(x), p));
        match x {
            Some(x) => {
                gens.push(x);
                s = g.closure_from(s.elements(), &gens);
            }
            None => {
                return crate::error::invariant("Sylow extension found no p-element");
            }
        }
    }
    Ok(s)
}

pub fn sylow(g: &PermGroup, p: u64) -> Result<Subgroup> {
    sylow_in(g, &g.whole(), p)
}

/// `O_p(N)`: the largest normal `p`-subgroup of `within`, as the core of a Sylow.
pub fn p_core_in(g: &PermGroup, within: &Subgroup, p: u64) -> Result<Subgroup> {
    let mut core = sylow_in(g, within, p)?;
    let gens = within.generators(g).to_vec();
    loop {
        let mut next = core.clone();
        for &x in &gens {
            let conj = conjugate_subgroup(g, &next, x);
            next = next.intersection(g, &conj);
        }
        if next.order() == core.order() {
            return Ok(core);
        }
        core = next;
    }
}

pub fn p_core(g: &PermGroup, p: u64) -> Result<Subgroup> {
    p_core_in(g, &g.whole(), p)
}

/// `O^p(C)`: generated by the elements of `C` of order prime to `p`.
pub fn p_residual(g: &PermGroup, c: &Subgroup, p: u64) -> Result<Subgroup> {
    g.check_parent(c)?;
    let gens: Vec<u32> = c
        .elements()
        .iter()
        .copied()
        .filter(|&x| x != 0 && !g.element_order(x).is_multiple_of(p))
        .collect();
    Ok(incremental_closure(g, &gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcore::Permutation;

    fn perm(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cycles).unwrap()
    }

    fn s3() -> PermGroup {
        PermGroup::generate(3, vec![perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])]).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::generate(4, vec![perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])]).unwrap()
    }

    fn a4() -> PermGroup {
        PermGroup::generate(4, vec![perm(4, &[&[0, 1, 2]]), perm(4, &[&[0, 1], &[2, 3]])])
            .unwrap()
    }

    fn a5() -> PermGroup {
        PermGroup::generate(
            5,
            vec![perm(5, &[&[0, 1, 2]]), perm(5, &[&[0, 1, 3]]), perm(5, &[&[0, 1, 4]])],
        )
        .unwrap()
    }

    fn cyclic(n: usize) -> PermGroup {
        let c: Vec<usize> = (0..n).collect();
        PermGroup::generate(n, vec![Permutation::from_cycles(n, &[c]).unwrap()]).unwrap()
    }

    fn sub(g: &PermGroup, gens: &[Permutation]) -> Subgroup {
        g.subgroup_from_perms(gens).unwrap()
    }

    /// Brute-force filters used as oracles.
    fn brute_centralizer(g: &PermGroup, h: &Subgroup) -> usize {
        (0..g.order() as u32)
            .filter(|&x| h.elements().iter().all(|&y| g.commutes(x, y)))
            .count()
    }

    fn brute_normalizer(g: &PermGroup, h: &Subgroup) -> usize {
        (0..g.order() as u32)
            .filter(|&x| conjugate_subgroup(g, h, x) == *h)
            .count()
    }

    #[test]
    fn centralizers() {
        let g = s3();
        let h = sub(&g, &[perm(3, &[&[0, 1]])]);
        assert_eq!(centralizer(&g, &h).unwrap().order(), 2);
        assert_eq!(brute_centralizer(&g, &h), 2);

        let c6 = cyclic(6);
        let h = c6.subgroup_generated(&[1]);
        assert_eq!(centralizer(&c6, &h).unwrap().order(), 6);

        let g = a4();
        let v4 = sub(&g, &[perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])]);
        let c = centralizer(&g, &v4).unwrap();
        assert_eq!(c, v4);
        assert_eq!(brute_centralizer(&g, &v4), 4);
    }

    #[test]
    fn normalizers() {
        let g = s3();
        let h = sub(&g, &[perm(3, &[&[0, 1]])]);
        assert_eq!(normalizer(&g, &h).unwrap().order(), 2);
        assert_eq!(brute_normalizer(&g, &h), 2);

        let g = a4();
        let v4 = sub(&g, &[perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])]);
        assert_eq!(normalizer(&g, &v4).unwrap().order(), 12);
        let c2 = sub(&g, &[perm(4, &[&[0, 1], &[2, 3]])]);
        assert_eq!(normalizer(&g, &c2).unwrap().order(), 4);
        assert_eq!(brute_normalizer(&g, &c2), 4);
    }

    #[test]
    fn transporters() {
        let g = s3();
        let h = sub(&g, &[perm(3, &[&[0, 1]])]);
        let k = sub(&g, &[perm(3, &[&[0, 2]])]);
        assert_eq!(transporter(&g, &h, &k).unwrap().len(), 2);
        let all = g.whole();
        assert_eq!(transporter(&g, &all, &all).unwrap().len(), 6);
        assert!(transporter(&g, &all, &h).unwrap().is_empty());
        assert_eq!(
            transporter(&g, &h, &h).unwrap(),
            normalizer(&g, &h).unwrap().elements()
        );
    }

    #[test]
    fn transporter_rejects_foreign_subgroups() {
        let g = s3();
        let other = a4();
        let h = other.whole();
        assert!(transporter(&g, &h, &g.whole()).is_err());
    }

    #[test]
    fn frattini_subgroups() {
        let g = a4();
        let v4 = sub(&g, &[perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])]);
        assert!(frattini(&g, &v4, 2).unwrap().is_trivial());

        let c4 = cyclic(4);
        let phi = frattini(&c4, &c4.whole(), 2).unwrap();
        assert_eq!(phi.order(), 2);
        // squares of C4 by hand
        let squares: Vec<u32> = (0..4).map(|x| c4.mul(x, x)).collect();
        assert!(squares.iter().all(|&s| phi.contains(s)));

        // D8 inside S4: Φ(D8) is its centre of order 2
        let g = s4();
        let d8 = sub(&g, &[perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 2]])]);
        assert_eq!(d8.order(), 8);
        let phi = frattini(&g, &d8, 2).unwrap();
        assert_eq!(phi.order(), 2);
        assert_eq!(phi, center(&g, &d8).unwrap());

        assert!(frattini(&g, &g.whole(), 2).is_err());
    }

    #[test]
    fn p_cores() {
        assert_eq!(p_core(&s4(), 2).unwrap().order(), 4);
        assert!(p_core(&s3(), 2).unwrap().is_trivial());
        let c8 = cyclic(8);
        assert_eq!(p_core(&c8, 2).unwrap().order(), 8);
        assert!(p_core(&cyclic(5), 2).unwrap().is_trivial());
    }

    #[test]
    fn p_residuals() {
        let c8 = cyclic(8);
        assert!(p_residual(&c8, &c8.whole(), 2).unwrap().is_trivial());
        let g = s3();
        assert_eq!(p_residual(&g, &g.whole(), 2).unwrap().order(), 3);
        let c6 = cyclic(6);
        assert_eq!(p_residual(&c6, &c6.whole(), 2).unwrap().order(), 3);
    }

    #[test]
    fn sylows() {
        assert_eq!(sylow(&s4(), 2).unwrap().order(), 8);
        let c8 = cyclic(8);
        assert_eq!(sylow(&c8, 2).unwrap().order(), 8);
        assert_eq!(sylow(&a5(), 5).unwrap().order(), 5);
        assert_eq!(sylow(&a5(), 2).unwrap().order(), 4);
        assert!(sylow(&cyclic(9), 2).unwrap().is_trivial());
    }

    #[test]
    fn conjugation_invariants() {
        let g = s4();
        let h = sub(&g, &[perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])]);
        let k = sylow(&g, 2).unwrap();
        let base = transporter(&g, &h, &k).unwrap().len();
        for x in 0..g.order() as u32 {
            let hx = conjugate_subgroup(&g, &h, x);
            assert_eq!(hx.order(), h.order());
            assert_eq!(conjugate_subgroup(&g, &hx, g.inv(x)), h);
            let kx = conjugate_subgroup(&g, &k, x);
            assert_eq!(transporter(&g, &hx, &kx).unwrap().len(), base);
            assert!(centralizer(&g, &hx)
                .unwrap()
                .is_subgroup_of(&normalizer(&g, &hx).unwrap()));
        }
    }
}
