use rustc_hash::FxHashMap;

use super::group::{PermGroup, Subgroup};
use super::ops::is_normal_in;
use super::perm::Permutation;
use crate::error::{input, Result};

/// `N/M` realized as the permutation action of `N` on the cosets of `M`,
/// together with the projection `N → N/M`.
pub struct Quotient {
    group: PermGroup,
    numerator: Subgroup,
    kernel: Subgroup,
    projection: FxHashMap<u32, u32>,
    preimage_reps: Vec<u32>,
}

impl std::fmt::Debug for Quotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Quotient")
            .field("numerator_order", &self.numerator.order())
            .field("kernel_order", &self.kernel.order())
            .field("group", &self.group)
            .finish()
    }
}

/// Builds `N/M`; `M` must be normal in `N`.
pub fn quotient_group(g: &PermGroup, n: &Subgroup, m: &Subgroup) -> Result<Quotient> {
    g.check_parent(n)?;
    g.check_parent(m)?;
    if !is_normal_in(g, n, m) {
        return input(format!(
            "subgroup of order {} is not normal in subgroup of order {}",
            m.order(),
            n.order()
        ));
    }
    // coset id of every element of N; cosets numbered in order of their
    // smallest element
    let mut coset: FxHashMap<u32, u32> = FxHashMap::default();
    let mut reps: Vec<u32> = Vec::new();
    for &x in n.elements() {
        if coset.contains_key(&x) {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &y in m.elements() {
            coset.insert(g.mul(y, x), id);
        }
    }
    let ncosets = reps.len();
    let action = |x: u32| -> Permutation {
        let images: Box<[u16]> = reps
            .iter()
            .map(|&r| coset[&g.mul(r, x)] as u16)
            .collect();
        Permutation::from_raw(images)
    };
    let rep_perms: Vec<Permutation> = reps.iter().map(|&r| action(r)).collect();
    let mut order: Vec<usize> = (0..ncosets).collect();
    order.sort_by(|&a, &b| rep_perms[a].cmp(&rep_perms[b]));
    // position in the sorted element list of each coset
    let mut coset_to_element = vec![0u32; ncosets];
    for (pos, &c) in order.iter().enumerate() {
        coset_to_element[c] = pos as u32;
    }
    let elements: Vec<Permutation> = order.iter().map(|&c| rep_perms[c].clone()).collect();
    let gens: Vec<Permutation> = n
        .generators(g)
        .iter()
        .map(|&x| action(x))
        .filter(|p| !p.is_identity())
        .collect();
    let group = PermGroup::from_sorted_elements(ncosets, gens, elements);
    let projection = coset
        .into_iter()
        .map(|(x, c)| (x, coset_to_element[c as usize]))
        .collect();
    let preimage_reps = order.iter().map(|&c| reps[c]).collect();
    Ok(Quotient {
        group,
        numerator: n.clone(),
        kernel: m.clone(),
        projection,
        preimage_reps,
    })
}

impl Quotient {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn numerator(&self) -> &Subgroup {
        &self.numerator
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// Image of `x ∈ N` in the quotient, or `None` when `x ∉ N`.
    pub fn project(&self, x: u32) -> Option<u32> {
        self.projection.get(&x).copied()
    }

    /// A preimage in `N` of the quotient element `q`.
    pub fn lift(&self, q: u32) -> u32 {
        self.preimage_reps[q as usize]
    }

    /// Image of a subgroup of `N`.
    pub fn image(&self, g: &PermGroup, h: &Subgroup) -> Result<Subgroup> {
        g.check_parent(h)?;
        if !h.is_subgroup_of(&self.numerator) {
            return input("subgroup is not contained in the numerator");
        }
        let mut elems: Vec<u32> = h.elements().iter().map(|&x| self.projection[&x]).collect();
        elems.sort_unstable();
        elems.dedup();
        Ok(Subgroup::from_sorted(&self.group, elems))
    }

    /// Full preimage in `G` of a subgroup of the quotient.
    pub fn preimage(&self, g: &PermGroup, q: &Subgroup) -> Result<Subgroup> {
        self.group.check_parent(q)?;
        let mut elems: Vec<u32> = Vec::with_capacity(q.elements().len() * self.kernel.elements().len());
        for &y in q.elements() {
            let r = self.lift(y);
            elems.extend(self.kernel.elements().iter().map(|&m| g.mul(m, r)));
        }
        elems.sort_unstable();
        Ok(Subgroup::from_sorted(g, elems))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cycles).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::generate(4, vec![perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])]).unwrap()
    }

    #[test]
    fn trivial_quotient() {
        let g = s4();
        let q = quotient_group(&g, &g.whole(), &g.whole()).unwrap();
        assert_eq!(q.group().order(), 1);
    }

    #[test]
    fn s4_mod_v4() {
        let g = s4();
        let v4 = g
            .subgroup_from_perms(&[perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])])
            .unwrap();
        let q = quotient_group(&g, &g.whole(), &v4).unwrap();
        assert_eq!(q.group().order(), 6);
        assert_eq!(q.group().degree(), 6);
        assert!(!q.group().is_abelian());
        // projection is a homomorphism
        for a in 0..24 {
            for b in 0..24 {
                let lhs = q.project(g.mul(a, b)).unwrap();
                let rhs = q.group().mul(q.project(a).unwrap(), q.project(b).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        let top = q.preimage(&g, &q.group().whole()).unwrap();
        assert_eq!(top.order(), 24);
        let bottom = q.preimage(&g, &q.group().trivial_subgroup()).unwrap();
        assert_eq!(bottom, v4);
    }

    #[test]
    fn a4_mod_v4_is_c3() {
        let g = s4();
        let a4 = g
            .subgroup_from_perms(&[perm(4, &[&[0, 1, 2]]), perm(4, &[&[0, 1], &[2, 3]])])
            .unwrap();
        let v4 = g
            .subgroup_from_perms(&[perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])])
            .unwrap();
        let q = quotient_group(&g, &a4, &v4).unwrap();
        assert_eq!(q.group().order(), 3);
        assert!(q.group().is_abelian());
    }

    #[test]
    fn non_normal_kernel_is_rejected() {
        let g = s4();
        let c2 = g.subgroup_from_perms(&[perm(4, &[&[0, 1]])]).unwrap();
        assert!(quotient_group(&g, &g.whole(), &c2).is_err());
    }
}
