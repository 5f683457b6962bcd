//! `p`-subgroups of a group up to conjugacy.
//!
//! Every `p`-subgroup is conjugate into a fixed Sylow subgroup `P`, so all the
//! work happens inside `P`: its subgroup lattice is enumerated once, then
//! fused into `G`-classes. Counts such as `#{L ≤ K : L ~ H}` for a class
//! representative `K ≤ P` are read off the lattice directly.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{input, Error, Result};
use crate::groupcore::{
    is_p_group, is_prime, p_core, p_core_in, p_part, quotient_group, sylow, Limits, PermGroup,
    Subgroup,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scope {
    /// Every `p`-subgroup, the identity included.
    All,
    Nonidentity,
    /// Nonidentity `p`-selfcentralizing subgroups.
    Centric,
    ElementaryAbelian,
    /// Nonidentity `p`-radical subgroups.
    Radical,
}

impl Scope {
    pub const ALL: [Scope; 5] = [
        Scope::All,
        Scope::Nonidentity,
        Scope::Centric,
        Scope::ElementaryAbelian,
        Scope::Radical,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::Nonidentity => "nonidentity",
            Scope::Centric => "centric",
            Scope::ElementaryAbelian => "elementary-abelian",
            Scope::Radical => "radical",
        }
    }

    pub fn admits(self, class: &SubgroupClass) -> bool {
        let nonidentity = !class.representative.is_trivial();
        match self {
            Scope::All => true,
            Scope::Nonidentity => nonidentity,
            Scope::Centric => nonidentity && class.flags.p_selfcentralizing,
            Scope::ElementaryAbelian => nonidentity && class.flags.elementary_abelian,
            Scope::Radical => nonidentity && class.flags.p_radical,
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scope {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scope::ALL
            .into_iter()
            .find(|sc| sc.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown scope `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct ClassFlags {
    pub elementary_abelian: bool,
    pub cyclic: bool,
    pub p_selfcentralizing: bool,
    pub p_radical: bool,
    pub f_radical: bool,
}

#[derive(Debug, Clone)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub class_size: u64,
    pub normalizer: Subgroup,
    pub centralizer: Subgroup,
    pub flags: ClassFlags,
    /// Position among all classes of the lattice (identity is 0).
    pub id: usize,
    /// Index of the representative in [`SylowLattice::subgroups`].
    pub lattice_index: usize,
}

impl SubgroupClass {
    pub fn order(&self) -> u64 {
        self.representative.order()
    }

    pub fn normalizer_order(&self) -> u64 {
        self.normalizer.order()
    }

    pub fn centralizer_order(&self) -> u64 {
        self.centralizer.order()
    }

    /// `|Z(H)| = |H ∩ C_G(H)|`.
    pub fn center_order(&self) -> u64 {
        self.representative
            .elements()
            .iter()
            .filter(|&&x| self.centralizer.contains(x))
            .count() as u64
    }
}

/// The subgroup lattice of one Sylow `p`-subgroup together with the
/// `G`-conjugacy classes of all `p`-subgroups.
pub struct SylowLattice {
    group: PermGroup,
    prime: u64,
    sylow: Subgroup,
    subgroups: Vec<Subgroup>,
    class_of: Vec<usize>,
    classes: Vec<SubgroupClass>,
    /// For each class, the lattice indices of the subgroups of its representative.
    below: Vec<Vec<usize>>,
}

impl fmt::Debug for SylowLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SylowLattice")
            .field("group_order", &self.group.order())
            .field("prime", &self.prime)
            .field("sylow_order", &self.sylow.order())
            .field("subgroups", &self.subgroups.len())
            .field("classes", &self.classes.len())
            .finish()
    }
}

impl SylowLattice {
    pub fn new(g: &PermGroup, p: u64) -> Result<Arc<Self>> {
        Self::with_limits(g, p, &Limits::from_env())
    }

    pub fn with_limits(g: &PermGroup, p: u64, limits: &Limits) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return input(format!("{p} is not prime"));
        }
        let sylow = sylow(g, p)?;
        let (subgroups, maximal) = subgroups_of_p_group(g, &sylow, p, limits.max_subgroups)?;
        let index: FxHashMap<&[u32], usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.elements(), i))
            .collect();

        const UNSEEN: usize = usize::MAX;
        let mut class_of = vec![UNSEEN; subgroups.len()];
        let mut core_orders = FxHashMap::default();
        let group_gens = g.generator_indices();
        let mut classes: Vec<SubgroupClass> = Vec::new();
        let n = g.order() as u32;
        for i in 0..subgroups.len() {
            if class_of[i] != UNSEEN {
                continue;
            }
            let id = classes.len();
            class_of[i] = id;
            let rep = &subgroups[i];
            let gens = rep.generators(g).to_vec();
            let mut normalizer = Vec::new();
            let mut centralizer = Vec::new();
            let mut images = Vec::with_capacity(gens.len());
            for x in 0..n {
                images.clear();
                images.extend(gens.iter().map(|&s| g.conj(s, x)));
                if images.iter().all(|&y| rep.contains(y)) {
                    normalizer.push(x);
                    if images == gens {
                        centralizer.push(x);
                    }
                }
            }
            // the G-class of rep, walked with the generators of G
            let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
            seen.insert(rep.elements().to_vec());
            let mut queue = vec![rep.elements().to_vec()];
            while let Some(m) = queue.pop() {
                for &s in &group_gens {
                    let mut conj: Vec<u32> = m.iter().map(|&y| g.conj(y, s)).collect();
                    conj.sort_unstable();
                    if seen.contains(&conj) {
                        continue;
                    }
                    if let Some(&j) = index.get(conj.as_slice()) {
                        if class_of[j] == UNSEEN {
                            class_of[j] = id;
                        } else if class_of[j] != id {
                            return Err(Error::Invariant("subgroup fused into two classes".into()));
                        }
                    }
                    seen.insert(conj.clone());
                    queue.push(conj);
                }
            }
            let normalizer = Subgroup::from_sorted(g, normalizer);
            let centralizer = Subgroup::from_sorted(g, centralizer);
            let class_size = g.order() / normalizer.order();
            if seen.len() as u64 != class_size {
                return Err(Error::Invariant("class size disagrees with the normalizer index".into()));
            }
            let flags = flags_from(g, p, rep, &normalizer, &centralizer, &mut core_orders)?;
            classes.push(SubgroupClass {
                representative: rep.clone(),
                class_size,
                normalizer,
                centralizer,
                flags,
                id,
                lattice_index: i,
            });
        }
        let mut mark = FixedBitSet::with_capacity(subgroups.len());
        let below = classes
            .iter()
            .map(|c| downward_closure(c.lattice_index, &maximal, &mut mark))
            .collect();
        Ok(Arc::new(SylowLattice {
            group: g.clone(),
            prime: p,
            sylow,
            subgroups,
            class_of,
            classes,
            below,
        }))
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn sylow(&self) -> &Subgroup {
        &self.sylow
    }

    /// All subgroups of the Sylow subgroup, ordered by (order, canonical key).
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    /// Class id of the lattice subgroup at `index`.
    pub fn class_of(&self, index: usize) -> usize {
        self.class_of[index]
    }

    /// Every class, identity first, in table order.
    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    /// Lattice indices of the subgroups of class `id`'s representative.
    pub fn below(&self, id: usize) -> &[usize] {
        &self.below[id]
    }

    /// `#{L ≤ K : L ∈ [H]}` for representatives `H` of class `h` and `K` of class `k`.
    pub fn subconjugates(&self, h: usize, k: usize) -> u64 {
        self.below[k]
            .iter()
            .filter(|&&j| self.class_of[j] == h)
            .count() as u64
    }

    /// Number of `p`-subgroups of `G`.
    pub fn total_subgroups(&self) -> u64 {
        self.classes.iter().map(|c| c.class_size).sum()
    }

    pub fn table(self: &Arc<Self>, scope: Scope) -> SubgroupClassTable {
        let classes = self
            .classes
            .iter()
            .filter(|c| scope.admits(c))
            .cloned()
            .collect();
        SubgroupClassTable {
            lattice: Arc::clone(self),
            scope,
            classes,
        }
    }
}

/// Subgroups of the `p`-group `q ≤ G`, built bottom-up: each subgroup of
/// order `p^(i+1)` is `⟨H, x⟩` for a maximal subgroup `H` and some
/// `x ∈ N_Q(H) \ H` with `x^p ∈ H`.
fn subgroups_of_p_group(
    g: &PermGroup,
    q: &Subgroup,
    p: u64,
    cap: usize,
) -> Result<(Vec<Subgroup>, Vec<Vec<usize>>)> {
    let mut all = vec![g.trivial_subgroup()];
    // maximal subgroups of each subgroup
    let mut maximal: Vec<Vec<usize>> = vec![Vec::new()];
    let mut seen: FxHashMap<Vec<u32>, usize> = FxHashMap::default();
    seen.insert(vec![0], 0);
    let mut level: Vec<usize> = vec![0];
    let mut covered = FixedBitSet::with_capacity(g.order() as usize);
    while !level.is_empty() {
        let mut next = Vec::new();
        for &hi in &level {
            let h = all[hi].clone();
            if h.order() == q.order() {
                continue;
            }
            let hgens = h.generators(g).to_vec();
            covered.clear();
            for &y in h.elements() {
                covered.insert(y as usize);
            }
            for &x in q.elements() {
                if covered.contains(x as usize)
                    || !h.contains(g.pow(x, p))
                    || !hgens.iter().all(|&s| h.contains(g.conj(s, x)))
                {
                    continue;
                }
                let mut elems = Vec::with_capacity(h.elements().len() * p as usize);
                let mut xi = 0u32;
                for _ in 0..p {
                    elems.extend(h.elements().iter().map(|&y| g.mul(y, xi)));
                    xi = g.mul(xi, x);
                }
                elems.sort_unstable();
                for &y in &elems {
                    covered.insert(y as usize);
                }
                if let Some(&k) = seen.get(&elems) {
                    maximal[k].push(hi);
                    continue;
                }
                if all.len() >= cap {
                    return Err(Error::Resource {
                        what: "p-subgroups of the Sylow subgroup",
                        limit: cap,
                        reached: all.len() + 1,
                    });
                }
                seen.insert(elems.clone(), all.len());
                next.push(all.len());
                maximal.push(vec![hi]);
                all.push(Subgroup::from_sorted(g, elems));
            }
        }
        level = next;
    }
    let mut order: Vec<usize> = (0..all.len()).collect();
    order.sort_by(|&a, &b| {
        (all[a].order(), all[a].canonical_key()).cmp(&(all[b].order(), all[b].canonical_key()))
    });
    let mut new_index = vec![0; all.len()];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let mut slots: Vec<Option<Subgroup>> = all.into_iter().map(Some).collect();
    let sorted = order.iter().map(|&i| slots[i].take().unwrap()).collect();
    let maximal = order
        .iter()
        .map(|&i| maximal[i].iter().map(|&j| new_index[j]).collect())
        .collect();
    Ok((sorted, maximal))
}

/// Indices of all subgroups below `top`, sorted, by walking maximal-subgroup edges.
fn downward_closure(top: usize, maximal: &[Vec<usize>], mark: &mut FixedBitSet) -> Vec<usize> {
    mark.clear();
    let mut stack = vec![top];
    mark.insert(top);
    let mut out = Vec::new();
    while let Some(i) = stack.pop() {
        out.push(i);
        for &j in &maximal[i] {
            if !mark.put(j) {
                stack.push(j);
            }
        }
    }
    out.sort_unstable();
    out
}

fn flags_from(
    g: &PermGroup,
    p: u64,
    h: &Subgroup,
    normalizer: &Subgroup,
    centralizer: &Subgroup,
    core_orders: &mut FxHashMap<Vec<u32>, u64>,
) -> Result<ClassFlags> {
    let abelian = h.elements().iter().all(|&x| centralizer.contains(x));
    let elementary_abelian = abelian && h.elements().iter().all(|&x| g.element_order(x) <= p);
    let cyclic = h
        .elements()
        .iter()
        .any(|&x| g.element_order(x) == h.order());
    let center = h.elements().iter().filter(|&&x| centralizer.contains(x)).count() as u64;
    let p_selfcentralizing = p_part(centralizer.order(), p) == center;
    // O_p(N_G(H)/H) = O_p(N_G(H))/H since H is a normal p-subgroup of N_G(H)
    let normalizer_is_p_group = p_part(normalizer.order(), p) == normalizer.order();
    let p_radical = if normalizer_is_p_group {
        normalizer.order() == h.order()
    } else {
        let core = match core_orders.get(normalizer.elements()) {
            Some(&o) => o,
            None => {
                let o = p_core_in(g, normalizer, p)?.order();
                core_orders.insert(normalizer.elements().to_vec(), o);
                o
            }
        };
        core == h.order()
    };
    // C and H are both normal in N, so |CH| = |C||H|/|Z(H)|
    let ch_order = centralizer.order() * h.order() / center;
    let f_radical = if normalizer_is_p_group {
        ch_order == normalizer.order()
    } else if !(normalizer.order() / ch_order).is_multiple_of(p) {
        true
    } else {
        let mut gens = centralizer.generators(g).to_vec();
        gens.extend_from_slice(h.generators(g));
        let ch = g.subgroup_generated(&gens);
        let q = quotient_group(g, normalizer, &ch)?;
        p_core(q.group(), p)?.is_trivial()
    };
    Ok(ClassFlags {
        elementary_abelian,
        cyclic,
        p_selfcentralizing,
        p_radical,
        f_radical,
    })
}

/// Flags of a single nonidentity `p`-subgroup, computed from scratch.
pub fn classify(g: &PermGroup, p: u64, h: &Subgroup) -> Result<ClassFlags> {
    if h.is_trivial() {
        return input("classification needs a nonidentity subgroup");
    }
    if !is_p_group(h, p) {
        return input(format!("subgroup of order {} is not a {p}-group", h.order()));
    }
    let normalizer = crate::groupcore::normalizer(g, h)?;
    let centralizer = crate::groupcore::centralizer(g, h)?;
    flags_from(g, p, h, &normalizer, &centralizer, &mut FxHashMap::default())
}

/// Conjugacy classes of `p`-subgroups in a scope, ordered by (order, canonical key).
#[derive(Debug, Clone)]
pub struct SubgroupClassTable {
    lattice: Arc<SylowLattice>,
    scope: Scope,
    classes: Vec<SubgroupClass>,
}

impl SubgroupClassTable {
    pub fn group(&self) -> &PermGroup {
        self.lattice.group()
    }

    pub fn prime(&self) -> u64 {
        self.lattice.prime()
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn lattice(&self) -> &Arc<SylowLattice> {
        &self.lattice
    }

    /// Position in this table of the class with lattice id `id`.
    pub fn position(&self, id: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.id == id)
    }
}

pub fn enumerate_classes(g: &PermGroup, p: u64, scope: Scope) -> Result<SubgroupClassTable> {
    Ok(SylowLattice::new(g, p)?.table(scope))
}

/// Default group-order cap for [`all_p_subgroups`].
pub const ORACLE_MAX_ORDER: u64 = 2000;

/// Every `p`-subgroup of `G` (identity included), as the `G`-conjugates of
/// the subgroups of one Sylow subgroup; sorted by (order, canonical key).
pub fn all_p_subgroups(g: &PermGroup, p: u64) -> Result<Vec<Subgroup>> {
    if g.order() > ORACLE_MAX_ORDER {
        return Err(Error::Resource {
            what: "group order for element-level enumeration",
            limit: ORACLE_MAX_ORDER as usize,
            reached: g.order() as usize,
        });
    }
    let lattice = SylowLattice::new(g, p)?;
    let mut out: Vec<Vec<u32>> = Vec::new();
    for class in lattice.classes() {
        let mut found: FxHashMap<Vec<u32>, ()> = FxHashMap::default();
        for x in 0..g.order() as u32 {
            let mut conj: Vec<u32> = class
                .representative
                .elements()
                .iter()
                .map(|&y| g.conj(y, x))
                .collect();
            conj.sort_unstable();
            found.entry(conj).or_insert(());
        }
        if found.len() as u64 != class.class_size {
            return Err(Error::Invariant("class size disagrees with orbit length".into()));
        }
        out.extend(found.into_keys());
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out.into_iter().map(|e| Subgroup::from_sorted(g, e)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_str;
    use crate::groupcore::{p_core as core_of, Permutation};

    fn table(spec: &str, p: u64, scope: Scope) -> SubgroupClassTable {
        enumerate_classes(&build_str(spec).unwrap(), p, scope).unwrap()
    }

    #[test]
    fn s3_involutions() {
        let t = table("S3", 2, Scope::Nonidentity);
        assert_eq!(t.len(), 1);
        assert_eq!(t.classes()[0].order(), 2);
        assert_eq!(t.classes()[0].class_size, 3);
    }

    #[test]
    fn a4_at_two() {
        let t = table("A4", 2, Scope::Nonidentity);
        let summary: Vec<(u64, u64)> = t.classes().iter().map(|c| (c.order(), c.class_size)).collect();
        assert_eq!(summary, vec![(2, 3), (4, 1)]);
        let v4 = &t.classes()[1];
        assert!(v4.flags.p_radical && v4.flags.elementary_abelian && v4.flags.p_selfcentralizing);
        assert_eq!(v4.normalizer_order(), 12);
    }

    #[test]
    fn coprime_prime_gives_empty_table() {
        assert!(table("C7", 2, Scope::Nonidentity).is_empty());
        assert_eq!(table("C7", 2, Scope::All).len(), 1);
    }

    #[test]
    fn dihedral_core_is_radical_not_f_radical() {
        let g = build_str("Dih:12").unwrap();
        let o2 = core_of(&g, 2).unwrap();
        assert_eq!(o2.order(), 4);
        let f = classify(&g, 2, &o2).unwrap();
        assert!(f.cyclic && f.p_selfcentralizing && f.p_radical && !f.f_radical);
    }

    #[test]
    fn abelian_p_group_radicality() {
        let g = build_str("EA:2:3").unwrap();
        let lattice = SylowLattice::new(&g, 2).unwrap();
        for c in lattice.classes() {
            let top = c.order() == 8;
            assert_eq!(c.flags.p_radical, top);
            assert!(c.flags.f_radical);
        }
    }

    #[test]
    fn p_group_lattice_counts() {
        // C4 has 3 subgroups, C2^3 has 16, D8 has 10, Q8 has 6
        for (spec, n) in [("C4", 3), ("EA:2:3", 16), ("Dih:4", 10), ("Q8", 6)] {
            let g = build_str(spec).unwrap();
            let l = SylowLattice::new(&g, 2).unwrap();
            assert_eq!(l.subgroups().len(), n, "{spec}");
            assert_eq!(l.total_subgroups(), n as u64, "{spec}");
        }
    }

    #[test]
    fn all_subgroups_small() {
        let count = |s: &str, p| all_p_subgroups(&build_str(s).unwrap(), p).unwrap().len();
        assert_eq!(count("S3", 2), 4);
        assert_eq!(count("C4", 2), 3);
        assert_eq!(count("A4", 2), 5);
    }

    #[test]
    fn subgroup_cap_is_a_resource_error() {
        let g = build_str("EA:2:4").unwrap();
        let limits = Limits {
            max_subgroups: 10,
            ..Limits::default()
        };
        assert!(matches!(
            SylowLattice::with_limits(&g, 2, &limits),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn classify_rejects_identity() {
        let g = build_str("S3").unwrap();
        assert!(classify(&g, 2, &g.trivial_subgroup()).is_err());
        let c3 = g
            .subgroup_from_perms(&[Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap()])
            .unwrap();
        assert!(classify(&g, 2, &c3).is_err());
    }

    #[test]
    fn scope_strings() {
        for s in Scope::ALL {
            assert_eq!(s.as_str().parse::<Scope>().unwrap(), s);
        }
        assert!("everything".parse::<Scope>().is_err());
    }
}
