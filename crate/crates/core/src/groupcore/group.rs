use std::collections::VecDeque;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rustc_hash::{FxHashMap, FxHashSet, FxHasher};

use super::perm::Permutation;
use crate::error::{input, Error, Result};

/// Size caps for element materialization and subgroup enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_elements: usize,
    pub max_subgroups: usize,
}

impl Limits {
    pub const DEFAULT_MAX_ELEMENTS: usize = 1_000_000;
    pub const DEFAULT_MAX_SUBGROUPS: usize = 200_000;

    /// Defaults, with `CHI_MAX_ELEMENTS` overriding the element cap.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var("CHI_MAX_ELEMENTS")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
        {
            limits.max_elements = n;
        }
        limits
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: Self::DEFAULT_MAX_ELEMENTS,
            max_subgroups: Self::DEFAULT_MAX_SUBGROUPS,
        }
    }
}

/// A finite permutation group with all of its elements materialized.
///
/// Elements are stored in canonical (lexicographic) order and referred to by
/// their position in that order, so `0` is always the identity. All group
/// arithmetic below works on these indices.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: FxHashMap<Permutation, u32>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    fingerprint: u64,
    // multiplication table rows, filled on first use; empty for large groups
    rows: Box<[OnceLock<Box<[u32]>>]>,
}

/// Groups up to this order and degree get a lazily filled multiplication table.
const TABLE_MAX_ORDER: usize = 4096;
const TABLE_MAX_DEGREE: usize = 128;

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Closure of a generating set under composition, sorted canonically.
///
/// The empty generating set yields just the identity of `degree`.
pub fn closure(degree: usize, gens: &[Permutation], limits: &Limits) -> Result<Vec<Permutation>> {
    for g in gens {
        if g.degree() != degree {
            return input(format!(
                "generator {g} has degree {} but the group has degree {degree}",
                g.degree()
            ));
        }
    }
    let id = Permutation::identity(degree);
    let mut seen: FxHashSet<Permutation> = FxHashSet::default();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for s in gens {
            let next = e.then(s);
            if !seen.contains(&next) {
                if seen.len() >= limits.max_elements {
                    return Err(Error::Resource {
                        what: "group elements",
                        limit: limits.max_elements,
                        reached: seen.len() + 1,
                    });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(elements)
}

impl PermGroup {
    pub fn generate(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        Self::generate_with_limits(degree, gens, &Limits::from_env())
    }

    pub fn generate_with_limits(
        degree: usize,
        gens: Vec<Permutation>,
        limits: &Limits,
    ) -> Result<Self> {
        let elements = closure(degree, &gens, limits)?;
        let gens = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(Self::from_sorted_elements(degree, gens, elements))
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_sorted_elements(degree, Vec::new(), vec![Permutation::identity(degree)])
    }

    /// `elements` must be a sorted, composition-closed set containing the identity.
    pub(crate) fn from_sorted_elements(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements[0].is_identity());
        let index: FxHashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let inverses = elements
            .iter()
            .map(|e| index[e.inverse().images()])
            .collect();
        let orders = elements.iter().map(|e| e.order() as u32).collect();
        let elements_len = elements.len();
        let mut hasher = FxHasher::default();
        degree.hash(&mut hasher);
        elements.len().hash(&mut hasher);
        for e in &elements {
            e.hash(&mut hasher);
        }
        PermGroup {
            degree,
            generators,
            elements,
            index,
            inverses,
            orders,
            fingerprint: hasher.finish(),
            rows: if elements_len <= TABLE_MAX_ORDER && degree <= TABLE_MAX_DEGREE {
                (0..elements_len).map(|_| OnceLock::new()).collect()
            } else {
                Box::default()
            },
        }
    }

    /// The subgroup `h` as a permutation group in its own right (same degree).
    pub fn subgroup_as_group(&self, h: &Subgroup) -> PermGroup {
        self.check_parent(h).expect("subgroup of another group");
        let gens = h.generators(self).iter().map(|&g| self.element(g).clone()).collect();
        let elements = h.elements().iter().map(|&g| self.element(g).clone()).collect();
        Self::from_sorted_elements(self.degree, gens, elements)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> Vec<u32> {
        self.generators.iter().map(|g| self.index[g.images()]).collect()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p.images()).copied()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn element_order(&self, a: u32) -> u64 {
        self.orders[a as usize] as u64
    }

    fn lookup(&self, images: &[u16]) -> u32 {
        match self.index.get(images) {
            Some(&i) => i,
            None => panic!("product left the group; element set is not closed"),
        }
    }

    /// Index of `a * b` (apply `a`, then `b`).
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match self.rows.get(a as usize) {
            Some(row) => row.get_or_init(|| {
                (0..self.elements.len() as u32)
                    .map(|b| self.mul_direct(a, b))
                    .collect()
            })[b as usize],
            None => self.mul_direct(a, b),
        }
    }

    fn mul_direct(&self, a: u32, b: u32) -> u32 {
        let pa = self.elements[a as usize].images();
        let pb = self.elements[b as usize].images();
        let n = self.degree;
        if n <= 64 {
            let mut buf = [0u16; 64];
            for i in 0..n {
                buf[i] = pb[pa[i] as usize];
            }
            self.lookup(&buf[..n])
        } else {
            let buf: Vec<u16> = pa.iter().map(|&i| pb[i as usize]).collect();
            self.lookup(&buf)
        }
    }

    /// Index of `x^g = g⁻¹ x g`.
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        if !self.rows.is_empty() {
            return self.mul(self.mul(self.inv(g), x), g);
        }
        let px = self.elements[x as usize].images();
        let pg = self.elements[g as usize].images();
        let pgi = self.elements[self.inv(g) as usize].images();
        let n = self.degree;
        if n <= 64 {
            let mut buf = [0u16; 64];
            for i in 0..n {
                buf[i] = pg[px[pgi[i] as usize] as usize];
            }
            self.lookup(&buf[..n])
        } else {
            let buf: Vec<u16> = pgi
                .iter()
                .map(|&i| pg[px[i as usize] as usize])
                .collect();
            self.lookup(&buf)
        }
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        let mut acc = 0u32;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn commutes(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self, (0..self.elements.len() as u32).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self, vec![0])
    }

    /// `⟨gens⟩` computed in index space.
    pub fn subgroup_generated(&self, gens: &[u32]) -> Subgroup {
        self.closure_from(&[0], gens)
    }

    /// Smallest subset containing `seed` closed under right multiplication by
    /// `gens`. When `seed` is a subgroup generated by a subset of `gens`, this
    /// is the subgroup generated by `seed ∪ gens`.
    pub(crate) fn closure_from(&self, seed: &[u32], gens: &[u32]) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.elements.len());
        let mut queue: VecDeque<u32> = VecDeque::new();
        for &s in seed {
            if !members.put(s as usize) {
                queue.push_back(s);
            }
        }
        if !members.contains(0) {
            members.insert(0);
            queue.push_back(0);
        }
        while let Some(e) = queue.pop_front() {
            for &s in gens {
                let next = self.mul(e, s);
                if !members.put(next as usize) {
                    queue.push_back(next);
                }
            }
        }
        let elements: Vec<u32> = members.ones().map(|i| i as u32).collect();
        Subgroup {
            parent: self.fingerprint,
            elements,
            members,
            generators: OnceLock::new(),
        }
    }

    /// Validates closure and builds a subgroup from an arbitrary element list.
    pub fn subgroup_from_elements(&self, elements: &[u32]) -> Result<Subgroup> {
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.iter().any(|&e| e as usize >= self.elements.len()) {
            return input("element index out of range");
        }
        let sub = Subgroup::from_sorted(self, sorted);
        if !sub.contains(0) {
            return input("subset does not contain the identity");
        }
        for &a in sub.elements() {
            if !sub.contains(self.inv(a)) {
                return input("subset is not closed under inverses");
            }
            for &b in sub.elements() {
                if !sub.contains(self.mul(a, b)) {
                    return input("subset is not closed under composition");
                }
            }
        }
        Ok(sub)
    }

    /// Subgroup generated by permutations given explicitly (they must lie in the group).
    pub fn subgroup_from_perms(&self, gens: &[Permutation]) -> Result<Subgroup> {
        let idx = gens
            .iter()
            .map(|g| {
                self.index_of(g)
                    .ok_or_else(|| Error::Input(format!("{g} is not an element of the group")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup_generated(&idx))
    }

    pub(crate) fn check_parent(&self, h: &Subgroup) -> Result<()> {
        if h.parent != self.fingerprint || h.members.len() != self.elements.len() {
            return input("subgroup belongs to a different group");
        }
        Ok(())
    }
}

/// A subgroup of a [`PermGroup`], identified by its sorted element indices.
#[derive(Clone)]
pub struct Subgroup {
    parent: u64,
    elements: Vec<u32>,
    members: FixedBitSet,
    generators: OnceLock<Vec<u32>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parent.hash(state);
        self.elements.hash(state);
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order(), self.elements)
    }
}

impl Subgroup {
    /// `elements` must be sorted, deduplicated and closed.
    pub(crate) fn from_sorted(group: &PermGroup, elements: Vec<u32>) -> Self {
        let mut members = FixedBitSet::with_capacity(group.elements.len());
        for &e in &elements {
            members.insert(e as usize);
        }
        Subgroup {
            parent: group.fingerprint,
            elements,
            members,
            generators: OnceLock::new(),
        }
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    /// Canonical identity: the sorted element set.
    pub fn canonical_key(&self) -> &[u32] {
        &self.elements
    }

    pub fn contains(&self, g: u32) -> bool {
        self.members.contains(g as usize)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent
            && self.elements.len() <= other.elements.len()
            && self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, group: &PermGroup, other: &Subgroup) -> Subgroup {
        let elements = self
            .elements
            .iter()
            .copied()
            .filter(|&e| other.contains(e))
            .collect();
        Subgroup::from_sorted(group, elements)
    }

    /// A small generating set, chosen greedily by descending element order.
    pub fn generators(&self, group: &PermGroup) -> &[u32] {
        self.generators.get_or_init(|| {
            let mut candidates = self.elements.clone();
            candidates.sort_by_key(|&e| (std::cmp::Reverse(group.element_order(e)), e));
            let mut gens: Vec<u32> = Vec::new();
            let mut current = group.trivial_subgroup();
            for e in candidates {
                if current.order() == self.order() {
                    break;
                }
                if !current.contains(e) {
                    gens.push(e);
                    current = group.closure_from(current.elements(), &gens);
                }
            }
            gens
        })
    }
}
