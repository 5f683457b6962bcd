//! Brute-force oracles shared by the integration and acceptance tests.
//! Nothing here calls the lattice, class-table or weighting code it checks.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use psubchi::eulercat::Kind;
use psubchi::groupcore::PermGroup;
use psubchi::moebius::Rational;

pub fn naive_closure(g: &PermGroup, gens: &[u32]) -> BTreeSet<u32> {
    let mut set: BTreeSet<u32> = BTreeSet::from([0]);
    let mut frontier = vec![0u32];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Every `p`-subgroup of `G`, found by adjoining one `p`-element at a time.
pub fn p_subgroups_by_closure(g: &PermGroup, p: u64) -> Vec<Vec<u32>> {
    let p_elements: Vec<u32> = (0..g.order() as u32)
        .filter(|&x| is_power_of(g.element_order(x), p))
        .collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([vec![0]]);
    let mut queue = vec![vec![0u32]];
    while let Some(h) = queue.pop() {
        let members: HashSet<u32> = h.iter().copied().collect();
        for &x in &p_elements {
            if members.contains(&x) {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let k: Vec<u32> = naive_closure(g, &gens).into_iter().collect();
            if is_power_of(k.len() as u64, p) && seen.insert(k.clone()) {
                queue.push(k);
            }
        }
    }
    let mut all: Vec<Vec<u32>> = seen.into_iter().collect();
    all.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    all
}

pub fn conj_set(g: &PermGroup, h: &[u32], x: u32) -> Vec<u32> {
    let mut v: Vec<u32> = h.iter().map(|&y| g.conj(y, x)).collect();
    v.sort_unstable();
    v
}

fn subset(a: &[u32], b: &HashSet<u32>) -> bool {
    a.iter().all(|x| b.contains(x))
}

pub fn centralizer_of(g: &PermGroup, h: &[u32]) -> Vec<u32> {
    (0..g.order() as u32)
        .filter(|&x| h.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        .collect()
}

/// `O^p(C)`: generated by the elements of order prime to `p`.
pub fn p_residual_of(g: &PermGroup, c: &[u32], p: u64) -> usize {
    let gens: Vec<u32> = c
        .iter()
        .copied()
        .filter(|&x| !g.element_order(x).is_multiple_of(p))
        .collect();
    naive_closure(g, &gens).len()
}

/// Morphism count `|C(H, K)|` straight from the definitions; `Ftilde` counts
/// `C_G(H)`–`K` double cosets of the transporter by walking orbits.
pub fn element_morphisms(g: &PermGroup, p: u64, kind: Kind, h: &[u32], k: &[u32]) -> u64 {
    let kset: HashSet<u32> = k.iter().copied().collect();
    if kind == Kind::S {
        return subset(h, &kset) as u64;
    }
    let tr: Vec<u32> = (0..g.order() as u32)
        .filter(|&x| subset(&conj_set(g, h, x), &kset))
        .collect();
    let c = centralizer_of(g, h);
    match kind {
        Kind::S => unreachable!(),
        Kind::T => tr.len() as u64,
        Kind::L => {
            let r = p_residual_of(g, &c, p);
            assert_eq!(tr.len() % r, 0);
            (tr.len() / r) as u64
        }
        Kind::F => {
            assert_eq!(tr.len() % c.len(), 0);
            (tr.len() / c.len()) as u64
        }
        Kind::O => {
            assert_eq!(tr.len() % k.len(), 0);
            (tr.len() / k.len()) as u64
        }
        Kind::Ftilde => {
            let mut left: HashSet<u32> = tr.iter().copied().collect();
            let mut orbits = 0;
            while let Some(&start) = left.iter().next() {
                orbits += 1;
                let mut stack = vec![start];
                left.remove(&start);
                while let Some(x) = stack.pop() {
                    for y in c.iter().map(|&z| g.mul(z, x)).chain(k.iter().map(|&z| g.mul(x, z))) {
                        if left.remove(&y) {
                            stack.push(y);
                        }
                    }
                }
            }
            orbits
        }
    }
}

/// Index of the class of each subgroup in `subs`, given class representatives.
pub fn classify_by_conjugacy(g: &PermGroup, subs: &[Vec<u32>], reps: &[Vec<u32>]) -> Vec<usize> {
    let mut class_of_key: HashMap<Vec<u32>, usize> = HashMap::new();
    for (i, r) in reps.iter().enumerate() {
        for x in 0..g.order() as u32 {
            class_of_key.entry(conj_set(g, r, x)).or_insert(i);
        }
    }
    subs.iter()
        .map(|s| *class_of_key.get(s).expect("every subgroup is conjugate to a representative"))
        .collect()
}

/// `μ(a, c)` for all comparable pairs of a finite poset given by `leq`,
/// computed from the defining recursion along a linear extension.
pub fn poset_mobius(n: usize, leq: impl Fn(usize, usize) -> bool, rank: impl Fn(usize) -> usize) -> HashMap<(usize, usize), i64> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| rank(i));
    let mut mu = HashMap::new();
    for &a in &order {
        let above: Vec<usize> = order.iter().copied().filter(|&c| leq(a, c)).collect();
        for (idx, &c) in above.iter().enumerate() {
            let v = if c == a {
                1
            } else {
                -above[..idx]
                    .iter()
                    .filter(|&&d| leq(d, c))
                    .map(|&d| mu[&(a, d)])
                    .sum::<i64>()
            };
            mu.insert((a, c), v);
        }
    }
    mu
}

/// Dense rational Gaussian elimination: some solution of `m x = rhs`, free
/// variables set to 0, or `None` when inconsistent.
pub fn solve_any(m: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = a[row][col].recip().unwrap();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=cols {
                    let v = &a[row][c] * &f;
                    a[r][c] = &a[r][c] - &v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][cols].clone();
    }
    Some(x)
}
