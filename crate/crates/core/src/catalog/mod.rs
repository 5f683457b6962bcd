//! Named group families, a text grammar for them, and their permutation realizations.
//!
//! Grammar:
//!
//! ```text
//! spec    := factor ('x' factor)*
//! factor  := 'S' n | 'A' n | 'C' n | 'Dih:' m | 'EA:' p ':' k | 'Q8' | 'SL2:' q
//!          | 'G288' | 'C2cubeByC3' | 'perm:[' gens ']'
//! gens    := gen (',' gen)*
//! gen     := '()' | ('(' point (' ' point)* ')')+
//! ```
//!
//! Products are left-associative and act on disjoint point sets.

mod field;
mod parse;

use std::fmt;

pub use field::{prime_power, FiniteField};
pub use parse::parse_spec;

use crate::error::{input, Error, Result};
use crate::groupcore::{Limits, PermGroup, Permutation};

/// Largest permutation degree `build` will realize.
pub const MAX_DEGREE: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Sym(usize),
    Alt(usize),
    Cyc(usize),
    /// Dihedral group of order `2m`.
    Dih(usize),
    ElemAb { p: u64, k: u32 },
    Q8,
    SL2(u64),
    /// `A4 ≀ C2` on 8 points.
    G288,
    C2cubeByC3,
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Perm {
        degree: usize,
        generators: Vec<Permutation>,
    },
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Sym(n) => write!(f, "S{n}"),
            GroupSpec::Alt(n) => write!(f, "A{n}"),
            GroupSpec::Cyc(n) => write!(f, "C{n}"),
            GroupSpec::Dih(m) => write!(f, "Dih:{m}"),
            GroupSpec::ElemAb { p, k } => write!(f, "EA:{p}:{k}"),
            GroupSpec::Q8 => write!(f, "Q8"),
            GroupSpec::SL2(q) => write!(f, "SL2:{q}"),
            GroupSpec::G288 => write!(f, "G288"),
            GroupSpec::C2cubeByC3 => write!(f, "C2cubeByC3"),
            GroupSpec::Product(a, b) => write!(f, "{a}x{b}"),
            GroupSpec::Perm { generators, .. } => {
                write!(f, "perm:[")?;
                for (i, g) in generators.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, "]")
            }
        }
    }
}

fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

impl GroupSpec {
    /// Group order predicted by the constructor, when it has a closed form.
    pub fn expected_order(&self) -> Option<u64> {
        match self {
            GroupSpec::Sym(n) => factorial(*n),
            GroupSpec::Alt(n) => factorial(*n).map(|f| if *n >= 2 { f / 2 } else { 1 }),
            GroupSpec::Cyc(n) => Some((*n).max(1) as u64),
            GroupSpec::Dih(m) => Some(2 * (*m).max(1) as u64),
            GroupSpec::ElemAb { p, k } => p.checked_pow(*k),
            GroupSpec::Q8 => Some(8),
            GroupSpec::SL2(q) => q.checked_mul(q.checked_mul(*q)?.checked_sub(1)?),
            GroupSpec::G288 => Some(288),
            GroupSpec::C2cubeByC3 => Some(24),
            GroupSpec::Product(a, b) => a.expected_order()?.checked_mul(b.expected_order()?),
            GroupSpec::Perm { .. } => None,
        }
    }

    /// Number of points the realization acts on.
    pub fn degree(&self) -> usize {
        match self {
            GroupSpec::Sym(n) | GroupSpec::Alt(n) => (*n).max(1),
            GroupSpec::Cyc(n) => prime_power_parts(*n).iter().sum::<usize>().max(1),
            GroupSpec::Dih(m) => match m {
                0 | 1 => 2,
                2 => 4,
                m => *m,
            },
            GroupSpec::ElemAb { p, k } => ((*p as usize) * (*k as usize)).max(1),
            GroupSpec::Q8 => 8,
            GroupSpec::SL2(q) => (*q as usize).saturating_mul(*q as usize).saturating_sub(1),
            GroupSpec::G288 => 8,
            GroupSpec::C2cubeByC3 => 6,
            GroupSpec::Product(a, b) => a.degree().saturating_add(b.degree()),
            GroupSpec::Perm { degree, .. } => *degree,
        }
    }

    /// Generators of the realization, in a fixed order.
    pub fn generators(&self) -> Result<Vec<Permutation>> {
        let degree = self.degree();
        if degree > MAX_DEGREE {
            return Err(Error::Resource {
                what: "permutation degree",
                limit: MAX_DEGREE,
                reached: degree,
            });
        }
        let cyc = |d: usize, cycles: &[&[usize]]| -> Permutation {
            let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
            Permutation::from_cycles(d, &cycles).expect("constructor cycles are valid")
        };
        let full_cycle = |n: usize| -> Vec<usize> { (0..n).collect() };
        let gens = match self {
            GroupSpec::Sym(n) if *n >= 2 => {
                let mut g = vec![cyc(*n, &[&[0, 1]])];
                if *n > 2 {
                    g.push(cyc(*n, &[&full_cycle(*n)]));
                }
                g
            }
            GroupSpec::Alt(n) if *n >= 3 => (2..*n).map(|i| cyc(*n, &[&[0, 1, i]])).collect(),
            GroupSpec::Cyc(n) if *n >= 2 => {
                // one cycle per prime-power factor
                let mut start = 0;
                let cycles: Vec<Vec<usize>> = prime_power_parts(*n)
                    .into_iter()
                    .map(|len| {
                        start += len;
                        (start - len..start).collect()
                    })
                    .collect();
                let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
                vec![cyc(degree, &refs)]
            }
            GroupSpec::Sym(_) | GroupSpec::Alt(_) | GroupSpec::Cyc(_) => vec![],
            GroupSpec::Dih(m) => match m {
                0 | 1 => vec![cyc(2, &[&[0, 1]])],
                2 => vec![cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])],
                m => {
                    let reflection: Vec<usize> = (0..*m).map(|i| (m - i) % m).collect();
                    vec![
                        cyc(*m, &[&full_cycle(*m)]),
                        Permutation::from_images(reflection)?,
                    ]
                }
            },
            GroupSpec::ElemAb { p, k } => {
                let p = *p as usize;
                (0..*k as usize)
                    .map(|i| cyc(degree, &[&(i * p..(i + 1) * p).collect::<Vec<_>>()]))
                    .collect()
            }
            GroupSpec::Q8 => q8_regular(),
            GroupSpec::SL2(q) => sl2_generators(*q)?,
            GroupSpec::G288 => vec![
                cyc(8, &[&[0, 1, 2]]),
                cyc(8, &[&[0, 1], &[2, 3]]),
                cyc(8, &[&[4, 5, 6]]),
                cyc(8, &[&[4, 5], &[6, 7]]),
                cyc(8, &[&[0, 4], &[1, 5], &[2, 6], &[3, 7]]),
            ],
            GroupSpec::C2cubeByC3 => vec![
                cyc(6, &[&[0, 1]]),
                cyc(6, &[&[2, 3]]),
                cyc(6, &[&[4, 5]]),
                cyc(6, &[&[0, 2, 4], &[1, 3, 5]]),
            ],
            GroupSpec::Product(a, b) => {
                let (da, db) = (a.degree(), b.degree());
                let mut g: Vec<Permutation> =
                    a.generators()?.iter().map(|x| x.shifted(0, da + db)).collect();
                g.extend(b.generators()?.iter().map(|x| x.shifted(da, da + db)));
                g
            }
            GroupSpec::Perm { generators, .. } => generators.clone(),
        };
        Ok(gens)
    }
}

/// Regular representation of `Q8` on its own elements `±1, ±i, ±j, ±k`
/// numbered `1, i, j, k, -1, -i, -j, -k`; generated by right multiplication by `i` and `j`.
fn q8_regular() -> Vec<Permutation> {
    // unit quaternion basis products: table[a][b] = (sign, index) for e_a e_b
    const T: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let right = |b: usize| {
        let images: Vec<usize> = (0..8)
            .map(|x| {
                let (neg, a) = (x >= 4, x % 4);
                let (s, c) = T[a][b];
                c + if neg ^ s { 4 } else { 0 }
            })
            .collect();
        Permutation::from_images(images).expect("quaternion table is a group table")
    };
    vec![right(1), right(2)]
}

/// Transvections `[[1,1],[0,1]]`, `[[1,0],[1,1]]` and, over a non-prime field,
/// `diag(w, w⁻¹)` for a primitive `w`, acting on nonzero column vectors.
fn sl2_generators(q: u64) -> Result<Vec<Permutation>> {
    let f = FiniteField::new(q)?;
    let qs = q as u32;
    let index = |a: u32, b: u32| (a * qs + b - 1) as usize;
    let act = |m: [[u32; 2]; 2]| -> Permutation {
        let mut images = vec![0usize; (qs * qs - 1) as usize];
        for a in 0..qs {
            for b in 0..qs {
                if a == 0 && b == 0 {
                    continue;
                }
                let x = f.add(f.mul(m[0][0], a), f.mul(m[0][1], b));
                let y = f.add(f.mul(m[1][0], a), f.mul(m[1][1], b));
                images[index(a, b)] = index(x, y);
            }
        }
        Permutation::from_images(images).expect("invertible matrix permutes vectors")
    };
    let mut gens = vec![act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])];
    if f.degree() > 1 {
        let w = f.primitive_element();
        gens.push(act([[w, 0], [0, f.inv(w)]]));
    }
    Ok(gens)
}

/// Realizes the spec as a permutation group, checking the closed-form order where there is one.
pub fn build(spec: &GroupSpec) -> Result<PermGroup> {
    build_with_limits(spec, &Limits::from_env())
}

pub fn build_with_limits(spec: &GroupSpec, limits: &Limits) -> Result<PermGroup> {
    let too_big = match spec.expected_order() {
        Some(order) => order > limits.max_elements as u64,
        None => has_overflowing_factor(spec),
    };
    if too_big {
        return Err(Error::Resource {
            what: "group order",
            limit: limits.max_elements,
            reached: spec
                .expected_order()
                .and_then(|o| usize::try_from(o).ok())
                .unwrap_or(usize::MAX),
        });
    }
    let gens = spec.generators()?;
    let g = PermGroup::generate_with_limits(spec.degree(), gens, limits)?;
    if let Some(order) = spec.expected_order() {
        if g.order() != order {
            return input(format!(
                "{spec} realized with order {} instead of {order}",
                g.order()
            ));
        }
    }
    Ok(g)
}

/// True when some named factor alone has an order that does not fit in `u64`.
fn has_overflowing_factor(spec: &GroupSpec) -> bool {
    match spec {
        GroupSpec::Product(a, b) => has_overflowing_factor(a) || has_overflowing_factor(b),
        GroupSpec::Perm { .. } => false,
        other => other.expected_order().is_none(),
    }
}

/// Parses and builds in one step.
pub fn build_str(text: &str) -> Result<PermGroup> {
    build(&parse_spec(text)?)
}

/// Named groups the library is exercised on: every group from the worked
/// examples and tables, small members of each family, and a few products.
pub const CATALOG: &[&str] = &[
    "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C12", "C16", "C27",
    "S3", "S4", "S5", "S6",
    "A4", "A5", "A6", "A7", "A8",
    "Dih:3", "Dih:4", "Dih:5", "Dih:6", "Dih:8", "Dih:9", "Dih:12", "Dih:27",
    "EA:2:2", "EA:2:3", "EA:2:4", "EA:3:2", "EA:3:3", "EA:5:2",
    "Q8",
    "SL2:3", "SL2:4", "SL2:5", "SL2:7", "SL2:8", "SL2:9", "SL2:11", "SL2:13",
    "G288", "C2cubeByC3",
    "S3xS3", "A4xC2", "S3xA4", "Q8xC3", "S4xS3", "A5xC3", "S4xS4",
];

/// Catalog entries of order at most `max_order`, in catalog order.
pub fn catalog_up_to(max_order: u64) -> Vec<GroupSpec> {
    CATALOG
        .iter()
        .map(|s| parse_spec(s).expect("catalog entries parse"))
        .filter(|s| s.expected_order().is_some_and(|o| o <= max_order))
        .collect()
}

/// Prime-power factors of `n` in increasing prime order.
fn prime_power_parts(n: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut rest = n;
    let mut d = 2;
    while rest > 1 {
        if d * d > rest {
            parts.push(rest);
            break;
        }
        let mut q = 1;
        while rest.is_multiple_of(d) {
            rest /= d;
            q *= d;
        }
        if q > 1 {
            parts.push(q);
        }
        d += 1;
    }
    parts
}

/// Groups reachable from the grammar with order at most `max_order`: every
/// named family member (skipping duplicate small cases such as `S2 = C2`)
/// and every direct product of two of them, listed deterministically.
///
/// This is far from every group of that order; reports built on it say so.
pub fn constructible_up_to(max_order: u64) -> Vec<GroupSpec> {
    let mut singles: Vec<GroupSpec> = Vec::new();
    let fits = |s: &GroupSpec| s.expected_order().is_some_and(|o| o <= max_order);
    let push = |s: GroupSpec, singles: &mut Vec<GroupSpec>| {
        if fits(&s) {
            singles.push(s);
        }
    };
    for n in 2..=max_order as usize {
        push(GroupSpec::Cyc(n), &mut singles);
    }
    for n in 3..=12 {
        push(GroupSpec::Sym(n), &mut singles);
    }
    for n in 4..=12 {
        push(GroupSpec::Alt(n), &mut singles);
    }
    for m in 3..=(max_order / 2) as usize {
        push(GroupSpec::Dih(m), &mut singles);
    }
    for p in (2..=max_order).filter(|&p| crate::groupcore::is_prime(p)) {
        for k in 2..64 {
            match p.checked_pow(k) {
                Some(o) if o <= max_order => push(GroupSpec::ElemAb { p, k }, &mut singles),
                _ => break,
            }
        }
    }
    push(GroupSpec::Q8, &mut singles);
    for q in 3..=max_order {
        if prime_power(q).is_some() {
            push(GroupSpec::SL2(q), &mut singles);
        }
    }
    push(GroupSpec::G288, &mut singles);
    push(GroupSpec::C2cubeByC3, &mut singles);
    let mut all = singles.clone();
    for (i, a) in singles.iter().enumerate() {
        for b in &singles[i..] {
            let prod = GroupSpec::Product(Box::new(a.clone()), Box::new(b.clone()));
            if fits(&prod) {
                all.push(prod);
            }
        }
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> u64 {
        build_str(s).unwrap().order()
    }

    #[test]
    fn family_orders() {
        assert_eq!(order("S1"), 1);
        assert_eq!(order("S4"), 24);
        assert_eq!(order("A5"), 60);
        assert_eq!(order("A3"), 3);
        assert_eq!(order("C6"), 6);
        assert_eq!(order("Dih:12"), 24);
        assert_eq!(order("Dih:2"), 4);
        assert_eq!(order("Dih:1"), 2);
        assert_eq!(order("EA:3:2"), 9);
        assert_eq!(order("Q8"), 8);
        assert_eq!(order("G288"), 288);
        assert_eq!(order("C2cubeByC3"), 24);
    }

    #[test]
    fn special_linear_orders() {
        let g = build_str("SL2:5").unwrap();
        assert_eq!((g.order(), g.degree()), (120, 24));
        assert_eq!(order("SL2:2"), 6);
        assert_eq!(order("SL2:3"), 24);
        assert_eq!(order("SL2:4"), 60);
        assert_eq!(order("SL2:8"), 504);
        assert_eq!(order("SL2:9"), 720);
    }

    #[test]
    fn q8_is_quaternion() {
        let g = build_str("Q8").unwrap();
        assert!(!g.is_abelian());
        // a single involution
        let involutions = (0..8).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn products_multiply_orders() {
        assert_eq!(order("S3xS3"), 36);
        assert_eq!(order("A4xC2"), 24);
        assert_eq!(order("S3xA4xC2"), 144);
        assert_eq!(build_str("S3xA4").unwrap().degree(), 7);
    }

    #[test]
    fn construction_is_deterministic() {
        let a = parse_spec("SL2:4xDih:5").unwrap();
        let b = parse_spec("SL2:4xDih:5").unwrap();
        assert_eq!(a.generators().unwrap(), b.generators().unwrap());
    }

    #[test]
    fn huge_groups_are_rejected_before_closure() {
        assert!(matches!(build_str("S12"), Err(Error::Resource { .. })));
        assert!(matches!(build_str("S30"), Err(Error::Resource { .. })));
        assert!(matches!(build_str("SL2:101"), Err(Error::Resource { .. })));
    }

    #[test]
    fn catalog_orders() {
        for spec in catalog_up_to(u64::MAX) {
            assert_eq!(build(&spec).unwrap().order(), spec.expected_order().unwrap(), "{spec}");
        }
        assert_eq!(catalog_up_to(2500).len(), CATALOG.len() - 2);
    }

    #[test]
    fn universe_is_bounded_and_deterministic() {
        let u = constructible_up_to(60);
        assert_eq!(u, constructible_up_to(60));
        assert!(u.iter().all(|s| s.expected_order().unwrap() <= 60));
        for name in ["A5", "S4", "Q8", "SL2:3", "C2cubeByC3", "S3xS3", "C2xA4", "Dih:5"] {
            assert!(u.contains(&parse_spec(name).unwrap()), "{name}");
        }
        assert!(!u.contains(&GroupSpec::Sym(2)));
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "S3xS3",
            "A5",
            "Dih:12",
            "EA:2:3",
            "SL2:9",
            "G288xC2cubeByC3",
            "perm:[(0 1 2),(0 1)(2 3)]",
            "Q8xC1",
        ] {
            assert_eq!(parse_spec(s).unwrap().to_string(), s);
        }
    }
}
