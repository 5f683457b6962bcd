use std::borrow::Borrow;
use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use crate::error::{input, Result};

/// A bijection of `{0, .., degree - 1}` stored as its image array.
///
/// Products read left to right: `a * b` applies `a` first, then `b`, so
/// `(a * b).image(i) == b.image(a.image(i))`. Conjugation is `x^g = g⁻¹ x g`.
///
/// The derived ordering (lexicographic on images) is the canonical element
/// order used everywhere; the identity is always the smallest permutation of
/// its degree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return input(format!("degree {n} too large"));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return input(format!("image array {images:?} is not a bijection"));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return input(format!("point {a} outside degree {degree}"));
                }
                if touched[a] {
                    return input(format!("point {a} repeated in cycles {cycles:?}"));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    pub(crate) fn from_raw(images: Box<[u16]>) -> Self {
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.degree()].into_boxed_slice();
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each starting at its smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.image(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.image(j);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut ord = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                len += 1;
                j = self.image(j);
            }
            ord = ord.lcm(&len);
        }
        ord
    }

    /// The same permutation acting on `offset..offset + degree` inside a
    /// larger point set of size `new_degree`, fixing everything else.
    pub fn shifted(&self, offset: usize, new_degree: usize) -> Permutation {
        assert!(offset + self.degree() <= new_degree);
        let mut images: Vec<u16> = (0..new_degree as u16).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = offset as u16 + j;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }
}

impl Borrow<[u16]> for Permutation {
    fn borrow(&self) -> &[u16] {
        &self.images
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}
