//! Small finite fields `F_q`, `q = p^k`, as lookup tables.
//!
//! An element is the integer whose base-`p` digits are the coefficients of a
//! polynomial in `F_p[x]` reduced modulo a fixed monic irreducible of degree `k`.

use crate::error::{input, Result};
use crate::groupcore::is_prime;

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    k: u32,
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    primitive: u32,
}

/// Splits `q` into `(p, k)` with `q = p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = q;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1 && is_prime(p)).then_some((p, k))
}

fn digits(mut a: u64, p: u64, k: u32) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p` (coefficient vectors, low degree first).
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        // every monic polynomial of degree d
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let Some((p, k)) = prime_power(q) else {
            return input(format!("{q} is not a prime power"));
        };
        if q > 1024 {
            return input(format!("field of order {q} is too large"));
        }
        // smallest monic irreducible of degree k
        let modulus = (0..p.pow(k))
            .map(|low| {
                let mut f = digits(low, p, k);
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");
        let qs = q as usize;
        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&sum, p) as u32;
                let mut prod = vec![0u64; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = poly_rem(&prod, &modulus, p);
                mul[(a * q + b) as usize] = undigits(&r, p) as u32;
            }
        }
        let neg = (0..qs)
            .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u32)
            .collect();
        let mut inv = vec![0u32; qs];
        for a in 1..qs {
            inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u32;
        }
        let order_of = |a: usize| {
            let mut x = a;
            let mut n = 1;
            while x != 1 {
                x = mul[x * qs + a] as usize;
                n += 1;
            }
            n
        };
        let primitive = (1..qs).find(|&a| order_of(a) == qs - 1).unwrap() as u32;
        Ok(FiniteField {
            p,
            k,
            q: qs,
            add,
            mul,
            neg,
            inv,
            primitive,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }
}
