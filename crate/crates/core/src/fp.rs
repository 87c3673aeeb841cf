//! Residue arithmetic mod small primes and vectors over F_p.

use crate::error::{Error, Result};

/// A prime modulus, certified by trial division at construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeModulus(p))
        } else {
            Err(Error::invalid(format!("{p} is not prime")))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Trial-division primality test; every modulus in scope is small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus > 0);
    let m = modulus as u128;
    let mut base = base as u128 % m;
    let mut acc = 1u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse mod a prime, via Fermat.
pub fn mod_inv(a: u64, p: u64) -> Result<u64> {
    if a % p == 0 {
        return Err(Error::invalid(format!("{a} has no inverse mod {p}")));
    }
    Ok(mod_pow(a, p - 2, p))
}

/// Multiplicative order of `a` mod `p`: the least `t >= 1` with `a^t = 1`.
pub fn mult_order(a: u64, p: PrimeModulus) -> Result<u64> {
    let p = p.get();
    let a = a % p;
    if a == 0 {
        return Err(Error::invalid("multiplicative order of 0 is undefined"));
    }
    let mut x = a;
    let mut t = 1u64;
    while x != 1 {
        x = (x as u128 * a as u128 % p as u128) as u64;
        t += 1;
    }
    Ok(t)
}

/// A vector over F_p; every entry lies in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpVec {
    entries: Vec<u64>,
}

impl FpVec {
    pub fn new(entries: Vec<u64>, p: u64) -> Self {
        debug_assert!(entries.iter().all(|&e| e < p));
        let _ = p;
        FpVec { entries }
    }

    pub fn new_reduced(entries: Vec<u64>, p: u64) -> Self {
        FpVec {
            entries: entries.into_iter().map(|e| e % p).collect(),
        }
    }

    pub fn zero(len: usize) -> Self {
        FpVec {
            entries: vec![0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u64 {
        self.entries[i]
    }

    pub fn dot(&self, other: &FpVec, p: u64) -> u64 {
        assert_eq!(self.len(), other.len(), "dimension mismatch");
        let mut acc = 0u128;
        for (a, b) in self.entries.iter().zip(&other.entries) {
            acc += *a as u128 * *b as u128;
        }
        (acc % p as u128) as u64
    }

    /// `self + scalar * other` componentwise mod p.
    pub fn add_scaled(&self, other: &FpVec, scalar: u64, p: u64) -> FpVec {
        assert_eq!(self.len(), other.len(), "dimension mismatch");
        let s = scalar % p;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| ((*a as u128 + s as u128 * *b as u128) % p as u128) as u64)
            .collect();
        FpVec { entries }
    }

    pub fn add(&self, other: &FpVec, p: u64) -> FpVec {
        self.add_scaled(other, 1, p)
    }

    pub fn neg(&self, p: u64) -> FpVec {
        FpVec {
            entries: self.entries.iter().map(|&a| (p - a) % p).collect(),
        }
    }
}

/// Little-endian base-p packing of a vector; the fixed position order for
/// codeword tables and exhaustive enumerations.
pub fn pack_base_p(v: &FpVec, p: u64) -> u64 {
    let mut idx = 0u64;
    for &e in v.entries().iter().rev() {
        idx = idx * p + e;
    }
    idx
}

pub fn unpack_base_p(mut idx: u64, p: u64, len: usize) -> FpVec {
    let mut entries = Vec::with_capacity(len);
    for _ in 0..len {
        entries.push(idx % p);
        idx /= p;
    }
    FpVec::new(entries, p)
}

/// `p^n` as u64, or an error when it does not fit / exceeds `budget`.
pub fn checked_pow_budget(p: u64, n: u32, budget: u64, what: &str) -> Result<u64> {
    let mut acc = 1u64;
    for _ in 0..n {
        acc = acc
            .checked_mul(p)
            .filter(|&v| v <= budget)
            .ok_or_else(|| Error::budget(format!("{what}: {p}^{n} exceeds budget {budget}")))?;
    }
    Ok(acc)
}

pub(crate) fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Stable per-trial seed derivation: results must not depend on trial order.
pub(crate) fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_add(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(31));
        assert!(is_prime(8191));
        assert!(!is_prime(1));
        assert!(!is_prime(15));
        assert!(!is_prime(2047)); // 23 * 89
    }

    #[test]
    fn mult_order_examples() {
        let p3 = PrimeModulus::new(3).unwrap();
        let p5 = PrimeModulus::new(5).unwrap();
        let p7 = PrimeModulus::new(7).unwrap();
        assert_eq!(mult_order(2, p3).unwrap(), 2);
        assert_eq!(mult_order(2, p7).unwrap(), 3);
        assert_eq!(mult_order(1, p5).unwrap(), 1);
        assert!(mult_order(0, p5).is_err());
    }

    #[test]
    fn order_divides_group_order() {
        for p in [3u64, 5, 7, 11, 13, 23, 31] {
            let pm = PrimeModulus::new(p).unwrap();
            for a in 1..p {
                let t = mult_order(a, pm).unwrap();
                assert_eq!((p - 1) % t, 0, "ord_{p}({a}) = {t} must divide p-1");
            }
        }
    }

    #[test]
    fn pack_unpack_roundtrip() {
        let p = 7u64;
        for idx in 0..7u64.pow(3) {
            let v = unpack_base_p(idx, p, 3);
            assert_eq!(pack_base_p(&v, p), idx);
        }
    }

    #[test]
    fn dot_and_add_scaled() {
        let p = 7;
        let a = FpVec::new(vec![1, 2, 3], p);
        let b = FpVec::new(vec![4, 5, 6], p);
        assert_eq!(a.dot(&b, p), (4 + 10 + 18) % 7);
        let c = a.add_scaled(&b, 3, p);
        assert_eq!(c.entries(), &[(1 + 12) % 7, (2 + 15) % 7, (3 + 18) % 7]);
    }
}
