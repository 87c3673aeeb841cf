//! Polynomials over F_r: dense and sparse representations, ring arithmetic,
//! and irreducibility by trial division over lower-degree irreducibles.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Dense polynomial over F_r, coefficients stored low-to-high with the top
/// coefficient nonzero (the zero polynomial has an empty vector).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyFr {
    r: u64,
    coeffs: Vec<u64>,
}

impl PolyFr {
    pub fn new(r: u64, mut coeffs: Vec<u64>) -> Self {
        assert!(r >= 2);
        for c in coeffs.iter_mut() {
            *c %= r;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyFr { r, coeffs }
    }

    pub fn zero(r: u64) -> Self {
        PolyFr { r, coeffs: vec![] }
    }

    pub fn one(r: u64) -> Self {
        PolyFr::new(r, vec![1])
    }

    pub fn constant(r: u64, c: u64) -> Self {
        PolyFr::new(r, vec![c])
    }

    /// The monomial x.
    pub fn x(r: u64) -> Self {
        PolyFr::new(r, vec![0, 1])
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn add(&self, other: &PolyFr) -> PolyFr {
        assert_eq!(self.r, other.r);
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.r)
            .collect();
        PolyFr::new(self.r, coeffs)
    }

    pub fn sub(&self, other: &PolyFr) -> PolyFr {
        assert_eq!(self.r, other.r);
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| (self.r + self.coeff(i) - other.coeff(i)) % self.r)
            .collect();
        PolyFr::new(self.r, coeffs)
    }

    pub fn mul(&self, other: &PolyFr) -> PolyFr {
        assert_eq!(self.r, other.r);
        if self.is_zero() || other.is_zero() {
            return PolyFr::zero(self.r);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = ((coeffs[i + j] as u128 + a as u128 * b as u128)
                    % self.r as u128) as u64;
            }
        }
        PolyFr::new(self.r, coeffs)
    }

    pub fn mul_scalar(&self, c: u64) -> PolyFr {
        let c = c % self.r;
        PolyFr::new(self.r, self.coeffs.iter().map(|&a| a * c % self.r).collect())
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &PolyFr) -> (PolyFr, PolyFr) {
        assert_eq!(self.r, divisor.r);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let r = self.r;
        let dd = divisor.degree().unwrap();
        let lead_inv = crate::fp::mod_inv(*divisor.coeffs.last().unwrap(), r)
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(dd)];
        while rem.len() >= dd + 1 {
            let top = *rem.last().unwrap();
            if top != 0 {
                let shift = rem.len() - 1 - dd;
                let q = top * lead_inv % r;
                quot[shift] = q;
                for (j, &b) in divisor.coeffs.iter().enumerate() {
                    let idx = shift + j;
                    let sub = q as u128 * b as u128 % r as u128;
                    rem[idx] = ((rem[idx] as u128 + r as u128 - sub) % r as u128) as u64;
                }
            }
            rem.pop();
        }
        (PolyFr::new(r, quot), PolyFr::new(r, rem))
    }

    pub fn rem(&self, divisor: &PolyFr) -> PolyFr {
        self.div_rem(divisor).1
    }

    pub fn divides(&self, other: &PolyFr) -> bool {
        other.rem(self).is_zero()
    }

    pub fn gcd(&self, other: &PolyFr) -> PolyFr {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = crate::fp::mod_inv(*a.coeffs.last().unwrap(), a.r).unwrap();
        a.mul_scalar(inv)
    }

    pub fn eval_residue(&self, x: u64) -> u64 {
        let r = self.r as u128;
        let x = x as u128 % r;
        let mut acc = 0u128;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x + c as u128) % r;
        }
        acc as u64
    }

    /// Number of nonzero coefficients.
    pub fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Ordering by base-r packed value: compare degrees, then coefficients
    /// from the highest exponent down. Used wherever a deterministic
    /// "smallest polynomial" is needed.
    pub fn packed_cmp(&self, other: &PolyFr) -> Ordering {
        assert_eq!(self.r, other.r);
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.coeffs.len()).rev() {
            match self.coeffs[i].cmp(&other.coeffs[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Irreducibility over F_r by trial division against every monic
    /// irreducible of degree at most deg/2.
    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(d) => {
                for q in irreducibles_up_to(self.r, d / 2) {
                    if q.divides(self) {
                        return false;
                    }
                }
                true
            }
        }
    }
}

impl fmt::Display for PolyFr {
    /// Comma-separated coefficients, low to high (the text wire format).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// Parse the comma-separated low-to-high coefficient encoding.
pub fn parse_poly(r: u64, s: &str) -> Result<PolyFr> {
    let coeffs: Vec<u64> = s
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("bad coefficient {tok:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    Ok(PolyFr::new(r, coeffs))
}

/// All monic irreducibles over F_r of degree 1..=max_deg, by a sieve in
/// ascending packed order.
pub fn irreducibles_up_to(r: u64, max_deg: usize) -> Vec<PolyFr> {
    let mut irr: Vec<PolyFr> = Vec::new();
    for d in 1..=max_deg {
        // monic degree-d candidates, low part enumerated as a base-r counter
        let mut low = vec![0u64; d];
        loop {
            let mut coeffs = low.clone();
            coeffs.push(1);
            let cand = PolyFr::new(r, coeffs);
            let composite = irr
                .iter()
                .take_while(|q| q.degree().unwrap() <= d / 2)
                .any(|q| q.divides(&cand));
            if !composite {
                irr.push(cand);
            }
            // increment
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                low[i] += 1;
                if low[i] < r {
                    break;
                }
                low[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    irr
}

/// Sparse polynomial over F_r: strictly increasing support exponents paired
/// with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparsePoly {
    r: u64,
    support: Vec<u64>,
    coeffs: Vec<u64>,
}

impl SparsePoly {
    pub fn new(r: u64, support: Vec<u64>, coeffs: Vec<u64>) -> Result<Self> {
        if support.len() != coeffs.len() {
            return Err(Error::invalid("support/coefficient length mismatch"));
        }
        if !support.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::invalid("support must be strictly increasing"));
        }
        let coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % r).collect();
        if coeffs.iter().any(|&c| c == 0) {
            return Err(Error::invalid("sparse polynomial stores no zero coefficients"));
        }
        Ok(SparsePoly { r, support, coeffs })
    }

    pub fn from_dense(p: &PolyFr) -> Self {
        let mut support = Vec::new();
        let mut coeffs = Vec::new();
        for (i, &c) in p.coeffs().iter().enumerate() {
            if c != 0 {
                support.push(i as u64);
                coeffs.push(c);
            }
        }
        SparsePoly {
            r: p.r(),
            support,
            coeffs,
        }
    }

    pub fn to_dense(&self) -> PolyFr {
        let deg = self.support.last().copied().unwrap_or(0) as usize;
        let mut coeffs = vec![0u64; deg + 1];
        for (&e, &c) in self.support.iter().zip(&self.coeffs) {
            coeffs[e as usize] = c;
        }
        PolyFr::new(self.r, coeffs)
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    /// Support size k: the number of stored terms.
    pub fn k(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<u64> {
        self.support.last().copied()
    }

    /// P(1) = sum of coefficients mod r.
    pub fn eval_at_one(&self) -> u64 {
        self.coeffs.iter().sum::<u64>() % self.r
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dense())
    }
}
