//! Exact values of additive-character sums.
//!
//! A `CharacterValue` holds an element of (1/denom)·Z[ω_r] as integer
//! multiplicities of the r-th roots of unity. Since 1 + ω + ... + ω^{r-1} = 0
//! for prime r, the canonical form zeroes the last multiplicity and divides
//! out the common gcd; equality is then structural. For r = 2 every value is
//! an exact rational and sign tests are exact; for larger r real-part tests
//! fall back to floating evaluation.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::ext::{ExtElem, ExtField};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharacterValue {
    r: u64,
    counts: Vec<i64>,
    denom: u64,
}

impl CharacterValue {
    pub fn from_counts(r: u64, counts: Vec<i64>, denom: u64) -> Self {
        assert!(r >= 2);
        assert!(denom > 0, "denominator must be positive");
        assert_eq!(counts.len(), r as usize);
        let mut v = CharacterValue { r, counts, denom };
        v.canonicalize();
        v
    }

    /// The value ω_r^j.
    pub fn root_of_unity(r: u64, j: u64) -> Self {
        let mut counts = vec![0i64; r as usize];
        counts[(j % r) as usize] = 1;
        CharacterValue::from_counts(r, counts, 1)
    }

    pub fn one(r: u64) -> Self {
        Self::root_of_unity(r, 0)
    }

    pub fn zero(r: u64) -> Self {
        CharacterValue {
            r,
            counts: vec![0; r as usize],
            denom: 1,
        }
    }

    fn canonicalize(&mut self) {
        let last = self.counts[self.r as usize - 1];
        if last != 0 {
            for c in self.counts.iter_mut() {
                *c -= last;
            }
        }
        let mut g = self.denom as i64;
        for &c in &self.counts {
            g = gcd_i64(g, c.abs());
        }
        if g > 1 {
            for c in self.counts.iter_mut() {
                *c /= g;
            }
            self.denom /= g as u64;
        }
        if self.counts.iter().all(|&c| c == 0) {
            self.denom = 1;
        }
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn is_one(&self) -> bool {
        *self == CharacterValue::one(self.r)
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &CharacterValue) -> Self {
        assert_eq!(self.r, other.r);
        let d = num_integer::lcm(self.denom, other.denom);
        let a = (d / self.denom) as i64;
        let b = (d / other.denom) as i64;
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(x, y)| x * a + y * b)
            .collect();
        CharacterValue::from_counts(self.r, counts, d)
    }

    /// Product via convolution of root-of-unity exponents.
    pub fn mul(&self, other: &CharacterValue) -> Self {
        assert_eq!(self.r, other.r);
        let n = self.r as usize;
        let mut counts = vec![0i64; n];
        for (i, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.counts.iter().enumerate() {
                if b != 0 {
                    counts[(i + j) % n] += a * b;
                }
            }
        }
        CharacterValue::from_counts(self.r, counts, self.denom * other.denom)
    }

    /// Divide by an extra positive integer (averaging).
    pub fn scale_down(&self, extra: u64) -> Self {
        assert!(extra > 0);
        CharacterValue::from_counts(self.r, self.counts.clone(), self.denom * extra)
    }

    pub fn to_complex(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &c) in self.counts.iter().enumerate() {
            if c != 0 {
                let theta = TAU * j as f64 / self.r as f64;
                acc += Complex64::new(theta.cos(), theta.sin()) * c as f64;
            }
        }
        acc / self.denom as f64
    }

    pub fn re(&self) -> f64 {
        self.to_complex().re
    }

    pub fn abs(&self) -> f64 {
        self.to_complex().norm()
    }

    /// Exact for r = 2; floating with the given tolerance otherwise.
    pub fn re_nonpositive(&self, tol: f64) -> bool {
        if self.r == 2 {
            self.counts[0] <= 0
        } else {
            self.re() <= tol
        }
    }

    /// `(numerator, denominator)` when the value is a plain rational, i.e.
    /// every root-of-unity multiplicity beyond the constant one vanishes.
    pub fn as_rational(&self) -> Option<(i64, u64)> {
        if self.counts[1..].iter().all(|&c| c == 0) {
            Some((self.counts[0], self.denom))
        } else {
            None
        }
    }

    /// Wire format: per-root multiplicities over the common denominator.
    pub fn component_string(&self) -> String {
        let d = self.denom;
        let parts: Vec<String> = self.counts.iter().map(|c| format!("{c}/{d}")).collect();
        parts.join(",")
    }
}

impl fmt::Display for CharacterValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some((n, 1)) => write!(f, "{n}"),
            Some((n, d)) => write!(f, "{n}/{d}"),
            None => write!(f, "[{}]", self.component_string()),
        }
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// χ_β(u) = ω_r^{Tr(βu)}: a single exact root of unity.
pub fn character_eval(field: &ExtField, beta: &ExtElem, u: &ExtElem) -> CharacterValue {
    CharacterValue::root_of_unity(field.r(), field.trace(&field.mul(beta, u)))
}
