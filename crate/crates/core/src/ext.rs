//! The extension field F_{r^t} as F_r[x] modulo a fixed irreducible, with
//! traces, element orders and brute-force discrete logarithms.
//!
//! Elements serialize as the base-r packed integer of their coordinate
//! vector, which also fixes the "smallest element" order used by every
//! deterministic search in the crate.

use crate::error::{Error, Result};
use crate::poly::{PolyFr, SparsePoly};

/// Default cap on the field size q = r^t; everything in scope is tiny and
/// every order/log search is a direct enumeration.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtField {
    r: u64,
    t: usize,
    q: u64,
    modulus: PolyFr,
    // -(low part of modulus), used for in-place reduction
    neg_mod: Vec<u64>,
}

/// An element of F_{r^t}: a length-t coordinate vector over F_r, reduced
/// modulo the field's irreducible.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct ExtElem {
    coords: Vec<u64>,
}

impl ExtElem {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl ExtField {
    /// Build F_{r^t} with the smallest irreducible modulus of degree t in
    /// base-r packed order (deterministic across runs).
    pub fn new(r: u64, t: usize) -> Result<Self> {
        if !crate::fp::is_prime(r) {
            return Err(Error::invalid(format!("base {r} is not prime")));
        }
        if t < 1 {
            return Err(Error::invalid("extension degree must be at least 1"));
        }
        let q = crate::fp::checked_pow_budget(r, t as u32, MAX_FIELD_SIZE, "field size")?;
        // enumerate monic degree-t candidates by packed value of the low part
        let mut low = vec![0u64; t];
        loop {
            let mut coeffs = low.clone();
            coeffs.push(1);
            let cand = PolyFr::new(r, coeffs);
            if cand.is_irreducible() {
                return Self::with_modulus(cand, q);
            }
            let mut i = 0;
            loop {
                if i == t {
                    return Err(Error::Internal(format!(
                        "no irreducible of degree {t} over F_{r} found"
                    )));
                }
                low[i] += 1;
                if low[i] < r {
                    break;
                }
                low[i] = 0;
                i += 1;
            }
        }
    }

    fn with_modulus(modulus: PolyFr, q: u64) -> Result<Self> {
        let r = modulus.r();
        let t = modulus.degree().ok_or_else(|| Error::invalid("zero modulus"))?;
        if !modulus.is_irreducible() && t > 1 {
            return Err(Error::invalid(format!("modulus {modulus} is reducible")));
        }
        let neg_mod = (0..t).map(|j| (r - modulus.coeff(j)) % r).collect();
        Ok(ExtField {
            r,
            t,
            q,
            modulus,
            neg_mod,
        })
    }

    /// Build the field from an explicit irreducible modulus.
    pub fn from_modulus(modulus: PolyFr) -> Result<Self> {
        let r = modulus.r();
        let t = modulus
            .degree()
            .ok_or_else(|| Error::invalid("zero modulus"))? as u32;
        let q = crate::fp::checked_pow_budget(r, t, MAX_FIELD_SIZE, "field size")?;
        Self::with_modulus(modulus, q)
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Field size q = r^t.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &PolyFr {
        &self.modulus
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem {
            coords: vec![0; self.t],
        }
    }

    pub fn one(&self) -> ExtElem {
        self.embed_scalar(1)
    }

    /// The coset of x (zero when t = 1, where the modulus is x itself).
    pub fn gen_x(&self) -> ExtElem {
        let mut coords = vec![0; self.t];
        if self.t > 1 {
            coords[1] = 1;
        } else {
            coords[0] = self.neg_mod[0]; // x = -m_0 mod the linear modulus
        }
        ExtElem { coords }
    }

    pub fn embed_scalar(&self, c: u64) -> ExtElem {
        let mut coords = vec![0; self.t];
        coords[0] = c % self.r;
        ExtElem { coords }
    }

    pub fn is_zero(&self, a: &ExtElem) -> bool {
        a.coords.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &ExtElem) -> bool {
        a.coords[0] == 1 && a.coords[1..].iter().all(|&c| c == 0)
    }

    pub fn packed(&self, a: &ExtElem) -> u64 {
        let mut v = 0u64;
        for &c in a.coords.iter().rev() {
            v = v * self.r + c;
        }
        v
    }

    pub fn from_packed(&self, mut v: u64) -> ExtElem {
        let mut coords = Vec::with_capacity(self.t);
        for _ in 0..self.t {
            coords.push(v % self.r);
            v /= self.r;
        }
        debug_assert_eq!(v, 0, "packed value out of range");
        ExtElem { coords }
    }

    /// All field elements in ascending packed order.
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        (0..self.q).map(|v| self.from_packed(v))
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| (x + y) % self.r)
            .collect();
        ExtElem { coords }
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| (x + self.r - y) % self.r)
            .collect();
        ExtElem { coords }
    }

    pub fn neg(&self, a: &ExtElem) -> ExtElem {
        ExtElem {
            coords: a.coords.iter().map(|&c| (self.r - c) % self.r).collect(),
        }
    }

    pub fn scalar_mul(&self, c: u64, a: &ExtElem) -> ExtElem {
        let c = c % self.r;
        ExtElem {
            coords: a
                .coords
                .iter()
                .map(|&x| (x as u128 * c as u128 % self.r as u128) as u64)
                .collect(),
        }
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let r = self.r as u128;
        let mut buf = vec![0u64; 2 * self.t - 1];
        for (i, &x) in a.coords.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coords.iter().enumerate() {
                buf[i + j] = ((buf[i + j] as u128 + x as u128 * y as u128) % r) as u64;
            }
        }
        self.reduce(buf)
    }

    // fold x^i = x^{i-t} * (-low part of modulus) for i >= t
    fn reduce(&self, mut buf: Vec<u64>) -> ExtElem {
        let r = self.r as u128;
        for i in (self.t..buf.len()).rev() {
            let c = buf[i];
            if c != 0 {
                buf[i] = 0;
                for (j, &nm) in self.neg_mod.iter().enumerate() {
                    let idx = i - self.t + j;
                    buf[idx] = ((buf[idx] as u128 + c as u128 * nm as u128) % r) as u64;
                }
            }
        }
        buf.truncate(self.t);
        ExtElem { coords: buf }
    }

    pub fn pow(&self, a: &ExtElem, mut e: u64) -> ExtElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &ExtElem) -> Result<ExtElem> {
        if self.is_zero(a) {
            return Err(Error::invalid("inverse of zero"));
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Tr(e) = sum of e^{r^j} for j < t, landing in the base field.
    pub fn trace(&self, a: &ExtElem) -> u64 {
        let mut frob = a.clone();
        let mut acc = a.clone();
        for _ in 1..self.t {
            frob = self.pow(&frob, self.r);
            acc = self.add(&acc, &frob);
        }
        debug_assert!(
            acc.coords[1..].iter().all(|&c| c == 0),
            "trace must land in the base field"
        );
        acc.coords[0]
    }

    /// Trace of every element, indexed by packed value.
    pub fn trace_table(&self) -> Vec<u8> {
        (0..self.q)
            .map(|v| self.trace(&self.from_packed(v)) as u8)
            .collect()
    }

    /// Addition on packed values (xor in characteristic 2).
    #[inline]
    pub fn add_packed(&self, a: u64, b: u64) -> u64 {
        if self.r == 2 {
            a ^ b
        } else {
            self.packed(&self.add(&self.from_packed(a), &self.from_packed(b)))
        }
    }

    /// The least d >= 1 with a^d = 1, by direct enumeration.
    pub fn element_order(&self, a: &ExtElem) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::invalid("order of zero is undefined"));
        }
        let mut x = a.clone();
        let mut d = 1u64;
        while !self.is_one(&x) {
            x = self.mul(&x, a);
            d += 1;
        }
        Ok(d)
    }

    /// True iff `a` has order exactly `p`, for prime `p`.
    pub fn has_prime_order(&self, a: &ExtElem, p: u64) -> bool {
        !self.is_zero(a) && !self.is_one(a) && self.is_one(&self.pow(a, p))
    }

    /// Smallest (packed order) element of multiplicative order exactly p.
    pub fn smallest_of_order(&self, p: u64) -> Result<ExtElem> {
        if (self.q - 1) % p != 0 {
            return Err(Error::invalid(format!(
                "no element of order {p} in a group of order {}",
                self.q - 1
            )));
        }
        for v in 1..self.q {
            let e = self.from_packed(v);
            if self.has_prime_order(&e, p) {
                return Ok(e);
            }
        }
        Err(Error::Internal(format!("order-{p} element not found")))
    }

    /// Least s >= 0 with base^s = target, or None when target is outside the
    /// subgroup generated by base. Brute enumeration.
    pub fn discrete_log(&self, base: &ExtElem, target: &ExtElem) -> Result<Option<u64>> {
        if self.is_zero(base) {
            return Err(Error::invalid("discrete log base must be nonzero"));
        }
        if self.is_zero(target) {
            return Ok(None);
        }
        let mut x = self.one();
        for s in 0..self.q {
            if x == *target {
                return Ok(Some(s));
            }
            x = self.mul(&x, base);
            if self.is_one(&x) && s > 0 {
                break;
            }
        }
        if self.is_one(target) {
            Ok(Some(0))
        } else {
            Ok(None)
        }
    }

    pub fn eval_poly(&self, p: &PolyFr, at: &ExtElem) -> ExtElem {
        assert_eq!(p.r(), self.r);
        let mut acc = self.zero();
        for &c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, at);
            if c != 0 {
                acc = self.add(&acc, &self.embed_scalar(c));
            }
        }
        acc
    }

    pub fn eval_sparse(&self, p: &SparsePoly, at: &ExtElem) -> ExtElem {
        assert_eq!(p.r(), self.r);
        let mut acc = self.zero();
        for (&e, &c) in p.support().iter().zip(p.coeffs()) {
            let term = self.scalar_mul(c, &self.pow(at, e));
            acc = self.add(&acc, &term);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> ExtField {
        ExtField::new(2, 2).unwrap()
    }

    fn f8() -> ExtField {
        ExtField::new(2, 3).unwrap()
    }

    #[test]
    fn modulus_selection() {
        assert_eq!(ExtField::new(2, 1).unwrap().modulus().to_string(), "0,1");
        assert_eq!(f4().modulus().to_string(), "1,1,1");
        assert_eq!(f8().modulus().to_string(), "1,1,0,1");
        assert_eq!(
            ExtField::new(2, 5).unwrap().modulus().to_string(),
            "1,0,1,0,0,1"
        );
    }

    #[test]
    fn element_orders() {
        let f = f8();
        assert_eq!(f.element_order(&f.one()).unwrap(), 1);
        assert_eq!(f.element_order(&f.gen_x()).unwrap(), 7);
        let f = f4();
        let x1 = f.from_packed(3); // x + 1
        assert_eq!(f.element_order(&x1).unwrap(), 3);
        assert!(f.element_order(&f.zero()).is_err());
    }

    #[test]
    fn discrete_log_examples() {
        let f = f8();
        let x = f.gen_x();
        assert_eq!(f.discrete_log(&x, &f.one()).unwrap(), Some(0));
        // x^3 = x + 1 under x^3 + x + 1
        assert_eq!(f.discrete_log(&x, &f.from_packed(3)).unwrap(), Some(3));
        assert_eq!(f.discrete_log(&x, &f.zero()).unwrap(), None);
        assert!(f.discrete_log(&f.zero(), &x).is_err());
    }

    #[test]
    fn trace_examples() {
        let f = f4();
        assert_eq!(f.trace(&f.zero()), 0);
        assert_eq!(f.trace(&f.one()), 0); // 1 + 1^2 = 0 over F_2
        assert_eq!(f.trace(&f.gen_x()), 1); // x + x^2 = 1 mod x^2+x+1
    }

    #[test]
    fn trace_is_linear_and_onto() {
        for f in [f4(), f8(), ExtField::new(3, 2).unwrap()] {
            let mut hits_nonzero = false;
            for a in f.elements() {
                for b in f.elements() {
                    let lhs = f.trace(&f.add(&a, &b));
                    let rhs = (f.trace(&a) + f.trace(&b)) % f.r();
                    assert_eq!(lhs, rhs);
                }
                if f.trace(&a) != 0 {
                    hits_nonzero = true;
                }
            }
            assert!(hits_nonzero, "trace must not vanish identically");
        }
    }

    #[test]
    fn field_axioms_exhaustive_f4() {
        let f = f4();
        let els: Vec<ExtElem> = f.elements().collect();
        for a in &els {
            for b in &els {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in &els {
                    assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                    assert_eq!(
                        f.mul(a, &f.add(b, c)),
                        f.add(&f.mul(a, b), &f.mul(a, c))
                    );
                }
            }
            if !f.is_zero(a) {
                assert!(f.is_one(&f.mul(a, &f.inv(a).unwrap())));
            }
        }
    }

    #[test]
    fn inverses_exhaustive_f2048() {
        let f = ExtField::new(2, 11).unwrap();
        assert_eq!(f.q(), 2048);
        for v in 1..f.q() {
            let a = f.from_packed(v);
            let inv = f.inv(&a).unwrap();
            assert!(f.is_one(&f.mul(&a, &inv)), "inverse failed at packed {v}");
        }
    }

    #[test]
    fn frobenius_exhaustive_f8() {
        let f = f8();
        for a in f.elements() {
            for b in f.elements() {
                let lhs = self_pow_sum(&f, &a, &b);
                let rhs = f.add(&f.pow(&a, 2), &f.pow(&b, 2));
                assert_eq!(lhs, rhs);
            }
        }
    }

    fn self_pow_sum(f: &ExtField, a: &ExtElem, b: &ExtElem) -> ExtElem {
        f.pow(&f.add(a, b), 2)
    }

    #[test]
    fn generator_covers_group() {
        for f in [f4(), f8(), ExtField::new(2, 5).unwrap()] {
            let x = f.gen_x();
            let mut seen = std::collections::HashSet::new();
            let mut cur = f.one();
            for _ in 0..f.q() - 1 {
                seen.insert(f.packed(&cur));
                cur = f.mul(&cur, &x);
            }
            assert_eq!(seen.len() as u64, f.q() - 1);
        }
    }

    #[test]
    fn smallest_order_p_element() {
        let f = f8();
        let g = f.smallest_of_order(7).unwrap();
        assert_eq!(f.packed(&g), 2); // x itself
        assert!(f.smallest_of_order(5).is_err());
    }

    #[test]
    fn sparse_eval_matches_dense() {
        let f = f8();
        let dense = PolyFr::new(2, vec![1, 1, 0, 1]);
        let sparse = SparsePoly::from_dense(&dense);
        for a in f.elements() {
            assert_eq!(f.eval_poly(&dense, &a), f.eval_sparse(&sparse, &a));
        }
    }

    #[test]
    fn field_size_budget() {
        assert!(ExtField::new(2, 24).is_err());
    }
}
