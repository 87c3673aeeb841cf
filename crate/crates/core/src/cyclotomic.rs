//! Factorization of the p-th cyclotomic polynomial over F_r via cyclotomic
//! cosets, search for sparse irreducible factors, Mersenne trinomials, and
//! the exhaustive obstruction search over arithmetic-progression supports.

use crate::error::{Error, Result};
use crate::ext::ExtField;
use crate::fp::{is_prime, mult_order, PrimeModulus};
use crate::par;
use crate::poly::{PolyFr, SparsePoly};

/// Default cap on candidate count for the obstruction search.
pub const AP_SEARCH_BUDGET: u64 = 10_000_000;

/// Φ_p together with its coset factorization over F_r.
#[derive(Clone, Debug)]
pub struct CosetFactorization {
    pub p: u64,
    pub r: u64,
    pub t: u64,
    /// Cyclotomic cosets of r mod p, each sorted, ordered by least element.
    pub cosets: Vec<Vec<u64>>,
    /// One monic irreducible factor of degree t per coset, same order.
    pub factors: Vec<PolyFr>,
}

/// A certified sparse irreducible factor of Φ_p over F_r.
#[derive(Clone, Debug)]
pub struct SparseSeed {
    pub p: u64,
    pub r: u64,
    pub t: u64,
    pub poly: SparsePoly,
    /// Whether a root of order p was exhibited during certification.
    pub gamma_exists: bool,
}

/// A polynomial with arithmetic-progression support that meets the root and
/// P(1) conditions; the appendix-style argument promises none with k <= t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApViolation {
    pub s: u64,
    pub k: usize,
    pub coeffs: Vec<u64>,
    /// Packed encoding of one order-p root of the polynomial.
    pub root_packed: u64,
}

/// Partition of {1, .., p-1} into orbits of multiplication by r.
pub fn cyclotomic_cosets(p: u64, r: u64) -> Result<Vec<Vec<u64>>> {
    let pm = PrimeModulus::new(p)?;
    if r % p == 0 {
        return Err(Error::invalid(format!("r = {r} must not be divisible by p = {p}")));
    }
    let t = mult_order(r % p, pm)?;
    let mut seen = vec![false; p as usize];
    let mut cosets = Vec::new();
    for s in 1..p {
        if seen[s as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut e = s;
        loop {
            seen[e as usize] = true;
            orbit.push(e);
            e = (e as u128 * r as u128 % p as u128) as u64;
            if e == s {
                break;
            }
        }
        orbit.sort_unstable();
        cosets.push(orbit);
    }
    debug_assert!(cosets.iter().all(|c| t % c.len() as u64 == 0));
    Ok(cosets)
}

/// Φ_p(x) = 1 + x + ... + x^{p-1} over F_r.
pub fn cyclotomic_poly(p: u64, r: u64) -> PolyFr {
    PolyFr::new(r, vec![1; p as usize])
}

/// Factor Φ_p over F_r into one irreducible of degree t per coset, taking
/// the fixed primitive p-th root ζ = smallest packed element of order p in
/// F_{r^t}. Every structural claim is verified before returning.
pub fn factor_cyclotomic(p: u64, r: u64) -> Result<CosetFactorization> {
    let pm = PrimeModulus::new(p)?;
    if !is_prime(r) {
        return Err(Error::invalid(format!("{r} is not prime")));
    }
    if p == r {
        return Err(Error::invalid("p and r must be distinct primes"));
    }
    let t = mult_order(r % p, pm)?;
    let cosets = cyclotomic_cosets(p, r)?;
    let phi = cyclotomic_poly(p, r);

    let factors: Vec<PolyFr> = if cosets.len() == 1 {
        // Single orbit: the lone coset product is Φ_p itself, so the big
        // field is never needed. The irreducibility check below still runs.
        vec![phi.clone()]
    } else {
        let field = ExtField::new(r, t as usize)?;
        let zeta = field.smallest_of_order(p)?;
        let mut out = Vec::with_capacity(cosets.len());
        for coset in &cosets {
            // product over the coset of (x - ζ^e), coefficients in F_{r^t}
            let mut coeffs = vec![field.one()];
            for &e in coset {
                let root = field.pow(&zeta, e);
                let mut next = vec![field.zero(); coeffs.len() + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    next[i + 1] = field.add(&next[i + 1], c);
                    let lowered = field.mul(c, &root);
                    next[i] = field.sub(&next[i], &lowered);
                }
                coeffs = next;
            }
            let mut base = Vec::with_capacity(coeffs.len());
            for c in &coeffs {
                if c.coords()[1..].iter().any(|&v| v != 0) {
                    return Err(Error::Internal(format!(
                        "coset factor coefficient {:?} escapes the base field",
                        c
                    )));
                }
                base.push(c.coords()[0]);
            }
            out.push(PolyFr::new(r, base));
        }
        out
    };

    // verification: monic irreducible of degree t, pairwise distinct,
    // product equal to Φ_p
    let mut product = PolyFr::one(r);
    for f in &factors {
        if f.degree() != Some(t as usize) || !f.is_monic() {
            return Err(Error::Internal(format!("factor {f} is not monic of degree {t}")));
        }
        if !f.is_irreducible() {
            return Err(Error::Internal(format!("factor {f} is reducible")));
        }
        product = product.mul(f);
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            if factors[i] == factors[j] {
                return Err(Error::Internal("coset factors are not distinct".into()));
            }
        }
    }
    if product != phi {
        return Err(Error::Internal("factor product does not equal Φ_p".into()));
    }

    Ok(CosetFactorization {
        p,
        r,
        t,
        cosets,
        factors,
    })
}

/// Among the irreducible factors of Φ_p over F_r, pick one with support size
/// at most t: smallest support first, ties broken by base-r packed value.
pub fn sparse_factor_search(p: u64, r: u64) -> Result<Option<SparseSeed>> {
    let pm = PrimeModulus::new(p)?;
    if p == r {
        return Err(Error::invalid("p and r must be distinct primes"));
    }
    let t = mult_order(r % p, pm)?;
    if (p - 1) / t == 1 {
        // Φ_p itself is the only factor; its support size is p > t.
        return Ok(None);
    }
    let fact = factor_cyclotomic(p, r)?;
    let mut best: Option<&PolyFr> = None;
    for f in &fact.factors {
        if f.support_size() as u64 > t {
            continue;
        }
        best = match best {
            None => Some(f),
            Some(b) => {
                use std::cmp::Ordering;
                let better = match f.support_size().cmp(&b.support_size()) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => f.packed_cmp(b) == Ordering::Less,
                };
                if better {
                    Some(f)
                } else {
                    Some(b)
                }
            }
        };
    }
    let Some(best) = best else {
        return Ok(None);
    };
    let poly = SparsePoly::from_dense(best);
    certify_seed(p, r, t, poly).map(Some)
}

/// Verify every SparseSeed invariant: P | Φ_p, P(1) != 0, k <= t, and P has
/// a root of order p in F_{r^t}.
fn certify_seed(p: u64, r: u64, t: u64, poly: SparsePoly) -> Result<SparseSeed> {
    let dense = poly.to_dense();
    if !dense.divides(&cyclotomic_poly(p, r)) {
        return Err(Error::VerificationFailed(format!("{dense} does not divide Φ_{p}")));
    }
    if poly.eval_at_one() == 0 {
        return Err(Error::VerificationFailed(format!("P(1) = 0 for {dense}")));
    }
    if poly.k() as u64 > t {
        return Err(Error::VerificationFailed(format!(
            "support size {} exceeds t = {t}",
            poly.k()
        )));
    }
    let field = ExtField::new(r, t as usize)?;
    let zeta = field.smallest_of_order(p)?;
    let mut gamma_exists = false;
    for e in 1..p {
        let root = field.pow(&zeta, e);
        if field.is_zero(&field.eval_sparse(&poly, &root)) {
            debug_assert!(field.has_prime_order(&root, p));
            gamma_exists = true;
            break;
        }
    }
    if !gamma_exists {
        return Err(Error::VerificationFailed(format!("{dense} has no root of order {p}")));
    }
    Ok(SparseSeed {
        p,
        r,
        t,
        poly,
        gamma_exists,
    })
}

/// Result of a prime scan: certified seeds, plus primes that were skipped
/// because their factor field exceeds the size budget.
#[derive(Clone, Debug)]
pub struct ScanOutcome {
    pub seeds: Vec<SparseSeed>,
    /// (p, t) pairs with r^t beyond the field budget.
    pub skipped: Vec<(u64, u64)>,
}

/// Scan primes in `[p_min, p_max]` for sparse factors, in increasing order.
pub fn prime_scan(p_min: u64, p_max: u64, r: u64) -> Result<ScanOutcome> {
    if p_min > p_max {
        return Err(Error::invalid("empty scan range"));
    }
    let candidates: Vec<u64> = (p_min..=p_max)
        .filter(|&p| is_prime(p) && p != r)
        .collect();
    let results = par::try_map_indexed(candidates.len(), |i| {
        let p = candidates[i];
        let pm = PrimeModulus::new(p)?;
        let t = mult_order(r % p, pm)?;
        if (p - 1) / t >= 2 {
            let mut q = 1u64;
            for _ in 0..t {
                q = q.saturating_mul(r);
            }
            if q > crate::ext::MAX_FIELD_SIZE {
                return Ok((p, t, None, true));
            }
        }
        Ok((p, t, sparse_factor_search(p, r)?, false))
    })?;
    let mut seeds = Vec::new();
    let mut skipped = Vec::new();
    for (p, t, seed, over_budget) in results {
        if over_budget {
            skipped.push((p, t));
        } else if let Some(s) = seed {
            seeds.push(s);
        }
    }
    Ok(ScanOutcome { seeds, skipped })
}

/// For p = 2^t - 1 prime: the trinomial P = 1 + x + x^s with P(ζ) = 0 for
/// the fixed p-th root of unity ζ, found by discrete logarithm of 1 + ζ.
pub fn mersenne_trinomial(t: u64) -> Result<Option<(u64, u64, SparsePoly)>> {
    if t < 2 {
        return Err(Error::invalid("need t >= 2"));
    }
    if t >= 63 {
        return Err(Error::budget("2^t - 1 out of range"));
    }
    let p = (1u64 << t) - 1;
    if !is_prime(p) {
        return Ok(None);
    }
    let field = ExtField::new(2, t as usize)?;
    // every element outside {0, 1} generates the group of prime order p
    let zeta = field.smallest_of_order(p)?;
    let one_plus = field.add(&field.one(), &zeta);
    let s = field
        .discrete_log(&zeta, &one_plus)?
        .ok_or_else(|| Error::Internal("1 + ζ must lie in ⟨ζ⟩".into()))?;
    let poly = SparsePoly::new(2, vec![0, 1, s], vec![1, 1, 1])?;
    debug_assert_eq!(poly.eval_at_one(), 1);
    debug_assert!(field.is_zero(&field.eval_sparse(&poly, &zeta)));
    Ok(Some((p, s, poly)))
}

/// Exhaustive search over arithmetic-progression supports: steps
/// s in {1,..,p-1}, lengths k in {2,..,k_max}, coefficient vectors over F_r
/// with nonzero first and last entry. Reports every polynomial
/// P(x) = Σ c_ι x^{ιs} that has a root of order p in F_{r^t}^* and P(1) != 0.
pub fn ap_obstruction_search(p: u64, r: u64, k_max: usize) -> Result<Vec<ApViolation>> {
    ap_obstruction_search_with_budget(p, r, k_max, AP_SEARCH_BUDGET)
}

pub fn ap_obstruction_search_with_budget(
    p: u64,
    r: u64,
    k_max: usize,
    budget: u64,
) -> Result<Vec<ApViolation>> {
    let pm = PrimeModulus::new(p)?;
    if !is_prime(r) || p == r {
        return Err(Error::invalid("p and r must be distinct primes"));
    }
    if k_max < 2 {
        return Err(Error::invalid("k_max must be at least 2"));
    }
    let t = mult_order(r % p, pm)?;

    // candidate count: (p-1) * Σ_k (r-1)^2 r^{k-2}
    let mut per_step = 0u128;
    for k in 2..=k_max {
        let mut c = (r as u128 - 1) * (r as u128 - 1);
        for _ in 0..k - 2 {
            c = c.saturating_mul(r as u128);
        }
        per_step = per_step.saturating_add(c);
    }
    let total = per_step.saturating_mul(p as u128 - 1);
    if total > budget as u128 {
        return Err(Error::budget(format!(
            "{total} candidate polynomials exceed the search budget {budget}"
        )));
    }

    let field = ExtField::new(r, t as usize)?;
    let zeta = field.smallest_of_order(p)?;
    // ζ^j for j mod p: all exponents reduce mod p below
    let zeta_pows: Vec<_> = {
        let mut v = Vec::with_capacity(p as usize);
        let mut cur = field.one();
        for _ in 0..p {
            v.push(cur.clone());
            cur = field.mul(&cur, &zeta);
        }
        v
    };

    let per_s = par::map_indexed((p - 1) as usize, |si| {
        let s = si as u64 + 1;
        let mut found = Vec::new();
        for k in 2..=k_max {
            let mut coeffs = vec![0u64; k];
            coeffs[0] = 1;
            coeffs[k - 1] = 1;
            loop {
                if coeffs[0] != 0 && coeffs[k - 1] != 0 {
                    let p1: u64 = coeffs.iter().sum::<u64>() % r;
                    if p1 != 0 {
                        // evaluate at every order-p element ζ^e
                        for e in 1..p {
                            let mut acc = field.zero();
                            for (iota, &c) in coeffs.iter().enumerate() {
                                if c != 0 {
                                    let exp = (e as u128 * iota as u128 * s as u128
                                        % p as u128)
                                        as usize;
                                    acc = field.add(
                                        &acc,
                                        &field.scalar_mul(c, &zeta_pows[exp]),
                                    );
                                }
                            }
                            if field.is_zero(&acc) {
                                found.push(ApViolation {
                                    s,
                                    k,
                                    coeffs: coeffs.clone(),
                                    root_packed: field.packed(&field.pow(&zeta, e)),
                                });
                                break;
                            }
                        }
                    }
                }
                if !increment_coeffs(&mut coeffs, r) {
                    break;
                }
            }
        }
        found
    });
    Ok(per_s.into_iter().flatten().collect())
}

// odometer over coefficient vectors; first and last stay in 1..r,
// middle digits range over 0..r
fn increment_coeffs(coeffs: &mut [u64], r: u64) -> bool {
    let k = coeffs.len();
    for i in 0..k {
        let lo = if i == 0 || i == k - 1 { 1 } else { 0 };
        coeffs[i] += 1;
        if coeffs[i] < r {
            return true;
        }
        coeffs[i] = lo;
    }
    false
}
