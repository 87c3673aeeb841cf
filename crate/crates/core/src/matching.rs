//! Matching-vector families: for every (p-1)-subset S of [m], indicator
//! vectors u_S, v_S with ⟨u_S, v_T⟩ = 0 iff S = T, lifted through the
//! multinomial expansion of (x_1 + .. + x_m)^l to vectors w_S, d_S with
//! ⟨w_S, d_T⟩ = ⟨u_S, v_T⟩^l, and the homomorphisms f_S(x) = γ^{⟨x, w_S⟩}
//! whose signed combinations recover single coordinates pointwise.

use std::io::{BufRead, Write};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ext::{ExtElem, ExtField};
use crate::fp::{mod_inv, mod_pow, mult_order, FpVec, PrimeModulus};
use crate::poly::SparsePoly;

/// Guard rails for materializing a family; parameter derivation itself has
/// no such limit.
const MAX_FAMILY_K: u128 = 100_000;
const MAX_FAMILY_CELLS: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MVParams {
    pub p: u64,
    pub r: u64,
    /// t = ord_p(r)
    pub t: u64,
    pub m: u64,
    /// l = (p-1)/t
    pub l: u64,
    /// k = C(m, p-1), the number of subsets
    pub k: u128,
    /// n = C(m+l-1, l), the lifted dimension
    pub n: u128,
}

/// Exact binomial coefficient in u128, stepwise with overflow checks.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc
            .checked_mul(n as u128 - k as u128 + i)
            .ok_or_else(|| Error::budget(format!("binomial({n}, {k}) overflows u128")))?;
        acc /= i;
    }
    Ok(acc)
}

pub fn derive_params(p: u64, r: u64, m: u64) -> Result<MVParams> {
    let pm = PrimeModulus::new(p)?;
    PrimeModulus::new(r)?;
    if p == r {
        return Err(Error::invalid("p and r must be distinct primes"));
    }
    if m <= p - 1 {
        return Err(Error::invalid(format!("need m > p-1 = {}, got m = {m}", p - 1)));
    }
    let t = mult_order(r % p, pm)?;
    let l = (p - 1) / t;
    let k = binomial(m, p - 1)?;
    let n = binomial(m + l - 1, l)?;
    Ok(MVParams {
        p,
        r,
        t,
        m,
        l,
        k,
        n,
    })
}

#[derive(Clone, Debug)]
pub struct MVFamily {
    pub params: MVParams,
    /// All (p-1)-subsets of {0,..,m-1} in colexicographic order.
    pub subsets: Vec<Vec<usize>>,
    pub u: Vec<FpVec>,
    pub v: Vec<FpVec>,
    pub w: Vec<FpVec>,
    pub d: Vec<FpVec>,
    /// Exponent vectors of the degree-l monomials, lexicographic from x_1.
    pub monomials: Vec<Vec<u32>>,
    pub field: ExtField,
    /// Smallest element of F_{r^t}^* of order p.
    pub gamma: ExtElem,
}

/// All vectors β in Z_{>=0}^m with Σβ = l, listed so that for l = 1 the
/// order is e_1, e_2, .., e_m (descending lexicographic).
fn monomials_of_degree(m: usize, l: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    gen_monomials(&mut out, &mut cur, 0, l);
    out
}

fn gen_monomials(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, rest: u32) {
    if pos + 1 == cur.len() {
        cur[pos] = rest;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for b in (0..=rest).rev() {
        cur[pos] = b;
        gen_monomials(out, cur, pos + 1, rest - b);
        cur[pos] = 0;
    }
}

/// (p-1)-subsets of {0,..,m-1} in colex order = ascending bitmask order.
fn subsets_colex(m: u64, size: u64, k: u128) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(k as usize);
    let mut mask: u64 = (1 << size) - 1;
    for _ in 0..k {
        let elems: Vec<usize> = (0..m as usize).filter(|&i| mask >> i & 1 == 1).collect();
        out.push(elems);
        // Gosper's hack: next bitmask with the same popcount
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    out
}

/// multinomial coefficient l! / Πβ_i! mod p; valid since l < p
fn multinomial_mod_p(beta: &[u32], l: u64, p: u64) -> u64 {
    let mut num = 1u64;
    for i in 1..=l {
        num = num * (i % p) % p;
    }
    let mut den = 1u64;
    for &b in beta {
        for i in 1..=b as u64 {
            den = den * (i % p) % p;
        }
    }
    num * mod_inv(den, p).expect("factorial below p is a unit") % p
}

fn pow_vec(base: &FpVec, beta: &[u32], p: u64) -> u64 {
    let mut acc = 1u64;
    for (x, &b) in base.entries().iter().zip(beta) {
        if b > 0 {
            acc = acc * mod_pow(*x, b as u64, p) % p;
            if acc == 0 {
                return 0;
            }
        }
    }
    acc
}

pub fn build_family(params: &MVParams) -> Result<MVFamily> {
    let &MVParams { p, r, t, m, l, k, n } = params;
    if m > 63 {
        return Err(Error::budget("m > 63 not supported for subset enumeration"));
    }
    if k > MAX_FAMILY_K || k.saturating_mul(n) > MAX_FAMILY_CELLS {
        return Err(Error::budget(format!(
            "family with k = {k}, n = {n} exceeds the materialization budget"
        )));
    }
    let field = ExtField::new(r, t as usize)?;
    let gamma = field.smallest_of_order(p)?;

    let subsets = subsets_colex(m, p - 1, k);
    let monomials = monomials_of_degree(m as usize, l as u32);
    if monomials.len() as u128 != n {
        return Err(Error::Internal(format!(
            "monomial count {} does not match n = {n}",
            monomials.len()
        )));
    }
    let coeffs: Vec<u64> = monomials
        .iter()
        .map(|beta| multinomial_mod_p(beta, l, p))
        .collect();

    let mut u = Vec::with_capacity(k as usize);
    let mut v = Vec::with_capacity(k as usize);
    let mut w = Vec::with_capacity(k as usize);
    let mut d = Vec::with_capacity(k as usize);
    for s in &subsets {
        let mut ue = vec![0u64; m as usize];
        for &i in s {
            ue[i] = 1;
        }
        let ve: Vec<u64> = ue.iter().map(|&x| (1 + p - x) % p).collect();
        let uv = FpVec::new(ue, p);
        let vv = FpVec::new(ve, p);
        let we: Vec<u64> = monomials.iter().map(|b| pow_vec(&uv, b, p)).collect();
        let de: Vec<u64> = monomials
            .iter()
            .zip(&coeffs)
            .map(|(b, &c)| c * pow_vec(&vv, b, p) % p)
            .collect();
        u.push(uv);
        v.push(vv);
        w.push(FpVec::new(we, p));
        d.push(FpVec::new(de, p));
    }

    let family = MVFamily {
        params: *params,
        subsets,
        u,
        v,
        w,
        d,
        monomials,
        field,
        gamma,
    };
    family.verify_construction()?;
    Ok(family)
}

impl MVFamily {
    pub fn k(&self) -> usize {
        self.subsets.len()
    }

    pub fn n(&self) -> usize {
        self.monomials.len()
    }

    /// Eager invariant check; a failure here is a bug, not bad input.
    fn verify_construction(&self) -> Result<()> {
        let p = self.params.p;
        let l = self.params.l;
        for (i, ui) in self.u.iter().enumerate() {
            for (j, vj) in self.v.iter().enumerate() {
                let uv = ui.dot(vj, p);
                if (uv == 0) != (i == j) {
                    return Err(Error::Internal(format!(
                        "⟨u_{i}, v_{j}⟩ = {uv} breaks the S = T criterion"
                    )));
                }
                let wd = self.w[i].dot(&self.d[j], p);
                if wd != mod_pow(uv, l, p) {
                    return Err(Error::Internal(format!(
                        "⟨w_{i}, d_{j}⟩ = {wd} != ⟨u,v⟩^l at pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// f_i(x) = γ^{⟨x, w_i⟩}.
    pub fn f_eval(&self, i: usize, x: &FpVec) -> Result<ExtElem> {
        if x.len() != self.n() {
            return Err(Error::invalid(format!(
                "x has dimension {}, expected n = {}",
                x.len(),
                self.n()
            )));
        }
        let e = x.dot(&self.w[i], self.params.p);
        Ok(self.field.pow(&self.gamma, e))
    }

    /// Pointwise combination check: Σ_ι c_ι f_i(x + ι d_j) equals
    /// γ^{⟨x,w_i⟩} P(1) when i = j and 0 otherwise. Requires P(γ) = 0.
    pub fn verify_combination_identity(
        &self,
        poly: &SparsePoly,
        i: usize,
        j: usize,
        x: &FpVec,
    ) -> Result<bool> {
        let f = &self.field;
        if poly.r() != self.params.r {
            return Err(Error::invalid("polynomial base field mismatch"));
        }
        if !f.is_zero(&f.eval_sparse(poly, &self.gamma)) {
            return Err(Error::invalid(
                "seed mismatch: γ is not a root of the supplied polynomial",
            ));
        }
        let p = self.params.p;
        let mut lhs = f.zero();
        for (&iota, &c) in poly.support().iter().zip(poly.coeffs()) {
            let shifted = x.add_scaled(&self.d[j], iota % p, p);
            let term = self.f_eval(i, &shifted)?;
            lhs = f.add(&lhs, &f.scalar_mul(c, &term));
        }
        let rhs = if i == j {
            f.scalar_mul(poly.eval_at_one(), &self.f_eval(i, x)?)
        } else {
            f.zero()
        };
        Ok(lhs == rhs)
    }
}

/// Outcome of the pairwise inner-product audit.
#[derive(Clone, Debug)]
pub struct InnerProductReport {
    pub pass: bool,
    pub pairs_checked: usize,
    /// (i, j, offending value) for the first failed pair, if any.
    pub first_failure: Option<(usize, usize, u64)>,
}

/// Check ⟨w_S, d_T⟩ = 0 iff S = T, with off-diagonal values confined to the
/// subgroup of powers of r mod p. Works on possibly-tampered data.
pub fn verify_inner_products(family: &MVFamily) -> InnerProductReport {
    let p = family.params.p;
    let mut powers = std::collections::HashSet::new();
    let mut x = 1u64;
    loop {
        powers.insert(x);
        x = x * (family.params.r % p) % p;
        if x == 1 {
            break;
        }
    }
    let mut pairs = 0;
    for i in 0..family.k() {
        for j in 0..family.k() {
            pairs += 1;
            let wd = family.w[i].dot(&family.d[j], p);
            let ok = if i == j {
                wd == 0
            } else {
                wd != 0 && powers.contains(&wd)
            };
            if !ok {
                return InnerProductReport {
                    pass: false,
                    pairs_checked: pairs,
                    first_failure: Some((i, j, wd)),
                };
            }
        }
    }
    InnerProductReport {
        pass: true,
        pairs_checked: pairs,
        first_failure: None,
    }
}

/// The two counting bounds behind the dimension comparison, as exact
/// integer inequalities: k·p^{p-1} >= m^{p-1} and
/// n·p^l·10^{9l} <= (2·e_lo·t·m)^l·10^{9l}/10^{9l} with e_lo < e a rational
/// lower bound for Euler's number (a smaller right side only strengthens
/// the check).
pub fn sanity_bounds_hold(params: &MVParams) -> bool {
    let &MVParams { p, t, m, l, k, n, .. } = &params;
    let bp = BigUint::from(*p);
    let lhs = BigUint::from(*k) * bp.pow(*p as u32 - 1);
    let rhs = BigUint::from(*m).pow(*p as u32 - 1);
    if lhs < rhs {
        return false;
    }
    // e >= 2.718281828
    const E_NUM: u64 = 2_718_281_828;
    const E_DEN: u64 = 1_000_000_000;
    let lhs = BigUint::from(*n) * (bp * BigUint::from(E_DEN)).pow(*l as u32);
    let rhs = (BigUint::from(2u64) * E_NUM * t * m).pow(*l as u32);
    lhs <= rhs
}

/// Write the family in the plain-text exchange format: a header line
/// `p r t m l k n`, then one `S | u | v | w | d` block line per subset with
/// S as 1-based indices and all vectors space-separated.
pub fn write_family(family: &MVFamily, out: &mut impl Write) -> std::io::Result<()> {
    let q = &family.params;
    writeln!(out, "{} {} {} {} {} {} {}", q.p, q.r, q.t, q.m, q.l, q.k, q.n)?;
    for i in 0..family.k() {
        let s: Vec<String> = family.subsets[i].iter().map(|e| (e + 1).to_string()).collect();
        let fmt = |v: &FpVec| {
            v.entries()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(
            out,
            "{} | {} | {} | {} | {}",
            s.join(" "),
            fmt(&family.u[i]),
            fmt(&family.v[i]),
            fmt(&family.w[i]),
            fmt(&family.d[i]),
        )?;
    }
    Ok(())
}

/// Read a family back, re-deriving the deterministic parts (monomials, γ)
/// and verifying every invariant; tampered vectors are rejected.
pub fn read_family(input: impl BufRead) -> Result<MVFamily> {
    let mut lines = input
        .lines()
        .collect::<std::io::Result<Vec<String>>>()
        .map_err(|e| Error::Parse(e.to_string()))?
        .into_iter()
        .filter(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty family file".into()))?;
    let nums: Vec<u64> = header
        .split_whitespace()
        .map(|tok| tok.parse::<u64>().map_err(|e| Error::Parse(format!("header: {e}"))))
        .collect::<Result<_>>()?;
    if nums.len() != 7 {
        return Err(Error::Parse("header must be `p r t m l k n`".into()));
    }
    let params = derive_params(nums[0], nums[1], nums[3])?;
    if params.t != nums[2] || params.l != nums[4] || params.k != nums[5] as u128
        || params.n != nums[6] as u128
    {
        return Err(Error::Parse("header parameters are inconsistent".into()));
    }

    let mut fresh = build_family(&params)?;
    let parse_vec = |s: &str, len: usize, p: u64| -> Result<FpVec> {
        let entries: Vec<u64> = s
            .split_whitespace()
            .map(|tok| tok.parse::<u64>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<_>>()?;
        if entries.len() != len {
            return Err(Error::Parse(format!(
                "vector has {} entries, expected {len}",
                entries.len()
            )));
        }
        if entries.iter().any(|&e| e >= p) {
            return Err(Error::Parse("vector entry out of range".into()));
        }
        Ok(FpVec::new(entries, p))
    };

    let mut rows = 0usize;
    for (i, line) in lines.enumerate() {
        if i >= fresh.k() {
            return Err(Error::Parse("more blocks than k subsets".into()));
        }
        let parts: Vec<&str> = line.split('|').collect();
        if parts.len() != 5 {
            return Err(Error::Parse(format!("block {i}: expected 5 `|`-fields")));
        }
        let subset: Vec<usize> = parts[0]
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|e| Error::Parse(e.to_string()))
                    .and_then(|x| {
                        if x >= 1 && x <= params.m as usize {
                            Ok(x - 1)
                        } else {
                            Err(Error::Parse(format!("subset element {x} out of range")))
                        }
                    })
            })
            .collect::<Result<_>>()?;
        fresh.subsets[i] = subset;
        fresh.u[i] = parse_vec(parts[1], params.m as usize, params.p)?;
        fresh.v[i] = parse_vec(parts[2], params.m as usize, params.p)?;
        fresh.w[i] = parse_vec(parts[3], fresh.monomials.len(), params.p)?;
        fresh.d[i] = parse_vec(parts[4], fresh.monomials.len(), params.p)?;
        rows += 1;
    }
    if rows != fresh.k() {
        return Err(Error::Parse(format!("expected {} blocks, found {rows}", fresh.k())));
    }
    fresh
        .verify_construction()
        .map_err(|e| Error::VerificationFailed(format!("family file fails invariants: {e}")))?;
    let report = verify_inner_products(&fresh);
    if !report.pass {
        return Err(Error::VerificationFailed(format!(
            "family file fails the inner-product audit at pair {:?}",
            report.first_failure
        )));
    }
    Ok(fresh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn params_examples() {
        let q = derive_params(3, 2, 3).unwrap();
        assert_eq!((q.t, q.l, q.k, q.n), (2, 1, 3, 3));
        let q = derive_params(7, 2, 7).unwrap();
        assert_eq!((q.t, q.l, q.k, q.n), (3, 2, 7, 28));
        let q = derive_params(7, 2, 8).unwrap();
        assert_eq!((q.k, q.n), (28, 36));
        assert!(derive_params(7, 2, 6).is_err());
        assert!(derive_params(7, 7, 9).is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(7, 6).unwrap(), 7);
        assert_eq!(binomial(8, 2).unwrap(), 28);
        assert_eq!(binomial(200, 6).unwrap(), 82_408_626_300);
        assert_eq!(binomial(3, 5).unwrap(), 0);
    }

    #[test]
    fn small_family_structure() {
        let fam = build_family(&derive_params(3, 2, 3).unwrap()).unwrap();
        // colex subsets of size 2 from {0,1,2}: {0,1}, {0,2}, {1,2}
        assert_eq!(fam.subsets, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(fam.u[0].entries(), &[1, 1, 0]);
        assert_eq!(fam.v[0].entries(), &[0, 0, 1]);
        // l = 1: w = u and d = v under the e_1, e_2, e_3 monomial order
        assert_eq!(fam.w[0].entries(), fam.u[0].entries());
        assert_eq!(fam.d[0].entries(), fam.v[0].entries());
        assert_eq!(fam.u[0].dot(&fam.v[1], 3), 1);
    }

    #[test]
    fn monomial_order_is_deterministic() {
        let mons = monomials_of_degree(3, 2);
        assert_eq!(
            mons,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2],
            ]
        );
    }

    #[test]
    fn inner_products_pass_for_p7() {
        let fam = build_family(&derive_params(7, 2, 7).unwrap()).unwrap();
        let report = verify_inner_products(&fam);
        assert!(report.pass);
        assert_eq!(report.pairs_checked, 49);
        // off-diagonal values lie in {1, 2, 4}
        for i in 0..7 {
            for j in 0..7 {
                let wd = fam.w[i].dot(&fam.d[j], 7);
                if i == j {
                    assert_eq!(wd, 0);
                } else {
                    assert!([1, 2, 4].contains(&wd), "got {wd}");
                }
            }
        }
    }

    #[test]
    fn corrupted_family_is_detected() {
        let mut fam = build_family(&derive_params(3, 2, 3).unwrap()).unwrap();
        fam.d[1] = FpVec::zero(fam.n());
        let report = verify_inner_products(&fam);
        assert!(!report.pass);
        assert!(report.first_failure.is_some());
    }

    #[test]
    fn multinomial_expansion_matches_repeated_multiplication() {
        let params = derive_params(7, 2, 7).unwrap();
        let fam = build_family(&params).unwrap();
        let p = params.p;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let y: Vec<u64> = (0..params.m).map(|_| rng.random_range(0..p)).collect();
            let direct = mod_pow(y.iter().sum::<u64>() % p, params.l, p);
            let yv = FpVec::new(y, p);
            let expanded: u64 = fam
                .monomials
                .iter()
                .map(|b| multinomial_mod_p(b, params.l, p) * pow_vec(&yv, b, p) % p)
                .sum::<u64>()
                % p;
            assert_eq!(direct, expanded);
        }
    }

    #[test]
    fn f_is_homomorphism() {
        let fam = build_family(&derive_params(7, 2, 7).unwrap()).unwrap();
        let p = fam.params.p;
        let f = &fam.field;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        assert!(f.is_one(&fam.f_eval(0, &FpVec::zero(fam.n())).unwrap()));
        for _ in 0..100 {
            let x = FpVec::new((0..fam.n()).map(|_| rng.random_range(0..p)).collect(), p);
            let y = FpVec::new((0..fam.n()).map(|_| rng.random_range(0..p)).collect(), p);
            let i = rng.random_range(0..fam.k());
            let lhs = fam.f_eval(i, &x.add(&y, p)).unwrap();
            let rhs = f.mul(&fam.f_eval(i, &x).unwrap(), &fam.f_eval(i, &y).unwrap());
            assert_eq!(lhs, rhs);
            let inv = fam.f_eval(i, &x.neg(p)).unwrap();
            assert!(f.is_one(&f.mul(&fam.f_eval(i, &x).unwrap(), &inv)));
        }
    }

    #[test]
    fn combination_identity_p3_exhaustive() {
        let fam = build_family(&derive_params(3, 2, 3).unwrap()).unwrap();
        let poly = SparsePoly::new(2, vec![0, 1, 2], vec![1, 1, 1]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for idx in 0..27u64 {
                    let x = crate::fp::unpack_base_p(idx, 3, 3);
                    assert!(fam.verify_combination_identity(&poly, i, j, &x).unwrap());
                }
            }
        }
    }

    #[test]
    fn combination_identity_rejects_nonroot_poly() {
        let fam = build_family(&derive_params(3, 2, 3).unwrap()).unwrap();
        // x + 1 does not vanish at γ
        let poly = SparsePoly::new(2, vec![0, 1], vec![1, 1]).unwrap();
        let x = FpVec::zero(fam.n());
        assert!(matches!(
            fam.verify_combination_identity(&poly, 0, 0, &x),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn diagonal_w_d_vanishes_up_to_m8() {
        for (p, m_max) in [(3u64, 8u64), (7, 8)] {
            for m in p..=m_max {
                let fam = build_family(&derive_params(p, 2, m).unwrap()).unwrap();
                for i in 0..fam.k() {
                    assert_eq!(fam.w[i].dot(&fam.d[i], p), 0);
                }
            }
        }
    }

    #[test]
    fn sanity_bounds() {
        for m in [7u64, 10, 20, 40] {
            assert!(sanity_bounds_hold(&derive_params(7, 2, m).unwrap()));
        }
        for m in [3u64, 5, 9] {
            assert!(sanity_bounds_hold(&derive_params(3, 2, m).unwrap()));
        }
    }

    #[test]
    fn family_file_roundtrip() {
        let fam = build_family(&derive_params(7, 2, 7).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_family(&fam, &mut buf).unwrap();
        let back = read_family(std::io::BufReader::new(&buf[..])).unwrap();
        assert_eq!(back.subsets, fam.subsets);
        assert_eq!(back.w, fam.w);
        assert_eq!(back.d, fam.d);
        let mut buf2 = Vec::new();
        write_family(&back, &mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn tampered_family_file_is_rejected() {
        let fam = build_family(&derive_params(3, 2, 3).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_family(&fam, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        // flip one w entry on the first block line
        let tampered = text.replacen("| 1 1 0 |", "| 1 0 0 |", 1);
        assert_ne!(text, tampered);
        assert!(read_family(std::io::BufReader::new(tampered.as_bytes())).is_err());
    }
}
