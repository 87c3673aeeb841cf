//! Dual functions built from a matching-vector family and a sparse
//! polynomial: character selection, exact evaluation (both by brute-force
//! averaging and by rank reduction to the image subspace), hypercube
//! certification, and the generic order-k evaluator with its order-2
//! Fourier decomposition.

use num_complex::Complex64;

use crate::character::{character_eval, CharacterValue};
use crate::error::{Error, Result};
use crate::ext::{ExtElem, ExtField};
use crate::fp::{pack_base_p, unpack_base_p, FpVec};
use crate::matching::MVFamily;
use crate::par;
use crate::poly::SparsePoly;

pub const BRUTE_BUDGET: u64 = 1_000_000;
pub const SUBSPACE_BUDGET: u64 = 10_000_000;
pub const FOURIER_BUDGET: u64 = 10_000;

/// A family bound to a sparse polynomial through a common root γ of order p.
#[derive(Clone, Debug)]
pub struct Binding {
    pub family: MVFamily,
    pub poly: SparsePoly,
    /// Smallest-packed root of `poly` of order p in F_{r^t}^*.
    pub gamma: ExtElem,
}

impl Binding {
    pub fn bind(family: MVFamily, poly: SparsePoly) -> Result<Self> {
        if poly.r() != family.params.r {
            return Err(Error::invalid("polynomial base prime differs from family"));
        }
        if poly.eval_at_one() == 0 {
            return Err(Error::invalid("P(1) = 0: the combination identity degenerates"));
        }
        let f = &family.field;
        let p = family.params.p;
        let mut gamma = None;
        for v in 1..f.q() {
            let e = f.from_packed(v);
            if f.has_prime_order(&e, p) && f.is_zero(&f.eval_sparse(&poly, &e)) {
                gamma = Some(e);
                break;
            }
        }
        let gamma = gamma.ok_or_else(|| {
            Error::invalid(format!(
                "seed mismatch: {} has no root of order {p} in F_{}^{}",
                poly,
                family.params.r,
                family.params.t
            ))
        })?;
        let mut family = family;
        family.gamma = gamma.clone();
        Ok(Binding { family, poly, gamma })
    }

    pub fn k(&self) -> usize {
        self.family.k()
    }

    pub fn n(&self) -> usize {
        self.family.n()
    }

    pub fn field(&self) -> &ExtField {
        &self.family.field
    }
}

/// A binding plus the chosen character: the first nonzero β in packed order
/// whose averaged value z = E_c χ_β(γ^c P(1)) has nonpositive real part.
#[derive(Clone, Debug)]
pub struct DualInstance {
    pub binding: Binding,
    pub beta: ExtElem,
    pub z: CharacterValue,
}

/// Iterate nonzero β in packed order and return the first with Re(z) <= 0,
/// together with the exact z.
pub fn choose_character(binding: &Binding) -> Result<(ExtElem, CharacterValue)> {
    let f = binding.field();
    let p = binding.family.params.p;
    let p1 = f.embed_scalar(binding.poly.eval_at_one());
    for bv in 1..f.q() {
        let beta = f.from_packed(bv);
        let mut counts = vec![0i64; f.r() as usize];
        let mut g = f.one();
        for _ in 0..p {
            let u = f.mul(&g, &p1);
            counts[f.trace(&f.mul(&beta, &u)) as usize] += 1;
            g = f.mul(&g, &binding.gamma);
        }
        let z = CharacterValue::from_counts(f.r(), counts, p);
        if z.re_nonpositive(1e-9) {
            return Ok((beta, z));
        }
    }
    Err(Error::Internal(
        "no character with Re(z) <= 0; averaging guarantees existence".into(),
    ))
}

impl DualInstance {
    pub fn new(binding: Binding) -> Result<Self> {
        let (beta, z) = choose_character(&binding)?;
        Ok(DualInstance { binding, beta, z })
    }

    fn p(&self) -> u64 {
        self.binding.family.params.p
    }

    /// F_a^ι(x) = χ_β(c_ι Σ_j a_j f_j(x)); ι must lie in the support.
    pub fn eval_f(&self, a: &[u8], iota: u64, x: &FpVec) -> Result<CharacterValue> {
        let poly = &self.binding.poly;
        let Some(pos) = poly.support().iter().position(|&e| e == iota) else {
            return Err(Error::invalid(format!("{iota} is not in the support")));
        };
        let c = poly.coeffs()[pos];
        self.check_a(a)?;
        let f = self.binding.field();
        let mut acc = f.zero();
        for (j, &aj) in a.iter().enumerate() {
            if aj != 0 {
                acc = f.add(&acc, &self.binding.family.f_eval(j, x)?);
            }
        }
        Ok(character_eval(f, &self.beta, &f.scalar_mul(c, &acc)))
    }

    fn check_a(&self, a: &[u8]) -> Result<()> {
        if a.len() != self.binding.k() {
            return Err(Error::invalid(format!(
                "a has length {}, expected k = {}",
                a.len(),
                self.binding.k()
            )));
        }
        if a.iter().any(|&x| x > 1) {
            return Err(Error::invalid("a must be a 0/1 vector"));
        }
        Ok(())
    }

    /// φ_a(y) by literal averaging of Π_ι F_a^ι(x + ιy) over all of F_p^n.
    pub fn eval_phi_brute(&self, a: &[u8], y: &FpVec) -> Result<CharacterValue> {
        self.eval_phi_brute_with_budget(a, y, BRUTE_BUDGET)
    }

    pub fn eval_phi_brute_with_budget(
        &self,
        a: &[u8],
        y: &FpVec,
        budget: u64,
    ) -> Result<CharacterValue> {
        self.check_a(a)?;
        let fam = &self.binding.family;
        let f = self.binding.field();
        let p = self.p();
        let n = fam.n();
        let total = crate::fp::checked_pow_budget(p, n as u32, budget, "brute enumeration")?;

        let poly = &self.binding.poly;
        let r = f.r() as usize;
        let counts = par::chunked_fold(
            total as usize,
            vec![0i64; r],
            |mut counts, idx| {
                let x = unpack_base_p(idx as u64, p, n);
                // χ(Σ_ι c_ι Σ_j a_j f_j(x + ι y)) term by term
                let mut arg = f.zero();
                for (&iota, &c) in poly.support().iter().zip(poly.coeffs()) {
                    let shifted = x.add_scaled(y, iota % p, p);
                    let mut inner = f.zero();
                    for (j, &aj) in a.iter().enumerate() {
                        if aj != 0 {
                            inner = f.add(&inner, &fam.f_eval(j, &shifted).unwrap());
                        }
                    }
                    arg = f.add(&arg, &f.scalar_mul(c, &inner));
                }
                counts[f.trace(&f.mul(&self.beta, &arg)) as usize] += 1;
                counts
            },
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
        Ok(CharacterValue::from_counts(f.r(), counts, total))
    }

    /// φ_a(y) by the subspace reduction: the product collapses to
    /// χ(Σ_j a_j γ^{⟨x,w_j⟩} P(γ^{⟨y,w_j⟩})), and x only enters through the
    /// linear image of x ↦ (⟨x,w_j⟩)_j, enumerated from a Gaussian basis.
    pub fn eval_phi_exact(&self, a: &[u8], y: &FpVec) -> Result<CharacterValue> {
        self.eval_phi_exact_with_budget(a, y, SUBSPACE_BUDGET)
    }

    pub fn eval_phi_exact_with_budget(
        &self,
        a: &[u8],
        y: &FpVec,
        budget: u64,
    ) -> Result<CharacterValue> {
        self.check_a(a)?;
        let fam = &self.binding.family;
        let f = self.binding.field();
        let p = self.p();
        if y.len() != fam.n() {
            return Err(Error::invalid("y has the wrong dimension"));
        }

        // P_y(j) = P(γ^{⟨y, w_j⟩}); indices with zero value drop out
        let mut active: Vec<usize> = Vec::new();
        let mut p_y: Vec<ExtElem> = Vec::new();
        for (j, &aj) in a.iter().enumerate() {
            if aj == 0 {
                continue;
            }
            let g = f.pow(&self.binding.gamma, y.dot(&fam.w[j], p));
            let val = f.eval_sparse(&self.binding.poly, &g);
            if !f.is_zero(&val) {
                active.push(j);
                p_y.push(val);
            }
        }
        if active.is_empty() {
            return Ok(CharacterValue::one(f.r()));
        }

        // column space of the |active| x n matrix of w rows
        let rows = active.len();
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::new(); // (pivot, vector)
        for col in 0..fam.n() {
            let mut vec: Vec<u64> = active.iter().map(|&j| fam.w[j].get(col)).collect();
            for (pivot, b) in &basis {
                let c = vec[*pivot];
                if c != 0 {
                    // vec -= c * b
                    let c_neg = p - c;
                    for (x, &bv) in vec.iter_mut().zip(b) {
                        *x = (*x + c_neg * bv % p) % p;
                    }
                }
            }
            if let Some(pivot) = vec.iter().position(|&x| x != 0) {
                let inv = crate::fp::mod_inv(vec[pivot], p)?;
                for x in vec.iter_mut() {
                    *x = *x * inv % p;
                }
                basis.push((pivot, vec));
            }
        }
        let rank = basis.len() as u32;
        let points = crate::fp::checked_pow_budget(p, rank, budget, "subspace enumeration")?;

        // tables: γ^c * P_y(j) packed, per active row
        let tables: Vec<Vec<u64>> = (0..rows)
            .map(|jj| {
                let mut row = Vec::with_capacity(p as usize);
                let mut g = p_y[jj].clone();
                for _ in 0..p {
                    row.push(f.packed(&g));
                    g = f.mul(&g, &self.binding.gamma);
                }
                row
            })
            .collect();
        let trace_tbl: Vec<u8> = f.trace_table();
        let beta_mul: Vec<u8> = if f.q() <= 1 << 16 {
            (0..f.q())
                .map(|v| trace_tbl[f.packed(&f.mul(&self.beta, &f.from_packed(v))) as usize])
                .collect()
        } else {
            Vec::new()
        };

        let r = f.r() as usize;
        let mut counts = vec![0i64; r];
        let mut digits = vec![0u64; rank as usize];
        let mut v = vec![0u64; rows];
        for step in 0..points {
            let mut arg_packed = 0u64;
            for (jj, &vj) in v.iter().enumerate() {
                arg_packed = f.add_packed(arg_packed, tables[jj][vj as usize]);
            }
            let idx = if beta_mul.is_empty() {
                f.trace(&f.mul(&self.beta, &f.from_packed(arg_packed))) as usize
            } else {
                beta_mul[arg_packed as usize] as usize
            };
            counts[idx] += 1;
            if step + 1 == points {
                break;
            }
            // odometer over basis coefficients; p additions of a basis
            // vector cancel mod p, so carries need no undo
            let mut i = 0;
            loop {
                for (x, &bv) in v.iter_mut().zip(&basis[i].1) {
                    *x = (*x + bv) % p;
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
        Ok(CharacterValue::from_counts(f.r(), counts, points))
    }
}

/// How to pick the a-vectors for certification.
#[derive(Clone, Debug)]
pub enum CertifyMode {
    /// All 2^k sign patterns; requires k <= 12.
    Exhaustive,
    /// An explicit list of 0/1 vectors.
    List(Vec<Vec<u8>>),
    /// `count` vectors drawn from a seeded stream.
    Sample { count: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct CheckedTriple {
    pub a: Vec<u8>,
    pub i: usize,
    pub value: CharacterValue,
}

/// Certificate that φ_a(d_i) = z^{a_i} over the checked set.
#[derive(Clone, Debug)]
pub struct CubeCertificate {
    pub k: usize,
    pub z: CharacterValue,
    pub d: Vec<FpVec>,
    pub checked: Vec<CheckedTriple>,
    pub exhaustive: bool,
}

impl DualInstance {
    /// Verify φ_a(d_i) = 1 when a_i = 0 and = z when a_i = 1, exactly.
    pub fn certify_hypercube(&self, mode: CertifyMode) -> Result<CubeCertificate> {
        let k = self.binding.k();
        let (a_list, exhaustive) = match mode {
            CertifyMode::Exhaustive => {
                if k > 12 {
                    return Err(Error::budget(format!(
                        "exhaustive certification needs k <= 12, got {k}"
                    )));
                }
                let list = (0..1u32 << k)
                    .map(|mask| (0..k).map(|i| (mask >> i & 1) as u8).collect())
                    .collect();
                (list, true)
            }
            CertifyMode::List(list) => (list, false),
            CertifyMode::Sample { count, seed } => {
                use rand::Rng;
                use rand::SeedableRng;
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let list = (0..count)
                    .map(|_| (0..k).map(|_| rng.random_range(0..2u8)).collect())
                    .collect();
                (list, false)
            }
        };

        let one = CharacterValue::one(self.binding.field().r());
        let pairs = a_list.len() * k;
        let results = par::try_map_indexed(pairs, |idx| {
            let (ai, i) = (idx / k, idx % k);
            let a = &a_list[ai];
            let value = self.eval_phi_exact(a, &self.binding.family.d[i])?;
            Ok(CheckedTriple {
                a: a.clone(),
                i,
                value,
            })
        })?;
        for triple in &results {
            let expected = if triple.a[triple.i] == 1 { &self.z } else { &one };
            if triple.value != *expected {
                return Err(Error::VerificationFailed(format!(
                    "φ_a(d_{}) = {} but expected {} for a = {:?}",
                    triple.i, triple.value, expected, triple.a
                )));
            }
        }
        Ok(CubeCertificate {
            k,
            z: self.z.clone(),
            d: self.binding.family.d.clone(),
            checked: results,
            exhaustive,
        })
    }
}

/// Generic order-k dual function value: E_x Π_j f_j(x + i_j y) for
/// unit-disc-valued tables over F_p^n, indexed by base-p packing.
pub fn generic_dual_eval(
    p: u64,
    n: usize,
    i_vec: &[u64],
    f_tables: &[Vec<Complex64>],
    y: &FpVec,
    budget: u64,
) -> Result<Complex64> {
    if i_vec.len() != f_tables.len() || i_vec.is_empty() {
        return Err(Error::invalid("need one table per pattern entry"));
    }
    let total = crate::fp::checked_pow_budget(p, n as u32, budget, "dual evaluation")? as usize;
    for t in f_tables {
        if t.len() != total {
            return Err(Error::invalid("table size must be p^n"));
        }
        if t.iter().any(|v| v.norm() > 1.0 + 1e-12) {
            return Err(Error::invalid("tables must map into the unit disc"));
        }
    }
    if y.len() != n {
        return Err(Error::invalid("y has the wrong dimension"));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for idx in 0..total {
        let x = unpack_base_p(idx as u64, p, n);
        let mut prod = Complex64::new(1.0, 0.0);
        for (j, &ij) in i_vec.iter().enumerate() {
            let pos = pack_base_p(&x.add_scaled(y, ij % p, p), p) as usize;
            prod *= f_tables[j][pos];
        }
        acc += prod;
    }
    Ok(acc / total as f64)
}

/// Order-2 decomposition data: the dual function's Fourier coefficients are
/// supported on the (i_2 - i_1)-dilated frequencies with
/// φ̂(dξ) = Σ f̂_1(-ξ) f̂_2(ξ), and carry total mass at most 1.
#[derive(Clone, Debug)]
pub struct FourierReport {
    /// φ̂ indexed by packed frequency.
    pub coeffs: Vec<Complex64>,
    pub l1: f64,
    pub dilation: u64,
    /// max |φ̂(η) - Σ_{dξ=η} f̂_1(-ξ)f̂_2(ξ)|
    pub structure_err: f64,
    /// max_y |Σ_η φ̂(η) e(⟨η,y⟩) - φ(y)|
    pub recon_err: f64,
}

pub fn fourier_decompose_order2(
    p: u64,
    n: usize,
    i_pair: [u64; 2],
    f1: &[Complex64],
    f2: &[Complex64],
) -> Result<FourierReport> {
    let total = crate::fp::checked_pow_budget(p, n as u32, FOURIER_BUDGET, "Fourier demo")? as usize;
    let tables = [f1.to_vec(), f2.to_vec()];
    let phi: Vec<Complex64> = (0..total)
        .map(|yi| {
            let y = unpack_base_p(yi as u64, p, n);
            generic_dual_eval(p, n, &i_pair, &tables, &y, FOURIER_BUDGET)
        })
        .collect::<Result<_>>()?;

    let coeffs = dft(&phi, p, n, true);
    let l1: f64 = coeffs.iter().map(|c| c.norm()).sum();

    let hat1 = dft(f1, p, n, true);
    let hat2 = dft(f2, p, n, true);
    let d = ((i_pair[1] % p) + p - (i_pair[0] % p)) % p;
    let mut predicted = vec![Complex64::new(0.0, 0.0); total];
    for xi in 0..total {
        let xiv = unpack_base_p(xi as u64, p, n);
        let eta = pack_base_p(&FpVec::new(
            xiv.entries().iter().map(|&e| e * d % p).collect(),
            p,
        ), p) as usize;
        let neg = pack_base_p(&xiv.neg(p), p) as usize;
        predicted[eta] += hat1[neg] * hat2[xi];
    }
    let structure_err = coeffs
        .iter()
        .zip(&predicted)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);

    // reconstruct pointwise
    let recon = dft(&coeffs, p, n, false);
    let recon_err = recon
        .iter()
        .zip(&phi)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);

    if l1 > 1.0 + 1e-9 {
        return Err(Error::VerificationFailed(format!(
            "Fourier mass {l1} exceeds 1"
        )));
    }
    if structure_err > 1e-9 {
        return Err(Error::VerificationFailed(format!(
            "spectral support mismatch: {structure_err}"
        )));
    }
    Ok(FourierReport {
        coeffs,
        l1,
        dilation: d,
        structure_err,
        recon_err,
    })
}

/// Direct DFT over F_p^n. Forward: f̂(ξ) = E_x f(x) e(-⟨ξ,x⟩/p);
/// inverse: f(x) = Σ_ξ f̂(ξ) e(⟨ξ,x⟩/p).
fn dft(values: &[Complex64], p: u64, n: usize, forward: bool) -> Vec<Complex64> {
    let total = values.len();
    let tau = std::f64::consts::TAU;
    let sign = if forward { -1.0 } else { 1.0 };
    let roots: Vec<Complex64> = (0..p)
        .map(|j| {
            let th = sign * tau * j as f64 / p as f64;
            Complex64::new(th.cos(), th.sin())
        })
        .collect();
    (0..total)
        .map(|xi| {
            let xiv = unpack_base_p(xi as u64, p, n);
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, &fv) in values.iter().enumerate() {
                let xv = unpack_base_p(x as u64, p, n);
                let phase = xiv.dot(&xv, p);
                acc += fv * roots[phase as usize];
            }
            if forward {
                acc / total as f64
            } else {
                acc
            }
        })
        .collect()
}
