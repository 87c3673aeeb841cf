//! The sign-average width functional w(A) = E_θ max_{a∈A} |⟨a, θ⟩| over
//! uniform ±1 vectors θ, computed exactly for rational point sets and by
//! Monte Carlo, plus the certified covering-number lower bound it yields
//! and the phase-count comparison that locates the dimension crossover.

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cyclotomic::SparseSeed;
use crate::error::{Error, Result};
use crate::fp::derive_seed;
use crate::matching::{binomial, derive_params};
use crate::par;

pub type Rat = Ratio<i128>;

pub const WIDTH_BUDGET: u64 = 10_000_000;

/// Default folded Khintchine constant 2√2: a √2 from splitting complex
/// inner products into real and imaginary parts, √(q-1) <= √q from the
/// real moment bound at exponent q = log2 |B|, and the factor
/// |B|^{1/q} = 2 folded against it.
pub fn default_khintchine_constant() -> f64 {
    2.0 * std::f64::consts::SQRT_2
}

/// A complex number with exact rational parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CPoint {
    pub re: Rat,
    pub im: Rat,
}

impl CPoint {
    pub fn real(re: Rat) -> Self {
        CPoint {
            re,
            im: Rat::zero(),
        }
    }

    pub fn from_int(v: i128) -> Self {
        Self::real(Rat::from_integer(v))
    }

    pub fn to_complex(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap(), self.im.to_f64().unwrap())
    }
}

/// A finite set of points in C^k with exact rational coordinates.
#[derive(Clone, Debug)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<CPoint>>,
}

impl PointSet {
    pub fn new(points: Vec<Vec<CPoint>>) -> Result<Self> {
        let dim = points
            .first()
            .ok_or_else(|| Error::invalid("point set must be nonempty"))?
            .len();
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::invalid("points must share a dimension"));
        }
        Ok(PointSet { dim, points })
    }

    /// The k-fold product {a, b}^k.
    pub fn cube(a: CPoint, b: CPoint, k: usize) -> Result<Self> {
        if k == 0 || k > 24 {
            return Err(Error::invalid("cube dimension must be in 1..=24"));
        }
        let points = (0..1usize << k)
            .map(|mask| {
                (0..k)
                    .map(|i| if mask >> i & 1 == 0 { a.clone() } else { b.clone() })
                    .collect()
            })
            .collect();
        Ok(PointSet { dim: k, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<CPoint>] {
        &self.points
    }

    /// Append extra points (tests use this to adjoin hull combinations).
    pub fn with_extra(&self, extra: Vec<Vec<CPoint>>) -> Result<Self> {
        let mut points = self.points.clone();
        points.extend(extra);
        PointSet::new(points)
    }

    /// Minkowski sum.
    pub fn sum(&self, other: &PointSet) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::invalid("dimension mismatch in Minkowski sum"));
        }
        let mut points = Vec::with_capacity(self.len() * other.len());
        for a in &self.points {
            for b in &other.points {
                points.push(
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| CPoint {
                            re: x.re + y.re,
                            im: x.im + y.im,
                        })
                        .collect(),
                );
            }
        }
        PointSet::new(points)
    }
}

/// Exact width value. `exact` is populated whenever every θ-maximum was a
/// real rational, in which case `value` is its nearest f64.
#[derive(Clone, Debug)]
pub struct WidthValue {
    pub value: f64,
    pub exact: Option<Rat>,
}

pub fn width_exact(set: &PointSet) -> Result<WidthValue> {
    width_exact_with_budget(set, WIDTH_BUDGET)
}

/// Average over all 2^k sign vectors of the maximum modulus; the maximum is
/// selected by exact squared-modulus comparison.
pub fn width_exact_with_budget(set: &PointSet, budget: u64) -> Result<WidthValue> {
    let k = set.dim;
    if k >= 48 {
        return Err(Error::budget("sign enumeration dimension too large"));
    }
    let total = 1u64 << k;
    if total.saturating_mul(set.len() as u64) > budget {
        return Err(Error::budget(format!(
            "2^{k} x {} points exceeds the width budget {budget}",
            set.len()
        )));
    }

    #[derive(Clone)]
    struct Acc {
        float_sum: f64,
        rat_sum: Option<Rat>,
    }
    let init = Acc {
        float_sum: 0.0,
        rat_sum: Some(Rat::zero()),
    };
    let acc = par::chunked_fold(
        total as usize,
        init,
        |mut acc, mask| {
            let mut best_sq = Rat::zero();
            let mut best_re_abs: Option<Rat> = None;
            for point in &set.points {
                let mut re = Rat::zero();
                let mut im = Rat::zero();
                for (i, c) in point.iter().enumerate() {
                    if mask >> i & 1 == 0 {
                        re += &c.re;
                        im += &c.im;
                    } else {
                        re -= &c.re;
                        im -= &c.im;
                    }
                }
                let sq = re.clone() * re.clone() + im.clone() * im.clone();
                if sq > best_sq || best_re_abs.is_none() && sq == best_sq {
                    best_re_abs = if im.is_zero() { Some(re.abs()) } else { None };
                    best_sq = sq;
                }
            }
            match best_re_abs {
                Some(r) => {
                    acc.float_sum += r.to_f64().unwrap();
                    if let Some(s) = acc.rat_sum.as_mut() {
                        *s += r;
                    }
                }
                None => {
                    acc.float_sum += best_sq.to_f64().unwrap().sqrt();
                    acc.rat_sum = None;
                }
            }
            acc
        },
        |mut a, b| {
            a.float_sum += b.float_sum;
            a.rat_sum = match (a.rat_sum, b.rat_sum) {
                (Some(x), Some(y)) => Some(x + y),
                _ => None,
            };
            a
        },
    );

    let denom = Rat::from_integer(total as i128);
    let exact = acc.rat_sum.map(|s| s / denom);
    let value = exact
        .as_ref()
        .map(|r| r.to_f64().unwrap())
        .unwrap_or(acc.float_sum / total as f64);
    Ok(WidthValue { value, exact })
}

#[derive(Clone, Debug)]
pub struct WidthEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
}

/// Unbiased Monte-Carlo estimator of the width; per-trial sign vectors come
/// from generators derived from (seed, trial index), so the result does not
/// depend on evaluation order.
pub fn width_mc(set: &PointSet, trials: u64, seed: u64) -> Result<WidthEstimate> {
    use rand::Rng;
    use rand::SeedableRng;
    if trials == 0 {
        return Err(Error::invalid("need at least one trial"));
    }
    let pts: Vec<Vec<(f64, f64)>> = set
        .points
        .iter()
        .map(|p| p.iter().map(|c| c.to_complex()).collect())
        .collect();
    let k = set.dim;

    let (sum, sum_sq) = par::chunked_fold(
        trials as usize,
        (0.0f64, 0.0f64),
        |(s, s2), trial| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(derive_seed(seed, trial as u64));
            let mut signs = vec![1.0f64; k];
            for sgn in signs.iter_mut() {
                if rng.random::<bool>() {
                    *sgn = -1.0;
                }
            }
            let mut best = 0.0f64;
            for p in &pts {
                let mut re = 0.0;
                let mut im = 0.0;
                for (c, sgn) in p.iter().zip(&signs) {
                    re += sgn * c.0;
                    im += sgn * c.1;
                }
                best = best.max((re * re + im * im).sqrt());
            }
            (s + best, s2 + best * best)
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    let mean = sum / trials as f64;
    let var = if trials > 1 {
        ((sum_sq - sum * sum / trials as f64) / (trials as f64 - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(WidthEstimate {
        mean,
        std_error: (var / trials as f64).sqrt(),
        trials,
        seed,
    })
}

/// The guaranteed hypercube width bound c·k/2 for corners {c, z}^k with
/// Re(z) <= 0.
pub fn cube_width_lower(c: f64, k: u64) -> f64 {
    c * k as f64 / 2.0
}

#[derive(Clone, Debug)]
pub struct EntropyBoundReport {
    pub c: f64,
    pub epsilon: f64,
    pub m_bound: f64,
    pub k: u64,
    pub khintchine_constant: f64,
    pub lower_bound_log2: f64,
    /// The inequality chain, one step per line.
    pub trace: Vec<String>,
}

/// Certified lower bound: any finite B ⊆ M·D^k with
/// {c,z}^k ⊆ conv_C(B) + ε·D^k satisfies log2 |B| >= k((c/2 - ε)/(KM))^2.
pub fn certified_entropy_lower(
    c: f64,
    epsilon: f64,
    m_bound: f64,
    k: u64,
    khintchine_constant: f64,
) -> Result<EntropyBoundReport> {
    if !(c > 0.0) || !(m_bound > 0.0) || !(khintchine_constant > 0.0) || k == 0 {
        return Err(Error::invalid("c, M, K must be positive and k >= 1"));
    }
    if !(epsilon > 0.0 && epsilon < c / 2.0) {
        return Err(Error::invalid(format!(
            "epsilon must lie strictly inside (0, c/2) = (0, {})",
            c / 2.0
        )));
    }
    let kf = k as f64;
    let ratio = (c / 2.0 - epsilon) / (khintchine_constant * m_bound);
    let bound = kf * ratio * ratio;
    let trace = vec![
        format!("corner gap: w({{c,z}}^k) >= c*k/2 = {}", c * kf / 2.0),
        format!(
            "hull side: w(conv_C(B)) <= K*M*sqrt(k*log2|B|) with K = {khintchine_constant} \
             (split re/im: sqrt2; moment bound at exponent q = log2|B|: sqrt(q); mass |B|^(1/q) = 2)"
        ),
        format!("slab: w(eps*D^k) = eps*k = {}", epsilon * kf),
        format!(
            "rearranged: log2|B| >= k*((c/2 - eps)/(K*M))^2 = {kf}*({ratio})^2 = {bound}"
        ),
    ];
    Ok(EntropyBoundReport {
        c,
        epsilon,
        m_bound,
        k,
        khintchine_constant,
        lower_bound_log2: bound,
        trace,
    })
}

/// log2 of the number of n-variate polynomials over F_p of total degree at
/// most d: C(n+d, d) · log2 p. Classical regime only (d < p).
pub fn phase_count_log2(p: u64, n: u64, d: u64) -> Result<f64> {
    if d >= p {
        return Err(Error::invalid(format!(
            "degree {d} >= p = {p}: non-classical phases are out of scope"
        )));
    }
    let monomials = binomial(n + d, d)?;
    Ok(monomials as f64 * (p as f64).log2())
}

#[derive(Clone, Debug)]
pub struct CrossoverRow {
    pub m: u64,
    pub k_dim: u128,
    pub n: u128,
    pub b_cube: f64,
    pub b_phase: f64,
}

#[derive(Clone, Debug)]
pub struct CrossoverReport {
    pub rows: Vec<CrossoverRow>,
    /// Least m in range where the cube-side bound beats the phase count.
    pub crossover_m: Option<u64>,
    /// Log-log slopes of the two curves against n.
    pub slope_cube: Option<f64>,
    pub slope_phase: Option<f64>,
}

/// Compare, over a range of m, the hypercube entropy bound (which scales
/// like the number of subsets) against the degree-(k-1) phase count in
/// dimension n; reports the first crossover and the fitted growth orders.
pub fn contradiction_scan(
    seed: &SparseSeed,
    epsilon: f64,
    m_bound: f64,
    khintchine_constant: f64,
    m_min: u64,
    m_max: u64,
) -> Result<CrossoverReport> {
    let k_support = seed.poly.k() as u64;
    if k_support > seed.t {
        return Err(Error::invalid(format!(
            "seed support size {k_support} exceeds t = {}: the sparse hypothesis fails",
            seed.t
        )));
    }
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::invalid("epsilon must lie in (0, 1/2) for corner value c = 1"));
    }
    let ratio = (0.5 - epsilon) / (khintchine_constant * m_bound);
    let mut rows = Vec::new();
    let mut crossover_m = None;
    for m in m_min.max(seed.p)..=m_max {
        let params = derive_params(seed.p, seed.r, m)?;
        let b_cube = params.k as f64 * ratio * ratio;
        let b_phase = phase_count_log2(seed.p, u64::try_from(params.n).map_err(|_| {
            Error::budget("n exceeds u64 in crossover scan".to_string())
        })?, k_support - 1)?;
        if crossover_m.is_none() && b_cube > b_phase {
            crossover_m = Some(m);
        }
        rows.push(CrossoverRow {
            m,
            k_dim: params.k,
            n: params.n,
            b_cube,
            b_phase,
        });
    }
    let slope = |ys: &dyn Fn(&CrossoverRow) -> f64| -> Option<f64> {
        if rows.len() < 3 {
            return None;
        }
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .map(|r| ((r.n as f64).ln(), ys(r).ln()))
            .collect();
        let n = pts.len() as f64;
        let (sx, sy): (f64, f64) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
        let (mx, my) = (sx / n, sy / n);
        let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let den: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        Some(num / den)
    };
    let slope_cube = slope(&|r: &CrossoverRow| r.b_cube);
    let slope_phase = slope(&|r: &CrossoverRow| r.b_phase);
    Ok(CrossoverReport {
        rows,
        crossover_m,
        slope_cube,
        slope_phase,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i128, d: i128) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn width_single_point() {
        let set = PointSet::new(vec![vec![CPoint::from_int(1)]]).unwrap();
        let w = width_exact(&set).unwrap();
        assert_eq!(w.exact, Some(rat(1, 1)));
        assert_eq!(w.value, 1.0);
    }

    #[test]
    fn width_k1_cube() {
        let set = PointSet::cube(CPoint::from_int(1), CPoint::real(rat(-1, 7)), 1).unwrap();
        let w = width_exact(&set).unwrap();
        assert_eq!(w.exact, Some(rat(1, 1)));
    }

    #[test]
    fn width_k2_cube_value() {
        // corners {1, -1/7}^2: exact average (2 + 8/7 + 8/7 + 2)/4 = 11/7
        let set = PointSet::cube(CPoint::from_int(1), CPoint::real(rat(-1, 7)), 2).unwrap();
        let w = width_exact(&set).unwrap();
        assert_eq!(w.exact, Some(rat(11, 7)));
        assert!(w.value >= cube_width_lower(1.0, 2));
    }

    #[test]
    fn cube_bound_examples() {
        assert_eq!(cube_width_lower(1.0, 4), 2.0);
        let set = PointSet::cube(CPoint::from_int(1), CPoint::from_int(-1), 2).unwrap();
        let w = width_exact(&set).unwrap();
        assert_eq!(w.exact, Some(rat(2, 1))); // |±1 ± 1| maximum is always 2
        for k in 1..=8u64 {
            let set =
                PointSet::cube(CPoint::from_int(1), CPoint::real(rat(-1, 7)), k as usize).unwrap();
            let w = width_exact(&set).unwrap();
            assert!(
                w.value >= cube_width_lower(1.0, k) - 1e-12,
                "k = {k}: width {} below bound",
                w.value
            );
        }
    }

    #[test]
    fn width_monotone_under_inclusion() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let k = rng.random_range(1..=5usize);
            let n_small = rng.random_range(1..=4usize);
            let n_extra = rng.random_range(1..=4usize);
            let mut pt = || -> Vec<CPoint> {
                (0..k)
                    .map(|_| CPoint {
                        re: rat(rng.random_range(-8..=8), rng.random_range(1..=4)),
                        im: rat(rng.random_range(-8..=8), rng.random_range(1..=4)),
                    })
                    .collect()
            };
            let small: Vec<Vec<CPoint>> = (0..n_small).map(|_| pt()).collect();
            let extra: Vec<Vec<CPoint>> = (0..n_extra).map(|_| pt()).collect();
            let a = PointSet::new(small.clone()).unwrap();
            let b = a.with_extra(extra).unwrap();
            let wa = width_exact(&a).unwrap().value;
            let wb = width_exact(&b).unwrap().value;
            assert!(wa <= wb + 1e-12);
        }
    }

    #[test]
    fn width_subadditive_on_sums() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let k = rng.random_range(1..=4usize);
            let count_a = rng.random_range(1..=4usize);
            let count_b = rng.random_range(1..=4usize);
            let mut set = |count: usize| -> PointSet {
                PointSet::new(
                    (0..count)
                        .map(|_| {
                            (0..k)
                                .map(|_| CPoint {
                                    re: rat(rng.random_range(-6..=6), rng.random_range(1..=3)),
                                    im: rat(rng.random_range(-6..=6), rng.random_range(1..=3)),
                                })
                                .collect()
                        })
                        .collect(),
                )
                .unwrap()
            };
            let a = set(count_a);
            let b = set(count_b);
            let wa = width_exact(&a).unwrap().value;
            let wb = width_exact(&b).unwrap().value;
            let ws = width_exact(&a.sum(&b).unwrap()).unwrap().value;
            assert!(ws <= wa + wb + 1e-9);
        }
    }

    #[test]
    fn width_mc_deterministic_and_consistent() {
        let set = PointSet::new(vec![vec![CPoint::from_int(1)]]).unwrap();
        let e = width_mc(&set, 1000, 7).unwrap();
        assert_eq!(e.mean, 1.0);
        assert_eq!(e.std_error, 0.0);

        let cube = PointSet::cube(CPoint::from_int(1), CPoint::real(rat(-1, 7)), 8).unwrap();
        let exact = width_exact(&cube).unwrap().value;
        let mc = width_mc(&cube, 100_000, 12345).unwrap();
        assert!(
            (mc.mean - exact).abs() <= 3.0 * mc.std_error,
            "mc {} vs exact {exact} (se {})",
            mc.mean,
            mc.std_error
        );
        let mc2 = width_mc(&cube, 100_000, 12345).unwrap();
        assert_eq!(mc.mean, mc2.mean);
    }

    #[test]
    fn entropy_bound_example() {
        let rep = certified_entropy_lower(1.0, 0.25, 1.0, 128, default_khintchine_constant())
            .unwrap();
        assert!((rep.lower_bound_log2 - 1.0).abs() < 1e-12);
        let doubled = certified_entropy_lower(1.0, 0.25, 1.0, 256, default_khintchine_constant())
            .unwrap();
        assert!((doubled.lower_bound_log2 - 2.0 * rep.lower_bound_log2).abs() < 1e-12);
        assert!(certified_entropy_lower(1.0, 0.5, 1.0, 128, 2.0).is_err());
    }

    #[test]
    fn phase_count_examples() {
        assert!((phase_count_log2(7, 1, 0).unwrap() - 7f64.log2()).abs() < 1e-12);
        assert!((phase_count_log2(7, 2, 2).unwrap() - 6.0 * 7f64.log2()).abs() < 1e-12);
        assert!((phase_count_log2(3, 3, 1).unwrap() - 4.0 * 3f64.log2()).abs() < 1e-12);
        assert!(phase_count_log2(3, 3, 3).is_err());
    }

    #[test]
    fn bound_linear_in_k_projection() {
        let k_full = certified_entropy_lower(1.0, 0.25, 1.0, 64, 2.0).unwrap();
        let k_proj = certified_entropy_lower(1.0, 0.25, 1.0, 32, 2.0).unwrap();
        assert!(k_proj.lower_bound_log2 <= k_full.lower_bound_log2);
    }
}
