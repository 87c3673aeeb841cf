//! The combination identity as a q-query locally decodable code: an implicit
//! codeword oracle over F_p^n, a deterministic keyed corruption channel, the
//! q-query local decoder, and its empirical success benchmark.

use std::io::{BufRead, Write};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dualfn::Binding;
use crate::error::{Error, Result};
use crate::ext::ExtElem;
use crate::fp::{derive_seed, pack_base_p, splitmix64, unpack_base_p, FpVec};
use crate::par;

pub const ENCODE_BUDGET: u64 = 1_000_000;

/// Message symbols live in the whole extension field: the decoding identity
/// is F_{r^t}-linear in the message, so the richer alphabet is free.
#[derive(Clone, Debug)]
pub struct LdcInstance {
    pub binding: Binding,
}

impl LdcInstance {
    pub fn new(binding: Binding) -> Self {
        LdcInstance { binding }
    }

    /// Query count q: the support size of the combination polynomial.
    pub fn queries(&self) -> usize {
        self.binding.poly.k()
    }

    pub fn message_len(&self) -> usize {
        self.binding.k()
    }

    pub fn position_dim(&self) -> usize {
        self.binding.n()
    }

    /// Human-readable conceptual codeword length p^n.
    pub fn conceptual_len(&self) -> String {
        format!("{}^{}", self.binding.family.params.p, self.binding.n())
    }

    /// C(x) = Σ_j a_j γ^{⟨x, w_j⟩}.
    pub fn encode_symbol(&self, message: &[ExtElem], x: &FpVec) -> Result<ExtElem> {
        if message.len() != self.message_len() {
            return Err(Error::invalid(format!(
                "message has {} symbols, expected k = {}",
                message.len(),
                self.message_len()
            )));
        }
        let f = self.binding.field();
        let mut acc = f.zero();
        for (j, a) in message.iter().enumerate() {
            if !f.is_zero(a) {
                acc = f.add(&acc, &f.mul(a, &self.binding.family.f_eval(j, x)?));
            }
        }
        Ok(acc)
    }

    /// Materialize all p^n symbols in base-p position order (tiny instances
    /// only; the conceptual length is astronomically larger in general).
    pub fn encode_full(&self, message: &[ExtElem]) -> Result<Vec<ExtElem>> {
        let p = self.binding.family.params.p;
        let n = self.position_dim();
        let total = crate::fp::checked_pow_budget(p, n as u32, ENCODE_BUDGET, "codeword table")
            .map_err(|_| {
                Error::budget(format!(
                    "cannot materialize a codeword of length N = {}",
                    self.conceptual_len()
                ))
            })?;
        (0..total)
            .map(|idx| self.encode_symbol(message, &unpack_base_p(idx, p, n)))
            .collect()
    }

    /// Recover a_i from the q positions x + ι d_i: divide the combination
    /// Σ c_ι C(x + ι d_i) by the known unit γ^{⟨x, w_i⟩} P(1).
    pub fn local_decode(
        &self,
        i: usize,
        oracle: &CodewordOracle<'_>,
        x: &FpVec,
    ) -> Result<DecoderResult> {
        if i >= self.message_len() {
            return Err(Error::invalid(format!("index {i} out of range")));
        }
        let f = self.binding.field();
        let fam = &self.binding.family;
        let p = fam.params.p;
        let poly = &self.binding.poly;

        let mut combo = f.zero();
        let mut queried = Vec::with_capacity(self.queries());
        for (&iota, &c) in poly.support().iter().zip(poly.coeffs()) {
            let pos = x.add_scaled(&fam.d[i], iota % p, p);
            let symbol = oracle.query(&pos)?;
            combo = f.add(&combo, &f.scalar_mul(c, &symbol));
            queried.push(pos);
        }
        let unit = f.scalar_mul(poly.eval_at_one(), &fam.f_eval(i, x)?);
        let symbol = f.mul(&combo, &f.inv(&unit)?);
        Ok(DecoderResult {
            index: i,
            symbol,
            queried,
            success: None,
        })
    }

    /// Empirical decode success over fresh random (x, i) under iid
    /// corruption, with the 1 - qδ union-bound floor for reference.
    pub fn benchmark(
        &self,
        message: &[ExtElem],
        delta: f64,
        trials: u64,
        seed: u64,
    ) -> Result<BenchmarkReport> {
        if !(0.0..1.0).contains(&delta) {
            return Err(Error::invalid("delta must lie in [0, 1)"));
        }
        if trials == 0 {
            return Err(Error::invalid("need at least one trial"));
        }
        if message.len() != self.message_len() {
            return Err(Error::invalid("message length mismatch"));
        }
        let p = self.binding.family.params.p;
        let n = self.position_dim();
        let k = self.message_len();
        let channel_seed = splitmix64(seed ^ 0x1db3);

        let successes = par::chunked_fold(
            trials as usize,
            0u64,
            |acc, trial| {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, trial as u64));
                let i = rng.random_range(0..k);
                let x = FpVec::new((0..n).map(|_| rng.random_range(0..p)).collect(), p);
                let oracle = CodewordOracle::implicit(
                    self,
                    message,
                    ChannelMode::Iid {
                        delta,
                        seed: channel_seed,
                    },
                    None,
                );
                let res = self.local_decode(i, &oracle, &x).expect("decode");
                acc + u64::from(res.symbol == message[i])
            },
            |a, b| a + b,
        );
        let rate = successes as f64 / trials as f64;
        let std_error = (rate * (1.0 - rate) / trials as f64).sqrt();
        Ok(BenchmarkReport {
            trials,
            successes,
            rate,
            std_error,
            floor: 1.0 - self.queries() as f64 * delta,
            delta,
            seed,
        })
    }

    /// Marginal uniformity of each query position over uniform x: exact by
    /// full enumeration on tiny instances.
    pub fn smoothness_exact(&self, i: usize) -> Result<SmoothnessReport> {
        let p = self.binding.family.params.p;
        let n = self.position_dim();
        let total = crate::fp::checked_pow_budget(p, n as u32, ENCODE_BUDGET, "smoothness")?;
        let fam = &self.binding.family;
        let mut worst: u64 = 0;
        for &iota in self.binding.poly.support() {
            let mut counts = vec![0u64; total as usize];
            for idx in 0..total {
                let x = unpack_base_p(idx, p, n);
                let pos = x.add_scaled(&fam.d[i], iota % p, p);
                counts[pack_base_p(&pos, p) as usize] += 1;
            }
            let max = *counts.iter().max().unwrap();
            let min = *counts.iter().min().unwrap();
            worst = worst.max(max - min);
        }
        Ok(SmoothnessReport {
            exact: true,
            pass: worst == 0,
            max_z_score: 0.0,
            detail: format!("max count spread {worst} over {total} positions"),
        })
    }

    /// Statistical variant for large n: per-coordinate residue frequencies
    /// of each query position over sampled x, all within 4 standard errors.
    pub fn smoothness_sampled(&self, i: usize, trials: u64, seed: u64) -> Result<SmoothnessReport> {
        let p = self.binding.family.params.p;
        let n = self.position_dim();
        if trials < p {
            return Err(Error::invalid("need at least p trials"));
        }
        let fam = &self.binding.family;
        let q = self.binding.poly.k();
        // counts[iota][coord][residue]
        let mut counts = vec![vec![vec![0u64; p as usize]; n]; q];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let x = FpVec::new((0..n).map(|_| rng.random_range(0..p)).collect(), p);
            for (qi, &iota) in self.binding.poly.support().iter().enumerate() {
                let pos = x.add_scaled(&fam.d[i], iota % p, p);
                for (c, &e) in pos.entries().iter().enumerate() {
                    counts[qi][c][e as usize] += 1;
                }
            }
        }
        let expect = trials as f64 / p as f64;
        let sd = (trials as f64 * (1.0 / p as f64) * (1.0 - 1.0 / p as f64)).sqrt();
        let mut max_z: f64 = 0.0;
        for per_iota in &counts {
            for per_coord in per_iota {
                for &c in per_coord {
                    max_z = max_z.max((c as f64 - expect).abs() / sd);
                }
            }
        }
        Ok(SmoothnessReport {
            exact: false,
            pass: max_z <= 4.0,
            max_z_score: max_z,
            detail: format!("max |z| = {max_z:.3} over {q} queries x {n} coordinates"),
        })
    }

    /// Deterministic random message from a seed (one symbol per index).
    pub fn random_message(&self, seed: u64) -> Vec<ExtElem> {
        let f = self.binding.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..self.message_len())
            .map(|_| f.from_packed(rng.random_range(0..f.q())))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct DecoderResult {
    pub index: usize,
    pub symbol: ExtElem,
    pub queried: Vec<FpVec>,
    pub success: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct BenchmarkReport {
    pub trials: u64,
    pub successes: u64,
    pub rate: f64,
    pub std_error: f64,
    /// Union bound 1 - qδ.
    pub floor: f64,
    pub delta: f64,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct SmoothnessReport {
    pub exact: bool,
    pub pass: bool,
    pub max_z_score: f64,
    pub detail: String,
}

/// Corruption behaviour of the channel between encoder and decoder.
#[derive(Clone)]
pub enum ChannelMode {
    Exact,
    /// Corrupt each position independently with probability delta; the
    /// decision and the replacement are a pure function of (seed, position),
    /// and the replacement never equals the true symbol.
    Iid { delta: f64, seed: u64 },
    /// Arbitrary position-dependent tampering.
    Adversarial(Arc<dyn Fn(&FpVec, &ExtElem) -> ExtElem + Send + Sync>),
}

enum Truth<'a> {
    Implicit {
        instance: &'a LdcInstance,
        message: &'a [ExtElem],
    },
    Table(&'a [ExtElem]),
}

/// Position-indexed view of a (possibly corrupted) codeword. Queries are
/// counted; an optional budget caps them.
pub struct CodewordOracle<'a> {
    truth: Truth<'a>,
    mode: ChannelMode,
    budget: Option<u64>,
    queries: AtomicU64,
    p: u64,
    field: &'a crate::ext::ExtField,
}

impl<'a> CodewordOracle<'a> {
    pub fn implicit(
        instance: &'a LdcInstance,
        message: &'a [ExtElem],
        mode: ChannelMode,
        budget: Option<u64>,
    ) -> Self {
        CodewordOracle {
            truth: Truth::Implicit { instance, message },
            mode,
            budget,
            queries: AtomicU64::new(0),
            p: instance.binding.family.params.p,
            field: instance.binding.field(),
        }
    }

    /// Oracle backed by a materialized table (file-based decode).
    pub fn from_table(
        instance: &'a LdcInstance,
        table: &'a [ExtElem],
        mode: ChannelMode,
        budget: Option<u64>,
    ) -> Self {
        CodewordOracle {
            truth: Truth::Table(table),
            mode,
            budget,
            queries: AtomicU64::new(0),
            p: instance.binding.family.params.p,
            field: instance.binding.field(),
        }
    }

    pub fn queries_made(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn query(&self, x: &FpVec) -> Result<ExtElem> {
        let made = self.queries.fetch_add(1, Ordering::Relaxed);
        if let Some(b) = self.budget {
            if made >= b {
                return Err(Error::budget(format!("query budget {b} exhausted")));
            }
        }
        let truth = match &self.truth {
            Truth::Implicit { instance, message } => instance.encode_symbol(message, x)?,
            Truth::Table(t) => {
                let idx = pack_base_p(x, self.p) as usize;
                t.get(idx)
                    .cloned()
                    .ok_or_else(|| Error::invalid("position outside the stored table"))?
            }
        };
        Ok(match &self.mode {
            ChannelMode::Exact => truth,
            ChannelMode::Iid { delta, seed } => {
                let packed = self.field.packed(&truth);
                let (corrupt, repl) =
                    iid_decision(*seed, x, *delta, self.field.q(), packed);
                if corrupt {
                    self.field.from_packed(repl)
                } else {
                    truth
                }
            }
            ChannelMode::Adversarial(f) => f(x, &truth),
        })
    }
}

/// Deterministic corruption decision for (seed, position): whether to flip,
/// and the replacement (a packed value distinct from the true symbol).
fn iid_decision(seed: u64, x: &FpVec, delta: f64, alphabet: u64, truth: u64) -> (bool, u64) {
    let mut h = splitmix64(seed ^ 0x9d5c_41c7_u64);
    for &e in x.entries() {
        h = splitmix64(h ^ e.wrapping_add(0x51ed_270b));
    }
    let unif = (h >> 11) as f64 / (1u64 << 53) as f64;
    if unif >= delta {
        return (false, 0);
    }
    let h2 = splitmix64(h ^ 0xabcd_1234);
    let mut repl = h2 % (alphabet - 1);
    if repl >= truth {
        repl += 1;
    }
    (true, repl)
}

/// One packed decimal symbol per line, in base-p position order.
pub fn write_symbols(symbols: &[ExtElem], field: &crate::ext::ExtField, out: &mut impl Write) -> std::io::Result<()> {
    for s in symbols {
        writeln!(out, "{}", field.packed(s))?;
    }
    Ok(())
}

pub fn read_symbols(field: &crate::ext::ExtField, input: impl BufRead) -> Result<Vec<ExtElem>> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let v: u64 = t
            .parse()
            .map_err(|e| Error::Parse(format!("bad symbol {t:?}: {e}")))?;
        if v >= field.q() {
            return Err(Error::Parse(format!("symbol {v} outside the alphabet")));
        }
        out.push(field.from_packed(v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{build_family, derive_params};
    use crate::poly::SparsePoly;

    fn instance_p3() -> LdcInstance {
        let fam = build_family(&derive_params(3, 2, 3).unwrap()).unwrap();
        let poly = SparsePoly::new(2, vec![0, 1, 2], vec![1, 1, 1]).unwrap();
        LdcInstance::new(Binding::bind(fam, poly).unwrap())
    }

    fn instance_p7() -> LdcInstance {
        let fam = build_family(&derive_params(7, 2, 7).unwrap()).unwrap();
        let poly = SparsePoly::new(2, vec![0, 1, 3], vec![1, 1, 1]).unwrap();
        LdcInstance::new(Binding::bind(fam, poly).unwrap())
    }

    #[test]
    fn encode_linearity_and_zero() {
        let inst = instance_p3();
        let f = inst.binding.field();
        let zero_msg = vec![f.zero(); inst.message_len()];
        let x = FpVec::zero(inst.position_dim());
        assert!(f.is_zero(&inst.encode_symbol(&zero_msg, &x).unwrap()));

        let a = inst.random_message(1);
        let b = inst.random_message(2);
        let sum: Vec<ExtElem> = a.iter().zip(&b).map(|(x, y)| f.add(x, y)).collect();
        for idx in 0..27u64 {
            let x = unpack_base_p(idx, 3, inst.position_dim());
            let lhs = inst.encode_symbol(&sum, &x).unwrap();
            let rhs = f.add(
                &inst.encode_symbol(&a, &x).unwrap(),
                &inst.encode_symbol(&b, &x).unwrap(),
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn unit_message_at_origin() {
        let inst = instance_p3();
        let f = inst.binding.field();
        let mut msg = vec![f.zero(); inst.message_len()];
        msg[1] = f.one();
        let c0 = inst.encode_symbol(&msg, &FpVec::zero(inst.position_dim())).unwrap();
        assert!(f.is_one(&c0));
    }

    #[test]
    fn exact_decode_is_pointwise_p3() {
        let inst = instance_p3();
        let msg = inst.random_message(99);
        let oracle = CodewordOracle::implicit(&inst, &msg, ChannelMode::Exact, None);
        for i in 0..inst.message_len() {
            for idx in 0..27u64 {
                let x = unpack_base_p(idx, 3, inst.position_dim());
                let res = inst.local_decode(i, &oracle, &x).unwrap();
                assert_eq!(res.symbol, msg[i]);
                assert_eq!(res.queried.len(), inst.queries());
            }
        }
    }

    #[test]
    fn iid_zero_delta_equals_exact() {
        let inst = instance_p7();
        let msg = inst.random_message(3);
        let exact = CodewordOracle::implicit(&inst, &msg, ChannelMode::Exact, None);
        let iid = CodewordOracle::implicit(
            &inst,
            &msg,
            ChannelMode::Iid { delta: 0.0, seed: 5 },
            None,
        );
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let i = rng.random_range(0..inst.message_len());
            let x = FpVec::new(
                (0..inst.position_dim())
                    .map(|_| rng.random_range(0..7))
                    .collect(),
                7,
            );
            let a = inst.local_decode(i, &exact, &x).unwrap();
            let b = inst.local_decode(i, &iid, &x).unwrap();
            assert_eq!(a.symbol, b.symbol);
            assert_eq!(a.symbol, msg[i]);
        }
    }

    #[test]
    fn adversarial_corruption_outside_queries_is_harmless() {
        let inst = instance_p3();
        let msg = inst.random_message(11);
        let f = inst.binding.field();
        let p = 3u64;
        // decode index 0 at x; find a position not among the q queried ones
        let x = unpack_base_p(5, p, inst.position_dim());
        let exact = CodewordOracle::implicit(&inst, &msg, ChannelMode::Exact, None);
        let probe = inst.local_decode(0, &exact, &x).unwrap();
        let queried: Vec<u64> = probe.queried.iter().map(|v| pack_base_p(v, p)).collect();
        let victim = (0..27u64).find(|v| !queried.contains(v)).unwrap();

        let one = f.one();
        let mode = ChannelMode::Adversarial(Arc::new(move |pos: &FpVec, truth: &ExtElem| {
            if pack_base_p(pos, 3) == victim {
                // wrong symbol at the victim position
                ExtElem::clone(&one)
            } else {
                truth.clone()
            }
        }));
        let chan = CodewordOracle::implicit(&inst, &msg, mode, None);
        let res = inst.local_decode(0, &chan, &x).unwrap();
        assert_eq!(res.symbol, msg[0]);
    }

    #[test]
    fn query_budget_enforced() {
        let inst = instance_p3();
        let msg = inst.random_message(4);
        let oracle = CodewordOracle::implicit(&inst, &msg, ChannelMode::Exact, Some(2));
        let x = FpVec::zero(inst.position_dim());
        assert!(matches!(
            inst.local_decode(0, &oracle, &x),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn channel_is_deterministic_per_position() {
        let inst = instance_p3();
        let msg = inst.random_message(21);
        let mode = ChannelMode::Iid { delta: 0.5, seed: 77 };
        let a = CodewordOracle::implicit(&inst, &msg, mode.clone(), None);
        let b = CodewordOracle::implicit(&inst, &msg, mode, None);
        for idx in 0..27u64 {
            let x = unpack_base_p(idx, 3, inst.position_dim());
            assert_eq!(a.query(&x).unwrap(), b.query(&x).unwrap());
        }
    }

    #[test]
    fn corruption_never_returns_truth() {
        let inst = instance_p3();
        let f = inst.binding.field();
        let msg = inst.random_message(31);
        let delta = 1.0 - 1e-9; // corrupt essentially every position
        let oracle = CodewordOracle::implicit(
            &inst,
            &msg,
            ChannelMode::Iid { delta, seed: 13 },
            None,
        );
        let mut corrupted = 0;
        for idx in 0..27u64 {
            let x = unpack_base_p(idx, 3, inst.position_dim());
            let truth = inst.encode_symbol(&msg, &x).unwrap();
            let got = oracle.query(&x).unwrap();
            if got != truth {
                corrupted += 1;
            }
            assert!(f.packed(&got) < f.q());
        }
        assert_eq!(corrupted, 27);
    }

    #[test]
    fn encode_full_roundtrip_and_budget() {
        let inst = instance_p3();
        let msg = inst.random_message(55);
        let table = inst.encode_full(&msg).unwrap();
        assert_eq!(table.len(), 27);
        for (idx, sym) in table.iter().enumerate() {
            let x = unpack_base_p(idx as u64, 3, inst.position_dim());
            assert_eq!(inst.encode_symbol(&msg, &x).unwrap(), *sym);
        }
        let f = inst.binding.field();
        let mut buf = Vec::new();
        write_symbols(&table, f, &mut buf).unwrap();
        let back = read_symbols(f, std::io::BufReader::new(&buf[..])).unwrap();
        assert_eq!(back, table);

        // decode against the stored table
        let oracle = CodewordOracle::from_table(&inst, &table, ChannelMode::Exact, None);
        let res = inst.local_decode(2, &oracle, &unpack_base_p(9, 3, 3)).unwrap();
        assert_eq!(res.symbol, msg[2]);

        let big = instance_p7();
        let err = big.encode_full(&big.random_message(1)).unwrap_err();
        let msg_text = format!("{err}");
        assert!(msg_text.contains("7^28"), "budget error must cite N: {msg_text}");
    }

    #[test]
    fn smoothness_exact_p3() {
        let inst = instance_p3();
        for i in 0..inst.message_len() {
            let rep = inst.smoothness_exact(i).unwrap();
            assert!(rep.exact && rep.pass, "{}", rep.detail);
        }
    }

    #[test]
    fn benchmark_delta_zero_is_perfect() {
        let inst = instance_p3();
        let msg = inst.random_message(8);
        let rep = inst.benchmark(&msg, 0.0, 500, 42).unwrap();
        assert_eq!(rep.successes, 500);
        assert_eq!(rep.rate, 1.0);
        assert_eq!(rep.floor, 1.0);
    }

    #[test]
    fn benchmark_reproducible() {
        let inst = instance_p3();
        let msg = inst.random_message(8);
        let a = inst.benchmark(&msg, 0.1, 2000, 7).unwrap();
        let b = inst.benchmark(&msg, 0.1, 2000, 7).unwrap();
        assert_eq!(a.successes, b.successes);
        assert!(a.rate >= a.floor - 4.0 * a.std_error);
    }
}
