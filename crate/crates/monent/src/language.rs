//! Legal-word counting and growth-rate estimation.
//!
//! `count_legal_series` computes the graded dimensions a_n = dim A_n
//! exactly by dynamic programming over (automaton state, vertex) pairs;
//! `enumerate_legal` is the brute-force oracle it is checked against.
//! Counting is exact big-integer end to end; estimators convert to
//! floating point only at the final root/ratio/log step, because a_n
//! grows exponentially and early rounding corrupts ratio limits.
//!
//! Estimator menu:
//! * `root`      — a_N^(1/N) at the horizon,
//! * `ratio`     — a_N / a_{N-1} (d'Alembert),
//! * `fekete-inf`— min over 1 <= m <= N of a_m^(1/m), an upper bound,
//! * `auto`      — Richardson extrapolation of p-step log-ratios with the
//!                 oscillation period p detected from the tail. Exact for
//!                 sequences C·rho^n, C·n·rho^n and the periodic patterns
//!                 nonnegative integer transfer matrices produce, which is
//!                 what makes the cross-pipeline entropy comparison tight
//!                 at moderate horizons. This is the report default.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::automaton::ROOT;
use crate::presentation::Presentation;
use crate::quiver::Word;

/// Default cap on words emitted by the enumeration oracle.
pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

/// Graded dimensions a_0, a_1, ..., a_N as exact big integers
/// (a_0 = number of vertices, a_n = |L_n| for n >= 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSequence {
    values: Vec<BigUint>,
}

impl GrowthSequence {
    pub fn new(values: Vec<BigUint>) -> Self {
        GrowthSequence { values }
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    /// N, where the sequence holds a_0..a_N.
    pub fn horizon(&self) -> usize {
        self.values.len() - 1
    }

    /// Exact check of a_p * a_q >= a_{p+q} for all p + q <= N.
    pub fn is_submultiplicative(&self) -> bool {
        let n = self.values.len();
        for p in 1..n {
            for q in p..n {
                if p + q >= n {
                    break;
                }
                if &self.values[p] * &self.values[q] < self.values[p + q] {
                    return false;
                }
            }
        }
        true
    }
}

/// Big integers exceed 64-bit range quickly; JSON carries decimal strings.
impl Serialize for GrowthSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.values.iter().map(|v| v.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error("enumeration budget exceeded: more than {cap} words of length {n}")]
    BudgetExceeded { n: usize, cap: usize },
}

/// Exactly the legal words of length `n`, in lexicographic order by arrow
/// index, capped at [`DEFAULT_ENUM_CAP`]. This is the brute-force oracle
/// for the counting DP; it is intended for small n.
pub fn enumerate_legal(p: &Presentation, n: usize) -> Result<Vec<Word>, EnumerationError> {
    enumerate_legal_capped(p, n, DEFAULT_ENUM_CAP)
}

pub fn enumerate_legal_capped(
    p: &Presentation,
    n: usize,
    cap: usize,
) -> Result<Vec<Word>, EnumerationError> {
    let quiver = p.quiver();
    if n == 0 {
        if quiver.vertex_count() > cap {
            return Err(EnumerationError::BudgetExceeded { n, cap });
        }
        return Ok((0..quiver.vertex_count()).map(Word::trivial).collect());
    }
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(n);

    fn extend(
        p: &Presentation,
        n: usize,
        cap: usize,
        state: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Word>,
    ) -> Result<(), EnumerationError> {
        if stack.len() == n {
            if out.len() >= cap {
                return Err(EnumerationError::BudgetExceeded { n, cap });
            }
            out.push(Word::path_unchecked(stack.clone()));
            return Ok(());
        }
        let quiver = p.quiver();
        for a in 0..quiver.arrow_count() {
            if let Some(&last) = stack.last() {
                if quiver.arrows()[last].target != quiver.arrows()[a].source {
                    continue;
                }
            }
            if let Some(next) = p.automaton().step(state, a) {
                stack.push(a);
                extend(p, n, cap, next, stack, out)?;
                stack.pop();
            }
        }
        Ok(())
    }

    extend(p, n, cap, ROOT, &mut stack, &mut out)?;
    Ok(out)
}

/// Exact counts |L_n| for n = 0..=N via dynamic programming on the
/// factor-avoidance automaton paired with the current end vertex. No
/// enumeration takes place.
pub fn count_legal_series(p: &Presentation, n_max: usize) -> GrowthSequence {
    let quiver = p.quiver();
    let v = quiver.vertex_count();
    let s = p.automaton().state_count();
    let id = |state: usize, vertex: usize| state * v + vertex;

    // Weighted transition lists between (state, vertex) pairs.
    let mut edges: Vec<Vec<usize>> = vec![Vec::new(); s * v];
    for state in p.automaton().live_states() {
        for (a, arrow) in quiver.arrows().iter().enumerate() {
            if let Some(next) = p.automaton().step(state, a) {
                edges[id(state, arrow.source)].push(id(next, arrow.target));
            }
        }
    }

    let mut counts: Vec<BigUint> = vec![BigUint::zero(); s * v];
    for vertex in 0..v {
        counts[id(ROOT, vertex)] += 1u32;
    }
    let mut series = Vec::with_capacity(n_max + 1);
    series.push(counts.iter().sum());
    for _ in 0..n_max {
        let mut next: Vec<BigUint> = vec![BigUint::zero(); s * v];
        for (from, ws) in counts.iter().enumerate() {
            if ws.is_zero() {
                continue;
            }
            for &to in &edges[from] {
                next[to] += ws;
            }
        }
        counts = next;
        series.push(counts.iter().sum());
    }
    GrowthSequence::new(series)
}

// ---------------------------------------------------------------------------
// Entropy estimation
// ---------------------------------------------------------------------------

/// log2 of a positive big integer, accurate to ~1 ulp; exact on powers of
/// two. `None` for zero.
pub fn log2_big(x: &BigUint) -> Option<f64> {
    if x.is_zero() {
        return None;
    }
    let bits = x.bits();
    if bits <= 53 {
        Some(x.to_f64().expect("fits in f64").log2())
    } else {
        let shift = bits - 53;
        let top = (x >> shift).to_f64().expect("53 bits fit exactly");
        Some(top.log2() + shift as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Root,
    Ratio,
    FeketeInf,
    Auto,
}

/// A log-scale value with negative infinity as an explicit tag (never a
/// float NaN or -inf in serialized output).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogValue {
    NegInfinity,
    Finite(f64),
}

impl LogValue {
    pub fn finite(&self) -> Option<f64> {
        match self {
            LogValue::Finite(v) => Some(*v),
            LogValue::NegInfinity => None,
        }
    }
}

impl Serialize for LogValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            LogValue::Finite(v) => serializer.serialize_f64(*v),
            LogValue::NegInfinity => serializer.serialize_str("-inf"),
        }
    }
}

/// A growth-rate estimate: `value` on the h_alg scale (the growth base)
/// and `log2` on the entropy scale, with a per-n convergence trace.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyEstimate {
    pub value: f64,
    pub log2: LogValue,
    pub method: Method,
    pub horizon: usize,
    pub degenerate: bool,
    pub converged: bool,
    pub trace: Vec<f64>,
}

impl EntropyEstimate {
    fn degenerate(method: Method, horizon: usize) -> Self {
        EntropyEstimate {
            value: 0.0,
            log2: LogValue::NegInfinity,
            method,
            horizon,
            degenerate: true,
            converged: true,
            trace: Vec::new(),
        }
    }

    fn from_log2(log2: f64, method: Method, horizon: usize, converged: bool, trace: Vec<f64>) -> Self {
        EntropyEstimate {
            value: log2.exp2(),
            log2: LogValue::Finite(log2),
            method,
            horizon,
            degenerate: false,
            converged,
            trace,
        }
    }
}

/// Estimates the exponential growth rate of a nonnegative integer
/// sequence `values[0..=N]`.
pub fn growth_estimate(values: &[BigUint], method: Method) -> EntropyEstimate {
    let n = values.len().saturating_sub(1);
    if n == 0 || values[n].is_zero() {
        // A zero at the horizon means the sequence is eventually zero
        // (factor-closed counting is submultiplicative), i.e. the algebra
        // is finite-dimensional.
        return EntropyEstimate::degenerate(method, n);
    }
    let s: Vec<f64> = values
        .iter()
        .map(|v| log2_big(v).unwrap_or(f64::NEG_INFINITY))
        .collect();
    // values[n] > 0 forces positivity below the horizon for factor-closed
    // counts; tolerate other inputs by starting past any zero entry.
    let first_pos = values
        .iter()
        .position(|v| !v.is_zero())
        .expect("horizon value is nonzero");

    match method {
        Method::Root => {
            let trace: Vec<f64> = (first_pos.max(1)..=n).map(|m| (s[m] / m as f64).exp2()).collect();
            EntropyEstimate::from_log2(s[n] / n as f64, method, n, true, trace)
        }
        Method::Ratio => {
            let start = first_pos.max(1);
            let trace: Vec<f64> = (start..=n).map(|m| (s[m] - s[m - 1]).exp2()).collect();
            let converged = trace_tail_spread(&trace) <= 1e-9;
            EntropyEstimate::from_log2(s[n] - s[n - 1], method, n, converged, trace)
        }
        Method::FeketeInf => {
            let mut best = f64::INFINITY;
            let mut trace = Vec::new();
            for m in first_pos.max(1)..=n {
                best = best.min(s[m] / m as f64);
                trace.push(best.exp2());
            }
            EntropyEstimate::from_log2(best, method, n, true, trace)
        }
        Method::Auto => auto_estimate(&s, first_pos, n),
    }
}

fn trace_tail_spread(trace: &[f64]) -> f64 {
    let tail = &trace[trace.len().saturating_sub(trace.len() / 3 + 1)..];
    let max = tail.iter().cloned().fold(f64::MIN, f64::max);
    let min = tail.iter().cloned().fold(f64::MAX, f64::min);
    max - min
}

/// Period-aware Richardson extrapolation of p-step log-ratios.
///
/// For u(n) = (s_n - s_{n-p})/p with s_n = log2 a_n, sequences of the
/// form C(n) n^k rho^n with p-periodic C give u(n) = log2(rho) + c/n +
/// O(1/n^2) along n = N mod p, so the two-node extrapolation through
/// n = N and n ~ N/2 removes the 1/n term exactly.
fn auto_estimate(s: &[f64], first_pos: usize, n: usize) -> EntropyEstimate {
    let lo = first_pos.max(1);
    let span = n - lo;
    if span < 8 {
        // Horizon too short to detect periods; fall back to the last ratio.
        let trace: Vec<f64> = (lo + 1..=n).map(|m| (s[m] - s[m - 1]).exp2()).collect();
        let log2v = if n >= 1 { s[n] - s[n - 1] } else { 0.0 };
        return EntropyEstimate::from_log2(log2v.max(0.0), Method::Auto, n, false, trace);
    }

    let u = |nn: usize, p: usize| (s[nn] - s[nn - p]) / p as f64;

    let mut best_p = 1usize;
    let mut best_osc = f64::INFINITY;
    for p in 1..=8usize {
        if 4 * p > span {
            break;
        }
        let samples = [u(n, p), u(n - p, p), u(n - 2 * p, p), u(n - 3 * p, p)];
        let max = samples.iter().cloned().fold(f64::MIN, f64::max);
        let min = samples.iter().cloned().fold(f64::MAX, f64::min);
        let osc = max - min;
        if osc < best_osc - 1e-12 {
            best_osc = osc;
            best_p = p;
        }
    }
    // Prefer the smallest period among near-ties.
    for p in 1..best_p {
        if 4 * p > span {
            break;
        }
        let samples = [u(n, p), u(n - p, p), u(n - 2 * p, p), u(n - 3 * p, p)];
        let max = samples.iter().cloned().fold(f64::MIN, f64::max);
        let min = samples.iter().cloned().fold(f64::MAX, f64::min);
        if max - min <= best_osc + 1e-9 {
            best_p = p;
            best_osc = max - min;
            break;
        }
    }

    let p = best_p;
    // Second node at ~half the usable span, congruent to N mod p.
    let k = (span / (2 * p)).max(1);
    let n0 = n - k * p;
    let u1 = u(n, p);
    let u0 = u(n0, p);
    let log2v = if n0 == n {
        u1
    } else {
        ((n as f64) * u1 - (n0 as f64) * u0) / (n - n0) as f64
    };
    let converged = best_osc <= 1e-2 && span >= 12;
    let trace: Vec<f64> = (lo + p..=n).map(|m| u(m, p).exp2()).collect();
    EntropyEstimate::from_log2(log2v.max(0.0), Method::Auto, n, converged, trace)
}

/// The algebraic entropy h_alg = limsup a_m^(1/m) of a growth sequence,
/// by the requested method.
pub fn algebraic_entropy(seq: &GrowthSequence, method: Method) -> EntropyEstimate {
    growth_estimate(seq.values(), method)
}

/// The language/subshift entropy: log2 of the algebraic entropy. One
/// value serves both h_top(X_F) and h(L); read it from the `log2` field.
pub fn language_entropy(seq: &GrowthSequence) -> EntropyEstimate {
    algebraic_entropy(seq, Method::Auto)
}
