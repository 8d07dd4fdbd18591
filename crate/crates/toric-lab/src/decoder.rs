//! Flooded-schedule message-passing decoders (min-sum, normalized min-sum,
//! sum-product) over a [`TannerGraph`], generic over the message scalar.
//!
//! Min-sum with unit prior runs on `i64` and is exact: every message and
//! APP is an odd integer. Normalized min-sum with λ = k/16 runs on `f64`,
//! where all updates (sums, negations, scaling by k/16) are exact dyadic
//! arithmetic for the iteration counts used here. Sum-product (BP) runs on
//! `f64` with the usual tanh rule.
//!
//! No message clipping or saturation is performed for MS/NMS; the analysis
//! relies on unbounded growth (APP = 1+2i on the zero syndrome).

use crate::error::{Error, Result};
use crate::tanner::TannerGraph;
use num_traits::{NumCast, Signed};

/// Scalar type a decoder can run on.
pub trait Message:
    Signed + PartialOrd + NumCast + Copy + std::fmt::Debug + Send + Sync + 'static
{
}

impl<T> Message for T where
    T: Signed + PartialOrd + NumCast + Copy + std::fmt::Debug + Send + Sync + 'static
{
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Rule<T> {
    /// Plain min-sum: sign product × min extrinsic magnitude.
    MinSum,
    /// Min-sum with check outputs scaled by λ ∈ (0,1].
    Normalized(T),
    /// Sum-product (BP): tanh rule. Requires a floating scalar.
    SumProduct,
}

/// Hard decision for APP exactly zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TieRule {
    #[default]
    ZeroMeansNoError,
    ZeroMeansError,
}

#[derive(Clone, Debug)]
pub struct DecoderConfig<T> {
    pub rule: Rule<T>,
    /// A priori value γ, identical for every variable.
    pub prior: T,
    pub t_max: usize,
    pub tie_rule: TieRule,
    /// When false, `decode` runs all `t_max` iterations regardless of
    /// syndrome satisfaction (used by the blindness verifier) and only
    /// records the first satisfying iteration.
    pub stop_on_convergence: bool,
}

impl DecoderConfig<i64> {
    /// Exact integer min-sum with γ = 1.
    pub fn ms(t_max: usize) -> Self {
        DecoderConfig {
            rule: Rule::MinSum,
            prior: 1,
            t_max,
            tie_rule: TieRule::default(),
            stop_on_convergence: true,
        }
    }
}

impl DecoderConfig<f64> {
    /// Normalized min-sum with λ = `lambda_sixteenths`/16, γ = 1.
    pub fn nms(lambda_sixteenths: u32, t_max: usize) -> Result<Self> {
        if lambda_sixteenths == 0 || lambda_sixteenths > 16 {
            return Err(Error::InvalidParameter(format!(
                "λ numerator must be in 1..=16, got {lambda_sixteenths}"
            )));
        }
        Ok(DecoderConfig {
            rule: Rule::Normalized(lambda_sixteenths as f64 / 16.0),
            prior: 1.0,
            t_max,
            tie_rule: TieRule::default(),
            stop_on_convergence: true,
        })
    }

    /// Sum-product with channel prior γ = ln((1−p)/p).
    pub fn bp(p: f64, t_max: usize) -> Result<Self> {
        if !(p > 0.0 && p < 0.5) {
            return Err(Error::InvalidParameter(format!(
                "BP channel probability must be in (0, 0.5), got {p}"
            )));
        }
        Ok(DecoderConfig {
            rule: Rule::SumProduct,
            prior: ((1.0 - p) / p).ln(),
            t_max,
            tie_rule: TieRule::default(),
            stop_on_convergence: true,
        })
    }
}

impl<T: Message> DecoderConfig<T> {
    pub fn without_stopping(mut self) -> Self {
        self.stop_on_convergence = false;
        self
    }

    pub fn with_t_max(mut self, t_max: usize) -> Self {
        self.t_max = t_max;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Converged { at_iteration: usize },
    Exhausted { t_max: usize },
}

impl Status {
    pub fn converged_at(&self) -> Option<usize> {
        match *self {
            Status::Converged { at_iteration } => Some(at_iteration),
            Status::Exhausted { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecodeOutcome<T> {
    pub status: Status,
    /// Hard decision at the final executed iteration.
    pub estimate: Vec<bool>,
    /// One row per executed iteration, one APP per watched variable.
    pub app_trace: Vec<Vec<T>>,
    /// First iteration whose hard decision satisfied the syndrome, also
    /// recorded when stopping is disabled.
    pub first_satisfied: Option<usize>,
}

/// Per-directed-edge messages of a flooded decoder, reusable across decode
/// calls on the same graph.
#[derive(Clone, Debug)]
pub struct DecoderState<T> {
    /// Variable→check message per Tanner-edge slot.
    v2c: Vec<T>,
    /// Check→variable message per Tanner-edge slot.
    c2v: Vec<T>,
    app: Vec<T>,
    estimate: Vec<bool>,
    iteration: usize,
}

impl<T: Message> DecoderState<T> {
    pub fn init(g: &TannerGraph, cfg: &DecoderConfig<T>) -> Self {
        DecoderState {
            v2c: vec![cfg.prior; g.n_edges()],
            c2v: vec![T::zero(); g.n_edges()],
            app: vec![cfg.prior; g.n_vars()],
            estimate: vec![false; g.n_vars()],
            iteration: 0,
        }
    }

    pub fn reset(&mut self, cfg: &DecoderConfig<T>) {
        self.v2c.fill(cfg.prior);
        self.c2v.fill(T::zero());
        self.app.fill(cfg.prior);
        self.estimate.fill(false);
        self.iteration = 0;
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    /// A posteriori value of a variable at the current iteration.
    pub fn app_of(&self, v: usize) -> T {
        self.app[v]
    }

    pub fn estimate(&self) -> &[bool] {
        &self.estimate
    }

    /// One flooded iteration: a full check-update sweep, then a full
    /// variable-update sweep, then APPs and the hard decision.
    pub fn step(&mut self, g: &TannerGraph, syndrome: &[bool], cfg: &DecoderConfig<T>) {
        debug_assert_eq!(syndrome.len(), g.n_checks());
        for c in 0..g.n_checks() {
            let vars = g.check_vars(c);
            let base = g.check_offset(c);
            match cfg.rule {
                Rule::MinSum | Rule::Normalized(_) => {
                    for i in 0..vars.len() {
                        let mut negative = syndrome[c];
                        let mut magnitude: Option<T> = None;
                        for j in 0..vars.len() {
                            if j == i {
                                continue;
                            }
                            let m = self.v2c[base + j];
                            if m < T::zero() {
                                negative = !negative;
                            }
                            let a = m.abs();
                            magnitude = Some(match magnitude {
                                Some(cur) if cur <= a => cur,
                                _ => a,
                            });
                        }
                        let mut out = magnitude.unwrap_or_else(T::zero);
                        if let Rule::Normalized(lambda) = cfg.rule {
                            out = out * lambda;
                        }
                        self.c2v[base + i] = if negative { -out } else { out };
                    }
                }
                Rule::SumProduct => {
                    for i in 0..vars.len() {
                        let mut prod = 1.0f64;
                        for j in 0..vars.len() {
                            if j == i {
                                continue;
                            }
                            let m: f64 = NumCast::from(self.v2c[base + j]).unwrap();
                            prod *= (m / 2.0).tanh();
                        }
                        // Guard against |prod| rounding to 1 for very large
                        // inputs, which would send atanh to infinity.
                        prod = prod.clamp(-CLAMP, CLAMP);
                        let mut out = 2.0 * prod.atanh();
                        if syndrome[c] {
                            out = -out;
                        }
                        self.c2v[base + i] = NumCast::from(out).unwrap();
                    }
                }
            }
        }
        for v in 0..g.n_vars() {
            let ports = g.var_ports(v);
            let mut total = cfg.prior;
            for &p in ports {
                total = total + self.c2v[p];
            }
            self.app[v] = total;
            // Extrinsic sums computed directly (degrees are tiny) so exact
            // scalar types stay exact.
            for (i, &pi) in ports.iter().enumerate() {
                let mut out = cfg.prior;
                for (j, &pj) in ports.iter().enumerate() {
                    if j != i {
                        out = out + self.c2v[pj];
                    }
                }
                self.v2c[pi] = out;
            }
            self.estimate[v] = match cfg.tie_rule {
                TieRule::ZeroMeansNoError => self.app[v] < T::zero(),
                TieRule::ZeroMeansError => self.app[v] <= T::zero(),
            };
        }
        self.iteration += 1;
    }

    /// Does the current hard decision satisfy the syndrome?
    pub fn is_satisfied(&self, g: &TannerGraph, syndrome: &[bool]) -> bool {
        for c in 0..g.n_checks() {
            let mut parity = false;
            for &v in g.check_vars(c) {
                parity ^= self.estimate[v];
            }
            if parity != syndrome[c] {
                return false;
            }
        }
        true
    }
}

const CLAMP: f64 = 1.0 - 1e-15;

/// Runs the flooded decoder on a syndrome bit vector, tracing the APPs of
/// the `watch` variables at every executed iteration.
pub fn decode<T: Message>(
    g: &TannerGraph,
    syndrome: &[bool],
    cfg: &DecoderConfig<T>,
    watch: &[usize],
) -> Result<DecodeOutcome<T>> {
    let mut state = DecoderState::init(g, cfg);
    decode_with_state(g, syndrome, cfg, watch, &mut state)
}

/// As [`decode`], but reusing a caller-owned state (hot loops).
pub fn decode_with_state<T: Message>(
    g: &TannerGraph,
    syndrome: &[bool],
    cfg: &DecoderConfig<T>,
    watch: &[usize],
    state: &mut DecoderState<T>,
) -> Result<DecodeOutcome<T>> {
    if syndrome.len() != g.n_checks() {
        return Err(Error::InvalidParameter(format!(
            "syndrome length {} != {} checks",
            syndrome.len(),
            g.n_checks()
        )));
    }
    if cfg.t_max == 0 {
        return Err(Error::InvalidParameter("t_max must be >= 1".into()));
    }
    state.reset(cfg);
    let mut app_trace = Vec::new();
    let mut first_satisfied = None;
    let mut status = Status::Exhausted { t_max: cfg.t_max };
    for t in 1..=cfg.t_max {
        state.step(g, syndrome, cfg);
        if !watch.is_empty() {
            app_trace.push(watch.iter().map(|&q| state.app_of(q)).collect());
        }
        if first_satisfied.is_none() && state.is_satisfied(g, syndrome) {
            first_satisfied = Some(t);
            if cfg.stop_on_convergence {
                status = Status::Converged { at_iteration: t };
                break;
            }
        }
    }
    Ok(DecodeOutcome { status, estimate: state.estimate().to_vec(), app_trace, first_satisfied })
}
