//! i.i.d. X-error channel sampling, logical-error-rate estimation, and
//! log-log slope fitting.
//!
//! Per-trial randomness is a counter-based ChaCha stream keyed by
//! (master seed, trial index), so tallies are identical regardless of
//! worker count or scheduling.

use crate::blowup::decode_sb_ms;
use crate::decoder::{decode_with_state, DecoderConfig, DecoderState};
use crate::error::{Error, Result};
use crate::lattice::{ErrorVector, ToricLattice};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug)]
pub struct ChannelConfig {
    /// Physical X-error probability per qubit.
    pub p: f64,
    pub seed: u64,
}

impl ChannelConfig {
    pub fn new(p: f64, seed: u64) -> Result<Self> {
        if !(0.0..0.5).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "channel probability must be in [0, 0.5), got {p}"
            )));
        }
        Ok(ChannelConfig { p, seed })
    }
}

/// Samples the error of one trial; independent of execution order.
pub fn sample_error(lat: &ToricLattice, channel: &ChannelConfig, trial: u64) -> ErrorVector {
    let mut rng = ChaCha8Rng::seed_from_u64(channel.seed);
    rng.set_stream(trial);
    let mut e = ErrorVector::zeros(lat.n_qubits());
    for q in 0..lat.n_qubits() {
        if rng.gen::<f64>() < channel.p {
            e.flip(q);
        }
    }
    e
}

/// Decoder selection for the Monte-Carlo harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McDecoder {
    Ms,
    SbMs,
    /// λ numerator over 16.
    Nms(u32),
    /// Sum-product with prior derived from the channel p.
    Bp,
}

impl McDecoder {
    pub fn label(&self) -> &'static str {
        match self {
            McDecoder::Ms => "ms",
            McDecoder::SbMs => "sb+ms",
            McDecoder::Nms(_) => "nms",
            McDecoder::Bp => "bp",
        }
    }

    pub fn lambda(&self) -> Option<f64> {
        match self {
            McDecoder::Nms(k) => Some(*k as f64 / 16.0),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LerEstimate {
    pub d: usize,
    pub decoder: String,
    pub lambda: Option<f64>,
    pub p: f64,
    pub trials: u64,
    pub t_max: usize,
    /// Trials where the decoder never satisfied the syndrome.
    pub failures_detected: u64,
    /// Trials that converged to a residual with nontrivial homology.
    pub failures_logical: u64,
    pub ler: f64,
    pub stderr: f64,
    pub seed: u64,
}

impl LerEstimate {
    pub fn csv_header() -> &'static str {
        "d,decoder,lambda,p,trials,tmax,failures_detected,failures_logical,ler,stderr,seed"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.d,
            self.decoder,
            self.lambda.map_or(String::new(), |l| l.to_string()),
            self.p,
            self.trials,
            self.t_max,
            self.failures_detected,
            self.failures_logical,
            self.ler,
            self.stderr,
            self.seed
        )
    }
}

enum TrialResult {
    Success,
    Detected,
    Logical,
}

fn classify(lat: &ToricLattice, e: &ErrorVector, estimate: Option<ErrorVector>) -> TrialResult {
    match estimate {
        None => TrialResult::Detected,
        Some(est) => {
            let residual = e.xor(&est);
            match lat.homology_class(&residual).expect("estimate satisfies the syndrome") {
                (false, false) => TrialResult::Success,
                _ => TrialResult::Logical,
            }
        }
    }
}

/// Estimates the logical error rate: a failure is either non-convergence
/// (detected) or a converged residual with nontrivial homology (logical).
pub fn estimate_ler(
    lat: &ToricLattice,
    channel: &ChannelConfig,
    trials: u64,
    decoder: McDecoder,
    t_max: usize,
) -> Result<LerEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    if let McDecoder::Nms(k) = decoder {
        // Validate λ up front rather than per trial.
        DecoderConfig::nms(k, t_max)?;
    }
    if decoder == McDecoder::Bp {
        DecoderConfig::bp(channel.p.max(f64::MIN_POSITIVE), t_max)?;
    }
    let graph = lat.to_tanner();
    let run = |e: &ErrorVector,
               ms_state: &mut DecoderState<i64>,
               soft_state: &mut DecoderState<f64>|
     -> TrialResult {
        let s = lat.syndrome_of(e).expect("sized by construction");
        if s.is_zero() {
            return classify(lat, e, Some(ErrorVector::zeros(lat.n_qubits())));
        }
        match decoder {
            McDecoder::Ms => {
                let cfg = DecoderConfig::ms(t_max);
                let out = decode_with_state(&graph, s.bits(), &cfg, &[], ms_state).unwrap();
                let est = out
                    .status
                    .converged_at()
                    .map(|_| ErrorVector::from_bits(out.estimate));
                classify(lat, e, est)
            }
            McDecoder::SbMs => {
                let cfg = DecoderConfig::ms(t_max);
                let out = decode_sb_ms(lat, &s, &cfg).unwrap();
                classify(lat, e, out.estimate)
            }
            McDecoder::Nms(k) => {
                let cfg = DecoderConfig::nms(k, t_max).unwrap();
                let out = decode_with_state(&graph, s.bits(), &cfg, &[], soft_state).unwrap();
                let est = out
                    .status
                    .converged_at()
                    .map(|_| ErrorVector::from_bits(out.estimate));
                classify(lat, e, est)
            }
            McDecoder::Bp => {
                let cfg = DecoderConfig::bp(channel.p, t_max).unwrap();
                let out = decode_with_state(&graph, s.bits(), &cfg, &[], soft_state).unwrap();
                let est = out
                    .status
                    .converged_at()
                    .map(|_| ErrorVector::from_bits(out.estimate));
                classify(lat, e, est)
            }
        }
    };
    let (detected, logical) = (0..trials)
        .into_par_iter()
        .map_init(
            || {
                (
                    DecoderState::<i64>::init(&graph, &DecoderConfig::ms(t_max)),
                    DecoderState::<f64>::init(
                        &graph,
                        &DecoderConfig::nms(16, t_max).expect("valid λ"),
                    ),
                )
            },
            |(ms_state, soft_state), trial| {
                let e = sample_error(lat, channel, trial);
                match run(&e, ms_state, soft_state) {
                    TrialResult::Success => (0u64, 0u64),
                    TrialResult::Detected => (1, 0),
                    TrialResult::Logical => (0, 1),
                }
            },
        )
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let failures = detected + logical;
    let ler = failures as f64 / trials as f64;
    let stderr = (ler * (1.0 - ler) / trials as f64).sqrt();
    Ok(LerEstimate {
        d: lat.d(),
        decoder: decoder.label().to_string(),
        lambda: decoder.lambda(),
        p: channel.p,
        trials,
        t_max,
        failures_detected: detected,
        failures_logical: logical,
        ler,
        stderr,
        seed: channel.seed,
    })
}

/// Least-squares slope of log(ler) against log(p).
pub fn fit_slope(points: &[(f64, f64)]) -> Result<f64> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(p, ler)| p > 0.0 && ler > 0.0)
        .map(|&(p, ler)| (p.ln(), ler.ln()))
        .collect();
    if usable.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "slope fit needs >= 3 points with positive rates, got {}",
            usable.len()
        )));
    }
    let n = usable.len() as f64;
    let mx = usable.iter().map(|&(x, _)| x).sum::<f64>() / n;
    let my = usable.iter().map(|&(_, y)| y).sum::<f64>() / n;
    let sxy: f64 = usable.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = usable.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}
