//! Local-blindness verification: compare the APPs around an unsatisfied
//! check under the real syndrome and under the fake single-check syndrome,
//! iteration by iteration, plus the normalized-min-sum sweep, the packed
//! syndrome, and the BP gap trace.

use crate::decoder::{decode, DecoderConfig, Message, Rule};
use crate::error::{Error, Result};
use crate::lattice::{SyndromeVector, ToricLattice, VertexId};
use num_traits::NumCast;
use rayon::prelude::*;
use serde::Serialize;

/// The weight-1 indicator of a single check; not realizable by any error.
pub fn fake_syndrome(lat: &ToricLattice, c: VertexId) -> SyndromeVector {
    SyndromeVector::from_checks(lat, &[c], true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Every recorded APP gap is exactly zero.
    Blind,
    /// First iteration with a nonzero gap.
    Broken { at: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct BlindnessReport {
    pub check: (usize, usize),
    pub decoder: String,
    pub lambda: Option<f64>,
    pub verdict: Verdict,
    /// Per-iteration maximum |APP(q,i) − APP^c(q,i)| over q ∈ N(c).
    pub gaps: Vec<f64>,
    /// First iteration at which the real run satisfied its syndrome.
    pub converged: Option<usize>,
}

fn decoder_label<T>(cfg: &DecoderConfig<T>) -> (String, Option<f64>)
where
    T: Message,
{
    match cfg.rule {
        Rule::MinSum => ("ms".into(), None),
        Rule::Normalized(l) => ("nms".into(), NumCast::from(l)),
        Rule::SumProduct => ("bp".into(), None),
    }
}

/// Runs the decoder on `s` and on the fake syndrome of `c` for exactly
/// `i_max` iterations each (convergence stopping disabled) and compares the
/// APPs of the four qubits neighboring `c` exactly — integer equality for
/// MS, bit-exact dyadic equality for NMS.
pub fn blindness_report<T: Message>(
    lat: &ToricLattice,
    s: &SyndromeVector,
    c: VertexId,
    cfg: &DecoderConfig<T>,
    i_max: usize,
) -> Result<BlindnessReport> {
    let check = lat.check_index(c);
    if !s.get(check) {
        return Err(Error::InvalidParameter(format!(
            "check ({},{}) is satisfied in the given syndrome",
            c.r, c.c
        )));
    }
    let graph = lat.to_tanner();
    let watch: Vec<usize> = lat.check_edge_list(check).to_vec();
    let run_cfg = cfg.clone().with_t_max(i_max).without_stopping();
    let real = decode(&graph, s.bits(), &run_cfg, &watch)?;
    let fake = decode(&graph, fake_syndrome(lat, c).bits(), &run_cfg, &watch)?;
    let mut gaps = Vec::with_capacity(i_max);
    let mut verdict = Verdict::Blind;
    for (i, (a, b)) in real.app_trace.iter().zip(&fake.app_trace).enumerate() {
        let mut max_gap = 0.0f64;
        let mut equal = true;
        for (x, y) in a.iter().zip(b) {
            if x != y {
                equal = false;
            }
            let gap: f64 = NumCast::from((*x - *y).abs()).unwrap_or(f64::NAN);
            max_gap = max_gap.max(gap);
        }
        if !equal && verdict == Verdict::Blind {
            verdict = Verdict::Broken { at: i + 1 };
        }
        gaps.push(max_gap);
    }
    let (decoder, lambda) = decoder_label(cfg);
    Ok(BlindnessReport {
        check: (c.r, c.c),
        decoder,
        lambda,
        verdict,
        gaps,
        converged: real.first_satisfied,
    })
}

/// Translation-canonical weight-2 syndromes whose two checks are at
/// distance ≥ `min_dist`: one check fixed at the origin, antipodal
/// duplicates removed.
pub fn weight2_far_syndromes(lat: &ToricLattice, min_dist: usize) -> Vec<SyndromeVector> {
    let d = lat.d();
    let origin = VertexId { r: 0, c: 0 };
    let mut out = Vec::new();
    for r in 0..d {
        for c in 0..d {
            if (r, c) == (0, 0) {
                continue;
            }
            // {(0,0),(r,c)} and {(0,0),(−r,−c)} are translates of each
            // other; keep the lexicographically smaller partner.
            let neg = ((d - r) % d, (d - c) % d);
            if (r, c) > neg {
                continue;
            }
            let other = VertexId { r, c };
            if lat.check_distance(origin, other) >= min_dist {
                out.push(SyndromeVector::from_checks(lat, &[origin, other], false));
            }
        }
    }
    out
}

/// The packed syndrome s(c_{i,j}) = 1 ⟺ j = 5i mod 13, defined for
/// d ∈ {13, 26}; fake (odd weight) at d = 13, valid at d = 26.
pub fn packed_syndrome(lat: &ToricLattice) -> Result<SyndromeVector> {
    let d = lat.d();
    if d != 13 && d != 26 {
        return Err(Error::InvalidParameter(format!(
            "packed syndrome is defined for d in {{13, 26}}, got {d}"
        )));
    }
    let checks: Vec<VertexId> =
        (0..d).map(|i| VertexId { r: i, c: (5 * i) % 13 }).collect();
    let fake = checks.len() % 2 == 1;
    Ok(SyndromeVector::from_checks(lat, &checks, fake))
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub syndrome_id: usize,
    pub lambda_sixteenths: u32,
    pub report: BlindnessReport,
}

/// Blindness report per (syndrome, unsatisfied check, λ), in parallel.
pub fn nms_sweep(
    lat: &ToricLattice,
    syndromes: &[SyndromeVector],
    lambda_grid: &[u32],
    i_max: usize,
) -> Result<Vec<SweepRow>> {
    let mut jobs = Vec::new();
    for (id, s) in syndromes.iter().enumerate() {
        for check in s.unsatisfied() {
            for &lambda in lambda_grid {
                jobs.push((id, check, lambda));
            }
        }
    }
    jobs.par_iter()
        .map(|&(id, check, lambda)| {
            let cfg = DecoderConfig::nms(lambda, i_max)?;
            let report =
                blindness_report(lat, &syndromes[id], lat.check_at(check), &cfg, i_max)?;
            Ok(SweepRow { syndrome_id: id, lambda_sixteenths: lambda, report })
        })
        .collect()
}

/// BP gap trace: max |APP − APP^c| over N(c) per iteration, with the
/// channel prior ln((1−p)/p).
pub fn bp_gap_trace(
    lat: &ToricLattice,
    s: &SyndromeVector,
    c: VertexId,
    p_prior: f64,
    i_max: usize,
) -> Result<BlindnessReport> {
    let cfg = DecoderConfig::bp(p_prior, i_max)?;
    blindness_report(lat, s, c, &cfg, i_max)
}
