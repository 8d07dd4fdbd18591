//! Minimum-weight explanation oracle, degeneracy classification, localized
//! ML reference decoding, and decoding-radius scans.

use crate::decoder::{decode_with_state, DecoderConfig, DecoderState, Message};
use crate::error::{Error, Result};
use crate::lattice::{ErrorVector, SyndromeVector, ToricLattice};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

/// All minimal-weight errors explaining a syndrome.
#[derive(Clone, Debug)]
pub struct ExplanationSet {
    pub syndrome: SyndromeVector,
    /// `None` when no explanation of weight ≤ the bound exists.
    pub min_weight: Option<usize>,
    pub errors: Vec<ErrorVector>,
    /// The search bound was hit without finding a solution.
    pub truncated: bool,
}

/// Exhaustive search for all minimal-weight explanations of `s` with weight
/// at most `weight_bound`.
///
/// The search branches on the 4 edges of the smallest unsatisfied check,
/// with iterative deepening on the weight; it is complete for
/// `weight_bound < d/2` (a syndrome-free component is a cycle of weight
/// ≥ 4 and cannot hide inside such a budget, and no wrap-around fits).
pub fn min_weight_explanations(
    lat: &ToricLattice,
    s: &SyndromeVector,
    weight_bound: usize,
) -> Result<ExplanationSet> {
    if s.fake || s.weight() % 2 == 1 {
        return Err(Error::InvalidParameter(
            "explanations exist only for valid (even-weight, non-fake) syndromes".into(),
        ));
    }
    if s.len() != lat.n_checks() {
        return Err(Error::InvalidParameter("syndrome length mismatch".into()));
    }
    if weight_bound >= (lat.d() + 1) / 2 {
        return Err(Error::UnsupportedWeight { weight: weight_bound, bound: (lat.d() - 1) / 2 });
    }
    if s.is_zero() {
        return Ok(ExplanationSet {
            syndrome: s.clone(),
            min_weight: Some(0),
            errors: vec![ErrorVector::zeros(lat.n_qubits())],
            truncated: false,
        });
    }
    let unsatisfied: BTreeSet<usize> = s.unsatisfied().collect();
    for budget in 1..=weight_bound {
        let mut solutions = BTreeSet::new();
        let mut support = Vec::new();
        search(lat, &unsatisfied, budget, &mut support, &mut solutions);
        if !solutions.is_empty() {
            let errors = solutions
                .into_iter()
                .map(|sol| ErrorVector::from_indices(lat.n_qubits(), &sol))
                .collect();
            return Ok(ExplanationSet {
                syndrome: s.clone(),
                min_weight: Some(budget),
                errors,
                truncated: false,
            });
        }
    }
    Ok(ExplanationSet { syndrome: s.clone(), min_weight: None, errors: Vec::new(), truncated: true })
}

fn search(
    lat: &ToricLattice,
    unsatisfied: &BTreeSet<usize>,
    budget: usize,
    support: &mut Vec<usize>,
    solutions: &mut BTreeSet<Vec<usize>>,
) {
    if unsatisfied.is_empty() {
        let mut sol = support.clone();
        sol.sort_unstable();
        solutions.insert(sol);
        return;
    }
    // Each edge clears at most 2 unsatisfied checks.
    if budget == 0 || unsatisfied.len() > 2 * budget {
        return;
    }
    let check = *unsatisfied.iter().next().unwrap();
    for e in lat.check_edge_list(check) {
        if support.contains(&e) {
            continue;
        }
        support.push(e);
        let mut next = unsatisfied.clone();
        for c in lat.edge_check_list(e) {
            if !next.insert(c) {
                next.remove(&c);
            }
        }
        search(lat, &next, budget - 1, support, solutions);
        support.pop();
    }
}

/// An error is degenerate when some different error of weight ≤ |e| has the
/// same syndrome.
pub fn is_degenerate(lat: &ToricLattice, e: &ErrorVector) -> Result<bool> {
    let w = e.weight();
    let s = lat.syndrome_of(e)?;
    let set = min_weight_explanations(lat, &s, w)?;
    match set.min_weight {
        Some(min) if min < w => Ok(true),
        Some(min) => {
            debug_assert_eq!(min, w);
            Ok(set.errors.len() > 1 || !set.errors.contains(e))
        }
        None => unreachable!("e itself has weight within the bound"),
    }
}

/// Localized maximum-likelihood reference decoder: per qubit, the agreed
/// value across all minimal explanations, or a seeded random bit on
/// disagreement. The output may fail to satisfy the syndrome.
pub fn localized_ml_decode(
    lat: &ToricLattice,
    s: &SyndromeVector,
    weight_bound: usize,
    rng_seed: u64,
) -> Result<ErrorVector> {
    let set = min_weight_explanations(lat, s, weight_bound)?;
    if set.errors.is_empty() {
        return Err(Error::UnsupportedWeight { weight: weight_bound, bound: weight_bound });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut out = ErrorVector::zeros(lat.n_qubits());
    for q in 0..lat.n_qubits() {
        let first = set.errors[0].get(q);
        let agreed = set.errors.iter().all(|e| e.get(q) == first);
        out.set(q, if agreed { first } else { rng.gen::<bool>() });
    }
    Ok(out)
}

/// Which decoding pipeline a scan exercises.
#[derive(Clone, Debug)]
pub enum ScanDecoder<T> {
    /// Message passing on the plain lattice graph.
    Plain(DecoderConfig<T>),
    /// Stabilizer blowup followed by message passing on the blown graph.
    SbMs(DecoderConfig<T>),
}

impl<T> ScanDecoder<T> {
    pub fn label(&self) -> &'static str {
        match self {
            ScanDecoder::Plain(_) => "ms",
            ScanDecoder::SbMs(_) => "sb+ms",
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct WeightTally {
    pub weight: usize,
    pub total: u64,
    pub non_degenerate: u64,
    /// Non-degenerate errors decoded successfully.
    pub decoded: u64,
    /// Degenerate errors that nevertheless decoded successfully (recorded,
    /// never asserted: degenerate does not imply undecodable).
    pub degenerate_decoded: u64,
    pub degenerate_total: u64,
    pub max_iterations: usize,
    /// Non-degenerate errors that failed, as edge-name lists.
    pub failing_witnesses: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RadiusReport {
    pub d: usize,
    pub decoder: String,
    pub t_max: usize,
    pub translation_symmetry: bool,
    pub tallies: Vec<WeightTally>,
    /// Largest w with no failing non-degenerate witness at any weight ≤ w.
    pub omega: usize,
}

impl RadiusReport {
    pub fn to_table(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(
            out,
            "d={} decoder={} t_max={} canonical={}",
            self.d, self.decoder, self.t_max, self.translation_symmetry
        )
        .unwrap();
        writeln!(out, "{:>6} {:>12} {:>12} {:>12} {:>12} {:>8}", "weight", "total", "non-degen",
                 "decoded", "degen-dec", "max-iter")
            .unwrap();
        for t in &self.tallies {
            writeln!(
                out,
                "{:>6} {:>12} {:>12} {:>12} {:>12} {:>8}",
                t.weight, t.total, t.non_degenerate, t.decoded, t.degenerate_decoded,
                t.max_iterations
            )
            .unwrap();
        }
        writeln!(out, "non-degenerate decoding radius >= {}", self.omega).unwrap();
        out
    }
}

/// All weight-w errors up to translation: the lexicographically smallest
/// member of each translation orbit, paired with its orbit size.
pub fn canonical_errors(lat: &ToricLattice, w: usize) -> Vec<(ErrorVector, u64)> {
    let mut out = Vec::new();
    let n = lat.n_qubits();
    // A canonical form has its smallest edge at the origin: H(0,0) when the
    // support contains a horizontal edge, V(0,0) otherwise.
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    let mut rest = Vec::new();
    combinations(1, n, w - 1, &mut rest, &mut |tail| {
        candidates.push(std::iter::once(0).chain(tail.iter().copied()).collect());
    });
    let dd = lat.d() * lat.d();
    let mut tail = Vec::new();
    combinations(dd + 1, n, w - 1, &mut tail, &mut |t| {
        candidates.push(std::iter::once(dd).chain(t.iter().copied()).collect());
    });
    for support in candidates {
        if let Some(orbit) = orbit_size_if_canonical(lat, &support) {
            out.push((ErrorVector::from_indices(n, &support), orbit));
        }
    }
    out
}

fn combinations(
    from: usize,
    n: usize,
    k: usize,
    acc: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if k == 0 {
        f(acc);
        return;
    }
    for i in from..=n.saturating_sub(k) {
        acc.push(i);
        combinations(i + 1, n, k - 1, acc, f);
        acc.pop();
    }
}

/// Orbit size when `support` (sorted) is the lexicographic minimum of its
/// translation orbit, else `None`.
fn orbit_size_if_canonical(lat: &ToricLattice, support: &[usize]) -> Option<u64> {
    let d = lat.d() as i64;
    let mut distinct = BTreeSet::new();
    let mut translated = Vec::with_capacity(support.len());
    for dr in 0..d {
        for dc in 0..d {
            translated.clear();
            for &q in support {
                let id = lat.edge_at(q);
                let idx = match id.orientation {
                    crate::lattice::Orientation::Horizontal => {
                        lat.h(id.r as i64 + dr, id.c as i64 + dc)
                    }
                    crate::lattice::Orientation::Vertical => {
                        lat.v(id.r as i64 + dr, id.c as i64 + dc)
                    }
                };
                translated.push(idx);
            }
            translated.sort_unstable();
            if translated.as_slice() < support {
                return None;
            }
            distinct.insert(translated.clone());
        }
    }
    Some(distinct.len() as u64)
}

/// Exhaustive decoding scan over all errors of weight ≤ `w_max`, optionally
/// reduced to translation-canonical representatives (tallies weighted by
/// orbit size). A non-degenerate error counts as decoded when the decoder
/// converges and the residual is a stabilizer.
pub fn radius_scan<T: Message>(
    lat: &ToricLattice,
    decoder: &ScanDecoder<T>,
    w_max: usize,
    use_translation_symmetry: bool,
) -> Result<RadiusReport> {
    // Degeneracy classification of a weight-w error needs the minimum-weight
    // oracle at bound w, which is only complete below half the distance.
    if w_max > (lat.d() - 1) / 2 {
        return Err(Error::UnsupportedWeight { weight: w_max, bound: (lat.d() - 1) / 2 });
    }
    let graph = lat.to_tanner();
    let (cfg, t_max) = match decoder {
        ScanDecoder::Plain(c) | ScanDecoder::SbMs(c) => (c, c.t_max),
    };
    let mut tallies = Vec::new();
    for w in 1..=w_max {
        let reps: Vec<(ErrorVector, u64)> = if use_translation_symmetry {
            canonical_errors(lat, w)
        } else {
            let mut all = Vec::new();
            let mut acc = Vec::new();
            combinations(0, lat.n_qubits(), w, &mut acc, &mut |support| {
                all.push((ErrorVector::from_indices(lat.n_qubits(), support), 1));
            });
            all
        };
        let partial: Vec<(u64, u64, u64, u64, u64, usize, Vec<Vec<String>>)> = reps
            .par_iter()
            .map_init(
                || DecoderState::init(&graph, cfg),
                |state, (e, orbit)| {
                    let mut tally = (0, 0, 0, 0, 0, 0, Vec::new());
                    tally.0 = *orbit;
                    let s = lat.syndrome_of(e).expect("sized by construction");
                    let degenerate = if s.is_zero() {
                        true
                    } else {
                        is_degenerate(lat, e).expect("weight within oracle bound")
                    };
                    let (success, iterations) = match decoder {
                        ScanDecoder::Plain(_) => {
                            let outcome =
                                decode_with_state(&graph, s.bits(), cfg, &[], state).unwrap();
                            let converged = outcome.status.converged_at();
                            let ok = converged.is_some() && {
                                let est = ErrorVector::from_bits(outcome.estimate.clone());
                                let residual = e.xor(&est);
                                lat.homology_class(&residual) == Ok((false, false))
                            };
                            (ok, converged.unwrap_or(0))
                        }
                        ScanDecoder::SbMs(c) => {
                            let outcome = crate::blowup::decode_sb_ms(lat, &s, c).unwrap();
                            match outcome.estimate {
                                Some(est) => {
                                    let residual = e.xor(&est);
                                    let ok =
                                        lat.homology_class(&residual) == Ok((false, false));
                                    (ok, outcome.status.converged_at().unwrap_or(0))
                                }
                                None => (false, 0),
                            }
                        }
                    };
                    if degenerate {
                        tally.4 = *orbit;
                        if success {
                            tally.3 = *orbit;
                        }
                    } else {
                        tally.1 = *orbit;
                        if success {
                            tally.2 = *orbit;
                        } else {
                            tally.6.push(
                                e.support().map(|q| lat.edge_at(q).to_string()).collect(),
                            );
                        }
                    }
                    tally.5 = iterations;
                    tally
                },
            )
            .collect();
        let mut tally = WeightTally { weight: w, ..WeightTally::default() };
        for (total, nondeg, decoded, degdec, degtot, iters, witnesses) in partial {
            tally.total += total;
            tally.non_degenerate += nondeg;
            tally.decoded += decoded;
            tally.degenerate_decoded += degdec;
            tally.degenerate_total += degtot;
            tally.max_iterations = tally.max_iterations.max(iters);
            tally.failing_witnesses.extend(witnesses);
        }
        tally.failing_witnesses.sort();
        tallies.push(tally);
    }
    let mut omega = 0;
    for t in &tallies {
        if t.failing_witnesses.is_empty() {
            omega = t.weight;
        } else {
            break;
        }
    }
    Ok(RadiusReport {
        d: lat.d(),
        decoder: decoder.label().to_string(),
        t_max,
        translation_symmetry: use_translation_symmetry,
        tallies,
        omega,
    })
}
