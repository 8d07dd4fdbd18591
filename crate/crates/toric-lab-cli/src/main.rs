//! Batch experiment driver: every library module behind a subcommand, with
//! key=value config files, CSV/JSON outputs, and deterministic seeding.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage/config error.

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use toric_lab::blindness::{
    blindness_report, bp_gap_trace, nms_sweep, packed_syndrome, weight2_far_syndromes, Verdict,
};
use toric_lab::decoder::{decode, DecoderConfig, Status};
use toric_lab::degeneracy::{min_weight_explanations, radius_scan, ScanDecoder};
use toric_lab::lattice::{ErrorVector, SyndromeVector, ToricLattice};
use toric_lab::montecarlo::{estimate_ler, ChannelConfig, LerEstimate, McDecoder};
use toric_lab::tree::{DecodingTree, ITERATION_DEPTH_OFFSET};

#[derive(Parser)]
#[command(name = "toric-lab", version, about = "Toric-code decoding laboratory", long_about = None)]
struct Cli {
    /// Worker threads (0 = all cores); results are independent of this.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// key=value config file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte-Carlo logical error rate over a probability grid (CSV output).
    Simulate(SimulateArgs),
    /// Local-blindness reports for far-pair or packed syndromes (JSON output).
    Blindness(BlindnessArgs),
    /// Exhaustive decoding scan over all errors of weight <= wmax.
    Radius(RadiusArgs),
    /// Verify the blowup pipeline corrects every error of weight <= wmax.
    SbVerify(SbVerifyArgs),
    /// Check min-sum APPs against the decoding-tree oracle.
    TreeCheck(TreeCheckArgs),
    /// Enumerate all minimum-weight explanations of a syndrome file.
    Enumerate(EnumerateArgs),
    /// Decode a single syndrome file.
    Decode(DecodeArgs),
}

/// One value sourced from a config file, overridable on the command line.
trait FromConfig {
    /// (key, apply) pairs; `apply` fills the field only when it is unset.
    fn entries(&mut self) -> Vec<(&'static str, Box<dyn FnMut(&str) -> anyhow::Result<()> + '_>)>;
}

fn set_opt<T: std::str::FromStr>(slot: &mut Option<T>) -> Box<dyn FnMut(&str) -> anyhow::Result<()> + '_>
where
    T::Err: std::fmt::Display,
{
    Box::new(move |raw| {
        if slot.is_none() {
            *slot = Some(raw.parse::<T>().map_err(|e| anyhow!("{e}"))?);
        }
        Ok(())
    })
}

fn apply_config(args: &mut dyn FromConfig, path: &PathBuf) -> anyhow::Result<()> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("config line {}: expected key=value", lineno + 1))?;
        if map.insert(key.trim().to_string(), value.trim().to_string()).is_some() {
            bail!("config line {}: duplicate key '{}'", lineno + 1, key.trim());
        }
    }
    let mut entries = args.entries();
    for (key, value) in &map {
        let entry = entries
            .iter_mut()
            .find(|(k, _)| k == key)
            .ok_or_else(|| anyhow!("unknown config key '{key}'"))?;
        (entry.1)(value).with_context(|| format!("config key '{key}'"))?;
    }
    Ok(())
}

#[derive(Args)]
struct SimulateArgs {
    /// Lattice size.
    #[arg(long)]
    d: Option<usize>,
    /// Decoder: ms | sb-ms | nms | bp.
    #[arg(long)]
    decoder: Option<String>,
    /// Normalization factor for nms; must be a multiple of 1/16 in (0, 1].
    #[arg(long)]
    lambda: Option<f64>,
    /// Iteration cap per decoding.
    #[arg(long)]
    tmax: Option<usize>,
    /// Comma-separated physical error probabilities.
    #[arg(long)]
    p: Option<String>,
    /// Trials per probability point.
    #[arg(long)]
    trials: Option<u64>,
    /// Master seed; trial i draws from stream i.
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl FromConfig for SimulateArgs {
    fn entries(&mut self) -> Vec<(&'static str, Box<dyn FnMut(&str) -> anyhow::Result<()> + '_>)> {
        vec![
            ("d", set_opt(&mut self.d)),
            ("decoder", set_opt(&mut self.decoder)),
            ("lambda", set_opt(&mut self.lambda)),
            ("tmax", set_opt(&mut self.tmax)),
            ("p", set_opt(&mut self.p)),
            ("trials", set_opt(&mut self.trials)),
            ("seed", set_opt(&mut self.seed)),
            ("out", set_opt(&mut self.out)),
        ]
    }
}

#[derive(Args)]
struct BlindnessArgs {
    /// Lattice size.
    #[arg(long)]
    d: Option<usize>,
    /// Decoder: ms | nms | bp.
    #[arg(long)]
    decoder: Option<String>,
    /// start:end:step grid of normalization factors (multiples of 1/16).
    #[arg(long)]
    lambda_grid: Option<String>,
    /// Iterations compared (convergence stopping disabled).
    #[arg(long)]
    imax: Option<usize>,
    /// Minimum pairwise check distance of the far-pair census.
    #[arg(long)]
    min_dist: Option<usize>,
    /// Use the packed syndrome (d in {13, 26}) instead of the census.
    #[arg(long)]
    packed: bool,
    /// Channel prior for bp.
    #[arg(long)]
    p_prior: Option<f64>,
    /// Output JSON path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl FromConfig for BlindnessArgs {
    fn entries(&mut self) -> Vec<(&'static str, Box<dyn FnMut(&str) -> anyhow::Result<()> + '_>)> {
        vec![
            ("d", set_opt(&mut self.d)),
            ("decoder", set_opt(&mut self.decoder)),
            ("lambda_grid", set_opt(&mut self.lambda_grid)),
            ("imax", set_opt(&mut self.imax)),
            ("min_dist", set_opt(&mut self.min_dist)),
            ("p_prior", set_opt(&mut self.p_prior)),
            ("out", set_opt(&mut self.out)),
        ]
    }
}

#[derive(Args)]
struct RadiusArgs {
    #[arg(long)]
    d: Option<usize>,
    /// Largest error weight scanned.
    #[arg(long)]
    wmax: Option<usize>,
    /// Decoder: ms | sb-ms.
    #[arg(long)]
    decoder: Option<String>,
    #[arg(long)]
    tmax: Option<usize>,
    /// Scan translation-canonical representatives only.
    #[arg(long)]
    canonical: bool,
    /// Output format: table | json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl FromConfig for RadiusArgs {
    fn entries(&mut self) -> Vec<(&'static str, Box<dyn FnMut(&str) -> anyhow::Result<()> + '_>)> {
        vec![
            ("d", set_opt(&mut self.d)),
            ("wmax", set_opt(&mut self.wmax)),
            ("decoder", set_opt(&mut self.decoder)),
            ("tmax", set_opt(&mut self.tmax)),
            ("format", set_opt(&mut self.format)),
            ("out", set_opt(&mut self.out)),
        ]
    }
}

#[derive(Args)]
struct SbVerifyArgs {
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    wmax: Option<usize>,
    #[arg(long)]
    tmax: Option<usize>,
    /// Verify translation-canonical representatives only.
    #[arg(long)]
    canonical: bool,
}

impl FromConfig for SbVerifyArgs {
    fn entries(&mut self) -> Vec<(&'static str, Box<dyn FnMut(&str) -> anyhow::Result<()> + '_>)> {
        vec![
            ("d", set_opt(&mut self.d)),
            ("wmax", set_opt(&mut self.wmax)),
            ("tmax", set_opt(&mut self.tmax)),
        ]
    }
}

#[derive(Args)]
struct TreeCheckArgs {
    #[arg(long)]
    d: Option<usize>,
    /// Number of random valid syndromes.
    #[arg(long)]
    syndromes: Option<usize>,
    /// Number of random fake (odd-weight) syndromes.
    #[arg(long)]
    fake: Option<usize>,
    /// Iterations (= tree depths) compared.
    #[arg(long)]
    imax: Option<usize>,
    /// Error density behind the random valid syndromes.
    #[arg(long)]
    density: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

impl FromConfig for TreeCheckArgs {
    fn entries(&mut self) -> Vec<(&'static str, Box<dyn FnMut(&str) -> anyhow::Result<()> + '_>)> {
        vec![
            ("d", set_opt(&mut self.d)),
            ("syndromes", set_opt(&mut self.syndromes)),
            ("fake", set_opt(&mut self.fake)),
            ("imax", set_opt(&mut self.imax)),
            ("density", set_opt(&mut self.density)),
            ("seed", set_opt(&mut self.seed)),
        ]
    }
}

#[derive(Args)]
struct EnumerateArgs {
    /// Syndrome JSON file: {"d": 7, "syndrome": [[r,c],...], "fake": false}.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Weight bound of the search (must stay below d/2).
    #[arg(long)]
    wbound: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl FromConfig for EnumerateArgs {
    fn entries(&mut self) -> Vec<(&'static str, Box<dyn FnMut(&str) -> anyhow::Result<()> + '_>)> {
        vec![
            ("input", set_opt(&mut self.input)),
            ("wbound", set_opt(&mut self.wbound)),
            ("out", set_opt(&mut self.out)),
        ]
    }
}

#[derive(Args)]
struct DecodeArgs {
    /// Syndrome JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Decoder: ms | sb-ms | nms | bp.
    #[arg(long)]
    decoder: Option<String>,
    #[arg(long)]
    tmax: Option<usize>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    p_prior: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl FromConfig for DecodeArgs {
    fn entries(&mut self) -> Vec<(&'static str, Box<dyn FnMut(&str) -> anyhow::Result<()> + '_>)> {
        vec![
            ("input", set_opt(&mut self.input)),
            ("decoder", set_opt(&mut self.decoder)),
            ("tmax", set_opt(&mut self.tmax)),
            ("lambda", set_opt(&mut self.lambda)),
            ("p_prior", set_opt(&mut self.p_prior)),
            ("out", set_opt(&mut self.out)),
        ]
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn lambda_sixteenths(lambda: f64) -> anyhow::Result<u32> {
    let k = lambda * 16.0;
    if k.fract() != 0.0 || !(1.0..=16.0).contains(&k) {
        bail!("lambda must be a multiple of 1/16 in (0, 1], got {lambda}");
    }
    Ok(k as u32)
}

fn parse_lambda_grid(raw: &str) -> anyhow::Result<Vec<u32>> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != 3 {
        bail!("lambda grid must be start:end:step, got '{raw}'");
    }
    let (start, end, step): (f64, f64, f64) =
        (parts[0].parse()?, parts[1].parse()?, parts[2].parse()?);
    if step <= 0.0 {
        bail!("lambda grid step must be positive");
    }
    let mut grid = Vec::new();
    let mut lambda = start;
    while lambda <= end + 1e-9 {
        grid.push(lambda_sixteenths(lambda)?);
        lambda += step;
    }
    if grid.is_empty() {
        bail!("empty lambda grid '{raw}'");
    }
    Ok(grid)
}

/// `Ok(true)` = verification passed, `Ok(false)` = verification failed.
fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Simulate(mut a) => {
            if let Some(path) = &cli.config {
                apply_config(&mut a, path)?;
            }
            let d = a.d.ok_or_else(|| anyhow!("--d is required"))?;
            let lat = ToricLattice::new(d)?;
            let decoder = match a.decoder.as_deref().unwrap_or("ms") {
                "ms" => McDecoder::Ms,
                "sb-ms" => McDecoder::SbMs,
                "nms" => McDecoder::Nms(lambda_sixteenths(
                    a.lambda.ok_or_else(|| anyhow!("--lambda is required for nms"))?,
                )?),
                "bp" => McDecoder::Bp,
                other => bail!("unknown decoder '{other}'"),
            };
            let tmax = a.tmax.unwrap_or(15);
            let trials = a.trials.unwrap_or(100_000);
            let seed = a.seed.unwrap_or(0);
            let grid: Vec<f64> = a
                .p
                .as_deref()
                .ok_or_else(|| anyhow!("--p is required"))?
                .split(',')
                .map(|x| x.trim().parse::<f64>().map_err(|e| anyhow!("bad p '{x}': {e}")))
                .collect::<anyhow::Result<_>>()?;
            let mut csv = String::from(LerEstimate::csv_header());
            csv.push('\n');
            for &p in &grid {
                let channel = ChannelConfig::new(p, seed)?;
                let est = estimate_ler(&lat, &channel, trials, decoder, tmax)?;
                eprintln!(
                    "simulate: d={d} decoder={} p={p} trials={trials} ler={}",
                    est.decoder, est.ler
                );
                csv.push_str(&est.csv_row());
                csv.push('\n');
            }
            write_output(&a.out, &csv)?;
            Ok(true)
        }
        Command::Blindness(mut a) => {
            if let Some(path) = &cli.config {
                apply_config(&mut a, path)?;
            }
            let d = a.d.ok_or_else(|| anyhow!("--d is required"))?;
            let lat = ToricLattice::new(d)?;
            let imax = a.imax.unwrap_or(100);
            let syndromes: Vec<SyndromeVector> = if a.packed {
                vec![packed_syndrome(&lat)?]
            } else {
                weight2_far_syndromes(&lat, a.min_dist.unwrap_or(5))
            };
            eprintln!("blindness: d={d} syndromes={} imax={imax}", syndromes.len());
            let (json, all_blind) = match a.decoder.as_deref().unwrap_or("ms") {
                "ms" => {
                    let cfg = DecoderConfig::ms(imax);
                    let mut reports = Vec::new();
                    for s in &syndromes {
                        for c in s.unsatisfied() {
                            reports.push(blindness_report(&lat, s, lat.check_at(c), &cfg, imax)?);
                        }
                    }
                    let ok = reports.iter().all(|r| r.verdict == Verdict::Blind);
                    (serde_json::to_string_pretty(&reports)?, ok)
                }
                "nms" => {
                    let grid =
                        parse_lambda_grid(a.lambda_grid.as_deref().unwrap_or("0.0625:1:0.0625"))?;
                    let rows = nms_sweep(&lat, &syndromes, &grid, imax)?;
                    let ok = rows.iter().all(|r| r.report.verdict == Verdict::Blind);
                    (serde_json::to_string_pretty(&rows)?, ok)
                }
                "bp" => {
                    let p = a.p_prior.unwrap_or(0.05);
                    let mut reports = Vec::new();
                    for s in &syndromes {
                        for c in s.unsatisfied() {
                            reports.push(bp_gap_trace(&lat, s, lat.check_at(c), p, imax)?);
                        }
                    }
                    // Sum-product is expected to break blindness; just report.
                    (serde_json::to_string_pretty(&reports)?, true)
                }
                other => bail!("unknown decoder '{other}'"),
            };
            write_output(&a.out, &json)?;
            if !all_blind {
                eprintln!("blindness: BROKEN — see report");
            }
            Ok(all_blind)
        }
        Command::Radius(mut a) => {
            if let Some(path) = &cli.config {
                apply_config(&mut a, path)?;
            }
            let d = a.d.ok_or_else(|| anyhow!("--d is required"))?;
            let lat = ToricLattice::new(d)?;
            let cfg = DecoderConfig::ms(a.tmax.unwrap_or(16));
            let decoder = match a.decoder.as_deref().unwrap_or("ms") {
                "ms" => ScanDecoder::Plain(cfg),
                "sb-ms" => ScanDecoder::SbMs(cfg),
                other => bail!("unknown decoder '{other}'"),
            };
            let report = radius_scan(&lat, &decoder, a.wmax.unwrap_or(3), a.canonical)?;
            let text = match a.format.as_deref().unwrap_or("table") {
                "table" => report.to_table(),
                "json" => serde_json::to_string_pretty(&report)?,
                other => bail!("unknown format '{other}'"),
            };
            write_output(&a.out, &text)?;
            Ok(true)
        }
        Command::SbVerify(mut a) => {
            if let Some(path) = &cli.config {
                apply_config(&mut a, path)?;
            }
            let d = a.d.ok_or_else(|| anyhow!("--d is required"))?;
            let lat = ToricLattice::new(d)?;
            let decoder = ScanDecoder::SbMs(DecoderConfig::ms(a.tmax.unwrap_or(16)));
            let report = radius_scan(&lat, &decoder, a.wmax.unwrap_or(3), a.canonical)?;
            print!("{}", report.to_table());
            let ok = report.tallies.iter().all(|t| {
                t.decoded == t.non_degenerate
                    && t.degenerate_decoded == t.degenerate_total
                    && t.failing_witnesses.is_empty()
            });
            println!("sb-verify: {}", if ok { "all errors corrected" } else { "FAILED" });
            Ok(ok)
        }
        Command::TreeCheck(mut a) => {
            if let Some(path) = &cli.config {
                apply_config(&mut a, path)?;
            }
            let d = a.d.unwrap_or(7);
            let lat = ToricLattice::new(d)?;
            let graph = lat.to_tanner();
            let imax = a.imax.unwrap_or(6);
            let density = a.density.unwrap_or(0.06);
            let seed = a.seed.unwrap_or(101);
            use toric_lab::montecarlo::sample_error;
            let valid = a.syndromes.unwrap_or(200);
            let fake = a.fake.unwrap_or(50);
            let channel = ChannelConfig::new(density, seed)?;
            let mut mismatches = 0u64;
            let mut compared = 0u64;
            for trial in 0..(valid + fake) as u64 {
                let s = if trial < valid as u64 {
                    lat.syndrome_of(&sample_error(&lat, &channel, trial))?
                } else {
                    // Odd-weight vectors derived from a sampled error's
                    // syndrome with one extra check flipped.
                    let mut s = lat.syndrome_of(&sample_error(&lat, &channel, trial))?;
                    let mut bits = s.bits().to_vec();
                    let flip = trial as usize % bits.len();
                    bits[flip] ^= true;
                    s = SyndromeVector::from_bits(bits, true);
                    s
                };
                let mut qubits: Vec<usize> =
                    s.unsatisfied().flat_map(|c| lat.check_edge_list(c).to_vec()).collect();
                qubits.sort_unstable();
                qubits.dedup();
                if qubits.is_empty() {
                    continue;
                }
                let cfg = DecoderConfig::ms(imax).without_stopping();
                let out = decode(&graph, s.bits(), &cfg, &qubits)?;
                for i in 1..=imax {
                    for (k, &q) in qubits.iter().enumerate() {
                        let tree = DecodingTree::build(
                            &lat,
                            lat.edge_at(q),
                            i + ITERATION_DEPTH_OFFSET,
                        )?;
                        let (w_circ, w_bullet) = tree.min_config_weights(&s);
                        compared += 1;
                        if out.app_trace[i - 1][k] != w_bullet as i64 - w_circ as i64 {
                            mismatches += 1;
                            eprintln!(
                                "tree-check: mismatch at syndrome {trial}, qubit {}, iteration {i}",
                                lat.edge_at(q)
                            );
                        }
                    }
                }
            }
            // Calibration: zero syndrome gives APP(q, i) = 1 + 2i.
            let zero = SyndromeVector::zeros(lat.n_checks());
            let watch: Vec<usize> = (0..lat.n_qubits()).collect();
            let cfg = DecoderConfig::ms(imax).without_stopping();
            let out = decode(&graph, zero.bits(), &cfg, &watch)?;
            for (i, row) in out.app_trace.iter().enumerate() {
                if row.iter().any(|&x| x != 1 + 2 * (i as i64 + 1)) {
                    mismatches += 1;
                    eprintln!("tree-check: calibration broken at iteration {}", i + 1);
                }
            }
            println!("tree-check: {compared} comparisons, {mismatches} mismatches");
            Ok(mismatches == 0)
        }
        Command::Enumerate(mut a) => {
            if let Some(path) = &cli.config {
                apply_config(&mut a, path)?;
            }
            let input = a.input.ok_or_else(|| anyhow!("--input is required"))?;
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("cannot read {}", input.display()))?;
            let (lat, s) = SyndromeVector::from_json(&text)?;
            let wbound = a.wbound.ok_or_else(|| anyhow!("--wbound is required"))?;
            let set = min_weight_explanations(&lat, &s, wbound)?;
            let json = serde_json::json!({
                "d": lat.d(),
                "min_weight": set.min_weight,
                "truncated": set.truncated,
                "errors": set
                    .errors
                    .iter()
                    .map(|e| e.support().map(|q| lat.edge_at(q).to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            });
            write_output(&a.out, &serde_json::to_string_pretty(&json)?)?;
            Ok(true)
        }
        Command::Decode(mut a) => {
            if let Some(path) = &cli.config {
                apply_config(&mut a, path)?;
            }
            let input = a.input.ok_or_else(|| anyhow!("--input is required"))?;
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("cannot read {}", input.display()))?;
            let (lat, s) = SyndromeVector::from_json(&text)?;
            let tmax = a.tmax.unwrap_or(100);
            let name = a.decoder.as_deref().unwrap_or("ms").to_string();
            let (status, estimate, plan) = match name.as_str() {
                "ms" => {
                    let out = decode(&lat.to_tanner(), s.bits(), &DecoderConfig::ms(tmax), &[])?;
                    (out.status, converged_estimate(&out.status, out.estimate), None)
                }
                "nms" => {
                    let k = lambda_sixteenths(
                        a.lambda.ok_or_else(|| anyhow!("--lambda is required for nms"))?,
                    )?;
                    let out =
                        decode(&lat.to_tanner(), s.bits(), &DecoderConfig::nms(k, tmax)?, &[])?;
                    (out.status, converged_estimate(&out.status, out.estimate), None)
                }
                "bp" => {
                    let p = a.p_prior.unwrap_or(0.05);
                    let out =
                        decode(&lat.to_tanner(), s.bits(), &DecoderConfig::bp(p, tmax)?, &[])?;
                    (out.status, converged_estimate(&out.status, out.estimate), None)
                }
                "sb-ms" => {
                    let out = toric_lab::blowup::decode_sb_ms(&lat, &s, &DecoderConfig::ms(tmax))?;
                    (out.status, out.estimate, Some(out.plan.to_json()))
                }
                other => bail!("unknown decoder '{other}'"),
            };
            let json = serde_json::json!({
                "d": lat.d(),
                "decoder": name,
                "converged_at": status.converged_at(),
                "estimate": estimate.map(|e| {
                    e.support().map(|q| lat.edge_at(q).to_string()).collect::<Vec<_>>()
                }),
                "blowup_plan": plan,
            });
            write_output(&a.out, &serde_json::to_string_pretty(&json)?)?;
            Ok(status.converged_at().is_some())
        }
    }
}

fn converged_estimate(status: &Status, bits: Vec<bool>) -> Option<ErrorVector> {
    status.converged_at().map(|_| ErrorVector::from_bits(bits))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("error: cannot size the worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
