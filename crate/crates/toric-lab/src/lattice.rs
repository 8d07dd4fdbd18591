//! Toric-code geometry: the d×d torus with qubits on edges, checks on
//! vertices and plaquettes on faces, plus syndromes, metrics, homology and
//! patch embedding between code distances.
//!
//! Conventions (fixed once, used by every other module):
//! - `H(r,c)` joins vertices `(r,c)`–`(r,(c+1) mod d)`; `V(r,c)` joins
//!   `(r,c)`–`((r+1) mod d,c)`.
//! - Check `(r,c)` is incident to `H(r,c)`, `H(r,(c-1) mod d)`, `V(r,c)`,
//!   `V((r-1) mod d,c)`.
//! - Plaquette `(r,c)` has boundary edges `H(r,c)` (top), `V(r,c+1)` (right),
//!   `H(r+1,c)` (bottom), `V(r,c)` (left) and corner checks `(r,c)`,
//!   `(r,c+1)`, `(r+1,c+1)`, `(r+1,c)` (clockwise from top-left).
//! - Edge indices: `H(r,c) -> r*d+c`, `V(r,c) -> d*d + r*d+c`; checks and
//!   plaquettes use `r*d+c`.

use crate::error::{Error, Result};
use crate::tanner::TannerGraph;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// A qubit location: an oriented edge of the torus grid.
///
/// The derived ordering (orientation-major, then row, then column) agrees
/// with the edge index order and is the "lexicographic" order used for
/// canonical representatives and embedding anchors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct EdgeId {
    pub orientation: Orientation,
    pub r: usize,
    pub c: usize,
}

impl EdgeId {
    pub fn h(r: usize, c: usize) -> Self {
        EdgeId { orientation: Orientation::Horizontal, r, c }
    }

    pub fn v(r: usize, c: usize) -> Self {
        EdgeId { orientation: Orientation::Vertical, r, c }
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = match self.orientation {
            Orientation::Horizontal => 'H',
            Orientation::Vertical => 'V',
        };
        write!(f, "{} {} {}", o, self.r, self.c)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct VertexId {
    pub r: usize,
    pub c: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlaquetteId {
    pub r: usize,
    pub c: usize,
}

/// Immutable d×d torus geometry with precomputed incidence tables.
#[derive(Clone, Debug)]
pub struct ToricLattice {
    d: usize,
    /// Per check: [H(r,c), H(r,c-1), V(r,c), V(r-1,c)].
    check_edges: Vec<[usize; 4]>,
    /// Per edge: its two endpoint checks.
    edge_checks: Vec<[usize; 2]>,
}

impl ToricLattice {
    pub fn new(d: usize) -> Result<Self> {
        if d < 3 {
            return Err(Error::InvalidParameter(format!(
                "lattice distance must be >= 3, got {d}"
            )));
        }
        let mut lat = ToricLattice { d, check_edges: Vec::new(), edge_checks: Vec::new() };
        let mut check_edges = Vec::with_capacity(d * d);
        for r in 0..d as i64 {
            for c in 0..d as i64 {
                check_edges.push([lat.h(r, c), lat.h(r, c - 1), lat.v(r, c), lat.v(r - 1, c)]);
            }
        }
        let mut edge_checks = vec![[usize::MAX; 2]; 2 * d * d];
        for (check, edges) in check_edges.iter().enumerate() {
            for &e in edges {
                let slot = &mut edge_checks[e];
                if slot[0] == usize::MAX {
                    slot[0] = check;
                } else {
                    slot[1] = check;
                }
            }
        }
        lat.check_edges = check_edges;
        lat.edge_checks = edge_checks;
        Ok(lat)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n_qubits(&self) -> usize {
        2 * self.d * self.d
    }

    pub fn n_checks(&self) -> usize {
        self.d * self.d
    }

    pub fn n_plaquettes(&self) -> usize {
        self.d * self.d
    }

    fn wrap(&self, x: i64) -> usize {
        x.rem_euclid(self.d as i64) as usize
    }

    /// Index of `H(r,c)`; coordinates wrap.
    pub fn h(&self, r: i64, c: i64) -> usize {
        self.wrap(r) * self.d + self.wrap(c)
    }

    /// Index of `V(r,c)`; coordinates wrap.
    pub fn v(&self, r: i64, c: i64) -> usize {
        self.d * self.d + self.wrap(r) * self.d + self.wrap(c)
    }

    /// Index of check `(r,c)`; coordinates wrap.
    pub fn check(&self, r: i64, c: i64) -> usize {
        self.wrap(r) * self.d + self.wrap(c)
    }

    pub fn edge_index(&self, e: EdgeId) -> usize {
        debug_assert!(e.r < self.d && e.c < self.d);
        match e.orientation {
            Orientation::Horizontal => e.r * self.d + e.c,
            Orientation::Vertical => self.d * self.d + e.r * self.d + e.c,
        }
    }

    pub fn edge_at(&self, index: usize) -> EdgeId {
        let dd = self.d * self.d;
        if index < dd {
            EdgeId::h(index / self.d, index % self.d)
        } else {
            let i = index - dd;
            EdgeId::v(i / self.d, i % self.d)
        }
    }

    pub fn check_at(&self, index: usize) -> VertexId {
        VertexId { r: index / self.d, c: index % self.d }
    }

    pub fn check_index(&self, v: VertexId) -> usize {
        v.r * self.d + v.c
    }

    /// The 4 edges incident to a check.
    pub fn check_edge_list(&self, check: usize) -> [usize; 4] {
        self.check_edges[check]
    }

    /// The 2 checks incident to an edge.
    pub fn edge_check_list(&self, edge: usize) -> [usize; 2] {
        self.edge_checks[edge]
    }

    /// Boundary edges of a plaquette: [top, right, bottom, left] clockwise
    /// from the top edge.
    pub fn plaquette_edges(&self, p: PlaquetteId) -> [usize; 4] {
        let (r, c) = (p.r as i64, p.c as i64);
        [self.h(r, c), self.v(r, c + 1), self.h(r + 1, c), self.v(r, c)]
    }

    /// Corner checks of a plaquette, clockwise from top-left.
    pub fn plaquette_corners(&self, p: PlaquetteId) -> [usize; 4] {
        let (r, c) = (p.r as i64, p.c as i64);
        [self.check(r, c), self.check(r, c + 1), self.check(r + 1, c + 1), self.check(r + 1, c)]
    }

    pub fn plaquette_at(&self, index: usize) -> PlaquetteId {
        PlaquetteId { r: index / self.d, c: index % self.d }
    }

    /// The boundary of a plaquette as an error vector (a stabilizer
    /// generator: its syndrome is zero).
    pub fn plaquette_boundary(&self, p: PlaquetteId) -> ErrorVector {
        let mut e = ErrorVector::zeros(self.n_qubits());
        for idx in self.plaquette_edges(p) {
            e.flip(idx);
        }
        e
    }

    pub fn syndrome_of(&self, e: &ErrorVector) -> Result<SyndromeVector> {
        if e.len() != self.n_qubits() {
            return Err(Error::InvalidParameter(format!(
                "error vector length {} != {}",
                e.len(),
                self.n_qubits()
            )));
        }
        let mut bits = vec![false; self.n_checks()];
        for q in e.support() {
            for &c in &self.edge_checks[q] {
                bits[c] = !bits[c];
            }
        }
        Ok(SyndromeVector { bits, fake: false })
    }

    /// Torus graph distance between two checks:
    /// `min(|Δr|, d−|Δr|) + min(|Δc|, d−|Δc|)`.
    pub fn check_distance(&self, c1: VertexId, c2: VertexId) -> usize {
        let d = self.d;
        let dr = c1.r.abs_diff(c2.r);
        let dc = c1.c.abs_diff(c2.c);
        dr.min(d - dr) + dc.min(d - dc)
    }

    pub fn syndrome_metrics(&self, s: &SyndromeVector) -> Result<SyndromeMetrics> {
        let checks: Vec<VertexId> = s.unsatisfied().map(|i| self.check_at(i)).collect();
        if checks.is_empty() {
            return Err(Error::UndefinedMetrics);
        }
        let mut min_pairwise = None;
        let mut diameter = 0;
        for i in 0..checks.len() {
            for j in i + 1..checks.len() {
                let dist = self.check_distance(checks[i], checks[j]);
                min_pairwise = Some(min_pairwise.map_or(dist, |m: usize| m.min(dist)));
                diameter = diameter.max(dist);
            }
        }
        Ok(SyndromeMetrics { min_pairwise_distance: min_pairwise, diameter })
    }

    /// Winding parities of a cycle around the two homology cuts (column-0
    /// horizontal edges, row-0 vertical edges). `(false,false)` means the
    /// cycle is a stabilizer.
    pub fn homology_class(&self, r: &ErrorVector) -> Result<(bool, bool)> {
        if !self.syndrome_of(r)?.is_zero() {
            return Err(Error::NotACycle);
        }
        let dd = self.d * self.d;
        let mut wind_h = false;
        let mut wind_v = false;
        for q in r.support() {
            if q < dd {
                if q % self.d == 0 {
                    wind_h = !wind_h;
                }
            } else if (q - dd) / self.d == 0 {
                wind_v = !wind_v;
            }
        }
        Ok((wind_h, wind_v))
    }

    pub fn to_tanner(&self) -> TannerGraph {
        TannerGraph::new(
            self.n_qubits(),
            self.check_edges.iter().map(|e| e.to_vec()).collect(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SyndromeMetrics {
    /// Minimum pairwise distance between unsatisfied checks; `None` when
    /// there are fewer than two (the +infinity sentinel).
    pub min_pairwise_distance: Option<usize>,
    pub diameter: usize,
}

/// A bit per qubit; X error support.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ErrorVector {
    bits: Vec<bool>,
}

impl ErrorVector {
    pub fn zeros(n: usize) -> Self {
        ErrorVector { bits: vec![false; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        ErrorVector { bits }
    }

    pub fn from_indices(n: usize, support: &[usize]) -> Self {
        let mut e = Self::zeros(n);
        for &q in support {
            e.bits[q] = true;
        }
        e
    }

    pub fn from_edges(lat: &ToricLattice, edges: &[EdgeId]) -> Self {
        let mut e = Self::zeros(lat.n_qubits());
        for &id in edges {
            e.bits[lat.edge_index(id)] = true;
        }
        e
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, q: usize) -> bool {
        self.bits[q]
    }

    pub fn set(&mut self, q: usize, value: bool) {
        self.bits[q] = value;
    }

    pub fn flip(&mut self, q: usize) {
        self.bits[q] = !self.bits[q];
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn xor(&self, other: &ErrorVector) -> ErrorVector {
        assert_eq!(self.len(), other.len());
        ErrorVector {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect(),
        }
    }

    pub fn to_json(&self, lat: &ToricLattice) -> String {
        let json = ErrorJson {
            d: lat.d(),
            error: self.support().map(|q| lat.edge_at(q).to_string()).collect(),
        };
        serde_json::to_string(&json).expect("serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<(ToricLattice, ErrorVector)> {
        let json: ErrorJson = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("bad error JSON: {e}")))?;
        let lat = ToricLattice::new(json.d)?;
        let mut e = ErrorVector::zeros(lat.n_qubits());
        for item in &json.error {
            e.flip(lat.edge_index(parse_edge(item, json.d)?));
        }
        Ok((lat, e))
    }
}

/// A bit per check. `fake` marks vectors that are not the syndrome of any
/// error (odd weight); they still flow through the decoders.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SyndromeVector {
    bits: Vec<bool>,
    pub fake: bool,
}

impl SyndromeVector {
    pub fn zeros(n: usize) -> Self {
        SyndromeVector { bits: vec![false; n], fake: false }
    }

    pub fn from_checks(lat: &ToricLattice, checks: &[VertexId], fake: bool) -> Self {
        let mut bits = vec![false; lat.n_checks()];
        for &v in checks {
            bits[lat.check_index(v)] = true;
        }
        SyndromeVector { bits, fake }
    }

    pub fn from_bits(bits: Vec<bool>, fake: bool) -> Self {
        SyndromeVector { bits, fake }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, c: usize) -> bool {
        self.bits[c]
    }

    pub fn is_zero(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn unsatisfied(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn xor(&self, other: &SyndromeVector) -> SyndromeVector {
        assert_eq!(self.len(), other.len());
        let bits: Vec<bool> = self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect();
        let fake = bits.iter().filter(|&&b| b).count() % 2 == 1;
        SyndromeVector { bits, fake }
    }

    pub fn to_json(&self, lat: &ToricLattice) -> String {
        let json = SyndromeJson {
            d: lat.d(),
            syndrome: self
                .unsatisfied()
                .map(|i| {
                    let v = lat.check_at(i);
                    [v.r, v.c]
                })
                .collect(),
            fake: self.fake,
        };
        serde_json::to_string(&json).expect("serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<(ToricLattice, SyndromeVector)> {
        let json: SyndromeJson = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("bad syndrome JSON: {e}")))?;
        let lat = ToricLattice::new(json.d)?;
        let mut bits = vec![false; lat.n_checks()];
        for &[r, c] in &json.syndrome {
            if r >= json.d || c >= json.d {
                return Err(Error::InvalidParameter(format!(
                    "check ({r},{c}) out of range for d={}",
                    json.d
                )));
            }
            bits[lat.check_index(VertexId { r, c })] = true;
        }
        let s = SyndromeVector { bits, fake: json.fake };
        if !s.fake && s.weight() % 2 == 1 {
            return Err(Error::InvalidParameter(
                "odd-weight syndrome must be flagged fake".into(),
            ));
        }
        Ok((lat, s))
    }
}

#[derive(Serialize, Deserialize)]
struct ErrorJson {
    d: usize,
    error: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct SyndromeJson {
    d: usize,
    syndrome: Vec<[usize; 2]>,
    #[serde(default)]
    fake: bool,
}

fn parse_edge(text: &str, d: usize) -> Result<EdgeId> {
    let mut parts = text.split_whitespace();
    let bad = || Error::InvalidParameter(format!("bad edge '{text}', expected 'H r c' or 'V r c'"));
    let orientation = match parts.next().ok_or_else(bad)? {
        "H" => Orientation::Horizontal,
        "V" => Orientation::Vertical,
        _ => return Err(bad()),
    };
    let r: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let c: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if parts.next().is_some() || r >= d || c >= d {
        return Err(bad());
    }
    Ok(EdgeId { orientation, r, c })
}

/// Unwraps a set of torus coordinates into a box: returns the start offset
/// and extent per axis, or an error when the support wraps all the way
/// around (no empty circular gap).
fn unwrap_axis(d: usize, occupied: &[bool]) -> Result<(usize, usize)> {
    // Find the longest run of unoccupied positions (circularly); the box
    // starts right after it.
    let mut best_len = 0;
    let mut best_end = 0;
    let mut run = 0;
    for i in 0..2 * d {
        if occupied[i % d] {
            run = 0;
        } else {
            run += 1;
            if run > best_len {
                best_len = run.min(d);
                best_end = i;
            }
        }
    }
    if best_len == 0 {
        return Err(Error::NotEmbeddable("support occupies every row/column".into()));
    }
    let start = (best_end + 1) % d;
    Ok((start, d - best_len))
}

/// Unwraps the support into a patch and returns per-element coordinates
/// relative to the patch origin. Fails when the support wraps the torus.
fn unwrap_support(d: usize, coords: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
    if coords.is_empty() {
        return Err(Error::NotEmbeddable("empty support".into()));
    }
    let mut rows = vec![false; d];
    let mut cols = vec![false; d];
    for &(r, c) in coords {
        rows[r] = true;
        cols[c] = true;
    }
    let (r0, _) = unwrap_axis(d, &rows)?;
    let (c0, _) = unwrap_axis(d, &cols)?;
    Ok(coords.iter().map(|&(r, c)| ((r + d - r0) % d, (c + d - c0) % d)).collect())
}

fn check_dst(src: &ToricLattice, dst: &ToricLattice) -> Result<()> {
    if dst.d() < src.d() {
        return Err(Error::NotEmbeddable(format!(
            "destination distance {} < source distance {}",
            dst.d(),
            src.d()
        )));
    }
    Ok(())
}

/// Translates an error from one lattice to another so that its
/// lexicographically smallest support edge lands at `anchor`; the local
/// geometry is preserved exactly. Fails when the support wraps the source
/// torus (e.g. a logical loop).
pub fn embed_error(
    src: &ToricLattice,
    dst: &ToricLattice,
    e: &ErrorVector,
    anchor: (usize, usize),
) -> Result<ErrorVector> {
    check_dst(src, dst)?;
    let edges: Vec<EdgeId> = e.support().map(|q| src.edge_at(q)).collect();
    let coords: Vec<(usize, usize)> = edges.iter().map(|id| (id.r, id.c)).collect();
    let unwrapped = unwrap_support(src.d(), &coords)?;
    let local: Vec<EdgeId> = edges
        .iter()
        .zip(&unwrapped)
        .map(|(id, &(r, c))| EdgeId { orientation: id.orientation, r, c })
        .collect();
    let base = *local.iter().min().expect("nonempty support");
    let mut out = ErrorVector::zeros(dst.n_qubits());
    for id in &local {
        let r = anchor.0 as i64 + id.r as i64 - base.r as i64;
        let c = anchor.1 as i64 + id.c as i64 - base.c as i64;
        let idx = match id.orientation {
            Orientation::Horizontal => dst.h(r, c),
            Orientation::Vertical => dst.v(r, c),
        };
        out.flip(idx);
    }
    Ok(out)
}

/// Syndrome counterpart of [`embed_error`]; the smallest unsatisfied check
/// (row-major) lands at `anchor`. The fake flag is preserved.
pub fn embed_syndrome(
    src: &ToricLattice,
    dst: &ToricLattice,
    s: &SyndromeVector,
    anchor: (usize, usize),
) -> Result<SyndromeVector> {
    check_dst(src, dst)?;
    let coords: Vec<(usize, usize)> = s
        .unsatisfied()
        .map(|i| {
            let v = src.check_at(i);
            (v.r, v.c)
        })
        .collect();
    let unwrapped = unwrap_support(src.d(), &coords)?;
    let base = *unwrapped.iter().min().expect("nonempty support");
    let mut bits = vec![false; dst.n_checks()];
    for &(r, c) in &unwrapped {
        let idx = dst.check(
            anchor.0 as i64 + r as i64 - base.0 as i64,
            anchor.1 as i64 + c as i64 - base.1 as i64,
        );
        bits[idx] = true;
    }
    Ok(SyndromeVector { bits, fake: s.fake })
}
