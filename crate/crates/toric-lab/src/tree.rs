//! The decoding tree T_{i,q}: all walks-without-return of length i starting
//! at a qubit's edge, and minimal configuration weights over it — the
//! independent oracle for min-sum APPs.

use crate::error::{Error, Result};
use crate::lattice::{EdgeId, SyndromeVector, ToricLattice};

pub const DEFAULT_DEPTH_CAP: usize = 12;

/// Calibration between MS iteration i and tree depth: depth t corresponds
/// to iteration i = t + OFFSET. Resolved by the zero-syndrome calibration
/// test (APP must equal 1+2i) and asserted in CI.
pub const ITERATION_DEPTH_OFFSET: usize = 0;

#[derive(Clone, Copy, Debug)]
pub struct TreeVertex {
    /// Lattice check this vertex represents (several vertices may share one).
    pub check: usize,
    pub parent_edge: usize,
    pub child_edges: [usize; 3],
    pub level: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct TreeEdge {
    pub lattice_edge: usize,
    /// `None` for the root edge.
    pub parent_vertex: Option<usize>,
    /// `None` for dangling edges.
    pub child_vertex: Option<usize>,
    pub level: usize,
}

#[derive(Clone, Debug)]
pub struct DecodingTree {
    depth: usize,
    edges: Vec<TreeEdge>,
    vertices: Vec<TreeVertex>,
    /// The two endpoint vertices of the root edge.
    root_vertices: [usize; 2],
}

/// A {0,1}-labeling of the tree edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeConfiguration {
    pub labels: Vec<bool>,
}

impl TreeConfiguration {
    pub fn weight(&self) -> usize {
        self.labels.iter().filter(|&&b| b).count()
    }

    pub fn root_label(&self) -> bool {
        self.labels[0]
    }
}

impl DecodingTree {
    pub fn build(lat: &ToricLattice, q: EdgeId, depth: usize) -> Result<Self> {
        Self::build_with_cap(lat, q, depth, DEFAULT_DEPTH_CAP)
    }

    pub fn build_with_cap(
        lat: &ToricLattice,
        q: EdgeId,
        depth: usize,
        cap: usize,
    ) -> Result<Self> {
        if depth < 1 {
            return Err(Error::InvalidParameter("tree depth must be >= 1".into()));
        }
        if depth > cap {
            return Err(Error::ResourceLimit(format!(
                "tree depth {depth} exceeds cap {cap} (size grows as 2·3^depth)"
            )));
        }
        let root_lattice_edge = lat.edge_index(q);
        let mut edges = vec![TreeEdge {
            lattice_edge: root_lattice_edge,
            parent_vertex: None,
            child_vertex: None,
            level: 0,
        }];
        let mut vertices: Vec<TreeVertex> = Vec::new();
        // (vertex, check, lattice edge arrived by) queue; BFS by level.
        let checks = lat.edge_check_list(root_lattice_edge);
        let mut frontier: Vec<usize> = Vec::new();
        for &check in &checks {
            vertices.push(TreeVertex { check, parent_edge: 0, child_edges: [0; 3], level: 1 });
            frontier.push(vertices.len() - 1);
        }
        let root_vertices = [0, 1];
        for level in 1..=depth {
            let mut next = Vec::new();
            for &v in &frontier {
                let check = vertices[v].check;
                let arrived_by = edges[vertices[v].parent_edge].lattice_edge;
                let mut slot = 0;
                let mut child_edges = [0usize; 3];
                let mut skipped = false;
                for e in lat.check_edge_list(check) {
                    // Walks without return: continue along the 3 other
                    // edges of the check; skip one copy of the arrival edge.
                    if e == arrived_by && !skipped {
                        skipped = true;
                        continue;
                    }
                    let edge_id = edges.len();
                    edges.push(TreeEdge {
                        lattice_edge: e,
                        parent_vertex: Some(v),
                        child_vertex: None,
                        level,
                    });
                    child_edges[slot] = edge_id;
                    slot += 1;
                    if level < depth {
                        let endpoints = lat.edge_check_list(e);
                        let next_check =
                            if endpoints[0] == check { endpoints[1] } else { endpoints[0] };
                        vertices.push(TreeVertex {
                            check: next_check,
                            parent_edge: edge_id,
                            child_edges: [0; 3],
                            level: level + 1,
                        });
                        edges[edge_id].child_vertex = Some(vertices.len() - 1);
                        next.push(vertices.len() - 1);
                    }
                }
                debug_assert_eq!(slot, 3);
                vertices[v].child_edges = child_edges;
            }
            frontier = next;
        }
        Ok(DecodingTree { depth, edges, vertices, root_vertices })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn vertices(&self) -> &[TreeVertex] {
        &self.vertices
    }

    pub fn root_vertices(&self) -> [usize; 2] {
        self.root_vertices
    }

    pub fn is_dangling(&self, edge: usize) -> bool {
        edge != 0 && self.edges[edge].child_vertex.is_none()
    }

    /// Tree vertices incident to an edge (the root edge has two).
    fn edge_endpoints(&self, edge: usize) -> Vec<usize> {
        if edge == 0 {
            self.root_vertices.to_vec()
        } else {
            let e = &self.edges[edge];
            let mut out = vec![e.parent_vertex.unwrap()];
            if let Some(v) = e.child_vertex {
                out.push(v);
            }
            out
        }
    }

    fn syndrome_bit(&self, s: &SyndromeVector, vertex: usize) -> bool {
        s.get(self.vertices[vertex].check)
    }

    /// Exact minimal weights of root-unlabeled (w_circ) and root-labeled
    /// (w_bullet) configurations, by leaves-up dynamic programming.
    pub fn min_config_weights(&self, s: &SyndromeVector) -> (u64, u64) {
        // subtree_min[v][a] = minimal labeled weight strictly below v (its 3
        // child edges and their subtrees) given parent-edge label a.
        let mut subtree_min = vec![[0u64; 2]; self.vertices.len()];
        // Children are created after parents, so reverse order is leaves-up.
        for v in (0..self.vertices.len()).rev() {
            let vertex = &self.vertices[v];
            let parity = self.syndrome_bit(s, v);
            // cost[k][l]: cost of labeling child edge k with l.
            let mut cost = [[0u64; 2]; 3];
            for (k, &e) in vertex.child_edges.iter().enumerate() {
                for l in 0..2 {
                    cost[k][l] = l as u64
                        + match self.edges[e].child_vertex {
                            Some(u) => subtree_min[u][l],
                            None => 0,
                        };
                }
            }
            for a in 0..2usize {
                let need = parity ^ (a == 1);
                let mut best = u64::MAX;
                for combo in 0..8usize {
                    let (l1, l2, l3) = (combo & 1, (combo >> 1) & 1, (combo >> 2) & 1);
                    if ((l1 ^ l2 ^ l3) == 1) != need {
                        continue;
                    }
                    best = best.min(cost[0][l1] + cost[1][l2] + cost[2][l3]);
                }
                subtree_min[v][a] = best;
            }
        }
        let weight = |root_label: usize| {
            root_label as u64
                + subtree_min[self.root_vertices[0]][root_label]
                + subtree_min[self.root_vertices[1]][root_label]
        };
        (weight(0), weight(1))
    }

    /// Every configuration with the given root label, by brute force.
    /// The count is exactly 4^(number of vertices); refuses to materialize
    /// more than 4^11.
    pub fn enumerate_configurations(
        &self,
        s: &SyndromeVector,
        root_label: bool,
    ) -> Result<Vec<TreeConfiguration>> {
        const MAX_VERTICES: usize = 11;
        if self.vertices.len() > MAX_VERTICES {
            return Err(Error::ResourceLimit(format!(
                "enumeration over {} vertices would produce 4^{} configurations",
                self.vertices.len(),
                self.vertices.len()
            )));
        }
        let mut labels = vec![false; self.edges.len()];
        labels[0] = root_label;
        let mut out = Vec::new();
        self.enumerate_rec(s, 0, &mut labels, &mut out);
        Ok(out)
    }

    fn enumerate_rec(
        &self,
        s: &SyndromeVector,
        v: usize,
        labels: &mut Vec<bool>,
        out: &mut Vec<TreeConfiguration>,
    ) {
        if v == self.vertices.len() {
            out.push(TreeConfiguration { labels: labels.clone() });
            return;
        }
        let vertex = &self.vertices[v];
        let parent = labels[vertex.parent_edge];
        let need = self.syndrome_bit(s, v) ^ parent;
        for combo in 0..8usize {
            let ls = [combo & 1 == 1, combo & 2 == 2, combo & 4 == 4];
            if (ls[0] ^ ls[1] ^ ls[2]) != need {
                continue;
            }
            for (k, &e) in vertex.child_edges.iter().enumerate() {
                labels[e] = ls[k];
            }
            // Vertices are created in BFS order with parents first, so
            // visiting them by index keeps parent labels already decided.
            self.enumerate_rec(s, v + 1, labels, out);
        }
    }

    /// Minimal configuration weight for a root label, by budgeted
    /// iterative-deepening exhaustive search — an oracle independent of the
    /// dynamic program (no per-vertex memoization). `node_budget` bounds the
    /// total search nodes across all deepening rounds.
    pub fn min_weight_exhaustive(
        &self,
        s: &SyndromeVector,
        root_label: bool,
        node_budget: u64,
    ) -> Result<u64> {
        let mut labels = vec![false; self.edges.len()];
        labels[0] = root_label;
        let mut nodes = 0u64;
        for budget in (root_label as u64)..=(self.edges.len() as u64) {
            if self.deepen(s, 0, budget - root_label as u64, &mut labels, &mut nodes, node_budget)?
            {
                return Ok(budget);
            }
        }
        unreachable!("a configuration always exists (greedy top-down labeling)")
    }

    fn deepen(
        &self,
        s: &SyndromeVector,
        v: usize,
        budget: u64,
        labels: &mut Vec<bool>,
        nodes: &mut u64,
        node_budget: u64,
    ) -> Result<bool> {
        if v == self.vertices.len() {
            return Ok(true);
        }
        *nodes += 1;
        if *nodes > node_budget {
            return Err(Error::ResourceLimit(format!(
                "exhaustive search exceeded {node_budget} nodes"
            )));
        }
        let vertex = &self.vertices[v];
        let need = self.syndrome_bit(s, v) ^ labels[vertex.parent_edge];
        for combo in 0..8usize {
            let ls = [combo & 1 == 1, combo & 2 == 2, combo & 4 == 4];
            if (ls[0] ^ ls[1] ^ ls[2]) != need {
                continue;
            }
            let cost = ls.iter().filter(|&&l| l).count() as u64;
            if cost > budget {
                continue;
            }
            for (k, &e) in vertex.child_edges.iter().enumerate() {
                labels[e] = ls[k];
            }
            if self.deepen(s, v + 1, budget - cost, labels, nodes, node_budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Checks Def. of a configuration: at every vertex the parity of
    /// incident labeled edges equals the syndrome bit of its check.
    pub fn is_configuration(&self, s: &SyndromeVector, labels: &[bool]) -> bool {
        assert_eq!(labels.len(), self.edges.len());
        self.vertices.iter().enumerate().all(|(v, vertex)| {
            let mut parity = labels[vertex.parent_edge];
            for &e in &vertex.child_edges {
                parity ^= labels[e];
            }
            parity == self.syndrome_bit(s, v)
        })
    }

    /// Flips each edge's label as many times as it appears in the walk.
    /// For a walk whose two end edges are dangling, this preserves the
    /// configuration property.
    pub fn invert_walk(
        &self,
        cfg: &TreeConfiguration,
        walk: &[usize],
    ) -> Result<TreeConfiguration> {
        if walk.is_empty() {
            return Err(Error::InvalidWalk("empty walk".into()));
        }
        for &end in [walk[0], *walk.last().unwrap()].iter() {
            if !self.is_dangling(end) {
                return Err(Error::InvalidWalk(format!("walk end {end} is not a dangling edge")));
            }
        }
        for pair in walk.windows(2) {
            let a = self.edge_endpoints(pair[0]);
            let b = self.edge_endpoints(pair[1]);
            if !a.iter().any(|v| b.contains(v)) {
                return Err(Error::InvalidWalk(format!(
                    "edges {} and {} do not share a vertex",
                    pair[0], pair[1]
                )));
            }
        }
        let mut labels = cfg.labels.clone();
        for &e in walk {
            labels[e] = !labels[e];
        }
        Ok(TreeConfiguration { labels })
    }

    /// DOT dump for debugging.
    pub fn to_dot(&self, lat: &ToricLattice, labels: Option<&[bool]>) -> String {
        use std::fmt::Write;
        let mut out = String::from("graph decoding_tree {\n");
        let style = |edge: usize| match labels {
            Some(l) if l[edge] => " [penwidth=3]",
            _ => "",
        };
        writeln!(out, "  r0 [shape=point]; r1 [shape=point];").unwrap();
        for (v, vertex) in self.vertices.iter().enumerate() {
            let check = lat.check_at(vertex.check);
            writeln!(out, "  v{v} [label=\"c({},{})\"];", check.r, check.c).unwrap();
        }
        writeln!(
            out,
            "  v{} -- v{} [label=\"{}\"{}];",
            self.root_vertices[0],
            self.root_vertices[1],
            lat.edge_at(self.edges[0].lattice_edge),
            style(0)
        )
        .unwrap();
        for (i, e) in self.edges.iter().enumerate().skip(1) {
            let p = e.parent_vertex.unwrap();
            let label = lat.edge_at(e.lattice_edge);
            match e.child_vertex {
                Some(u) => {
                    writeln!(out, "  v{p} -- v{u} [label=\"{label}\"{}];", style(i)).unwrap()
                }
                None => {
                    writeln!(out, "  d{i} [shape=point];").unwrap();
                    writeln!(out, "  v{p} -- d{i} [label=\"{label}\"{}];", style(i)).unwrap();
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
