//! Generic bipartite variable/check graph: the decoding substrate for both
//! the plain toric lattice and blown-up graphs.

/// Immutable Tanner graph. Variables and checks are dense indices; the
/// caller keeps whatever mapping back to lattice objects it needs.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    n_vars: usize,
    check_vars: Vec<Vec<usize>>,
    var_checks: Vec<Vec<usize>>,
    /// Flattened directed-edge layout: message slot of the k-th port of
    /// check c is `check_offsets[c] + k`; `var_ports[v]` lists the slots
    /// whose variable side is `v`.
    check_offsets: Vec<usize>,
    var_ports: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn new(n_vars: usize, check_vars: Vec<Vec<usize>>) -> Self {
        let mut var_checks = vec![Vec::new(); n_vars];
        let mut var_ports = vec![Vec::new(); n_vars];
        let mut check_offsets = Vec::with_capacity(check_vars.len() + 1);
        let mut offset = 0;
        for (c, vars) in check_vars.iter().enumerate() {
            check_offsets.push(offset);
            for (k, &v) in vars.iter().enumerate() {
                assert!(v < n_vars, "variable index out of range");
                var_checks[v].push(c);
                var_ports[v].push(offset + k);
            }
            offset += vars.len();
        }
        check_offsets.push(offset);
        TannerGraph { n_vars, check_vars, var_checks, check_offsets, var_ports }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_checks(&self) -> usize {
        self.check_vars.len()
    }

    /// Total number of Tanner edges (= directed messages per direction).
    pub fn n_edges(&self) -> usize {
        *self.check_offsets.last().unwrap()
    }

    pub fn check_vars(&self, c: usize) -> &[usize] {
        &self.check_vars[c]
    }

    pub fn var_checks(&self, v: usize) -> &[usize] {
        &self.var_checks[v]
    }

    pub fn check_offset(&self, c: usize) -> usize {
        self.check_offsets[c]
    }

    /// Message slots incident to variable `v`, parallel to `var_checks(v)`.
    pub fn var_ports(&self, v: usize) -> &[usize] {
        &self.var_ports[v]
    }
}
