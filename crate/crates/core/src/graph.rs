//! Finite Tanner graphs and the IRA encoder.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// How code bits attach to checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Accumulator {
    /// Check `j` joins code bits `j-1` and `j`; check 0 sees only code bit 0.
    Chain,
    /// As `Chain`, with check 0 also joined to the last code bit.
    Circular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// Non-systematic IRA: information nodes punctured, code bits sent.
    Ira(Accumulator),
    /// Plain LDPC: every variable node is sent, no accumulator.
    Ldpc,
}

/// Bipartite graph between information (variable) nodes and checks, stored
/// check-major with each check's neighbours sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    kind: GraphKind,
    n_info: usize,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    pilots: Vec<u32>,
    systematic: Vec<u32>,
}

impl TannerGraph {
    /// Builds the graph from `(check, info)` edges.
    pub fn from_edges(kind: GraphKind, n_info: usize, n_check: usize, edges: &[(u32, u32)]) -> Result<Self> {
        if n_check == 0 {
            return Err(Error::InfeasibleProfile("graph needs at least one check"));
        }
        let mut counts = alloc::vec![0usize; n_check + 1];
        for &(c, b) in edges {
            if c as usize >= n_check || b as usize >= n_info {
                return Err(Error::InvalidParameter("edge endpoint out of range"));
            }
            counts[c as usize + 1] += 1;
        }
        for j in 0..n_check {
            counts[j + 1] += counts[j];
        }
        let offsets = counts.clone();
        let mut fill = counts;
        let mut neighbors = alloc::vec![0u32; edges.len()];
        for &(c, b) in edges {
            neighbors[fill[c as usize]] = b;
            fill[c as usize] += 1;
        }
        for j in 0..n_check {
            neighbors[offsets[j]..offsets[j + 1]].sort_unstable();
        }
        Ok(TannerGraph { kind, n_info, offsets, neighbors, pilots: Vec::new(), systematic: Vec::new() })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn n_info(&self) -> usize {
        self.n_info
    }

    pub fn n_check(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn n_edges(&self) -> usize {
        self.neighbors.len()
    }

    /// Information neighbours of check `j`, ascending.
    pub fn check(&self, j: usize) -> &[u32] {
        &self.neighbors[self.offsets[j]..self.offsets[j + 1]]
    }

    /// Edges `(check, info)` sorted by check, then info.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n_check()).flat_map(move |j| self.check(j).iter().map(move |&b| (j as u32, b)))
    }

    pub fn pilots(&self) -> &[u32] {
        &self.pilots
    }

    pub fn systematic(&self) -> &[u32] {
        &self.systematic
    }

    pub fn set_pilots(&mut self, mut pilots: Vec<u32>) -> Result<()> {
        pilots.sort_unstable();
        pilots.dedup();
        if pilots.last().is_some_and(|&b| b as usize >= self.n_info) {
            return Err(Error::InvalidParameter("pilot index out of range"));
        }
        self.pilots = pilots;
        Ok(())
    }

    pub fn set_systematic(&mut self, mut systematic: Vec<u32>) -> Result<()> {
        systematic.sort_unstable();
        systematic.dedup();
        if systematic.last().is_some_and(|&b| b as usize >= self.n_info) {
            return Err(Error::InvalidParameter("systematic index out of range"));
        }
        self.systematic = systematic;
        Ok(())
    }

    /// Information-node degrees.
    pub fn info_degrees(&self) -> Vec<u32> {
        let mut d = alloc::vec![0u32; self.n_info];
        for &b in &self.neighbors {
            d[b as usize] += 1;
        }
        d
    }

    /// Information-side check degrees.
    pub fn check_degrees(&self) -> Vec<u32> {
        self.offsets.windows(2).map(|w| (w[1] - w[0]) as u32).collect()
    }

    /// Code bits joined to check `j`.
    pub fn code_neighbors(&self, j: usize) -> ([u32; 2], usize) {
        let n = self.n_check();
        match self.kind {
            GraphKind::Ldpc => ([0, 0], 0),
            GraphKind::Ira(acc) => {
                if j > 0 {
                    ([j as u32 - 1, j as u32], 2)
                } else if acc == Accumulator::Circular && n > 1 {
                    ([n as u32 - 1, 0], 2)
                } else {
                    ([0, 0], 1)
                }
            }
        }
    }

    /// Minimum number of code-bit edges at a check.
    pub fn l_min(&self) -> usize {
        (0..self.n_check()).map(|j| self.code_neighbors(j).1).min().unwrap_or(0)
    }

    /// Number of code bits (zero for LDPC graphs).
    pub fn n_code(&self) -> usize {
        match self.kind {
            GraphKind::Ira(_) => self.n_check(),
            GraphKind::Ldpc => 0,
        }
    }

    /// Number of transmitted symbols.
    pub fn n_transmitted(&self) -> usize {
        match self.kind {
            GraphKind::Ira(_) => self.n_check() + self.systematic.len(),
            GraphKind::Ldpc => self.n_info,
        }
    }

    /// `n_info / n_transmitted`.
    pub fn rate(&self) -> f64 {
        let info = match self.kind {
            GraphKind::Ira(_) => self.n_info - self.pilots.len(),
            GraphKind::Ldpc => self.n_info.saturating_sub(self.n_check()),
        };
        info as f64 / self.n_transmitted() as f64
    }

    /// Duplicate `(check, info)` pairs.
    pub fn count_multi_edges(&self) -> usize {
        (0..self.n_check()).map(|j| self.check(j).windows(2).filter(|w| w[0] == w[1]).count()).sum()
    }

    /// Number of pairs of checks sharing two or more distinct info nodes.
    pub fn count_four_cycles(&self) -> usize {
        let n_check = self.n_check();
        let mut bit_checks: Vec<Vec<u32>> = alloc::vec![Vec::new(); self.n_info];
        for (c, b) in self.edges() {
            bit_checks[b as usize].push(c);
        }
        let mut seen = alloc::vec![usize::MAX; n_check];
        let mut count = alloc::vec![0u32; n_check];
        let mut total = 0;
        for c in 0..n_check {
            let mut last = u32::MAX;
            for &b in self.check(c) {
                if b == last {
                    continue;
                }
                last = b;
                for &c2 in &bit_checks[b as usize] {
                    let c2 = c2 as usize;
                    if c2 <= c {
                        continue;
                    }
                    if seen[c2] != c {
                        seen[c2] = c;
                        count[c2] = 0;
                    }
                    count[c2] += 1;
                    if count[c2] == 2 {
                        total += 1;
                    }
                }
            }
        }
        total
    }

    /// XOR of the information bits adjacent to each check.
    pub fn check_sums(&self, info: &[u8]) -> Vec<u8> {
        (0..self.n_check()).map(|j| self.check(j).iter().fold(0u8, |s, &b| s ^ info[b as usize])).collect()
    }
}

/// Information bits and the code bits they produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub info: Vec<u8>,
    pub parity: Vec<u8>,
}

impl Codeword {
    /// Transmitted symbols: code bits followed by the systematic bits in
    /// index order (IRA), or all variable bits (LDPC).
    pub fn transmitted(&self, graph: &TannerGraph) -> Vec<u8> {
        match graph.kind() {
            GraphKind::Ira(_) => {
                let mut out = self.parity.clone();
                out.extend(graph.systematic().iter().map(|&b| self.info[b as usize]));
                out
            }
            GraphKind::Ldpc => self.info.clone(),
        }
    }
}

/// Accumulates the check sums from a zero state:
/// `parity_j = parity_{j-1} XOR (info bits at check j)`.
pub fn encode(graph: &TannerGraph, info: &[u8]) -> Result<Codeword> {
    let accumulator = match graph.kind() {
        GraphKind::Ira(acc) => acc,
        GraphKind::Ldpc => return Err(Error::Encode("LDPC graphs carry no accumulator")),
    };
    if info.len() != graph.n_info() {
        return Err(Error::Encode("information vector length differs from n_info"));
    }
    if info.iter().any(|&b| b > 1) {
        return Err(Error::Encode("information bits must be 0 or 1"));
    }
    if graph.pilots().iter().any(|&b| info[b as usize] != 0) {
        return Err(Error::Encode("pilot bits must be zero"));
    }
    let sums = graph.check_sums(info);
    let mut parity = Vec::with_capacity(sums.len());
    let mut state = 0u8;
    for s in sums {
        state ^= s;
        parity.push(state);
    }
    if accumulator == Accumulator::Circular && graph.n_check() > 1 && state != 0 {
        return Err(Error::Encode("circular accumulator needs check sums with even parity"));
    }
    Ok(Codeword { info: info.to_vec(), parity })
}
