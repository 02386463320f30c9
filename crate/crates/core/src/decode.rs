//! BEC transmission and the peeling decoder.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use rand::Rng;

use crate::graph::{GraphKind, TannerGraph};

/// Symbol value of an erased position.
pub const ERASED: u8 = 2;

/// Erases every symbol independently with probability `p`.
pub fn bec_transmit<R: Rng + ?Sized>(symbols: &[u8], p: f64, rng: &mut R) -> Vec<u8> {
    symbols.iter().map(|&s| if p > 0.0 && rng.gen::<f64>() < p { ERASED } else { s }).collect()
}

/// Check-to-variable adjacency with the accumulator made explicit.
/// Variables `0..n_info` are information nodes, the rest code bits.
#[derive(Debug, Clone)]
pub struct DecoderGraph {
    n_info: usize,
    n_vars: usize,
    check_off: Vec<usize>,
    check_adj: Vec<u32>,
    var_off: Vec<usize>,
    var_adj: Vec<u32>,
    /// Variable carried by each transmitted symbol.
    transmitted: Vec<u32>,
    pilots: Vec<u32>,
}

impl DecoderGraph {
    pub fn new(graph: &TannerGraph) -> Self {
        let n_info = graph.n_info();
        let n_check = graph.n_check();
        let n_code = graph.n_code();
        let n_vars = n_info + n_code;
        let mut check_off = Vec::with_capacity(n_check + 1);
        let mut check_adj = Vec::with_capacity(graph.n_edges() + 2 * n_code);
        check_off.push(0);
        for j in 0..n_check {
            check_adj.extend_from_slice(graph.check(j));
            let (code, k) = graph.code_neighbors(j);
            check_adj.extend(code[..k].iter().map(|&c| n_info as u32 + c));
            check_off.push(check_adj.len());
        }
        let mut var_off = alloc::vec![0usize; n_vars + 1];
        for &v in &check_adj {
            var_off[v as usize + 1] += 1;
        }
        for v in 0..n_vars {
            var_off[v + 1] += var_off[v];
        }
        let mut fill = var_off.clone();
        let mut var_adj = alloc::vec![0u32; check_adj.len()];
        for j in 0..n_check {
            for &v in &check_adj[check_off[j]..check_off[j + 1]] {
                var_adj[fill[v as usize]] = j as u32;
                fill[v as usize] += 1;
            }
        }
        let transmitted = match graph.kind() {
            GraphKind::Ira(_) => (0..n_code as u32)
                .map(|c| n_info as u32 + c)
                .chain(graph.systematic().iter().copied())
                .collect(),
            GraphKind::Ldpc => (0..n_info as u32).collect(),
        };
        DecoderGraph {
            n_info,
            n_vars,
            check_off,
            check_adj,
            var_off,
            var_adj,
            transmitted,
            pilots: graph.pilots().to_vec(),
        }
    }

    pub fn n_info(&self) -> usize {
        self.n_info
    }

    pub fn n_checks(&self) -> usize {
        self.check_off.len() - 1
    }

    /// All edges, accumulator edges included.
    pub fn n_edges(&self) -> usize {
        self.check_adj.len()
    }

    pub fn n_transmitted(&self) -> usize {
        self.transmitted.len()
    }

    fn check(&self, j: usize) -> &[u32] {
        &self.check_adj[self.check_off[j]..self.check_off[j + 1]]
    }

    fn var(&self, v: usize) -> &[u32] {
        &self.var_adj[self.var_off[v]..self.var_off[v + 1]]
    }
}

/// Outcome of one peeling run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    /// Information bits, [`ERASED`] where unresolved.
    pub info: Vec<u8>,
    pub success: bool,
    /// Rounds of the FIFO schedule in which at least one check fired.
    pub iterations: usize,
    /// Edges of the checks that fired, each edge counted once.
    pub edges_used: usize,
    /// Unresolved non-pilot information bits.
    pub bit_erasure_count: usize,
}

/// Resolves any check with exactly one unknown neighbour until none is left.
/// Pilots are known zeros; `received` is aligned with the transmitted
/// symbols (code bits, then systematic bits).
pub fn peel_decode(graph: &DecoderGraph, received: &[u8]) -> DecodeResult {
    assert_eq!(received.len(), graph.n_transmitted(), "received length must match the transmitted symbols");
    let mut value = alloc::vec![ERASED; graph.n_vars];
    for (&v, &s) in graph.transmitted.iter().zip(received) {
        if s != ERASED {
            value[v as usize] = s;
        }
    }
    for &b in &graph.pilots {
        value[b as usize] = 0;
    }
    let n_checks = graph.n_checks();
    let mut unknown = alloc::vec![0u32; n_checks];
    let mut parity = alloc::vec![0u8; n_checks];
    let mut queue = VecDeque::new();
    for j in 0..n_checks {
        for &v in graph.check(j) {
            match value[v as usize] {
                ERASED => unknown[j] += 1,
                s => parity[j] ^= s,
            }
        }
        if unknown[j] == 1 {
            queue.push_back(j as u32);
        }
    }
    let mut iterations = 0;
    let mut edges_used = 0;
    while !queue.is_empty() {
        let mut fired = false;
        for _ in 0..queue.len() {
            let j = queue.pop_front().unwrap() as usize;
            if unknown[j] != 1 {
                continue;
            }
            let adj = graph.check(j);
            let v = *adj.iter().find(|&&v| value[v as usize] == ERASED).unwrap() as usize;
            let s = parity[j];
            value[v] = s;
            edges_used += adj.len();
            fired = true;
            for &c in graph.var(v) {
                let c = c as usize;
                unknown[c] -= 1;
                parity[c] ^= s;
                if unknown[c] == 1 {
                    queue.push_back(c as u32);
                }
            }
        }
        iterations += fired as usize;
    }
    let info = value[..graph.n_info].to_vec();
    let bit_erasure_count = info.iter().filter(|&&s| s == ERASED).count();
    DecodeResult { info, success: bit_erasure_count == 0, iterations, edges_used, bit_erasure_count }
}

/// Edges used per information bit.
pub fn measure_complexity(result: &DecodeResult, n_info: usize) -> f64 {
    result.edges_used as f64 / n_info as f64
}
