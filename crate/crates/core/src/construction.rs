//! Finite-length graphs from an ensemble: degree quantization, random edge
//! matching, removal of multi-edges, 4-cycles and short cycles of degree-two
//! nodes, and the dummy bit.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ensembles::{edge_to_node, EnsembleSpec, Family};
use crate::error::{Error, Result};
use crate::graph::{Accumulator, GraphKind, TannerGraph};

/// Integer degrees for every node of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub kind: GraphKind,
    /// Degree of each information (variable) node.
    pub info: Vec<u32>,
    /// Information-side degree of each check.
    pub check: Vec<u32>,
    /// Edges collected by the dummy bit (check-regular family only).
    pub dummy: u32,
}

impl DegreeProfile {
    pub fn info_edges(&self) -> u64 {
        self.info.iter().map(|&d| d as u64).sum::<u64>() + self.dummy as u64
    }

    pub fn check_edges(&self) -> u64 {
        self.check.iter().map(|&d| d as u64).sum()
    }
}

/// Largest-remainder rounding of `total * fractions[i]`; ties go to the
/// lower index.
fn largest_remainder(fractions: &[f64], total: usize) -> Vec<usize> {
    let sum: f64 = fractions.iter().sum();
    let exact: Vec<f64> = fractions.iter().map(|f| f / sum * total as f64).collect();
    let mut counts: Vec<usize> = exact.iter().map(|e| e.floor() as usize).collect();
    let assigned: usize = counts.iter().sum();
    let mut order: Vec<usize> = (0..fractions.len()).collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (exact[a] - exact[a].floor(), exact[b] - exact[b].floor());
        rb.partial_cmp(&ra).unwrap_or(core::cmp::Ordering::Equal).then(a.cmp(&b))
    });
    for &i in order.iter().take(total.saturating_sub(assigned)) {
        counts[i] += 1;
    }
    counts
}

/// Moves single edges between degree classes (`counts[i]` nodes of degree
/// `i + 1`) until the edge total equals `target`: surplus edges leave the
/// largest class, missing edges join the smallest.
fn repair(counts: &mut Vec<usize>, target: u64, min_degree: usize) -> Result<()> {
    let mut total: u64 = counts.iter().enumerate().map(|(i, &c)| (i as u64 + 1) * c as u64).sum();
    while total > target {
        let d = counts
            .iter()
            .rposition(|&c| c > 0)
            .filter(|&i| i + 1 > min_degree)
            .ok_or(Error::InfeasibleProfile("cannot remove edges below the minimum degree"))?;
        counts[d] -= 1;
        counts[d - 1] += 1;
        total -= 1;
    }
    while total < target {
        let d = counts.iter().position(|&c| c > 0).ok_or(Error::InfeasibleProfile("no nodes to receive edges"))?;
        counts[d] -= 1;
        if d + 1 == counts.len() {
            counts.push(0);
        }
        counts[d + 1] += 1;
        total += 1;
    }
    Ok(())
}

fn expand(counts: &[usize]) -> Vec<u32> {
    counts.iter().enumerate().flat_map(|(i, &c)| core::iter::repeat_n(i as u32 + 1, c)).collect()
}

/// Node fractions `(w_i / i) / Σ (w_j / j)` of an edge distribution.
fn node_fractions(edge: &[f64]) -> Vec<f64> {
    edge.iter().enumerate().map(|(i, w)| w / (i + 1) as f64).collect()
}

/// Integer degrees for a graph with `block_length` transmitted code bits
/// (IRA: the number of checks; LDPC: the number of variable nodes).
pub fn quantize_dd(spec: &EnsembleSpec, block_length: usize, accumulator: Accumulator) -> Result<DegreeProfile> {
    if block_length < 100 {
        return Err(Error::InvalidParameter("block length must be at least 100"));
    }
    let n = block_length;
    match spec.family {
        Family::BitRegular => {
            let q = spec.q as u64;
            let node = edge_to_node(&spec.rho);
            let mut counts = largest_remainder(node.coeffs(), n);
            let mean = 1.0 / spec.rho.integral();
            let target = q * ((n as f64 * mean / q as f64).round() as u64).max(1);
            repair(&mut counts, target, 1)?;
            Ok(DegreeProfile {
                kind: GraphKind::Ira(accumulator),
                info: alloc::vec![spec.q as u32; (target / q) as usize],
                check: expand(&counts),
                dummy: 0,
            })
        }
        Family::CheckRegular => {
            let edges = 3 * n as u64;
            let dummy = (spec.pilot_edge_fraction * edges as f64).round() as u64;
            let bit_edges = edges - dummy;
            let n_info = (bit_edges as f64 * spec.lambda.integral()).round() as usize;
            if n_info == 0 {
                return Err(Error::InfeasibleProfile("no information nodes at this block length"));
            }
            let mut counts = largest_remainder(&node_fractions(spec.lambda.coeffs()), n_info);
            repair(&mut counts, bit_edges, 2)?;
            Ok(DegreeProfile {
                kind: GraphKind::Ira(accumulator),
                info: expand(&counts),
                check: alloc::vec![3; n],
                dummy: dummy as u32,
            })
        }
        Family::Ldpc => {
            let d = spec.q as u64;
            let mut counts = largest_remainder(&node_fractions(spec.lambda.coeffs()), n);
            let total: u64 = counts.iter().enumerate().map(|(i, &c)| (i as u64 + 1) * c as u64).sum();
            let target = d * (total as f64 / d as f64).round() as u64;
            repair(&mut counts, target, 2)?;
            Ok(DegreeProfile {
                kind: GraphKind::Ldpc,
                info: expand(&counts),
                check: alloc::vec![spec.q as u32; (target / d) as usize],
                dummy: 0,
            })
        }
    }
}

/// Edge list from random matching, before post-processing. The dummy bit,
/// when present, is information node `n_info`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledGraph {
    pub kind: GraphKind,
    pub n_info: usize,
    pub n_check: usize,
    pub dummy: Option<u32>,
    /// `(check, info)` pairs; repeated pairs are multi-edges.
    pub edges: Vec<(u32, u32)>,
}

/// Uniformly random matching of information-side and check-side sockets.
pub fn sample_graph<R: Rng + ?Sized>(profile: &DegreeProfile, rng: &mut R) -> Result<SampledGraph> {
    if profile.info_edges() != profile.check_edges() {
        return Err(Error::InfeasibleProfile("edge totals of the two sides differ"));
    }
    if profile.check_edges() == 0 {
        return Err(Error::InfeasibleProfile("profile has no edges"));
    }
    let n_info = profile.info.len();
    let dummy = (profile.dummy > 0).then_some(n_info as u32);
    let mut sockets: Vec<u32> = Vec::with_capacity(profile.check_edges() as usize);
    for (b, &d) in profile.info.iter().enumerate() {
        sockets.extend(core::iter::repeat_n(b as u32, d as usize));
    }
    if let Some(dm) = dummy {
        sockets.extend(core::iter::repeat_n(dm, profile.dummy as usize));
    }
    sockets.shuffle(rng);
    let mut edges = Vec::with_capacity(sockets.len());
    let mut k = 0;
    for (c, &d) in profile.check.iter().enumerate() {
        for _ in 0..d {
            edges.push((c as u32, sockets[k]));
            k += 1;
        }
    }
    Ok(SampledGraph { kind: profile.kind, n_info, n_check: profile.check.len(), dummy, edges })
}

/// Indices of edges in a multi-edge or a 4-cycle. Edges at `exempt` are
/// never reported and never close a cycle. With `chain` set, a bit joined to
/// two consecutive checks also counts, since those checks share a code bit.
pub fn find_bad_edges(
    edges: &[(u32, u32)],
    n_bits: usize,
    n_check: usize,
    exempt: Option<u32>,
    chain: bool,
) -> Vec<usize> {
    let mut check_adj: Vec<Vec<(u32, usize)>> = alloc::vec![Vec::new(); n_check];
    let mut bit_adj: Vec<Vec<(u32, usize)>> = alloc::vec![Vec::new(); n_bits];
    for (e, &(c, b)) in edges.iter().enumerate() {
        if Some(b) == exempt {
            continue;
        }
        check_adj[c as usize].push((b, e));
        bit_adj[b as usize].push((c, e));
    }
    let mut bad = alloc::vec![false; edges.len()];
    let mut stamp = alloc::vec![u32::MAX; n_check];
    let mut stamp_bit = alloc::vec![0u32; n_check];
    let mut stamp_edges = alloc::vec![(0usize, 0usize); n_check];
    for c in 0..n_check {
        let adj = &mut check_adj[c];
        adj.sort_unstable();
        let mut i = 0;
        while i < adj.len() {
            let (b, e_cb) = adj[i];
            let mut j = i + 1;
            while j < adj.len() && adj[j].0 == b {
                j += 1;
            }
            if j - i > 1 {
                for &(_, e) in &adj[i..j] {
                    bad[e] = true;
                }
            }
            for &(c2, e2) in &bit_adj[b as usize] {
                let c2u = c2 as usize;
                if c2u == c {
                    continue;
                }
                if chain && c2u.abs_diff(c) == 1 {
                    bad[e_cb] = true;
                    bad[e2] = true;
                }
                if stamp[c2u] == c as u32 && stamp_bit[c2u] != b {
                    let (e1, e3) = stamp_edges[c2u];
                    for e in [e_cb, e2, e1, e3] {
                        bad[e] = true;
                    }
                } else if stamp[c2u] != c as u32 {
                    stamp[c2u] = c as u32;
                    stamp_bit[c2u] = b;
                    stamp_edges[c2u] = (e_cb, e2);
                }
            }
            i = j;
        }
    }
    bad.iter().enumerate().filter_map(|(e, &f)| f.then_some(e)).collect()
}

/// Repeats until no multi-edge or 4-cycle is left: the information ends of
/// every offending edge, together with as many randomly chosen clean edges,
/// are randomly re-matched. Degrees on both sides are preserved; edges of the
/// dummy bit are left alone. `chain` is passed to [`find_bad_edges`].
/// Returns the number of rounds used.
pub fn postprocess<R: Rng + ?Sized>(
    graph: &mut SampledGraph,
    rng: &mut R,
    max_rounds: usize,
    chain: bool,
) -> Result<usize> {
    let n_bits = graph.n_info + graph.dummy.is_some() as usize;
    for round in 0..=max_rounds {
        let bad = find_bad_edges(&graph.edges, n_bits, graph.n_check, graph.dummy, chain);
        if bad.is_empty() {
            return Ok(round);
        }
        if round == max_rounds {
            return Err(Error::ConstructionFailure { rounds: max_rounds, remaining: bad.len() });
        }
        let mut is_bad = alloc::vec![false; graph.edges.len()];
        for &e in &bad {
            is_bad[e] = true;
        }
        let clean: Vec<usize> = (0..graph.edges.len())
            .filter(|&e| !is_bad[e] && Some(graph.edges[e].1) != graph.dummy)
            .collect();
        let take = bad.len().min(clean.len());
        let mut pool = bad;
        pool.extend(index::sample(rng, clean.len(), take).into_iter().map(|i| clean[i]));
        let mut ends: Vec<u32> = pool.iter().map(|&e| graph.edges[e].1).collect();
        ends.shuffle(rng);
        for (&e, b) in pool.iter().zip(ends) {
            graph.edges[e].1 = b;
        }
    }
    unreachable!()
}

/// Degree-two information bits on a cycle of degree-two nodes (such bits
/// plus accumulator code bits) that holds at most `weight` code bits. Such a
/// cycle is a stopping set once its code bits are erased. Searches visit at
/// most `1 << 16` checks per bit.
pub fn find_short_chain_cycles(
    edges: &[(u32, u32)],
    n_bits: usize,
    n_check: usize,
    exempt: Option<u32>,
    accumulator: Accumulator,
    weight: usize,
) -> Vec<u32> {
    const BUDGET: usize = 1 << 16;
    let mut ends: Vec<Vec<u32>> = alloc::vec![Vec::new(); n_bits];
    for &(c, b) in edges {
        if Some(b) != exempt {
            ends[b as usize].push(c);
        }
    }
    let mut chords: Vec<Vec<(u32, u32)>> = alloc::vec![Vec::new(); n_check];
    let mut deg2 = Vec::new();
    for (b, e) in ends.iter().enumerate() {
        if e.len() == 2 && e[0] != e[1] {
            chords[e[0] as usize].push((e[1], b as u32));
            chords[e[1] as usize].push((e[0], b as u32));
            deg2.push((b as u32, e[0], e[1]));
        }
    }
    let circular = accumulator == Accumulator::Circular && n_check > 2;
    let mut dist = alloc::vec![u32::MAX; n_check];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    let mut bad = Vec::new();
    for &(bit, a, target) in &deg2 {
        for &c in &touched {
            dist[c as usize] = u32::MAX;
        }
        touched.clear();
        queue.clear();
        dist[a as usize] = 0;
        touched.push(a);
        queue.push_back(a);
        let mut found = false;
        while let Some(c) = queue.pop_front() {
            let d = dist[c as usize];
            if c == target {
                found = true;
                break;
            }
            if touched.len() > BUDGET {
                break;
            }
            let cu = c as usize;
            let prev = if cu > 0 { Some(cu - 1) } else if circular { Some(n_check - 1) } else { None };
            let next = if cu + 1 < n_check { Some(cu + 1) } else if circular { Some(0) } else { None };
            for n in [prev, next].into_iter().flatten() {
                if d < weight as u32 && d + 1 < dist[n] {
                    if dist[n] == u32::MAX {
                        touched.push(n as u32);
                    }
                    dist[n] = d + 1;
                    queue.push_back(n as u32);
                }
            }
            for &(n, b) in &chords[cu] {
                if b != bit && d < dist[n as usize] {
                    if dist[n as usize] == u32::MAX {
                        touched.push(n);
                    }
                    dist[n as usize] = d;
                    queue.push_front(n);
                }
            }
        }
        if found {
            bad.push(bit);
        }
    }
    bad
}

/// Rewires degree-two bits found by [`find_short_chain_cycles`] until none
/// is left, four passes bring no new minimum, or `max_rounds` passes ran.
/// [`postprocess`] is re-run after every pass. Returns the rounds used and
/// the number of offending bits left.
pub fn expurgate<R: Rng + ?Sized>(
    graph: &mut SampledGraph,
    rng: &mut R,
    accumulator: Accumulator,
    weight: usize,
    max_rounds: usize,
    chain: bool,
) -> Result<(usize, usize)> {
    let n_bits = graph.n_info + graph.dummy.is_some() as usize;
    let mut rounds = 0;
    let movable: Vec<usize> = (0..graph.edges.len()).filter(|&e| Some(graph.edges[e].1) != graph.dummy).collect();
    let (mut best, mut stalled) = (usize::MAX, 0);
    for _ in 0..max_rounds {
        let bad = find_short_chain_cycles(&graph.edges, n_bits, graph.n_check, graph.dummy, accumulator, weight);
        if bad.is_empty() {
            return Ok((rounds, 0));
        }
        if bad.len() < best {
            (best, stalled) = (bad.len(), 0);
        } else {
            stalled += 1;
            if stalled == 4 {
                return Ok((rounds, bad.len()));
            }
        }
        let mut is_bad = alloc::vec![false; n_bits];
        for &b in &bad {
            is_bad[b as usize] = true;
        }
        for &e in &movable {
            let b = graph.edges[e].1;
            if is_bad[b as usize] {
                is_bad[b as usize] = false;
                let f = movable[rng.gen_range(0..movable.len())];
                graph.edges[e].1 = graph.edges[f].1;
                graph.edges[f].1 = b;
            }
        }
        rounds += 1 + postprocess(graph, rng, max_rounds, chain)?;
    }
    let left = find_short_chain_cycles(&graph.edges, n_bits, graph.n_check, graph.dummy, accumulator, weight);
    Ok((rounds, left.len()))
}

/// Drops the dummy bit with all its edges and marks `systematic` randomly
/// chosen non-pilot information nodes for transmission.
pub fn apply_truncation_artifacts<R: Rng + ?Sized>(
    sampled: &SampledGraph,
    pilots: &[u32],
    systematic: usize,
    rng: &mut R,
) -> Result<TannerGraph> {
    let edges: Vec<(u32, u32)> = sampled.edges.iter().copied().filter(|&(_, b)| Some(b) != sampled.dummy).collect();
    let mut graph = TannerGraph::from_edges(sampled.kind, sampled.n_info, sampled.n_check, &edges)?;
    graph.set_pilots(pilots.to_vec())?;
    if matches!(sampled.kind, GraphKind::Ira(_)) && systematic > 0 {
        let mut is_pilot = alloc::vec![false; sampled.n_info];
        for &b in graph.pilots() {
            is_pilot[b as usize] = true;
        }
        let free: Vec<u32> = (0..sampled.n_info as u32).filter(|&b| !is_pilot[b as usize]).collect();
        if systematic > free.len() {
            return Err(Error::InvalidParameter("more systematic bits than information nodes"));
        }
        let chosen = index::sample(rng, free.len(), systematic).into_iter().map(|i| free[i]).collect();
        graph.set_systematic(chosen)?;
    }
    Ok(graph)
}

/// Default [`ConstructionOptions::expurgation`].
pub const DEFAULT_EXPURGATION: usize = 8;

/// Parameters of [`construct`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructionOptions {
    pub block_length: usize,
    /// Systematic kick-start bits (IRA only).
    pub systematic: usize,
    pub accumulator: Accumulator,
    pub max_rounds: usize,
    /// Also break bits sitting on consecutive accumulator checks.
    pub chain_cycles: bool,
    /// Largest code-bit count of a degree-two cycle to remove (IRA only, 0
    /// disables). Capped at a sixteenth of the check count.
    pub expurgation: usize,
    pub seed: u64,
}

impl Default for ConstructionOptions {
    fn default() -> Self {
        ConstructionOptions {
            block_length: 8192,
            systematic: 150,
            accumulator: Accumulator::Chain,
            max_rounds: 1000,
            chain_cycles: true,
            expurgation: DEFAULT_EXPURGATION,
            seed: 0,
        }
    }
}

/// A finished graph with construction statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Construction {
    pub graph: TannerGraph,
    pub profile: DegreeProfile,
    pub rounds: usize,
}

/// Quantizes, samples and post-processes one graph of `spec`.
pub fn construct(spec: &EnsembleSpec, opts: &ConstructionOptions) -> Result<Construction> {
    let profile = quantize_dd(spec, opts.block_length, opts.accumulator)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut sampled = sample_graph(&profile, &mut rng)?;
    let chain = opts.chain_cycles && matches!(sampled.kind, GraphKind::Ira(_));
    let mut rounds = postprocess(&mut sampled, &mut rng, opts.max_rounds, chain)?;
    if let GraphKind::Ira(acc) = sampled.kind {
        let weight = opts.expurgation.min(sampled.n_check / 16);
        if weight > 0 {
            rounds += expurgate(&mut sampled, &mut rng, acc, weight, opts.max_rounds, chain)?.0;
        }
    }
    let graph = apply_truncation_artifacts(&sampled, &[], opts.systematic, &mut rng)?;
    Ok(Construction { graph, profile, rounds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{EnsembleOptions, Truncation};
    use alloc::vec;

    #[test]
    fn largest_remainder_sums_to_total() {
        // 3.5, 1.75, 1.75: the two 0.75 remainders win.
        assert_eq!(largest_remainder(&[0.5, 0.25, 0.25], 7), vec![3, 2, 2]);
        assert_eq!(largest_remainder(&[1.0, 1.0, 1.0], 10).iter().sum::<usize>(), 10);
    }

    #[test]
    fn repair_hits_target() {
        let mut c = vec![0, 3, 2];
        repair(&mut c, 10, 2).unwrap();
        assert_eq!(c.iter().enumerate().map(|(i, &n)| (i + 1) * n).sum::<usize>(), 10);
        assert_eq!(c.iter().sum::<usize>(), 5);
        let mut c = vec![0, 3, 2];
        repair(&mut c, 14, 2).unwrap();
        assert_eq!(c.iter().enumerate().map(|(i, &n)| (i + 1) * n).sum::<usize>(), 14);
    }

    #[test]
    fn bit_regular_profile() {
        let spec = EnsembleSpec::bit_regular(3, 1.0 / 13.0, Truncation::Epsilon(0.1), EnsembleOptions::default()).unwrap();
        let prof = quantize_dd(&spec, 1000, Accumulator::Chain).unwrap();
        assert!(prof.info.iter().all(|&d| d == 3));
        assert_eq!(prof.check.len(), 1000);
        assert_eq!(prof.info_edges(), prof.check_edges());
    }

    #[test]
    fn check_regular_profile() {
        let spec = EnsembleSpec::check_regular(0.5, Truncation::Epsilon(0.1), EnsembleOptions::default()).unwrap();
        let prof = quantize_dd(&spec, 8192, Accumulator::Chain).unwrap();
        assert!(prof.check.iter().all(|&d| d == 3));
        assert_eq!(prof.info_edges(), prof.check_edges());
        assert!(prof.dummy > 0);
    }

    #[test]
    fn matching_is_uniform_on_two_sockets() {
        let prof = DegreeProfile { kind: GraphKind::Ldpc, info: vec![1, 1], check: vec![1, 1], dummy: 0 };
        let mut hits = 0;
        for seed in 0..10_000u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = sample_graph(&prof, &mut rng).unwrap();
            if g.edges[0] == (0, 0) {
                hits += 1;
            }
        }
        let freq = hits as f64 / 10_000.0;
        assert!((freq - 0.5).abs() < 0.05, "{freq}");
    }

    #[test]
    fn postprocess_fixes_two_by_two_multi_edge() {
        // Checks 0..4 each of degree 2, bits 0..4 each of degree 2, with a
        // double edge between check 0 and bit 0.
        let mut g = SampledGraph {
            kind: GraphKind::Ldpc,
            n_info: 4,
            n_check: 4,
            dummy: None,
            edges: vec![(0, 0), (0, 0), (1, 1), (1, 2), (2, 1), (2, 3), (3, 2), (3, 3)],
        };
        let before = degree_tally(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        postprocess(&mut g, &mut rng, 1000, false).unwrap();
        assert!(find_bad_edges(&g.edges, 4, 4, None, false).is_empty());
        assert_eq!(degree_tally(&g), before);
    }

    #[test]
    fn simple_graph_is_untouched() {
        let edges = vec![(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)];
        let mut g = SampledGraph { kind: GraphKind::Ldpc, n_info: 3, n_check: 3, dummy: None, edges: edges.clone() };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(postprocess(&mut g, &mut rng, 10, false).unwrap(), 0);
        assert_eq!(g.edges, edges);
    }

    fn degree_tally(g: &SampledGraph) -> (Vec<u32>, Vec<u32>) {
        let mut b = vec![0; g.n_info + g.dummy.is_some() as usize];
        let mut c = vec![0; g.n_check];
        for &(ci, bi) in &g.edges {
            b[bi as usize] += 1;
            c[ci as usize] += 1;
        }
        (b, c)
    }

    #[test]
    fn dummy_removal_lowers_check_degrees() {
        let spec = EnsembleSpec::check_regular_for_rate(0.5, 25, EnsembleOptions::default()).unwrap();
        let opts = ConstructionOptions { block_length: 2048, ..Default::default() };
        let c = construct(&spec, &opts).unwrap();
        let g = &c.graph;
        assert_eq!(g.count_multi_edges(), 0);
        assert_eq!(g.count_four_cycles(), 0);
        let removed = 3 * g.n_check() as u64 - g.n_edges() as u64;
        assert_eq!(removed, c.profile.dummy as u64);
        assert!(g.check_degrees().iter().any(|&d| d < 3));
        assert_eq!(g.systematic().len(), 150);
        assert!(((g.n_info() as f64 / g.n_check() as f64) - spec.design_rate()).abs() < 2.0 / g.n_check() as f64);
    }

    #[test]
    fn consecutive_checks_close_a_cycle_through_the_chain() {
        let edges = [(2, 0), (3, 0), (0, 1), (5, 1)];
        assert!(find_bad_edges(&edges, 2, 6, None, false).is_empty());
        assert_eq!(find_bad_edges(&edges, 2, 6, None, true), vec![0, 1]);
    }

    #[test]
    fn short_chain_cycle_weights() {
        let edges = [(2, 0), (5, 0), (10, 1), (15, 1), (11, 2), (16, 2), (0, 3), (4, 3), (8, 3)];
        let find = |w| find_short_chain_cycles(&edges, 4, 20, None, Accumulator::Chain, w);
        assert_eq!(find(1), Vec::<u32>::new());
        assert_eq!(find(2), vec![1, 2]);
        assert_eq!(find(3), vec![0, 1, 2]);
        let ring = find_short_chain_cycles(&[(1, 0), (8, 0)], 1, 10, None, Accumulator::Circular, 3);
        assert_eq!(ring, vec![0]);
        assert!(find_short_chain_cycles(&[(1, 0), (8, 0)], 1, 10, None, Accumulator::Chain, 3).is_empty());
    }

    #[test]
    fn expurgation_clears_short_cycles_and_keeps_degrees() {
        let spec = EnsembleSpec::check_regular(0.5, Truncation::Epsilon(0.1), EnsembleOptions::default()).unwrap();
        let profile = quantize_dd(&spec, 4096, Accumulator::Chain).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut g = sample_graph(&profile, &mut rng).unwrap();
        postprocess(&mut g, &mut rng, 100, true).unwrap();
        let before = degree_tally(&g);
        let n_bits = g.n_info + g.dummy.is_some() as usize;
        assert!(!find_short_chain_cycles(&g.edges, n_bits, g.n_check, g.dummy, Accumulator::Chain, 6).is_empty());
        let (_, left) = expurgate(&mut g, &mut rng, Accumulator::Chain, 6, 100, true).unwrap();
        assert_eq!(left, 0);
        assert_eq!(degree_tally(&g), before);
        assert!(find_bad_edges(&g.edges, n_bits, g.n_check, g.dummy, true).is_empty());
    }
}
