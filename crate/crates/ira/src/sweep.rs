//! Monte Carlo simulation of finite graphs over the BEC.

use std::fmt;
use std::io::{Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ira_core::construction::{construct, ConstructionOptions};
use ira_core::decode::{bec_transmit, peel_decode, DecoderGraph};
use ira_core::ensembles::EnsembleSpec;
use ira_core::graph::{encode, GraphKind, TannerGraph};

pub const CSV_HEADER: [&str; 13] = [
    "family",
    "q",
    "p_design",
    "epsilon",
    "M",
    "N",
    "p_channel",
    "trials",
    "ber",
    "wer",
    "mean_iters",
    "edges_per_info_bit",
    "seed",
];

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationRecord {
    pub family: String,
    pub q: usize,
    pub p_design: f64,
    pub epsilon: Option<f64>,
    pub max_degree: usize,
    pub block_length: usize,
    pub p_channel: f64,
    pub trials: usize,
    /// Erased fraction of the non-pilot information bits.
    pub ber: f64,
    pub wer: f64,
    pub mean_iters: f64,
    pub edges_per_info_bit: f64,
    pub seed: u64,
}

/// Counts gathered at one channel parameter.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PointCounts {
    pub trials: u64,
    pub failures: u64,
    pub erased_bits: u64,
    pub iterations: u64,
    pub edges_used: u64,
    /// Decodes whose resolved bits disagreed with what was sent.
    pub wrong: u64,
}

impl PointCounts {
    fn merge(self, o: Self) -> Self {
        PointCounts {
            trials: self.trials + o.trials,
            failures: self.failures + o.failures,
            erased_bits: self.erased_bits + o.erased_bits,
            iterations: self.iterations + o.iterations,
            edges_used: self.edges_used + o.edges_used,
            wrong: self.wrong + o.wrong,
        }
    }

    pub fn wer(&self) -> f64 {
        self.failures as f64 / self.trials as f64
    }
}

/// RNG of trial `trial` at grid index `point`.
pub fn trial_rng(seed: u64, point: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((point as u64) << 32) | trial as u64);
    rng
}

/// A graph prepared for repeated decoding.
pub struct Simulator<'a> {
    graph: &'a TannerGraph,
    decoder: DecoderGraph,
    is_pilot: Vec<bool>,
    n_data: usize,
}

impl<'a> Simulator<'a> {
    pub fn new(graph: &'a TannerGraph) -> Self {
        let mut is_pilot = vec![false; graph.n_info()];
        for &b in graph.pilots() {
            is_pilot[b as usize] = true;
        }
        let n_data = graph.n_info() - graph.pilots().len();
        Simulator { graph, decoder: DecoderGraph::new(graph), is_pilot, n_data }
    }

    /// Non-pilot information bits.
    pub fn n_data(&self) -> usize {
        self.n_data
    }

    fn trial(&self, p: f64, rng: &mut ChaCha8Rng) -> PointCounts {
        let (truth, sent) = match self.graph.kind() {
            GraphKind::Ira(_) => {
                let info: Vec<u8> =
                    self.is_pilot.iter().map(|&pilot| if pilot { 0 } else { rng.gen_range(0..2) }).collect();
                // A circular accumulator rejects words with odd check-sum parity.
                let cw = encode(self.graph, &info)
                    .or_else(|_| encode(self.graph, &vec![0; info.len()]))
                    .expect("the zero word always encodes");
                let sent = cw.transmitted(self.graph);
                (cw.info, sent)
            }
            GraphKind::Ldpc => (vec![0; self.graph.n_info()], vec![0; self.graph.n_info()]),
        };
        let result = peel_decode(&self.decoder, &bec_transmit(&sent, p, rng));
        let wrong = result.info.iter().zip(&truth).any(|(&d, &t)| d != ira_core::decode::ERASED && d != t);
        PointCounts {
            trials: 1,
            failures: !result.success as u64,
            erased_bits: result.bit_erasure_count as u64,
            iterations: result.iterations as u64,
            edges_used: result.edges_used as u64,
            wrong: wrong as u64,
        }
    }

    /// Runs `trials` decodes at erasure probability `p` on the current rayon
    /// pool. Trial `t` draws from `trial_rng(seed, point, t)`.
    pub fn run_point(&self, p: f64, point: usize, trials: usize, seed: u64) -> PointCounts {
        (0..trials)
            .into_par_iter()
            .map(|t| self.trial(p, &mut trial_rng(seed, point, t)))
            .reduce(PointCounts::default, PointCounts::merge)
    }
}

#[derive(Debug)]
pub enum SweepError {
    Construction { seed: u64, source: ira_core::Error },
    InvalidConfig(&'static str),
}

impl fmt::Display for SweepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepError::Construction { seed, source } => write!(f, "construction with seed {seed} failed: {source}"),
            SweepError::InvalidConfig(m) => write!(f, "invalid sweep: {m}"),
        }
    }
}

impl std::error::Error for SweepError {}

/// Sweep parameters; the graph is built with `construction.seed`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub construction: ConstructionOptions,
    pub p_grid: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

pub fn records_for_graph(spec: &EnsembleSpec, graph: &TannerGraph, cfg: &SweepConfig) -> Result<Vec<SimulationRecord>, SweepError> {
    if cfg.trials == 0 {
        return Err(SweepError::InvalidConfig("at least one trial per point"));
    }
    if cfg.p_grid.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(SweepError::InvalidConfig("channel parameters must lie in [0, 1]"));
    }
    let sim = Simulator::new(graph);
    let block_length = match graph.kind() {
        GraphKind::Ldpc => graph.n_info(),
        GraphKind::Ira(_) => graph.n_check(),
    };
    let per_trial = |x: u64, c: &PointCounts| x as f64 / c.trials as f64;
    Ok(cfg
        .p_grid
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let c = sim.run_point(p, i, cfg.trials, cfg.seed);
            debug_assert_eq!(c.wrong, 0);
            SimulationRecord {
                family: spec.family.name().to_string(),
                q: spec.q,
                p_design: spec.p,
                epsilon: spec.epsilon,
                max_degree: spec.max_degree,
                block_length,
                p_channel: p,
                trials: cfg.trials,
                ber: per_trial(c.erased_bits, &c) / sim.n_data() as f64,
                wer: c.wer(),
                mean_iters: per_trial(c.iterations, &c),
                edges_per_info_bit: per_trial(c.edges_used, &c) / sim.n_data() as f64,
                seed: cfg.seed,
            }
        })
        .collect())
}

/// Builds one graph from `spec` and simulates it on every grid point.
pub fn run_sweep(spec: &EnsembleSpec, cfg: &SweepConfig) -> Result<Vec<SimulationRecord>, SweepError> {
    let built = construct(spec, &cfg.construction)
        .map_err(|source| SweepError::Construction { seed: cfg.construction.seed, source })?;
    records_for_graph(spec, &built.graph, cfg)
}

/// Parses `start:stop:step`, both ends inclusive.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<f64> = s
        .split(':')
        .map(|x| x.trim().parse::<f64>().map_err(|_| format!("bad number `{x}` in grid `{s}`")))
        .collect::<Result<_, _>>()?;
    let [start, stop, step] = parts[..] else {
        return Err(format!("grid `{s}` must be start:stop:step"));
    };
    if !(step > 0.0) || stop < start {
        return Err(format!("grid `{s}` needs a positive step and start <= stop"));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| start + k as f64 * step).collect())
}

fn fmt_float(x: f64) -> String {
    format!("{x:.8e}")
}

pub fn write_csv<W: Write>(records: &[SimulationRecord], w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for r in records {
        out.write_record([
            r.family.clone(),
            r.q.to_string(),
            fmt_float(r.p_design),
            r.epsilon.map(fmt_float).unwrap_or_default(),
            r.max_degree.to_string(),
            r.block_length.to_string(),
            fmt_float(r.p_channel),
            r.trials.to_string(),
            fmt_float(r.ber),
            fmt_float(r.wer),
            fmt_float(r.mean_iters),
            fmt_float(r.edges_per_info_bit),
            r.seed.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize) -> Result<T, String> {
    let raw = rec.get(i).ok_or_else(|| format!("missing column {}", CSV_HEADER[i]))?;
    raw.parse().map_err(|_| format!("bad {} `{raw}`", CSV_HEADER[i]))
}

pub fn read_csv<R: Read>(r: R) -> Result<Vec<SimulationRecord>, String> {
    let mut rdr = csv::Reader::from_reader(r);
    let header = rdr.headers().map_err(|e| e.to_string())?;
    if header.iter().ne(CSV_HEADER) {
        return Err("unexpected CSV header".into());
    }
    rdr.records()
        .map(|rec| {
            let rec = rec.map_err(|e| e.to_string())?;
            let epsilon = match rec.get(3) {
                Some("") | None => None,
                Some(_) => Some(field(&rec, 3)?),
            };
            Ok(SimulationRecord {
                family: field(&rec, 0)?,
                q: field(&rec, 1)?,
                p_design: field(&rec, 2)?,
                epsilon,
                max_degree: field(&rec, 4)?,
                block_length: field(&rec, 5)?,
                p_channel: field(&rec, 6)?,
                trials: field(&rec, 7)?,
                ber: field(&rec, 8)?,
                wer: field(&rec, 9)?,
                mean_iters: field(&rec, 10)?,
                edges_per_info_bit: field(&rec, 11)?,
                seed: field(&rec, 12)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_inclusive() {
        let g = parse_grid("0.30:0.48:0.02").unwrap();
        assert_eq!(g.len(), 10);
        assert!((g[9] - 0.48).abs() < 1e-12);
        assert_eq!(parse_grid("0.5:0.5:0.1").unwrap(), vec![0.5]);
        assert!(parse_grid("0.5:0.4:0.1").is_err());
        assert!(parse_grid("0.1:0.2").is_err());
    }

    #[test]
    fn streams_differ_per_trial_and_point() {
        let a: u64 = trial_rng(1, 0, 0).gen();
        assert_eq!(a, trial_rng(1, 0, 0).gen::<u64>());
        assert_ne!(a, trial_rng(1, 0, 1).gen::<u64>());
        assert_ne!(a, trial_rng(1, 1, 0).gen::<u64>());
    }

    #[test]
    fn csv_text_round_trip() {
        let r = SimulationRecord {
            family: "check-regular".into(),
            q: 3,
            p_design: 0.49,
            epsilon: None,
            max_degree: 25,
            block_length: 8192,
            p_channel: 0.4,
            trials: 10,
            ber: 1.0 / 3.0,
            wer: 0.1,
            mean_iters: 120.5,
            edges_per_info_bit: 7.7,
            seed: 42,
        };
        let mut first = Vec::new();
        write_csv(&[r.clone(), r], &mut first).unwrap();
        let back = read_csv(first.as_slice()).unwrap();
        let mut second = Vec::new();
        write_csv(&back, &mut second).unwrap();
        assert_eq!(first, second);
        assert!(String::from_utf8(first).unwrap().starts_with(&CSV_HEADER.join(",")));
    }
}
