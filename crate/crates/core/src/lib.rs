//! Capacity-achieving non-systematic irregular repeat-accumulate codes on the
//! binary erasure channel: truncated power series, degree distributions,
//! density evolution, graph construction, peeling decoding and complexity
//! bounds.
#![no_std]

extern crate alloc;

pub mod bounds;
pub mod channel;
pub mod construction;
pub mod de;
pub mod decode;
pub mod ensembles;
pub mod error;
pub mod graph;
pub mod quad;
pub mod series;

pub use error::{Error, Result};
pub use series::{binomial_series, reverse_with, SeriesMap, TruncatedSeries};
