//! Maximal intervals of Boolean functions on the n-cube and the spectrum of
//! the reduced disjunctive normal form under the random-function model.
//!
//! The crate has four layers:
//!
//! * [`cube`] — vertices, intervals (subcubes), directions and their pure
//!   geometry: stretch, neighbors, join, layers, covering;
//! * [`maximal`] — three mutually checking enumerators of all maximal
//!   intervals of a truth table, plus the per-dimension spectrum;
//! * [`model`] — the vertex-wise Bernoulli distribution over functions:
//!   sampling, exact probabilities, exhaustive and Monte Carlo expectations;
//! * [`analytics`] — the closed-form expected spectrum, its step ratio,
//!   characteristic points, asymptotics and tail bounds, all in base-2 logs.

pub mod analytics;
pub mod cube;
pub mod error;
pub mod maximal;
pub mod model;
pub mod truth_table;

pub use crate::cube::{
    binomial, count_intervals, dnf_covers, Direction, Interval, Vertex, N_MAX_ENUM,
};
pub use crate::error::{RdnfError, Result};
pub use crate::maximal::{
    blake_consensus, enumerate_bruteforce, enumerate_fast, is_maximal, rdnf_complexity, spectrum,
    ReducedDnf, Spectrum, N_MAX_BRUTE,
};
pub use crate::model::{
    exact_expectation, function_probability, monte_carlo, sample_function, tail_frequency,
    McEstimate, ModelParams, N_MAX_EXHAUSTIVE,
};
pub use crate::truth_table::TruthTable;
