//! Derivative-free global minimization by logistic-map chaos search.
//!
//! The main entry point is [`optimize`], a five-stage parallel chaos search
//! (random candidates, a global chaotic sweep, neighbor elimination,
//! factorially shrinking local searches around every survivor, and a final
//! fine search). [`baselines`] holds two simpler chaos searches for
//! comparison, [`benchmarks`] the five classical 2-D test functions, and
//! [`harness`] the repeated-trial experiment runner.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` / `*32` aliases below name the concrete instantiations.
//!
//! ```
//! use apcosa::{optimize, Benchmark, SearchParams};
//!
//! let f1 = Benchmark::F1.spec::<f64>();
//! let result = optimize(&f1, &f1.space, &SearchParams::default().with_seed(7)).unwrap();
//! assert!(result.best_value < 1e-3);
//! ```

pub mod apcosa;
pub mod baselines;
pub mod benchmarks;
pub mod chaos;
pub mod error;
pub mod harness;
pub mod objective;
pub mod scalar;
pub mod search;
pub mod seed;
pub mod space;

pub use crate::apcosa::{expected_evaluations, optimize};
pub use crate::baselines::{cosa_optimize, vrr_optimize, VrrParams};
pub use crate::benchmarks::{registry, Benchmark, BenchmarkSpec};
pub use crate::chaos::{validate_seed, ChaosStream};
pub use crate::error::{Error, Result};
pub use crate::harness::{
    emit_csv, emit_table, parse_csv, run_experiment, Algorithm, ExperimentReport, TrialConfig,
};
pub use crate::objective::{Counted, FnObjective, Objective};
pub use crate::scalar::Scalar;
pub use crate::search::{Candidate, OptResult, SearchParams, Stage};
pub use crate::space::{scale_to_bounds, SearchSpace};

pub type SearchSpace64 = SearchSpace<f64>;
pub type SearchSpace32 = SearchSpace<f32>;
pub type ChaosStream64 = ChaosStream<f64>;
pub type ChaosStream32 = ChaosStream<f32>;
pub type Candidate64 = Candidate<f64>;
pub type Candidate32 = Candidate<f32>;
pub type OptResult64 = OptResult<f64>;
pub type OptResult32 = OptResult<f32>;
pub type BenchmarkSpec64 = BenchmarkSpec<f64>;
pub type BenchmarkSpec32 = BenchmarkSpec<f32>;
