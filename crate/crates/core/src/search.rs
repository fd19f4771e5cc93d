//! Types shared by the optimizer and the baselines.

use std::fmt;

use crate::chaos::DEFAULT_COEFFICIENT;
use crate::error::{Error, Result};
use crate::objective::{improves, Objective};
use crate::scalar::Scalar;

/// Tuning knobs for a chaos search run.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchParams {
    /// Inner iteration count `N`.
    pub inner_iterations: usize,
    /// Outer iteration count `M`, at least 3.
    pub outer_iterations: usize,
    /// Initial candidate count `p`.
    pub initial_candidates: usize,
    /// Logistic coefficient `A`.
    pub coefficient: f64,
    pub seed: u64,
    /// Worker threads for the parallel stage. Results do not depend on it.
    pub threads: usize,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            inner_iterations: 20_000,
            outer_iterations: 8,
            initial_candidates: 10,
            coefficient: DEFAULT_COEFFICIENT,
            seed: 0,
            threads: 1,
        }
    }
}

impl SearchParams {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.inner_iterations == 0 {
            return Err(Error::InvalidParams("inner iterations N must be positive".into()));
        }
        if self.outer_iterations < 3 {
            return Err(Error::InvalidParams(format!(
                "outer iterations M must be at least 3, got {}",
                self.outer_iterations
            )));
        }
        if self.initial_candidates == 0 {
            return Err(Error::InvalidParams("initial candidates p must be positive".into()));
        }
        if !(self.coefficient.is_finite() && self.coefficient > 0.0 && self.coefficient <= 4.0) {
            return Err(Error::InvalidParams(format!(
                "logistic coefficient must lie in (0, 4], got {}",
                self.coefficient
            )));
        }
        if self.threads == 0 {
            return Err(Error::InvalidParams("thread count must be positive".into()));
        }
        Ok(())
    }

    /// `M * N`, the evaluation budget the baselines spend.
    pub fn budget(&self) -> u64 {
        self.outer_iterations as u64 * self.inner_iterations as u64
    }
}

/// A point with its cached objective value.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<T> {
    pub point: Vec<T>,
    pub value: T,
}

impl<T: Scalar> Candidate<T> {
    pub fn evaluate<F: Objective<T> + ?Sized>(point: Vec<T>, f: &F) -> Self {
        let value = f.eval(&point);
        Self { point, value }
    }

    /// Replaces the candidate with `(point, value)` if `value` is strictly lower.
    pub(crate) fn offer(&mut self, point: &[T], value: T) -> bool {
        if improves(value, self.value) {
            self.point.copy_from_slice(point);
            self.value = value;
            true
        } else {
            false
        }
    }
}

/// Index of the lowest-valued candidate; ties go to the lower index.
pub fn best_index<T: Scalar>(candidates: &[Candidate<T>]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, c) in candidates.iter().enumerate() {
        match best {
            Some(b) if !improves(c.value, candidates[b].value) => {}
            _ => best = Some(i),
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Initialization,
    RoughSearch,
    Elimination,
    ParallelSearch,
    FineSearch,
    /// One block of `N` evaluations in a baseline run.
    Block(usize),
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::Initialization => f.write_str("initialization"),
            Stage::RoughSearch => f.write_str("rough search"),
            Stage::Elimination => f.write_str("elimination"),
            Stage::ParallelSearch => f.write_str("parallel search"),
            Stage::FineSearch => f.write_str("fine search"),
            Stage::Block(m) => write!(f, "block {m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptResult<T> {
    pub best_point: Vec<T>,
    pub best_value: T,
    pub evaluations: u64,
    /// Candidates left after neighbor elimination (`p'`); 1 for the baselines.
    pub survivors: usize,
    /// Best value after each stage, in execution order.
    pub stage_trace: Vec<(Stage, T)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_params_are_valid() {
        let p = SearchParams::default();
        p.validate().unwrap();
        assert_eq!(p.budget(), 160_000);
    }

    #[test]
    fn invalid_params() {
        for bad in [
            SearchParams { outer_iterations: 2, ..Default::default() },
            SearchParams { inner_iterations: 0, ..Default::default() },
            SearchParams { initial_candidates: 0, ..Default::default() },
            SearchParams { coefficient: 4.5, ..Default::default() },
            SearchParams { threads: 0, ..Default::default() },
        ] {
            assert!(matches!(bad.validate(), Err(Error::InvalidParams(_))));
        }
    }

    #[test]
    fn best_index_prefers_lower_index_and_skips_nan() {
        let c = |v: f64| Candidate { point: vec![0.0], value: v };
        assert_eq!(best_index(&[c(2.0), c(1.0), c(1.0)]), Some(1));
        assert_eq!(best_index(&[c(f64::NAN), c(5.0)]), Some(1));
        assert_eq!(best_index::<f64>(&[]), None);
    }
}
