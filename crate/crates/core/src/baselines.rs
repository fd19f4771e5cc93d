//! Reference chaos searches used for comparison.
//!
//! Both spend exactly `M * N` evaluations so they can be compared against
//! [`crate::apcosa::optimize`] at a matched budget.
//!
//! * [`cosa_optimize`]: one logistic trajectory swept over the full box.
//! * [`vrr_optimize`]: `M` blocks of `N` iterates; after each block the box
//!   is recentered on the best point and its half-width multiplied by a fixed
//!   reduction rate.

use crate::chaos::ChaosStream;
use crate::error::{Error, Result};
use crate::objective::{Counted, Objective};
use crate::scalar::Scalar;
use crate::search::{Candidate, OptResult, SearchParams, Stage};
use crate::seed::derive_rng;
use crate::space::SearchSpace;

const COSA: u64 = 11;
const VRR: u64 = 12;

pub const DEFAULT_REDUCTION_RATE: f64 = 0.7;

#[derive(Debug, Clone, PartialEq)]
pub struct VrrParams {
    pub base: SearchParams,
    /// Per-block half-width multiplier, in `(0, 1)`.
    pub reduction_rate: f64,
}

impl Default for VrrParams {
    fn default() -> Self {
        Self {
            base: SearchParams::default(),
            reduction_rate: DEFAULT_REDUCTION_RATE,
        }
    }
}

impl VrrParams {
    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if !(self.reduction_rate > 0.0 && self.reduction_rate < 1.0) {
            return Err(Error::InvalidParams(format!(
                "reduction rate must lie in (0, 1), got {}",
                self.reduction_rate
            )));
        }
        Ok(())
    }
}

/// Plain chaos search: `M * N` iterates of a single stream over `space`.
pub fn cosa_optimize<T, F>(f: &F, space: &SearchSpace<T>, params: &SearchParams) -> Result<OptResult<T>>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
{
    params.validate()?;
    space.check_dimension(f.dimension())?;
    let f = Counted::new(f);
    let mut stream = ChaosStream::random(
        space.dimension(),
        T::lit(params.coefficient),
        &mut derive_rng(params.seed, COSA, 0, 0),
    )?;
    let mut x = vec![T::zero(); space.dimension()];
    let mut best: Option<Candidate<T>> = None;
    let mut trace = Vec::with_capacity(params.outer_iterations);
    for block in 0..params.outer_iterations {
        for _ in 0..params.inner_iterations {
            stream.next_scaled(space, &mut x);
            let value = f.eval(&x);
            match best.as_mut() {
                Some(b) => {
                    b.offer(&x, value);
                }
                None => best = Some(Candidate { point: x.clone(), value }),
            }
        }
        trace.push((Stage::Block(block), best.as_ref().map_or(T::nan(), |b| b.value)));
    }
    Ok(finish(best, f.calls(), trace))
}

/// The box searched in block `stage` (0-based): the full space for block 0,
/// then half-width `width / 2 * rate^stage` around `center`, clamped.
pub fn vrr_stage_box<T: Scalar>(
    space: &SearchSpace<T>,
    center: &[T],
    reduction_rate: f64,
    stage: usize,
) -> Result<SearchSpace<T>> {
    if stage == 0 {
        return Ok(space.clone());
    }
    let scale = T::lit(0.5 * reduction_rate.powi(stage as i32));
    let half: Vec<T> = space.widths().map(|w| w * scale).collect();
    space.clamped_around(center, &half)
}

/// Variable reduction rate chaos search.
pub fn vrr_optimize<T, F>(f: &F, space: &SearchSpace<T>, vrr: &VrrParams) -> Result<OptResult<T>>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
{
    vrr.validate()?;
    let params = &vrr.base;
    space.check_dimension(f.dimension())?;
    let f = Counted::new(f);
    let mut stream = ChaosStream::random(
        space.dimension(),
        T::lit(params.coefficient),
        &mut derive_rng(params.seed, VRR, 0, 0),
    )?;
    let mut x = vec![T::zero(); space.dimension()];
    let mut best: Option<Candidate<T>> = None;
    let mut trace = Vec::with_capacity(params.outer_iterations);
    for block in 0..params.outer_iterations {
        let bounds = match &best {
            Some(b) => vrr_stage_box(space, &b.point, vrr.reduction_rate, block)?,
            None => space.clone(),
        };
        for _ in 0..params.inner_iterations {
            stream.next_scaled(&bounds, &mut x);
            let value = f.eval(&x);
            match best.as_mut() {
                Some(b) => {
                    b.offer(&x, value);
                }
                None => best = Some(Candidate { point: x.clone(), value }),
            }
        }
        trace.push((Stage::Block(block), best.as_ref().map_or(T::nan(), |b| b.value)));
    }
    Ok(finish(best, f.calls(), trace))
}

fn finish<T: Scalar>(best: Option<Candidate<T>>, evaluations: u64, stage_trace: Vec<(Stage, T)>) -> OptResult<T> {
    // validate() guarantees N >= 1 and M >= 3, so at least one evaluation ran.
    let best = best.expect("at least one evaluation");
    OptResult {
        best_point: best.point,
        best_value: best.value,
        evaluations,
        survivors: 1,
        stage_trace,
    }
}
