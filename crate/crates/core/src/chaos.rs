//! Logistic-map chaos streams.
//!
//! A [`ChaosStream`] holds one trajectory `X <- A * X * (1 - X)` per
//! coordinate. At `A = 4` the map is ergodic on `[0, 1]` with invariant
//! density `1 / (pi * sqrt(x (1 - x)))`, so a single orbit sweeps the unit
//! cube and, after scaling, any search box.

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::space::SearchSpace;

pub const DEFAULT_COEFFICIENT: f64 = 4.0;

/// Seeds closer than this to a degenerate point are rejected.
pub const DEGENERATE_TOLERANCE: f64 = 1e-12;

/// Points that are fixed or land on a fixed point within two steps at `A = 4`.
const DEGENERATE_POINTS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// Lower clamp applied after every step.
const GUARD: f64 = 1e-15;

/// Checks a candidate initial state for the logistic map.
///
/// Components must lie in `[0, 1]` and stay at least
/// [`DEGENERATE_TOLERANCE`] away from `{0, 1/4, 1/2, 3/4, 1}`.
pub fn validate_seed<T: Scalar>(state: &[T]) -> Result<&[T]> {
    for (index, &v) in state.iter().enumerate() {
        let value = v.as_f64();
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::SeedOutOfRange { index, value });
        }
        if DEGENERATE_POINTS
            .iter()
            .any(|&d| (value - d).abs() <= DEGENERATE_TOLERANCE)
        {
            return Err(Error::DegenerateSeed { index, value });
        }
    }
    Ok(state)
}

/// One logistic-map trajectory in `[0, 1]^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChaosStream<T> {
    state: Vec<T>,
    coefficient: T,
    lo: T,
    hi: T,
}

impl<T: Scalar> ChaosStream<T> {
    /// Builds a stream from an explicit seed, rejecting degenerate states.
    pub fn new(seed: Vec<T>, coefficient: T) -> Result<Self> {
        if seed.is_empty() {
            return Err(Error::EmptySpace);
        }
        validate_seed(&seed)?;
        let lo = T::lit(GUARD);
        // 1 - 1e-15 rounds to 1 in single precision; back off by one epsilon there.
        let hi = T::one() - lo.max(T::epsilon());
        Ok(Self {
            state: seed,
            coefficient,
            lo,
            hi,
        })
    }

    /// Draws uniform seeds from `rng` until one passes [`validate_seed`].
    pub fn random<R: Rng + ?Sized>(dimension: usize, coefficient: T, rng: &mut R) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::EmptySpace);
        }
        loop {
            let seed: Vec<T> = (0..dimension).map(|_| T::lit(rng.random::<f64>())).collect();
            match Self::new(seed, coefficient) {
                Err(Error::DegenerateSeed { .. }) => continue,
                other => return other,
            }
        }
    }

    pub fn dimension(&self) -> usize {
        self.state.len()
    }

    pub fn coefficient(&self) -> T {
        self.coefficient
    }

    pub fn state(&self) -> &[T] {
        &self.state
    }

    /// Advances every coordinate by one logistic step and returns the new state.
    pub fn step(&mut self) -> &[T] {
        let (a, lo, hi) = (self.coefficient, self.lo, self.hi);
        for x in &mut self.state {
            *x = (a * *x * (T::one() - *x)).max(lo).min(hi);
        }
        &self.state
    }

    /// Steps once and writes the new state scaled into `space`.
    pub(crate) fn next_scaled(&mut self, space: &SearchSpace<T>, out: &mut [T]) {
        self.step();
        space.scale_into(&self.state, out);
    }
}

/// Returns the stream advanced by one step.
pub fn logistic_step<T: Scalar>(mut stream: ChaosStream<T>) -> ChaosStream<T> {
    stream.step();
    stream
}

/// The first `len` states after the seed.
pub fn chaos_sequence<T: Scalar>(stream: &mut ChaosStream<T>, len: usize) -> Vec<Vec<T>> {
    (0..len).map(|_| stream.step().to_vec()).collect()
}
