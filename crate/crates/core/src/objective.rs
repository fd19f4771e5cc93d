use std::sync::atomic::{AtomicU64, Ordering};

use crate::scalar::Scalar;

/// A function to minimize.
///
/// `eval` must be pure: the parallel stage calls it from several threads at
/// once and relies on repeated calls giving the same answer. A failed
/// evaluation should be reported as `NaN` or `+inf`; neither can ever replace
/// a candidate because improvement is tested with a strict `<`.
pub trait Objective<T: Scalar>: Sync {
    fn dimension(&self) -> usize;
    fn eval(&self, x: &[T]) -> T;
}

impl<T: Scalar, O: Objective<T> + ?Sized> Objective<T> for &O {
    fn dimension(&self) -> usize {
        (**self).dimension()
    }

    fn eval(&self, x: &[T]) -> T {
        (**self).eval(x)
    }
}

/// Adapts a closure into an [`Objective`].
pub struct FnObjective<F> {
    dimension: usize,
    f: F,
}

impl<F> FnObjective<F> {
    pub fn new(dimension: usize, f: F) -> Self {
        Self { dimension, f }
    }
}

impl<T: Scalar, F: Fn(&[T]) -> T + Sync> Objective<T> for FnObjective<F> {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn eval(&self, x: &[T]) -> T {
        (self.f)(x)
    }
}

/// Counts calls to the wrapped objective.
pub struct Counted<O> {
    inner: O,
    calls: AtomicU64,
}

impl<O> Counted<O> {
    pub fn new(inner: O) -> Self {
        Self {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn into_inner(self) -> O {
        self.inner
    }
}

impl<T: Scalar, O: Objective<T>> Objective<T> for Counted<O> {
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn eval(&self, x: &[T]) -> T {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.eval(x)
    }
}

/// `a` strictly improves on `b`. `NaN` never improves and is always improved on.
pub(crate) fn improves<T: Scalar>(a: T, b: T) -> bool {
    a < b || (b.is_nan() && !a.is_nan())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_through_references() {
        let f = Counted::new(FnObjective::new(1, |x: &[f64]| x[0] * x[0]));
        let r = &f;
        assert_eq!(r.eval(&[3.0]), 9.0);
        assert_eq!(f.eval(&[2.0]), 4.0);
        assert_eq!(f.calls(), 2);
        assert_eq!(Objective::<f64>::dimension(&f), 1);
    }

    #[test]
    fn improvement_is_strict() {
        assert!(improves(1.0, 2.0));
        assert!(!improves(2.0, 2.0));
        assert!(!improves(f64::NAN, 2.0));
        assert!(improves(2.0, f64::NAN));
        assert!(improves(2.0, f64::INFINITY));
        assert!(!improves(f64::INFINITY, f64::INFINITY));
    }
}
