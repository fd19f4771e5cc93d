//! Box-constrained search domains.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Axis-aligned box `lower[i] <= x[i] <= upper[i]`.
///
/// Every dimension has strictly positive, finite width.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace<T> {
    lower: Vec<T>,
    upper: Vec<T>,
}

impl<T: Scalar> SearchSpace<T> {
    pub fn new(lower: Vec<T>, upper: Vec<T>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::EmptySpace);
        }
        for (index, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidBounds {
                    index,
                    lower: lo.as_f64(),
                    upper: hi.as_f64(),
                });
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval `[lower, upper]` in each of `dimension` axes.
    pub fn uniform(dimension: usize, lower: T, upper: T) -> Result<Self> {
        Self::new(vec![lower; dimension], vec![upper; dimension])
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    pub fn width(&self, i: usize) -> T {
        self.upper[i] - self.lower[i]
    }

    pub fn widths(&self) -> impl Iterator<Item = T> + '_ {
        self.lower.iter().zip(&self.upper).map(|(&a, &b)| b - a)
    }

    /// Euclidean length of the box diagonal.
    pub fn diagonal(&self) -> T {
        self.widths().fold(T::zero(), |acc, w| acc + w * w).sqrt()
    }

    pub fn contains(&self, x: &[T]) -> bool {
        x.len() == self.dimension()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| lo <= v && v <= hi)
    }

    /// Box of half-width `half_width[i]` around `center`, intersected with `self`.
    ///
    /// Fails with [`Error::CollapsedBox`] when the intersection has no
    /// representable interior, which happens once the half-width drops below
    /// the spacing of floating point values near the center.
    pub fn clamped_around(&self, center: &[T], half_width: &[T]) -> Result<Self> {
        self.check_dimension(center.len())?;
        self.check_dimension(half_width.len())?;
        let mut lower = Vec::with_capacity(center.len());
        let mut upper = Vec::with_capacity(center.len());
        for i in 0..center.len() {
            let lo = self.lower[i].max(center[i] - half_width[i]);
            let hi = self.upper[i].min(center[i] + half_width[i]);
            if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
                return Err(Error::CollapsedBox {
                    index: i,
                    center: center[i].as_f64(),
                });
            }
            lower.push(lo);
            upper.push(hi);
        }
        Ok(Self { lower, upper })
    }

    pub(crate) fn check_dimension(&self, actual: usize) -> Result<()> {
        if actual == self.dimension() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual,
            })
        }
    }

    /// Affine map of a unit-cube point into the box, written into `out`.
    ///
    /// Results are clamped into the box so that `unit = 1` lands exactly on
    /// the upper bound despite rounding in `a + (b - a)`.
    pub(crate) fn scale_into(&self, unit: &[T], out: &mut [T]) {
        for (i, o) in out.iter_mut().enumerate() {
            let (a, b) = (self.lower[i], self.upper[i]);
            *o = (a + (b - a) * unit[i]).max(a).min(b);
        }
    }
}

/// Maps `unit` from `[0, 1]^n` into `space`: `x[i] = a[i] + (b[i] - a[i]) * unit[i]`.
pub fn scale_to_bounds<T: Scalar>(unit: &[T], space: &SearchSpace<T>) -> Result<Vec<T>> {
    space.check_dimension(unit.len())?;
    let mut out = vec![T::zero(); unit.len()];
    space.scale_into(unit, &mut out);
    Ok(out)
}

pub fn distance_squared<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (&x, &y)| acc + (x - y) * (x - y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_bounds() {
        assert!(matches!(
            SearchSpace::new(vec![0.0, 1.0], vec![1.0, 1.0]),
            Err(Error::InvalidBounds { index: 1, .. })
        ));
        assert!(matches!(
            SearchSpace::new(vec![0.0], vec![1.0, 2.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            SearchSpace::<f64>::new(vec![], vec![]),
            Err(Error::EmptySpace)
        ));
        assert!(SearchSpace::new(vec![f64::NEG_INFINITY], vec![0.0]).is_err());
    }

    #[test]
    fn scale_endpoints_and_midpoint() {
        let f1 = SearchSpace::uniform(1, -2.048, 2.048).unwrap();
        assert_eq!(scale_to_bounds(&[0.0], &f1).unwrap(), vec![-2.048]);
        assert_eq!(scale_to_bounds(&[1.0], &f1).unwrap(), vec![2.048]);
        let wide = SearchSpace::uniform(1, -100.0, 100.0).unwrap();
        assert_eq!(scale_to_bounds(&[0.5], &wide).unwrap(), vec![0.0]);
    }

    #[test]
    fn scale_dimension_mismatch() {
        let s = SearchSpace::uniform(2, 0.0f32, 1.0).unwrap();
        assert_eq!(
            scale_to_bounds(&[0.5], &s),
            Err(Error::DimensionMismatch {
                expected: 2,
                actual: 1
            })
        );
    }

    #[test]
    fn clamped_box_stays_inside() {
        let s = SearchSpace::uniform(2, -100.0, 100.0).unwrap();
        let b = s.clamped_around(&[95.0, -99.0], &[20.0, 20.0]).unwrap();
        assert_eq!(b.lower(), &[75.0, -100.0]);
        assert_eq!(b.upper(), &[100.0, -79.0]);
    }

    #[test]
    fn collapsed_box_is_reported() {
        let s = SearchSpace::uniform(1, -100.0, 100.0).unwrap();
        assert!(matches!(
            s.clamped_around(&[95.0], &[1e-20]),
            Err(Error::CollapsedBox { index: 0, .. })
        ));
    }
}
