//! The five two-dimensional test functions and their known optima.

use std::fmt;
use std::str::FromStr;

use crate::objective::Objective;
use crate::scalar::Scalar;
use crate::space::SearchSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Benchmark {
    /// Rosenbrock.
    F1,
    /// Six-hump camel back.
    F2,
    /// Schaffer-type ring function.
    F3,
    /// Radial oscillating cone.
    F4,
    /// Goldstein-Price.
    F5,
}

pub const ALL: [Benchmark; 5] = [
    Benchmark::F1,
    Benchmark::F2,
    Benchmark::F3,
    Benchmark::F4,
    Benchmark::F5,
];

pub fn eval_f1<T: Scalar>(x1: T, x2: T) -> T {
    let a = x1 * x1 - x2;
    let b = T::one() - x1;
    T::lit(100.0) * a * a + b * b
}

pub fn eval_f2<T: Scalar>(x1: T, x2: T) -> T {
    let s1 = x1 * x1;
    let s2 = x2 * x2;
    (T::lit(4.0) - T::lit(2.1) * s1 + s1 * s1 / T::lit(3.0)) * s1
        + x1 * x2
        + (T::lit(-4.0) + T::lit(4.0) * s2) * s2
}

pub fn eval_f3<T: Scalar>(x1: T, x2: T) -> T {
    let r2 = x1 * x1 + x2 * x2;
    let s = r2.sqrt().sin();
    let d = T::one() + T::lit(0.001) * r2;
    T::lit(-0.5) + (s * s - T::lit(0.5)) / (d * d)
}

/// `(r^2)^0.25 * (sin^2(50 (r^2)^0.1) + 1)`; the `+ 1` sits outside the sine.
pub fn eval_f4<T: Scalar>(x1: T, x2: T) -> T {
    let r2 = x1 * x1 + x2 * x2;
    let s = (T::lit(50.0) * r2.powf(T::lit(0.1))).sin();
    r2.powf(T::lit(0.25)) * (s * s + T::one())
}

pub fn eval_f5<T: Scalar>(x1: T, x2: T) -> T {
    let c = T::lit;
    let s = x1 + x2 + T::one();
    let first = T::one()
        + s * s
            * (c(19.0) - c(14.0) * x1 + c(3.0) * x1 * x1 - c(14.0) * x2
                + c(6.0) * x1 * x2
                + c(3.0) * x2 * x2);
    let t = c(2.0) * x1 - c(3.0) * x2;
    let second = c(30.0)
        + t * t
            * (c(18.0) - c(32.0) * x1 + c(12.0) * x1 * x1 + c(48.0) * x2
                - c(36.0) * x1 * x2
                + c(27.0) * x2 * x2);
    first * second
}

// Six-hump camel minimizer, refined by Newton iteration at 40 digits.
const F2_MINIMIZER: [f64; 2] = [0.089_842_013_100_318_06, -0.712_656_403_020_739_6];
const F2_MINIMUM: f64 = -1.031_628_453_489_877_4;

impl Benchmark {
    pub fn name(self) -> &'static str {
        match self {
            Benchmark::F1 => "F1",
            Benchmark::F2 => "F2",
            Benchmark::F3 => "F3",
            Benchmark::F4 => "F4",
            Benchmark::F5 => "F5",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn eval<T: Scalar>(self, x1: T, x2: T) -> T {
        match self {
            Benchmark::F1 => eval_f1(x1, x2),
            Benchmark::F2 => eval_f2(x1, x2),
            Benchmark::F3 => eval_f3(x1, x2),
            Benchmark::F4 => eval_f4(x1, x2),
            Benchmark::F5 => eval_f5(x1, x2),
        }
    }

    /// Half-open domains like `-100 < x < 100` are treated as closed boxes.
    pub fn bounds(self) -> (f64, f64) {
        match self {
            Benchmark::F1 => (-2.048, 2.048),
            Benchmark::F2 | Benchmark::F3 | Benchmark::F4 => (-100.0, 100.0),
            Benchmark::F5 => (-2.0, 2.0),
        }
    }

    pub fn reference_minimizer(self) -> [f64; 2] {
        match self {
            Benchmark::F1 => [1.0, 1.0],
            Benchmark::F2 => F2_MINIMIZER,
            Benchmark::F3 | Benchmark::F4 => [0.0, 0.0],
            Benchmark::F5 => [0.0, -1.0],
        }
    }

    /// Global minimum value. For F3 this is the formula's `-1` at the origin.
    pub fn reference_value(self) -> f64 {
        match self {
            Benchmark::F1 | Benchmark::F4 => 0.0,
            Benchmark::F2 => F2_MINIMUM,
            Benchmark::F3 => -1.0,
            Benchmark::F5 => 3.0,
        }
    }

    pub fn spec<T: Scalar>(self) -> BenchmarkSpec<T> {
        let (lo, hi) = self.bounds();
        BenchmarkSpec {
            benchmark: self,
            space: SearchSpace::uniform(2, T::lit(lo), T::lit(hi))
                .expect("benchmark bounds are valid"),
            reference_minimizer: self.reference_minimizer().map(T::lit).to_vec(),
            reference_value: T::lit(self.reference_value()),
        }
    }
}

impl fmt::Display for Benchmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownBenchmark(pub String);

impl fmt::Display for UnknownBenchmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown benchmark '{}' (expected one of F1, F2, F3, F4, F5)", self.0)
    }
}

impl std::error::Error for UnknownBenchmark {}

impl FromStr for Benchmark {
    type Err = UnknownBenchmark;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL.iter()
            .copied()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownBenchmark(s.to_string()))
    }
}

/// A benchmark bound to a scalar type: objective, domain and known optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSpec<T> {
    pub benchmark: Benchmark,
    pub space: SearchSpace<T>,
    pub reference_minimizer: Vec<T>,
    pub reference_value: T,
}

impl<T: Scalar> Objective<T> for BenchmarkSpec<T> {
    fn dimension(&self) -> usize {
        2
    }

    fn eval(&self, x: &[T]) -> T {
        self.benchmark.eval(x[0], x[1])
    }
}

pub fn registry<T: Scalar>() -> Vec<BenchmarkSpec<T>> {
    ALL.iter().map(|b| b.spec()).collect()
}
