//! Parallel chaos optimal search.
//!
//! The pipeline runs five stages over a box-constrained objective:
//!
//! 1. **Initialization**: `p` uniform random candidates.
//! 2. **Rough search**: `N` logistic-map iterates over the whole box; each
//!    iterate challenges its nearest candidate.
//! 3. **Elimination**: candidates closer than `d_near = diag / (2p)` are
//!    merged, keeping the better one, leaving `p'` candidates.
//! 4. **Parallel search**: every survivor runs `M - 2` local chaos searches
//!    of `floor(N / p')` iterates in boxes of half-width
//!    `(b - a) / (2 p' m!)`, `m = 1..=M-2`, each recentered on the
//!    candidate's current point.
//! 5. **Fine search**: `N` iterates around the overall best in a box of
//!    half-width `(b - a) / (2 p' (M - 1)!)`.
//!
//! Total evaluations: `p + N + (M - 2) p' floor(N / p') + N <= M N + p`.

use rand::Rng;
use rayon::prelude::*;

use crate::chaos::ChaosStream;
use crate::error::{Error, Result};
use crate::objective::{improves, Counted, Objective};
use crate::scalar::Scalar;
use crate::search::{best_index, Candidate, OptResult, SearchParams, Stage};
use crate::seed::derive_rng;
use crate::space::{distance_squared, SearchSpace};

// Seed derivation domains.
const INIT: u64 = 1;
const ROUGH: u64 = 2;
const PARALLEL: u64 = 3;
const FINE: u64 = 4;

/// Stage 1: `p` points drawn uniformly from the box, each evaluated once.
pub fn init_candidates<T, F, R>(
    space: &SearchSpace<T>,
    f: &F,
    p: usize,
    rng: &mut R,
) -> Vec<Candidate<T>>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
    R: Rng + ?Sized,
{
    let n = space.dimension();
    let mut unit = vec![T::zero(); n];
    (0..p)
        .map(|_| {
            for u in unit.iter_mut() {
                *u = T::lit(rng.random::<f64>());
            }
            let mut point = vec![T::zero(); n];
            space.scale_into(&unit, &mut point);
            Candidate::evaluate(point, f)
        })
        .collect()
}

/// Stage 2: `iterations` chaotic samples over the whole box.
///
/// Each sample is compared against its nearest candidate (Euclidean
/// distance, lowest index on ties) and replaces it on strict improvement.
pub fn rough_search<T, F>(
    candidates: &mut [Candidate<T>],
    space: &SearchSpace<T>,
    f: &F,
    iterations: usize,
    stream: &mut ChaosStream<T>,
) where
    T: Scalar,
    F: Objective<T> + ?Sized,
{
    if candidates.is_empty() {
        return;
    }
    let mut x = vec![T::zero(); space.dimension()];
    let mut ceiling = worst_value(candidates);
    for _ in 0..iterations {
        stream.next_scaled(space, &mut x);
        let value = f.eval(&x);
        // Only a value beating the worst candidate can beat the nearest one.
        if !improves(value, ceiling) {
            continue;
        }
        let nearest = nearest_index(candidates, &x);
        if candidates[nearest].offer(&x, value) {
            ceiling = worst_value(candidates);
        }
    }
}

/// The largest candidate value, with NaN ranked above everything.
fn worst_value<T: Scalar>(candidates: &[Candidate<T>]) -> T {
    candidates
        .iter()
        .map(|c| c.value)
        .fold(candidates[0].value, |acc, v| if improves(acc, v) { v } else { acc })
}

fn nearest_index<T: Scalar>(candidates: &[Candidate<T>], x: &[T]) -> usize {
    let mut best = 0;
    let mut best_d = distance_squared(&candidates[0].point, x);
    for (i, c) in candidates.iter().enumerate().skip(1) {
        let d = distance_squared(&c.point, x);
        if d < best_d {
            best = i;
            best_d = d;
        }
    }
    best
}

/// `d_near = sqrt(sum (b_i - a_i)^2) / (2p)`.
pub fn neighbor_distance<T: Scalar>(space: &SearchSpace<T>, p: usize) -> T {
    space.diagonal() / T::from_count(2 * p)
}

/// Stage 3: removes candidates until every pair is at least `d_near` apart.
///
/// The first too-close pair in scan order loses its worse member (the lower
/// index survives ties) and the scan restarts.
pub fn eliminate_neighbors<T: Scalar>(
    mut candidates: Vec<Candidate<T>>,
    d_near: T,
) -> Vec<Candidate<T>> {
    let limit = d_near * d_near;
    'rescan: loop {
        for i in 0..candidates.len() {
            for j in i + 1..candidates.len() {
                if distance_squared(&candidates[i].point, &candidates[j].point) < limit {
                    let loser = if improves(candidates[j].value, candidates[i].value) {
                        i
                    } else {
                        j
                    };
                    candidates.remove(loser);
                    continue 'rescan;
                }
            }
        }
        return candidates;
    }
}

/// `m!`, failing past `20!`, the largest factorial a `u64` holds.
pub fn factorial(m: usize) -> Result<u64> {
    (1..=m as u64)
        .try_fold(1u64, |acc, k| acc.checked_mul(k))
        .ok_or(Error::FactorialOverflow(m))
}

/// Per-dimension half-widths `(b_i - a_i) / (2 p' k!)`.
pub fn shrunk_half_widths<T: Scalar>(
    space: &SearchSpace<T>,
    p_prime: usize,
    k: usize,
) -> Result<Vec<T>> {
    let denom = T::from_count(2 * p_prime) * T::from_u64(factorial(k)?).ok_or(Error::FactorialOverflow(k))?;
    Ok(space.widths().map(|w| w / denom).collect())
}

/// Box for substage `m` of the parallel search around `center`, clamped to `space`.
pub fn reduced_bounds<T: Scalar>(
    center: &Candidate<T>,
    space: &SearchSpace<T>,
    p_prime: usize,
    m: usize,
) -> Result<SearchSpace<T>> {
    if m == 0 || p_prime == 0 {
        return Err(Error::InvalidParams(format!(
            "substage index and survivor count must be positive (m = {m}, p' = {p_prime})"
        )));
    }
    let h = shrunk_half_widths(space, p_prime, m)?;
    space.clamped_around(&center.point, &h)
}

/// Box for the fine search: the `m = M - 1` continuation of [`reduced_bounds`].
pub fn fine_bounds<T: Scalar>(
    best: &Candidate<T>,
    space: &SearchSpace<T>,
    p_prime: usize,
    outer_iterations: usize,
) -> Result<SearchSpace<T>> {
    if outer_iterations < 3 {
        return Err(Error::InvalidParams(format!(
            "outer iterations M must be at least 3, got {outer_iterations}"
        )));
    }
    reduced_bounds(best, space, p_prime, outer_iterations - 1)
}

/// `iterations` chaotic samples in `sub_space`, improving `center` in place.
pub fn local_chaos_search<T, F>(
    center: &mut Candidate<T>,
    sub_space: &SearchSpace<T>,
    f: &F,
    iterations: usize,
    stream: &mut ChaosStream<T>,
) where
    T: Scalar,
    F: Objective<T> + ?Sized,
{
    let mut x = vec![T::zero(); sub_space.dimension()];
    for _ in 0..iterations {
        stream.next_scaled(sub_space, &mut x);
        let value = f.eval(&x);
        center.offer(&x, value);
    }
}

/// Runs the `M - 2` shrinking substages for one candidate.
fn search_around<T, F>(
    index: usize,
    candidate: &mut Candidate<T>,
    space: &SearchSpace<T>,
    f: &F,
    p_prime: usize,
    params: &SearchParams,
) -> Result<()>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
{
    let per_substage = params.inner_iterations / p_prime;
    let coefficient = T::lit(params.coefficient);
    for m in 1..=params.outer_iterations - 2 {
        let bounds = reduced_bounds(candidate, space, p_prime, m)?;
        let mut rng = derive_rng(params.seed, PARALLEL, index as u64, m as u64);
        let mut stream = ChaosStream::random(space.dimension(), coefficient, &mut rng)?;
        local_chaos_search(candidate, &bounds, f, per_substage, &mut stream);
    }
    Ok(())
}

/// Stage 4: independent shrinking local searches around every candidate.
///
/// Each (candidate, substage) pair seeds its own stream from
/// `params.seed`, so the result is identical for any `params.threads`.
pub fn parallel_search<T, F>(
    candidates: &mut [Candidate<T>],
    space: &SearchSpace<T>,
    f: &F,
    params: &SearchParams,
) -> Result<()>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
{
    params.validate()?;
    let p_prime = candidates.len();
    if p_prime == 0 {
        return Ok(());
    }
    if params.threads <= 1 {
        for (i, c) in candidates.iter_mut().enumerate() {
            search_around(i, c, space, f, p_prime, params)?;
        }
        return Ok(());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(params.threads)
        .build()
        .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
    pool.install(|| {
        candidates
            .par_iter_mut()
            .enumerate()
            .try_for_each(|(i, c)| search_around(i, c, space, f, p_prime, params))
    })
}

/// Stage 5: `iterations` chaotic samples in `bounds` around `best`.
pub fn fine_search<T, F>(
    mut best: Candidate<T>,
    bounds: &SearchSpace<T>,
    f: &F,
    iterations: usize,
    stream: &mut ChaosStream<T>,
) -> Candidate<T>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
{
    local_chaos_search(&mut best, bounds, f, iterations, stream);
    best
}

/// Runs all five stages and returns the best point found.
pub fn optimize<T, F>(f: &F, space: &SearchSpace<T>, params: &SearchParams) -> Result<OptResult<T>>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
{
    params.validate()?;
    space.check_dimension(f.dimension())?;
    let f = Counted::new(f);
    let n = space.dimension();
    let coefficient = T::lit(params.coefficient);
    let mut trace = Vec::with_capacity(5);
    let best_of = |c: &[Candidate<T>]| c[best_index(c).expect("candidate set is never empty")].value;

    let mut rng = derive_rng(params.seed, INIT, 0, 0);
    let mut candidates = init_candidates(space, &f, params.initial_candidates, &mut rng);
    trace.push((Stage::Initialization, best_of(&candidates)));

    let mut rng = derive_rng(params.seed, ROUGH, 0, 0);
    let mut stream = ChaosStream::random(n, coefficient, &mut rng)?;
    rough_search(&mut candidates, space, &f, params.inner_iterations, &mut stream);
    trace.push((Stage::RoughSearch, best_of(&candidates)));

    let d_near = neighbor_distance(space, params.initial_candidates);
    let mut candidates = eliminate_neighbors(candidates, d_near);
    let p_prime = candidates.len();
    trace.push((Stage::Elimination, best_of(&candidates)));

    parallel_search(&mut candidates, space, &f, params)?;
    trace.push((Stage::ParallelSearch, best_of(&candidates)));

    let best = candidates.swap_remove(best_index(&candidates).expect("candidate set is never empty"));
    let bounds = fine_bounds(&best, space, p_prime, params.outer_iterations)?;
    let mut rng = derive_rng(params.seed, FINE, 0, 0);
    let mut stream = ChaosStream::random(n, coefficient, &mut rng)?;
    let best = fine_search(best, &bounds, &f, params.inner_iterations, &mut stream);
    trace.push((Stage::FineSearch, best.value));

    Ok(OptResult {
        best_point: best.point,
        best_value: best.value,
        evaluations: f.calls(),
        survivors: p_prime,
        stage_trace: trace,
    })
}

/// `p + N + (M - 2) p' floor(N / p') + N`.
pub fn expected_evaluations(params: &SearchParams, p_prime: usize) -> u64 {
    let n = params.inner_iterations as u64;
    let m = params.outer_iterations as u64;
    let pp = p_prime as u64;
    params.initial_candidates as u64 + n + (m - 2) * pp * (n / pp) + n
}
