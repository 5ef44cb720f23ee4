//! Sampled estimation of the normalized spectral measure of `Δ^i` from local
//! moments, and the kernel-mass (Betti number) estimate read off it.
//!
//! Every quantity here is a function of balls around sampled simplices:
//! `(Δ^r)(σ, σ)` only sees simplices within `⌊r/2⌋` steps of `σ`, so the
//! cost per sample does not depend on the size of the complex.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex};
use crate::eigen::symmetric_eigenvalues;
use crate::error::{Error, Result};
use crate::laplacian::{laplacian, local_block, norm_bound, LocalBlock};
use crate::scalar::{FixedSum, Scalar};

/// Raw moments up to this power are tracked exactly.
pub const EXACT_RAW_POWERS: usize = 8;

/// Reconstructed steps are shifted right by this many kernel widths so that
/// the smoothing only ever overestimates `σ(λ)`.
const SHIFT_WIDTHS: f64 = 3.0;

/// Points in the default CDF grid.
const GRID_POINTS: usize = 256;

fn block_vectors_i128(block: &LocalBlock, steps: usize) -> Option<Vec<Vec<i128>>> {
    let n = block.rows.len();
    let mut vs = vec![vec![0i128; n]];
    vs[0][0] = 1;
    for t in 1..=steps {
        let prev = &vs[t - 1];
        let mut next = vec![0i128; n];
        for (r, row) in block.rows.iter().enumerate() {
            let mut acc = 0i128;
            for &(c, v) in row {
                acc = acc.checked_add((v as i128).checked_mul(prev[c])?)?;
            }
            next[r] = acc;
        }
        vs.push(next);
    }
    Some(vs)
}

fn block_vectors_big(block: &LocalBlock, steps: usize) -> Vec<Vec<BigInt>> {
    let n = block.rows.len();
    let mut vs = vec![vec![BigInt::zero(); n]];
    vs[0][0] = BigInt::one();
    for t in 1..=steps {
        let prev = &vs[t - 1];
        let next = block
            .rows
            .iter()
            .map(|row| row.iter().map(|&(c, v)| &prev[c] * v).sum())
            .collect();
        vs.push(next);
    }
    vs
}

/// `(Δ^r)(σ,σ)` for `r = 0..=r_max` from `<Δ^a e, Δ^b e>` with `a + b = r`.
fn diagonal_powers(block: &LocalBlock, r_max: usize) -> Vec<BigInt> {
    let steps = r_max.div_ceil(2);
    if let Some(vs) = block_vectors_i128(block, steps) {
        let dot = |a: &[i128], b: &[i128]| -> Option<i128> {
            a.iter().zip(b).try_fold(0i128, |acc, (x, y)| acc.checked_add(x.checked_mul(*y)?))
        };
        let exact: Option<Vec<BigInt>> = (0..=r_max).map(|r| dot(&vs[r / 2], &vs[r - r / 2]).map(BigInt::from)).collect();
        if let Some(out) = exact {
            return out;
        }
    }
    let vs = block_vectors_big(block, steps);
    (0..=r_max)
        .map(|r| vs[r / 2].iter().zip(&vs[r - r / 2]).map(|(x, y)| x * y).sum())
        .collect()
}

/// `((Δ^i)^r)(σ, σ)` with `i = dim σ`, computed on the block of `Δ^i` around
/// `σ`; exact.
pub fn local_diagonal_power(k: &SimplicialComplex, sigma: &Simplex, r: usize) -> Result<BigInt> {
    let i = sigma.dimension();
    let idx = k.index_of(sigma).ok_or_else(|| Error::UnknownSimplex(sigma.clone()))?;
    let block = local_block(k, i, idx, r / 2);
    Ok(diagonal_powers(&block, r).pop().expect("r_max + 1 entries"))
}

/// Which `i`-simplices were averaged over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSet {
    pub indices: Vec<usize>,
    pub exhaustive: bool,
}

/// Every simplex once when `samples >= |K_i|`, else `samples` uniform draws
/// with replacement.
pub fn draw_samples(population: usize, samples: usize, seed: u64) -> SampleSet {
    if samples >= population {
        return SampleSet { indices: (0..population).collect(), exhaustive: true };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SampleSet { indices: (0..samples).map(|_| rng.gen_range(0..population)).collect(), exhaustive: false }
}

/// Averaged diagonal powers `m̂_r` for `r = 0..=r_max`, as exact rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct RawMoments {
    pub values: Vec<BigRational>,
    pub samples: usize,
    pub exhaustive: bool,
}

/// `m̂_r = (1/S) Σ (Δ^r)(σ,σ)` over sampled `σ ∈ K_i`. With `samples >= |K_i|`
/// every simplex is used once and `m̂_r` is the normalized trace.
pub fn estimate_moments(k: &SimplicialComplex, i: usize, r_max: usize, samples: usize, seed: u64) -> Result<RawMoments> {
    let population = k.count(i);
    if population == 0 {
        return Err(Error::EmptyDimension(i));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("sample count must be positive".into()));
    }
    let set = draw_samples(population, samples, seed);
    let per_sample: Vec<Vec<BigInt>> = set
        .indices
        .par_iter()
        .map(|&idx| diagonal_powers(&local_block(k, i, idx, r_max / 2), r_max))
        .collect();
    Ok(RawMoments {
        values: average(&per_sample, r_max + 1),
        samples: set.indices.len(),
        exhaustive: set.exhaustive,
    })
}

fn average(per_sample: &[Vec<BigInt>], len: usize) -> Vec<BigRational> {
    let count = BigInt::from(per_sample.len());
    (0..len)
        .map(|r| {
            let total: BigInt = per_sample.iter().map(|v| &v[r]).sum();
            BigRational::new(total, count.clone())
        })
        .collect()
}

/// Chebyshev moments `E[T_k(2λ/K - 1)]` from raw moments `E[λ^j]`, exactly.
pub fn chebyshev_from_raw(raw: &[BigRational], norm_bound: u64) -> Vec<BigRational> {
    let n = raw.len();
    if n == 0 {
        return Vec::new();
    }
    let scale = BigRational::new(BigInt::from(2), BigInt::from(norm_bound));
    // p1 = scale * λ - 1 as coefficients in λ
    let p1 = vec![-BigRational::one(), scale];
    let mut polys: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    if n > 1 {
        polys.push(p1.clone());
    }
    while polys.len() < n {
        let (a, b) = (&polys[polys.len() - 1], &polys[polys.len() - 2]);
        let mut next = vec![BigRational::zero(); a.len() + 1];
        for (j, c) in a.iter().enumerate() {
            let twice = c * BigRational::from_integer(2.into());
            next[j] += &twice * &p1[0];
            next[j + 1] += &twice * &p1[1];
        }
        for (j, c) in b.iter().enumerate() {
            next[j] -= c;
        }
        polys.push(next);
    }
    polys
        .iter()
        .map(|p| p.iter().zip(raw).map(|(c, m)| c * m).sum())
        .collect()
}

/// Jackson damping factors `g_0..g_n` for a degree-`n` expansion.
pub fn jackson_weights<T: Scalar>(n: usize) -> Vec<T> {
    let np1 = T::of_usize(n + 1);
    let step = T::PI() / np1;
    (0..=n)
        .map(|k| {
            let kk = T::of_usize(k);
            let a = (np1 - kk) * (step * kk).cos();
            let b = (step * kk).sin() / step.tan();
            (a + b) / np1
        })
        .collect()
}

/// Chebyshev moments of the rescaled block for the root simplex.
fn local_chebyshev<T: Scalar>(block: &LocalBlock, degree: usize, norm: T) -> Vec<T> {
    let n = block.rows.len();
    let scale = T::of(2.0) / norm;
    let two = T::of(2.0);
    let apply = |v: &[T]| -> Vec<T> {
        block
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| scale * row.iter().map(|&(c, x)| T::of(x as f64) * v[c]).sum::<T>() - v[r])
            .collect()
    };
    let dot = |a: &[T], b: &[T]| a.iter().zip(b).map(|(x, y)| *x * *y).sum::<T>();
    let mut mu = vec![T::zero(); degree + 1];
    mu[0] = T::one();
    if degree == 0 {
        return mu;
    }
    let mut prev = vec![T::zero(); n];
    prev[0] = T::one();
    let mut cur = apply(&prev);
    mu[1] = cur[0];
    // invariant: prev = T_{t-1} e, cur = T_t e
    for t in 1..=degree.div_ceil(2) {
        if 2 * t <= degree {
            mu[2 * t] = two * dot(&cur, &cur) - T::one();
        }
        if 2 * t - 1 <= degree && t > 1 {
            mu[2 * t - 1] = two * dot(&cur, &prev) - mu[1];
        }
        let next: Vec<T> = apply(&cur).iter().zip(&prev).map(|(a, b)| two * *a - *b).collect();
        prev = cur;
        cur = next;
    }
    mu
}

/// Moments, norm bound and reconstructed distribution function of `Δ^i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralSummary<T: Scalar> {
    pub dimension: usize,
    pub n_simplices: usize,
    pub simplex_density: T,
    pub norm_bound: T,
    /// `m̂_r` for `r = 0..=min(R, 8)`
    pub raw_moments: Vec<T>,
    /// Jackson-damped Chebyshev moments `g_k μ̂_k`, `k = 0..=R`
    pub cheb_moments: Vec<T>,
    /// `(λ, σ̂(λ))`, non-decreasing
    pub cdf_grid: Vec<(T, T)>,
    /// smallest eigenvalue of the Hankel matrix of scaled raw moments
    pub hankel_min_eigenvalue: T,
    pub sample_size: usize,
    pub exhaustive: bool,
    pub seed: u64,
}

impl<T: Scalar> SpectralSummary<T> {
    pub fn degree(&self) -> usize {
        self.cheb_moments.len().saturating_sub(1)
    }

    /// How far right each reconstructed step is shifted at the low end of
    /// the spectrum, in units of `λ`.
    pub fn resolution(&self) -> T {
        let w = T::of(SHIFT_WIDTHS) * T::PI() / T::of_usize(self.degree().max(1));
        self.norm_bound * (T::one() - w.min(T::PI()).cos()) / T::of(2.0)
    }

    /// Summary from exactly known raw moments (all powers `0..=R`).
    pub fn from_exact_moments(
        dimension: usize,
        n_simplices: usize,
        vertex_count: usize,
        norm_bound: u64,
        raw: &[BigRational],
    ) -> Result<Self> {
        let cheb = chebyshev_from_raw(raw, norm_bound);
        let undamped: Vec<T> = cheb.iter().map(|c| T::of(c.to_f64().unwrap_or(f64::NAN))).collect();
        let raw_t: Vec<T> = raw.iter().take(EXACT_RAW_POWERS + 1).map(|c| T::of(c.to_f64().unwrap_or(f64::NAN))).collect();
        Self::assemble(dimension, n_simplices, vertex_count, norm_bound, raw_t, undamped, n_simplices, true, 0)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        dimension: usize,
        n_simplices: usize,
        vertex_count: usize,
        norm_bound: u64,
        raw_moments: Vec<T>,
        undamped: Vec<T>,
        sample_size: usize,
        exhaustive: bool,
        seed: u64,
    ) -> Result<Self> {
        let degree = undamped.len().saturating_sub(1);
        let g = jackson_weights::<T>(degree);
        let cheb_moments = undamped.iter().zip(&g).map(|(m, w)| *m * *w).collect();
        let k = T::of(norm_bound as f64);
        let mut summary = SpectralSummary {
            dimension,
            n_simplices,
            simplex_density: T::of_usize(n_simplices) / T::of_usize(vertex_count.max(1)),
            norm_bound: k,
            hankel_min_eigenvalue: hankel_min(&raw_moments, k),
            raw_moments,
            cheb_moments,
            cdf_grid: Vec::new(),
            sample_size,
            exhaustive,
            seed,
        };
        let grid: Vec<T> = (0..=GRID_POINTS)
            .map(|j| {
                let s = T::of_usize(j) / T::of_usize(GRID_POINTS);
                k * s * s
            })
            .collect();
        let values = cdf_from_moments(&summary, &grid)?;
        summary.cdf_grid = grid.into_iter().zip(values).collect();
        Ok(summary)
    }
}

/// Smallest eigenvalue of `[m_{a+b} / K^{a+b}]` over the available powers.
fn hankel_min<T: Scalar>(raw: &[T], k: T) -> T {
    let h = raw.len().div_ceil(2);
    if h == 0 {
        return T::zero();
    }
    let scaled: Vec<T> = raw.iter().enumerate().map(|(r, m)| *m / k.powi(r as i32)).collect();
    let size = if 2 * h - 1 <= raw.len() { h } else { h - 1 }.max(1);
    let mat = (0..size).map(|a| (0..size).map(|b| scaled[a + b]).collect()).collect();
    symmetric_eigenvalues(mat).first().copied().unwrap_or(T::zero())
}

/// Smoothed `σ(λ)` at a single point, before clipping.
fn smoothed_step<T: Scalar>(damped: &[T], norm: T, lambda: T) -> T {
    let n = damped.len().saturating_sub(1).max(1);
    let x = (T::of(2.0) * lambda / norm - T::one()).max(-T::one()).min(T::one());
    let shift = T::of(SHIFT_WIDTHS) * T::PI() / T::of_usize(n);
    let theta = (x.acos() - shift).max(T::zero());
    let pi = T::PI();
    let mut total = damped[0] * (T::one() - theta / pi);
    for (k, m) in damped.iter().enumerate().skip(1) {
        let kk = T::of_usize(k);
        total = total - *m * T::of(2.0) * (kk * theta).sin() / (kk * pi);
    }
    total
}

/// `σ̂` on `grid` (ascending) from the damped Chebyshev moments of `summary`:
/// a Jackson-damped Chebyshev expansion of the step `1_{[0, λ]}`, its edge
/// moved up by three kernel widths, clipped to `[0, 1]` and made monotone.
pub fn cdf_from_moments<T: Scalar>(summary: &SpectralSummary<T>, grid: &[T]) -> Result<Vec<T>> {
    if summary.norm_bound <= T::zero() {
        return Err(Error::DegenerateSupport);
    }
    if summary.cheb_moments.len() < 17 {
        return Err(Error::InvalidParameter(format!(
            "need at least 16 moments, have {}",
            summary.cheb_moments.len().saturating_sub(1)
        )));
    }
    let mut running = T::zero();
    Ok(grid
        .iter()
        .map(|&l| {
            let v = smoothed_step(&summary.cheb_moments, summary.norm_bound, l).max(T::zero()).min(T::one());
            running = running.max(v);
            running
        })
        .collect())
}

/// Sampling parameters behind an estimate: the per-vertex deviation and the
/// probability of exceeding it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Confidence {
    pub deviation: f64,
    pub failure_probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BettiEstimate<T: Scalar> {
    pub dimension: usize,
    /// estimated `b^i / |K_0|`
    pub per_vertex: T,
    /// estimated `μ({0})`
    pub kernel_fraction: T,
    pub simplex_density: T,
    /// spectral cut `λ`
    pub epsilon_star: T,
    /// `log K / log(1/λ)`
    pub bound_term: T,
    pub gap_detected: bool,
    pub confidence: Option<Confidence>,
}

/// Kernel-mass estimate `σ̂(λ_cut)` with the logarithmic bound
/// `σ(λ_cut) - μ(0) <= log K / log(1/λ_cut)` reported alongside.
pub fn kernel_estimate<T: Scalar>(summary: &SpectralSummary<T>, cut: T) -> Result<BettiEstimate<T>> {
    if !(cut > T::zero() && cut < T::one()) {
        return Err(Error::InvalidCut(cut.as_f64()));
    }
    let mut grid: Vec<T> = summary.cdf_grid.iter().map(|p| p.0).filter(|l| *l < cut).collect();
    grid.push(cut);
    let kernel_fraction = *cdf_from_moments(summary, &grid)?.last().expect("grid holds the cut");
    Ok(BettiEstimate {
        dimension: summary.dimension,
        per_vertex: summary.simplex_density * kernel_fraction,
        kernel_fraction,
        simplex_density: summary.simplex_density,
        epsilon_star: cut,
        bound_term: summary.norm_bound.ln() / (T::one() / cut).ln(),
        gap_detected: false,
        confidence: None,
    })
}

/// Overrides for the budget rule of [`estimate_betti_spectral`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EstimatorConfig {
    pub moments: Option<usize>,
    pub samples: Option<usize>,
    pub cut: Option<f64>,
}

/// Budget for accuracy `eps`: the expansion degree, the sample count, and the
/// failure probability the sample count is calibrated for.
pub fn budget(eps: f64, simplex_density: f64) -> (usize, usize) {
    let degree = ((8.0 / eps).max(32.0).ceil() as usize).min(256);
    // each sample contributes a value in [0, 1]; Hoeffding at deviation
    // eps / (2 density) with failure probability eps
    let t = eps / (2.0 * simplex_density.max(f64::MIN_POSITIVE));
    let samples = ((2.0 / eps).ln() / (2.0 * t * t)).ceil() as usize;
    (degree, samples.max(1))
}

/// Moments of `Δ^i` from `samples` sampled simplices (all of them when
/// `samples >= |K_i|`) and the reconstructed distribution function.
pub fn spectral_summary<T: Scalar>(
    k: &SimplicialComplex,
    i: usize,
    degree: usize,
    samples: usize,
    seed: u64,
) -> Result<SpectralSummary<T>> {
    let population = k.count(i);
    if population == 0 {
        return Err(Error::EmptyDimension(i));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("sample count must be positive".into()));
    }
    let norm = norm_bound(&laplacian(k, i));
    let norm_t = T::of(norm as f64);
    let raw_powers = degree.min(EXACT_RAW_POWERS);
    let set = draw_samples(population, samples, seed);
    let per_sample: Vec<(Vec<BigInt>, Vec<T>)> = set
        .indices
        .par_iter()
        .map(|&idx| {
            let block = local_block(k, i, idx, degree / 2);
            (diagonal_powers(&block, raw_powers), local_chebyshev(&block, degree, norm_t))
        })
        .collect();
    let raw_exact = average(&per_sample.iter().map(|p| p.0.clone()).collect::<Vec<_>>(), raw_powers + 1);
    let raw_moments = raw_exact.iter().map(|c| T::of(c.to_f64().unwrap_or(f64::NAN))).collect();
    let mut sums = vec![FixedSum::default(); degree + 1];
    for (_, mu) in &per_sample {
        for (s, m) in sums.iter_mut().zip(mu) {
            s.add(*m);
        }
    }
    let undamped = sums.iter().map(|s| s.mean::<T>(per_sample.len())).collect();
    SpectralSummary::assemble(
        i,
        population,
        k.vertex_count(),
        norm,
        raw_moments,
        undamped,
        set.indices.len(),
        set.exhaustive,
        seed,
    )
}

/// `b^i / |K_0|` estimated as simplex density times the kernel mass of the
/// sampled spectral measure, with parameters chosen from `eps`.
pub fn estimate_betti_spectral<T: Scalar>(k: &SimplicialComplex, i: usize, eps: f64, seed: u64) -> Result<BettiEstimate<T>> {
    Ok(estimate_betti_spectral_with(k, i, eps, seed, &EstimatorConfig::default())?.1)
}

/// [`estimate_betti_spectral`] with explicit overrides; also returns the
/// underlying summary.
pub fn estimate_betti_spectral_with<T: Scalar>(
    k: &SimplicialComplex,
    i: usize,
    eps: f64,
    seed: u64,
    config: &EstimatorConfig,
) -> Result<(SpectralSummary<T>, BettiEstimate<T>)> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("accuracy must be in (0, 1), got {eps}")));
    }
    if k.count(i) == 0 {
        return Err(Error::EmptyDimension(i));
    }
    let density = k.count(i) as f64 / k.vertex_count() as f64;
    let (auto_degree, auto_samples) = budget(eps, density);
    let degree = config.moments.unwrap_or(auto_degree);
    if degree < 16 {
        return Err(Error::InvalidParameter(format!("moment degree must be at least 16, got {degree}")));
    }
    let samples = config.samples.unwrap_or(auto_samples);
    let summary = spectral_summary::<T>(k, i, degree, samples, seed)?;

    let half = T::of(0.5);
    let probe = cdf_from_moments(&summary, &[T::zero(), half])?;
    let gap = probe[1] - probe[0] <= T::of(eps / 4.0);
    let cut = match config.cut {
        Some(c) => T::of(c),
        None if gap => half,
        None => T::of(eps * eps),
    };
    let mut estimate = kernel_estimate(&summary, cut)?;
    estimate.gap_detected = gap;
    estimate.confidence = (!summary.exhaustive).then_some(Confidence { deviation: eps / 2.0, failure_probability: eps });
    Ok((summary, estimate))
}
