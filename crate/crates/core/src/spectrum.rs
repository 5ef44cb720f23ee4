//! Normalized spectral measures of small symmetric operators and the
//! quantities read off them: log-determinants, the integration-by-parts
//! identity, and the logarithmic kernel-mass bound.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::eigen::symmetric_eigenvalues;
use crate::error::{Error, Result};
use crate::exact::{charpoly, row_sum_bound};
use crate::laplacian::{norm_bound, SparseOperator};
use crate::scalar::{kernel_tolerance, Scalar};

/// Default size cap for dense spectral routines.
pub const DENSE_CAP: usize = 2000;

/// Eigenvalues of an `n x n` operator, each carrying mass `1/n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralMeasure<T: Scalar> {
    eigenvalues: Vec<T>,
    support_bound: T,
}

impl<T: Scalar> SpectralMeasure<T> {
    /// Eigenvalues are sorted; entries with `|λ| <= zero_tol` become exactly 0.
    pub fn new(mut eigenvalues: Vec<T>, support_bound: T, zero_tol: T) -> Self {
        for x in eigenvalues.iter_mut() {
            if x.abs() <= zero_tol {
                *x = T::zero();
            }
        }
        eigenvalues.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        SpectralMeasure { eigenvalues, support_bound }
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn support_bound(&self) -> T {
        self.support_bound
    }

    pub fn kernel_multiplicity(&self) -> usize {
        self.eigenvalues.iter().take_while(|x| **x <= T::zero()).filter(|x| x.is_zero()).count()
    }

    /// `μ({0})`
    pub fn kernel_mass(&self) -> T {
        self.mass(self.kernel_multiplicity())
    }

    fn mass(&self, count: usize) -> T {
        if self.n() == 0 {
            return T::zero();
        }
        T::of_usize(count) / T::of_usize(self.n())
    }

    /// Distribution function `σ(λ) = μ([0, λ])`.
    pub fn cdf(&self, lambda: T) -> T {
        self.mass(self.eigenvalues.partition_point(|x| *x <= lambda))
    }

    /// Distinct eigenvalues (merged when within `tol`) with their masses.
    pub fn atoms(&self, tol: T) -> Vec<(T, T)> {
        let mut groups: Vec<(T, usize)> = Vec::new();
        for &x in &self.eigenvalues {
            match groups.last_mut() {
                Some((v, c)) if (x - *v).abs() <= tol => *c += 1,
                _ => groups.push((x, 1)),
            }
        }
        groups.into_iter().map(|(v, c)| (v, self.mass(c))).collect()
    }

    /// `(1/n) Σ_{0<λ<=K} log(K/λ)`; the logarithmic bound says this is at most `log K`.
    pub fn log_kernel_sum(&self) -> T {
        let k = self.support_bound;
        let n = T::of_usize(self.n().max(1));
        self.eigenvalues
            .iter()
            .filter(|x| **x > T::zero() && **x <= k)
            .map(|x| (k / *x).ln())
            .sum::<T>()
            / n
    }
}

/// All eigenvalues of a symmetric operator with up to `cap` rows.
pub fn exact_spectrum_capped<T: Scalar>(a: &SparseOperator, cap: usize) -> Result<SpectralMeasure<T>> {
    let n = a.rows();
    if n > cap {
        return Err(Error::TooLarge { size: n, cap });
    }
    if !a.is_symmetric() {
        return Err(Error::InvalidParameter("operator is not symmetric".into()));
    }
    let dense: Vec<Vec<T>> = a
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(|v| T::of(v as f64)).collect())
        .collect();
    let k = T::of(norm_bound(a) as f64);
    Ok(SpectralMeasure::new(symmetric_eigenvalues(dense), k, kernel_tolerance(k, n)))
}

/// [`exact_spectrum_capped`] at [`DENSE_CAP`].
pub fn exact_spectrum<T: Scalar>(a: &SparseOperator) -> Result<SpectralMeasure<T>> {
    exact_spectrum_capped(a, DENSE_CAP)
}

/// `|q(0)|` where the characteristic polynomial factors as `t^s q(t)` with
/// `q(0) != 0`: the absolute product of the nonzero eigenvalues. 1 for the zero
/// matrix.
pub fn pseudo_determinant(a: &SparseOperator) -> Result<BigInt> {
    let n = a.rows();
    if n > DENSE_CAP {
        return Err(Error::TooLarge { size: n, cap: DENSE_CAP });
    }
    let dense = a.to_dense();
    let coeffs = charpoly(&dense, norm_bound(a).min(row_sum_bound(&dense)));
    let lowest = coeffs.into_iter().find(|c| !c.is_zero()).expect("leading coefficient is 1");
    Ok(lowest.abs())
}

/// Natural logarithm of a positive integer of any size.
pub fn ln_big(x: &BigInt) -> f64 {
    let shift = x.bits().saturating_sub(60);
    let top = (x >> shift).to_f64().expect("60-bit integer fits in f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `c(μ) = (1/n) Σ_{λ>0} log λ`.
pub fn log_determinant_c<T: Scalar>(m: &SpectralMeasure<T>) -> T {
    let n = T::of_usize(m.n().max(1));
    m.eigenvalues().iter().filter(|x| **x > T::zero()).map(|x| x.ln()).sum::<T>() / n
}

/// Both sides of `∫_ε^K f dμ = -∫_ε^K f'(λ) F(λ) dλ + f(K)F(K) - f(ε)F(ε)`.
///
/// The left side sums `f(λ_j)/n` over eigenvalues in `(ε, K]`. The right side
/// integrates `f'` numerically on each interval where `F` is constant.
pub fn stieltjes_check<T, F, D>(f: F, df: D, m: &SpectralMeasure<T>, eps: T) -> (T, T)
where
    T: Scalar,
    F: Fn(T) -> T,
    D: Fn(T) -> T,
{
    let k = m.support_bound();
    let n = T::of_usize(m.n().max(1));
    let inside: Vec<T> = m.eigenvalues().iter().copied().filter(|x| *x > eps && *x <= k).collect();
    let lhs = inside.iter().map(|x| f(*x)).sum::<T>() / n;

    let mut breaks = vec![eps];
    breaks.extend(inside.iter().copied().filter(|x| *x < k));
    breaks.push(k);
    breaks.dedup();
    let tol = T::of(1e-12).max(T::epsilon() * T::of(64.0));
    let mut integral = T::zero();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        // F is constant on [a, b); its value just right of a
        let level = m.cdf(a);
        if level.is_zero() {
            continue;
        }
        integral = integral + level * adaptive_simpson(&df, a, b, tol);
    }
    let rhs = -integral + f(k) * m.cdf(k) - f(eps) * m.cdf(eps);
    (lhs, rhs)
}

/// Adaptive Simpson quadrature of `g` on `[a, b]`.
pub fn adaptive_simpson<T: Scalar>(g: &impl Fn(T) -> T, a: T, b: T, tol: T) -> T {
    let two = T::of(2.0);
    let six = T::of(6.0);
    let (fa, fb) = (g(a), g(b));
    let m = (a + b) / two;
    let fm = g(m);
    let whole = (b - a) / six * (fa + T::of(4.0) * fm + fb);
    simpson_step(g, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<T: Scalar>(g: &impl Fn(T) -> T, a: T, b: T, fa: T, fm: T, fb: T, whole: T, tol: T, depth: u32) -> T {
    let two = T::of(2.0);
    let six = T::of(6.0);
    let four = T::of(4.0);
    let m = (a + b) / two;
    let (lm, rm) = ((a + m) / two, (m + b) / two);
    let (flm, frm) = (g(lm), g(rm));
    let left = (m - a) / six * (fa + four * flm + fm);
    let right = (b - m) / six * (fm + four * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= T::of(15.0) * tol {
        return left + right + delta / T::of(15.0);
    }
    simpson_step(g, a, m, fa, flm, fm, left, tol / two, depth - 1)
        + simpson_step(g, m, b, fm, frm, fb, right, tol / two, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::laplacian::laplacian;

    fn hollow_l1() -> SparseOperator {
        let k = build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]], 2).unwrap();
        laplacian(&k, 1)
    }

    fn edge_l0() -> SparseOperator {
        laplacian(&build_complex(&[vec![0, 1]], 1).unwrap(), 0)
    }

    #[test]
    fn spectra_of_examples() {
        let m = exact_spectrum::<f64>(&edge_l0()).unwrap();
        assert_eq!(m.atoms(1e-9).len(), 2);
        assert_eq!(m.eigenvalues()[0], 0.0);
        assert!((m.eigenvalues()[1] - 2.0).abs() < 1e-12);
        assert_eq!(m.kernel_mass(), 0.5);

        let d = exact_spectrum::<f64>(&SparseOperator::diagonal(&[5; 7])).unwrap();
        let atoms = d.atoms(1e-9);
        assert_eq!(atoms.len(), 1);
        assert!((atoms[0].0 - 5.0).abs() < 1e-12 && (atoms[0].1 - 1.0).abs() < 1e-15);

        let h = exact_spectrum::<f64>(&hollow_l1()).unwrap();
        let atoms = h.atoms(1e-9);
        assert_eq!(atoms.len(), 2);
        assert_eq!(atoms[0].0, 0.0);
        assert!((atoms[0].1 - 1.0 / 3.0).abs() < 1e-12);
        assert!((atoms[1].0 - 3.0).abs() < 1e-12);
    }

    #[test]
    fn size_cap() {
        let big = SparseOperator::identity(5);
        assert_eq!(exact_spectrum_capped::<f64>(&big, 4).unwrap_err(), Error::TooLarge { size: 5, cap: 4 });
    }

    #[test]
    fn pseudo_determinants() {
        assert_eq!(pseudo_determinant(&edge_l0()).unwrap(), BigInt::from(2));
        assert_eq!(pseudo_determinant(&SparseOperator::identity(6)).unwrap(), BigInt::from(1));
        assert_eq!(pseudo_determinant(&SparseOperator::zero(4, 4)).unwrap(), BigInt::from(1));
        assert_eq!(pseudo_determinant(&hollow_l1()).unwrap(), BigInt::from(9));
    }

    #[test]
    fn log_determinants() {
        let e = exact_spectrum::<f64>(&edge_l0()).unwrap();
        assert!((log_determinant_c(&e) - 0.5 * 2f64.ln()).abs() < 1e-12);
        let i = exact_spectrum::<f64>(&SparseOperator::identity(3)).unwrap();
        assert_eq!(log_determinant_c(&i), 0.0);
        let h = exact_spectrum::<f64>(&hollow_l1()).unwrap();
        assert!((log_determinant_c(&h) - 2.0 / 3.0 * 3f64.ln()).abs() < 1e-12);
        let pdet = pseudo_determinant(&hollow_l1()).unwrap();
        assert!((ln_big(&pdet) / 3.0 - log_determinant_c(&h)).abs() < 1e-12);
        let huge = BigInt::from(3).pow(500);
        assert!((ln_big(&huge) - 500.0 * 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn integration_by_parts() {
        let e = exact_spectrum::<f64>(&edge_l0()).unwrap();
        let (l, r) = stieltjes_check(|_| 1.0, |_| 0.0, &e, 1.0);
        assert!((l - 0.5).abs() < 1e-12 && (r - 0.5).abs() < 1e-12);
        let (l, r) = stieltjes_check(|x| x, |_| 1.0, &e, 1.0);
        assert!((l - 1.0).abs() < 1e-12 && (r - 1.0).abs() < 1e-9);
        let h = exact_spectrum::<f64>(&hollow_l1()).unwrap();
        let (l, r) = stieltjes_check(|x: f64| x.ln(), |x| 1.0 / x, &h, 1e-3);
        assert!((l - log_determinant_c(&h)).abs() < 1e-12);
        assert!((l - r).abs() < 1e-8, "{l} vs {r}");
    }

    #[test]
    fn logarithmic_kernel_bound_on_examples() {
        for op in [edge_l0(), hollow_l1()] {
            let m = exact_spectrum::<f64>(&op).unwrap();
            let k = m.support_bound();
            assert!(m.log_kernel_sum() <= k.ln());
        }
    }

    #[test]
    fn single_precision_spectrum() {
        let h = exact_spectrum::<f32>(&hollow_l1()).unwrap();
        assert_eq!(h.kernel_multiplicity(), 1);
        assert!((h.eigenvalues()[2] - 3.0).abs() < 1e-5);
    }
}
