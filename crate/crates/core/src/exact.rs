//! Exact integer linear algebra: rank over the rationals, characteristic
//! polynomials, and positive semidefiniteness.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

/// Integer ring used by the sparse eliminator. `i64` reports overflow so the
/// caller can retry with `BigInt`.
trait RankInt: Clone + PartialEq + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
    fn from_i64(v: i64) -> Self;
}

impl RankInt for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl RankInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

type SparseRow<I> = Vec<(usize, I)>;

/// `x * row - y * pivot`, dropping zeros; columns stay sorted.
fn combine<I: RankInt>(row: &SparseRow<I>, x: &I, pivot: &SparseRow<I>, y: &I) -> Option<SparseRow<I>> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    let zero = I::zero();
    while a < row.len() || b < pivot.len() {
        let ca = row.get(a).map_or(usize::MAX, |e| e.0);
        let cb = pivot.get(b).map_or(usize::MAX, |e| e.0);
        let (col, va, vb) = if ca < cb {
            a += 1;
            (ca, &row[a - 1].1, &zero)
        } else if cb < ca {
            b += 1;
            (cb, &zero, &pivot[b - 1].1)
        } else {
            a += 1;
            b += 1;
            (ca, &row[a - 1].1, &pivot[b - 1].1)
        };
        let v = I::mul_sub(x, va, y, vb)?;
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    Some(out)
}

fn content_reduce<I: RankInt>(row: &mut SparseRow<I>) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.gcd(&first.1);
    for (_, v) in row.iter().skip(1) {
        if g.is_unit() {
            return;
        }
        g = g.gcd(v);
    }
    if !g.is_unit() && !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

fn sparse_rank_in<I: RankInt>(rows: &[SparseRow<i64>]) -> Option<usize> {
    let mut pivots: BTreeMap<usize, SparseRow<I>> = BTreeMap::new();
    for r in rows {
        let mut row: SparseRow<I> = r.iter().filter(|e| e.1 != 0).map(|(c, v)| (*c, I::from_i64(*v))).collect();
        row.sort_by_key(|e| e.0);
        while let Some((lead, lead_val)) = row.first().cloned() {
            let Some(p) = pivots.get(&lead) else {
                break;
            };
            // fraction-free: p_lead * row - row_lead * p
            row = combine(&row, &p[0].1, p, &lead_val)?;
            content_reduce(&mut row);
        }
        if let Some(&(lead, _)) = row.first() {
            pivots.insert(lead, row);
        }
    }
    Some(pivots.len())
}

/// Rank over the rationals of a sparse integer matrix given by rows of
/// `(column, value)` pairs, by fraction-free elimination.
pub fn sparse_rank(rows: &[Vec<(usize, i64)>]) -> usize {
    sparse_rank_in::<i64>(rows).unwrap_or_else(|| sparse_rank_in::<BigInt>(rows).expect("BigInt never overflows"))
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `floor(u 2^64 / p)` for [`shoup_mul`].
fn shoup_precompute(u: u64, p: u64) -> u64 {
    (((u as u128) << 64) / p as u128) as u64
}

/// `u y mod p` for `u, y < p < 2^63` without a division.
fn shoup_mul(u: u64, u_pre: u64, y: u64, p: u64) -> u64 {
    let q = ((u_pre as u128 * y as u128) >> 64) as u64;
    let r = u.wrapping_mul(y).wrapping_sub(q.wrapping_mul(p));
    if r >= p {
        r - p
    } else {
        r
    }
}

/// Characteristic polynomial `det(tI - A)` modulo `p`, coefficients from the
/// constant term upward, via Hessenberg reduction.
fn charpoly_mod(a: &[Vec<i64>], p: u64) -> Vec<u64> {
    let n = a.len();
    // p < 2^31 keeps every product inside u64
    let mulm = |x: u64, y: u64| x * y % p;
    let mut h: Vec<Vec<u64>> = a
        .iter()
        .map(|row| row.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect())
        .collect();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = mod_pow(h[m][m - 1], p - 2, p);
        // the elementary similarities for all i commute, so apply every row
        // update from the original row m, then the column updates at once
        let u: Vec<u64> = (m + 1..n).map(|i| mulm(h[i][m - 1], inv)).collect();
        let (top, rest) = h.split_at_mut(m + 1);
        let pivot = &top[m][m - 1..];
        for (row, &ui) in rest.iter_mut().zip(&u) {
            if ui != 0 {
                let neg = p - ui;
                let neg_pre = shoup_precompute(neg, p);
                for (x, &y) in row[m - 1..].iter_mut().zip(pivot) {
                    let t = *x + shoup_mul(neg, neg_pre, y, p);
                    *x = if t >= p { t - p } else { t };
                }
            }
        }
        for row in h.iter_mut() {
            // products stay below 2^62, so a u128 sum cannot overflow
            let acc: u128 = row[m + 1..].iter().zip(&u).map(|(&x, &ui)| (ui * x) as u128).sum();
            row[m] = ((row[m] as u128 + acc) % p as u128) as u64;
        }
    }
    // polys[m] is the characteristic polynomial of the leading m x m block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        // terms below 2^62, at most m + 1 of them per coefficient
        let mut acc = vec![0u128; m + 1];
        let neg_diag = (p - h[m - 1][m - 1]) % p;
        for (k, &c) in polys[m - 1].iter().enumerate() {
            acc[k + 1] += c as u128;
            acc[k] += (neg_diag * c) as u128;
        }
        let mut t = 1u64;
        for i in (1..m).rev() {
            t = mulm(t, h[i][i - 1]);
            let coef = mulm(h[i - 1][m - 1], t);
            if coef == 0 {
                continue;
            }
            let neg = p - coef;
            for (a, &c) in acc.iter_mut().zip(&polys[i - 1]) {
                *a += (neg * c) as u128;
            }
        }
        polys.push(acc.into_iter().map(|a| (a % p as u128) as u64).collect());
    }
    polys.pop().expect("at least the constant polynomial")
}

/// Exact characteristic polynomial of an integer matrix whose eigenvalues lie
/// in `[-spectral_bound, spectral_bound]`, coefficients from the constant term
/// upward. Computed modulo enough 31-bit primes to cover a bound on the
/// coefficients and lifted by Chinese remaindering.
pub fn charpoly(a: &[Vec<i64>], spectral_bound: u64) -> Vec<BigInt> {
    let n = a.len();
    // |coefficients| <= prod (1 + |λ|), bounded through the spectral radius or,
    // via sum |λ| <= sqrt(n) ||A||_F and AM-GM, through the Frobenius norm
    let frobenius = a.iter().flatten().map(|&v| (v as f64) * (v as f64)).sum::<f64>().sqrt();
    let per_root = ((1 + spectral_bound) as f64).min(1.0 + frobenius / (n.max(1) as f64).sqrt() + 1e-9);
    let bound_bits = (n as f64) * per_root.log2() + 2.0;
    let mut primes = Vec::new();
    let mut candidate = (1u64 << 31) - 1;
    let mut bits = 0.0;
    while bits < bound_bits {
        while !is_prime(candidate) {
            candidate -= 2;
        }
        primes.push(candidate);
        bits += (candidate as f64).log2() - 1e-6;
        candidate -= 2;
    }
    let residues: Vec<Vec<u64>> = primes.par_iter().map(|&p| charpoly_mod(a, p)).collect();
    let mut modulus = BigInt::one();
    let mut coeffs: Vec<BigInt> = vec![<BigInt as Zero>::zero(); n + 1];
    for (&p, res) in primes.iter().zip(residues) {
        let pb = BigInt::from(p);
        // combine x = coeffs (mod modulus) with residues (mod p)
        let m_mod_p = (&modulus % &pb).to_u64_digits().1.first().copied().unwrap_or(0);
        let inv = mod_pow(m_mod_p, p - 2, p);
        for (c, r) in coeffs.iter_mut().zip(res) {
            let c_mod_p = c.mod_floor(&pb).to_u64_digits().1.first().copied().unwrap_or(0);
            let diff = (r + p - c_mod_p) % p;
            let k = diff * inv % p;
            *c += &modulus * BigInt::from(k);
        }
        modulus *= &pb;
    }
    let half = &modulus / 2;
    for c in coeffs.iter_mut() {
        if *c > half {
            *c -= &modulus;
        }
    }
    coeffs
}

/// Exact positive-semidefiniteness of a symmetric integer matrix by
/// symmetric Gaussian elimination over the rationals.
pub fn is_psd(a: &[Vec<i64>]) -> bool {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|row| row.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    let mut alive: Vec<bool> = vec![true; n];
    for _ in 0..n {
        let Some(k) = (0..n).find(|&k| alive[k] && !m[k][k].is_zero()) else {
            // every remaining diagonal entry is zero: PSD only if the block vanishes
            return (0..n).all(|i| !alive[i] || (0..n).all(|j| !alive[j] || m[i][j].is_zero()));
        };
        if m[k][k].is_negative() {
            return false;
        }
        alive[k] = false;
        let pivot = m[k][k].clone();
        let pivot_row = m[k].clone();
        for i in 0..n {
            if !alive[i] || m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for j in 0..n {
                if alive[j] && !pivot_row[j].is_zero() {
                    let t = &f * &pivot_row[j];
                    m[i][j] -= t;
                }
            }
        }
    }
    true
}

/// Whether a real-rooted polynomial (constant term first) has only
/// non-negative roots: its coefficients alternate in sign. Applied to the
/// characteristic polynomial of a symmetric matrix this decides
/// positive-semidefiniteness.
pub fn roots_nonnegative(coeffs: &[BigInt]) -> bool {
    let n = coeffs.len().saturating_sub(1);
    coeffs.iter().enumerate().all(|(k, c)| {
        if (n - k) % 2 == 0 {
            !c.is_negative()
        } else {
            !c.is_positive()
        }
    })
}

/// Largest absolute row sum, a bound on the spectral radius.
pub fn row_sum_bound(a: &[Vec<i64>]) -> u64 {
    a.iter().map(|row| row.iter().map(|v| v.unsigned_abs()).sum::<u64>()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        let rows = vec![vec![(0, 1), (1, -1)], vec![(1, 1), (2, -1)], vec![(0, 1), (2, -1)]];
        assert_eq!(sparse_rank(&rows), 2);
        assert_eq!(sparse_rank(&[]), 0);
        assert_eq!(sparse_rank(&[vec![(3, 0)]]), 0);
        let rows = vec![vec![(0, 2), (1, 4)], vec![(0, 3), (1, 5)]];
        assert_eq!(sparse_rank(&rows), 2);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let rows = vec![vec![(0, big), (1, 3)], vec![(0, 3), (1, big)], vec![(0, big - 1), (1, big)]];
        assert_eq!(sparse_rank(&rows), 2);
    }

    #[test]
    fn charpoly_of_edge_laplacian() {
        let a = vec![vec![1, -1], vec![-1, 1]];
        let p = charpoly(&a, 4);
        assert_eq!(p, vec![BigInt::from(0), BigInt::from(-2), BigInt::from(1)]);
    }

    #[test]
    fn charpoly_of_triangle_cycle_laplacian() {
        // eigenvalues 0, 3, 3: t^3 - 6t^2 + 9t
        let a = vec![vec![2, -1, 1], vec![-1, 2, 1], vec![1, 1, 2]];
        let p: Vec<i64> = charpoly(&a, 12).iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(p, vec![0, 9, -6, 1]);
    }

    #[test]
    fn charpoly_needs_several_primes() {
        // diag(7)^20: constant term 7^20 > 2^56, bound forces two primes
        let n = 20;
        let a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 7 } else { 0 }).collect()).collect();
        let p = charpoly(&a, 7);
        assert_eq!(p[0], BigInt::from(7).pow(20));
        assert_eq!(p[n], BigInt::one());
    }

    #[test]
    fn psd_detection() {
        assert!(is_psd(&[vec![1, -1], vec![-1, 1]]));
        assert!(is_psd(&[vec![0, 0], vec![0, 0]]));
        assert!(!is_psd(&[vec![1, 2], vec![2, 1]]));
        assert!(!is_psd(&[vec![0, 1], vec![1, 0]]));
        assert!(!is_psd(&[vec![-1]]));
    }

    #[test]
    fn charpoly_sign_test_agrees_with_elimination() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![1, -1], vec![-1, 1]],
            vec![vec![1, 2], vec![2, 1]],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![2, -1, 1], vec![-1, 2, 1], vec![1, 1, 2]],
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            vec![vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 0]],
            vec![vec![0; 3]; 3],
        ];
        for a in cases {
            let cp = charpoly(&a, row_sum_bound(&a));
            assert_eq!(roots_nonnegative(&cp), is_psd(&a), "{a:?}");
        }
    }
}
