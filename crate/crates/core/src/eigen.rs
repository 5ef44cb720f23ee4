//! Dense symmetric eigenvalues: Householder tridiagonalization followed by
//! implicit QL iterations. Eigenvalues only.

use crate::scalar::Scalar;

/// Eigenvalues of a dense symmetric matrix (row-major, `n x n`), ascending.
pub fn symmetric_eigenvalues<T: Scalar>(mut a: Vec<Vec<T>>) -> Vec<T> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let (mut d, mut e) = tridiagonalize(&mut a);
    tridiagonal_ql(&mut d, &mut e);
    d.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    d
}

/// Reduces `a` in place; returns the diagonal and the sub-diagonal (with a
/// trailing zero).
fn tridiagonalize<T: Scalar>(a: &mut [Vec<T>]) -> (Vec<T>, Vec<T>) {
    let n = a.len();
    let two = T::of(2.0);
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| a[i][k] * a[i][k]).sum::<T>().sqrt();
        d[k] = a[k][k];
        if norm == T::zero() {
            e[k] = T::zero();
            continue;
        }
        let alpha = if a[k + 1][k] > T::zero() { -norm } else { norm };
        let mut v: Vec<T> = (k + 1..n).map(|i| a[i][k]).collect();
        v[0] = v[0] - alpha;
        let vnorm = v.iter().map(|x| *x * *x).sum::<T>().sqrt();
        e[k] = alpha;
        if vnorm == T::zero() {
            continue;
        }
        for x in v.iter_mut() {
            *x = *x / vnorm;
        }
        let m = n - k - 1;
        let p: Vec<T> = (0..m)
            .map(|i| (0..m).map(|j| a[k + 1 + i][k + 1 + j] * v[j]).sum())
            .collect();
        let kk: T = (0..m).map(|i| v[i] * p[i]).sum();
        let w: Vec<T> = (0..m).map(|i| p[i] - kk * v[i]).collect();
        for i in 0..m {
            for j in 0..m {
                let upd = two * (v[i] * w[j] + w[i] * v[j]);
                a[k + 1 + i][k + 1 + j] = a[k + 1 + i][k + 1 + j] - upd;
            }
        }
        a[k + 1][k] = alpha;
        for i in k + 2..n {
            a[i][k] = T::zero();
        }
    }
    if n >= 2 {
        d[n - 2] = a[n - 2][n - 2];
        e[n - 2] = a[n - 1][n - 2];
    }
    d[n - 1] = a[n - 1][n - 1];
    e[n - 1] = T::zero();
    (d, e)
}

fn tridiagonal_ql<T: Scalar>(d: &mut [T], e: &mut [T]) {
    let n = d.len();
    let eps = T::epsilon();
    let two = T::of(2.0);
    let mut f = T::zero();
    let mut tst1 = T::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            for _ in 0..(64 * n).max(64) {
                let g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di = *di - h;
                }
                f = f + h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = T::zero();
    }
}
