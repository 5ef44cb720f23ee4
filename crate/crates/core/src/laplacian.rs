//! Coboundary operators and combinatorial Laplacians as sparse integer
//! matrices, plus exact Betti numbers.
//!
//! Rows and columns are indexed by the dense simplex indices of the
//! complex (lexicographic order within each dimension).

use std::fmt::Write as _;

use crate::ball::{simplex_ball_indices, vertex_ball_indices};
use crate::complex::{Simplex, SimplicialComplex};
use crate::exact::sparse_rank;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    /// `d_q`: `|K_{q+1}| x |K_q|`
    Coboundary { q: usize },
    /// `Δ^i`: `|K_i| x |K_i|`
    Laplacian { i: usize },
    General,
}

/// Integer matrix in compressed-row form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseOperator {
    kind: OperatorKind,
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<i64>,
}

impl SparseOperator {
    /// Builds from per-row `(column, value)` lists; zero values are dropped and
    /// columns sorted.
    pub fn from_rows(kind: OperatorKind, cols: usize, rows: Vec<Vec<(usize, i64)>>) -> Self {
        let mut row_ptr = Vec::with_capacity(rows.len() + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        let n = rows.len();
        for mut row in rows {
            row.sort_unstable_by_key(|e| e.0);
            for (c, v) in row {
                assert!(c < cols, "column {c} out of range {cols}");
                if v == 0 {
                    continue;
                }
                if col_idx.len() > *row_ptr.last().unwrap() && *col_idx.last().unwrap() == c {
                    *values.last_mut().unwrap() += v;
                    if *values.last().unwrap() == 0 {
                        values.pop();
                        col_idx.pop();
                    }
                } else {
                    col_idx.push(c);
                    values.push(v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        SparseOperator { kind, rows: n, cols, row_ptr, col_idx, values }
    }

    pub fn from_dense(a: &[Vec<i64>]) -> Self {
        let cols = a.first().map_or(0, |r| r.len());
        let rows = a
            .iter()
            .map(|r| r.iter().copied().enumerate().filter(|e| e.1 != 0).collect())
            .collect();
        Self::from_rows(OperatorKind::General, cols, rows)
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let rows = entries.iter().enumerate().map(|(i, &v)| vec![(i, v)]).collect();
        Self::from_rows(OperatorKind::General, entries.len(), rows)
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1; n])
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::from_rows(OperatorKind::General, cols, vec![Vec::new(); rows])
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Nonzero `(column, value)` pairs of row `r`, by increasing column.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.col_idx[span.clone()].iter().copied().zip(self.values[span].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        match self.col_idx[span.clone()].binary_search(&c) {
            Ok(k) => self.values[span.start + k],
            Err(_) => 0,
        }
    }

    pub fn row_lists(&self) -> Vec<Vec<(usize, i64)>> {
        (0..self.rows).map(|r| self.row(r).collect()).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in self.row(r) {
                row[c] = v;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.cols];
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                rows[c].push((r, v));
            }
        }
        Self::from_rows(OperatorKind::General, self.rows, rows)
    }

    /// Exact product `self * other`.
    pub fn mul(&self, other: &SparseOperator) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let rows = (0..self.rows)
            .map(|r| {
                let mut acc: std::collections::BTreeMap<usize, i64> = Default::default();
                for (k, a) in self.row(r) {
                    for (c, b) in other.row(k) {
                        *acc.entry(c).or_default() += a * b;
                    }
                }
                acc.into_iter().collect()
            })
            .collect();
        Self::from_rows(OperatorKind::General, other.cols, rows)
    }

    pub fn add(&self, other: &SparseOperator) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        let rows = (0..self.rows).map(|r| self.row(r).chain(other.row(r)).collect()).collect();
        Self::from_rows(OperatorKind::General, self.cols, rows)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| self.row(r).all(|(c, v)| self.get(c, r) == v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_abs_entry(&self) -> u64 {
        self.values.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    /// Largest number of nonzeros in any row or column.
    pub fn max_line_nonzeros(&self) -> usize {
        let mut per_col = vec![0usize; self.cols];
        for &c in &self.col_idx {
            per_col[c] += 1;
        }
        let row_max = (0..self.rows).map(|r| self.row_ptr[r + 1] - self.row_ptr[r]).max().unwrap_or(0);
        row_max.max(per_col.into_iter().max().unwrap_or(0))
    }

    /// Coordinate-triplet text: header `% rows cols nnz`, then `i j value`
    /// per nonzero (zero-based).
    pub fn to_triplets(&self) -> String {
        let mut out = format!("% {} {} {}\n", self.rows, self.cols, self.nnz());
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                let _ = writeln!(out, "{r} {c} {v}");
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        sparse_rank(&self.row_lists())
    }
}

/// `‖A‖ <= 2 L M` with `L` the largest row/column nonzero count and `M` the
/// largest absolute entry; floored at 1.
pub fn norm_bound(a: &SparseOperator) -> u64 {
    (2 * a.max_line_nonzeros() as u64 * a.max_abs_entry()).max(1)
}

/// Position of the vertex of `coface` missing from `face`.
fn omitted_position(coface: &Simplex, face: &Simplex) -> usize {
    let (c, f) = (coface.vertices(), face.vertices());
    (0..f.len()).find(|&j| c[j] != f[j]).unwrap_or(f.len())
}

/// Row of `d_q` for the `(q+1)`-simplex with dense index `t`.
fn coboundary_row(k: &SimplicialComplex, q: usize, t: usize) -> Vec<(usize, i64)> {
    let s = &k.simplices(q + 1)[t];
    s.facets()
        .map(|(j, face)| {
            let col = k.index_of(&face).expect("complex is face-closed");
            (col, k.incidence(s, j, &face))
        })
        .collect()
}

/// Matrix of `d_q` from `q`-cochains to `(q+1)`-cochains. Empty (zero rows)
/// when `q` is at or above the top dimension.
pub fn coboundary(k: &SimplicialComplex, q: usize) -> SparseOperator {
    let rows = (0..k.count(q + 1)).map(|t| coboundary_row(k, q, t)).collect();
    SparseOperator::from_rows(OperatorKind::Coboundary { q }, k.count(q), rows)
}

/// Row `idx` of `Δ^i = d_{i-1} d_{i-1}^* + d_i^* d_i`, computed from the faces
/// and cofaces of a single simplex.
pub(crate) fn laplacian_row(k: &SimplicialComplex, i: usize, idx: usize) -> Vec<(usize, i64)> {
    let sigma = &k.simplices(i)[idx];
    let mut row: Vec<(usize, i64)> = Vec::new();
    // down part: shared facets
    for (j, face) in sigma.facets() {
        let a = k.incidence(sigma, j, &face);
        for tau in k.cofaces(&face) {
            let t = &k.simplices(i)[tau];
            row.push((tau, a * k.incidence(t, omitted_position(t, &face), &face)));
        }
    }
    // up part: shared cofaces
    for eta in k.cofaces(sigma) {
        let e = &k.simplices(i + 1)[eta];
        let a = k.incidence(e, omitted_position(e, sigma), sigma);
        for (j, face) in e.facets() {
            let tau = k.index_of(&face).expect("complex is face-closed");
            row.push((tau, a * k.incidence(e, j, &face)));
        }
    }
    row.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// `Δ^i` on `i`-cochains; for `i = 0` the down part is absent.
pub fn laplacian(k: &SimplicialComplex, i: usize) -> SparseOperator {
    let rows = (0..k.count(i)).map(|t| laplacian_row(k, i, t)).collect();
    SparseOperator::from_rows(OperatorKind::Laplacian { i }, k.count(i), rows)
}

/// `Δ^i` assembled as explicit coboundary products, for cross-checking.
pub fn laplacian_from_coboundaries(k: &SimplicialComplex, i: usize) -> SparseOperator {
    let up = coboundary(k, i);
    let mut sum = up.transpose().mul(&up);
    if i > 0 {
        let down = coboundary(k, i - 1);
        sum = sum.add(&down.mul(&down.transpose()));
    }
    SparseOperator { kind: OperatorKind::Laplacian { i }, ..sum }
}

/// Principal block of `Δ^i` on the simplices near one root.
///
/// Holds the dense indices of the block (root first) and the block rows in
/// local coordinates.
#[derive(Clone, Debug)]
pub(crate) struct LocalBlock {
    #[allow(dead_code)]
    pub indices: Vec<usize>,
    pub rows: Vec<Vec<(usize, i64)>>,
}

/// Block of `Δ^i` on the `i`-simplices within `radius` steps of simplex
/// `root`, where a step joins two simplices on which `Δ^i` can be nonzero:
/// sharing a vertex for `i >= 1`, sharing an edge for `i = 0`.
pub(crate) fn local_block(k: &SimplicialComplex, i: usize, root: usize, radius: usize) -> LocalBlock {
    let indices = if i == 0 {
        let mut v = vertex_ball_indices(k, root, radius);
        let pos = v.iter().position(|&x| x == root).expect("root is in its own ball");
        v.swap(0, pos);
        v
    } else {
        simplex_ball_indices(k, i, root, radius)
    };
    let local: std::collections::HashMap<usize, usize> =
        indices.iter().enumerate().map(|(l, &g)| (g, l)).collect();
    let rows = indices
        .iter()
        .map(|&g| {
            laplacian_row(k, i, g)
                .into_iter()
                .filter_map(|(c, v)| local.get(&c).map(|&l| (l, v)))
                .collect()
        })
        .collect();
    LocalBlock { indices, rows }
}

/// Real Betti numbers `b^i = |K_i| - rank d_i - rank d_{i-1}` for
/// `0 <= i <= dim K`, with ranks computed exactly.
pub fn betti_exact(k: &SimplicialComplex) -> Vec<usize> {
    let Some(top) = k.dimension() else {
        return Vec::new();
    };
    let ranks: Vec<usize> = (0..top).map(|q| coboundary(k, q).rank()).collect();
    (0..=top)
        .map(|i| {
            let below = if i > 0 { ranks[i - 1] } else { 0 };
            let above = ranks.get(i).copied().unwrap_or(0);
            k.count(i) - below - above
        })
        .collect()
}

/// `dim Ker Δ^i`, by exact rank of the Laplacian.
pub fn laplacian_kernel_dim(k: &SimplicialComplex, i: usize) -> usize {
    let lap = laplacian(k, i);
    lap.rows() - lap.rank()
}
