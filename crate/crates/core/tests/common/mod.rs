//! Fixtures and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use betti_scope::{generate, FamilySpec, SimplicialComplex, SparseOperator};

/// `m` disjoint copies of `k`.
pub fn copies(k: &SimplicialComplex, m: usize) -> SimplicialComplex {
    (1..m).fold(k.clone(), |acc, _| acc.disjoint_union(k))
}

pub fn hollow_triangle() -> SimplicialComplex {
    generate(&FamilySpec::cycle(3)).unwrap()
}

pub fn solid_triangle() -> SimplicialComplex {
    generate(&FamilySpec::simplex(2)).unwrap()
}

/// A fixed mix of small named families followed by seeded flag complexes of
/// varying size and degree bound, `count` in total.
pub fn zoo(count: usize) -> Vec<(String, SimplicialComplex)> {
    let fixed = [
        FamilySpec::cycle(3),
        FamilySpec::simplex(2),
        FamilySpec::simplex(3),
        FamilySpec::sphere(2),
        FamilySpec::sphere(3),
        FamilySpec::torus(3),
        FamilySpec::torus(4),
        FamilySpec::path(5),
        FamilySpec::cycle(6),
        FamilySpec::union(FamilySpec::cycle(3), 3),
        FamilySpec::union(FamilySpec::simplex(2), 2),
        FamilySpec::union(FamilySpec::sphere(2), 2),
    ];
    let mut out: Vec<(String, SimplicialComplex)> = fixed
        .iter()
        .map(|s| (format!("{s:?}"), generate(s).unwrap()))
        .collect();
    let mut j = 0u64;
    while out.len() < count {
        let n = 6 + (j as usize * 7) % 24;
        let d = 2 + (j as usize % 4);
        let spec = FamilySpec::random_flag(n, d, 1000 + j);
        out.push((format!("random_flag(n={n}, d={d}, seed={})", 1000 + j), generate(&spec).unwrap()));
        j += 1;
    }
    out.truncate(count);
    out
}

pub fn dense_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0i128; m]; n];
    for i in 0..n {
        for (k, &x) in a[i].iter().enumerate() {
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[k][j];
            }
        }
    }
    out
}

pub fn dense_i128(a: &SparseOperator) -> Vec<Vec<i128>> {
    a.to_dense().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect()
}

/// `A^0, A^1, ..., A^r_max` by repeated dense multiplication.
pub fn dense_powers(a: &SparseOperator, r_max: usize) -> Vec<Vec<Vec<i128>>> {
    let n = a.rows();
    let base = dense_i128(a);
    let mut id = vec![vec![0i128; n]; n];
    for (i, row) in id.iter_mut().enumerate() {
        row[i] = 1;
    }
    let mut out = vec![id];
    for _ in 0..r_max {
        let next = dense_mul(out.last().unwrap(), &base);
        out.push(next);
    }
    out
}
