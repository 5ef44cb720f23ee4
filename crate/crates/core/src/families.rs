//! Deterministic and seeded complex families.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{build_complex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyKind {
    /// `copies` disjoint copies of `base`
    DisjointUnion { base: Box<FamilySpec>, copies: usize },
    /// `n x n` torus, two triangles per square
    TorusGrid { n: usize },
    /// boundary of the `(k+1)`-simplex, a triangulated `k`-sphere
    SphereBoundary { k: usize },
    Cycle { n: usize },
    /// `n` vertices in a line
    Path { n: usize },
    /// flag complex of a seeded graph on `n` vertices with degrees at most `d`
    RandomFlag { n: usize, d: usize, seed: u64 },
    /// the full `k`-simplex
    Simplex { k: usize },
}

/// A family member: its kind and an optional degree bound overriding the
/// kind's natural one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(flatten)]
    pub kind: FamilyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<usize>,
}

impl From<FamilyKind> for FamilySpec {
    fn from(kind: FamilyKind) -> Self {
        FamilySpec { kind, degree_bound: None }
    }
}

impl FamilySpec {
    pub fn torus(n: usize) -> Self {
        FamilyKind::TorusGrid { n }.into()
    }

    pub fn sphere(k: usize) -> Self {
        FamilyKind::SphereBoundary { k }.into()
    }

    pub fn cycle(n: usize) -> Self {
        FamilyKind::Cycle { n }.into()
    }

    pub fn path(n: usize) -> Self {
        FamilyKind::Path { n }.into()
    }

    pub fn simplex(k: usize) -> Self {
        FamilyKind::Simplex { k }.into()
    }

    pub fn random_flag(n: usize, d: usize, seed: u64) -> Self {
        FamilyKind::RandomFlag { n, d, seed }.into()
    }

    pub fn union(base: FamilySpec, copies: usize) -> Self {
        FamilyKind::DisjointUnion { base: Box::new(base), copies }.into()
    }

    pub fn with_degree_bound(mut self, d: usize) -> Self {
        self.degree_bound = Some(d);
        self
    }

    /// The same family at a different size parameter (copies, `n`, or `k`).
    pub fn with_size(&self, size: usize) -> Self {
        let kind = match &self.kind {
            FamilyKind::DisjointUnion { base, .. } => FamilyKind::DisjointUnion { base: base.clone(), copies: size },
            FamilyKind::TorusGrid { .. } => FamilyKind::TorusGrid { n: size },
            FamilyKind::SphereBoundary { .. } => FamilyKind::SphereBoundary { k: size },
            FamilyKind::Cycle { .. } => FamilyKind::Cycle { n: size },
            FamilyKind::Path { .. } => FamilyKind::Path { n: size },
            FamilyKind::RandomFlag { d, seed, .. } => FamilyKind::RandomFlag { n: size, d: *d, seed: *seed },
            FamilyKind::Simplex { .. } => FamilyKind::Simplex { k: size },
        };
        FamilySpec { kind, degree_bound: self.degree_bound }
    }

    fn natural_degree_bound(&self) -> usize {
        match &self.kind {
            FamilyKind::DisjointUnion { base, .. } => base.degree_bound.unwrap_or_else(|| base.natural_degree_bound()),
            FamilyKind::TorusGrid { .. } => 6,
            FamilyKind::SphereBoundary { k } => k + 1,
            FamilyKind::Cycle { .. } | FamilyKind::Path { .. } => 2,
            FamilyKind::RandomFlag { d, .. } => *d,
            FamilyKind::Simplex { k } => (*k).max(1),
        }
    }
}

/// Builds the complex described by `spec`.
pub fn generate(spec: &FamilySpec) -> Result<SimplicialComplex> {
    let d = spec.degree_bound.unwrap_or_else(|| spec.natural_degree_bound());
    let tuples: Vec<Vec<Vertex>> = match &spec.kind {
        FamilyKind::DisjointUnion { base, copies } => {
            if *copies == 0 {
                return Err(Error::InvalidSpec("disjoint union needs at least one copy".into()));
            }
            let one = generate(base)?;
            let stride = one.vertices().max().map_or(0, |v| v + 1);
            let maximal = one.maximal_simplices();
            (0..*copies as Vertex)
                .flat_map(|c| maximal.iter().map(move |s| s.vertices().iter().map(|v| v + c * stride).collect()))
                .collect()
        }
        FamilyKind::TorusGrid { n } => torus_triangles(*n)?,
        FamilyKind::SphereBoundary { k } => {
            let all: Vec<Vertex> = (0..(*k as Vertex + 2)).collect();
            (0..all.len()).map(|skip| all.iter().copied().filter(|v| *v != skip as Vertex).collect()).collect()
        }
        FamilyKind::Cycle { n } => {
            if *n < 3 {
                return Err(Error::InvalidSpec(format!("cycle needs at least 3 vertices, got {n}")));
            }
            (0..*n as Vertex).map(|v| vec![v, (v + 1) % *n as Vertex]).collect()
        }
        FamilyKind::Path { n } => match n {
            0 => return Err(Error::InvalidSpec("path needs at least one vertex".into())),
            1 => vec![vec![0]],
            _ => (0..*n as Vertex - 1).map(|v| vec![v, v + 1]).collect(),
        },
        FamilyKind::RandomFlag { n, d: graph_d, seed } => random_flag(*n, *graph_d, *seed)?,
        FamilyKind::Simplex { k } => vec![(0..=*k as Vertex).collect()],
    };
    build_complex(&tuples, d)
}

fn torus_triangles(n: usize) -> Result<Vec<Vec<Vertex>>> {
    if n < 3 {
        return Err(Error::InvalidSpec(format!("torus grid needs n >= 3, got {n}")));
    }
    let id = |i: usize, j: usize| ((i % n) * n + (j % n)) as Vertex;
    let mut out = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            out.push(vec![id(i, j), id(i, j + 1), id(i + 1, j + 1)]);
        }
    }
    Ok(out)
}

/// Maximal cliques of a seeded graph in which every vertex has degree at most
/// `d`. Each vertex proposes edges to its next `d` ring neighbours; each
/// proposal is rewired to a uniform vertex with probability 1/2 and rejected
/// if it would exceed the degree bound or repeat an edge.
fn random_flag(n: usize, d: usize, seed: u64) -> Result<Vec<Vec<Vertex>>> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidSpec("random flag complex needs n >= 1 and d >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for v in 0..n {
        for offset in 1..=d {
            let mut u = (v + offset) % n;
            if rng.gen_bool(0.5) {
                u = rng.gen_range(0..n);
            }
            if u == v || adj[v].contains(&u) || adj[v].len() >= d || adj[u].len() >= d {
                continue;
            }
            adj[v].insert(u);
            adj[u].insert(v);
        }
    }
    let mut cliques = Vec::new();
    bron_kerbosch(&adj, Vec::new(), (0..n).collect(), BTreeSet::new(), &mut cliques);
    Ok(cliques.into_iter().map(|c| c.into_iter().map(|v| v as Vertex).collect()).collect())
}

fn bron_kerbosch(
    adj: &[BTreeSet<usize>],
    r: Vec<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    let pivot = *p.iter().chain(x.iter()).max_by_key(|u| adj[**u].intersection(&p).count()).expect("nonempty");
    let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.intersection(&adj[v]).copied().collect();
        let x2 = x.intersection(&adj[v]).copied().collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.remove(&v);
        x.insert(v);
    }
}

/// Members of one family at increasing sizes.
pub fn convergent_sequence(template: &FamilySpec, sizes: &[usize]) -> Result<Vec<SimplicialComplex>> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSpec("sizes must be strictly increasing".into()));
    }
    sizes.iter().map(|&s| generate(&template.with_size(s))).collect()
}
