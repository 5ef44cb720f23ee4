//! Bounded-degree simplicial complexes.
//!
//! A [`SimplicialComplex`] is immutable after construction. Every simplex is
//! stored once, as a strictly increasing vertex tuple, and simplices of each
//! dimension are kept sorted lexicographically so that dense indices are
//! reproducible. The ascending order doubles as the default orientation; a
//! complex may additionally carry a vertex ranking (see [`orient_random`])
//! which re-orients every simplex by the order of its vertices' ranks.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Vertex = u32;

/// A simplex as its strictly increasing vertex tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Simplex(SmallVec<[Vertex; 4]>);

impl Simplex {
    /// Sorts `vertices`; callers are responsible for distinctness.
    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        let mut v: SmallVec<[Vertex; 4]> = vertices.into_iter().collect();
        v.sort_unstable();
        Simplex(v)
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(smallvec::smallvec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Codimension-one faces, paired with the position of the omitted vertex.
    pub fn facets(&self) -> impl Iterator<Item = (usize, Simplex)> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |j| {
            let mut f = self.0.clone();
            f.remove(j);
            (j, Simplex(f))
        })
    }

    pub fn shares_vertex(&self, other: &Simplex) -> bool {
        let (mut a, mut b) = (0, 0);
        while a < self.0.len() && b < other.0.len() {
            match self.0[a].cmp(&other.0[b]) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// Every non-empty subset, including the simplex itself.
    fn closure(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u32..(1u32 << n)).map(move |mask| {
            Simplex(
                (0..n)
                    .filter(|j| mask & (1 << j) != 0)
                    .map(|j| self.0[j])
                    .collect(),
            )
        })
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Vertex ranking that orients each simplex by increasing rank.
pub type Orientation = Arc<HashMap<Vertex, u32>>;

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    degree_bound: usize,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    neighbors: Vec<Vec<usize>>,
    star: Vec<Vec<Vec<usize>>>,
    orientation: Option<Orientation>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.degree_bound == other.degree_bound && self.simplices == other.simplices
    }
}

/// Face closure of `maximal_simplices`, validated against `degree_bound`.
pub fn build_complex(maximal_simplices: &[Vec<Vertex>], degree_bound: usize) -> Result<SimplicialComplex> {
    SimplicialComplex::build(maximal_simplices, degree_bound)
}

impl SimplicialComplex {
    pub fn build(maximal_simplices: &[Vec<Vertex>], degree_bound: usize) -> Result<Self> {
        if degree_bound == 0 {
            return Err(Error::ZeroDegreeBound);
        }
        let mut seen = BTreeSet::new();
        for tuple in maximal_simplices {
            if tuple.is_empty() {
                return Err(Error::EmptySimplex);
            }
            let s = Simplex::new(tuple.iter().copied());
            if let Some(w) = s.0.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex(w[0]));
            }
            // A k-simplex puts each of its vertices in k edges.
            if s.0.len() > degree_bound + 1 {
                return Err(Error::DegreeExceeded(s.0[0]));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::DuplicateSimplex(s));
            }
        }
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in &seen {
            for f in s.closure() {
                let k = f.dimension();
                if by_dim.len() <= k {
                    by_dim.resize_with(k + 1, BTreeSet::new);
                }
                by_dim[k].insert(f);
            }
        }
        if by_dim.len() > 1 {
            let mut edge_count: HashMap<Vertex, usize> = HashMap::new();
            for e in &by_dim[1] {
                for v in e.vertices() {
                    *edge_count.entry(*v).or_default() += 1;
                }
            }
            if let Some(v) = edge_count
                .iter()
                .filter(|(_, c)| **c > degree_bound)
                .map(|(v, _)| *v)
                .min()
            {
                return Err(Error::DegreeExceeded(v));
            }
        }
        Ok(Self::from_closed(degree_bound, by_dim, None))
    }

    /// Assembles a complex from face-closed simplex sets without validation.
    pub(crate) fn from_closed(
        degree_bound: usize,
        by_dim: Vec<BTreeSet<Simplex>>,
        orientation: Option<Orientation>,
    ) -> Self {
        let mut simplices: Vec<Vec<Simplex>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        while simplices.last().is_some_and(|s| s.is_empty()) {
            simplices.pop();
        }
        let index: Vec<HashMap<Simplex, usize>> = simplices
            .iter()
            .map(|level| level.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let n = simplices.first().map_or(0, Vec::len);
        let mut star = vec![vec![Vec::new(); n]; simplices.len()];
        for (k, level) in simplices.iter().enumerate() {
            for (idx, s) in level.iter().enumerate() {
                for v in s.vertices() {
                    star[k][index[0][&Simplex::vertex(*v)]].push(idx);
                }
            }
        }
        let mut neighbors = vec![Vec::new(); n];
        if simplices.len() > 1 {
            for e in &simplices[1] {
                let a = index[0][&Simplex::vertex(e.0[0])];
                let b = index[0][&Simplex::vertex(e.0[1])];
                neighbors[a].push(b);
                neighbors[b].push(a);
            }
        }
        SimplicialComplex { degree_bound, simplices, index, neighbors, star, orientation }
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    /// Largest dimension with a simplex; `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.count(0)
    }

    /// Number of `dim`-simplices.
    pub fn count(&self, dim: usize) -> usize {
        self.simplices.get(dim).map_or(0, Vec::len)
    }

    /// Counts `|K_0|, |K_1|, ...`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn simplices(&self, dim: usize) -> &[Simplex] {
        self.simplices.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.simplices(0).iter().map(|s| s.0[0])
    }

    pub fn vertex_id(&self, idx: usize) -> Vertex {
        self.simplices[0][idx].0[0]
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dimension())?.get(s).copied()
    }

    pub fn vertex_index(&self, v: Vertex) -> Option<usize> {
        self.index.first()?.get(&Simplex::vertex(v)).copied()
    }

    /// 1-skeleton neighbours by dense vertex index.
    pub fn neighbors(&self, vertex_idx: usize) -> &[usize] {
        &self.neighbors[vertex_idx]
    }

    /// Dense indices of the `dim`-simplices containing a vertex.
    pub fn star(&self, dim: usize, vertex_idx: usize) -> &[usize] {
        self.star.get(dim).map_or(&[], |s| s[vertex_idx].as_slice())
    }

    pub fn orientation(&self) -> Option<&Orientation> {
        self.orientation.as_ref()
    }

    pub(crate) fn with_orientation(mut self, orientation: Option<Orientation>) -> Self {
        self.orientation = orientation;
        self
    }

    /// +1 if the stored ascending order agrees with the orientation, -1 otherwise.
    pub fn orientation_sign(&self, s: &Simplex) -> i64 {
        let Some(rank) = &self.orientation else {
            return 1;
        };
        let r: SmallVec<[u32; 4]> = s.0.iter().map(|v| rank[v]).collect();
        let mut inversions = 0;
        for a in 0..r.len() {
            for b in a + 1..r.len() {
                if r[a] > r[b] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Coefficient of `face` in the coboundary of the cochain dual to `coface`'s
    /// facet, i.e. `(-1)^j` for the `j`-th omitted vertex, twisted by orientation.
    pub fn incidence(&self, coface: &Simplex, omitted: usize, face: &Simplex) -> i64 {
        let base = if omitted % 2 == 0 { 1 } else { -1 };
        base * self.orientation_sign(coface) * self.orientation_sign(face)
    }

    /// `dim`-simplices containing `s` as a codimension-one face.
    pub fn cofaces<'a>(&'a self, s: &'a Simplex) -> impl Iterator<Item = usize> + 'a {
        let dim = s.dimension() + 1;
        let v0 = self.vertex_index(s.0[0]);
        let level = self.simplices(dim);
        v0.into_iter()
            .flat_map(move |v| self.star(dim, v).iter().copied())
            .filter(move |&c| s.is_face_of(&level[c]))
    }

    /// Simplices that are not a face of any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for level in &self.simplices {
            for s in level {
                if self.cofaces(s).next().is_none() {
                    out.push(s.clone());
                }
            }
        }
        out.sort();
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Relabels every vertex by adding `offset`.
    pub fn shifted(&self, offset: Vertex) -> Self {
        let by_dim = self
            .simplices
            .iter()
            .map(|level| level.iter().map(|s| Simplex::new(s.0.iter().map(|v| v + offset))).collect())
            .collect();
        let orientation = self
            .orientation
            .as_ref()
            .map(|o| Arc::new(o.iter().map(|(v, r)| (v + offset, *r)).collect()));
        Self::from_closed(self.degree_bound, by_dim, orientation)
    }

    /// Applies an injective vertex relabeling.
    pub fn relabeled(&self, map: impl Fn(Vertex) -> Vertex) -> Self {
        let by_dim = self
            .simplices
            .iter()
            .map(|level| level.iter().map(|s| Simplex::new(s.0.iter().map(|v| map(*v)))).collect())
            .collect();
        Self::from_closed(self.degree_bound, by_dim, None)
    }

    /// Disjoint union; `other` is shifted past this complex's largest vertex id.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> Self {
        let offset = self.vertices().max().map_or(0, |v| v + 1);
        let shifted = other.shifted(offset);
        let depth = self.simplices.len().max(shifted.simplices.len());
        let by_dim = (0..depth)
            .map(|k| {
                self.simplices(k)
                    .iter()
                    .chain(shifted.simplices(k))
                    .cloned()
                    .collect::<BTreeSet<_>>()
            })
            .collect();
        Self::from_closed(self.degree_bound.max(other.degree_bound), by_dim, None)
    }
}

/// Copy of `complex` oriented by a seeded uniform random ranking of its
/// vertices; a simplex is positively oriented when listed by increasing rank.
pub fn orient_random(complex: &SimplicialComplex, seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks: Vec<u32> = (0..complex.vertex_count() as u32).collect();
    ranks.shuffle(&mut rng);
    let orientation: HashMap<Vertex, u32> = complex.vertices().zip(ranks).collect();
    complex.clone().with_orientation(Some(Arc::new(orientation)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuples(t: &[&[Vertex]]) -> Vec<Vec<Vertex>> {
        t.iter().map(|s| s.to_vec()).collect()
    }

    #[test]
    fn closure_of_single_triangle() {
        let k = build_complex(&tuples(&[&[0, 1, 2]]), 3).unwrap();
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
        assert_eq!(k.dimension(), Some(2));
        assert_eq!(k.simplices(1)[0].vertices(), &[0, 1]);
    }

    #[test]
    fn degree_bound_is_enforced() {
        let err = build_complex(&tuples(&[&[0, 1], &[0, 2], &[0, 3]]), 2).unwrap_err();
        assert_eq!(err, Error::DegreeExceeded(0));
        // a 3-simplex needs degree 3 everywhere
        assert!(matches!(build_complex(&tuples(&[&[5, 6, 7, 8]]), 2), Err(Error::DegreeExceeded(5))));
    }

    #[test]
    fn empty_input_gives_empty_complex() {
        let k = build_complex(&[], 3).unwrap();
        assert!(k.is_empty());
        assert_eq!(k.dimension(), None);
        assert_eq!(k.vertex_count(), 0);
    }

    #[test]
    fn malformed_tuples_are_rejected() {
        assert_eq!(
            build_complex(&tuples(&[&[2, 1], &[1, 2]]), 3).unwrap_err(),
            Error::DuplicateSimplex(Simplex::new([1, 2]))
        );
        assert_eq!(build_complex(&tuples(&[&[1, 1]]), 3).unwrap_err(), Error::RepeatedVertex(1));
        assert_eq!(build_complex(&tuples(&[&[]]), 3).unwrap_err(), Error::EmptySimplex);
        assert_eq!(build_complex(&tuples(&[&[0]]), 0).unwrap_err(), Error::ZeroDegreeBound);
    }

    #[test]
    fn non_contiguous_ids_and_maximal_simplices() {
        let k = build_complex(&tuples(&[&[10, 40, 20], &[40, 70], &[99]]), 3).unwrap();
        assert_eq!(k.vertices().collect::<Vec<_>>(), vec![10, 20, 40, 70, 99]);
        assert_eq!(
            k.maximal_simplices(),
            vec![Simplex::new([10, 20, 40]), Simplex::new([40, 70]), Simplex::vertex(99)]
        );
        assert_eq!(k.euler_characteristic(), 5 - 4 + 1);
    }

    #[test]
    fn orientation_is_deterministic_and_preserves_simplices() {
        let k = build_complex(&tuples(&[&[0, 1, 2], &[2, 3]]), 3).unwrap();
        let a = orient_random(&k, 17);
        let b = orient_random(&k, 17);
        assert_eq!(a, k);
        for s in k.simplices(2).iter().chain(k.simplices(1)) {
            assert_eq!(a.orientation_sign(s), b.orientation_sign(s));
        }
    }

    #[test]
    fn swapped_ranks_flip_edge_sign() {
        let k = build_complex(&tuples(&[&[0, 1]]), 1).unwrap();
        let edge = Simplex::new([0, 1]);
        let flipped = (0..64)
            .map(|seed| orient_random(&k, seed))
            .find(|q| {
                let rank = q.orientation().unwrap();
                rank[&1] < rank[&0]
            })
            .unwrap();
        assert_eq!(flipped.orientation_sign(&edge), -1);
        assert_eq!(k.orientation_sign(&edge), 1);
    }

    #[test]
    fn shares_vertex_and_cofaces() {
        let k = build_complex(&tuples(&[&[0, 1, 2], &[1, 2, 3]]), 3).unwrap();
        let e = Simplex::new([1, 2]);
        let co: Vec<_> = k.cofaces(&e).map(|c| k.simplices(2)[c].clone()).collect();
        assert_eq!(co, vec![Simplex::new([0, 1, 2]), Simplex::new([1, 2, 3])]);
        assert!(Simplex::new([0, 1]).shares_vertex(&Simplex::new([1, 3])));
        assert!(!Simplex::new([0, 1]).shares_vertex(&Simplex::new([2, 3])));
    }
}
