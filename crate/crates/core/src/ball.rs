//! Rooted local balls.
//!
//! A vertex-rooted ball `B_r(p)` is the full subcomplex spanned by the
//! vertices within 1-skeleton distance `r` of `p`. A simplex-rooted ball
//! collects the `i`-simplices within distance `r` of the root in the graph
//! where two `i`-simplices are adjacent when they share at least one vertex,
//! closed under faces.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Root {
    Vertex(Vertex),
    Simplex(Simplex),
}

#[derive(Clone, Debug)]
pub struct RootedBall {
    pub ball: SimplicialComplex,
    pub root: Root,
    pub radius: usize,
    pub root_dimension: usize,
}

impl RootedBall {
    /// Vertex ids of the root (one for vertex roots).
    pub fn root_vertices(&self) -> Vec<Vertex> {
        match &self.root {
            Root::Vertex(v) => vec![*v],
            Root::Simplex(s) => s.vertices().to_vec(),
        }
    }
}

/// Dense vertex indices within 1-skeleton distance `radius` of `start`.
pub(crate) fn vertex_ball_indices(k: &SimplicialComplex, start: usize, radius: usize) -> Vec<usize> {
    let mut dist: HashMap<usize, usize> = HashMap::from([(start, 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let dv = dist[&v];
        if dv == radius {
            continue;
        }
        for &w in k.neighbors(v) {
            dist.entry(w).or_insert_with(|| {
                queue.push_back(w);
                dv + 1
            });
        }
    }
    let mut out: Vec<usize> = dist.into_keys().collect();
    out.sort_unstable();
    out
}

/// Dense indices of the `dim`-simplices within shared-vertex distance `radius`
/// of simplex `start`, in breadth-first order (the root first).
pub(crate) fn simplex_ball_indices(k: &SimplicialComplex, dim: usize, start: usize, radius: usize) -> Vec<usize> {
    let level = k.simplices(dim);
    let mut dist: HashMap<usize, usize> = HashMap::from([(start, 0)]);
    let mut order = vec![start];
    let mut head = 0;
    while head < order.len() {
        let t = order[head];
        head += 1;
        let dt = dist[&t];
        if dt == radius {
            continue;
        }
        for v in level[t].vertices() {
            let vi = k.vertex_index(*v).expect("simplex vertex is in the complex");
            for &u in k.star(dim, vi) {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(u) {
                    e.insert(dt + 1);
                    order.push(u);
                }
            }
        }
    }
    order
}

/// `B_r(p)`: every simplex of `k` whose vertices all lie within distance `radius` of `p`.
pub fn extract_vertex_ball(k: &SimplicialComplex, p: Vertex, radius: usize) -> Result<RootedBall> {
    let start = k.vertex_index(p).ok_or(Error::UnknownVertex(p))?;
    let inside = vertex_ball_indices(k, start, radius);
    let members: std::collections::HashSet<Vertex> = inside.iter().map(|&i| k.vertex_id(i)).collect();
    let depth = k.dimension().map_or(0, |d| d + 1);
    let mut by_dim: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); depth];
    for &vi in &inside {
        let v = k.vertex_id(vi);
        for (dim, set) in by_dim.iter_mut().enumerate() {
            for &s in k.star(dim, vi) {
                let simplex = &k.simplices(dim)[s];
                // count each simplex once, from its smallest vertex
                if simplex.vertices()[0] == v && simplex.vertices().iter().all(|u| members.contains(u)) {
                    set.insert(simplex.clone());
                }
            }
        }
    }
    let ball = SimplicialComplex::from_closed(k.degree_bound(), by_dim, k.orientation().cloned());
    Ok(RootedBall { ball, root: Root::Vertex(p), radius, root_dimension: 0 })
}

/// Simplex-rooted ball: `dim`-simplices within shared-vertex distance `radius`
/// of `sigma`, with all their faces.
pub fn extract_simplex_ball(k: &SimplicialComplex, sigma: &Simplex, radius: usize) -> Result<RootedBall> {
    let dim = sigma.dimension();
    let start = k.index_of(sigma).ok_or_else(|| Error::UnknownSimplex(sigma.clone()))?;
    let level = k.simplices(dim);
    let mut by_dim: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); dim + 1];
    for t in simplex_ball_indices(k, dim, start, radius) {
        let s = &level[t];
        let n = s.vertices().len();
        for mask in 1u32..(1 << n) {
            let face = Simplex::new((0..n).filter(|j| mask & (1 << j) != 0).map(|j| s.vertices()[j]));
            by_dim[face.dimension()].insert(face);
        }
    }
    let ball = SimplicialComplex::from_closed(k.degree_bound(), by_dim, k.orientation().cloned());
    Ok(RootedBall { ball, root: Root::Simplex(sigma.clone()), radius, root_dimension: dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;

    fn complex(t: &[&[Vertex]], d: usize) -> SimplicialComplex {
        build_complex(&t.iter().map(|s| s.to_vec()).collect::<Vec<_>>(), d).unwrap()
    }

    fn edges(b: &RootedBall) -> Vec<Simplex> {
        b.ball.simplices(1).to_vec()
    }

    #[test]
    fn hollow_triangle_ball_is_everything() {
        let k = complex(&[&[0, 1], &[1, 2], &[0, 2]], 2);
        let b = extract_vertex_ball(&k, 0, 1).unwrap();
        assert_eq!(b.ball, k);
        assert_eq!(b.root, Root::Vertex(0));
    }

    #[test]
    fn solid_triangle_ball_keeps_the_two_simplex() {
        let k = complex(&[&[0, 1, 2]], 2);
        assert_eq!(extract_vertex_ball(&k, 0, 1).unwrap().ball, k);
    }

    #[test]
    fn path_ball_stops_at_radius() {
        let k = complex(&[&[0, 1], &[1, 2]], 2);
        let b = extract_vertex_ball(&k, 0, 1).unwrap();
        assert_eq!(b.ball.vertices().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(edges(&b), vec![Simplex::new([0, 1])]);
        let b0 = extract_vertex_ball(&k, 1, 0).unwrap();
        assert_eq!(b0.ball.f_vector(), vec![1]);
    }

    #[test]
    fn unknown_roots_are_errors() {
        let k = complex(&[&[0, 1]], 2);
        assert_eq!(extract_vertex_ball(&k, 9, 1).unwrap_err(), Error::UnknownVertex(9));
        assert!(matches!(
            extract_simplex_ball(&k, &Simplex::new([0, 9]), 1),
            Err(Error::UnknownSimplex(_))
        ));
    }

    #[test]
    fn edge_balls() {
        let tri = complex(&[&[0, 1], &[1, 2], &[0, 2]], 2);
        let b = extract_simplex_ball(&tri, &Simplex::new([0, 1]), 1).unwrap();
        assert_eq!(edges(&b).len(), 3);

        let two = complex(&[&[0, 1], &[2, 3]], 2);
        let b = extract_simplex_ball(&two, &Simplex::new([0, 1]), 5).unwrap();
        assert_eq!(b.ball.f_vector(), vec![2, 1]);

        let hexagon = complex(&[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]], 2);
        let b = extract_simplex_ball(&hexagon, &Simplex::new([0, 1]), 1).unwrap();
        assert_eq!(edges(&b), vec![Simplex::new([0, 1]), Simplex::new([0, 5]), Simplex::new([1, 2])]);
        let b0 = extract_simplex_ball(&hexagon, &Simplex::new([0, 1]), 0).unwrap();
        assert_eq!(b0.ball.f_vector(), vec![2, 1]);
    }

    #[test]
    fn simplex_ball_of_triangles_has_no_higher_cofaces() {
        let k = complex(&[&[0, 1, 2, 3]], 3);
        let b = extract_simplex_ball(&k, &Simplex::new([0, 1]), 1).unwrap();
        assert_eq!(b.ball.f_vector(), vec![4, 5]);
        assert_eq!(b.root_dimension, 1);
    }
}
