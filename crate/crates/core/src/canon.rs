//! Exact canonical codes for rooted balls.
//!
//! Two rooted balls get the same [`CanonicalCode`] exactly when a simplicial
//! isomorphism maps one onto the other and the root onto the root. The code
//! is the lexicographically least encoding of the simplex sets over all
//! labelings reachable by individualization and refinement; the search
//! prunes with automorphisms discovered along the way, which keeps
//! symmetric balls (tori, twins around a hub) cheap.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::ball::RootedBall;
use crate::complex::Vertex;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCode {
    pub radius: u32,
    pub root_dimension: u32,
    pub bytes: Vec<u8>,
}

impl CanonicalCode {
    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(2 * self.bytes.len());
        for b in &self.bytes {
            let _ = write!(s, "{b:02x}");
        }
        s
    }

    pub fn from_hex(radius: u32, root_dimension: u32, hex: &str) -> Option<Self> {
        if hex.len() % 2 != 0 {
            return None;
        }
        let bytes = (0..hex.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(hex.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()?;
        Some(CanonicalCode { radius, root_dimension, bytes })
    }
}

/// Local, index-based copy of a ball used by the search.
struct Structure {
    n: usize,
    /// simplices[k] holds the (k+1)-dimensional simplices as local index tuples
    simplices: Vec<Vec<Vec<usize>>>,
    incident: Vec<Vec<(usize, usize)>>,
    root: Vec<usize>,
}

impl Structure {
    fn new(b: &RootedBall) -> Self {
        let ids: Vec<Vertex> = b.ball.vertices().collect();
        let local: HashMap<Vertex, usize> = ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let top = b.ball.dimension().unwrap_or(0);
        let mut simplices = Vec::new();
        let mut incident = vec![Vec::new(); ids.len()];
        for dim in 1..=top {
            let level: Vec<Vec<usize>> = b
                .ball
                .simplices(dim)
                .iter()
                .map(|s| s.vertices().iter().map(|v| local[v]).collect())
                .collect();
            for (si, s) in level.iter().enumerate() {
                for &v in s {
                    incident[v].push((dim - 1, si));
                }
            }
            simplices.push(level);
        }
        let root = b.root_vertices().iter().map(|v| local[v]).collect();
        Structure { n: ids.len(), simplices, incident, root }
    }

    /// Distance of every vertex from the root set in the 1-skeleton.
    fn root_distances(&self) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        for &r in &self.root {
            dist[r] = 0;
            queue.push_back(r);
        }
        let edges = self.simplices.first();
        while let Some(v) = queue.pop_front() {
            for &(k, si) in &self.incident[v] {
                if k != 0 {
                    continue;
                }
                let e = &edges.expect("incident edge implies edge level")[si];
                let w = if e[0] == v { e[1] } else { e[0] };
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Iterated colour refinement until the partition is stable; colours are
    /// renumbered densely in order of their signatures.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut classes = normalize(&mut colors);
        loop {
            let sigs: Vec<(usize, Vec<(usize, Vec<usize>)>)> = (0..self.n)
                .map(|v| {
                    let mut around: Vec<(usize, Vec<usize>)> = self.incident[v]
                        .iter()
                        .map(|&(k, si)| {
                            let mut others: Vec<usize> = self.simplices[k][si]
                                .iter()
                                .filter(|&&u| u != v)
                                .map(|&u| colors[u])
                                .collect();
                            others.sort_unstable();
                            (k, others)
                        })
                        .collect();
                    around.sort_unstable();
                    (colors[v], around)
                })
                .collect();
            let mut distinct: Vec<&(usize, Vec<(usize, Vec<usize>)>)> = sigs.iter().collect();
            distinct.sort_unstable();
            distinct.dedup();
            let next: Vec<usize> = sigs
                .iter()
                .map(|s| distinct.binary_search(&s).expect("signature present"))
                .collect();
            let count = distinct.len();
            colors = next;
            if count == classes {
                return colors;
            }
            classes = count;
        }
    }

    fn encode(&self, labels: &[usize]) -> Vec<u32> {
        let mut out = vec![self.n as u32, self.simplices.len() as u32];
        for level in &self.simplices {
            let mut tuples: Vec<Vec<u32>> = level
                .iter()
                .map(|s| {
                    let mut t: Vec<u32> = s.iter().map(|&v| labels[v] as u32).collect();
                    t.sort_unstable();
                    t
                })
                .collect();
            tuples.sort_unstable();
            out.push(tuples.len() as u32);
            out.extend(tuples.into_iter().flatten());
        }
        let mut root: Vec<u32> = self.root.iter().map(|&v| labels[v] as u32).collect();
        root.sort_unstable();
        out.extend(root);
        out
    }
}

fn normalize(colors: &mut [usize]) -> usize {
    let mut distinct: Vec<usize> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for c in colors.iter_mut() {
        *c = distinct.binary_search(c).expect("colour present");
    }
    distinct.len()
}

struct Leaf {
    code: Vec<u32>,
    labels: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    s: &'a Structure,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns `Some(level)` when the whole subtree below depth `level` is
    /// equivalent to part of the first path and can be abandoned.
    fn dfs(&mut self, colors: Vec<usize>, path: &mut Vec<usize>) -> Option<usize> {
        let n = self.s.n;
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| sizes[c] > 1) else {
            return self.leaf(colors, path);
        };
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.same_orbit(path, &explored, v) {
                continue;
            }
            let mut child: Vec<usize> = colors.iter().map(|&c| 2 * c + 1).collect();
            child[v] = 2 * colors[v];
            let child = self.s.refine(child);
            path.push(v);
            let jump = self.dfs(child, path);
            path.pop();
            explored.push(v);
            if let Some(level) = jump {
                if level < path.len() {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, labels: Vec<usize>, path: &[usize]) -> Option<usize> {
        let code = self.s.encode(&labels);
        let Some(first) = &self.first else {
            let leaf = Leaf { code, labels, path: path.to_vec() };
            self.best = Some(Leaf { code: leaf.code.clone(), labels: leaf.labels.clone(), path: leaf.path.clone() });
            self.first = Some(leaf);
            return None;
        };
        if code == first.code {
            let gamma = automorphism(&first.labels, &labels);
            let maps_path = first.path.iter().zip(path).all(|(a, b)| gamma[*a] == *b);
            self.automorphisms.push(gamma);
            if maps_path && first.path.len() == path.len() {
                let common = first.path.iter().zip(path).take_while(|(a, b)| a == b).count();
                return Some(common);
            }
            return None;
        }
        let best = self.best.as_ref().expect("best set with first");
        if code == best.code {
            let gamma = automorphism(&best.labels, &labels);
            self.automorphisms.push(gamma);
        } else if code < best.code {
            self.best = Some(Leaf { code, labels, path: path.to_vec() });
        }
        None
    }

    /// Whether `v` is in the orbit of an already explored vertex under the
    /// known automorphisms that fix `path` pointwise.
    fn same_orbit(&self, path: &[usize], explored: &[usize], v: usize) -> bool {
        let mut parent: Vec<usize> = (0..self.s.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for g in &self.automorphisms {
            if path.iter().all(|&p| g[p] == p) {
                any = true;
                for x in 0..self.s.n {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, g[x]));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }
}

/// The vertex map sending each vertex to the one carrying the same label in
/// `to`: an automorphism whenever both labelings encode identically.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut inverse = vec![0; to.len()];
    for (v, &l) in to.iter().enumerate() {
        inverse[l] = v;
    }
    from.iter().map(|&l| inverse[l]).collect()
}

/// Canonical code of a rooted ball, invariant under root-preserving isomorphism.
pub fn canonical_code(b: &RootedBall) -> CanonicalCode {
    let s = Structure::new(b);
    let start = s.refine(s.root_distances());
    let mut search = Search { s: &s, first: None, best: None, automorphisms: Vec::new() };
    search.dfs(start, &mut Vec::new());
    let code = search.best.expect("search reaches at least one leaf").code;
    CanonicalCode { radius: b.radius as u32, root_dimension: b.root_dimension as u32, bytes: pack(&code) }
}

/// One byte per entry when every value fits, else four little-endian bytes.
fn pack(code: &[u32]) -> Vec<u8> {
    if code.iter().all(|&x| x < 256) {
        let mut out = Vec::with_capacity(code.len() + 1);
        out.push(1);
        out.extend(code.iter().map(|&x| x as u8));
        out
    } else {
        let mut out = Vec::with_capacity(4 * code.len() + 1);
        out.push(4);
        for x in code {
            out.extend_from_slice(&x.to_le_bytes());
        }
        out
    }
}
