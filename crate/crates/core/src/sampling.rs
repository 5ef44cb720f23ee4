//! Rooted-ball statistics: exact and sampled local profiles, the sampling
//! pseudo-metric, and the corpus-matching Betti tester.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ball::{extract_simplex_ball, extract_vertex_ball};
use crate::canon::{canonical_code, CanonicalCode};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::laplacian::betti_exact;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileMode {
    /// every root counted once
    Exact,
    /// roots drawn uniformly with replacement
    Empirical,
}

/// Distribution of rooted-ball classes at one radius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ProfileFile", try_from = "ProfileFile")]
pub struct LocalProfile {
    pub radius: usize,
    pub root_dimension: usize,
    pub mode: ProfileMode,
    pub total: usize,
    pub sample_size: Option<usize>,
    pub counts: BTreeMap<CanonicalCode, usize>,
}

/// On-disk shape of a profile: header fields and a code-hex to count map.
#[derive(Serialize, Deserialize)]
struct ProfileFile {
    r: usize,
    i: usize,
    mode: ProfileMode,
    total: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sample_size: Option<usize>,
    counts: BTreeMap<String, usize>,
}

impl From<LocalProfile> for ProfileFile {
    fn from(p: LocalProfile) -> Self {
        ProfileFile {
            r: p.radius,
            i: p.root_dimension,
            mode: p.mode,
            total: p.total,
            sample_size: p.sample_size,
            counts: p.counts.iter().map(|(c, n)| (c.to_hex(), *n)).collect(),
        }
    }
}

impl TryFrom<ProfileFile> for LocalProfile {
    type Error = String;

    fn try_from(f: ProfileFile) -> Result<Self, String> {
        let mut counts = BTreeMap::new();
        for (hex, n) in f.counts {
            let code = CanonicalCode::from_hex(f.r as u32, f.i as u32, &hex).ok_or_else(|| format!("bad code {hex:?}"))?;
            counts.insert(code, n);
        }
        if counts.values().sum::<usize>() != f.total {
            return Err("counts do not sum to total".into());
        }
        Ok(LocalProfile { radius: f.r, root_dimension: f.i, mode: f.mode, total: f.total, sample_size: f.sample_size, counts })
    }
}

impl LocalProfile {
    fn from_codes(radius: usize, root_dimension: usize, mode: ProfileMode, codes: impl IntoIterator<Item = CanonicalCode>) -> Self {
        let mut counts = BTreeMap::new();
        let mut total = 0;
        for c in codes {
            *counts.entry(c).or_insert(0) += 1;
            total += 1;
        }
        let sample_size = (mode == ProfileMode::Empirical).then_some(total);
        LocalProfile { radius, root_dimension, mode, total, sample_size, counts }
    }

    pub fn frequency(&self, code: &CanonicalCode) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        self.counts.get(code).copied().unwrap_or(0) as f64 / self.total as f64
    }

    pub fn class_count(&self) -> usize {
        self.counts.len()
    }
}

fn vertex_codes(k: &SimplicialComplex, roots: &[usize], radius: usize) -> Vec<CanonicalCode> {
    roots
        .par_iter()
        .map(|&v| {
            let b = extract_vertex_ball(k, k.vertex_id(v), radius).expect("root is a vertex of the complex");
            canonical_code(&b)
        })
        .collect()
}

/// Exact profile at radius `r`: vertex-rooted balls for `i = 0`, else balls
/// rooted at every `i`-simplex.
pub fn exact_profile(k: &SimplicialComplex, r: usize, i: usize) -> Result<LocalProfile> {
    if k.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let codes = if i == 0 {
        vertex_codes(k, &(0..k.vertex_count()).collect::<Vec<_>>(), r)
    } else {
        if k.count(i) == 0 {
            return Err(Error::EmptyDimension(i));
        }
        k.simplices(i)
            .par_iter()
            .map(|s| canonical_code(&extract_simplex_ball(k, s, r).expect("simplex of the complex")))
            .collect()
    };
    Ok(LocalProfile::from_codes(r, i, ProfileMode::Exact, codes))
}

/// Exact vertex profiles at radii `1..=r_max`.
pub fn exact_profiles(k: &SimplicialComplex, r_max: usize) -> Result<Vec<LocalProfile>> {
    (1..=r_max).map(|r| exact_profile(k, r, 0)).collect()
}

fn sample_roots(n: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    (0..count).map(|_| rng.gen_range(0..n)).collect()
}

/// Profile of `samples` vertices drawn uniformly with replacement.
pub fn empirical_profile(k: &SimplicialComplex, r: usize, samples: usize, seed: u64) -> Result<LocalProfile> {
    Ok(empirical_profiles_from(k, r..=r, samples, seed)?.remove(0))
}

/// Empirical vertex profiles at radii `1..=r_max`, all read from the same
/// sampled vertices.
pub fn empirical_profiles(k: &SimplicialComplex, r_max: usize, samples: usize, seed: u64) -> Result<Vec<LocalProfile>> {
    empirical_profiles_from(k, 1..=r_max, samples, seed)
}

fn empirical_profiles_from(
    k: &SimplicialComplex,
    radii: std::ops::RangeInclusive<usize>,
    samples: usize,
    seed: u64,
) -> Result<Vec<LocalProfile>> {
    if k.is_empty() {
        return Err(Error::EmptyComplex);
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("sample size must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let roots = sample_roots(k.vertex_count(), samples, &mut rng);
    Ok(radii.map(|r| profile_of_roots(k, &roots, r)).collect())
}

/// Empirical profile of the given roots, computing each distinct ball once.
fn profile_of_roots(k: &SimplicialComplex, roots: &[usize], r: usize) -> LocalProfile {
    let distinct: Vec<usize> = roots.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let codes: HashMap<usize, CanonicalCode> = distinct.iter().copied().zip(vertex_codes(k, &distinct, r)).collect();
    LocalProfile::from_codes(r, 0, ProfileMode::Empirical, roots.iter().map(|v| codes[v].clone()))
}

/// Class of every vertex at every radius `1..=r_max`, for repeated sampling
/// from one complex.
#[derive(Clone, Debug)]
pub struct VertexClassTable {
    /// codes[r - 1] lists the distinct classes at radius r
    codes: Vec<Vec<CanonicalCode>>,
    /// class[r - 1][v] indexes into codes[r - 1]
    class: Vec<Vec<u32>>,
}

impl VertexClassTable {
    pub fn new(k: &SimplicialComplex, r_max: usize) -> Result<Self> {
        if k.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let all: Vec<usize> = (0..k.vertex_count()).collect();
        let mut codes = Vec::new();
        let mut class = Vec::new();
        for r in 1..=r_max {
            let per_vertex = vertex_codes(k, &all, r);
            let distinct: Vec<CanonicalCode> = per_vertex.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
            let id: HashMap<&CanonicalCode, u32> = distinct.iter().enumerate().map(|(i, c)| (c, i as u32)).collect();
            class.push(per_vertex.iter().map(|c| id[c]).collect());
            codes.push(distinct);
        }
        Ok(VertexClassTable { codes, class })
    }

    pub fn class_count(&self) -> usize {
        self.codes.iter().map(Vec::len).sum()
    }

    pub fn exact_profiles(&self) -> Vec<LocalProfile> {
        self.build(ProfileMode::Exact, 0..self.class[0].len())
    }

    /// Same draws as [`empirical_profiles`] with the same seed.
    pub fn sample_profiles(&self, samples: usize, seed: u64) -> Vec<LocalProfile> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let roots = sample_roots(self.class[0].len(), samples, &mut rng);
        self.build(ProfileMode::Empirical, roots.into_iter())
    }

    /// Sup-norm deviation of a seeded sample's frequencies from the exact
    /// ones; equals `sup_deviation(&self.sample_profiles(..), &self.exact_profiles())`.
    pub fn sample_deviation(&self, samples: usize, seed: u64) -> f64 {
        let n = self.class[0].len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let roots = sample_roots(n, samples, &mut rng);
        let mut worst: f64 = 0.0;
        for (class, codes) in self.class.iter().zip(&self.codes) {
            let mut exact = vec![0usize; codes.len()];
            for &c in class {
                exact[c as usize] += 1;
            }
            let mut drawn = vec![0usize; codes.len()];
            for &v in &roots {
                drawn[class[v] as usize] += 1;
            }
            for (e, d) in exact.iter().zip(&drawn) {
                worst = worst.max((*e as f64 / n as f64 - *d as f64 / samples as f64).abs());
            }
        }
        worst
    }

    fn build(&self, mode: ProfileMode, roots: impl Iterator<Item = usize> + Clone) -> Vec<LocalProfile> {
        self.class
            .iter()
            .zip(&self.codes)
            .enumerate()
            .map(|(ri, (class, codes))| {
                let mut tally = vec![0usize; codes.len()];
                let mut total = 0;
                for v in roots.clone() {
                    tally[class[v] as usize] += 1;
                    total += 1;
                }
                let counts = codes.iter().cloned().zip(tally).filter(|e| e.1 > 0).collect();
                let sample_size = (mode == ProfileMode::Empirical).then_some(total);
                LocalProfile { radius: ri + 1, root_dimension: 0, mode, total, sample_size, counts }
            })
            .collect()
    }
}

/// `⌈(200/ρ²) ln(2|A|/ε)⌉` samples: enough for every class frequency among
/// `class_bound` classes to be within `ρ/10` with probability at least `1-ε`.
pub fn sample_size_for(rho: f64, eps: f64, class_bound: usize) -> Result<usize> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidParameter(format!("deviation must be positive, got {rho}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("failure probability must be in (0, 1), got {eps}")));
    }
    if class_bound == 0 {
        return Err(Error::InvalidParameter("class bound must be at least 1".into()));
    }
    let n = (200.0 / (rho * rho)) * (2.0 * class_bound as f64 / eps).ln();
    Ok(n.ceil() as usize)
}

/// Largest frequency difference over all classes and radii. Both sides must
/// list the same radii in the same order.
pub fn sup_deviation(a: &[LocalProfile], b: &[LocalProfile]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(p, q)| {
            p.counts
                .keys()
                .chain(q.counts.keys())
                .map(move |c| (p.frequency(c) - q.frequency(c)).abs())
        })
        .fold(0.0, f64::max)
}

fn check_radii(set: &[LocalProfile], r_max: usize) -> Result<()> {
    let ok = set.len() == r_max && set.iter().enumerate().all(|(k, p)| p.radius == k + 1);
    if ok {
        Ok(())
    } else {
        Err(Error::RadiusMismatch(r_max))
    }
}

/// Ball classes in enumeration order: radius ascending, then code bytes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEnumeration {
    classes: Vec<CanonicalCode>,
}

impl ClassEnumeration {
    /// Every class appearing in any of the profile sets.
    pub fn covering<'a>(sets: impl IntoIterator<Item = &'a [LocalProfile]>) -> Self {
        let mut all: BTreeSet<(u32, Vec<u8>, u32)> = BTreeSet::new();
        for set in sets {
            for p in set {
                for c in p.counts.keys() {
                    all.insert((c.radius, c.bytes.clone(), c.root_dimension));
                }
            }
        }
        let classes = all
            .into_iter()
            .map(|(radius, bytes, root_dimension)| CanonicalCode { radius, root_dimension, bytes })
            .collect();
        ClassEnumeration { classes }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[CanonicalCode] {
        &self.classes
    }

    /// `Σ_k 2^{-(k+1)} |p(α_k) - q(α_k)|` over the enumerated classes.
    pub fn distance(&self, p: &[LocalProfile], q: &[LocalProfile]) -> SamplingDistance {
        let lookup = |set: &[LocalProfile], c: &CanonicalCode| {
            set.iter().find(|x| x.radius == c.radius as usize).map_or(0.0, |x| x.frequency(c))
        };
        let mut value = 0.0;
        let mut weight = 0.5;
        for c in &self.classes {
            value += weight * (lookup(p, c) - lookup(q, c)).abs();
            weight *= 0.5;
        }
        SamplingDistance { value, truncation_bound: 2.0 * weight, classes: self.classes.len() }
    }
}

/// Truncated sampling distance and the total weight of classes beyond the
/// enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingDistance {
    pub value: f64,
    pub truncation_bound: f64,
    pub classes: usize,
}

/// Truncated `d_s` between two profile sets at radii `1..=r_max`, enumerating
/// the classes seen in either.
pub fn sampling_distance(p: &[LocalProfile], q: &[LocalProfile], r_max: usize) -> Result<SamplingDistance> {
    check_radii(p, r_max)?;
    check_radii(q, r_max)?;
    Ok(ClassEnumeration::covering([p, q]).distance(p, q))
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub complex: SimplicialComplex,
    pub profiles: Vec<LocalProfile>,
    pub betti: Vec<usize>,
    pub vertex_count: usize,
}

impl CorpusEntry {
    /// `b^i / |V|`
    pub fn normalized_betti(&self, i: usize) -> f64 {
        self.betti.get(i).copied().unwrap_or(0) as f64 / self.vertex_count as f64
    }
}

/// Reference complexes with precomputed exact statistics.
#[derive(Clone, Debug)]
pub struct ReferenceCorpus {
    pub entries: Vec<CorpusEntry>,
    pub radius: usize,
    pub tolerance: f64,
}

impl ReferenceCorpus {
    pub fn new(radius: usize, tolerance: f64, members: Vec<(String, SimplicialComplex)>) -> Result<Self> {
        if radius == 0 {
            return Err(Error::InvalidParameter("corpus radius must be at least 1".into()));
        }
        if !(tolerance > 0.0) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tolerance}")));
        }
        if let Some((_, first)) = members.first() {
            if let Some((name, _)) = members.iter().find(|(_, k)| k.degree_bound() != first.degree_bound()) {
                return Err(Error::InvalidParameter(format!("corpus member {name} has a different degree bound")));
            }
        }
        let entries = members
            .into_iter()
            .map(|(name, complex)| {
                let profiles = VertexClassTable::new(&complex, radius)?.exact_profiles();
                let betti = betti_exact(&complex);
                let vertex_count = complex.vertex_count();
                Ok(CorpusEntry { name, complex, profiles, betti, vertex_count })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ReferenceCorpus { entries, radius, tolerance })
    }

    fn classes(&self) -> BTreeSet<&CanonicalCode> {
        self.entries.iter().flat_map(|e| e.profiles.iter().flat_map(|p| p.counts.keys())).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestOutcome {
    /// `b^i / |V|` of the matched corpus entry
    pub estimate: f64,
    pub matched_index: usize,
    pub samples_used: usize,
    pub class_bound: usize,
    pub deviation: f64,
}

/// Corpus-matching tester: samples vertices of `m`, and returns the
/// normalized `i`-th Betti number of the first corpus entry whose exact
/// profiles are within `ρ/5` of the sampled ones at every radius.
///
/// The sample size follows [`sample_size_for`] with the class bound taken as
/// twice the number of classes seen in the corpus and the sample; the sample
/// is extended until that bound stops growing.
pub fn test_betti(m: &SimplicialComplex, corpus: &ReferenceCorpus, i: usize, eps: f64, seed: u64) -> Result<TestOutcome> {
    if corpus.entries.is_empty() {
        return Err(Error::InvalidParameter("corpus is empty".into()));
    }
    if m.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let rho = corpus.tolerance;
    let known: BTreeSet<CanonicalCode> = corpus.classes().into_iter().cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roots: Vec<usize> = Vec::new();
    let mut codes: HashMap<(usize, usize), CanonicalCode> = HashMap::new();
    let mut class_bound = 2 * known.len().max(1);
    loop {
        let wanted = sample_size_for(rho, eps, class_bound)?;
        if roots.len() < wanted {
            roots.extend(sample_roots(m.vertex_count(), wanted - roots.len(), &mut rng));
        }
        let fresh: Vec<usize> = roots.iter().copied().filter(|v| !codes.contains_key(&(1, *v))).collect::<BTreeSet<_>>().into_iter().collect();
        for r in 1..=corpus.radius {
            for (v, c) in fresh.iter().zip(vertex_codes(m, &fresh, r)) {
                codes.insert((r, *v), c);
            }
        }
        let seen: BTreeSet<&CanonicalCode> = known.iter().chain(codes.values()).collect();
        let bound = 2 * seen.len();
        if bound <= class_bound {
            break;
        }
        class_bound = bound;
    }
    let sampled: Vec<LocalProfile> = (1..=corpus.radius)
        .map(|r| LocalProfile::from_codes(r, 0, ProfileMode::Empirical, roots.iter().map(|v| codes[&(r, *v)].clone())))
        .collect();
    for (j, entry) in corpus.entries.iter().enumerate() {
        let deviation = sup_deviation(&sampled, &entry.profiles);
        if deviation < rho / 5.0 {
            return Ok(TestOutcome {
                estimate: entry.normalized_betti(i),
                matched_index: j,
                samples_used: roots.len(),
                class_bound,
                deviation,
            });
        }
    }
    Err(Error::NoMatch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, Vertex};

    fn complex(t: &[&[Vertex]], d: usize) -> SimplicialComplex {
        build_complex(&t.iter().map(|s| s.to_vec()).collect::<Vec<_>>(), d).unwrap()
    }

    fn hollow() -> SimplicialComplex {
        complex(&[&[0, 1], &[1, 2], &[0, 2]], 2)
    }

    fn copies(k: &SimplicialComplex, m: usize) -> SimplicialComplex {
        (1..m).fold(k.clone(), |acc, _| acc.disjoint_union(k))
    }

    #[test]
    fn exact_profile_examples() {
        let p = exact_profile(&copies(&hollow(), 4), 1, 0).unwrap();
        assert_eq!(p.class_count(), 1);
        assert_eq!(p.total, 12);

        let path = complex(&[&[0, 1], &[1, 2]], 2);
        let p = exact_profile(&path, 1, 0).unwrap();
        let mut freqs: Vec<f64> = p.counts.keys().map(|c| p.frequency(c)).collect();
        freqs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(freqs, vec![1.0 / 3.0, 2.0 / 3.0]);

        let e = exact_profile(&hollow(), 2, 1).unwrap();
        assert_eq!((e.class_count(), e.total), (1, 3));

        assert_eq!(exact_profile(&complex(&[], 2), 1, 0).unwrap_err(), Error::EmptyComplex);
    }

    #[test]
    fn empirical_profiles_are_seeded() {
        let k = copies(&complex(&[&[0, 1], &[1, 2]], 2), 5);
        let a = empirical_profile(&k, 1, 50, 9).unwrap();
        assert_eq!(a, empirical_profile(&k, 1, 50, 9).unwrap());
        assert_eq!(a.total, 50);
        let table = VertexClassTable::new(&k, 1).unwrap();
        assert_eq!(table.sample_profiles(50, 9)[0], a);
        assert_eq!(table.exact_profiles()[0], exact_profile(&k, 1, 0).unwrap());
        let dev = sup_deviation(&table.sample_profiles(50, 9), &table.exact_profiles());
        assert!((table.sample_deviation(50, 9) - dev).abs() < 1e-15);

        let point = complex(&[&[4]], 1);
        let e = empirical_profile(&point, 2, 17, 3).unwrap();
        let x = exact_profile(&point, 2, 0).unwrap();
        assert_eq!(e.counts.keys().collect::<Vec<_>>(), x.counts.keys().collect::<Vec<_>>());
    }

    #[test]
    fn sample_sizes() {
        assert_eq!(sample_size_for(1.0, 0.05, 10).unwrap(), 1199);
        let mut last = usize::MAX;
        for eps in [0.01, 0.1, 0.3, 0.6, 0.9, 0.99] {
            let n = sample_size_for(0.5, eps, 10).unwrap();
            assert!(n <= last);
            last = n;
        }
        let a = sample_size_for(0.4, 0.05, 10).unwrap() as f64;
        let b = sample_size_for(0.2, 0.05, 10).unwrap() as f64;
        assert!((b / a - 4.0).abs() < 0.01);
        assert!(sample_size_for(0.0, 0.05, 10).is_err());
        assert!(sample_size_for(0.5, 1.0, 10).is_err());
        assert!(sample_size_for(0.5, 0.1, 0).is_err());
    }

    #[test]
    fn distances() {
        let k = hollow();
        let pk = exact_profiles(&k, 2).unwrap();
        assert_eq!(sampling_distance(&pk, &pk, 2).unwrap().value, 0.0);
        let doubled = exact_profiles(&copies(&k, 2), 2).unwrap();
        assert_eq!(sampling_distance(&pk, &doubled, 2).unwrap().value, 0.0);

        let point = exact_profiles(&complex(&[&[0]], 1), 1).unwrap();
        let pk1 = exact_profiles(&k, 1).unwrap();
        let d = sampling_distance(&pk1, &point, 1).unwrap();
        // two classes, each frequency differs by 1: 1/2 + 1/4
        assert_eq!(d.value, 0.75);
        assert_eq!(d.truncation_bound, 0.25);
        assert_eq!(sampling_distance(&pk1, &pk, 2).unwrap_err(), Error::RadiusMismatch(2));
    }

    #[test]
    fn profile_json_round_trip() {
        let p = exact_profile(&complex(&[&[0, 1], &[1, 2]], 2), 1, 0).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert!(text.contains("\"mode\":\"exact\""));
        let back: LocalProfile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn tester_matches_and_rejects() {
        let hollow_many = copies(&hollow(), 30);
        let solid_many = copies(&complex(&[&[0, 1, 2]], 2), 30);
        let corpus = ReferenceCorpus::new(
            1,
            0.5,
            vec![("hollow".into(), hollow_many.clone()), ("solid".into(), solid_many.clone())],
        )
        .unwrap();
        let big = copies(&hollow(), 200);
        let out = test_betti(&big, &corpus, 1, 0.1, 1).unwrap();
        assert_eq!(out.matched_index, 0);
        assert!((out.estimate - 1.0 / 3.0).abs() < 1e-12);
        assert!(out.samples_used >= sample_size_for(0.5, 0.1, 4).unwrap());

        let hollow_only = ReferenceCorpus::new(1, 0.1, vec![("hollow".into(), hollow_many)]).unwrap();
        assert_eq!(test_betti(&solid_many, &hollow_only, 1, 0.1, 1).unwrap_err(), Error::NoMatch);
    }
}
