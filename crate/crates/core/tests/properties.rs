mod common;

use std::collections::BTreeSet;

use betti_scope::laplacian::laplacian_kernel_dim;
use betti_scope::sampling::{exact_profiles, ClassEnumeration};
use betti_scope::{
    betti_exact, estimate_betti_spectral_with, estimate_moments, exact_spectrum, extract_simplex_ball,
    extract_vertex_ball, generate, laplacian, local_diagonal_power, orient_random, read_cplx, sampling_distance,
    write_cplx, EstimatorConfig, FamilySpec, Simplex, SimplicialComplex,
};
use common::{copies, dense_powers};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn flag() -> impl Strategy<Value = SimplicialComplex> {
    (6usize..28, 2usize..6, any::<u64>()).prop_map(|(n, d, seed)| generate(&FamilySpec::random_flag(n, d, seed)).unwrap())
}

fn all_simplices(k: &SimplicialComplex) -> BTreeSet<Simplex> {
    (0..=k.dimension().unwrap_or(0)).flat_map(|i| k.simplices(i).iter().cloned()).collect()
}

fn permuted(k: &SimplicialComplex, seed: u64) -> SimplicialComplex {
    let ids: Vec<u32> = k.vertices().collect();
    let mut image: Vec<u32> = ids.iter().map(|v| 3 * v + 11).collect();
    image.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    k.relabeled(|v| image[ids.binary_search(&v).unwrap()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabeling_keeps_invariants(k in flag(), seed in any::<u64>()) {
        let m = permuted(&k, seed);
        prop_assert_eq!(k.f_vector(), m.f_vector());
        prop_assert_eq!(betti_exact(&k), betti_exact(&m));
        prop_assert_eq!(exact_profiles(&k, 2).unwrap(), exact_profiles(&m, 2).unwrap());
    }

    #[test]
    fn orientation_changes_signs_only(k in flag(), seed in any::<u64>()) {
        let o = orient_random(&k, seed);
        prop_assert_eq!(all_simplices(&k), all_simplices(&o));
        prop_assert_eq!(betti_exact(&k), betti_exact(&o));
        for i in 0..=k.dimension().unwrap() {
            let (a, b) = (laplacian(&k, i), laplacian(&o, i));
            prop_assert!((0..a.rows()).all(|t| a.get(t, t) == b.get(t, t)));
            prop_assert_eq!(laplacian_kernel_dim(&o, i), betti_exact(&k)[i]);
        }
    }

    #[test]
    fn balls_grow_with_radius(k in flag(), pick in any::<prop::sample::Index>()) {
        let v = pick.get(&k.vertices().collect::<Vec<_>>()).to_owned();
        let balls: Vec<_> = (0..4).map(|r| all_simplices(&extract_vertex_ball(&k, v, r).unwrap().ball)).collect();
        for w in balls.windows(2) {
            prop_assert!(w[0].is_subset(&w[1]));
        }
        if let Some(edge) = k.simplices(1).first() {
            let balls: Vec<_> = (0..4).map(|r| all_simplices(&extract_simplex_ball(&k, edge, r).unwrap().ball)).collect();
            for w in balls.windows(2) {
                prop_assert!(w[0].is_subset(&w[1]));
            }
        }
    }

    #[test]
    fn laplacian_diagonal_counts_faces_and_cofaces(k in flag()) {
        for i in 0..=k.dimension().unwrap() {
            let lap = laplacian(&k, i);
            prop_assert!(lap.is_symmetric());
            for (t, s) in k.simplices(i).iter().enumerate() {
                let down = if i == 0 { 0 } else { i as i64 + 1 };
                prop_assert_eq!(lap.get(t, t), down + k.cofaces(s).count() as i64);
            }
        }
    }

    #[test]
    fn exhaustive_moments_are_normalized_traces(k in flag()) {
        for i in 0..=k.dimension().unwrap() {
            let n = k.count(i);
            let m = estimate_moments(&k, i, 6, n, 0).unwrap();
            prop_assert!(m.exhaustive);
            for (r, p) in dense_powers(&laplacian(&k, i), 6).iter().enumerate() {
                let trace: i128 = (0..n).map(|t| p[t][t]).sum();
                let want = BigRational::new(trace.into(), (n as i64).into());
                prop_assert_eq!(&m.values[r], &want);
            }
        }
    }

    #[test]
    fn local_powers_match_dense_powers(k in flag(), r in 0usize..6) {
        let i = 1.min(k.dimension().unwrap());
        let p = dense_powers(&laplacian(&k, i), r);
        for (t, s) in k.simplices(i).iter().enumerate() {
            prop_assert_eq!(local_diagonal_power(&k, s, r).unwrap(), p[r][t][t].into());
        }
    }

    #[test]
    fn doubling_keeps_profiles(k in flag(), m in 2usize..4) {
        let many = copies(&k, m);
        let (p, q) = (exact_profiles(&k, 2).unwrap(), exact_profiles(&many, 2).unwrap());
        for (a, b) in p.iter().zip(&q) {
            prop_assert_eq!(&a.counts.keys().collect::<Vec<_>>(), &b.counts.keys().collect::<Vec<_>>());
            for c in a.counts.keys() {
                prop_assert!((a.frequency(c) - b.frequency(c)).abs() < 1e-12);
            }
        }
        prop_assert_eq!(sampling_distance(&p, &q, 2).unwrap().value, 0.0);
    }

    #[test]
    fn sampling_distance_is_a_pseudometric(a in flag(), b in flag(), c in flag()) {
        let ps: Vec<_> = [&a, &b, &c].iter().map(|k| exact_profiles(k, 2).unwrap()).collect();
        let e = ClassEnumeration::covering(ps.iter().map(|p| p.as_slice()));
        let dist = |x: usize, y: usize| e.distance(&ps[x], &ps[y]).value;
        prop_assert_eq!(dist(0, 0), 0.0);
        prop_assert!((dist(0, 1) - dist(1, 0)).abs() < 1e-12);
        prop_assert!(dist(0, 2) <= dist(0, 1) + dist(1, 2) + 1e-12);
        prop_assert!(dist(0, 1) <= 1.0);
    }

    #[test]
    fn kernel_fraction_does_not_undershoot(k in flag()) {
        for i in 0..=k.dimension().unwrap() {
            let config = EstimatorConfig { moments: Some(64), samples: Some(k.count(i)), cut: None };
            let (_, e) = estimate_betti_spectral_with::<f64>(&k, i, 0.1, 0, &config).unwrap();
            let mu0 = exact_spectrum::<f64>(&laplacian(&k, i)).unwrap().kernel_mass();
            prop_assert!(e.kernel_fraction >= mu0 - 0.05, "Δ^{i}: {} vs {mu0}", e.kernel_fraction);
        }
    }

    #[test]
    fn text_format_round_trips(k in flag()) {
        let text = write_cplx(&k);
        let back = read_cplx(&text).unwrap();
        prop_assert_eq!(&back, &k);
        prop_assert_eq!(write_cplx(&back), text);
    }
}
