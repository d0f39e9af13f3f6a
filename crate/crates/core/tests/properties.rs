use algsieve::detect::substream;
use algsieve::dimmatch::{build_edmonds_matrix, detect_qdim_packing, QdimAssignment};
use algsieve::edgecolor::{detect_edge_coloring, detect_edge_coloring_general};
use algsieve::gf::{evaluate_poly, interpolate_univariate};
use algsieve::io::{format_family, format_graph, parse_family, parse_graph, Family};
use algsieve::kpath::{admissible_probability, detect_k_path};
use algsieve::selftest::{random_graph, random_partite_family, random_set_family};
use algsieve::setpack::{detect_set_packing, packing_admissible_probability};
use algsieve::{oracle, selftest, DetectOptions, Field, FieldElement, FieldMatrix, Graph};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

const DEGREES: [u32; 10] = [1, 2, 3, 4, 8, 16, 24, 32, 48, 64];

fn element(degree: u32, raw: u64) -> FieldElement {
    let field = Field::new(degree).unwrap();
    let mask = if degree == 64 { u64::MAX } else { (1u64 << degree) - 1 };
    field.element(raw & mask).unwrap()
}

/// Union of `d` random perfect matchings on `n` vertices, if they are
/// pairwise edge-disjoint.
fn random_regular(seed: u64, n: usize, d: usize) -> Option<Graph> {
    let mut rng = substream(seed, 0);
    let mut edges = Vec::new();
    for _ in 0..d {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        edges.extend(order.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))));
    }
    Graph::new(n, edges).ok()
}

proptest! {
    #[test]
    fn addition_is_an_involution(d in prop::sample::select(DEGREES.to_vec()), a: u64, c: u64) {
        let (a, c) = (element(d, a), element(d, c));
        prop_assert_eq!((a + c) + c, a);
        prop_assert!((a + a).is_zero());
    }

    #[test]
    fn multiplication_is_a_commutative_ring(d in prop::sample::select(DEGREES.to_vec()), a: u64, b: u64, c: u64) {
        let (a, b, c) = (element(d, a), element(d, b), element(d, c));
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a.square(), a * a);
    }

    #[test]
    fn inverses(d in prop::sample::select(DEGREES.to_vec()), a: u64) {
        let a = element(d, a);
        if a.is_zero() {
            prop_assert!(a.inv().is_err());
        } else {
            prop_assert!((a * a.inv().unwrap()).is_one());
            prop_assert!(a.pow((1u128 << d) - 1).is_one());
        }
    }

    #[test]
    fn interpolation_inverts_evaluation(d in prop::sample::select(vec![8u32, 16, 64]), seed: u64, len in 1usize..8) {
        let field = Field::new(d).unwrap();
        let mut rng = substream(seed, 0);
        let coeffs = field.sample_vec(&mut rng, len);
        let points: Vec<_> = field
            .evaluation_points(len)
            .unwrap()
            .into_iter()
            .map(|x| (x, evaluate_poly(&coeffs, x)))
            .collect();
        prop_assert_eq!(interpolate_univariate(&points).unwrap(), coeffs);
    }

    #[test]
    fn determinant_is_multiplicative(seed: u64, order in 1usize..=8) {
        let field = Field::new(16).unwrap();
        let mut rng = substream(seed, 0);
        let a = FieldMatrix::from_fn(field, order, |_, _| field.sample(&mut rng));
        let b = FieldMatrix::from_fn(field, order, |_, _| field.sample(&mut rng));
        prop_assert_eq!(a.mul(&b).determinant(), a.determinant() * b.determinant());
        let mut swapped = a.clone();
        swapped.swap_rows(0, order - 1);
        prop_assert_eq!(swapped.determinant(), a.determinant());
    }

    #[test]
    fn determinant_equals_permanent(seed: u64) {
        prop_assert!(selftest::permanent_suite(4, seed).unwrap().ok());
    }

    #[test]
    fn tutte_identity(seed: u64) {
        prop_assert!(selftest::tutte_suite(4, seed).unwrap().ok());
    }

    #[test]
    fn graph_text_round_trips(seed: u64, n in 1usize..12) {
        let mut rng = substream(seed, 0);
        let g = random_graph(&mut rng, n, 0.4);
        prop_assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
        let f = random_set_family(&mut rng, n.max(3), 3, 5);
        prop_assert_eq!(parse_family(&format_family(&f)).unwrap(), Family::Plain(f));
    }

    #[test]
    fn path_probabilities_sum_to_one(k in 1usize..=20) {
        let mut total = BigRational::zero();
        for k1 in 0..=k {
            for l2 in 0..=k {
                total += admissible_probability(k, k1, l2);
            }
        }
        prop_assert!(total.is_one());
    }

    #[test]
    fn packing_probabilities_are_at_most_one(n in 1usize..=12, q in 1usize..=4, n1 in 0usize..=12) {
        let n1 = n1.min(n);
        for p in 1..=n / q {
            let mut total = BigRational::zero();
            for p2 in 0..=p {
                for p1 in 0..=p - p2 {
                    total += packing_admissible_probability(n, n1, q, p, p - p1 - p2, p1, p2);
                }
            }
            prop_assert!(total <= BigRational::one());
            if q <= 2 {
                // every member meets U1 in at most two points
                prop_assert!(total.is_one());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn sieve_identities(seed: u64) {
        for report in selftest::run_all(3, seed).unwrap() {
            prop_assert!(report.ok(), "{:?}", report);
        }
    }

    #[test]
    fn bipartite_edmonds_determinant_is_a_permanent(seed: u64, r in 1usize..=5, members in 0usize..10) {
        let mut rng = substream(seed, 0);
        let family = random_partite_family(&mut rng, 2, r, members);
        let field = Field::new(16).unwrap();
        let a = QdimAssignment::sample(&family, 0, field, &mut rng);
        let e = build_edmonds_matrix(&family, 0, &a, field.sample(&mut rng));
        prop_assert_eq!(e.determinant(), oracle::permanent_char2_bf(&e).unwrap());
    }

    #[test]
    fn kpath_yes_is_a_certificate(seed: u64, n in 1usize..=10, k in 1usize..=6) {
        let mut rng = substream(seed, 0);
        let density = rng.gen_range(0.1..0.5);
        let g = random_graph(&mut rng, n, density);
        let d = detect_k_path(&g, k, seed, DetectOptions { repetitions: Some(3), field_bits: None }).unwrap();
        if d.decision {
            prop_assert!(oracle::has_k_path_bf(&g, k));
        }
        prop_assert!(d.repetitions_run <= d.repetitions_planned);
    }

    #[test]
    fn qdim_yes_is_a_certificate(seed: u64, q in 2usize..=4, r in 1usize..=4, members in 0usize..8) {
        let mut rng = substream(seed, 0);
        let family = random_partite_family(&mut rng, q, r, members);
        let p = rng.gen_range(1..=r);
        let d = detect_qdim_packing(&family, p, seed, DetectOptions::default()).unwrap();
        if d.decision {
            prop_assert!(oracle::has_qdim_packing_bf(&family, p));
        }
        prop_assert_eq!(d.label_subsets, d.evaluations << (p * (q - 2)));
    }

    #[test]
    fn setpack_yes_is_a_certificate(seed: u64, n in 3usize..=9, members in 1usize..8, p in 1usize..=3) {
        let mut rng = substream(seed, 0);
        let family = random_set_family(&mut rng, n, 3, members);
        let d = detect_set_packing(&family, p, seed, DetectOptions { repetitions: Some(2), field_bits: None }).unwrap();
        if d.decision {
            prop_assert!(oracle::has_p_packing_bf(&family, p));
        }
        prop_assert_eq!(d.label_subsets, d.evaluations << d.label_count);
    }

    #[test]
    fn edgecolor_yes_is_a_certificate(seed: u64, half in 1usize..=5, d in 1usize..=3) {
        let Some(g) = random_regular(seed, 2 * half, d) else { return Ok(()) };
        let r = detect_edge_coloring(&g, seed, DetectOptions::default()).unwrap();
        if r.decision {
            prop_assert!(oracle::edge_colorable_bf(&g, d));
        }
    }

    #[test]
    fn general_edgecolor_yes_is_a_certificate(seed: u64, n in 2usize..=7) {
        let mut rng = substream(seed, 0);
        let g = random_graph(&mut rng, n, 0.4);
        prop_assume!(g.edge_count() <= 9);
        let r = detect_edge_coloring_general(&g, seed, DetectOptions::default()).unwrap();
        if r.decision {
            prop_assert_eq!(oracle::edge_chromatic_bf(&g).unwrap(), g.max_degree());
        }
    }

    #[test]
    fn detections_are_deterministic(seed: u64, n in 2usize..=7) {
        let mut rng = substream(seed, 1);
        let g = random_graph(&mut rng, n, 0.5);
        let opts = DetectOptions::default();
        prop_assert_eq!(detect_k_path(&g, 4, seed, opts).unwrap(), detect_k_path(&g, 4, seed, opts).unwrap());
    }
}
