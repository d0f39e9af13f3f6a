//! Random small instances and the suites that compare every sieve with its
//! brute-force oracle. Each suite is deterministic in its seed.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::detect::substream;
use crate::dimmatch::{default_field_bits as qdim_field_bits, qdim_sieve_eval, QdimAssignment};
use crate::edgecolor::{coloring_sieve_eval, coloring_term, ColoringAssignment, ColoringMode};
use crate::error::Result;
use crate::family::{PartiteFamily, SetFamily};
use crate::gf::Field;
use crate::graph::Graph;
use crate::kpath::{
    in_admissibility_window, path_sieve_eval, walk_sum_avoiding, AvoidedLabels, PathAssignment, PathSieveParams,
    VertexBipartition,
};
use crate::linalg::FieldMatrix;
use crate::oracle::{self, SieveInstance, TutteTerms};
use crate::setpack::{packing_sieve_eval, GroundBipartition, PackingAssignment, PackingParams};

/// Outcome of one suite. `nonzero` counts cases whose common value was
/// nonzero, so a suite that only ever compares zeros is visible as such.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub passed: usize,
    pub nonzero: usize,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport { name, cases: 0, passed: 0, nonzero: 0 }
    }

    fn record(&mut self, equal: bool, nonzero: bool) {
        self.cases += 1;
        self.passed += usize::from(equal);
        self.nonzero += usize::from(equal && nonzero);
    }

    pub fn failed(&self) -> usize {
        self.cases - self.passed
    }

    pub fn ok(&self) -> bool {
        self.cases > 0 && self.failed() == 0
    }
}

/// `G(n, density)`.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are simple")
}

/// `members` uniformly random `q`-subsets of `{0, .., n-1}`, repeats allowed.
pub fn random_set_family<R: Rng + ?Sized>(rng: &mut R, n: usize, q: usize, members: usize) -> SetFamily {
    let ground: Vec<usize> = (0..n).collect();
    let sets = (0..members).map(|_| ground.choose_multiple(rng, q).copied().collect()).collect();
    SetFamily::new(n, q, sets).expect("generated members are q-subsets")
}

/// `members` uniformly random coordinate tuples in `[0, r)^q`.
pub fn random_partite_family<R: Rng + ?Sized>(rng: &mut R, q: usize, r: usize, members: usize) -> PartiteFamily {
    let coords: Vec<Vec<usize>> = (0..members).map(|_| (0..q).map(|_| rng.gen_range(0..r)).collect()).collect();
    PartiteFamily::from_coordinates(q, r, &coords).expect("generated coordinates are in range")
}

fn window_pairs(k: usize) -> Vec<(usize, usize)> {
    (0..=k).flat_map(|k1| (0..=k).map(move |l2| (k1, l2))).filter(|&(k1, l2)| in_admissibility_window(k, k1, l2)).collect()
}

/// k-path sieve against the bijective path enumerator (`n <= 6`, `k <= 4`).
pub fn kpath_suite(instances: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("kpath");
    let field = Field::new(16)?;
    for i in 0..instances {
        let mut rng = substream(seed, i as u64);
        let n = rng.gen_range(2..=6);
        let density = rng.gen_range(0.3..0.9);
        let graph = random_graph(&mut rng, n, density);
        let k = rng.gen_range(1..=4);
        let (k1, l2) = *window_pairs(k).choose(&mut rng).expect("window is never empty");
        let partition = VertexBipartition::sample(n, &mut rng);
        let s = rng.gen_range(0..n);
        let assignment = PathAssignment::sample(&graph, k1, l2, field, &mut rng);
        let params = PathSieveParams { k, k1, l2, repetitions: 1 };
        let sieve = path_sieve_eval(&graph, s, &partition, &params, &assignment).value;
        let brute = oracle::bijective_monomial_sum_bf(SieveInstance::Path {
            graph: &graph,
            start: s,
            partition: &partition,
            k,
            k1,
            l2,
            assignment: &assignment,
        })?;
        report.record(sieve == brute, !brute.is_zero());
    }
    Ok(report)
}

/// One label-avoiding walk sum against the literal walk enumerator.
pub fn walk_sum_suite(instances: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("kpath-walk-sum");
    let field = Field::new(8)?;
    for i in 0..instances {
        let mut rng = substream(seed, i as u64);
        let n = rng.gen_range(2..=6);
        let density = rng.gen_range(0.3..0.9);
        let graph = random_graph(&mut rng, n, density);
        let k = rng.gen_range(1..=5);
        let (k1, l2) = *window_pairs(k).choose(&mut rng).expect("window is never empty");
        let partition = VertexBipartition::sample(n, &mut rng);
        let s = rng.gen_range(0..n);
        let assignment = PathAssignment::sample(&graph, k1, l2, field, &mut rng);
        let avoided = AvoidedLabels {
            vertex_labels: rng.gen_range(0..1u64 << k1),
            edge_labels: rng.gen_range(0..1u64 << l2),
        };
        let params = PathSieveParams { k, k1, l2, repetitions: 1 };
        let dp = walk_sum_avoiding(&graph, s, &partition, &params, avoided, &assignment);
        let brute = oracle::labeled_walk_sum_bf(
            &graph,
            s,
            &partition,
            k,
            k1,
            l2,
            (avoided.vertex_labels, avoided.edge_labels),
            &assignment,
        )?;
        report.record(dp == brute, !brute.is_zero());
    }
    Ok(report)
}

/// q-dimensional packing sieve against the packing enumerator
/// (`r <= 3`, `q <= 4`).
pub fn qdmatch_suite(instances: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("qdmatch");
    for i in 0..instances {
        let mut rng = substream(seed, i as u64);
        let q = rng.gen_range(2..=4);
        let r = rng.gen_range(1..=3);
        let members = rng.gen_range(0..=7);
        let family = random_partite_family(&mut rng, q, r, members);
        let p = rng.gen_range(1..=r);
        let labels = p * (q - 2);
        let field = Field::at_least(qdim_field_bits(p, q, r).max(8))?;
        let assignment = QdimAssignment::sample(&family, labels, field, &mut rng);
        let sieve = qdim_sieve_eval(&family, p, &assignment)?.value;
        let brute = oracle::bijective_monomial_sum_bf(SieveInstance::Qdim { family: &family, p, assignment: &assignment })?;
        report.record(sieve == brute, !brute.is_zero());
    }
    Ok(report)
}

/// Set packing sieve against the packing enumerator (`n <= 8`, `q = 3`,
/// `p <= 2`), over every split `(p0, p1, p2)` and random `n1`.
pub fn setpack_suite(instances: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("setpack");
    let q = 3;
    let field = Field::new(16)?;
    for i in 0..instances {
        let mut rng = substream(seed, i as u64);
        let n = rng.gen_range(q..=8);
        let members = rng.gen_range(1..=7);
        let family = random_set_family(&mut rng, n, q, members);
        let p = rng.gen_range(1..=2);
        let (p1, p2) = loop {
            let p2 = rng.gen_range(0..=p);
            let p1 = rng.gen_range(0..=p - p2);
            if p1 + 2 * p2 <= n.min(6) {
                break (p1, p2);
            }
        };
        let p0 = p - p1 - p2;
        let n1 = rng.gen_range(p1 + 2 * p2..=n.min(6));
        let partition = GroundBipartition::sample(n, n1, &mut rng);
        let params = PackingParams { n, q, p, p0, p1, p2, n1, repetitions: 1 };
        let assignment = PackingAssignment::sample(&family, params.label_count(), field, &mut rng);
        let sieve = packing_sieve_eval(&family, &partition, &params, &assignment)?.value;
        let brute = oracle::bijective_monomial_sum_bf(SieveInstance::Packing {
            family: &family,
            partition: &partition,
            split: (p0, p1, p2),
            assignment: &assignment,
        })?;
        report.record(sieve == brute, !brute.is_zero());
    }
    Ok(report)
}

/// Edge-colouring sieve against the matching-tuple enumerator (`n <= 6`,
/// `p <= 2`), both variants.
pub fn edgecolor_suite(instances: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("edgecolor");
    let field = Field::new(16)?;
    for i in 0..instances {
        let mut rng = substream(seed, i as u64);
        let mode = if rng.gen_bool(0.5) { ColoringMode::Regular } else { ColoringMode::General };
        let (graph, p) = loop {
            let n = match mode {
                ColoringMode::Regular => 2 * rng.gen_range(1..=3),
                ColoringMode::General => rng.gen_range(2..=6),
            };
            let density = rng.gen_range(0.3..0.9);
        let graph = random_graph(&mut rng, n, density);
            if mode == ColoringMode::Regular || (1..=7).contains(&graph.edge_count()) {
                break (graph, rng.gen_range(1..=2));
            }
        };
        let labels = mode.label_count(&graph, p);
        let assignment = ColoringAssignment::sample(&graph, p, labels, field, &mut rng);
        let sieve = coloring_sieve_eval(&graph, mode, &assignment)?.value;
        let brute = oracle::bijective_monomial_sum_bf(SieveInstance::Coloring { graph: &graph, mode, assignment: &assignment })?;
        report.record(sieve == brute, !brute.is_zero());
    }
    Ok(report)
}

/// One label-avoiding product of determinants against the labeled tuple
/// enumerator.
pub fn coloring_term_suite(instances: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("edgecolor-term");
    let field = Field::new(16)?;
    for i in 0..instances {
        let mut rng = substream(seed, i as u64);
        let mode = if rng.gen_bool(0.5) { ColoringMode::Regular } else { ColoringMode::General };
        let n = rng.gen_range(2..=5);
        let density = rng.gen_range(0.3..0.9);
        let graph = random_graph(&mut rng, n, density);
        if graph.edge_count() > 6 {
            continue;
        }
        let p = rng.gen_range(1..=2);
        let labels = mode.label_count(&graph, p);
        let assignment = ColoringAssignment::sample(&graph, p, labels, field, &mut rng);
        let avoided = rng.gen_range(0..1u64 << labels);
        let sieve = coloring_term(&graph, avoided, &assignment, mode)?;
        let brute = oracle::labeled_matching_tuple_sum_bf(&graph, mode, avoided, &assignment)?;
        report.record(sieve == brute, !brute.is_zero());
    }
    Ok(report)
}

/// Determinant of an assembled squared-diagonal symmetric matrix against the
/// involution sum (order `<= 5`).
pub fn tutte_suite(instances: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("tutte-identity");
    for i in 0..instances {
        let mut rng = substream(seed, i as u64);
        let field = Field::new(*[8u32, 16, 64].choose(&mut rng).expect("non-empty"))?;
        let order = rng.gen_range(1..=5);
        let terms = TutteTerms::new(order, |_, _| {
            let count = rng.gen_range(0..=3);
            field.sample_vec(&mut rng, count)
        });
        let det = terms.matrix(field).determinant();
        let brute = oracle::involution_sum_bf(field, &terms)?;
        report.record(det == brute, !brute.is_zero());
    }
    Ok(report)
}

/// Determinant against the permanent (order `<= 6`).
pub fn permanent_suite(instances: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("det-equals-perm");
    for i in 0..instances {
        let mut rng = substream(seed, i as u64);
        let field = Field::new(*[2u32, 8, 32].choose(&mut rng).expect("non-empty"))?;
        let order = rng.gen_range(1..=6);
        let matrix = FieldMatrix::from_fn(field, order, |_, _| field.sample(&mut rng));
        let perm = oracle::permanent_char2_bf(&matrix)?;
        report.record(matrix.determinant() == perm, !perm.is_zero());
    }
    Ok(report)
}

/// Pairs of independent decision oracles on random instances.
pub fn decision_oracle_suite(instances: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("decision-oracles");
    for i in 0..instances {
        let mut rng = substream(seed, i as u64);
        let n = rng.gen_range(1..=8);
        let density = rng.gen_range(0.2..0.7);
        let graph = random_graph(&mut rng, n, density);
        let k = rng.gen_range(1..=n);
        let path = oracle::has_k_path_bf(&graph, k);
        report.record(path == oracle::has_k_path_permutations(&graph, k)?, path);

        let n = rng.gen_range(3..=10);
        let members = rng.gen_range(0..=8);
        let family = random_set_family(&mut rng, n, 3, members);
        let p = rng.gen_range(1..=3);
        let packs = oracle::has_p_packing_bf(&family, p);
        report.record(packs == oracle::has_p_packing_combinations(&family, p), packs);

        let r = rng.gen_range(1..=4);
        let members = rng.gen_range(0..=8);
        let bip = random_partite_family(&mut rng, 2, r, members);
        let p = rng.gen_range(1..=r);
        let matched = oracle::has_qdim_packing_bf(&bip, p);
        report.record(matched == (oracle::max_bipartite_matching(&bip)? >= p), matched);
    }
    Ok(report)
}

/// Every suite, as run by the command-line `selftest`.
pub fn run_all(instances: usize, seed: u64) -> Result<Vec<SuiteReport>> {
    Ok(vec![
        decision_oracle_suite(instances, seed)?,
        walk_sum_suite(instances, seed)?,
        kpath_suite(instances, seed)?,
        qdmatch_suite(instances, seed)?,
        setpack_suite(instances, seed)?,
        coloring_term_suite(instances, seed)?,
        edgecolor_suite(instances, seed)?,
        tutte_suite(instances, seed)?,
        permanent_suite(instances, seed)?,
    ])
}
