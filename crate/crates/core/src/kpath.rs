//! Projection sieve for k-paths.
//!
//! A random bipartition `(V1, V2)` of the vertices is drawn. Walks from a start
//! vertex `s` are labeled on every occurrence of a `V1` vertex (labels from
//! `K1`) and every occurrence of an edge inside `V2` (labels from `L2`). Summing
//! the walk monomials over label subsets by inclusion-exclusion leaves only
//! bijectively labeled walks; over characteristic 2 the bijectively labeled
//! non-paths cancel in pairs, so what survives is a nonzero polynomial exactly
//! when an admissible k-path from `s` exists.
//!
//! Walks must be `V2 E V1 E V2`-palindromeless: no step may go `a -> b -> a`
//! with `a` in `V2` and `b` in `V1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::combin::{binomial, reciprocal_ceil};
use crate::detect::{
    ceil_log2, check_label_count, substream, sum_allowed, DetectOptions, Detection, SieveEval,
};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::graph::Graph;

/// Fraction of `V1` vertices per path vertex.
pub const GAMMA1: f64 = 0.5;
/// Fraction of `E2` edges per path vertex.
pub const GAMMA2: f64 = 0.207107;

/// Ordered partition of the vertex set into `V1` and `V2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexBipartition {
    in_v1: Vec<bool>,
}

impl VertexBipartition {
    pub fn new(in_v1: Vec<bool>) -> Self {
        VertexBipartition { in_v1 }
    }

    /// Uniform over all `2^n` ordered partitions.
    pub fn sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        VertexBipartition { in_v1: (0..n).map(|_| rng.gen::<bool>()).collect() }
    }

    #[inline]
    pub fn in_v1(&self, v: usize) -> bool {
        self.in_v1[v]
    }

    /// Edge with both ends in `V2`.
    #[inline]
    pub fn in_e2(&self, graph: &Graph, edge: usize) -> bool {
        let (u, v) = graph.edge(edge);
        !self.in_v1[u] && !self.in_v1[v]
    }

    /// Edge with both ends in `V1`.
    pub fn in_e1(&self, graph: &Graph, edge: usize) -> bool {
        let (u, v) = graph.edge(edge);
        self.in_v1[u] && self.in_v1[v]
    }
}

/// `k1` counts occurrences of `V1` vertices and `l2` occurrences of `E2` edges
/// on an admissible walk with `k` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathSieveParams {
    pub k: usize,
    pub k1: usize,
    pub l2: usize,
    pub repetitions: u64,
}

impl PathSieveParams {
    pub fn label_count(&self) -> usize {
        self.k1 + self.l2
    }
}

/// Values for the indeterminates: `x_e` per edge, `y_{v,i}` per vertex and
/// `K1` label, `z_{e,i}` per edge and `L2` label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathAssignment {
    field: Field,
    k1: usize,
    l2: usize,
    x: Vec<FieldElement>,
    y: Vec<FieldElement>,
    z: Vec<FieldElement>,
}

impl PathAssignment {
    pub fn sample<R: Rng + ?Sized>(graph: &Graph, k1: usize, l2: usize, field: Field, rng: &mut R) -> Self {
        let m = graph.edge_count();
        let x = field.sample_vec(rng, m);
        let y = field.sample_vec(rng, graph.vertex_count() * k1);
        let z = field.sample_vec(rng, m * l2);
        PathAssignment { field, k1, l2, x, y, z }
    }

    /// Every indeterminate set to `value`.
    pub fn constant(graph: &Graph, k1: usize, l2: usize, value: FieldElement) -> Self {
        let m = graph.edge_count();
        PathAssignment {
            field: value.field(),
            k1,
            l2,
            x: vec![value; m],
            y: vec![value; graph.vertex_count() * k1],
            z: vec![value; m * l2],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn x(&self, edge: usize) -> FieldElement {
        self.x[edge]
    }

    pub fn y(&self, vertex: usize, label: usize) -> FieldElement {
        self.y[vertex * self.k1 + label]
    }

    pub fn z(&self, edge: usize, label: usize) -> FieldElement {
        self.z[edge * self.l2 + label]
    }

    fn y_row(&self, vertex: usize) -> &[FieldElement] {
        &self.y[vertex * self.k1..(vertex + 1) * self.k1]
    }

    fn z_row(&self, edge: usize) -> &[FieldElement] {
        &self.z[edge * self.l2..(edge + 1) * self.l2]
    }
}

/// Labels excluded from a sieve term: `I1 ⊆ K1` and `J2 ⊆ L2` as bitmasks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AvoidedLabels {
    pub vertex_labels: u64,
    pub edge_labels: u64,
}

/// One symbol of a walk string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkSymbol {
    Vertex(usize),
    Edge(usize),
}

/// True iff the window reads `a e b e a` with `a ∈ V2`, `b ∈ V1`.
pub fn is_v2ev1ev2_palindrome(window: &[WalkSymbol; 5], partition: &VertexBipartition) -> bool {
    use WalkSymbol::{Edge, Vertex};
    match *window {
        [Vertex(t1), Edge(t2), Vertex(t3), Edge(t4), Vertex(t5)] => {
            t1 == t5 && t2 == t4 && !partition.in_v1(t1) && partition.in_v1(t3)
        }
        _ => false,
    }
}

/// Probability that a fixed k-path has exactly `k1` vertices in `V1` and
/// `l2` edges in `E2` under a uniform random bipartition:
/// `2^-k C(k1+1, k-k1-l2) C(k-k1-1, l2)`.
pub fn admissible_probability(k: usize, k1: usize, l2: usize) -> BigRational {
    let (k, k1, l2) = (k as i64, k1 as i64, l2 as i64);
    let count = binomial(k1 + 1, k - k1 - l2) * binomial(k - k1 - 1, l2);
    BigRational::new(count, BigInt::from(1u8) << k as usize)
}

/// True iff a fixed k-path is admissible with positive probability.
pub fn in_admissibility_window(k: usize, k1: usize, l2: usize) -> bool {
    (k1 == k && l2 == 0) || (k1 < k && k1 + l2 < k && k - 1 <= 2 * k1 + l2)
}

/// `k1 = floor(GAMMA1 k)`, `l2 = floor(GAMMA2 k)`, moved to the cheapest
/// admissible pair if that one has probability zero, and
/// `r = ceil(1 / probability)`.
pub fn choose_path_parameters(k: usize) -> PathSieveParams {
    assert!(k >= 1, "k must be positive");
    let mut k1 = k / 2;
    let mut l2 = k * 207_107 / 1_000_000;
    if !in_admissibility_window(k, k1, l2) {
        let cost = |a: usize, b: usize| {
            BigRational::from_integer(BigInt::from(1u8) << (a + b)) / admissible_probability(k, a, b)
        };
        let best = (0..=k)
            .flat_map(|a| (0..k).map(move |b| (a, b)))
            .filter(|&(a, b)| in_admissibility_window(k, a, b))
            .min_by(|&(a, b), &(c, d)| cost(a, b).cmp(&cost(c, d)))
            .expect("k1 = k, l2 = 0 is always admissible");
        (k1, l2) = best;
    }
    let repetitions = reciprocal_ceil(&admissible_probability(k, k1, l2));
    PathSieveParams { k, k1, l2, repetitions }
}

/// Default field: smallest supported degree `>= ceil(log2 6k)`.
pub fn default_field_bits(k: usize) -> u32 {
    ceil_log2(6 * k as u64)
}

/// Sum of the monomials of all labeled admissible k-walks from `s` whose
/// labels avoid `avoided`.
///
/// Forward dynamic program over `(last arc, #V1 occurrences, #E2 occurrences)`.
/// Appending vertex `c` through edge `e` charges `x_e`, the allowed
/// `z_{e,*}` sum when `e ∈ E2`, and the allowed `y_{c,*}` sum when `c ∈ V1`.
pub fn walk_sum_avoiding(
    graph: &Graph,
    s: usize,
    partition: &VertexBipartition,
    params: &PathSieveParams,
    avoided: AvoidedLabels,
    assignment: &PathAssignment,
) -> FieldElement {
    let field = assignment.field();
    let (k, k1, l2) = (params.k, params.k1, params.l2);
    let n = graph.vertex_count();
    let m = graph.edge_count();
    if k == 0 || s >= n {
        return field.zero();
    }

    let vertex_factor: Vec<FieldElement> = (0..n)
        .map(|v| {
            if partition.in_v1(v) {
                sum_allowed(field, assignment.y_row(v), avoided.vertex_labels)
            } else {
                field.one()
            }
        })
        .collect();
    let start_c1 = partition.in_v1(s) as usize;
    if start_c1 > k1 {
        return field.zero();
    }
    if k == 1 {
        return if start_c1 == k1 && l2 == 0 { vertex_factor[s] } else { field.zero() };
    }

    // arc 2e runs low -> high endpoint of edge e, arc 2e+1 the other way
    let head = |arc: usize| {
        let (u, v) = graph.edge(arc / 2);
        if arc.is_multiple_of(2) {
            v
        } else {
            u
        }
    };
    let arc_of = |from: usize, edge: usize| 2 * edge + (graph.edge(edge).0 != from) as usize;
    let arc_weight: Vec<FieldElement> = (0..2 * m)
        .map(|arc| {
            let e = arc / 2;
            let mut w = assignment.x(e) * vertex_factor[head(arc)];
            if partition.in_e2(graph, e) {
                w *= sum_allowed(field, assignment.z_row(e), avoided.edge_labels);
            }
            w
        })
        .collect();
    let arc_c1: Vec<usize> = (0..2 * m).map(|a| partition.in_v1(head(a)) as usize).collect();
    let arc_c2: Vec<usize> = (0..2 * m).map(|a| partition.in_e2(graph, a / 2) as usize).collect();

    let width = (k1 + 1) * (l2 + 1);
    let slot = |c1: usize, c2: usize| c1 * (l2 + 1) + c2;
    let start_value = vertex_factor[s];
    let mut current = vec![field.zero(); 2 * m * width];
    let mut live: Vec<usize> = Vec::new();
    for &(_, e) in graph.neighbors(s) {
        let arc = arc_of(s, e);
        let c1 = start_c1 + arc_c1[arc];
        let c2 = arc_c2[arc];
        if c1 <= k1 && c2 <= l2 {
            current[arc * width + slot(c1, c2)] = start_value * arc_weight[arc];
            live.push(arc);
        }
    }

    let mut next = vec![field.zero(); 2 * m * width];
    let mut next_live = Vec::new();
    let mut touched = vec![false; 2 * m];
    for _ in 2..k {
        for &arc in &live {
            let prev = graph.edge(arc / 2);
            let prev = if arc.is_multiple_of(2) { prev.0 } else { prev.1 };
            let u = head(arc);
            let bounce_forbidden = !partition.in_v1(prev) && partition.in_v1(u);
            for &(w, e) in graph.neighbors(u) {
                if w == prev && bounce_forbidden {
                    continue;
                }
                let out = arc_of(u, e);
                let (dc1, dc2) = (arc_c1[out], arc_c2[out]);
                if dc1 > k1 || dc2 > l2 {
                    continue;
                }
                let weight = arc_weight[out];
                let mut any = false;
                for c1 in 0..=k1 - dc1 {
                    for c2 in 0..=l2 - dc2 {
                        let v = current[arc * width + slot(c1, c2)];
                        if v.is_zero() {
                            continue;
                        }
                        next[out * width + slot(c1 + dc1, c2 + dc2)] += v * weight;
                        any = true;
                    }
                }
                if any && !touched[out] {
                    touched[out] = true;
                    next_live.push(out);
                }
            }
        }
        for &arc in &live {
            current[arc * width..(arc + 1) * width].fill(field.zero());
        }
        std::mem::swap(&mut current, &mut next);
        std::mem::swap(&mut live, &mut next_live);
        next_live.clear();
        for &arc in &live {
            touched[arc] = false;
        }
    }

    live.iter().fold(field.zero(), |acc, &arc| acc + current[arc * width + slot(k1, l2)])
}

/// Inclusion-exclusion over every `I1 ⊆ K1` and `J2 ⊆ L2` (signs vanish in
/// characteristic 2). Equals the bijectively labeled admissible k-path
/// polynomial from `s`, evaluated at `assignment`.
pub fn path_sieve_eval(
    graph: &Graph,
    s: usize,
    partition: &VertexBipartition,
    params: &PathSieveParams,
    assignment: &PathAssignment,
) -> SieveEval {
    let field = assignment.field();
    let mut value = field.zero();
    let mut label_subsets = 0u64;
    for vertex_labels in 0..1u64 << params.k1 {
        for edge_labels in 0..1u64 << params.l2 {
            let avoided = AvoidedLabels { vertex_labels, edge_labels };
            value += walk_sum_avoiding(graph, s, partition, params, avoided, assignment);
            label_subsets += 1;
        }
    }
    SieveEval { value, label_subsets }
}

/// Decides whether `graph` has a simple path on `k` vertices. YES answers are
/// always correct; a NO answer misses a fixed path with probability at most
/// `1 - (1 - 1/e)/2` under the default parameters.
///
/// Repetition `i` draws, from `substream(seed, i)`, first the bipartition and
/// then the assignment (`x`, `y`, `z` in that order); every start vertex is
/// tried against the same draw.
pub fn detect_k_path(
    graph: &Graph,
    k: usize,
    seed: u64,
    options: DetectOptions,
) -> Result<Detection<PathSieveParams>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let mut params = choose_path_parameters(k);
    if let Some(r) = options.repetitions {
        params.repetitions = r;
    }
    check_label_count(params.label_count())?;
    let field = options.field_or(default_field_bits(k))?;
    let n = graph.vertex_count();
    if k > n {
        return Ok(Detection::trivial(false, params, params.repetitions, field, params.label_count()));
    }

    let mut report = Detection::trivial(false, params, params.repetitions, field, params.label_count());
    for rep in 0..params.repetitions {
        let mut rng = substream(seed, rep);
        let partition = VertexBipartition::sample(n, &mut rng);
        let assignment = PathAssignment::sample(graph, params.k1, params.l2, field, &mut rng);
        report.repetitions_run += 1;
        for s in 0..n {
            let eval = path_sieve_eval(graph, s, &partition, &params, &assignment);
            report.evaluations += 1;
            report.label_subsets += eval.label_subsets;
            if !eval.value.is_zero() {
                report.decision = true;
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Zero-probability check helper used by tests and the demo.
pub fn probability_is_zero(k: usize, k1: usize, l2: usize) -> bool {
    admissible_probability(k, k1, l2).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use WalkSymbol::{Edge, Vertex};

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    /// Counts membership strings of length k over {1,2} with k1 ones and
    /// l2 adjacent "22" pairs.
    fn enumerate_strings(k: usize, k1: usize, l2: usize) -> BigRational {
        let hits = (0u32..1 << k)
            .filter(|&mask| {
                let ones = mask.count_ones() as usize;
                let twos = (0..k.saturating_sub(1))
                    .filter(|&i| mask >> i & 1 == 0 && mask >> (i + 1) & 1 == 0)
                    .count();
                ones == k1 && twos == l2
            })
            .count();
        ratio(hits as i64, 1 << k)
    }

    #[test]
    fn probability_examples() {
        assert_eq!(admissible_probability(3, 3, 0), ratio(1, 8));
        assert_eq!(admissible_probability(2, 0, 1), ratio(1, 4));
        assert_eq!(enumerate_strings(5, 2, 1), ratio(3, 16));
        assert_eq!(admissible_probability(5, 2, 1), ratio(3, 16));
    }

    #[test]
    fn probability_matches_string_enumeration() {
        for k in 1..=12 {
            for k1 in 0..=k {
                for l2 in 0..k {
                    assert_eq!(admissible_probability(k, k1, l2), enumerate_strings(k, k1, l2), "{k} {k1} {l2}");
                    assert_eq!(in_admissibility_window(k, k1, l2), !probability_is_zero(k, k1, l2));
                }
            }
        }
    }

    #[test]
    fn probabilities_sum_to_one() {
        for k in 1..=20 {
            let total = (0..=k)
                .flat_map(|a| (0..k).map(move |b| (a, b)))
                .fold(BigRational::zero(), |acc, (a, b)| acc + admissible_probability(k, a, b));
            assert_eq!(total, BigRational::one(), "k={k}");
        }
    }

    #[test]
    fn parameter_choices() {
        let p = choose_path_parameters(100);
        assert_eq!((p.k1, p.l2), (50, 20));
        let p = choose_path_parameters(5);
        assert_eq!((p.k1, p.l2, p.repetitions), (2, 1, 6));
        let p = choose_path_parameters(1);
        assert!(p.k1 <= 1 && p.l2 == 0);
        assert_eq!(p.repetitions, 2);
        for k in 1..=40 {
            let p = choose_path_parameters(k);
            assert!(in_admissibility_window(k, p.k1, p.l2), "k={k}");
        }
    }

    #[test]
    fn palindrome_windows() {
        // vertices 0..3, c=0 in V1, f=1 in V2
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let part = VertexBipartition::new(vec![true, false, false]);
        let cf = g.edge_id(0, 1).unwrap();
        let w = [Vertex(1), Edge(cf), Vertex(0), Edge(cf), Vertex(1)];
        assert!(is_v2ev1ev2_palindrome(&w, &part));
        let fg = g.edge_id(1, 2).unwrap();
        let w = [Vertex(0), Edge(cf), Vertex(1), Edge(fg), Vertex(2)];
        assert!(!is_v2ev1ev2_palindrome(&w, &part));
        // middle in V2
        let w = [Vertex(2), Edge(fg), Vertex(1), Edge(fg), Vertex(2)];
        assert!(!is_v2ev1ev2_palindrome(&w, &part));
    }

    #[test]
    fn single_edge_all_ones_cancels() {
        let g = Graph::path(2);
        let part = VertexBipartition::new(vec![true, true]);
        let f = Field::new(8).unwrap();
        let params = PathSieveParams { k: 2, k1: 2, l2: 0, repetitions: 1 };
        let a = PathAssignment::constant(&g, 2, 0, f.one());
        assert!(walk_sum_avoiding(&g, 0, &part, &params, AvoidedLabels::default(), &a).is_zero());
    }

    #[test]
    fn single_vertex_walk() {
        let g = Graph::new(1, []).unwrap();
        let f = Field::new(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let part = VertexBipartition::new(vec![true]);
        let a = PathAssignment::sample(&g, 1, 0, f, &mut rng);
        let params = PathSieveParams { k: 1, k1: 1, l2: 0, repetitions: 1 };
        assert_eq!(walk_sum_avoiding(&g, 0, &part, &params, AvoidedLabels::default(), &a), a.y(0, 0));
        let eval = path_sieve_eval(&g, 0, &part, &params, &a);
        // I1 = {} gives y, I1 = {0} gives 0
        assert_eq!(eval.value, a.y(0, 0));
        assert_eq!(eval.label_subsets, 2);
    }

    #[test]
    fn no_walks_means_zero() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let f = Field::new(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let params = PathSieveParams { k: 3, k1: 1, l2: 0, repetitions: 1 };
        let part = VertexBipartition::new(vec![false, true, false]);
        let a = PathAssignment::sample(&g, 1, 0, f, &mut rng);
        assert!(path_sieve_eval(&g, 2, &part, &params, &a).value.is_zero());
    }

    #[test]
    fn detection_small_graphs() {
        let opts = DetectOptions::default();
        assert!(detect_k_path(&Graph::path(5), 5, 1, opts).unwrap().decision);
        for seed in 0..20 {
            assert!(!detect_k_path(&Graph::star(3), 4, seed, opts).unwrap().decision);
        }
        let r = detect_k_path(&Graph::path(3), 4, 0, opts).unwrap();
        assert!(!r.decision);
        assert_eq!(r.repetitions_run, 0);
        assert!(detect_k_path(&Graph::path(3), 0, 0, opts).is_err());
    }
}
