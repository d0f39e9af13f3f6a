//! Determinant sieve for edge colouring.
//!
//! A d-regular graph is d-edge-colourable iff it has `d - 1` pairwise
//! edge-disjoint perfect matchings. Each of `p` independent Tutte matrices
//! generates the perfect matchings of the graph; the label sieve over
//! `pn/2` labels removes tuples that reuse an edge.
//!
//! For graphs that are not regular, `p = Δ` matchings (not necessarily
//! perfect) are generated with unit diagonals and `|L| = m`. The off-diagonal
//! entries also carry a weight `w`, and only the coefficient of `w^{2m}` is
//! kept, so every surviving labeling uses exactly `m` edge occurrences.
//! Without that restriction a tuple that puts one edge into three matchings
//! and misses another edge can survive the sieve with odd multiplicity.

use rand::Rng;

use crate::detect::{
    ceil_log2, check_label_count, substream, sum_allowed, DetectOptions, Detection, SieveEval,
};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::graph::Graph;
use crate::linalg::{extract_uni_coefficients, FieldMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColoringMode {
    /// Perfect matchings, zero diagonal, `|L| = pn/2`.
    Regular,
    /// Matchings, unit diagonal, `|L| = m`.
    General,
}

impl ColoringMode {
    pub fn label_count(self, graph: &Graph, p: usize) -> usize {
        match self {
            ColoringMode::Regular => p * graph.vertex_count() / 2,
            ColoringMode::General => graph.edge_count(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColoringParams {
    pub mode: ColoringMode,
    /// Number of colours asked for: `d` for regular graphs, `Δ` otherwise.
    pub colors: usize,
    /// Number of Tutte matrices: `d - 1` or `Δ`.
    pub p: usize,
    pub repetitions: u64,
}

/// Values for `x_{e,i}` per edge and matching index and `y_{e,l}` per edge
/// and label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringAssignment {
    field: Field,
    p: usize,
    labels: usize,
    x: Vec<FieldElement>,
    y: Vec<FieldElement>,
}

impl ColoringAssignment {
    /// Draws `x` (edge-major), then `y`.
    pub fn sample<R: Rng + ?Sized>(graph: &Graph, p: usize, labels: usize, field: Field, rng: &mut R) -> Self {
        let m = graph.edge_count();
        let x = field.sample_vec(rng, m * p);
        let y = field.sample_vec(rng, m * labels);
        ColoringAssignment { field, p, labels, x, y }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn label_count(&self) -> usize {
        self.labels
    }

    pub fn matchings(&self) -> usize {
        self.p
    }

    pub fn x(&self, edge: usize, matching: usize) -> FieldElement {
        self.x[edge * self.p + matching]
    }

    pub fn y(&self, edge: usize, label: usize) -> FieldElement {
        self.y[edge * self.labels + label]
    }

    fn y_row(&self, edge: usize) -> &[FieldElement] {
        &self.y[edge * self.labels..(edge + 1) * self.labels]
    }
}

fn label_sums(graph: &Graph, avoided: u64, assignment: &ColoringAssignment) -> Vec<FieldElement> {
    (0..graph.edge_count()).map(|e| sum_allowed(assignment.field(), assignment.y_row(e), avoided)).collect()
}

fn matrix_from_sums(
    graph: &Graph,
    matching: usize,
    sums: &[FieldElement],
    assignment: &ColoringAssignment,
    mode: ColoringMode,
    w: FieldElement,
) -> FieldMatrix {
    let field = assignment.field();
    let mut t = match mode {
        ColoringMode::Regular => FieldMatrix::zeros(field, graph.vertex_count()),
        ColoringMode::General => FieldMatrix::identity(field, graph.vertex_count()),
    };
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        let entry = w * assignment.x(e, matching) * sums[e];
        t.set(u, v, entry);
        t.set(v, u, entry);
    }
    t
}

/// `T^(i)(J)`: entry `(u, v)` is `x_{uv,i} Σ_{l ∉ J} y_{uv,l}` on edges and
/// zero elsewhere; the diagonal is zero (`Regular`) or one (`General`).
pub fn color_matrix(
    graph: &Graph,
    matching: usize,
    avoided: u64,
    assignment: &ColoringAssignment,
    mode: ColoringMode,
) -> FieldMatrix {
    color_matrix_weighted(graph, matching, avoided, assignment, mode, assignment.field().one())
}

/// [`color_matrix`] with every edge entry multiplied by `w`.
pub fn color_matrix_weighted(
    graph: &Graph,
    matching: usize,
    avoided: u64,
    assignment: &ColoringAssignment,
    mode: ColoringMode,
    w: FieldElement,
) -> FieldMatrix {
    let sums = label_sums(graph, avoided, assignment);
    matrix_from_sums(graph, matching, &sums, assignment, mode, w)
}

/// Per-`J` term of the sieve: `∏_i det T^(i)(J)` for `Regular`, and
/// `[w^{2m}] ∏_i det T^(i)(J; w)` for `General`.
pub fn coloring_term(
    graph: &Graph,
    avoided: u64,
    assignment: &ColoringAssignment,
    mode: ColoringMode,
) -> Result<FieldElement> {
    let field = assignment.field();
    let p = assignment.matchings();
    let sums = label_sums(graph, avoided, assignment);
    match mode {
        ColoringMode::Regular => {
            let mut product = field.one();
            for i in 0..p {
                product *= matrix_from_sums(graph, i, &sums, assignment, mode, field.one()).determinant();
                if product.is_zero() {
                    break;
                }
            }
            Ok(product)
        }
        ColoringMode::General => {
            let n = graph.vertex_count();
            let target = 2 * graph.edge_count();
            let mut product = vec![field.zero(); target + 1];
            product[0] = field.one();
            for i in 0..p {
                let det = extract_uni_coefficients(
                    field,
                    |w| matrix_from_sums(graph, i, &sums, assignment, mode, w).determinant(),
                    n,
                )?;
                let mut next = vec![field.zero(); target + 1];
                for (a, &pa) in product.iter().enumerate() {
                    if pa.is_zero() {
                        continue;
                    }
                    for (b, &db) in det.iter().enumerate().take(target + 1 - a) {
                        next[a + b] += pa * db;
                    }
                }
                product = next;
            }
            Ok(product[target])
        }
    }
}

/// `Σ_{J ⊆ L}` of [`coloring_term`]; equals the polynomial over bijectively
/// labeled p-tuples of pairwise edge-disjoint (perfect) matchings, evaluated
/// at `assignment`.
pub fn coloring_sieve_eval(graph: &Graph, mode: ColoringMode, assignment: &ColoringAssignment) -> Result<SieveEval> {
    let p = assignment.matchings();
    let labels = mode.label_count(graph, p);
    if assignment.label_count() != labels {
        return Err(Error::InvalidParameter(format!(
            "assignment has {} labels, expected {labels}",
            assignment.label_count()
        )));
    }
    check_label_count(labels)?;
    if mode == ColoringMode::General && !assignment.field().exceeds(graph.vertex_count() as u64) {
        return Err(Error::InsufficientField {
            degree: assignment.field().degree(),
            needed: graph.vertex_count() as u64 + 1,
        });
    }
    let mut value = assignment.field().zero();
    let mut label_subsets = 0u64;
    for avoided in 0..1u64 << labels {
        label_subsets += 1;
        value += coloring_term(graph, avoided, assignment, mode)?;
    }
    Ok(SieveEval { value, label_subsets })
}

/// Field for the regular variant: `b >= ceil(log2 4pn)`.
pub fn regular_field_bits(p: usize, n: usize) -> u32 {
    ceil_log2(4 * (p * n) as u64)
}

/// Field for the general variant: `b >= ceil(log2 8m)` and `2^b > n`.
pub fn general_field_bits(m: usize, n: usize) -> u32 {
    ceil_log2(8 * m as u64).max(ceil_log2(n as u64 + 1))
}

fn run(
    graph: &Graph,
    params: ColoringParams,
    field: Field,
    seed: u64,
) -> Result<Detection<ColoringParams>> {
    let labels = params.mode.label_count(graph, params.p);
    check_label_count(labels)?;
    let mut report = Detection::trivial(false, params, params.repetitions, field, labels);
    for rep in 0..params.repetitions {
        let mut rng = substream(seed, rep);
        let assignment = ColoringAssignment::sample(graph, params.p, labels, field, &mut rng);
        let eval = coloring_sieve_eval(graph, params.mode, &assignment)?;
        report.repetitions_run += 1;
        report.evaluations += 1;
        report.label_subsets += eval.label_subsets;
        if !eval.value.is_zero() {
            report.decision = true;
            break;
        }
    }
    Ok(report)
}

/// Decides whether a d-regular graph is d-edge-colourable. YES answers are
/// always correct. Non-regular input is an error; odd order with `d >= 1` is
/// NO without sampling.
pub fn detect_edge_coloring(graph: &Graph, seed: u64, options: DetectOptions) -> Result<Detection<ColoringParams>> {
    let d = graph.regular_degree().ok_or(Error::NotRegular)?;
    let n = graph.vertex_count();
    let p = d.saturating_sub(1);
    let params =
        ColoringParams { mode: ColoringMode::Regular, colors: d, p, repetitions: options.repetitions.unwrap_or(2) };
    let field = options.field_or(regular_field_bits(p, n))?;
    if d >= 1 && n % 2 == 1 {
        return Ok(Detection::trivial(false, params, params.repetitions, field, 0));
    }
    if p == 0 {
        return Ok(Detection::trivial(true, params, params.repetitions, field, 0));
    }
    run(graph, params, field, seed)
}

/// Decides whether any simple graph is Δ-edge-colourable, that is, of class
/// one. YES answers are always correct.
pub fn detect_edge_coloring_general(
    graph: &Graph,
    seed: u64,
    options: DetectOptions,
) -> Result<Detection<ColoringParams>> {
    let delta = graph.max_degree();
    let params = ColoringParams {
        mode: ColoringMode::General,
        colors: delta,
        p: delta,
        repetitions: options.repetitions.unwrap_or(2),
    };
    let field = options.field_or(general_field_bits(graph.edge_count(), graph.vertex_count()))?;
    if graph.edge_count() == 0 {
        return Ok(Detection::trivial(true, params, params.repetitions, field, 0));
    }
    run(graph, params, field, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assignment(graph: &Graph, p: usize, labels: usize, seed: u64) -> ColoringAssignment {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        ColoringAssignment::sample(graph, p, labels, Field::new(16).unwrap(), &mut rng)
    }

    #[test]
    fn matrix_cases() {
        let empty = Graph::new(3, []).unwrap();
        let a = assignment(&empty, 1, 0, 0);
        assert!(color_matrix(&empty, 0, 0, &a, ColoringMode::Regular).determinant().is_zero());

        let edge = Graph::path(2);
        let a = assignment(&edge, 1, 1, 1);
        let t = color_matrix(&edge, 0, 0, &a, ColoringMode::Regular);
        assert!(t.is_symmetric());
        assert_eq!(t.determinant(), (a.x(0, 0) * a.y(0, 0)).square());
        assert!(color_matrix(&edge, 0, 1, &a, ColoringMode::Regular).determinant().is_zero());
        assert!(color_matrix(&edge, 0, 1, &a, ColoringMode::General).determinant().is_one());
    }

    #[test]
    fn odd_order_vanishes() {
        let g = Graph::cycle(5);
        for seed in 0..10 {
            let a = assignment(&g, 1, 2, seed);
            assert!(coloring_sieve_eval(&g, ColoringMode::Regular, &a).unwrap().value.is_zero());
        }
    }

    #[test]
    fn single_matching_graph() {
        // two disjoint edges, p = 1, two labels
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let a = assignment(&g, 1, 2, 7);
        let eval = coloring_sieve_eval(&g, ColoringMode::Regular, &a).unwrap();
        let base = (a.x(0, 0) * a.x(1, 0)).square();
        let expected = base * ((a.y(0, 0) * a.y(1, 1)).square() + (a.y(0, 1) * a.y(1, 0)).square());
        assert_eq!(eval.value, expected);
        assert_eq!(eval.label_subsets, 4);
    }

    #[test]
    fn desk_instances() {
        let opts = DetectOptions::default();
        assert!(detect_edge_coloring(&Graph::complete(4), 0, opts).unwrap().decision);
        assert!(detect_edge_coloring(&Graph::complete_bipartite(3, 3), 0, opts).unwrap().decision);
        assert!(matches!(detect_edge_coloring(&Graph::path(3), 0, opts), Err(Error::NotRegular)));
        assert!(!detect_edge_coloring(&Graph::complete(3), 0, opts).unwrap().decision);
        assert!(detect_edge_coloring(&Graph::path(2), 0, opts).unwrap().decision);
    }

    #[test]
    fn general_instances() {
        let opts = DetectOptions::default();
        assert!(detect_edge_coloring_general(&Graph::path(3), 0, opts).unwrap().decision);
        assert!(detect_edge_coloring_general(&Graph::path(2), 0, opts).unwrap().decision);
        for seed in 0..20 {
            assert!(!detect_edge_coloring_general(&Graph::complete(3), seed, opts).unwrap().decision);
        }
    }

    /// K4 with edge 0-1 subdivided (class two, overfull) next to a disjoint
    /// edge 5-6.
    fn unweighted_counterexample() -> Graph {
        Graph::new(7, [(0, 4), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (5, 6)]).unwrap()
    }

    #[test]
    fn weight_restriction_is_needed() {
        let g = unweighted_counterexample();
        let (p, m) = (g.max_degree(), g.edge_count());
        let mut unweighted_nonzero = 0;
        for seed in 0..5 {
            let a = assignment(&g, p, m, seed);
            let mut unweighted = a.field().zero();
            for avoided in 0..1u64 << m {
                let mut product = a.field().one();
                for i in 0..p {
                    product *= color_matrix(&g, i, avoided, &a, ColoringMode::General).determinant();
                }
                unweighted += product;
            }
            unweighted_nonzero += !unweighted.is_zero() as usize;
            assert!(coloring_sieve_eval(&g, ColoringMode::General, &a).unwrap().value.is_zero());
        }
        assert!(unweighted_nonzero > 0);
    }
}
