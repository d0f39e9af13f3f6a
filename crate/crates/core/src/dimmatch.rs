//! Determinant sieve for q-dimensional p-packings.
//!
//! The first two coordinates are handled by Edmonds's symbolic determinant
//! over `U1 x U2`; only the remaining `q - 2` coordinates of each member are
//! labeled, with `p(q-2)` labels in total. The coefficient of `w^p` in
//! `det E(J)`, summed over all `J ⊆ L`, is nonzero exactly when the
//! bijectively labeled p-packing polynomial is.

use rand::Rng;

use crate::detect::{
    ceil_log2, check_label_count, substream, sum_allowed, DetectOptions, Detection, SieveEval,
};
use crate::error::{Error, Result};
use crate::family::PartiteFamily;
use crate::gf::{Field, FieldElement};
use crate::linalg::{extract_uni_coefficients, FieldMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QdimParams {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub repetitions: u64,
}

impl QdimParams {
    /// `|L| = p(q-2)`.
    pub fn label_count(&self) -> usize {
        self.p * (self.q - 2)
    }
}

/// Values for `x_A` per member, `y_{u1,u2}` per `U1 x U2` pair, and
/// `z_{u,l}` per element of `U3 ∪ .. ∪ Uq` and label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QdimAssignment {
    field: Field,
    r: usize,
    labels: usize,
    x: Vec<FieldElement>,
    y: Vec<FieldElement>,
    z: Vec<FieldElement>,
}

impl QdimAssignment {
    /// Draws `x`, then `y`, then `z`.
    pub fn sample<R: Rng + ?Sized>(family: &PartiteFamily, labels: usize, field: Field, rng: &mut R) -> Self {
        let (q, r) = (family.dimensions(), family.part_size());
        let x = field.sample_vec(rng, family.len());
        let y = field.sample_vec(rng, r * r);
        let z = field.sample_vec(rng, (q - 2) * r * labels);
        QdimAssignment { field, r, labels, x, y, z }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn label_count(&self) -> usize {
        self.labels
    }

    pub fn x(&self, set: usize) -> FieldElement {
        self.x[set]
    }

    /// `y_{u1,u2}` by coordinates `u1, u2` in `0..r`.
    pub fn y(&self, u1: usize, u2: usize) -> FieldElement {
        self.y[u1 * self.r + u2]
    }

    /// `z_{u,l}` for a global element `u` outside `U1 ∪ U2`.
    pub fn z(&self, u: usize, label: usize) -> FieldElement {
        self.z[(u - 2 * self.r) * self.labels + label]
    }

    fn z_row(&self, u: usize) -> &[FieldElement] {
        let start = (u - 2 * self.r) * self.labels;
        &self.z[start..start + self.labels]
    }
}

/// Per-member weight `x_A ∏_{u ∈ A \ {u1,u2}} Σ_{l ∉ J} z_{u,l}`.
fn member_weights(family: &PartiteFamily, avoided: u64, assignment: &QdimAssignment) -> Vec<FieldElement> {
    let field = assignment.field();
    family
        .sets()
        .iter()
        .enumerate()
        .map(|(a, set)| {
            set[2..]
                .iter()
                .fold(assignment.x(a), |acc, &u| acc * sum_allowed(field, assignment.z_row(u), avoided))
        })
        .collect()
}

/// `y_{u1,u2}` and `Σ_{A ⊇ {u1,u2}} weight(A)` per cell.
fn edmonds_parts(
    family: &PartiteFamily,
    avoided: u64,
    assignment: &QdimAssignment,
) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let r = family.part_size();
    let field = assignment.field();
    let mut inner = vec![field.zero(); r * r];
    for (a, weight) in member_weights(family, avoided, assignment).into_iter().enumerate() {
        let (u1, u2) = (family.coordinate(a, 0), family.coordinate(a, 1));
        inner[u1 * r + u2] += weight;
    }
    let ys = (0..r * r).map(|i| assignment.y(i / r, i % r)).collect();
    (ys, inner)
}

fn assemble(field: Field, r: usize, ys: &[FieldElement], inner: &[FieldElement], w: FieldElement) -> FieldMatrix {
    FieldMatrix::from_fn(field, r, |i, j| ys[i * r + j] * (field.one() + w * inner[i * r + j]))
}

/// `E(J)` at the point `w`: rows `U1`, columns `U2`, entry
/// `y_{u1,u2} (1 + w Σ_{A ⊇ {u1,u2}} x_A ∏_{u ∈ A \ {u1,u2}} Σ_{l ∉ J} z_{u,l})`.
pub fn build_edmonds_matrix(
    family: &PartiteFamily,
    avoided: u64,
    assignment: &QdimAssignment,
    w: FieldElement,
) -> FieldMatrix {
    let (ys, inner) = edmonds_parts(family, avoided, assignment);
    assemble(assignment.field(), family.part_size(), &ys, &inner, w)
}

/// `Σ_{J ⊆ L} [w^p] det E(J)`; equals the bijectively labeled p-packing
/// polynomial evaluated at `assignment`.
pub fn qdim_sieve_eval(family: &PartiteFamily, p: usize, assignment: &QdimAssignment) -> Result<SieveEval> {
    let field = assignment.field();
    let r = family.part_size();
    if !field.exceeds(r as u64) {
        return Err(Error::InsufficientField { degree: field.degree(), needed: r as u64 + 1 });
    }
    let labels = p * (family.dimensions() - 2);
    if assignment.label_count() != labels {
        return Err(Error::InvalidParameter(format!(
            "assignment has {} labels, expected {labels}",
            assignment.label_count()
        )));
    }
    check_label_count(labels)?;
    let mut value = field.zero();
    let mut label_subsets = 0u64;
    for avoided in 0..1u64 << labels {
        label_subsets += 1;
        if p > r {
            continue;
        }
        let (ys, inner) = edmonds_parts(family, avoided, assignment);
        let coefficients =
            extract_uni_coefficients(field, |w| assemble(field, r, &ys, &inner, w).determinant(), r)?;
        value += coefficients[p];
    }
    Ok(SieveEval { value, label_subsets })
}

/// Default field: smallest supported degree `>= ceil(log2 2(pq + r))`.
pub fn default_field_bits(p: usize, q: usize, r: usize) -> u32 {
    ceil_log2(2 * (p * q + r) as u64)
}

/// Decides whether `family` contains `p` pairwise disjoint members. YES
/// answers are always correct; each repetition misses a packing with
/// probability at most 1/2.
pub fn detect_qdim_packing(
    family: &PartiteFamily,
    p: usize,
    seed: u64,
    options: DetectOptions,
) -> Result<Detection<QdimParams>> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    let (q, r) = (family.dimensions(), family.part_size());
    let params = QdimParams { p, q, r, repetitions: options.repetitions.unwrap_or(2) };
    let labels = params.label_count();
    check_label_count(labels)?;
    let field = options.field_or(default_field_bits(p, q, r))?;
    let mut report = Detection::trivial(false, params, params.repetitions, field, labels);
    if p > r || family.len() < p {
        return Ok(report);
    }
    for rep in 0..params.repetitions {
        let mut rng = substream(seed, rep);
        let assignment = QdimAssignment::sample(family, labels, field, &mut rng);
        let eval = qdim_sieve_eval(family, p, &assignment)?;
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

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fam(q: usize, r: usize, coords: &[&[usize]]) -> PartiteFamily {
        let members: Vec<Vec<usize>> = coords.iter().map(|c| c.to_vec()).collect();
        PartiteFamily::from_coordinates(q, r, &members).unwrap()
    }

    #[test]
    fn empty_family_gives_bare_y() {
        let f = Field::new(8).unwrap();
        let family = fam(3, 2, &[]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = QdimAssignment::sample(&family, 2, f, &mut rng);
        let w = f.sample(&mut rng);
        let e = build_edmonds_matrix(&family, 0, &a, w);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(e.get(i, j), a.y(i, j));
            }
        }
    }

    #[test]
    fn all_labels_avoided_gives_bare_y() {
        let f = Field::new(8).unwrap();
        let family = fam(3, 2, &[&[0, 0, 0], &[1, 1, 1]]);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = QdimAssignment::sample(&family, 2, f, &mut rng);
        let e = build_edmonds_matrix(&family, 0b11, &a, f.generator());
        assert_eq!(e.get(0, 0), a.y(0, 0));
        assert_eq!(e.get(1, 1), a.y(1, 1));
    }

    #[test]
    fn bipartite_entry_shape() {
        let f = Field::new(8).unwrap();
        let family = fam(2, 1, &[&[0, 0]]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = QdimAssignment::sample(&family, 0, f, &mut rng);
        let w = f.sample(&mut rng);
        let e = build_edmonds_matrix(&family, 0, &a, w);
        assert_eq!(e.get(0, 0), a.y(0, 0) * (f.one() + w * a.x(0)));
        // [w^1] det = y x
        let eval = qdim_sieve_eval(&family, 1, &a).unwrap();
        assert_eq!(eval.value, a.y(0, 0) * a.x(0));
        assert_eq!(eval.label_subsets, 1);
    }

    #[test]
    fn shared_third_coordinate_cancels() {
        let f = Field::new(16).unwrap();
        let family = fam(3, 2, &[&[0, 0, 0], &[1, 1, 0]]);
        for seed in 0..50 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = QdimAssignment::sample(&family, 2, f, &mut rng);
            let eval = qdim_sieve_eval(&family, 2, &a).unwrap();
            assert!(eval.value.is_zero());
            assert_eq!(eval.label_subsets, 4);
        }
    }

    #[test]
    fn detection_examples() {
        let opts = DetectOptions::default();
        assert!(detect_qdim_packing(&fam(3, 1, &[&[0, 0, 0]]), 1, 0, opts).unwrap().decision);
        for seed in 0..30 {
            let r = detect_qdim_packing(&fam(3, 2, &[&[0, 0, 0], &[1, 1, 0]]), 2, seed, opts).unwrap();
            assert!(!r.decision);
            assert_eq!(r.repetitions_run, 2);
        }
        let r = detect_qdim_packing(&fam(3, 1, &[&[0, 0, 0]]), 2, 0, opts).unwrap();
        assert!(!r.decision && r.repetitions_run == 0);
    }

    #[test]
    fn small_field_is_rejected() {
        let f = Field::new(2).unwrap();
        let family = fam(2, 4, &[&[0, 0]]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let a = QdimAssignment::sample(&family, 0, f, &mut rng);
        assert!(matches!(qdim_sieve_eval(&family, 1, &a), Err(Error::InsufficientField { .. })));
    }
}
