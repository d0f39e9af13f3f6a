//! Projection-determinant sieve for p-packings of q-sets.
//!
//! A random `(n1, n2)`-partition `(U1, U2)` of the ground set is drawn. Members
//! meeting `U1` in one or two points are generated by a Tutte matrix over `U1`
//! (squared entries on the diagonal); members avoiding `U1` by a plain
//! product. Only the `U2` elements of each member are labeled, with
//! `q p0 + (q-1) p1 + (q-2) p2` labels in total.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::combin::{binomial, reciprocal_ceil};
use crate::detect::{
    ceil_log2, check_label_count, substream, sum_allowed, DetectOptions, Detection, SieveEval, MAX_LABELS,
};
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::gf::{Field, FieldElement};
use crate::linalg::{extract_coefficient, CoefficientQuery, FieldMatrix};

/// Ordered partition `(U1, U2)` of `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundBipartition {
    in_u1: Vec<bool>,
    u1: Vec<usize>,
}

impl GroundBipartition {
    pub fn new(n: usize, u1: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut in_u1 = vec![false; n];
        for u in u1 {
            if u >= n || in_u1[u] {
                return Err(Error::InvalidParameter(format!("bad U1 element {u}")));
            }
            in_u1[u] = true;
        }
        let u1 = (0..n).filter(|&u| in_u1[u]).collect();
        Ok(GroundBipartition { in_u1, u1 })
    }

    /// Uniform over the `C(n, n1)` partitions with `|U1| = n1`: shuffle the
    /// ground set and keep the first `n1` elements.
    pub fn sample<R: Rng + ?Sized>(n: usize, n1: usize, rng: &mut R) -> Self {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        GroundBipartition::new(n, order.into_iter().take(n1)).expect("shuffle yields distinct elements")
    }

    pub fn in_u1(&self, u: usize) -> bool {
        self.in_u1[u]
    }

    /// Elements of `U1` in increasing order; row `i` of the Tutte matrix is
    /// `u1()[i]`.
    pub fn u1(&self) -> &[usize] {
        &self.u1
    }

    pub fn n1(&self) -> usize {
        self.u1.len()
    }

    /// `|A ∩ U1|`.
    pub fn meet(&self, set: &[usize]) -> usize {
        set.iter().filter(|&&u| self.in_u1[u]).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PackingParams {
    pub n: usize,
    pub q: usize,
    pub p: usize,
    pub p0: usize,
    pub p1: usize,
    pub p2: usize,
    pub n1: usize,
    pub repetitions: u64,
}

impl PackingParams {
    /// `|L| = q p0 + (q-1) p1 + (q-2) p2`.
    pub fn label_count(&self) -> usize {
        labels_for(self.q, self.p0, self.p1, self.p2)
    }
}

fn labels_for(q: usize, p0: usize, p1: usize, p2: usize) -> usize {
    q * p0 + (q.saturating_sub(1)) * p1 + (q.saturating_sub(2)) * p2
}

/// Probability that a fixed p-packing becomes a `(p0, p1, p2)`-packing under
/// a uniform `(n1, n - n1)`-partition:
/// `C(p, p1+p2) C(p1+p2, p2) q^p1 C(q,2)^p2 C(n-pq, n1-p1-2p2) / C(n, n1)`.
/// Zero outside the window `pq <= n`, `p1 + 2p2 <= n1`,
/// `n1 - p1 - 2p2 <= n - pq`.
pub fn packing_admissible_probability(
    n: usize,
    n1: usize,
    q: usize,
    p: usize,
    p0: usize,
    p1: usize,
    p2: usize,
) -> BigRational {
    if p0 + p1 + p2 != p || p * q > n || p1 + 2 * p2 > n1 || n1 > n {
        return BigRational::zero();
    }
    let (n, n1, q, p, p1, p2) = (n as i64, n1 as i64, q as i64, p as i64, p1 as i64, p2 as i64);
    let numerator = binomial(p, p1 + p2)
        * binomial(p1 + p2, p2)
        * num_traits::pow(BigInt::from(q), p1 as usize)
        * num_traits::pow(binomial(q, 2), p2 as usize)
        * binomial(n - p * q, n1 - p1 - 2 * p2);
    BigRational::new(numerator, binomial(n, n1))
}

/// Tabulated `(beta1, beta2)` for `q = 3, 4, 5`.
pub fn table_betas(q: usize) -> Option<(f64, f64)> {
    match q {
        3 => Some((0.281509, 0.679622)),
        4 => Some((0.323262, 0.612790)),
        5 => Some((0.338614, 0.582673)),
        _ => None,
    }
}

/// `-a (t ln t + (1-t) ln(1-t))` with `t = b / a`: the exponential growth
/// rate of `C(a p, b p)` per unit `p`.
fn entropy_rate(a: f64, b: f64) -> f64 {
    if a <= 0.0 || b <= 0.0 || b >= a {
        return 0.0;
    }
    let t = b / a;
    -a * (t * t.ln() + (1.0 - t) * (1.0 - t).ln())
}

/// Per-`p` growth rate of `2^{|L|} / Pr` with `p1 = beta1 p`, `p2 = beta2 p`
/// and `n1 = delta n`. Returns `f64::INFINITY` outside the simplex.
pub fn packing_cost_base(q: usize, beta1: f64, beta2: f64) -> f64 {
    let beta0 = 1.0 - beta1 - beta2;
    let qf = q as f64;
    let pairs = qf * (qf - 1.0) / 2.0;
    if beta1 < 0.0 || beta2 < 0.0 || beta0 < 0.0 || (pairs == 0.0 && beta2 > 0.0) {
        return f64::INFINITY;
    }
    let label_rate = qf * beta0 + (qf - 1.0) * beta1 + (qf - 2.0) * beta2;
    let pair_term = if beta2 > 0.0 { beta2 * pairs.ln() } else { 0.0 };
    let log_cost = std::f64::consts::LN_2 * label_rate + entropy_rate(qf, beta1 + 2.0 * beta2)
        - entropy_rate(1.0, beta1 + beta2)
        - entropy_rate(beta1 + beta2, beta2)
        - beta1 * qf.ln()
        - pair_term;
    log_cost.exp()
}

/// Minimizes [`packing_cost_base`] over the simplex: a grid with step
/// `1e-3`, then pattern search down to step `1e-9`. Returns
/// `(beta1, beta2, base)`.
pub fn search_packing_betas(q: usize) -> (f64, f64, f64) {
    let steps = 1000usize;
    let mut best = (0.0, 0.0, packing_cost_base(q, 0.0, 0.0));
    for i in 0..=steps {
        for j in 0..=steps - i {
            let (b1, b2) = (i as f64 / steps as f64, j as f64 / steps as f64);
            let c = packing_cost_base(q, b1, b2);
            if c < best.2 {
                best = (b1, b2, c);
            }
        }
    }
    let mut h = 1.0 / steps as f64;
    while h > 1e-9 {
        let mut improved = false;
        for (d1, d2) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h), (h, -h), (-h, h)] {
            let c = packing_cost_base(q, best.0 + d1, best.1 + d2);
            if c < best.2 {
                best = (best.0 + d1, best.1 + d2, c);
                improved = true;
            }
        }
        if !improved {
            h /= 2.0;
        }
    }
    best
}

/// `(beta1, beta2)` from the table for `q` in `{3, 4, 5}`, else by search.
pub fn packing_betas(q: usize) -> (f64, f64) {
    table_betas(q).unwrap_or_else(|| {
        let (b1, b2, _) = search_packing_betas(q);
        (b1, b2)
    })
}

/// `p1 = floor(beta1 p)`, `p2 = floor(beta2 p)`, `p0 = p - p1 - p2`,
/// `n1 = floor(delta n)` with `delta = (p1 + 2 p2) / (pq)`; if that tuple
/// has probability zero, the valid tuple minimizing `2^{|L|} / Pr` instead.
/// `r = ceil(1 / Pr)`.
pub fn choose_packing_parameters(n: usize, q: usize, p: usize) -> Result<PackingParams> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidParameter("p and q must be positive".into()));
    }
    if p * q > n {
        return Err(Error::InvalidParameter(format!("no {p}-packing of {q}-sets fits in {n} elements")));
    }
    let (beta1, beta2) = packing_betas(q);
    let mut p1 = (beta1 * p as f64).floor() as usize;
    let mut p2 = (beta2 * p as f64).floor() as usize;
    if q < 2 {
        p2 = 0;
    }
    let mut p0 = p - p1 - p2;
    let mut n1 = (p1 + 2 * p2) * n / (p * q);
    let mut probability = packing_admissible_probability(n, n1, q, p, p0, p1, p2);
    if probability.is_zero() {
        let mut best: Option<(BigRational, usize, usize, usize)> = None;
        for a in 0..=p {
            for b in 0..=p - a {
                if labels_for(q, p - a - b, a, b) > MAX_LABELS {
                    continue;
                }
                for m in 0..=n {
                    let pr = packing_admissible_probability(n, m, q, p, p - a - b, a, b);
                    if pr.is_zero() {
                        continue;
                    }
                    let cost = BigRational::from_integer(BigInt::one() << labels_for(q, p - a - b, a, b)) / &pr;
                    if best.as_ref().is_none_or(|(c, ..)| cost < *c) {
                        best = Some((cost, a, b, m));
                    }
                }
            }
        }
        let (_, a, b, m) = best.ok_or_else(|| Error::InvalidParameter("no admissible split".into()))?;
        (p1, p2, n1) = (a, b, m);
        p0 = p - a - b;
        probability = packing_admissible_probability(n, n1, q, p, p0, p1, p2);
    }
    let repetitions = reciprocal_ceil(&probability);
    Ok(PackingParams { n, q, p, p0, p1, p2, n1, repetitions })
}

/// Smallest supported degree with `b >= ceil(log2 16n)` and `2^b > n1`.
pub fn default_field_bits(n: usize, n1: usize) -> u32 {
    ceil_log2(16 * n as u64).max(ceil_log2(n1 as u64 + 1))
}

/// Values for `x_A` per member, `y_{u}` and `y_{u,v}` per element and pair,
/// and `z_{u,l}` per element and label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingAssignment {
    field: Field,
    n: usize,
    labels: usize,
    x: Vec<FieldElement>,
    y_single: Vec<FieldElement>,
    y_pair: Vec<FieldElement>,
    z: Vec<FieldElement>,
}

impl PackingAssignment {
    /// Draws `x`, then `y_{u}`, then `y_{u,v}` for `u < v` in lexicographic
    /// order, then `z`.
    pub fn sample<R: Rng + ?Sized>(family: &SetFamily, labels: usize, field: Field, rng: &mut R) -> Self {
        let n = family.ground_size();
        let x = field.sample_vec(rng, family.len());
        let y_single = field.sample_vec(rng, n);
        let mut y_pair = vec![field.zero(); n * n];
        for u in 0..n {
            for v in u + 1..n {
                let value = field.sample(rng);
                y_pair[u * n + v] = value;
                y_pair[v * n + u] = value;
            }
        }
        let z = field.sample_vec(rng, n * labels);
        PackingAssignment { field, n, labels, x, y_single, y_pair, z }
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

    pub fn y_single(&self, u: usize) -> FieldElement {
        self.y_single[u]
    }

    pub fn y_pair(&self, u: usize, v: usize) -> FieldElement {
        self.y_pair[u * self.n + v]
    }

    pub fn z(&self, u: usize, label: usize) -> FieldElement {
        self.z[u * self.labels + label]
    }

    fn z_row(&self, u: usize) -> &[FieldElement] {
        &self.z[u * self.labels..(u + 1) * self.labels]
    }
}

/// `x_A ∏_{u ∈ A ∩ U2} Σ_{l ∉ J} z_{u,l}` per member. In characteristic 2
/// the square of this is the squared-label weight `x_A^2 ∏ Σ z^2`.
fn member_weights(
    family: &SetFamily,
    partition: &GroundBipartition,
    avoided: u64,
    assignment: &PackingAssignment,
) -> Vec<FieldElement> {
    let field = assignment.field();
    let zsum: Vec<FieldElement> = (0..family.ground_size())
        .map(|u| sum_allowed(field, assignment.z_row(u), avoided))
        .collect();
    family
        .sets()
        .iter()
        .enumerate()
        .map(|(a, set)| {
            set.iter().filter(|&&u| !partition.in_u1(u)).fold(assignment.x(a), |acc, &u| acc * zsum[u])
        })
        .collect()
}

/// `S(J)` at `w0`: `∏_{A ∩ U1 = ∅} (1 + w0^2 x_A^2 ∏_{u ∈ A} Σ_{l ∉ J} z_{u,l}^2)`.
pub fn s_factor_eval(
    family: &SetFamily,
    partition: &GroundBipartition,
    avoided: u64,
    assignment: &PackingAssignment,
    w0: FieldElement,
) -> FieldElement {
    let field = assignment.field();
    let weights = member_weights(family, partition, avoided, assignment);
    family
        .sets()
        .iter()
        .zip(weights)
        .filter(|(set, _)| partition.meet(set) == 0)
        .fold(field.one(), |acc, (_, c)| acc * (field.one() + (w0 * c).square()))
}

/// `[w0^{2 p0}] S(J)`: the elementary symmetric polynomial of degree `p0` in
/// the squared weights of the members avoiding `U1`.
fn s_factor_coefficient(
    family: &SetFamily,
    partition: &GroundBipartition,
    weights: &[FieldElement],
    p0: usize,
    field: Field,
) -> FieldElement {
    let mut e = vec![field.zero(); p0 + 1];
    e[0] = field.one();
    for (set, c) in family.sets().iter().zip(weights) {
        if partition.meet(set) != 0 {
            continue;
        }
        let c2 = c.square();
        for j in (1..=p0).rev() {
            let lower = e[j - 1];
            e[j] += lower * c2;
        }
    }
    e[p0]
}

/// Diagonal sums `Σ_{A ∩ U1 = {u}} weight(A)^2` and off-diagonal sums
/// `Σ_{A ∩ U1 = {u,v}} weight(A)` over `U1` positions.
fn tutte_sums(
    family: &SetFamily,
    partition: &GroundBipartition,
    weights: &[FieldElement],
    field: Field,
) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let n1 = partition.n1();
    let position = |u: usize| partition.u1().binary_search(&u).expect("element of U1");
    let mut diag = vec![field.zero(); n1];
    let mut off = vec![field.zero(); n1 * n1];
    for (set, &c) in family.sets().iter().zip(weights) {
        let hits: Vec<usize> = set.iter().copied().filter(|&u| partition.in_u1(u)).map(position).collect();
        match hits[..] {
            [i] => diag[i] += c.square(),
            [i, j] => {
                off[i * n1 + j] += c;
                off[j * n1 + i] += c;
            }
            _ => {}
        }
    }
    (diag, off)
}

/// Tutte matrix with the diagonal weight already squared: `v` stands for
/// `w1^2`.
fn tutte_at(
    partition: &GroundBipartition,
    assignment: &PackingAssignment,
    diag: &[FieldElement],
    off: &[FieldElement],
    v: FieldElement,
    w2: FieldElement,
) -> FieldMatrix {
    let field = assignment.field();
    let u1 = partition.u1();
    let n1 = u1.len();
    FieldMatrix::from_fn(field, n1, |i, j| {
        if i == j {
            assignment.y_single(u1[i]).square() * (field.one() + v * diag[i])
        } else {
            assignment.y_pair(u1[i], u1[j]) * (field.one() + w2 * off[i * n1 + j])
        }
    })
}

/// `T(J)` at `(w1, w2)` over `U1`: diagonal
/// `y_u^2 (1 + w1^2 Σ_{A ∩ U1 = {u}} x_A^2 ∏_{u' ∈ A ∩ U2} Σ_{l ∉ J} z_{u',l}^2)`,
/// off-diagonal `y_{u,v} (1 + w2 Σ_{A ∩ U1 = {u,v}} x_A ∏ Σ_{l ∉ J} z_{u',l})`.
pub fn tutte_packing_matrix(
    family: &SetFamily,
    partition: &GroundBipartition,
    avoided: u64,
    assignment: &PackingAssignment,
    w1: FieldElement,
    w2: FieldElement,
) -> FieldMatrix {
    let weights = member_weights(family, partition, avoided, assignment);
    let (diag, off) = tutte_sums(family, partition, &weights, assignment.field());
    tutte_at(partition, assignment, &diag, &off, w1.square(), w2)
}

fn check_inputs(
    family: &SetFamily,
    partition: &GroundBipartition,
    params: &PackingParams,
    assignment: &PackingAssignment,
) -> Result<()> {
    if params.p0 + params.p1 + params.p2 != params.p || params.q != family.member_size() {
        return Err(Error::InvalidParameter("inconsistent packing parameters".into()));
    }
    if partition.n1() != params.n1 || family.ground_size() != params.n {
        return Err(Error::InvalidParameter("partition does not match the parameters".into()));
    }
    if assignment.label_count() != params.label_count() {
        return Err(Error::InvalidParameter("assignment label count does not match".into()));
    }
    check_label_count(params.label_count())
}

/// `Σ_{J ⊆ L} [w0^{2p0} w1^{2p1} w2^{2p2}] S(J) det T(J)`; equals the
/// bijectively labeled `(p0, p1, p2)`-packing polynomial evaluated at
/// `assignment`. `S` depends on `w0` alone and `det T` on `(w1, w2)` alone,
/// so the two coefficients are extracted separately and multiplied.
pub fn packing_sieve_eval(
    family: &SetFamily,
    partition: &GroundBipartition,
    params: &PackingParams,
    assignment: &PackingAssignment,
) -> Result<SieveEval> {
    check_inputs(family, partition, params, assignment)?;
    let field = assignment.field();
    let n1 = partition.n1();
    let query = CoefficientQuery::new(vec![params.p1, 2 * params.p2], vec![n1, n1])?;
    query.check_field(field)?;
    let mut value = field.zero();
    let mut label_subsets = 0u64;
    for avoided in 0..1u64 << params.label_count() {
        label_subsets += 1;
        let weights = member_weights(family, partition, avoided, assignment);
        let s = s_factor_coefficient(family, partition, &weights, params.p0, field);
        if s.is_zero() {
            continue;
        }
        let (diag, off) = tutte_sums(family, partition, &weights, field);
        let t = extract_coefficient(
            field,
            |w| tutte_at(partition, assignment, &diag, &off, w[0], w[1]).determinant(),
            &query,
        )?;
        value += s * t;
    }
    Ok(SieveEval { value, label_subsets })
}

/// Decides whether `family` contains `p` pairwise disjoint members. YES
/// answers are always correct; a fixed packing is missed with probability
/// at most `1 - (1 - 1/e)/2` under the default repetition count.
///
/// Repetition `i` draws, from `substream(seed, i)`, first the partition and
/// then the assignment.
pub fn detect_set_packing(
    family: &SetFamily,
    p: usize,
    seed: u64,
    options: DetectOptions,
) -> Result<Detection<PackingParams>> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    let (n, q) = (family.ground_size(), family.member_size());
    if p * q > n || family.len() < p {
        let params = PackingParams { n, q, p, p0: p, p1: 0, p2: 0, n1: 0, repetitions: 0 };
        let field = options.field_or(default_field_bits(n, 0))?;
        return Ok(Detection::trivial(false, params, 0, field, 0));
    }
    let mut params = choose_packing_parameters(n, q, p)?;
    if let Some(r) = options.repetitions {
        params.repetitions = r;
    }
    let labels = params.label_count();
    check_label_count(labels)?;
    let field = options.field_or(default_field_bits(n, params.n1))?;
    let mut report = Detection::trivial(false, params, params.repetitions, field, labels);
    for rep in 0..params.repetitions {
        let mut rng = substream(seed, rep);
        let partition = GroundBipartition::sample(n, params.n1, &mut rng);
        let assignment = PackingAssignment::sample(family, labels, field, &mut rng);
        let eval = packing_sieve_eval(family, &partition, &params, &assignment)?;
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
    use crate::linalg::extract_tri_coefficient;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn probability_examples() {
        assert_eq!(packing_admissible_probability(3, 0, 3, 1, 1, 0, 0), BigRational::one());
        assert_eq!(packing_admissible_probability(3, 1, 3, 1, 0, 1, 0), BigRational::one());
        assert_eq!(packing_admissible_probability(4, 1, 3, 1, 0, 1, 0), ratio(3, 4));
        assert!(packing_admissible_probability(5, 2, 3, 2, 2, 0, 0).is_zero());
    }

    #[test]
    fn table_values_are_near_optimal() {
        for q in 3..=5 {
            let (b1, b2) = table_betas(q).unwrap();
            let (s1, s2, base) = search_packing_betas(q);
            assert!((s1 - b1).abs() < 2e-3 && (s2 - b2).abs() < 2e-3, "q={q}: {s1} {s2}");
            assert!((packing_cost_base(q, b1, b2) - base).abs() < 1e-3);
        }
    }

    #[test]
    fn parameters_are_admissible() {
        for n in 3..=12 {
            for p in 1..=n / 3 {
                let params = choose_packing_parameters(n, 3, p).unwrap();
                let pr = packing_admissible_probability(n, params.n1, 3, p, params.p0, params.p1, params.p2);
                assert!(!pr.is_zero());
                assert_eq!(params.repetitions, reciprocal_ceil(&pr));
            }
        }
        assert!(choose_packing_parameters(5, 3, 2).is_err());
        let params = choose_packing_parameters(9, 3, 1).unwrap();
        assert_eq!(params.p0 + params.p1 + params.p2, 1);
    }

    #[test]
    fn sampled_partitions_have_requested_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n1 in 0..=6 {
            let part = GroundBipartition::sample(6, n1, &mut rng);
            assert_eq!(part.n1(), n1);
            assert_eq!((0..6).filter(|&u| part.in_u1(u)).count(), n1);
        }
    }

    fn setup(
        sets: Vec<Vec<usize>>,
        n: usize,
        u1: &[usize],
        labels: usize,
        seed: u64,
    ) -> (SetFamily, GroundBipartition, PackingAssignment) {
        let family = SetFamily::new(n, 3, sets).unwrap();
        let part = GroundBipartition::new(n, u1.iter().copied()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = PackingAssignment::sample(&family, labels, Field::new(16).unwrap(), &mut rng);
        (family, part, a)
    }

    #[test]
    fn s_factor_cases() {
        let (family, part, a) = setup(vec![vec![0, 1, 2]], 4, &[0], 3, 1);
        let f = a.field();
        assert!(s_factor_eval(&family, &part, 0, &a, f.generator()).is_one());
        let (family, part, a) = setup(vec![vec![0, 1, 2]], 4, &[3], 3, 2);
        assert!(s_factor_eval(&family, &part, 0b111, &a, f.generator()).is_one());
        let w0 = f.generator();
        let zs = |u: usize| (0..3).fold(f.zero(), |acc, l| acc + a.z(u, l).square());
        let expected = f.one() + w0.square() * a.x(0).square() * zs(0) * zs(1) * zs(2);
        assert_eq!(s_factor_eval(&family, &part, 0, &a, w0), expected);
    }

    #[test]
    fn tutte_matrix_shapes() {
        let (family, part, a) = setup(vec![vec![3, 4, 5]], 6, &[0, 1], 3, 3);
        let f = a.field();
        let t = tutte_packing_matrix(&family, &part, 0, &a, f.generator(), f.generator());
        assert!(t.is_symmetric());
        assert_eq!(t.get(0, 0), a.y_single(0).square());
        assert_eq!(t.get(0, 1), a.y_pair(0, 1));
        let (family, part, a) = setup(vec![vec![0, 1, 2]], 3, &[1], 2, 4);
        let t = tutte_packing_matrix(&family, &part, 0, &a, f.one(), f.one());
        assert_eq!(t.order(), 1);
        let zs = |u: usize| (0..2).fold(f.zero(), |acc, l| acc + a.z(u, l)).square();
        let expected = a.y_single(1).square() * (f.one() + a.x(0).square() * zs(0) * zs(2));
        assert_eq!(t.determinant(), expected);
    }

    #[test]
    fn separable_extraction_matches_trivariate() {
        let sets = vec![vec![0, 1, 2], vec![3, 4, 5], vec![0, 3, 6], vec![1, 4, 7], vec![2, 5, 6]];
        for seed in 0..5 {
            let (family, part, a) = setup(sets.clone(), 8, &[0, 4, 6], 4, seed);
            let field = a.field();
            let params = PackingParams { n: 8, q: 3, p: 2, p0: 1, p1: 0, p2: 1, n1: 3, repetitions: 1 };
            let direct = packing_sieve_eval(&family, &part, &params, &a).unwrap().value;
            let mut tri = field.zero();
            for avoided in 0..1u64 << params.label_count() {
                tri += extract_tri_coefficient(
                    field,
                    |w0, w1, w2| {
                        s_factor_eval(&family, &part, avoided, &a, w0)
                            * tutte_packing_matrix(&family, &part, avoided, &a, w1, w2).determinant()
                    },
                    [2 * family.len(), 2 * part.n1(), part.n1()],
                    [2 * params.p0, 2 * params.p1, 2 * params.p2],
                )
                .unwrap();
            }
            assert_eq!(direct, tri);
        }
    }

    #[test]
    fn shared_u2_element_cancels() {
        // members share element 2, which lies in U2
        let (family, part, a) = setup(vec![vec![0, 1, 2], vec![2, 3, 4]], 6, &[], 6, 5);
        let params = PackingParams { n: 6, q: 3, p: 2, p0: 2, p1: 0, p2: 0, n1: 0, repetitions: 1 };
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a2 = PackingAssignment::sample(&family, 6, a.field(), &mut rng);
            let eval = packing_sieve_eval(&family, &part, &params, &a2).unwrap();
            assert!(eval.value.is_zero());
            assert_eq!(eval.label_subsets, 64);
        }
    }

    #[test]
    fn single_set_monomial() {
        let (family, part, a) = setup(vec![vec![0, 1, 2]], 4, &[3], 3, 6);
        let params = PackingParams { n: 4, q: 3, p: 1, p0: 1, p1: 0, p2: 0, n1: 1, repetitions: 1 };
        let f = a.field();
        let value = packing_sieve_eval(&family, &part, &params, &a).unwrap().value;
        // 3! bijective labelings of the three U2 elements, times y_{3}^2
        let mut expected = f.zero();
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            expected += (0..3).fold(f.one(), |acc, i| acc * a.z(i, perm[i]).square());
        }
        expected *= a.x(0).square() * a.y_single(3).square();
        assert_eq!(value, expected);
    }

    #[test]
    fn detection_examples() {
        let opts = DetectOptions::default();
        let family = SetFamily::new(6, 3, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert!(detect_set_packing(&family, 2, 0, opts).unwrap().decision);
        let all = SetFamily::all_subsets(5, 3);
        let r = detect_set_packing(&all, 2, 0, opts).unwrap();
        assert!(!r.decision && r.repetitions_run == 0);
    }
}
