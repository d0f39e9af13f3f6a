//! Dense square matrices over GF(2^b), determinants, and coefficient
//! extraction from polynomials that are only available through evaluation.
//!
//! In characteristic 2 the determinant and the permanent coincide, so no sign
//! bookkeeping appears anywhere.

use crate::error::{Error, Result};
use crate::gf::{interpolate_univariate, Field, FieldElement};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldMatrix {
    field: Field,
    order: usize,
    entries: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn zeros(field: Field, order: usize) -> Self {
        FieldMatrix { field, order, entries: vec![field.zero(); order * order] }
    }

    pub fn identity(field: Field, order: usize) -> Self {
        let mut m = Self::zeros(field, order);
        for i in 0..order {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: Field, order: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        FieldMatrix { field, order, entries }
    }

    pub fn from_rows(field: Field, rows: &[Vec<FieldElement>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidParameter("matrix must be square".into()));
        }
        if rows.iter().flatten().any(|e| e.degree() != field.degree()) {
            return Err(Error::ConfigMismatch {
                left: field.degree(),
                right: rows.iter().flatten().find(|e| e.degree() != field.degree()).unwrap().degree(),
            });
        }
        Ok(FieldMatrix { field, order, entries: rows.concat() })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> FieldElement {
        self.entries[row * self.order + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: FieldElement) {
        self.entries[row * self.order + col] = value;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, rhs: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.order, rhs.order);
        let n = self.order;
        FieldMatrix::from_fn(self.field, n, |i, j| {
            (0..n).fold(self.field.zero(), |acc, k| acc + self.get(i, k) * rhs.get(k, j))
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.order {
            self.entries.swap(a * self.order + j, b * self.order + j);
        }
    }

    pub fn determinant(&self) -> FieldElement {
        determinant(self)
    }
}

/// Determinant by Gaussian elimination; singular matrices give zero.
pub fn determinant(matrix: &FieldMatrix) -> FieldElement {
    let n = matrix.order;
    let field = matrix.field;
    let mut a = matrix.entries.clone();
    let mut det = field.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
            return field.zero();
        };
        if pivot != col {
            for j in col..n {
                a.swap(pivot * n + j, col * n + j);
            }
        }
        let p = a[col * n + col];
        det *= p;
        let p_inv = p.inv().expect("pivot is nonzero");
        for r in col + 1..n {
            let factor = a[r * n + col];
            if factor.is_zero() {
                continue;
            }
            let scale = factor * p_inv;
            for j in col + 1..n {
                let v = a[col * n + j];
                a[r * n + j] += scale * v;
            }
        }
    }
    det
}

/// Target monomial and per-variable degree bounds for coefficient extraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientQuery {
    pub targets: Vec<usize>,
    pub bounds: Vec<usize>,
}

impl CoefficientQuery {
    pub fn new(targets: Vec<usize>, bounds: Vec<usize>) -> Result<Self> {
        if targets.len() != bounds.len() {
            return Err(Error::InvalidParameter("one target per bound".into()));
        }
        Ok(CoefficientQuery { targets, bounds })
    }

    /// True when some target exceeds its bound, so the coefficient is zero.
    pub fn out_of_range(&self) -> bool {
        self.targets.iter().zip(&self.bounds).any(|(t, b)| t > b)
    }

    pub fn check_field(&self, field: Field) -> Result<()> {
        if let Some(&max) = self.bounds.iter().max() {
            if !field.exceeds(max as u64) {
                return Err(Error::InsufficientField { degree: field.degree(), needed: max as u64 + 1 });
            }
        }
        Ok(())
    }
}

/// Coefficients `0..=degree_bound` of a univariate polynomial known only
/// through `evaluator`.
pub fn extract_uni_coefficients(
    field: Field,
    mut evaluator: impl FnMut(FieldElement) -> FieldElement,
    degree_bound: usize,
) -> Result<Vec<FieldElement>> {
    if !field.exceeds(degree_bound as u64) {
        return Err(Error::InsufficientField { degree: field.degree(), needed: degree_bound as u64 + 1 });
    }
    let points: Vec<_> =
        field.evaluation_points(degree_bound + 1)?.into_iter().map(|x| (x, evaluator(x))).collect();
    interpolate_univariate(&points)
}

/// One coefficient of a multivariate polynomial known only through
/// `evaluator`, by grid evaluation and nested univariate interpolation.
/// A target beyond its bound yields zero without evaluating anything.
pub fn extract_coefficient(
    field: Field,
    mut evaluator: impl FnMut(&[FieldElement]) -> FieldElement,
    query: &CoefficientQuery,
) -> Result<FieldElement> {
    query.check_field(field)?;
    if query.out_of_range() {
        return Ok(field.zero());
    }
    let axes: Vec<Vec<FieldElement>> =
        query.bounds.iter().map(|&d| field.evaluation_points(d + 1)).collect::<Result<_>>()?;
    let mut point = vec![field.zero(); axes.len()];
    nested_extract(&mut evaluator, &axes, &query.targets, 0, &mut point)
}

fn nested_extract(
    evaluator: &mut dyn FnMut(&[FieldElement]) -> FieldElement,
    axes: &[Vec<FieldElement>],
    targets: &[usize],
    depth: usize,
    point: &mut Vec<FieldElement>,
) -> Result<FieldElement> {
    if depth == axes.len() {
        return Ok(evaluator(point));
    }
    let mut samples = Vec::with_capacity(axes[depth].len());
    for &x in &axes[depth] {
        point[depth] = x;
        let inner = nested_extract(evaluator, axes, targets, depth + 1, point)?;
        samples.push((x, inner));
    }
    Ok(interpolate_univariate(&samples)?[targets[depth]])
}

/// Coefficient of `w0^t0 w1^t1 w2^t2` given per-variable degree bounds.
pub fn extract_tri_coefficient(
    field: Field,
    mut evaluator: impl FnMut(FieldElement, FieldElement, FieldElement) -> FieldElement,
    bounds: [usize; 3],
    target: [usize; 3],
) -> Result<FieldElement> {
    let query = CoefficientQuery::new(target.to_vec(), bounds.to_vec())?;
    extract_coefficient(field, |w| evaluator(w[0], w[1], w[2]), &query)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::evaluate_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(field: Field, n: usize, rng: &mut ChaCha8Rng) -> FieldMatrix {
        FieldMatrix::from_fn(field, n, |_, _| field.sample(rng))
    }

    /// Sum over all permutations, written out directly.
    fn permutation_sum(m: &FieldMatrix) -> FieldElement {
        fn go(m: &FieldMatrix, row: usize, used: &mut Vec<bool>, acc: FieldElement) -> FieldElement {
            let n = m.order();
            if row == n {
                return acc;
            }
            let mut total = m.field().zero();
            for c in 0..n {
                if !used[c] {
                    used[c] = true;
                    total += go(m, row + 1, used, acc * m.get(row, c));
                    used[c] = false;
                }
            }
            total
        }
        go(m, 0, &mut vec![false; m.order()], m.field().one())
    }

    #[test]
    fn identity_and_small_cases() {
        let f = Field::new(8).unwrap();
        for n in 0..6 {
            assert!(FieldMatrix::identity(f, n).determinant().is_one());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let [a, c, d, e] = [0; 4].map(|_| f.sample(&mut rng));
        let m = FieldMatrix::from_rows(f, &[vec![a, c], vec![d, e]]).unwrap();
        assert_eq!(m.determinant(), a * e + c * d);

        let mut m = random_matrix(f, 4, &mut rng);
        for j in 0..4 {
            let v = m.get(0, j);
            m.set(2, j, v);
        }
        assert!(m.determinant().is_zero());
    }

    #[test]
    fn determinant_matches_permutation_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for &d in &[1u32, 2, 4, 8, 16, 32, 64] {
            let f = Field::new(d).unwrap();
            for n in 1..=6 {
                for _ in 0..5 {
                    let m = random_matrix(f, n, &mut rng);
                    assert_eq!(m.determinant(), permutation_sum(&m));
                }
            }
        }
    }

    #[test]
    fn determinant_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = Field::new(16).unwrap();
        for n in 1..=8 {
            for _ in 0..10 {
                let a = random_matrix(f, n, &mut rng);
                let b = random_matrix(f, n, &mut rng);
                assert_eq!(a.mul(&b).determinant(), a.determinant() * b.determinant());
            }
        }
    }

    #[test]
    fn row_swap_keeps_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = Field::new(8).unwrap();
        let m = random_matrix(f, 5, &mut rng);
        let mut s = m.clone();
        s.swap_rows(1, 3);
        assert_eq!(m.determinant(), s.determinant());
    }

    #[test]
    fn uni_extraction_examples() {
        let f = Field::new(8).unwrap();
        let x = f.element(0x53).unwrap();
        let coeffs = extract_uni_coefficients(
            f,
            |w| FieldMatrix::from_rows(f, &[vec![f.one() + w * x]]).unwrap().determinant(),
            1,
        )
        .unwrap();
        assert_eq!(coeffs, vec![f.one(), x]);

        let c = f.element(7).unwrap();
        assert_eq!(extract_uni_coefficients(f, |_| c, 3).unwrap(), vec![c, f.zero(), f.zero(), f.zero()]);

        let tiny = Field::new(1).unwrap();
        assert!(matches!(
            extract_uni_coefficients(tiny, |w| w, 2),
            Err(Error::InsufficientField { .. })
        ));
    }

    /// det of [[1 + w a, b], [c, 1 + w d]] expanded by hand:
    /// 1 + w (a + d) + w^2 a d + b c.
    #[test]
    fn uni_extraction_of_symbolic_two_by_two() {
        let f = Field::new(16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let [a, b, c, d] = [0; 4].map(|_| f.sample(&mut rng));
        let coeffs = extract_uni_coefficients(
            f,
            |w| {
                FieldMatrix::from_rows(f, &[vec![f.one() + w * a, b], vec![c, f.one() + w * d]])
                    .unwrap()
                    .determinant()
            },
            2,
        )
        .unwrap();
        assert_eq!(coeffs, vec![f.one() + b * c, a + d, a * d]);
    }

    #[test]
    fn tri_extraction_examples() {
        let f = Field::new(8).unwrap();
        let got = extract_tri_coefficient(f, |a, b, c| a * b * c, [1, 1, 1], [1, 1, 1]).unwrap();
        assert!(got.is_one());
        let c = f.element(0x3c).unwrap();
        assert_eq!(extract_tri_coefficient(f, |_, _, _| c, [2, 2, 2], [0, 0, 0]).unwrap(), c);
        assert!(extract_tri_coefficient(f, |_, _, _| c, [2, 2, 2], [0, 1, 0]).unwrap().is_zero());
        // beyond the bound: zero without evaluating
        let got = extract_tri_coefficient(f, |_, _, _| unreachable!(), [1, 1, 1], [0, 2, 0]).unwrap();
        assert!(got.is_zero());
    }

    #[test]
    fn tri_extraction_recovers_random_polynomial() {
        let f = Field::new(16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let bounds = [3usize, 2, 4];
        // coeffs[i][j][k] of w0^i w1^j w2^k
        let coeffs: Vec<Vec<Vec<FieldElement>>> = (0..=bounds[0])
            .map(|_| (0..=bounds[1]).map(|_| f.sample_vec(&mut rng, bounds[2] + 1)).collect())
            .collect();
        let eval = |a: FieldElement, b: FieldElement, c: FieldElement| {
            let mut total = f.zero();
            for (i, plane) in coeffs.iter().enumerate() {
                for (j, row) in plane.iter().enumerate() {
                    total += a.pow(i as u128) * b.pow(j as u128) * evaluate_poly(row, c);
                }
            }
            total
        };
        for i in 0..=bounds[0] {
            for j in 0..=bounds[1] {
                for k in 0..=bounds[2] {
                    assert_eq!(extract_tri_coefficient(f, eval, bounds, [i, j, k]).unwrap(), coeffs[i][j][k]);
                }
            }
        }
    }
}
