//! Arithmetic in GF(2^b) for the supported extension degrees, plus univariate
//! interpolation.
//!
//! An element is a single machine word holding the coefficients of a polynomial
//! of degree `< b` over GF(2). Each supported degree has exactly one modulus, so
//! an element only needs to remember its degree to find its field. All moduli
//! are primitive: `x` generates the multiplicative group (for `b = 1` the
//! generator is `1`).

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};
use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};

/// Extension degrees with a fixed modulus.
pub const SUPPORTED_DEGREES: [u32; 10] = [1, 2, 3, 4, 8, 16, 24, 32, 48, 64];

/// Low-order terms of each modulus; the leading `x^b` is implicit.
const MODULUS_LOW: [u64; 10] = [
    0x1,                   // x + 1
    0x3,                   // x^2 + x + 1
    0x3,                   // x^3 + x + 1
    0x3,                   // x^4 + x + 1
    0x1d,                  // x^8 + x^4 + x^3 + x^2 + 1
    0x100b,                // x^16 + x^12 + x^3 + x + 1
    0x87,                  // x^24 + x^7 + x^2 + x + 1
    (1 << 22) | 0x7,       // x^32 + x^22 + x^2 + x + 1
    (1 << 28) | 0xb,       // x^48 + x^28 + x^3 + x + 1
    0x807,                 // x^64 + x^11 + x^2 + x + 1
];

/// Log/antilog tables are built for degrees up to this bound.
const TABLE_MAX_DEGREE: u32 = 16;

/// Largest degree whose irreducibility is re-verified by trial division.
const VERIFY_MAX_DEGREE: u32 = 16;

struct LogTables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

struct FieldData {
    degree: u32,
    low: u64,
    mask: u64,
    tables: Option<LogTables>,
}

static FIELDS: [OnceLock<FieldData>; 10] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];

fn table_index(degree: u32) -> Option<usize> {
    SUPPORTED_DEGREES.iter().position(|&d| d == degree)
}

fn field_data(index: usize) -> &'static FieldData {
    FIELDS[index].get_or_init(|| FieldData::build(SUPPORTED_DEGREES[index], MODULUS_LOW[index]))
}

/// Polynomial multiplication modulo `x^degree + low`, by shift and add.
fn clmul_reduce(mut a: u64, mut b: u64, degree: u32, low: u64, mask: u64) -> u64 {
    let top = 1u64 << (degree - 1);
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        let carry = a & top != 0;
        a = a.wrapping_shl(1) & mask;
        if carry {
            a ^= low;
        }
    }
    acc
}

/// Remainder of `a` modulo `m` in GF(2)[x].
fn poly_rem(mut a: u64, m: u64) -> u64 {
    let dm = 63 - m.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= dm {
        let shift = (63 - a.leading_zeros()) - dm;
        a ^= m << shift;
    }
    a
}

/// Trial division by every polynomial of degree `1..=degree/2`.
fn is_irreducible(poly: u64, degree: u32) -> bool {
    if degree == 1 {
        return true;
    }
    let limit = 1u64 << (degree / 2 + 1);
    (2..limit).all(|divisor| poly_rem(poly, divisor) != 0)
}

impl FieldData {
    fn build(degree: u32, low: u64) -> Self {
        let mask = if degree == 64 { u64::MAX } else { (1u64 << degree) - 1 };
        if degree <= VERIFY_MAX_DEGREE {
            assert!(
                is_irreducible((1u64 << degree) | low, degree),
                "modulus table entry for degree {degree} is reducible"
            );
        }
        let mut data = FieldData { degree, low, mask, tables: None };
        if degree <= TABLE_MAX_DEGREE {
            let order = (1usize << degree) - 1;
            let generator = data.generator_bits();
            let mut exp = vec![0u64; 2 * order];
            let mut log = vec![0u32; order + 1];
            let mut acc = 1u64;
            for i in 0..order {
                exp[i] = acc;
                log[acc as usize] = i as u32;
                acc = clmul_reduce(acc, generator, degree, low, mask);
            }
            assert_eq!(acc, 1, "modulus for degree {degree} is not primitive");
            for i in order..2 * order {
                exp[i] = exp[i - order];
            }
            data.tables = Some(LogTables { exp, log });
        }
        data
    }

    fn generator_bits(&self) -> u64 {
        if self.degree == 1 {
            1
        } else {
            2
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
                }
            }
            None => clmul_reduce(a, b, self.degree, self.low, self.mask),
        }
    }
}

/// A supported field GF(2^b). Cheap to copy; all fields are process-wide
/// singletons.
#[derive(Clone, Copy)]
pub struct Field {
    data: &'static FieldData,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})", self.data.degree)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.data.degree == other.data.degree
    }
}

impl Eq for Field {}

/// Returns the field GF(2^b) with its fixed modulus.
pub fn make_field(degree: u32) -> Result<Field> {
    Field::new(degree)
}

impl Field {
    pub fn new(degree: u32) -> Result<Field> {
        let index = table_index(degree).ok_or(Error::UnsupportedDegree(degree))?;
        Ok(Field { data: field_data(index) })
    }

    /// Smallest supported field with at least `min_bits` bits.
    pub fn at_least(min_bits: u32) -> Result<Field> {
        let degree = SUPPORTED_DEGREES
            .iter()
            .copied()
            .find(|&d| d >= min_bits.max(1))
            .ok_or(Error::UnsupportedDegree(min_bits))?;
        Field::new(degree)
    }

    pub fn degree(&self) -> u32 {
        self.data.degree
    }

    /// Full modulus as a bit vector (bit `b` set), widened to fit `b = 64`.
    pub fn modulus(&self) -> u128 {
        (1u128 << self.data.degree) | self.data.low as u128
    }

    /// Number of elements, `2^b`.
    pub fn size(&self) -> u128 {
        1u128 << self.data.degree
    }

    /// True iff the field has more than `bound` elements.
    pub fn exceeds(&self, bound: u64) -> bool {
        self.size() > bound as u128
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { bits: 0, degree: self.data.degree as u8 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { bits: 1, degree: self.data.degree as u8 }
    }

    pub fn generator(&self) -> FieldElement {
        FieldElement { bits: self.data.generator_bits(), degree: self.data.degree as u8 }
    }

    pub fn element(&self, bits: u64) -> Result<FieldElement> {
        if bits & !self.data.mask != 0 {
            return Err(Error::NonCanonical { bits, degree: self.data.degree });
        }
        Ok(FieldElement { bits, degree: self.data.degree as u8 })
    }

    /// Uniform element drawn from `rng`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement { bits: rng.gen::<u64>() & self.data.mask, degree: self.data.degree as u8 }
    }

    pub fn sample_vec<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> Vec<FieldElement> {
        (0..len).map(|_| self.sample(rng)).collect()
    }

    /// The first `count` points of the sequence `0, 1, g, g^2, ...`.
    pub fn evaluation_points(&self, count: usize) -> Result<Vec<FieldElement>> {
        if count as u128 > self.size() {
            return Err(Error::InsufficientField { degree: self.degree(), needed: count as u64 });
        }
        let mut points = Vec::with_capacity(count);
        if count > 0 {
            points.push(self.zero());
        }
        let g = self.generator();
        let mut acc = self.one();
        while points.len() < count {
            points.push(acc);
            acc *= g;
        }
        Ok(points)
    }

    /// Every element in increasing bit order. Only sensible for small `b`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        assert!(self.degree() <= 20, "refusing to enumerate GF(2^{})", self.degree());
        (0..(1u64 << self.degree())).map(move |bits| FieldElement { bits, degree: self.degree() as u8 })
    }

    pub fn sum<I: IntoIterator<Item = FieldElement>>(&self, items: I) -> FieldElement {
        items.into_iter().fold(self.zero(), |acc, x| acc + x)
    }

    pub fn product<I: IntoIterator<Item = FieldElement>>(&self, items: I) -> FieldElement {
        items.into_iter().fold(self.one(), |acc, x| acc * x)
    }
}

/// An element of one of the supported fields.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    bits: u64,
    degree: u8,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}@GF(2^{})", self.bits, self.degree)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

impl FieldElement {
    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn degree(self) -> u32 {
        self.degree as u32
    }

    pub fn field(self) -> Field {
        Field::new(self.degree as u32).expect("elements only exist for supported degrees")
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn is_one(self) -> bool {
        self.bits == 1
    }

    fn check_same(self, other: FieldElement) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::ConfigMismatch { left: self.degree as u32, right: other.degree as u32 });
        }
        Ok(())
    }

    pub fn try_add(self, other: FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        Ok(FieldElement { bits: self.bits ^ other.bits, degree: self.degree })
    }

    pub fn try_mul(self, other: FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        let data = field_data(table_index(self.degree as u32).unwrap());
        Ok(FieldElement { bits: data.mul(self.bits, other.bits), degree: self.degree })
    }

    pub fn square(self) -> FieldElement {
        self * self
    }

    pub fn pow(self, mut exponent: u128) -> FieldElement {
        let mut base = self;
        let mut acc = FieldElement { bits: 1, degree: self.degree };
        while exponent != 0 {
            if exponent & 1 == 1 {
                acc *= base;
            }
            base = base.square();
            exponent >>= 1;
        }
        acc
    }

    /// Multiplicative inverse as `a^(2^b - 2)`.
    pub fn inv(self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow((1u128 << self.degree) - 2))
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.degree, rhs.degree, "field mismatch in addition");
        FieldElement { bits: self.bits ^ rhs.bits, degree: self.degree }
    }
}

impl AddAssign for FieldElement {
    #[inline]
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = *self + rhs;
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;

    #[inline]
    fn mul(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.degree, rhs.degree, "field mismatch in multiplication");
        let data = field_data(table_index(self.degree as u32).unwrap());
        FieldElement { bits: data.mul(self.bits, rhs.bits), degree: self.degree }
    }
}

impl MulAssign for FieldElement {
    #[inline]
    fn mul_assign(&mut self, rhs: FieldElement) {
        *self = *self * rhs;
    }
}

/// Evaluates a polynomial given by ascending coefficients at `x` (Horner).
pub fn evaluate_poly(coefficients: &[FieldElement], x: FieldElement) -> FieldElement {
    let zero = x.field().zero();
    coefficients.iter().rev().fold(zero, |acc, &c| acc * x + c)
}

/// The unique polynomial of degree `< points.len()` through `points`,
/// as ascending coefficients.
pub fn interpolate_univariate(points: &[(FieldElement, FieldElement)]) -> Result<Vec<FieldElement>> {
    let Some(&(first, _)) = points.first() else {
        return Ok(Vec::new());
    };
    let field = first.field();
    for &(x, y) in points {
        first.check_same(x)?;
        first.check_same(y)?;
    }
    if points.len() as u128 > field.size() {
        return Err(Error::InsufficientField { degree: field.degree(), needed: points.len() as u64 });
    }
    let mut seen = HashSet::with_capacity(points.len());
    if !points.iter().all(|&(x, _)| seen.insert(x.bits())) {
        return Err(Error::DuplicatePoint);
    }

    let n = points.len();
    // master = prod (t + x_i), ascending coefficients, degree n
    let mut master = vec![field.zero(); n + 1];
    master[0] = field.one();
    for (i, &(x, _)) in points.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            master[j] = master[j - 1] + master[j] * x;
        }
        master[0] *= x;
    }

    let mut result = vec![field.zero(); n];
    let mut quotient = vec![field.zero(); n];
    for &(xi, yi) in points {
        // synthetic division of master by (t + x_i)
        let mut carry = field.zero();
        for j in (0..n).rev() {
            carry = master[j + 1] + carry * xi;
            quotient[j] = carry;
        }
        let denom = evaluate_poly(&quotient, xi);
        let scale = yi * denom.inv()?;
        for (r, &q) in result.iter_mut().zip(&quotient) {
            *r += scale * q;
        }
    }
    Ok(result)
}
