//! Pieces shared by the four detectors: seeded substreams, run options,
//! decision records, and label-subset bookkeeping.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Label sets are bitmasks in a `u64`; anything near this many labels is far
/// beyond what the exponential loop can finish anyway.
pub const MAX_LABELS: usize = 40;

/// Random stream for one repetition: ChaCha8 seeded with `seed`, using the
/// repetition index as the ChaCha stream id.
pub fn substream(seed: u64, repetition: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(repetition);
    rng
}

/// `ceil(log2(x))`, with `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DetectOptions {
    /// Overrides the default repetition count.
    pub repetitions: Option<u64>,
    /// Forces the field degree instead of the smallest adequate one.
    pub field_bits: Option<u32>,
}

impl DetectOptions {
    pub(crate) fn field_or(&self, min_bits: u32) -> Result<Field> {
        match self.field_bits {
            Some(b) => Field::new(b),
            None => Field::at_least(min_bits),
        }
    }
}

/// Outcome of a randomized detector. `decision == true` is a certificate:
/// some evaluation of the sieve polynomial was nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Detection<P> {
    pub decision: bool,
    pub params: P,
    pub repetitions_planned: u64,
    pub repetitions_run: u64,
    pub field_bits: u32,
    pub label_count: usize,
    /// Sieve evaluations performed (one per start vertex and repetition for
    /// k-path, one per repetition elsewhere).
    pub evaluations: u64,
    /// Label subsets iterated over all evaluations.
    pub label_subsets: u64,
}

impl<P> Detection<P> {
    pub(crate) fn trivial(decision: bool, params: P, planned: u64, field: Field, label_count: usize) -> Self {
        Detection {
            decision,
            params,
            repetitions_planned: planned,
            repetitions_run: 0,
            field_bits: field.degree(),
            label_count,
            evaluations: 0,
            label_subsets: 0,
        }
    }

    pub fn label_subsets_per_evaluation(&self) -> u64 {
        1u64 << self.label_count
    }
}

/// Value of one full sieve evaluation with its loop counter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SieveEval {
    pub value: FieldElement,
    pub label_subsets: u64,
}

pub(crate) fn check_label_count(labels: usize) -> Result<()> {
    if labels > MAX_LABELS {
        return Err(Error::TooManyLabels { labels, max: MAX_LABELS });
    }
    Ok(())
}

/// Sum of `values[l]` over the labels `l` not in `avoided`.
#[inline]
pub(crate) fn sum_allowed(field: Field, values: &[FieldElement], avoided: u64) -> FieldElement {
    values
        .iter()
        .enumerate()
        .filter(|(l, _)| avoided >> l & 1 == 0)
        .fold(field.zero(), |acc, (_, &v)| acc + v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn log2_rounding() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(60), 6);
        assert_eq!(ceil_log2(64), 6);
        assert_eq!(ceil_log2(65), 7);
    }

    #[test]
    fn substreams_are_distinct_and_reproducible() {
        let a = substream(9, 0).next_u64();
        assert_eq!(a, substream(9, 0).next_u64());
        assert_ne!(a, substream(9, 1).next_u64());
        assert_ne!(a, substream(10, 0).next_u64());
    }
}
