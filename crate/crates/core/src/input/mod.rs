//! Deterministic generation of the six benchmark input cases, and the binary
//! sequence file format.

mod file;
mod rng;

pub use file::{FormatError, SequenceFile, HEADER_LEN, MAGIC, VERSION};
pub use rng::{rng_below, rng_next, RngState};

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::sorting::{Key, Record};

/// Largest supported range bound.
pub const MAX_RANGE_BOUND: Key = 1 << 40;

pub const DEFAULT_SORTED_FRACTION: f64 = 0.95;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("unknown input case {0} (expected 1-6)")]
    UnknownCase(u64),
    #[error("range bound {0} exceeds the supported maximum 2^40")]
    RangeTooLarge(Key),
    #[error("case 6 needs ceil(2n/3) <= M distinct values, but n = {n} and M = {max_key}")]
    RepeatedCaseInfeasible { n: usize, max_key: Key },
    #[error("repeated value {value} is outside [0, {max_key}]")]
    RepeatedValueOutOfRange { value: Key, max_key: Key },
    #[error("sorted fraction {0} is outside [0, 1]")]
    InvalidSortedFraction(f64),
    #[error("sampling bound must be at least 1")]
    ZeroBound,
}

/// The six input distributions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseId {
    /// Uniform keys in random order.
    Uniform = 1,
    /// Uniform keys, sorted.
    Sorted = 2,
    /// Sorted, then a small fraction of positions swapped.
    NearlySorted = 3,
    /// Uniform with a small range bound.
    SmallRange = 4,
    /// Uniform with a large range bound.
    LargeRange = 5,
    /// A third of the keys share one value, the rest are distinct.
    RepeatedValue = 6,
}

impl CaseId {
    pub const ALL: [CaseId; 6] = [
        CaseId::Uniform,
        CaseId::Sorted,
        CaseId::NearlySorted,
        CaseId::SmallRange,
        CaseId::LargeRange,
        CaseId::RepeatedValue,
    ];

    pub fn from_number(id: u64) -> Result<Self, GenError> {
        match id {
            1 => Ok(CaseId::Uniform),
            2 => Ok(CaseId::Sorted),
            3 => Ok(CaseId::NearlySorted),
            4 => Ok(CaseId::SmallRange),
            5 => Ok(CaseId::LargeRange),
            6 => Ok(CaseId::RepeatedValue),
            other => Err(GenError::UnknownCase(other)),
        }
    }

    pub fn number(self) -> u64 {
        self as u64
    }

    /// Range bound used when none is given.
    pub fn default_max_key(self) -> Key {
        match self {
            CaseId::SmallRange => 10_000,
            CaseId::LargeRange => 100_000_000,
            _ => 1_000_000,
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Everything needed to reproduce one generated sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct InputSpec {
    pub case: CaseId,
    pub n: usize,
    /// Inclusive upper bound on keys.
    pub max_key: Key,
    pub seed: u64,
    /// Case 6 only; defaults to `max_key / 2`.
    pub repeated_value: Option<Key>,
    /// Case 3 only.
    pub sorted_fraction: f64,
}

impl InputSpec {
    pub fn new(case: CaseId, n: usize, seed: u64) -> Self {
        Self {
            case,
            n,
            max_key: case.default_max_key(),
            seed,
            repeated_value: None,
            sorted_fraction: DEFAULT_SORTED_FRACTION,
        }
    }

    pub fn with_max_key(mut self, max_key: Key) -> Self {
        self.max_key = max_key;
        self
    }

    pub fn with_repeated_value(mut self, value: Key) -> Self {
        self.repeated_value = Some(value);
        self
    }

    pub fn with_sorted_fraction(mut self, fraction: f64) -> Self {
        self.sorted_fraction = fraction;
        self
    }

    pub fn repeated_value(&self) -> Key {
        self.repeated_value.unwrap_or(self.max_key / 2)
    }

    /// Number of swaps applied to the sorted keys in case 3.
    pub fn displacement_swaps(&self) -> usize {
        ((1.0 - self.sorted_fraction) * self.n as f64).floor() as usize
    }

    /// Number of keys equal to the repeated value in case 6: `ceil(n / 3)`.
    pub fn repeated_count(&self) -> usize {
        self.n.div_ceil(3)
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.max_key > MAX_RANGE_BOUND {
            return Err(GenError::RangeTooLarge(self.max_key));
        }
        if !(0.0..=1.0).contains(&self.sorted_fraction) {
            return Err(GenError::InvalidSortedFraction(self.sorted_fraction));
        }
        if self.case == CaseId::RepeatedValue {
            let needed = (2 * self.n as u128).div_ceil(3);
            if needed > self.max_key as u128 {
                return Err(GenError::RepeatedCaseInfeasible {
                    n: self.n,
                    max_key: self.max_key,
                });
            }
            let value = self.repeated_value();
            if value > self.max_key {
                return Err(GenError::RepeatedValueOutOfRange {
                    value,
                    max_key: self.max_key,
                });
            }
        }
        Ok(())
    }
}

/// Generates the sequence described by `spec`. Tags are the final positions
/// `0..n`.
pub fn generate(spec: &InputSpec) -> Result<Vec<Record>, GenError> {
    spec.validate()?;
    let mut rng = RngState::new(spec.seed);
    let keys = match spec.case {
        CaseId::Uniform | CaseId::SmallRange | CaseId::LargeRange => {
            uniform_keys(&mut rng, spec.n, spec.max_key)?
        }
        CaseId::Sorted => {
            let mut keys = uniform_keys(&mut rng, spec.n, spec.max_key)?;
            keys.sort_unstable();
            keys
        }
        CaseId::NearlySorted => {
            let mut keys = uniform_keys(&mut rng, spec.n, spec.max_key)?;
            keys.sort_unstable();
            for _ in 0..spec.displacement_swaps() {
                let i = rng.below(spec.n as u64)? as usize;
                let j = rng.below(spec.n as u64)? as usize;
                keys.swap(i, j);
            }
            keys
        }
        CaseId::RepeatedValue => repeated_value_keys(&mut rng, spec)?,
    };
    Ok(crate::sorting::records_from_keys(&keys))
}

fn uniform_keys(rng: &mut RngState, n: usize, max_key: Key) -> Result<Vec<Key>, GenError> {
    (0..n).map(|_| rng.below(max_key + 1)).collect()
}

/// `ceil(n/3)` copies of the repeated value followed by distinct values from
/// an arithmetic walk modulo `max_key + 1` whose stride is coprime to the
/// modulus, then shuffled.
fn repeated_value_keys(rng: &mut RngState, spec: &InputSpec) -> Result<Vec<Key>, GenError> {
    let repeated = spec.repeated_value();
    let n = spec.n;
    let mut keys = vec![repeated; spec.repeated_count()];
    keys.reserve(n - keys.len());
    if keys.len() < n {
        let span = spec.max_key + 1;
        let mut value = rng.below(span)?;
        let stride = coprime_stride(rng, span)?;
        while keys.len() < n {
            if value != repeated {
                keys.push(value);
            }
            value += stride;
            if value >= span {
                value -= span;
            }
        }
    }
    shuffle(rng, &mut keys)?;
    Ok(keys)
}

/// An odd stride in `[1, span)` sharing no factor with `span`.
fn coprime_stride(rng: &mut RngState, span: u64) -> Result<u64, GenError> {
    if span <= 2 {
        return Ok(1);
    }
    loop {
        let stride = (1 + rng.below(span - 1)?) | 1;
        if stride < span && stride.gcd(&span) == 1 {
            return Ok(stride);
        }
    }
}

/// Fisher-Yates.
fn shuffle<T>(rng: &mut RngState, items: &mut [T]) -> Result<(), GenError> {
    for i in (1..items.len()).rev() {
        let j = rng.below(i as u64 + 1)? as usize;
        items.swap(i, j);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn keys(spec: &InputSpec) -> Vec<Key> {
        generate(spec).unwrap().iter().map(|r| r.key).collect()
    }

    #[test]
    fn case_defaults() {
        assert_eq!(InputSpec::new(CaseId::Uniform, 1, 0).max_key, 1_000_000);
        assert_eq!(InputSpec::new(CaseId::SmallRange, 1, 0).max_key, 10_000);
        assert_eq!(
            InputSpec::new(CaseId::LargeRange, 1, 0).max_key,
            100_000_000
        );
        assert_eq!(
            InputSpec::new(CaseId::RepeatedValue, 1, 0).repeated_value(),
            500_000
        );
        assert_eq!(
            InputSpec::new(CaseId::NearlySorted, 1000, 0).displacement_swaps(),
            50
        );
        assert!(CaseId::from_number(7).is_err());
        assert!(CaseId::from_number(0).is_err());
    }

    #[test]
    fn sorted_case_is_sorted() {
        let k = keys(&InputSpec::new(CaseId::Sorted, 5000, 3));
        assert!(k.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn sorted_case_is_the_uniform_sample_sorted() {
        let mut uniform = keys(&InputSpec::new(CaseId::Uniform, 3000, 8));
        uniform.sort_unstable();
        assert_eq!(keys(&InputSpec::new(CaseId::Sorted, 3000, 8)), uniform);
    }

    #[test]
    fn small_repeated_case() {
        let spec = InputSpec::new(CaseId::RepeatedValue, 9, 11)
            .with_max_key(100)
            .with_repeated_value(50);
        let k = keys(&spec);
        assert_eq!(k.len(), 9);
        assert_eq!(k.iter().filter(|&&x| x == 50).count(), 3);
        let mut others: Vec<Key> = k.iter().copied().filter(|&x| x != 50).collect();
        others.sort_unstable();
        others.dedup();
        assert_eq!(others.len(), 6);
        assert!(k.iter().all(|&x| x <= 100));
    }

    #[test]
    fn repeated_case_at_feasibility_edge() {
        // n = 9 needs 6 distinct values; M = 6 gives 7 candidates including k.
        for k in 0..=6 {
            let spec = InputSpec::new(CaseId::RepeatedValue, 9, k)
                .with_max_key(6)
                .with_repeated_value(k);
            let got = keys(&spec);
            let mut counts: HashMap<Key, usize> = HashMap::new();
            for x in got {
                *counts.entry(x).or_default() += 1;
            }
            assert_eq!(counts[&k], 3);
            assert_eq!(counts.len(), 7);
        }
        let spec = InputSpec::new(CaseId::RepeatedValue, 9, 0).with_max_key(5);
        assert_eq!(
            generate(&spec),
            Err(GenError::RepeatedCaseInfeasible { n: 9, max_key: 5 })
        );
    }

    #[test]
    fn repeated_case_is_shuffled() {
        let k = keys(&InputSpec::new(CaseId::RepeatedValue, 3000, 2));
        let repeated = 500_000;
        let prefix_hits = k[..1000].iter().filter(|&&x| x == repeated).count();
        assert!(prefix_hits < 1000);
        assert!(prefix_hits > 100);
    }

    #[test]
    fn empty_sequences() {
        for case in CaseId::ALL {
            assert!(generate(&InputSpec::new(case, 0, 1)).unwrap().is_empty());
        }
    }

    #[test]
    fn invalid_specs() {
        let spec = InputSpec::new(CaseId::Uniform, 10, 0).with_max_key(MAX_RANGE_BOUND + 1);
        assert_eq!(
            generate(&spec),
            Err(GenError::RangeTooLarge(MAX_RANGE_BOUND + 1))
        );
        let spec = InputSpec::new(CaseId::NearlySorted, 10, 0).with_sorted_fraction(1.5);
        assert!(matches!(
            generate(&spec),
            Err(GenError::InvalidSortedFraction(_))
        ));
        let spec = InputSpec::new(CaseId::RepeatedValue, 10, 0)
            .with_max_key(100)
            .with_repeated_value(101);
        assert!(matches!(
            generate(&spec),
            Err(GenError::RepeatedValueOutOfRange { .. })
        ));
    }

    #[test]
    fn coprime_stride_for_odd_composite_span() {
        // 1_000_001 = 101 * 9901
        let mut rng = RngState::new(0);
        for _ in 0..1000 {
            let s = coprime_stride(&mut rng, 1_000_001).unwrap();
            assert!(s % 2 == 1 && !s.is_multiple_of(101) && !s.is_multiple_of(9901));
        }
    }
}
