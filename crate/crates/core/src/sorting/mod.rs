//! The sorting algorithms. Every sort takes a borrowed slice and returns a new
//! vector, so a benchmark can re-run the same input any number of times.

mod bucket;
mod insertion;
mod radix;

pub use bucket::{bucket_index, bucket_sort};
pub use insertion::{insertion_sort, insertion_sort_in_place};
pub use radix::{
    build_radix_plan, counting_sort_by_digit, extract_digit, radix_sort_lsd, RadixPlan,
};

use thiserror::Error;

/// A sortable non-negative integer.
pub type Key = u64;

/// A key plus an opaque payload. Only `key` takes part in ordering; `tag` is
/// carried along so stability can be observed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Record {
    pub key: Key,
    pub tag: u64,
}

impl Record {
    pub const fn new(key: Key, tag: u64) -> Self {
        Self { key, tag }
    }
}

/// Builds records from bare keys, tagging each with its position.
pub fn records_from_keys(keys: &[Key]) -> Vec<Record> {
    keys.iter()
        .enumerate()
        .map(|(i, &key)| Record::new(key, i as u64))
        .collect()
}

pub fn keys_of(records: &[Record]) -> Vec<Key> {
    records.iter().map(|r| r.key).collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SortError {
    #[error("key {key} exceeds the declared range bound {max_key}")]
    KeyOutOfRange { key: Key, max_key: Key },
    #[error("bucket count must be at least 1")]
    NoBuckets,
    #[error("radix base must be at least 2, got {0}")]
    InvalidBase(u64),
    #[error("digit index {index} is outside the plan's {digits} digits")]
    DigitOutOfRange { index: u32, digits: u32 },
}
