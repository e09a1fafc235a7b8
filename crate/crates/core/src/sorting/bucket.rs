use super::insertion::insertion_sort_in_place;
use super::{Key, Record, SortError};

/// Bucket for `key` among `n` buckets covering `[0, max_key]`:
/// `floor(n * key / (max_key + 1))`.
///
/// Dividing by `max_key + 1` rather than `max_key` keeps the largest key in
/// bucket `n - 1` instead of one past the end.
pub fn bucket_index(key: Key, n: usize, max_key: Key) -> Result<usize, SortError> {
    if n == 0 {
        return Err(SortError::NoBuckets);
    }
    if key > max_key {
        return Err(SortError::KeyOutOfRange { key, max_key });
    }
    let span = max_key as u128 + 1;
    Ok(((n as u128 * key as u128) / span) as usize)
}

/// Maps keys to buckets, using 64-bit arithmetic when `n * (max_key + 1)`
/// provably fits and 128-bit arithmetic otherwise.
enum IndexMap {
    Narrow { n: u64, span: u64 },
    Wide { n: u128, span: u128 },
}

impl IndexMap {
    fn new(n: usize, max_key: Key) -> Self {
        let n64 = n as u64;
        match max_key
            .checked_add(1)
            .and_then(|span| n64.checked_mul(span).map(|_| span))
        {
            Some(span) => IndexMap::Narrow { n: n64, span },
            None => IndexMap::Wide {
                n: n as u128,
                span: max_key as u128 + 1,
            },
        }
    }

    #[inline]
    fn index(&self, key: Key) -> usize {
        match *self {
            IndexMap::Narrow { n, span } => (n * key / span) as usize,
            IndexMap::Wide { n, span } => (n * key as u128 / span) as usize,
        }
    }
}

/// Bucket sort with one bucket per element. Keys are distributed in arrival
/// order, each bucket is insertion sorted, and the buckets are concatenated.
/// Stable.
///
/// All buckets live in the output buffer as adjacent slices: a counting pass
/// sizes them, then records are appended to their bucket in input order. The
/// concatenation step is therefore implicit.
pub fn bucket_sort(seq: &[Record], max_key: Key) -> Result<Vec<Record>, SortError> {
    let n = seq.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if let Some(bad) = seq.iter().find(|r| r.key > max_key) {
        return Err(SortError::KeyOutOfRange {
            key: bad.key,
            max_key,
        });
    }

    let map = IndexMap::new(n, max_key);
    // ends[b + 1] counts bucket b, then becomes its start after the prefix
    // sum, then its end once the bucket is filled.
    let mut ends = vec![0usize; n + 1];
    for r in seq {
        ends[map.index(r.key) + 1] += 1;
    }
    for b in 1..=n {
        ends[b] += ends[b - 1];
    }
    let mut out = vec![Record::default(); n];
    for r in seq {
        let cursor = &mut ends[map.index(r.key)];
        out[*cursor] = *r;
        *cursor += 1;
    }

    let mut start = 0;
    for &end in &ends[..n] {
        if end - start > 1 {
            insertion_sort_in_place(&mut out[start..end]);
        }
        start = end;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sorting::{keys_of, records_from_keys};

    #[test]
    fn index_examples() {
        assert_eq!(bucket_index(0, 10, 999), Ok(0));
        assert_eq!(bucket_index(999, 10, 999), Ok(9));
        // floor(10 * 500 / 1000)
        assert_eq!(bucket_index(500, 10, 999), Ok(5));
    }

    #[test]
    fn index_rejects_out_of_range_key() {
        assert_eq!(
            bucket_index(1000, 10, 999),
            Err(SortError::KeyOutOfRange {
                key: 1000,
                max_key: 999
            })
        );
        assert_eq!(bucket_index(0, 0, 999), Err(SortError::NoBuckets));
    }

    #[test]
    fn index_does_not_overflow_at_range_limits() {
        let n = 1usize << 32;
        let max_key = 1u64 << 40;
        assert_eq!(bucket_index(max_key, n, max_key), Ok(n - 1));
        assert_eq!(bucket_index(max_key / 2, n, max_key), Ok(n / 2 - 1));
        assert_eq!(bucket_index(u64::MAX, 3, u64::MAX), Ok(2));
    }

    #[test]
    fn fast_and_wide_paths_agree() {
        for &(n, max_key) in &[(10usize, 999u64), (7, 1 << 40), (1 << 20, u64::MAX - 1)] {
            let map = IndexMap::new(n, max_key);
            for key in [0, 1, max_key / 3, max_key / 2, max_key - 1, max_key] {
                assert_eq!(map.index(key), bucket_index(key, n, max_key).unwrap());
            }
        }
    }

    #[test]
    fn sorts_and_keeps_ties_in_order() {
        let input = vec![
            Record::new(7, 0),
            Record::new(3, 1),
            Record::new(7, 2),
            Record::new(0, 3),
            Record::new(9, 4),
            Record::new(3, 5),
        ];
        let out = bucket_sort(&input, 9).unwrap();
        assert_eq!(keys_of(&out), [0, 3, 3, 7, 7, 9]);
        let tags: Vec<u64> = out.iter().map(|r| r.tag).collect();
        assert_eq!(tags, [3, 1, 5, 0, 2, 4]);
    }

    #[test]
    fn sorted_input_is_identity() {
        let input = records_from_keys(&[0, 1, 1, 5, 8, 8, 8, 20]);
        assert_eq!(bucket_sort(&input, 20).unwrap(), input);
    }

    #[test]
    fn empty_input() {
        assert!(bucket_sort(&[], 0).unwrap().is_empty());
    }

    #[test]
    fn key_above_bound_is_an_error() {
        let input = records_from_keys(&[1, 11, 2]);
        assert_eq!(
            bucket_sort(&input, 10),
            Err(SortError::KeyOutOfRange {
                key: 11,
                max_key: 10
            })
        );
    }
}
