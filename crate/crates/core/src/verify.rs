//! Ground truth for the sorts: an independent stable merge sort and checkers
//! for sortedness, permutation and stability.

use std::collections::HashMap;

use thiserror::Error;

use crate::sorting::Record;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("output is not a permutation of the input")]
    NotAPermutation,
}

/// Top-down merge sort. Slow and simple; shares no code with the sorts it
/// checks.
pub fn oracle_sort(seq: &[Record]) -> Vec<Record> {
    let mut items = seq.to_vec();
    let mut buf = items.clone();
    merge_sort(&mut items, &mut buf);
    items
}

fn merge_sort(items: &mut [Record], buf: &mut [Record]) {
    let len = items.len();
    if len < 2 {
        return;
    }
    let mid = len / 2;
    {
        let (left, right) = items.split_at_mut(mid);
        let (buf_left, buf_right) = buf.split_at_mut(mid);
        merge_sort(left, buf_left);
        merge_sort(right, buf_right);
    }
    buf[..len].copy_from_slice(items);
    let (left, right) = buf[..len].split_at(mid);
    let (mut i, mut j) = (0, 0);
    for slot in items.iter_mut() {
        // Ties take from the left half.
        let take_left = j == right.len() || (i < left.len() && left[i].key <= right[j].key);
        if take_left {
            *slot = left[i];
            i += 1;
        } else {
            *slot = right[j];
            j += 1;
        }
    }
}

pub fn is_sorted(seq: &[Record]) -> bool {
    seq.windows(2).all(|w| w[0].key <= w[1].key)
}

/// True when `a` and `b` hold the same multiset of `(key, tag)` pairs.
pub fn is_permutation(a: &[Record], b: &[Record]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a: Vec<(u64, u64)> = a.iter().map(|r| (r.key, r.tag)).collect();
    let mut b: Vec<(u64, u64)> = b.iter().map(|r| (r.key, r.tag)).collect();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// True when `a` and `b` hold the same multiset of keys, ignoring tags.
pub fn same_keys(a: &[Record], b: &[Record]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a: Vec<u64> = a.iter().map(|r| r.key).collect();
    let mut b: Vec<u64> = b.iter().map(|r| r.key).collect();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// For every key, the tags carrying it must appear in the same relative order
/// in `input` and `output`. Fails when `output` is not a permutation of
/// `input`, so "unstable" and "wrong" are told apart.
pub fn is_stable(input: &[Record], output: &[Record]) -> Result<bool, VerifyError> {
    if !is_permutation(input, output) {
        return Err(VerifyError::NotAPermutation);
    }
    let mut by_key: HashMap<u64, Vec<u64>> = HashMap::new();
    for r in input {
        by_key.entry(r.key).or_default().push(r.tag);
    }
    let mut seen: HashMap<u64, usize> = HashMap::new();
    for r in output {
        let i = seen.entry(r.key).or_default();
        if by_key[&r.key][*i] != r.tag {
            return Ok(false);
        }
        *i += 1;
    }
    Ok(true)
}
