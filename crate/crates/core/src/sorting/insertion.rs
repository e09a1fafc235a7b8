use super::Record;

/// Stable insertion sort. Returns a sorted copy of `seq`.
pub fn insertion_sort(seq: &[Record]) -> Vec<Record> {
    let mut out = seq.to_vec();
    insertion_sort_in_place(&mut out);
    out
}

/// Shift-and-insert: each element moves left past strictly greater keys only,
/// so equal keys keep their relative order.
pub fn insertion_sort_in_place(v: &mut [Record]) {
    for j in 1..v.len() {
        let current = v[j];
        let mut i = j;
        while i > 0 && v[i - 1].key > current.key {
            v[i] = v[i - 1];
            i -= 1;
        }
        v[i] = current;
    }
}
