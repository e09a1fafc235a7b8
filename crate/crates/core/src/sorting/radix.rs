use super::{Key, Record, SortError};

/// Digit layout for an LSD radix sort: `digits` base-`base` digits, enough to
/// represent the largest key of the sequence the plan was built for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RadixPlan {
    base: u64,
    digits: u32,
}

impl RadixPlan {
    /// Smallest plan covering keys up to `max_key`. Zero still needs one digit.
    pub fn for_max_key(max_key: Key, base: u64) -> Result<Self, SortError> {
        if base < 2 {
            return Err(SortError::InvalidBase(base));
        }
        let mut digits = 1;
        let mut capacity = base;
        while capacity <= max_key {
            digits += 1;
            match capacity.checked_mul(base) {
                Some(next) => capacity = next,
                None => break,
            }
        }
        Ok(Self { base, digits })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    fn check_digit(&self, index: u32) -> Result<(), SortError> {
        if index < self.digits {
            Ok(())
        } else {
            Err(SortError::DigitOutOfRange {
                index,
                digits: self.digits,
            })
        }
    }
}

pub fn build_radix_plan(seq: &[Record], base: u64) -> Result<RadixPlan, SortError> {
    let max_key = seq.iter().map(|r| r.key).max().unwrap_or(0);
    RadixPlan::for_max_key(max_key, base)
}

/// `floor(key / base^index) mod base`. Digits past the top of `u64` are zero.
pub fn extract_digit(key: Key, index: u32, base: u64) -> u64 {
    match base.checked_pow(index) {
        Some(divisor) => key / divisor % base,
        None => 0,
    }
}

/// One counting sort pass from `src` into `dst` keyed on the digit selected by
/// `divisor` (`base^index`). `counts` must hold exactly `base` slots.
fn counting_pass(
    src: &[Record],
    dst: &mut [Record],
    divisor: u64,
    base: u64,
    counts: &mut [usize],
) {
    debug_assert_eq!(src.len(), dst.len());
    debug_assert_eq!(counts.len() as u64, base);

    counts.fill(0);
    for r in src {
        counts[(r.key / divisor % base) as usize] += 1;
    }
    // counts[d] becomes the number of records whose digit is <= d.
    for d in 1..counts.len() {
        counts[d] += counts[d - 1];
    }
    // Walking backwards places the last of each run of equal digits furthest
    // right, which is what keeps the pass stable.
    for r in src.iter().rev() {
        let slot = &mut counts[(r.key / divisor % base) as usize];
        *slot -= 1;
        dst[*slot] = *r;
    }
}

/// Stable counting sort of `seq` on digit `digit_index` of `plan`.
pub fn counting_sort_by_digit(
    seq: &[Record],
    plan: &RadixPlan,
    digit_index: u32,
) -> Result<Vec<Record>, SortError> {
    plan.check_digit(digit_index)?;
    let mut out = vec![Record::default(); seq.len()];
    let mut counts = vec![0usize; plan.base as usize];
    let divisor = plan.base.checked_pow(digit_index).unwrap_or(u64::MAX);
    counting_pass(seq, &mut out, divisor, plan.base, &mut counts);
    Ok(out)
}

/// LSD radix sort: one stable counting pass per digit, least significant
/// first. The result does not depend on `base`.
pub fn radix_sort_lsd(seq: &[Record], base: u64) -> Result<Vec<Record>, SortError> {
    let plan = build_radix_plan(seq, base)?;
    let n = seq.len();
    let mut counts = vec![0usize; plan.base as usize];

    // The first pass reads the borrowed input directly; later passes
    // ping-pong between two owned buffers.
    let mut current = vec![Record::default(); n];
    counting_pass(seq, &mut current, 1, plan.base, &mut counts);
    if plan.digits == 1 {
        return Ok(current);
    }
    let mut scratch = vec![Record::default(); n];
    let mut divisor = 1u64;
    for _ in 1..plan.digits {
        // The plan guarantees base^(digits-1) <= max key, so this cannot overflow.
        divisor *= plan.base;
        counting_pass(&current, &mut scratch, divisor, plan.base, &mut counts);
        std::mem::swap(&mut current, &mut scratch);
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sorting::{keys_of, records_from_keys};

    #[test]
    fn plan_digit_counts() {
        assert_eq!(
            build_radix_plan(&records_from_keys(&[0]), 10)
                .unwrap()
                .digits(),
            1
        );
        assert_eq!(build_radix_plan(&[], 10).unwrap().digits(), 1);
        assert_eq!(
            build_radix_plan(&records_from_keys(&[999_999]), 10)
                .unwrap()
                .digits(),
            6
        );
        // 100000000 has nine decimal digits.
        assert_eq!(
            build_radix_plan(&records_from_keys(&[100_000_000]), 10)
                .unwrap()
                .digits(),
            9
        );
        assert_eq!(RadixPlan::for_max_key(255, 256).unwrap().digits(), 1);
        assert_eq!(RadixPlan::for_max_key(256, 256).unwrap().digits(), 2);
        assert_eq!(RadixPlan::for_max_key(u64::MAX, 2).unwrap().digits(), 64);
        assert_eq!(RadixPlan::for_max_key(u64::MAX, 10).unwrap().digits(), 20);
    }

    #[test]
    fn plan_rejects_small_base() {
        assert_eq!(build_radix_plan(&[], 1), Err(SortError::InvalidBase(1)));
        assert_eq!(radix_sort_lsd(&[], 0), Err(SortError::InvalidBase(0)));
    }

    #[test]
    fn digit_examples() {
        assert_eq!(extract_digit(170, 0, 10), 0);
        assert_eq!(extract_digit(170, 1, 10), 7);
        assert_eq!(extract_digit(170, 2, 10), 1);
        assert_eq!(extract_digit(170, 3, 10), 0);
        assert_eq!(extract_digit(u64::MAX, 70, 2), 0);
    }

    #[test]
    fn counting_pass_examples() {
        let input = records_from_keys(&[170, 45, 75]);
        let plan = build_radix_plan(&input, 10).unwrap();
        let by_ones = counting_sort_by_digit(&input, &plan, 0).unwrap();
        assert_eq!(keys_of(&by_ones), [170, 45, 75]);
        let by_tens = counting_sort_by_digit(&input, &plan, 1).unwrap();
        assert_eq!(keys_of(&by_tens), [45, 170, 75]);
        assert_eq!(
            counting_sort_by_digit(&input, &plan, 3),
            Err(SortError::DigitOutOfRange {
                index: 3,
                digits: 3
            })
        );
    }

    #[test]
    fn classic_radix_example() {
        let input = records_from_keys(&[170, 45, 75, 90, 802, 24, 2, 66]);
        let out = radix_sort_lsd(&input, 10).unwrap();
        assert_eq!(keys_of(&out), [2, 24, 45, 66, 75, 90, 170, 802]);
        assert_eq!(radix_sort_lsd(&input, 256).unwrap(), out);
    }

    #[test]
    fn radix_empty_and_zeros() {
        assert!(radix_sort_lsd(&[], 10).unwrap().is_empty());
        let zeros = records_from_keys(&[0, 0, 0]);
        assert_eq!(radix_sort_lsd(&zeros, 10).unwrap(), zeros);
    }

    #[test]
    fn radix_handles_full_width_keys() {
        let input = records_from_keys(&[u64::MAX, 0, u64::MAX - 1, 1 << 63]);
        for base in [2, 10, 256, 1 << 16] {
            let out = radix_sort_lsd(&input, base).unwrap();
            assert_eq!(keys_of(&out), [0, 1 << 63, u64::MAX - 1, u64::MAX]);
        }
    }
}
