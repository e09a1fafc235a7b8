use super::GenError;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 generator state. Identical seeds give identical streams on
/// every platform.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RngState {
    state: u64,
}

impl RngState {
    pub const fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `[0, bound)`. Raw outputs at or above the largest
    /// multiple of `bound` that fits in 2^64 are rejected, so there is no
    /// modulo bias.
    pub fn below(&mut self, bound: u64) -> Result<u64, GenError> {
        if bound == 0 {
            return Err(GenError::ZeroBound);
        }
        let zone = ((1u128 << 64) / bound as u128) * bound as u128;
        loop {
            let x = self.next_u64();
            if (x as u128) < zone {
                return Ok(x % bound);
            }
        }
    }
}

/// Functional form of [`RngState::next_u64`].
pub fn rng_next(state: RngState) -> (RngState, u64) {
    let mut s = state;
    let x = s.next_u64();
    (s, x)
}

/// Functional form of [`RngState::below`].
pub fn rng_below(state: RngState, bound: u64) -> Result<(RngState, u64), GenError> {
    let mut s = state;
    let x = s.below(bound)?;
    Ok((s, x))
}
