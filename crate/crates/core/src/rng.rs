//! Reproducible random streams.
//!
//! Every random quantity in the crate is drawn from a ChaCha8 stream that is
//! a pure function of `(master_seed, stream_index, tag)`:
//!
//! * the 256-bit ChaCha key is four consecutive SplitMix64 outputs started
//!   from `master_seed ^ splitmix64_mix(tag)`,
//! * the ChaCha stream number is `stream_index`.
//!
//! The tag separates independent roles inside one path (vertical walk,
//! horizontal walk, one geometric sequence per level, ...). Nothing depends
//! on thread count or scheduling.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Identifies one reproducible random stream family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl SeedSpec {
    pub const fn new(master_seed: u64, stream_index: u64) -> Self {
        Self { master_seed, stream_index }
    }

    /// Seed for path `index` of an ensemble driven by `master_seed`.
    pub const fn path(master_seed: u64, index: u64) -> Self {
        Self::new(master_seed, index)
    }

    pub fn stream(&self, tag: u64) -> Stream {
        Stream::new(*self, tag)
    }
}

/// Stream tags. Geometric sequences use `GEOMETRIC_BASE + level_index`.
pub mod tag {
    pub const DIRECT: u64 = 0;
    pub const HORIZONTAL: u64 = 1;
    pub const VERTICAL: u64 = 2;
    pub const ORACLE: u64 = 3;
    pub const TAIL: u64 = 4;
    pub const SIMPLE_WALK: u64 = 5;
    pub const REFERENCE: u64 = 6;
    pub const GEOMETRIC_BASE: u64 = 0x100;
}

/// SplitMix64 finalizer.
pub fn splitmix64_mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a new master seed from an existing one and a label, used when
/// one experiment needs several independent ensembles.
pub fn derive_master(master_seed: u64, label: u64) -> u64 {
    splitmix64_mix(master_seed ^ splitmix64_mix(label.wrapping_add(0xA5A5_A5A5)))
}

fn chacha_key(master_seed: u64, tag: u64) -> [u8; 32] {
    let mut state = master_seed ^ splitmix64_mix(tag);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        chunk.copy_from_slice(&(z ^ (z >> 31)).to_le_bytes());
    }
    key
}

const INV_2_53: f64 = 1.0 / (1u64 << 53) as f64;

pub struct Stream {
    rng: ChaCha8Rng,
}

impl Stream {
    pub fn new(seed: SeedSpec, tag: u64) -> Self {
        let mut rng = ChaCha8Rng::from_seed(chacha_key(seed.master_seed, tag));
        rng.set_stream(seed.stream_index);
        Self { rng }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * INV_2_53
    }

    /// Uniform on `(0, 1]`, safe to feed to a logarithm.
    #[inline]
    pub fn uniform_open0(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * INV_2_53
    }

    pub fn rng_mut(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// A simple symmetric random walk driven by the bits of a [`Stream`].
///
/// Bit `1` is a `+1` step. Bits are consumed least-significant first, and
/// [`BitWalk::advance`] consumes exactly the bits that the same number of
/// [`BitWalk::step`] calls would, so bulk and single-step use give the same
/// walk.
pub struct BitWalk {
    stream: Stream,
    word: u64,
    left: u32,
}

impl BitWalk {
    pub fn new(stream: Stream) -> Self {
        Self { stream, word: 0, left: 0 }
    }

    #[inline]
    fn refill(&mut self) {
        self.word = self.stream.next_u64();
        self.left = 64;
    }

    #[inline]
    pub fn step(&mut self) -> i64 {
        if self.left == 0 {
            self.refill();
        }
        let bit = self.word & 1;
        self.word >>= 1;
        self.left -= 1;
        2 * bit as i64 - 1
    }

    /// Displacement after `k` further steps.
    pub fn advance(&mut self, mut k: u64) -> i64 {
        let mut ones: i64 = 0;
        let total = k as i64;
        while k > 0 {
            if self.left == 0 {
                if k >= 64 {
                    ones += self.stream.next_u64().count_ones() as i64;
                    k -= 64;
                    continue;
                }
                self.refill();
            }
            let take = k.min(self.left as u64) as u32;
            let mask = if take == 64 { u64::MAX } else { (1u64 << take) - 1 };
            ones += (self.word & mask).count_ones() as i64;
            self.word = if take == 64 { 0 } else { self.word >> take };
            self.left -= take;
            k -= take as u64;
        }
        2 * ones - total
    }
}
