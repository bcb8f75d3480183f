//! Seeded pseudo-random stream.
//!
//! xorshift64* (Vigna 2016): shifts 12, 25, 27 and output multiplier
//! `0x2545F4914F6CDD1D`. The seed is first passed through one splitmix64
//! step (increment `0x9E3779B97F4A7C15`, multipliers `0xBF58476D1CE4E5B9` and
//! `0x94D049BB133111EB`) so that seed 0 gives a nonzero state.

const SPLITMIX_INC: u64 = 0x9E37_79B9_7F4A_7C15;
const XORSHIFT_MUL: u64 = 0x2545_F491_4F6C_DD1D;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeededRng {
    state: u64,
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(SPLITMIX_INC);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        let mut state = splitmix64(seed);
        if state == 0 {
            state = SPLITMIX_INC;
        }
        SeededRng { state }
    }

    /// Independent stream for a sub-task: `seed ^ index`.
    pub fn for_task(seed: u64, index: u64) -> Self {
        Self::new(seed ^ index)
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(XORSHIFT_MUL)
    }

    /// Uniform value in `0..bound` (rejection sampling, no modulo bias).
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }
}
