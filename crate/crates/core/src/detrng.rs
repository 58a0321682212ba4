//! Portable pseudo-random numbers.
//!
//! The generator is xoshiro256** seeded through a splitmix64 avalanche of
//! `(base_seed, stream_id)`. Everything is integer arithmetic except the
//! conversion to `[0,1)` and the Gaussian sampler, which only uses `+ - * /`
//! and `sqrt` (all correctly rounded under IEEE-754), so streams are bit
//! identical on every target.
//!
//! Gaussian draws use the Kinderman-Monahan ratio-of-uniforms method. Its
//! acceptance test needs a logarithm; [`portable_ln`] computes one from the
//! exponent bits and an `atanh` series so no platform libm is involved.

/// Golden ratio increment of splitmix64.
const SM_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
/// Odd constant separating the stream id from the base seed before mixing.
const STREAM_KEY: u64 = 0xD1B5_4A32_D192_ED03;
/// Replacement state word used if seeding ever produced all zeros.
const NONZERO_FALLBACK: u64 = 0x0123_4567_89AB_CDEF;

fn splitmix64(x: &mut u64) -> u64 {
    *x = x.wrapping_add(SM_GAMMA);
    let mut z = *x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator state tagged with the seed pair it was derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngState {
    pub state: [u64; 4],
    pub base_seed: u64,
    pub stream_id: u64,
}

/// Derive the state for replication or channel `stream_id` under `base_seed`.
pub fn seed_stream(base_seed: u64, stream_id: u64) -> RngState {
    // Mix the stream id first so that nearby ids land far apart, then fold it
    // into the base seed and expand with splitmix64.
    let mut s = stream_id.wrapping_mul(STREAM_KEY);
    let h = splitmix64(&mut s);
    let mut x = base_seed ^ h.rotate_left(17);
    let mut state = [0u64; 4];
    for w in state.iter_mut() {
        *w = splitmix64(&mut x);
    }
    if state == [0; 4] {
        state[0] = NONZERO_FALLBACK;
    }
    RngState {
        state,
        base_seed,
        stream_id,
    }
}

impl RngState {
    /// xoshiro256** step.
    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.state;
        let result = s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform on `[0,1)`: the top 53 bits scaled by 2^-53.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Uniform on `(0,1)`, never returning zero.
    fn next_open_unit(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Standard normal draw (ratio of uniforms).
    pub fn next_gaussian(&mut self) -> f64 {
        // sqrt(8/e), the half-width of the enclosing rectangle in v.
        const V_HALF: f64 = 1.715_527_769_921_413_5;
        loop {
            let u = self.next_open_unit();
            let v = V_HALF * (2.0 * self.next_unit() - 1.0);
            let x = v / u;
            let xx = x * x;
            // Quick acceptance and rejection bounds around -4 ln u.
            if xx <= 5.0 - 4.0 * 1.284_025_416_687_741_5 * u {
                return x;
            }
            if xx >= 4.0 * 0.259_240_260_645_891_5 / u + 1.4 {
                continue;
            }
            if xx <= -4.0 * portable_ln(u) {
                return x;
            }
        }
    }
}

/// Natural logarithm of a positive finite value using basic operations only.
///
/// `x = m * 2^e` with `m` in `[sqrt(1/2), sqrt(2))`, then
/// `ln m = 2 atanh((m-1)/(m+1))` summed to convergence.
pub fn portable_ln(x: f64) -> f64 {
    debug_assert!(x > 0.0 && x.is_finite());
    const LN2: f64 = core::f64::consts::LN_2;
    let mut bits = x.to_bits();
    let mut e: i64 = ((bits >> 52) & 0x7ff) as i64;
    if e == 0 {
        // Subnormal: scale into the normal range first.
        let y = x * 18_014_398_509_481_984.0; // 2^54
        bits = y.to_bits();
        e = ((bits >> 52) & 0x7ff) as i64 - 54;
    }
    e -= 1023;
    let mut m = f64::from_bits((bits & 0x000f_ffff_ffff_ffff) | 0x3ff0_0000_0000_0000);
    if m > core::f64::consts::SQRT_2 {
        m *= 0.5;
        e += 1;
    }
    let t = (m - 1.0) / (m + 1.0);
    let t2 = t * t;
    let mut term = t;
    let mut sum = 0.0;
    let mut k = 1.0;
    // |t| <= 0.1716 so 20 terms reach well below one ulp.
    for _ in 0..20 {
        sum += term / k;
        term *= t2;
        k += 2.0;
    }
    2.0 * sum + e as f64 * LN2
}

/// Render `(base, stream, index, value_hex)` lines for the golden file.
pub fn golden_lines(cases: &[(u64, u64)], count: usize) -> Vec<String> {
    let mut out = Vec::new();
    for &(base, stream) in cases {
        let mut r = seed_stream(base, stream);
        for i in 0..count {
            out.push(format!("{} {} {} {:016x}", base, stream, i, r.next_u64()));
        }
    }
    out
}

/// The seed pairs recorded in `golden/rng_streams.txt`.
pub const GOLDEN_CASES: [(u64, u64); 5] = [
    (0, 0),
    (0, 1),
    (1, 0),
    (42, 7),
    (u64::MAX, u64::MAX),
];
/// Values recorded per golden seed pair.
pub const GOLDEN_COUNT: usize = 16;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_matches_libm() {
        for &x in &[1e-300, 1e-10, 0.1, 0.5, 0.7071, 1.0, 1.5, 2.0, 10.0, 1e10, 5e-324] {
            let a = portable_ln(x);
            let b = libm::log(x);
            assert!((a - b).abs() <= 4.0 * f64::EPSILON * b.abs().max(1.0), "{x}: {a} {b}");
        }
    }

    #[test]
    fn streams_differ() {
        let mut a = seed_stream(0, 0);
        let mut b = seed_stream(0, 1);
        assert_ne!(a.next_u64(), b.next_u64());
        assert_eq!(seed_stream(9, 3), seed_stream(9, 3));
    }

    #[test]
    fn unit_moments() {
        let mut r = seed_stream(5, 0);
        let n = 1_000_000;
        let mut s = 0.0;
        for _ in 0..n {
            let u = r.next_unit();
            assert!((0.0..1.0).contains(&u));
            s += u;
        }
        assert!((s / n as f64 - 0.5).abs() < 0.002);
    }

    #[test]
    fn gaussian_moments() {
        let mut r = seed_stream(11, 2);
        let n = 1_000_000;
        let (mut s, mut ss) = (0.0, 0.0);
        for _ in 0..n {
            let g = r.next_gaussian();
            s += g;
            ss += g * g;
        }
        let mean = s / n as f64;
        let var = ss / n as f64 - mean * mean;
        assert!(mean.abs() < 0.005);
        assert!((var - 1.0).abs() < 0.01, "{var}");
    }
}
