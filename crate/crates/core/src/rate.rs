//! Exact transfer rates for the fractional game.

use core::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RateError {
    #[error("rate {0}/{1} is not in (0, 1]")]
    OutOfRange(u64, u64),
    #[error("real rate {0} cannot be approximated in (0, 1]")]
    NotApproximable(f64),
}

/// A rational `p` in `(0, 1]`, kept in lowest terms.
///
/// Brush amounts under this rate are stored as integer multiples of `1/den`:
/// a placed brush is `den` units and a firing sends `num` units per dirty
/// edge, so every comparison stays exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FractionParam {
    num: u64,
    den: u64,
}

impl FractionParam {
    pub const ONE: FractionParam = FractionParam { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self, RateError> {
        if num == 0 || den == 0 || num > den {
            return Err(RateError::OutOfRange(num, den));
        }
        let g = num.gcd(&den);
        Ok(FractionParam { num: num / g, den: den / g })
    }

    /// The rational closest to `x` among those with denominator at most
    /// `max_den`; ties go to the smaller denominator.
    pub fn closest(x: f64, max_den: u64) -> Result<Self, RateError> {
        if !(x > 0.0 && x <= 1.0) || max_den == 0 {
            return Err(RateError::NotApproximable(x));
        }
        let mut best = (0u64, 1u64);
        let mut best_err = f64::INFINITY;
        for q in 1..=max_den {
            let p = libm::round(x * q as f64) as u64;
            let err = libm::fabs(x - p as f64 / q as f64);
            if err < best_err {
                best = (p, q);
                best_err = err;
                if err == 0.0 {
                    break;
                }
            }
        }
        FractionParam::new(best.0, best.1).map_err(|_| RateError::NotApproximable(x))
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new_raw(self.num, self.den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `⌈p·k⌉`.
    pub fn ceil_times(&self, k: u64) -> u64 {
        (self.num * k).div_ceil(self.den)
    }

    /// `⌈i/p⌉ - ⌈(i-1)/p⌉` for `i ≥ 1`: how many ordinary rounds accompany
    /// round `i` of the fractional game.
    pub fn rounds_for(&self, i: u64) -> u64 {
        debug_assert!(i >= 1);
        let c = |j: u64| (j * self.den).div_ceil(self.num);
        c(i) - c(i - 1)
    }
}

impl Default for FractionParam {
    fn default() -> Self {
        FractionParam::ONE
    }
}

impl fmt::Display for FractionParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
