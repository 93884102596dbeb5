//! Exact rationals, constrained E5 edge parameters and seeded sampling.
//!
//! All sampling is a pure function of `(seed, index, bound)`: each index
//! selects its own ChaCha stream, so samples can be drawn in any order (or in
//! parallel) without changing their values.

use std::fmt;
use std::str::FromStr;

use num_rational::{BigRational, ParseRatioError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};

pub type Rational = BigRational;

/// The value of `gamma^2 - beta^2` for E5 edge parameters. Only 0 and 1 are
/// admissible; any other nonzero value is a rescaling of 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Delta {
    Zero,
    One,
}

impl Delta {
    pub fn value<T: Scalar>(self) -> T {
        match self {
            Delta::Zero => T::zero(),
            Delta::One => T::one(),
        }
    }

    pub fn from_int(d: i64) -> Option<Delta> {
        match d {
            0 => Some(Delta::Zero),
            1 => Some(Delta::One),
            _ => None,
        }
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Delta::Zero => f.write_str("0"),
            Delta::One => f.write_str("1"),
        }
    }
}

/// An E5 edge parameter: `beta` together with its partner `gamma`,
/// constrained by `gamma^2 - beta^2 = delta`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaPair<T> {
    beta: T,
    gamma: T,
    delta: Delta,
}

impl<T: Scalar> GammaPair<T> {
    pub fn new(beta: T, gamma: T, delta: Delta) -> Result<Self> {
        let lhs = gamma.clone() * gamma.clone() - beta.clone() * beta.clone();
        if lhs != delta.value() {
            return Err(Error::InvalidParameter(format!(
                "gamma^2 - beta^2 = {lhs}, expected {delta}"
            )));
        }
        Ok(GammaPair { beta, gamma, delta })
    }

    pub fn beta(&self) -> &T {
        &self.beta
    }

    pub fn gamma(&self) -> &T {
        &self.gamma
    }

    pub fn delta(&self) -> Delta {
        self.delta
    }
}

/// Rational parametrisation of the hyperbola `gamma^2 - beta^2 = delta`:
/// `beta = (delta/s - s)/2`, `gamma = (delta/s + s)/2`.
pub fn gamma_pair_from_slope<T: Scalar>(s: &T, delta: Delta) -> Result<GammaPair<T>> {
    if s.is_zero() {
        return Err(Error::ZeroSlope);
    }
    let two: T = int(2);
    let d_over_s = delta.value::<T>() / s.clone();
    let beta = (d_over_s.clone() - s.clone()) / two.clone();
    let gamma = (d_over_s + s.clone()) / two;
    GammaPair::new(beta, gamma, delta)
}

fn sample_parts(seed: u64, index: u64, bound: u64) -> (i64, i64) {
    assert!(bound >= 1, "sampling bound must be at least 1");
    let bound = i64::try_from(bound).expect("sampling bound fits in i64");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let p = rng.random_range(-bound..=bound);
    let q = rng.random_range(1..=bound);
    (p, q)
}

/// Deterministic pseudo-random `p/q` with `|p| <= bound` and `1 <= q <= bound`.
pub fn sample_rational<T: Scalar>(seed: u64, index: u64, bound: u64) -> T {
    let (p, q) = sample_parts(seed, index, bound);
    int::<T>(p) / int::<T>(q)
}

/// Sequential draws from one sample stream.
///
/// A stream is identified by `(seed, stream)`; the `k`-th draw uses sampler
/// index `stream * 2^20 + k`. Callers that hit a singular configuration move
/// to a fresh stream rather than reusing draws.
#[derive(Debug, Clone)]
pub struct Draws {
    seed: u64,
    bound: u64,
    base: u64,
    next: u64,
}

const STREAM_WIDTH: u64 = 1 << 20;

impl Draws {
    pub fn new(seed: u64, stream: u64, bound: u64) -> Self {
        Draws {
            seed,
            bound,
            base: stream.wrapping_mul(STREAM_WIDTH),
            next: 0,
        }
    }

    pub fn rational<T: Scalar>(&mut self) -> T {
        let index = self.base.wrapping_add(self.next);
        self.next += 1;
        sample_rational(self.seed, index, self.bound)
    }

    /// Next nonzero draw; zero draws are skipped.
    pub fn nonzero<T: Scalar>(&mut self) -> T {
        loop {
            let x: T = self.rational();
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn nonzero_vec<T: Scalar>(&mut self, len: usize) -> Vec<T> {
        (0..len).map(|_| self.nonzero()).collect()
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, ParseRatioError> {
    Rational::from_str(s.trim())
}
