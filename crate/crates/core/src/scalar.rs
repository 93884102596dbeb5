//! The field trait every formula in this crate is written against.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

use crate::error::{Error, Result};

/// A commutative field with exact equality.
///
/// Blanket-implemented for every type satisfying the bounds. The verification
/// routines compare with `==`, so only exact fields (such as
/// [`BigRational`](num_rational::BigRational)) give meaningful verdicts;
/// floating-point instances are usable for evaluation only.
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Num + Neg<Output = Self> + FromPrimitive + Send + Sync
{
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Debug + Display + Num + Neg<Output = T> + FromPrimitive + Send + Sync
{
}

pub(crate) fn int<T: Scalar>(n: i64) -> T {
    T::from_i64(n).expect("small integers embed in every field")
}

/// `num / den`, or a `Singular` error naming `what` when `den` vanishes.
pub(crate) fn div<T: Scalar>(num: T, den: T, what: &str) -> Result<T> {
    if den.is_zero() {
        Err(Error::Singular(what.to_owned()))
    } else {
        Ok(num / den)
    }
}

pub(crate) fn recip<T: Scalar>(x: T, what: &str) -> Result<T> {
    div(T::one(), x, what)
}

pub(crate) fn nonzero<T: Scalar>(x: &T, what: &str) -> Result<()> {
    if x.is_zero() {
        Err(Error::Singular(what.to_owned()))
    } else {
        Ok(())
    }
}
