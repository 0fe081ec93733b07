use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

/// Exact integer scalars usable by the matrix routines. Every arithmetic
/// step goes through the checked operations, so fixed-width types report
/// overflow instead of wrapping.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + CheckedAdd + CheckedSub + CheckedMul + Send + Sync
{
    fn to_big(&self) -> BigInt;
    fn from_big(value: &BigInt) -> Option<Self>;
}

impl Scalar for i64 {
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_big(value: &BigInt) -> Option<Self> {
        value.to_i64()
    }
}

impl Scalar for BigInt {
    fn to_big(&self) -> BigInt {
        self.clone()
    }

    fn from_big(value: &BigInt) -> Option<Self> {
        Some(value.clone())
    }
}
