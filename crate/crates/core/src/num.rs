//! Scalar abstraction for vertex and edge weights.
//!
//! Every algorithm in the crate is generic over an unsigned integer weight.
//! Comparisons stay exact; the matching engine widens to `i128` for its
//! signed dual variables.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::iter::Sum;

use num_traits::{FromPrimitive, PrimInt, ToPrimitive, Unsigned};

pub trait Weight:
    PrimInt
    + Unsigned
    + FromPrimitive
    + ToPrimitive
    + Hash
    + Debug
    + Display
    + Default
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Widen to a signed accumulator.
    fn wide(self) -> i128 {
        self.to_i128().expect("weight does not fit in i128")
    }

    /// Narrow back from a signed accumulator; `None` when negative or too large.
    fn narrow(value: i128) -> Option<Self> {
        if value < 0 {
            None
        } else {
            Self::from_i128(value)
        }
    }
}

impl Weight for u8 {}
impl Weight for u16 {}
impl Weight for u32 {}
impl Weight for u64 {}
impl Weight for usize {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn narrow_rejects_negative_and_overflow() {
        assert_eq!(<u8 as Weight>::narrow(-1), None);
        assert_eq!(<u8 as Weight>::narrow(256), None);
        assert_eq!(<u8 as Weight>::narrow(255), Some(255u8));
        assert_eq!(7u64.wide(), 7i128);
    }
}
