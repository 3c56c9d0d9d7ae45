use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul};
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A natural number extended with a top element `Infinity`.
///
/// Used for axiom weights, interpretation costs and ranks. `Infinity`
/// absorbs addition, and `0 * Infinity = 0` so that an infinitely weighted
/// axiom without violations contributes nothing to a cost sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedNat {
    Finite(u64),
    Infinity,
}

pub use ExtendedNat::{Finite, Infinity};

impl ExtendedNat {
    pub const ZERO: ExtendedNat = Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Infinity)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Finite(n) => Some(n),
            Infinity => None,
        }
    }

    /// Subtracts a finite amount. `Infinity - n = Infinity`; returns `None`
    /// when a finite result would be negative.
    pub fn checked_sub(self, rhs: u64) -> Option<ExtendedNat> {
        match self {
            Finite(n) => n.checked_sub(rhs).map(Finite),
            Infinity => Some(Infinity),
        }
    }

    /// Adds a signed offset. `Infinity` stays infinite; `None` if the finite
    /// result is negative.
    pub fn offset(self, delta: i64) -> Option<ExtendedNat> {
        match self {
            Finite(n) => {
                let v = i128::from(n) + i128::from(delta);
                u64::try_from(v).ok().map(Finite)
            }
            Infinity => Some(Infinity),
        }
    }

    /// Difference of two extended naturals where `self >= rhs` is expected.
    /// An infinite subtrahend yields `Infinity` (undefined conditional
    /// mapped to the top element).
    pub fn saturating_diff(self, rhs: ExtendedNat) -> ExtendedNat {
        match (self, rhs) {
            (_, Infinity) | (Infinity, _) => Infinity,
            (Finite(a), Finite(b)) => Finite(a.saturating_sub(b)),
        }
    }
}

impl Default for ExtendedNat {
    fn default() -> Self {
        Finite(0)
    }
}

impl From<u64> for ExtendedNat {
    fn from(n: u64) -> Self {
        Finite(n)
    }
}

impl Ord for ExtendedNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinity) => Ordering::Less,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Infinity, Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtendedNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for ExtendedNat {
    type Output = ExtendedNat;

    fn add(self, rhs: Self) -> Self::Output {
        match (self, rhs) {
            (Finite(a), Finite(b)) => a.checked_add(b).map_or(Infinity, Finite),
            _ => Infinity,
        }
    }
}

impl Mul<u64> for ExtendedNat {
    type Output = ExtendedNat;

    fn mul(self, count: u64) -> Self::Output {
        match self {
            _ if count == 0 => Finite(0),
            Finite(a) => a.checked_mul(count).map_or(Infinity, Finite),
            Infinity => Infinity,
        }
    }
}

impl Sum for ExtendedNat {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Finite(0), Add::add)
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(n) => write!(f, "{n}"),
            Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtendedNat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" => Ok(Infinity),
            t => t
                .parse::<u64>()
                .map(Finite)
                .map_err(|_| format!("expected a non-negative integer or `inf`, found `{t}`")),
        }
    }
}

impl Serialize for ExtendedNat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Finite(n) => serializer.serialize_u64(*n),
            Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedNat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtVisitor;

        impl Visitor<'_> for ExtVisitor {
            type Value = ExtendedNat;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-negative integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtendedNat, E> {
                Ok(Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtendedNat, E> {
                u64::try_from(v)
                    .map(Finite)
                    .map_err(|_| E::custom("rank must be non-negative"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtendedNat, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(ExtVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs_addition() {
        assert_eq!(Finite(3) + Infinity, Infinity);
        assert_eq!(Infinity + Finite(0), Infinity);
        assert_eq!(Finite(2) + Finite(5), Finite(7));
    }

    #[test]
    fn order_is_total_with_infinity_on_top() {
        assert!(Finite(u64::MAX) < Infinity);
        assert!(Finite(0) < Finite(1));
        assert_eq!(Infinity.cmp(&Infinity), Ordering::Equal);
    }

    #[test]
    fn subtraction_from_infinity() {
        assert_eq!(Infinity.checked_sub(7), Some(Infinity));
        assert_eq!(Finite(3).checked_sub(4), None);
        assert_eq!(Finite(3).offset(-1), Some(Finite(2)));
        assert_eq!(Infinity.offset(-5), Some(Infinity));
    }

    #[test]
    #[allow(clippy::erasing_op)]
    fn zero_times_infinity_is_zero() {
        assert_eq!(Infinity * 0, Finite(0));
        assert_eq!(Infinity * 2, Infinity);
        assert_eq!(Finite(3) * 2, Finite(6));
    }

    #[test]
    fn json_accepts_numbers_and_inf() {
        let v: Vec<ExtendedNat> = serde_json::from_str(r#"[0, 4, "inf"]"#).unwrap();
        assert_eq!(v, vec![Finite(0), Finite(4), Infinity]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"[0,4,"inf"]"#);
        assert!(serde_json::from_str::<ExtendedNat>("-1").is_err());
    }

    proptest::proptest! {
        #[test]
        fn addition_commutes_and_associates(a in 0u64..1000, b in 0u64..1000, c in 0u64..1000, inf in 0usize..4) {
            let mut xs = [Finite(a), Finite(b), Finite(c)];
            if inf < 3 {
                xs[inf] = Infinity;
            }
            let [x, y, z] = xs;
            proptest::prop_assert_eq!(x + y, y + x);
            proptest::prop_assert_eq!((x + y) + z, x + (y + z));
        }
    }
}
