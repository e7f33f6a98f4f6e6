use std::cmp::Ordering;
use std::fmt;

/// A number of the form `2^-k` or exactly `0`.
///
/// All tolerances in the symbolic modules are dyadic: under the metric
/// `d(x,y) = 2^-n` (n the least index of disagreement), `d(x,y) < 2^-k`
/// holds iff x and y agree on every index of absolute value at most k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dyadic {
    Zero,
    /// `2^-k`.
    Pow(u32),
}

impl Dyadic {
    pub fn is_zero(self) -> bool {
        matches!(self, Dyadic::Zero)
    }

    /// Exponent view: `Some(k)` for `2^-k`, `None` for zero.
    pub fn exponent(self) -> Option<u32> {
        match self {
            Dyadic::Zero => None,
            Dyadic::Pow(k) => Some(k),
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Dyadic::Zero, Dyadic::Zero) => Ordering::Equal,
            (Dyadic::Zero, Dyadic::Pow(_)) => Ordering::Less,
            (Dyadic::Pow(_), Dyadic::Zero) => Ordering::Greater,
            // larger exponent = smaller value
            (Dyadic::Pow(a), Dyadic::Pow(b)) => b.cmp(a),
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dyadic::Zero => write!(f, "0"),
            Dyadic::Pow(0) => write!(f, "1"),
            Dyadic::Pow(k) => write!(f, "2^-{k}"),
        }
    }
}
