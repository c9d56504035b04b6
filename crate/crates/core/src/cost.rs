//! Exact path-cost arithmetic.
//!
//! Integer-cost domains use plain integers. Octile grids mix unit steps with
//! diagonal steps of length √2, so a cost is kept as the exact pair
//! `units + diagonals·√2` and compared through integer arithmetic. Two
//! distinct pairs never compare equal (√2 is irrational), which keeps
//! termination tests such as `bound ≥ incumbent` free of float ties.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

/// Non-negative exact cost of the form `units + diagonals·√2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Cost {
    units: u32,
    diagonals: u32,
}

impl Cost {
    pub const ZERO: Cost = Cost { units: 0, diagonals: 0 };

    /// Plain integer cost.
    pub const fn int(units: u32) -> Cost {
        Cost { units, diagonals: 0 }
    }

    /// Grid cost: `units` cardinal steps plus `diagonals` steps of length √2.
    pub const fn octile(units: u32, diagonals: u32) -> Cost {
        Cost { units, diagonals }
    }

    /// One diagonal step, length √2.
    pub const SQRT2: Cost = Cost { units: 0, diagonals: 1 };

    pub const fn units(self) -> u32 {
        self.units
    }

    pub const fn diagonals(self) -> u32 {
        self.diagonals
    }

    pub fn is_zero(self) -> bool {
        self == Cost::ZERO
    }

    /// Numeric value, for display and for comparisons against external
    /// float data (scenario files). Not used in search arithmetic.
    pub fn to_f64(self) -> f64 {
        self.units as f64 + self.diagonals as f64 * std::f64::consts::SQRT_2
    }

    pub fn double(self) -> Cost {
        self + self
    }

    pub fn checked_add(self, rhs: Cost) -> Option<Cost> {
        Some(Cost {
            units: self.units.checked_add(rhs.units)?,
            diagonals: self.diagonals.checked_add(rhs.diagonals)?,
        })
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        self.checked_add(rhs).expect("cost overflow")
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        *self = *self + rhs;
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, Add::add)
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Cost) -> Ordering {
        // Sign of (du + dd·√2) with du, dd integers: when the components
        // disagree in sign, compare du² against 2·dd².
        let du = self.units as i64 - other.units as i64;
        let dd = self.diagonals as i64 - other.diagonals as i64;
        match (du.signum(), dd.signum()) {
            (0, 0) => Ordering::Equal,
            (u, d) if u >= 0 && d >= 0 => Ordering::Greater,
            (u, d) if u <= 0 && d <= 0 => Ordering::Less,
            (1, -1) => {
                let lhs = (du as i128) * (du as i128);
                let rhs = 2 * (dd as i128) * (dd as i128);
                lhs.cmp(&rhs)
            }
            (-1, 1) => {
                let lhs = 2 * (dd as i128) * (dd as i128);
                let rhs = (du as i128) * (du as i128);
                lhs.cmp(&rhs)
            }
            _ => unreachable!(),
        }
    }
}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Cost) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rendered as `12` for integer costs and `3+2r2` for mixed grid costs
/// (`r2` reads "root two"). Parsed back by [`Cost::from_str`].
impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.units, self.diagonals) {
            (u, 0) => write!(f, "{u}"),
            (0, d) => write!(f, "{d}r2"),
            (u, d) => write!(f, "{u}+{d}r2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid cost literal {0:?}")]
pub struct ParseCostError(pub String);

impl FromStr for Cost {
    type Err = ParseCostError;

    fn from_str(s: &str) -> Result<Cost, ParseCostError> {
        let bad = || ParseCostError(s.to_owned());
        if let Some(rest) = s.strip_suffix("r2") {
            match rest.split_once('+') {
                Some((u, d)) => Ok(Cost {
                    units: u.parse().map_err(|_| bad())?,
                    diagonals: d.parse().map_err(|_| bad())?,
                }),
                None => Ok(Cost {
                    units: 0,
                    diagonals: rest.parse().map_err(|_| bad())?,
                }),
            }
        } else {
            Ok(Cost::int(s.parse().map_err(|_| bad())?))
        }
    }
}

/// Max of the three pair terms: forward f, backward f, and the g-sum.
/// This is the lower bound on any solution joining the two frontier paths.
pub fn pair_lower_bound(f_fwd: Cost, g_fwd: Cost, f_bwd: Cost, g_bwd: Cost) -> Cost {
    f_fwd.max(f_bwd).max(g_fwd + g_bwd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ordering_is_exact() {
        // 3 vs 2 + 1·√2 ≈ 3.414
        assert!(Cost::int(3) < Cost::octile(2, 1));
        // 7 vs 5·√2 ≈ 7.071
        assert!(Cost::int(7) < Cost::octile(0, 5));
        // 10 vs 7·√2 ≈ 9.899
        assert!(Cost::int(10) > Cost::octile(0, 7));
        assert_eq!(Cost::octile(2, 3), Cost::octile(2, 3));
        assert!(Cost::octile(2, 3) > Cost::octile(2, 2));
    }

    #[test]
    fn distinct_pairs_never_equal() {
        assert_ne!(Cost::octile(141421, 0), Cost::octile(0, 100000));
        assert!(Cost::octile(141421, 0) < Cost::octile(0, 100000));
        assert!(Cost::octile(141422, 0) > Cost::octile(0, 100000));
    }

    #[test]
    fn pair_bound_examples() {
        let z = Cost::ZERO;
        assert_eq!(pair_lower_bound(z, z, z, z), Cost::ZERO);
        // g-sum dominates: f 9/9, g 8/8 -> 16
        assert_eq!(
            pair_lower_bound(Cost::int(9), Cost::int(8), Cost::int(9), Cost::int(8)),
            Cost::int(16)
        );
        // max of three plain numbers
        assert_eq!(
            pair_lower_bound(Cost::int(12), Cost::int(5), Cost::int(10), Cost::int(7)),
            Cost::int(12)
        );
    }

    #[test]
    fn display_round_trip() {
        for c in [Cost::int(0), Cost::int(17), Cost::octile(0, 4), Cost::octile(3, 2)] {
            assert_eq!(c.to_string().parse::<Cost>().unwrap(), c);
        }
        assert_eq!(Cost::octile(3, 2).to_string(), "3+2r2");
        assert!("x7".parse::<Cost>().is_err());
    }

    proptest! {
        #[test]
        fn ordering_matches_float_when_far_apart(a in 0u32..10_000, b in 0u32..10_000,
                                                 c in 0u32..10_000, d in 0u32..10_000) {
            let x = Cost::octile(a, b);
            let y = Cost::octile(c, d);
            let fx = x.to_f64();
            let fy = y.to_f64();
            if (fx - fy).abs() > 1e-4 {
                prop_assert_eq!(x < y, fx < fy);
            }
            // addition is component-wise and order-compatible
            prop_assert_eq!(x + y, Cost::octile(a + c, b + d));
            prop_assert!(x + y >= x);
        }

        #[test]
        fn total_order_is_consistent(a in 0u32..100, b in 0u32..100,
                                     c in 0u32..100, d in 0u32..100) {
            let x = Cost::octile(a, b);
            let y = Cost::octile(c, d);
            match x.cmp(&y) {
                Ordering::Equal => prop_assert_eq!(x, y),
                Ordering::Less => prop_assert_eq!(y.cmp(&x), Ordering::Greater),
                Ordering::Greater => prop_assert_eq!(y.cmp(&x), Ordering::Less),
            }
        }
    }
}
