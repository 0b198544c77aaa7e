//! Published closed forms for the equitable colouring mean and variance of
//! each family, evaluated exactly.
//!
//! The odd-wheel variance is reproduced as printed, sign error included.
//! The corrected polynomial and the variant that appears in the derivation
//! are separate evaluators so a report can show all three side by side.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilyKind;
use crate::rational::Rational;
use crate::stats::{ChromaticStats, Provenance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Thm1Wheel,
    Thm1aDoubleWheel,
    Thm2Helm,
    Thm3ClosedHelm,
    Thm4Flower,
    Thm5Sunflower,
    Thm6ClosedSunflower,
    Thm7Blossom,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::Thm1Wheel,
        TheoremId::Thm1aDoubleWheel,
        TheoremId::Thm2Helm,
        TheoremId::Thm3ClosedHelm,
        TheoremId::Thm4Flower,
        TheoremId::Thm5Sunflower,
        TheoremId::Thm6ClosedSunflower,
        TheoremId::Thm7Blossom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Thm1Wheel => "thm1_wheel",
            TheoremId::Thm1aDoubleWheel => "thm1a_double_wheel",
            TheoremId::Thm2Helm => "thm2_helm",
            TheoremId::Thm3ClosedHelm => "thm3_closed_helm",
            TheoremId::Thm4Flower => "thm4_flower",
            TheoremId::Thm5Sunflower => "thm5_sunflower",
            TheoremId::Thm6ClosedSunflower => "thm6_closed_sunflower",
            TheoremId::Thm7Blossom => "thm7_blossom",
        }
    }

    pub fn family(self) -> FamilyKind {
        match self {
            TheoremId::Thm1Wheel => FamilyKind::Wheel,
            TheoremId::Thm1aDoubleWheel => FamilyKind::DoubleWheel,
            TheoremId::Thm2Helm => FamilyKind::Helm,
            TheoremId::Thm3ClosedHelm => FamilyKind::ClosedHelm,
            TheoremId::Thm4Flower => FamilyKind::Flower,
            TheoremId::Thm5Sunflower => FamilyKind::Sunflower,
            TheoremId::Thm6ClosedSunflower => FamilyKind::ClosedSunflower,
            TheoremId::Thm7Blossom => FamilyKind::Blossom,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| Error::input(format!("unknown theorem {s:?}")))
    }
}

/// Σ coeffs[i]·nⁱ (lowest degree first) over big integers.
fn poly(n: u32, coeffs: &[i64]) -> BigInt {
    let n = BigInt::from(n);
    coeffs.iter().rev().fold(BigInt::from(0), |acc, &c| acc * &n + c)
}

fn ratio(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

fn check_n(n: u32) -> Result<()> {
    if n < 3 {
        return Err(Error::input(format!("closed forms need n >= 3, got {n}")));
    }
    Ok(())
}

/// The printed mean and variance for theorem `t` at rim size `n`.
pub fn closed_form(t: TheoremId, n: u32) -> Result<ChromaticStats> {
    check_n(n)?;
    let even = n.is_multiple_of(2);
    let n1 = BigInt::from(n + 1);
    let two_n1 = BigInt::from(2 * n + 1);
    let (mean, variance) = match t {
        TheoremId::Thm1Wheel => {
            let den = BigInt::from(48) * &n1 * &n1;
            if even {
                // (n+2)²/(4(n+1)),  n(n+2)(n²+2n+4)/(48(n+1)²)
                let n2 = BigInt::from(n + 2);
                let mean = ratio(&n2 * &n2, BigInt::from(4) * &n1);
                let var = ratio(BigInt::from(n) * &n2 * poly(n, &[4, 2, 1]), den);
                (mean, var)
            } else {
                // (n²+4n+7)/(4(n+1)),  (n⁴+4n³+26n²−44n−27)/(48(n+1)²)
                let mean = ratio(poly(n, &[7, 4, 1]), BigInt::from(4) * &n1);
                let var = ratio(poly(n, &[-27, -44, 26, 4, 1]), den);
                (mean, var)
            }
        }
        TheoremId::Thm1aDoubleWheel | TheoremId::Thm4Flower | TheoremId::Thm7Blossom => {
            // (n+1)²/(2n+1),  (n⁴+2n³+2n²+n)/(3(2n+1)²)
            let mean = ratio(&n1 * &n1, two_n1.clone());
            let var = ratio(poly(n, &[0, 1, 2, 2, 1]), BigInt::from(3) * &two_n1 * &two_n1);
            (mean, var)
        }
        TheoremId::Thm2Helm | TheoremId::Thm3ClosedHelm | TheoremId::Thm5Sunflower | TheoremId::Thm6ClosedSunflower => {
            // (5n+1)/(2n+1),  (5n²+7n)/(2n+1)² even,  (5n²+3n−2)/(2n+1)² odd
            let mean = ratio(poly(n, &[1, 5]), two_n1.clone());
            let num = if even { poly(n, &[0, 7, 5]) } else { poly(n, &[-2, 3, 5]) };
            let var = ratio(num, &two_n1 * &two_n1);
            (mean, var)
        }
    };
    Ok(ChromaticStats { mean, variance, provenance: Provenance::ClosedForm })
}

fn check_odd(n: u32) -> Result<()> {
    check_n(n)?;
    if n.is_multiple_of(2) {
        return Err(Error::input(format!("the odd-wheel variance needs odd n, got {n}")));
    }
    Ok(())
}

/// (n⁴+4n³+26n²+44n−27)/(48(n+1)²): the odd-wheel variance with the sign
/// of the linear term fixed.
pub fn corrected_wheel_odd_variance(n: u32) -> Result<Rational> {
    check_odd(n)?;
    let n1 = BigInt::from(n + 1);
    Ok(ratio(poly(n, &[-27, 44, 26, 4, 1]), BigInt::from(48) * &n1 * &n1))
}

/// (n⁴+76n³+386n²+692n+333)/(48(n+1)²): the final expression of the
/// odd-wheel derivation, which agrees with neither the statement nor the
/// direct computation.
pub fn derivation_wheel_odd_variance(n: u32) -> Result<Rational> {
    check_odd(n)?;
    let n1 = BigInt::from(n + 1);
    Ok(ratio(poly(n, &[333, 692, 386, 76, 1]), BigInt::from(48) * &n1 * &n1))
}

/// Which odd-wheel variance polynomial to report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WheelOddVariance {
    #[default]
    Printed,
    Corrected,
    Derivation,
}

/// [`closed_form`], with the odd-wheel variance swapped for the chosen
/// variant. Other theorems and even `n` are unaffected.
pub fn closed_form_with(t: TheoremId, n: u32, variant: WheelOddVariance) -> Result<ChromaticStats> {
    let mut stats = closed_form(t, n)?;
    if t == TheoremId::Thm1Wheel && n % 2 == 1 {
        match variant {
            WheelOddVariance::Printed => {}
            WheelOddVariance::Corrected => {
                stats.variance = corrected_wheel_odd_variance(n)?;
                stats.provenance = Provenance::Corrected;
            }
            WheelOddVariance::Derivation => stats.variance = derivation_wheel_odd_variance(n)?,
        }
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn spot_values() {
        let s = closed_form(TheoremId::Thm1Wheel, 8).unwrap();
        assert_eq!((s.mean, s.variance), (r(25, 9), r(140, 81)));
        let s = closed_form(TheoremId::Thm2Helm, 7).unwrap();
        assert_eq!((s.mean, s.variance), (r(12, 5), r(88, 75)));
        let s = closed_form(TheoremId::Thm1aDoubleWheel, 3).unwrap();
        assert_eq!((s.mean, s.variance), (r(16, 7), r(52, 49)));
        let s = closed_form(TheoremId::Thm2Helm, 8).unwrap();
        assert_eq!((s.mean, s.variance), (r(41, 17), r(376, 289)));
        let s = closed_form(TheoremId::Thm2Helm, 4).unwrap();
        assert_eq!((s.mean, s.variance), (r(7, 3), r(4, 3)));
    }

    #[test]
    fn printed_odd_wheel_at_nine() {
        // (6561 + 2916 + 2106 - 396 - 27) / 4800
        let s = closed_form(TheoremId::Thm1Wheel, 9).unwrap();
        assert_eq!(s.mean, r(31, 10));
        assert_eq!(s.variance, r(93, 40));
        assert_eq!(s.provenance, Provenance::ClosedForm);
    }

    #[test]
    fn corrected_odd_wheel() {
        assert_eq!(corrected_wheel_odd_variance(9).unwrap(), r(249, 100));
        assert_eq!(corrected_wheel_odd_variance(3).unwrap(), r(11, 16));
        assert!(corrected_wheel_odd_variance(8).is_err());
        assert!(corrected_wheel_odd_variance(1).is_err());
    }

    #[test]
    fn variant_selection() {
        let s = closed_form_with(TheoremId::Thm1Wheel, 9, WheelOddVariance::Corrected).unwrap();
        assert_eq!(s.variance, r(249, 100));
        assert_eq!(s.provenance, Provenance::Corrected);
        let even = closed_form_with(TheoremId::Thm1Wheel, 8, WheelOddVariance::Corrected).unwrap();
        assert_eq!(even.variance, r(140, 81));
        let d = closed_form_with(TheoremId::Thm1Wheel, 9, WheelOddVariance::Derivation).unwrap();
        assert_eq!(d.variance, derivation_wheel_odd_variance(9).unwrap());
    }

    #[test]
    fn rejects_small_n() {
        assert!(closed_form(TheoremId::Thm7Blossom, 2).is_err());
    }

    #[test]
    fn names_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.name().parse::<TheoremId>().unwrap(), t);
        }
    }
}
