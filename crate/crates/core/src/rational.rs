//! Exact rational carrier for every statistic and closed-form value.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        Rational(BigRational::new(num.into(), den))
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// `num/den`, lowest terms, denominator always written (`2/1`).
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Plain decimal rendering rounded (half away from zero) to `digits`
    /// significant digits, trailing zeros stripped.
    pub fn to_decimal(&self, digits: u32) -> String {
        assert!(digits >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let negative = self.is_negative();
        let num = self.numer().abs();
        let den = self.denom().clone();
        let ten = BigInt::from(10u32);

        // Find e with 10^e <= |x| < 10^(e+1).
        let mut e: i64 = num.to_string().len() as i64 - den.to_string().len() as i64;
        let pow = |p: i64| -> BigInt { num_traits::pow(ten.clone(), p.unsigned_abs() as usize) };
        loop {
            // compare |x| with 10^e
            let (lhs, rhs) = if e >= 0 { (num.clone(), &den * pow(e)) } else { (&num * pow(-e), den.clone()) };
            if lhs < rhs {
                e -= 1;
                continue;
            }
            let (lhs, rhs) =
                if e + 1 >= 0 { (num.clone(), &den * pow(e + 1)) } else { (&num * pow(-(e + 1)), den.clone()) };
            if lhs >= rhs {
                e += 1;
                continue;
            }
            break;
        }

        // scaled = round(|x| * 10^(digits-1-e))
        let shift = digits as i64 - 1 - e;
        let (sn, sd) = if shift >= 0 { (&num * pow(shift), den.clone()) } else { (num.clone(), &den * pow(-shift)) };
        let (mut q, r) = sn.div_rem(&sd);
        if r * 2u32 >= sd {
            q += 1u32;
        }
        let mut shift = shift;
        // Rounding may carry into a new digit (9.999995 -> 10.0000).
        if q.to_string().len() as u32 > digits {
            q /= 10u32;
            shift -= 1;
        }

        let digits_str = q.to_string();
        let mut out = if shift <= 0 {
            let mut s = digits_str;
            s.extend(std::iter::repeat_n('0', (-shift) as usize));
            s
        } else {
            let shift = shift as usize;
            let (int_part, frac_part) = if digits_str.len() > shift {
                let split = digits_str.len() - shift;
                (digits_str[..split].to_string(), digits_str[split..].to_string())
            } else {
                let pad = "0".repeat(shift - digits_str.len());
                ("0".to_string(), format!("{pad}{digits_str}"))
            };
            let frac = frac_part.trim_end_matches('0');
            if frac.is_empty() {
                int_part
            } else {
                format!("{int_part}.{frac}")
            }
        };
        if negative {
            out.insert(0, '-');
        }
        out
    }

    pub fn pow(&self, exp: i32) -> Rational {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<u64> for Rational {
    fn from(v: u64) -> Self {
        Rational::from_integer(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `a/b` or a bare integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rational::new(n, d))
            }
            None => Ok(Rational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

fn big_to_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(i) => serde_json::Value::from(i),
        None => serde_json::Value::String(v.to_string()),
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &big_to_json(self.numer()))?;
        st.serialize_field("den", &big_to_json(self.denom()))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: serde_json::Value,
            den: serde_json::Value,
        }
        fn to_big<E: de::Error>(v: &serde_json::Value) -> Result<BigInt, E> {
            match v {
                serde_json::Value::Number(n) => {
                    n.to_string().parse().map_err(|_| E::custom(format!("non-integer rational part {n}")))
                }
                serde_json::Value::String(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
                other => Err(E::custom(format!("bad rational part {other}"))),
            }
        }
        let raw = Raw::deserialize(deserializer)?;
        let num = to_big::<D::Error>(&raw.num)?;
        let den = to_big::<D::Error>(&raw.den)?;
        if den.sign() == Sign::NoSign {
            return Err(de::Error::custom("zero denominator"));
        }
        Ok(Rational::new(num, den))
    }
}
