//! The two coefficient fields, Q and Q(t), behind a common trait.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{ExactError, Poly, Rational, RationalFunction};

/// An integral domain with exact division, used for fraction-free elimination.
pub trait Domain: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    /// `self / other`, where the caller guarantees divisibility.
    fn exact_div(&self, other: &Self) -> Self;
}

impl Domain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn exact_div(&self, other: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % other)));
        self / other
    }
}

impl Domain for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn exact_div(&self, other: &Self) -> Self {
        Poly::exact_div(self, other).expect("Bareiss division is exact")
    }
}

/// Exact field of coefficients. Implemented by [`Rational`] and [`RationalFunction`].
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Ring of integers used for the fraction-free lift.
    type Domain: Domain;

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    /// The row multiplied by a nonzero common denominator.
    fn lift_row(row: &[Self]) -> Vec<Self::Domain>;

    fn embed(d: &Self::Domain) -> Self;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self, ExactError>;
}

impl Field for Rational {
    type Domain = BigInt;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn lift_row(row: &[Self]) -> Vec<BigInt> {
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
    }

    fn embed(d: &BigInt) -> Self {
        Rational::from_integer(d.clone())
    }

    fn to_json(&self) -> Value {
        Value::String(rational_to_string(self))
    }

    fn from_json(v: &Value) -> Result<Self, ExactError> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => parse_rational(&n.to_string()),
            _ => Err(ExactError::Parse(format!("expected rational string, got {v}"))),
        }
    }
}

impl Field for RationalFunction {
    type Domain = Poly;

    fn from_rational(q: &Rational) -> Self {
        RationalFunction::from_rational(q)
    }

    fn lift_row(row: &[Self]) -> Vec<Poly> {
        let mut l = Poly::one();
        for x in row {
            if x.den().is_one() || Domain::is_zero(x.num()) {
                continue;
            }
            let g = l.gcd(x.den());
            l = &l * &x.den().exact_div(&g).expect("gcd divides");
        }
        row.iter()
            .map(|x| {
                if Domain::is_zero(x.num()) {
                    Poly::zero()
                } else {
                    x.num() * &l.exact_div(x.den()).expect("lcm is a multiple")
                }
            })
            .collect()
    }

    fn embed(d: &Poly) -> Self {
        RationalFunction::from_poly(d.clone())
    }

    fn to_json(&self) -> Value {
        let f = |p: &Poly| p.coeffs().iter().map(|c| Value::String(c.to_string())).collect::<Vec<_>>();
        json!({"num": f(self.num()), "den": f(self.den())})
    }

    fn from_json(v: &Value) -> Result<Self, ExactError> {
        let poly = |key: &str| -> Result<Poly, ExactError> {
            let arr = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| ExactError::Parse(format!("missing \"{key}\" array")))?;
            let cs = arr
                .iter()
                .map(|c| {
                    let s = match c {
                        Value::String(s) => s.clone(),
                        Value::Number(n) => n.to_string(),
                        _ => return Err(ExactError::Parse(format!("bad coefficient {c}"))),
                    };
                    s.parse::<BigInt>().map_err(|e| ExactError::Parse(e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Poly::from_coeffs(cs))
        };
        RationalFunction::new(poly("num")?, poly("den")?)
    }
}

/// `"p/q"`, or `"p"` when q = 1.
pub fn rational_to_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if Zero::is_zero(&q) {
                return Err(ExactError::ZeroDenominator);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_round_trip() {
        for s in ["0", "5", "-3/4", "22/7"] {
            assert_eq!(rational_to_string(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(rational_to_string(&parse_rational("6/-4").unwrap()), "-3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_function_json_round_trip() {
        let f = RationalFunction::new(Poly::from_i64s(&[1, -2]), Poly::from_i64s(&[3, 0, 1])).unwrap();
        let v = f.to_json();
        assert_eq!(v, json!({"num": ["1", "-2"], "den": ["3", "0", "1"]}));
        assert_eq!(RationalFunction::from_json(&v).unwrap(), f);
    }

    #[test]
    fn lift_clears_denominators() {
        let row = vec![parse_rational("1/2").unwrap(), parse_rational("-2/3").unwrap(), Rational::zero()];
        let lifted = Rational::lift_row(&row);
        assert_eq!(lifted, vec![BigInt::from(3), BigInt::from(-4), BigInt::from(0)]);
    }
}
