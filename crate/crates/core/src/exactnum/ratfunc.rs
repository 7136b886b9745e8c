//! The field Q(t) as reduced quotients of integer polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ExactError, Poly, Rational};

/// `num / den` with `gcd(num, den) = 1` in Z[t] and `den` having positive leading coefficient.
///
/// The normal form is unique, so derived equality is equality in Q(t).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunction { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        if den.leading().is_some_and(|l| l.is_negative()) {
            num = -&num;
            den = -&den;
        }
        RationalFunction { num, den }
    }

    pub fn t() -> Self {
        RationalFunction { num: Poly::t(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn from_rational(q: &Rational) -> Self {
        RationalFunction {
            num: Poly::constant(q.numer().clone()),
            den: Poly::constant(q.denom().clone()),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// Largest of the numerator and denominator degrees.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// `Some(q)` when the function is the constant `q`.
    pub fn as_constant(&self) -> Option<Rational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(Rational::zero()),
            (Some(0), Some(0)) => Some(Rational::new(self.num.constant_term(), self.den.constant_term())),
            _ => None,
        }
    }

    pub fn eval_at_zero(&self) -> Result<Rational, ExactError> {
        let d = self.den.constant_term();
        if d.is_zero() {
            return Err(ExactError::PoleAtZero);
        }
        Ok(Rational::new(self.num.constant_term(), d))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, ExactError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ExactError::PoleAtZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Order of vanishing at t = 0 (negative for a pole); `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        fn ord(p: &Poly) -> i64 {
            p.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0) as i64
        }
        if self.num.is_zero() {
            None
        } else {
            Some(ord(&self.num) - ord(&self.den))
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut acc = RationalFunction::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction { num: Poly::one(), den: Poly::one() }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.inv().expect("division by zero in Q(t)")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<i64> for RationalFunction {
    fn from(v: i64) -> Self {
        RationalFunction::from_poly(Poly::constant(BigInt::from(v)))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_i64s(n), Poly::from_i64s(d)).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(rf(&[3, 1], &[1, 1]).eval_at_zero().unwrap(), Rational::from_integer(3.into()));
        assert_eq!(rf(&[0, 1], &[0, 1]).eval_at_zero().unwrap(), Rational::one());
        assert_eq!(rf(&[1], &[0, 1]).eval_at_zero(), Err(ExactError::PoleAtZero));
    }

    #[test]
    fn normal_form_is_structural() {
        assert_eq!(rf(&[2, 2], &[-4, -4]), rf(&[-1], &[2]));
        assert_eq!(rf(&[0, 2], &[0, 0, 3]), rf(&[2], &[0, 3]));
        assert_eq!(rf(&[0], &[5, 1]), RationalFunction::zero());
        assert_eq!(rf(&[1, 1], &[1]) * rf(&[1], &[1, 1]), RationalFunction::one());
    }

    #[test]
    fn valuation() {
        assert_eq!(rf(&[0, 0, 1], &[0, 1]).valuation(), Some(1));
        assert_eq!(rf(&[1], &[0, 1]).valuation(), Some(-1));
        assert_eq!(RationalFunction::zero().valuation(), None);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RationalFunction::new(Poly::one(), Poly::zero()), Err(ExactError::ZeroDenominator));
    }
}
