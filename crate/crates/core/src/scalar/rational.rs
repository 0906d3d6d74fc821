use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ParseScalarError, Scalar, ScalarError};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator (zero is `0/1`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ScalarError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// Shorthand for small literals; panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Rational::new(numer, denom).expect("zero denominator")
    }

    pub fn integer(value: i64) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    /// Exact value of a finite float.
    pub fn from_f64(value: f64) -> Option<Self> {
        BigRational::from_float(value).map(Rational)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::integer(value)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl FromStr for Rational {
    type Err = ParseScalarError;

    /// Accepts `n`, `p/q`, and finite decimals with an optional exponent
    /// (`-1.25`, `3e-2`). Decimals convert exactly.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let t = text.trim();
        if t.is_empty() {
            return Err(ParseScalarError::new(text, "empty"));
        }
        if let Some((p, q)) = t.split_once('/') {
            let num = parse_int(p.trim())?;
            let den = parse_int(q.trim())?;
            if den.is_zero() {
                return Err(ParseScalarError::new(t, "zero denominator"));
            }
            return Ok(Rational(BigRational::new(num, den)));
        }
        parse_decimal(t)
    }
}

fn parse_int(token: &str) -> Result<BigInt, ParseScalarError> {
    let digits = token.strip_prefix(['+', '-']).unwrap_or(token);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseScalarError::new(token, "not an integer"));
    }
    let value: BigInt = digits.parse().map_err(|_| ParseScalarError::new(token, "not an integer"))?;
    Ok(if token.starts_with('-') { -value } else { value })
}

fn parse_decimal(token: &str) -> Result<Rational, ParseScalarError> {
    let bad = || ParseScalarError::new(token, "not a decimal number");
    let (mantissa, exponent) = match token.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = token[pos + 1..].parse().map_err(|_| bad())?;
            (&token[..pos], exp)
        }
        None => (token, 0),
    };
    let negative = mantissa.starts_with('-');
    let unsigned = mantissa.strip_prefix(['+', '-']).unwrap_or(mantissa);
    let (int_part, frac_part) = unsigned.split_once('.').unwrap_or((unsigned, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value: BigInt = digits.parse().map_err(|_| bad())?;
    if negative {
        value = -value;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let ratio = if scale >= 0 {
        BigRational::from_integer(value * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(value, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(Rational(ratio))
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(value: i64) -> Self {
        Rational::integer(value)
    }

    fn parse(text: &str) -> Result<Self, ParseScalarError> {
        text.parse()
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.0.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(Rational(&self.0 / &rhs.0))
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_and_normalizes() {
        assert_eq!(r("17/6").to_string(), "17/6");
        assert_eq!(r("4/6").to_string(), "2/3");
        assert_eq!(r("0.25").to_string(), "1/4");
        assert_eq!(r("-3/-6").to_string(), "1/2");
        assert_eq!(r("6/-4").to_string(), "-3/2");
        assert_eq!(r("0/5").to_string(), "0");
        assert_eq!(r("0/5").denom(), &BigInt::from(1));
        assert_eq!(r("-0.5").to_string(), "-1/2");
        assert_eq!(r("12").to_string(), "12");
        assert_eq!(r("1.5e2").to_string(), "150");
        assert_eq!(r("25e-3").to_string(), "1/40");
        assert_eq!(r(".5").to_string(), "1/2");
    }

    #[test]
    fn parse_errors_name_the_token() {
        let err = "1/0".parse::<Rational>().unwrap_err();
        assert_eq!(err.reason, "zero denominator");
        let err = "3/x".parse::<Rational>().unwrap_err();
        assert_eq!(err.token, "x");
        assert!("".parse::<Rational>().is_err());
        assert!("1.2.3".parse::<Rational>().is_err());
        assert!("nan".parse::<Rational>().is_err());
    }

    #[test]
    fn division_by_zero_is_detected() {
        assert_eq!(Rational::one().checked_div(&Rational::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn exact_float_conversion() {
        assert_eq!(Rational::from_f64(0.375).unwrap(), Rational::frac(3, 8));
        assert!(Rational::from_f64(f64::INFINITY).is_none());
    }
}
