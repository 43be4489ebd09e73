//! Exact rational scalars and their canonical string forms.
//!
//! Every quantity the library certifies is carried as a [`Rational`]
//! (an arbitrary-precision, always-reduced fraction), so sign tests and
//! strict inequalities like `tau < 1` are decided exactly. Nothing in
//! the certification paths ever touches floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, stored reduced with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `num/den`. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rejected input to [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {literal:?}: {reason}")]
pub struct ParseRationalError {
    pub literal: String,
    pub reason: &'static str,
}

fn parse_error(s: &str, reason: &'static str) -> ParseRationalError {
    ParseRationalError {
        literal: s.to_owned(),
        reason,
    }
}

fn all_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn parse_bigint(s: &str) -> BigInt {
    s.parse().expect("digits already validated")
}

/// Parses the exact literal grammar `-?\d+(/[1-9]\d*)?` or `-?\d+\.\d+`.
///
/// Decimal literals are converted exactly (`"0.5"` becomes `1/2`);
/// there is no rounding step. Anything else (signs on denominators,
/// exponents, bare `.5`, zero denominators, ...) is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let magnitude = if let Some((num, den)) = body.split_once('/') {
        if !all_digits(num) {
            return Err(parse_error(s, "numerator must be an integer"));
        }
        if !all_digits(den) || den.starts_with('0') {
            return Err(parse_error(
                s,
                "denominator must be a positive integer without leading zeros",
            ));
        }
        Rational::new(parse_bigint(num), parse_bigint(den))
    } else if let Some((int_part, frac_part)) = body.split_once('.') {
        if !all_digits(int_part) || !all_digits(frac_part) {
            return Err(parse_error(s, "decimal must match \\d+.\\d+"));
        }
        let scale = BigInt::from(10u8).pow(frac_part.len() as u32);
        let units = parse_bigint(int_part) * &scale + parse_bigint(frac_part);
        Rational::new(units, scale)
    } else {
        if !all_digits(body) {
            return Err(parse_error(s, "expected p, p/q or a finite decimal"));
        }
        Rational::from_integer(parse_bigint(body))
    };
    Ok(if negative { -magnitude } else { magnitude })
}

/// Canonical string form: `p` for integers, reduced `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact `sum |x_i|`.
pub fn l1_norm(x: &[Rational]) -> Rational {
    let mut total = Rational::zero();
    for v in x {
        if v.is_negative() {
            total -= v;
        } else {
            total += v;
        }
    }
    total
}

/// Number of nonzero entries.
pub fn l0_norm(x: &[Rational]) -> usize {
    x.iter().filter(|v| !v.is_zero()).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("5").unwrap(), rat(5));
        assert_eq!(parse_rational("-12").unwrap(), rat(-12));
        assert_eq!(parse_rational("4/9").unwrap(), frac(4, 9));
        assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("0").unwrap(), rat(0));
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.5").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), frac(-5, 4));
        assert_eq!(
            parse_rational("1.732050807569").unwrap(),
            Rational::new(1_732_050_807_569i64.into(), 1_000_000_000_000i64.into())
        );
    }

    #[test]
    fn rejects_out_of_grammar_literals() {
        for bad in [
            "", "+5", "5.", ".5", "1/0", "1/-2", "1/02", "1e3", "a", "1 /2", "--2", "2/",
        ] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn canonical_format_round_trips() {
        for s in ["0", "-7", "4/9", "-2/9", "100000000000071903949911/100000000000000000000000"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
        // decimals re-render reduced
        assert_eq!(format_rational(&parse_rational("0.5").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("2.0").unwrap()), "2");
    }

    #[test]
    fn norms() {
        let x = vec![frac(4, 9), rat(0), rat(-2), frac(1, 9)];
        assert_eq!(l1_norm(&x), frac(4 + 18 + 1, 9));
        assert_eq!(l0_norm(&x), 3);
    }
}
