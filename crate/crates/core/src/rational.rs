//! Helpers for exact rationals and their string form (`"a/b"` or `"a"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Result, SdsError};

/// Shorthand for a small rational constant.
pub fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || SdsError::InvalidRational(text.to_string());
    let trimmed = text.trim();
    let (numer, denom) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(numer, denom))
}

pub fn format_rational(value: &BigRational) -> String {
    value.to_string()
}

pub fn format_rationals(values: &[BigRational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Binomial coefficient table `table[a][k] = C(a, k)` for `a <= max`.
pub fn binomial_table(max: usize) -> Vec<Vec<BigInt>> {
    let mut table: Vec<Vec<BigInt>> = Vec::with_capacity(max + 1);
    for a in 0..=max {
        let mut row = vec![BigInt::one(); a + 1];
        for k in 1..a {
            row[k] = &table[a - 1][k - 1] + &table[a - 1][k];
        }
        table.push(row);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-9/10").unwrap(), rat(-9, 10));
        assert_eq!(parse_rational("4/8").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn format_round_trips() {
        for v in [rat(37, 108), int(-3), rat(-1, 2), int(0)] {
            assert_eq!(parse_rational(&format_rational(&v)).unwrap(), v);
        }
    }

    #[test]
    fn binomials() {
        let t = binomial_table(6);
        assert_eq!(t[6][3], BigInt::from(20));
        assert_eq!(t[0][0], BigInt::from(1));
        assert_eq!(t[5].len(), 6);
    }
}
