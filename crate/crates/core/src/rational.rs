//! Exact rational helpers.
//!
//! All probabilities in this crate are [`BigRational`]s. On disk they are
//! written as `"p/q"` strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Shorthand for `n/d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// The uniform distribution over `n` outcomes.
pub fn uniform(n: usize) -> Vec<BigRational> {
    let p = BigRational::new(BigInt::one(), BigInt::from(n));
    vec![p; n]
}

/// Formats `x` as `"p/q"`, always including the denominator.
pub fn to_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse(s: &str) -> Result<BigRational> {
    let bad = || Error::ParseRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => s
            .parse::<BigInt>()
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
    }
}

/// Checks that `weights` is a probability vector: nonnegative, summing to 1.
pub fn check_distribution(weights: &[BigRational], what: &str) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::Distribution(format!("{what} is empty")));
    }
    if let Some(w) = weights.iter().find(|w| w.is_negative()) {
        return Err(Error::Distribution(format!(
            "{what} has negative weight {}",
            to_string(w)
        )));
    }
    let total: BigRational = weights.iter().sum();
    if !total.is_one() {
        return Err(Error::Distribution(format!(
            "{what} sums to {}, not 1",
            to_string(&total)
        )));
    }
    Ok(())
}

/// Rescales nonnegative weights so they sum to 1.
pub fn normalize(weights: &[BigRational]) -> Result<Vec<BigRational>> {
    let total: BigRational = weights.iter().sum();
    if !total.is_positive() {
        return Err(Error::Distribution("weights have no positive mass".into()));
    }
    Ok(weights.iter().map(|w| w / &total).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("4/9").unwrap(), ratio(4, 9));
        assert_eq!(parse(" 2/4 ").unwrap(), ratio(1, 2));
        assert_eq!(parse("1").unwrap(), ratio(1, 1));
        assert_eq!(to_string(&ratio(1, 1)), "1/1");
        assert_eq!(to_string(&ratio(6, 8)), "3/4");
        assert!(parse("1/0").is_err());
        assert!(parse("x/3").is_err());
    }

    #[test]
    fn distributions() {
        assert!(check_distribution(&uniform(9), "keys").is_ok());
        assert!(check_distribution(&[ratio(1, 2), ratio(1, 3)], "keys").is_err());
        assert!(check_distribution(&[ratio(3, 2), ratio(-1, 2)], "keys").is_err());
        assert!(check_distribution(&[], "keys").is_err());
        let n = normalize(&[ratio(2, 1), ratio(6, 1)]).unwrap();
        assert_eq!(n, vec![ratio(1, 4), ratio(3, 4)]);
    }
}
