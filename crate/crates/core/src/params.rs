//! Parameter arithmetic for `t-(v,b,l=cu,λ)` splitting designs.
//!
//! Everything here is exact. The level counts `λ_s` are returned as
//! rationals so that candidate parameters which cannot be realized can still
//! be evaluated and rejected.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The parameters `t-(v,b,l=cu,λ)` of a splitting design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DesignParams {
    /// Strength.
    pub t: u64,
    /// Number of points.
    pub v: u64,
    /// Number of blocks.
    pub b: u64,
    /// Part size.
    pub c: u64,
    /// Parts per block.
    pub u: u64,
    /// Number of blocks covering each `t`-subset.
    pub lambda: u64,
    /// Block size, always `c * u`.
    pub l: u64,
}

impl DesignParams {
    /// Builds a parameter tuple, enforcing positivity, `t <= u` and `cu <= v`.
    pub fn new(t: u64, v: u64, b: u64, c: u64, u: u64, lambda: u64) -> Result<Self> {
        if [t, v, b, c, u, lambda].contains(&0) {
            return Err(Error::Domain(format!(
                "parameters must be positive: t={t} v={v} b={b} c={c} u={u} λ={lambda}"
            )));
        }
        if t > u {
            return Err(Error::Domain(format!("strength t={t} exceeds u={u}")));
        }
        if c * u > v {
            return Err(Error::Domain(format!(
                "block size {}·{} exceeds v={v}",
                c, u
            )));
        }
        Ok(Self {
            t,
            v,
            b,
            c,
            u,
            lambda,
            l: c * u,
        })
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-({},{},{}={}×{},{})",
            self.t, self.v, self.b, self.l, self.c, self.u, self.lambda
        )
    }
}

/// Exact binomial coefficient, `0` when `k > n`.
///
/// Exact for every `n <= 128`; larger arguments are exact as long as the
/// result fits in a `u128`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) without overflowing the intermediate product
        let num = u128::from(n - i);
        let den = u128::from(i + 1);
        let g = acc.gcd(&den);
        acc = (acc / g) * (num / (den / g));
    }
    acc
}

fn big_binomial(n: u64, k: u64) -> BigInt {
    BigInt::from(binomial(n, k))
}

/// `λ_s = λ·C(v−s, t−s) / (c^{t−s}·C(u−s, t−s))`, the number of blocks
/// covering any `s`-subset of points.
pub fn lambda_level(params: &DesignParams, s: u64) -> Result<BigRational> {
    if s == 0 || s > params.t {
        return Err(Error::Domain(format!(
            "level s={s} outside 1..={}",
            params.t
        )));
    }
    let (num, den) = level_fraction(params, s);
    if den.is_zero() {
        return Err(Error::Domain(format!("C(u−s, t−s) vanishes at s={s}")));
    }
    Ok(BigRational::new(num, den))
}

fn level_fraction(p: &DesignParams, s: u64) -> (BigInt, BigInt) {
    let num = BigInt::from(p.lambda) * big_binomial(p.v - s, p.t - s);
    let den =
        num_traits::pow(BigInt::from(p.c), (p.t - s) as usize) * big_binomial(p.u - s, p.t - s);
    (num, den)
}

/// Outcome of a check that only applies to some parameter ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Pass,
    Fail,
    NotApplicable,
}

impl Check {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }

    pub fn failed(self) -> bool {
        self == Check::Fail
    }
}

/// The three counting identities every splitting design satisfies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityChecks {
    /// `b·l = v·r`
    pub blocks_points: Check,
    /// `C(v,t)·λ = b·c^t·C(u,t)`
    pub subset_count: Check,
    /// `r·c^{t−1}·(u−1) = λ₂·(v−1)`, only for `t >= 2`
    pub pair_count: Check,
}

/// Combined result of the necessary existence conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub identities: IdentityChecks,
    /// `(s, holds)` for every level `1 <= s <= t`.
    pub divisibility: Vec<(u64, bool)>,
    pub fisher: Check,
    pub failures: Vec<String>,
}

impl AdmissibilityReport {
    /// True when no implemented necessary condition fails.
    pub fn is_admissible(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_identities(params: &DesignParams) -> IdentityChecks {
    let p = params;
    let int = |x: u64| BigRational::from_integer(BigInt::from(x));
    let r = lambda_level(p, 1).ok();

    let blocks_points = match &r {
        Some(r) => Check::from_bool(int(p.b) * int(p.l) == int(p.v) * r),
        None => Check::Fail,
    };

    let lhs = big_binomial(p.v, p.t) * BigInt::from(p.lambda);
    let rhs = BigInt::from(p.b)
        * num_traits::pow(BigInt::from(p.c), p.t as usize)
        * big_binomial(p.u, p.t);
    let subset_count = Check::from_bool(lhs == rhs);

    let pair_count = if p.t < 2 {
        Check::NotApplicable
    } else {
        match (&r, lambda_level(p, 2)) {
            (Some(r), Ok(l2)) => {
                let lhs = r
                    * from_big(num_traits::pow(BigInt::from(p.c), (p.t - 1) as usize))
                    * int(p.u - 1);
                Check::from_bool(lhs == l2 * int(p.v - 1))
            }
            _ => Check::Fail,
        }
    };

    IdentityChecks {
        blocks_points,
        subset_count,
        pair_count,
    }
}

fn from_big(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

/// `(s, λ·C(v−s,t−s) ≡ 0 mod c^{t−s}·C(u−s,t−s))` for each `1 <= s <= t`.
pub fn check_divisibility(params: &DesignParams) -> Vec<(u64, bool)> {
    (1..=params.t)
        .map(|s| {
            let (num, den) = level_fraction(params, s);
            let ok = !den.is_zero() && num.is_multiple_of(&den);
            (s, ok)
        })
        .collect()
}

/// `b >= v/u`, evaluated as `b·u >= v`; not applicable below strength 2.
pub fn check_fisher(params: &DesignParams) -> Check {
    if params.t < 2 {
        return Check::NotApplicable;
    }
    Check::from_bool(u128::from(params.b) * u128::from(params.u) >= u128::from(params.v))
}

/// Runs every necessary condition. Passing is not sufficient for existence.
pub fn admissible(params: &DesignParams) -> AdmissibilityReport {
    let identities = check_identities(params);
    let divisibility = check_divisibility(params);
    let fisher = check_fisher(params);

    let mut failures = Vec::new();
    if identities.blocks_points.failed() {
        failures.push(format!("b·l = v·r fails for {params}"));
    }
    if identities.subset_count.failed() {
        failures.push(format!("C(v,t)·λ = b·c^t·C(u,t) fails for {params}"));
    }
    if identities.pair_count.failed() {
        failures.push(format!("r·c^(t−1)·(u−1) = λ₂·(v−1) fails for {params}"));
    }
    for &(s, ok) in &divisibility {
        if !ok {
            let l = lambda_level(params, s)
                .map(|x| crate::rational::to_string(&x))
                .unwrap_or_else(|_| "undefined".into());
            failures.push(format!("λ_{s} = {l} is not an integer"));
        }
    }
    if fisher.failed() {
        failures.push(format!(
            "Fisher-type bound b·u ≥ v fails: {}·{} < {}",
            params.b, params.u, params.v
        ));
    }

    AdmissibilityReport {
        identities,
        divisibility,
        fisher,
        failures,
    }
}

/// Returns `true` when `x` is a (nonnegative) integer.
pub fn is_integral(x: &BigRational) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn p(t: u64, v: u64, b: u64, c: u64, u: u64, lambda: u64) -> DesignParams {
        DesignParams::new(t, v, b, c, u, lambda).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 2), 36);
        assert_eq!(binomial(17, 2), 136);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(
            binomial(128, 64),
            23_951_146_041_928_082_866_135_587_776_380_551_750
        );
        // Pascal's rule at the top of the guaranteed range
        for k in 1..128 {
            assert_eq!(binomial(128, k), binomial(127, k - 1) + binomial(127, k));
        }
    }

    #[test]
    fn levels() {
        assert_eq!(lambda_level(&p(2, 9, 9, 2, 2, 1), 1).unwrap(), ratio(4, 1));
        assert_eq!(
            lambda_level(&p(2, 17, 34, 2, 2, 1), 1).unwrap(),
            ratio(8, 1)
        );
        assert_eq!(lambda_level(&p(2, 9, 9, 2, 2, 1), 2).unwrap(), ratio(1, 1));
        assert_eq!(
            lambda_level(&p(2, 10, 10, 2, 2, 1), 1).unwrap(),
            ratio(9, 2)
        );
        assert!(lambda_level(&p(2, 9, 9, 2, 2, 1), 0).is_err());
        assert!(lambda_level(&p(2, 9, 9, 2, 2, 1), 3).is_err());
    }

    #[test]
    fn identities() {
        let ok = check_identities(&p(2, 17, 34, 2, 2, 1));
        assert_eq!(
            (ok.blocks_points, ok.subset_count, ok.pair_count),
            (Check::Pass, Check::Pass, Check::Pass)
        );
        let ok = check_identities(&p(2, 9, 9, 2, 2, 1));
        assert_eq!(
            (ok.blocks_points, ok.subset_count, ok.pair_count),
            (Check::Pass, Check::Pass, Check::Pass)
        );
        let bad = check_identities(&p(2, 9, 8, 2, 2, 1));
        assert_eq!(bad.blocks_points, Check::Fail);
        assert_eq!(
            check_identities(&p(1, 9, 9, 2, 2, 4)).pair_count,
            Check::NotApplicable
        );
    }

    #[test]
    fn divisibility() {
        assert_eq!(
            check_divisibility(&p(2, 9, 9, 2, 2, 1)),
            vec![(1, true), (2, true)]
        );
        assert_eq!(check_divisibility(&p(2, 10, 10, 2, 2, 1))[0], (1, false));
        for v in 4..20 {
            assert_eq!(check_divisibility(&p(1, v, 3, 2, 2, 5)), vec![(1, true)]);
        }
    }

    #[test]
    fn fisher() {
        assert_eq!(check_fisher(&p(2, 17, 34, 2, 2, 1)), Check::Pass);
        assert_eq!(check_fisher(&p(2, 9, 9, 2, 2, 1)), Check::Pass);
        assert_eq!(check_fisher(&p(2, 100, 10, 2, 2, 1)), Check::Fail);
        assert_eq!(check_fisher(&p(1, 100, 10, 2, 2, 1)), Check::NotApplicable);
    }

    #[test]
    fn admissibility() {
        assert!(admissible(&p(2, 9, 9, 2, 2, 1)).is_admissible());
        assert!(admissible(&p(2, 17, 34, 2, 2, 1)).is_admissible());
        for b in 1..60 {
            let r = admissible(&p(2, 10, b, 2, 2, 1));
            assert_eq!(r.divisibility[0], (1, false));
            assert!(!r.is_admissible());
        }
    }

    #[test]
    fn rejects_bad_tuples() {
        assert!(DesignParams::new(3, 9, 9, 2, 2, 1).is_err());
        assert!(DesignParams::new(2, 3, 9, 2, 2, 1).is_err());
        assert!(DesignParams::new(2, 9, 0, 2, 2, 1).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(2, 17, 34, 2, 2, 1).to_string(), "2-(17,34,4=2×2,1)");
    }
}
