//! Exact security analysis of splitting authentication codes.
//!
//! The opponent of a spoofing attack of order `i` sees `i` distinct messages
//! sent under one unknown rule (for `i` distinct source states, order
//! ignored) and then inserts a fresh message `m′`. The deception
//! probability `P_{d_i}` is the success probability of the best `m′` for
//! each observed transcript, averaged over transcripts. Every quantity is
//! an exact rational computed by full enumeration of the joint model
//! (rule, set of observed sources, splitting choices).

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::acode::{subscript, SplittingACode};
use crate::design::Point;
use crate::params::binomial;
use crate::rational::{from_int, to_string};
use crate::{Error, Result};

/// When an inserted message counts as a successful deception.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SuccessRule {
    /// `m′ ∈ M(e)` and `e⁻¹(m′)` is none of the observed source states.
    /// This is the event the spoofing lower bounds are tight for.
    #[default]
    NewSource,
    /// `m′ ∈ M(e)` and `m′` differs from the observed messages. Gives larger
    /// values that do not meet the lower bound on tight codes.
    AcceptedOnly,
}

/// Distribution of the set of observed source states: proportional to the
/// product of the single-source weights.
fn source_subsets(code: &SplittingACode, i: usize) -> Result<Vec<(Vec<usize>, BigRational)>> {
    let weighted: Vec<(Vec<usize>, BigRational)> = (0..code.u())
        .combinations(i)
        .map(|set| {
            let w = set.iter().map(|&s| code.source_dist()[s].clone()).product();
            (set, w)
        })
        .collect();
    let total: BigRational = weighted.iter().map(|(_, w)| w).sum();
    if total.is_zero() {
        return Err(Error::Distribution(format!(
            "no set of {i} source states has positive probability"
        )));
    }
    Ok(weighted.into_iter().map(|(s, w)| (s, w / &total)).collect())
}

/// Calls `f` with every index vector `k` where `k[j] < sizes[j]`.
fn for_each_choice(sizes: &[usize], mut f: impl FnMut(&[usize])) {
    if sizes.contains(&0) {
        return;
    }
    let mut idx = vec![0; sizes.len()];
    loop {
        f(&idx);
        let mut j = 0;
        loop {
            if j == sizes.len() {
                return;
            }
            idx[j] += 1;
            if idx[j] < sizes[j] {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// `P_{d_i}` with the default success rule.
pub fn deception_probability(code: &SplittingACode, i: usize) -> Result<BigRational> {
    deception_probability_with(code, i, SuccessRule::NewSource)
}

pub fn deception_probability_with(
    code: &SplittingACode,
    i: usize,
    rule: SuccessRule,
) -> Result<BigRational> {
    if i > code.u() {
        return Err(Error::Domain(format!(
            "order {i} exceeds the number of source states {}",
            code.u()
        )));
    }
    let subsets = source_subsets(code, i)?;
    let v = code.v() as usize;
    // transcript -> joint mass of (transcript, success of m′) for every m′
    let mut table: HashMap<Vec<Point>, Vec<BigRational>> = HashMap::new();

    for (e, pe) in code.key_dist().iter().enumerate() {
        if pe.is_zero() {
            continue;
        }
        let block = &code.rules()[e];
        for (sources, ps) in &subsets {
            if ps.is_zero() {
                continue;
            }
            let base = pe * ps;
            let sizes: Vec<usize> = sources.iter().map(|&s| code.cell(e, s).len()).collect();
            for_each_choice(&sizes, |choice| {
                let mut w = base.clone();
                let mut sent = Vec::with_capacity(sources.len());
                for (&s, &k) in sources.iter().zip(choice) {
                    w *= &code.split_dist()[e][s][k];
                    sent.push(code.cell(e, s)[k]);
                }
                if w.is_zero() {
                    return;
                }
                sent.sort_unstable();
                let row = table
                    .entry(sent.clone())
                    .or_insert_with(|| vec![BigRational::zero(); v + 1]);
                for (s, part) in block.parts().iter().enumerate() {
                    if rule == SuccessRule::NewSource && sources.contains(&s) {
                        continue;
                    }
                    for &m in part {
                        if rule == SuccessRule::AcceptedOnly && sent.contains(&m) {
                            continue;
                        }
                        row[m as usize] += &w;
                    }
                }
            });
        }
    }

    Ok(table
        .values()
        .map(|row| row.iter().max().cloned().unwrap_or_else(BigRational::zero))
        .sum())
}

/// `min_e (|M(e)| − i·max_s |e(s)|) / (v − i)`, which for c-splitting codes
/// is `c(u − i)/(v − i)`.
pub fn spoofing_bound(code: &SplittingACode, i: usize) -> Result<BigRational> {
    let v = code.v() as usize;
    if i >= v {
        return Err(Error::Domain(format!("order {i} must be below v = {v}")));
    }
    let numer = code
        .rules()
        .iter()
        .map(|b| {
            let valid = b.points().count() as i64;
            let widest = b.parts().iter().map(Vec::len).max().unwrap_or(0) as i64;
            valid - i as i64 * widest
        })
        .min()
        .expect("codes have at least one rule");
    Ok(BigRational::new(BigInt::from(numer), BigInt::from(v - i)))
}

/// Largest `t <= i_max` with `P_{d_i}` equal to its lower bound for every
/// `0 <= i <= t`; `None` when already `P_{d_0}` exceeds the bound.
pub fn security_level(code: &SplittingACode, i_max: usize) -> Result<Option<usize>> {
    check_order(code, i_max)?;
    let mut level = None;
    for i in 0..=i_max {
        if deception_probability(code, i)? != spoofing_bound(code, i)? {
            break;
        }
        level = Some(i);
    }
    Ok(level)
}

fn check_order(code: &SplittingACode, i_max: usize) -> Result<()> {
    if i_max > code.u() || i_max >= code.v() as usize {
        return Err(Error::Domain(format!(
            "order {i_max} must be at most u = {} and below v = {}",
            code.u(),
            code.v()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Optimality {
    Optimal,
    NotOptimal,
    /// The code is not `(t−1)`-fold secure, so the key-count bound does not
    /// apply.
    NotApplicable,
}

/// `C(v,t) / (c^t·C(u,t))`, the least number of rules of a `(t−1)`-fold
/// secure c-splitting code.
pub fn key_bound(code: &SplittingACode, t: usize) -> BigRational {
    let (v, c, u) = (code.v() as u64, code.c() as u64, code.u() as u64);
    BigRational::new(
        BigInt::from(binomial(v, t as u64)),
        num_traits::pow(BigInt::from(c), t) * BigInt::from(binomial(u, t as u64)),
    )
}

/// `∏_{i<t} (v − i)/(|M(e)| − i·max_s |e(s)|)` for a given rule.
pub fn key_bound_product(code: &SplittingACode, t: usize, rule: usize) -> BigRational {
    let block = &code.rules()[rule];
    let valid = block.points().count() as i64;
    let widest = block.parts().iter().map(Vec::len).max().unwrap_or(0) as i64;
    (0..t as i64)
        .map(|i| {
            BigRational::new(
                BigInt::from(i64::from(code.v()) - i),
                BigInt::from(valid - i * widest),
            )
        })
        .product()
}

/// Whether the number of rules meets the key-count bound for strength `t`.
pub fn optimality_check(code: &SplittingACode, t: usize) -> Result<Optimality> {
    if t == 0 || t > code.u() {
        return Err(Error::Domain(format!(
            "t = {t} must lie in 1..={}",
            code.u()
        )));
    }
    match security_level(code, t - 1)? {
        Some(level) if level >= t - 1 => {}
        _ => return Ok(Optimality::NotApplicable),
    }
    Ok(if from_int(code.b()) == key_bound(code, t) {
        Optimality::Optimal
    } else {
        Optimality::NotOptimal
    })
}

/// `p(m) = Σ_e p(e) Σ_s p(s)·p(m | e, s)`.
pub fn message_marginal(code: &SplittingACode, m: Point) -> Result<BigRational> {
    if m == 0 || m > code.v() {
        return Err(Error::Domain(format!(
            "message {m} outside 1..={}",
            code.v()
        )));
    }
    Ok((0..code.u()).map(|s| joint(code, s, m)).sum())
}

/// `p(s, m)`.
fn joint(code: &SplittingACode, s: usize, m: Point) -> BigRational {
    let ps = &code.source_dist()[s];
    code.key_dist()
        .iter()
        .enumerate()
        .filter(|(_, pe)| !pe.is_zero())
        .map(|(e, pe)| pe * ps * code.split_weight(e, s, m))
        .sum()
}

/// Posteriors `p(s | m)` for every source and message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosteriorTable {
    /// `p(s)`
    pub priors: Vec<BigRational>,
    /// `p(m)`, indexed by `m − 1`.
    pub message_marginals: Vec<BigRational>,
    /// `p(s | m)` at `[m − 1][s]`; `None` when `p(m) = 0`.
    pub posteriors: Vec<Vec<Option<BigRational>>>,
    /// Messages that are never sent. They make the secrecy verdict fail.
    pub zero_messages: Vec<Point>,
    /// `p(s | m) = p(s)` for every source state and every message.
    pub perfect: bool,
}

impl PosteriorTable {
    /// First `(s, m)` (0-based source, message label) where the posterior
    /// differs from the prior.
    pub fn first_violation(&self) -> Option<(usize, Point)> {
        self.posteriors.iter().enumerate().find_map(|(mi, row)| {
            row.iter().enumerate().find_map(|(s, p)| match p {
                Some(p) if *p != self.priors[s] => Some((s, mi as Point + 1)),
                _ => None,
            })
        })
    }
}

pub fn perfect_secrecy_check(code: &SplittingACode) -> PosteriorTable {
    let priors = code.source_dist().to_vec();
    let mut message_marginals = Vec::with_capacity(code.v() as usize);
    let mut posteriors = Vec::with_capacity(code.v() as usize);
    let mut zero_messages = Vec::new();
    for m in 1..=code.v() {
        let joints: Vec<BigRational> = (0..code.u()).map(|s| joint(code, s, m)).collect();
        let pm: BigRational = joints.iter().sum();
        if pm.is_zero() {
            zero_messages.push(m);
            posteriors.push(vec![None; code.u()]);
        } else {
            posteriors.push(joints.into_iter().map(|j| Some(j / &pm)).collect());
        }
        message_marginals.push(pm);
    }
    let mut table = PosteriorTable {
        priors,
        message_marginals,
        posteriors,
        zero_messages,
        perfect: false,
    };
    table.perfect = table.zero_messages.is_empty() && table.first_violation().is_none();
    table
}

/// Everything [`analyze`] computes about one code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecurityReport {
    /// `P_{d_i}` for `0 <= i <= i_max`.
    pub pd: Vec<BigRational>,
    /// Lower bounds for the same orders.
    pub bounds: Vec<BigRational>,
    pub security_level: Option<usize>,
    /// Strength `t = i_max + 1` at which optimality was judged.
    pub optimality_order: usize,
    pub optimal: Optimality,
    pub secrecy: PosteriorTable,
    pub rules: usize,
    pub messages: u32,
    pub sources: usize,
    pub c: usize,
}

pub fn analyze(code: &SplittingACode, i_max: usize) -> Result<SecurityReport> {
    check_order(code, i_max)?;
    let pd = (0..=i_max)
        .map(|i| deception_probability(code, i))
        .collect::<Result<Vec<_>>>()?;
    let bounds = (0..=i_max)
        .map(|i| spoofing_bound(code, i))
        .collect::<Result<Vec<_>>>()?;
    let security_level = pd
        .iter()
        .zip(&bounds)
        .take_while(|(p, b)| p == b)
        .count()
        .checked_sub(1);
    let t = i_max + 1;
    let optimal = if t > code.u() {
        Optimality::NotApplicable
    } else if security_level.is_some_and(|l| l >= t - 1) {
        if from_int(code.b()) == key_bound(code, t) {
            Optimality::Optimal
        } else {
            Optimality::NotOptimal
        }
    } else {
        Optimality::NotApplicable
    };
    Ok(SecurityReport {
        pd,
        bounds,
        security_level,
        optimality_order: t,
        optimal,
        secrecy: perfect_secrecy_check(code),
        rules: code.b(),
        messages: code.v(),
        sources: code.u(),
        c: code.c(),
    })
}

fn fold_word(n: usize) -> String {
    const WORDS: [&str; 6] = ["zero", "one", "two", "three", "four", "five"];
    WORDS
        .get(n)
        .map_or_else(|| n.to_string(), |w| w.to_string())
}

impl SecurityReport {
    fn bound_expr(&self) -> String {
        let t = self.optimality_order;
        format!(
            "C({},{t})/({}^{t}·C({},{t}))",
            self.messages, self.c, self.sources
        )
    }

    /// Claims that do not hold: tight deception probabilities up to the
    /// analysed order, optimality, perfect secrecy.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, (p, b)) in self.pd.iter().zip(&self.bounds).enumerate() {
            if p != b {
                out.push(format!(
                    "P_d{i} equality: P_d{i} = {} exceeds the bound {}",
                    to_string(p),
                    to_string(b)
                ));
            }
        }
        match self.optimal {
            Optimality::Optimal => {}
            Optimality::NotOptimal => out.push(format!(
                "optimality: {} encoding rules, bound {} = {}",
                self.rules,
                self.bound_expr(),
                to_string(&self.key_bound())
            )),
            Optimality::NotApplicable => out.push(format!(
                "optimality: not applicable, the code is not {}-fold secure",
                self.optimality_order - 1
            )),
        }
        if !self.secrecy.perfect {
            out.push(format!("secrecy: {}", self.secrecy_text()));
        }
        out
    }

    fn key_bound(&self) -> BigRational {
        let t = self.optimality_order as u64;
        BigRational::new(
            BigInt::from(binomial(self.messages.into(), t)),
            num_traits::pow(BigInt::from(self.c), t as usize)
                * BigInt::from(binomial(self.sources as u64, t)),
        )
    }

    fn secrecy_text(&self) -> String {
        let sec = &self.secrecy;
        if sec.perfect {
            return format!(
                "p(s|m) = p(s) for all {} (s,m) pairs",
                sec.priors.len() * sec.message_marginals.len()
            );
        }
        if let Some(&m) = sec.zero_messages.first() {
            return format!("message {m} is never sent");
        }
        let (s, m) = sec
            .first_violation()
            .expect("imperfect secrecy has a witness");
        format!(
            "p(s{}|m={m}) = {} differs from p(s{}) = {}",
            subscript(s + 1),
            to_string(sec.posteriors[m as usize - 1][s].as_ref().unwrap()),
            subscript(s + 1),
            to_string(&sec.priors[s])
        )
    }

    /// Plain-text summary.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for (i, (p, b)) in self.pd.iter().zip(&self.bounds).enumerate() {
            out.push_str(&format!(
                "P_d{i} = {} (bound {})\n",
                to_string(p),
                to_string(b)
            ));
        }
        match self.security_level {
            Some(l) => out.push_str(&format!("{}-fold secure against spoofing\n", fold_word(l))),
            None => out.push_str("not secure against spoofing: P_d0 exceeds its bound\n"),
        }
        match self.optimal {
            Optimality::Optimal => out.push_str(&format!(
                "optimal: {} encoding rules = {}\n",
                self.rules,
                self.bound_expr()
            )),
            Optimality::NotOptimal => out.push_str(&format!(
                "not optimal: {} encoding rules > {} = {}\n",
                self.rules,
                self.bound_expr(),
                to_string(&self.key_bound())
            )),
            Optimality::NotApplicable => out.push_str(&format!(
                "optimality: not applicable (not {}-fold secure)\n",
                self.optimality_order - 1
            )),
        }
        if self.secrecy.perfect {
            out.push_str(&format!("perfect secrecy: {}\n", self.secrecy_text()));
        } else {
            out.push_str(&format!("no perfect secrecy: {}\n", self.secrecy_text()));
        }
        out
    }

    /// JSON form with rationals as `"p/q"` strings.
    pub fn to_json(&self) -> Value {
        let strs = |xs: &[BigRational]| xs.iter().map(to_string).collect::<Vec<_>>();
        let posteriors: Vec<Vec<Value>> = self
            .secrecy
            .posteriors
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| {
                        p.as_ref()
                            .map_or(Value::Null, |p| Value::String(to_string(p)))
                    })
                    .collect()
            })
            .collect();
        json!({
            "pd": strs(&self.pd),
            "bounds": strs(&self.bounds),
            "security_level": self.security_level.map_or(-1, |l| l as i64),
            "optimality_order": self.optimality_order,
            "optimal": self.optimal,
            "rules": self.rules,
            "secrecy": {
                "perfect": self.secrecy.perfect,
                "priors": strs(&self.secrecy.priors),
                "message_marginals": strs(&self.secrecy.message_marginals),
                "posteriors": posteriors,
                "zero_messages": self.secrecy.zero_messages,
            },
        })
    }
}
