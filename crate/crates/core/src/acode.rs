//! c-splitting authentication codes.
//!
//! An encoding rule (key) `e` assigns each source state `s` a set `e(s)` of
//! `c` messages; the sets of one rule are pairwise disjoint, so the receiver
//! can decode. The transmitter picks the message inside `e(s)` according to
//! a splitting distribution. A received message is accepted under `e` iff it
//! lies in `M(e) = ∪ e(s)`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::Zero;

use crate::design::{fmt_set, Block, Point, SplittingDesign};
use crate::rational::{check_distribution, uniform};
use crate::verify::{check_structure, verify_design};
use crate::{Error, Result};

/// A c-splitting authentication code with its key, source and splitting
/// distributions.
///
/// Rule, source and splitting indices are 0-based; messages are labels in
/// `1..=v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingACode {
    v: u32,
    u: usize,
    c: usize,
    rules: Vec<Block>,
    key_dist: Vec<BigRational>,
    source_dist: Vec<BigRational>,
    /// `split_dist[e][s][k]` weights the `k`-th message of `e(s)` in stored
    /// cell order.
    split_dist: Vec<Vec<Vec<BigRational>>>,
    row_groups: Vec<usize>,
}

impl SplittingACode {
    /// Builds a code with uniform key, source and splitting distributions.
    pub fn new(v: u32, rules: Vec<Block>) -> Result<Self> {
        let as_design = SplittingDesign::new(v, 0, rules);
        if let Some(d) = check_structure(&as_design).first() {
            return Err(Error::Structure(d.to_string()));
        }
        let rules = as_design.blocks;
        let u = rules[0].u();
        let c = rules[0].parts()[0].len();
        Ok(Self {
            v,
            u,
            c,
            key_dist: uniform(rules.len()),
            source_dist: uniform(u),
            split_dist: vec![vec![uniform(c); u]; rules.len()],
            rules,
            row_groups: Vec::new(),
        })
    }

    pub fn with_key_dist(mut self, dist: Vec<BigRational>) -> Result<Self> {
        if dist.len() != self.rules.len() {
            return Err(Error::Distribution(format!(
                "key distribution has {} weights for {} rules",
                dist.len(),
                self.rules.len()
            )));
        }
        check_distribution(&dist, "key distribution")?;
        self.key_dist = dist;
        Ok(self)
    }

    pub fn with_source_dist(mut self, dist: Vec<BigRational>) -> Result<Self> {
        if dist.len() != self.u {
            return Err(Error::Distribution(format!(
                "source distribution has {} weights for {} sources",
                dist.len(),
                self.u
            )));
        }
        check_distribution(&dist, "source distribution")?;
        self.source_dist = dist;
        Ok(self)
    }

    pub fn with_split_dist(mut self, dist: Vec<Vec<Vec<BigRational>>>) -> Result<Self> {
        let shape_ok = dist.len() == self.rules.len()
            && dist
                .iter()
                .all(|row| row.len() == self.u && row.iter().all(|w| w.len() == self.c));
        if !shape_ok {
            return Err(Error::Distribution(format!(
                "splitting distribution must be {}×{}×{}",
                self.rules.len(),
                self.u,
                self.c
            )));
        }
        for (e, row) in dist.iter().enumerate() {
            for (s, w) in row.iter().enumerate() {
                check_distribution(
                    w,
                    &format!("splitting distribution of e{} s{}", e + 1, s + 1),
                )?;
            }
        }
        self.split_dist = dist;
        Ok(self)
    }

    /// Row-group lengths used to draw separators (for example orbit
    /// boundaries). Must sum to the number of rules; empty means no groups.
    pub fn with_row_groups(mut self, groups: Vec<usize>) -> Result<Self> {
        if !groups.is_empty() && groups.iter().sum::<usize>() != self.rules.len() {
            return Err(Error::Structure(format!(
                "row groups {groups:?} do not add up to {} rules",
                self.rules.len()
            )));
        }
        self.row_groups = groups;
        Ok(self)
    }

    /// Number of messages.
    pub fn v(&self) -> u32 {
        self.v
    }

    /// Number of source states.
    pub fn u(&self) -> usize {
        self.u
    }

    /// Messages per source state and rule.
    pub fn c(&self) -> usize {
        self.c
    }

    /// Number of encoding rules.
    pub fn b(&self) -> usize {
        self.rules.len()
    }

    pub fn rules(&self) -> &[Block] {
        &self.rules
    }

    pub fn key_dist(&self) -> &[BigRational] {
        &self.key_dist
    }

    pub fn source_dist(&self) -> &[BigRational] {
        &self.source_dist
    }

    pub fn split_dist(&self) -> &[Vec<Vec<BigRational>>] {
        &self.split_dist
    }

    pub fn row_groups(&self) -> &[usize] {
        &self.row_groups
    }

    /// `e(s)` in stored order.
    pub fn cell(&self, rule: usize, source: usize) -> &[Point] {
        &self.rules[rule].parts()[source]
    }

    /// Probability that rule `rule` sends `m` for source `source`.
    pub fn split_weight(&self, rule: usize, source: usize, m: Point) -> BigRational {
        match self.cell(rule, source).iter().position(|&x| x == m) {
            Some(k) => self.split_dist[rule][source][k].clone(),
            None => BigRational::zero(),
        }
    }

    /// The underlying block family, one block per rule.
    pub fn to_design(&self, t: u32) -> SplittingDesign {
        SplittingDesign::new(self.v, t, self.rules.clone())
    }

    fn check_rule(&self, rule: usize) -> Result<()> {
        if rule >= self.rules.len() {
            return Err(Error::Domain(format!(
                "rule index {rule} out of range (b = {})",
                self.rules.len()
            )));
        }
        Ok(())
    }
}

/// Turns a verified `t-(v,b,l=cu,1)` splitting design (`t >= 2`) into a code:
/// blocks become rules, part `j` becomes `e(s_j)`, points become messages.
/// All distributions are uniform.
pub fn code_from_design(design: &SplittingDesign) -> Result<SplittingACode> {
    if design.t < 2 {
        return Err(Error::Rejected(format!("strength {} is below 2", design.t)));
    }
    let result = verify_design(design, design.t)?;
    let params = match (result.params, result.witness) {
        (Some(p), _) => p,
        (None, Some(w)) => return Err(Error::Rejected(w.to_string())),
        (None, None) => return Err(Error::Rejected("verification failed".into())),
    };
    if params.lambda != 1 {
        return Err(Error::Rejected(format!("{params} has λ ≠ 1")));
    }
    let code = SplittingACode::new(design.v, design.blocks.clone())?;
    match design.row_groups() {
        Some(groups) => code.with_row_groups(groups),
        None => Ok(code),
    }
}

/// `e(s, r)`: the `r`-th message of `e(s)` in ascending label order.
pub fn encode(code: &SplittingACode, rule: usize, source: usize, r: usize) -> Result<Point> {
    code.check_rule(rule)?;
    if source >= code.u {
        return Err(Error::Domain(format!(
            "source index {source} out of range (u = {})",
            code.u
        )));
    }
    if r >= code.c {
        return Err(Error::Domain(format!(
            "splitting index {r} out of range (c = {})",
            code.c
        )));
    }
    let mut cell = code.cell(rule, source).to_vec();
    cell.sort_unstable();
    Ok(cell[r])
}

/// `e⁻¹(m)`: the source state whose cell holds `m`, or `None` when the
/// receiver rejects `m` under this rule.
pub fn decode(code: &SplittingACode, rule: usize, message: Point) -> Result<Option<usize>> {
    code.check_rule(rule)?;
    Ok(code.rules[rule].part_of(message))
}

/// `M(e)`, the messages accepted under `rule`.
pub fn valid_messages(code: &SplittingACode, rule: usize) -> Result<BTreeSet<Point>> {
    code.check_rule(rule)?;
    Ok(code.rules[rule].points().collect())
}

/// Row/column labels and rendered cells of the encoding matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingMatrix {
    /// `e₁ … e_b`
    pub rows: Vec<String>,
    /// `s₁ … s_u`
    pub cols: Vec<String>,
    /// Cells in stored order, e.g. `{9,1}`.
    pub cells: Vec<Vec<String>>,
    /// Row-group lengths; a separator is drawn between groups.
    pub groups: Vec<usize>,
}

pub fn subscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|d| char::from_u32(0x2080 + d.to_digit(10).unwrap()).unwrap())
        .collect()
}

pub fn render_matrix(code: &SplittingACode) -> EncodingMatrix {
    EncodingMatrix {
        rows: (1..=code.b())
            .map(|i| format!("e{}", subscript(i)))
            .collect(),
        cols: (1..=code.u).map(|j| format!("s{}", subscript(j))).collect(),
        cells: code
            .rules
            .iter()
            .map(|r| r.parts().iter().map(|p| fmt_set(p)).collect())
            .collect(),
        groups: code.row_groups.clone(),
    }
}

/// Line drawn between row groups in the text rendering.
pub const GROUP_SEPARATOR: &str = "---";

impl EncodingMatrix {
    /// Row indices after which a group ends (excluding the last row).
    fn breaks(&self) -> Vec<usize> {
        let mut acc = 0;
        let mut out = Vec::new();
        for g in &self.groups {
            acc += g;
            if acc < self.rows.len() {
                out.push(acc);
            }
        }
        out
    }

    /// One line per rule, `e₁ {1,2} {3,5}`, with [`GROUP_SEPARATOR`] lines
    /// between row groups.
    pub fn to_text(&self) -> String {
        let breaks = self.breaks();
        let mut out = String::new();
        for (i, (label, cells)) in self.rows.iter().zip(&self.cells).enumerate() {
            if breaks.contains(&i) {
                out.push_str(GROUP_SEPARATOR);
                out.push('\n');
            }
            let _ = writeln!(out, "{label} {}", cells.join(" "));
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("| | {} |\n", self.cols.join(" | "));
        let _ = writeln!(out, "|---|{}", "---|".repeat(self.cols.len()));
        for (label, cells) in self.rows.iter().zip(&self.cells) {
            let _ = writeln!(out, "| {label} | {} |", cells.join(" | "));
        }
        out
    }

    /// CSV with a `rule,s1,…` header and ASCII labels.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["rule".to_string()];
        header.extend((1..=self.cols.len()).map(|j| format!("s{j}")));
        w.write_record(&header)?;
        for (i, cells) in self.cells.iter().enumerate() {
            let mut rec = vec![format!("e{}", i + 1)];
            rec.extend(cells.iter().cloned());
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}
