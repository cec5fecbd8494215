//! Cyclic splitting designs.
//!
//! A design on `Z_v` is cyclic when `x ↦ x+1 (mod v)` maps the block family
//! onto itself. Such a design is the union of the orbits of a few base
//! blocks under that shift. Points are the residues `1..=v`, so the shift
//! wraps `v` around to `1`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::design::{Block, Point, SplittingDesign};
use crate::{Error, Result};

/// Base blocks to be developed over `Z_v`.
///
/// This is also the canonical on-disk input format:
/// `{"v": 17, "u": 2, "c": 2, "base_blocks": [[[1,2],[3,5]], …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseBlockFamily {
    pub v: u32,
    pub u: u32,
    pub c: u32,
    pub base_blocks: Vec<Block>,
}

impl BaseBlockFamily {
    /// Checks shape, range and disjointness of every base block.
    pub fn validate(&self) -> Result<()> {
        if self.v == 0 || self.u == 0 || self.c == 0 {
            return Err(Error::Structure(format!(
                "family parameters must be positive (v={}, u={}, c={})",
                self.v, self.u, self.c
            )));
        }
        for (i, block) in self.base_blocks.iter().enumerate() {
            if let Err(msg) = check_block(block, self.v, self.u, self.c) {
                return Err(Error::Structure(format!(
                    "base block {} {block}: {msg}",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

fn check_block(block: &Block, v: u32, u: u32, c: u32) -> std::result::Result<(), String> {
    if block.u() != u as usize {
        return Err(format!("has {} parts, expected {u}", block.u()));
    }
    let mut seen = HashSet::new();
    for (j, part) in block.parts().iter().enumerate() {
        if part.len() != c as usize {
            return Err(format!(
                "part {} has {} points, expected {c}",
                j + 1,
                part.len()
            ));
        }
        for &x in part {
            if x == 0 || x > v {
                return Err(format!("point {x} outside 1..={v}"));
            }
            if !seen.insert(x) {
                return Err(format!("point {x} occurs twice"));
            }
        }
    }
    Ok(())
}

/// Where an orbit sits in a developed design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInfo {
    /// Index of the generating base block (0-based).
    pub base_index: usize,
    /// Number of distinct translates; always divides `v`.
    pub length: u32,
    /// `length == v`.
    pub is_full: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub info: OrbitInfo,
    /// `B + 0, B + 1, …, B + (length − 1)`.
    pub translates: Vec<Block>,
}

fn shift(x: Point, j: u64, v: u32) -> Point {
    let v = u64::from(v);
    ((u64::from(x) - 1 + j) % v + 1) as Point
}

/// `B + j`: shifts every point by `j` modulo `v`, keeping the part structure.
pub fn translate_block(block: &Block, j: i64, v: u32) -> Block {
    let j = j.rem_euclid(i64::from(v)) as u64;
    Block::new(
        block
            .parts()
            .iter()
            .map(|part| part.iter().map(|&x| shift(x, j, v)).collect())
            .collect(),
    )
}

/// All distinct translates of `block`.
///
/// Two translates are the same block when they have the same parts as
/// unordered sets, regardless of part order.
pub fn orbit_of(block: &Block, v: u32) -> Orbit {
    let base = block.canonical();
    let length = (1..=v)
        .find(|&j| translate_block(block, i64::from(j), v).canonical() == base)
        .unwrap_or(v);
    let translates = (0..length)
        .map(|j| translate_block(block, i64::from(j), v))
        .collect();
    Orbit {
        info: OrbitInfo {
            base_index: 0,
            length,
            is_full: length == v,
        },
        translates,
    }
}

/// Develops every base block into its orbit and concatenates the orbits in
/// base-block order. Short orbits are allowed and recorded.
pub fn develop_cyclic(family: &BaseBlockFamily) -> Result<SplittingDesign> {
    family.validate()?;
    let mut blocks = Vec::new();
    let mut orbits = Vec::with_capacity(family.base_blocks.len());
    for (i, base) in family.base_blocks.iter().enumerate() {
        let mut orbit = orbit_of(base, family.v);
        orbit.info.base_index = i;
        orbits.push(orbit.info);
        blocks.extend(orbit.translates);
    }
    let mut design = SplittingDesign::new(family.v, 2, blocks);
    design.orbits = Some(orbits);
    design.family = Some(family.clone());
    Ok(design)
}

/// Residue class of `v` modulo `u(u−1)c²` relevant for cyclic `λ = 1` designs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Congruence {
    /// `v ≡ 1`: every orbit of a cyclic `λ = 1` design is full.
    One,
    /// `v ≡ l = cu`: short orbits may occur.
    L,
    Neither,
}

pub fn congruence_condition(v: u64, c: u64, u: u64) -> Result<Congruence> {
    if u < 2 {
        return Err(Error::Domain(format!("congruence needs u ≥ 2, got {u}")));
    }
    if c == 0 {
        return Err(Error::Domain("part size must be positive".into()));
    }
    let modulus = u * (u - 1) * c * c;
    let r = v % modulus;
    Ok(if r == 1 % modulus {
        Congruence::One
    } else if r == (c * u) % modulus {
        Congruence::L
    } else {
        Congruence::Neither
    })
}

/// The `u = 2` family on `v = 2c²n + 1` points.
///
/// Base block `h` (for `1 <= h <= n`) is `{{1,…,c}, {a, a+c, …, a+c(c−1)}}`
/// with `a = 2c²h − (2c² − c) + 1`.
pub fn family_u2(c: u32, n: u32) -> Result<BaseBlockFamily> {
    if c == 0 || n == 0 {
        return Err(Error::Domain(format!(
            "family needs c ≥ 1 and n ≥ 1, got c={c} n={n}"
        )));
    }
    let m = 2 * c * c;
    let v = m * n + 1;
    let first: Vec<Point> = (1..=c).collect();
    let base_blocks = (1..=n)
        .map(|h| {
            let start = m * h - (m - c) + 1;
            let second = (0..c).map(|k| start + c * k).collect();
            Block::new(vec![first.clone(), second])
        })
        .collect();
    Ok(BaseBlockFamily {
        v,
        u: 2,
        c,
        base_blocks,
    })
}
