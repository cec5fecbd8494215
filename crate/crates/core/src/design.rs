//! Blocks and splitting designs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::construct::{BaseBlockFamily, OrbitInfo};

/// A point (or message) label in `1..=v`.
pub type Point = u32;

/// A block `B = B_1 ∪ … ∪ B_u`, stored as its ordered list of parts.
///
/// Part order and the order of points inside a part are preserved exactly
/// as given; they carry no meaning for the design axioms but are kept for
/// faithful rendering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Block {
    parts: Vec<Vec<Point>>,
}

impl Block {
    pub fn new(parts: Vec<Vec<Point>>) -> Self {
        Self { parts }
    }

    pub fn parts(&self) -> &[Vec<Point>] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Vec<Point>> {
        self.parts
    }

    /// Number of parts.
    pub fn u(&self) -> usize {
        self.parts.len()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.parts.iter().flatten().copied()
    }

    /// Index of the part containing `x`, if any.
    pub fn part_of(&self, x: Point) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&x))
    }

    /// The block as an unordered set of unordered parts.
    pub fn canonical(&self) -> Vec<Vec<Point>> {
        let mut parts: Vec<Vec<Point>> = self
            .parts
            .iter()
            .map(|p| {
                let mut p = p.clone();
                p.sort_unstable();
                p
            })
            .collect();
        parts.sort();
        parts
    }
}

impl From<Vec<Vec<Point>>> for Block {
    fn from(parts: Vec<Vec<Point>>) -> Self {
        Self::new(parts)
    }
}

/// Renders a point set as `{a,b,…}` in stored order.
pub fn fmt_set(points: &[Point]) -> String {
    let inner: Vec<String> = points.iter().map(Point::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| fmt_set(p)).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A candidate splitting design on the points `1..=v`.
///
/// The block list is a multiset: duplicates are kept and counted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingDesign {
    pub v: u32,
    /// Intended strength; the verifier takes the strength explicitly.
    pub t: u32,
    pub blocks: Vec<Block>,
    /// Orbit structure when the design was developed from base blocks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Vec<OrbitInfo>>,
    #[serde(skip)]
    pub family: Option<BaseBlockFamily>,
}

impl SplittingDesign {
    pub fn new(v: u32, t: u32, blocks: Vec<Block>) -> Self {
        Self {
            v,
            t,
            blocks,
            orbits: None,
            family: None,
        }
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// Orbit lengths in block order, or `None` for designs without provenance.
    pub fn row_groups(&self) -> Option<Vec<usize>> {
        self.orbits
            .as_ref()
            .map(|o| o.iter().map(|x| x.length as usize).collect())
    }
}
