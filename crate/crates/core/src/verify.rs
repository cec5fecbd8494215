//! Exhaustive verification of the splitting-design axioms.
//!
//! A block covers a `t`-subset only when the `t` points lie in `t` mutually
//! distinct parts of that block; two points sharing a part do not count.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::design::{Point, SplittingDesign};
use crate::params::{lambda_level, DesignParams};
use crate::{Error, Result};

/// A structural problem with one block, or with the design as a whole.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Defect {
    /// 0-based block index; `None` for design-level defects.
    pub block: Option<usize>,
    pub kind: DefectKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DefectKind {
    NoBlocks,
    EmptyPart,
    PartCount {
        found: usize,
        expected: usize,
    },
    PartSize {
        part: usize,
        found: usize,
        expected: usize,
    },
    PointOutOfRange {
        point: Point,
        v: u32,
    },
    PartsNotDisjoint {
        point: Point,
    },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(i) = self.block {
            write!(f, "block {}: ", i + 1)?;
        }
        match &self.kind {
            DefectKind::NoBlocks => write!(f, "design has no blocks"),
            DefectKind::EmptyPart => write!(f, "first part is empty"),
            DefectKind::PartCount { found, expected } => {
                write!(f, "{found} parts, expected {expected}")
            }
            DefectKind::PartSize {
                part,
                found,
                expected,
            } => write!(f, "part {} has size {found}, expected {expected}", part + 1),
            DefectKind::PointOutOfRange { point, v } => write!(f, "point {point} outside 1..={v}"),
            DefectKind::PartsNotDisjoint { point } => {
                write!(
                    f,
                    "point {point} appears more than once (parts not disjoint)"
                )
            }
        }
    }
}

/// Block shape `(u, c)` read off the first block.
fn shape(design: &SplittingDesign) -> Option<(usize, usize)> {
    let first = design.blocks.first()?;
    Some((first.u(), first.parts().first().map_or(0, Vec::len)))
}

/// Lists every violation of the block structure: `u` parts of size `c`,
/// pairwise disjoint, points in `1..=v`. The shape is taken from the first
/// block and every other block must match it.
pub fn check_structure(design: &SplittingDesign) -> Vec<Defect> {
    let Some((u, c)) = shape(design) else {
        return vec![Defect {
            block: None,
            kind: DefectKind::NoBlocks,
        }];
    };
    if c == 0 {
        return vec![Defect {
            block: Some(0),
            kind: DefectKind::EmptyPart,
        }];
    }
    let mut defects = Vec::new();
    let mut seen = vec![usize::MAX; design.v as usize + 1];
    for (i, block) in design.blocks.iter().enumerate() {
        let mut push = |kind| {
            defects.push(Defect {
                block: Some(i),
                kind,
            })
        };
        if block.u() != u {
            push(DefectKind::PartCount {
                found: block.u(),
                expected: u,
            });
        }
        for (j, part) in block.parts().iter().enumerate() {
            if part.len() != c {
                push(DefectKind::PartSize {
                    part: j,
                    found: part.len(),
                    expected: c,
                });
            }
            for &x in part {
                if x == 0 || x > design.v {
                    push(DefectKind::PointOutOfRange {
                        point: x,
                        v: design.v,
                    });
                } else if seen[x as usize] == i {
                    push(DefectKind::PartsNotDisjoint { point: x });
                } else {
                    seen[x as usize] = i;
                }
            }
        }
    }
    defects
}

/// Per-block lookup `point -> part index + 1`, with `0` for absent points.
struct Membership {
    v: usize,
    table: Vec<u16>,
}

impl Membership {
    fn new(design: &SplittingDesign) -> Self {
        let v = design.v as usize;
        let mut table = vec![0u16; design.blocks.len() * (v + 1)];
        for (i, block) in design.blocks.iter().enumerate() {
            for (j, part) in block.parts().iter().enumerate() {
                for &x in part {
                    if (1..=v).contains(&(x as usize)) {
                        table[i * (v + 1) + x as usize] = (j + 1) as u16;
                    }
                }
            }
        }
        Self { v, table }
    }

    fn count(&self, points: &[Point]) -> u64 {
        let stride = self.v + 1;
        let mut parts = Vec::with_capacity(points.len());
        self.table
            .chunks_exact(stride)
            .filter(|row| {
                parts.clear();
                for &x in points {
                    let p = row[x as usize];
                    if p == 0 || parts.contains(&p) {
                        return false;
                    }
                    parts.push(p);
                }
                true
            })
            .count() as u64
    }
}

fn check_points(design: &SplittingDesign, points: &[Point]) -> Result<()> {
    for (k, &x) in points.iter().enumerate() {
        if x == 0 || x > design.v {
            return Err(Error::Domain(format!("point {x} outside 1..={}", design.v)));
        }
        if points[..k].contains(&x) {
            return Err(Error::Domain(format!("point {x} repeated")));
        }
    }
    Ok(())
}

/// Number of blocks (with multiplicity) in which the given points fall into
/// mutually distinct parts.
pub fn count_covering_blocks(design: &SplittingDesign, points: &[Point]) -> Result<u64> {
    check_points(design, points)?;
    Ok(Membership::new(design).count(points))
}

/// Why a candidate failed verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "witness", rename_all = "kebab-case")]
pub enum Witness {
    Structure {
        defects: Vec<Defect>,
    },
    /// The lexicographically first subset whose coverage differs from that
    /// of `{1,…,t}`.
    Coverage {
        points: Vec<Point>,
        actual: u64,
        expected: u64,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Structure { defects } => {
                let d: Vec<String> = defects.iter().map(ToString::to_string).collect();
                write!(f, "structure: {}", d.join("; "))
            }
            Witness::Coverage {
                points,
                actual,
                expected,
            } => write!(
                f,
                "λ-uniformity: subset {points:?} is covered {actual} times, expected {expected}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationResult {
    pub ok: bool,
    /// Extracted parameters, present when `ok`.
    pub params: Option<DesignParams>,
    pub witness: Option<Witness>,
}

impl VerificationResult {
    fn fail(witness: Witness) -> Self {
        Self {
            ok: false,
            params: None,
            witness: Some(witness),
        }
    }
}

/// Decides whether `design` is a `t-(v,b,l=cu,λ)` splitting design by
/// scanning all `C(v,t)` subsets of points.
pub fn verify_design(design: &SplittingDesign, t: u32) -> Result<VerificationResult> {
    if t == 0 {
        return Err(Error::Domain("strength must be at least 1".into()));
    }
    let defects = check_structure(design);
    if !defects.is_empty() {
        return Ok(VerificationResult::fail(Witness::Structure { defects }));
    }
    let (u, c) = shape(design).expect("structure check guarantees a block");
    if t as usize > u {
        return Err(Error::Domain(format!("strength t={t} exceeds u={u}")));
    }

    let index = Membership::new(design);
    let mut subsets = (1..=design.v).combinations(t as usize);
    let Some(first) = subsets.next() else {
        return Err(Error::Domain(format!(
            "no {t}-subsets of {} points",
            design.v
        )));
    };
    let lambda = index.count(&first);
    if let Some(points) = subsets.find(|s| index.count(s) != lambda) {
        let actual = index.count(&points);
        return Ok(VerificationResult::fail(Witness::Coverage {
            points,
            actual,
            expected: lambda,
        }));
    }
    // every block covers at least one t-subset once t <= u
    debug_assert!(lambda > 0);
    let params = DesignParams::new(
        t.into(),
        design.v.into(),
        design.blocks.len() as u64,
        c as u64,
        u as u64,
        lambda,
    )?;
    Ok(VerificationResult {
        ok: true,
        params: Some(params),
        witness: None,
    })
}

/// Checks that a design verified at strength `t` is also an
/// `s-(v,b,l,λ_s)` splitting design for every `1 <= s < t`, with `λ_s`
/// given by the closed formula.
pub fn downgrade_check(design: &SplittingDesign, t: u32) -> Result<bool> {
    let top = verify_design(design, t)?;
    let Some(params) = top.params else {
        return Ok(false);
    };
    for s in 1..t {
        let r = verify_design(design, s)?;
        let expected = lambda_level(&params, s.into())?;
        match r.params {
            Some(p) if crate::rational::from_int(p.lambda) == expected => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}
