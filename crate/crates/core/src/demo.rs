//! The two worked examples: the 9-rule code on 9 messages and the 34-rule
//! code on 17 messages, both from the `u = 2`, `c = 2` cyclic family.

use crate::acode::{code_from_design, render_matrix};
use crate::construct::{develop_cyclic, family_u2};
use crate::design::Block;
use crate::security::analyze;
use crate::verify::verify_design;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Table {
    /// One base block over Z_9.
    Table1,
    /// Two base blocks over Z_17.
    Table2,
}

impl Table {
    /// Family parameters `(c, n)`.
    fn family(self) -> (u32, u32) {
        match self {
            Table::Table1 => (2, 1),
            Table::Table2 => (2, 2),
        }
    }
}

/// Encoding matrix, a blank line, then the design and security summary.
pub fn render(table: Table) -> Result<String> {
    let (c, n) = table.family();
    let family = family_u2(c, n)?;
    let design = develop_cyclic(&family)?;
    let verified = verify_design(&design, 2)?;
    let params = verified
        .params
        .ok_or_else(|| Error::Rejected("demo design failed verification".into()))?;
    let code = code_from_design(&design)?;
    let report = analyze(&code, 1)?;

    let bases: Vec<String> = family.base_blocks.iter().map(Block::to_string).collect();
    let mut out = render_matrix(&code).to_text();
    out.push('\n');
    out.push_str(&format!(
        "design: {params} splitting design, λ={}, cyclic with base blocks {}\n",
        params.lambda,
        bases.join(" and ")
    ));
    out.push_str(&format!(
        "{} equiprobable source states, {} messages, each encoding rule used with probability 1/{}\n",
        code.u(),
        code.v(),
        code.b()
    ));
    out.push_str(&report.summary());
    Ok(out)
}
