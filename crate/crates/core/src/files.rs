//! On-disk JSON formats.
//!
//! - family: `{"v", "u", "c", "base_blocks"}` ([`BaseBlockFamily`])
//! - design: `{"v", "t", "blocks"}` ([`SplittingDesign`])
//! - code: `{"u", "v", "rules", "key_dist", "source_dist"}` with optional
//!   `"split_dist"` (uniform when absent) and `"row_groups"`.
//!
//! Points are 1-based; probabilities are `"p/q"` strings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::acode::SplittingACode;
use crate::construct::{develop_cyclic, BaseBlockFamily};
use crate::design::{Block, SplittingDesign};
use crate::rational;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub u: usize,
    pub v: u32,
    pub rules: Vec<Block>,
    pub key_dist: Vec<String>,
    pub source_dist: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split_dist: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub row_groups: Vec<usize>,
}

fn parse_all(xs: &[String]) -> Result<Vec<num_rational::BigRational>> {
    xs.iter().map(|s| rational::parse(s)).collect()
}

impl CodeFile {
    pub fn from_code(code: &SplittingACode) -> Self {
        let strs = |xs: &[num_rational::BigRational]| xs.iter().map(rational::to_string).collect();
        let flat = rational::uniform(code.c());
        let uniform_split = code.split_dist().iter().flatten().all(|w| *w == flat);
        Self {
            u: code.u(),
            v: code.v(),
            rules: code.rules().to_vec(),
            key_dist: strs(code.key_dist()),
            source_dist: strs(code.source_dist()),
            split_dist: (!uniform_split).then(|| {
                code.split_dist()
                    .iter()
                    .map(|row| row.iter().map(|w| strs(w)).collect())
                    .collect()
            }),
            row_groups: code.row_groups().to_vec(),
        }
    }

    /// The rules as a design, without any code-level validation.
    pub fn as_design(&self) -> SplittingDesign {
        SplittingDesign::new(self.v, 2, self.rules.clone())
    }

    pub fn into_code(self) -> Result<SplittingACode> {
        let mut code = SplittingACode::new(self.v, self.rules)?;
        if code.u() != self.u {
            return Err(Error::Structure(format!(
                "file declares u = {} but rules have {} cells",
                self.u,
                code.u()
            )));
        }
        code = code
            .with_key_dist(parse_all(&self.key_dist)?)?
            .with_source_dist(parse_all(&self.source_dist)?)?
            .with_row_groups(self.row_groups)?;
        if let Some(split) = self.split_dist {
            let split = split
                .iter()
                .map(|row| row.iter().map(|w| parse_all(w)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            code = code.with_split_dist(split)?;
        }
        Ok(code)
    }
}

/// A design input: either base blocks to develop, or explicit blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesignInput {
    Family(BaseBlockFamily),
    Design(SplittingDesign),
}

impl DesignInput {
    /// Parses family JSON (recognised by `"base_blocks"`) or design JSON.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        if value.get("base_blocks").is_some() {
            Ok(Self::Family(serde_json::from_value(value)?))
        } else {
            Ok(Self::Design(serde_json::from_value(value)?))
        }
    }

    /// The design itself, developing base blocks when needed. Families
    /// develop at strength 2.
    pub fn into_design(self) -> Result<SplittingDesign> {
        match self {
            Self::Family(f) => develop_cyclic(&f),
            Self::Design(d) => Ok(d),
        }
    }
}

/// Pretty JSON followed by a newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acode::code_from_design;
    use crate::construct::family_u2;
    use crate::rational::ratio;
    use proptest::prelude::*;

    #[test]
    fn family_schema() {
        let text = r#"{"v": 17, "u": 2, "c": 2, "base_blocks": [[[1,2],[3,5]], [[1,2],[11,13]]]}"#;
        let DesignInput::Family(f) = DesignInput::from_json(text).unwrap() else {
            panic!("expected a family");
        };
        assert_eq!(f, family_u2(2, 2).unwrap());
        let d = DesignInput::Family(f).into_design().unwrap();
        assert_eq!(d.b(), 34);
    }

    #[test]
    fn design_schema() {
        let text = r#"{"v": 3, "t": 2, "blocks": [[[1],[2]], [[2],[3]], [[3],[1]]]}"#;
        let d = DesignInput::from_json(text).unwrap().into_design().unwrap();
        assert_eq!(d.b(), 3);
        assert!(DesignInput::from_json("{").is_err());
        assert!(DesignInput::from_json(r#"{"v": 3}"#).is_err());
    }

    #[test]
    fn code_schema() {
        let text = r#"{"u": 2, "v": 3, "rules": [[[1],[2]], [[2],[3]], [[3],[1]]],
                       "key_dist": ["1/3","1/3","1/3"], "source_dist": ["1/2","1/2"]}"#;
        let code: CodeFile = serde_json::from_str(text).unwrap();
        let code = code.into_code().unwrap();
        assert_eq!(code.b(), 3);
        assert_eq!(code.split_dist()[0][0], vec![ratio(1, 1)]);

        let bad = text.replace("\"1/3\",\"1/3\",\"1/3\"", "\"1/3\",\"1/3\",\"1/2\"");
        let code: CodeFile = serde_json::from_str(&bad).unwrap();
        assert!(code.into_code().is_err());
    }

    #[test]
    fn code_file_keeps_groups() {
        let code = code_from_design(&develop_cyclic(&family_u2(2, 2).unwrap()).unwrap()).unwrap();
        let file = CodeFile::from_code(&code);
        assert!(file.split_dist.is_none());
        let text = to_json_string(&file).unwrap();
        let back: CodeFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_code().unwrap(), code);
    }

    proptest! {
        #[test]
        fn code_json_round_trip(
            keys in prop::collection::vec(1i64..50, 9),
            sources in prop::collection::vec(1i64..50, 2),
            splits in prop::collection::vec(1i64..50, 36),
        ) {
            let code = code_from_design(&develop_cyclic(&family_u2(2, 1).unwrap()).unwrap()).unwrap();
            let w = |xs: &[i64]| rational::normalize(&xs.iter().map(|&x| ratio(x, 1)).collect::<Vec<_>>()).unwrap();
            let split: Vec<Vec<Vec<_>>> = splits
                .chunks(4)
                .map(|r| r.chunks(2).map(w).collect())
                .collect();
            let code = code
                .with_key_dist(w(&keys)).unwrap()
                .with_source_dist(w(&sources)).unwrap()
                .with_split_dist(split).unwrap();
            let text = to_json_string(&CodeFile::from_code(&code)).unwrap();
            let back: CodeFile = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back.into_code().unwrap(), code);
        }
    }
}
