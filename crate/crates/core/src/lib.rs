//! Splitting designs and c-splitting authentication codes.
//!
//! The crate covers the whole path from a family of base blocks to a
//! security verdict:
//!
//! - [`params`]: parameter arithmetic and the necessary existence conditions
//!   for `t-(v,b,l=cu,λ)` splitting designs.
//! - [`construct`]: cyclic development of base blocks over `Z_v`, orbit
//!   analysis and the `u = 2` parametric family.
//! - [`verify`]: exhaustive axiom checking of candidate designs.
//! - [`acode`]: the authentication-code model (encoding rules, messages,
//!   distributions) and the design-to-code conversion.
//! - [`security`]: exact deception probabilities, the spoofing lower bounds,
//!   key-count optimality and Shannon perfect secrecy.
//! - [`cli`]: the `splitcode` command-line front end.
//!
//! Points and messages are 1-based labels (`1..=v`) everywhere. Rule,
//! source and splitting indices in the library API are 0-based.
//!
//! ```
//! use splitcode::{acode, construct, security, verify};
//!
//! let family = construct::family_u2(2, 1).unwrap();
//! let design = construct::develop_cyclic(&family).unwrap();
//! let result = verify::verify_design(&design, 2).unwrap();
//! assert!(result.ok);
//!
//! let code = acode::code_from_design(&design).unwrap();
//! let report = security::analyze(&code, 1).unwrap();
//! assert_eq!(report.security_level, Some(1));
//! assert!(report.secrecy.perfect);
//! ```

pub mod acode;
pub mod cli;
pub mod construct;
pub mod demo;
pub mod design;
mod error;
pub mod files;
pub mod params;
pub mod rational;
pub mod security;
pub mod verify;

pub use error::{Error, Result};
