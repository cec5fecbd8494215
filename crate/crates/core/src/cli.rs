//! `splitcode` command line.
//!
//! Exit codes: `0` when everything checked holds, `1` when a verification
//! or security claim fails, `2` for malformed input or usage errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::acode::{code_from_design, render_matrix};
use crate::construct::family_u2;
use crate::demo::{self, Table};
use crate::files::{to_json_string, CodeFile, DesignInput};
use crate::params::admissible;
use crate::security::analyze;
use crate::verify::{check_structure, verify_design};
use crate::Error;

#[derive(Debug, Parser)]
#[command(
    name = "splitcode",
    version,
    about = "Splitting designs and splitting authentication codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the base blocks of the u = 2 family on 2c²n+1 points.
    GenFamily {
        #[arg(long)]
        c: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Develop a base-block family into a design.
    Develop {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the splitting-design axioms on a family or design file.
    Verify {
        input: PathBuf,
        /// Strength; defaults to the file's `t` (2 for families).
        #[arg(long)]
        t: Option<u32>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a verified λ = 1 design into an authentication code.
    ToCode {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact security analysis of a code file.
    Analyze {
        input: PathBuf,
        /// Highest spoofing order analysed.
        #[arg(long, default_value_t = 1)]
        i_max: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render the encoding matrix of a code file.
    Export {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce one of the worked examples.
    Demo {
        #[arg(value_enum)]
        which: Table,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Markdown,
    Csv,
    Json,
}

/// Process outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    ClaimFailed = 1,
    Malformed = 2,
}

struct Failure {
    exit: Exit,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::Rejected(_) => Exit::ClaimFailed,
            _ => Exit::Malformed,
        };
        Self {
            exit,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<(String, Exit), Failure>;

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                Exit::Malformed
            } else {
                Exit::Ok
            };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code as i32;
        }
    };
    let dest = match &cli.command {
        Command::GenFamily { out, .. }
        | Command::Develop { out, .. }
        | Command::Verify { out, .. }
        | Command::ToCode { out, .. }
        | Command::Analyze { out, .. }
        | Command::Export { out, .. } => out.clone(),
        Command::Demo { .. } => None,
    };
    match execute(cli.command) {
        Ok((text, exit)) => {
            let written = match dest {
                Some(path) => fs::write(&path, &text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => exit as i32,
                Err(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    Exit::Malformed as i32
                }
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.exit as i32
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        exit: Exit::Malformed,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn execute(command: Command) -> Outcome {
    match command {
        Command::GenFamily { c, n, .. } => {
            let family = family_u2(c, n)?;
            Ok((to_json_string(&family)?, Exit::Ok))
        }
        Command::Develop { input, .. } => {
            let design = DesignInput::from_json(&read(&input)?)?.into_design()?;
            Ok((to_json_string(&design)?, Exit::Ok))
        }
        Command::Verify { input, t, json, .. } => verify_cmd(&input, t, json),
        Command::ToCode { input, .. } => {
            let design = DesignInput::from_json(&read(&input)?)?.into_design()?;
            let code = code_from_design(&design)?;
            Ok((to_json_string(&CodeFile::from_code(&code))?, Exit::Ok))
        }
        Command::Analyze {
            input, i_max, json, ..
        } => analyze_cmd(&input, i_max, json),
        Command::Export { input, format, .. } => {
            let file: CodeFile = serde_json::from_str(&read(&input)?).map_err(Error::from)?;
            let code = file.into_code()?;
            let text = match format {
                Format::Text => render_matrix(&code).to_text(),
                Format::Markdown => render_matrix(&code).to_markdown(),
                Format::Csv => render_matrix(&code).to_csv()?,
                Format::Json => to_json_string(&CodeFile::from_code(&code))?,
            };
            Ok((text, Exit::Ok))
        }
        Command::Demo { which } => Ok((demo::render(which)?, Exit::Ok)),
    }
}

fn verify_cmd(input: &Path, t: Option<u32>, json: bool) -> Outcome {
    let design = DesignInput::from_json(&read(input)?)?.into_design()?;
    let t = t.unwrap_or(design.t);
    let result = verify_design(&design, t)?;
    let exit = if result.ok {
        Exit::Ok
    } else {
        Exit::ClaimFailed
    };
    if json {
        return Ok((to_json_string(&result)?, exit));
    }
    let text = match (&result.params, &result.witness) {
        (Some(p), _) => {
            let mut s = format!("{p}, λ={}\n", p.lambda);
            if let Some(orbits) = &design.orbits {
                let full = orbits.iter().filter(|o| o.is_full).count();
                s.push_str(&format!(
                    "orbits: {} ({full} full, {} short)\n",
                    orbits.len(),
                    orbits.len() - full
                ));
            }
            for f in admissible(p).failures {
                s.push_str(&format!("warning: {f}\n"));
            }
            s
        }
        (None, Some(w)) => format!("not a {t}-splitting design: {w}\n"),
        (None, None) => "not a splitting design\n".to_string(),
    };
    Ok((text, exit))
}

fn analyze_cmd(input: &Path, i_max: usize, json: bool) -> Outcome {
    let file: CodeFile = serde_json::from_str(&read(input)?).map_err(Error::from)?;
    let as_design = file.as_design();
    let defects = check_structure(&as_design);
    if !defects.is_empty() {
        let lines: Vec<String> = defects
            .iter()
            .map(|d| format!("FAIL structure: {d}\n"))
            .collect();
        return Ok((lines.concat(), Exit::ClaimFailed));
    }
    let code = file.into_code()?;

    let mut violations = Vec::new();
    let t = i_max as u32 + 1;
    if (t as usize) <= code.u() {
        let r = verify_design(&code.to_design(t), t)?;
        match (r.params, r.witness) {
            (Some(p), _) if p.lambda == 1 => {}
            (Some(p), _) => violations.push(format!("λ-uniformity: λ = {} ≠ 1", p.lambda)),
            (None, Some(w)) => violations.push(w.to_string()),
            (None, None) => violations.push("λ-uniformity".into()),
        }
    }
    let report = analyze(&code, i_max)?;
    violations.extend(report.violations());

    let text = if json {
        let mut j = report.to_json();
        j["violations"] = serde_json::json!(violations);
        to_json_string(&j)?
    } else {
        let mut s = report.summary();
        for v in &violations {
            s.push_str(&format!("FAIL {v}\n"));
        }
        s
    };
    let exit = if violations.is_empty() {
        Exit::Ok
    } else {
        Exit::ClaimFailed
    };
    Ok((text, exit))
}
