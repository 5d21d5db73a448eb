//! The admissible-set text format.
//!
//! UTF-8, LF line endings. Lines starting with `#` are comments. The first
//! non-comment line is `m <integer>`; every later non-comment line is exactly
//! m characters over {0,1,2}. Readers reject wrong-length lines, characters
//! outside the alphabet, and duplicate vectors.
//!
//! Writers may claim that the family is an I(m,w) set via the comment
//! `# I(m,w)`; `read_family` surfaces the claim so verifiers can check it.

use std::io::{BufRead, Write};

use thiserror::Error;

use crate::family::{FamilyError, VectorFamily};
use crate::vector::{TernaryVector, VectorError, MAX_LEN};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("missing header: expected `m <integer>` before any vector line")]
    MissingHeader,
    #[error("line {line}: malformed header {text:?}: expected `m <integer>` with 1 <= m <= {MAX_LEN}")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: expected exactly {expected} characters, found {found}")]
    WrongLength { line: usize, expected: usize, found: usize },
    #[error("line {line}: {source}")]
    BadVector { line: usize, source: VectorError },
    #[error("line {line}: duplicate vector {vector}")]
    Duplicate { line: usize, vector: TernaryVector },
}

/// A parsed admissible-set file: the family plus the optional `# I(m,w)`
/// claim found in the comments.
#[derive(Debug)]
pub struct ParsedFamily {
    pub family: VectorFamily,
    pub claim: Option<(usize, usize)>,
}

pub fn read_family<R: BufRead>(mut reader: R) -> Result<ParsedFamily, FormatError> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    let mut family: Option<VectorFamily> = None;
    let mut claim = None;
    // split on LF only: a stray CR stays in the line and is rejected below,
    // which is what keeps the format LF-strict
    let mut lines: Vec<&str> = text.split('\n').collect();
    if lines.last() == Some(&"") {
        lines.pop();
    }
    for (idx, line) in lines.into_iter().enumerate() {
        let lineno = idx + 1;
        if let Some(comment) = line.strip_prefix('#') {
            if claim.is_none() {
                claim = parse_claim(comment);
            }
            continue;
        }
        match family {
            None => {
                let m = line
                    .strip_prefix("m ")
                    .and_then(|rest| rest.trim().parse::<usize>().ok())
                    .filter(|&m| (1..=MAX_LEN).contains(&m))
                    .ok_or_else(|| FormatError::BadHeader { line: lineno, text: line.to_string() })?;
                family = Some(VectorFamily::new(m).expect("header length validated"));
            }
            Some(ref mut fam) => {
                if line.chars().count() != fam.len_m() {
                    return Err(FormatError::WrongLength {
                        line: lineno,
                        expected: fam.len_m(),
                        found: line.chars().count(),
                    });
                }
                let vector = TernaryVector::parse(line)
                    .map_err(|source| FormatError::BadVector { line: lineno, source })?;
                fam.push(vector).map_err(|e| match e {
                    FamilyError::Duplicate(vector) => FormatError::Duplicate { line: lineno, vector },
                    other => unreachable!("push after length check: {other}"),
                })?;
            }
        }
    }
    let family = family.ok_or(FormatError::MissingHeader)?;
    Ok(ParsedFamily { family, claim })
}

fn parse_claim(comment: &str) -> Option<(usize, usize)> {
    let body = comment.trim();
    let rest = body.strip_prefix("I(")?.strip_suffix(')')?;
    let (m, w) = rest.split_once(',')?;
    Some((m.trim().parse().ok()?, w.trim().parse().ok()?))
}

/// Writes a family, preceded by optional comment lines (written verbatim
/// after `# `) and an optional I(m,w) claim.
pub fn write_family<W: Write>(
    mut writer: W,
    family: &VectorFamily,
    comments: &[String],
    claim: Option<(usize, usize)>,
) -> Result<(), FormatError> {
    for c in comments {
        writeln!(writer, "# {c}")?;
    }
    if let Some((m, w)) = claim {
        writeln!(writer, "# I({m},{w})")?;
    }
    writeln!(writer, "m {}", family.len_m())?;
    for v in family {
        writeln!(writer, "{v}")?;
    }
    Ok(())
}
