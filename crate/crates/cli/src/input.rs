use std::fs;
use std::path::Path;

use hodgekit::exact::parse::parse_polynomial;
use hodgekit::mhs::ClaimedValues;
use hodgekit::samples::{builtin, BUILTINS};
use hodgekit::{Error, Polynomial};

use crate::CliError;

/// Forms need at least three variables; smaller counts are padded.
const MIN_VARS: usize = 3;

/// A built-in name or polynomial text.
pub fn form(text: &str, vars: Option<usize>) -> Result<Polynomial, CliError> {
    let text = text.trim();
    if BUILTINS.contains(&text) {
        let f = builtin(text)?;
        if let Some(n) = vars {
            if n != f.n_vars() {
                return Err(CliError::Usage(format!("{text} has {} variables, --vars gave {n}", f.n_vars())));
            }
        }
        return Ok(f);
    }
    let f = match vars {
        Some(n) => parse_polynomial(text, Some(n))?,
        None => {
            let f = parse_polynomial(text, None)?;
            if f.n_vars() < MIN_VARS {
                parse_polynomial(text, Some(MIN_VARS))?
            } else {
                f
            }
        }
    };
    if f.is_zero() {
        return Err(Error::InvalidHypersurface("the zero polynomial".into()).into());
    }
    Ok(f)
}

/// One polynomial per line; blank lines and `#` comments are skipped.
pub fn directions(path: &Path, n_vars: usize) -> Result<Vec<Polynomial>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| parse_polynomial(l, Some(n_vars)).map_err(CliError::from))
        .collect()
}

pub fn claimed(path: &Path) -> Result<ClaimedValues, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}
