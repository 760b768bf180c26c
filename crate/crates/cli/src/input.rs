use std::fs;
use std::path::Path;

use mdrkit::construct::{HermitianPencil, PencilJson};
use mdrkit::quadform::{PolynomialJson, QuadraticPolynomial};

use crate::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Parses a polynomial given inline or as a file holding either the JSON
/// form or the text grammar, then scales it to constant term 1.
pub fn load_polynomial(
    inline: Option<&str>,
    file: Option<&Path>,
    nvars: Option<usize>,
) -> Result<QuadraticPolynomial, CliError> {
    let f = match (inline, file) {
        (Some(text), _) => QuadraticPolynomial::parse(text, nvars)?,
        (None, Some(path)) => polynomial_from_str(&read(path)?, nvars)?,
        (None, None) => return Err(CliError::input("no polynomial given (use -f or --poly-file)")),
    };
    Ok(f.normalize()?)
}

fn polynomial_from_str(text: &str, nvars: Option<usize>) -> Result<QuadraticPolynomial, CliError> {
    if !text.trim_start().starts_with('{') {
        return Ok(QuadraticPolynomial::parse(text.trim(), nvars)?);
    }
    let json: PolynomialJson =
        serde_json::from_str(text).map_err(|e| CliError::input(format!("malformed polynomial JSON: {e}")))?;
    let f = QuadraticPolynomial::try_from(json)?;
    if let Some(n) = nvars {
        if n != f.n() {
            return Err(mdrkit::Error::DimensionMismatch { expected: n, found: f.n() }.into());
        }
    }
    Ok(f)
}

pub fn load_pencil(path: &Path) -> Result<HermitianPencil, CliError> {
    let json: PencilJson = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::input(format!("{}: malformed pencil JSON: {e}", path.display())))?;
    Ok(HermitianPencil::try_from(json)?)
}

/// Reads `(1,2),(3,4)`; whitespace is ignored.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    let bad = || CliError::input(format!("cannot read pairing {text:?}; expected e.g. (1,2),(3,4)"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Ok(Vec::new());
    }
    let mut pairs = Vec::new();
    for (k, chunk) in compact.split(')').enumerate() {
        if chunk.is_empty() {
            continue;
        }
        let chunk = if k == 0 { chunk } else { chunk.strip_prefix(',').ok_or_else(bad)? };
        let inner = chunk.strip_prefix('(').ok_or_else(bad)?;
        let (p, q) = inner.split_once(',').ok_or_else(bad)?;
        pairs.push((p.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?));
    }
    if !compact.ends_with(')') {
        return Err(bad());
    }
    Ok(pairs)
}
