//! Parsing sets and multisets from the command line.

use std::path::Path;

use crate::error::{Error, Result};
use crate::ring::{Modulus, ResidueMultiset, ResidueSet};

/// Accepts a JSON literal `{"n": .., "elements": [..]}`, the inline form
/// `N:a1,a2,...`, or a path to a file holding the JSON literal.
pub fn parse_set(arg: &str) -> Result<ResidueSet> {
    let text = arg.trim();
    if text.starts_with('{') {
        return Ok(serde_json::from_str(text)?);
    }
    if let Some((n, rest)) = text.split_once(':') {
        if !n.is_empty() && n.chars().all(|c| c.is_ascii_digit()) {
            return parse_inline(n, rest);
        }
    }
    let path = Path::new(text);
    if path.exists() {
        let body = std::fs::read_to_string(path)?;
        return Ok(serde_json::from_str(body.trim())?);
    }
    Err(Error::Parse(format!(
        "expected a JSON set, N:a1,a2,..., or a file path; got {arg:?}"
    )))
}

fn parse_inline(n: &str, rest: &str) -> Result<ResidueSet> {
    let n: u64 = n
        .parse()
        .map_err(|e| Error::Parse(format!("modulus {n:?}: {e}")))?;
    let m = Modulus::new(n)?;
    let elements = rest
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|e| Error::Parse(format!("element {s:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    ResidueSet::new(m, elements)
}

/// Accepts `{"n": .., "counts": [..]}` or a path to a file holding it.
pub fn parse_multiset(arg: &str) -> Result<ResidueMultiset> {
    let text = arg.trim();
    if text.starts_with('{') {
        return Ok(serde_json::from_str(text)?);
    }
    let path = Path::new(text);
    if path.exists() {
        let body = std::fs::read_to_string(path)?;
        return Ok(serde_json::from_str(body.trim())?);
    }
    Err(Error::Parse(format!(
        "expected a JSON multiset or a file path; got {arg:?}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        let want = ResidueSet::new(Modulus::new(12).unwrap(), [0, 6]).unwrap();
        assert_eq!(
            parse_set(r#"{"n": 12, "elements": [0, 18]}"#).unwrap(),
            want
        );
        assert_eq!(parse_set("12:0,6").unwrap(), want);
        assert_eq!(parse_set(" 12: 6, 0 ").unwrap(), want);
        assert!(parse_set("12:0,12").is_err());
        assert!(parse_set("0:1").is_err());
        assert!(parse_set("nonsense").is_err());
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("a.json");
        std::fs::write(&f, r#"{"n": 12, "elements": [6, 0]}"#).unwrap();
        assert_eq!(parse_set(f.to_str().unwrap()).unwrap(), want);
    }

    #[test]
    fn multisets() {
        let ms = parse_multiset(r#"{"n": 3, "counts": [1, 1, 1]}"#).unwrap();
        assert_eq!(ms.mass(), 3);
        assert!(parse_multiset(r#"{"n": 3, "counts": [1, 1]}"#).is_err());
    }
}
