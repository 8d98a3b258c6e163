//! Input files: either cycle notation with an optional `n=<int>` header and
//! `#` comment lines, or a JSON record `{"size", "cycles", "n"?}`.

use serde::{Deserialize, Serialize};

use crate::filling::{validate, FillingError, FillingPermutation};
use crate::perm::{PermRecord, Permutation};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingRecord {
    pub size: usize,
    pub cycles: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

impl FillingRecord {
    pub fn from_filling(fp: &FillingPermutation) -> Self {
        let PermRecord { size, cycles } = fp.sigma().to_record();
        FillingRecord {
            size,
            cycles,
            n: Some(fp.n()),
        }
    }
}

/// A parsed but not yet validated input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Input {
    pub n: Option<usize>,
    pub sigma: Permutation,
}

impl Input {
    pub fn validate(self) -> Result<FillingPermutation, FillingError> {
        validate(self.sigma, self.n)
    }
}

pub fn parse_input(text: &str) -> Result<Input, Error> {
    if text.trim_start().starts_with('{') {
        let record: FillingRecord = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if let Some(n) = record.n {
            if 4 * n != record.size {
                return Err(FillingError::SizeMismatch { size: record.size, n }.into());
            }
        }
        let sigma = Permutation::from_cycles(record.size, &record.cycles)?;
        return Ok(Input { n: record.n, sigma });
    }

    let mut n = None;
    let mut body = String::new();
    let mut header_allowed = true;
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.starts_with('#') {
            continue;
        }
        if header_allowed && !trimmed.is_empty() {
            header_allowed = false;
            if let Some(value) = trimmed.strip_prefix("n=") {
                let value: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::Format(format!("bad header {trimmed:?}")))?;
                if value == 0 {
                    return Err(FillingError::ZeroIntersections.into());
                }
                n = Some(value);
                continue;
            }
        }
        body.push_str(line);
        body.push('\n');
    }
    let sigma = match n {
        Some(n) => Permutation::parse_cycles(&body, 4 * n)?,
        None => {
            let cycles = Permutation::parse_cycle_list(&body)?;
            let size = cycles.iter().flatten().copied().max().unwrap_or(0);
            if size == 0 {
                return Err(Error::Format("no symbols and no n= header".to_string()));
            }
            Permutation::from_cycles(size, &cycles)?
        }
    };
    Ok(Input { n, sigma })
}

pub fn read_input(path: &std::path::Path) -> Result<Input, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_input(&text)
}

pub fn format_file(fp: &FillingPermutation) -> String {
    format!("n={}\n{}\n", fp.n(), fp.sigma())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::perm::PermError;

    #[test]
    fn header_and_comments() {
        let text = format!("# a comment\nn=6\n# another\n{}\n", fixtures::ZETA);
        let input = parse_input(&text).unwrap();
        assert_eq!(input.n, Some(6));
        assert_eq!(input.validate().unwrap(), fixtures::zeta());
    }

    #[test]
    fn size_inferred_without_header() {
        let input = parse_input("(1,2,3,4)").unwrap();
        assert_eq!(input.sigma.size(), 4);
        assert_eq!(input.n, None);
    }

    #[test]
    fn json_record() {
        let rec = FillingRecord::from_filling(&fixtures::sigma_f());
        let text = serde_json::to_string(&rec).unwrap();
        let input = parse_input(&text).unwrap();
        assert_eq!(input.validate().unwrap(), fixtures::sigma_f());
    }

    #[test]
    fn header_mismatch_is_reported() {
        assert!(matches!(
            parse_input("n=2\n(1,9)"),
            Err(Error::Perm(PermError::OutOfRange { symbol: 9, .. }))
        ));
        assert!(matches!(parse_input("n=x\n(1,2)"), Err(Error::Format(_))));
    }
}
