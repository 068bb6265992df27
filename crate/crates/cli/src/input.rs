//! Spectrum files: header `omega,eps_real,eps_imag`, `#` comments.

use fracrelax::fitting::SusceptibilitySample;
use std::path::Path;

const HEADER: [&str; 3] = ["omega", "eps_real", "eps_imag"];

/// Parses a spectrum; the error names the offending line.
pub fn read_spectrum(path: &Path) -> Result<Vec<SusceptibilitySample>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_spectrum(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_spectrum(text: &str) -> Result<Vec<SusceptibilitySample>, String> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .has_headers(true)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| format!("unreadable header: {e}"))?
        .clone();
    if header.is_empty() {
        return Err("empty file: expected header omega,eps_real,eps_imag".into());
    }
    if header.iter().collect::<Vec<_>>() != HEADER {
        let line = reader.position().line().saturating_sub(1).max(1);
        return Err(format!(
            "line {line}: expected header omega,eps_real,eps_imag, found '{}'",
            header.iter().collect::<Vec<_>>().join(",")
        ));
    }
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| match e.position() {
            Some(p) => format!("line {}: {e}", p.line()),
            None => e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 3 {
            return Err(format!(
                "line {line}: expected 3 fields, found {}",
                record.len()
            ));
        }
        let mut v = [0.0; 3];
        for (slot, (field, name)) in v.iter_mut().zip(record.iter().zip(HEADER)) {
            *slot = field
                .parse()
                .map_err(|_| format!("line {line}: {name} '{field}' is not a number"))?;
        }
        let sample =
            SusceptibilitySample::new(v[0], v[1], v[2]).map_err(|e| format!("line {line}: {e}"))?;
        out.push(sample);
    }
    if out.is_empty() {
        return Err("no data rows".into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_rows() {
        let s = parse_spectrum("# made up\nomega,eps_real,eps_imag\n0.1, 9.5, 0.5\n# mid\n1,6,4\n")
            .unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!((s[1].omega, s[1].eps_real, s[1].eps_imag), (1.0, 6.0, 4.0));
    }

    #[test]
    fn names_the_bad_line() {
        let e = parse_spectrum("omega,eps_real,eps_imag\n1,2,3\n2,x,3\n").unwrap_err();
        assert!(e.starts_with("line 3:"), "{e}");
        let e = parse_spectrum("omega,eps_real,eps_imag\n1,2,3\n2,3\n").unwrap_err();
        assert!(e.starts_with("line 3:"), "{e}");
        let e = parse_spectrum("omega,eps_real,eps_imag\n-1,2,3\n").unwrap_err();
        assert!(e.starts_with("line 2:"), "{e}");
        assert!(parse_spectrum("").is_err());
        assert!(parse_spectrum("omega,eps_real,eps_imag\n").is_err());
        assert!(parse_spectrum("w,re,im\n1,2,3\n")
            .unwrap_err()
            .contains("header"));
    }
}
