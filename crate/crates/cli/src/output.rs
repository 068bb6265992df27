//! Deterministic CSV output: `%.17g`-style numbers, LF line endings and a
//! leading `#` provenance line.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

/// `x` as C's `printf("%.17g", x)` would print it.
pub fn g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    const P: i32 = 17;
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..P).contains(&exp) {
        let decimals = (P - 1 - exp) as usize;
        strip_zeros(format!("{x:.decimals$}"))
    } else {
        let m = strip_zeros(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn strip_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// A CSV table assembled in memory.
pub struct Table {
    text: String,
}

impl Table {
    pub fn new(provenance: &str, header: &[String]) -> Self {
        let mut text = String::new();
        writeln!(text, "# {provenance}").unwrap();
        writeln!(text, "{}", header.join(",")).unwrap();
        Self { text }
    }

    pub fn row(&mut self, values: &[f64]) {
        let cells: Vec<String> = values.iter().map(|&v| g17(v)).collect();
        writeln!(self.text, "{}", cells.join(",")).unwrap();
    }

    pub fn raw_row(&mut self, cells: &[&str]) {
        writeln!(self.text, "{}", cells.join(",")).unwrap();
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }
}

/// Writes to `path`, or to stdout when none is given.
pub fn emit(text: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
