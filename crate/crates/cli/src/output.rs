//! Deterministic output helpers: 17-significant-digit floats for CSV,
//! '.' decimal separator, no locale, stdout or file sink.

use std::io::Write;
use std::path::PathBuf;

/// A float with 17 significant digits; round-trips exactly.
pub fn fmt17(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

pub fn rows_to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = String::new();
    s.push_str(&header.join(","));
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

/// Write to `--out` or stdout, always ending with a newline.
pub fn emit(out: &Option<PathBuf>, payload: &str) -> anyhow::Result<()> {
    let tail = if payload.ends_with('\n') { "" } else { "\n" };
    match out {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            write!(f, "{payload}{tail}")?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write!(lock, "{payload}{tail}")?;
        }
    }
    Ok(())
}
