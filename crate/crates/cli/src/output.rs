//! Deterministic artifact writing: fixed float formatting (12 significant
//! digits) and write-temp-then-rename so partial outputs never land.

use std::io::Write;
use std::path::Path;

/// Fixed 12-significant-digit rendering, reproducible across platforms.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn write_atomic(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(content.as_bytes())?;
    tmp.persist(path)?;
    Ok(())
}

/// Write to the path when given, else to stdout.
pub fn emit(path: Option<&Path>, content: &str) -> std::io::Result<()> {
    match path {
        Some(p) => write_atomic(p, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_is_stable() {
        assert_eq!(sig12(0.25), "2.50000000000e-1");
        assert_eq!(sig12(-1.0), "-1.00000000000e0");
        assert_eq!(sig12(1456.0), "1.45600000000e3");
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.csv");
        write_atomic(&path, "a\n").unwrap();
        write_atomic(&path, "b\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "b\n");
    }
}
