//! Deterministic CSV and JSON artifact writers.
//!
//! CSVs use `,` delimiters, `.` decimals, LF line endings, and shortest
//! round-trip float formatting, so a fixed config reproduces byte-identical
//! files.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::error::Result;

/// Writes one table; every row must match the header arity.
pub fn write_csv(path: &Path, header: &str, rows: &[Vec<f64>]) -> Result<()> {
    let cols = header.split(',').count();
    let mut text = String::with_capacity(rows.len() * 32 + header.len() + 1);
    text.push_str(header);
    text.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), cols, "row arity must match `{header}`");
        for (i, x) in row.iter().enumerate() {
            if i > 0 {
                text.push(',');
            }
            let _ = write!(text, "{x}");
        }
        text.push('\n');
    }
    atomic_write(path, text.as_bytes())
}

/// Pretty-printed JSON with a trailing newline.
pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("json serialization is infallible");
    bytes.push(b'\n');
    atomic_write(path, &bytes)
}

fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Short deterministic tag of the run parameters, used in file names so
/// artifacts from different configs never collide.
pub fn param_hash(provenance: &serde_json::Value) -> String {
    // FNV-1a, 64-bit.
    let canonical = provenance.to_string();
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in canonical.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")[..8].to_string()
}

/// `<stem>_<family>_<hash>.csv` inside the output directory.
pub fn artifact_path(
    out_dir: &Path,
    stem: &str,
    family_label: &str,
    hash: &str,
    ext: &str,
) -> PathBuf {
    out_dir.join(format!("{stem}_{family_label}_{hash}.{ext}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout_is_stable() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        write_csv(&path, "t,q,p", &[vec![1.0, 0.5, -0.25], vec![2.0, 0.1, 0.0]]).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "t,q,p\n1,0.5,-0.25\n2,0.1,0\n");
    }

    #[test]
    fn rewrites_are_bit_identical() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let rows = vec![vec![0.1 + 0.2, std::f64::consts::PI]];
        write_csv(&path, "a,b", &rows).unwrap();
        let first = std::fs::read(&path).unwrap();
        write_csv(&path, "a,b", &rows).unwrap();
        assert_eq!(first, std::fs::read(&path).unwrap());
    }

    #[test]
    fn hash_distinguishes_configs() {
        let a = param_hash(&serde_json::json!({"m0": 1.0}));
        let b = param_hash(&serde_json::json!({"m0": 2.0}));
        assert_ne!(a, b);
        assert_eq!(a.len(), 8);
        assert_eq!(a, param_hash(&serde_json::json!({"m0": 1.0})));
    }
}
