//! Append-only text cache of compiled words.
//!
//! One record per line, tab separated:
//! `target_name  tags  mode  letters  distance  phase_re  phase_im`.
//! Letters are space-separated signed integers in mode units; `tags` is a
//! free-form label such as `n=3,k=7` or `-`.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use super::{CompiledWeave, Mode};
use crate::error::{Error, Result};
use crate::knot_theory::BraidWord;
use crate::linalg::Complex64;

#[derive(Clone, Debug)]
pub struct BraidCache {
    path: PathBuf,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CacheRecord {
    pub tags: String,
    pub weave: CompiledWeave,
}

fn parse_line(line: &str) -> Result<CacheRecord> {
    let f: Vec<&str> = line.split('\t').collect();
    if f.len() != 7 {
        return Err(Error::Parse(format!("cache record needs 7 fields: {line}")));
    }
    let num = |s: &str| s.parse::<f64>().map_err(|e| Error::Parse(format!("{s}: {e}")));
    let letters = f[3]
        .split_whitespace()
        .map(|t| t.parse::<i32>().map_err(|e| Error::Parse(format!("{t}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(CacheRecord {
        tags: f[1].to_string(),
        weave: CompiledWeave {
            target_name: f[0].to_string(),
            mode: f[2].parse::<Mode>()?,
            word: BraidWord::new(3, letters)?,
            distance: num(f[4])?,
            phase: Complex64::new(num(f[5])?, num(f[6])?),
        },
    })
}

fn format_record(r: &CacheRecord) -> String {
    let w = &r.weave;
    let letters: Vec<String> = w.word.letters().iter().map(i32::to_string).collect();
    let tags = if r.tags.is_empty() { "-" } else { &r.tags };
    format!(
        "{}\t{}\t{}\t{}\t{:.17e}\t{:.17e}\t{:.17e}\n",
        w.target_name,
        tags,
        w.mode,
        letters.join(" "),
        w.distance,
        w.phase.re,
        w.phase.im
    )
}

impl BraidCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// All records in file order; a missing file is an empty cache.
    pub fn load(&self) -> Result<Vec<CacheRecord>> {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')).map(parse_line).collect()
    }

    /// Writes one record with a single append.
    pub fn append(&self, record: &CacheRecord) -> Result<()> {
        self.append_all(std::slice::from_ref(record))
    }

    /// Writes several records with a single append.
    pub fn append_all(&self, records: &[CacheRecord]) -> Result<()> {
        if let Some(dir) = self.path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir)?;
            }
        }
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let text: String = records.iter().map(format_record).collect();
        f.write_all(text.as_bytes())?;
        Ok(())
    }

    /// Lowest-distance record for `target_name` within `max_distance`.
    pub fn lookup(&self, target_name: &str, max_distance: f64) -> Result<Option<CompiledWeave>> {
        Ok(self
            .load()?
            .into_iter()
            .map(|r| r.weave)
            .filter(|w| w.target_name == target_name && w.distance <= max_distance)
            .min_by(|a, b| a.distance.total_cmp(&b.distance).then(a.word.len().cmp(&b.word.len()))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = std::env::temp_dir().join(format!("tqc-cache-{}", std::process::id()));
        let cache = BraidCache::new(dir.join("words.tsv"));
        let _ = fs::remove_file(cache.path());
        assert!(cache.load().unwrap().is_empty());
        let w = CompiledWeave {
            word: BraidWord::new(3, vec![1, -2, 2]).unwrap(),
            mode: Mode::Weave,
            target_name: "hadamard".into(),
            distance: 0.0123,
            phase: Complex64::new(0.6, -0.8),
        };
        let better = CompiledWeave { distance: 0.001, word: BraidWord::new(3, vec![2]).unwrap(), ..w.clone() };
        cache.append(&CacheRecord { tags: String::new(), weave: w.clone() }).unwrap();
        cache.append(&CacheRecord { tags: "n=3,k=7".into(), weave: better.clone() }).unwrap();
        let all = cache.load().unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].weave, w);
        assert_eq!(all[0].tags, "-");
        assert_eq!(cache.lookup("hadamard", 0.1).unwrap(), Some(better));
        assert_eq!(cache.lookup("hadamard", 0.0001).unwrap(), None);
        assert_eq!(cache.lookup("phase", 1.0).unwrap(), None);
        fs::remove_dir_all(dir).unwrap();
    }
}
