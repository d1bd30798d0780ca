//! Append-only JSON-lines store of [`ReportRecord`]s, keyed by
//! `(d1, d2, mode, version)`. See `docs/cache.md` for the line format.

use cmfactor::report::{Mode, ReportRecord, RECORD_VERSION};
use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

pub type Key = (i64, i64, Mode, u32);

pub fn key_of(r: &ReportRecord) -> Key {
    (r.d1, r.d2, r.mode, r.version)
}

pub struct Cache {
    path: PathBuf,
    records: HashMap<Key, ReportRecord>,
    /// Lines that did not parse as a record; left in place, never rewritten.
    pub skipped: usize,
    writer: Mutex<Option<File>>,
}

impl Cache {
    /// Reads every record in `path` (a missing file is an empty cache).
    /// The first record for a key wins.
    pub fn open(path: &Path) -> io::Result<Cache> {
        let mut records = HashMap::new();
        let mut skipped = 0;
        match File::open(path) {
            Ok(f) => {
                for line in BufReader::new(f).lines() {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    match serde_json::from_str::<ReportRecord>(&line) {
                        Ok(r) => {
                            records.entry(key_of(&r)).or_insert(r);
                        }
                        Err(_) => skipped += 1,
                    }
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(Cache { path: path.to_path_buf(), records, skipped, writer: Mutex::new(None) })
    }

    pub fn get(&self, d1: i64, d2: i64, mode: Mode) -> Option<&ReportRecord> {
        self.records.get(&(d1, d2, mode, RECORD_VERSION))
    }

    /// Appends one line; safe to call from worker threads.
    pub fn append(&self, r: &ReportRecord) -> io::Result<()> {
        let line = serde_json::to_string(r).map_err(io::Error::other)?;
        let mut w = self.writer.lock().expect("cache writer poisoned");
        if w.is_none() {
            *w = Some(OpenOptions::new().create(true).append(true).open(&self.path)?);
        }
        let f = w.as_mut().expect("opened above");
        writeln!(f, "{line}")?;
        f.flush()
    }
}
