//! CSV head-to-head datasets.
//!
//! Header `player_a,player_b,wins_a,wins_b`, one row per unordered pair.

use std::collections::{BTreeSet, HashSet};
use std::io::Read;
use std::path::Path;

use crate::error::{PcmError, Result};
use crate::pcm::HeadToHead;

pub const HEADER: [&str; 4] = ["player_a", "player_b", "wins_a", "wins_b"];

const ATP_TOP25: &str = include_str!("../data/atp_top25.csv");

/// Head-to-head records of the 25 players who were ATP #1 between 1973 and
/// 2013 (158 pairs).
pub fn atp_fixture() -> Vec<HeadToHead> {
    parse_dataset(ATP_TOP25.as_bytes()).expect("bundled fixture parses")
}

pub fn atp_fixture_csv() -> &'static str {
    ATP_TOP25
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<Vec<HeadToHead>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| PcmError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_dataset(file)
}

pub fn parse_dataset(reader: impl Read) -> Result<Vec<HeadToHead>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (idx, row) in rdr.records().enumerate() {
        let line = idx + 1;
        let row = row.map_err(|e| PcmError::Parse { line, message: e.to_string() })?;
        if idx == 0 {
            if row.iter().ne(HEADER) {
                return Err(PcmError::Parse {
                    line,
                    message: format!("expected header `{}`", HEADER.join(",")),
                });
            }
            continue;
        }
        if row.len() == 1 && row[0].is_empty() {
            continue;
        }
        if row.len() != 4 {
            return Err(PcmError::Parse {
                line,
                message: format!("expected 4 fields, found {}", row.len()),
            });
        }
        let count = |s: &str| -> Result<u32> {
            let v: i64 = s.parse().map_err(|_| PcmError::Parse {
                line,
                message: format!("`{s}` is not an integer"),
            })?;
            if v < 0 {
                return Err(PcmError::NegativeCount { line });
            }
            u32::try_from(v).map_err(|_| PcmError::Parse { line, message: format!("count {v} too large") })
        };
        let (a, b) = (&row[0], &row[1]);
        if a.is_empty() || b.is_empty() {
            return Err(PcmError::Parse { line, message: "empty player name".into() });
        }
        let record = HeadToHead {
            player_a: a.to_string(),
            player_b: b.to_string(),
            wins_a: count(&row[2])?,
            wins_b: count(&row[3])?,
        };
        record
            .validate()
            .map_err(|e| PcmError::Parse { line, message: e.to_string() })?;
        let key = if a < b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) };
        if !seen.insert(key) {
            return Err(PcmError::DuplicatePair { a: a.to_string(), b: b.to_string() });
        }
        out.push(record);
    }
    Ok(out)
}

pub fn dataset_to_csv(records: &[HeadToHead]) -> String {
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    wtr.write_record(HEADER).expect("in-memory write");
    for r in records {
        wtr.write_record([
            r.player_a.as_str(),
            r.player_b.as_str(),
            &r.wins_a.to_string(),
            &r.wins_b.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

pub fn save_dataset(records: &[HeadToHead], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, dataset_to_csv(records)).map_err(|source| PcmError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Every player in `records`, sorted.
pub fn labels_of(records: &[HeadToHead]) -> Vec<String> {
    records
        .iter()
        .flat_map(|r| [r.player_a.clone(), r.player_b.clone()])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}
