//! Distance table for maximal-entanglement codes `[[n,k,d;n-k]]`.
//!
//! Upper bounds come from [`bound_report`]. Lower bounds are the best of the
//! repetition and accumulator families, a database of known codes, and the
//! closure of both under adding an ebit (`n -> n+1`) and demoting a logical
//! pair (`k -> k-1`).

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use rayon::prelude::*;

use crate::bounds::{bound_report, CodeParams, LowerBound, LowerProvenance, UpperProvenance};

/// Default per-cell node budget for the integer programs.
pub const TABLE_NODE_LIMIT: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DbEntry {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub c: usize,
    pub citation: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DbError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for DbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for DbError {}

/// Known codes that are cited rather than constructed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LowerBoundDb {
    pub entries: Vec<DbEntry>,
}

impl LowerBoundDb {
    /// Parses CSV with header `n,k,d,c,citation`; `#` lines are comments.
    pub fn parse(text: &str) -> Result<LowerBoundDb, DbError> {
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header_err = |message: String| DbError { line: 0, message };
        let headers = reader.headers().map_err(|e| header_err(e.to_string()))?;
        if headers.iter().collect::<Vec<_>>() != ["n", "k", "d", "c", "citation"] {
            return Err(header_err(format!("expected header n,k,d,c,citation, got {headers:?}")));
        }
        let mut entries = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| DbError {
                line: e.position().map_or(0, |p| p.line() as usize),
                message: e.to_string(),
            })?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            let err = |message: String| DbError { line, message };
            let num = |i: usize| {
                record[i]
                    .parse::<usize>()
                    .map_err(|e| err(format!("{:?}: {e}", &record[i])))
            };
            let (n, k, d, c) = (num(0)?, num(1)?, num(2)?, num(3)?);
            if k == 0 || k >= n || c != n - k || d == 0 || d > n {
                return Err(err(format!("[[{n},{k},{d};{c}]] is not a maximal-entanglement code")));
            }
            entries.push(DbEntry {
                n,
                k,
                d,
                c,
                citation: record[4].to_string(),
            });
        }
        Ok(LowerBoundDb { entries })
    }
}

fn better(a: &LowerBound, b: &LowerBound) -> bool {
    (a.value, std::cmp::Reverse(a.provenance)) > (b.value, std::cmp::Reverse(b.provenance))
}

/// Family distances in this crate: repetition `[[n,1,n;n-1]]` (odd n) and
/// `[[n,1,n-1;n-1]]` (even n); accumulator `[[n,n-1,2;1]]` (odd n) and
/// `[[n,n-1,1;1]]` (even n).
fn constructed(n: usize, k: usize) -> Option<LowerBound> {
    let odd = n % 2 == 1;
    let (value, family) = if k == 1 {
        (if odd { n } else { n - 1 }, "repetition")
    } else if k == n - 1 {
        (if odd { 2 } else { 1 }, "accumulator")
    } else {
        return None;
    };
    Some(LowerBound {
        value,
        provenance: LowerProvenance::Construction,
        source: format!("{family}({n})"),
    })
}

/// Best lower bound for every `3 <= n <= nmax`, `1 <= k < n`.
pub fn lower_bounds(nmax: usize, db: &LowerBoundDb) -> BTreeMap<(usize, usize), LowerBound> {
    let mut base: BTreeMap<(usize, usize), LowerBound> = BTreeMap::new();
    let offer = |map: &mut BTreeMap<(usize, usize), LowerBound>, key, lb: LowerBound| {
        if map.get(&key).is_none_or(|cur| better(&lb, cur)) {
            map.insert(key, lb);
        }
    };
    for e in &db.entries {
        offer(
            &mut base,
            (e.n, e.k),
            LowerBound {
                value: e.d,
                provenance: LowerProvenance::Transcribed,
                source: e.citation.clone(),
            },
        );
    }
    let mut out = BTreeMap::new();
    for n in 2..=nmax {
        for k in (1..n).rev() {
            let mut best = base.get(&(n, k)).cloned();
            if let Some(c) = constructed(n, k) {
                if best.as_ref().is_none_or(|b| better(&c, b)) {
                    best = Some(c);
                }
            }
            let derived = [(n - 1, k, "ebit"), (n, k + 1, "demote")];
            for (m, j, how) in derived {
                if let Some(src) = out.get(&(m, j)).filter(|_| j < m) {
                    let src: &LowerBound = src;
                    let lb = LowerBound {
                        value: src.value,
                        provenance: LowerProvenance::Theorem8,
                        source: format!("{how} from [[{m},{j},{}]]", src.value),
                    };
                    if best.as_ref().is_none_or(|b| better(&lb, b)) {
                        best = Some(lb);
                    }
                }
            }
            if let Some(b) = best {
                out.insert((n, k), b);
            }
        }
    }
    out.retain(|&(n, _), _| n >= 3);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub k: usize,
    pub c: usize,
    pub lower: Option<LowerBound>,
    pub upper: usize,
    pub upper_provenance: UpperProvenance,
    pub note: Option<String>,
}

/// Rows for `3 <= n <= nmax`, `1 <= k < n`, in `(n, k)` order. Cells run
/// concurrently; each integer program gets `node_limit` nodes, and a cell
/// whose program runs out falls back to the LP relaxation value with a note.
pub fn compute_table(nmax: usize, db: &LowerBoundDb, node_limit: u64) -> Vec<TableRow> {
    let lowers = lower_bounds(nmax, db);
    let cells: Vec<(usize, usize)> = (3..=nmax).flat_map(|n| (1..n).map(move |k| (n, k))).collect();
    cells
        .par_iter()
        .map(|&(n, k)| {
            let params = CodeParams::maximal(n, k).expect("1 <= k < n");
            let lower = lowers.get(&(n, k)).cloned();
            let report = bound_report(params, node_limit, lower.clone());
            let mut note = report.note().map(str::to_string);
            if let Some(l) = &lower {
                if l.value > report.final_upper {
                    note = Some(format!("lower {} exceeds upper {}", l.value, report.final_upper));
                }
            }
            TableRow {
                n,
                k,
                c: n - k,
                lower,
                upper: report.final_upper,
                upper_provenance: report.upper_provenance,
                note,
            }
        })
        .collect()
}

/// CSV with columns `n,k,c,lower,upper,lower_provenance,upper_provenance`.
pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("n,k,c,lower,upper,lower_provenance,upper_provenance\n");
    for r in rows {
        let (lv, lp) = match &r.lower {
            Some(l) => (l.value.to_string(), l.provenance.to_string()),
            None => (String::new(), String::new()),
        };
        writeln!(out, "{},{},{},{},{},{},{}", r.n, r.k, r.c, lv, r.upper, lp, r.upper_provenance).unwrap();
    }
    out
}
