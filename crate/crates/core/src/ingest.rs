//! Parsing of the two input shapes and the cleanup applied before graph
//! construction.
//!
//! * Startup table: one row per startup with `;`-separated founder and
//!   investor lists, as exported from the crawl.
//! * Edge list: `startup_name,investor_name`, one pair per row.
//!
//! Both are delimiter-separated with standard `"` quoting. The delimiter is
//! sniffed from the header line (tab if present, else comma). Names containing
//! `;` cannot be represented inside list cells.

use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::IngestError;

pub const COL_STARTUP: &str = "startup_name";
pub const COL_INVESTORS: &str = "investors/_text";
pub const COL_CATEGORY: &str = "category/_text";
pub const COL_DESCRIPTION: &str = "description";
pub const COL_LOCATION: &str = "location/_text";
pub const COL_FOUNDERS: &str = "founder/_text";
pub const COL_INVESTOR: &str = "investor_name";

/// Intra-cell separator for list-valued columns.
pub const LIST_SEPARATOR: char = ';';

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StartupRecord {
    pub startup_name: String,
    pub category: String,
    pub description: String,
    pub location: String,
    pub founders: Vec<String>,
    pub investors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgePair {
    pub startup_name: String,
    pub investor_name: String,
}

impl EdgePair {
    pub fn new(startup: impl Into<String>, investor: impl Into<String>) -> Self {
        EdgePair {
            startup_name: startup.into(),
            investor_name: investor.into(),
        }
    }

    pub fn as_tuple(&self) -> (&str, &str) {
        (&self.startup_name, &self.investor_name)
    }
}

/// Auditable counts for one cleanup stage. The unit is records or pairs
/// depending on the stage that produced it.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreprocessLog {
    pub input_count: usize,
    pub dropped_excluded: usize,
    pub dropped_no_investor: usize,
    pub dropped_duplicate: usize,
    pub dropped_self_loop: usize,
    pub output_count: usize,
}

impl PreprocessLog {
    pub fn dropped(&self) -> usize {
        self.dropped_excluded + self.dropped_no_investor + self.dropped_duplicate + self.dropped_self_loop
    }

    /// `input_count = output_count + Σ dropped`.
    pub fn reconciles(&self) -> bool {
        self.input_count == self.output_count + self.dropped()
    }
}

impl fmt::Display for PreprocessLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "in={} out={} excluded={} no_investor={} duplicate={} self_loop={}",
            self.input_count,
            self.output_count,
            self.dropped_excluded,
            self.dropped_no_investor,
            self.dropped_duplicate,
            self.dropped_self_loop
        )
    }
}

/// Labels to drop before graph construction, e.g. known fraudulent startups.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExclusionList {
    labels: HashSet<String>,
}

impl ExclusionList {
    /// One label per line; blank lines and lines starting with `#` are ignored.
    pub fn parse<R: BufRead>(reader: R) -> std::io::Result<Self> {
        let mut labels = HashSet::new();
        for line in reader.lines() {
            let line = line?;
            let label = line.trim();
            if label.is_empty() || label.starts_with('#') {
                continue;
            }
            labels.insert(label.to_owned());
        }
        Ok(ExclusionList { labels })
    }

    pub fn from_path(path: &Path) -> Result<Self, IngestError> {
        let file = File::open(path).map_err(|source| IngestError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(BufReader::new(file)).map_err(|source| IngestError::Io {
            path: path.to_owned(),
            source,
        })
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.contains(label.trim())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

impl<S: Into<String>> FromIterator<S> for ExclusionList {
    fn from_iter<T: IntoIterator<Item = S>>(iter: T) -> Self {
        ExclusionList {
            labels: iter.into_iter().map(|s| s.into().trim().to_owned()).collect(),
        }
    }
}

fn sniff_delimiter<R: BufRead>(reader: &mut R) -> std::io::Result<u8> {
    let buf = reader.fill_buf()?;
    let header = buf.split(|&b| b == b'\n').next().unwrap_or(&[]);
    Ok(if header.contains(&b'\t') { b'\t' } else { b',' })
}

struct Table<R> {
    reader: csv::Reader<R>,
    columns: Vec<String>,
}

impl<R: BufRead> Table<R> {
    fn open(mut stream: R) -> Result<Self, IngestError> {
        let delimiter = sniff_delimiter(&mut stream).map_err(|source| IngestError::Io {
            path: "<input>".into(),
            source,
        })?;
        let mut reader = csv::ReaderBuilder::new()
            .delimiter(delimiter)
            .has_headers(true)
            .flexible(true)
            .from_reader(stream);
        let header = reader.byte_headers()?.clone();
        let columns = header
            .iter()
            .map(|f| {
                std::str::from_utf8(f)
                    .map(|s| s.trim().trim_start_matches('\u{feff}').to_owned())
                    .map_err(|_| IngestError::Encoding { line: 1 })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Table { reader, columns })
    }

    fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    fn require(&self, name: &str) -> Result<usize, IngestError> {
        self.column(name)
            .ok_or_else(|| IngestError::MissingColumn(name.to_owned()))
    }

    /// Visits each data row as trimmed UTF-8 fields with its 1-based line number.
    fn for_each_row(
        &mut self,
        mut visit: impl FnMut(u64, &[&str]) -> Result<(), IngestError>,
    ) -> Result<(), IngestError> {
        let expected = self.columns.len();
        let mut record = csv::ByteRecord::new();
        while self.reader.read_byte_record(&mut record)? {
            let line = record.position().map_or(0, |p| p.line());
            if record.len() != expected {
                return Err(IngestError::MalformedRow {
                    line,
                    expected,
                    found: record.len(),
                });
            }
            let mut fields: Vec<&str> = Vec::with_capacity(expected);
            for f in record.iter() {
                let s = std::str::from_utf8(f).map_err(|_| IngestError::Encoding { line })?;
                fields.push(s.trim());
            }
            visit(line, &fields)?;
        }
        Ok(())
    }
}

fn split_list(cell: &str) -> Vec<String> {
    cell.split(LIST_SEPARATOR)
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
        .collect()
}

/// Parses a startup table. Required columns: `startup_name`, `investors/_text`.
pub fn parse_startup_table<R: BufRead>(stream: R) -> Result<Vec<StartupRecord>, IngestError> {
    let mut table = Table::open(stream)?;
    let name = table.require(COL_STARTUP)?;
    let investors = table.require(COL_INVESTORS)?;
    let category = table.column(COL_CATEGORY);
    let description = table.column(COL_DESCRIPTION);
    let location = table.column(COL_LOCATION);
    let founders = table.column(COL_FOUNDERS);

    let optional = |fields: &[&str], col: Option<usize>| col.map_or(String::new(), |i| fields[i].to_owned());
    let mut out = Vec::new();
    table.for_each_row(|line, fields| {
        if fields[name].is_empty() {
            return Err(IngestError::EmptyField {
                line,
                column: COL_STARTUP.to_owned(),
            });
        }
        out.push(StartupRecord {
            startup_name: fields[name].to_owned(),
            category: optional(fields, category),
            description: optional(fields, description),
            location: optional(fields, location),
            founders: founders.map_or_else(Vec::new, |i| split_list(fields[i])),
            investors: split_list(fields[investors]),
        });
        Ok(())
    })?;
    Ok(out)
}

/// Parses a `startup_name,investor_name` edge list.
pub fn parse_edge_list<R: BufRead>(stream: R) -> Result<Vec<EdgePair>, IngestError> {
    let mut table = Table::open(stream)?;
    let startup = table.require(COL_STARTUP)?;
    let investor = table.require(COL_INVESTOR)?;
    let mut out = Vec::new();
    table.for_each_row(|line, fields| {
        for (col, name) in [(startup, COL_STARTUP), (investor, COL_INVESTOR)] {
            if fields[col].is_empty() {
                return Err(IngestError::EmptyField {
                    line,
                    column: name.to_owned(),
                });
            }
        }
        out.push(EdgePair::new(fields[startup], fields[investor]));
        Ok(())
    })?;
    Ok(out)
}

/// Writes pairs as a `startup_name,investor_name` CSV with a trailing newline.
pub fn write_edge_list<W: Write>(writer: W, pairs: &[EdgePair]) -> Result<(), IngestError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    w.write_record([COL_STARTUP, COL_INVESTOR])?;
    for p in pairs {
        w.write_record([p.startup_name.as_str(), p.investor_name.as_str()])?;
    }
    w.flush().map_err(|source| IngestError::Io {
        path: "<output>".into(),
        source,
    })?;
    Ok(())
}

/// Drops investor-less startups and repeated startup names (first occurrence wins).
pub fn preprocess(records: Vec<StartupRecord>) -> (Vec<StartupRecord>, PreprocessLog) {
    preprocess_with(records, &ExclusionList::default())
}

/// [`preprocess`] that additionally drops startups named in `exclusions`.
///
/// Order: exclusion, then empty investor list, then duplicate name. Dropping
/// empty rows before dedup lets a later funded row replace an unfunded one.
pub fn preprocess_with(records: Vec<StartupRecord>, exclusions: &ExclusionList) -> (Vec<StartupRecord>, PreprocessLog) {
    let mut log = PreprocessLog {
        input_count: records.len(),
        ..Default::default()
    };
    let mut seen = HashSet::new();
    let mut kept = Vec::with_capacity(records.len());
    for r in records {
        if exclusions.contains(&r.startup_name) {
            log.dropped_excluded += 1;
        } else if r.investors.is_empty() {
            log.dropped_no_investor += 1;
        } else if !seen.insert(r.startup_name.clone()) {
            log.dropped_duplicate += 1;
        } else {
            kept.push(r);
        }
    }
    log.output_count = kept.len();
    (kept, log)
}

/// Expands each record into one pair per investor. Pairs whose investor is
/// the startup itself are dropped and counted; repeated pairs are kept so the
/// graph stage can count the collapse.
pub fn records_to_edge_list(records: &[StartupRecord]) -> (Vec<EdgePair>, PreprocessLog) {
    let mut log = PreprocessLog::default();
    let mut pairs = Vec::new();
    for r in records {
        for inv in &r.investors {
            log.input_count += 1;
            if inv == &r.startup_name {
                log.dropped_self_loop += 1;
            } else {
                pairs.push(EdgePair::new(r.startup_name.clone(), inv.clone()));
            }
        }
    }
    log.output_count = pairs.len();
    (pairs, log)
}

/// Pair-level cleanup for edge lists: drops pairs touching an excluded label
/// and self-loops, counting both.
pub fn clean_pairs(pairs: Vec<EdgePair>, exclusions: &ExclusionList) -> (Vec<EdgePair>, PreprocessLog) {
    let mut log = PreprocessLog {
        input_count: pairs.len(),
        ..Default::default()
    };
    let kept: Vec<EdgePair> = pairs
        .into_iter()
        .filter(|p| {
            if exclusions.contains(&p.startup_name) || exclusions.contains(&p.investor_name) {
                log.dropped_excluded += 1;
                false
            } else if p.startup_name.trim() == p.investor_name.trim() {
                log.dropped_self_loop += 1;
                false
            } else {
                true
            }
        })
        .collect();
    log.output_count = kept.len();
    (kept, log)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    /// Startup table with list-valued investor cells.
    Table,
    /// Two-column startup/investor edge list.
    Edgelist,
}

/// Result of reading an input file down to clean pairs.
#[derive(Debug, Clone)]
pub struct Ingested {
    pub pairs: Vec<EdgePair>,
    /// Record-level log; `None` for edge-list input.
    pub record_log: Option<PreprocessLog>,
    /// Pair-level log. `dropped_duplicate` and `output_count` are settled by
    /// [`Ingested::settle_duplicates`] once the graph is built.
    pub pair_log: PreprocessLog,
}

impl Ingested {
    /// Accounts for repeated pairs collapsed by graph construction.
    pub fn settle_duplicates(&mut self, edge_count: usize) {
        let emitted = self.pair_log.output_count;
        self.pair_log.dropped_duplicate += emitted.saturating_sub(edge_count);
        self.pair_log.output_count = edge_count.min(emitted);
    }
}

/// Reads and cleans an input stream of the given format.
pub fn ingest<R: BufRead>(stream: R, format: InputFormat, exclusions: &ExclusionList) -> Result<Ingested, IngestError> {
    match format {
        InputFormat::Table => {
            let records = parse_startup_table(stream)?;
            let (records, record_log) = preprocess_with(records, exclusions);
            let (pairs, expand_log) = records_to_edge_list(&records);
            let (pairs, mut pair_log) = clean_pairs(pairs, exclusions);
            pair_log.input_count = expand_log.input_count;
            pair_log.dropped_self_loop += expand_log.dropped_self_loop;
            Ok(Ingested {
                pairs,
                record_log: Some(record_log),
                pair_log,
            })
        }
        InputFormat::Edgelist => {
            let pairs = parse_edge_list(stream)?;
            let (pairs, pair_log) = clean_pairs(pairs, exclusions);
            Ok(Ingested {
                pairs,
                record_log: None,
                pair_log,
            })
        }
    }
}

pub fn ingest_path(path: &Path, format: InputFormat, exclusions: &ExclusionList) -> Result<Ingested, IngestError> {
    let file = File::open(path).map_err(|source| IngestError::Io {
        path: path.to_owned(),
        source,
    })?;
    ingest(BufReader::new(file), format, exclusions)
}
