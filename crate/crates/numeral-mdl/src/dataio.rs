//! CSV formats.
//!
//! Systems: header `language,number,tokens` with an optional `family`
//! column, one row per (language, number), tokens separated by spaces.
//! Measures: `system_id,source,prior,irregularity_bits,processing_bits,lexicon_size,avg_morph_complexity`.
//! Pool overrides: `role,value` with role `digit` or `multiplier`.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use numeral_mdl_core::search::AttestedPools;
use numeral_mdl_core::{GrammarParams, MeasureReport, NumberRange, NumeralExpr, NumeralSystem, PriorKind, Source};

pub const MEASURE_HEADER: [&str; 7] =
    ["system_id", "source", "prior", "irregularity_bits", "processing_bits", "lexicon_size", "avg_morph_complexity"];

#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("missing column `{0}`")]
    MissingColumn(&'static str),
    #[error("language `{language}` has no numeral for {number}")]
    MissingNumber { language: String, number: u32 },
    #[error("row {row}: {reason}")]
    BadExpression { row: usize, reason: String },
    #[error("row {row}: {reason}")]
    BadRow { row: usize, reason: String },
}

/// One row of a systems file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemRecord {
    pub language: String,
    pub number: u32,
    pub tokens: String,
    pub family: Option<String>,
}

pub fn read_file(path: &Path) -> Result<Vec<u8>, DataError> {
    fs::read(path).map_err(|source| DataError::Io { path: path.display().to_string(), source })
}

fn column(headers: &csv::StringRecord, name: &'static str) -> Result<usize, DataError> {
    headers.iter().position(|h| h.trim() == name).ok_or(DataError::MissingColumn(name))
}

/// Rows in file order. Row numbers count the header as row 1.
pub fn read_records<R: Read>(reader: R) -> Result<Vec<SystemRecord>, DataError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let (lang, num, tok) = (column(&headers, "language")?, column(&headers, "number")?, column(&headers, "tokens")?);
    let fam = column(&headers, "family").ok();
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row = i + 2;
        let field = |c: usize| rec.get(c).unwrap_or("").to_string();
        let number = field(num).parse().map_err(|_| DataError::BadRow { row, reason: format!("bad number `{}`", field(num)) })?;
        out.push(SystemRecord { language: field(lang), number, tokens: field(tok), family: fam.map(field).filter(|f| !f.is_empty()) });
    }
    Ok(out)
}

/// One system per language, in order of first appearance. Rows outside
/// `range` are ignored.
pub fn read_systems<R: Read>(reader: R, range: NumberRange, source: Source) -> Result<Vec<NumeralSystem>, DataError> {
    let records = read_records(reader)?;
    let mut order: Vec<String> = Vec::new();
    let mut table: BTreeMap<String, BTreeMap<u32, NumeralExpr>> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        let row = i + 2;
        if !range.contains(r.number) {
            continue;
        }
        let expr: NumeralExpr = r.tokens.parse().map_err(|e| DataError::BadExpression { row, reason: format!("`{}`: {e}", r.tokens) })?;
        match expr.evaluate() {
            Ok(v) if v == u64::from(r.number) => {}
            Ok(v) => return Err(DataError::BadExpression { row, reason: format!("`{}` evaluates to {v}, not {}", r.tokens, r.number) }),
            Err(e) => return Err(DataError::BadExpression { row, reason: format!("`{}`: {e}", r.tokens) }),
        }
        let entries = table.entry(r.language.clone()).or_insert_with(|| {
            order.push(r.language.clone());
            BTreeMap::new()
        });
        if entries.insert(r.number, expr).is_some() {
            return Err(DataError::BadRow { row, reason: format!("duplicate numeral for {} in `{}`", r.number, r.language) });
        }
    }
    order
        .into_iter()
        .map(|language| {
            let mut entries = table.remove(&language).unwrap_or_default();
            let list = range
                .iter()
                .map(|n| entries.remove(&n).ok_or_else(|| DataError::MissingNumber { language: language.clone(), number: n }))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(NumeralSystem::new(language, source, range, list).expect("rows were checked one by one"))
        })
        .collect()
}

pub fn load_systems(path: &Path, range: NumberRange) -> Result<Vec<NumeralSystem>, DataError> {
    read_systems(read_file(path)?.as_slice(), range, Source::Natural)
}

pub fn write_systems<W: Write>(writer: W, systems: &[NumeralSystem]) -> Result<(), DataError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
    w.write_record(["language", "number", "tokens"])?;
    for s in systems {
        for (n, e) in s.iter() {
            w.write_record([s.label(), &n.to_string(), &e.to_string()])?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

fn measure_row(r: &MeasureReport) -> [String; 7] {
    [
        r.system_label.clone(),
        r.source.to_string(),
        r.prior.label(),
        format!("{:.6}", r.irregularity_bits),
        format!("{:.6}", r.processing_bits),
        r.lexicon_size.to_string(),
        format!("{:.6}", r.avg_morph_complexity),
    ]
}

/// Rows sorted by system id; ties keep input order.
pub fn write_measures<W: Write>(writer: W, reports: &[MeasureReport]) -> Result<(), DataError> {
    let mut sorted: Vec<&MeasureReport> = reports.iter().collect();
    sorted.sort_by(|a, b| a.system_label.cmp(&b.system_label));
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
    w.write_record(MEASURE_HEADER)?;
    for r in sorted {
        w.write_record(measure_row(r))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_measures<R: Read>(reader: R) -> Result<Vec<MeasureReport>, DataError> {
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr.headers()?.clone();
    let cols = MEASURE_HEADER.map(|h| headers.iter().position(|x| x == h));
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row = i + 2;
        let get =
            |k: usize| -> Result<&str, DataError> { cols[k].and_then(|c| rec.get(c)).ok_or(DataError::MissingColumn(MEASURE_HEADER[k])) };
        let bad = |what: &str| DataError::BadRow { row, reason: format!("bad {what}") };
        let real = |k: usize| -> Result<f64, DataError> { get(k)?.parse().map_err(|_| bad(MEASURE_HEADER[k])) };
        out.push(MeasureReport {
            system_label: get(0)?.to_string(),
            source: get(1)?.parse().map_err(|_| bad("source"))?,
            prior: PriorKind::parse(get(2)?).ok_or_else(|| bad("prior"))?,
            irregularity_bits: real(3)?,
            processing_bits: real(4)?,
            lexicon_size: get(5)?.parse().map_err(|_| bad("lexicon_size"))?,
            avg_morph_complexity: real(6)?,
        });
    }
    Ok(out)
}

pub const GA_EXTRA_HEADER: [&str; 4] = ["grammar_lexicon_size", "digits", "multipliers", "combinators"];

/// Measures of each frontier system followed by its grammar; sets are
/// space-separated.
pub fn write_ga_frontier<W: Write>(writer: W, rows: &[(MeasureReport, GrammarParams)]) -> Result<(), DataError> {
    let join = |set: &std::collections::BTreeSet<u32>| set.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
    w.write_record(MEASURE_HEADER.iter().chain(&GA_EXTRA_HEADER))?;
    let mut sorted: Vec<_> = rows.iter().collect();
    sorted.sort_by(|a, b| a.0.system_label.cmp(&b.0.system_label));
    for (r, g) in sorted {
        let extra = [g.lexicon_size().to_string(), join(g.digits()), join(g.multipliers()), g.combinator_label().to_string()];
        w.write_record(measure_row(r).iter().chain(&extra))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), DataError> {
    let io_err = |source: io::Error| DataError::Io { path: path.display().to_string(), source };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

pub fn export_measures(reports: &[MeasureReport], path: &Path) -> Result<(), DataError> {
    let mut buf = Vec::new();
    write_measures(&mut buf, reports)?;
    write_atomic(path, &buf)
}

pub fn export_systems(systems: &[NumeralSystem], path: &Path) -> Result<(), DataError> {
    let mut buf = Vec::new();
    write_systems(&mut buf, systems)?;
    write_atomic(path, &buf)
}

/// Pools from a `role,value` override file, or derived from a systems file.
pub fn read_pools(bytes: &[u8], range: NumberRange) -> Result<AttestedPools, DataError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(bytes);
    let headers = rdr.headers()?.clone();
    let (Ok(role), Ok(value)) = (column(&headers, "role"), column(&headers, "value")) else {
        let systems = read_systems(bytes, range, Source::Natural)?;
        return Ok(AttestedPools::from_systems(&systems));
    };
    let mut pools = AttestedPools::default();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row = i + 2;
        let v: u32 = rec
            .get(value)
            .and_then(|v| v.parse().ok())
            .filter(|&v| v > 0)
            .ok_or_else(|| DataError::BadRow { row, reason: "value must be a positive integer".into() })?;
        match rec.get(role) {
            Some("digit") => pools.digits.insert(v),
            Some("multiplier") => pools.multipliers.insert(v),
            other => return Err(DataError::BadRow { row, reason: format!("unknown role `{}`", other.unwrap_or("")) }),
        };
    }
    Ok(pools)
}

pub fn load_pools(path: &Path, range: NumberRange) -> Result<AttestedPools, DataError> {
    read_pools(&read_file(path)?, range)
}

#[cfg(test)]
mod tests {
    use super::*;
    use numeral_mdl_core::Prior;

    const KARO: &str = "language,number,tokens\nkb,1,1\nkb,2,2\nkb,3,3\n";

    fn small() -> NumberRange {
        NumberRange::new(1, 3).unwrap()
    }

    #[test]
    fn loads_in_first_appearance_order() {
        let csv = "language,family,number,tokens\nb,f,2,2\na,,1,1\nb,f,1,1\na,,2,1 + 1\n";
        let systems = read_systems(csv.as_bytes(), NumberRange::new(1, 2).unwrap(), Source::Natural).unwrap();
        assert_eq!(systems.iter().map(|s| s.label()).collect::<Vec<_>>(), ["b", "a"]);
        assert_eq!(systems[1].get(2).unwrap().to_string(), "1 + 1");
        let records = read_records(csv.as_bytes()).unwrap();
        assert_eq!(records[0].family.as_deref(), Some("f"));
        assert_eq!(records[1].family, None);
    }

    #[test]
    fn rejects_wrong_value_with_row() {
        let csv = "language,number,tokens\nx,43,4 * 10 + 2\n";
        let err = read_systems(csv.as_bytes(), NumberRange::new(43, 43).unwrap(), Source::Natural).unwrap_err();
        assert!(matches!(err, DataError::BadExpression { row: 2, .. }), "{err}");
    }

    #[test]
    fn reports_missing_numbers() {
        let err = read_systems("language,number,tokens\nkb,1,1\nkb,3,3\n".as_bytes(), small(), Source::Natural).unwrap_err();
        assert!(matches!(err, DataError::MissingNumber { ref language, number: 2 } if language == "kb"));
    }

    #[test]
    fn rejects_unparseable_and_duplicate_rows() {
        for csv in ["language,number,tokens\nkb,1,1 +\n", "language,number,tokens\nkb,1,1\nkb,1,1\n", "language,number,tokens\nkb,one,1\n"]
        {
            assert!(read_systems(csv.as_bytes(), small(), Source::Natural).is_err(), "{csv}");
        }
        assert!(matches!(
            read_systems("lang,number,tokens\n".as_bytes(), small(), Source::Natural),
            Err(DataError::MissingColumn("language"))
        ));
    }

    #[test]
    fn systems_round_trip() {
        let systems = read_systems(KARO.as_bytes(), small(), Source::Natural).unwrap();
        let mut buf = Vec::new();
        write_systems(&mut buf, &systems).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), KARO);
        assert_eq!(read_systems(buf.as_slice(), small(), Source::Natural).unwrap(), systems);
    }

    #[test]
    fn measures_round_trip_and_sort() {
        let systems = read_systems(
            "language,number,tokens\nz,1,1\nz,2,2\nz,3,3\na,1,1\na,2,1 + 1\na,3,1 + 1 + 1\n".as_bytes(),
            small(),
            Source::Natural,
        )
        .unwrap();
        let prior = Prior::power_law(small());
        let reports: Vec<_> = systems.iter().map(|s| MeasureReport::score(s, &prior)).collect();
        let mut buf = Vec::new();
        write_measures(&mut buf, &reports).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text
            .starts_with("system_id,source,prior,irregularity_bits,processing_bits,lexicon_size,avg_morph_complexity\na,natural,power2,"));
        assert_eq!(text.lines().count(), 3);
        let back = read_measures(buf.as_slice()).unwrap();
        assert_eq!(back[1].system_label, "z");
        assert!((back[1].irregularity_bits - reports[0].irregularity_bits).abs() < 1e-6);
        assert_eq!(back[0].lexicon_size, reports[1].lexicon_size);
    }

    #[test]
    fn empty_measures_are_header_only() {
        let mut buf = Vec::new();
        write_measures(&mut buf, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{}\n", MEASURE_HEADER.join(",")));
    }

    #[test]
    fn pools_from_override_or_dataset() {
        let pools = read_pools(b"role,value\ndigit,1\ndigit,2\nmultiplier,10\n", small()).unwrap();
        assert_eq!(pools.digits.iter().copied().collect::<Vec<_>>(), [1, 2]);
        assert_eq!(pools.multipliers.iter().copied().collect::<Vec<_>>(), [10]);
        assert!(read_pools(b"role,value\nsuffix,1\n", small()).is_err());
        let derived = read_pools(b"language,number,tokens\nw,1,1\nw,2,1 * 2\nw,3,2 + 1\n", small()).unwrap();
        assert_eq!(derived.multipliers.iter().copied().collect::<Vec<_>>(), [2]);
        assert_eq!(derived.digits.iter().copied().collect::<Vec<_>>(), [1]);
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(fs::read(&path).unwrap(), b"two");
    }
}
