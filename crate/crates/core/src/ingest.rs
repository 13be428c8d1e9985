//! CSV ingestion and symmetrization.
//!
//! Input is UTF-8 CSV with the header `ego,alter,code`; each row states that
//! `alter` is `code` of `ego` (cell `(ego, alter)` of the matrix). External
//! ids are opaque strings and receive dense indices in order of first
//! appearance.

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::netbuilder::{check_pair, classify_parallel};
use crate::relation::{AlgebraError, RelationCode, RelationRegistry};
use crate::report::{ConflictKind, ConflictReport};
use crate::rmatrix::RelationshipMatrix;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: {reason}")]
    Parse { line: u64, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeTriple {
    pub ego: String,
    pub alter: String,
    pub code: RelationCode,
}

const HEADER: [&str; 3] = ["ego", "alter", "code"];

/// Parse and validate every row.
pub fn read_triples<R: Read>(reader: R, reg: &RelationRegistry) -> Result<Vec<EdgeTriple>, IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = rdr.records();
    let parse_err = |line: u64, reason: String| IngestError::Parse { line, reason };
    let csv_err = |e: csv::Error| {
        let line = e.position().map(|p| p.line()).unwrap_or(0);
        match e.into_kind() {
            csv::ErrorKind::Io(io) => IngestError::Io(io),
            kind => parse_err(line, format!("{kind:?}")),
        }
    };

    match records.next() {
        None => return Ok(Vec::new()),
        Some(header) => {
            let header = header.map_err(csv_err)?;
            if header.iter().ne(HEADER) {
                return Err(parse_err(1, "expected header `ego,alter,code`".into()));
            }
        }
    }

    let mut out = Vec::new();
    for rec in records {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.len() != 3 {
            return Err(parse_err(line, format!("expected 3 fields, found {}", rec.len())));
        }
        let (ego, alter, code) = (&rec[0], &rec[1], &rec[2]);
        if ego.is_empty() || alter.is_empty() {
            return Err(parse_err(line, "empty person id".into()));
        }
        if ego == alter {
            return Err(parse_err(line, format!("person {ego} related to themselves")));
        }
        let code = reg.parse(code).map_err(|e| match e {
            AlgebraError::UnknownSymbol { position, symbol } => parse_err(
                line,
                format!("unknown symbol {symbol:?} at position {position} of code {code:?}"),
            ),
            other => parse_err(line, other.to_string()),
        })?;
        out.push(EdgeTriple {
            ego: ego.to_string(),
            alter: alter.to_string(),
            code,
        });
    }
    Ok(out)
}

/// Build the matrix from triples; identical triples collapse, distinct codes
/// for one pair are kept and reported.
pub fn matrix_from_triples(
    triples: &[EdgeTriple],
    reg: &RelationRegistry,
) -> Result<(RelationshipMatrix, ConflictReport), AlgebraError> {
    let mut t = RelationshipMatrix::new();
    for tr in triples {
        let row = t.intern(&tr.ego);
        let col = t.intern(&tr.alter);
        t.insert(row, col, tr.code.clone())
            .expect("ids are interned and distinct");
    }
    let mut report = ConflictReport::new();
    classify_parallel(&t, reg, &mut report)?;
    Ok((t, report))
}

pub fn load_edges_from_reader<R: Read>(
    reader: R,
    reg: &RelationRegistry,
) -> Result<(RelationshipMatrix, ConflictReport), IngestError> {
    let triples = read_triples(reader, reg)?;
    Ok(matrix_from_triples(&triples, reg).expect("codes were parsed with this registry"))
}

pub fn load_edges(
    path: impl AsRef<Path>,
    reg: &RelationRegistry,
) -> Result<(RelationshipMatrix, ConflictReport), IngestError> {
    load_edges_from_reader(File::open(path)?, reg)
}

/// Write every (cell, code) pair as a CSV row, row-major.
pub fn write_edges<W: Write>(t: &RelationshipMatrix, writer: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(HEADER)?;
    for ((i, j), codes) in t.cells() {
        for c in codes {
            w.write_record([t.id(i), t.id(j), c.as_str()])?;
        }
    }
    w.flush()
}

/// Fill every empty reverse cell with the canonical inverse of each code in
/// its counterpart, keeping the full inverse set as an annotation.
/// Cell pairs that are both already occupied are validated instead.
pub fn symmetrize(
    t: &RelationshipMatrix,
    reg: &RelationRegistry,
) -> Result<(RelationshipMatrix, ConflictReport), AlgebraError> {
    let mut out = t.clone();
    let mut report = ConflictReport::new();
    for ((i, j), codes) in t.cells() {
        if t.is_occupied(j, i) {
            if i < j {
                check_pair(t, reg, i, j, &mut report)?;
            }
            continue;
        }
        for code in codes {
            match reg.invert(code) {
                Ok(set) => {
                    let canonical = set.first().expect("inverse sets are non-empty").clone();
                    out.insert_inferred(j, i, canonical, set);
                }
                Err(AlgebraError::NotInvertible(s)) => report.push(
                    ConflictKind::NotInvertible,
                    (i, j),
                    vec![code.clone()],
                    format!("symbol {s} has no inverse; cell left asymmetric"),
                ),
                Err(e) => return Err(e),
            }
        }
    }
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<(RelationshipMatrix, ConflictReport), IngestError> {
        load_edges_from_reader(text.as_bytes(), &RelationRegistry::builtin())
    }

    fn code(s: &str) -> RelationCode {
        s.parse().unwrap()
    }

    #[test]
    fn chain3_file() {
        let (t, rep) = load("ego,alter,code\n1,2,F\n2,3,DHB\n").unwrap();
        assert_eq!(t.n(), 3);
        assert_eq!(t.occupied_len(), 2);
        assert!(t.cell(0, 1).unwrap().contains(&code("F")));
        assert!(t.cell(1, 2).unwrap().contains(&code("DHB")));
        assert!(rep.is_empty());
    }

    #[test]
    fn empty_inputs() {
        let (t, rep) = load("").unwrap();
        assert_eq!(t.n(), 0);
        assert!(rep.is_empty());
        let (t, _) = load("ego,alter,code\n").unwrap();
        assert_eq!(t.n(), 0);
    }

    #[test]
    fn duplicates_and_parallel_codes() {
        let (t, rep) = load("ego,alter,code\n1,2,F\n1,2,F\n1,2,M\n").unwrap();
        let cell: Vec<_> = t.cell(0, 1).unwrap().iter().map(|c| c.as_str()).collect();
        assert_eq!(cell, vec!["F", "M"]);
        assert_eq!(rep.len(), 1);
        assert_eq!(rep.entries()[0].kind, ConflictKind::ParallelRelationship);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = load("ego,alter,code\n1,2,F\n2,3,DHX\n").unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 3, .. }), "{err}");
        let err = load("ego,alter,code\n1,1,F\n").unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 2, .. }));
        let err = load("ego,alter,code\n1,2\n").unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 2, .. }));
        let err = load("a,b,c\n1,2,F\n").unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 1, .. }));
        let err = load("ego,alter,code\n1,2,\n").unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 2, .. }));
    }

    #[test]
    fn symmetrize_chain3() {
        let reg = RelationRegistry::builtin();
        let (t, _) = load("ego,alter,code\n1,2,F\n2,3,DHB\n").unwrap();
        let (s, rep) = symmetrize(&t, &reg).unwrap();
        assert!(rep.is_empty());
        assert_eq!(s.cell(1, 0).unwrap().iter().collect::<Vec<_>>(), vec![&code("D")]);
        assert_eq!(
            s.inferred(1, 0).unwrap().iter().map(|c| c.as_str()).collect::<Vec<_>>(),
            vec!["D", "S"]
        );
        let canonical = reg.canonical_inverse(&code("DHB")).unwrap();
        assert_eq!(s.cell(2, 1).unwrap().first(), Some(&canonical));
        assert_eq!(canonical.as_str(), "BWF");
        assert_eq!(symmetrize(&s, &reg).unwrap().0, s);
    }

    #[test]
    fn symmetrize_flags_mismatched_pair() {
        let reg = RelationRegistry::builtin();
        let (t, _) = load("ego,alter,code\n1,2,F\n2,1,B\n").unwrap();
        let (s, rep) = symmetrize(&t, &reg).unwrap();
        assert_eq!(s, t);
        assert_eq!(rep.len(), 1);
        assert_eq!(rep.entries()[0].kind, ConflictKind::CodeConflict);
    }

    #[test]
    fn symmetric_input_is_unchanged() {
        let reg = RelationRegistry::builtin();
        let (t, _) = load("ego,alter,code\n1,2,H\n2,1,W\n").unwrap();
        let (s, rep) = symmetrize(&t, &reg).unwrap();
        assert_eq!(s, t);
        assert!(rep.is_empty());
    }

    #[test]
    fn write_round_trip() {
        let text = "ego,alter,code\nb,a,F\nb,a,M\na,c,DHB\n";
        let (t, _) = load(text).unwrap();
        let mut buf = Vec::new();
        write_edges(&t, &mut buf).unwrap();
        let (t2, _) = load(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(t2, t);
    }
}
