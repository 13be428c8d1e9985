//! Data-quality findings handed to domain experts.

use std::fmt;

use serde::Serialize;

use crate::relation::RelationCode;
use crate::rmatrix::RelationshipMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConflictKind {
    /// An edge implies a generation level that contradicts an earlier one.
    GenerationConflict,
    /// Codes that cannot all hold between the same two persons.
    CodeConflict,
    /// Several distinct but mutually compatible codes for one ordered pair.
    ParallelRelationship,
    /// A code whose reverse cannot be expressed in the registry.
    NotInvertible,
}

impl ConflictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConflictKind::GenerationConflict => "generation-conflict",
            ConflictKind::CodeConflict => "code-conflict",
            ConflictKind::ParallelRelationship => "parallel-relationship",
            ConflictKind::NotInvertible => "not-invertible",
        }
    }

    /// Parallel relationships are reported but do not make data inconsistent.
    pub fn is_informational(self) -> bool {
        self == ConflictKind::ParallelRelationship
    }
}

impl fmt::Display for ConflictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conflict {
    pub kind: ConflictKind,
    /// Ordered pair of dense person indices (edge source/target or cell row/col).
    pub persons: (usize, usize),
    pub codes: Vec<RelationCode>,
    pub detail: String,
}

#[derive(Debug, Serialize)]
struct ConflictJson<'a> {
    kind: ConflictKind,
    persons: [&'a str; 2],
    codes: Vec<&'a str>,
    detail: &'a str,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConflictReport {
    entries: Vec<Conflict>,
}

impl ConflictReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(
        &mut self,
        kind: ConflictKind,
        persons: (usize, usize),
        codes: Vec<RelationCode>,
        detail: impl Into<String>,
    ) {
        self.entries.push(Conflict {
            kind,
            persons,
            codes,
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: ConflictReport) {
        self.entries.extend(other.entries);
    }

    pub fn entries(&self) -> &[Conflict] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn of_kind(&self, kind: ConflictKind) -> impl Iterator<Item = &Conflict> {
        self.entries.iter().filter(move |c| c.kind == kind)
    }

    /// True if any entry is more than informational.
    pub fn has_conflicts(&self) -> bool {
        self.entries.iter().any(|c| !c.kind.is_informational())
    }

    /// One line per entry: `kind ego alter codes detail`, external ids.
    pub fn render_text(&self, t: &RelationshipMatrix) -> String {
        let mut out = String::new();
        for c in &self.entries {
            let codes: Vec<&str> = c.codes.iter().map(RelationCode::as_str).collect();
            out.push_str(&format!(
                "{} {} {} {} {}\n",
                c.kind,
                t.id(c.persons.0),
                t.id(c.persons.1),
                codes.join(","),
                c.detail
            ));
        }
        out
    }

    /// JSON array of `{kind, persons, codes, detail}` with external ids.
    pub fn to_json(&self, t: &RelationshipMatrix) -> serde_json::Value {
        let items: Vec<ConflictJson<'_>> = self
            .entries
            .iter()
            .map(|c| ConflictJson {
                kind: c.kind,
                persons: [t.id(c.persons.0), t.id(c.persons.1)],
                codes: c.codes.iter().map(RelationCode::as_str).collect(),
                detail: &c.detail,
            })
            .collect();
        serde_json::to_value(items).expect("conflicts serialize")
    }
}
