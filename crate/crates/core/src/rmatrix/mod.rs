//! The relationship matrix and its two shipped semirings: walk counting
//! ([`CountMatrix`]) and path recording ([`PathMatrix`]).
//!
//! Cell `(row, col)` holds the codes describing person `col` relative to
//! person `row`: a cell `(0, 1) = {F}` means person 1 is the father of
//! person 0. Persons are dense zero-based indices; user-facing renderings add
//! one or substitute the external id.

mod count;
mod paths;

pub use count::{are_relatives, binarize, mul_count, pow_count, smallest_power_hit, CountMatrix, PowerHit, WalkCount};
pub use paths::{mul_paths, pow_paths, Direction, PathMatrix, PathRecord, PathStep};

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::relation::{AlgebraError, RelationCode, RelationRegistry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("person index {index} out of range for {n} persons")]
    PersonOutOfRange { index: usize, n: usize },
    #[error("a person cannot be related to themselves (index {0})")]
    SelfRelationship(usize),
    #[error("matrix power must be at least 1")]
    ZeroPower,
    #[error("path cap must be at least 1")]
    ZeroCap,
    #[error(transparent)]
    Code(#[from] AlgebraError),
}

/// Sparse, directed, multi-valued matrix of kinship codes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationshipMatrix {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    cells: BTreeMap<(usize, usize), BTreeSet<RelationCode>>,
    // Cells filled by symmetrization: every inverse the recorded code admits.
    inferred: BTreeMap<(usize, usize), BTreeSet<RelationCode>>,
}

impl RelationshipMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    /// `n` persons with external ids `"1"` through `"n"`.
    pub fn with_persons(n: usize) -> Self {
        let mut t = Self::new();
        for i in 1..=n {
            t.intern(&i.to_string());
        }
        t
    }

    /// Build from `(ego, alter, code)` triples; persons are indexed in
    /// first-seen order.
    pub fn from_triples<'a, I>(reg: &RelationRegistry, triples: I) -> Result<Self, MatrixError>
    where
        I: IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    {
        let mut t = Self::new();
        for (ego, alter, code) in triples {
            let code = reg.parse(code)?;
            let row = t.intern(ego);
            let col = t.intern(alter);
            t.insert(row, col, code)?;
        }
        Ok(t)
    }

    /// Dense index of `id`, assigning the next one if unseen.
    pub fn intern(&mut self, id: &str) -> usize {
        if let Some(&i) = self.index.get(id) {
            return i;
        }
        let i = self.ids.len();
        self.ids.push(id.to_string());
        self.index.insert(id.to_string(), i);
        i
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn id(&self, index: usize) -> &str {
        &self.ids[index]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    /// Number of persons.
    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn check_person(&self, index: usize) -> Result<(), MatrixError> {
        if index < self.n() {
            Ok(())
        } else {
            Err(MatrixError::PersonOutOfRange { index, n: self.n() })
        }
    }

    /// Adds `code` to cell `(row, col)`. Returns false if it was already there.
    pub fn insert(&mut self, row: usize, col: usize, code: RelationCode) -> Result<bool, MatrixError> {
        self.check_person(row)?;
        self.check_person(col)?;
        if row == col {
            return Err(MatrixError::SelfRelationship(row));
        }
        Ok(self.cells.entry((row, col)).or_default().insert(code))
    }

    pub(crate) fn insert_inferred(
        &mut self,
        row: usize,
        col: usize,
        canonical: RelationCode,
        candidates: BTreeSet<RelationCode>,
    ) {
        self.cells.entry((row, col)).or_default().insert(canonical);
        self.inferred.entry((row, col)).or_default().extend(candidates);
    }

    pub fn cell(&self, row: usize, col: usize) -> Option<&BTreeSet<RelationCode>> {
        self.cells.get(&(row, col))
    }

    pub fn is_occupied(&self, row: usize, col: usize) -> bool {
        self.cells.contains_key(&(row, col))
    }

    /// Occupied cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), &BTreeSet<RelationCode>)> {
        self.cells.iter().map(|(&k, v)| (k, v))
    }

    /// Inverse candidates for a cell that was filled by symmetrization.
    pub fn inferred(&self, row: usize, col: usize) -> Option<&BTreeSet<RelationCode>> {
        self.inferred.get(&(row, col))
    }

    pub fn occupied_len(&self) -> usize {
        self.cells.len()
    }

    /// Same persons, every cell moved from `(i, j)` to `(j, i)`.
    pub fn transposed(&self) -> Self {
        let swap = |m: &BTreeMap<(usize, usize), BTreeSet<RelationCode>>| {
            m.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect()
        };
        RelationshipMatrix {
            ids: self.ids.clone(),
            index: self.index.clone(),
            cells: swap(&self.cells),
            inferred: swap(&self.inferred),
        }
    }

    /// Label for a single hop `row -> col`: the least code in the cell, with
    /// every other recorded or inferred code as alternatives.
    pub fn hop(&self, row: usize, col: usize) -> Option<PathStep> {
        let codes = self.cells.get(&(row, col))?;
        let code = codes.first()?.clone();
        let mut rest: BTreeSet<RelationCode> = codes.iter().cloned().collect();
        let direction = match self.inferred.get(&(row, col)) {
            Some(cands) => {
                rest.extend(cands.iter().cloned());
                Direction::Reverse
            }
            None => Direction::Forward,
        };
        rest.remove(&code);
        Some(PathStep {
            code,
            direction,
            alternatives: rest.into_iter().collect(),
        })
    }

    /// Label a walk given as person indices; `None` if some hop has no cell.
    pub fn label_walk(&self, persons: &[usize]) -> Option<PathRecord> {
        let steps = persons
            .windows(2)
            .map(|w| self.hop(w[0], w[1]))
            .collect::<Option<Vec<_>>>()?;
        Some(PathRecord::new(persons.to_vec(), steps))
    }
}
