use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::{MatrixError, RelationshipMatrix};
use crate::relation::{AlgebraError, RelationCode, RelationRegistry};

/// Whether a hop follows a recorded cell or the reverse of one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Forward,
    Reverse,
}

/// One hop of a path. `code` describes the next person relative to the
/// previous one; for reverse hops it is already the (canonical) inverse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathStep {
    pub code: RelationCode,
    pub direction: Direction,
    /// Other codes that are equally supported for this hop: parallel
    /// recorded codes or the remaining members of an inverse class.
    pub alternatives: Vec<RelationCode>,
}

impl PathStep {
    pub fn forward(code: RelationCode) -> Self {
        PathStep {
            code,
            direction: Direction::Forward,
            alternatives: Vec::new(),
        }
    }
}

/// An interleaved person/code sequence such as `1_F_2_DHB_3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathRecord {
    persons: Vec<usize>,
    steps: Vec<PathStep>,
}

impl PathRecord {
    /// # Panics
    /// If `persons.len() != steps.len() + 1`.
    pub fn new(persons: Vec<usize>, steps: Vec<PathStep>) -> Self {
        assert_eq!(persons.len(), steps.len() + 1, "path shape");
        PathRecord { persons, steps }
    }

    pub fn persons(&self) -> &[usize] {
        &self.persons
    }

    pub fn steps(&self) -> &[PathStep] {
        &self.steps
    }

    pub fn codes(&self) -> impl Iterator<Item = &RelationCode> {
        self.steps.iter().map(|s| &s.code)
    }

    pub fn source(&self) -> usize {
        self.persons[0]
    }

    pub fn target(&self) -> usize {
        *self.persons.last().unwrap()
    }

    /// Number of edges.
    pub fn hops(&self) -> usize {
        self.steps.len()
    }

    pub fn intermediates(&self) -> &[usize] {
        &self.persons[1..self.persons.len() - 1]
    }

    /// `self` followed by `other`; `other` must start where `self` ends.
    pub fn join(&self, other: &PathRecord) -> PathRecord {
        debug_assert_eq!(self.target(), other.source());
        let mut persons = self.persons.clone();
        persons.extend_from_slice(&other.persons[1..]);
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        PathRecord { persons, steps }
    }

    /// All hop codes concatenated in order (`F` then `DHB` gives `FDHB`).
    pub fn composite(&self) -> RelationCode {
        let mut it = self.codes();
        let first = it.next().expect("paths have at least one hop").clone();
        it.fold(first, |acc, c| acc.concat(c))
    }

    /// Sum of hop glens. Reverse hops carry inverted codes, so their glen is
    /// already negated relative to the recorded cell.
    pub fn net_glen(&self, reg: &RelationRegistry) -> Result<i64, AlgebraError> {
        self.codes().map(|c| reg.glen(c)).sum()
    }

    pub fn net_slen(&self, reg: &RelationRegistry) -> Result<u64, AlgebraError> {
        self.codes().map(|c| reg.slen(c)).sum()
    }

    /// Render with a custom person label, e.g. external ids.
    pub fn render_with<F, S>(&self, mut label: F) -> String
    where
        F: FnMut(usize) -> S,
        S: fmt::Display,
    {
        let mut out = label(self.persons[0]).to_string();
        for (step, &p) in self.steps.iter().zip(&self.persons[1..]) {
            out.push('_');
            out.push_str(step.code.as_str());
            out.push('_');
            out.push_str(&label(p).to_string());
        }
        out
    }

    /// Deterministic order: person sequence, then codes.
    pub fn path_cmp(&self, other: &PathRecord) -> Ordering {
        self.persons
            .cmp(&other.persons)
            .then_with(|| self.steps.cmp(&other.steps))
    }
}

/// Renders persons as one-based dense indices.
impl fmt::Display for PathRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|i| i + 1))
    }
}

/// Sparse matrix whose cells hold up to `cap` recorded paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathMatrix {
    rows: Vec<BTreeMap<usize, Vec<PathRecord>>>,
    truncated: bool,
}

impl PathMatrix {
    /// One single-hop record per occupied cell, labelled as [`RelationshipMatrix::hop`].
    pub fn from_relationship(t: &RelationshipMatrix) -> Self {
        let mut rows = vec![BTreeMap::new(); t.n()];
        for ((x, y), _) in t.cells() {
            let step = t.hop(x, y).expect("occupied cell");
            rows[x].insert(y, vec![PathRecord::new(vec![x, y], vec![step])]);
        }
        PathMatrix { rows, truncated: false }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, x: usize, y: usize) -> &[PathRecord] {
        self.rows[x].get(&y).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Non-empty cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), &[PathRecord])> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |(&y, v)| ((x, y), v.as_slice())))
    }

    /// Set when any cell in the lineage of this matrix dropped paths.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }
}

/// Path-recording product: every `a`-path `x -> z` joined with every
/// `b`-path `z -> y`. Each cell keeps its `cap` least paths.
pub fn mul_paths(a: &PathMatrix, b: &PathMatrix, cap: usize) -> Result<PathMatrix, MatrixError> {
    if a.n() != b.n() {
        return Err(MatrixError::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    if cap == 0 {
        return Err(MatrixError::ZeroCap);
    }
    let rows: Vec<(BTreeMap<usize, Vec<PathRecord>>, bool)> = a
        .rows
        .par_iter()
        .map(|arow| {
            let mut out: BTreeMap<usize, Vec<PathRecord>> = BTreeMap::new();
            for (&z, apaths) in arow {
                for (&y, bpaths) in &b.rows[z] {
                    let cell = out.entry(y).or_default();
                    for ap in apaths {
                        cell.extend(bpaths.iter().map(|bp| ap.join(bp)));
                    }
                }
            }
            let mut dropped = false;
            for cell in out.values_mut() {
                cell.sort_by(PathRecord::path_cmp);
                if cell.len() > cap {
                    cell.truncate(cap);
                    dropped = true;
                }
            }
            (out, dropped)
        })
        .collect();
    let truncated = a.truncated || b.truncated || rows.iter().any(|(_, d)| *d);
    Ok(PathMatrix {
        rows: rows.into_iter().map(|(r, _)| r).collect(),
        truncated,
    })
}

/// `p^rho` under the path-recording product.
pub fn pow_paths(p: &PathMatrix, rho: usize, cap: usize) -> Result<PathMatrix, MatrixError> {
    if rho == 0 {
        return Err(MatrixError::ZeroPower);
    }
    if cap == 0 {
        return Err(MatrixError::ZeroCap);
    }
    let mut acc = p.clone();
    for _ in 1..rho {
        acc = mul_paths(&acc, p, cap)?;
    }
    Ok(acc)
}
