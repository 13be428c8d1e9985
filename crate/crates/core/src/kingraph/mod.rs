//! Undirected traversal view of a relationship matrix.
//!
//! Every recorded code `c` at `(x, y)` becomes a forward arc `x -> y` and a
//! reverse arc `y -> x` labelled with the lexicographically least member of
//! the inverse class of `c`, the remaining inverses attached as
//! alternatives. Codes with no inverse get no reverse arc.

mod components;
mod search;

pub use components::{families, FamilyPartition};
pub use search::{enumerate_paths, shortest_relationship, weighted_distance, Cost, Metric, MAX_ENUMERATION_EDGES};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::relation::{AlgebraError, RelationCode, RelationRegistry};
use crate::rmatrix::{Direction, PathStep, RelationshipMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("person index {index} out of range for {n} persons")]
    PersonOutOfRange { index: usize, n: usize },
    #[error("source and target are the same person ({0})")]
    SamePerson(usize),
    #[error("custom metric weights must be non-negative")]
    NegativeWeight,
    #[error("enumeration bound {requested} exceeds the maximum of {max} edges")]
    BoundExceeded { requested: usize, max: usize },
    #[error(transparent)]
    Code(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub to: usize,
    pub code: RelationCode,
    pub direction: Direction,
    pub alternatives: Vec<RelationCode>,
    pub glen: i64,
    pub slen: u64,
}

impl Arc {
    fn to_step(&self) -> PathStep {
        PathStep {
            code: self.code.clone(),
            direction: self.direction,
            alternatives: self.alternatives.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct KinGraph {
    // neighbor -> arcs, arcs sorted forward-first then by code
    adjacency: Vec<BTreeMap<usize, Vec<Arc>>>,
}

impl KinGraph {
    pub fn new(t: &RelationshipMatrix, reg: &RelationRegistry) -> Result<Self, AlgebraError> {
        let mut adjacency = vec![BTreeMap::<usize, Vec<Arc>>::new(); t.n()];
        for ((x, y), codes) in t.cells() {
            for code in codes {
                let glen = reg.glen(code)?;
                let slen = reg.slen(code)?;
                adjacency[x].entry(y).or_default().push(Arc {
                    to: y,
                    code: code.clone(),
                    direction: Direction::Forward,
                    alternatives: Vec::new(),
                    glen,
                    slen,
                });
                let mut inverses = match reg.invert(code) {
                    Ok(set) => set.into_iter(),
                    Err(AlgebraError::NotInvertible(_)) => continue,
                    Err(e) => return Err(e),
                };
                let canonical = inverses.next().expect("inverse sets are non-empty");
                adjacency[y].entry(x).or_default().push(Arc {
                    to: x,
                    code: canonical,
                    direction: Direction::Reverse,
                    alternatives: inverses.collect(),
                    glen: -glen,
                    slen,
                });
            }
        }
        for row in &mut adjacency {
            for arcs in row.values_mut() {
                arcs.sort_by(|a, b| (a.direction, &a.code).cmp(&(b.direction, &b.code)));
            }
        }
        Ok(KinGraph { adjacency })
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    /// Neighbors of `x` in ascending order with the arcs leading to each.
    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = (usize, &[Arc])> {
        self.adjacency[x].iter().map(|(&y, arcs)| (y, arcs.as_slice()))
    }

    pub fn arcs(&self, x: usize) -> impl Iterator<Item = &Arc> {
        self.adjacency[x].values().flatten()
    }

    fn check(&self, index: usize) -> Result<(), GraphError> {
        if index < self.n() {
            Ok(())
        } else {
            Err(GraphError::PersonOutOfRange { index, n: self.n() })
        }
    }

    fn check_pair(&self, x: usize, y: usize) -> Result<(), GraphError> {
        self.check(x)?;
        self.check(y)?;
        if x == y {
            return Err(GraphError::SamePerson(x));
        }
        Ok(())
    }
}

/// Label for a hop over a chosen arc: every other code between the same
/// two persons joins the alternatives.
fn hop_step(chosen: &Arc, all: &[Arc]) -> PathStep {
    let mut step = chosen.to_step();
    let mut alts: Vec<RelationCode> = all
        .iter()
        .flat_map(|a| std::iter::once(&a.code).chain(&a.alternatives))
        .filter(|c| **c != chosen.code)
        .cloned()
        .collect();
    alts.sort();
    alts.dedup();
    step.alternatives = alts;
    step
}
