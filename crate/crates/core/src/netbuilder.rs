//! Generation-leveled family networks consistent with observed paths.
//!
//! Levels grow toward later generations: an edge `x -> y` with code `c`
//! requires `level(y) = level(x) - glen(c)`, so a father sits one level
//! above (smaller than) his child. Compound codes constrain only their two
//! endpoints; unrecorded intermediate persons are never invented.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::relation::{AlgebraError, RelationCode, RelationRegistry};
use crate::report::{ConflictKind, ConflictReport};
use crate::rmatrix::{PathRecord, RelationshipMatrix};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GenerationAssignment {
    pub level: BTreeMap<usize, i64>,
    /// Least person of each component, fixed at level 0.
    pub anchors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkEdge {
    pub from: usize,
    pub to: usize,
    pub code: RelationCode,
    pub glen: i64,
    /// Excluded from the level constraints because it contradicted them.
    pub conflicted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyNetwork {
    pub persons: Vec<usize>,
    pub generations: GenerationAssignment,
    pub edges: Vec<NetworkEdge>,
    pub conflicts: ConflictReport,
}

impl FamilyNetwork {
    pub fn level(&self, person: usize) -> Option<i64> {
        self.generations.level.get(&person).copied()
    }

    /// Persons grouped by level, ascending.
    pub fn by_level(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (&p, &l) in &self.generations.level {
            out.entry(l).or_default().push(p);
        }
        out
    }
}

/// Constrained edges in processing order: sorted by (from, to, code), deduplicated.
fn prepare_edges(
    raw: impl IntoIterator<Item = (usize, usize, RelationCode)>,
    reg: &RelationRegistry,
) -> Result<Vec<NetworkEdge>, AlgebraError> {
    let set: BTreeSet<(usize, usize, RelationCode)> = raw.into_iter().collect();
    set.into_iter()
        .map(|(from, to, code)| {
            Ok(NetworkEdge {
                from,
                to,
                glen: reg.glen(&code)?,
                code,
                conflicted: false,
            })
        })
        .collect()
}

/// Breadth-first level propagation from the least person of each component.
/// The first constraint to reach a person wins; later contradicting edges
/// are marked conflicted and reported.
fn propagate(persons: &BTreeSet<usize>, edges: &mut [NetworkEdge]) -> (GenerationAssignment, ConflictReport) {
    let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        incident.entry(e.from).or_default().push(i);
        if e.to != e.from {
            incident.entry(e.to).or_default().push(i);
        }
    }
    let mut assignment = GenerationAssignment::default();
    let mut report = ConflictReport::new();
    let mut processed = vec![false; edges.len()];

    for &anchor in persons {
        if assignment.level.contains_key(&anchor) {
            continue;
        }
        assignment.anchors.push(anchor);
        assignment.level.insert(anchor, 0);
        let mut queue = VecDeque::from([anchor]);
        while let Some(u) = queue.pop_front() {
            let lu = assignment.level[&u];
            for &ei in incident.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                if processed[ei] {
                    continue;
                }
                processed[ei] = true;
                let e = &mut edges[ei];
                let (other, implied) = if e.from == u {
                    (e.to, lu - e.glen)
                } else {
                    (e.from, lu + e.glen)
                };
                match assignment.level.get(&other) {
                    None => {
                        assignment.level.insert(other, implied);
                        queue.push_back(other);
                    }
                    Some(&have) if have != implied => {
                        e.conflicted = true;
                        report.push(
                            ConflictKind::GenerationConflict,
                            (e.from, e.to),
                            vec![e.code.clone()],
                            format!("edge implies generation {implied} for an endpoint already placed at {have}"),
                        );
                    }
                    Some(_) => {}
                }
            }
        }
    }
    (assignment, report)
}

/// Levels for every person named in `paths`.
pub fn assign_generations(
    paths: &[PathRecord],
    reg: &RelationRegistry,
) -> Result<(GenerationAssignment, ConflictReport), AlgebraError> {
    let raw = paths.iter().flat_map(|p| {
        p.persons()
            .windows(2)
            .zip(p.codes())
            .map(|(w, c)| (w[0], w[1], c.clone()))
    });
    let mut edges = prepare_edges(raw, reg)?;
    let persons: BTreeSet<usize> = paths.iter().flat_map(|p| p.persons().iter().copied()).collect();
    Ok(propagate(&persons, &mut edges))
}

/// Multi-code cells: disagreeing glens are a code conflict, agreeing ones a
/// parallel relationship.
pub(crate) fn classify_parallel(
    t: &RelationshipMatrix,
    reg: &RelationRegistry,
    report: &mut ConflictReport,
) -> Result<(), AlgebraError> {
    for ((i, j), codes) in t.cells() {
        if codes.len() < 2 {
            continue;
        }
        let glens: BTreeSet<i64> = codes.iter().map(|c| reg.glen(c)).collect::<Result<_, _>>()?;
        let codes: Vec<RelationCode> = codes.iter().cloned().collect();
        if glens.len() > 1 {
            report.push(
                ConflictKind::CodeConflict,
                (i, j),
                codes,
                "parallel codes disagree on generation",
            );
        } else {
            report.push(
                ConflictKind::ParallelRelationship,
                (i, j),
                codes,
                "multiple relationships recorded",
            );
        }
    }
    Ok(())
}

/// Cross-check one cell pair: every code `b` at `(j, i)` must be an inverse
/// of every code `a` at `(i, j)`.
pub(crate) fn check_pair(
    t: &RelationshipMatrix,
    reg: &RelationRegistry,
    i: usize,
    j: usize,
    report: &mut ConflictReport,
) -> Result<(), AlgebraError> {
    let (Some(forward), Some(backward)) = (t.cell(i, j), t.cell(j, i)) else {
        return Ok(());
    };
    for a in forward {
        let inverses = match reg.invert(a) {
            Ok(set) => set,
            Err(AlgebraError::NotInvertible(s)) => {
                report.push(
                    ConflictKind::NotInvertible,
                    (i, j),
                    vec![a.clone()],
                    format!("symbol {s} has no inverse"),
                );
                continue;
            }
            Err(e) => return Err(e),
        };
        for b in backward {
            if !inverses.contains(b) {
                report.push(
                    ConflictKind::CodeConflict,
                    (i, j),
                    vec![a.clone(), b.clone()],
                    format!("{b} is not an inverse of {a}"),
                );
            }
        }
    }
    Ok(())
}

/// Consistency findings for a relationship matrix: reverse-cell mismatches
/// and multi-code cells.
pub fn check_consistency(t: &RelationshipMatrix, reg: &RelationRegistry) -> Result<ConflictReport, AlgebraError> {
    let mut report = ConflictReport::new();
    classify_parallel(t, reg, &mut report)?;
    for ((i, j), _) in t.cells() {
        if i < j {
            check_pair(t, reg, i, j, &mut report)?;
        }
    }
    Ok(report)
}

/// Every code in every cell becomes an edge; all persons of `t` get a level.
pub fn build_network(t: &RelationshipMatrix, reg: &RelationRegistry) -> Result<FamilyNetwork, AlgebraError> {
    let raw = t
        .cells()
        .flat_map(|((x, y), codes)| codes.iter().map(move |c| (x, y, c.clone())));
    let mut edges = prepare_edges(raw, reg)?;
    let persons: BTreeSet<usize> = (0..t.n()).collect();
    let (generations, gen_report) = propagate(&persons, &mut edges);
    let mut conflicts = ConflictReport::new();
    classify_parallel(t, reg, &mut conflicts)?;
    conflicts.extend(gen_report);
    Ok(FamilyNetwork {
        persons: persons.into_iter().collect(),
        generations,
        edges,
        conflicts,
    })
}
