use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;

use num_traits::{FromPrimitive, Num};

use super::{hop_step, Arc, GraphError, KinGraph};
use crate::rmatrix::PathRecord;

/// Longest path `enumerate_paths` will explore.
pub const MAX_ENUMERATION_EDGES: usize = 12;

/// Scalar for path costs: floats or exact rationals.
pub trait Cost: Num + Copy + PartialOrd + FromPrimitive + fmt::Debug + fmt::Display {}

impl<T> Cost for T where T: Num + Copy + PartialOrd + FromPrimitive + fmt::Debug + fmt::Display {}

/// Per-edge cost model for [`weighted_distance`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric<W> {
    /// Every edge costs 1.
    Hop,
    /// An edge costs the number of primitives in its code.
    KinSteps,
    /// `wg * |glen| + ws * slen`.
    Custom { wg: W, ws: W },
}

impl<W: Cost> Metric<W> {
    fn validate(&self) -> Result<(), GraphError> {
        if let Metric::Custom { wg, ws } = self {
            // also rejects NaN
            let zero = W::zero();
            if !(*wg >= zero && *ws >= zero) {
                return Err(GraphError::NegativeWeight);
            }
        }
        Ok(())
    }

    pub fn arc_cost(&self, arc: &Arc) -> W {
        let lift = |v: u64| W::from_u64(v).expect("cost scalar represents small integers");
        match *self {
            Metric::Hop => W::one(),
            Metric::KinSteps => lift(arc.code.len() as u64),
            Metric::Custom { wg, ws } => wg * lift(arc.glen.unsigned_abs()) + ws * lift(arc.slen),
        }
    }

    /// Cheapest arc among `arcs`; ties keep the earlier (forward, least code) arc.
    fn cheapest<'a>(&self, arcs: &'a [Arc]) -> (W, &'a Arc) {
        let mut best = (self.arc_cost(&arcs[0]), &arcs[0]);
        for arc in &arcs[1..] {
            let c = self.arc_cost(arc);
            if c < best.0 {
                best = (c, arc);
            }
        }
        best
    }
}

/// Fewest-edge path between `x` and `y` in the undirected view, ties broken
/// by the least intermediate person sequence.
pub fn shortest_relationship(g: &KinGraph, x: usize, y: usize) -> Result<Option<PathRecord>, GraphError> {
    g.check_pair(x, y)?;
    // hop distances to y
    let mut dist = vec![usize::MAX; g.n()];
    dist[y] = 0;
    let mut queue = VecDeque::from([y]);
    while let Some(u) = queue.pop_front() {
        if u == x {
            break;
        }
        for (v, _) in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    if dist[x] == usize::MAX {
        return Ok(None);
    }
    let mut persons = vec![x];
    let mut steps = Vec::with_capacity(dist[x]);
    let mut cur = x;
    while cur != y {
        let (next, arcs) = g
            .neighbors(cur)
            .find(|(z, _)| dist[*z] != usize::MAX && dist[*z] + 1 == dist[cur])
            .expect("a neighbor one hop closer exists");
        steps.push(hop_step(&arcs[0], arcs));
        persons.push(next);
        cur = next;
    }
    Ok(Some(PathRecord::new(persons, steps)))
}

struct Label<W> {
    cost: W,
    persons: Vec<usize>,
}

impl<W: Cost> Label<W> {
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.cost
            .partial_cmp(&other.cost)
            .unwrap_or(Ordering::Equal)
            .then_with(|| self.persons.len().cmp(&other.persons.len()))
            .then_with(|| self.persons.cmp(&other.persons))
    }
}

impl<W: Cost> PartialEq for Label<W> {
    fn eq(&self, other: &Self) -> bool {
        self.key_cmp(other) == Ordering::Equal
    }
}

impl<W: Cost> Eq for Label<W> {}

impl<W: Cost> PartialOrd for Label<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Cost> Ord for Label<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key_cmp(other)
    }
}

/// Minimum-cost path under `metric`.
///
/// Among equal-cost paths the one with fewer edges wins, then the least
/// intermediate person sequence. Between two adjacent persons the cheapest
/// arc is used.
pub fn weighted_distance<W: Cost>(
    g: &KinGraph,
    x: usize,
    y: usize,
    metric: &Metric<W>,
) -> Result<Option<(W, PathRecord)>, GraphError> {
    g.check_pair(x, y)?;
    metric.validate()?;

    let mut settled = vec![false; g.n()];
    let mut best: Vec<Option<Label<W>>> = (0..g.n()).map(|_| None).collect();
    let mut heap = BinaryHeap::new();
    heap.push(Reverse(Label {
        cost: W::zero(),
        persons: vec![x],
    }));
    while let Some(Reverse(label)) = heap.pop() {
        let u = *label.persons.last().unwrap();
        if settled[u] {
            continue;
        }
        settled[u] = true;
        if u == y {
            let steps = label
                .persons
                .windows(2)
                .map(|w| {
                    let arcs = g.adjacency[w[0]].get(&w[1]).expect("adjacent");
                    hop_step(metric.cheapest(arcs).1, arcs)
                })
                .collect();
            return Ok(Some((label.cost, PathRecord::new(label.persons, steps))));
        }
        for (v, arcs) in g.neighbors(u) {
            if settled[v] {
                continue;
            }
            let mut persons = label.persons.clone();
            persons.push(v);
            let cand = Label {
                cost: label.cost + metric.cheapest(arcs).0,
                persons,
            };
            let improves = match &best[v] {
                None => true,
                Some(cur) => cand.key_cmp(cur) == Ordering::Less,
            };
            if improves {
                best[v] = Some(Label {
                    cost: cand.cost,
                    persons: cand.persons.clone(),
                });
                heap.push(Reverse(cand));
            }
        }
    }
    Ok(None)
}

/// Every simple path from `x` to `y` with at most `max_edges` edges, ordered
/// by person sequence. Each hop uses the preferred arc (forward first, least
/// code).
pub fn enumerate_paths(g: &KinGraph, x: usize, y: usize, max_edges: usize) -> Result<Vec<PathRecord>, GraphError> {
    g.check_pair(x, y)?;
    if max_edges > MAX_ENUMERATION_EDGES {
        return Err(GraphError::BoundExceeded {
            requested: max_edges,
            max: MAX_ENUMERATION_EDGES,
        });
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n()];
    let mut persons = vec![x];
    on_path[x] = true;
    dfs(g, y, max_edges, &mut on_path, &mut persons, &mut out);
    out.sort_by(PathRecord::path_cmp);
    Ok(out)
}

fn dfs(
    g: &KinGraph,
    target: usize,
    budget: usize,
    on_path: &mut [bool],
    persons: &mut Vec<usize>,
    out: &mut Vec<PathRecord>,
) {
    if budget == 0 {
        return;
    }
    let u = *persons.last().unwrap();
    for (v, _) in g.neighbors(u) {
        if on_path[v] {
            continue;
        }
        persons.push(v);
        if v == target {
            let steps = persons
                .windows(2)
                .map(|w| {
                    let arcs = &g.adjacency[w[0]][&w[1]];
                    hop_step(&arcs[0], arcs)
                })
                .collect();
            out.push(PathRecord::new(persons.clone(), steps));
        } else {
            on_path[v] = true;
            dfs(g, target, budget - 1, on_path, persons, out);
            on_path[v] = false;
        }
        persons.pop();
    }
}
