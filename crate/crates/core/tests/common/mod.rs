//! Fixture generators and brute-force oracles shared by the integration tests.
//! Nothing here calls into the algorithms it is used to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use kinship::{RelationCode, RelationRegistry, RelationshipMatrix};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn code(s: &str) -> RelationCode {
    s.parse().unwrap()
}

pub const ALPHABET: [&str; 8] = ["F", "M", "S", "D", "H", "W", "B", "Z"];

/// Random directed relationship matrix over ids "1".."n": each off-diagonal
/// ordered pair is occupied with probability `density`, holding one random
/// code of 1..=3 primitives.
pub fn random_matrix(rng: &mut impl Rng, n: usize, density: f64) -> RelationshipMatrix {
    let mut t = RelationshipMatrix::with_persons(n);
    let reg = RelationRegistry::builtin();
    for x in 0..n {
        for y in 0..n {
            if x != y && rng.gen_bool(density) {
                let len = rng.gen_range(1..=3);
                let s: String = (0..len).map(|_| *ALPHABET.choose(rng).unwrap()).collect();
                t.insert(x, y, reg.parse(&s).unwrap()).unwrap();
            }
        }
    }
    t
}

/// Dense 0/1 adjacency of the occupied cells.
pub fn adjacency(t: &RelationshipMatrix) -> Vec<Vec<bool>> {
    let n = t.n();
    let mut a = vec![vec![false; n]; n];
    for ((x, y), _) in t.cells() {
        a[x][y] = true;
    }
    a
}

/// Number of directed walks with exactly `len` edges from `x` to `y`, by
/// exhaustive depth-first enumeration.
pub fn count_walks(adj: &[Vec<bool>], x: usize, y: usize, len: usize) -> u64 {
    if len == 0 {
        return (x == y) as u64;
    }
    (0..adj.len())
        .filter(|&z| adj[x][z])
        .map(|z| count_walks(adj, z, y, len - 1))
        .sum()
}

/// `⋁_{ρ=1}^{n-1} A^ρ` with dense boolean products.
pub fn closure_by_powering(adj: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = adj.len();
    let mut power = adj.to_vec();
    let mut acc = adj.to_vec();
    for _ in 2..n {
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for k in 0..n {
                if power[i][k] {
                    for j in 0..n {
                        next[i][j] |= adj[k][j];
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                acc[i][j] |= next[i][j];
            }
        }
        power = next;
    }
    acc
}

/// Directed BFS hop distances from `x`.
pub fn bfs(adj: &[Vec<bool>], x: usize) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut dist = vec![None; n];
    dist[x] = Some(0);
    let mut q = VecDeque::from([x]);
    while let Some(u) = q.pop_front() {
        for v in 0..n {
            if adj[u][v] && dist[v].is_none() {
                dist[v] = Some(dist[u].unwrap() + 1);
                q.push_back(v);
            }
        }
    }
    dist
}

/// Undirected version of `adj`.
pub fn undirected(adj: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = adj.len();
    let mut u = adj.to_vec();
    for i in 0..n {
        for j in 0..n {
            u[i][j] |= adj[j][i];
        }
    }
    u
}

/// Quick-find union-find: every union relabels one whole class.
pub struct NaiveUnionFind {
    label: Vec<usize>,
}

impl NaiveUnionFind {
    pub fn new(n: usize) -> Self {
        NaiveUnionFind {
            label: (0..n).collect(),
        }
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (la, lb) = (self.label[a], self.label[b]);
        if la != lb {
            for l in &mut self.label {
                if *l == lb {
                    *l = la;
                }
            }
        }
    }

    /// Classes as sorted member lists, sorted by least member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut by: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (p, &l) in self.label.iter().enumerate() {
            by.entry(l).or_default().push(p);
        }
        let mut v: Vec<Vec<usize>> = by.into_values().collect();
        v.sort_by_key(|c| c[0]);
        v
    }
}

/// Every simple path `x -> y` in an undirected graph given by per-pair arc
/// costs, returning the minimum total cost. `cost[u][v]` is `None` when the
/// persons are not adjacent.
pub fn min_cost_by_enumeration(cost: &[Vec<Option<f64>>], x: usize, y: usize) -> Option<f64> {
    fn go(cost: &[Vec<Option<f64>>], u: usize, y: usize, seen: &mut [bool], acc: f64, best: &mut Option<f64>) {
        if u == y {
            if best.is_none_or(|b| acc < b) {
                *best = Some(acc);
            }
            return;
        }
        for v in 0..cost.len() {
            if let Some(c) = cost[u][v] {
                if !seen[v] {
                    seen[v] = true;
                    go(cost, v, y, seen, acc + c, best);
                    seen[v] = false;
                }
            }
        }
    }
    let mut seen = vec![false; cost.len()];
    seen[x] = true;
    let mut best = None;
    go(cost, x, y, &mut seen, 0.0, &mut best);
    best
}

/// Whether integer levels in `-range..=range` exist satisfying
/// `level(to) - level(from) = -glen` for every edge, by exhaustive search
/// with `level(0) = 0`.
pub fn levels_satisfiable(n: usize, edges: &[(usize, usize, i64)], range: i64) -> bool {
    fn go(i: usize, n: usize, levels: &mut Vec<i64>, edges: &[(usize, usize, i64)], range: i64) -> bool {
        if i == n {
            return edges.iter().all(|&(a, b, g)| levels[b] - levels[a] == -g);
        }
        // prune: check edges whose endpoints are both assigned
        for l in -range..=range {
            levels.push(l);
            let ok = edges
                .iter()
                .filter(|&&(a, b, _)| a <= i && b <= i)
                .all(|&(a, b, g)| levels[b] - levels[a] == -g);
            if ok && go(i + 1, n, levels, edges, range) {
                return true;
            }
            levels.pop();
        }
        false
    }
    if n == 0 {
        return true;
    }
    let mut levels = vec![0];
    go(1, n, &mut levels, edges, range)
}

/// A consistent random family: a random tree over `n` persons where each
/// tree edge gets a code matching random generation levels.
/// Returns the triples `(ego, alter, code)` with dense indices.
pub fn random_consistent_tree(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize, RelationCode)> {
    let reg = RelationRegistry::builtin();
    let pick = |rng: &mut dyn RngCore, glen: i64| {
        let choices: &[&str] = match glen {
            1 => &["F", "M"],
            -1 => &["S", "D"],
            _ => &["H", "W", "B", "Z"],
        };
        reg.parse(choices[rng.gen_range(0..choices.len())]).unwrap()
    };
    let mut edges = Vec::new();
    for child in 1..n {
        let parent = rng.gen_range(0..child);
        let glen: i64 = rng.gen_range(-1..=1);
        if rng.gen_bool(0.5) {
            edges.push((parent, child, pick(rng, glen)));
        } else {
            edges.push((child, parent, pick(rng, -glen)));
        }
    }
    edges
}

/// glen from the built-in table.
pub fn glen_of(c: &RelationCode) -> i64 {
    c.steps()
        .map(|s| match s {
            'F' | 'M' => 1,
            'S' | 'D' => -1,
            _ => 0,
        })
        .sum()
}

/// Levels implied by a tree's edges, with person 0 at 0.
pub fn tree_levels(n: usize, edges: &[(usize, usize, RelationCode)]) -> Vec<i64> {
    let mut level = vec![None; n];
    level[0] = Some(0i64);
    while level.iter().any(Option::is_none) {
        for (a, b, c) in edges {
            match (level[*a], level[*b]) {
                (Some(la), None) => level[*b] = Some(la - glen_of(c)),
                (None, Some(lb)) => level[*a] = Some(lb + glen_of(c)),
                _ => {}
            }
        }
    }
    level.into_iter().map(Option::unwrap).collect()
}

/// Random code with the given glen, from a fixed table.
pub fn code_with_glen(r: &mut impl Rng, glen: i64) -> RelationCode {
    let choices: &[&str] = match glen {
        1 => &["F", "M"],
        -1 => &["S", "D"],
        0 => &["H", "W", "B", "Z"],
        2 => &["FF", "MF"],
        -2 => &["SS", "DS"],
        _ => &["FFF"],
    };
    code(choices.choose(r).unwrap())
}

/// Matrix over ids "1".."n" holding exactly the given edges.
pub fn matrix_from(n: usize, edges: &[(usize, usize, RelationCode)]) -> RelationshipMatrix {
    let mut t = RelationshipMatrix::with_persons(n);
    for (a, b, c) in edges {
        t.insert(*a, *b, c.clone()).unwrap();
    }
    t
}
