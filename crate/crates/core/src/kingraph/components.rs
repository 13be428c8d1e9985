use std::cmp::Reverse;

use crate::rmatrix::RelationshipMatrix;

/// Connected components of the undirected relationship graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPartition {
    /// Family label per person; labels index into `families`.
    pub component_id: Vec<usize>,
    /// Members in ascending order; families sorted by size descending, then
    /// by least member.
    pub families: Vec<Vec<usize>>,
}

impl FamilyPartition {
    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    pub fn same_family(&self, x: usize, y: usize) -> bool {
        self.component_id[x] == self.component_id[y]
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Families as connected components, ignoring edge direction.
pub fn families(t: &RelationshipMatrix) -> FamilyPartition {
    let n = t.n();
    let mut sets = DisjointSets::new(n);
    for ((x, y), _) in t.cells() {
        sets.union(x, y);
    }
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        let r = sets.find(x);
        by_root[r].push(x);
    }
    let mut families: Vec<Vec<usize>> = by_root.into_iter().filter(|f| !f.is_empty()).collect();
    families.sort_by_key(|f| (Reverse(f.len()), f[0]));
    let mut component_id = vec![0; n];
    for (label, fam) in families.iter().enumerate() {
        for &p in fam {
            component_id[p] = label;
        }
    }
    FamilyPartition { component_id, families }
}
