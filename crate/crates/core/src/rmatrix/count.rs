use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::{PrimInt, Unsigned};
use rayon::prelude::*;

use super::{MatrixError, RelationshipMatrix};

/// Scalar used for walk counts. Arithmetic saturates at `max_value()`.
pub trait WalkCount: PrimInt + Unsigned + Send + Sync + fmt::Debug + fmt::Display {}

impl<T> WalkCount for T where T: PrimInt + Unsigned + Send + Sync + fmt::Debug + fmt::Display {}

/// Sparse matrix of walk counts. Only positive counts are stored.
///
/// `saturated` is sticky: once any count in the lineage of this matrix hit
/// the scalar's maximum, counts are lower bounds rather than exact values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMatrix<C> {
    rows: Vec<BTreeMap<usize, C>>,
    saturated: bool,
}

impl<C: WalkCount> CountMatrix<C> {
    pub fn zeros(n: usize) -> Self {
        CountMatrix {
            rows: vec![BTreeMap::new(); n],
            saturated: false,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for (i, row) in m.rows.iter_mut().enumerate() {
            row.insert(i, C::one());
        }
        m
    }

    /// Zero-valued entries are dropped.
    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = ((usize, usize), C)>) -> Self {
        let mut m = Self::zeros(n);
        for ((x, y), c) in entries {
            if !c.is_zero() {
                m.rows[x].insert(y, c);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, x: usize, y: usize) -> C {
        self.rows[x].get(&y).copied().unwrap_or_else(C::zero)
    }

    pub fn row(&self, x: usize) -> &BTreeMap<usize, C> {
        &self.rows[x]
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), C)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |(&y, &c)| ((x, y), c)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    fn check(&self, index: usize) -> Result<(), MatrixError> {
        if index < self.n() {
            Ok(())
        } else {
            Err(MatrixError::PersonOutOfRange { index, n: self.n() })
        }
    }
}

/// 0/1 projection: a 1 exactly where the relationship matrix has a cell.
pub fn binarize<C: WalkCount>(t: &RelationshipMatrix) -> CountMatrix<C> {
    CountMatrix::from_entries(t.n(), t.cells().map(|(k, _)| (k, C::one())))
}

fn add_sat<C: WalkCount>(a: C, b: C, sat: &mut bool) -> C {
    a.checked_add(&b).unwrap_or_else(|| {
        *sat = true;
        C::max_value()
    })
}

fn mul_sat<C: WalkCount>(a: C, b: C, sat: &mut bool) -> C {
    a.checked_mul(&b).unwrap_or_else(|| {
        *sat = true;
        C::max_value()
    })
}

/// `result(x, y) = Σ_z a(x, z) · b(z, y)`, rows computed in parallel.
///
/// All terms are non-negative, so saturating accumulation yields
/// `min(max, exact)` whatever the summation order.
pub fn mul_count<C: WalkCount>(a: &CountMatrix<C>, b: &CountMatrix<C>) -> Result<CountMatrix<C>, MatrixError> {
    if a.n() != b.n() {
        return Err(MatrixError::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let rows: Vec<(BTreeMap<usize, C>, bool)> = a
        .rows
        .par_iter()
        .map(|arow| {
            let mut sat = false;
            let mut out: BTreeMap<usize, C> = BTreeMap::new();
            for (&z, &az) in arow {
                for (&y, &bzy) in &b.rows[z] {
                    let term = mul_sat(az, bzy, &mut sat);
                    let slot = out.entry(y).or_insert_with(C::zero);
                    *slot = add_sat(*slot, term, &mut sat);
                }
            }
            (out, sat)
        })
        .collect();
    let saturated = a.saturated || b.saturated || rows.iter().any(|(_, s)| *s);
    Ok(CountMatrix {
        rows: rows.into_iter().map(|(r, _)| r).collect(),
        saturated,
    })
}

/// `m^rho` by repeated right multiplication; counts directed `rho`-step walks.
pub fn pow_count<C: WalkCount>(m: &CountMatrix<C>, rho: usize) -> Result<CountMatrix<C>, MatrixError> {
    if rho == 0 {
        return Err(MatrixError::ZeroPower);
    }
    let mut acc = m.clone();
    for _ in 1..rho {
        acc = mul_count(&acc, m)?;
    }
    Ok(acc)
}

/// Result of a smallest-power query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerHit {
    /// Smallest power with a positive `(x, y)` entry.
    pub sigma: usize,
    /// Lexicographically least walk of length `sigma`, endpoints included.
    pub persons: Vec<usize>,
}

impl PowerHit {
    pub fn intermediates(&self) -> &[usize] {
        &self.persons[1..self.persons.len() - 1]
    }
}

fn row_times<C: WalkCount>(v: &BTreeMap<usize, C>, m: &CountMatrix<C>) -> BTreeMap<usize, C> {
    let mut sat = false;
    let mut out: BTreeMap<usize, C> = BTreeMap::new();
    for (&z, &vz) in v {
        for (&y, &mzy) in &m.rows[z] {
            let slot = out.entry(y).or_insert_with(C::zero);
            *slot = add_sat(*slot, mul_sat(vz, mzy, &mut sat), &mut sat);
        }
    }
    out
}

/// Smallest `sigma <= max_rho` with `m^sigma(x, y) > 0`, plus a witness walk.
///
/// Row `x` of successive powers is formed as `e_x · m^k`. The witness is
/// chosen greedily from `x`, taking the least successor that can still reach
/// `y` in the remaining number of steps. Because `sigma` is minimal the
/// witness is a simple path. `max_rho` defaults to `n - 1`.
pub fn smallest_power_hit<C: WalkCount>(
    m: &CountMatrix<C>,
    x: usize,
    y: usize,
    max_rho: Option<usize>,
) -> Result<Option<PowerHit>, MatrixError> {
    m.check(x)?;
    m.check(y)?;
    if x == y {
        return Err(MatrixError::SelfRelationship(x));
    }
    let max_rho = max_rho.unwrap_or(m.n().saturating_sub(1));
    if max_rho == 0 {
        return Err(MatrixError::ZeroPower);
    }

    let mut row: BTreeMap<usize, C> = BTreeMap::from([(x, C::one())]);
    let mut sigma = None;
    for k in 1..=max_rho {
        row = row_times(&row, m);
        if row.is_empty() {
            break;
        }
        if row.contains_key(&y) {
            sigma = Some(k);
            break;
        }
    }
    let Some(sigma) = sigma else {
        return Ok(None);
    };

    // reach[j][z]: z reaches y in exactly j steps
    let n = m.n();
    let mut reach = vec![vec![false; n]; sigma];
    reach[0][y] = true;
    for j in 1..sigma {
        let (done, todo) = reach.split_at_mut(j);
        for (z, row) in m.rows.iter().enumerate() {
            todo[0][z] = row.keys().any(|&w| done[j - 1][w]);
        }
    }
    let mut persons = Vec::with_capacity(sigma + 1);
    persons.push(x);
    let mut cur = x;
    for step in 1..sigma {
        let need = &reach[sigma - step];
        cur = *m.rows[cur]
            .keys()
            .find(|&&z| need[z])
            .expect("positive power entry implies a continuing walk");
        persons.push(cur);
    }
    persons.push(y);
    Ok(Some(PowerHit { sigma, persons }))
}

/// Whether `y` is reachable from `x` along directed edges of `m`.
pub fn are_relatives<C: WalkCount>(m: &CountMatrix<C>, x: usize, y: usize) -> Result<bool, MatrixError> {
    m.check(x)?;
    m.check(y)?;
    if x == y {
        return Err(MatrixError::SelfRelationship(x));
    }
    let mut seen = vec![false; m.n()];
    let mut queue = VecDeque::from([x]);
    seen[x] = true;
    while let Some(u) = queue.pop_front() {
        for &v in m.rows[u].keys() {
            if v == y {
                return Ok(true);
            }
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    Ok(false)
}
