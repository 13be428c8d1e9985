#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use kinship::*;
use proptest::prelude::*;

#[test]
fn powers_match_walk_enumeration() {
    let mut r = rng(7);
    for trial in 0..20 {
        let t = random_matrix(&mut r, 5, [0.2, 0.4, 0.7][trial % 3]);
        let adj = adjacency(&t);
        let m: WalkCountMatrix = binarize(&t);
        for rho in 1..=4 {
            let p = pow_count(&m, rho).unwrap();
            assert!(!p.is_saturated());
            for x in 0..5 {
                for y in 0..5 {
                    assert_eq!(
                        p.get(x, y),
                        count_walks(&adj, x, y, rho),
                        "trial {trial} rho {rho} ({x},{y})"
                    );
                }
            }
        }
    }
}

#[test]
fn triangle_with_chord_cubed() {
    let reg = RelationRegistry::builtin();
    let t = RelationshipMatrix::from_triples(
        &reg,
        [("1", "2", "B"), ("2", "3", "B"), ("3", "1", "B"), ("1", "3", "B")],
    )
    .unwrap();
    let adj = adjacency(&t);
    let m3 = pow_count(&binarize::<u64>(&t), 3).unwrap();
    let expected: Vec<((usize, usize), u64)> = (0..3)
        .flat_map(|x| (0..3).map(move |y| (x, y)))
        .map(|(x, y)| ((x, y), count_walks(&adj, x, y, 3)))
        .filter(|(_, c)| *c > 0)
        .collect();
    assert_eq!(m3.entries().collect::<Vec<_>>(), expected);
    assert_eq!(
        expected,
        vec![
            ((0, 0), 1),
            ((0, 1), 1),
            ((0, 2), 1),
            ((1, 1), 1),
            ((1, 2), 1),
            ((2, 0), 1),
            ((2, 2), 1)
        ]
    );
}

#[test]
fn path_semiring_agrees_with_count_semiring() {
    let mut r = rng(11);
    for trial in 0..30 {
        let n = 3 + trial % 6;
        let t = random_matrix(&mut r, n, 0.35);
        let m: WalkCountMatrix = binarize(&t);
        let p = PathMatrix::from_relationship(&t);
        for rho in 1..=4 {
            let counts = pow_count(&m, rho).unwrap();
            let paths = pow_paths(&p, rho, 1_000_000).unwrap();
            assert!(!paths.is_truncated());
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(paths.get(x, y).len() as u64, counts.get(x, y));
                    for rec in paths.get(x, y) {
                        assert_eq!((rec.source(), rec.target()), (x, y));
                        assert_eq!(rec.hops(), rho);
                    }
                    let cell = paths.get(x, y);
                    assert!(cell.windows(2).all(|w| w[0].persons() < w[1].persons()));
                }
            }
        }
    }
}

#[test]
fn smallest_power_equals_bfs_distance() {
    let mut r = rng(13);
    for _ in 0..20 {
        let t = random_matrix(&mut r, 8, 0.2);
        let adj = adjacency(&t);
        let m: WalkCountMatrix = binarize(&t);
        for x in 0..8 {
            let dist = bfs(&adj, x);
            for y in 0..8 {
                if x == y {
                    continue;
                }
                let hit = smallest_power_hit(&m, x, y, None).unwrap();
                assert_eq!(hit.as_ref().map(|h| h.sigma), dist[y]);
                if let Some(h) = hit {
                    // witness is a real walk of length sigma and is simple
                    assert_eq!(h.persons.len(), h.sigma + 1);
                    assert!(h.persons.windows(2).all(|w| adj[w[0]][w[1]]));
                    let mut s = h.persons.clone();
                    s.sort();
                    s.dedup();
                    assert_eq!(s.len(), h.persons.len());
                }
            }
        }
    }
}

#[test]
fn relatives_match_power_closure() {
    let mut r = rng(17);
    for _ in 0..20 {
        let t = random_matrix(&mut r, 7, 0.15);
        let closure = closure_by_powering(&adjacency(&t));
        let m: WalkCountMatrix = binarize(&t);
        for x in 0..7 {
            for y in 0..7 {
                if x != y {
                    assert_eq!(are_relatives(&m, x, y).unwrap(), closure[x][y]);
                }
            }
        }
    }
}

#[test]
fn relatives_symmetric_after_symmetrize() {
    let reg = RelationRegistry::builtin();
    let mut r = rng(19);
    for _ in 0..20 {
        let t = random_matrix(&mut r, 9, 0.1);
        let (s, _) = symmetrize(&t, &reg).unwrap();
        let m: WalkCountMatrix = binarize(&s);
        for x in 0..9 {
            for y in 0..9 {
                if x != y {
                    assert_eq!(are_relatives(&m, x, y).unwrap(), are_relatives(&m, y, x).unwrap());
                }
            }
        }
    }
}

#[test]
fn witness_glen_is_sum_of_edge_glens() {
    let reg = RelationRegistry::builtin();
    let mut r = rng(23);
    for _ in 0..20 {
        let t = random_matrix(&mut r, 8, 0.25);
        let m: WalkCountMatrix = binarize(&t);
        for x in 0..8 {
            for y in 0..8 {
                if x == y {
                    continue;
                }
                if let Some(hit) = smallest_power_hit(&m, x, y, None).unwrap() {
                    let rec = t.label_walk(&hit.persons).unwrap();
                    let edge_sum: i64 = rec.codes().map(|c| reg.glen(c).unwrap()).sum();
                    assert_eq!(reg.glen(&rec.composite()).unwrap(), edge_sum);
                    assert_eq!(rec.net_glen(&reg).unwrap(), edge_sum);
                }
            }
        }
    }
}

#[test]
fn products_are_thread_count_independent() {
    let mut r = rng(29);
    let t = random_matrix(&mut r, 60, 0.05);
    let m: WalkCountMatrix = binarize(&t);
    let p = PathMatrix::from_relationship(&t);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| (pow_count(&m, 4).unwrap(), pow_paths(&p, 3, 8).unwrap()))
    };
    assert_eq!(run(1), run(8));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_splits(seed in any::<u64>(), a in 1usize..4, b in 1usize..4) {
        let t = random_matrix(&mut rng(seed), 6, 0.3);
        let m: WalkCountMatrix = binarize(&t);
        let whole = pow_count(&m, a + b).unwrap();
        let split = mul_count(&pow_count(&m, a).unwrap(), &pow_count(&m, b).unwrap()).unwrap();
        prop_assert_eq!(whole, split);
    }
}
