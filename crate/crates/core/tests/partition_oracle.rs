//! Brute-force cross-check of the incidence search for small `d`.
//!
//! The oracle enumerates families of "long" blocks (subsets of size >= 3)
//! that pairwise share at most one element; every pair not covered by a long
//! block becomes a 2-block. That is exactly a linear space on `d` points,
//! i.e. a clique partition of `K_d`, found without any of the pruning or
//! symmetry breaking used by the library.

use std::collections::BTreeSet;

use harbourne::incidence::{feasible_arrangement, validate_partition};
use harbourne::tspace::enumerate_tvectors;
use harbourne::DEFAULT_NODE_BUDGET;

fn long_blocks(d: usize) -> Vec<u32> {
    (0u32..1 << d).filter(|m| m.count_ones() >= 3).collect()
}

fn histograms(d: usize) -> BTreeSet<Vec<u32>> {
    let blocks = long_blocks(d);
    let mut out = BTreeSet::new();
    let mut chosen = Vec::new();
    collect(d, &blocks, 0, &mut chosen, &mut out);
    out
}

fn collect(
    d: usize,
    blocks: &[u32],
    i: usize,
    chosen: &mut Vec<u32>,
    out: &mut BTreeSet<Vec<u32>>,
) {
    if i == blocks.len() {
        let mut counts = vec![0u32; d - 1];
        let mut covered = 0usize;
        for b in chosen.iter() {
            let k = b.count_ones() as usize;
            counts[k - 2] += 1;
            covered += k * (k - 1) / 2;
        }
        counts[0] += (d * (d - 1) / 2 - covered) as u32;
        out.insert(counts);
        return;
    }
    collect(d, blocks, i + 1, chosen, out);
    let b = blocks[i];
    if chosen.iter().all(|c| (c & b).count_ones() <= 1) {
        chosen.push(b);
        collect(d, blocks, i + 1, chosen, out);
        chosen.pop();
    }
}

#[test]
fn oracle_agrees_with_search_up_to_six_lines() {
    for d in 2..=6 {
        let realizable = histograms(d);
        for t in enumerate_tvectors(d, None).unwrap() {
            let outcome = feasible_arrangement(&t, DEFAULT_NODE_BUDGET).unwrap();
            assert!(outcome.exhausted || outcome.is_feasible());
            assert_eq!(
                outcome.is_feasible(),
                realizable.contains(t.counts()),
                "d={d} T={t}"
            );
            if let Some(w) = outcome.witness() {
                assert!(validate_partition(w, &t));
            }
        }
    }
}

#[test]
fn oracle_sanity() {
    // four lines: general, one triple point, pencil
    let h = histograms(4);
    let expect: BTreeSet<Vec<u32>> = [vec![6, 0, 0], vec![3, 1, 0], vec![0, 0, 1]].into();
    assert_eq!(h, expect);
    // seven points: the Fano plane is a linear space with seven 3-blocks
    assert!(histograms(7).contains(&vec![0, 7, 0, 0, 0, 0]));
}
