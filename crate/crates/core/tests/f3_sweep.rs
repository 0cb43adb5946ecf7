//! Exhaustive sweep of PG(2,3): every d-subset of its 13 lines for d <= 6,
//! with incidences computed here from scratch over Z/3.

use std::collections::HashMap;

use num_rational::BigRational;

use harbourne::criteria::Mode;
use harbourne::pipeline::{builtin_certificates, compute_table, DEFAULT_PRIMES};
use harbourne::DEFAULT_NODE_BUDGET;

const P: i64 = 3;

fn normalize(v: [i64; 3]) -> [i64; 3] {
    let v = v.map(|x| x.rem_euclid(P));
    let lead = *v.iter().find(|&&x| x != 0).expect("nonzero");
    // in Z/3 every nonzero element is its own inverse
    v.map(|x| (x * lead).rem_euclid(P))
}

fn lines() -> Vec<[i64; 3]> {
    let mut seen = Vec::new();
    for a in 0..P {
        for b in 0..P {
            for c in 0..P {
                if (a, b, c) != (0, 0, 0) {
                    let n = normalize([a, b, c]);
                    if !seen.contains(&n) {
                        seen.push(n);
                    }
                }
            }
        }
    }
    seen
}

fn meet(l: [i64; 3], m: [i64; 3]) -> [i64; 3] {
    normalize([
        l[1] * m[2] - l[2] * m[1],
        l[2] * m[0] - l[0] * m[2],
        l[0] * m[1] - l[1] * m[0],
    ])
}

fn harbourne(chosen: &[[i64; 3]]) -> BigRational {
    let mut points: HashMap<[i64; 3], Vec<usize>> = HashMap::new();
    for i in 0..chosen.len() {
        for j in i + 1..chosen.len() {
            let e = points.entry(meet(chosen[i], chosen[j])).or_default();
            for k in [i, j] {
                if !e.contains(&k) {
                    e.push(k);
                }
            }
        }
    }
    let d = chosen.len() as i64;
    let sq: i64 = points.values().map(|v| (v.len() * v.len()) as i64).sum();
    BigRational::new((d * d - sq).into(), (points.len() as i64).into())
}

fn min_over_subsets(all: &[[i64; 3]], d: usize) -> (BigRational, usize) {
    let mut best: Option<BigRational> = None;
    let mut count = 0;
    for mask in 0u32..1 << all.len() {
        if mask.count_ones() as usize != d {
            continue;
        }
        count += 1;
        let chosen: Vec<[i64; 3]> = (0..all.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| all[i])
            .collect();
        let h = harbourne(&chosen);
        if best.as_ref().is_none_or(|b| h < *b) {
            best = Some(h);
        }
    }
    (best.unwrap(), count)
}

#[test]
fn plane_has_thirteen_lines() {
    assert_eq!(lines().len(), 13);
}

#[test]
fn sweep_minimum_matches_absolute_table() {
    let all = lines();
    let db = builtin_certificates().unwrap();
    let rows = compute_table(
        6,
        Mode::Absolute,
        &DEFAULT_PRIMES,
        &db,
        DEFAULT_NODE_BUDGET,
        1,
    )
    .unwrap();
    for row in rows {
        let (min, count) = min_over_subsets(&all, row.d);
        let expected_count = (0..row.d).fold(1usize, |acc, i| acc * (13 - i) / (i + 1));
        assert_eq!(count, expected_count);
        assert_eq!(&min, row.value(), "d={}", row.d);
    }
}
