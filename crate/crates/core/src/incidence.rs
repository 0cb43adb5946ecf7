//! Field-independent feasibility of a T-vector.
//!
//! Lines are vertices of `K_d` and singular points are cliques; a combinatorial
//! arrangement with histogram `T` is exactly a partition of the edges of `K_d`
//! into `t_k` cliques of size `k` for every `k`. The search below decides
//! whether such a partition exists.
//!
//! The search always extends the lexicographically first uncovered pair
//! `(i, j)`. Every clique that can contain it lies in `{i, j} ∪ {x > j}`, so
//! each partition is generated at most once. Lines that no placed clique
//! touches are interchangeable, and only the smallest of them are ever offered
//! to a new clique.

use serde::{Deserialize, Serialize};

use crate::error::SearchError;
use crate::tspace::TVector;

/// Abstract arrangement: one clique of line indices per singular point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliquePartition {
    pub d: usize,
    pub points: Vec<Vec<usize>>,
}

impl CliquePartition {
    /// Clique-size histogram, if it is a valid T-vector.
    pub fn tvector(&self) -> Option<TVector> {
        TVector::from_multiplicities(self.d, self.points.iter().map(Vec::len)).ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum SearchResult {
    Feasible { witness: CliquePartition },
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    #[serde(flatten)]
    pub result: SearchResult,
    pub nodes_explored: u64,
    pub exhausted: bool,
}

impl SearchOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self.result, SearchResult::Feasible { .. })
    }

    pub fn witness(&self) -> Option<&CliquePartition> {
        match &self.result {
            SearchResult::Feasible { witness } => Some(witness),
            SearchResult::Infeasible => None,
        }
    }
}

/// Independent checker for a claimed partition against `t`.
pub fn validate_partition(p: &CliquePartition, t: &TVector) -> bool {
    let d = p.d;
    if d != t.d() {
        return false;
    }
    let mut cover = vec![vec![0u32; d]; d];
    for clique in &p.points {
        if clique.len() < 2 || clique.iter().any(|&x| x >= d) {
            return false;
        }
        for (a, &x) in clique.iter().enumerate() {
            for &y in &clique[a + 1..] {
                if x == y {
                    return false;
                }
                cover[x.min(y)][x.max(y)] += 1;
            }
        }
    }
    let pairs_exact = (0..d).all(|i| (i + 1..d).all(|j| cover[i][j] == 1));
    let meets_once = p.points.iter().enumerate().all(|(a, ca)| {
        p.points[a + 1..]
            .iter()
            .all(|cb| ca.iter().filter(|x| cb.contains(x)).count() <= 1)
    });
    pairs_exact && meets_once && p.tvector().as_ref() == Some(t)
}

/// Decides whether `t` has a clique-partition witness.
///
/// Exceeding `node_budget` is reported as an error: an `Infeasible` outcome
/// always means the whole search tree was exhausted.
pub fn feasible_arrangement(t: &TVector, node_budget: u64) -> Result<SearchOutcome, SearchError> {
    let d = t.d();
    assert!(d <= 32, "incidence search supports at most 32 lines");
    let mut search = Search::new(t, node_budget);
    let found = search.run()?;
    let result = if found {
        let mut points: Vec<Vec<usize>> = search
            .cliques
            .iter()
            .map(|&mask| (0..d).filter(|&x| mask >> x & 1 == 1).collect())
            .collect();
        points.sort();
        SearchResult::Feasible {
            witness: CliquePartition { d, points },
        }
    } else {
        SearchResult::Infeasible
    };
    Ok(SearchOutcome {
        result,
        nodes_explored: search.nodes,
        exhausted: !found,
    })
}

struct Search {
    d: usize,
    s: usize,
    full: u32,
    // covered[i]: lines j with pair {i, j} already inside a clique
    covered: Vec<u32>,
    // remaining[k]: cliques of size k still to place
    remaining: Vec<u32>,
    cliques: Vec<u32>,
    nodes: u64,
    budget: u64,
}

impl Search {
    fn new(t: &TVector, budget: u64) -> Self {
        let d = t.d();
        let full = if d == 32 { u32::MAX } else { (1u32 << d) - 1 };
        Search {
            d,
            s: t.s() as usize,
            full,
            covered: vec![0; d],
            remaining: (0..=d).map(|k| t.t(k)).collect(),
            cliques: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    fn run(&mut self) -> Result<bool, SearchError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SearchError::BudgetExceeded {
                budget: self.budget,
            });
        }
        let Some((i, j)) = self.first_uncovered() else {
            return Ok(true);
        };
        if !self.degrees_reachable() {
            return Ok(false);
        }

        let mut cands = 0u32;
        let blocked = self.covered[i] | self.covered[j];
        for x in j + 1..self.d {
            if blocked >> x & 1 == 0 {
                cands |= 1 << x;
            }
        }
        let fresh: Vec<usize> = (j + 1..self.d)
            .filter(|&x| cands >> x & 1 == 1 && self.covered[x] == 0)
            .collect();
        let base = (1u32 << i) | (1u32 << j);

        for k in (2..=self.d).rev() {
            if self.remaining[k] == 0 || (k - 2) as u32 > cands.count_ones() {
                continue;
            }
            if self.extend(base, cands, &fresh, j + 1, k - 2, k)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Picks `need` more members from `cands` (indices ≥ `from`) to complete a
    /// clique of size `k` containing `members`.
    fn extend(
        &mut self,
        members: u32,
        cands: u32,
        fresh: &[usize],
        from: usize,
        need: usize,
        k: usize,
    ) -> Result<bool, SearchError> {
        if need == 0 {
            return self.place(members, k);
        }
        for x in from..self.d {
            if cands >> x & 1 == 0 {
                continue;
            }
            if (cands >> x).count_ones() < need as u32 {
                break;
            }
            // fresh lines are interchangeable: only take them in order
            if let Some(pos) = fresh.iter().position(|&f| f == x) {
                if fresh[..pos].iter().any(|&f| members >> f & 1 == 0) {
                    continue;
                }
            }
            if self.covered[x] & members != 0 {
                continue;
            }
            if self.extend(members | (1 << x), cands, fresh, x + 1, need - 1, k)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn place(&mut self, members: u32, k: usize) -> Result<bool, SearchError> {
        if !self.pencils_compatible(members, k) {
            return Ok(false);
        }
        self.remaining[k] -= 1;
        self.cliques.push(members);
        for x in 0..self.d {
            if members >> x & 1 == 1 {
                self.covered[x] |= members & !(1 << x);
            }
        }
        if self.run()? {
            return Ok(true);
        }
        for x in 0..self.d {
            if members >> x & 1 == 1 {
                self.covered[x] &= !(members & !(1 << x));
            }
        }
        self.cliques.pop();
        self.remaining[k] += 1;
        Ok(false)
    }

    /// Two points of sizes `a`, `b` force `ab + 2` singular points, or
    /// `(a−1)(b−1) + 2` when they share a line.
    fn pencils_compatible(&self, members: u32, k: usize) -> bool {
        self.cliques.iter().all(|&other| {
            let b = other.count_ones() as usize;
            let need = if other & members != 0 {
                (k - 1) * (b - 1) + 2
            } else {
                k * b + 2
            };
            need <= self.s
        })
    }

    fn first_uncovered(&self) -> Option<(usize, usize)> {
        for i in 0..self.d {
            let open = self.full & !self.covered[i] & !(1 << i);
            let above = open >> (i + 1);
            if above != 0 {
                return Some((i, i + 1 + above.trailing_zeros() as usize));
            }
        }
        None
    }

    /// Every line's uncovered degree must be a sum of `(k − 1)` over cliques
    /// still available.
    fn degrees_reachable(&self) -> bool {
        let cap = self.d;
        let mut reach = vec![false; cap];
        reach[0] = true;
        for k in 2..=self.d {
            let step = k - 1;
            for _ in 0..self.remaining[k] {
                let mut changed = false;
                for v in (step..cap).rev() {
                    if reach[v - step] && !reach[v] {
                        reach[v] = true;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
        }
        (0..self.d).all(|x| {
            let open = (self.full & !self.covered[x] & !(1 << x)).count_ones() as usize;
            reach[open]
        })
    }
}
