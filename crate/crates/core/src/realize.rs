//! Exhaustive search for configurations with a prescribed T-vector inside
//! `PG(2, p)`.
//!
//! Candidate line sets are visited in lexicographic order of line indices.
//! Adding a line never lowers a point's multiplicity, so the number of points
//! of multiplicity at least `k` can only grow; a partial set is abandoned as
//! soon as that number exceeds `Σ_{j≥k} t_j`.

use crate::error::GeometryError;
use crate::geometry::{LineConfiguration, PlaneIncidence};
use crate::tspace::TVector;

#[derive(Clone, Debug)]
pub enum RealizeOutcome {
    Found {
        configuration: LineConfiguration,
        /// Indices into the plane's line list.
        line_indices: Vec<usize>,
        nodes: u64,
    },
    /// `exhausted` is true only when the whole tree was searched.
    NotFound { exhausted: bool, nodes: u64 },
}

impl RealizeOutcome {
    pub fn configuration(&self) -> Option<&LineConfiguration> {
        match self {
            RealizeOutcome::Found { configuration, .. } => Some(configuration),
            RealizeOutcome::NotFound { .. } => None,
        }
    }

    pub fn is_exhausted_negative(&self) -> bool {
        matches!(
            self,
            RealizeOutcome::NotFound {
                exhausted: true,
                ..
            }
        )
    }

    pub fn nodes(&self) -> u64 {
        match self {
            RealizeOutcome::Found { nodes, .. } | RealizeOutcome::NotFound { nodes, .. } => *nodes,
        }
    }
}

/// First `d`-subset of the lines of `PG(2, p)`, in lexicographic order, whose
/// singular points have histogram `t`.
pub fn realize_over_prime_field(
    t: &TVector,
    p: u32,
    node_budget: u64,
) -> Result<RealizeOutcome, GeometryError> {
    let plane = PlaneIncidence::new(p)?;
    realize_in_plane(t, &plane, node_budget)
}

pub fn realize_in_plane(
    t: &TVector,
    plane: &PlaneIncidence,
    node_budget: u64,
) -> Result<RealizeOutcome, GeometryError> {
    let d = t.d();
    let n = plane.lines.len();
    if d > n {
        return Err(GeometryError::TooManyLines {
            d,
            p: plane.p,
            available: n,
        });
    }
    let mut bound_ge = vec![0u32; d + 2];
    for k in (2..=d).rev() {
        bound_ge[k] = bound_ge[k + 1] + t.t(k);
    }
    let mut search = SubsetSearch {
        plane,
        d,
        bound_ge,
        mult: vec![0; n],
        count_ge: vec![0; d + 2],
        chosen: Vec::with_capacity(d),
        nodes: 0,
        budget: node_budget,
    };
    let found = search.descend(0);
    let nodes = search.nodes;
    match found {
        Some(true) => {
            let lines = search
                .chosen
                .iter()
                .map(|&i| plane.lines[i].clone())
                .collect();
            let configuration = LineConfiguration::new(plane.field(), lines)?;
            Ok(RealizeOutcome::Found {
                configuration,
                line_indices: search.chosen,
                nodes,
            })
        }
        Some(false) => Ok(RealizeOutcome::NotFound {
            exhausted: true,
            nodes,
        }),
        None => Ok(RealizeOutcome::NotFound {
            exhausted: false,
            nodes,
        }),
    }
}

struct SubsetSearch<'a> {
    plane: &'a PlaneIncidence,
    d: usize,
    bound_ge: Vec<u32>,
    // mult[q]: chosen lines through point q
    mult: Vec<usize>,
    // count_ge[k]: points with mult >= k
    count_ge: Vec<u32>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl SubsetSearch<'_> {
    /// `None` when the budget ran out.
    fn descend(&mut self, start: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        if self.chosen.len() == self.d {
            return Some((2..=self.d).all(|k| self.count_ge[k] == self.bound_ge[k]));
        }
        let n = self.plane.lines.len();
        let last = n - (self.d - self.chosen.len());
        for l in start..=last {
            if self.add(l) && self.descend(l + 1)? {
                return Some(true);
            }
            self.remove(l);
        }
        Some(false)
    }

    fn add(&mut self, l: usize) -> bool {
        self.chosen.push(l);
        let mut ok = true;
        for &q in &self.plane.points_on[l] {
            self.mult[q] += 1;
            let m = self.mult[q];
            if m >= 2 {
                self.count_ge[m] += 1;
                if self.count_ge[m] > self.bound_ge[m] {
                    ok = false;
                }
            }
        }
        ok
    }

    fn remove(&mut self, l: usize) {
        for &q in &self.plane.points_on[l] {
            let m = self.mult[q];
            if m >= 2 {
                self.count_ge[m] -= 1;
            }
            self.mult[q] -= 1;
        }
        self.chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: u64 = 1_000_000_000;

    fn tv(d: usize, pairs: &[(usize, u32)]) -> TVector {
        TVector::from_pairs(d, pairs).unwrap()
    }

    #[test]
    fn fano_in_f2_is_the_whole_plane() {
        let out = realize_over_prime_field(&tv(7, &[(3, 7)]), 2, BUDGET).unwrap();
        match out {
            RealizeOutcome::Found {
                configuration,
                line_indices,
                ..
            } => {
                assert_eq!(line_indices, (0..7).collect::<Vec<_>>());
                assert_eq!(configuration.tvector(), tv(7, &[(3, 7)]));
            }
            other => panic!("expected Fano plane, got {other:?}"),
        }
    }

    #[test]
    fn fano_absent_from_f3() {
        let out = realize_over_prime_field(&tv(7, &[(3, 7)]), 3, BUDGET).unwrap();
        assert!(out.is_exhausted_negative());
    }

    #[test]
    fn f3_realizations() {
        let t9 = tv(9, &[(3, 12)]);
        let out = realize_over_prime_field(&t9, 3, BUDGET).unwrap();
        let c = out.configuration().unwrap();
        assert_eq!(c.tvector(), t9);
        // the four lines left out are concurrent
        let all = crate::geometry::plane_lines(3).unwrap();
        let missing: Vec<_> = all
            .iter()
            .filter(|l| !c.lines().contains(l))
            .cloned()
            .collect();
        assert_eq!(missing.len(), 4);
        let meet = missing[0].cross(&missing[1]).unwrap().unwrap();
        assert!(missing.iter().all(|l| l.incident(&meet).unwrap()));

        let t10 = tv(10, &[(3, 9), (4, 3)]);
        let out = realize_over_prime_field(&t10, 3, BUDGET).unwrap();
        assert_eq!(out.configuration().unwrap().tvector(), t10);
    }

    #[test]
    fn too_many_lines() {
        let err = realize_over_prime_field(&TVector::general_position(8).unwrap(), 2, BUDGET)
            .unwrap_err();
        assert!(matches!(
            err,
            GeometryError::TooManyLines {
                d: 8,
                p: 2,
                available: 7
            }
        ));
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let out = realize_over_prime_field(&tv(7, &[(3, 7)]), 3, 10).unwrap();
        assert!(matches!(
            out,
            RealizeOutcome::NotFound {
                exhausted: false,
                ..
            }
        ));
    }
}
