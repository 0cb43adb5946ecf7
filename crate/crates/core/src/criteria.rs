//! Necessary conditions on a T-vector, each a cheap filter that either lets the
//! candidate through or excludes it with an instantiated witness.
//!
//! None of these filters is sufficient; a candidate that passes everything
//! still has to be decided by [`crate::incidence`].

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::exactnum::format_rational;
use crate::tspace::{binom2, TVector};

/// Which table is being computed: minimum over all fields, or over `C` only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Absolute,
    Complex,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Absolute => "absolute",
            Mode::Complex => "complex",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    MultiplicitySum,
    TwoPencils,
    ParityProfile,
    Hirzebruch,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::MultiplicitySum => "multiplicity_sum",
            Criterion::TwoPencils => "two_pencils",
            Criterion::ParityProfile => "parity_profile",
            Criterion::Hirzebruch => "hirzebruch",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Excluded,
}

/// Outcome of one filter, or of the whole filter chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionVerdict {
    pub status: Status,
    pub criterion: Option<Criterion>,
    pub detail: String,
}

impl ExclusionVerdict {
    fn passed(criterion: Criterion, detail: impl Into<String>) -> Self {
        ExclusionVerdict {
            status: Status::Passed,
            criterion: Some(criterion),
            detail: detail.into(),
        }
    }

    fn excluded(criterion: Criterion, detail: impl Into<String>) -> Self {
        ExclusionVerdict {
            status: Status::Excluded,
            criterion: Some(criterion),
            detail: detail.into(),
        }
    }

    pub fn is_excluded(&self) -> bool {
        self.status == Status::Excluded
    }
}

/// The `r` largest multiplicities must sum to at most `d + C(r,2)`.
pub fn multiplicity_sum_filter(t: &TVector) -> ExclusionVerdict {
    let d = t.d();
    let mults = t.multiplicities();
    let mut sum = 0usize;
    for (i, &m) in mults.iter().take(d).enumerate() {
        let r = i + 1;
        sum += m;
        let bound = d as u64 + binom2(r);
        if sum as u64 > bound {
            let terms: Vec<String> = mults[..r].iter().map(usize::to_string).collect();
            return ExclusionVerdict::excluded(
                Criterion::MultiplicitySum,
                format!(
                    "r={r}: {} = {sum} > d + C({r},2) = {bound}",
                    terms.join("+")
                ),
            );
        }
    }
    ExclusionVerdict::passed(Criterion::MultiplicitySum, "all prefix sums within bound")
}

/// `(m_1 − 1)(m_2 − 1) + 2 ≤ s` for the two largest multiplicities.
///
/// This is the weaker of the two cases (the points share a line), so it is a
/// valid necessary condition whether or not they do.
pub fn two_pencils_filter(t: &TVector) -> ExclusionVerdict {
    let s = t.s() as usize;
    let mults = t.multiplicities();
    if s < 2 {
        return ExclusionVerdict::passed(Criterion::TwoPencils, "vacuous: s < 2");
    }
    let (m1, m2) = (mults[0], mults[1]);
    let need = (m1 - 1) * (m2 - 1) + 2;
    if need > s {
        ExclusionVerdict::excluded(
            Criterion::TwoPencils,
            format!(
                "m1={m1}, m2={m2}: ({})({})+2 = {need} > s = {s}",
                m1 - 1,
                m2 - 1
            ),
        )
    } else {
        ExclusionVerdict::passed(
            Criterion::TwoPencils,
            format!("({})({})+2 = {need} <= s = {s}", m1 - 1, m2 - 1),
        )
    }
}

/// Multiset of point multiplicities met by one line, as `multiplicity → count`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineProfile {
    pub parts: BTreeMap<usize, u32>,
}

impl LineProfile {
    pub fn count(&self, m: usize) -> u32 {
        self.parts.get(&m).copied().unwrap_or(0)
    }
}

impl fmt::Display for LineProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .parts
            .iter()
            .rev()
            .flat_map(|(m, &c)| std::iter::repeat_n(m.to_string(), c as usize))
            .collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Every way a single line can meet the singular points of `t`: multisets of
/// available multiplicities with `Σ (m − 1) = d − 1`, using at most `t_m`
/// points of multiplicity `m`.
pub fn line_profiles(t: &TVector) -> Vec<LineProfile> {
    let avail: Vec<usize> = (2..=t.d()).rev().filter(|&k| t.t(k) > 0).collect();
    let mut out = Vec::new();
    let mut current = BTreeMap::new();
    collect_profiles(t, &avail, 0, t.d() - 1, &mut current, &mut out);
    out
}

fn collect_profiles(
    t: &TVector,
    avail: &[usize],
    idx: usize,
    remaining: usize,
    current: &mut BTreeMap<usize, u32>,
    out: &mut Vec<LineProfile>,
) {
    if remaining == 0 {
        out.push(LineProfile {
            parts: current.clone(),
        });
        return;
    }
    let Some(&m) = avail.get(idx) else {
        return;
    };
    let max = ((remaining / (m - 1)) as u32).min(t.t(m));
    for c in (0..=max).rev() {
        if c > 0 {
            current.insert(m, c);
        } else {
            current.remove(&m);
        }
        collect_profiles(
            t,
            avail,
            idx + 1,
            remaining - c as usize * (m - 1),
            current,
            out,
        );
    }
    current.remove(&m);
}

/// Per-line parity: each line's points account for exactly `d − 1` other lines,
/// and some assignment of profiles to the `d` lines must reproduce all
/// `m·t_m` point-line incidences.
pub fn parity_profile_filter(t: &TVector) -> ExclusionVerdict {
    let d = t.d();
    let profiles = line_profiles(t);
    if profiles.is_empty() {
        let avail: Vec<String> = (2..=d)
            .filter(|&k| t.t(k) > 0)
            .map(|k| (k - 1).to_string())
            .collect();
        return ExclusionVerdict::excluded(
            Criterion::ParityProfile,
            format!(
                "no line profile: d-1 = {} is not a sum of parts from {{{}}}",
                d - 1,
                avail.join(",")
            ),
        );
    }
    let mults: Vec<usize> = (2..=d).filter(|&k| t.t(k) > 0).collect();
    let demand: Vec<i64> = mults.iter().map(|&m| (m as i64) * t.t(m) as i64).collect();
    let matrix: Vec<Vec<i64>> = profiles
        .iter()
        .map(|p| mults.iter().map(|&m| p.count(m) as i64).collect())
        .collect();
    if assign_profiles(&matrix, 0, d as i64, &mut demand.clone()) {
        let listed: Vec<String> = profiles.iter().map(LineProfile::to_string).collect();
        ExclusionVerdict::passed(
            Criterion::ParityProfile,
            format!("feasible profile mix over {}", listed.join(" ")),
        )
    } else {
        let listed: Vec<String> = profiles.iter().map(LineProfile::to_string).collect();
        let need: Vec<String> = mults
            .iter()
            .zip(&demand)
            .map(|(m, n)| format!("{n} incidences at {m}-fold points"))
            .collect();
        ExclusionVerdict::excluded(
            Criterion::ParityProfile,
            format!(
                "profiles {} cannot supply {} with {d} lines",
                listed.join(" "),
                need.join(", ")
            ),
        )
    }
}

// Depth-first search for non-negative x with Σx = lines and matrix^T x = demand.
fn assign_profiles(matrix: &[Vec<i64>], idx: usize, lines: i64, demand: &mut [i64]) -> bool {
    if idx == matrix.len() {
        return lines == 0 && demand.iter().all(|&v| v == 0);
    }
    let row = &matrix[idx];
    let mut max = lines;
    for (c, &need) in row.iter().zip(demand.iter()) {
        if *c > 0 {
            max = max.min(need / c);
        }
    }
    for x in (0..=max).rev() {
        for (v, c) in demand.iter_mut().zip(row) {
            *v -= c * x;
        }
        let ok = assign_profiles(matrix, idx + 1, lines - x, demand);
        for (v, c) in demand.iter_mut().zip(row) {
            *v += c * x;
        }
        if ok {
            return true;
        }
    }
    false
}

/// `t_2 + ¾·t_3 ≥ d + Σ_{k≥5} (k−4)·t_k` whenever `t_d = t_{d−1} = 0`.
/// Only meaningful for configurations over the complex numbers.
pub fn hirzebruch_filter(t: &TVector) -> ExclusionVerdict {
    let d = t.d();
    if t.t(d) != 0 || t.t(d - 1) != 0 {
        return ExclusionVerdict::passed(Criterion::Hirzebruch, "inapplicable");
    }
    let lhs = BigRational::from_integer(t.t(2).into())
        + BigRational::new(3.into(), 4.into()) * BigRational::from_integer(t.t(3).into());
    let tail: u64 = (5..=d).map(|k| (k as u64 - 4) * t.t(k) as u64).sum();
    let rhs = BigRational::from_integer((d as u64 + tail).into());
    let (l, r) = (format_rational(&lhs), format_rational(&rhs));
    if lhs < rhs {
        ExclusionVerdict::excluded(Criterion::Hirzebruch, format!("{l} < {r}"))
    } else {
        ExclusionVerdict::passed(Criterion::Hirzebruch, format!("{l} >= {r}"))
    }
}

/// Runs the filters cheapest-first and reports the first exclusion.
pub fn apply_all(t: &TVector, mode: Mode) -> ExclusionVerdict {
    let mut filters: Vec<fn(&TVector) -> ExclusionVerdict> = vec![
        multiplicity_sum_filter,
        two_pencils_filter,
        parity_profile_filter,
    ];
    if mode == Mode::Complex {
        filters.push(hirzebruch_filter);
    }
    for f in filters {
        let v = f(t);
        if v.is_excluded() {
            return v;
        }
    }
    ExclusionVerdict {
        status: Status::Passed,
        criterion: None,
        detail: format!("passed all {mode} filters"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(d: usize, pairs: &[(usize, u32)]) -> TVector {
        TVector::from_pairs(d, pairs).unwrap()
    }

    fn excluded_by(v: &ExclusionVerdict, c: Criterion) -> bool {
        v.is_excluded() && v.criterion == Some(c)
    }

    #[test]
    fn multiplicity_sum_examples() {
        let v = multiplicity_sum_filter(&tv(5, &[(2, 1), (3, 3)]));
        assert!(excluded_by(&v, Criterion::MultiplicitySum));
        assert!(
            v.detail.starts_with("r=3: 3+3+3 = 9 > d + C(3,2) = 8"),
            "{}",
            v.detail
        );

        let v = multiplicity_sum_filter(&tv(8, &[(2, 1), (3, 4), (6, 1)]));
        assert!(
            v.detail.starts_with("r=3: 6+3+3 = 12 > d + C(3,2) = 11"),
            "{}",
            v.detail
        );

        let v = multiplicity_sum_filter(&tv(9, &[(2, 6), (6, 2)]));
        assert!(
            v.detail.starts_with("r=2: 6+6 = 12 > d + C(2,2) = 10"),
            "{}",
            v.detail
        );

        assert!(!multiplicity_sum_filter(&tv(4, &[(2, 6)])).is_excluded());
    }

    #[test]
    fn nine_lines_never_two_sixfold_points() {
        for t in crate::tspace::enumerate_tvectors(9, None).unwrap() {
            if t.t(6) >= 2 {
                assert!(excluded_by(
                    &multiplicity_sum_filter(&t),
                    Criterion::MultiplicitySum
                ));
            }
        }
    }

    #[test]
    fn two_pencils_examples() {
        let v = two_pencils_filter(&tv(10, &[(2, 2), (3, 7), (4, 2), (5, 1)]));
        assert!(excluded_by(&v, Criterion::TwoPencils));
        assert_eq!(v.detail, "m1=5, m2=4: (4)(3)+2 = 14 > s = 12");
        assert!(!two_pencils_filter(&tv(9, &[(3, 12)])).is_excluded());
        assert!(!two_pencils_filter(&tv(8, &[(2, 4), (3, 6), (4, 1)])).is_excluded());
        let pencil = two_pencils_filter(&tv(6, &[(6, 1)]));
        assert!(!pencil.is_excluded());
        assert_eq!(pencil.detail, "vacuous: s < 2");
    }

    #[test]
    fn parity_examples() {
        let v = parity_profile_filter(&tv(6, &[(3, 5)]));
        assert!(excluded_by(&v, Criterion::ParityProfile));
        assert!(v.detail.starts_with("no line profile"));

        let t = tv(9, &[(3, 10), (4, 1)]);
        let profiles = line_profiles(&t);
        assert!(profiles.iter().all(|p| p.count(4) == 0));
        assert!(excluded_by(
            &parity_profile_filter(&t),
            Criterion::ParityProfile
        ));

        let fano = tv(7, &[(3, 7)]);
        let profiles = line_profiles(&fano);
        assert_eq!(profiles.len(), 1);
        assert_eq!(profiles[0].to_string(), "{3,3,3}");
        assert!(!parity_profile_filter(&fano).is_excluded());
    }

    #[test]
    fn parity_excludes_fourfold_on_every_line() {
        // d = 6, one 4-fold point would have to lie on all six lines
        let v = parity_profile_filter(&tv(6, &[(3, 3), (4, 1)]));
        assert!(excluded_by(&v, Criterion::ParityProfile));
    }

    #[test]
    fn hirzebruch_examples() {
        let v = hirzebruch_filter(&tv(7, &[(3, 7)]));
        assert!(excluded_by(&v, Criterion::Hirzebruch));
        assert_eq!(v.detail, "21/4 < 7");
        let v = hirzebruch_filter(&tv(9, &[(3, 12)]));
        assert!(!v.is_excluded());
        assert_eq!(v.detail, "9 >= 9");
        let v = hirzebruch_filter(&tv(10, &[(3, 9), (4, 3)]));
        assert_eq!(v.detail, "27/4 < 10");
        let v = hirzebruch_filter(&tv(5, &[(5, 1)]));
        assert_eq!(v.detail, "inapplicable");
        assert!(!v.is_excluded());
        let near_pencil = tv(5, &[(2, 4), (4, 1)]);
        assert_eq!(hirzebruch_filter(&near_pencil).detail, "inapplicable");
    }

    #[test]
    fn apply_all_order_and_modes() {
        let v = apply_all(&tv(5, &[(2, 1), (3, 3)]), Mode::Absolute);
        assert!(excluded_by(&v, Criterion::MultiplicitySum));
        let v = apply_all(&tv(9, &[(3, 12)]), Mode::Absolute);
        assert!(!v.is_excluded());
        assert_eq!(v.criterion, None);
        let t = tv(10, &[(2, 3), (3, 8), (4, 3)]);
        assert!(!apply_all(&t, Mode::Absolute).is_excluded());
        let v = apply_all(&t, Mode::Complex);
        assert!(excluded_by(&v, Criterion::Hirzebruch));
        assert_eq!(v.detail, "9 < 10");
    }

    #[test]
    fn verdict_json_shape() {
        let v = two_pencils_filter(&tv(10, &[(2, 2), (3, 7), (4, 2), (5, 1)]));
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["status"], "excluded");
        assert_eq!(json["criterion"], "two_pencils");
        assert!(json["detail"].is_string());
    }
}
