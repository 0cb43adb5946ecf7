//! Solutions of the pair-count identity `Σ_k t_k·C(k,2) = C(d,2)` and their
//! combinatorial quotients.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::TVectorError;
use crate::exactnum::{format_decimal, format_mixed, format_rational};

/// Largest number of lines the engine is tuned for. Larger inputs still work.
pub const SOFT_MAX_DEGREE: usize = 10;

pub fn binom2(k: usize) -> u64 {
    let k = k as u64;
    k * k.saturating_sub(1) / 2
}

/// `t_2, …, t_d`: how many singular points of each multiplicity a
/// configuration of `d` lines has.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TVector {
    d: usize,
    // counts[i] = t_{i+2}
    counts: Vec<u32>,
}

/// True iff `counts = (t_2, …, t_d)` satisfies the pair-count identity.
pub fn check_combinatorial_identity(d: usize, counts: &[u32]) -> bool {
    d >= 2 && counts.len() == d - 1 && pair_total(counts) == binom2(d)
}

fn pair_total(counts: &[u32]) -> u64 {
    counts
        .iter()
        .enumerate()
        .map(|(i, &t)| t as u64 * binom2(i + 2))
        .sum()
}

impl TVector {
    /// Validated constructor; `counts` is `(t_2, …, t_d)`.
    pub fn new(d: usize, counts: Vec<u32>) -> Result<Self, TVectorError> {
        if d < 2 {
            return Err(TVectorError::InvalidDegree(d));
        }
        if counts.len() != d - 1 {
            return Err(TVectorError::WrongLength {
                expected: d - 1,
                got: counts.len(),
            });
        }
        let lhs = pair_total(&counts);
        if lhs != binom2(d) {
            return Err(TVectorError::Identity {
                lhs,
                rhs: binom2(d),
            });
        }
        Ok(TVector { d, counts })
    }

    /// Builds from `(multiplicity, count)` pairs; unspecified entries are zero.
    pub fn from_pairs(d: usize, pairs: &[(usize, u32)]) -> Result<Self, TVectorError> {
        if d < 2 {
            return Err(TVectorError::InvalidDegree(d));
        }
        let mut counts = vec![0; d - 1];
        for &(k, t) in pairs {
            if k < 2 || k > d {
                return Err(TVectorError::Parse(format!(
                    "multiplicity {k} outside 2..={d}"
                )));
            }
            counts[k - 2] += t;
        }
        TVector::new(d, counts)
    }

    /// Histogram of a multiset of point multiplicities.
    pub fn from_multiplicities(
        d: usize,
        mults: impl IntoIterator<Item = usize>,
    ) -> Result<Self, TVectorError> {
        let pairs: Vec<(usize, u32)> = mults.into_iter().map(|m| (m, 1)).collect();
        TVector::from_pairs(d, &pairs)
    }

    /// The all-double-points vector (lines in general position).
    pub fn general_position(d: usize) -> Result<Self, TVectorError> {
        TVector::from_pairs(d, &[(2, binom2(d) as u32)])
    }

    /// A single `d`-fold point.
    pub fn pencil(d: usize) -> Result<Self, TVectorError> {
        TVector::from_pairs(d, &[(d, 1)])
    }

    pub fn parse(d: usize, text: &str) -> Result<Self, TVectorError> {
        let counts = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| TVectorError::Parse(format!("bad entry {s:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        TVector::new(d, counts)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `t_k`; zero outside `2..=d`.
    pub fn t(&self, k: usize) -> u32 {
        if k < 2 || k > self.d {
            0
        } else {
            self.counts[k - 2]
        }
    }

    /// `(t_2, …, t_d)`.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Number of singular points `s`.
    pub fn s(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        (2..=self.d).rev().find(|&k| self.t(k) > 0).unwrap_or(2)
    }

    /// Point multiplicities, largest first.
    pub fn multiplicities(&self) -> Vec<usize> {
        (2..=self.d)
            .rev()
            .flat_map(|k| std::iter::repeat_n(k, self.t(k) as usize))
            .collect()
    }

    /// `Σ_k k²·t_k`.
    pub fn sum_of_squares(&self) -> u64 {
        (2..=self.d)
            .map(|k| (k * k) as u64 * self.t(k) as u64)
            .sum()
    }

    /// Exact quotient `(d² − Σ k² t_k) / s`.
    pub fn quotient(&self) -> BigRational {
        let num = BigInt::from((self.d * self.d) as i64) - BigInt::from(self.sum_of_squares());
        BigRational::new(num, BigInt::from(self.s()))
    }

    /// `"t2,t3,…,td"`.
    pub fn encode(&self) -> String {
        self.counts
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Compact form listing only nonzero entries, e.g. `t4=3 t3=9`.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = (2..=self.d)
            .rev()
            .filter(|&k| self.t(k) > 0)
            .map(|k| format!("t{k}={}", self.t(k)))
            .collect();
        parts.join(" ")
    }

    /// Tie-break order: lexicographic on `(t_d, …, t_2)`, larger first.
    fn tiebreak(&self, other: &Self) -> Ordering {
        let a = self.counts.iter().rev();
        let b = other.counts.iter().rev();
        b.cmp(a)
    }
}

impl fmt::Display for TVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl FromStr for TVector {
    type Err = TVectorError;

    /// The length of the list fixes `d`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let d = s.split(',').count() + 1;
        TVector::parse(d, s)
    }
}

impl Serialize for TVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.encode())
    }
}

impl<'de> Deserialize<'de> for TVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A quotient together with its two display forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientValue {
    #[serde(serialize_with = "serialize_rational")]
    pub value: BigRational,
    pub decimal: String,
    pub mixed: String,
}

impl QuotientValue {
    pub fn new(value: BigRational) -> Self {
        QuotientValue {
            decimal: format_decimal(&value, 6),
            mixed: format_mixed(&value),
            value,
        }
    }

    pub fn fraction(&self) -> String {
        format_rational(&self.value)
    }
}

impl fmt::Display for QuotientValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.fraction(), self.decimal)
    }
}

pub(crate) fn serialize_rational<S: Serializer>(
    x: &BigRational,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&format_rational(x))
}

pub fn combinatorial_quotient(t: &TVector) -> QuotientValue {
    QuotientValue::new(t.quotient())
}

/// All non-negative solutions for `d` lines, sorted by quotient and then by
/// `(t_d, …, t_2)` descending. With a ceiling, only `q(T) ≤ ceiling` is kept.
pub fn enumerate_tvectors(
    d: usize,
    q_ceiling: Option<&BigRational>,
) -> Result<Vec<TVector>, TVectorError> {
    if d < 2 {
        return Err(TVectorError::InvalidDegree(d));
    }
    let mut counts = vec![0u32; d - 1];
    let mut out = Vec::new();
    descend(d, d, binom2(d), &mut counts, &mut out);

    let mut keyed: Vec<(BigRational, TVector)> = out
        .into_iter()
        .map(|t| (t.quotient(), t))
        .filter(|(q, _)| q_ceiling.is_none_or(|c| q <= c))
        .collect();
    keyed.sort_by(|(qa, a), (qb, b)| qa.cmp(qb).then_with(|| a.tiebreak(b)));
    Ok(keyed.into_iter().map(|(_, t)| t).collect())
}

fn descend(d: usize, k: usize, remaining: u64, counts: &mut [u32], out: &mut Vec<TVector>) {
    if k == 2 {
        counts[0] = remaining as u32;
        out.push(TVector {
            d,
            counts: counts.to_vec(),
        });
        counts[0] = 0;
        return;
    }
    let w = binom2(k);
    for t in 0..=remaining / w {
        counts[k - 2] = t as u32;
        descend(d, k - 1, remaining - t * w, counts, out);
    }
    counts[k - 2] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn tv(d: usize, pairs: &[(usize, u32)]) -> TVector {
        TVector::from_pairs(d, pairs).unwrap()
    }

    #[test]
    fn three_lines() {
        let all = enumerate_tvectors(3, None).unwrap();
        let enc: Vec<String> = all.iter().map(TVector::encode).collect();
        assert_eq!(enc, vec!["3,0", "0,1"]);
    }

    #[test]
    fn four_lines_in_quotient_order() {
        let all = enumerate_tvectors(4, None).unwrap();
        let enc: Vec<String> = all.iter().map(TVector::encode).collect();
        assert_eq!(enc, vec!["6,0,0", "3,1,0", "0,2,0", "0,0,1"]);
    }

    #[test]
    fn five_lines_tie_order() {
        let all = enumerate_tvectors(5, Some(&q(-3, 2))).unwrap();
        let enc: Vec<String> = all.iter().map(TVector::encode).collect();
        assert_eq!(enc, vec!["1,3,0,0", "4,2,0,0", "7,1,0,0", "10,0,0,0"]);
    }

    #[test]
    fn ten_lines_below_ceiling() {
        let all = enumerate_tvectors(10, Some(&q(-34, 15))).unwrap();
        assert!(all.contains(&tv(10, &[(3, 9), (4, 3)])));
        assert!(all.contains(&tv(10, &[(3, 1), (4, 7)])));
        assert!(all.contains(&tv(10, &[(2, 3), (3, 10), (4, 2)])));
        assert!(all.iter().all(|t| t.quotient() <= q(-34, 15)));
    }

    #[test]
    fn quotients() {
        assert_eq!(tv(4, &[(2, 6)]).quotient(), q(-4, 3));
        assert_eq!(tv(2, &[(2, 1)]).quotient(), q(0, 1));
        assert_eq!(tv(7, &[(3, 7)]).quotient(), q(-2, 1));
        assert_eq!(tv(10, &[(3, 9), (4, 3)]).quotient(), q(-29, 12));
        let qv = combinatorial_quotient(&tv(10, &[(3, 9), (4, 3)]));
        assert_eq!(qv.fraction(), "-29/12");
        assert_eq!(qv.decimal, "-2.416667");
        assert_eq!(qv.mixed, "-2 5/12");
    }

    #[test]
    fn identity_checks() {
        assert!(check_combinatorial_identity(5, &[4, 2, 0, 0]));
        assert!(!check_combinatorial_identity(5, &[5, 2, 0, 0]));
        assert!(check_combinatorial_identity(
            10,
            &[3, 10, 2, 0, 0, 0, 0, 0, 0]
        ));
        assert!(!check_combinatorial_identity(5, &[4, 2, 0]));
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(
            enumerate_tvectors(1, None),
            Err(TVectorError::InvalidDegree(1))
        );
        assert!(matches!(
            TVector::parse(5, "5,2,0,0"),
            Err(TVectorError::Identity { lhs: 11, rhs: 10 })
        ));
        assert!(matches!(
            TVector::parse(5, "4,2,0"),
            Err(TVectorError::WrongLength { .. })
        ));
        assert!(TVector::parse(5, "4,x,0,0").is_err());
    }

    #[test]
    fn text_encoding() {
        let t = tv(10, &[(3, 9), (4, 3)]);
        assert_eq!(t.encode(), "0,9,3,0,0,0,0,0,0");
        assert_eq!("0,9,3,0,0,0,0,0,0".parse::<TVector>().unwrap(), t);
        assert_eq!(t.describe(), "t4=3 t3=9");
        assert_eq!(t.multiplicities()[..4], [4, 4, 4, 3]);
    }

    // Independent count: every bounded vector of t_k, checked against the identity.
    fn brute_force_count(d: usize) -> usize {
        let total = binom2(d);
        let bounds: Vec<u64> = (2..=d).map(|k| total / binom2(k)).collect();
        let mut idx = vec![0u64; bounds.len()];
        let mut count = 0;
        loop {
            let s: u64 = idx
                .iter()
                .enumerate()
                .map(|(i, &t)| t * binom2(i + 2))
                .sum();
            if s == total {
                count += 1;
            }
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return count;
                }
                idx[pos] += 1;
                if idx[pos] <= bounds[pos] {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn counts_match_brute_force() {
        for d in 2..=10 {
            let all = enumerate_tvectors(d, None).unwrap();
            assert_eq!(all.len(), brute_force_count(d), "d = {d}");
            assert!(all
                .iter()
                .all(|t| check_combinatorial_identity(d, t.counts())));
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        assert_eq!(
            enumerate_tvectors(10, None).unwrap(),
            enumerate_tvectors(10, None).unwrap()
        );
    }

    #[test]
    fn closed_forms() {
        for d in 2..=10 {
            let g = TVector::general_position(d).unwrap();
            let expected = q(-2, 1) + q(2, d as i64 - 1);
            assert_eq!(g.quotient(), expected);
            assert_eq!(TVector::pencil(d).unwrap().quotient(), q(0, 1));
        }
    }
}
