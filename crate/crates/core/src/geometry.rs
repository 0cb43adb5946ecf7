//! Explicit projective geometry over the supported exact fields.
//!
//! Points and lines of `P²(K)` are both [`ProjTriple`]s; a point lies on a
//! line iff their dot product vanishes, and two lines meet at their cross
//! product. Because every scalar is exact, singular points are grouped by
//! hashing normalized coordinates.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{GeometryError, NumError};
use crate::exactnum::{FieldDescriptor, Fp, Scalar};
use crate::incidence::CliquePartition;
use crate::tspace::{binom2, TVector};

/// Homogeneous coordinates `(a : b : c)` in normalized form.
///
/// Over finite fields and `Q(ω)` the first nonzero coordinate is one; over
/// `Q` the coordinates are coprime integers with a positive leading entry.
/// Equal normalized triples are exactly the equal projective points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjTriple {
    coords: [Scalar; 3],
}

impl ProjTriple {
    pub fn new(coords: [Scalar; 3]) -> Result<Self, GeometryError> {
        let field = coords[0].field();
        for c in &coords[1..] {
            if c.field() != field {
                return Err(NumError::FieldMismatch {
                    left: field,
                    right: c.field(),
                }
                .into());
            }
        }
        let lead = coords
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(GeometryError::ZeroLine(0))?;
        let coords = match field {
            FieldDescriptor::Rational => normalize_rational(&coords, lead),
            _ => {
                let inv = coords[lead].inverse()?;
                [
                    coords[0].mul(&inv)?,
                    coords[1].mul(&inv)?,
                    coords[2].mul(&inv)?,
                ]
            }
        };
        Ok(ProjTriple { coords })
    }

    pub fn from_ints(field: FieldDescriptor, v: [i64; 3]) -> Result<Self, GeometryError> {
        ProjTriple::new([
            field.from_int(v[0]),
            field.from_int(v[1]),
            field.from_int(v[2]),
        ])
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.coords
    }

    pub fn field(&self) -> FieldDescriptor {
        self.coords[0].field()
    }

    /// Incidence pairing: zero iff the point lies on the line.
    pub fn dot(&self, other: &ProjTriple) -> Result<Scalar, NumError> {
        let mut acc = self.field().zero();
        for (x, y) in self.coords.iter().zip(&other.coords) {
            acc = acc.add(&x.mul(y)?)?;
        }
        Ok(acc)
    }

    pub fn incident(&self, other: &ProjTriple) -> Result<bool, NumError> {
        Ok(self.dot(other)?.is_zero())
    }

    /// Meet of two lines (or join of two points). `None` when they coincide.
    pub fn cross(&self, other: &ProjTriple) -> Result<Option<ProjTriple>, NumError> {
        let [a0, a1, a2] = &self.coords;
        let [b0, b1, b2] = &other.coords;
        let c = [
            a1.mul(b2)?.sub(&a2.mul(b1)?)?,
            a2.mul(b0)?.sub(&a0.mul(b2)?)?,
            a0.mul(b1)?.sub(&a1.mul(b0)?)?,
        ];
        if c.iter().all(Scalar::is_zero) {
            return Ok(None);
        }
        Ok(Some(
            ProjTriple::new(c).expect("nonzero triple over a single field"),
        ))
    }
}

impl fmt::Display for ProjTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} : {} : {})",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

fn normalize_rational(coords: &[Scalar; 3], lead: usize) -> [Scalar; 3] {
    let rs: Vec<BigRational> = coords
        .iter()
        .map(|c| match c {
            Scalar::Rational(r) => r.clone(),
            _ => unreachable!("field checked by caller"),
        })
        .collect();
    let lcm = rs.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rs.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if ints[lead].is_negative() {
        g = -g;
    }
    let out: Vec<Scalar> = ints
        .iter()
        .map(|x| Scalar::Rational(BigRational::from_integer(x / &g)))
        .collect();
    [out[0].clone(), out[1].clone(), out[2].clone()]
}

/// A singular point together with the indices of the lines through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub point: ProjTriple,
    pub lines: Vec<usize>,
}

impl SingularPoint {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }
}

/// `d` distinct lines over one field and the singular points they determine.
#[derive(Clone, Debug)]
pub struct LineConfiguration {
    field: FieldDescriptor,
    lines: Vec<ProjTriple>,
    points: Vec<SingularPoint>,
}

impl LineConfiguration {
    pub fn new(field: FieldDescriptor, lines: Vec<ProjTriple>) -> Result<Self, GeometryError> {
        if lines.len() < 2 {
            return Err(GeometryError::TooFewLines(lines.len()));
        }
        for (index, l) in lines.iter().enumerate() {
            if l.field() != field {
                return Err(GeometryError::MixedField {
                    index,
                    expected: field,
                    found: l.field(),
                });
            }
        }
        let mut by_point: HashMap<ProjTriple, BTreeSet<usize>> = HashMap::new();
        let mut order: Vec<ProjTriple> = Vec::new();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let p = lines[i]
                    .cross(&lines[j])?
                    .ok_or(GeometryError::DuplicateLine(i, j))?;
                let entry = by_point.entry(p.clone()).or_insert_with(|| {
                    order.push(p);
                    BTreeSet::new()
                });
                entry.insert(i);
                entry.insert(j);
            }
        }
        let points = order
            .into_iter()
            .map(|p| {
                let lines = by_point.remove(&p).unwrap().into_iter().collect();
                SingularPoint { point: p, lines }
            })
            .collect();
        Ok(LineConfiguration {
            field,
            lines,
            points,
        })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_int_lines(
        field: FieldDescriptor,
        lines: &[[i64; 3]],
    ) -> Result<Self, GeometryError> {
        let lines = lines
            .iter()
            .enumerate()
            .map(|(i, v)| {
                ProjTriple::from_ints(field, *v).map_err(|e| match e {
                    GeometryError::ZeroLine(_) => GeometryError::ZeroLine(i),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        LineConfiguration::new(field, lines)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn d(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[ProjTriple] {
        &self.lines
    }

    pub fn singular_points(&self) -> &[SingularPoint] {
        &self.points
    }

    pub fn s(&self) -> usize {
        self.points.len()
    }

    /// Multiplicity histogram of the singular points.
    pub fn tvector(&self) -> TVector {
        TVector::from_multiplicities(
            self.d(),
            self.points.iter().map(SingularPoint::multiplicity),
        )
        .expect("pairs of distinct lines meet exactly once")
    }

    /// `(d² − Σ m(P)²) / s`, computed from the points directly.
    pub fn harbourne_value(&self) -> BigRational {
        let d = self.d() as i64;
        let sq: i64 = self
            .points
            .iter()
            .map(|p| (p.multiplicity() * p.multiplicity()) as i64)
            .sum();
        BigRational::new((d * d - sq).into(), (self.s() as i64).into())
    }

    /// The induced abstract arrangement.
    pub fn clique_partition(&self) -> CliquePartition {
        let mut points: Vec<Vec<usize>> = self.points.iter().map(|p| p.lines.clone()).collect();
        points.sort();
        CliquePartition {
            d: self.d(),
            points,
        }
    }

    /// Re-checks the incidence laws every genuine configuration satisfies:
    /// exact incidences, pair conservation, per-line parity and the
    /// multiplicity-sum bounds for every `r`.
    pub fn check_invariants(&self) -> Result<(), String> {
        let d = self.d();
        for sp in &self.points {
            for (i, line) in self.lines.iter().enumerate() {
                let on = line.incident(&sp.point).map_err(|e| e.to_string())?;
                if on != sp.lines.contains(&i) {
                    return Err(format!(
                        "incidence of line {i} with {} is inconsistent",
                        sp.point
                    ));
                }
            }
        }
        let pairs: u64 = self.points.iter().map(|p| binom2(p.multiplicity())).sum();
        if pairs != binom2(d) {
            return Err(format!("sum C(m,2) = {pairs} but C(d,2) = {}", binom2(d)));
        }
        for i in 0..d {
            let through: usize = self
                .points
                .iter()
                .filter(|p| p.lines.contains(&i))
                .map(|p| p.multiplicity() - 1)
                .sum();
            if through != d - 1 {
                return Err(format!(
                    "line {i}: sum (m-1) = {through} but d-1 = {}",
                    d - 1
                ));
            }
        }
        let mut mults: Vec<usize> = self
            .points
            .iter()
            .map(SingularPoint::multiplicity)
            .collect();
        mults.sort_unstable_by(|a, b| b.cmp(a));
        let mut sum = 0;
        for (r, m) in mults.iter().enumerate() {
            sum += m;
            let bound = d as u64 + binom2(r + 1);
            if sum as u64 > bound {
                return Err(format!("r={}: {sum} > {bound}", r + 1));
            }
        }
        Ok(())
    }
}

/// All `p² + p + 1` lines of `PG(2, p)` in lexicographic order of their
/// normalized coordinates.
pub fn plane_lines(p: u32) -> Result<Vec<ProjTriple>, GeometryError> {
    Ok(PlaneIncidence::new(p)?.lines)
}

/// Point-line incidence tables of `PG(2, p)`, indexed consistently with
/// [`plane_lines`]. Points and lines share one coordinate list.
#[derive(Clone, Debug)]
pub struct PlaneIncidence {
    pub p: u32,
    pub lines: Vec<ProjTriple>,
    /// `points_on[l]`: indices of the points on line `l`.
    pub points_on: Vec<Vec<usize>>,
}

impl PlaneIncidence {
    pub fn new(p: u32) -> Result<Self, GeometryError> {
        FieldDescriptor::prime(p)?;
        let mut raw: Vec<[u32; 3]> = Vec::new();
        raw.push([0, 0, 1]);
        for c in 0..p {
            raw.push([0, 1, c]);
        }
        for b in 0..p {
            for c in 0..p {
                raw.push([1, b, c]);
            }
        }
        let lines: Vec<ProjTriple> = raw
            .iter()
            .map(|v| {
                ProjTriple::new(v.map(|x| Scalar::Prime(Fp::new(x, p))))
                    .expect("normalized nonzero triple")
            })
            .collect();
        let dot = |a: &[u32; 3], b: &[u32; 3]| a.iter().zip(b).map(|(x, y)| x * y).sum::<u32>() % p;
        let points_on: Vec<Vec<usize>> = raw
            .iter()
            .map(|l| (0..raw.len()).filter(|&q| dot(l, &raw[q]) == 0).collect())
            .collect();
        let n = (p * p + p + 1) as usize;
        assert_eq!(lines.len(), n);
        for q in 0..n {
            let through = points_on.iter().filter(|pts| pts.contains(&q)).count();
            assert_eq!(through, p as usize + 1, "point {q} of PG(2,{p})");
        }
        assert!(points_on.iter().all(|pts| pts.len() == p as usize + 1));
        Ok(PlaneIncidence {
            p,
            lines,
            points_on,
        })
    }

    pub fn field(&self) -> FieldDescriptor {
        FieldDescriptor::Prime { p: self.p }
    }
}
