//! Proof replay: enumerate candidates in ascending quotient order, filter,
//! decide combinatorial feasibility, look for a realization, and assemble
//! the minimum for every `d` together with an audit of everything below it.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{verify_certificate, Certificate, VerificationReport};
use crate::criteria::{apply_all, Criterion, Mode};
use crate::error::{GeometryError, PipelineError};
use crate::exactnum::{Eisenstein, FieldDescriptor, Scalar};
use crate::geometry::{LineConfiguration, PlaneIncidence, ProjTriple};
use crate::incidence::feasible_arrangement;
use crate::realize::{realize_in_plane, RealizeOutcome};
use crate::tspace::{enumerate_tvectors, QuotientValue, TVector};

/// Primes searched in absolute mode unless told otherwise.
pub const DEFAULT_PRIMES: [u32; 2] = [2, 3];

/// A certificate that has passed verification, with its report.
#[derive(Clone, Debug)]
pub struct DbEntry {
    pub certificate: Certificate,
    pub report: VerificationReport,
}

impl DbEntry {
    pub fn label(&self) -> &str {
        &self.certificate.label
    }

    pub fn tvector(&self) -> &TVector {
        &self.report.tvector
    }

    /// Whether this entry evidences realizability for `mode`.
    pub fn counts_for(&self, mode: Mode) -> bool {
        mode == Mode::Absolute || self.certificate.field.is_char_zero()
    }
}

/// Verified realizations, in insertion order.
#[derive(Clone, Debug, Default)]
pub struct CertificateDb {
    entries: Vec<DbEntry>,
}

impl CertificateDb {
    pub fn new() -> Self {
        Self::default()
    }

    /// Verifies and stores `cert`; labels must be unique.
    pub fn insert(&mut self, cert: Certificate) -> Result<&DbEntry, PipelineError> {
        let fail = |source| PipelineError::BuiltinCertificate {
            label: cert.label.clone(),
            source,
        };
        if self.get(&cert.label).is_some() {
            return Err(fail(GeometryError::Invariant(
                "label already present".into(),
            )));
        }
        let report = verify_certificate(&cert).map_err(fail)?;
        self.entries.push(DbEntry {
            certificate: cert,
            report,
        });
        Ok(self.entries.last().unwrap())
    }

    pub fn get(&self, label: &str) -> Option<&DbEntry> {
        self.entries.iter().find(|e| e.label() == label)
    }

    pub fn entries(&self) -> &[DbEntry] {
        &self.entries
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(DbEntry::label)
    }

    /// Entries realizing exactly `t` that count for `mode`.
    pub fn lookup<'a>(&'a self, t: &'a TVector, mode: Mode) -> impl Iterator<Item = &'a DbEntry> {
        self.entries
            .iter()
            .filter(move |e| e.tvector() == t && e.counts_for(mode))
    }
}

fn rational_cert(label: &str, lines: &[[i64; 3]]) -> Certificate {
    let config = LineConfiguration::from_int_lines(FieldDescriptor::Rational, lines)
        .unwrap_or_else(|e| panic!("{label}: {e}"));
    Certificate::from_configuration(label, &config)
}

/// `d` lines through `(0:0:1)`.
pub fn pencil_certificate(d: usize) -> Certificate {
    let mut lines: Vec<[i64; 3]> = (0..d as i64 - 1).map(|i| [1, i, 0]).collect();
    lines.push([0, 1, 0]);
    rational_cert(&format!("pencil-{d}"), &lines)
}

/// Lines `x + i·y + i²·z = 0`; no three are concurrent (Vandermonde).
pub fn general_position_certificate(d: usize) -> Certificate {
    let lines: Vec<[i64; 3]> = (0..d as i64).map(|i| [1, i, i * i]).collect();
    rational_cert(&format!("general-position-{d}"), &lines)
}

const QUADRILATERAL_6: [[i64; 3]; 6] = [
    [0, 0, 1],
    [0, 1, 0],
    [1, 0, 0],
    [0, 1, -1],
    [1, 0, -1],
    [1, -1, 0],
];

fn finite_cert(label: &str, p: u32, keep: impl Fn(&ProjTriple) -> bool) -> Certificate {
    let field = FieldDescriptor::prime(p).expect("supported prime");
    let plane = PlaneIncidence::new(p).expect("plane construction");
    let lines: Vec<ProjTriple> = plane.lines.into_iter().filter(|l| keep(l)).collect();
    let config = LineConfiguration::new(field, lines).unwrap_or_else(|e| panic!("{label}: {e}"));
    Certificate::from_configuration(label, &config)
}

fn eisenstein_lines() -> Vec<[Scalar; 3]> {
    let e = |a: Eisenstein| Scalar::Eisenstein(a);
    let zero = || e(Eisenstein::from_int(0));
    let one = || e(Eisenstein::from_int(1));
    let mut lines = Vec::new();
    for i in 0..3 {
        let w = e(-&Eisenstein::omega_pow(i));
        lines.push([one(), w.clone(), zero()]);
        lines.push([zero(), one(), w.clone()]);
        lines.push([one(), zero(), w]);
    }
    lines
}

/// The nine lines `x = ω^i y`, `y = ω^i z`, `x = ω^i z`.
pub fn dual_hesse_certificate() -> Certificate {
    Certificate {
        label: "dual-hesse-eisenstein".into(),
        field: FieldDescriptor::Eisenstein,
        lines: eisenstein_lines(),
        claimed_tvector: Some(TVector::from_pairs(9, &[(3, 12)]).unwrap()),
    }
}

/// Dual Hesse plus `z = 0`, which passes through the triple points
/// `(1:0:0)` and `(0:1:0)`.
pub fn dual_hesse_plus_line_certificate() -> Certificate {
    let e = |n| Scalar::Eisenstein(Eisenstein::from_int(n));
    let mut lines = eisenstein_lines();
    lines.push([e(0), e(0), e(1)]);
    Certificate {
        label: "dual-hesse-plus-line".into(),
        field: FieldDescriptor::Eisenstein,
        lines,
        claimed_tvector: Some(TVector::from_pairs(10, &[(2, 3), (3, 10), (4, 2)]).unwrap()),
    }
}

fn through_origin_f3(l: &ProjTriple) -> bool {
    // lines (a, b, 0) all contain (0:0:1)
    l.coords()[2].is_zero()
}

/// Every certificate the pipeline knows about, each verified before use.
pub fn builtin_certificates() -> Result<CertificateDb, PipelineError> {
    let mut db = CertificateDb::new();
    for d in 2..=10 {
        db.insert(pencil_certificate(d))?;
        db.insert(general_position_certificate(d))?;
    }
    let q5: Vec<[i64; 3]> = QUADRILATERAL_6[..5].to_vec();
    db.insert(rational_cert("quadrilateral-5", &q5))?;
    db.insert(rational_cert("quadrilateral-6", &QUADRILATERAL_6))?;
    let mut q7 = QUADRILATERAL_6.to_vec();
    q7.push([1, 1, -1]);
    db.insert(rational_cert("quadrilateral-7", &q7))?;
    let mut d8 = q7.clone();
    d8.push([1, -1, -1]);
    db.insert(rational_cert("d8-t4-config", &d8))?;
    db.insert(finite_cert("fano-f2", 2, |_| true))?;
    db.insert(finite_cert("pg23-minus-pencil4", 3, |l| {
        !through_origin_f3(l)
    }))?;
    db.insert(finite_cert("pg23-minus-pencil3", 3, |l| {
        // drop three of the four lines through (0:0:1), keeping x = 0
        !through_origin_f3(l) || (l.coords()[0].is_one() && l.coords()[1].is_zero())
    }))?;
    db.insert(dual_hesse_certificate())?;
    db.insert(dual_hesse_plus_line_certificate())?;
    Ok(db)
}

/// How a single candidate was decided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Disposition {
    Excluded {
        criterion: Criterion,
        detail: String,
    },
    CombinatoriallyInfeasible {
        nodes_explored: u64,
        exhausted: bool,
    },
    Realized {
        label: String,
        field: FieldDescriptor,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        also_realized_by: Vec<String>,
    },
    Inconclusive {
        reason: String,
    },
}

impl Disposition {
    pub fn name(&self) -> &'static str {
        match self {
            Disposition::Excluded { .. } => "excluded",
            Disposition::CombinatoriallyInfeasible { .. } => "combinatorially_infeasible",
            Disposition::Realized { .. } => "realized",
            Disposition::Inconclusive { .. } => "inconclusive",
        }
    }

    /// Proven not to occur (in the sense of the table's mode).
    pub fn is_negative(&self) -> bool {
        matches!(
            self,
            Disposition::Excluded { .. } | Disposition::CombinatoriallyInfeasible { .. }
        )
    }

    pub fn summary(&self) -> String {
        match self {
            Disposition::Excluded { criterion, detail } => {
                format!("excluded by {criterion}: {detail}")
            }
            Disposition::CombinatoriallyInfeasible {
                nodes_explored,
                exhausted,
            } => format!(
                "combinatorially infeasible ({nodes_explored} nodes, exhausted = {exhausted})"
            ),
            Disposition::Realized {
                label,
                field,
                also_realized_by,
            } => {
                let mut s = format!("realized by {label} over {}", field.short_name());
                if !also_realized_by.is_empty() {
                    s.push_str(&format!(" (also {})", also_realized_by.join(", ")));
                }
                s
            }
            Disposition::Inconclusive { reason } => format!("inconclusive: {reason}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateStatus {
    pub tvector: TVector,
    pub q: QuotientValue,
    #[serde(flatten)]
    pub disposition: Disposition,
    /// The realizing certificate when `disposition` is `Realized`.
    #[serde(skip)]
    pub witness: Option<Certificate>,
}

/// Search context shared by all candidates of one run.
pub struct Classifier<'a> {
    mode: Mode,
    db: &'a CertificateDb,
    planes: Vec<PlaneIncidence>,
    budget: u64,
}

impl<'a> Classifier<'a> {
    pub fn new(
        mode: Mode,
        primes: &[u32],
        db: &'a CertificateDb,
        budget: u64,
    ) -> Result<Self, PipelineError> {
        let planes = match mode {
            Mode::Absolute => primes
                .iter()
                .map(|&p| PlaneIncidence::new(p))
                .collect::<Result<Vec<_>, _>>()?,
            Mode::Complex => Vec::new(),
        };
        Ok(Classifier {
            mode,
            db,
            planes,
            budget,
        })
    }

    pub fn classify(&self, t: &TVector) -> Result<CandidateStatus, PipelineError> {
        let status = |disposition, witness| CandidateStatus {
            tvector: t.clone(),
            q: QuotientValue::new(t.quotient()),
            disposition,
            witness,
        };
        let verdict = apply_all(t, self.mode);
        if verdict.is_excluded() {
            let criterion = verdict.criterion.expect("exclusions name a criterion");
            return Ok(status(
                Disposition::Excluded {
                    criterion,
                    detail: verdict.detail,
                },
                None,
            ));
        }
        let feasible = match feasible_arrangement(t, self.budget) {
            Ok(outcome) => outcome,
            Err(e) => {
                return Ok(status(
                    Disposition::Inconclusive {
                        reason: e.to_string(),
                    },
                    None,
                ))
            }
        };
        if !feasible.is_feasible() {
            return Ok(status(
                Disposition::CombinatoriallyInfeasible {
                    nodes_explored: feasible.nodes_explored,
                    exhausted: true,
                },
                None,
            ));
        }

        let mut hits = self.db.lookup(t, self.mode);
        if let Some(first) = hits.next() {
            let also = hits.map(|e| e.label().to_string()).collect();
            return Ok(status(
                Disposition::Realized {
                    label: first.label().to_string(),
                    field: first.certificate.field,
                    also_realized_by: also,
                },
                Some(first.certificate.clone()),
            ));
        }

        let mut notes = Vec::new();
        for plane in &self.planes {
            let field = plane.field();
            if t.d() > plane.lines.len() {
                continue;
            }
            match realize_in_plane(t, plane, self.budget)? {
                RealizeOutcome::Found { configuration, .. } => {
                    let label = format!(
                        "search-{}-{}",
                        field.short_name().to_lowercase(),
                        t.encode()
                    );
                    let cert = Certificate::from_configuration(label.clone(), &configuration);
                    let report = verify_certificate(&cert)?;
                    if &report.tvector != t {
                        return Err(GeometryError::ClaimMismatch {
                            claimed: t.encode(),
                            actual: report.tvector.encode(),
                        }
                        .into());
                    }
                    return Ok(status(
                        Disposition::Realized {
                            label,
                            field,
                            also_realized_by: Vec::new(),
                        },
                        Some(cert),
                    ));
                }
                RealizeOutcome::NotFound { exhausted, .. } => notes.push(format!(
                    "{} {}",
                    field.short_name(),
                    if exhausted {
                        "exhausted"
                    } else {
                        "budget exceeded"
                    }
                )),
            }
        }
        let mut reason = "combinatorially feasible but no certificate".to_string();
        if !notes.is_empty() {
            reason.push_str(&format!(" ({})", notes.join(", ")));
        }
        Ok(status(Disposition::Inconclusive { reason }, None))
    }
}

/// Convenience wrapper building a one-off [`Classifier`].
pub fn classify_candidate(
    t: &TVector,
    mode: Mode,
    primes: &[u32],
    db: &CertificateDb,
    budget: u64,
) -> Result<CandidateStatus, PipelineError> {
    Classifier::new(mode, primes, db, budget)?.classify(t)
}

/// The minimum for one `d` with the evidence behind it.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub d: usize,
    pub mode: Mode,
    pub value: QuotientValue,
    pub tvector: TVector,
    pub witness: String,
    pub witness_field: FieldDescriptor,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub also_realized_by: Vec<String>,
    /// Candidates strictly below `value` that could not be decided.
    pub integrity_failures: Vec<TVector>,
    pub audit: Vec<CandidateStatus>,
    #[serde(skip)]
    pub certificate: Certificate,
}

impl TableRow {
    pub fn is_sound(&self) -> bool {
        self.integrity_failures.is_empty()
    }

    pub fn value(&self) -> &BigRational {
        &self.value.value
    }
}

/// Walks candidates for `d` in ascending order up to the first realized one,
/// then finishes the block of candidates sharing its quotient.
pub fn compute_row(d: usize, classifier: &Classifier<'_>) -> Result<TableRow, PipelineError> {
    let mut audit: Vec<CandidateStatus> = Vec::new();
    let mut realized: Option<usize> = None;
    for t in enumerate_tvectors(d, None)? {
        if let Some(i) = realized {
            if t.quotient() > audit[i].q.value {
                break;
            }
        }
        let status = classifier.classify(&t)?;
        if realized.is_none() && matches!(status.disposition, Disposition::Realized { .. }) {
            realized = Some(audit.len());
        }
        audit.push(status);
    }
    let i = realized.ok_or(PipelineError::NoRealization(d))?;
    let star = &audit[i];
    let Disposition::Realized {
        label,
        field,
        also_realized_by,
    } = &star.disposition
    else {
        unreachable!()
    };
    let integrity_failures = audit
        .iter()
        .filter(|c| c.q.value < star.q.value && !c.disposition.is_negative())
        .map(|c| c.tvector.clone())
        .collect();
    Ok(TableRow {
        d,
        mode: classifier.mode,
        value: star.q.clone(),
        tvector: star.tvector.clone(),
        witness: label.clone(),
        witness_field: *field,
        also_realized_by: also_realized_by.clone(),
        certificate: star
            .witness
            .clone()
            .expect("realized status carries a witness"),
        integrity_failures,
        audit,
    })
}

/// Rows for `d = 2..=max_d`. `jobs > 1` computes rows concurrently; each
/// row is still classified sequentially, so the output does not depend on it.
pub fn compute_table(
    max_d: usize,
    mode: Mode,
    primes: &[u32],
    db: &CertificateDb,
    budget: u64,
    jobs: usize,
) -> Result<Vec<TableRow>, PipelineError> {
    let classifier = Classifier::new(mode, primes, db, budget)?;
    let ds: Vec<usize> = (2..=max_d).collect();
    if jobs <= 1 {
        return ds.iter().map(|&d| compute_row(d, &classifier)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| PipelineError::Geometry(GeometryError::Io(e.to_string())))?;
    pool.install(|| {
        ds.par_iter()
            .map(|&d| compute_row(d, &classifier))
            .collect()
    })
}

/// First row with an undecided candidate below its minimum, as an error.
pub fn check_integrity(rows: &[TableRow]) -> Result<(), PipelineError> {
    match rows.iter().find(|r| !r.is_sound()) {
        None => Ok(()),
        Some(r) => Err(PipelineError::TableIntegrity {
            d: r.d,
            tvector: r.integrity_failures[0].encode(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_rational;
    use crate::DEFAULT_NODE_BUDGET;

    fn tv(d: usize, pairs: &[(usize, u32)]) -> TVector {
        TVector::from_pairs(d, pairs).unwrap()
    }

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn builtin_database_contents() {
        let db = builtin_certificates().unwrap();
        let expect = [
            ("quadrilateral-5", tv(5, &[(2, 4), (3, 2)]), "-3/2"),
            ("quadrilateral-6", tv(6, &[(2, 3), (3, 4)]), "-12/7"),
            ("quadrilateral-7", tv(7, &[(2, 3), (3, 6)]), "-17/9"),
            ("d8-t4-config", tv(8, &[(2, 4), (3, 6), (4, 1)]), "-2"),
            ("fano-f2", tv(7, &[(3, 7)]), "-2"),
            ("pg23-minus-pencil4", tv(9, &[(3, 12)]), "-9/4"),
            ("pg23-minus-pencil3", tv(10, &[(3, 9), (4, 3)]), "-29/12"),
            ("dual-hesse-eisenstein", tv(9, &[(3, 12)]), "-9/4"),
            (
                "dual-hesse-plus-line",
                tv(10, &[(2, 3), (3, 10), (4, 2)]),
                "-34/15",
            ),
        ];
        for (label, t, h) in expect {
            let e = db.get(label).unwrap_or_else(|| panic!("{label} missing"));
            assert_eq!(e.tvector(), &t, "{label}");
            assert_eq!(e.report.harbourne, q(h), "{label}");
        }
        for d in 2..=10 {
            assert_eq!(
                db.get(&format!("pencil-{d}")).unwrap().tvector(),
                &TVector::pencil(d).unwrap()
            );
            assert_eq!(
                db.get(&format!("general-position-{d}")).unwrap().tvector(),
                &TVector::general_position(d).unwrap()
            );
        }
    }

    #[test]
    fn duplicate_label_rejected() {
        let mut db = CertificateDb::new();
        db.insert(pencil_certificate(3)).unwrap();
        assert!(db.insert(pencil_certificate(3)).is_err());
    }

    #[test]
    fn lookup_respects_mode() {
        let db = builtin_certificates().unwrap();
        let fano = tv(7, &[(3, 7)]);
        assert_eq!(db.lookup(&fano, Mode::Absolute).count(), 1);
        assert_eq!(db.lookup(&fano, Mode::Complex).count(), 0);
        let hesse = tv(9, &[(3, 12)]);
        let labels: Vec<&str> = db
            .lookup(&hesse, Mode::Complex)
            .map(DbEntry::label)
            .collect();
        assert_eq!(labels, ["dual-hesse-eisenstein"]);
        assert_eq!(db.lookup(&hesse, Mode::Absolute).count(), 2);
    }

    #[test]
    fn classify_examples() {
        let db = builtin_certificates().unwrap();
        let fano = tv(7, &[(3, 7)]);
        let s =
            classify_candidate(&fano, Mode::Absolute, &[2, 3], &db, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(
            s.disposition,
            Disposition::Realized {
                label: "fano-f2".into(),
                field: FieldDescriptor::prime(2).unwrap(),
                also_realized_by: vec![]
            }
        );
        let s =
            classify_candidate(&fano, Mode::Complex, &[2, 3], &db, DEFAULT_NODE_BUDGET).unwrap();
        assert!(matches!(
            s.disposition,
            Disposition::Excluded {
                criterion: Criterion::Hirzebruch,
                ..
            }
        ));
        let t = tv(10, &[(2, 2), (3, 7), (4, 2), (5, 1)]);
        for mode in [Mode::Absolute, Mode::Complex] {
            let s = classify_candidate(&t, mode, &[2, 3], &db, DEFAULT_NODE_BUDGET).unwrap();
            assert!(matches!(
                s.disposition,
                Disposition::Excluded {
                    criterion: Criterion::TwoPencils,
                    ..
                }
            ));
        }
    }

    #[test]
    fn search_hit_without_database() {
        let db = CertificateDb::new();
        let t = tv(10, &[(3, 9), (4, 3)]);
        let s = classify_candidate(&t, Mode::Absolute, &[2, 3], &db, DEFAULT_NODE_BUDGET).unwrap();
        match &s.disposition {
            Disposition::Realized { label, field, .. } => {
                assert_eq!(label, "search-f3-0,9,3,0,0,0,0,0,0");
                assert_eq!(*field, FieldDescriptor::prime(3).unwrap());
            }
            other => panic!("{other:?}"),
        }
        let report = verify_certificate(s.witness.as_ref().unwrap()).unwrap();
        assert_eq!(report.tvector, t);
    }

    #[test]
    fn feasible_but_unrealized_is_inconclusive() {
        let db = CertificateDb::new();
        let s = classify_candidate(
            &tv(7, &[(3, 7)]),
            Mode::Absolute,
            &[3],
            &db,
            DEFAULT_NODE_BUDGET,
        )
        .unwrap();
        match s.disposition {
            Disposition::Inconclusive { reason } => {
                assert!(reason.contains("F3 exhausted"), "{reason}")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_tables() {
        let db = builtin_certificates().unwrap();
        for mode in [Mode::Absolute, Mode::Complex] {
            let rows =
                compute_table(5, mode, &DEFAULT_PRIMES, &db, DEFAULT_NODE_BUDGET, 1).unwrap();
            let values: Vec<BigRational> = rows.iter().map(|r| r.value().clone()).collect();
            assert_eq!(values, [q("0"), q("-1"), q("-4/3"), q("-3/2")]);
            check_integrity(&rows).unwrap();
        }
    }

    #[test]
    fn integrity_failure_is_reported() {
        // without fano-f2 and without F2 search, (0,7,0,0,0,0) stays open
        let mut db = CertificateDb::new();
        db.insert(quad7()).unwrap();
        let classifier = Classifier::new(Mode::Absolute, &[3], &db, DEFAULT_NODE_BUDGET).unwrap();
        let row = compute_row(7, &classifier).unwrap();
        assert_eq!(row.value(), &q("-17/9"));
        assert_eq!(row.integrity_failures, vec![tv(7, &[(3, 7)])]);
        assert!(matches!(
            check_integrity(&[row]),
            Err(PipelineError::TableIntegrity { d: 7, .. })
        ));
    }

    fn quad7() -> Certificate {
        let mut q7 = QUADRILATERAL_6.to_vec();
        q7.push([1, 1, -1]);
        rational_cert("quadrilateral-7", &q7)
    }

    #[test]
    fn parallel_rows_match_sequential() {
        let db = builtin_certificates().unwrap();
        let a = compute_table(
            7,
            Mode::Complex,
            &DEFAULT_PRIMES,
            &db,
            DEFAULT_NODE_BUDGET,
            1,
        )
        .unwrap();
        let b = compute_table(
            7,
            Mode::Complex,
            &DEFAULT_PRIMES,
            &db,
            DEFAULT_NODE_BUDGET,
            3,
        )
        .unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn candidate_json_shape() {
        let db = builtin_certificates().unwrap();
        let s = classify_candidate(&tv(4, &[(3, 2)]), Mode::Absolute, &[2], &db, 1000).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["tvector"], "0,2,0");
        assert_eq!(v["q"]["value"], "-1");
        assert_eq!(v["status"], "excluded");
        assert_eq!(v["criterion"], "multiplicity_sum");
        let s = classify_candidate(
            &tv(10, &[(3, 7), (4, 4)]),
            Mode::Absolute,
            &[2],
            &db,
            100_000,
        )
        .unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["status"], "combinatorially_infeasible", "{v}");
        assert_eq!(v["exhausted"], true);
    }
}
