//! Text, CSV and JSON layouts for command output.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde_json::{json, Value};

use harbourne::certificate::VerificationReport;
use harbourne::criteria::{ExclusionVerdict, Mode};
use harbourne::exactnum::{format_decimal, format_rational};
use harbourne::incidence::SearchOutcome;
use harbourne::pipeline::{CandidateStatus, CertificateDb, TableRow};
use harbourne::tspace::{QuotientValue, TVector};

/// `-29/12 (-2.416667)`.
pub fn quotient(x: &BigRational) -> String {
    format!("{} ({})", format_rational(x), format_decimal(x, 6))
}

fn csv_string(rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Left-aligned columns separated by two spaces.
fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{s:<w$}", w = widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn enumerate_text(list: &[TVector]) -> String {
    let mut rows = vec![vec![
        "#".to_string(),
        "T (t2..td)".into(),
        "points".into(),
        "q".into(),
        "decimal".into(),
    ]];
    for (i, t) in list.iter().enumerate() {
        let q = QuotientValue::new(t.quotient());
        rows.push(vec![
            (i + 1).to_string(),
            t.encode(),
            t.describe(),
            q.fraction(),
            q.decimal,
        ]);
    }
    aligned(&rows)
}

pub fn enumerate_csv(list: &[TVector]) -> String {
    let mut rows = vec![vec!["tvector".to_string(), "q".into(), "decimal".into()]];
    for t in list {
        let q = QuotientValue::new(t.quotient());
        rows.push(vec![t.encode(), q.fraction(), q.decimal]);
    }
    csv_string(&rows)
}

pub fn enumerate_json(d: usize, list: &[TVector]) -> Value {
    let candidates: Vec<Value> = list
        .iter()
        .map(|t| {
            let q = QuotientValue::new(t.quotient());
            json!({"tvector": t, "q": q.fraction(), "decimal": q.decimal, "mixed": q.mixed})
        })
        .collect();
    json!({"schema_version": 1, "d": d, "count": list.len(), "candidates": candidates})
}

fn verdict_cells(v: &ExclusionVerdict) -> Vec<String> {
    vec![
        v.criterion.map(|c| c.to_string()).unwrap_or_default(),
        format!("{:?}", v.status).to_lowercase(),
        v.detail.clone(),
    ]
}

pub fn filter_text(
    t: &TVector,
    mode: Mode,
    verdicts: &[ExclusionVerdict],
    overall: &ExclusionVerdict,
) -> String {
    let mut out = format!(
        "T = {} ({}), q = {}, mode {mode}\n",
        t.encode(),
        t.describe(),
        quotient(&t.quotient())
    );
    out.push_str(&aligned(
        &verdicts.iter().map(verdict_cells).collect::<Vec<_>>(),
    ));
    match overall.criterion {
        Some(c) if overall.is_excluded() => writeln!(out, "excluded by {c}").unwrap(),
        _ => writeln!(out, "{}", overall.detail).unwrap(),
    }
    out
}

pub fn filter_csv(verdicts: &[ExclusionVerdict]) -> String {
    let mut rows = vec![vec![
        "criterion".to_string(),
        "status".into(),
        "detail".into(),
    ]];
    rows.extend(verdicts.iter().map(verdict_cells));
    csv_string(&rows)
}

pub fn feasible_text(t: &TVector, outcome: &SearchOutcome, show_witness: bool) -> String {
    let mut out = String::new();
    match outcome.witness() {
        Some(w) => {
            writeln!(
                out,
                "{}: feasible ({} nodes)",
                t.encode(),
                outcome.nodes_explored
            )
            .unwrap();
            if show_witness {
                for (i, p) in w.points.iter().enumerate() {
                    let lines: Vec<String> = p.iter().map(usize::to_string).collect();
                    writeln!(
                        out,
                        "  P{:<3} m={}  lines {}",
                        i + 1,
                        p.len(),
                        lines.join(" ")
                    )
                    .unwrap();
                }
            }
        }
        None => writeln!(
            out,
            "{}: infeasible ({} nodes, exhausted)",
            t.encode(),
            outcome.nodes_explored
        )
        .unwrap(),
    }
    out
}

pub fn report_text(r: &VerificationReport) -> String {
    aligned(&[
        vec!["label".into(), r.label.clone()],
        vec!["field".into(), r.field.short_name()],
        vec!["d".into(), r.d.to_string()],
        vec!["s".into(), r.s.to_string()],
        vec![
            "T".into(),
            format!("{} ({})", r.tvector.encode(), r.tvector.describe()),
        ],
        vec!["H".into(), quotient(&r.harbourne)],
    ])
}

pub fn builtin_list(db: &CertificateDb) -> String {
    let mut rows = vec![vec![
        "label".to_string(),
        "field".into(),
        "d".into(),
        "T".into(),
        "H".into(),
    ]];
    for e in db.entries() {
        rows.push(vec![
            e.label().to_string(),
            e.certificate.field.short_name(),
            e.report.d.to_string(),
            e.report.tvector.describe(),
            quotient(&e.report.harbourne),
        ]);
    }
    aligned(&rows)
}

fn audit_line(c: &CandidateStatus) -> Vec<String> {
    vec![
        String::new(),
        c.tvector.encode(),
        c.q.fraction(),
        c.q.decimal.clone(),
        c.disposition.summary(),
    ]
}

/// Grid (one column per `d`), then one witness line per row.
pub fn table_text(rows: &[TableRow], mode: Mode, audit: bool) -> String {
    let head = match mode {
        Mode::Absolute => "H_L(d)",
        Mode::Complex => "H_L(C,d)",
    };
    let mut grid = vec![
        vec!["d".to_string()],
        vec![head.to_string()],
        vec!["mixed".to_string()],
        vec!["decimal".to_string()],
    ];
    for r in rows {
        let flag = if r.is_sound() { "" } else { "!" };
        grid[0].push(r.d.to_string());
        grid[1].push(format!("{}{flag}", r.value.fraction()));
        grid[2].push(r.value.mixed.clone());
        grid[3].push(r.value.decimal.clone());
    }
    let mut out = aligned(&grid);
    out.push('\n');
    let mut wit = Vec::new();
    for r in rows {
        let mut by = format!("{} over {}", r.witness, r.witness_field.short_name());
        if !r.also_realized_by.is_empty() {
            by.push_str(&format!(" (also {})", r.also_realized_by.join(", ")));
        }
        wit.push(vec![
            format!("d={}", r.d),
            r.value.fraction(),
            r.tvector.describe(),
            by,
        ]);
    }
    out.push_str(&aligned(&wit));
    for r in rows.iter().filter(|r| !r.is_sound()) {
        let open: Vec<String> = r.integrity_failures.iter().map(TVector::encode).collect();
        writeln!(
            out,
            "! d={}: undecided below the minimum: {}",
            r.d,
            open.join("; ")
        )
        .unwrap();
    }
    if audit {
        for r in rows {
            writeln!(out, "\naudit d={} ({} candidates)", r.d, r.audit.len()).unwrap();
            out.push_str(&aligned(
                &r.audit.iter().map(audit_line).collect::<Vec<_>>(),
            ));
        }
    }
    out
}

pub fn table_csv(rows: &[TableRow], audit: bool) -> String {
    let mut out = vec![];
    if audit {
        out.push(
            ["d", "tvector", "q", "decimal", "status", "detail"]
                .map(String::from)
                .to_vec(),
        );
        for r in rows {
            for c in &r.audit {
                out.push(vec![
                    r.d.to_string(),
                    c.tvector.encode(),
                    c.q.fraction(),
                    c.q.decimal.clone(),
                    c.disposition.name().to_string(),
                    c.disposition.summary(),
                ]);
            }
        }
    } else {
        out.push(
            [
                "d", "mode", "value", "decimal", "tvector", "witness", "field", "sound",
            ]
            .map(String::from)
            .to_vec(),
        );
        for r in rows {
            out.push(vec![
                r.d.to_string(),
                r.mode.to_string(),
                r.value.fraction(),
                r.value.decimal.clone(),
                r.tvector.encode(),
                r.witness.clone(),
                r.witness_field.short_name(),
                r.is_sound().to_string(),
            ]);
        }
    }
    csv_string(&out)
}

pub fn table_json(rows: &[TableRow], mode: Mode, audit: bool) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).expect("serializable");
            let obj = v.as_object_mut().expect("row is an object");
            obj.insert("certificate".into(), r.certificate.to_value());
            if !audit {
                obj.remove("audit");
            }
            v
        })
        .collect();
    json!({"mode": mode, "rows": rows})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aligned_pads_columns() {
        let rows = vec![
            vec!["a".to_string(), "bb".into()],
            vec!["ccc".to_string(), "d".into()],
        ];
        assert_eq!(aligned(&rows), "a    bb\nccc  d\n");
    }

    #[test]
    fn csv_quotes_tvectors() {
        let list = harbourne::tspace::enumerate_tvectors(3, None).unwrap();
        assert_eq!(
            enumerate_csv(&list),
            "tvector,q,decimal\n\"3,0\",-1,-1.000000\n\"0,1\",0,0.000000\n"
        );
    }

    #[test]
    fn quotient_shows_fraction_and_decimal() {
        let x = BigRational::new((-29).into(), 12.into());
        assert_eq!(quotient(&x), "-29/12 (-2.416667)");
    }
}
