use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use harbourne::certificate::{verify_certificate, Certificate};
use harbourne::criteria::{
    apply_all, hirzebruch_filter, multiplicity_sum_filter, parity_profile_filter,
    two_pencils_filter, Mode,
};
use harbourne::error::{GeometryError, PipelineError, SearchError};
use harbourne::exactnum::{parse_rational, FieldDescriptor};
use harbourne::incidence::feasible_arrangement;
use harbourne::pipeline::{builtin_certificates, check_integrity, compute_table};
use harbourne::realize::{realize_over_prime_field, RealizeOutcome};
use harbourne::tspace::{enumerate_tvectors, TVector, SOFT_MAX_DEGREE};
use harbourne::DEFAULT_NODE_BUDGET;

use crate::render;
use crate::{exit, Failure, Format};

pub const BUDGET_ENV: &str = "HARB_NODE_BUDGET";

/// `--budget` wins over the environment, which wins over the default.
fn node_budget(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{BUDGET_ENV}={v:?} is not a node count"))),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

fn check_degree(d: usize) -> Result<(), Failure> {
    if d < 2 {
        return Err(Failure::usage(format!("d = {d}: need at least 2 lines")));
    }
    if d > SOFT_MAX_DEGREE {
        eprintln!("harb: warning: d = {d} exceeds {SOFT_MAX_DEGREE}; searches may be slow");
    }
    Ok(())
}

fn parse_target(d: usize, t: &str) -> Result<TVector, Failure> {
    check_degree(d)?;
    TVector::parse(d, t).map_err(|e| Failure::usage(format!("invalid T-vector {t:?}: {e}")))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn with_schema(mut v: Value) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("schema_version".into(), json!(1));
    if let Value::Object(m) = &mut v {
        out.extend(std::mem::take(m));
    }
    Value::Object(out)
}

pub fn enumerate(d: usize, below: Option<&str>, format: Format) -> Result<u8, Failure> {
    check_degree(d)?;
    let ceiling = below
        .map(|s| parse_rational(s).map_err(|e| Failure::usage(format!("--below {s:?}: {e}"))))
        .transpose()?;
    let list =
        enumerate_tvectors(d, ceiling.as_ref()).map_err(|e| Failure::usage(e.to_string()))?;
    let text = match format {
        Format::Table => render::enumerate_text(&list),
        Format::Csv => render::enumerate_csv(&list),
        Format::Json => pretty(&render::enumerate_json(d, &list)),
    };
    emit(&text, None)?;
    Ok(exit::SUCCESS)
}

pub fn filter(d: usize, t: &str, mode: Mode, format: Format) -> Result<u8, Failure> {
    let t = parse_target(d, t)?;
    let mut verdicts = vec![
        multiplicity_sum_filter(&t),
        two_pencils_filter(&t),
        parity_profile_filter(&t),
    ];
    if mode == Mode::Complex {
        verdicts.push(hirzebruch_filter(&t));
    }
    let overall = apply_all(&t, mode);
    let text = match format {
        Format::Json => pretty(&with_schema(json!({
            "tvector": t,
            "mode": mode,
            "filters": verdicts,
            "verdict": overall,
        }))),
        Format::Csv => render::filter_csv(&verdicts),
        Format::Table => render::filter_text(&t, mode, &verdicts, &overall),
    };
    emit(&text, None)?;
    Ok(if overall.is_excluded() {
        exit::NEGATIVE
    } else {
        exit::SUCCESS
    })
}

pub fn feasible(
    d: usize,
    t: &str,
    budget: Option<u64>,
    out: Option<&Path>,
    format: Format,
) -> Result<u8, Failure> {
    let t = parse_target(d, t)?;
    let budget = node_budget(budget)?;
    let outcome = match feasible_arrangement(&t, budget) {
        Ok(o) => o,
        Err(e @ SearchError::BudgetExceeded { .. }) => {
            if format == Format::Json {
                emit(
                    &pretty(&with_schema(json!({
                        "tvector": t,
                        "result": "inconclusive",
                        "budget": budget,
                    }))),
                    None,
                )?;
            }
            return Err(Failure::new(exit::INCONCLUSIVE, e.to_string()));
        }
    };
    if let (Some(path), Some(w)) = (out, outcome.witness()) {
        emit(
            &pretty(&serde_json::to_value(w).expect("serializable")),
            Some(path),
        )?;
    }
    let text = match format {
        Format::Json => {
            let mut v = serde_json::to_value(&outcome).expect("serializable");
            v["tvector"] = json!(t);
            pretty(&with_schema(v))
        }
        Format::Table | Format::Csv => render::feasible_text(&t, &outcome, out.is_none()),
    };
    emit(&text, None)?;
    Ok(if outcome.is_feasible() {
        exit::SUCCESS
    } else {
        exit::NEGATIVE
    })
}

fn parse_field(text: &str) -> Result<u32, Failure> {
    let digits = text
        .strip_prefix('f')
        .or_else(|| text.strip_prefix('F'))
        .unwrap_or(text);
    let p: u32 = digits.parse().map_err(|_| {
        Failure::usage(format!(
            "--field {text:?}: expected f2, f3, f5, f7, f11 or f13"
        ))
    })?;
    FieldDescriptor::prime(p).map_err(|e| Failure::usage(format!("--field {text:?}: {e}")))?;
    Ok(p)
}

pub fn realize(
    d: usize,
    t: &str,
    field: &str,
    budget: Option<u64>,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let t = parse_target(d, t)?;
    let p = parse_field(field)?;
    let budget = node_budget(budget)?;
    let outcome = match realize_over_prime_field(&t, p, budget) {
        Ok(o) => o,
        Err(e @ GeometryError::TooManyLines { .. }) => return Err(Failure::usage(e.to_string())),
        Err(e) => return Err(Failure::new(exit::INTEGRITY, e.to_string())),
    };
    match outcome {
        RealizeOutcome::Found {
            configuration,
            nodes,
            ..
        } => {
            let label = format!("search-f{p}-{}", t.encode());
            let cert = Certificate::from_configuration(label, &configuration);
            let report = verify_certificate(&cert).map_err(|e| {
                Failure::new(
                    exit::INTEGRITY,
                    format!("search hit failed verification: {e}"),
                )
            })?;
            if report.tvector != t {
                return Err(Failure::new(
                    exit::INTEGRITY,
                    format!("search hit has T = {}, expected {}", report.tvector, t),
                ));
            }
            let mut json = cert.to_json();
            json.push('\n');
            emit(&json, out)?;
            eprintln!(
                "found in PG(2,{p}) after {nodes} nodes: H = {}",
                render::quotient(&report.harbourne)
            );
            Ok(exit::SUCCESS)
        }
        RealizeOutcome::NotFound {
            exhausted: true,
            nodes,
        } => {
            println!("not found in PG(2,{p}): exhausted ({nodes} nodes)");
            Ok(exit::NEGATIVE)
        }
        RealizeOutcome::NotFound {
            exhausted: false,
            nodes,
        } => Err(Failure::new(
            exit::INCONCLUSIVE,
            format!("not found in PG(2,{p}): node budget exceeded after {nodes} nodes"),
        )),
    }
}

pub fn verify(path: &Path, format: Format) -> Result<u8, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let cert =
        Certificate::from_json(&text).map_err(|e| Failure::new(exit::NEGATIVE, e.to_string()))?;
    let report = verify_certificate(&cert)
        .map_err(|e| Failure::new(exit::NEGATIVE, format!("{}: {e}", cert.label)))?;
    let out = match format {
        Format::Json => pretty(&with_schema(
            serde_json::to_value(&report).expect("serializable"),
        )),
        Format::Table | Format::Csv => render::report_text(&report),
    };
    emit(&out, None)?;
    Ok(exit::SUCCESS)
}

fn builtin_db() -> Result<harbourne::pipeline::CertificateDb, Failure> {
    builtin_certificates().map_err(|e| Failure::new(exit::INTEGRITY, e.to_string()))
}

pub fn builtin(label: Option<&str>, out: Option<&Path>) -> Result<u8, Failure> {
    let db = builtin_db()?;
    match label {
        None => emit(&render::builtin_list(&db), out)?,
        Some(label) => {
            let entry = db.get(label).ok_or_else(|| {
                Failure::usage(format!("no built-in certificate named {label:?}"))
            })?;
            let mut json = entry.certificate.to_json();
            json.push('\n');
            emit(&json, out)?;
        }
    }
    Ok(exit::SUCCESS)
}

pub struct TableArgs {
    pub max_d: usize,
    pub mode: Mode,
    pub fields: Vec<u32>,
    pub audit: bool,
    pub budget: Option<u64>,
    pub jobs: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub fn table(args: TableArgs) -> Result<u8, Failure> {
    if !(2..=SOFT_MAX_DEGREE).contains(&args.max_d) {
        return Err(Failure::usage(format!(
            "--max-d {}: must be between 2 and {SOFT_MAX_DEGREE}",
            args.max_d
        )));
    }
    for &p in &args.fields {
        FieldDescriptor::prime(p).map_err(|e| Failure::usage(format!("--fields: {e}")))?;
    }
    if args.jobs == 0 {
        return Err(Failure::usage("--jobs must be at least 1"));
    }
    let budget = node_budget(args.budget)?;
    let db = builtin_db()?;
    let rows = compute_table(args.max_d, args.mode, &args.fields, &db, budget, args.jobs).map_err(
        |e| match e {
            PipelineError::TVector(_) => Failure::usage(e.to_string()),
            other => Failure::new(exit::INTEGRITY, other.to_string()),
        },
    )?;
    let text = match args.format {
        Format::Table => render::table_text(&rows, args.mode, args.audit),
        Format::Csv => render::table_csv(&rows, args.audit),
        Format::Json => pretty(&with_schema(render::table_json(
            &rows, args.mode, args.audit,
        ))),
    };
    emit(&text, args.out.as_deref())?;
    match check_integrity(&rows) {
        Ok(()) => Ok(exit::SUCCESS),
        Err(e) => Err(Failure::new(exit::INTEGRITY, e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_names() {
        assert_eq!(parse_field("f3").unwrap(), 3);
        assert_eq!(parse_field("F13").unwrap(), 13);
        assert_eq!(parse_field("7").unwrap(), 7);
        assert_eq!(parse_field("f4").unwrap_err().code, exit::USAGE);
        assert_eq!(parse_field("q").unwrap_err().code, exit::USAGE);
    }

    #[test]
    fn explicit_budget_wins() {
        assert_eq!(node_budget(Some(17)).unwrap(), 17);
    }

    #[test]
    fn targets_are_validated() {
        assert_eq!(parse_target(1, "1").unwrap_err().code, exit::USAGE);
        let e = parse_target(4, "1,1,1").unwrap_err();
        assert!(e.message.contains("imbalance"), "{}", e.message);
        assert_eq!(parse_target(4, "0,2,0").unwrap().encode(), "0,2,0");
    }

    #[test]
    fn schema_version_comes_first() {
        let v = with_schema(json!({"a": 1, "b": 2}));
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["schema_version", "a", "b"]);
    }
}
