//! Serializable realization evidence and its independent verifier.
//!
//! ```json
//! {"label": "fano-f2",
//!  "field": {"kind": "prime", "p": 2},
//!  "lines": [[0, 0, 1], ...],
//!  "claimed_tvector": "0,7,0,0,0,0"}
//! ```
//!
//! A certificate is never trusted: [`verify_certificate`] rebuilds the
//! configuration from coordinates and recomputes everything.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::GeometryError;
use crate::exactnum::{format_decimal, format_rational, FieldDescriptor, Scalar};
use crate::geometry::{LineConfiguration, ProjTriple};
use crate::tspace::{serialize_rational, TVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub label: String,
    pub field: FieldDescriptor,
    pub lines: Vec<[Scalar; 3]>,
    pub claimed_tvector: Option<TVector>,
}

#[derive(Serialize, Deserialize)]
struct RawCertificate {
    label: String,
    field: FieldDescriptor,
    lines: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    claimed_tvector: Option<String>,
}

impl Certificate {
    /// Snapshot of a configuration, claiming its own T-vector.
    pub fn from_configuration(label: impl Into<String>, config: &LineConfiguration) -> Self {
        Certificate {
            label: label.into(),
            field: config.field(),
            lines: config.lines().iter().map(|l| l.coords().clone()).collect(),
            claimed_tvector: Some(config.tvector()),
        }
    }

    pub fn d(&self) -> usize {
        self.lines.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("certificate serializes")
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self.to_raw()).expect("certificate serializes")
    }

    fn to_raw(&self) -> RawCertificate {
        RawCertificate {
            label: self.label.clone(),
            field: self.field,
            lines: self
                .lines
                .iter()
                .map(|l| l.iter().map(Scalar::encode).collect())
                .collect(),
            claimed_tvector: self.claimed_tvector.as_ref().map(TVector::encode),
        }
    }

    /// Parses a certificate, reporting the JSON path of the first problem.
    pub fn from_json(text: &str) -> Result<Self, GeometryError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: RawCertificate =
            serde_path_to_error::deserialize(de).map_err(|e| GeometryError::Malformed {
                path: e.path().to_string(),
                message: e.inner().to_string(),
            })?;
        let field = raw.field;
        let lines = raw
            .lines
            .iter()
            .enumerate()
            .map(|(i, line)| {
                if line.len() != 3 {
                    return Err(GeometryError::Malformed {
                        path: format!("lines[{i}]"),
                        message: format!("expected 3 coordinates, got {}", line.len()),
                    });
                }
                let mut out = Vec::with_capacity(3);
                for (j, v) in line.iter().enumerate() {
                    out.push(
                        Scalar::decode(field, v).map_err(|e| GeometryError::Malformed {
                            path: format!("lines[{i}][{j}]"),
                            message: e.to_string(),
                        })?,
                    );
                }
                Ok([out[0].clone(), out[1].clone(), out[2].clone()])
            })
            .collect::<Result<Vec<_>, _>>()?;
        let claimed_tvector = raw
            .claimed_tvector
            .map(|s| {
                TVector::parse(lines.len(), &s).map_err(|e| GeometryError::Malformed {
                    path: "claimed_tvector".into(),
                    message: e.to_string(),
                })
            })
            .transpose()?;
        Ok(Certificate {
            label: raw.label,
            field,
            lines,
            claimed_tvector,
        })
    }

    /// Rebuilds the configuration from the stored coordinates.
    pub fn configuration(&self) -> Result<LineConfiguration, GeometryError> {
        let lines = self
            .lines
            .iter()
            .enumerate()
            .map(|(i, l)| {
                ProjTriple::new(l.clone()).map_err(|e| match e {
                    GeometryError::ZeroLine(_) => GeometryError::ZeroLine(i),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        LineConfiguration::new(self.field, lines)
    }
}

/// What a successful verification established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub label: String,
    pub field: FieldDescriptor,
    pub d: usize,
    pub s: usize,
    pub tvector: TVector,
    #[serde(serialize_with = "serialize_rational")]
    pub harbourne: BigRational,
    pub harbourne_decimal: String,
}

impl VerificationReport {
    pub fn harbourne_fraction(&self) -> String {
        format_rational(&self.harbourne)
    }
}

/// Recomputes the configuration's T-vector and Harbourne value, checks every
/// incidence invariant, and compares against the claimed T-vector if any.
pub fn verify_certificate(cert: &Certificate) -> Result<VerificationReport, GeometryError> {
    let config = cert.configuration()?;
    config
        .check_invariants()
        .map_err(GeometryError::Invariant)?;
    let tvector = config.tvector();
    if let Some(claimed) = &cert.claimed_tvector {
        if *claimed != tvector {
            return Err(GeometryError::ClaimMismatch {
                claimed: claimed.encode(),
                actual: tvector.encode(),
            });
        }
    }
    let harbourne = config.harbourne_value();
    if harbourne != tvector.quotient() {
        return Err(GeometryError::Invariant(
            "Harbourne value differs from the combinatorial quotient".into(),
        ));
    }
    Ok(VerificationReport {
        label: cert.label.clone(),
        field: cert.field,
        d: config.d(),
        s: config.s(),
        harbourne_decimal: format_decimal(&harbourne, 6),
        tvector,
        harbourne,
    })
}
