//! JSON-lines catalog of scan records.
//!
//! One record per direction `a`, fields in a fixed order so two runs over the
//! same box produce byte-identical files. Integers are emitted as JSON
//! numbers while they fit the double-exact range and as strings beyond it.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use lacunary::lattice::IntMatrix;
use lacunary::parse::print_poly;
use lacunary::toric::{CertificateOutcome, ImageStatus, OmegaCertificate};

/// Largest integer serialized as a JSON number: `2^53 - 1`.
const JSON_SAFE_MAX: i64 = 9_007_199_254_740_991;

#[derive(Clone, Debug)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.abs() <= BigInt::from(JSON_SAFE_MAX) {
            s.serialize_i64(self.0.to_i64().expect("within range"))
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

fn int_vec(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

fn int_matrix(m: &IntMatrix) -> Vec<Vec<JsonInt>> {
    m.rows_iter().map(int_vec).collect()
}

#[derive(Serialize, Clone, Debug)]
pub struct FactorPairJson {
    pub factor: String,
    pub image: String,
    pub status: &'static str,
    pub multiplicity: u32,
}

#[derive(Serialize, Clone, Debug)]
pub struct CertificateJson {
    pub m: Vec<Vec<JsonInt>>,
    pub b: Vec<JsonInt>,
    #[serde(rename = "factorPairs")]
    pub factor_pairs: Vec<FactorPairJson>,
}

#[derive(Serialize, Clone, Debug)]
pub struct SkippedJson {
    pub m: Vec<Vec<JsonInt>>,
    pub reason: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct FailureJson {
    pub reason: String,
    pub skipped: Vec<SkippedJson>,
}

#[derive(Serialize, Clone, Debug)]
#[serde(untagged)]
pub enum OutcomeJson {
    Found(CertificateJson),
    Failed { failure: FailureJson },
}

#[derive(Serialize, Clone, Debug)]
pub struct CatalogRecord {
    #[serde(serialize_with = "serialize_a")]
    pub a: Vec<BigInt>,
    pub certificate: OutcomeJson,
    #[serde(rename = "patternKey")]
    pub pattern_key: String,
    #[serde(rename = "wallTimeMs")]
    pub wall_time_ms: u64,
    #[serde(rename = "engineVersion")]
    pub engine_version: String,
}

fn serialize_a<S: Serializer>(a: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(a.len()))?;
    for v in a {
        seq.serialize_element(&JsonInt(v.clone()))?;
    }
    seq.end()
}

pub fn engine_version() -> String {
    format!("lacunary {}", env!("CARGO_PKG_VERSION"))
}

impl CatalogRecord {
    pub fn new(a: Vec<BigInt>, outcome: &CertificateOutcome, wall_time_ms: u64) -> Self {
        let (certificate, pattern_key) = match outcome {
            CertificateOutcome::Found(cert) => {
                (OutcomeJson::Found(certificate_json(cert)), pattern_key(cert))
            }
            CertificateOutcome::Failed(failure) => (
                OutcomeJson::Failed {
                    failure: FailureJson {
                        reason: failure.reason.clone(),
                        skipped: failure
                            .skipped
                            .iter()
                            .map(|s| SkippedJson {
                                m: int_matrix(&s.matrix),
                                reason: s.reason.clone(),
                            })
                            .collect(),
                    },
                },
                "failure".to_string(),
            ),
        };
        CatalogRecord {
            a,
            certificate,
            pattern_key,
            wall_time_ms,
            engine_version: engine_version(),
        }
    }

    pub fn matrix(&self) -> Option<&CertificateJson> {
        match &self.certificate {
            OutcomeJson::Found(c) => Some(c),
            OutcomeJson::Failed { .. } => None,
        }
    }
}

fn certificate_json(cert: &OmegaCertificate) -> CertificateJson {
    CertificateJson {
        m: int_matrix(&cert.matrix),
        b: int_vec(&cert.b),
        factor_pairs: cert
            .pairs
            .iter()
            .map(|p| FactorPairJson {
                factor: print_poly(&p.factor),
                image: print_poly(&p.image),
                status: match p.status {
                    ImageStatus::Unit => "unit",
                    ImageStatus::Irreducible => "irreducible",
                },
                multiplicity: p.multiplicity,
            })
            .collect(),
    }
}

/// Canonical pattern descriptor: per non-unit image its fiber-degree span,
/// term count and multiplicity, sorted so the key is invariant under factor
/// reordering, plus the number of unit images.
pub fn pattern_key(cert: &OmegaCertificate) -> String {
    let mut parts = Vec::new();
    let mut units = 0u32;
    for pair in &cert.pairs {
        match pair.status {
            ImageStatus::Unit => units += pair.multiplicity,
            ImageStatus::Irreducible => {
                let zspan = pair
                    .image
                    .ambient()
                    .fiber()
                    .and_then(|f| {
                        let name = pair.image.ambient().vars()[f].clone();
                        pair.image
                            .degree_in(&name)
                            .ok()
                            .map(|(lo, hi)| hi - lo)
                    })
                    .unwrap_or_default();
                parts.push(format!(
                    "d{}n{}m{}",
                    zspan,
                    pair.image.num_terms(),
                    pair.multiplicity
                ));
            }
        }
    }
    parts.sort();
    format!("{}|u{}", parts.join(","), units)
}
