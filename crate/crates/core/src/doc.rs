//! JSON documents for ideals, multiplicative sets, certificates and
//! decompositions. The shapes are mirrored by the files under `schemas/`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::decompose::{Component, Decomposition, MinimalityReport};
use crate::error::{Error, Result};
use crate::ideal::{self, Ideal, MsetRepr, MultiplicativeSet};
use crate::predicates::{
    self,
    IrreducibilityCertificate, SFiniteCertificate, SPrimaryCertificate, SpectrumReport, Universe,
};
use crate::ring::{parse_integer, Ring, RingElement};

/// `{"gens": [...]}` for any ring, `{"n": 6}` for `6Z`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum IdealDoc {
    Gens { gens: Vec<Value> },
    Principal { n: Value },
}

/// Multiplicative set descriptions:
/// `{"gens": [...]}` (closure of the generators; `[]` is `{1}`),
/// `{"unit_group": true}`, `{"primes": [2, 5], "units": false}`,
/// `{"complement_of_prime": 3}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum MsetDoc {
    Gens {
        gens: Vec<Value>,
    },
    UnitGroup {
        unit_group: bool,
    },
    Primes {
        primes: Vec<u64>,
        #[serde(default)]
        units: bool,
    },
    Complement {
        complement_of_prime: u64,
    },
}

pub fn ideal_to_doc(i: &Ideal) -> IdealDoc {
    match i.generator() {
        Some(_) => IdealDoc::Principal {
            n: i.generator_payloads().remove(0),
        },
        None => IdealDoc::Gens {
            gens: i.generator_payloads(),
        },
    }
}

pub fn ideal_from_doc(ring: &Ring, doc: &IdealDoc) -> Result<Ideal> {
    match doc {
        IdealDoc::Gens { gens } => ideal::ideal_from_payloads(ring, gens),
        IdealDoc::Principal { n } => {
            if ring.is_finite() {
                return ideal::ideal_from_payloads(ring, std::slice::from_ref(n));
            }
            let v = parse_integer(n)?;
            Ok(Ideal::integers(v.magnitude().clone()))
        }
    }
}

pub fn mset_to_doc(s: &MultiplicativeSet) -> MsetDoc {
    match s.repr() {
        MsetRepr::Finite { gens, .. } => {
            let r = s.ring().finite().expect("finite ring");
            MsetDoc::Gens {
                gens: gens.iter().map(|&g| r.label(g).clone()).collect(),
            }
        }
        MsetRepr::PrimeSet { primes, units } => MsetDoc::Primes {
            primes: primes.clone(),
            units: *units,
        },
        MsetRepr::ComplementOfPrime(p) => MsetDoc::Complement {
            complement_of_prime: *p,
        },
    }
}

pub fn mset_from_doc(ring: &Ring, doc: &MsetDoc) -> Result<MultiplicativeSet> {
    match (doc, ring) {
        (MsetDoc::Gens { gens }, Ring::Finite(_)) => MultiplicativeSet::closure_of_payloads(ring, gens),
        (MsetDoc::Gens { gens }, Ring::Integers) if gens.is_empty() => MultiplicativeSet::prime_set(&[], false),
        (MsetDoc::UnitGroup { unit_group: true }, _) => MultiplicativeSet::unit_group(ring),
        (MsetDoc::UnitGroup { unit_group: false }, _) => Ok(MultiplicativeSet::trivial(ring)),
        (MsetDoc::Primes { primes, units }, Ring::Integers) => MultiplicativeSet::prime_set(primes, *units),
        (MsetDoc::Complement { complement_of_prime }, Ring::Integers) => {
            MultiplicativeSet::complement_of_prime(*complement_of_prime)
        }
        _ => Err(Error::InvalidMultiplicativeSet(
            "this description does not fit the ring".into(),
        )),
    }
}

fn payload(ring: &Ring, e: &RingElement) -> Value {
    ring.payload(e).unwrap_or(Value::Null)
}

fn element_from(ring: &Ring, v: &Value) -> Result<RingElement> {
    ring.element(v)
}

/// Serialized certificate: `{predicate, verdict, witness, counterexample,
/// universe, detail}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub predicate: String,
    pub verdict: bool,
    pub witness: Option<Value>,
    pub counterexample: Option<Value>,
    pub universe: Option<Universe>,
    #[serde(default)]
    pub detail: Value,
}

impl CertificateDoc {
    pub fn plain(predicate: &str, verdict: bool, universe: &str) -> Self {
        CertificateDoc {
            predicate: predicate.into(),
            verdict,
            witness: None,
            counterexample: None,
            universe: Some(Universe {
                description: universe.into(),
                candidates: 0,
            }),
            detail: Value::Null,
        }
    }

    pub fn from_s_primary(predicate: &str, ring: &Ring, cert: &SPrimaryCertificate) -> Self {
        let refutations: Vec<Value> = cert
            .refutations
            .iter()
            .map(|f| json!({"s": payload(ring, &f.s), "a": payload(ring, &f.a), "b": payload(ring, &f.b)}))
            .collect();
        CertificateDoc {
            predicate: predicate.into(),
            verdict: cert.verdict,
            witness: cert.witness.as_ref().map(|w| payload(ring, w)),
            counterexample: cert
                .counterexample
                .as_ref()
                .map(|(a, b)| json!({"a": payload(ring, a), "b": payload(ring, b)})),
            universe: Some(cert.universe.clone()),
            detail: json!({ "refutations": refutations }),
        }
    }

    /// Inverse of [`CertificateDoc::from_s_primary`].
    pub fn to_s_primary(&self, ring: &Ring) -> Result<SPrimaryCertificate> {
        let get = |v: &Value, k: &str| -> Result<RingElement> {
            element_from(ring, v.get(k).ok_or_else(|| Error::Document(format!("missing {k}")))?)
        };
        let refutations = self
            .detail
            .get("refutations")
            .and_then(Value::as_array)
            .map(|rs| {
                rs.iter()
                    .map(|f| {
                        Ok(crate::predicates::Refutation {
                            s: get(f, "s")?,
                            a: get(f, "a")?,
                            b: get(f, "b")?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?
            .unwrap_or_default();
        Ok(SPrimaryCertificate {
            verdict: self.verdict,
            witness: self.witness.as_ref().map(|w| element_from(ring, w)).transpose()?,
            counterexample: self
                .counterexample
                .as_ref()
                .map(|c| Ok::<_, Error>((get(c, "a")?, get(c, "b")?)))
                .transpose()?,
            refutations,
            universe: self.universe.clone().unwrap_or(Universe {
                description: String::new(),
                candidates: 0,
            }),
        })
    }

    pub fn from_irreducibility(predicate: &str, ring: &Ring, cert: &IrreducibilityCertificate) -> Self {
        CertificateDoc {
            predicate: predicate.into(),
            verdict: cert.verdict,
            witness: None,
            counterexample: cert.counterexample.as_ref().map(|c| {
                json!({
                    "I": ideal_to_doc(&c.i),
                    "J": ideal_to_doc(&c.j),
                    "s": payload(ring, &c.s),
                })
            }),
            universe: Some(cert.universe.clone()),
            detail: Value::Null,
        }
    }

    pub fn from_s_finite(predicate: &str, ring: &Ring, cert: &SFiniteCertificate) -> Self {
        let mut detail = serde_json::Map::new();
        if let Some(j) = &cert.j {
            detail.insert("J".into(), serde_json::to_value(ideal_to_doc(j)).expect("serializable"));
        }
        if let Some(n) = cert.n {
            detail.insert("n".into(), json!(n));
        }
        CertificateDoc {
            predicate: predicate.into(),
            verdict: cert.verdict,
            witness: cert.s.as_ref().map(|s| payload(ring, s)),
            counterexample: None,
            universe: Some(cert.universe.clone()),
            detail: Value::Object(detail),
        }
    }

    pub fn from_spectrum(ring: &Ring, report: &SpectrumReport) -> Self {
        let primes: Vec<Value> = report
            .primes
            .iter()
            .map(|(p, c)| {
                json!({
                    "P": ideal_to_doc(p),
                    "certificate": CertificateDoc::from_s_finite("radically-s-finite", ring, c),
                })
            })
            .collect();
        CertificateDoc {
            predicate: "s-noetherian-spectrum".into(),
            verdict: report.verdict,
            witness: None,
            counterexample: None,
            universe: Some(Universe {
                description: format!("{} prime ideals of {}", primes.len(), ring.describe()),
                candidates: primes.len() as u64,
            }),
            detail: json!({ "primes": primes }),
        }
    }

    /// One-line rendering, e.g. `S-primary: YES (witness s=2)`.
    pub fn text(&self) -> String {
        let name = display_name(&self.predicate);
        let verdict = if self.verdict { "YES" } else { "NO" };
        let mut line = format!("{name}: {verdict}");
        let mut notes = Vec::new();
        if let Some(w) = &self.witness {
            notes.push(format!("witness s={}", compact(w)));
        }
        if let Some(j) = self.detail.get("J") {
            let label = if self.predicate.ends_with("sft") { "F" } else { "J" };
            notes.push(format!("{label}={}", ideal_doc_text(j)));
        }
        if let Some(n) = self.detail.get("n") {
            notes.push(format!("n={n}"));
        }
        if !notes.is_empty() {
            line.push_str(&format!(" ({})", notes.join(", ")));
        }
        if let Some(c) = &self.counterexample {
            line.push_str(&format!(" (counterexample {})", compact(c)));
        }
        line
    }
}

fn ideal_doc_text(v: &Value) -> String {
    match serde_json::from_value::<IdealDoc>(v.clone()) {
        Ok(IdealDoc::Principal { n }) => format!("{}Z", compact(&n)),
        Ok(IdealDoc::Gens { gens }) if gens.is_empty() => "(0)".into(),
        Ok(IdealDoc::Gens { gens }) => {
            format!("({})", gens.iter().map(compact).collect::<Vec<_>>().join(", "))
        }
        Err(_) => compact(v),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Human name of a predicate id such as `s-primary`.
pub fn display_name(predicate: &str) -> String {
    match predicate {
        "nonnil" => "nonnil".into(),
        "prime" => "prime".into(),
        "primary" => "primary".into(),
        "irreducible" => "irreducible".into(),
        "divided" => "divided".into(),
        "sft" => "SFT".into(),
        "s-sft" => "S-SFT".into(),
        "radically-s-finite" => "radically S-finite".into(),
        "s-noetherian-spectrum" => "S-Noetherian spectrum".into(),
        other => match other.strip_prefix("s-") {
            Some(rest) => format!("S-{rest}"),
            None => other.into(),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    #[serde(rename = "Q")]
    pub q: IdealDoc,
    #[serde(rename = "P", default, skip_serializing_if = "Option::is_none")]
    pub p: Option<IdealDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinimalityDoc {
    pub minimal: bool,
    pub distinct_radicals: bool,
    pub irredundant: bool,
    pub irredundant_unsaturated: bool,
    pub forms_agree: bool,
    pub radical_clashes: Vec<(usize, usize)>,
    pub redundant: Vec<usize>,
    pub redundant_unsaturated: Vec<usize>,
}

impl From<&MinimalityReport> for MinimalityDoc {
    fn from(m: &MinimalityReport) -> Self {
        MinimalityDoc {
            minimal: m.is_minimal(),
            distinct_radicals: m.distinct_radicals,
            irredundant: m.irredundant,
            irredundant_unsaturated: m.irredundant_unsaturated,
            forms_agree: m.forms_agree,
            radical_clashes: m.radical_clashes.clone(),
            redundant: m.redundant.clone(),
            redundant_unsaturated: m.redundant_unsaturated.clone(),
        }
    }
}

/// `{"target": ..., "components": [{"Q", "P", "s"}], "minimal": {...}}`.
/// On input `P`, `s` and `minimal` may be omitted and are recomputed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionDoc {
    pub target: IdealDoc,
    pub components: Vec<ComponentDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal: Option<MinimalityDoc>,
}

pub fn decomposition_to_doc(d: &Decomposition) -> DecompositionDoc {
    let ring = d.target.ring();
    DecompositionDoc {
        target: ideal_to_doc(&d.target),
        components: d
            .components
            .iter()
            .map(|c| ComponentDoc {
                q: ideal_to_doc(&c.q),
                p: Some(ideal_to_doc(&c.p)),
                s: Some(payload(ring, &c.s)),
            })
            .collect(),
        minimal: Some(MinimalityDoc::from(&d.minimal)),
    }
}

/// Reads a decomposition. Missing radicals and witnesses are computed;
/// supplied ones are kept as given so that validation can reject them.
pub fn decomposition_from_doc(ring: &Ring, s: &MultiplicativeSet, doc: &DecompositionDoc) -> Result<Decomposition> {
    let target = ideal_from_doc(ring, &doc.target)?;
    let mut components = Vec::new();
    for c in &doc.components {
        let q = ideal_from_doc(ring, &c.q)?;
        let p = match &c.p {
            Some(p) => ideal_from_doc(ring, p)?,
            None => ideal::radical(&q),
        };
        let witness = match &c.s {
            Some(v) => ring.element(v)?,
            None => crate::predicates::is_s_primary(&q, s)?
                .witness
                .ok_or_else(|| Error::InvalidDecomposition(format!("{q:?} is not S-primary")))?,
        };
        components.push(Component { q, p, s: witness });
    }
    let mut d = Decomposition {
        target,
        components,
        minimal: MinimalityReport::default(),
    };
    d.minimal = crate::decompose::verify_minimality(&d, s)?;
    Ok(d)
}

/// Predicate names understood by [`run_predicate`].
pub const PREDICATES: [&str; 13] = [
    "nonnil",
    "prime",
    "primary",
    "s-prime",
    "s-primary",
    "irreducible",
    "s-irreducible",
    "s-finite",
    "sft",
    "s-sft",
    "radically-s-finite",
    "divided",
    "s-noetherian-spectrum",
];

/// Runs a named predicate and returns its certificate document.
pub fn run_predicate(
    name: &str,
    ring: &Ring,
    i: Option<&Ideal>,
    s: Option<&MultiplicativeSet>,
) -> Result<CertificateDoc> {
    use CertificateDoc as C;
    let trivial = MultiplicativeSet::trivial(ring);
    let s = s.unwrap_or(&trivial);
    if name == "s-noetherian-spectrum" {
        return Ok(C::from_spectrum(ring, &predicates::has_s_noetherian_spectrum(ring, s)?));
    }
    let i = i.ok_or_else(|| Error::Document(format!("{name} needs an ideal")))?;
    let universe = format!("ideal {} of {}", i.describe(), ring.describe());
    Ok(match name {
        "nonnil" => C::plain(name, predicates::is_nonnil(i), &universe),
        "divided" => C::plain(name, ideal::is_divided(i), &universe),
        "irreducible" => C::plain(name, predicates::is_irreducible(i)?, &universe),
        "prime" => C::from_s_primary(name, ring, &predicates::is_s_prime(i, &trivial)?),
        "primary" => C::from_s_primary(name, ring, &predicates::is_s_primary(i, &trivial)?),
        "s-prime" => C::from_s_primary(name, ring, &predicates::is_s_prime(i, s)?),
        "s-primary" => C::from_s_primary(name, ring, &predicates::is_s_primary(i, s)?),
        "s-irreducible" => C::from_irreducibility(name, ring, &predicates::is_s_irreducible(i, s)?),
        "s-finite" => C::from_s_finite(name, ring, &predicates::is_s_finite(i, s)?),
        "sft" => C::from_s_finite(name, ring, &predicates::is_sft(i)?),
        "s-sft" => C::from_s_finite(name, ring, &predicates::is_s_sft(i, s)?),
        "radically-s-finite" => C::from_s_finite(name, ring, &predicates::is_radically_s_finite(i, s)?),
        other => return Err(Error::Document(format!("unknown predicate {other}"))),
    })
}
