//! The JSON bundle written and read by every subcommand.
//!
//! Polynomials are listed highest degree first; field elements are coordinate
//! vectors on `1, theta, ..., theta^(d-1)`. Every rational is a string `"n"` or
//! `"n/d"` in lowest terms, so the format never goes through floating point.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use splitrec_core::rat::{self, Rat};
use splitrec_core::verify::Bundle;
use splitrec_core::{
    idempotent, FieldElement, GaloisGroup, IdempotentTarget, Irreducibility, NumberField, PolyQ, Recurrence,
};

use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: u32 = 1;

/// Recorded in every artifact: factorization randomness is derived from `(p, f)`.
pub const SEED: &str = "fnv1a(p, f)";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Artifact {
    pub version: u32,
    pub defining_poly: Vec<String>,
    /// `"certified"` or `"assumed"`.
    pub irreducibility: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphisms: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugacy_classes: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_element: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recurrences: Option<Vec<RecurrenceRecord>>,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetRecord {
    Class(usize),
    Subset(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecurrenceRecord {
    pub target: TargetRecord,
    pub char_poly: Vec<String>,
    pub initial: Vec<String>,
    pub bad_primes: Vec<u64>,
    /// Product of bad primes too large to list; omitted when 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bad_cofactor: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub command: String,
    pub seed: String,
}

impl Provenance {
    pub fn new(command: impl Into<String>) -> Self {
        Provenance { command: command.into(), seed: SEED.into() }
    }
}

/// Pipeline state: a field, optionally its group, optionally solved recurrences.
#[derive(Clone, Debug)]
pub struct State {
    pub field: NumberField,
    pub group: Option<GaloisGroup>,
    pub bundle: Option<Bundle>,
    pub provenance: Provenance,
}

pub fn target_record(t: &IdempotentTarget) -> TargetRecord {
    match t {
        IdempotentTarget::Class(i) => TargetRecord::Class(*i),
        IdempotentTarget::Subset(s) => TargetRecord::Subset(s.clone()),
    }
}

fn target_of(t: &TargetRecord) -> IdempotentTarget {
    match t {
        TargetRecord::Class(i) => IdempotentTarget::Class(*i),
        TargetRecord::Subset(s) => IdempotentTarget::Subset(s.clone()),
    }
}

fn rats_out(values: &[Rat]) -> Vec<String> {
    values.iter().map(rat::to_string).collect()
}

fn rats_in(values: &[String], what: &str) -> CliResult<Vec<Rat>> {
    values.iter().map(|s| rat::parse(s).map_err(|e| CliError::Artifact(format!("{what}: {e}")))).collect()
}

fn poly_out(p: &PolyQ) -> Vec<String> {
    rats_out(&p.coeffs_high_first())
}

fn poly_in(values: &[String], what: &str) -> CliResult<PolyQ> {
    Ok(PolyQ::from_coeffs_high_first(rats_in(values, what)?))
}

impl State {
    pub fn new(field: NumberField, provenance: Provenance) -> Self {
        State { field, group: None, bundle: None, provenance }
    }

    pub fn group(&self) -> Option<&GaloisGroup> {
        self.bundle.as_ref().map(Bundle::group).or(self.group.as_ref())
    }

    pub fn to_artifact(&self) -> Artifact {
        let group = self.group();
        Artifact {
            version: FORMAT_VERSION,
            defining_poly: poly_out(self.field.defining_poly()),
            irreducibility: if self.field.irreducibility_certified() { "certified" } else { "assumed" }.into(),
            automorphisms: group.map(|g| g.elements().iter().map(|s| rats_out(s.image().coords())).collect()),
            conjugacy_classes: group.map(|g| g.classes().iter().map(|c| c.members.clone()).collect()),
            normal_element: self.bundle.as_ref().map(|b| rats_out(b.alpha().coords())),
            recurrences: self.bundle.as_ref().map(|b| {
                b.recurrences()
                    .iter()
                    .map(|t| {
                        let bad = t.recurrence.bad_primes();
                        RecurrenceRecord {
                            target: target_record(&t.target),
                            char_poly: poly_out(t.recurrence.char_poly()),
                            initial: rats_out(t.recurrence.initial()),
                            bad_primes: bad.primes().to_vec(),
                            bad_cofactor: (!bad.cofactor().is_one()).then(|| bad.cofactor().to_string()),
                        }
                    })
                    .collect()
            }),
            provenance: self.provenance.clone(),
        }
    }

    /// Rebuilds the state and re-checks everything the file claims.
    pub fn from_artifact(a: &Artifact) -> CliResult<Self> {
        if a.version != FORMAT_VERSION {
            return Err(CliError::Artifact(format!("unsupported version {} (expected {FORMAT_VERSION})", a.version)));
        }
        let irreducibility = match a.irreducibility.as_str() {
            "certified" => Irreducibility::Certify,
            "assumed" => Irreducibility::Assume,
            other => return Err(CliError::Artifact(format!("irreducibility must be certified or assumed, got {other:?}"))),
        };
        let field = NumberField::new(poly_in(&a.defining_poly, "defining_poly")?, irreducibility)?;
        let mut state = State::new(field.clone(), a.provenance.clone());
        let Some(autos) = &a.automorphisms else {
            if a.conjugacy_classes.is_some() || a.normal_element.is_some() || a.recurrences.is_some() {
                return Err(CliError::Artifact("group data present without automorphisms".into()));
            }
            return Ok(state);
        };
        let images = autos
            .iter()
            .map(|c| Ok(field.element(rats_in(c, "automorphism")?)?))
            .collect::<CliResult<Vec<FieldElement>>>()?;
        let group = GaloisGroup::from_automorphisms(&field, images.clone())?;
        if group.elements().iter().map(|s| s.image()).ne(images.iter()) {
            return Err(CliError::Artifact("the identity automorphism must be listed first".into()));
        }
        let classes: Vec<Vec<usize>> = group.classes().iter().map(|c| c.members.clone()).collect();
        if a.conjugacy_classes.as_ref() != Some(&classes) {
            return Err(CliError::Artifact(format!("conjugacy classes do not match the group: expected {classes:?}")));
        }
        let (alpha, records) = match (&a.normal_element, &a.recurrences) {
            (None, None) => {
                state.group = Some(group);
                return Ok(state);
            }
            (Some(alpha), Some(records)) => (field.element(rats_in(alpha, "normal_element")?)?, records),
            _ => return Err(CliError::Artifact("normal_element and recurrences must appear together".into())),
        };
        let mut pairs = Vec::with_capacity(records.len());
        for r in records {
            let rec = Recurrence::new(poly_in(&r.char_poly, "char_poly")?, rats_in(&r.initial, "initial")?)?;
            let cofactor = match &r.bad_cofactor {
                None => BigUint::one(),
                Some(s) => s.parse().map_err(|_| CliError::Artifact(format!("bad_cofactor {s:?} is not an integer")))?,
            };
            if rec.bad_primes().primes() != r.bad_primes.as_slice() || *rec.bad_primes().cofactor() != cofactor {
                return Err(CliError::Artifact(format!(
                    "bad_primes {:?} differ from the computed set {:?}",
                    r.bad_primes,
                    rec.bad_primes().primes()
                )));
            }
            pairs.push((target_of(&r.target), rec));
        }
        let targets: Vec<IdempotentTarget> = pairs.iter().map(|(t, _)| t.clone()).collect();
        let bundle = Bundle::new(group, alpha, pairs)?;
        let solved = idempotent::solve_many(bundle.group(), bundle.alpha(), &targets)?;
        for (stored, fresh) in bundle.recurrences().iter().zip(&solved) {
            if stored.recurrence != *fresh {
                return Err(CliError::Artifact(format!(
                    "recurrence for {:?} disagrees with the solver (expected initial values {:?})",
                    stored.target,
                    rats_out(fresh.initial())
                )));
            }
        }
        state.bundle = Some(bundle);
        Ok(state)
    }

    pub fn to_json(&self) -> CliResult<String> {
        let mut s = serde_json::to_string_pretty(&self.to_artifact())?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        let artifact: Artifact = serde_json::from_str(text)?;
        State::from_artifact(&artifact)
    }
}

/// Automorphism images from a file: either a bare list of coordinate lists or
/// an object with an `automorphisms` member.
pub fn parse_automorphism_file(text: &str) -> CliResult<Vec<Vec<Rat>>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Shape {
        Bare(Vec<Vec<String>>),
        Wrapped { automorphisms: Vec<Vec<String>> },
    }
    let lists = match serde_json::from_str::<Shape>(text)? {
        Shape::Bare(l) | Shape::Wrapped { automorphisms: l } => l,
    };
    lists.iter().map(|c| rats_in(c, "automorphism")).collect()
}
