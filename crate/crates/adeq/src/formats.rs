//! JSON file formats for ansätze and concrete models, and JSON views of
//! engine results.

use std::collections::BTreeMap;

use adeq_core::analysis::{FamilyCheck, SolutionFamily};
use adeq_core::equation::{Ansatz, ConstraintSystem, EquationSpec, FnTerm, FunctionSpec};
use adeq_core::field::{AdditiveModel, Atom};
use adeq_core::rat::{fmt_q, Q};
use adeq_core::sympoly::UnknownPoly;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dsl::render_equation;
use crate::expr::{parse_coeff, parse_t_poly};

/// A coefficient given either as a JSON integer or as an expression string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffValue {
    Int(i64),
    Text(String),
}

impl CoeffValue {
    fn parse(&self) -> Result<UnknownPoly, String> {
        match self {
            CoeffValue::Int(n) => Ok(UnknownPoly::int(*n)),
            CoeffValue::Text(s) => parse_coeff(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    #[serde(default)]
    pub exp: u32,
    #[serde(default)]
    pub order: u32,
    pub coeff: CoeffValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionEntry {
    pub name: String,
    pub terms: Vec<TermEntry>,
}

/// `{"functions":[{"name":"f1","terms":[{"exp":0,"order":1,"coeff":"3/2"}]}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnsatzFile {
    pub functions: Vec<FunctionEntry>,
}

impl AnsatzFile {
    pub fn to_ansatz(&self) -> Result<Ansatz, String> {
        let mut a = Ansatz::new();
        for f in &self.functions {
            let mut terms = Vec::new();
            for t in &f.terms {
                let c = t.coeff.parse().map_err(|e| format!("{}: {e}", f.name))?;
                terms.push(FnTerm::new(t.exp, t.order, c));
            }
            a.insert(FunctionSpec::new(&f.name, terms).map_err(|e| e.to_string())?);
        }
        Ok(a)
    }

    pub fn from_ansatz(a: &Ansatz) -> Self {
        AnsatzFile {
            functions: a
                .functions()
                .map(|f| FunctionEntry {
                    name: f.name().to_string(),
                    terms: f
                        .terms()
                        .iter()
                        .map(|t| TermEntry {
                            exp: t.exp,
                            order: t.order,
                            coeff: CoeffValue::Text(t.coeff.to_string()),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomEntry {
    pub scalar: CoeffValue,
    #[serde(default = "default_endo")]
    pub endo: String,
    #[serde(default)]
    pub order: u32,
}

fn default_endo() -> String {
    "t".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelEntry {
    pub name: String,
    pub atoms: Vec<AtomEntry>,
}

/// `{"models":[{"name":"f1","atoms":[{"scalar":"-1","endo":"t^2","order":0}]}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelsFile {
    pub models: Vec<ModelEntry>,
}

impl ModelsFile {
    /// Models in file order.
    pub fn to_models(&self) -> Result<Vec<(String, AdditiveModel)>, String> {
        let mut out = Vec::new();
        for m in &self.models {
            let mut atoms = Vec::new();
            for a in &m.atoms {
                let s = a.scalar.parse()?;
                let s = s
                    .as_constant()
                    .ok_or_else(|| format!("{}: scalar must be a number", m.name))?;
                let endo = parse_t_poly(&a.endo).map_err(|e| format!("{}: {e}", m.name))?;
                atoms.push(Atom::new(s, endo, a.order).map_err(|e| format!("{}: {e}", m.name))?);
            }
            out.push((m.name.clone(), AdditiveModel::new(atoms)));
        }
        Ok(out)
    }

    pub fn from_models(models: &BTreeMap<String, AdditiveModel>) -> Self {
        ModelsFile {
            models: models
                .iter()
                .map(|(name, m)| ModelEntry {
                    name: name.clone(),
                    atoms: m
                        .atoms
                        .iter()
                        .map(|a| AtomEntry {
                            scalar: CoeffValue::Text(fmt_q(&a.scalar)),
                            endo: a.endo.to_string(),
                            order: a.order,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

pub fn spec_json(spec: &EquationSpec) -> Value {
    json!({
        "equation": render_equation(spec),
        "terms": spec.terms().iter().map(|t| json!({
            "scalar": fmt_q(&t.scalar),
            "p": t.p,
            "q": t.q,
            "f": t.f,
            "g": t.g,
        })).collect::<Vec<_>>(),
    })
}

pub fn ansatz_json(a: &Ansatz) -> Value {
    serde_json::to_value(AnsatzFile::from_ansatz(a)).expect("serializable")
}

pub fn constraints_json(sys: &ConstraintSystem) -> Value {
    Value::Array(
        sys.entries
            .iter()
            .map(|c| json!({"monomial": c.monomial.to_string(), "poly": c.poly.to_string()}))
            .collect(),
    )
}

pub fn q_json(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

pub fn family_json(f: &SolutionFamily, check: Option<&FamilyCheck>) -> Value {
    let mut v = json!({
        "id": f.id.as_str(),
        "equation": render_equation(&f.spec),
        "templates": ansatz_json(&f.templates),
        "relations": f.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "constraints": f.constraints.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "nonvanishing": f.nonvanishing.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
        "notes": f.notes,
    });
    if let Some(c) = check {
        v["verified"] = json!(c.holds());
        v["constraints_checked"] = json!(c.constraints);
    }
    v
}
