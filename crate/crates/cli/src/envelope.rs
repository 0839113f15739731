use std::collections::BTreeMap;

use qvh_core::{Estimate, Quantity, UnitSystem};
use serde::ser::Serializer;
use serde::Serialize;
use serde_json::value::RawValue;

/// Output number written in scientific notation with 12 significant digits;
/// non-finite values become `null`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sci(pub f64);

impl Sci {
    pub fn text(self, digits: usize) -> String {
        if self.0.is_finite() {
            format!("{:.*e}", digits - 1, self.0)
        } else {
            format!("{}", self.0)
        }
    }
}

impl Serialize for Sci {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            RawValue::from_string(self.text(12))
                .map_err(serde::ser::Error::custom)?
                .serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Input {
    pub name: String,
    /// Full precision, exactly as used.
    pub value: f64,
    pub unit: String,
    pub dimension: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Output {
    pub name: String,
    pub value: Sci,
    pub unit: String,
    pub dimension: String,
    /// Formula or reference the value comes from.
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Estimate>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Sci>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultEnvelope {
    pub command: String,
    /// Arguments that reproduce this run.
    pub invocation: Vec<String>,
    pub unit_system: String,
    pub alpha: f64,
    pub rel_tol: f64,
    pub inputs: Vec<Input>,
    pub outputs: Vec<Output>,
    pub flags: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Sci>>>,
}

impl ResultEnvelope {
    pub(crate) fn new(command: &str, invocation: Vec<String>, units: UnitSystem, alpha: f64, rel_tol: f64) -> Self {
        Self {
            command: command.into(),
            invocation,
            unit_system: units.name().into(),
            alpha,
            rel_tol,
            inputs: Vec::new(),
            outputs: Vec::new(),
            flags: BTreeMap::new(),
            notes: Vec::new(),
            table: None,
            matrix: None,
        }
    }

    pub(crate) fn input(&mut self, name: &str, q: Quantity) {
        self.inputs.push(Input {
            name: name.into(),
            value: q.value,
            unit: label(self.units(), q),
            dimension: q.dim.to_string(),
        });
    }

    pub(crate) fn output(&mut self, name: &str, q: Quantity, source: &str, mode: Option<Estimate>) {
        self.outputs.push(Output {
            name: name.into(),
            value: Sci(q.value),
            unit: label(self.units(), q),
            dimension: q.dim.to_string(),
            source: source.into(),
            mode,
        });
    }

    pub(crate) fn flag(&mut self, name: &str, value: bool) {
        self.flags.insert(name.into(), value);
    }

    pub(crate) fn column(&self, name: &str, q: Quantity) -> Column {
        Column {
            name: name.into(),
            unit: label(self.units(), q),
        }
    }

    fn units(&self) -> UnitSystem {
        self.unit_system
            .parse()
            .expect("envelope holds a valid unit-system name")
    }

    pub fn output_value(&self, name: &str) -> Option<f64> {
        self.outputs.iter().find(|o| o.name == name).map(|o| o.value.0)
    }
}

fn label(units: UnitSystem, q: Quantity) -> String {
    units.unit_label(&q.dim)
}
