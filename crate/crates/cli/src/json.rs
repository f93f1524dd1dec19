use serde_json::{Map, Value};
use witt_core::cone::{ProjPoint1, ProjPoint3};
use witt_core::exact::Rational;

pub fn rational(r: &Rational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn point3(p: &ProjPoint3) -> Value {
    Value::Array(p.integer_coords().iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn point1(p: &ProjPoint1) -> Value {
    Value::Array(p.integer_coords().iter().map(|c| Value::String(c.to_string())).collect())
}

/// Verdicts, scalar values and tables produced by one subcommand.
#[derive(Debug, Default)]
pub struct Section {
    verdicts: Map<String, Value>,
    values: Map<String, Value>,
    tables: Map<String, Value>,
}

impl Section {
    pub fn verdict(&mut self, name: &str, ok: bool) {
        self.verdicts.insert(name.to_string(), Value::Bool(ok));
    }

    pub fn value(&mut self, name: &str, v: impl Into<Value>) {
        self.values.insert(name.to_string(), v.into());
    }

    pub fn table(&mut self, name: &str, rows: Vec<Value>) {
        self.tables.insert(name.to_string(), Value::Array(rows));
    }

    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|v| v.as_bool() == Some(true))
    }

    pub fn failed_verdicts(&self) -> Vec<&str> {
        self.verdicts.iter().filter(|(_, v)| v.as_bool() != Some(true)).map(|(k, _)| k.as_str()).collect()
    }

    pub fn into_json(self) -> Value {
        let passed = self.passed();
        let mut m = Map::new();
        m.insert("passed".into(), Value::Bool(passed));
        m.insert("verdicts".into(), Value::Object(self.verdicts));
        m.insert("values".into(), Value::Object(self.values));
        m.insert("tables".into(), Value::Object(self.tables));
        Value::Object(m)
    }
}
