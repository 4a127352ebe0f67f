use std::fmt::Write as _;

use loopmod::abgroup::QuotientMap;
use loopmod::arith::cyclo::lcm;
use loopmod::arith::Vector;
use loopmod::{Character, Elem, Error, FinAbGroup, Matrix};
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Counterexample,
    Undecided,
    BadInput,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Counterexample => 2,
            Status::Undecided => 3,
            Status::BadInput => 4,
        }
    }

    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::Violation(_) => Status::Counterexample,
            Error::FieldNotSplit(_) | Error::Indeterminate(_) => Status::Undecided,
            _ => Status::BadInput,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub inputs: Value,
    pub results: Map<String, Value>,
    pub certificates: Map<String, Value>,
    pub diagnostics: Vec<String>,
    #[serde(skip)]
    order: u64,
}

impl Report {
    /// `order` is the document's declared cyclotomic order.
    pub fn new(command: &str, inputs: Value, order: u64) -> Self {
        Report {
            command: command.to_string(),
            status: Status::Ok,
            inputs,
            results: Map::new(),
            certificates: Map::new(),
            diagnostics: Vec::new(),
            order: order.max(1),
        }
    }

    pub fn from_error(command: &str, inputs: Value, e: &Error) -> Self {
        let mut r = Report::new(command, inputs, 1);
        r.flag(Status::of_error(e));
        r.diagnostics.push(e.to_string());
        r
    }

    pub fn result(&mut self, key: &str, v: impl Serialize) {
        self.results.insert(key.to_string(), serde_json::to_value(v).expect("plain data"));
    }

    pub fn certificate(&mut self, key: &str, v: Value) {
        self.certificates.insert(key.to_string(), v);
    }

    pub fn diagnose(&mut self, msg: impl Into<String>) {
        let msg = msg.into();
        if !self.diagnostics.contains(&msg) {
            self.diagnostics.push(msg);
        }
    }

    /// Keep the first non-success status.
    pub fn flag(&mut self, s: Status) {
        if self.status == Status::Ok {
            self.status = s;
        }
    }

    /// Entries as literals over ℚ(ζ_k), k the least multiple of the document order that suffices.
    pub fn matrix(&mut self, m: &Matrix) -> Value {
        let k = lcm(self.order, m.order());
        if k != self.order {
            self.diagnose(format!("cyclotomic order raised from {} to {k}", self.order));
        }
        let m = m.lift(k);
        let rows: Vec<Vec<String>> =
            (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_literal()).collect()).collect();
        json!({ "cyclotomic_order": k, "rows": rows })
    }

    pub fn vectors(&mut self, vs: &[Vector]) -> Value {
        match Matrix::from_rows(vs.to_vec()) {
            Ok(m) => self.matrix(&m),
            Err(_) => json!([]),
        }
    }

    pub fn human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}: {}", self.command, serde_json::to_value(self.status).unwrap().as_str().unwrap());
        for (k, v) in &self.results {
            let _ = writeln!(s, "  {k}: {}", flat(v));
        }
        if !self.certificates.is_empty() {
            let keys: Vec<&str> = self.certificates.keys().map(String::as_str).collect();
            let _ = writeln!(s, "  certificates: {} (use --json)", keys.join(", "));
        }
        for d in &self.diagnostics {
            let _ = writeln!(s, "  note: {d}");
        }
        s
    }
}

fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    }
}

pub fn elem(g: &FinAbGroup, x: Elem) -> Value {
    json!(g.coords(x))
}

/// A degree of a G/H-graded object, written as its representative in G.
pub fn degree(pi: &QuotientMap, q: Elem) -> Value {
    elem(pi.source(), pi.section(q))
}

pub fn elems(g: &FinAbGroup, xs: &[Elem]) -> Value {
    Value::Array(xs.iter().map(|x| elem(g, *x)).collect())
}

pub fn character(g: &FinAbGroup, chi: Character) -> Value {
    json!(chi.exponents(g))
}
