use serde::Serialize;
use serde_json::Value;

use operadlab::linalg::CohomologyTable;

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub arity: usize,
    pub degree: usize,
    pub dim: usize,
    pub rank_out: Option<usize>,
    pub rank_in: usize,
    pub h_dim: usize,
    pub reliable: bool,
}

/// A cohomology table; degree `d` sits in arity `first_arity + d`.
#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub name: String,
    pub first_arity: usize,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn new(name: impl Into<String>, first_arity: usize, t: &CohomologyTable) -> Table {
        let rows = t
            .rows
            .iter()
            .map(|r| Row {
                arity: first_arity + r.degree,
                degree: r.degree,
                dim: r.dim,
                rank_out: r.rank_out,
                rank_in: r.rank_in,
                h_dim: r.h_dim,
                reliable: r.reliable,
            })
            .collect();
        Table { name: name.into(), first_arity, rows }
    }

    pub fn reliable_h(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.reliable).map(|r| r.h_dim).collect()
    }

    pub fn h(&self, degree: usize) -> Option<usize> {
        self.rows.iter().find(|r| r.degree == degree && r.reliable).map(|r| r.h_dim)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

impl Assertion {
    pub fn new(name: impl Into<String>, pass: bool, detail: Value) -> Assertion {
        Assertion { name: name.into(), pass, detail }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub tables: Vec<Table>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub results: Value,
    pub assertions: Vec<Assertion>,
    pub pass: bool,
    pub failures: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_s: Option<f64>,
    /// Header and rows used by `--format csv` when there are no tables.
    #[serde(skip)]
    pub csv: Option<(Vec<String>, Vec<Vec<String>>)>,
}

impl Report {
    pub fn new(command: String, config: Value) -> Report {
        Report {
            command,
            config,
            tables: Vec::new(),
            results: Value::Null,
            assertions: Vec::new(),
            pass: true,
            failures: Vec::new(),
            wall_clock_s: None,
            csv: None,
        }
    }

    pub fn assert(&mut self, a: Assertion) {
        if !a.pass {
            self.failures.push(serde_json::json!({ "assertion": a.name, "detail": a.detail }));
        }
        self.assertions.push(a);
    }

    pub fn finish(&mut self) {
        self.pass = self.assertions.iter().all(|a| a.pass);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if !self.tables.is_empty() {
            out.push_str("table,arity,degree,dim,rank_out,rank_in,h_dim,reliable\n");
            for t in &self.tables {
                for r in &t.rows {
                    let rank_out = r.rank_out.map(|x| x.to_string()).unwrap_or_default();
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{}\n",
                        csv_field(&t.name),
                        r.arity,
                        r.degree,
                        r.dim,
                        rank_out,
                        r.rank_in,
                        r.h_dim,
                        r.reliable
                    ));
                }
            }
        } else if let Some((header, rows)) = &self.csv {
            out.push_str(&header.join(","));
            out.push('\n');
            for r in rows {
                let fields: Vec<String> = r.iter().map(|f| csv_field(f)).collect();
                out.push_str(&fields.join(","));
                out.push('\n');
            }
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use operadlab::linalg::DegreeRow;

    fn table() -> Table {
        let t = CohomologyTable {
            rows: vec![
                DegreeRow { degree: 0, dim: 1, rank_out: Some(1), rank_in: 0, h_dim: 0, reliable: true },
                DegreeRow { degree: 1, dim: 1, rank_out: None, rank_in: 1, h_dim: 0, reliable: false },
            ],
        };
        Table::new("k, k", 1, &t)
    }

    #[test]
    fn csv_has_one_row_per_degree() {
        let mut r = Report::new("operadlab soul ass".into(), Value::Null);
        r.tables.push(table());
        assert_eq!(
            r.to_csv(),
            "table,arity,degree,dim,rank_out,rank_in,h_dim,reliable\n\"k, k\",1,0,1,1,0,0,true\n\"k, k\",2,1,1,,1,0,false\n"
        );
    }

    #[test]
    fn failed_assertions_are_listed() {
        let mut r = Report::new(String::new(), Value::Null);
        r.assert(Assertion::new("a", true, Value::Null));
        r.assert(Assertion::new("b", false, serde_json::json!(3)));
        r.finish();
        assert!(!r.pass);
        assert_eq!(r.failures, vec![serde_json::json!({ "assertion": "b", "detail": 3 })]);
        assert_eq!(table().reliable_h(), vec![0]);
        assert_eq!(table().h(1), None);
    }
}
