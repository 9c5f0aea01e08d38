//! Tab-separated experiment reports.
//!
//! ```text
//! # padic-dynamo 1 <kind>
//! # config: <one line per rendered config line>
//! # context: p=.. k=.. modulus=[..] N=..
//! col_a<TAB>col_b
//! ...
//! # summary: ...
//! ```

use std::fmt;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub kind: String,
    pub config_echo: String,
    pub context: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub summary: String,
}

impl Report {
    pub fn new(kind: &str, config_echo: String, context: String, columns: &[&str]) -> Self {
        Self {
            kind: kind.to_string(),
            config_echo,
            context,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: String::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// The column named `name` of every row.
    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# padic-dynamo {SCHEMA_VERSION} {}", self.kind)?;
        for line in self.config_echo.lines() {
            writeln!(f, "# config: {line}")?;
        }
        writeln!(f, "# context: {}", self.context)?;
        writeln!(f, "{}", self.columns.join("\t"))?;
        for row in &self.rows {
            writeln!(f, "{}", row.join("\t"))?;
        }
        writeln!(f, "# summary: {}", self.summary)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let mut r = Report::new("demo", "p = 2\nN = 8\n".into(), "p=2 k=1 modulus=[0, 1] N=8".into(), &["a", "b"]);
        r.push_row(vec!["1".into(), "x y".into()]);
        r.summary = "ok".into();
        let expected = "# padic-dynamo 1 demo\n# config: p = 2\n# config: N = 8\n\
                        # context: p=2 k=1 modulus=[0, 1] N=8\na\tb\n1\tx y\n# summary: ok\n";
        assert_eq!(r.to_string(), expected);
        assert_eq!(r.column("b"), Some(vec!["x y"]));
    }
}
