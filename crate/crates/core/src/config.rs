//! Flat `key = value` experiment configuration.
//!
//! `map` and `variety` repeat, one line per component or generator. Lines
//! starting with `#` and blank lines are ignored. `degrees` accepts a comma
//! list (`1,2,4`) or an inclusive range (`1..5`). `point` is a comma list of
//! constants, one per coordinate.

use std::fmt::Write as _;

use thiserror::Error;

use crate::dynamics::{PolyMap, VarietySpec};
use crate::padic::{PAdicContext, PAdicElement};
use crate::poly::MPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid config:\n{}", .0.iter().map(|v| format!("  - {v}")).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub p: u64,
    pub k: usize,
    /// working precision N
    pub precision: u32,
    pub dim: usize,
    pub map: Vec<String>,
    pub variety: Vec<String>,
    /// residue-field degrees scanned, each a multiple of k
    pub degrees: Vec<usize>,
    pub max_period: usize,
    /// D: backward-orbit length, and n_max for the stability probe
    pub depth: usize,
    /// L: backward-orbit look-ahead
    pub lookahead: usize,
    pub degree_bound: usize,
    pub seed: u64,
    pub point: Option<Vec<String>>,
}

const KEYS: &[&str] = &[
    "p",
    "k",
    "N",
    "dim",
    "map",
    "variety",
    "degrees",
    "max_period",
    "depth",
    "lookahead",
    "degree_bound",
    "seed",
    "point",
];

#[derive(Default)]
struct Raw {
    /// (key, value, line)
    entries: Vec<(String, String, usize)>,
}

impl Raw {
    fn single(&self, key: &str, errors: &mut Vec<String>) -> Option<(&str, usize)> {
        let mut found = self.entries.iter().filter(|e| e.0 == key);
        let first = found.next()?;
        if let Some(dup) = found.next() {
            errors.push(format!("line {}: `{key}` already set on line {}", dup.2, first.2));
        }
        Some((first.1.as_str(), first.2))
    }

    fn all(&self, key: &str) -> Vec<String> {
        self.entries.iter().filter(|e| e.0 == key).map(|e| e.1.clone()).collect()
    }

    fn number<T: std::str::FromStr>(&self, key: &str, default: Option<T>, errors: &mut Vec<String>) -> Option<T> {
        match self.single(key, errors) {
            Some((v, line)) => match v.parse() {
                Ok(n) => Some(n),
                Err(_) => {
                    errors.push(format!("line {line}: `{key}` expects a non-negative integer, got `{v}`"));
                    None
                }
            },
            None if default.is_some() => default,
            None => {
                errors.push(format!("missing `{key}`"));
                None
            }
        }
    }
}

fn parse_degrees(text: &str) -> Option<Vec<usize>> {
    if let Some((a, b)) = text.split_once("..") {
        let (a, b): (usize, usize) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
        return (a <= b).then(|| (a..=b).collect());
    }
    text.split(',').map(|t| t.trim().parse().ok()).collect()
}

fn split_list(text: &str) -> Vec<String> {
    text.split(',').map(|t| t.trim().to_string()).collect()
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut raw = Raw::default();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let Some((key, value)) = trimmed.split_once('=') else {
                return Err(ConfigError::Syntax { line: line_no, message: "expected `key = value`".into() });
            };
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(ConfigError::Syntax { line: line_no, message: format!("unknown key `{key}`") });
            }
            raw.entries.push((key.to_string(), value.trim().to_string(), line_no));
        }

        let mut errors = Vec::new();
        let p = raw.number::<u64>("p", None, &mut errors);
        let k = raw.number::<usize>("k", Some(1), &mut errors);
        let precision = raw.number::<u32>("N", None, &mut errors);
        let dim = raw.number::<usize>("dim", None, &mut errors);
        let max_period = raw.number::<usize>("max_period", Some(8), &mut errors);
        let depth = raw.number::<usize>("depth", Some(8), &mut errors);
        let lookahead = raw.number::<usize>("lookahead", Some(2), &mut errors);
        let degree_bound = raw.number::<usize>("degree_bound", Some(2), &mut errors);
        let seed = raw.number::<u64>("seed", Some(0), &mut errors);
        let degrees = match raw.single("degrees", &mut errors) {
            Some((v, line)) => parse_degrees(v).or_else(|| {
                errors.push(format!("line {line}: `degrees` expects `a,b,c` or `a..b`, got `{v}`"));
                None
            }),
            None => k.map(|k| vec![k]),
        };
        let point = raw.single("point", &mut errors).map(|(v, _)| split_list(v));
        let map = raw.all("map");
        let variety = raw.all("variety");
        if map.is_empty() {
            errors.push("missing `map`".into());
        }

        let (Some(p), Some(k), Some(precision), Some(dim), Some(max_period), Some(depth)) =
            (p, k, precision, dim, max_period, depth)
        else {
            return Err(ConfigError::Invalid(errors));
        };
        let (Some(lookahead), Some(degree_bound), Some(seed), Some(degrees)) = (lookahead, degree_bound, seed, degrees)
        else {
            return Err(ConfigError::Invalid(errors));
        };
        let config = ExperimentConfig {
            p,
            k,
            precision,
            dim,
            map,
            variety,
            degrees,
            max_period,
            depth,
            lookahead,
            degree_bound,
            seed,
            point,
        };
        errors.extend(config.violations());
        if errors.is_empty() {
            Ok(config)
        } else {
            Err(ConfigError::Invalid(errors))
        }
    }

    /// Every semantic problem, checked without short-circuiting.
    pub fn violations(&self) -> Vec<String> {
        let mut errors = Vec::new();
        if !crate::padic::fp::is_prime(self.p) {
            errors.push(format!("p = {} is not prime", self.p));
        }
        if self.dim == 0 {
            errors.push("dim must be at least 1".into());
        }
        if self.max_period == 0 {
            errors.push("max_period must be at least 1".into());
        }
        if self.degree_bound == 0 {
            errors.push("degree_bound must be at least 1".into());
        }
        if self.degrees.is_empty() {
            errors.push("degrees must not be empty".into());
        }
        for &d in &self.degrees {
            if self.k == 0 || d == 0 || d % self.k != 0 {
                errors.push(format!("degree {d} is not a positive multiple of k = {}", self.k));
            }
        }
        if !self.map.is_empty() && self.map.len() != self.dim {
            errors.push(format!("{} map components for dim = {}", self.map.len(), self.dim));
        }
        if let Some(point) = &self.point {
            if point.len() != self.dim {
                errors.push(format!("point has {} coordinates for dim = {}", point.len(), self.dim));
            }
        }
        let ctx = match self.context() {
            Ok(ctx) => ctx,
            Err(crate::Error::NotPrime(_)) => return errors,
            Err(e) => {
                errors.push(format!("context: {e}"));
                return errors;
            }
        };
        for (i, text) in self.map.iter().enumerate() {
            if let Err(e) = MPoly::parse(text, self.dim, &ctx) {
                errors.push(format!("map component {i} `{text}`: {e}"));
            }
        }
        for (i, text) in self.variety.iter().enumerate() {
            match MPoly::parse(text, self.dim, &ctx) {
                Ok(g) if g.is_zero() => errors.push(format!("variety generator {i} `{text}` is zero")),
                Ok(_) => {}
                Err(e) => errors.push(format!("variety generator {i} `{text}`: {e}")),
            }
        }
        for (i, text) in self.point.iter().flatten().enumerate() {
            if let Err(e) = parse_constant(text, self.dim, &ctx) {
                errors.push(format!("point coordinate {i} `{text}`: {e}"));
            }
        }
        errors
    }

    /// Canonical text; `parse(render(c)) == c`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p = {}", self.p);
        let _ = writeln!(out, "k = {}", self.k);
        let _ = writeln!(out, "N = {}", self.precision);
        let _ = writeln!(out, "dim = {}", self.dim);
        for m in &self.map {
            let _ = writeln!(out, "map = {m}");
        }
        for v in &self.variety {
            let _ = writeln!(out, "variety = {v}");
        }
        let degrees: Vec<String> = self.degrees.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "degrees = {}", degrees.join(","));
        let _ = writeln!(out, "max_period = {}", self.max_period);
        let _ = writeln!(out, "depth = {}", self.depth);
        let _ = writeln!(out, "lookahead = {}", self.lookahead);
        let _ = writeln!(out, "degree_bound = {}", self.degree_bound);
        let _ = writeln!(out, "seed = {}", self.seed);
        if let Some(point) = &self.point {
            let _ = writeln!(out, "point = {}", point.join(", "));
        }
        out
    }

    pub fn context(&self) -> crate::Result<PAdicContext> {
        PAdicContext::new(self.p, self.k, self.precision)
    }

    pub fn poly_map(&self) -> crate::Result<PolyMap> {
        let texts: Vec<&str> = self.map.iter().map(String::as_str).collect();
        PolyMap::parse(&self.context()?, &texts)
    }

    pub fn variety_spec(&self) -> crate::Result<VarietySpec> {
        let texts: Vec<&str> = self.variety.iter().map(String::as_str).collect();
        VarietySpec::parse(&self.context()?, self.dim, &texts)
    }

    /// The configured base point, if any.
    pub fn base_point(&self) -> crate::Result<Option<Vec<PAdicElement>>> {
        let ctx = self.context()?;
        self.point.as_ref().map(|pt| pt.iter().map(|t| parse_constant(t, self.dim, &ctx)).collect()).transpose()
    }
}

fn parse_constant(text: &str, nvars: usize, ctx: &PAdicContext) -> crate::Result<PAdicElement> {
    let poly = MPoly::parse(text, nvars, ctx)?;
    if poly.total_degree().unwrap_or(0) > 0 {
        return Err(crate::Error::Invalid("expected a constant".into()));
    }
    Ok(poly.coefficient(&vec![0; nvars]).cloned().unwrap_or_else(|| ctx.zero()))
}

impl std::str::FromStr for ExperimentConfig {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2: &str = "p = 2\nk = 1\nN = 8\ndim = 1\nmap = X0^2 + 2*X0\nvariety = X0";

    #[test]
    fn minimal_config() {
        let c = ExperimentConfig::parse(Z2).unwrap();
        assert_eq!((c.p, c.k, c.precision, c.dim), (2, 1, 8, 1));
        assert_eq!(c.map, vec!["X0^2 + 2*X0"]);
        assert_eq!(c.variety, vec!["X0"]);
        assert_eq!(c.degrees, vec![1]);
        assert_eq!((c.depth, c.lookahead, c.degree_bound, c.max_period), (8, 2, 2, 8));
        assert_eq!(c.point, None);
    }

    #[test]
    fn composite_p_is_rejected() {
        let err = ExperimentConfig::parse(&Z2.replace("p = 2", "p = 4")).unwrap_err();
        assert!(err.to_string().contains("p = 4 is not prime"), "{err}");
    }

    #[test]
    fn missing_map_is_rejected() {
        let err = ExperimentConfig::parse("p = 2\nN = 8\ndim = 1\n").unwrap_err();
        assert!(err.to_string().contains("missing `map`"), "{err}");
    }

    #[test]
    fn violations_are_aggregated() {
        let text = "p = 9\nN = 8\ndim = 2\nmap = X0^2\ndegrees = 0\nmax_period = 0\npoint = 1";
        let ConfigError::Invalid(errors) = ExperimentConfig::parse(text).unwrap_err() else {
            panic!("expected semantic errors");
        };
        assert!(errors.len() >= 5, "{errors:?}");
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = ExperimentConfig::parse("p = 2\n# fine\n\nnonsense\n").unwrap_err();
        assert_eq!(err, ConfigError::Syntax { line: 4, message: "expected `key = value`".into() });
        let err = ExperimentConfig::parse("p = 2\ncolour = red\n").unwrap_err();
        assert!(matches!(err, ConfigError::Syntax { line: 2, .. }));
    }

    #[test]
    fn degree_ranges_and_points() {
        let c = ExperimentConfig::parse(
            "p = 5\nk = 1\nN = 4\ndim = 2\nmap = X0^5\nmap = X1^5\ndegrees = 1..3\npoint = 1, -1",
        )
        .unwrap();
        assert_eq!(c.degrees, vec![1, 2, 3]);
        let pt = c.base_point().unwrap().unwrap();
        assert_eq!(pt[1], c.context().unwrap().from_int(-1));
        let again = ExperimentConfig::parse(&c.render()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn non_constant_points_and_bad_polys_are_rejected() {
        let text = "p = 3\nN = 4\ndim = 1\nmap = X0^3 +\npoint = X0";
        let ConfigError::Invalid(errors) = ExperimentConfig::parse(text).unwrap_err() else {
            panic!("expected semantic errors");
        };
        assert_eq!(errors.len(), 2, "{errors:?}");
    }
}
