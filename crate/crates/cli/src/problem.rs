use std::path::Path;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::Deserialize;

use rvequiv::equiv::Substitution;
use rvequiv::qpoly::{Polynomial, Ring, WeightSystem};
use rvequiv::{rational, Rational};

use crate::Failure;

/// Rationals are accepted as JSON integers or as `"p/q"` strings.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    fn value(&self) -> Option<Rational> {
        match self {
            RationalText::Int(n) => Some(rational::int(*n)),
            RationalText::Text(s) => rational::parse(s.trim()),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub variables: Vec<String>,
    #[serde(default)]
    pub weights: Option<Vec<u64>>,
    #[serde(default)]
    pub phi: Option<String>,
    #[serde(default)]
    pub f: Option<String>,
    #[serde(default)]
    pub g: Option<String>,
    #[serde(default)]
    pub truncation: Option<RationalText>,
    #[serde(default)]
    pub subst: Option<Vec<String>>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// A problem file with its polynomials parsed over one ring.
pub struct Problem {
    pub file: ProblemFile,
    pub ring: Arc<Ring>,
    weights: Option<WeightSystem>,
}

impl Problem {
    pub fn load(path: &Path) -> Result<Problem, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::NoInput(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Problem, Failure> {
        let file: ProblemFile =
            serde_json::from_str(text).map_err(|e| Failure::Data(format!("problem file: {e}")))?;
        if file.variables.is_empty() {
            return Err(Failure::Data("problem file: no variables".into()));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = file.variables.iter().find(|v| !seen.insert(v.as_str())) {
            return Err(Failure::Data(format!("problem file: variable `{dup}` declared twice")));
        }
        let weights = match &file.weights {
            None => None,
            Some(ws) if ws.len() != file.variables.len() => {
                return Err(Failure::Data(format!(
                    "problem file: {} weights for {} variables",
                    ws.len(),
                    file.variables.len()
                )))
            }
            Some(ws) => Some(WeightSystem::new(ws).map_err(|e| Failure::Data(e.to_string()))?),
        };
        let ring = Ring::new(file.variables.iter().cloned());
        let problem = Problem { file, ring, weights };
        // surface grammar errors before any command runs
        for (name, text) in [("phi", &problem.file.phi), ("f", &problem.file.f), ("g", &problem.file.g)] {
            if let Some(t) = text {
                problem.parse(name, t)?;
            }
        }
        if problem.file.subst.is_some() {
            problem.substitution(None)?;
        }
        Ok(problem)
    }

    fn parse(&self, name: &str, text: &str) -> Result<Polynomial, Failure> {
        Polynomial::parse(text, &self.ring).map_err(|e| Failure::Data(format!("{name}: {e}")))
    }

    fn field(&self, name: &str, value: &Option<String>) -> Result<Polynomial, Failure> {
        match value {
            Some(t) => self.parse(name, t),
            None => Err(Failure::Data(format!("problem file: `{name}` is required for this command"))),
        }
    }

    pub fn f(&self) -> Result<Polynomial, Failure> {
        self.field("f", &self.file.f)
    }

    pub fn g(&self) -> Result<Polynomial, Failure> {
        self.field("g", &self.file.g)
    }

    pub fn phi(&self) -> Result<Polynomial, Failure> {
        self.field("phi", &self.file.phi)
    }

    pub fn weights(&self) -> Result<&WeightSystem, Failure> {
        self.weights
            .as_ref()
            .ok_or_else(|| Failure::Data("problem file: `weights` is required for this command".into()))
    }

    /// The command-line images win over the problem file's.
    pub fn substitution(&self, cli: Option<&[String]>) -> Result<Substitution, Failure> {
        let images = match (cli, &self.file.subst) {
            (Some(v), _) if !v.is_empty() => v,
            (_, Some(v)) => v.as_slice(),
            _ => return Err(Failure::Data("a substitution is required (--subst or `subst`)".into())),
        };
        Substitution::parse(images, &self.ring).map_err(|e| Failure::Data(format!("subst: {e}")))
    }

    /// The problem's truncation in normalized weight units, rounded down.
    pub fn truncation(&self) -> Result<Option<i64>, Failure> {
        let Some(t) = &self.file.truncation else {
            return Ok(None);
        };
        let q = t
            .value()
            .ok_or_else(|| Failure::Data("problem file: malformed truncation".into()))?;
        let scaled = q * self.weights()?.scale();
        scaled
            .floor()
            .to_integer()
            .to_i64()
            .map(Some)
            .ok_or_else(|| Failure::Data("problem file: truncation out of range".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_problem() {
        let p = Problem::from_json(r#"{"variables":["x","y"],"weights":[1,1],"phi":"x*y","f":"x^3+y^3"}"#).unwrap();
        assert_eq!(p.f().unwrap().to_string(), "x^3 + y^3");
        assert!(p.g().is_err());
        assert_eq!(p.truncation().unwrap(), None);
    }

    #[test]
    fn truncation_is_normalized() {
        let p = Problem::from_json(r#"{"variables":["x","y"],"weights":[2,4],"truncation":"9/2"}"#).unwrap();
        assert_eq!(p.truncation().unwrap(), Some(2));
        let p = Problem::from_json(r#"{"variables":["x"],"weights":[1],"truncation":7}"#).unwrap();
        assert_eq!(p.truncation().unwrap(), Some(7));
    }

    #[test]
    fn rejects_bad_files() {
        for text in [
            r#"{"variables":["x","y"],"weights":[1]}"#,
            r#"{"variables":["x"],"f":"y"}"#,
            r#"{"variables":["x"],"f":"x^"}"#,
            r#"{"variables":["x"],"subst":["x + 1"]}"#,
            r#"{"variables":["x"],"bogus":1}"#,
            r#"{"variables":["x","x"]}"#,
            r#"not json"#,
        ] {
            assert!(matches!(Problem::from_json(text), Err(Failure::Data(_))), "{text}");
        }
    }
}
