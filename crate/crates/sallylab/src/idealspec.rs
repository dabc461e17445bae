//! The JSON input format for (Q, I) pairs, with a monomial-string parser
//! as sugar on top of raw exponent vectors.

use serde::{Deserialize, Serialize};

use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// Errors from parsing or validating an ideal specification. These map to
/// exit code 2 in the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
}

/// One generator in the input: either an exponent vector or a monomial
/// string such as "x^2*y^3".
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum GenSpec {
    Exponents(Vec<i64>),
    Text(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawSpec {
    dim: usize,
    #[serde(rename = "Q")]
    q: Vec<GenSpec>,
    #[serde(default)]
    extra: Vec<GenSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// A validated (Q, I) specification: `Q` is a parameter ideal given by one
/// pure power per variable, and `I = Q + extra`. Variables are positional,
/// index 0 = x, 1 = y, 2 = z, 3 = w (or x1, x2, ... in general).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSpec {
    pub dim: usize,
    pub q: Vec<Vec<u32>>,
    pub extra: Vec<Vec<u32>>,
    pub label: Option<String>,
}

impl IdealSpec {
    pub fn new(
        dim: usize,
        q: Vec<Vec<u32>>,
        extra: Vec<Vec<u32>>,
        label: Option<String>,
    ) -> Result<Self, SpecError> {
        let spec = IdealSpec { dim, q, extra, label };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), SpecError> {
        let d = self.dim;
        if d == 0 {
            return Err(SpecError::Validation("dim must be at least 1".into()));
        }
        if self.q.len() != d {
            return Err(SpecError::Validation(format!(
                "Q must list exactly {d} pure powers, found {}",
                self.q.len()
            )));
        }
        let mut covered = vec![false; d];
        for v in &self.q {
            if v.len() != d {
                return Err(SpecError::Validation(format!(
                    "generator {v:?} has {} entries, expected {d}",
                    v.len()
                )));
            }
            let support: Vec<usize> = (0..d).filter(|&i| v[i] > 0).collect();
            if support.len() != 1 {
                return Err(SpecError::Validation(format!(
                    "Q generator {v:?} is not a pure variable power"
                )));
            }
            if covered[support[0]] {
                return Err(SpecError::Validation(format!(
                    "variable {} has two pure powers in Q",
                    support[0]
                )));
            }
            covered[support[0]] = true;
        }
        for v in &self.extra {
            if v.len() != d {
                return Err(SpecError::Validation(format!(
                    "generator {v:?} has {} entries, expected {d}",
                    v.len()
                )));
            }
        }
        Ok(())
    }

    /// The pair (Q, I) with I = Q + extra.
    pub fn to_ideals(&self) -> (MonomialIdeal, MonomialIdeal) {
        let q = MonomialIdeal::new(self.dim, self.q.iter().map(|e| Monomial::new(e.clone())))
            .expect("validated");
        let gens = self.q.iter().chain(self.extra.iter());
        let i = MonomialIdeal::new(self.dim, gens.map(|e| Monomial::new(e.clone())))
            .expect("validated");
        (q, i)
    }

    /// Canonical JSON rendering; `parse_spec(render(spec))` round-trips.
    pub fn render(&self) -> String {
        let raw = RawSpec {
            dim: self.dim,
            q: self
                .q
                .iter()
                .map(|v| GenSpec::Exponents(v.iter().map(|&e| e as i64).collect()))
                .collect(),
            extra: self
                .extra
                .iter()
                .map(|v| GenSpec::Exponents(v.iter().map(|&e| e as i64).collect()))
                .collect(),
            label: self.label.clone(),
        };
        serde_json::to_string(&raw).expect("spec serializes")
    }
}

/// Parse and validate the documented JSON format, e.g.
/// `{"dim":2, "Q":[[7,0],[0,7]], "extra":[[1,6],"x^2*y^5"], "label":"demo"}`.
pub fn parse_spec(text: &str) -> Result<IdealSpec, SpecError> {
    let raw: RawSpec =
        serde_json::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))?;
    let gen_to_exps = |g: &GenSpec| -> Result<Vec<u32>, SpecError> {
        match g {
            GenSpec::Exponents(v) => v
                .iter()
                .map(|&e| {
                    u32::try_from(e).map_err(|_| {
                        SpecError::Validation(format!("negative exponent {e} in {v:?}"))
                    })
                })
                .collect(),
            GenSpec::Text(s) => parse_monomial(s, raw.dim),
        }
    };
    let q = raw.q.iter().map(gen_to_exps).collect::<Result<Vec<_>, _>>()?;
    let extra = raw
        .extra
        .iter()
        .map(gen_to_exps)
        .collect::<Result<Vec<_>, _>>()?;
    IdealSpec::new(raw.dim, q, extra, raw.label)
}

/// Parse a monomial string like "x^2*y^3", "x*y", "z" or "1" into an
/// exponent vector. Variables are x, y, z, w for the first four positions,
/// or x1, x2, ... in any dimension.
pub fn parse_monomial(text: &str, dim: usize) -> Result<Vec<u32>, SpecError> {
    let mut exps = vec![0u32; dim];
    let body = text.trim();
    if body.is_empty() {
        return Err(SpecError::Parse("empty monomial".into()));
    }
    if body == "1" {
        return Ok(exps);
    }
    for factor in body.split('*') {
        let factor = factor.trim();
        let (var_part, exp_part) = match factor.split_once('^') {
            Some((v, e)) => (v.trim(), Some(e.trim())),
            None => (factor, None),
        };
        let var = match var_part {
            "x" => 0,
            "y" => 1,
            "z" => 2,
            "w" => 3,
            other => {
                let digits = other
                    .strip_prefix('x')
                    .ok_or_else(|| SpecError::Parse(format!("unknown variable '{other}'")))?;
                let idx: usize = digits
                    .parse()
                    .map_err(|_| SpecError::Parse(format!("unknown variable '{other}'")))?;
                if idx == 0 {
                    return Err(SpecError::Parse("variables are numbered from x1".into()));
                }
                idx - 1
            }
        };
        if var >= dim {
            return Err(SpecError::Validation(format!(
                "variable '{var_part}' is out of range for dimension {dim}"
            )));
        }
        let exp: u32 = match exp_part {
            None => 1,
            Some(e) => e
                .parse()
                .map_err(|_| SpecError::Parse(format!("bad exponent '{e}' in '{factor}'")))?,
        };
        exps[var] = exps[var]
            .checked_add(exp)
            .ok_or_else(|| SpecError::Parse("exponent overflow".into()))?;
    }
    Ok(exps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_example() {
        let spec = parse_spec(
            r#"{"dim":2, "Q":[[7,0],[0,7]], "extra":[[1,6],[2,5],[4,3],[5,2]], "label":"s1eq3"}"#,
        )
        .unwrap();
        assert_eq!(spec.dim, 2);
        assert_eq!(spec.q, vec![vec![7, 0], vec![0, 7]]);
        assert_eq!(spec.extra.len(), 4);
        assert_eq!(spec.label.as_deref(), Some("s1eq3"));
        let (q, i) = spec.to_ideals();
        assert!(i.contains(&q).unwrap());
        assert_eq!(i.gens().len(), 6);
    }

    #[test]
    fn empty_extra_gives_the_parameter_ideal() {
        let spec = parse_spec(r#"{"dim":2,"Q":[[5,0],[0,5]],"extra":[]}"#).unwrap();
        let (q, i) = spec.to_ideals();
        assert!(q.equals(&i).unwrap());
    }

    #[test]
    fn negative_exponents_are_rejected() {
        let err = parse_spec(r#"{"dim":2,"Q":[[5,0],[0,-1]],"extra":[]}"#).unwrap_err();
        assert!(matches!(err, SpecError::Validation(_)));
    }

    #[test]
    fn q_must_be_pure_powers() {
        let err = parse_spec(r#"{"dim":2,"Q":[[5,1],[0,5]],"extra":[]}"#).unwrap_err();
        assert!(matches!(err, SpecError::Validation(_)));
        let err = parse_spec(r#"{"dim":2,"Q":[[5,0]],"extra":[]}"#).unwrap_err();
        assert!(matches!(err, SpecError::Validation(_)));
        let err = parse_spec(r#"{"dim":2,"Q":[[5,0],[3,0]],"extra":[]}"#).unwrap_err();
        assert!(matches!(err, SpecError::Validation(_)));
    }

    #[test]
    fn monomial_strings_are_sugar() {
        let spec = parse_spec(
            r#"{"dim":2, "Q":["x^5","y^5"], "extra":["x^2*y^3", "x^3*y^2"]}"#,
        )
        .unwrap();
        assert_eq!(spec.q, vec![vec![5, 0], vec![0, 5]]);
        assert_eq!(spec.extra, vec![vec![2, 3], vec![3, 2]]);

        assert_eq!(parse_monomial("x*y", 2).unwrap(), vec![1, 1]);
        assert_eq!(parse_monomial("1", 3).unwrap(), vec![0, 0, 0]);
        assert_eq!(parse_monomial("x2^4", 5).unwrap(), vec![0, 4, 0, 0, 0]);
        assert!(parse_monomial("q^2", 2).is_err());
        assert!(parse_monomial("z", 2).is_err());
    }

    #[test]
    fn render_round_trips() {
        let spec = parse_spec(
            r#"{"dim":3, "Q":[[3,0,0],[0,3,0],[0,0,3]], "extra":[[2,1,0],[1,0,2]], "label":"demo"}"#,
        )
        .unwrap();
        let again = parse_spec(&spec.render()).unwrap();
        assert_eq!(spec, again);
    }
}
