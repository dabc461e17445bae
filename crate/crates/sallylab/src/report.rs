//! Report rendering: analysis output in JSON, markdown and CSV, and the
//! claim results emitted by the built-in verification suite.
//!
//! All lengths and coefficients are serialized as decimal strings so that
//! consumers with any integer width can read them back exactly.

use serde_json::{json, Map, Value};

use crate::sally::{CheckStatus, SallyProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Markdown,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "md" | "markdown" => Ok(OutputFormat::Markdown),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

fn dec<T: ToString>(v: T) -> Value {
    Value::String(v.to_string())
}

fn dec_list<T: ToString, I: IntoIterator<Item = T>>(vs: I) -> Value {
    Value::Array(vs.into_iter().map(dec).collect())
}

/// The schema-stable JSON document for one analyzed pair. See the README
/// for the field-by-field description.
pub fn profile_to_json(profile: &SallyProfile) -> Value {
    let mut doc = Map::new();
    if let Some(label) = &profile.label {
        doc.insert("label".into(), json!(label));
    }
    doc.insert("dim".into(), json!(profile.dim));
    doc.insert(
        "q".into(),
        json!(profile
            .reduction
            .gens()
            .iter()
            .map(|g| g.exponents().to_vec())
            .collect::<Vec<_>>()),
    );
    doc.insert(
        "ideal".into(),
        json!(profile
            .ideal
            .gens()
            .iter()
            .map(|g| g.exponents().to_vec())
            .collect::<Vec<_>>()),
    );
    doc.insert("window".into(), json!(profile.window));
    doc.insert(
        "flags".into(),
        json!({
            "is_reduction": profile.flags.is_reduction,
            "i2_eq_qi": profile.flags.square_reduced,
            "i3_eq_qi2": profile.flags.cube_reduced,
            "m_i2_in_qi": profile.flags.m_i2_in_qi,
            "integrally_closed": profile.flags.integrally_closed,
            "ratliff_rush_closed": profile.flags.ratliff_rush_closed,
        }),
    );
    doc.insert(
        "hilbert".into(),
        json!({
            "values": dec_list(profile.table.values.iter()),
            "e": dec_list(profile.coefficients.e.iter()),
            "postulation": profile.coefficients.postulation,
        }),
    );
    doc.insert("len_a_i".into(), dec(profile.len_a_i));
    if let Some(s) = &profile.s {
        doc.insert(
            "sally".into(),
            json!({
                "s": dec_list(s.iter()),
                "rank": profile.rank.map(dec).unwrap_or(Value::Null),
                "m_inv": profile.m_inv.map(dec).unwrap_or(Value::Null),
            }),
        );
    }
    if let Some(class) = &profile.classification {
        let mut c = Map::new();
        c.insert("tag".into(), json!(class.tag()));
        if let Some(depth) = &profile.predicted_depth {
            c.insert("predicted_depth_g".into(), json!(depth.to_string()));
        }
        if let Some(cf) = &profile.closed_form {
            c.insert(
                "closed_form".into(),
                json!({"e": dec_list(cf.e.iter()), "from": cf.from}),
            );
        }
        doc.insert("classification".into(), Value::Object(c));
    }
    doc.insert(
        "checks".into(),
        Value::Array(
            profile
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "status": c.status.to_string(),
                        "detail": c.detail,
                    })
                })
                .collect(),
        ),
    );
    doc.insert(
        "status".into(),
        json!(if profile.passed() { "OK" } else { "FAIL" }),
    );
    Value::Object(doc)
}

pub fn render_profile(profile: &SallyProfile, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&profile_to_json(profile)).expect("serializes")
        }
        OutputFormat::Markdown => profile_to_markdown(profile),
        OutputFormat::Csv => profile_to_csv(profile),
    }
}

fn profile_to_markdown(profile: &SallyProfile) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let label = profile.label.as_deref().unwrap_or("analysis");
    writeln!(out, "# {label}").unwrap();
    writeln!(out).unwrap();
    writeln!(out, "- ambient dimension: {}", profile.dim).unwrap();
    writeln!(out, "- Q = {}", profile.reduction).unwrap();
    writeln!(out, "- I = {}", profile.ideal).unwrap();
    writeln!(out, "- len(A/I) = {}", profile.len_a_i).unwrap();
    writeln!(out).unwrap();

    writeln!(out, "## flags").unwrap();
    writeln!(out).unwrap();
    let f = &profile.flags;
    writeln!(out, "| condition | holds |").unwrap();
    writeln!(out, "|---|---|").unwrap();
    writeln!(out, "| Q is a reduction of I | {} |", f.is_reduction).unwrap();
    writeln!(out, "| I^2 = QI | {} |", f.square_reduced).unwrap();
    writeln!(out, "| I^3 = QI^2 | {} |", f.cube_reduced).unwrap();
    writeln!(out, "| m I^2 in QI | {} |", f.m_i2_in_qi).unwrap();
    writeln!(out, "| integrally closed | {} |", f.integrally_closed).unwrap();
    if let Some(rr) = f.ratliff_rush_closed {
        writeln!(out, "| Ratliff-Rush closed | {rr} |").unwrap();
    }
    writeln!(out).unwrap();

    writeln!(out, "## hilbert function").unwrap();
    writeln!(out).unwrap();
    writeln!(
        out,
        "e = ({}), postulation index {}",
        profile
            .coefficients
            .e
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", "),
        profile.coefficients.postulation
    )
    .unwrap();
    writeln!(out).unwrap();
    writeln!(out, "| n | H(n) | s_n |").unwrap();
    writeln!(out, "|---|---|---|").unwrap();
    for n in 0..=profile.window {
        let s = match (&profile.s, n) {
            (_, 0) => "0".to_string(),
            (Some(s), _) => s[n - 1].to_string(),
            (None, _) => "-".to_string(),
        };
        writeln!(out, "| {n} | {} | {s} |", profile.table.value(n)).unwrap();
    }
    writeln!(out).unwrap();

    if profile.rank.is_some() || profile.m_inv.is_some() {
        writeln!(out, "## sally module").unwrap();
        writeln!(out).unwrap();
        if let Some(rank) = profile.rank {
            writeln!(out, "- rank = {rank}").unwrap();
        }
        if let Some(m) = profile.m_inv {
            writeln!(out, "- m = {m}").unwrap();
        }
        writeln!(out).unwrap();
    }

    writeln!(out, "## classification").unwrap();
    writeln!(out).unwrap();
    match &profile.classification {
        Some(class) => {
            writeln!(out, "- tag: {}", class.tag()).unwrap();
            if let Some(depth) = &profile.predicted_depth {
                writeln!(out, "- predicted depth of G: {depth}").unwrap();
            }
            if let Some(cf) = &profile.closed_form {
                writeln!(
                    out,
                    "- closed form: e = ({}) for n >= {}",
                    cf.e.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", "),
                    cf.from
                )
                .unwrap();
            }
        }
        None => writeln!(out, "- tag: n/a").unwrap(),
    }
    writeln!(out).unwrap();

    writeln!(out, "## checks").unwrap();
    writeln!(out).unwrap();
    writeln!(out, "| check | status | detail |").unwrap();
    writeln!(out, "|---|---|---|").unwrap();
    for c in &profile.checks {
        writeln!(out, "| {} | {} | {} |", c.name, c.status, c.detail).unwrap();
    }
    writeln!(out).unwrap();
    writeln!(
        out,
        "STATUS: {}",
        if profile.passed() { "OK" } else { "FAIL" }
    )
    .unwrap();
    out
}

/// Tables only: one row per tabulated value.
fn profile_to_csv(profile: &SallyProfile) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "table,n,value").unwrap();
    for (n, v) in profile.table.values.iter().enumerate() {
        writeln!(out, "hilbert,{n},{v}").unwrap();
    }
    if let Some(s) = &profile.s {
        for (idx, v) in s.iter().enumerate() {
            writeln!(out, "sally,{},{v}", idx + 1).unwrap();
        }
    }
    out
}

/// One verified claim in the built-in suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimResult {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub computed: String,
    pub status: CheckStatus,
    /// How the expected value is known (fixed constant, lattice oracle,
    /// closed form).
    pub note: String,
}

impl ClaimResult {
    pub fn line(&self) -> String {
        format!(
            "{} {} — {} (expected {}, computed {})",
            self.status, self.id, self.description, self.expected, self.computed
        )
    }
}

pub fn claims_to_json(claims: &[ClaimResult]) -> Value {
    Value::Array(
        claims
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "description": c.description,
                    "expected": c.expected,
                    "computed": c.computed,
                    "status": c.status.to_string(),
                    "note": c.note,
                })
            })
            .collect(),
    )
}

pub fn claims_to_markdown(claims: &[ClaimResult]) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "| claim | status | expected | computed |").unwrap();
    writeln!(out, "|---|---|---|---|").unwrap();
    for c in claims {
        writeln!(
            out,
            "| {} | {} | {} | {} |",
            c.id, c.status, c.expected, c.computed
        )
        .unwrap();
    }
    out
}
