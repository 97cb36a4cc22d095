//! Report data: candidates, certified constants, tables, verdicts, and their renderings.

use std::fmt;

use serde::Serialize;

use crate::interval::{CertifiedReal, Decision, Outcome};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SectionId {
    #[serde(rename = "s3-unequal")]
    S3Unequal,
    #[serde(rename = "s3-equal")]
    S3Equal,
    #[serde(rename = "s4-inert")]
    S4Inert,
    #[serde(rename = "s4-noninert")]
    S4NonInert,
    #[serde(rename = "s5")]
    S5,
}

impl SectionId {
    pub const ALL: [SectionId; 5] = [
        SectionId::S3Unequal,
        SectionId::S3Equal,
        SectionId::S4Inert,
        SectionId::S4NonInert,
        SectionId::S5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SectionId::S3Unequal => "s3-unequal",
            SectionId::S3Equal => "s3-equal",
            SectionId::S4Inert => "s4-inert",
            SectionId::S4NonInert => "s4-noninert",
            SectionId::S5 => "s5",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.as_str() == s)
    }
}

impl fmt::Display for SectionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A closed integer range, possibly unbounded above.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub min: i64,
    pub max: Option<i64>,
}

impl Span {
    pub fn exact(v: i64) -> Self {
        Self { min: v, max: Some(v) }
    }

    pub fn at_least(v: i64) -> Self {
        Self { min: v, max: None }
    }

    pub fn between(lo: i64, hi: i64) -> Self {
        Self { min: lo, max: Some(hi) }
    }

    pub fn contains(&self, v: i64) -> bool {
        v >= self.min && self.max.is_none_or(|m| v <= m)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.max {
            Some(m) if m == self.min => write!(f, "{m}"),
            Some(m) => write!(f, "{}..={m}", self.min),
            None => write!(f, "{}..", self.min),
        }
    }
}

impl Serialize for Span {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Status {
    /// Named certified constant whose decision eliminated the candidate.
    EliminatedByBound {
        certificate: String,
    },
    EliminatedByExactIdentity {
        residual: String,
    },
    EliminatedByDimension {
        weight: u32,
        lower_bound: String,
    },
    EliminatedByFixture {
        fixture: String,
    },
    Survivor,
}

impl Status {
    pub fn is_eliminated(&self) -> bool {
        !matches!(self, Status::Survivor)
    }
}

/// One `(D, k1, k2)` candidate, or a family of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Candidate {
    /// Field degree, for the totally real section; `2` elsewhere.
    pub degree: Span,
    pub d: Span,
    pub k1: Span,
    pub k2: Span,
    /// Extra restriction on the family, e.g. a congruence on `D`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
    pub status: Status,
}

impl Candidate {
    pub fn quadratic(d: Span, k1: Span, k2: Span, status: Status) -> Self {
        Self {
            degree: Span::exact(2),
            d,
            k1,
            k2,
            condition: None,
            status,
        }
    }

    pub fn with_condition(mut self, c: impl Into<String>) -> Self {
        self.condition = Some(c.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedConstant {
    pub name: String,
    pub expression: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claim: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<Outcome>,
    pub lo: String,
    pub hi: String,
    pub precision_used: u32,
}

impl CertifiedConstant {
    pub fn certified(&self) -> bool {
        self.outcome.is_none_or(|o| o == Outcome::CertifiedTrue)
    }

    pub fn enclosure_from(
        name: &str,
        expression: String,
        claim: Option<String>,
        decision: Option<Decision>,
        x: Option<&CertifiedReal>,
        precision: u32,
    ) -> Self {
        let (lo, hi) = x.map(|x| x.decimal_bounds(20)).unwrap_or_else(|| ("-inf".into(), "inf".into()));
        Self {
            name: name.to_string(),
            expression,
            claim,
            outcome: decision.map(|d| d.outcome),
            lo,
            hi,
            precision_used: decision.map_or(precision, |d| d.precision_used),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub key: i64,
    pub values: Vec<Option<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub id: String,
    pub title: String,
    pub key_label: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn value(&self, key: i64, column: usize) -> Option<i64> {
        self.rows.iter().find(|r| r.key == key).and_then(|r| r.values[column])
    }

    pub fn column(&self, column: usize) -> Vec<Option<i64>> {
        self.rows.iter().map(|r| r.values[column]).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.key_label);
        for c in &self.columns {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.key.to_string());
            for v in &r.values {
                out.push(',');
                out.push_str(&v.map_or("-".to_string(), |v| v.to_string()));
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_csv(id: &str, title: &str, text: &str) -> Option<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<&str> = lines.next()?.split(',').collect();
        let (key_label, columns) = header.split_first()?;
        let mut rows = Vec::new();
        for line in lines {
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            if cells.len() != header.len() {
                return None;
            }
            let key = cells[0].parse().ok()?;
            let mut values = Vec::new();
            for c in &cells[1..] {
                values.push(if *c == "-" { None } else { Some(c.parse().ok()?) });
            }
            rows.push(TableRow { key, values });
        }
        Some(Self {
            id: id.to_string(),
            title: title.to_string(),
            key_label: key_label.to_string(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows,
        })
    }

    /// Transposed Markdown table: one column per key, one line per value column.
    pub fn to_markdown(&self) -> String {
        let mut out = format!("**{}**\n\n| {} |", self.title, self.key_label);
        for r in &self.rows {
            out.push_str(&format!(" {} |", r.key));
        }
        out.push_str("\n|---|");
        for _ in &self.rows {
            out.push_str("---|");
        }
        out.push('\n');
        for (i, c) in self.columns.iter().enumerate() {
            out.push_str(&format!("| {c} |"));
            for r in &self.rows {
                out.push_str(&format!(" {} |", r.values[i].map_or("∅".to_string(), |v| v.to_string())));
            }
            out.push('\n');
        }
        out
    }
}

/// A computed table together with the candidate universe that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub table: Table,
    pub universe: String,
    /// Whether this table is compared against the shipped golden file.
    pub primary: bool,
    pub matches_golden: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureUse {
    pub id: String,
    pub citation: String,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DecisionSummary {
    pub total: u64,
    pub certified_true: u64,
    pub certified_false: u64,
    pub inconclusive: u64,
    pub max_precision_used: u32,
}

impl DecisionSummary {
    pub fn record(&mut self, d: &Decision) {
        self.total += 1;
        match d.outcome {
            Outcome::CertifiedTrue => self.certified_true += 1,
            Outcome::CertifiedFalse => self.certified_false += 1,
            Outcome::Inconclusive => self.inconclusive += 1,
        }
        self.max_precision_used = self.max_precision_used.max(d.precision_used);
    }

    pub fn merge(&mut self, other: &DecisionSummary) {
        self.total += other.total;
        self.certified_true += other.certified_true;
        self.certified_false += other.certified_false;
        self.inconclusive += other.inconclusive;
        self.max_precision_used = self.max_precision_used.max(other.max_precision_used);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "no identity exists")]
    NoIdentityExists,
    #[serde(rename = "identities survive")]
    IdentitiesSurvive,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub section: SectionId,
    pub title: String,
    pub candidates: Vec<Candidate>,
    pub tables: Vec<TableReport>,
    pub constants: Vec<CertifiedConstant>,
    pub fixtures: Vec<FixtureUse>,
    pub decisions: DecisionSummary,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn constant(&self, name: &str) -> Option<&CertifiedConstant> {
        self.constants.iter().find(|c| c.name == name)
    }

    pub fn table(&self, id: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.primary && t.table.id == id).map(|t| &t.table)
    }

    pub fn golden_mismatch(&self) -> bool {
        self.tables.iter().any(|t| t.matches_golden == Some(false))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("# {} ({})\n\nVerdict: **{}**\n\n", self.title, self.section, verdict_text(self.verdict));
        for t in self.tables.iter().filter(|t| t.primary) {
            out.push_str(&t.table.to_markdown());
            out.push_str(&format!("\nUniverse: {}", t.universe));
            if let Some(m) = t.matches_golden {
                out.push_str(if m { " (matches golden)" } else { " (DIFFERS from golden)" });
            }
            out.push_str("\n\n");
        }
        let alternatives: Vec<_> = self.tables.iter().filter(|t| !t.primary).collect();
        if !alternatives.is_empty() {
            out.push_str("## Alternative candidate universes\n\n");
            for t in alternatives {
                out.push_str(&format!("{} over {}:\n\n", t.table.id, t.universe));
                out.push_str(&t.table.to_markdown());
                out.push('\n');
            }
        }
        if !self.constants.is_empty() {
            out.push_str("## Certified constants\n\n| name | claim | outcome | enclosure | bits |\n|---|---|---|---|---|\n");
            for c in &self.constants {
                let outcome = c.outcome.map_or("-".to_string(), |o| format!("{o:?}"));
                out.push_str(&format!(
                    "| {} | {} | {} | [{}, {}] | {} |\n",
                    c.name,
                    c.claim.as_deref().unwrap_or("-"),
                    outcome,
                    c.lo,
                    c.hi,
                    c.precision_used
                ));
            }
            out.push('\n');
        }
        if !self.candidates.is_empty() {
            out.push_str("## Candidates\n\n| n | D | k1 | k2 | condition | status |\n|---|---|---|---|---|---|\n");
            for c in &self.candidates {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} |\n",
                    c.degree,
                    c.d,
                    c.k1,
                    c.k2,
                    c.condition.as_deref().unwrap_or(""),
                    status_text(&c.status)
                ));
            }
            out.push('\n');
        }
        if !self.fixtures.is_empty() {
            out.push_str("## External facts consumed\n\n");
            for f in &self.fixtures {
                out.push_str(&format!("- `{}`: {} ({})\n", f.id, f.detail, f.citation));
            }
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("> {n}\n"));
        }
        out
    }
}

pub fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::NoIdentityExists => "no identity exists",
        Verdict::IdentitiesSurvive => "identities survive",
        Verdict::Inconclusive => "inconclusive",
    }
}

pub fn status_text(s: &Status) -> String {
    match s {
        Status::EliminatedByBound { certificate } => format!("bound `{certificate}`"),
        Status::EliminatedByExactIdentity { residual } => format!("exact residual {residual}"),
        Status::EliminatedByDimension { weight, lower_bound } => format!("dim S_{weight} >= {lower_bound}"),
        Status::EliminatedByFixture { fixture } => format!("fixture `{fixture}`"),
        Status::Survivor => "SURVIVOR".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let t = Table {
            id: "t".into(),
            title: "T".into(),
            key_label: "k1".into(),
            columns: vec!["max_k2".into(), "max_D".into()],
            rows: vec![
                TableRow {
                    key: 2,
                    values: vec![Some(38), Some(3517)],
                },
                TableRow {
                    key: 28,
                    values: vec![None, None],
                },
            ],
        };
        let csv = t.to_csv();
        assert_eq!(csv, "k1,max_k2,max_D\n2,38,3517\n28,-,-\n");
        assert_eq!(Table::parse_csv("t", "T", &csv).unwrap(), t);
        assert!(t.to_markdown().contains("| max_D | 3517 | ∅ |"));
    }

    #[test]
    fn spans_display() {
        assert_eq!(Span::exact(8).to_string(), "8");
        assert_eq!(Span::at_least(41).to_string(), "41..");
        assert_eq!(Span::between(13, 3517).to_string(), "13..=3517");
        assert!(Span::at_least(41).contains(1000));
    }
}
