//! The algebra document: a JSON object describing a metric Lie algebra.
//!
//! ```json
//! {
//!   "name": "h3",
//!   "dim": 3,
//!   "field": "rational",
//!   "labels": ["X1", "X2", "X3"],
//!   "brackets": [{ "i": 1, "j": 2, "terms": [{ "k": 3, "c": "1" }] }],
//!   "gram": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
//! }
//! ```
//!
//! Indices are 1-based and each bracket needs `i < j`. Scalars are strings
//! (`"p/q"`, integers, decimals) or JSON numbers. `gram` defaults to the
//! identity. An optional `j` matrix carries a complex structure.

use metrilie::algebra::default_labels;
use metrilie::{BracketEntry, Error as CoreError, LieAlgebra, Matrix, Metric, MetricLieAlgebra, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    #[default]
    Rational,
    Numeric,
}

/// A scalar as written in a document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Text(String),
    Number(serde_json::Number),
}

impl ScalarText {
    fn parse(&self, field: Field) -> Result<Scalar, CoreError> {
        let text = match self {
            ScalarText::Text(s) => s.clone(),
            ScalarText::Number(n) => n.to_string(),
        };
        match field {
            Field::Rational => Scalar::parse_exact(&text),
            Field::Numeric => Scalar::parse_numeric(&text),
        }
    }
}

impl From<&Scalar> for ScalarText {
    fn from(s: &Scalar) -> Self {
        ScalarText::Text(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub k: usize,
    pub c: ScalarText,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub field: Field,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<ScalarText>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<Vec<ScalarText>>>,
}

/// Parsed document before any axiom check.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub name: String,
    pub algebra: LieAlgebra,
    pub gram: Matrix,
    pub j: Option<Matrix>,
}

impl Parsed {
    /// Validates the Jacobi identity and the metric.
    pub fn into_metric_algebra(self) -> Result<(MetricLieAlgebra, Option<Matrix>), CliError> {
        let report = self.algebra.check_jacobi();
        if !report.passes() {
            return Err(CoreError::JacobiViolation {
                triple: report.worst_triple.unwrap_or((0, 0, 0)),
                residual: report.max_residual,
            }
            .into());
        }
        let metric = Metric::new(self.gram)?;
        Ok((MetricLieAlgebra::new(self.name, self.algebra, metric)?, self.j))
    }
}

fn index(v: usize, dim: usize) -> Result<usize, CliError> {
    if v == 0 || v > dim {
        return Err(CoreError::IndexOutOfRange { index: v, dim }.into());
    }
    Ok(v - 1)
}

fn matrix(rows: &[Vec<ScalarText>], dim: usize, field: Field, what: &str) -> Result<Matrix, CliError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(CliError::Document(format!("{what} must be a {dim}x{dim} matrix")));
    }
    let mut m = Matrix::zeros(dim, dim);
    for (r, row) in rows.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            m.set(r, c, x.parse(field)?);
        }
    }
    Ok(m)
}

impl AlgebraDoc {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Structural parse: indices, ordering, shapes and scalars.
    pub fn parse(&self) -> Result<Parsed, CliError> {
        let n = self.dim;
        let labels = match &self.labels {
            Some(l) if l.len() != n => {
                return Err(CliError::Document(format!("{} labels for dimension {n}", l.len())));
            }
            Some(l) => l.clone(),
            None => default_labels(n),
        };
        let mut entries = Vec::with_capacity(self.brackets.len());
        for b in &self.brackets {
            let (i, j) = (index(b.i, n)?, index(b.j, n)?);
            let mut terms = Vec::with_capacity(b.terms.len());
            for t in &b.terms {
                terms.push((index(t.k, n)?, t.c.parse(self.field)?));
            }
            entries.push(BracketEntry::new(i, j, terms));
        }
        let algebra = LieAlgebra::unchecked(n, labels, entries)?;
        let gram = match &self.gram {
            Some(rows) => matrix(rows, n, self.field, "gram")?,
            None if self.field == Field::Numeric => Matrix::identity(n).to_numeric(),
            None => Matrix::identity(n),
        };
        let j = self.j.as_ref().map(|rows| matrix(rows, n, self.field, "j")).transpose()?;
        Ok(Parsed { name: self.name.clone(), algebra, gram, j })
    }

    /// Document for `a`, with an optional complex structure.
    pub fn render(a: &MetricLieAlgebra, j: Option<&Matrix>) -> Self {
        let field = match a.backend().join(j.map_or(metrilie::Backend::Exact, Matrix::backend)) {
            metrilie::Backend::Exact => Field::Rational,
            metrilie::Backend::Numeric => Field::Numeric,
        };
        let brackets = a
            .algebra()
            .entries()
            .into_iter()
            .map(|e| BracketDoc {
                i: e.i + 1,
                j: e.j + 1,
                terms: e.terms.iter().map(|(k, c)| TermDoc { k: k + 1, c: c.into() }).collect(),
            })
            .collect();
        AlgebraDoc {
            name: a.name().to_string(),
            dim: a.dim(),
            field,
            labels: Some(a.algebra().labels().to_vec()),
            brackets,
            gram: Some(matrix_text(a.gram())),
            j: j.map(matrix_text),
        }
    }
}

pub fn matrix_text(m: &Matrix) -> Vec<Vec<ScalarText>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).into()).collect()).collect()
}

/// Parse a document all the way to a validated metric Lie algebra.
pub fn load(text: &str) -> Result<(MetricLieAlgebra, Option<Matrix>), CliError> {
    AlgebraDoc::from_json(text)?.parse()?.into_metric_algebra()
}
