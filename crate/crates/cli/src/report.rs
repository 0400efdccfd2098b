//! Rendering of command results as text or structured JSON.

use std::fmt::Write as _;

use metrilie::complex::{ComplexCertificate, ComplexStructure, HERMITIAN_CONVENTION};
use metrilie::decomp::Decomposition;
use metrilie::lab::{Construction, JCountReport, ScanReport, EPSILON_DENOMINATOR};
use metrilie::{Backend, JacobiReport, Matrix, MetricLieAlgebra, Scalar};
use serde_json::{json, Value};

use crate::doc::AlgebraDoc;

/// A command result in both renderings.
pub struct Report {
    pub text: String,
    pub data: Value,
    pub backend: Backend,
}

pub fn scalar(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vector(m.row(r))).collect())
}

fn text_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(Scalar::to_string).collect();
    format!("({})", parts.join(", "))
}

fn text_matrix(out: &mut String, m: &Matrix, indent: &str) {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|r| m.row(r).iter().map(Scalar::to_string).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{indent}[{}]", padded.join(" "));
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn hash_text(h: u64) -> String {
    format!("{h:016x}")
}

pub fn check(a: &MetricLieAlgebra, jacobi: &JacobiReport, j: Option<&ComplexCertificate>) -> Report {
    let center = a.center().dim();
    let derived = a.derived_subalgebra().dim();
    let abelian = a.has_abelian_factor();
    let mut text = String::new();
    let _ = writeln!(text, "{}: dim {}, {} backend", a.name(), a.dim(), a.backend());
    let _ = writeln!(text, "jacobi: ok ({} triples)", jacobi.triples_checked);
    let _ = writeln!(text, "metric: positive definite");
    let _ = writeln!(text, "center dim {center}, derived dim {derived}, abelian factor {}", yes(abelian));
    let mut data = json!({
        "name": a.name(),
        "dim": a.dim(),
        "backend": a.backend().as_str(),
        "jacobi": { "passes": true, "max_residual": scalar(&jacobi.max_residual), "triples": jacobi.triples_checked },
        "metric": { "positive_definite": true },
        "center_dim": center,
        "derived_dim": derived,
        "abelian_factor": abelian,
    });
    if let Some(c) = j {
        let _ = writeln!(
            text,
            "j: {} (J^2+I {}, bi-invariance {}, skew {})",
            if c.passes() { "orthogonal bi-invariant complex structure" } else { "FAILS" },
            c.square,
            c.bi_invariance,
            c.skew
        );
        data["j"] = complex_certificate(c);
    }
    Report { text, data, backend: a.backend() }
}

pub fn jacobi_failure(a_name: &str, labels: &[String], jacobi: &JacobiReport) -> Report {
    let (x, y, z) = jacobi.worst_triple.unwrap_or((0, 0, 0));
    let text = format!(
        "{a_name}: Jacobi identity fails on ({}, {}, {}) = basis triple ({}, {}, {}), residual {}\n",
        labels[x],
        labels[y],
        labels[z],
        x + 1,
        y + 1,
        z + 1,
        jacobi.max_residual
    );
    let data = json!({
        "name": a_name,
        "jacobi": {
            "passes": false,
            "triple": [x + 1, y + 1, z + 1],
            "labels": [labels[x], labels[y], labels[z]],
            "max_residual": scalar(&jacobi.max_residual),
        },
    });
    Report { text, data, backend: jacobi.max_residual.backend() }
}

fn complex_certificate(c: &ComplexCertificate) -> Value {
    json!({
        "passes": c.passes(),
        "square": scalar(&c.square),
        "bi_invariance": scalar(&c.bi_invariance),
        "skew": scalar(&c.skew),
    })
}

pub fn decomposition(a: &MetricLieAlgebra, d: &Decomposition) -> Report {
    let mut text = String::new();
    let k = d.len();
    let _ = writeln!(
        text,
        "{}: {k} irreducible factor{} ({} backend)",
        a.name(),
        if k == 1 { "" } else { "s" },
        d.backend()
    );
    let mut factors = Vec::new();
    for (idx, f) in d.factors().iter().enumerate() {
        let c = f.certificate();
        let _ = writeln!(text, "factor {}: dim {}", idx + 1, f.dim());
        for v in f.carrier().basis() {
            let _ = writeln!(text, "  carrier {}", text_vector(v));
        }
        let _ = writeln!(text, "  projection");
        text_matrix(&mut text, f.projection(), "    ");
        let _ = writeln!(
            text,
            "  certificate: projection residual {}, ideal {}, symmetric centroid dim {}",
            c.projection.max_residual(),
            yes(c.is_ideal),
            c.symmetric_centroid_dim
        );
        factors.push(json!({
            "index": idx + 1,
            "dim": f.dim(),
            "carrier": f.carrier().basis().iter().map(|v| vector(v)).collect::<Vec<_>>(),
            "projection": matrix(f.projection()),
            "induced": serde_json::to_value(AlgebraDoc::render(f.induced(), None)).expect("document serializes"),
            "certificate": {
                "passes": c.passes(),
                "idempotent": scalar(&c.projection.idempotent),
                "centroid": scalar(&c.projection.centroid),
                "symmetric": scalar(&c.projection.symmetric),
                "is_ideal": c.is_ideal,
                "symmetric_centroid_dim": c.symmetric_centroid_dim,
            },
        }));
    }
    let _ = writeln!(
        text,
        "projection sum residual {}, orthogonality residual {}",
        d.projection_sum_residual, d.orthogonality_residual
    );
    let data = json!({
        "name": a.name(),
        "dim": a.dim(),
        "backend": d.backend().as_str(),
        "factor_count": k,
        "factors": factors,
        "residuals": {
            "projection_sum": scalar(&d.projection_sum_residual),
            "orthogonality": scalar(&d.orthogonality_residual),
        },
    });
    Report { text, data, backend: d.backend() }
}

pub fn structures(a: &MetricLieAlgebra, factor_count: usize, js: &[ComplexStructure]) -> Report {
    let backend = js.iter().fold(a.backend(), |b, j| b.join(j.backend()));
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{}: {} orthogonal bi-invariant complex structure{} ({} factor{}, {} backend)",
        a.name(),
        js.len(),
        if js.len() == 1 { "" } else { "s" },
        factor_count,
        if factor_count == 1 { "" } else { "s" },
        backend
    );
    let mut items = Vec::new();
    for (idx, j) in js.iter().enumerate() {
        let signs: Vec<String> = j.signs().iter().map(|s| if *s > 0 { "+" } else { "-" }.to_string()).collect();
        let _ = writeln!(text, "J{} signs ({}), residual {}", idx + 1, signs.join(","), j.certificate().max_residual());
        text_matrix(&mut text, j.matrix(), "  ");
        items.push(json!({
            "index": idx + 1,
            "signs": j.signs(),
            "matrix": matrix(j.matrix()),
            "certificate": complex_certificate(j.certificate()),
            "backend": j.backend().as_str(),
        }));
    }
    let data = json!({
        "name": a.name(),
        "dim": a.dim(),
        "backend": backend.as_str(),
        "factor_count": factor_count,
        "count": js.len(),
        "hermitian_convention": HERMITIAN_CONVENTION,
        "structures": items,
    });
    Report { text, data, backend }
}

fn construction_data(c: &Construction, blocks: &[String], spread: i64) -> Value {
    json!({
        "blocks": blocks,
        "factor_count": c.factor_count,
        "attempts": c.attempts,
        "spread": spread,
        "epsilon": format!("1/{EPSILON_DENOMINATOR}"),
        "gram": matrix(c.metric().gram()),
        "gram_hash": hash_text(metrilie::lab::gram_hash(c.metric().gram())),
        "algebra": serde_json::to_value(AlgebraDoc::render(&c.algebra, None)).expect("document serializes"),
    })
}

pub fn construction(c: &Construction, blocks: &[String], spread: i64) -> Report {
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{}: metric with {} irreducible factor{} after {} attempt{} (spread {spread}, epsilon 1/{EPSILON_DENOMINATOR})",
        blocks.join("+"),
        c.factor_count,
        if c.factor_count == 1 { "" } else { "s" },
        c.attempts,
        if c.attempts == 1 { "" } else { "s" },
    );
    let _ = writeln!(text, "gram");
    text_matrix(&mut text, c.metric().gram(), "  ");
    Report { text, data: construction_data(c, blocks, spread), backend: c.algebra.backend() }
}

pub fn jcount(r: &JCountReport, blocks: &[String], spread: i64) -> Report {
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{}: {} orthogonal bi-invariant complex structures on {} factor{} (expected {}), {} attempt{}",
        blocks.join("+"),
        r.count,
        r.factor_count,
        if r.factor_count == 1 { "" } else { "s" },
        r.expected(),
        r.attempts,
        if r.attempts == 1 { "" } else { "s" },
    );
    let _ = writeln!(text, "gram");
    text_matrix(&mut text, r.construction.metric().gram(), "  ");
    let mut data = construction_data(&r.construction, blocks, spread);
    data["l"] = json!(r.l);
    data["count"] = json!(r.count);
    data["expected"] = json!(r.expected());
    Report { text, data, backend: r.construction.algebra.backend() }
}

pub fn scan(name: &str, r: &ScanReport) -> Report {
    let backend = r.rows.iter().fold(Backend::Exact, |b, row| b.join(row.backend));
    let mut text = String::new();
    let _ = writeln!(text, "{name}: {} trials, {} skipped, spread {}", r.rows.len(), r.skipped, r.spread);
    let _ = writeln!(text, "{:>5}  {:>20}  {:16}  {:>7}  {:>6}  {:8}  residual", "trial", "seed", "gram", "factors", "jcount", "backend");
    let opt = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
    let mut rows = Vec::new();
    for row in &r.rows {
        let seed = row.seed.map_or("leading".to_string(), |s| s.to_string());
        let _ = writeln!(
            text,
            "{:>5}  {:>20}  {}  {:>7}  {:>6}  {:8}  {}",
            row.trial,
            seed,
            hash_text(row.gram_hash),
            opt(row.factors),
            opt(row.jcount),
            row.backend.as_str(),
            row.max_residual
        );
        rows.push(json!({
            "trial": row.trial,
            "seed": row.seed,
            "gram_hash": hash_text(row.gram_hash),
            "factors": row.factors,
            "jcount": row.jcount,
            "backend": row.backend.as_str(),
            "max_residual": scalar(&row.max_residual),
        }));
    }
    let hist: Vec<String> = r.histogram.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    let _ = writeln!(text, "histogram (J-count: trials) {{{}}}", hist.join(", "));
    let histogram: serde_json::Map<String, Value> = r.histogram.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let data = json!({
        "algebra": name,
        "trials": r.rows.len(),
        "skipped": r.skipped,
        "spread": r.spread,
        "epsilon": format!("1/{EPSILON_DENOMINATOR}"),
        "histogram": histogram,
        "rows": rows,
    });
    Report { text, data, backend }
}
