//! Certificate serialization and the independent verifier.
//!
//! The verifier deliberately uses only the graph primitives and the
//! brute-force cycle search: it shares no code with the solver pipeline, so
//! a bug there cannot vouch for itself.

use crate::cycles::is_transversal;
use crate::geometry::OrientedCycle;
use crate::graph::{Graph, VertexSet};
use crate::solver::{Certificate, CertificateKind};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("json error: {0}")]
    Json(String),
}

/// The wire form of a certificate (the solver trace, if present, travels in
/// the free-form `trace` field and is ignored by the verifier).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateDoc {
    pub ell: usize,
    pub n: usize,
    pub budget: usize,
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle1: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle2: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<serde_json::Value>,
}

fn path_json(p: &crate::paths::PathWitness) -> serde_json::Value {
    json!(p.vertices())
}

fn trace_json(cert: &Certificate) -> serde_json::Value {
    let t = &cert.trace;
    let mut doc = json!({
        "branch": t.branch.label(),
        "anomaly": t.anomaly,
    });
    let obj = doc.as_object_mut().unwrap();
    if let Some(c) = &t.c {
        obj.insert("c".into(), json!(c.vertices()));
    }
    if let Some(d) = &t.d {
        obj.insert("d".into(), json!(d.vertices()));
    }
    if let Some(a) = &t.case_a {
        let mut m = serde_json::Map::new();
        m.insert("x".into(), json!(a.x));
        m.insert("y".into(), json!(a.y));
        m.insert("cd".into(), json!(a.cd));
        m.insert("x1".into(), json!(a.x1));
        m.insert("x2".into(), json!(a.x2));
        m.insert("x3".into(), json!(a.x3));
        m.insert("e1".into(), json!(a.e1));
        m.insert("e2".into(), json!(a.e2));
        if let Some(dp) = &a.dprime {
            m.insert("dprime".into(), json!(dp.vertices()));
        }
        if let Some(xd) = a.x_dprime {
            m.insert("x_dprime".into(), json!(xd));
        }
        if let Some(q1) = &a.q1 {
            m.insert("q1".into(), path_json(q1));
        }
        if let Some(q2) = &a.q2 {
            m.insert("q2".into(), path_json(q2));
        }
        if let Some((p1, p2)) = &a.menger_paths {
            m.insert("menger".into(), json!([p1.vertices(), p2.vertices()]));
        }
        if let Some(z) = a.z {
            m.insert("z".into(), json!(z));
        }
        obj.insert("case_a".into(), serde_json::Value::Object(m));
    }
    if let Some(b) = &t.case_b {
        let mut m = serde_json::Map::new();
        m.insert("x".into(), json!(b.x));
        if let Some(yp) = b.y_prime {
            m.insert("y_prime".into(), json!(yp));
        }
        if let Some(w) = b.w {
            m.insert("w".into(), json!(w));
        }
        if let Some(p0) = &b.p0 {
            m.insert("p0".into(), path_json(p0));
        }
        m.insert("a".into(), json!(b.a));
        m.insert("x1".into(), json!(b.x1));
        m.insert("x2".into(), json!(b.x2));
        m.insert("x3".into(), json!(b.x3));
        m.insert("e1".into(), json!(b.e1));
        m.insert("e2".into(), json!(b.e2));
        if let Some(dp) = &b.dprime {
            m.insert("dprime".into(), json!(dp.vertices()));
        }
        if let Some(xd) = b.x_dprime {
            m.insert("x_dprime".into(), json!(xd));
        }
        if let Some(q1) = &b.q1 {
            m.insert("q1".into(), path_json(q1));
        }
        if let Some(q2) = &b.q2 {
            m.insert("q2".into(), path_json(q2));
        }
        if let Some((p1, p2)) = &b.menger_paths {
            m.insert("menger".into(), json!([p1.vertices(), p2.vertices()]));
        }
        if let Some(z) = b.z {
            m.insert("z".into(), json!(z));
        }
        obj.insert("case_b".into(), serde_json::Value::Object(m));
    }
    doc
}

/// Serializes a certificate, optionally with the solver trace attached.
pub fn to_doc(cert: &Certificate, with_trace: bool) -> CertificateDoc {
    let mut doc = CertificateDoc {
        ell: cert.ell,
        n: cert.n,
        budget: cert.budget,
        kind: String::new(),
        vertices: None,
        cycle1: None,
        cycle2: None,
        trace: with_trace.then(|| trace_json(cert)),
    };
    match &cert.kind {
        CertificateKind::Transversal(x) => {
            doc.kind = "transversal".into();
            doc.vertices = Some(x.to_sorted_vec());
        }
        CertificateKind::DisjointPair(a, b) => {
            doc.kind = "disjoint_pair".into();
            doc.cycle1 = Some(a.vertices().to_vec());
            doc.cycle2 = Some(b.vertices().to_vec());
        }
    }
    doc
}

pub fn to_json(cert: &Certificate, with_trace: bool) -> String {
    serde_json::to_string_pretty(&to_doc(cert, with_trace)).expect("serializable")
}

pub fn from_json(s: &str) -> Result<CertificateDoc, CertError> {
    serde_json::from_str(s).map_err(|e| CertError::Json(e.to_string()))
}

/// The verifier's verdict; `Invalid` carries a human-readable reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyResult {
    Valid,
    Invalid(String),
}

impl VerifyResult {
    pub fn is_valid(&self) -> bool {
        matches!(self, VerifyResult::Valid)
    }
}

fn check_cycle(g: &Graph, ell: usize, label: &str, verts: &[usize]) -> Result<VertexSet, String> {
    if verts.len() < 3 {
        return Err(format!("{label} has fewer than 3 vertices"));
    }
    if verts.len() < ell {
        return Err(format!("{label} is shorter than ell"));
    }
    let set = VertexSet::from_iter(verts.iter().copied());
    if set.len() != verts.len() {
        return Err(format!("{label} repeats a vertex"));
    }
    if verts.iter().any(|&v| v >= g.n()) {
        return Err(format!("{label} uses a vertex outside the graph"));
    }
    for i in 0..verts.len() {
        let u = verts[i];
        let v = verts[(i + 1) % verts.len()];
        if !g.has_edge(u, v) {
            return Err(format!("{label} uses the missing edge {u}-{v}"));
        }
    }
    Ok(set)
}

/// Checks a certificate document against the graph from scratch.
pub fn verify_certificate(g: &Graph, doc: &CertificateDoc) -> VerifyResult {
    let ell = doc.ell;
    if ell < 3 {
        return VerifyResult::Invalid("ell must be at least 3".into());
    }
    if doc.n != g.n() {
        return VerifyResult::Invalid(format!(
            "certificate is for a graph on {} vertices, got {}",
            doc.n,
            g.n()
        ));
    }
    let budget = (3 * ell + 7) / 2;
    if doc.budget != budget {
        return VerifyResult::Invalid(format!(
            "declared budget {} does not match floor((3*ell+7)/2) = {budget}",
            doc.budget
        ));
    }
    match doc.kind.as_str() {
        "transversal" => {
            let verts = match &doc.vertices {
                Some(v) => v,
                None => return VerifyResult::Invalid("transversal without vertices".into()),
            };
            if verts.iter().any(|&v| v >= g.n()) {
                return VerifyResult::Invalid("transversal vertex outside the graph".into());
            }
            let set = VertexSet::from_iter(verts.iter().copied());
            if set.len() > budget {
                return VerifyResult::Invalid(format!(
                    "transversal has {} vertices, budget is {budget}",
                    set.len()
                ));
            }
            if !is_transversal(g, ell, set) {
                return VerifyResult::Invalid(
                    "a long cycle survives the claimed transversal".into(),
                );
            }
            VerifyResult::Valid
        }
        "disjoint_pair" => {
            let (c1, c2) = match (&doc.cycle1, &doc.cycle2) {
                (Some(a), Some(b)) => (a, b),
                _ => return VerifyResult::Invalid("disjoint_pair without both cycles".into()),
            };
            let s1 = match check_cycle(g, ell, "cycle1", c1) {
                Ok(s) => s,
                Err(e) => return VerifyResult::Invalid(e),
            };
            let s2 = match check_cycle(g, ell, "cycle2", c2) {
                Ok(s) => s,
                Err(e) => return VerifyResult::Invalid(e),
            };
            if !s1.is_disjoint(s2) {
                return VerifyResult::Invalid("the two cycles share a vertex".into());
            }
            VerifyResult::Valid
        }
        other => VerifyResult::Invalid(format!("unknown certificate type {other:?}")),
    }
}

/// Convenience wrapper used by the CLI and the FFI layer.
pub fn solve_to_json(g: &Graph, ell: usize, with_trace: bool) -> String {
    let cert = crate::solver::solve(g, ell);
    to_json(&cert, with_trace)
}

#[allow(unused)]
pub fn cycle_doc(c: &OrientedCycle) -> Vec<usize> {
    c.vertices().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete, gen_cycle, gen_disjoint_union, gen_gnp};
    use crate::solver::solve;

    #[test]
    fn round_trip_transversal() {
        let g = gen_complete(5);
        let cert = solve(&g, 3);
        let s = to_json(&cert, true);
        let doc = from_json(&s).unwrap();
        assert_eq!(doc.kind, "transversal");
        assert!(doc.trace.is_some());
        assert_eq!(verify_certificate(&g, &doc), VerifyResult::Valid);
        // without trace
        let doc2 = from_json(&to_json(&cert, false)).unwrap();
        assert!(doc2.trace.is_none());
        assert_eq!(verify_certificate(&g, &doc2), VerifyResult::Valid);
    }

    #[test]
    fn round_trip_pair() {
        let c5 = gen_cycle(5).unwrap();
        let g = gen_disjoint_union(&c5, &c5).unwrap();
        let cert = solve(&g, 5);
        let doc = from_json(&to_json(&cert, false)).unwrap();
        assert_eq!(doc.kind, "disjoint_pair");
        assert_eq!(verify_certificate(&g, &doc), VerifyResult::Valid);
    }

    #[test]
    fn rejects_tampered_certificates() {
        let g = gen_complete(5);
        let cert = solve(&g, 3);
        let mut doc = to_doc(&cert, false);
        // drop a vertex from the transversal: a triangle survives in K5
        let mut v = doc.vertices.clone().unwrap();
        v.pop();
        doc.vertices = Some(v);
        assert!(!verify_certificate(&g, &doc).is_valid());

        let mut doc = to_doc(&cert, false);
        doc.budget += 1;
        assert!(!verify_certificate(&g, &doc).is_valid());

        let mut doc = to_doc(&cert, false);
        doc.kind = "nonsense".into();
        assert!(!verify_certificate(&g, &doc).is_valid());
    }

    #[test]
    fn rejects_bad_pairs() {
        let c5 = gen_cycle(5).unwrap();
        let g = gen_disjoint_union(&c5, &c5).unwrap();
        let cert = solve(&g, 5);
        let mut doc = to_doc(&cert, false);
        doc.cycle2 = doc.cycle1.clone(); // shares vertices
        assert!(!verify_certificate(&g, &doc).is_valid());

        let mut doc = to_doc(&cert, false);
        doc.cycle1 = Some(vec![0, 1, 2]); // shorter than ell
        assert!(!verify_certificate(&g, &doc).is_valid());

        let mut doc = to_doc(&cert, false);
        doc.cycle1 = Some(vec![0, 1, 2, 3, 9]); // 3-9 is not an edge
        assert!(!verify_certificate(&g, &doc).is_valid());
    }

    #[test]
    fn random_certificates_verify() {
        for seed in 0..30 {
            let g = gen_gnp(10, 0.35, seed).unwrap();
            for ell in [3, 5] {
                let doc = from_json(&solve_to_json(&g, ell, true)).unwrap();
                assert_eq!(verify_certificate(&g, &doc), VerifyResult::Valid);
            }
        }
    }
}
