//! JSON documents written next to human output.

use std::fs;
use std::path::Path;

use hpr_core::pipeline::{verify_certificate, CertificateKind, PipelineConfig, SpanningCertificate};
use hpr_core::{Hypergraph, Vertex};
use serde::{Deserialize, Serialize};

/// What `solve` writes and `verify` reads back.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateFile {
    pub kind: CertificateKind,
    /// Digest of the host hypergraph.
    pub host: String,
    pub verified: bool,
    pub violations: Vec<String>,
    /// Failure diagnostic when no certificate was produced.
    pub error: Option<String>,
    pub config: PipelineConfig,
    pub certificate: Option<SpanningCertificate>,
}

impl CertificateFile {
    pub fn success(h: &Hypergraph, config: &PipelineConfig, cert: SpanningCertificate) -> Self {
        let check = verify_certificate(h, &cert, None);
        CertificateFile {
            kind: cert.kind,
            host: h.digest(),
            verified: check.is_ok(),
            violations: check.violations,
            error: None,
            config: config.clone(),
            certificate: Some(cert),
        }
    }

    pub fn failure(h: &Hypergraph, kind: CertificateKind, config: &PipelineConfig, error: String) -> Self {
        CertificateFile {
            kind,
            host: h.digest(),
            verified: false,
            violations: Vec::new(),
            error: Some(error),
            config: config.clone(),
            certificate: None,
        }
    }

    /// Re-checks against `h` from scratch; `f` overrides the stored motif.
    pub fn recheck(&self, h: &Hypergraph, f: Option<&Hypergraph>) -> Vec<String> {
        let mut out = Vec::new();
        if self.host != h.digest() {
            out.push("certificate was produced for a different hypergraph".to_string());
        }
        match &self.certificate {
            None => out.push("file holds no certificate".into()),
            Some(cert) => {
                if cert.kind != self.kind {
                    out.push("kind does not match the certificate".into());
                }
                out.extend(verify_certificate(h, cert, f).violations);
            }
        }
        out
    }
}

/// Sidecar for an absorber written as `.hg`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AbsorberSidecar {
    pub kind: String,
    pub k: usize,
    pub vertices: usize,
    pub edges: usize,
    pub roots: Vec<Vertex>,
    pub ends: Option<(Vertex, Vertex)>,
    pub degeneracy: usize,
    pub degeneracy_bound: usize,
    pub verified: bool,
    pub violations: Vec<String>,
    /// Factor absorbers: vertex maps of the two F-factors.
    pub complete_factor: Vec<Vec<Vertex>>,
    pub internal_factor: Vec<Vec<Vertex>>,
    /// Path absorbers: edge index lists of the two loose paths.
    pub complete_path: Vec<usize>,
    pub internal_path: Vec<usize>,
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(std::io::Error::other)?;
    fs::write(path, text + "\n")
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> std::io::Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(std::io::Error::other)
}
