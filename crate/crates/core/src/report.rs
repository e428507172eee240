//! Named residual reports shared by the Clifford and surface audits.

use serde::{Deserialize, Serialize};

/// One audited quantity. `max` is what gates `pass`; `rms` is informational.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub name: String,
    pub max: f64,
    pub rms: f64,
    pub n_samples: usize,
    pub tolerance: f64,
    pub pass: bool,
}

impl AuditEntry {
    /// Builds an entry from absolute residuals; `pass` iff `max <= tolerance`.
    /// Non-finite residuals always fail.
    pub fn from_residuals(name: impl Into<String>, residuals: &[f64], tolerance: f64) -> Self {
        let mut max = 0.0f64;
        let mut sq = 0.0;
        let mut finite = true;
        for r in residuals {
            let a = r.abs();
            if !a.is_finite() {
                finite = false;
                continue;
            }
            max = max.max(a);
            sq += a * a;
        }
        let n = residuals.len();
        let rms = if n == 0 { 0.0 } else { (sq / n as f64).sqrt() };
        Self {
            name: name.into(),
            max: if finite { max } else { f64::INFINITY },
            rms: if finite { rms } else { f64::INFINITY },
            n_samples: n,
            tolerance,
            pass: finite && max <= tolerance,
        }
    }

    /// Entry that passes iff `max >= threshold` (used for discriminative
    /// negative checks, e.g. "this generator is *not* a symmetry").
    pub fn at_least(name: impl Into<String>, residuals: &[f64], threshold: f64) -> Self {
        let mut e = Self::from_residuals(name, residuals, threshold);
        e.pass = e.max.is_finite() && e.max >= threshold;
        e
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub title: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            seed: None,
            entries: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn push(&mut self, entry: AuditEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: AuditReport) {
        self.entries.extend(other.entries);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn entry(&self, name: &str) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_and_rms() {
        let e = AuditEntry::from_residuals("x", &[3.0, -4.0], 5.0);
        assert_eq!(e.max, 4.0);
        assert!((e.rms - (12.5f64).sqrt()).abs() < 1e-15);
        assert!(e.pass);
        assert!(e.max >= e.rms);
    }

    #[test]
    fn nan_fails() {
        let e = AuditEntry::from_residuals("x", &[0.0, f64::NAN], 1.0);
        assert!(!e.pass);
    }

    #[test]
    fn json_keys() {
        let mut r = AuditReport::new("t");
        r.push(AuditEntry::from_residuals("a", &[1e-12], 1e-10));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let e = &v["entries"][0];
        for k in ["name", "max", "rms", "n_samples", "tolerance", "pass"] {
            assert!(e.get(k).is_some(), "missing {k}");
        }
        assert_eq!(e.as_object().unwrap().len(), 6);
    }
}
