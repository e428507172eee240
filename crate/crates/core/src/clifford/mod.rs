//! Symmetric Clifford systems and the degree-four Cartan–Münzner polynomial
//! they define.
//!
//! A symmetric Clifford system on `R^{2l}` is a tuple `(P_0, ..., P_m)` of
//! symmetric matrices with `P_a P_b + P_b P_a = 2 delta_ab Id`. The
//! polynomial
//!
//! ```text
//! F(x) = |x|^4 - 2 sum_a <P_a x, x>^2
//! ```
//!
//! satisfies the Cartan–Münzner equations with `g = 4`, `m1 = m`,
//! `m2 = l - m - 1`. Relations are checked in exact integer arithmetic;
//! polynomial identities in floating point at seeded random samples.

mod int_matrix;
mod polynomial;
mod spin;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{AuditEntry, AuditReport};

pub use int_matrix::IntMatrix;
pub use polynomial::{cm_eval, cm_gradient, cm_laplacian, verify_cartan_munzner};
pub use spin::{
    embedding_point, s1_v2_action, spin_generators, spin_orbit_map, verify_embedding_invariance,
    verify_spin_invariance, verify_spin_invariance_with, SpinGenerator,
};

/// Dimension of an irreducible module of the Clifford algebra with `m - 1`
/// anticommuting skew generators: `1, 2, 4, 4, 8, 8, 8, 8` for `m = 1..8`,
/// then `delta(m + 8) = 16 delta(m)`.
pub fn delta(m: i64) -> Result<usize> {
    if m < 1 {
        return Err(Error::Domain(format!("delta(m) needs m >= 1, got {m}")));
    }
    const BASE: [usize; 8] = [1, 2, 4, 4, 8, 8, 8, 8];
    let m = m as usize;
    let periods = (m - 1) / 8;
    let scale = 16usize
        .checked_pow(periods as u32)
        .ok_or_else(|| Error::Domain(format!("delta({m}) overflows")))?;
    Ok(BASE[(m - 1) % 8] * scale)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliffordSystem {
    pub m: usize,
    pub k: usize,
    pub l: usize,
    /// `P_0, ..., P_m`, each `2l x 2l`.
    pub matrices: Vec<IntMatrix>,
}

impl CliffordSystem {
    /// Wraps arbitrary square matrices, e.g. to audit a hand-made or
    /// corrupted system. `m = len - 1`, `k` is recorded as 0.
    pub fn from_matrices(matrices: Vec<IntMatrix>) -> Result<Self> {
        let Some(first) = matrices.first() else {
            return Err(Error::Domain("a Clifford system needs at least one matrix".into()));
        };
        let n = first.dim();
        if n % 2 != 0 {
            return Err(Error::Domain(format!("matrix size {n} is odd")));
        }
        for p in &matrices {
            if p.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: p.dim(),
                });
            }
        }
        Ok(Self {
            m: matrices.len() - 1,
            k: 0,
            l: n / 2,
            matrices,
        })
    }

    pub fn dim(&self) -> usize {
        2 * self.l
    }

    /// Multiplicities `(m1, m2) = (m, l - m - 1)` of the isoparametric family.
    pub fn multiplicities(&self) -> Result<(usize, usize)> {
        if self.l < self.m + 2 {
            return Err(Error::InvalidMultiplicity(format!(
                "l - m - 1 = {} must be >= 1 (m = {}, l = {})",
                self.l as i64 - self.m as i64 - 1,
                self.m,
                self.l
            )));
        }
        Ok((self.m, self.l - self.m - 1))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("system serialises")
    }
}

// 2x2 building blocks: I, J (rotation), K1 = diag(1,-1), K2 = swap.
const ALPHABET: [[[i64; 2]; 2]; 4] = [[[1, 0], [0, 1]], [[0, -1], [1, 0]], [[1, 0], [0, -1]], [[0, 1], [1, 0]]];

fn letter_matrix(c: usize) -> IntMatrix {
    let a = ALPHABET[c];
    IntMatrix::from_rows(&[a[0].to_vec(), a[1].to_vec()])
}

fn string_matrix(s: &[usize]) -> IntMatrix {
    s.iter()
        .fold(IntMatrix::identity(1), |acc, &c| acc.kron(&letter_matrix(c)))
}

/// Tensor strings over {I, J, K1, K2} anticommute iff they differ in an odd
/// number of positions where both letters are non-identity.
fn strings_anticommute(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).filter(|(x, y)| **x != 0 && **y != 0 && x != y).count() % 2 == 1
}

/// `count` mutually anticommuting skew tensor strings of length `q`, found
/// by a deterministic depth-first search in lexicographic order.
fn anticommuting_skew_strings(q: usize, count: usize) -> Option<Vec<Vec<usize>>> {
    let total = 4usize.pow(q as u32);
    let skew: Vec<Vec<usize>> = (0..total)
        .map(|mut code| {
            let mut s = vec![0; q];
            for slot in s.iter_mut().rev() {
                *slot = code % 4;
                code /= 4;
            }
            s
        })
        .filter(|s| s.iter().filter(|&&c| c == 1).count() % 2 == 1)
        .collect();

    fn dfs(skew: &[Vec<usize>], from: usize, chosen: &mut Vec<usize>, count: usize) -> bool {
        if chosen.len() == count {
            return true;
        }
        for i in from..skew.len() {
            if chosen.iter().all(|&j| strings_anticommute(&skew[i], &skew[j])) {
                chosen.push(i);
                if dfs(skew, i + 1, chosen, count) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    let mut chosen = Vec::new();
    dfs(&skew, 0, &mut chosen, count).then(|| chosen.into_iter().map(|i| skew[i].clone()).collect())
}

/// `m - 1` anticommuting skew matrices with square `-Id` on `R^{delta(m)}`.
pub fn clifford_generators(m: usize) -> Result<Vec<IntMatrix>> {
    let d = delta(m as i64)?;
    let q = d.trailing_zeros() as usize;
    let strings = anticommuting_skew_strings(q, m - 1)
        .ok_or_else(|| Error::Domain(format!("no tensor-string representation found for m = {m}")))?;
    Ok(strings.iter().map(|s| string_matrix(s)).collect())
}

/// Builds the standard system on `R^{2l}`, `l = k delta(m)`:
/// `P_0 = diag(Id, -Id)`, `P_1 = [[0, Id], [Id, 0]]`,
/// `P_{1+i} = [[0, E_i], [-E_i, 0]]`.
pub fn build_clifford_system(m: i64, k: i64) -> Result<CliffordSystem> {
    if m < 1 || k < 1 {
        return Err(Error::Domain(format!("need m >= 1 and k >= 1, got m = {m}, k = {k}")));
    }
    let (m, k) = (m as usize, k as usize);
    let l = delta(m as i64)? * k;
    let id = IntMatrix::identity(l);
    let zero = IntMatrix::zeros(l);
    let mut matrices = vec![
        IntMatrix::blocks(&id, &zero, &zero, &-&id),
        IntMatrix::blocks(&zero, &id, &id, &zero),
    ];
    for e in clifford_generators(m)? {
        let e = e.kron_identity(k);
        matrices.push(IntMatrix::blocks(&zero, &e, &-&e, &zero));
    }
    Ok(CliffordSystem { m, k, l, matrices })
}

/// Exact checks of symmetry, involution, pairwise anticommutation and
/// tracelessness. Each violating matrix or pair gets its own failing entry.
pub fn verify_clifford(sys: &CliffordSystem) -> AuditReport {
    let mut report = AuditReport::new(format!("clifford m={} l={}", sys.m, sys.l));
    let id = IntMatrix::identity(sys.dim());
    let ps = &sys.matrices;
    let mut violations = Vec::new();

    let mut check = |kind: &str, label: String, defect: i64, all: &mut Vec<f64>| {
        all.push(defect as f64);
        if defect != 0 {
            violations.push(AuditEntry::from_residuals(
                format!("{kind}{label}"),
                &[defect as f64],
                0.0,
            ));
        }
    };

    let mut sym = Vec::new();
    let mut inv = Vec::new();
    let mut tr = Vec::new();
    for (a, p) in ps.iter().enumerate() {
        check(
            "symmetric",
            format!("({a})"),
            (&p.transpose() + &-p).max_abs(),
            &mut sym,
        );
        check("involution", format!("({a})"), (&(p * p) + &-&id).max_abs(), &mut inv);
        check("traceless", format!("({a})"), p.trace().abs(), &mut tr);
    }
    let mut anti = Vec::new();
    for a in 0..ps.len() {
        for b in (a + 1)..ps.len() {
            let ac = &(&ps[a] * &ps[b]) + &(&ps[b] * &ps[a]);
            check("anticommutation", format!("({a},{b})"), ac.max_abs(), &mut anti);
        }
    }
    report.push(AuditEntry::from_residuals("symmetric", &sym, 0.0));
    report.push(AuditEntry::from_residuals("involution", &inv, 0.0));
    report.push(AuditEntry::from_residuals("anticommutation", &anti, 0.0));
    report.push(AuditEntry::from_residuals("traceless", &tr, 0.0));
    for v in violations {
        report.push(v);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_table() {
        let got: Vec<usize> = (1..=9).map(|m| delta(m).unwrap()).collect();
        assert_eq!(got, vec![1, 2, 4, 4, 8, 8, 8, 8, 16]);
        assert_eq!(delta(17).unwrap(), 256);
        assert!(delta(0).is_err());
    }

    #[test]
    fn generators_exist_through_two_periods() {
        for m in 1..=10 {
            let es = clifford_generators(m).unwrap();
            assert_eq!(es.len(), m - 1);
            let d = delta(m as i64).unwrap();
            let id = IntMatrix::identity(d);
            for (i, e) in es.iter().enumerate() {
                assert_eq!(e.transpose(), -e);
                assert_eq!(e * e, -&id);
                for f in &es[i + 1..] {
                    assert_eq!((&(e * f) + &(f * e)).max_abs(), 0);
                }
            }
        }
    }

    #[test]
    fn m2_k2_example() {
        let s = build_clifford_system(2, 2).unwrap();
        assert_eq!(s.l, 4);
        // E_1 = [[0, -Id], [Id, 0]] on R^4
        let e1 = clifford_generators(2).unwrap()[0].kron_identity(2);
        let id = IntMatrix::identity(2);
        let z = IntMatrix::zeros(2);
        assert_eq!(e1, IntMatrix::blocks(&z, &-&id, &id, &z));
        assert!(verify_clifford(&s).passed());
    }

    #[test]
    fn all_small_systems_are_exact() {
        for m in 1..=5 {
            for k in 1..=4 {
                let s = build_clifford_system(m, k).unwrap();
                if s.dim() > 64 {
                    continue;
                }
                assert_eq!(s.matrices.len(), m as usize + 1);
                let r = verify_clifford(&s);
                assert!(r.passed(), "{m} {k}: {}", r.to_json());
            }
        }
    }

    #[test]
    fn corrupted_system_reports_pair() {
        let mut s = build_clifford_system(1, 3).unwrap();
        s.matrices[1] = -&s.matrices[0];
        let r = verify_clifford(&s);
        assert!(!r.passed());
        assert!(r.entry("anticommutation(0,1)").is_some_and(|e| !e.pass));
    }

    #[test]
    fn single_matrix_is_vacuous() {
        let s = build_clifford_system(1, 2).unwrap();
        let single = CliffordSystem::from_matrices(vec![s.matrices[0].clone()]).unwrap();
        assert_eq!(single.m, 0);
        let r = verify_clifford(&single);
        assert!(r.passed());
        assert_eq!(r.entry("anticommutation").unwrap().n_samples, 0);
    }

    #[test]
    fn multiplicities() {
        assert_eq!(build_clifford_system(1, 3).unwrap().multiplicities().unwrap(), (1, 1));
        assert_eq!(build_clifford_system(4, 2).unwrap().multiplicities().unwrap(), (4, 3));
        assert!(matches!(
            build_clifford_system(1, 2).unwrap().multiplicities(),
            Err(Error::InvalidMultiplicity(_))
        ));
    }

    #[test]
    fn json_shape() {
        let s = build_clifford_system(1, 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s.to_json()).unwrap();
        assert_eq!(v["l"], 1);
        assert_eq!(v["matrices"][0], serde_json::json!([[1, 0], [0, -1]]));
        assert_eq!(v["matrices"][1], serde_json::json!([[0, 1], [1, 0]]));
    }
}
