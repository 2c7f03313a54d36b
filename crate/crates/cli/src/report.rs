//! JSON report schemas. Basis indices are 1-based; coefficients are field
//! element strings in the syntax accepted on the command line.

use serde::{Deserialize, Serialize};
use twheis::cohomology::{pairs, Cochain};
use twheis::{Error, Fe, Field, Result};

/// A cochain as `(index tuple, coefficient)` terms over the dual basis.
pub type Terms = Vec<(Vec<usize>, String)>;

pub fn cochain_terms(f: &Field, c: &Cochain) -> Terms {
    let indices: Vec<Vec<usize>> = match c.degree {
        1 => (1..=c.n).map(|k| vec![k]).collect(),
        _ => pairs(c.n).into_iter().map(|(i, j)| vec![i + 1, j + 1]).collect(),
    };
    indices
        .into_iter()
        .zip(&c.coords)
        .filter(|(_, x)| !x.is_zero())
        .map(|(idx, &x)| (idx, f.format(x)))
        .collect()
}

/// Rebuilds a degree-1 or degree-2 cochain on an n-dimensional algebra.
pub fn terms_cochain(f: &Field, degree: usize, n: usize, terms: &Terms) -> Result<Cochain> {
    let mut c = Cochain::zero(degree, n);
    for (idx, coeff) in terms {
        let pos = match (degree, idx.as_slice()) {
            (1, &[k]) if (1..=n).contains(&k) => k - 1,
            (2, &[i, j]) if 1 <= i && i < j && j <= n => {
                twheis::cohomology::pair_index(n, i - 1, j - 1)
            }
            _ => {
                return Err(Error::IndexOutOfRange(format!(
                    "term {idx:?} in a degree-{degree} cochain on dimension {n}"
                )))
            }
        };
        c.coords[pos] = f.add(c.coords[pos], f.parse_elem(coeff)?);
    }
    Ok(c)
}

pub fn format_list(f: &Field, xs: &[Fe]) -> Vec<String> {
    xs.iter().map(|&x| f.format(x)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub field: String,
    pub m: usize,
    pub lambda: Vec<String>,
    pub q: usize,
    pub dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    /// Empty index tuples denote the constant cochain in degree 0.
    pub representatives: Vec<Terms>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedClass {
    /// The φ-part (a 1-cochain in degree 1).
    pub phi: Terms,
    /// Basis values ω(e_i) as `(i, coefficient)`; empty in degree 1.
    pub omega: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedReport {
    pub field: String,
    pub m: usize,
    pub lambda: Vec<String>,
    pub mu: Vec<String>,
    pub q: usize,
    pub dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hochschild_dim: Option<usize>,
    pub classes: Vec<RestrictedClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictableReport {
    pub field: String,
    pub m: usize,
    pub lambda: Vec<String>,
    pub restrictable: bool,
    /// `|λ| = λ_i^{p-1}` when restrictable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<String>,
    /// 1-based basis index where the Jacobson system has no solution.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub number: u8,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub field: String,
    pub m: usize,
    pub conditions: Vec<ConditionReport>,
    pub tuples_checked: usize,
    pub exhaustive: bool,
    pub morphism: bool,
    pub isomorphic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub field: String,
    pub m: usize,
    pub lambda: Vec<String>,
    pub mu: Vec<String>,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}
