use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// One tensor factor: a named, ordered set of basis symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factor {
    name: String,
    labels: Vec<String>,
}

impl Factor {
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        labels: impl IntoIterator<Item = S>,
    ) -> Self {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        assert!(!labels.is_empty(), "factor needs at least one basis symbol");
        Self {
            name: name.into(),
            labels,
        }
    }

    /// Factor labelled `prefix1 .. prefixN`.
    pub fn indexed(name: impl Into<String>, prefix: &str, len: usize) -> Self {
        Self::new(name, (1..=len).map(|i| format!("{prefix}{i}")))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

/// Ordered tensor-product basis. Index arithmetic is row-major: the first
/// factor is the most significant digit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Basis {
    factors: Vec<Factor>,
}

impl Basis {
    pub fn new(factors: Vec<Factor>) -> Self {
        Self { factors }
    }

    /// The zero-factor basis of a scalar (dimension 1).
    pub fn scalar() -> Self {
        Self { factors: vec![] }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(Factor::dim).collect()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(Factor::dim).product()
    }

    pub fn factor_index(&self, name: &str) -> Option<usize> {
        self.factors.iter().position(|f| f.name == name)
    }

    /// Mixed-radix digits of a flat index, one per factor.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = index % f.dim();
            index /= f.dim();
        }
        out
    }

    pub fn flat_index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&d, f)| acc * f.dim() + d)
    }

    /// Composite label of a basis vector, the factor symbols concatenated
    /// (`↑` and `off` give `↑off`).
    pub fn label(&self, index: usize) -> String {
        self.digits(index)
            .iter()
            .zip(&self.factors)
            .map(|(&d, f)| f.labels[d].as_str())
            .collect()
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim()).map(|i| self.label(i)).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        (0..self.dim()).find(|&i| self.label(i) == label)
    }

    /// The basis with factor `index` removed.
    pub fn without(&self, index: usize) -> Result<Self> {
        if index >= self.factors.len() {
            return Err(Error::Index(format!(
                "factor {index} out of range for a {}-factor basis",
                self.factors.len()
            )));
        }
        let mut factors = self.factors.clone();
        factors.remove(index);
        Ok(Self { factors })
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.factors.iter().map(|x| x.name.as_str()).collect();
        write!(f, "{}", names.join("⊗"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_roundtrip_and_labels() {
        let b = Basis::new(vec![
            Factor::new("photon", ["↑", "↓"]),
            Factor::new("rng", ["off", "on"]),
        ]);
        assert_eq!(b.labels(), vec!["↑off", "↑on", "↓off", "↓on"]);
        for i in 0..b.dim() {
            assert_eq!(b.flat_index(&b.digits(i)), i);
        }
        assert_eq!(b.index_of("↓off"), Some(2));
        assert_eq!(b.without(1).unwrap().labels(), vec!["↑", "↓"]);
        assert!(matches!(b.without(2), Err(Error::Index(_))));
    }
}
