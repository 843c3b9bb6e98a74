//! Relations and functions between finite carriers.
//!
//! Elements of a carrier of size `n` are the indices `0..n`. Relations and
//! functions only record carrier sizes; labels are kept on [`Carrier`] for
//! presentation and never take part in the arithmetic.

mod func;
mod partition;
mod rel;

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub use func::{FinFn, Pullback, Tabulation};
pub use partition::{partitions, Partition, Partitions, UnionFind};
pub use rel::{alternating_composite, compose, Rel, RelFlags};

/// A finite carrier with optional display labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Carrier {
    size: usize,
    labels: Option<Vec<String>>,
}

impl Carrier {
    pub fn new(size: usize) -> Self {
        Carrier { size, labels: None }
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidLabels(alloc::format!(
                    "duplicate label `{l}`"
                )));
            }
        }
        Ok(Carrier {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of element `i`: its label, or the index itself.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(ls) => ls[i].clone(),
            None => alloc::format!("{i}"),
        }
    }

    /// Index of the element with the given label, or a plain index.
    pub fn lookup(&self, name: &str) -> Option<usize> {
        if let Some(ls) = &self.labels {
            if let Some(i) = ls.iter().position(|l| l == name) {
                return Some(i);
            }
        }
        name.parse::<usize>().ok().filter(|&i| i < self.size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn labels_must_be_distinct() {
        assert!(Carrier::with_labels(vec!["a".to_string(), "a".to_string()]).is_err());
        let c = Carrier::with_labels(vec!["a".to_string(), "b".to_string()]).unwrap();
        assert_eq!(c.size(), 2);
        assert_eq!(c.lookup("b"), Some(1));
        assert_eq!(c.lookup("1"), Some(1));
        assert_eq!(c.lookup("2"), None);
        assert_eq!(c.label(0), "a");
    }
}
