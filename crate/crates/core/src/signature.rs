//! Signatures: finite sets of named generators per arity `k >= 2`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub arity: usize,
}

/// Generators are indexed by arity first, then declaration order. That
/// index is the "root generator index" used by the canonical term order.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    generators: Vec<Generator>,
    by_name: HashMap<String, usize>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for Signature {}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new<S: Into<String>>(decls: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut generators: Vec<Generator> = Vec::new();
        for (name, arity) in decls {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(Error::InvalidSignature(format!(
                    "`{name}` is not a valid generator name"
                )));
            }
            if arity < 2 {
                return Err(Error::InvalidSignature(format!(
                    "generator `{name}` has arity {arity}; constants and unary operations are not allowed"
                )));
            }
            if generators.iter().any(|g| g.name == name) {
                return Err(Error::InvalidSignature(format!(
                    "duplicate generator `{name}`"
                )));
            }
            generators.push(Generator { name, arity });
        }
        // stable: declaration order survives within an arity
        generators.sort_by_key(|g| g.arity);
        let by_name = generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.name.clone(), i))
            .collect();
        Ok(Signature {
            generators,
            by_name,
        })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, op: usize) -> &Generator {
        &self.generators[op]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `|Ω(k)|`.
    pub fn count_of_arity(&self, k: usize) -> usize {
        self.generators.iter().filter(|g| g.arity == k).count()
    }

    pub fn max_arity(&self) -> usize {
        self.generators.iter().map(|g| g.arity).max().unwrap_or(0)
    }

    /// The generating series `X(z)`: the free S-module on `Ω(k)` has
    /// dimension `k! |Ω(k)|`, so its EGF coefficient is `|Ω(k)|`.
    pub fn egf(&self, order: usize) -> TruncatedSeries {
        let mut coeffs = vec![Rational::zero(); order + 1];
        for g in &self.generators {
            if g.arity <= order {
                coeffs[g.arity] += Rational::from_integer(1.into());
            }
        }
        TruncatedSeries::new(coeffs)
    }
}

/// Free function form of [`Signature::egf`].
pub fn signature_egf(sig: &Signature, order: usize) -> TruncatedSeries {
    sig.egf(order)
}
