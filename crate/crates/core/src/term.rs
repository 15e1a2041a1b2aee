//! Multilinear tree terms and their rational linear combinations.
//!
//! A [`TreeTerm`] is a rooted tree whose internal nodes carry generator
//! indices (see [`Signature`]) and whose leaves carry positive variable
//! labels. Terms are ordered canonically: leaves before nodes, leaves by
//! label, nodes by number of internal nodes, then root generator index,
//! then children lexicographically. The order is compatible with
//! substitution into a child position, which is what makes echelon normal
//! forms computed level by level agree with normal forms computed on the
//! whole component.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::rational::{format_rational, Rational};
use crate::signature::Signature;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TreeTerm(Repr);

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Leaf(u32),
    Node {
        op: u32,
        degree: u32,
        arity: u32,
        children: Box<[TreeTerm]>,
    },
}

impl TreeTerm {
    pub fn leaf(label: u32) -> Self {
        TreeTerm(Repr::Leaf(label))
    }

    /// The identity operation: a single leaf labelled 1.
    pub fn identity() -> Self {
        Self::leaf(1)
    }

    /// Node labelled by generator `op`. Arity agreement with a signature is
    /// checked by the parser, not here.
    pub fn node(op: usize, children: Vec<TreeTerm>) -> Self {
        let degree = 1 + children.iter().map(TreeTerm::degree).sum::<usize>();
        let arity = children.iter().map(TreeTerm::arity).sum::<usize>();
        TreeTerm(Repr::Node {
            op: op as u32,
            degree: degree as u32,
            arity: arity as u32,
            children: children.into_boxed_slice(),
        })
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.0, Repr::Leaf(_))
    }

    pub fn leaf_label(&self) -> Option<u32> {
        match self.0 {
            Repr::Leaf(l) => Some(l),
            Repr::Node { .. } => None,
        }
    }

    pub fn op(&self) -> Option<usize> {
        match self.0 {
            Repr::Leaf(_) => None,
            Repr::Node { op, .. } => Some(op as usize),
        }
    }

    pub fn children(&self) -> &[TreeTerm] {
        match &self.0 {
            Repr::Leaf(_) => &[],
            Repr::Node { children, .. } => children,
        }
    }

    /// Number of internal nodes.
    pub fn degree(&self) -> usize {
        match self.0 {
            Repr::Leaf(_) => 0,
            Repr::Node { degree, .. } => degree as usize,
        }
    }

    /// Number of leaves.
    pub fn arity(&self) -> usize {
        match self.0 {
            Repr::Leaf(_) => 1,
            Repr::Node { arity, .. } => arity as usize,
        }
    }

    /// Leaf labels, left to right.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.arity());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match &self.0 {
            Repr::Leaf(l) => out.push(*l),
            Repr::Node { children, .. } => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Leaf labels are exactly `1..=arity`.
    pub fn is_multilinear(&self) -> bool {
        let mut leaves = self.leaves();
        leaves.sort_unstable();
        leaves.iter().enumerate().all(|(i, &l)| l as usize == i + 1)
    }

    pub fn relabel(&self, f: &impl Fn(u32) -> u32) -> TreeTerm {
        match &self.0 {
            Repr::Leaf(l) => TreeTerm::leaf(f(*l)),
            Repr::Node {
                op,
                degree,
                arity,
                children,
            } => TreeTerm(Repr::Node {
                op: *op,
                degree: *degree,
                arity: *arity,
                children: children.iter().map(|c| c.relabel(f)).collect(),
            }),
        }
    }

    /// Applies a permutation given as a table: label `l` becomes `perm[l - 1]`.
    pub fn permute(&self, perm: &[u32]) -> TreeTerm {
        self.relabel(&|l| perm[l as usize - 1])
    }

    /// Exchanges labels `a` and `b`.
    pub fn swap_labels(&self, a: u32, b: u32) -> TreeTerm {
        self.relabel(&|l| {
            if l == a {
                b
            } else if l == b {
                a
            } else {
                l
            }
        })
    }

    /// Renumbers the labels order-preservingly onto `1..=k`; returns the
    /// standardized term and the sorted original labels (so label `j` of the
    /// result stands for `labels[j - 1]`).
    pub fn standardize(&self) -> (TreeTerm, Vec<u32>) {
        let mut labels = self.leaves();
        labels.sort_unstable();
        if labels.iter().enumerate().all(|(i, &l)| l as usize == i + 1) {
            return (self.clone(), labels);
        }
        let std = self.relabel(&|l| labels.binary_search(&l).unwrap() as u32 + 1);
        (std, labels)
    }

    /// Representative of the relabelling orbit: leaves renumbered
    /// `1..=arity` from left to right.
    pub fn shape(&self) -> TreeTerm {
        let mut next = 0;
        self.shape_rec(&mut next)
    }

    fn shape_rec(&self, next: &mut u32) -> TreeTerm {
        match &self.0 {
            Repr::Leaf(_) => {
                *next += 1;
                TreeTerm::leaf(*next)
            }
            Repr::Node {
                op,
                degree,
                arity,
                children,
            } => TreeTerm(Repr::Node {
                op: *op,
                degree: *degree,
                arity: *arity,
                children: children.iter().map(|c| c.shape_rec(next)).collect(),
            }),
        }
    }

    /// Operadic `self ∘_i inner`: leaf `i` is replaced by `inner` with its
    /// labels shifted by `i - 1`; labels above `i` move up by `arity(inner) - 1`.
    /// The caller guarantees `1 <= i <= arity(self)`.
    pub fn graft(&self, i: u32, inner: &TreeTerm) -> TreeTerm {
        let shift = inner.arity() as u32 - 1;
        self.graft_rec(i, inner, shift)
    }

    fn graft_rec(&self, i: u32, inner: &TreeTerm, shift: u32) -> TreeTerm {
        match &self.0 {
            Repr::Leaf(l) if *l == i => inner.relabel(&|x| x + i - 1),
            Repr::Leaf(l) if *l > i => TreeTerm::leaf(l + shift),
            Repr::Leaf(l) => TreeTerm::leaf(*l),
            Repr::Node { op, children, .. } => TreeTerm::node(
                *op as usize,
                children
                    .iter()
                    .map(|c| c.graft_rec(i, inner, shift))
                    .collect(),
            ),
        }
    }

    /// Replaces every leaf `j` by `inputs[j - 1]` (labels are taken as given).
    pub fn substitute(&self, inputs: &[TreeTerm]) -> TreeTerm {
        match &self.0 {
            Repr::Leaf(l) => inputs[*l as usize - 1].clone(),
            Repr::Node { op, children, .. } => TreeTerm::node(
                *op as usize,
                children.iter().map(|c| c.substitute(inputs)).collect(),
            ),
        }
    }

    pub fn render(&self, sig: &Signature) -> String {
        let mut out = String::new();
        self.render_into(sig, &mut out);
        out
    }

    fn render_into(&self, sig: &Signature, out: &mut String) {
        match &self.0 {
            Repr::Leaf(l) => {
                let _ = write!(out, "{l}");
            }
            Repr::Node { op, children, .. } => {
                out.push_str(&sig.generator(*op as usize).name);
                out.push('(');
                for (k, c) in children.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    c.render_into(sig, out);
                }
                out.push(')');
            }
        }
    }
}

impl Ord for TreeTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Leaf(a), Repr::Leaf(b)) => a.cmp(b),
            (Repr::Leaf(_), Repr::Node { .. }) => Ordering::Less,
            (Repr::Node { .. }, Repr::Leaf(_)) => Ordering::Greater,
            (
                Repr::Node {
                    op: oa,
                    degree: da,
                    children: ca,
                    ..
                },
                Repr::Node {
                    op: ob,
                    degree: db,
                    children: cb,
                    ..
                },
            ) => da.cmp(db).then(oa.cmp(ob)).then_with(|| ca.cmp(cb)),
        }
    }
}

impl PartialOrd for TreeTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Render a standalone term.
pub fn render_term(t: &TreeTerm, sig: &Signature) -> String {
    t.render(sig)
}

/// A finite rational combination of terms of one arity. Zero coefficients
/// are never stored, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinComb {
    arity: usize,
    terms: BTreeMap<TreeTerm, Rational>,
}

impl LinComb {
    pub fn zero(arity: usize) -> Self {
        LinComb {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_term(t: TreeTerm) -> Self {
        let arity = t.arity();
        let mut terms = BTreeMap::new();
        terms.insert(t, Rational::one());
        LinComb { arity, terms }
    }

    /// Collects `(term, coefficient)` pairs; every term must have `arity`.
    pub fn from_terms(arity: usize, pairs: impl IntoIterator<Item = (TreeTerm, Rational)>) -> Self {
        let mut out = LinComb::zero(arity);
        for (t, c) in pairs {
            out.add_term(t, c);
        }
        out
    }

    /// Wraps an already-collected map (no zero coefficients).
    pub(crate) fn from_map(arity: usize, terms: BTreeMap<TreeTerm, Rational>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        LinComb { arity, terms }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&TreeTerm, &Rational)> {
        self.terms.iter()
    }

    pub fn map(&self) -> &BTreeMap<TreeTerm, Rational> {
        &self.terms
    }

    pub fn into_map(self) -> BTreeMap<TreeTerm, Rational> {
        self.terms
    }

    pub fn coeff(&self, t: &TreeTerm) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    /// Greatest term in the canonical order, with its coefficient.
    pub fn leading(&self) -> Option<(&TreeTerm, &Rational)> {
        self.terms.last_key_value()
    }

    /// Single term with coefficient one.
    pub fn as_monomial(&self) -> Option<&TreeTerm> {
        match self.terms.iter().next() {
            Some((t, c)) if self.terms.len() == 1 && c.is_one() => Some(t),
            _ => None,
        }
    }

    pub fn add_term(&mut self, t: TreeTerm, c: Rational) {
        debug_assert_eq!(t.arity(), self.arity);
        add_into(&mut self.terms, t, c);
    }

    pub fn add_scaled(&mut self, other: &LinComb, c: &Rational) {
        for (t, a) in &other.terms {
            add_into(&mut self.terms, t.clone(), a * c);
        }
    }

    pub fn add(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn scale(&self, c: &Rational) -> LinComb {
        if c.is_zero() {
            return LinComb::zero(self.arity);
        }
        LinComb {
            arity: self.arity,
            terms: self.terms.iter().map(|(t, a)| (t.clone(), a * c)).collect(),
        }
    }

    pub fn relabel(&self, f: &impl Fn(u32) -> u32) -> LinComb {
        LinComb::from_terms(
            self.arity,
            self.terms.iter().map(|(t, c)| (t.relabel(f), c.clone())),
        )
    }

    pub fn permute(&self, perm: &[u32]) -> LinComb {
        self.relabel(&|l| perm[l as usize - 1])
    }

    pub fn swap_labels(&self, a: u32, b: u32) -> LinComb {
        LinComb::from_terms(
            self.arity,
            self.terms
                .iter()
                .map(|(t, c)| (t.swap_labels(a, b), c.clone())),
        )
    }

    /// Canonical text: terms from greatest to least, `c*term` unless `c = ±1`.
    pub fn render(&self, sig: &Signature) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (t, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if !magnitude.is_one() {
                out.push_str(&format_rational(&magnitude));
                out.push('*');
            }
            t.render_into(sig, &mut out);
        }
        out
    }
}

pub(crate) fn add_into(map: &mut BTreeMap<TreeTerm, Rational>, t: TreeTerm, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(t) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}
