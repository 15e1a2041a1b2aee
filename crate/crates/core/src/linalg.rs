//! Exact sparse Gaussian elimination over the rationals.
//!
//! Vectors are sparse maps from an ordered key set to nonzero rationals.
//! Each stored row is normalized so that its greatest key (the pivot) has
//! coefficient one; reduction eliminates pivots from the greatest down, so a
//! reduced vector never contains a pivot key.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_traits::Zero;

use crate::rational::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

pub fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Rational, x: &SparseVec<K>) {
    for (k, c) in x {
        let delta = a * c;
        match y.entry(k.clone()) {
            Entry::Vacant(e) => {
                e.insert(delta);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += delta;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Echelon<K> {
    rows: HashMap<K, SparseVec<K>>,
}

impl<K: Ord + Hash + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: HashMap::new(),
        }
    }
}

impl<K: Ord + Hash + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    pub fn row(&self, pivot: &K) -> Option<&SparseVec<K>> {
        self.rows.get(pivot)
    }

    /// Remainder of `v` modulo the row space, supported on non-pivot keys.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        if self.rows.is_empty() {
            return v;
        }
        let mut bound: Option<K> = None;
        loop {
            let next = {
                let mut iter: Box<dyn Iterator<Item = (&K, &Rational)>> = match &bound {
                    None => Box::new(v.iter().rev()),
                    Some(b) => Box::new(v.range(..b.clone()).rev()),
                };
                iter.find(|(k, _)| self.rows.contains_key(*k))
                    .map(|(k, c)| (k.clone(), c.clone()))
            };
            let Some((pivot, c)) = next else { break };
            axpy(&mut v, &-c, &self.rows[&pivot]);
            bound = Some(pivot);
        }
        v
    }

    /// Reduces `v` and stores it if it is independent; returns the pivot of
    /// the new row.
    pub fn insert(&mut self, v: SparseVec<K>) -> Option<K> {
        let mut v = self.reduce(v);
        let (pivot, lead) = v.last_key_value().map(|(k, c)| (k.clone(), c.clone()))?;
        let inv = lead.recip();
        for c in v.values_mut() {
            *c *= &inv;
        }
        self.rows.insert(pivot.clone(), v);
        Some(pivot)
    }

    /// Rows in reduced echelon form (no row contains another row's pivot),
    /// sorted by pivot ascending.
    pub fn reduced_rows(&self) -> Vec<(K, SparseVec<K>)> {
        let mut pivots: Vec<&K> = self.rows.keys().collect();
        pivots.sort();
        let mut done: Echelon<K> = Echelon::new();
        let mut out = Vec::with_capacity(pivots.len());
        // ascending: every other pivot in a row is smaller, so already reduced
        for p in pivots {
            let mut row = self.rows[p].clone();
            let lead = row.remove(p).expect("pivot present");
            let mut rest = done.reduce(row);
            rest.insert(p.clone(), lead);
            done.rows.insert(p.clone(), rest.clone());
            out.push((p.clone(), rest));
        }
        out
    }
}
