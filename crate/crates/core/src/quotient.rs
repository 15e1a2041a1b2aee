//! Components of finitely presented operads `Γ(X)/(R)`.
//!
//! [`QuotientEngine`] works arity by arity. Writing `Q(k)` for the quotient
//! component and `NF` for normal forms, the arity-`n` component is
//!
//! ```text
//! F(n) = ⊕_g ⊕_{ordered set partitions} g(Q(n_1), ..., Q(n_k))
//! Q(n) = F(n) / S_n-span{ r(q_1, ..., q_m) : r a relation, q_j normal }
//! ```
//!
//! because every element of the ideal either has a relation at the root or
//! lies in `g(.., I(n_j), ..)`. Rows of the root part are kept in echelon
//! form with the greatest term as pivot; since the canonical term order is
//! compatible with substitution into children, the resulting normal forms
//! coincide with reduction modulo the reduced echelon basis of the whole
//! ideal component. [`ideal_component`] computes that basis directly inside
//! `Γ(X)(n)` and serves as the independent route.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::combinat::{compositions, ordered_set_partitions, product_indices};
use crate::error::{Error, Result};
use crate::free::{compose_all, enumerate_basis, free_component_dim, suboperad_closure, Budget};
use crate::linalg::{axpy, Echelon, SparseVec};
use crate::presentation::Presentation;
use crate::rational::Rational;
use crate::series::{factorial, TruncatedSeries};
use crate::term::{add_into, LinComb, TreeTerm};

type NormalForm = Arc<[(TreeTerm, Rational)]>;

struct Level {
    dim_free: usize,
    root: Echelon<TreeTerm>,
    normal: Option<Vec<TreeTerm>>,
    cache: HashMap<TreeTerm, NormalForm>,
}

impl Level {
    fn dim(&self) -> usize {
        self.dim_free - self.root.rank()
    }
}

/// Incremental quotient computation for one presentation.
pub struct QuotientEngine {
    pres: Presentation,
    budget: Budget,
    levels: Vec<Level>,
}

impl QuotientEngine {
    pub fn new(pres: Presentation, budget: Budget) -> Self {
        let identity = Level {
            dim_free: 1,
            root: Echelon::new(),
            normal: Some(vec![TreeTerm::identity()]),
            cache: HashMap::new(),
        };
        let empty = Level {
            dim_free: 0,
            root: Echelon::new(),
            normal: Some(Vec::new()),
            cache: HashMap::new(),
        };
        QuotientEngine {
            pres,
            budget,
            levels: vec![empty, identity],
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    /// `dim Q(n)`.
    pub fn quotient_dim(&mut self, n: usize) -> Result<usize> {
        self.ensure(n)?;
        Ok(self.levels[n].dim())
    }

    /// `dim Γ(X)(n)`.
    pub fn free_dim(&self, n: usize) -> BigInt {
        free_component_dim(&self.pres.sig, n)
    }

    /// EGF with coefficient `dim Q(n) / n!` for `n <= order`.
    pub fn quotient_dim_series(&mut self, order: usize) -> Result<TruncatedSeries> {
        let mut dims = vec![BigInt::zero()];
        for n in 1..=order {
            dims.push(BigInt::from(self.quotient_dim(n)?));
        }
        Ok(TruncatedSeries::from_dims(&dims))
    }

    /// Normal basis trees of `Q(n)`, sorted.
    pub fn normal_basis(&mut self, n: usize) -> Result<&[TreeTerm]> {
        self.ensure(n)?;
        self.materialize(n);
        Ok(self.levels[n].normal.as_deref().unwrap())
    }

    /// Canonical representative of `v + I(n)`; zero exactly when `v ∈ I(n)`.
    pub fn reduce(&mut self, v: &LinComb) -> Result<LinComb> {
        let n = v.arity();
        if n == 0 {
            return Ok(v.clone());
        }
        self.ensure(n)?;
        let mut acc = SparseVec::new();
        for (t, c) in v.terms() {
            let f = self.free_expansion(t);
            axpy(&mut acc, c, &f);
        }
        let reduced = self.levels[n].root.reduce(acc);
        Ok(LinComb::from_map(n, reduced))
    }

    fn ensure(&mut self, n: usize) -> Result<()> {
        self.budget.check_arity(n)?;
        while self.levels.len() <= n {
            let k = self.levels.len();
            for j in 1..k {
                self.materialize(j);
            }
            self.build(k)?;
        }
        Ok(())
    }

    fn dim_free_of(&self, n: usize) -> BigInt {
        let mut total = BigInt::zero();
        for g in self.pres.sig.generators() {
            for parts in compositions(n, g.arity) {
                let mut term = factorial(n);
                for &p in &parts {
                    term = term / factorial(p) * BigInt::from(self.levels[p].dim());
                }
                total += term;
            }
        }
        total
    }

    fn build(&mut self, n: usize) -> Result<()> {
        let dim_free = self.dim_free_of(n);
        self.budget
            .check_terms(&format!("quotient component of arity {n}"), &dim_free)?;
        self.levels.push(Level {
            dim_free: dim_free.to_usize().unwrap(),
            root: Echelon::new(),
            normal: None,
            cache: HashMap::new(),
        });
        let mut queue: VecDeque<SparseVec<TreeTerm>> = VecDeque::new();
        let relations = self.pres.relations.clone();
        for r in relations.iter().filter(|r| r.arity() <= n) {
            for parts in compositions(n, r.arity()) {
                let lists: Vec<Vec<TreeTerm>> = parts
                    .iter()
                    .map(|&p| self.levels[p].normal.clone().unwrap())
                    .collect();
                let lens: Vec<usize> = lists.iter().map(Vec::len).collect();
                for choice in product_indices(&lens) {
                    let inners: Vec<TreeTerm> = choice
                        .iter()
                        .enumerate()
                        .map(|(j, &c)| lists[j][c].clone())
                        .collect();
                    let mut v = SparseVec::new();
                    for (t, c) in r.terms() {
                        let f = self.free_expansion(&compose_all(t, &inners));
                        axpy(&mut v, c, &f);
                    }
                    self.insert_root(n, v, &mut queue);
                }
            }
        }
        // close the root part under the adjacent transpositions
        while let Some(row) = queue.pop_front() {
            for i in 1..n as u32 {
                let mut v = SparseVec::new();
                for (t, c) in &row {
                    let f = self.free_expansion(&t.swap_labels(i, i + 1));
                    axpy(&mut v, c, &f);
                }
                self.insert_root(n, v, &mut queue);
            }
        }
        Ok(())
    }

    fn insert_root(
        &mut self,
        n: usize,
        v: SparseVec<TreeTerm>,
        queue: &mut VecDeque<SparseVec<TreeTerm>>,
    ) {
        let level = &mut self.levels[n];
        if let Some(pivot) = level.root.insert(v) {
            queue.push_back(level.root.row(&pivot).unwrap().clone());
        }
    }

    fn materialize(&mut self, n: usize) {
        if self.levels[n].normal.is_some() {
            return;
        }
        let mut normal = Vec::new();
        for (op, g) in self.pres.sig.generators().iter().enumerate() {
            for blocks in ordered_set_partitions(n, g.arity) {
                let lists: Vec<&Vec<TreeTerm>> = blocks
                    .iter()
                    .map(|b| self.levels[b.len()].normal.as_ref().unwrap())
                    .collect();
                let lens: Vec<usize> = lists.iter().map(|l| l.len()).collect();
                for choice in product_indices(&lens) {
                    let children = blocks
                        .iter()
                        .zip(&choice)
                        .enumerate()
                        .map(|(j, (b, &c))| lists[j][c].relabel(&|l| b[l as usize - 1]))
                        .collect();
                    let t = TreeTerm::node(op, children);
                    if !self.levels[n].root.is_pivot(&t) {
                        normal.push(t);
                    }
                }
            }
        }
        normal.sort();
        debug_assert_eq!(normal.len(), self.levels[n].dim());
        self.levels[n].normal = Some(normal);
    }

    /// Image of a tree in `F(arity)`: children replaced by their normal forms.
    fn free_expansion(&mut self, t: &TreeTerm) -> SparseVec<TreeTerm> {
        let mut out = SparseVec::new();
        let Some(op) = t.op() else {
            out.insert(t.clone(), Rational::one());
            return out;
        };
        let mut factors: Vec<Vec<(TreeTerm, Rational)>> = Vec::with_capacity(t.children().len());
        for child in t.children() {
            if child.is_leaf() {
                factors.push(vec![(child.clone(), Rational::one())]);
                continue;
            }
            let (std, labels) = child.standardize();
            let nf = self.normal_form_std(&std);
            if nf.is_empty() {
                return out;
            }
            factors.push(
                nf.iter()
                    .map(|(s, c)| (s.relabel(&|l| labels[l as usize - 1]), c.clone()))
                    .collect(),
            );
        }
        let lens: Vec<usize> = factors.iter().map(Vec::len).collect();
        for choice in product_indices(&lens) {
            let mut coeff = Rational::one();
            let children = choice
                .iter()
                .enumerate()
                .map(|(j, &k)| {
                    coeff *= &factors[j][k].1;
                    factors[j][k].0.clone()
                })
                .collect();
            add_into(&mut out, TreeTerm::node(op, children), coeff);
        }
        out
    }

    /// Normal form of a standard-labelled tree of a completed arity.
    fn normal_form_std(&mut self, t: &TreeTerm) -> NormalForm {
        let k = t.arity();
        if let Some(hit) = self.levels[k].cache.get(t) {
            return hit.clone();
        }
        let f = self.free_expansion(t);
        let reduced = self.levels[k].root.reduce(f);
        let nf: NormalForm = reduced.into_iter().collect::<Vec<_>>().into();
        self.levels[k].cache.insert(t.clone(), nf.clone());
        nf
    }
}

/// `dim Γ(X)(n) − dim I(n)`.
pub fn quotient_dim(pres: &Presentation, n: usize, budget: &Budget) -> Result<usize> {
    QuotientEngine::new(pres.clone(), *budget).quotient_dim(n)
}

pub fn quotient_dim_series(
    pres: &Presentation,
    order: usize,
    budget: &Budget,
) -> Result<TruncatedSeries> {
    QuotientEngine::new(pres.clone(), *budget).quotient_dim_series(order)
}

pub fn reduce(pres: &Presentation, v: &LinComb, budget: &Budget) -> Result<LinComb> {
    QuotientEngine::new(pres.clone(), *budget).reduce(v)
}

/// Reduced echelon basis of `I(n) ⊆ Γ(X)(n)`.
#[derive(Clone, Debug)]
pub struct IdealComponent {
    pub arity: usize,
    pub basis: Vec<LinComb>,
    pub dim: usize,
}

impl IdealComponent {
    /// Remainder of `v` modulo this component.
    pub fn reduce(&self, v: &LinComb) -> LinComb {
        let mut e: Echelon<TreeTerm> = Echelon::new();
        for row in &self.basis {
            e.insert(row.map().clone());
        }
        LinComb::from_map(v.arity(), e.reduce(v.map().clone()))
    }
}

/// Ideal component computed inside the free operad: relabellings of the
/// relations of arity `n`, left and right compositions of lower ideal
/// components with basis trees, closed under the symmetric group.
pub fn ideal_component(pres: &Presentation, n: usize, budget: &Budget) -> Result<IdealComponent> {
    Ok(ideal_components(pres, n, budget)?.remove(&n).unwrap())
}

/// [`ideal_component`] for every arity `1..=n`.
pub fn ideal_components(
    pres: &Presentation,
    n: usize,
    budget: &Budget,
) -> Result<BTreeMap<usize, IdealComponent>> {
    budget.check_arity(n)?;
    let mut bases = Vec::new();
    for k in 1..=n {
        bases.push(enumerate_basis(&pres.sig, k, budget)?);
    }
    let mut out: BTreeMap<usize, IdealComponent> = BTreeMap::new();
    out.insert(
        1,
        IdealComponent {
            arity: 1,
            basis: Vec::new(),
            dim: 0,
        },
    );
    for k in 2..=n {
        let mut e: Echelon<TreeTerm> = Echelon::new();
        let mut queue = VecDeque::new();
        let push = |e: &mut Echelon<TreeTerm>,
                    queue: &mut VecDeque<SparseVec<TreeTerm>>,
                    v: SparseVec<TreeTerm>| {
            if let Some(p) = e.insert(v) {
                queue.push_back(e.row(&p).unwrap().clone());
            }
        };
        for r in pres.relations.iter().filter(|r| r.arity() == k) {
            push(&mut e, &mut queue, r.map().clone());
        }
        for j in 2..k {
            let trees = &bases[k - j].terms; // arity k - j + 1
            for x in &out[&j].basis {
                for t in trees {
                    let tl = LinComb::from_term(t.clone());
                    for i in 1..=t.arity() {
                        push(
                            &mut e,
                            &mut queue,
                            crate::free::compose_at(&tl, i, x)?.into_map(),
                        );
                    }
                    for i in 1..=j {
                        push(
                            &mut e,
                            &mut queue,
                            crate::free::compose_at(x, i, &tl)?.into_map(),
                        );
                    }
                }
            }
        }
        while let Some(row) = queue.pop_front() {
            for i in 1..k as u32 {
                let mut v = SparseVec::new();
                for (t, c) in &row {
                    add_into(&mut v, t.swap_labels(i, i + 1), c.clone());
                }
                push(&mut e, &mut queue, v);
            }
        }
        let basis: Vec<LinComb> = e
            .reduced_rows()
            .into_iter()
            .map(|(_, row)| LinComb::from_map(k, row))
            .collect();
        out.insert(
            k,
            IdealComponent {
                arity: k,
                dim: basis.len(),
                basis,
            },
        );
    }
    Ok(out)
}

/// Nilpotency of a single element: per-arity dimensions of its reduced
/// suboperad closure, and the least arity from which everything observed
/// vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyReport {
    pub nilpotent_by: Option<usize>,
    pub component_dims: BTreeMap<usize, usize>,
}

pub fn is_nilpotent_element(
    engine: &mut QuotientEngine,
    p: &LinComb,
    max_degree: usize,
) -> Result<NilpotencyReport> {
    if p.arity() < 2 {
        return Err(Error::MalformedInput(
            "element must have arity at least 2".into(),
        ));
    }
    let budget = *engine.budget();
    let closure = suboperad_closure(p, max_degree, &budget)?;
    let mut component_dims = BTreeMap::new();
    for (&a, elems) in &closure {
        let mut e: Echelon<TreeTerm> = Echelon::new();
        for x in elems {
            let r = engine.reduce(x)?;
            e.insert(r.into_map());
        }
        component_dims.insert(a, e.rank());
    }
    if p.is_zero() {
        component_dims.insert(p.arity(), 0);
    }
    let mut nilpotent_by = None;
    for (&a, &d) in component_dims.iter().rev() {
        if d != 0 {
            break;
        }
        nilpotent_by = Some(a);
    }
    Ok(NilpotencyReport {
        nilpotent_by,
        component_dims,
    })
}
