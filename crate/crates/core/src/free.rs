//! The free operad on a signature: bases of its components, the dimension
//! series, operadic composition, one-generated suboperads and symmetrized
//! powers.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::combinat::{ordered_set_partitions, permutations, product_indices, weak_compositions};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::rational::Rational;
use crate::series::{factorial, TruncatedSeries};
use crate::signature::Signature;
use crate::term::{LinComb, TreeTerm};

/// Caps on component sizes. Defaults: arity 8, 10^6 terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_arity: usize,
    pub max_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_arity: 8,
            max_terms: 1_000_000,
        }
    }
}

impl Budget {
    pub fn check_arity(&self, n: usize) -> Result<()> {
        if n > self.max_arity {
            return Err(Error::BudgetExceeded(format!(
                "arity {n} is above the component arity cap {}",
                self.max_arity
            )));
        }
        Ok(())
    }

    pub fn check_terms(&self, what: &str, count: &BigInt) -> Result<()> {
        match count.to_usize() {
            Some(c) if c <= self.max_terms => Ok(()),
            _ => Err(Error::BudgetExceeded(format!(
                "{what} needs {count} terms, cap is {}",
                self.max_terms
            ))),
        }
    }
}

/// All basis trees of `Γ(X)(n)` in canonical order.
#[derive(Clone, Debug)]
pub struct ComponentBasis {
    pub arity: usize,
    pub terms: Vec<TreeTerm>,
    pub index: HashMap<TreeTerm, usize>,
}

impl ComponentBasis {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Solves `f = z + Σ_k |Ω(k)| f^k` degree by degree; the coefficient of
/// `z^n` is `dim Γ(X)(n) / n!`.
pub fn free_dim_series(sig: &Signature, order: usize) -> TruncatedSeries {
    let x = sig.egf(order);
    let z = TruncatedSeries::var(order);
    let mut f = z.clone();
    for _ in 1..order {
        f = z.add(&x.compose(&f).expect("f has zero constant term"));
    }
    f
}

/// `dim Γ(X)(n)` as an exact integer.
pub fn free_component_dim(sig: &Signature, n: usize) -> BigInt {
    let c =
        free_dim_series(sig, n.max(1)).coeffs()[n].clone() * Rational::from_integer(factorial(n));
    c.to_integer()
}

/// Enumerates every multilinear tree of arity `n` over `sig`.
pub fn enumerate_basis(sig: &Signature, n: usize, budget: &Budget) -> Result<ComponentBasis> {
    if n == 0 {
        return Err(Error::MalformedInput("arity must be at least 1".into()));
    }
    budget.check_terms(
        &format!("component of arity {n}"),
        &free_component_dim(sig, n),
    )?;
    let mut by_size: Vec<Vec<TreeTerm>> = vec![Vec::new(), vec![TreeTerm::identity()]];
    for k in 2..=n {
        let mut level = Vec::new();
        for (op, g) in sig.generators().iter().enumerate() {
            for blocks in ordered_set_partitions(k, g.arity) {
                let lens: Vec<usize> = blocks.iter().map(|b| by_size[b.len()].len()).collect();
                for choice in product_indices(&lens) {
                    let children = blocks
                        .iter()
                        .zip(&choice)
                        .map(|(b, &c)| by_size[b.len()][c].relabel(&|l| b[l as usize - 1]))
                        .collect();
                    level.push(TreeTerm::node(op, children));
                }
            }
        }
        level.sort();
        by_size.push(level);
    }
    let terms = by_size.swap_remove(n);
    let index = terms
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    Ok(ComponentBasis {
        arity: n,
        terms,
        index,
    })
}

/// `outer ∘_i inner`, extended bilinearly from tree grafting.
pub fn compose_at(outer: &LinComb, i: usize, inner: &LinComb) -> Result<LinComb> {
    if i == 0 || i > outer.arity() {
        return Err(Error::IndexOutOfRange {
            index: i,
            arity: outer.arity(),
        });
    }
    let arity = outer.arity() + inner.arity() - 1;
    let mut out = LinComb::zero(arity);
    for (a, ca) in outer.terms() {
        for (b, cb) in inner.terms() {
            out.add_term(a.graft(i as u32, b), ca * cb);
        }
    }
    Ok(out)
}

/// Simultaneous composition `outer(inner_1, ..., inner_m)`; the labels of
/// `inner_j` are shifted past those of `inner_1..inner_{j-1}`.
pub fn compose_all(outer: &TreeTerm, inners: &[TreeTerm]) -> TreeTerm {
    let mut offset = 0;
    let shifted: Vec<TreeTerm> = inners
        .iter()
        .map(|t| {
            let s = t.relabel(&|l| l + offset);
            offset += t.arity() as u32;
            s
        })
        .collect();
    outer.substitute(&shifted)
}

fn compose_all_lin(outer: &LinComb, inners: &[&LinComb]) -> LinComb {
    let arity = inners.iter().map(|v| v.arity()).sum();
    let mut out = LinComb::zero(arity);
    let lists: Vec<Vec<(&TreeTerm, &Rational)>> =
        inners.iter().map(|v| v.terms().collect()).collect();
    let lens: Vec<usize> = lists.iter().map(Vec::len).collect();
    for (t, c) in outer.terms() {
        for choice in product_indices(&lens) {
            let mut coeff = c.clone();
            let trees: Vec<TreeTerm> = choice
                .iter()
                .enumerate()
                .map(|(j, &k)| {
                    coeff *= lists[j][k].1;
                    lists[j][k].0.clone()
                })
                .collect();
            out.add_term(compose_all(t, &trees), coeff);
        }
    }
    out
}

/// Spanning sets, per arity up to `max_degree`, of the suboperad generated
/// by `p` under operadic composition (no outer relabelling). Elements that
/// do not raise the exact rank of their arity are dropped.
pub fn suboperad_closure(
    p: &LinComb,
    max_degree: usize,
    budget: &Budget,
) -> Result<BTreeMap<usize, Vec<LinComb>>> {
    let m = p.arity();
    let mut levels: BTreeMap<usize, Vec<LinComb>> = BTreeMap::new();
    if p.is_zero() {
        return Ok(levels);
    }
    if m <= max_degree || m == 1 {
        levels.insert(m, vec![p.clone()]);
    }
    if m == 1 {
        return Ok(levels);
    }
    let mut work = 0usize;
    for a in m + 1..=max_degree {
        let mut echelon: Echelon<TreeTerm> = Echelon::new();
        let mut found = Vec::new();
        let arities: Vec<usize> = levels.keys().copied().collect();
        for &xa in &arities {
            let Some(ya) = (a + 1).checked_sub(xa) else {
                continue;
            };
            let Some(ys) = levels.get(&ya) else { continue };
            for x in &levels[&xa] {
                for y in ys {
                    for i in 1..=xa {
                        let c = compose_at(x, i, y)?;
                        work += c.len();
                        if work > budget.max_terms.saturating_mul(10) {
                            return Err(Error::BudgetExceeded(format!(
                                "suboperad closure up to arity {max_degree}"
                            )));
                        }
                        if echelon.insert(c.map().clone()).is_some() {
                            found.push(c);
                        }
                    }
                }
            }
        }
        if !found.is_empty() {
            levels.insert(a, found);
        }
    }
    Ok(levels)
}

/// Sum, with coefficient one each, of every composition of `copies` copies
/// of `p` (every shape, every leaf labelling). The arity is
/// `copies * (m - 1) + 1` and the result is invariant under relabelling.
pub fn symmetrized_power(p: &LinComb, copies: usize, budget: &Budget) -> Result<LinComb> {
    let m = p.arity();
    if m < 2 || copies == 0 {
        return Err(Error::MalformedInput(
            "symmetrized power needs arity >= 2 and at least one copy".into(),
        ));
    }
    let t = copies * (m - 1) + 1;
    // shapes[k] = sum over planar shapes with k copies, leaves in input order
    let mut shapes: Vec<LinComb> = vec![LinComb::from_term(TreeTerm::identity())];
    for k in 1..=copies {
        let mut sum = LinComb::zero(k * (m - 1) + 1);
        for split in weak_compositions(k - 1, m) {
            let inners: Vec<&LinComb> = split.iter().map(|&s| &shapes[s]).collect();
            let part = compose_all_lin(p, &inners);
            sum.add_scaled(&part, &Rational::one());
        }
        shapes.push(sum);
    }
    let planar = shapes.swap_remove(copies);
    let total = factorial(t) * BigInt::from(planar.len());
    budget.check_terms(&format!("symmetrized power of arity {t}"), &total)?;
    let mut out = LinComb::zero(t);
    for perm in permutations(t) {
        out.add_scaled(&planar.permute(&perm), &Rational::one());
    }
    Ok(out)
}
