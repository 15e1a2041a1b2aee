//! Presentations `Γ(X)/(R)` and their text file format.
//!
//! ```text
//! # comment
//! [generators]
//! m : 2
//! [relations]
//! m(m(1,2),3) - m(1,m(2,3))
//! ```

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::free::Budget;
use crate::linalg::{Echelon, SparseVec};
use crate::parse::parse_lincomb;
use crate::rational::Rational;
use crate::series::{factorial, TruncatedSeries};
use crate::signature::Signature;
use crate::term::{add_into, LinComb, TreeTerm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub sig: Signature,
    pub relations: Vec<LinComb>,
}

fn check_term(t: &TreeTerm, sig: &Signature) -> Result<()> {
    if let Some(op) = t.op() {
        let g = sig.generators().get(op).ok_or_else(|| {
            Error::InvalidPresentation(format!("generator index {op} not in signature"))
        })?;
        if g.arity != t.children().len() {
            return Err(Error::ArityMismatch {
                name: g.name.clone(),
                expected: g.arity,
                found: t.children().len(),
            });
        }
        for c in t.children() {
            check_term(c, sig)?;
        }
    }
    Ok(())
}

impl Presentation {
    pub fn new(sig: Signature, relations: Vec<LinComb>) -> Result<Self> {
        for r in &relations {
            if r.is_zero() {
                return Err(Error::InvalidPresentation("relation is zero".into()));
            }
            if r.arity() < 2 {
                return Err(Error::InvalidPresentation(
                    "relations must have arity at least 2".into(),
                ));
            }
            for (t, _) in r.terms() {
                check_term(t, &sig)?;
                if !t.is_multilinear() || t.arity() != r.arity() {
                    return Err(Error::NotMultilinear(t.render(&sig)));
                }
            }
        }
        Ok(Presentation { sig, relations })
    }

    /// No relations: the free operad itself.
    pub fn free(sig: Signature) -> Self {
        Presentation {
            sig,
            relations: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        #[derive(PartialEq)]
        enum Section {
            None,
            Generators,
            Relations,
        }
        let mut section = Section::None;
        let mut decls: Vec<(String, usize)> = Vec::new();
        let mut sig: Option<Signature> = None;
        let mut relations = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match line {
                "[generators]" => {
                    if section != Section::None {
                        return Err(
                            Error::syntax(0, "`[generators]` must come first").at_line(line_no)
                        );
                    }
                    section = Section::Generators;
                    continue;
                }
                "[relations]" => {
                    if section == Section::Relations {
                        return Err(Error::syntax(0, "duplicate `[relations]`").at_line(line_no));
                    }
                    section = Section::Relations;
                    sig = Some(Signature::new(decls.clone()).map_err(|e| e.at_line(line_no))?);
                    continue;
                }
                _ => {}
            }
            match section {
                Section::None => {
                    return Err(Error::syntax(0, "expected `[generators]`").at_line(line_no));
                }
                Section::Generators => {
                    let (name, arity) = line.split_once(':').ok_or_else(|| {
                        Error::syntax(0, "expected `name : arity`").at_line(line_no)
                    })?;
                    let arity: usize = arity.trim().parse().map_err(|_| {
                        Error::syntax(
                            line.find(':').unwrap() + 1,
                            "arity must be a positive integer",
                        )
                        .at_line(line_no)
                    })?;
                    decls.push((name.trim().to_string(), arity));
                }
                Section::Relations => {
                    let s = sig
                        .as_ref()
                        .expect("signature is built on entering [relations]");
                    let offset = raw.len() - raw.trim_start().len();
                    let r = parse_lincomb(line, s).map_err(|e| {
                        match e {
                            Error::Syntax { position, message } => Error::Syntax {
                                position: position + offset,
                                message,
                            },
                            other => other,
                        }
                        .at_line(line_no)
                    })?;
                    if r.is_zero() {
                        return Err(
                            Error::InvalidPresentation("relation is zero".into()).at_line(line_no)
                        );
                    }
                    if r.arity() < 2 {
                        return Err(Error::InvalidPresentation(
                            "relations must have arity at least 2".into(),
                        )
                        .at_line(line_no));
                    }
                    relations.push(r);
                }
            }
        }
        let sig = match sig {
            Some(s) => s,
            None => Signature::new(decls)?,
        };
        Presentation::new(sig, relations)
    }

    /// EGF of the S-module spanned by the relations: the coefficient of
    /// `z^n` is `dim S_n-span{relations of arity n} / n!`. For monomial
    /// relations this is the number of distinct tree shapes.
    pub fn relation_series(&self, order: usize, budget: &Budget) -> Result<TruncatedSeries> {
        let mut by_arity: BTreeMap<usize, Vec<&LinComb>> = BTreeMap::new();
        for r in &self.relations {
            if r.arity() <= order {
                by_arity.entry(r.arity()).or_default().push(r);
            }
        }
        let mut coeffs = vec![Rational::from_integer(BigInt::from(0)); order + 1];
        for (n, rels) in by_arity {
            coeffs[n] = if rels.iter().all(|r| r.as_monomial().is_some()) {
                let shapes: BTreeSet<TreeTerm> = rels
                    .iter()
                    .map(|r| r.as_monomial().unwrap().shape())
                    .collect();
                Rational::from_integer(BigInt::from(shapes.len()))
            } else {
                let rank = s_span_rank(n, &rels, budget)?;
                Rational::new(BigInt::from(rank), factorial(n))
            };
        }
        Ok(TruncatedSeries::new(coeffs))
    }

    pub fn render(&self) -> String {
        let mut out = String::from("[generators]\n");
        for g in self.sig.generators() {
            out.push_str(&format!("{} : {}\n", g.name, g.arity));
        }
        out.push_str("\n[relations]\n");
        for r in &self.relations {
            out.push_str(&r.render(&self.sig));
            out.push('\n');
        }
        out
    }
}

/// Rank of the span of `rels` under relabelling, by closing an echelon
/// basis under adjacent transpositions.
pub(crate) fn s_span_rank(n: usize, rels: &[&LinComb], budget: &Budget) -> Result<usize> {
    let mut e: Echelon<TreeTerm> = Echelon::new();
    let mut queue: VecDeque<SparseVec<TreeTerm>> = VecDeque::new();
    let push = |e: &mut Echelon<TreeTerm>,
                queue: &mut VecDeque<SparseVec<TreeTerm>>,
                v: SparseVec<TreeTerm>|
     -> Result<()> {
        if let Some(p) = e.insert(v) {
            if e.rank() > budget.max_terms {
                return Err(Error::BudgetExceeded(format!(
                    "relation module of arity {n}"
                )));
            }
            queue.push_back(e.row(&p).unwrap().clone());
        }
        Ok(())
    };
    for r in rels {
        push(&mut e, &mut queue, r.map().clone())?;
    }
    while let Some(row) = queue.pop_front() {
        for i in 1..n as u32 {
            let mut v = SparseVec::new();
            for (t, c) in &row {
                add_into(&mut v, t.swap_labels(i, i + 1), c.clone());
            }
            push(&mut e, &mut queue, v)?;
        }
    }
    Ok(e.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    const ASS: &str = "# associative operad\n[generators]\nm : 2\n\n[relations]\nm(m(1,2),3) - m(1,m(2,3))  # associator\n";

    #[test]
    fn parses_and_round_trips() {
        let p = Presentation::parse(ASS).unwrap();
        assert_eq!(p.sig.len(), 1);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(Presentation::parse(&p.render()).unwrap(), p);
    }

    #[test]
    fn signature_only_file() {
        let p = Presentation::parse("[generators]\na : 2\nb : 2\n").unwrap();
        assert_eq!(p.sig.len(), 2);
        assert!(p.relations.is_empty());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err =
            Presentation::parse("[generators]\nm : 2\n[relations]\nm(1,2) - m(2,2)\n").unwrap_err();
        assert!(matches!(err, Error::AtLine { line: 4, .. }), "{err:?}");
        let err = Presentation::parse("[generators]\nm 2\n").unwrap_err();
        assert!(matches!(err, Error::AtLine { line: 2, .. }));
        let err = Presentation::parse("[generators]\nm : 2\n[relations]\n  m(1,2 - m(2,1)\n")
            .unwrap_err();
        match err {
            Error::AtLine { line: 4, source } => {
                assert!(
                    matches!(*source, Error::Syntax { position: 8, .. }),
                    "{source:?}"
                )
            }
            other => panic!("{other:?}"),
        }
        assert!(Presentation::parse("m : 2\n").is_err());
        assert!(Presentation::parse("[generators]\nm : 1\n").is_err());
        assert!(
            Presentation::parse("[generators]\nm : 2\n[relations]\nm(1,2) - m(1,2)\n").is_err()
        );
    }

    #[test]
    fn relation_series_counts_modules() {
        use crate::rational::{frac, int};
        let b = Budget::default();
        let ass = Presentation::parse(ASS).unwrap();
        // the associator spans a copy of the regular representation
        assert_eq!(ass.relation_series(4, &b).unwrap().coeffs()[3], int(1));
        let comm =
            Presentation::parse("[generators]\nm : 2\n[relations]\nm(1,2) - m(2,1)\n").unwrap();
        assert_eq!(comm.relation_series(3, &b).unwrap().coeffs()[2], frac(1, 2));
        let mono = Presentation::parse(
            "[generators]\nm : 2\n[relations]\nm(m(1,2),3)\nm(m(2,1),3)\nm(1,m(2,3))\n",
        )
        .unwrap();
        assert_eq!(mono.relation_series(3, &b).unwrap().coeffs()[3], int(2));
        assert!(mono.relation_series(2, &b).unwrap().is_zero());
    }
}
