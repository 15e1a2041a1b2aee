//! Greedy constructions of infinite operads with constrained one-generated
//! suboperads.
//!
//! Both engines walk the elements `p_1, p_2, ...` of the free operad in
//! enumeration order and attach relations to each, choosing the smallest
//! parameter that keeps the Golod-Shafarevich criterion non-negative up to
//! the working order.
//!
//! * weak: `R_i` is the symmetrized `N_i`-th power of `p_i`, so every
//!   processed element satisfies a nontrivial identity.
//! * strong: every depth-`d_i` spine of copies of `p_i` is killed, so the
//!   suboperad generated by `p_i` is finite.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free::{enumerate_basis, symmetrized_power, Budget};
use crate::gs::{bound_series, gs_criterion, GsReport, GsReportRecord, Verdict};
use crate::parse::parse_term;
use crate::presentation::Presentation;
use crate::quotient::{is_nilpotent_element, QuotientEngine};
use crate::signature::Signature;
use crate::term::{LinComb, TreeTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionKind {
    Weak,
    Strong,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessedElement {
    pub element: TreeTerm,
    /// `N_i` for the weak engine, `d_i` for the strong one.
    pub parameter: usize,
    pub relation_arity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionCertificate {
    pub kind: ConstructionKind,
    pub presentation: Presentation,
    pub processed: Vec<ProcessedElement>,
    pub gs_report: GsReport,
    pub verified_up_to: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessedRecord {
    pub element: String,
    pub parameter: usize,
    pub relation_arity: usize,
}

/// JSON form of a certificate. The presentation travels separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub kind: ConstructionKind,
    pub processed: Vec<ProcessedRecord>,
    pub relation_count: usize,
    pub gs: GsReportRecord,
    pub verified_up_to: Option<usize>,
}

fn criterion_for(pres: &Presentation, order: usize, budget: &Budget) -> Result<GsReport> {
    let x = pres.sig.egf(order + 1);
    let r = pres.relation_series(order + 1, budget)?;
    let mut report = gs_criterion(&x, &r, order)?;
    report.bound_series = Some(bound_series(&x, &r, order)?);
    Ok(report)
}

impl ConstructionCertificate {
    pub fn record(&self) -> CertificateRecord {
        let sig = &self.presentation.sig;
        CertificateRecord {
            kind: self.kind,
            processed: self
                .processed
                .iter()
                .map(|p| ProcessedRecord {
                    element: p.element.render(sig),
                    parameter: p.parameter,
                    relation_arity: p.relation_arity,
                })
                .collect(),
            relation_count: self.presentation.relations.len(),
            gs: self.gs_report.record(),
            verified_up_to: self.verified_up_to,
        }
    }

    /// Rebuilds a certificate against its presentation, recomputing the
    /// criterion and rejecting any disagreement with the record.
    pub fn from_record(
        record: &CertificateRecord,
        presentation: Presentation,
        budget: &Budget,
    ) -> Result<Self> {
        let mut processed = Vec::new();
        for p in &record.processed {
            let element = parse_term(&p.element, &presentation.sig)?;
            processed.push(ProcessedElement {
                element,
                parameter: p.parameter,
                relation_arity: p.relation_arity,
            });
        }
        if record.relation_count != presentation.relations.len() {
            return Err(Error::VerificationFailed(format!(
                "certificate lists {} relations, presentation has {}",
                record.relation_count,
                presentation.relations.len()
            )));
        }
        let gs_report = criterion_for(&presentation, record.gs.order, budget)?;
        if gs_report.record() != record.gs {
            return Err(Error::VerificationFailed(
                "recorded criterion does not match the presentation".into(),
            ));
        }
        Ok(ConstructionCertificate {
            kind: record.kind,
            presentation,
            processed,
            gs_report,
            verified_up_to: record.verified_up_to,
        })
    }
}

/// The first `k` basis trees of arity at least two: by arity, then in the
/// canonical term order.
pub fn enumerate_elements(sig: &Signature, k: usize, budget: &Budget) -> Result<Vec<TreeTerm>> {
    if k > 0 && sig.is_empty() {
        return Err(Error::PreconditionViolated(
            "the signature has no generators".into(),
        ));
    }
    let mut out = Vec::new();
    let mut n = 2;
    while out.len() < k {
        let basis = enumerate_basis(sig, n, budget)?;
        out.extend(basis.terms.into_iter().take(k - out.len()));
        n += 1;
    }
    Ok(out)
}

fn with_relations(sig: &Signature, base: &[LinComb], extra: &[LinComb]) -> Result<Presentation> {
    let mut rels = base.to_vec();
    rels.extend_from_slice(extra);
    Presentation::new(sig.clone(), rels)
}

/// Weak construction over `sig` for the first `k` elements.
pub fn weak_construct(
    sig: &Signature,
    k: usize,
    order: usize,
    budget: &Budget,
) -> Result<ConstructionCertificate> {
    let elements = enumerate_elements(sig, k, budget)?;
    let mut relations: Vec<LinComb> = Vec::new();
    let mut processed = Vec::new();
    let mut last_arity = 0;
    for (i, p) in elements.into_iter().enumerate() {
        let m = p.arity();
        let lin = LinComb::from_term(p.clone());
        let mut copies = 2;
        loop {
            let t = copies * (m - 1) + 1;
            if t > last_arity {
                let r = symmetrized_power(&lin, copies, budget)?;
                let candidate = with_relations(sig, &relations, std::slice::from_ref(&r))?;
                let report = criterion_for(&candidate, order, budget)?;
                if report.verdict == Verdict::NonNegativeUpToOrder {
                    relations.push(r);
                    processed.push(ProcessedElement {
                        element: p,
                        parameter: copies,
                        relation_arity: t,
                    });
                    last_arity = t;
                    break;
                }
                if t > order + 1 {
                    // beyond the truncation the criterion cannot change
                    return Err(Error::ConstructionFailed {
                        index: i + 1,
                        reason: "criterion already negative below the relation arity".into(),
                    });
                }
            }
            copies += 1;
        }
    }
    finish(
        ConstructionKind::Weak,
        sig,
        relations,
        processed,
        order,
        budget,
    )
}

/// Every composite of `d` copies of `p` along a spine: copy `j + 1` is
/// grafted into one input of copy `j`. There are `m^(d-1)` of them, with
/// leaves numbered left to right.
pub fn branch_relations(p: &TreeTerm, d: usize) -> Vec<TreeTerm> {
    assert!(d >= 1, "a spine needs at least one copy");
    let mut spines = vec![p.clone()];
    for _ in 1..d {
        let mut next = Vec::new();
        for i in p.leaves() {
            for s in &spines {
                next.push(p.graft(i, s));
            }
        }
        spines = next;
    }
    let mut out: Vec<TreeTerm> = spines.into_iter().map(|t| t.shape()).collect();
    out.sort();
    out.dedup();
    out
}

/// Strong (Burnside type) construction: `d_i` is searched in `2..=max_d`.
pub fn strong_construct(
    sig: &Signature,
    k: usize,
    max_d: usize,
    order: usize,
    budget: &Budget,
) -> Result<ConstructionCertificate> {
    if sig.count_of_arity(2) < 2 {
        return Err(Error::PreconditionViolated(
            "the strong construction needs at least two binary generators".into(),
        ));
    }
    let elements = enumerate_elements(sig, k, budget)?;
    let mut relations: Vec<LinComb> = Vec::new();
    let mut processed = Vec::new();
    for (i, p) in elements.into_iter().enumerate() {
        let mut chosen = None;
        for d in 2..=max_d {
            let rels: Vec<LinComb> = branch_relations(&p, d)
                .into_iter()
                .map(LinComb::from_term)
                .collect();
            let candidate = with_relations(sig, &relations, &rels)?;
            if criterion_for(&candidate, order, budget)?.verdict == Verdict::NonNegativeUpToOrder {
                chosen = Some((d, rels));
                break;
            }
        }
        let Some((d, rels)) = chosen else {
            return Err(Error::ConstructionFailed {
                index: i + 1,
                reason: format!("no depth in 2..={max_d} keeps the criterion non-negative"),
            });
        };
        relations.extend(rels);
        let relation_arity = d * (p.arity() - 1) + 1;
        processed.push(ProcessedElement {
            element: p,
            parameter: d,
            relation_arity,
        });
    }
    finish(
        ConstructionKind::Strong,
        sig,
        relations,
        processed,
        order,
        budget,
    )
}

fn finish(
    kind: ConstructionKind,
    sig: &Signature,
    relations: Vec<LinComb>,
    processed: Vec<ProcessedElement>,
    order: usize,
    budget: &Budget,
) -> Result<ConstructionCertificate> {
    let presentation = Presentation::new(sig.clone(), relations)?;
    let gs_report = criterion_for(&presentation, order, budget)?;
    Ok(ConstructionCertificate {
        kind,
        presentation,
        processed,
        gs_report,
        verified_up_to: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseResult {
    pub clause: String,
    pub passed: bool,
    pub detail: String,
}

/// Informational only; does not affect the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleResult {
    pub element: String,
    pub processed: bool,
    pub nilpotent_by: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub max_degree: usize,
    pub component_dims: Vec<(usize, usize)>,
    pub clauses: Vec<ClauseResult>,
    pub samples: Vec<SampleResult>,
    pub passed: bool,
}

impl VerificationReport {
    /// `Err(VerificationFailed)` naming the first failing clause.
    pub fn into_result(self) -> Result<Self> {
        match self.clauses.iter().find(|c| !c.passed) {
            Some(c) => Err(Error::VerificationFailed(format!(
                "clause ({}): {}",
                c.clause, c.detail
            ))),
            None => Ok(self),
        }
    }
}

/// Checks a certificate up to arity `max_degree`:
///
/// * (a) every quotient component of arity `1..=max_degree` is nonzero;
/// * (b) weak: each symmetrized power reduces to zero;
/// * (c) strong: each processed element generates a suboperad that
///   vanishes from some arity `<= max_degree` on;
/// * (gs) the stored criterion recomputes from the presentation and is
///   non-negative.
pub fn verify_construction(
    cert: &ConstructionCertificate,
    max_degree: usize,
    samples: &[LinComb],
    budget: &Budget,
) -> Result<VerificationReport> {
    let mut engine = QuotientEngine::new(cert.presentation.clone(), *budget);
    let sig = cert.presentation.sig.clone();
    let mut clauses = Vec::new();

    let mut component_dims = Vec::new();
    let mut empty = None;
    for n in 1..=max_degree {
        let d = engine.quotient_dim(n)?;
        component_dims.push((n, d));
        if d == 0 && empty.is_none() {
            empty = Some(n);
        }
    }
    clauses.push(ClauseResult {
        clause: "a".into(),
        passed: empty.is_none(),
        detail: match empty {
            None => format!("components 1..={max_degree} are nonzero"),
            Some(n) => format!("component of arity {n} is zero"),
        },
    });

    match cert.kind {
        ConstructionKind::Weak => {
            let mut failure = None;
            for (i, p) in cert.processed.iter().enumerate() {
                let r =
                    symmetrized_power(&LinComb::from_term(p.element.clone()), p.parameter, budget)?;
                if r.is_zero() || !engine.reduce(&r)?.is_zero() {
                    failure = Some(format!(
                        "symmetrized power {} of element {} ({}) is not a nontrivial identity",
                        p.parameter,
                        i + 1,
                        p.element.render(&sig)
                    ));
                    break;
                }
            }
            clauses.push(ClauseResult {
                clause: "b".into(),
                passed: failure.is_none(),
                detail: failure.unwrap_or_else(|| {
                    format!(
                        "{} processed elements satisfy their identities",
                        cert.processed.len()
                    )
                }),
            });
        }
        ConstructionKind::Strong => {
            let mut failure = None;
            let mut bounds = Vec::new();
            for (i, p) in cert.processed.iter().enumerate() {
                let rep = is_nilpotent_element(
                    &mut engine,
                    &LinComb::from_term(p.element.clone()),
                    max_degree,
                )?;
                match rep.nilpotent_by {
                    Some(b) => bounds.push(b.to_string()),
                    None => {
                        failure = Some(format!(
                            "element {} ({}) not nilpotent within arity {max_degree}",
                            i + 1,
                            p.element.render(&sig)
                        ));
                        break;
                    }
                }
            }
            clauses.push(ClauseResult {
                clause: "c".into(),
                passed: failure.is_none(),
                detail: failure
                    .unwrap_or_else(|| format!("nilpotent by arities [{}]", bounds.join(", "))),
            });
        }
    }

    let order = cert.gs_report.order;
    let recomputed = criterion_for(&cert.presentation, order, budget)?;
    let sound = recomputed == cert.gs_report && recomputed.verdict == Verdict::NonNegativeUpToOrder;
    clauses.push(ClauseResult {
        clause: "gs".into(),
        passed: sound,
        detail: if sound {
            format!("criterion recomputes non-negative up to order {order}")
        } else {
            format!(
                "recomputed criterion is {} at order {order}",
                recomputed.verdict
            )
        },
    });

    let mut sample_results = Vec::new();
    for s in samples {
        let rep = is_nilpotent_element(&mut engine, s, max_degree)?;
        sample_results.push(SampleResult {
            element: s.render(&sig),
            processed: s
                .as_monomial()
                .is_some_and(|t| cert.processed.iter().any(|p| &p.element == t)),
            nilpotent_by: rep.nilpotent_by,
        });
    }

    let passed = clauses.iter().all(|c| c.passed);
    Ok(VerificationReport {
        max_degree,
        component_dims,
        clauses,
        samples: sample_results,
        passed,
    })
}

/// Number of relations a strong step with depth `d` adds for an element
/// of arity `m`.
pub fn branch_count(m: usize, d: usize) -> BigInt {
    BigInt::from(m).pow(d.saturating_sub(1) as u32)
}
