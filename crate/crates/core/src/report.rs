//! Per-element classification reports backed by brute-force quotient evidence.

use serde::Serialize;

use crate::error::{Result, RingError};
use crate::factor::FactorDomain;
use crate::finite::{QuotientFlags, StructureReport};
use crate::limits::{Caps, FactorBudget};
use crate::par::Execution;
use crate::structure::{
    adequate_split, avoidable_decompose, comaximal_refinement, gelfand_decompose, is_atom, is_inpseudo_irreducible, is_pseudo_irreducible,
    is_regular, semipotent_witness, SemipotentOutcome, SplitKind, SplitWitness,
};

/// A split rendered for output. `outcome` is `witness`, `in_radical` or
/// `unavailable` (with the reason in `detail`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub kind: SplitKind,
    pub a: String,
    pub b: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rs_comaximal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl WitnessRecord {
    fn from_witness<R: crate::ring::Ring>(ring: &R, w: &SplitWitness<R::Elem>) -> Self {
        WitnessRecord {
            kind: w.kind,
            a: ring.format(&w.a),
            b: ring.format(&w.b),
            c: w.c.as_ref().map(|c| ring.format(c)),
            outcome: "witness".into(),
            r: Some(ring.format(&w.r)),
            s: Some(ring.format(&w.s)),
            rs_comaximal: Some(w.rs_comaximal),
            detail: None,
        }
    }

    fn bare<R: crate::ring::Ring>(ring: &R, kind: SplitKind, a: &R::Elem, b: &R::Elem, outcome: &str, detail: Option<String>) -> Self {
        WitnessRecord {
            kind,
            a: ring.format(a),
            b: ring.format(b),
            c: None,
            outcome: outcome.into(),
            r: None,
            s: None,
            rs_comaximal: None,
            detail,
        }
    }
}

fn checked<R: crate::ring::Ring>(ring: &R, w: SplitWitness<R::Elem>) -> Result<WitnessRecord> {
    let bad = w.violations(ring);
    if bad.is_empty() {
        Ok(WitnessRecord::from_witness(ring, &w))
    } else {
        Err(RingError::TraceInvariantViolation(bad.join("; ")))
    }
}

/// Runs one split and verifies the witness before returning it. A missing
/// nontrivial idempotent or an enumeration cap is reported as `unavailable`.
pub fn run_split<R: FactorDomain>(
    ring: &R,
    kind: SplitKind,
    a: &R::Elem,
    b: &R::Elem,
    c: Option<&R::Elem>,
    caps: &Caps,
) -> Result<WitnessRecord> {
    let need_c = || c.ok_or_else(|| RingError::PreconditionFailed(format!("{} split needs c", kind.name())));
    match kind {
        SplitKind::Adequate => checked(ring, adequate_split(ring, a, b)?),
        SplitKind::Avoidable => checked(ring, avoidable_decompose(ring, a, b, need_c()?)?),
        SplitKind::Gelfand => checked(ring, gelfand_decompose(ring, a, b, need_c()?)?),
        SplitKind::Semipotent => match semipotent_witness(ring, a, b, caps) {
            Ok(SemipotentOutcome::Witness(w)) => checked(ring, w),
            Ok(SemipotentOutcome::InRadical) => Ok(WitnessRecord::bare(ring, kind, a, b, "in_radical", None)),
            Err(e @ (RingError::NoNontrivialIdempotent(_) | RingError::TooLarge { .. } | RingError::Infinite)) => {
                Ok(WitnessRecord::bare(ring, kind, a, b, "unavailable", Some(e.to_string())))
            }
            Err(e) => Err(e),
        },
    }
}

/// Classification of one element together with the quotient it generates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementReport {
    pub schema: u32,
    pub element: String,
    pub ring: String,
    pub regular: bool,
    pub atom: Option<bool>,
    pub inpseudo_irreducible: Option<bool>,
    pub pseudo_irreducible: Option<bool>,
    pub comaximal_factors: Option<Vec<String>>,
    pub quotient_flags: Option<QuotientFlags>,
    pub quotient_indecomposable: Option<bool>,
    pub quotient: Option<StructureReport>,
    pub witnesses: Vec<WitnessRecord>,
    pub skipped: Vec<String>,
}

impl ElementReport {
    /// Broken implications among the quotient flags.
    pub fn implication_violations(&self) -> Vec<String> {
        self.quotient_flags.map(|f| f.implication_violations()).unwrap_or_default()
    }
}

/// Input to [`classify`]: the element and optional split partners.
#[derive(Debug, Clone)]
pub struct ClassifyRequest<E> {
    pub a: E,
    pub b: Option<E>,
    pub c: Option<E>,
}

fn budget_skip<T>(name: &str, r: Result<T>, skipped: &mut Vec<String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e @ RingError::FactorizationBudgetExceeded(_)) => {
            skipped.push(format!("{name}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub fn classify<R: FactorDomain>(ring: &R, req: &ClassifyRequest<R::Elem>, caps: &Caps, budget: &FactorBudget) -> Result<ElementReport> {
    let a = &req.a;
    ring.check(a)?;
    for x in [&req.b, &req.c].into_iter().flatten() {
        ring.check(x)?;
    }
    if ring.is_zero(a) || ring.is_unit(a) {
        return Err(RingError::UnitOrZeroInput(ring.format(a)));
    }
    let mut skipped = Vec::new();
    let atom = budget_skip("atom", is_atom(ring, a, budget), &mut skipped)?;
    let inpseudo = budget_skip("inpseudo_irreducible", is_inpseudo_irreducible(ring, a, budget), &mut skipped)?;
    let pseudo = budget_skip("pseudo_irreducible", is_pseudo_irreducible(ring, a, budget), &mut skipped)?;
    let comax = budget_skip("comaximal_factors", comaximal_refinement(ring, a, budget), &mut skipped)?
        .map(|f| f.factors.iter().map(|x| ring.format(x)).collect());
    let quotient = match ring.finite_quotient(a, caps) {
        Ok(fr) => Some(fr.with_quadratic_cap(caps.quadratic).analyze()),
        Err(e @ (RingError::TooLarge { .. } | RingError::Infinite)) => {
            skipped.push(format!("quotient: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(q) = &quotient {
        skipped.extend(q.skipped.iter().map(|s| format!("quotient {s}")));
    }
    let mut witnesses = Vec::new();
    if let Some(b) = &req.b {
        witnesses.push(run_split(ring, SplitKind::Adequate, a, b, None, caps)?);
        if let Some(c) = &req.c {
            witnesses.push(run_split(ring, SplitKind::Avoidable, a, b, Some(c), caps)?);
            witnesses.push(run_split(ring, SplitKind::Gelfand, a, b, Some(c), caps)?);
        }
        witnesses.push(run_split(ring, SplitKind::Semipotent, a, b, None, caps)?);
    }
    let flags = quotient.as_ref().map(|q| q.flags);
    Ok(ElementReport {
        schema: 1,
        element: ring.format(a),
        ring: ring.describe(),
        regular: is_regular(ring, a),
        atom,
        inpseudo_irreducible: inpseudo,
        pseudo_irreducible: pseudo,
        comaximal_factors: comax,
        quotient_flags: flags,
        quotient_indecomposable: flags.and_then(|f| f.indecomposable),
        quotient,
        witnesses,
        skipped,
    })
}

/// Classifies many elements; results keep input order.
pub fn classify_batch<R>(
    ring: &R,
    reqs: &[ClassifyRequest<R::Elem>],
    caps: &Caps,
    budget: &FactorBudget,
    exec: Execution,
) -> Vec<Result<ElementReport>>
where
    R: FactorDomain + Sync,
    R::Elem: Sync,
{
    exec.map(reqs, |req| classify(ring, req, caps, budget))
}
