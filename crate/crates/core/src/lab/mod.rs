//! Theorem suite: every checked result, gated on its hypotheses.

mod fuzz;
mod generate;

use std::fmt;

use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::order::Conrad;
use crate::ring::{ElementId, Limits, RingSpec, StarRing};
use crate::structure::Flags;

pub use fuzz::{fuzz, Family, FuzzConfig, FuzzFailure, FuzzReport, Taxonomy, VerdictCounts};
pub use generate::{random_table_ring, structural_specs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hypothesis {
    PqBaerStar,
    TwoInvertible,
    Semiprime,
}

impl Hypothesis {
    pub fn name(self) -> &'static str {
        match self {
            Hypothesis::PqBaerStar => "pq-baer-star",
            Hypothesis::TwoInvertible => "two-invertible",
            Hypothesis::Semiprime => "semiprime",
        }
    }

    pub fn holds(self, flags: &Flags) -> bool {
        match self {
            Hypothesis::PqBaerStar => flags.is_pq_baer_star,
            Hypothesis::TwoInvertible => flags.is_two_invertible,
            Hypothesis::Semiprime => flags.is_semiprime,
        }
    }
}

macro_rules! theorems {
    ($($variant:ident => $id:literal, [$($hyp:ident),*], $gated:literal;)*) => {
        /// Every result the suite checks. Declared in id order.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Theorem {
            $($variant,)*
        }

        impl Theorem {
            pub const ALL: &'static [Theorem] = &[$(Theorem::$variant,)*];

            pub fn id(self) -> &'static str {
                match self {
                    $(Theorem::$variant => $id,)*
                }
            }

            pub fn hypotheses(self) -> &'static [Hypothesis] {
                match self {
                    $(Theorem::$variant => &[$(Hypothesis::$hyp),*],)*
                }
            }

            /// Gated theorems are skipped when a hypothesis fails; ungated
            /// ones always run, and a failure under unmet hypotheses is an
            /// expected diagnostic.
            pub fn gated(self) -> bool {
                match self {
                    $(Theorem::$variant => $gated,)*
                }
            }
        }
    };
}

theorems! {
    AnnihilatorIdentity => "annihilator-identity", [PqBaerStar], true;
    CentralCoverExistence => "central-cover-existence", [PqBaerStar], true;
    CoverLemma => "cover-lemma", [], true;
    CoverRemarkIdentities => "cover-remark-identities", [], true;
    CubCharacterization => "cub-characterization", [PqBaerStar], true;
    CubConsequences => "cub-consequences", [PqBaerStar], true;
    JoinCorollary => "join-corollary", [PqBaerStar], true;
    LatticeCharacterization => "lattice-characterization", [PqBaerStar], true;
    MeetJoin => "meet-join", [PqBaerStar], true;
    MonotoneCovers => "monotone-covers", [PqBaerStar], true;
    OrderDiagnostics => "order-diagnostics", [Semiprime], false;
    OrderEquivalence => "order-equivalence", [PqBaerStar], true;
    OrthoJoin => "ortho-join", [PqBaerStar], true;
    OrthogonalityAxioms => "orthogonality-axioms", [PqBaerStar], true;
    OrthogonalityCover => "orthogonality-cover", [PqBaerStar], true;
    OrthomodularDecomposition => "orthomodular-decomposition", [PqBaerStar], true;
    PqBaerSemiprime => "pq-baer-semiprime", [], true;
    Problem2 => "problem-2", [PqBaerStar], true;
    Problem2TwoSided => "problem-2-two-sided", [PqBaerStar], true;
    PseudoLattice => "pseudo-lattice", [PqBaerStar], true;
    QuasiOrthomodular => "quasi-orthomodular", [PqBaerStar], true;
    ReducedRickartPqBaer => "reduced-rickart-pq-baer", [], true;
    SegmentOrthomodular => "segment-orthomodular", [PqBaerStar], true;
    SemiprimeBoundary => "semiprime-boundary", [], true;
    SubtractivityBiconditional => "subtractivity-biconditional", [PqBaerStar, TwoInvertible], true;
    SubtractivityForward => "subtractivity-forward", [PqBaerStar], true;
}

impl Theorem {
    pub fn from_id(id: &str) -> Result<Theorem> {
        Theorem::ALL
            .iter()
            .copied()
            .find(|t| t.id() == id)
            .ok_or_else(|| Error::UnknownTheorem(id.to_string()))
    }

    fn evaluate(self, c: &Conrad) -> Result<Check> {
        let flags = &c.classification().flags;
        let witnesses = &c.classification().witnesses;
        match self {
            Theorem::AnnihilatorIdentity => c.structure().verify_annihilator_identity(),
            Theorem::CentralCoverExistence => {
                Ok(Check::from_witness(c.covers().first_absent().map(|x| vec![x])))
            }
            Theorem::CoverLemma => Ok(c.cover_lemma_check()),
            Theorem::CoverRemarkIdentities => Ok(c.remark_identities()),
            Theorem::CubCharacterization => c.cub_characterization(),
            Theorem::CubConsequences => c.cub_consequences(),
            Theorem::JoinCorollary => c.join_corollary(),
            Theorem::LatticeCharacterization => c.lattice_characterization(),
            Theorem::MeetJoin => c.meet_join_theorem(),
            Theorem::MonotoneCovers => c.monotone_covers(),
            Theorem::OrderDiagnostics => Ok(c.diagnostics().as_check()),
            Theorem::OrderEquivalence => c.order_equivalence(),
            Theorem::OrthoJoin => c.ortho_join_check(),
            Theorem::OrthogonalityAxioms => Ok(c.orthogonality_axioms().as_check()),
            Theorem::OrthogonalityCover => c.orthogonality_cover(),
            Theorem::OrthomodularDecomposition => c.decomposition_check(),
            Theorem::PqBaerSemiprime => Ok(if flags.is_pq_baer_star && !flags.is_semiprime {
                Check::fail(witnesses.is_semiprime.clone().unwrap_or_default())
            } else {
                Check::pass()
            }),
            Theorem::Problem2 => c.problem2_check().map(|r| r.theorem_form),
            Theorem::Problem2TwoSided => c.problem2_check().map(|r| r.two_sided_form),
            Theorem::PseudoLattice => c.is_pseudo_lattice(),
            Theorem::QuasiOrthomodular => c.quasi_orthomodular_check().map(|q| q.as_check()),
            Theorem::ReducedRickartPqBaer => Ok(
                if flags.is_reduced && flags.is_rickart_star && !flags.is_pq_baer_star {
                    Check::fail(witnesses.is_pq_baer_star.clone().unwrap_or_default())
                } else {
                    Check::pass()
                },
            ),
            Theorem::SegmentOrthomodular => c.segments_check(),
            Theorem::SemiprimeBoundary => Ok(c.semiprime_boundary()),
            Theorem::SubtractivityBiconditional => c.subtractivity_check().map(|s| {
                s.biconditional.expect("two-invertibility checked by the gate")
            }),
            Theorem::SubtractivityForward => c.subtractivity_check().map(|s| s.forward),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub theorem: &'static str,
    pub status: Status,
    pub skip_reason: Option<&'static str>,
    pub witness: Option<Vec<ElementId>>,
    /// Whether every hypothesis of the theorem holds on this ring.
    pub hypotheses_met: bool,
    /// Error text when a check aborted instead of producing a witness.
    pub detail: Option<String>,
}

impl TheoremVerdict {
    /// A failure on a ring that satisfies every hypothesis.
    pub fn is_red_alert(&self) -> bool {
        self.status == Status::Fail && self.hypotheses_met
    }
}

pub fn verdict(theorem: Theorem, c: &Conrad) -> TheoremVerdict {
    let flags = &c.classification().flags;
    let unmet = theorem.hypotheses().iter().find(|h| !h.holds(flags));
    let base = TheoremVerdict {
        theorem: theorem.id(),
        status: Status::Pass,
        skip_reason: None,
        witness: None,
        hypotheses_met: unmet.is_none(),
        detail: None,
    };
    if let (Some(h), true) = (unmet, theorem.gated()) {
        return TheoremVerdict { status: Status::Skipped, skip_reason: Some(h.name()), ..base };
    }
    match theorem.evaluate(c) {
        Ok(check) if check.holds => base,
        Ok(check) => TheoremVerdict { status: Status::Fail, witness: check.witness, ..base },
        Err(e) => TheoremVerdict {
            status: Status::Fail,
            witness: Some(Vec::new()),
            detail: Some(e.to_string()),
            ..base
        },
    }
}

/// Run every theorem, in id order.
pub fn run_suite(ring: &StarRing) -> Vec<TheoremVerdict> {
    let c = Conrad::new(ring);
    Theorem::ALL.iter().map(|&t| verdict(t, &c)).collect()
}

/// Re-run a single theorem on the ring described by `spec`.
pub fn replay(spec: &RingSpec, theorem_id: &str, limits: &Limits) -> Result<TheoremVerdict> {
    let theorem = Theorem::from_id(theorem_id)?;
    let ring = spec.realize(limits)?;
    Ok(verdict(theorem, &Conrad::new(&ring)))
}
