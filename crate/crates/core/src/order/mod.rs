//! Conrad's relation `a <= b  <=>  arb = ara for all r`.
//!
//! The relation is always computed by brute force and then diagnosed; the
//! central-cover characterization `a = C(a) b` is computed separately and
//! compared against it, never substituted for it.

mod hasse;
mod laws;
mod ortho;
mod segment;

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::ring::{ElementId, StarRing};
use crate::structure::{
    principal_left_set, principal_right_set, CentralCoverTable, ClassificationReport, Structure,
};

pub use hasse::{emit_hasse, hasse_edges};
pub use ortho::{ideal_intersection, principal_right_ideal, OrthogonalityAxioms, Problem2Report, QuasiOrthomodular};
pub use segment::{SegmentPoset, SegmentWitness};

/// `a r b == a r a` for every `r`.
pub fn leq_bruteforce(r: &StarRing, a: ElementId, b: ElementId) -> bool {
    r.elements().all(|t| r.mul3(a, t, b) == r.mul3(a, t, a))
}

/// `a* r b == a* r a` for every `r`.
pub fn leq_star_bruteforce(r: &StarRing, a: ElementId, b: ElementId) -> bool {
    let s = r.star(a);
    r.elements().all(|t| r.mul3(s, t, b) == r.mul3(s, t, a))
}

/// `a == C(a) b`.
pub fn leq_cover(r: &StarRing, covers: &CentralCoverTable, a: ElementId, b: ElementId) -> Result<bool> {
    Ok(a == r.mul(covers.require(a)?, b))
}

/// Partial-order axioms of the computed relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub reflexive: Check,
    pub antisymmetric: Check,
    pub transitive: Check,
}

impl Diagnostics {
    pub fn is_partial_order(&self) -> bool {
        self.reflexive.holds && self.antisymmetric.holds && self.transitive.holds
    }

    /// First failing axiom and its witness.
    pub fn first_failure(&self) -> Option<(&'static str, &[ElementId])> {
        [
            ("reflexivity", &self.reflexive),
            ("antisymmetry", &self.antisymmetric),
            ("transitivity", &self.transitive),
        ]
        .into_iter()
        .find_map(|(name, c)| c.witness.as_deref().map(|w| (name, w)))
    }

    pub fn as_check(&self) -> Check {
        self.reflexive
            .clone()
            .and_then(|| self.antisymmetric.clone())
            .and_then(|| self.transitive.clone())
    }
}

/// Serializable summary of the relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderStructure {
    pub label: String,
    pub order: usize,
    /// `leq[a][b] == 1` iff `a <= b`.
    pub leq: Vec<Vec<u8>>,
    pub diagnostics: Diagnostics,
    /// `cub[a][b] == 1` iff some `c` has `a <= c` and `b <= c`.
    pub cub: Vec<Vec<u8>>,
    pub covers: CentralCoverTable,
}

/// Result of a meet or join: only defined under a common upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Exists(ElementId),
    NoCommonUpperBound,
}

impl Bound {
    pub fn element(self) -> Option<ElementId> {
        match self {
            Bound::Exists(e) => Some(e),
            Bound::NoCommonUpperBound => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubtractivityReport {
    /// `a <= b  =>  C(b - a) = C(b) - C(a)` on all pairs.
    pub forward: Check,
    /// The converse, only evaluated when 2 is invertible.
    pub biconditional: Option<Check>,
}

/// Conrad's relation on one ring, with the cached data every order-level
/// check needs.
pub struct Conrad<'r> {
    ring: &'r StarRing,
    structure: Structure<'r>,
    report: ClassificationReport,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    /// `orth[a] = {b : aRb = 0}`
    orth: Vec<FixedBitSet>,
    right_ideals: Vec<FixedBitSet>,
    left_ideals: OnceLock<Vec<FixedBitSet>>,
    diagnostics: Diagnostics,
    joins: OnceLock<Vec<Option<ElementId>>>,
    meets: OnceLock<Vec<Option<ElementId>>>,
}

impl<'r> Conrad<'r> {
    pub fn new(ring: &'r StarRing) -> Self {
        let n = ring.order();
        let structure = Structure::new(ring);
        let report = structure.classify();
        let ids: Vec<ElementId> = ring.elements().collect();

        let up: Vec<FixedBitSet> = ids
            .par_iter()
            .map(|&a| {
                let ara: Vec<ElementId> = ids.iter().map(|&t| ring.mul3(a, t, a)).collect();
                let at: Vec<ElementId> = ids.iter().map(|&t| ring.mul(a, t)).collect();
                let mut row = FixedBitSet::with_capacity(n);
                for b in &ids {
                    if at.iter().zip(&ara).all(|(&x, &y)| ring.mul(x, *b) == y) {
                        row.insert(b.index());
                    }
                }
                row
            })
            .collect();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.ones() {
                down[b].insert(a);
            }
        }
        let orth = ids.par_iter().map(|&a| structure.right_ann_principal_set(a)).collect();
        let right_ideals = ids.iter().map(|&a| principal_right_set(ring, a)).collect();
        let diagnostics = diagnose(&up);

        Conrad {
            ring,
            structure,
            report,
            up,
            down,
            orth,
            right_ideals,
            left_ideals: OnceLock::new(),
            diagnostics,
            joins: OnceLock::new(),
            meets: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &'r StarRing {
        self.ring
    }

    pub fn structure(&self) -> &Structure<'r> {
        &self.structure
    }

    pub fn classification(&self) -> &ClassificationReport {
        &self.report
    }

    pub fn covers(&self) -> &CentralCoverTable {
        self.structure.covers()
    }

    pub fn diagnostics(&self) -> &Diagnostics {
        &self.diagnostics
    }

    pub fn is_pq_baer(&self) -> bool {
        self.report.flags.is_pq_baer_star
    }

    pub(crate) fn require_pq_baer(&self) -> Result<()> {
        match &self.report.witnesses.is_pq_baer_star {
            None => Ok(()),
            Some(w) => Err(Error::NotPqBaer(w[0])),
        }
    }

    pub(crate) fn require_covers(&self) -> Result<()> {
        match self.covers().first_absent() {
            None => Ok(()),
            Some(x) => Err(Error::CoverAbsent(x)),
        }
    }

    /// Cover of `x`; only call after `require_covers`.
    #[inline]
    pub(crate) fn c(&self, x: ElementId) -> ElementId {
        self.covers().get(x).expect("covers checked")
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.up[a.index()].contains(b.index())
    }

    pub(crate) fn up(&self, a: ElementId) -> &FixedBitSet {
        &self.up[a.index()]
    }

    pub(crate) fn down(&self, a: ElementId) -> &FixedBitSet {
        &self.down[a.index()]
    }

    pub(crate) fn orth_set(&self, a: ElementId) -> &FixedBitSet {
        &self.orth[a.index()]
    }

    pub(crate) fn right_ideal(&self, a: ElementId) -> &FixedBitSet {
        &self.right_ideals[a.index()]
    }

    pub(crate) fn left_ideal(&self, a: ElementId) -> &FixedBitSet {
        &self.left_ideals.get_or_init(|| {
            self.ring.elements().map(|x| principal_left_set(self.ring, x)).collect()
        })[a.index()]
    }

    pub fn ids(&self) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator {
        self.ring.elements()
    }

    /// Order-theoretic common-upper-bound existence.
    pub fn cub(&self, a: ElementId, b: ElementId) -> bool {
        !self.up[a.index()].is_disjoint(&self.up[b.index()])
    }

    /// Least element of `set` in the computed relation.
    pub(crate) fn least_in(&self, set: &FixedBitSet) -> Option<ElementId> {
        set.ones()
            .find(|&u| set.is_subset(&self.up[u]))
            .map(|u| ElementId(u as u32))
    }

    /// Greatest element of `set` in the computed relation.
    pub(crate) fn greatest_in(&self, set: &FixedBitSet) -> Option<ElementId> {
        set.ones()
            .find(|&g| set.is_subset(&self.down[g]))
            .map(|g| ElementId(g as u32))
    }

    /// Least upper bound found by scanning all upper bounds.
    pub fn lub(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        if let Some(t) = self.joins.get() {
            return t[a.index() * self.ring.order() + b.index()];
        }
        self.lub_scan(a, b)
    }

    /// Greatest lower bound found by scanning all lower bounds.
    pub fn glb(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        if let Some(t) = self.meets.get() {
            return t[a.index() * self.ring.order() + b.index()];
        }
        self.glb_scan(a, b)
    }

    fn lub_scan(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        let mut ub = self.up[a.index()].clone();
        ub.intersect_with(&self.up[b.index()]);
        self.least_in(&ub)
    }

    fn glb_scan(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        let mut lb = self.down[a.index()].clone();
        lb.intersect_with(&self.down[b.index()]);
        self.greatest_in(&lb)
    }

    /// Fill the full lub/glb tables; later `lub`/`glb` calls become lookups.
    pub fn precompute_bounds(&self) {
        let n = self.ring.order();
        self.joins.get_or_init(|| {
            (0..n * n)
                .into_par_iter()
                .map(|i| self.lub_scan(ElementId((i / n) as u32), ElementId((i % n) as u32)))
                .collect()
        });
        self.meets.get_or_init(|| {
            (0..n * n)
                .into_par_iter()
                .map(|i| self.glb_scan(ElementId((i / n) as u32), ElementId((i % n) as u32)))
                .collect()
        });
    }

    pub fn structure_summary(&self) -> OrderStructure {
        let n = self.ring.order();
        let matrix = |f: &dyn Fn(ElementId, ElementId) -> bool| -> Vec<Vec<u8>> {
            self.ids().map(|a| self.ids().map(|b| f(a, b) as u8).collect()).collect()
        };
        debug_assert_eq!(self.up.len(), n);
        OrderStructure {
            label: self.ring.label().to_string(),
            order: n,
            leq: matrix(&|a, b| self.leq(a, b)),
            diagnostics: self.diagnostics.clone(),
            cub: matrix(&|a, b| self.cub(a, b)),
            covers: self.covers().clone(),
        }
    }

    pub fn leq_cover(&self, a: ElementId, b: ElementId) -> Result<bool> {
        leq_cover(self.ring, self.covers(), a, b)
    }

    /// `a C(b) == b C(a)`. On a p.q.-Baer *-ring the formula must agree with
    /// order-theoretic common-upper-bound existence; disagreement is an error.
    pub fn has_cub(&self, a: ElementId, b: ElementId) -> Result<bool> {
        let r = self.ring;
        let (ca, cb) = (self.covers().require(a)?, self.covers().require(b)?);
        let formula = r.mul(a, cb) == r.mul(b, ca);
        if self.is_pq_baer() && formula != self.cub(a, b) {
            return Err(Error::Verification(format!(
                "common upper bound of ({a}, {b}): formula says {formula}, order says {}",
                self.cub(a, b)
            )));
        }
        Ok(formula)
    }

    /// `a /\ b = a C(b)` when a common upper bound exists, checked against
    /// the greatest lower bound in the computed relation.
    pub fn meet(&self, a: ElementId, b: ElementId) -> Result<Bound> {
        if !self.has_cub(a, b)? {
            return Ok(Bound::NoCommonUpperBound);
        }
        let m = self.ring.mul(a, self.c(b));
        match self.glb(a, b) {
            Some(g) if g == m => Ok(Bound::Exists(m)),
            other => Err(Error::Verification(format!(
                "meet({a}, {b}): formula gives {m}, order gives {other:?}"
            ))),
        }
    }

    /// `a \/ b = a + b - a C(b)` when a common upper bound exists, checked
    /// against the least upper bound in the computed relation.
    pub fn join(&self, a: ElementId, b: ElementId) -> Result<Bound> {
        if !self.has_cub(a, b)? {
            return Ok(Bound::NoCommonUpperBound);
        }
        let r = self.ring;
        let j = r.sub(r.add(a, b), r.mul(a, self.c(b)));
        match self.lub(a, b) {
            Some(u) if u == j => Ok(Bound::Exists(j)),
            other => Err(Error::Verification(format!(
                "join({a}, {b}): formula gives {j}, order gives {other:?}"
            ))),
        }
    }

    /// `a C(b) == b C(a)` for all pairs.
    pub fn is_lattice(&self) -> Result<Check> {
        self.require_covers()?;
        let r = self.ring;
        Ok(self.first_pair_where(|a, b| r.mul(a, self.c(b)) != r.mul(b, self.c(a))))
    }

    /// Every pair has an order-theoretic meet and join.
    pub fn is_lattice_direct(&self) -> Check {
        self.precompute_bounds();
        self.first_pair_where(|a, b| self.glb(a, b).is_none() || self.lub(a, b).is_none())
    }

    /// Every pair with a common upper bound has a meet and a join.
    pub fn is_pseudo_lattice(&self) -> Result<Check> {
        self.require_covers()?;
        self.precompute_bounds();
        Ok(self.first_pair_where(|a, b| {
            self.cub(a, b) && (self.glb(a, b).is_none() || self.lub(a, b).is_none())
        }))
    }

    pub fn subtractivity_check(&self) -> Result<SubtractivityReport> {
        self.require_pq_baer()?;
        self.require_covers()?;
        let r = self.ring;
        let subtractive = |a: ElementId, b: ElementId| {
            self.c(r.sub(b, a)) == r.sub(self.c(b), self.c(a))
        };
        let forward = self.first_pair_where(|a, b| self.leq(a, b) && !subtractive(a, b));
        let biconditional = self
            .report
            .flags
            .is_two_invertible
            .then(|| self.first_pair_where(|a, b| self.leq(a, b) != subtractive(a, b)));
        Ok(SubtractivityReport { forward, biconditional })
    }

    /// Lexicographically first pair satisfying `bad`.
    pub(crate) fn first_pair_where(&self, bad: impl Fn(ElementId, ElementId) -> bool + Sync) -> Check {
        let n = self.ring.order() as u32;
        let w = (0..n).into_par_iter().find_map_first(|a| {
            (0..n)
                .find(|&b| bad(ElementId(a), ElementId(b)))
                .map(|b| vec![ElementId(a), ElementId(b)])
        });
        Check::from_witness(w)
    }
}

pub fn build_order(r: &StarRing) -> OrderStructure {
    Conrad::new(r).structure_summary()
}

fn diagnose(up: &[FixedBitSet]) -> Diagnostics {
    let n = up.len();
    let id = |i: usize| ElementId(i as u32);
    let reflexive = Check::from_witness((0..n).find(|&a| !up[a].contains(a)).map(|a| vec![id(a)]));
    let antisymmetric = Check::from_witness((0..n).find_map(|a| {
        up[a].ones().find(|&b| b != a && up[b].contains(a)).map(|b| vec![id(a), id(b)])
    }));
    let transitive = Check::from_witness((0..n).into_par_iter().find_map_first(|a| {
        up[a].ones().find_map(|b| {
            up[b].difference(&up[a]).next().map(|c| vec![id(a), id(b), id(c)])
        })
    }));
    Diagnostics { reflexive, antisymmetric, transitive }
}
