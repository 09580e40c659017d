//! Projections, annihilators, classification and central covers.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::ring::{ElementId, StarRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnihilatorResult {
    pub kind: Side,
    /// The set whose annihilator was taken (for principal annihilators,
    /// the single generator `a` of `aR`).
    pub generators: Vec<ElementId>,
    pub elements: Vec<ElementId>,
    /// Projection `e` with `elements = eR` (right) or `Re` (left).
    pub principal_projection: Option<ElementId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub is_semiprime: bool,
    pub is_reduced: bool,
    pub is_abelian: bool,
    pub is_rickart_star: bool,
    pub is_pq_baer_star: bool,
    pub is_two_invertible: bool,
}

/// Failure witness per flag; `None` exactly when the flag is true.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub is_semiprime: Option<Vec<ElementId>>,
    pub is_reduced: Option<Vec<ElementId>>,
    pub is_abelian: Option<Vec<ElementId>>,
    pub is_rickart_star: Option<Vec<ElementId>>,
    pub is_pq_baer_star: Option<Vec<ElementId>>,
    pub is_two_invertible: Option<Vec<ElementId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub label: String,
    pub order: usize,
    pub flags: Flags,
    pub witnesses: Witnesses,
    pub covers: Vec<Option<ElementId>>,
    /// Pairs `[a, e]` with `r(aR) = eR`; filled only for p.q.-Baer *-rings.
    pub pq_baer_witnesses: Vec<[ElementId; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralCoverTable {
    pub label: String,
    pub cover: Vec<Option<ElementId>>,
}

impl CentralCoverTable {
    pub fn get(&self, x: ElementId) -> Option<ElementId> {
        self.cover[x.index()]
    }

    pub fn require(&self, x: ElementId) -> Result<ElementId> {
        self.get(x).ok_or(Error::CoverAbsent(x))
    }

    pub fn first_absent(&self) -> Option<ElementId> {
        self.cover.iter().position(Option::is_none).map(|i| ElementId(i as u32))
    }

    pub fn is_total(&self) -> bool {
        self.first_absent().is_none()
    }
}

pub(crate) fn bitset(n: usize, pred: impl Fn(ElementId) -> bool) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for i in 0..n {
        if pred(ElementId(i as u32)) {
            s.insert(i);
        }
    }
    s
}

pub(crate) fn members(s: &FixedBitSet) -> Vec<ElementId> {
    s.ones().map(|i| ElementId(i as u32)).collect()
}

pub fn idempotents(r: &StarRing) -> Vec<ElementId> {
    r.elements().filter(|&e| r.mul(e, e) == e).collect()
}

pub fn projections(r: &StarRing) -> Vec<ElementId> {
    r.elements().filter(|&e| r.mul(e, e) == e && r.star(e) == e).collect()
}

pub fn is_central(r: &StarRing, z: ElementId) -> bool {
    r.elements().all(|x| r.mul(z, x) == r.mul(x, z))
}

pub fn center(r: &StarRing) -> Vec<ElementId> {
    r.elements().filter(|&z| is_central(r, z)).collect()
}

pub fn central_projections(r: &StarRing) -> Vec<ElementId> {
    projections(r).into_iter().filter(|&e| is_central(r, e)).collect()
}

pub fn is_central_projection(r: &StarRing, e: ElementId) -> bool {
    r.mul(e, e) == e && r.star(e) == e && is_central(r, e)
}

/// `{x : bx = 0 for all b in B}`
pub fn right_annihilator(r: &StarRing, set: &[ElementId]) -> AnnihilatorResult {
    Structure::new(r).right_annihilator(set)
}

/// `{x : xb = 0 for all b in B}`
pub fn left_annihilator(r: &StarRing, set: &[ElementId]) -> AnnihilatorResult {
    Structure::new(r).left_annihilator(set)
}

/// `r(aR) = {x : a r x = 0 for all r}`
pub fn right_ann_principal(r: &StarRing, a: ElementId) -> AnnihilatorResult {
    Structure::new(r).right_ann_principal(a)
}

pub fn classify(r: &StarRing) -> ClassificationReport {
    Structure::new(r).classify()
}

/// Least central projection `h` with `hx = x`, if the candidate set has a
/// least element under `e <= f  <=>  e = ef`.
pub fn central_cover(r: &StarRing, x: ElementId) -> Option<ElementId> {
    least_cover(r, &central_projections(r), x)
}

pub fn cover_table(r: &StarRing) -> CentralCoverTable {
    Structure::new(r).covers().clone()
}

pub fn verify_cover_lemma(r: &StarRing, x: ElementId, e: ElementId) -> Result<bool> {
    Structure::new(r).verify_cover_lemma(x, e)
}

pub fn verify_annihilator_identity(r: &StarRing) -> Result<Check> {
    Structure::new(r).verify_annihilator_identity()
}

fn least_cover(r: &StarRing, central: &[ElementId], x: ElementId) -> Option<ElementId> {
    let candidates: Vec<ElementId> = central.iter().copied().filter(|&h| r.mul(h, x) == x).collect();
    candidates
        .iter()
        .copied()
        .find(|&h0| candidates.iter().all(|&h| r.mul(h0, h) == h0))
}

/// Cached structural data for one ring.
pub struct Structure<'r> {
    ring: &'r StarRing,
    projections: Vec<ElementId>,
    central: Vec<ElementId>,
    /// `eR -> e` for every projection `e`.
    right_generated: HashMap<FixedBitSet, ElementId>,
    /// `Re -> e` for every projection `e`.
    left_generated: HashMap<FixedBitSet, ElementId>,
    covers: CentralCoverTable,
}

impl<'r> Structure<'r> {
    pub fn new(ring: &'r StarRing) -> Self {
        let projections = projections(ring);
        let central: Vec<ElementId> =
            projections.iter().copied().filter(|&e| is_central(ring, e)).collect();
        let right_generated = projections
            .iter()
            .map(|&e| (principal_right_set(ring, e), e))
            .collect();
        let left_generated = projections
            .iter()
            .map(|&e| (principal_left_set(ring, e), e))
            .collect();
        let cover = ring
            .elements()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&x| least_cover(ring, &central, x))
            .collect();
        Structure {
            ring,
            projections,
            central,
            right_generated,
            left_generated,
            covers: CentralCoverTable { label: ring.label().to_string(), cover },
        }
    }

    pub fn ring(&self) -> &'r StarRing {
        self.ring
    }

    pub fn projections(&self) -> &[ElementId] {
        &self.projections
    }

    pub fn central_projections(&self) -> &[ElementId] {
        &self.central
    }

    pub fn covers(&self) -> &CentralCoverTable {
        &self.covers
    }

    pub(crate) fn right_generator(&self, s: &FixedBitSet) -> Option<ElementId> {
        self.right_generated.get(s).copied()
    }

    pub(crate) fn left_generator(&self, s: &FixedBitSet) -> Option<ElementId> {
        self.left_generated.get(s).copied()
    }

    /// `r(aR)` as a bit set.
    pub(crate) fn right_ann_principal_set(&self, a: ElementId) -> FixedBitSet {
        let r = self.ring;
        let ar: Vec<ElementId> = r.elements().map(|t| r.mul(a, t)).collect();
        bitset(r.order(), |x| ar.iter().all(|&y| r.mul(y, x) == r.zero()))
    }

    /// `l(Ra)` as a bit set.
    pub(crate) fn left_ann_principal_set(&self, a: ElementId) -> FixedBitSet {
        let r = self.ring;
        let ra: Vec<ElementId> = r.elements().map(|t| r.mul(t, a)).collect();
        bitset(r.order(), |x| ra.iter().all(|&y| r.mul(x, y) == r.zero()))
    }

    pub fn right_annihilator(&self, set: &[ElementId]) -> AnnihilatorResult {
        let r = self.ring;
        let s = bitset(r.order(), |x| set.iter().all(|&b| r.mul(b, x) == r.zero()));
        AnnihilatorResult {
            kind: Side::Right,
            generators: set.to_vec(),
            principal_projection: self.right_generator(&s),
            elements: members(&s),
        }
    }

    pub fn left_annihilator(&self, set: &[ElementId]) -> AnnihilatorResult {
        let r = self.ring;
        let s = bitset(r.order(), |x| set.iter().all(|&b| r.mul(x, b) == r.zero()));
        AnnihilatorResult {
            kind: Side::Left,
            generators: set.to_vec(),
            principal_projection: self.left_generator(&s),
            elements: members(&s),
        }
    }

    pub fn right_ann_principal(&self, a: ElementId) -> AnnihilatorResult {
        let s = self.right_ann_principal_set(a);
        AnnihilatorResult {
            kind: Side::Right,
            generators: vec![a],
            principal_projection: self.right_generator(&s),
            elements: members(&s),
        }
    }

    pub fn classify(&self) -> ClassificationReport {
        let r = self.ring;
        let ids: Vec<ElementId> = r.elements().collect();
        let zero = r.zero();

        let semiprime = ids
            .par_iter()
            .find_first(|&&a| a != zero && ids.iter().all(|&t| r.mul3(a, t, a) == zero))
            .map(|&a| vec![a]);
        let reduced = ids.iter().find(|&&a| a != zero && r.mul(a, a) == zero).map(|&a| vec![a]);
        let abelian = idempotents(r).into_iter().find_map(|e| {
            ids.iter().find(|&&x| r.mul(e, x) != r.mul(x, e)).map(|&x| vec![e, x])
        });
        let rickart = ids
            .par_iter()
            .find_first(|&&a| self.right_generator(&bitset(r.order(), |x| r.mul(a, x) == zero)).is_none())
            .map(|&a| vec![a]);
        let pq_generators: Vec<Option<ElementId>> = ids
            .par_iter()
            .map(|&a| self.right_generator(&self.right_ann_principal_set(a)))
            .collect();
        let pq_baer = pq_generators.iter().position(Option::is_none).map(|i| vec![ids[i]]);
        let pq_baer_witnesses = if pq_baer.is_none() {
            ids.iter().zip(&pq_generators).map(|(&a, e)| [a, e.unwrap()]).collect()
        } else {
            Vec::new()
        };
        let two = r.two();
        let two_invertible = if ids.iter().any(|&u| r.mul(two, u) == r.one()) {
            None
        } else {
            Some(vec![two])
        };

        ClassificationReport {
            label: r.label().to_string(),
            order: r.order(),
            flags: Flags {
                is_semiprime: semiprime.is_none(),
                is_reduced: reduced.is_none(),
                is_abelian: abelian.is_none(),
                is_rickart_star: rickart.is_none(),
                is_pq_baer_star: pq_baer.is_none(),
                is_two_invertible: two_invertible.is_none(),
            },
            witnesses: Witnesses {
                is_semiprime: semiprime,
                is_reduced: reduced,
                is_abelian: abelian,
                is_rickart_star: rickart,
                is_pq_baer_star: pq_baer,
                is_two_invertible: two_invertible,
            },
            covers: self.covers.cover.clone(),
            pq_baer_witnesses,
        }
    }

    /// True iff `xe = x` and `xRy = 0` implies `ey = 0`. When true, the
    /// cover of `x` must be `e`; a mismatch is reported as an error.
    pub fn verify_cover_lemma(&self, x: ElementId, e: ElementId) -> Result<bool> {
        let r = self.ring;
        if !self.central.contains(&e) {
            return Err(Error::NotCentralProjection(e));
        }
        if r.mul(x, e) != x {
            return Ok(false);
        }
        let ann = self.right_ann_principal_set(x);
        if ann.ones().any(|y| r.mul(e, ElementId(y as u32)) != r.zero()) {
            return Ok(false);
        }
        match self.covers.get(x) {
            Some(c) if c == e => Ok(true),
            other => Err(Error::Verification(format!(
                "{x}: lemma conditions hold for {e} but central cover is {other:?}"
            ))),
        }
    }

    /// For every `x` with `e = C(x)`:
    /// `r(xR) = r(eR) = l(Rx) = l(Re) = (1-e)R = R(1-e)`, and
    /// `xRy = 0 <=> yRx = 0 <=> ey = 0`. The witness is `(x, y)` with `y`
    /// the first element on which two of these sets disagree.
    pub fn verify_annihilator_identity(&self) -> Result<Check> {
        let r = self.ring;
        let n = r.order();
        if let Some(a) = self.first_non_pq_baer() {
            return Err(Error::NotPqBaer(a));
        }
        let ids: Vec<ElementId> = r.elements().collect();
        let witness = ids.par_iter().find_map_first(|&x| {
            let e = self.covers.get(x)?;
            let comp = r.sub(r.one(), e);
            let sets = [
                self.right_ann_principal_set(x),
                self.right_ann_principal_set(e),
                self.left_ann_principal_set(x),
                self.left_ann_principal_set(e),
                principal_right_set(r, comp),
                principal_left_set(r, comp),
                bitset(n, |y| r.mul(e, y) == r.zero()),
            ];
            (0..n)
                .find(|&y| sets.iter().any(|s| s.contains(y) != sets[0].contains(y)))
                .map(|y| vec![x, ElementId(y as u32)])
        });
        if let Some(x) = self.covers.first_absent() {
            return Ok(Check::fail(vec![x]));
        }
        Ok(Check::from_witness(witness))
    }

    pub(crate) fn first_non_pq_baer(&self) -> Option<ElementId> {
        self.ring
            .elements()
            .collect::<Vec<_>>()
            .par_iter()
            .find_first(|&&a| self.right_generator(&self.right_ann_principal_set(a)).is_none())
            .copied()
    }
}

pub(crate) fn principal_right_set(r: &StarRing, a: ElementId) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(r.order());
    for t in r.elements() {
        s.insert(r.mul(a, t).index());
    }
    s
}

pub(crate) fn principal_left_set(r: &StarRing, a: ElementId) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(r.order());
    for t in r.elements() {
        s.insert(r.mul(t, a).index());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_matrix, build_modular, build_product, Limits};

    fn z(n: u64) -> StarRing {
        build_modular(n, &Limits::default()).unwrap()
    }

    fn m2z2() -> StarRing {
        build_matrix(&z(2), 2, &Limits::default()).unwrap()
    }

    fn ids(v: &[u32]) -> Vec<ElementId> {
        v.iter().map(|&i| ElementId(i)).collect()
    }

    #[test]
    fn idempotents_and_projections() {
        assert_eq!(idempotents(&z(6)), ids(&[0, 1, 3, 4]));
        assert_eq!(idempotents(&z(2)), ids(&[0, 1]));
        let z2z2 = build_product(&[z(2), z(2)], &Limits::default()).unwrap();
        assert_eq!(idempotents(&z2z2).len(), 4);
        assert_eq!(projections(&z(6)), ids(&[0, 1, 3, 4]));
        assert_eq!(projections(&z(1)), ids(&[0]));
        let m = m2z2();
        let p = projections(&m);
        // E_11 = 1, E_22 = 8, E_12 = 2
        assert!(p.contains(&ElementId(1)) && p.contains(&ElementId(8)));
        assert!(!p.contains(&ElementId(2)));
    }

    #[test]
    fn centers() {
        assert_eq!(central_projections(&m2z2()), ids(&[0, 9]));
        assert_eq!(center(&z(5)).len(), 5);
        assert_eq!(central_projections(&z(6)), ids(&[0, 1, 3, 4]));
    }

    #[test]
    fn annihilators() {
        let z6 = z(6);
        let a = right_annihilator(&z6, &ids(&[2]));
        assert_eq!(a.elements, ids(&[0, 3]));
        assert_eq!(a.principal_projection, Some(ElementId(3)));
        let all = right_annihilator(&z6, &ids(&[0]));
        assert_eq!(all.elements.len(), 6);
        assert_eq!(all.principal_projection, Some(z6.one()));
        let none = left_annihilator(&z6, &[z6.one()]);
        assert_eq!(none.elements, ids(&[0]));
        assert_eq!(none.principal_projection, Some(ElementId(0)));
        assert_eq!(none.kind, Side::Left);
    }

    #[test]
    fn principal_annihilators() {
        let z6 = z(6);
        let a = right_ann_principal(&z6, ElementId(4));
        assert_eq!(a.elements, ids(&[0, 3]));
        assert_eq!(a.principal_projection, Some(ElementId(3)));
        let zero = right_ann_principal(&z6, z6.zero());
        assert_eq!(zero.elements.len(), 6);
        assert_eq!(zero.principal_projection, Some(z6.one()));
        let m = m2z2();
        for a in m.elements().skip(1) {
            let res = right_ann_principal(&m, a);
            assert_eq!(res.elements, ids(&[0]));
            assert_eq!(res.principal_projection, Some(ElementId(0)));
        }
    }

    #[test]
    fn classify_z6() {
        let rep = classify(&z(6));
        let f = &rep.flags;
        assert!(f.is_semiprime && f.is_reduced && f.is_abelian && f.is_rickart_star && f.is_pq_baer_star);
        assert!(!f.is_two_invertible);
        assert_eq!(rep.witnesses.is_two_invertible, Some(ids(&[2])));
        assert_eq!(rep.pq_baer_witnesses.len(), 6);
        assert_eq!(rep.pq_baer_witnesses[2], [ElementId(2), ElementId(3)]);
    }

    #[test]
    fn classify_z4_not_semiprime() {
        let rep = classify(&z(4));
        assert!(!rep.flags.is_semiprime);
        assert_eq!(rep.witnesses.is_semiprime, Some(ids(&[2])));
        assert!(!rep.flags.is_pq_baer_star);
        assert!(rep.pq_baer_witnesses.is_empty());
    }

    #[test]
    fn classify_m2z2() {
        let rep = classify(&m2z2());
        assert!(rep.flags.is_pq_baer_star);
        assert!(!rep.flags.is_abelian);
        // E_11 * E_12 != E_12 * E_11
        assert_eq!(rep.witnesses.is_abelian, Some(ids(&[1, 2])));
    }

    #[test]
    fn witness_presence_matches_flags() {
        for ring in [z(1), z(4), z(6), z(8), z(15), m2z2()] {
            let rep = classify(&ring);
            let pairs = [
                (rep.flags.is_semiprime, &rep.witnesses.is_semiprime),
                (rep.flags.is_reduced, &rep.witnesses.is_reduced),
                (rep.flags.is_abelian, &rep.witnesses.is_abelian),
                (rep.flags.is_rickart_star, &rep.witnesses.is_rickart_star),
                (rep.flags.is_pq_baer_star, &rep.witnesses.is_pq_baer_star),
                (rep.flags.is_two_invertible, &rep.witnesses.is_two_invertible),
            ];
            for (flag, w) in pairs {
                assert_eq!(flag, w.is_none(), "{}", ring.label());
            }
            if rep.flags.is_reduced || rep.flags.is_pq_baer_star {
                assert!(rep.flags.is_semiprime);
            }
        }
    }

    #[test]
    fn covers() {
        let z6 = z(6);
        assert_eq!(central_cover(&z6, ElementId(2)), Some(ElementId(4)));
        assert_eq!(central_cover(&z6, ElementId(0)), Some(ElementId(0)));
        let table = cover_table(&z6);
        assert_eq!(table.cover, [0, 1, 4, 3, 4, 1].map(|i| Some(ElementId(i))));
        let m = m2z2();
        for x in m.elements().skip(1) {
            assert_eq!(central_cover(&m, x), Some(m.one()));
        }
    }

    #[test]
    fn cover_lemma() {
        let z6 = z(6);
        assert!(verify_cover_lemma(&z6, ElementId(2), ElementId(4)).unwrap());
        assert!(!verify_cover_lemma(&z6, ElementId(2), ElementId(1)).unwrap());
        assert!(verify_cover_lemma(&z6, ElementId(0), ElementId(0)).unwrap());
        assert!(matches!(
            verify_cover_lemma(&z6, ElementId(2), ElementId(2)),
            Err(Error::NotCentralProjection(_))
        ));
    }

    #[test]
    fn annihilator_identity() {
        assert!(verify_annihilator_identity(&z(6)).unwrap().holds);
        assert!(verify_annihilator_identity(&m2z2()).unwrap().holds);
        assert!(matches!(verify_annihilator_identity(&z(4)), Err(Error::NotPqBaer(_))));
    }
}
