//! Initial segments `[0, m]` with the complement `a -> m - a`.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::Conrad;
use crate::check::Check;
use crate::error::Result;
use crate::ring::ElementId;
use crate::structure::members;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentWitness {
    pub condition: &'static str,
    pub elements: Vec<ElementId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentPoset {
    pub top: ElementId,
    pub elements: Vec<ElementId>,
    /// Induced order, indexed by position in `elements`.
    pub leq: Vec<Vec<u8>>,
    /// `[a, m - a]` for each element `a`.
    pub complement: Vec<[ElementId; 2]>,
    pub orthocomplemented: bool,
    pub orthomodular: bool,
    /// `a <= (m - b)  <=>  aRb = 0` on the segment.
    pub locality: bool,
    pub witness: Option<SegmentWitness>,
}

struct Seg<'a, 'r> {
    order: &'a Conrad<'r>,
    top: ElementId,
    set: FixedBitSet,
}

impl Seg<'_, '_> {
    fn comp(&self, a: ElementId) -> ElementId {
        self.order.ring().sub(self.top, a)
    }

    fn elems(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.set.ones().map(|i| ElementId(i as u32))
    }

    fn join(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        let mut s = self.set.clone();
        s.intersect_with(self.order.up(a));
        s.intersect_with(self.order.up(b));
        self.order.least_in(&s)
    }

    fn meet(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        let mut s = self.set.clone();
        s.intersect_with(self.order.down(a));
        s.intersect_with(self.order.down(b));
        self.order.greatest_in(&s)
    }

    /// Segment orthogonality: `a <= b^perp`.
    fn perp(&self, a: ElementId, b: ElementId) -> bool {
        self.order.leq(a, self.comp(b))
    }

    fn pairs(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.elems().flat_map(move |a| self.elems().map(move |b| (a, b)))
    }

    fn first(
        &self,
        condition: &'static str,
        mut it: impl Iterator<Item = Vec<ElementId>>,
    ) -> Option<SegmentWitness> {
        it.next().map(|elements| SegmentWitness { condition, elements })
    }

    fn orthocomplement_failure(&self) -> Option<SegmentWitness> {
        let zero = ElementId::ZERO;
        let o = self.order;
        if !self.set.contains(zero.index()) || !self.set.contains(self.top.index()) {
            return Some(SegmentWitness { condition: "bounds", elements: vec![self.top] });
        }
        self.first("bounds", self.elems().filter(|&a| !o.leq(zero, a) || !o.leq(a, self.top)).map(|a| vec![a]))
            .or_else(|| {
                self.first(
                    "complement-closure",
                    self.elems().filter(|&a| !self.set.contains(self.comp(a).index())).map(|a| vec![a]),
                )
            })
            .or_else(|| {
                self.first(
                    "complement-involution",
                    self.elems().filter(|&a| self.comp(self.comp(a)) != a).map(|a| vec![a]),
                )
            })
            .or_else(|| {
                self.first(
                    "complement-order-reversing",
                    self.pairs()
                        .filter(|&(a, b)| o.leq(a, b) && !o.leq(self.comp(b), self.comp(a)))
                        .map(|(a, b)| vec![a, b]),
                )
            })
            .or_else(|| {
                self.first(
                    "complement-meet-join",
                    self.elems()
                        .filter(|&a| {
                            self.meet(a, self.comp(a)) != Some(zero)
                                || self.join(a, self.comp(a)) != Some(self.top)
                        })
                        .map(|a| vec![a]),
                )
            })
    }

    fn orthomodular_failure(&self) -> Option<SegmentWitness> {
        let o = self.order;
        self.first(
            "orthogonal-joins",
            self.pairs()
                .filter(|&(a, b)| self.perp(a, b) && self.join(a, b).is_none())
                .map(|(a, b)| vec![a, b]),
        )
        .or_else(|| {
            self.first(
                "orthomodular-decomposition",
                self.pairs()
                    .filter(|&(a, b)| {
                        o.leq(a, b)
                            && !self
                                .elems()
                                .any(|c| o.leq(c, self.comp(a)) && self.join(a, c) == Some(b))
                    })
                    .map(|(a, b)| vec![a, b]),
            )
        })
    }

    fn locality_failure(&self) -> Option<SegmentWitness> {
        self.first(
            "locality",
            self.pairs()
                .filter(|&(a, b)| self.perp(a, b) != self.order.orth_set(a).contains(b.index()))
                .map(|(a, b)| vec![a, b]),
        )
    }
}

impl Conrad<'_> {
    pub fn initial_segment(&self, top: ElementId) -> Result<SegmentPoset> {
        self.require_covers()?;
        let seg = Seg { order: self, top, set: self.down(top).clone() };
        let elements = members(&seg.set);
        let leq = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| self.leq(a, b) as u8).collect())
            .collect();
        let complement = elements.iter().map(|&a| [a, seg.comp(a)]).collect();

        let oc_fail = seg.orthocomplement_failure();
        let om_fail = if oc_fail.is_none() { seg.orthomodular_failure() } else { None };
        let loc_fail = seg.locality_failure();
        Ok(SegmentPoset {
            top,
            elements,
            leq,
            complement,
            orthocomplemented: oc_fail.is_none(),
            orthomodular: oc_fail.is_none() && om_fail.is_none(),
            locality: loc_fail.is_none(),
            witness: oc_fail.or(om_fail).or(loc_fail),
        })
    }

    /// If `x _|_p y` in `[0, p]` and `x, y <= q`, then `x _|_q y`; checked
    /// over every top `p` and every common upper bound `q`.
    pub fn segment_locality_across(&self) -> Check {
        let r = self.ring();
        let w = self.ids().find_map(|p| {
            self.down(p).ones().find_map(|x| {
                let x = ElementId(x as u32);
                self.down(p).ones().find_map(|y| {
                    let y = ElementId(y as u32);
                    if !self.leq(x, r.sub(p, y)) {
                        return None;
                    }
                    let mut tops = self.up(x).clone();
                    tops.intersect_with(self.up(y));
                    tops.ones()
                        .map(|q| ElementId(q as u32))
                        .find(|&q| !self.leq(x, r.sub(q, y)))
                        .map(|q| vec![p, x, y, q])
                })
            })
        });
        Check::from_witness(w)
    }
}
