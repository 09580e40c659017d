//! Finite unital *-rings stored as dense operation tables.
//!
//! Every ring is materialized into `order x order` addition and
//! multiplication tables plus an involution table. Index 0 is always the
//! additive identity. Construction runs the full axiom check, so every
//! `StarRing` in circulation is a genuine unital ring with involution.

mod spec;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use spec::{build_from_tables, build_matrix, build_modular, build_product, RingSpec, TableSpec};

/// Default upper bound on ring order.
pub const DEFAULT_ORDER_CAP: usize = 4096;

/// Environment variable that overrides [`DEFAULT_ORDER_CAP`].
pub const ORDER_CAP_ENV: &str = "STARLAB_ORDER_CAP";

/// Index of an element inside one particular ring.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const ZERO: ElementId = ElementId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// Bare index, so witness lists read as `[0, 2]` in messages.
impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<ElementId> for usize {
    fn from(e: ElementId) -> usize {
        e.index()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub order_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { order_cap: DEFAULT_ORDER_CAP }
    }
}

impl Limits {
    /// Default limits, with the cap taken from `STARLAB_ORDER_CAP` when set
    /// to a positive integer.
    pub fn from_env() -> Self {
        std::env::var(ORDER_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&cap| cap > 0)
            .map(|order_cap| Limits { order_cap })
            .unwrap_or_default()
    }

    pub(crate) fn check(&self, order: u128) -> Result<()> {
        if order > self.order_cap as u128 {
            Err(Error::CapExceeded { order, cap: self.order_cap })
        } else {
            Ok(())
        }
    }
}

/// Ring axioms checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    AdditiveIdentity,
    AdditiveInverse,
    AdditiveCommutativity,
    AdditiveAssociativity,
    MultiplicativeIdentity,
    MultiplicativeAssociativity,
    LeftDistributivity,
    RightDistributivity,
    StarAdditive,
    StarAntiMultiplicative,
    StarInvolutive,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::AdditiveIdentity => "additive identity",
            Axiom::AdditiveInverse => "additive inverse",
            Axiom::AdditiveCommutativity => "additive commutativity",
            Axiom::AdditiveAssociativity => "additive associativity",
            Axiom::MultiplicativeIdentity => "multiplicative identity",
            Axiom::MultiplicativeAssociativity => "multiplicative associativity",
            Axiom::LeftDistributivity => "left distributivity",
            Axiom::RightDistributivity => "right distributivity",
            Axiom::StarAdditive => "involution additivity",
            Axiom::StarAntiMultiplicative => "involution reverses products",
            Axiom::StarInvolutive => "involution has period two",
        };
        f.write_str(s)
    }
}

/// A validated finite unital ring with involution.
#[derive(Clone)]
pub struct StarRing {
    label: String,
    order: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    star: Vec<u32>,
    one: ElementId,
    render: Vec<String>,
}

impl fmt::Debug for StarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StarRing")
            .field("label", &self.label)
            .field("order", &self.order)
            .field("one", &self.one)
            .finish_non_exhaustive()
    }
}

type TriplePredicate<'a> = dyn Fn(usize, usize, usize) -> bool + Sync + 'a;

impl StarRing {
    /// Assemble a ring from flat row-major tables and run every axiom check.
    ///
    /// `render` holds a display string per element; pass `None` to label
    /// elements by index.
    pub fn from_tables(
        label: impl Into<String>,
        add: Vec<u32>,
        mul: Vec<u32>,
        star: Vec<u32>,
        one: u32,
        render: Option<Vec<String>>,
    ) -> Result<StarRing> {
        let order = star.len();
        if order == 0 {
            return Err(Error::MalformedTables("ring must have at least one element".into()));
        }
        if add.len() != order * order || mul.len() != order * order {
            return Err(Error::MalformedTables(format!(
                "expected {order}x{order} addition and multiplication tables"
            )));
        }
        let in_range = |t: &[u32]| t.iter().all(|&v| (v as usize) < order);
        if !in_range(&add) || !in_range(&mul) || !in_range(&star) || one as usize >= order {
            return Err(Error::MalformedTables("table entry out of range".into()));
        }
        let render = match render {
            Some(r) if r.len() == order => r,
            Some(_) => return Err(Error::MalformedTables("render length mismatch".into())),
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        let mut ring = StarRing {
            label: label.into(),
            order,
            add,
            mul,
            neg: Vec::new(),
            star,
            one: ElementId(one),
            render,
        };
        ring.validate()?;
        Ok(ring)
    }

    /// Build the tables by evaluating closures on element indices, then
    /// validate.
    pub fn tabulate(
        label: impl Into<String>,
        order: usize,
        one: u32,
        add: impl Fn(usize, usize) -> usize + Sync,
        mul: impl Fn(usize, usize) -> usize + Sync,
        star: impl Fn(usize) -> usize,
        render: Option<Vec<String>>,
    ) -> Result<StarRing> {
        let fill = |op: &(dyn Fn(usize, usize) -> usize + Sync)| -> Vec<u32> {
            (0..order * order)
                .into_par_iter()
                .map(|i| op(i / order, i % order) as u32)
                .collect()
        };
        let add_t = fill(&add);
        let mul_t = fill(&mul);
        let star_t = (0..order).map(|a| star(a) as u32).collect();
        StarRing::from_tables(label, add_t, mul_t, star_t, one, render)
    }

    fn validate(&mut self) -> Result<()> {
        let n = self.order;
        let add = |a: usize, b: usize| self.add[a * n + b] as usize;
        let mul = |a: usize, b: usize| self.mul[a * n + b] as usize;
        let star = |a: usize| self.star[a] as usize;
        let one = self.one.index();
        let fail = |axiom: Axiom, w: &[usize]| Error::Axiom {
            axiom,
            witness: w.iter().map(|&i| ElementId(i as u32)).collect(),
        };

        if let Some(x) = (0..n).find(|&x| add(0, x) != x || add(x, 0) != x) {
            return Err(fail(Axiom::AdditiveIdentity, &[x]));
        }
        let mut neg = vec![0u32; n];
        for (x, slot) in neg.iter_mut().enumerate() {
            match (0..n).find(|&y| add(x, y) == 0) {
                Some(y) => *slot = y as u32,
                None => return Err(fail(Axiom::AdditiveInverse, &[x])),
            }
        }
        if let Some((a, b)) = first_pair(n, |a, b| add(a, b) != add(b, a)) {
            return Err(fail(Axiom::AdditiveCommutativity, &[a, b]));
        }
        if let Some(x) = (0..n).find(|&x| mul(one, x) != x || mul(x, one) != x) {
            return Err(fail(Axiom::MultiplicativeIdentity, &[x]));
        }
        if let Some((a, b)) = first_pair(n, |a, b| star(add(a, b)) != add(star(a), star(b))) {
            return Err(fail(Axiom::StarAdditive, &[a, b]));
        }
        if let Some((a, b)) = first_pair(n, |a, b| star(mul(a, b)) != mul(star(b), star(a))) {
            return Err(fail(Axiom::StarAntiMultiplicative, &[a, b]));
        }
        if let Some(x) = (0..n).find(|&x| star(star(x)) != x) {
            return Err(fail(Axiom::StarInvolutive, &[x]));
        }
        let triple_axioms: [(Axiom, &TriplePredicate); 4] = [
            (Axiom::AdditiveAssociativity, &|a, b, c| add(add(a, b), c) == add(a, add(b, c))),
            (Axiom::MultiplicativeAssociativity, &|a, b, c| mul(mul(a, b), c) == mul(a, mul(b, c))),
            (Axiom::LeftDistributivity, &|a, b, c| mul(a, add(b, c)) == add(mul(a, b), mul(a, c))),
            (Axiom::RightDistributivity, &|a, b, c| mul(add(b, c), a) == add(mul(b, a), mul(c, a))),
        ];
        for (axiom, holds) in triple_axioms {
            if let Some(w) = first_triple(n, |a, b, c| !holds(a, b, c)) {
                return Err(fail(axiom, &w));
            }
        }
        self.neg = neg;
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn zero(&self) -> ElementId {
        ElementId::ZERO
    }

    #[inline]
    pub fn one(&self) -> ElementId {
        self.one
    }

    /// `1 + 1`.
    pub fn two(&self) -> ElementId {
        self.add(self.one, self.one)
    }

    /// Validate an externally supplied index against this ring.
    pub fn element(&self, index: usize) -> Result<ElementId> {
        if index < self.order {
            Ok(ElementId(index as u32))
        } else {
            Err(Error::ForeignElement { index, order: self.order })
        }
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator {
        (0..self.order as u32).map(ElementId)
    }

    #[inline]
    pub fn add(&self, a: ElementId, b: ElementId) -> ElementId {
        debug_assert!(a.index() < self.order && b.index() < self.order);
        ElementId(self.add[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        debug_assert!(a.index() < self.order && b.index() < self.order);
        ElementId(self.mul[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: ElementId) -> ElementId {
        ElementId(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: ElementId, b: ElementId) -> ElementId {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn star(&self, a: ElementId) -> ElementId {
        ElementId(self.star[a.index()])
    }

    /// `a * r * b`
    #[inline]
    pub fn mul3(&self, a: ElementId, r: ElementId, b: ElementId) -> ElementId {
        self.mul(self.mul(a, r), b)
    }

    /// Display string for an element (tuple or matrix form for structured
    /// carriers, the index otherwise).
    pub fn render(&self, a: ElementId) -> &str {
        &self.render[a.index()]
    }

    pub fn is_commutative(&self) -> bool {
        self.first_noncommuting_pair().is_none()
    }

    pub(crate) fn first_noncommuting_pair(&self) -> Option<(ElementId, ElementId)> {
        first_pair(self.order, |a, b| self.mul[a * self.order + b] != self.mul[b * self.order + a])
            .map(|(a, b)| (ElementId(a as u32), ElementId(b as u32)))
    }

    /// Export as a table spec that rebuilds an identical ring.
    pub fn to_table_spec(&self) -> TableSpec {
        let rows = |t: &[u32]| t.chunks(self.order).map(|r| r.to_vec()).collect();
        TableSpec {
            order: self.order,
            add: rows(&self.add),
            mul: rows(&self.mul),
            star: self.star.clone(),
            zero: 0,
            one: self.one.0,
        }
    }
}

/// First `(a, b)` in lexicographic order satisfying `pred`, searched in
/// parallel over the leading index.
pub(crate) fn first_pair(n: usize, pred: impl Fn(usize, usize) -> bool + Sync) -> Option<(usize, usize)> {
    (0..n)
        .into_par_iter()
        .find_map_first(|a| (0..n).find(|&b| pred(a, b)).map(|b| (a, b)))
}

pub(crate) fn first_triple(
    n: usize,
    pred: impl Fn(usize, usize, usize) -> bool + Sync,
) -> Option<[usize; 3]> {
    (0..n).into_par_iter().find_map_first(|a| {
        for b in 0..n {
            for c in 0..n {
                if pred(a, b, c) {
                    return Some([a, b, c]);
                }
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn_tables(n: usize) -> (Vec<u32>, Vec<u32>) {
        let mut add = Vec::new();
        let mut mul = Vec::new();
        for a in 0..n {
            for b in 0..n {
                add.push(((a + b) % n) as u32);
                mul.push(((a * b) % n) as u32);
            }
        }
        (add, mul)
    }

    #[test]
    fn accepts_z6_tables() {
        let (add, mul) = zn_tables(6);
        let r = StarRing::from_tables("Z_6", add, mul, (0..6).collect(), 1, None).unwrap();
        assert_eq!(r.order(), 6);
        assert_eq!(r.sub(ElementId(2), ElementId(5)), ElementId(3));
        assert_eq!(r.star(ElementId(5)), ElementId(5));
    }

    #[test]
    fn rejects_negation_as_involution_on_z3() {
        let (add, mul) = zn_tables(3);
        let err = StarRing::from_tables("bad", add, mul, vec![0, 2, 1], 1, None).unwrap_err();
        match err {
            Error::Axiom { axiom, witness } => {
                assert_eq!(axiom, Axiom::StarAntiMultiplicative);
                assert_eq!(witness, vec![ElementId(1), ElementId(1)]);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_unit() {
        let (add, mul) = zn_tables(4);
        // 3 is a unit but not the identity
        let err = StarRing::from_tables("bad", add, mul, (0..4).collect(), 3, None).unwrap_err();
        assert!(matches!(err, Error::Axiom { axiom: Axiom::MultiplicativeIdentity, .. }));
    }

    #[test]
    fn rejects_non_associative_multiplication() {
        let (add, mut mul) = zn_tables(3);
        mul[2 * 3 + 2] = 2;
        let err = StarRing::from_tables("bad", add, mul, (0..3).collect(), 1, None).unwrap_err();
        assert!(matches!(err, Error::Axiom { .. }));
    }

    #[test]
    fn rejects_out_of_range_entries() {
        let (mut add, mul) = zn_tables(2);
        add[0] = 7;
        let err = StarRing::from_tables("bad", add, mul, vec![0, 1], 1, None).unwrap_err();
        assert!(matches!(err, Error::MalformedTables(_)));
    }

    #[test]
    fn foreign_index_rejected() {
        let (add, mul) = zn_tables(2);
        let r = StarRing::from_tables("Z_2", add, mul, vec![0, 1], 1, None).unwrap();
        assert!(r.element(1).is_ok());
        assert!(matches!(r.element(2), Err(Error::ForeignElement { index: 2, order: 2 })));
    }

    #[test]
    fn lex_first_witnesses() {
        assert_eq!(first_pair(5, |a, b| a + b == 5 && a > 1), Some((2, 3)));
        assert_eq!(first_triple(4, |a, _, c| a == 1 && c == 3), Some([1, 0, 3]));
        assert_eq!(first_pair(3, |_, _| false), None);
    }
}
