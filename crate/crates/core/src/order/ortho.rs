use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use super::Conrad;
use crate::check::Check;
use crate::error::{Error, Result};
use crate::ring::{ElementId, StarRing};
use crate::structure::{members, principal_right_set};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityAxioms {
    /// `x _|_ y  =>  y _|_ x`
    pub symmetric: Check,
    /// `x <= y, y _|_ z  =>  x _|_ z`
    pub downward_closed: Check,
    /// `0 _|_ x`
    pub zero_orthogonal: Check,
}

impl OrthogonalityAxioms {
    pub fn as_check(&self) -> Check {
        self.symmetric
            .clone()
            .and_then(|| self.downward_closed.clone())
            .and_then(|| self.zero_orthogonal.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiOrthomodular {
    /// `x _|_ y  =>  x \/ y` exists
    pub orthogonal_joins: Check,
    /// `x <= y  =>  y = x \/ z` for some `z _|_ x`
    pub decomposition: Check,
    /// `x _|_ y, x _|_ z, y <= x \/ z  =>  y <= z`
    pub cancellation: Check,
}

impl QuasiOrthomodular {
    pub fn as_check(&self) -> Check {
        self.orthogonal_joins
            .clone()
            .and_then(|| self.decomposition.clone())
            .and_then(|| self.cancellation.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Problem2Report {
    /// `a <= c, b <= c, aR /\ bR = 0  =>  a + b <= c`
    pub theorem_form: Check,
    /// Same, additionally requiring `Ra /\ Rb = 0`.
    pub two_sided_form: Check,
}

pub fn principal_right_ideal(r: &StarRing, a: ElementId) -> Vec<ElementId> {
    members(&principal_right_set(r, a))
}

pub fn ideal_intersection(s1: &[ElementId], s2: &[ElementId]) -> Vec<ElementId> {
    let mut out: Vec<ElementId> = s1.iter().copied().filter(|x| s2.contains(x)).collect();
    out.sort();
    out.dedup();
    out
}

fn only_zero(a: &FixedBitSet, b: &FixedBitSet) -> bool {
    a.intersection(b).all(|i| i == 0)
}

impl Conrad<'_> {
    /// `aRb = 0`. On a p.q.-Baer *-ring this must agree with
    /// `C(a) C(b) = 0`.
    pub fn orthogonal(&self, a: ElementId, b: ElementId) -> Result<bool> {
        let direct = self.orth_set(a).contains(b.index());
        if self.is_pq_baer() {
            let r = self.ring();
            let (ca, cb) = (self.covers().require(a)?, self.covers().require(b)?);
            let via_covers = r.mul(ca, cb) == r.zero();
            if via_covers != direct {
                return Err(Error::Verification(format!(
                    "orthogonality of ({a}, {b}): aRb says {direct}, covers say {via_covers}"
                )));
            }
        }
        Ok(direct)
    }

    pub fn orthogonality_axioms(&self) -> OrthogonalityAxioms {
        let symmetric = self.first_pair_where(|x, y| {
            self.orth_set(x).contains(y.index()) && !self.orth_set(y).contains(x.index())
        });
        let n = self.ring().order() as u32;
        let downward = (0..n).into_par_iter().find_map_first(|x| {
            let x = ElementId(x);
            self.up(x).ones().find_map(|y| {
                let y = ElementId(y as u32);
                self.orth_set(y)
                    .difference(self.orth_set(x))
                    .next()
                    .map(|z| vec![x, y, ElementId(z as u32)])
            })
        });
        let zero = self
            .ids()
            .find(|x| !self.orth_set(ElementId::ZERO).contains(x.index()))
            .map(|x| vec![x]);
        OrthogonalityAxioms {
            symmetric,
            downward_closed: Check::from_witness(downward),
            zero_orthogonal: Check::from_witness(zero),
        }
    }

    /// Orthogonal pairs have a common upper bound, meet 0 and join `a + b`,
    /// all measured in the computed relation.
    pub fn ortho_join_check(&self) -> Result<Check> {
        self.require_pq_baer()?;
        self.precompute_bounds();
        let r = self.ring();
        Ok(self.first_pair_where(|a, b| {
            self.orth_set(a).contains(b.index())
                && !(self.cub(a, b)
                    && self.glb(a, b) == Some(r.zero())
                    && self.lub(a, b) == Some(r.add(a, b)))
        }))
    }

    /// For `a <= b`, returns `c = b - a` after checking `a _|_ c`,
    /// `b = a + c` and `b = a \/ c`.
    pub fn orthomodular_decomposition(&self, a: ElementId, b: ElementId) -> Result<ElementId> {
        if !self.leq(a, b) {
            return Err(Error::NotBelow { a, b });
        }
        let r = self.ring();
        let c = r.sub(b, a);
        let orthogonal = self.orth_set(a).contains(c.index());
        if !orthogonal || r.add(a, c) != b || self.lub(a, c) != Some(b) {
            return Err(Error::Verification(format!(
                "decomposition of {b} over {a}: c = {c}, orthogonal = {orthogonal}, join = {:?}",
                self.lub(a, c)
            )));
        }
        Ok(c)
    }

    pub fn quasi_orthomodular_check(&self) -> Result<QuasiOrthomodular> {
        self.require_pq_baer()?;
        self.precompute_bounds();
        let n = self.ring().order() as u32;
        let orthogonal_joins = self.first_pair_where(|x, y| {
            self.orth_set(x).contains(y.index()) && self.lub(x, y).is_none()
        });
        let decomposition = self.first_pair_where(|x, y| {
            self.leq(x, y)
                && !self
                    .orth_set(x)
                    .ones()
                    .any(|z| self.lub(x, ElementId(z as u32)) == Some(y))
        });
        let cancellation = (0..n).into_par_iter().find_map_first(|x| {
            let x = ElementId(x);
            let orth = self.orth_set(x);
            orth.ones().find_map(|y| {
                let y = ElementId(y as u32);
                orth.ones().find_map(|z| {
                    let z = ElementId(z as u32);
                    let join = self.lub(x, z)?;
                    (self.leq(y, join) && !self.leq(y, z)).then(|| vec![x, y, z])
                })
            })
        });
        Ok(QuasiOrthomodular {
            orthogonal_joins,
            decomposition,
            cancellation: Check::from_witness(cancellation),
        })
    }

    pub fn problem2_check(&self) -> Result<Problem2Report> {
        self.require_pq_baer()?;
        let n = self.ring().order() as u32;
        let scan = |two_sided: bool| {
            let w = (0..n).into_par_iter().find_map_first(|a| {
                let a = ElementId(a);
                (0..n).find_map(|b| {
                    let b = ElementId(b);
                    if !only_zero(self.right_ideal(a), self.right_ideal(b)) {
                        return None;
                    }
                    if two_sided && !only_zero(self.left_ideal(a), self.left_ideal(b)) {
                        return None;
                    }
                    let sum = self.ring().add(a, b);
                    let mut uppers = self.up(a).clone();
                    uppers.intersect_with(self.up(b));
                    uppers
                        .ones()
                        .find(|&c| !self.leq(sum, ElementId(c as u32)))
                        .map(|c| vec![a, b, ElementId(c as u32)])
                })
            });
            Check::from_witness(w)
        };
        Ok(Problem2Report { theorem_form: scan(false), two_sided_form: scan(true) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_matrix, build_modular, build_product, Limits};

    fn z(n: u64) -> StarRing {
        build_modular(n, &Limits::default()).unwrap()
    }

    fn e(i: u32) -> ElementId {
        ElementId(i)
    }

    #[test]
    fn orthogonality_on_z6() {
        let z6 = z(6);
        let c = Conrad::new(&z6);
        assert!(c.orthogonal(e(2), e(3)).unwrap());
        assert!(!c.orthogonal(e(2), e(2)).unwrap());
        for a in z6.elements() {
            assert!(c.orthogonal(e(0), a).unwrap());
        }
        assert!(c.orthogonality_axioms().as_check().holds);
    }

    #[test]
    fn ortho_joins() {
        let z6 = z(6);
        let c = Conrad::new(&z6);
        assert!(c.ortho_join_check().unwrap().holds);
        let z2z2 = build_product(&[z(2), z(2)], &Limits::default()).unwrap();
        let c = Conrad::new(&z2z2);
        // (1,0) = 1, (0,1) = 2, (1,1) = 3
        assert_eq!(c.join(e(1), e(2)).unwrap(), super::super::Bound::Exists(e(3)));
        assert!(c.ortho_join_check().unwrap().holds);
    }

    #[test]
    fn decomposition() {
        let z6 = z(6);
        let c = Conrad::new(&z6);
        assert_eq!(c.orthomodular_decomposition(e(2), e(5)).unwrap(), e(3));
        assert_eq!(c.orthomodular_decomposition(e(5), e(5)).unwrap(), e(0));
        assert_eq!(c.orthomodular_decomposition(e(0), e(5)).unwrap(), e(5));
        assert!(matches!(c.orthomodular_decomposition(e(4), e(5)), Err(Error::NotBelow { .. })));
    }

    #[test]
    fn quasi_orthomodular() {
        for ring in [z(6), build_product(&[z(2), z(2)], &Limits::default()).unwrap()] {
            let c = Conrad::new(&ring);
            assert!(c.quasi_orthomodular_check().unwrap().as_check().holds);
        }
    }

    #[test]
    fn ideals() {
        let z6 = z(6);
        assert_eq!(principal_right_ideal(&z6, e(2)), vec![e(0), e(2), e(4)]);
        assert_eq!(principal_right_ideal(&z6, e(0)), vec![e(0)]);
        let i = ideal_intersection(&principal_right_ideal(&z6, e(2)), &principal_right_ideal(&z6, e(3)));
        assert_eq!(i, vec![e(0)]);
    }

    #[test]
    fn problem2() {
        let z6 = z(6);
        let c = Conrad::new(&z6);
        assert!(c.leq(e(2), e(5)) && c.leq(e(3), e(5)) && c.leq(c.ring().add(e(2), e(3)), e(5)));
        let rep = c.problem2_check().unwrap();
        assert!(rep.theorem_form.holds && rep.two_sided_form.holds);
        let m = build_matrix(&z(2), 2, &Limits::default()).unwrap();
        assert!(Conrad::new(&m).problem2_check().unwrap().theorem_form.holds);
        assert!(matches!(Conrad::new(&z(4)).problem2_check(), Err(Error::NotPqBaer(_))));
    }
}
