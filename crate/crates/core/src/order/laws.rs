//! Exhaustive checks of the order-theoretic identities, one per result.

use rayon::prelude::*;

use super::Conrad;
use crate::check::Check;
use crate::error::Result;
use crate::ring::ElementId;

impl Conrad<'_> {
    /// `a*rb = a*ra (all r)  <=>  a = C(a)b  <=>  arb = ara (all r)`.
    pub fn order_equivalence(&self) -> Result<Check> {
        self.require_pq_baer()?;
        let r = self.ring();
        Ok(self.first_pair_where(|a, b| {
            let brute = self.leq(a, b);
            let cover = a == r.mul(self.c(a), b);
            let s = r.star(a);
            let star = r.elements().all(|t| r.mul3(s, t, b) == r.mul3(s, t, a));
            brute != cover || brute != star
        }))
    }

    /// `a <= b  =>  C(a) = C(a)C(b), a = aC(b) = bC(a)`.
    pub fn monotone_covers(&self) -> Result<Check> {
        self.require_pq_baer()?;
        let r = self.ring();
        Ok(self.first_pair_where(|a, b| {
            let (ca, cb) = (self.c(a), self.c(b));
            self.leq(a, b) && !(ca == r.mul(ca, cb) && a == r.mul(a, cb) && a == r.mul(b, ca))
        }))
    }

    /// Common upper bounds exist exactly when `aC(b) = bC(a)`, the relation
    /// is symmetric, and then `a \/ b = a + b - (a /\ b)`.
    pub fn cub_characterization(&self) -> Result<Check> {
        self.require_pq_baer()?;
        self.precompute_bounds();
        let r = self.ring();
        Ok(self.first_pair_where(|a, b| {
            let formula = r.mul(a, self.c(b)) == r.mul(b, self.c(a));
            if self.cub(a, b) != self.cub(b, a) || self.cub(a, b) != formula {
                return true;
            }
            let via_meet = self.glb(a, b).map(|m| r.sub(r.add(a, b), m));
            formula != (self.lub(a, b).is_some() && self.lub(a, b) == via_meet)
        }))
    }

    /// Under a common upper bound, for all `r`:
    /// `a*rb = C(a)b*rb = C(b)a*ra` and `arb* = C(a)brb* = C(b)ara*`;
    /// hence `a*b` and `ab*` are self-adjoint. Witness `(a, b, r)`.
    pub fn cub_consequences(&self) -> Result<Check> {
        self.require_pq_baer()?;
        let r = self.ring();
        let n = r.order() as u32;
        let w = (0..n).into_par_iter().find_map_first(|a| {
            let a = ElementId(a);
            (0..n).find_map(|b| {
                let b = ElementId(b);
                if !self.cub(a, b) {
                    return None;
                }
                let (ca, cb) = (self.c(a), self.c(b));
                let (sa, sb) = (r.star(a), r.star(b));
                let bad_r = r.elements().find(|&t| {
                    let x = r.mul3(sa, t, b);
                    let y = r.mul3(a, t, sb);
                    x != r.mul(ca, r.mul3(sb, t, b))
                        || x != r.mul(cb, r.mul3(sa, t, a))
                        || y != r.mul(ca, r.mul3(b, t, sb))
                        || y != r.mul(cb, r.mul3(a, t, sa))
                });
                if let Some(t) = bad_r {
                    return Some(vec![a, b, t]);
                }
                let (p, q) = (r.mul(sa, b), r.mul(a, sb));
                (r.star(p) != p || r.star(q) != q).then(|| vec![a, b])
            })
        });
        Ok(Check::from_witness(w))
    }

    /// `a /\ b = aC(b) = bC(a)` and `a \/ b = a + b - aC(b)` whenever a
    /// common upper bound exists, against the order-theoretic bounds.
    pub fn meet_join_theorem(&self) -> Result<Check> {
        self.require_pq_baer()?;
        self.precompute_bounds();
        let r = self.ring();
        Ok(self.first_pair_where(|a, b| {
            if !self.cub(a, b) {
                return false;
            }
            let m = r.mul(a, self.c(b));
            m != r.mul(b, self.c(a))
                || self.glb(a, b) != Some(m)
                || self.lub(a, b) != Some(r.sub(r.add(a, b), m))
                || self.meet(a, b).is_err()
                || self.join(a, b).is_err()
        }))
    }

    /// When `a \/ b` exists: `a \/ b = a + b(1 - C(a)) = b + a(1 - C(b))`.
    pub fn join_corollary(&self) -> Result<Check> {
        self.require_pq_baer()?;
        self.precompute_bounds();
        let r = self.ring();
        Ok(self.first_pair_where(|a, b| match self.lub(a, b) {
            None => false,
            Some(j) => {
                let left = r.add(a, r.mul(b, r.sub(r.one(), self.c(a))));
                let right = r.add(b, r.mul(a, r.sub(r.one(), self.c(b))));
                j != left || j != right
            }
        }))
    }

    /// The cover formula for lattices agrees with direct verification.
    pub fn lattice_characterization(&self) -> Result<Check> {
        self.require_pq_baer()?;
        let formula = self.is_lattice()?;
        let direct = self.is_lattice_direct();
        Ok(if formula.holds == direct.holds {
            Check::pass()
        } else {
            formula.and_then(|| direct)
        })
    }

    /// `aRb = 0  <=>  C(a)C(b) = 0`.
    pub fn orthogonality_cover(&self) -> Result<Check> {
        self.require_pq_baer()?;
        let r = self.ring();
        Ok(self.first_pair_where(|a, b| {
            self.orth_set(a).contains(b.index()) != (r.mul(self.c(a), self.c(b)) == r.zero())
        }))
    }

    /// Every `a <= b` splits as `b = a + c` with `a _|_ c`.
    pub fn decomposition_check(&self) -> Result<Check> {
        self.require_pq_baer()?;
        self.precompute_bounds();
        Ok(self.first_pair_where(|a, b| self.leq(a, b) && self.orthomodular_decomposition(a, b).is_err()))
    }

    /// Every initial segment is orthocomplemented and orthomodular, its
    /// orthogonality is the ring orthogonality, and it is consistent across
    /// segments.
    pub fn segments_check(&self) -> Result<Check> {
        self.require_pq_baer()?;
        for m in self.ids() {
            let s = self.initial_segment(m)?;
            if !(s.orthocomplemented && s.orthomodular && s.locality) {
                let mut w = vec![m];
                w.extend(s.witness.map(|w| w.elements).unwrap_or_default());
                return Ok(Check::fail(w));
            }
        }
        Ok(self.segment_locality_across())
    }

    /// Central projections: `e <= f  <=>  e = ef`, `C(e) = e`,
    /// `C(ex) = eC(x)`, and `C(x*) = C(x)` whenever the covers exist.
    pub fn remark_identities(&self) -> Check {
        let r = self.ring();
        let cov = self.covers();
        let central = self.structure().central_projections();
        let order_on_central = central.iter().find_map(|&e| {
            central
                .iter()
                .find(|&&f| self.leq(e, f) != (e == r.mul(e, f)))
                .map(|&f| vec![e, f])
        });
        let fixed = central.iter().find(|&&e| cov.get(e) != Some(e)).map(|&e| vec![e]);
        let scaled = central.iter().find_map(|&e| {
            self.ids()
                .filter(|&x| cov.get(x).is_some())
                .find(|&x| cov.get(r.mul(e, x)) != cov.get(x).map(|c| r.mul(e, c)))
                .map(|x| vec![e, x])
        });
        let starred = self
            .ids()
            .find(|&x| cov.get(x).is_some() && cov.get(r.star(x)) != cov.get(x))
            .map(|x| vec![x]);
        Check::from_witness(order_on_central.or(fixed).or(scaled).or(starred))
    }

    /// The relation is a partial order exactly when the ring is semiprime.
    pub fn semiprime_boundary(&self) -> Check {
        let semiprime = self.classification().flags.is_semiprime;
        if self.diagnostics().is_partial_order() == semiprime {
            return Check::pass();
        }
        match self.diagnostics().first_failure() {
            Some((_, w)) => Check::fail(w.to_vec()),
            None => Check::fail(self.classification().witnesses.is_semiprime.clone().unwrap_or_default()),
        }
    }

    /// Any central projection `e` with `xe = x` and `xRy = 0 => ey = 0`
    /// is the central cover of `x`.
    pub fn cover_lemma_check(&self) -> Check {
        let st = self.structure();
        let w = self.ids().find_map(|x| {
            st.central_projections()
                .iter()
                .find(|&&e| st.verify_cover_lemma(x, e).is_err())
                .map(|&e| vec![x, e])
        });
        Check::from_witness(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_matrix, build_modular, build_product, Limits, StarRing};

    fn z(n: u64) -> StarRing {
        build_modular(n, &Limits::default()).unwrap()
    }

    fn all_laws(c: &Conrad) -> Vec<(&'static str, Check)> {
        vec![
            ("order-equivalence", c.order_equivalence().unwrap()),
            ("monotone", c.monotone_covers().unwrap()),
            ("cub", c.cub_characterization().unwrap()),
            ("cub-consequences", c.cub_consequences().unwrap()),
            ("meet-join", c.meet_join_theorem().unwrap()),
            ("join-corollary", c.join_corollary().unwrap()),
            ("lattice", c.lattice_characterization().unwrap()),
            ("orth-cover", c.orthogonality_cover().unwrap()),
            ("decomposition", c.decomposition_check().unwrap()),
            ("segments", c.segments_check().unwrap()),
            ("remark", c.remark_identities()),
            ("boundary", c.semiprime_boundary()),
            ("cover-lemma", c.cover_lemma_check()),
        ]
    }

    #[test]
    fn laws_hold_on_small_carriers() {
        let lim = Limits::default();
        let rings = vec![
            z(1),
            z(2),
            z(6),
            z(10),
            build_product(&[z(2), z(2), z(3)], &lim).unwrap(),
            build_matrix(&z(2), 2, &lim).unwrap(),
        ];
        for ring in &rings {
            let c = Conrad::new(ring);
            for (name, check) in all_laws(&c) {
                assert!(check.holds, "{name} on {}: {:?}", ring.label(), check.witness);
            }
        }
    }

    #[test]
    fn ungated_laws_on_non_semiprime() {
        for n in [4, 8, 9, 12] {
            let ring = z(n);
            let c = Conrad::new(&ring);
            assert!(c.remark_identities().holds);
            assert!(c.semiprime_boundary().holds);
            assert!(c.cover_lemma_check().holds);
            assert!(c.order_equivalence().is_err());
        }
    }
}
