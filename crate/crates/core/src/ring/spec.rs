use serde::{Deserialize, Serialize};

use super::{ElementId, Limits, StarRing};
use crate::error::{Error, Result};

/// Tree-shaped description of a ring, as accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum RingSpec {
    /// `Z_n` with the identity involution.
    Modular { n: u64 },
    /// Direct product with componentwise involution.
    Product { parts: Vec<RingSpec> },
    /// `k x k` matrices over a commutative base; involution is the
    /// conjugate transpose.
    Matrix { base: Box<RingSpec>, k: usize },
    /// Explicit tables.
    Table(TableSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSpec {
    pub order: usize,
    pub add: Vec<Vec<u32>>,
    pub mul: Vec<Vec<u32>>,
    pub star: Vec<u32>,
    pub zero: u32,
    pub one: u32,
}

impl RingSpec {
    pub fn modular(n: u64) -> RingSpec {
        RingSpec::Modular { n }
    }

    pub fn product(parts: impl IntoIterator<Item = RingSpec>) -> RingSpec {
        RingSpec::Product { parts: parts.into_iter().collect() }
    }

    pub fn matrix(base: RingSpec, k: usize) -> RingSpec {
        RingSpec::Matrix { base: Box::new(base), k }
    }

    /// Materialize the described ring.
    pub fn realize(&self, limits: &Limits) -> Result<StarRing> {
        match self {
            RingSpec::Modular { n } => build_modular(*n, limits),
            RingSpec::Product { parts } => {
                if parts.is_empty() {
                    return Err(Error::EmptyProduct);
                }
                limits.check(self.predicted_order().unwrap_or(u128::MAX))?;
                let rings = parts.iter().map(|p| p.realize(limits)).collect::<Result<Vec<_>>>()?;
                build_product(&rings, limits)
            }
            RingSpec::Matrix { base, k } => {
                if *k == 0 {
                    return Err(Error::InvalidDimension);
                }
                limits.check(self.predicted_order().unwrap_or(u128::MAX))?;
                let base = base.realize(limits)?;
                build_matrix(&base, *k, limits)
            }
            RingSpec::Table(t) => build_from_tables(t, limits),
        }
    }

    /// Order of the described ring, if it fits in `u128`.
    pub fn predicted_order(&self) -> Option<u128> {
        match self {
            RingSpec::Modular { n } => Some(*n as u128),
            RingSpec::Product { parts } => parts
                .iter()
                .try_fold(1u128, |acc, p| acc.checked_mul(p.predicted_order()?)),
            RingSpec::Matrix { base, k } => {
                let b = base.predicted_order()?;
                let exp = u32::try_from(k.checked_mul(*k)?).ok()?;
                b.checked_pow(exp)
            }
            RingSpec::Table(t) => Some(t.order as u128),
        }
    }
}

pub fn build_modular(n: u64, limits: &Limits) -> Result<StarRing> {
    if n == 0 {
        return Err(Error::InvalidModulus(n));
    }
    limits.check(n as u128)?;
    let m = n as usize;
    StarRing::tabulate(
        format!("Z_{n}"),
        m,
        (1 % m) as u32,
        |a, b| (a + b) % m,
        |a, b| (a * b) % m,
        |a| a,
        None,
    )
}

/// Componentwise product. Element indices are mixed-radix with the first
/// factor as the least significant digit, so the all-zero tuple is index 0.
pub fn build_product(parts: &[StarRing], limits: &Limits) -> Result<StarRing> {
    if parts.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let order = parts
        .iter()
        .try_fold(1u128, |acc, p| acc.checked_mul(p.order() as u128))
        .unwrap_or(u128::MAX);
    limits.check(order)?;
    let order = order as usize;
    let radices: Vec<usize> = parts.iter().map(StarRing::order).collect();

    let digits: Vec<Vec<ElementId>> = (0..order)
        .map(|mut idx| {
            radices
                .iter()
                .map(|&r| {
                    let d = idx % r;
                    idx /= r;
                    ElementId(d as u32)
                })
                .collect()
        })
        .collect();
    let compose = |ds: &mut dyn Iterator<Item = ElementId>| -> usize {
        let mut idx = 0;
        let mut scale = 1;
        for (d, r) in ds.zip(&radices) {
            idx += d.index() * scale;
            scale *= r;
        }
        idx
    };
    let zip = |a: usize, b: usize, op: &dyn Fn(&StarRing, ElementId, ElementId) -> ElementId| {
        compose(&mut parts.iter().zip(&digits[a]).zip(&digits[b]).map(|((p, &x), &y)| op(p, x, y)))
    };
    let one = compose(&mut parts.iter().map(StarRing::one));
    let render = digits
        .iter()
        .map(|ds| {
            let inner: Vec<&str> = parts.iter().zip(ds).map(|(p, &d)| p.render(d)).collect();
            format!("({})", inner.join(","))
        })
        .collect();
    let label = parts.iter().map(StarRing::label).collect::<Vec<_>>().join(" x ");

    StarRing::tabulate(
        label,
        order,
        one as u32,
        |a, b| zip(a, b, &|p, x, y| p.add(x, y)),
        |a, b| zip(a, b, &|p, x, y| p.mul(x, y)),
        |a| compose(&mut parts.iter().zip(&digits[a]).map(|(p, &x)| p.star(x))),
        Some(render),
    )
}

/// `k x k` matrices over a commutative base ring. Entries are stored
/// row-major; entry `(0,0)` is the least significant digit of the index.
pub fn build_matrix(base: &StarRing, k: usize, limits: &Limits) -> Result<StarRing> {
    if k == 0 {
        return Err(Error::InvalidDimension);
    }
    if let Some((a, b)) = base.first_noncommuting_pair() {
        return Err(Error::NonCommutativeBase { a, b });
    }
    let b = base.order();
    let order = u32::try_from(k * k)
        .ok()
        .and_then(|e| (b as u128).checked_pow(e))
        .unwrap_or(u128::MAX);
    limits.check(order)?;
    let order = order as usize;
    let cells = k * k;

    let entries: Vec<Vec<ElementId>> = (0..order)
        .map(|mut idx| {
            (0..cells)
                .map(|_| {
                    let d = idx % b;
                    idx /= b;
                    ElementId(d as u32)
                })
                .collect()
        })
        .collect();
    let encode = |m: &[ElementId]| -> usize { m.iter().rev().fold(0, |acc, d| acc * b + d.index()) };

    let add = |x: usize, y: usize| {
        let m: Vec<ElementId> =
            entries[x].iter().zip(&entries[y]).map(|(&p, &q)| base.add(p, q)).collect();
        encode(&m)
    };
    let mul = |x: usize, y: usize| {
        let (p, q) = (&entries[x], &entries[y]);
        let m: Vec<ElementId> = (0..cells)
            .map(|cell| {
                let (i, j) = (cell / k, cell % k);
                (0..k).fold(base.zero(), |acc, t| base.add(acc, base.mul(p[i * k + t], q[t * k + j])))
            })
            .collect();
        encode(&m)
    };
    let star = |x: usize| {
        let p = &entries[x];
        let m: Vec<ElementId> = (0..cells).map(|cell| base.star(p[(cell % k) * k + cell / k])).collect();
        encode(&m)
    };
    let identity: Vec<ElementId> =
        (0..cells).map(|cell| if cell / k == cell % k { base.one() } else { base.zero() }).collect();
    let render = entries
        .iter()
        .map(|m| {
            let rows: Vec<String> = m
                .chunks(k)
                .map(|row| format!("[{}]", row.iter().map(|&d| base.render(d)).collect::<Vec<_>>().join(",")))
                .collect();
            format!("[{}]", rows.join(","))
        })
        .collect();

    StarRing::tabulate(
        format!("M_{k}({})", base.label()),
        order,
        encode(&identity) as u32,
        add,
        mul,
        star,
        Some(render),
    )
}

/// Validate explicit tables. Index 0 must be the additive identity.
pub fn build_from_tables(spec: &TableSpec, limits: &Limits) -> Result<StarRing> {
    let n = spec.order;
    if n == 0 {
        return Err(Error::MalformedTables("order must be at least 1".into()));
    }
    limits.check(n as u128)?;
    if spec.zero != 0 {
        return Err(Error::MalformedTables("zero must be element 0".into()));
    }
    let square = |t: &[Vec<u32>]| t.len() == n && t.iter().all(|row| row.len() == n);
    if !square(&spec.add) || !square(&spec.mul) || spec.star.len() != n {
        return Err(Error::MalformedTables(format!("tables must be {n}x{n} (star: {n})")));
    }
    StarRing::from_tables(
        format!("table({n})"),
        spec.add.concat(),
        spec.mul.concat(),
        spec.star.clone(),
        spec.one,
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn e(i: u32) -> ElementId {
        ElementId(i)
    }

    #[test]
    fn zero_ring() {
        let r = build_modular(1, &lim()).unwrap();
        assert_eq!(r.order(), 1);
        assert_eq!(r.zero(), r.one());
    }

    #[test]
    fn modular_arithmetic() {
        let z6 = build_modular(6, &lim()).unwrap();
        assert_eq!(z6.mul(e(2), e(4)), e(2));
        assert_eq!(z6.add(e(5), e(3)), e(2));
        let z4 = build_modular(4, &lim()).unwrap();
        assert_eq!(z4.mul(e(2), e(2)), e(0));
        for a in z6.elements() {
            assert_eq!(z6.add(a, z6.neg(a)), z6.zero());
        }
    }

    #[test]
    fn invalid_modulus_and_cap() {
        assert!(matches!(build_modular(0, &lim()), Err(Error::InvalidModulus(0))));
        let small = Limits { order_cap: 10 };
        assert!(matches!(build_modular(11, &small), Err(Error::CapExceeded { .. })));
        let spec = RingSpec::matrix(RingSpec::modular(2), 2);
        assert!(matches!(spec.realize(&small), Err(Error::CapExceeded { order: 16, .. })));
        let huge = RingSpec::product(vec![RingSpec::modular(1 << 40); 4]);
        assert!(matches!(huge.realize(&lim()), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn empty_product_rejected() {
        assert!(matches!(build_product(&[], &lim()), Err(Error::EmptyProduct)));
        assert!(matches!(RingSpec::product(vec![]).realize(&lim()), Err(Error::EmptyProduct)));
    }

    #[test]
    fn product_indexing_is_mixed_radix() {
        let z2 = build_modular(2, &lim()).unwrap();
        let z3 = build_modular(3, &lim()).unwrap();
        let p = build_product(&[z2, z3], &lim()).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.render(e(0)), "(0,0)");
        assert_eq!(p.render(e(1)), "(1,0)");
        assert_eq!(p.render(e(2)), "(0,1)");
        assert_eq!(p.render(e(5)), "(1,2)");
        assert_eq!(p.one(), e(3));
        assert_eq!(p.label(), "Z_2 x Z_3");
    }

    #[test]
    fn trivial_factor_preserves_order() {
        let z1 = build_modular(1, &lim()).unwrap();
        let z5 = build_modular(5, &lim()).unwrap();
        let p = build_product(&[z1, z5.clone()], &lim()).unwrap();
        assert_eq!(p.order(), 5);
        for a in p.elements() {
            for b in p.elements() {
                assert_eq!(p.mul(a, b), z5.mul(a, b));
                assert_eq!(p.add(a, b), z5.add(a, b));
            }
        }
    }

    #[test]
    fn matrix_units_and_transpose() {
        let z2 = build_modular(2, &lim()).unwrap();
        let m = build_matrix(&z2, 2, &lim()).unwrap();
        assert_eq!(m.order(), 16);
        // E_11 = 1, E_12 = 2, E_21 = 4, E_22 = 8, I = 9
        assert_eq!(m.render(e(2)), "[[0,1],[0,0]]");
        assert_eq!(m.star(e(2)), e(4));
        assert_eq!(m.one(), e(9));
        assert_eq!(m.mul(e(1), e(2)), e(2));
        assert_eq!(m.mul(e(2), e(1)), e(0));
        for a in m.elements() {
            for b in m.elements() {
                assert_eq!(m.star(m.mul(a, b)), m.mul(m.star(b), m.star(a)));
            }
        }
    }

    #[test]
    fn one_by_one_matrices_match_base() {
        let z2 = build_modular(2, &lim()).unwrap();
        let m = build_matrix(&z2, 1, &lim()).unwrap();
        assert_eq!(m.order(), 2);
        assert_eq!(m.one(), e(1));
        assert_eq!(m.mul(e(1), e(1)), e(1));
        assert_eq!(m.add(e(1), e(1)), e(0));
    }

    #[test]
    fn non_commutative_base_rejected() {
        let z2 = build_modular(2, &lim()).unwrap();
        let m2 = build_matrix(&z2, 2, &lim()).unwrap();
        assert!(matches!(build_matrix(&m2, 2, &lim()), Err(Error::NonCommutativeBase { .. })));
    }

    #[test]
    fn table_spec_round_trip() {
        let z6 = build_modular(6, &lim()).unwrap();
        let spec = z6.to_table_spec();
        let json = serde_json::to_string(&RingSpec::Table(spec.clone())).unwrap();
        assert!(json.starts_with(r#"{"type":"table","order":6,"add":[[0,1,2,3,4,5],"#));
        let back: RingSpec = serde_json::from_str(&json).unwrap();
        let r = back.realize(&lim()).unwrap();
        assert_eq!(r.to_table_spec(), spec);
    }

    #[test]
    fn json_schema_shapes() {
        let spec: RingSpec = serde_json::from_str(
            r#"{"type":"product","parts":[{"type":"modular","n":2},{"type":"matrix","base":{"type":"modular","n":3},"k":1}]}"#,
        )
        .unwrap();
        assert_eq!(
            spec,
            RingSpec::product(vec![RingSpec::modular(2), RingSpec::matrix(RingSpec::modular(3), 1)])
        );
        assert_eq!(spec.realize(&lim()).unwrap().order(), 6);
    }

    #[test]
    fn nonzero_zero_index_rejected() {
        let mut spec = build_modular(2, &lim()).unwrap().to_table_spec();
        spec.zero = 1;
        assert!(matches!(build_from_tables(&spec, &lim()), Err(Error::MalformedTables(_))));
    }

    #[test]
    fn ragged_tables_rejected() {
        let mut spec = build_modular(3, &lim()).unwrap().to_table_spec();
        spec.mul[1].pop();
        assert!(matches!(build_from_tables(&spec, &lim()), Err(Error::MalformedTables(_))));
    }
}
