//! Maximal diagonal symmetry group of an invertible polynomial, element
//! enumeration, characters on monomials, and the exponential grading
//! element.
//!
//! A diagonal symmetry is encoded by its phase vector: the scaling
//! `(e^{2 pi i t_1}, ..., e^{2 pi i t_N})` is stored as the rational vector
//! `t mod 1`. Membership in the maximal group is the condition that
//! `E t` is an integer vector, and the whole group is presented through the
//! Smith normal form of `E`.

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::poly::{ExponentMatrix, Monomial, Rat};

/// Default cap on group enumeration; override per call or via the
/// `LGKIT_MAX_GROUP_ORDER` environment variable at the CLI layer.
pub const DEFAULT_GROUP_BOUND: u64 = 1_000_000;

fn mod1(r: &Rat) -> Rat {
    r - r.floor()
}

/// A diagonal symmetry as a rational phase vector, componentwise in [0, 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    phases: Vec<Rat>,
}

impl GroupElement {
    pub fn new(phases: Vec<Rat>) -> Self {
        GroupElement {
            phases: phases.iter().map(mod1).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        GroupElement {
            phases: vec![Rat::zero(); n],
        }
    }

    pub fn phases(&self) -> &[Rat] {
        &self.phases
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.phases.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.phases.len(), other.phases.len());
        GroupElement::new(
            self.phases
                .iter()
                .zip(&other.phases)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Indices (0-based) of coordinates fixed by this symmetry.
    pub fn fixed_locus(&self) -> Vec<usize> {
        self.phases
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_zero())
            .map(|(j, _)| j)
            .collect()
    }
}

/// Finite abelian group of diagonal symmetries, presented by generators of
/// orders given by the nontrivial invariant factors of `E`.
#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    pub num_vars: usize,
    pub generators: Vec<GroupElement>,
    /// Orders of the generators: the invariant factors of E that exceed 1,
    /// in divisibility order.
    pub invariant_factors: Vec<BigInt>,
    pub order: BigInt,
}

/// The maximal group of diagonal symmetries of the polynomial with exponent
/// matrix `E`: all phase vectors `t` with `E t` integral, modulo integers.
///
/// With `U E V = D` in Smith normal form, the group is generated by the
/// columns of `V D^{-1}` taken mod 1; the column for invariant factor `d_i`
/// has order exactly `d_i`.
pub fn max_symmetry_group(e: &ExponentMatrix) -> Result<SymmetryGroup> {
    let a = IntMatrix::from_exponents(e);
    let snf = linalg::smith_normal_form(&a)?;
    let n = e.rows();
    let mut generators = Vec::new();
    let mut invariant_factors = Vec::new();
    let mut order = BigInt::one();
    for i in 0..n {
        let d = snf.invariant_factors[i].clone();
        order *= &d;
        if d == BigInt::one() {
            continue;
        }
        let col: Vec<Rat> = (0..n)
            .map(|r| Rat::new(snf.v.get(r, i).clone(), d.clone()))
            .collect();
        let g = GroupElement::new(col);
        debug_assert!(is_member(e, &g));
        generators.push(g);
        invariant_factors.push(d);
    }
    debug_assert_eq!(order, linalg::det(&a).abs());
    Ok(SymmetryGroup {
        num_vars: n,
        generators,
        invariant_factors,
        order,
    })
}

/// Membership test: `E t` integral.
pub fn is_member(e: &ExponentMatrix, el: &GroupElement) -> bool {
    assert_eq!(e.cols(), el.len());
    (0..e.rows()).all(|i| {
        let mut acc = Rat::zero();
        for (j, p) in el.phases().iter().enumerate() {
            if !p.is_zero() {
                acc += p * Rat::from(BigInt::from(e.get(i, j)));
            }
        }
        acc.is_integer()
    })
}

/// All group elements, identity first, ordered lexicographically in
/// generator-exponent coordinates. Errors when the order exceeds `bound`.
pub fn enumerate_elements(g: &SymmetryGroup, bound: u64) -> Result<Vec<GroupElement>> {
    let order = g.order.to_u64().filter(|&o| o <= bound).ok_or_else(|| {
        Error::BoundExceeded {
            order: g.order.clone(),
            bound,
        }
    })?;
    let mut elems = vec![GroupElement::identity(g.num_vars)];
    for (gen, d) in g.generators.iter().zip(&g.invariant_factors) {
        let d = d.to_u64().expect("invariant factor exceeds enumeration bound") as usize;
        let mut next = Vec::with_capacity(elems.len() * d);
        for e in &elems {
            let mut cur = e.clone();
            for c in 0..d {
                if c > 0 {
                    cur = cur.add(gen);
                }
                next.push(cur.clone());
            }
        }
        elems = next;
    }
    if elems.len() as u64 != order {
        return Err(Error::Internal(format!(
            "enumerated {} elements, expected group order {}",
            elems.len(),
            order
        )));
    }
    // generators must generate: all enumerated elements pairwise distinct
    let mut seen = std::collections::HashSet::with_capacity(elems.len());
    for e in &elems {
        if !seen.insert(e.clone()) {
            return Err(Error::Internal(
                "generator enumeration produced a repeated element".into(),
            ));
        }
    }
    Ok(elems)
}

/// The exponential grading element: phases equal to the weights mod 1.
pub fn exponential_grading_element(q: &[Rat]) -> GroupElement {
    GroupElement::new(q.to_vec())
}

/// Character of the action on a monomial supported on the fixed locus,
/// optionally twisted by +1 per fixed coordinate (the action on
/// `m * dx_{j1} ^ ... ^ dx_{jk}`): `sum_{j in fixed} (m_j + twist) t_j mod 1`.
pub fn monomial_character(
    el: &GroupElement,
    m: &Monomial,
    fixed: &[usize],
    twist: bool,
) -> Result<Rat> {
    for (j, &e) in m.exponents.iter().enumerate() {
        if e > 0 && !fixed.contains(&j) {
            return Err(Error::Invalid(format!(
                "monomial involves x{} outside the fixed locus",
                j + 1
            )));
        }
    }
    let mut acc = Rat::zero();
    for &j in fixed {
        let mult = BigInt::from(m.exponents[j]) + if twist { BigInt::one() } else { BigInt::zero() };
        if !mult.is_zero() {
            acc += &el.phases[j] * Rat::from(mult);
        }
    }
    Ok(mod1(&acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Polynomial};

    fn ematrix(s: &str) -> ExponentMatrix {
        Polynomial::parse(s).unwrap().exponent_matrix()
    }

    /// Definition-level oracle: count phase vectors with denominator
    /// dividing |det E| satisfying the membership condition.
    fn brute_force_order(e: &ExponentMatrix) -> u64 {
        let d = linalg::det(&IntMatrix::from_exponents(e))
            .abs()
            .to_u64()
            .unwrap();
        let n = e.cols();
        let mut count = 0u64;
        let mut idx = vec![0u64; n];
        loop {
            let el = GroupElement::new(
                idx.iter()
                    .map(|&k| Rat::new(BigInt::from(k), BigInt::from(d)))
                    .collect(),
            );
            if is_member(e, &el) {
                count += 1;
            }
            let mut j = 0;
            loop {
                if j == n {
                    return count;
                }
                idx[j] += 1;
                if idx[j] < d {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
    }

    #[test]
    fn cyclic_of_order_three() {
        let e = ematrix("x^3");
        let g = max_symmetry_group(&e).unwrap();
        assert_eq!(g.order, BigInt::from(3));
        assert_eq!(g.generators.len(), 1);
        assert_eq!(g.generators[0].phases(), &[rat(1, 3)]);
        let elems = enumerate_elements(&g, 10).unwrap();
        let phases: Vec<Rat> = elems.iter().map(|e| e.phases()[0].clone()).collect();
        assert_eq!(phases, vec![rat(0, 1), rat(1, 3), rat(2, 3)]);
    }

    #[test]
    fn d4_group_is_cyclic_of_order_six() {
        let e = ematrix("x^2*y + y^3");
        let g = max_symmetry_group(&e).unwrap();
        assert_eq!(g.order, BigInt::from(6));
        assert_eq!(g.invariant_factors, vec![BigInt::from(6)]);
        assert_eq!(g.generators[0].phases(), &[rat(5, 6), rat(1, 3)]);
        // elements are k * (5/6, 1/3) mod 1 for k = 0..5
        let elems = enumerate_elements(&g, 10).unwrap();
        assert_eq!(elems.len(), 6);
        for (k, el) in elems.iter().enumerate() {
            let k = BigInt::from(k);
            let expect = GroupElement::new(vec![
                rat(5, 6) * Rat::from(k.clone()),
                rat(1, 3) * Rat::from(k),
            ]);
            assert_eq!(*el, expect);
        }
        assert_eq!(brute_force_order(&e), 6);
    }

    #[test]
    fn fermat_cubic_group() {
        let e = ematrix("x^3 + y^3 + z^3");
        let g = max_symmetry_group(&e).unwrap();
        assert_eq!(g.order, BigInt::from(27));
        assert_eq!(
            g.invariant_factors,
            vec![BigInt::from(3), BigInt::from(3), BigInt::from(3)]
        );
        let elems = enumerate_elements(&g, 100).unwrap();
        assert_eq!(elems.len(), 27);
        assert!(elems[0].is_identity());
    }

    #[test]
    fn order_matches_det_on_samples() {
        for s in [
            "x^3",
            "x^5",
            "x^2*y + y^3",
            "x^3 + x*y^3",
            "x1^2*x2 + x2^2*x1",
            "x1^3*x3 + x1*x2^2 + x2*x3^2",
        ] {
            let e = ematrix(s);
            let g = max_symmetry_group(&e).unwrap();
            let det = linalg::det(&IntMatrix::from_exponents(&e)).abs();
            assert_eq!(g.order, det, "{s}");
            assert_eq!(g.order, BigInt::from(brute_force_order(&e)), "{s}");
        }
    }

    #[test]
    fn bound_is_enforced() {
        let e = ematrix("x^3 + y^3 + z^3");
        let g = max_symmetry_group(&e).unwrap();
        assert!(matches!(
            enumerate_elements(&g, 20),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn grading_element_is_member() {
        for s in ["x^3 + y^3 + z^3", "x^2", "x^3 + x*y^3"] {
            let e = ematrix(s);
            let q = crate::classify::weights(&e).unwrap();
            let j = exponential_grading_element(&q);
            assert!(is_member(&e, &j), "{s}");
        }
    }

    #[test]
    fn grading_element_examples() {
        let q = crate::classify::weights(&ematrix("x^3 + x*y^3")).unwrap();
        let j = exponential_grading_element(&q);
        assert_eq!(j.phases(), &[rat(1, 3), rat(2, 9)]);
    }

    #[test]
    fn fixed_locus_examples() {
        assert_eq!(
            GroupElement::identity(3).fixed_locus(),
            vec![0, 1, 2]
        );
        assert_eq!(
            GroupElement::new(vec![rat(5, 6), rat(1, 3)]).fixed_locus(),
            Vec::<usize>::new()
        );
        assert_eq!(
            GroupElement::new(vec![rat(1, 2), rat(0, 1)]).fixed_locus(),
            vec![1]
        );
    }

    #[test]
    fn character_examples() {
        let one = |exps: Vec<u32>| Monomial::new(exps, Rat::one());
        // gamma = (1/3), m = x, twist on: (1+1)/3 = 2/3
        let g = GroupElement::new(vec![rat(1, 3)]);
        assert_eq!(
            monomial_character(&g, &one(vec![1]), &[0], true).unwrap(),
            rat(2, 3)
        );
        // gamma = (5/6, 1/3), m = x, twist on: 2*(5/6) + 1*(1/3) = 0 mod 1
        let g = GroupElement::new(vec![rat(5, 6), rat(1, 3)]);
        assert_eq!(
            monomial_character(&g, &one(vec![1, 0]), &[0, 1], true).unwrap(),
            rat(0, 1)
        );
        // identity character: zero monomial, twist off
        assert_eq!(
            monomial_character(&g, &one(vec![0, 0]), &[0, 1], false).unwrap(),
            rat(0, 1)
        );
    }

    #[test]
    fn character_requires_support_in_fixed() {
        let g = GroupElement::new(vec![rat(1, 2), rat(0, 1)]);
        let m = Monomial::new(vec![1, 1], Rat::one());
        assert!(monomial_character(&g, &m, &[1], true).is_err());
    }

    #[test]
    fn enumeration_closed_under_composition_spot_check() {
        let e = ematrix("x^2*y + y^3");
        let g = max_symmetry_group(&e).unwrap();
        let elems = enumerate_elements(&g, 10).unwrap();
        for a in &elems {
            for b in &elems {
                let c = a.add(b);
                assert!(elems.contains(&c));
            }
        }
    }
}
