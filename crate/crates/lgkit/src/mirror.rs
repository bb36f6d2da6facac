//! Transpose mirror construction, the standard good basis of an invertible
//! polynomial, state-space sector dimensions for the maximal symmetry
//! group, and the mirror-consistency report.
//!
//! The transpose of an invertible polynomial is the one whose exponent
//! matrix is the transpose; Fermat blocks are self-transpose, chains flip
//! orientation, loops reverse direction. The standard good basis is built
//! blockwise: `{x^r : 0 <= r <= a-2}` for a Fermat, the full box
//! `0 <= r_i < a_i` for a loop, and for a chain (read head power first,
//! `f = x1^a1 + x1 x2^a2 + ... + x_{N-1} xN^aN`) the box `r_i <= a_i - 1`
//! minus the exponent tuples ending in the alternating pattern
//! `(k, a_{N-2l}-1, 0, ..., 0, a_{N-2}-1, 0, a_N-1)` with `k >= 1`, plus the
//! fully consumed pattern when it reaches the first coordinate (odd-length
//! chains); the count identity with the Milnor number forces that reading.

use num::bigint::BigInt;
use num::{Integer, One, ToPrimitive};

use crate::classify::{
    self, check_invertible, AtomicBlock, BlockKind, InvertibleStructure,
};
use crate::error::{Error, Result};
use crate::jacobian;
use crate::poly::{rat, Monomial, Polynomial, Rat};
use crate::symmetry::{self, GroupElement, SymmetryGroup};

/// The Berglund–Hübsch transpose: coefficient-one polynomial with the
/// transposed exponent matrix, up to the canonical variable indexing.
///
/// The transpose a priori has variables indexed by the monomials of W;
/// those are identified with the ambient variables through the ownership
/// bijection (each monomial of an invertible polynomial carries the
/// dominant power of exactly one variable). With that indexing the
/// operation is an involution on canonical polynomials.
pub fn transpose(w: &InvertibleStructure) -> Polynomial {
    let e = &w.matrix;
    let n = e.rows();
    let owner: Vec<usize> = (0..n)
        .map(|i| {
            e.row(i)
                .iter()
                .position(|&v| v >= 2)
                .expect("atomic row carries a dominant power")
        })
        .collect();
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            let mut m = vec![0u32; n];
            for (k, &slot) in owner.iter().enumerate() {
                m[slot] = e.get(k, j);
            }
            m
        })
        .collect();
    Polynomial::from_exponent_rows(rows, n)
        .expect("transpose of an invertible matrix yields a valid polynomial")
}

fn block_box_tuples(kind: BlockKind, exps: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; exps.len()];
    fn rec(tops: &[u32], j: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if j == tops.len() {
            out.push(cur.clone());
            return;
        }
        for r in 0..=tops[j] {
            cur[j] = r;
            rec(tops, j + 1, cur, out);
        }
        cur[j] = 0;
    }
    let tops: Vec<u32> = match kind {
        BlockKind::Fermat => vec![exps[0] - 2],
        // loop and chain boxes both run to a_i - 1
        BlockKind::Loop | BlockKind::Chain => exps.iter().map(|&a| a - 1).collect(),
    };
    rec(&tops, 0, &mut cur, &mut out);
    out
}

/// Excluded-tail predicate for chain blocks in the head-power-first frame:
/// r matches when, for some l >= 0, r_{N-2j} = a_{N-2j}-1 for j = 0..l,
/// the coordinates between them vanish, and either a leading coordinate
/// k >= 1 remains or the pattern has consumed the whole tuple.
fn chain_excluded(r: &[u32], a: &[u32]) -> bool {
    let n = r.len();
    let mut l = 0usize;
    loop {
        // position N-1-2l (0-based) must carry its top power
        let Some(hi) = n.checked_sub(1 + 2 * l) else {
            return false;
        };
        if r[hi] != a[hi] - 1 {
            return false;
        }
        if hi == 0 {
            // pattern consumed every coordinate
            return true;
        }
        // coordinate directly left of the a-1 slot
        let lead = hi - 1;
        if l == 0 || r[lead] != 0 {
            // candidate k-position: excluded when k >= 1
            if r[lead] >= 1 {
                return true;
            }
            if l > 0 {
                return false;
            }
        }
        // r[lead] == 0: the pattern extends leftwards
        if lead == 0 {
            return false;
        }
        l += 1;
    }
}

/// The standard good basis of an invertible polynomial: the tensor product
/// over atomic blocks of the per-block monomial sets. The result is checked
/// against the Milnor number before being returned.
pub fn standard_good_basis(w: &InvertibleStructure) -> Result<Vec<Monomial>> {
    let n = w.matrix.cols();
    let mut per_block: Vec<(Vec<usize>, Vec<Vec<u32>>)> = Vec::new();
    for b in &w.blocks {
        let (vars, exps, kind) = match b.kind {
            BlockKind::Chain => {
                let (v, a) = b.head_first();
                (v, a, BlockKind::Chain)
            }
            k => (b.variables.clone(), b.exponents.clone(), k),
        };
        let mut tuples = block_box_tuples(kind, &exps);
        if kind == BlockKind::Chain {
            tuples.retain(|r| !chain_excluded(r, &exps));
        }
        per_block.push((vars, tuples));
    }

    let mut basis: Vec<Vec<u32>> = vec![vec![0u32; n]];
    for (vars, tuples) in &per_block {
        let mut next = Vec::with_capacity(basis.len() * tuples.len());
        for base in &basis {
            for t in tuples {
                let mut m = base.clone();
                for (slot, &v) in vars.iter().enumerate() {
                    m[v] = t[slot];
                }
                next.push(m);
            }
        }
        basis = next;
    }
    basis.sort_by(|a, b| b.cmp(a));

    let q = classify::weights(&w.matrix)?;
    let mu = classify::milnor_number(&q)?;
    if BigInt::from(basis.len()) != mu {
        return Err(Error::Internal(format!(
            "standard good basis has {} elements but mu = {}",
            basis.len(),
            mu
        )));
    }
    Ok(basis
        .into_iter()
        .map(|m| Monomial::new(m, Rat::one()))
        .collect())
}

/// One state-space summand: a group element, its fixed coordinates, the
/// restriction of W to them, and the dimension of the invariant part.
#[derive(Debug, Clone)]
pub struct Sector {
    pub element: GroupElement,
    pub fixed: Vec<usize>,
    /// Restriction of W to the fixed locus, in the ambient variables;
    /// `None` for narrow sectors.
    pub restricted: Option<Polynomial>,
    pub dimension: u64,
}

#[derive(Debug, Clone)]
pub struct StateSpace {
    pub sectors: Vec<Sector>,
    pub total_dimension: u64,
}

/// Scaled characters of one group generator on the fixed coordinates:
/// `chi(m) = sum_i (m_i + 1) theta_i mod 1` becomes an integer mod `den`.
struct ScaledCharacter {
    den: u64,
    phases: Vec<u64>,
}

impl ScaledCharacter {
    fn build(gen: &GroupElement, fixed: &[usize]) -> Result<ScaledCharacter> {
        let mut den = BigInt::one();
        for &j in fixed {
            den = den.lcm(gen.phases()[j].denom());
        }
        let den_u = den
            .to_u64()
            .ok_or_else(|| Error::Invalid("character denominator too large".into()))?;
        let phases = fixed
            .iter()
            .map(|&j| {
                let scaled = &gen.phases()[j] * Rat::from(den.clone());
                scaled.to_integer().to_u64().ok_or_else(|| {
                    Error::Invalid("character numerator too large".into())
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(ScaledCharacter { den: den_u, phases })
    }

    /// Twisted character of the class `x^m dx_{fixed}`.
    fn twisted(&self, m: &[u32]) -> u64 {
        let mut acc: u64 = 0;
        for (i, &t) in self.phases.iter().enumerate() {
            acc = (acc + (m[i] as u64 + 1) % self.den * t) % self.den;
        }
        acc
    }

    /// Character of the ideal generator `x^m * d(W_S)/dx_j` (twisted frame).
    fn generator_char(&self, m: &[u32], j: usize) -> u64 {
        (self.twisted(m) + self.den - self.phases[j]) % self.den
    }
}

/// The FJRW state space of `(W, G_max)` at the level of sector dimensions.
///
/// Narrow sectors (empty fixed locus) contribute 1. A broad sector
/// restricts W to the fixed coordinates, certifies the restriction is an
/// isolated singularity, and counts, degree by degree, the monomial classes
/// whose twisted character vanishes on every group generator, minus the
/// rank of the character-trivial slice of the Jacobian ideal.
pub fn fjrw_state_space(w: &InvertibleStructure, bound: u64) -> Result<StateSpace> {
    let e = &w.matrix;
    let q = classify::weights(e)?;
    let group = symmetry::max_symmetry_group(e)?;
    let elements = symmetry::enumerate_elements(&group, bound)?;

    let mut sectors = Vec::with_capacity(elements.len());
    let mut total = 0u64;
    for el in elements {
        let fixed = el.fixed_locus();
        if fixed.is_empty() {
            total += 1;
            sectors.push(Sector {
                element: el,
                fixed,
                restricted: None,
                dimension: 1,
            });
            continue;
        }
        let (restricted_full, dim) = broad_sector_dimension(w, &q, &group, &fixed)?;
        total += dim;
        sectors.push(Sector {
            element: el,
            fixed,
            restricted: Some(restricted_full),
            dimension: dim,
        });
    }
    Ok(StateSpace {
        sectors,
        total_dimension: total,
    })
}

fn broad_sector_dimension(
    w: &InvertibleStructure,
    q: &[Rat],
    group: &SymmetryGroup,
    fixed: &[usize],
) -> Result<(Polynomial, u64)> {
    // restriction of W: terms supported on the fixed coordinates
    let surviving: Vec<Monomial> = w
        .polynomial
        .terms()
        .iter()
        .filter(|t| t.support().iter().all(|j| fixed.contains(j)))
        .cloned()
        .collect();
    if surviving.is_empty() {
        return Err(Error::Internal(
            "fixed locus carries no terms of W; restriction is not isolated".into(),
        ));
    }
    let restricted_full = Polynomial::new(w.polynomial.num_vars(), surviving.clone())?;

    // compress to the fixed coordinates
    let sub_terms: Vec<Monomial> = surviving
        .iter()
        .map(|t| {
            Monomial::new(
                fixed.iter().map(|&j| t.exponents[j]).collect(),
                t.coefficient.clone(),
            )
        })
        .collect();
    let f_s = Polynomial::new(fixed.len(), sub_terms)?;
    let q_s: Vec<Rat> = fixed.iter().map(|&j| q[j].clone()).collect();

    let iso = jacobian::isolatedness_check(&f_s, &q_s)?;
    if !iso.isolated {
        return Err(Error::Internal(format!(
            "restriction {} to the fixed locus is not an isolated singularity",
            f_s
        )));
    }

    let chars: Vec<ScaledCharacter> = group
        .generators
        .iter()
        .map(|g| ScaledCharacter::build(g, fixed))
        .collect::<Result<Vec<_>>>()?;

    let dim = jacobian::invariant_quotient_dimension(&f_s, &q_s, &|m| {
        chars.iter().all(|c| c.twisted(m) == 0)
    }, &|m, j| {
        chars.iter().all(|c| c.generator_char(m, j) == 0)
    })?;
    Ok((restricted_full, dim))
}

/// Dimension-level mirror consistency record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirrorReport {
    pub state_dim: u64,
    pub mirror_milnor: u64,
    pub good_basis_size: u64,
    pub equal: bool,
    /// Set when some chain block of W or of its transpose carries a
    /// variable of weight exactly 1/2.
    pub weight_half_chain: bool,
}

fn has_half_weight_chain(w: &InvertibleStructure, q: &[Rat]) -> bool {
    let half = rat(1, 2);
    w.blocks.iter().any(|b: &AtomicBlock| {
        b.kind == BlockKind::Chain && b.variables.iter().any(|&v| q[v] == half)
    })
}

/// Compare `dim H_(W, Gmax)` with the Milnor number of the transpose and
/// the size of its standard good basis.
pub fn mirror_check(w: &InvertibleStructure, bound: u64) -> Result<MirrorReport> {
    let state = fjrw_state_space(w, bound)?;
    let q = classify::weights(&w.matrix)?;

    let tp = transpose(w);
    let tw = check_invertible(&tp)
        .map_err(|e| Error::Internal(format!("transpose not invertible: {e}")))?;
    let q_t = classify::weights(&tw.matrix)?;
    let mu_t = classify::milnor_number(&q_t)?
        .to_u64()
        .ok_or_else(|| Error::Internal("mirror milnor number overflows u64".into()))?;
    let gb = standard_good_basis(&tw)?;

    Ok(MirrorReport {
        state_dim: state.total_dimension,
        mirror_milnor: mu_t,
        good_basis_size: gb.len() as u64,
        equal: state.total_dimension == mu_t,
        weight_half_chain: has_half_weight_chain(w, &q) || has_half_weight_chain(&tw, &q_t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::DEFAULT_GROUP_BOUND;

    fn inv(s: &str) -> InvertibleStructure {
        check_invertible(&Polynomial::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(transpose(&inv("x^2*y + y^3")).to_string(), "x1^2 + x1*x2^3");
        assert_eq!(transpose(&inv("x^5")).to_string(), "x1^5");
        assert_eq!(
            transpose(&inv("x1^2*x2 + x2^2*x1")).to_string(),
            "x1^2*x2 + x1*x2^2"
        );
    }

    #[test]
    fn transpose_is_involution() {
        for s in [
            "x^2*y + y^3",
            "x^3 + x*y^3",
            "x1^3*x3 + x1*x2^2 + x2*x3^2",
            "x^3 + y^3 + z^3",
        ] {
            let w = inv(s);
            let back = transpose(&check_invertible(&transpose(&w)).unwrap());
            assert_eq!(back, w.polynomial, "{s}");
        }
    }

    #[test]
    fn good_basis_fermat() {
        let b = standard_good_basis(&inv("x^5")).unwrap();
        let names: Vec<String> = b.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, vec!["x1^3", "x1^2", "x1", "1"]);
    }

    #[test]
    fn good_basis_fermat_cubic_sum() {
        let b = standard_good_basis(&inv("x^3 + y^3 + z^3")).unwrap();
        assert_eq!(b.len(), 8);
        for m in &b {
            assert!(m.exponents.iter().all(|&e| e <= 1));
        }
    }

    #[test]
    fn good_basis_chain_with_exclusion() {
        // chain x^2 + x y^3, head frame a = (2, 3): box minus {(k, 2): k >= 1}
        let b = standard_good_basis(&inv("x^2 + x*y^3")).unwrap();
        let mut got: Vec<Vec<u32>> = b.iter().map(|m| m.exponents.clone()).collect();
        got.sort();
        assert_eq!(
            got,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1]
            ]
        );
    }

    #[test]
    fn chain_exclusion_full_consumption() {
        // odd chains exclude the fully consumed alternating pattern as well:
        // (2,2,2) has mu = 5, box 8, l=0 pattern excludes 2, full pattern 1
        let w = inv("x1^2 + x1*x2^2 + x2*x3^2");
        let b = standard_good_basis(&w).unwrap();
        assert_eq!(b.len(), 5);
        assert!(!b.iter().any(|m| m.exponents == vec![1, 0, 1]));
    }

    #[test]
    fn state_space_a2() {
        let w = inv("x^3");
        let s = fjrw_state_space(&w, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(s.total_dimension, 2);
        let dims: Vec<u64> = s.sectors.iter().map(|s| s.dimension).collect();
        assert_eq!(dims, vec![0, 1, 1]);
    }

    #[test]
    fn state_space_d4_sector_vector() {
        let w = inv("x^2*y + y^3");
        let s = fjrw_state_space(&w, DEFAULT_GROUP_BOUND).unwrap();
        let dims: Vec<u64> = s.sectors.iter().map(|s| s.dimension).collect();
        assert_eq!(dims, vec![1, 1, 1, 0, 1, 1]);
        assert_eq!(s.total_dimension, 5);
        // the k=3 sector fixes x2 only
        assert_eq!(s.sectors[3].fixed, vec![1]);
        assert_eq!(
            s.sectors[3].restricted.as_ref().unwrap().to_string(),
            "x2^3"
        );
    }

    #[test]
    fn state_space_fermat_cubic() {
        let w = inv("x^3 + y^3 + z^3");
        let s = fjrw_state_space(&w, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(s.total_dimension, 8);
        for sec in &s.sectors {
            if sec.fixed.is_empty() {
                assert_eq!(sec.dimension, 1);
            } else {
                assert_eq!(sec.dimension, 0);
            }
        }
    }

    #[test]
    fn mirror_check_d4() {
        let w = inv("x^2*y + y^3");
        let r = mirror_check(&w, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(r.state_dim, 5);
        assert_eq!(r.mirror_milnor, 5);
        assert_eq!(r.good_basis_size, 5);
        assert!(r.equal);
        assert!(r.weight_half_chain);
    }

    #[test]
    fn mirror_check_fermat_cubic() {
        let w = inv("x^3 + y^3 + z^3");
        let r = mirror_check(&w, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!((r.state_dim, r.mirror_milnor, r.good_basis_size), (8, 8, 8));
        assert!(r.equal);
        assert!(!r.weight_half_chain);
    }

    #[test]
    fn mirror_check_fermat_series() {
        for a in 3u32..=7 {
            let w = inv(&format!("x^{a}"));
            let r = mirror_check(&w, DEFAULT_GROUP_BOUND).unwrap();
            assert_eq!(r.state_dim, (a - 1) as u64);
            assert!(r.equal);
            assert!(!r.weight_half_chain);
        }
    }
}
