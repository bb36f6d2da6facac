//! Invertibility checking, atomic decomposition into Fermat/chain/loop
//! blocks, weight system, central charge, and Milnor number.
//!
//! A polynomial is invertible when it has as many monomials as variables
//! and a nonsingular exponent matrix; such polynomials decompose (up to
//! permutation of variables) into a disjoint sum of three atomic types:
//!
//! * Fermat `x^a`
//! * chain `x1^a1 x2 + x2^a2 x3 + ... + xN^aN` (tail power last) or the
//!   reverse reading `x1^a1 + x1 x2^a2 + ...` (head power first)
//! * loop `x1^a1 x2 + ... + xN^aN x1`
//!
//! with all exponents at least 2.

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, RationalMatrix};
use crate::poly::{rat, ExponentMatrix, Polynomial, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    Fermat,
    Chain,
    Loop,
}

/// Which end of a stored chain carries the pure power.
///
/// `HeadPowerFirst` lists the chain as `x1^a1 + x1 x2^a2 + ...` (the frame
/// in which the standard good basis is stated); `TailPowerLast` lists it as
/// `x1^a1 x2 + ... + xN^aN`. The two are readings of the same polynomial
/// from opposite ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainOrientation {
    HeadPowerFirst,
    TailPowerLast,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicBlock {
    pub kind: BlockKind,
    /// 0-based variable indices in listing order.
    pub variables: Vec<usize>,
    /// Dominant exponent of each listed variable, all >= 2.
    pub exponents: Vec<u32>,
    /// Recorded for chains only.
    pub orientation: Option<ChainOrientation>,
}

impl AtomicBlock {
    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    /// Chain exponents in the head-power-first frame, together with the
    /// variables in the matching order.
    pub fn head_first(&self) -> (Vec<usize>, Vec<u32>) {
        match self.orientation {
            Some(ChainOrientation::TailPowerLast) => (
                self.variables.iter().rev().copied().collect(),
                self.exponents.iter().rev().copied().collect(),
            ),
            _ => (self.variables.clone(), self.exponents.clone()),
        }
    }

    /// Signature used for permutation-invariance comparisons: kind plus the
    /// exponent sequence in a canonical frame (head-first for chains,
    /// lexicographically minimal rotation for loops).
    pub fn signature(&self) -> (BlockKind, Vec<u32>) {
        match self.kind {
            BlockKind::Fermat => (BlockKind::Fermat, self.exponents.clone()),
            BlockKind::Chain => (BlockKind::Chain, self.head_first().1),
            BlockKind::Loop => {
                let n = self.exponents.len();
                let mut best: Option<Vec<u32>> = None;
                for s in 0..n {
                    let rot: Vec<u32> = (0..n).map(|i| self.exponents[(s + i) % n]).collect();
                    if best.as_ref().map_or(true, |b| rot < *b) {
                        best = Some(rot);
                    }
                }
                (BlockKind::Loop, best.unwrap())
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct InvertibleStructure {
    pub polynomial: Polynomial,
    pub matrix: ExponentMatrix,
    pub blocks: Vec<AtomicBlock>,
}

/// Check invertibility and produce the atomic decomposition.
pub fn check_invertible(p: &Polynomial) -> Result<InvertibleStructure> {
    let m = p.exponent_matrix();
    if m.rows() != m.cols() {
        return Err(Error::NotInvertible(format!(
            "number of monomials ({}) must equal number of variables ({})",
            m.rows(),
            m.cols()
        )));
    }
    if linalg::det(&IntMatrix::from_exponents(&m)).is_zero() {
        return Err(Error::NotInvertible("singular exponent matrix".into()));
    }
    let blocks = atomic_decompose(&m)?;
    Ok(InvertibleStructure {
        polynomial: p.clone(),
        matrix: m,
        blocks,
    })
}

/// Decompose a square exponent matrix into atomic blocks.
///
/// Each row must have one or two nonzero entries. A row owns the variable
/// carrying its dominant power (exponent >= 2); the optional unit-exponent
/// entry links to another variable. Ownership must match rows to variables
/// bijectively and each variable may be linked at most once; the resulting
/// functional graph splits into isolated points (Fermat), paths (chain) and
/// cycles (loop). Blocks are ordered by their smallest variable index.
pub fn atomic_decompose(e: &ExponentMatrix) -> Result<Vec<AtomicBlock>> {
    let n = e.rows();
    if n != e.cols() {
        return Err(Error::NotInvertible("exponent matrix not square".into()));
    }

    // owner[v] = (owning row, dominant exponent); succ[v] = linked variable
    let mut owner: Vec<Option<(usize, u32)>> = vec![None; n];
    let mut succ: Vec<Option<usize>> = vec![None; n];

    for i in 0..n {
        let nz: Vec<(usize, u32)> = e
            .row(i)
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(|(j, &v)| (j, v))
            .collect();
        let (own, exp, link) = match nz.len() {
            0 => {
                return Err(Error::NotInvertible(format!(
                    "monomial {} is constant",
                    i + 1
                )))
            }
            1 => {
                let (j, v) = nz[0];
                if v < 2 {
                    return Err(Error::NotInvertible(format!(
                        "exponent 1 in atomic slot (monomial {}, variable x{})",
                        i + 1,
                        j + 1
                    )));
                }
                (j, v, None)
            }
            2 => {
                let (j1, v1) = nz[0];
                let (j2, v2) = nz[1];
                match (v1 >= 2, v2 >= 2) {
                    (true, false) if v2 == 1 => (j1, v1, Some(j2)),
                    (false, true) if v1 == 1 => (j2, v2, Some(j1)),
                    (true, true) => {
                        return Err(Error::NotInvertible(format!(
                            "monomial {} has two dominant powers; no atomic matching",
                            i + 1
                        )))
                    }
                    _ => {
                        return Err(Error::NotInvertible(format!(
                            "exponent 1 in atomic slot (monomial {})",
                            i + 1
                        )))
                    }
                }
            }
            _ => {
                return Err(Error::NotInvertible(format!(
                    "monomial {} involves more than two variables",
                    i + 1
                )))
            }
        };
        if owner[own].is_some() {
            return Err(Error::NotInvertible(format!(
                "variable x{} is the dominant power of two monomials; no consistent matching",
                own + 1
            )));
        }
        owner[own] = Some((i, exp));
        if let Some(l) = link {
            succ[own] = Some(l);
        }
    }

    // every variable must be owned (rows == vars and ownership is injective,
    // so this only fails when some variable never appears dominantly)
    for v in 0..n {
        if owner[v].is_none() {
            return Err(Error::NotInvertible(format!(
                "variable x{} is never the dominant power of a monomial",
                v + 1
            )));
        }
    }

    // each variable may be linked by at most one monomial
    let mut pred: Vec<Option<usize>> = vec![None; n];
    for v in 0..n {
        if let Some(t) = succ[v] {
            if pred[t].is_some() {
                return Err(Error::NotInvertible(format!(
                    "variable x{} is linked by two monomials; no consistent matching",
                    t + 1
                )));
            }
            pred[t] = Some(v);
        }
    }

    let exp_of = |v: usize| owner[v].unwrap().1;
    let mut visited = vec![false; n];
    let mut blocks = Vec::new();

    // paths start at variables with no predecessor
    for start in 0..n {
        if visited[start] || pred[start].is_some() {
            continue;
        }
        let mut path = vec![start];
        visited[start] = true;
        let mut cur = start;
        while let Some(nx) = succ[cur] {
            if visited[nx] {
                return Err(Error::NotInvertible(
                    "inconsistent linkage graph".into(),
                ));
            }
            visited[nx] = true;
            path.push(nx);
            cur = nx;
        }
        if path.len() == 1 {
            blocks.push(AtomicBlock {
                kind: BlockKind::Fermat,
                exponents: vec![exp_of(start)],
                variables: path,
                orientation: None,
            });
        } else {
            // terminal (pure power) is the last vertex; list the chain from
            // whichever end has the smaller variable index
            let terminal = *path.last().unwrap();
            let (vars, orientation) = if start < terminal {
                (path, ChainOrientation::TailPowerLast)
            } else {
                (
                    path.into_iter().rev().collect::<Vec<_>>(),
                    ChainOrientation::HeadPowerFirst,
                )
            };
            let exponents = vars.iter().map(|&v| exp_of(v)).collect();
            blocks.push(AtomicBlock {
                kind: BlockKind::Chain,
                variables: vars,
                exponents,
                orientation: Some(orientation),
            });
        }
    }

    // remaining vertices lie on cycles; start each loop at its smallest index
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut cur = succ[start].ok_or_else(|| {
            Error::NotInvertible("inconsistent linkage graph".into())
        })?;
        while cur != start {
            visited[cur] = true;
            cycle.push(cur);
            cur = succ[cur].ok_or_else(|| {
                Error::NotInvertible("inconsistent linkage graph".into())
            })?;
        }
        let exponents = cycle.iter().map(|&v| exp_of(v)).collect();
        blocks.push(AtomicBlock {
            kind: BlockKind::Loop,
            variables: cycle,
            exponents,
            orientation: None,
        });
    }

    blocks.sort_by_key(|b| *b.variables.iter().min().unwrap());
    Ok(blocks)
}

/// Exact weights: the unique solution of `E q = (1,...,1)`, validated to lie
/// in (0, 1/2].
pub fn weights(e: &ExponentMatrix) -> Result<Vec<Rat>> {
    let a = RationalMatrix::from_exponents(e);
    let ones = vec![Rat::one(); e.rows()];
    let q = linalg::solve_exact(&a, &ones)?.unique()?;
    let half = rat(1, 2);
    for (j, w) in q.iter().enumerate() {
        if !w.is_positive() {
            return Err(Error::NonAdmissible(format!(
                "weight q{} = {} is not positive",
                j + 1,
                w
            )));
        }
        if *w > half {
            return Err(Error::NonAdmissible(format!(
                "weight q{} = {} exceeds 1/2",
                j + 1,
                w
            )));
        }
    }
    Ok(q)
}

/// Central charge `sum_j (1 - 2 q_j)`.
pub fn central_charge(q: &[Rat]) -> Rat {
    let mut c = Rat::zero();
    let two = rat(2, 1);
    for w in q {
        c += Rat::one() - &two * w;
    }
    c
}

/// Milnor number `prod_j (1/q_j - 1)`; errors when the product is not a
/// positive integer (which signals a non-isolated critical point).
pub fn milnor_number(q: &[Rat]) -> Result<BigInt> {
    let mut prod = Rat::one();
    for w in q {
        prod *= w.recip() - Rat::one();
    }
    if !prod.is_integer() || !prod.is_positive() {
        return Err(Error::NonAdmissible(format!(
            "milnor product {} is not a positive integer",
            prod
        )));
    }
    Ok(prod.to_integer())
}

/// Weight vector, central charge, and Milnor number in one record, with the
/// indices (0-based) of boundary weights q_j = 1/2 surfaced as a structured
/// warning rather than an error.
#[derive(Debug, Clone)]
pub struct WeightSystem {
    pub weights: Vec<Rat>,
    pub central_charge: Rat,
    pub milnor_number: BigInt,
    pub boundary_weight_vars: Vec<usize>,
}

pub fn weight_system(e: &ExponentMatrix) -> Result<WeightSystem> {
    let q = weights(e)?;
    let half = rat(1, 2);
    let boundary_weight_vars = q
        .iter()
        .enumerate()
        .filter(|(_, w)| **w == half)
        .map(|(j, _)| j)
        .collect();
    Ok(WeightSystem {
        central_charge: central_charge(&q),
        milnor_number: milnor_number(&q)?,
        weights: q,
        boundary_weight_vars,
    })
}

/// Informational Arnold-type label for exact signature matches; never used
/// in logic.
pub fn ade_label(blocks: &[AtomicBlock]) -> Option<String> {
    let mut sigs: Vec<(BlockKind, Vec<u32>)> = blocks.iter().map(|b| b.signature()).collect();
    sigs.sort();
    match sigs.as_slice() {
        [(BlockKind::Fermat, a)] => Some(format!("A{}", a[0] - 1)),
        [(BlockKind::Chain, a)] if a.len() == 2 && a[1] == 2 => Some(format!("D{}", a[0] + 1)),
        [(BlockKind::Chain, a)] if a.as_slice() == [3, 3] => Some("E7".into()),
        [(BlockKind::Fermat, a), (BlockKind::Fermat, b)] => {
            let mut pair = [a[0], b[0]];
            pair.sort();
            match pair {
                [3, 4] => Some("E6".into()),
                [3, 5] => Some("E8".into()),
                _ => None,
            }
        }
        _ => None,
    }
}
