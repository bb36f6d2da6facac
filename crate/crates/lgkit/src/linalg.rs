//! Exact rational and integer matrix kernel: solve, rank, kernel basis,
//! and Smith normal form. No floating point anywhere; group orders and
//! Milnor counts downstream must come out as exact integers.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{ExponentMatrix, Rat};

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        RationalMatrix { rows: r, cols: c, data }
    }

    pub fn from_exponents(e: &ExponentMatrix) -> Self {
        RationalMatrix::from_rows(
            (0..e.rows())
                .map(|i| e.row(i).iter().map(|&v| Rat::from(BigInt::from(v))).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    if !self.get(i, j).is_zero() && !v[j].is_zero() {
                        acc += self.get(i, j) * &v[j];
                    }
                }
                acc
            })
            .collect()
    }
}

/// Result of an exact linear solve.
#[derive(Debug, Clone, PartialEq)]
pub enum LinearSolution {
    Unique(Vec<Rat>),
    /// Underdetermined system: one particular solution plus a kernel basis.
    Affine {
        particular: Vec<Rat>,
        kernel: Vec<Vec<Rat>>,
    },
}

impl LinearSolution {
    pub fn unique(self) -> Result<Vec<Rat>> {
        match self {
            LinearSolution::Unique(x) => Ok(x),
            LinearSolution::Affine { .. } => Err(Error::Singular),
        }
    }
}

/// Row echelon reduction; returns (echelon matrix, pivot column per pivot row).
fn row_echelon(a: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.data.swap(r * cols + j, pr * cols + j);
            }
        }
        let inv = m.get(r, c).recip();
        for j in c..cols {
            let v = m.get(r, j) * &inv;
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i != r && !m.get(i, c).is_zero() {
                let factor = m.get(i, c).clone();
                for j in c..cols {
                    let v = m.get(i, j) - &factor * m.get(r, j);
                    m.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (m, pivots)
}

/// Exact solve of `A x = b`. Unique solution when A has full column rank;
/// otherwise the affine solution description. The returned solution is
/// verified by substitution before being handed back.
pub fn solve_exact(a: &RationalMatrix, b: &[Rat]) -> Result<LinearSolution> {
    assert_eq!(b.len(), a.rows());
    let mut aug = RationalMatrix {
        rows: a.rows,
        cols: a.cols + 1,
        data: Vec::with_capacity(a.rows * (a.cols + 1)),
    };
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.data.push(a.get(i, j).clone());
        }
        aug.data.push(b[i].clone());
    }
    let (ech, pivots) = row_echelon(&aug);
    if pivots.contains(&a.cols) {
        return Err(Error::Inconsistent);
    }
    let rank = pivots.len();
    let mut particular = vec![Rat::zero(); a.cols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = ech.get(r, a.cols).clone();
    }
    let check = a.mul_vec(&particular);
    if check != b {
        return Err(Error::Internal("solve_exact verification failed".into()));
    }
    if rank == a.cols {
        Ok(LinearSolution::Unique(particular))
    } else {
        let kernel = kernel_from_echelon(&ech, &pivots, a.cols);
        Ok(LinearSolution::Affine { particular, kernel })
    }
}

fn kernel_from_echelon(
    ech: &RationalMatrix,
    pivots: &[usize],
    cols: usize,
) -> Vec<Vec<Rat>> {
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; cols];
        for (r, &c) in pivots.iter().enumerate() {
            if c < cols {
                v[c] = Some(r);
            }
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (r, &c) in pivots.iter().enumerate() {
            if c < cols {
                v[c] = -ech.get(r, free).clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Rank and a kernel basis of A. `rank + kernel.len() == cols`, and
/// `A v = 0` holds exactly for every basis vector.
pub fn rank_and_kernel(a: &RationalMatrix) -> (usize, Vec<Vec<Rat>>) {
    let (ech, pivots) = row_echelon(a);
    let kernel = kernel_from_echelon(&ech, &pivots, a.cols);
    for v in &kernel {
        debug_assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
    }
    (pivots.len(), kernel)
}

/// Dense integer matrix, row-major, arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_exponents(e: &ExponentMatrix) -> Self {
        IntMatrix::from_rows(
            (0..e.rows())
                .map(|i| e.row(i).iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix {
            rows: n,
            cols: n,
            data: vec![BigInt::zero(); n * n],
        };
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix {
            rows: self.rows,
            cols: other.cols,
            data: vec![BigInt::zero(); self.rows * other.cols],
        };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(dst, j) + q * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst) + q * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, c).clone();
            self.set(i, c, v);
        }
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows, a.cols, "determinant of non-square matrix");
    let n = a.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                m.set(i, j, v);
            }
            m.set(i, k, BigInt::zero());
        }
        prev = m.get(k, k).clone();
    }
    let d = m.get(n - 1, n - 1).clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Smith normal form of a nonsingular square integer matrix:
/// `U A V = D` with unimodular U, V and positive diagonal D whose entries
/// form a divisibility chain.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
}

/// Pivot rule: smallest absolute value among nonzero entries of the working
/// submatrix, ties broken by row-major position (keeps U and V deterministic
/// across runs).
fn min_abs_pivot(m: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs = BigInt::zero();
    for i in k..m.rows {
        for j in k..m.cols {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.is_none() || a < best_abs {
                best = Some((i, j));
                best_abs = a;
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> Result<SmithDecomposition> {
    assert_eq!(a.rows, a.cols, "smith normal form expects a square matrix");
    let n = a.rows;
    if det(a).is_zero() {
        return Err(Error::Singular);
    }
    let mut d = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(n);

    let mut k = 0;
    while k < n {
        // place the smallest pivot at (k,k) and clear its row and column
        loop {
            let (pi, pj) = min_abs_pivot(&d, k).ok_or(Error::Singular)?;
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut dirty = false;
            let pivot = d.get(k, k).clone();
            for i in k + 1..n {
                if !d.get(i, k).is_zero() {
                    let q = -d.get(i, k).div_floor(&pivot);
                    d.add_row_multiple(i, k, &q);
                    u.add_row_multiple(i, k, &q);
                    if !d.get(i, k).is_zero() {
                        dirty = true;
                    }
                }
            }
            let pivot = d.get(k, k).clone();
            for j in k + 1..n {
                if !d.get(k, j).is_zero() {
                    let q = -d.get(k, j).div_floor(&pivot);
                    d.add_col_multiple(j, k, &q);
                    v.add_col_multiple(j, k, &q);
                    if !d.get(k, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }

            if d.get(k, k).is_negative() {
                d.negate_col(k);
                v.negate_col(k);
            }

            // divisibility fix: pull a non-divisible entry into row k
            let pivot = d.get(k, k).clone();
            let mut offender = None;
            'scan: for i in k + 1..n {
                for j in k + 1..n {
                    if !d.get(i, j).mod_floor(&pivot).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        k += 1;
    }

    // reconstruction and unimodularity checks before returning
    let uav = u.mul(a).mul(&v);
    if uav != d {
        return Err(Error::Internal("smith normal form: U*A*V != D".into()));
    }
    if det(&u).abs() != BigInt::one() || det(&v).abs() != BigInt::one() {
        return Err(Error::Internal("smith normal form: transforms not unimodular".into()));
    }
    let invariant_factors: Vec<BigInt> = (0..n).map(|i| d.get(i, i).clone()).collect();
    for w in invariant_factors.windows(2) {
        if !w[1].mod_floor(&w[0]).is_zero() {
            return Err(Error::Internal("smith normal form: divisibility chain broken".into()));
        }
    }
    Ok(SmithDecomposition {
        u,
        v,
        d,
        invariant_factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    fn qm(rows: &[&[(i64, i64)]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| rat(n, d)).collect())
                .collect(),
        )
    }

    #[test]
    fn solve_diagonal() {
        let a = qm(&[&[(3, 1), (0, 1), (0, 1)], &[(0, 1), (3, 1), (0, 1)], &[(0, 1), (0, 1), (3, 1)]]);
        let b = vec![rat(1, 1), rat(1, 1), rat(1, 1)];
        let x = solve_exact(&a, &b).unwrap().unique().unwrap();
        assert_eq!(x, vec![rat(1, 3), rat(1, 3), rat(1, 3)]);
    }

    #[test]
    fn solve_chain_weights() {
        // hand elimination gives (1/3, 2/9), verified by substitution
        let a = qm(&[&[(3, 1), (0, 1)], &[(1, 1), (3, 1)]]);
        let b = vec![rat(1, 1), rat(1, 1)];
        let x = solve_exact(&a, &b).unwrap().unique().unwrap();
        assert_eq!(x, vec![rat(1, 3), rat(2, 9)]);
        assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn solve_loop_weights() {
        let a = qm(&[&[(2, 1), (1, 1)], &[(1, 1), (2, 1)]]);
        let b = vec![rat(1, 1), rat(1, 1)];
        let x = solve_exact(&a, &b).unwrap().unique().unwrap();
        assert_eq!(x, vec![rat(1, 3), rat(1, 3)]);
    }

    #[test]
    fn solve_inconsistent() {
        let a = qm(&[&[(1, 1), (2, 1)], &[(2, 1), (4, 1)]]);
        let b = vec![rat(1, 1), rat(3, 1)];
        assert_eq!(solve_exact(&a, &b).unwrap_err(), Error::Inconsistent);
    }

    #[test]
    fn solve_underdetermined_reports_affine() {
        let a = qm(&[&[(1, 1), (2, 1)]]);
        let b = vec![rat(3, 1)];
        match solve_exact(&a, &b).unwrap() {
            LinearSolution::Affine { particular, kernel } => {
                assert_eq!(a.mul_vec(&particular), b);
                assert_eq!(kernel.len(), 1);
            }
            other => panic!("expected affine solution, got {other:?}"),
        }
    }

    #[test]
    fn rank_kernel_examples() {
        let id = qm(&[&[(1, 1), (0, 1), (0, 1)], &[(0, 1), (1, 1), (0, 1)], &[(0, 1), (0, 1), (1, 1)]]);
        let (r, k) = rank_and_kernel(&id);
        assert_eq!((r, k.len()), (3, 0));

        let zero = qm(&[&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]]);
        let (r, k) = rank_and_kernel(&zero);
        assert_eq!((r, k.len()), (0, 2));

        let dep = qm(&[&[(1, 1), (2, 1)], &[(2, 1), (4, 1)]]);
        let (r, k) = rank_and_kernel(&dep);
        assert_eq!((r, k.len()), (1, 1));
        // kernel spanned by (2, -1) up to scale
        let v = &k[0];
        assert_eq!(v[0].clone() * rat(-1, 2), v[1].clone());
        assert!(dep.mul_vec(v).iter().all(|x| x.is_zero()));
    }

    /// Independent oracle: the k-th invariant factor equals
    /// gcd(all k-minors) / gcd(all (k-1)-minors).
    fn minor_gcd_factors(a: &IntMatrix) -> Vec<BigInt> {
        let n = a.rows();
        fn minors(a: &IntMatrix, k: usize) -> BigInt {
            let n = a.rows();
            let mut g = BigInt::zero();
            let rows_sel = combinations(n, k);
            let cols_sel = combinations(n, k);
            for rs in &rows_sel {
                for cs in &cols_sel {
                    let sub = IntMatrix::from_rows(
                        rs.iter()
                            .map(|&i| cs.iter().map(|&j| a.get(i, j).clone()).collect())
                            .collect(),
                    );
                    g = g.gcd(&det(&sub));
                }
            }
            g
        }
        fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut cur = Vec::new();
            fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if cur.len() == k {
                    out.push(cur.clone());
                    return;
                }
                for i in start..n {
                    cur.push(i);
                    rec(i + 1, n, k, cur, out);
                    cur.pop();
                }
            }
            rec(0, n, k, &mut cur, &mut out);
            out
        }
        let mut prev = BigInt::one();
        (1..=n)
            .map(|k| {
                let g = minors(a, k);
                let f = &g / &prev;
                prev = g;
                f
            })
            .collect()
    }

    #[test]
    fn snf_diagonal_stays_diagonal() {
        let a = im(&[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3]]);
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.invariant_factors, vec![BigInt::from(3), BigInt::from(3), BigInt::from(3)]);
    }

    #[test]
    fn snf_chain_matrix() {
        let a = im(&[&[2, 1], &[0, 3]]);
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.invariant_factors, vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(minor_gcd_factors(&a), s.invariant_factors);
    }

    #[test]
    fn snf_loop_matrix() {
        let a = im(&[&[2, 1], &[1, 2]]);
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.invariant_factors, vec![BigInt::from(1), BigInt::from(3)]);
        assert_eq!(minor_gcd_factors(&a), s.invariant_factors);
    }

    #[test]
    fn snf_rejects_singular() {
        let a = im(&[&[1, 2], &[2, 4]]);
        assert_eq!(smith_normal_form(&a).unwrap_err(), Error::Singular);
    }

    #[test]
    fn snf_matches_minor_gcd_oracle_on_fixed_cases() {
        let cases: Vec<IntMatrix> = vec![
            im(&[&[3, 0], &[1, 3]]),
            im(&[&[2, 1, 0], &[0, 2, 1], &[1, 0, 2]]),
            im(&[&[4, 1, 0], &[0, 3, 1], &[0, 0, 2]]),
            im(&[&[-6, 111], &[5, -672]]),
            im(&[&[7]]),
        ];
        for a in cases {
            let s = smith_normal_form(&a).unwrap();
            assert_eq!(minor_gcd_factors(&a), s.invariant_factors, "matrix {a:?}");
            let prod: BigInt = s.invariant_factors.iter().product();
            assert_eq!(prod, det(&a).abs());
        }
    }

    #[test]
    fn det_bareiss() {
        let a = im(&[&[2, 1], &[1, 2]]);
        assert_eq!(det(&a), BigInt::from(3));
        let b = im(&[&[2, 1, 0], &[0, 2, 1], &[1, 0, 2]]);
        assert_eq!(det(&b), BigInt::from(9));
        let c = im(&[&[1, 2], &[2, 4]]);
        assert_eq!(det(&c), BigInt::zero());
    }
}
