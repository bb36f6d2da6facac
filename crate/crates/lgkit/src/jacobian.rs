//! Graded Jacobian algebra computations: monomial enumeration by weighted
//! degree, quotient bases, normal-form reduction against the Jacobian
//! ideal, hessian determinant, isolatedness certification, and the
//! Grothendieck residue pairing (normalized so that `Res(hess f) = mu`).
//!
//! All degrees are handled as scaled integers: with weights `q_j = n_j / D`
//! over a common denominator D, the monomial `x^m` has scaled degree
//! `sum_j m_j n_j` and quasihomogeneity of `f` means every term scales to
//! exactly D. Monomials are packed into `u128` keys whose integer order is
//! the lexicographic order, so graded pieces are flat sorted arrays and
//! ideal generators are located by monotone merge scans rather than
//! searches.
//!
//! Per-degree eliminations run over exact rationals. Rows coming from the
//! partials of an invertible polynomial have at most two nonzero entries;
//! there elimination degenerates to gain-graph contraction, handled by a
//! linear-time union-find whose edge gains live in a small-fraction type
//! that falls back to arbitrary precision on overflow.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::classify;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Rat};

/// Per-variable bit fields inside a `u128` monomial key; variable 0 sits in
/// the top bits so that key order equals lexicographic exponent order.
#[derive(Debug, Clone, Copy)]
struct Packing {
    bits: u32,
    n: usize,
}

impl Packing {
    fn new(n: usize) -> Result<Packing> {
        if n == 0 || n > 32 {
            return Err(Error::Invalid(format!("{n} variables not supported")));
        }
        Ok(Packing {
            bits: (128 / n) as u32,
            n,
        })
    }

    fn shift(&self, j: usize) -> u32 {
        (self.n - 1 - j) as u32 * self.bits
    }

    fn pack(&self, exps: &[u32]) -> u128 {
        let mut key = 0u128;
        for (j, &e) in exps.iter().enumerate() {
            key |= (e as u128) << self.shift(j);
        }
        key
    }

    fn unpack_into(&self, key: u128, out: &mut [u32]) {
        let mask = if self.bits == 128 {
            u128::MAX
        } else {
            (1u128 << self.bits) - 1
        };
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = ((key >> self.shift(j)) & mask) as u32;
        }
    }

    fn unpack(&self, key: u128) -> Vec<u32> {
        let mut v = vec![0u32; self.n];
        self.unpack_into(key, &mut v);
        v
    }

    fn max_field(&self) -> u64 {
        if self.bits >= 64 {
            u64::MAX
        } else {
            (1u64 << self.bits) - 1
        }
    }
}

/// Weights as scaled integers: `q_j = nums[j] / den`.
#[derive(Debug, Clone)]
struct Grading {
    den: u64,
    nums: Vec<u64>,
    packing: Packing,
}

impl Grading {
    fn from_weights(q: &[Rat]) -> Result<Grading> {
        if q.is_empty() {
            return Err(Error::Invalid("empty weight vector".into()));
        }
        let mut den = BigInt::one();
        for w in q {
            if !w.is_positive() || *w >= Rat::one() {
                return Err(Error::Invalid(format!("weight {} outside (0, 1)", w)));
            }
            den = den.lcm(w.denom());
        }
        let den_u = den
            .to_u64()
            .ok_or_else(|| Error::Invalid("weight denominators too large".into()))?;
        let nums = q
            .iter()
            .map(|w| {
                let scaled = w * Rat::from(den.clone());
                debug_assert!(scaled.is_integer());
                scaled
                    .to_integer()
                    .to_u64()
                    .ok_or_else(|| Error::Invalid("weight numerators too large".into()))
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(Grading {
            den: den_u,
            packing: Packing::new(q.len())?,
            nums,
        })
    }

    fn degree(&self, exps: &[u32]) -> u64 {
        exps.iter()
            .zip(&self.nums)
            .map(|(&e, &n)| e as u64 * n)
            .sum()
    }

    fn unscale(&self, d: u64) -> Rat {
        Rat::new(BigInt::from(d), BigInt::from(self.den))
    }

    /// Scaled central charge `N*den - 2*sum(nums)`; negative means the
    /// weights are not admissible.
    fn central_charge_scaled(&self) -> Option<u64> {
        let n = self.nums.len() as u64 * self.den;
        let s: u64 = self.nums.iter().sum();
        n.checked_sub(2 * s)
    }
}

/// Graded pieces up to a scaled-degree cap, as flat arrays of packed keys
/// in descending order, indexed directly by scaled degree.
struct DegreeTable {
    max: u64,
    pieces: Vec<Vec<u128>>,
}

impl DegreeTable {
    fn piece(&self, d: u64) -> &[u128] {
        if d > self.max {
            &[]
        } else {
            &self.pieces[d as usize]
        }
    }
}

/// All exponent vectors with scaled degree at most `max`, grouped by degree
/// and descending within each group.
fn monomials_by_degree(g: &Grading, max: u64) -> Result<DegreeTable> {
    // every enumerated exponent must fit its key field
    for &n in &g.nums {
        if max / n > g.packing.max_field() {
            return Err(Error::Invalid(
                "graded piece too large for packed enumeration".into(),
            ));
        }
    }
    let mut pieces: Vec<Vec<u128>> = vec![Vec::new(); max as usize + 1];
    struct Ctx<'a> {
        g: &'a Grading,
        pieces: &'a mut Vec<Vec<u128>>,
    }
    fn rec(ctx: &mut Ctx, j: usize, used: u64, max: u64, key: u128) {
        if j == ctx.g.nums.len() {
            ctx.pieces[used as usize].push(key);
            return;
        }
        let step = ctx.g.nums[j];
        let shift = ctx.g.packing.shift(j);
        let top = (max - used) / step;
        for e in (0..=top).rev() {
            rec(ctx, j + 1, used + e * step, max, key | ((e as u128) << shift));
        }
    }
    rec(&mut Ctx { g, pieces: &mut pieces }, 0, 0, max, 0);
    Ok(DegreeTable { max, pieces })
}

/// Exponent vectors of exact weighted degree `d`, in descending
/// lexicographic order. Empty when `d` is not attained.
pub fn graded_monomials(q: &[Rat], d: &Rat) -> Result<Vec<Vec<u32>>> {
    if d.is_negative() {
        return Ok(Vec::new());
    }
    let g = Grading::from_weights(q)?;
    let scaled = d * Rat::from(BigInt::from(g.den));
    if !scaled.is_integer() {
        return Ok(Vec::new());
    }
    let Some(target) = scaled.to_integer().to_u64() else {
        return Err(Error::Invalid("degree too large to enumerate".into()));
    };
    let table = monomials_by_degree(&g, target)?;
    Ok(table
        .piece(target)
        .iter()
        .map(|&k| g.packing.unpack(k))
        .collect())
}

/// Exact fraction with an i64 fast path, promoting to `Rat` on overflow.
/// Small values keep a positive denominator and are fully reduced.
#[derive(Debug, Clone)]
enum Frac {
    Small(i64, i64),
    Big(Box<Rat>),
}

fn gcd64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Frac {
    fn one() -> Frac {
        Frac::Small(1, 1)
    }

    fn is_zero(&self) -> bool {
        match self {
            Frac::Small(n, _) => *n == 0,
            Frac::Big(r) => r.is_zero(),
        }
    }

    fn from_rat(r: &Rat) -> Frac {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Frac::Small(n, d),
            _ => Frac::Big(Box::new(r.clone())),
        }
    }

    fn to_rat(&self) -> Rat {
        match self {
            Frac::Small(n, d) => Rat::new(BigInt::from(*n), BigInt::from(*d)),
            Frac::Big(r) => (**r).clone(),
        }
    }

    fn small(n: i128, d: i128) -> Frac {
        debug_assert!(d != 0);
        let (n, d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = gcd64(n.unsigned_abs().min(u128::from(u64::MAX)) as u64, 0)
            .max(1);
        let _ = g;
        // reduce over u128 to stay exact
        let gu = {
            let mut a = n.unsigned_abs();
            let mut b = d.unsigned_abs();
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            a.max(1)
        };
        let (n, d) = (n / gu as i128, d / gu as i128);
        if let (Ok(ns), Ok(ds)) = (i64::try_from(n), i64::try_from(d)) {
            Frac::Small(ns, ds)
        } else {
            Frac::Big(Box::new(Rat::new(
                BigInt::from(n),
                BigInt::from(d),
            )))
        }
    }

    fn mul(&self, other: &Frac) -> Frac {
        match (self, other) {
            (Frac::Small(a, b), Frac::Small(c, d)) => {
                Frac::small(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Frac::Big(Box::new(self.to_rat() * other.to_rat())),
        }
    }

    /// -(self / other)
    fn neg_div(&self, other: &Frac) -> Frac {
        match (self, other) {
            (Frac::Small(a, b), Frac::Small(c, d)) => {
                Frac::small(-(*a as i128) * *d as i128, *b as i128 * *c as i128)
            }
            _ => Frac::Big(Box::new(-(self.to_rat() / other.to_rat()))),
        }
    }

    /// self + other == 0, without materializing the sum.
    fn sum_is_zero(&self, other: &Frac) -> bool {
        match (self, other) {
            (Frac::Small(a, b), Frac::Small(c, d)) => {
                *a as i128 * *d as i128 + *c as i128 * *b as i128 == 0
            }
            _ => (self.to_rat() + other.to_rat()).is_zero(),
        }
    }
}

/// Union-find contraction for systems whose rows have at most two nonzero
/// entries. A two-entry row identifies two columns up to an exact ratio; a
/// one-entry row kills its column's component. Quotient dimension is the
/// number of surviving components; the representative of a surviving
/// component is its largest column index (the lexicographically smallest
/// monomial when columns are sorted descending).
struct GainForest {
    parent: Vec<u32>,
    // x_i = gain[i] * x_parent(i)
    gain: Vec<Frac>,
    dead: Vec<bool>,
    path: Vec<u32>,
}

impl GainForest {
    fn new(ncols: usize) -> GainForest {
        GainForest {
            parent: (0..ncols as u32).collect(),
            gain: vec![Frac::one(); ncols],
            dead: vec![false; ncols],
            path: Vec::new(),
        }
    }

    fn find(&mut self, i: u32) -> (u32, Frac) {
        let mut cur = i;
        self.path.clear();
        while self.parent[cur as usize] != cur {
            self.path.push(cur);
            cur = self.parent[cur as usize];
        }
        let root = cur;
        let mut acc = Frac::one();
        for k in (0..self.path.len()).rev() {
            let node = self.path[k] as usize;
            acc = self.gain[node].mul(&acc);
            self.gain[node] = acc.clone();
            self.parent[node] = root;
        }
        let total = if self.path.is_empty() {
            Frac::one()
        } else {
            self.gain[i as usize].clone()
        };
        (root, total)
    }

    fn kill(&mut self, c: u32) {
        let (r, _) = self.find(c);
        self.dead[r as usize] = true;
    }

    /// Relation a1 * x_{c1} + a2 * x_{c2} = 0.
    fn edge(&mut self, c1: u32, a1: &Frac, c2: u32, a2: &Frac) {
        let (r1, g1) = self.find(c1);
        let (r2, g2) = self.find(c2);
        let w1 = a1.mul(&g1);
        let w2 = a2.mul(&g2);
        if r1 == r2 {
            if !w1.sum_is_zero(&w2) {
                self.dead[r1 as usize] = true;
            }
        } else {
            self.parent[r2 as usize] = r1;
            self.gain[r2 as usize] = w1.neg_div(&w2);
            if self.dead[r2 as usize] {
                self.dead[r1 as usize] = true;
            }
        }
    }

    /// Canonical pivot flags: a column is a pivot unless it is the largest
    /// index of a surviving component.
    fn into_quotient(mut self) -> DegreeQuotient {
        let ncols = self.parent.len();
        let mut rep = vec![u32::MAX; ncols];
        let mut roots = vec![0u32; ncols];
        for i in 0..ncols as u32 {
            let (r, _) = self.find(i);
            roots[i as usize] = r;
            rep[r as usize] = i;
        }
        let mut pivot = vec![true; ncols];
        let mut quotient_dim = 0usize;
        for i in 0..ncols {
            let r = roots[i] as usize;
            if !self.dead[r] && rep[r] as usize == i {
                pivot[i] = false;
                quotient_dim += 1;
            }
        }
        DegreeQuotient {
            rank: ncols - quotient_dim,
            pivot,
        }
    }
}

type SparseRow = Vec<(u32, Rat)>;

/// Quotient of a graded piece by the span of sparse rows: rank and the
/// pivot/non-pivot split of the columns. The pivot set is the canonical one
/// (leftmost independent columns), so the non-pivot columns are exactly the
/// lexicographically smallest standard monomials when columns are sorted
/// descending.
struct DegreeQuotient {
    rank: usize,
    pivot: Vec<bool>,
}

/// Incremental sparse row echelon over the rationals. Rows are kept sorted
/// by column index; the pivot of a stored row is its first (leftmost)
/// column, which corresponds to the lexicographically largest monomial.
struct Echelon {
    ncols: usize,
    pivots: Vec<Option<SparseRow>>,
    rank: usize,
}

impl Echelon {
    fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: vec![None; ncols],
            rank: 0,
        }
    }

    fn insert(&mut self, mut row: SparseRow) {
        loop {
            let Some(&(lead, _)) = row.first() else {
                return;
            };
            match &self.pivots[lead as usize] {
                Some(p) => {
                    let factor = &row[0].1 / &p[0].1;
                    row = row_sub(&row, p, &factor);
                }
                None => {
                    self.pivots[lead as usize] = Some(row);
                    self.rank += 1;
                    return;
                }
            }
        }
    }

    /// Full normal form: eliminate every entry sitting on a pivot column.
    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut i = 0;
        while i < row.len() {
            let (col, _) = row[i];
            match &self.pivots[col as usize] {
                Some(p) => {
                    let factor = &row[i].1 / &p[0].1;
                    row = row_sub(&row, p, &factor);
                }
                None => i += 1,
            }
        }
        row
    }

    fn pivot_flags(&self) -> Vec<bool> {
        (0..self.ncols).map(|c| self.pivots[c].is_some()).collect()
    }
}

/// row - factor * other, both sorted by column.
fn row_sub(row: &SparseRow, other: &SparseRow, factor: &Rat) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        match (row.get(i), other.get(j)) {
            (Some(&(ca, ref va)), Some(&(cb, ref vb))) => {
                if ca == cb {
                    let v = va - factor * vb;
                    if !v.is_zero() {
                        out.push((ca, v));
                    }
                    i += 1;
                    j += 1;
                } else if ca < cb {
                    out.push((ca, va.clone()));
                    i += 1;
                } else {
                    let v = -(factor * vb);
                    if !v.is_zero() {
                        out.push((cb, v));
                    }
                    j += 1;
                }
            }
            (Some(&(ca, ref va)), None) => {
                out.push((ca, va.clone()));
                i += 1;
            }
            (None, Some(&(cb, ref vb))) => {
                let v = -(factor * vb);
                if !v.is_zero() {
                    out.push((cb, v));
                }
                j += 1;
            }
            (None, None) => break,
        }
    }
    out
}

/// A term of some partial derivative, ready for shifting by a monomial.
struct DiffTerm {
    key: u128,
    coeff: Rat,
    frac: Frac,
}

struct Partials {
    by_var: Vec<Vec<DiffTerm>>,
    /// Every row has at most two entries, so gain-graph contraction applies.
    narrow: bool,
}

fn partial_terms(f: &Polynomial, packing: &Packing) -> Partials {
    let by_var: Vec<Vec<DiffTerm>> = (0..f.num_vars())
        .map(|j| {
            f.partial_derivative(j)
                .terms()
                .iter()
                .map(|t| DiffTerm {
                    key: packing.pack(&t.exponents),
                    frac: Frac::from_rat(&t.coefficient),
                    coeff: t.coefficient.clone(),
                })
                .collect()
        })
        .collect();
    let narrow = by_var.iter().all(|p| p.len() <= 2);
    Partials { by_var, narrow }
}

/// Locate `target` in a descending key array.
fn locate_key(cols: &[u128], target: u128) -> Option<u32> {
    cols.binary_search_by(|probe| probe.cmp(&target).reverse())
        .ok()
        .map(|i| i as u32)
}

/// Advance the merge pointer to `target` in a descending array; targets fed
/// to one walker must descend as well.
struct MergeWalker {
    ptr: usize,
}

impl MergeWalker {
    fn new() -> Self {
        MergeWalker { ptr: 0 }
    }

    fn advance(&mut self, cols: &[u128], target: u128) -> u32 {
        while cols[self.ptr] > target {
            self.ptr += 1;
        }
        debug_assert_eq!(cols[self.ptr], target, "generator escapes its graded piece");
        self.ptr as u32
    }
}

/// Quotient of the degree-`d` piece by the Jacobian-ideal slice, streaming
/// the (at most two-entry) generator rows straight into the gain graph.
fn quotient_fast(
    grading: &Grading,
    table: &DegreeTable,
    partials: &Partials,
    d: u64,
    cols: &[u128],
) -> DegreeQuotient {
    let mut uf = GainForest::new(cols.len());
    for (j, terms) in partials.by_var.iter().enumerate() {
        if terms.is_empty() {
            continue;
        }
        let shift = grading.den - grading.nums[j];
        if d < shift {
            continue;
        }
        let shifted = table.piece(d - shift);
        match terms.as_slice() {
            [t] => {
                let mut w = MergeWalker::new();
                for &m in shifted {
                    let c = w.advance(cols, m + t.key);
                    uf.kill(c);
                }
            }
            [t1, t2] => {
                let mut w1 = MergeWalker::new();
                let mut w2 = MergeWalker::new();
                for &m in shifted {
                    let c1 = w1.advance(cols, m + t1.key);
                    let c2 = w2.advance(cols, m + t2.key);
                    uf.edge(c1, &t1.frac, c2, &t2.frac);
                }
            }
            _ => unreachable!("fast path requires narrow partials"),
        }
    }
    uf.into_quotient()
}

/// Materialized generator rows for one graded piece (generic path), with an
/// optional generator filter; rows touch only the given columns.
fn ideal_rows_for_degree(
    grading: &Grading,
    table: &DegreeTable,
    partials: &Partials,
    d: u64,
    cols: &[u128],
    gen_filter: Option<&dyn Fn(&[u32], usize) -> bool>,
) -> Result<Vec<SparseRow>> {
    let mut rows = Vec::new();
    let mut exps = vec![0u32; grading.nums.len()];
    for (j, terms) in partials.by_var.iter().enumerate() {
        if terms.is_empty() {
            continue;
        }
        let shift = grading.den - grading.nums[j];
        if d < shift {
            continue;
        }
        for &m in table.piece(d - shift) {
            if let Some(filter) = gen_filter {
                grading.packing.unpack_into(m, &mut exps);
                if !filter(&exps, j) {
                    continue;
                }
            }
            let mut row: SparseRow = Vec::with_capacity(terms.len());
            for t in terms {
                let col = locate_key(cols, m + t.key).ok_or_else(|| {
                    Error::Internal("ideal generator escapes its graded piece".into())
                })?;
                row.push((col, t.coeff.clone()));
            }
            row.sort_by_key(|&(c, _)| c);
            rows.push(row);
        }
    }
    Ok(rows)
}

fn quotient_for_degree(
    grading: &Grading,
    table: &DegreeTable,
    partials: &Partials,
    d: u64,
    cols: &[u128],
) -> Result<DegreeQuotient> {
    if partials.narrow {
        Ok(quotient_fast(grading, table, partials, d, cols))
    } else {
        let rows = ideal_rows_for_degree(grading, table, partials, d, cols, None)?;
        let mut ech = Echelon::new(cols.len());
        for row in rows {
            ech.insert(row);
        }
        Ok(DegreeQuotient {
            rank: ech.rank,
            pivot: ech.pivot_flags(),
        })
    }
}

fn check_quasihomogeneous(f: &Polynomial, grading: &Grading) -> Result<()> {
    if f.num_vars() != grading.nums.len() {
        return Err(Error::Invalid(format!(
            "polynomial has {} variables, expected {}",
            f.num_vars(),
            grading.nums.len()
        )));
    }
    for t in f.terms() {
        if grading.degree(&t.exponents) != grading.den {
            return Err(Error::Invalid(format!(
                "polynomial is not quasihomogeneous of degree 1: term {} has degree {}",
                t,
                grading.unscale(grading.degree(&t.exponents))
            )));
        }
    }
    Ok(())
}

/// A graded monomial basis of the Jacobian algebra.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    pub elements: Vec<GradedMonomial>,
    /// ĉ, the degree of the socle (top) element.
    pub socle_degree: Rat,
}

#[derive(Debug, Clone)]
pub struct GradedMonomial {
    pub monomial: Monomial,
    pub degree: Rat,
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degree_multiset(&self) -> Vec<Rat> {
        let mut ds: Vec<Rat> = self.elements.iter().map(|e| e.degree.clone()).collect();
        ds.sort();
        ds
    }
}

/// Monomial basis of `Jac(f)` by graded elimination. Within each degree the
/// representatives are the lexicographically smallest standard monomials;
/// elements are listed by increasing degree, so the unit comes first and
/// the socle last. Errors when the count disagrees with the Milnor number
/// from the weight product, or when the graded profile is not palindromic.
pub fn jacobian_basis(f: &Polynomial, q: &[Rat]) -> Result<GradedBasis> {
    let grading = Grading::from_weights(q)?;
    check_quasihomogeneous(f, &grading)?;
    let chat = grading
        .central_charge_scaled()
        .ok_or_else(|| Error::NonAdmissible("negative central charge".into()))?;
    let mu = classify::milnor_number(q)?;
    let table = monomials_by_degree(&grading, chat)?;
    let partials = partial_terms(f, &grading.packing);

    let mut elements = Vec::new();
    let mut dim_by_degree: BTreeMap<u64, usize> = BTreeMap::new();
    for d in 0..=chat {
        let cols = table.piece(d);
        if cols.is_empty() {
            continue;
        }
        let quot = quotient_for_degree(&grading, &table, &partials, d, cols)?;
        let mut dim = 0;
        let degree = grading.unscale(d);
        for (i, &m) in cols.iter().enumerate() {
            if !quot.pivot[i] {
                dim += 1;
                elements.push(GradedMonomial {
                    monomial: Monomial::new(grading.packing.unpack(m), Rat::one()),
                    degree: degree.clone(),
                });
            }
        }
        if dim > 0 {
            dim_by_degree.insert(d, dim);
        }
    }

    if BigInt::from(elements.len()) != mu {
        return Err(Error::Internal(format!(
            "jacobian basis has {} elements but the weight product gives mu = {} \
             (non-isolated critical point or internal error)",
            elements.len(),
            mu
        )));
    }
    // unit and socle are unique; graded dimensions are palindromic
    if dim_by_degree.get(&0).copied().unwrap_or(0) != 1
        || dim_by_degree.get(&chat).copied().unwrap_or(0) != 1
    {
        return Err(Error::Internal(
            "jacobian basis lacks a unique unit or socle".into(),
        ));
    }
    for (&d, &dim) in &dim_by_degree {
        if dim_by_degree.get(&(chat - d)).copied().unwrap_or(0) != dim {
            return Err(Error::Internal(format!(
                "graded dimensions not palindromic at degree {}",
                grading.unscale(d)
            )));
        }
    }

    Ok(GradedBasis {
        elements,
        socle_degree: grading.unscale(chat),
    })
}

/// Normal-form reduction in the top graded piece, built once per `(f, q)`
/// and reusable across many reductions.
pub struct TopDegreeReducer {
    grading: Grading,
    chat: u64,
    cols: Vec<u128>,
    echelon: Echelon,
    socle_col: u32,
}

impl TopDegreeReducer {
    pub fn new(f: &Polynomial, q: &[Rat]) -> Result<Self> {
        let grading = Grading::from_weights(q)?;
        check_quasihomogeneous(f, &grading)?;
        let chat = grading
            .central_charge_scaled()
            .ok_or_else(|| Error::NonAdmissible("negative central charge".into()))?;
        let table = monomials_by_degree(&grading, chat)?;
        let partials = partial_terms(f, &grading.packing);
        let cols = table.piece(chat).to_vec();
        if cols.is_empty() {
            return Err(Error::Internal("no monomials in the socle degree".into()));
        }
        let rows = ideal_rows_for_degree(&grading, &table, &partials, chat, &cols, None)?;
        let mut echelon = Echelon::new(cols.len());
        for row in rows {
            echelon.insert(row);
        }
        let free: Vec<u32> = (0..cols.len() as u32)
            .filter(|&c| echelon.pivots[c as usize].is_none())
            .collect();
        if free.len() != 1 {
            return Err(Error::Internal(format!(
                "socle is {}-dimensional, expected 1",
                free.len()
            )));
        }
        Ok(TopDegreeReducer {
            grading,
            chat,
            cols,
            echelon,
            socle_col: free[0],
        })
    }

    /// The standard monomial representing the socle.
    pub fn socle_monomial(&self) -> Monomial {
        Monomial::new(
            self.grading.packing.unpack(self.cols[self.socle_col as usize]),
            Rat::one(),
        )
    }

    pub fn socle_degree(&self) -> Rat {
        self.grading.unscale(self.chat)
    }

    /// Reduce a degree-ĉ homogeneous polynomial to `c * socle` modulo the
    /// Jacobian ideal and return `c`.
    pub fn reduce_polynomial(&self, p: &Polynomial) -> Result<Rat> {
        if p.num_vars() != self.grading.nums.len() {
            return Err(Error::Invalid(format!(
                "polynomial has {} variables, expected {}",
                p.num_vars(),
                self.grading.nums.len()
            )));
        }
        let mut vec: SparseRow = Vec::with_capacity(p.terms().len());
        for t in p.terms() {
            if self.grading.degree(&t.exponents) != self.chat {
                return Err(Error::Invalid(format!(
                    "term {} is not homogeneous of the socle degree {}",
                    t,
                    self.socle_degree()
                )));
            }
            let col = locate_key(&self.cols, self.grading.packing.pack(&t.exponents))
                .ok_or_else(|| {
                    Error::Internal("degree-matched monomial missing from socle piece".into())
                })?;
            vec.push((col, t.coefficient.clone()));
        }
        vec.sort_by_key(|&(c, _)| c);
        self.extract_socle(self.echelon.reduce(vec))
    }

    fn reduce_product(&self, a: &[u32], b: &[u32]) -> Result<Rat> {
        let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let col = locate_key(&self.cols, self.grading.packing.pack(&prod))
            .ok_or_else(|| Error::Internal("product escapes the socle piece".into()))?;
        self.extract_socle(self.echelon.reduce(vec![(col, Rat::one())]))
    }

    fn extract_socle(&self, reduced: SparseRow) -> Result<Rat> {
        let mut c = Rat::zero();
        for (col, v) in reduced {
            if col == self.socle_col {
                c = v;
            } else if !v.is_zero() {
                return Err(Error::Internal(
                    "normal form not supported on the socle representative".into(),
                ));
            }
        }
        Ok(c)
    }
}

/// Reduce `p` (homogeneous of degree ĉ) to a multiple of the socle
/// representative modulo the Jacobian ideal of `f`.
pub fn reduce_top_degree(p: &Polynomial, f: &Polynomial, q: &[Rat]) -> Result<Rat> {
    TopDegreeReducer::new(f, q)?.reduce_polynomial(p)
}

/// Hessian determinant `det(d^2 f / dx_i dx_j)`, expanded exactly.
pub fn hessian(f: &Polynomial) -> Polynomial {
    let n = f.num_vars();
    let firsts: Vec<Polynomial> = (0..n).map(|i| f.partial_derivative(i)).collect();
    let entries: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| (0..n).map(|j| firsts[i].partial_derivative(j)).collect())
        .collect();
    // cofactor expansion memoized on the set of active columns
    let mut memo: std::collections::HashMap<u64, Polynomial> = std::collections::HashMap::new();
    fn det_rec(
        entries: &[Vec<Polynomial>],
        row: usize,
        colmask: u64,
        n: usize,
        num_vars: usize,
        memo: &mut std::collections::HashMap<u64, Polynomial>,
    ) -> Polynomial {
        if row == n {
            return Polynomial::from_terms_unchecked(num_vars, vec![Monomial::unit(num_vars)]);
        }
        if let Some(p) = memo.get(&colmask) {
            return p.clone();
        }
        let mut acc = Polynomial::zero(num_vars);
        let mut sign_pos = true;
        for j in 0..n {
            if colmask & (1 << j) != 0 {
                continue;
            }
            let e = &entries[row][j];
            if !e.is_zero() {
                let sub = det_rec(entries, row + 1, colmask | (1 << j), n, num_vars, memo);
                let term = e.mul(&sub);
                acc = if sign_pos { acc.add(&term) } else { acc.sub(&term) };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(colmask, acc.clone());
        acc
    }
    det_rec(&entries, 0, 0, n, n, &mut memo)
}

/// The residue pairing on a graded basis, normalized by `Res(hess f) = mu`.
/// Entry `(a, b)` vanishes unless the degrees are complementary
/// (`deg a + deg b = ĉ`); on complementary pairs it is
/// `reduce(phi_a phi_b) * mu / reduce(hess f)`.
#[derive(Debug, Clone)]
pub struct ResiduePairing {
    pub matrix: Vec<Vec<Rat>>,
}

pub fn residue_pairing(f: &Polynomial, basis: &GradedBasis, q: &[Rat]) -> Result<ResiduePairing> {
    let reducer = TopDegreeReducer::new(f, q)?;
    let h = reducer.reduce_polynomial(&hessian(f))?;
    if h.is_zero() {
        return Err(Error::Internal(
            "hessian reduces to zero in the Jacobian algebra".into(),
        ));
    }
    let mu = Rat::from(classify::milnor_number(q)?);
    let scale = mu / h;
    let chat = &basis.socle_degree;
    let k = basis.elements.len();
    let mut matrix = vec![vec![Rat::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let (a, b) = (&basis.elements[i], &basis.elements[j]);
            if &a.degree + &b.degree != *chat {
                continue;
            }
            let c = reducer.reduce_product(&a.monomial.exponents, &b.monomial.exponents)?;
            let v = c * &scale;
            matrix[i][j] = v.clone();
            matrix[j][i] = v;
        }
    }
    // nondegeneracy: each complementary-degree block must have full rank
    let mut by_degree: BTreeMap<Rat, Vec<usize>> = BTreeMap::new();
    for (i, e) in basis.elements.iter().enumerate() {
        by_degree.entry(e.degree.clone()).or_default().push(i);
    }
    for (d, idx) in &by_degree {
        let co = chat - d;
        let Some(jdx) = by_degree.get(&co) else {
            return Err(Error::Internal("unpaired graded piece".into()));
        };
        if jdx.len() != idx.len() {
            return Err(Error::Internal("graded pieces of unequal dimension".into()));
        }
        let block = crate::linalg::RationalMatrix::from_rows(
            idx.iter()
                .map(|&i| jdx.iter().map(|&j| matrix[i][j].clone()).collect())
                .collect(),
        );
        let (rank, _) = crate::linalg::rank_and_kernel(&block);
        if rank != idx.len() {
            return Err(Error::Internal(format!(
                "residue pairing degenerate on the degree-{} block",
                d
            )));
        }
    }
    Ok(ResiduePairing { matrix })
}

/// Isolatedness certificate for a quasihomogeneous polynomial.
#[derive(Debug, Clone)]
pub struct IsolatednessReport {
    pub isolated: bool,
    /// First degree past ĉ where the quotient fails to vanish, when any.
    pub offending_degree: Option<Rat>,
    /// Milnor number from the weight product, when it is an integer.
    pub expected_milnor: Option<BigInt>,
    /// Total quotient dimension found in degrees [0, ĉ].
    pub quotient_total: u64,
}

/// True iff the quotient dimension over degrees [0, ĉ] matches the weight
/// product and the quotient vanishes on every probed degree in
/// `(ĉ, ĉ + max q_j]`.
pub fn isolatedness_check(f: &Polynomial, q: &[Rat]) -> Result<IsolatednessReport> {
    let grading = Grading::from_weights(q)?;
    check_quasihomogeneous(f, &grading)?;
    let chat = grading
        .central_charge_scaled()
        .ok_or_else(|| Error::NonAdmissible("negative central charge".into()))?;
    let max_num = *grading.nums.iter().max().unwrap();
    let table = monomials_by_degree(&grading, chat + max_num)?;
    let partials = partial_terms(f, &grading.packing);

    let expected = classify::milnor_number(q).ok();
    let mut total = 0u64;
    let mut offending = None;
    for d in 0..=chat + max_num {
        let cols = table.piece(d);
        if cols.is_empty() {
            continue;
        }
        let quot = quotient_for_degree(&grading, &table, &partials, d, cols)?;
        let dim = (cols.len() - quot.rank) as u64;
        if d <= chat {
            total += dim;
        } else if dim > 0 && offending.is_none() {
            offending = Some(grading.unscale(d));
        }
    }
    let isolated = offending.is_none()
        && expected
            .as_ref()
            .map_or(false, |mu| BigInt::from(total) == *mu);
    Ok(IsolatednessReport {
        isolated,
        offending_degree: offending,
        expected_milnor: expected,
        quotient_total: total,
    })
}

/// Dimension of the invariant part of the graded Jacobian quotient, for
/// the state-space sectors: per degree up to ĉ, count the monomials the
/// column filter accepts and subtract the rank of the ideal slice spanned
/// by the generators the generator filter accepts. Both filters must be
/// character-compatible (an accepted generator touches only accepted
/// columns).
pub(crate) fn invariant_quotient_dimension(
    f: &Polynomial,
    q: &[Rat],
    col_filter: &dyn Fn(&[u32]) -> bool,
    gen_filter: &dyn Fn(&[u32], usize) -> bool,
) -> Result<u64> {
    let grading = Grading::from_weights(q)?;
    check_quasihomogeneous(f, &grading)?;
    let chat = grading
        .central_charge_scaled()
        .ok_or_else(|| Error::NonAdmissible("negative central charge".into()))?;
    let table = monomials_by_degree(&grading, chat)?;
    let partials = partial_terms(f, &grading.packing);
    let mut total = 0u64;
    let mut exps = vec![0u32; grading.nums.len()];
    for d in 0..=chat {
        let piece = table.piece(d);
        if piece.is_empty() {
            continue;
        }
        let mut fcols: Vec<u128> = Vec::new();
        for &m in piece {
            grading.packing.unpack_into(m, &mut exps);
            if col_filter(&exps) {
                fcols.push(m);
            }
        }
        if fcols.is_empty() {
            continue;
        }
        let rows =
            ideal_rows_for_degree(&grading, &table, &partials, d, &fcols, Some(gen_filter))?;
        let mut ech = Echelon::new(fcols.len());
        for row in rows {
            ech.insert(row);
        }
        total += (fcols.len() - ech.rank) as u64;
    }
    Ok(total)
}
