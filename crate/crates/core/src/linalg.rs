//! Exact linear algebra over the rationals.
//!
//! Rows are sparse: `(column, value)` pairs sorted by column with no stored
//! zeros. Two rank routes are provided:
//!
//! * [`RankMethod::Exact`] runs incremental elimination directly over `Q`.
//! * [`RankMethod::Modular`] eliminates modulo a 61-bit prime to pick
//!   pivot rows, then certifies over `Q`: the chosen rows are independent
//!   mod `p` (hence over `Q`), and every remaining row is checked to lie in
//!   their exact span. A failed check falls back to the next prime and
//!   finally to the exact route, so the answer is always exact.
//!
//! [`fraction_free_rank`] is an independent dense Bareiss elimination over
//! the integers, used as a cross-check.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::Q;

pub type SparseVec<F> = Vec<(usize, F)>;

/// The operations elimination needs. Implemented for `Q` and `Fp<P>`.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero_el() -> Self;
    fn one_el() -> Self;
    fn is_zero_el(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl Field for Q {
    fn zero_el() -> Self {
        Zero::zero()
    }
    fn one_el() -> Self {
        One::one()
    }
    fn is_zero_el(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Integers modulo the prime `P` (< 2^63).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Reduces a rational; `None` when `P` divides the denominator.
    pub fn from_q(q: &Q) -> Option<Self> {
        if let (Some(n), Some(d)) = (q.numer().to_i64(), q.denom().to_i64()) {
            let d = Fp::<P>::from_i64(d);
            return (d.0 != 0).then(|| Fp::<P>::from_i64(n).mul(&d.inv()));
        }
        let p = BigInt::from(P);
        let num = q.numer().mod_floor(&p).to_u64().unwrap();
        let den = q.denom().mod_floor(&p).to_u64().unwrap();
        if den == 0 {
            return None;
        }
        Some(Fp(num).mul(&Fp(den).inv()))
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero_el() -> Self {
        Fp(0)
    }
    fn one_el() -> Self {
        Fp(1)
    }
    fn is_zero_el(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn sub(&self, other: &Self) -> Self {
        Fp(if self.0 >= other.0 { self.0 - other.0 } else { self.0 + P - other.0 })
    }
    fn mul(&self, other: &Self) -> Self {
        let x = self.0 as u128 * other.0 as u128;
        if P == PRIME_A {
            // Mersenne reduction: 2^61 ≡ 1.
            let folded = (x as u64 & PRIME_A) + (x >> 61) as u64;
            let folded = (folded & PRIME_A) + (folded >> 61);
            Fp(if folded >= PRIME_A { folded - PRIME_A } else { folded })
        } else {
            Fp((x % P as u128) as u64)
        }
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero mod p");
        self.pow(P - 2)
    }
}

pub const PRIME_A: u64 = (1 << 61) - 1;
pub const PRIME_B: u64 = 4_294_967_291;

/// `a - c·b` on sparse vectors.
pub fn axpy<F: Field>(a: &[(usize, F)], c: &F, b: &[(usize, F)]) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = F::zero_el().sub(&c.mul(&b[j].1));
            if !v.is_zero_el() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.sub(&c.mul(&b[j].1));
            if !v.is_zero_el() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sum of sparse vectors.
pub fn sparse_sum<F: Field>(parts: &[&[(usize, F)]]) -> SparseVec<F> {
    let minus_one = F::zero_el().sub(&F::one_el());
    parts.iter().fold(Vec::new(), |acc, p| axpy(&acc, &minus_one, p))
}

pub fn sparse_from_dense<F: Field>(dense: &[F]) -> SparseVec<F> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero_el())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

pub fn sparse_get<F: Field>(v: &[(usize, F)], col: usize) -> Option<&F> {
    v.binary_search_by_key(&col, |e| e.0).ok().map(|i| &v[i].1)
}

/// Row echelon form built one row at a time. Every stored row has a leading
/// coefficient of one.
#[derive(Debug, Clone)]
pub struct Echelon<F> {
    ncols: usize,
    pivot_of_col: Vec<Option<usize>>,
    rows: Vec<SparseVec<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivot_of_col: vec![None; ncols], rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut start = 0;
        while start < v.len() {
            let (col, coef) = v[start].clone();
            match self.pivot_of_col[col] {
                Some(r) => v = axpy(&v, &coef, &self.rows[r]),
                None => start += 1,
            }
        }
        v
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let v = self.reduce(v);
        if v.is_empty() {
            return false;
        }
        let lead = v[0].0;
        let inv = v[0].1.inv();
        let row: SparseVec<F> = v.into_iter().map(|(c, x)| (c, x.mul(&inv))).collect();
        self.pivot_of_col[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    /// Back-substitutes to reduced row echelon form.
    pub fn into_rref(self) -> Rref<F> {
        let Echelon { ncols, rows, .. } = self;
        let mut rows = rows;
        rows.sort_by_key(|r| r[0].0);
        for i in (0..rows.len()).rev() {
            let lead = rows[i][0].0;
            let pivot = rows[i].clone();
            for j in 0..i {
                if let Some(c) = sparse_get(&rows[j], lead).cloned() {
                    rows[j] = axpy(&rows[j], &c, &pivot);
                }
            }
        }
        let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
        let mut row_of_col = vec![None; ncols];
        for (i, &p) in pivots.iter().enumerate() {
            row_of_col[p] = Some(i);
        }
        Rref { ncols, rows, pivots, row_of_col }
    }
}

/// Reduced row echelon basis of a subspace of `F^ncols`.
#[derive(Debug, Clone)]
pub struct Rref<F> {
    ncols: usize,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
    row_of_col: Vec<Option<usize>>,
}

impl<F: Field> Rref<F> {
    pub fn full(ncols: usize) -> Self {
        let rows = (0..ncols).map(|i| vec![(i, F::one_el())]).collect();
        Rref {
            ncols,
            rows,
            pivots: (0..ncols).collect(),
            row_of_col: (0..ncols).map(Some).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[(usize, F)]) -> Option<Vec<F>> {
        let mut coords = vec![F::zero_el(); self.rows.len()];
        let mut combo: SparseVec<F> = Vec::new();
        let minus_one = F::zero_el().sub(&F::one_el());
        for (col, x) in v {
            if let Some(r) = self.row_of_col[*col] {
                coords[r] = x.clone();
                combo = axpy(&combo, &minus_one.mul(x), &self.rows[r]);
            }
        }
        (combo.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[(usize, F)]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Trace of the linear map `v ↦ v∘perm` (i.e. `(σv)[c] = v[perm[c]]`)
    /// restricted to this subspace. The subspace must be stable.
    pub fn permutation_trace(&self, perm: &[usize]) -> F {
        // With an RREF basis the coefficient of b_i in σ(b_i) is σ(b_i) at
        // pivot_i.
        self.rows
            .iter()
            .zip(&self.pivots)
            .fold(F::zero_el(), |acc, (row, &p)| match sparse_get(row, perm[p]) {
                Some(x) => acc.add(x),
                None => acc,
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankMethod {
    Exact,
    #[default]
    Modular,
}

/// Rows produced on demand, so that large matrices never need to be held in
/// memory at once. Must return the same row for the same index every time.
pub trait RowSource: Sync {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    fn row(&self, i: usize) -> SparseVec<Q>;
}

struct SliceRows<'a> {
    rows: &'a [SparseVec<Q>],
    ncols: usize,
}

impl RowSource for SliceRows<'_> {
    fn nrows(&self) -> usize {
        self.rows.len()
    }
    fn ncols(&self) -> usize {
        self.ncols
    }
    fn row(&self, i: usize) -> SparseVec<Q> {
        self.rows[i].clone()
    }
}

/// Exact row space of `rows`, as an RREF basis.
pub fn row_space(rows: &[SparseVec<Q>], ncols: usize, method: RankMethod) -> Rref<Q> {
    row_space_of(&SliceRows { rows, ncols }, method)
}

pub fn rank(rows: &[SparseVec<Q>], ncols: usize, method: RankMethod) -> usize {
    row_space(rows, ncols, method).dim()
}

/// Exact row space of a lazily generated matrix.
pub fn row_space_of(src: &dyn RowSource, method: RankMethod) -> Rref<Q> {
    match method {
        RankMethod::Exact => exact_row_space(src),
        RankMethod::Modular => modular_row_space::<PRIME_A>(src)
            .or_else(|| modular_row_space::<PRIME_B>(src))
            .unwrap_or_else(|| exact_row_space(src)),
    }
}

const CHUNK: usize = 2048;

fn chunks(n: usize) -> impl Iterator<Item = std::ops::Range<usize>> {
    (0..n).step_by(CHUNK).map(move |s| s..(s + CHUNK).min(n))
}

fn exact_row_space(src: &dyn RowSource) -> Rref<Q> {
    let ncols = src.ncols();
    let mut ech = Echelon::new(ncols);
    for range in chunks(src.nrows()) {
        let rows: Vec<SparseVec<Q>> = range.into_par_iter().map(|i| src.row(i)).collect();
        for r in rows {
            if ech.is_full() {
                return Rref::full(ncols);
            }
            ech.insert(r);
        }
    }
    if ech.is_full() {
        return Rref::full(ncols);
    }
    ech.into_rref()
}

fn modular_row_space<const P: u64>(src: &dyn RowSource) -> Option<Rref<Q>> {
    let ncols = src.ncols();
    let mut ech = Echelon::<Fp<P>>::new(ncols);
    let mut chosen = Vec::new();
    'outer: for range in chunks(src.nrows()) {
        let start = range.start;
        let reduced: Vec<Option<SparseVec<Fp<P>>>> = range
            .into_par_iter()
            .map(|i| {
                src.row(i)
                    .iter()
                    .map(|(c, q)| Fp::<P>::from_q(q).map(|x| (*c, x)))
                    .filter(|e| e.as_ref().map_or(true, |(_, x)| x.0 != 0))
                    .collect()
            })
            .collect();
        for (k, r) in reduced.into_iter().enumerate() {
            if ech.is_full() {
                break 'outer;
            }
            if ech.insert(r?) {
                chosen.push(start + k);
            }
        }
    }
    if ech.is_full() {
        return Some(Rref::full(ncols));
    }
    let mut exact = Echelon::<Q>::new(ncols);
    for &i in &chosen {
        let grew = exact.insert(src.row(i));
        debug_assert!(grew, "rows independent mod p must be independent over Q");
    }
    let rref = exact.into_rref();
    let certified = (0..src.nrows()).into_par_iter().all(|i| rref.contains(&src.row(i)));
    certified.then_some(rref)
}

/// Rank by fraction-free (Bareiss) elimination on a dense integer matrix.
pub fn fraction_free_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in (rank + 1)..nrows {
            for c in (col + 1)..ncols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Clears denominators row by row.
pub fn integer_rows(rows: &[Vec<Q>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            r.iter().map(|q| (q * Q::from(l.clone())).to_integer()).collect()
        })
        .collect()
}

/// Basis of the right nullspace `{x : M x = 0}` of a dense matrix.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let sparse: Vec<SparseVec<Q>> = rows.iter().map(|r| sparse_from_dense(r)).collect();
    let rref = row_space(&sparse, ncols, RankMethod::Exact);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in rref.pivots() {
            v[p] = true;
        }
        v
    };
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut x = vec![<Q as Zero>::zero(); ncols];
            x[free] = <Q as One>::one();
            for (row, &p) in rref.rows().iter().zip(rref.pivots()) {
                if let Some(c) = sparse_get(row, free) {
                    x[p] = -c.clone();
                }
            }
            x
        })
        .collect()
}

/// One solution of `M x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(rows: &[Vec<Q>], rhs: &[Q], ncols: usize) -> Option<Vec<Q>> {
    let augmented: Vec<SparseVec<Q>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut full = r.clone();
            full.push(b.clone());
            sparse_from_dense(&full)
        })
        .collect();
    let rref = row_space(&augmented, ncols + 1, RankMethod::Exact);
    if rref.pivots().contains(&ncols) {
        return None;
    }
    let mut x = vec![<Q as Zero>::zero(); ncols];
    for (row, &p) in rref.rows().iter().zip(rref.pivots()) {
        if let Some(b) = sparse_get(row, ncols) {
            x[p] = b.clone();
        }
    }
    Some(x)
}

pub fn is_nonneg_integer(q: &Q) -> bool {
    q.is_integer() && !q.is_negative()
}
