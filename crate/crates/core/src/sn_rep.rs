//! Symmetric-group characters, Young symmetrizers and decompositions.
//!
//! Permutations of `{0, …, n-1}` are stored as image vectors. Composition
//! applies the right factor first: `(σ·τ)(i) = σ(τ(i))`. This is the only
//! place the convention is fixed; everything else goes through
//! [`Perm::compose`].

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{GpiError, Result};
use crate::linalg::{row_space, sparse_from_dense, RankMethod, SparseVec};
use crate::partition::{branch_down, enumerate_partitions, factorial, Partition};
use crate::symfunc::SchurExpansion;
use crate::Q;

/// A permutation of `{0, …, n-1}`; `self.0[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Validates that `images` is a bijection of `0..len`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(GpiError::InvalidArgument(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            lengths.push(len);
        }
        Partition::from_unsorted(lengths)
    }

    /// `+1` for even, `-1` for odd permutations.
    pub fn sign(&self) -> i64 {
        let ct = self.cycle_type();
        let even_cycles = ct.parts().iter().filter(|&&l| l % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// A permutation of cycle type `mu`, built from consecutive blocks.
    pub fn representative(mu: &Partition) -> Perm {
        let mut images = Vec::with_capacity(mu.size() as usize);
        let mut start = 0;
        for &l in mu.parts() {
            let l = l as usize;
            for j in 0..l {
                images.push(start + (j + 1) % l);
            }
            start += l;
        }
        Perm(images)
    }
}

/// All permutations of `{0, …, n-1}` in lexicographic order of images.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
        if current.len() == n {
            out.push(Perm(current.clone()));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                current.push(i);
                rec(n, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// `z_μ = ∏ i^{m_i} m_i!`.
pub fn centralizer_order(mu: &Partition) -> BigUint {
    // Index i holds the multiplicity of part i.
    mu.part_multiplicities()
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(i, &m)| BigUint::from(i as u32).pow(m) * factorial(m))
        .product()
}

/// Number of permutations of cycle type `mu`.
pub fn class_size(mu: &Partition) -> BigUint {
    factorial(mu.size()) / centralizer_order(mu)
}

/// `χ_λ(μ)` by the Murnaghan-Nakayama rule on beta-sets.
pub fn irreducible_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(GpiError::SizeMismatch(format!("|{lambda}| ≠ |{mu}|")));
    }
    let len = lambda.height();
    let beta: BTreeSet<u32> = (0..len).map(|i| lambda.part(i) + (len - 1 - i) as u32).collect();
    Ok(mn(&beta, mu.parts()))
}

// Removing a rim hook of length r from the shape moves one bead of the beta
// set from b to b - r; the sign counts the beads jumped over.
fn mn(beta: &BTreeSet<u32>, parts: &[u32]) -> i64 {
    let Some((&r, rest)) = parts.split_first() else {
        return 1;
    };
    let mut total = 0;
    for &b in beta {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let jumped = beta.range(b - r + 1..b).count();
        let mut next = beta.clone();
        next.remove(&b);
        next.insert(b - r);
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&next, rest);
    }
    total
}

/// Class function on `S_n`, one value per cycle type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterVector {
    n: u32,
    values: BTreeMap<Partition, Q>,
}

impl CharacterVector {
    /// Builds a class function from a value per cycle type of `n`.
    pub fn from_fn(n: u32, mut f: impl FnMut(&Partition) -> Q) -> Self {
        let values = enumerate_partitions(n, None).into_iter().map(|mu| {
            let v = f(&mu);
            (mu, v)
        });
        CharacterVector { n, values: values.collect() }
    }

    /// Same as [`CharacterVector::from_fn`], evaluating classes in parallel.
    pub fn par_from_fn(n: u32, f: impl Fn(&Partition) -> Q + Sync) -> Self {
        let classes = enumerate_partitions(n, None);
        let values: Vec<Q> = classes.par_iter().map(&f).collect();
        CharacterVector { n, values: classes.into_iter().zip(values).collect() }
    }

    pub fn irreducible(lambda: &Partition) -> Self {
        Self::from_fn(lambda.size(), |mu| {
            Q::from_integer(irreducible_character(lambda, mu).expect("sizes agree").into())
        })
    }

    /// Character of the regular representation: `n!` at the identity.
    pub fn regular(n: u32) -> Self {
        let id = Partition::column(n);
        Self::from_fn(n, |mu| if *mu == id { Q::from_integer(factorial(n).into()) } else { Q::zero() })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn value(&self, mu: &Partition) -> Q {
        self.values.get(mu).cloned().unwrap_or_else(Q::zero)
    }

    pub fn values(&self) -> &BTreeMap<Partition, Q> {
        &self.values
    }

    pub fn add(&self, other: &CharacterVector) -> CharacterVector {
        assert_eq!(self.n, other.n);
        Self::from_fn(self.n, |mu| self.value(mu) + other.value(mu))
    }

    pub fn scale(&self, c: &Q) -> CharacterVector {
        Self::from_fn(self.n, |mu| self.value(mu) * c)
    }
}

/// `⟨φ, ψ⟩ = (1/n!) Σ_μ |C_μ| φ(μ) ψ(μ)`.
pub fn inner_product(phi: &CharacterVector, psi: &CharacterVector) -> Result<Q> {
    if phi.n != psi.n {
        return Err(GpiError::SizeMismatch(format!("S_{} vs S_{}", phi.n, psi.n)));
    }
    let total: Q = phi
        .values
        .iter()
        .map(|(mu, v)| Q::from_integer(class_size(mu).into()) * v * psi.value(mu))
        .sum();
    Ok(total / Q::from_integer(factorial(phi.n).into()))
}

/// Multiplicities `⟨φ, χ_λ⟩`. Fails hard unless every one is a nonnegative
/// integer.
pub fn decompose(phi: &CharacterVector) -> Result<SchurExpansion> {
    let mut out = SchurExpansion::new(phi.n as usize);
    for lambda in enumerate_partitions(phi.n, None) {
        let m = inner_product(phi, &CharacterVector::irreducible(&lambda))?;
        if !m.is_integer() || m.is_negative() {
            return Err(GpiError::BadMultiplicity { partition: lambda.to_string(), value: m.to_string() });
        }
        out.add(lambda, m);
    }
    Ok(out)
}

/// Checks `χ_λ↓S_{n-1} = Σ_{μ ∈ λ⁻} χ_μ` class by class.
pub fn branching_check(lambda: &Partition) -> Result<bool> {
    let n = lambda.size();
    if n == 0 {
        return Err(GpiError::EmptyPartition);
    }
    let below = branch_down(lambda)?;
    for nu in enumerate_partitions(n - 1, None) {
        let mut with_fixed = nu.parts().to_vec();
        with_fixed.push(1);
        let restricted = irreducible_character(lambda, &Partition::from_unsorted(with_fixed))?;
        let mut sum = 0;
        for mu in &below {
            sum += irreducible_character(mu, &nu)?;
        }
        if restricted != sum {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A Young tableau filled bijectively with `1..=n`, row by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n: usize = rows.iter().map(Vec::len).sum();
        let shape = Partition::new(rows.iter().map(|r| r.len() as u32).collect())?;
        if shape.size() as usize != n {
            return Err(GpiError::InvalidArgument("tableau rows must be nonempty".into()));
        }
        let mut entries: Vec<u32> = rows.iter().flatten().copied().collect();
        entries.sort_unstable();
        if entries != (1..=n as u32).collect::<Vec<_>>() {
            return Err(GpiError::InvalidArgument(format!("filling {rows:?} is not a bijection onto 1..={n}")));
        }
        Ok(Tableau { rows })
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len() as u32).collect()).expect("validated")
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width).map(|c| self.rows.iter().filter_map(|r| r.get(c).copied()).collect()).collect()
    }

    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        rows_ok && self.columns().iter().all(|c| c.windows(2).all(|w| w[0] < w[1]))
    }
}

/// All standard tableaux of shape `lambda`.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Tableau> {
    let n = lambda.size();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); lambda.height()];
    fn rec(next: u32, n: u32, lambda: &Partition, rows: &mut Vec<Vec<u32>>, out: &mut Vec<Tableau>) {
        if next > n {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for r in 0..rows.len() {
            let len = rows[r].len();
            let fits = len < lambda.part(r) as usize && (r == 0 || rows[r - 1].len() > len);
            if fits {
                rows[r].push(next);
                rec(next + 1, n, lambda, rows, out);
                rows[r].pop();
            }
        }
    }
    rec(1, n, lambda, &mut rows, &mut out);
    out
}

/// Element of the group algebra `Q[S_n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    n: usize,
    terms: BTreeMap<Perm, Q>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn basis(p: Perm) -> Self {
        let n = p.len();
        let mut e = Self::zero(n);
        e.add_term(p, Q::one());
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Perm, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Perm) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, p: Perm, c: Q) {
        assert_eq!(p.len(), self.n);
        let entry = self.terms.entry(p).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(p.compose(q), a * b);
            }
        }
        out
    }

    /// `σ·self`.
    pub fn left_mul_perm(&self, sigma: &Perm) -> Self {
        GroupAlgebraElement {
            n: self.n,
            terms: self.terms.iter().map(|(p, c)| (sigma.compose(p), c.clone())).collect(),
        }
    }
}

fn stabilizer(blocks: &[Vec<u32>], n: usize) -> Vec<Perm> {
    let mut group = vec![Perm::identity(n)];
    for block in blocks {
        let idx: Vec<usize> = block.iter().map(|&e| e as usize - 1).collect();
        let mut next = Vec::new();
        for local in all_perms(idx.len()) {
            let mut images: Vec<usize> = (0..n).collect();
            for (a, &b) in local.0.iter().enumerate() {
                images[idx[a]] = idx[b];
            }
            let p = Perm(images);
            next.extend(group.iter().map(|g| g.compose(&p)));
        }
        group = next;
    }
    group
}

/// `e_T = Σ_{σ ∈ R_T, τ ∈ C_T} sgn(τ) στ`.
pub fn young_symmetrizer(t: &Tableau) -> GroupAlgebraElement {
    let n = t.size();
    let rows = stabilizer(t.rows(), n);
    let cols = stabilizer(&t.columns(), n);
    let mut e = GroupAlgebraElement::zero(n);
    for sigma in &rows {
        for tau in &cols {
            e.add_term(sigma.compose(tau), Q::from_integer(tau.sign().into()));
        }
    }
    e
}

struct LeftIdeal {
    perms: Vec<Perm>,
    index: HashMap<Perm, usize>,
    basis: crate::linalg::Rref<Q>,
}

impl LeftIdeal {
    fn new(e: &GroupAlgebraElement) -> Self {
        let perms = all_perms(e.n());
        let index: HashMap<Perm, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let rows: Vec<SparseVec<Q>> = perms
            .iter()
            .map(|sigma| {
                let x = e.left_mul_perm(sigma);
                let mut dense = vec![Q::zero(); perms.len()];
                for (p, c) in x.terms() {
                    dense[index[p]] = c.clone();
                }
                sparse_from_dense(&dense)
            })
            .collect();
        let basis = row_space(&rows, perms.len(), RankMethod::Exact);
        LeftIdeal { perms, index, basis }
    }

    // Left multiplication by σ sends coordinate π to σπ, so
    // (σv)[c] = v[σ⁻¹c].
    fn trace(&self, sigma: &Perm) -> Q {
        let inv = sigma.inverse();
        let perm: Vec<usize> = self.perms.iter().map(|c| self.index[&inv.compose(c)]).collect();
        self.basis.permutation_trace(&perm)
    }
}

/// `dim span{σ·e : σ ∈ S_n}` inside `Q[S_n]`.
pub fn left_ideal_dimension(e: &GroupAlgebraElement) -> usize {
    LeftIdeal::new(e).basis.dim()
}

/// Character of `S_n` acting by left multiplication on `Q[S_n]·e_T`. An
/// independent route to `χ_λ` through an explicit matrix model.
pub fn matrix_model_character(t: &Tableau) -> CharacterVector {
    let ideal = LeftIdeal::new(&young_symmetrizer(t));
    CharacterVector::from_fn(t.size() as u32, |mu| ideal.trace(&Perm::representative(mu)))
}

/// Integer value of an exact rational known to be integral.
pub fn to_i64(q: &Q) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}
