//! Generalized identities, codimensions, cocharacters and Hilbert series.
//!
//! `gP_n(A)` is realized as the row space of the evaluation matrix: one row
//! per multilinear monomial, one column per (basis tuple, output coordinate).
//! `S_n` acts on that row space by permuting columns, so the cocharacter is
//! a trace on the image and never needs a quotient basis.

mod eval;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::error::{GpiError, Result};
use crate::gpoly::{capelli, generalized_capelli_set, multilinearize, GenMonomial, GenPoly, Var, WSym};
use crate::linalg::{nullspace, row_space, row_space_of, sparse_sum, RankMethod, Rref, RowSource, SparseVec};
use crate::partition::{enumerate_partitions, sn_dimension, weyl_dimension, Partition};
use crate::sn_rep::{all_perms, decompose, CharacterVector, Perm};
use crate::symfunc::{schur_expand, skew_schur_at_ones, ExactPoly, SchurExpansion, TruncatedSeries};
use crate::walg_model::{builtin, Builtin, FiniteAlgebra, WAction};
use crate::Q;
use eval::{all_evaluations, Tables};

/// What the engine computes identities of.
#[derive(Debug, Clone)]
pub enum Target {
    Algebra(WAction),
    /// The free W-algebra over `W = F^d` (orthogonal idempotents), which
    /// has no identities at all.
    Free { d: usize },
}

#[derive(Debug, Clone)]
pub struct GidEngine {
    target: Target,
    w: FiniteAlgebra,
    method: RankMethod,
}

/// Multiplicities of the `n`-th cocharacter with codimension and colength.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocharacterResult {
    pub n: u32,
    pub multiplicities: SchurExpansion,
    pub gc: u64,
    pub gl: u64,
}

impl CocharacterResult {
    /// Builds the result, asserting `gc = Σ m_λ d_λ`; `gl` is `Σ m_λ`.
    pub fn new(n: u32, multiplicities: SchurExpansion, gc: u64) -> Result<Self> {
        let mut weighted = 0u64;
        let mut gl = 0u64;
        for (lambda, m) in multiplicities.iter() {
            let m = integral(m)?;
            weighted += m * sn_dimension(lambda)?;
            gl += m;
        }
        if weighted != gc {
            return Err(GpiError::Verification(format!("gc_{n} = {gc} but sum of m_lambda d_lambda = {weighted}")));
        }
        Ok(CocharacterResult { n, multiplicities, gc, gl })
    }

    pub fn multiplicity(&self, lambda: &Partition) -> u64 {
        integral(&self.multiplicities.get(lambda)).expect("checked on construction")
    }

    /// Aligned text table, one partition per line.
    pub fn to_table(&self) -> String {
        let rows: Vec<(String, String, String)> = self
            .multiplicities
            .iter()
            .map(|(l, m)| (l.to_string(), m.to_string(), sn_dimension(l).unwrap_or(0).to_string()))
            .collect();
        let w0 = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max("lambda".len());
        let w1 = rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max("m".len());
        let mut out = format!("{:<w0$}  {:>w1$}  d_lambda\n", "lambda", "m");
        for (l, m, d) in rows {
            out += &format!("{l:<w0$}  {m:>w1$}  {d}\n");
        }
        out += &format!("gc_{} = {}\ngl_{} = {}\n", self.n, self.gc, self.n, self.gl);
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mults: Vec<serde_json::Value> = self
            .multiplicities
            .iter()
            .map(|(l, m)| json!({"partition": l.parts(), "multiplicity": integral(m).unwrap_or(0)}))
            .collect();
        json!({"n": self.n, "gc": self.gc, "gl": self.gl, "multiplicities": mults})
    }
}

fn integral(q: &Q) -> Result<u64> {
    q.is_integer()
        .then(|| q.to_integer().to_u64())
        .flatten()
        .ok_or_else(|| GpiError::Verification(format!("{q} is not a nonnegative integer")))
}

/// All `α ∈ ℕ^k` with `|α| = n`, in lexicographic order.
pub fn compositions(n: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out.reverse();
    out
}

/// Lexicographic index of a permutation among `all_perms(n)`.
fn perm_rank(images: &[usize]) -> usize {
    let n = images.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = images[i + 1..].iter().filter(|&&x| x < images[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

enum Values {
    Int(Vec<i64>),
    Rat(Vec<Q>),
}

impl Values {
    fn get(&self, i: usize) -> Option<Q> {
        match self {
            Values::Int(v) => (v[i] != 0).then(|| Q::from_integer(v[i].into())),
            Values::Rat(v) => (!v[i].is_zero()).then(|| v[i].clone()),
        }
    }
}

enum Kind {
    Algebra { da: usize, table: Values },
    Free,
}

/// Everything needed to write down evaluation rows in degree `n`.
struct Degree {
    n: usize,
    words: usize,
    kind: Kind,
}

impl Degree {
    fn ncols(&self) -> usize {
        match self.kind {
            Kind::Algebra { da, .. } => da.pow(self.n as u32 + 1),
            Kind::Free => (1..=self.n).product::<usize>() * self.words,
        }
    }

    /// Evaluation row of the monomial with variable word `x_{π₀+1} ⋯` and
    /// W-word number `word`.
    fn row(&self, pi: &[usize], word: usize) -> SparseVec<Q> {
        match &self.kind {
            Kind::Free => vec![(perm_rank(pi) * self.words + word, Q::one())],
            Kind::Algebra { da, table } => {
                let (da, n) = (*da, self.n);
                let tuples = da.pow(n as u32);
                let mut t = vec![0usize; n];
                let mut out = Vec::new();
                for ti in 0..tuples {
                    let c = pi.iter().fold(0, |acc, &p| acc * da + t[p]);
                    let base = (word * tuples + c) * da;
                    for o in 0..da {
                        if let Some(v) = table.get(base + o) {
                            out.push((ti * da + o, v));
                        }
                    }
                    for d in t.iter_mut().rev() {
                        *d += 1;
                        if *d < da {
                            break;
                        }
                        *d = 0;
                    }
                }
                out
            }
        }
    }

    /// Column permutation realizing `σ` on evaluation rows:
    /// `(σv)[c] = v[perm[c]]`.
    fn column_perm(&self, sigma: &Perm) -> Vec<usize> {
        match &self.kind {
            Kind::Algebra { da, .. } => {
                let (da, n) = (*da, self.n);
                let tuples = da.pow(n as u32);
                let mut perm = vec![0; tuples * da];
                let mut t = vec![0usize; n];
                for ti in 0..tuples {
                    let moved = (0..n).fold(0, |acc, i| acc * da + t[sigma.apply(i)]);
                    for o in 0..da {
                        perm[ti * da + o] = moved * da + o;
                    }
                    for d in t.iter_mut().rev() {
                        *d += 1;
                        if *d < da {
                            break;
                        }
                        *d = 0;
                    }
                }
                perm
            }
            Kind::Free => self.monomial_perm(sigma),
        }
    }

    /// Permutation of `gP_n` monomials: `perm[j]` is the index of `σ⁻¹ ∗ m_j`.
    fn monomial_perm(&self, sigma: &Perm) -> Vec<usize> {
        let inv = sigma.inverse();
        all_perms(self.n)
            .iter()
            .flat_map(|pi| {
                let r = perm_rank(&inv.compose(pi).0) * self.words;
                (0..self.words).map(move |w| r + w)
            })
            .collect()
    }
}

/// Rows given as sums of evaluation rows: row `i` is
/// `Σ_{π ∈ groups[i / words]} row(π, i % words)`.
struct GroupedRows<'a> {
    deg: &'a Degree,
    groups: Vec<Vec<Vec<usize>>>,
}

impl GroupedRows<'_> {
    fn multilinear(deg: &Degree) -> GroupedRows<'_> {
        let groups = all_perms(deg.n).into_iter().map(|p| vec![p.0]).collect();
        GroupedRows { deg, groups }
    }

    /// Multilinearized images of the monomials of multidegree `alpha`.
    fn multidegree<'a>(deg: &'a Degree, alpha: &[u32]) -> GroupedRows<'a> {
        let offsets: Vec<usize> = alpha
            .iter()
            .scan(0usize, |acc, &a| {
                let o = *acc;
                *acc += a as usize;
                Some(o)
            })
            .collect();
        let blocks: Vec<Vec<Perm>> = alpha.iter().map(|&a| all_perms(a as usize)).collect();
        let groups = content_words(alpha)
            .into_iter()
            .map(|word| {
                let mut images = Vec::new();
                let mut choice = vec![0usize; blocks.len()];
                loop {
                    let mut seen = vec![0usize; alpha.len()];
                    let pi: Vec<usize> = word
                        .iter()
                        .map(|&v| {
                            let r = seen[v];
                            seen[v] += 1;
                            offsets[v] + blocks[v][choice[v]].apply(r)
                        })
                        .collect();
                    images.push(pi);
                    let mut b = 0;
                    while b < blocks.len() {
                        choice[b] += 1;
                        if choice[b] < blocks[b].len() {
                            break;
                        }
                        choice[b] = 0;
                        b += 1;
                    }
                    if b == blocks.len() {
                        break;
                    }
                }
                images
            })
            .collect();
        GroupedRows { deg, groups }
    }
}

impl RowSource for GroupedRows<'_> {
    fn nrows(&self) -> usize {
        self.groups.len() * self.deg.words
    }
    fn ncols(&self) -> usize {
        self.deg.ncols()
    }
    fn row(&self, i: usize) -> SparseVec<Q> {
        let (g, word) = (i / self.deg.words, i % self.deg.words);
        match self.groups[g].as_slice() {
            [pi] => self.deg.row(pi, word),
            group => {
                let parts: Vec<SparseVec<Q>> = group.iter().map(|pi| self.deg.row(pi, word)).collect();
                let refs: Vec<&[(usize, Q)]> = parts.iter().map(|p| p.as_slice()).collect();
                sparse_sum(&refs)
            }
        }
    }
}

/// Words over `0..k` in which letter `i` occurs `alpha[i]` times, in lex
/// order.
fn content_words(alpha: &[u32]) -> Vec<Vec<usize>> {
    fn rec(left: &mut [u32], word: &mut Vec<usize>, len: usize, out: &mut Vec<Vec<usize>>) {
        if word.len() == len {
            out.push(word.clone());
            return;
        }
        for v in 0..left.len() {
            if left[v] > 0 {
                left[v] -= 1;
                word.push(v);
                rec(left, word, len, out);
                word.pop();
                left[v] += 1;
            }
        }
    }
    let mut out = Vec::new();
    let len = alpha.iter().sum::<u32>() as usize;
    rec(&mut alpha.to_vec(), &mut Vec::new(), len, &mut out);
    out
}

/// Tests `pred` on every evaluation of `f` at basis elements, variable `i`
/// ranging over `domains[i]`; `i64` fast path with an exact fallback. `vars`
/// must list every variable of `f`, sorted.
pub(crate) fn evaluations_satisfy(
    act: &WAction,
    f: &GenPoly,
    vars: &[Var],
    domains: &[Vec<usize>],
    pred_i64: &(dyn Fn(&[i64]) -> bool + Sync),
    pred_q: &(dyn Fn(&[Q]) -> bool + Sync),
) -> bool {
    // Identities are invariant under scaling; clear denominators first.
    let lcm = f.terms().values().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: Vec<(GenMonomial, Q)> =
        f.terms().iter().map(|(m, c)| (m.clone(), c * Q::from_integer(lcm.clone()))).collect();
    let fast = Tables::<i64>::new(act).and_then(|t| {
        let terms: Option<Vec<(GenMonomial, i64)>> =
            scaled.iter().map(|(m, c)| <i64 as eval::Scalar>::from_q(c).map(|c| (m.clone(), c))).collect();
        all_evaluations(&t, &terms?, vars, domains, pred_i64)
    });
    fast.unwrap_or_else(|| {
        let t = Tables::<Q>::new(act).expect("rationals always fit");
        all_evaluations(&t, &scaled, vars, domains, pred_q).expect("rationals never overflow")
    })
}

fn full_domains(act: &WAction, vars: usize) -> Vec<Vec<usize>> {
    vec![(0..act.dim_a()).collect(); vars]
}

fn polynomial_vanishes(act: &WAction, f: &GenPoly) -> bool {
    let vars = f.variables();
    evaluations_satisfy(act, f, &vars, &full_domains(act, vars.len()), &|v| v.iter().all(|x| *x == 0), &|v| v.iter().all(Zero::is_zero))
}

impl GidEngine {
    pub fn new(act: WAction) -> Self {
        let w = act.w().clone();
        GidEngine { target: Target::Algebra(act), w, method: RankMethod::default() }
    }

    pub fn free(d: usize) -> Self {
        let units: Vec<(usize, usize)> = (0..d).map(|i| (i, i)).collect();
        GidEngine { target: Target::Free { d }, w: FiniteAlgebra::matrix_units(d, &units), method: RankMethod::default() }
    }

    /// A built-in name or `free(d)`.
    pub fn from_name(name: &str) -> Result<Self> {
        if let Some(d) = name.strip_prefix("free(").and_then(|r| r.strip_suffix(')')) {
            let d: usize = d.parse().map_err(|_| GpiError::Parse(format!("bad free algebra {name:?}")))?;
            if d == 0 {
                return Err(GpiError::InvalidArgument("free(d) needs d >= 1".into()));
            }
            return Ok(Self::free(d));
        }
        Ok(Self::new(builtin(name.parse::<Builtin>()?)?))
    }

    pub fn with_method(mut self, method: RankMethod) -> Self {
        self.method = method;
        self
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    pub fn name(&self) -> String {
        match &self.target {
            Target::Algebra(act) => act.name().to_string(),
            Target::Free { d } => format!("free({d})"),
        }
    }

    pub fn w(&self) -> &FiniteAlgebra {
        &self.w
    }

    pub fn dim_w(&self) -> usize {
        self.w.dim()
    }

    fn degree(&self, n: usize) -> Result<Arc<Degree>> {
        if n == 0 {
            return Err(GpiError::InvalidArgument("degree must be at least 1".into()));
        }
        let dw = self.dim_w();
        let words = dw.pow(n as u32 + 1);
        let kind = match &self.target {
            Target::Free { .. } => Kind::Free,
            Target::Algebra(act) => {
                let table = match Tables::<i64>::new(act).and_then(|t| t.degree_table(n, dw)) {
                    Some(v) => Values::Int(v),
                    None => Values::Rat(Tables::<Q>::new(act).expect("rationals").degree_table(n, dw).expect("exact")),
                };
                Kind::Algebra { da: act.dim_a(), table }
            }
        };
        Ok(Arc::new(Degree { n, words, kind }))
    }

    fn image(&self, deg: &Degree) -> Rref<Q> {
        row_space_of(&GroupedRows::multilinear(deg), self.method)
    }

    /// Whether `f` vanishes on the target. Multihomogeneous components are
    /// fully linearized and tested on basis tuples.
    pub fn is_identity(&self, f: &GenPoly) -> Result<bool> {
        if f.dim_w() != self.dim_w() {
            return Err(GpiError::AmbientMismatch(f.dim_w(), self.dim_w()));
        }
        if f.terms().keys().any(|m| m.degree() == 0) {
            return Err(GpiError::InvalidArgument("constant terms are not elements of A".into()));
        }
        match &self.target {
            Target::Free { .. } => Ok(expand_units(f, &self.w)?.is_empty()),
            Target::Algebra(act) => {
                for comp in f.multihomogeneous_components().values() {
                    if !polynomial_vanishes(act, &multilinearize(comp)?) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// `gc_n`, the rank of the evaluation matrix.
    pub fn codimension(&self, n: usize) -> Result<u64> {
        Ok(self.image(&*self.degree(n)?).dim() as u64)
    }

    /// Cocharacter through traces of `σ` on the image of the evaluation map.
    pub fn cocharacter(&self, n: usize) -> Result<CocharacterResult> {
        let deg = self.degree(n)?;
        let image = self.image(&deg);
        let chi = CharacterVector::par_from_fn(n as u32, |mu| {
            image.permutation_trace(&deg.column_perm(&Perm::representative(mu)))
        });
        CocharacterResult::new(n as u32, decompose(&chi)?, image.dim() as u64)
    }

    /// Cocharacter as `trace(gP_n) − trace(σ|K)` with `K = gP_n ∩ gid(A)`
    /// the left kernel of the evaluation matrix. Dense; meant for small `n`.
    pub fn cocharacter_kernel_route(&self, n: usize) -> Result<CocharacterResult> {
        let deg = self.degree(n)?;
        let src = GroupedRows::multilinear(&deg);
        let (rows, cols) = (src.nrows(), src.ncols());
        let mut transposed = vec![vec![Q::zero(); rows]; cols];
        for i in 0..rows {
            for (c, v) in src.row(i) {
                transposed[c][i] = v;
            }
        }
        let kernel: Vec<SparseVec<Q>> = nullspace(&transposed, rows)
            .into_iter()
            .map(|v| v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        let k = row_space(&kernel, rows, self.method);
        let identity = Partition::column(n as u32);
        let chi = CharacterVector::par_from_fn(n as u32, |mu| {
            let whole = if *mu == identity { Q::from_integer(rows.into()) } else { Q::zero() };
            whole - k.permutation_trace(&deg.monomial_perm(&Perm::representative(mu)))
        });
        CocharacterResult::new(n as u32, decompose(&chi)?, (rows - k.dim()) as u64)
    }

    /// `dim V^α`, the span of the multidegree-`α` monomials modulo
    /// identities, measured on their multilinearizations.
    pub fn multidegree_dimension(&self, alpha: &[u32]) -> Result<u64> {
        let n: u32 = alpha.iter().sum();
        let deg = self.degree(n as usize)?;
        Ok(self.multidegree_with(&deg, alpha))
    }

    fn multidegree_with(&self, deg: &Degree, alpha: &[u32]) -> u64 {
        let nonzero: Vec<u32> = alpha.iter().copied().filter(|&a| a > 0).collect();
        row_space_of(&GroupedRows::multidegree(deg, &nonzero), self.method).dim() as u64
    }

    /// `Σ_{|α| = n} dim V^α` in `k` variables, cross-checked against
    /// `Σ m_λ dim W^k_λ` from the cocharacter.
    pub fn homogeneous_codimension(&self, n: usize, k: usize) -> Result<u64> {
        let deg = self.degree(n)?;
        let direct: u64 = compositions(n as u32, k).par_iter().map(|a| self.multidegree_with(&deg, a)).sum();
        let coch = self.cocharacter(n)?;
        let mut via_weyl = 0u64;
        for (lambda, m) in coch.multiplicities.iter() {
            if lambda.height() <= k {
                via_weyl += integral(m)? * weyl_dimension(lambda, k);
            }
        }
        if direct != via_weyl {
            return Err(GpiError::Verification(format!(
                "{}: homogeneous codimension {direct} differs from {via_weyl} (n={n}, k={k})",
                self.name()
            )));
        }
        Ok(direct)
    }

    /// `Σ_α dim V^α t^α` over `|α| = n`, `α ∈ ℕ^k`.
    pub fn character_polynomial(&self, n: usize, k: usize) -> Result<ExactPoly> {
        let deg = self.degree(n)?;
        let dims: Vec<(Vec<u32>, u64)> = compositions(n as u32, k)
            .into_par_iter()
            .map(|a| {
                let d = self.multidegree_with(&deg, &a);
                (a, d)
            })
            .collect();
        let mut p = ExactPoly::zero(k);
        for (a, d) in dims {
            p.add_term(a, Q::from_integer(d.into()));
        }
        Ok(p)
    }

    /// Multiplicities through `GL_k`: Schur expansion of the character
    /// polynomial. Requires `k ≥ n`.
    pub fn gl_pipeline_multiplicities(&self, n: usize, k: usize) -> Result<SchurExpansion> {
        if k < n {
            return Err(GpiError::InvalidArgument(format!("need k >= n, got k={k}, n={n}")));
        }
        schur_expand(&self.character_polynomial(n, k)?)
    }

    /// `Σ_{1 ≤ |α| ≤ N} dim V^α t^α` in `k` variables.
    pub fn hilbert_truncated(&self, k: usize, max_degree: u32) -> Result<TruncatedSeries> {
        if k == 0 || max_degree == 0 {
            return Err(GpiError::InvalidArgument("k and N must be positive".into()));
        }
        let mut p = ExactPoly::zero(k);
        for n in 1..=max_degree as usize {
            p = p.add(&self.character_polynomial(n, k)?);
        }
        Ok(TruncatedSeries::new(p, max_degree))
    }

    /// Whether every member of the generalized Capelli set of rank `m`
    /// vanishes.
    pub fn capelli_report(&self, m: usize) -> Result<bool> {
        for f in generalized_capelli_set(m, &self.w) {
            if !self.is_identity(&f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Rewrites every `1_W` letter as the sum of the basis expressing the unit.
fn expand_units(f: &GenPoly, w: &FiniteAlgebra) -> Result<GenPoly> {
    let unit = w.find_unity().ok_or(GpiError::WNotUnital)?;
    let mut out = GenPoly::zero(f.dim_w());
    for (m, c) in f.terms() {
        let mut partial: Vec<(Vec<WSym>, Q)> = vec![(Vec::new(), c.clone())];
        for &letter in m.w() {
            partial = match letter {
                WSym::Basis(_) => partial
                    .into_iter()
                    .map(|(mut word, x)| {
                        word.push(letter);
                        (word, x)
                    })
                    .collect(),
                WSym::One => partial
                    .into_iter()
                    .flat_map(|(word, x)| {
                        unit.iter().enumerate().filter(|(_, u)| !u.is_zero()).map(move |(p, u)| {
                            let mut word = word.clone();
                            word.push(WSym::Basis(p));
                            (word, &x * u)
                        })
                    })
                    .collect(),
            };
        }
        for (word, x) in partial {
            out.add_term(GenMonomial::new(word, m.vars().to_vec())?, x)?;
        }
    }
    Ok(out)
}

/// One line of the multiplicity-bound table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub lambda: Partition,
    pub multiplicity: u64,
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub rows: Vec<BoundRow>,
    /// Ordinary multiplicities `a_μ` of `A` in degree `2n+1`.
    pub ordinary: SchurExpansion,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.multiplicity <= r.bound)
    }

    pub fn to_table(&self) -> String {
        let w0 = self.rows.iter().map(|r| r.lambda.to_string().len()).max().unwrap_or(0).max("lambda".len());
        let mut out = format!("{:<w0$}  {:>8}  {:>10}\n", "lambda", "m", "bound");
        for r in &self.rows {
            out += &format!("{:<w0$}  {:>8}  {:>10}\n", r.lambda.to_string(), r.multiplicity, r.bound);
        }
        out += if self.holds() { "bound holds\n" } else { "bound FAILS\n" };
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| json!({"partition": r.lambda.parts(), "multiplicity": r.multiplicity, "bound": r.bound}))
            .collect();
        json!({"n": self.n, "holds": self.holds(), "rows": rows})
    }
}

/// `m_λ ≤ Σ_{μ ⊢ 2n+1, λ ⊆ μ} a_μ s^d_{μ/λ}(1,…,1)` for every `λ ⊢ n`,
/// where `a_μ` are the ordinary multiplicities of `A` and `d = dim W`.
/// `A` must be unital.
pub fn multiplicity_bound_check(act: &WAction, n: usize) -> Result<BoundReport> {
    act.pi_map()?;
    let generalized = GidEngine::new(act.clone()).cocharacter(n)?;
    let ordinary_act = WAction::ordinary(format!("{}_ordinary", act.name()), act.a().clone())?;
    let ordinary = GidEngine::new(ordinary_act).cocharacter(2 * n + 1)?.multiplicities;
    let d = act.dim_w();
    let mut rows = Vec::new();
    for lambda in enumerate_partitions(n as u32, None) {
        let mut bound = 0u64;
        for (mu, a) in ordinary.iter() {
            if lambda.is_contained_in(mu) {
                bound += integral(a)? * skew_schur_at_ones(mu, &lambda, d)?;
            }
        }
        rows.push(BoundRow { multiplicity: generalized.multiplicity(&lambda), lambda, bound });
    }
    Ok(BoundReport { n, rows, ordinary })
}

/// Whether `gid(sub) ∩ gP_n ⊆ gid(sup)`, i.e. stacking the evaluation
/// columns of `sup` next to those of `sub` does not raise the rank.
pub fn gid_contained(sub: &WAction, sup: &WAction, n: usize) -> Result<bool> {
    if sub.dim_w() != sup.dim_w() {
        return Err(GpiError::AmbientMismatch(sub.dim_w(), sup.dim_w()));
    }
    let (a, b) = (GidEngine::new(sub.clone()), GidEngine::new(sup.clone()));
    let (da, db) = (a.degree(n)?, b.degree(n)?);
    let ra = GroupedRows::multilinear(&da);
    let rb = GroupedRows::multilinear(&db);
    struct Stacked<'a>(&'a GroupedRows<'a>, &'a GroupedRows<'a>);
    impl RowSource for Stacked<'_> {
        fn nrows(&self) -> usize {
            self.0.nrows()
        }
        fn ncols(&self) -> usize {
            self.0.ncols() + self.1.ncols()
        }
        fn row(&self, i: usize) -> SparseVec<Q> {
            let shift = self.0.ncols();
            let mut r = self.0.row(i);
            r.extend(self.1.row(i).into_iter().map(|(c, v)| (c + shift, v)));
            r
        }
    }
    let alone = row_space_of(&ra, a.method).dim();
    let stacked = row_space_of(&Stacked(&ra, &rb), a.method).dim();
    Ok(alone == stacked)
}

/// The ordinary Capelli polynomial of rank `dim W + 1` evaluated on
/// `A ⋊ W` never has a nonzero `W`-component.
pub fn capelli_landing(act: &WAction) -> Result<bool> {
    let s = act.semidirect()?;
    let (da, dw) = (act.dim_a(), act.dim_w());
    let f = capelli(dw + 1, dw);
    let vars = f.variables();
    Ok(evaluations_satisfy(
        &s,
        &f,
        &vars,
        &full_domains(&s, vars.len()),
        &|v| v[da..da + dw].iter().all(|x| *x == 0),
        &|v| v[da..da + dw].iter().all(Zero::is_zero),
    ))
}

/// Multiplicities as a map, convenient for comparing with tables.
pub fn multiplicity_map(e: &SchurExpansion) -> BTreeMap<Partition, u64> {
    e.iter().map(|(l, m)| (l.clone(), integral(m).unwrap_or(0))).collect()
}

#[cfg(test)]
mod tests;
