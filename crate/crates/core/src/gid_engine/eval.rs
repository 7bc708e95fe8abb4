//! Evaluation of generalized monomials on basis elements.
//!
//! Everything is generic over [`Scalar`]: a checked `i64` fast path for
//! integral structure constants and an exact `Q` path used when constants
//! have denominators or the fast path overflows.

use num_traits::{ToPrimitive, Zero};

use crate::gpoly::{GenMonomial, WSym};
use crate::walg_model::{Table, WAction};
use crate::Q;

pub(crate) trait Scalar: Clone + Send + Sync + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn from_q(q: &Q) -> Option<Self>;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn from_q(q: &Q) -> Option<Self> {
        if q.is_integer() {
            q.to_integer().to_i64()
        } else {
            None
        }
    }
}

impl Scalar for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn from_q(q: &Q) -> Option<Self> {
        Some(q.clone())
    }
}

type SparseTable<S> = Vec<Vec<Vec<(usize, S)>>>;

fn sparsify<S: Scalar>(t: &Table) -> Option<SparseTable<S>> {
    t.iter()
        .map(|r| {
            r.iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(_, c)| !Zero::is_zero(*c))
                        .map(|(k, c)| S::from_q(c).map(|s| (k, s)))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Sparse structure constants of `A`, of the left and of the right action.
pub(crate) struct Tables<S> {
    pub da: usize,
    amul: SparseTable<S>,
    left: SparseTable<S>,
    right: SparseTable<S>,
}

impl<S: Scalar> Tables<S> {
    /// `None` when some constant is not representable in `S`.
    pub fn new(act: &WAction) -> Option<Self> {
        Some(Tables {
            da: act.dim_a(),
            amul: sparsify(act.a().table())?,
            left: sparsify(act.left_table())?,
            right: sparsify(act.right_table())?,
        })
    }

    fn accumulate(out: &mut [S], coef: &S, entries: &[(usize, S)]) -> Option<()> {
        for (k, c) in entries {
            out[*k] = out[*k].add(&coef.mul(c)?)?;
        }
        Some(())
    }

    /// `v · a_j`.
    pub fn mul_a(&self, v: &[S], j: usize) -> Option<Vec<S>> {
        let mut out = vec![S::zero(); self.da];
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                Self::accumulate(&mut out, x, &self.amul[i][j])?;
            }
        }
        Some(out)
    }

    /// `v · w_p`.
    pub fn right_w(&self, v: &[S], p: usize) -> Option<Vec<S>> {
        let mut out = vec![S::zero(); self.da];
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                Self::accumulate(&mut out, x, &self.right[i][p])?;
            }
        }
        Some(out)
    }

    /// `w_p · a_j`.
    pub fn left_basis(&self, p: usize, j: usize) -> Vec<S> {
        let mut out = vec![S::zero(); self.da];
        for (k, c) in &self.left[p][j] {
            out[*k] = c.clone();
        }
        out
    }

    pub fn basis(&self, j: usize) -> Vec<S> {
        let mut out = vec![S::zero(); self.da];
        out[j] = Self::one_like();
        out
    }

    fn one_like() -> S {
        S::from_q(&Q::from_integer(1.into())).expect("one is representable")
    }

    /// `w₀ a_{c₁} w₁ ⋯ a_{cₙ} wₙ` where `choice[k]` is the basis element
    /// substituted at position `k`.
    pub fn eval_monomial(&self, m: &GenMonomial, choice: &[usize]) -> Option<Vec<S>> {
        let w = m.w();
        let mut v = match w[0] {
            WSym::One => self.basis(choice[0]),
            WSym::Basis(p) => self.left_basis(p, choice[0]),
        };
        for k in 1..choice.len() {
            if let WSym::Basis(p) = w[k] {
                v = self.right_w(&v, p)?;
            }
            v = self.mul_a(&v, choice[k])?;
        }
        if let WSym::Basis(p) = w[choice.len()] {
            v = self.right_w(&v, p)?;
        }
        Some(v)
    }

    /// Values `w_{i₀} a_{c₁} w_{i₁} ⋯ a_{cₙ} w_{iₙ}` for every W-word and
    /// every choice of basis elements, flattened as
    /// `((word · Dⁿ) + choice) · D + coordinate` with words and choices read
    /// as big-endian numbers.
    pub fn degree_table(&self, n: usize, dw: usize) -> Option<Vec<S>> {
        use rayon::prelude::*;
        let da = self.da;
        // Level k holds prefixes w_{i₀} a_{c₁} ⋯ a_{c_k}, indexed by
        // (word prefix · D^k + choice prefix).
        let mut level: Vec<Vec<S>> = (0..dw * da).map(|s| self.left_basis(s / da, s % da)).collect();
        let mut choices = da;
        for _ in 1..n {
            let next_choices = choices * da;
            let count = level.len() * dw * da;
            let next: Option<Vec<Vec<S>>> = (0..count)
                .into_par_iter()
                .map(|s| {
                    let word = s / next_choices;
                    let choice = s % next_choices;
                    let (prev_word, p) = (word / dw, word % dw);
                    let (prev_choice, c) = (choice / da, choice % da);
                    let v = &level[prev_word * choices + prev_choice];
                    self.mul_a(&self.right_w(v, p)?, c)
                })
                .collect();
            level = next?;
            choices = next_choices;
        }
        let words = level.len() / choices;
        let total = words * dw * choices;
        let finished: Option<Vec<Vec<S>>> = (0..total)
            .into_par_iter()
            .map(|s| {
                let word = s / choices;
                let choice = s % choices;
                let (prev_word, p) = (word / dw, word % dw);
                self.right_w(&level[prev_word * choices + choice], p)
            })
            .collect();
        Some(finished?.into_iter().flatten().collect())
    }
}

enum Outcome {
    Overflow,
    Rejected,
}

/// Checks `pred` on `f(b_{t₁}, …, b_{tₘ})` for every tuple with `t_i` in
/// `domains[i]`. `vars` lists the variables of `f` in tuple order. `None`
/// means an intermediate value left `S`.
pub(crate) fn all_evaluations<S: Scalar>(
    tables: &Tables<S>,
    terms: &[(GenMonomial, S)],
    vars: &[crate::gpoly::Var],
    domains: &[Vec<usize>],
    pred: &(dyn Fn(&[S]) -> bool + Sync),
) -> Option<bool> {
    use rayon::prelude::*;
    let da = tables.da;
    let m = vars.len();
    let total: usize = domains.iter().map(Vec::len).product();
    let positions: Vec<Vec<usize>> = terms
        .iter()
        .map(|(mono, _)| mono.vars().iter().map(|v| vars.binary_search(v).expect("variable listed")).collect())
        .collect();
    let run = (0..total).into_par_iter().try_for_each(|ti| {
        let mut t = vec![0usize; m];
        let mut rest = ti;
        for (d, dom) in t.iter_mut().zip(domains).rev() {
            *d = dom[rest % dom.len()];
            rest /= dom.len();
        }
        let mut acc = vec![S::zero(); da];
        for ((mono, c), pos) in terms.iter().zip(&positions) {
            let choice: Vec<usize> = pos.iter().map(|&p| t[p]).collect();
            let v = tables.eval_monomial(mono, &choice).ok_or(Outcome::Overflow)?;
            for (a, x) in acc.iter_mut().zip(&v) {
                if !x.is_zero() {
                    *a = a.add(&c.mul(x).ok_or(Outcome::Overflow)?).ok_or(Outcome::Overflow)?;
                }
            }
        }
        if pred(&acc) {
            Ok(())
        } else {
            Err(Outcome::Rejected)
        }
    });
    match run {
        Ok(()) => Some(true),
        Err(Outcome::Rejected) => Some(false),
        Err(Outcome::Overflow) => None,
    }
}
