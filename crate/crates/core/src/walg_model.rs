//! Finite-dimensional algebras, W-bimodule actions and the built-in examples.
//!
//! Structure constants are stored densely: `mult[i][j]` is the coordinate
//! vector of `b_i b_j`. Actions follow the same layout: `left[p][i]` is
//! `w_p a_i` and `right[i][p]` is `a_i w_p`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{GpiError, Result};
use crate::linalg::solve;
use crate::Q;

/// Three-index table of structure constants.
pub type Table = Vec<Vec<Vec<Q>>>;

fn unit_vec(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v
}

/// `Σ x_i y_j table[i][j]`.
pub fn bilinear(table: &[Vec<Vec<Q>>], x: &[Q], y: &[Q], out_dim: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); out_dim];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let c = xi * yj;
            for (o, t) in out.iter_mut().zip(&table[i][j]) {
                if !t.is_zero() {
                    *o += &c * t;
                }
            }
        }
    }
    out
}

fn check_table(table: &[Vec<Vec<Q>>], rows: usize, cols: usize, out: usize, what: &str) -> Result<()> {
    let ok = table.len() == rows && table.iter().all(|r| r.len() == cols && r.iter().all(|v| v.len() == out));
    if ok {
        Ok(())
    } else {
        Err(GpiError::Document(format!("{what} must have shape {rows}x{cols}x{out}")))
    }
}

/// An associative algebra given by structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    basis: Vec<String>,
    mult: Table,
}

impl FiniteAlgebra {
    /// Validates shapes and associativity on all basis triples.
    pub fn new(basis: Vec<String>, mult: Table) -> Result<Self> {
        let alg = Self::new_unchecked(basis, mult)?;
        alg.check_associative()?;
        Ok(alg)
    }

    /// Validates shapes only.
    pub fn new_unchecked(basis: Vec<String>, mult: Table) -> Result<Self> {
        let d = basis.len();
        if d == 0 {
            return Err(GpiError::Document("algebra dimension must be positive".into()));
        }
        check_table(&mult, d, d, d, "mult")?;
        Ok(FiniteAlgebra { basis, mult })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn table(&self) -> &Table {
        &self.mult
    }

    /// `b_i b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Q] {
        &self.mult[i][j]
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        bilinear(&self.mult, x, y, self.dim())
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Q> {
        unit_vec(self.dim(), i)
    }

    pub fn check_associative(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    let left = self.mul(self.product(i, j), &self.basis_vec(l));
                    let right = self.mul(&self.basis_vec(i), self.product(j, l));
                    if left != right {
                        return Err(GpiError::Axiom(format!("associativity fails at ({i},{j},{l})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The two-sided unit, if one exists.
    pub fn find_unity(&self) -> Option<Vec<Q>> {
        let d = self.dim();
        let mut rows = Vec::with_capacity(2 * d * d);
        let mut rhs = Vec::with_capacity(2 * d * d);
        for i in 0..d {
            for out in 0..d {
                // (e b_i)[out] and (b_i e)[out] as linear forms in e.
                rows.push((0..d).map(|k| self.mult[k][i][out].clone()).collect());
                rows.push((0..d).map(|k| self.mult[i][k][out].clone()).collect());
                let target = if out == i { Q::one() } else { Q::zero() };
                rhs.push(target.clone());
                rhs.push(target);
            }
        }
        solve(&rows, &rhs, d)
    }

    /// Subalgebra of `M_n` spanned by the given matrix units `e_{ij}`.
    /// Panics if the span is not closed under multiplication.
    pub fn matrix_units(n: usize, units: &[(usize, usize)]) -> Self {
        let d = units.len();
        let mut mult = vec![vec![vec![Q::zero(); d]; d]; d];
        for (a, &(i, j)) in units.iter().enumerate() {
            for (b, &(k, l)) in units.iter().enumerate() {
                if j == k {
                    let c = units.iter().position(|&u| u == (i, l)).expect("matrix units must span a subalgebra");
                    mult[a][b][c] = Q::one();
                }
            }
        }
        let basis = units.iter().map(|&(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
        debug_assert!(units.iter().all(|&(i, j)| i < n && j < n));
        FiniteAlgebra { basis, mult }
    }

    /// The field `F` as a one-dimensional algebra.
    pub fn scalars() -> Self {
        FiniteAlgebra { basis: vec!["1".into()], mult: vec![vec![vec![Q::one()]]] }
    }
}

/// A W-algebra: `A` with a unital W-bimodule structure satisfying the
/// compatibility axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WAction {
    name: String,
    w: FiniteAlgebra,
    a: FiniteAlgebra,
    left: Table,
    right: Table,
    w_unit: Vec<Q>,
}

impl WAction {
    /// Validates every axiom on basis elements.
    pub fn new(name: impl Into<String>, w: FiniteAlgebra, a: FiniteAlgebra, left: Table, right: Table) -> Result<Self> {
        let act = Self::new_unchecked(name, w, a, left, right)?;
        act.validate()?;
        Ok(act)
    }

    /// Checks shapes and finds `1_W`; skips the axiom checks.
    pub fn new_unchecked(
        name: impl Into<String>,
        w: FiniteAlgebra,
        a: FiniteAlgebra,
        left: Table,
        right: Table,
    ) -> Result<Self> {
        check_table(&left, w.dim(), a.dim(), a.dim(), "left")?;
        check_table(&right, a.dim(), w.dim(), a.dim(), "right")?;
        let w_unit = w.find_unity().ok_or(GpiError::WNotUnital)?;
        Ok(WAction { name: name.into(), w, a, left, right, w_unit })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn w(&self) -> &FiniteAlgebra {
        &self.w
    }

    pub fn a(&self) -> &FiniteAlgebra {
        &self.a
    }

    pub fn left_table(&self) -> &Table {
        &self.left
    }

    pub fn right_table(&self) -> &Table {
        &self.right
    }

    pub fn w_unit(&self) -> &[Q] {
        &self.w_unit
    }

    pub fn dim_a(&self) -> usize {
        self.a.dim()
    }

    pub fn dim_w(&self) -> usize {
        self.w.dim()
    }

    pub fn act_left(&self, w: &[Q], a: &[Q]) -> Vec<Q> {
        bilinear(&self.left, w, a, self.dim_a())
    }

    pub fn act_right(&self, a: &[Q], w: &[Q]) -> Vec<Q> {
        bilinear(&self.right, a, w, self.dim_a())
    }

    pub fn validate(&self) -> Result<()> {
        self.w.check_associative().map_err(|e| GpiError::Axiom(format!("W: {e}")))?;
        self.a.check_associative().map_err(|e| GpiError::Axiom(format!("A: {e}")))?;
        let (dw, da) = (self.dim_w(), self.dim_a());
        let wv = |p| self.w.basis_vec(p);
        let av = |i| self.a.basis_vec(i);
        let fail = |what: &str, t: String| Err(GpiError::Axiom(format!("{what} fails at {t}")));
        for p in 0..dw {
            for i in 0..da {
                for j in 0..da {
                    let (w, a1, a2) = (wv(p), av(i), av(j));
                    if self.act_left(&w, &self.a.mul(&a1, &a2)) != self.a.mul(&self.act_left(&w, &a1), &a2) {
                        return fail("w(a1a2) = (wa1)a2", format!("(w{p},a{i},a{j})"));
                    }
                    if self.act_right(&self.a.mul(&a1, &a2), &w) != self.a.mul(&a1, &self.act_right(&a2, &w)) {
                        return fail("(a1a2)w = a1(a2w)", format!("(a{i},a{j},w{p})"));
                    }
                    if self.a.mul(&self.act_right(&a1, &w), &a2) != self.a.mul(&a1, &self.act_left(&w, &a2)) {
                        return fail("(a1w)a2 = a1(wa2)", format!("(a{i},w{p},a{j})"));
                    }
                }
            }
            for q in 0..dw {
                let (w1, w2) = (wv(p), wv(q));
                let w12 = self.w.mul(&w1, &w2);
                for i in 0..da {
                    let a = av(i);
                    if self.act_left(&w12, &a) != self.act_left(&w1, &self.act_left(&w2, &a)) {
                        return fail("(w1w2)a = w1(w2a)", format!("(w{p},w{q},a{i})"));
                    }
                    if self.act_right(&a, &w12) != self.act_right(&self.act_right(&a, &w1), &w2) {
                        return fail("a(w1w2) = (aw1)w2", format!("(a{i},w{p},w{q})"));
                    }
                    if self.act_left(&w1, &self.act_right(&a, &w2)) != self.act_right(&self.act_left(&w1, &a), &w2) {
                        return fail("w1(aw2) = (w1a)w2", format!("(w{p},a{i},w{q})"));
                    }
                }
            }
        }
        for i in 0..da {
            let a = av(i);
            if self.act_left(&self.w_unit, &a) != a || self.act_right(&a, &self.w_unit) != a {
                return fail("1_W a = a = a 1_W", format!("a{i}"));
            }
        }
        Ok(())
    }

    /// `W = F` acting by scalars: the ordinary (non-generalized) setting.
    pub fn ordinary(name: impl Into<String>, a: FiniteAlgebra) -> Result<Self> {
        let da = a.dim();
        let left = vec![(0..da).map(|i| unit_vec(da, i)).collect()];
        let right = (0..da).map(|i| vec![unit_vec(da, i)]).collect();
        Self::new(name, FiniteAlgebra::scalars(), a, left, right)
    }

    /// `W` and `A` both subalgebras of `M_n` spanned by matrix units, with
    /// `W` acting by matrix multiplication.
    pub fn matrix_unit_action(
        name: impl Into<String>,
        n: usize,
        w_units: &[(usize, usize)],
        a_units: &[(usize, usize)],
    ) -> Result<Self> {
        let w = FiniteAlgebra::matrix_units(n, w_units);
        let a = FiniteAlgebra::matrix_units(n, a_units);
        let da = a_units.len();
        let locate = |u: (usize, usize)| a_units.iter().position(|&v| v == u).expect("A must be a W-bimodule");
        let mut left = vec![vec![vec![Q::zero(); da]; da]; w_units.len()];
        let mut right = vec![vec![vec![Q::zero(); da]; w_units.len()]; da];
        for (p, &(i, j)) in w_units.iter().enumerate() {
            for (b, &(k, l)) in a_units.iter().enumerate() {
                if j == k {
                    left[p][b][locate((i, l))] = Q::one();
                }
                if l == i {
                    right[b][p][locate((k, j))] = Q::one();
                }
            }
        }
        Self::new(name, w, a, left, right)
    }

    /// `π(w) = w·1_A` as a matrix whose row `p` is `π(w_p)`. Verifies that
    /// `π` is multiplicative, that `π(w) = 1_A·w`, and that
    /// `wa = π(w)a`, `aw = aπ(w)` on basis elements.
    pub fn pi_map(&self) -> Result<Vec<Vec<Q>>> {
        let one_a = self.a.find_unity().ok_or_else(|| GpiError::NoUnity(self.name.clone()))?;
        let dw = self.dim_w();
        let pi: Vec<Vec<Q>> = (0..dw).map(|p| self.act_left(&self.w.basis_vec(p), &one_a)).collect();
        let apply = |w: &[Q]| -> Vec<Q> {
            let mut out = vec![Q::zero(); self.dim_a()];
            for (c, row) in w.iter().zip(&pi) {
                for (o, x) in out.iter_mut().zip(row) {
                    *o += c * x;
                }
            }
            out
        };
        let broken = |what: &str| Err(GpiError::Verification(format!("pi map of {}: {what}", self.name)));
        for p in 0..dw {
            let wp = self.w.basis_vec(p);
            if self.act_right(&one_a, &wp) != pi[p] {
                return broken("w 1_A differs from 1_A w");
            }
            for q in 0..dw {
                let wq = self.w.basis_vec(q);
                if apply(&self.w.mul(&wp, &wq)) != self.a.mul(&pi[p], &pi[q]) {
                    return broken("not multiplicative");
                }
            }
            for i in 0..self.dim_a() {
                let a = self.a.basis_vec(i);
                if self.act_left(&wp, &a) != self.a.mul(&pi[p], &a) || self.act_right(&a, &wp) != self.a.mul(&a, &pi[p])
                {
                    return broken("action is not multiplication by the image");
                }
            }
        }
        Ok(pi)
    }

    /// `A ⋊ W` on `A ⊕ W` with
    /// `(a₁,w₁)(a₂,w₂) = (a₁a₂ + w₁a₂ + a₁w₂, w₁w₂)`; `W` acts through the
    /// second component.
    pub fn semidirect(&self) -> Result<WAction> {
        let (da, dw) = (self.dim_a(), self.dim_w());
        let n = da + dw;
        let embed_a = |v: &[Q]| -> Vec<Q> {
            let mut out = v.to_vec();
            out.resize(n, Q::zero());
            out
        };
        let embed_w = |v: &[Q]| -> Vec<Q> {
            let mut out = vec![Q::zero(); da];
            out.extend_from_slice(v);
            out
        };
        let mut mult = vec![vec![vec![Q::zero(); n]; n]; n];
        for x in 0..n {
            for y in 0..n {
                mult[x][y] = match (x < da, y < da) {
                    (true, true) => embed_a(self.a.product(x, y)),
                    (false, true) => embed_a(&self.left[x - da][y]),
                    (true, false) => embed_a(&self.right[x][y - da]),
                    (false, false) => embed_w(self.w.product(x - da, y - da)),
                };
            }
        }
        let mut basis: Vec<String> = self.a.basis.iter().map(|b| format!("({b},0)")).collect();
        basis.extend(self.w.basis.iter().map(|b| format!("(0,{b})")));
        let alg = FiniteAlgebra::new(basis, mult)?;
        let left: Table = (0..dw).map(|p| (0..n).map(|x| alg.product(da + p, x).to_vec()).collect()).collect();
        let right: Table = (0..n).map(|x| (0..dw).map(|p| alg.product(x, da + p).to_vec()).collect()).collect();
        WAction::new(format!("{}_semidirect", self.name), self.w.clone(), alg, left, right)
    }
}

/// A W-algebra with a `Z/2` grading on `A` respected by multiplication and
/// by the action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WSuperAlgebra {
    action: WAction,
    parity: Vec<u8>,
}

impl WSuperAlgebra {
    pub fn new(action: WAction, parity: Vec<u8>) -> Result<Self> {
        if parity.len() != action.dim_a() || parity.iter().any(|&p| p > 1) {
            return Err(GpiError::Document("parity must list 0 or 1 for every A-basis element".into()));
        }
        let s = WSuperAlgebra { action, parity };
        s.validate_grading()?;
        Ok(s)
    }

    /// Every element is homogeneous of even degree.
    pub fn trivially_graded(action: WAction) -> Self {
        let parity = vec![0; action.dim_a()];
        WSuperAlgebra { action, parity }
    }

    pub fn action(&self) -> &WAction {
        &self.action
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn even_basis(&self) -> Vec<usize> {
        (0..self.parity.len()).filter(|&i| self.parity[i] == 0).collect()
    }

    pub fn odd_basis(&self) -> Vec<usize> {
        (0..self.parity.len()).filter(|&i| self.parity[i] == 1).collect()
    }

    fn homogeneous_of(&self, v: &[Q], parity: u8) -> bool {
        v.iter().zip(&self.parity).all(|(c, &p)| c.is_zero() || p == parity)
    }

    fn validate_grading(&self) -> Result<()> {
        let act = &self.action;
        for i in 0..act.dim_a() {
            for j in 0..act.dim_a() {
                if !self.homogeneous_of(act.a().product(i, j), self.parity[i] ^ self.parity[j]) {
                    return Err(GpiError::Axiom(format!("grading not respected by a{i}a{j}")));
                }
            }
            for p in 0..act.dim_w() {
                if !self.homogeneous_of(&act.left[p][i], self.parity[i])
                    || !self.homogeneous_of(&act.right[i][p], self.parity[i])
                {
                    return Err(GpiError::Axiom(format!("W-action does not preserve the degree of a{i}")));
                }
            }
        }
        Ok(())
    }
}

/// Index of a subset of generators in the Grassmann basis: subsets are
/// ordered by bitmask.
fn grassmann_sign(s: usize, t: usize) -> i64 {
    // Moving each generator of t left past the larger generators of s.
    let mut swaps = 0;
    let mut bits = t;
    while bits != 0 {
        let g = bits.trailing_zeros();
        swaps += (s >> (g + 1)).count_ones();
        bits &= bits - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

fn grassmann_label(mask: usize) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..usize::BITS).filter(|g| mask >> g & 1 == 1).map(|g| format!("e{}", g + 1)).collect()
}

/// Exterior algebra on `m` generators; basis indexed by subset bitmask.
pub fn grassmann_algebra(m: usize) -> FiniteAlgebra {
    let d = 1usize << m;
    let mut mult = vec![vec![vec![Q::zero(); d]; d]; d];
    for s in 0..d {
        for t in 0..d {
            if s & t == 0 {
                mult[s][t][s | t] = Q::from_integer(grassmann_sign(s, t).into());
            }
        }
    }
    FiniteAlgebra { basis: (0..d).map(grassmann_label).collect(), mult }
}

/// Grassmann algebra on `m` generators with `W = F` and parity equal to word
/// length mod 2.
pub fn grassmann_truncated(m: usize) -> Result<WSuperAlgebra> {
    if m == 0 {
        return Err(GpiError::InvalidArgument("grassmann needs at least one generator".into()));
    }
    let alg = grassmann_algebra(m);
    let parity = (0..alg.dim()).map(|s| (s.count_ones() % 2) as u8).collect();
    WSuperAlgebra::new(WAction::ordinary(format!("grassmann({m})"), alg)?, parity)
}

const UT2: [(usize, usize); 3] = [(0, 0), (0, 1), (1, 1)];

/// Named built-in W-algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// `UT₂` acting on itself, basis `(e11, e12, e22)`.
    Ut2Self,
    /// `UT₂` with `W = span{e11, e22}`.
    Ut2D,
    /// `UT₂` with `W = F(e11 + e22)`.
    Ut2F,
    /// `M_n` acting on itself.
    Matrix(usize),
    /// Diagonal `n×n` matrices with `W = F`.
    Diagonal(usize),
    /// Exterior algebra on `m` generators with `W = F`.
    Grassmann(usize),
}

impl std::str::FromStr for Builtin {
    type Err = GpiError;
    fn from_str(s: &str) -> Result<Self> {
        let arg = |prefix: &str| -> Option<usize> { s.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok() };
        match s {
            "ut2_self" => Ok(Builtin::Ut2Self),
            "ut2_D" => Ok(Builtin::Ut2D),
            "ut2_F" => Ok(Builtin::Ut2F),
            _ => {
                if let Some(n) = arg("matrix(") {
                    Ok(Builtin::Matrix(n))
                } else if let Some(n) = arg("diagonal(") {
                    Ok(Builtin::Diagonal(n))
                } else if let Some(m) = arg("grassmann(") {
                    Ok(Builtin::Grassmann(m))
                } else {
                    Err(GpiError::Parse(format!("unknown built-in algebra {s:?}")))
                }
            }
        }
    }
}

impl std::fmt::Display for Builtin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Builtin::Ut2Self => write!(f, "ut2_self"),
            Builtin::Ut2D => write!(f, "ut2_D"),
            Builtin::Ut2F => write!(f, "ut2_F"),
            Builtin::Matrix(n) => write!(f, "matrix({n})"),
            Builtin::Diagonal(n) => write!(f, "diagonal({n})"),
            Builtin::Grassmann(m) => write!(f, "grassmann({m})"),
        }
    }
}

/// Constructs and validates a built-in.
pub fn builtin(b: Builtin) -> Result<WAction> {
    let name = b.to_string();
    match b {
        Builtin::Ut2Self => WAction::matrix_unit_action(name, 2, &UT2, &UT2),
        Builtin::Ut2D => WAction::matrix_unit_action(name, 2, &[(0, 0), (1, 1)], &UT2),
        Builtin::Ut2F => {
            let a = FiniteAlgebra::matrix_units(2, &UT2);
            WAction::ordinary(name, a)
        }
        Builtin::Matrix(n) | Builtin::Diagonal(n) if n == 0 => {
            Err(GpiError::InvalidArgument("matrix size must be positive".into()))
        }
        Builtin::Matrix(n) => {
            let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
            WAction::matrix_unit_action(name, n, &units, &units)
        }
        Builtin::Diagonal(n) => {
            let units: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
            WAction::ordinary(name, FiniteAlgebra::matrix_units(n, &units))
        }
        Builtin::Grassmann(m) => Ok(grassmann_truncated(m)?.action),
    }
}

/// Built-in with its natural grading (odd words for Grassmann, trivial
/// otherwise).
pub fn builtin_super(b: Builtin) -> Result<WSuperAlgebra> {
    match b {
        Builtin::Grassmann(m) => grassmann_truncated(m),
        _ => Ok(WSuperAlgebra::trivially_graded(builtin(b)?)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct AlgebraPart {
    dim: usize,
    basis: Vec<String>,
    mult: Vec<Vec<Vec<String>>>,
}

/// The JSON algebra document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub name: String,
    #[serde(rename = "W")]
    w: AlgebraPart,
    #[serde(rename = "A")]
    a: AlgebraPart,
    left: Vec<Vec<Vec<String>>>,
    right: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Vec<u8>>,
}

fn parse_table(t: &[Vec<Vec<String>>]) -> Result<Table> {
    t.iter()
        .map(|r| {
            r.iter()
                .map(|v| {
                    v.iter()
                        .map(|s| {
                            s.trim().parse::<Q>().map_err(|_| GpiError::Document(format!("bad rational {s:?}")))
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn render_table(t: &Table) -> Vec<Vec<Vec<String>>> {
    t.iter().map(|r| r.iter().map(|v| v.iter().map(Q::to_string).collect()).collect()).collect()
}

impl AlgebraPart {
    fn to_algebra(&self, what: &str, validate: bool) -> Result<FiniteAlgebra> {
        if self.basis.len() != self.dim {
            return Err(GpiError::Document(format!("{what}: basis has {} labels, dim is {}", self.basis.len(), self.dim)));
        }
        let mult = parse_table(&self.mult)?;
        let alg = FiniteAlgebra::new_unchecked(self.basis.clone(), mult)?;
        if validate {
            alg.check_associative().map_err(|e| GpiError::Axiom(format!("{what}: {e}")))?;
        }
        Ok(alg)
    }

    fn from_algebra(a: &FiniteAlgebra) -> Self {
        AlgebraPart { dim: a.dim(), basis: a.basis.clone(), mult: render_table(&a.mult) }
    }
}

impl AlgebraDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| GpiError::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_action(act: &WAction, parity: Option<Vec<u8>>) -> Self {
        AlgebraDocument {
            name: act.name.clone(),
            w: AlgebraPart::from_algebra(&act.w),
            a: AlgebraPart::from_algebra(&act.a),
            left: render_table(&act.left),
            right: render_table(&act.right),
            parity,
        }
    }

    pub fn from_super(s: &WSuperAlgebra) -> Self {
        Self::from_action(&s.action, Some(s.parity.clone()))
    }

    /// Builds the action; `validate = false` skips the axiom checks.
    pub fn to_action(&self, validate: bool) -> Result<WAction> {
        let w = self.w.to_algebra("W", validate)?;
        let a = self.a.to_algebra("A", validate)?;
        let left = parse_table(&self.left)?;
        let right = parse_table(&self.right)?;
        if validate {
            WAction::new(self.name.clone(), w, a, left, right)
        } else {
            WAction::new_unchecked(self.name.clone(), w, a, left, right)
        }
    }

    /// The graded algebra; a missing parity means trivially graded.
    pub fn to_super(&self, validate: bool) -> Result<WSuperAlgebra> {
        let act = self.to_action(validate)?;
        match &self.parity {
            Some(p) => WSuperAlgebra::new(act, p.clone()),
            None => Ok(WSuperAlgebra::trivially_graded(act)),
        }
    }
}

/// Parses and validates an algebra document.
pub fn load_algebra(text: &str) -> Result<WAction> {
    AlgebraDocument::parse(text)?.to_action(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn builtins_validate() {
        let cases = [
            (Builtin::Ut2Self, 3, 3),
            (Builtin::Ut2D, 3, 2),
            (Builtin::Ut2F, 3, 1),
            (Builtin::Matrix(2), 4, 4),
            (Builtin::Diagonal(3), 3, 1),
            (Builtin::Grassmann(2), 4, 1),
        ];
        for (b, da, dw) in cases {
            let act = builtin(b).unwrap();
            assert_eq!((act.dim_a(), act.dim_w()), (da, dw), "{b}");
            act.validate().unwrap();
            assert_eq!(b.to_string().parse::<Builtin>().unwrap(), b);
        }
        assert!("ut3".parse::<Builtin>().is_err());
    }

    #[test]
    fn unity() {
        let ut2 = builtin(Builtin::Ut2Self).unwrap();
        assert_eq!(ut2.a().find_unity(), Some(qv(&[1, 0, 1])));
        let nil = FiniteAlgebra::matrix_units(2, &[(0, 1)]);
        assert_eq!(nil.find_unity(), None);
        let sd = ut2.semidirect().unwrap();
        assert_eq!(sd.a().find_unity(), Some(qv(&[0, 0, 0, 1, 0, 1])));
    }

    #[test]
    fn pi_maps() {
        let id = builtin(Builtin::Ut2Self).unwrap().pi_map().unwrap();
        assert_eq!(id, vec![qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1])]);
        let d = builtin(Builtin::Ut2D).unwrap().pi_map().unwrap();
        assert_eq!(d, vec![qv(&[1, 0, 0]), qv(&[0, 0, 1])]);
        let f = builtin(Builtin::Ut2F).unwrap().pi_map().unwrap();
        assert_eq!(f, vec![qv(&[1, 0, 1])]);
        let nil = FiniteAlgebra::matrix_units(2, &[(0, 1)]);
        let act = WAction::ordinary("nil", nil).unwrap();
        assert!(matches!(act.pi_map(), Err(GpiError::NoUnity(_))));
    }

    #[test]
    fn pi_maps_are_injective() {
        for b in [Builtin::Ut2Self, Builtin::Ut2D, Builtin::Ut2F] {
            let pi = builtin(b).unwrap().pi_map().unwrap();
            let rows: Vec<_> = pi.iter().map(|r| crate::linalg::sparse_from_dense(r)).collect();
            assert_eq!(crate::linalg::rank(&rows, 3, crate::linalg::RankMethod::Exact), pi.len());
        }
    }

    #[test]
    fn semidirect_product() {
        let act = builtin(Builtin::Ut2Self).unwrap();
        let sd = act.semidirect().unwrap();
        assert_eq!(sd.dim_a(), 6);
        // A is an ideal: products with an A-component stay in A.
        for x in 0..6 {
            for y in 0..3 {
                assert!(sd.a().product(x, y)[3..].iter().all(Zero::is_zero));
                assert!(sd.a().product(y, x)[3..].iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn grassmann() {
        let g1 = grassmann_truncated(1).unwrap();
        assert_eq!(g1.action().dim_a(), 2);
        assert_eq!(g1.action().a().product(1, 1), qv(&[0, 0]).as_slice());
        let g2 = grassmann_algebra(2);
        assert_eq!(g2.product(1, 2)[3], q(1));
        assert_eq!(g2.product(2, 1)[3], q(-1));
        let g3 = grassmann_truncated(3).unwrap();
        assert_eq!(g3.even_basis().len(), 4);
        assert_eq!(g3.odd_basis().len(), 4);
        g3.action().validate().unwrap();
        assert_eq!(g3.action().a().find_unity(), Some(unit_vec(8, 0)));
    }

    #[test]
    fn document_round_trip() {
        let ut2 = builtin(Builtin::Ut2Self).unwrap();
        let doc = AlgebraDocument::from_action(&ut2, None);
        assert_eq!(load_algebra(&doc.to_json()).unwrap(), ut2);
        let g = grassmann_truncated(2).unwrap();
        let text = AlgebraDocument::from_super(&g).to_json();
        assert_eq!(AlgebraDocument::parse(&text).unwrap().to_super(true).unwrap(), g);
    }

    #[test]
    fn document_errors() {
        let ut2 = builtin(Builtin::Ut2Self).unwrap();
        let mut doc = AlgebraDocument::from_action(&ut2, None);
        // e11·e11 := e12 breaks associativity.
        doc.a.mult[0][0] = vec!["0".into(), "1".into(), "0".into()];
        let err = doc.to_action(true).unwrap_err();
        assert!(matches!(&err, GpiError::Axiom(m) if m.contains("associativity fails at (")), "{err}");
        assert!(doc.to_action(false).is_ok());

        let mut doc = AlgebraDocument::from_action(&ut2, None);
        doc.w = AlgebraPart { dim: 1, basis: vec!["n".into()], mult: vec![vec![vec!["0".into()]]] };
        doc.left = vec![vec![vec!["0".into(); 3]; 3]];
        doc.right = vec![vec![vec!["0".into(); 3]; 1]; 3];
        assert_eq!(doc.to_action(true).unwrap_err(), GpiError::WNotUnital);

        assert!(matches!(load_algebra("{"), Err(GpiError::Document(_))));
        let mut doc = AlgebraDocument::from_action(&ut2, None);
        doc.a.mult[0][0][0] = "x".into();
        assert!(matches!(doc.to_action(true), Err(GpiError::Document(_))));
    }

    #[test]
    fn broken_action_is_rejected() {
        let ut2 = builtin(Builtin::Ut2Self).unwrap();
        let mut left = ut2.left_table().clone();
        left[0][2] = qv(&[0, 0, 1]);
        let err = WAction::new("bad", ut2.w().clone(), ut2.a().clone(), left, ut2.right_table().clone());
        assert!(matches!(err, Err(GpiError::Axiom(_))));
    }

    #[test]
    fn rational_constants_parse() {
        let mut doc = AlgebraDocument::from_action(&builtin(Builtin::Ut2F).unwrap(), None);
        doc.w.mult[0][0][0] = "2/2".into();
        assert!(doc.to_action(true).is_ok());
    }
}
