//! Grassmann envelopes of W-superalgebras and graded identities.
//!
//! Only `m` Grassmann generators are used. For multilinear `f` of degree
//! `n ≤ m` the sign computation behind the tilde map needs one fresh
//! generator per substituted odd element, so `m ≥ deg f` suffices and is
//! enforced by [`tilde_correspondence_check`].

use num_traits::Zero;

use crate::error::{GpiError, Result};
use crate::gid_engine::evaluations_satisfy;
use crate::gpoly::{tilde, GradedGenPoly};
use crate::walg_model::{grassmann_algebra, FiniteAlgebra, Table, WAction, WSuperAlgebra};
use crate::Q;

/// `E(A) = (A₀ ⊗ E₀) ⊕ (A₁ ⊗ E₁)` over `m` Grassmann generators.
#[derive(Debug, Clone)]
pub struct GrassmannEnvelope {
    base: WSuperAlgebra,
    m: usize,
    /// Carrier basis as (basis index of `A`, subset bitmask of generators).
    cells: Vec<(usize, usize)>,
    algebra: WSuperAlgebra,
}

impl GrassmannEnvelope {
    pub fn base(&self) -> &WSuperAlgebra {
        &self.base
    }

    pub fn generators(&self) -> usize {
        self.m
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn algebra(&self) -> &WSuperAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.cells.len()
    }
}

/// `a ⊗ g` carriers with the induced product and W-action, validated.
fn tensor_carrier(act: &WAction, m: usize, cells: &[(usize, usize)], name: String) -> Result<WAction> {
    let e = grassmann_algebra(m);
    let index = |i: usize, s: usize| cells.iter().position(|&c| c == (i, s));
    let n = cells.len();
    let lift = |v: &[Q], s: usize, sign: &Q| -> Result<Vec<Q>> {
        let mut out = vec![Q::zero(); n];
        for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let at = index(k, s).ok_or_else(|| GpiError::Axiom(format!("a{k} has the wrong parity for the carrier")))?;
            out[at] = c * sign;
        }
        Ok(out)
    };
    let mut mult: Table = vec![vec![vec![]; n]; n];
    for (x, &(i, s)) in cells.iter().enumerate() {
        for (y, &(j, t)) in cells.iter().enumerate() {
            mult[x][y] = if s & t != 0 {
                vec![Q::zero(); n]
            } else {
                lift(act.a().product(i, j), s | t, &e.product(s, t)[s | t])?
            };
        }
    }
    let one = Q::from_integer(1.into());
    let dw = act.dim_w();
    let left: Table = (0..dw)
        .map(|p| cells.iter().map(|&(i, s)| lift(&act.left_table()[p][i], s, &one)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let right: Table = cells
        .iter()
        .map(|&(i, s)| (0..dw).map(|p| lift(&act.right_table()[i][p], s, &one)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let basis = cells.iter().map(|&(i, s)| format!("{}*{}", act.a().basis()[i], e.basis()[s])).collect();
    WAction::new(name, act.w().clone(), FiniteAlgebra::new(basis, mult)?, left, right)
}

/// The Grassmann envelope on `m ≥ 1` generators, with every axiom checked.
pub fn envelope(a: &WSuperAlgebra, m: usize) -> Result<GrassmannEnvelope> {
    if m == 0 {
        return Err(GpiError::InvalidArgument("the envelope needs at least one generator".into()));
    }
    let act = a.action();
    let cells: Vec<(usize, usize)> = (0..act.dim_a())
        .flat_map(|i| (0..1usize << m).filter(move |s| s.count_ones() as u8 % 2 == a.parity()[i]).map(move |s| (i, s)))
        .collect();
    let carrier = tensor_carrier(act, m, &cells, format!("E({})", act.name()))?;
    let parity = cells.iter().map(|&(i, _)| a.parity()[i]).collect();
    let algebra = WSuperAlgebra::new(carrier, parity)?;
    Ok(GrassmannEnvelope { base: a.clone(), m, cells, algebra })
}

/// `A ⊗ E` graded by the Grassmann factor alone.
pub fn tensor_grassmann(act: &WAction, m: usize) -> Result<WSuperAlgebra> {
    let cells: Vec<(usize, usize)> = (0..act.dim_a()).flat_map(|i| (0..1usize << m).map(move |s| (i, s))).collect();
    let carrier = tensor_carrier(act, m, &cells, format!("{}*E", act.name()))?;
    let parity = cells.iter().map(|&(_, s)| (s.count_ones() % 2) as u8).collect();
    WSuperAlgebra::new(carrier, parity)
}

/// Whether `f` vanishes when even variables range over `A₀` and odd ones
/// over `A₁`.
pub fn graded_is_identity(f: &GradedGenPoly, a: &WSuperAlgebra) -> Result<bool> {
    let poly = f.poly();
    if !poly.is_multilinear() {
        return Err(GpiError::NotMultilinear(f.to_string()));
    }
    if poly.dim_w() != a.action().dim_w() {
        return Err(GpiError::AmbientMismatch(poly.dim_w(), a.action().dim_w()));
    }
    if poly.terms().keys().any(|m| m.degree() == 0) {
        return Err(GpiError::InvalidArgument("constant terms are not elements of A".into()));
    }
    let vars = poly.variables();
    let (even, odd) = (a.even_basis(), a.odd_basis());
    let domains: Vec<Vec<usize>> = vars.iter().map(|v| if v.is_odd() { odd.clone() } else { even.clone() }).collect();
    Ok(evaluations_satisfy(
        a.action(),
        poly,
        &vars,
        &domains,
        &|v| v.iter().all(|x| *x == 0),
        &|v| v.iter().all(Zero::is_zero),
    ))
}

/// Both sides of the tilde correspondence, `(f ∈ gid₂(E(A)), f̃ ∈ gid₂(A))`.
pub fn tilde_sides(f: &GradedGenPoly, a: &WSuperAlgebra, m: usize) -> Result<(bool, bool)> {
    if f.degree() > m {
        return Err(GpiError::InvalidArgument(format!(
            "degree {} exceeds the {m} Grassmann generators; the truncation would be unsound",
            f.degree()
        )));
    }
    let e = envelope(a, m)?;
    Ok((graded_is_identity(f, e.algebra())?, graded_is_identity(&tilde(f)?, a)?))
}

/// `f` is a graded identity of `E(A)` exactly when `f̃` is one of `A`.
pub fn tilde_correspondence_check(f: &GradedGenPoly, a: &WSuperAlgebra, m: usize) -> Result<bool> {
    let (lhs, rhs) = tilde_sides(f, a, m)?;
    Ok(lhs == rhs)
}

/// `UT₂` with `W = span{e11, e22}`, graded by `A₀ = span{e11, e22}` and
/// `A₁ = span{e12}`.
pub fn graded_ut2_d() -> Result<WSuperAlgebra> {
    use crate::walg_model::{builtin, Builtin};
    WSuperAlgebra::new(builtin(Builtin::Ut2D)?, vec![0, 1, 0])
}
