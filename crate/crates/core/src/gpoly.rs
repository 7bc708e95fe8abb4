//! Generalized polynomials: words `w₀ x_{j₁} w₁ ⋯ x_{jₙ} wₙ` with W-letters
//! between the variables.
//!
//! A W-letter is either a basis index of `W` or the unit `1_W`, kept as a
//! separate symbol so that polynomials such as the ordinary Capelli
//! polynomial have their natural number of terms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{GpiError, Result};
use crate::sn_rep::all_perms;
use crate::walg_model::FiniteAlgebra;
use crate::Q;

/// A letter from `W` sitting between two variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WSym {
    One,
    Basis(usize),
}

/// `a·b` in `W` as a combination of letters.
pub fn contract(a: WSym, b: WSym, w: &FiniteAlgebra) -> Vec<(WSym, Q)> {
    match (a, b) {
        (WSym::One, x) | (x, WSym::One) => vec![(x, Q::one())],
        (WSym::Basis(i), WSym::Basis(j)) => w
            .product(i, j)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (WSym::Basis(k), c.clone()))
            .collect(),
    }
}

/// A variable: a name letter (`x`, `y`, `z`) and a positive index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: char,
    pub index: u32,
}

impl Var {
    pub fn x(index: u32) -> Self {
        Var { name: 'x', index }
    }

    pub fn y(index: u32) -> Self {
        Var { name: 'y', index }
    }

    pub fn z(index: u32) -> Self {
        Var { name: 'z', index }
    }

    /// Odd variables are the `z`s.
    pub fn is_odd(&self) -> bool {
        self.name == 'z'
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name, self.index)
    }
}

/// `w[0] vars[0] w[1] ⋯ vars[n-1] w[n]`. Ordered by the variable word first,
/// then by the W-word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenMonomial {
    vars: Vec<Var>,
    w: Vec<WSym>,
}

impl GenMonomial {
    pub fn new(w: Vec<WSym>, vars: Vec<Var>) -> Result<Self> {
        if w.len() != vars.len() + 1 {
            return Err(GpiError::InvalidArgument(format!(
                "a monomial with {} variables needs {} W-letters, got {}",
                vars.len(),
                vars.len() + 1,
                w.len()
            )));
        }
        Ok(GenMonomial { vars, w })
    }

    /// `1_W x_1 1_W ⋯ x_n 1_W` for the given variable word.
    pub fn plain(vars: Vec<Var>) -> Self {
        let w = vec![WSym::One; vars.len() + 1];
        GenMonomial { vars, w }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn w(&self) -> &[WSym] {
        &self.w
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }

    pub fn is_multilinear(&self) -> bool {
        let set: BTreeSet<&Var> = self.vars.iter().collect();
        set.len() == self.vars.len()
    }

    /// Occurrence count of every variable.
    pub fn multidegree(&self) -> BTreeMap<Var, u32> {
        let mut m = BTreeMap::new();
        for v in &self.vars {
            *m.entry(*v).or_insert(0) += 1;
        }
        m
    }

    fn max_w_index(&self) -> Option<usize> {
        self.w
            .iter()
            .filter_map(|s| match s {
                WSym::Basis(i) => Some(*i),
                WSym::One => None,
            })
            .max()
    }
}

impl fmt::Display for GenMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, s) in self.w.iter().enumerate() {
            if let WSym::Basis(i) = s {
                parts.push(format!("w[{i}]"));
            }
            if let Some(v) = self.vars.get(k) {
                parts.push(v.to_string());
            }
        }
        if parts.is_empty() {
            parts.push("1_W".into());
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// A generalized polynomial over a `dim_w`-dimensional `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenPoly {
    dim_w: usize,
    terms: BTreeMap<GenMonomial, Q>,
}

impl GenPoly {
    pub fn zero(dim_w: usize) -> Self {
        GenPoly { dim_w, terms: BTreeMap::new() }
    }

    pub fn monomial(dim_w: usize, m: GenMonomial, c: Q) -> Result<Self> {
        let mut p = Self::zero(dim_w);
        p.add_term(m, c)?;
        Ok(p)
    }

    pub fn dim_w(&self) -> usize {
        self.dim_w
    }

    pub fn terms(&self) -> &BTreeMap<GenMonomial, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: GenMonomial, c: Q) -> Result<()> {
        if let Some(i) = m.max_w_index() {
            if i >= self.dim_w {
                return Err(GpiError::InvalidArgument(format!("w[{i}] outside a {}-dimensional W", self.dim_w)));
            }
        }
        if c.is_zero() {
            return Ok(());
        }
        let e = self.terms.entry(m).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn add(&self, other: &GenPoly) -> Result<GenPoly> {
        if self.dim_w != other.dim_w {
            return Err(GpiError::AmbientMismatch(self.dim_w, other.dim_w));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> GenPoly {
        let mut out = Self::zero(self.dim_w);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        }
        out
    }

    /// Every variable appearing in some monomial, sorted.
    pub fn variables(&self) -> Vec<Var> {
        let set: BTreeSet<Var> = self.terms.keys().flat_map(|m| m.vars.iter().copied()).collect();
        set.into_iter().collect()
    }

    /// Multilinear in its variables: each monomial uses every variable of
    /// the polynomial exactly once.
    pub fn is_multilinear(&self) -> bool {
        let vars = self.variables();
        self.terms.keys().all(|m| {
            let mut vs = m.vars.clone();
            vs.sort();
            vs == vars
        })
    }

    /// Splits into multihomogeneous components keyed by multidegree.
    pub fn multihomogeneous_components(&self) -> BTreeMap<BTreeMap<Var, u32>, GenPoly> {
        let mut out: BTreeMap<BTreeMap<Var, u32>, GenPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let comp = out.entry(m.multidegree()).or_insert_with(|| GenPoly::zero(self.dim_w));
            comp.terms.insert(m.clone(), c.clone());
        }
        out
    }

    /// Product, contracting the W-letters that meet.
    pub fn multiply(&self, other: &GenPoly, w: &FiniteAlgebra) -> Result<GenPoly> {
        if self.dim_w != other.dim_w {
            return Err(GpiError::AmbientMismatch(self.dim_w, other.dim_w));
        }
        if w.dim() != self.dim_w {
            return Err(GpiError::AmbientMismatch(self.dim_w, w.dim()));
        }
        let mut out = Self::zero(self.dim_w);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let (last, head) = (*m1.w.last().unwrap(), m2.w[0]);
                for (sym, c) in contract(last, head, w) {
                    let mut letters = m1.w[..m1.w.len() - 1].to_vec();
                    letters.push(sym);
                    letters.extend_from_slice(&m2.w[1..]);
                    let mut vars = m1.vars.clone();
                    vars.extend_from_slice(&m2.vars);
                    out.add_term(GenMonomial { vars, w: letters }, c1 * c2 * c)?;
                }
            }
        }
        Ok(out)
    }

    /// Replaces the variable `v` by the W-letter `sym`, contracting it with
    /// both neighbours.
    pub fn substitute_w(&self, v: Var, sym: WSym, w: &FiniteAlgebra) -> Result<GenPoly> {
        let mut out = Self::zero(self.dim_w);
        for (m, c) in &self.terms {
            let Some(pos) = m.vars.iter().position(|&u| u == v) else {
                out.add_term(m.clone(), c.clone())?;
                continue;
            };
            if m.vars[pos + 1..].contains(&v) {
                return Err(GpiError::NotMultilinear(format!("{v} repeats in {m}")));
            }
            for (left, c1) in contract(m.w[pos], sym, w) {
                for (merged, c2) in contract(left, m.w[pos + 1], w) {
                    let mut letters = m.w[..pos].to_vec();
                    letters.push(merged);
                    letters.extend_from_slice(&m.w[pos + 2..]);
                    let mut vars = m.vars.clone();
                    vars.remove(pos);
                    out.add_term(GenMonomial { vars, w: letters }, c * &c1 * c2)?;
                }
            }
        }
        Ok(out)
    }

    /// Renames variables through `f`.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Result<GenPoly> {
        let mut out = Self::zero(self.dim_w);
        for (m, c) in &self.terms {
            let vars = m.vars.iter().map(|&v| f(v)).collect();
            out.add_term(GenMonomial { vars, w: m.w.clone() }, c.clone())?;
        }
        Ok(out)
    }

    /// Parses `"3/2 * w[0] x1 w[2] x2 w[0] - x2 x1"`. Adjacent variables get
    /// `1_W` between them; `1_W` may also be written explicitly.
    pub fn parse(text: &str, dim_w: usize) -> Result<GenPoly> {
        parse_poly(text, dim_w)
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a} * {m}")?;
            }
        }
        Ok(())
    }
}

fn parse_err(msg: impl Into<String>) -> GpiError {
    GpiError::Parse(msg.into())
}

fn parse_poly(text: &str, dim_w: usize) -> Result<GenPoly> {
    let mut out = GenPoly::zero(dim_w);
    // Split on top-level + and - while keeping the sign.
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut signed = false;
    for ch in text.chars() {
        if (ch == '+' || ch == '-') && !current.trim().is_empty() {
            terms.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
            signed = true;
        } else if ch == '+' || ch == '-' {
            if ch == '-' {
                negative = !negative;
            }
            signed = true;
        } else {
            current.push(ch);
        }
    }
    if !current.trim().is_empty() {
        terms.push((negative, current));
    } else if signed {
        return Err(parse_err("sign with no term after it"));
    }
    if terms.is_empty() {
        return Err(parse_err("empty polynomial"));
    }
    for (neg, body) in terms {
        let (coef, word) = match body.split_once('*') {
            Some((c, rest)) => {
                let c: Q = c.trim().parse().map_err(|_| parse_err(format!("bad coefficient {:?}", c.trim())))?;
                (c, rest.to_string())
            }
            None => (Q::one(), body),
        };
        let coef = if neg { -coef } else { coef };
        let mut letters = Vec::new();
        let mut vars = Vec::new();
        let mut pending: Option<WSym> = None;
        for tok in word.split_whitespace() {
            if tok == "1_W" || tok.starts_with("w[") {
                let sym = if tok == "1_W" {
                    WSym::One
                } else {
                    let idx = tok
                        .strip_prefix("w[")
                        .and_then(|r| r.strip_suffix(']'))
                        .and_then(|i| i.parse::<usize>().ok())
                        .ok_or_else(|| parse_err(format!("bad W-letter {tok:?}")))?;
                    if idx >= dim_w {
                        return Err(parse_err(format!("w[{idx}] outside a {dim_w}-dimensional W")));
                    }
                    WSym::Basis(idx)
                };
                if pending.replace(sym).is_some() {
                    return Err(parse_err(format!("two W-letters in a row in {:?}", word.trim())));
                }
            } else {
                let mut chars = tok.chars();
                let name = chars.next().filter(|c| matches!(c, 'x' | 'y' | 'z'));
                let index = chars.as_str().parse::<u32>().ok().filter(|&i| i > 0);
                let (Some(name), Some(index)) = (name, index) else {
                    return Err(parse_err(format!("bad token {tok:?}")));
                };
                letters.push(pending.take().unwrap_or(WSym::One));
                vars.push(Var { name, index });
            }
        }
        letters.push(pending.take().unwrap_or(WSym::One));
        if vars.is_empty() {
            return Err(parse_err(format!("term {:?} has no variables", word.trim())));
        }
        out.add_term(GenMonomial::new(letters, vars)?, coef)?;
    }
    Ok(out)
}

/// All `d^{n+1} n!` monomials of `gP_n` over `x1..xn`, ordered by variable
/// word and then W-word, both lexicographically.
pub fn multilinear_basis(n: usize, d: usize) -> Vec<GenMonomial> {
    let words = w_words(n + 1, d);
    all_perms(n)
        .into_iter()
        .flat_map(|p| {
            let vars: Vec<Var> = p.0.iter().map(|&i| Var::x(i as u32 + 1)).collect();
            words.iter().map(move |w| GenMonomial { vars: vars.clone(), w: w.clone() })
        })
        .collect()
}

/// All words of `len` basis letters over a `d`-dimensional `W`, in lex
/// order.
pub fn w_words(len: usize, d: usize) -> Vec<Vec<WSym>> {
    let mut out: Vec<Vec<WSym>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..d).map(move |i| {
                    let mut next = w.clone();
                    next.push(WSym::Basis(i));
                    next
                })
            })
            .collect();
    }
    out
}

/// Full linearization of a multihomogeneous polynomial. Variable `v_i` of
/// degree `α_i` (variables in sorted order) is replaced, occurrence by
/// occurrence, by every bijection onto its own block of fresh variables
/// `x_{o_i+1}, …, x_{o_i+α_i}`.
pub fn multilinearize(f: &GenPoly) -> Result<GenPoly> {
    let comps = f.multihomogeneous_components();
    if comps.len() > 1 {
        return Err(GpiError::NotMultihomogeneous);
    }
    let Some(alpha) = comps.keys().next() else {
        return Ok(f.clone());
    };
    let mut offset = BTreeMap::new();
    let mut next = 0u32;
    for (v, d) in alpha {
        offset.insert(*v, next);
        next += d;
    }
    let blocks: Vec<(Var, Vec<crate::sn_rep::Perm>)> =
        alpha.iter().map(|(v, &d)| (*v, all_perms(d as usize))).collect();
    let mut out = GenPoly::zero(f.dim_w);
    for (m, c) in &f.terms {
        // Enumerate one bijection per block.
        let mut choice = vec![0usize; blocks.len()];
        loop {
            let mut seen: BTreeMap<Var, usize> = BTreeMap::new();
            let vars: Vec<Var> = m
                .vars
                .iter()
                .map(|v| {
                    let b = blocks.iter().position(|(u, _)| u == v).unwrap();
                    let k = seen.entry(*v).or_insert(0);
                    let image = blocks[b].1[choice[b]].apply(*k);
                    *k += 1;
                    Var::x(offset[v] + image as u32 + 1)
                })
                .collect();
            out.add_term(GenMonomial { vars, w: m.w.clone() }, c.clone())?;
            let mut b = 0;
            while b < blocks.len() {
                choice[b] += 1;
                if choice[b] < blocks[b].1.len() {
                    break;
                }
                choice[b] = 0;
                b += 1;
            }
            if b == blocks.len() {
                break;
            }
        }
    }
    Ok(out)
}

/// `Σ_σ sgn(σ) y₁ x_{σ(1)} y₂ ⋯ x_{σ(m)} y_{m+1}` with every W-letter `1_W`.
pub fn capelli(m: usize, dim_w: usize) -> GenPoly {
    let mut out = GenPoly::zero(dim_w);
    for p in all_perms(m) {
        let mut vars = vec![Var::y(1)];
        for (k, &i) in p.0.iter().enumerate() {
            vars.push(Var::x(i as u32 + 1));
            vars.push(Var::y(k as u32 + 2));
        }
        out.add_term(GenMonomial::plain(vars), Q::from_integer(p.sign().into())).expect("plain letters");
    }
    out
}

/// The generalized Capelli set of rank `m`: each `yᵢ` is either kept or
/// replaced by a basis element of `W`. By linearity in each `yᵢ`, basis
/// substitutions cover every substitution from `W`. Patterns are listed
/// with `y₁` varying slowest; choice `0` keeps the variable.
pub fn generalized_capelli_set(m: usize, w: &FiniteAlgebra) -> Vec<GenPoly> {
    let d = w.dim();
    let cap = capelli(m, d);
    let mut out = Vec::with_capacity((d + 1).pow(m as u32 + 1));
    let mut pattern = vec![0usize; m + 1];
    loop {
        let mut f = cap.clone();
        for (i, &choice) in pattern.iter().enumerate() {
            if choice > 0 {
                f = f.substitute_w(Var::y(i as u32 + 1), WSym::Basis(choice - 1), w).expect("Capelli is multilinear");
            }
        }
        out.push(f);
        let mut k = m + 1;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            pattern[k] += 1;
            if pattern[k] <= d {
                break;
            }
            pattern[k] = 0;
        }
    }
}

/// A generalized polynomial in even variables (`x`, `y`) and odd variables
/// (`z`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedGenPoly {
    poly: GenPoly,
}

impl GradedGenPoly {
    pub fn new(poly: GenPoly) -> Self {
        GradedGenPoly { poly }
    }

    pub fn parse(text: &str, dim_w: usize) -> Result<Self> {
        Ok(GradedGenPoly { poly: GenPoly::parse(text, dim_w)? })
    }

    pub fn poly(&self) -> &GenPoly {
        &self.poly
    }

    pub fn into_poly(self) -> GenPoly {
        self.poly
    }

    pub fn even_vars(&self) -> Vec<Var> {
        self.poly.variables().into_iter().filter(|v| !v.is_odd()).collect()
    }

    pub fn odd_vars(&self) -> Vec<Var> {
        self.poly.variables().into_iter().filter(Var::is_odd).collect()
    }

    pub fn degree(&self) -> usize {
        self.poly.variables().len()
    }
}

impl fmt::Display for GradedGenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

fn sign_of_order(seq: &[u32]) -> i64 {
    let inversions: usize = (0..seq.len()).map(|i| (i + 1..seq.len()).filter(|&j| seq[i] > seq[j]).count()).sum();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Multiplies each monomial by the sign of the order in which its odd
/// variables appear.
pub fn tilde(f: &GradedGenPoly) -> Result<GradedGenPoly> {
    if !f.poly.is_multilinear() {
        return Err(GpiError::NotMultilinear(f.to_string()));
    }
    let mut out = GenPoly::zero(f.poly.dim_w);
    for (m, c) in &f.poly.terms {
        let odd: Vec<u32> = m.vars.iter().filter(|v| v.is_odd()).map(|v| v.index).collect();
        out.add_term(m.clone(), c * Q::from_integer(sign_of_order(&odd).into()))?;
    }
    Ok(GradedGenPoly { poly: out })
}

/// Every multilinear monomial in `y1..yl`, `z1..zm` with W-letters from a
/// `d`-dimensional `W`; a basis of `gP_{l,m}`.
pub fn graded_multilinear_basis(l: usize, m: usize, d: usize) -> Vec<GenMonomial> {
    let vars: Vec<Var> = (1..=l as u32).map(Var::y).chain((1..=m as u32).map(Var::z)).collect();
    let words = w_words(l + m + 1, d);
    all_perms(l + m)
        .into_iter()
        .flat_map(|p| {
            let word: Vec<Var> = p.0.iter().map(|&i| vars[i]).collect();
            words.iter().map(move |w| GenMonomial { vars: word.clone(), w: w.clone() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walg_model::{builtin, Builtin};
    use proptest::prelude::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn ut2() -> FiniteAlgebra {
        builtin(Builtin::Ut2Self).unwrap().w().clone()
    }

    #[test]
    fn multiply_examples() {
        let w = ut2();
        let one = |v| GenPoly::monomial(3, GenMonomial::plain(vec![v]), q(1)).unwrap();
        let prod = one(Var::x(1)).multiply(&one(Var::x(2)), &w).unwrap();
        assert_eq!(prod, GenPoly::monomial(3, GenMonomial::plain(vec![Var::x(1), Var::x(2)]), q(1)).unwrap());
        // Basis (e11, e12, e22) = (0, 1, 2).
        let f = GenPoly::parse("w[0] x1 w[1]", 3).unwrap();
        let g = GenPoly::parse("w[2] x2 w[2]", 3).unwrap();
        assert_eq!(f.multiply(&g, &w).unwrap(), GenPoly::parse("w[0] x1 w[1] x2 w[2]", 3).unwrap());
        let h = GenPoly::parse("w[1] x1 w[1]", 3).unwrap();
        let k = GenPoly::parse("w[1] x2 w[1]", 3).unwrap();
        assert!(h.multiply(&k, &w).unwrap().is_empty());
        let other = GenPoly::parse("x1", 2).unwrap();
        assert_eq!(f.multiply(&other, &w), Err(GpiError::AmbientMismatch(3, 2)));
    }

    #[test]
    fn basis_counts() {
        assert_eq!(multilinear_basis(1, 3).len(), 9);
        assert_eq!(multilinear_basis(2, 2).len(), 16);
        assert_eq!(multilinear_basis(3, 3).len(), 486);
        let b = multilinear_basis(2, 2);
        assert!(b.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn permutations_fix_only_identity_words() {
        // σ∗m is m with x_i renamed x_{σ(i)}: fixed iff σ fixes the word.
        for n in 1..=3 {
            let basis = multilinear_basis(n, 2);
            for p in all_perms(n) {
                let fixed = basis
                    .iter()
                    .filter(|m| {
                        let moved: Vec<Var> = m.vars.iter().map(|v| Var::x(p.apply(v.index as usize - 1) as u32 + 1)).collect();
                        moved == m.vars
                    })
                    .count();
                let expected = if p == crate::sn_rep::Perm::identity(n) { basis.len() } else { 0 };
                assert_eq!(fixed, expected);
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let f = GenPoly::parse("3/2 * w[0] x1 w[2] x2 w[0] - x2 x1", 3).unwrap();
        assert_eq!(f.len(), 2);
        let again = GenPoly::parse(&f.to_string(), 3).unwrap();
        assert_eq!(f, again);
        assert!(GenPoly::parse("w[3] x1", 3).is_err());
        assert!(GenPoly::parse("w[0] w[1] x1", 3).is_err());
        assert!(GenPoly::parse("2", 3).is_err());
        assert!(GenPoly::parse("x0", 3).is_err());
        assert!(GenPoly::parse("x1 +", 1).is_err());
        assert!(GenPoly::parse("x1 - x2 -", 1).is_err());
        assert!(GenPoly::parse("-", 1).is_err());
        assert_eq!(GenPoly::parse("x1 - x1", 1).unwrap(), GenPoly::zero(1));
        let g = GenPoly::parse("-x1 + -x2", 1).unwrap();
        assert!(g.terms().values().all(|c| *c == q(-1)));
    }

    #[test]
    fn linearization() {
        let sq = GenPoly::parse("x1 x1", 1).unwrap();
        let lin = multilinearize(&sq).unwrap();
        assert_eq!(lin, GenPoly::parse("x1 x2 + x2 x1", 1).unwrap());
        let ml = GenPoly::parse("w[0] x2 x3 - x3 x2", 1).unwrap();
        assert_eq!(multilinearize(&ml).unwrap(), GenPoly::parse("w[0] x1 x2 - x2 x1", 1).unwrap());
        let mixed = GenPoly::parse("x1 x1 + x2", 1).unwrap();
        assert_eq!(multilinearize(&mixed), Err(GpiError::NotMultihomogeneous));
        let cube = GenPoly::parse("x1 x2 x1", 1).unwrap();
        let lin = multilinearize(&cube).unwrap();
        assert_eq!(lin, GenPoly::parse("x1 x3 x2 + x2 x3 x1", 1).unwrap());
    }

    #[test]
    fn capelli_polynomials() {
        let c1 = capelli(1, 1);
        assert_eq!(c1, GenPoly::parse("y1 x1 y2", 1).unwrap());
        assert_eq!(capelli(3, 1).len(), 6);
        // y's set to 1_W gives the commutator.
        let f = FiniteAlgebra::scalars();
        let mut c2 = capelli(2, 1);
        for i in 1..=3 {
            c2 = c2.substitute_w(Var::y(i), WSym::One, &f).unwrap();
        }
        assert_eq!(c2, GenPoly::parse("x1 x2 - x2 x1", 1).unwrap());
    }

    #[test]
    fn capelli_sets() {
        let f = FiniteAlgebra::scalars();
        let set = generalized_capelli_set(1, &f);
        let expected = ["y1 x1 y2", "y1 x1 w[0]", "w[0] x1 y2", "w[0] x1 w[0]"];
        assert_eq!(set.len(), 4);
        for (p, e) in set.iter().zip(expected) {
            assert_eq!(*p, GenPoly::parse(e, 1).unwrap());
        }
        let w = ut2();
        let set = generalized_capelli_set(2, &w);
        assert_eq!(set.len(), 4usize.pow(3));
        let all_substituted = set.iter().filter(|p| p.variables().iter().all(|v| v.name == 'x')).count();
        assert_eq!(all_substituted, 27);
    }

    #[test]
    fn tilde_examples() {
        let even = GradedGenPoly::parse("y1 y2 - 2 * y2 y1", 1).unwrap();
        assert_eq!(tilde(&even).unwrap(), even);
        let a = GradedGenPoly::parse("z1 z2", 1).unwrap();
        assert_eq!(tilde(&a).unwrap(), a);
        let b = GradedGenPoly::parse("z2 z1", 1).unwrap();
        assert_eq!(tilde(&b).unwrap(), GradedGenPoly::parse("-z2 z1", 1).unwrap());
        let not_ml = GradedGenPoly::parse("z1 z1", 1).unwrap();
        assert!(tilde(&not_ml).is_err());
    }

    #[test]
    fn tilde_involution_exhaustive() {
        for l in 0..=4usize {
            for m in 0..=(4 - l) {
                if l + m == 0 {
                    continue;
                }
                let basis = graded_multilinear_basis(l, m, 1);
                let mut f = GenPoly::zero(1);
                for (i, mono) in basis.into_iter().enumerate() {
                    f.add_term(mono, q(i as i64 + 1)).unwrap();
                }
                let g = GradedGenPoly::new(f);
                assert_eq!(tilde(&tilde(&g).unwrap()).unwrap(), g, "l={l} m={m}");
            }
        }
    }

    fn arb_monomial(d: usize, n: usize) -> impl Strategy<Value = GenMonomial> {
        let letter = prop_oneof![Just(WSym::One), (0..d).prop_map(WSym::Basis)];
        (prop::collection::vec(letter, n + 1), prop::collection::vec(1u32..=3, n)).prop_map(|(w, idx)| {
            GenMonomial::new(w, idx.into_iter().map(Var::x).collect()).unwrap()
        })
    }

    fn arb_poly(d: usize) -> impl Strategy<Value = GenPoly> {
        prop::collection::vec((0usize..=2).prop_flat_map(move |n| arb_monomial(d, n)).prop_flat_map(|m| (Just(m), -3i64..=3)), 1..4)
            .prop_map(move |terms| {
                let mut p = GenPoly::zero(d);
                for (m, c) in terms {
                    p.add_term(m, Q::from_integer(c.into())).unwrap();
                }
                p
            })
    }

    proptest! {
        #[test]
        fn multiplication_is_associative_and_unital(
            (f, g, h) in (1usize..=3).prop_flat_map(|d| (arb_poly(d), arb_poly(d), arb_poly(d))),
        ) {
            let d = f.dim_w();
            let w = match d {
                1 => FiniteAlgebra::scalars(),
                2 => builtin(Builtin::Ut2D).unwrap().w().clone(),
                _ => ut2(),
            };
            let left = f.multiply(&g, &w).unwrap().multiply(&h, &w).unwrap();
            let right = f.multiply(&g.multiply(&h, &w).unwrap(), &w).unwrap();
            prop_assert_eq!(left, right);
            let unit = GenPoly::monomial(d, GenMonomial::new(vec![WSym::One], vec![]).unwrap(), Q::one()).unwrap();
            prop_assert_eq!(unit.multiply(&f, &w).unwrap(), f.clone());
            prop_assert_eq!(f.multiply(&unit, &w).unwrap(), f);
        }

        #[test]
        fn tilde_is_an_involution(coeffs in prop::collection::vec(-5i64..=5, 6)) {
            // gP_{1,2} over a 1-dimensional W.
            let basis = graded_multilinear_basis(1, 2, 1);
            let mut f = GenPoly::zero(1);
            for (m, c) in basis.into_iter().zip(coeffs) {
                f.add_term(m, Q::from_integer(c.into())).unwrap();
            }
            let g = GradedGenPoly::new(f);
            prop_assert_eq!(tilde(&tilde(&g).unwrap()).unwrap(), g);
        }
    }
}
