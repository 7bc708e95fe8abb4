use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::Q;

/// Exponent vector, one entry per variable.
pub type Exponent = Vec<u32>;

/// Sparse polynomial in `num_vars` commuting variables with exact rational
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPoly {
    num_vars: usize,
    terms: BTreeMap<Exponent, Q>,
}

impl ExactPoly {
    pub fn zero(num_vars: usize) -> Self {
        ExactPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::monomial(num_vars, vec![0; num_vars], Q::one())
    }

    pub fn constant(num_vars: usize, c: Q) -> Self {
        Self::monomial(num_vars, vec![0; num_vars], c)
    }

    pub fn monomial(num_vars: usize, exp: Exponent, coef: Q) -> Self {
        assert_eq!(exp.len(), num_vars, "exponent length must equal the variable count");
        let mut p = Self::zero(num_vars);
        p.add_term(exp, coef);
        p
    }

    /// `t_i` (0-based).
    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Self::monomial(num_vars, e, Q::one())
    }

    /// `t_1 + … + t_k`, i.e. `s_(1)`.
    pub fn power_sum_one(num_vars: usize) -> Self {
        (0..num_vars).fold(Self::zero(num_vars), |acc, i| acc.add(&Self::var(num_vars, i)))
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, exp: Exponent, coef: Q) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &ExactPoly) -> ExactPoly {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ExactPoly) -> ExactPoly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> ExactPoly {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        ExactPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &ExactPoly) -> ExactPoly {
        self.mul_truncated(other, None)
    }

    /// Product keeping only total degree `≤ max_degree` when given.
    pub fn mul_truncated(&self, other: &ExactPoly, max_degree: Option<u32>) -> ExactPoly {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = Self::zero(self.num_vars);
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in &other.terms {
                if let Some(n) = max_degree {
                    if d1 + e2.iter().sum::<u32>() > n {
                        continue;
                    }
                }
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> ExactPoly {
        (0..n).fold(Self::one(self.num_vars), |acc, _| acc.mul(self))
    }

    /// Degree-`d` homogeneous component.
    pub fn homogeneous_part(&self, d: u32) -> ExactPoly {
        ExactPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Invariant under every adjacent transposition of variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.num_vars.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(e, c)| {
                let mut s = e.clone();
                s.swap(i, i + 1);
                self.terms.get(&s) == Some(c)
            })
        })
    }

    /// Places this polynomial's variables at positions `offset..` of a ring
    /// with `total_vars` variables.
    pub fn embed(&self, offset: usize, total_vars: usize) -> ExactPoly {
        assert!(offset + self.num_vars <= total_vars);
        let mut out = Self::zero(total_vars);
        for (e, c) in &self.terms {
            let mut big = vec![0; total_vars];
            big[offset..offset + self.num_vars].copy_from_slice(e);
            out.add_term(big, c.clone());
        }
        out
    }

    /// Value with every variable set to one.
    pub fn eval_ones(&self) -> Q {
        self.terms.values().cloned().sum()
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { format!("t{}", i + 1) } else { format!("t{}^{}", i + 1, p) })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Power series in `num_vars` variables truncated above total degree
/// `max_degree`. Products discard everything beyond the truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    poly: ExactPoly,
    max_degree: u32,
}

impl TruncatedSeries {
    pub fn new(poly: ExactPoly, max_degree: u32) -> Self {
        let mut poly = poly;
        poly.terms.retain(|e, _| e.iter().sum::<u32>() <= max_degree);
        TruncatedSeries { poly, max_degree }
    }

    pub fn zero(num_vars: usize, max_degree: u32) -> Self {
        Self::new(ExactPoly::zero(num_vars), max_degree)
    }

    pub fn constant(num_vars: usize, max_degree: u32, c: Q) -> Self {
        Self::new(ExactPoly::constant(num_vars, c), max_degree)
    }

    pub fn poly(&self) -> &ExactPoly {
        &self.poly
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn num_vars(&self) -> usize {
        self.poly.num_vars()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Q {
        self.poly.coefficient(exp)
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.max_degree.min(other.max_degree);
        Self::new(self.poly.add(&other.poly), n)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.max_degree.min(other.max_degree);
        Self::new(self.poly.sub(&other.poly), n)
    }

    pub fn scale(&self, c: &Q) -> TruncatedSeries {
        Self::new(self.poly.scale(c), self.max_degree)
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.max_degree.min(other.max_degree);
        Self::new(self.poly.mul_truncated(&other.poly, Some(n)), n)
    }

    /// `1 / (1 - x)` for a series `x` without constant term.
    pub fn geometric(x: &TruncatedSeries) -> TruncatedSeries {
        assert!(
            x.coefficient(&vec![0; x.num_vars()]).is_zero(),
            "geometric series needs a vanishing constant term"
        );
        let one = Self::constant(x.num_vars(), x.max_degree, Q::one());
        let mut acc = one.clone();
        let mut power = one;
        for _ in 0..x.max_degree {
            power = power.mul(x);
            acc = acc.add(&power);
        }
        acc
    }

    /// `∏_i 1/(1 - t_i)`.
    pub fn cauchy_product(num_vars: usize, max_degree: u32) -> TruncatedSeries {
        (0..num_vars).fold(Self::constant(num_vars, max_degree, Q::one()), |acc, i| {
            let ti = Self::new(ExactPoly::var(num_vars, i), max_degree);
            acc.mul(&Self::geometric(&ti))
        })
    }

    pub fn homogeneous_part(&self, d: u32) -> ExactPoly {
        self.poly.homogeneous_part(d)
    }

    /// Lines `e1,…,ek: c`, ordered by total degree and then decreasing lex.
    pub fn to_text(&self) -> String {
        let mut entries: Vec<(&Exponent, &Q)> = self.poly.terms().iter().collect();
        entries.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            da.cmp(&db).then_with(|| b.0.cmp(a.0))
        });
        entries
            .into_iter()
            .map(|(e, c)| {
                let es: Vec<String> = e.iter().map(u32::to_string).collect();
                format!("{}: {c}\n", es.join(","))
            })
            .collect()
    }
}
