use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::poly::{ExactPoly, Exponent};
use crate::error::{GpiError, Result};
use crate::partition::Partition;
use crate::Q;

/// `Σ c_λ s_λ` in `num_vars` variables. Only partitions with `h(λ) ≤ k`
/// appear; zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurExpansion {
    num_vars: usize,
    coeffs: BTreeMap<Partition, Q>,
}

impl SchurExpansion {
    pub fn new(num_vars: usize) -> Self {
        SchurExpansion { num_vars, coeffs: BTreeMap::new() }
    }

    pub fn single(num_vars: usize, lambda: Partition) -> Self {
        let mut s = Self::new(num_vars);
        s.add(lambda, Q::one());
        s
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Adds `c·s_λ`; terms with `h(λ) > k` vanish identically and are
    /// dropped.
    pub fn add(&mut self, lambda: Partition, c: Q) {
        if c.is_zero() || lambda.height() > self.num_vars {
            return;
        }
        let e = self.coeffs.entry(lambda.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&lambda);
        }
    }

    pub fn get(&self, lambda: &Partition) -> Q {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Q::zero)
    }

    /// Terms in decreasing lexicographic order of the partition.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Q)> {
        self.coeffs.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn restrict_degree(&self, n: u32) -> SchurExpansion {
        SchurExpansion {
            num_vars: self.num_vars,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(l, _)| l.size() == n)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms with `|λ| ≤ n`.
    pub fn restrict_up_to(&self, n: u32) -> SchurExpansion {
        SchurExpansion {
            num_vars: self.num_vars,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(l, _)| l.size() <= n)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn all_nonneg_integers(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer() && !c.is_negative())
    }

    /// `Σ c_λ s_λ(t_1,…,t_k)` as an explicit polynomial.
    pub fn to_poly(&self) -> ExactPoly {
        self.coeffs.iter().fold(ExactPoly::zero(self.num_vars), |acc, (l, c)| {
            acc.add(&schur_poly(l, self.num_vars).scale(c))
        })
    }
}

/// One `λ-string: coefficient` line per term, decreasing lex order.
impl fmt::Display for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, c) in self.iter() {
            writeln!(f, "{l}: {c}")?;
        }
        Ok(())
    }
}

impl SchurExpansion {
    /// Parses the line format written by `Display`.
    pub fn parse(num_vars: usize, text: &str) -> Result<Self> {
        let mut out = Self::new(num_vars);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (l, c) = line
                .split_once(':')
                .ok_or_else(|| GpiError::Parse(format!("expected `partition: coefficient`, got {line:?}")))?;
            let lambda = Partition::from_str(l)?;
            let c = Q::from_str(c.trim()).map_err(|_| GpiError::Parse(format!("bad rational {c:?}")))?;
            out.add(lambda, c);
        }
        Ok(out)
    }
}

/// `s_λ(t_1,…,t_k)` as the sum of content monomials over semistandard
/// tableaux with entries `≤ k`.
pub fn schur_poly(lambda: &Partition, k: usize) -> ExactPoly {
    let mut out = ExactPoly::zero(k);
    if lambda.height() > k {
        return out;
    }
    for_each_ssyt(lambda, &Partition::empty(), k, &mut |content| {
        out.add_term(content.to_vec(), Q::one());
    });
    out
}

/// Visits the content vector of every semistandard filling of the skew
/// shape `outer / inner` with entries `1..=k`.
pub(crate) fn for_each_ssyt(outer: &Partition, inner: &Partition, k: usize, visit: &mut dyn FnMut(&[u32])) {
    let cells: Vec<(usize, usize)> = outer
        .cells()
        .into_iter()
        .filter(|&(r, c)| c as u32 >= inner.part(r))
        .collect();
    let mut grid: Vec<Vec<u32>> = outer.parts().iter().map(|&l| vec![0; l as usize]).collect();
    let mut content = vec![0u32; k];
    fn rec(
        i: usize,
        cells: &[(usize, usize)],
        inner: &Partition,
        k: usize,
        grid: &mut Vec<Vec<u32>>,
        content: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if i == cells.len() {
            visit(content);
            return;
        }
        let (r, c) = cells[i];
        let mut lo = 1;
        if c > 0 && c as u32 > inner.part(r) {
            lo = lo.max(grid[r][c - 1]);
        }
        if r > 0 && c as u32 >= inner.part(r - 1) {
            lo = lo.max(grid[r - 1][c] + 1);
        }
        for v in lo..=k as u32 {
            grid[r][c] = v;
            content[v as usize - 1] += 1;
            rec(i + 1, cells, inner, k, grid, content, visit);
            content[v as usize - 1] -= 1;
        }
        grid[r][c] = 0;
    }
    rec(0, &cells, inner, k, &mut grid, &mut content, visit);
}

/// Complete homogeneous symmetric polynomial `h_m` in `k` variables.
pub fn complete_homogeneous(m: i64, k: usize) -> ExactPoly {
    if m < 0 {
        return ExactPoly::zero(k);
    }
    let mut out = ExactPoly::zero(k);
    fn rec(var: usize, rest: u32, cur: &mut Exponent, out: &mut ExactPoly) {
        if var + 1 == cur.len() {
            cur[var] = rest;
            out.add_term(cur.clone(), Q::one());
            cur[var] = 0;
            return;
        }
        for e in 0..=rest {
            cur[var] = e;
            rec(var + 1, rest - e, cur, out);
        }
        cur[var] = 0;
    }
    rec(0, m as u32, &mut vec![0; k], &mut out);
    out
}

/// `s_λ` by the Jacobi–Trudi determinant `det(h_{λ_i - i + j})`, expanded
/// over permutations.
pub fn schur_poly_jt(lambda: &Partition, k: usize) -> ExactPoly {
    let l = lambda.height();
    if l == 0 {
        return ExactPoly::one(k);
    }
    let entry = |i: usize, j: usize| -> ExactPoly {
        complete_homogeneous(lambda.part(i) as i64 - i as i64 + j as i64, k)
    };
    let matrix: Vec<Vec<ExactPoly>> = (0..l).map(|i| (0..l).map(|j| entry(i, j)).collect()).collect();
    let mut total = ExactPoly::zero(k);
    let mut perm: Vec<usize> = (0..l).collect();
    permutations_with_sign(&mut perm, 0, 1, &mut |p, sign| {
        let mut term = ExactPoly::constant(k, Q::from_integer(sign.into()));
        for (i, &j) in p.iter().enumerate() {
            if matrix[i][j].is_zero() {
                return;
            }
            term = term.mul(&matrix[i][j]);
        }
        total = total.add(&term);
    });
    total
}

fn permutations_with_sign(p: &mut Vec<usize>, start: usize, sign: i64, visit: &mut dyn FnMut(&[usize], i64)) {
    if start == p.len() {
        visit(p, sign);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permutations_with_sign(p, start + 1, if i == start { sign } else { -sign }, visit);
        p.swap(start, i);
    }
}

/// Schur expansion of a symmetric polynomial by leading-monomial
/// elimination, one homogeneous degree at a time.
pub fn schur_expand(p: &ExactPoly) -> Result<SchurExpansion> {
    if !p.is_symmetric() {
        return Err(GpiError::NotSymmetric);
    }
    let k = p.num_vars();
    let mut out = SchurExpansion::new(k);
    let Some(top) = p.max_total_degree() else {
        return Ok(out);
    };
    for d in 0..=top {
        let mut rest = p.homogeneous_part(d);
        let mut last: Option<Exponent> = None;
        while let Some((lead, c)) = rest.terms().iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            // The lex-largest exponent of a symmetric polynomial is sorted,
            // and each subtraction strictly lowers it.
            if let Some(prev) = &last {
                if &lead >= prev {
                    return Err(GpiError::Verification(format!(
                        "Schur elimination made no progress at exponent {lead:?}"
                    )));
                }
            }
            let lambda = Partition::new(lead.clone()).map_err(|_| GpiError::NotSymmetric)?;
            rest = rest.sub(&schur_poly(&lambda, k).scale(&c));
            out.add(lambda, c);
            last = Some(lead);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_partitions;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn mono(k: usize, e: &[u32]) -> ExactPoly {
        ExactPoly::monomial(k, e.to_vec(), Q::one())
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_poly(&p(&[1]), 2), ExactPoly::power_sum_one(2));
        assert_eq!(schur_poly(&p(&[1, 1]), 2), mono(2, &[1, 1]));
        let s2 = mono(2, &[2, 0]).add(&mono(2, &[1, 1])).add(&mono(2, &[0, 2]));
        assert_eq!(schur_poly(&p(&[2]), 2), s2);
        assert!(schur_poly(&p(&[1, 1, 1]), 2).is_zero());
    }

    #[test]
    fn jacobi_trudi_examples() {
        let expected = mono(2, &[2, 1]).add(&mono(2, &[1, 2]));
        assert_eq!(schur_poly_jt(&p(&[2, 1]), 2), expected);
        assert_eq!(schur_poly_jt(&p(&[1]), 3), ExactPoly::power_sum_one(3));
    }

    #[test]
    fn tableaux_and_jacobi_trudi_agree() {
        for n in 0..=6 {
            for lambda in enumerate_partitions(n, None) {
                for k in 1..=4 {
                    assert_eq!(schur_poly(&lambda, k), schur_poly_jt(&lambda, k), "{lambda} k={k}");
                }
            }
        }
    }

    #[test]
    fn expand_examples() {
        let e = schur_expand(&mono(2, &[1, 1])).unwrap();
        assert_eq!(e, SchurExpansion::single(2, p(&[1, 1])));
        let s1 = ExactPoly::power_sum_one(2);
        let e = schur_expand(&s1.mul(&s1)).unwrap();
        assert_eq!(e.get(&p(&[2])), q(1));
        assert_eq!(e.get(&p(&[1, 1])), q(1));
        assert_eq!(e.len(), 2);
        assert_eq!(schur_expand(&ExactPoly::var(2, 0)), Err(GpiError::NotSymmetric));
    }

    #[test]
    fn expand_round_trip() {
        for n in 0..=6 {
            for lambda in enumerate_partitions(n, None) {
                for k in 1..=4 {
                    let e = schur_expand(&schur_poly(&lambda, k)).unwrap();
                    if lambda.height() <= k {
                        assert_eq!(e, SchurExpansion::single(k, lambda.clone()));
                    } else {
                        assert!(e.is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn expansion_of_combinations_is_identity() {
        // Σ c_λ s_λ with varied coefficients over all λ, h(λ) ≤ 3, |λ| ≤ 5.
        let k = 3;
        let mut e = SchurExpansion::new(k);
        let mut c = 1i64;
        for n in 0..=5 {
            for l in enumerate_partitions(n, Some(k)) {
                e.add(l, Q::new(c.into(), 3.into()));
                c = (c * 7) % 11 - 5;
            }
        }
        assert_eq!(schur_expand(&e.to_poly()).unwrap(), e);
    }

    #[test]
    fn text_round_trip() {
        let mut e = SchurExpansion::new(3);
        e.add(p(&[2, 1]), q(6));
        e.add(p(&[3]), Q::new(1.into(), 2.into()));
        e.add(Partition::empty(), q(-1));
        let text = e.to_string();
        assert_eq!(text, "3: 1/2\n2,1: 6\n-: -1\n");
        assert_eq!(SchurExpansion::parse(3, &text).unwrap(), e);
    }
}
