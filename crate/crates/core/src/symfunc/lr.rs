
use super::poly::ExactPoly;
use super::schur::{for_each_ssyt, schur_poly, SchurExpansion};
use crate::error::{GpiError, Result};
use crate::partition::{enumerate_partitions, weyl_dimension, Partition};
use crate::Q;

fn check_contained(inner: &Partition, outer: &Partition) -> Result<()> {
    if inner.is_contained_in(outer) {
        Ok(())
    } else {
        Err(GpiError::NotContained { inner: inner.to_string(), outer: outer.to_string() })
    }
}

/// `c^ν_{λμ}`: the number of semistandard fillings of `ν/λ` with content
/// `μ` whose reverse reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() + mu.size() != nu.size() || !lambda.is_contained_in(nu) || !mu.is_contained_in(nu) {
        return 0;
    }
    // Cells in reading order: rows top to bottom, each right to left.
    let cells: Vec<(usize, usize)> = (0..nu.height())
        .flat_map(|r| (lambda.part(r) as usize..nu.part(r) as usize).rev().map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<u32>> = nu.parts().iter().map(|&l| vec![0; l as usize]).collect();
    let mut count = vec![0u32; mu.height() + 1];

    fn rec(
        i: usize,
        cells: &[(usize, usize)],
        lambda: &Partition,
        nu: &Partition,
        mu: &Partition,
        grid: &mut Vec<Vec<u32>>,
        count: &mut Vec<u32>,
    ) -> u64 {
        if i == cells.len() {
            return 1;
        }
        let (r, c) = cells[i];
        // Right neighbour already placed in reading order: rows weakly
        // increase left to right, so this entry is at most that one.
        let hi = if (c + 1) < nu.part(r) as usize { grid[r][c + 1] } else { mu.height() as u32 };
        let lo = if r > 0 && c as u32 >= lambda.part(r - 1) { grid[r - 1][c] + 1 } else { 1 };
        let mut total = 0;
        for v in lo..=hi {
            let vi = v as usize;
            if count[vi] >= mu.part(vi - 1) {
                continue;
            }
            if vi > 1 && count[vi] + 1 > count[vi - 1] {
                continue;
            }
            grid[r][c] = v;
            count[vi] += 1;
            total += rec(i + 1, cells, lambda, nu, mu, grid, count);
            count[vi] -= 1;
        }
        grid[r][c] = 0;
        total
    }
    rec(0, &cells, lambda, nu, mu, &mut grid, &mut count)
}

/// `s_{μ/λ} = Σ_ν c^μ_{λν} s_ν` in `k` variables.
pub fn skew_schur(mu: &Partition, lambda: &Partition, k: usize) -> Result<SchurExpansion> {
    check_contained(lambda, mu)?;
    let mut out = SchurExpansion::new(k);
    for nu in enumerate_partitions(mu.size() - lambda.size(), Some(k)) {
        let c = lr_coefficient(lambda, &nu, mu);
        if c > 0 {
            out.add(nu, Q::from_integer(c.into()));
        }
    }
    Ok(out)
}

/// `s_{μ/λ}` as an explicit polynomial in `k` variables.
pub fn skew_schur_poly(mu: &Partition, lambda: &Partition, k: usize) -> Result<ExactPoly> {
    Ok(skew_schur(mu, lambda, k)?.to_poly())
}

/// `s^d_{μ/λ}(1,…,1) = Σ_ν c^μ_{λν} dim W^d_ν`.
pub fn skew_schur_at_ones(mu: &Partition, lambda: &Partition, d: usize) -> Result<u64> {
    check_contained(lambda, mu)?;
    Ok(enumerate_partitions(mu.size() - lambda.size(), Some(d))
        .iter()
        .map(|nu| lr_coefficient(lambda, nu, mu) * weyl_dimension(nu, d))
        .sum())
}

/// Number of semistandard fillings of `μ/λ` with entries `≤ d`.
pub fn skew_ssyt_count(mu: &Partition, lambda: &Partition, d: usize) -> Result<u64> {
    check_contained(lambda, mu)?;
    let mut n = 0u64;
    for_each_ssyt(mu, lambda, d, &mut |_| n += 1);
    Ok(n)
}

/// Checks `s^{l+k}_{μ/λ}(t, v) = Σ_{λ⊆ν⊆μ} s^l_{μ/ν}(t) s^k_{ν/λ}(v)` as an
/// identity of polynomials in `l + k` variables.
pub fn duplication_check(mu: &Partition, lambda: &Partition, l: usize, k: usize) -> Result<bool> {
    check_contained(lambda, mu)?;
    let total = l + k;
    let lhs = skew_schur_poly(mu, lambda, total)?;
    let mut rhs = ExactPoly::zero(total);
    for size in lambda.size()..=mu.size() {
        for nu in enumerate_partitions(size, None) {
            if !lambda.is_contained_in(&nu) || !nu.is_contained_in(mu) {
                continue;
            }
            let t_part = skew_schur_poly(mu, &nu, l)?.embed(0, total);
            let v_part = skew_schur_poly(&nu, lambda, k)?.embed(l, total);
            rhs = rhs.add(&t_part.mul(&v_part));
        }
    }
    Ok(lhs == rhs)
}

/// `c^ν_{λμ}` read off from the Schur expansion of `s_λ s_μ` in `|ν|`
/// variables. Independent of the tableau count in [`lr_coefficient`].
pub fn lr_coefficient_by_product(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<Q> {
    let k = nu.size().max(1) as usize;
    let product = schur_poly(lambda, k).mul(&schur_poly(mu, k));
    Ok(super::schur::schur_expand(&product)?.get(nu))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
        for n in 0..=4 {
            for lambda in enumerate_partitions(n, None) {
                for nu in enumerate_partitions(n, None) {
                    let expected = u64::from(nu == lambda);
                    assert_eq!(lr_coefficient(&lambda, &Partition::empty(), &nu), expected);
                }
            }
        }
    }

    #[test]
    fn lr_tableaux_match_product_expansion() {
        for a in 0..=3 {
            for b in 0..=3 {
                for lambda in enumerate_partitions(a, None) {
                    for mu in enumerate_partitions(b, None) {
                        for nu in enumerate_partitions(a + b, None) {
                            let by_tableaux = q(lr_coefficient(&lambda, &mu, &nu) as i64);
                            let by_product = lr_coefficient_by_product(&lambda, &mu, &nu).unwrap();
                            assert_eq!(by_tableaux, by_product, "{lambda} {mu} {nu}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn product_identity_as_polynomials() {
        for a in 0..=3 {
            for b in 0..=3 {
                let k = (a + b).max(1) as usize;
                for lambda in enumerate_partitions(a, None) {
                    for mu in enumerate_partitions(b, None) {
                        let lhs = schur_poly(&lambda, k).mul(&schur_poly(&mu, k));
                        let mut rhs = SchurExpansion::new(k);
                        for nu in enumerate_partitions(a + b, None) {
                            rhs.add(nu.clone(), q(lr_coefficient(&lambda, &mu, &nu) as i64));
                        }
                        assert_eq!(lhs, rhs.to_poly());
                    }
                }
            }
        }
    }

    #[test]
    fn skew_examples() {
        let lam = p(&[2, 1]);
        assert_eq!(skew_schur(&lam, &lam, 3).unwrap(), SchurExpansion::single(3, Partition::empty()));
        let e = skew_schur(&p(&[2, 1]), &p(&[1]), 2).unwrap();
        assert_eq!(e.get(&p(&[2])), q(1));
        assert_eq!(e.get(&p(&[1, 1])), q(1));
        assert_eq!(e.len(), 2);
        assert_eq!(skew_schur(&lam, &Partition::empty(), 3).unwrap(), SchurExpansion::single(3, lam.clone()));
        assert!(skew_schur(&p(&[1]), &p(&[2]), 2).is_err());
    }

    #[test]
    fn skew_at_ones() {
        assert_eq!(skew_schur_at_ones(&p(&[3, 1]), &p(&[3, 1]), 4).unwrap(), 1);
        assert_eq!(skew_schur_at_ones(&p(&[2, 1]), &p(&[1]), 2).unwrap(), 4);
        assert!(skew_schur_at_ones(&p(&[2]), &p(&[1, 1]), 2).is_err());
        for m in 0..=5 {
            for mu in enumerate_partitions(m, None) {
                for l in 0..=m {
                    for lambda in enumerate_partitions(l, None) {
                        if !lambda.is_contained_in(&mu) {
                            continue;
                        }
                        for d in 1..=3 {
                            assert_eq!(
                                skew_schur_at_ones(&mu, &lambda, d).unwrap(),
                                skew_ssyt_count(&mu, &lambda, d).unwrap(),
                                "{mu}/{lambda} d={d}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn duplication_examples() {
        let mu = p(&[2, 1]);
        assert!(duplication_check(&mu, &mu, 1, 1).unwrap());
        assert!(duplication_check(&mu, &Partition::empty(), 1, 1).unwrap());
        assert!(duplication_check(&p(&[1]), &p(&[2]), 1, 1).is_err());
    }

    #[test]
    fn duplication_exhaustive() {
        for m in 0..=4 {
            for mu in enumerate_partitions(m, None) {
                for s in 0..=m {
                    for lambda in enumerate_partitions(s, None) {
                        if !lambda.is_contained_in(&mu) {
                            continue;
                        }
                        for l in 1..=2 {
                            for k in 1..=2 {
                                assert!(duplication_check(&mu, &lambda, l, k).unwrap(), "{mu}/{lambda} l={l} k={k}");
                            }
                        }
                    }
                }
            }
        }
    }
}
