use num_traits::One;

use super::poly::{ExactPoly, TruncatedSeries};
use super::schur::SchurExpansion;
use crate::partition::{enumerate_partitions, interleaves, Partition};
use crate::Q;

/// Coefficient of `s_λ` in `∏ 1/(1-t_i) · Σ α_μ s_μ`: the sum of `α_μ`
/// over the `μ` interleaving `λ`.
pub fn young_derived(alpha: &SchurExpansion, lambda: &Partition) -> Q {
    alpha
        .iter()
        .filter(|(mu, _)| interleaves(lambda, mu))
        .map(|(_, c)| c.clone())
        .sum()
}

/// All Young-derived coefficients with `h(λ) ≤ k` and `|λ| ≤ max_degree`.
/// `alpha` must contain every term of degree `≤ max_degree`.
pub fn young_derived_expansion(alpha: &SchurExpansion, max_degree: u32) -> SchurExpansion {
    let k = alpha.num_vars();
    let mut out = SchurExpansion::new(k);
    for n in 0..=max_degree {
        for lambda in enumerate_partitions(n, Some(k)) {
            let m = young_derived(alpha, &lambda);
            out.add(lambda, m);
        }
    }
    out
}

/// The closed-form Hilbert series this library can expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// Free W-algebra over a `d`-dimensional `W`: `d²s₁ / (1 - d s₁)`.
    Free { d: u32 },
    /// `UT₂` acting on itself: `-3 + 2P + (s₁ + 1)P²`.
    Ut2,
    /// `UT₂` with the diagonal action: `-2 + 2P + s₁P²`.
    Ut2D,
    /// `UT₂` with scalar action: `-1 + 2P + (s₁ - 1)P²`.
    Ut2F,
}

impl std::str::FromStr for ClosedForm {
    type Err = crate::GpiError;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "ut2" | "ut2_self" => Ok(ClosedForm::Ut2),
            "ut2_D" | "ut2_d" => Ok(ClosedForm::Ut2D),
            "ut2_F" | "ut2_f" => Ok(ClosedForm::Ut2F),
            _ => {
                let d = s
                    .strip_prefix("free(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| crate::GpiError::Parse(format!("unknown closed form {s:?}")))?;
                Ok(ClosedForm::Free { d })
            }
        }
    }
}

/// Truncated expansion of a closed-form Hilbert series in `k` variables up
/// to total degree `max_degree`. Here `P = ∏ 1/(1 - t_i)`.
pub fn expand_closed_form(form: ClosedForm, k: usize, max_degree: u32) -> TruncatedSeries {
    let n = max_degree;
    let int = |v: i64| Q::from_integer(v.into());
    let s1 = TruncatedSeries::new(ExactPoly::power_sum_one(k), n);
    let constant = |c: i64| TruncatedSeries::constant(k, n, int(c));
    match form {
        ClosedForm::Free { d } => {
            let d = int(d as i64);
            let ds1 = s1.scale(&d);
            let numerator = s1.scale(&(&d * &d));
            numerator.mul(&TruncatedSeries::geometric(&ds1))
        }
        ClosedForm::Ut2 | ClosedForm::Ut2D | ClosedForm::Ut2F => {
            let p = TruncatedSeries::cauchy_product(k, n);
            let p2 = p.mul(&p);
            let (c0, shift) = match form {
                ClosedForm::Ut2 => (-3, 1),
                ClosedForm::Ut2D => (-2, 0),
                _ => (-1, -1),
            };
            let factor = s1.add(&constant(shift));
            constant(c0).add(&p.scale(&int(2))).add(&factor.mul(&p2))
        }
    }
}

/// `Σ α_μ s_μ` truncated to degree `max_degree`, as a series.
pub fn expansion_to_series(alpha: &SchurExpansion, max_degree: u32) -> TruncatedSeries {
    let k = alpha.num_vars();
    let mut acc = TruncatedSeries::zero(k, max_degree);
    for (mu, c) in alpha.iter() {
        if mu.size() <= max_degree {
            acc = acc.add(&TruncatedSeries::new(super::schur::schur_poly(mu, k).scale(c), max_degree));
        }
    }
    acc
}

/// `Σ_{n ≥ 0} s_(n)` truncated at `max_degree`.
pub fn all_rows(k: usize, max_degree: u32) -> SchurExpansion {
    let mut e = SchurExpansion::new(k);
    for n in 0..=max_degree {
        e.add(Partition::row(n), Q::one());
    }
    e
}

/// `Σ_{n ≥ 1} s_(n,1)` truncated at `max_degree`.
pub fn all_hooks_n1(k: usize, max_degree: u32) -> SchurExpansion {
    let mut e = SchurExpansion::new(k);
    for n in 1..max_degree {
        e.add(Partition::new(vec![n, 1]).unwrap(), Q::one());
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::schur::schur_expand;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    /// Schur expansion of `∏1/(1-t_i) · Σ α_μ s_μ` up to `n`, computed
    /// with series arithmetic.
    fn product_route(alpha: &SchurExpansion, n: u32) -> SchurExpansion {
        let k = alpha.num_vars();
        let series = TruncatedSeries::cauchy_product(k, n).mul(&expansion_to_series(alpha, n));
        schur_expand(series.poly()).unwrap()
    }

    #[test]
    fn constant_alpha_gives_rows() {
        let alpha = SchurExpansion::single(3, Partition::empty());
        for n in 0..=5 {
            for lambda in enumerate_partitions(n, Some(3)) {
                let expected = if lambda.height() <= 1 { q(1) } else { q(0) };
                assert_eq!(young_derived(&alpha, &lambda), expected, "{lambda}");
            }
        }
    }

    #[test]
    fn single_box_alpha() {
        let alpha = SchurExpansion::single(3, p(&[1]));
        for n in 0..=6 {
            for lambda in enumerate_partitions(n, Some(3)) {
                let is_target = n >= 1 && (lambda.height() == 1 || (lambda.height() == 2 && lambda.part(1) == 1));
                assert_eq!(young_derived(&alpha, &lambda), if is_target { q(1) } else { q(0) }, "{lambda}");
            }
        }
    }

    #[test]
    fn hook_series_identity() {
        // Σ_{n≥1} s_(n,1) = 1 + (s₁ - 1) ∏ 1/(1-t_i), checked through the
        // Young-derived rule with α = s₁ - 1.
        for k in 2..=3 {
            let n = 6;
            let mut alpha = SchurExpansion::new(k);
            alpha.add(p(&[1]), q(1));
            alpha.add(Partition::empty(), q(-1));
            let mut derived = young_derived_expansion(&alpha, n);
            derived.add(Partition::empty(), q(1));
            assert_eq!(derived, all_hooks_n1(k, n + 1).restrict_up_to(n));
        }
    }

    #[test]
    fn young_rule_matches_series_product() {
        let n = 6;
        for k in 1..=3 {
            let mut ut2_alpha = SchurExpansion::new(k);
            ut2_alpha.add(Partition::empty(), q(1));
            for (l, c) in all_rows(k, n).iter() {
                ut2_alpha.add(l.clone(), c * q(2));
            }
            for (l, c) in all_hooks_n1(k, n).iter() {
                ut2_alpha.add(l.clone(), c.clone());
            }
            let alphas = vec![
                SchurExpansion::single(k, Partition::empty()),
                SchurExpansion::single(k, p(&[1])),
                all_rows(k, n),
                all_hooks_n1(k, n),
                ut2_alpha,
            ];
            for alpha in alphas {
                assert_eq!(young_derived_expansion(&alpha, n), product_route(&alpha, n));
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let free = expand_closed_form(ClosedForm::Free { d: 2 }, 1, 5);
        assert_eq!(free.coefficient(&[3]), q(16));
        let ut2 = expand_closed_form(ClosedForm::Ut2, 1, 8);
        for n in 1..=8u32 {
            assert_eq!(ut2.coefficient(&[n]), q(2 * n as i64 + 3));
        }
        for form in [ClosedForm::Free { d: 3 }, ClosedForm::Ut2, ClosedForm::Ut2D, ClosedForm::Ut2F] {
            for k in 1..=3 {
                let s = expand_closed_form(form, k, 5);
                assert_eq!(s.coefficient(&vec![0; k]), q(0));
                assert!(s.poly().terms().values().all(|c| c.is_integer() && *c >= q(0)), "{form:?}");
            }
        }
    }

    #[test]
    fn ut2_closed_form_matches_multiplicity_table() {
        // Σ (2n+3)s_(n) + Σ 3(q+1)s_(p+q,p) + Σ (q+1)s_(p+q,p,1).
        let n = 6;
        for k in 1..=3 {
            let closed = expand_closed_form(ClosedForm::Ut2, k, n);
            let expansion = schur_expand(closed.poly()).unwrap();
            for size in 1..=n {
                for lambda in enumerate_partitions(size, Some(k)) {
                    let table = match lambda.parts() {
                        [m] => 2 * *m as i64 + 3,
                        [a, b] => 3 * (a - b + 1) as i64,
                        [a, b, 1] => (a - b + 1) as i64,
                        _ => 0,
                    };
                    assert_eq!(expansion.get(&lambda), q(table), "{lambda} k={k}");
                }
            }
        }
    }

    #[test]
    fn closed_form_names() {
        assert_eq!("ut2".parse::<ClosedForm>().unwrap(), ClosedForm::Ut2);
        assert_eq!("free(3)".parse::<ClosedForm>().unwrap(), ClosedForm::Free { d: 3 });
        assert!("free".parse::<ClosedForm>().is_err());
    }
}
