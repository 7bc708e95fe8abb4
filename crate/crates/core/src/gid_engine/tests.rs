use super::*;
use crate::gpoly::multilinear_basis;
use crate::linalg::{fraction_free_rank, integer_rows};
use crate::symfunc::{expand_closed_form, ClosedForm};

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn engine(name: &str) -> GidEngine {
    GidEngine::from_name(name).unwrap()
}

fn act(name: &str) -> WAction {
    builtin(name.parse().unwrap()).unwrap()
}

/// Direct evaluation of a monomial on vectors of `A`, through the public
/// action and multiplication only.
fn eval_direct(act: &WAction, m: &GenMonomial, args: &[Vec<Q>]) -> Vec<Q> {
    let apply_left = |sym: WSym, v: Vec<Q>| match sym {
        WSym::One => v,
        WSym::Basis(p) => act.act_left(&act.w().basis_vec(p), &v),
    };
    let apply_right = |v: Vec<Q>, sym: WSym| match sym {
        WSym::One => v,
        WSym::Basis(p) => act.act_right(&v, &act.w().basis_vec(p)),
    };
    let w = m.w();
    let mut v = apply_left(w[0], args[0].clone());
    for k in 1..args.len() {
        v = apply_right(v, w[k]);
        v = act.a().mul(&v, &args[k]);
    }
    apply_right(v, w[args.len()])
}

/// Dense evaluation matrix of `gP_n`, built monomial by monomial.
fn oracle_matrix(act: &WAction, n: usize) -> Vec<Vec<Q>> {
    let da = act.dim_a();
    let tuples = da.pow(n as u32);
    multilinear_basis(n, act.dim_w())
        .iter()
        .map(|m| {
            let mut row = Vec::with_capacity(tuples * da);
            for ti in 0..tuples {
                let mut digits = vec![0; n];
                let mut rest = ti;
                for d in digits.iter_mut().rev() {
                    *d = rest % da;
                    rest /= da;
                }
                let args: Vec<Vec<Q>> = m.vars().iter().map(|v| act.a().basis_vec(digits[v.index as usize - 1])).collect();
                row.extend(eval_direct(act, m, &args));
            }
            row
        })
        .collect()
}

fn oracle_rank(rows: &[Vec<Q>]) -> usize {
    fraction_free_rank(integer_rows(rows))
}

#[test]
fn perm_rank_matches_enumeration() {
    for n in 0..=5 {
        for (i, p) in all_perms(n).iter().enumerate() {
            assert_eq!(perm_rank(&p.0), i);
        }
    }
}

#[test]
fn composition_counts() {
    assert_eq!(compositions(3, 2), vec![vec![0, 3], vec![1, 2], vec![2, 1], vec![3, 0]]);
    for n in 0..=5u32 {
        for k in 1..=4usize {
            // C(n+k-1, k-1)
            let expected = (1..k as u64).fold(1u64, |acc, i| acc * (n as u64 + i) / i);
            assert_eq!(compositions(n, k).len() as u64, expected);
        }
    }
}

#[test]
fn content_words_are_distinct_rearrangements() {
    let words = content_words(&[2, 1]);
    assert_eq!(words, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
}

#[test]
fn codimension_examples() {
    assert_eq!(engine("ut2_self").codimension(1).unwrap(), 5);
    assert_eq!(engine("ut2_D").codimension(1).unwrap(), 3);
    assert_eq!(engine("ut2_self").codimension(2).unwrap(), 10);
}

#[test]
fn codimension_matches_dense_oracle() {
    for name in ["ut2_self", "ut2_D", "ut2_F", "grassmann(2)", "diagonal(2)"] {
        let a = act(name);
        for n in 1..=3 {
            let expected = oracle_rank(&oracle_matrix(&a, n)) as u64;
            assert_eq!(engine(name).codimension(n).unwrap(), expected, "{name} n={n}");
            let exact = engine(name).with_method(RankMethod::Exact).codimension(n).unwrap();
            assert_eq!(exact, expected, "{name} n={n} exact");
        }
    }
}

#[test]
fn degree_table_matches_direct_evaluation() {
    let a = act("ut2_self");
    let e = GidEngine::new(a.clone());
    let deg = e.degree(2).unwrap();
    let src = GroupedRows::multilinear(&deg);
    for (i, row) in oracle_matrix(&a, 2).iter().enumerate() {
        let dense: Vec<(usize, Q)> = row.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        assert_eq!(src.row(i), dense, "row {i}");
    }
}

#[test]
fn ordinary_ut2_codimensions() {
    // c_n(UT_2) = 2^{n-1}(n-2) + 2.
    let e = engine("ut2_F");
    for n in 1..=4usize {
        let expected = (1i64 << (n - 1)) * (n as i64 - 2) + 2;
        assert_eq!(e.codimension(n).unwrap() as i64, expected);
    }
}

#[test]
fn cocharacter_examples() {
    let c = engine("ut2_self").cocharacter(2).unwrap();
    assert_eq!(c.multiplicity(&p(&[2])), 7);
    assert_eq!(c.multiplicity(&p(&[1, 1])), 3);
    let c = engine("ut2_D").cocharacter(2).unwrap();
    assert_eq!((c.multiplicity(&p(&[2])), c.multiplicity(&p(&[1, 1]))), (4, 2));
    let c = engine("ut2_self").cocharacter(3).unwrap();
    assert_eq!(c.multiplicity(&p(&[3])), 9);
    assert_eq!(c.multiplicity(&p(&[2, 1])), 6);
    assert_eq!(c.multiplicity(&p(&[1, 1, 1])), 1);
    assert_eq!((c.gc, c.gl), (22, 16));
}

#[test]
fn kernel_route_agrees_with_image_route() {
    for name in ["ut2_self", "ut2_D", "ut2_F", "grassmann(2)", "free(1)", "free(2)"] {
        for n in 1..=3 {
            if name == "free(2)" && n == 3 {
                continue;
            }
            let e = engine(name);
            assert_eq!(e.cocharacter(n).unwrap(), e.cocharacter_kernel_route(n).unwrap(), "{name} n={n}");
        }
    }
}

#[test]
fn free_algebra_cocharacter_is_regular() {
    // gP_n of the free algebra is d^{n+1} copies of the regular module.
    for d in 1..=3usize {
        for n in 1..=3usize {
            let c = engine(&format!("free({d})")).cocharacter(n).unwrap();
            for (lambda, m) in c.multiplicities.iter() {
                assert_eq!(*m, q((d.pow(n as u32 + 1) as u64 * sn_dimension(lambda).unwrap()) as i64));
            }
        }
    }
}

#[test]
fn is_identity_examples() {
    let diag = engine("diagonal(2)");
    assert!(diag.is_identity(&GenPoly::parse("x1 x2 - x2 x1", 1).unwrap()).unwrap());
    let ut2 = engine("ut2_self");
    assert!(ut2.is_identity(&GenPoly::parse("w[1] x1 w[1]", 3).unwrap()).unwrap());
    assert!(!ut2.is_identity(&GenPoly::parse("x1", 3).unwrap()).unwrap());
    // [x1,x2][x3,x4] vanishes on UT_2 since commutators are strictly upper.
    let f = GenPoly::parse("x1 x2 x3 x4 - x2 x1 x3 x4 - x1 x2 x4 x3 + x2 x1 x4 x3", 1).unwrap();
    assert!(engine("ut2_F").is_identity(&f).unwrap());
    assert!(!engine("free(1)").is_identity(&f).unwrap());
    assert!(engine("free(2)").is_identity(&GenPoly::parse("x1 - w[0] x1 - w[1] x1", 2).unwrap()).unwrap());
    assert!(ut2.is_identity(&GenPoly::parse("1/2 * w[1] x1 w[1]", 3).unwrap()).unwrap());
}

#[test]
fn identity_test_agrees_with_evaluation_matrix() {
    // Random combinations of gP_2 monomials: identity iff the combination of
    // evaluation rows vanishes.
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let a = act("ut2_D");
    let basis = multilinear_basis(2, 2);
    let rows = oracle_matrix(&a, 2);
    let kernel = nullspace(
        &(0..rows[0].len()).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect::<Vec<_>>(),
        rows.len(),
    );
    let e = GidEngine::new(a);
    for trial in 0..40 {
        let coeffs: Vec<Q> = if trial % 2 == 0 && !kernel.is_empty() {
            let mut v = vec![q(0); basis.len()];
            for k in &kernel {
                let c = q(rng.gen_range(-2..=2));
                for (x, y) in v.iter_mut().zip(k) {
                    *x += &c * y;
                }
            }
            v
        } else {
            (0..basis.len()).map(|_| q(rng.gen_range(-1..=1))).collect()
        };
        let mut f = GenPoly::zero(2);
        for (m, c) in basis.iter().zip(&coeffs) {
            f.add_term(m.clone(), c.clone()).unwrap();
        }
        if f.is_empty() {
            continue;
        }
        let combined: Vec<Q> =
            (0..rows[0].len()).map(|col| rows.iter().zip(&coeffs).map(|(r, c)| &r[col] * c).sum()).collect();
        assert_eq!(e.is_identity(&f).unwrap(), combined.iter().all(Zero::is_zero), "{f}");
    }
}

#[test]
fn multidegree_examples() {
    let e = engine("ut2_self");
    assert_eq!(e.multidegree_dimension(&[1]).unwrap(), 5);
    assert_eq!(e.multidegree_dimension(&[2]).unwrap(), 7);
    assert_eq!(e.multidegree_dimension(&[1, 1, 1]).unwrap(), e.codimension(3).unwrap());
    assert_eq!(e.multidegree_dimension(&[2, 0, 1]).unwrap(), e.multidegree_dimension(&[2, 1]).unwrap());
}

/// Quadratic evaluation `f(Σ c_i b_i)` of the degree-2 monomials in one
/// variable, as coefficients of `c_i c_j (i ≤ j)` per output coordinate.
fn quadratic_rows(act: &WAction) -> Vec<Vec<Q>> {
    let da = act.dim_a();
    let pairs: Vec<(usize, usize)> = (0..da).flat_map(|i| (i..da).map(move |j| (i, j))).collect();
    w_words_for(act.dim_w(), 3)
        .iter()
        .map(|w| {
            let m = GenMonomial::new(w.clone(), vec![Var::x(1), Var::x(1)]).unwrap();
            let mut row = Vec::new();
            for &(i, j) in &pairs {
                let mut v = eval_direct(act, &m, &[act.a().basis_vec(i), act.a().basis_vec(j)]);
                if i != j {
                    let other = eval_direct(act, &m, &[act.a().basis_vec(j), act.a().basis_vec(i)]);
                    for (x, y) in v.iter_mut().zip(other) {
                        *x += y;
                    }
                }
                row.extend(v);
            }
            row
        })
        .collect()
}

fn w_words_for(d: usize, len: usize) -> Vec<Vec<WSym>> {
    crate::gpoly::w_words(len, d)
}

#[test]
fn linearization_preserves_identities_in_degree_two() {
    // Left kernels agree iff stacking does not raise either rank.
    let a = act("ut2_self");
    let direct = quadratic_rows(&a);
    let e = GidEngine::new(a);
    let deg = e.degree(2).unwrap();
    let ml = GroupedRows::multidegree(&deg, &[2]);
    let ml_rows: Vec<Vec<Q>> = (0..ml.nrows())
        .map(|i| {
            let mut dense = vec![q(0); ml.ncols()];
            for (c, v) in ml.row(i) {
                dense[c] = v;
            }
            dense
        })
        .collect();
    let stacked: Vec<Vec<Q>> = direct.iter().zip(&ml_rows).map(|(x, y)| x.iter().chain(y).cloned().collect()).collect();
    let (rd, rm, rs) = (oracle_rank(&direct), oracle_rank(&ml_rows), oracle_rank(&stacked));
    assert_eq!((rd, rm, rs), (7, 7, 7));
    // And each linearized monomial is an identity exactly when the original is.
    for word in w_words_for(3, 3) {
        let f = GenPoly::monomial(3, GenMonomial::new(word, vec![Var::x(1), Var::x(1)]).unwrap(), q(1)).unwrap();
        let g = multilinearize(&f).unwrap();
        assert_eq!(e.is_identity(&f).unwrap(), polynomial_vanishes(&act("ut2_self"), &g));
    }
}

#[test]
fn hilbert_examples() {
    let h = engine("ut2_self").hilbert_truncated(1, 4).unwrap();
    for (n, c) in [(1, 5), (2, 7), (3, 9), (4, 11)] {
        assert_eq!(h.coefficient(&[n]), q(c));
    }
    let h = engine("ut2_D").hilbert_truncated(1, 3).unwrap();
    for (n, c) in [(1, 3), (2, 4), (3, 5)] {
        assert_eq!(h.coefficient(&[n]), q(c));
    }
    let h = engine("free(3)").hilbert_truncated(1, 3).unwrap();
    for (n, c) in [(1, 9), (2, 27), (3, 81)] {
        assert_eq!(h.coefficient(&[n]), q(c));
    }
}

#[test]
fn hilbert_matches_closed_forms_two_variables() {
    for (name, form) in [("ut2_self", ClosedForm::Ut2), ("ut2_D", ClosedForm::Ut2D), ("ut2_F", ClosedForm::Ut2F)] {
        let h = engine(name).hilbert_truncated(2, 3).unwrap();
        assert_eq!(h, expand_closed_form(form, 2, 3), "{name}");
    }
}

#[test]
fn homogeneous_codimension_examples() {
    assert_eq!(engine("free(2)").homogeneous_codimension(2, 1).unwrap(), 8);
    assert_eq!(engine("ut2_self").homogeneous_codimension(3, 1).unwrap(), 9);
    assert_eq!(engine("ut2_D").homogeneous_codimension(2, 1).unwrap(), 4);
    assert_eq!(engine("ut2_self").homogeneous_codimension(2, 2).unwrap(), 7 * 3 + 3);
}

#[test]
fn gl_pipeline_examples() {
    let gl = engine("ut2_self").gl_pipeline_multiplicities(2, 2).unwrap();
    assert_eq!(gl, engine("ut2_self").cocharacter(2).unwrap().multiplicities);
    assert_eq!(gl.get(&p(&[2])), q(7));
    let e = engine("ut2_D");
    assert_eq!(e.gl_pipeline_multiplicities(3, 3).unwrap(), e.cocharacter(3).unwrap().multiplicities);
    let free = engine("free(1)").gl_pipeline_multiplicities(2, 2).unwrap();
    assert_eq!((free.get(&p(&[2])), free.get(&p(&[1, 1])), free.len()), (q(1), q(1), 2));
    assert!(engine("ut2_self").gl_pipeline_multiplicities(3, 2).is_err());
}

#[test]
fn capelli_examples() {
    assert!(!engine("matrix(2)").capelli_report(2).unwrap());
    assert!(engine("ut2_D").capelli_report(4).unwrap());
    assert!(!engine("ut2_D").capelli_report(1).unwrap());
    // M_2 satisfies the ordinary Capelli identity of rank 5 = 4 + 1.
    let m2 = engine("matrix(2)");
    assert!(!m2.is_identity(&capelli(4, 4)).unwrap());
}

#[test]
fn ut2_self_satisfies_capelli_of_rank_four() {
    assert!(engine("ut2_self").capelli_report(4).unwrap());
    assert!(!engine("ut2_self").capelli_report(3).unwrap());
}

#[test]
fn multiplicity_bound_examples() {
    for name in ["ut2_self", "ut2_D"] {
        for n in 1..=2 {
            let r = multiplicity_bound_check(&act(name), n).unwrap();
            assert!(r.holds(), "{name} n={n}\n{}", r.to_table());
        }
    }
    let r = multiplicity_bound_check(&act("ut2_self"), 1).unwrap();
    assert_eq!(r.rows[0].multiplicity, 5);
    // Ordinary UT_2 multiplicities vanish unless λ = (p+q, p) or (p+q, p, 1).
    assert!(r.ordinary.iter().all(|(mu, m)| mu.height() <= 2 || (mu.height() == 3 && mu.part(2) == 1) || m.is_zero()));
    assert!(matches!(multiplicity_bound_check(&act("grassmann(2)"), 1), Ok(_)));
}

#[test]
fn bound_rejects_non_unital_algebra() {
    let a = FiniteAlgebra::matrix_units(2, &[(0, 1)]);
    let zero = WAction::ordinary("nil", a).unwrap();
    assert!(matches!(multiplicity_bound_check(&zero, 1), Err(GpiError::NoUnity(_))));
}

#[test]
fn semidirect_monotonicity() {
    for name in ["ut2_self", "ut2_D", "ut2_F"] {
        let a = act(name);
        let s = a.semidirect().unwrap();
        for n in 1..=2 {
            assert!(gid_contained(&s, &a, n).unwrap(), "{name} n={n}");
            let (ga, gs) = (GidEngine::new(a.clone()).codimension(n).unwrap(), GidEngine::new(s.clone()).codimension(n).unwrap());
            assert!(ga <= gs, "{name} n={n}: {ga} > {gs}");
        }
    }
    // A ⋊ F ≅ A × F for unital A, so here the containment goes both ways.
    let a = act("ut2_F");
    assert!(gid_contained(&a, &a.semidirect().unwrap(), 3).unwrap());
    // x1 x2 vanishes on a zero-product algebra but not on its unitization.
    let nil = WAction::ordinary("nil", FiniteAlgebra::matrix_units(2, &[(0, 1)])).unwrap();
    assert!(!gid_contained(&nil, &nil.semidirect().unwrap(), 2).unwrap());
}

#[test]
fn capelli_lands_in_a() {
    assert!(capelli_landing(&act("ut2_D")).unwrap());
    assert!(capelli_landing(&act("ut2_F")).unwrap());
}

#[test]
fn cocharacter_table_and_json() {
    let c = engine("ut2_D").cocharacter(2).unwrap();
    let t = c.to_table();
    assert!(t.contains("gc_2 = 6"), "{t}");
    let j = c.to_json();
    assert_eq!(j["gl"], 6);
    assert_eq!(j["multiplicities"][0]["partition"], json!([2]));
}
