//! The acceptance suite: ten end-to-end checks, each reported as pass/fail
//! with a short detail line.

use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GpiError, Result};
use crate::gid_engine::{capelli_landing, multiplicity_bound_check, CocharacterResult, GidEngine};
use crate::gpoly::{graded_multilinear_basis, tilde, GenPoly, GradedGenPoly};
use crate::partition::{enumerate_partitions, sn_dimension, Partition};
use crate::sn_rep::{
    branching_check, left_ideal_dimension, matrix_model_character, standard_tableaux, young_symmetrizer,
    CharacterVector,
};
use crate::super_envelope::{graded_ut2_d, tilde_sides};
use crate::symfunc::{
    all_hooks_n1, all_rows, duplication_check, expand_closed_form, expansion_to_series, lr_coefficient,
    lr_coefficient_by_product, schur_expand, schur_poly, schur_poly_jt, young_derived_expansion, ClosedForm,
    SchurExpansion, TruncatedSeries,
};
use crate::walg_model::{builtin, grassmann_truncated, Builtin};
use crate::Q;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {:>2}. {}: {}", self.id, self.title, self.detail)
    }
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "UT2 self-action multiplicity table, n <= 4"),
    (2, "UT2 diagonal-action multiplicity table, n <= 4"),
    (3, "Hilbert series against closed forms"),
    (4, "S_n and GL pipelines agree"),
    (5, "codimension and colength formulas"),
    (6, "multiplicity bound"),
    (7, "strip of height 3 and Capelli rank 4"),
    (8, "symmetric-function oracles"),
    (9, "symmetric-group representations"),
    (10, "Grassmann envelope and tilde map"),
];

/// Every built-in the suite sweeps over.
pub const ALL_BUILTINS: [&str; 10] = [
    "ut2_self",
    "ut2_D",
    "ut2_F",
    "matrix(2)",
    "diagonal(2)",
    "grassmann(2)",
    "grassmann(3)",
    "free(1)",
    "free(2)",
    "free(3)",
];

fn fail(msg: impl Into<String>) -> GpiError {
    GpiError::Verification(msg.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn run_criterion(id: u8) -> Result<CriterionReport> {
    let title = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, t)| *t)
        .ok_or_else(|| GpiError::InvalidArgument(format!("no criterion {id}")))?;
    let start = Instant::now();
    let outcome = match id {
        1 => ut2_table(Builtin::Ut2Self),
        2 => ut2_table(Builtin::Ut2D),
        3 => hilbert_match(),
        4 => pipeline_agreement(),
        5 => codimension_formula(),
        6 => bound(),
        7 => strip_and_capelli(),
        8 => symmetric_functions(),
        9 => representations(),
        _ => grassmann_and_tilde(),
    };
    let elapsed = format!("{:.2}s", start.elapsed().as_secs_f64());
    Ok(match outcome {
        Ok(detail) => CriterionReport { id, title, passed: true, detail: format!("{detail} ({elapsed})") },
        Err(e) => CriterionReport { id, title, passed: false, detail: format!("{e} ({elapsed})") },
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().map(|(id, _)| run_criterion(*id).expect("listed criterion")).collect()
}

/// Expected multiplicity for the UT₂ tables: `(n)`, `(p+q, p)` and
/// `(p+q, p, 1)` rows with the given linear rules, zero elsewhere.
fn ut2_expected(b: Builtin, lambda: &Partition) -> u64 {
    let (row, two_row, three_row): (fn(u64) -> u64, u64, u64) = match b {
        Builtin::Ut2Self => (|n| 2 * n + 3, 3, 1),
        _ => (|n| n + 2, 2, 1),
    };
    match *lambda.parts() {
        [n] => row(n as u64),
        [a, b] => two_row * (a - b + 1) as u64,
        [a, b, 1] => three_row * (a - b + 1) as u64,
        _ => 0,
    }
}

fn ut2_table(b: Builtin) -> Result<String> {
    let e = GidEngine::new(builtin(b)?);
    let mut codims = Vec::new();
    for n in 1..=4usize {
        let c = e.cocharacter(n)?;
        for lambda in enumerate_partitions(n as u32, None) {
            let (got, want) = (c.multiplicity(&lambda), ut2_expected(b, &lambda));
            ensure(got == want, || format!("{b}: m_{lambda} = {got}, expected {want}"))?;
        }
        codims.push(c.gc.to_string());
    }
    Ok(format!("{b} tables match for n=1..4, gc = {}", codims.join(",")))
}

fn hilbert_match() -> Result<String> {
    let cases: Vec<(String, ClosedForm)> = vec![
        ("ut2_self".into(), ClosedForm::Ut2),
        ("ut2_D".into(), ClosedForm::Ut2D),
        ("ut2_F".into(), ClosedForm::Ut2F),
        ("free(1)".into(), ClosedForm::Free { d: 1 }),
        ("free(2)".into(), ClosedForm::Free { d: 2 }),
        ("free(3)".into(), ClosedForm::Free { d: 3 }),
    ];
    let mut count = 0;
    for (name, form) in &cases {
        let e = GidEngine::from_name(name)?;
        for k in 1..=2 {
            let computed = e.hilbert_truncated(k, 4)?;
            let closed = expand_closed_form(*form, k, 4);
            ensure(computed == closed, || {
                format!("{name}, k={k}: computed {} vs closed form {}", computed.to_text(), closed.to_text())
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} series equal through degree 4"))
}

fn pipeline_agreement() -> Result<String> {
    let mut count = 0;
    for name in ALL_BUILTINS {
        let e = GidEngine::from_name(name)?;
        for n in 1..=3 {
            let sn = e.cocharacter(n)?.multiplicities;
            let gl = e.gl_pipeline_multiplicities(n, n)?;
            ensure(sn == gl, || format!("{name}, n={n}: S_n gives {sn}, GL gives {gl}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} (algebra, n) pairs agree"))
}

fn codimension_formula() -> Result<String> {
    let mut count = 0;
    for name in ALL_BUILTINS {
        let e = GidEngine::from_name(name)?;
        for n in 1..=4 {
            let c: CocharacterResult = e.cocharacter(n)?;
            let rank = e.codimension(n)?;
            let mut weighted = 0u64;
            let mut gl = 0u64;
            for (lambda, m) in c.multiplicities.iter() {
                let m = crate::sn_rep::to_i64(m).ok_or_else(|| fail(format!("{name}: m_{lambda} = {m}")))? as u64;
                weighted += m * sn_dimension(lambda)?;
                gl += m;
            }
            ensure(rank == weighted, || format!("{name}, n={n}: rank {rank} vs sum m d = {weighted}"))?;
            ensure(gl == c.gl, || format!("{name}, n={n}: colength {} vs {gl}", c.gl))?;
            count += 1;
        }
    }
    Ok(format!("{count} (algebra, n) pairs satisfy gc = sum m d and gl = sum m"))
}

fn bound() -> Result<String> {
    let mut lines = Vec::new();
    for b in [Builtin::Ut2Self, Builtin::Ut2D] {
        for n in 1..=2 {
            let r = multiplicity_bound_check(&builtin(b)?, n)?;
            ensure(r.holds(), || format!("{b}, n={n}:\n{}", r.to_table()))?;
            let tight = r.rows.iter().map(|row| format!("{}<={}", row.multiplicity, row.bound)).collect::<Vec<_>>();
            lines.push(format!("{b} n={n} [{}]", tight.join(" ")));
        }
    }
    Ok(lines.join("; "))
}

fn strip_and_capelli() -> Result<String> {
    for b in [Builtin::Ut2Self, Builtin::Ut2D, Builtin::Ut2F] {
        let e = GidEngine::new(builtin(b)?);
        ensure(e.capelli_report(4)?, || format!("{b}: generalized Capelli set of rank 4 fails"))?;
        for n in 1..=4 {
            let c = e.cocharacter(n)?;
            for (lambda, m) in c.multiplicities.iter() {
                ensure(lambda.height() < 4 || m.is_zero(), || format!("{b}: m_{lambda} = {m} outside the strip"))?;
            }
        }
    }
    Ok("Capelli rank 4 holds on all UT2 actions; no multiplicity outside height 3 for n <= 4".into())
}

fn symmetric_functions() -> Result<String> {
    let mut checks = 0;
    for n in 0..=6 {
        for lambda in enumerate_partitions(n, None) {
            for k in 1..=4 {
                ensure(schur_poly(&lambda, k) == schur_poly_jt(&lambda, k), || format!("s_{lambda} in {k} variables"))?;
                checks += 1;
            }
        }
    }
    for a in 0..=3 {
        for b in 0..=3 {
            for lambda in enumerate_partitions(a, None) {
                for mu in enumerate_partitions(b, None) {
                    for nu in enumerate_partitions(a + b, None) {
                        let by_tableaux = q(lr_coefficient(&lambda, &mu, &nu) as i64);
                        let by_product = lr_coefficient_by_product(&lambda, &mu, &nu)?;
                        ensure(by_tableaux == by_product, || format!("c^{nu}_{lambda},{mu}"))?;
                        checks += 1;
                    }
                }
            }
        }
    }
    for m in 0..=4 {
        for mu in enumerate_partitions(m, None) {
            for s in 0..=m {
                for lambda in enumerate_partitions(s, None).into_iter().filter(|l| l.is_contained_in(&mu)) {
                    for l in 1..=2 {
                        for k in 1..=2 {
                            ensure(duplication_check(&mu, &lambda, l, k)?, || format!("duplication {mu}/{lambda}"))?;
                            checks += 1;
                        }
                    }
                }
            }
        }
    }
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
        for alpha in [all_rows(k, n), all_hooks_n1(k, n), ut2_alpha] {
            let series = TruncatedSeries::cauchy_product(k, n).mul(&expansion_to_series(&alpha, n));
            let product = schur_expand(series.poly())?;
            ensure(young_derived_expansion(&alpha, n) == product, || format!("Young-derived rule, k={k}"))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} exact comparisons"))
}

fn representations() -> Result<String> {
    let mut checks = 0;
    for n in 1..=5 {
        for lambda in enumerate_partitions(n, None) {
            let t = standard_tableaux(&lambda).remove(0);
            ensure(matrix_model_character(&t) == CharacterVector::irreducible(&lambda), || {
                format!("character of {lambda}")
            })?;
            let d = sn_dimension(&lambda)? as usize;
            ensure(left_ideal_dimension(&young_symmetrizer(&t)) == d, || format!("span of sigma e_T for {lambda}"))?;
            checks += 2;
        }
    }
    for n in 1..=8u32 {
        let sum: u64 = enumerate_partitions(n, None).iter().map(|l| sn_dimension(l).map(|d| d * d)).sum::<Result<_>>()?;
        let fact: u64 = (1..=n as u64).product();
        ensure(sum == fact, || format!("sum of d^2 = {sum} for n={n}"))?;
        checks += 1;
    }
    for n in 1..=6 {
        for lambda in enumerate_partitions(n, None) {
            ensure(branching_check(&lambda)?, || format!("branching for {lambda}"))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} exact comparisons"))
}

fn grassmann_and_tilde() -> Result<String> {
    let mut involutions = 0;
    for total in 1..=4usize {
        for l in 0..=total {
            let m = total - l;
            let d = if total == 4 { 1 } else { 2 };
            let mut sum = GenPoly::zero(d);
            for (i, mono) in graded_multilinear_basis(l, m, d).into_iter().enumerate() {
                sum.add_term(mono, q(i as i64 % 5 - 2))?;
            }
            let f = GradedGenPoly::new(sum);
            let once = tilde(&f)?;
            let reparsed = GradedGenPoly::parse(&once.to_string(), d)?;
            ensure(reparsed == once, || format!("serialization of tilde on gP_{{{l},{m}}}"))?;
            ensure(tilde(&reparsed)? == f, || format!("tilde is not an involution on gP_{{{l},{m}}}"))?;
            involutions += 1;
        }
    }

    let graded = graded_ut2_d()?;
    let even = GradedGenPoly::parse("y1 y2 - y2 y1", 2)?;
    ensure(tilde(&even)? == even, || "tilde moves an even polynomial".into())?;
    let (l, r) = tilde_sides(&even, &graded, 2)?;
    ensure(l == r, || format!("even desk case: {l} vs {r}"))?;

    let grassmann = grassmann_truncated(2)?;
    let odd = GradedGenPoly::parse("z1 z2 - z2 z1", 1)?;
    let (l, r) = tilde_sides(&odd, &grassmann, 2)?;
    ensure(l == r, || format!("Grassmann desk case: {l} vs {r}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let basis = graded_multilinear_basis(1, 1, 2);
    let mut outcomes = (0, 0);
    for trial in 0..64 {
        let mut f = GenPoly::zero(2);
        // Sparse draws reach identities as well as non-identities.
        let density = if trial % 2 == 0 { 2 } else { basis.len() };
        for mono in &basis {
            if rng.gen_range(0..basis.len()) < density {
                f.add_term(mono.clone(), q(rng.gen_range(-3..=3)))?;
            }
        }
        if f.is_empty() {
            continue;
        }
        let f = GradedGenPoly::new(f);
        let (l, r) = tilde_sides(&f, &graded, 2)?;
        ensure(l == r, || format!("random desk case {f}: {l} vs {r}"))?;
        if l {
            outcomes.0 += 1;
        } else {
            outcomes.1 += 1;
        }
    }

    for b in [Builtin::Ut2Self, Builtin::Ut2D, Builtin::Ut2F] {
        let act = builtin(b)?;
        let s = act.semidirect()?;
        let mut expected = vec![Q::zero(); act.dim_a()];
        expected.extend_from_slice(act.w_unit());
        ensure(s.a().find_unity() == Some(expected), || format!("{b}: unity of the semidirect product"))?;
    }
    for b in [Builtin::Ut2D, Builtin::Ut2F] {
        ensure(capelli_landing(&builtin(b)?)?, || format!("{b}: Capelli values leave A"))?;
    }
    Ok(format!(
        "involution on {involutions} graded spaces; desk cases hold ({} identities, {} non-identities among random draws); \
         semidirect unity and Capelli landing verified",
        outcomes.0, outcomes.1
    ))
}
