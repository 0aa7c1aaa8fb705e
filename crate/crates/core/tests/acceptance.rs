//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use invsemi::linalg::{CMatrix, HermitianSpectrum};
use invsemi::positive::{random_complex_function, replay_witness, violates};
use invsemi::suite::{sample, Status};
use invsemi::{
    builtin, chain_semilattice, coefficient_function, extend_to_sr, godement_factorize, gram_pd,
    gram_rpd, is_extendible_rpd, is_pd, is_restricted_representation, is_rpd,
    is_star_representation, lambda_r, lift_rho, random_rpd, restrict_from_sr, rho_r, run_suite,
    tau_extend, tau_restrict, validate_table, Complex64, InverseSemigroup, SFunction, SuiteConfig,
    Tolerance, DEFAULT_CORPUS,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{composable, max_diff, psd_exact, restricted_convolve, tilde, ZERO};

const ZERO_FREE: &[&str] = &["Z3xchain2", "Z2xchain3", "S3"];
const TOL: Tolerance = Tolerance::Relative(1e-9);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type Form = fn(&InverseSemigroup, &[Complex64], &[usize], &[Complex64]) -> Complex64;

fn load(name: &str) -> Arc<InverseSemigroup> {
    Arc::new(builtin(name).unwrap_or_else(|e| panic!("{name}: {e}")))
}

fn corpus() -> Vec<Arc<InverseSemigroup>> {
    DEFAULT_CORPUS.iter().map(|n| load(n)).collect()
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("runtime {elapsed:.2?} exceeds {limit:?}")
    })
}

/// On `chain_semilattice(k)`, `is_pd(u)` agrees with an exact principal-minor
/// test and with `u >= 0` plus monotonicity along the natural order.
fn chain_characterization() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut checked, mut positive) = (0, 0);
    for k in 2..=6 {
        let s = Arc::new(chain_semilattice(k).unwrap());
        let mut cases: Vec<(Vec<i64>, i64)> = (0..4usize.pow(k as u32))
            .map(|mut code| {
                let v = (0..k).map(|_| {
                    let digit = (code % 4) as i64 - 1;
                    code /= 4;
                    digit
                });
                (v.collect(), 1)
            })
            .collect();
        // random rationals p / 4, half of them nonincreasing with one nudge
        for trial in 0..400 {
            let mut v: Vec<i64> = (0..k).map(|_| rng.random_range(-3..=12)).collect();
            if trial % 2 == 0 {
                v.iter_mut().for_each(|x| *x = x.abs());
                v.sort_unstable_by(|a, b| b.cmp(a));
                let i = rng.random_range(0..k);
                v[i] += rng.random_range(-1..=1);
            }
            cases.push((v, 4));
        }
        for (numerators, denominator) in cases {
            let values: Vec<f64> = numerators
                .iter()
                .map(|&p| p as f64 / denominator as f64)
                .collect();
            let u = SFunction::from_real(&s, &values).unwrap();
            let verdict = is_pd(&u, TOL).verdict;
            let gram: Vec<Vec<i128>> = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| numerators[s.mul(s.star(i), j)] as i128)
                        .collect()
                })
                .collect();
            let exact = psd_exact(&gram);
            let characterized = numerators.iter().all(|&p| p >= 0)
                && s.elements().all(|e| {
                    s.elements()
                        .all(|f| !s.natural_order(e, f).unwrap() || numerators[e] <= numerators[f])
                });
            ensure(verdict == exact && exact == characterized, || {
                format!("chain{k}, u = {values:?}: is_pd {verdict}, exact {exact}, characterization {characterized}")
            })?;
            checked += 1;
            positive += verdict as usize;
        }
        let ones = SFunction::from_real(&s, &vec![1.0; k]).unwrap();
        ensure(is_rpd(&ones, TOL).verdict, || {
            format!("u = 1 rejected on chain{k}")
        })?;
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("{checked} functions on chain2..chain6 ({positive} positive definite), u = 1 restricted positive definite"))
}

/// On groups the two Gram matrices coincide and the two verdicts agree.
fn group_coincidence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut summary = Vec::new();
    for name in ["Z2", "Z6", "S3"] {
        let s = load(name);
        let mut positive = 0;
        for _ in 0..500 {
            let u = sample::mixed(&s, &mut rng);
            let (k, m) = (gram_pd(&u), gram_rpd(&u));
            for i in s.elements() {
                for j in s.elements() {
                    let expected = u.get(s.mul(s.star(i), j));
                    ensure(k[(i, j)] == expected && m[(i, j)] == expected, || {
                        format!("{name}: Gram entry ({i}, {j}) differs from u(x_i* x_j)")
                    })?;
                }
            }
            let (pd, rpd) = (is_pd(&u, TOL).verdict, is_rpd(&u, TOL).verdict);
            ensure(pd == rpd, || {
                format!("{name}: is_pd {pd} but is_rpd {rpd} at {:?}", u.values())
            })?;
            positive += pd as usize;
        }
        ensure(positive > 0 && positive < 500, || {
            format!("{name}: degenerate sample, {positive} of 500 positive")
        })?;
        summary.push(format!("{name} {positive}/500 positive"));
    }
    Ok(summary.join(", "))
}

/// `ξ • ξ~` is certified extendible, and certified `φ` refactor.
fn factorization_roundtrip() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (index, name) in ZERO_FREE.iter().enumerate() {
        let s = load(name);
        let mut rng = ChaCha8Rng::seed_from_u64(13 + index as u64);
        for _ in 0..200 {
            let xi = random_complex_function(&s, &mut rng);
            let oracle = restricted_convolve(&s, xi.values(), &tilde(&s, xi.values()));
            let phi = xi.restricted_convolve(&xi.tilde_involution()).unwrap();
            ensure(max_diff(phi.values(), &oracle) <= 1e-12, || {
                format!("{name}: ξ • ξ~ disagrees with the definition")
            })?;
            let report = is_extendible_rpd(&phi, TOL);
            ensure(report.verdict, || {
                format!("{name}: ξ • ξ~ rejected: {:?}", report.detail)
            })?;
        }
        for seed in 0..200 {
            let phi = random_rpd(&s, seed);
            let g =
                godement_factorize(&phi, TOL).map_err(|e| format!("{name}, seed {seed}: {e}"))?;
            let rebuilt = restricted_convolve(&s, g.xi.values(), &tilde(&s, g.xi.values()));
            let error = max_diff(phi.values(), &rebuilt);
            ensure(error <= 1e-8 && g.reconstruction_error <= 1e-8, || {
                format!("{name}, seed {seed}: reconstruction error {error:e}")
            })?;
            worst = worst.max(error);
        }
    }
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!(
        "600 certified, 600 refactored, max ||φ - ξ • ξ~||_∞ = {worst:.2e}"
    ))
}

fn suite_subset(corpus: &[&str], only: &[&str], seed: u64) -> Result<usize, String> {
    let config = SuiteConfig {
        corpus: corpus.iter().map(|s| s.to_string()).collect(),
        trials: 200,
        seed,
        only: only.iter().map(|s| s.to_string()).collect(),
        ..SuiteConfig::default()
    };
    let report = run_suite(&config).map_err(|e| e.to_string())?;
    let mut passed = 0;
    for entry in &report.entries {
        for p in &entry.properties {
            match p.status {
                Status::Fail => {
                    return Err(format!("{} on {}: {:?}", p.id, entry.semigroup, p.detail))
                }
                Status::Pass => {
                    ensure(p.trials > 0, || {
                        format!("{} on {} ran no trials", p.id, entry.semigroup)
                    })?;
                    passed += 1;
                }
                Status::Skip => {}
            }
        }
    }
    ensure(report.all_passed(), || "suite reported failures".into())?;
    Ok(passed)
}

/// Support lemma, polarization, commutation, positivity, Gram identity and
/// coefficient functions, at 200 trials per corpus semigroup.
fn lemma_suite() -> Outcome {
    let ids = [
        "algebra.support_lemma",
        "algebra.polarization",
        "rep.commutation",
        "rep.rho_positivity",
        "rep.gram_identity",
        "rep.coefficient_extendible",
    ];
    let passed = suite_subset(DEFAULT_CORPUS, &ids, 4)?;
    ensure(passed == ids.len() * DEFAULT_CORPUS.len(), || {
        format!("only {passed} property runs passed")
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for s in corpus() {
        let name = s.name().unwrap_or("?").to_string();
        let lambda = lambda_r(&s);
        for _ in 0..200 {
            // Gram identity on integer φ, exactly
            let phi = sample::integer(&s, &mut rng, 3, true);
            let p = lift_rho(&phi).into_matrix();
            for x in s.elements() {
                for y in s.elements() {
                    let expected = if s.mul(y, s.star(y)) == s.mul(x, s.star(x)) {
                        phi.get(s.mul(s.star(y), x))
                    } else {
                        ZERO
                    };
                    ensure(p[(y, x)] == expected, || {
                        format!("{name}: Gram identity fails at ({x}, {y})")
                    })?;
                }
            }
            // support lemma on nonnegative integers, exactly
            let f = sample::nonnegative_sparse(&s, &mut rng);
            let g = sample::nonnegative_sparse(&s, &mut rng);
            let product = restricted_convolve(&s, f.values(), &tilde(&s, g.values()));
            let support: Vec<usize> = s.elements().filter(|&x| product[x] != ZERO).collect();
            let mut predicted: Vec<usize> = Vec::new();
            for a in s.elements().filter(|&a| f.get(a) != ZERO) {
                for b in s.elements().filter(|&b| g.get(b) != ZERO) {
                    if composable(&s, a, s.star(b)) {
                        predicted.push(s.mul(a, s.star(b)));
                    }
                }
            }
            predicted.sort_unstable();
            predicted.dedup();
            ensure(support == predicted, || {
                format!(
                    "{name}: support lemma fails for f = {:?}, g = {:?}",
                    f.values(),
                    g.values()
                )
            })?;
            // coefficient functions of λ_r
            let xi = random_complex_function(&s, &mut rng);
            let u = coefficient_function(&lambda, xi.values()).unwrap();
            let expected: Vec<Complex64> = s
                .elements()
                .map(|x| {
                    s.elements()
                        .filter(|&y| composable(&s, x, y))
                        .map(|y| xi.get(y) * xi.get(s.mul(x, y)).conj())
                        .sum()
                })
                .collect();
            ensure(max_diff(u.values(), &expected) <= 1e-10, || {
                format!("{name}: coefficient function disagrees")
            })?;
            ensure(is_extendible_rpd(&u, TOL).verdict, || {
                format!("{name}: coefficient function not extendible")
            })?;
            let lifted = HermitianSpectrum::new(&lift_rho(&u.check_involution()).into_matrix());
            ensure(
                lifted.min() >= -1e-9 * lifted.spectral_radius().max(1.0),
                || format!("{name}: lift_rho of ξ • ξ~ not positive"),
            )?;
        }
    }
    Ok(format!("{passed} suite runs at 200 trials, plus exact Gram identity, support lemma and coefficient oracles"))
}

/// Extension by zero and restriction between `P_r(S)` and `P(S_r)`.
fn tau_correspondence() -> Outcome {
    let passed = suite_subset(
        &["Z2", "Z6", "S3", "Z3xchain2", "Z2xchain3"],
        &["pd.tau_isomorphism"],
        5,
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut checked = 0;
    for name in ZERO_FREE {
        let s = load(name);
        let n = s.len();
        let sr = Arc::new(s.restricted_semigroup());
        for _ in 0..200 {
            let u = sample::integer(&s, &mut rng, 4, true);
            let w = sample::integer(&s, &mut rng, 4, true);
            let v = tau_extend(&u, &sr).unwrap();
            ensure(
                tau_restrict(&v, &s).unwrap() == u && v.get(n) == ZERO,
                || format!("{name}: roundtrip fails"),
            )?;
            // convex combinations with dyadic weights are exact
            let t = Complex64::new(rng.random_range(0..=4) as f64 / 4.0, 0.0);
            let mix = u
                .scale(t)
                .plus(&w.scale(Complex64::new(1.0, 0.0) - t))
                .unwrap();
            let lhs = tau_extend(&mix, &sr).unwrap();
            let rhs = v
                .scale(t)
                .plus(
                    &tau_extend(&w, &sr)
                        .unwrap()
                        .scale(Complex64::new(1.0, 0.0) - t),
                )
                .unwrap();
            ensure(lhs == rhs, || format!("{name}: extension is not affine"))?;
            // quadratic forms agree exactly, tuples may include the zero
            let len = rng.random_range(1..=6);
            let tuple: Vec<usize> = (0..len).map(|_| rng.random_range(0..=n)).collect();
            let c: Vec<Complex64> = (0..len)
                .map(|_| {
                    Complex64::new(
                        rng.random_range(-3..=3) as f64,
                        rng.random_range(-3..=3) as f64,
                    )
                })
                .collect();
            let (kept, kept_c): (Vec<usize>, Vec<Complex64>) = tuple
                .iter()
                .zip(&c)
                .filter(|(&x, _)| x < n)
                .map(|(&x, &ci)| (x, ci))
                .unzip();
            let on_sr = common::pd_form(&sr, v.values(), &tuple, &c);
            let on_s = common::rpd_form(&s, u.values(), &kept, &kept_c);
            ensure(on_sr == on_s, || {
                format!("{name}: forms differ, {on_sr} vs {on_s}")
            })?;
            let (k, m) = (gram_pd(&v), gram_rpd(&u));
            let padded = (0..=n).all(|i| {
                (0..=n).all(|j| k[(i, j)] == if i < n && j < n { m[(i, j)] } else { ZERO })
            });
            ensure(padded, || {
                format!("{name}: gram_pd on S_r is not gram_rpd padded by zero")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{passed} suite runs at 200 trials, {checked} exact oracle instances"
    ))
}

/// `S_r` validity, regular representations, extension roundtrip and the
/// point-mass product rule.
fn structural() -> Outcome {
    for s in corpus() {
        let name = s.name().unwrap_or("?").to_string();
        let n = s.len();
        let sr = Arc::new(s.restricted_semigroup());
        let again = validate_table(&sr.table_rows(), None)
            .map_err(|e| format!("{name}: S_r invalid: {e}"))?;
        ensure(again.zero() == Some(n), || {
            format!("{name}: S_r zero is {:?}", again.zero())
        })?;
        for (label, pi) in [("λ_r", lambda_r(&s)), ("ρ_r", rho_r(&s))] {
            let report = is_restricted_representation(&pi);
            ensure(report.verdict, || {
                format!("{name}: {label}: {:?}", report.violation)
            })?;
            let extended = extend_to_sr(&pi, &sr).map_err(|e| format!("{name}: {label}: {e}"))?;
            ensure(is_star_representation(&extended).verdict, || {
                format!("{name}: extended {label} is not a representation of S_r")
            })?;
            let back =
                restrict_from_sr(&extended, &s).map_err(|e| format!("{name}: {label}: {e}"))?;
            ensure(back == pi, || {
                format!("{name}: {label} roundtrip is not exact")
            })?;
        }
    }
    let mut pairs = 0;
    for name in ["I2", "I3"] {
        let s = load(name);
        for a in s.elements() {
            for b in s.elements() {
                let got = SFunction::delta(&s, a)
                    .restricted_convolve(&SFunction::delta(&s, b))
                    .unwrap();
                let mut expected = vec![ZERO; s.len()];
                if composable(&s, a, b) {
                    expected[s.mul(a, b)] = Complex64::new(1.0, 0.0);
                }
                ensure(got.values() == expected.as_slice(), || {
                    format!("{name}: δ_{a} • δ_{b} wrong")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{} corpus semigroups, {pairs} point-mass pairs on I2 and I3",
        DEFAULT_CORPUS.len()
    ))
}

/// Random tuples: definitional forms against the full-Gram verdicts.
fn tuple_oracle() -> Outcome {
    let corpus = corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (mut rejected, mut negative_tuples) = (0, 0);
    for instance in 0..1000 {
        let s = &corpus[instance % corpus.len()];
        let n = s.len();
        let name = s.name().unwrap_or("?");
        let u = sample::mixed(s, &mut rng);
        let (tuple, c) = sample::tuple(s, &mut rng, 6);
        let weight: f64 = sample::aggregate(n, &tuple, &c)
            .iter()
            .map(|x| x.norm_sqr())
            .sum();
        let all: Vec<usize> = s.elements().collect();
        let reports = [
            (is_pd(&u, TOL), common::pd_form as Form),
            (is_rpd(&u, TOL), common::rpd_form as Form),
        ];
        for (report, form) in reports {
            let q = form(s, u.values(), &tuple, &c);
            let slack = 2.0 * n as f64 * report.tolerance * weight + 1e-10;
            if violates(q, slack) {
                negative_tuples += 1;
                ensure(!report.verdict, || {
                    format!("{name}: {} accepted but tuple form is {q}", report.check)
                })?;
            }
            if !report.verdict {
                rejected += 1;
                let witness = report
                    .witness
                    .as_ref()
                    .ok_or_else(|| format!("{name}: {} rejection without witness", report.check))?;
                let q = form(s, u.values(), &all, witness);
                ensure(violates(q, report.tolerance), || {
                    format!("{name}: {} witness form {q}", report.check)
                })?;
            }
        }
        let report = is_extendible_rpd(&u, TOL);
        if let Some(constant) = report.constant {
            let lhs = tuple
                .iter()
                .zip(&c)
                .map(|(&x, ci)| ci * u.get(x))
                .sum::<Complex64>()
                .norm_sqr();
            let rhs = constant * common::rpd_form(s, u.values(), &tuple, &c).re;
            ensure(lhs <= rhs + 1e-8 * lhs.max(1.0), || {
                format!("{name}: extendibility inequality {lhs} > {rhs}")
            })?;
        }
    }
    Ok(format!("1000 instances, {rejected} rejections with refuting witnesses, {negative_tuples} negative tuple forms all rejected"))
}

/// Fuzzed negatives carry refuting witnesses; suite output is reproducible.
fn determinism_and_witnesses() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let mut fuzzed = 0;
    for s in corpus() {
        let name = s.name().unwrap_or("?").to_string();
        let all: Vec<usize> = s.elements().collect();
        for k in 0..60 {
            let start = if k % 2 == 0 {
                sample::factor_square(&s, &mut rng)
            } else {
                sample::hermitian(&s, &mut rng)
            };
            let (gram, form): (fn(&SFunction) -> CMatrix, Form) = if k % 3 == 0 {
                (gram_pd, common::pd_form)
            } else {
                (gram_rpd, common::rpd_form)
            };
            let u = sample::push_negative(&start, &mut rng, gram, 1e-6);
            ensure(HermitianSpectrum::new(&gram(&u)).min() < -1e-6, || {
                format!("{name}: perturbation too small")
            })?;
            let report = match k % 3 {
                0 => is_pd(&u, TOL),
                1 => is_rpd(&u, TOL),
                _ => is_extendible_rpd(&u, TOL),
            };
            ensure(!report.verdict, || {
                format!("{name}: {} accepted a perturbed function", report.check)
            })?;
            let witness = report
                .witness
                .as_ref()
                .ok_or_else(|| format!("{name}: missing witness"))?;
            let q = form(&s, u.values(), &all, witness);
            ensure(q.re < -report.tolerance, || {
                format!("{name}: {} witness form {q}", report.check)
            })?;
            ensure(
                replay_witness(&u, &report).is_some_and(|r| (r - q).norm() <= 1e-10),
                || format!("{name}: replay disagrees"),
            )?;
            fuzzed += 1;
        }
    }
    let config = SuiteConfig {
        seed: 2024,
        ..SuiteConfig::default()
    };
    let first = run_suite(&config).map_err(|e| e.to_string())?;
    let second = run_suite(&config).map_err(|e| e.to_string())?;
    ensure(first.to_json() == second.to_json(), || {
        "suite JSON differs between runs".into()
    })?;
    ensure(first.all_passed(), || {
        format!("default suite failed:\n{}", first.to_text())
    })?;
    Ok(format!(
        "{fuzzed} fuzzed negatives refuted, default suite byte-identical ({} bytes, {} passed)",
        first.to_json().len(),
        first.summary.passed
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("chain characterization", chain_characterization),
        ("group coincidence", group_coincidence),
        (
            "square-root factorization roundtrip",
            factorization_roundtrip,
        ),
        ("lemma suite", lemma_suite),
        ("tau correspondence", tau_correspondence),
        ("structural checks", structural),
        ("tuple oracle soundness", tuple_oracle),
        ("determinism and witnesses", determinism_and_witnesses),
    ];
    let mut failed = 0;
    for (index, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {} ({name}): PASS [{elapsed:.2}s] {detail}",
                index + 1
            ),
            Err(reason) => {
                failed += 1;
                println!(
                    "criterion {} ({name}): FAIL [{elapsed:.2}s] {reason}",
                    index + 1
                );
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
