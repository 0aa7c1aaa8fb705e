//! The property registry: one seeded check per declared module invariant.
//!
//! Identities that hold exactly on integer data are checked with tolerance
//! zero; floating identities use the configured residual tolerance.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, RngCore};
use rand_chacha::ChaCha8Rng;

use super::sample;
use super::{PropertyResult, Status};
use crate::function::{algebra_identity, polarization_rhs, Norm, SFunction};
use crate::linalg::{
    hermitian_defect, max_abs, quadratic_form, CMatrix, CVector, HermitianSpectrum,
};
use crate::positive::{
    extendibility_lhs, godement_factorize, gram_pd, gram_rpd, is_extendible_rpd, is_pd, is_rpd,
    pd_form, positive_functional_check, replay_witness, rpd_form, tau_extend, tau_restrict,
    violates, CheckReport, Tolerance, RANGE_RESIDUAL, RECONSTRUCTION_BOUND,
};
use crate::representation::{
    apply_lambda, apply_rho, coefficient_function, extend_to_sr, is_restricted_representation,
    is_star_representation, lambda_r, lift_lambda, lift_rho, restrict_from_sr, rho_r,
};
use crate::semigroup::{
    chain_semilattice, cyclic_group, direct_product, validate_table, InverseSemigroup,
};

pub(crate) struct Context<'a> {
    pub s: &'a Arc<InverseSemigroup>,
    pub trials: usize,
    pub residual_tol: f64,
    pub psd_tol: Tolerance,
}

/// A registered suite property.
pub struct Property {
    /// Stable identifier of the module invariant this property checks.
    pub id: &'static str,
    pub statement: &'static str,
    pub(crate) run: fn(&Context, &mut ChaCha8Rng) -> Verdict,
}

impl Property {
    pub(crate) fn evaluate(&self, ctx: &Context, rng: &mut ChaCha8Rng) -> PropertyResult {
        let (status, tally, detail) = match (self.run)(ctx, rng) {
            Ok(tally) => (Status::Pass, tally, None),
            Err(Stop::Fail { tally, witness }) => (Status::Fail, tally, Some(witness)),
            Err(Stop::Skip(reason)) => (Status::Skip, Tally::default(), Some(reason)),
        };
        PropertyResult {
            id: self.id.to_string(),
            statement: self.statement.to_string(),
            status,
            trials: tally.trials,
            max_residual: tally.max_residual,
            detail,
        }
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Tally {
    trials: usize,
    max_residual: f64,
}

pub(crate) enum Stop {
    Fail { tally: Tally, witness: String },
    Skip(String),
}

pub(crate) type Verdict = Result<Tally, Stop>;

impl Tally {
    fn trial(&mut self) {
        self.trials += 1;
    }

    fn within(
        &mut self,
        residual: f64,
        tol: f64,
        witness: impl FnOnce() -> String,
    ) -> Result<(), Stop> {
        if residual.is_nan() || residual > tol {
            self.max_residual = if residual.is_nan() {
                f64::INFINITY
            } else {
                self.max_residual.max(residual)
            };
            return Err(Stop::Fail {
                tally: *self,
                witness: witness(),
            });
        }
        self.max_residual = self.max_residual.max(residual);
        Ok(())
    }

    fn require(&mut self, ok: bool, witness: impl FnOnce() -> String) -> Result<(), Stop> {
        if ok {
            Ok(())
        } else {
            Err(Stop::Fail {
                tally: *self,
                witness: witness(),
            })
        }
    }
}

fn show(values: &[Complex64]) -> String {
    let parts: Vec<String> = values
        .iter()
        .map(|v| {
            if v.im == 0.0 {
                format!("{}", v.re)
            } else {
                format!("{v}")
            }
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

fn diff(a: &SFunction, b: &SFunction) -> f64 {
    a.max_abs_diff(b).expect("same base")
}

fn one(x: f64) -> f64 {
    x.max(1.0)
}

const C0: Complex64 = Complex64::new(0.0, 0.0);

pub const PROPERTIES: &[Property] = &[
    Property {
        id: "semigroup.axioms",
        statement: "(xy)z = x(yz), x x* x = x, x* x x* = x*, x** = x, (xy)* = y* x*",
        run: semigroup_axioms,
    },
    Property {
        id: "semigroup.restricted_semigroup_valid",
        statement: "S_r is an inverse semigroup with zero z0 = n and z0* = z0",
        run: restricted_semigroup_valid,
    },
    Property {
        id: "semigroup.restricted_star_agrees",
        statement: "x* in S_r equals x* in S for every x in S",
        run: restricted_star_agrees,
    },
    Property {
        id: "semigroup.idempotents_commutative_closed",
        statement: "ef = fe and ef in E(S) for e, f in E(S); E(S) = { x* x }",
        run: idempotents_commutative_closed,
    },
    Property {
        id: "semigroup.product_zero_free",
        statement: "G x C has no zero for a nontrivial group G and a chain C",
        run: product_zero_free,
    },
    Property {
        id: "semigroup.restricted_product_matches_delta",
        statement: "δ_s • δ_t = δ_st if s* s = t t*, else 0",
        run: restricted_product_matches_delta,
    },
    Property {
        id: "algebra.associativity",
        statement: "(f • g) • h = f • (g • h) and (f * g) * h = f * (g * h)",
        run: associativity,
    },
    Property {
        id: "algebra.tilde_antimultiplicative",
        statement: "(f • g)~ = g~ • f~ and (f * g)~ = g~ * f~",
        run: tilde_antimultiplicative,
    },
    Property {
        id: "algebra.support_lemma",
        statement: "supp(f • g~) = (supp f) • (supp g)*",
        run: support_lemma,
    },
    Property {
        id: "algebra.polarization",
        statement: "4 f • g~ = Σ_k i^k (f + i^k g) • (f + i^k g)~",
        run: polarization,
    },
    Property {
        id: "algebra.submultiplicative_l1",
        statement: "||f • g||_1 <= ||f||_1 ||g||_1 and ||f * g||_1 <= ||f||_1 ||g||_1",
        run: submultiplicative_l1,
    },
    Property {
        id: "algebra.identity",
        statement: "1_E • f = f • 1_E = f with 1_E = Σ_{e in E(S)} δ_e",
        run: identity,
    },
    Property {
        id: "rep.commutation",
        statement: "λ~_r(f) ρ~_r(g) = ρ~_r(g) λ~_r(f)",
        run: commutation,
    },
    Property {
        id: "rep.rho_positivity",
        statement: "φ in P_r(S) implies ρ~_r(φ) >= 0",
        run: rho_positivity,
    },
    Property {
        id: "rep.gram_identity",
        statement: "<ρ~_r(φ) δ_x, δ_y> = (λ_r(y) φ)(x)",
        run: gram_identity,
    },
    Property {
        id: "rep.lambda_homomorphism",
        statement: "λ~_r(f • g) = λ~_r(f) λ~_r(g)",
        run: lambda_homomorphism,
    },
    Property {
        id: "rep.regular_restricted",
        statement: "λ_r, ρ_r are restricted representations; Σ_r(S) -> Σ_0(S_r) -> Σ_r(S) is the identity",
        run: regular_restricted,
    },
    Property {
        id: "rep.lambda_functional_matrix_agree",
        statement: "matrix and functional forms of λ_r(s), ρ_r(s) and λ~_r(f) coincide",
        run: lambda_functional_matrix_agree,
    },
    Property {
        id: "rep.coefficient_extendible",
        statement: "u(x) = <λ_r(x) ξ, ξ> = (ξ • ξ~)(x*) lies in P_{r,e}(S)",
        run: coefficient_extendible,
    },
    Property {
        id: "pd.godement_equivalence",
        statement: "φ in P_r(S) iff φ = ξ • ξ~ for some ξ",
        run: godement_equivalence,
    },
    Property {
        id: "pd.finite_collapse",
        statement: "u in P_r(S) implies conj(u) = M 1_E, u in P_{r,e}(S), c_min = Σ_{e in E(S)} u(e)",
        run: finite_collapse,
    },
    Property {
        id: "pd.group_coincidence",
        statement: "for a group, gram_pd(u) = gram_rpd(u) and P(S) = P_r(S)",
        run: group_coincidence,
    },
    Property {
        id: "pd.chain_characterization",
        statement: "on a chain (xy = max), u in P(S) iff u >= 0 and e <= f implies u(e) <= u(f); 1 in P_r(S)",
        run: chain_characterization,
    },
    Property {
        id: "pd.tau_isomorphism",
        statement: "τ : P_r(S) -> { v in P(S_r) : v(z0) = 0 } is an affine bijection preserving quadratic forms",
        run: tau_isomorphism,
    },
    Property {
        id: "pd.tuple_oracle",
        statement: "tuple quadratic forms equal the full-Gram form at aggregated coefficients and agree in sign with the verdicts",
        run: tuple_oracle,
    },
    Property {
        id: "pd.witness_replay",
        statement: "a rejected u ships c with Σ conj(c_i) c_j K_ij < -tol",
        run: witness_replay,
    },
    Property {
        id: "pd.functional_consistency",
        statement: "u in P_{r,e}(S) implies Σ_x (f~ • f)(x) u(x) >= 0; a failing f witnesses u not in P_r(S)",
        run: functional_consistency,
    },
];

/// Identifiers of every registered property, in registry order.
pub fn property_ids() -> Vec<&'static str> {
    PROPERTIES.iter().map(|p| p.id).collect()
}

fn semigroup_axioms(ctx: &Context, _: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let mut t = Tally::default();
    t.trial();
    let again = validate_table(&s.table_rows(), Some(s.star_map()));
    t.require(again.is_ok(), || {
        format!("revalidation failed: {}", again.clone().unwrap_err())
    })?;
    for x in s.elements() {
        let xs = s.star(x);
        t.require(
            s.mul(s.mul(x, xs), x) == x && s.mul(s.mul(xs, x), xs) == xs,
            || format!("regularity at {x}"),
        )?;
        t.require(s.star(xs) == x, || format!("x** != x at {x}"))?;
        for y in s.elements() {
            t.trial();
            t.require(s.star(s.mul(x, y)) == s.mul(s.star(y), xs), || {
                format!("(xy)* != y*x* at ({x}, {y})")
            })?;
            for z in s.elements() {
                t.require(s.mul(s.mul(x, y), z) == s.mul(x, s.mul(y, z)), || {
                    format!("associativity at ({x}, {y}, {z})")
                })?;
            }
        }
    }
    Ok(t)
}

fn restricted_semigroup_valid(ctx: &Context, _: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let n = s.len();
    let sr = s.restricted_semigroup();
    let mut t = Tally::default();
    t.trial();
    let again = validate_table(&sr.table_rows(), None);
    t.require(again.is_ok(), || {
        format!("S_r fails validation: {}", again.clone().unwrap_err())
    })?;
    t.require(
        sr.len() == n + 1 && sr.zero() == Some(n) && sr.star(n) == n,
        || format!("S_r has size {} and zero {:?}", sr.len(), sr.zero()),
    )?;
    for x in s.elements() {
        for y in s.elements() {
            t.trial();
            let expected = s.restricted_product(x, y).unwrap_or(n);
            t.require(sr.mul(x, y) == expected, || {
                format!("S_r product at ({x}, {y})")
            })?;
        }
    }
    Ok(t)
}

fn restricted_star_agrees(ctx: &Context, _: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let sr = s.restricted_semigroup();
    let mut t = Tally::default();
    for x in s.elements() {
        t.trial();
        t.require(sr.star(x) == s.star(x), || format!("star differs at {x}"))?;
    }
    Ok(t)
}

fn idempotents_commutative_closed(ctx: &Context, _: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let mut t = Tally::default();
    let idem = s.idempotents();
    for x in s.elements() {
        t.require(idem.contains(x) == s.is_idempotent(x), || {
            format!("idempotent cache wrong at {x}")
        })?;
        t.require(
            idem.contains(s.domain(x)) && idem.contains(s.range(x)),
            || format!("x*x or xx* not idempotent at {x}"),
        )?;
        if idem.contains(x) {
            t.require(s.domain(x) == x, || {
                format!("idempotent {x} is not its own domain")
            })?;
        }
    }
    for e in idem.iter() {
        for f in idem.iter() {
            t.trial();
            let ef = s.mul(e, f);
            t.require(ef == s.mul(f, e) && idem.contains(ef), || {
                format!("idempotents {e}, {f}")
            })?;
        }
    }
    Ok(t)
}

fn product_zero_free(ctx: &Context, _: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let mut t = Tally::default();
    if s.is_group() && s.len() > 1 {
        for k in 1..=3 {
            t.trial();
            let p = direct_product(s, &chain_semilattice(k).expect("k >= 1"));
            t.require(p.zero().is_none(), || format!("S x chain{k} has a zero"))?;
        }
    } else if s.is_chain() {
        for k in 2..=3 {
            t.trial();
            let p = direct_product(&cyclic_group(k).expect("k >= 1"), s);
            t.require(p.zero().is_none(), || format!("Z{k} x S has a zero"))?;
        }
    } else {
        return Err(Stop::Skip("neither a nontrivial group nor a chain".into()));
    }
    Ok(t)
}

fn restricted_product_matches_delta(ctx: &Context, _: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let mut t = Tally::default();
    for a in s.elements() {
        let da = SFunction::delta(s, a);
        for b in s.elements() {
            t.trial();
            let got = da
                .restricted_convolve(&SFunction::delta(s, b))
                .expect("same base");
            let expected = match s.restricted_product(a, b) {
                Some(ab) => SFunction::delta(s, ab),
                None => SFunction::zeros(s),
            };
            t.within(diff(&got, &expected), 0.0, || {
                format!("δ_{a} • δ_{b} = {}", show(got.values()))
            })?;
        }
    }
    Ok(t)
}

fn associativity(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let mut t = Tally::default();
    for _ in 0..ctx.trials {
        t.trial();
        let f = sample::integer(s, rng, 3, true);
        let g = sample::integer(s, rng, 3, true);
        let h = sample::integer(s, rng, 3, true);
        let left = f
            .restricted_convolve(&g)
            .and_then(|fg| fg.restricted_convolve(&h))
            .expect("same base");
        let right = g
            .restricted_convolve(&h)
            .and_then(|gh| f.restricted_convolve(&gh))
            .expect("same base");
        t.within(diff(&left, &right), 0.0, || {
            format!(
                "• at f={}, g={}, h={}",
                show(f.values()),
                show(g.values()),
                show(h.values())
            )
        })?;
        let left = f
            .convolve(&g)
            .and_then(|fg| fg.convolve(&h))
            .expect("same base");
        let right = g
            .convolve(&h)
            .and_then(|gh| f.convolve(&gh))
            .expect("same base");
        t.within(diff(&left, &right), 0.0, || {
            format!(
                "* at f={}, g={}, h={}",
                show(f.values()),
                show(g.values()),
                show(h.values())
            )
        })?;
    }
    Ok(t)
}

fn tilde_antimultiplicative(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let mut t = Tally::default();
    for _ in 0..ctx.trials {
        t.trial();
        let f = sample::gaussian(s, rng);
        let g = sample::gaussian(s, rng);
        let (ft, gt) = (f.tilde_involution(), g.tilde_involution());
        let left = f
            .restricted_convolve(&g)
            .expect("same base")
            .tilde_involution();
        let right = gt.restricted_convolve(&ft).expect("same base");
        t.within(diff(&left, &right), ctx.residual_tol, || {
            format!("• at f={}, g={}", show(f.values()), show(g.values()))
        })?;
        let left = f.convolve(&g).expect("same base").tilde_involution();
        let right = gt.convolve(&ft).expect("same base");
        t.within(diff(&left, &right), ctx.residual_tol, || {
            format!("* at f={}, g={}", show(f.values()), show(g.values()))
        })?;
    }
    Ok(t)
}

fn support_lemma(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let mut t = Tally::default();
    for k in 0..ctx.trials {
        t.trial();
        // nonnegative integers cannot cancel, so equality is exact; Gaussian
        // inputs check the inclusion that holds for every input
        let exact = k % 2 == 0;
        let (f, g) = if exact {
            (
                sample::nonnegative_sparse(s, rng),
                sample::nonnegative_sparse(s, rng),
            )
        } else {
            (sample::gaussian(s, rng), sample::gaussian(s, rng))
        };
        let product = f
            .restricted_convolve(&g.tilde_involution())
            .expect("same base");
        let support = product.support(0.0);
        let predicted = s.restricted_set_product(&f.support(0.0), &s.star_set(&g.support(0.0)));
        let ok = if exact {
            support == predicted
        } else {
            support.iter().all(|x| predicted.contains(x))
        };
        t.require(ok, || {
            format!(
                "f={}, g={}: supp(f • g~) = {support}, predicted {predicted}",
                show(f.values()),
                show(g.values())
            )
        })?;
    }
    Ok(t)
}

fn polarization(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let mut t = Tally::default();
    for _ in 0..ctx.trials {
        t.trial();
        let f = sample::gaussian(s, rng);
        let g = sample::gaussian(s, rng);
        let left = f
            .restricted_convolve(&g.tilde_involution())
            .expect("same base")
            .scale(Complex64::new(4.0, 0.0));
        let right = polarization_rhs(&f, &g).expect("same base");
        t.within(diff(&left, &right), ctx.residual_tol, || {
            format!("f={}, g={}", show(f.values()), show(g.values()))
        })?;
    }
    Ok(t)
}

fn submultiplicative_l1(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let mut t = Tally::default();
    for _ in 0..ctx.trials {
        t.trial();
        let f = sample::gaussian(s, rng);
        let g = sample::gaussian(s, rng);
        let bound = f.norm(Norm::L1) * g.norm(Norm::L1);
        for (op, product) in [("•", f.restricted_convolve(&g)), ("*", f.convolve(&g))] {
            let excess = (product.expect("same base").norm(Norm::L1) - bound).max(0.0);
            t.within(excess, ctx.residual_tol * one(bound), || {
                format!("{op} at f={}, g={}", show(f.values()), show(g.values()))
            })?;
        }
    }
    Ok(t)
}

fn identity(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let unit = algebra_identity(s);
    let mut t = Tally::default();
    for _ in 0..ctx.trials {
        t.trial();
        let f = sample::gaussian(s, rng);
        let left = unit.restricted_convolve(&f).expect("same base");
        let right = f.restricted_convolve(&unit).expect("same base");
        t.within(diff(&left, &f).max(diff(&right, &f)), 0.0, || {
            format!("f={}", show(f.values()))
        })?;
    }
    Ok(t)
}

fn commutation(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let mut t = Tally::default();
    for _ in 0..ctx.trials {
        t.trial();
        let f = sample::gaussian(s, rng);
        let g = sample::gaussian(s, rng);
        let l = lift_lambda(&f).into_matrix();
        let r = lift_rho(&g).into_matrix();
        let residual = max_abs(&(&l * &r - &r * &l));
        t.within(residual, ctx.residual_tol, || {
            format!("f={}, g={}", show(f.values()), show(g.values()))
        })?;
    }
    Ok(t)
}

fn rho_positivity(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let mut t = Tally::default();
    for k in 0..ctx.trials {
        let phi = if k % 2 == 0 {
            sample::factor_square(s, rng)
        } else {
            sample::mixed(s, rng)
        };
        let report = is_rpd(&phi, ctx.psd_tol);
        if !report.verdict {
            continue;
        }
        t.trial();
        let p = lift_rho(&phi).into_matrix();
        let spectrum = HermitianSpectrum::new(&p);
        let negative = (-spectrum.min()).max(0.0);
        let defect = hermitian_defect(&p) / 2.0;
        t.within(negative.max(defect), report.tolerance, || {
            format!("φ={}", show(phi.values()))
        })?;
    }
    Ok(t)
}

fn gram_identity(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let rho = rho_r(s);
    let mut t = Tally::default();
    for _ in 0..ctx.trials {
        t.trial();
        let phi = sample::integer(s, rng, 3, true);
        let p = lift_rho(&phi).into_matrix();
        let mut residual: f64 = 0.0;
        for y in s.elements() {
            let shifted = apply_lambda(y, &phi);
            for x in s.elements() {
                // <A δ_x, δ_y> = A[y, x]
                residual = residual.max((p[(y, x)] - shifted.get(x)).norm());
            }
        }
        residual = residual.max(max_abs(&(&p - gram_rpd(&phi))));
        residual = residual.max(max_abs(
            &(&p - rho.lift(&phi).expect("same base").into_matrix()),
        ));
        t.within(residual, 0.0, || format!("φ={}", show(phi.values())))?;
    }
    Ok(t)
}

fn lambda_homomorphism(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let mut t = Tally::default();
    for _ in 0..ctx.trials {
        t.trial();
        let f = sample::gaussian(s, rng);
        let g = sample::gaussian(s, rng);
        let fg = lift_lambda(&f.restricted_convolve(&g).expect("same base")).into_matrix();
        let product = lift_lambda(&f).into_matrix() * lift_lambda(&g).into_matrix();
        t.within(max_abs(&(fg - product)), ctx.residual_tol, || {
            format!("f={}, g={}", show(f.values()), show(g.values()))
        })?;
    }
    Ok(t)
}

fn regular_restricted(ctx: &Context, _: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let sr = Arc::new(s.restricted_semigroup());
    let mut t = Tally::default();
    for (name, pi) in [("λ_r", lambda_r(s)), ("ρ_r", rho_r(s))] {
        t.trial();
        let report = is_restricted_representation(&pi);
        t.require(report.verdict, || {
            format!(
                "{name}: {}",
                report
                    .violation
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default()
            )
        })?;
        let extended = match extend_to_sr(&pi, &sr) {
            Ok(e) => e,
            Err(e) => {
                return Err(Stop::Fail {
                    tally: t,
                    witness: format!("{name}: extension failed: {e}"),
                })
            }
        };
        let star = is_star_representation(&extended);
        t.require(star.verdict, || {
            format!(
                "{name} on S_r: {}",
                star.violation
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default()
            )
        })?;
        let back = restrict_from_sr(&extended, s);
        t.require(back.as_ref() == Ok(&pi), || {
            format!("{name}: restriction does not invert extension")
        })?;
    }
    Ok(t)
}

fn lambda_functional_matrix_agree(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let lambda = lambda_r(s);
    let rho = rho_r(s);
    let mut t = Tally::default();
    for _ in 0..ctx.trials {
        t.trial();
        let f = sample::gaussian(s, rng);
        let x = rng.random_range(0..s.len());
        let v = CVector::from_column_slice(f.values());
        let by_matrix =
            |m: &CMatrix| SFunction::new(s, (m * &v).iter().copied().collect()).expect("length n");
        let residual = diff(&by_matrix(lambda.get(x)), &apply_lambda(x, &f))
            .max(diff(&by_matrix(rho.get(x)), &apply_rho(x, &f)));
        t.within(residual, 0.0, || format!("s={x}, f={}", show(f.values())))?;
        let lifted = max_abs(
            &(lift_lambda(&f).into_matrix() - lambda.lift(&f).expect("same base").into_matrix()),
        );
        t.within(lifted, ctx.residual_tol, || {
            format!("lift at f={}", show(f.values()))
        })?;
    }
    Ok(t)
}

fn coefficient_extendible(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let lambda = lambda_r(s);
    let mut t = Tally::default();
    for _ in 0..ctx.trials {
        t.trial();
        let xi = sample::gaussian(s, rng);
        let u = coefficient_function(&lambda, xi.values()).expect("dimension n");
        let square = xi
            .restricted_convolve(&xi.tilde_involution())
            .expect("same base");
        let residual = diff(&u, &square.check_involution());
        t.within(residual, ctx.residual_tol * one(u.norm(Norm::Inf)), || {
            format!("ξ={}", show(xi.values()))
        })?;
        let report = is_extendible_rpd(&u, ctx.psd_tol);
        t.require(report.verdict, || {
            format!(
                "ξ={}: {}",
                show(xi.values()),
                report.detail.clone().unwrap_or_default()
            )
        })?;
    }
    Ok(t)
}

fn godement_equivalence(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let mut t = Tally::default();
    for k in 0..ctx.trials {
        t.trial();
        if k % 2 == 0 {
            // ξ • ξ~ is restricted positive definite and refactors
            let phi = sample::factor_square(s, rng);
            let report = is_extendible_rpd(&phi, ctx.psd_tol);
            t.require(report.verdict, || {
                format!("ξ • ξ~ rejected: φ={}", show(phi.values()))
            })?;
            match godement_factorize(&phi, ctx.psd_tol) {
                Ok(g) => t.within(g.reconstruction_error, RECONSTRUCTION_BOUND, || {
                    format!("φ={}", show(phi.values()))
                })?,
                Err(e) => {
                    return Err(Stop::Fail {
                        tally: t,
                        witness: format!("φ={}: {e}", show(phi.values())),
                    })
                }
            }
        } else {
            // a factorization exists exactly when the verdict is positive
            let u = sample::mixed(s, rng);
            let verdict = is_rpd(&u, ctx.psd_tol).verdict;
            let factored = godement_factorize(&u, ctx.psd_tol);
            t.require(verdict == factored.is_ok(), || {
                format!(
                    "u={}: is_rpd {verdict}, factorization {:?}",
                    show(u.values()),
                    factored.as_ref().err()
                )
            })?;
            if let Ok(g) = factored {
                t.within(g.reconstruction_error, RECONSTRUCTION_BOUND, || {
                    format!("u={}", show(u.values()))
                })?;
            }
        }
    }
    Ok(t)
}

fn finite_collapse(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let unit = CVector::from_column_slice(algebra_identity(s).values());
    let mut t = Tally::default();
    for k in 0..ctx.trials {
        let u = if k % 2 == 0 {
            sample::factor_square(s, rng)
        } else {
            sample::mixed(s, rng)
        };
        if !is_rpd(&u, ctx.psd_tol).verdict {
            continue;
        }
        t.trial();
        let scale = one(u.norm(Norm::Inf));
        let image = gram_rpd(&u) * &unit;
        let miss = u
            .values()
            .iter()
            .zip(image.iter())
            .map(|(a, b)| (a.conj() - b).norm())
            .fold(0.0, f64::max);
        t.within(miss, ctx.residual_tol * scale, || {
            format!("conj(u) != M 1_E at u={}", show(u.values()))
        })?;
        let report = is_extendible_rpd(&u, ctx.psd_tol);
        t.require(report.verdict, || {
            format!("not extendible: u={}", show(u.values()))
        })?;
        let expected: f64 = s.idempotent_list().iter().map(|&e| u.get(e).re).sum();
        let constant = report.constant.unwrap_or(f64::NAN);
        t.within(
            (constant - expected).abs(),
            RANGE_RESIDUAL * scale * s.len() as f64,
            || {
                format!(
                    "constant {constant} != Σ u(e) = {expected} at u={}",
                    show(u.values())
                )
            },
        )?;
    }
    Ok(t)
}

fn group_coincidence(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    if !s.is_group() {
        return Err(Stop::Skip("not a group".into()));
    }
    let mut t = Tally::default();
    for _ in 0..ctx.trials {
        t.trial();
        let u = sample::mixed(s, rng);
        let gap = max_abs(&(gram_pd(&u) - gram_rpd(&u)));
        t.within(gap, 0.0, || {
            format!("Gram matrices differ at u={}", show(u.values()))
        })?;
        let (pd, rpd) = (
            is_pd(&u, ctx.psd_tol).verdict,
            is_rpd(&u, ctx.psd_tol).verdict,
        );
        t.require(pd == rpd, || {
            format!("is_pd {pd}, is_rpd {rpd} at u={}", show(u.values()))
        })?;
    }
    Ok(t)
}

fn chain_characterization(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    if !s.is_chain() {
        return Err(Stop::Skip("not a chain".into()));
    }
    let mut t = Tally::default();
    t.trial();
    let ones = SFunction::from_fn(s, |_| Complex64::new(1.0, 0.0));
    t.require(is_rpd(&ones, ctx.psd_tol).verdict, || {
        "u = 1 rejected by is_rpd".into()
    })?;
    for _ in 0..ctx.trials {
        t.trial();
        let complex = rng.random_bool(0.2);
        let u = sample::integer(s, rng, 2, complex);
        let predicted = s
            .elements()
            .all(|x| u.get(x).im == 0.0 && u.get(x).re >= 0.0)
            && s.elements().all(|e| {
                s.elements().all(|f| {
                    !s.natural_order(e, f).expect("all idempotent") || u.get(e).re <= u.get(f).re
                })
            });
        let verdict = is_pd(&u, ctx.psd_tol).verdict;
        t.require(verdict == predicted, || {
            format!(
                "u={}: is_pd {verdict}, predicted {predicted}",
                show(u.values())
            )
        })?;
    }
    Ok(t)
}

fn tau_isomorphism(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    if s.zero().is_some() {
        return Err(Stop::Skip("S has a zero".into()));
    }
    let n = s.len();
    let sr = Arc::new(s.restricted_semigroup());
    let mut t = Tally::default();
    for _ in 0..ctx.trials {
        t.trial();
        let u = sample::integer(s, rng, 3, true);
        let w = sample::integer(s, rng, 3, true);
        let v = tau_extend(&u, &sr).expect("S_r of S");
        t.require(v.get(n) == C0, || "extension is nonzero at z0".into())?;
        let back = tau_restrict(&v, s).expect("S_r of S");
        t.within(diff(&back, &u), 0.0, || {
            format!(
                "restriction does not invert extension at u={}",
                show(u.values())
            )
        })?;

        let (a, b) = (
            Complex64::new(rng.random_range(0..=3) as f64, 0.0),
            Complex64::new(rng.random_range(0..=3) as f64, 0.0),
        );
        let combined =
            tau_extend(&u.scale(a).plus(&w.scale(b)).expect("same base"), &sr).expect("S_r of S");
        let separate = v
            .scale(a)
            .plus(&tau_extend(&w, &sr).expect("S_r of S").scale(b))
            .expect("same base");
        t.within(diff(&combined, &separate), 0.0, || {
            format!(
                "not affine at u={}, w={}",
                show(u.values()),
                show(w.values())
            )
        })?;

        // forms on S_r vanish on z0 and agree with the restricted forms on S
        let (tuple, coeffs) = sample::integer_tuple(&sr, rng, 6);
        let (kept, kept_coeffs): (Vec<usize>, Vec<Complex64>) = tuple
            .iter()
            .zip(&coeffs)
            .filter(|(&x, _)| x < n)
            .map(|(&x, &c)| (x, c))
            .unzip();
        let on_sr = pd_form(&v, &tuple, &coeffs);
        let on_s = rpd_form(&u, &kept, &kept_coeffs);
        t.within((on_sr - on_s).norm(), 0.0, || {
            format!("forms differ at u={}, tuple={tuple:?}", show(u.values()))
        })?;

        let h = sample::mixed(s, rng);
        let rpd = is_rpd(&h, ctx.psd_tol).verdict;
        let pd = is_pd(&tau_extend(&h, &sr).expect("S_r of S"), ctx.psd_tol).verdict;
        t.require(rpd == pd, || {
            format!("is_rpd {rpd}, is_pd on S_r {pd} at u={}", show(h.values()))
        })?;
    }
    Ok(t)
}

fn tuple_oracle(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let n = s.len();
    let mut t = Tally::default();
    for _ in 0..ctx.trials {
        t.trial();
        let u = sample::mixed(s, rng);
        let (tuple, coeffs) = sample::tuple(s, rng, 6);
        let aggregated = sample::aggregate(n, &tuple, &coeffs);
        let weight: f64 = aggregated.iter().map(|c| c.norm_sqr()).sum();
        let c = CVector::from_column_slice(&aggregated);
        let scale = ctx.residual_tol
            * one(u.norm(Norm::Inf) * coeffs.iter().map(|c| c.norm()).sum::<f64>().powi(2));
        let witness = || {
            format!(
                "u={}, tuple={tuple:?}, c={}",
                show(u.values()),
                show(&coeffs)
            )
        };

        for (form, gram, report) in [
            (
                pd_form(&u, &tuple, &coeffs),
                gram_pd(&u),
                is_pd(&u, ctx.psd_tol),
            ),
            (
                rpd_form(&u, &tuple, &coeffs),
                gram_rpd(&u),
                is_rpd(&u, ctx.psd_tol),
            ),
        ] {
            t.within((form - quadratic_form(&gram, &c)).norm(), scale, witness)?;
            if report.verdict {
                // an accepted Hermitian-part bound of -tol and a defect of at
                // most 2 tol per entry bound every tuple form
                let slack = 2.0 * n as f64 * report.tolerance * weight + scale;
                t.require(!violates(form, slack), || {
                    format!("{} accepted but form {form}: {}", report.check, witness())
                })?;
            } else {
                let q = replay_witness(&u, &report).expect("rejections carry a witness");
                t.require(violates(q, 0.0), || {
                    format!("{} witness form {q}: {}", report.check, witness())
                })?;
            }
        }

        let report = is_extendible_rpd(&u, ctx.psd_tol);
        if let Some(constant) = report.constant {
            let lhs = extendibility_lhs(&u, &tuple, &coeffs);
            let rhs = constant * rpd_form(&u, &tuple, &coeffs).re;
            let slack = RANGE_RESIDUAL * one(lhs.max(constant * report.tolerance * weight));
            t.within((lhs - rhs).max(0.0), slack, || {
                format!("extendibility: {lhs} > {rhs}: {}", witness())
            })?;
        }
    }
    Ok(t)
}

/// A Gram builder paired with the decision procedure that reads it.
type GramAndDecision = (
    fn(&SFunction) -> CMatrix,
    fn(&SFunction, Tolerance) -> CheckReport,
);

fn witness_replay(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let mut t = Tally::default();
    for k in 0..ctx.trials {
        t.trial();
        let base = if rng.random_bool(0.5) {
            sample::factor_square(s, rng)
        } else {
            sample::hermitian(s, rng)
        };
        let (gram, decide): GramAndDecision = if k % 2 == 0 {
            (gram_pd, is_pd)
        } else {
            (gram_rpd, is_rpd)
        };
        let u = sample::push_negative(&base, rng, gram, 1e-6);
        let report = decide(&u, ctx.psd_tol);
        t.require(!report.verdict, || {
            format!(
                "{} accepted a perturbed u={}",
                report.check,
                show(u.values())
            )
        })?;
        let q = replay_witness(&u, &report).expect("rejections carry a witness");
        t.require(q.re < -report.tolerance, || {
            format!(
                "{} witness form {q} at u={}",
                report.check,
                show(u.values())
            )
        })?;
    }
    Ok(t)
}

fn functional_consistency(ctx: &Context, rng: &mut ChaCha8Rng) -> Verdict {
    let s = ctx.s;
    let all: Vec<usize> = s.elements().collect();
    let mut t = Tally::default();
    for _ in 0..ctx.trials {
        t.trial();
        let u = sample::mixed(s, rng);
        let sampled = positive_functional_check(&u, 8, rng.next_u64(), ctx.psd_tol);
        let extendible = is_extendible_rpd(&u, ctx.psd_tol).verdict;
        if extendible {
            t.require(sampled.verdict, || {
                format!(
                    "extendible u={} fails the functional check",
                    show(u.values())
                )
            })?;
        }
        if let Some(f) = &sampled.witness {
            let q = rpd_form(&u, &all, f);
            t.require(
                violates(q, sampled.tolerance) && !is_rpd(&u, ctx.psd_tol).verdict,
                || format!("functional witness does not refute u={}", show(u.values())),
            )?;
        }
    }
    Ok(t)
}
