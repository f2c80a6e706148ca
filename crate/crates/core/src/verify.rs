//! Randomized and exhaustive verification suites for the algebraic
//! identities of the calculus.
//!
//! A suite runs `trials` independent trials. Each trial owns a ChaCha stream
//! derived from `(seed, suite, trial)`, so reports are identical whether the
//! trials run sequentially or on the rayon pool.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;

use crate::c0::{inner_product, normal_projection_apply, sup_norm, OrthoSystem, Vec0};
use crate::error::Error;
use crate::field::{FieldElem, NormExp, Valuation};
use crate::measure::{
    clopen_partitions, gelfand_transform, integrate, is_refinement, lagrange_interpolate, measure_of, psi, riemann_sum,
    CFunc, Clopen, TaggedPartition,
};
use crate::operators::{check_self_adjoint, OpSY};
use crate::random::{self, TrialRng};
use crate::spectral::{gelfand_eval, resolvent, spectral_norm, vandermonde_projection, PointRef, Spectrum};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Suite {
    NormUnitization,
    PowerMult,
    ResolventIdentity,
    GelfandIsometry,
    MeasureAdditivity,
    OscillationBound,
    Vandermonde,
    AtomInseparability,
    FieldFoundations,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::NormUnitization,
        Suite::PowerMult,
        Suite::ResolventIdentity,
        Suite::GelfandIsometry,
        Suite::MeasureAdditivity,
        Suite::OscillationBound,
        Suite::Vandermonde,
        Suite::AtomInseparability,
        Suite::FieldFoundations,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::NormUnitization => "norm-unitization",
            Suite::PowerMult => "power-mult",
            Suite::ResolventIdentity => "resolvent-identity",
            Suite::GelfandIsometry => "gelfand-isometry",
            Suite::MeasureAdditivity => "measure-additivity",
            Suite::OscillationBound => "oscillation-bound",
            Suite::Vandermonde => "vandermonde",
            Suite::AtomInseparability => "atom-inseparability",
            Suite::FieldFoundations => "field-foundations",
        }
    }

    fn salt(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).unwrap() as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SuiteConfig {
    /// Upper bound on the number of distinct nonzero eigenvalues / rank.
    pub rank: usize,
    pub trials: usize,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            rank: 4,
            trials: 50,
            seed: DEFAULT_SEED,
        }
    }
}

/// How trials are scheduled. `Parallel` falls back to sequential execution
/// when the crate is built without the `parallel` feature.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Failure {
    pub trial: usize,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub config: SuiteConfig,
    /// Individual assertions evaluated across all trials.
    pub checks: usize,
    /// Assertions evaluated per invariant name.
    pub invariants: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Failures recorded against one invariant.
    pub fn failures_of<'a>(&'a self, invariant: &'a str) -> impl Iterator<Item = &'a Failure> + 'a {
        self.failures.iter().filter(move |f| f.check == invariant)
    }
}

#[derive(Default)]
struct Checker {
    trial: usize,
    checks: usize,
    counts: BTreeMap<&'static str, usize>,
    failures: Vec<Failure>,
}

impl Checker {
    fn check<D: FnOnce() -> String>(&mut self, name: &'static str, ok: bool, detail: D) {
        self.checks += 1;
        *self.counts.entry(name).or_default() += 1;
        // one counterexample per check name per trial is enough
        if !ok && !self.failures.iter().any(|f| f.check == name) {
            self.failures.push(Failure {
                trial: self.trial,
                check: name.to_string(),
                detail: detail(),
            });
        }
    }

    fn expect_ok<T>(&mut self, name: &'static str, r: Result<T, Error>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(name, false, || format!("unexpected error: {e}"));
                None
            }
        }
    }
}

fn run_trials<F>(exec: Execution, trials: usize, f: F) -> Vec<Checker>
where
    F: Fn(usize) -> Checker + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..trials).into_par_iter().map(f).collect()
        }
        _ => (0..trials).map(f).collect(),
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig, exec: Execution) -> SuiteReport {
    let trial_fn: fn(&mut Checker, &mut TrialRng, &SuiteConfig) = match suite {
        Suite::NormUnitization => norm_unitization,
        Suite::PowerMult => power_mult,
        Suite::ResolventIdentity => resolvent_identity,
        Suite::GelfandIsometry => gelfand_isometry,
        Suite::MeasureAdditivity => measure_additivity,
        Suite::OscillationBound => oscillation_bound,
        Suite::Vandermonde => vandermonde,
        Suite::AtomInseparability => atom_inseparability,
        Suite::FieldFoundations => field_foundations,
    };
    let seed = config.seed ^ suite.salt().wrapping_mul(0x9e37_79b9_7f4a_7c15);
    let results = run_trials(exec, config.trials, |trial| {
        let mut c = Checker {
            trial,
            ..Checker::default()
        };
        let mut rng = random::trial_rng(seed, trial as u64);
        trial_fn(&mut c, &mut rng, config);
        c
    });
    let mut report = SuiteReport {
        suite,
        config: *config,
        checks: 0,
        invariants: BTreeMap::new(),
        failures: Vec::new(),
    };
    for c in results {
        report.checks += c.checks;
        for (name, n) in c.counts {
            *report.invariants.entry(name.to_string()).or_default() += n;
        }
        report.failures.extend(c.failures);
    }
    report
}

fn fmt_op(op: &OpSY) -> String {
    format!("{op:?}")
}

/// Number of nonzero spectrum points for exhaustive suites: cycles through
/// `0..=rank` so every size is covered.
fn cycled_points(c: &Checker, rank: usize) -> usize {
    c.trial % (rank + 1)
}

// ---- norm-unitization -----------------------------------------------------

fn norm_unitization(c: &mut Checker, rng: &mut TrialRng, cfg: &SuiteConfig) {
    let rank = rng.gen_range(0..=cfg.rank);
    let sys = Arc::new(random::ortho_system(rng, rank));
    let s = random::operator(rng, &sys);
    let (a, b) = (s.norm(), s.norm_by_basis());
    c.check("max-formula-equals-basis-sup", a == b, || {
        format!("{} : max formula {a}, basis sup {b}", fmt_op(&s))
    });
    c.check("self-adjoint", check_self_adjoint(&s, 2), || fmt_op(&s));
}

// ---- power-mult -----------------------------------------------------------

fn power_mult(c: &mut Checker, rng: &mut TrialRng, cfg: &SuiteConfig) {
    let rank = rng.gen_range(0..=cfg.rank);
    let sys = Arc::new(random::ortho_system(rng, rank));
    let s = random::operator(rng, &sys);
    let base = s.norm();
    let mut power = s.clone();
    for n in 2..=6u32 {
        power = power.compose(&s).expect("same system");
        let got = power.norm();
        c.check("power-multiplicative", got == base.pow(n), || {
            format!(
                "{} : n={n}, |S^n| exponent {got}, n*|S| exponent {}",
                fmt_op(&s),
                base.pow(n)
            )
        });
    }
    c.check("pow-matches-iterated-compose", s.pow(6).as_ref() == Ok(&power), || {
        fmt_op(&s)
    });

    let s2 = random::operator(rng, &sys);
    let s3 = random::operator(rng, &sys);
    let c12 = s.compose(&s2).unwrap();
    c.check("commutative", c12 == s2.compose(&s).unwrap(), || {
        format!("{} and {}", fmt_op(&s), fmt_op(&s2))
    });
    c.check(
        "associative",
        c12.compose(&s3).unwrap() == s.compose(&s2.compose(&s3).unwrap()).unwrap(),
        || fmt_op(&s3),
    );
    c.check(
        "distributive",
        s.compose(&s2.add(&s3).unwrap()).unwrap() == c12.add(&s.compose(&s3).unwrap()).unwrap(),
        || fmt_op(&s3),
    );
    c.check("unit", s.compose(&OpSY::identity(sys.clone())).unwrap() == s, || {
        fmt_op(&s)
    });
    for n in 1..=sys.support_end() {
        let e = Vec0::basis(n);
        c.check(
            "compose-matches-pointwise",
            c12.apply(&e) == s.apply(&s2.apply(&e)),
            || format!("e_{n}: {} after {}", fmt_op(&s), fmt_op(&s2)),
        );
    }
    let coeffs = random::poly_coeffs(rng, 4);
    let mut term = OpSY::identity(sys.clone());
    let mut expanded = OpSY::zero(sys.clone());
    for k in &coeffs {
        expanded = expanded.add(&term.scale(k)).unwrap();
        term = term.compose(&s).unwrap();
    }
    c.check(
        "polynomial-matches-power-sum",
        s.polynomial(&coeffs) == expanded,
        || format!("{} coefficients {coeffs:?}", fmt_op(&s)),
    );
}

// ---- resolvent-identity ---------------------------------------------------

fn resolvent_identity(c: &mut Checker, rng: &mut TrialRng, cfg: &SuiteConfig) {
    let points = rng.gen_range(0..=cfg.rank);
    let extra = rng.gen_range(0..=1);
    let t = random::compact_operator(rng, points, extra);
    let sigma = Spectrum::of(&t).unwrap();
    let z = loop {
        let z = if sigma.n() > 0 && rng.gen_bool(0.4) {
            // close to an eigenvalue but off the spectrum
            let k = rng.gen_range(1..=sigma.n());
            &sigma.point(k).value + &random::nonzero_with_valuation(rng, 2..=5)
        } else {
            random::nonzero_with_valuation(rng, -2..=3)
        };
        if !sigma.contains(&z) {
            break z;
        }
    };
    let Some(r) = c.expect_ok("resolvent-exists", resolvent(&t, &z)) else {
        return;
    };
    let sys = t.system().clone();
    let id = OpSY::identity(sys);
    let zi_minus_t = t.scale(&FieldElem::from_int(-1)).add_scalar(&z);
    c.check("left-inverse", zi_minus_t.compose(&r).unwrap() == id, || {
        format!("T={} z={z} R={}", fmt_op(&t), fmt_op(&r))
    });
    c.check("right-inverse", r.compose(&zi_minus_t).unwrap() == id, || {
        format!("T={} z={z} R={}", fmt_op(&t), fmt_op(&r))
    });
    c.check("alpha-is-1/z", (r.alpha() * &z).is_one(), || {
        format!("z={z} alpha={}", r.alpha())
    });
    for (l, rl) in t.lambda().iter().zip(r.lambda()) {
        // r·z·(z − λ) = λ, checked by multiplying back
        let back = &(rl * &z) * &(&z - l);
        c.check("lambda-entry-formula", &back == l, || {
            format!("z={z} lambda={l} entry={rl}")
        });
    }
    if sigma.n() > 0 {
        let k = rng.gen_range(1..=sigma.n());
        let at = sigma.point(k).value.clone();
        c.check(
            "spectrum-point-rejected",
            matches!(resolvent(&t, &at), Err(Error::SpectrumPoint { .. })),
            || format!("z={at}"),
        );
    }
    c.check(
        "zero-rejected",
        matches!(resolvent(&t, &FieldElem::zero()), Err(Error::SpectrumPoint { .. })),
        String::new,
    );
}

// ---- gelfand-isometry -----------------------------------------------------

fn eval_poly(coeffs: &[FieldElem], x: &FieldElem) -> FieldElem {
    coeffs.iter().rev().fold(FieldElem::zero(), |acc, a| &(&acc * x) + a)
}

fn gelfand_isometry(c: &mut Checker, rng: &mut TrialRng, cfg: &SuiteConfig) {
    let points = rng.gen_range(0..=cfg.rank);
    let extra = rng.gen_range(0..=2);
    let t = random::compact_operator(rng, points, extra);
    let sigma = Spectrum::of(&t).unwrap();
    let sys = t.system().clone();
    let p1 = random::poly_coeffs(rng, 6);
    let p2 = random::poly_coeffs(rng, 6);
    let h1 = t.polynomial(&p1);
    let h2 = t.polynomial(&p2);

    let Some(sn) = c.expect_ok("spectral-norm", spectral_norm(&h1, &sigma)) else {
        return;
    };
    c.check("spectral-norm-equals-norm", sn == h1.norm(), || {
        format!("H={} spectral {sn} norm {}", fmt_op(&h1), h1.norm())
    });

    let prod = h1.compose(&h2).unwrap();
    let sum = h1.add(&h2).unwrap();
    let id = OpSY::identity(sys.clone());
    let mut realized = BTreeSet::new();
    for p in sigma.refs() {
        let x = sigma.value(p);
        let g1 = gelfand_eval(&h1, &sigma, p).unwrap();
        let g2 = gelfand_eval(&h2, &sigma, p).unwrap();
        c.check("character-is-evaluation", g1 == eval_poly(&p1, &x), || {
            format!("p={p} H={}", fmt_op(&h1))
        });
        c.check(
            "multiplicative",
            gelfand_eval(&prod, &sigma, p).unwrap() == &g1 * &g2,
            || format!("p={p}"),
        );
        c.check("additive", gelfand_eval(&sum, &sigma, p).unwrap() == &g1 + &g2, || {
            format!("p={p}")
        });
        c.check("unital", gelfand_eval(&id, &sigma, p).unwrap().is_one(), || {
            format!("p={p}")
        });
        c.check("character-bound", NormExp::from(g1.valuation()) >= h1.norm(), || {
            format!("p={p} |phi(H)| exponent {} norm {}", g1.valuation(), h1.norm())
        });
        let on_t = gelfand_eval(&t, &sigma, p).unwrap();
        c.check("f_T-is-identity", on_t == x, || format!("p={p}"));
        realized.insert(on_t.to_string());
    }
    c.check("characters-injective", realized.len() == sigma.size(), || {
        format!("{} characters for {} points", realized.len(), sigma.size())
    });

    // Tables: lagrange ∘ Ψ is the identity, Ψ is isometric and G∘Ψ = id.
    let f = CFunc::from_fn(&sigma, |_, _| Ok(random::elem(rng, 0.3))).unwrap();
    let Some(pf) = c.expect_ok("psi", psi(&f, &t)) else {
        return;
    };
    c.check("psi-isometry", pf.norm() == f.sup_norm(&sigma), || {
        format!("f={f:?} |Psi f| {} |f| {}", pf.norm(), f.sup_norm(&sigma))
    });
    c.check(
        "gelfand-inverts-psi",
        gelfand_transform(&pf, &t).as_ref() == Ok(&f),
        || format!("f={f:?}"),
    );
    let Some(coeffs) = c.expect_ok("lagrange", lagrange_interpolate(&f, &t)) else {
        return;
    };
    c.check("lagrange-degree", coeffs.len() <= sigma.size(), || {
        format!("{} coefficients", coeffs.len())
    });
    c.check(
        "lagrange-table-identity",
        CFunc::from_poly(&coeffs, &sigma) == f,
        || format!("f={f:?}"),
    );
    c.check("lagrange-operator-is-psi", t.polynomial(&coeffs) == pf, || {
        format!("f={f:?}")
    });
    let g = CFunc::from_fn(&sigma, |_, _| Ok(random::elem(rng, 0.3))).unwrap();
    c.check(
        "psi-multiplicative",
        psi(&f.mul(&g), &t).unwrap() == pf.compose(&psi(&g, &t).unwrap()).unwrap(),
        || format!("f={f:?} g={g:?}"),
    );
}

// ---- measure-additivity ---------------------------------------------------

fn measure_additivity(c: &mut Checker, rng: &mut TrialRng, cfg: &SuiteConfig) {
    let points = cycled_points(c, cfg.rank);
    let extra = rng.gen_range(0..=2);
    let t = random::compact_operator(rng, points, extra);
    let sigma = Spectrum::of(&t).unwrap();
    let sys = t.system().clone();
    let clopens = Clopen::enumerate(&sigma);
    let measures: Vec<OpSY> = clopens.iter().map(|cl| measure_of(cl, &t).unwrap()).collect();
    let index = |cl: &Clopen| clopens.iter().position(|x| x == cl).unwrap();
    let zero = OpSY::zero(sys.clone());
    let id = OpSY::identity(sys.clone());

    c.check("empty-is-zero", measures[index(&Clopen::empty())] == zero, String::new);
    c.check(
        "whole-is-identity",
        measures[index(&Clopen::whole(&sigma))] == id,
        String::new,
    );
    for (a, ma) in clopens.iter().zip(&measures) {
        c.check("idempotent", ma.compose(ma).unwrap() == *ma, || format!("C={a:?}"));
        let norm = ma.norm();
        let expected = if a.is_empty() {
            NormExp::Infinite
        } else {
            NormExp::from_int(0)
        };
        c.check("bounded-by-one", norm == expected, || format!("C={a:?} norm {norm}"));
        c.check(
            "psi-of-indicator",
            psi(&CFunc::indicator(a, &sigma), &t).unwrap() == *ma,
            || format!("C={a:?}"),
        );
        c.check(
            "complement",
            ma.add(&measures[index(&a.complement(&sigma))]).unwrap() == id,
            || format!("C={a:?}"),
        );
        for (b, mb) in clopens.iter().zip(&measures) {
            let meet = &measures[index(&a.intersection(b))];
            c.check("intersection-is-composition", ma.compose(mb).unwrap() == *meet, || {
                format!("C1={a:?} C2={b:?}")
            });
            if a.is_disjoint(b) {
                let join = &measures[index(&a.union(b))];
                c.check("additive", ma.add(mb).unwrap() == *join, || {
                    format!("C1={a:?} C2={b:?}")
                });
            }
        }
    }
    // finite additivity over every partition of every clopen set
    for cl in &clopens {
        let m = &measures[index(cl)];
        for cells in clopen_partitions(cl) {
            let total = cells
                .iter()
                .fold(zero.clone(), |acc, cell| acc.add(&measures[index(cell)]).unwrap());
            c.check("finitely-additive", total == *m, || format!("C={cl:?} cells={cells:?}"));
        }
    }
    c.check(
        "integral-of-one",
        integrate(&CFunc::constant(FieldElem::one()), &Clopen::whole(&sigma), &t).as_ref() == Ok(&id),
        String::new,
    );
    c.check(
        "integral-of-identity",
        integrate(&CFunc::identity(&sigma), &Clopen::whole(&sigma), &t).as_ref() == Ok(&t),
        || fmt_op(&t),
    );
}

// ---- oscillation-bound ----------------------------------------------------

fn oscillation_bound(c: &mut Checker, rng: &mut TrialRng, cfg: &SuiteConfig) {
    let points = cycled_points(c, cfg.rank);
    let extra = rng.gen_range(0..=1);
    let t = random::compact_operator(rng, points, extra);
    let sigma = Spectrum::of(&t).unwrap();
    let f = CFunc::from_fn(&sigma, |_, _| Ok(random::elem(rng, 0.2))).unwrap();
    for cl in Clopen::enumerate(&sigma) {
        let exact = integrate(&f, &cl, &t).unwrap();
        let parts = TaggedPartition::enumerate(&cl);
        let errors: Vec<NormExp> = parts
            .iter()
            .map(|part| {
                let sum = riemann_sum(&f, part, &t).unwrap();
                let err = exact.sub(&sum).unwrap().norm();
                let osc = NormExp::sup(part.cells.iter().map(|cell| f.oscillation(&cell.cell)));
                c.check("oscillation-bound", err >= osc, || {
                    format!("f={f:?} partition={part:?} error {err} oscillation {osc}")
                });
                err
            })
            .collect();
        let singles = TaggedPartition::singletons(&cl);
        c.check(
            "singleton-sum-is-integral",
            riemann_sum(&f, &singles, &t).as_ref() == Ok(&exact),
            || format!("C={cl:?}"),
        );
        // error never grows along refinement
        for (i, fine) in parts.iter().enumerate() {
            for (j, coarse) in parts.iter().enumerate() {
                if i != j && is_refinement(fine, coarse, &sigma).unwrap() {
                    c.check("monotone-under-refinement", errors[i] >= errors[j], || {
                        format!("fine={fine:?} coarse={coarse:?}")
                    });
                }
            }
        }
    }
}

// ---- vandermonde ----------------------------------------------------------

fn vandermonde(c: &mut Checker, rng: &mut TrialRng, cfg: &SuiteConfig) {
    let points = 1 + c.trial % cfg.rank.max(1);
    // every other trial repeats an eigenvalue
    let extra = if c.trial % 2 == 1 { 1 } else { 0 };
    let mut lambda = random::distinct_values(rng, points);
    if extra == 1 {
        lambda.insert(1, lambda[0].clone());
    }
    let sys = Arc::new(random::ortho_system(rng, lambda.len()));
    let t = OpSY::diagonal(sys.clone(), lambda).unwrap();
    let sigma = Spectrum::of(&t).unwrap();
    for k in 1..=sigma.n() {
        let Some(p) = c.expect_ok("vandermonde", vandermonde_projection(&t, k)) else {
            continue;
        };
        // direct E_k = Σ_{j ∈ indices(k)} P_j
        let mut direct = vec![FieldElem::zero(); t.rank()];
        for &j in &sigma.point(k).indices {
            direct[j - 1] = FieldElem::one();
        }
        let direct = OpSY::diagonal(sys.clone(), direct).unwrap();
        c.check("product-equals-direct-projection", p == direct, || {
            format!("T={} k={k} product={}", fmt_op(&t), fmt_op(&p))
        });
        c.check(
            "psi-of-point-indicator",
            psi(&CFunc::indicator(&Clopen::singleton(PointRef::Point(k)), &sigma), &t).as_ref() == Ok(&p),
            || format!("k={k}"),
        );
        for q in sigma.refs() {
            let expected = if q == PointRef::Point(k) {
                FieldElem::one()
            } else {
                FieldElem::zero()
            };
            c.check(
                "gelfand-is-point-indicator",
                gelfand_eval(&p, &sigma, q).as_ref() == Ok(&expected),
                || format!("k={k} q={q}"),
            );
        }
        if sigma.point(k).indices.len() == 2 {
            c.check(
                "repeated-eigenvalue-gives-sum",
                p.lambda().iter().filter(|l| l.is_one()).count() == 2,
                || fmt_op(&p),
            );
        }
    }
}

// ---- atom-inseparability --------------------------------------------------

fn atom_inseparability(c: &mut Checker, rng: &mut TrialRng, cfg: &SuiteConfig) {
    let others = rng.gen_range(0..=cfg.rank.saturating_sub(1));
    let mut lambda = random::distinct_values(rng, others + 1);
    lambda.insert(1, lambda[0].clone());
    let sys = Arc::new(random::ortho_system(rng, lambda.len()));
    let t = OpSY::diagonal(sys.clone(), lambda).unwrap();
    let sigma = Spectrum::of(&t).unwrap();
    let mut raw = vec![FieldElem::zero(); t.rank()];
    raw[0] = FieldElem::one();
    let p1 = OpSY::diagonal(sys, raw).unwrap();
    for cl in Clopen::enumerate(&sigma) {
        c.check(
            "no-clopen-yields-single-atom",
            measure_of(&cl, &t).as_ref() != Ok(&p1),
            || format!("C={cl:?}"),
        );
    }
    let k = sigma.locate(&t.lambda()[0]).unwrap();
    c.check(
        "gelfand-rejects-atom",
        matches!(gelfand_eval(&p1, &sigma, k), Err(Error::NotInAlgebra { .. })),
        || fmt_op(&t),
    );
    c.check("grouped-point", sigma.size() == others + 2, || {
        format!("{} points", sigma.size())
    });
}

// ---- field-foundations ----------------------------------------------------

fn field_foundations(c: &mut Checker, rng: &mut TrialRng, cfg: &SuiteConfig) {
    let a = random::elem(rng, 0.1);
    let b = if rng.gen_bool(0.3) {
        // same valuation, so cancellation can happen
        match a.valuation() {
            Valuation::Finite(v) => random::nonzero_with_valuation(rng, v..=v),
            Valuation::Infinite => random::elem(rng, 0.1),
        }
    } else {
        random::elem(rng, 0.1)
    };
    let (va, vb, vs) = (a.valuation(), b.valuation(), (&a + &b).valuation());
    c.check("ultrametric", vs >= va.min(vb), || format!("a={a} b={b}"));
    if va != vb {
        c.check("ultrametric-equality", vs == va.min(vb), || format!("a={a} b={b}"));
    }
    c.check("multiplicative", (&a * &b).valuation() == va + vb, || {
        format!("a={a} b={b}")
    });
    if !a.is_zero() {
        let inv = a.inv().unwrap();
        c.check(
            "two-sided-inverse",
            (&a * &inv).is_one() && (&inv * &a).is_one(),
            || format!("a={a}"),
        );
    }
    c.check(
        "print-parse",
        a.to_string().parse::<FieldElem>().as_ref() == Ok(&a),
        || format!("a={a}"),
    );

    let k = rng.gen_range(1..=5);
    let xs: Vec<FieldElem> = (0..k).map(|_| random::nonzero_with_valuation(rng, -2..=3)).collect();
    let sum_sq: FieldElem = xs.iter().map(FieldElem::square).sum();
    let min_v = xs.iter().map(FieldElem::valuation).min().unwrap();
    c.check(
        "formally-real-sum-of-squares",
        sum_sq.valuation() == min_v + min_v,
        || format!("{xs:?}"),
    );

    let len = rng.gen_range(0..=cfg.rank + 2);
    let x = random::vector(rng, len);
    let y = random::vector(rng, len);
    let gram = inner_product(&x, &x);
    c.check(
        "norm-coincidence",
        NormExp::from(gram.valuation()) == sup_norm(&x).pow(2),
        || format!("x={x:?}"),
    );
    let nx = sup_norm(&x);
    let ny = sup_norm(&y);
    let ip: NormExp = inner_product(&x, &y).valuation().into();
    let bound = match (nx.exponent(), ny.exponent()) {
        (Some(a), Some(b)) => NormExp::Finite(a + b),
        _ => NormExp::Infinite,
    };
    c.check("cauchy-schwarz", ip >= bound, || format!("x={x:?} y={y:?}"));
    if !y.is_zero() {
        let p = normal_projection_apply(&y, &x).unwrap();
        c.check("projection-normal", inner_product(&x.sub(&p), &p).is_zero(), || {
            format!("x={x:?} y={y:?}")
        });
        c.check(
            "projection-idempotent",
            normal_projection_apply(&y, &p).as_ref() == Ok(&p),
            || format!("x={x:?} y={y:?}"),
        );
    }
    let m = rng.gen_range(0..=cfg.rank);
    let sys = random::ortho_system(rng, m);
    c.check(
        "generated-system-validates",
        OrthoSystem::new(sys.members().to_vec()).is_ok(),
        || format!("{sys:?}"),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_passes_small() {
        let cfg = SuiteConfig {
            rank: 3,
            trials: 6,
            seed: 11,
        };
        for s in Suite::ALL {
            let r = run_suite(s, &cfg, Execution::Sequential);
            assert!(r.passed(), "{s}: {:?}", r.failures);
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn schedule_does_not_change_reports() {
        let cfg = SuiteConfig {
            rank: 3,
            trials: 8,
            seed: 3,
        };
        let a = run_suite(Suite::GelfandIsometry, &cfg, Execution::Sequential);
        let b = run_suite(Suite::GelfandIsometry, &cfg, Execution::Parallel);
        assert_eq!(a, b);
    }

    #[test]
    fn failures_carry_counterexamples() {
        let mut c = Checker {
            trial: 4,
            ..Checker::default()
        };
        c.check("x", false, || "payload".into());
        c.check("x", false, || "second".into());
        c.check("y", true, String::new);
        assert_eq!(c.checks, 3);
        assert_eq!(
            c.failures,
            vec![Failure {
                trial: 4,
                check: "x".into(),
                detail: "payload".into()
            }]
        );
    }
}
