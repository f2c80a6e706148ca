//! The commutative unital algebra `S_Y(c₀) = { αI + T_λ }`, with
//! `T_λ = Σ λᵢ Pᵢ` over a fixed orthonormal system `Y`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::c0::{inner_product, sup_norm, OrthoSystem, Vec0};
use crate::error::{Error, Result};
use crate::field::{FieldElem, NormExp};

/// `αI + Σ λᵢ Pᵢ` stored in diagonal form.
///
/// Zero entries in `lambda` are allowed; they contribute nothing to the
/// operator but keep positions aligned with `Y`.
#[derive(Clone)]
pub struct OpSY {
    alpha: FieldElem,
    lambda: Vec<FieldElem>,
    system: Arc<OrthoSystem>,
}

impl OpSY {
    pub fn new(system: Arc<OrthoSystem>, alpha: FieldElem, lambda: Vec<FieldElem>) -> Result<Self> {
        if lambda.len() != system.rank() {
            return Err(Error::LengthMismatch {
                expected: system.rank(),
                got: lambda.len(),
            });
        }
        Ok(OpSY { alpha, lambda, system })
    }

    /// The compact part `T_λ` alone.
    pub fn diagonal(system: Arc<OrthoSystem>, lambda: Vec<FieldElem>) -> Result<Self> {
        OpSY::new(system, FieldElem::zero(), lambda)
    }

    pub fn scalar(system: Arc<OrthoSystem>, alpha: FieldElem) -> Self {
        let m = system.rank();
        OpSY {
            alpha,
            lambda: vec![FieldElem::zero(); m],
            system,
        }
    }

    pub fn identity(system: Arc<OrthoSystem>) -> Self {
        OpSY::scalar(system, FieldElem::one())
    }

    pub fn zero(system: Arc<OrthoSystem>) -> Self {
        OpSY::scalar(system, FieldElem::zero())
    }

    pub fn alpha(&self) -> &FieldElem {
        &self.alpha
    }

    pub fn lambda(&self) -> &[FieldElem] {
        &self.lambda
    }

    pub fn system(&self) -> &Arc<OrthoSystem> {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    /// True when the identity part vanishes, i.e. the operator is compact.
    pub fn is_compact_part(&self) -> bool {
        self.alpha.is_zero()
    }

    pub fn same_system(&self, other: &OpSY) -> bool {
        Arc::ptr_eq(&self.system, &other.system) || *self.system == *other.system
    }

    fn check_system(&self, other: &OpSY) -> Result<()> {
        if self.same_system(other) {
            Ok(())
        } else {
            Err(Error::MismatchedSystem)
        }
    }

    fn with_parts(&self, alpha: FieldElem, lambda: Vec<FieldElem>) -> OpSY {
        OpSY {
            alpha,
            lambda,
            system: Arc::clone(&self.system),
        }
    }

    /// `αx + Σ λᵢ Pᵢ(x)`.
    pub fn apply(&self, x: &Vec0) -> Vec0 {
        let mut out = x.scale(&self.alpha);
        for (i, l) in self.lambda.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            out = out.add_scaled(l, &self.system.project(i, x));
        }
        out
    }

    /// `(α₁I + T_μ)(α₂I + T_ν) = α₁α₂I + T_{α₁ν + α₂μ + μν}`.
    pub fn compose(&self, other: &OpSY) -> Result<OpSY> {
        self.check_system(other)?;
        let lambda = self
            .lambda
            .iter()
            .zip(&other.lambda)
            .map(|(mu, nu)| &(&(&self.alpha * nu) + &(&other.alpha * mu)) + &(mu * nu))
            .collect();
        Ok(self.with_parts(&self.alpha * &other.alpha, lambda))
    }

    pub fn add(&self, other: &OpSY) -> Result<OpSY> {
        self.check_system(other)?;
        let lambda = self.lambda.iter().zip(&other.lambda).map(|(a, b)| a + b).collect();
        Ok(self.with_parts(&self.alpha + &other.alpha, lambda))
    }

    pub fn sub(&self, other: &OpSY) -> Result<OpSY> {
        self.add(&other.scale(&FieldElem::from_int(-1)))
    }

    pub fn scale(&self, c: &FieldElem) -> OpSY {
        self.with_parts(&self.alpha * c, self.lambda.iter().map(|l| l * c).collect())
    }

    /// `cI + self`.
    pub fn add_scalar(&self, c: &FieldElem) -> OpSY {
        self.with_parts(&self.alpha + c, self.lambda.clone())
    }

    /// `max{|α|, maxᵢ |λᵢ|}` as an exponent.
    pub fn norm(&self) -> NormExp {
        NormExp::sup(
            std::iter::once(&self.alpha)
                .chain(&self.lambda)
                .map(|v| v.valuation().into()),
        )
    }

    /// `sup_n ‖S(eₙ)‖` computed by applying the operator to every basis vector
    /// in the support window of `Y`. Past the window `S(eₙ) = αeₙ`, which
    /// contributes `|α|`.
    pub fn norm_by_basis(&self) -> NormExp {
        let window = self.system.support_end();
        let tail: NormExp = self.alpha.valuation().into();
        NormExp::sup(
            (1..=window)
                .map(|n| sup_norm(&self.apply(&Vec0::basis(n))))
                .chain(std::iter::once(tail)),
        )
    }

    /// n-fold composition, `n ≥ 1`.
    pub fn pow(&self, n: u32) -> Result<OpSY> {
        if n == 0 {
            return Err(Error::InvalidArgument("operator power must be at least 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// `c₀I + c₁S + c₂S² + …`.
    ///
    /// On `Pᵢ` the operator acts as `α + λᵢ`, so `p(A) = p(α)I + Σ (p(α+λᵢ) − p(α))Pᵢ`;
    /// each distinct eigenvalue is evaluated once.
    pub fn polynomial(&self, coeffs: &[FieldElem]) -> OpSY {
        let horner = |x: &FieldElem| coeffs.iter().rev().fold(FieldElem::zero(), |acc, c| &(&acc * x) + c);
        let base = horner(&self.alpha);
        let mut seen: Vec<(&FieldElem, FieldElem)> = Vec::new();
        let lambda = self
            .lambda
            .iter()
            .map(|l| {
                if l.is_zero() {
                    return FieldElem::zero();
                }
                if let Some((_, v)) = seen.iter().find(|(k, _)| *k == l) {
                    return v.clone();
                }
                let v = &horner(&(&self.alpha + l)) - &base;
                seen.push((l, v.clone()));
                v
            })
            .collect();
        OpSY {
            alpha: base,
            lambda,
            system: Arc::clone(&self.system),
        }
    }
}

/// Structural equality on `(α, λ)` over the same `Y`.
impl PartialEq for OpSY {
    fn eq(&self, other: &OpSY) -> bool {
        self.alpha == other.alpha && self.lambda == other.lambda && self.same_system(other)
    }
}

impl Eq for OpSY {}

impl fmt::Debug for OpSY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OpSY {{ alpha: {}, lambda: [", self.alpha)?;
        for (i, l) in self.lambda.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("] }")
    }
}

/// Wire form `{"alpha": "<fe>", "lambda": ["<fe>", …]}`; `Y` travels
/// separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpRepr {
    pub alpha: FieldElem,
    pub lambda: Vec<FieldElem>,
}

impl OpRepr {
    pub fn into_op(self, system: Arc<OrthoSystem>) -> Result<OpSY> {
        OpSY::new(system, self.alpha, self.lambda)
    }
}

impl From<&OpSY> for OpRepr {
    fn from(op: &OpSY) -> Self {
        OpRepr {
            alpha: op.alpha.clone(),
            lambda: op.lambda.clone(),
        }
    }
}

/// Anything that maps finitely supported vectors to finitely supported
/// vectors. Used by the adjointness check, which also runs on raw fixtures.
pub trait LinearOperator {
    fn apply_to(&self, x: &Vec0) -> Vec0;
    /// Coordinates past this index are only scaled by the operator.
    fn window(&self) -> usize;
}

impl LinearOperator for OpSY {
    fn apply_to(&self, x: &Vec0) -> Vec0 {
        self.apply(x)
    }

    fn window(&self) -> usize {
        self.system.support_end()
    }
}

/// Checks `⟨S eₙ, e_k⟩ = ⟨eₙ, S e_k⟩` for all `n, k ≤ window + extra`.
pub fn check_self_adjoint<L: LinearOperator + ?Sized>(op: &L, extra: usize) -> bool {
    let n_max = op.window() + extra;
    let images: Vec<Vec0> = (1..=n_max).map(|n| op.apply_to(&Vec0::basis(n))).collect();
    (1..=n_max).all(|n| {
        (n + 1..=n_max)
            .all(|k| inner_product(&images[n - 1], &Vec0::basis(k)) == inner_product(&Vec0::basis(n), &images[k - 1]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(s: &str) -> FieldElem {
        s.parse().unwrap()
    }

    fn v(items: &[&str]) -> Vec0 {
        Vec0::from_dense(items.iter().map(|s| fe(s)))
    }

    fn lam(items: &[&str]) -> Vec<FieldElem> {
        items.iter().map(|s| fe(s)).collect()
    }

    fn rot() -> Arc<OrthoSystem> {
        Arc::new(OrthoSystem::new(vec![v(&["1", "t"]), v(&["-t", "1"])]).unwrap())
    }

    #[test]
    fn apply_examples() {
        let y = rot();
        let x = v(&["3", "t", "0", "1/t"]);
        assert_eq!(OpSY::identity(y.clone()).apply(&x), x);

        let e1 = Arc::new(OrthoSystem::standard(1));
        let t = OpSY::diagonal(e1, lam(&["t"])).unwrap();
        assert_eq!(t.apply(&Vec0::basis(1)), Vec0::basis(1).scale(&fe("t")));

        let y1 = Arc::new(OrthoSystem::new(vec![v(&["1", "t"])]).unwrap());
        let s = OpSY::new(y1, fe("1"), lam(&["t"])).unwrap();
        assert_eq!(s.apply(&v(&["-t", "1"])), v(&["-t", "1"]));
    }

    #[test]
    fn compose_examples() {
        let y = Arc::new(OrthoSystem::standard(1));
        let s = OpSY::new(y.clone(), fe("2+t"), lam(&["1/t"])).unwrap();
        assert_eq!(s.compose(&OpSY::identity(y.clone())).unwrap(), s);
        let a = OpSY::diagonal(y.clone(), lam(&["t"])).unwrap();
        let b = OpSY::diagonal(y.clone(), lam(&["t^2"])).unwrap();
        assert_eq!(a.compose(&b).unwrap(), OpSY::diagonal(y, lam(&["t^3"])).unwrap());
    }

    #[test]
    fn compose_matches_pointwise_application() {
        let y = rot();
        let s1 = OpSY::new(y.clone(), fe("1-t"), lam(&["t", "3"])).unwrap();
        let s2 = OpSY::new(y.clone(), fe("t^2"), lam(&["1/(1+t)", "-1"])).unwrap();
        let c = s1.compose(&s2).unwrap();
        for n in 1..=4 {
            let e = Vec0::basis(n);
            assert_eq!(c.apply(&e), s1.apply(&s2.apply(&e)));
        }
        assert_eq!(c, s2.compose(&s1).unwrap());
    }

    #[test]
    fn add_scale_examples() {
        let y = rot();
        let s = OpSY::new(y.clone(), fe("t"), lam(&["1", "t"])).unwrap();
        assert_eq!(s.add(&OpSY::zero(y.clone())).unwrap(), s);
        let t1 = OpSY::diagonal(y.clone(), lam(&["t", "0"])).unwrap();
        assert_eq!(
            t1.add(&t1).unwrap(),
            OpSY::diagonal(y.clone(), lam(&["2*t", "0"])).unwrap()
        );
        assert_eq!(OpSY::identity(y.clone()).scale(&fe("t")), OpSY::scalar(y, fe("t")));
    }

    #[test]
    fn mismatched_systems_are_rejected() {
        let a = OpSY::identity(rot());
        let b = OpSY::identity(Arc::new(OrthoSystem::standard(2)));
        assert_eq!(a.compose(&b), Err(Error::MismatchedSystem));
        assert_eq!(a.add(&b), Err(Error::MismatchedSystem));
        // Content-equal systems behind different pointers are the same Y.
        assert!(OpSY::identity(rot()).compose(&a).is_ok());
    }

    #[test]
    fn length_mismatch() {
        assert_eq!(
            OpSY::diagonal(rot(), lam(&["t"])),
            Err(Error::LengthMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn norm_examples() {
        let y1 = Arc::new(OrthoSystem::standard(1));
        assert_eq!(OpSY::identity(y1.clone()).norm(), NormExp::from_int(0));
        let s = OpSY::new(y1.clone(), fe("t^2"), lam(&["t"])).unwrap();
        assert_eq!(s.norm(), NormExp::from_int(1));
        assert_eq!(s.norm_by_basis(), NormExp::from_int(1));

        // (I - P₁) kills y⁽¹⁾ but the tail keeps the norm at |α| = 1.
        let y = rot();
        let c = OpSY::new(y.clone(), fe("1"), lam(&["-1", "0"])).unwrap();
        assert_eq!(c.norm(), NormExp::from_int(0));
        assert_eq!(c.norm_by_basis(), NormExp::from_int(0));

        assert_eq!(OpSY::zero(y.clone()).norm(), NormExp::Infinite);
        assert_eq!(OpSY::zero(y).norm_by_basis(), NormExp::Infinite);
    }

    #[test]
    fn power_examples() {
        let y = rot();
        let i = OpSY::identity(y.clone());
        assert_eq!(i.pow(5).unwrap(), i);
        let t = OpSY::diagonal(y.clone(), lam(&["t", "0"])).unwrap();
        assert_eq!(
            t.pow(3).unwrap(),
            OpSY::diagonal(y.clone(), lam(&["t^3", "0"])).unwrap()
        );
        let c = OpSY::new(y.clone(), fe("1"), lam(&["-1", "0"])).unwrap();
        let c2 = c.pow(2).unwrap();
        assert_eq!(c2, c);
        assert_eq!(c2.norm(), c.norm().pow(2));
        assert!(t.pow(0).is_err());
    }

    #[test]
    fn polynomial_horner() {
        let y = rot();
        let t = OpSY::diagonal(y.clone(), lam(&["t", "2"])).unwrap();
        let p = t.polynomial(&lam(&["1", "0", "1"]));
        assert_eq!(p, OpSY::new(y.clone(), fe("1"), lam(&["t^2", "4"])).unwrap());
        assert_eq!(t.polynomial(&[]), OpSY::zero(y));
    }

    struct Raw(Vec<Vec<FieldElem>>);

    impl LinearOperator for Raw {
        fn apply_to(&self, x: &Vec0) -> Vec0 {
            Vec0::from_entries(
                self.0
                    .iter()
                    .enumerate()
                    .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, a)| (r + 1, a * &x.get(c + 1)))),
            )
        }

        fn window(&self) -> usize {
            self.0.len()
        }
    }

    #[test]
    fn self_adjointness() {
        assert!(check_self_adjoint(&OpSY::identity(rot()), 2));
        let s = OpSY::new(rot(), fe("t"), lam(&["1/(1-t)", "t^3"])).unwrap();
        assert!(check_self_adjoint(&s, 3));
        let raw = Raw(vec![lam(&["1", "t"]), lam(&["0", "1"])]);
        assert!(!check_self_adjoint(&raw, 0));
        let sym = Raw(vec![lam(&["1", "t"]), lam(&["t", "1"])]);
        assert!(check_self_adjoint(&sym, 1));
    }

    #[test]
    fn repr_round_trip() {
        let s = OpSY::new(rot(), fe("t"), lam(&["1/(1-t)", "0"])).unwrap();
        let json = serde_json::to_string(&OpRepr::from(&s)).unwrap();
        assert_eq!(json, r#"{"alpha":"t","lambda":["-1/(-1+t)","0"]}"#);
        let back: OpRepr = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_op(rot()).unwrap(), s);
    }
}
