//! Spectrum, characters, resolvent and the Vandermonde recovery of the
//! spectral projections of a compact `T = Σ λᵢ Pᵢ`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElem, NormExp};
use crate::operators::OpSY;

/// One nonzero eigenvalue and the (1-based) positions `i` with `λᵢ` equal to it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpecPoint {
    pub value: FieldElem,
    pub indices: BTreeSet<usize>,
}

/// A point of `σ(T)`: the point `λ₀ = 0`, or the k-th nonzero eigenvalue
/// (1-based, in spectrum order).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum PointRef {
    Zero,
    Point(usize),
}

impl fmt::Display for PointRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointRef::Zero => f.write_str("p0"),
            PointRef::Point(k) => write!(f, "p{k}"),
        }
    }
}

impl FromStr for PointRef {
    type Err = Error;
    /// Accepts `p0`/`zero` and `p1`, `p2`, … (range is checked against a
    /// spectrum separately).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "zero" || s == "p0" {
            return Ok(PointRef::Zero);
        }
        s.strip_prefix('p')
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|&k| k >= 1)
            .map(PointRef::Point)
            .ok_or_else(|| Error::UnknownPoint(s.to_string()))
    }
}

impl serde::Serialize for PointRef {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for PointRef {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `σ(T) = {λ₀ = 0, λ₁, …, λₙ}` with repeated eigenvalues grouped.
///
/// Points are ordered by ascending valuation, then by canonical text, so the
/// numbering `p1, p2, …` is reproducible.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Spectrum {
    points: Vec<SpecPoint>,
    zero_indices: BTreeSet<usize>,
    rank: usize,
}

impl Spectrum {
    pub fn of(t: &OpSY) -> Result<Spectrum> {
        if !t.is_compact_part() {
            return Err(Error::NotCompactPart);
        }
        let mut groups: BTreeMap<(crate::field::Valuation, String), SpecPoint> = BTreeMap::new();
        let mut zero_indices = BTreeSet::new();
        for (i, l) in t.lambda().iter().enumerate() {
            if l.is_zero() {
                zero_indices.insert(i + 1);
                continue;
            }
            groups
                .entry((l.valuation(), l.to_string()))
                .or_insert_with(|| SpecPoint {
                    value: l.clone(),
                    indices: BTreeSet::new(),
                })
                .indices
                .insert(i + 1);
        }
        Ok(Spectrum {
            points: groups.into_values().collect(),
            zero_indices,
            rank: t.rank(),
        })
    }

    /// Nonzero points `λ₁, …, λₙ`.
    pub fn points(&self) -> &[SpecPoint] {
        &self.points
    }

    /// Number of nonzero points.
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// `|σ(T)|`, counting the point 0.
    pub fn size(&self) -> usize {
        self.points.len() + 1
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Positions with `λᵢ = 0`.
    pub fn zero_indices(&self) -> &BTreeSet<usize> {
        &self.zero_indices
    }

    /// `p0, p1, …, pₙ`.
    pub fn refs(&self) -> impl Iterator<Item = PointRef> {
        std::iter::once(PointRef::Zero).chain((1..=self.points.len()).map(PointRef::Point))
    }

    pub fn check(&self, p: PointRef) -> Result<PointRef> {
        match p {
            PointRef::Point(k) if k == 0 || k > self.points.len() => Err(Error::UnknownPoint(p.to_string())),
            _ => Ok(p),
        }
    }

    pub fn parse_ref(&self, s: &str) -> Result<PointRef> {
        self.check(s.parse()?)
    }

    pub fn point(&self, k: usize) -> &SpecPoint {
        &self.points[k - 1]
    }

    pub fn value(&self, p: PointRef) -> FieldElem {
        match p {
            PointRef::Zero => FieldElem::zero(),
            PointRef::Point(k) => self.point(k).value.clone(),
        }
    }

    /// The point whose value is `z`, if any.
    pub fn locate(&self, z: &FieldElem) -> Option<PointRef> {
        if z.is_zero() {
            return Some(PointRef::Zero);
        }
        self.points
            .iter()
            .position(|p| &p.value == z)
            .map(|k| PointRef::Point(k + 1))
    }

    pub fn contains(&self, z: &FieldElem) -> bool {
        self.locate(z).is_some()
    }

    /// `E_p = Σ_{j ∈ indices(p)} Pⱼ`; at the point 0 this is `I − Σ_k E_k`.
    pub fn point_projection(&self, system: &Arc<crate::c0::OrthoSystem>, p: PointRef) -> OpSY {
        let mut lambda = vec![FieldElem::zero(); self.rank];
        let alpha = match p {
            PointRef::Zero => {
                for sp in &self.points {
                    for &j in &sp.indices {
                        lambda[j - 1] = FieldElem::from_int(-1);
                    }
                }
                FieldElem::one()
            }
            PointRef::Point(k) => {
                for &j in &self.point(k).indices {
                    lambda[j - 1] = FieldElem::one();
                }
                FieldElem::zero()
            }
        };
        OpSY::new(Arc::clone(system), alpha, lambda).expect("spectrum rank matches system")
    }
}

pub fn spectrum_of(t: &OpSY) -> Result<Spectrum> {
    Spectrum::of(t)
}

/// The character `φ_p(H)`. `H = αI + T_μ` must be constant on every index
/// group of the spectrum (and vanish on the kernel positions), otherwise it
/// is not in the algebra generated by `T` and has no consistent value.
pub fn gelfand_eval(h: &OpSY, sigma: &Spectrum, p: PointRef) -> Result<FieldElem> {
    if h.rank() != sigma.rank() {
        return Err(Error::LengthMismatch {
            expected: sigma.rank(),
            got: h.rank(),
        });
    }
    let p = sigma.check(p)?;
    let mu = h.lambda();
    match p {
        PointRef::Zero => {
            if sigma.zero_indices.iter().any(|&j| !mu[j - 1].is_zero()) {
                return Err(Error::NotInAlgebra { point: p.to_string() });
            }
            Ok(h.alpha().clone())
        }
        PointRef::Point(k) => {
            let mut idx = sigma.point(k).indices.iter();
            let first = &mu[*idx.next().expect("nonempty index group") - 1];
            if idx.any(|&j| &mu[j - 1] != first) {
                return Err(Error::NotInAlgebra { point: p.to_string() });
            }
            Ok(h.alpha() + first)
        }
    }
}

/// `max_p |φ_p(H)|` over all of `σ(T)`.
pub fn spectral_norm(h: &OpSY, sigma: &Spectrum) -> Result<NormExp> {
    let mut acc = NormExp::Infinite;
    for p in sigma.refs() {
        acc = acc.max_magnitude(gelfand_eval(h, sigma, p)?.valuation().into());
    }
    Ok(acc)
}

/// `R_z(T) = (zI − T)⁻¹ = (1/z)I + Σ λᵢ/(z(z − λᵢ)) Pᵢ` for `z ∉ σ(T)`.
pub fn resolvent(t: &OpSY, z: &FieldElem) -> Result<OpSY> {
    if !t.is_compact_part() {
        return Err(Error::NotCompactPart);
    }
    if z.is_zero() || t.lambda().iter().any(|l| l == z) {
        return Err(Error::SpectrumPoint { z: z.clone() });
    }
    let z_inv = z.inv()?;
    let lambda = t
        .lambda()
        .iter()
        .map(|l| {
            if l.is_zero() {
                FieldElem::zero()
            } else {
                l.div(&(z * &(z - l))).expect("z is not an eigenvalue")
            }
        })
        .collect();
    OpSY::new(Arc::clone(t.system()), z_inv, lambda)
}

/// `E_k = Π_{i=0, i≠k}^{n} (λᵢI − T)/(λᵢ − λ_k)` with `λ₀ = 0`.
pub fn vandermonde_projection(t: &OpSY, k: usize) -> Result<OpSY> {
    let sigma = Spectrum::of(t)?;
    if k == 0 || k > sigma.n() {
        return Err(Error::UnknownPoint(PointRef::Point(k).to_string()));
    }
    let lambda_k = &sigma.point(k).value;
    let mut acc = OpSY::identity(Arc::clone(t.system()));
    for p in sigma.refs() {
        if p == PointRef::Point(k) {
            continue;
        }
        let lambda_i = sigma.value(p);
        let factor = t
            .scale(&FieldElem::from_int(-1))
            .add_scalar(&lambda_i)
            .scale(&(&lambda_i - lambda_k).inv()?);
        acc = acc.compose(&factor)?;
    }
    Ok(acc)
}
