//! Finitely supported vectors of c₀, the symmetric pairing `⟨x,y⟩ = Σ xᵢyᵢ`,
//! orthonormal systems and their normal projections.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldElem, NormExp, Valuation};

/// A vector with finitely many nonzero coordinates, indexed from 1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Vec0 {
    entries: BTreeMap<usize, FieldElem>,
}

impl Vec0 {
    pub fn zero() -> Self {
        Vec0::default()
    }

    /// The unit vector `eₙ`.
    pub fn basis(n: usize) -> Self {
        assert!(n >= 1, "indices start at 1");
        Vec0::from_entries([(n, FieldElem::one())])
    }

    /// Zero values are dropped; repeated indices are summed.
    pub fn from_entries<I: IntoIterator<Item = (usize, FieldElem)>>(iter: I) -> Self {
        let mut entries: BTreeMap<usize, FieldElem> = BTreeMap::new();
        for (n, v) in iter {
            assert!(n >= 1, "indices start at 1");
            let slot = entries.entry(n).or_default();
            *slot = &*slot + &v;
        }
        entries.retain(|_, v| !v.is_zero());
        Vec0 { entries }
    }

    /// `(a₁, a₂, …)` with the first element at index 1.
    pub fn from_dense<I: IntoIterator<Item = FieldElem>>(iter: I) -> Self {
        Vec0::from_entries(iter.into_iter().enumerate().map(|(i, v)| (i + 1, v)))
    }

    pub fn get(&self, n: usize) -> FieldElem {
        self.entries.get(&n).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &FieldElem)> {
        self.entries.iter().map(|(&n, v)| (n, v))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    /// Largest index in the support, 0 for the zero vector.
    pub fn support_end(&self) -> usize {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &FieldElem) -> Vec0 {
        if c.is_zero() {
            return Vec0::zero();
        }
        Vec0 {
            entries: self.entries.iter().map(|(&n, v)| (n, v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Vec0) -> Vec0 {
        Vec0::from_entries(self.entries().chain(other.entries()).map(|(n, v)| (n, v.clone())))
    }

    pub fn sub(&self, other: &Vec0) -> Vec0 {
        self.add(&other.scale(&FieldElem::from_int(-1)))
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: &FieldElem, other: &Vec0) -> Vec0 {
        self.add(&other.scale(c))
    }
}

impl fmt::Debug for Vec0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(n, v)| (n, v.to_string())))
            .finish()
    }
}

/// `⟨x,y⟩ = Σ xᵢyᵢ` over the common support.
pub fn inner_product(x: &Vec0, y: &Vec0) -> FieldElem {
    let (small, large) = if x.entries.len() <= y.entries.len() {
        (x, y)
    } else {
        (y, x)
    };
    small
        .entries
        .iter()
        .filter_map(|(n, a)| large.entries.get(n).map(|b| a * b))
        .sum()
}

/// `‖x‖∞` as the minimum valuation over the support.
pub fn sup_norm(x: &Vec0) -> NormExp {
    x.entries
        .values()
        .map(FieldElem::valuation)
        .min()
        .unwrap_or(Valuation::Infinite)
        .into()
}

/// `P_y(x) = ⟨x,y⟩/⟨y,y⟩ · y`.
pub fn normal_projection_apply(y: &Vec0, x: &Vec0) -> Result<Vec0> {
    if y.is_zero() {
        return Err(Error::ZeroVector);
    }
    let coeff = inner_product(x, y).div(&inner_product(y, y))?;
    Ok(y.scale(&coeff))
}

/// Validated orthonormal system `Y = {y⁽¹⁾, …, y⁽ᵐ⁾}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrthoSystem {
    members: Vec<Vec0>,
    gram_diag: Vec<FieldElem>,
}

impl OrthoSystem {
    /// Checks unit norms and pairwise orthogonality, reporting 1-based member
    /// positions on failure.
    pub fn new(members: Vec<Vec0>) -> Result<Self> {
        let mut gram_diag = Vec::with_capacity(members.len());
        for (i, y) in members.iter().enumerate() {
            match sup_norm(y) {
                NormExp::Finite(e) if e == num_traits::Zero::zero() => {}
                _ => {
                    let valuation = y
                        .entries
                        .values()
                        .map(FieldElem::valuation)
                        .min()
                        .unwrap_or(Valuation::Infinite);
                    return Err(Error::NotUnitNorm { i: i + 1, valuation });
                }
            }
            let g = inner_product(y, y);
            if g.valuation() != Valuation::Finite(0) {
                return Err(Error::DegenerateGram { i: i + 1, value: g });
            }
            gram_diag.push(g);
        }
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                let value = inner_product(&members[i], &members[j]);
                if !value.is_zero() {
                    return Err(Error::NotOrthogonal {
                        i: i + 1,
                        j: j + 1,
                        value,
                    });
                }
            }
        }
        Ok(OrthoSystem { members, gram_diag })
    }

    /// `{e₁, …, eₘ}`.
    pub fn standard(m: usize) -> Self {
        OrthoSystem {
            members: (1..=m).map(Vec0::basis).collect(),
            gram_diag: vec![FieldElem::one(); m],
        }
    }

    pub fn rank(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Vec0] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Vec0 {
        &self.members[i]
    }

    pub fn gram_diag(&self) -> &[FieldElem] {
        &self.gram_diag
    }

    /// `Pᵢ(x)` for the 0-based member position `i`.
    pub fn project(&self, i: usize, x: &Vec0) -> Vec0 {
        let ip = inner_product(x, &self.members[i]);
        if ip.is_zero() {
            return Vec0::zero();
        }
        let coeff = ip.div(&self.gram_diag[i]).expect("validated gram entry");
        self.members[i].scale(&coeff)
    }

    /// Largest coordinate index touched by any member. Beyond it every
    /// projection vanishes on `eₙ`.
    pub fn support_end(&self) -> usize {
        self.members.iter().map(Vec0::support_end).max().unwrap_or(0)
    }
}

impl Serialize for Vec0 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.entries.len()))?;
        for (n, v) in &self.entries {
            map.serialize_entry(&n.to_string(), &v.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Vec0 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, FieldElem>::deserialize(d)?;
        let mut entries = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            let n: usize = k
                .parse()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| D::Error::custom(format!("invalid index {k:?}; indices start at 1")))?;
            entries.push((n, v));
        }
        Ok(Vec0::from_entries(entries))
    }
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

    #[test]
    fn inner_product_examples() {
        assert_eq!(inner_product(&Vec0::basis(1), &Vec0::basis(2)), FieldElem::zero());
        assert_eq!(inner_product(&v(&["1", "t"]), &v(&["-t", "1"])), FieldElem::zero());
        assert_eq!(inner_product(&v(&["1", "t"]), &v(&["1", "t"])), fe("1+t^2"));
    }

    #[test]
    fn sup_norm_examples() {
        assert_eq!(sup_norm(&Vec0::zero()), NormExp::Infinite);
        assert_eq!(sup_norm(&v(&["1", "t"])), NormExp::from_int(0));
        assert_eq!(sup_norm(&v(&["t^2", "t^3"])), NormExp::from_int(2));
    }

    #[test]
    fn projection_examples() {
        let y = v(&["1", "t"]);
        assert_eq!(normal_projection_apply(&y, &y).unwrap(), y);
        assert_eq!(normal_projection_apply(&y, &v(&["-t", "1"])).unwrap(), Vec0::zero());
        let p = normal_projection_apply(&y, &Vec0::basis(1)).unwrap();
        assert_eq!(p, y.scale(&fe("1/(1+t^2)")));
        assert_eq!(normal_projection_apply(&Vec0::zero(), &y), Err(Error::ZeroVector));
    }

    #[test]
    fn projection_is_idempotent_and_normal() {
        let y = v(&["1", "t", "0", "2-t"]);
        let x = v(&["3", "1/t", "5", "t^2"]);
        let p = normal_projection_apply(&y, &x).unwrap();
        assert_eq!(normal_projection_apply(&y, &p).unwrap(), p);
        assert!(inner_product(&x.sub(&p), &y).is_zero());
        assert!(inner_product(&x.sub(&p), &p).is_zero());
    }

    #[test]
    fn orthosystem_validation() {
        let std3 = OrthoSystem::new((1..=3).map(Vec0::basis).collect()).unwrap();
        assert_eq!(std3, OrthoSystem::standard(3));
        let rot = OrthoSystem::new(vec![v(&["1", "t"]), v(&["-t", "1"])]).unwrap();
        assert_eq!(rot.gram_diag(), &[fe("1+t^2"), fe("1+t^2")]);
        assert_eq!(rot.support_end(), 2);
        assert_eq!(
            OrthoSystem::new(vec![v(&["t", "0"])]),
            Err(Error::NotUnitNorm {
                i: 1,
                valuation: Valuation::Finite(1)
            })
        );
        assert_eq!(
            OrthoSystem::new(vec![v(&["1", "t"]), v(&["1", "0"])]),
            Err(Error::NotOrthogonal {
                i: 1,
                j: 2,
                value: FieldElem::one()
            })
        );
        assert!(matches!(
            OrthoSystem::new(vec![v(&["1/t", "1"])]),
            Err(Error::NotUnitNorm {
                i: 1,
                valuation: Valuation::Finite(-1)
            })
        ));
    }

    #[test]
    fn vec0_drops_zero_entries() {
        let x = Vec0::from_entries([(3, FieldElem::zero()), (2, fe("t")), (2, fe("-t"))]);
        assert!(x.is_zero());
        assert_eq!(x.support_end(), 0);
    }

    #[test]
    fn json_encoding() {
        let x = v(&["1", "t"]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"1":"1","2":"t"}"#);
        let back: Vec0 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<Vec0>(r#"{"0":"1"}"#).is_err());
        assert!(serde_json::from_str::<Vec0>(r#"{"1":"1/"}"#).is_err());
    }
}
