//! Clopen subsets of `σ(T)`, the projection-valued measure `m_T`, Riemann
//! sums over tagged clopen partitions, the spectral integral and the
//! functional calculus `Ψ: C(σ(T)) → L_T`.
//!
//! At finite rank every subset of `σ(T)` is clopen. A [`Clopen`] is either a
//! finite set of nonzero points, or such a set together with the point 0
//! (the complement type, whose measure is `I − Σ E_k` over the excluded
//! points).

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::c0::OrthoSystem;
use crate::error::{Error, Result};
use crate::field::{FieldElem, NormExp};
use crate::operators::OpSY;
use crate::spectral::{gelfand_eval, PointRef, Spectrum};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Clopen {
    pub includes_zero: bool,
    pub points: BTreeSet<usize>,
}

impl Clopen {
    pub fn empty() -> Self {
        Clopen::default()
    }

    pub fn whole(sigma: &Spectrum) -> Self {
        Clopen {
            includes_zero: true,
            points: (1..=sigma.n()).collect(),
        }
    }

    pub fn from_refs<I: IntoIterator<Item = PointRef>>(refs: I) -> Self {
        let mut c = Clopen::empty();
        for p in refs {
            match p {
                PointRef::Zero => c.includes_zero = true,
                PointRef::Point(k) => {
                    c.points.insert(k);
                }
            }
        }
        c
    }

    pub fn singleton(p: PointRef) -> Self {
        Clopen::from_refs([p])
    }

    pub fn contains(&self, p: PointRef) -> bool {
        match p {
            PointRef::Zero => self.includes_zero,
            PointRef::Point(k) => self.points.contains(&k),
        }
    }

    /// Members in spectrum order, 0 first.
    pub fn refs(&self) -> impl Iterator<Item = PointRef> + '_ {
        self.includes_zero
            .then_some(PointRef::Zero)
            .into_iter()
            .chain(self.points.iter().map(|&k| PointRef::Point(k)))
    }

    pub fn len(&self) -> usize {
        self.points.len() + usize::from(self.includes_zero)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn union(&self, other: &Clopen) -> Clopen {
        Clopen {
            includes_zero: self.includes_zero || other.includes_zero,
            points: self.points.union(&other.points).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &Clopen) -> Clopen {
        Clopen {
            includes_zero: self.includes_zero && other.includes_zero,
            points: self.points.intersection(&other.points).copied().collect(),
        }
    }

    pub fn difference(&self, other: &Clopen) -> Clopen {
        Clopen {
            includes_zero: self.includes_zero && !other.includes_zero,
            points: self.points.difference(&other.points).copied().collect(),
        }
    }

    pub fn complement(&self, sigma: &Spectrum) -> Clopen {
        Clopen::whole(sigma).difference(self)
    }

    pub fn is_disjoint(&self, other: &Clopen) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn is_subset(&self, other: &Clopen) -> bool {
        self.difference(other).is_empty()
    }

    pub fn validate(&self, sigma: &Spectrum) -> Result<()> {
        for &k in &self.points {
            sigma.check(PointRef::Point(k))?;
        }
        Ok(())
    }

    /// All `2^|σ(T)|` subsets, ordered by bitmask (bit 0 is the point 0).
    pub fn enumerate(sigma: &Spectrum) -> Vec<Clopen> {
        let size = sigma.size();
        assert!(size < 24, "refusing to enumerate 2^{size} clopen sets");
        (0u32..1 << size)
            .map(|mask| Clopen {
                includes_zero: mask & 1 == 1,
                points: (1..size).filter(|k| mask >> k & 1 == 1).collect(),
            })
            .collect()
    }
}

/// A continuous function on `σ(T)`, given by its value at 0 and at the
/// nonzero points. Unlisted points take the value at 0; entries equal to
/// the value at 0 are never stored, so equality is pointwise equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CFunc {
    at_zero: FieldElem,
    values: BTreeMap<usize, FieldElem>,
}

impl CFunc {
    pub fn new(at_zero: FieldElem, values: BTreeMap<usize, FieldElem>) -> Self {
        let mut f = CFunc { at_zero, values };
        f.values.retain(|_, v| *v != f.at_zero);
        f
    }

    pub fn constant(c: FieldElem) -> Self {
        CFunc::new(c, BTreeMap::new())
    }

    /// Builds `f` from its values `g(p, value(p))` on every point of `σ(T)`.
    pub fn from_fn<F>(sigma: &Spectrum, mut g: F) -> Result<Self>
    where
        F: FnMut(PointRef, &FieldElem) -> Result<FieldElem>,
    {
        let at_zero = g(PointRef::Zero, &FieldElem::zero())?;
        let mut values = BTreeMap::new();
        for (k, p) in sigma.points().iter().enumerate() {
            values.insert(k + 1, g(PointRef::Point(k + 1), &p.value)?);
        }
        Ok(CFunc::new(at_zero, values))
    }

    /// `f_T`, the identity map of `σ(T)`.
    pub fn identity(sigma: &Spectrum) -> Self {
        CFunc::from_fn(sigma, |_, v| Ok(v.clone())).expect("infallible")
    }

    /// `x ↦ c₀ + c₁x + …`.
    pub fn from_poly(coeffs: &[FieldElem], sigma: &Spectrum) -> Self {
        CFunc::from_fn(sigma, |_, x| {
            Ok(coeffs.iter().rev().fold(FieldElem::zero(), |acc, c| &(&acc * x) + c))
        })
        .expect("infallible")
    }

    /// `η_C`.
    pub fn indicator(c: &Clopen, sigma: &Spectrum) -> Self {
        CFunc::from_fn(sigma, |p, _| {
            Ok(if c.contains(p) {
                FieldElem::one()
            } else {
                FieldElem::zero()
            })
        })
        .expect("infallible")
    }

    pub fn eval(&self, p: PointRef) -> &FieldElem {
        match p {
            PointRef::Zero => &self.at_zero,
            PointRef::Point(k) => self.values.get(&k).unwrap_or(&self.at_zero),
        }
    }

    pub fn at_zero(&self) -> &FieldElem {
        &self.at_zero
    }

    /// Stored values at nonzero points (those differing from `f(0)`).
    pub fn values(&self) -> &BTreeMap<usize, FieldElem> {
        &self.values
    }

    fn zip_with<F: Fn(&FieldElem, &FieldElem) -> FieldElem>(&self, other: &CFunc, op: F) -> CFunc {
        let keys: BTreeSet<usize> = self.values.keys().chain(other.values.keys()).copied().collect();
        let values = keys
            .into_iter()
            .map(|k| {
                let p = PointRef::Point(k);
                (k, op(self.eval(p), other.eval(p)))
            })
            .collect();
        CFunc::new(op(&self.at_zero, &other.at_zero), values)
    }

    pub fn mul(&self, other: &CFunc) -> CFunc {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn add(&self, other: &CFunc) -> CFunc {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &CFunc) -> CFunc {
        self.zip_with(other, |a, b| a - b)
    }

    /// `‖f‖∞` over `σ(T)`.
    pub fn sup_norm(&self, sigma: &Spectrum) -> NormExp {
        NormExp::sup(sigma.refs().map(|p| self.eval(p).valuation().into()))
    }

    /// `sup_{x,x' ∈ C} |f(x) − f(x')|`.
    pub fn oscillation(&self, cell: &Clopen) -> NormExp {
        let vals: Vec<&FieldElem> = cell.refs().map(|p| self.eval(p)).collect();
        let mut acc = NormExp::Infinite;
        for (i, a) in vals.iter().enumerate() {
            for b in &vals[i + 1..] {
                acc = acc.max_magnitude((*a - *b).valuation().into());
            }
        }
        acc
    }

    pub fn validate(&self, sigma: &Spectrum) -> Result<()> {
        for &k in self.values.keys() {
            sigma.check(PointRef::Point(k))?;
        }
        Ok(())
    }
}

/// One cell of a tagged partition.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Cell {
    pub cell: Clopen,
    pub tag: PointRef,
}

/// `α = {C₁, …, Cₙ; x₁, …, xₙ}` with `{C_k}` a clopen partition and
/// `x_k ∈ C_k`. Serialised as the list of cells.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TaggedPartition {
    pub cells: Vec<Cell>,
}

impl TaggedPartition {
    pub fn new(cells: Vec<Cell>) -> Self {
        TaggedPartition { cells }
    }

    /// Checks disjointness, tags and point ranges; returns the union.
    pub fn validate(&self, sigma: &Spectrum) -> Result<Clopen> {
        let mut union = Clopen::empty();
        for (i, c) in self.cells.iter().enumerate() {
            c.cell.validate(sigma)?;
            sigma.check(c.tag)?;
            if !c.cell.contains(c.tag) {
                return Err(Error::InvalidPartition(format!(
                    "tag {} lies outside cell {}",
                    c.tag,
                    i + 1
                )));
            }
            if !union.is_disjoint(&c.cell) {
                return Err(Error::InvalidPartition(format!(
                    "cell {} overlaps an earlier cell",
                    i + 1
                )));
            }
            union = union.union(&c.cell);
        }
        Ok(union)
    }

    /// Every point of `c` in its own cell.
    pub fn singletons(c: &Clopen) -> Self {
        TaggedPartition {
            cells: c
                .refs()
                .map(|p| Cell {
                    cell: Clopen::singleton(p),
                    tag: p,
                })
                .collect(),
        }
    }

    /// All tagged partitions of `c`: every set partition, every tag choice.
    pub fn enumerate(c: &Clopen) -> Vec<TaggedPartition> {
        let mut out = Vec::new();
        for cells in clopen_partitions(c) {
            let members: Vec<Vec<PointRef>> = cells.iter().map(|cell| cell.refs().collect()).collect();
            let mut choice = vec![0usize; cells.len()];
            loop {
                out.push(TaggedPartition {
                    cells: cells
                        .iter()
                        .zip(&members)
                        .zip(&choice)
                        .map(|((cell, m), &i)| Cell {
                            cell: cell.clone(),
                            tag: m[i],
                        })
                        .collect(),
                });
                // odometer over tag choices
                let mut i = 0;
                while i < choice.len() {
                    choice[i] += 1;
                    if choice[i] < members[i].len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == choice.len() {
                    break;
                }
            }
        }
        out
    }
}

/// Every partition of `c` into nonempty clopen cells.
pub fn clopen_partitions(c: &Clopen) -> Vec<Vec<Clopen>> {
    let elems: Vec<PointRef> = c.refs().collect();
    set_partitions(elems.len())
        .into_iter()
        .map(|blocks| {
            blocks
                .iter()
                .map(|b| Clopen::from_refs(b.iter().map(|&i| elems[i])))
                .collect()
        })
        .collect()
}

/// Set partitions of `{0, …, n−1}` via restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            go(i + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        go(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// `Σ_{p ∈ C} f(p)·E_p` with `E_0 = I − Σ_k E_k`.
fn weighted_projections(sigma: &Spectrum, system: &Arc<OrthoSystem>, weights: &[(PointRef, FieldElem)]) -> OpSY {
    let mut alpha = FieldElem::zero();
    let mut lambda = vec![FieldElem::zero(); sigma.rank()];
    let mut w_zero = FieldElem::zero();
    for (p, w) in weights {
        match p {
            PointRef::Zero => {
                alpha = &alpha + w;
                w_zero = &w_zero + w;
            }
            PointRef::Point(k) => {
                for &j in &sigma.point(*k).indices {
                    lambda[j - 1] = &lambda[j - 1] + w;
                }
            }
        }
    }
    if !w_zero.is_zero() {
        for sp in sigma.points() {
            for &j in &sp.indices {
                lambda[j - 1] = &lambda[j - 1] - &w_zero;
            }
        }
    }
    OpSY::new(Arc::clone(system), alpha, lambda).expect("spectrum rank matches system")
}

fn measure_in(c: &Clopen, sigma: &Spectrum, system: &Arc<OrthoSystem>) -> OpSY {
    let weights: Vec<_> = c.refs().map(|p| (p, FieldElem::one())).collect();
    weighted_projections(sigma, system, &weights)
}

/// `m_T(C)`: `Σ_{k ∈ C} E_k`, or `I − Σ_{k ∉ C} E_k` when `0 ∈ C`.
pub fn measure_of(c: &Clopen, t: &OpSY) -> Result<OpSY> {
    let sigma = Spectrum::of(t)?;
    c.validate(&sigma)?;
    Ok(measure_in(c, &sigma, t.system()))
}

/// `ω_α(f) = Σ f(x_k)·m_T(C_k)`.
pub fn riemann_sum(f: &CFunc, part: &TaggedPartition, t: &OpSY) -> Result<OpSY> {
    let sigma = Spectrum::of(t)?;
    f.validate(&sigma)?;
    part.validate(&sigma)?;
    let mut acc = OpSY::zero(Arc::clone(t.system()));
    for c in &part.cells {
        let m = measure_in(&c.cell, &sigma, t.system());
        acc = acc.add(&m.scale(f.eval(c.tag)))?;
    }
    Ok(acc)
}

/// `∫_C f dm_T` in closed form.
pub fn integrate(f: &CFunc, c: &Clopen, t: &OpSY) -> Result<OpSY> {
    let sigma = Spectrum::of(t)?;
    f.validate(&sigma)?;
    c.validate(&sigma)?;
    let weights: Vec<_> = c.refs().map(|p| (p, f.eval(p).clone())).collect();
    Ok(weighted_projections(&sigma, t.system(), &weights))
}

/// `Ψ(f) = ∫_{σ(T)} f dm_T`, the inverse Gelfand transform.
pub fn psi(f: &CFunc, t: &OpSY) -> Result<OpSY> {
    let sigma = Spectrum::of(t)?;
    integrate(f, &Clopen::whole(&sigma), t)
}

/// `G_H` as a function on `σ(T)`.
pub fn gelfand_transform(h: &OpSY, t: &OpSY) -> Result<CFunc> {
    if !h.same_system(t) {
        return Err(Error::MismatchedSystem);
    }
    let sigma = Spectrum::of(t)?;
    CFunc::from_fn(&sigma, |p, _| gelfand_eval(h, &sigma, p))
}

/// Coefficients `a₀, …, aₙ` (trailing zeros trimmed, so the zero function
/// gives an empty list) of the unique polynomial of degree `≤ n` agreeing
/// with `f` at the nodes `0, λ₁, …, λₙ`. Then `Σ a_k T^k = Ψ(f)`.
pub fn lagrange_interpolate(f: &CFunc, t: &OpSY) -> Result<Vec<FieldElem>> {
    let sigma = Spectrum::of(t)?;
    f.validate(&sigma)?;
    let nodes: Vec<(FieldElem, FieldElem)> = sigma.refs().map(|p| (sigma.value(p), f.eval(p).clone())).collect();
    let mut coeffs = vec![FieldElem::zero(); nodes.len()];
    for (j, (xj, yj)) in nodes.iter().enumerate() {
        if yj.is_zero() {
            continue;
        }
        // ℓ_j(x) = Π_{i≠j} (x − x_i)/(x_j − x_i)
        let mut basis = vec![FieldElem::one()];
        let mut denom = FieldElem::one();
        for (i, (xi, _)) in nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![FieldElem::zero(); basis.len() + 1];
            for (d, b) in basis.iter().enumerate() {
                next[d + 1] = &next[d + 1] + b;
                next[d] = &next[d] - &(b * xi);
            }
            basis = next;
            denom = &denom * &(xj - xi);
        }
        let scale = yj
            .div(&denom)
            .map_err(|_| Error::InvalidArgument("duplicate interpolation nodes".into()))?;
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c = &*c + &(b * &scale);
        }
    }
    while coeffs.last().is_some_and(FieldElem::is_zero) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// True iff every fine cell lies inside some coarse cell. Both partitions
/// must cover the same clopen set.
pub fn is_refinement(fine: &TaggedPartition, coarse: &TaggedPartition, sigma: &Spectrum) -> Result<bool> {
    let a = fine.validate(sigma)?;
    let b = coarse.validate(sigma)?;
    if a != b {
        return Err(Error::InvalidPartition("partitions cover different sets".into()));
    }
    Ok(fine
        .cells
        .iter()
        .all(|f| coarse.cells.iter().any(|c| f.cell.is_subset(&c.cell))))
}

#[derive(Serialize, Deserialize)]
struct ClopenRepr {
    #[serde(default)]
    includes_zero: bool,
    #[serde(default)]
    points: Vec<String>,
}

impl Serialize for Clopen {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClopenRepr {
            includes_zero: self.includes_zero,
            points: self.points.iter().map(|&k| PointRef::Point(k).to_string()).collect(),
        }
        .serialize(s)
    }
}

/// `{"includes_zero": bool, "points": ["p1", …]}`; `"p0"` in `points` is the
/// same as `includes_zero: true`.
impl<'de> Deserialize<'de> for Clopen {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ClopenRepr::deserialize(d)?;
        let mut c = Clopen {
            includes_zero: repr.includes_zero,
            points: BTreeSet::new(),
        };
        for s in &repr.points {
            let p: PointRef = s.parse().map_err(serde::de::Error::custom)?;
            c = c.union(&Clopen::singleton(p));
        }
        Ok(c)
    }
}

/// Wire form of a [`CFunc`]: a table keyed by point ids, or polynomial
/// coefficients in the spectral variable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CFuncRepr {
    Table {
        at_zero: FieldElem,
        #[serde(default)]
        values: BTreeMap<String, FieldElem>,
    },
    Poly {
        poly: Vec<FieldElem>,
    },
}

impl CFuncRepr {
    pub fn resolve(&self, sigma: &Spectrum) -> Result<CFunc> {
        match self {
            CFuncRepr::Poly { poly } => Ok(CFunc::from_poly(poly, sigma)),
            CFuncRepr::Table { at_zero, values } => {
                let mut table = BTreeMap::new();
                let mut zero = at_zero.clone();
                for (key, v) in values {
                    match sigma.parse_ref(key)? {
                        PointRef::Zero => zero = v.clone(),
                        PointRef::Point(k) => {
                            table.insert(k, v.clone());
                        }
                    }
                }
                Ok(CFunc::new(zero, table))
            }
        }
    }
}

impl From<&CFunc> for CFuncRepr {
    fn from(f: &CFunc) -> Self {
        CFuncRepr::Table {
            at_zero: f.at_zero.clone(),
            values: f
                .values
                .iter()
                .map(|(&k, v)| (PointRef::Point(k).to_string(), v.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(s: &str) -> FieldElem {
        s.parse().unwrap()
    }

    fn lam(items: &[&str]) -> Vec<FieldElem> {
        items.iter().map(|s| fe(s)).collect()
    }

    fn diag(items: &[&str]) -> OpSY {
        OpSY::diagonal(Arc::new(OrthoSystem::standard(items.len())), lam(items)).unwrap()
    }

    fn pts(zero: bool, ks: &[usize]) -> Clopen {
        Clopen {
            includes_zero: zero,
            points: ks.iter().copied().collect(),
        }
    }

    #[test]
    fn indicator_examples() {
        let t = diag(&["t", "t^2", "1"]);
        let s = Spectrum::of(&t).unwrap();
        assert_eq!(
            CFunc::indicator(&Clopen::empty(), &s),
            CFunc::constant(FieldElem::zero())
        );
        assert_eq!(
            CFunc::indicator(&Clopen::whole(&s), &s),
            CFunc::constant(FieldElem::one())
        );
        let c = pts(true, &[2]);
        let eta = CFunc::indicator(&c, &s);
        assert_eq!(eta.mul(&eta), eta);
        for a in Clopen::enumerate(&s) {
            for b in Clopen::enumerate(&s) {
                let ea = CFunc::indicator(&a, &s);
                let eb = CFunc::indicator(&b, &s);
                assert_eq!(ea.mul(&eb), CFunc::indicator(&a.intersection(&b), &s));
                if a.is_disjoint(&b) {
                    assert_eq!(ea.add(&eb), CFunc::indicator(&a.union(&b), &s));
                }
            }
        }
    }

    #[test]
    fn clopen_enumeration_counts() {
        let s = Spectrum::of(&diag(&["t", "t^2"])).unwrap();
        let all = Clopen::enumerate(&s);
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], Clopen::empty());
        assert_eq!(all[7], Clopen::whole(&s));
        assert_eq!(pts(true, &[1]).complement(&s), pts(false, &[2]));
    }

    #[test]
    fn measure_examples() {
        let t = diag(&["t", "t"]);
        let sys = t.system().clone();
        let s = Spectrum::of(&t).unwrap();
        assert_eq!(measure_of(&Clopen::empty(), &t).unwrap(), OpSY::zero(sys.clone()));
        assert_eq!(measure_of(&Clopen::whole(&s), &t).unwrap(), OpSY::identity(sys.clone()));
        assert_eq!(
            measure_of(&pts(false, &[1]), &t).unwrap(),
            OpSY::diagonal(sys.clone(), lam(&["1", "1"])).unwrap()
        );
        assert_eq!(
            measure_of(&pts(true, &[]), &t).unwrap(),
            OpSY::new(sys, fe("1"), lam(&["-1", "-1"])).unwrap()
        );
        assert!(matches!(measure_of(&pts(false, &[2]), &t), Err(Error::UnknownPoint(_))));
    }

    #[test]
    fn measure_with_distinct_eigenvalues() {
        // m({λ₀, λᵢ}) = I − Σ_{j≠i} Pⱼ
        let t = diag(&["t", "t^2", "t^3"]);
        let sys = t.system().clone();
        let m = measure_of(&pts(true, &[2]), &t).unwrap();
        assert_eq!(m, OpSY::new(sys, fe("1"), lam(&["-1", "0", "-1"])).unwrap());
    }

    #[test]
    fn riemann_examples() {
        let t = diag(&["t", "t^2", "t"]);
        let s = Spectrum::of(&t).unwrap();
        let whole = Clopen::whole(&s);
        let f = CFunc::from_poly(&lam(&["1", "1/t", "3"]), &s);
        let fine = TaggedPartition::singletons(&whole);
        assert_eq!(riemann_sum(&f, &fine, &t).unwrap(), integrate(&f, &whole, &t).unwrap());

        let coarse = TaggedPartition::new(vec![Cell {
            cell: whole.clone(),
            tag: PointRef::Zero,
        }]);
        let id = CFunc::identity(&s);
        assert_eq!(riemann_sum(&id, &coarse, &t).unwrap(), OpSY::zero(t.system().clone()));

        let c = pts(true, &[2]);
        let eta = CFunc::indicator(&c, &s);
        let part = TaggedPartition::new(vec![
            Cell {
                cell: c.clone(),
                tag: PointRef::Point(2),
            },
            Cell {
                cell: c.complement(&s),
                tag: PointRef::Point(1),
            },
        ]);
        assert_eq!(riemann_sum(&eta, &part, &t).unwrap(), measure_of(&c, &t).unwrap());
    }

    #[test]
    fn invalid_partitions() {
        let t = diag(&["t", "t^2"]);
        let s = Spectrum::of(&t).unwrap();
        let f = CFunc::constant(FieldElem::one());
        let overlap = TaggedPartition::new(vec![
            Cell {
                cell: pts(true, &[1]),
                tag: PointRef::Zero,
            },
            Cell {
                cell: pts(false, &[1, 2]),
                tag: PointRef::Point(2),
            },
        ]);
        assert!(matches!(riemann_sum(&f, &overlap, &t), Err(Error::InvalidPartition(_))));
        let bad_tag = TaggedPartition::new(vec![Cell {
            cell: pts(false, &[1]),
            tag: PointRef::Zero,
        }]);
        assert!(matches!(bad_tag.validate(&s), Err(Error::InvalidPartition(_))));
        let a = TaggedPartition::singletons(&pts(false, &[1]));
        let b = TaggedPartition::singletons(&pts(false, &[2]));
        assert!(matches!(is_refinement(&a, &b, &s), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn integrate_examples() {
        let t = diag(&["t", "t", "t^2"]);
        let sys = t.system().clone();
        let s = Spectrum::of(&t).unwrap();
        let whole = Clopen::whole(&s);
        assert_eq!(
            integrate(&CFunc::constant(FieldElem::one()), &whole, &t).unwrap(),
            OpSY::identity(sys.clone())
        );
        assert_eq!(integrate(&CFunc::identity(&s), &whole, &t).unwrap(), t);

        // f(0)I + [f(t) − f(0)](P₁+P₂) + [f(t²) − f(0)]P₃
        let f = CFunc::new(fe("2"), BTreeMap::from([(1, fe("1/t")), (2, fe("1+t"))]));
        let expected = OpSY::new(sys, fe("2"), lam(&["1/t-2", "1/t-2", "1+t-2"])).unwrap();
        assert_eq!(psi(&f, &t).unwrap(), expected);
    }

    #[test]
    fn integrate_over_subset_is_integral_of_product() {
        let t = diag(&["t", "0", "t^2", "5"]);
        let s = Spectrum::of(&t).unwrap();
        let f = CFunc::from_poly(&lam(&["1-t", "2", "1/t"]), &s);
        for c in Clopen::enumerate(&s) {
            let lhs = integrate(&f, &c, &t).unwrap();
            let rhs = psi(&f.mul(&CFunc::indicator(&c, &s)), &t).unwrap();
            assert_eq!(lhs, rhs, "C = {c:?}");
        }
    }

    #[test]
    fn psi_examples() {
        let t = diag(&["t", "t^2", "1/(1+t)"]);
        let s = Spectrum::of(&t).unwrap();
        assert_eq!(
            psi(&CFunc::constant(FieldElem::one()), &t).unwrap(),
            OpSY::identity(t.system().clone())
        );
        let c = pts(false, &[1, 3]);
        let e = psi(&CFunc::indicator(&c, &s), &t).unwrap();
        assert_eq!(e, measure_of(&c, &t).unwrap());
        assert_eq!(e.compose(&e).unwrap(), e);
        let f = CFunc::from_poly(&lam(&["1", "t"]), &s);
        let g = CFunc::new(fe("t"), BTreeMap::from([(2, fe("3"))]));
        assert_eq!(
            psi(&f.mul(&g), &t).unwrap(),
            psi(&f, &t).unwrap().compose(&psi(&g, &t).unwrap()).unwrap()
        );
        assert_eq!(gelfand_transform(&psi(&g, &t).unwrap(), &t).unwrap(), g);
    }

    #[test]
    fn lagrange_examples() {
        let t = diag(&["t"]);
        let s = Spectrum::of(&t).unwrap();
        assert_eq!(
            lagrange_interpolate(&CFunc::constant(FieldElem::one()), &t).unwrap(),
            lam(&["1"])
        );
        assert_eq!(
            lagrange_interpolate(&CFunc::identity(&s), &t).unwrap(),
            lam(&["0", "1"])
        );
        let f = CFunc::indicator(&pts(false, &[1]), &s);
        let coeffs = lagrange_interpolate(&f, &t).unwrap();
        assert_eq!(coeffs, lam(&["0", "1/t"]));
        let op = t.polynomial(&coeffs);
        assert_eq!(op, crate::spectral::vandermonde_projection(&t, 1).unwrap());
        assert_eq!(op, psi(&f, &t).unwrap());
        assert!(lagrange_interpolate(&CFunc::constant(FieldElem::zero()), &t)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn lagrange_reproduces_psi() {
        let t = diag(&["t", "t^2", "1", "t", "0"]);
        let s = Spectrum::of(&t).unwrap();
        let f = CFunc::new(fe("1/t"), BTreeMap::from([(1, fe("2")), (3, fe("t^5"))]));
        let coeffs = lagrange_interpolate(&f, &t).unwrap();
        assert!(coeffs.len() <= s.size());
        assert_eq!(t.polynomial(&coeffs), psi(&f, &t).unwrap());
    }

    #[test]
    fn refinement_examples() {
        let s = Spectrum::of(&diag(&["t", "t^2", "t^3"])).unwrap();
        let whole = Clopen::whole(&s);
        let a = TaggedPartition::new(vec![
            Cell {
                cell: pts(true, &[1]),
                tag: PointRef::Zero,
            },
            Cell {
                cell: pts(false, &[2, 3]),
                tag: PointRef::Point(3),
            },
        ]);
        let crossing = TaggedPartition::new(vec![
            Cell {
                cell: pts(true, &[2]),
                tag: PointRef::Point(2),
            },
            Cell {
                cell: pts(false, &[1, 3]),
                tag: PointRef::Point(1),
            },
        ]);
        assert!(is_refinement(&a, &a, &s).unwrap());
        assert!(is_refinement(&TaggedPartition::singletons(&whole), &a, &s).unwrap());
        assert!(is_refinement(&TaggedPartition::singletons(&whole), &crossing, &s).unwrap());
        assert!(!is_refinement(&a, &crossing, &s).unwrap());
        assert!(!is_refinement(&crossing, &a, &s).unwrap());
    }

    #[test]
    fn tagged_partition_enumeration() {
        // Σ over set partitions of Π |block| for n = 1..4: 1, 3, 10, 41
        for (n, expected) in [(1usize, 1usize), (2, 3), (3, 10), (4, 41)] {
            let c = Clopen {
                includes_zero: true,
                points: (1..n).collect(),
            };
            assert_eq!(TaggedPartition::enumerate(&c).len(), expected);
        }
        assert_eq!(set_partitions(4).len(), 15);
        assert_eq!(
            TaggedPartition::enumerate(&Clopen::empty()),
            vec![TaggedPartition::default()]
        );
    }

    #[test]
    fn oscillation() {
        let s = Spectrum::of(&diag(&["t", "t^2"])).unwrap();
        let f = CFunc::identity(&s);
        assert_eq!(f.oscillation(&pts(true, &[])), NormExp::Infinite);
        assert_eq!(f.oscillation(&pts(true, &[2])), NormExp::from_int(2));
        assert_eq!(f.oscillation(&pts(true, &[1, 2])), NormExp::from_int(1));
        assert_eq!(f.sup_norm(&s), NormExp::from_int(1));
    }

    #[test]
    fn json_forms() {
        let c: Clopen = serde_json::from_str(r#"{"includes_zero": false, "points": ["p1", "p3"]}"#).unwrap();
        assert_eq!(c, pts(false, &[1, 3]));
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"includes_zero":false,"points":["p1","p3"]}"#
        );
        let c: Clopen = serde_json::from_str(r#"{"points": ["p0"]}"#).unwrap();
        assert_eq!(c, pts(true, &[]));

        let s = Spectrum::of(&diag(&["t", "t^2"])).unwrap();
        let r: CFuncRepr = serde_json::from_str(r#"{"at_zero": "1", "values": {"p2": "t"}}"#).unwrap();
        let f = r.resolve(&s).unwrap();
        assert_eq!(f.eval(PointRef::Point(1)), &fe("1"));
        assert_eq!(f.eval(PointRef::Point(2)), &fe("t"));
        assert_eq!(CFuncRepr::from(&f), r);
        let r: CFuncRepr = serde_json::from_str(r#"{"poly": ["0", "1"]}"#).unwrap();
        assert_eq!(r.resolve(&s).unwrap(), CFunc::identity(&s));
        let part: TaggedPartition =
            serde_json::from_str(r#"[{"cell": {"includes_zero": true, "points": []}, "tag": "zero"}]"#).unwrap();
        assert_eq!(part.cells[0].tag, PointRef::Zero);
        assert_eq!(
            serde_json::to_string(&part).unwrap(),
            r#"[{"cell":{"includes_zero":true,"points":[]},"tag":"p0"}]"#
        );
        let bad: CFuncRepr = serde_json::from_str(r#"{"at_zero": "1", "values": {"p9": "t"}}"#).unwrap();
        assert!(matches!(bad.resolve(&s), Err(Error::UnknownPoint(_))));
    }
}
