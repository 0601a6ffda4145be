use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MAX_RANK};
use crate::error::{Error, Result};

/// Cohomology (`x`, K-theory / shriek classes) or homology (`y`, K-homology).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variance {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
}

/// The torus `T^d` or its Pontryagin dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Base,
    Dual,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Base => Side::Dual,
            Side::Dual => Side::Base,
        }
    }
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variance::X => "x",
            Variance::Y => "y",
        })
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Base => "base",
            Side::Dual => "dual",
        })
    }
}

/// Which exterior algebra a class lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    pub d: usize,
    pub variance: Variance,
    pub side: Side,
}

impl AlgebraSpec {
    pub fn new(d: usize, variance: Variance, side: Side) -> Self {
        assert!(d <= MAX_RANK, "rank {d} exceeds {MAX_RANK}");
        AlgebraSpec { d, variance, side }
    }

    /// Label for a monomial: `x[1,2]` on the base torus, `xh[1,2]` on the dual.
    pub fn label(&self, m: Monomial) -> String {
        let hat = match self.side {
            Side::Base => "",
            Side::Dual => "h",
        };
        format!("{}{}{}", self.variance, hat, m)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ{}(Z^{}) on {}", self.variance, self.d, self.side)
    }
}

/// A finitely supported integer combination of monomials. Zero coefficients
/// are never stored, so structural equality is equality of classes.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ClassWire", into = "ClassWire")]
pub struct ExteriorClass {
    spec: AlgebraSpec,
    terms: BTreeMap<Monomial, BigInt>,
}

impl ExteriorClass {
    pub fn zero(spec: AlgebraSpec) -> Self {
        ExteriorClass {
            spec,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(spec: AlgebraSpec, m: Monomial, coefficient: impl Into<BigInt>) -> Self {
        let mut c = Self::zero(spec);
        c.add_term(m, coefficient.into());
        c
    }

    /// The unit `e_∅`.
    pub fn unit(spec: AlgebraSpec) -> Self {
        Self::monomial(spec, Monomial::UNIT, 1)
    }

    /// Convenience constructor from 1-based index lists.
    pub fn from_terms<I, C>(spec: AlgebraSpec, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, C)>,
        C: Into<BigInt>,
    {
        let mut c = Self::zero(spec);
        for (idx, coeff) in terms {
            let m = Monomial::from_indices(&idx, spec.d)?;
            c.add_term(m, coeff.into());
        }
        Ok(c)
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, m: Monomial) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, coefficient: BigInt) {
        assert!(
            m.fits(self.spec.d),
            "monomial {m} outside rank {}",
            self.spec.d
        );
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Grades that occur with a nonzero coefficient, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|m| m.grade()).collect();
        g.dedup();
        g
    }

    /// The grade if the class is nonzero and homogeneous.
    pub fn pure_grade(&self) -> Option<usize> {
        match self.grades().as_slice() {
            [g] => Some(*g),
            _ => None,
        }
    }

    pub fn scaled(&self, factor: &BigInt) -> Self {
        let mut out = Self::zero(self.spec);
        if !factor.is_zero() {
            for (m, c) in &self.terms {
                out.terms.insert(*m, c * factor);
            }
        }
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-BigInt::one())
    }

    pub fn checked_add(&self, other: &ExteriorClass) -> Result<Self> {
        self.require_same_spec(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &ExteriorClass) -> Result<Self> {
        self.checked_add(&other.negated())
    }

    /// Same coefficients in another algebra of the same rank.
    pub fn relabeled(&self, spec: AlgebraSpec) -> Result<Self> {
        if spec.d != self.spec.d {
            return Err(Error::Spec(format!(
                "cannot relabel rank {} as rank {}",
                self.spec.d, spec.d
            )));
        }
        Ok(ExteriorClass {
            spec,
            terms: self.terms.clone(),
        })
    }

    fn require_same_spec(&self, other: &ExteriorClass) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::Spec(format!(
                "{} does not match {}",
                self.spec, other.spec
            )));
        }
        Ok(())
    }

    /// Product in the exterior algebra, extended bilinearly from
    /// `e_I ∧ e_J = ±e_{I∪J}` for disjoint `I, J` and `0` otherwise.
    pub fn wedge(&self, other: &ExteriorClass) -> Result<Self> {
        self.require_same_spec(other)?;
        let mut out = Self::zero(self.spec);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(sign) = a.wedge_sign(*b) {
                    let prod = ca * cb;
                    out.add_term(a.union(*b), if sign < 0 { -prod } else { prod });
                }
            }
        }
        Ok(out)
    }
}

pub fn wedge(a: &ExteriorClass, b: &ExteriorClass) -> Result<ExteriorClass> {
    a.wedge(b)
}

/// The K-theory / K-homology pairing `⟨x_I, y_J⟩ = δ_{IJ}`, extended bilinearly.
pub fn pair_kh(x: &ExteriorClass, y: &ExteriorClass) -> Result<BigInt> {
    if x.spec.variance != Variance::X || y.spec.variance != Variance::Y {
        return Err(Error::Variance(format!(
            "pairing needs an x-class and a y-class, got {} and {}",
            x.spec.variance, y.spec.variance
        )));
    }
    if x.spec.d != y.spec.d || x.spec.side != y.spec.side {
        return Err(Error::Spec(format!(
            "cannot pair {} with {}",
            x.spec, y.spec
        )));
    }
    Ok(x.terms
        .iter()
        .filter_map(|(m, c)| y.terms.get(m).map(|c2| c * c2))
        .sum())
}

impl fmt::Display for ExteriorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let label = self.spec.label(*m);
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{c}·{label}")?,
                (0, true) => write!(f, "-{}·{label}", c.abs())?,
                (_, false) => write!(f, " + {c}·{label}")?,
                (_, true) => write!(f, " - {}·{label}", c.abs())?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExteriorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExteriorClass({}; {})", self.spec, self)
    }
}

/// JSON integer that falls back to a decimal string beyond 64 bits.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WireInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for WireInt {
    fn from(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(s) => WireInt::Small(s),
            None => WireInt::Big(v.to_string()),
        }
    }
}

impl TryFrom<WireInt> for BigInt {
    type Error = Error;

    fn try_from(w: WireInt) -> Result<BigInt> {
        match w {
            WireInt::Small(v) => Ok(BigInt::from(v)),
            WireInt::Big(s) => s
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    idx: Vec<usize>,
    c: WireInt,
}

#[derive(Serialize, Deserialize)]
struct ClassWire {
    d: usize,
    variance: Variance,
    side: Side,
    terms: Vec<TermWire>,
}

impl From<ExteriorClass> for ClassWire {
    fn from(c: ExteriorClass) -> Self {
        ClassWire {
            d: c.spec.d,
            variance: c.spec.variance,
            side: c.spec.side,
            terms: c
                .terms
                .iter()
                .map(|(m, v)| TermWire {
                    idx: m.indices(),
                    c: v.into(),
                })
                .collect(),
        }
    }
}

impl TryFrom<ClassWire> for ExteriorClass {
    type Error = Error;

    fn try_from(w: ClassWire) -> Result<Self> {
        if w.d > MAX_RANK {
            return Err(Error::Dimension(format!("rank {} exceeds {MAX_RANK}", w.d)));
        }
        let spec = AlgebraSpec::new(w.d, w.variance, w.side);
        let mut out = ExteriorClass::zero(spec);
        for t in w.terms {
            let m = Monomial::from_indices(&t.idx, w.d)?;
            let c = BigInt::try_from(t.c)?;
            if c.is_zero() {
                return Err(Error::Parse(format!("zero coefficient at {:?}", t.idx)));
            }
            if out.terms.contains_key(&m) {
                return Err(Error::Parse(format!("duplicate term {:?}", t.idx)));
            }
            out.terms.insert(m, c);
        }
        Ok(out)
    }
}
