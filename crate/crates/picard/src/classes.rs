//! Exact coefficient arithmetic and divisor-class vectors.
//!
//! Coefficients are affine-linear forms in named parameters (constant plus
//! rational multiples of parameters such as `b5`), which keeps equality
//! decidable. Classes are finitely supported maps from canonical basis
//! elements to coefficients; an optional support mask turns a class into a
//! partial class asserted only on the masked elements.

use crate::spaces::{Gen, SpaceId, SpaceKind};
use crate::{Error, Rat, Result};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational affine-linear form in named parameters.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coefficient {
    pub constant: Rat,
    pub terms: BTreeMap<String, Rat>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::default()
    }

    pub fn numeric(c: Rat) -> Self {
        Coefficient { constant: c, terms: BTreeMap::new() }
    }

    pub fn param(name: &str) -> Self {
        Coefficient::param_scaled(name, Rat::one())
    }

    pub fn param_scaled(name: &str, scale: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !scale.is_zero() {
            terms.insert(name.to_string(), scale);
        }
        Coefficient { constant: Rat::zero(), terms }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    pub fn is_numeric(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_numeric(&self) -> Result<Rat> {
        if self.is_numeric() {
            Ok(self.constant.clone())
        } else {
            Err(Error::NonNumericScalar(self.to_string()))
        }
    }

    fn normalize(mut self) -> Self {
        self.terms.retain(|_, v| !v.is_zero());
        self
    }

    /// Evaluates bound parameters; unbound parameters stay symbolic.
    pub fn substitute(&self, bindings: &BTreeMap<String, Rat>) -> Coefficient {
        let mut out = Coefficient::numeric(self.constant.clone());
        for (name, scale) in &self.terms {
            match bindings.get(name) {
                Some(v) => out.constant += scale * v,
                None => {
                    out.terms.insert(name.clone(), scale.clone());
                }
            }
        }
        out.normalize()
    }

    /// Fully numeric value with every parameter forced to a binding;
    /// errors on any unbound parameter.
    pub fn evaluate(&self, bindings: &BTreeMap<String, Rat>) -> Result<Rat> {
        let sub = self.substitute(bindings);
        sub.terms
            .keys()
            .next()
            .map(|p| Err(Error::UnboundParameter(p.clone())))
            .unwrap_or(Ok(sub.constant))
    }
}

impl From<Rat> for Coefficient {
    fn from(c: Rat) -> Self {
        Coefficient::numeric(c)
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(mut self, rhs: Coefficient) -> Coefficient {
        self.constant += rhs.constant;
        for (name, v) in rhs.terms {
            *self.terms.entry(name).or_insert_with(Rat::zero) += v;
        }
        self.normalize()
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: Coefficient) -> Coefficient {
        self + (-rhs)
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(mut self) -> Coefficient {
        self.constant = -self.constant;
        for v in self.terms.values_mut() {
            *v = -v.clone();
        }
        self
    }
}

impl Mul<&Rat> for Coefficient {
    type Output = Coefficient;
    fn mul(mut self, rhs: &Rat) -> Coefficient {
        self.constant *= rhs;
        for v in self.terms.values_mut() {
            *v *= rhs;
        }
        self.normalize()
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (name, scale) in &self.terms {
            let mag = scale.abs();
            let sign = scale.is_negative();
            match (first, sign) {
                (true, false) => {}
                (true, true) => write!(f, "-")?,
                (false, false) => write!(f, " + ")?,
                (false, true) => write!(f, " - ")?,
            }
            if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
            first = false;
        }
        if !self.constant.is_zero() || first {
            let mag = self.constant.abs();
            match (first, self.constant.is_negative()) {
                (true, false) => write!(f, "{mag}")?,
                (true, true) => write!(f, "-{mag}")?,
                (false, false) => write!(f, " + {mag}")?,
                (false, true) => write!(f, " - {mag}")?,
            }
        }
        Ok(())
    }
}

/// Finitely supported assignment of coefficients to basis elements on one
/// space. `mask = None` means the class is total; `Some(support)` restricts
/// the assertion to the listed elements (a partial class).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub space: SpaceId,
    entries: BTreeMap<Gen, Coefficient>,
    pub mask: Option<BTreeSet<Gen>>,
}

impl DivisorClass {
    pub fn zero(space: SpaceId) -> Self {
        DivisorClass { space, entries: BTreeMap::new(), mask: None }
    }

    pub fn unit(space: SpaceId, gen: Gen) -> Result<Self> {
        let mut c = DivisorClass::zero(space);
        c.set(gen, Coefficient::numeric(Rat::one()))?;
        Ok(c)
    }

    pub fn set(&mut self, gen: Gen, coeff: Coefficient) -> Result<()> {
        gen.validate(&self.space)?;
        if coeff.is_zero() {
            self.entries.remove(&gen);
        } else {
            self.entries.insert(gen, coeff);
        }
        Ok(())
    }

    pub fn add_to(&mut self, gen: Gen, coeff: Coefficient) -> Result<()> {
        let current = self.coefficient_of(&gen);
        self.set(gen, current + coeff)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Gen, &Coefficient)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Gen> {
        self.entries.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.mask.is_none()
    }

    /// Restricts the class to a partial one asserted on `support` only.
    pub fn with_mask(mut self, support: BTreeSet<Gen>) -> Self {
        self.entries.retain(|g, _| support.contains(g));
        self.mask = Some(support);
        self
    }

    pub fn is_asserted(&self, gen: &Gen) -> bool {
        match &self.mask {
            None => true,
            Some(m) => m.contains(gen),
        }
    }

    /// Stored coefficient, or zero. For partial classes the zero default is
    /// only meaningful on asserted elements; see [`Self::is_asserted`].
    pub fn coefficient_of(&self, gen: &Gen) -> Coefficient {
        self.entries.get(gen).cloned().unwrap_or_default()
    }

    fn check_space(&self, other: &DivisorClass) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                expected: self.space.to_string(),
                got: other.space.to_string(),
            });
        }
        Ok(())
    }

    fn joined_mask(&self, other: &DivisorClass) -> Option<BTreeSet<Gen>> {
        match (&self.mask, &other.mask) {
            (None, None) => None,
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (Some(a), Some(b)) => Some(a.intersection(b).cloned().collect()),
        }
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.check_space(other)?;
        let mask = self.joined_mask(other);
        let mut out = DivisorClass::zero(self.space);
        for (g, c) in self.entries.iter().chain(other.entries.iter()) {
            out.add_to(g.clone(), c.clone())?;
        }
        if let Some(m) = mask {
            out = out.with_mask(m);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.add(&other.clone().scale(&-Rat::one()))
    }

    pub fn scale(mut self, t: &Rat) -> DivisorClass {
        if t.is_zero() {
            self.entries.clear();
            return self;
        }
        for c in self.entries.values_mut() {
            *c = c.clone() * t;
        }
        self
    }

    /// Entry-wise multiply by a numeric coefficient.
    pub fn scale_coeff(self, t: &Coefficient) -> Result<DivisorClass> {
        Ok(self.scale(&t.as_numeric()?))
    }

    pub fn substitute_params(&self, bindings: &BTreeMap<String, Rat>) -> DivisorClass {
        let mut out = DivisorClass::zero(self.space);
        for (g, c) in &self.entries {
            out.set(g.clone(), c.substitute(bindings)).expect("keys stay canonical");
        }
        if let Some(m) = &self.mask {
            out.mask = Some(m.clone());
        }
        out
    }

    /// Exact agreement with `other` on every element of `support`.
    pub fn agrees_on(&self, other: &DivisorClass, support: &BTreeSet<Gen>) -> bool {
        support
            .iter()
            .all(|g| self.coefficient_of(g) == other.coefficient_of(g))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(g, c)| {
                let mut obj = serde_json::Map::new();
                obj.insert("gen".into(), g.token(&self.space).into());
                obj.insert("const".into(), c.constant.to_string().into());
                if !c.terms.is_empty() {
                    let params: serde_json::Map<String, serde_json::Value> = c
                        .terms
                        .iter()
                        .map(|(k, v)| (k.clone(), v.to_string().into()))
                        .collect();
                    obj.insert("params".into(), params.into());
                }
                obj.into()
            })
            .collect();
        let mut root = serde_json::Map::new();
        root.insert("space".into(), space_json(&self.space));
        root.insert("entries".into(), entries.into());
        if let Some(m) = &self.mask {
            let support: Vec<serde_json::Value> =
                m.iter().map(|g| g.token(&self.space).into()).collect();
            root.insert("asserted_support".into(), support.into());
        }
        root.into()
    }
}

pub fn space_json(space: &SpaceId) -> serde_json::Value {
    let kind = match space.kind {
        SpaceKind::Base => "base",
        SpaceKind::Pointed => "pointed",
        SpaceKind::Symmetric => "symmetric",
    };
    serde_json::json!({ "kind": kind, "genus": space.genus, "markings": space.markings })
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // one grammar term per (gen, param) and per nonzero constant
        for (gen, coeff) in &self.entries {
            let token = gen.token(&self.space);
            let mut emit = |mag: &Rat, label: Option<&str>, neg: bool, first: &mut bool| {
                let _ = match (*first, neg) {
                    (true, false) => Ok(()),
                    (true, true) => write!(f, "-"),
                    (false, false) => write!(f, " + "),
                    (false, true) => write!(f, " - "),
                };
                let _ = match label {
                    Some(p) if mag.is_one() => write!(f, "{p}*{token}"),
                    Some(p) => write!(f, "{mag}*{p}*{token}"),
                    None if mag.is_one() => write!(f, "{token}"),
                    None => write!(f, "{mag}*{token}"),
                };
                *first = false;
            };
            for (name, scale) in &coeff.terms {
                emit(&scale.abs(), Some(name), scale.is_negative(), &mut first);
            }
            if !coeff.constant.is_zero() {
                emit(&coeff.constant.abs(), None, coeff.constant.is_negative(), &mut first);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn m(g: u32, n: u32) -> SpaceId {
        SpaceId::pointed(g, n).unwrap()
    }

    #[test]
    fn add_cancels() {
        let sp = m(3, 1);
        let a = DivisorClass::unit(sp, Gen::Lambda).unwrap();
        let b = a.clone().scale(&int(-1));
        assert!(a.add(&b).unwrap().is_zero());
    }

    #[test]
    fn add_merges_disjoint_support() {
        let sp = m(3, 1);
        let mut a = DivisorClass::zero(sp);
        a.set(Gen::Lambda, int(13).into()).unwrap();
        a.set(Gen::DeltaIrr, int(-2).into()).unwrap();
        let b = DivisorClass::unit(sp, Gen::Psi(1)).unwrap();
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.coefficient_of(&Gen::Lambda), int(13).into());
        assert_eq!(sum.coefficient_of(&Gen::Psi(1)), int(1).into());
        assert_eq!(sum.support().count(), 3);
    }

    #[test]
    fn parameter_cancellation() {
        let sp = SpaceId::base(10).unwrap();
        let mut a = DivisorClass::zero(sp);
        a.set(Gen::Lambda, int(7).into()).unwrap();
        a.set(Gen::DeltaBase(5), -Coefficient::param("b5")).unwrap();
        let mut b = DivisorClass::zero(sp);
        b.set(Gen::Lambda, int(7).into()).unwrap();
        b.set(Gen::DeltaBase(5), Coefficient::param("b5")).unwrap();
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.support().count(), 1);
        assert_eq!(sum.coefficient_of(&Gen::Lambda), int(14).into());
    }

    #[test]
    fn scale_by_zero_and_one() {
        let sp = m(3, 1);
        let a = DivisorClass::unit(sp, Gen::Lambda).unwrap();
        assert!(a.clone().scale(&int(0)).is_zero());
        assert_eq!(a.clone().scale(&int(1)), a);
    }

    #[test]
    fn scale_requires_numeric_scalar() {
        let sp = m(3, 1);
        let a = DivisorClass::unit(sp, Gen::Lambda).unwrap();
        assert!(matches!(
            a.scale_coeff(&Coefficient::param("b5")),
            Err(Error::NonNumericScalar(_))
        ));
    }

    #[test]
    fn substitute_evaluates_affine_form() {
        // 2*b5 - 2 + C(|c-5|+1, 2) at c = 5, b5 = 6 gives 10
        let form = Coefficient::param_scaled("b5", int(2)) + Coefficient::numeric(int(-2));
        let bound: BTreeMap<String, Rat> = [("b5".to_string(), int(6))].into();
        assert_eq!(form.substitute(&bound), int(10).into());
    }

    #[test]
    fn substitute_commutes_with_add() {
        let bound: BTreeMap<String, Rat> = [("b5".to_string(), rat(7, 2))].into();
        let sp = SpaceId::base(10).unwrap();
        let mut a = DivisorClass::zero(sp);
        a.set(Gen::DeltaBase(5), Coefficient::param("b5")).unwrap();
        let mut b = DivisorClass::zero(sp);
        b.set(Gen::DeltaBase(5), Coefficient::param_scaled("b5", int(3)) + int(1).into())
            .unwrap();
        let lhs = a.add(&b).unwrap().substitute_params(&bound);
        let rhs = a.substitute_params(&bound).add(&b.substitute_params(&bound)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn space_mismatch_is_an_error() {
        let a = DivisorClass::unit(m(3, 1), Gen::Lambda).unwrap();
        let b = DivisorClass::unit(m(3, 2), Gen::Lambda).unwrap();
        assert!(matches!(a.add(&b), Err(Error::SpaceMismatch { .. })));
    }

    #[test]
    fn coefficient_display() {
        let c = Coefficient::param_scaled("b5", int(2)) + Coefficient::numeric(int(-2));
        assert_eq!(c.to_string(), "2*b5 - 2");
        assert_eq!(Coefficient::zero().to_string(), "0");
        assert_eq!(Coefficient::numeric(rat(-3, 2)).to_string(), "-3/2");
    }

    #[test]
    fn masked_class_drops_outside_entries() {
        let sp = m(7, 2);
        let mut a = DivisorClass::zero(sp);
        a.set(Gen::Lambda, int(44).into()).unwrap();
        a.set(Gen::DeltaIrr, int(-6).into()).unwrap();
        let masked = a.with_mask([Gen::Lambda].into());
        assert!(masked.is_asserted(&Gen::Lambda));
        assert!(!masked.is_asserted(&Gen::DeltaIrr));
        assert!(masked.coefficient_of(&Gen::DeltaIrr).is_zero());
    }
}
