//! Slope computation, canonical-class interpolation ledgers, the slope-7
//! decomposition, rigidity/uniruledness certificate checkers, and the
//! Reid-Tai age primitive.

use crate::classes::DivisorClass;
use crate::curves::{pair, TestCurve};
use crate::maps::forget_all_pullback;
use crate::registry;
use crate::spaces::{Gen, SpaceId};
use crate::{int, Error, Rat, Result};
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Slope of an effective class a*L - sum b_i d[i]: a / min b_i, or
/// infinite when the boundary does not obstruct (some b_i <= 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slope {
    Finite(Rat),
    Infinite,
}

impl std::fmt::Display for Slope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Slope::Finite(v) => write!(f, "{v}"),
            Slope::Infinite => write!(f, "+inf"),
        }
    }
}

/// Slope of a class on a base space. Parameterized coefficients are
/// evaluated at their declared lower bounds (`bounds`); the minimum runs
/// over every boundary element of the basis, so absent entries count as 0.
pub fn slope(a: &DivisorClass, bounds: &BTreeMap<String, Rat>) -> Result<Slope> {
    if !a.space.is_base() {
        return Err(Error::SpaceMismatch {
            expected: "base space".into(),
            got: a.space.to_string(),
        });
    }
    let lambda = a.coefficient_of(&Gen::Lambda).evaluate(bounds)?;
    if !lambda.is_positive() {
        return Err(Error::UndefinedSlope(lambda.to_string()));
    }
    let mut min_b: Option<Rat> = None;
    let mut boundary = vec![Gen::DeltaIrr];
    boundary.extend((1..=a.space.half_genus()).map(Gen::DeltaBase));
    for gen in boundary {
        let b = -a.coefficient_of(&gen).evaluate(bounds)?;
        min_b = Some(match min_b {
            None => b,
            Some(m) => m.min(b),
        });
    }
    match min_b {
        Some(m) if m.is_positive() => Ok(Slope::Finite(lambda / m)),
        _ => Ok(Slope::Infinite),
    }
}

/// Exact expression of a target class as a fixed combination of named
/// generators plus a residual confined to an allowed support.
#[derive(Debug, Clone)]
pub struct InterpolationLedger {
    pub target: DivisorClass,
    pub generators: Vec<(DivisorClass, Rat)>,
    pub residual: DivisorClass,
    pub allowed_support: BTreeSet<Gen>,
}

impl InterpolationLedger {
    /// Exact recombination identity target = sum coeff*gen + residual.
    pub fn recombines(&self) -> bool {
        let mut sum = self.residual.clone();
        for (gen, c) in &self.generators {
            sum = match sum.add(&gen.clone().scale(c)) {
                Ok(s) => s,
                Err(_) => return false,
            };
        }
        sum == self.target
    }
}

/// Subtracts the weighted generators from the target; errors if the
/// residual leaves the allowed support.
pub fn solve_interpolation(
    target: &DivisorClass,
    generators: &[(DivisorClass, Rat)],
    allowed_support: &BTreeSet<Gen>,
) -> Result<InterpolationLedger> {
    let mut residual = target.clone();
    for (gen, c) in generators {
        residual = residual.sub(&gen.clone().scale(c))?;
    }
    let offenders: Vec<String> = residual
        .support()
        .filter(|g| !allowed_support.contains(g))
        .map(|g| g.token(&target.space))
        .collect();
    if !offenders.is_empty() {
        return Err(Error::ResidualEscapesSupport { offenders: offenders.join(", ") });
    }
    Ok(InterpolationLedger {
        target: target.clone(),
        generators: generators.to_vec(),
        residual,
        allowed_support: allowed_support.clone(),
    })
}

/// Witness of the decomposition
/// K = (14 - 2a/b0) Lt + Dtilde_g + (2/b0) phi*(D) + sum gamma dt[i:c]
/// on `Cbar_{g,g}`, for D = a*L - sum b_i d[i] on `Mbar_g`.
#[derive(Debug, Clone)]
pub struct SlopeSevenWitness {
    pub g: u32,
    /// 14 - 2a/b0, the multiple of the pulled-back lambda class left over.
    pub surplus: Rat,
    /// 2/b0, the coefficient on the pulled-back copy of D.
    pub beta: Rat,
    /// Boundary residual gamma; all coefficients must be >= 0 to pass.
    pub residual: DivisorClass,
    pub negative: Vec<Gen>,
    pub verdict: bool,
}

impl SlopeSevenWitness {
    /// Recombines the witness and compares with the canonical class exactly.
    pub fn recombines(&self, d: &DivisorClass) -> Result<bool> {
        let space = SpaceId::symmetric(self.g, self.g)?;
        let mut sum = DivisorClass::unit(space, Gen::Lambda)?.scale(&self.surplus);
        sum = sum.add(&registry::aj_exceptional_class(self.g)?)?;
        sum = sum.add(&forget_all_pullback(d, &space)?.scale(&self.beta))?;
        sum = sum.add(&self.residual)?;
        Ok(sum == registry::canonical_class(&space))
    }
}

/// Decomposes the canonical class of `Cbar_{g,g}` against a small-slope
/// divisor D on `Mbar_g`. Passes iff the lambda surplus is strictly
/// positive and every boundary residual is nonnegative.
pub fn decompose_slope7(g: u32, d: &DivisorClass) -> Result<SlopeSevenWitness> {
    let base = SpaceId::base(g)?;
    if d.space != base {
        return Err(Error::SpaceMismatch { expected: base.to_string(), got: d.space.to_string() });
    }
    let a = d.coefficient_of(&Gen::Lambda).as_numeric()?;
    let b0 = -d.coefficient_of(&Gen::DeltaIrr).as_numeric()?;
    if !b0.is_positive() || !a.is_positive() {
        return Err(Error::UndefinedSlope(format!("a = {a}, b0 = {b0}")));
    }
    let surplus = int(14) - int(2) * &a / &b0;
    let beta = int(2) / &b0;
    let sym = SpaceId::symmetric(g, g)?;
    let mut residual = registry::canonical_class(&sym);
    residual = residual.sub(&DivisorClass::unit(sym, Gen::Lambda)?.scale(&surplus))?;
    residual = residual.sub(&registry::aj_exceptional_class(g)?)?;
    residual = residual.sub(&forget_all_pullback(d, &sym)?.scale(&beta))?;
    let mut negative = Vec::new();
    for (gen, c) in residual.entries() {
        if !matches!(gen, Gen::BoundarySym { .. }) {
            return Err(Error::Invalid(format!(
                "slope-7 residual escapes the boundary at {}",
                gen.token(&sym)
            )));
        }
        if c.as_numeric()?.is_negative() {
            negative.push(gen.clone());
        }
    }
    let verdict = negative.is_empty() && surplus.is_positive();
    Ok(SlopeSevenWitness { g, surplus, beta, residual, negative, verdict })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertVariant {
    FixedComponent,
    UniruledSingle,
    UniruledPair,
    MovingKNegative,
}

impl CertVariant {
    pub fn name(&self) -> &'static str {
        match self {
            CertVariant::FixedComponent => "fixed-component",
            CertVariant::UniruledSingle => "uniruled-single",
            CertVariant::UniruledPair => "uniruled-pair",
            CertVariant::MovingKNegative => "moving-k-negative",
        }
    }
}

/// Immutable certificate: the verdict is a pure function of the trace,
/// re-derivable by [`Certificate::recompute`].
#[derive(Debug, Clone)]
pub struct Certificate {
    pub variant: CertVariant,
    pub trace: Vec<(String, Rat)>,
    pub verdict: bool,
}

impl Certificate {
    fn entry(&self, label: &str) -> Option<&Rat> {
        self.trace.iter().find(|(l, _)| l == label).map(|(_, v)| v)
    }

    /// Re-derives the verdict from the stored trace alone.
    pub fn recompute(&self) -> bool {
        let get = |l: &str| self.entry(l);
        match self.variant {
            CertVariant::FixedComponent => {
                let (Some(d), Some(k), Some(m)) =
                    (get("curve.D"), get("curve.K"), get("multiplicity"))
                else {
                    return false;
                };
                let others_zero = self
                    .trace
                    .iter()
                    .filter(|(l, _)| l.starts_with("curve.E["))
                    .all(|(_, v)| v.is_zero());
                d.is_negative() && others_zero && *k == m * d
            }
            CertVariant::UniruledSingle | CertVariant::MovingKNegative => {
                let (Some(d), Some(k)) = (get("curve.D"), get("curve.K")) else {
                    return false;
                };
                !d.is_negative() && k.is_negative()
            }
            CertVariant::UniruledPair => {
                let vals: Option<Vec<&Rat>> = ["G1.D1", "G2.D2", "det1", "det2"]
                    .iter()
                    .map(|l| get(l))
                    .collect();
                let Some(v) = vals else { return false };
                v[0].is_negative() && v[1].is_negative() && !v[2].is_positive() && v[3].is_negative()
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let trace: Vec<serde_json::Value> = self
            .trace
            .iter()
            .map(|(l, v)| serde_json::json!({ "label": l, "value": v.to_string() }))
            .collect();
        serde_json::json!({
            "variant": self.variant.name(),
            "trace": trace,
            "verdict": if self.verdict { "pass" } else { "fail" },
        })
    }
}

fn numeric_pair(c: &TestCurve, a: &DivisorClass) -> Result<Rat> {
    pair(c, a)?.as_numeric()
}

/// Fixed-component certificate: the curve sweeps D, meets it negatively,
/// misses the other summands, and meets K with the declared multiplicity
/// of D, so every |nK| contains nD as a fixed part.
pub fn check_fixed_component(
    curve: &TestCurve,
    d: &DivisorClass,
    k: &DivisorClass,
    others: &[DivisorClass],
    multiplicity: &Rat,
) -> Result<Certificate> {
    if curve.covers.is_none() {
        return Err(Error::Invalid(format!(
            "curve {} carries no covering assertion",
            curve.name
        )));
    }
    let mut trace = vec![("curve.D".to_string(), numeric_pair(curve, d)?)];
    for (idx, e) in others.iter().enumerate() {
        trace.push((format!("curve.E[{idx}]"), numeric_pair(curve, e)?));
    }
    trace.push(("curve.K".to_string(), numeric_pair(curve, k)?));
    trace.push(("multiplicity".to_string(), multiplicity.clone()));
    let mut cert = Certificate { variant: CertVariant::FixedComponent, trace, verdict: false };
    cert.verdict = cert.recompute();
    Ok(cert)
}

/// Single-curve uniruledness certificate: a curve sweeping D (or moving
/// through a general point) with D-pairing >= 0 and K-pairing < 0.
pub fn check_uniruled_single(
    curve: &TestCurve,
    d: &DivisorClass,
    k: &DivisorClass,
) -> Result<Certificate> {
    if curve.covers.is_none() && !curve.through_general_point {
        return Err(Error::Invalid(format!(
            "curve {} neither covers a divisor nor passes through a general point",
            curve.name
        )));
    }
    let variant = if curve.through_general_point {
        CertVariant::MovingKNegative
    } else {
        CertVariant::UniruledSingle
    };
    let trace = vec![
        ("curve.D".to_string(), numeric_pair(curve, d)?),
        ("curve.K".to_string(), numeric_pair(curve, k)?),
    ];
    let mut cert = Certificate { variant, trace, verdict: false };
    cert.verdict = cert.recompute();
    Ok(cert)
}

/// Two-curve uniruledness certificate: curves covering D1 and D2 with
/// negative self-pairings whose elimination determinant against K is
/// negative.
pub fn check_uniruled_pair(
    c1: &TestCurve,
    c2: &TestCurve,
    d1: &DivisorClass,
    d2: &DivisorClass,
    k: &DivisorClass,
) -> Result<Certificate> {
    for c in [c1, c2] {
        if c.covers.is_none() {
            return Err(Error::Invalid(format!(
                "curve {} carries no covering assertion",
                c.name
            )));
        }
    }
    let g1d1 = numeric_pair(c1, d1)?;
    let g1d2 = numeric_pair(c1, d2)?;
    let g2d1 = numeric_pair(c2, d1)?;
    let g2d2 = numeric_pair(c2, d2)?;
    let g1k = numeric_pair(c1, k)?;
    let g2k = numeric_pair(c2, k)?;
    let det1 = &g1d1 * &g2d2 - &g1d2 * &g2d1;
    let det2 = &g1k * &g2d1 - &g1d1 * &g2k;
    let trace = vec![
        ("G1.D1".to_string(), g1d1),
        ("G1.D2".to_string(), g1d2),
        ("G2.D1".to_string(), g2d1),
        ("G2.D2".to_string(), g2d2),
        ("G1.K".to_string(), g1k),
        ("G2.K".to_string(), g2k),
        ("det1".to_string(), det1),
        ("det2".to_string(), det2),
    ];
    let mut cert = Certificate { variant: CertVariant::UniruledPair, trace, verdict: false };
    cert.verdict = cert.recompute();
    Ok(cert)
}

/// Reid-Tai age of a finite-order action with normalized eigenvalue
/// exponents r_i in [0, 1): the sum of the exponents.
pub fn reid_tai_age(exponents: &[Rat]) -> Result<Rat> {
    for r in exponents {
        if r.is_negative() || *r >= int(1) {
            return Err(Error::ExponentOutOfRange(r.to_string()));
        }
    }
    Ok(exponents.iter().sum())
}

/// Passes iff every element that is not a quasi-reflection (exactly one
/// nonzero exponent) has age >= 1.
pub fn reid_tai_pass(elements: &[Vec<Rat>]) -> Result<bool> {
    for exps in elements {
        let nonzero = exps.iter().filter(|r| !r.is_zero()).count();
        if nonzero == 1 {
            continue;
        }
        if nonzero > 0 && reid_tai_age(exps)? < int(1) {
            return Ok(false);
        }
        reid_tai_age(exps)?;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves;
    use crate::rat;
    use crate::spaces::enumerate_basis;

    fn no_bounds() -> BTreeMap<String, Rat> {
        BTreeMap::new()
    }

    #[test]
    fn slope_of_bn_and_k() {
        for g in 3..=40u32 {
            let s = slope(&registry::brill_noether_class(g).unwrap(), &no_bounds()).unwrap();
            assert_eq!(s, Slope::Finite(int(6) + rat(12, g as i64 + 1)), "g={g}");
        }
        let k = registry::canonical_class(&SpaceId::base(17).unwrap());
        assert_eq!(slope(&k, &no_bounds()).unwrap(), Slope::Finite(rat(13, 2)));
    }

    #[test]
    fn slope_with_parameter_bound_and_edge_cases() {
        let k10 = registry::k3_class_g10();
        let s = slope(&k10, &registry::param_lower_bounds()).unwrap();
        assert_eq!(s, Slope::Finite(int(7)));
        assert!(matches!(slope(&k10, &no_bounds()), Err(Error::UnboundParameter(_))));
        let l = DivisorClass::unit(SpaceId::base(5).unwrap(), Gen::Lambda).unwrap();
        assert_eq!(slope(&l, &no_bounds()).unwrap(), Slope::Infinite);
        let z = DivisorClass::zero(SpaceId::base(5).unwrap());
        assert!(matches!(slope(&z, &no_bounds()), Err(Error::UndefinedSlope(_))));
        // invariance under positive rescaling
        let b = registry::brill_noether_class(9).unwrap();
        assert_eq!(
            slope(&b.clone().scale(&rat(5, 3)), &no_bounds()).unwrap(),
            slope(&b, &no_bounds()).unwrap()
        );
    }

    #[test]
    fn interpolation_trivial_and_escape() {
        let k = registry::canonical_class(&SpaceId::pointed(11, 11).unwrap());
        let ledger =
            solve_interpolation(&k, &[(k.clone(), int(1))], &BTreeSet::new()).unwrap();
        assert!(ledger.residual.is_zero());
        assert!(ledger.recombines());
        let bad = solve_interpolation(&k, &[], &BTreeSet::new());
        assert!(matches!(bad, Err(Error::ResidualEscapesSupport { .. })));
    }

    #[test]
    fn canrep11_spot_values() {
        let space = SpaceId::pointed(11, 11).unwrap();
        let k = registry::canonical_class(&space);
        let dbar = registry::logan_class(11).unwrap();
        let phibn = forget_all_pullback(&registry::bn11(), &space).unwrap();
        let allowed: BTreeSet<Gen> = enumerate_basis(&space)
            .into_iter()
            .filter(|g| matches!(g, Gen::BoundaryPointed { .. }))
            .collect();
        let ledger =
            solve_interpolation(&k, &[(dbar, int(1)), (phibn, int(2))], &allowed).unwrap();
        assert!(ledger.recombines());
        // d_{0:c} = (c^2+c-4)/2
        for c in 2..=11i64 {
            let t: BTreeSet<u32> = (1..=c as u32).collect();
            let gen = crate::spaces::canonicalize(&space, 0, &t).unwrap();
            assert_eq!(
                ledger.residual.coefficient_of(&gen),
                rat(c * c + c - 4, 2).into(),
                "c={c}"
            );
        }
        // d_{5:c} = 28 + C(|c-5|+1, 2) on a sample cell
        let t: BTreeSet<u32> = [1, 2].into();
        let gen = crate::spaces::canonicalize(&space, 5, &t).unwrap();
        assert_eq!(ledger.residual.coefficient_of(&gen), int(28 + 6).into());
        // the single open cell: computed value at (1, {}) is 8
        assert_eq!(
            ledger.residual.coefficient_of(&Gen::boundary_pointed(1, &[])),
            int(8).into()
        );
    }

    #[test]
    fn canrep10_symbolic_cells() {
        let space = SpaceId::symmetric(10, 10).unwrap();
        let k = registry::canonical_class(&space);
        let dt = registry::aj_exceptional_class(10).unwrap();
        let phik = forget_all_pullback(&registry::k3_class_g10(), &space).unwrap();
        let allowed: BTreeSet<Gen> = enumerate_basis(&space)
            .into_iter()
            .filter(|g| matches!(g, Gen::BoundarySym { .. }))
            .collect();
        let ledger = solve_interpolation(&k, &[(dt, int(1)), (phik, int(2))], &allowed).unwrap();
        assert!(ledger.residual.coefficient_of(&Gen::BoundarySym { i: 0, c: 2 }).is_zero());
        // d_{5:5} = 2 b5 - 2
        let cell = ledger.residual.coefficient_of(&Gen::BoundarySym { i: 5, c: 5 });
        let expected = crate::classes::Coefficient::param_scaled("b5", int(2))
            + crate::classes::Coefficient::numeric(int(-2));
        assert_eq!(cell, expected);
    }

    #[test]
    fn decompose_bn13_passes() {
        let w = decompose_slope7(13, &registry::brill_noether_class(13).unwrap()).unwrap();
        assert!(w.verdict);
        assert_eq!(w.surplus, rat(2, 7));
        assert!(w.recombines(&registry::brill_noether_class(13).unwrap()).unwrap());
        assert!(w
            .residual
            .coefficient_of(&Gen::BoundarySym { i: 0, c: 2 })
            .is_zero());
    }

    #[test]
    fn decompose_slope7_boundary_case_fails() {
        let d = registry::k3_class_g10().substitute_params(&registry::param_lower_bounds());
        let w = decompose_slope7(10, &d).unwrap();
        assert!(!w.verdict);
        assert!(w.surplus.is_zero());
    }

    #[test]
    fn fixed_component_genus11() {
        let space = SpaceId::pointed(11, 11).unwrap();
        let r = curves::k3_section_pencil(11).unwrap();
        let dbar = registry::logan_class(11).unwrap();
        let k = registry::canonical_class(&space);
        let phibn = forget_all_pullback(&registry::bn11(), &space).unwrap();
        let cert = check_fixed_component(&r, &dbar, &k, &[phibn], &int(1)).unwrap();
        assert!(cert.verdict);
        assert_eq!(cert.entry("curve.D"), Some(&int(-1)));
        assert_eq!(cert.entry("curve.K"), Some(&int(-1)));
        assert_eq!(cert.recompute(), cert.verdict);
    }

    #[test]
    fn fixed_component_fails_on_zero_pairing() {
        let space = SpaceId::pointed(11, 11).unwrap();
        let r = curves::k3_section_pencil(11).unwrap();
        let phibn = forget_all_pullback(&registry::bn11(), &space).unwrap();
        let k = registry::canonical_class(&space);
        // R pairs to zero with the pulled-back Brill-Noether class
        let cert = check_fixed_component(&r, &phibn, &k, &[], &int(1)).unwrap();
        assert!(!cert.verdict);
    }

    #[test]
    fn uniruled_single_genus9_and_genus5() {
        let g9 = curves::g9_pencil().unwrap();
        let k9 = registry::canonical_class(&g9.space);
        let bn9 =
            forget_all_pullback(&registry::brill_noether_class(9).unwrap(), &g9.space).unwrap();
        let cert = check_uniruled_single(&g9, &bn9, &k9).unwrap();
        assert!(cert.verdict);
        assert_eq!(cert.entry("curve.D"), Some(&rat(4, 3)));
        assert_eq!(cert.entry("curve.K"), Some(&int(-1)));
        let g5 = curves::g5_pencil().unwrap();
        let k5 = registry::canonical_class(&g5.space);
        let node = DivisorClass::unit(g5.space, Gen::boundary_pointed(0, &[1, 2])).unwrap();
        let cert5 = check_uniruled_single(&g5, &node, &k5).unwrap();
        assert!(cert5.verdict);
        assert_eq!(cert5.entry("curve.K"), Some(&int(-2)));
    }

    #[test]
    fn uniruled_pair_genus8_window() {
        for (n, expect) in [(12u32, true), (13, false)] {
            let c1 = curves::g8_gamma1(n).unwrap();
            let c2 = curves::g8_gamma2(n).unwrap();
            let space = c1.space;
            let d1 = forget_all_pullback(&registry::bn8_double(), &space).unwrap();
            let d2 = DivisorClass::unit(space, Gen::DeltaIrr).unwrap();
            let k = registry::canonical_class(&space);
            let cert = check_uniruled_pair(&c1, &c2, &d1, &d2, &k).unwrap();
            assert_eq!(cert.verdict, expect, "n={n}");
            assert_eq!(cert.entry("det1"), Some(&int(-1638)));
            assert_eq!(cert.entry("det2"), Some(&int(29 * n as i64 - 367)));
        }
    }

    #[test]
    fn uniruled_pair_genus7() {
        let c1 = curves::g7_gamma1().unwrap();
        let c2 = curves::g7_gamma2().unwrap();
        let space = c1.space;
        let d1 = registry::d1_class_partial(13).unwrap();
        let d2 = forget_all_pullback(&registry::gonal7_class(), &space).unwrap();
        let k = registry::canonical_class(&space);
        let cert = check_uniruled_pair(&c1, &c2, &d1, &d2, &k).unwrap();
        assert!(cert.verdict);
        assert_eq!(cert.entry("G1.D1"), Some(&int(-28)));
        assert_eq!(cert.entry("G1.D2"), Some(&int(14)));
        assert_eq!(cert.entry("G2.D1"), Some(&int(2)));
        assert_eq!(cert.entry("G2.D2"), Some(&int(-1)));
        assert_eq!(cert.entry("G1.K"), Some(&int(22)));
        assert_eq!(cert.entry("G2.K"), Some(&int(-2)));
        assert_eq!(cert.entry("det1"), Some(&int(0)));
        assert_eq!(cert.entry("det2"), Some(&int(-12)));
    }

    #[test]
    fn reid_tai_basics() {
        assert_eq!(reid_tai_age(&[]).unwrap(), int(0));
        assert_eq!(reid_tai_age(&[rat(1, 3), rat(1, 3), rat(1, 3)]).unwrap(), int(1));
        assert!(matches!(reid_tai_age(&[int(1)]), Err(Error::ExponentOutOfRange(_))));
        // quasi-reflection exempt; small-age non-reflection fails
        assert!(reid_tai_pass(&[vec![rat(1, 2), int(0)]]).unwrap());
        assert!(!reid_tai_pass(&[vec![rat(1, 3), rat(1, 3)]]).unwrap());
        assert!(reid_tai_pass(&[vec![rat(1, 3), rat(1, 3), rat(1, 3)]]).unwrap());
    }
}
