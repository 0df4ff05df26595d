//! Catalog of test curves as intersection vectors, and the pairing of
//! curves against divisor classes.
//!
//! Vectors are transcribed constants; the geometric constructions behind
//! them are out of scope. Entries never computed for a curve are kept in
//! an explicit `unknown` set so pairing against them fails loudly instead
//! of defaulting to zero.

use crate::classes::{space_json, Coefficient, DivisorClass};
use crate::maps::sym_pullback;
use crate::spaces::{enumerate_basis, Gen, SpaceId};
use crate::{int, rat, Error, Rat, Result};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// A 1-cycle recorded by its intersection numbers against the basis.
/// `covers`, when set, names a registry class whose support the curve
/// sweeps; `through_general_point` marks pencils through a general point
/// of the space. Both are metadata asserted from the source material.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestCurve {
    pub space: SpaceId,
    pub name: String,
    pub pairing: BTreeMap<Gen, Rat>,
    pub unknown: BTreeSet<Gen>,
    pub covers: Option<String>,
    pub through_general_point: bool,
}

impl TestCurve {
    pub fn zero(space: SpaceId, name: &str) -> Self {
        TestCurve {
            space,
            name: name.into(),
            pairing: BTreeMap::new(),
            unknown: BTreeSet::new(),
            covers: None,
            through_general_point: false,
        }
    }

    fn set(&mut self, gen: Gen, v: Rat) -> Result<()> {
        gen.validate(&self.space)?;
        if v.is_zero() {
            self.pairing.remove(&gen);
        } else {
            self.pairing.insert(gen, v);
        }
        Ok(())
    }

    /// Known pairing value against one basis element; errors on entries in
    /// the unknown set.
    pub fn known(&self, gen: &Gen) -> Result<Rat> {
        if self.unknown.contains(gen) {
            return Err(Error::UnknownPairingEntry { gen: gen.token(&self.space) });
        }
        Ok(self.pairing.get(gen).cloned().unwrap_or_else(Rat::zero))
    }

    pub fn scale(mut self, t: &Rat) -> Self {
        for v in self.pairing.values_mut() {
            *v *= t;
        }
        self.pairing.retain(|_, v| !v.is_zero());
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pairing: Vec<serde_json::Value> = self
            .pairing
            .iter()
            .map(|(g, v)| {
                serde_json::json!({ "gen": g.token(&self.space), "value": v.to_string() })
            })
            .collect();
        let unknown: Vec<serde_json::Value> =
            self.unknown.iter().map(|g| g.token(&self.space).into()).collect();
        serde_json::json!({
            "name": self.name,
            "space": space_json(&self.space),
            "pairing": pairing,
            "unknown": unknown,
            "covers": self.covers,
            "through_general_point": self.through_general_point,
        })
    }
}

/// Intersection number of a curve with a class; exact, and may carry the
/// class's parameters. Errors when the value is not determined: a nonzero
/// class coefficient on an unknown entry, or a nonzero curve entry outside
/// a partial class's asserted support.
pub fn pair(c: &TestCurve, a: &DivisorClass) -> Result<Coefficient> {
    if c.space != a.space {
        return Err(Error::SpaceMismatch {
            expected: c.space.to_string(),
            got: a.space.to_string(),
        });
    }
    for gen in c.pairing.keys() {
        if !a.is_asserted(gen) {
            return Err(Error::InsufficientSupport { gen: gen.token(&a.space) });
        }
    }
    let mut total = Coefficient::zero();
    for (gen, coeff) in a.entries() {
        let v = c.known(gen)?;
        if !v.is_zero() {
            total = total + coeff.clone() * &v;
        }
    }
    Ok(total)
}

/// Pushforward to the symmetric product by the projection formula:
/// the image pairs with each symmetric basis element `x` as
/// `weight * (curve . pullback of x)`.
pub fn curve_pushforward_sym(curve: &TestCurve, weight: &Rat) -> Result<TestCurve> {
    let target = SpaceId::symmetric(curve.space.genus, curve.space.markings)?;
    let mut out = TestCurve::zero(target, &format!("pushforward of {}", curve.name));
    for x in enumerate_basis(&target) {
        let pulled = sym_pullback(&DivisorClass::unit(target, x.clone())?)?;
        let v = pair(curve, &pulled)?.as_numeric()?;
        out.set(x, v * weight)?;
    }
    out.covers = curve.covers.clone();
    out.through_general_point = curve.through_general_point;
    Ok(out)
}

/// Abel-Jacobi pencil `l` on `Cbar_{g,g}`: a general curve with its
/// g-th symmetric power swept by a pencil.
pub fn abel_jacobi_pencil(g: u32) -> Result<TestCurve> {
    if g < 3 {
        return Err(Error::RangeViolation(format!("abel_jacobi_pencil needs g >= 3, got {g}")));
    }
    let gi = g as i64;
    let mut c = TestCurve::zero(SpaceId::symmetric(g, g)?, "abel_jacobi_pencil");
    c.set(Gen::PsiSym, int(2 * gi - 2))?;
    c.set(Gen::BoundarySym { i: 0, c: 2 }, int(2 * gi - 1))?;
    c.covers = Some("Dtilde".into());
    Ok(c)
}

/// Pencil `R` on `Mbar_{g,g}`: sections of a fixed K3 surface through g
/// general points. Valid for 3 <= g <= 11, g != 10.
pub fn k3_section_pencil(g: u32) -> Result<TestCurve> {
    if !(3..=11).contains(&g) || g == 10 {
        return Err(Error::RangeViolation(format!(
            "k3_section_pencil needs 3 <= g <= 11, g != 10, got {g}"
        )));
    }
    let gi = g as i64;
    let mut c = TestCurve::zero(SpaceId::pointed(g, g)?, "k3_section_pencil");
    c.set(Gen::Lambda, int(gi + 1))?;
    c.set(Gen::DeltaIrr, int(6 * gi + 18))?;
    for i in 1..=g {
        c.set(Gen::Psi(i), int(1))?;
    }
    c.covers = Some("Dbar".into());
    Ok(c)
}

/// Pencil `Gamma_ij` on `Mbar_{g,g}`: K3 sections with the points i, j on
/// a fixed section. Valid for 3 <= g < 11, g != 9.
pub fn gamma_ij(g: u32, i: u32, j: u32) -> Result<TestCurve> {
    if !(3..11).contains(&g) || g == 9 {
        return Err(Error::RangeViolation(format!(
            "gamma_ij needs 3 <= g < 11, g != 9, got {g}"
        )));
    }
    if i == j || i < 1 || j < 1 || i > g || j > g {
        return Err(Error::RangeViolation(format!("gamma_ij labels ({i},{j}) invalid at g={g}")));
    }
    let gi = g as i64;
    let mut c = TestCurve::zero(SpaceId::pointed(g, g)?, "gamma_ij");
    c.set(Gen::Lambda, int(2 * (gi + 1)))?;
    c.set(Gen::DeltaIrr, int(2 * (6 * gi + 17)))?;
    for l in 1..=g {
        c.set(Gen::Psi(l), if l == i || l == j { int(5) } else { int(2) })?;
    }
    c.set(Gen::boundary_pointed(0, &[i, j]), int(2))?;
    Ok(c)
}

/// Average `Gamma = 1/(g(g-1)) sum_{i<j} Gamma_ij`.
pub fn gamma_avg(g: u32) -> Result<TestCurve> {
    let mut total = TestCurve::zero(SpaceId::pointed(g, g)?, "gamma_avg");
    for i in 1..=g {
        for j in (i + 1)..=g {
            let c = gamma_ij(g, i, j)?;
            for (gen, v) in c.pairing {
                let cur = total.pairing.get(&gen).cloned().unwrap_or_else(Rat::zero);
                total.set(gen, cur + v)?;
            }
        }
    }
    Ok(total.scale(&rat(1, g as i64 * (g as i64 - 1))))
}

/// `Rtilde`, the pushforward of R to the symmetric product.
pub fn rtilde(g: u32) -> Result<TestCurve> {
    let mut c = curve_pushforward_sym(&k3_section_pencil(g)?, &int(1))?;
    c.name = "rtilde".into();
    Ok(c)
}

/// `Gammatilde`, half the pushforward of any Gamma_ij.
pub fn gammatilde(g: u32) -> Result<TestCurve> {
    let mut c = curve_pushforward_sym(&gamma_ij(g, 1, 2)?, &rat(1, 2))?;
    c.name = "gammatilde".into();
    Ok(c)
}

/// Pencil `R_T` on `Mbar_{11,11}`: K3 sections through a point collapsing
/// the labels in T; fills up the boundary divisor it meets negatively.
pub fn r_t(t: &BTreeSet<u32>) -> Result<TestCurve> {
    let space = SpaceId::pointed(11, 11)?;
    if t.len() < 2 || t.iter().any(|l| *l < 1 || *l > 11) {
        return Err(Error::RangeViolation(format!("r_T needs T within 1..11, #T >= 2, got {t:?}")));
    }
    let node = Gen::BoundaryPointed { i: 0, t: t.clone() };
    let mut c = TestCurve::zero(space, "r_T");
    c.set(Gen::Lambda, int(12))?;
    c.set(Gen::DeltaIrr, int(84))?;
    c.set(node.clone(), int(-1))?;
    for i in 1..=11 {
        if !t.contains(&i) {
            c.set(Gen::Psi(i), int(1))?;
        }
    }
    c.covers = Some(node.token(&space));
    Ok(c)
}

/// Lefschetz pencil of genus-g curves on a fixed K3 surface, on `Mbar_g`.
pub fn lefschetz_k3(g: u32) -> Result<TestCurve> {
    if !(3..=11).contains(&g) {
        return Err(Error::RangeViolation(format!("lefschetz_k3 needs 3 <= g <= 11, got {g}")));
    }
    let gi = g as i64;
    let mut c = TestCurve::zero(SpaceId::base(g)?, "lefschetz_k3");
    c.set(Gen::Lambda, int(gi + 1))?;
    c.set(Gen::DeltaIrr, int(6 * gi + 18))?;
    if g == 10 {
        c.covers = Some("K3class10".into());
    }
    Ok(c)
}

/// Genus-5 pencil of plane sextics with marked nodes, on `Mbar_{5,13}`.
pub fn g5_pencil() -> Result<TestCurve> {
    let mut c = TestCurve::zero(SpaceId::pointed(5, 13)?, "g5_pencil");
    c.set(Gen::Lambda, int(10))?;
    c.set(Gen::DeltaIrr, int(80))?;
    for i in 1..=13 {
        c.set(Gen::Psi(i), if i <= 2 { int(5) } else { int(2) })?;
    }
    let node = Gen::boundary_pointed(0, &[1, 2]);
    c.set(node.clone(), int(2))?;
    c.covers = Some(node.token(&c.space));
    c.through_general_point = true;
    Ok(c)
}

/// Genus-8 pencil of 7-nodal plane septics on `Mbar_{8,n}`.
pub fn g8_gamma1(n: u32) -> Result<TestCurve> {
    if !(1..=13).contains(&n) {
        return Err(Error::RangeViolation(format!("g8_gamma1 needs 1 <= n <= 13, got {n}")));
    }
    let mut c = TestCurve::zero(SpaceId::pointed(8, n)?, "g8_gamma1");
    c.set(Gen::Lambda, int(8))?;
    c.set(Gen::DeltaIrr, int(59))?;
    for i in 1..=n {
        c.set(Gen::Psi(i), int(1))?;
    }
    c.covers = Some("bn8double".into());
    Ok(c)
}

/// Genus-8 family attaching an elliptic tail at a moving point, on `Mbar_{8,n}`.
pub fn g8_gamma2(n: u32) -> Result<TestCurve> {
    if !(1..=13).contains(&n) {
        return Err(Error::RangeViolation(format!("g8_gamma2 needs 1 <= n <= 13, got {n}")));
    }
    let mut c = TestCurve::zero(SpaceId::pointed(8, n)?, "g8_gamma2");
    c.set(Gen::DeltaIrr, int(-14))?;
    c.set(Gen::boundary_pointed(1, &[]), int(1))?;
    for i in 1..=n {
        c.set(Gen::Psi(i), int(1))?;
    }
    c.covers = Some("d_irr".into());
    Ok(c)
}

/// Genus-9 pencil through a general point of `Mbar_{9,10}`.
pub fn g9_pencil() -> Result<TestCurve> {
    let mut c = TestCurve::zero(SpaceId::pointed(9, 10)?, "g9_pencil");
    c.set(Gen::Lambda, int(9))?;
    c.set(Gen::DeltaIrr, int(64))?;
    for i in 1..=10 {
        c.set(Gen::Psi(i), int(1))?;
    }
    c.through_general_point = true;
    Ok(c)
}

/// Genus-7 covering family of the pulled-back nodal divisor, on `Mbar_{7,13}`.
pub fn g7_gamma1() -> Result<TestCurve> {
    let mut c = TestCurve::zero(SpaceId::pointed(7, 13)?, "g7_gamma1");
    c.set(Gen::Lambda, int(98))?;
    c.set(Gen::DeltaIrr, int(728))?;
    for i in 1..=13 {
        let v = match i {
            1 | 2 => int(35),
            13 => int(22),
            _ => int(14),
        };
        c.set(Gen::Psi(i), v)?;
    }
    c.set(Gen::boundary_pointed(0, &[1, 2]), int(14))?;
    c.covers = Some("D1partial".into());
    Ok(c)
}

/// Genus-7 pencil covering the pulled-back 4-gonal divisor, on `Mbar_{7,13}`.
pub fn g7_gamma2() -> Result<TestCurve> {
    let mut c = TestCurve::zero(SpaceId::pointed(7, 13)?, "g7_gamma2");
    c.set(Gen::Lambda, int(7))?;
    c.set(Gen::DeltaIrr, int(53))?;
    for i in 1..=13 {
        c.set(Gen::Psi(i), int(1))?;
    }
    c.covers = Some("gonal7".into());
    Ok(c)
}

/// Test curve `C2` on `Mbar_{g,2}`: second point moving along the curve.
/// Only the psi and node pairings are recorded; lambda, delta_irr and the
/// remaining boundary are unknown.
pub fn c2_moving_point(g: u32) -> Result<TestCurve> {
    let space = SpaceId::pointed(g, 2)?;
    let node = Gen::boundary_pointed(0, &[1, 2]);
    let mut c = TestCurve::zero(space, "c2_moving_point");
    c.set(Gen::Psi(1), int(1))?;
    c.set(Gen::Psi(2), int(2 * g as i64 - 1))?;
    c.set(node.clone(), int(1))?;
    c.unknown = enumerate_basis(&space)
        .into_iter()
        .filter(|gen| {
            matches!(gen, Gen::Lambda | Gen::DeltaIrr)
                || (matches!(gen, Gen::BoundaryPointed { .. }) && *gen != node)
        })
        .collect();
    c.through_general_point = true;
    Ok(c)
}

/// Argument to a catalog entry: an integer or a label set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveArg {
    Int(i64),
    Set(BTreeSet<u32>),
}

/// All catalog names with argument signatures, for `curve show` listings.
pub fn catalog_names() -> Vec<(&'static str, &'static str)> {
    vec![
        ("abel_jacobi_pencil[g]", "Abel-Jacobi pencil l on Cbar_{g,g}"),
        ("k3_section_pencil[g]", "pencil R of K3 sections on Mbar_{g,g} (3..11, not 10)"),
        ("gamma_ij[g,i,j]", "pencil Gamma_ij on Mbar_{g,g} (3..10, not 9)"),
        ("gamma_avg[g]", "averaged Gamma on Mbar_{g,g}"),
        ("rtilde[g]", "pushforward of R to Cbar_{g,g}"),
        ("gammatilde[g]", "half pushforward of Gamma_12 to Cbar_{g,g}"),
        ("r_T[{...}]", "pencil R_T on Mbar_{11,11} filling the boundary divisor d[0:T]"),
        ("lefschetz_k3[g]", "Lefschetz pencil on a fixed K3 surface, on Mbar_g"),
        ("g5_pencil", "pencil of marked plane sextics on Mbar_{5,13}"),
        ("g8_gamma1[n]", "pencil of 7-nodal plane septics on Mbar_{8,n}"),
        ("g8_gamma2[n]", "elliptic-tail family on Mbar_{8,n}"),
        ("g9_pencil", "genus-9 pencil on Mbar_{9,10}"),
        ("g7_gamma1", "covering family of the pulled-back nodal divisor on Mbar_{7,13}"),
        ("g7_gamma2", "covering pencil of the pulled-back 4-gonal divisor on Mbar_{7,13}"),
        ("c2_moving_point[g]", "moving-point test curve on Mbar_{g,2} (partial pairing)"),
    ]
}

/// Resolves a catalog name with arguments to a curve.
pub fn catalog(name: &str, args: &[CurveArg]) -> Result<TestCurve> {
    let ints = |k: usize| -> Result<Vec<u32>> {
        if args.len() != k {
            return Err(Error::Invalid(format!("curve {name} expects {k} argument(s)")));
        }
        args.iter()
            .map(|a| match a {
                CurveArg::Int(v) if *v >= 0 => Ok(*v as u32),
                _ => Err(Error::Invalid(format!("curve {name} expects integer arguments"))),
            })
            .collect()
    };
    match name {
        "abel_jacobi_pencil" => abel_jacobi_pencil(ints(1)?[0]),
        "k3_section_pencil" => k3_section_pencil(ints(1)?[0]),
        "gamma_ij" => {
            let v = ints(3)?;
            gamma_ij(v[0], v[1], v[2])
        }
        "gamma_avg" => gamma_avg(ints(1)?[0]),
        "rtilde" => rtilde(ints(1)?[0]),
        "gammatilde" => gammatilde(ints(1)?[0]),
        "r_T" => match args {
            [CurveArg::Set(t)] => r_t(t),
            _ => Err(Error::Invalid("curve r_T expects one label-set argument".into())),
        },
        "lefschetz_k3" => lefschetz_k3(ints(1)?[0]),
        "g5_pencil" => {
            ints(0)?;
            g5_pencil()
        }
        "g8_gamma1" => g8_gamma1(ints(1)?[0]),
        "g8_gamma2" => g8_gamma2(ints(1)?[0]),
        "g9_pencil" => {
            ints(0)?;
            g9_pencil()
        }
        "g7_gamma1" => {
            ints(0)?;
            g7_gamma1()
        }
        "g7_gamma2" => {
            ints(0)?;
            g7_gamma2()
        }
        "c2_moving_point" => c2_moving_point(ints(1)?[0]),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}
