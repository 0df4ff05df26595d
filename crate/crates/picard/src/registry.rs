//! Catalog of named divisor classes and constants, constructed from
//! closed-form generators at arbitrary valid (g, n).

use crate::classes::{Coefficient, DivisorClass};
use crate::spaces::{canonicalize, enumerate_basis, Gen, SpaceId, SpaceKind};
use crate::{choose2, int, rat, Error, Rat, Result};
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};

/// Immutable catalog entry. Masked entries carry an explicit
/// asserted-support list inside the class itself.
#[derive(Debug, Clone)]
pub struct NamedClass {
    pub name: String,
    pub description: String,
    pub class: DivisorClass,
}

/// One row of the Mukai-Fano table: a genus-g canonical curve sits on an
/// N_g-dimensional rational homogeneous space of Picard number one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanoDatum {
    pub g: u32,
    pub n_g: u32,
    pub big_n: u32,
    pub description: &'static str,
}

/// Canonical class of the space: the Grothendieck-Riemann-Roch formula on
/// pointed spaces, its n = 0 specialization on base spaces, and the
/// Riemann-Hurwitz descent on symmetric products.
pub fn canonical_class(space: &SpaceId) -> DivisorClass {
    let mut k = DivisorClass::zero(*space);
    let set = |k: &mut DivisorClass, gen: Gen, c: Rat| {
        k.set(gen, c.into()).expect("canonical basis element");
    };
    set(&mut k, Gen::Lambda, int(13));
    set(&mut k, Gen::DeltaIrr, int(-2));
    match space.kind {
        SpaceKind::Base => {
            for i in 1..=space.half_genus() {
                set(&mut k, Gen::DeltaBase(i), if i == 1 { int(-3) } else { int(-2) });
            }
        }
        SpaceKind::Pointed => {
            for i in 1..=space.markings {
                set(&mut k, Gen::Psi(i), int(1));
            }
            for gen in enumerate_basis(space) {
                if let Gen::BoundaryPointed { i, t } = &gen {
                    let c = if *i == 1 && t.is_empty() { int(-3) } else { int(-2) };
                    set(&mut k, gen.clone(), c);
                }
            }
        }
        SpaceKind::Symmetric => {
            set(&mut k, Gen::PsiSym, int(1));
            for gen in enumerate_basis(space) {
                if let Gen::BoundarySym { i, c } = &gen {
                    let v = match (*i, *c) {
                        (0, 2) => int(-1),
                        (0, c) => int(c as i64 - 2),
                        (1, 0) => int(-3),
                        _ => int(-2),
                    };
                    set(&mut k, gen.clone(), v);
                }
            }
        }
    }
    k
}

/// Class of the divisor of g-pointed curves whose marked points move in a
/// pencil, on `Mbar_{g,g}`: -L + sum psi_i - sum C(|#T-i|+1, 2) d[i:T].
pub fn logan_class(g: u32) -> Result<DivisorClass> {
    if g < 3 {
        return Err(Error::Invalid(format!("logan class needs g >= 3, got {g}")));
    }
    let space = SpaceId::pointed(g, g)?;
    let mut d = DivisorClass::zero(space);
    d.set(Gen::Lambda, int(-1).into())?;
    for i in 1..=g {
        d.set(Gen::Psi(i), int(1).into())?;
    }
    for gen in enumerate_basis(&space) {
        if let Gen::BoundaryPointed { i, t } = &gen {
            let m = (t.len() as i64 - *i as i64).abs();
            d.set(gen.clone(), (-choose2(m + 1)).into())?;
        }
    }
    Ok(d)
}

/// Abel-Jacobi exceptional divisor on `Cbar_{g,g}`:
/// -Lt + psit - sum_{i>=1,c} C(|c-i|+1,2) dt[i:c] - sum_{c>=2} C(c,2) dt[0:c].
pub fn aj_exceptional_class(g: u32) -> Result<DivisorClass> {
    if g < 3 {
        return Err(Error::Invalid(format!("exceptional class needs g >= 3, got {g}")));
    }
    let space = SpaceId::symmetric(g, g)?;
    let mut d = DivisorClass::zero(space);
    d.set(Gen::Lambda, int(-1).into())?;
    d.set(Gen::PsiSym, int(1).into())?;
    for gen in enumerate_basis(&space) {
        if let Gen::BoundarySym { i, c } = &gen {
            let v = if *i == 0 {
                -choose2(*c as i64)
            } else {
                -choose2((*c as i64 - *i as i64).abs() + 1)
            };
            d.set(gen.clone(), v.into())?;
        }
    }
    Ok(d)
}

/// The class proportional to all Brill-Noether divisors:
/// (g+3)L - (g+1)/6 d_irr - sum_i i(g-i) d[i]. Slope 6 + 12/(g+1).
pub fn brill_noether_class(g: u32) -> Result<DivisorClass> {
    if g < 3 {
        return Err(Error::Invalid(format!("Brill-Noether class needs g >= 3, got {g}")));
    }
    let space = SpaceId::base(g)?;
    let mut d = DivisorClass::zero(space);
    d.set(Gen::Lambda, int(g as i64 + 3).into())?;
    d.set(Gen::DeltaIrr, (-rat(g as i64 + 1, 6)).into())?;
    for i in 1..=g / 2 {
        d.set(Gen::DeltaBase(i), int(-(i as i64) * (g as i64 - i as i64)).into())?;
    }
    Ok(d)
}

/// Slope-7 representative in genus 11: half the Brill-Noether class,
/// 7L - d_irr - 5d[1] - 9d[2] - 12d[3] - 14d[4] - 15d[5].
pub fn bn11() -> DivisorClass {
    brill_noether_class(11).expect("genus 11 valid").scale(&rat(1, 2))
}

/// Divisor of curves on a K3 surface, genus 10, with the symbolic
/// coefficient b5 (declared lower bound b5 >= 6):
/// 7L - d_irr - 5d[1] - 9d[2] - 12d[3] - 14d[4] - b5*d[5].
pub fn k3_class_g10() -> DivisorClass {
    let space = SpaceId::base(10).expect("genus 10 valid");
    let mut d = DivisorClass::zero(space);
    d.set(Gen::Lambda, int(7).into()).unwrap();
    d.set(Gen::DeltaIrr, int(-1).into()).unwrap();
    for (i, c) in [(1, -5i64), (2, -9), (3, -12), (4, -14)] {
        d.set(Gen::DeltaBase(i), int(c).into()).unwrap();
    }
    d.set(Gen::DeltaBase(5), -Coefficient::param("b5")).unwrap();
    d
}

/// Declared lower bounds for symbolic parameters, used by the slope
/// computation (the minimum is evaluated at the bound).
pub fn param_lower_bounds() -> BTreeMap<String, Rat> {
    [("b5".to_string(), int(6))].into()
}

fn factorial(k: i64) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

/// Prefactor of the nodal-plane-curve divisor:
/// c_g = 24 (g-2)! / ((g-d+5)! (g-d+3)! (g-d+1)!) with d = (2g+7)/3.
pub fn c_g_constant(g: u32) -> Result<Rat> {
    if g % 3 != 1 || g < 4 {
        return Err(Error::GenusCongruence { g });
    }
    let g = g as i64;
    let d = (2 * g + 7) / 3;
    let num = int(24) * Rat::from(factorial(g - 2));
    let den = Rat::from(factorial(g - d + 5) * factorial(g - d + 3) * factorial(g - d + 1));
    Ok(num / den)
}

/// Rational multiple of the divisor of 4-gonal curves of genus 7.
pub fn gonal7_class() -> DivisorClass {
    let space = SpaceId::base(7).expect("genus 7 valid");
    let mut d = DivisorClass::zero(space);
    d.set(Gen::Lambda, int(15).into()).unwrap();
    d.set(Gen::DeltaIrr, int(-2).into()).unwrap();
    for (i, c) in [(1, -9i64), (2, -15), (3, -18)] {
        d.set(Gen::DeltaBase(i), int(c).into()).unwrap();
    }
    d
}

/// Twice the genus-8 Brill-Noether class:
/// 22L - 3d_irr - 14d[1] - 24d[2] - 30d[3] - 32d[4].
pub fn bn8_double() -> DivisorClass {
    let space = SpaceId::base(8).expect("genus 8 valid");
    let mut d = DivisorClass::zero(space);
    d.set(Gen::Lambda, int(22).into()).unwrap();
    d.set(Gen::DeltaIrr, int(-3).into()).unwrap();
    for (i, c) in [(1, -14i64), (2, -24), (3, -30), (4, -32)] {
        d.set(Gen::DeltaBase(i), int(c).into()).unwrap();
    }
    d
}

/// Partial class of the divisor of nodes on `Mbar_{g,2}`:
/// c_g((g+4)L + (g+2)/6 (psi_1+psi_2) - (g+2)/6 d_irr - g d[0:{1,2}]),
/// asserted on the five displayed elements only.
pub fn node_class_partial(g: u32) -> Result<DivisorClass> {
    let cg = c_g_constant(g)?;
    let space = SpaceId::pointed(g, 2)?;
    let gi = g as i64;
    let node = Gen::boundary_pointed(0, &[1, 2]);
    let mut d = DivisorClass::zero(space);
    d.set(Gen::Lambda, (cg.clone() * int(gi + 4)).into())?;
    let psi = cg.clone() * rat(gi + 2, 6);
    d.set(Gen::Psi(1), psi.clone().into())?;
    d.set(Gen::Psi(2), psi.clone().into())?;
    d.set(Gen::DeltaIrr, (-psi).into())?;
    d.set(node.clone(), (-(cg * int(gi))).into())?;
    Ok(d.with_mask([Gen::Lambda, Gen::Psi(1), Gen::Psi(2), Gen::DeltaIrr, node].into()))
}

/// Class of the divisor of cusps on `Mbar_{g,1}`:
/// c_g((g+4)L + g psi - (g+2)/6 d_irr - sum_{i=1}^{g-1} (i+1)(g-i) d[i:{1}]).
pub fn cusp_class(g: u32) -> Result<DivisorClass> {
    let cg = c_g_constant(g)?;
    let space = SpaceId::pointed(g, 1)?;
    let gi = g as i64;
    let one: BTreeSet<u32> = [1u32].into();
    let mut d = DivisorClass::zero(space);
    d.set(Gen::Lambda, (cg.clone() * int(gi + 4)).into())?;
    d.set(Gen::Psi(1), (cg.clone() * int(gi)).into())?;
    d.set(Gen::DeltaIrr, (-(cg.clone() * rat(gi + 2, 6))).into())?;
    for i in 1..gi {
        let coeff = -(cg.clone() * int((i + 1) * (gi - i)));
        d.add_to(canonicalize(&space, i, &one)?, coeff.into())?;
    }
    Ok(d)
}

/// Partial class of the pulled-back nodal divisor on `Mbar_{7,n}`,
/// obtained from the genus-7 nodal class by the partial forgetful
/// pullback retaining the labels 1 and 2 (mask propagated).
pub fn d1_class_partial(n: u32) -> Result<DivisorClass> {
    if !(2..=13).contains(&n) {
        return Err(Error::RangeViolation(format!("d1 partial class needs 2 <= n <= 13, got {n}")));
    }
    crate::maps::forget_to_subset_pullback(&node_class_partial(7)?, &[1, 2], n)
}

/// Row of the Mukai-Fano table for 6 <= g <= 9.
pub fn mukai_fano_data(g: u32) -> Result<FanoDatum> {
    let (n_g, description) = match g {
        6 => (5, "quadric section of the cone over the Grassmannian G(2,5)"),
        7 => (10, "spinor tenfold OG(5,10)"),
        8 => (8, "Grassmannian G(2,6)"),
        9 => (6, "symplectic Grassmannian SG(3,6)"),
        _ => return Err(Error::RangeViolation(format!("Mukai-Fano table covers g = 6..9, got {g}"))),
    };
    Ok(FanoDatum { g, n_g, big_n: g + n_g - 2, description })
}

/// All catalog entries constructible without extra context, for `registry list`.
pub fn list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("K", "canonical class of the context space (use --g/--n/--sym)"),
        ("Dbar[g]", "divisor of g-pointed curves with marked points moving in a pencil, on Mbar_{g,g}"),
        ("Dtilde[g]", "Abel-Jacobi exceptional divisor on Cbar_{g,g}"),
        ("bn[g]", "Brill-Noether proportionality class on Mbar_g"),
        ("bn11", "slope-7 representative bn[11]/2"),
        ("K3class10", "divisor of genus-10 curves on K3 surfaces (symbolic b5, b5 >= 6)"),
        ("gonal7", "rational multiple of the 4-gonal divisor on Mbar_7"),
        ("bn8double", "twice the genus-8 Brill-Noether class"),
        ("node[g]", "partial nodal-curve class on Mbar_{g,2} (g = 1 mod 3)"),
        ("cusp[g]", "cuspidal-curve class on Mbar_{g,1} (g = 1 mod 3)"),
        ("D1partial[n]", "partial pulled-back nodal class on Mbar_{7,n}"),
    ]
}

/// Resolves a registry name (with optional bracket argument) to a class.
/// `ctx` supplies the space for context-dependent entries like `K`.
pub fn named(name: &str, arg: Option<i64>, ctx: Option<SpaceId>) -> Result<DivisorClass> {
    let want_arg = |arg: Option<i64>| -> Result<u32> {
        match arg {
            Some(v) if v >= 0 => Ok(v as u32),
            _ => Err(Error::Invalid(format!("registry entry {name} needs a bracket argument"))),
        }
    };
    let no_arg = |arg: Option<i64>| -> Result<()> {
        match arg {
            None => Ok(()),
            Some(_) => Err(Error::Invalid(format!("registry entry {name} takes no argument"))),
        }
    };
    match name {
        "K" => {
            no_arg(arg)?;
            let space = ctx.ok_or_else(|| {
                Error::Invalid("entry K needs a space context (--g/--n/--sym)".into())
            })?;
            Ok(canonical_class(&space))
        }
        "Dbar" => logan_class(want_arg(arg)?),
        "Dtilde" => aj_exceptional_class(want_arg(arg)?),
        "bn" => brill_noether_class(want_arg(arg)?),
        "bn11" => {
            no_arg(arg)?;
            Ok(bn11())
        }
        "K3class10" => {
            no_arg(arg)?;
            Ok(k3_class_g10())
        }
        "gonal7" => {
            no_arg(arg)?;
            Ok(gonal7_class())
        }
        "bn8double" => {
            no_arg(arg)?;
            Ok(bn8_double())
        }
        "node" => node_class_partial(want_arg(arg)?),
        "cusp" => cusp_class(want_arg(arg)?),
        "D1partial" => d1_class_partial(want_arg(arg)?),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{node_to_cusp_pushforward, sym_pullback};

    #[test]
    fn canonical_class_m2() {
        let k = canonical_class(&SpaceId::base(2).unwrap());
        assert_eq!(k.coefficient_of(&Gen::Lambda), int(13).into());
        assert_eq!(k.coefficient_of(&Gen::DeltaIrr), int(-2).into());
        assert_eq!(k.coefficient_of(&Gen::DeltaBase(1)), int(-3).into());
        assert_eq!(k.support().count(), 3);
    }

    #[test]
    fn canonical_class_pointed_and_symmetric_displays() {
        let k = canonical_class(&SpaceId::pointed(11, 11).unwrap());
        assert_eq!(k.coefficient_of(&Gen::Lambda), int(13).into());
        assert_eq!(k.coefficient_of(&Gen::Psi(4)), int(1).into());
        assert_eq!(k.coefficient_of(&Gen::boundary_pointed(1, &[])), int(-3).into());
        assert_eq!(k.coefficient_of(&Gen::boundary_pointed(0, &[1, 2])), int(-2).into());
        let kc = canonical_class(&SpaceId::symmetric(10, 10).unwrap());
        assert_eq!(kc.coefficient_of(&Gen::BoundarySym { i: 0, c: 2 }), int(-1).into());
        assert_eq!(kc.coefficient_of(&Gen::BoundarySym { i: 0, c: 5 }), int(3).into());
        assert_eq!(kc.coefficient_of(&Gen::BoundarySym { i: 1, c: 0 }), int(-3).into());
        assert_eq!(kc.coefficient_of(&Gen::BoundarySym { i: 2, c: 7 }), int(-2).into());
    }

    #[test]
    fn riemann_hurwitz_identity_smoke() {
        // pullback of the symmetric canonical class plus the ramification
        // divisor (all two-point coincidence loci) equals the pointed
        // canonical class (full range covered by the verify suite)
        for (g, n) in [(2u32, 2u32), (5, 4), (10, 10), (12, 12)] {
            let sym = SpaceId::symmetric(g, n).unwrap();
            let pt = SpaceId::pointed(g, n).unwrap();
            let mut lhs = sym_pullback(&canonical_class(&sym)).unwrap();
            for a in 1..=n {
                for b in (a + 1)..=n {
                    lhs.add_to(Gen::boundary_pointed(0, &[a, b]), int(1).into()).unwrap();
                }
            }
            assert_eq!(lhs, canonical_class(&pt), "g={g} n={n}");
        }
    }

    #[test]
    fn logan_class_coefficients() {
        let d = logan_class(11).unwrap();
        assert_eq!(d.coefficient_of(&Gen::Lambda), int(-1).into());
        assert_eq!(d.coefficient_of(&Gen::Psi(7)), int(1).into());
        // i = 0, #T = 2: -C(3,2) = -3
        assert_eq!(d.coefficient_of(&Gen::boundary_pointed(0, &[1, 2])), int(-3).into());
        // i = 1, #T = 0: -C(2,2) = -1
        assert_eq!(d.coefficient_of(&Gen::boundary_pointed(1, &[])), int(-1).into());
    }

    #[test]
    fn aj_class_pulls_back_to_logan() {
        for g in 3..=8u32 {
            let dt = aj_exceptional_class(g).unwrap();
            assert_eq!(sym_pullback(&dt).unwrap(), logan_class(g).unwrap(), "g={g}");
        }
        assert_eq!(
            aj_exceptional_class(5)
                .unwrap()
                .coefficient_of(&Gen::BoundarySym { i: 0, c: 2 }),
            int(-1).into()
        );
    }

    #[test]
    fn bn11_is_half_the_display() {
        let b = bn11();
        assert_eq!(b.coefficient_of(&Gen::Lambda), int(7).into());
        assert_eq!(b.coefficient_of(&Gen::DeltaIrr), int(-1).into());
        let expected = [-5i64, -9, -12, -14, -15];
        for (i, c) in (1..=5u32).zip(expected) {
            assert_eq!(b.coefficient_of(&Gen::DeltaBase(i)), int(c).into());
        }
    }

    #[test]
    fn k3_class_specializes() {
        let k = k3_class_g10();
        let at6 = k.substitute_params(&[("b5".to_string(), int(6))].into());
        assert_eq!(at6.coefficient_of(&Gen::DeltaBase(5)), int(-6).into());
        assert_eq!(at6.coefficient_of(&Gen::DeltaBase(4)), int(-14).into());
    }

    #[test]
    fn c_g_values() {
        assert_eq!(c_g_constant(7).unwrap(), int(4));
        assert_eq!(c_g_constant(7).unwrap() * int(7 + 4), int(44));
        assert_eq!(c_g_constant(7).unwrap() * rat(7 + 2, 6), int(6));
        assert!(matches!(c_g_constant(8), Err(Error::GenusCongruence { g: 8 })));
    }

    #[test]
    fn node7_display() {
        let d = node_class_partial(7).unwrap();
        assert_eq!(d.coefficient_of(&Gen::Lambda), int(44).into());
        assert_eq!(d.coefficient_of(&Gen::Psi(1)), int(6).into());
        assert_eq!(d.coefficient_of(&Gen::DeltaIrr), int(-6).into());
        assert_eq!(d.coefficient_of(&Gen::boundary_pointed(0, &[1, 2])), int(-28).into());
        assert!(!d.is_asserted(&Gen::boundary_pointed(1, &[])));
    }

    #[test]
    fn cusp7_matches_node7_pushforward() {
        let cu = cusp_class(7).unwrap();
        let pushed = node_to_cusp_pushforward(&node_class_partial(7).unwrap()).unwrap();
        for gen in [Gen::Lambda, Gen::Psi(1), Gen::DeltaIrr] {
            assert_eq!(cu.coefficient_of(&gen), pushed.coefficient_of(&gen));
        }
        // delta_{6:{1}} canonicalizes to (1, {}) with coefficient -c7*7*1
        assert_eq!(cu.coefficient_of(&Gen::boundary_pointed(1, &[])), int(-28).into());
    }

    #[test]
    fn mukai_fano_rows() {
        let rows: Vec<(u32, u32)> = (6..=9)
            .map(|g| {
                let r = mukai_fano_data(g).unwrap();
                assert_eq!(r.big_n, r.g + r.n_g - 2);
                (r.n_g, r.big_n)
            })
            .collect();
        assert_eq!(rows, vec![(5, 9), (10, 15), (8, 14), (6, 13)]);
        assert!(mukai_fano_data(5).is_err());
    }

    #[test]
    fn named_lookup() {
        assert!(named("bn", Some(11), None).is_ok());
        assert!(named("K", None, Some(SpaceId::base(7).unwrap())).is_ok());
        assert!(matches!(named("K", None, None), Err(Error::Invalid(_))));
        assert!(matches!(named("petri", None, None), Err(Error::UnknownName(_))));
    }
}
