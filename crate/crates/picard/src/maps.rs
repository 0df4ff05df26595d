//! Pullback and pushforward homomorphisms between the Picard groups of the
//! supported spaces.
//!
//! All pullbacks land on canonical representatives; sums over label sets
//! run over canonical pairs only, so nothing is double-counted at 2i = g.

use crate::classes::DivisorClass;
use crate::spaces::{
    canonical_sets, canonicalize, canonicalize_sym, enumerate_basis, subsets, Gen, SpaceId,
    SpaceKind,
};
use crate::{int, Error, Result};
use std::collections::BTreeSet;

/// Identifier of a supported map between moduli spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapId {
    /// Quotient `pi: Mbar_{g,n} -> Cbar_{g,n}` (classes pull back the other way).
    SymQuotient { g: u32, n: u32 },
    /// Forgetful `phi: (target) -> Mbar_g` for a pointed or symmetric target.
    ForgetAll { g: u32, target: SpaceId },
    /// Partial forgetful `Mbar_{g,n} -> Mbar_{g,k}` retaining `kept`.
    ForgetToSubset { g: u32, kept: Vec<u32>, source_n: u32 },
    /// Elliptic-tail gluing `j: Mbar_{g,1} -> Mbar_{g+1}`.
    EllipticTail { g: u32 },
}

/// Applies a linear map given by images of basis elements, propagating the
/// support mask: a target element stays asserted unless it lies in the
/// image of some unasserted source element.
fn apply_linear<F>(a: &DivisorClass, target: SpaceId, image: F) -> Result<DivisorClass>
where
    F: Fn(&Gen) -> Result<DivisorClass>,
{
    let mut out = DivisorClass::zero(target);
    for (gen, coeff) in a.entries() {
        let img = image(gen)?;
        for (tg, tc) in img.entries() {
            let scaled = match tc.as_numeric() {
                Ok(r) => coeff.clone() * &r,
                Err(_) => {
                    // images of basis elements are numeric by construction
                    return Err(Error::Invalid("non-numeric map image".into()));
                }
            };
            out.add_to(tg.clone(), scaled)?;
        }
    }
    if let Some(mask) = &a.mask {
        let mut blocked: BTreeSet<Gen> = BTreeSet::new();
        for gen in enumerate_basis(&a.space) {
            if !mask.contains(&gen) {
                blocked.extend(image(&gen)?.support().cloned());
            }
        }
        let asserted: BTreeSet<Gen> = enumerate_basis(&target)
            .into_iter()
            .filter(|g| !blocked.contains(g))
            .collect();
        out = out.with_mask(asserted);
    }
    Ok(out)
}

fn expect_kind(a: &DivisorClass, kind: SpaceKind, what: &str) -> Result<()> {
    if a.space.kind != kind {
        return Err(Error::SpaceMismatch { expected: what.into(), got: a.space.to_string() });
    }
    Ok(())
}

/// Pullback along the quotient `pi: Mbar_{g,n} -> Cbar_{g,n}`.
///
/// The Q-divisor convention for `dt[0:2]` is absorbed here: every
/// `dt[i:c]` pulls back uniformly to the sum of the `d[i:T]` with #T = c.
pub fn sym_pullback(a: &DivisorClass) -> Result<DivisorClass> {
    expect_kind(a, SpaceKind::Symmetric, "symmetric space")?;
    let target = SpaceId::pointed(a.space.genus, a.space.markings)?;
    apply_linear(a, target, |gen| sym_pullback_gen(&target, gen))
}

fn sym_pullback_gen(target: &SpaceId, gen: &Gen) -> Result<DivisorClass> {
    let n = target.markings;
    let mut img = DivisorClass::zero(*target);
    match gen {
        Gen::Lambda => img.set(Gen::Lambda, int(1).into())?,
        Gen::DeltaIrr => img.set(Gen::DeltaIrr, int(1).into())?,
        Gen::PsiSym => {
            for i in 1..=n {
                img.add_to(Gen::Psi(i), int(1).into())?;
            }
            for t in subsets(n).filter(|t| t.len() >= 2) {
                let c = t.len() as i64;
                img.add_to(Gen::BoundaryPointed { i: 0, t }, int(-c).into())?;
            }
        }
        Gen::BoundarySym { i, c } => {
            for t in canonical_sets(target, *i, *c) {
                img.add_to(Gen::BoundaryPointed { i: *i, t }, int(1).into())?;
            }
        }
        _ => {
            return Err(Error::InvalidBasisElement {
                gen: format!("{gen:?}"),
                space: "symmetric space".into(),
            })
        }
    }
    Ok(img)
}

/// Pullback along the forgetful map to `Mbar_g` from a pointed or
/// symmetric target with the same genus.
pub fn forget_all_pullback(a: &DivisorClass, target: &SpaceId) -> Result<DivisorClass> {
    expect_kind(a, SpaceKind::Base, "base space")?;
    if target.genus != a.space.genus || target.kind == SpaceKind::Base {
        return Err(Error::SpaceMismatch {
            expected: format!("pointed or symmetric space of genus {}", a.space.genus),
            got: target.to_string(),
        });
    }
    apply_linear(a, *target, |gen| {
        let mut img = DivisorClass::zero(*target);
        match gen {
            Gen::Lambda => img.set(Gen::Lambda, int(1).into())?,
            Gen::DeltaIrr => img.set(Gen::DeltaIrr, int(1).into())?,
            Gen::DeltaBase(i) => match target.kind {
                SpaceKind::Pointed => {
                    for c in 0..=target.markings {
                        for t in canonical_sets(target, *i, c) {
                            img.add_to(Gen::BoundaryPointed { i: *i, t }, int(1).into())?;
                        }
                    }
                }
                _ => {
                    for c in 0..=target.markings as i64 {
                        if let Ok(gen @ Gen::BoundarySym { i: ci, c: cc }) =
                            canonicalize_sym(target, *i as i64, c)
                        {
                            if ci == *i && cc as i64 == c {
                                img.add_to(gen, int(1).into())?;
                            }
                        }
                    }
                }
            },
            _ => unreachable!("base-space basis"),
        }
        Ok(img)
    })
}

/// Pullback along the partial forgetful map `Mbar_{g,n} -> Mbar_{g,k}`
/// retaining the labels `kept` (source label `a` maps to `kept[a-1]`).
pub fn forget_to_subset_pullback(
    a: &DivisorClass,
    kept: &[u32],
    target_n: u32,
) -> Result<DivisorClass> {
    expect_kind(a, SpaceKind::Pointed, "pointed space")?;
    let k = a.space.markings;
    if kept.len() as u32 != k || kept.is_empty() {
        return Err(Error::Invalid(format!("kept-label list must have length {k}")));
    }
    let kept_set: BTreeSet<u32> = kept.iter().copied().collect();
    if kept_set.len() != kept.len() {
        return Err(Error::LabelCollision);
    }
    if kept.iter().any(|l| *l < 1 || *l > target_n) {
        return Err(Error::Invalid("kept labels outside 1..n".into()));
    }
    let target = SpaceId::pointed(a.space.genus, target_n)?;
    let forgotten: Vec<u32> = (1..=target_n).filter(|l| !kept_set.contains(l)).collect();
    let relabel = |t: &BTreeSet<u32>| -> BTreeSet<u32> {
        t.iter().map(|l| kept[(*l - 1) as usize]).collect()
    };
    let f = forgotten.len() as u32;
    let extension = |mask: u32| -> BTreeSet<u32> {
        forgotten
            .iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, l)| *l)
            .collect()
    };
    apply_linear(a, target, |gen| {
        let mut img = DivisorClass::zero(target);
        match gen {
            Gen::Lambda => img.set(Gen::Lambda, int(1).into())?,
            Gen::DeltaIrr => img.set(Gen::DeltaIrr, int(1).into())?,
            Gen::Psi(aidx) => {
                let lbl = kept[(*aidx - 1) as usize];
                img.set(Gen::Psi(lbl), int(1).into())?;
                for mask in 1u32..(1 << f) {
                    let mut t = extension(mask);
                    t.insert(lbl);
                    img.add_to(canonicalize(&target, 0, &t)?, int(-1).into())?;
                }
            }
            Gen::BoundaryPointed { i, t } => {
                let base = relabel(t);
                for mask in 0u32..(1 << f) {
                    let mut full = base.clone();
                    full.extend(extension(mask));
                    img.add_to(canonicalize(&target, *i as i64, &full)?, int(1).into())?;
                }
            }
            _ => unreachable!("pointed-space basis"),
        }
        Ok(img)
    })
}

/// Pullback along the elliptic-tail gluing `j: Mbar_{g,1} -> Mbar_{g+1}`
/// (`a` lives on the base space of genus g+1).
///
/// For 2i = g+1 the two boundary preimages coincide and are counted once;
/// this is the unique linear rule consistent with the cusp-class display
/// (checked in tests against the genus-7 chain).
pub fn elliptic_tail_pullback(a: &DivisorClass) -> Result<DivisorClass> {
    expect_kind(a, SpaceKind::Base, "base space")?;
    if a.space.genus < 3 {
        return Err(Error::Invalid("elliptic-tail pullback needs genus >= 3".into()));
    }
    let g = a.space.genus - 1;
    let target = SpaceId::pointed(g, 1)?;
    let one: BTreeSet<u32> = [1u32].into();
    apply_linear(a, target, |gen| {
        let mut img = DivisorClass::zero(target);
        match gen {
            Gen::Lambda => img.set(Gen::Lambda, int(1).into())?,
            Gen::DeltaIrr => img.set(Gen::DeltaIrr, int(1).into())?,
            Gen::DeltaBase(1) => {
                img.set(Gen::Psi(1), int(-1).into())?;
                img.add_to(canonicalize(&target, g as i64 - 1, &one)?, int(1).into())?;
            }
            Gen::DeltaBase(i) => {
                img.add_to(canonicalize(&target, *i as i64 - 1, &one)?, int(1).into())?;
                if 2 * *i != g + 1 {
                    img.add_to(
                        canonicalize(&target, (g - *i) as i64, &one)?,
                        int(1).into(),
                    )?;
                }
            }
            _ => unreachable!("base-space basis"),
        }
        Ok(img)
    })
}

/// Partial pushforward `(phi_1)_*( a . d[0:{1,2}] )` from `Mbar_{g,2}` to
/// `Mbar_{g,1}`, defined only on the lambda, delta_irr and psi coefficients.
pub fn node_to_cusp_pushforward(a: &DivisorClass) -> Result<DivisorClass> {
    expect_kind(a, SpaceKind::Pointed, "pointed space")?;
    if a.space.markings != 2 {
        return Err(Error::SpaceMismatch {
            expected: "Mbar_{g,2}".into(),
            got: a.space.to_string(),
        });
    }
    let node = Gen::boundary_pointed(0, &[1, 2]);
    for req in [&Gen::Lambda, &Gen::DeltaIrr, &node] {
        if !a.is_asserted(req) {
            return Err(Error::InsufficientSupport { gen: req.token(&a.space) });
        }
    }
    let target = SpaceId::pointed(a.space.genus, 1)?;
    let mut out = DivisorClass::zero(target);
    out.set(Gen::Lambda, a.coefficient_of(&Gen::Lambda))?;
    out.set(Gen::DeltaIrr, a.coefficient_of(&Gen::DeltaIrr))?;
    out.set(Gen::Psi(1), -a.coefficient_of(&node))?;
    Ok(out.with_mask([Gen::Lambda, Gen::Psi(1), Gen::DeltaIrr].into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::Coefficient;
    use crate::registry;

    #[test]
    fn sym_pullback_of_psit() {
        let sym = SpaceId::symmetric(4, 4).unwrap();
        let a = DivisorClass::unit(sym, Gen::PsiSym).unwrap();
        let img = sym_pullback(&a).unwrap();
        for i in 1..=4 {
            assert_eq!(img.coefficient_of(&Gen::Psi(i)), int(1).into());
        }
        // coefficient -c on every d[0:T] with #T = c >= 2
        assert_eq!(
            img.coefficient_of(&Gen::boundary_pointed(0, &[1, 2])),
            int(-2).into()
        );
        assert_eq!(
            img.coefficient_of(&Gen::boundary_pointed(0, &[1, 2, 3])),
            int(-3).into()
        );
        assert_eq!(
            img.coefficient_of(&Gen::boundary_pointed(0, &[1, 2, 3, 4])),
            int(-4).into()
        );
    }

    #[test]
    fn sym_pullback_of_zero() {
        let sym = SpaceId::symmetric(5, 5).unwrap();
        assert!(sym_pullback(&DivisorClass::zero(sym)).unwrap().is_zero());
    }

    #[test]
    fn forget_all_pullback_of_lambda() {
        let base = SpaceId::base(9).unwrap();
        let a = DivisorClass::unit(base, Gen::Lambda).unwrap();
        for target in [SpaceId::pointed(9, 3).unwrap(), SpaceId::symmetric(9, 3).unwrap()] {
            let img = forget_all_pullback(&a, &target).unwrap();
            assert_eq!(img.support().count(), 1);
            assert_eq!(img.coefficient_of(&Gen::Lambda), int(1).into());
        }
    }

    #[test]
    fn forget_all_pullback_k10_delta5_coefficient() {
        // coefficient of dt[5:c] in phi*(Kbar_10) is -b5 for every c
        let k10 = registry::k3_class_g10();
        let target = SpaceId::symmetric(10, 10).unwrap();
        let img = forget_all_pullback(&k10, &target).unwrap();
        for c in 0..=5u32 {
            assert_eq!(
                img.coefficient_of(&Gen::BoundarySym { i: 5, c }),
                -Coefficient::param("b5")
            );
        }
        // 2*5 = g: dt[5:c] only exists for c <= 5
        assert!(Gen::BoundarySym { i: 5, c: 6 }.validate(&target).is_err());
    }

    #[test]
    fn forget_to_subset_identity_case() {
        let sp = SpaceId::pointed(7, 2).unwrap();
        let a = registry::node_class_partial(7).unwrap();
        let img = forget_to_subset_pullback(&a, &[1, 2], 2).unwrap();
        assert_eq!(img.space, sp);
        for gen in [Gen::Lambda, Gen::DeltaIrr, Gen::Psi(1), Gen::Psi(2)] {
            assert_eq!(img.coefficient_of(&gen), a.coefficient_of(&gen));
        }
        assert_eq!(img.mask, a.mask);
    }

    #[test]
    fn forget_to_subset_psi_rule() {
        // phi_12^* of 6 psi_1 on Mbar_{7,2}: coefficient of d[0:{1,j}] is -6
        let src = SpaceId::pointed(7, 2).unwrap();
        let a = DivisorClass::unit(src, Gen::Psi(1)).unwrap().scale(&int(6));
        let img = forget_to_subset_pullback(&a, &[1, 2], 5).unwrap();
        for j in 3..=5 {
            assert_eq!(
                img.coefficient_of(&Gen::boundary_pointed(0, &[1, j])),
                int(-6).into()
            );
        }
        assert_eq!(img.coefficient_of(&Gen::Psi(1)), int(6).into());
        assert!(img.coefficient_of(&Gen::boundary_pointed(0, &[2, 3])).is_zero());
    }

    #[test]
    fn forget_to_subset_order_independent() {
        // composing through an intermediate space agrees with one shot
        let a = registry::gonal7_class();
        let m71 = SpaceId::pointed(7, 1).unwrap();
        let via = forget_all_pullback(&a, &m71).unwrap();
        let lifted = forget_to_subset_pullback(&via, &[2], 4).unwrap();
        let direct = forget_all_pullback(&a, &SpaceId::pointed(7, 4).unwrap()).unwrap();
        assert_eq!(lifted, direct);
    }

    #[test]
    fn forget_to_subset_label_collision() {
        let src = SpaceId::pointed(7, 2).unwrap();
        let a = DivisorClass::unit(src, Gen::Lambda).unwrap();
        assert!(matches!(
            forget_to_subset_pullback(&a, &[1, 1], 4),
            Err(Error::LabelCollision)
        ));
    }

    #[test]
    fn elliptic_tail_pullback_of_lambda() {
        let base = SpaceId::base(8).unwrap();
        let a = DivisorClass::unit(base, Gen::Lambda).unwrap();
        let img = elliptic_tail_pullback(&a).unwrap();
        assert_eq!(img.space, SpaceId::pointed(7, 1).unwrap());
        assert_eq!(img.support().count(), 1);
        assert_eq!(img.coefficient_of(&Gen::Lambda), int(1).into());
    }

    #[test]
    fn node_to_cusp_rule_table() {
        let node7 = registry::node_class_partial(7).unwrap();
        let cu = node_to_cusp_pushforward(&node7).unwrap();
        assert_eq!(cu.coefficient_of(&Gen::Lambda), int(44).into());
        assert_eq!(cu.coefficient_of(&Gen::Psi(1)), int(28).into());
        assert_eq!(cu.coefficient_of(&Gen::DeltaIrr), int(-6).into());
        assert!(!cu.is_asserted(&Gen::boundary_pointed(1, &[])));
    }

    #[test]
    fn node_to_cusp_insufficient_support() {
        let sp = SpaceId::pointed(7, 2).unwrap();
        let a = DivisorClass::unit(sp, Gen::Lambda)
            .unwrap()
            .with_mask([Gen::Lambda].into());
        assert!(matches!(
            node_to_cusp_pushforward(&a),
            Err(Error::InsufficientSupport { .. })
        ));
    }

    #[test]
    fn node_to_cusp_of_zero() {
        let sp = SpaceId::pointed(7, 2).unwrap();
        let z = DivisorClass::zero(sp);
        let out = node_to_cusp_pushforward(&z).unwrap();
        assert!(out.is_zero());
    }
}
