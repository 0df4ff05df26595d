//! The verification suite: every stated identity in the catalog, run as
//! exact checks and assembled into a deterministic machine-readable report.

use crate::certify::{
    check_uniruled_pair, check_uniruled_single, decompose_slope7, slope, solve_interpolation,
};
use crate::classes::{Coefficient, DivisorClass};
use crate::curves::{self, pair};
use crate::maps::{
    elliptic_tail_pullback, forget_all_pullback, node_to_cusp_pushforward, sym_pullback,
};
use crate::registry;
use crate::spaces::{enumerate_basis, Gen, SpaceId};
use crate::{choose2, int, rat, Error, Rat, Result};
use std::collections::{BTreeMap, BTreeSet};

pub const SUITES: [&str; 8] = [
    "all",
    "eq-consistency",
    "curves",
    "canrep11",
    "canrep10",
    "uniruled",
    "slope",
    "node7",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    MismatchFlagged,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::MismatchFlagged => "MISMATCH-FLAGGED",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub id: String,
    pub location: String,
    pub expected: String,
    pub provenance: &'static str,
    pub computed: String,
    pub status: Status,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: usize,
    pub fail: usize,
    pub mismatch: usize,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        if self.fail == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let checks: Vec<serde_json::Value> = self
            .checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "id": c.id,
                    "location": c.location,
                    "expected": c.expected,
                    "provenance": c.provenance,
                    "computed": c.computed,
                    "status": c.status.label(),
                })
            })
            .collect();
        serde_json::json!({
            "suite": self.suite,
            "checks": checks,
            "summary": { "pass": self.pass, "fail": self.fail, "mismatch_flagged": self.mismatch },
        })
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("id\tlocation\texpected\tprovenance\tcomputed\tstatus\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                c.id, c.location, c.expected, c.provenance, c.computed,
                c.status.label()
            ));
        }
        out.push_str(&format!(
            "# suite={} pass={} fail={} mismatch_flagged={}\n",
            self.suite, self.pass, self.fail, self.mismatch
        ));
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {} ({}): expected {} [{}], computed {}\n",
                c.status.label(),
                c.id,
                c.location,
                c.expected,
                c.provenance,
                c.computed
            ));
        }
        out.push_str(&format!(
            "suite {}: {} pass, {} fail, {} mismatch-flagged\n",
            self.suite, self.pass, self.fail, self.mismatch
        ));
        out
    }
}

/// Checks registered as known open questions: an expected/computed
/// disagreement here is reported as MISMATCH-FLAGGED, not FAIL.
fn flagged_ids() -> BTreeSet<&'static str> {
    ["ledger11/pointed/d[1,0]", "ledger11/sym/d[1,0]", "ledger10/sym/d[1,0]"]
        .into()
}

struct Runner {
    checks: Vec<Check>,
}

impl Runner {
    fn new() -> Self {
        Runner { checks: Vec::new() }
    }

    fn push(
        &mut self,
        id: String,
        location: &str,
        provenance: &'static str,
        expected: String,
        computed: String,
    ) {
        let status = if expected == computed {
            Status::Pass
        } else if flagged_ids().contains(id.as_str()) {
            Status::MismatchFlagged
        } else {
            Status::Fail
        };
        self.checks.push(Check {
            id,
            location: location.to_string(),
            expected,
            provenance,
            computed,
            status,
        });
    }

    fn value(
        &mut self,
        id: String,
        location: &str,
        provenance: &'static str,
        expected: &Rat,
        computed: Result<Coefficient>,
    ) {
        let computed = match computed.and_then(|c| c.as_numeric()) {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        };
        self.push(id, location, provenance, expected.to_string(), computed);
    }

    fn boolean(
        &mut self,
        id: String,
        location: &str,
        provenance: &'static str,
        expected: bool,
        computed: Result<bool>,
    ) {
        let computed = match computed {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        };
        self.push(id, location, provenance, expected.to_string(), computed);
    }
}

fn suite_eq_consistency(r: &mut Runner) {
    // Riemann-Hurwitz descent of the canonical class along the quotient
    for g in 2..=12u32 {
        for n in 1..=12u32 {
            let id = format!("rh/g{g:02}n{n:02}");
            let outcome = (|| -> Result<bool> {
                let sym = SpaceId::symmetric(g, n)?;
                let pt = SpaceId::pointed(g, n)?;
                let mut lhs = sym_pullback(&registry::canonical_class(&sym))?;
                // ramification divisor of the quotient: every two-point
                // coincidence locus, with multiplicity one
                for a in 1..=n {
                    for b in (a + 1)..=n {
                        lhs.add_to(Gen::boundary_pointed(0, &[a, b]), int(1).into())?;
                    }
                }
                Ok(lhs == registry::canonical_class(&pt))
            })();
            r.boolean(id, "riemann-hurwitz canonical-class descent", "derived", true, outcome);
        }
    }
    // quotient pullback of the exceptional class equals the pencil class
    for g in 3..=12u32 {
        let id = format!("aj-pullback/g{g:02}");
        let outcome = (|| -> Result<bool> {
            Ok(sym_pullback(&registry::aj_exceptional_class(g)?)? == registry::logan_class(g)?)
        })();
        r.boolean(id, "quotient pullback of the exceptional divisor", "stated", true, outcome);
    }
}

fn suite_curves(r: &mut Runner) {
    // Abel-Jacobi pencil table
    for g in 4..=12u32 {
        let gi = g as i64;
        let rows: Vec<(&str, Rat, Result<Coefficient>)> = match curves::abel_jacobi_pencil(g) {
            Ok(l) => {
                let k = registry::canonical_class(&l.space);
                let dt = registry::aj_exceptional_class(g);
                vec![
                    (
                        "psit",
                        int(2 * gi - 2),
                        pair(&l, &DivisorClass::unit(l.space, Gen::PsiSym).unwrap()),
                    ),
                    (
                        "dt[0,2]",
                        int(2 * gi - 1),
                        pair(
                            &l,
                            &DivisorClass::unit(l.space, Gen::BoundarySym { i: 0, c: 2 }).unwrap(),
                        ),
                    ),
                    ("K", int(-1), pair(&l, &k)),
                    ("Dtilde", int(-1), dt.and_then(|d| pair(&l, &d))),
                ]
            }
            Err(e) => vec![("construct", int(0), Err(e))],
        };
        for (what, expected, computed) in rows {
            r.value(
                format!("aj-pencil/g{g:02}/{what}"),
                "Abel-Jacobi pencil intersection table",
                "stated",
                &expected,
                computed,
            );
        }
    }
    // K3 section pencil and the averaged two-point family against the
    // pencil divisor
    for g in 3..=11u32 {
        if g == 10 {
            continue;
        }
        let computed = curves::k3_section_pencil(g)
            .and_then(|c| pair(&c, &registry::logan_class(g)?));
        r.value(
            format!("tables/R.Dbar/g{g:02}"),
            "K3 section pencil against the pencil divisor",
            "stated",
            &int(-1),
            computed,
        );
    }
    for g in 3..=10u32 {
        if g == 9 {
            continue;
        }
        let computed = curves::gamma_avg(g).and_then(|c| pair(&c, &registry::logan_class(g)?));
        r.value(
            format!("tables/Gamma.Dbar/g{g:02}"),
            "averaged two-point family against the pencil divisor",
            "stated",
            &int(-1),
            computed,
        );
    }
    // pushforward tables on the symmetric product
    for g in 3..=11u32 {
        let gi = g as i64;
        if g != 10 {
            let rt = curves::rtilde(g);
            for (what, expected, gen) in [
                ("Lt", int(gi + 1), Gen::Lambda),
                ("dt_irr", int(6 * gi + 18), Gen::DeltaIrr),
                ("psit", int(gi), Gen::PsiSym),
            ] {
                let computed = rt.clone().and_then(|c| {
                    pair(&c, &DivisorClass::unit(c.space, gen.clone())?)
                });
                r.value(
                    format!("tables/Rtilde.{what}/g{g:02}"),
                    "pushforward table for the K3 section pencil",
                    "stated",
                    &expected,
                    computed,
                );
            }
            let computed = rt
                .and_then(|c| pair(&c, &registry::canonical_class(&SpaceId::symmetric(g, g)?)));
            r.value(
                format!("tables/Rtilde.K/g{g:02}"),
                "pushforward pencil against the canonical class",
                "stated",
                &int(2 * gi - 23),
                computed,
            );
        }
        if g < 11 && g != 9 {
            let gt = curves::gammatilde(g);
            for (what, expected, gen) in [
                ("Lt", int(gi + 1), Gen::Lambda),
                ("dt_irr", int(6 * gi + 17), Gen::DeltaIrr),
                ("psit", int(gi + 1), Gen::PsiSym),
                ("dt[0,2]", int(1), Gen::BoundarySym { i: 0, c: 2 }),
            ] {
                let computed = gt.clone().and_then(|c| {
                    pair(&c, &DivisorClass::unit(c.space, gen.clone())?)
                });
                r.value(
                    format!("tables/Gammatilde.{what}/g{g:02}"),
                    "pushforward table for the two-point family",
                    "stated",
                    &expected,
                    computed,
                );
            }
            let computed = gt
                .and_then(|c| pair(&c, &registry::canonical_class(&SpaceId::symmetric(g, g)?)));
            r.value(
                format!("tables/Gammatilde.K/g{g:02}"),
                "pushforward family against the canonical class",
                "stated",
                &int(2 * gi - 21),
                computed,
            );
        }
    }
    // boundary-filling pencils in genus 11
    let space11 = SpaceId::pointed(11, 11).unwrap();
    let k11 = registry::canonical_class(&space11);
    let dbar11 = registry::logan_class(11).unwrap();
    let phibn = forget_all_pullback(&registry::bn11(), &space11).unwrap();
    for c in 2..=11u32 {
        let t: BTreeSet<u32> = (1..=c).collect();
        let ci = c as i64;
        match curves::r_t(&t) {
            Ok(curve) => {
                r.value(
                    format!("rT/c{c:02}/phi-bn"),
                    "boundary pencil against the pulled-back Brill-Noether class",
                    "stated",
                    &int(0),
                    pair(&curve, &phibn),
                );
                r.value(
                    format!("rT/c{c:02}/K"),
                    "boundary pencil against the canonical class",
                    "derived",
                    &int(1 - ci),
                    pair(&curve, &k11),
                );
                r.value(
                    format!("rT/c{c:02}/K-minus-Dbar"),
                    "boundary pencil against the canonical class minus the pencil divisor",
                    "derived",
                    &(-rat(ci * ci + ci - 4, 2)),
                    k11.sub(&dbar11).and_then(|d| pair(&curve, &d)),
                );
            }
            Err(e) => r.push(
                format!("rT/c{c:02}/construct"),
                "boundary pencil construction",
                "derived",
                "ok".into(),
                format!("error: {e}"),
            ),
        }
    }
    // Lefschetz pencil in genus 11 kills the slope-7 representative plus
    // any boundary combination
    for (tag, coeffs) in [("a", [1i64, 2, 3, 4, 5]), ("b", [-3, 0, 7, -1, 2])] {
        let computed = (|| -> Result<Coefficient> {
            let mut cls = registry::bn11().scale(&int(2));
            for (i, a) in (1..=5u32).zip(coeffs) {
                cls.add_to(Gen::DeltaBase(i), int(a).into())?;
            }
            pair(&curves::lefschetz_k3(11)?, &cls)
        })();
        r.value(
            format!("rT/lefschetz11/{tag}"),
            "Lefschetz pencil against twice the slope-7 representative plus boundary",
            "stated",
            &int(0),
            computed,
        );
    }
}

/// Closed-form ledger cell d_{i:c} for the genus-11 interpolation, as
/// independently solved. Returns (computed closed form, stated value if
/// the cell is a registered open question).
fn ledger_cell_11(i: u32, c: i64) -> (Coefficient, Option<Rat>) {
    if i == 0 {
        return (rat(c * c + c - 4, 2).into(), None);
    }
    let base = [8i64, 16, 22, 26, 28][(i - 1) as usize];
    let form: Coefficient = (int(base) + choose2((c - i as i64).abs() + 1)).into();
    if i == 1 && c == 0 {
        // the one cell where the stated table disagrees with the solve
        return (form, Some(int(7)));
    }
    (form, None)
}

fn ledger_checks(
    r: &mut Runner,
    tag: &str,
    target: &DivisorClass,
    gens: &[(DivisorClass, Rat)],
    cell: impl Fn(u32, i64) -> (Coefficient, Option<Rat>),
) {
    let space = target.space;
    let allowed: BTreeSet<Gen> = enumerate_basis(&space)
        .into_iter()
        .filter(|g| matches!(g, Gen::BoundaryPointed { .. } | Gen::BoundarySym { .. }))
        .collect();
    let ledger = match solve_interpolation(target, gens, &allowed) {
        Ok(l) => l,
        Err(e) => {
            r.push(
                format!("{tag}/solve"),
                "interpolation ledger solve",
                "derived",
                "ok".into(),
                format!("error: {e}"),
            );
            return;
        }
    };
    r.boolean(
        format!("{tag}/recombines"),
        "ledger recombination identity",
        "derived",
        true,
        Ok(ledger.recombines()),
    );
    // group residual coefficients by the (i, c) profile and require each
    // cell to be uniform and to equal its closed form
    let mut cells: BTreeMap<(u32, i64), BTreeSet<String>> = BTreeMap::new();
    for gen in &allowed {
        let key = match gen {
            Gen::BoundaryPointed { i, t } => (*i, t.len() as i64),
            Gen::BoundarySym { i, c } => (*i, *c as i64),
            _ => continue,
        };
        cells
            .entry(key)
            .or_default()
            .insert(ledger.residual.coefficient_of(gen).to_string());
    }
    for ((i, c), values) in cells {
        let (form, stated) = cell(i, c);
        let computed = if values.len() == 1 {
            values.into_iter().next().unwrap()
        } else {
            format!("non-uniform cell: {}", values.into_iter().collect::<Vec<_>>().join("; "))
        };
        match stated {
            None => r.push(
                format!("{tag}/d[{i},{c}]"),
                "ledger residual closed form",
                "stated",
                form.to_string(),
                computed,
            ),
            Some(p) => r.push(
                format!("{tag}/d[{i},{c}]"),
                "ledger residual open cell",
                "stated",
                p.to_string(),
                computed,
            ),
        }
    }
}

fn suite_canrep11(r: &mut Runner) {
    let space = SpaceId::pointed(11, 11).unwrap();
    let target = registry::canonical_class(&space);
    let gens = vec![
        (registry::logan_class(11).unwrap(), int(1)),
        (forget_all_pullback(&registry::bn11(), &space).unwrap(), int(2)),
    ];
    ledger_checks(r, "ledger11/pointed", &target, &gens, ledger_cell_11);
    let sym = SpaceId::symmetric(11, 11).unwrap();
    let target = registry::canonical_class(&sym);
    let gens = vec![
        (registry::aj_exceptional_class(11).unwrap(), int(1)),
        (forget_all_pullback(&registry::bn11(), &sym).unwrap(), int(2)),
    ];
    ledger_checks(r, "ledger11/sym", &target, &gens, |i, c| {
        if i == 0 && c == 2 {
            // the half-class convention shifts the smallest cell
            (int(0).into(), None)
        } else {
            ledger_cell_11(i, c)
        }
    });
}

fn suite_canrep10(r: &mut Runner) {
    let sym = SpaceId::symmetric(10, 10).unwrap();
    let target = registry::canonical_class(&sym);
    let gens = vec![
        (registry::aj_exceptional_class(10).unwrap(), int(1)),
        (forget_all_pullback(&registry::k3_class_g10(), &sym).unwrap(), int(2)),
    ];
    ledger_checks(r, "ledger10/sym", &target, &gens, |i, c| match (i, c) {
        (0, 2) => (int(0).into(), None),
        (0, c) => (rat(c * c + c - 4, 2).into(), None),
        (5, c) => (
            Coefficient::param_scaled("b5", int(2))
                + (int(-2) + choose2((c - 5).abs() + 1)).into(),
            None,
        ),
        (i, c) => ledger_cell_11(i, c),
    });
    // pencil checks tied to the genus-10 class
    r.value(
        "ledger10/R10.K3class10".into(),
        "Lefschetz pencil against the K3 divisor class",
        "stated",
        &int(-1),
        curves::lefschetz_k3(10).and_then(|c| pair(&c, &registry::k3_class_g10())),
    );
    let gt = curves::gammatilde(10);
    r.value(
        "ledger10/Gammatilde.Dtilde".into(),
        "pushforward family against the exceptional divisor",
        "stated",
        &int(-1),
        gt.clone().and_then(|c| pair(&c, &registry::aj_exceptional_class(10)?)),
    );
    r.value(
        "ledger10/Gammatilde.K".into(),
        "pushforward family against the canonical class",
        "stated",
        &int(-1),
        gt.and_then(|c| pair(&c, &registry::canonical_class(&sym))),
    );
}

fn suite_slope(r: &mut Runner) {
    let none = BTreeMap::new();
    for g in 3..=40u32 {
        let computed = registry::brill_noether_class(g)
            .and_then(|b| slope(&b, &none))
            .map(|s| s.to_string())
            .unwrap_or_else(|e| format!("error: {e}"));
        let expected = (int(6) + rat(12, g as i64 + 1)).to_string();
        r.push(
            format!("slope/bn/g{g:02}"),
            "slope of the Brill-Noether class",
            "stated",
            expected,
            computed,
        );
    }
    for g in 2..=40u32 {
        let computed = slope(&registry::canonical_class(&SpaceId::base(g).unwrap()), &none)
            .map(|s| s.to_string())
            .unwrap_or_else(|e| format!("error: {e}"));
        r.push(
            format!("slope/K/g{g:02}"),
            "slope of the canonical class",
            "stated",
            rat(13, 2).to_string(),
            computed,
        );
    }
    let computed = slope(&registry::k3_class_g10(), &registry::param_lower_bounds())
        .map(|s| s.to_string())
        .unwrap_or_else(|e| format!("error: {e}"));
    r.push(
        "slope/K3class10".into(),
        "slope of the K3 divisor class at the parameter bound",
        "stated",
        int(7).to_string(),
        computed,
    );
    // slope-7 decomposition of the symmetric canonical class
    match decompose_slope7(13, &registry::brill_noether_class(13).unwrap()) {
        Ok(w) => {
            r.push(
                "slope/decompose13/surplus".into(),
                "lambda surplus of the slope-7 decomposition",
                "derived",
                rat(2, 7).to_string(),
                w.surplus.to_string(),
            );
            r.boolean(
                "slope/decompose13/verdict".into(),
                "slope-7 decomposition verdict",
                "derived",
                true,
                Ok(w.verdict),
            );
            r.boolean(
                "slope/decompose13/recombines".into(),
                "slope-7 decomposition recombination",
                "derived",
                true,
                w.recombines(&registry::brill_noether_class(13).unwrap()),
            );
        }
        Err(e) => r.push(
            "slope/decompose13/solve".into(),
            "slope-7 decomposition",
            "derived",
            "ok".into(),
            format!("error: {e}"),
        ),
    }
    let boundary = registry::k3_class_g10().substitute_params(&registry::param_lower_bounds());
    match decompose_slope7(10, &boundary) {
        Ok(w) => {
            r.push(
                "slope/decompose10/surplus".into(),
                "lambda surplus at the slope-7 boundary case",
                "derived",
                int(0).to_string(),
                w.surplus.to_string(),
            );
            r.boolean(
                "slope/decompose10/verdict".into(),
                "strict positivity fails at slope exactly 7",
                "derived",
                false,
                Ok(w.verdict),
            );
        }
        Err(e) => r.push(
            "slope/decompose10/solve".into(),
            "slope-7 boundary decomposition",
            "derived",
            "ok".into(),
            format!("error: {e}"),
        ),
    }
}

fn suite_uniruled(r: &mut Runner) {
    // genus 8, two-curve criterion: passes exactly up to n = 12
    for n in [12u32, 13] {
        let outcome = (|| -> Result<(Rat, Rat, bool)> {
            let c1 = curves::g8_gamma1(n)?;
            let c2 = curves::g8_gamma2(n)?;
            let space = c1.space;
            let d1 = forget_all_pullback(&registry::bn8_double(), &space)?;
            let d2 = DivisorClass::unit(space, Gen::DeltaIrr)?;
            let k = registry::canonical_class(&space);
            let cert = check_uniruled_pair(&c1, &c2, &d1, &d2, &k)?;
            let det1 = cert
                .trace
                .iter()
                .find(|(l, _)| l == "det1")
                .map(|(_, v)| v.clone())
                .unwrap_or_else(|| int(0));
            let det2 = cert
                .trace
                .iter()
                .find(|(l, _)| l == "det2")
                .map(|(_, v)| v.clone())
                .unwrap_or_else(|| int(0));
            Ok((det1, det2, cert.verdict))
        })();
        match outcome {
            Ok((det1, det2, verdict)) => {
                r.push(
                    format!("uniruled/g8n{n:02}/det1"),
                    "genus-8 two-curve determinant",
                    "stated",
                    int(-1638).to_string(),
                    det1.to_string(),
                );
                r.push(
                    format!("uniruled/g8n{n:02}/det2"),
                    "genus-8 elimination determinant",
                    "derived",
                    int(29 * n as i64 - 367).to_string(),
                    det2.to_string(),
                );
                r.boolean(
                    format!("uniruled/g8n{n:02}/verdict"),
                    "genus-8 certificate window",
                    "derived",
                    n <= 12,
                    Ok(verdict),
                );
            }
            Err(e) => r.push(
                format!("uniruled/g8n{n:02}/solve"),
                "genus-8 certificate",
                "derived",
                "ok".into(),
                format!("error: {e}"),
            ),
        }
    }
    // genus 7, two-curve criterion at n = 13
    let outcome = (|| -> Result<Vec<(String, Rat)>> {
        let c1 = curves::g7_gamma1()?;
        let c2 = curves::g7_gamma2()?;
        let space = c1.space;
        let d1 = registry::d1_class_partial(13)?;
        let d2 = forget_all_pullback(&registry::gonal7_class(), &space)?;
        let k = registry::canonical_class(&space);
        let cert = check_uniruled_pair(&c1, &c2, &d1, &d2, &k)?;
        let mut trace = cert.trace.clone();
        trace.push(("verdict".into(), if cert.verdict { int(1) } else { int(0) }));
        Ok(trace)
    })();
    let expected: Vec<(&str, Rat)> = vec![
        ("G1.D1", int(-28)),
        ("G1.D2", int(14)),
        ("G2.D1", int(2)),
        ("G2.D2", int(-1)),
        ("G1.K", int(22)),
        ("G2.K", int(-2)),
        ("det1", int(0)),
        ("det2", int(-12)),
        ("verdict", int(1)),
    ];
    match outcome {
        Ok(trace) => {
            for (label, want) in expected {
                let got = trace
                    .iter()
                    .find(|(l, _)| l == label)
                    .map(|(_, v)| v.to_string())
                    .unwrap_or_else(|| "missing".into());
                r.push(
                    format!("uniruled/g7/{label}"),
                    "genus-7 two-curve certificate",
                    "stated",
                    want.to_string(),
                    got,
                );
            }
        }
        Err(e) => r.push(
            "uniruled/g7/solve".into(),
            "genus-7 certificate",
            "derived",
            "ok".into(),
            format!("error: {e}"),
        ),
    }
    // genus 5 and genus 9 single-curve criteria
    let g5 = (|| -> Result<(Rat, bool)> {
        let c = curves::g5_pencil()?;
        let k = registry::canonical_class(&c.space);
        let node = DivisorClass::unit(c.space, Gen::boundary_pointed(0, &[1, 2]))?;
        let cert = check_uniruled_single(&c, &node, &k)?;
        let kv = cert
            .trace
            .iter()
            .find(|(l, _)| l == "curve.K")
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| int(0));
        Ok((kv, cert.verdict))
    })();
    match g5 {
        Ok((kv, verdict)) => {
            r.push(
                "uniruled/g5/K".into(),
                "genus-5 pencil against the canonical class",
                "stated",
                int(-2).to_string(),
                kv.to_string(),
            );
            r.boolean("uniruled/g5/verdict".into(), "genus-5 certificate", "derived", true, Ok(verdict));
        }
        Err(e) => r.push(
            "uniruled/g5/solve".into(),
            "genus-5 certificate",
            "derived",
            "ok".into(),
            format!("error: {e}"),
        ),
    }
    let g9 = (|| -> Result<(Rat, Rat, bool)> {
        let c = curves::g9_pencil()?;
        let k = registry::canonical_class(&c.space);
        let bn9 = forget_all_pullback(&registry::brill_noether_class(9)?, &c.space)?;
        let cert = check_uniruled_single(&c, &bn9, &k)?;
        let dv = cert
            .trace
            .iter()
            .find(|(l, _)| l == "curve.D")
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| int(0));
        let kv = cert
            .trace
            .iter()
            .find(|(l, _)| l == "curve.K")
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| int(0));
        Ok((dv, kv, cert.verdict))
    })();
    match g9 {
        Ok((dv, kv, verdict)) => {
            r.push(
                "uniruled/g9/K".into(),
                "genus-9 pencil against the canonical class",
                "stated",
                int(-1).to_string(),
                kv.to_string(),
            );
            r.push(
                "uniruled/g9/bn".into(),
                "genus-9 pencil against the pulled-back Brill-Noether class",
                "derived",
                rat(4, 3).to_string(),
                dv.to_string(),
            );
            r.boolean("uniruled/g9/verdict".into(), "genus-9 certificate", "derived", true, Ok(verdict));
        }
        Err(e) => r.push(
            "uniruled/g9/solve".into(),
            "genus-9 certificate",
            "derived",
            "ok".into(),
            format!("error: {e}"),
        ),
    }
}

fn suite_node7(r: &mut Runner) {
    r.push(
        "node7/c7".into(),
        "factorial prefactor of the nodal divisor",
        "derived",
        int(4).to_string(),
        registry::c_g_constant(7)
            .map(|v| v.to_string())
            .unwrap_or_else(|e| format!("error: {e}")),
    );
    // elliptic-tail pullback of the scaled genus-8 class gives the cusp class
    let outcome = (|| -> Result<bool> {
        let c7 = registry::c_g_constant(7)?;
        let bn8 = registry::brill_noether_class(8)?.scale(&c7);
        Ok(elliptic_tail_pullback(&bn8)? == registry::cusp_class(7)?)
    })();
    r.boolean(
        "node7/cusp-from-tail".into(),
        "elliptic-tail pullback reproduces the cusp class",
        "derived",
        true,
        outcome,
    );
    // node-to-cusp pushforward matches the cusp class on the masked support
    let outcome = (|| -> Result<bool> {
        let pushed = node_to_cusp_pushforward(&registry::node_class_partial(7)?)?;
        let cu = registry::cusp_class(7)?;
        Ok([Gen::Lambda, Gen::Psi(1), Gen::DeltaIrr]
            .iter()
            .all(|g| pushed.coefficient_of(g) == cu.coefficient_of(g)))
    })();
    r.boolean(
        "node7/cusp-pushforward".into(),
        "node-to-cusp pushforward agreement",
        "stated",
        true,
        outcome,
    );
    // pulled-back nodal class against its display, on the display support
    for n in 3..=13u32 {
        let outcome = (|| -> Result<bool> {
            let computed = registry::d1_class_partial(n)?;
            let space = SpaceId::pointed(7, n)?;
            let mut display = DivisorClass::zero(space);
            display.set(Gen::Lambda, int(44).into())?;
            display.set(Gen::Psi(1), int(6).into())?;
            display.set(Gen::Psi(2), int(6).into())?;
            display.set(Gen::DeltaIrr, int(-6).into())?;
            display.set(Gen::boundary_pointed(0, &[1, 2]), int(-28).into())?;
            for j in 3..=n {
                display.set(Gen::boundary_pointed(0, &[1, j]), int(-6).into())?;
                display.set(Gen::boundary_pointed(0, &[2, j]), int(-6).into())?;
            }
            let support: BTreeSet<Gen> = display.support().cloned().collect();
            for gen in &support {
                if !computed.is_asserted(gen) {
                    return Err(Error::InsufficientSupport { gen: gen.token(&space) });
                }
            }
            Ok(computed.agrees_on(&display, &support))
        })();
        r.boolean(
            format!("node7/d1-display/n{n:02}"),
            "pulled-back nodal class against its display",
            "stated",
            true,
            outcome,
        );
    }
    // the moving-point curve, restricted to its recorded entries, recovers
    // the psi-weighted pairing of the nodal class; its unrecorded entries
    // fail loudly rather than defaulting to zero
    let outcome = (|| -> Result<bool> {
        let c2 = curves::c2_moving_point(7)?;
        let node7 = registry::node_class_partial(7)?;
        if !matches!(pair(&c2, &node7), Err(Error::UnknownPairingEntry { .. })) {
            return Ok(false);
        }
        let mut known = DivisorClass::zero(c2.space);
        for gen in [Gen::Psi(1), Gen::Psi(2), Gen::boundary_pointed(0, &[1, 2])] {
            known.set(gen.clone(), node7.coefficient_of(&gen))?;
        }
        Ok(pair(&c2, &known)?.as_numeric()? == int(56))
    })();
    r.boolean(
        "node7/c2-pairing".into(),
        "moving-point curve against the recorded nodal entries",
        "derived",
        true,
        outcome,
    );
}

fn run_named(name: &str, r: &mut Runner) -> Result<()> {
    match name {
        "eq-consistency" => suite_eq_consistency(r),
        "curves" => suite_curves(r),
        "canrep11" => suite_canrep11(r),
        "canrep10" => suite_canrep10(r),
        "uniruled" => suite_uniruled(r),
        "slope" => suite_slope(r),
        "node7" => suite_node7(r),
        other => return Err(Error::UnknownName(other.to_string())),
    }
    Ok(())
}

/// Runs one suite (or `all`) and assembles the order-normalized report.
pub fn run_suite(name: &str) -> Result<VerifyReport> {
    let mut r = Runner::new();
    if name == "all" {
        for s in SUITES.iter().filter(|s| **s != "all") {
            run_named(s, &mut r)?;
        }
    } else {
        run_named(name, &mut r)?;
    }
    let mut checks = r.checks;
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    let pass = checks.iter().filter(|c| c.status == Status::Pass).count();
    let fail = checks.iter().filter(|c| c.status == Status::Fail).count();
    let mismatch = checks.iter().filter(|c| c.status == Status::MismatchFlagged).count();
    Ok(VerifyReport { suite: name.to_string(), checks, pass, fail, mismatch })
}
