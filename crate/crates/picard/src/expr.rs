//! Parser for class expressions and curve specifications.
//!
//! Grammar (whitespace-insensitive):
//!   class  := term (('+'|'-') term)*
//!   term   := coeff '*'? factor | factor
//!   coeff  := rational | rational '*' param | param
//!   factor := gen | name | name '[' int ']' | 'phi*(' class ')' | 'pi*(' class ')'
//!   gen    := 'L' | 'Lt' | 'd_irr' | 'dt_irr' | 'psi[' int ']' | 'psit'
//!           | 'd[' int ':' '{' int-list '}' ']' | 'd[' int ']' | 'dt[' int ':' int ']'
//!
//! Curve specs are `name` or `name[arg,...]` with integer or `{...}` set
//! arguments, e.g. `gamma_ij[5,1,2]` or `r_T[{1,2}]`.

use crate::classes::{Coefficient, DivisorClass};
use crate::curves::{catalog, CurveArg, TestCurve};
use crate::maps::{forget_all_pullback, sym_pullback};
use crate::registry;
use crate::spaces::{canonicalize, canonicalize_sym, Gen, SpaceId, SpaceKind};
use crate::{rat, Error, Rat, Result};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Star,
    Plus,
    Minus,
    Slash,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Comma,
    Eq,
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, col));
                i += 1;
            }
            '+' => {
                out.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, col));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, col));
                i += 1;
            }
            '[' => {
                out.push((Tok::LBrack, col));
                i += 1;
            }
            ']' => {
                out.push((Tok::RBrack, col));
                i += 1;
            }
            '{' => {
                out.push((Tok::LBrace, col));
                i += 1;
            }
            '}' => {
                out.push((Tok::RBrace, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            ':' => {
                out.push((Tok::Colon, col));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, col));
                i += 1;
            }
            '=' => {
                out.push((Tok::Eq, col));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text
                    .parse::<i64>()
                    .map_err(|_| Error::Parse { col, msg: format!("integer {text} too large") })?;
                out.push((Tok::Int(v), col));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => {
                return Err(Error::Parse { col, msg: format!("unexpected character '{other}'") })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    space: Option<SpaceId>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, ahead: usize) -> Option<&Tok> {
        self.toks.get(self.pos + ahead).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or_else(|| self.toks.last().map(|(_, c)| c + 1).unwrap_or(1))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { col: self.col(), msg: msg.into() })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {t:?}"))
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.next() {
            Some(Tok::Int(v)) => Ok(v),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.err("expected integer")
            }
        }
    }

    fn rational(&mut self) -> Result<Rat> {
        let num = self.int()?;
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let den = self.int()?;
            if den == 0 {
                return self.err("zero denominator");
            }
            Ok(rat(num, den))
        } else {
            Ok(rat(num, 1))
        }
    }

    fn space(&self) -> Result<SpaceId> {
        self.space.ok_or(Error::Parse {
            col: self.col(),
            msg: "basis token needs a space context (--g/--n/--sym)".into(),
        })
    }

    fn label_set(&mut self) -> Result<BTreeSet<u32>> {
        self.expect(Tok::LBrace)?;
        let mut set = BTreeSet::new();
        if self.peek() == Some(&Tok::RBrace) {
            self.pos += 1;
            return Ok(set);
        }
        loop {
            let v = self.int()?;
            if v < 1 {
                return self.err("labels are positive");
            }
            set.insert(v as u32);
            match self.next() {
                Some(Tok::Comma) => continue,
                Some(Tok::RBrace) => break,
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    return self.err("expected ',' or '}'");
                }
            }
        }
        Ok(set)
    }

    /// One basis element as a unit class on the context space.
    fn gen_factor(&mut self, name: &str) -> Result<DivisorClass> {
        let space = self.space()?;
        let sym = space.kind == SpaceKind::Symmetric;
        let gen = match name {
            "L" | "Lt" => {
                if (name == "Lt") != sym {
                    return self.err(format!("token {name} does not match the context space"));
                }
                Gen::Lambda
            }
            "d_irr" | "dt_irr" => {
                if (name == "dt_irr") != sym {
                    return self.err(format!("token {name} does not match the context space"));
                }
                Gen::DeltaIrr
            }
            "psit" => Gen::PsiSym,
            "psi" => {
                self.expect(Tok::LBrack)?;
                let i = self.int()?;
                self.expect(Tok::RBrack)?;
                if i < 1 {
                    return self.err("psi index is positive");
                }
                Gen::Psi(i as u32)
            }
            "d" => {
                self.expect(Tok::LBrack)?;
                let i = self.int()?;
                let gen = if self.peek() == Some(&Tok::Colon) {
                    self.pos += 1;
                    let t = self.label_set()?;
                    canonicalize(&space, i, &t)?
                } else {
                    canonicalize(&space, i, &BTreeSet::new())?
                };
                self.expect(Tok::RBrack)?;
                gen
            }
            "dt" => {
                self.expect(Tok::LBrack)?;
                let i = self.int()?;
                self.expect(Tok::Colon)?;
                let c = self.int()?;
                self.expect(Tok::RBrack)?;
                canonicalize_sym(&space, i, c)?
            }
            _ => return self.err(format!("unknown basis token {name}")),
        };
        DivisorClass::unit(space, gen)
    }

    fn is_gen_keyword(name: &str) -> bool {
        matches!(name, "L" | "Lt" | "d_irr" | "dt_irr" | "psit" | "psi" | "d" | "dt")
    }

    fn factor(&mut self) -> Result<DivisorClass> {
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return self.err("expected a basis token, class name, or phi*/pi*");
        };
        // pullback operators: phi*(expr), pi*(expr)
        if (name == "phi" || name == "pi")
            && self.peek_at(1) == Some(&Tok::Star)
            && self.peek_at(2) == Some(&Tok::LParen)
        {
            self.pos += 3;
            let outer = self.space()?;
            let inner_space = if name == "phi" {
                SpaceId::base(outer.genus)?
            } else {
                if outer.kind != SpaceKind::Pointed {
                    return self.err("pi* needs a pointed context space");
                }
                SpaceId::symmetric(outer.genus, outer.markings)?
            };
            let saved = self.space;
            self.space = Some(inner_space);
            let inner = self.expression()?;
            self.space = saved;
            self.expect(Tok::RParen)?;
            return if name == "phi" {
                if outer.is_base() {
                    self.err("phi* needs a pointed or symmetric context space")
                } else {
                    Ok(forget_all_pullback(&inner, &outer)?)
                }
            } else {
                Ok(sym_pullback(&inner)?)
            };
        }
        self.pos += 1;
        if Self::is_gen_keyword(&name) {
            return self.gen_factor(&name);
        }
        // registry name with optional bracket argument
        let arg = if self.peek() == Some(&Tok::LBrack) {
            self.pos += 1;
            let v = self.int()?;
            self.expect(Tok::RBrack)?;
            Some(v)
        } else {
            None
        };
        Ok(registry::named(&name, arg, self.space)?)
    }

    /// True when the upcoming ident is a parameter in coefficient position
    /// (ident '*' followed by something other than '(').
    fn at_param(&self) -> bool {
        match (self.peek(), self.peek_at(1), self.peek_at(2)) {
            (Some(Tok::Ident(_)), Some(Tok::Star), after) => after != Some(&Tok::LParen),
            _ => false,
        }
    }

    fn term(&mut self) -> Result<DivisorClass> {
        let mut coeff = Coefficient::numeric(rat(1, 1));
        let mut have_coeff = false;
        if matches!(self.peek(), Some(Tok::Int(_))) {
            let r = self.rational()?;
            coeff = Coefficient::numeric(r.clone());
            have_coeff = true;
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                if self.at_param() {
                    if let Some(Tok::Ident(p)) = self.next() {
                        coeff = Coefficient::param_scaled(&p, r);
                        self.expect(Tok::Star)?;
                    }
                }
            }
        } else if self.at_param() {
            if let Some(Tok::Ident(p)) = self.next() {
                coeff = Coefficient::param(&p);
                have_coeff = true;
                self.expect(Tok::Star)?;
            }
        }
        let f = self.factor()?;
        if !have_coeff {
            return Ok(f);
        }
        mul_class(f, &coeff).map_err(|e| match e {
            Error::NonNumericScalar(m) => Error::Parse {
                col: self.col(),
                msg: format!("parameter coefficient on a parametric class: {m}"),
            },
            other => other,
        })
    }

    fn expression(&mut self) -> Result<DivisorClass> {
        let mut negate = false;
        if matches!(self.peek(), Some(Tok::Minus) | Some(Tok::Plus)) {
            negate = self.next() == Some(Tok::Minus);
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.scale(&rat(-1, 1));
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }
}

/// Multiplies a class by an affine coefficient; valid when either side is
/// numeric (coefficients stay affine-linear in the parameters).
fn mul_class(a: DivisorClass, c: &Coefficient) -> Result<DivisorClass> {
    if c.is_numeric() {
        return Ok(a.scale(&c.as_numeric()?));
    }
    let mut out = DivisorClass::zero(a.space);
    for (gen, v) in a.entries() {
        out.set(gen.clone(), c.clone() * &v.as_numeric()?)?;
    }
    out.mask = a.mask.clone();
    Ok(out)
}

/// Parses a class expression; `space` is the context for basis tokens and
/// pullback operators.
pub fn parse_class(input: &str, space: Option<SpaceId>) -> Result<DivisorClass> {
    let mut p = Parser { toks: lex(input)?, pos: 0, space };
    let out = p.expression()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input after expression");
    }
    Ok(out)
}

/// Parses a curve specification `name` or `name[arg,...]`.
pub fn parse_curve_spec(input: &str) -> Result<TestCurve> {
    let mut p = Parser { toks: lex(input)?, pos: 0, space: None };
    let Some(Tok::Ident(name)) = p.next() else {
        return Err(Error::Parse { col: 1, msg: "expected a curve name".into() });
    };
    let mut args = Vec::new();
    if p.peek() == Some(&Tok::LBrack) {
        p.pos += 1;
        loop {
            match p.peek() {
                Some(Tok::LBrace) => args.push(CurveArg::Set(p.label_set()?)),
                Some(Tok::Int(_)) => args.push(CurveArg::Int(p.int()?)),
                _ => return p.err("expected integer or label set"),
            }
            match p.next() {
                Some(Tok::Comma) => continue,
                Some(Tok::RBrack) => break,
                _ => {
                    p.pos = p.pos.saturating_sub(1);
                    return p.err("expected ',' or ']'");
                }
            }
        }
    }
    if p.pos != p.toks.len() {
        return p.err("trailing input after curve spec");
    }
    catalog(&name, &args)
}

/// Parses a `--param` binding of the form `name=p/q`.
pub fn parse_param_binding(input: &str) -> Result<(String, Rat)> {
    let mut p = Parser { toks: lex(input)?, pos: 0, space: None };
    let Some(Tok::Ident(name)) = p.next() else {
        return Err(Error::Parse { col: 1, msg: "expected a parameter name".into() });
    };
    p.expect(Tok::Eq)?;
    let mut neg = false;
    if p.peek() == Some(&Tok::Minus) {
        p.pos += 1;
        neg = true;
    }
    let v = p.rational()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input after parameter binding");
    }
    Ok((name, if neg { -v } else { v }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn pointed(g: u32, n: u32) -> Option<SpaceId> {
        Some(SpaceId::pointed(g, n).unwrap())
    }

    #[test]
    fn parses_gen_terms() {
        let a = parse_class("13*L + psi[2] - 2*d_irr - 3*d[1:{1,2}]", pointed(5, 2)).unwrap();
        assert_eq!(a.coefficient_of(&Gen::Lambda), int(13).into());
        assert_eq!(a.coefficient_of(&Gen::Psi(2)), int(1).into());
        assert_eq!(a.coefficient_of(&Gen::DeltaIrr), int(-2).into());
        assert_eq!(a.coefficient_of(&Gen::boundary_pointed(1, &[1, 2])), int(-3).into());
    }

    #[test]
    fn parses_rational_and_param_coeffs() {
        let a = parse_class("3/2*L - b5*d[5]", Some(SpaceId::base(10).unwrap())).unwrap();
        assert_eq!(a.coefficient_of(&Gen::Lambda), rat(3, 2).into());
        assert_eq!(a.coefficient_of(&Gen::DeltaBase(5)), -Coefficient::param("b5"));
        let b = parse_class("2*b5*d[5]", Some(SpaceId::base(10).unwrap())).unwrap();
        assert_eq!(
            b.coefficient_of(&Gen::DeltaBase(5)),
            Coefficient::param_scaled("b5", int(2))
        );
    }

    #[test]
    fn canonicalizes_raw_tokens() {
        // d[6] on Mbar_7 is the mirror of d[1]
        let a = parse_class("d[6]", Some(SpaceId::base(7).unwrap())).unwrap();
        assert_eq!(a.coefficient_of(&Gen::DeltaBase(1)), int(1).into());
    }

    #[test]
    fn display_round_trips() {
        let k10 = crate::registry::k3_class_g10();
        let text = k10.to_string();
        let back = parse_class(&text, Some(SpaceId::base(10).unwrap())).unwrap();
        assert_eq!(back, k10);
        let k = crate::registry::canonical_class(&SpaceId::symmetric(9, 9).unwrap());
        let back = parse_class(&k.to_string(), Some(SpaceId::symmetric(9, 9).unwrap())).unwrap();
        assert_eq!(back, k);
    }

    #[test]
    fn pullback_operators() {
        let a = parse_class("phi*(bn[11])", pointed(11, 11)).unwrap();
        assert_eq!(a.space, SpaceId::pointed(11, 11).unwrap());
        assert_eq!(a.coefficient_of(&Gen::Lambda), int(14).into());
        let b = parse_class("pi*(Dtilde[5])", pointed(5, 5)).unwrap();
        assert_eq!(b, crate::registry::logan_class(5).unwrap());
        // nested: pi* of the symmetric pullback of a base class
        let c = parse_class("pi*(phi*(bn[5]))", pointed(5, 5)).unwrap();
        let d = parse_class("phi*(bn[5])", pointed(5, 5)).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn named_classes_without_context() {
        assert!(parse_class("K3class10", None).is_ok());
        assert!(parse_class("bn[11] - 2*bn11", None).unwrap().is_zero());
        assert!(matches!(parse_class("L", None), Err(Error::Parse { .. })));
    }

    #[test]
    fn parse_errors_carry_columns() {
        match parse_class("13*L + ?", Some(SpaceId::base(3).unwrap())) {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 8),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_class("13*", Some(SpaceId::base(3).unwrap())).is_err());
        assert!(parse_class("L L", Some(SpaceId::base(3).unwrap())).is_err());
    }

    #[test]
    fn curve_specs() {
        assert_eq!(parse_curve_spec("g9_pencil").unwrap().name, "g9_pencil");
        assert_eq!(parse_curve_spec("r_T[{1,2}]").unwrap().name, "r_T");
        assert_eq!(parse_curve_spec("gamma_ij[5,1,2]").unwrap().name, "gamma_ij");
        assert!(parse_curve_spec("r_T[1]").is_err());
        assert!(parse_curve_spec("lefschetz_k3[10]").is_ok());
    }

    #[test]
    fn param_bindings() {
        assert_eq!(parse_param_binding("b5=6").unwrap(), ("b5".into(), int(6)));
        assert_eq!(parse_param_binding("b5=13/2").unwrap(), ("b5".into(), rat(13, 2)));
        assert_eq!(parse_param_binding("b5=-2").unwrap(), ("b5".into(), int(-2)));
        assert!(parse_param_binding("=6").is_err());
    }
}
