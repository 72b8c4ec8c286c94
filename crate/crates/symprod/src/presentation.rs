//! Presentations of graded-commutative algebras and CDGAs, plus the small
//! textual input language they are read from.
//!
//! Grammar (whitespace-insensitive, `#` starts a line comment):
//!
//! ```text
//! file   := stmt* ;
//! stmt   := "gen" (IDENT ":" INT)+ ";"
//!         | "rel" poly ("," poly)* ";"
//!         | "d" IDENT "=" poly ";"
//! poly   := ["-"] term (("+"|"-") term)* ;
//! term   := [coef "*"?] factor ("*"? factor)* ;
//! coef   := INT ["/" INT] ;
//! factor := IDENT ["^" INT] ;
//! ```
//!
//! `gen x:2 y:3; d y = x^2;` is the free CDGA on an even and an odd
//! generator with dy = x^2. Generators without a `d` statement have zero
//! differential. Statement order is irrelevant; generators may be used
//! before their `gen` statement appears.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{Element, GenSet, Generator};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// A finitely presented graded-commutative algebra over Q, optionally with
/// a differential given on generators: Λ(generators)/(relations).
#[derive(Debug, Clone)]
pub struct Presentation {
    pub gens: GenSet,
    pub relations: Vec<Element>,
    /// Generator index -> image of the differential (homogeneous, degree
    /// one above the generator). Absent indices map to zero.
    pub differential: BTreeMap<usize, Element>,
}

impl Presentation {
    /// Validates degrees and homogeneity. Zero differential images are
    /// dropped; zero relations are rejected.
    pub fn new(
        gens: GenSet,
        relations: Vec<Element>,
        differential: BTreeMap<usize, Element>,
    ) -> Result<Self> {
        for rel in &relations {
            if rel.is_zero() {
                return Err(Error::Invalid("relation vanishes identically".to_string()));
            }
            match rel.homogeneous_degree(&gens) {
                None => {
                    return Err(Error::Invalid(format!(
                        "relation {} is not homogeneous",
                        rel.display(&gens)
                    )))
                }
                Some(d) if d < 2 => {
                    return Err(Error::Invalid(format!(
                        "relation {} has degree {} < 2",
                        rel.display(&gens),
                        d
                    )))
                }
                _ => {}
            }
            // A relation with a linear term would just delete a generator;
            // presentations keep generators and decomposable relations separate.
            if rel
                .terms()
                .any(|(m, _)| m.exps().iter().sum::<u32>() < 2)
            {
                return Err(Error::Invalid(format!(
                    "relation {} has word degree < 2: drop the generator instead",
                    rel.display(&gens)
                )));
            }
        }
        let mut diff = BTreeMap::new();
        for (i, img) in differential {
            if i >= gens.len() {
                return Err(Error::AmbientMismatch);
            }
            if img.is_zero() {
                continue;
            }
            let expected = gens.degree(i) + 1;
            if img.homogeneous_degree(&gens) != Some(expected) {
                return Err(Error::InvalidDifferential(format!(
                    "d({}) = {} is not homogeneous of degree {}",
                    gens.get(i).name,
                    img.display(&gens),
                    expected
                )));
            }
            diff.insert(i, img);
        }
        Ok(Presentation { gens, relations, differential: diff })
    }

    /// A free graded-commutative algebra, no relations, zero differential.
    pub fn free(gens: GenSet) -> Self {
        Presentation { gens, relations: Vec::new(), differential: BTreeMap::new() }
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn has_differential(&self) -> bool {
        !self.differential.is_empty()
    }

    /// Image of generator `i` under the differential (zero if unset).
    pub fn d_of(&self, i: usize) -> Element {
        self.differential.get(&i).cloned().unwrap_or_else(Element::zero)
    }
}

/// Parses the textual language into a validated [`Presentation`].
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let toks = lex(text)?;
    Parser::new(toks).parse()
}

#[derive(Debug, Clone, PartialEq)]
enum TokKind {
    Ident(String),
    Int(String),
    Colon,
    Semi,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Eq,
}

impl TokKind {
    fn describe(&self) -> String {
        match self {
            TokKind::Ident(s) => format!("identifier `{}`", s),
            TokKind::Int(s) => format!("integer `{}`", s),
            TokKind::Colon => "`:`".to_string(),
            TokKind::Semi => "`;`".to_string(),
            TokKind::Comma => "`,`".to_string(),
            TokKind::Plus => "`+`".to_string(),
            TokKind::Minus => "`-`".to_string(),
            TokKind::Star => "`*`".to_string(),
            TokKind::Caret => "`^`".to_string(),
            TokKind::Slash => "`/`".to_string(),
            TokKind::Eq => "`=`".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
struct Tok {
    kind: TokKind,
    line: usize,
    col: usize,
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&c2) = chars.peek() {
                bump(&mut chars);
                if c2 == '\n' {
                    break;
                }
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c2) = chars.peek() {
                if c2.is_ascii_alphanumeric() || c2 == '_' {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            toks.push(Tok { kind: TokKind::Ident(s), line: tl, col: tc });
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c2) = chars.peek() {
                if c2.is_ascii_digit() {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            toks.push(Tok { kind: TokKind::Int(s), line: tl, col: tc });
            continue;
        }
        let kind = match c {
            ':' => TokKind::Colon,
            ';' => TokKind::Semi,
            ',' => TokKind::Comma,
            '+' => TokKind::Plus,
            '-' => TokKind::Minus,
            '*' => TokKind::Star,
            '^' => TokKind::Caret,
            '/' => TokKind::Slash,
            '=' => TokKind::Eq,
            _ => return Err(parse_err(tl, tc, format!("unexpected character `{}`", c))),
        };
        bump(&mut chars);
        toks.push(Tok { kind, line: tl, col: tc });
    }
    Ok(toks)
}

const KEYWORDS: [&str; 3] = ["gen", "rel", "d"];

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn new(toks: Vec<Tok>) -> Self {
        Parser { toks, pos: 0 }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_pos(&self) -> (usize, usize) {
        self.toks.last().map_or((1, 1), |t| (t.line, t.col + 1))
    }

    fn expect(&mut self, kind: &TokKind, what: &str) -> Result<Tok> {
        match self.next() {
            Some(t) if &t.kind == kind => Ok(t),
            Some(t) => Err(parse_err(
                t.line,
                t.col,
                format!("expected {}, found {}", what, t.kind.describe()),
            )),
            None => {
                let (l, c) = self.end_pos();
                Err(parse_err(l, c, format!("expected {}, found end of input", what)))
            }
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<(BigInt, usize, usize)> {
        match self.next() {
            Some(Tok { kind: TokKind::Int(s), line, col }) => {
                let v = s.parse::<BigInt>().map_err(|_| {
                    parse_err(line, col, format!("invalid integer `{}`", s))
                })?;
                Ok((v, line, col))
            }
            Some(t) => Err(parse_err(
                t.line,
                t.col,
                format!("expected {}, found {}", what, t.kind.describe()),
            )),
            None => {
                let (l, c) = self.end_pos();
                Err(parse_err(l, c, format!("expected {}, found end of input", what)))
            }
        }
    }

    fn parse(mut self) -> Result<Presentation> {
        // first pass: collect generator declarations so statement order
        // does not matter
        let mut decls: Vec<(String, usize, usize, usize)> = Vec::new();
        {
            let mut i = 0;
            while i < self.toks.len() {
                if let TokKind::Ident(s) = &self.toks[i].kind {
                    if s == "gen" {
                        let mut j = i + 1;
                        while j < self.toks.len() && self.toks[j].kind != TokKind::Semi {
                            if let TokKind::Ident(name) = &self.toks[j].kind {
                                let t = &self.toks[j];
                                if KEYWORDS.contains(&name.as_str()) {
                                    return Err(parse_err(
                                        t.line,
                                        t.col,
                                        format!("`{}` is a reserved word", name),
                                    ));
                                }
                                if j + 2 < self.toks.len()
                                    && self.toks[j + 1].kind == TokKind::Colon
                                {
                                    if let TokKind::Int(deg) = &self.toks[j + 2].kind {
                                        let degree: usize =
                                            deg.parse().map_err(|_| {
                                                parse_err(t.line, t.col, "degree out of range")
                                            })?;
                                        if degree == 0 {
                                            // a degree-0 generator breaks connectedness
                                            return Err(Error::NotConnected { beta0: 2 });
                                        }
                                        if decls.iter().any(|(n, _, _, _)| n == name) {
                                            return Err(parse_err(
                                                t.line,
                                                t.col,
                                                format!("duplicate generator name {}", name),
                                            ));
                                        }
                                        decls.push((name.clone(), degree, t.line, t.col));
                                    }
                                }
                            }
                            j += 1;
                        }
                    }
                }
                i += 1;
            }
        }
        let gens = GenSet::new(
            decls
                .iter()
                .map(|(n, d, _, _)| Generator::new(n.clone(), *d))
                .collect(),
        )?;

        let mut relations: Vec<Element> = Vec::new();
        let mut differential: BTreeMap<usize, Element> = BTreeMap::new();

        while let Some(t) = self.next() {
            let (line, col) = (t.line, t.col);
            match &t.kind {
                TokKind::Ident(kw) if kw == "gen" => {
                    // validated in the first pass; re-walk for syntax
                    let mut any = false;
                    loop {
                        match self.peek() {
                            Some(Tok { kind: TokKind::Semi, .. }) => {
                                self.next();
                                break;
                            }
                            Some(Tok { kind: TokKind::Ident(_), .. }) => {
                                self.next();
                                self.expect(&TokKind::Colon, "`:`")?;
                                self.expect_int("a degree")?;
                                any = true;
                            }
                            Some(t2) => {
                                return Err(parse_err(
                                    t2.line,
                                    t2.col,
                                    format!(
                                        "expected a generator declaration, found {}",
                                        t2.kind.describe()
                                    ),
                                ))
                            }
                            None => {
                                let (l, c) = self.end_pos();
                                return Err(parse_err(l, c, "unterminated `gen` statement"));
                            }
                        }
                    }
                    if !any {
                        return Err(parse_err(line, col, "empty `gen` statement"));
                    }
                }
                TokKind::Ident(kw) if kw == "rel" => loop {
                    let (rel, rl, rc) = self.parse_poly(&gens)?;
                    if rel.is_zero() {
                        return Err(parse_err(rl, rc, "relation vanishes identically"));
                    }
                    match rel.homogeneous_degree(&gens) {
                        None => {
                            return Err(parse_err(
                                rl,
                                rc,
                                format!("relation {} is not homogeneous", rel.display(&gens)),
                            ))
                        }
                        Some(d) if d < 2 => {
                            return Err(parse_err(
                                rl,
                                rc,
                                format!(
                                    "relation {} has degree {} < 2",
                                    rel.display(&gens),
                                    d
                                ),
                            ))
                        }
                        _ => {}
                    }
                    relations.push(rel);
                    match self.next() {
                        Some(Tok { kind: TokKind::Comma, .. }) => continue,
                        Some(Tok { kind: TokKind::Semi, .. }) => break,
                        Some(t2) => {
                            return Err(parse_err(
                                t2.line,
                                t2.col,
                                format!("expected `,` or `;`, found {}", t2.kind.describe()),
                            ))
                        }
                        None => {
                            let (l, c) = self.end_pos();
                            return Err(parse_err(l, c, "unterminated `rel` statement"));
                        }
                    }
                },
                TokKind::Ident(kw) if kw == "d" => {
                    let name_tok = self.next().ok_or_else(|| {
                        let (l, c) = self.end_pos();
                        parse_err(l, c, "expected a generator name after `d`")
                    })?;
                    let TokKind::Ident(name) = &name_tok.kind else {
                        return Err(parse_err(
                            name_tok.line,
                            name_tok.col,
                            format!(
                                "expected a generator name after `d`, found {}",
                                name_tok.kind.describe()
                            ),
                        ));
                    };
                    let idx = gens.index_of(name).ok_or_else(|| {
                        parse_err(
                            name_tok.line,
                            name_tok.col,
                            format!("unknown generator {}", name),
                        )
                    })?;
                    if differential.contains_key(&idx) {
                        return Err(parse_err(
                            name_tok.line,
                            name_tok.col,
                            format!("duplicate differential for {}", name),
                        ));
                    }
                    self.expect(&TokKind::Eq, "`=`")?;
                    let (img, il, ic) = self.parse_poly(&gens)?;
                    self.expect(&TokKind::Semi, "`;`")?;
                    if !img.is_zero() {
                        let expected = gens.degree(idx) + 1;
                        if img.homogeneous_degree(&gens) != Some(expected) {
                            return Err(parse_err(
                                il,
                                ic,
                                format!(
                                    "d({}) = {} is not homogeneous of degree {}",
                                    name,
                                    img.display(&gens),
                                    expected
                                ),
                            ));
                        }
                        differential.insert(idx, img);
                    }
                }
                other => {
                    return Err(parse_err(
                        line,
                        col,
                        format!(
                            "expected `gen`, `rel` or `d` at statement start, found {}",
                            other.describe()
                        ),
                    ))
                }
            }
        }

        Presentation::new(gens, relations, differential)
    }

    /// poly := ["-"] term (("+"|"-") term)* ; returns the element and the
    /// position of its first token.
    fn parse_poly(&mut self, gens: &GenSet) -> Result<(Element, usize, usize)> {
        let (start_line, start_col) = match self.peek() {
            Some(t) => (t.line, t.col),
            None => {
                let (l, c) = self.end_pos();
                return Err(parse_err(l, c, "expected a polynomial, found end of input"));
            }
        };
        let mut negate = false;
        if matches!(self.peek(), Some(Tok { kind: TokKind::Minus, .. })) {
            self.next();
            negate = true;
        }
        let mut poly = self.parse_term(gens, negate)?;
        loop {
            match self.peek() {
                Some(Tok { kind: TokKind::Plus, .. }) => {
                    self.next();
                    let t = self.parse_term(gens, false)?;
                    poly = poly.add(&t);
                }
                Some(Tok { kind: TokKind::Minus, .. }) => {
                    self.next();
                    let t = self.parse_term(gens, true)?;
                    poly = poly.add(&t);
                }
                _ => break,
            }
        }
        Ok((poly, start_line, start_col))
    }

    /// term := [coef "*"?] factor ("*"? factor)* ;
    fn parse_term(&mut self, gens: &GenSet, negate: bool) -> Result<Element> {
        let mut coeff = scalar::one();
        if let Some(Tok { kind: TokKind::Int(_), .. }) = self.peek() {
            let (num, _, _) = self.expect_int("a coefficient")?;
            let mut den = BigInt::from(1);
            if matches!(self.peek(), Some(Tok { kind: TokKind::Slash, .. })) {
                self.next();
                let (d, dl, dc) = self.expect_int("a denominator")?;
                if d.is_zero() {
                    return Err(parse_err(dl, dc, "zero denominator"));
                }
                den = d;
            }
            coeff = Scalar::new(num, den);
            if matches!(self.peek(), Some(Tok { kind: TokKind::Star, .. })) {
                self.next();
            }
        }
        if negate {
            coeff = -coeff;
        }

        let mut elem = Element::from_monomial(crate::algebra::Monomial::unit(gens), coeff);
        let mut nfactors = 0usize;
        loop {
            match self.peek() {
                Some(Tok { kind: TokKind::Ident(_), .. }) => {
                    let t = self.next().unwrap();
                    let TokKind::Ident(name) = &t.kind else { unreachable!() };
                    let idx = gens.index_of(name).ok_or_else(|| {
                        parse_err(t.line, t.col, format!("unknown generator {}", name))
                    })?;
                    let mut exp: u32 = 1;
                    if matches!(self.peek(), Some(Tok { kind: TokKind::Caret, .. })) {
                        self.next();
                        let (e, el, ec) = self.expect_int("an exponent")?;
                        exp = u32::try_from(&e)
                            .map_err(|_| parse_err(el, ec, "exponent out of range"))?;
                    }
                    // odd squares vanish inside the product
                    elem = elem.mul(&Element::generator(gens, idx).pow(exp, gens), gens);
                    nfactors += 1;
                    if matches!(self.peek(), Some(Tok { kind: TokKind::Star, .. })) {
                        self.next();
                    }
                }
                _ => break,
            }
        }
        if nfactors == 0 {
            let (l, c) = match self.peek() {
                Some(t) => (t.line, t.col),
                None => self.end_pos(),
            };
            return Err(parse_err(l, c, "expected a generator in term"));
        }
        Ok(elem)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;
    use crate::scalar::{from_frac, from_int};

    #[test]
    fn parses_single_relation() {
        let p = parse_presentation("gen x:2; rel x^2;").unwrap();
        assert_eq!(p.gens.len(), 1);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].display(&p.gens), "x^2");
        assert!(!p.has_differential());
    }

    #[test]
    fn parses_differential() {
        let p = parse_presentation("gen x:2 y:3; d y = x^2;").unwrap();
        assert_eq!(p.gens.len(), 2);
        assert!(p.relations.is_empty());
        let yi = p.gens.index_of("y").unwrap();
        assert_eq!(p.d_of(yi).display(&p.gens), "x^2");
        let xi = p.gens.index_of("x").unwrap();
        assert!(p.d_of(xi).is_zero());
    }

    #[test]
    fn rejects_low_degree_relation() {
        let err = parse_presentation("gen x:2; rel x;").unwrap_err();
        assert!(err.to_string().contains("degree"), "{}", err);
    }

    #[test]
    fn rejects_unknown_generator_with_position() {
        let err = parse_presentation("gen x:2;\nrel x*z;").unwrap_err();
        match err {
            Error::Parse { line, col, msg } => {
                assert_eq!(line, 2);
                assert_eq!(col, 7);
                assert!(msg.contains("unknown generator z"));
            }
            other => panic!("expected parse error, got {}", other),
        }
    }

    #[test]
    fn rejects_degree_zero_generator() {
        assert!(parse_presentation("gen c:0;").is_err());
    }

    #[test]
    fn rejects_inhomogeneous_relation() {
        let err = parse_presentation("gen x:2 y:3; rel x^3 + y;").unwrap_err();
        assert!(err.to_string().contains("not homogeneous"), "{}", err);
    }

    #[test]
    fn rejects_wrong_differential_degree() {
        let err = parse_presentation("gen x:2 y:3; d y = x;").unwrap_err();
        assert!(err.to_string().contains("degree 4"), "{}", err);
    }

    #[test]
    fn comments_and_whitespace() {
        let text = "# a model\n  gen x:2   # even generator\n      y:5;\nd y = x^3;  # top relation\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.gens.len(), 2);
        let yi = p.gens.index_of("y").unwrap();
        assert_eq!(p.d_of(yi).display(&p.gens), "x^3");
    }

    #[test]
    fn coefficients_and_signs() {
        let p = parse_presentation("gen x:2 y:4; rel 2*x*y - 1/2 x^3, y^2;").unwrap();
        assert_eq!(p.relations.len(), 2);
        let r = &p.relations[0];
        let xy = Monomial::from_exps(&p.gens, vec![1, 1]).unwrap();
        let x3 = Monomial::from_exps(&p.gens, vec![3, 0]).unwrap();
        assert_eq!(r.coeff(&xy), from_int(2));
        assert_eq!(r.coeff(&x3), from_frac(-1, 2));
    }

    #[test]
    fn leading_minus_and_juxtaposition() {
        let p = parse_presentation("gen x:2; rel -x^2 + 3x 2;").unwrap_err();
        // `3x 2` has a stray integer after the factor
        assert!(matches!(p, Error::Parse { .. }));
        let p = parse_presentation("gen x:2; rel -x^2 + 3x^2;").unwrap();
        let x2 = Monomial::from_exps(&p.gens, vec![2]).unwrap();
        assert_eq!(p.relations[0].coeff(&x2), from_int(2));
    }

    #[test]
    fn odd_square_term_vanishes() {
        let err = parse_presentation("gen y:3; rel y^2;").unwrap_err();
        assert!(err.to_string().contains("vanishes"), "{}", err);
    }

    #[test]
    fn duplicate_differential_rejected() {
        let err = parse_presentation("gen x:2 y:3; d y = x^2; d y = x^2;").unwrap_err();
        assert!(err.to_string().contains("duplicate differential"), "{}", err);
    }

    #[test]
    fn statement_order_is_free() {
        let p = parse_presentation("d y = x^2; gen x:2 y:3;").unwrap();
        assert!(p.has_differential());
    }

    #[test]
    fn zero_differential_image_dropped() {
        let p = parse_presentation("gen x:2 y:3; d y = x^2 - x^2;").unwrap();
        assert!(!p.has_differential());
    }

    #[test]
    fn rejects_zero_denominator() {
        let err = parse_presentation("gen x:2; rel 1/0 x^2;").unwrap_err();
        assert!(err.to_string().contains("zero denominator"), "{}", err);
    }
}
