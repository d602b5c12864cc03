use num::ToPrimitive;

use crate::error::{Error, Result};
use crate::models::{MetricSignature, ModelSpec};
use crate::superpoly::{Parity, Polynomial, Roster, SymbolId};

use super::lexer::{tokenize, Pos, Tok};

const RESERVED: &[&str] = &["anti", "d", "inv"];

struct Parser<'r> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    roster: Option<&'r Roster>,
}

impl<'r> Parser<'r> {
    fn new(src: &str) -> Result<Self> {
        Ok(Parser { toks: tokenize(src)?, at: 0, roster: None })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Pos> {
        let (t, p) = self.bump();
        if t == want {
            Ok(p)
        } else {
            Err(p.error(format!("expected {}, found {}", want.describe(), t.describe())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos)> {
        match self.bump() {
            (Tok::Ident(s), p) => Ok((s, p)),
            (t, p) => Err(p.error(format!("expected {what}, found {}", t.describe()))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Pos> {
        match self.bump() {
            (Tok::Ident(s), p) if s == kw => Ok(p),
            (t, p) => Err(p.error(format!("expected `{kw}`, found {}", t.describe()))),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn integer(&mut self, what: &str) -> Result<(i64, Pos)> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            (Tok::Number(n), p) if n.is_integer() => {
                let v = n.to_integer().to_i64().ok_or_else(|| p.error("integer out of range"))?;
                Ok((if neg { -v } else { v }, p))
            }
            (t, p) => Err(p.error(format!("expected {what}, found {}", t.describe()))),
        }
    }

    fn roster(&self) -> &'r Roster {
        self.roster.expect("expressions are parsed against a roster")
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc += &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary ('*' unary)*
    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let pos = self.pos();
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (n, npos) = self.integer("an exponent")?;
        if n < 0 {
            return Err(npos.error("negative exponent; use inv(name)"));
        }
        if n >= 2 && base.parity() == Some(Parity::Odd) {
            return Err(pos.semantic("odd generator squared"));
        }
        Ok(base.pow(n as u32))
    }

    fn primary(&mut self) -> Result<Polynomial> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Number(n) => {
                self.bump();
                Ok(Polynomial::constant(n))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if name == "inv" {
                    self.bump();
                    self.expect(Tok::LParen)?;
                    let (n, p) = self.ident("a field name")?;
                    self.expect(Tok::RParen)?;
                    let r = self.roster();
                    let id = r.field(&n).map_err(|_| p.semantic(format!("unknown symbol `{n}`")))?;
                    return r.inverse_power(id, 1).map_err(|_| p.semantic(format!("`{n}` is not invertible")));
                }
                let (id, order) = self.atom()?;
                Ok(self.roster().gen(id, order))
            }
            t => Err(pos.error(format!("expected an expression, found {}", t.describe()))),
        }
    }

    // atom := name | anti(name) | d(atom, INT)
    fn atom(&mut self) -> Result<(SymbolId, u32)> {
        let (name, pos) = self.ident("a symbol")?;
        match name.as_str() {
            "anti" => {
                self.expect(Tok::LParen)?;
                let (n, p) = self.ident("a field name")?;
                self.expect(Tok::RParen)?;
                let id = self.roster().antifield(&n).map_err(|_| p.semantic(format!("unknown symbol `anti({n})`")))?;
                Ok((id, 0))
            }
            "d" => {
                self.expect(Tok::LParen)?;
                let (id, order) = self.atom()?;
                self.expect(Tok::Comma)?;
                let (l, lp) = self.integer("a derivative order")?;
                if l < 0 {
                    return Err(lp.error("derivative order must be non-negative"));
                }
                self.expect(Tok::RParen)?;
                Ok((id, order + l as u32))
            }
            _ => {
                let id = self.roster().field(&name).map_err(|_| pos.semantic(format!("unknown symbol `{name}`")))?;
                Ok((id, 0))
            }
        }
    }
}

/// Parses an expression against `roster`.
pub fn parse_expr(roster: &Roster, src: &str) -> Result<Polynomial> {
    let mut p = Parser::new(src)?;
    p.roster = Some(roster);
    let e = p.expr()?;
    match p.bump() {
        (Tok::Eof, _) => Ok(e),
        (t, pos) => Err(pos.error(format!("unexpected {} after expression", t.describe()))),
    }
}

/// Parses a model file:
///
/// ```text
/// model NAME; dim N; metric SIGNS;
/// field NAME ghost INT parity (even|odd) [noanti] [invertible];
/// action { EXPR }
/// ```
///
/// The metric line may be omitted when `dim` is 0.
pub fn parse_model(src: &str) -> Result<ModelSpec> {
    let mut p = Parser::new(src)?;
    p.keyword("model")?;
    let (name, _) = p.ident("a model name")?;
    p.expect(Tok::Semi)?;
    p.keyword("dim")?;
    let (dim, dim_pos) = p.integer("a dimension")?;
    if dim < 0 {
        return Err(dim_pos.error("dimension must be non-negative"));
    }
    p.expect(Tok::Semi)?;
    let mut metric = MetricSignature::euclidean(0);
    let mut metric_pos = dim_pos;
    if p.at_keyword("metric") {
        metric_pos = p.bump().1;
        let mut signs = Vec::new();
        loop {
            match p.peek() {
                Tok::Plus => signs.push(1),
                Tok::Minus => signs.push(-1),
                _ => break,
            }
            p.bump();
        }
        metric = MetricSignature::new(signs)?;
        p.expect(Tok::Semi)?;
    }
    if metric.dim() != dim as usize {
        return Err(metric_pos.semantic(format!("metric has {} signs but dim is {dim}", metric.dim())));
    }
    let mut roster = Roster::new();
    while p.at_keyword("field") {
        p.bump();
        let (fname, fpos) = p.ident("a field name")?;
        if RESERVED.contains(&fname.as_str()) {
            return Err(fpos.semantic(format!("`{fname}` is reserved")));
        }
        p.keyword("ghost")?;
        let (ghost, gpos) = p.integer("a ghost number")?;
        let ghost = i32::try_from(ghost).map_err(|_| gpos.error("ghost number out of range"))?;
        p.keyword("parity")?;
        let parity = match p.ident("`even` or `odd`")? {
            (s, _) if s == "even" => Parity::Even,
            (s, _) if s == "odd" => Parity::Odd,
            (s, pp) => return Err(pp.error(format!("expected `even` or `odd`, found `{s}`"))),
        };
        let (mut anti, mut invertible) = (true, false);
        loop {
            if p.at_keyword("noanti") {
                p.bump();
                anti = false;
            } else if p.at_keyword("invertible") {
                p.bump();
                invertible = true;
            } else {
                break;
            }
        }
        p.expect(Tok::Semi)?;
        roster.add_field(&fname, ghost, parity, anti, invertible).map_err(|e| match e {
            Error::Semantic(m) => fpos.semantic(m),
            other => other,
        })?;
    }
    let apos = p.keyword("action")?;
    p.expect(Tok::LBrace)?;
    let action = {
        let mut q = Parser { toks: std::mem::take(&mut p.toks), at: p.at, roster: Some(&roster) };
        let e = q.expr()?;
        q.expect(Tok::RBrace)?;
        if *q.peek() == Tok::Semi {
            q.bump();
        }
        let (t, pos) = q.bump();
        if t != Tok::Eof {
            return Err(pos.error(format!("unexpected {} after the action", t.describe())));
        }
        e
    };
    if action.is_zero() {
        return Err(apos.semantic("the action is zero"));
    }
    ModelSpec::new(&name, metric, roster, action).map_err(|e| match e {
        Error::Semantic(m) | Error::Inhomogeneous(m) => apos.semantic(m),
        other => other,
    })
}
