//! Line-oriented input formats: presentation files, point specs, algebra
//! files and hom specs.

use std::fmt;

use num_bigint::BigInt;

use crate::lifting::{AlgebraElement, NilpotentAlgebra, SquareZeroData};
use crate::poly::{Coefficient, FieldSpec, Monomial, PolyRing, Polynomial};
use crate::smoothness::{Presentation, SmoothnessError};

/// A syntax or validation error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

fn lex(src: &str, col0: usize, line: usize) -> Result<Lexer, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            toks.push((Tok::Num(s.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            toks.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(ParseError::new(
                line,
                col,
                format!("unexpected character `{c}`"),
            ));
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end: col0 + chars.len(),
    })
}

/// Recursive-descent parser for polynomial expressions over fixed names.
struct ExprParser<'a> {
    lx: Lexer,
    line: usize,
    ring: PolyRing,
    names: &'a [String],
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.lx.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.lx
            .toks
            .get(self.lx.pos)
            .map_or(self.lx.end, |(_, c)| *c)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col(), msg)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.lx.toks.get(self.lx.pos).map(|(t, _)| t.clone());
        self.lx.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.lx.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_) | Tok::Ident(_) | Tok::Sym('('))
        )
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let col = self.col();
                self.lx.pos += 1;
                let d = self.unary()?;
                let inv = d
                    .constant_value()
                    .ok_or_else(|| ParseError::new(self.line, col, "division by a non-constant"))?
                    .inv()
                    .ok_or_else(|| {
                        ParseError::new(self.line, col, "division by zero in this field")
                    })?;
                acc = acc.scale(&inv);
            } else if self.starts_atom() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.next() {
            Some(Tok::Num(n)) => {
                let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                Ok(base.pow(e))
            }
            _ => {
                self.lx.pos -= 1;
                Err(self.err("expected a nonnegative integer exponent"))
            }
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let col = self.col();
        match self.next() {
            Some(Tok::Num(n)) => Ok(self.ring.constant(self.ring.field.from_bigint(&n))),
            Some(Tok::Ident(id)) => match self.names.iter().position(|v| *v == id) {
                Some(j) => Ok(self.ring.var(j)),
                None => Err(ParseError::new(
                    self.line,
                    col,
                    format!("unknown identifier `{id}`"),
                )),
            },
            Some(Tok::Sym('(')) => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            Some(Tok::Sym(c)) => Err(ParseError::new(self.line, col, format!("unexpected `{c}`"))),
            None => Err(ParseError::new(
                self.line,
                col,
                "unexpected end of expression",
            )),
        }
    }
}

/// Parses `src` as a polynomial in `names` over `field`. `col0` is the
/// column of the first character of `src` within its line.
pub fn parse_polynomial(
    src: &str,
    field: FieldSpec,
    names: &[String],
    line: usize,
    col0: usize,
) -> Result<Polynomial, ParseError> {
    let lx = lex(src, col0, line)?;
    if lx.toks.is_empty() {
        return Err(ParseError::new(line, col0, "empty expression"));
    }
    let mut p = ExprParser {
        lx,
        line,
        ring: PolyRing::new(field, names.len()),
        names,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Splits off the first whitespace-delimited word; returns it, the rest and
/// the rest's 0-based character offset.
fn split_word(line: &str) -> (&str, &str, usize) {
    let trimmed = line.trim_start();
    let lead = line.len() - trimmed.len();
    let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
    let rest = &trimmed[end..];
    let rest_trim = rest.trim_start();
    let off = lead + end + (rest.len() - rest_trim.len());
    (&trimmed[..end], rest_trim, line[..off].chars().count())
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn parse_field(rest: &str, line: usize, col: usize) -> Result<FieldSpec, ParseError> {
    let words: Vec<&str> = rest.split_whitespace().collect();
    match words.as_slice() {
        ["QQ"] => Ok(FieldSpec::Rationals),
        ["GF", p] => {
            let p: u64 = p
                .parse()
                .map_err(|_| ParseError::new(line, col, format!("bad modulus `{p}`")))?;
            FieldSpec::prime(p).map_err(|e| ParseError::new(line, col, e.to_string()))
        }
        _ => Err(ParseError::new(line, col, "expected `QQ` or `GF <prime>`")),
    }
}

fn parse_names(rest: &str, line: usize, col: usize) -> Result<Vec<String>, ParseError> {
    let mut names: Vec<String> = Vec::new();
    for w in rest.split_whitespace() {
        let ok = w
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && w.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(ParseError::new(
                line,
                col,
                format!("`{w}` is not an identifier"),
            ));
        }
        if names.iter().any(|n| n == w) {
            return Err(ParseError::new(
                line,
                col,
                format!("duplicate variable `{w}`"),
            ));
        }
        names.push(w.to_string());
    }
    Ok(names)
}

/// Parses the `field` / `vars` / `rel` format; `name` is optional and `#`
/// starts a comment.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut field = None;
    let mut vars: Option<Vec<String>> = None;
    let mut name = None;
    let mut rels = Vec::new();
    let mut last_line = 1;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let body = strip_comment(raw);
        let (word, rest, off) = split_word(body);
        let col = off + 1;
        match word {
            "" => {}
            "field" if field.is_some() => {
                return Err(ParseError::new(line, 1, "repeated `field` line"))
            }
            "field" => field = Some(parse_field(rest, line, col)?),
            "vars" if vars.is_some() => {
                return Err(ParseError::new(line, 1, "repeated `vars` line"))
            }
            "vars" => vars = Some(parse_names(rest, line, col)?),
            "name" => name = Some(rest.trim().to_string()),
            "rel" => {
                let f = field.ok_or_else(|| ParseError::new(line, 1, "`rel` before `field`"))?;
                let v = vars
                    .as_ref()
                    .ok_or_else(|| ParseError::new(line, 1, "`rel` before `vars`"))?;
                rels.push(parse_polynomial(rest, f, v, line, col)?);
            }
            other => {
                return Err(ParseError::new(
                    line,
                    1,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }
    let field = field.ok_or_else(|| ParseError::new(last_line, 1, "missing `field` line"))?;
    let vars = vars.ok_or_else(|| ParseError::new(last_line, 1, "missing `vars` line"))?;
    if rels.is_empty() {
        return Err(ParseError::new(
            last_line,
            1,
            "at least one `rel` line is required",
        ));
    }
    let pres = Presentation::new(field, vars, rels).map_err(|e| match e {
        SmoothnessError::DuplicateVariable(v) => {
            ParseError::new(1, 1, format!("duplicate variable `{v}`"))
        }
        other => ParseError::new(1, 1, other.to_string()),
    })?;
    Ok(match name {
        Some(n) if !n.is_empty() => pres.with_name(n),
        _ => pres,
    })
}

/// Inverse of [`parse_presentation`].
pub fn print_presentation(pres: &Presentation) -> String {
    let mut out = String::new();
    if let Some(n) = pres.name() {
        out.push_str(&format!("name {n}\n"));
    }
    out.push_str(&format!("field {}\n", pres.field()));
    out.push_str("vars");
    for v in pres.var_names() {
        out.push(' ');
        out.push_str(v);
    }
    out.push('\n');
    if pres.relators().is_empty() {
        out.push_str("rel 0\n");
    }
    for f in pres.relators() {
        out.push_str(&format!("rel {}\n", f.display(pres.var_names())));
    }
    out
}

/// Splits `a=...,b=...` into `(name, expr, column of expr)` triples and
/// checks that each of `names` appears at most once.
fn assignments<'s>(
    spec: &'s str,
    names: &[String],
) -> Result<Vec<(usize, &'s str, usize)>, ParseError> {
    let mut out: Vec<(usize, &str, usize)> = Vec::new();
    let mut offset = 0;
    for part in spec.split(',') {
        let col = offset + 1;
        offset += part.chars().count() + 1;
        if part.trim().is_empty() {
            continue;
        }
        let (lhs, rhs) = part.split_once('=').ok_or_else(|| {
            ParseError::new(
                1,
                col,
                format!("expected `name=value`, found `{}`", part.trim()),
            )
        })?;
        let var = lhs.trim();
        let j = names
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| ParseError::new(1, col, format!("unknown variable `{var}`")))?;
        if out.iter().any(|(k, _, _)| *k == j) {
            return Err(ParseError::new(
                1,
                col,
                format!("variable `{var}` assigned twice"),
            ));
        }
        out.push((j, rhs, col + lhs.chars().count() + 1));
    }
    Ok(out)
}

/// `x=3/5,y=4/5`: every variable exactly once, values in the field.
pub fn parse_point(spec: &str, pres: &Presentation) -> Result<Vec<Coefficient>, ParseError> {
    let mut point: Vec<Option<Coefficient>> = vec![None; pres.nvars()];
    for (j, rhs, col) in assignments(spec, pres.var_names())? {
        let p = parse_polynomial(rhs, pres.field(), &[], 1, col)?;
        point[j] = Some(p.constant_term());
    }
    point
        .into_iter()
        .enumerate()
        .map(|(j, c)| {
            c.ok_or_else(|| {
                ParseError::new(
                    1,
                    1,
                    format!("no value for variable `{}`", pres.var_names()[j]),
                )
            })
        })
        .collect()
}

fn parse_monomials(
    rest: &str,
    field: FieldSpec,
    names: &[String],
    line: usize,
    col: usize,
) -> Result<Vec<Monomial>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for w in rest.split(char::is_whitespace) {
        let here = col + offset;
        offset += w.chars().count() + 1;
        if w.is_empty() {
            continue;
        }
        let p = parse_polynomial(w, field, names, line, here)?;
        match p.terms() {
            [(m, c)] if c.is_one() => out.push(m.clone()),
            _ => {
                return Err(ParseError::new(
                    line,
                    here,
                    format!("`{w}` is not a monomial"),
                ))
            }
        }
    }
    Ok(out)
}

/// `field`, `nilgens`, `forbid` and optional `zideal` lines.
pub fn parse_algebra(text: &str) -> Result<SquareZeroData, ParseError> {
    let mut field = None;
    let mut gens: Option<Vec<String>> = None;
    let mut forbid = Vec::new();
    let mut zideal = Vec::new();
    let mut last_line = 1;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let (word, rest, off) = split_word(strip_comment(raw));
        let col = off + 1;
        let need = |what: &str| -> Result<(FieldSpec, &Vec<String>), ParseError> {
            match (field, gens.as_ref()) {
                (Some(f), Some(g)) => Ok((f, g)),
                _ => Err(ParseError::new(
                    line,
                    1,
                    format!("`{what}` before `field` and `nilgens`"),
                )),
            }
        };
        match word {
            "" => {}
            "field" if field.is_some() => {
                return Err(ParseError::new(line, 1, "repeated `field` line"))
            }
            "field" => field = Some(parse_field(rest, line, col)?),
            "nilgens" if gens.is_some() => {
                return Err(ParseError::new(line, 1, "repeated `nilgens` line"))
            }
            "nilgens" => gens = Some(parse_names(rest, line, col)?),
            "forbid" => {
                let (f, g) = need("forbid")?;
                forbid.extend(parse_monomials(rest, f, g, line, col)?);
            }
            "zideal" => {
                let (f, g) = need("zideal")?;
                let ms = parse_monomials(rest, f, g, line, col)?;
                zideal.push((line, ms));
            }
            other => {
                return Err(ParseError::new(
                    line,
                    1,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }
    let field = field.ok_or_else(|| ParseError::new(last_line, 1, "missing `field` line"))?;
    let gens = gens.ok_or_else(|| ParseError::new(last_line, 1, "missing `nilgens` line"))?;
    let alg = NilpotentAlgebra::new(field, gens.len(), forbid)
        .map_err(|e| ParseError::new(last_line, 1, e.to_string()))?
        .with_names(gens);
    let mut z = Vec::new();
    for (line, ms) in zideal {
        for m in ms {
            // monomials already in the truncation are zero in A
            if let Some(k) = alg.index_of(&m) {
                z.push(k);
            } else if !alg.forbidden().iter().any(|f| f.divides(&m)) {
                return Err(ParseError::new(
                    line,
                    1,
                    "zideal monomial outside the algebra",
                ));
            }
        }
    }
    SquareZeroData::new(alg, z).map_err(|e| ParseError::new(last_line, 1, e.to_string()))
}

/// `x=<expr in the nilgens>,…` for a subset of `names`; missing entries are
/// `None`.
pub fn parse_elements(
    spec: &str,
    names: &[String],
    alg: &NilpotentAlgebra,
) -> Result<Vec<Option<AlgebraElement>>, ParseError> {
    let mut out = vec![None; names.len()];
    for (j, rhs, col) in assignments(spec, names)? {
        let p = parse_polynomial(rhs, alg.field(), alg.names(), 1, col)?;
        out[j] = Some(
            alg.from_polynomial(&p)
                .map_err(|e| ParseError::new(1, col, e.to_string()))?,
        );
    }
    Ok(out)
}
