//! The text format.
//!
//! ```text
//! category I2 { objects a b; mor ab: a -> b; mor ba: b -> a; comp ba.ab = id_a; comp ab.ba = id_b; }
//! functor c: I2 -> PT { a |-> p; b |-> p; ab |-> id_p; ba |-> id_p; }
//! nat t: F => G { a: g; }
//! fraction fr: A -/-> B { apex P; w = W; f = F; }
//! cell c: fr1 => fr2 { apex Q; v1 = V1; v2 = V2; alpha = AL; beta = BE; }
//! ```
//!
//! Identities are implicit and named `id_x`. Every composite of two
//! non-identity morphisms must be listed. Names that are not made of
//! letters, digits, `_`, `'` and `#` are written in double quotes. `#`
//! followed by a space starts a comment.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{CategoryBuilder, FinCategory, Functor, MorId, NatTransf, ObjId};
use crate::fractions::{CellDiagram, Fraction};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 10] = ["-/->", "|->", "->", "=>", "{", "}", ";", ":", "=", "."];

pub(crate) fn is_bare(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_bare_char)
}

fn is_bare_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '#')
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (li, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, col) = (li + 1, i + 1);
            if c.is_whitespace() {
                i += 1;
            } else if c == '#' && chars.get(i + 1).is_none_or(|n| n.is_whitespace()) {
                break;
            } else if c == '"' {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(Error::Parse { line, col, msg: "unterminated string".into() }),
                        Some('"') => break,
                        Some('\\') if i + 1 < chars.len() => {
                            s.push(chars[i + 1]);
                            i += 2;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                i += 1;
                out.push(Token { tok: Tok::Name(s), line, col });
            } else if is_bare_char(c) {
                let start = i;
                while i < chars.len() && is_bare_char(chars[i]) {
                    i += 1;
                }
                out.push(Token { tok: Tok::Name(chars[start..i].iter().collect()), line, col });
            } else {
                let rest: String = chars[i..].iter().collect();
                let sym = SYMBOLS
                    .iter()
                    .find(|s| rest.starts_with(*s))
                    .ok_or_else(|| Error::Parse { line, col, msg: format!("unexpected character `{c}`") })?;
                i += sym.chars().count();
                out.push(Token { tok: Tok::Sym(sym), line, col });
            }
        }
    }
    Ok(out)
}

/// A declared value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Category(Arc<FinCategory>),
    Functor(Functor),
    Nat(NatTransf),
    Fraction(Fraction),
    Cell(Box<CellDiagram>),
}

impl Item {
    pub fn kind(&self) -> &'static str {
        match self {
            Item::Category(_) => "category",
            Item::Functor(_) => "functor",
            Item::Nat(_) => "nat",
            Item::Fraction(_) => "fraction",
            Item::Cell(_) => "cell",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub name: String,
    pub item: Item,
}

/// Named declarations in file order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub decls: Vec<Decl>,
    index: HashMap<String, usize>,
}

impl Document {
    pub fn get(&self, name: &str) -> Option<&Item> {
        self.index.get(name).map(|&i| &self.decls[i].item)
    }

    fn lookup(&self, name: &str, kind: &'static str) -> Result<&Item> {
        let item = self.get(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
        if item.kind() != kind {
            return Err(Error::UnknownName(format!("{name} (a {}, expected a {kind})", item.kind())));
        }
        Ok(item)
    }

    pub fn category(&self, name: &str) -> Result<&Arc<FinCategory>> {
        match self.lookup(name, "category")? {
            Item::Category(c) => Ok(c),
            _ => unreachable!(),
        }
    }

    pub fn functor(&self, name: &str) -> Result<&Functor> {
        match self.lookup(name, "functor")? {
            Item::Functor(f) => Ok(f),
            _ => unreachable!(),
        }
    }

    pub fn nat(&self, name: &str) -> Result<&NatTransf> {
        match self.lookup(name, "nat")? {
            Item::Nat(t) => Ok(t),
            _ => unreachable!(),
        }
    }

    pub fn fraction(&self, name: &str) -> Result<&Fraction> {
        match self.lookup(name, "fraction")? {
            Item::Fraction(f) => Ok(f),
            _ => unreachable!(),
        }
    }

    pub fn cell(&self, name: &str) -> Result<&CellDiagram> {
        match self.lookup(name, "cell")? {
            Item::Cell(c) => Ok(c),
            _ => unreachable!(),
        }
    }

    pub fn push(&mut self, name: String, item: Item) -> Result<()> {
        if self.index.contains_key(&name) {
            return Err(Error::UnknownName(format!("{name} is declared twice")));
        }
        self.index.insert(name.clone(), self.decls.len());
        self.decls.push(Decl { name, item });
        Ok(())
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    doc: Document,
}

impl Parser {
    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or(self.toks.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Parse { line, col, msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn name(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Name(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(Tok::Sym(s)) => self.err(format!("expected a name, found `{s}`")),
            None => self.err("expected a name, found end of file"),
        }
    }

    fn sym(&mut self, s: &'static str) -> Result<()> {
        match self.peek() {
            Some(Tok::Sym(t)) if *t == s => {
                self.pos += 1;
                Ok(())
            }
            Some(Tok::Sym(t)) => self.err(format!("expected `{s}`, found `{t}`")),
            Some(Tok::Name(t)) => self.err(format!("expected `{s}`, found `{t}`")),
            None => self.err(format!("expected `{s}`, found end of file")),
        }
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(t)) if *t == s)
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let n = self.name()?;
        if n != kw {
            self.pos -= 1;
            return self.err(format!("expected `{kw}`, found `{n}`"));
        }
        Ok(())
    }

    /// Runs `f`, attaching the current position to any kernel error.
    fn at<T>(&self, pos: (usize, usize), r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            e => Error::Parse { line: pos.0, col: pos.1, msg: e.to_string() },
        })
    }

    fn document(mut self) -> Result<Document> {
        while self.peek().is_some() {
            let pos = self.here();
            let kw = self.name()?;
            let name_pos = self.here();
            let name = self.name()?;
            let item = match kw.as_str() {
                "category" => Item::Category(self.category(&name)?),
                "functor" => Item::Functor(self.functor()?),
                "nat" => Item::Nat(self.nat()?),
                "fraction" => Item::Fraction(self.fraction()?),
                "cell" => Item::Cell(Box::new(self.cell()?)),
                _ => {
                    return Err(Error::Parse {
                        line: pos.0,
                        col: pos.1,
                        msg: format!("unknown declaration `{kw}`"),
                    })
                }
            };
            let r = self.doc.push(name, item);
            self.at(name_pos, r)?;
        }
        Ok(self.doc)
    }

    fn category(&mut self, name: &str) -> Result<Arc<FinCategory>> {
        let mut b = CategoryBuilder::new(name);
        self.sym("{")?;
        while !self.at_sym("}") {
            let pos = self.here();
            let kw = self.name()?;
            match kw.as_str() {
                "objects" => {
                    while !self.at_sym(";") {
                        let p = self.here();
                        let o = self.name()?;
                        let r = b.object(&o);
                        self.at(p, r)?;
                    }
                }
                "mor" => {
                    let m = self.name()?;
                    self.sym(":")?;
                    let x = self.name()?;
                    self.sym("->")?;
                    let y = self.name()?;
                    let r = b.morphism(&m, &x, &y);
                    self.at(pos, r)?;
                }
                "comp" => {
                    let g = self.name()?;
                    self.sym(".")?;
                    let f = self.name()?;
                    self.sym("=")?;
                    let h = self.name()?;
                    let r = b.comp(&g, &f, &h);
                    self.at(pos, r)?;
                }
                _ => {
                    self.pos -= 1;
                    return self.err(format!("expected `objects`, `mor` or `comp`, found `{kw}`"));
                }
            }
            self.sym(";")?;
        }
        let end = self.here();
        self.sym("}")?;
        let r = b.build().map(Arc::new);
        self.at(end, r)
    }

    fn functor(&mut self) -> Result<Functor> {
        self.sym(":")?;
        let p = self.here();
        let d = self.name()?;
        let dom = self.at(p, self.doc.category(&d).cloned())?;
        self.sym("->")?;
        let p = self.here();
        let c = self.name()?;
        let cod = self.at(p, self.doc.category(&c).cloned())?;
        self.sym("{")?;
        let mut obj_map: Vec<Option<ObjId>> = vec![None; dom.num_objects()];
        let mut mor_map: Vec<Option<MorId>> = vec![None; dom.num_morphisms()];
        let mut pending: Vec<(MorId, String, (usize, usize))> = Vec::new();
        while !self.at_sym("}") {
            let p = self.here();
            let x = self.name()?;
            self.sym("|->")?;
            let y = self.name()?;
            self.sym(";")?;
            if let Some(o) = dom.obj_by_name(&x) {
                let t = cod.obj_by_name(&y);
                let t = self.at(p, t.ok_or_else(|| Error::InvalidFunctor(format!("no object `{y}` in {c}"))))?;
                obj_map[o] = Some(t);
            } else if let Some(m) = dom.mor_by_name(&x) {
                pending.push((m, y, p));
            } else {
                return Err(Error::Parse { line: p.0, col: p.1, msg: format!("no object or morphism `{x}` in {d}") });
            }
        }
        let end = self.here();
        self.sym("}")?;
        for (m, y, p) in pending {
            let t = cod.mor_by_name(&y);
            let t = self.at(p, t.ok_or_else(|| Error::InvalidFunctor(format!("no morphism `{y}` in {c}"))))?;
            mor_map[m] = Some(t);
        }
        let mut objs = Vec::with_capacity(obj_map.len());
        for (x, o) in obj_map.iter().enumerate() {
            let o = o.ok_or_else(|| Error::InvalidFunctor(format!("object `{}` is not mapped", dom.obj_name(x))));
            objs.push(self.at(end, o)?);
        }
        let mut mors = Vec::with_capacity(mor_map.len());
        for (m, t) in mor_map.iter().enumerate() {
            let t = match t {
                Some(t) => Ok(*t),
                None if dom.is_identity_mor(m) => Ok(cod.id(objs[dom.src(m)])),
                None => Err(Error::InvalidFunctor(format!("morphism `{}` is not mapped", dom.mor_name(m)))),
            };
            mors.push(self.at(end, t)?);
        }
        let r = Functor::new(dom, cod, objs, mors);
        self.at(end, r)
    }

    fn nat(&mut self) -> Result<NatTransf> {
        self.sym(":")?;
        let p = self.here();
        let s = self.name()?;
        let src = self.at(p, self.doc.functor(&s).cloned())?;
        self.sym("=>")?;
        let p = self.here();
        let t = self.name()?;
        let tgt = self.at(p, self.doc.functor(&t).cloned())?;
        self.sym("{")?;
        let (dom, cod) = (src.dom().clone(), src.cod().clone());
        let mut comps: Vec<Option<MorId>> = vec![None; dom.num_objects()];
        while !self.at_sym("}") {
            let p = self.here();
            let x = self.name()?;
            self.sym(":")?;
            let m = self.name()?;
            self.sym(";")?;
            let o = dom.obj_by_name(&x).ok_or_else(|| Error::InvalidFunctor(format!("no object `{x}` in {}", dom.name())));
            let o = self.at(p, o)?;
            let k = cod.mor_by_name(&m).ok_or_else(|| Error::InvalidFunctor(format!("no morphism `{m}` in {}", cod.name())));
            comps[o] = Some(self.at(p, k)?);
        }
        let end = self.here();
        self.sym("}")?;
        let mut out = Vec::with_capacity(comps.len());
        for (x, k) in comps.iter().enumerate() {
            let k = k.ok_or_else(|| Error::NotNatural(format!("no component at object {}", dom.obj_name(x))));
            out.push(self.at(end, k)?);
        }
        let r = NatTransf::new(src, tgt, out);
        self.at(end, r)
    }

    /// `{ key = value; ... }` with exactly the given keys, in order.
    fn fields(&mut self, keys: &[&str]) -> Result<Vec<(String, (usize, usize))>> {
        self.sym("{")?;
        let mut out = Vec::with_capacity(keys.len());
        for (i, k) in keys.iter().enumerate() {
            self.keyword(k)?;
            if i > 0 {
                self.sym("=")?;
            }
            let p = self.here();
            out.push((self.name()?, p));
            self.sym(";")?;
        }
        self.sym("}")?;
        Ok(out)
    }

    fn fraction(&mut self) -> Result<Fraction> {
        self.sym(":")?;
        let p = self.here();
        let a = self.name()?;
        let src = self.at(p, self.doc.category(&a).cloned())?;
        self.sym("-/->")?;
        let p = self.here();
        let b = self.name()?;
        let tgt = self.at(p, self.doc.category(&b).cloned())?;
        let fs = self.fields(&["apex", "w", "f"])?;
        let apex = self.at(fs[0].1, self.doc.category(&fs[0].0).cloned())?;
        let w = self.at(fs[1].1, self.doc.functor(&fs[1].0).cloned())?;
        let f = self.at(fs[2].1, self.doc.functor(&fs[2].0).cloned())?;
        let bad = |what: &str| Err(Error::BoundaryMismatch(what.to_string()));
        if **w.dom() != *apex || **w.cod() != *src {
            return self.at(fs[1].1, bad("w must go from the apex to the source"));
        }
        if **f.dom() != *apex || **f.cod() != *tgt {
            return self.at(fs[2].1, bad("f must go from the apex to the target"));
        }
        let r = Fraction::new(w, f);
        self.at(p, r)
    }

    fn cell(&mut self) -> Result<CellDiagram> {
        self.sym(":")?;
        let p = self.here();
        let s = self.name()?;
        let src = self.at(p, self.doc.fraction(&s).cloned())?;
        self.sym("=>")?;
        let p = self.here();
        let t = self.name()?;
        let tgt = self.at(p, self.doc.fraction(&t).cloned())?;
        let fs = self.fields(&["apex", "v1", "v2", "alpha", "beta"])?;
        let apex = self.at(fs[0].1, self.doc.category(&fs[0].0).cloned())?;
        let v1 = self.at(fs[1].1, self.doc.functor(&fs[1].0).cloned())?;
        let v2 = self.at(fs[2].1, self.doc.functor(&fs[2].0).cloned())?;
        let alpha = self.at(fs[3].1, self.doc.nat(&fs[3].0).cloned())?;
        let beta = self.at(fs[4].1, self.doc.nat(&fs[4].0).cloned())?;
        if **v1.dom() != *apex {
            return self.at(fs[1].1, Err(Error::BoundaryMismatch("v1 must start at the apex".into())));
        }
        let r = CellDiagram::new(src, tgt, v1, v2, alpha, beta);
        self.at(p, r)
    }
}

/// Parses and validates a whole document.
pub fn parse(src: &str) -> Result<Document> {
    let toks = lex(src)?;
    Parser { toks, pos: 0, doc: Document::default() }.document()
}

/// Parses `extra` with every declaration of `base` already in scope.
pub fn parse_with(base: &Document, extra: &str) -> Result<Document> {
    let toks = lex(extra)?;
    Parser { toks, pos: 0, doc: base.clone() }.document()
}
