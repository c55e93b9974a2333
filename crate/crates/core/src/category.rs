//! Generator tags, symbolic object and morphism expressions, and the
//! interface every concrete model implements.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

macro_rules! tags {
    ($($v:ident => $s:literal),* $(,)?) => {
        /// Structural generator tags of a symmetric medial linearly distributive category.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum Tag {
            $(#[serde(rename = $s)] $v,)*
        }

        impl Tag {
            pub const ALL: &'static [Tag] = &[$(Tag::$v,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Tag::$v => $s,)*
                }
            }

            pub fn from_name(s: &str) -> Option<Tag> {
                match s {
                    $($s => Some(Tag::$v),)*
                    _ => None,
                }
            }
        }
    };
}

tags! {
    AssocT => "assocT",
    AssocTInv => "assocT_inv",
    AssocP => "assocP",
    AssocPInv => "assocP_inv",
    UnitTR => "unitTR",
    UnitTRInv => "unitTR_inv",
    UnitTL => "unitTL",
    UnitTLInv => "unitTL_inv",
    UnitPR => "unitPR",
    UnitPRInv => "unitPR_inv",
    UnitPL => "unitPL",
    UnitPLInv => "unitPL_inv",
    BraidT => "braidT",
    BraidP => "braidP",
    DeltaL => "deltaL",
    DeltaR => "deltaR",
    Medial => "medial",
    ContractionBot => "contractionBot",
    CocontractionTop => "cocontractionTop",
    NullaryMix => "nullaryMix",
    BinaryMix => "binaryMix",
    FlipT => "flipT",
    FlipP => "flipP",
    PartialL => "partialL",
    PartialR => "partialR",
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Object expressions over numbered variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ObjExpr {
    Var(usize),
    Top,
    Bot,
    Tensor(Box<ObjExpr>, Box<ObjExpr>),
    Par(Box<ObjExpr>, Box<ObjExpr>),
}

pub fn v(i: usize) -> ObjExpr {
    ObjExpr::Var(i)
}

pub fn ten(a: ObjExpr, b: ObjExpr) -> ObjExpr {
    ObjExpr::Tensor(Box::new(a), Box::new(b))
}

pub fn par(a: ObjExpr, b: ObjExpr) -> ObjExpr {
    ObjExpr::Par(Box::new(a), Box::new(b))
}

impl ObjExpr {
    /// Replaces `Var(i)` by `args[i]`.
    pub fn subst(&self, args: &[ObjExpr]) -> ObjExpr {
        match self {
            ObjExpr::Var(i) => args[*i].clone(),
            ObjExpr::Top => ObjExpr::Top,
            ObjExpr::Bot => ObjExpr::Bot,
            ObjExpr::Tensor(a, b) => ten(a.subst(args), b.subst(args)),
            ObjExpr::Par(a, b) => par(a.subst(args), b.subst(args)),
        }
    }

    /// Variables at the leaves, left to right; units are skipped.
    pub fn var_leaves(&self, out: &mut Vec<usize>) {
        match self {
            ObjExpr::Var(i) => out.push(*i),
            ObjExpr::Top | ObjExpr::Bot => {}
            ObjExpr::Tensor(a, b) | ObjExpr::Par(a, b) => {
                a.var_leaves(out);
                b.var_leaves(out);
            }
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        let mut l = Vec::new();
        self.var_leaves(&mut l);
        l.into_iter().max()
    }
}

impl fmt::Display for ObjExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn term(e: &ObjExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match e {
                ObjExpr::Tensor(..) | ObjExpr::Par(..) => write!(f, "({e})"),
                _ => write!(f, "{e}"),
            }
        }
        match self {
            ObjExpr::Var(i) => write!(f, "{}", var_name(*i)),
            ObjExpr::Top => f.write_str("1"),
            ObjExpr::Bot => f.write_str("0"),
            ObjExpr::Tensor(a, b) => {
                term(a, f)?;
                f.write_str("*")?;
                term(b, f)
            }
            ObjExpr::Par(a, b) => {
                term(a, f)?;
                f.write_str("+")?;
                term(b, f)
            }
        }
    }
}

fn var_name(i: usize) -> String {
    if i < 26 {
        ((b'A' + i as u8) as char).to_string()
    } else {
        format!("V{i}")
    }
}

impl Tag {
    pub fn arity(self) -> usize {
        use Tag::*;
        match self {
            ContractionBot | CocontractionTop | NullaryMix => 0,
            UnitTR | UnitTRInv | UnitTL | UnitTLInv | UnitPR | UnitPRInv | UnitPL | UnitPLInv => 1,
            BraidT | BraidP | BinaryMix => 2,
            AssocT | AssocTInv | AssocP | AssocPInv | DeltaL | DeltaR | PartialL | PartialR => 3,
            Medial | FlipT | FlipP => 4,
        }
    }

    /// Source and target patterns over `Var(0..arity)`.
    pub fn pattern(self) -> (ObjExpr, ObjExpr) {
        use ObjExpr::{Bot, Top};
        use Tag::*;
        let (a, b, c, d) = (v(0), v(1), v(2), v(3));
        match self {
            AssocT => (ten(ten(a.clone(), b.clone()), c.clone()), ten(a, ten(b, c))),
            AssocP => (par(a.clone(), par(b.clone(), c.clone())), par(par(a, b), c)),
            UnitTR => (a.clone(), ten(a, Top)),
            UnitTL => (a.clone(), ten(Top, a)),
            UnitPR => (par(a.clone(), Bot), a),
            UnitPL => (par(Bot, a.clone()), a),
            AssocTInv | AssocPInv | UnitTRInv | UnitTLInv | UnitPRInv | UnitPLInv => {
                let (s, t) = self.inverse().unwrap().pattern();
                (t, s)
            }
            BraidT => (ten(a.clone(), b.clone()), ten(b, a)),
            BraidP => (par(a.clone(), b.clone()), par(b, a)),
            DeltaL => (ten(a.clone(), par(b.clone(), c.clone())), par(ten(a, b), c)),
            DeltaR => (ten(par(a.clone(), b.clone()), c.clone()), par(a, ten(b, c))),
            Medial => (
                par(ten(a.clone(), b.clone()), ten(c.clone(), d.clone())),
                ten(par(a, c), par(b, d)),
            ),
            ContractionBot => (Bot, ten(Bot, Bot)),
            CocontractionTop => (par(Top, Top), Top),
            NullaryMix => (Bot, Top),
            BinaryMix => (ten(a.clone(), b.clone()), par(a, b)),
            FlipT => (
                ten(ten(a.clone(), b.clone()), ten(c.clone(), d.clone())),
                ten(ten(a, c), ten(b, d)),
            ),
            FlipP => (
                par(par(a.clone(), b.clone()), par(c.clone(), d.clone())),
                par(par(a, c), par(b, d)),
            ),
            PartialL => (par(a.clone(), ten(b.clone(), c.clone())), ten(par(a, b), c)),
            PartialR => (par(ten(a.clone(), b.clone()), c.clone()), ten(a, par(b, c))),
        }
    }

    pub fn inverse(self) -> Option<Tag> {
        use Tag::*;
        Some(match self {
            AssocT => AssocTInv,
            AssocTInv => AssocT,
            AssocP => AssocPInv,
            AssocPInv => AssocP,
            UnitTR => UnitTRInv,
            UnitTRInv => UnitTR,
            UnitTL => UnitTLInv,
            UnitTLInv => UnitTL,
            UnitPR => UnitPRInv,
            UnitPRInv => UnitPR,
            UnitPL => UnitPLInv,
            UnitPLInv => UnitPL,
            BraidT => BraidT,
            BraidP => BraidP,
            FlipT => FlipT,
            FlipP => FlipP,
            _ => return None,
        })
    }

    /// Generators whose model interpretation is a pure re-arrangement of coordinates.
    pub fn is_reindexing(self) -> bool {
        use Tag::*;
        !matches!(
            self,
            ContractionBot | CocontractionTop | NullaryMix | BinaryMix | PartialL | PartialR
        )
    }

    /// Source and target at concrete parameters.
    pub fn signature(self, params: &[ObjExpr]) -> Result<(ObjExpr, ObjExpr)> {
        self.check_arity(params.len())?;
        let (s, t) = self.pattern();
        Ok((s.subst(params), t.subst(params)))
    }

    pub fn check_arity(self, got: usize) -> Result<()> {
        if got != self.arity() {
            return Err(Error::Arity {
                tag: self.name().into(),
                expected: self.arity(),
                got,
            });
        }
        Ok(())
    }
}

/// Morphism recipes: generators, identities, functor actions and composites.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MorExpr {
    Id(ObjExpr),
    Gen(Tag, Vec<ObjExpr>),
    Tensor(Box<MorExpr>, Box<MorExpr>),
    Par(Box<MorExpr>, Box<MorExpr>),
    Seq(Vec<MorExpr>),
    /// A supplied morphism with declared endpoints.
    Param {
        index: usize,
        src: ObjExpr,
        tgt: ObjExpr,
    },
}

impl MorExpr {
    /// Symbolic endpoints; fails if a composite does not line up.
    pub fn typ(&self) -> Result<(ObjExpr, ObjExpr)> {
        match self {
            MorExpr::Id(o) => Ok((o.clone(), o.clone())),
            MorExpr::Gen(t, ps) => t.signature(ps),
            MorExpr::Tensor(f, g) => {
                let (a, b) = f.typ()?;
                let (c, d) = g.typ()?;
                Ok((ten(a, c), ten(b, d)))
            }
            MorExpr::Par(f, g) => {
                let (a, b) = f.typ()?;
                let (c, d) = g.typ()?;
                Ok((par(a, c), par(b, d)))
            }
            MorExpr::Seq(fs) => {
                let mut it = fs.iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::Endpoint("empty composite".into()))?;
                let (s, mut t) = first.typ()?;
                for g in it {
                    let (gs, gt) = g.typ()?;
                    if gs != t {
                        return Err(Error::Endpoint(format!("{t} does not match {gs}")));
                    }
                    t = gt;
                }
                Ok((s, t))
            }
            MorExpr::Param { src, tgt, .. } => Ok((src.clone(), tgt.clone())),
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        match self.typ() {
            Ok((s, t)) => s.max_var().max(t.max_var()),
            Err(_) => None,
        }
    }

    /// Every generator tag occurring in the recipe.
    pub fn tags(&self, out: &mut Vec<Tag>) {
        match self {
            MorExpr::Gen(t, _) => out.push(*t),
            MorExpr::Tensor(f, g) | MorExpr::Par(f, g) => {
                f.tags(out);
                g.tags(out);
            }
            MorExpr::Seq(fs) => fs.iter().for_each(|f| f.tags(out)),
            MorExpr::Id(_) | MorExpr::Param { .. } => {}
        }
    }
}

impl fmt::Display for MorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn args(ps: &[ObjExpr]) -> String {
            ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        }
        fn atom(m: &MorExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match m {
                MorExpr::Tensor(..) | MorExpr::Par(..) | MorExpr::Seq(..) => write!(f, "({m})"),
                _ => write!(f, "{m}"),
            }
        }
        match self {
            MorExpr::Id(o) => write!(f, "id({o})"),
            MorExpr::Gen(t, ps) if ps.is_empty() => write!(f, "{t}"),
            MorExpr::Gen(t, ps) => write!(f, "{t}({})", args(ps)),
            MorExpr::Tensor(a, b) => {
                atom(a, f)?;
                f.write_str(" * ")?;
                atom(b, f)
            }
            MorExpr::Par(a, b) => {
                atom(a, f)?;
                f.write_str(" + ")?;
                atom(b, f)
            }
            MorExpr::Seq(fs) => {
                for (i, m) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ; ")?;
                    }
                    match m {
                        MorExpr::Seq(..) => write!(f, "({m})")?,
                        _ => write!(f, "{m}")?,
                    }
                }
                Ok(())
            }
            MorExpr::Param { index, .. } => write!(f, "${index}"),
        }
    }
}

/// Parses the recipe notation used by the coherence catalog.
///
/// ```text
/// seq  := pair (';' pair)*
/// pair := atom (('*' | '+') atom)?
/// atom := 'id' '(' obj ')' | tag ['(' obj (',' obj)* ')'] | '$' digits | '(' seq ')'
/// obj  := oatom (('*' | '+') oatom)?
/// oatom := VAR | '1' | '0' | '(' obj ')'
/// ```
///
/// `vars` maps variable letters to indices; `params` gives endpoints of `$i`.
pub fn parse_recipe(text: &str, vars: &str, params: &[(ObjExpr, ObjExpr)]) -> Result<MorExpr> {
    let mut p = RecipeParser {
        s: text.as_bytes(),
        i: 0,
        vars,
        params,
    };
    let m = p.seq()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(m)
}

pub fn parse_obj(text: &str, vars: &str) -> Result<ObjExpr> {
    let mut p = RecipeParser {
        s: text.as_bytes(),
        i: 0,
        vars,
        params: &[],
    };
    let o = p.obj()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(o)
}

struct RecipeParser<'a> {
    s: &'a [u8],
    i: usize,
    vars: &'a str,
    params: &'a [(ObjExpr, ObjExpr)],
}

impl RecipeParser<'_> {
    fn err(&self, m: &str) -> Error {
        Error::Parse {
            offset: self.i,
            message: m.into(),
        }
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn seq(&mut self) -> Result<MorExpr> {
        let mut parts = vec![self.pair()?];
        while self.peek() == Some(b';') {
            self.i += 1;
            parts.push(self.pair()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            MorExpr::Seq(parts)
        })
    }

    fn pair(&mut self) -> Result<MorExpr> {
        let a = self.atom()?;
        match self.peek() {
            Some(b'*') => {
                self.i += 1;
                Ok(MorExpr::Tensor(Box::new(a), Box::new(self.atom()?)))
            }
            Some(b'+') => {
                self.i += 1;
                Ok(MorExpr::Par(Box::new(a), Box::new(self.atom()?)))
            }
            _ => Ok(a),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.i;
        while self.i < self.s.len() && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_') {
            self.i += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.i]).into_owned()
    }

    fn atom(&mut self) -> Result<MorExpr> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let m = self.seq()?;
                self.eat(b')')?;
                Ok(m)
            }
            Some(b'$') => {
                self.i += 1;
                let start = self.i;
                let n = self.ident();
                let index: usize = n.parse().map_err(|_| Error::Parse {
                    offset: start,
                    message: "expected parameter number".into(),
                })?;
                let (src, tgt) = self.params.get(index).cloned().ok_or(Error::Parse {
                    offset: start,
                    message: format!("unknown parameter ${index}"),
                })?;
                Ok(MorExpr::Param { index, src, tgt })
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.i;
                let name = self.ident();
                if name == "id" {
                    self.eat(b'(')?;
                    let o = self.obj()?;
                    self.eat(b')')?;
                    return Ok(MorExpr::Id(o));
                }
                let tag = Tag::from_name(&name).ok_or(Error::Parse {
                    offset: start,
                    message: format!("unknown generator `{name}`"),
                })?;
                let mut ps = Vec::new();
                if self.peek() == Some(b'(') {
                    self.i += 1;
                    if self.peek() != Some(b')') {
                        ps.push(self.obj()?);
                        while self.peek() == Some(b',') {
                            self.i += 1;
                            ps.push(self.obj()?);
                        }
                    }
                    self.eat(b')')?;
                }
                tag.check_arity(ps.len())?;
                Ok(MorExpr::Gen(tag, ps))
            }
            _ => Err(self.err("expected a morphism")),
        }
    }

    fn obj(&mut self) -> Result<ObjExpr> {
        let a = self.oatom()?;
        match self.peek() {
            Some(b'*') => {
                self.i += 1;
                Ok(ten(a, self.oatom()?))
            }
            Some(b'+') => {
                self.i += 1;
                Ok(par(a, self.oatom()?))
            }
            _ => Ok(a),
        }
    }

    fn oatom(&mut self) -> Result<ObjExpr> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let o = self.obj()?;
                self.eat(b')')?;
                Ok(o)
            }
            Some(b'1') => {
                self.i += 1;
                Ok(ObjExpr::Top)
            }
            Some(b'0') => {
                self.i += 1;
                Ok(ObjExpr::Bot)
            }
            Some(c) if c.is_ascii_uppercase() => {
                self.i += 1;
                let idx = self
                    .vars
                    .bytes()
                    .position(|x| x == c)
                    .ok_or_else(|| self.err(&format!("unknown variable `{}`", c as char)))?;
                Ok(ObjExpr::Var(idx))
            }
            _ => Err(self.err("expected an object")),
        }
    }
}

/// A symmetric medial linearly distributive category with decidable equality of arrows.
///
/// The `_at` operations receive the endpoints already built, so that callers
/// evaluating large recipes can share object values.
pub trait Smldc {
    type Obj: Clone + PartialEq + fmt::Debug;
    type Mor: Clone + fmt::Debug;

    fn tensor_unit(&self) -> Self::Obj;
    fn par_unit(&self) -> Self::Obj;
    fn tensor_obj(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Self::Obj>;
    fn par_obj(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Self::Obj>;

    fn src(&self, f: &Self::Mor) -> Self::Obj;
    fn tgt(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn tensor_mor_at(&self, f: &Self::Mor, g: &Self::Mor, src: &Self::Obj, tgt: &Self::Obj) -> Result<Self::Mor>;
    fn par_mor_at(&self, f: &Self::Mor, g: &Self::Mor, src: &Self::Obj, tgt: &Self::Obj) -> Result<Self::Mor>;
    fn structural_at(&self, tag: Tag, params: &[Self::Obj], src: &Self::Obj, tgt: &Self::Obj) -> Result<Self::Mor>;

    /// `None` when equal, otherwise the first differing entry.
    fn difference(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Option<(usize, usize)>>;

    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor> {
        let s = self.tensor_obj(&self.src(f), &self.src(g))?;
        let t = self.tensor_obj(&self.tgt(f), &self.tgt(g))?;
        self.tensor_mor_at(f, g, &s, &t)
    }

    fn par_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor> {
        let s = self.par_obj(&self.src(f), &self.src(g))?;
        let t = self.par_obj(&self.tgt(f), &self.tgt(g))?;
        self.par_mor_at(f, g, &s, &t)
    }

    fn structural(&self, tag: Tag, params: &[Self::Obj]) -> Result<Self::Mor> {
        tag.check_arity(params.len())?;
        let (s, t) = tag.pattern();
        let mut ev = Evaluator::new(self, params);
        let so = ev.obj(&s)?;
        let to = ev.obj(&t)?;
        self.structural_at(tag, params, &so, &to)
    }

    fn seq(&self, fs: &[&Self::Mor]) -> Result<Self::Mor> {
        let mut acc = fs[0].clone();
        for g in &fs[1..] {
            acc = self.compose(&acc, g)?;
        }
        Ok(acc)
    }

    fn equal(&self, f: &Self::Mor, g: &Self::Mor) -> Result<bool> {
        Ok(self.difference(f, g)?.is_none())
    }
}

/// Evaluates object and morphism recipes in a model, sharing built objects.
pub struct Evaluator<'a, C: Smldc + ?Sized> {
    cat: &'a C,
    vars: &'a [C::Obj],
    mors: &'a [C::Mor],
    memo: HashMap<ObjExpr, C::Obj>,
}

impl<'a, C: Smldc + ?Sized> Evaluator<'a, C> {
    pub fn new(cat: &'a C, vars: &'a [C::Obj]) -> Self {
        Evaluator {
            cat,
            vars,
            mors: &[],
            memo: HashMap::new(),
        }
    }

    pub fn with_params(cat: &'a C, vars: &'a [C::Obj], mors: &'a [C::Mor]) -> Self {
        Evaluator {
            cat,
            vars,
            mors,
            memo: HashMap::new(),
        }
    }

    pub fn obj(&mut self, e: &ObjExpr) -> Result<C::Obj> {
        if let Some(o) = self.memo.get(e) {
            return Ok(o.clone());
        }
        let o = match e {
            ObjExpr::Var(i) => self
                .vars
                .get(*i)
                .cloned()
                .ok_or_else(|| Error::Arity {
                    tag: "recipe".into(),
                    expected: i + 1,
                    got: self.vars.len(),
                })?,
            ObjExpr::Top => self.cat.tensor_unit(),
            ObjExpr::Bot => self.cat.par_unit(),
            ObjExpr::Tensor(a, b) => {
                let (a, b) = (self.obj(a)?, self.obj(b)?);
                self.cat.tensor_obj(&a, &b)?
            }
            ObjExpr::Par(a, b) => {
                let (a, b) = (self.obj(a)?, self.obj(b)?);
                self.cat.par_obj(&a, &b)?
            }
        };
        self.memo.insert(e.clone(), o.clone());
        Ok(o)
    }

    pub fn mor(&mut self, m: &MorExpr) -> Result<C::Mor> {
        match m {
            MorExpr::Id(o) => {
                let o = self.obj(o)?;
                Ok(self.cat.identity(&o))
            }
            MorExpr::Gen(tag, ps) => {
                let (s, t) = tag.signature(ps)?;
                let params = ps.iter().map(|p| self.obj(p)).collect::<Result<Vec<_>>>()?;
                let so = self.obj(&s)?;
                let to = self.obj(&t)?;
                self.cat.structural_at(*tag, &params, &so, &to)
            }
            MorExpr::Tensor(f, g) | MorExpr::Par(f, g) => {
                let (s, t) = m.typ()?;
                let fm = self.mor(f)?;
                let gm = self.mor(g)?;
                let so = self.obj(&s)?;
                let to = self.obj(&t)?;
                if matches!(m, MorExpr::Tensor(..)) {
                    self.cat.tensor_mor_at(&fm, &gm, &so, &to)
                } else {
                    self.cat.par_mor_at(&fm, &gm, &so, &to)
                }
            }
            MorExpr::Seq(fs) => {
                let mut acc = self.mor(&fs[0])?;
                for g in &fs[1..] {
                    let gm = self.mor(g)?;
                    acc = self.cat.compose(&acc, &gm)?;
                }
                Ok(acc)
            }
            MorExpr::Param { index, .. } => self
                .mors
                .get(*index)
                .cloned()
                .ok_or_else(|| Error::Unknown(format!("${index}"))),
        }
    }
}
