//! MLL+medial formulas, positional rewriting and derivation certificates.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::category::{ObjExpr, Smldc, Tag};
use crate::palgebra::{self, PosetalSMLDC};
use crate::pcoh::{PCoh, PCohMorphism, PCohObject};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Formula {
    Atom(String),
    Top,
    Bot,
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Box::new(a), Box::new(b))
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Top | Formula::Bot => {}
            Formula::Tensor(l, r) | Formula::Par(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Tensor(l, r) | Formula::Par(l, r) => 1 + l.depth().max(r.depth()),
            _ => 0,
        }
    }

    pub fn subterm(&self, path: &[usize]) -> Option<&Formula> {
        match path.split_first() {
            None => Some(self),
            Some((&c, rest)) => match self {
                Formula::Tensor(l, r) | Formula::Par(l, r) => {
                    if c == 0 { l } else { r }.subterm(rest)
                }
                _ => None,
            },
        }
    }

    fn replace(&self, path: &[usize], new: Formula) -> Option<Formula> {
        match path.split_first() {
            None => Some(new),
            Some((&c, rest)) => {
                let (l, r, tensor) = match self {
                    Formula::Tensor(l, r) => (l, r, true),
                    Formula::Par(l, r) => (l, r, false),
                    _ => return None,
                };
                let (l, r) = if c == 0 {
                    (l.replace(rest, new)?, (**r).clone())
                } else {
                    ((**l).clone(), r.replace(rest, new)?)
                };
                Some(if tensor { Formula::tensor(l, r) } else { Formula::par(l, r) })
            }
        }
    }

    /// All node paths, pre-order.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        if let Formula::Tensor(l, r) | Formula::Par(l, r) = self {
            for (i, c) in [l, r].into_iter().enumerate() {
                for mut p in c.paths() {
                    p.insert(0, i);
                    out.push(p);
                }
            }
        }
        out
    }
}

impl TryFrom<String> for Formula {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        parse(&s)
    }
}

impl From<Formula> for String {
    fn from(f: Formula) -> String {
        render(&f)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn term(x: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match x {
                Formula::Tensor(..) | Formula::Par(..) => write!(f, "({x})"),
                _ => write!(f, "{x}"),
            }
        }
        match self {
            Formula::Atom(a) => f.write_str(a),
            Formula::Top => f.write_str("1"),
            Formula::Bot => f.write_str("0"),
            Formula::Tensor(l, r) => {
                term(l, f)?;
                f.write_str("*")?;
                term(r, f)
            }
            Formula::Par(l, r) => {
                term(l, f)?;
                f.write_str("+")?;
                term(r, f)
            }
        }
    }
}

pub fn render(f: &Formula) -> String {
    f.to_string()
}

pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser { s: text.as_bytes(), i: 0 };
    let f = p.formula()?;
    p.ws();
    if p.i < p.s.len() {
        return Err(p.err("unexpected input after formula"));
    }
    Ok(f)
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
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

    fn formula(&mut self) -> Result<Formula> {
        let l = self.term()?;
        self.ws();
        match self.s.get(self.i) {
            Some(b'*') => {
                self.i += 1;
                Ok(Formula::tensor(l, self.term()?))
            }
            Some(b'+') => {
                self.i += 1;
                Ok(Formula::par(l, self.term()?))
            }
            _ => Ok(l),
        }
    }

    fn term(&mut self) -> Result<Formula> {
        self.ws();
        match self.s.get(self.i) {
            Some(b'(') => {
                self.i += 1;
                let f = self.formula()?;
                self.ws();
                if self.s.get(self.i) != Some(&b')') {
                    return Err(self.err("expected `)`"));
                }
                self.i += 1;
                Ok(f)
            }
            Some(b'1') => {
                self.i += 1;
                Ok(Formula::Top)
            }
            Some(b'0') => {
                self.i += 1;
                Ok(Formula::Bot)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.i;
                while self.i < self.s.len()
                    && (self.s[self.i].is_ascii_lowercase()
                        || self.s[self.i].is_ascii_digit()
                        || self.s[self.i] == b'_')
                {
                    self.i += 1;
                }
                Ok(Formula::Atom(
                    String::from_utf8_lossy(&self.s[start..self.i]).into_owned(),
                ))
            }
            Some(_) => Err(self.err("expected an atom, `1`, `0` or `(`")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Rules available to derivations: every generator except the flips and the inverse distributivities.
pub const REWRITE_RULES: &[Tag] = &[
    Tag::AssocT,
    Tag::AssocTInv,
    Tag::AssocP,
    Tag::AssocPInv,
    Tag::UnitTR,
    Tag::UnitTRInv,
    Tag::UnitTL,
    Tag::UnitTLInv,
    Tag::UnitPR,
    Tag::UnitPRInv,
    Tag::UnitPL,
    Tag::UnitPLInv,
    Tag::BraidT,
    Tag::BraidP,
    Tag::DeltaL,
    Tag::DeltaR,
    Tag::Medial,
    Tag::ContractionBot,
    Tag::CocontractionTop,
    Tag::NullaryMix,
    Tag::BinaryMix,
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStep {
    pub rule: Tag,
    /// Dot-separated child indices from the root; empty for the root.
    pub path: String,
}

impl RewriteStep {
    pub fn new(rule: Tag, path: &str) -> Self {
        RewriteStep {
            rule,
            path: path.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub start: Formula,
    pub steps: Vec<RewriteStep>,
}

pub fn parse_path(path: &str) -> Result<Vec<usize>> {
    if path.is_empty() {
        return Ok(vec![]);
    }
    path.split('.')
        .map(|c| match c {
            "0" => Ok(0),
            "1" => Ok(1),
            _ => Err(Error::BadPath(path.to_string())),
        })
        .collect()
}

pub fn format_path(path: &[usize]) -> String {
    path.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(".")
}

fn bind(pat: &ObjExpr, f: &Formula, out: &mut [Option<Formula>]) -> bool {
    match (pat, f) {
        (ObjExpr::Var(i), _) => {
            out[*i] = Some(f.clone());
            true
        }
        (ObjExpr::Top, Formula::Top) | (ObjExpr::Bot, Formula::Bot) => true,
        (ObjExpr::Tensor(a, b), Formula::Tensor(l, r)) | (ObjExpr::Par(a, b), Formula::Par(l, r)) => {
            bind(a, l, out) && bind(b, r, out)
        }
        _ => false,
    }
}

fn instantiate(pat: &ObjExpr, binds: &[Formula]) -> Formula {
    match pat {
        ObjExpr::Var(i) => binds[*i].clone(),
        ObjExpr::Top => Formula::Top,
        ObjExpr::Bot => Formula::Bot,
        ObjExpr::Tensor(a, b) => Formula::tensor(instantiate(a, binds), instantiate(b, binds)),
        ObjExpr::Par(a, b) => Formula::par(instantiate(a, binds), instantiate(b, binds)),
    }
}

/// Matches the rule's source pattern at `path`; returns the bound parameters.
pub fn match_rule(f: &Formula, s: &RewriteStep) -> Result<Vec<Formula>> {
    if !REWRITE_RULES.contains(&s.rule) {
        return Err(Error::Pattern {
            rule: s.rule.name().into(),
            expected: "a rule from the rewrite set".into(),
        });
    }
    let path = parse_path(&s.path)?;
    let sub = f.subterm(&path).ok_or_else(|| Error::BadPath(s.path.clone()))?;
    let (src, _) = s.rule.pattern();
    let mut binds = vec![None; s.rule.arity()];
    if !bind(&src, sub, &mut binds) {
        return Err(Error::Pattern {
            rule: s.rule.name().into(),
            expected: src.to_string(),
        });
    }
    Ok(binds.into_iter().map(|b| b.expect("every variable occurs in the pattern")).collect())
}

pub fn apply_rule(f: &Formula, s: &RewriteStep) -> Result<Formula> {
    let binds = match_rule(f, s)?;
    let (_, tgt) = s.rule.pattern();
    let path = parse_path(&s.path)?;
    f.replace(&path, instantiate(&tgt, &binds))
        .ok_or_else(|| Error::BadPath(s.path.clone()))
}

/// Folds the steps; the error names the first failing step.
pub fn check_derivation(d: &Derivation) -> Result<Formula> {
    let mut f = d.start.clone();
    for (index, s) in d.steps.iter().enumerate() {
        f = apply_rule(&f, s).map_err(|e| Error::Step {
            index,
            reason: Box::new(e),
        })?;
    }
    Ok(f)
}

/// Every rule instance that applies somewhere in `f`.
pub fn applicable_steps(f: &Formula) -> Vec<RewriteStep> {
    let mut out = Vec::new();
    for p in f.paths() {
        let path = format_path(&p);
        for &rule in REWRITE_RULES {
            let s = RewriteStep::new(rule, &path);
            if match_rule(f, &s).is_ok() {
                out.push(s);
            }
        }
    }
    out
}

/// Assignments over the two-element lattice that break `src ≤ tgt`, atoms in sorted order.
pub fn refute_2(src: &Formula, tgt: &Formula) -> Vec<Vec<usize>> {
    let p = palgebra::two_element_lattice();
    let mut atoms = src.atoms();
    atoms.extend(tgt.atoms());
    let atoms: Vec<String> = atoms.into_iter().collect();
    let n = atoms.len();
    let mut out = Vec::new();
    for code in 0u64..(1 << n) {
        let vals: Vec<usize> = (0..n).map(|i| (code >> (n - 1 - i) & 1) as usize).collect();
        let sigma: HashMap<String, usize> = atoms.iter().cloned().zip(vals.iter().copied()).collect();
        let l = palgebra::eval_formula(&p, &sigma, src).expect("all atoms assigned");
        let r = palgebra::eval_formula(&p, &sigma, tgt).expect("all atoms assigned");
        if !p.le(l, r) {
            out.push(vals);
        }
    }
    out
}

/// Necessary soundness test: `src ≤ tgt` under every Boolean assignment.
pub fn validate_2(src: &Formula, tgt: &Formula) -> bool {
    refute_2(src, tgt).is_empty()
}

/// Denotation of a formula in P-Coh under an atom assignment.
pub fn denote(model: &PCoh, assign: &HashMap<String, PCohObject>, f: &Formula) -> Result<PCohObject> {
    match f {
        Formula::Atom(a) => assign.get(a).cloned().ok_or_else(|| Error::Unassigned(a.clone())),
        Formula::Top => Ok(model.tensor_unit()),
        Formula::Bot => Ok(model.par_unit()),
        Formula::Tensor(l, r) => model.tensor_obj(&denote(model, assign, l)?, &denote(model, assign, r)?),
        Formula::Par(l, r) => model.par_obj(&denote(model, assign, l)?, &denote(model, assign, r)?),
    }
}

/// One step as an arrow between the denotations of the formulas before and after it.
pub fn interpret_step(model: &PCoh, assign: &HashMap<String, PCohObject>, f: &Formula, s: &RewriteStep) -> Result<PCohMorphism> {
    let binds = match_rule(f, s)?;
    let params = binds
        .iter()
        .map(|b| denote(model, assign, b))
        .collect::<Result<Vec<_>>>()?;
    let mut m = model.structural(s.rule, &params)?;
    let path = parse_path(&s.path)?;
    for depth in (0..path.len()).rev() {
        let node = f.subterm(&path[..depth]).expect("path checked by match");
        let (l, r, tensor) = match node {
            Formula::Tensor(l, r) => (l, r, true),
            Formula::Par(l, r) => (l, r, false),
            _ => unreachable!("interior path node is binary"),
        };
        let sibling = model.identity(&denote(model, assign, if path[depth] == 0 { r } else { l })?);
        let (a, b) = if path[depth] == 0 { (&m, &sibling) } else { (&sibling, &m) };
        m = if tensor { model.tensor_mor(a, b)? } else { model.par_mor(a, b)? };
    }
    Ok(m)
}

/// Interprets a derivation as a composite of whiskered structural arrows.
pub fn interpret_derivation(
    p: &Arc<PosetalSMLDC>,
    assign: &HashMap<String, PCohObject>,
    d: &Derivation,
) -> Result<PCohMorphism> {
    let model = PCoh::new(p.clone());
    check_derivation(d)?;
    let mut f = d.start.clone();
    let mut acc = model.identity(&denote(&model, assign, &f)?);
    for s in &d.steps {
        let m = interpret_step(&model, assign, &f, s)?;
        acc = model.compose(&acc, &m)?;
        f = apply_rule(&f, s)?;
    }
    Ok(acc)
}

pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::atom(atoms[rng.gen_range(0..atoms.len())]),
        };
    }
    let l = random_formula(rng, atoms, depth - 1);
    let r = random_formula(rng, atoms, depth - 1);
    if rng.gen_bool(0.5) {
        Formula::tensor(l, r)
    } else {
        Formula::par(l, r)
    }
}

/// A derivation of up to `max_len` steps, each chosen among the applicable ones.
pub fn random_derivation<R: Rng>(rng: &mut R, atoms: &[&str], max_len: usize) -> Derivation {
    let start = random_formula(rng, atoms, 3);
    let len = rng.gen_range(0..=max_len);
    let mut f = start.clone();
    let mut steps = Vec::new();
    for _ in 0..len {
        let cands = applicable_steps(&f);
        if cands.is_empty() {
            break;
        }
        let s = cands[rng.gen_range(0..cands.len())].clone();
        f = apply_rule(&f, &s).expect("candidate applies");
        steps.push(s);
    }
    Derivation { start, steps }
}
