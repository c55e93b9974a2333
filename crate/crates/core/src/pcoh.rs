//! The category P-Coh of P-coherences over a posetal weight algebra P.
//!
//! Objects are finite posets with a symmetric monotone weight into P;
//! arrows are down/up-closed relations compatible with the weights.
//! Elements of products are encoded row-major, so any bracketing of the
//! same leaves shares one encoding.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::category::{parse_recipe, Evaluator, ObjExpr, Smldc, Tag};
use crate::palgebra::PosetalSMLDC;
use crate::poset::{self, FinPoset};
use crate::rel::Rel;
use crate::{Error, Result, Violation};

#[derive(Clone)]
pub struct PCohObject(Arc<ObjInner>);

struct ObjInner {
    size: usize,
    shape: OnceLock<FinPoset>,
    order: Rel,
    rho: OnceLock<Vec<u32>>,
    /// Factors of a product object, whose weight table is built on first use.
    factors: Option<(PCohObject, PCohObject, bool)>,
    algebra: Arc<PosetalSMLDC>,
}

impl fmt::Debug for PCohObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PCohObject")
            .field("size", &self.size())
            .field("rho", &self.rho_table())
            .finish()
    }
}

impl PartialEq for PCohObject {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if let (Some((a, b, t)), Some((c, d, u))) = (&self.0.factors, &other.0.factors) {
            if t == u && a.size() == c.size() && a == c && b == d {
                return true;
            }
        }
        self.0.size == other.0.size
            && (self.0.order == other.0.order
                && self.weights() == other.weights()
                && same_algebra(&self.0.algebra, &other.0.algebra))
    }
}

impl Eq for PCohObject {}

fn same_algebra(a: &Arc<PosetalSMLDC>, b: &Arc<PosetalSMLDC>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// JSON form of an object: `{ "poset": ..., "rho": [[...]] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectJson {
    pub poset: FinPoset,
    pub rho: Vec<Vec<usize>>,
}

impl PCohObject {
    /// Checks dimensions and ranges only; see [`validate_object`].
    pub fn new(shape: FinPoset, rho: Vec<Vec<usize>>, algebra: Arc<PosetalSMLDC>) -> Result<Self> {
        let n = shape.size();
        if rho.len() != n || rho.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("rho must be {n}x{n}")));
        }
        if let Some(&bad) = rho.iter().flatten().find(|&&x| x >= algebra.size()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                size: algebra.size(),
            });
        }
        let order = Rel::from_fn(n, n, |i, j| shape.le(i, j));
        Ok(PCohObject(Arc::new(ObjInner {
            size: n,
            shape: OnceLock::from(shape),
            order,
            rho: OnceLock::from(rho.into_iter().flatten().map(|x| x as u32).collect::<Vec<_>>()),
            factors: None,
            algebra,
        })))
    }

    /// Single point with the given weight.
    pub fn point(weight: usize, algebra: Arc<PosetalSMLDC>) -> Result<Self> {
        Self::new(FinPoset::singleton(), vec![vec![weight]], algebra)
    }

    pub fn from_json(j: &ObjectJson, algebra: Arc<PosetalSMLDC>) -> Result<Self> {
        Self::new(j.poset.clone(), j.rho.clone(), algebra)
    }

    pub fn to_json(&self) -> ObjectJson {
        ObjectJson {
            poset: self.shape().clone(),
            rho: self.rho_table(),
        }
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn shape(&self) -> &FinPoset {
        self.0
            .shape
            .get_or_init(|| FinPoset::from_fn(self.size(), |x, y| self.0.order.get(x, y)))
    }

    pub fn algebra(&self) -> &Arc<PosetalSMLDC> {
        &self.0.algebra
    }

    /// The order relation, which is also the identity arrow.
    pub fn order(&self) -> &Rel {
        &self.0.order
    }

    #[inline]
    pub fn rho(&self, a: usize, b: usize) -> usize {
        self.weights()[a * self.0.size + b] as usize
    }

    fn weights(&self) -> &[u32] {
        self.0.rho.get_or_init(|| {
            let (a, b, tensor) = self.0.factors.as_ref().expect("tables exist for non-products");
            product_weights(&self.0.algebra, a, b, *tensor)
        })
    }

    pub fn rho_table(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        (0..n).map(|a| (0..n).map(|b| self.rho(a, b)).collect()).collect()
    }
}

pub fn validate_object(a: &PCohObject) -> Vec<Violation> {
    let n = a.size();
    let p = a.algebra();
    let o = a.shape();
    let mut out: Vec<Violation> = poset::validate_poset(o)
        .into_iter()
        .map(|v| Violation {
            axiom: format!("poset-{}", v.axiom),
            witness: v.witness,
        })
        .collect();
    for x in 0..n {
        for y in x + 1..n {
            if a.rho(x, y) != a.rho(y, x) {
                out.push(Violation::new("symmetric", &[x, y]));
            }
        }
    }
    for x in 0..n {
        for x2 in 0..n {
            for y in 0..n {
                if !o.le(x, y) {
                    continue;
                }
                for y2 in 0..n {
                    if o.le(x2, y2) && !p.le(a.rho(x, x2), a.rho(y, y2)) {
                        out.push(Violation::new("monotone", &[x, x2, y, y2]));
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PCohMorphism {
    pub src: PCohObject,
    pub tgt: PCohObject,
    pub rel: Rel,
}

/// JSON form of an arrow between named objects of a model file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub src: String,
    pub tgt: String,
    pub rel: Vec<Vec<bool>>,
}

impl PCohMorphism {
    pub fn new(src: PCohObject, tgt: PCohObject, rel: Rel) -> Result<Self> {
        if rel.rows() != src.size() || rel.cols() != tgt.size() {
            return Err(Error::Dimension(format!(
                "relation must be {}x{}",
                src.size(),
                tgt.size()
            )));
        }
        Ok(PCohMorphism { src, tgt, rel })
    }

    pub fn from_table(src: PCohObject, tgt: PCohObject, table: &[Vec<bool>]) -> Result<Self> {
        let rel = Rel::from_table(table, tgt.size())
            .ok_or_else(|| Error::Dimension("ragged relation table".into()))?;
        Self::new(src, tgt, rel)
    }
}

/// Reports closure and weight-compatibility failures.
pub fn validate_morphism(f: &PCohMorphism) -> Vec<Violation> {
    let (s, t) = (&f.src, &f.tgt);
    let p = s.algebra();
    let mut out = Vec::new();
    let pairs = f.rel.pairs();
    for &(a, b) in &pairs {
        for a2 in 0..s.size() {
            if s.shape().le(a2, a) && !f.rel.get(a2, b) {
                out.push(Violation::new("down-closed", &[a2, b, a, b]));
            }
        }
        for b2 in 0..t.size() {
            if t.shape().le(b, b2) && !f.rel.get(a, b2) {
                out.push(Violation::new("up-closed", &[a, b2, a, b]));
            }
        }
    }
    for &(a, b) in &pairs {
        for &(a2, b2) in &pairs {
            if !p.le(s.rho(a, a2), t.rho(b, b2)) {
                out.push(Violation::new("rho-compatible", &[a, b, a2, b2]));
            }
        }
    }
    out
}

/// Removes one related pair from every instance of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mutation {
    pub tag: Tag,
    /// Index into the row-major list of related pairs, taken modulo its length.
    pub pair: usize,
}

/// A generator together with the objects it is instantiated at.
#[derive(Debug, Clone)]
pub struct StructuralGenerator {
    pub tag: Tag,
    pub params: Vec<PCohObject>,
}

/// P-Coh as a model, optionally with a corrupted generator.
#[derive(Debug, Clone)]
pub struct PCoh {
    pub algebra: Arc<PosetalSMLDC>,
    pub mutation: Option<Mutation>,
}

const BINARY_MIX: &str =
    "(id(A) * unitPL_inv(B)) ; (id(A) * (nullaryMix + id(B))) ; deltaL(A,1,B) ; (unitTR_inv(A) + id(B))";
const PARTIAL_L: &str =
    "(unitTR(A) + id(B*C)) ; medial(A,1,B,C) ; (id(A+B) * ($0 + id(C))) ; (id(A+B) * unitPL(C))";
const PARTIAL_R: &str =
    "(id(A*B) + unitTL(C)) ; medial(A,B,1,C) ; ((id(A) + $0) * id(B+C)) ; (unitPR(A) * id(B+C))";

fn product_weights(p: &PosetalSMLDC, a: &PCohObject, b: &PCohObject, tensor: bool) -> Vec<u32> {
    let k = p.size();
    let op: Vec<u32> = (0..k * k)
        .map(|i| if tensor { p.t(i / k, i % k) } else { p.p(i / k, i % k) } as u32)
        .collect();
    let (na, nb) = (a.size(), b.size());
    let (ra, rb) = (a.weights(), b.weights());
    let mut rho = Vec::with_capacity(na * nb * na * nb);
    for xa in 0..na {
        for xb in 0..nb {
            for ya in 0..na {
                let base = ra[xa * na + ya] as usize * k;
                let row = &rb[xb * nb..(xb + 1) * nb];
                rho.extend(row.iter().map(|&w| op[base + w as usize]));
            }
        }
    }
    rho
}

impl PCoh {
    pub fn new(algebra: Arc<PosetalSMLDC>) -> Self {
        PCoh {
            algebra,
            mutation: None,
        }
    }

    pub fn with_mutation(algebra: Arc<PosetalSMLDC>, mutation: Mutation) -> Self {
        PCoh {
            algebra,
            mutation: Some(mutation),
        }
    }

    fn check_algebra(&self, a: &PCohObject) -> Result<()> {
        if same_algebra(&self.algebra, a.algebra()) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn product_obj(&self, a: &PCohObject, b: &PCohObject, tensor: bool) -> Result<PCohObject> {
        self.check_algebra(a)?;
        self.check_algebra(b)?;
        let n = a.size() * b.size();
        Ok(PCohObject(Arc::new(ObjInner {
            size: n,
            shape: OnceLock::new(),
            order: a.order().kron(b.order()),
            rho: OnceLock::new(),
            factors: Some((a.clone(), b.clone(), tensor)),
            algebra: self.algebra.clone(),
        })))
    }

    fn unit(&self, w: usize) -> PCohObject {
        PCohObject::point(w, self.algebra.clone()).expect("unit weight lies in the algebra")
    }

    /// Graph-then-close of the leaf re-arrangement determined by the tag's pattern.
    fn reindex(&self, tag: Tag, params: &[PCohObject], src: &PCohObject, tgt: &PCohObject) -> Result<Rel> {
        let (sp, tp) = tag.pattern();
        let (mut sl, mut tl) = (Vec::new(), Vec::new());
        sp.var_leaves(&mut sl);
        tp.var_leaves(&mut tl);
        let sizes: Vec<usize> = sl.iter().map(|&i| params[i].size()).collect();
        // position in the source leaf list of each target leaf
        let pos: Vec<usize> = tl
            .iter()
            .map(|t| sl.iter().position(|s| s == t).expect("same leaves on both sides"))
            .collect();
        let n = src.size();
        if tgt.size() != n {
            return Err(Error::Endpoint(format!("{tag}: carrier sizes differ")));
        }
        let k = sl.len();
        let mut digits = vec![0usize; k];
        let sigma: Vec<usize> = (0..n)
            .map(|x| {
                let mut r = x;
                for i in (0..k).rev() {
                    digits[i] = r % sizes[i];
                    r /= sizes[i];
                }
                pos.iter().fold(0, |acc, &p| acc * sizes[p] + digits[p])
            })
            .collect();
        let mut rel = Rel::empty(n, n);
        for x in 0..n {
            rel.set_row(x, tgt.order().row(sigma[x]));
        }
        Ok(rel)
    }

    fn nullary_mix_inverse(&self) -> Result<PCohMorphism> {
        if self.algebra.top != self.algebra.bot {
            return Err(Error::NotInvertible);
        }
        Ok(PCohMorphism {
            src: self.tensor_unit(),
            tgt: self.par_unit(),
            rel: Rel::full(1, 1),
        })
    }

    fn composite(&self, recipe: &str, params: &[PCohObject], extra: &[PCohMorphism]) -> Result<Rel> {
        let ps = [(ObjExpr::Top, ObjExpr::Bot)];
        let m = parse_recipe(recipe, "ABC", &ps).expect("built-in recipe parses");
        Ok(Evaluator::with_params(self, params, extra).mor(&m)?.rel)
    }
}

impl Smldc for PCoh {
    type Obj = PCohObject;
    type Mor = PCohMorphism;

    fn tensor_unit(&self) -> PCohObject {
        self.unit(self.algebra.top)
    }

    fn par_unit(&self) -> PCohObject {
        self.unit(self.algebra.bot)
    }

    fn tensor_obj(&self, a: &PCohObject, b: &PCohObject) -> Result<PCohObject> {
        self.product_obj(a, b, true)
    }

    fn par_obj(&self, a: &PCohObject, b: &PCohObject) -> Result<PCohObject> {
        self.product_obj(a, b, false)
    }

    fn src(&self, f: &PCohMorphism) -> PCohObject {
        f.src.clone()
    }

    fn tgt(&self, f: &PCohMorphism) -> PCohObject {
        f.tgt.clone()
    }

    fn identity(&self, a: &PCohObject) -> PCohMorphism {
        PCohMorphism {
            src: a.clone(),
            tgt: a.clone(),
            rel: a.order().clone(),
        }
    }

    fn compose(&self, f: &PCohMorphism, g: &PCohMorphism) -> Result<PCohMorphism> {
        if f.tgt != g.src {
            return Err(Error::Endpoint("target of the first arrow is not the source of the second".into()));
        }
        Ok(PCohMorphism {
            src: f.src.clone(),
            tgt: g.tgt.clone(),
            rel: f.rel.compose(&g.rel),
        })
    }

    fn tensor_mor_at(&self, f: &PCohMorphism, g: &PCohMorphism, src: &PCohObject, tgt: &PCohObject) -> Result<PCohMorphism> {
        if src.size() != f.src.size() * g.src.size() || tgt.size() != f.tgt.size() * g.tgt.size() {
            return Err(Error::Endpoint("product endpoints do not match the factors".into()));
        }
        PCohMorphism::new(src.clone(), tgt.clone(), f.rel.kron(&g.rel))
    }

    fn par_mor_at(&self, f: &PCohMorphism, g: &PCohMorphism, src: &PCohObject, tgt: &PCohObject) -> Result<PCohMorphism> {
        self.tensor_mor_at(f, g, src, tgt)
    }

    fn structural_at(&self, tag: Tag, params: &[PCohObject], src: &PCohObject, tgt: &PCohObject) -> Result<PCohMorphism> {
        tag.check_arity(params.len())?;
        for p in params {
            self.check_algebra(p)?;
        }
        let mut rel = if tag.is_reindexing() {
            self.reindex(tag, params, src, tgt)?
        } else {
            match tag {
                Tag::ContractionBot | Tag::CocontractionTop | Tag::NullaryMix => {
                    if !self.algebra.le(src.rho(0, 0), tgt.rho(0, 0)) {
                        return Err(Error::Incompatible(tag.name().into()));
                    }
                    Rel::full(1, 1)
                }
                Tag::BinaryMix => self.composite(BINARY_MIX, params, &[])?,
                Tag::PartialL => self.composite(PARTIAL_L, params, &[self.nullary_mix_inverse()?])?,
                Tag::PartialR => self.composite(PARTIAL_R, params, &[self.nullary_mix_inverse()?])?,
                _ => unreachable!("re-indexing tags handled above"),
            }
        };
        if let Some(m) = self.mutation {
            if m.tag == tag {
                let pairs = rel.pairs();
                if !pairs.is_empty() {
                    let (i, j) = pairs[m.pair % pairs.len()];
                    rel.set(i, j, false);
                }
            }
        }
        PCohMorphism::new(src.clone(), tgt.clone(), rel)
    }

    fn difference(&self, f: &PCohMorphism, g: &PCohMorphism) -> Result<Option<(usize, usize)>> {
        if f.src != g.src || f.tgt != g.tgt {
            return Err(Error::Endpoint("compared arrows have different endpoints".into()));
        }
        Ok(f.rel.first_difference(&g.rel))
    }
}

fn model_of(a: &PCohObject) -> PCoh {
    PCoh::new(a.algebra().clone())
}

pub fn identity(a: &PCohObject) -> PCohMorphism {
    model_of(a).identity(a)
}

pub fn compose(f: &PCohMorphism, g: &PCohMorphism) -> Result<PCohMorphism> {
    model_of(&f.src).compose(f, g)
}

pub fn tensor_obj(a: &PCohObject, b: &PCohObject) -> Result<PCohObject> {
    model_of(a).tensor_obj(a, b)
}

pub fn par_obj(a: &PCohObject, b: &PCohObject) -> Result<PCohObject> {
    model_of(a).par_obj(a, b)
}

pub fn tensor_unit(p: &Arc<PosetalSMLDC>) -> PCohObject {
    PCoh::new(p.clone()).tensor_unit()
}

pub fn par_unit(p: &Arc<PosetalSMLDC>) -> PCohObject {
    PCoh::new(p.clone()).par_unit()
}

pub fn tensor_mor(f: &PCohMorphism, g: &PCohMorphism) -> Result<PCohMorphism> {
    model_of(&f.src).tensor_mor(f, g)
}

pub fn par_mor(f: &PCohMorphism, g: &PCohMorphism) -> Result<PCohMorphism> {
    model_of(&f.src).par_mor(f, g)
}

/// Instantiates a generator over the algebra of its parameters (or `p` when it has none).
pub fn structural(p: &Arc<PosetalSMLDC>, gen: &StructuralGenerator) -> Result<PCohMorphism> {
    PCoh::new(p.clone()).structural(gen.tag, &gen.params)
}

pub fn equal(f: &PCohMorphism, g: &PCohMorphism) -> Result<bool> {
    model_of(&f.src).equal(f, g)
}

/// Every valid arrow `a → b`, in increasing bit order of the relation table.
///
/// Valid relations are the up-sets of `a^op × b` that respect the weights;
/// they are built pair by pair, each pair added only once everything above it is in.
pub fn hom_set(a: &PCohObject, b: &PCohObject) -> Result<Vec<PCohMorphism>> {
    let bits = a.size() * b.size();
    if bits > 16 {
        return Err(Error::SizeGuard(format!("{bits} relation entries (at most 16)")));
    }
    let p = a.algebra();
    let nb = b.size();
    let (sa, sb) = (a.shape(), b.shape());
    // (i, j) lies above (i2, j2) when i ≤ i2 and j2 ≤ j
    let above = |e: usize, f: usize| sa.le(f / nb, e / nb) && sb.le(e % nb, f % nb);
    let mut order: Vec<usize> = (0..bits).collect();
    order.sort_by_key(|&e| (0..bits).filter(|&f| above(e, f)).count());
    let uppers: Vec<Vec<usize>> = (0..bits)
        .map(|e| (0..bits).filter(|&f| f != e && above(e, f)).collect())
        .collect();
    let mut masks = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn go(
        k: usize,
        mask: u32,
        order: &[usize],
        uppers: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        fits: &dyn Fn(usize, &[usize]) -> bool,
        out: &mut Vec<u32>,
    ) {
        if k == order.len() {
            out.push(mask);
            return;
        }
        let e = order[k];
        go(k + 1, mask, order, uppers, chosen, fits, out);
        if uppers[e].iter().all(|&f| mask >> f & 1 == 1) && fits(e, chosen) {
            chosen.push(e);
            go(k + 1, mask | 1 << e, order, uppers, chosen, fits, out);
            chosen.pop();
        }
    }
    let fits = |e: usize, chosen: &[usize]| {
        let (i, j) = (e / nb, e % nb);
        std::iter::once(e)
            .chain(chosen.iter().copied())
            .all(|f| p.le(a.rho(i, f / nb), b.rho(j, f % nb)))
    };
    go(0, 0, &order, &uppers, &mut chosen, &fits, &mut masks);
    masks.sort_unstable();
    Ok(masks
        .into_iter()
        .map(|mask| PCohMorphism {
            src: a.clone(),
            tgt: b.clone(),
            rel: Rel::from_fn(a.size(), nb, |i, j| mask >> (i * nb + j) & 1 == 1),
        })
        .collect())
}

/// One object per isomorphism class among [`probe_objects`], the first met in that order.
pub fn probe_representatives(p: &Arc<PosetalSMLDC>, max_size: usize) -> Vec<PCohObject> {
    let mut seen = std::collections::HashSet::new();
    probe_objects(p, max_size)
        .into_iter()
        .filter(|o| seen.insert(canonical_form(o)))
        .collect()
}

/// The least relabelling of an object's order and weights.
fn canonical_form(o: &PCohObject) -> (usize, Vec<bool>, Vec<usize>) {
    let n = o.size();
    let mut best: Option<(Vec<bool>, Vec<usize>)> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let leq = (0..n * n).map(|c| o.shape().le(perm[c / n], perm[c % n])).collect();
        let rho = (0..n * n).map(|c| o.rho(perm[c / n], perm[c % n])).collect();
        let cand = (leq, rho);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let (leq, rho) = best.expect("at least the identity permutation");
    (n, leq, rho)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("a larger element exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every object with at most `max_size` points: each labelled order, each symmetric monotone weight.
pub fn probe_objects(p: &Arc<PosetalSMLDC>, max_size: usize) -> Vec<PCohObject> {
    let mut out = Vec::new();
    let k = p.size();
    for n in 1..=max_size {
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        for shape in poset::all_posets(n) {
            let total = k.pow(cells.len() as u32);
            for code in 0..total {
                let mut rho = vec![vec![0; n]; n];
                let mut c = code;
                for &(i, j) in &cells {
                    rho[i][j] = c % k;
                    rho[j][i] = c % k;
                    c /= k;
                }
                let obj = PCohObject::new(shape.clone(), rho, p.clone()).expect("dimensions are right");
                if validate_object(&obj).is_empty() {
                    out.push(obj);
                }
            }
        }
    }
    out
}
