//! Medial bimonoids, the cartesian structure of B[X], and the Fox round trip on posetal lattices.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::{parse_recipe, Evaluator, MorExpr, ObjExpr, Smldc, Tag};
use crate::palgebra::PosetalSMLDC;
use crate::pcoh::{self, PCoh, PCohMorphism, PCohObject};
use crate::rel::Rel;
use crate::{Error, Result};

/// Each call site passes one fixed parameter list, so its length tells them apart.
type RecipeKey = (&'static str, &'static str, usize);

thread_local! {
    static PARSED: RefCell<HashMap<RecipeKey, MorExpr>> = RefCell::new(HashMap::new());
}

fn recipe(text: &'static str, vars: &'static str, params: &[(ObjExpr, ObjExpr)]) -> Result<MorExpr> {
    let key = (text, vars, params.len());
    if let Some(m) = PARSED.with(|c| c.borrow().get(&key).cloned()) {
        return Ok(m);
    }
    let m = parse_recipe(text, vars, params)?;
    PARSED.with(|c| c.borrow_mut().insert(key, m.clone()));
    Ok(m)
}

/// A ⊗-comonoid and ⊕-monoid on one carrier.
#[derive(Debug, Clone, PartialEq)]
pub struct MedialBimonoid<O, M> {
    pub carrier: O,
    /// A → A⊗A
    pub delta: M,
    /// A → ⊤
    pub counit: M,
    /// A⊕A → A
    pub mult: M,
    /// ⊥ → A
    pub unit: M,
}

pub type PCohBimonoid = MedialBimonoid<PCohObject, PCohMorphism>;

impl<O: Clone, M: Clone> MedialBimonoid<O, M> {
    fn parts(&self) -> [M; 4] {
        [
            self.delta.clone(),
            self.counit.clone(),
            self.mult.clone(),
            self.unit.clone(),
        ]
    }
}

/// Models whose hom-sets can be listed.
pub trait FiniteHoms: Smldc {
    fn hom_set(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Mor>>;
    /// Drops the `k`-th related pair (modulo their number), where the model has such a notion.
    fn drop_pair(&self, f: &Self::Mor, k: usize) -> Option<Self::Mor>;
}

impl FiniteHoms for PCoh {
    fn hom_set(&self, a: &PCohObject, b: &PCohObject) -> Result<Vec<PCohMorphism>> {
        pcoh::hom_set(a, b)
    }

    fn drop_pair(&self, f: &PCohMorphism, k: usize) -> Option<PCohMorphism> {
        let pairs = f.rel.pairs();
        if pairs.is_empty() {
            return None;
        }
        let mut rel: Rel = f.rel.clone();
        let (i, j) = pairs[k % pairs.len()];
        rel.set(i, j, false);
        Some(PCohMorphism {
            rel,
            ..f.clone()
        })
    }
}

fn bimonoid_params(a: ObjExpr) -> Vec<(ObjExpr, ObjExpr)> {
    use crate::category::{par, ten};
    vec![
        (a.clone(), ten(a.clone(), a.clone())),
        (a.clone(), ObjExpr::Top),
        (par(a.clone(), a.clone()), a.clone()),
        (ObjExpr::Bot, a),
    ]
}

/// The ten laws, with `$0..$3` standing for Δ, e, ∇, u on the carrier `A`.
#[rustfmt::skip]
pub const LAWS: &[(&str, &str, &str)] = &[
    ("CM.1", "$0 ; (id(A) * $0)", "$0 ; ($0 * id(A)) ; assocT(A,A,A)"),
    ("CM.2", "$0 ; (id(A) * $1)", "unitTR(A)"),
    ("CM.2", "$0 ; ($1 * id(A))", "unitTL(A)"),
    ("CCM", "$0 ; braidT(A,A)", "$0"),
    ("M.1", "(id(A) + $2) ; $2", "assocP(A,A,A) ; ($2 + id(A)) ; $2"),
    ("M.2", "(id(A) + $3) ; $2", "unitPR(A)"),
    ("M.2", "($3 + id(A)) ; $2", "unitPL(A)"),
    ("CM", "braidP(A,A) ; $2", "$2"),
    ("MB.1", "$2 ; $0", "($0 + $0) ; medial(A,A,A,A) ; ($2 * $2)"),
    ("MB.2", "$3 ; $1", "nullaryMix"),
    ("MB.3", "$2 ; $1", "($1 + $1) ; cocontractionTop"),
    ("MB.4", "$3 ; $0", "contractionBot ; ($3 * $3)"),
];

const COMONOID_LAWS: &[&str] = &["CM.1", "CM.2", "CCM"];
const MONOID_LAWS: &[&str] = &["M.1", "M.2", "CM"];

fn check_endpoints<C: Smldc>(model: &C, f: &C::Mor, src: &C::Obj, tgt: &C::Obj, what: &str) -> Result<()> {
    if model.src(f) != *src || model.tgt(f) != *tgt {
        return Err(Error::Endpoint(format!("{what} has the wrong endpoints")));
    }
    Ok(())
}

fn check_structure_endpoints<C: Smldc>(model: &C, b: &MedialBimonoid<C::Obj, C::Mor>) -> Result<()> {
    let a = &b.carrier;
    check_endpoints(model, &b.delta, a, &model.tensor_obj(a, a)?, "delta")?;
    check_endpoints(model, &b.counit, a, &model.tensor_unit(), "counit")?;
    check_endpoints(model, &b.mult, &model.par_obj(a, a)?, a, "mult")?;
    check_endpoints(model, &b.unit, &model.par_unit(), a, "unit")
}

fn failing_laws<C: Smldc>(model: &C, carrier: &C::Obj, parts: &[C::Mor; 4], only: Option<&[&str]>) -> Result<Vec<String>> {
    let params = bimonoid_params(ObjExpr::Var(0));
    let vars = [carrier.clone()];
    let mut ev = Evaluator::with_params(model, &vars, parts);
    let mut out: Vec<String> = Vec::new();
    for &(name, lhs, rhs) in LAWS {
        if only.is_some_and(|o| !o.contains(&name)) {
            continue;
        }
        let l = ev.mor(&recipe(lhs, "A", &params)?)?;
        let r = ev.mor(&recipe(rhs, "A", &params)?)?;
        if !model.equal(&l, &r)? && !out.iter().any(|n| n == name) {
            out.push(name.to_string());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimonoidReport {
    /// Names of the failing laws, in catalog order.
    pub failing: Vec<String>,
}

impl BimonoidReport {
    pub fn is_valid(&self) -> bool {
        self.failing.is_empty()
    }
}

/// Checks the comonoid, monoid and compatibility laws.
pub fn validate_bimonoid<C: Smldc>(model: &C, b: &MedialBimonoid<C::Obj, C::Mor>) -> Result<BimonoidReport> {
    check_structure_endpoints(model, b)?;
    Ok(BimonoidReport {
        failing: failing_laws(model, &b.carrier, &b.parts(), None)?,
    })
}

/// The canonical structures on ⊤ and ⊥.
pub fn unit_bimonoids<C: Smldc>(model: &C) -> Result<(MedialBimonoid<C::Obj, C::Mor>, MedialBimonoid<C::Obj, C::Mor>)> {
    let top = model.tensor_unit();
    let bot = model.par_unit();
    let t = MedialBimonoid {
        carrier: top.clone(),
        delta: model.structural(Tag::UnitTR, std::slice::from_ref(&top))?,
        counit: model.identity(&top),
        mult: model.structural(Tag::CocontractionTop, &[])?,
        unit: model.structural(Tag::NullaryMix, &[])?,
    };
    let b = MedialBimonoid {
        carrier: bot.clone(),
        delta: model.structural(Tag::ContractionBot, &[])?,
        counit: model.structural(Tag::NullaryMix, &[])?,
        mult: model.structural(Tag::UnitPR, std::slice::from_ref(&bot))?,
        unit: model.identity(&bot),
    };
    Ok((t, b))
}

/// Which of Δ, e, ∇, u fail to be bimonoid morphisms into or out of the constructed
/// structures on `A⊗A`, `⊤`, `A⊕A` and `⊥`.
pub fn structure_maps_failing<C: Smldc>(model: &C, b: &MedialBimonoid<C::Obj, C::Mor>) -> Result<Vec<&'static str>> {
    let (top, bot) = unit_bimonoids(model)?;
    let tt = tensor_bimonoid(model, b, b)?;
    let pp = par_bimonoid(model, b, b)?;
    let mut out = Vec::new();
    for (name, f, s, t) in [
        ("delta", &b.delta, b, &tt),
        ("counit", &b.counit, b, &top),
        ("mult", &b.mult, &pp, b),
        ("unit", &b.unit, &bot, b),
    ] {
        if !is_bimonoid_morphism(model, f, s, t)? {
            out.push(name);
        }
    }
    Ok(out)
}

/// Evaluates recipes over carriers `A`, `B` with the two structures as `$0..$3` and `$4..$7`.
fn pair_recipes<C: Smldc>(
    model: &C,
    b1: &MedialBimonoid<C::Obj, C::Mor>,
    b2: &MedialBimonoid<C::Obj, C::Mor>,
    recipes: [&'static str; 4],
) -> Result<[C::Mor; 4]> {
    let mut params = bimonoid_params(ObjExpr::Var(0));
    params.extend(bimonoid_params(ObjExpr::Var(1)));
    let vars = [b1.carrier.clone(), b2.carrier.clone()];
    let mors: Vec<C::Mor> = b1.parts().into_iter().chain(b2.parts()).collect();
    let mut ev = Evaluator::with_params(model, &vars, &mors);
    let mut out = Vec::with_capacity(4);
    for r in recipes {
        out.push(ev.mor(&recipe(r, "AB", &params)?)?);
    }
    Ok(out.try_into().unwrap_or_else(|_| unreachable!("four recipes")))
}

/// Structure on A⊗B.
pub fn tensor_bimonoid<C: Smldc>(
    model: &C,
    b1: &MedialBimonoid<C::Obj, C::Mor>,
    b2: &MedialBimonoid<C::Obj, C::Mor>,
) -> Result<MedialBimonoid<C::Obj, C::Mor>> {
    let [delta, counit, mult, unit] = pair_recipes(
        model,
        b1,
        b2,
        [
            "($0 * $4) ; flipT(A,A,B,B)",
            "($1 * $5) ; unitTR_inv(1)",
            "medial(A,B,A,B) ; ($2 * $6)",
            "contractionBot ; ($3 * $7)",
        ],
    )?;
    Ok(MedialBimonoid {
        carrier: model.tensor_obj(&b1.carrier, &b2.carrier)?,
        delta,
        counit,
        mult,
        unit,
    })
}

/// Structure on A⊕B.
pub fn par_bimonoid<C: Smldc>(
    model: &C,
    b1: &MedialBimonoid<C::Obj, C::Mor>,
    b2: &MedialBimonoid<C::Obj, C::Mor>,
) -> Result<MedialBimonoid<C::Obj, C::Mor>> {
    let [delta, counit, mult, unit] = pair_recipes(
        model,
        b1,
        b2,
        [
            "($0 + $4) ; medial(A,A,B,B)",
            "($1 + $5) ; cocontractionTop",
            "flipP(A,B,A,B) ; ($2 + $6)",
            "unitPR_inv(0) ; ($3 + $7)",
        ],
    )?;
    Ok(MedialBimonoid {
        carrier: model.par_obj(&b1.carrier, &b2.carrier)?,
        delta,
        counit,
        mult,
        unit,
    })
}

/// The comonoid and monoid homomorphism squares.
pub fn is_bimonoid_morphism<C: Smldc>(
    model: &C,
    f: &C::Mor,
    b1: &MedialBimonoid<C::Obj, C::Mor>,
    b2: &MedialBimonoid<C::Obj, C::Mor>,
) -> Result<bool> {
    check_endpoints(model, f, &b1.carrier, &b2.carrier, "morphism")?;
    all_squares_hold(model, f, b1, b2)
}

/// Names of the homomorphism squares `f` breaks.
pub fn failing_squares<C: Smldc>(
    model: &C,
    f: &C::Mor,
    b1: &MedialBimonoid<C::Obj, C::Mor>,
    b2: &MedialBimonoid<C::Obj, C::Mor>,
) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for name in SQUARES {
        if !square_holds(model, name, f, b1, b2)? {
            out.push(name);
        }
    }
    Ok(out)
}

const SQUARES: [&str; 4] = ["counit", "unit", "diagonal", "multiplication"];

fn square_holds<C: Smldc>(
    model: &C,
    name: &str,
    f: &C::Mor,
    b1: &MedialBimonoid<C::Obj, C::Mor>,
    b2: &MedialBimonoid<C::Obj, C::Mor>,
) -> Result<bool> {
    match name {
        "counit" => model.equal(&model.compose(f, &b2.counit)?, &b1.counit),
        "unit" => model.equal(&model.compose(&b1.unit, f)?, &b2.unit),
        "diagonal" => model.equal(
            &model.compose(f, &b2.delta)?,
            &model.compose(&b1.delta, &model.tensor_mor(f, f)?)?,
        ),
        _ => model.equal(
            &model.compose(&b1.mult, f)?,
            &model.compose(&model.par_mor(f, f)?, &b2.mult)?,
        ),
    }
}

fn all_squares_hold<C: Smldc>(
    model: &C,
    f: &C::Mor,
    b1: &MedialBimonoid<C::Obj, C::Mor>,
    b2: &MedialBimonoid<C::Obj, C::Mor>,
) -> Result<bool> {
    for name in SQUARES {
        if !square_holds(model, name, f, b1, b2)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every bimonoid structure on `a`: comonoids and monoids are filtered first, then paired.
pub fn enumerate_bimonoids_in<C: FiniteHoms>(model: &C, a: &C::Obj) -> Result<Vec<MedialBimonoid<C::Obj, C::Mor>>> {
    let top = model.tensor_unit();
    let bot = model.par_unit();
    let deltas = model.hom_set(a, &model.tensor_obj(a, a)?)?;
    let counits = model.hom_set(a, &top)?;
    let mults = model.hom_set(&model.par_obj(a, a)?, a)?;
    let units = model.hom_set(&bot, a)?;
    let id = model.identity(a);
    let mut comonoids = Vec::new();
    for d in &deltas {
        for e in &counits {
            let parts = [d.clone(), e.clone(), id.clone(), id.clone()];
            if failing_laws(model, a, &parts, Some(COMONOID_LAWS))?.is_empty() {
                comonoids.push((d.clone(), e.clone()));
            }
        }
    }
    let mut monoids = Vec::new();
    for m in &mults {
        for u in &units {
            let parts = [id.clone(), id.clone(), m.clone(), u.clone()];
            if failing_laws(model, a, &parts, Some(MONOID_LAWS))?.is_empty() {
                monoids.push((m.clone(), u.clone()));
            }
        }
    }
    let mut out = Vec::new();
    for (d, e) in &comonoids {
        for (m, u) in &monoids {
            let b = MedialBimonoid {
                carrier: a.clone(),
                delta: d.clone(),
                counit: e.clone(),
                mult: m.clone(),
                unit: u.clone(),
            };
            if failing_laws(model, a, &b.parts(), Some(&["MB.1", "MB.2", "MB.3", "MB.4"]))?.is_empty() {
                out.push(b);
            }
        }
    }
    Ok(out)
}

/// Carriers of more than two points are refused.
pub fn enumerate_bimonoids(model: &PCoh, a: &PCohObject) -> Result<Vec<PCohBimonoid>> {
    if a.size() > 2 {
        return Err(Error::SizeGuard(format!("carrier of {} points (at most 2)", a.size())));
    }
    enumerate_bimonoids_in(model, a)
}

/// All bimonoid morphisms `b1 → b2`.
pub fn bimonoid_morphisms<C: FiniteHoms>(
    model: &C,
    b1: &MedialBimonoid<C::Obj, C::Mor>,
    b2: &MedialBimonoid<C::Obj, C::Mor>,
) -> Result<Vec<C::Mor>> {
    let mut out = Vec::new();
    for f in model.hom_set(&b1.carrier, &b2.carrier)? {
        if all_squares_hold(model, &f, b1, b2)? {
            out.push(f);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalReport {
    /// Number of (probe, f, g) instances examined, both sides together.
    pub cases: usize,
    pub failures: Vec<String>,
}

impl UniversalReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Options for [`check_product_universal`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct UniversalOptions {
    /// Corrupt every mediating arrow by dropping this related pair.
    pub mutate_pairing: Option<usize>,
}

/// Product and coproduct universal properties of `b1 ⊗ b2` and `b1 ⊕ b2` against the probes.
pub fn check_product_universal<C: FiniteHoms>(
    model: &C,
    b1: &MedialBimonoid<C::Obj, C::Mor>,
    b2: &MedialBimonoid<C::Obj, C::Mor>,
    probes: &[MedialBimonoid<C::Obj, C::Mor>],
    opts: UniversalOptions,
) -> Result<UniversalReport> {
    universal_core(model, b1, b2, probes, opts, &mut |p, side, into| {
        let (c, b) = (&probes[p], if side == 0 { b1 } else { b2 });
        if into {
            bimonoid_morphisms(model, c, b)
        } else {
            bimonoid_morphisms(model, b, c)
        }
    })
}

/// Checks the universal properties for every pair of a set, with the set itself as probes.
pub struct UniversalChecker<'a, C: FiniteHoms> {
    model: &'a C,
    set: &'a [MedialBimonoid<C::Obj, C::Mor>],
    /// `homs[p][j]`: bimonoid morphisms `set[p] → set[j]`
    homs: Vec<Vec<Vec<C::Mor>>>,
}

impl<'a, C: FiniteHoms> UniversalChecker<'a, C> {
    pub fn new(model: &'a C, set: &'a [MedialBimonoid<C::Obj, C::Mor>]) -> Result<Self> {
        let homs = set
            .iter()
            .map(|x| set.iter().map(|y| bimonoid_morphisms(model, x, y)).collect())
            .collect::<Result<_>>()?;
        Ok(UniversalChecker { model, set, homs })
    }

    pub fn check(&self, i: usize, j: usize, opts: UniversalOptions) -> Result<UniversalReport> {
        let (b1, b2) = (&self.set[i], &self.set[j]);
        universal_core(self.model, b1, b2, self.set, opts, &mut |p, side, into| {
            let k = if side == 0 { i } else { j };
            Ok(if into { self.homs[p][k].clone() } else { self.homs[k][p].clone() })
        })
    }
}

type HomLookup<'f, M> = dyn FnMut(usize, usize, bool) -> Result<Vec<M>> + 'f;

fn universal_core<C: FiniteHoms>(
    model: &C,
    b1: &MedialBimonoid<C::Obj, C::Mor>,
    b2: &MedialBimonoid<C::Obj, C::Mor>,
    probes: &[MedialBimonoid<C::Obj, C::Mor>],
    opts: UniversalOptions,
    homs: &mut HomLookup<'_, C::Mor>,
) -> Result<UniversalReport> {
    let mut failures = Vec::new();
    let mut cases = 0;
    let prod = tensor_bimonoid(model, b1, b2)?;
    let coprod = par_bimonoid(model, b1, b2)?;
    let [pi0, pi1, iota0, iota1] = pair_recipes(model, b1, b2, PROJ_INJ)?;
    for (name, m, s, t) in [
        ("projection 0", &pi0, &prod, b1),
        ("projection 1", &pi1, &prod, b2),
        ("injection 0", &iota0, b1, &coprod),
        ("injection 1", &iota1, b2, &coprod),
    ] {
        if !is_bimonoid_morphism(model, m, s, t)? {
            failures.push(format!("{name} is not a bimonoid morphism"));
        }
    }
    let corrupt = |h: C::Mor| match opts.mutate_pairing {
        Some(k) => model.drop_pair(&h, k).unwrap_or(h),
        None => h,
    };
    let index_of = |xs: &[C::Mor], x: &C::Mor| -> Result<Option<usize>> {
        for (i, y) in xs.iter().enumerate() {
            if model.equal(x, y)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    };
    for (pi, c) in probes.iter().enumerate() {
        for into in [true, false] {
            let fs = homs(pi, 0, into)?;
            let gs = homs(pi, 1, into)?;
            let (hs, what) = if into {
                (bimonoid_morphisms(model, c, &prod)?, "pair")
            } else {
                (bimonoid_morphisms(model, &coprod, c)?, "copair")
            };
            // legs[k]: the (f, g) indices that hs[k] restricts to
            let mut legs = Vec::with_capacity(hs.len());
            for k in &hs {
                let (l0, l1) = if into {
                    (model.compose(k, &pi0)?, model.compose(k, &pi1)?)
                } else {
                    (model.compose(&iota0, k)?, model.compose(&iota1, k)?)
                };
                legs.push((index_of(&fs, &l0)?, index_of(&gs, &l1)?));
            }
            for (i, f) in fs.iter().enumerate() {
                for (j, g) in gs.iter().enumerate() {
                    cases += 1;
                    let tag = format!("probe {pi}, {what} ({i}, {j})");
                    let h = if into {
                        corrupt(model.compose(&c.delta, &model.tensor_mor(f, g)?)?)
                    } else {
                        corrupt(model.compose(&model.par_mor(f, g)?, &c.mult)?)
                    };
                    let ok = if into {
                        is_bimonoid_morphism(model, &h, c, &prod)?
                    } else {
                        is_bimonoid_morphism(model, &h, &coprod, c)?
                    };
                    if !ok {
                        failures.push(format!("{tag}: {what}ing is not a bimonoid morphism"));
                    }
                    let commutes = if into {
                        model.equal(&model.compose(&h, &pi0)?, f)? && model.equal(&model.compose(&h, &pi1)?, g)?
                    } else {
                        model.equal(&model.compose(&iota0, &h)?, f)? && model.equal(&model.compose(&iota1, &h)?, g)?
                    };
                    if !commutes {
                        let legs = if into { "projections" } else { "injections" };
                        failures.push(format!("{tag}: {what}ing does not commute with the {legs}"));
                    }
                    let mediating: Vec<&C::Mor> = hs
                        .iter()
                        .zip(&legs)
                        .filter(|(_, l)| **l == (Some(i), Some(j)))
                        .map(|(k, _)| k)
                        .collect();
                    if mediating.len() != 1 {
                        failures.push(format!("{tag}: {} mediating morphisms", mediating.len()));
                    } else if !model.equal(mediating[0], &h)? {
                        failures.push(format!("{tag}: the unique mediating morphism is not the {what}ing"));
                    }
                }
            }
        }
    }
    Ok(UniversalReport { cases, failures })
}

/// (A⊗B)⊕(C⊗D) → (A⊕C)⊗(B⊕D) through the diagonal of the source and the projections.
pub fn mu_zero<C: Smldc>(model: &C, bs: [&MedialBimonoid<C::Obj, C::Mor>; 4]) -> Result<C::Mor> {
    let [a, b, c, d] = bs;
    let ab = tensor_bimonoid(model, a, b)?;
    let cd = tensor_bimonoid(model, c, d)?;
    let src = par_bimonoid(model, &ab, &cd)?;
    let [p0ab, p1ab, _, _] = pair_recipes(model, a, b, PROJ_INJ)?;
    let [p0cd, p1cd, _, _] = pair_recipes(model, c, d, PROJ_INJ)?;
    let left = model.par_mor(&p0ab, &p0cd)?;
    let right = model.par_mor(&p1ab, &p1cd)?;
    model.compose(&src.delta, &model.tensor_mor(&left, &right)?)
}

/// The same arrow through the injections and the multiplication of the target.
pub fn mu_one<C: Smldc>(model: &C, bs: [&MedialBimonoid<C::Obj, C::Mor>; 4]) -> Result<C::Mor> {
    let [a, b, c, d] = bs;
    let ac = par_bimonoid(model, a, c)?;
    let bd = par_bimonoid(model, b, d)?;
    let tgt = tensor_bimonoid(model, &ac, &bd)?;
    let [_, _, i0ac, i1ac] = pair_recipes(model, a, c, PROJ_INJ)?;
    let [_, _, i0bd, i1bd] = pair_recipes(model, b, d, PROJ_INJ)?;
    let left = model.tensor_mor(&i0ac, &i0bd)?;
    let right = model.tensor_mor(&i1ac, &i1bd)?;
    model.compose(&model.par_mor(&left, &right)?, &tgt.mult)
}

/// π⁰, π¹, ι⁰, ι¹ for a pair of structures.
const PROJ_INJ: [&str; 4] = [
    "(id(A) * $5) ; unitTR_inv(A)",
    "($1 * id(B)) ; unitTL_inv(B)",
    "unitPR_inv(A) ; (id(A) + $7)",
    "unitPL_inv(B) ; ($3 + id(B))",
];

pub fn mu_zero_equals_mu_one<C: Smldc>(model: &C, bs: [&MedialBimonoid<C::Obj, C::Mor>; 4]) -> Result<bool> {
    let m0 = mu_zero(model, bs)?;
    let m1 = mu_one(model, bs)?;
    model.equal(&m0, &m1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuReport {
    pub quadruples: usize,
    /// Index quadruples into the set where μ⁰ ≠ μ¹.
    pub failing: Vec<[usize; 4]>,
}

/// μ⁰ = μ¹ on every quadruple drawn from `set`.
///
/// μ⁰ only reads the comonoid parts and μ¹ only the monoid parts, so each is computed
/// once per quadruple of distinct parts, from pieces shared between quadruples.
pub fn mu_zero_equals_mu_one_all<C: Smldc>(model: &C, set: &[MedialBimonoid<C::Obj, C::Mor>]) -> Result<MuReport> {
    let mut carriers: Vec<C::Obj> = Vec::new();
    let mut carrier = Vec::with_capacity(set.len());
    for b in set {
        let k = match carriers.iter().position(|c| *c == b.carrier) {
            Some(k) => k,
            None => {
                carriers.push(b.carrier.clone());
                carriers.len() - 1
            }
        };
        carrier.push(k);
    }
    let classes = |same: &dyn Fn(usize, usize) -> Result<bool>| {
        let mut reps: Vec<usize> = Vec::new();
        let mut ids = Vec::with_capacity(set.len());
        for i in 0..set.len() {
            let mut found = None;
            for (k, &r) in reps.iter().enumerate() {
                if same(r, i)? {
                    found = Some(k);
                    break;
                }
            }
            ids.push(found.unwrap_or_else(|| {
                reps.push(i);
                reps.len() - 1
            }));
        }
        Ok::<_, Error>((reps, ids))
    };
    let (co_reps, co) = classes(&|x, y| {
        let (x, y) = (&set[x], &set[y]);
        Ok(x.carrier == y.carrier && model.equal(&x.delta, &y.delta)? && model.equal(&x.counit, &y.counit)?)
    })?;
    let (mo_reps, mo) = classes(&|x, y| {
        let (x, y) = (&set[x], &set[y]);
        Ok(x.carrier == y.carrier && model.equal(&x.mult, &y.mult)? && model.equal(&x.unit, &y.unit)?)
    })?;
    let obj = |k: usize| &carriers[carrier[k]];

    // comonoid pieces for A⊗B: its diagonal and both projections
    let mut co_pairs: HashMap<[usize; 2], [C::Mor; 3]> = HashMap::new();
    for ka in 0..co_reps.len() {
        for kb in 0..co_reps.len() {
            let (x, y) = (&set[co_reps[ka]], &set[co_reps[kb]]);
            let (a, b) = (&x.carrier, &y.carrier);
            let delta = model.compose(
                &model.tensor_mor(&x.delta, &y.delta)?,
                &model.structural(Tag::FlipT, &[a.clone(), a.clone(), b.clone(), b.clone()])?,
            )?;
            let p0 = model.compose(
                &model.tensor_mor(&model.identity(a), &y.counit)?,
                &model.structural(Tag::UnitTRInv, std::slice::from_ref(a))?,
            )?;
            let p1 = model.compose(
                &model.tensor_mor(&x.counit, &model.identity(b))?,
                &model.structural(Tag::UnitTLInv, std::slice::from_ref(b))?,
            )?;
            co_pairs.insert([ka, kb], [delta, p0, p1]);
        }
    }
    // monoid pieces for A⊕B: its multiplication and both injections
    let mut mo_pairs: HashMap<[usize; 2], [C::Mor; 3]> = HashMap::new();
    for ka in 0..mo_reps.len() {
        for kb in 0..mo_reps.len() {
            let (x, y) = (&set[mo_reps[ka]], &set[mo_reps[kb]]);
            let (a, b) = (&x.carrier, &y.carrier);
            let mult = model.compose(
                &model.structural(Tag::FlipP, &[a.clone(), b.clone(), a.clone(), b.clone()])?,
                &model.par_mor(&x.mult, &y.mult)?,
            )?;
            let i0 = model.compose(
                &model.structural(Tag::UnitPRInv, std::slice::from_ref(a))?,
                &model.par_mor(&model.identity(a), &y.unit)?,
            )?;
            let i1 = model.compose(
                &model.structural(Tag::UnitPLInv, std::slice::from_ref(b))?,
                &model.par_mor(&x.unit, &model.identity(b))?,
            )?;
            mo_pairs.insert([ka, kb], [mult, i0, i1]);
        }
    }
    // medial(A⊗B, A⊗B, C⊗D, C⊗D) for μ⁰ and medial(A⊕C, B⊕D, A⊕C, B⊕D) for μ¹, by carriers
    let mut medials: HashMap<([usize; 4], bool), C::Mor> = HashMap::new();
    let mut medial = |idx: [usize; 4], zero: bool| -> Result<C::Mor> {
        let key = (idx.map(|i| carrier[i]), zero);
        if let Some(m) = medials.get(&key) {
            return Ok(m.clone());
        }
        let [a, b, c, d] = idx.map(obj);
        let m = if zero {
            let (ab, cd) = (model.tensor_obj(a, b)?, model.tensor_obj(c, d)?);
            model.structural(Tag::Medial, &[ab.clone(), ab, cd.clone(), cd])?
        } else {
            let (ac, bd) = (model.par_obj(a, c)?, model.par_obj(b, d)?);
            model.structural(Tag::Medial, &[ac.clone(), bd.clone(), ac, bd])?
        };
        medials.insert(key, m.clone());
        Ok(m)
    };
    let mut zeros: HashMap<[usize; 4], C::Mor> = HashMap::new();
    let mut ones: HashMap<[usize; 4], C::Mor> = HashMap::new();
    let mut verdicts: HashMap<([usize; 4], [usize; 4]), bool> = HashMap::new();
    let n = set.len();
    let mut failing = Vec::new();
    let mut quadruples = 0;
    for q in 0..n.pow(4) {
        let idx = [q / (n * n * n), q / (n * n) % n, q / n % n, q % n];
        let k0 = idx.map(|i| co[i]);
        let k1 = idx.map(|i| mo[i]);
        quadruples += 1;
        let ok = match verdicts.get(&(k0, k1)) {
            Some(&v) => v,
            None => {
                if !zeros.contains_key(&k0) {
                    let [dab, p0ab, p1ab] = &co_pairs[&[k0[0], k0[1]]];
                    let [dcd, p0cd, p1cd] = &co_pairs[&[k0[2], k0[3]]];
                    let delta = model.compose(&model.par_mor(dab, dcd)?, &medial(idx, true)?)?;
                    let legs = model.tensor_mor(&model.par_mor(p0ab, p0cd)?, &model.par_mor(p1ab, p1cd)?)?;
                    zeros.insert(k0, model.compose(&delta, &legs)?);
                }
                if !ones.contains_key(&k1) {
                    let [mac, i0ac, i1ac] = &mo_pairs[&[k1[0], k1[2]]];
                    let [mbd, i0bd, i1bd] = &mo_pairs[&[k1[1], k1[3]]];
                    let mult = model.compose(&medial(idx, false)?, &model.tensor_mor(mac, mbd)?)?;
                    let legs = model.par_mor(&model.tensor_mor(i0ac, i0bd)?, &model.tensor_mor(i1ac, i1bd)?)?;
                    ones.insert(k1, model.compose(&legs, &mult)?);
                }
                let v = model.equal(&zeros[&k0], &ones[&k1])?;
                verdicts.insert((k0, k1), v);
                v
            }
        };
        if !ok {
            failing.push(idx);
        }
    }
    Ok(MuReport { quadruples, failing })
}

/// A posetal SMLDC viewed as a thin category: an arrow `a → b` exists iff `a ≤ b`.
#[derive(Debug, Clone)]
pub struct Posetal {
    pub algebra: Arc<PosetalSMLDC>,
}

impl Posetal {
    pub fn new(algebra: Arc<PosetalSMLDC>) -> Self {
        Posetal { algebra }
    }

    fn arrow(&self, a: usize, b: usize, what: &str) -> Result<(usize, usize)> {
        if a >= self.algebra.size() || b >= self.algebra.size() {
            return Err(Error::IndexOutOfRange {
                index: a.max(b),
                size: self.algebra.size(),
            });
        }
        if self.algebra.le(a, b) {
            Ok((a, b))
        } else {
            Err(Error::Incompatible(format!("{what}: {a} is not below {b}")))
        }
    }
}

impl Smldc for Posetal {
    type Obj = usize;
    type Mor = (usize, usize);

    fn tensor_unit(&self) -> usize {
        self.algebra.top
    }

    fn par_unit(&self) -> usize {
        self.algebra.bot
    }

    fn tensor_obj(&self, a: &usize, b: &usize) -> Result<usize> {
        Ok(self.algebra.t(*a, *b))
    }

    fn par_obj(&self, a: &usize, b: &usize) -> Result<usize> {
        Ok(self.algebra.p(*a, *b))
    }

    fn src(&self, f: &(usize, usize)) -> usize {
        f.0
    }

    fn tgt(&self, f: &(usize, usize)) -> usize {
        f.1
    }

    fn identity(&self, a: &usize) -> (usize, usize) {
        (*a, *a)
    }

    fn compose(&self, f: &(usize, usize), g: &(usize, usize)) -> Result<(usize, usize)> {
        if f.1 != g.0 {
            return Err(Error::Endpoint("target of the first arrow is not the source of the second".into()));
        }
        Ok((f.0, g.1))
    }

    fn tensor_mor_at(&self, _: &(usize, usize), _: &(usize, usize), src: &usize, tgt: &usize) -> Result<(usize, usize)> {
        self.arrow(*src, *tgt, "tensor")
    }

    fn par_mor_at(&self, _: &(usize, usize), _: &(usize, usize), src: &usize, tgt: &usize) -> Result<(usize, usize)> {
        self.arrow(*src, *tgt, "par")
    }

    fn structural_at(&self, tag: Tag, params: &[usize], src: &usize, tgt: &usize) -> Result<(usize, usize)> {
        tag.check_arity(params.len())?;
        self.arrow(*src, *tgt, tag.name())
    }

    fn difference(&self, f: &(usize, usize), g: &(usize, usize)) -> Result<Option<(usize, usize)>> {
        if f != g {
            return Err(Error::Endpoint("compared arrows have different endpoints".into()));
        }
        Ok(None)
    }
}

impl FiniteHoms for Posetal {
    fn hom_set(&self, a: &usize, b: &usize) -> Result<Vec<(usize, usize)>> {
        Ok(self.arrow(*a, *b, "hom").into_iter().collect())
    }

    fn drop_pair(&self, _: &(usize, usize), _: usize) -> Option<(usize, usize)> {
        None
    }
}

/// A posetal SMLDC whose ⊗ is meet, ⊕ join, ⊤ greatest and ⊥ least.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetalCLDC(Arc<PosetalSMLDC>);

impl PosetalCLDC {
    pub fn new(p: PosetalSMLDC) -> Result<Self> {
        is_cartesian_posetal(&p)?;
        Ok(PosetalCLDC(Arc::new(p)))
    }

    pub fn algebra(&self) -> &Arc<PosetalSMLDC> {
        &self.0
    }
}

/// Checks meets, joins and bounds by enumeration.
pub fn is_cartesian_posetal(p: &PosetalSMLDC) -> Result<()> {
    let n = p.size();
    let o = &p.carrier;
    if !crate::palgebra::validate_posetal_smldc(p)?.is_empty() {
        return Err(Error::NotCartesian("not a posetal SMLDC".into()));
    }
    if (0..n).any(|x| !o.le(x, p.top)) {
        return Err(Error::NotCartesian("the tensor unit is not greatest".into()));
    }
    if (0..n).any(|x| !o.le(p.bot, x)) {
        return Err(Error::NotCartesian("the par unit is not least".into()));
    }
    for a in 0..n {
        for b in 0..n {
            let m = p.t(a, b);
            if !(o.le(m, a) && o.le(m, b) && (0..n).all(|x| !(o.le(x, a) && o.le(x, b)) || o.le(x, m))) {
                return Err(Error::NotCartesian(format!("tensor of {a} and {b} is not their meet")));
            }
            let j = p.p(a, b);
            if !(o.le(a, j) && o.le(b, j) && (0..n).all(|x| !(o.le(a, x) && o.le(b, x)) || o.le(j, x))) {
                return Err(Error::NotCartesian(format!("par of {a} and {b} is not their join")));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoxReport {
    /// Number of bimonoid structures found on each element.
    pub bimonoids_per_element: Vec<usize>,
    /// Objects of B[X].
    pub b_size: usize,
    pub eta_bijective: bool,
    pub eta_full: bool,
    pub eta_faithful: bool,
    /// ε ∘ η = id on X.
    pub triangle_x: bool,
    /// B(ε) ∘ η_{B[X]} = id on B[X].
    pub triangle_b: bool,
}

impl FoxReport {
    pub fn pass(&self) -> bool {
        self.bimonoids_per_element.iter().all(|&k| k == 1)
            && self.eta_bijective
            && self.eta_full
            && self.eta_faithful
            && self.triangle_x
            && self.triangle_b
    }
}

/// Builds B[X] for a posetal CLDC and checks the unit and counit of the Fox adjunction.
pub fn fox_round_trip(x: &PosetalCLDC) -> Result<FoxReport> {
    let model = Posetal::new(x.algebra().clone());
    let n = x.algebra().size();
    let mut per = Vec::with_capacity(n);
    // objects of B[X]: (element, structure)
    let mut objects: Vec<MedialBimonoid<usize, (usize, usize)>> = Vec::new();
    for a in 0..n {
        let bs = enumerate_bimonoids_in(&model, &a)?;
        per.push(bs.len());
        objects.extend(bs);
    }
    let eta: Vec<Option<usize>> = (0..n)
        .map(|a| {
            let hits: Vec<usize> = (0..objects.len()).filter(|&i| objects[i].carrier == a).collect();
            (hits.len() == 1).then(|| hits[0])
        })
        .collect();
    let eta_bijective = objects.len() == n && eta.iter().all(Option::is_some);
    let epsilon: Vec<usize> = objects.iter().map(|b| b.carrier).collect();

    let (mut full, mut faithful) = (true, true);
    for a in 0..n {
        for b in 0..n {
            let (Some(ia), Some(ib)) = (eta[a], eta[b]) else {
                continue;
            };
            let homs_x = model.hom_set(&a, &b)?.len();
            let homs_b = bimonoid_morphisms(&model, &objects[ia], &objects[ib])?.len();
            full &= homs_b >= homs_x;
            faithful &= homs_b <= homs_x;
        }
    }
    let triangle_x = (0..n).all(|a| eta[a].map(|i| epsilon[i]) == Some(a));
    // η at B[X] sends each bimonoid to the unique structure on it, which is itself.
    let triangle_b = objects.iter().enumerate().all(|(i, b)| {
        enumerate_bimonoids_in(&model, &b.carrier)
            .map(|again| again.len() == 1 && again[0] == *b && eta[epsilon[i]] == Some(i))
            .unwrap_or(false)
    });
    Ok(FoxReport {
        bimonoids_per_element: per,
        b_size: objects.len(),
        eta_bijective,
        eta_full: full,
        eta_faithful: faithful,
        triangle_x,
        triangle_b,
    })
}
