//! The catalog of coherence equations and the engine that sweeps them over probe objects.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::category::{parse_recipe, Evaluator, MorExpr, Smldc};
use crate::palgebra::PosetalSMLDC;
use crate::pcoh::{self, ObjectJson, PCoh, PCohObject};
use crate::{Error, Result};

/// A named equation between two composites over `arity` object parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramCheck {
    pub name: String,
    pub group: String,
    pub arity: usize,
    /// Parameter letters, in order.
    pub vars: String,
    pub lhs: String,
    pub rhs: String,
}

impl DiagramCheck {
    pub fn parsed(&self) -> Result<(MorExpr, MorExpr)> {
        Ok((
            parse_recipe(&self.lhs, &self.vars, &[])?,
            parse_recipe(&self.rhs, &self.vars, &[])?,
        ))
    }

    /// Compactness checks need an invertible nullary mix.
    pub fn needs_compact(&self) -> bool {
        self.group == "Compactness"
    }
}

const V4: &str = "ABCD";
const V6: &str = "ABCDEF";
const V5: &str = "ABCDX";

#[rustfmt::skip]
const CATALOG: &[(&str, &str, &str, &str, &str)] = &[
    ("MC.1T", "MC", V6,
     "assocT(A*B,C,D) ; assocT(A,B,C*D)",
     "(assocT(A,B,C) * id(D)) ; assocT(A,B*C,D) ; (id(A) * assocT(B,C,D))"),
    ("MC.1P", "MC", V6,
     "assocP(A,B,C+D) ; assocP(A+B,C,D)",
     "(id(A) + assocP(B,C,D)) ; assocP(A,B+C,D) ; (assocP(A,B,C) + id(D))"),
    ("MC.2T", "MC", V6,
     "(unitTR(A) * id(B)) ; assocT(A,1,B)",
     "id(A) * unitTL(B)"),
    ("MC.2P", "MC", V6,
     "assocP(A,0,B) ; (unitPR(A) + id(B))",
     "id(A) + unitPL(B)"),
    ("BMC.1Ta", "BMC", V6,
     "assocT(A,B,C) ; braidT(A,B*C) ; assocT(B,C,A)",
     "(braidT(A,B) * id(C)) ; assocT(B,A,C) ; (id(B) * braidT(A,C))"),
    ("BMC.1Tb", "BMC", V6,
     "assocT_inv(A,B,C) ; braidT(A*B,C) ; assocT_inv(C,A,B)",
     "(id(A) * braidT(B,C)) ; assocT_inv(A,C,B) ; (braidT(A,C) * id(B))"),
    ("BMC.1Pa", "BMC", V6,
     "assocP_inv(A,B,C) ; braidP(A,B+C) ; assocP_inv(B,C,A)",
     "(braidP(A,B) + id(C)) ; assocP_inv(B,A,C) ; (id(B) + braidP(A,C))"),
    ("BMC.1Pb", "BMC", V6,
     "assocP(A,B,C) ; braidP(A+B,C) ; assocP(C,A,B)",
     "(id(A) + braidP(B,C)) ; assocP(A,C,B) ; (braidP(A,C) + id(B))"),
    ("BMC.2T", "BMC", V6,
     "unitTR(A) ; braidT(A,1)",
     "unitTL(A)"),
    ("BMC.2P", "BMC", V6,
     "braidP(0,A) ; unitPR(A)",
     "unitPL(A)"),
    ("SMC.T", "SMC", V6,
     "braidT(A,B) ; braidT(B,A)",
     "id(A*B)"),
    ("SMC.P", "SMC", V6,
     "braidP(A,B) ; braidP(B,A)",
     "id(A+B)"),
    ("CCM.bot", "CM", V6,
     "contractionBot ; braidT(0,0)",
     "contractionBot"),
    ("CM.top", "CM", V6,
     "braidP(1,1) ; cocontractionTop",
     "cocontractionTop"),
    ("LDC.1a", "LDC", V6,
     "unitTL(A+B) ; deltaL(1,A,B)",
     "unitTL(A) + id(B)"),
    ("LDC.1b", "LDC", V6,
     "unitTR(A+B) ; deltaR(A,B,1)",
     "id(A) + unitTR(B)"),
    ("LDC.1c", "LDC", V6,
     "deltaR(0,A,B) ; unitPL(A*B)",
     "unitPL(A) * id(B)"),
    ("LDC.1d", "LDC", V6,
     "deltaL(A,B,0) ; unitPR(A*B)",
     "id(A) * unitPR(B)"),
    ("LDC.2a", "LDC", V6,
     "deltaL(A*B,C,D) ; (assocT(A,B,C) + id(D))",
     "assocT(A,B,C+D) ; (id(A) * deltaL(B,C,D)) ; deltaL(A,B*C,D)"),
    ("LDC.2b", "LDC", V6,
     "assocT(A+B,C,D) ; deltaR(A,B,C*D)",
     "(deltaR(A,B,C) * id(D)) ; deltaR(A,B*C,D) ; (id(A) + assocT(B,C,D))"),
    ("LDC.2c", "LDC", V6,
     "deltaL(A,B,C+D) ; assocP(A*B,C,D)",
     "(id(A) * assocP(B,C,D)) ; deltaL(A,B+C,D) ; (deltaL(A,B,C) + id(D))"),
    ("LDC.2d", "LDC", V6,
     "(assocP(A,B,C) * id(D)) ; deltaR(A+B,C,D)",
     "deltaR(A,B+C,D) ; (id(A) + deltaR(B,C,D)) ; assocP(A,B,C*D)"),
    ("LDC.3a", "LDC", V6,
     "deltaL(A+B,C,D) ; (deltaR(A,B,C) + id(D))",
     "deltaR(A,B,C+D) ; (id(A) + deltaL(B,C,D)) ; assocP(A,B*C,D)"),
    ("LDC.3b", "LDC", V6,
     "(deltaL(A,B,C) * id(D)) ; deltaR(A*B,C,D)",
     "assocT(A,B+C,D) ; (id(A) * deltaR(B,C,D)) ; deltaL(A,B,C*D)"),
    ("SLDC", "SLDC", V6,
     "deltaR(A,B,C)",
     "braidT(A+B,C) ; (id(C) * braidP(A,B)) ; deltaL(C,B,A) ; (braidT(C,B) + id(A)) ; braidP(B*C,A)"),
    ("MIX", "MIX", V6,
     "(id(A) * unitPL_inv(B)) ; (id(A) * (nullaryMix + id(B))) ; deltaL(A,1,B) ; (unitTR_inv(A) + id(B))",
     "(unitPR_inv(A) * id(B)) ; ((id(A) + nullaryMix) * id(B)) ; deltaR(A,1,B) ; (id(A) + unitTL_inv(B))"),
    ("MIX.lemma", "MIX", "",
     "(id(0) * nullaryMix) ; unitTR_inv(0)",
     "(nullaryMix * id(0)) ; unitTL_inv(0)"),
    ("MIX.binary", "MIX", V6,
     "binaryMix(A,B)",
     "(unitPR_inv(A) * id(B)) ; ((id(A) + nullaryMix) * id(B)) ; deltaR(A,1,B) ; (id(A) + unitTL_inv(B))"),
    ("DUO.1a", "DUO", V6,
     "assocP_inv(A*B,C*D,E*F) ; (id(A*B) + medial(C,D,E,F)) ; medial(A,B,C+E,D+F)",
     "(medial(A,B,C,D) + id(E*F)) ; medial(A+C,B+D,E,F) ; (assocP_inv(A,C,E) * assocP_inv(B,D,F))"),
    ("DUO.1b", "DUO", V6,
     "medial(A*B,C,D*E,F) ; (medial(A,B,D,E) * id(C+F)) ; assocT(A+D,B+E,C+F)",
     "(assocT(A,B,C) + assocT(D,E,F)) ; medial(A,B*C,D,E*F) ; (id(A+D) * medial(B,C,E,F))"),
    ("DUO.2a", "DUO", V6,
     "unitPL_inv(A*B) ; (contractionBot + id(A*B)) ; medial(0,0,A,B)",
     "unitPL_inv(A) * unitPL_inv(B)"),
    ("DUO.2b", "DUO", V6,
     "unitPR_inv(A*B) ; (id(A*B) + contractionBot) ; medial(A,B,0,0)",
     "unitPR_inv(A) * unitPR_inv(B)"),
    ("DUO.2c", "DUO", V6,
     "(unitTL(A) + unitTL(B)) ; medial(1,A,1,B) ; (cocontractionTop * id(A+B))",
     "unitTL(A+B)"),
    ("DUO.2d", "DUO", V6,
     "(unitTR(A) + unitTR(B)) ; medial(A,1,B,1) ; (id(A+B) * cocontractionTop)",
     "unitTR(A+B)"),
    ("BDUO.a", "BDUO", V6,
     "medial(A,B,C,D) ; braidT(A+C,B+D)",
     "(braidT(A,B) + braidT(C,D)) ; medial(B,A,D,C)"),
    ("BDUO.b", "BDUO", V6,
     "medial(A,B,C,D) ; (braidP(A,C) * braidP(B,D))",
     "braidP(A*B,C*D) ; medial(C,D,A,B)"),
    ("SymDuoFlip.tauT", "SymDuoFlip", V4,
     "flipT(A,B,C,D)",
     "assocT(A,B,C*D) ; (id(A) * assocT_inv(B,C,D)) ; (id(A) * (braidT(B,C) * id(D))) ; (id(A) * assocT(C,B,D)) ; assocT_inv(A,C,B*D)"),
    ("SymDuoFlip.tauP", "SymDuoFlip", V4,
     "flipP(A,B,C,D)",
     "assocP_inv(A,B,C+D) ; (id(A) + assocP(B,C,D)) ; (id(A) + (braidP(B,C) + id(D))) ; (id(A) + assocP_inv(C,B,D)) ; assocP(A,C,B+D)"),
    ("SymDuoFlip.a", "SymDuoFlip", V6,
     "contractionBot ; (contractionBot * contractionBot) ; flipT(0,0,0,0)",
     "contractionBot ; (contractionBot * contractionBot)"),
    ("SymDuoFlip.b", "SymDuoFlip", V6,
     "(cocontractionTop + cocontractionTop) ; cocontractionTop",
     "flipP(1,1,1,1) ; (cocontractionTop + cocontractionTop) ; cocontractionTop"),
    ("SymDuoFlip.c", "SymDuoFlip", "ABCDEFGH",
     "medial(A*E,B*F,C*G,D*H) ; (medial(A,E,C,G) * medial(B,F,D,H)) ; flipT(A+C,E+G,B+D,F+H)",
     "(flipT(A,E,B,F) + flipT(C,G,D,H)) ; medial(A*B,E*F,C*D,G*H) ; (medial(A,B,C,D) * medial(E,F,G,H))"),
    ("SymDuoFlip.d", "SymDuoFlip", "ABCDEFGH",
     "flipP(A*E,B*F,C*G,D*H) ; (medial(A,E,C,G) + medial(B,F,D,H)) ; medial(A+C,E+G,B+D,F+H)",
     "(medial(A,E,B,F) + medial(C,G,D,H)) ; medial(A+B,E+F,C+D,G+H) ; (flipP(A,B,C,D) * flipP(E,F,G,H))"),
    ("MLDC.1a", "MLDC", V5,
     "(medial(A,B,C,D) * id(X)) ; assocT(A+C,B+D,X) ; (id(A+C) * deltaR(B,D,X))",
     "deltaR(A*B,C*D,X) ; (id(A*B) + assocT(C,D,X)) ; medial(A,B,C,D*X)"),
    ("MLDC.1b", "MLDC", V5,
     "(id(X) * medial(A,B,C,D)) ; assocT_inv(X,A+C,B+D) ; (deltaL(X,A,C) * id(B+D))",
     "deltaL(X,A*B,C*D) ; (assocT_inv(X,A,B) + id(C*D)) ; medial(X*A,B,C,D)"),
    ("MLDC.1c", "MLDC", V5,
     "(deltaR(X,A,B) + id(C*D)) ; assocP_inv(X,A*B,C*D) ; (id(X) + medial(A,B,C,D))",
     "medial(X+A,B,C,D) ; (assocP_inv(X,A,C) * id(B+D)) ; deltaR(X,A+C,B+D)"),
    ("MLDC.1d", "MLDC", V5,
     "(id(A*B) + deltaL(C,D,X)) ; assocP(A*B,C*D,X) ; (medial(A,B,C,D) + id(X))",
     "medial(A,B,C,D+X) ; (id(A+C) * assocP(B,D,X)) ; deltaL(A+C,B+D,X)"),
    ("MLDC.2a", "MLDC", V6,
     "contractionBot ; (id(0) * contractionBot)",
     "contractionBot ; (contractionBot * id(0)) ; assocT(0,0,0)"),
    ("MLDC.2b", "MLDC", V6,
     "(id(1) + cocontractionTop) ; cocontractionTop",
     "assocP(1,1,1) ; (cocontractionTop + id(1)) ; cocontractionTop"),
    ("MLDC.2c", "MLDC", V6,
     "contractionBot ; (id(0) * nullaryMix)",
     "unitTR(0)"),
    ("MLDC.2d", "MLDC", V6,
     "contractionBot ; (nullaryMix * id(0))",
     "unitTL(0)"),
    ("MLDC.2e", "MLDC", V6,
     "(id(1) + nullaryMix) ; cocontractionTop",
     "unitPR(1)"),
    ("MLDC.2f", "MLDC", V6,
     "(nullaryMix + id(1)) ; cocontractionTop",
     "unitPL(1)"),
    ("MLDC.3a", "MLDC", V6,
     "medial(A*B,C,D*E,F) ; (medial(A,B,D,E) * id(C+F)) ; assocT(A+D,B+E,C+F)",
     "(assocT(A,B,C) + assocT(D,E,F)) ; medial(A,B*C,D,E*F) ; (id(A+D) * medial(B,C,E,F))"),
    ("MLDC.3b", "MLDC", V6,
     "assocP(A*B,C*D,E*F) ; (medial(A,B,C,D) + id(E*F)) ; medial(A+C,B+D,E,F)",
     "(id(A*B) + medial(C,D,E,F)) ; medial(A,B,C+E,D+F) ; (assocP(A,C,E) * assocP(B,D,F))"),
    ("MLDC.4a", "MLDC", V6,
     "(contractionBot + id(A*B)) ; medial(0,0,A,B) ; (unitPL(A) * unitPL(B))",
     "unitPL(A*B)"),
    ("MLDC.4b", "MLDC", V6,
     "(id(A*B) + contractionBot) ; medial(A,B,0,0) ; (unitPR(A) * unitPR(B))",
     "unitPR(A*B)"),
    ("MLDC.4c", "MLDC", V6,
     "(unitTL(A) + unitTL(B)) ; medial(1,A,1,B) ; (cocontractionTop * id(A+B))",
     "unitTL(A+B)"),
    ("MLDC.4d", "MLDC", V6,
     "(unitTR(A) + unitTR(B)) ; medial(A,1,B,1) ; (id(A+B) * cocontractionTop)",
     "unitTR(A+B)"),
    ("NullaryMix.a", "NullaryMixComposites", V6,
     "nullaryMix",
     "unitPR_inv(0) ; (unitTR(0) + unitTL(0)) ; medial(0,1,1,0) ; (unitPL(1) * unitPR(1)) ; unitTR_inv(1)"),
    ("NullaryMix.b", "NullaryMixComposites", V6,
     "nullaryMix",
     "unitPR_inv(0) ; (unitTL(0) + unitTR(0)) ; medial(1,0,0,1) ; (unitPR(1) * unitPL(1)) ; unitTR_inv(1)"),
    ("FlipMedialDist.a", "FlipMedialDist", V6,
     "deltaL(A*B,C*D,E*F) ; (flipT(A,B,C,D) + id(E*F)) ; medial(A*C,B*D,E,F)",
     "(id(A*B) * medial(C,D,E,F)) ; flipT(A,B,C+E,D+F) ; (deltaL(A,C,E) * deltaL(B,D,F))"),
    ("FlipMedialDist.b", "FlipMedialDist", V6,
     "medial(A,B+C,D,E+F) ; (id(A+D) * flipP(B,C,E,F)) ; deltaL(A+D,B+E,C+F)",
     "(deltaL(A,B,C) + deltaL(D,E,F)) ; flipP(A*B,C,D*E,F) ; (medial(A,B,D,E) + id(C+F))"),
    ("MixFlipSquare.a", "MixFlipSquare", V4,
     "medial(A,B,C,D) ; binaryMix(A+C,B+D)",
     "(binaryMix(A,B) + binaryMix(C,D)) ; flipP(A,B,C,D)"),
    ("MixFlipSquare.b", "MixFlipSquare", V4,
     "flipT(A,B,C,D) ; (binaryMix(A,C) * binaryMix(B,D))",
     "binaryMix(A*B,C*D) ; medial(A,B,C,D)"),
    ("Compactness.LR", "Compactness", V6,
     "deltaL(A,B,C) ; partialR(A,B,C)",
     "id(A*(B+C))"),
    ("Compactness.RL", "Compactness", V6,
     "partialR(A,B,C) ; deltaL(A,B,C)",
     "id((A*B)+C)"),
    ("Compactness.RL'", "Compactness", V6,
     "deltaR(A,B,C) ; partialL(A,B,C)",
     "id((A+B)*C)"),
    ("Compactness.LR'", "Compactness", V6,
     "partialL(A,B,C) ; deltaR(A,B,C)",
     "id(A+(B*C))"),
    ("AltSMLDC.lindist-braid-a", "AltSMLDC", V5,
     "(id(X) * medial(A,B,C,D)) ; assocT_inv(X,A+C,B+D) ; (braidT(X,A+C) * id(B+D)) ; assocT(A+C,X,B+D) ; (id(A+C) * deltaL(X,B,D))",
     "deltaL(X,A*B,C*D) ; (assocT_inv(X,A,B) + id(C*D)) ; ((braidT(X,A) * id(B)) + id(C*D)) ; (assocT(A,X,B) + id(C*D)) ; medial(A,X*B,C,D)"),
    ("AltSMLDC.lindist-braid-b", "AltSMLDC", V5,
     "(deltaL(A,B,X) + id(C*D)) ; assocP_inv(A*B,X,C*D) ; (id(A*B) + braidP(X,C*D)) ; assocP(A*B,C*D,X) ; (medial(A,B,C,D) + id(X))",
     "medial(A,B+X,C,D) ; (id(A+C) * assocP_inv(B,X,D)) ; (id(A+C) * (id(B) + braidP(X,D))) ; (id(A+C) * assocP(B,D,X)) ; deltaL(A+C,B+D,X)"),
    ("AltSMLDC.LDC3'a", "AltSMLDC", V4,
     "assocT(A,B,C+D) ; (id(A) * deltaL(B,C,D)) ; (id(A) * braidP(B*C,D)) ; deltaL(A,D,B*C) ; braidP(A*D,B*C)",
     "(braidT(A,B) * braidP(C,D)) ; assocT(B,A,D+C) ; (id(B) * deltaL(A,D,C)) ; (id(B) * braidP(A*D,C)) ; deltaL(B,C,A*D)"),
    ("AltSMLDC.LDC3'b", "AltSMLDC", V4,
     "braidT(A+B,C+D) ; deltaL(C+D,A,B) ; (braidT(C+D,A) + id(B)) ; (deltaL(A,C,D) + id(B)) ; assocP_inv(A*C,D,B)",
     "deltaL(A+B,C,D) ; (braidT(A+B,C) + id(D)) ; (deltaL(C,A,B) + id(D)) ; assocP_inv(C*A,B,D) ; (braidT(C,A) + braidP(B,D))"),
];

/// The prefix of `vars` the two sides actually mention.
fn used_vars(vars: &str, lhs: &str, rhs: &str) -> String {
    let top = [lhs, rhs]
        .iter()
        .filter_map(|side| parse_recipe(side, vars, &[]).expect("catalog recipe parses").max_var())
        .max();
    vars.chars().take(top.map_or(0, |m| m + 1)).collect()
}

/// The fixed, ordered list of coherence equations.
pub fn catalog() -> Vec<DiagramCheck> {
    CATALOG
        .iter()
        .map(|&(name, group, vars, lhs, rhs)| {
            let vars = used_vars(vars, lhs, rhs);
            DiagramCheck {
                name: name.into(),
                group: group.into(),
                arity: vars.len(),
                vars,
                lhs: lhs.into(),
                rhs: rhs.into(),
            }
        })
        .collect()
}

pub fn find_check(name: &str) -> Option<DiagramCheck> {
    catalog().into_iter().find(|c| c.name == name)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Pass,
    /// First differing entry of the two relations, row-major.
    Counterexample { entry: (usize, usize) },
}

/// Evaluates both sides at `objs` and compares them.
pub fn run_check<C: Smldc>(c: &DiagramCheck, model: &C, objs: &[C::Obj]) -> Result<Outcome> {
    let (l, r) = c.parsed()?;
    run_parsed(c, &l, &r, model, objs)
}

fn run_parsed<C: Smldc>(c: &DiagramCheck, l: &MorExpr, r: &MorExpr, model: &C, objs: &[C::Obj]) -> Result<Outcome> {
    if objs.len() != c.arity {
        return Err(Error::Arity {
            tag: c.name.clone(),
            expected: c.arity,
            got: objs.len(),
        });
    }
    let mut ev = Evaluator::new(model, objs);
    let lm = ev.mor(l)?;
    let rm = ev.mor(r)?;
    Ok(match model.difference(&lm, &rm)? {
        None => Outcome::Pass,
        Some(entry) => Outcome::Counterexample { entry },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    /// Run every tuple when there are at most this many.
    pub exhaustive_limit: u64,
    /// Otherwise draw this many tuples uniformly.
    pub sample_size: usize,
    /// Stop the whole sweep at the first failing tuple.
    pub stop_at_first_failure: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            exhaustive_limit: 100_000,
            sample_size: 10_000,
            stop_at_first_failure: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub objs: Vec<ObjectJson>,
    /// First differing relation entry; absent when evaluation itself failed.
    pub entry: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub group: String,
    pub tuples: u64,
    pub sampled: bool,
    pub passed: u64,
    pub failed: u64,
    /// The first counterexample, if any.
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub max_obj_size: usize,
    pub seed: u64,
    pub probe_objects: usize,
    pub checks: Vec<CheckReport>,
    /// Checks not applicable to this model.
    pub skipped: Vec<String>,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn failing(&self) -> Vec<&CheckReport> {
        self.checks.iter().filter(|c| c.failed > 0).collect()
    }
}

/// The tuples a check is run on: every tuple, or a seeded sample.
pub fn tuples_for(n_objs: usize, arity: usize, seed: u64, stream: u64, cfg: &SweepConfig) -> (Vec<Vec<usize>>, bool) {
    let total = (n_objs as u64).checked_pow(arity as u32);
    match total {
        Some(t) if t <= cfg.exhaustive_limit => {
            let t = t as usize;
            let tuples = (0..t)
                .map(|mut code| {
                    let mut tup = vec![0; arity];
                    for slot in tup.iter_mut().rev() {
                        *slot = code % n_objs;
                        code /= n_objs;
                    }
                    tup
                })
                .collect();
            (tuples, false)
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream);
            let tuples = (0..cfg.sample_size)
                .map(|_| (0..arity).map(|_| rng.gen_range(0..n_objs)).collect())
                .collect();
            (tuples, true)
        }
    }
}

pub fn sweep(model: &PCoh, max_obj_size: usize, seed: u64) -> SweepReport {
    sweep_with(model, max_obj_size, seed, &catalog(), &SweepConfig::default())
}

/// Runs `checks` over all probe objects of `model` up to `max_obj_size` points.
pub fn sweep_with(
    model: &PCoh,
    max_obj_size: usize,
    seed: u64,
    checks: &[DiagramCheck],
    cfg: &SweepConfig,
) -> SweepReport {
    let probes = pcoh::probe_objects(&model.algebra, max_obj_size);
    let compact = model.algebra.top == model.algebra.bot;
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for (index, c) in checks.iter().enumerate() {
        if c.needs_compact() && !compact {
            skipped.push(c.name.clone());
            continue;
        }
        let stream = catalog_stream(&c.name, index);
        let (tuples, sampled) = tuples_for(probes.len(), c.arity, seed, stream, cfg);
        let rep = run_on_tuples(model, c, &probes, &tuples, sampled, cfg.stop_at_first_failure);
        let stop = cfg.stop_at_first_failure && rep.failed > 0;
        reports.push(rep);
        if stop {
            break;
        }
    }
    SweepReport {
        max_obj_size,
        seed,
        probe_objects: probes.len(),
        checks: reports,
        skipped,
    }
}

/// The sampling stream of a check: its catalog position, so subsets sample like the full sweep.
fn catalog_stream(name: &str, fallback: usize) -> u64 {
    CATALOG
        .iter()
        .position(|e| e.0 == name)
        .unwrap_or(fallback) as u64
}

fn run_on_tuples(
    model: &PCoh,
    c: &DiagramCheck,
    probes: &[PCohObject],
    tuples: &[Vec<usize>],
    sampled: bool,
    stop_early: bool,
) -> CheckReport {
    let parsed = c.parsed();
    let eval = |i: usize| -> Option<Failure> {
        let objs: Vec<PCohObject> = tuples[i].iter().map(|&k| probes[k].clone()).collect();
        let res = match &parsed {
            Ok((l, r)) => run_parsed(c, l, r, model, &objs),
            Err(e) => Err(e.clone()),
        };
        let to_json = || objs.iter().map(|o| o.to_json()).collect();
        match res {
            Ok(Outcome::Pass) => None,
            Ok(Outcome::Counterexample { entry }) => Some(Failure {
                objs: to_json(),
                entry: Some(entry),
                error: None,
            }),
            Err(e) => Some(Failure {
                objs: to_json(),
                entry: None,
                error: Some(e.to_string()),
            }),
        }
    };
    let (failed, first, tuples_run) = if stop_early {
        match crate::par_find_first(tuples.len(), |i| eval(i).map(|f| (i, f))) {
            Some((i, f)) => (1, Some(f), i as u64 + 1),
            None => (0, None, tuples.len() as u64),
        }
    } else {
        let results = crate::par_map(tuples.len(), eval);
        let failed = results.iter().filter(|r| r.is_some()).count() as u64;
        (failed, results.into_iter().flatten().next(), tuples.len() as u64)
    };
    CheckReport {
        check: c.name.clone(),
        group: c.group.clone(),
        tuples: tuples_run,
        sampled,
        passed: tuples_run - failed,
        failed,
        failures: first.into_iter().collect(),
    }
}

/// Convenience: sweep over an algebra with the unmutated model.
pub fn sweep_algebra(p: &Arc<PosetalSMLDC>, max_obj_size: usize, seed: u64) -> SweepReport {
    sweep(&PCoh::new(p.clone()), max_obj_size, seed)
}
