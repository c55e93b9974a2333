use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::formula::Formula;
use crate::poset::{self, FinPoset};
use crate::{Error, Result, Violation};

/// A finite posetal symmetric medial linearly distributive category: the weight algebra P.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PosetalSMLDC {
    #[serde(rename = "poset")]
    pub carrier: FinPoset,
    pub tensor: Vec<Vec<usize>>,
    pub par: Vec<Vec<usize>>,
    pub top: usize,
    pub bot: usize,
}

impl PosetalSMLDC {
    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.carrier.le(a, b)
    }

    #[inline]
    pub fn t(&self, a: usize, b: usize) -> usize {
        self.tensor[a][b]
    }

    #[inline]
    pub fn p(&self, a: usize, b: usize) -> usize {
        self.par[a][b]
    }

    fn check_dims(&self) -> Result<()> {
        let n = self.size();
        for (name, tab) in [("tensor", &self.tensor), ("par", &self.par)] {
            if tab.len() != n || tab.iter().any(|r| r.len() != n) {
                return Err(Error::Dimension(format!("{name} table must be {n}x{n}")));
            }
            if tab.iter().flatten().any(|&v| v >= n) {
                return Err(Error::Dimension(format!("{name} table has an entry outside the carrier")));
            }
        }
        for (name, v) in [("top", self.top), ("bot", self.bot)] {
            if v >= n {
                return Err(Error::Dimension(format!("{name} = {v} outside the carrier")));
            }
        }
        Ok(())
    }
}

/// Enumerates every axiom instance; witnesses come out in lexicographic order.
pub fn validate_posetal_smldc(p: &PosetalSMLDC) -> Result<Vec<Violation>> {
    p.check_dims()?;
    let mut out: Vec<Violation> = poset::validate_poset(&p.carrier)
        .into_iter()
        .map(|v| Violation {
            axiom: format!("poset-{}", v.axiom),
            witness: v.witness,
        })
        .collect();
    let n = p.size();
    let ops: [(&str, &Vec<Vec<usize>>, usize); 2] =
        [("tensor", &p.tensor, p.top), ("par", &p.par, p.bot)];

    for (name, op, unit) in ops {
        for a in 0..n {
            for a2 in 0..n {
                if !p.le(a, a2) {
                    continue;
                }
                for b in 0..n {
                    if !p.le(op[a][b], op[a2][b]) || !p.le(op[b][a], op[b][a2]) {
                        out.push(Violation::new(&format!("{name}-monotone"), &[a, a2, b]));
                    }
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if op[a][b] != op[b][a] {
                    out.push(Violation::new(&format!("{name}-commutative"), &[a, b]));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if op[op[a][b]][c] != op[a][op[b][c]] {
                        out.push(Violation::new(&format!("{name}-associative"), &[a, b, c]));
                    }
                }
            }
        }
        for a in 0..n {
            if op[a][unit] != a || op[unit][a] != a {
                out.push(Violation::new(&format!("{name}-unit"), &[a]));
            }
        }
    }

    if !p.le(p.p(p.top, p.top), p.top) {
        out.push(Violation::new("top-cocontraction", &[p.top]));
    }
    if !p.le(p.bot, p.t(p.bot, p.bot)) {
        out.push(Violation::new("bot-contraction", &[p.bot]));
    }
    if !p.le(p.bot, p.top) {
        out.push(Violation::new("nullary-mix", &[p.bot, p.top]));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let l = p.p(p.t(a, b), p.t(c, d));
                    let r = p.t(p.p(a, c), p.p(b, d));
                    if !p.le(l, r) {
                        out.push(Violation::new("medial", &[a, b, c, d]));
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !p.le(p.t(p.p(a, b), c), p.p(a, p.t(b, c))) {
                    out.push(Violation::new("right-distributivity", &[a, b, c]));
                }
                if !p.le(p.t(a, p.p(b, c)), p.p(p.t(a, b), c)) {
                    out.push(Violation::new("left-distributivity", &[a, b, c]));
                }
            }
        }
    }
    Ok(out)
}

/// ⊗ = meet, ⊤ = greatest, ⊕ = join, ⊥ = least.
pub fn from_bounded_distributive_lattice(
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    order: FinPoset,
) -> Result<PosetalSMLDC> {
    let n = order.size();
    let top = order.top().ok_or(Error::NoTop)?;
    let bot = order.bottom().ok_or(Error::NoBottom)?;
    let alg = PosetalSMLDC {
        carrier: order,
        tensor: meet,
        par: join,
        top,
        bot,
    };
    alg.check_dims()?;
    let o = &alg.carrier;
    for a in 0..n {
        for b in 0..n {
            let m = alg.t(a, b);
            let glb = o.le(m, a)
                && o.le(m, b)
                && (0..n).all(|x| !(o.le(x, a) && o.le(x, b)) || o.le(x, m));
            if !glb {
                return Err(Error::TableDisagrees {
                    table: "meet".into(),
                    a,
                    b,
                });
            }
            let j = alg.p(a, b);
            let lub = o.le(a, j)
                && o.le(b, j)
                && (0..n).all(|x| !(o.le(a, x) && o.le(b, x)) || o.le(j, x));
            if !lub {
                return Err(Error::TableDisagrees {
                    table: "join".into(),
                    a,
                    b,
                });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if alg.t(a, alg.p(b, c)) != alg.p(alg.t(a, b), alg.t(a, c)) {
                    return Err(Error::NotDistributive { a, b, c });
                }
            }
        }
    }
    Ok(alg)
}

/// Computes meet and join from the order, then defers to
/// [`from_bounded_distributive_lattice`].
pub fn lattice_from_order(order: FinPoset) -> Result<PosetalSMLDC> {
    let n = order.size();
    let bound = |a: usize, b: usize, upper: bool| -> Option<usize> {
        let cands: Vec<usize> = (0..n)
            .filter(|&x| {
                if upper {
                    order.le(a, x) && order.le(b, x)
                } else {
                    order.le(x, a) && order.le(x, b)
                }
            })
            .collect();
        cands.iter().copied().find(|&x| {
            cands
                .iter()
                .all(|&y| if upper { order.le(x, y) } else { order.le(y, x) })
        })
    };
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            meet[a][b] = bound(a, b, false).ok_or(Error::TableDisagrees {
                table: "meet".into(),
                a,
                b,
            })?;
            join[a][b] = bound(a, b, true).ok_or(Error::TableDisagrees {
                table: "join".into(),
                a,
                b,
            })?;
        }
    }
    from_bounded_distributive_lattice(meet, join, order)
}

pub fn two_element_lattice() -> PosetalSMLDC {
    chain_lattice(2)
}

pub fn chain_lattice(n: usize) -> PosetalSMLDC {
    let t = (0..n).map(|a| (0..n).map(|b| a.min(b)).collect()).collect();
    let p = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
    PosetalSMLDC {
        carrier: FinPoset::chain(n),
        tensor: t,
        par: p,
        top: n - 1,
        bot: 0,
    }
}

/// The one-element algebra, where ⊤ = ⊥.
pub fn trivial_algebra() -> PosetalSMLDC {
    chain_lattice(1)
}

/// The four-element Boolean lattice `2 × 2`, element `(i, j)` encoded as `2i + j`.
pub fn boolean_square() -> PosetalSMLDC {
    let c = FinPoset::chain(2);
    lattice_from_order(poset::product(&c, &c)).expect("2x2 is a distributive lattice")
}

pub fn eval_formula(
    p: &PosetalSMLDC,
    assignment: &HashMap<String, usize>,
    f: &Formula,
) -> Result<usize> {
    Ok(match f {
        Formula::Atom(a) => {
            let v = *assignment
                .get(a)
                .ok_or_else(|| Error::Unassigned(a.clone()))?;
            if v >= p.size() {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    size: p.size(),
                });
            }
            v
        }
        Formula::Top => p.top,
        Formula::Bot => p.bot,
        Formula::Tensor(l, r) => p.t(eval_formula(p, assignment, l)?, eval_formula(p, assignment, r)?),
        Formula::Par(l, r) => p.p(eval_formula(p, assignment, l)?, eval_formula(p, assignment, r)?),
    })
}
