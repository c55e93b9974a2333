//! Finite models of medial linearly distributive categories.
//!
//! The crate builds posetal weight algebras, the P-coherence category over
//! them, a catalog of coherence equations evaluated on swept object tuples,
//! medial bimonoids, and a rewriting checker for MLL with medial.

pub mod bimonoid;
pub mod category;
pub mod coherence;
pub mod error;
pub mod formula;
pub mod palgebra;
pub mod pcoh;
pub mod poset;
pub mod rel;

pub use error::{Error, Result};

use serde::{Deserialize, Serialize};

/// One failed axiom instance: the axiom name and the tuple that breaks it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
}

impl Violation {
    pub fn new(axiom: &str, witness: &[usize]) -> Self {
        Violation {
            axiom: axiom.to_string(),
            witness: witness.to_vec(),
        }
    }
}

/// Worker count from `MEDIAL_LDC_THREADS`; `Some(0)` means run sequentially.
pub fn thread_cap() -> Option<usize> {
    std::env::var("MEDIAL_LDC_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
}

/// Maps `f` over `0..n` in order, spread over the worker pool allowed by [`thread_cap`].
pub fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    match thread_cap() {
        Some(0) | Some(1) => (0..n).map(f).collect(),
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
            Err(_) => (0..n).map(f).collect(),
        },
        None => (0..n).into_par_iter().map(f).collect(),
    }
}

/// First `Some` in index order, evaluated like [`par_map`].
pub fn par_find_first<T, F>(n: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    use rayon::prelude::*;
    match thread_cap() {
        Some(0) | Some(1) => (0..n).find_map(f),
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| (0..n).into_par_iter().find_map_first(&f)),
            Err(_) => (0..n).find_map(f),
        },
        None => (0..n).into_par_iter().find_map_first(f),
    }
}
