//! Factorization criteria, polynomial invariants and entanglement monotones
//! for pure states of 2, 3 and 4 qubits written as η-functions.

pub mod deviations;
pub mod factor;
pub mod invariants;
pub mod monotones;
pub mod states;
pub mod wronskian;

pub use deviations::{known_deviations, Deviation};
pub use factor::{all_bipartitions, factor_test, tanglemeter, tanglemeter_separable, FactorMode, FactorResult, Partition};
pub use invariants::{
    b_matrix, body_l_matrix, h_invariant, h_tilde3, h_tilde4, hyperdet3, hyperdet3_paths, lmn_invariants, weak_test_n4,
    HyperdetPaths, InvariantRecord, WeakTest,
};
pub use monotones::{monotones, MonotoneReport};
pub use states::{psi1_factorized, psi1_trig, state_library, STATE_NAMES};
pub use wronskian::{wronski_matrix, wronskian, wronskian_set, WronskiMatrix, WronskianSet};

use crate::{Result, SubsetIndex, Zeon, ZeonContext, ZeonError};

pub(crate) fn require_n(f: &Zeon, ok: &[usize], op: &'static str, allowed: &'static str) -> Result<()> {
    if ok.contains(&f.n()) {
        Ok(())
    } else {
        Err(ZeonError::UnsupportedN { op, allowed, n: f.n() })
    }
}

pub(crate) fn bit(v: usize) -> u32 {
    1 << (v - 1)
}

/// The function of `vars` obtained by keeping the coefficients `F_{S ∪ fixed}`
/// with `S ⊆ vars`. With `fixed = ∅` this is the restriction to the other
/// variables set to zero; with `fixed = {k}` it is `π ∂_k F`.
pub(crate) fn slice(f: &Zeon, vars: &[usize], fixed: u32) -> Zeon {
    let ctx = ZeonContext::with_tol(vars.len(), f.ctx().tol()).expect("slice of a valid context");
    let mut g = Zeon::zero(ctx);
    for t in 0..ctx.dim() as u32 {
        let mut s = fixed;
        for (pos, &v) in vars.iter().enumerate() {
            if t & (1 << pos) != 0 {
                s |= bit(v);
            }
        }
        g.set(SubsetIndex(t), f.coeff(SubsetIndex(s)));
    }
    g
}

/// Variables of `1..=n` not in `skip`, ascending.
pub(crate) fn others(n: usize, skip: &[usize]) -> Vec<usize> {
    (1..=n).filter(|v| !skip.contains(v)).collect()
}

/// Tolerance scaled to a homogeneous expression of degree `deg` in the
/// coefficients of `f`.
pub(crate) fn scaled_tol(f: &Zeon, deg: i32) -> f64 {
    f.ctx().tol() * f.max_abs().max(1.0).powi(deg)
}
