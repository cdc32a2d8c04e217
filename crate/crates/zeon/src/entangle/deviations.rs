//! Published values that the computations here do not reproduce. When an
//! input matches one of the catalogued states, both numbers are reported so
//! callers can see the discrepancy instead of a silently different answer.

use super::invariants::{lmn_invariants, weak_test_n4};
use super::monotones::{monotones, MonotoneReport};
use super::states::state_library;
use crate::hilbert::omega_form;
use crate::{Result, SubsetIndex, Zeon, ZeonContext, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct Deviation {
    pub state: String,
    pub quantity: String,
    pub computed: C64,
    pub reference: C64,
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn from_terms(n: usize, coef: f64, subsets: &[&[usize]]) -> Zeon {
    let ctx = ZeonContext::new(n).expect("small context");
    let mut z = Zeon::zero(ctx);
    for s in subsets {
        z.set(SubsetIndex::from_vars(s).expect("distinct"), re(coef));
    }
    z
}

// Equal up to a global phase.
fn same_ray(f: &Zeon, g: &Zeon) -> bool {
    if f.n() != g.n() {
        return false;
    }
    let tol = 1e3 * f.ctx().tol();
    let (a, b) = (f.coeffs(), g.coeffs());
    let Some(p) = (0..b.len()).max_by(|&x, &y| b[x].norm().total_cmp(&b[y].norm())) else {
        return false;
    };
    if a[p].norm() <= tol {
        return false;
    }
    let phase = a[p] / b[p];
    (phase.norm() - 1.0).abs() <= tol && a.iter().zip(b).all(|(x, y)| (x - y * phase).norm() <= tol)
}

fn mu_of(f: &Zeon) -> Result<C64> {
    match monotones(f)? {
        MonotoneReport::Three(t) => Ok(re(t.mu)),
        _ => unreachable!("three-variable input"),
    }
}

/// Catalogued discrepancies that apply to `f` (empty for most inputs).
pub fn known_deviations(f: &Zeon) -> Result<Vec<Deviation>> {
    let mut out = Vec::new();
    let mut push = |state: &str, quantity: &str, computed: C64, reference: C64| {
        out.push(Deviation { state: state.into(), quantity: quantity.into(), computed, reference })
    };
    match f.n() {
        2 => {
            // the component formula gives ω₂(η1, η2) = −F1G2 = −1
            let c2 = f.ctx();
            let (e1, e2) = (Zeon::var(c2, 1)?, Zeon::var(c2, 2)?);
            push("any two-variable input", "omega2(η1,η2)", omega_form(&e1, &e2)?, re(1.0));
        }
        3 => {
            let plus_w = from_terms(3, 0.5, &[&[], &[1], &[2], &[3]]);
            if same_ray(f, &plus_w) {
                push("(1+η1+η2+η3)/2", "mu", mu_of(f)?, re(0.75));
            }
            let e6 = from_terms(3, 0.5, &[&[], &[3], &[1, 2], &[1, 2, 3]]);
            if same_ray(f, &e6) {
                push("(1+η3+η1η2+η1η2η3)/2", "mu", mu_of(f)?, re(1.0 / 6.0));
            }
        }
        4 => {
            if same_ray(f, &state_library("phiTilde-", &[])?) {
                let inv = lmn_invariants(f)?;
                let f2p = match monotones(f)? {
                    MonotoneReport::Four(r) => r.f2_prime,
                    _ => unreachable!("four-variable input"),
                };
                push("phiTilde-", "W", inv.w, re(3.0 / 256.0));
                push("phiTilde-", "|F2'|", re(f2p), re(9.0 / 16.0));
            }
            for plus in [true, false] {
                let sign = if plus { '+' } else { '-' };
                for (j, k, l) in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 3, 2), (1, 4, 2), (1, 4, 3), (2, 4, 3), (2, 3, 1), (2, 4, 1), (3, 4, 1), (3, 4, 2)] {
                    let name = format!("phiA{sign}({j}{k},{l})");
                    if same_ray(f, &state_library(&name, &[])?) {
                        // √3/2 leaves ⟨F,F⟩ = 9/4 and H = 3/4 instead of 1/3
                        push(&name, "prefactor", re(1.0 / 3f64.sqrt()), re(3f64.sqrt() / 2.0));
                    }
                }
            }
            for (j, k, l) in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 3, 2), (1, 4, 2), (1, 4, 3), (2, 4, 3), (2, 3, 1), (2, 4, 1), (3, 4, 1), (3, 4, 2)] {
                let name = format!("phiA-({j}{k},{l})");
                if same_ray(f, &state_library(&name, &[])?) {
                    push(&name, "W", lmn_invariants(f)?.w, re(2.0 / 216.0));
                }
            }
            let e3 = from_terms(4, 0.5, &[&[3], &[4], &[1, 2, 3], &[1, 2, 4]]);
            if same_ray(f, &e3) {
                let eta12 = SubsetIndex::from_vars(&[1, 2]).expect("distinct");
                for (i, j) in [(1, 2), (3, 4)] {
                    let det = weak_test_n4(f, i, j)?.det_l;
                    push("(η3+η4+η1η2η3+η1η2η4)/2", &format!("det L_{i}{j} [η1η2]"), det.coeff(eta12), re(1.0 / 16.0));
                }
                for (i, j) in [(1, 3), (1, 4), (2, 3), (2, 4)] {
                    let det = weak_test_n4(f, i, j)?.det_l;
                    push("(η3+η4+η1η2η3+η1η2η4)/2", &format!("det L_{i}{j} [1]"), det.body(), re(0.0));
                }
            }
        }
        _ => {}
    }
    Ok(out)
}
