//! Entanglement monotones of normalized pure states.

use super::invariants::{h_invariant, h_tilde3, hyperdet3, lmn_invariants, InvariantRecord};
use super::{bit, others, require_n, slice};
use crate::calculus::{d, eta_mul};
use crate::hilbert::scalar_product;
use crate::{Result, Zeon, ZeonError, C64};

#[derive(Clone, Debug, PartialEq)]
pub enum MonotoneReport {
    Two(TwoQubit),
    Three(ThreeQubit),
    Four(FourQubit),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubit {
    /// Concurrence `2|w_12|`.
    pub c: f64,
    /// `V_i = 2|⟨∂_iF, F⟩|`.
    pub v: [f64; 2],
    /// `P_i = |⟨F, J_iF⟩|`.
    pub p: [f64; 2],
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThreeQubit {
    pub tau: f64,
    /// Meyer–Wallach global entanglement, `(4/3) Σ_k det ρ_k`.
    pub q: f64,
    /// `(4/3)(2Σ_k|w_ij(F|_{η_k=0}) + w_ij(∂_kF)|² + |Σ_k(H̃_k² − 4w w′)|)`.
    pub mu: f64,
    /// `(2/3)Σ_{i<j}|⟨σ_y^{ij}F̄, F⟩|² + τ`.
    pub mu_alt: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourQubit {
    /// `|F_1| .. |F_5|`.
    pub f: [f64; 5],
    /// `16|3H⁴ − 16HW + 8Σ|`.
    pub f2_prime: f64,
    /// `|F_2 + F_4 + F_5|`, the same quantity assembled term by term.
    pub f2_prime_direct: f64,
    pub f3: f64,
    pub invariants: InvariantRecord,
}

/// Rejects states with `|⟨F,F⟩ − 1|` above the context tolerance (scaled).
pub fn require_normalized(f: &Zeon) -> Result<()> {
    let nn = scalar_product(f, f)?.re;
    if (nn - 1.0).abs() > 1e3 * f.ctx().tol() {
        return Err(ZeonError::Unnormalized(nn));
    }
    Ok(())
}

pub fn monotones(f: &Zeon) -> Result<MonotoneReport> {
    require_n(f, &[2, 3, 4], "monotones", "2..=4")?;
    require_normalized(f)?;
    Ok(match f.n() {
        2 => MonotoneReport::Two(two_qubit(f)?),
        3 => MonotoneReport::Three(three_qubit(f)?),
        _ => MonotoneReport::Four(four_qubit(f)?),
    })
}

pub fn two_qubit(f: &Zeon) -> Result<TwoQubit> {
    require_n(f, &[2], "two_qubit", "{2}")?;
    let c = 2.0 * h_invariant(f).norm();
    let mut v = [0.0; 2];
    let mut p = [0.0; 2];
    for i in 1..=2 {
        v[i - 1] = 2.0 * scalar_product(&d(f, i), f)?.norm();
        p[i - 1] = scalar_product(f, &f.grade_at(i)?)?.norm();
    }
    Ok(TwoQubit { c, v, p })
}

/// `σ_y ⊗ σ_y` on qubits `i, j`: `−(η_i − ∂_i)(η_j − ∂_j)`.
pub fn sigma_yy(f: &Zeon, i: usize, j: usize) -> Zeon {
    let step = |g: &Zeon, v: usize| &eta_mul(g, v) - &d(g, v);
    -step(&step(f, j), i)
}

/// Reduced density matrix of qubit `k`, basis `{absent, present}`.
pub fn reduced_density(f: &Zeon, k: usize) -> [[C64; 2]; 2] {
    let b = bit(k) as usize;
    let c = f.coeffs();
    let mut rho = [[C64::new(0.0, 0.0); 2]; 2];
    for s in 0..c.len() {
        if s & b != 0 {
            continue;
        }
        let amp = [c[s], c[s | b]];
        for a in 0..2 {
            for bb in 0..2 {
                rho[a][bb] += amp[a] * amp[bb].conj();
            }
        }
    }
    rho
}

pub fn three_qubit(f: &Zeon) -> Result<ThreeQubit> {
    require_n(f, &[3], "three_qubit", "{3}")?;
    let tau = 4.0 * hyperdet3(f)?.norm();
    let mut q = 0.0;
    for k in 1..=3 {
        let rho = reduced_density(f, k);
        q += 4.0 * (rho[0][0] * rho[1][1] - rho[0][1] * rho[1][0]).re;
    }
    q /= 3.0;

    let mut pair_sum = 0.0;
    let mut det_sum = C64::new(0.0, 0.0);
    for k in 1..=3 {
        let rest = others(3, &[k]);
        let w = h_invariant(&slice(f, &rest, 0));
        let w_prime = h_invariant(&slice(f, &rest, bit(k)));
        let ht = h_tilde3(f, k);
        pair_sum += (w + w_prime).norm_sqr();
        det_sum += ht * ht - w * w_prime * 4.0;
    }
    let mu = 4.0 / 3.0 * (2.0 * pair_sum + det_sum.norm());

    let mut sigma_sum = 0.0;
    for i in 1..=3 {
        for j in i + 1..=3 {
            sigma_sum += scalar_product(&sigma_yy(&f.conj(), i, j), f)?.norm_sqr();
        }
    }
    let mu_alt = 2.0 / 3.0 * sigma_sum + tau;
    Ok(ThreeQubit { tau, q, mu, mu_alt })
}

pub fn four_qubit(f: &Zeon) -> Result<FourQubit> {
    require_n(f, &[4], "four_qubit", "{4}")?;
    let inv = lmn_invariants(f)?;
    let (h, w, s, p) = (inv.h, inv.w, inv.sigma, inv.pi);
    let (l, m, n) = (inv.l, inv.m, inv.n);
    let h2 = h * h;
    let h4 = h2 * h2;
    let common = h4 - h * w * 4.0;
    let f1 = (w * 4.0 - h2 * h) * 8.0;
    let f2 = (common - (h * inv.d_xt + l * m * 4.0) * 4.0) * 16.0;
    let f3 = (h4 * h2 - h2 * s * 24.0 - p * 64.0) * 32.0;
    let f4 = (common - (h * inv.d_xz + l * n * 4.0) * 4.0) * 16.0;
    let f5 = (common - (h * inv.d_xy + m * n * 4.0) * 4.0) * 16.0;
    let f2_prime = 16.0 * (h4 * 3.0 - h * w * 16.0 + s * 8.0).norm();
    Ok(FourQubit {
        f: [f1.norm(), f2.norm(), f3.norm(), f4.norm(), f5.norm()],
        f2_prime,
        f2_prime_direct: (f2 + f4 + f5).norm(),
        f3: f3.norm(),
        invariants: inv,
    })
}
