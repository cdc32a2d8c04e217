#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use zeon::hilbert::normalize;
use zeon::{CMatrix, Zeon, ZeonContext, C64};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn ctx(n: usize) -> ZeonContext {
    ZeonContext::new(n).unwrap()
}

pub fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn rand_c(g: &mut StdRng) -> C64 {
    C64::new(g.gen_range(-1.0..1.0), g.gen_range(-1.0..1.0))
}

pub fn rand_zeon(g: &mut StdRng, n: usize) -> Zeon {
    let c = ctx(n);
    Zeon::from_coeffs(c, (0..c.dim()).map(|_| rand_c(g)).collect()).unwrap()
}

pub fn rand_soul(g: &mut StdRng, n: usize) -> Zeon {
    rand_zeon(g, n).soul()
}

pub fn rand_state(g: &mut StdRng, n: usize) -> Zeon {
    normalize(&rand_zeon(g, n)).unwrap()
}

pub fn rand_matrix(g: &mut StdRng, n: usize) -> CMatrix {
    let v: Vec<C64> = (0..n * n).map(|_| rand_c(g)).collect();
    CMatrix::from_fn(n, n, |r, c| v[r * n + c])
}

/// Coefficients from a real list in mask order.
pub fn real(n: usize, coeffs: &[f64]) -> Zeon {
    Zeon::from_real(ctx(n), coeffs).unwrap()
}

/// Builds `Σ c·η_S` from `(vars, c)` pairs.
pub fn poly(n: usize, terms: &[(&[usize], f64)]) -> Zeon {
    let mut z = Zeon::zero(ctx(n));
    for (vars, c) in terms {
        let s = zeon::SubsetIndex::from_vars(vars).unwrap();
        z.set(s, z.coeff(s) + r(*c));
    }
    z
}

pub fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol
}
