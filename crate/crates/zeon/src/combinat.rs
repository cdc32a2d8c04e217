//! Permanents, hafnians and pfaffians, plus the counting numbers that
//! appear as η-integrals.

use crate::calculus::{d, integrate_all};
use crate::{linalg::CMatrix, Result, SubsetIndex, Zeon, ZeonContext, ZeonError, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Integer outputs must sit this close to an integer before rounding.
pub const INTEGER_GUARD: f64 = 1e-6;

/// Ryser's formula walked in Gray-code order, O(2^n · n).
pub fn permanent_ryser(a: &CMatrix) -> Result<C64> {
    let n = a.require_square()?;
    if n == 0 {
        return Ok(ONE);
    }
    if n > 30 {
        return Err(ZeonError::SizeCap { size: n, cap: 30 });
    }
    let mut row_sums = vec![ZERO; n];
    let mut total = ZERO;
    let mut subset = 0u64;
    for k in 1u64..(1u64 << n) {
        // the Gray code flips exactly one column per step
        let j = k.trailing_zeros() as usize;
        let bit = 1u64 << j;
        let add = subset & bit == 0;
        subset ^= bit;
        for (i, rs) in row_sums.iter_mut().enumerate() {
            if add {
                *rs += a[(i, j)];
            } else {
                *rs -= a[(i, j)];
            }
        }
        let prod: C64 = row_sums.iter().product();
        if (n - subset.count_ones() as usize).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchingSum {
    Hafnian,
    Pfaffian,
}

/// Sum over perfect matchings, signed for the pfaffian.
pub fn hafnian_pfaffian(a: &CMatrix, kind: MatchingSum) -> Result<C64> {
    let n = a.require_square()?;
    if n % 2 == 1 {
        return Err(ZeonError::OddDimension(n));
    }
    if n > 16 {
        return Err(ZeonError::SizeCap { size: n, cap: 16 });
    }
    let tol = crate::DEFAULT_TOL * a.max_abs().max(1.0);
    for i in 0..n {
        for j in 0..=i {
            match kind {
                MatchingSum::Hafnian if (a[(i, j)] - a[(j, i)]).norm() > tol => {
                    return Err(ZeonError::NotSymmetric)
                }
                MatchingSum::Pfaffian if (a[(i, j)] + a[(j, i)]).norm() > tol => {
                    return Err(ZeonError::NotAntisymmetric)
                }
                _ => {}
            }
        }
    }
    let signed = kind == MatchingSum::Pfaffian;
    Ok(matchings(a, (1u32 << n) - 1, signed))
}

pub fn hafnian(a: &CMatrix) -> Result<C64> {
    hafnian_pfaffian(a, MatchingSum::Hafnian)
}

pub fn pfaffian(a: &CMatrix) -> Result<C64> {
    hafnian_pfaffian(a, MatchingSum::Pfaffian)
}

// Expand along the lowest remaining index; the sign of pairing it with the
// k-th remaining index (0-based among the rest) is (-1)^k.
fn matchings(a: &CMatrix, remaining: u32, signed: bool) -> C64 {
    if remaining == 0 {
        return ONE;
    }
    let i = remaining.trailing_zeros() as usize;
    let rest = remaining & !(1 << i);
    let mut acc = ZERO;
    let mut bits = rest;
    let mut pos = 0;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let sub = matchings(a, rest & !(1 << j), signed);
        let term = a[(i, j)] * sub;
        if signed && pos % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
        pos += 1;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Count {
    Stirling(usize),
    Bell,
    OrderedBell,
}

/// `S(n,k) = (1/k!)∫E_n^k`, `B_n = ∫e^{E_n}`, `C_n = ∫(2 − e^{T_n})^{-1}`.
pub fn stirling_bell(n: usize, what: Count) -> Result<u64> {
    if !(1..=10).contains(&n) {
        return Err(ZeonError::Range(format!("n = {n} outside 1..=10")));
    }
    let ctx = ZeonContext::new(n)?;
    let t = t_n(ctx);
    let e = &t.exp() - &Zeon::one(ctx);
    let value = match what {
        Count::Stirling(k) => {
            if k > n {
                return Err(ZeonError::Range(format!("k = {k} above n = {n}")));
            }
            let fact: f64 = (1..=k).map(|x| x as f64).product();
            integrate_all(&e.power(k as u64)) / fact
        }
        Count::Bell => integrate_all(&e.exp()),
        Count::OrderedBell => {
            let two = Zeon::scalar(ctx, C64::new(2.0, 0.0));
            integrate_all(&(&two - &t.exp()).invert()?)
        }
    };
    round_guarded(value)
}

pub fn stirling2(n: usize, k: usize) -> Result<u64> {
    stirling_bell(n, Count::Stirling(k))
}

pub fn bell(n: usize) -> Result<u64> {
    stirling_bell(n, Count::Bell)
}

pub fn ordered_bell(n: usize) -> Result<u64> {
    stirling_bell(n, Count::OrderedBell)
}

pub fn round_guarded(v: C64) -> Result<u64> {
    let r = v.re.round();
    if (v - C64::new(r, 0.0)).norm() >= INTEGER_GUARD || r < 0.0 {
        return Err(ZeonError::IntegerGuard(v.re));
    }
    Ok(r as u64)
}

/// `T_n = η_1 + … + η_n`.
pub fn t_n(ctx: ZeonContext) -> Zeon {
    elementary(ctx, 1)
}

/// `e_k`: sum of all degree-k monomials.
pub fn elementary(ctx: ZeonContext, k: usize) -> Zeon {
    let mut z = Zeon::zero(ctx);
    for s in 0..ctx.dim() as u32 {
        if s.count_ones() as usize == k {
            z.set(SubsetIndex(s), ONE);
        }
    }
    z
}

#[derive(Clone, Debug)]
pub struct SymmetricPolySet {
    /// `e[k]` for `k = 0..=n`.
    pub e: Vec<Zeon>,
    /// `h[k]` for `k = 0..=n`, from `h_m = Σ_{i≥1} (-1)^{i-1} e_i h_{m-i}`.
    pub h: Vec<Zeon>,
}

pub fn symmetric_polys(ctx: ZeonContext) -> SymmetricPolySet {
    let n = ctx.n();
    let e: Vec<Zeon> = (0..=n).map(|k| elementary(ctx, k)).collect();
    let mut h = vec![Zeon::one(ctx)];
    for m in 1..=n {
        let mut acc = Zeon::zero(ctx);
        for i in 1..=m {
            let term = &e[i] * &h[m - i];
            if i % 2 == 1 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        h.push(acc);
    }
    SymmetricPolySet { e, h }
}

/// Qubit-number operator `Σ η_i ∂_i`.
pub fn euler_operator(f: &Zeon) -> Zeon {
    let mut acc = Zeon::zero(f.ctx());
    for i in 1..=f.n() {
        acc += &crate::calculus::eta_mul(&d(f, i), i);
    }
    acc
}
