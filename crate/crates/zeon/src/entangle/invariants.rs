//! Polynomial SL-invariants: the bilinear `H`, the 3-qubit hyperdeterminant
//! and the 4-qubit set `L, M, N, D_xy, D_xz, D_xt` with the Schläfli basis.

use super::wronskian::wronski_matrix;
use super::{bit, others, require_n, scaled_tol, slice};
use crate::calculus::d;
use crate::{CMatrix, Result, Zeon, ZeonError, C64};

const ZERO: C64 = C64::new(0.0, 0.0);

/// `H(F) = Σ (-1)^{|S|} F_S F_{S^c}` over unordered complementary pairs,
/// each pair once. `F_0F_12 − F_1F_2` for two variables, the Cayley
/// quadratic for four.
pub fn h_invariant(f: &Zeon) -> C64 {
    let n = f.n() as u32;
    let full = f.ctx().full_mask();
    let c = f.coeffs();
    let mut acc = ZERO;
    for s in 0..=full {
        let t = full ^ s;
        let k = s.count_ones();
        if 2 * k > n || (2 * k == n && s > t) {
            continue;
        }
        let term = c[s as usize] * c[t as usize];
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `H̃_k = H + 2F_kF_ij` for a three-variable function.
pub fn h_tilde3(g: &Zeon, k: usize) -> C64 {
    let rest = others(3, &[k]);
    h_invariant(g) + g.at(&[k]) * g.at(&rest) * 2.0
}

/// The `η_kη_l` coefficient of `w_ij(F)` for four variables, `{i,j}` the
/// complement of `{k,l}`:
/// `H + 2F_kF_ijl + 2F_lF_ijk − 2F_ikF_jl − 2F_ilF_jk`.
pub fn h_tilde4(f: &Zeon, k: usize, l: usize) -> C64 {
    let rest = others(4, &[k, l]);
    let (i, j) = (rest[0], rest[1]);
    let at = |v: &[usize]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        f.at(&v)
    };
    h_invariant(f) + (at(&[k]) * at(&[i, j, l]) + at(&[l]) * at(&[i, j, k])) * 2.0
        - (at(&[i, k]) * at(&[j, l]) + at(&[i, l]) * at(&[j, k])) * 2.0
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperdetPaths {
    /// `d_1 − 2d_2 + 4d_3`.
    pub direct: C64,
    /// `(1/3) Σ_k (H̃_k² − 4 w_ij(F|_{η_k=0}) w_ij(∂_kF))`.
    pub symmetric: C64,
    /// `H̃_1² − 4 w_23(F|_{η_1=0}) w_23(∂_1F)`.
    pub single: C64,
}

impl HyperdetPaths {
    pub fn spread(&self) -> f64 {
        (self.direct - self.symmetric).norm().max((self.direct - self.single).norm())
    }
}

pub fn hyperdet3_paths(f: &Zeon) -> Result<HyperdetPaths> {
    require_n(f, &[3], "hyperdet3", "{3}")?;
    let c = |v: &[usize]| f.at(v);
    let (f0, f1, f2, f3) = (c(&[]), c(&[1]), c(&[2]), c(&[3]));
    let (f12, f13, f23, f123) = (c(&[1, 2]), c(&[1, 3]), c(&[2, 3]), c(&[1, 2, 3]));
    let d1 = f0 * f0 * f123 * f123 + f3 * f3 * f12 * f12 + f2 * f2 * f13 * f13 + f1 * f1 * f23 * f23;
    let d2 = f0 * f3 * f12 * f123
        + f0 * f2 * f13 * f123
        + f0 * f1 * f23 * f123
        + f2 * f3 * f13 * f12
        + f1 * f3 * f23 * f12
        + f1 * f2 * f23 * f13;
    let d3 = f0 * f23 * f13 * f12 + f1 * f2 * f3 * f123;
    let direct = d1 - d2 * 2.0 + d3 * 4.0;

    let term = |k: usize| {
        let rest = others(3, &[k]);
        let w = h_invariant(&slice(f, &rest, 0));
        let w_prime = h_invariant(&slice(f, &rest, bit(k)));
        let ht = h_tilde3(f, k);
        ht * ht - w * w_prime * 4.0
    };
    let symmetric = (term(1) + term(2) + term(3)) / 3.0;
    Ok(HyperdetPaths { direct, symmetric, single: term(1) })
}

/// The 2×2×2 hyperdeterminant. All three evaluation paths are computed and
/// must agree.
pub fn hyperdet3(f: &Zeon) -> Result<C64> {
    let p = hyperdet3_paths(f)?;
    if p.spread() > scaled_tol(f, 4) {
        return Err(ZeonError::Consistency(format!("hyperdeterminant paths disagree by {:e}", p.spread())));
    }
    Ok(p.direct)
}

// Body of W_ij(G) for G = the slice of F carrying `fixed`.
fn w_body(f: &Zeon, i: usize, j: usize, fixed: u32) -> [C64; 4] {
    let g = |extra: u32| f.coeffs()[(fixed | extra) as usize];
    [g(0), g(bit(i)), g(bit(j)), g(bit(i) | bit(j))]
}

/// Body of `𝓛_ij` for `l < k` the complementary pair:
/// `[[W(π_lπ_kF), W(π_l∂_kF)], [W(π_k∂_lF), W(∂_l∂_kF)]]`; the partial
/// transpose swaps the two off-diagonal blocks.
pub fn body_l_matrix(f: &Zeon, i: usize, j: usize, partial_transpose: bool) -> Result<CMatrix> {
    require_n(f, &[4], "body_l_matrix", "{4}")?;
    check_pair(i, j)?;
    let rest = others(4, &[i, j]);
    let (l, k) = (rest[0], rest[1]);
    let (tr, bl) = if partial_transpose { (bit(l), bit(k)) } else { (bit(k), bit(l)) };
    let blocks = [[w_body(f, i, j, 0), w_body(f, i, j, tr)], [w_body(f, i, j, bl), w_body(f, i, j, bit(l) | bit(k))]];
    Ok(CMatrix::from_fn(4, 4, |r, c| blocks[r / 2][c / 2][2 * (r % 2) + c % 2]))
}

/// The 3×3 matrix `B_ij` whose entries are `H` and `H̃` values of slices of
/// `F`; its determinant is `D_xy`, `D_xz`, `D_xt` for `(ij) = (12), (13), (14)`.
pub fn b_matrix(f: &Zeon, i: usize, j: usize) -> Result<CMatrix> {
    require_n(f, &[4], "b_matrix", "{4}")?;
    check_pair(i, j)?;
    let o = others(4, &[i, j]);
    let rest_i = others(4, &[i]);
    let rest_j = others(4, &[j]);
    let pos = |v: &[usize], x: usize| v.iter().position(|&y| y == x).expect("present") + 1;
    let h2 = |fixed: u32| h_invariant(&slice(f, &o, fixed));
    let ht_j = |fixed: u32| h_tilde3(&slice(f, &rest_i, fixed), pos(&rest_i, j));
    let ht_i = |fixed: u32| h_tilde3(&slice(f, &rest_j, fixed), pos(&rest_j, i));
    let (bi, bj) = (bit(i), bit(j));
    let rows = vec![
        vec![h2(0), ht_j(0), h2(bj)],
        vec![ht_i(0), h_tilde4(f, i, j), ht_i(bj)],
        vec![h2(bi), ht_j(bi), h2(bi | bj)],
    ];
    CMatrix::from_rows(rows)
}

fn check_pair(i: usize, j: usize) -> Result<()> {
    if !(1..=4).contains(&i) || !(1..=4).contains(&j) || i >= j {
        return Err(ZeonError::InvalidPartition(format!("ordered pair ({i},{j}) with 1 <= i < j <= 4")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantRecord {
    pub h: C64,
    pub l: C64,
    pub m: C64,
    pub n: C64,
    pub d_xy: C64,
    pub d_xz: C64,
    pub d_xt: C64,
    pub w: C64,
    pub sigma: C64,
    pub pi: C64,
}

pub fn lmn_invariants(f: &Zeon) -> Result<InvariantRecord> {
    require_n(f, &[4], "lmn_invariants", "{4}")?;
    let n = body_l_matrix(f, 1, 2, false)?.det();
    let m = body_l_matrix(f, 1, 4, false)?.det();
    let l = body_l_matrix(f, 1, 3, true)?.det();
    let d_xy = b_matrix(f, 1, 2)?.det();
    let d_xz = b_matrix(f, 1, 3)?.det();
    let d_xt = b_matrix(f, 1, 4)?.det();
    let sigma = l * l + m * m + n * n;
    let tol4 = scaled_tol(f, 4);
    if (l + m + n).norm() > tol4 {
        return Err(ZeonError::Consistency(format!("L + M + N = {:e}", (l + m + n).norm())));
    }
    let identity = sigma + (m * n + n * l + m * l) * 2.0;
    if identity.norm() > scaled_tol(f, 8) {
        return Err(ZeonError::Consistency(format!("L²+M²+N²+2(MN+NL+ML) = {:e}", identity.norm())));
    }
    Ok(InvariantRecord {
        h: h_invariant(f),
        l,
        m,
        n,
        d_xy,
        d_xz,
        d_xt,
        w: d_xy + d_xz + d_xt,
        sigma,
        pi: (l - m) * (m - n) * (n - l),
    })
}

/// Zeon-valued determinants of `𝓛_ij` and its partial transpose.
#[derive(Clone, Debug, PartialEq)]
pub struct WeakTest {
    pub i: usize,
    pub j: usize,
    pub det_l: Zeon,
    pub det_l_pt: Zeon,
}

pub fn weak_test_n4(f: &Zeon, i: usize, j: usize) -> Result<WeakTest> {
    require_n(f, &[4], "weak_test_n4", "{4}")?;
    check_pair(i, j)?;
    let rest = others(4, &[i, j]);
    let (l, k) = (rest[0], rest[1]);
    let dk = d(f, k);
    let dl = d(f, l);
    let dlk = d(&dl, k);
    let block = |g: &Zeon| wronski_matrix(g, i, j).map(|w| w.entries);
    let (tl, tr, bl, br) = (block(f)?, block(&dk)?, block(&dl)?, block(&dlk)?);
    let assemble = |tr: &[Zeon; 4], bl: &[Zeon; 4]| {
        let blocks = [[&tl, tr], [bl, &br]];
        (0..4)
            .map(|r| (0..4).map(|c| blocks[r / 2][c / 2][2 * (r % 2) + c % 2].clone()).collect())
            .collect::<Vec<Vec<Zeon>>>()
    };
    Ok(WeakTest {
        i,
        j,
        det_l: zeon_det(&assemble(&tr, &bl)),
        det_l_pt: zeon_det(&assemble(&bl, &tr)),
    })
}

/// Determinant over the (commutative) zeon ring by cofactor expansion.
pub fn zeon_det(m: &[Vec<Zeon>]) -> Zeon {
    let n = m.len();
    match n {
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = Zeon::zero(m[0][0].ctx());
            for c in 0..n {
                if m[0][c].coeffs().iter().all(|&x| x == ZERO) {
                    continue;
                }
                let minor: Vec<Vec<Zeon>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|&(cc, _)| cc != c).map(|(_, z)| z.clone()).collect()).collect();
                let term = &m[0][c] * &zeon_det(&minor);
                if c % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}
