//! Wronski matrices `W_ij(F) = [[F, ∂_iF], [∂_jF, ∂_i∂_jF]]` and the
//! expansion of their determinants in the remaining variables.

use super::invariants::{h_invariant, h_tilde3, h_tilde4};
use super::{bit, others, require_n, slice};
use crate::calculus::d;
use crate::{CMatrix, Result, SubsetIndex, Zeon, ZeonError, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct WronskiMatrix {
    pub i: usize,
    pub j: usize,
    /// `[F, ∂_iF, ∂_jF, ∂_i∂_jF]`, row-major.
    pub entries: [Zeon; 4],
}

impl WronskiMatrix {
    pub fn det(&self) -> Zeon {
        let [a, b, c, dd] = &self.entries;
        &(a * dd) - &(b * c)
    }

    pub fn trace(&self) -> Zeon {
        &self.entries[0] + &self.entries[3]
    }

    /// The body of each entry: `[[F_∅, F_i], [F_j, F_ij]]`.
    pub fn body(&self) -> CMatrix {
        CMatrix::from_fn(2, 2, |r, c| self.entries[2 * r + c].body())
    }
}

pub fn wronski_matrix(f: &Zeon, i: usize, j: usize) -> Result<WronskiMatrix> {
    f.ctx().check_var(i)?;
    f.ctx().check_var(j)?;
    if i == j {
        return Err(ZeonError::DuplicateVariable(i));
    }
    let di = d(f, i);
    let dj = d(f, j);
    let dij = d(&di, j);
    Ok(WronskiMatrix { i, j, entries: [f.clone(), di, dj, dij] })
}

/// `w_ij(F) = F·∂_i∂_jF − ∂_iF·∂_jF`.
pub fn wronskian(f: &Zeon, i: usize, j: usize) -> Result<Zeon> {
    Ok(wronski_matrix(f, i, j)?.det())
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairWronskian {
    pub matrix: WronskiMatrix,
    pub det: Zeon,
}

/// `w_ij(F) = w_ij(F|_{η_k=0}) + H̃_k η_k` for three variables, together
/// with `w_ij(∂_k F)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion3 {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub restricted: C64,
    pub h_tilde: C64,
    /// `tr A · tr B − tr(AB)` with `A = W_ij(F|_{η_k=0})`, `B = W_ij(∂_kF)`.
    pub h_tilde_trace: C64,
    pub derived: C64,
}

/// `w_ij(F) = c + H̃_k(F|_{η_l=0})η_k + H̃_l(F|_{η_k=0})η_l + H̃_kl η_kη_l`
/// for four variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion4 {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub constant: C64,
    pub h_tilde_k: C64,
    pub h_tilde_l: C64,
    pub h_tilde_kl: C64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WronskianSet {
    pub n: usize,
    pub pairs: Vec<PairWronskian>,
    pub three: Vec<Expansion3>,
    pub four: Vec<Expansion4>,
}

impl WronskianSet {
    pub fn pair(&self, i: usize, j: usize) -> Option<&PairWronskian> {
        let (i, j) = (i.min(j), i.max(j));
        self.pairs.iter().find(|p| p.matrix.i == i && p.matrix.j == j)
    }

    pub fn expansion3(&self, k: usize) -> Option<&Expansion3> {
        self.three.iter().find(|e| e.k == k)
    }

    pub fn expansion4(&self, i: usize, j: usize) -> Option<&Expansion4> {
        self.four.iter().find(|e| e.i == i && e.j == j)
    }

    /// Largest deviation between each `w_ij` and its reassembled expansion,
    /// and between the closed and trace forms of `H̃_k`.
    pub fn reassembly_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for e in &self.three {
            let w = &self.pair(e.i, e.j).expect("pair present").det;
            let mut rebuilt = Zeon::scalar(w.ctx(), e.restricted);
            rebuilt.set(SubsetIndex(bit(e.k)), e.h_tilde);
            worst = worst.max(w.max_abs_diff(&rebuilt));
            worst = worst.max((e.h_tilde - e.h_tilde_trace).norm());
        }
        for e in &self.four {
            let w = &self.pair(e.i, e.j).expect("pair present").det;
            let mut rebuilt = Zeon::scalar(w.ctx(), e.constant);
            rebuilt.set(SubsetIndex(bit(e.k)), e.h_tilde_k);
            rebuilt.set(SubsetIndex(bit(e.l)), e.h_tilde_l);
            rebuilt.set(SubsetIndex(bit(e.k) | bit(e.l)), e.h_tilde_kl);
            worst = worst.max(w.max_abs_diff(&rebuilt));
        }
        worst
    }
}

pub fn wronskian_set(f: &Zeon) -> Result<WronskianSet> {
    require_n(f, &[2, 3, 4], "wronskian_set", "2..=4")?;
    let n = f.n();
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let matrix = wronski_matrix(f, i, j)?;
            let det = matrix.det();
            pairs.push(PairWronskian { matrix, det });
        }
    }
    let mut three = Vec::new();
    let mut four = Vec::new();
    if n == 3 {
        let h = h_invariant(f);
        for k in 1..=3 {
            let rest = others(3, &[k]);
            let (i, j) = (rest[0], rest[1]);
            let a = slice(f, &rest, 0);
            let b = slice(f, &rest, bit(k));
            let (wa, wb) = (wronski_body(&a), wronski_body(&b));
            let trace = wa.trace() * wb.trace() - (&wa * &wb).trace();
            three.push(Expansion3 {
                k,
                i,
                j,
                restricted: h_invariant(&a),
                h_tilde: h + f.at(&[k]) * f.at(&[i, j]) * 2.0,
                h_tilde_trace: trace,
                derived: h_invariant(&b),
            });
        }
    }
    if n == 4 {
        for i in 1..=4 {
            for j in i + 1..=4 {
                let rest = others(4, &[i, j]);
                let (k, l) = (rest[0], rest[1]);
                let mut with_k = vec![i, j, k];
                with_k.sort_unstable();
                let mut with_l = vec![i, j, l];
                with_l.sort_unstable();
                let pos = |v: &[usize], x: usize| v.iter().position(|&y| y == x).expect("present") + 1;
                four.push(Expansion4 {
                    i,
                    j,
                    k,
                    l,
                    constant: h_invariant(&slice(f, &[i, j], 0)),
                    h_tilde_k: h_tilde3(&slice(f, &with_k, 0), pos(&with_k, k)),
                    h_tilde_l: h_tilde3(&slice(f, &with_l, 0), pos(&with_l, l)),
                    h_tilde_kl: h_tilde4(f, k, l),
                });
            }
        }
    }
    Ok(WronskianSet { n, pairs, three, four })
}

// Body Wronski matrix of a two-variable function.
fn wronski_body(g: &Zeon) -> CMatrix {
    CMatrix::from_fn(2, 2, |r, c| g.coeffs()[r * 2 + c])
}
