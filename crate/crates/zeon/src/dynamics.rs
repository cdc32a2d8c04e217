//! Operators as matrices on the monomial basis, the two-qubit Hamiltonian
//! family and the supersymmetric toy systems.
//!
//! Matrices act on coefficient columns: row and column `S` both index the
//! monomial `η_S`, so `(M F)_S = Σ_T M[S][T] F_T`.

use crate::{linalg::CMatrix, Result, SubsetIndex, Zeon, ZeonContext, ZeonError, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Operator expressions over `∂_i` and `η_i·`.
#[derive(Clone, Debug, PartialEq)]
pub enum Op {
    Deriv(usize),
    EtaMul(usize),
    Scalar(C64),
    Sum(Vec<Op>),
    /// Composition; the rightmost factor acts first.
    Product(Vec<Op>),
}

impl Op {
    pub fn d(i: usize) -> Op {
        Op::Deriv(i)
    }

    pub fn eta(i: usize) -> Op {
        Op::EtaMul(i)
    }

    pub fn c(x: f64) -> Op {
        Op::Scalar(C64::new(x, 0.0))
    }

    pub fn number(i: usize) -> Op {
        Op::Product(vec![Op::EtaMul(i), Op::Deriv(i)])
    }

    pub fn times(self, other: Op) -> Op {
        Op::Product(vec![self, other])
    }

    pub fn plus(self, other: Op) -> Op {
        Op::Sum(vec![self, other])
    }

    pub fn scaled(self, x: f64) -> Op {
        Op::Product(vec![Op::c(x), self])
    }
}

pub fn operator_matrix(ctx: ZeonContext, op: &Op) -> Result<CMatrix> {
    let dim = ctx.dim();
    match op {
        Op::Deriv(i) | Op::EtaMul(i) => {
            ctx.check_var(*i).map_err(|_| ZeonError::MalformedOperator(format!("variable {i} out of range")))?;
            let bit = 1usize << (i - 1);
            let deriv = matches!(op, Op::Deriv(_));
            Ok(CMatrix::from_fn(dim, dim, |s, t| {
                let hit = if deriv { s & bit == 0 && t == s | bit } else { s & bit != 0 && t == s ^ bit };
                if hit {
                    ONE
                } else {
                    ZERO
                }
            }))
        }
        Op::Scalar(c) => Ok(CMatrix::identity(dim).scale(*c)),
        Op::Sum(terms) => {
            if terms.is_empty() {
                return Err(ZeonError::MalformedOperator("empty sum".into()));
            }
            let mut acc = CMatrix::zeros(dim, dim);
            for t in terms {
                acc = &acc + &operator_matrix(ctx, t)?;
            }
            Ok(acc)
        }
        Op::Product(factors) => {
            if factors.is_empty() {
                return Err(ZeonError::MalformedOperator("empty product".into()));
            }
            let mut acc = CMatrix::identity(dim);
            for f in factors {
                acc = &acc * &operator_matrix(ctx, f)?;
            }
            Ok(acc)
        }
    }
}

pub fn apply(m: &CMatrix, f: &Zeon) -> Result<Zeon> {
    if m.rows() != f.ctx().dim() || m.cols() != f.ctx().dim() {
        return Err(ZeonError::SizeCap { size: m.rows(), cap: f.ctx().dim() });
    }
    Zeon::from_coeffs(f.ctx(), m.apply(f.coeffs()))
}

fn ctx2() -> ZeonContext {
    ZeonContext::new(2).expect("n = 2")
}

/// `σ_3 = 1 − 2η∂` on one variable.
pub fn sigma3() -> CMatrix {
    let c = ZeonContext::new(1).expect("n = 1");
    operator_matrix(c, &Op::c(1.0).plus(Op::number(1).scaled(-2.0))).expect("valid")
}

/// `(1 + η + ∂ − 2η∂)/√2`.
pub fn hadamard() -> CMatrix {
    let c = ZeonContext::new(1).expect("n = 1");
    let op = Op::Sum(vec![Op::c(1.0), Op::eta(1), Op::d(1), Op::number(1).scaled(-2.0)])
        .scaled(std::f64::consts::FRAC_1_SQRT_2);
    operator_matrix(c, &op).expect("valid")
}

/// `((c1+c2)η_2 − 2c3η_1)∂_1 + ((c1+c2)η_1 − 2c3η_2)∂_2 + (c1−c2)η_1η_2
///  + ((c1−c2) + 4c3η_1η_2)∂_1∂_2 + c3`.
pub fn hamiltonian_2qubit(c1: f64, c2: f64, c3: f64) -> CMatrix {
    let (p, m) = (c1 + c2, c1 - c2);
    let e12 = || Op::eta(1).times(Op::eta(2));
    let d12 = || Op::d(1).times(Op::d(2));
    let op = Op::Sum(vec![
        Op::eta(2).scaled(p).plus(Op::eta(1).scaled(-2.0 * c3)).times(Op::d(1)),
        Op::eta(1).scaled(p).plus(Op::eta(2).scaled(-2.0 * c3)).times(Op::d(2)),
        e12().scaled(m),
        Op::c(m).plus(e12().scaled(4.0 * c3)).times(d12()),
        Op::c(c3),
    ]);
    operator_matrix(ctx2(), &op).expect("valid two-qubit operator")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Preset {
    Ising(f64),
    XY(f64),
    Heisenberg(f64, f64),
    QInvariant(f64, f64),
}

impl Preset {
    pub fn couplings(self) -> (f64, f64, f64) {
        match self {
            Preset::Ising(c) => (c, 0.0, 0.0),
            Preset::XY(c) => (c, c, 0.0),
            Preset::Heisenberg(c, c3) => (c, c, c3),
            Preset::QInvariant(c, c3) => (c, -c, c3),
        }
    }

    pub fn matrix(self) -> CMatrix {
        let (a, b, c) = self.couplings();
        hamiltonian_2qubit(a, b, c)
    }
}

#[derive(Clone, Debug)]
pub struct SpectralResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unit columns in the monomial basis, aligned with `eigenvalues`.
    pub eigenvectors: Vec<Vec<C64>>,
    /// Index groups of eigenvalues equal within the degeneracy tolerance.
    pub degeneracy: Vec<Vec<usize>>,
}

impl SpectralResult {
    pub fn eigenvector_zeon(&self, k: usize) -> Result<Zeon> {
        let dim = self.eigenvectors[k].len();
        if !dim.is_power_of_two() {
            return Err(ZeonError::Range(format!("dimension {dim} is not a power of two")));
        }
        let ctx = ZeonContext::new(dim.trailing_zeros() as usize)?;
        Zeon::from_coeffs(ctx, self.eigenvectors[k].clone())
    }
}

pub fn eigensolve(h: &CMatrix) -> Result<SpectralResult> {
    let (values, vectors) = h.eigh()?;
    let n = values.len();
    let eigenvectors = (0..n).map(|k| vectors.column(k)).collect();
    let gap = 1e-9 * h.max_abs().max(1.0);
    let mut degeneracy: Vec<Vec<usize>> = Vec::new();
    for (k, &v) in values.iter().enumerate() {
        match degeneracy.last_mut() {
            Some(group) if (v - values[*group.last().unwrap()]).abs() <= gap => group.push(k),
            _ => degeneracy.push(vec![k]),
        }
    }
    Ok(SpectralResult { eigenvalues: values, eigenvectors, degeneracy })
}

/// `exp(−iHt) F` through the eigendecomposition.
pub fn evolve(h: &CMatrix, f: &Zeon, t: f64) -> Result<Zeon> {
    let (values, v) = h.eigh()?;
    if v.rows() != f.ctx().dim() {
        return Err(ZeonError::SizeCap { size: v.rows(), cap: f.ctx().dim() });
    }
    let phases = CMatrix::from_fn(values.len(), values.len(), |i, j| {
        if i == j {
            C64::new(0.0, -values[i] * t).exp()
        } else {
            ZERO
        }
    });
    let u = &(&v * &phases) * &v.adjoint();
    apply(&u, f)
}

/// `Θ^(2) = d⊗d + d⁺⊗d + d⊗d⁺ + d⁺⊗d⁺`.
pub fn theta2() -> CMatrix {
    let s = |a: Op, b: Op| a.times(b);
    let op = Op::Sum(vec![
        s(Op::d(1), Op::d(2)),
        s(Op::eta(1), Op::d(2)),
        s(Op::d(1), Op::eta(2)),
        s(Op::eta(1), Op::eta(2)),
    ]);
    operator_matrix(ctx2(), &op).expect("valid")
}

/// `Q = d⊗d⁺`.
pub fn charge_q() -> CMatrix {
    operator_matrix(ctx2(), &Op::d(1).times(Op::eta(2))).expect("valid")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChargeReport {
    pub theta: f64,
    pub q: f64,
    pub q_dag: f64,
}

/// Frobenius norms of `[Θ^(2), H]`, `[Q, H]` and `[Q⁺, H]`.
pub fn charge_checks(h: &CMatrix) -> Result<ChargeReport> {
    if h.rows() != 4 || h.cols() != 4 {
        return Err(ZeonError::NotSquare { rows: h.rows(), cols: h.cols() });
    }
    let q = charge_q();
    Ok(ChargeReport {
        theta: theta2().commutator(h).frobenius(),
        q: q.commutator(h).frobenius(),
        q_dag: q.adjoint().commutator(h).frobenius(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SusyKind {
    QubitFermion,
    QubitQubit,
    QubitBoson { cutoff: usize },
}

#[derive(Clone, Debug)]
pub struct SusySystem {
    pub kind: SusyKind,
    pub omega: f64,
    pub kappa: f64,
    pub h0: CMatrix,
    pub q: CMatrix,
    pub q_dag: CMatrix,
    /// `H0 + κ(Q + Q⁺)`.
    pub h: CMatrix,
    /// `[Q⁺, Q]₊` computed from the matrices.
    pub anticommutator: CMatrix,
    /// Spectrum of `H0`.
    pub spectrum: SpectralResult,
    /// Zero modes of `H0` with even minus odd parity of the second factor.
    pub witten_index: i64,
    /// Per basis vector: is it odd under the second factor's number operator.
    pub odd: Vec<bool>,
}

impl SusySystem {
    /// Residual of the deformed relation `[H, Q]₋ = κH0`. For the
    /// qubit-fermion system κ is odd, so the κ-term is graded: `[H0, Q]₋ +
    /// κ[Q + Q⁺, Q]₊`. For the others it is a plain commutator.
    pub fn deformation_residual(&self) -> f64 {
        let lhs = match self.kind {
            SusyKind::QubitFermion => {
                let fq = &self.q + &self.q_dag;
                &self.h0.commutator(&self.q) + &fq.anticommutator(&self.q).scale(C64::new(self.kappa, 0.0))
            }
            _ => self.h.commutator(&self.q),
        };
        (&lhs - &self.h0.scale(C64::new(self.kappa, 0.0))).frobenius()
    }
}

fn ladder(levels: usize, raise: bool) -> CMatrix {
    // truncated boson: b|k> = √k |k-1>
    CMatrix::from_fn(levels, levels, |i, j| {
        let (from, to) = (j, i);
        let hit = if raise { to == from + 1 } else { to + 1 == from };
        if hit {
            C64::new((from.max(to) as f64).sqrt(), 0.0)
        } else {
            ZERO
        }
    })
}

fn qubit_lowering() -> CMatrix {
    // basis {1, η}: d maps η → 1
    CMatrix::from_real(2, &[0.0, 1.0, 0.0, 0.0])
}

/// Builds `H0`, the supercharges and the spectrum for the requested system.
/// Two-level factors use the basis `{1, η}` (or `{1, θ}`); the composite
/// basis is `{1, η, θ, ηθ}`, i.e. the first factor is the fast index.
pub fn susy_system(kind: SusyKind, omega: f64, kappa: f64) -> Result<SusySystem> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(ZeonError::Range(format!("omega must be positive, got {omega}")));
    }
    let i_sqrt = C64::new(0.0, omega.sqrt());
    let low = qubit_lowering();
    let raise = low.adjoint();
    // A ⊗ B with A acting on the first factor (fast index).
    let tensor = |a: &CMatrix, b: &CMatrix| b.kron(a);
    let (first_low, first_raise, first_dim) = match kind {
        SusyKind::QubitFermion | SusyKind::QubitQubit => (low.clone(), raise.clone(), 2),
        SusyKind::QubitBoson { cutoff } => {
            if cutoff < 2 {
                return Err(ZeonError::Range(format!("boson cutoff must be at least 2, got {cutoff}")));
            }
            (ladder(cutoff, false), ladder(cutoff, true), cutoff)
        }
    };
    let q = tensor(&first_low, &raise).scale(i_sqrt);
    let q_dag = tensor(&first_raise, &low).scale(-i_sqrt);
    let anticommutator = q_dag.anticommutator(&q);
    let h0 = match kind {
        SusyKind::QubitFermion => {
            let c = ZeonContext::new(2)?;
            let op = Op::Sum(vec![
                Op::number(1),
                Op::number(2),
                Op::Product(vec![Op::eta(1), Op::eta(2), Op::d(1), Op::d(2)]).scaled(-2.0),
            ])
            .scaled(omega);
            operator_matrix(c, &op)?
        }
        SusyKind::QubitQubit => anticommutator.clone(),
        SusyKind::QubitBoson { .. } => q_dag.commutator(&q),
    };
    let h = &h0 + &(&q + &q_dag).scale(C64::new(kappa, 0.0));
    let spectrum = eigensolve(&h0)?;
    let dim = first_dim * 2;
    let odd: Vec<bool> = (0..dim).map(|s| s / first_dim == 1).collect();
    let zero_tol = 1e-9 * omega.max(1.0);
    // trace of the parity operator over the zero-energy eigenspace
    let mut trace = 0.0;
    for (k, &lambda) in spectrum.eigenvalues.iter().enumerate() {
        if lambda.abs() < zero_tol {
            for (c, &o) in spectrum.eigenvectors[k].iter().zip(&odd) {
                trace += if o { -c.norm_sqr() } else { c.norm_sqr() };
            }
        }
    }
    let witten = trace.round() as i64;
    Ok(SusySystem { kind, omega, kappa, h0, q, q_dag, h, anticommutator, spectrum, witten_index: witten, odd })
}

/// Basis states of the qubit-fermion system: `φ_0 = 1`, `φ_ω = η`,
/// `ψ_ω = θ`, `ψ_0 = ηθ`, as coefficient columns.
pub fn qf_state(name: &str) -> Option<Vec<C64>> {
    let idx = match name {
        "phi0" => 0,
        "phi_omega" => 1,
        "psi_omega" => 2,
        "psi0" => 3,
        _ => return None,
    };
    let mut v = vec![ZERO; 4];
    v[idx] = ONE;
    Some(v)
}

pub fn monomial_column(ctx: ZeonContext, s: SubsetIndex) -> Vec<C64> {
    Zeon::monomial(ctx, s, ONE).into_coeffs()
}
