//! η-derivatives and integrals, the Gaussian integral, the η-Fourier
//! transform and η-Hermite polynomials.

use crate::{linalg::CMatrix, Result, SubsetIndex, Zeon, ZeonContext, ZeonError, C64, MAX_VARS};

const ZERO: C64 = C64::new(0.0, 0.0);

/// A doubled context: primal `η_1..η_n` sit at positions `1..n` and the
/// conjugate variables (`ξ` or `η'`) at `n+1..2n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualPairContext {
    n: usize,
    base: ZeonContext,
}

impl DualPairContext {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || 2 * n > MAX_VARS {
            return Err(ZeonError::SizeCap { size: 2 * n, cap: MAX_VARS });
        }
        Ok(DualPairContext { n, base: ZeonContext::new(2 * n)? })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> ZeonContext {
        self.base
    }

    pub fn primal(&self, i: usize) -> usize {
        i
    }

    pub fn conjugate(&self, i: usize) -> usize {
        self.n + i
    }

    /// Places an `n`-variable function on the primal variables.
    pub fn embed_primal(&self, f: &Zeon) -> Result<Zeon> {
        self.check(f)?;
        f.embed(self.base)
    }

    /// Places an `n`-variable function on the conjugate variables.
    pub fn embed_conjugate(&self, f: &Zeon) -> Result<Zeon> {
        self.check(f)?;
        let mut z = Zeon::zero(self.base);
        for (s, &c) in f.coeffs().iter().enumerate() {
            z.set(SubsetIndex((s << self.n) as u32), c);
        }
        Ok(z)
    }

    /// Reads back a function that only involves the conjugate variables.
    pub fn project_conjugate(&self, f: &Zeon) -> Result<Zeon> {
        let ctx = ZeonContext::with_tol(self.n, f.ctx().tol())?;
        let low = (1usize << self.n) - 1;
        let mut z = Zeon::zero(ctx);
        for (s, &c) in f.coeffs().iter().enumerate() {
            if s & low == 0 {
                z.set(SubsetIndex((s >> self.n) as u32), c);
            } else if c.norm() > f.ctx().tol() {
                return Err(ZeonError::Range("function still depends on primal variables".into()));
            }
        }
        Ok(z)
    }

    fn check(&self, f: &Zeon) -> Result<()> {
        if f.n() != self.n {
            Err(ZeonError::ContextMismatch(f.n(), self.n))
        } else {
            Ok(())
        }
    }
}

/// `∂_I F`; the order of the single derivatives is irrelevant.
pub fn derivative(f: &Zeon, vars: SubsetIndex) -> Result<Zeon> {
    if vars.mask() as usize >= f.ctx().dim() {
        return Err(ZeonError::IndexOutOfRange { mask: vars.mask(), n: f.n() });
    }
    let mut g = f.clone();
    for v in vars.vars() {
        g = d(&g, v);
    }
    Ok(g)
}

/// `∂_i F`: `(∂_i F)_S = F_{S∪{i}}` for `i ∉ S`, zero otherwise.
pub fn d(f: &Zeon, i: usize) -> Zeon {
    f.ctx().check_var(i).expect("derivative variable in range");
    let bit = 1usize << (i - 1);
    let src = f.coeffs();
    let coeffs = (0..src.len()).map(|s| if s & bit == 0 { src[s | bit] } else { ZERO }).collect();
    Zeon::from_coeffs(f.ctx(), coeffs).expect("same shape")
}

/// `η_i · F`.
pub fn eta_mul(f: &Zeon, i: usize) -> Zeon {
    f.ctx().check_var(i).expect("variable in range");
    let bit = 1usize << (i - 1);
    let src = f.coeffs();
    let coeffs = (0..src.len()).map(|s| if s & bit != 0 { src[s ^ bit] } else { ZERO }).collect();
    Zeon::from_coeffs(f.ctx(), coeffs).expect("same shape")
}

/// Iterated single-variable integration. Variables commute, so the result
/// does not depend on the order; each step is coefficient extraction.
pub fn integrate(f: &Zeon, vars: &[usize]) -> Result<Zeon> {
    let mut seen = 0u32;
    for &v in vars {
        f.ctx().check_var(v)?;
        let bit = 1 << (v - 1);
        if seen & bit != 0 {
            return Err(ZeonError::DuplicateVariable(v));
        }
        seen |= bit;
    }
    Ok(vars.iter().fold(f.clone(), |g, &v| d(&g, v)))
}

/// Integral over every variable: the top coefficient.
pub fn integrate_all(f: &Zeon) -> C64 {
    f.coeffs()[f.ctx().full_mask() as usize]
}

/// `∫ exp(Σ η_i B_ij η'_j) dη dη'`, which equals `per(B)`.
pub fn gaussian_permanent(b: &CMatrix) -> Result<C64> {
    let n = b.require_square()?;
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let pair = DualPairContext::new(n)?;
    // Each term η_iB_ijη'_j squares to zero, so the exponential is the
    // product of the factors (1 + B_ij η_iη'_j); multiplying by one such
    // factor only touches subsets holding both variables.
    let mut g = Zeon::one(pair.base());
    let mut c = g.coeffs().to_vec();
    for i in 0..n {
        for j in 0..n {
            let pair_mask = (1usize << i) | (1usize << (n + j));
            let bij = b[(i, j)];
            for s in (0..c.len()).rev() {
                if s & pair_mask == pair_mask {
                    let add = c[s ^ pair_mask] * bij;
                    c[s] += add;
                }
            }
        }
    }
    g = Zeon::from_coeffs(pair.base(), c)?;
    Ok(integrate_all(&g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// `ĝ(ξ) = ∫ Π_i (1 ± ξ_i η_i) g(η) dη`, `+` forward and `−` inverse.
/// Evaluated literally in the doubled context.
pub fn fourier(g: &Zeon, dir: Direction) -> Result<Zeon> {
    let n = g.n();
    let pair = DualPairContext::new(n)?;
    let sign = match dir {
        Direction::Forward => 1.0,
        Direction::Inverse => -1.0,
    };
    let one = Zeon::one(pair.base());
    let mut kernel = one.clone();
    for i in 1..=n {
        let mono = SubsetIndex::from_vars(&[pair.primal(i), pair.conjugate(i)])?;
        let factor = &one + &Zeon::monomial(pair.base(), mono, C64::new(sign, 0.0));
        kernel = &kernel * &factor;
    }
    let integrand = &kernel * &pair.embed_primal(g)?;
    let primal: Vec<usize> = (1..=n).map(|i| pair.primal(i)).collect();
    pair.project_conjugate(&integrate(&integrand, &primal)?)
}

/// `H_I = (-1)^{|I|} e^{q} ∂_I e^{-q}` with `q = ½ e_1²`.
pub fn hermite(ctx: ZeonContext, vars: SubsetIndex) -> Result<Zeon> {
    let q = half_e1_squared(ctx);
    let sign = if vars.len().is_multiple_of(2) { 1.0 } else { -1.0 };
    let inner = derivative(&(-&q).exp(), vars)?;
    Ok((&q.exp() * &inner).scale(C64::new(sign, 0.0)))
}

/// `H_{|k|} = Σ_{|I|=k} H_I`.
pub fn hermite_degree(ctx: ZeonContext, k: usize) -> Result<Zeon> {
    if k > ctx.n() {
        return Err(ZeonError::Range(format!("degree {k} above n = {}", ctx.n())));
    }
    let mut acc = Zeon::zero(ctx);
    for s in 0..ctx.dim() as u32 {
        if s.count_ones() as usize == k {
            acc += &hermite(ctx, SubsetIndex(s))?;
        }
    }
    Ok(acc)
}

fn half_e1_squared(ctx: ZeonContext) -> Zeon {
    // ½(Σ η_i)² = Σ_{i<j} η_i η_j
    let mut q = Zeon::zero(ctx);
    for s in 0..ctx.dim() as u32 {
        if s.count_ones() == 2 {
            q.set(SubsetIndex(s), C64::new(1.0, 0.0));
        }
    }
    q
}
