//! The zeon value type and its ring and series operations.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

pub use num_complex::Complex64 as C64;

use crate::{linalg::CMatrix, Result, ZeonError};

pub const MAX_VARS: usize = 16;
pub const DEFAULT_TOL: f64 = 1e-9;

/// Products in contexts at least this large go through the ranked
/// zeta/Möbius transform instead of the submask loop.
pub const FAST_MUL_THRESHOLD: usize = 10;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeonContext {
    n: usize,
    tol: f64,
}

impl ZeonContext {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_tol(n, DEFAULT_TOL)
    }

    pub fn with_tol(n: usize, tol: f64) -> Result<Self> {
        if n == 0 || n > MAX_VARS {
            return Err(ZeonError::VarCount(n));
        }
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(ZeonError::Tolerance(tol));
        }
        Ok(ZeonContext { n, tol })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn full_mask(&self) -> u32 {
        (self.dim() - 1) as u32
    }

    pub fn check_var(&self, var: usize) -> Result<()> {
        if var == 0 || var > self.n {
            Err(ZeonError::VariableOutOfRange { var, n: self.n })
        } else {
            Ok(())
        }
    }

    fn same_shape(&self, other: &ZeonContext) -> Result<()> {
        if self.n != other.n {
            Err(ZeonError::ContextMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }
}

/// A set of variables as a bitmask: bit `i-1` set means `η_i` is present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetIndex(pub u32);

impl SubsetIndex {
    pub const EMPTY: SubsetIndex = SubsetIndex(0);

    /// Builds the subset from 1-based variable numbers.
    pub fn from_vars(vars: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &v in vars {
            if v == 0 || v > MAX_VARS {
                return Err(ZeonError::VariableOutOfRange { var: v, n: MAX_VARS });
            }
            let bit = 1u32 << (v - 1);
            if mask & bit != 0 {
                return Err(ZeonError::DuplicateVariable(v));
            }
            mask |= bit;
        }
        Ok(SubsetIndex(mask))
    }

    pub fn var(v: usize) -> Self {
        debug_assert!((1..=MAX_VARS).contains(&v));
        SubsetIndex(1 << (v - 1))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=32).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    /// Variables in increasing order, 1-based.
    pub fn vars(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "∅");
        }
        let vars: Vec<String> = self.vars().iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", vars.join(","))
    }
}

/// An η-function: `coeffs[S]` is the coefficient of `Π_{i∈S} η_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Zeon {
    ctx: ZeonContext,
    coeffs: Vec<C64>,
}

impl Zeon {
    pub fn zero(ctx: ZeonContext) -> Self {
        Zeon { ctx, coeffs: vec![ZERO; ctx.dim()] }
    }

    pub fn one(ctx: ZeonContext) -> Self {
        Self::scalar(ctx, ONE)
    }

    pub fn scalar(ctx: ZeonContext, c: C64) -> Self {
        let mut z = Self::zero(ctx);
        z.coeffs[0] = c;
        z
    }

    /// The generator `η_var`.
    pub fn var(ctx: ZeonContext, var: usize) -> Result<Self> {
        ctx.check_var(var)?;
        Ok(Self::monomial(ctx, SubsetIndex::var(var), ONE))
    }

    pub fn monomial(ctx: ZeonContext, s: SubsetIndex, c: C64) -> Self {
        assert!((s.0 as usize) < ctx.dim(), "subset {:#b} out of range", s.0);
        let mut z = Self::zero(ctx);
        z.coeffs[s.0 as usize] = c;
        z
    }

    /// Listed coefficients, everything else zero.
    pub fn make(ctx: ZeonContext, entries: &[(SubsetIndex, C64)]) -> Result<Self> {
        let mut z = Self::zero(ctx);
        let mut seen = vec![false; ctx.dim()];
        for &(s, c) in entries {
            let i = s.0 as usize;
            if i >= ctx.dim() {
                return Err(ZeonError::IndexOutOfRange { mask: s.0, n: ctx.n });
            }
            if seen[i] {
                return Err(ZeonError::DuplicateIndex(s.0));
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(ZeonError::NonFinite);
            }
            seen[i] = true;
            z.coeffs[i] = c;
        }
        Ok(z)
    }

    pub fn from_coeffs(ctx: ZeonContext, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != ctx.dim() {
            return Err(ZeonError::LengthMismatch { got: coeffs.len(), n: ctx.n });
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(ZeonError::NonFinite);
        }
        Ok(Zeon { ctx, coeffs })
    }

    pub fn from_real(ctx: ZeonContext, coeffs: &[f64]) -> Result<Self> {
        Self::from_coeffs(ctx, coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn ctx(&self) -> ZeonContext {
        self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    pub fn coeff(&self, s: SubsetIndex) -> C64 {
        self.coeffs[s.0 as usize]
    }

    /// Coefficient by 1-based variable list, e.g. `at(&[1, 2])` is `F_12`.
    pub fn at(&self, vars: &[usize]) -> C64 {
        let s = SubsetIndex::from_vars(vars).expect("valid variable list");
        self.coeff(s)
    }

    pub fn set(&mut self, s: SubsetIndex, c: C64) {
        self.coeffs[s.0 as usize] = c;
    }

    pub fn body(&self) -> C64 {
        self.coeffs[0]
    }

    pub fn soul(&self) -> Zeon {
        let mut s = self.clone();
        s.coeffs[0] = ZERO;
        s
    }

    /// Every coefficient below the context tolerance.
    pub fn is_zero(&self) -> bool {
        self.is_zero_within(self.ctx.tol)
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.norm() < tol)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Zeon) -> f64 {
        assert_eq!(self.ctx.n, other.ctx.n, "context mismatch");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Zeon, tol: f64) -> bool {
        self.ctx.n == other.ctx.n && self.max_abs_diff(other) < tol
    }

    pub fn is_scalar(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.norm() < self.ctx.tol)
    }

    pub fn scale(&self, c: C64) -> Zeon {
        self.map(|x| x * c)
    }

    pub fn conj(&self) -> Zeon {
        self.map(|x| x.conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Zeon {
        Zeon { ctx: self.ctx, coeffs: self.coeffs.iter().map(|&c| f(c)).collect() }
    }

    /// Coefficient-wise `(S, F_S)` pairs with `|F_S| ≥ tol`.
    pub fn terms(&self) -> impl Iterator<Item = (SubsetIndex, C64)> + '_ {
        let tol = self.ctx.tol;
        self.coeffs
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.norm() >= tol)
            .map(|(s, &c)| (SubsetIndex(s as u32), c))
    }

    pub fn try_add(&self, other: &Zeon) -> Result<Zeon> {
        self.ctx.same_shape(&other.ctx)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Zeon) -> Result<Zeon> {
        self.ctx.same_shape(&other.ctx)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Zeon, f: impl Fn(C64, C64) -> C64) -> Zeon {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b)).collect();
        Zeon { ctx: self.ctx, coeffs }
    }

    /// Product; dispatches to the transform path for large contexts.
    pub fn multiply(&self, other: &Zeon) -> Result<Zeon> {
        self.ctx.same_shape(&other.ctx)?;
        Ok(if self.ctx.n >= FAST_MUL_THRESHOLD {
            self.mul_transform(other)
        } else {
            self.mul_submask(other)
        })
    }

    /// `(FG)_S = Σ_{A⊆S} F_A G_{S∖A}`, 3^n work.
    pub fn mul_submask(&self, other: &Zeon) -> Zeon {
        assert_eq!(self.ctx.n, other.ctx.n, "context mismatch");
        let f = &self.coeffs;
        let g = &other.coeffs;
        let mut out = vec![ZERO; f.len()];
        for (s, o) in out.iter_mut().enumerate() {
            let mut acc = f[0] * g[s];
            let mut a = s;
            while a != 0 {
                acc += f[a] * g[s ^ a];
                a = (a - 1) & s;
            }
            *o = acc;
        }
        Zeon { ctx: self.ctx, coeffs: out }
    }

    /// Ranked zeta/Möbius subset convolution, n²·2^n work.
    pub fn mul_transform(&self, other: &Zeon) -> Zeon {
        assert_eq!(self.ctx.n, other.ctx.n, "context mismatch");
        let n = self.ctx.n;
        let dim = self.ctx.dim();
        let ranked = |c: &[C64]| {
            let mut r = vec![vec![ZERO; dim]; n + 1];
            for (s, &v) in c.iter().enumerate() {
                r[s.count_ones() as usize][s] = v;
            }
            for layer in r.iter_mut() {
                zeta(layer, n);
            }
            r
        };
        let fr = ranked(&self.coeffs);
        let gr = ranked(&other.coeffs);
        let mut hr = vec![vec![ZERO; dim]; n + 1];
        for (k, layer) in hr.iter_mut().enumerate() {
            for (s, h) in layer.iter_mut().enumerate() {
                let mut acc = ZERO;
                for j in 0..=k {
                    acc += fr[j][s] * gr[k - j][s];
                }
                *h = acc;
            }
            mobius(layer, n);
        }
        let coeffs = (0..dim).map(|s| hr[s.count_ones() as usize][s]).collect();
        Zeon { ctx: self.ctx, coeffs }
    }

    /// `F^m` by repeated squaring.
    pub fn power(&self, mut m: u64) -> Zeon {
        let mut base = self.clone();
        let mut acc = Zeon::one(self.ctx);
        while m > 0 {
            if m & 1 == 1 {
                acc = &acc * &base;
            }
            m >>= 1;
            if m > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `Σ_{k=0}^{n} c_k s^k` for the soul `s`; exact since `s^{n+1} = 0`.
    fn soul_series(&self, s: &Zeon, coeff: impl Fn(usize) -> C64) -> Zeon {
        let n = self.ctx.n;
        let mut acc = Zeon::scalar(self.ctx, coeff(n));
        for k in (0..n).rev() {
            acc = &(&acc * s) + &Zeon::scalar(self.ctx, coeff(k));
        }
        acc
    }

    fn check_body(&self) -> Result<C64> {
        let b = self.body();
        if b.norm() <= self.ctx.tol {
            Err(ZeonError::ZeroBody(b.norm()))
        } else {
            Ok(b)
        }
    }

    pub fn invert(&self) -> Result<Zeon> {
        let b = self.check_body()?;
        let binv = b.inv();
        let t = self.soul().scale(-binv);
        Ok(self.soul_series(&t, |_| ONE).scale(binv))
    }

    pub fn exp(&self) -> Zeon {
        let s = self.soul();
        let mut fact = vec![1.0f64; self.ctx.n + 1];
        for k in 1..fact.len() {
            fact[k] = fact[k - 1] * k as f64;
        }
        self.soul_series(&s, |k| C64::new(1.0 / fact[k], 0.0)).scale(self.body().exp())
    }

    /// Principal branch on the body.
    pub fn log(&self) -> Result<Zeon> {
        let b = self.check_body()?;
        let t = self.soul().scale(b.inv());
        let series = self.soul_series(&t, |k| {
            if k == 0 {
                ZERO
            } else {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                C64::new(sign / k as f64, 0.0)
            }
        });
        Ok(&series + &Zeon::scalar(self.ctx, b.ln()))
    }

    /// `(cos F, sin F)`.
    pub fn cos_sin(&self) -> (Zeon, Zeon) {
        let s = self.soul();
        let n = self.ctx.n;
        let mut fact = vec![1.0f64; n + 1];
        for k in 1..fact.len() {
            fact[k] = fact[k - 1] * k as f64;
        }
        // cos s = Σ (-1)^j s^{2j}/(2j)!, sin s = Σ (-1)^j s^{2j+1}/(2j+1)!
        let cos_s = self.soul_series(&s, |k| {
            if k % 2 == 1 {
                ZERO
            } else {
                C64::new(if (k / 2) % 2 == 0 { 1.0 } else { -1.0 } / fact[k], 0.0)
            }
        });
        let sin_s = self.soul_series(&s, |k| {
            if k % 2 == 0 {
                ZERO
            } else {
                C64::new(if (k / 2) % 2 == 0 { 1.0 } else { -1.0 } / fact[k], 0.0)
            }
        });
        let b = self.body();
        let (cb, sb) = (b.cos(), b.sin());
        let cos = &cos_s.scale(cb) - &sin_s.scale(sb);
        let sin = &sin_s.scale(cb) + &cos_s.scale(sb);
        (cos, sin)
    }

    pub fn cos(&self) -> Zeon {
        self.cos_sin().0
    }

    pub fn sin(&self) -> Zeon {
        self.cos_sin().1
    }

    pub fn involution(&self, which: Involution) -> Result<Zeon> {
        match which {
            Involution::Dual => Ok(self.dual()),
            Involution::Grade => Ok(self.grade()),
            Involution::GradeAt(i) => self.grade_at(i),
        }
    }

    /// Θ: `F_S → F_{S^c}`.
    pub fn dual(&self) -> Zeon {
        let full = self.ctx.full_mask() as usize;
        let coeffs = (0..self.coeffs.len()).map(|s| self.coeffs[full ^ s]).collect();
        Zeon { ctx: self.ctx, coeffs }
    }

    /// J: `F_S → (-1)^{|S|} F_S`.
    pub fn grade(&self) -> Zeon {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(s, &c)| if s.count_ones() % 2 == 1 { -c } else { c })
            .collect();
        Zeon { ctx: self.ctx, coeffs }
    }

    /// `J_i`: `η_i → -η_i`.
    pub fn grade_at(&self, i: usize) -> Result<Zeon> {
        self.ctx.check_var(i)?;
        let bit = 1usize << (i - 1);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(s, &c)| if s & bit != 0 { -c } else { c })
            .collect();
        Ok(Zeon { ctx: self.ctx, coeffs })
    }

    /// `π_{k|0}` keeps terms without `η_k`, `π_{k|1}` those with it.
    pub fn projector(&self, k: usize, slot: Slot) -> Result<Zeon> {
        self.ctx.check_var(k)?;
        let bit = 1usize << (k - 1);
        let keep = matches!(slot, Slot::One);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(s, &c)| if (s & bit != 0) == keep { c } else { ZERO })
            .collect();
        Ok(Zeon { ctx: self.ctx, coeffs })
    }

    /// `F|_{η_k = 0}`, same as `π_{k|0} F`.
    pub fn at_zero(&self, k: usize) -> Result<Zeon> {
        self.projector(k, Slot::Zero)
    }

    /// Re-express in a context with more variables (same coefficients).
    pub fn embed(&self, ctx: ZeonContext) -> Result<Zeon> {
        if ctx.n < self.ctx.n {
            return Err(ZeonError::ContextMismatch(self.ctx.n, ctx.n));
        }
        let mut z = Zeon::zero(ctx);
        z.coeffs[..self.coeffs.len()].copy_from_slice(&self.coeffs);
        Ok(z)
    }

    /// Rename variables: `η_i → η_{perm[i-1]}` (1-based targets).
    pub fn relabel(&self, perm: &[usize]) -> Result<Zeon> {
        let n = self.ctx.n;
        if perm.len() != n {
            return Err(ZeonError::Range(format!("permutation of length {} for n = {n}", perm.len())));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            self.ctx.check_var(p)?;
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(ZeonError::DuplicateVariable(p));
            }
        }
        let mut z = Zeon::zero(self.ctx);
        for (s, &c) in self.coeffs.iter().enumerate() {
            let mut t = 0usize;
            for (b, &p) in perm.iter().enumerate() {
                if s & (1 << b) != 0 {
                    t |= 1 << (p - 1);
                }
            }
            z.coeffs[t] = c;
        }
        Ok(z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    Dual,
    Grade,
    GradeAt(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Zero,
    One,
}

fn zeta(a: &mut [C64], n: usize) {
    for b in 0..n {
        let bit = 1 << b;
        for s in 0..a.len() {
            if s & bit != 0 {
                a[s] += a[s ^ bit];
            }
        }
    }
}

fn mobius(a: &mut [C64], n: usize) {
    for b in 0..n {
        let bit = 1 << b;
        for s in 0..a.len() {
            if s & bit != 0 {
                a[s] -= a[s ^ bit];
            }
        }
    }
}

pub fn make_zeon(ctx: ZeonContext, entries: &[(SubsetIndex, C64)]) -> Result<Zeon> {
    Zeon::make(ctx, entries)
}

pub fn multiply(f: &Zeon, g: &Zeon) -> Result<Zeon> {
    f.multiply(g)
}

/// Principal minors of a symmetric matrix, with the empty minor equal to 1.
pub fn xi_map(b: &CMatrix) -> Result<Zeon> {
    let n = b.dim();
    if b.rows() != b.cols() {
        return Err(ZeonError::NotSquare { rows: b.rows(), cols: b.cols() });
    }
    for i in 0..n {
        for j in 0..i {
            if (b[(i, j)] - b[(j, i)]).norm() > DEFAULT_TOL {
                return Err(ZeonError::NotSymmetric);
            }
        }
    }
    let ctx = ZeonContext::new(n)?;
    let mut z = Zeon::zero(ctx);
    for s in 0..ctx.dim() {
        let idx: Vec<usize> = (0..n).filter(|&i| s & (1 << i) != 0).collect();
        z.coeffs[s] = b.submatrix(&idx, &idx).det();
    }
    Ok(z)
}

impl fmt::Display for Zeon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            for v in s.vars() {
                write!(f, "·η{v}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Operator sugar. These panic on a context mismatch; use the `try_*` and
// `multiply` methods when the contexts are not known to agree.

impl<'a> Add<&'a Zeon> for &'a Zeon {
    type Output = Zeon;
    fn add(self, rhs: &Zeon) -> Zeon {
        self.try_add(rhs).expect("context mismatch in +")
    }
}

impl<'a> Sub<&'a Zeon> for &'a Zeon {
    type Output = Zeon;
    fn sub(self, rhs: &Zeon) -> Zeon {
        self.try_sub(rhs).expect("context mismatch in -")
    }
}

impl<'a> Mul<&'a Zeon> for &'a Zeon {
    type Output = Zeon;
    fn mul(self, rhs: &Zeon) -> Zeon {
        self.multiply(rhs).expect("context mismatch in *")
    }
}

impl Add for Zeon {
    type Output = Zeon;
    fn add(self, rhs: Zeon) -> Zeon {
        &self + &rhs
    }
}

impl Sub for Zeon {
    type Output = Zeon;
    fn sub(self, rhs: Zeon) -> Zeon {
        &self - &rhs
    }
}

impl Mul for Zeon {
    type Output = Zeon;
    fn mul(self, rhs: Zeon) -> Zeon {
        &self * &rhs
    }
}

impl Mul<C64> for &Zeon {
    type Output = Zeon;
    fn mul(self, rhs: C64) -> Zeon {
        self.scale(rhs)
    }
}

impl Mul<f64> for &Zeon {
    type Output = Zeon;
    fn mul(self, rhs: f64) -> Zeon {
        self.scale(C64::new(rhs, 0.0))
    }
}

impl Mul<C64> for Zeon {
    type Output = Zeon;
    fn mul(self, rhs: C64) -> Zeon {
        self.scale(rhs)
    }
}

impl Mul<f64> for Zeon {
    type Output = Zeon;
    fn mul(self, rhs: f64) -> Zeon {
        self.scale(C64::new(rhs, 0.0))
    }
}

impl Neg for &Zeon {
    type Output = Zeon;
    fn neg(self) -> Zeon {
        self.map(|c| -c)
    }
}

impl Neg for Zeon {
    type Output = Zeon;
    fn neg(self) -> Zeon {
        -&self
    }
}

impl AddAssign<&Zeon> for Zeon {
    fn add_assign(&mut self, rhs: &Zeon) {
        assert_eq!(self.ctx.n, rhs.ctx.n, "context mismatch in +=");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Zeon> for Zeon {
    fn sub_assign(&mut self, rhs: &Zeon) {
        assert_eq!(self.ctx.n, rhs.ctx.n, "context mismatch in -=");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}
