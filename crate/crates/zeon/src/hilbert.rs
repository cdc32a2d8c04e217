//! Hilbert-space structure on η-functions: scalar product, the ω-forms,
//! bases, index labels and η-kernels.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::calculus::{integrate, DualPairContext};
use crate::{Result, SubsetIndex, Zeon, ZeonContext, ZeonError, C64};

const ZERO: C64 = C64::new(0.0, 0.0);

fn same_n(f: &Zeon, g: &Zeon) -> Result<()> {
    if f.n() != g.n() {
        Err(ZeonError::ContextMismatch(f.n(), g.n()))
    } else {
        Ok(())
    }
}

/// `⟨F, G⟩ = Σ conj(F_S) G_S`.
pub fn scalar_product(f: &Zeon, g: &Zeon) -> Result<C64> {
    same_n(f, g)?;
    Ok(f.coeffs().iter().zip(g.coeffs()).map(|(a, b)| a.conj() * b).sum())
}

pub fn norm(f: &Zeon) -> f64 {
    f.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalize(f: &Zeon) -> Result<Zeon> {
    let nrm = norm(f);
    if nrm <= f.ctx().tol() {
        return Err(ZeonError::Unnormalized(nrm * nrm));
    }
    Ok(f.scale(C64::new(1.0 / nrm, 0.0)))
}

/// `ω_n(F, G) = Σ_S (-1)^{|S|} F_S G_{S^c}`, the integral of `J(F)·G`.
pub fn omega_form(f: &Zeon, g: &Zeon) -> Result<C64> {
    same_n(f, g)?;
    let full = f.ctx().full_mask() as usize;
    let fc = f.coeffs();
    let gc = g.coeffs();
    Ok((0..fc.len())
        .map(|s| {
            let t = fc[s] * gc[full ^ s];
            if s.count_ones() % 2 == 1 {
                -t
            } else {
                t
            }
        })
        .sum())
}

/// `F ∧ G = (F_0 G_1 − F_1 G_0) η` for one variable.
pub fn wedge(f: &Zeon, g: &Zeon) -> Result<Zeon> {
    same_n(f, g)?;
    require_n(f, 1, "wedge")?;
    let c = f.body() * g.coeffs()[1] - f.coeffs()[1] * g.body();
    Ok(Zeon::monomial(f.ctx(), SubsetIndex(1), c))
}

/// `D_1(F, G) = ∫ F ∧ G dη`.
pub fn d1(f: &Zeon, g: &Zeon) -> Result<C64> {
    Ok(wedge(f, g)?.coeffs()[1])
}

/// Splits a two-variable function as `F = F(η_other) + η_k F̃(η_other)`,
/// both halves returned as one-variable functions.
pub fn split2(f: &Zeon, k: usize) -> Result<(Zeon, Zeon)> {
    require_n(f, 2, "split2")?;
    f.ctx().check_var(k)?;
    let other = 3 - k;
    let c1 = ZeonContext::with_tol(1, f.ctx().tol())?;
    let get = |vars: &[usize]| f.at(vars);
    let plain = Zeon::from_coeffs(c1, vec![get(&[]), get(&[other])])?;
    let tilde = Zeon::from_coeffs(c1, vec![get(&[k]), get(&[k.min(other), k.max(other)])])?;
    Ok((plain, tilde))
}

/// `C_2 = D_1(F(η_·), F̃(η_·))`, split along variable `k`.
pub fn c2_split(f: &Zeon, k: usize) -> Result<C64> {
    let (a, b) = split2(f, k)?;
    d1(&a, &b)
}

/// `C_2 = F_0 F_12 − F_1 F_2`.
pub fn c2(f: &Zeon) -> Result<C64> {
    require_n(f, 2, "c2")?;
    Ok(f.at(&[]) * f.at(&[1, 2]) - f.at(&[1]) * f.at(&[2]))
}

/// `D_2(F, G) = D_1(F, G̃) − D_1(G, F̃)`, split along variable `k`.
pub fn d2_split(f: &Zeon, g: &Zeon, k: usize) -> Result<C64> {
    same_n(f, g)?;
    let (fa, fb) = split2(f, k)?;
    let (ga, gb) = split2(g, k)?;
    Ok(d1(&fa, &gb)? - d1(&ga, &fb)?)
}

pub fn d2(f: &Zeon, g: &Zeon) -> Result<C64> {
    d2_split(f, g, 1)
}

fn require_n(f: &Zeon, n: usize, op: &'static str) -> Result<()> {
    if f.n() != n {
        let allowed = match n {
            1 => "{1}",
            2 => "{2}",
            3 => "{3}",
            _ => "{4}",
        };
        Err(ZeonError::UnsupportedN { op, allowed, n: f.n() })
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Monomial,
    Trigonometric,
}

#[derive(Clone, Debug)]
pub struct BasisSet {
    pub kind: BasisKind,
    pub elements: Vec<Zeon>,
}

/// Orthonormal bases. The trigonometric one lists `cos(η_1 ± … ± η_n)`
/// then `sin(…)`, sign patterns on `η_2..η_n` in binary-counter order
/// (`η_2` most significant, 1 means minus), all scaled by `2^{-(n-1)/2}`.
pub fn basis(ctx: ZeonContext, kind: BasisKind) -> BasisSet {
    let elements = match kind {
        BasisKind::Monomial => {
            (0..ctx.dim() as u32).map(|s| Zeon::monomial(ctx, SubsetIndex(s), C64::new(1.0, 0.0))).collect()
        }
        BasisKind::Trigonometric => {
            let n = ctx.n();
            let scale = C64::new((2f64).powf(-((n - 1) as f64) / 2.0), 0.0);
            let patterns = 1usize << (n - 1);
            let mut cos = Vec::with_capacity(patterns);
            let mut sin = Vec::with_capacity(patterns);
            for p in 0..patterns {
                let mut arg = Zeon::zero(ctx);
                arg.set(SubsetIndex(1), C64::new(1.0, 0.0));
                for v in 2..=n {
                    let minus = p & (1 << (n - v)) != 0;
                    arg.set(SubsetIndex::var(v), C64::new(if minus { -1.0 } else { 1.0 }, 0.0));
                }
                let (c, s) = arg.cos_sin();
                cos.push(c.scale(scale));
                sin.push(s.scale(scale));
            }
            cos.extend(sin);
            cos
        }
    };
    BasisSet { kind, elements }
}

/// One index in its three spellings: binary string (leftmost digit is
/// `η_1`), the decimal value of that string, and the variable subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexTriple {
    pub binary: String,
    pub decimal: usize,
    pub subset: SubsetIndex,
}

impl IndexTriple {
    /// `F_0`, `F_24`, …
    pub fn subset_label(&self) -> String {
        if self.subset.is_empty() {
            "F_0".into()
        } else {
            let digits: String = self.subset.vars().iter().map(|v| v.to_string()).collect();
            format!("F_{digits}")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexLabel {
    Binary(String),
    Decimal(usize),
    Subset(SubsetIndex),
}

pub fn index_convert(label: &IndexLabel, n: usize) -> Result<IndexTriple> {
    if n == 0 || n > crate::MAX_VARS {
        return Err(ZeonError::VarCount(n));
    }
    let subset = match label {
        IndexLabel::Binary(b) => {
            if b.len() != n || !b.chars().all(|c| c == '0' || c == '1') {
                return Err(ZeonError::MalformedLabel(b.clone()));
            }
            let mut mask = 0u32;
            for (i, ch) in b.chars().enumerate() {
                if ch == '1' {
                    mask |= 1 << i;
                }
            }
            SubsetIndex(mask)
        }
        IndexLabel::Decimal(d) => {
            if *d >= 1 << n {
                return Err(ZeonError::MalformedLabel(d.to_string()));
            }
            let mut mask = 0u32;
            for i in 0..n {
                if d & (1 << (n - 1 - i)) != 0 {
                    mask |= 1 << i;
                }
            }
            SubsetIndex(mask)
        }
        IndexLabel::Subset(s) => {
            if s.mask() as usize >= 1 << n {
                return Err(ZeonError::IndexOutOfRange { mask: s.mask(), n });
            }
            *s
        }
    };
    Ok(triple_of(subset, n))
}

pub fn triple_of(subset: SubsetIndex, n: usize) -> IndexTriple {
    let binary: String = (1..=n).map(|v| if subset.contains(v) { '1' } else { '0' }).collect();
    let decimal = usize::from_str_radix(&binary, 2).expect("binary digits");
    IndexTriple { binary, decimal, subset }
}

/// An operator kernel `A(η, η')` living in the doubled context.
#[derive(Clone, Debug)]
pub struct KernelFunction {
    pub name: String,
    pub pair: DualPairContext,
    pub kernel: Zeon,
}

impl KernelFunction {
    pub fn new(name: &str, pair: DualPairContext, kernel: Zeon) -> Result<Self> {
        if kernel.n() != pair.base().n() {
            return Err(ZeonError::ContextMismatch(kernel.n(), pair.base().n()));
        }
        Ok(KernelFunction { name: name.to_string(), pair, kernel })
    }

    /// `A_{I|J}`: coefficient of `η^I η'^J`.
    pub fn entry(&self, i: SubsetIndex, j: SubsetIndex) -> C64 {
        self.kernel.coeff(SubsetIndex(i.mask() | (j.mask() << self.pair.n())))
    }
}

pub const KERNEL_NAMES: [&str; 9] = ["id", "d+", "d", "pi0", "pi1", "sigma3", "sigma1", "epsilon", "hadamard"];

/// One-qubit kernels, written in terms of `η` (variable 1) and `η'` (variable 2).
pub fn kernel_library(name: &str) -> Result<KernelFunction> {
    let pair = DualPairContext::new(1)?;
    let h = FRAC_1_SQRT_2;
    // coefficients on 1, η, η', ηη'
    let c: [f64; 4] = match name {
        "id" => [0.0, 1.0, 1.0, 0.0],
        "d+" => [0.0, 0.0, 0.0, 1.0],
        "d" => [1.0, 0.0, 0.0, 0.0],
        "pi0" => [0.0, 0.0, 1.0, 0.0],
        "pi1" => [0.0, 1.0, 0.0, 0.0],
        "sigma3" => [0.0, -1.0, 1.0, 0.0],
        // e^{η'η} and e^{-η'η}
        "sigma1" => [1.0, 0.0, 0.0, 1.0],
        "epsilon" => [1.0, 0.0, 0.0, -1.0],
        "hadamard" => [h, -h, h, h],
        _ => return Err(ZeonError::Range(format!("unknown kernel '{name}'"))),
    };
    KernelFunction::new(name, pair, Zeon::from_real(pair.base(), &c)?)
}

/// `(AF)_I = Σ_J A_{I|J} F_{J^c}`.
pub fn kernel_apply(a: &KernelFunction, f: &Zeon) -> Result<Zeon> {
    let n = a.pair.n();
    if f.n() != n {
        return Err(ZeonError::ContextMismatch(f.n(), n));
    }
    let full = f.ctx().full_mask();
    let mut out = Zeon::zero(f.ctx());
    for i in 0..f.ctx().dim() as u32 {
        let mut acc = ZERO;
        for j in 0..f.ctx().dim() as u32 {
            acc += a.entry(SubsetIndex(i), SubsetIndex(j)) * f.coeff(SubsetIndex(full ^ j));
        }
        out.set(SubsetIndex(i), acc);
    }
    Ok(out)
}

/// `∫ A(η, η') F(η') dη'`, computed literally in the doubled context.
pub fn kernel_apply_integral(a: &KernelFunction, f: &Zeon) -> Result<Zeon> {
    let pair = a.pair;
    let embedded = pair.embed_conjugate(f)?;
    let product = &a.kernel * &embedded;
    let primed: Vec<usize> = (1..=pair.n()).map(|i| pair.conjugate(i)).collect();
    let reduced = integrate(&product, &primed)?;
    let ctx = ZeonContext::with_tol(pair.n(), f.ctx().tol())?;
    let low = ctx.full_mask() as usize;
    Zeon::from_coeffs(ctx, reduced.coeffs()[..=low].to_vec())
}
