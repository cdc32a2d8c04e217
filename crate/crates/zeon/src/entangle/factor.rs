//! Separability tests built from vanishing Wronskians, with explicit factors.

use std::fmt;

use super::wronskian::wronskian;
use super::{bit, scaled_tol};
use crate::calculus::{d, derivative};
use crate::{Result, SubsetIndex, Zeon, ZeonError, C64};

/// Two disjoint groups of variables. Variables in neither group are shared
/// (only meaningful for the weak test).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Partition {
    pub fn new(mut left: Vec<usize>, mut right: Vec<usize>) -> Result<Self> {
        left.sort_unstable();
        right.sort_unstable();
        if left.is_empty() || right.is_empty() {
            return Err(ZeonError::InvalidPartition("both groups must be nonempty".into()));
        }
        let mut seen = 0u32;
        for &v in left.iter().chain(&right) {
            if v == 0 || v > crate::MAX_VARS {
                return Err(ZeonError::InvalidPartition(format!("variable {v} out of range")));
            }
            if seen & bit(v) != 0 {
                return Err(ZeonError::InvalidPartition(format!("variable {v} appears twice")));
            }
            seen |= bit(v);
        }
        Ok(Partition { left, right })
    }

    /// Accepts `(12)(3)`, `12|3` and `1,2|3`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || ZeonError::InvalidPartition(format!("cannot read '{s}'"));
        let groups: Vec<&str> = if s.contains('|') {
            s.split('|').collect()
        } else {
            let t = s.trim();
            if !t.starts_with('(') || !t.ends_with(')') {
                return Err(bad());
            }
            t[1..t.len() - 1].split(")(").collect()
        };
        if groups.len() != 2 {
            return Err(bad());
        }
        let read = |g: &str| -> Result<Vec<usize>> {
            g.chars()
                .filter(|c| !c.is_whitespace() && *c != ',')
                .map(|c| c.to_digit(10).filter(|&v| v > 0).map(|v| v as usize).ok_or_else(bad))
                .collect()
        };
        Partition::new(read(groups[0])?, read(groups[1])?)
    }

    fn mask(vars: &[usize]) -> u32 {
        vars.iter().fold(0, |m, &v| m | bit(v))
    }

    pub fn left_mask(&self) -> u32 {
        Self::mask(&self.left)
    }

    pub fn right_mask(&self) -> u32 {
        Self::mask(&self.right)
    }

    pub fn covers(&self, n: usize) -> bool {
        self.left.len() + self.right.len() == n
    }

    fn check(&self, n: usize) -> Result<()> {
        if let Some(&v) = self.left.iter().chain(&self.right).find(|&&v| v > n) {
            return Err(ZeonError::InvalidPartition(format!("variable {v} above n = {n}")));
        }
        Ok(())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<String>();
        write!(f, "({})({})", g(&self.left), g(&self.right))
    }
}

/// Every split of `{1..n}` into two nonempty groups, `1` always on the left.
pub fn all_bipartitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let rest: Vec<usize> = (2..=n).collect();
    for m in 0..(1u32 << (n - 1)) - 1 {
        let mut left = vec![1];
        let mut right = Vec::new();
        for (b, &v) in rest.iter().enumerate() {
            if m & (1 << b) != 0 {
                left.push(v);
            } else {
                right.push(v);
            }
        }
        out.push(Partition { left, right });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorMode {
    /// `w_ij(F) = 0` across the split; the factors may share the remaining
    /// variables.
    Weak,
    /// `w_ij(∂_S F) = 0` across the split for every `S` of the other variables.
    Strong,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub i: usize,
    pub j: usize,
    /// Variables differentiated before taking the Wronskian.
    pub derivs: SubsetIndex,
    pub value: Zeon,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorResult {
    pub partition: Partition,
    pub mode: FactorMode,
    pub separable: bool,
    pub conditions: Vec<Condition>,
    /// `(G, G̃)` with `G·G̃ = F`, `G` on the left group (plus any shared
    /// variables), `G̃` on the right.
    pub factors: Option<(Zeon, Zeon)>,
}

pub fn factor_test(f: &Zeon, partition: &Partition, mode: FactorMode) -> Result<FactorResult> {
    let n = f.n();
    partition.check(n)?;
    if mode == FactorMode::Strong && !partition.covers(n) {
        return Err(ZeonError::InvalidPartition(format!("strong test needs a split of all {n} variables, got {partition}")));
    }
    let tol = scaled_tol(f, 2);
    let mut conditions = Vec::new();
    for &i in &partition.left {
        for &j in &partition.right {
            let rest = f.ctx().full_mask() & !(bit(i) | bit(j));
            let subsets: Vec<u32> = match mode {
                FactorMode::Weak => vec![0],
                FactorMode::Strong => (0..=rest).filter(|s| s & !rest == 0).collect(),
            };
            for s in subsets {
                let g = derivative(f, SubsetIndex(s))?;
                let value = wronskian(&g, i, j)?;
                let vanishes = value.is_zero_within(tol);
                conditions.push(Condition { i, j, derivs: SubsetIndex(s), value, vanishes });
            }
        }
    }
    let separable = conditions.iter().all(|c| c.vanishes);
    let factors = if !separable {
        None
    } else if partition.covers(n) {
        let pair = slice_factors(f, partition);
        if pair.is_none() && mode == FactorMode::Strong {
            return Err(ZeonError::Consistency(format!("Wronskians vanish across {partition} but the slices do not reassemble F")));
        }
        pair
    } else {
        log_factors(f, partition)
    };
    Ok(FactorResult { partition: partition.clone(), mode, separable, conditions, factors })
}

// Rank-one slicing around the largest coefficient: G(A) = F(·, b0) and
// G̃(B) = F(a0, ·)/F(a0, b0). Returns None if the product misses F.
fn slice_factors(f: &Zeon, p: &Partition) -> Option<(Zeon, Zeon)> {
    let ctx = f.ctx();
    let (am, bm) = (p.left_mask(), p.right_mask());
    let c = f.coeffs();
    let pivot = (0..c.len()).max_by(|&x, &y| c[x].norm().total_cmp(&c[y].norm())).unwrap_or(0);
    let (a0, b0) = (pivot as u32 & am, pivot as u32 & bm);
    let pv = c[pivot];
    if pv.norm() == 0.0 {
        return Some((Zeon::zero(ctx), Zeon::one(ctx)));
    }
    let mut g = Zeon::zero(ctx);
    let mut gt = Zeon::zero(ctx);
    for s in 0..c.len() as u32 {
        if s & !am == 0 {
            g.set(SubsetIndex(s), c[(s | b0) as usize]);
        }
        if s & !bm == 0 {
            gt.set(SubsetIndex(s), c[(a0 | s) as usize] / pv);
        }
    }
    let prod = &g * &gt;
    (prod.max_abs_diff(f) <= scaled_tol(f, 1)).then_some((g, gt))
}

// Weak split with shared variables, available when the body is nonzero:
// the logarithm separates into terms touching the left or the right group.
fn log_factors(f: &Zeon, p: &Partition) -> Option<(Zeon, Zeon)> {
    let body = f.body();
    if body.norm() <= f.ctx().tol() {
        return None;
    }
    let t = tanglemeter(f).ok()?;
    let (am, bm) = (p.left_mask(), p.right_mask());
    let mut left = Zeon::zero(f.ctx());
    let mut right = Zeon::zero(f.ctx());
    for (s, c) in t.terms() {
        match (s.mask() & am != 0, s.mask() & bm != 0) {
            (true, true) => {
                if c.norm() > scaled_tol(f, 1) {
                    return None;
                }
            }
            (false, true) => right.set(s, c),
            _ => left.set(s, c),
        }
    }
    let g = left.exp().scale(body);
    let gt = right.exp();
    let prod = &g * &gt;
    (prod.max_abs_diff(f) <= scaled_tol(f, 1)).then_some((g, gt))
}

/// `log(F/F_∅)`; mixed second derivatives vanish exactly across separable
/// splits.
pub fn tanglemeter(f: &Zeon) -> Result<Zeon> {
    let b = f.body();
    if b.norm() <= f.ctx().tol() {
        return Err(ZeonError::ZeroBody(b.norm()));
    }
    f.scale(C64::new(1.0, 0.0) / b).log()
}

/// Separability across `partition` read off the tanglemeter: every
/// `∂_i∂_j log(F/F_∅)` with `i` left and `j` right vanishes.
pub fn tanglemeter_separable(f: &Zeon, partition: &Partition) -> Result<bool> {
    partition.check(f.n())?;
    let t = tanglemeter(f)?;
    let tol = scaled_tol(&t, 1);
    Ok(partition.left.iter().all(|&i| partition.right.iter().all(|&j| d(&d(&t, i), j).is_zero_within(tol))))
}
