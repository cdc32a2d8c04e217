//! Named states: Bell, GHZ, W and cluster-W states, the two-pair families
//! used to probe 4-qubit monotones, and the nine SLOCC representatives.

use std::f64::consts::FRAC_1_SQRT_2;

use super::others;
use crate::{Result, SubsetIndex, Zeon, ZeonContext, ZeonError, C64};

/// Canonical names; `(ij)` and `(jk,l)` stand for variable indices and
/// `Psi*` take up to four complex parameters `a, b, c, d`.
pub const STATE_NAMES: [&str; 31] = [
    "ghz2+",
    "ghz2-",
    "w2+",
    "w2-",
    "ghz3",
    "w3",
    "cw3",
    "ghz4",
    "w4",
    "cw4",
    "phi_pp(ij)",
    "phi_pm(ij)",
    "phi_mp(ij)",
    "phi_mm(ij)",
    "chi_pp(ij)",
    "chi_pm(ij)",
    "chi_mp(ij)",
    "chi_mm(ij)",
    "psi_pm(ij)",
    "psi_mp(ij)",
    "lambda_pm(ij)",
    "lambda_mp(ij)",
    "lambda_literal_pm(ij)",
    "lambda_literal_mp(ij)",
    "phiA+(jk,l)",
    "phiA-(jk,l)",
    "phiTilde+",
    "phiTilde-",
    "Psi1(a,b,c,d) .. Psi6(a,b,c,d)",
    "Psi7, Psi8",
    "Psi9",
];

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn ctx(n: usize) -> ZeonContext {
    ZeonContext::new(n).expect("small context")
}

fn mono(n: usize, vars: &[usize], coef: C64) -> Zeon {
    Zeon::monomial(ctx(n), SubsetIndex::from_vars(vars).expect("distinct variables"), coef)
}

// Sum of `coef · η_S` over the listed subsets, written as digit strings.
fn terms(n: usize, coef: C64, subsets: &[&str]) -> Zeon {
    let mut z = Zeon::zero(ctx(n));
    for s in subsets {
        let vars: Vec<usize> = s.chars().map(|ch| ch.to_digit(10).expect("digit") as usize).collect();
        z += &mono(n, &vars, coef);
    }
    z
}

fn sign(plus: bool) -> f64 {
    if plus {
        1.0
    } else {
        -1.0
    }
}

/// `(1 ± η_iη_j)/√2` in `n` variables.
fn ghz_pair(n: usize, i: usize, j: usize, plus: bool) -> Zeon {
    &mono(n, &[], c(FRAC_1_SQRT_2)) + &mono(n, &[i, j], c(sign(plus) * FRAC_1_SQRT_2))
}

/// `(η_i ± η_j)/√2` in `n` variables.
fn w_pair(n: usize, i: usize, j: usize, plus: bool) -> Zeon {
    &mono(n, &[i], c(FRAC_1_SQRT_2)) + &mono(n, &[j], c(sign(plus) * FRAC_1_SQRT_2))
}

fn ghz(n: usize, plus: bool) -> Zeon {
    let all: Vec<usize> = (1..=n).collect();
    &mono(n, &[], c(FRAC_1_SQRT_2)) + &mono(n, &all, c(sign(plus) * FRAC_1_SQRT_2))
}

fn w(n: usize) -> Zeon {
    let mut z = Zeon::zero(ctx(n));
    for i in 1..=n {
        z += &mono(n, &[i], c(1.0 / (n as f64).sqrt()));
    }
    z
}

/// Normalized sum of all degree-2 monomials.
fn cw(n: usize) -> Zeon {
    let count = (n * (n - 1) / 2) as f64;
    let mut z = Zeon::zero(ctx(n));
    for i in 1..=n {
        for j in i + 1..=n {
            z += &mono(n, &[i, j], c(1.0 / count.sqrt()));
        }
    }
    z
}

#[derive(Clone, Copy)]
enum Pair {
    Ghz,
    W,
}

// (√2/2)(X_a^{(ij)} + η_kη_l Y_b^{(ij)}).
fn two_pair(x: Pair, a: bool, y: Pair, b: bool, i: usize, j: usize) -> Zeon {
    let kl = others(4, &[i, j]);
    let make = |p: Pair, s: bool| match p {
        Pair::Ghz => ghz_pair(4, i, j, s),
        Pair::W => w_pair(4, i, j, s),
    };
    let second = &mono(4, &kl, c(1.0)) * &make(y, b);
    (&make(x, a) + &second).scale(c(FRAC_1_SQRT_2))
}

/// `(1/√3)(ψ_GHZ± + η_j ψ_W^{(kl)} + η_k ψ_W^{(il)})` with `i` the fourth index.
fn phi_a(plus: bool, j: usize, k: usize, l: usize) -> Zeon {
    let i = others(4, &[j, k, l])[0];
    let sum = &(&ghz(4, plus) + &(&mono(4, &[j], c(1.0)) * &w_pair(4, k, l, true))) + &(&mono(4, &[k], c(1.0)) * &w_pair(4, i, l, true));
    sum.scale(c(1.0 / 3f64.sqrt()))
}

fn phi_tilde(plus: bool) -> Zeon {
    &ghz(4, plus).scale(c(0.5)) + &cw(4).scale(c(3f64.sqrt() / 2.0))
}

// `1 + η_1η_2η_3η_4`.
fn e_top() -> Zeon {
    terms(4, c(1.0), &["", "1234"])
}

// `exp(η_1η_2 + η_3η_4)`.
fn e_pairs() -> Zeon {
    terms(4, c(1.0), &["", "12", "34", "1234"])
}

/// The SLOCC representatives in their expanded (natural) form.
fn psi(k: usize, p: [C64; 4]) -> Result<Zeon> {
    let [a, b, cc, dd] = p;
    let i = C64::new(0.0, 1.0);
    let h = c(0.5);
    let t = |coef: C64, s: &[&str]| terms(4, coef, s);
    let z = match k {
        1 => {
            &(&(&e_top().scale((a + dd) * h) + &t((a - dd) * h, &["12", "34"])) + &t((b + cc) * h, &["13", "24"]))
                + &t((b - cc) * h, &["14", "23"])
        }
        2 => {
            let mut z = e_top().scale((a + cc - i) * h);
            z += &t((a - cc + i) * h, &["12", "34"]);
            z += &t((b + cc + i) * h, &["13", "24"]);
            z += &t((b - cc - i) * h, &["14", "23"]);
            z += &t(i * h, &["1", "4", "234", "123"]);
            z -= &t(i * h, &["2", "3", "134", "124"]);
            z
        }
        3 => {
            let mut z = e_pairs().scale(a * h);
            z += &t((b + 1.0) * h, &["13", "24"]);
            z += &t((b - 1.0) * h, &["14", "23"]);
            z += &t(h, &["3", "124"]);
            z -= &t(h, &["4", "123"]);
            z
        }
        4 => {
            let mut z = e_top().scale((a + b) * h);
            z += &t(b, &["13", "24"]);
            z += &t(i, &["14"]);
            z -= &t(i, &["23"]);
            z += &t((a - b) * h, &["12", "34"]);
            z += &t(h, &["2", "3", "134", "124"]);
            z -= &t(h, &["1", "4", "234", "123"]);
            z
        }
        5 => {
            let mut z = e_pairs().scale(a * h);
            z -= &t(i * 2.0, &["2", "14"]);
            z += &t(i * 2.0, &["123"]);
            z
        }
        6 => {
            let mut z = e_pairs().scale((a + i) * h);
            z += &t((a + i + 1.0) * h, &["13", "24"]);
            z += &t((a - i - 1.0) * h, &["23", "14"]);
            z += &t((i + 1.0) * h, &["3", "124"]);
            z += &t((i - 1.0) * h, &["4", "123"]);
            z -= &t(i * h, &["1", "2", "234", "134"]);
            z
        }
        7 => {
            let mut z = t(c(1.0), &["14", "13", "24", "12", "1234"]);
            z -= &t(c(1.0), &["23"]);
            z += &t(i, &["14", "13", "123"]);
            z -= &t(i, &["2", "234", "124"]);
            z
        }
        8 => {
            let mut z = e_top().scale((i + 1.0) * h);
            z -= &t((i + 1.0) * h, &["3", "124"]);
            z += &t((i - 1.0) * h, &["4", "123"]);
            z -= &t((i - 1.0) * h, &["34", "12"]);
            z += &t(h, &["2", "14", "13", "234", "1", "23", "24", "134"]);
            z -= &t(i, &["1", "24", "23", "134"]);
            z
        }
        9 => {
            let mut inner = terms(4, c(1.0), &["", "234", "2", "34"]);
            inner += &t(i, &["3", "4"]);
            inner -= &t(i, &["24", "23"]);
            let e1 = terms(4, c(1.0), &["", "1"]);
            (&e1 * &inner).scale(h)
        }
        _ => return Err(ZeonError::UnknownState(format!("Psi{k}"))),
    };
    Ok(z)
}

/// `Ψ_1` built from cosines:
/// `(a+d)/2 e^{η⃗} + (a−d)/2 (cos(η_1−η_2) − cos(η_3+η_4)) + …`.
pub fn psi1_trig(a: C64, b: C64, cc: C64, dd: C64) -> Zeon {
    let x = ctx(4);
    let v = |k: usize| Zeon::var(x, k).expect("variable");
    let h = c(0.5);
    let cos_diff = |p: usize, q: usize, r: usize, s: usize| &(&v(p) - &v(q)).cos() - &(&v(r) + &v(s)).cos();
    let top = mono(4, &[1, 2, 3, 4], c(1.0)).exp();
    let mut z = top.scale((a + dd) * h);
    z += &cos_diff(1, 2, 3, 4).scale((a - dd) * h);
    z += &cos_diff(1, 3, 2, 4).scale((b + cc) * h);
    z += &cos_diff(1, 4, 2, 3).scale((b - cc) * h);
    z
}

/// `Ψ_1` as a sum of products of two-qubit GHZ and W states:
/// `(a/2)e^{η_1η_2}e^{η_3η_4} + (d/2)e^{−η_1η_2}e^{−η_3η_4} + (b/2)(η_1+η_2)(η_3+η_4) + (c/2)(η_1−η_2)(η_3−η_4)`.
pub fn psi1_factorized(a: C64, b: C64, cc: C64, dd: C64) -> Zeon {
    let x = ctx(4);
    let v = |k: usize| Zeon::var(x, k).expect("variable");
    let e = |p: usize, q: usize, s: f64| mono(4, &[p, q], c(s)).exp();
    let h = c(0.5);
    let mut z = (&e(1, 2, 1.0) * &e(3, 4, 1.0)).scale(a * h);
    z += &(&e(1, 2, -1.0) * &e(3, 4, -1.0)).scale(dd * h);
    z += &(&(&v(1) + &v(2)) * &(&v(3) + &v(4))).scale(b * h);
    z += &(&(&v(1) - &v(2)) * &(&v(3) - &v(4))).scale(cc * h);
    z
}

// "(12)" → [1, 2]; "(23,4)" → [2, 3, 4].
fn read_indices(name: &str, args: &str) -> Result<Vec<usize>> {
    let bad = || ZeonError::UnknownState(name.to_string());
    let inner = args.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    inner
        .chars()
        .filter(|&ch| ch != ',' && !ch.is_whitespace())
        .map(|ch| ch.to_digit(10).filter(|v| (1..=4).contains(v)).map(|v| v as usize).ok_or_else(bad))
        .collect()
}

/// Looks up a state by canonical name. Family names carry their indices,
/// e.g. `phi_pm(13)` or `phiA-(23,4)`; `Psi1` .. `Psi9` read `a, b, c, d`
/// from `params` (missing entries are zero).
pub fn state_library(name: &str, params: &[C64]) -> Result<Zeon> {
    let unknown = || ZeonError::UnknownState(name.to_string());
    let (base, args) = match name.find('(') {
        Some(p) => (&name[..p], &name[p..]),
        None => (name, ""),
    };
    let simple = match base {
        "ghz2+" => Some(ghz(2, true)),
        "ghz2-" => Some(ghz(2, false)),
        "w2+" => Some(w_pair(2, 1, 2, true)),
        "w2-" => Some(w_pair(2, 1, 2, false)),
        "ghz3" => Some(ghz(3, true)),
        "w3" => Some(w(3)),
        "cw3" => Some(cw(3)),
        "ghz4" => Some(ghz(4, true)),
        "w4" => Some(w(4)),
        "cw4" => Some(cw(4)),
        "phiTilde+" => Some(phi_tilde(true)),
        "phiTilde-" => Some(phi_tilde(false)),
        _ => None,
    };
    if let Some(z) = simple {
        return if args.is_empty() { Ok(z) } else { Err(unknown()) };
    }
    if let Some(k) = base.strip_prefix("Psi") {
        let k: usize = k.parse().map_err(|_| unknown())?;
        if !args.is_empty() {
            return Err(unknown());
        }
        let mut p = [C64::new(0.0, 0.0); 4];
        if params.len() > 4 {
            return Err(ZeonError::Range(format!("{name} takes at most 4 parameters")));
        }
        p[..params.len()].copy_from_slice(params);
        return psi(k, p);
    }
    if let Some(sgn) = base.strip_prefix("phiA") {
        let plus = match sgn {
            "+" => true,
            "-" => false,
            _ => return Err(unknown()),
        };
        let idx = read_indices(name, args)?;
        if idx.len() != 3 || idx[0] >= idx[1] || idx[2] == idx[0] || idx[2] == idx[1] {
            return Err(unknown());
        }
        return Ok(phi_a(plus, idx[0], idx[1], idx[2]));
    }
    let (family, signs) = base.rsplit_once('_').ok_or_else(unknown)?;
    let (a, b) = match signs {
        "pp" => (true, true),
        "pm" => (true, false),
        "mp" => (false, true),
        "mm" => (false, false),
        _ => return Err(unknown()),
    };
    let idx = read_indices(name, args)?;
    if idx.len() != 2 || idx[0] >= idx[1] {
        return Err(unknown());
    }
    let (i, j) = (idx[0], idx[1]);
    let mixed_only = a != b;
    match family {
        "phi" => Ok(two_pair(Pair::W, a, Pair::Ghz, b, i, j)),
        "chi" => Ok(two_pair(Pair::Ghz, a, Pair::W, b, i, j)),
        "psi" if mixed_only => Ok(two_pair(Pair::Ghz, a, Pair::Ghz, b, i, j)),
        // The W-pair reading; the literal variant repeats the psi family.
        "lambda" if mixed_only => Ok(two_pair(Pair::W, a, Pair::W, b, i, j)),
        "lambda_literal" if mixed_only => Ok(two_pair(Pair::Ghz, a, Pair::Ghz, b, i, j)),
        _ => Err(unknown()),
    }
}
