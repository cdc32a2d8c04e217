//! `factorize`, `spectrum`, `numbers` and `states`, each producing a JSON
//! value; the binary decides between JSON and text output.

use serde_json::{json, Value};
use zeon::combinat::{bell, ordered_bell, permanent_ryser, stirling2};
use zeon::dynamics::{charge_checks, eigensolve, hamiltonian_2qubit, susy_system, SusyKind};
use zeon::entangle::{factor_test, FactorMode, Partition, STATE_NAMES};
use zeon::{CMatrix, Zeon, C64};

use crate::report::{build, complex, real, terms};
use crate::CliError;

pub fn factorize(src: &str, n: Option<usize>, split: &str, weak: bool) -> Result<Value, CliError> {
    let (f, n) = build(src, n)?;
    let p = Partition::parse(split).map_err(|e| CliError::Usage(e.to_string()))?;
    if p.left.iter().chain(&p.right).any(|&v| v > n) {
        return Err(CliError::Usage(format!("split {p} mentions a variable above n = {n}")));
    }
    let mode = if weak { FactorMode::Weak } else { FactorMode::Strong };
    let r = factor_test(&f, &p, mode)?;
    let failing: Vec<Value> = r
        .conditions
        .iter()
        .filter(|c| !c.vanishes)
        .map(|c| json!({"i": c.i, "j": c.j, "derivs": c.derivs.vars(), "w": terms(&c.value)}))
        .collect();
    let factors = match &r.factors {
        Some((g, gt)) => json!({"left": terms(g), "right": terms(gt)}),
        None => Value::Null,
    };
    Ok(json!({
        "input": src,
        "n": n,
        "split": p.to_string(),
        "mode": if weak { "weak" } else { "strong" },
        "separable": r.separable,
        "conditions": r.conditions.len(),
        "failing": failing,
        "factors": factors,
    }))
}

fn spectral_json(h: &CMatrix) -> Result<Value, CliError> {
    let s = eigensolve(h)?;
    let mut pairs = Vec::new();
    for (k, &lambda) in s.eigenvalues.iter().enumerate() {
        let v = s.eigenvector_zeon(k)?;
        pairs.push(json!({"eigenvalue": real(lambda), "eigenvector": terms(&fix_phase(&v))}));
    }
    Ok(json!({"eigenpairs": pairs, "degeneracy": s.degeneracy}))
}

// Makes the largest coefficient real and positive so output is stable.
fn fix_phase(v: &Zeon) -> Zeon {
    let c = v.coeffs();
    let top = c.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if top == 0.0 {
        return v.clone();
    }
    // first of the (near-)largest coefficients, so ties resolve by index
    let big = c.iter().position(|x| x.norm() >= top * (1.0 - 1e-9)).unwrap_or(0);
    v.scale(c[big].conj() / c[big].norm())
}

pub fn spectrum_couplings(c1: f64, c2: f64, c3: f64) -> Result<Value, CliError> {
    let h = hamiltonian_2qubit(c1, c2, c3);
    let charges = charge_checks(&h)?;
    let mut out = spectral_json(&h)?;
    out["couplings"] = json!([real(c1), real(c2), real(c3)]);
    out["charges"] = json!({"theta2": real(charges.theta), "q": real(charges.q), "q_dag": real(charges.q_dag)});
    Ok(out)
}

pub fn spectrum_susy(kind: &str, omega: f64, kappa: f64, cutoff: usize) -> Result<Value, CliError> {
    let kind = match kind {
        "qf" => SusyKind::QubitFermion,
        "qq" => SusyKind::QubitQubit,
        "qb" => SusyKind::QubitBoson { cutoff },
        other => return Err(CliError::Usage(format!("unknown SUSY system '{other}' (qf, qq, qb)"))),
    };
    let sys = susy_system(kind, omega, kappa)?;
    let eig: Vec<Value> = sys.spectrum.eigenvalues.iter().map(|&x| real(x)).collect();
    // the truncated boson system takes H0 = [Q⁺, Q]₋, so [Q⁺, Q]₊ = H0 is
    // not expected there; the κ relation is only claimed for qubit-fermion
    let anti = match sys.kind {
        SusyKind::QubitBoson { .. } => Value::Null,
        _ => real((&sys.anticommutator - &sys.h0).max_abs()),
    };
    let deform = match sys.kind {
        SusyKind::QubitFermion => real(sys.deformation_residual()),
        _ => Value::Null,
    };
    Ok(json!({
        "system": format!("{:?}", sys.kind),
        "omega": real(omega),
        "kappa": real(kappa),
        "eigenvalues": eig,
        "witten_index": sys.witten_index,
        "anticommutator_residual": anti,
        "deformation_residual": deform,
    }))
}

pub enum NumberQuery {
    Bell(usize),
    OrderedBell(usize),
    Stirling(usize, usize),
    Permanent(String),
}

pub fn numbers(q: &NumberQuery) -> Result<Value, CliError> {
    Ok(match q {
        NumberQuery::Bell(n) => json!({"bell": n, "value": bell(*n)?}),
        NumberQuery::OrderedBell(n) => json!({"ordered_bell": n, "value": ordered_bell(*n)?}),
        NumberQuery::Stirling(n, k) => json!({"stirling": [n, k], "value": stirling2(*n, *k)?}),
        NumberQuery::Permanent(text) => {
            let m = read_matrix(text)?;
            json!({"permanent": complex(permanent_ryser(&m)?)})
        }
    })
}

/// First line `n`, then `n` rows of whitespace-separated `re,im` pairs.
pub fn read_matrix(text: &str) -> Result<CMatrix, CliError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let bad = |line: usize, msg: &str| CliError::Parse(format!("{}:1: {msg}", line + 1));
    let (l0, first) = lines.next().ok_or_else(|| bad(0, "empty matrix file"))?;
    let n: usize = first.trim().parse().map_err(|_| bad(l0, "first line must be the dimension"))?;
    if n == 0 || n > 12 {
        return Err(CliError::Domain(format!("permanent dimension {n} outside 1..=12")));
    }
    let mut entries = Vec::with_capacity(n * n);
    for (ln, line) in lines.by_ref().take(n) {
        let row: Vec<&str> = line.split_whitespace().collect();
        if row.len() != n {
            return Err(bad(ln, &format!("expected {n} entries, found {}", row.len())));
        }
        for cell in row {
            let (re, im) = cell.split_once(',').unwrap_or((cell, "0"));
            let re: f64 = re.parse().map_err(|_| bad(ln, &format!("bad number '{cell}'")))?;
            let im: f64 = im.parse().map_err(|_| bad(ln, &format!("bad number '{cell}'")))?;
            entries.push(C64::new(re, im));
        }
    }
    if entries.len() != n * n {
        return Err(bad(0, &format!("expected {n} rows")));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(bad(ln, "trailing data after the matrix"));
    }
    Ok(CMatrix::from_fn(n, n, |r, c| entries[r * n + c]))
}

pub fn states_list() -> Value {
    Value::Array(STATE_NAMES.iter().map(|s| Value::String(s.to_string())).collect())
}
