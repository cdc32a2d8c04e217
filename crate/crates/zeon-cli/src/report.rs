//! The `analyze` report and the JSON conventions shared by every command:
//! complex numbers as `{"re", "im"}`, reals with 17 significant digits,
//! keys in a fixed order.

use serde_json::{json, Map, Number, Value};
use zeon::entangle::monotones::{require_normalized, MonotoneReport};
use zeon::entangle::{
    all_bipartitions, factor_test, hyperdet3_paths, h_invariant, known_deviations, lmn_invariants, monotones,
    wronskian_set, FactorMode,
};
use zeon::hilbert::{norm, normalize, triple_of};
use zeon::{Zeon, ZeonContext, C64};

use crate::eval::evaluate;
use crate::parser::{parse, MAX_VARS};
use crate::CliError;

/// Largest `n` for which the report includes every bipartition verdict.
pub const FACTOR_MAX_N: usize = 6;

/// `x` rounded to 17 significant digits, trailing zeros dropped; plain
/// decimal notation between 1e-6 and 1e21.
pub fn fmt17(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{:.16e}", x);
    let (mant, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant),
    };
    let digits: String = mant.chars().filter(|c| *c != '.').collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let sign = if neg { "-" } else { "" };
    if !(-6..21).contains(&exp) {
        let (head, tail) = digits.split_at(1);
        return if tail.is_empty() { format!("{sign}{head}e{exp}") } else { format!("{sign}{head}.{tail}e{exp}") };
    }
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        let (a, b) = digits.split_at(point as usize);
        format!("{a}.{b}")
    };
    format!("{sign}{body}")
}

pub fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let n: Number = fmt17(x).parse().expect("valid JSON number");
    Value::Number(n)
}

pub fn complex(c: C64) -> Value {
    json!({"re": real(c.re), "im": real(c.im)})
}

/// Nonzero terms as `{"subset", "re", "im"}`.
pub fn terms(z: &Zeon) -> Value {
    let n = z.n();
    Value::Array(
        z.terms()
            .filter(|(_, c)| c.norm() > 1e-14)
            .map(|(s, c)| json!({"subset": triple_of(s, n).subset_label(), "re": real(c.re), "im": real(c.im)}))
            .collect(),
    )
}

fn coefficient_table(z: &Zeon) -> Value {
    let n = z.n();
    Value::Array(
        (0..z.ctx().dim() as u32)
            .map(|m| {
                let t = triple_of(zeon::SubsetIndex(m), n);
                let c = z.coeffs()[m as usize];
                json!({
                    "binary": t.binary,
                    "decimal": t.decimal,
                    "subset": t.subset_label(),
                    "re": real(c.re),
                    "im": real(c.im),
                })
            })
            .collect(),
    )
}

/// Builds the η-function for `src`, with `n` inferred from the expression
/// when not given.
pub fn build(src: &str, n: Option<usize>) -> Result<(Zeon, usize), CliError> {
    let n = match n {
        Some(n) => n,
        None => infer_n(src)?,
    };
    if !(1..=MAX_VARS).contains(&n) {
        return Err(CliError::Usage(format!("--n must be in 1..={MAX_VARS}, got {n}")));
    }
    let expr = parse(src, n)?;
    let ctx = ZeonContext::new(n)?;
    Ok((evaluate(&expr, ctx)?, n))
}

// Variables seen in the text, or the size of a referenced library state.
fn infer_n(src: &str) -> Result<usize, CliError> {
    let expr = parse(src, MAX_VARS)?;
    let mut n = expr.max_var().max(1);
    let mut stack = vec![&expr];
    while let Some(e) = stack.pop() {
        use crate::parser::Expr::*;
        match e {
            State { name, params } => {
                let p = vec![C64::new(0.0, 0.0); params.len()];
                n = n.max(zeon::entangle::state_library(name, &p)?.n());
                stack.extend(params);
            }
            Call(_, x) | Neg(x) | Pow(x, _) => stack.push(x),
            Sum(ts) => stack.extend(ts.iter().map(|(_, x)| x)),
            Product(fs) => stack.extend(fs.iter().map(|(_, x)| x)),
            _ => {}
        }
    }
    Ok(n)
}

pub fn analyze(src: &str, n: Option<usize>, normalize_input: bool) -> Result<Value, CliError> {
    let (mut f, n) = build(src, n)?;
    if normalize_input {
        f = normalize(&f)?;
    }
    let normalized = require_normalized(&f).is_ok();
    let mut out = Map::new();
    out.insert("input".into(), Value::String(src.to_string()));
    out.insert("n".into(), json!(n));
    out.insert("norm".into(), real(norm(&f)));
    out.insert("normalized".into(), Value::Bool(normalized));
    out.insert("coefficients".into(), coefficient_table(&f));
    let small = (2..=4).contains(&n);
    out.insert("wronskians".into(), if small { wronskians(&f)? } else { Value::Null });
    out.insert("invariants".into(), if small { invariants(&f)? } else { Value::Null });
    out.insert("monotones".into(), if small && normalized { monotone_values(&f)? } else { Value::Null });
    out.insert("factorization".into(), if (2..=FACTOR_MAX_N).contains(&n) { factorization(&f)? } else { Value::Null });
    out.insert("deviations".into(), deviations(&f)?);
    Ok(Value::Object(out))
}

fn wronskians(f: &Zeon) -> Result<Value, CliError> {
    let set = wronskian_set(f)?;
    let pairs: Vec<Value> =
        set.pairs.iter().map(|p| json!({"i": p.matrix.i, "j": p.matrix.j, "w": terms(&p.det)})).collect();
    let three: Vec<Value> = set
        .three
        .iter()
        .map(|e| {
            json!({
                "k": e.k, "i": e.i, "j": e.j,
                "restricted": complex(e.restricted),
                "h_tilde": complex(e.h_tilde),
                "h_tilde_trace": complex(e.h_tilde_trace),
                "derived": complex(e.derived),
            })
        })
        .collect();
    let four: Vec<Value> = set
        .four
        .iter()
        .map(|e| {
            json!({
                "i": e.i, "j": e.j, "k": e.k, "l": e.l,
                "constant": complex(e.constant),
                "h_tilde_k": complex(e.h_tilde_k),
                "h_tilde_l": complex(e.h_tilde_l),
                "h_tilde_kl": complex(e.h_tilde_kl),
            })
        })
        .collect();
    Ok(json!({
        "pairs": pairs,
        "expansion3": three,
        "expansion4": four,
        "reassembly_error": real(set.reassembly_error()),
    }))
}

fn invariants(f: &Zeon) -> Result<Value, CliError> {
    Ok(match f.n() {
        2 => json!({"H": complex(h_invariant(f))}),
        3 => {
            let p = hyperdet3_paths(f)?;
            let det = zeon::entangle::hyperdet3(f)?;
            json!({
                "H": complex(h_invariant(f)),
                "hyperdet": complex(det),
                "hyperdet_paths": {"direct": complex(p.direct), "symmetric": complex(p.symmetric), "single": complex(p.single)},
            })
        }
        _ => {
            let r = lmn_invariants(f)?;
            json!({
                "H": complex(r.h), "L": complex(r.l), "M": complex(r.m), "N": complex(r.n),
                "D_xy": complex(r.d_xy), "D_xz": complex(r.d_xz), "D_xt": complex(r.d_xt),
                "W": complex(r.w), "Sigma": complex(r.sigma), "Pi": complex(r.pi),
            })
        }
    })
}

fn monotone_values(f: &Zeon) -> Result<Value, CliError> {
    let reals = |v: &[f64]| Value::Array(v.iter().map(|&x| real(x)).collect());
    Ok(match monotones(f)? {
        MonotoneReport::Two(t) => json!({"C": real(t.c), "V": reals(&t.v), "P": reals(&t.p)}),
        MonotoneReport::Three(t) => json!({"tau": real(t.tau), "Q": real(t.q), "mu": real(t.mu), "mu_alt": real(t.mu_alt)}),
        MonotoneReport::Four(t) => json!({
            "F": reals(&t.f),
            "F2_prime": real(t.f2_prime),
            "F2_prime_direct": real(t.f2_prime_direct),
            "F3": real(t.f3),
        }),
    })
}

fn factorization(f: &Zeon) -> Result<Value, CliError> {
    let mut out = Vec::new();
    for p in all_bipartitions(f.n()) {
        let r = factor_test(f, &p, FactorMode::Strong)?;
        let factors = match &r.factors {
            Some((g, gt)) => json!({"left": terms(g), "right": terms(gt)}),
            None => Value::Null,
        };
        out.push(json!({"split": p.to_string(), "separable": r.separable, "factors": factors}));
    }
    Ok(Value::Array(out))
}

fn deviations(f: &Zeon) -> Result<Value, CliError> {
    Ok(Value::Array(
        known_deviations(f)?
            .into_iter()
            .map(|d| {
                json!({
                    "state": d.state,
                    "quantity": d.quantity,
                    "computed": complex(d.computed),
                    "reference": complex(d.reference),
                })
            })
            .collect(),
    ))
}

/// Short human-readable rendering of an analysis report.
// {re, im} objects read as a+bi; arrays element-wise; everything else as JSON.
fn text_value(x: &Value) -> String {
    match x {
        Value::Object(m) if m.len() == 2 && m.contains_key("re") && m.contains_key("im") => {
            let im = m["im"].as_f64().unwrap_or(0.0);
            if im == 0.0 {
                m["re"].to_string()
            } else {
                format!("{}{}{}i", m["re"], if im < 0.0 { "" } else { "+" }, m["im"])
            }
        }
        Value::Array(xs) => format!("[{}]", xs.iter().map(text_value).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => m.iter().map(|(k, x)| format!("{k} {}", text_value(x))).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

pub fn render_text(v: &Value) -> String {
    let mut s = String::new();
    let get = |k: &str| v.get(k).cloned().unwrap_or(Value::Null);
    s.push_str(&format!("input: {}\nn = {}, norm = {}, normalized = {}\n", get("input").as_str().unwrap_or(""), get("n"), get("norm"), get("normalized")));
    s.push_str("coefficients:\n");
    for c in get("coefficients").as_array().into_iter().flatten() {
        let (re, im) = (c["re"].as_f64().unwrap_or(0.0), c["im"].as_f64().unwrap_or(0.0));
        if re != 0.0 || im != 0.0 {
            s.push_str(&format!("  {:<8} {:>3}  {}  {}\n", c["subset"].as_str().unwrap_or(""), c["decimal"], c["binary"].as_str().unwrap_or(""), text_value(&json!({"re": c["re"], "im": c["im"]}))));
        }
    }
    for key in ["invariants", "monotones"] {
        if let Value::Object(m) = get(key) {
            s.push_str(&format!("{key}:\n"));
            for (k, x) in m {
                s.push_str(&format!("  {k} = {}\n", text_value(&x)));
            }
        }
    }
    if let Value::Array(parts) = get("factorization") {
        s.push_str("separable splits:");
        let yes: Vec<&str> = parts.iter().filter(|p| p["separable"] == Value::Bool(true)).filter_map(|p| p["split"].as_str()).collect();
        s.push_str(&if yes.is_empty() { " none\n".to_string() } else { format!(" {}\n", yes.join(" ")) });
    }
    for d in get("deviations").as_array().into_iter().flatten() {
        s.push_str(&format!(
            "deviation: {} {}: computed {} vs published {}\n",
            d["state"].as_str().unwrap_or(""),
            d["quantity"].as_str().unwrap_or(""),
            d["computed"]["re"],
            d["reference"]["re"]
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(0.5), "0.5");
        assert_eq!(fmt17(3.0), "3");
        assert_eq!(fmt17(-0.0), "0");
        assert_eq!(fmt17(0.1), "0.10000000000000001");
        assert_eq!(fmt17(1.0 / 3.0), "0.33333333333333331");
        assert_eq!(fmt17(1e-7), "9.9999999999999995e-8");
        assert_eq!(fmt17(-2.5e-9), "-2.5000000000000001e-9");
        assert_eq!(fmt17(2f64.powi(-30)), "9.3132257461547852e-10");
        assert_eq!(fmt17(123456.0), "123456");
        assert_eq!(fmt17(1.5e22), "1.5e22");
        assert_eq!(fmt17(0.00001), "0.000010000000000000001");
        for x in [0.1, 1.0 / 3.0, 2f64.sqrt(), -7.25e-12, 6.02e23] {
            assert_eq!(fmt17(x).parse::<f64>().unwrap(), x);
        }
    }
}
