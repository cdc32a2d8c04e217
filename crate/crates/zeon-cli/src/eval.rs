//! Evaluation of parsed expressions into η-functions.

use zeon::entangle::state_library;
use zeon::{Zeon, ZeonContext, ZeonError, C64};

use crate::parser::{Expr, Func, MulOp, Sign};

pub fn evaluate(e: &Expr, ctx: ZeonContext) -> Result<Zeon, ZeonError> {
    Ok(match e {
        Expr::Number(x) => Zeon::scalar(ctx, C64::new(*x, 0.0)),
        Expr::Rational(a, b) => Zeon::scalar(ctx, C64::new(*a as f64 / *b as f64, 0.0)),
        Expr::Imag => Zeon::scalar(ctx, C64::new(0.0, 1.0)),
        Expr::Var(k) => Zeon::var(ctx, *k)?,
        Expr::State { name, params } => {
            let p = params.iter().map(|x| scalar_of(&evaluate(x, ctx)?)).collect::<Result<Vec<_>, _>>()?;
            let z = state_library(name, &p)?;
            // smaller states sit on the first variables
            z.embed(ctx)?
        }
        Expr::Call(f, arg) => {
            let x = evaluate(arg, ctx)?;
            match f {
                Func::Exp => x.exp(),
                Func::Log => x.log()?,
                Func::Cos => x.cos(),
                Func::Sin => x.sin(),
                Func::Sqrt => sqrt(&x)?,
            }
        }
        Expr::Neg(x) => -&evaluate(x, ctx)?,
        Expr::Pow(x, k) => evaluate(x, ctx)?.power(u64::from(*k)),
        Expr::Sum(terms) => {
            let mut acc = Zeon::zero(ctx);
            for (s, t) in terms {
                let v = evaluate(t, ctx)?;
                match s {
                    Sign::Plus => acc += &v,
                    Sign::Minus => acc -= &v,
                }
            }
            acc
        }
        Expr::Product(factors) => {
            let mut acc = Zeon::one(ctx);
            for (op, t) in factors {
                let v = evaluate(t, ctx)?;
                acc = match op {
                    MulOp::Mul => &acc * &v,
                    MulOp::Div => &acc * &v.invert()?,
                };
            }
            acc
        }
    })
}

fn scalar_of(z: &Zeon) -> Result<C64, ZeonError> {
    if !z.soul().is_zero() {
        return Err(ZeonError::Range("state parameters must be scalars".into()));
    }
    Ok(z.body())
}

// Principal square root; away from scalars it goes through exp(log(F)/2).
fn sqrt(z: &Zeon) -> Result<Zeon, ZeonError> {
    if z.soul().is_zero() {
        return Ok(Zeon::scalar(z.ctx(), z.body().sqrt()));
    }
    Ok(z.log()?.scale(C64::new(0.5, 0.0)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn run(src: &str, n: usize) -> Result<Zeon, ZeonError> {
        evaluate(&parse(src, n).unwrap(), ZeonContext::new(n).unwrap())
    }

    fn real(n: usize, c: &[f64]) -> Zeon {
        Zeon::from_real(ZeonContext::new(n).unwrap(), c).unwrap()
    }

    #[test]
    fn literal_ghz() {
        let g = run("1/sqrt(2)*(1 + e1*e2*e3)", 3).unwrap();
        assert!(g.approx_eq(&state_library("ghz3", &[]).unwrap(), 1e-15));
    }

    #[test]
    fn trig_and_nilpotency() {
        assert!(run("cos(e1+e2)", 2).unwrap().approx_eq(&real(2, &[1.0, 0.0, 0.0, -1.0]), 1e-15));
        assert!(run("e1*e1", 1).unwrap().is_zero());
        assert!(run("exp(e1)*exp(e2)", 2).unwrap().approx_eq(&real(2, &[1.0; 4]), 1e-15));
    }

    #[test]
    fn library_and_errors() {
        let g = run("@ghz4", 4).unwrap();
        assert!((g.at(&[1, 2, 3, 4]).re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(matches!(run("log(@w3)", 3), Err(ZeonError::ZeroBody(_))));
        assert!(matches!(run("1/e1", 1), Err(ZeonError::ZeroBody(_))));
        assert!(matches!(run("@nope", 2), Err(ZeonError::UnknownState(_))));
        assert!(run("@ghz2+", 3).unwrap().at(&[1, 2]).re > 0.7);
        assert!(run("@ghz4", 3).is_err());
    }

    #[test]
    fn square_roots() {
        assert_eq!(run("sqrt(4)", 1).unwrap(), real(1, &[2.0, 0.0]));
        let s = run("sqrt(1 + e1)", 1).unwrap();
        assert!((&s * &s).approx_eq(&real(1, &[1.0, 1.0]), 1e-15));
    }
}
