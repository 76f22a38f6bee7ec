//! Scalar functions of one real variable: the primitive set used for curve
//! coefficients, composition chains over it, and the dual-number type for
//! forward-mode differentiation.
//!
//! The primitive set is closed under differentiation up to a constant
//! factor: `sin/cos` form a closed pair, `exp` is self-closed, polynomials
//! and integer powers stay in the set, and `ln` differentiates to
//! `power(-1)`. That closure is what keeps the symbolic engine total.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Domain violation raised while evaluating a scalar primitive.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    /// `ln` evaluated at a non-positive argument.
    LnDomain { arg: f64 },
    /// A negative integer power evaluated at zero.
    ZeroToNegativePower { exponent: i32 },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::LnDomain { arg } => {
                write!(f, "ln undefined for non-positive argument {arg}")
            }
            EvalError::ZeroToNegativePower { exponent } => {
                write!(f, "zero raised to negative power {exponent}")
            }
        }
    }
}

impl std::error::Error for EvalError {}

/// Value plus first derivative, propagated through arithmetic so that
/// `f(a, a') = (f(a), f'(a)·a')` holds for every lifted operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualScalar {
    pub value: f64,
    pub deriv: f64,
}

impl DualScalar {
    /// Lift of a constant: derivative zero.
    pub fn constant(value: f64) -> DualScalar {
        DualScalar { value, deriv: 0.0 }
    }

    /// Lift of the independent variable: derivative one.
    pub fn variable(value: f64) -> DualScalar {
        DualScalar { value, deriv: 1.0 }
    }
}

impl Add for DualScalar {
    type Output = DualScalar;
    fn add(self, rhs: DualScalar) -> DualScalar {
        DualScalar {
            value: self.value + rhs.value,
            deriv: self.deriv + rhs.deriv,
        }
    }
}

impl Sub for DualScalar {
    type Output = DualScalar;
    fn sub(self, rhs: DualScalar) -> DualScalar {
        DualScalar {
            value: self.value - rhs.value,
            deriv: self.deriv - rhs.deriv,
        }
    }
}

impl Mul for DualScalar {
    type Output = DualScalar;
    fn mul(self, rhs: DualScalar) -> DualScalar {
        DualScalar {
            value: self.value * rhs.value,
            deriv: self.deriv * rhs.value + self.value * rhs.deriv,
        }
    }
}

impl Div for DualScalar {
    type Output = DualScalar;
    fn div(self, rhs: DualScalar) -> DualScalar {
        DualScalar {
            value: self.value / rhs.value,
            deriv: (self.deriv * rhs.value - self.value * rhs.deriv) / (rhs.value * rhs.value),
        }
    }
}

impl Neg for DualScalar {
    type Output = DualScalar;
    fn neg(self) -> DualScalar {
        DualScalar {
            value: -self.value,
            deriv: -self.deriv,
        }
    }
}

/// One scalar function with a known exact derivative rule.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarPrimitive {
    Const(f64),
    Identity,
    Sin,
    Cos,
    Exp,
    Ln,
    /// Integer power `x ↦ x^p`; negative `p` is undefined at zero.
    Power(i32),
    /// Coefficients in ascending degree: `[c0, c1, ..., ck]`.
    Polynomial(Vec<f64>),
}

impl ScalarPrimitive {
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        match self {
            ScalarPrimitive::Const(c) => Ok(*c),
            ScalarPrimitive::Identity => Ok(x),
            ScalarPrimitive::Sin => Ok(x.sin()),
            ScalarPrimitive::Cos => Ok(x.cos()),
            ScalarPrimitive::Exp => Ok(x.exp()),
            ScalarPrimitive::Ln => {
                if x > 0.0 {
                    Ok(x.ln())
                } else {
                    Err(EvalError::LnDomain { arg: x })
                }
            }
            ScalarPrimitive::Power(p) => {
                if *p < 0 && x == 0.0 {
                    Err(EvalError::ZeroToNegativePower { exponent: *p })
                } else {
                    Ok(x.powi(*p))
                }
            }
            ScalarPrimitive::Polynomial(coeffs) => {
                Ok(coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c))
            }
        }
    }

    /// Forward-mode lift: `f(a, a') = (f(a), f'(a)·a')`.
    pub fn eval_dual(&self, x: DualScalar) -> Result<DualScalar, EvalError> {
        let value = self.eval(x.value)?;
        let slope = match self {
            ScalarPrimitive::Const(_) => 0.0,
            ScalarPrimitive::Identity => 1.0,
            ScalarPrimitive::Sin => x.value.cos(),
            ScalarPrimitive::Cos => -x.value.sin(),
            ScalarPrimitive::Exp => value,
            ScalarPrimitive::Ln => 1.0 / x.value,
            // Negative p at zero was already rejected by `eval` above.
            ScalarPrimitive::Power(0) => 0.0,
            ScalarPrimitive::Power(p) => *p as f64 * x.value.powi(*p - 1),
            ScalarPrimitive::Polynomial(coeffs) => {
                let mut acc = 0.0;
                for (k, &c) in coeffs.iter().enumerate().skip(1).rev() {
                    acc = acc * x.value + k as f64 * c;
                }
                acc
            }
        };
        Ok(DualScalar {
            value,
            deriv: slope * x.deriv,
        })
    }

    /// Exact derivative as a scaled primitive `(factor, primitive)`, so the
    /// set stays closed: `cos' = (-1)·sin`, `(x^p)' = p·x^{p-1}`, etc.
    pub fn derivative(&self) -> (f64, ScalarPrimitive) {
        match self {
            ScalarPrimitive::Const(_) => (1.0, ScalarPrimitive::Const(0.0)),
            ScalarPrimitive::Identity => (1.0, ScalarPrimitive::Const(1.0)),
            ScalarPrimitive::Sin => (1.0, ScalarPrimitive::Cos),
            ScalarPrimitive::Cos => (-1.0, ScalarPrimitive::Sin),
            ScalarPrimitive::Exp => (1.0, ScalarPrimitive::Exp),
            ScalarPrimitive::Ln => (1.0, ScalarPrimitive::Power(-1)),
            ScalarPrimitive::Power(0) => (1.0, ScalarPrimitive::Const(0.0)),
            ScalarPrimitive::Power(p) => (*p as f64, ScalarPrimitive::Power(p - 1)),
            ScalarPrimitive::Polynomial(coeffs) => {
                let derived: Vec<f64> = coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, &c)| k as f64 * c)
                    .collect();
                if derived.is_empty() {
                    (1.0, ScalarPrimitive::Const(0.0))
                } else {
                    (1.0, ScalarPrimitive::Polynomial(derived))
                }
            }
        }
    }
}

/// Composition chain of primitives, applied innermost first:
/// `[f, g]` means `λ ↦ g(f(λ))`. `Identity` links are dropped at
/// construction; the empty chain is normalized to `[Identity]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarChain(Vec<ScalarPrimitive>);

impl ScalarChain {
    pub fn new(primitives: impl IntoIterator<Item = ScalarPrimitive>) -> ScalarChain {
        let mut links: Vec<ScalarPrimitive> = primitives
            .into_iter()
            .filter(|p| *p != ScalarPrimitive::Identity)
            .collect();
        if links.is_empty() {
            links.push(ScalarPrimitive::Identity);
        }
        ScalarChain(links)
    }

    pub fn identity() -> ScalarChain {
        ScalarChain(vec![ScalarPrimitive::Identity])
    }

    pub fn single(p: ScalarPrimitive) -> ScalarChain {
        ScalarChain::new([p])
    }

    /// Appends an outer function: `chain.then(f)` computes `f(chain(λ))`.
    pub fn then(&self, outer: ScalarPrimitive) -> ScalarChain {
        ScalarChain::new(self.0.iter().cloned().chain([outer]))
    }

    pub fn links(&self) -> &[ScalarPrimitive] {
        &self.0
    }

    /// Splits into (inner chain, outermost primitive) for chain-rule use.
    pub fn split_outer(&self) -> (ScalarChain, ScalarPrimitive) {
        let outer = self.0.last().expect("chain is never empty").clone();
        (ScalarChain::new(self.0[..self.0.len() - 1].iter().cloned()), outer)
    }

    pub fn is_single(&self) -> bool {
        self.0.len() == 1
    }

    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        self.0.iter().try_fold(x, |acc, p| p.eval(acc))
    }

    pub fn eval_dual(&self, x: DualScalar) -> Result<DualScalar, EvalError> {
        self.0.iter().try_fold(x, |acc, p| p.eval_dual(acc))
    }
}
