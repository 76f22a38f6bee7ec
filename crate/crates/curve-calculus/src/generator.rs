//! Seeded random curves and multivectors for law checking.
//!
//! Sampling is deterministic given a seed, and every produced curve is
//! paired with an admissible evaluation point: the curve must evaluate with
//! bounded norm on a window around the point, so downstream probes (which
//! look up to ±1 away) and finite differences stay inside the domain and
//! away from overflow. Growth is kept tame structurally — at most one `exp`
//! link per expression, small polynomial degrees, coefficients in [-1, 1] —
//! because the finite-difference oracle needs moderate higher derivatives.

use clifford_core::{BladeMask, Multivector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{CurveExpr, ProductStar};
use crate::scalar::{ScalarChain, ScalarPrimitive};

/// Structural bounds for the sampler.
#[derive(Debug, Clone)]
pub struct SamplerConfig {
    pub dim: usize,
    pub max_depth: usize,
    /// Include `ln` links (restricts the domain to positive arguments).
    pub allow_ln: bool,
    /// Include negative integer powers (poles at zero).
    pub allow_negative_power: bool,
    pub lambda_range: (f64, f64),
    /// Curve norm ceiling on the admissibility window.
    pub value_cap: f64,
    /// Derivative norm ceiling on the admissibility window.
    pub deriv_cap: f64,
}

impl SamplerConfig {
    pub fn with_dim(dim: usize) -> SamplerConfig {
        SamplerConfig {
            dim,
            ..SamplerConfig::default()
        }
    }
}

impl Default for SamplerConfig {
    fn default() -> SamplerConfig {
        SamplerConfig {
            dim: 3,
            max_depth: 5,
            allow_ln: false,
            allow_negative_power: false,
            lambda_range: (-2.0, 2.0),
            value_cap: 50.0,
            deriv_cap: 50.0,
        }
    }
}

/// Derives an independent per-trial seed from a master seed (splitmix64
/// step), so trial `i` of a suite can be replayed in isolation.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic curve/multivector source.
pub struct CurveSampler {
    rng: ChaCha8Rng,
    cfg: SamplerConfig,
}

impl CurveSampler {
    pub fn new(seed: u64, cfg: SamplerConfig) -> CurveSampler {
        CurveSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            cfg,
        }
    }

    pub fn config(&self) -> &SamplerConfig {
        &self.cfg
    }

    /// Random sparse multivector with coefficients in [-1, 1].
    pub fn multivector(&mut self, dim: usize, max_terms: usize) -> Multivector {
        let blades = 1u16 << dim;
        let count = self.rng.gen_range(0..=max_terms);
        Multivector::from_terms(
            dim,
            (0..count).map(|_| {
                (
                    BladeMask(self.rng.gen_range(0..blades)),
                    self.rng.gen_range(-1.0..1.0),
                )
            }),
        )
    }

    /// Random curve plus a point where curve and derivative are evaluable
    /// and bounded on the surrounding window.
    pub fn curve_at(&mut self) -> (CurveExpr, f64) {
        loop {
            let curve = self.curve();
            for _ in 0..8 {
                let lambda = self.lambda();
                if self.admissible(&curve, lambda) {
                    return (curve, lambda);
                }
            }
        }
    }

    /// Two independent curves admissible at a common point.
    pub fn curve_pair_at(&mut self) -> (CurveExpr, CurveExpr, f64) {
        loop {
            let x = self.curve();
            let y = self.curve();
            for _ in 0..8 {
                let lambda = self.lambda();
                if self.admissible(&x, lambda) && self.admissible(&y, lambda) {
                    return (x, y, lambda);
                }
            }
        }
    }

    /// Curve rescaled so its second derivative stays ≲ 1 on the window
    /// around the returned point. First-order remainder magnitudes are
    /// proportional to curvature, so experiments that drive `ξ` under a
    /// fixed tolerance at a fixed schedule depth need this normalization.
    pub fn tame_curve_at(&mut self) -> (CurveExpr, f64) {
        let (curve, lambda0) = self.curve_at();
        let h = 1e-4;
        let mut curvature = 0.0f64;
        for k in -4..=4i32 {
            let x = lambda0 + 0.25 * k as f64;
            if let (Ok(plus), Ok(minus)) =
                (curve.derivative_ad(x + h), curve.derivative_ad(x - h))
            {
                curvature = curvature.max((&plus - &minus).scale(0.5 / h).norm());
            }
        }
        let factor = 1.0 / (1.0 + curvature);
        (
            CurveExpr::scalar_scale(ScalarPrimitive::Const(factor), curve),
            lambda0,
        )
    }

    /// Random evaluation point within the configured range.
    pub fn lambda(&mut self) -> f64 {
        let (lo, hi) = self.cfg.lambda_range;
        self.rng.gen_range(lo..hi)
    }

    /// Structural curve sample without admissibility filtering.
    pub fn curve(&mut self) -> CurveExpr {
        let mut exp_budget = 1u32;
        let depth = self.rng.gen_range(1..=self.cfg.max_depth);
        self.node(depth, &mut exp_budget)
    }

    /// Random scalar primitive from the safe set (used for reparametrization
    /// and scalar-scale trials).
    pub fn primitive(&mut self) -> ScalarPrimitive {
        let mut exp_budget = 1;
        self.primitive_inner(&mut exp_budget)
    }

    fn node(&mut self, depth: usize, exp_budget: &mut u32) -> CurveExpr {
        if depth == 0 {
            return self.leaf(exp_budget);
        }
        match self.rng.gen_range(0..10u32) {
            0..=2 => CurveExpr::sum(
                self.node(depth - 1, exp_budget),
                self.node(depth - 1, exp_budget),
            ),
            3..=5 => {
                let star = ProductStar::ALL[self.rng.gen_range(0..ProductStar::ALL.len())];
                CurveExpr::product(
                    star,
                    self.node(depth - 1, exp_budget),
                    self.node(depth - 1, exp_budget),
                )
            }
            6 => CurveExpr::scalar_scale(
                self.primitive_inner(exp_budget),
                self.node(depth - 1, exp_budget),
            ),
            7 => CurveExpr::compose(
                self.node(depth - 1, exp_budget),
                self.primitive_inner(exp_budget),
            ),
            _ => self.leaf(exp_budget),
        }
    }

    fn leaf(&mut self, exp_budget: &mut u32) -> CurveExpr {
        if self.rng.gen_bool(0.4) {
            CurveExpr::constant(self.multivector(self.cfg.dim, 3))
        } else {
            let blades = 1u16 << self.cfg.dim;
            let blade = BladeMask(self.rng.gen_range(0..blades));
            CurveExpr::scalar_times_blade(self.cfg.dim, self.chain(exp_budget), blade)
        }
    }

    fn chain(&mut self, exp_budget: &mut u32) -> ScalarChain {
        let len = if self.rng.gen_bool(0.3) { 2 } else { 1 };
        ScalarChain::new((0..len).map(|_| self.primitive_inner(exp_budget)))
    }

    fn primitive_inner(&mut self, exp_budget: &mut u32) -> ScalarPrimitive {
        loop {
            let pick = self.rng.gen_range(0..12u32);
            return match pick {
                0..=2 => ScalarPrimitive::Identity,
                3..=4 => ScalarPrimitive::Sin,
                5..=6 => ScalarPrimitive::Cos,
                7..=8 => {
                    let degree = self.rng.gen_range(1..=3usize);
                    ScalarPrimitive::Polynomial(
                        (0..=degree)
                            .map(|_| self.rng.gen_range(-1.0..1.0))
                            .collect(),
                    )
                }
                9 => ScalarPrimitive::Power(self.rng.gen_range(2..=3)),
                10 => {
                    if *exp_budget == 0 {
                        continue;
                    }
                    *exp_budget -= 1;
                    ScalarPrimitive::Exp
                }
                _ => {
                    if self.cfg.allow_ln && self.rng.gen_bool(0.5) {
                        ScalarPrimitive::Ln
                    } else if self.cfg.allow_negative_power {
                        ScalarPrimitive::Power(-self.rng.gen_range(1..=2))
                    } else {
                        ScalarPrimitive::Const(self.rng.gen_range(-1.0..1.0))
                    }
                }
            };
        }
    }

    /// Curve and derivative evaluable with bounded norm at the point and on
    /// a ±1 window around it.
    fn admissible(&self, curve: &CurveExpr, lambda: f64) -> bool {
        for offset in [-1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0] {
            match curve.eval(lambda + offset) {
                Ok(v) if v.is_finite() && v.norm() <= self.cfg.value_cap => {}
                _ => return false,
            }
        }
        for offset in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            match curve.derivative_ad(lambda + offset) {
                Ok(d) if d.is_finite() && d.norm() <= self.cfg.deriv_cap => {}
                _ => return false,
            }
        }
        true
    }
}
