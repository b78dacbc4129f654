use crate::error::{Error, Result};

/// Constants of Heun's equation
/// `y'' + (γ/x + δ/(x−1) + ε/(x−a)) y' + (αβx − q)/(x(x−1)(x−a)) y = 0`
/// with `ε = α + β + 1 − γ − δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunParams {
    a: f64,
    q: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
    epsilon: f64,
}

impl HeunParams {
    pub fn new(a: f64, q: f64, alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        let epsilon = alpha + beta + 1.0 - gamma - delta;
        Self::with_epsilon(a, q, alpha, beta, gamma, delta, epsilon)
    }

    /// Construct with an explicit ε, which must satisfy the Fuchs relation.
    pub fn with_epsilon(a: f64, q: f64, alpha: f64, beta: f64, gamma: f64, delta: f64, epsilon: f64) -> Result<Self> {
        let all = [a, q, alpha, beta, gamma, delta, epsilon];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::Argument("non-finite Heun parameter".into()));
        }
        if a == 0.0 || a == 1.0 {
            return Err(Error::Argument(format!("singularity a = {a} collides with 0 or 1")));
        }
        let fuchs = alpha + beta + 1.0 - gamma - delta;
        let scale = 1.0 + alpha.abs() + beta.abs() + gamma.abs() + delta.abs();
        if (epsilon - fuchs).abs() > 8.0 * f64::EPSILON * scale {
            return Err(Error::Argument(format!("ε = {epsilon} violates ε = α + β + 1 − γ − δ = {fuchs}")));
        }
        Ok(Self { a, q, alpha, beta, gamma, delta, epsilon: fuchs })
    }

    #[must_use]
    pub fn a(&self) -> f64 {
        self.a
    }
    #[must_use]
    pub fn q(&self) -> f64 {
        self.q
    }
    #[must_use]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    #[must_use]
    pub fn beta(&self) -> f64 {
        self.beta
    }
    #[must_use]
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    #[must_use]
    pub fn delta(&self) -> f64 {
        self.delta
    }
    #[must_use]
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}
