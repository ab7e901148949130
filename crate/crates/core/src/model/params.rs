//! Coupled model parameters.
//!
//! The loop weight `sqrt(Q)` ties the two spin chains together: `sqrt(Q) = 2S+1`
//! for the projection antiferromagnet and `sqrt(Q) = e^lambda + e^-lambda` for
//! the XXZ chain, with anisotropy `Delta = cosh(lambda)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used for all parameter consistency checks.
pub const PARAM_TOL: f64 = 1e-12;

/// A non-negative half-integer spin, stored as `2S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Spin(u32);

impl Spin {
    pub const ZERO: Spin = Spin(0);
    pub const HALF: Spin = Spin(1);
    pub const ONE: Spin = Spin(2);
    pub const THREE_HALVES: Spin = Spin(3);
    pub const TWO: Spin = Spin(4);

    pub const fn from_twice(twice: u32) -> Self {
        Spin(twice)
    }

    pub fn from_f64(s: f64) -> Result<Self> {
        let twice = 2.0 * s;
        if !(twice >= 0.0) || (twice - twice.round()).abs() > PARAM_TOL * twice.max(1.0) {
            return Err(Error::OutOfRange(format!("spin {s} is not a non-negative half-integer")));
        }
        Ok(Spin(twice.round() as u32))
    }

    pub const fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Local Hilbert space dimension `2S+1`.
    pub const fn multiplicity(self) -> usize {
        self.0 as usize + 1
    }

    /// The `S^z` eigenvalues in basis order, descending from `S`.
    pub fn m_values(self) -> impl Iterator<Item = f64> {
        let s = self.value();
        (0..self.multiplicity()).map(move |k| s - k as f64)
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for Spin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad spin '{s}'")))?;
            return match den.trim() {
                "2" => Ok(Spin(num)),
                _ => Err(Error::Config(format!("bad spin '{s}'"))),
            };
        }
        let x: f64 = s.parse().map_err(|_| Error::Config(format!("bad spin '{s}'")))?;
        Spin::from_f64(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryCondition {
    /// Lines capped pairwise at `t = ±beta/2`, starting with the left-most site.
    CappedAlternating,
    /// `t = -beta/2` and `t = beta/2` identified; open in space.
    PeriodicTime,
    /// Torus: periodic in time and space.
    PeriodicBoth,
}

impl BoundaryCondition {
    pub fn is_time_periodic(self) -> bool {
        !matches!(self, BoundaryCondition::CappedAlternating)
    }

    pub fn is_space_periodic(self) -> bool {
        matches!(self, BoundaryCondition::PeriodicBoth)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryCondition::CappedAlternating => "capped",
            BoundaryCondition::PeriodicTime => "periodic_time",
            BoundaryCondition::PeriodicBoth => "periodic_both",
        }
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundaryCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "capped" | "capped_alternating" | "cappedalternating" => Ok(Self::CappedAlternating),
            "periodic_time" | "periodictime" | "time" => Ok(Self::PeriodicTime),
            "periodic_both" | "periodicboth" | "torus" | "periodic" => Ok(Self::PeriodicBoth),
            other => Err(Error::Config(format!("unknown boundary condition '{other}'"))),
        }
    }
}

/// Which quantum chain the loop measure stands for.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    /// Projection antiferromagnet `-sum (2S+1) P^(0)`.
    #[default]
    Af,
    /// Spin-1/2 XXZ chain at `Delta = cosh(lambda)`.
    Xxz,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Af => "af",
            ModelKind::Xxz => "xxz",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "af" | "antiferro" => Ok(ModelKind::Af),
            "xxz" => Ok(ModelKind::Xxz),
            other => Err(Error::Config(format!("unknown model '{other}'"))),
        }
    }
}

/// Parameters as supplied by a caller; any subset of the coupled quantities
/// `{S, Q, lambda, Delta}` may be given.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialParams {
    pub spin: Option<Spin>,
    pub q: Option<f64>,
    pub lambda: Option<f64>,
    pub delta: Option<f64>,
    pub l: usize,
    pub beta: f64,
    pub bc: BoundaryCondition,
}

impl PartialParams {
    pub fn new(l: usize, beta: f64, bc: BoundaryCondition) -> Self {
        PartialParams { spin: None, q: None, lambda: None, delta: None, l, beta, bc }
    }

    pub fn spin(mut self, s: Spin) -> Self {
        self.spin = Some(s);
        self
    }

    pub fn q(mut self, q: f64) -> Self {
        self.q = Some(q);
        self
    }

    pub fn lambda(mut self, lambda: f64) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn delta(mut self, delta: f64) -> Self {
        self.delta = Some(delta);
        self
    }

    pub fn normalize(self) -> Result<ModelParams> {
        normalize_params(self)
    }
}

/// Fully normalized, mutually consistent parameters.
///
/// `spin` is `None` when `sqrt(Q) - 1` is not an integer; `lambda`/`delta` are
/// `None` when `Q < 4` (no real anisotropy), which restricts the parameter set to
/// the classical sampler.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub spin: Option<Spin>,
    pub q: f64,
    pub lambda: Option<f64>,
    pub delta: Option<f64>,
    pub l: usize,
    pub beta: f64,
    pub bc: BoundaryCondition,
}

impl ModelParams {
    pub fn sqrt_q(&self) -> f64 {
        self.q.sqrt()
    }

    pub fn classical_only(&self) -> bool {
        self.lambda.is_none()
    }

    pub fn require_spin(&self) -> Result<Spin> {
        match self.spin {
            Some(s) if s.twice() > 0 => Ok(s),
            _ => Err(Error::OutOfRange(format!(
                "Q = {} does not correspond to a quantum spin S >= 1/2",
                self.q
            ))),
        }
    }

    pub fn require_lambda(&self) -> Result<f64> {
        self.lambda.ok_or_else(|| {
            Error::OutOfRange(format!("Q = {} < 4 has no real anisotropy parameter", self.q))
        })
    }

    /// The same parameters with `lambda` negated (`Q`, `Delta`, `S` unchanged).
    pub fn with_flipped_lambda(&self) -> ModelParams {
        ModelParams { lambda: self.lambda.map(|x| -x), ..self.clone() }
    }

    pub fn with_bc(&self, bc: BoundaryCondition) -> ModelParams {
        ModelParams { bc, ..self.clone() }
    }

    pub fn with_size(&self, l: usize, beta: f64) -> ModelParams {
        ModelParams { l, beta, ..self.clone() }
    }

    pub fn to_partial(&self) -> PartialParams {
        PartialParams {
            spin: self.spin,
            q: Some(self.q),
            lambda: self.lambda,
            delta: self.delta,
            l: self.l,
            beta: self.beta,
            bc: self.bc,
        }
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= PARAM_TOL * a.abs().max(b.abs()).max(1.0)
}

pub fn normalize_params(p: PartialParams) -> Result<ModelParams> {
    if p.l < 1 {
        return Err(Error::OutOfRange("L must be at least 1".into()));
    }
    if !(p.beta > 0.0 && p.beta.is_finite()) {
        return Err(Error::OutOfRange(format!("beta = {} must be positive", p.beta)));
    }
    if let Some(q) = p.q {
        if !(q >= 1.0 && q.is_finite()) {
            return Err(Error::OutOfRange(format!("Q = {q} must be >= 1")));
        }
    }
    if let Some(d) = p.delta {
        if !(d >= 1.0 && d.is_finite()) {
            return Err(Error::OutOfRange(format!("Delta = {d} must be >= 1")));
        }
    }
    if let Some(lam) = p.lambda {
        if !lam.is_finite() {
            return Err(Error::OutOfRange("lambda must be finite".into()));
        }
    }

    // Each given quantity determines sqrt(Q); they must all agree.
    let mut candidates: Vec<(&str, f64)> = Vec::new();
    if let Some(s) = p.spin {
        candidates.push(("S", s.multiplicity() as f64));
    }
    if let Some(lam) = p.lambda {
        candidates.push(("lambda", 2.0 * lam.cosh()));
    }
    if let Some(d) = p.delta {
        candidates.push(("Delta", 2.0 * d));
    }
    if let Some(q) = p.q {
        candidates.push(("Q", q.sqrt()));
    }
    let Some(&(_, sqrt_q)) = candidates.first() else {
        return Err(Error::InconsistentParams("none of S, Q, lambda, Delta given".into()));
    };
    for &(name, v) in &candidates[1..] {
        if !close(v, sqrt_q) {
            return Err(Error::InconsistentParams(format!(
                "{name} implies sqrt(Q) = {v}, but {} implies {sqrt_q}",
                candidates[0].0
            )));
        }
    }

    let lambda = match p.lambda {
        Some(l) => Some(l),
        None if sqrt_q >= 2.0 => Some((sqrt_q / 2.0).acosh()),
        None => None,
    };
    let delta = match p.delta {
        Some(d) => Some(d),
        None if sqrt_q >= 2.0 => Some(sqrt_q / 2.0),
        None => None,
    };
    let spin = match p.spin {
        Some(s) => Some(s),
        None => {
            let twice = sqrt_q - 1.0;
            if close(twice, twice.round()) {
                Some(Spin::from_twice(twice.round() as u32))
            } else {
                None
            }
        }
    };
    let q = match (p.spin, p.q) {
        (Some(s), _) => (s.multiplicity() * s.multiplicity()) as f64,
        (None, Some(q)) => q,
        (None, None) => sqrt_q * sqrt_q,
    };

    Ok(ModelParams { spin, q, lambda, delta, l: p.l, beta: p.beta, bc: p.bc })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> PartialParams {
        PartialParams::new(2, 1.0, BoundaryCondition::CappedAlternating)
    }

    #[test]
    fn spin_one_chain() {
        let p = base().spin(Spin::ONE).normalize().unwrap();
        assert_eq!(p.q, 9.0);
        let golden = ((3.0 + 5f64.sqrt()) / 2.0).ln();
        assert!((p.lambda.unwrap() - golden).abs() < 1e-12);
        assert!((p.delta.unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn symmetry_point() {
        let p = base().lambda(0.0).normalize().unwrap();
        assert_eq!(p.q, 4.0);
        assert_eq!(p.spin, Some(Spin::HALF));
        assert_eq!(p.delta, Some(1.0));
    }

    #[test]
    fn untilted_limit_is_classical() {
        let p = base().q(1.0).normalize().unwrap();
        assert_eq!(p.spin, Some(Spin::ZERO));
        assert!(p.lambda.is_none() && p.delta.is_none());
        assert!(p.classical_only());
        assert!(p.require_spin().is_err());
        assert!(p.require_lambda().is_err());
    }

    #[test]
    fn inconsistent_is_rejected() {
        let e = base().spin(Spin::ONE).q(8.0).normalize().unwrap_err();
        assert!(matches!(e, Error::InconsistentParams(_)));
        let e = base().lambda(1.0).delta(1.2).normalize().unwrap_err();
        assert!(matches!(e, Error::InconsistentParams(_)));
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(base().q(0.5).normalize(), Err(Error::OutOfRange(_))));
        assert!(matches!(base().delta(0.9).normalize(), Err(Error::OutOfRange(_))));
        let mut p = base().spin(Spin::ONE);
        p.l = 0;
        assert!(matches!(p.normalize(), Err(Error::OutOfRange(_))));
        let mut p = base().spin(Spin::ONE);
        p.beta = 0.0;
        assert!(matches!(p.normalize(), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn negative_lambda_is_kept() {
        let p = base().lambda(-0.7).normalize().unwrap();
        assert_eq!(p.lambda, Some(-0.7));
        assert!((p.delta.unwrap() - 0.7f64.cosh()).abs() < 1e-15);
    }

    #[test]
    fn spin_parsing() {
        assert_eq!("1/2".parse::<Spin>().unwrap(), Spin::HALF);
        assert_eq!("1.5".parse::<Spin>().unwrap(), Spin::THREE_HALVES);
        assert_eq!(Spin::THREE_HALVES.to_string(), "3/2");
        assert!("0.3".parse::<Spin>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn normalize_is_idempotent(twice in 0u32..8, lam in -3.0f64..3.0, pick in 0usize..3) {
                let p = match pick {
                    0 => base().spin(Spin::from_twice(twice)),
                    1 => base().lambda(lam),
                    _ => base().delta(1.0 + lam.abs()),
                };
                let once = p.normalize().unwrap();
                let twice_n = once.to_partial().normalize().unwrap();
                prop_assert_eq!(once, twice_n);
            }

            #[test]
            fn consistency_triangle(twice in 1u32..10) {
                let p = base().spin(Spin::from_twice(twice)).normalize().unwrap();
                let s = Spin::from_twice(twice).value();
                let lam = p.lambda.unwrap();
                let tol = 1e-12 * p.q;
                prop_assert!(((2.0 * s + 1.0).powi(2) - p.q).abs() <= tol);
                prop_assert!(((lam.exp() + (-lam).exp()).powi(2) - p.q).abs() <= tol);
                prop_assert!((lam.cosh() - p.delta.unwrap()).abs() <= 1e-12 * p.delta.unwrap());
            }
        }
    }
}
