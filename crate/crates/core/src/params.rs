//! Degree-dependent parameter schedules, regime classification and the
//! standardizing maps that tie raw zeros to limit-law coordinates.
//!
//! Schedules have the power-law form `c*n^p+d`, so every limit that decides a
//! regime (`lim α_n/n`, `lim α_n/β_n`) is read off the stored coefficients and
//! exponents instead of being estimated from finite `n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// `value(n) = coefficient * n^exponent + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ParamSchedule {
    coefficient: f64,
    exponent: f64,
    offset: f64,
}

impl ParamSchedule {
    pub fn new(coefficient: f64, exponent: f64, offset: f64) -> Result<Self> {
        if !(coefficient.is_finite() && exponent.is_finite() && offset.is_finite()) {
            return Err(domain("schedule fields must be finite"));
        }
        if coefficient < 0.0 || exponent < 0.0 {
            return Err(domain(format!(
                "schedule needs coefficient >= 0 and exponent >= 0, got c={coefficient}, p={exponent}"
            )));
        }
        Ok(Self { coefficient, exponent, offset: if offset == 0.0 { 0.0 } else { offset } })
    }

    /// `c * n^p`.
    pub fn power(coefficient: f64, exponent: f64) -> Result<Self> {
        Self::new(coefficient, exponent, 0.0)
    }

    /// The constant schedule `n ↦ value`.
    pub fn constant(value: f64) -> Result<Self> {
        Self::new(0.0, 0.0, value)
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn value(&self, n: usize) -> f64 {
        let n = n as f64;
        let pow = if self.exponent.fract() == 0.0 && self.exponent <= i32::MAX as f64 {
            n.powi(self.exponent as i32)
        } else {
            n.powf(self.exponent)
        };
        self.coefficient * pow + self.offset
    }

    /// Exponent of the dominant term; a vanishing coefficient leaves only the constant.
    fn growth_exponent(&self) -> f64 {
        if self.coefficient == 0.0 {
            0.0
        } else {
            self.exponent
        }
    }

    /// `lim value(n)/n`, or `None` when it diverges.
    pub fn per_n_limit(&self) -> Option<f64> {
        let p = self.growth_exponent();
        if p > 1.0 {
            None
        } else if p == 1.0 {
            Some(self.coefficient)
        } else {
            Some(0.0)
        }
    }
}

/// Evaluates a schedule at degree `n`.
pub fn eval_schedule(schedule: &ParamSchedule, n: usize) -> f64 {
    schedule.value(n)
}

impl fmt::Display for ParamSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*n^{}", self.coefficient, self.exponent)?;
        if self.offset < 0.0 {
            write!(f, "-{}", -self.offset)
        } else {
            write!(f, "+{}", self.offset)
        }
    }
}

impl FromStr for ParamSchedule {
    type Err = Error;

    /// Accepts `c*n^p+d`, `c*n^p-d`, `c*n^p` and a bare decimal constant.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("cannot parse schedule '{s}', expected c*n^p+d"));
        let num = |t: &str| t.parse::<f64>().map_err(|_| bad());

        let Some((coef, rest)) = text.split_once("*n^") else {
            return Self::constant(num(&text)?);
        };
        // split the exponent from the offset at the first sign that is not part of a float exponent
        let bytes = rest.as_bytes();
        let split =
            (1..bytes.len()).find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        let (exp, off) = match split {
            Some(i) => (&rest[..i], num(rest[i..].strip_prefix('+').unwrap_or(&rest[i..]))?),
            None => (rest, 0.0),
        };
        Self::new(num(coef)?, num(exp)?, off)
    }
}

impl TryFrom<String> for ParamSchedule {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ParamSchedule> for String {
    fn from(s: ParamSchedule) -> String {
        s.to_string()
    }
}

/// A parameter sequence: either a power law, or an explicit table `values[n-1]`.
///
/// Tables can drive zero computations but are never classified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Schedule {
    Power(ParamSchedule),
    Table(Vec<f64>),
}

impl Schedule {
    pub fn value(&self, n: usize) -> Result<f64> {
        match self {
            Schedule::Power(p) => Ok(p.value(n)),
            Schedule::Table(t) => n
                .checked_sub(1)
                .and_then(|i| t.get(i))
                .copied()
                .ok_or_else(|| domain(format!("table schedule has no entry for n = {n}"))),
        }
    }

    fn power_law(&self) -> Result<&ParamSchedule> {
        match self {
            Schedule::Power(p) => Ok(p),
            Schedule::Table(_) => Err(Error::UnsupportedRegime("tabulated schedules cannot be classified".into())),
        }
    }
}

impl From<ParamSchedule> for Schedule {
    fn from(p: ParamSchedule) -> Self {
        Schedule::Power(p)
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::Power(p) => p.fmt(f),
            Schedule::Table(t) => write!(f, "table[{}]", t.len()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Jacobi,
    Laguerre,
    Hermite,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Jacobi => "jacobi",
            Family::Laguerre => "laguerre",
            Family::Hermite => "hermite",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jacobi" => Ok(Family::Jacobi),
            "laguerre" => Ok(Family::Laguerre),
            "hermite" => Ok(Family::Hermite),
            other => Err(Error::Parse(format!("unknown family '{other}'"))),
        }
    }
}

/// A polynomial family together with its parameter schedules.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Problem {
    Jacobi { alpha: Schedule, beta: Schedule },
    Laguerre { alpha: Schedule },
    Hermite { gamma: Schedule },
}

impl Problem {
    pub fn jacobi(alpha: impl Into<Schedule>, beta: impl Into<Schedule>) -> Self {
        Problem::Jacobi { alpha: alpha.into(), beta: beta.into() }
    }

    pub fn laguerre(alpha: impl Into<Schedule>) -> Self {
        Problem::Laguerre { alpha: alpha.into() }
    }

    pub fn hermite(gamma: impl Into<Schedule>) -> Self {
        Problem::Hermite { gamma: gamma.into() }
    }

    pub fn family(&self) -> Family {
        match self {
            Problem::Jacobi { .. } => Family::Jacobi,
            Problem::Laguerre { .. } => Family::Laguerre,
            Problem::Hermite { .. } => Family::Hermite,
        }
    }

    /// Parameter values at degree `n`: `(α_n, β_n)`, `(α_n, None)` or `(γ_n, None)`.
    pub fn values(&self, n: usize) -> Result<(f64, Option<f64>)> {
        match self {
            Problem::Jacobi { alpha, beta } => Ok((alpha.value(n)?, Some(beta.value(n)?))),
            Problem::Laguerre { alpha } => Ok((alpha.value(n)?, None)),
            Problem::Hermite { gamma } => Ok((gamma.value(n)?, None)),
        }
    }

    pub fn classify(&self) -> Result<Regime> {
        match self {
            Problem::Jacobi { alpha, beta } => classify_jacobi(alpha.power_law()?, beta.power_law()?),
            Problem::Laguerre { alpha } => {
                let kind = match alpha.power_law()?.per_n_limit() {
                    Some(a) => RegimeKind::LaguerreLinear { a },
                    None => RegimeKind::LaguerreSuper,
                };
                Ok(Regime { kind, reflected: false })
            }
            Problem::Hermite { gamma } => {
                let kind = match gamma.power_law()?.per_n_limit() {
                    Some(c) => RegimeKind::HermiteLinear { c },
                    None => RegimeKind::HermiteSuper,
                };
                Ok(Regime { kind, reflected: false })
            }
        }
    }
}

/// Classifies a family from loose arguments; `beta` is required for Jacobi only.
pub fn classify(family: Family, alpha: &Schedule, beta: Option<&Schedule>) -> Result<Regime> {
    let problem = match (family, beta) {
        (Family::Jacobi, Some(beta)) => Problem::jacobi(alpha.clone(), beta.clone()),
        (Family::Jacobi, None) => return Err(Error::UnsupportedRegime("jacobi needs both alpha and beta".into())),
        (Family::Laguerre, _) => Problem::laguerre(alpha.clone()),
        (Family::Hermite, _) => Problem::hermite(alpha.clone()),
    };
    problem.classify()
}

fn classify_jacobi(alpha: &ParamSchedule, beta: &ParamSchedule) -> Result<Regime> {
    use RegimeKind::*;
    let (kind, reflected) = match (alpha.per_n_limit(), beta.per_n_limit()) {
        (Some(a), Some(b)) => (JacobiLinear { a, b }, false),
        (None, Some(b)) => (JacobiOneSuper { b }, false),
        (Some(a), None) => (JacobiOneSuper { b: a }, true),
        (None, None) => {
            let (pa, pb) = (alpha.growth_exponent(), beta.growth_exponent());
            if pa > pb {
                (JacobiDominantSuper, false)
            } else if pa < pb {
                (JacobiDominantSuper, true)
            } else {
                let c = alpha.coefficient() / beta.coefficient();
                if !(c.is_finite() && c > 0.0) {
                    return Err(Error::UnsupportedRegime(format!("lim alpha/beta = {c}")));
                }
                (JacobiBalancedSuper { c }, false)
            }
        }
    };
    Ok(Regime { kind, reflected })
}

/// Asymptotic regime with its limit constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum RegimeKind {
    /// `α_n/n → a`, `β_n/n → b`.
    JacobiLinear {
        a: f64,
        b: f64,
    },
    /// Both super-linear with `α_n/β_n → c ∈ (0, ∞)`.
    JacobiBalancedSuper {
        c: f64,
    },
    /// `α_n` super-linear, `β_n/n → b`.
    JacobiOneSuper {
        b: f64,
    },
    /// Both super-linear with `α_n/β_n → ∞`.
    JacobiDominantSuper,
    LaguerreLinear {
        a: f64,
    },
    LaguerreSuper,
    HermiteLinear {
        c: f64,
    },
    HermiteSuper,
}

impl RegimeKind {
    pub fn family(&self) -> Family {
        use RegimeKind::*;
        match self {
            JacobiLinear { .. } | JacobiBalancedSuper { .. } | JacobiOneSuper { .. } | JacobiDominantSuper => {
                Family::Jacobi
            }
            LaguerreLinear { .. } | LaguerreSuper => Family::Laguerre,
            HermiteLinear { .. } | HermiteSuper => Family::Hermite,
        }
    }
}

impl fmt::Display for RegimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use RegimeKind::*;
        match self {
            JacobiLinear { a, b } => write!(f, "jacobi-linear(a={a},b={b})"),
            JacobiBalancedSuper { c } => write!(f, "jacobi-balanced-super(c={c})"),
            JacobiOneSuper { b } => write!(f, "jacobi-one-super(b={b})"),
            JacobiDominantSuper => f.write_str("jacobi-dominant-super"),
            LaguerreLinear { a } => write!(f, "laguerre-linear(a={a})"),
            LaguerreSuper => f.write_str("laguerre-super"),
            HermiteLinear { c } => write!(f, "hermite-linear(c={c})"),
            HermiteSuper => f.write_str("hermite-super"),
        }
    }
}

/// A regime plus whether α and β were swapped to make α the dominant parameter.
///
/// Zeros of `P_n^{(α,β)}` are the negated zeros of `P_n^{(β,α)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Regime {
    pub kind: RegimeKind,
    pub reflected: bool,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)?;
        if self.reflected {
            f.write_str("+reflected")?;
        }
        Ok(())
    }
}

/// `z = (σ·x − shift)/scale` with `σ = −1` when reflected.
///
/// `center` is the Jacobi location parameter with `shift = 2·center − 1`; it is
/// stored separately so constructors that know it in closed form keep its
/// digits when `shift` is close to −1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    scale: f64,
    shift: f64,
    center: f64,
    reflect: bool,
}

impl AffineMap {
    pub fn new(scale: f64, shift: f64) -> Result<Self> {
        Self::build(scale, shift, 0.5 * (1.0 + shift))
    }

    /// Builds from the Jacobi center `ε`, i.e. `shift = 2ε − 1`.
    pub fn from_center(scale: f64, center: f64) -> Result<Self> {
        Self::build(scale, 2.0 * center - 1.0, center)
    }

    pub fn identity() -> Self {
        Self { scale: 1.0, shift: 0.0, center: 0.5, reflect: false }
    }

    fn build(scale: f64, shift: f64, center: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite() && shift.is_finite() && center.is_finite()) {
            return Err(domain(format!("affine map needs finite scale > 0, got {scale}, shift {shift}")));
        }
        Ok(Self { scale, shift, center, reflect: false })
    }

    pub fn reflected(mut self) -> Self {
        self.reflect = !self.reflect;
        self
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn is_reflected(&self) -> bool {
        self.reflect
    }

    /// The same map without the reflection.
    pub fn unreflected(&self) -> Self {
        Self { reflect: false, ..*self }
    }

    fn sign(&self) -> f64 {
        if self.reflect {
            -1.0
        } else {
            1.0
        }
    }

    pub fn forward(&self, x: f64) -> f64 {
        (self.sign() * x - self.shift) / self.scale
    }

    pub fn inverse(&self, z: f64) -> f64 {
        self.sign() * (self.scale * z + self.shift)
    }
}

/// Standardization from raw zeros to limit-law coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ScalingMap {
    Affine(AffineMap),
    /// `z = sign(x)·sqrt(max(0, (x² − center)/spread))` with `spread = sqrt(n·γ_n)`.
    HermiteQuadratic {
        center: f64,
        spread: f64,
    },
}

impl ScalingMap {
    pub fn identity() -> Self {
        ScalingMap::Affine(AffineMap::identity())
    }

    pub fn affine(scale: f64, shift: f64) -> Result<Self> {
        AffineMap::new(scale, shift).map(ScalingMap::Affine)
    }

    pub fn forward(&self, x: f64) -> f64 {
        match *self {
            ScalingMap::Affine(m) => m.forward(x),
            ScalingMap::HermiteQuadratic { center, spread } => {
                let u = ((x * x - center) / spread).max(0.0);
                u.sqrt().copysign(x)
            }
        }
    }

    /// Inverse map. The quadratic map is only invertible off `z = 0`, where
    /// the smallest preimage magnitude `sqrt(center)` is returned with the sign of `z`.
    pub fn inverse(&self, z: f64) -> f64 {
        match *self {
            ScalingMap::Affine(m) => m.inverse(z),
            ScalingMap::HermiteQuadratic { center, spread } => (center + spread * z * z).sqrt().copysign(z),
        }
    }

    /// True unless the map reverses order.
    pub fn is_increasing(&self) -> bool {
        match self {
            ScalingMap::Affine(m) => !m.reflect,
            ScalingMap::HermiteQuadratic { .. } => true,
        }
    }

    pub fn as_affine(&self) -> Option<&AffineMap> {
        match self {
            ScalingMap::Affine(m) => Some(m),
            ScalingMap::HermiteQuadratic { .. } => None,
        }
    }
}

impl fmt::Display for ScalingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalingMap::Affine(m) => {
                write!(f, "affine(scale={},shift={}{})", m.scale, m.shift, if m.reflect { ",reflect" } else { "" })
            }
            ScalingMap::HermiteQuadratic { center, spread } => {
                write!(f, "hermite-quadratic(center={center},spread={spread})")
            }
        }
    }
}

/// The standardizing map of `regime` at degree `n`.
pub fn scaling_for(regime: &Regime, problem: &Problem, n: usize) -> Result<ScalingMap> {
    use RegimeKind::*;
    if n == 0 {
        return Err(domain("degree must be at least 1"));
    }
    let mismatch = || Error::UnsupportedRegime(format!("regime {regime} does not match family {}", problem.family()));
    if regime.kind.family() != problem.family() {
        return Err(mismatch());
    }
    let nf = n as f64;
    let (p, q) = problem.values(n)?;
    // after reflection `a` is the dominant Jacobi parameter
    let (a, b) = match (q, regime.reflected) {
        (Some(q), true) => (q, p),
        (Some(q), false) => (p, q),
        (None, _) => (p, 0.0),
    };
    let map = match regime.kind {
        JacobiLinear { .. } => AffineMap::identity(),
        JacobiBalancedSuper { .. } => AffineMap::from_center((nf / a).sqrt(), b / (a + b))?,
        JacobiOneSuper { .. } => AffineMap::from_center(nf / a, 0.0)?,
        JacobiDominantSuper => {
            let root = (nf * b).sqrt();
            AffineMap::from_center(root / a, (nf + b - root) / (2.0 * nf + a + b))?
        }
        LaguerreLinear { .. } => AffineMap::new(nf, 0.0)?,
        LaguerreSuper => AffineMap::new((nf * a).sqrt(), a)?,
        HermiteLinear { .. } => AffineMap::new(nf.sqrt(), 0.0)?,
        HermiteSuper => {
            let spread = (nf * a).sqrt();
            if !(spread > 0.0) {
                return Err(domain(format!("hermite quadratic map needs gamma_n > 0, got {a}")));
            }
            return Ok(ScalingMap::HermiteQuadratic { center: a, spread });
        }
    };
    Ok(ScalingMap::Affine(if regime.reflected { map.reflected() } else { map }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn s(text: &str) -> ParamSchedule {
        text.parse().unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_schedule(&ParamSchedule::new(1.0, 4.0, 0.0).unwrap(), 3), 81.0);
        assert_eq!(eval_schedule(&ParamSchedule::new(0.0, 0.0, 0.5).unwrap(), 10), 0.5);
        assert_eq!(eval_schedule(&ParamSchedule::new(1.0, 3.0, 0.0).unwrap(), 200), 8.0e6);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(s("1*n^4+0"), ParamSchedule::new(1.0, 4.0, 0.0).unwrap());
        assert_eq!(s(" 2.5 * n^1.5 - 0.25"), ParamSchedule::new(2.5, 1.5, -0.25).unwrap());
        assert_eq!(s("3*n^2"), ParamSchedule::new(3.0, 2.0, 0.0).unwrap());
        assert_eq!(s("50"), ParamSchedule::constant(50.0).unwrap());
        assert_eq!(s("1e-1*n^1e0+-2"), ParamSchedule::new(0.1, 1.0, -2.0).unwrap());
        assert!("n^2".parse::<ParamSchedule>().is_err());
        assert!("-1*n^2+0".parse::<ParamSchedule>().is_err());
        assert!("1*n^x+0".parse::<ParamSchedule>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["1*n^4+0", "0.3*n^1-0.5", "0*n^0+50", "1.25*n^2.5+1e-7"] {
            let p = s(text);
            assert_eq!(s(&p.to_string()), p);
        }
        assert_eq!(s("1*n^4+0").to_string(), "1*n^4+0");
        assert_eq!(s("1*n^1-0.5").to_string(), "1*n^1-0.5");
    }

    fn regime(alpha: &str, beta: &str) -> Regime {
        Problem::jacobi(s(alpha), s(beta)).classify().unwrap()
    }

    #[test]
    fn classify_jacobi_examples() {
        assert_eq!(
            regime("1*n^1+0", "2*n^1+0"),
            Regime { kind: RegimeKind::JacobiLinear { a: 1.0, b: 2.0 }, reflected: false }
        );
        assert_eq!(regime("1*n^2+0", "1*n^2+0").kind, RegimeKind::JacobiBalancedSuper { c: 1.0 });
        assert_eq!(regime("1*n^4+0", "1*n^3+0"), Regime { kind: RegimeKind::JacobiDominantSuper, reflected: false });
        assert_eq!(regime("0.5*n^0.5+3", "0*n^7+1").kind, RegimeKind::JacobiLinear { a: 0.0, b: 0.0 });
        assert_eq!(regime("2*n^2+0", "1*n^1+0").kind, RegimeKind::JacobiOneSuper { b: 1.0 });
    }

    #[test]
    fn classify_swaps_to_reflection() {
        for (a, b) in [("1*n^4+0", "1*n^3+0"), ("1*n^2+0", "3*n^1+0"), ("2*n^1+0", "1*n^1+0")] {
            let direct = regime(a, b);
            let swapped = regime(b, a);
            match direct.kind {
                RegimeKind::JacobiLinear { a, b } => {
                    assert_eq!(swapped.kind, RegimeKind::JacobiLinear { a: b, b: a });
                    assert!(!swapped.reflected);
                }
                _ => {
                    assert_eq!(direct.kind, swapped.kind);
                    assert_ne!(direct.reflected, swapped.reflected);
                }
            }
        }
    }

    #[test]
    fn classify_other_families() {
        let r = Problem::laguerre(s("0*n^0+0")).classify().unwrap();
        assert_eq!(r.kind, RegimeKind::LaguerreLinear { a: 0.0 });
        let r = Problem::laguerre(s("1*n^3+0")).classify().unwrap();
        assert_eq!(r.kind, RegimeKind::LaguerreSuper);
        let r = Problem::hermite(s("0.5*n^1+0")).classify().unwrap();
        assert_eq!(r.kind, RegimeKind::HermiteLinear { c: 0.5 });
        let r = Problem::hermite(s("1*n^3+0")).classify().unwrap();
        assert_eq!(r.kind, RegimeKind::HermiteSuper);
    }

    #[test]
    fn tables_refuse_classification() {
        let p = Problem::jacobi(Schedule::Table(vec![0.0; 5]), s("1*n^1+0"));
        assert!(matches!(p.classify(), Err(Error::UnsupportedRegime(_))));
        assert_eq!(Schedule::Table(vec![1.0, 2.0]).value(2).unwrap(), 2.0);
        assert!(Schedule::Table(vec![1.0]).value(3).is_err());
        assert!(classify(Family::Jacobi, &s("1*n^1+0").into(), None).is_err());
    }

    #[test]
    fn scaling_examples() {
        let p = Problem::jacobi(s("1*n^2+0"), s("1*n^2+0"));
        let r = p.classify().unwrap();
        let m = *scaling_for(&r, &p, 100).unwrap().as_affine().unwrap();
        assert_relative_eq!(m.scale(), 0.1, max_relative = 1e-15);
        assert_eq!(m.shift(), 0.0);

        let p = Problem::laguerre(s("1*n^3+0"));
        let r = p.classify().unwrap();
        let m = *scaling_for(&r, &p, 100).unwrap().as_affine().unwrap();
        assert_relative_eq!(m.scale(), 1e4, max_relative = 1e-15);
        assert_eq!(m.shift(), 1e6);

        let p = Problem::jacobi(s("1*n^4+0"), s("1*n^3+0"));
        let r = p.classify().unwrap();
        for n in [3usize, 10, 57] {
            let m = *scaling_for(&r, &p, n).unwrap().as_affine().unwrap();
            let nf = n as f64;
            assert_relative_eq!(m.scale(), 1.0 / (nf * nf), max_relative = 1e-14);
            let expected = -(nf.powi(3) - nf.powi(2) + 2.0 * nf) / (nf.powi(3) + nf.powi(2) + 2.0);
            assert_relative_eq!(m.shift(), expected, max_relative = 1e-14);
        }
    }

    #[test]
    fn scaling_rejects_mismatch() {
        let p = Problem::laguerre(s("1*n^3+0"));
        let r = Regime { kind: RegimeKind::HermiteSuper, reflected: false };
        assert!(scaling_for(&r, &p, 10).is_err());
    }

    #[test]
    fn maps_invert() {
        let m = AffineMap::new(0.25, -0.7).unwrap().reflected();
        for x in [-0.9, 0.0, 0.3] {
            assert_relative_eq!(m.inverse(m.forward(x)), x, epsilon = 1e-15);
        }
        let q = ScalingMap::HermiteQuadratic { center: 4.0, spread: 2.0 };
        assert_eq!(q.forward(1.0), 0.0);
        assert_relative_eq!(q.forward(-3.0), -(2.5f64).sqrt());
        assert_relative_eq!(q.inverse(q.forward(3.0)), 3.0, epsilon = 1e-14);
    }

    proptest::proptest! {
        #[test]
        fn parse_display_identity(c in 0.0f64..1e6, p in 0.0f64..8.0, d in -1e3f64..1e3) {
            let sched = ParamSchedule::new(c, p, d).unwrap();
            proptest::prop_assert_eq!(sched.to_string().parse::<ParamSchedule>().unwrap(), sched);
        }
    }
}
