//! Observable specifications and their text form.
//!
//! The text form is `kind[:arg]*`, e.g. `projector:0`, `spinspin:0:1`,
//! `staggered:rb`, `touch:4:4`, `xi:2:8`, `tracial:0:0.5:1:1:0.5:-1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{ModelParams, SpaceTimeBox};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// One pseudo-spin insertion `1[tau(site, time) = sign]`, `time` measured
/// from the bottom of the box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Insertion {
    pub site: i64,
    pub time: f64,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ObservableSpec {
    /// `1[(u, 0) <-> (v, t)]`.
    Connectivity { u: i64, v: i64, t: f64 },
    /// `1[(2n-1, 0) <-> (2n, 0)] - 1[(2n, 0) <-> (2n+1, 0)]`.
    DimerOrder { n: i64 },
    /// Conditional value of `S_u . S_v`.
    SpinSpin { u: i64, v: i64 },
    /// Conditional value of `sqrt(Q) P_{u,u+1}`.
    Projector { u: i64 },
    /// `tau(u, 0)`.
    SpinZ { u: i64, rb: bool },
    StaggeredMagnetization { rb: bool },
    BoundaryMagnetization { side: Side, rb: bool },
    BoundaryTouch { l: usize, t: f64 },
    /// Connectivity of two dual points by clusters inside a nested region.
    RegionConnectivity { l: usize, t: f64, p: (i64, f64), q: (i64, f64) },
    /// Loops separating `(1/2, 0)` from the outside.
    NestingCount,
    RungCount,
    LoopCount,
    /// Product of pseudo-spin indicators at the given times.
    PseudoSpinEvent { insertions: Vec<Insertion> },
    /// Expands to connectivities `(0,0) <-> (r,0)` for `r` in the window.
    CorrelationLengthFit { rmin: i64, rmax: i64 },
}

impl ObservableSpec {
    pub fn name(&self) -> &'static str {
        use ObservableSpec::*;
        match self {
            Connectivity { .. } => "conn",
            DimerOrder { .. } => "dimer",
            SpinSpin { .. } => "spinspin",
            Projector { .. } => "projector",
            SpinZ { .. } => "spinz",
            StaggeredMagnetization { .. } => "staggered",
            BoundaryMagnetization { .. } => "boundary",
            BoundaryTouch { .. } => "touch",
            RegionConnectivity { .. } => "regionconn",
            NestingCount => "nesting",
            RungCount => "rungs",
            LoopCount => "loops",
            PseudoSpinEvent { .. } => "tracial",
            CorrelationLengthFit { .. } => "xi",
        }
    }

    /// Argument part of the text form (everything after the first `:`).
    pub fn args(&self) -> String {
        let s = self.to_string();
        match s.split_once(':') {
            Some((_, a)) => a.to_string(),
            None => String::new(),
        }
    }

    /// Whether evaluation needs sampled loop orientations.
    pub fn needs_orientation(&self) -> bool {
        use ObservableSpec::*;
        match self {
            SpinZ { rb, .. } | StaggeredMagnetization { rb } | BoundaryMagnetization { rb, .. } => !rb,
            PseudoSpinEvent { .. } => true,
            _ => false,
        }
    }

    pub fn needs_clusters(&self) -> bool {
        matches!(self, ObservableSpec::BoundaryTouch { .. })
    }

    /// Check arguments against the box and parameters.
    pub fn validate(&self, params: &ModelParams, bx: &SpaceTimeBox) -> Result<()> {
        use ObservableSpec::*;
        let site = |u: i64| bx.site_index(u).map(|_| ());
        let edge = |u: i64| bx.column_of_edge(u).map(|_| ());
        let time = |t: f64| {
            if bx.contains_time(t) {
                Ok(())
            } else {
                Err(Error::OutOfRange(format!("time {t} outside box")))
            }
        };
        match self {
            Connectivity { u, v, t } => {
                site(*u)?;
                site(*v)?;
                time(*t)
            }
            DimerOrder { n } => {
                site(2 * n - 1)?;
                site(2 * n)?;
                site(2 * n + 1)
            }
            SpinSpin { u, v } => {
                if u == v {
                    return Err(Error::OutOfRange("spin-spin needs u != v".into()));
                }
                params.require_spin()?;
                site(*u)?;
                site(*v)
            }
            Projector { u } => {
                edge(*u)?;
                site(*u)?;
                site(*u + 1)
            }
            SpinZ { u, .. } => {
                params.require_lambda()?;
                site(*u)
            }
            StaggeredMagnetization { .. } => params.require_lambda().map(|_| ()),
            BoundaryMagnetization { .. } => {
                params.require_lambda()?;
                if bx.is_capped() {
                    Ok(())
                } else {
                    Err(Error::InvalidConfiguration("boundary magnetization needs a capped box".into()))
                }
            }
            BoundaryTouch { l, t } => crate::loops::NestedRegion::new(*l, *t).check(bx),
            RegionConnectivity { l, t, p, q } => {
                let r = crate::loops::NestedRegion::new(*l, *t);
                r.check(bx)?;
                for pt in [p, q] {
                    if !r.contains_edge(pt.0) || pt.1.abs() > t / 2.0 {
                        return Err(Error::OutOfRange(format!("point {pt:?} outside region")));
                    }
                }
                Ok(())
            }
            NestingCount | RungCount | LoopCount => Ok(()),
            PseudoSpinEvent { insertions } => {
                params.require_lambda()?;
                if insertions.is_empty() {
                    return Err(Error::OutOfRange("no insertions".into()));
                }
                for ins in insertions {
                    site(ins.site)?;
                    if !(ins.time > 0.0 && ins.time < bx.beta()) {
                        return Err(Error::TimeOrderViolation);
                    }
                }
                Ok(())
            }
            CorrelationLengthFit { rmin, rmax } => {
                if rmin < &1 || rmax <= rmin {
                    return Err(Error::OutOfRange(format!("bad fit window [{rmin}, {rmax}]")));
                }
                site(*rmax)
            }
        }
    }

    /// The per-sample observables a spec is computed from.
    pub fn expand(&self) -> Vec<ObservableSpec> {
        match self {
            ObservableSpec::CorrelationLengthFit { rmin, rmax } => {
                (*rmin..=*rmax).map(|r| ObservableSpec::Connectivity { u: 0, v: r, t: 0.0 }).collect()
            }
            other => vec![other.clone()],
        }
    }
}

fn rb_suffix(rb: bool) -> &'static str {
    if rb { ":rb" } else { "" }
}

impl fmt::Display for ObservableSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ObservableSpec::*;
        match self {
            Connectivity { u, v, t } => write!(f, "conn:{u}:{v}:{t}"),
            DimerOrder { n } => write!(f, "dimer:{n}"),
            SpinSpin { u, v } => write!(f, "spinspin:{u}:{v}"),
            Projector { u } => write!(f, "projector:{u}"),
            SpinZ { u, rb } => write!(f, "spinz:{u}{}", rb_suffix(*rb)),
            StaggeredMagnetization { rb } => write!(f, "staggered{}", rb_suffix(*rb)),
            BoundaryMagnetization { side, rb } => {
                let s = match side {
                    Side::Left => "left",
                    Side::Right => "right",
                };
                write!(f, "boundary:{s}{}", rb_suffix(*rb))
            }
            BoundaryTouch { l, t } => write!(f, "touch:{l}:{t}"),
            RegionConnectivity { l, t, p, q } => {
                write!(f, "regionconn:{l}:{t}:{}:{}:{}:{}", p.0, p.1, q.0, q.1)
            }
            NestingCount => f.write_str("nesting"),
            RungCount => f.write_str("rungs"),
            LoopCount => f.write_str("loops"),
            PseudoSpinEvent { insertions } => {
                f.write_str("tracial")?;
                for i in insertions {
                    write!(f, ":{}:{}:{}", i.site, i.time, i.sign)?;
                }
                Ok(())
            }
            CorrelationLengthFit { rmin, rmax } => write!(f, "xi:{rmin}:{rmax}"),
        }
    }
}

fn bad(s: &str, why: &str) -> Error {
    Error::Config(format!("observable '{s}': {why}"))
}

impl FromStr for ObservableSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use ObservableSpec::*;
        let parts: Vec<&str> = s.trim().split(':').map(str::trim).collect();
        let int = |k: usize| -> Result<i64> {
            parts.get(k).ok_or_else(|| bad(s, "missing argument"))?.parse().map_err(|_| bad(s, "expected an integer"))
        };
        let real = |k: usize| -> Result<f64> {
            parts.get(k).ok_or_else(|| bad(s, "missing argument"))?.parse().map_err(|_| bad(s, "expected a number"))
        };
        let rb_at = |k: usize| -> Result<bool> {
            match parts.get(k) {
                None => Ok(false),
                Some(&"rb") => Ok(true),
                Some(&"raw") => Ok(false),
                Some(_) => Err(bad(s, "expected 'rb' or 'raw'")),
            }
        };
        let arity = |n: usize| -> Result<()> {
            if parts.len() > n {
                Err(bad(s, "too many arguments"))
            } else {
                Ok(())
            }
        };
        let spec = match parts[0] {
            "conn" | "connectivity" => {
                arity(4)?;
                let t = if parts.len() > 3 { real(3)? } else { 0.0 };
                Connectivity { u: int(1)?, v: int(2)?, t }
            }
            "dimer" => {
                arity(2)?;
                DimerOrder { n: int(1)? }
            }
            "spinspin" => {
                arity(3)?;
                SpinSpin { u: int(1)?, v: int(2)? }
            }
            "projector" => {
                arity(2)?;
                Projector { u: int(1)? }
            }
            "spinz" => {
                arity(3)?;
                SpinZ { u: int(1)?, rb: rb_at(2)? }
            }
            "staggered" => {
                arity(2)?;
                StaggeredMagnetization { rb: rb_at(1)? }
            }
            "boundary" => {
                arity(3)?;
                let side = match parts.get(1) {
                    Some(&"left") => Side::Left,
                    Some(&"right") => Side::Right,
                    _ => return Err(bad(s, "side must be 'left' or 'right'")),
                };
                BoundaryMagnetization { side, rb: rb_at(2)? }
            }
            "touch" => {
                arity(3)?;
                let l = int(1)?;
                if l < 1 {
                    return Err(bad(s, "l must be positive"));
                }
                BoundaryTouch { l: l as usize, t: real(2)? }
            }
            "regionconn" => {
                arity(7)?;
                let l = int(1)?;
                if l < 1 {
                    return Err(bad(s, "l must be positive"));
                }
                RegionConnectivity { l: l as usize, t: real(2)?, p: (int(3)?, real(4)?), q: (int(5)?, real(6)?) }
            }
            "nesting" => {
                arity(1)?;
                NestingCount
            }
            "rungs" => {
                arity(1)?;
                RungCount
            }
            "loops" => {
                arity(1)?;
                LoopCount
            }
            "tracial" => {
                if parts.len() < 4 || (parts.len() - 1) % 3 != 0 {
                    return Err(bad(s, "expected triples site:time:sign"));
                }
                let mut insertions = Vec::new();
                for k in (1..parts.len()).step_by(3) {
                    let sign = match int(k + 2)? {
                        1 => 1,
                        -1 => -1,
                        _ => return Err(bad(s, "sign must be 1 or -1")),
                    };
                    insertions.push(Insertion { site: int(k)?, time: real(k + 1)?, sign });
                }
                PseudoSpinEvent { insertions }
            }
            "xi" => {
                arity(3)?;
                CorrelationLengthFit { rmin: int(1)?, rmax: int(2)? }
            }
            _ => return Err(bad(s, "unknown kind")),
        };
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_round_trips() {
        for s in [
            "conn:0:3:0.5",
            "dimer:1",
            "spinspin:0:1",
            "projector:-1",
            "spinz:2:rb",
            "staggered",
            "staggered:rb",
            "boundary:left",
            "touch:4:2",
            "regionconn:3:2:0:0:1:0.25",
            "nesting",
            "rungs",
            "loops",
            "tracial:0:0.5:1:1:1.5:-1",
            "xi:2:8",
        ] {
            let spec: ObservableSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!("conn:0:1".parse::<ObservableSpec>().unwrap().to_string(), "conn:0:1:0");
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "dimer", "dimer:x", "boundary:up", "tracial:0:1", "tracial:0:1:2", "spinspin:0:1:2", "foo"] {
            assert!(s.parse::<ObservableSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn args_split() {
        let s: ObservableSpec = "spinspin:0:1".parse().unwrap();
        assert_eq!(s.name(), "spinspin");
        assert_eq!(s.args(), "0:1");
        assert_eq!(ObservableSpec::NestingCount.args(), "");
    }

    #[test]
    fn fit_expands_to_connectivities() {
        let s = ObservableSpec::CorrelationLengthFit { rmin: 2, rmax: 4 };
        let e = s.expand();
        assert_eq!(e.len(), 3);
        assert_eq!(e[0], ObservableSpec::Connectivity { u: 0, v: 2, t: 0.0 });
    }
}
