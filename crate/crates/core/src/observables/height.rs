//! Height function on dual points.
//!
//! `h(-1/2, 0) = 0`. Crossing line `n` eastward at time `t` adds `tau(n, t)`;
//! moving up through a rung of column `(a, a+1)` adds
//! `tau(a, above) - tau(a, below)`. Paths are axis-parallel polylines through
//! dual points and may not cross a periodic identification.

use crate::error::{Error, Result};
use crate::loops::LoopDecomposition;
use crate::model::SpaceTimeBox;
use crate::sampler::OrientedConfiguration;

pub const BASE_POINT: (f64, f64) = (-0.5, 0.0);

fn check_dual(bx: &SpaceTimeBox, x: f64, t: f64) -> Result<()> {
    if (x - x.floor() - 0.5).abs() > 1e-9 {
        return Err(Error::OutOfRange(format!("x = {x} is not a dual coordinate")));
    }
    let l = bx.l() as f64;
    if x < -l + 0.5 || x > l + 0.5 {
        return if bx.bc().is_space_periodic() {
            Err(Error::PathBlocked(format!("x = {x} lies across the spatial identification")))
        } else {
            Err(Error::OutOfRange(format!("x = {x} outside box")))
        };
    }
    if !bx.contains_time(t) {
        return if bx.bc().is_time_periodic() {
            Err(Error::PathBlocked(format!("t = {t} lies across the time seam")))
        } else {
            Err(Error::OutOfRange(format!("t = {t} outside box")))
        };
    }
    Ok(())
}

/// Column crossed by a vertical move at dual `x`, if any.
fn column_at_dual(bx: &SpaceTimeBox, x: f64) -> Option<usize> {
    let a = (x - 0.5).round() as i64;
    let l = bx.l() as i64;
    if a > -l && a < l {
        bx.column_of_edge(a).ok()
    } else if bx.bc().is_space_periodic() {
        Some(bx.n_columns() - 1)
    } else {
        None
    }
}

/// Anything that can report a pseudo-spin field and its rung crossings.
trait Flux {
    fn bx(&self) -> &SpaceTimeBox;
    fn tau(&self, line: usize, t: f64) -> Result<i8>;
    /// `(time, tau(west, above) - tau(west, below))` for each rung of `c`
    /// with time in the open interval.
    fn rung_jumps(&self, c: usize, lo: f64, hi: f64) -> Result<Vec<(f64, i64)>>;
}

struct LoopFlux<'a> {
    dec: &'a LoopDecomposition,
    oriented: &'a OrientedConfiguration,
}

impl Flux for LoopFlux<'_> {
    fn bx(&self) -> &SpaceTimeBox {
        self.dec.bx()
    }

    fn tau(&self, line: usize, t: f64) -> Result<i8> {
        Ok(self.oriented.tau_segment(self.dec, self.dec.segment_at_index(line, t)?))
    }

    fn rung_jumps(&self, c: usize, lo: f64, hi: f64) -> Result<Vec<(f64, i64)>> {
        let mut out = Vec::new();
        for r in self.dec.column_rung_segments(c) {
            if r.time == lo || r.time == hi {
                return Err(Error::PointOnRung { site: self.dec.bx().column_left_site(c), time: r.time });
            }
            if r.time > lo && r.time < hi {
                let d = self.oriented.tau_segment(self.dec, r.west_above) as i64
                    - self.oriented.tau_segment(self.dec, r.west_below) as i64;
                out.push((r.time, d));
            }
        }
        Ok(out)
    }
}

fn walk<F: Flux>(f: &F, path: &[(f64, f64)], mut on_rung: impl FnMut(i64)) -> Result<i64> {
    let bx = *f.bx();
    let Some(&first) = path.first() else {
        return Err(Error::OutOfRange("empty path".into()));
    };
    if first != BASE_POINT {
        return Err(Error::OutOfRange("paths start at (-1/2, 0)".into()));
    }
    for &(x, t) in path {
        check_dual(&bx, x, t)?;
    }
    let mut h = 0i64;
    for w in path.windows(2) {
        let ((x0, t0), (x1, t1)) = (w[0], w[1]);
        if t0 == t1 {
            let (lo, hi, sign) = if x0 <= x1 { (x0, x1, 1) } else { (x1, x0, -1) };
            let mut n = (lo + 0.5).round() as i64;
            while (n as f64) < hi {
                let line = bx.site_index(n)?;
                h += sign * f.tau(line, t0)? as i64;
                n += 1;
            }
        } else if x0 == x1 {
            if let Some(c) = column_at_dual(&bx, x0) {
                let (lo, hi, sign) = if t0 <= t1 { (t0, t1, 1) } else { (t1, t0, -1) };
                for (_, d) in f.rung_jumps(c, lo, hi)? {
                    on_rung(d);
                    h += sign * d;
                }
            }
        } else {
            return Err(Error::OutOfRange(format!("path leg {:?} -> {:?} is not axis-parallel", w[0], w[1])));
        }
    }
    Ok(h)
}

/// Height at the end of `path`, which starts at [`BASE_POINT`].
pub fn height_along(dec: &LoopDecomposition, oriented: &OrientedConfiguration, path: &[(f64, f64)]) -> Result<i64> {
    walk(&LoopFlux { dec, oriented }, path, |_| ())
}

/// Height change of every rung crossed along `path`, in order.
pub fn rung_crossing_increments(
    dec: &LoopDecomposition,
    oriented: &OrientedConfiguration,
    path: &[(f64, f64)],
) -> Result<Vec<i64>> {
    let mut v = Vec::new();
    walk(&LoopFlux { dec, oriented }, path, |d| v.push(d))?;
    Ok(v)
}

/// The canonical path: along `t = 0`, then vertically.
pub fn canonical_path(x: f64, t: f64) -> Vec<(f64, f64)> {
    vec![BASE_POINT, (x, 0.0), (x, t)]
}

pub fn height_at(dec: &LoopDecomposition, oriented: &OrientedConfiguration, x: f64, t: f64) -> Result<i64> {
    height_along(dec, oriented, &canonical_path(x, t))
}

/// Piecewise-constant pseudo-spin field with no reference to the rungs.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoSpinField {
    bx: SpaceTimeBox,
    /// Per line: `(start time, value)` with consecutive values distinct.
    lines: Vec<Vec<(f64, i8)>>,
}

impl PseudoSpinField {
    pub fn from_oriented(dec: &LoopDecomposition, oriented: &OrientedConfiguration) -> Self {
        let bx = *dec.bx();
        let lines = (0..bx.n_sites())
            .map(|i| {
                let mut v: Vec<(f64, i8)> = Vec::new();
                for s in dec.site_segments(i) {
                    let tau = oriented.tau_segment(dec, s);
                    if v.last().map(|p| p.1) != Some(tau) {
                        v.push((dec.segment_bounds(s).0, tau));
                    }
                }
                v
            })
            .collect();
        PseudoSpinField { bx, lines }
    }

    pub fn value(&self, line: usize, t: f64) -> i8 {
        let v = &self.lines[line];
        let k = v.partition_point(|p| p.0 <= t);
        v[k.max(1) - 1].1
    }

    /// Times at which line `i` changes value.
    pub fn flips(&self, line: usize) -> impl Iterator<Item = f64> + '_ {
        self.lines[line].iter().skip(1).map(|p| p.0)
    }
}

impl Flux for PseudoSpinField {
    fn bx(&self) -> &SpaceTimeBox {
        &self.bx
    }

    fn tau(&self, line: usize, t: f64) -> Result<i8> {
        if self.flips(line).any(|f| f == t) {
            return Err(Error::PointOnRung { site: self.bx.site(line), time: t });
        }
        Ok(self.value(line, t))
    }

    fn rung_jumps(&self, c: usize, lo: f64, hi: f64) -> Result<Vec<(f64, i64)>> {
        // A rung that changes tau flips both of its lines at once; one that
        // does not contributes nothing either way.
        let (a, b) = self.bx.column_sites(c);
        let east: Vec<f64> = self.flips(b).collect();
        let mut out = Vec::new();
        for t in self.flips(a) {
            if !east.contains(&t) {
                continue;
            }
            if t == lo || t == hi {
                return Err(Error::PointOnRung { site: self.bx.site(a), time: t });
            }
            if t > lo && t < hi {
                let k = self.lines[a].partition_point(|p| p.0 < t);
                let d = self.lines[a][k].1 as i64 - self.lines[a][k - 1].1 as i64;
                out.push((t, d));
            }
        }
        Ok(out)
    }
}

/// Height reconstructed from the pseudo-spin field alone.
pub fn height_from_field(field: &PseudoSpinField, path: &[(f64, f64)]) -> Result<i64> {
    walk(field, path, |_| ())
}
