//! Loop decomposition by walking the per-line event lists.
//!
//! Line `i` is cut at the times of the rungs touching it into segments
//! `[e_{j-1}, e_j)`. Every segment has a bottom and a top endpoint; rungs, caps
//! and the time seam pair endpoints up, and following those pairings traces
//! the loops.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{Rung, RungConfiguration, SpaceTimeBox};

const UNSET: u32 = u32::MAX;

/// Net displacement of a loop across the periodic identifications.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WindingFlags {
    pub time: i32,
    pub space: i32,
}

impl WindingFlags {
    pub fn winds(&self) -> bool {
        self.time != 0 || self.space != 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoopInfo {
    /// `(n_left - n_right) / 2` along the reference traversal.
    pub turning: i32,
    pub winding: WindingFlags,
    /// Number of segments.
    pub len: u32,
}

/// The four segments meeting at a rung.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RungSegments {
    pub column: usize,
    pub time: f64,
    pub west_below: usize,
    pub west_above: usize,
    pub east_below: usize,
    pub east_above: usize,
}

#[derive(Clone, Debug)]
pub struct LoopDecomposition {
    bx: SpaceTimeBox,
    seg_offset: Vec<usize>,
    ev_time: Vec<f64>,
    seg_site: Vec<u32>,
    col_offset: Vec<usize>,
    west_pos: Vec<u32>,
    east_pos: Vec<u32>,
    partner: Vec<u32>,
    lat: Vec<i8>,
    wrap: Vec<i8>,
    seg_loop: Vec<u32>,
    seg_dir: Vec<i8>,
    seg_tshift: Vec<i32>,
    seg_xshift: Vec<i32>,
    loops: Vec<LoopInfo>,
}

pub fn decompose(bx: &SpaceTimeBox, cfg: &RungConfiguration) -> LoopDecomposition {
    let mut dec = LoopDecomposition::with_box(*bx);
    dec.rebuild(cfg);
    dec
}

impl LoopDecomposition {
    fn with_box(bx: SpaceTimeBox) -> Self {
        LoopDecomposition {
            bx,
            seg_offset: Vec::new(),
            ev_time: Vec::new(),
            seg_site: Vec::new(),
            col_offset: Vec::new(),
            west_pos: Vec::new(),
            east_pos: Vec::new(),
            partner: Vec::new(),
            lat: Vec::new(),
            wrap: Vec::new(),
            seg_loop: Vec::new(),
            seg_dir: Vec::new(),
            seg_tshift: Vec::new(),
            seg_xshift: Vec::new(),
            loops: Vec::new(),
        }
    }

    /// Recomputes the decomposition for `cfg` in place, reusing allocations.
    pub fn rebuild(&mut self, cfg: &RungConfiguration) {
        let bx = self.bx;
        let n_sites = bx.n_sites();
        let n_cols = bx.n_columns();
        debug_assert_eq!(cfg.n_columns(), n_cols);

        self.col_offset.clear();
        self.col_offset.push(0);
        for c in 0..n_cols {
            let last = *self.col_offset.last().unwrap();
            self.col_offset.push(last + cfg.column(c).len());
        }
        let n_rungs = cfg.len();
        self.west_pos.clear();
        self.west_pos.resize(n_rungs, 0);
        self.east_pos.clear();
        self.east_pos.resize(n_rungs, 0);

        // Merge the two columns meeting each line into its event list.
        self.seg_offset.clear();
        self.ev_time.clear();
        self.seg_site.clear();
        let mut n_seg = 0usize;
        for i in 0..n_sites {
            self.seg_offset.push(n_seg);
            let (west, east) = bx.columns_at_site(i);
            let wt: &[f64] = west.map_or(&[], |c| cfg.column(c));
            let et: &[f64] = east.map_or(&[], |c| cfg.column(c));
            let (mut p, mut q) = (0, 0);
            let mut pos = 0u32;
            while p < wt.len() || q < et.len() {
                let take_west = q >= et.len() || (p < wt.len() && wt[p] < et[q]);
                if take_west {
                    let c = west.unwrap();
                    self.east_pos[self.col_offset[c] + p] = pos;
                    self.ev_time.push(wt[p]);
                    p += 1;
                } else {
                    let c = east.unwrap();
                    self.west_pos[self.col_offset[c] + q] = pos;
                    self.ev_time.push(et[q]);
                    q += 1;
                }
                pos += 1;
            }
            let k = wt.len() + et.len();
            for _ in 0..=k {
                self.seg_site.push(i as u32);
            }
            n_seg += k + 1;
        }
        self.seg_offset.push(n_seg);

        let n_end = 2 * n_seg;
        self.partner.clear();
        self.partner.resize(n_end, UNSET);
        self.lat.clear();
        self.lat.resize(n_end, 0);
        self.wrap.clear();
        self.wrap.resize(n_end, 0);

        let wrap_col = if bx.bc().is_space_periodic() { Some(n_cols - 1) } else { None };
        for c in 0..n_cols {
            let (a, b) = bx.column_sites(c);
            let w: i8 = if Some(c) == wrap_col { 1 } else { 0 };
            for k in self.col_offset[c]..self.col_offset[c + 1] {
                let pa = self.west_pos[k] as usize;
                let pb = self.east_pos[k] as usize;
                let below_a = self.seg_offset[a] + pa;
                let below_b = self.seg_offset[b] + pb;
                self.link(2 * below_a + 1, 2 * below_b + 1, w);
                self.link(2 * (below_a + 1), 2 * (below_b + 1), w);
            }
        }
        if bx.is_capped() {
            for c in bx.cap_columns() {
                let (a, b) = bx.column_sites(c);
                let (fa, la) = (self.seg_offset[a], self.seg_offset[a + 1] - 1);
                let (fb, lb) = (self.seg_offset[b], self.seg_offset[b + 1] - 1);
                self.link(2 * la + 1, 2 * lb + 1, 0);
                self.link(2 * fa, 2 * fb, 0);
            }
        } else {
            for i in 0..n_sites {
                let (f, l) = (self.seg_offset[i], self.seg_offset[i + 1] - 1);
                self.partner[2 * l + 1] = (2 * f) as u32;
                self.partner[2 * f] = (2 * l + 1) as u32;
            }
        }
        debug_assert!(self.partner.iter().all(|&p| p != UNSET));

        self.trace(n_seg);
    }

    fn link(&mut self, west_end: usize, east_end: usize, wrap: i8) {
        self.partner[west_end] = east_end as u32;
        self.partner[east_end] = west_end as u32;
        self.lat[west_end] = 1;
        self.lat[east_end] = -1;
        self.wrap[west_end] = wrap;
        self.wrap[east_end] = -wrap;
    }

    fn trace(&mut self, n_seg: usize) {
        self.seg_loop.clear();
        self.seg_loop.resize(n_seg, UNSET);
        self.seg_dir.clear();
        self.seg_dir.resize(n_seg, 0);
        self.seg_tshift.clear();
        self.seg_tshift.resize(n_seg, 0);
        self.seg_xshift.clear();
        self.seg_xshift.resize(n_seg, 0);
        self.loops.clear();

        for start in 0..n_seg {
            if self.seg_loop[start] != UNSET {
                continue;
            }
            let id = self.loops.len() as u32;
            let (mut s, mut up) = (start, true);
            let (mut n_left, mut n_right) = (0i32, 0i32);
            let (mut tw, mut xw) = (0i32, 0i32);
            let mut len = 0u32;
            loop {
                self.seg_loop[s] = id;
                self.seg_dir[s] = if up { 1 } else { -1 };
                self.seg_tshift[s] = tw;
                self.seg_xshift[s] = xw;
                len += 1;
                let end = 2 * s + usize::from(up);
                let p = self.partner[end] as usize;
                let lat = self.lat[end];
                xw += self.wrap[end] as i32;
                let p_top = p & 1 == 1;
                let next = p >> 1;
                if up {
                    if p_top {
                        // Heading north, east is a right turn.
                        if lat > 0 { n_right += 1 } else { n_left += 1 }
                        up = false;
                    } else {
                        tw += 1;
                    }
                } else if !p_top {
                    if lat > 0 { n_left += 1 } else { n_right += 1 }
                    up = true;
                } else {
                    tw -= 1;
                }
                s = next;
                if s == start {
                    debug_assert!(up);
                    break;
                }
            }
            debug_assert_eq!((n_left - n_right) % 2, 0);
            self.loops.push(LoopInfo {
                turning: (n_left - n_right) / 2,
                winding: WindingFlags { time: tw, space: xw },
                len,
            });
        }
    }

    pub fn bx(&self) -> &SpaceTimeBox {
        &self.bx
    }

    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn loops(&self) -> &[LoopInfo] {
        &self.loops
    }

    pub fn n_segments(&self) -> usize {
        self.seg_loop.len()
    }

    /// Event times on line `i`, sorted.
    pub fn events(&self, i: usize) -> &[f64] {
        let lo = self.seg_offset[i] - i;
        let hi = self.seg_offset[i + 1] - i - 1;
        &self.ev_time[lo..hi]
    }

    /// Segment ids `first..last+1` of line `i`.
    pub fn site_segments(&self, i: usize) -> std::ops::Range<usize> {
        self.seg_offset[i]..self.seg_offset[i + 1]
    }

    pub fn segment_site(&self, s: usize) -> usize {
        self.seg_site[s] as usize
    }

    /// `(t_lo, t_hi)` of segment `s`.
    pub fn segment_bounds(&self, s: usize) -> (f64, f64) {
        let i = self.segment_site(s);
        let j = s - self.seg_offset[i];
        let ev = self.events(i);
        let lo = if j == 0 { self.bx.t_min() } else { ev[j - 1] };
        let hi = if j == ev.len() { self.bx.t_max() } else { ev[j] };
        (lo, hi)
    }

    pub fn segment_loop(&self, s: usize) -> usize {
        self.seg_loop[s] as usize
    }

    /// `+1` if the reference traversal of the loop runs up segment `s`.
    pub fn segment_dir(&self, s: usize) -> i8 {
        self.seg_dir[s]
    }

    /// Seam crossings `(time, space)` accumulated along the reference traversal
    /// before entering `s`.
    pub fn segment_shift(&self, s: usize) -> (i32, i32) {
        (self.seg_tshift[s], self.seg_xshift[s])
    }

    /// Segment of line `i` containing `t`, with an event time resolving to the
    /// segment starting there.
    pub fn segment_at_upper(&self, i: usize, t: f64) -> usize {
        let j = self.events(i).partition_point(|&e| e <= t);
        self.seg_offset[i] + j
    }

    /// Segment of line `i` containing `t`; fails exactly at an event time.
    pub fn segment_at_index(&self, i: usize, t: f64) -> Result<usize> {
        if !self.bx.contains_time(t) {
            return Err(Error::OutOfRange(format!("time {t} outside box")));
        }
        let ev = self.events(i);
        let j = ev.partition_point(|&e| e <= t);
        if j > 0 && ev[j - 1] == t {
            return Err(Error::PointOnRung { site: self.bx.site(i), time: t });
        }
        Ok(self.seg_offset[i] + j)
    }

    pub fn segment_at(&self, u: i64, t: f64) -> Result<usize> {
        let i = self.bx.site_index(u)?;
        self.segment_at_index(i, t)
    }

    pub fn loop_at(&self, u: i64, t: f64) -> Result<usize> {
        Ok(self.segment_loop(self.segment_at(u, t)?))
    }

    pub fn same_loop(&self, p: (i64, f64), q: (i64, f64)) -> Result<bool> {
        Ok(self.loop_at(p.0, p.1)? == self.loop_at(q.0, q.1)?)
    }

    /// Change in loop count if `r` were added: `+1` when its endpoints already
    /// share a loop (split), `-1` otherwise (merge).
    pub fn delta_n_if_insert(&self, r: Rung) -> Result<i32> {
        let (a, b) = self.rung_sites(r)?;
        let sa = self.segment_at_index(a, r.time)?;
        let sb = self.segment_at_index(b, r.time)?;
        Ok(if self.seg_loop[sa] == self.seg_loop[sb] { 1 } else { -1 })
    }

    /// Change in loop count if the existing rung `r` were removed: `+1` when
    /// the strands just below and above it on its west line share a loop.
    pub fn delta_n_if_remove(&self, r: Rung) -> Result<i32> {
        let (a, _) = self.rung_sites(r)?;
        let ev = self.events(a);
        let pa = ev
            .binary_search_by(|x| x.total_cmp(&r.time))
            .map_err(|_| Error::InvalidConfiguration(format!("no rung at {r:?}")))?;
        let below = self.seg_offset[a] + pa;
        Ok(if self.seg_loop[below] == self.seg_loop[below + 1] { 1 } else { -1 })
    }

    fn rung_sites(&self, r: Rung) -> Result<(usize, usize)> {
        if r.column >= self.bx.n_columns() {
            return Err(Error::IndexOutOfRange(format!("column {}", r.column)));
        }
        Ok(self.bx.column_sites(r.column))
    }

    pub fn rung_segments(&self) -> impl Iterator<Item = RungSegments> + '_ {
        (0..self.bx.n_columns()).flat_map(move |c| self.column_rung_segments(c))
    }

    /// Rungs of column `c` in increasing time.
    pub fn column_rung_segments(&self, c: usize) -> impl Iterator<Item = RungSegments> + '_ {
        let (a, b) = self.bx.column_sites(c);
        (self.col_offset[c]..self.col_offset[c + 1]).map(move |k| {
            let pa = self.west_pos[k] as usize;
            let pb = self.east_pos[k] as usize;
            let wa = self.seg_offset[a] + pa;
            let eb = self.seg_offset[b] + pb;
            RungSegments {
                column: c,
                time: self.events(a)[pa],
                west_below: wa,
                west_above: wa + 1,
                east_below: eb,
                east_above: eb + 1,
            }
        })
    }

    /// For each cap column: `(west_first, west_last, east_first, east_last)`.
    pub fn cap_segments(&self) -> Vec<(usize, usize, usize, usize)> {
        self.bx
            .cap_columns()
            .into_iter()
            .map(|c| {
                let (a, b) = self.bx.column_sites(c);
                (
                    self.seg_offset[a],
                    self.seg_offset[a + 1] - 1,
                    self.seg_offset[b],
                    self.seg_offset[b + 1] - 1,
                )
            })
            .collect()
    }

    pub fn turning_data(&self, loop_id: usize) -> Result<(i32, WindingFlags)> {
        let info = self
            .loops
            .get(loop_id)
            .ok_or_else(|| Error::IndexOutOfRange(format!("loop {loop_id}")))?;
        Ok((info.turning, info.winding))
    }

    /// Number of non-winding loops with non-zero winding number around the
    /// dual point `(x, t)`, `x` a half-integer.
    ///
    /// Counted by signed crossings of the ray `{(y, t) : y > x}`; on periodic
    /// boxes every lift of the loop to the covering plane is tried.
    pub fn encircling_count(&self, x: f64, t: f64) -> Result<usize> {
        if (x - x.floor() - 0.5).abs() > 1e-9 {
            return Err(Error::OutOfRange(format!("x = {x} is not a dual coordinate")));
        }
        if !self.bx.contains_time(t) {
            return Err(Error::OutOfRange(format!("time {t} outside box")));
        }
        let period = self.bx.n_sites() as i64;
        // (loop, time shift, lifted site, direction)
        let mut hits: Vec<(usize, i32, i64, i8)> = Vec::new();
        for i in 0..self.bx.n_sites() {
            let s = self.segment_at_upper(i, t);
            let l = self.segment_loop(s);
            if self.loops[l].winding.winds() {
                continue;
            }
            let (ts, xs) = self.segment_shift(s);
            hits.push((l, ts, self.bx.site(i) + period * xs as i64, self.seg_dir[s]));
        }
        hits.sort_by_key(|h| (h.0, h.1));
        let mut count = 0;
        let mut k = 0;
        while k < hits.len() {
            let l = hits[k].0;
            let mut found = false;
            let mut g = k;
            while g < hits.len() && hits[g].0 == l {
                let mut h = g;
                while h < hits.len() && hits[h].0 == l && hits[h].1 == hits[g].1 {
                    h += 1;
                }
                let group = &hits[g..h];
                let (lo, hi) = group.iter().fold((i64::MAX, i64::MIN), |(a, b), x| (a.min(x.2), b.max(x.2)));
                let m_lo = (x - hi as f64).div_euclid(period as f64) as i64 - 1;
                let m_hi = (x - lo as f64).div_euclid(period as f64) as i64 + 1;
                let shifts = if self.bx.bc().is_space_periodic() { m_lo..=m_hi } else { 0..=0 };
                for m in shifts {
                    let w: i32 = group
                        .iter()
                        .filter(|h| (h.2 + m * period) as f64 > x)
                        .map(|h| h.3 as i32)
                        .sum();
                    if w != 0 {
                        found = true;
                    }
                }
                g = h;
            }
            if found {
                count += 1;
            }
            k = g;
        }
        Ok(count)
    }

    /// One line per segment: `loopId site t_lo t_hi`, in segment order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for s in 0..self.n_segments() {
            let (lo, hi) = self.segment_bounds(s);
            let site = self.bx.site(self.segment_site(s));
            let _ = writeln!(out, "{} {} {} {}", self.seg_loop[s], site, lo, hi);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BoundaryCondition::{self, *};

    fn bx(l: usize, bc: BoundaryCondition) -> SpaceTimeBox {
        SpaceTimeBox::new(l, 2.0, bc).unwrap()
    }

    fn cfg(b: &SpaceTimeBox, rungs: &[(i64, f64)]) -> RungConfiguration {
        RungConfiguration::from_rungs(
            b,
            rungs.iter().map(|&(u, t)| Rung::new(b.column_of_edge(u).unwrap(), t)),
        )
        .unwrap()
    }

    #[test]
    fn empty_capped_pairs() {
        let b = bx(2, CappedAlternating);
        let d = decompose(&b, &cfg(&b, &[]));
        assert_eq!(d.loop_count(), 2);
        assert!(d.same_loop((-1, 0.0), (0, 0.0)).unwrap());
        assert!(!d.same_loop((0, 0.0), (1, 0.0)).unwrap());
        for l in d.loops() {
            assert_eq!(l.turning.abs(), 1);
            assert!(!l.winding.winds());
            assert_eq!(l.len, 2);
        }
    }

    #[test]
    fn empty_periodic_lines_wind() {
        let b = bx(2, PeriodicTime);
        let d = decompose(&b, &cfg(&b, &[]));
        assert_eq!(d.loop_count(), 4);
        for l in d.loops() {
            assert_eq!(l.turning, 0);
            assert_eq!(l.winding.time.abs(), 1);
        }
        assert_eq!(d.encircling_count(-0.5, 0.0).unwrap(), 0);
    }

    #[test]
    fn single_rung_merges() {
        let b = bx(2, CappedAlternating);
        let d = decompose(&b, &cfg(&b, &[(0, 0.3)]));
        assert_eq!(d.loop_count(), 1);
        assert!(d.same_loop((0, 0.0), (1, 0.0)).unwrap());
        assert_eq!(d.loops()[0].turning.abs(), 1);
        assert!(matches!(d.same_loop((0, 0.3), (1, 0.0)), Err(Error::PointOnRung { .. })));
    }

    #[test]
    fn delta_n_examples() {
        let b = bx(2, CappedAlternating);
        let c = b.column_of_edge(0).unwrap();
        let empty = decompose(&b, &cfg(&b, &[]));
        assert_eq!(empty.delta_n_if_insert(Rung::new(c, 0.0)).unwrap(), -1);
        let one = decompose(&b, &cfg(&b, &[(0, 0.0)]));
        assert_eq!(one.delta_n_if_insert(Rung::new(c, 0.5)).unwrap(), 1);
        let cap = b.column_of_edge(-1).unwrap();
        assert_eq!(empty.delta_n_if_insert(Rung::new(cap, 0.0)).unwrap(), 1);
        assert_eq!(one.delta_n_if_remove(Rung::new(c, 0.0)).unwrap(), 1);
    }

    #[test]
    fn capped_orientation_calibration() {
        // The right-most line of a counterclockwise loop runs upward.
        let b = bx(2, CappedAlternating);
        let d = decompose(&b, &cfg(&b, &[]));
        let s = d.segment_at(2, 0.0).unwrap();
        let l = d.segment_loop(s);
        let ccw = d.segment_dir(s) as i32 * d.loops()[l].turning;
        assert_eq!(ccw, 1);
        let s = d.segment_at(-1, 0.0).unwrap();
        let l = d.segment_loop(s);
        assert_eq!(d.segment_dir(s) as i32 * d.loops()[l].turning, -1);
    }

    #[test]
    fn encircling_empty_capped() {
        let b = bx(2, CappedAlternating);
        let d = decompose(&b, &cfg(&b, &[]));
        assert_eq!(d.encircling_count(-0.5, 0.0).unwrap(), 1);
        assert_eq!(d.encircling_count(0.5, 0.0).unwrap(), 0);
    }

    #[test]
    fn encircling_nested_fixture() {
        // Two rungs on (-1,0) carve a rectangle around (-1/2, 0) inside the cap loop.
        let b = bx(2, CappedAlternating);
        let d = decompose(&b, &cfg(&b, &[(-1, -0.5), (-1, 0.5)]));
        assert_eq!(d.loop_count(), 4);
        assert_eq!(d.encircling_count(-0.5, 0.0).unwrap(), 1);
        assert_eq!(d.encircling_count(-0.5, 0.9).unwrap(), 1);
    }

    #[test]
    fn torus_single_rung() {
        let b = bx(1, PeriodicBoth);
        let d = decompose(&b, &cfg(&b, &[(0, 0.1)]));
        assert_eq!(d.loop_count(), 1);
        let d = decompose(&b, &cfg(&b, &[(0, 0.1), (1, 0.6)]));
        assert_eq!(d.loop_count(), 2);
        for l in d.loops() {
            assert_eq!(l.turning, 0);
        }
    }

    #[test]
    fn dump_format() {
        let b = bx(1, CappedAlternating);
        let d = decompose(&b, &cfg(&b, &[(0, 0.5)]));
        let text = d.dump();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "0 0 -1 0.5");
        assert!(lines.iter().all(|l| l.split(' ').count() == 4));
    }

    #[test]
    fn rebuild_reuses_buffers() {
        let b = bx(3, PeriodicTime);
        let c1 = cfg(&b, &[(0, 0.1), (1, -0.4), (-1, 0.7)]);
        let c2 = cfg(&b, &[(2, 0.2)]);
        let mut d = decompose(&b, &c1);
        d.rebuild(&c2);
        let fresh = decompose(&b, &c2);
        assert_eq!(d.dump(), fresh.dump());
    }
}
