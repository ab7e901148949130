//! A/B cluster decomposition.
//!
//! The strip over each edge column is cut into pieces at the column's own
//! rungs. A rung on column `c` also bridges the pieces of columns `c-1` and
//! `c+1` at its time, so rungs on A strips connect B strips and vice versa.

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::model::{ColumnType, RungConfiguration, SpaceTimeBox};

/// The nested box `{-l+1..l} x [-t/2, t/2]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NestedRegion {
    pub l: usize,
    pub t: f64,
}

impl NestedRegion {
    pub fn new(l: usize, t: f64) -> Self {
        NestedRegion { l, t }
    }

    pub fn check(&self, bx: &SpaceTimeBox) -> Result<()> {
        if self.l < 1 || self.l > bx.l() || !(self.t > 0.0) || self.t > bx.beta() {
            return Err(Error::BoxTooSmall(format!(
                "region (l = {}, t = {}) does not fit box (L = {}, beta = {})",
                self.l,
                self.t,
                bx.l(),
                bx.beta()
            )));
        }
        Ok(())
    }

    /// Whether the strip over `(u, u+1)` lies between the region's lines.
    pub fn contains_edge(&self, u: i64) -> bool {
        let l = self.l as i64;
        u >= -l + 1 && u <= l - 1
    }
}

#[derive(Clone, Debug)]
pub struct ClusterDecomposition {
    bx: SpaceTimeBox,
    times: Vec<Vec<f64>>,
    piece_offset: Vec<usize>,
    label: Vec<u32>,
    cluster_type: Vec<ColumnType>,
    touch: Vec<bool>,
    complement: Option<usize>,
    west: Option<usize>,
    east: Option<usize>,
    n_a: usize,
    n_b: usize,
}

pub fn ab_clusters(bx: &SpaceTimeBox, cfg: &RungConfiguration) -> ClusterDecomposition {
    let n_cols = bx.n_columns();
    let times: Vec<Vec<f64>> = (0..n_cols).map(|c| cfg.column(c).to_vec()).collect();
    let mut piece_offset = Vec::with_capacity(n_cols + 1);
    let mut n = 0;
    for ts in &times {
        piece_offset.push(n);
        n += ts.len() + 1;
    }
    piece_offset.push(n);
    let n_pieces = n;

    let (complement, west, east) = match bx.bc() {
        crate::model::BoundaryCondition::CappedAlternating => (Some(n), None, None),
        crate::model::BoundaryCondition::PeriodicTime => (None, Some(n), Some(n + 1)),
        crate::model::BoundaryCondition::PeriodicBoth => (None, None, None),
    };
    let n_nodes = n_pieces + [complement, west, east].iter().flatten().count();

    let mut node_type = Vec::with_capacity(n_nodes);
    for c in 0..n_cols {
        let ty = bx.column_type(c).unwrap();
        node_type.extend(std::iter::repeat_n(ty, times[c].len() + 1));
    }
    while node_type.len() < n_nodes {
        node_type.push(bx.exterior_type());
    }

    let piece = |c: usize, t: f64| piece_offset[c] + times[c].partition_point(|&x| x <= t);
    let strip = |c: i64, t: f64| -> usize {
        if bx.bc().is_space_periodic() {
            piece(c.rem_euclid(n_cols as i64) as usize, t)
        } else if c < 0 {
            complement.or(west).unwrap()
        } else if c >= n_cols as i64 {
            complement.or(east).unwrap()
        } else {
            piece(c as usize, t)
        }
    };

    let mut uf = UnionFind::<usize>::new(n_nodes);
    for c in 0..n_cols {
        for &t in &times[c] {
            uf.union(strip(c as i64 - 1, t), strip(c as i64 + 1, t));
        }
    }
    if let Some(comp) = complement {
        for c in 0..n_cols {
            if !bx.is_cap_column(c) {
                uf.union(comp, piece_offset[c]);
                uf.union(comp, piece_offset[c + 1] - 1);
            }
        }
    } else {
        for c in 0..n_cols {
            uf.union(piece_offset[c], piece_offset[c + 1] - 1);
        }
    }

    let mut label = vec![u32::MAX; n_nodes];
    let mut root_label = vec![u32::MAX; n_nodes];
    let mut cluster_type = Vec::new();
    let mut touch = Vec::new();
    for v in 0..n_nodes {
        let r = uf.find_mut(v);
        if root_label[r] == u32::MAX {
            root_label[r] = cluster_type.len() as u32;
            cluster_type.push(node_type[v]);
            touch.push(false);
        }
        label[v] = root_label[r];
    }
    for v in n_pieces..n_nodes {
        touch[label[v] as usize] = true;
    }
    if bx.is_capped() {
        for c in 0..n_cols {
            touch[label[piece_offset[c]] as usize] = true;
            touch[label[piece_offset[c + 1] - 1] as usize] = true;
        }
    }
    let n_a = cluster_type.iter().filter(|&&t| t == ColumnType::A).count();
    let n_b = cluster_type.len() - n_a;

    ClusterDecomposition {
        bx: *bx,
        times,
        piece_offset,
        label,
        cluster_type,
        touch,
        complement,
        west,
        east,
        n_a,
        n_b,
    }
}

impl ClusterDecomposition {
    pub fn n_clusters(&self) -> usize {
        self.cluster_type.len()
    }

    pub fn count(&self, ty: ColumnType) -> usize {
        match ty {
            ColumnType::A => self.n_a,
            ColumnType::B => self.n_b,
        }
    }

    pub fn cluster_type(&self, id: usize) -> ColumnType {
        self.cluster_type[id]
    }

    /// Whether the cluster reaches the box complement or the capped top/bottom.
    pub fn touches_boundary(&self, id: usize) -> bool {
        self.touch[id]
    }

    pub fn n_pieces(&self, c: usize) -> usize {
        self.times[c].len() + 1
    }

    fn node_at(&self, u: i64, t: f64) -> Result<usize> {
        let bx = &self.bx;
        if !bx.contains_time(t) {
            return Err(Error::OutOfRange(format!("time {t} outside box")));
        }
        let c = u + bx.l() as i64 - 1;
        let n_cols = bx.n_columns() as i64;
        let c = if bx.bc().is_space_periodic() { c.rem_euclid(n_cols) } else { c };
        if c < 0 {
            return self
                .complement
                .or(self.west)
                .ok_or_else(|| Error::IndexOutOfRange(format!("strip ({u}, {})", u + 1)));
        }
        if c >= n_cols {
            return self
                .complement
                .or(self.east)
                .ok_or_else(|| Error::IndexOutOfRange(format!("strip ({u}, {})", u + 1)));
        }
        let ts = &self.times[c as usize];
        let j = ts.partition_point(|&x| x <= t);
        if j > 0 && ts[j - 1] == t {
            return Err(Error::PointOnRung { site: u, time: t });
        }
        Ok(self.piece_offset[c as usize] + j)
    }

    /// Cluster of the dual point `(u + 1/2, t)`.
    pub fn cluster_at(&self, u: i64, t: f64) -> Result<usize> {
        Ok(self.label[self.node_at(u, t)?] as usize)
    }

    pub fn connected(&self, p: (i64, f64), q: (i64, f64)) -> Result<bool> {
        Ok(self.cluster_at(p.0, p.1)? == self.cluster_at(q.0, q.1)?)
    }

    /// Whether the cluster of `(u + 1/2, t)` leaves the nested region, i.e.
    /// contains a piece not strictly inside it.
    pub fn reaches_outside(&self, u: i64, t: f64, region: NestedRegion) -> Result<bool> {
        region.check(&self.bx)?;
        let target = self.cluster_at(u, t)?;
        if self.touch[target] {
            return Ok(true);
        }
        let half = region.t / 2.0;
        for c in 0..self.bx.n_columns() {
            let inside = region.contains_edge(self.bx.column_left_site(c));
            let ts = &self.times[c];
            for j in 0..=ts.len() {
                if self.label[self.piece_offset[c] + j] as usize != target {
                    continue;
                }
                if !inside {
                    return Ok(true);
                }
                let lo = if j == 0 { self.bx.t_min() } else { ts[j - 1] };
                let hi = if j == ts.len() { self.bx.t_max() } else { ts[j] };
                if lo <= -half || hi >= half {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// The A-cluster of `(1/2, 0)` reaches the boundary of the nested box.
    pub fn boundary_touch(&self, region: NestedRegion) -> Result<bool> {
        self.reaches_outside(0, 0.0, region)
    }
}

/// Clusters built from the rungs and strips strictly inside a nested region,
/// with no connections through its outside.
#[derive(Clone, Debug)]
pub struct RegionClusters {
    l_box: usize,
    region: NestedRegion,
    times: Vec<Vec<f64>>,
    offset: Vec<usize>,
    label: Vec<u32>,
}

impl RegionClusters {
    pub fn new(bx: &SpaceTimeBox, cfg: &RungConfiguration, region: NestedRegion) -> Result<Self> {
        region.check(bx)?;
        let l = region.l as i64;
        let half = region.t / 2.0;
        // Local strip k covers edge (k - l + 1, k - l + 2).
        let n_strips = (2 * l - 1) as usize;
        let global = |k: usize| bx.column_of_edge(k as i64 - l + 1).unwrap();
        let times: Vec<Vec<f64>> = (0..n_strips)
            .map(|k| cfg.column(global(k)).iter().copied().filter(|t| t.abs() <= half).collect())
            .collect();
        let mut offset = Vec::with_capacity(n_strips + 1);
        let mut n = 0;
        for ts in &times {
            offset.push(n);
            n += ts.len() + 1;
        }
        offset.push(n);
        let mut uf = UnionFind::<usize>::new(n);
        for k in 0..n_strips {
            if k == 0 || k + 1 == n_strips {
                continue;
            }
            for &t in &times[k] {
                let p = offset[k - 1] + times[k - 1].partition_point(|&x| x <= t);
                let q = offset[k + 1] + times[k + 1].partition_point(|&x| x <= t);
                uf.union(p, q);
            }
        }
        let label = (0..n).map(|v| uf.find_mut(v) as u32).collect();
        Ok(RegionClusters { l_box: bx.l(), region, times, offset, label })
    }

    fn node(&self, u: i64, t: f64) -> Result<usize> {
        if !self.region.contains_edge(u) || t.abs() > self.region.t / 2.0 {
            return Err(Error::OutOfRange(format!(
                "({} , {t}) outside region l = {} (box L = {})",
                u as f64 + 0.5,
                self.region.l,
                self.l_box
            )));
        }
        let k = (u + self.region.l as i64 - 1) as usize;
        let ts = &self.times[k];
        let j = ts.partition_point(|&x| x <= t);
        if j > 0 && ts[j - 1] == t {
            return Err(Error::PointOnRung { site: u, time: t });
        }
        Ok(self.offset[k] + j)
    }

    pub fn connected(&self, p: (i64, f64), q: (i64, f64)) -> Result<bool> {
        Ok(self.label[self.node(p.0, p.1)?] == self.label[self.node(q.0, q.1)?])
    }
}
