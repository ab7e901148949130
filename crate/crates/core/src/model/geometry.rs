//! The space-time box `{-L+1..L} x [-beta/2, beta/2)` and its edge columns.
//!
//! Sites are addressed by index `i = u + L - 1` in `0..2L`. Column `c` joins
//! site indices `c` and `c+1`; in a space-periodic box column `2L-1` joins the
//! last site to the first.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::params::{BoundaryCondition, ModelParams};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ColumnType {
    A,
    B,
}

impl ColumnType {
    pub fn other(self) -> ColumnType {
        match self {
            ColumnType::A => ColumnType::B,
            ColumnType::B => ColumnType::A,
        }
    }

    /// Type of the strip whose left site is `u`.
    pub fn of_left_site(u: i64) -> ColumnType {
        if u.rem_euclid(2) == 0 {
            ColumnType::A
        } else {
            ColumnType::B
        }
    }
}

impl fmt::Display for ColumnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnType::A => f.write_str("A"),
            ColumnType::B => f.write_str("B"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimeBox {
    l: usize,
    beta: f64,
    bc: BoundaryCondition,
}

impl SpaceTimeBox {
    pub fn new(l: usize, beta: f64, bc: BoundaryCondition) -> Result<Self> {
        if l < 1 {
            return Err(Error::OutOfRange("L must be at least 1".into()));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::OutOfRange(format!("beta = {beta} must be positive")));
        }
        Ok(SpaceTimeBox { l, beta, bc })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn bc(&self) -> BoundaryCondition {
        self.bc
    }

    pub fn n_sites(&self) -> usize {
        2 * self.l
    }

    pub fn n_columns(&self) -> usize {
        if self.bc.is_space_periodic() {
            2 * self.l
        } else {
            2 * self.l - 1
        }
    }

    pub fn t_min(&self) -> f64 {
        -self.beta / 2.0
    }

    pub fn t_max(&self) -> f64 {
        self.beta / 2.0
    }

    /// Total Poisson intensity, `#columns * beta`.
    pub fn volume(&self) -> f64 {
        self.n_columns() as f64 * self.beta
    }

    pub fn contains_time(&self, t: f64) -> bool {
        t >= self.t_min() && t < self.t_max()
    }

    pub fn site(&self, index: usize) -> i64 {
        index as i64 - self.l as i64 + 1
    }

    pub fn site_index(&self, u: i64) -> Result<usize> {
        let i = u + self.l as i64 - 1;
        if i < 0 || i >= self.n_sites() as i64 {
            return Err(Error::IndexOutOfRange(format!(
                "site {u} outside {}..={}",
                -(self.l as i64) + 1,
                self.l
            )));
        }
        Ok(i as usize)
    }

    fn check_column(&self, c: usize) -> Result<()> {
        if c >= self.n_columns() {
            return Err(Error::IndexOutOfRange(format!(
                "column {c} outside 0..{}",
                self.n_columns()
            )));
        }
        Ok(())
    }

    /// Site indices `(west, east)` joined by column `c`.
    pub fn column_sites(&self, c: usize) -> (usize, usize) {
        (c, (c + 1) % self.n_sites())
    }

    /// The site `u` of the column `(u, u+1)`.
    pub fn column_left_site(&self, c: usize) -> i64 {
        self.site(c)
    }

    /// Column index of the edge `(u, u+1)`.
    pub fn column_of_edge(&self, u: i64) -> Result<usize> {
        let c = u + self.l as i64 - 1;
        if c < 0 || c >= self.n_columns() as i64 {
            return Err(Error::IndexOutOfRange(format!("edge ({u}, {}) not in box", u + 1)));
        }
        Ok(c as usize)
    }

    pub fn column_type(&self, c: usize) -> Result<ColumnType> {
        self.check_column(c)?;
        Ok(ColumnType::of_left_site(self.column_left_site(c)))
    }

    /// Columns whose two sites share a site with `c`, excluding `c` itself.
    pub fn adjacent_columns(&self, c: usize) -> Vec<usize> {
        let n = self.n_columns();
        let mut out = Vec::with_capacity(2);
        if self.bc.is_space_periodic() {
            let left = (c + n - 1) % n;
            let right = (c + 1) % n;
            for x in [left, right] {
                if x != c && !out.contains(&x) {
                    out.push(x);
                }
            }
        } else {
            if c > 0 {
                out.push(c - 1);
            }
            if c + 1 < n {
                out.push(c + 1);
            }
        }
        out
    }

    /// Columns `(west_of_site, east_of_site)` meeting site index `i`.
    pub fn columns_at_site(&self, i: usize) -> (Option<usize>, Option<usize>) {
        let n = self.n_sites();
        if self.bc.is_space_periodic() {
            (Some((i + n - 1) % n), Some(i))
        } else {
            let west = if i > 0 { Some(i - 1) } else { None };
            let east = if i + 1 < n { Some(i) } else { None };
            (west, east)
        }
    }

    pub fn is_capped(&self) -> bool {
        matches!(self.bc, BoundaryCondition::CappedAlternating)
    }

    /// Whether column `c` carries caps at `t = ±beta/2`.
    pub fn is_cap_column(&self, c: usize) -> bool {
        self.is_capped() && c % 2 == 0 && c < self.n_columns()
    }

    pub fn cap_columns(&self) -> Vec<usize> {
        if self.is_capped() {
            (0..self.n_columns()).step_by(2).collect()
        } else {
            Vec::new()
        }
    }

    /// Type of the strips outside the box, `(-inf, -L+1)` and `(L, inf)`.
    pub fn exterior_type(&self) -> ColumnType {
        ColumnType::of_left_site(self.l as i64)
    }

    /// The type wired through the complement: A for even L, B for odd L.
    pub fn wired(&self) -> Option<ColumnType> {
        if self.is_capped() {
            Some(self.exterior_type())
        } else {
            None
        }
    }
}

pub fn make_box(params: &ModelParams) -> Result<SpaceTimeBox> {
    SpaceTimeBox::new(params.l, params.beta, params.bc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use BoundaryCondition::*;

    #[test]
    fn l2_capped_layout() {
        let b = SpaceTimeBox::new(2, 1.0, CappedAlternating).unwrap();
        let sites: Vec<i64> = (0..b.n_sites()).map(|i| b.site(i)).collect();
        assert_eq!(sites, vec![-1, 0, 1, 2]);
        assert_eq!(b.n_columns(), 3);
        let caps: Vec<i64> = b.cap_columns().iter().map(|&c| b.column_left_site(c)).collect();
        assert_eq!(caps, vec![-1, 1]);
        assert_eq!(b.wired(), Some(ColumnType::A));
        for c in b.cap_columns() {
            assert_eq!(b.column_type(c).unwrap(), ColumnType::B);
        }
    }

    #[test]
    fn l3_caps_are_a_type() {
        let b = SpaceTimeBox::new(3, 1.0, CappedAlternating).unwrap();
        let caps: Vec<i64> = b.cap_columns().iter().map(|&c| b.column_left_site(c)).collect();
        assert_eq!(caps, vec![-2, 0, 2]);
        for c in b.cap_columns() {
            assert_eq!(b.column_type(c).unwrap(), ColumnType::A);
        }
        assert_eq!(b.wired(), Some(ColumnType::B));
    }

    #[test]
    fn torus_has_no_caps() {
        let b = SpaceTimeBox::new(2, 1.0, PeriodicBoth).unwrap();
        assert_eq!(b.n_columns(), 4);
        assert!(b.cap_columns().is_empty());
        assert_eq!(b.column_sites(3), (3, 0));
        assert_eq!(b.wired(), None);
    }

    #[test]
    fn column_types() {
        let b = SpaceTimeBox::new(3, 1.0, CappedAlternating).unwrap();
        let ty = |u| b.column_type(b.column_of_edge(u).unwrap()).unwrap();
        assert_eq!(ty(0), ColumnType::A);
        assert_eq!(ty(-1), ColumnType::B);
        assert_eq!(ty(2), ColumnType::A);
        assert!(matches!(b.column_type(5), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn adjacency() {
        let b = SpaceTimeBox::new(1, 1.0, PeriodicBoth).unwrap();
        assert_eq!(b.adjacent_columns(0), vec![1]);
        let b = SpaceTimeBox::new(2, 1.0, PeriodicTime).unwrap();
        assert_eq!(b.adjacent_columns(0), vec![1]);
        assert_eq!(b.adjacent_columns(1), vec![0, 2]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn caps_cover_each_site_once(l in 1usize..40) {
                let b = SpaceTimeBox::new(l, 1.0, CappedAlternating).unwrap();
                let caps = b.cap_columns();
                prop_assert_eq!(caps.len(), l);
                let mut hit = vec![0u32; b.n_sites()];
                for c in caps {
                    let (w, e) = b.column_sites(c);
                    hit[w] += 1;
                    hit[e] += 1;
                }
                prop_assert!(hit.iter().all(|&h| h == 1));
            }

            #[test]
            fn types_alternate(l in 1usize..40, periodic in any::<bool>()) {
                let bc = if periodic { PeriodicBoth } else { CappedAlternating };
                let b = SpaceTimeBox::new(l, 1.0, bc).unwrap();
                for c in 1..b.n_columns() {
                    prop_assert_ne!(b.column_type(c).unwrap(), b.column_type(c - 1).unwrap());
                }
                if periodic {
                    let last = b.n_columns() - 1;
                    prop_assert_ne!(b.column_type(last).unwrap(), b.column_type(0).unwrap());
                }
            }
        }
    }
}
