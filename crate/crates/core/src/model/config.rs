//! Rung configurations: finite point sets on the edge columns.

use serde::{Deserialize, Serialize};

use super::geometry::SpaceTimeBox;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rung {
    pub column: usize,
    pub time: f64,
}

impl Rung {
    pub fn new(column: usize, time: f64) -> Self {
        Rung { column, time }
    }
}

/// Per-column strictly increasing rung times.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RungConfiguration {
    columns: Vec<Vec<f64>>,
    count: usize,
}

impl RungConfiguration {
    pub fn empty(bx: &SpaceTimeBox) -> Self {
        RungConfiguration { columns: vec![Vec::new(); bx.n_columns()], count: 0 }
    }

    pub fn from_rungs<I: IntoIterator<Item = Rung>>(bx: &SpaceTimeBox, rungs: I) -> Result<Self> {
        let mut cfg = Self::empty(bx);
        for r in rungs {
            cfg.insert(bx, r)?;
        }
        Ok(cfg)
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn n_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &[f64] {
        &self.columns[c]
    }

    pub fn iter(&self) -> impl Iterator<Item = Rung> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, ts)| ts.iter().map(move |&t| Rung::new(c, t)))
    }

    /// The `k`-th rung in column-major order.
    pub fn nth(&self, mut k: usize) -> Option<Rung> {
        for (c, ts) in self.columns.iter().enumerate() {
            if k < ts.len() {
                return Some(Rung::new(c, ts[k]));
            }
            k -= ts.len();
        }
        None
    }

    pub fn contains(&self, r: Rung) -> bool {
        self.columns
            .get(r.column)
            .is_some_and(|ts| ts.binary_search_by(|x| x.total_cmp(&r.time)).is_ok())
    }

    /// Checks that `r` could be inserted: inside the box and not sharing its
    /// time with a rung on the same column or on a column sharing a site.
    pub fn check_insert(&self, bx: &SpaceTimeBox, r: Rung) -> Result<()> {
        if r.column >= self.columns.len() || self.columns.len() != bx.n_columns() {
            return Err(Error::InvalidConfiguration(format!("column {} not in box", r.column)));
        }
        if !bx.contains_time(r.time) {
            return Err(Error::InvalidConfiguration(format!(
                "time {} outside [{}, {})",
                r.time,
                bx.t_min(),
                bx.t_max()
            )));
        }
        let hit = |c: usize| self.columns[c].binary_search_by(|x| x.total_cmp(&r.time)).is_ok();
        if hit(r.column) || bx.adjacent_columns(r.column).into_iter().any(hit) {
            return Err(Error::InvalidConfiguration(format!(
                "time {} collides near column {}",
                r.time, r.column
            )));
        }
        Ok(())
    }

    pub fn insert(&mut self, bx: &SpaceTimeBox, r: Rung) -> Result<()> {
        self.check_insert(bx, r)?;
        let ts = &mut self.columns[r.column];
        let pos = ts.partition_point(|&x| x < r.time);
        ts.insert(pos, r.time);
        self.count += 1;
        Ok(())
    }

    pub fn remove(&mut self, r: Rung) -> bool {
        let Some(ts) = self.columns.get_mut(r.column) else {
            return false;
        };
        match ts.binary_search_by(|x| x.total_cmp(&r.time)) {
            Ok(pos) => {
                ts.remove(pos);
                self.count -= 1;
                true
            }
            Err(_) => false,
        }
    }

    /// Validates the invariants against a box.
    pub fn validate(&self, bx: &SpaceTimeBox) -> Result<()> {
        if self.columns.len() != bx.n_columns() {
            return Err(Error::InvalidConfiguration("column count does not match box".into()));
        }
        let mut total = 0;
        for ts in &self.columns {
            total += ts.len();
            if ts.windows(2).any(|w| !(w[0] < w[1])) {
                return Err(Error::InvalidConfiguration("column times not increasing".into()));
            }
            if ts.iter().any(|&t| !bx.contains_time(t)) {
                return Err(Error::InvalidConfiguration("rung time outside box".into()));
            }
        }
        if total != self.count {
            return Err(Error::InvalidConfiguration("rung count out of sync".into()));
        }
        for c in 0..bx.n_columns() {
            for &t in &self.columns[c] {
                for a in bx.adjacent_columns(c) {
                    if self.columns[a].binary_search_by(|x| x.total_cmp(&t)).is_ok() {
                        return Err(Error::InvalidConfiguration(format!(
                            "simultaneous rungs on columns {c} and {a}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BoundaryCondition::*;

    #[test]
    fn insert_keeps_order() {
        let b = SpaceTimeBox::new(2, 2.0, CappedAlternating).unwrap();
        let mut cfg = RungConfiguration::empty(&b);
        for t in [0.5, -0.3, 0.9, 0.0] {
            cfg.insert(&b, Rung::new(1, t)).unwrap();
        }
        assert_eq!(cfg.column(1), &[-0.3, 0.0, 0.5, 0.9]);
        assert_eq!(cfg.len(), 4);
        assert_eq!(cfg.nth(2), Some(Rung::new(1, 0.5)));
        assert!(cfg.remove(Rung::new(1, 0.0)));
        assert!(!cfg.remove(Rung::new(1, 0.0)));
        assert_eq!(cfg.len(), 3);
        cfg.validate(&b).unwrap();
    }

    #[test]
    fn collisions_rejected() {
        let b = SpaceTimeBox::new(2, 2.0, CappedAlternating).unwrap();
        let mut cfg = RungConfiguration::empty(&b);
        cfg.insert(&b, Rung::new(1, 0.25)).unwrap();
        assert!(cfg.insert(&b, Rung::new(1, 0.25)).is_err());
        assert!(cfg.insert(&b, Rung::new(0, 0.25)).is_err());
        assert!(cfg.insert(&b, Rung::new(2, 0.25)).is_err());
        assert!(cfg.insert(&b, Rung::new(1, 1.0)).is_err());
        cfg.insert(&b, Rung::new(1, -1.0)).unwrap();
    }
}
