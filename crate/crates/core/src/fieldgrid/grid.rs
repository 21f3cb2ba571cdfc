use serde::{Deserialize, Serialize};

use crate::algebra::BasisUnit;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    /// The polar unit pointing along this axis.
    pub const fn unit(self) -> BasisUnit {
        BasisUnit::POLAR[self as usize]
    }
}

/// A periodic rectangular lattice. Site `(ix, iy, iz)` sits at `origin + (ix·hx, iy·hy, iz·hz)`
/// and data are stored z-fastest: `idx = (ix·ny + iy)·nz + iz`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid3 {
    pub n: [usize; 3],
    pub h: [f64; 3],
    pub origin: [f64; 3],
}

impl Grid3 {
    pub const MIN_POINTS: usize = 4;

    pub fn new(n: [usize; 3], h: [f64; 3], origin: [f64; 3]) -> Result<Self> {
        if let Some(a) = n.iter().position(|&m| m < Self::MIN_POINTS) {
            return Err(Error::InvalidGrid(format!(
                "axis {a} has {} points, need at least {}",
                n[a],
                Self::MIN_POINTS
            )));
        }
        if let Some(a) = h.iter().position(|&s| !(s > 0.0 && s.is_finite())) {
            return Err(Error::InvalidGrid(format!(
                "axis {a} spacing {} is not positive",
                h[a]
            )));
        }
        if origin.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidGrid("origin is not finite".into()));
        }
        Ok(Grid3 { n, h, origin })
    }

    /// `n³` sites covering a periodic cube of side `length` starting at the origin.
    pub fn cube(n: usize, length: f64) -> Result<Self> {
        Grid3::new([n; 3], [length / n as f64; 3], [0.0; 3])
    }

    /// A periodic box of `n` points with side lengths `lengths`, starting at the origin.
    pub fn periodic_box(n: [usize; 3], lengths: [f64; 3]) -> Result<Self> {
        Grid3::new(
            n,
            std::array::from_fn(|a| lengths[a] / n[a] as f64),
            [0.0; 3],
        )
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Periodic extent along each axis.
    pub fn lengths(&self) -> [f64; 3] {
        std::array::from_fn(|a| self.n[a] as f64 * self.h[a])
    }

    /// `Σ 1/h`, the bound on a centred first difference per unit of the field.
    pub fn inverse_spacing_sum(&self) -> f64 {
        self.h.iter().map(|h| 1.0 / h).sum()
    }

    pub fn cell_volume(&self) -> f64 {
        self.h[0] * self.h[1] * self.h[2]
    }

    #[inline]
    pub fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        (ix * self.n[1] + iy) * self.n[2] + iz
    }

    #[inline]
    pub fn coords(&self, idx: usize) -> [usize; 3] {
        let iz = idx % self.n[2];
        let rest = idx / self.n[2];
        [rest / self.n[1], rest % self.n[1], iz]
    }

    #[inline]
    pub fn position(&self, idx: usize) -> [f64; 3] {
        let c = self.coords(idx);
        std::array::from_fn(|a| self.origin[a] + c[a] as f64 * self.h[a])
    }

    /// Index stride of one step along `axis`.
    #[inline]
    pub fn stride(&self, axis: Axis) -> usize {
        match axis {
            Axis::X => self.n[1] * self.n[2],
            Axis::Y => self.n[2],
            Axis::Z => 1,
        }
    }

    /// Site reached from `idx` by `offset` steps along `axis`, wrapping periodically.
    pub fn neighbor(&self, idx: usize, axis: Axis, offset: isize) -> usize {
        let a = axis.index();
        let c = self.coords(idx);
        let m = self.n[a] as isize;
        let moved = (c[a] as isize + offset).rem_euclid(m) as usize;
        let stride = self.stride(axis);
        idx - c[a] * stride + moved * stride
    }

    /// Whether the site is at least `band` points away from both ends of every axis, so that
    /// stencils of reach `band` never wrap.
    pub fn is_interior(&self, idx: usize, band: usize) -> bool {
        let c = self.coords(idx);
        (0..3).all(|a| c[a] >= band && c[a] + band < self.n[a])
    }

    pub fn same_shape(&self, other: &Grid3) -> bool {
        self == other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_or_degenerate_grids() {
        assert!(Grid3::new([3, 8, 8], [1.0; 3], [0.0; 3]).is_err());
        assert!(Grid3::new([4, 4, 4], [1.0, 0.0, 1.0], [0.0; 3]).is_err());
        assert!(Grid3::new([4, 4, 4], [1.0, f64::NAN, 1.0], [0.0; 3]).is_err());
        assert!(Grid3::new([4, 5, 6], [0.5, 1.0, 2.0], [1.0, 0.0, -1.0]).is_ok());
    }

    #[test]
    fn indexing_is_z_fastest_and_invertible() {
        let g = Grid3::new([4, 5, 6], [1.0; 3], [0.0; 3]).unwrap();
        assert_eq!(g.index(0, 0, 1), 1);
        assert_eq!(g.index(0, 1, 0), 6);
        assert_eq!(g.index(1, 0, 0), 30);
        for idx in 0..g.len() {
            let [x, y, z] = g.coords(idx);
            assert_eq!(g.index(x, y, z), idx);
        }
    }

    #[test]
    fn neighbors_wrap() {
        let g = Grid3::new([4, 5, 6], [1.0; 3], [0.0; 3]).unwrap();
        let idx = g.index(0, 4, 5);
        assert_eq!(g.neighbor(idx, Axis::X, -1), g.index(3, 4, 5));
        assert_eq!(g.neighbor(idx, Axis::Y, 1), g.index(0, 0, 5));
        assert_eq!(g.neighbor(idx, Axis::Z, 2), g.index(0, 4, 1));
        assert!(!g.is_interior(idx, 1));
        assert!(g.is_interior(g.index(1, 1, 1), 1));
        assert!(!g.is_interior(g.index(1, 1, 1), 2));
    }

    #[test]
    fn positions_use_origin_and_spacing() {
        let g = Grid3::new([4, 4, 4], [0.5, 1.0, 2.0], [1.0, 2.0, 3.0]).unwrap();
        assert_eq!(g.position(g.index(1, 2, 3)), [1.5, 4.0, 9.0]);
        assert_eq!(g.lengths(), [2.0, 4.0, 8.0]);
    }
}
