use std::ops::{Index, IndexMut};

use crate::algebra::{Complex, Octon};
use crate::{Error, Result};

use super::{Axis, Grid3};

/// Values a lattice can carry: a real vector space with a modulus per component.
pub trait FieldValue: Copy + Default + PartialEq + std::fmt::Debug {
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn scale(self, s: f64) -> Self;
    /// Sum of squared moduli of the components.
    fn norm_sqr(self) -> f64;
    /// Largest component modulus.
    fn max_abs(self) -> f64;
    fn is_finite(self) -> bool;
}

impl FieldValue for f64 {
    #[inline]
    fn add(self, other: Self) -> Self {
        self + other
    }
    #[inline]
    fn sub(self, other: Self) -> Self {
        self - other
    }
    #[inline]
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm_sqr(self) -> f64 {
        self * self
    }
    fn max_abs(self) -> f64 {
        self.abs()
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl FieldValue for Complex {
    #[inline]
    fn add(self, other: Self) -> Self {
        self + other
    }
    #[inline]
    fn sub(self, other: Self) -> Self {
        self - other
    }
    #[inline]
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm_sqr(self) -> f64 {
        Complex::norm_sqr(&self)
    }
    fn max_abs(self) -> f64 {
        self.norm()
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl FieldValue for [f64; 3] {
    #[inline]
    fn add(self, o: Self) -> Self {
        [self[0] + o[0], self[1] + o[1], self[2] + o[2]]
    }
    #[inline]
    fn sub(self, o: Self) -> Self {
        [self[0] - o[0], self[1] - o[1], self[2] - o[2]]
    }
    #[inline]
    fn scale(self, s: f64) -> Self {
        self.map(|x| x * s)
    }
    fn norm_sqr(self) -> f64 {
        self.iter().map(|x| x * x).sum()
    }
    fn max_abs(self) -> f64 {
        self.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
    fn is_finite(self) -> bool {
        self.iter().all(|x| x.is_finite())
    }
}

impl FieldValue for Octon {
    #[inline]
    fn add(self, other: Self) -> Self {
        self + other
    }
    #[inline]
    fn sub(self, other: Self) -> Self {
        self - other
    }
    #[inline]
    fn scale(self, s: f64) -> Self {
        self.scale_real(s)
    }
    fn norm_sqr(self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum()
    }
    fn max_abs(self) -> f64 {
        self.max_norm()
    }
    fn is_finite(self) -> bool {
        Octon::is_finite(&self)
    }
}

/// Values of type `T` at every site of a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Field<T> {
    grid: Grid3,
    data: Vec<T>,
}

pub type OctonField = Field<Octon>;
pub type ScalarField = Field<f64>;
pub type VectorField = Field<[f64; 3]>;

impl<T: FieldValue> Field<T> {
    pub fn new(grid: Grid3, data: Vec<T>) -> Result<Self> {
        if data.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "field has {} values for a grid of {} sites",
                data.len(),
                grid.len()
            )));
        }
        Ok(Field { grid, data })
    }

    pub fn zeros(grid: Grid3) -> Self {
        Field {
            grid,
            data: vec![T::default(); grid.len()],
        }
    }

    pub fn constant(grid: Grid3, value: T) -> Self {
        Field {
            grid,
            data: vec![value; grid.len()],
        }
    }

    /// Samples `f` at every site position.
    pub fn from_fn(grid: Grid3, mut f: impl FnMut([f64; 3]) -> T) -> Self {
        let data = (0..grid.len()).map(|idx| f(grid.position(idx))).collect();
        Field { grid, data }
    }

    #[inline]
    pub fn grid(&self) -> &Grid3 {
        &self.grid
    }

    #[inline]
    pub fn data(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn map<U: FieldValue>(&self, f: impl Fn(T) -> U) -> Field<U> {
        Field {
            grid: self.grid,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn zip_map<U: FieldValue, V: FieldValue>(
        &self,
        other: &Field<U>,
        f: impl Fn(T, U) -> V,
    ) -> Result<Field<V>> {
        self.check_grid(other, "zip_map")?;
        Ok(Field {
            grid: self.grid,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn check_grid<U>(&self, other: &Field<U>, what: &'static str) -> Result<()> {
        if self.grid.same_shape(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                left: what,
                right: "second operand",
            })
        }
    }

    pub fn add(&self, other: &Field<T>) -> Result<Field<T>> {
        self.zip_map(other, T::add)
    }

    pub fn sub(&self, other: &Field<T>) -> Result<Field<T>> {
        self.zip_map(other, T::sub)
    }

    pub fn scale(&self, s: f64) -> Field<T> {
        self.map(|x| x.scale(s))
    }

    /// `self + s·other`, in place.
    pub fn axpy(&mut self, s: f64, other: &Field<T>) -> Result<()> {
        self.check_grid(other, "axpy")?;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = a.add(b.scale(s));
        }
        Ok(())
    }

    /// Periodic roll: the output at site `x` is the input at `x − shift·h_axis`.
    pub fn shifted(&self, axis: Axis, shift: isize) -> Field<T> {
        let data = (0..self.grid.len())
            .map(|idx| self.data[self.grid.neighbor(idx, axis, -shift)])
            .collect();
        Field {
            grid: self.grid,
            data,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn max_abs_diff(&self, other: &Field<T>) -> Result<f64> {
        self.check_grid(other, "max_abs_diff")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a.sub(b).max_abs())
            .fold(0.0, f64::max))
    }
}

impl<T> Index<usize> for Field<T> {
    type Output = T;
    #[inline]
    fn index(&self, idx: usize) -> &T {
        &self.data[idx]
    }
}

impl<T> IndexMut<usize> for Field<T> {
    #[inline]
    fn index_mut(&mut self, idx: usize) -> &mut T {
        &mut self.data[idx]
    }
}

impl ScalarField {
    pub fn to_octon(&self, unit: crate::algebra::BasisUnit, coefficient: Complex) -> OctonField {
        self.map(|s| Octon::ZERO.with(unit, coefficient * s))
    }
}

impl VectorField {
    pub fn component(&self, a: usize) -> ScalarField {
        self.map(|v| v[a])
    }

    pub fn from_components(
        x: &ScalarField,
        y: &ScalarField,
        z: &ScalarField,
    ) -> Result<VectorField> {
        x.check_grid(y, "from_components")?;
        x.check_grid(z, "from_components")?;
        Ok(Field {
            grid: x.grid,
            data: (0..x.len()).map(|n| [x[n], y[n], z[n]]).collect(),
        })
    }

    /// Octon view `coefficient·(vx·i + vy·j + vz·k)`.
    pub fn to_polar_octon(&self, coefficient: Complex) -> OctonField {
        self.map(|v| Octon::polar(v.map(|x| coefficient * x)))
    }

    /// Octon view `coefficient·(vx·I + vy·J + vz·K)`.
    pub fn to_axial_octon(&self, coefficient: Complex) -> OctonField {
        self.map(|v| Octon::axial(v.map(|x| coefficient * x)))
    }
}

/// A field together with its first time derivative.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSlice<T> {
    pub value: Field<T>,
    pub d_dt: Field<T>,
}

impl<T: FieldValue> TimeSlice<T> {
    pub fn new(value: Field<T>, d_dt: Field<T>) -> Result<Self> {
        value.check_grid(&d_dt, "time slice")?;
        Ok(TimeSlice { value, d_dt })
    }

    /// A time-independent field.
    pub fn fixed(value: Field<T>) -> Self {
        let d_dt = Field::zeros(*value.grid());
        TimeSlice { value, d_dt }
    }

    pub fn grid(&self) -> &Grid3 {
        self.value.grid()
    }
}

/// A field together with its first and second time derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSlice2<T> {
    pub value: Field<T>,
    pub d_dt: Field<T>,
    pub d2_dt2: Field<T>,
}

impl<T: FieldValue> TimeSlice2<T> {
    pub fn new(value: Field<T>, d_dt: Field<T>, d2_dt2: Field<T>) -> Result<Self> {
        value.check_grid(&d_dt, "time slice")?;
        value.check_grid(&d2_dt2, "time slice")?;
        Ok(TimeSlice2 {
            value,
            d_dt,
            d2_dt2,
        })
    }

    pub fn fixed(value: Field<T>) -> Self {
        let grid = *value.grid();
        TimeSlice2 {
            value,
            d_dt: Field::zeros(grid),
            d2_dt2: Field::zeros(grid),
        }
    }

    pub fn first_order(&self) -> TimeSlice<T> {
        TimeSlice {
            value: self.value.clone(),
            d_dt: self.d_dt.clone(),
        }
    }

    /// The slice one derivative up: `(∂t f, ∂tt f)`.
    pub fn derivative(&self) -> TimeSlice<T> {
        TimeSlice {
            value: self.d_dt.clone(),
            d_dt: self.d2_dt2.clone(),
        }
    }

    pub fn grid(&self) -> &Grid3 {
        self.value.grid()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks_length() {
        let g = Grid3::cube(4, 1.0).unwrap();
        assert!(ScalarField::new(g, vec![0.0; 63]).is_err());
        assert!(ScalarField::new(g, vec![0.0; 64]).is_ok());
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let a = ScalarField::zeros(Grid3::cube(4, 1.0).unwrap());
        let b = ScalarField::zeros(Grid3::cube(4, 2.0).unwrap());
        assert!(matches!(a.add(&b), Err(Error::GridMismatch { .. })));
        assert!(TimeSlice::new(a, b).is_err());
    }

    #[test]
    fn shift_moves_values_forward() {
        let g = Grid3::cube(4, 4.0).unwrap();
        let f = ScalarField::from_fn(g, |p| p[0]);
        let s = f.shifted(Axis::X, 1);
        assert_eq!(s[g.index(1, 0, 0)], 0.0);
        assert_eq!(s[g.index(0, 2, 3)], 3.0);
    }
}
