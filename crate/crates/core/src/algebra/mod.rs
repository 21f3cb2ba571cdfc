//! Octon arithmetic.
//!
//! Components are stored in the canonical basis order `1, i, j, k, E, I, J, K`:
//! scalar, polar vector (`i, j, k`), pseudoscalar `E`, axial vector (`I, J, K`).
//! Coefficients are always complex; `ξ` is the imaginary unit of the coefficient field.

mod matrix;
mod products;
mod table;
pub mod verify;

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use matrix::{
    basis_image_rank, from_matrix_pair, oracle_multiply, to_matrix_pair, Mat2, MatrixPair,
};
pub use products::{gibbs_correspondence_check, scalar_product, vector_product, VectorKind};
pub use table::{basis_product, Phase, ProductTable};

pub type Complex = num_complex::Complex64;

/// The imaginary unit of the coefficient field.
pub const XI: Complex = Complex::new(0.0, 1.0);

const ZERO: Complex = Complex::new(0.0, 0.0);

/// One of the eight basis units, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisUnit {
    One,
    PolarI,
    PolarJ,
    PolarK,
    Pseudo,
    AxialI,
    AxialJ,
    AxialK,
}

impl BasisUnit {
    pub const ALL: [BasisUnit; 8] = [
        BasisUnit::One,
        BasisUnit::PolarI,
        BasisUnit::PolarJ,
        BasisUnit::PolarK,
        BasisUnit::Pseudo,
        BasisUnit::AxialI,
        BasisUnit::AxialJ,
        BasisUnit::AxialK,
    ];

    pub const POLAR: [BasisUnit; 3] = [BasisUnit::PolarI, BasisUnit::PolarJ, BasisUnit::PolarK];
    pub const AXIAL: [BasisUnit; 3] = [BasisUnit::AxialI, BasisUnit::AxialJ, BasisUnit::AxialK];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn from_index(idx: usize) -> BasisUnit {
        Self::ALL[idx]
    }

    pub const fn grade(self) -> Grade {
        match self {
            BasisUnit::One => Grade::Scalar,
            BasisUnit::PolarI | BasisUnit::PolarJ | BasisUnit::PolarK => Grade::Vector,
            BasisUnit::Pseudo => Grade::Pseudoscalar,
            BasisUnit::AxialI | BasisUnit::AxialJ | BasisUnit::AxialK => Grade::Pseudovector,
        }
    }

    pub const fn symbol(self) -> &'static str {
        match self {
            BasisUnit::One => "1",
            BasisUnit::PolarI => "i",
            BasisUnit::PolarJ => "j",
            BasisUnit::PolarK => "k",
            BasisUnit::Pseudo => "E",
            BasisUnit::AxialI => "I",
            BasisUnit::AxialJ => "J",
            BasisUnit::AxialK => "K",
        }
    }
}

impl fmt::Display for BasisUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// The four grade subspaces, distinguished by their behaviour under spatial inversion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Grade {
    Scalar,
    Vector,
    Pseudoscalar,
    Pseudovector,
}

impl Grade {
    pub const ALL: [Grade; 4] = [
        Grade::Scalar,
        Grade::Vector,
        Grade::Pseudoscalar,
        Grade::Pseudovector,
    ];

    pub const fn units(self) -> &'static [BasisUnit] {
        match self {
            Grade::Scalar => &[BasisUnit::One],
            Grade::Vector => &BasisUnit::POLAR,
            Grade::Pseudoscalar => &[BasisUnit::Pseudo],
            Grade::Pseudovector => &BasisUnit::AXIAL,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Grade::Scalar => "scalar",
            Grade::Vector => "vector",
            Grade::Pseudoscalar => "pseudoscalar",
            Grade::Pseudovector => "pseudovector",
        }
    }
}

/// An octon split into its four grades.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct GradedParts {
    pub scalar: Complex,
    pub vector: [Complex; 3],
    pub pseudoscalar: Complex,
    pub pseudovector: [Complex; 3],
}

impl GradedParts {
    pub fn assemble(&self) -> Octon {
        let v = self.vector;
        let p = self.pseudovector;
        Octon::new([
            self.scalar,
            v[0],
            v[1],
            v[2],
            self.pseudoscalar,
            p[0],
            p[1],
            p[2],
        ])
    }
}

/// An element of the octon algebra.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Octon {
    pub coeffs: [Complex; 8],
}

impl Octon {
    pub const ZERO: Octon = Octon { coeffs: [ZERO; 8] };

    pub const fn new(coeffs: [Complex; 8]) -> Self {
        Octon { coeffs }
    }

    pub fn from_real(re: [f64; 8]) -> Self {
        Octon::new(re.map(|x| Complex::new(x, 0.0)))
    }

    pub fn unit(u: BasisUnit) -> Self {
        Octon::ZERO.with(u, Complex::new(1.0, 0.0))
    }

    pub fn one() -> Self {
        Octon::unit(BasisUnit::One)
    }

    pub fn scalar(s: Complex) -> Self {
        Octon::ZERO.with(BasisUnit::One, s)
    }

    pub fn pseudoscalar(s: Complex) -> Self {
        Octon::ZERO.with(BasisUnit::Pseudo, s)
    }

    pub fn polar(v: [Complex; 3]) -> Self {
        let mut o = Octon::ZERO;
        o.coeffs[1..4].copy_from_slice(&v);
        o
    }

    pub fn axial(p: [Complex; 3]) -> Self {
        let mut o = Octon::ZERO;
        o.coeffs[5..8].copy_from_slice(&p);
        o
    }

    pub fn polar_real(v: [f64; 3]) -> Self {
        Octon::polar(v.map(|x| Complex::new(x, 0.0)))
    }

    pub fn axial_real(p: [f64; 3]) -> Self {
        Octon::axial(p.map(|x| Complex::new(x, 0.0)))
    }

    pub fn with(mut self, u: BasisUnit, value: Complex) -> Self {
        self.coeffs[u.index()] = value;
        self
    }

    #[inline]
    pub fn get(&self, u: BasisUnit) -> Complex {
        self.coeffs[u.index()]
    }

    pub fn vector_part(&self) -> [Complex; 3] {
        [self.coeffs[1], self.coeffs[2], self.coeffs[3]]
    }

    pub fn pseudovector_part(&self) -> [Complex; 3] {
        [self.coeffs[5], self.coeffs[6], self.coeffs[7]]
    }

    pub fn scale(&self, lambda: Complex) -> Octon {
        Octon::new(self.coeffs.map(|z| lambda * z))
    }

    pub fn scale_real(&self, lambda: f64) -> Octon {
        Octon::new(self.coeffs.map(|z| z * lambda))
    }

    /// Spatial inversion: polar vector and pseudoscalar flip sign, scalar and axial vector
    /// are kept.
    pub fn spatial_inversion(&self) -> Octon {
        let mut out = *self;
        for u in [
            BasisUnit::PolarI,
            BasisUnit::PolarJ,
            BasisUnit::PolarK,
            BasisUnit::Pseudo,
        ] {
            out.coeffs[u.index()] = -out.coeffs[u.index()];
        }
        out
    }

    /// Complex conjugation of every coefficient; the basis units are real.
    pub fn conj(&self) -> Octon {
        Octon::new(self.coeffs.map(|z| z.conj()))
    }

    /// Real part of every coefficient.
    pub fn re(&self) -> Octon {
        Octon::new(self.coeffs.map(|z| Complex::new(z.re, 0.0)))
    }

    pub fn grade_split(&self) -> GradedParts {
        let c = &self.coeffs;
        GradedParts {
            scalar: c[0],
            vector: [c[1], c[2], c[3]],
            pseudoscalar: c[4],
            pseudovector: [c[5], c[6], c[7]],
        }
    }

    pub fn grade_select(&self, grade: Grade) -> Octon {
        let mut out = Octon::ZERO;
        for &u in grade.units() {
            out.coeffs[u.index()] = self.coeffs[u.index()];
        }
        out
    }

    /// Grades carrying a nonzero coefficient.
    pub fn grades_present(&self) -> Vec<Grade> {
        Grade::ALL
            .into_iter()
            .filter(|g| g.units().iter().any(|u| self.get(*u) != ZERO))
            .collect()
    }

    /// Largest coefficient modulus.
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Octon) -> f64 {
        (*self - *other).max_norm()
    }

    /// Left multiplication by a single basis unit: a signed, ξ-phased permutation of the
    /// coefficients, computed without floating-point rounding.
    #[inline]
    pub fn left_mul_unit(&self, u: BasisUnit) -> Octon {
        ProductTable::standard().left_mul_unit(u, self)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<BasisUnit> for Octon {
    type Output = Complex;
    fn index(&self, u: BasisUnit) -> &Complex {
        &self.coeffs[u.index()]
    }
}

impl IndexMut<BasisUnit> for Octon {
    fn index_mut(&mut self, u: BasisUnit) -> &mut Complex {
        &mut self.coeffs[u.index()]
    }
}

impl Add for Octon {
    type Output = Octon;
    #[inline]
    fn add(mut self, rhs: Octon) -> Octon {
        self += rhs;
        self
    }
}

impl AddAssign for Octon {
    #[inline]
    fn add_assign(&mut self, rhs: Octon) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for Octon {
    type Output = Octon;
    #[inline]
    fn sub(mut self, rhs: Octon) -> Octon {
        self -= rhs;
        self
    }
}

impl SubAssign for Octon {
    #[inline]
    fn sub_assign(&mut self, rhs: Octon) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for Octon {
    type Output = Octon;
    fn neg(self) -> Octon {
        Octon::new(self.coeffs.map(|z| -z))
    }
}

impl Mul for Octon {
    type Output = Octon;
    fn mul(self, rhs: Octon) -> Octon {
        ProductTable::standard().multiply(&self, &rhs)
    }
}

impl Mul<Complex> for Octon {
    type Output = Octon;
    fn mul(self, rhs: Complex) -> Octon {
        self.scale(rhs)
    }
}

impl Mul<f64> for Octon {
    type Output = Octon;
    fn mul(self, rhs: f64) -> Octon {
        self.scale_real(rhs)
    }
}

impl fmt::Display for Octon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for u in BasisUnit::ALL {
            let z = self.get(u);
            if z == ZERO {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(
                f,
                "({}{:+}ξ){}",
                z.re,
                z.im,
                if u == BasisUnit::One { "" } else { u.symbol() }
            )?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

// Text form: a JSON array of eight `[re, im]` pairs in canonical basis order.
impl Serialize for Octon {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.map(|z| [z.re, z.im]).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Octon {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = <[[f64; 2]; 8]>::deserialize(deserializer)?;
        Ok(Octon::new(pairs.map(|[re, im]| Complex::new(re, im))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn grade_split_of_mixed_octon() {
        let a = Octon::from_real([2.0, 3.0, 0.0, 0.0, 5.0, 0.0, 0.0, 7.0]);
        let g = a.grade_split();
        assert_eq!(g.scalar, c(2.0, 0.0));
        assert_eq!(g.vector, [c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(g.pseudoscalar, c(5.0, 0.0));
        assert_eq!(g.pseudovector, [c(0.0, 0.0), c(0.0, 0.0), c(7.0, 0.0)]);
        assert_eq!(g.assemble(), a);
    }

    #[test]
    fn grade_selection_is_complete() {
        let a = Octon::new(std::array::from_fn(|n| c(n as f64 + 0.5, -(n as f64))));
        let sum = Grade::ALL
            .iter()
            .fold(Octon::ZERO, |acc, g| acc + a.grade_select(*g));
        assert_eq!(sum, a);
    }

    #[test]
    fn linear_structure() {
        let i = Octon::unit(BasisUnit::PolarI);
        assert_eq!(i + (-i), Octon::ZERO);
        let k = Octon::unit(BasisUnit::AxialK);
        assert_eq!(k.scale(XI), Octon::ZERO.with(BasisUnit::AxialK, XI));
        let v = (i + Octon::unit(BasisUnit::Pseudo)).scale(c(2.0, 0.0));
        assert_eq!(
            v,
            Octon::from_real([0.0, 2.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0])
        );
    }

    #[test]
    fn spatial_inversion_rule() {
        let a = Octon::from_real([1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0]);
        let r = Octon::from_real([1.0, -1.0, 0.0, 0.0, -1.0, 1.0, 0.0, 0.0]);
        assert_eq!(a.spatial_inversion(), r);
        assert_eq!(a.spatial_inversion().spatial_inversion(), a);
    }

    #[test]
    fn conjugation_flips_imaginary_coefficient() {
        let k = Octon::ZERO.with(BasisUnit::AxialK, XI);
        assert_eq!(k.conj(), Octon::ZERO.with(BasisUnit::AxialK, -XI));
        let ij = Octon::unit(BasisUnit::PolarI) * Octon::unit(BasisUnit::PolarJ);
        assert_eq!(ij.conj(), -ij);
    }

    #[test]
    fn json_text_form_is_eight_pairs() {
        let a = Octon::ZERO
            .with(BasisUnit::PolarJ, c(1.5, -2.0))
            .with(BasisUnit::AxialK, XI);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(
            text,
            "[[0.0,0.0],[0.0,0.0],[1.5,-2.0],[0.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,1.0]]"
        );
        let back: Octon = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<Octon>("[[1,2],[3,4]]").is_err());
    }

    #[test]
    fn display_lists_nonzero_terms() {
        assert_eq!(Octon::ZERO.to_string(), "0");
        assert_eq!(Octon::unit(BasisUnit::AxialJ).to_string(), "(1+0ξ)J");
    }
}
