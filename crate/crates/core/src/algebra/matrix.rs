//! A faithful representation of octons as pairs of complex 2×2 matrices.
//!
//! Octons split into two copies of the Pauli algebra, one per eigenvalue of the central
//! element `E`:
//!
//! ```text
//! 1 → (Id,  Id)    i → (σ1, −σ1)    I → (σ1, σ1)
//! E → (Id, −Id)    j → (σ2, −σ2)    J → (σ2, σ2)
//!                  k → (σ3, −σ3)    K → (σ3, σ3)
//! ```
//!
//! with `σ1σ2 = ξσ3`. Matrix multiplication never consults the product table, so the
//! representation is used to check it.

use std::ops::{Add, Mul, Sub};

use super::{BasisUnit, Complex, Octon};

/// Complex 2×2 matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Mat2(pub [[Complex; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        let o = Complex::new(1.0, 0.0);
        let z = Complex::new(0.0, 0.0);
        Mat2([[o, z], [z, o]])
    }

    pub fn sigma(n: usize) -> Self {
        let o = Complex::new(1.0, 0.0);
        let z = Complex::new(0.0, 0.0);
        let x = Complex::new(0.0, 1.0);
        match n {
            1 => Mat2([[z, o], [o, z]]),
            2 => Mat2([[z, -x], [x, z]]),
            3 => Mat2([[o, z], [z, -o]]),
            _ => panic!("no Pauli matrix σ{n}"),
        }
    }

    pub fn scale(&self, s: Complex) -> Self {
        Mat2(self.0.map(|row| row.map(|z| s * z)))
    }

    pub fn trace(&self) -> Complex {
        self.0[0][0] + self.0[1][1]
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut m: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                m = m.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        m
    }

    /// Coefficients `(c0, c1, c2, c3)` with `self = c0·Id + Σ cn·σn`.
    pub fn pauli_coefficients(&self) -> [Complex; 4] {
        let half = 0.5;
        [
            self.trace() * half,
            (Mat2::sigma(1) * *self).trace() * half,
            (Mat2::sigma(2) * *self).trace() * half,
            (Mat2::sigma(3) * *self).trace() * half,
        ]
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        for r in 0..2 {
            for c in 0..2 {
                out.0[r][c] += rhs.0[r][c];
            }
        }
        out
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + rhs.scale(Complex::new(-1.0, 0.0))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = self.0;
        let b = rhs.0;
        let mut out = [[Complex::new(0.0, 0.0); 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Mat2(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct MatrixPair {
    pub plus: Mat2,
    pub minus: Mat2,
}

impl MatrixPair {
    pub fn max_abs_diff(&self, other: &MatrixPair) -> f64 {
        self.plus
            .max_abs_diff(&other.plus)
            .max(self.minus.max_abs_diff(&other.minus))
    }
}

impl Mul for MatrixPair {
    type Output = MatrixPair;
    fn mul(self, rhs: MatrixPair) -> MatrixPair {
        MatrixPair {
            plus: self.plus * rhs.plus,
            minus: self.minus * rhs.minus,
        }
    }
}

impl Add for MatrixPair {
    type Output = MatrixPair;
    fn add(self, rhs: MatrixPair) -> MatrixPair {
        MatrixPair {
            plus: self.plus + rhs.plus,
            minus: self.minus + rhs.minus,
        }
    }
}

fn unit_image(u: BasisUnit) -> MatrixPair {
    let id = Mat2::identity();
    let neg = Complex::new(-1.0, 0.0);
    let (m, minus_sign) = match u {
        BasisUnit::One => (id, false),
        BasisUnit::Pseudo => (id, true),
        BasisUnit::PolarI => (Mat2::sigma(1), true),
        BasisUnit::PolarJ => (Mat2::sigma(2), true),
        BasisUnit::PolarK => (Mat2::sigma(3), true),
        BasisUnit::AxialI => (Mat2::sigma(1), false),
        BasisUnit::AxialJ => (Mat2::sigma(2), false),
        BasisUnit::AxialK => (Mat2::sigma(3), false),
    };
    MatrixPair {
        plus: m,
        minus: if minus_sign { m.scale(neg) } else { m },
    }
}

pub fn to_matrix_pair(a: &Octon) -> MatrixPair {
    BasisUnit::ALL
        .iter()
        .fold(MatrixPair::default(), |acc, &u| {
            let img = unit_image(u);
            let z = a.get(u);
            acc + MatrixPair {
                plus: img.plus.scale(z),
                minus: img.minus.scale(z),
            }
        })
}

/// Inverse of [`to_matrix_pair`].
pub fn from_matrix_pair(m: &MatrixPair) -> Octon {
    let p = m.plus.pauli_coefficients();
    let q = m.minus.pauli_coefficients();
    let half = 0.5;
    // plus  = (d + D)Id + Σ (vn + pn)σn
    // minus = (d − D)Id + Σ (pn − vn)σn
    Octon::new([
        (p[0] + q[0]) * half,
        (p[1] - q[1]) * half,
        (p[2] - q[2]) * half,
        (p[3] - q[3]) * half,
        (p[0] - q[0]) * half,
        (p[1] + q[1]) * half,
        (p[2] + q[2]) * half,
        (p[3] + q[3]) * half,
    ])
}

/// Octon product computed through the matrix representation alone.
pub fn oracle_multiply(a: &Octon, b: &Octon) -> Octon {
    from_matrix_pair(&(to_matrix_pair(a) * to_matrix_pair(b)))
}

/// Rank of the 8×8 complex matrix whose rows are the flattened images of the basis
/// units; 8 means the representation is injective.
pub fn basis_image_rank() -> usize {
    let mut rows: Vec<[Complex; 8]> = BasisUnit::ALL
        .iter()
        .map(|&u| {
            let m = unit_image(u);
            let (p, q) = (m.plus.0, m.minus.0);
            [
                p[0][0], p[0][1], p[1][0], p[1][1], q[0][0], q[0][1], q[1][0], q[1][1],
            ]
        })
        .collect();
    complex_rank(&mut rows, 1e-12)
}

fn complex_rank(rows: &mut [[Complex; 8]], tol: f64) -> usize {
    let ncols = 8;
    let mut rank = 0;
    for col in 0..ncols {
        let pivot =
            (rank..rows.len()).max_by(|&a, &b| rows[a][col].norm().total_cmp(&rows[b][col].norm()));
        let Some(p) = pivot else { break };
        if rows[p][col].norm() <= tol {
            continue;
        }
        rows.swap(rank, p);
        let pivot_row = rows[rank];
        for r in (rank + 1)..rows.len() {
            let f = rows[r][col] / pivot_row[col];
            for c in col..ncols {
                rows[r][c] -= f * pivot_row[c];
            }
        }
        rank += 1;
    }
    rank
}
