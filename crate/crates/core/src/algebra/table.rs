//! The 8×8 basis product table.
//!
//! Every basis unit is written as `E^e · v` with `v ∈ {1, i, j, k}`: the axial units are
//! `I = iE`, `J = jE`, `K = kE`. The pseudoscalar `E` is central with `E² = 1`, so a
//! product of two units reduces to a product of polar units, for which
//!
//! - `ii = jj = kk = 1`,
//! - `ij = ξK = ξE·k`, `jk = ξE·i`, `ki = ξE·j`, and the reversed orders anticommute.
//!
//! The table is generated from those rules once and then looked up.

use std::fmt;
use std::sync::OnceLock;

use super::{BasisUnit, Complex, Octon};

/// A power of `ξ`: one of `1, ξ, −1, −ξ`. Products of basis units only ever carry these.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const XI: Phase = Phase(1);
    pub const NEG_ONE: Phase = Phase(2);
    pub const NEG_XI: Phase = Phase(3);

    pub const fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }

    pub const fn neg(self) -> Phase {
        self.mul(Phase::NEG_ONE)
    }

    pub fn to_complex(self) -> Complex {
        self.apply(Complex::new(1.0, 0.0))
    }

    /// Multiplies `z` by this phase by swapping and negating parts; no rounding occurs.
    #[inline]
    pub fn apply(self, z: Complex) -> Complex {
        match self.0 {
            0 => z,
            1 => Complex::new(-z.im, z.re),
            2 => Complex::new(-z.re, -z.im),
            _ => Complex::new(z.im, -z.re),
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["1", "ξ", "-1", "-ξ"][self.0 as usize])
    }
}

/// `(coefficient, unit)` of a basis product.
pub type TableEntry = (Phase, BasisUnit);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTable {
    entries: [[TableEntry; 8]; 8],
}

/// Decomposition `u = E^e · v`, returned as `(e, v)` with `v` indexing `{1, i, j, k}`.
const fn split_unit(u: BasisUnit) -> (u8, usize) {
    match u {
        BasisUnit::One => (0, 0),
        BasisUnit::PolarI => (0, 1),
        BasisUnit::PolarJ => (0, 2),
        BasisUnit::PolarK => (0, 3),
        BasisUnit::Pseudo => (1, 0),
        BasisUnit::AxialI => (1, 1),
        BasisUnit::AxialJ => (1, 2),
        BasisUnit::AxialK => (1, 3),
    }
}

const fn join_unit(e: u8, v: usize) -> BasisUnit {
    BasisUnit::from_index(v + 4 * e as usize)
}

/// Product of two elements of `{1, i, j, k}` as `(phase, E-power, polar index)`.
const fn polar_product(a: usize, b: usize) -> (Phase, u8, usize) {
    if a == 0 {
        return (Phase::ONE, 0, b);
    }
    if b == 0 {
        return (Phase::ONE, 0, a);
    }
    if a == b {
        return (Phase::ONE, 0, 0);
    }
    let third = 6 - a - b;
    // (1,2), (2,3), (3,1) are the cyclic orders.
    let cyclic = (a % 3) + 1 == b;
    let phase = if cyclic { Phase::XI } else { Phase::NEG_XI };
    (phase, 1, third)
}

impl ProductTable {
    pub fn from_rules() -> Self {
        let mut entries = [[(Phase::ONE, BasisUnit::One); 8]; 8];
        for u in BasisUnit::ALL {
            for v in BasisUnit::ALL {
                let (eu, pu) = split_unit(u);
                let (ev, pv) = split_unit(v);
                let (phase, ep, w) = polar_product(pu, pv);
                entries[u.index()][v.index()] = (phase, join_unit((eu + ev + ep) % 2, w));
            }
        }
        ProductTable { entries }
    }

    /// The table used by [`Octon`]'s `Mul`, built on first use.
    pub fn standard() -> &'static ProductTable {
        static TABLE: OnceLock<ProductTable> = OnceLock::new();
        TABLE.get_or_init(ProductTable::from_rules)
    }

    #[inline]
    pub fn entry(&self, u: BasisUnit, v: BasisUnit) -> TableEntry {
        self.entries[u.index()][v.index()]
    }

    /// A copy with one entry replaced; used for negative controls of the verifier.
    pub fn with_entry(&self, u: BasisUnit, v: BasisUnit, entry: TableEntry) -> ProductTable {
        let mut t = self.clone();
        t.entries[u.index()][v.index()] = entry;
        t
    }

    pub fn multiply(&self, a: &Octon, b: &Octon) -> Octon {
        let mut out = Octon::ZERO;
        for (ui, &x) in a.coeffs.iter().enumerate() {
            for (vi, &y) in b.coeffs.iter().enumerate() {
                let (phase, w) = self.entries[ui][vi];
                out.coeffs[w.index()] += phase.apply(x * y);
            }
        }
        out
    }

    #[inline]
    pub fn left_mul_unit(&self, u: BasisUnit, a: &Octon) -> Octon {
        let row = &self.entries[u.index()];
        let mut out = Octon::ZERO;
        for (vi, &y) in a.coeffs.iter().enumerate() {
            let (phase, w) = row[vi];
            out.coeffs[w.index()] = phase.apply(y);
        }
        out
    }

    /// Product of two basis units within this table, as `(phase, unit)`.
    pub fn unit_product(&self, u: BasisUnit, v: BasisUnit) -> TableEntry {
        self.entry(u, v)
    }

    /// `(a·b)·c` on units, composing phases exactly.
    pub fn unit_triple_left(&self, a: BasisUnit, b: BasisUnit, c: BasisUnit) -> TableEntry {
        let (p1, ab) = self.entry(a, b);
        let (p2, w) = self.entry(ab, c);
        (p1.mul(p2), w)
    }

    /// `a·(b·c)` on units.
    pub fn unit_triple_right(&self, a: BasisUnit, b: BasisUnit, c: BasisUnit) -> TableEntry {
        let (p1, bc) = self.entry(b, c);
        let (p2, w) = self.entry(a, bc);
        (p1.mul(p2), w)
    }
}

/// Product of two basis units in the standard table.
pub fn basis_product(u: BasisUnit, v: BasisUnit) -> (Complex, BasisUnit) {
    let (phase, w) = ProductTable::standard().entry(u, v);
    (phase.to_complex(), w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::XI;
    use BasisUnit::*;

    fn one() -> Complex {
        Complex::new(1.0, 0.0)
    }

    #[test]
    fn spot_products() {
        assert_eq!(basis_product(PolarI, PolarJ), (XI, AxialK));
        assert_eq!(basis_product(One, Pseudo), (one(), Pseudo));
        assert_eq!(basis_product(Pseudo, Pseudo), (one(), One));
        assert_eq!(basis_product(PolarJ, AxialI), (-XI, PolarK));
    }

    /// The rule list for units, written out literally, one line per relation.
    #[test]
    fn literal_rule_list() {
        let t = ProductTable::standard();
        let lit: &[(BasisUnit, BasisUnit, Phase, BasisUnit)] = &[
            // squares of polar and axial units
            (PolarI, PolarI, Phase::ONE, One),
            (PolarJ, PolarJ, Phase::ONE, One),
            (PolarK, PolarK, Phase::ONE, One),
            (AxialI, AxialI, Phase::ONE, One),
            (AxialJ, AxialJ, Phase::ONE, One),
            (AxialK, AxialK, Phase::ONE, One),
            // polar cross products
            (PolarI, PolarJ, Phase::XI, AxialK),
            (PolarJ, PolarK, Phase::XI, AxialI),
            (PolarK, PolarI, Phase::XI, AxialJ),
            (PolarJ, PolarI, Phase::NEG_XI, AxialK),
            (PolarK, PolarJ, Phase::NEG_XI, AxialI),
            (PolarI, PolarK, Phase::NEG_XI, AxialJ),
            // axial cross products
            (AxialI, AxialJ, Phase::XI, AxialK),
            (AxialJ, AxialK, Phase::XI, AxialI),
            (AxialK, AxialI, Phase::XI, AxialJ),
            (AxialJ, AxialI, Phase::NEG_XI, AxialK),
            // pseudoscalar from parallel units
            (PolarI, AxialI, Phase::ONE, Pseudo),
            (PolarJ, AxialJ, Phase::ONE, Pseudo),
            (PolarK, AxialK, Phase::ONE, Pseudo),
            (AxialI, PolarI, Phase::ONE, Pseudo),
            (AxialJ, PolarJ, Phase::ONE, Pseudo),
            (AxialK, PolarK, Phase::ONE, Pseudo),
            (Pseudo, Pseudo, Phase::ONE, One),
            // mixed polar/axial products
            (PolarI, AxialJ, Phase::XI, PolarK),
            (AxialI, PolarJ, Phase::XI, PolarK),
            (PolarJ, AxialK, Phase::XI, PolarI),
            (AxialJ, PolarK, Phase::XI, PolarI),
            (PolarK, AxialI, Phase::XI, PolarJ),
            (AxialK, PolarI, Phase::XI, PolarJ),
            (AxialJ, PolarI, Phase::NEG_XI, PolarK),
            (PolarJ, AxialI, Phase::NEG_XI, PolarK),
            (AxialK, PolarJ, Phase::NEG_XI, PolarI),
            (PolarK, AxialJ, Phase::NEG_XI, PolarI),
            (AxialI, PolarK, Phase::NEG_XI, PolarJ),
            (PolarI, AxialK, Phase::NEG_XI, PolarJ),
            // multiplication by the pseudoscalar
            (PolarI, Pseudo, Phase::ONE, AxialI),
            (Pseudo, PolarI, Phase::ONE, AxialI),
            (PolarJ, Pseudo, Phase::ONE, AxialJ),
            (Pseudo, PolarJ, Phase::ONE, AxialJ),
            (PolarK, Pseudo, Phase::ONE, AxialK),
            (Pseudo, PolarK, Phase::ONE, AxialK),
            (AxialI, Pseudo, Phase::ONE, PolarI),
            (Pseudo, AxialI, Phase::ONE, PolarI),
            (AxialJ, Pseudo, Phase::ONE, PolarJ),
            (Pseudo, AxialJ, Phase::ONE, PolarJ),
            (AxialK, Pseudo, Phase::ONE, PolarK),
            (Pseudo, AxialK, Phase::ONE, PolarK),
        ];
        for &(u, v, p, w) in lit {
            assert_eq!(t.entry(u, v), (p, w), "{u}{v}");
        }
    }

    #[test]
    fn pseudoscalar_is_minus_xi_ijk() {
        let t = ProductTable::standard();
        let (p, w) = t.unit_triple_left(PolarI, PolarJ, PolarK);
        // -ξ · (p w) must equal E
        assert_eq!((Phase::NEG_XI.mul(p), w), (Phase::ONE, Pseudo));
    }

    #[test]
    fn left_mul_unit_matches_full_product() {
        let t = ProductTable::standard();
        let a = Octon::new(std::array::from_fn(|n| {
            Complex::new(n as f64 - 3.0, 0.25 * n as f64)
        }));
        for u in BasisUnit::ALL {
            assert_eq!(t.left_mul_unit(u, &a), t.multiply(&Octon::unit(u), &a));
        }
    }

    #[test]
    fn phase_arithmetic() {
        assert_eq!(Phase::XI.mul(Phase::XI), Phase::NEG_ONE);
        assert_eq!(Phase::NEG_XI.neg(), Phase::XI);
        assert_eq!(Phase::XI.to_complex(), XI);
        let z = Complex::new(2.0, -3.0);
        for p in [Phase::ONE, Phase::XI, Phase::NEG_ONE, Phase::NEG_XI] {
            assert_eq!(p.apply(z), p.to_complex() * z);
        }
    }
}
