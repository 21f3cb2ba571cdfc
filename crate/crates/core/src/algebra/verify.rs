//! Self-verification of a product table: closure, associativity, unit squares,
//! commutation rules, agreement with the matrix-pair oracle, and the Gibbs
//! correspondence, on basis units exactly and on seeded random octons in floating point.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::{to_matrix_pair, MatrixPair};
use super::{
    gibbs_correspondence_check, oracle_multiply, BasisUnit, Complex, Octon, Phase, ProductTable,
};
use crate::tolerance;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Tally {
    pub passed: usize,
    pub total: usize,
}

impl Tally {
    fn new() -> Self {
        Tally {
            passed: 0,
            total: 0,
        }
    }

    fn record(&mut self, ok: bool) -> bool {
        self.total += 1;
        if ok {
            self.passed += 1;
        }
        ok
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraReport {
    pub seed: u64,
    pub random_count: usize,
    pub basis_products: Tally,
    pub associativity_triples: Tally,
    pub unit_squares: Tally,
    pub pseudoscalar_central: Tally,
    pub anticommuting_pairs: Tally,
    pub pseudoscalar_from_polar_triple: Tally,
    pub inversion_automorphism: Tally,
    pub oracle_max_rel_err: f64,
    pub random_assoc_max_rel_err: f64,
    pub gibbs_max_residual: f64,
    pub failures: Vec<String>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}/{} basis products, {}/{} associativity triples, oracle max-err {:.1e} (< {:.0e}), \
             random associativity {:.1e}, gibbs residual {:.1e}: {}",
            self.basis_products.passed,
            self.basis_products.total,
            self.associativity_triples.passed,
            self.associativity_triples.total,
            self.oracle_max_rel_err,
            tolerance::ORACLE_RELATIVE,
            self.random_assoc_max_rel_err,
            self.gibbs_max_residual,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

pub fn random_octon<R: Rng>(rng: &mut R) -> Octon {
    Octon::new(std::array::from_fn(|_| {
        Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }))
}

fn random_components<R: Rng>(rng: &mut R) -> [Complex; 3] {
    std::array::from_fn(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn phased_image(phase: Phase, w: BasisUnit) -> MatrixPair {
    let img = to_matrix_pair(&Octon::unit(w));
    MatrixPair {
        plus: img.plus.scale(phase.to_complex()),
        minus: img.minus.scale(phase.to_complex()),
    }
}

/// Runs every check against `table`. `random_count` sets the number of random pairs
/// and triples; a tenth of that (at least one) is used for the Gibbs pairs.
pub fn verify_algebra(table: &ProductTable, seed: u64, random_count: usize) -> AlgebraReport {
    use BasisUnit::*;
    let mut failures = Vec::new();

    let mut basis_products = Tally::new();
    for u in BasisUnit::ALL {
        for v in BasisUnit::ALL {
            let (phase, w) = table.entry(u, v);
            let lhs = to_matrix_pair(&Octon::unit(u)) * to_matrix_pair(&Octon::unit(v));
            if !basis_products.record(lhs == phased_image(phase, w)) {
                failures.push(format!(
                    "basis product ({u},{v}) = {phase}·{w} disagrees with the matrix oracle"
                ));
            }
        }
    }

    let mut associativity_triples = Tally::new();
    for a in BasisUnit::ALL {
        for b in BasisUnit::ALL {
            for c in BasisUnit::ALL {
                let l = table.unit_triple_left(a, b, c);
                let r = table.unit_triple_right(a, b, c);
                if !associativity_triples.record(l == r) {
                    failures.push(format!(
                        "associativity fails for ({a},{b},{c}): {}·{} vs {}·{}",
                        l.0, l.1, r.0, r.1
                    ));
                }
            }
        }
    }

    let mut unit_squares = Tally::new();
    for u in [PolarI, PolarJ, PolarK, Pseudo, AxialI, AxialJ, AxialK] {
        if !unit_squares.record(table.entry(u, u) == (Phase::ONE, One)) {
            failures.push(format!("unit square ({u},{u}) is not 1"));
        }
    }

    let mut pseudoscalar_central = Tally::new();
    for u in BasisUnit::ALL {
        if !pseudoscalar_central.record(table.entry(Pseudo, u) == table.entry(u, Pseudo)) {
            failures.push(format!("E does not commute with {u} (pair (E,{u}))"));
        }
    }

    let mut anticommuting_pairs = Tally::new();
    let vectors = [PolarI, PolarJ, PolarK, AxialI, AxialJ, AxialK];
    for (n, &u) in vectors.iter().enumerate() {
        for &v in &vectors[n + 1..] {
            let parallel = u.index() % 4 == v.index() % 4;
            if parallel {
                continue;
            }
            let (p1, w1) = table.entry(u, v);
            let (p2, w2) = table.entry(v, u);
            if !anticommuting_pairs.record(w1 == w2 && p1 == p2.neg()) {
                failures.push(format!("non-parallel units ({u},{v}) do not anticommute"));
            }
        }
    }

    let mut pseudoscalar_from_polar_triple = Tally::new();
    let (p, w) = table.unit_triple_left(PolarI, PolarJ, PolarK);
    if !pseudoscalar_from_polar_triple.record((Phase::NEG_XI.mul(p), w) == (Phase::ONE, Pseudo)) {
        failures.push("E ≠ −ξ·i·j·k (triple (i,j,k))".to_string());
    }

    let mut inversion_automorphism = Tally::new();
    for u in BasisUnit::ALL {
        for v in BasisUnit::ALL {
            let (a, b) = (Octon::unit(u), Octon::unit(v));
            let lhs = table.multiply(&a, &b).spatial_inversion();
            let rhs = table.multiply(&a.spatial_inversion(), &b.spatial_inversion());
            if !inversion_automorphism.record(lhs == rhs) {
                failures.push(format!(
                    "spatial inversion is not multiplicative on ({u},{v})"
                ));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut oracle_max_rel_err: f64 = 0.0;
    let mut random_assoc_max_rel_err: f64 = 0.0;
    for _ in 0..random_count {
        let a = random_octon(&mut rng);
        let b = random_octon(&mut rng);
        let c = random_octon(&mut rng);
        let ab = table.multiply(&a, &b);
        let scale_ab = a.max_norm() * b.max_norm();
        oracle_max_rel_err =
            oracle_max_rel_err.max(ab.max_abs_diff(&oracle_multiply(&a, &b)) / scale_ab);
        let left = table.multiply(&ab, &c);
        let right = table.multiply(&a, &table.multiply(&b, &c));
        random_assoc_max_rel_err =
            random_assoc_max_rel_err.max(left.max_abs_diff(&right) / (scale_ab * c.max_norm()));
    }
    if oracle_max_rel_err > tolerance::ORACLE_RELATIVE {
        failures.push(format!("random products disagree with the matrix oracle (max rel err {oracle_max_rel_err:.3e})"));
    }
    if random_assoc_max_rel_err > tolerance::ORACLE_RELATIVE {
        failures.push(format!(
            "random triples fail associativity (max rel err {random_assoc_max_rel_err:.3e})"
        ));
    }

    // The Gibbs check multiplies through the standard table, so it only runs when the
    // table under test is the standard one.
    let mut gibbs_max_residual: f64 = 0.0;
    if table == ProductTable::standard() {
        for n in 0..(random_count / 10).max(1) {
            let c1 = random_components(&mut rng);
            let c2 = random_components(&mut rng);
            let v1 = if n % 2 == 0 {
                Octon::polar(c1)
            } else {
                Octon::axial(c1)
            };
            let v2 = if n % 3 == 0 {
                Octon::polar(c2)
            } else {
                Octon::axial(c2)
            };
            let r = gibbs_correspondence_check(&v1, &v2).expect("pure operands");
            gibbs_max_residual = gibbs_max_residual.max(r);
        }
        if gibbs_max_residual > tolerance::GIBBS {
            failures.push(format!(
                "Gibbs correspondence residual {gibbs_max_residual:.3e}"
            ));
        }
    }

    AlgebraReport {
        seed,
        random_count,
        basis_products,
        associativity_triples,
        unit_squares,
        pseudoscalar_central,
        anticommuting_pairs,
        pseudoscalar_from_polar_triple,
        inversion_automorphism,
        oracle_max_rel_err,
        random_assoc_max_rel_err,
        gibbs_max_residual,
        failures,
    }
}
