//! Built-in target functions.
//!
//! | id | definition | kind |
//! |----|------------|------|
//! | f1 | `e^{-|z|^2} (z - conj z) e^{6 i arg z}` | continuous, non-analytic |
//! | f2 | `floor(3 Re z) + i (1 - Re(z)^2/2 - Im(z)^2/2)` | integrable, jumps at `Re z = j/3` |
//! | f3 | `cos(pi z) + i sin(pi z)` | entire |
//! | f4 | `0.5 (z^4 - 1.5 z^2 + 0.3)` | polynomial |
//! | g1 | `conj z` | continuous, non-analytic |
//! | g2 | `z` for `Re z >= 0`, `2z` otherwise | integrable, jump at `Re z = 0` |
//! | g3 | `sin(z^2)` | entire |

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{NevaiError, Result};
use crate::field::{BreakLine, ComplexField};
use crate::operator::Family;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionId {
    F1,
    F2,
    F3,
    F4,
    G1,
    G2,
    G3,
}

impl FunctionId {
    pub const ALL: [FunctionId; 7] = [
        FunctionId::F1,
        FunctionId::F2,
        FunctionId::F3,
        FunctionId::F4,
        FunctionId::G1,
        FunctionId::G2,
        FunctionId::G3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FunctionId::F1 => "f1",
            FunctionId::F2 => "f2",
            FunctionId::F3 => "f3",
            FunctionId::F4 => "f4",
            FunctionId::G1 => "g1",
            FunctionId::G2 => "g2",
            FunctionId::G3 => "g3",
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FunctionId {
    type Err = NevaiError;

    fn from_str(s: &str) -> Result<Self> {
        FunctionId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| NevaiError::UnknownFunction(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct NamedFunction {
    pub id: FunctionId,
    pub field: ComplexField,
    pub break_lines: Vec<BreakLine>,
    pub analytic: bool,
}

impl NamedFunction {
    /// The Hermite family needs complex derivatives; only analytic entries qualify.
    pub fn check_family(&self, family: Family) -> Result<()> {
        if family == Family::Hermite && !self.analytic {
            return Err(NevaiError::InvalidPairing { function: self.id.to_string(), family: family.to_string() });
        }
        Ok(())
    }
}

fn arg0(z: Complex64) -> f64 {
    if z.re == 0.0 && z.im == 0.0 {
        0.0
    } else {
        z.im.atan2(z.re)
    }
}

fn f1(x: f64, y: f64) -> Complex64 {
    let z = Complex64::new(x, y);
    let prefactor = (-(x * x + y * y)).exp() * (z - z.conj());
    prefactor * Complex64::from_polar(1.0, 6.0 * arg0(z))
}

/// `d^j/dz^j sin(z^2) = P_j(z) cos(z^2) + Q_j(z) sin(z^2)` with
/// `P_{j+1} = P_j' + 2z Q_j`, `Q_{j+1} = Q_j' - 2z P_j`.
fn g3_derivative(j: usize, z: Complex64) -> Complex64 {
    let mut p: Vec<f64> = vec![0.0];
    let mut q: Vec<f64> = vec![1.0];
    for _ in 0..j {
        let deriv = |c: &[f64]| -> Vec<f64> {
            if c.len() <= 1 {
                vec![0.0]
            } else {
                c.iter().enumerate().skip(1).map(|(i, a)| a * i as f64).collect()
            }
        };
        let shift2 = |c: &[f64], sign: f64| -> Vec<f64> {
            std::iter::once(0.0).chain(c.iter().map(|a| 2.0 * sign * a)).collect()
        };
        let add = |a: Vec<f64>, b: Vec<f64>| -> Vec<f64> {
            let len = a.len().max(b.len());
            (0..len).map(|i| a.get(i).unwrap_or(&0.0) + b.get(i).unwrap_or(&0.0)).collect()
        };
        let np = add(deriv(&p), shift2(&q, 1.0));
        let nq = add(deriv(&q), shift2(&p, -1.0));
        p = np;
        q = nq;
    }
    let horner = |c: &[f64]| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a);
    let w = z * z;
    horner(&p) * w.cos() + horner(&q) * w.sin()
}

fn f4_derivative(j: usize, z: Complex64) -> Complex64 {
    let z2 = z * z;
    match j {
        0 => 0.5 * (z2 * z2 - 1.5 * z2 + 0.3),
        1 => 0.5 * (4.0 * z2 * z - 3.0 * z),
        2 => 0.5 * (12.0 * z2 - 3.0),
        3 => 12.0 * z,
        4 => Complex64::new(12.0, 0.0),
        _ => Complex64::new(0.0, 0.0),
    }
}

pub fn lookup(id: FunctionId) -> NamedFunction {
    let (field, break_lines, analytic) = match id {
        FunctionId::F1 => (ComplexField::new(f1), vec![], false),
        FunctionId::F2 => {
            let lines: Vec<BreakLine> = (-3..=3).map(|j| BreakLine::Re(j as f64 / 3.0)).collect();
            let f = ComplexField::new(|x, y| Complex64::new((3.0 * x).floor(), 1.0 - 0.5 * x * x - 0.5 * y * y))
                .integrable_only()
                .with_break_lines(lines.clone());
            (f, lines, false)
        }
        FunctionId::F3 => {
            let ipi = Complex64::new(0.0, PI);
            (ComplexField::analytic(move |j, z| ipi.powu(j as u32) * (ipi * z).exp()), vec![], true)
        }
        FunctionId::F4 => (ComplexField::analytic(f4_derivative), vec![], true),
        FunctionId::G1 => (ComplexField::new(|x, y| Complex64::new(x, -y)), vec![], false),
        FunctionId::G2 => {
            let lines = vec![BreakLine::Re(0.0)];
            let f = ComplexField::new(|x, y| {
                let z = Complex64::new(x, y);
                if x >= 0.0 {
                    z
                } else {
                    2.0 * z
                }
            })
            .integrable_only()
            .with_break_lines(lines.clone());
            (f, lines, false)
        }
        FunctionId::G3 => (ComplexField::analytic(g3_derivative), vec![], true),
    };
    NamedFunction { id, field, break_lines, analytic }
}

pub fn lookup_str(id: &str) -> Result<NamedFunction> {
    Ok(lookup(id.parse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spot_values() {
        assert_eq!(lookup(FunctionId::F1).field.eval(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(lookup(FunctionId::G1).field.eval(0.3, 0.4), c(0.3, -0.4));
        let f3 = lookup(FunctionId::F3).field.eval(0.5, 0.0);
        assert!((f3 - c(0.0, 1.0)).norm() < 1e-15);
        let f4 = lookup(FunctionId::F4).field.eval(1.0, 0.0);
        assert!((f4 - c(0.5 * (1.0 - 1.5 + 0.3), 0.0)).norm() < 1e-15);
        let f2 = lookup(FunctionId::F2).field.eval(0.5, -0.5);
        assert!((f2 - c(1.0, 0.75)).norm() < 1e-15);
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(lookup_str("f9"), Err(NevaiError::UnknownFunction(_))));
        assert_eq!(lookup_str("G3").unwrap().id, FunctionId::G3);
    }

    #[test]
    fn analytic_flags_and_pairing() {
        for id in FunctionId::ALL {
            let f = lookup(id);
            let expect = matches!(id, FunctionId::F3 | FunctionId::F4 | FunctionId::G3);
            assert_eq!(f.analytic, expect, "{id}");
            assert_eq!(f.field.has_derivatives(), expect);
            assert_eq!(f.check_family(Family::Hermite).is_ok(), expect);
            assert!(f.check_family(Family::Kantorovich).is_ok());
        }
    }

    #[test]
    fn break_lines_declared() {
        assert_eq!(lookup(FunctionId::F2).break_lines.len(), 7);
        assert_eq!(lookup(FunctionId::G2).break_lines, vec![BreakLine::Re(0.0)]);
        assert!(lookup(FunctionId::F3).break_lines.is_empty());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let h = 1e-5;
        for id in [FunctionId::F3, FunctionId::F4, FunctionId::G3] {
            let f = lookup(id).field;
            for _ in 0..20 {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                for j in 0..4 {
                    let fd = (f.derivative(j, z + h).unwrap() - f.derivative(j, z - h).unwrap()) / (2.0 * h);
                    let d = f.derivative(j + 1, z).unwrap();
                    assert!((fd - d).norm() <= 1e-6 * d.norm().max(1.0), "{id} j={j} z={z}");
                }
                assert!((f.derivative(0, z).unwrap() - f.eval_z(z)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn g3_low_order_closed_forms() {
        let z = c(0.4, -0.7);
        let w = z * z;
        let d1 = 2.0 * z * w.cos();
        let d2 = 2.0 * w.cos() - 4.0 * w * w.sin();
        assert!((g3_derivative(1, z) - d1).norm() < 1e-14);
        assert!((g3_derivative(2, z) - d2).norm() < 1e-14);
    }

    #[test]
    fn f1_conjugation_modulus() {
        let f = lookup(FunctionId::F1).field;
        for (x, y) in [(0.3, 0.4), (-0.9, 0.1), (0.5, -0.99), (0.0, 0.7)] {
            assert!((f.eval(x, y).norm() - f.eval(x, -y).norm()).abs() < 1e-15);
        }
        // along the real axis the prefactor z - conj z vanishes for any arg convention
        assert_eq!(f.eval(0.0, 0.0).norm(), 0.0);
        assert_eq!(f.eval(-0.4, 0.0).norm(), 0.0);
    }

    #[test]
    fn g2_split() {
        let f = lookup(FunctionId::G2).field;
        for y in [-0.5, 0.0, 0.8] {
            assert_eq!(f.eval(1e-12, y), c(1e-12, y));
            assert_eq!(f.eval(0.0, y), c(0.0, y));
            assert_eq!(f.eval(-1e-12, y), 2.0 * c(-1e-12, y));
        }
    }
}
