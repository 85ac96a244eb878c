use nevai::grid::{self, GridSpec};
use nevai::operator::{self, Approximant};
use nevai::testbed::{self, FunctionId};
use nevai::{Complex64, ComplexField, Family, KantorovichGrid, NodeGrid2D, OperatorConfig};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn configs(n: usize) -> [OperatorConfig; 3] {
    [OperatorConfig::generalized(n, 2.0), OperatorConfig::kantorovich(n, 2.0), OperatorConfig::hermite(n, 2.0, 2)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn linearity(ar in -2.0f64..2.0, ai in -2.0f64..2.0, br in -2.0f64..2.0, bi in -2.0f64..2.0,
                 x in -1.0f64..=1.0, y in -1.0f64..=1.0, n in 2usize..9) {
        let (a, b) = (c(ar, ai), c(br, bi));
        let f3 = testbed::lookup(FunctionId::F3).field;
        let g3 = testbed::lookup(FunctionId::G3).field;
        let combo = ComplexField::linear_combination(a, &f3, b, &g3);
        let z = c(x, y);
        for cfg in configs(n) {
            let lhs = operator::build(&cfg, &combo).unwrap().eval(z).unwrap();
            let rhs = a * operator::build(&cfg, &f3).unwrap().eval(z).unwrap()
                + b * operator::build(&cfg, &g3).unwrap().eval(z).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1.0), "{} {lhs} {rhs}", cfg.family);
        }
    }

    #[test]
    fn averaging_stays_in_range(x in -1.0f64..=1.0, y in -1.0f64..=1.0, n in 1usize..12, s in 0.0f64..4.0) {
        let field = ComplexField::new(|u, v| c((3.0 * u).sin() + v * v, 0.0));
        let z = c(x, y);
        let grid = NodeGrid2D::new(n).unwrap();
        let nodes: Vec<f64> = (0..n * n).map(|p| field.eval(grid.node(p / n, p % n).re, grid.node(p / n, p % n).im).re).collect();
        let (lo, hi) = nodes.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        let g = operator::GeneralizedOperator::new(grid, s, &field).unwrap().eval(z).unwrap().re;
        prop_assert!(g >= lo - 1e-12 && g <= hi + 1e-12);
        // on X the field lies in [-1, 2]
        let k = operator::KantorovichOperator::from_field(KantorovichGrid::new(n).unwrap(), s.max(2.0), &field, 4)
            .unwrap().eval(z).unwrap().re;
        prop_assert!((-1.0 - 1e-12..=2.0 + 1e-12).contains(&k));
    }

    #[test]
    fn constant_reproduction(re in -5.0f64..5.0, im in -5.0f64..5.0, x in -1.0f64..=1.0, y in -1.0f64..=1.0, n in 1usize..16) {
        let k = c(re, im);
        let field = ComplexField::constant(k);
        for cfg in configs(n) {
            let v = operator::build(&cfg, &field).unwrap().eval(c(x, y)).unwrap();
            prop_assert!((v - k).norm() <= 1e-12 * k.norm().max(1.0));
        }
    }

    #[test]
    fn kernel_constant_invariance(scale in 0.01f64..100.0, x in -1.0f64..=1.0, y in -1.0f64..=1.0, n in 1usize..10) {
        let f = testbed::lookup(FunctionId::G3).field;
        let z = c(x, y);
        let a = operator::GeneralizedOperator::new(NodeGrid2D::new(n).unwrap(), 2.0, &f).unwrap().eval(z).unwrap();
        let b = operator::GeneralizedOperator::new(NodeGrid2D::new(n).unwrap().with_kernel_scale(scale), 2.0, &f).unwrap().eval(z).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
        let a = operator::HermiteOperator::new(NodeGrid2D::new(n).unwrap(), 1.5, 2, &f).unwrap().eval(z).unwrap();
        let b = operator::HermiteOperator::new(NodeGrid2D::new(n).unwrap().with_kernel_scale(scale), 1.5, 2, &f).unwrap().eval(z).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
        let a = operator::KantorovichOperator::from_field(KantorovichGrid::new(n).unwrap(), 3.0, &f, 4).unwrap().eval(z).unwrap();
        let b = operator::KantorovichOperator::from_field(KantorovichGrid::new(n).unwrap().with_kernel_scale(scale), 3.0, &f, 4)
            .unwrap().eval(z).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
    }
}

#[test]
fn interpolation_up_to_thirty() {
    for id in [FunctionId::F1, FunctionId::F3, FunctionId::G1] {
        let f = testbed::lookup(id).field;
        for n in [1usize, 2, 7, 16, 30] {
            let grid = NodeGrid2D::new(n).unwrap();
            let op = operator::GeneralizedOperator::new(grid.clone(), 2.0, &f).unwrap();
            for k in 0..n {
                for m in 0..n {
                    let z = grid.node(k, m);
                    let want = f.eval_z(z);
                    assert!((op.eval(z).unwrap() - want).norm() < 1e-9 * (1.0 + want.norm()), "{id} n={n}");
                }
            }
        }
    }
}

#[test]
fn hermite_interpolates_at_nodes() {
    let f = testbed::lookup(FunctionId::G3).field;
    let grid = NodeGrid2D::new(6).unwrap();
    let op = operator::HermiteOperator::new(grid.clone(), 2.0, 3, &f).unwrap();
    for p in 0..36 {
        let z = grid.node(p / 6, p % 6);
        assert!((op.eval(z).unwrap() - f.eval_z(z)).norm() < 1e-10);
    }
}

#[test]
fn convergence_trend_generalized() {
    for id in [FunctionId::F1, FunctionId::F3, FunctionId::F4] {
        let f = testbed::lookup(id).field;
        let mut prev = f64::INFINITY;
        for n in [10usize, 20, 30, 40, 50] {
            let op = operator::build(&OperatorConfig::generalized(n, 2.0), &f).unwrap();
            let r = grid::evaluate(op.as_ref(), &f, GridSpec::table(101)).unwrap().report().unwrap();
            let e = r.e_max_re.max(r.e_max_im);
            assert!(e <= prev * 1.05, "{id} n={n}: {e} after {prev}");
            prev = e;
        }
    }
}

#[test]
fn pairing_rules() {
    for id in FunctionId::ALL {
        let named = testbed::lookup(id);
        let built = operator::build(&OperatorConfig::hermite(4, 2.0, 2), &named.field);
        assert_eq!(built.is_ok(), named.analytic, "{id}");
        assert_eq!(named.check_family(Family::Hermite).is_ok(), named.analytic);
    }
}

#[test]
fn kantorovich_error_concentrates_on_jump() {
    let g2 = testbed::lookup(FunctionId::G2).field;
    let op = operator::build(&OperatorConfig::kantorovich(20, 2.0), &g2).unwrap();
    let ev = grid::evaluate(op.as_ref(), &g2, GridSpec::table(101)).unwrap();
    let err: Vec<f64> = ev.exact.iter().zip(&ev.approx).map(|(a, b)| (a.norm() - b.norm()).abs()).collect();
    let arg = err.iter().enumerate().fold(0, |best, (i, &e)| if e > err[best] { i } else { best });
    let x = ev.xs[arg / ev.spec.cols];
    // within two cells (width 1/20) of Re z = 0
    assert!(x.abs() <= 2.0 / 20.0 + 1e-12, "argmax at x = {x}");
}
