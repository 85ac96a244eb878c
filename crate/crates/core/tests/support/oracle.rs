//! Straight-line reference evaluations in double-double arithmetic.
//!
//! Everything is recomputed from first principles: Chebyshev values by the
//! three-term recurrence, kernels as direct sums `sum_{j<n} T_j(v) T_j(t)`,
//! operators as explicit double sums. Node positions and field values enter
//! as `f64` inputs.

#![allow(dead_code)]

use nevai::Complex64;
use twofloat::TwoFloat;

pub type F = TwoFloat;

pub fn f(x: f64) -> F {
    TwoFloat::from(x)
}

pub fn pi() -> F {
    twofloat::consts::PI
}

/// Double-double complex number.
#[derive(Debug, Clone, Copy)]
pub struct C {
    pub re: F,
    pub im: F,
}

impl C {
    pub fn zero() -> Self {
        Self { re: f(0.0), im: f(0.0) }
    }

    pub fn from64(z: Complex64) -> Self {
        Self { re: f(z.re), im: f(z.im) }
    }

    pub fn add(self, o: C) -> C {
        C { re: self.re + o.re, im: self.im + o.im }
    }

    pub fn sub(self, o: C) -> C {
        C { re: self.re - o.re, im: self.im - o.im }
    }

    pub fn mul(self, o: C) -> C {
        C { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }

    pub fn scale(self, s: F) -> C {
        C { re: self.re * s, im: self.im * s }
    }

    pub fn to64(self) -> Complex64 {
        Complex64::new(self.re.hi(), self.im.hi())
    }
}

/// Orthonormal `T_j(x)` by the recurrence `T_{j+1} = 2x T_j - T_{j-1}`.
pub fn t(j: usize, x: F) -> F {
    let (mut a, mut b) = (f(1.0), x);
    let raw = if j == 0 {
        a
    } else {
        for _ in 1..j {
            let c = f(2.0) * x * b - a;
            a = b;
            b = c;
        }
        b
    };
    let norm = if j == 0 { (f(1.0) / pi()).sqrt() } else { (f(2.0) / pi()).sqrt() };
    raw * norm
}

pub fn kernel(n: usize, v: F, w: F) -> F {
    (0..n).fold(f(0.0), |acc, j| acc + t(j, v) * t(j, w))
}

pub fn nodes(n: usize) -> Vec<f64> {
    (1..=n).map(|k| ((2 * k - 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos()).collect()
}

/// `1 / sum_{j<n} T_j(x_k)^2` at each node.
pub fn cotes(n: usize) -> Vec<F> {
    nodes(n).into_iter().map(|x| f(1.0) / kernel(n, f(x), f(x))).collect()
}

fn abs_pow(v: F, s: u32) -> F {
    v.abs().powi(s as i32)
}

/// Per-axis weights `lambda_k |K(t, a_k)|^s`.
fn axis(n: usize, anchors: &[f64], lambdas: &[F], t0: f64, s: u32) -> Vec<F> {
    anchors.iter().zip(lambdas).map(|(&a, &l)| l * abs_pow(kernel(n, f(t0), f(a)), s)).collect()
}

/// Generalized operator: `sum lambda |K|^s f(z_km) / sum lambda |K|^s`.
pub fn generalized(n: usize, s: u32, values: impl Fn(f64, f64) -> Complex64, z: Complex64) -> Complex64 {
    let x = nodes(n);
    let l = cotes(n);
    let wx = axis(n, &x, &l, z.re, s);
    let wy = axis(n, &x, &l, z.im, s);
    let (mut num, mut den) = (C::zero(), f(0.0));
    for k in 0..n {
        for m in 0..n {
            let w = wx[k] * wy[m];
            num = num.add(C::from64(values(x[k], x[m])).scale(w));
            den += w;
        }
    }
    num.scale(f(1.0) / den).to64()
}

/// Hermite operator with Taylor data `derivs(j, z_km)`.
pub fn hermite(n: usize, s: u32, r: usize, derivs: impl Fn(usize, Complex64) -> Complex64, z: Complex64) -> Complex64 {
    let x = nodes(n);
    let l = cotes(n);
    let wx = axis(n, &x, &l, z.re, s);
    let wy = axis(n, &x, &l, z.im, s);
    let zz = C::from64(z);
    let (mut num, mut den) = (C::zero(), f(0.0));
    for k in 0..n {
        for m in 0..n {
            let node = Complex64::new(x[k], x[m]);
            let h = zz.sub(C::from64(node));
            let mut taylor = C::zero();
            let mut power = C { re: f(1.0), im: f(0.0) };
            let mut fact = f(1.0);
            for j in 0..=r {
                if j > 0 {
                    power = power.mul(h);
                    fact *= f(j as f64);
                }
                taylor = taylor.add(C::from64(derivs(j, node)).mul(power).scale(f(1.0) / fact));
            }
            let w = wx[k] * wy[m];
            num = num.add(taylor.scale(w));
            den += w;
        }
    }
    num.scale(f(1.0) / den).to64()
}

/// Kantorovich operator with cells `[k/n, (k+1)/n]^2`, midpoint anchors,
/// Christoffel anchor weights and exact cell integrals `cell(x0, x1, y0, y1)`.
pub fn kantorovich(n: usize, s: u32, cell: impl Fn(F, F, F, F) -> C, z: Complex64) -> Complex64 {
    let ni = n as i64;
    let anchors: Vec<f64> = (-ni..ni).map(|k| (2 * k + 1) as f64 / (2 * n) as f64).collect();
    let lambdas: Vec<F> = anchors.iter().map(|&a| f(1.0) / kernel(n, f(a), f(a))).collect();
    let wx = axis(n, &anchors, &lambdas, z.re, s);
    let wy = axis(n, &anchors, &lambdas, z.im, s);
    let nf = f(n as f64);
    let (mut num, mut den) = (C::zero(), f(0.0));
    for (a, k) in (-ni..ni).enumerate() {
        for (b, m) in (-ni..ni).enumerate() {
            let w = wx[a] * wy[b];
            let (x0, x1) = (f(k as f64) / nf, f((k + 1) as f64) / nf);
            let (y0, y1) = (f(m as f64) / nf, f((m + 1) as f64) / nf);
            num = num.add(cell(x0, x1, y0, y1).scale(w * nf * nf));
            den += w;
        }
    }
    num.scale(f(1.0) / den).to64()
}

/// `B_{n,s}(z) = sum lambda_k lambda_m |K(x, x_k) K(y, y_m)|^s` with the direct-sum kernel.
pub fn denominator(n: usize, s: u32, z: Complex64) -> f64 {
    let x = nodes(n);
    let l = cotes(n);
    let sx: F = axis(n, &x, &l, z.re, s).into_iter().fold(f(0.0), |a, b| a + b);
    let sy: F = axis(n, &x, &l, z.im, s).into_iter().fold(f(0.0), |a, b| a + b);
    (sx * sy).hi()
}

/// Closed-form `iint u^p v^q` over `[x0, x1] x [y0, y1]`.
pub fn monomial_integral(p: i32, q: i32, x0: F, x1: F, y0: F, y1: F) -> F {
    let px = (x1.powi(p + 1) - x0.powi(p + 1)) / f((p + 1) as f64);
    let qy = (y1.powi(q + 1) - y0.powi(q + 1)) / f((q + 1) as f64);
    px * qy
}
