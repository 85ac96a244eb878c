//! wasm-bindgen surface for the static page in `www/`.
//!
//! Everything here is a thin wrapper: parse the page's string/number inputs,
//! call into `nevai`, hand flat arrays back to JavaScript.

use nevai::grid::{self, GridSpec};
use nevai::imaging::{self, synthetic};
use nevai::{operator, testbed, Channel, ChebyshevBasis, Family, FunctionId, OperatorConfig};
use wasm_bindgen::prelude::*;

fn js_err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

/// Operator values on a square grid next to the exact function.
#[wasm_bindgen]
pub struct Surface {
    size: usize,
    abs_err: Vec<f64>,
    modulus_f: Vec<f64>,
    modulus_op: Vec<f64>,
    e_max: f64,
    e_mean: f64,
}

#[wasm_bindgen]
impl Surface {
    #[wasm_bindgen(getter)]
    pub fn size(&self) -> usize {
        self.size
    }

    /// Row-major `|f - Op f|`, rows indexed by Re z.
    #[wasm_bindgen(js_name = absErr)]
    pub fn abs_err(&self) -> Vec<f64> {
        self.abs_err.clone()
    }

    #[wasm_bindgen(js_name = modulusF)]
    pub fn modulus_f(&self) -> Vec<f64> {
        self.modulus_f.clone()
    }

    #[wasm_bindgen(js_name = modulusOp)]
    pub fn modulus_op(&self) -> Vec<f64> {
        self.modulus_op.clone()
    }

    #[wasm_bindgen(getter, js_name = eMax)]
    pub fn e_max(&self) -> f64 {
        self.e_max
    }

    #[wasm_bindgen(getter, js_name = eMean)]
    pub fn e_mean(&self) -> f64 {
        self.e_mean
    }
}

pub fn surface_native(family: &str, function: &str, n: usize, s: f64, r: usize, size: usize) -> Result<Surface, String> {
    let family: Family = family.parse().map_err(|e: nevai::NevaiError| e.to_string())?;
    let id: FunctionId = function.parse().map_err(|e: nevai::NevaiError| e.to_string())?;
    let target = testbed::lookup(id);
    target.check_family(family).map_err(|e| e.to_string())?;
    let cfg = match family {
        Family::Generalized => OperatorConfig::generalized(n, s),
        Family::Kantorovich => OperatorConfig::kantorovich(n, s),
        Family::Hermite => OperatorConfig::hermite(n, s, r),
    };
    let op = operator::build(&cfg, &target.field).map_err(|e| e.to_string())?;
    let ev = grid::evaluate(op.as_ref(), &target.field, GridSpec::table(size)).map_err(|e| e.to_string())?;
    let abs_err = ev.abs_err();
    let e_max = abs_err.iter().cloned().fold(0.0, f64::max);
    let e_mean = abs_err.iter().sum::<f64>() / abs_err.len() as f64;
    Ok(Surface {
        size,
        modulus_f: ev.exact.iter().map(|v| v.norm()).collect(),
        modulus_op: ev.approx.iter().map(|v| v.norm()).collect(),
        abs_err,
        e_max,
        e_mean,
    })
}

#[wasm_bindgen]
pub fn surface(family: &str, function: &str, n: usize, s: f64, r: usize, size: usize) -> Result<Surface, JsError> {
    surface_native(family, function, n, s, r, size).map_err(js_err)
}

/// `[x_0, ..., x_{n-1}]` followed by `[lambda_0, ..., lambda_{n-1}]`.
#[wasm_bindgen]
pub fn nodes(n: usize) -> Result<Vec<f64>, JsError> {
    let b = ChebyshevBasis::new(n).map_err(js_err)?;
    Ok(b.nodes().iter().chain(b.cotes()).copied().collect())
}

/// Normalized weight `lambda_k |K_n(x, x_k)|^s` of node `k` sampled on `samples`
/// points of [-1, 1]; equals 1 at `x = x_k` when s is any positive power.
pub fn kernel_curve_native(n: usize, k: usize, s: f64, samples: usize) -> Result<Vec<f64>, String> {
    let b = ChebyshevBasis::new(n).map_err(|e| e.to_string())?;
    let xk = *b.nodes().get(k).ok_or_else(|| format!("node index {k} out of range for n = {n}"))?;
    let diag = b.cd_kernel(xk, xk);
    let samples = samples.max(2);
    Ok((0..samples)
        .map(|i| {
            let x = -1.0 + 2.0 * i as f64 / (samples - 1) as f64;
            (b.cd_kernel(x, xk) / diag).abs().powf(s)
        })
        .collect())
}

#[wasm_bindgen(js_name = kernelCurve)]
pub fn kernel_curve(n: usize, k: usize, s: f64, samples: usize) -> Result<Vec<f64>, JsError> {
    kernel_curve_native(n, k, s, samples).map_err(js_err)
}

#[wasm_bindgen]
pub struct Reconstruction {
    size: usize,
    original: Vec<u8>,
    reconstructed: Vec<u8>,
    ssim: f64,
    psnr_db: f64,
    rmse: f64,
}

#[wasm_bindgen]
impl Reconstruction {
    #[wasm_bindgen(getter)]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn original(&self) -> Vec<u8> {
        self.original.clone()
    }

    pub fn reconstructed(&self) -> Vec<u8> {
        self.reconstructed.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn ssim(&self) -> f64 {
        self.ssim
    }

    #[wasm_bindgen(getter, js_name = psnrDb)]
    pub fn psnr_db(&self) -> f64 {
        self.psnr_db
    }

    #[wasm_bindgen(getter)]
    pub fn rmse(&self) -> f64 {
        self.rmse
    }
}

pub fn reconstruct_native(size: usize, n: usize, s: f64) -> Result<Reconstruction, String> {
    let img = synthetic::phantom(size);
    let rec = imaging::reconstruct(&img, n, s, (size, size)).map_err(|e| e.to_string())?;
    let q = imaging::channel_quality(&img, &rec, Channel::Amplitude).map_err(|e| e.to_string())?;
    Ok(Reconstruction {
        size,
        original: img.amplitude_gray8(),
        reconstructed: rec.amplitude_gray8(),
        ssim: q.ssim,
        psnr_db: q.psnr_db,
        rmse: q.rmse,
    })
}

/// Kantorovich reconstruction of the built-in phantom at `size x size`.
#[wasm_bindgen]
pub fn reconstruct(size: usize, n: usize, s: f64) -> Result<Reconstruction, JsError> {
    reconstruct_native(size, n, s).map_err(js_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_shapes() {
        let s = surface_native("nevai", "f1", 8, 2.0, 0, 21).unwrap();
        assert_eq!(s.abs_err.len(), 441);
        assert!(s.e_max >= s.e_mean && s.e_mean > 0.0);
        assert!(surface_native("hermite", "f1", 8, 2.0, 2, 21).is_err());
        assert!(surface_native("bogus", "f1", 8, 2.0, 2, 21).is_err());
    }

    #[test]
    fn kernel_curve_peaks_at_node() {
        // n = 3 has the node x_1 = 0 at the middle sample of 201
        let c = kernel_curve_native(3, 1, 2.0, 201).unwrap();
        assert!((c[100] - 1.0).abs() < 1e-12);
        assert!(kernel_curve_native(3, 3, 2.0, 10).is_err());
    }

    #[test]
    fn reconstruction_metrics() {
        let r = reconstruct_native(32, 20, 2.0).unwrap();
        assert_eq!(r.original.len(), 1024);
        assert_eq!(r.reconstructed.len(), 1024);
        assert!(r.ssim > 0.5 && r.ssim <= 1.0);
    }
}
