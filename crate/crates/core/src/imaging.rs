//! Complex images (amplitude + phase), their step-function embedding into
//! `X`, and reconstruction with the Kantorovich-type operator.
//!
//! Pixel `(i, j)` (1-based) is the half-open block `(i-1, i] x (j-1, j]` of
//! index space, mapped affinely so that rows cover `Re z` and columns cover
//! `Im z` of `[-1, 1] x [-1, 1]`.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{NevaiError, Result};
use crate::field::{BreakLine, ComplexField};
use crate::metrics::{self, ImageQuality};
use crate::operator::{Approximant, CellTable, KantorovichGrid, KantorovichOperator};

/// Wrap an angle onto `[-pi, pi]`.
pub fn wrap_phase(p: f64) -> f64 {
    if (-PI..=PI).contains(&p) {
        return p;
    }
    let w = (p + PI).rem_euclid(2.0 * PI) - PI;
    if w < -PI {
        w + 2.0 * PI
    } else {
        w
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    Amplitude,
    Phase,
}

impl Channel {
    /// Dynamic range used for SSIM and as PSNR `MAX`.
    pub fn dynamic_range(self) -> f64 {
        match self {
            Channel::Amplitude => 1.0,
            Channel::Phase => 2.0 * PI,
        }
    }
}

/// Amplitude in `[0, 1]` and phase in `[-pi, pi]`, both row-major `height x width`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexImage {
    height: usize,
    width: usize,
    amplitude: Vec<f64>,
    phase: Vec<f64>,
}

impl ComplexImage {
    /// Phase values are wrapped onto `[-pi, pi]`; amplitude outside `[0, 1]` is rejected.
    pub fn new(height: usize, width: usize, amplitude: Vec<f64>, phase: Vec<f64>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(NevaiError::InvalidConfig("image dimensions must be positive".into()));
        }
        let len = height * width;
        if amplitude.len() != len {
            return Err(NevaiError::ShapeMismatch { left: (height, width), right: (amplitude.len(), 1) });
        }
        if phase.len() != len {
            return Err(NevaiError::ShapeMismatch { left: (height, width), right: (phase.len(), 1) });
        }
        if let Some(bad) = amplitude.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return Err(NevaiError::InvalidConfig(format!("amplitude {bad} outside [0, 1]")));
        }
        if phase.iter().any(|p| !p.is_finite()) {
            return Err(NevaiError::InvalidConfig("phase must be finite".into()));
        }
        let phase = phase.into_iter().map(wrap_phase).collect();
        Ok(Self { height, width, amplitude, phase })
    }

    /// Zero-phase image.
    pub fn from_amplitude(height: usize, width: usize, amplitude: Vec<f64>) -> Result<Self> {
        Self::new(height, width, amplitude, vec![0.0; height * width])
    }

    /// 8-bit grayscale, normalized by 255.
    pub fn from_gray8(height: usize, width: usize, pixels: &[u8], phase: Option<Vec<f64>>) -> Result<Self> {
        let amplitude = pixels.iter().map(|&p| p as f64 / 255.0).collect();
        let phase = phase.unwrap_or_else(|| vec![0.0; height * width]);
        Self::new(height, width, amplitude, phase)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitude(&self) -> &[f64] {
        &self.amplitude
    }

    pub fn phase(&self) -> &[f64] {
        &self.phase
    }

    pub fn channel(&self, channel: Channel) -> &[f64] {
        match channel {
            Channel::Amplitude => &self.amplitude,
            Channel::Phase => &self.phase,
        }
    }

    /// Amplitude quantized back to 8 bits.
    pub fn amplitude_gray8(&self) -> Vec<u8> {
        self.amplitude.iter().map(|a| (a * 255.0).round().clamp(0.0, 255.0) as u8).collect()
    }

    /// `A e^{i phi}` per pixel.
    pub fn complex_pixels(&self) -> Vec<Complex64> {
        self.amplitude
            .iter()
            .zip(&self.phase)
            .map(|(&a, &p)| Complex64::from_polar(a, p))
            .collect()
    }
}

/// Piecewise-constant field `sum c_ij 1_ij(x, y)` on `X`.
#[derive(Debug, Clone)]
pub struct StepField {
    rows: usize,
    cols: usize,
    values: Arc<Vec<f64>>,
    channel: Option<Channel>,
}

impl StepField {
    pub fn new(img: &ComplexImage, channel: Channel) -> Self {
        Self {
            rows: img.height,
            cols: img.width,
            values: Arc::new(img.channel(channel).to_vec()),
            channel: Some(channel),
        }
    }

    /// Step field over arbitrary real pixel values (row-major).
    ///
    /// Panics if `values.len() != rows * cols` or a dimension is zero.
    pub fn from_values(rows: usize, cols: usize, values: Vec<f64>) -> Self {
        assert!(rows > 0 && cols > 0 && values.len() == rows * cols, "bad step field shape");
        Self { rows, cols, values: Arc::new(values), channel: None }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn channel(&self) -> Option<Channel> {
        self.channel
    }

    /// `c_ij` with 0-based `i, j`.
    #[inline]
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.cols + j]
    }

    /// 0-based pixel index along an axis of `count` pixels containing `t`,
    /// honoring the half-open `(i-1, i]` convention. `t = -1` falls into the first pixel.
    fn pixel_index(count: usize, t: f64) -> usize {
        let s = (t + 1.0) * count as f64 / 2.0;
        let idx = s.ceil() as i64 - 1;
        idx.clamp(0, count as i64 - 1) as usize
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.value(Self::pixel_index(self.rows, x), Self::pixel_index(self.cols, y))
    }

    /// The step field as a real-valued, integrable-only [`ComplexField`] with
    /// break lines on every pixel edge.
    pub fn to_field(&self) -> ComplexField {
        let me = self.clone();
        let re_lines = (1..self.rows).map(|i| BreakLine::Re(-1.0 + 2.0 * i as f64 / self.rows as f64));
        let im_lines = (1..self.cols).map(|j| BreakLine::Im(-1.0 + 2.0 * j as f64 / self.cols as f64));
        ComplexField::new(move |x, y| Complex64::new(me.eval(x, y), 0.0))
            .integrable_only()
            .with_break_lines(re_lines.chain(im_lines))
    }
}

/// Embed one channel of `img` as a step field on `X`.
pub fn embed(img: &ComplexImage, channel: Channel) -> StepField {
    StepField::new(img, channel)
}

/// Pixel-center coordinates of an axis with `count` pixels over `[-1, 1]`.
pub fn pixel_centers(count: usize) -> Vec<f64> {
    (0..count).map(|i| -1.0 + (2 * i + 1) as f64 / count as f64).collect()
}

/// Reconstruct amplitude and phase independently with `K_{n,s}` sampled at
/// the pixel centers of `out_shape = (rows, cols)`.
///
/// Amplitude is clamped to `[0, 1]` and phase wrapped to `[-pi, pi]` afterwards.
pub fn reconstruct(img: &ComplexImage, n: usize, s: f64, out_shape: (usize, usize)) -> Result<ComplexImage> {
    let (rows, cols) = out_shape;
    if rows == 0 || cols == 0 {
        return Err(NevaiError::InvalidConfig("output shape must be positive".into()));
    }
    let grid = KantorovichGrid::new(n)?;
    let xs = pixel_centers(rows);
    let ys = pixel_centers(cols);
    let mut channels = Vec::with_capacity(2);
    for channel in [Channel::Amplitude, Channel::Phase] {
        let step = embed(img, channel);
        let table = CellTable::from_step(&grid, &step);
        let op = KantorovichOperator::new(grid.clone(), s, table)?;
        let values = op.eval_grid(&xs, &ys)?;
        channels.push(values.into_iter().map(|v| v.re).collect::<Vec<f64>>());
    }
    let phase = channels.pop().unwrap().into_iter().map(wrap_phase).collect();
    let amplitude = channels.pop().unwrap().into_iter().map(|a| a.clamp(0.0, 1.0)).collect();
    ComplexImage::new(rows, cols, amplitude, phase)
}

/// Quality of `reconstructed` against `original` for one channel.
pub fn channel_quality(original: &ComplexImage, reconstructed: &ComplexImage, channel: Channel) -> Result<ImageQuality> {
    let shape_a = (original.height, original.width);
    let shape_b = (reconstructed.height, reconstructed.width);
    if shape_a != shape_b {
        return Err(NevaiError::ShapeMismatch { left: shape_a, right: shape_b });
    }
    metrics::image_quality(
        original.channel(channel),
        reconstructed.channel(channel),
        shape_a,
        channel.dynamic_range(),
    )
}

/// Parse a phase matrix: first line `rows,cols`, then `rows` lines of `cols`
/// comma-separated radians. Lines starting with `#` are skipped.
pub fn parse_phase_csv(text: &str) -> Result<(usize, usize, Vec<f64>)> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| NevaiError::InvalidConfig("empty phase file".into()))?;
    let dims: Vec<usize> = header
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| NevaiError::InvalidConfig(format!("bad phase header `{header}`")))?;
    let [rows, cols] = dims[..] else {
        return Err(NevaiError::InvalidConfig(format!("bad phase header `{header}`")));
    };
    let mut values = Vec::with_capacity(rows * cols);
    for (r, line) in lines.enumerate() {
        let row: Vec<f64> = line
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| NevaiError::InvalidConfig(format!("bad phase value on data row {}", r + 1)))?;
        if row.len() != cols {
            return Err(NevaiError::ShapeMismatch { left: (rows, cols), right: (r + 1, row.len()) });
        }
        values.extend(row);
    }
    if values.len() != rows * cols {
        return Err(NevaiError::ShapeMismatch { left: (rows, cols), right: (values.len() / cols.max(1), cols) });
    }
    Ok((rows, cols, values))
}

/// Inverse of [`parse_phase_csv`], 17 significant digits.
pub fn format_phase_csv(rows: usize, cols: usize, values: &[f64]) -> String {
    let mut out = format!("{rows},{cols}\n");
    for r in 0..rows {
        for c in 0..cols {
            if c > 0 {
                out.push(',');
            }
            let _ = write!(out, "{:.16e}", values[r * cols + c]);
        }
        out.push('\n');
    }
    out
}

/// Bundled synthetic test images.
pub mod synthetic {
    use super::*;

    /// Diagonal ramp from 0 at the first pixel to 1 at the last.
    pub fn gradient(size: usize) -> ComplexImage {
        let amp = (0..size * size)
            .map(|p| {
                let (i, j) = (p / size, p % size);
                ((i + j) as f64 / (2 * (size - 1).max(1)) as f64).clamp(0.0, 1.0)
            })
            .collect();
        ComplexImage::from_amplitude(size, size, amp).expect("valid gradient")
    }

    /// Head-like phantom: nested ellipses with soft edges over a smooth
    /// background, with a phase map combining a tilt and a vortex-free bump.
    pub fn phantom(size: usize) -> ComplexImage {
        // (center x, center y, semi-axis a, semi-axis b, rotation, intensity)
        const ELLIPSES: [(f64, f64, f64, f64, f64, f64); 6] = [
            (0.0, 0.0, 0.72, 0.92, 0.0, 0.55),
            (0.0, -0.02, 0.66, 0.85, 0.0, -0.2),
            (0.22, 0.0, 0.14, 0.36, -0.3, -0.15),
            (-0.22, 0.0, 0.18, 0.4, 0.3, -0.15),
            (0.0, 0.35, 0.22, 0.25, 0.0, 0.25),
            (0.1, -0.55, 0.08, 0.06, 0.0, 0.35),
        ];
        let centers = pixel_centers(size);
        let mut amp = Vec::with_capacity(size * size);
        let mut phase = Vec::with_capacity(size * size);
        for &x in &centers {
            for &y in &centers {
                let mut a = 0.1 + 0.05 * (1.0 - 0.5 * (x * x + y * y));
                for &(cx, cy, ax, by, rot, val) in &ELLIPSES {
                    let (c, s) = (rot.cos(), rot.sin());
                    let (dx, dy) = (x - cx, y - cy);
                    let u = (c * dx + s * dy) / ax;
                    let v = (-s * dx + c * dy) / by;
                    let r = (u * u + v * v).sqrt();
                    // soft edge of width ~ 0.04 in normalized radius
                    let inside = 0.5 * (1.0 - ((r - 1.0) / 0.04).tanh());
                    a += val * inside;
                }
                amp.push(a.clamp(0.0, 1.0));
                phase.push(wrap_phase(1.2 * x - 0.8 * y + 1.5 * (-(x * x + y * y) / 0.3).exp()));
            }
        }
        ComplexImage::new(size, size, amp, phase).expect("valid phantom")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_is_idempotent_and_in_range() {
        for p in [-10.0, -PI, -3.0, 0.0, 2.0, PI, 4.0, 7.5, 100.0] {
            let w = wrap_phase(p);
            assert!((-PI..=PI).contains(&w));
            assert_eq!(wrap_phase(w), w);
            assert!(((p - w) / (2.0 * PI)).fract().abs() < 1e-9 || ((p - w) / (2.0 * PI)).fract().abs() > 1.0 - 1e-9);
        }
    }

    #[test]
    fn image_validation() {
        assert!(ComplexImage::from_amplitude(1, 1, vec![1.5]).is_err());
        assert!(ComplexImage::from_amplitude(2, 2, vec![0.5; 3]).is_err());
        let img = ComplexImage::new(1, 2, vec![0.1, 0.2], vec![4.0, -4.0]).unwrap();
        assert!(img.phase().iter().all(|p| p.abs() <= PI));
    }

    #[test]
    fn single_pixel_embedding_is_constant() {
        let img = ComplexImage::from_amplitude(1, 1, vec![0.5]).unwrap();
        let f = embed(&img, Channel::Amplitude);
        for (x, y) in [(-1.0, -1.0), (0.0, 0.3), (1.0, 1.0), (0.99, -0.42)] {
            assert_eq!(f.eval(x, y), 0.5);
        }
    }

    #[test]
    fn pixel_center_lookup() {
        let img = ComplexImage::from_amplitude(2, 2, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let f = embed(&img, Channel::Amplitude);
        // pixel (1, 2) 1-based: x in (-1, 0], y in (0, 1]
        assert_eq!(f.eval(-0.5, 0.5), 0.2);
        assert_eq!(f.eval(0.5, -0.5), 0.3);
    }

    #[test]
    fn edges_follow_half_open_cells() {
        // direct indicator oracle: (i-1, i] in index space
        let u = 4usize;
        let vals: Vec<f64> = (0..u * u).map(|p| p as f64).collect();
        let f = StepField::from_values(u, u, vals.clone());
        let indicator = |t: f64| -> usize {
            let s = (t + 1.0) * u as f64 / 2.0;
            (1..=u).find(|&i| s > (i - 1) as f64 && s <= i as f64).unwrap_or(1) - 1
        };
        for edge in [-0.5, 0.0, 0.5] {
            for off in [-1e-12, 0.0, 1e-12] {
                let t = edge + off;
                let (i, j) = (indicator(t), indicator(0.3));
                assert_eq!(f.eval(t, 0.3), vals[i * u + j], "t={t}");
            }
        }
        assert_eq!(f.eval(0.0, 0.3), vals[u + 2]);
    }

    #[test]
    fn phase_csv_round_trip() {
        let vals = vec![0.1, -3.0, 2.5, 0.0, 1.0, -1.0];
        let text = format_phase_csv(2, 3, &vals);
        assert!(text.starts_with("2,3\n"));
        let (r, c, back) = parse_phase_csv(&text).unwrap();
        assert_eq!((r, c), (2, 3));
        assert_eq!(back, vals);
        assert!(parse_phase_csv("2,3\n1,2,3\n").is_err());
        assert!(parse_phase_csv("2,x\n").is_err());
    }

    #[test]
    fn constant_image_is_reproduced() {
        let img = ComplexImage::new(6, 5, vec![0.37; 30], vec![-1.2; 30]).unwrap();
        let rec = reconstruct(&img, 7, 2.0, (6, 5)).unwrap();
        for (a, b) in img.amplitude().iter().zip(rec.amplitude()) {
            assert!((a - b).abs() < 1e-10);
        }
        for (a, b) in img.phase().iter().zip(rec.phase()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn reconstruction_stays_in_range() {
        let img = synthetic::phantom(24);
        let rec = reconstruct(&img, 9, 2.0, (17, 30)).unwrap();
        assert_eq!((rec.height(), rec.width()), (17, 30));
        assert!(rec.amplitude().iter().all(|a| (0.0..=1.0).contains(a)));
        assert!(rec.phase().iter().all(|p| p.abs() <= PI));
    }
}
