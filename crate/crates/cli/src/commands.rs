use std::path::Path;

use image::codecs::png::PngEncoder;
use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
use image::{ExtendedColorType, ImageEncoder};
use nevai::grid::{self, EvaluationGrid};
use nevai::imaging::{self, Channel, ComplexImage};
use nevai::metrics::{self, ImageQuality, RateEstimate, ScalarErrors};
use nevai::operator::{self, KantorovichGrid};
use nevai::{ChebyshevBasis, ComplexField, ErrorReport, Family, GridSpec, NamedFunction, OperatorConfig};
use serde_json::json;

use crate::args::{EvalArgs, ImageArgs, ImageFormat, NodesArgs, OperatorArgs, RateArgs, TableArgs, TargetArgs};
use crate::error::{CliError, CliResult};
use crate::output::{num, Csv, Outputs, RunManifest};

/// The function being approximated: a built-in entry or a constant.
#[derive(Debug, Clone)]
pub struct Target {
    pub label: String,
    pub field: ComplexField,
    named: Option<NamedFunction>,
}

impl Target {
    pub fn from_args(args: &TargetArgs) -> CliResult<Self> {
        match (args.function, args.constant) {
            (Some(id), _) => {
                let named = nevai::testbed::lookup(id);
                Ok(Self { label: id.to_string(), field: named.field.clone(), named: Some(named) })
            }
            (None, Some(c)) => Ok(Self {
                label: format!("constant({},{})", c.re, c.im),
                field: ComplexField::constant(c),
                named: None,
            }),
            (None, None) => Err(CliError::Usage("one of --function or --constant is required".into())),
        }
    }

    fn file_stem(&self) -> &str {
        match &self.named {
            Some(n) => n.id.as_str(),
            None => "constant",
        }
    }

    pub fn check_family(&self, family: Family) -> nevai::Result<()> {
        self.named.as_ref().map_or(Ok(()), |n| n.check_family(family))
    }
}

fn config(op: &OperatorArgs, n: usize) -> OperatorConfig {
    OperatorConfig { family: op.operator, n, s: op.s, r: op.r, cell_subdivision: op.cell_subdivision }
}

fn describe_params(cfg: &OperatorConfig) -> String {
    let mut s = format!("operator={} s={}", cfg.family, cfg.s);
    match cfg.family {
        Family::Hermite => s.push_str(&format!(" r={}", cfg.r)),
        Family::Kantorovich => s.push_str(&format!(" cell_subdivision={}", cfg.cell_subdivision)),
        Family::Generalized => {}
    }
    s
}

fn describe(cfg: &OperatorConfig) -> String {
    format!("n={} {}", cfg.n, describe_params(cfg))
}

fn note_operator(manifest: &mut RunManifest, op: &OperatorArgs, target: &Target, spec: &GridSpec) {
    manifest.s = Some(op.s);
    manifest.r = (op.operator == Family::Hermite).then_some(op.r);
    manifest.function = Some(target.label.clone());
    manifest.grid = Some(spec.to_string());
    manifest.flags = json!({
        "operator": op.operator.name(),
        "s": op.s,
        "r": op.r,
        "cell_subdivision": op.cell_subdivision,
        "function": target.label,
        "grid_rows": spec.rows,
        "grid_cols": spec.cols,
        "grid_margin": spec.margin,
    });
}

fn evaluate(cfg: &OperatorConfig, target: &Target, spec: GridSpec) -> CliResult<EvaluationGrid> {
    target.check_family(cfg.family)?;
    let op = operator::build(cfg, &target.field)?;
    Ok(grid::evaluate(op.as_ref(), &target.field, spec)?)
}

#[derive(Debug, Clone)]
pub struct NodesReport {
    pub basis: ChebyshevBasis,
}

pub fn cmd_nodes(args: &NodesArgs, out: &mut Outputs, manifest: &mut RunManifest) -> CliResult<NodesReport> {
    manifest.n = vec![args.n];
    manifest.flags = json!({ "n": args.n });
    let basis = ChebyshevBasis::new(args.n)?;
    let mut csv = Csv::new();
    csv.comment("nevai nodes")
        .comment(format!("n={} nodes x_k = cos((2k-1)pi/(2n)), lambda_k = Cotes number", args.n))
        .header(&["k", "x_k", "lambda_k"]);
    for (k, (x, l)) in basis.nodes().iter().zip(basis.cotes()).enumerate() {
        csv.row([(k + 1).to_string(), num(*x), num(*l)]);
    }
    out.write(&format!("nodes_n{}.csv", args.n), csv.as_str())?;
    Ok(NodesReport { basis })
}

pub fn cmd_eval(args: &EvalArgs, out: &mut Outputs, manifest: &mut RunManifest) -> CliResult<EvaluationGrid> {
    let target = Target::from_args(&args.target)?;
    let spec = args.grid.spec()?;
    let cfg = config(&args.op, args.n);
    note_operator(manifest, &args.op, &target, &spec);
    manifest.n = vec![args.n];
    let ev = evaluate(&cfg, &target, spec)?;
    let mut csv = Csv::new();
    csv.comment("nevai eval")
        .comment(format!("function={} {}", target.label, describe(&cfg)))
        .comment(format!("grid={spec}"))
        .header(&["x", "y", "re_f", "im_f", "re_approx", "im_approx", "abs_err"]);
    let err = ev.abs_err();
    for (i, &x) in ev.xs.iter().enumerate() {
        for (j, &y) in ev.ys.iter().enumerate() {
            let p = ev.index(i, j);
            let (f, a) = (ev.exact[p], ev.approx[p]);
            csv.row([num(x), num(y), num(f.re), num(f.im), num(a.re), num(a.im), num(err[p])]);
        }
    }
    out.write(&format!("eval_{}_{}_n{}.csv", cfg.family, target.file_stem(), args.n), csv.as_str())?;
    Ok(ev)
}

pub fn cmd_table(args: &TableArgs, out: &mut Outputs, manifest: &mut RunManifest) -> CliResult<Vec<(usize, ErrorReport)>> {
    if args.n_list.is_empty() {
        return Err(CliError::Usage("--n-list is empty".into()));
    }
    let target = Target::from_args(&args.target)?;
    let spec = args.grid.spec()?;
    note_operator(manifest, &args.op, &target, &spec);
    manifest.n = args.n_list.clone();
    let mut rows = Vec::with_capacity(args.n_list.len());
    for &n in &args.n_list {
        let cfg = config(&args.op, n);
        rows.push((n, evaluate(&cfg, &target, spec)?.report()?));
    }
    let cfg = config(&args.op, args.n_list[0]);
    let mut csv = Csv::new();
    csv.comment("nevai table")
        .comment(format!("function={} {}", target.label, describe_params(&cfg)))
        .comment(format!("grid={spec} n_points={}", spec.len()))
        .header(&["n", "e_max_re", "e_mean_re", "e_ms_re", "e_max_im", "e_mean_im", "e_ms_im"]);
    for (n, r) in &rows {
        csv.row(std::iter::once(n.to_string()).chain(r.values().iter().map(|v| num(*v))));
    }
    out.write(&format!("table_{}_{}.csv", cfg.family, target.file_stem()), csv.as_str())?;
    Ok(rows)
}

#[derive(Debug, Clone)]
pub struct ContourReport {
    pub rows: usize,
    pub cols: usize,
    pub modulus_f: Vec<f64>,
    pub modulus_op: Vec<f64>,
    /// `| |f| - |Op f| |`.
    pub abs_err: Vec<f64>,
    pub errors: ScalarErrors,
}

pub fn cmd_contour(args: &EvalArgs, out: &mut Outputs, manifest: &mut RunManifest) -> CliResult<ContourReport> {
    let target = Target::from_args(&args.target)?;
    let spec = args.grid.spec()?;
    let cfg = config(&args.op, args.n);
    note_operator(manifest, &args.op, &target, &spec);
    manifest.n = vec![args.n];
    let ev = evaluate(&cfg, &target, spec)?;
    let modulus_f: Vec<f64> = ev.exact.iter().map(|v| v.norm()).collect();
    let modulus_op: Vec<f64> = ev.approx.iter().map(|v| v.norm()).collect();
    let abs_err: Vec<f64> = modulus_f.iter().zip(&modulus_op).map(|(a, b)| (a - b).abs()).collect();
    let errors = ScalarErrors::from_errors(abs_err.iter().copied())?;
    let stem = format!("contour_{}_{}_n{}", cfg.family, target.file_stem(), args.n);
    for (suffix, what, values) in [
        ("modulus_f", "|f|", &modulus_f),
        ("modulus_op", "|Op f|", &modulus_op),
        ("abs_err", "| |f| - |Op f| |", &abs_err),
    ] {
        let mut csv = Csv::new();
        csv.comment(format!("nevai contour {what}"))
            .comment(format!("function={} {}", target.label, describe(&cfg)))
            .comment(format!("grid={spec}; row i is Re z = x_i, column j is Im z = y_j"));
        for row in values.chunks(spec.cols) {
            csv.row(row.iter().map(|v| num(*v)));
        }
        out.write(&format!("{stem}_{suffix}.csv"), csv.as_str())?;
    }
    let mut summary = Csv::new();
    summary
        .comment("nevai contour error summary")
        .comment(format!("function={} {}", target.label, describe(&cfg)))
        .comment(format!("grid={spec}"))
        .header(&["max", "mean", "ms"])
        .row([num(errors.max), num(errors.mean), num(errors.ms)]);
    out.write(&format!("{stem}_summary.csv"), summary.as_str())?;
    Ok(ContourReport { rows: spec.rows, cols: spec.cols, modulus_f, modulus_op, abs_err, errors })
}

#[derive(Debug, Clone)]
pub struct ImageReport {
    pub original: ComplexImage,
    pub reconstructed: ComplexImage,
    pub amplitude: ImageQuality,
    pub phase: ImageQuality,
    /// Windowed SSIM `(amplitude, phase)` when requested.
    pub windowed_ssim: Option<(f64, f64)>,
}

pub fn read_amplitude(path: &Path) -> CliResult<(usize, usize, Vec<u8>)> {
    let img = image::ImageReader::open(path)
        .map_err(|e| CliError::io(path, e))?
        .with_guessed_format()
        .map_err(|e| CliError::io(path, e))?
        .decode()
        .map_err(|e| CliError::io(path, e))?
        .to_luma8();
    let (w, h) = img.dimensions();
    Ok((h as usize, w as usize, img.into_raw()))
}

pub fn encode_gray8(format: ImageFormat, rows: usize, cols: usize, pixels: &[u8]) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    let result = match format {
        ImageFormat::Png => PngEncoder::new(&mut buf).write_image(pixels, cols as u32, rows as u32, ExtendedColorType::L8),
        ImageFormat::Pgm => PnmEncoder::new(&mut buf)
            .with_subtype(PnmSubtype::Graymap(SampleEncoding::Binary))
            .write_image(pixels, cols as u32, rows as u32, ExtendedColorType::L8),
    };
    result.map_err(|e| CliError::io(format!("<{} encoder>", format.extension()), e))?;
    Ok(buf)
}

pub fn cmd_image(args: &ImageArgs, out: &mut Outputs, manifest: &mut RunManifest) -> CliResult<ImageReport> {
    manifest.n = vec![args.n];
    manifest.s = Some(args.s);
    manifest.image = Some(args.amplitude.display().to_string());
    manifest.flags = json!({
        "amplitude": args.amplitude.display().to_string(),
        "phase": args.phase.as_ref().map(|p| p.display().to_string()),
        "n": args.n,
        "s": args.s,
        "out_shape": args.out_shape.map(|(r, c)| format!("{r}x{c}")),
        "format": args.format.extension(),
        "ssim_window": args.ssim_window,
    });
    let (rows, cols, pixels) = read_amplitude(&args.amplitude)?;
    let phase = match &args.phase {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            let (pr, pc, values) = imaging::parse_phase_csv(&text)?;
            if (pr, pc) != (rows, cols) {
                return Err(nevai::NevaiError::ShapeMismatch { left: (rows, cols), right: (pr, pc) }.into());
            }
            Some(values)
        }
        None => None,
    };
    let original = ComplexImage::from_gray8(rows, cols, &pixels, phase)?;
    let shape = args.out_shape.unwrap_or((rows, cols));
    manifest.grid = Some(format!("{}x{} pixel centers", shape.0, shape.1));
    let reconstructed = imaging::reconstruct(&original, args.n, args.s, shape)?;

    // quality needs matching shapes; compare against the input resampled at the output pixel centers
    let reference = if shape == (rows, cols) { original.clone() } else { resample(&original, shape)? };
    let amplitude = imaging::channel_quality(&reference, &reconstructed, Channel::Amplitude)?;
    let phase_q = imaging::channel_quality(&reference, &reconstructed, Channel::Phase)?;
    let windowed_ssim = match args.ssim_window {
        Some(w) => {
            let ch = |c: Channel| {
                metrics::ssim_windowed(reference.channel(c), reconstructed.channel(c), shape, c.dynamic_range(), w)
            };
            Some((ch(Channel::Amplitude)?, ch(Channel::Phase)?))
        }
        None => None,
    };

    let stem = format!("reconstructed_n{}", args.n);
    let encoded = encode_gray8(args.format, shape.0, shape.1, &reconstructed.amplitude_gray8())?;
    out.write(&format!("{stem}_amplitude.{}", args.format.extension()), encoded)?;
    out.write(&format!("{stem}_phase.csv"), imaging::format_phase_csv(shape.0, shape.1, reconstructed.phase()))?;

    let mut text = String::new();
    text.push_str(&format!("n={}\ns={}\nshape={}x{}\n", args.n, args.s, shape.0, shape.1));
    for (name, q) in [("amplitude", &amplitude), ("phase", &phase_q)] {
        text.push_str(&format!(
            "{name}.ssim={}\n{name}.psnr_db={}\n{name}.rmse={}\n{name}.dynamic_range_L={}\n",
            num(q.ssim),
            num(q.psnr_db),
            num(q.rmse),
            num(q.dynamic_range_l)
        ));
    }
    if let Some((a, p)) = windowed_ssim {
        text.push_str(&format!("amplitude.ssim_windowed={}\nphase.ssim_windowed={}\n", num(a), num(p)));
    }
    text.push_str(&format!("k1={}\nk2={}\n", amplitude.k1, amplitude.k2));
    out.write(&format!("{stem}_metrics.txt"), text)?;

    let mut csv = Csv::new();
    csv.comment("nevai image metrics")
        .comment(format!("n={} s={} shape={}x{}", args.n, args.s, shape.0, shape.1))
        .header(&["channel", "ssim", "psnr_db", "rmse", "dynamic_range_L"]);
    for (name, q) in [("amplitude", &amplitude), ("phase", &phase_q)] {
        csv.row([name.to_string(), num(q.ssim), num(q.psnr_db), num(q.rmse), num(q.dynamic_range_l)]);
    }
    out.write(&format!("{stem}_metrics.csv"), csv.as_str())?;
    Ok(ImageReport { original: reference, reconstructed, amplitude, phase: phase_q, windowed_ssim })
}

/// Nearest-pixel resampling of both channels onto `shape`'s pixel centers.
fn resample(img: &ComplexImage, shape: (usize, usize)) -> CliResult<ComplexImage> {
    let amp = imaging::embed(img, Channel::Amplitude);
    let ph = imaging::embed(img, Channel::Phase);
    let (xs, ys) = (imaging::pixel_centers(shape.0), imaging::pixel_centers(shape.1));
    let mut a = Vec::with_capacity(shape.0 * shape.1);
    let mut p = Vec::with_capacity(shape.0 * shape.1);
    for &x in &xs {
        for &y in &ys {
            a.push(amp.eval(x, y));
            p.push(ph.eval(x, y));
        }
    }
    Ok(ComplexImage::new(shape.0, shape.1, a, p)?)
}

#[derive(Debug, Clone)]
pub struct RateReport {
    pub ns: Vec<usize>,
    pub sups: Vec<f64>,
    pub estimate: RateEstimate,
}

pub fn cmd_rate(args: &RateArgs, out: &mut Outputs, manifest: &mut RunManifest) -> CliResult<RateReport> {
    let spec = args.spec()?;
    manifest.n = args.n_list.clone();
    manifest.s = Some(args.s);
    manifest.grid = Some(spec.to_string());
    manifest.function = Some("psi(w) = |w - z|".into());
    manifest.flags = json!({
        "operator": "kantorovich",
        "s": args.s,
        "n_list": args.n_list,
        "grid_rows": spec.rows,
        "grid_cols": spec.cols,
        "grid_margin": spec.margin,
        "points_per_axis": args.points_per_axis,
    });
    if args.n_list.len() < 4 {
        return Err(CliError::Usage(format!("--n-list needs at least 4 values, got {}", args.n_list.len())));
    }
    let (xs, ys) = (spec.xs(), spec.ys());
    let mut sups = Vec::with_capacity(args.n_list.len());
    for &n in &args.n_list {
        let cfg = OperatorConfig::kantorovich(n, args.s).with_cell_subdivision(args.points_per_axis);
        cfg.validate()?;
        let grid = KantorovichGrid::new(n)?;
        sups.push(operator::distance_sup(&grid, args.s, &xs, &ys, args.points_per_axis)?);
    }
    let estimate = metrics::fit_rate(&args.n_list, &sups)?;
    let mut csv = Csv::new();
    csv.comment("nevai rate: sup_z K_{n,s}(|. - z|, z)")
        .comment(format!("operator=kantorovich s={} points_per_axis={}", args.s, args.points_per_axis))
        .comment(format!("grid={spec}"))
        .header(&["n", "sup"]);
    for (n, e) in args.n_list.iter().zip(&sups) {
        csv.row([n.to_string(), num(*e)]);
    }
    csv.comment(format!("exponent={}", num(estimate.exponent)))
        .comment(format!("log_factor_detected={}", estimate.log_factor_detected));
    out.write(&format!("rate_kantorovich_s{}.csv", args.s), csv.as_str())?;
    Ok(RateReport { ns: args.n_list.clone(), sups, estimate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::GridArgs;
    use nevai::Complex64;

    fn op(family: Family) -> OperatorArgs {
        OperatorArgs { operator: family, s: 2.0, r: 2, cell_subdivision: 4 }
    }

    #[test]
    fn constant_target_passes_every_family() {
        let t = Target::from_args(&TargetArgs { function: None, constant: Some(Complex64::new(1.0, -1.0)) }).unwrap();
        for f in [Family::Generalized, Family::Kantorovich, Family::Hermite] {
            assert!(t.check_family(f).is_ok());
        }
        let g = Target::from_args(&TargetArgs { function: Some(nevai::FunctionId::G2), constant: None }).unwrap();
        assert!(g.check_family(Family::Hermite).is_err());
    }

    #[test]
    fn eval_writes_csv() {
        let dir = tempfile::tempdir().unwrap();
        let mut out = Outputs::new(dir.path());
        let mut m = RunManifest::new("eval", vec![]);
        let args = EvalArgs {
            n: 4,
            op: op(Family::Kantorovich),
            target: TargetArgs { function: None, constant: Some(Complex64::new(0.25, 2.0)) },
            grid: GridArgs { grid_size: 5, grid_margin: None },
        };
        let ev = cmd_eval(&args, &mut out, &mut m).unwrap();
        assert!(ev.abs_err().iter().all(|&e| e < 1e-10));
        let text = std::fs::read_to_string(&out.written()[0]).unwrap();
        assert!(text.starts_with("# nevai eval\n"));
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 26);
    }

    #[test]
    fn rate_rejects_short_lists() {
        let dir = tempfile::tempdir().unwrap();
        let mut out = Outputs::new(dir.path());
        let mut m = RunManifest::new("rate", vec![]);
        let args = RateArgs { s: 3.0, n_list: vec![4, 8, 16], grid_size: 5, grid_margin: None, points_per_axis: 2 };
        let err = cmd_rate(&args, &mut out, &mut m).unwrap_err();
        assert_eq!(err.exit_code(), crate::error::EXIT_USAGE);
    }
}
