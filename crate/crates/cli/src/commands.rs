use std::f64::consts::PI;
use std::fmt::Write as _;

use farfield::expansion::{build_coeff_table, eval_series};
use farfield::ndim::{green_nd_closed, green_nd_multipole, multipole_degree_for, DimParams};
use farfield::oracle::{convergence_slope, eval_j_direct, QuadratureSpec};
use farfield::packets::{
    build_overlap, deficit_rho0, in_validity_window, negative_upsilon_region, OverlapInputs,
};
use farfield::vec3;
use farfield::{Direction, PhiModel};
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::format::{fmt_float, to_json, Table};
use crate::{CoeffsArgs, DeficitArgs, DirectionArgs, Format, ModelArgs, NdimArgs, RegionsArgs, SeriesArgs};

/// Text for stdout plus warnings for stderr. Nothing is printed until a
/// command has fully succeeded.
pub struct Output {
    pub stdout: String,
    pub warnings: Vec<String>,
}

impl From<String> for Output {
    fn from(stdout: String) -> Self {
        Self { stdout, warnings: Vec::new() }
    }
}

fn read_file(path: &std::path::Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_model(args: &ModelArgs) -> CliResult<PhiModel> {
    let text = match (&args.model, &args.model_json) {
        (Some(path), None) => read_file(path)?,
        (None, Some(inline)) => inline.clone(),
        _ => return Err(CliError::Input("exactly one of --model or --model-json is required".into())),
    };
    Ok(PhiModel::from_json(&text)?)
}

fn direction(args: &DirectionArgs) -> CliResult<Direction> {
    let n = match &args.direction {
        Some(v) => Direction::from_vector([v[0], v[1], v[2]]),
        None => Direction::new(args.theta, args.phi),
    };
    n.map_err(|e| CliError::Input(e.to_string()))
}

fn positive(name: &str, v: f64) -> CliResult<f64> {
    if !v.is_finite() || v <= 0.0 {
        return Err(CliError::Input(format!("{name} must be positive and finite, got {v}")));
    }
    Ok(v)
}

fn nan_or(v: Option<f64>) -> String {
    v.map_or_else(|| "nan".to_string(), fmt_float)
}

pub fn coeffs(args: &CoeffsArgs, format: Format) -> CliResult<Output> {
    let model = load_model(&args.model)?;
    let n = direction(&args.direction)?;
    let k = positive("k", args.k)?;
    if 2 * args.nmax > args.smax {
        return Err(CliError::Input(format!("--nmax {} needs --smax ≥ {}", args.nmax, 2 * args.nmax)));
    }
    let table = build_coeff_table(&model.rep(k)?, &n, args.smax, args.nmax)?;
    let out = match format {
        Format::Json => to_json(serde_json::to_value(table.to_json_value()).expect("table serialises")),
        Format::Csv => table.to_csv_with(fmt_float),
        Format::Table => {
            let mut c = Table::new(&["s", "phi_c_re", "phi_c_im", "c_re", "c_im"]);
            for (s, p) in table.phi_c().iter().enumerate() {
                let cs = table.c(s);
                c.push(vec![
                    s.to_string(),
                    fmt_float(p.re),
                    fmt_float(p.im),
                    nan_or(cs.map(|c| c.re)),
                    nan_or(cs.map(|c| c.im)),
                ]);
            }
            let mut u = Table::new(&["n", "phi2_upsilon", "upsilon"]);
            for i in 1..=table.n_max() {
                u.push(vec![i.to_string(), nan_or(table.phi2_upsilon(i)), nan_or(table.upsilon(i))]);
            }
            format!("{}\n{}", c.text(), u.text())
        }
    };
    Ok(out.into())
}

pub fn series(args: &SeriesArgs, format: Format) -> CliResult<Output> {
    let model = load_model(&args.model)?;
    let n = direction(&args.direction)?;
    let k = positive("k", args.k)?;
    if args.terms > args.smax {
        return Err(CliError::Input(format!("--terms {} exceeds --smax {}", args.terms, args.smax)));
    }
    for &r in &args.r_list {
        positive("R", r)?;
    }
    let use_oracle = args.oracle || args.slope;
    let pair = if use_oracle {
        let pair = model.fourier_pair().ok_or_else(|| {
            CliError::Input("--oracle needs a gaussian_packet or spherically_symmetric model with sigma".into())
        })?;
        positive("oracle-tol", args.oracle_tol)?;
        Some(pair)
    } else {
        None
    };
    let table = build_coeff_table(&model.rep(k)?, &n, args.smax, 0)?;
    let spec = QuadratureSpec {
        max_refinements: args.oracle_refinements,
        ..QuadratureSpec::with_tol(args.oracle_tol)
    };

    let mut header = vec!["R", "series_re", "series_im"];
    if use_oracle {
        header.extend(["oracle_re", "oracle_im", "abs_err", "oracle_err_est"]);
    }
    let mut rows = Table::new(&header);
    let mut json_rows = Vec::new();
    for &r in &args.r_list {
        let s = eval_series(&table, r, args.terms)?.value;
        let mut row = vec![fmt_float(r), fmt_float(s.re), fmt_float(s.im)];
        let mut jrow = json!({"R": r, "series": [s.re, s.im]});
        if let Some(pair) = &pair {
            let o = eval_j_direct(pair, k, &vec3::scale(&n.to_vector(), r), &spec)?;
            let err = (o.value - s).norm();
            row.extend([fmt_float(o.value.re), fmt_float(o.value.im), fmt_float(err), fmt_float(o.error_estimate)]);
            jrow["oracle"] = json!([o.value.re, o.value.im]);
            jrow["abs_err"] = json!(err);
            jrow["oracle_err_est"] = json!(o.error_estimate);
        }
        rows.push(row);
        json_rows.push(jrow);
    }
    let fit = match (&pair, args.slope) {
        (Some(pair), true) => Some(convergence_slope(pair, &table, args.terms, &args.r_list, &spec)?),
        _ => None,
    };

    let out = match format {
        Format::Json => {
            let mut v = json!({"k": k, "theta": n.theta(), "phi": n.phi(), "terms": args.terms, "rows": json_rows});
            if let Some(f) = &fit {
                v["slope"] = json!({"slope": f.slope, "intercept": f.intercept});
            }
            to_json(v)
        }
        Format::Csv | Format::Table => {
            let mut s = if format == Format::Csv { rows.csv() } else { rows.text() };
            if let Some(f) = &fit {
                let mut t = Table::new(&["terms", "slope", "intercept"]);
                t.push(vec![args.terms.to_string(), fmt_float(f.slope), fmt_float(f.intercept)]);
                s.push('\n');
                s.push_str(&if format == Format::Csv { t.csv() } else { t.text() });
            }
            s
        }
    };
    Ok(out.into())
}

pub fn deficit(args: &DeficitArgs, format: Format) -> CliResult<Output> {
    let mut warnings = Vec::new();
    let (k, sigma, window) = match &args.params {
        Some(path) => {
            let inputs = OverlapInputs::from_json(&read_file(path)?)?;
            let overlap = build_overlap(&inputs)?;
            if overlap.energy_mismatch.abs() > 1e-9 * overlap.q0 {
                warnings.push(format!(
                    "detector energy K⁰ − W⁰ differs from source energy ΔM − U⁰ by {} eV",
                    fmt_float(overlap.energy_mismatch)
                ));
            }
            (overlap.k, inputs.sigma_e, Some((inputs.m_j, inputs.m_e)))
        }
        None => {
            let k = args.k_ev.ok_or_else(|| CliError::Input("--k-eV is required".into()))?;
            let s = args.sigma_ev.ok_or_else(|| CliError::Input("--sigma-eV is required".into()))?;
            let window = args.m_j_ev.zip(args.m_e_ev);
            (k, s, window)
        }
    };
    for &r in &args.r_grid {
        positive("R", r)?;
    }
    let d = deficit_rho0(k, sigma, &args.r_grid)?;
    if let Some((m_j, m_e)) = window {
        if !in_validity_window(sigma, m_j, m_e) {
            warnings.push(format!("sigma = {sigma} eV is outside the window m_j ≤ σ ≪ m_e"));
        }
    }
    let regime = |valid: bool| if valid { "valid" } else { "invalid-regime" };
    let out = match format {
        Format::Json => to_json(json!({
            "k_eV": k,
            "sigma_eV": sigma,
            "rho0_m": d.rho0_m,
            "lambda": d.lambda,
            "upsilon_bar": d.upsilon_bar,
            "curve": d.curve.iter().map(|p| json!({
                "R_m": p.r_m,
                "suppression": p.suppression,
                "rate": p.rate,
                "regime": regime(p.valid),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv | Format::Table => {
            let mut head = Table::new(&["rho0_m", "lambda", "upsilon_bar"]);
            head.push(vec![fmt_float(d.rho0_m), fmt_float(d.lambda), fmt_float(d.upsilon_bar)]);
            let mut curve = Table::new(&["R_m", "suppression", "rate", "regime"]);
            for p in &d.curve {
                curve.push(vec![
                    fmt_float(p.r_m),
                    fmt_float(p.suppression),
                    fmt_float(p.rate),
                    regime(p.valid).to_string(),
                ]);
            }
            let render = |t: &Table| if format == Format::Csv { t.csv() } else { t.text() };
            let mut s = render(&head);
            if !d.curve.is_empty() {
                s.push('\n');
                s.push_str(&render(&curve));
            }
            s
        }
    };
    Ok(Output { stdout: out, warnings })
}

/// Tolerance used to pick the series degree when `--lmax` is absent.
const NDIM_SERIES_TOL: f64 = 1e-12;

pub fn ndim(args: &NdimArgs, format: Format) -> CliResult<Output> {
    let dim = DimParams::new(args.dim)?;
    let k = positive("k", args.k)?;
    let big_r = positive("R", args.big_r)?;
    let r = positive("r", args.small_r)?;
    if big_r <= r {
        return Err(CliError::Input(format!("multipole series needs R > r, got R = {big_r}, r = {r}")));
    }
    let c = args.gamma.cos();
    let sep = (big_r * big_r + r * r - 2.0 * big_r * r * c).max(0.0).sqrt();
    let l_max = args.lmax.unwrap_or_else(|| multipole_degree_for(k, big_r, r, NDIM_SERIES_TOL));
    let closed = green_nd_closed(dim, k, sep)?;
    let series = green_nd_multipole(dim, k, big_r, r, c, l_max)?;
    let err = (closed - series).norm();
    let out = match format {
        Format::Json => to_json(json!({
            "N": args.dim, "k": k, "R": big_r, "r": r, "gamma": args.gamma, "lmax": l_max,
            "closed": [closed.re, closed.im], "series": [series.re, series.im], "abs_err": err,
        })),
        Format::Csv | Format::Table => {
            let mut t = Table::new(&[
                "N", "k", "R", "r", "gamma", "closed_re", "closed_im", "series_re", "series_im", "abs_err",
            ]);
            t.push(vec![
                args.dim.to_string(),
                fmt_float(k),
                fmt_float(big_r),
                fmt_float(r),
                fmt_float(args.gamma),
                fmt_float(closed.re),
                fmt_float(closed.im),
                fmt_float(series.re),
                fmt_float(series.im),
                fmt_float(err),
            ]);
            if format == Format::Csv {
                t.csv()
            } else {
                t.text()
            }
        }
    };
    Ok(out.into())
}

pub fn regions(args: &RegionsArgs, format: Format) -> CliResult<Output> {
    let r = negative_upsilon_region(args.lambda)?;
    let out = match format {
        Format::Json => to_json(json!({"lambda": args.lambda, "intervals": r.intervals})),
        Format::Csv | Format::Table => {
            let mut t = Table::new(&["theta_lo", "theta_hi", "theta_lo_deg", "theta_hi_deg"]);
            for [lo, hi] in &r.intervals {
                t.push(vec![fmt_float(*lo), fmt_float(*hi), fmt_float(lo * 180.0 / PI), fmt_float(hi * 180.0 / PI)]);
            }
            if format == Format::Csv {
                t.csv()
            } else {
                let mut s = String::new();
                let _ = writeln!(s, "Υ₁ < 0 for λ = {}", fmt_float(args.lambda));
                s + &t.text()
            }
        }
    };
    Ok(out.into())
}
