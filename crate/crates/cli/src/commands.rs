use crate::args::{
    EvalArgs, FitArgs, GridFlags, KernelArgs, KindFlags, MlArgs, ModelFlags, SolveArgs,
    SpectrumArgs, Sweep, SweepParam, VerifyArgs,
};
use crate::input::read_spectrum;
use crate::output::{emit, g17, Table};
use fracrelax::fitting::{default_init, fit, synth, FitProblem, Weighting};
use fracrelax::grid::{self, GridSpec, Spacing};
use fracrelax::kernels::{memory_time, SeriesTruncation};
use fracrelax::kinetic_solver::{solve, SolverGrid};
use fracrelax::relaxation::{relax_classical, relax_fractional};
use fracrelax::verify::{run, Suite};
use fracrelax::{ml3, EvalOptions, MLArgs, ModelParams, PermittivityScale};
use std::fmt::Write as _;
use std::path::Path;

/// A failed command and the exit status it maps to.
#[derive(Debug)]
pub enum Failure {
    /// Invalid flags or parameters.
    Usage(String),
    /// Unreadable or malformed input file.
    Input(String),
    /// A computation or write that did not succeed.
    Runtime(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
            Failure::Runtime(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Runtime(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn runtime(e: impl std::fmt::Display) -> Failure {
    Failure::Runtime(e.to_string())
}

fn write_out(text: &str, path: Option<&Path>) -> Outcome {
    emit(text, path).map_err(|e| Failure::Runtime(format!("cannot write output: {e}")))
}

fn resolve_grid(g: &GridFlags, min: f64, max: f64, points: usize) -> Result<Vec<f64>, Failure> {
    let spacing = if g.linear {
        Spacing::Linear
    } else {
        Spacing::Geometric
    };
    GridSpec::new(
        g.tmin.unwrap_or(min),
        g.tmax.unwrap_or(max),
        g.points.unwrap_or(points),
        spacing,
    )
    .and_then(|s| s.points())
    .map_err(usage)
}

fn time_grid(g: &GridFlags) -> Result<Vec<f64>, Failure> {
    resolve_grid(
        g,
        grid::DEFAULT_T_MIN,
        grid::DEFAULT_T_MAX,
        grid::DEFAULT_T_POINTS,
    )
}

fn build(m: &ModelFlags) -> Result<ModelParams, Failure> {
    ModelParams::new(m.model, m.alpha, m.beta, m.gamma, m.sigma).map_err(usage)
}

/// Parameter sets of a run with their column suffixes (empty without a sweep).
fn variants(m: &ModelFlags, sweep: Option<&Sweep>) -> Result<Vec<(String, ModelParams)>, Failure> {
    let Some(sweep) = sweep else {
        return Ok(vec![(String::new(), build(m)?)]);
    };
    sweep
        .values
        .iter()
        .map(|&v| {
            let mut f = *m;
            match sweep.param {
                SweepParam::Alpha => f.alpha = v,
                SweepParam::Beta => f.beta = v,
                SweepParam::Gamma => f.gamma = v,
                SweepParam::Sigma => f.sigma = v,
            }
            Ok((format!("[{}={}]", sweep.param.name(), g17(v)), build(&f)?))
        })
        .collect()
}

pub fn cmd_ml(a: &MlArgs, provenance: &str) -> Outcome {
    let args = MLArgs::new(a.a, a.b, a.c).map_err(usage)?;
    let opts = EvalOptions {
        rel_tol: a.tol,
        ..EvalOptions::default()
    };
    opts.validate().map_err(usage)?;
    let xs = time_grid(&a.grid)?;
    let mut table = Table::new(provenance, &["x".into(), "value".into()]);
    for x in xs {
        let x = if a.negate { -x } else { x };
        let v = ml3(&args, x, &opts)
            .map_err(|e| Failure::Runtime(format!("at x = {}: {e}", g17(x))))?;
        table.row(&[x, v]);
    }
    write_out(table.as_str(), a.out.as_deref())
}

pub fn cmd_kernel(a: &KernelArgs, provenance: &str) -> Outcome {
    let runs = variants(&a.model, a.sweep.as_ref())?;
    let ts = time_grid(&a.grid)?;
    let trunc = SeriesTruncation::default();
    let mut header = vec!["t".to_string()];
    header.extend(runs.iter().map(|(s, _)| format!("kernel{s}")));
    let mut table = Table::new(provenance, &header);
    for &t in &ts {
        let mut row = vec![t];
        for (_, p) in &runs {
            row.push(
                memory_time(p, t, &trunc)
                    .map_err(|e| Failure::Runtime(format!("{p} at t = {}: {e}", g17(t))))?,
            );
        }
        table.row(&row);
    }
    write_out(table.as_str(), a.out.as_deref())
}

type RelaxFn = fn(&ModelParams, f64) -> fracrelax::Result<f64>;

fn relax_fn(kind: &KindFlags, p: &ModelParams) -> Result<RelaxFn, Failure> {
    if kind.classical {
        if p.gamma != 1.0 {
            return Err(Failure::Usage(format!(
                "--classical requires gamma = 1, got {}",
                p.gamma
            )));
        }
        Ok(relax_classical)
    } else {
        Ok(relax_fractional)
    }
}

pub fn cmd_eval(a: &EvalArgs, provenance: &str) -> Outcome {
    let runs = variants(&a.model, a.sweep.as_ref())?;
    let fs = runs
        .iter()
        .map(|(_, p)| relax_fn(&a.kind, p))
        .collect::<Result<Vec<_>, _>>()?;
    let ts = time_grid(&a.grid)?;
    let mut header = vec!["t".to_string()];
    header.extend(runs.iter().map(|(s, _)| format!("phi{s}")));
    let mut table = Table::new(provenance, &header);
    for &t in &ts {
        let mut row = vec![t];
        for ((_, p), f) in runs.iter().zip(&fs) {
            row.push(f(p, t).map_err(|e| Failure::Runtime(format!("{p} at t = {}: {e}", g17(t))))?);
        }
        table.row(&row);
    }
    write_out(table.as_str(), a.out.as_deref())
}

pub fn cmd_spectrum(a: &SpectrumArgs, provenance: &str) -> Outcome {
    let runs = variants(&a.model, a.sweep.as_ref())?;
    let scale = PermittivityScale::new(a.eps_static, a.eps_inf).map_err(usage)?;
    let g = &a.grid;
    let omegas = if g.tmin.is_none() && g.tmax.is_none() && g.points.is_none() && !g.linear {
        grid::default_omega_grid()
    } else {
        resolve_grid(
            g,
            grid::DEFAULT_OMEGA_MIN,
            grid::DEFAULT_OMEGA_MAX,
            grid::DEFAULT_OMEGA_POINTS,
        )?
    };
    let mut header = vec!["omega".to_string()];
    for (s, _) in &runs {
        header.push(format!("eps_real{s}"));
        header.push(format!("eps_imag{s}"));
    }
    let columns = runs
        .iter()
        .map(|(_, p)| synth(p, &scale, &omegas, a.noise, a.seed))
        .collect::<fracrelax::Result<Vec<_>>>()
        .map_err(usage)?;
    let mut table = Table::new(provenance, &header);
    for (i, &w) in omegas.iter().enumerate() {
        let mut row = vec![w];
        for c in &columns {
            row.push(c[i].eps_real);
            row.push(c[i].eps_imag);
        }
        table.row(&row);
    }
    write_out(table.as_str(), a.out.as_deref())
}

pub fn cmd_solve(a: &SolveArgs, provenance: &str) -> Outcome {
    let p = build(&a.model)?;
    if !(a.tmax > 0.0 && a.tmax.is_finite()) {
        return Err(Failure::Usage(format!(
            "--tmax must be positive, got {}",
            a.tmax
        )));
    }
    let h = a.tmax / a.steps.max(1) as f64;
    let grid = SolverGrid::new(h, a.tmax, a.steps).map_err(usage)?;
    let sol = solve(&p, &grid).map_err(runtime)?;
    let vals = sol.values.as_real().expect("real solution");
    let mut table = Table::new(provenance, &["t".into(), "phi".into(), "error".into()]);
    for (&t, &v) in sol.abscissae.iter().zip(vals) {
        let exact = relax_fractional(&p, t).map_err(runtime)?;
        table.row(&[t, v, v - exact]);
    }
    write_out(table.as_str(), a.out.as_deref())
}

pub fn cmd_fit(a: &FitArgs, provenance: &str) -> Outcome {
    let data = read_spectrum(&a.input).map_err(Failure::Input)?;
    let mut problem = FitProblem::new(data, a.model);
    if a.relative {
        problem.weighting = Weighting::Relative;
    }
    let fixed_scale = match (a.eps_static, a.eps_inf) {
        (Some(s), Some(i)) => Some(PermittivityScale::new(s, i).map_err(usage)?),
        _ => None,
    };
    if a.alpha.is_some() || a.beta.is_some() || a.sigma.is_some() || fixed_scale.is_some() {
        let (p0, s0) = default_init(&problem).map_err(usage)?;
        let p = ModelParams::new(
            a.model,
            a.alpha.unwrap_or(p0.alpha),
            a.beta.unwrap_or(p0.beta),
            1.0,
            a.sigma.unwrap_or(p0.sigma),
        )
        .map_err(usage)?;
        problem.init = Some((p, fixed_scale.unwrap_or(s0)));
        problem.fit_scale = fixed_scale.is_none();
    }
    let res = fit(&problem).map_err(usage)?;

    let mut report = String::new();
    let _ = writeln!(report, "model          {}", a.model);
    let _ = writeln!(report, "alpha          {}", g17(res.params.alpha));
    let _ = writeln!(report, "beta           {}", g17(res.params.beta));
    let _ = writeln!(report, "sigma          {}", g17(res.params.sigma));
    let _ = writeln!(report, "eps_static     {}", g17(res.scale.eps_static));
    let _ = writeln!(report, "eps_inf        {}", g17(res.scale.eps_inf));
    let _ = writeln!(report, "rss            {}", g17(res.rss));
    let _ = writeln!(report, "iterations     {}", res.iterations);
    let _ = writeln!(report, "converged      {}", res.converged);
    let _ = writeln!(report, "gradient_norm  {}", g17(res.gradient_norm));
    let _ = writeln!(
        report,
        "condition      {}{}",
        g17(res.jacobian_condition),
        if res.degenerate_jacobian {
            "  (degenerate: some parameters are not identified)"
        } else {
            ""
        }
    );
    print!("{report}");

    let mut table = Table::new(provenance, &["key".into(), "value".into()]);
    let kind = a.model.short_name();
    let converged = res.converged.to_string();
    let degenerate = res.degenerate_jacobian.to_string();
    let iterations = res.iterations.to_string();
    table.raw_row(&["model", kind]);
    for (k, v) in [
        ("alpha", res.params.alpha),
        ("beta", res.params.beta),
        ("sigma", res.params.sigma),
        ("eps_static", res.scale.eps_static),
        ("eps_inf", res.scale.eps_inf),
        ("rss", res.rss),
    ] {
        table.raw_row(&[k, &g17(v)]);
    }
    table.raw_row(&["iterations", &iterations]);
    table.raw_row(&["converged", &converged]);
    table.raw_row(&["gradient_norm", &g17(res.gradient_norm)]);
    table.raw_row(&["jacobian_condition", &g17(res.jacobian_condition)]);
    table.raw_row(&["degenerate_jacobian", &degenerate]);
    write_out(table.as_str(), a.out.as_deref())?;

    if a.strict && !res.converged {
        return Err(Failure::Runtime(format!(
            "fit did not converge after {} iterations",
            res.iterations
        )));
    }
    Ok(())
}

pub fn cmd_verify(a: &VerifyArgs) -> Outcome {
    if let Some(t) = a.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    let suites: Vec<Suite> = if a.suite.is_empty() {
        Suite::ALL.to_vec()
    } else {
        a.suite.clone()
    };
    let reports = run(&suites, a.tol);
    let mut failed = 0;
    for r in &reports {
        println!(
            "[{}] {} checks, {} failed, {:.2} s",
            r.suite,
            r.checks.len(),
            r.failures(),
            r.elapsed.as_secs_f64()
        );
        for c in &r.checks {
            println!("  {c}");
        }
        failed += r.failures();
    }
    let total: f64 = reports.iter().map(|r| r.elapsed.as_secs_f64()).sum();
    if failed == 0 {
        println!("all suites passed in {total:.2} s");
        Ok(())
    } else {
        Err(Failure::Runtime(format!("{failed} check(s) failed")))
    }
}
