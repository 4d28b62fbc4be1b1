//! Experiment implementations behind the subcommands. Each experiment writes
//! one data artifact plus a `*_summary.json` with verdicts and measured
//! constants; outputs are deterministic for a fixed configuration and seed.

use crate::output::{fmt_float, Table, Writer};
use serde_json::json;
use slowdiff::diagnostics::{
    caccioppoli_check, classify_field, classify_summability, harnack_check, HarnackConfig, Label,
    ShellConfig, SingularHint, SummabilityReport, Verdict,
};
use slowdiff::eigen::{
    first_integral_oracle, giant_first_integral_oracle, minimize_quotient, EigenDomain,
    EigenResult, MinimizeOptions,
};
use slowdiff::evolve::{
    comparison_check, evolve, slice_mass, solve_ring, Boundary, EvolutionProblem, Geometry,
    RingOptions, SolveReport,
};
use slowdiff::exact::{BarenblattSpec, SeparableSpec};
use slowdiff::field::{FnField, ScalarField, SpaceTimeField};
use slowdiff::grid::{Cylinder, Grid};
use slowdiff::infconv::{inf_convolve, inf_convolve_fast, InfConvSpec};
use slowdiff::params::{derived_constants, Equation, MediumParams};
use slowdiff::pme::{pme_classify, pme_truncation_gradient_check, PmeSeparableSpec};
use slowdiff::{Error, Result};

/// Options shared by every experiment, already resolved against the config.
#[derive(Debug, Clone)]
pub struct Common {
    pub p: f64,
    pub m: f64,
    pub n: u32,
    pub c: f64,
    pub l: f64,
    pub grid: usize,
    pub t_end: f64,
    pub cfl: f64,
    pub seed: u64,
}

impl Common {
    /// Node count: `grid` counts cells, so a 512 grid has 513 nodes and a
    /// node sits exactly at the domain midpoint.
    fn nodes(&self) -> usize {
        self.grid + 1
    }

    fn p_params(&self) -> Result<MediumParams> {
        MediumParams::p_laplace(self.p, self.n)
    }

    fn pme_params(&self) -> Result<MediumParams> {
        MediumParams::pme(self.m, self.n)
    }
}

fn barenblatt_spec(common: &Common) -> Result<BarenblattSpec> {
    BarenblattSpec::new(common.p_params()?, common.c)
}

fn separable_spec(common: &Common, t0: f64) -> Result<SeparableSpec> {
    let eigen = EigenResult::from_first_integral(common.p, common.l, common.nodes().max(65))?;
    Ok(SeparableSpec::new(eigen, t0))
}

fn pme_separable_spec(common: &Common, t0: f64) -> Result<PmeSeparableSpec> {
    let giant = EigenResult::from_giant_first_integral(common.m, common.l, common.nodes().max(65))?;
    PmeSeparableSpec::new(giant, t0)
}

// ---------------------------------------------------------------- evaluate

pub fn evaluate(
    w: &Writer,
    common: &Common,
    solution: &str,
    t: f64,
    t0: f64,
    x_min: f64,
    x_max: f64,
) -> Result<()> {
    let mut table = Table::new(vec!["x", "value"]);
    let nodes = common.nodes();
    let mut center = 0.0;
    match solution {
        "barenblatt" => {
            let spec = barenblatt_spec(common)?;
            for i in 0..nodes {
                let x = x_min + (x_max - x_min) * i as f64 / (nodes as f64 - 1.0);
                let v = spec.eval(&[x], t);
                if x.abs() < (x_max - x_min) / nodes as f64 {
                    center = v;
                }
                table.push(vec![fmt_float(x), fmt_float(v)]);
            }
        }
        "separable" => {
            let spec = separable_spec(common, t0)?;
            for i in 0..nodes {
                let x = common.l * i as f64 / (nodes as f64 - 1.0);
                let v = spec.eval(&[x], t)?;
                table.push(vec![fmt_float(x), fmt_float(v)]);
            }
            center = spec.eval(&[0.5 * common.l], t)?;
        }
        "pme-separable" => {
            let spec = pme_separable_spec(common, t0)?;
            for i in 0..nodes {
                let x = common.l * i as f64 / (nodes as f64 - 1.0);
                let v = spec.eval(&[x], t)?;
                table.push(vec![fmt_float(x), fmt_float(v)]);
            }
            center = spec.eval(&[0.5 * common.l], t)?;
        }
        other => return Err(Error::Config(format!("unknown solution `{other}`"))),
    }
    w.write_table("evaluate", &table)?;
    w.write_summary(
        "evaluate",
        &json!({
            "experiment": "evaluate",
            "solution": solution,
            "p": common.p, "m": common.m, "n": common.n, "C": common.c,
            "t": t, "t0": t0, "grid": common.grid,
            "center_value": center,
        }),
    )?;
    Ok(())
}

// ------------------------------------------------------------------- eigen

pub fn eigen(w: &Writer, common: &Common, with_oracle: bool, equation: Equation) -> Result<()> {
    let (params, domain) = match equation {
        Equation::PLaplace => (
            common.p_params()?,
            EigenDomain::Interval { length: common.l, nodes: common.nodes() },
        ),
        Equation::Pme => (
            common.pme_params()?,
            EigenDomain::Interval { length: common.l, nodes: common.nodes() },
        ),
    };
    let solved = minimize_quotient(&domain, &params, equation, &MinimizeOptions::default())?;
    let (oracle_max, beta_err) = if with_oracle {
        match equation {
            Equation::PLaplace => {
                let o = first_integral_oracle(common.p, common.l)?;
                (o.m_max, o.beta_identity_error)
            }
            Equation::Pme => {
                let o = giant_first_integral_oracle(common.m, common.l)?;
                (o.g_max, o.beta_identity_error)
            }
        }
    } else {
        (f64::NAN, f64::NAN)
    };
    let rel_err = if with_oracle {
        (solved.max() - oracle_max).abs() / oracle_max
    } else {
        f64::NAN
    };
    let mut table = Table::new(vec![
        "exponent",
        "length",
        "solver_max",
        "oracle_max",
        "rel_err",
        "j0",
        "norm_c",
        "residual",
        "iterations",
        "beta_identity_error",
    ]);
    let exponent = params.exponent(equation)?;
    table.push(vec![
        fmt_float(exponent),
        fmt_float(common.l),
        fmt_float(solved.max()),
        fmt_float(oracle_max),
        fmt_float(rel_err),
        fmt_float(solved.j0),
        fmt_float(solved.norm_c),
        fmt_float(solved.residual),
        solved.iterations.to_string(),
        fmt_float(beta_err),
    ]);
    w.write_table("eigen", &table)?;
    w.write_summary(
        "eigen",
        &json!({
            "experiment": "eigen",
            "equation": format!("{equation:?}"),
            "exponent": exponent,
            "length": common.l,
            "grid": common.grid,
            "solver_max": solved.max(),
            "oracle_max": if with_oracle { Some(oracle_max) } else { None },
            "rel_err": if with_oracle { Some(rel_err) } else { None },
            "j0": solved.j0,
            "norm_c": solved.norm_c,
            "residual": solved.residual,
            "iterations": solved.iterations,
        }),
    )?;
    Ok(())
}

// ------------------------------------------------------------------ evolve

fn write_final_slice(
    w: &Writer,
    name: &str,
    rep: &SolveReport,
    exact: Option<&dyn Fn(f64) -> f64>,
) -> Result<f64> {
    let g = &rep.field.grid;
    let last = g.steps;
    let mut sup_err: f64 = 0.0;
    let mut table = Table::new(if exact.is_some() {
        vec!["x", "value", "exact", "abs_err"]
    } else {
        vec!["x", "value"]
    });
    for i in 0..g.counts[0] {
        let x = g.node_x(i);
        let v = rep.field.get(last, i);
        match exact {
            Some(f) => {
                let e = f(x);
                sup_err = sup_err.max((v - e).abs());
                table.push(vec![fmt_float(x), fmt_float(v), fmt_float(e), fmt_float((v - e).abs())]);
            }
            None => table.push(vec![fmt_float(x), fmt_float(v)]),
        }
    }
    w.write_table(name, &table)?;
    Ok(sup_err)
}

pub fn evolve_experiment(w: &Writer, common: &Common, scenario: &str, trials: usize) -> Result<()> {
    match scenario {
        "barenblatt" => {
            let spec = barenblatt_spec(common)?;
            let nodes = common.nodes();
            let t0 = 0.5;
            let t_end = common.t_end.max(t0 + 0.1);
            let steps = 64;
            let h = 8.0 / (nodes as f64 - 1.0);
            let initial: Vec<f64> =
                (0..nodes).map(|i| spec.eval(&[-4.0 + i as f64 * h], t0)).collect();
            let mut problem = EvolutionProblem::new(
                spec.params,
                Equation::PLaplace,
                Geometry::Interval { a: -4.0, b: 4.0 },
                initial,
                t0,
                (t_end - t0) / steps as f64,
                steps,
            );
            problem.cfl_safety = common.cfl;
            let rep = evolve(&problem)?;
            let exact = |x: f64| spec.eval(&[x], t_end);
            let sup_err = write_final_slice(w, "evolve", &rep, Some(&exact))?;
            let sup_exact = spec.eval(&[0.0], t_end);
            w.write_summary(
                "evolve",
                &json!({
                    "experiment": "evolve",
                    "scenario": scenario,
                    "grid": common.grid,
                    "t0": t0,
                    "t_end": t_end,
                    "sup_err": sup_err,
                    "sup_err_rel": sup_err / sup_exact,
                    "mass_initial": slice_mass(&rep.field, 0),
                    "mass_final": slice_mass(&rep.field, rep.field.grid.steps),
                    "substeps": rep.substeps,
                    "blow_up": rep.blow_up_flag,
                }),
            )?;
        }
        "bump" | "pme-bump" => {
            let pme = scenario == "pme-bump";
            let nodes = common.nodes();
            let h = 6.0 / (nodes as f64 - 1.0);
            let initial: Vec<f64> = (0..nodes)
                .map(|i| {
                    let x = -3.0 + i as f64 * h;
                    if pme {
                        0.1 + 1.5 * (-x * x).exp()
                    } else {
                        1.5 * (1.0 - (x / 2.0) * (x / 2.0)).max(0.0).powi(2)
                    }
                })
                .collect();
            let steps = 250;
            let (params, eq) = if pme {
                (common.pme_params()?, Equation::Pme)
            } else {
                (common.p_params()?, Equation::PLaplace)
            };
            let mut problem = EvolutionProblem::new(
                params,
                eq,
                Geometry::Interval { a: -3.0, b: 3.0 },
                initial,
                0.0,
                common.t_end / steps as f64,
                steps,
            );
            problem.cfl_safety = common.cfl;
            if pme {
                problem.left = Boundary::Dirichlet(vec![0.1; steps + 1]);
                problem.right = Boundary::Dirichlet(vec![0.1; steps + 1]);
            }
            let rep = evolve(&problem)?;
            write_final_slice(w, "evolve", &rep, None)?;
            w.write_summary(
                "evolve",
                &json!({
                    "experiment": "evolve",
                    "scenario": scenario,
                    "grid": common.grid,
                    "t_end": common.t_end,
                    "mass_initial": slice_mass(&rep.field, 0),
                    "mass_final": slice_mass(&rep.field, rep.field.grid.steps),
                    "max_final": rep.max_trace.last(),
                    "substeps": rep.substeps,
                }),
            )?;
        }
        "comparison" => {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(common.seed);
            let params = MediumParams::new(Some(common.p), Some(common.m), 1)?;
            let nodes = 33;
            let mut table = Table::new(vec!["trial", "equation", "ordered", "min_value"]);
            let mut violations = 0usize;
            let mut worst_min = f64::INFINITY;
            for trial in 0..trials {
                let eq = if trial % 2 == 0 { Equation::PLaplace } else { Equation::Pme };
                let initial_a: Vec<f64> =
                    (0..nodes).map(|_| rng.random_range(0.0..1.0)).collect();
                let initial_b: Vec<f64> = initial_a
                    .iter()
                    .map(|&v| v + rng.random_range(0.0..0.5))
                    .collect();
                let ba = rng.random_range(0.0..0.5);
                let bb = ba + rng.random_range(0.0..0.5);
                let steps = 4;
                let make = |initial: Vec<f64>, bval: f64| {
                    let mut p = EvolutionProblem::new(
                        params,
                        eq,
                        Geometry::Interval { a: 0.0, b: 1.0 },
                        initial,
                        0.0,
                        0.005,
                        steps,
                    );
                    p.left = Boundary::Dirichlet(vec![bval; steps + 1]);
                    p.right = Boundary::Dirichlet(vec![bval; steps + 1]);
                    p
                };
                let rep = comparison_check(&make(initial_a, ba), &make(initial_b, bb), 1e-12)?;
                if !rep.ordered {
                    violations += 1;
                }
                worst_min = worst_min.min(rep.min_value);
                table.push(vec![
                    trial.to_string(),
                    format!("{eq:?}"),
                    rep.ordered.to_string(),
                    fmt_float(rep.min_value),
                ]);
            }
            w.write_table("evolve", &table)?;
            w.write_summary(
                "evolve",
                &json!({
                    "experiment": "evolve",
                    "scenario": scenario,
                    "trials": trials,
                    "seed": common.seed,
                    "violations": violations,
                    "min_value": worst_min,
                }),
            )?;
            if violations > 0 {
                return Err(Error::Numeric(format!("{violations} ordering violations")));
            }
        }
        other => return Err(Error::Config(format!("unknown scenario `{other}`"))),
    }
    Ok(())
}

// ------------------------------------------------------------------- probe

pub fn probe(w: &Writer, common: &Common, trace: &str, t0: f64) -> Result<()> {
    let params = common.p_params()?;
    let nodes = common.nodes().min(257);
    let l = 1.0;
    let mut table = Table::new(vec!["case", "blow_up", "blow_up_time", "threshold", "sup"]);
    let mut summary = serde_json::Map::new();

    if trace == "separable" || trace == "both" {
        let eigen = EigenResult::from_first_integral(common.p, 6.0, 2049)?;
        let u_trace = eigen.interp(&[4.0])?;
        let dt = 5e-6;
        let steps = (common.t_end.max(0.25) / dt) as usize;
        let j0 = (t0 / dt).round() as usize; // keep t0 on the time lattice
        let series: Vec<f64> = (0..=steps)
            .map(|j| {
                if j > j0 {
                    u_trace / ((j - j0) as f64 * dt).powf(1.0 / (common.p - 2.0))
                } else {
                    0.0
                }
            })
            .collect();
        let threshold = 1e3 * (u_trace / 0.1_f64.powf(1.0 / (common.p - 2.0)));
        let opts = RingOptions {
            cfl_safety: common.cfl,
            blow_up_threshold: Some(threshold),
            preprocess_eps: None,
        };
        let rep = solve_ring(l, nodes, &series, 0.0, dt, params, Equation::PLaplace, &opts)?;
        let sup = rep.max_trace.iter().copied().fold(0.0, f64::max);
        table.push(vec![
            "separable".into(),
            rep.blow_up_flag.to_string(),
            fmt_float(rep.blow_up_time.unwrap_or(f64::NAN)),
            fmt_float(threshold),
            fmt_float(sup),
        ]);
        summary.insert(
            "separable".into(),
            json!({
                "blow_up": rep.blow_up_flag,
                "blow_up_time": rep.blow_up_time,
                "t0": t0,
                "threshold": threshold,
                "dt": dt,
            }),
        );
    }

    if trace == "bounded" || trace == "both" {
        let bump_nodes = 257;
        let h = 6.0 / (bump_nodes as f64 - 1.0);
        let initial: Vec<f64> = (0..bump_nodes)
            .map(|i| {
                let x = i as f64 * h;
                1.5 * (1.0 - ((x - 3.0) / 2.0) * ((x - 3.0) / 2.0)).max(0.0).powi(2)
            })
            .collect();
        let bump = evolve(&EvolutionProblem::new(
            params,
            Equation::PLaplace,
            Geometry::Interval { a: 0.0, b: 6.0 },
            initial,
            0.0,
            5e-4,
            1100,
        ))?;
        let delta = 0.02;
        let ring_dt = 5e-5;
        let steps = (common.t_end.max(0.25) / ring_dt) as usize;
        let series: Vec<f64> = (0..=steps)
            .map(|j| {
                let t = j as f64 * ring_dt;
                if t > delta {
                    bump.field.eval(&[4.0], t - delta)
                } else {
                    0.0
                }
            })
            .collect();
        let opts = RingOptions { cfl_safety: common.cfl, ..RingOptions::default() };
        let rep = solve_ring(l, nodes, &series, 0.0, ring_dt, params, Equation::PLaplace, &opts)?;
        let sup = rep.max_trace.iter().copied().fold(0.0, f64::max);
        table.push(vec![
            "bounded".into(),
            rep.blow_up_flag.to_string(),
            fmt_float(rep.blow_up_time.unwrap_or(f64::NAN)),
            fmt_float(rep.threshold),
            fmt_float(sup),
        ]);
        summary.insert(
            "bounded".into(),
            json!({
                "blow_up": rep.blow_up_flag,
                "sup": sup,
                "threshold": rep.threshold,
            }),
        );
    }

    if table.rows.is_empty() {
        return Err(Error::Config(format!("unknown trace `{trace}` (separable|bounded|both)")));
    }
    w.write_table("probe", &table)?;
    summary.insert("experiment".into(), json!("probe"));
    w.write_summary("probe", &serde_json::Value::Object(summary))?;
    Ok(())
}

// ---------------------------------------------------------------- classify

fn shells_rows(table: &mut Table, field: &str, report: &SummabilityReport) {
    for (idx, shell) in report.shells.iter().enumerate() {
        table.push(vec![
            field.to_string(),
            fmt_float(report.q),
            idx.to_string(),
            fmt_float(shell.scale),
            fmt_float(shell.value),
            format!("{:?}", report.verdict),
        ]);
    }
}

pub fn classify(
    w: &Writer,
    common: &Common,
    input: &str,
    q: Option<f64>,
    sharp: bool,
    t0: f64,
) -> Result<()> {
    let mut table = Table::new(vec!["field", "q", "shell_index", "scale", "integral", "verdict"]);
    match input {
        "barenblatt" => {
            let spec = barenblatt_spec(common)?;
            let exps = derived_constants(&spec.params).p_laplace.unwrap();
            let rx = spec.support_radius(0.5) * 1.1;
            let domain = Cylinder::interval(-rx - 0.5, rx + 0.5, -0.6, 0.6)?;
            let cfg = ShellConfig::point(rx, 0.5, exps.lambda);
            let hint = SingularHint::Point { x: 0.0, t: 0.0 };
            let src = spec.source(domain.clone());
            if sharp {
                let mut summary = Vec::new();
                for (tag, q) in [
                    ("value", exps.q_crit - 0.5),
                    ("value", exps.q_crit),
                    ("value", exps.class_threshold),
                ] {
                    let rep = classify_summability(&src, &hint, q, &cfg)?;
                    shells_rows(&mut table, tag, &rep);
                    summary.push(json!({"field": tag, "q": q, "verdict": format!("{:?}", rep.verdict), "tail_ratio": rep.tail_ratio}));
                }
                let gsrc = spec.gradient_source(domain);
                for q in [exps.qgrad_crit - 0.2, exps.qgrad_crit] {
                    let rep = classify_summability(&gsrc, &hint, q, &cfg)?;
                    shells_rows(&mut table, "gradient", &rep);
                    summary.push(json!({"field": "gradient", "q": q, "verdict": format!("{:?}", rep.verdict), "tail_ratio": rep.tail_ratio}));
                }
                w.write_table("classify", &table)?;
                w.write_summary(
                    "classify",
                    &json!({"experiment": "classify", "input": input, "sharp": true, "runs": summary}),
                )?;
            } else {
                let qq = q.unwrap_or(exps.class_threshold);
                let rep = classify_summability(&src, &hint, qq, &cfg)?;
                shells_rows(&mut table, "value", &rep);
                w.write_table("classify", &table)?;
                w.write_summary(
                    "classify",
                    &json!({"experiment": "classify", "input": input, "q": qq, "verdict": format!("{:?}", rep.verdict), "tail_ratio": rep.tail_ratio}),
                )?;
                if rep.verdict == Verdict::Inconclusive {
                    return Err(Error::Inconclusive(format!("verdict inconclusive at q = {qq}")));
                }
            }
        }
        "separable" | "pme-separable" => {
            let pme = input == "pme-separable";
            let (src_box, params, equation): (Box<dyn SpaceTimeField>, _, _) = if pme {
                let spec = pme_separable_spec(common, t0)?;
                let eigen = spec.eigen().clone();
                let t0c = spec.t0();
                let domain = Cylinder::new(
                    eigen.spatial_cylinder().center,
                    eigen.spatial_cylinder().half_widths,
                    0.0,
                    common.t_end.max(t0 + 0.5),
                )?;
                let m = common.m;
                (
                    Box::new(FnField::new(domain, move |x, t| {
                        if t <= t0c {
                            0.0
                        } else {
                            eigen.interp(x).unwrap_or(0.0) * (t - t0c).powf(-1.0 / (m - 1.0))
                        }
                    })),
                    common.pme_params()?,
                    Equation::Pme,
                )
            } else {
                let spec = separable_spec(common, t0)?;
                let eigen = spec.eigen.clone();
                let t0c = spec.t0;
                let domain = Cylinder::new(
                    eigen.spatial_cylinder().center,
                    eigen.spatial_cylinder().half_widths,
                    0.0,
                    common.t_end.max(t0 + 0.5),
                )?;
                let p = common.p;
                (
                    Box::new(FnField::new(domain, move |x, t| {
                        if t <= t0c {
                            0.0
                        } else {
                            eigen.interp(x).unwrap_or(0.0) * (t - t0c).powf(-1.0 / (p - 2.0))
                        }
                    })),
                    common.p_params()?,
                    Equation::PLaplace,
                )
            };
            let src = src_box.as_ref();
            if let Some(qq) = q {
                // direct summability probe at the requested exponent
                let domain = src.domain();
                let mut cfg = ShellConfig::slice(0.5 * (domain.t2 - t0));
                cfg.core = Some((
                    domain.center[0] - 0.5 * domain.half_widths[0],
                    domain.center[0] + 0.5 * domain.half_widths[0],
                ));
                let rep = classify_summability(src, &SingularHint::Slice { t: t0 }, qq, &cfg)?;
                shells_rows(&mut table, "value", &rep);
                w.write_table("classify", &table)?;
                w.write_summary(
                    "classify",
                    &json!({"experiment": "classify", "input": input, "q": qq, "verdict": format!("{:?}", rep.verdict), "tail_ratio": rep.tail_ratio}),
                )?;
                if rep.verdict == Verdict::Inconclusive {
                    return Err(Error::Inconclusive(format!("verdict inconclusive at q = {qq}")));
                }
            } else {
                let domain = src.domain();
                let scan = Grid::interval(
                    domain.lo(0),
                    domain.hi(0),
                    common.nodes().min(513),
                    domain.t1,
                    1e-3,
                    ((domain.t2 - domain.t1) / 1e-3) as usize,
                )?;
                let verdict = if pme {
                    pme_classify(src, &scan, &params)?
                } else {
                    classify_field(src, &scan, &params, equation)?
                };
                for rep in &verdict.evidence {
                    shells_rows(&mut table, "value", rep);
                }
                w.write_table("classify", &table)?;
                w.write_summary(
                    "classify",
                    &json!({
                        "experiment": "classify",
                        "input": input,
                        "label": format!("{:?}", verdict.label),
                        "t0_detected": verdict.t0_detected,
                        "minorant_floor": verdict.minorant_floor,
                    }),
                )?;
                if verdict.label == Label::Unknown {
                    return Err(Error::Inconclusive("class verdict unknown".into()));
                }
            }
        }
        other => return Err(Error::Config(format!("unknown input `{other}`"))),
    }
    Ok(())
}

// ----------------------------------------------------------------- harnack

pub fn harnack(
    w: &Writer,
    common: &Common,
    input: &str,
    samples: usize,
    c_used: f64,
) -> Result<()> {
    let mut table =
        Table::new(vec!["case", "x0", "t0", "r", "theta", "lhs", "inf_ball", "ratio"]);
    let mut summary = serde_json::Map::new();

    let mut record = |case: &str, rep: &slowdiff::diagnostics::HarnackReport| {
        for s in &rep.samples {
            table.push(vec![
                case.to_string(),
                fmt_float(s.x0),
                fmt_float(s.t0),
                fmt_float(s.r),
                fmt_float(s.theta),
                fmt_float(s.lhs),
                fmt_float(s.inf_ball),
                fmt_float(s.lhs / s.inf_ball),
            ]);
        }
        summary.insert(
            case.into(),
            json!({"gamma": rep.gamma_measured, "samples": rep.samples.len(), "skipped": rep.skipped}),
        );
    };

    if input == "barenblatt" || input == "both" {
        let spec = barenblatt_spec(common)?;
        let domain = Cylinder::interval(-4.0, 4.0, 0.5, 2.0)?;
        let src = spec.source(domain);
        let core = Cylinder::interval(-1.0, 1.0, 1.0, 1.4)?;
        let cfg = HarnackConfig::new(c_used, samples, common.seed, core, (0.02, 0.12));
        let rep = harnack_check(&src, &spec.params, Equation::PLaplace, &cfg)?;
        record("barenblatt", &rep);
    }
    if input == "pme-bump" || input == "both" {
        let nodes = 257;
        let h = 6.0 / (nodes as f64 - 1.0);
        let initial: Vec<f64> = (0..nodes)
            .map(|i| {
                let x = -3.0 + i as f64 * h;
                0.1 + 1.5 * (-x * x).exp()
            })
            .collect();
        let mut problem = EvolutionProblem::new(
            common.pme_params()?,
            Equation::Pme,
            Geometry::Interval { a: -3.0, b: 3.0 },
            initial,
            0.0,
            0.002,
            250,
        );
        problem.left = Boundary::Dirichlet(vec![0.1; 251]);
        problem.right = Boundary::Dirichlet(vec![0.1; 251]);
        let bump = evolve(&problem)?;
        let core = Cylinder::interval(-1.0, 1.0, 0.15, 0.35)?;
        let cfg = HarnackConfig::new(c_used, samples, common.seed + 1, core, (0.095, 0.2));
        let rep = harnack_check(&bump.field, &common.pme_params()?, Equation::Pme, &cfg)?;
        record("pme-bump", &rep);
    }
    if table.rows.is_empty() {
        return Err(Error::Config(format!("unknown input `{input}` (barenblatt|pme-bump|both)")));
    }
    w.write_table("harnack", &table)?;
    summary.insert("experiment".into(), json!("harnack"));
    summary.insert("c_used".into(), json!(c_used));
    summary.insert("seed".into(), json!(common.seed));
    w.write_summary("harnack", &serde_json::Value::Object(summary))?;
    Ok(())
}

// ------------------------------------------------------------- caccioppoli

pub fn caccioppoli(w: &Writer, common: &Common, levels: usize) -> Result<()> {
    let spec = barenblatt_spec(common)?;
    let mut table = Table::new(vec!["level", "nodes", "lhs", "rhs", "ratio"]);
    let mut ratios = Vec::new();
    for lvl in 0..levels {
        let nodes = 128 * (1 << lvl) + 1;
        let steps = 32 << lvl;
        let h = 8.0 / (nodes as f64 - 1.0);
        let initial: Vec<f64> = (0..nodes).map(|i| spec.eval(&[-4.0 + i as f64 * h], 0.5)).collect();
        let mut problem = EvolutionProblem::new(
            spec.params,
            Equation::PLaplace,
            Geometry::Interval { a: -4.0, b: 4.0 },
            initial,
            0.5,
            0.5 / steps as f64,
            steps,
        );
        problem.cfl_safety = common.cfl;
        let rep = evolve(&problem)?;
        let g = &rep.field.grid;
        let zeta: Vec<f64> = (0..nodes)
            .map(|i| {
                let s = (g.node_x(i) - 2.5) / 1.2;
                if s.abs() < 1.0 {
                    (std::f64::consts::FRAC_PI_2 * s).cos().powi(2)
                } else {
                    0.0
                }
            })
            .collect();
        let cac = caccioppoli_check(&rep.field, &zeta, common.p, 0.6, 0.9)?;
        ratios.push(cac.ratio);
        table.push(vec![
            lvl.to_string(),
            nodes.to_string(),
            fmt_float(cac.lhs),
            fmt_float(cac.rhs),
            fmt_float(cac.ratio),
        ]);
    }
    w.write_table("caccioppoli", &table)?;
    let r_lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let r_hi = ratios.iter().copied().fold(0.0_f64, f64::max);
    w.write_summary(
        "caccioppoli",
        &json!({
            "experiment": "caccioppoli",
            "levels": levels,
            "ratios": ratios,
            "spread": r_hi / r_lo,
        }),
    )?;
    Ok(())
}

// ----------------------------------------------------------------- infconv

pub fn infconv(w: &Writer, _common: &Common, eps_list: &[f64]) -> Result<()> {
    let g = Grid::interval(-1.0, 1.0, 65, 0.0, 0.025, 40)?;
    let field = ScalarField::from_fn(g, None, |x, t| {
        x[0].abs() + 0.5 * (3.0 * t).sin().abs() + 0.3 * x[0] * x[0]
    });
    let domain = field.grid.cylinder();
    let mut table = Table::new(vec!["eps", "sup_gap", "bitwise_equal"]);
    let mut gaps = Vec::new();
    for &eps in eps_list {
        let spec = InfConvSpec::new(eps, domain.clone())?;
        let brute = inf_convolve(&field, &spec)?;
        let fast = inf_convolve_fast(&field, &spec)?;
        let equal = brute.values() == fast.values();
        let mut sup_gap: f64 = 0.0;
        for (o, v) in brute.values().iter().zip(field.values()) {
            sup_gap = sup_gap.max(v - o);
        }
        gaps.push(sup_gap);
        table.push(vec![fmt_float(eps), fmt_float(sup_gap), equal.to_string()]);
        if !equal {
            w.write_table("infconv", &table)?;
            return Err(Error::Numeric(format!(
                "accelerated path deviates from brute force at eps = {eps}"
            )));
        }
    }
    w.write_table("infconv", &table)?;
    let monotone = gaps.windows(2).all(|p| p[1] <= p[0] + 1e-15);
    w.write_summary(
        "infconv",
        &json!({
            "experiment": "infconv",
            "eps": eps_list,
            "sup_gaps": gaps,
            "gaps_decreasing": monotone,
        }),
    )?;
    Ok(())
}

// --------------------------------------------------------------------- pme

pub fn pme_panel(w: &Writer, common: &Common) -> Result<()> {
    let params = common.pme_params()?;
    let exps = derived_constants(&params).pme.unwrap();
    let m = common.m;
    let mut table = Table::new(vec!["check", "value", "expected", "pass"]);
    let push = |table: &mut Table, check: &str, value: String, expected: &str, pass: bool| {
        table.push(vec![check.to_string(), value, expected.to_string(), pass.to_string()]);
    };

    push(
        &mut table,
        "class_threshold",
        fmt_float(exps.class_threshold),
        &fmt_float(m - 1.0),
        (exps.class_threshold - (m - 1.0)).abs() < 1e-14,
    );
    push(
        &mut table,
        "q_crit",
        fmt_float(exps.q_crit),
        &fmt_float(m + 2.0 / common.n as f64),
        (exps.q_crit - (m + 2.0 / common.n as f64)).abs() < 1e-14,
    );
    push(
        &mut table,
        "qgrad_crit",
        fmt_float(exps.qgrad_crit),
        &fmt_float(1.0 + 1.0 / (1.0 + common.n as f64 * m)),
        (exps.qgrad_crit - (1.0 + 1.0 / (1.0 + common.n as f64 * m))).abs() < 1e-14,
    );

    // separable Friendly Giant field verdicts
    let t0 = 0.3;
    let spec = pme_separable_spec(common, t0)?;
    let src = spec.source(0.0, t0 + 1.0)?;
    let mut cfg = ShellConfig::slice(0.5);
    cfg.core = Some((0.25 * common.l, 0.75 * common.l));
    let hint = SingularHint::Slice { t: t0 };
    for (name, q, expected) in [
        ("separable_at_threshold", exps.class_threshold, Verdict::Divergent),
        ("separable_below_threshold", 0.5 * exps.class_threshold, Verdict::Finite),
        ("separable_at_q_crit", exps.q_crit, Verdict::Divergent),
    ] {
        let rep = classify_summability(&src, &hint, q, &cfg)?;
        push(
            &mut table,
            name,
            format!("{:?}", rep.verdict),
            &format!("{expected:?}"),
            rep.verdict == expected,
        );
    }

    // classifier label on the separable field
    let scan = Grid::interval(0.0, common.l, 257, 0.0, 1e-3, ((t0 + 1.0) / 1e-3) as usize)?;
    let verdict = pme_classify(&src, &scan, &params)?;
    push(
        &mut table,
        "separable_label",
        format!("{:?}", verdict.label),
        "M",
        verdict.label == Label::M,
    );

    // bounded evolved specimen
    let nodes = 257;
    let h = 6.0 / (nodes as f64 - 1.0);
    let initial: Vec<f64> = (0..nodes)
        .map(|i| {
            let x = -3.0 + i as f64 * h;
            1.5 * (1.0 - (x / 2.0) * (x / 2.0)).max(0.0).powi(2)
        })
        .collect();
    let bounded = evolve(&EvolutionProblem::new(
        params,
        Equation::Pme,
        Geometry::Interval { a: -3.0, b: 3.0 },
        initial,
        0.0,
        2e-4,
        2500,
    ))?;
    let bscan = Grid::interval(-3.0, 3.0, 129, 0.0, 0.01, 50)?;
    let bverdict = pme_classify(&bounded.field, &bscan, &params)?;
    push(
        &mut table,
        "bounded_label",
        format!("{:?}", bverdict.label),
        "B",
        bverdict.label == Label::B,
    );

    // giant oracle agreement
    let oracle = giant_first_integral_oracle(m, common.l)?;
    let solved = minimize_quotient(
        &EigenDomain::Interval { length: common.l, nodes: common.nodes().min(513) },
        &params,
        Equation::Pme,
        &MinimizeOptions::default(),
    )?;
    let rel = (solved.max() - oracle.g_max).abs() / oracle.g_max;
    push(&mut table, "giant_oracle_rel_err", fmt_float(rel), "<= 5e-3", rel <= 5e-3);

    // truncation gradient growth on the separable field, saturation on the
    // bounded one
    let window = Cylinder::interval(0.0, common.l, t0 - 0.1, t0 + 0.5)?;
    let mut prev = 0.0;
    let mut growing = true;
    for j in [10.0, 100.0, 1000.0] {
        let v = pme_truncation_gradient_check(&src, m, j, &window, 256, 256)?;
        if v <= 2.0 * prev {
            growing = false;
        }
        prev = v;
    }
    push(&mut table, "truncation_growth", fmt_float(prev), "unbounded in j", growing);
    let bwindow = Cylinder::interval(-2.0, 2.0, 0.05, 0.45)?;
    let sup_wm = bounded.field.max_value().powf(m);
    let v1 = pme_truncation_gradient_check(&bounded.field, m, 2.0 * sup_wm, &bwindow, 128, 64)?;
    let v2 = pme_truncation_gradient_check(&bounded.field, m, 20.0 * sup_wm, &bwindow, 128, 64)?;
    push(
        &mut table,
        "truncation_saturation",
        fmt_float((v1 - v2).abs()),
        "0",
        (v1 - v2).abs() <= 1e-12 * v1.max(1e-300),
    );

    let all_pass = table.rows.iter().all(|r| r[3] == "true");
    w.write_table("pme", &table)?;
    w.write_summary(
        "pme",
        &json!({
            "experiment": "pme",
            "m": m,
            "n": common.n,
            "all_pass": all_pass,
            "separate_label": format!("{:?}", verdict.label),
            "bounded_label": format!("{:?}", bverdict.label),
            "giant_rel_err": rel,
        }),
    )?;
    if verdict.label == Label::Unknown || bverdict.label == Label::Unknown {
        return Err(Error::Inconclusive("PME panel produced an unknown label".into()));
    }
    Ok(())
}
