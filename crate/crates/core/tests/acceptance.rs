//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use slowdiff::diagnostics::{
    caccioppoli_check, classify_field, classify_summability, harnack_check, HarnackConfig, Label,
    ShellConfig, SingularHint, Verdict,
};
use slowdiff::eigen::{
    first_integral_oracle, giant_first_integral_oracle, minimize_quotient, EigenDomain,
    EigenResult, MinimizeOptions,
};
use slowdiff::evolve::{
    comparison_check, evolve, slice_mass, solve_ring, Boundary, EvolutionProblem, Geometry,
    RingOptions, SolveReport,
};
use slowdiff::exact::{pde_residual, BarenblattSpec, Exclusion, SeparableSpec};
use slowdiff::field::{FnField, ScalarField, SpaceTimeField};
use slowdiff::grid::{Cylinder, Grid};
use slowdiff::infconv::{inf_convolve, inf_convolve_fast, InfConvSpec};
use slowdiff::params::{derived_constants, Equation, MediumParams};
use slowdiff::pme::{pme_classify, pme_truncation_gradient_check, PmeSeparableSpec};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn p3n1() -> MediumParams {
    MediumParams::p_laplace(3.0, 1).unwrap()
}

fn m2n1() -> MediumParams {
    MediumParams::pme(2.0, 1).unwrap()
}

fn barenblatt() -> BarenblattSpec {
    BarenblattSpec::new(p3n1(), 1.0).unwrap()
}

/// Evolve the Barenblatt solution from its t = 0.5 slice on [-4, 4].
fn evolve_barenblatt(nodes: usize, t_end: f64, steps: usize) -> SolveReport {
    let b = barenblatt();
    let t0 = 0.5;
    let h = 8.0 / (nodes as f64 - 1.0);
    let initial: Vec<f64> = (0..nodes).map(|i| b.eval(&[-4.0 + i as f64 * h], t0)).collect();
    let problem = EvolutionProblem::new(
        p3n1(),
        Equation::PLaplace,
        Geometry::Interval { a: -4.0, b: 4.0 },
        initial,
        t0,
        (t_end - t0) / steps as f64,
        steps,
    );
    evolve(&problem).unwrap()
}

/// Evolved PME bump, strictly positive (floor 0.1 held at the boundary).
fn evolve_pme_bump(nodes: usize, t_end: f64, steps: usize) -> SolveReport {
    let h = 6.0 / (nodes as f64 - 1.0);
    let initial: Vec<f64> = (0..nodes)
        .map(|i| {
            let x = -3.0 + i as f64 * h;
            0.1 + 1.5 * (-x * x).exp()
        })
        .collect();
    let mut problem = EvolutionProblem::new(
        m2n1(),
        Equation::Pme,
        Geometry::Interval { a: -3.0, b: 3.0 },
        initial,
        0.0,
        t_end / steps as f64,
        steps,
    );
    problem.left = Boundary::Dirichlet(vec![0.1; steps + 1]);
    problem.right = Boundary::Dirichlet(vec![0.1; steps + 1]);
    evolve(&problem).unwrap()
}

/// Compactly supported PME bump with zero boundary data (bounded class-B
/// specimen for the classifier).
fn evolve_pme_compact_bump(nodes: usize, t_end: f64, steps: usize) -> SolveReport {
    let h = 6.0 / (nodes as f64 - 1.0);
    let initial: Vec<f64> = (0..nodes)
        .map(|i| {
            let x = -3.0 + i as f64 * h;
            1.5 * (1.0 - (x / 2.0) * (x / 2.0)).max(0.0).powi(2)
        })
        .collect();
    let problem = EvolutionProblem::new(
        m2n1(),
        Equation::Pme,
        Geometry::Interval { a: -3.0, b: 3.0 },
        initial,
        0.0,
        t_end / steps as f64,
        steps,
    );
    evolve(&problem).unwrap()
}

#[test]
fn criterion_01_barenblatt_verification() {
    let start = Instant::now();
    let b = barenblatt();

    // evolved solution from the t = 0.5 slice vs closed form at t = 1
    let nodes = 513;
    let steps = 64;
    let rep = evolve_barenblatt(nodes, 1.0, steps);
    let g = rep.field.grid.clone();
    let mut sup_err: f64 = 0.0;
    let mut sup_exact: f64 = 0.0;
    for i in 0..nodes {
        let x = g.node_x(i);
        let exact = b.eval(&[x], 1.0);
        sup_exact = sup_exact.max(exact);
        sup_err = sup_err.max((rep.field.get(steps, i) - exact).abs());
    }
    assert!(
        sup_err / sup_exact <= 0.01,
        "evolved vs closed form sup error {:.3e} (rel {:.3e})",
        sup_err,
        sup_err / sup_exact
    );

    // mass constant within 1% over t in [0.5, 2]
    let masses: Vec<f64> = (0..=6).map(|k| b.mass(0.5 + 0.25 * k as f64).unwrap()).collect();
    let m_lo = masses.iter().copied().fold(f64::INFINITY, f64::min);
    let m_hi = masses.iter().copied().fold(0.0, f64::max);
    assert!(m_hi / m_lo - 1.0 <= 0.01, "mass spread {:.3e}", m_hi / m_lo - 1.0);
    // discrete conservation of the evolved run (silent boundaries)
    let dm = (slice_mass(&rep.field, steps) - slice_mass(&rep.field, 0)).abs();
    assert!(dm <= 1e-10 * slice_mass(&rep.field, 0), "interior mass drift {dm:.3e}");

    // residual sup norm falls with measured order >= 1 under h -> h/2
    let mut sups = Vec::new();
    for lvl in 0..3 {
        let nx = 128 << lvl;
        let nt = 64 << lvl;
        let rg = Grid::interval(-4.0, 4.0, nx + 1, 0.5, 0.5 / nt as f64, nt).unwrap();
        let src = b.source(rg.cylinder());
        let res = pde_residual(
            &src,
            &rg,
            Equation::PLaplace,
            &b.params,
            &Exclusion::SpatialPoint { x: 0.0 },
        )
        .unwrap();
        sups.push(res.sup_norm);
    }
    assert!(sups[1] < sups[0] && sups[2] < sups[1], "residual sups {sups:?}");
    let order = (sups[1] / sups[2]).log2();
    assert!(order >= 1.0, "residual order {order:.3} (sups {sups:?})");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "runtime {elapsed:?}");
    println!(
        "criterion 1 (Barenblatt verification): PASS (sup err {:.2e}, mass spread {:.1e}, order {:.2}, {:.1?})",
        sup_err,
        m_hi / m_lo - 1.0,
        order,
        elapsed
    );
}

#[test]
fn criterion_02_sharp_exponents() {
    let start = Instant::now();
    let b = barenblatt();
    let exps = derived_constants(&p3n1()).p_laplace.unwrap();
    assert_eq!(exps.q_crit, 5.0);
    assert_eq!(exps.qgrad_crit, 2.5);
    let domain = Cylinder::interval(-3.5, 3.5, -0.6, 0.6).unwrap();
    let hint = SingularHint::Point { x: 0.0, t: 0.0 };
    let cfg = ShellConfig::point(3.0, 0.5, exps.lambda);

    let src = b.source(domain.clone());
    let run = |q: f64| classify_summability(&src, &hint, q, &cfg).unwrap();
    let finite_below = run(exps.q_crit - 0.5);
    assert_eq!(finite_below.verdict, Verdict::Finite, "q = q_crit - 0.5: {finite_below:?}");
    let divergent_at = run(exps.q_crit);
    assert_eq!(divergent_at.verdict, Verdict::Divergent, "q = q_crit: {divergent_at:?}");
    let finite_threshold = run(exps.class_threshold);
    assert_eq!(finite_threshold.verdict, Verdict::Finite, "q = p-2: {finite_threshold:?}");

    let gsrc = b.gradient_source(domain);
    let grun = |q: f64| classify_summability(&gsrc, &hint, q, &cfg).unwrap();
    let g_finite = grun(exps.qgrad_crit - 0.2);
    assert_eq!(g_finite.verdict, Verdict::Finite, "q' = qgrad - 0.2: {g_finite:?}");
    let g_divergent = grun(exps.qgrad_crit);
    assert_eq!(g_divergent.verdict, Verdict::Divergent, "q' = qgrad: {g_divergent:?}");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "runtime {elapsed:?}");
    println!(
        "criterion 2 (sharp exponents): PASS (tails: {:.3}/{:.3}/{:.3}, grad {:.3}/{:.3}, {:.1?})",
        finite_below.tail_ratio,
        divergent_at.tail_ratio,
        finite_threshold.tail_ratio,
        g_finite.tail_ratio,
        g_divergent.tail_ratio,
        elapsed
    );
}

#[test]
fn criterion_03_class_m_signature() {
    let params = p3n1();
    let t0 = 0.5;
    let eigen = minimize_quotient(
        &EigenDomain::Interval { length: 2.0, nodes: 513 },
        &params,
        Equation::PLaplace,
        &MinimizeOptions::default(),
    )
    .unwrap();
    let spec = SeparableSpec::new(eigen, t0);
    let src = spec.source(0.0, 1.5).unwrap();
    let dt = 1e-3;
    let scan = Grid::interval(0.0, 2.0, 513, 0.0, dt, 1500).unwrap();
    let verdict = classify_field(&src, &scan, &params, Equation::PLaplace).unwrap();
    assert_eq!(verdict.label, Label::M, "{verdict:?}");
    let detected = verdict.t0_detected.unwrap();
    assert!((detected - t0).abs() <= 5.0 * dt, "detected t0 {detected}");
    assert_eq!(verdict.evidence[0].q, 1.0);
    assert_eq!(verdict.evidence[0].verdict, Verdict::Divergent);

    // minorant floor within 5% of min over the core K = [0.5, 1.5] of U
    let mut min_k = f64::INFINITY;
    for i in 0..=512 {
        let x = 0.5 + i as f64 / 512.0;
        min_k = min_k.min(spec.eigen.interp(&[x]).unwrap());
    }
    assert!(
        (verdict.minorant_floor - min_k).abs() <= 0.05 * min_k,
        "floor {} vs min_K U {min_k}",
        verdict.minorant_floor
    );

    // Finite strictly below the threshold
    let mut cfg = ShellConfig::slice(0.5);
    cfg.core = Some((0.5, 1.5));
    let fin = classify_summability(&src, &SingularHint::Slice { t: t0 }, 0.5, &cfg).unwrap();
    assert_eq!(fin.verdict, Verdict::Finite);

    println!(
        "criterion 3 (class M signature): PASS (t0 {:.6}, floor {:.5} vs {:.5})",
        detected, verdict.minorant_floor, min_k
    );
}

#[test]
fn criterion_04_eigenfunction_oracle() {
    let l = 1.0;
    for p in [3.0, 4.0, 6.0] {
        let params = MediumParams::p_laplace(p, 1).unwrap();
        let oracle = first_integral_oracle(p, l).unwrap();
        assert!(oracle.beta_identity_error <= 1e-8, "beta identity p={p}");
        let solved = minimize_quotient(
            &EigenDomain::Interval { length: l, nodes: 1025 },
            &params,
            Equation::PLaplace,
            &MinimizeOptions::default(),
        )
        .unwrap();
        let rel = (solved.max() - oracle.m_max).abs() / oracle.m_max;
        assert!(rel <= 5e-3, "p={p}: max {} vs oracle {} ({rel:.2e})", solved.max(), oracle.m_max);
    }

    // scaling-law fits across L in {0.5, 1, 2, 4} on solver output
    let p = 4.0;
    let params = MediumParams::p_laplace(p, 1).unwrap();
    let lengths = [0.5, 1.0, 2.0, 4.0];
    let mut ln_l = Vec::new();
    let mut ln_m = Vec::new();
    let mut ln_s = Vec::new();
    for &len in &lengths {
        let r = minimize_quotient(
            &EigenDomain::Interval { length: len, nodes: 513 },
            &params,
            Equation::PLaplace,
            &MinimizeOptions::default(),
        )
        .unwrap();
        let h = len / 512.0;
        ln_l.push(len.ln());
        ln_m.push(r.max().ln());
        ln_s.push(((r.u[1] - r.u[0]) / h).ln());
    }
    let slope = |ys: &[f64]| {
        let xm = ln_l.iter().sum::<f64>() / ln_l.len() as f64;
        let ym = ys.iter().sum::<f64>() / ys.len() as f64;
        let num: f64 = ln_l.iter().zip(ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
        let den: f64 = ln_l.iter().map(|x| (x - xm) * (x - xm)).sum();
        num / den
    };
    let m_slope = slope(&ln_m);
    let s_slope = slope(&ln_s);
    let m_expect = p / (p - 2.0);
    let s_expect = 2.0 / (p - 2.0);
    assert!(
        (m_slope / m_expect - 1.0).abs() <= 0.01,
        "M-scaling slope {m_slope} vs {m_expect}"
    );
    assert!(
        (s_slope / s_expect - 1.0).abs() <= 0.01,
        "slope-scaling {s_slope} vs {s_expect}"
    );
    println!(
        "criterion 4 (eigenfunction oracle): PASS (M slope {:.4} vs {}, U'(0) slope {:.4} vs {})",
        m_slope, m_expect, s_slope, s_expect
    );
}

#[test]
fn criterion_05_dichotomy_probe() {
    let params = p3n1();
    let t0: f64 = 0.15;
    let l = 1.0;
    let nodes = 129;

    // blow-up case: separable trace on the inner boundary
    let eigen = EigenResult::from_first_integral(3.0, 6.0, 2049).unwrap();
    let u_trace = eigen.interp(&[4.0]).unwrap(); // x = +1 of (-3, 3)
    let dt = 5e-6;
    let steps = 50_000; // T = 0.25
    let j0 = (t0 / dt).round() as usize; // t0 sits on the time lattice
    let series: Vec<f64> = (0..=steps)
        .map(|j| {
            if j > j0 {
                u_trace / ((j - j0) as f64 * dt)
            } else {
                0.0
            }
        })
        .collect();
    let threshold = 1e3 * (u_trace / 0.1); // 10^3 x max of the trace past t0 + 0.1
    let opts = RingOptions {
        blow_up_threshold: Some(threshold),
        ..RingOptions::default()
    };
    let rep = solve_ring(l, nodes, &series, 0.0, dt, params, Equation::PLaplace, &opts).unwrap();
    assert!(rep.blow_up_flag, "expected blow-up");
    let detected = rep.blow_up_time.unwrap();
    assert!((detected - t0).abs() <= 5.0 * dt, "detected {detected} vs t0 {t0}");

    // the flag persists when the threshold is raised tenfold
    let opts10 = RingOptions {
        blow_up_threshold: Some(10.0 * threshold),
        ..RingOptions::default()
    };
    let rep10 = solve_ring(l, nodes, &series, 0.0, dt, params, Equation::PLaplace, &opts10).unwrap();
    assert!(rep10.blow_up_flag, "flag lost at 10x threshold");
    let detected10 = rep10.blow_up_time.unwrap();
    assert!((detected10 - t0).abs() <= 5.0 * dt);

    // bounded case: trace of an evolved bump, zero-shifted by delta
    let bump_nodes = 257;
    let bump = {
        let h = 6.0 / (bump_nodes as f64 - 1.0);
        let initial: Vec<f64> = (0..bump_nodes)
            .map(|i| {
                let x = 0.0 + i as f64 * h;
                1.5 * (1.0 - ((x - 3.0) / 2.0) * ((x - 3.0) / 2.0)).max(0.0).powi(2)
            })
            .collect();
        let problem = EvolutionProblem::new(
            params,
            Equation::PLaplace,
            Geometry::Interval { a: 0.0, b: 6.0 },
            initial,
            0.0,
            5e-4,
            1100, // T = 0.55
        );
        evolve(&problem).unwrap()
    };
    let delta = 0.02;
    let ring_dt = 5e-5;
    let make_series = |steps: usize| -> Vec<f64> {
        (0..=steps)
            .map(|j| {
                let t = j as f64 * ring_dt;
                if t > delta {
                    bump.field.eval(&[4.0], t - delta)
                } else {
                    0.0
                }
            })
            .collect()
    };
    let steps_t = 5000; // T = 0.25
    let bounded = solve_ring(
        l,
        nodes,
        &make_series(steps_t),
        0.0,
        ring_dt,
        params,
        Equation::PLaplace,
        &RingOptions::default(),
    )
    .unwrap();
    assert!(!bounded.blow_up_flag, "bounded trace must not flag");
    let bounded2 = solve_ring(
        l,
        nodes,
        &make_series(2 * steps_t),
        0.0,
        ring_dt,
        params,
        Equation::PLaplace,
        &RingOptions::default(),
    )
    .unwrap();
    assert!(!bounded2.blow_up_flag);
    let sup1 = bounded.max_trace.iter().copied().fold(0.0, f64::max);
    let sup2 = bounded2.max_trace.iter().copied().fold(0.0, f64::max);
    assert!(
        sup2 <= 1.05 * sup1 + 1e-12,
        "outer sup grew under T-extension: {sup1} -> {sup2}"
    );
    println!(
        "criterion 5 (dichotomy probe): PASS (detected {:.6}/{:.6}, bounded sup {:.4} -> {:.4})",
        detected, detected10, sup1, sup2
    );
}

#[test]
fn criterion_06_comparison_principle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let trials = 1000;
    let nodes = 33;
    let mut worst_min = f64::INFINITY;
    for trial in 0..trials {
        let eq = if trial % 2 == 0 { Equation::PLaplace } else { Equation::Pme };
        let params = MediumParams::new(Some(3.0), Some(2.0), 1).unwrap();
        let initial_a: Vec<f64> = (0..nodes).map(|_| rng.random_range(0.0..1.0)).collect();
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
        let rep = comparison_check(&make(initial_a, ba), &make(initial_b, bb), 1e-12).unwrap();
        assert!(rep.ordered, "ordering violated in trial {trial}");
        worst_min = worst_min.min(rep.min_value);
    }
    assert!(worst_min >= 0.0, "positivity violated: min {worst_min}");
    println!("criterion 6 (comparison principle): PASS ({trials} trials, min value {worst_min:.3e})");
}

#[test]
fn criterion_07_harnack_corroboration() {
    // Barenblatt, p-Laplace branch
    let b = barenblatt();
    let domain = Cylinder::interval(-4.0, 4.0, 0.5, 2.0).unwrap();
    let src = b.source(domain);
    let core = Cylinder::interval(-1.0, 1.0, 1.0, 1.4).unwrap();
    let gamma_at = |samples: usize| {
        let cfg = HarnackConfig::new(1.0, samples, 11, core.clone(), (0.02, 0.12));
        harnack_check(&src, &p3n1(), Equation::PLaplace, &cfg).unwrap()
    };
    let r200 = gamma_at(200);
    let r400 = gamma_at(400);
    assert!(r200.gamma_measured.is_finite() && r200.gamma_measured >= 1.0);
    let drift = (r400.gamma_measured / r200.gamma_measured - 1.0).abs();
    assert!(drift <= 0.10, "gamma drift {drift:.3} under budget doubling");

    // intrinsic rescaling u -> k u, t -> k^{2-p} t leaves gamma invariant
    let k: f64 = 2.0;
    let p: f64 = 3.0;
    let scaled_domain = Cylinder::interval(-4.0, 4.0, 0.5 / k.powf(p - 2.0), 2.0 / k.powf(p - 2.0)).unwrap();
    let b2 = barenblatt();
    let scaled = FnField::new(scaled_domain, move |x, t| k * b2.eval(x, k.powf(p - 2.0) * t));
    let scaled_core = Cylinder::interval(-1.0, 1.0, 1.0 / k.powf(p - 2.0), 1.4 / k.powf(p - 2.0)).unwrap();
    let cfg_scaled = HarnackConfig::new(1.0, 200, 11, scaled_core, (0.02, 0.12));
    let r_scaled = harnack_check(&scaled, &p3n1(), Equation::PLaplace, &cfg_scaled).unwrap();
    let invariance = (r_scaled.gamma_measured / r200.gamma_measured - 1.0).abs();
    assert!(invariance <= 0.01, "rescaled gamma off by {invariance:.4}");

    // evolved PME bump (m = 2)
    let bump = evolve_pme_bump(257, 0.5, 250);
    let pme_core = Cylinder::interval(-1.0, 1.0, 0.15, 0.35).unwrap();
    let pme_gamma = |samples: usize| {
        let cfg = HarnackConfig::new(1.0, samples, 13, pme_core.clone(), (0.095, 0.2));
        harnack_check(&bump.field, &m2n1(), Equation::Pme, &cfg).unwrap()
    };
    let q200 = pme_gamma(200);
    let q400 = pme_gamma(400);
    assert!(q200.gamma_measured.is_finite() && q200.gamma_measured >= 1.0);
    let pme_drift = (q400.gamma_measured / q200.gamma_measured - 1.0).abs();
    assert!(pme_drift <= 0.10, "PME gamma drift {pme_drift:.3}");

    println!(
        "criterion 7 (Harnack corroboration): PASS (gamma {:.3} drift {:.3}, invariance {:.2e}, PME gamma {:.3} drift {:.3})",
        r200.gamma_measured, drift, invariance, q200.gamma_measured, pme_drift
    );
}

#[test]
fn criterion_08_infimal_convolution() {
    let g = Grid::interval(-1.0, 1.0, 65, 0.0, 0.025, 40).unwrap();
    let field = ScalarField::from_fn(g, None, |x, t| {
        x[0].abs() + 0.5 * (3.0 * t).sin().abs() + 0.3 * x[0] * x[0]
    });
    let domain = field.grid.cylinder();
    let eps_seq = [0.1, 0.05, 0.025];
    let mut sup_prev = f64::INFINITY;
    let mut last_vals: Option<Vec<f64>> = None;
    for &eps in &eps_seq {
        let spec = InfConvSpec::new(eps, domain.clone()).unwrap();
        let brute = inf_convolve(&field, &spec).unwrap();
        let fast = inf_convolve_fast(&field, &spec).unwrap();
        assert_eq!(brute.values(), fast.values(), "paths disagree at eps {eps}");
        let mut sup_diff: f64 = 0.0;
        for (o, v) in brute.values().iter().zip(field.values()) {
            assert!(o <= &(v + 1e-15), "v_eps exceeds v");
            sup_diff = sup_diff.max(v - o);
        }
        assert!(sup_diff <= sup_prev + 1e-15, "sup|v_eps - v| not decreasing at {eps}");
        sup_prev = sup_diff;
        if let Some(prev) = &last_vals {
            // smaller eps lies pointwise above the previous (larger) eps
            for (small, large) in brute.values().iter().zip(prev) {
                assert!(small + 1e-15 >= *large, "monotonicity in eps violated");
            }
        }
        last_vals = Some(brute.values().to_vec());
    }
    println!("criterion 8 (infimal convolution): PASS (final sup gap {sup_prev:.3e})");
}

#[test]
fn criterion_09_caccioppoli() {
    let p = 3.0;
    let mut ratios = Vec::new();
    for lvl in 0..3 {
        let nodes = 128 * (1 << lvl) + 1;
        let steps = 32 << lvl;
        let rep = evolve_barenblatt(nodes, 1.0, steps);
        let g = &rep.field.grid;
        let zeta: Vec<f64> = (0..nodes)
            .map(|i| {
                let x = g.node_x(i);
                let s = (x - 2.5) / 1.2;
                if s.abs() < 1.0 {
                    (std::f64::consts::FRAC_PI_2 * s).cos().powi(2)
                } else {
                    0.0
                }
            })
            .collect();
        let rep = caccioppoli_check(&rep.field, &zeta, p, 0.6, 0.9).unwrap();
        assert!(rep.rhs > 0.0, "raw bracket must be positive (lvl {lvl}): {rep:?}");
        ratios.push(rep.ratio);
    }
    let r_lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let r_hi = ratios.iter().copied().fold(0.0, f64::max);
    assert!(r_hi / r_lo <= 2.0, "ratio unstable across refinements: {ratios:?}");
    println!("criterion 9 (Caccioppoli): PASS (ratios {ratios:?})");
}

#[test]
fn criterion_10_pme_mirror() {
    let params = m2n1();
    let exps = derived_constants(&params).pme.unwrap();
    assert_eq!(exps.class_threshold, 1.0);
    assert_eq!(exps.q_crit, 4.0);
    assert!((exps.qgrad_crit - 4.0 / 3.0).abs() < 1e-15);

    // separable Friendly Giant field
    let giant = EigenResult::from_giant_first_integral(2.0, 1.0, 513).unwrap();
    let t0 = 0.3;
    let spec = PmeSeparableSpec::new(giant.clone(), t0).unwrap();
    let src = spec.source(0.0, 1.3).unwrap();
    let mut cfg = ShellConfig::slice(0.5);
    cfg.core = Some((0.25, 0.75));
    let hint = SingularHint::Slice { t: t0 };
    let at = |q: f64| classify_summability(&src, &hint, q, &cfg).unwrap().verdict;
    assert_eq!(at(exps.class_threshold), Verdict::Divergent, "q = m-1");
    assert_eq!(at(0.5 * exps.class_threshold), Verdict::Finite, "q = (m-1)/2");
    assert_eq!(at(exps.q_crit), Verdict::Divergent, "q = m+2/n");

    // gradient of v^m = (t-t0)^{-m/(m-1)} d(G^m)/dx: divergent at the
    // gradient threshold for the separable field
    let m = 2.0;
    let gdomain = src.domain();
    let giant2 = giant.clone();
    let grad_src = FnField::new(gdomain, move |x, t| {
        if t <= t0 {
            return 0.0;
        }
        let h = 1e-5;
        let xl = (x[0] - h).max(0.0);
        let xr = (x[0] + h).min(1.0);
        let wl = giant2.interp(&[xl]).unwrap().powf(m);
        let wr = giant2.interp(&[xr]).unwrap().powf(m);
        ((wr - wl) / (xr - xl)).abs() * (t - t0).powf(-m / (m - 1.0))
    });
    let gat = |q: f64| classify_summability(&grad_src, &hint, q, &cfg).unwrap().verdict;
    assert_eq!(gat(exps.qgrad_crit), Verdict::Divergent, "q' = 1+1/(1+nm)");

    // classifier verdict on the separable field: label M with the minorant
    let scan = Grid::interval(0.0, 1.0, 257, 0.0, 1e-3, 1300).unwrap();
    let verdict = pme_classify(&src, &scan, &params).unwrap();
    assert_eq!(verdict.label, Label::M);
    assert!((verdict.t0_detected.unwrap() - t0).abs() <= 5e-3);
    assert!(verdict.minorant_floor > 0.0);

    // bounded evolved specimen: label B; finite at the thresholds
    let bounded = evolve_pme_compact_bump(257, 0.5, 2500);
    let bscan = Grid::interval(-3.0, 3.0, 129, 0.0, 0.01, 50).unwrap();
    let bverdict = pme_classify(&bounded.field, &bscan, &params).unwrap();
    assert_eq!(bverdict.label, Label::B, "{bverdict:?}");
    let bdomain = bounded.field.domain();
    let mut bcfg = ShellConfig::slice(0.2);
    bcfg.factor = 2.0;
    bcfg.shells = 10;
    bcfg.core = Some((-1.5, 1.5));
    let bhint = SingularHint::Slice { t: 0.1 };
    let bat = |q: f64| classify_summability(&bounded.field, &bhint, q, &bcfg).unwrap().verdict;
    assert_eq!(bat(exps.class_threshold), Verdict::Finite);
    assert_eq!(bat(exps.q_crit - 0.5), Verdict::Finite);
    // gradient of v^m on the bounded field stays finite below the threshold
    let bfield = bounded.field.clone();
    let bgrad = FnField::new(bdomain, move |x, t| {
        let h = bfield.grid.h;
        let xl = (x[0] - h).max(-3.0);
        let xr = (x[0] + h).min(3.0);
        let wl = bfield.eval(&[xl], t).max(0.0).powf(m);
        let wr = bfield.eval(&[xr], t).max(0.0).powf(m);
        ((wr - wl) / (xr - xl)).abs()
    });
    let bgat = |q: f64| classify_summability(&bgrad, &bhint, q, &bcfg).unwrap().verdict;
    assert_eq!(bgat(exps.qgrad_crit - 0.2), Verdict::Finite);

    // Friendly Giant: residual convergence and oracle agreement
    let mut sups = Vec::new();
    for n in [129usize, 257, 513] {
        let g = slowdiff::eigen::giant_profile_from_first_integral(m, 1.0, n).unwrap();
        let h = 1.0 / (n as f64 - 1.0);
        let w: Vec<f64> = g.iter().map(|&v| v.powf(m)).collect();
        let mut sup = 0.0_f64;
        for i in 1..n - 1 {
            let lap = (w[i + 1] - 2.0 * w[i] + w[i - 1]) / (h * h);
            sup = sup.max((lap + g[i] / (m - 1.0)).abs());
        }
        sups.push(sup);
    }
    assert!(sups[1] < sups[0] && sups[2] < sups[1], "giant residual sups {sups:?}");
    let oracle = giant_first_integral_oracle(m, 1.0).unwrap();
    let solved = minimize_quotient(
        &EigenDomain::Interval { length: 1.0, nodes: 513 },
        &params,
        Equation::Pme,
        &MinimizeOptions::default(),
    )
    .unwrap();
    let rel = (solved.max() - oracle.g_max).abs() / oracle.g_max;
    assert!(rel <= 5e-3, "giant solver vs oracle: {rel:.2e}");

    // truncation-gradient check: unbounded growth on the separable field,
    // saturation on the bounded one
    let window = Cylinder::interval(0.0, 1.0, t0 - 0.1, t0 + 0.5).unwrap();
    let mut prev = 0.0;
    for j in [10.0, 100.0, 1000.0, 10000.0] {
        let v = pme_truncation_gradient_check(&src, m, j, &window, 256, 512).unwrap();
        assert!(v > 2.0 * prev, "no growth at j = {j}: {v} vs {prev}");
        prev = v;
    }
    let bwindow = Cylinder::interval(-2.0, 2.0, 0.05, 0.45).unwrap();
    let sup_wm = bounded.field.max_value().powf(m);
    let v1 =
        pme_truncation_gradient_check(&bounded.field, m, 2.0 * sup_wm, &bwindow, 128, 64).unwrap();
    let v2 =
        pme_truncation_gradient_check(&bounded.field, m, 20.0 * sup_wm, &bwindow, 128, 64).unwrap();
    assert!((v1 - v2).abs() <= 1e-12 * v1.max(1e-300), "saturation failed: {v1} vs {v2}");

    println!(
        "criterion 10 (PME mirror): PASS (giant rel err {:.2e}, truncation growth to {:.3e})",
        rel, prev
    );
}
