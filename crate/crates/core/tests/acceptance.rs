//! Acceptance run: one PASS/FAIL line per criterion, tolerances fixed here.
//! Exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use wellpol::conventional_sum::{calibrate_c, infinite_well_alpha, one_term_analytic, ONE_TERM_PRINTED};
use wellpol::dalgarno_lewis::{
    alpha_prime, alpha_via_quadrature, breakdown, orthogonality, t_ratio, PhiReduced, SecondDerivative,
    INFINITE_WELL_ALPHA_PRINTED,
};
use wellpol::format::parse_printed;
use wellpol::grid_oracle::{run_oracle, GridOracleConfig};
use wellpol::limits::{delta_limit, infinite_well_limit, DeltaLimitConfig, DEFAULT_EPSILONS};
use wellpol::published::{PublishedRow, TABLE1, TABLE2};
use wellpol::GroundState;

const TABLE_RUNTIME: Duration = Duration::from_secs(1);
const QUADRATURE_RUNTIME: Duration = Duration::from_secs(10);
const ORACLE_RUNTIME: Duration = Duration::from_secs(120);
const ORACLE_POINTS: usize = 8000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn state(hundredths: i64) -> GroundState {
    GroundState::from_gamma(hundredths as f64 / 100.0 * PI).unwrap()
}

/// Every printed entry against the computed value, within one unit of the
/// last printed digit. Returns the failures.
fn compare_table(rows: &[PublishedRow]) -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut failures = Vec::new();
    for row in rows {
        let b = breakdown(&state(row.gamma_hundredths));
        for (column, printed) in row.entries() {
            let computed = match column {
                "beta0" => b.beta0,
                "R" => b.strength,
                "alpha1" => b.alpha1_prime,
                "alpha2" => b.alpha2_prime,
                "alpha" => b.alpha_prime,
                "alpha_apr" => b.alpha_apr_prime,
                other => panic!("unexpected column {other}"),
            };
            let (value, ulp) = parse_printed(printed).unwrap();
            checked += 1;
            if (computed - value).abs() > ulp * (1.0 + 1e-9) {
                failures.push(format!(
                    "0.{}pi {column}: computed {computed:.7} vs printed {printed}",
                    row.gamma_hundredths
                ));
            }
        }
    }
    (checked, failures)
}

fn table_criterion(rows: &[PublishedRow], render: fn() -> wellpol::Result<wellpol::cli::Report>) -> Outcome {
    let start = Instant::now();
    render().unwrap();
    let elapsed = start.elapsed();
    let (checked, failures) = compare_table(rows);
    let mut detail = format!("{checked} entries, {} off by more than 1 ulp, runtime {elapsed:.2?}", failures.len());
    for f in &failures {
        detail.push_str(&format!("; {f}"));
    }
    outcome(failures.is_empty() && elapsed < TABLE_RUNTIME, detail)
}

fn criterion_1() -> Outcome {
    table_criterion(&TABLE1, wellpol::cli::table1)
}

fn criterion_2() -> Outcome {
    table_criterion(&TABLE2, wellpol::cli::table2)
}

fn criterion_3() -> Outcome {
    let lim = infinite_well_limit(&DEFAULT_EPSILONS).unwrap();
    let a2 = (lim.alpha2_limit - 0.070_224_7).abs() <= 1e-6;
    let a2t = (lim.alpha2_t_limit + 0.132_417_6).abs() <= 1e-6;
    let a1 = lim.alpha1_limit.abs() <= 1e-7;
    outcome(
        a2 && a2t && a1,
        format!(
            "alpha2' -> {:.9}, (alpha2')_t -> {:.9}, alpha1' -> {:.2e}",
            lim.alpha2_limit, lim.alpha2_t_limit, lim.alpha1_limit
        ),
    )
}

fn criterion_4() -> Outcome {
    let seq = delta_limit(&DeltaLimitConfig::default()).unwrap();
    let pass = (seq.alpha1_extrapolated - 1.25).abs() <= 1e-3 && seq.alpha2_extrapolated.abs() <= 1e-3;
    outcome(
        pass,
        format!(
            "scaled alpha1 -> {:.6}, scaled alpha2 -> {:.2e} after {} halvings",
            seq.alpha1_extrapolated, seq.alpha2_extrapolated, seq.steps
        ),
    )
}

fn criterion_5() -> Outcome {
    let t39 = t_ratio(&state(39)).unwrap();
    let t47 = t_ratio(&state(47)).unwrap();
    let pass = (t39 - 2.52).abs() <= 0.01 && (t47 - 2.84).abs() <= 0.01;
    outcome(pass, format!("T(0.39pi) = {t39:.4}, T(0.47pi) = {t47:.4}"))
}

fn criterion_6() -> Outcome {
    // 0.0702247 is the converged box sum printed to seven places. C' is
    // taken from the converged sum itself; the seven-digit literal is also
    // shown, with the spread its rounding alone puts on C'.
    let converged = infinite_well_alpha(1000).unwrap().partial_alpha_prime;
    let c = calibrate_c(converged).unwrap();
    let literal = calibrate_c(INFINITE_WELL_ALPHA_PRINTED).unwrap();
    let rounding = (calibrate_c(INFINITE_WELL_ALPHA_PRINTED + 5e-8).unwrap()
        - calibrate_c(INFINITE_WELL_ALPHA_PRINTED - 5e-8).unwrap())
    .abs()
        / 2.0;
    let one = one_term_analytic();
    let exact = 16384.0 / (243.0 * PI.powi(6));
    let pass = (c + 1.0).abs() <= 1e-9
        && (literal + 1.0).abs() <= rounding
        && (0.07012..=0.07015).contains(&one)
        && (0.07012..=0.07015).contains(&ONE_TERM_PRINTED)
        && (one / exact - 1.0).abs() <= 1e-12;
    outcome(
        pass,
        format!(
            "C' = {c:.12} from sum {converged:.13}; C'(0.0702247) = {literal:.9} (rounding spread {rounding:.1e}); \
             one-term {one:.9} vs printed {ONE_TERM_PRINTED}"
        ),
    )
}

fn gamma_grid() -> impl Iterator<Item = f64> {
    (0..50).map(|i| (0.1 + 0.39 * (i as f64 + 0.5) / 50.0) * PI)
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for g in gamma_grid() {
        let s = GroundState::from_gamma(g).unwrap();
        let q = alpha_via_quadrature(&s).unwrap().total();
        let a = alpha_prime(&s);
        worst = worst.max((q - a).abs() / a);
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-8 && elapsed < QUADRATURE_RUNTIME,
        format!("worst relative gap {worst:.2e} over 50 gamma0, runtime {elapsed:.2?}"),
    )
}

fn criterion_8() -> Outcome {
    let mut parity = 0.0f64;
    let mut ortho = 0.0f64;
    for g in gamma_grid() {
        let phi = PhiReduced::new(GroundState::from_gamma(g).unwrap());
        for i in 0..=60 {
            let x = i as f64 * 0.05;
            parity = parity.max((phi.eval(x) + phi.eval(-x)).abs());
            let s = phi.state();
            parity = parity.max((s.psi0(x) - s.psi0(-x)).abs());
        }
        ortho = ortho.max(orthogonality(&phi).unwrap().abs());
    }

    let mut analytic = 0.0f64;
    let mut fd = 0.0f64;
    for k in 10..=49 {
        let phi = PhiReduced::new(state(k));
        let inner_fd = SecondDerivative::RichardsonDifference { step: 8e-3 };
        let outer_fd = SecondDerivative::RichardsonDifference { step: (0.03 / phi.state().beta0).min(8e-3) };
        for i in 0..20 {
            let t = (i as f64 + 0.5) / 20.0;
            let (inner, outer) = (-0.99 + 1.98 * t, 1.01 + 2.0 * t);
            for how in [SecondDerivative::Analytic, inner_fd] {
                let r = phi.ode_residual_inner(inner, how).unwrap().abs();
                let r = r.max(phi.chi_residual(inner, how).unwrap().abs());
                if how == SecondDerivative::Analytic {
                    analytic = analytic.max(r);
                } else if k >= 20 {
                    fd = fd.max(r);
                }
            }
            for how in [SecondDerivative::Analytic, outer_fd] {
                let r = phi.ode_residual_outer(outer, how).unwrap().abs();
                let r = r.max(phi.ode_residual_outer(-outer, how).unwrap().abs());
                if how == SecondDerivative::Analytic {
                    analytic = analytic.max(r);
                } else if k >= 20 {
                    fd = fd.max(r);
                }
            }
        }
    }

    let mut transcendental = 0.0f64;
    for i in 0..=400 {
        let r = 0.05 * (4000f64).powf(i as f64 / 400.0);
        let s = GroundState::from_strength(r).unwrap();
        transcendental = transcendental.max(s.matching_residual().abs()).max(s.strength_residual().abs());
    }

    let mut positive = true;
    let mut monotone = true;
    let mut prev = 0.0;
    for k in (15..=49).rev() {
        let a = alpha_prime(&state(k));
        positive &= a > 0.0;
        monotone &= a > prev;
        prev = a;
    }

    let pass = parity <= 1e-10
        && ortho <= 1e-10
        && analytic <= 1e-9
        && fd <= 1e-9
        && transcendental <= 1e-10
        && positive
        && monotone;
    outcome(
        pass,
        format!(
            "parity {parity:.1e}, orthogonality {ortho:.1e}, ODE residual {analytic:.1e} analytic / {fd:.1e} \
             finite-difference (0.20pi..0.49pi), transcendental {transcendental:.1e} (R in [0.05, 200]), \
             positive {positive}, increasing as R falls {monotone}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut detail = Vec::new();

    let hard = run_oracle(&GridOracleConfig::hard_wall().with_points(ORACLE_POINTS), 2).unwrap();
    let reference = infinite_well_alpha(1000).unwrap().partial_alpha_prime;
    let hard_gap = hard.richardson_alpha / reference - 1.0;
    let hard_routes = hard.diagnostics.route_relative_gap;
    pass &= hard_gap.abs() <= 2e-3 && hard_routes <= 5e-3;
    detail.push(format!(
        "hard wall {:.9} vs box sum {reference:.9} ({hard_gap:+.1e}), routes {hard_routes:.1e}",
        hard.richardson_alpha
    ));

    let mut worst_routes = hard_routes;
    let mut prev = 0.0;
    let mut ordered = true;
    for row in TABLE1.iter().rev() {
        let s = state(row.gamma_hundredths);
        let cfg = GridOracleConfig::finite(s.strength).unwrap().with_points(ORACLE_POINTS);
        let res = run_oracle(&cfg, 2).unwrap();
        let routes = res.diagnostics.route_relative_gap;
        worst_routes = worst_routes.max(routes);
        let deviation = row.alpha_value() / res.richardson_alpha - 1.0;
        let ok = deviation.abs() <= 0.05 && routes <= 5e-3 && res.richardson_alpha > 0.0;
        pass &= ok;
        ordered &= res.richardson_alpha > prev;
        prev = res.richardson_alpha;
        detail.push(format!(
            "0.{}pi oracle {:.7} vs printed {} ({:+.2}%{})",
            row.gamma_hundredths,
            res.richardson_alpha,
            row.alpha,
            100.0 * deviation,
            if ok { "" } else { " OUT OF BAND" }
        ));
    }
    let elapsed = start.elapsed();
    pass &= ordered && elapsed < ORACLE_RUNTIME;
    detail.push(format!(
        "worst route gap {worst_routes:.1e}, increasing as R falls {ordered}, N = {ORACLE_POINTS}, runtime {elapsed:.1?}"
    ));
    outcome(pass, detail.join("; "))
}

fn criterion_10() -> Outcome {
    let commands: &[&[&str]] = &[
        &["table1"],
        &["table2"],
        &["solve", "--gamma", "0.41pi", "--method", "dalgarno-lewis", "--method", "dl-quadrature", "--method", "wide-box"],
        &["solve", "--R", "4"],
        &["sweep", "--min", "0.15pi", "--max", "0.49pi", "--step", "0.01pi"],
        &["limits"],
        &["calibrate"],
        &["calibrate", "--target", "0.0702247"],
        &["oracle", "--hard-wall", "--points", "1000", "--states", "100"],
        &["methods"],
    ];
    let run = |format: &str, args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_wellpol"))
            .args(["--format", format])
            .args(args)
            .output()
            .expect("binary runs");
        (out.status.code(), out.stdout)
    };
    let mut differing = Vec::new();
    let mut runs = 0;
    for args in commands {
        for format in ["csv", "json"] {
            let a = run(format, args);
            let b = run(format, args);
            runs += 1;
            if a != b || a.0 != Some(0) || a.1.is_empty() {
                differing.push(format!("{format} {}", args.join(" ")));
            }
        }
    }
    outcome(
        differing.is_empty(),
        format!("{runs} command/format pairs run twice; mismatched or failed: {differing:?}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("table 1 reproduction", criterion_1),
        ("table 2 reproduction", criterion_2),
        ("infinite-well limit", criterion_3),
        ("delta limit", criterion_4),
        ("T-ratio", criterion_5),
        ("C' calibration", criterion_6),
        ("closed form vs quadrature", criterion_7),
        ("property suite", criterion_8),
        ("oracle consistency", criterion_9),
        ("CLI determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {:>2} {} {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
