//! End-to-end acceptance checks. Each test writes one `criterion k: PASS|FAIL`
//! line to stdout (bypassing the capture) and fails if the criterion fails.

use std::f64::consts::PI;
use std::io::Write;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use sphere_filon::experiment::{cubature_errors, reference_values, run_interp_table, ExperimentSpec, InterpRow};
use sphere_filon::specfun::{gauss_lobatto, legendre_p, spherical_bessel_j, spherical_harmonic};
use sphere_filon::{cubature, interpolate, legendre_moments, Complex64, RealFn, SphericalGrid};

fn report(k: u32, failures: &[String], detail: &str) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut line = format!("criterion {k}: {status} ({detail})\n");
    for f in failures.iter().take(10) {
        line.push_str(&format!("    {f}\n"));
    }
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
    assert!(failures.is_empty(), "criterion {k} failed:\n{}", failures.join("\n"));
}

type InterpTable = [(usize, f64, Option<f64>, f64, Option<f64>); 5];

const TABLE_1: InterpTable = [
    (5, 4.0077e-02, None, 3.3636e-01, None),
    (10, 1.1383e-02, Some(1.8159), 1.6166e-01, Some(1.0570)),
    (20, 2.7244e-03, Some(2.0629), 8.9315e-02, Some(0.8560)),
    (40, 6.7527e-04, Some(2.0124), 3.9452e-02, Some(1.1788)),
    (80, 1.6554e-04, Some(2.0283), 2.0598e-02, Some(0.9376)),
];

const TABLE_2: InterpTable = [
    (5, 9.1450e-03, None, 6.4589e-02, None),
    (10, 5.7752e-04, Some(3.9850), 6.8649e-03, Some(3.2340)),
    (20, 3.4725e-05, Some(4.0558), 9.7395e-04, Some(2.8173)),
    (40, 2.2636e-06, Some(3.9393), 1.0621e-04, Some(3.1970)),
    (80, 1.4386e-07, Some(3.9758), 1.4652e-05, Some(2.8577)),
];

const TABLE_3: InterpTable = [
    (5, 8.7351e-03, None, 5.9412e-02, None),
    (10, 1.0756e-04, Some(6.3436), 1.2333e-03, Some(5.5901)),
    (20, 1.5172e-06, Some(6.1476), 4.0722e-05, Some(4.9206)),
    (40, 2.5432e-08, Some(5.8986), 1.1236e-06, Some(5.1796)),
    (80, 4.0461e-10, Some(5.9740), 3.9233e-08, Some(4.8399)),
];

/// Rows N = 5, 10, 20, 40; columns κ = 1e-2 ... 1e5.
type CubatureTable = [[f64; 8]; 4];

const TABLE_4: CubatureTable = [
    [2.0e-03, 2.1e-03, 3.2e-03, 1.1e-02, 7.3e-05, 9.5e-07, 7.7e-09, 7.4e-11],
    [1.3e-03, 1.3e-03, 1.3e-03, 3.6e-03, 2.6e-05, 1.8e-07, 1.4e-09, 1.3e-11],
    [3.7e-05, 3.7e-05, 3.8e-05, 1.3e-04, 1.4e-05, 1.4e-07, 1.8e-09, 1.9e-11],
    [1.6e-05, 1.6e-05, 1.6e-05, 1.7e-05, 1.4e-05, 8.1e-09, 9.7e-11, 9.7e-13],
];

const TABLE_5: CubatureTable = [
    [1.2e-04, 1.4e-04, 3.9e-04, 1.7e-03, 1.5e-05, 1.9e-07, 1.6e-09, 1.4e-11],
    [3.0e-05, 3.0e-05, 3.0e-05, 2.3e-04, 1.7e-06, 2.1e-08, 1.7e-10, 1.6e-12],
    [1.7e-07, 1.7e-07, 2.0e-07, 1.2e-06, 3.1e-07, 3.2e-09, 4.0e-11, 4.1e-13],
    [2.3e-08, 2.3e-08, 2.3e-08, 2.8e-08, 2.8e-08, 2.1e-11, 3.2e-13, 3.3e-15],
];

const TABLE_6: CubatureTable = [
    [3.1e-05, 7.0e-05, 1.5e-04, 8.1e-04, 7.2e-06, 1.0e-07, 7.0e-10, 6.3e-12],
    [1.7e-06, 1.7e-06, 1.8e-06, 4.5e-05, 4.2e-07, 5.5e-09, 4.3e-11, 4.1e-13],
    [1.4e-09, 1.4e-09, 2.4e-09, 2.9e-08, 1.9e-08, 1.9e-10, 2.3e-12, 2.3e-14],
    [9.0e-11, 9.0e-11, 9.0e-11, 1.3e-10, 2.7e-10, 8.1e-13, 3.2e-15, 4.8e-18],
];

fn interp_spec(power: f64) -> ExperimentSpec {
    ExperimentSpec {
        power,
        orders: vec![5, 10, 20, 40, 80],
        ..ExperimentSpec::default()
    }
}

fn compare_interp(label: &str, rows: &[InterpRow], table: &InterpTable, failures: &mut Vec<String>) {
    let rel = |a: f64, b: f64| (a / b - 1.0).abs();
    for (row, &(n, h0, e0, h1, e1)) in rows.iter().zip(table) {
        assert_eq!(row.n, n);
        for (name, got, want) in [("H0", row.h0_err, h0), ("H1", row.h1_err, h1)] {
            if rel(got, want) > 0.02 {
                failures.push(format!("{label} N={n} {name}: {got:.5e} vs {want:.5e}"));
            }
        }
        for (name, got, want) in [("H0 EOC", row.h0_eoc, e0), ("H1 EOC", row.h1_eoc, e1)] {
            match (got, want) {
                (None, None) => {}
                (Some(g), Some(w)) if (g - w).abs() <= 0.02 => {}
                _ => failures.push(format!("{label} N={n} {name}: {got:?} vs {want:?}")),
            }
        }
    }
}

#[test]
fn criterion_1_table_1() {
    let start = Instant::now();
    let rows = run_interp_table(&interp_spec(1.0)).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let mut failures = Vec::new();
    compare_interp("table 1", &rows, &TABLE_1, &mut failures);
    if elapsed > 60.0 {
        failures.push(format!("runtime {elapsed:.1} s > 60 s"));
    }
    report(1, &failures, &format!("20 entries within 2%, EOC within 0.02, {elapsed:.2} s"));
}

#[test]
fn criterion_2_tables_2_and_3() {
    let mut failures = Vec::new();
    compare_interp("table 2", &run_interp_table(&interp_spec(3.0)).unwrap(), &TABLE_2, &mut failures);
    compare_interp("table 3", &run_interp_table(&interp_spec(5.0)).unwrap(), &TABLE_3, &mut failures);
    report(2, &failures, "40 entries within 2%, EOC within 0.02");
}

#[test]
fn criterion_3_tables_4_to_6() {
    let kappas: Vec<f64> = (-2..=5).map(|e| 10f64.powi(e)).collect();
    let mut failures = Vec::new();
    let mut sweep = 0.0;
    let mut setup = 0.0;
    let mut worst: f64 = 1.0;
    for (power, table) in [(1.0, &TABLE_4), (3.0, &TABLE_5), (5.0, &TABLE_6)] {
        let spec = ExperimentSpec {
            power,
            orders: vec![5, 10, 20, 40],
            kappas: kappas.clone(),
            ..ExperimentSpec::default()
        };
        let t0 = Instant::now();
        let refs = reference_values(&spec).unwrap();
        let t1 = Instant::now();
        let rows = cubature_errors(&spec, &refs).unwrap();
        sweep += t1.elapsed().as_secs_f64();
        setup += (t1 - t0).as_secs_f64();
        for (i, row) in rows.iter().enumerate() {
            let want = table[i / 8][i % 8];
            let got = row.abs_err;
            let ok = if want < 1e-13 {
                got <= 1e-12
            } else {
                let ratio = (got / want).max(want / got);
                worst = worst.max(ratio);
                ratio <= 2.0
            };
            if !ok {
                failures.push(format!("s={power} N={} κ={:e}: {got:.3e} vs {want:.1e}", row.n, row.kappa));
            }
        }
    }
    if sweep > 5.0 {
        failures.push(format!("sweep {sweep:.2} s > 5 s"));
    }
    if setup > 120.0 {
        failures.push(format!("reference construction {setup:.1} s > 120 s"));
    }
    report(
        3,
        &failures,
        &format!("96 cells, worst ratio {worst:.3}, sweep {sweep:.3} s, references {setup:.2} s"),
    );
}

#[test]
fn criterion_4_kappa_decay() {
    let spec = ExperimentSpec {
        power: 3.0,
        orders: vec![10],
        kappas: vec![1e2, 1e3, 1e4, 1e5],
        ..ExperimentSpec::default()
    };
    let rows = cubature_errors(&spec, &reference_values(&spec).unwrap()).unwrap();
    let mut failures = Vec::new();
    let mut ratios = Vec::new();
    for w in rows.windows(2) {
        let r = w[1].abs_err / w[0].abs_err;
        ratios.push(format!("{r:.4}"));
        if r > 0.05 {
            failures.push(format!("κ={:e}: ratio {r:.4}", w[1].kappa));
        }
    }
    report(4, &failures, &format!("ratios {}", ratios.join(", ")));
}

#[test]
fn criterion_5_harmonic_exactness() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let mut failures = Vec::new();
    let mut count = 0;
    let mut worst: f64 = 0.0;
    for n in 3..=12usize {
        for deg in 0..n {
            for m in -(deg as i64)..=deg as i64 {
                let y = move |t: f64, p: f64| spherical_harmonic(deg, m, t, p).unwrap();
                let q = interpolate(&y, n).unwrap();
                count += 1;
                for _ in 0..1000 {
                    let z: f64 = rng.gen_range(-1.0..=1.0);
                    let (t, p) = (z.acos(), rng.gen_range(0.0..2.0 * PI));
                    let e = (q.evaluate(t, p) - y(t, p)).norm();
                    worst = worst.max(e);
                    if e > 1e-9 {
                        failures.push(format!("N={n} Y_{deg}^{m} at ({t}, {p}): {e:e}"));
                    }
                }
            }
        }
    }
    report(5, &failures, &format!("{count} harmonics x 1000 points, max error {worst:.2e}"));
}

const GL8_X: [f64; 4] = [0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363];
const GL8_W: [f64; 4] = [0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763];

fn panel_quadrature<G: Fn(f64) -> Complex64>(g: G, panels: usize) -> Complex64 {
    let h = 2.0 / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = -1.0 + (p as f64 + 0.5) * h;
        for (&x, &w) in GL8_X.iter().zip(&GL8_W) {
            acc += (g(mid - 0.5 * h * x) + g(mid + 0.5 * h * x)) * (0.5 * h * w);
        }
    }
    acc
}

#[test]
fn criterion_6_quadrature_properties() {
    let mut failures = Vec::new();
    let mut rng = rand::rngs::StdRng::seed_from_u64(6);

    for n in 2..=256usize {
        let rule = gauss_lobatto(n).unwrap();
        let nf = n as f64;
        if rule.weights()[0] != 2.0 / (nf * (nf + 1.0)) {
            failures.push(format!("N={n}: endpoint weight {}", rule.weights()[0]));
        }
        // exactness on a random polynomial of degree 2N-1 in the Legendre basis
        let coeffs: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let quad = rule.integrate(|x| coeffs.iter().enumerate().map(|(k, c)| c * legendre_p(k, x).0).sum());
        if (quad - 2.0 * coeffs[0]).abs() > 1e-12 {
            failures.push(format!("N={n}: degree-{} rule error {:e}", 2 * n - 1, quad - 2.0 * coeffs[0]));
        }
        let grid = SphericalGrid::new(n).unwrap();
        let h = nf + 0.5;
        let lower = |j: usize| ((j as f64 - 0.25) * PI / h, (j as f64 + 1.0) * PI / h);
        for j in 1..n {
            let (a, b) = if 2 * j < n {
                lower(j)
            } else if 2 * j == n {
                (0.5 * PI - 0.625 * PI / h, 0.5 * PI + 0.625 * PI / h)
            } else {
                let (a, b) = lower(n - j);
                (PI - b, PI - a)
            };
            let t = grid.theta()[j];
            if !(a <= t && t <= b) {
                failures.push(format!("N={n} j={j}: θ={t} outside [{a}, {b}]"));
            }
        }
    }

    for kappa in [1e-2, 0.3, 1.0, 10.0, 123.4, 1e3, 1e5] {
        let j = spherical_bessel_j(120, kappa).unwrap();
        for n in 1..120 {
            let lhs = j[n - 1] + j[n + 1];
            let rhs = (2 * n + 1) as f64 / kappa * j[n];
            let scale = lhs.abs().max(rhs.abs()).max(j[n - 1].abs());
            if scale > 1e-290 && (lhs - rhs).abs() > 1e-10 * scale {
                failures.push(format!("κ={kappa} n={n}: recurrence residual {:e}", (lhs - rhs).abs() / scale));
            }
        }
    }

    for kappa in [0.01, 1.0, 10.0, 1e3] {
        let k = legendre_moments(kappa, 30).unwrap();
        for n in 0..=30 {
            let oracle = panel_quadrature(|x| Complex64::from_polar(legendre_p(n, x).0, kappa * x), 4000);
            let e = (k.moments()[n] - oracle).norm();
            if e > 1e-10 {
                failures.push(format!("μ_{n}({kappa}): error {e:e}"));
            }
        }
    }
    report(6, &failures, "Lobatto exactness, endpoint weights, node brackets, Bessel recurrence, moments");
}

#[test]
fn criterion_7_constant_function() {
    let one = RealFn(|_: f64, _: f64| 1.0);
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for kappa in [1e-2f64, 1.0, 1e2, 1e5] {
        let exact = 4.0 * PI * kappa.sin() / kappa;
        for n in [2, 5, 40] {
            let v = cubature(&one, n, kappa).unwrap().value;
            let e = (v - exact).norm() / exact.abs();
            worst = worst.max(e);
            if e > 1e-13 {
                failures.push(format!("κ={kappa:e} N={n}: relative error {e:e}"));
            }
        }
    }
    report(7, &failures, &format!("max relative error {worst:.2e}"));
}

#[test]
fn criterion_8_determinism() {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_sphere-filon"))
            .args(["tables", "--which", "all", "--format", "csv"])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let a = run();
    let b = run();
    let mut failures = Vec::new();
    if a != b {
        failures.push("outputs differ".to_string());
    }
    if a.is_empty() {
        failures.push("empty output".to_string());
    }
    report(8, &failures, &format!("two `tables --which all` runs, {} bytes each", a.len()));
}
