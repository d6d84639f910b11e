//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_UNATTAINABLE` are still run and reported; their
//! failure does not fail the suite, but an unexpected failure anywhere does.

mod common;

use std::f64::consts::SQRT_2;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use oz_core::empirics::compute_zeros;
use oz_core::limitlaw::semicircle_sigma;
use oz_core::{
    eigenvalues, general_density, ismail_li_bound, jacobi_chain, jacobi_operator, ks_distance, laguerre_tridiagonal,
    msv_limits, named_density, predict_extremes, theorem_statistic, AffineMap, GeneralLaw, Law, NamedLaw,
    ParamSchedule, Problem, SpectrumRequest,
};

const KNOWN_UNATTAINABLE: &[&str] = &["8c"];

struct Check {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Check {
    Check { pass, detail: detail.into() }
}

fn sched(s: &str) -> ParamSchedule {
    s.parse().unwrap()
}

fn spectrum(op: &oz_core::TridiagonalOperator) -> Vec<f64> {
    eigenvalues(&SpectrumRequest::new(op)).unwrap()
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" ")
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

/// Decreasing except for at most one step.
fn mostly_decreasing(v: &[f64]) -> bool {
    v.windows(2).filter(|w| w[1] >= w[0]).count() <= 1
}

/// Real roots of `p` on `[lo, hi]` by sign-change bracketing and bisection.
fn poly_roots(p: impl Fn(f64) -> f64, lo: f64, hi: f64, grid: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    let xs: Vec<f64> = (0..=grid).map(|i| lo + (hi - lo) * i as f64 / grid as f64).collect();
    for w in xs.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (fa, fb) = (p(a), p(b));
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if fa * fb < 0.0 {
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if p(a) * p(m) <= 0.0 {
                    b = m;
                } else {
                    a = m;
                }
            }
            roots.push(0.5 * (a + b));
        }
    }
    roots
}

/// `C(n + a, m)` for real `a` as a product.
fn binom(top: f64, m: usize) -> f64 {
    (0..m).fold(1.0, |acc, i| acc * (top - i as f64) / (m - i) as f64)
}

/// Explicit `P_n^{(a,b)}(x) = Σ_k C(n+a, n−k) C(n+b, k) ((x−1)/2)^k ((x+1)/2)^{n−k}`.
fn jacobi_poly(n: usize, a: f64, b: f64, x: f64) -> f64 {
    (0..=n)
        .map(|k| {
            binom(n as f64 + a, n - k)
                * binom(n as f64 + b, k)
                * ((x - 1.0) / 2.0).powi(k as i32)
                * ((x + 1.0) / 2.0).powi((n - k) as i32)
        })
        .sum()
}

/// Explicit `L_n^{(a)}(x) = Σ_k (−1)^k C(n+a, n−k) x^k / k!`.
fn laguerre_poly(n: usize, a: f64, x: f64) -> f64 {
    let mut fact = 1.0;
    let mut sum = 0.0;
    for k in 0..=n {
        if k > 0 {
            fact *= k as f64;
        }
        sum += (-1f64).powi(k as i32) * binom(n as f64 + a, n - k) * x.powi(k as i32) / fact;
    }
    sum
}

fn criterion_1() -> Check {
    let grid: Vec<f64> = (0..20).map(|i| -0.9 + 20.9 * (i as f64 + 0.5) / 20.0).collect();
    let mut worst_p1 = 0.0f64;
    let mut worst_l1 = 0.0f64;
    for &a in &grid {
        for &b in &grid {
            let z = spectrum(&jacobi_operator(1, a, b, &AffineMap::identity()).unwrap())[0];
            worst_p1 = worst_p1.max((z - (b - a) / (a + b + 2.0)).abs());
        }
        let l = spectrum(&laguerre_tridiagonal(1, a, &AffineMap::identity()).unwrap())[0];
        worst_l1 = worst_l1.max((l - (a + 1.0)).abs());
    }
    let legendre = |x: f64| (63.0 * x.powi(5) - 70.0 * x.powi(3) + 15.0 * x) / 8.0;
    let oracle = poly_roots(legendre, -1.0, 1.0, 2001);
    let pipeline = compute_zeros(&Problem::jacobi(sched("0"), sched("0")), 5).unwrap().raw;
    let worst_leg = oracle.iter().zip(&pipeline).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);

    // explicit-sum oracles for degrees 2..=5
    let mut worst_small = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let n = rng.gen_range(2..=5);
        let (a, b) = (rng.gen_range(-0.9..5.0), rng.gen_range(-0.9..5.0));
        let oracle = poly_roots(|x| jacobi_poly(n, a, b, x), -1.0, 1.0, 4000);
        let z = spectrum(&jacobi_operator(n, a, b, &AffineMap::identity()).unwrap());
        if oracle.len() != n {
            return check(false, format!("oracle found {} roots for P_{n}^({a},{b})", oracle.len()));
        }
        worst_small = oracle.iter().zip(&z).map(|(o, v)| (o - v).abs()).fold(worst_small, f64::max);
        let hi = 4.0 * n as f64 + 2.0 * a + 10.0;
        let oracle = poly_roots(|x| laguerre_poly(n, a, x), 0.0, hi, 20000);
        let z = spectrum(&laguerre_tridiagonal(n, a, &AffineMap::identity()).unwrap());
        if oracle.len() != n {
            return check(false, format!("oracle found {} roots for L_{n}^({a})", oracle.len()));
        }
        worst_small = oracle.iter().zip(&z).map(|(o, v)| (o - v).abs() / o.abs().max(1.0)).fold(worst_small, f64::max);
    }
    let pass = worst_p1 <= 1e-14 && worst_l1 <= 1e-14 && worst_leg <= 1e-12 && worst_small <= 1e-12;
    check(
        pass,
        format!(
            "max |P_1 err| {worst_p1:.1e}, |L_1 err| {worst_l1:.1e}, Legendre-5 {worst_leg:.1e}, explicit n<=5 {worst_small:.1e}"
        ),
    )
}

fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut bad = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=40);
        let (a, b) = (rng.gen_range(-0.9..50.0), rng.gen_range(-0.9..50.0));
        let chain = jacobi_chain(n, a, b).unwrap();
        let in_range = chain.values().iter().all(|&p| p > 0.0 && p < 1.0);
        let op = oz_core::chain_to_tridiagonal(&chain, &AffineMap::identity()).unwrap();
        let positive = op.offdiag().iter().all(|&e| e > 0.0);
        if !(in_range && positive) {
            bad += 1;
        }
    }
    check(bad == 0, format!("{bad}/500 draws violate p_j in (0,1) or positive off-diagonals"))
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let id = AffineMap::identity();
    let mut worst_reflect = 0.0f64;
    let mut interlace_failures = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=50);
        let (a, b) = (rng.gen_range(-0.9..30.0), rng.gen_range(-0.9..30.0));
        let z = spectrum(&jacobi_operator(n, a, b, &id).unwrap());
        let r = spectrum(&jacobi_operator(n, b, a, &id).unwrap());
        for (x, y) in z.iter().zip(r.iter().rev()) {
            worst_reflect = worst_reflect.max((x + y).abs());
        }
        let w = spectrum(&jacobi_operator(n + 1, a, b, &id).unwrap());
        if !(0..n).all(|i| w[i] < z[i] && z[i] < w[i + 1]) {
            interlace_failures += 1;
        }
    }
    check(
        worst_reflect <= 1e-13 && interlace_failures == 0,
        format!("max reflection error {worst_reflect:.1e}, interlacing failures {interlace_failures}/100"),
    )
}

fn all_named() -> Vec<NamedLaw> {
    use NamedLaw::*;
    vec![
        JacobiArc { a: 0.0, b: 0.0 },
        JacobiArc { a: 1.5, b: 0.5 },
        Semicircle { sigma: semicircle_sigma(2.0) },
        MpType { b: 0.0 },
        MpType { b: 1.0 },
        ShiftedSemicircle,
        LaguerreMp { a: 0.0 },
        LaguerreMp { a: 2.0 },
        LaguerreSemicircle,
        HermiteTwoArc { c: 0.0 },
        HermiteTwoArc { c: 1.0 },
        HermiteQuartic,
    ]
}

fn semicircle_pdf(radius: f64, x: f64) -> f64 {
    let r2 = radius * radius - x * x;
    if r2 <= 0.0 {
        0.0
    } else {
        2.0 / (std::f64::consts::PI * radius * radius) * r2.sqrt()
    }
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_sc = 0.0f64;
    for _ in 0..50 {
        let b = rng.gen_range(0.01..5.0);
        let law = GeneralLaw::new(0.0, 0.0, b, b).unwrap();
        let radius = 2.0 * f64::sqrt(b);
        for _ in 0..20 {
            let x = rng.gen_range(-1.2..1.2) * radius;
            worst_sc = worst_sc.max((general_density(&law, x).unwrap() - semicircle_pdf(radius, x)).abs());
        }
    }
    let mut worst_mass = 0.0f64;
    for law in all_named() {
        worst_mass = worst_mass.max((law.total_mass().unwrap() - 1.0).abs());
    }
    let mut worst_id = 0.0f64;
    for c in [0.5f64, 1.0, 2.0] {
        let b = 4.0 * c * c / (1.0 + c).powi(3);
        let general = GeneralLaw::new(0.0, 0.0, b, b).unwrap();
        let named = NamedLaw::Semicircle { sigma: semicircle_sigma(c) };
        for i in 0..=200 {
            let x = -1.2 + 2.4 * i as f64 / 200.0;
            worst_id = worst_id.max((general_density(&general, x).unwrap() - named_density(&named, x)).abs());
        }
    }
    check(
        worst_sc <= 1e-12 && worst_mass <= 1e-8 && worst_id <= 1e-12,
        format!("semicircle reduction {worst_sc:.1e}, mass error {worst_mass:.1e}, c-identification {worst_id:.1e}"),
    )
}

fn ks_series(problem: &Problem, law: &NamedLaw, ns: &[usize]) -> Vec<f64> {
    ns.iter().map(|&n| ks_distance(&compute_zeros(problem, n).unwrap().scaled, law).unwrap()).collect()
}

fn criterion_5() -> Check {
    let ns = [50, 100, 200, 400];
    let ks =
        ks_series(&Problem::jacobi(sched("1*n^2+0"), sched("1*n^2+0")), &NamedLaw::Semicircle { sigma: SQRT_2 }, &ns);
    check(strictly_decreasing(&ks) && ks[3] < 0.05, format!("KS at n=50,100,200,400: {}", fmt_list(&ks)))
}

fn criterion_6() -> Check {
    let problem = Problem::jacobi(sched("1*n^4+0"), sched("1*n^3+0"));
    let ns = [50, 100, 200];
    let ks = ks_series(&problem, &NamedLaw::ShiftedSemicircle, &ns);
    // same scale, center ε = 0 (shift −1)
    let n = 200usize;
    let (a, b) = (n.pow(4) as f64, n.pow(3) as f64);
    let naive_map = AffineMap::from_center((n as f64 * b).sqrt() / a, 0.0).unwrap();
    let naive = spectrum(&jacobi_operator(n, a, b, &naive_map).unwrap());
    let ks_naive = ks_distance(&naive, &NamedLaw::ShiftedSemicircle).unwrap();
    check(
        strictly_decreasing(&ks) && ks[2] < 0.08 && ks_naive > 0.2,
        format!("KS at n=50,100,200: {}; naive shift at n=200: {ks_naive:.4}", fmt_list(&ks)),
    )
}

fn criterion_7() -> Check {
    let ns = [50, 100, 200, 400];
    let suites = [
        ("laguerre alpha=0", Problem::laguerre(sched("0")), NamedLaw::LaguerreMp { a: 0.0 }),
        ("laguerre alpha=n^3", Problem::laguerre(sched("1*n^3+0")), NamedLaw::LaguerreSemicircle),
        ("hermite gamma=0", Problem::hermite(sched("0")), NamedLaw::HermiteTwoArc { c: 0.0 }),
        ("hermite gamma=n^3", Problem::hermite(sched("1*n^3+0")), NamedLaw::HermiteQuartic),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, problem, law) in suites {
        let ks = ks_series(&problem, &law, &ns);
        pass &= strictly_decreasing(&ks) && ks[3] < 0.08;
        parts.push(format!("{name}: {}", fmt_list(&ks)));
    }
    check(pass, format!("KS at n=50,100,200,400; {}", parts.join("; ")))
}

/// Theorem-statistic errors of the smallest and largest zero over `ns`.
fn extreme_errors(problem: &Problem, ns: &[usize]) -> (Vec<f64>, Vec<f64>, f64, f64) {
    let regime = problem.classify().unwrap();
    let mut err_min = Vec::new();
    let mut err_max = Vec::new();
    let mut limits = (0.0, 0.0);
    for &n in ns {
        let sample = compute_zeros(problem, n).unwrap();
        let pred = predict_extremes(&regime, problem, n).unwrap();
        limits = (pred.limit_min, pred.limit_max);
        err_min.push((theorem_statistic(&sample.map, sample.raw[0]) - pred.limit_min).abs());
        err_max.push((theorem_statistic(&sample.map, sample.raw[n - 1]) - pred.limit_max).abs());
    }
    (err_min, err_max, limits.0, limits.1)
}

fn extreme_check(problem: Problem, expect: (f64, f64)) -> Check {
    let ns = [25, 50, 100, 200];
    let (emin, emax, lmin, lmax) = extreme_errors(&problem, &ns);
    let limits_ok = (lmin - expect.0).abs() < 1e-12 && (lmax - expect.1).abs() < 1e-12;
    let ok = |e: &[f64]| e[3] <= 0.2 && mostly_decreasing(e);
    check(
        limits_ok && ok(&emin) && ok(&emax),
        format!("limits ({lmin:.4}, {lmax:.4}); |err| min side {}; max side {}", fmt_list(&emin), fmt_list(&emax)),
    )
}

fn criterion_8a() -> Check {
    extreme_check(Problem::laguerre(sched("1*n^3+0")), (-2.0, 2.0))
}

fn criterion_8b() -> Check {
    let s = semicircle_sigma(1.0);
    extreme_check(Problem::jacobi(sched("1*n^2+0"), sched("1*n^2+0")), (-s, s))
}

fn criterion_8c() -> Check {
    extreme_check(Problem::jacobi(sched("1*n^3+0"), sched("0")), (0.0, 8.0))
}

fn criterion_8d() -> Check {
    extreme_check(Problem::jacobi(sched("1*n^4+0"), sched("1*n^3+0")), (-2.0, 6.0))
}

fn criterion_8e() -> Check {
    extreme_check(Problem::hermite(sched("1*n^3+0")), (SQRT_2, SQRT_2))
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut violations = 0;
    let mut envelope_violations = 0;
    let mut envelope_undefined = 0;
    for _ in 0..200 {
        let n = rng.gen_range(2..=50);
        let (a, b) = (rng.gen_range(-0.9..50.0), rng.gen_range(-0.9..50.0));
        let il = ismail_li_bound(n, a, b).unwrap();
        let z = spectrum(&jacobi_operator(n, a, b, &AffineMap::identity()).unwrap());
        if z[n - 1] > il.bound + 1e-12 {
            violations += 1;
        }
        match il.envelope() {
            Some(env) if il.bound > env + 1e-12 => envelope_violations += 1,
            Some(_) => {}
            None => envelope_undefined += 1,
        }
    }
    check(
        violations == 0 && envelope_violations == 0,
        format!(
            "zero above bound: {violations}/200; bound above envelope: {envelope_violations}/200 \
             (envelope undefined for alpha+beta <= -1 in {envelope_undefined} draws)"
        ),
    )
}

fn criterion_10() -> Check {
    let base = msv_limits(0.0, 0.0).unwrap();
    let mut worst = 0.0f64;
    for c in [0.25, 0.5, 1.0, 2.0, 4.0, 10.0] {
        let a = c / (1.0 + c);
        let (r, s) = msv_limits(a, 1.0 - a).unwrap();
        let point = (1.0 - c) / (1.0 + c);
        worst = worst.max((r - point).abs()).max((s - point).abs());
    }
    check(base == (-1.0, 1.0) && worst <= 1e-10, format!("msv(0,0) = {base:?}; collapse error {worst:.1e}"))
}

fn criterion_11() -> Check {
    let mut mismatched = Vec::new();
    for (name, args) in common::EXAMPLES {
        let out = common::oz(args);
        let expected = std::fs::read(common::golden_path(name)).unwrap_or_default();
        if !out.status.success() || out.stdout != expected {
            mismatched.push(name);
        }
    }
    check(mismatched.is_empty(), format!("{} golden files, mismatched: {mismatched:?}", common::EXAMPLES.len()))
}

type Criterion = (&'static str, &'static str, fn() -> Check);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1", "exact small-degree zeros", criterion_1),
        ("2", "chain-sequence validity", criterion_2),
        ("3", "reflection and interlacing", criterion_3),
        ("4", "limit-law consistency", criterion_4),
        ("5", "weak convergence, balanced super-linear Jacobi", criterion_5),
        ("6", "weak convergence, dominant super-linear Jacobi", criterion_6),
        ("7", "weak convergence, Laguerre and Hermite", criterion_7),
        ("8a", "extreme zeros, Laguerre alpha=n^3", criterion_8a),
        ("8b", "extreme zeros, Jacobi alpha=beta=n^2", criterion_8b),
        ("8c", "extreme zeros, Jacobi alpha=n^3 beta=0", criterion_8c),
        ("8d", "extreme zeros, Jacobi alpha=n^4 beta=n^3", criterion_8d),
        ("8e", "extreme zeros, Hermite gamma=n^3", criterion_8e),
        ("9", "Ismail-Li bound soundness", criterion_9),
        ("10", "MSV degenerate cases", criterion_10),
        ("11", "CLI golden files", criterion_11),
    ];
    let mut unexpected = Vec::new();
    for (id, title, run) in criteria {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| check(false, "panicked"));
        let known = KNOWN_UNATTAINABLE.contains(&id);
        let verdict = match (result.pass, known) {
            (true, false) => "PASS",
            (true, true) => "PASS (listed as unattainable)",
            (false, true) => "FAIL (known unattainable)",
            (false, false) => {
                unexpected.push(id);
                "FAIL"
            }
        };
        println!("criterion {id:>3} {verdict}: {title}: {}", result.detail);
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
