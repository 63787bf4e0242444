//! Acceptance gate. Runs without the libtest harness so the verdict for
//! every criterion is printed even when all of them pass.

use std::f64::consts::SQRT_2;
use std::process::ExitCode;
use std::time::Instant;

use nucs::nu::{self, NuBranch, NuTrace, Sign};
use nucs::oracle::{
    angular_eigen, orthonormality_check, radial_eigen, radial_eigen_richardson, GridSpec,
};
use nucs::specfun::{gauss_legendre, jacobi, laguerre};
use nucs::systems::{
    ab_regime, angular_form, angular_reduction, effective_l, energy_closed_form, energy_rootfind,
    radial_form, AbRegime, AngularCase, QuantumNumbers, SystemParams, UnitSystem,
};

const AU: UnitSystem = UnitSystem::ATOMIC;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Collects failed checks for one criterion.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn qn(n: u32, nt: u32, m: i32) -> QuantumNumbers {
    QuantumNumbers::new(n, nt, m)
}

fn hydrogen_limit(c: &mut Checks) {
    let start = Instant::now();
    let h = SystemParams::CoulombRing {
        z: 1.0,
        b: 0.0,
        c: 0.0,
    };
    let mut worst = 0.0f64;
    for l in 0..3u32 {
        let count = 3 - l;
        let oracle =
            radial_eigen_richardson(&h, l as f64, count as usize, GridSpec::points(16000), &AU);
        let oracle = match oracle {
            Ok(o) => o.richardson_estimate.expect("richardson requested"),
            Err(e) => {
                c.check(false, format!("oracle l={l}: {e}"));
                continue;
            }
        };
        for n in 0..count {
            let e = energy_closed_form(&h, qn(n, l, 0), &AU).unwrap().energy;
            let principal = (n + l + 1) as f64;
            let target = -0.5 / (principal * principal);
            c.check(
                (e - target).abs() < 1e-15,
                format!("closed form (n={n}, l={l}) = {e}, expected {target}"),
            );
            let dev = rel(oracle[n as usize], e);
            worst = worst.max(dev);
            c.check(dev < 1e-5, format!("oracle (n={n}, l={l}) off by {dev:e}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    c.check(secs < 10.0, format!("runtime {secs:.2} s exceeds 10 s"));
    c.note(format!("worst oracle deviation {worst:.1e}, {secs:.2} s"));
}

fn oscillator_limit(c: &mut Checks) {
    let start = Instant::now();
    let p = SystemParams::RingOscillator { a: 1.0, b: 0.0 };
    let mut worst = 0.0f64;
    for (n, l, ratio) in [(0u32, 0u32, 3.0), (1, 0, 7.0), (0, 1, 5.0)] {
        let e = energy_closed_form(&p, qn(n, l, 0), &AU).unwrap().energy;
        c.check(
            (e / 0.5f64.sqrt() - ratio).abs() < 1e-13,
            format!("E/√½ for (n={n}, l={l}) = {}", e / 0.5f64.sqrt()),
        );
        match radial_eigen_richardson(&p, l as f64, n as usize + 1, GridSpec::points(16000), &AU) {
            Ok(o) => {
                let dev = rel(o.richardson_estimate.unwrap()[n as usize], e);
                worst = worst.max(dev);
                c.check(dev < 1e-5, format!("oracle (n={n}, l={l}) off by {dev:e}"));
            }
            Err(e) => c.check(false, format!("oracle (n={n}, l={l}): {e}")),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    c.check(secs < 5.0, format!("runtime {secs:.2} s exceeds 5 s"));
    c.note(format!("worst oracle deviation {worst:.1e}, {secs:.2} s"));
}

fn hartmann(c: &mut Checks) {
    let p = SystemParams::Hartmann {
        eta: 1.0,
        sigma: 1.0,
    };
    let entry = energy_closed_form(&p, qn(0, 0, 1), &AU).unwrap();
    let exact = -1.0 / (2.0 * (1.0 + SQRT_2).powi(2));
    c.check(
        (entry.l_eff - SQRT_2).abs() < 1e-14,
        format!("l = {}", entry.l_eff),
    );
    c.check(
        (entry.energy - exact).abs() < 1e-15,
        format!("E = {}", entry.energy),
    );
    c.check(
        (entry.energy + 0.0857864).abs() < 1e-7,
        format!("E = {} vs -0.0857864", entry.energy),
    );
    match radial_eigen(&p, SQRT_2, 1, GridSpec::default(), &AU) {
        Ok(o) => {
            let dev = rel(o.eigenvalues[0], exact);
            c.check(dev < 1e-4, format!("oracle off by {dev:e}"));
            c.note(format!(
                "E = {:.7}, oracle deviation {dev:.1e}",
                entry.energy
            ));
        }
        Err(e) => c.check(false, format!("oracle: {e}")),
    }
}

fn angular_sector(c: &mut Checks) {
    let p = SystemParams::CoulombRing {
        z: 1.0,
        b: 1.0,
        c: 1.0,
    };
    let base = (0.5 * (2.0 + 3f64.sqrt())).sqrt();
    let oracle = match angular_eigen(&p, 1, 2, GridSpec::default(), &AU) {
        Ok(o) => o.eigenvalues,
        Err(e) => {
            c.check(false, format!("oracle: {e}"));
            return;
        }
    };
    let mut worst = 0.0f64;
    for nt in 0..2u32 {
        let l = effective_l(&p, nt, 1, AngularCase::Ii, &AU).unwrap();
        c.check(
            (l - (base + nt as f64)).abs() < 1e-13,
            format!("l(ñ={nt}) = {l}"),
        );
        let lambda = l * (l + 1.0);
        let dev = (oracle[nt as usize] - lambda).abs();
        worst = worst.max(dev);
        c.check(
            dev < 1e-4,
            format!("Λ(ñ={nt}): oracle {} vs {lambda}", oracle[nt as usize]),
        );
    }
    c.note(format!(
        "Λ₀ = {:.7}, worst oracle deviation {worst:.1e}",
        base * (base + 1.0)
    ));
}

fn ab_monopole(c: &mut Checks) {
    let p = SystemParams::ab_from_effective(1.0, 0.5, 1.0, 0, &AU);
    let entry = energy_closed_form(&p, qn(0, 0, 0), &AU).unwrap();
    let l_exact = -0.5 + SQRT_2;
    let exact = -1.0 / (2.0 * (0.5 + SQRT_2).powi(2));
    c.check(
        (entry.l_eff - l_exact).abs() < 1e-14,
        format!("l = {}", entry.l_eff),
    );
    c.check(
        (entry.l_eff - 0.9142136).abs() < 1e-7,
        format!("l = {} vs 0.9142136", entry.l_eff),
    );
    c.check(
        (entry.energy - exact).abs() < 1e-15,
        format!("E = {}", entry.energy),
    );
    // the quoted −0.1364557 is a rounding slip of −0.13645493
    c.check(
        (entry.energy + 0.1364557).abs() < 1e-6,
        format!("E = {} vs ≈ -0.1364557", entry.energy),
    );
    match radial_eigen(&p, entry.l_eff, 1, GridSpec::default(), &AU) {
        Ok(o) => {
            let dev = rel(o.eigenvalues[0], exact);
            c.check(dev < 1e-4, format!("oracle off by {dev:e}"));
            c.note(format!("E = {exact:.8}, oracle deviation {dev:.1e}"));
        }
        Err(e) => c.check(false, format!("oracle: {e}")),
    }

    let mut worst = 0.0f64;
    for (q, mt) in [(0.75, 0.75), (0.75, -0.75), (1.3, 1.3), (-0.4, 0.4)] {
        let at = SystemParams::ab_from_effective(1.0, q, mt, 0, &AU);
        c.check(
            ab_regime(&at, 0, &AU) == Some(AbRegime::Boundary),
            format!("regime at q={q}, m̃={mt}"),
        );
        for nt in 0..3u32 {
            let shared = -0.5 + ((nt as f64 + q.abs() + 0.5).powi(2) - q * q).sqrt();
            let mut ls = vec![effective_l(&at, nt, 0, AngularCase::Ii, &AU).unwrap()];
            for eps in [1e-13, -1e-13] {
                let near = SystemParams::ab_from_effective(1.0, q, mt * (1.0 + eps), 0, &AU);
                ls.push(effective_l(&near, nt, 0, AngularCase::Ii, &AU).unwrap());
            }
            for l in ls {
                worst = worst.max((l - shared).abs());
            }
        }
    }
    c.check(worst < 1e-12, format!("case continuity gap {worst:e}"));
}

fn four_systems() -> Vec<(SystemParams, i32)> {
    vec![
        (
            SystemParams::CoulombRing {
                z: 1.0,
                b: 1.0,
                c: 1.0,
            },
            1,
        ),
        (
            SystemParams::Hartmann {
                eta: 1.0,
                sigma: 1.0,
            },
            1,
        ),
        (SystemParams::ab_from_effective(1.0, 0.5, 1.0, 0, &AU), 0),
        (SystemParams::RingOscillator { a: 1.0, b: 0.5 }, 1),
    ]
}

fn nu_identity(c: &mut Checks) {
    let (mut worst_id, mut worst_q) = (0.0f64, 0.0f64);
    for (p, m) in four_systems() {
        for nt in 0..2u32 {
            for n in 0..=4u32 {
                let q = qn(n, nt, m);
                let e = energy_closed_form(&p, q, &AU).unwrap();
                let sol = nu::solve(&radial_form(&p, e.l_eff, e.energy, &AU).unwrap()).unwrap();
                let gap = (sol.branch.lambda - sol.lambda_n(n)).abs();
                worst_id = worst_id.max(gap);
                c.check(gap < 1e-9, format!("{} {q:?}: λ − λₙ = {gap:e}", p.name()));
                match energy_rootfind(&p, q, &AU) {
                    Ok(r) => {
                        let dev = rel(r.energy, e.energy);
                        worst_q = worst_q.max(dev);
                        c.check(
                            dev < 1e-9,
                            format!("{} {q:?}: quantize off by {dev:e}", p.name()),
                        );
                    }
                    Err(err) => c.check(false, format!("{} {q:?}: {err}", p.name())),
                }
            }
        }
    }
    c.note(format!(
        "max |λ − λₙ| {worst_id:.1e}, max quantize deviation {worst_q:.1e}"
    ));
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-10 * (1.0 + b.abs())
}

/// Matches trace rows against expected `(k, π₀, π₁)` triples, listed in
/// output order, and the selected row against `expected_selected`.
fn compare_trace(
    c: &mut Checks,
    label: &str,
    trace: &NuTrace,
    expected: [(f64, f64, f64); 4],
    selected: (u8, Sign),
) {
    c.check(
        trace.branches.len() == 4,
        format!("{label}: {} rows", trace.branches.len()),
    );
    for (row, (k, p0, p1)) in trace.branches.iter().zip(expected) {
        let ok = close(row.k, k) && close(row.pi.c[0], p0) && close(row.pi.c[1], p1);
        c.check(
            ok,
            format!(
                "{label}: row k={} π={} expected k={k} π={p0}+{p1}s",
                row.k, row.pi
            ),
        );
    }
    let sel: &NuBranch = &trace.selected;
    c.check(
        sel.k_index == selected.0 && sel.sign == selected.1 && sel.tau_slope < 0.0,
        format!(
            "{label}: selected k_index={} sign={:?} τ′={}",
            sel.k_index, sel.sign, sel.tau_slope
        ),
    );
}

/// The selected row stored in a golden file must match the fresh trace.
fn compare_golden(c: &mut Checks, file: &str, trace: &NuTrace) {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(file);
    let golden = std::fs::read_to_string(&path)
        .ok()
        .and_then(|t| serde_json::from_str::<serde_json::Value>(&t).ok());
    let Some(golden) = golden else {
        c.check(false, format!("{file}: unreadable"));
        return;
    };
    let stored: Result<NuBranch, _> = serde_json::from_value(golden["trace"]["selected"].clone());
    let fresh = &trace.selected;
    let same = stored.is_ok_and(|b| {
        b.k_index == fresh.k_index
            && b.sign == fresh.sign
            && close(b.k, fresh.k)
            && b.pi.c.iter().zip(&fresh.pi.c).all(|(x, y)| close(*x, *y))
            && b.tau.c.iter().zip(&fresh.tau.c).all(|(x, y)| close(*x, *y))
    });
    c.check(same, format!("{file}: stored selection differs"));
}

fn branch_traces(c: &mut Checks) {
    // radial Coulomb: k = −β² ± (2l+1)κ, π ∈ {κs + l, −κs − l − 1, κs − l − 1, −κs + l}
    for (z, l, energy) in [
        (1.0, 0.0, -0.5),
        (1.0, SQRT_2, -0.0857864376269),
        (2.5, 0.7, -0.3),
    ] {
        let p = SystemParams::CoulombRing { z, b: 0.0, c: 0.0 };
        let tr = nu::trace(&radial_form(&p, l, energy, &AU).unwrap()).unwrap();
        let kappa = (-2.0 * energy).sqrt();
        let beta_sq = -2.0 * z;
        let (k1, k2) = (
            -beta_sq + (2.0 * l + 1.0) * kappa,
            -beta_sq - (2.0 * l + 1.0) * kappa,
        );
        compare_trace(
            c,
            "coulomb radial",
            &tr,
            [
                (k1, l, kappa),
                (k1, -l - 1.0, -kappa),
                (k2, -l - 1.0, kappa),
                (k2, l, -kappa),
            ],
            (2, Sign::Minus),
        );
        if z == 1.0 && l == 0.0 {
            compare_golden(c, "trace_coulomb_radial.json", &tr);
        }
    }

    // polar ring: k = l(l+1) − A, π = ±(√A s + sgnC·√A′)
    for (b, cc, m) in [(0.0, 0.0, 1), (1.0, 1.0, 1), (0.5, -0.8, 2)] {
        let p = SystemParams::CoulombRing { z: 1.0, b, c: cc };
        let l = effective_l(&p, 1, m, AngularCase::Ii, &AU).unwrap();
        let l = if (b, cc) == (0.0, 0.0) { 1.0 } else { l };
        let red = angular_reduction(&p, m, &AU).unwrap();
        let (r1, r2, sg) = (red.sqrt_a1(), red.sqrt_a2(), red.c_sign);
        let ll = l * (l + 1.0);
        let tr = nu::trace(&angular_form(&p, m, l, &AU).unwrap()).unwrap();
        compare_trace(
            c,
            "ring angular",
            &tr,
            [
                (ll - red.a1, sg * r2, r1),
                (ll - red.a1, -sg * r2, -r1),
                (ll - red.a2, sg * r1, r2),
                (ll - red.a2, -sg * r1, -r2),
            ],
            (2, Sign::Minus),
        );
        if (b, cc) == (0.0, 0.0) {
            compare_golden(c, "trace_ring_angular.json", &tr);
        }
    }

    // AB: flux-dominated π = −(|m̃|s + |q|) at k = l(l+1) + q² − m̃²,
    // monopole-dominated π = −(|q|s + |m̃|) at k = l(l+1)
    for (q, mt) in [(0.5, 1.0), (1.5, 0.75)] {
        let p = SystemParams::ab_from_effective(1.0, q, mt, 0, &AU);
        let l = effective_l(&p, 0, 0, AngularCase::Ii, &AU).unwrap();
        let ll = l * (l + 1.0);
        let tr = nu::trace(&angular_form(&p, 0, l, &AU).unwrap()).unwrap();
        let (k_flux, k_mono) = (ll + q * q - mt * mt, ll);
        let rows = if q < mt {
            [
                (k_mono, mt, q),
                (k_mono, -mt, -q),
                (k_flux, q, mt),
                (k_flux, -q, -mt),
            ]
        } else {
            [
                (k_flux, q, mt),
                (k_flux, -q, -mt),
                (k_mono, mt, q),
                (k_mono, -mt, -q),
            ]
        };
        compare_trace(c, "ab angular", &tr, rows, (2, Sign::Minus));
        let sel = tr.selected;
        let (lead, rest) = if q < mt { (mt, q) } else { (q, mt) };
        c.check(
            close(sel.tau.c[1], -2.0 * (lead + 1.0)) && close(sel.tau.c[0], -2.0 * rest),
            format!("ab angular: τ = {}", sel.tau),
        );
        if q == 0.5 {
            compare_golden(c, "trace_ab_angular.json", &tr);
        }
    }

    // oscillator: k = ε²/2 ± α(l+½), π ∈ {αs + l + 1, −αs − l, αs − l, −αs + l + 1}
    for (a, l) in [(1.0, 0.0), (0.7, 1.3)] {
        let p = SystemParams::RingOscillator { a, b: 0.0 };
        let energy = (0.5f64).sqrt() * (2.0 * l + 3.0) * a;
        let tr = nu::trace(&radial_form(&p, l, energy, &AU).unwrap()).unwrap();
        let alpha = SQRT_2 * a;
        let half_eps = energy;
        let (k1, k2) = (half_eps + alpha * (l + 0.5), half_eps - alpha * (l + 0.5));
        compare_trace(
            c,
            "oscillator radial",
            &tr,
            [
                (k1, l + 1.0, alpha),
                (k1, -l, -alpha),
                (k2, -l, alpha),
                (k2, l + 1.0, -alpha),
            ],
            (2, Sign::Minus),
        );
        if a == 1.0 {
            compare_golden(c, "trace_oscillator_radial.json", &tr);
        }
    }
    c.note("11 traces match their substituted closed forms, 4 golden selections agree");
}

fn property_suites(c: &mut Checks) {
    // orthogonality of the special functions
    let rule = gauss_legendre(64);
    let mut jac = 0.0f64;
    for m in 0..=3 {
        let a = m as f64;
        for i in 0..=4 {
            for j in 0..i {
                let v = rule.integrate(|x| {
                    jacobi(i, a, a, x).unwrap()
                        * jacobi(j, a, a, x).unwrap()
                        * (1.0 - x * x).powi(m)
                });
                jac = jac.max(v.abs());
            }
        }
    }
    c.check(jac < 1e-10, format!("Jacobi orthogonality {jac:e}"));
    let wide = gauss_legendre(2048);
    let mut lag = 0.0f64;
    for alpha in [0.0, 0.5, 1.0, 2.0 * SQRT_2 + 1.0, 3.7] {
        for i in 0..=4 {
            for j in 0..i {
                let v = wide.integrate_semi_infinite(4.0, |x| {
                    laguerre(i, alpha, x).unwrap()
                        * laguerre(j, alpha, x).unwrap()
                        * x.powf(alpha)
                        * (-x).exp()
                });
                lag = lag.max(v.abs());
            }
        }
    }
    c.check(lag < 1e-8, format!("Laguerre orthogonality {lag:e}"));

    // Gram matrices of radial and polar towers
    let mut off = 0.0f64;
    let mut diag = 0.0f64;
    for (p, m) in four_systems() {
        let radial: Vec<_> = (0..4)
            .map(|n| energy_closed_form(&p, qn(n, 1, m), &AU).unwrap())
            .collect();
        let polar: Vec<_> = (0..4)
            .map(|t| energy_closed_form(&p, qn(0, t, m), &AU).unwrap())
            .collect();
        for entries in [radial, polar] {
            match orthonormality_check(&p, &entries, 256, &AU) {
                Ok(g) => {
                    for (i, row) in g.iter().enumerate() {
                        diag = diag.max((row[i] - 1.0).abs());
                        for v in &row[..i] {
                            off = off.max(v.abs());
                        }
                    }
                }
                Err(e) => c.check(false, format!("Gram {}: {e}", p.name())),
            }
        }
    }
    c.check(off < 1e-6, format!("Gram off-diagonal {off:e}"));
    c.check(diag < 1e-8, format!("Gram diagonal {diag:e}"));

    // second-order convergence of the radial oracle
    let mut ratios = Vec::new();
    for (p, target) in [
        (
            SystemParams::CoulombRing {
                z: 1.0,
                b: 0.0,
                c: 0.0,
            },
            -0.5,
        ),
        (
            SystemParams::RingOscillator { a: 1.0, b: 0.0 },
            3.0 / SQRT_2,
        ),
    ] {
        let grid = GridSpec::points(2000);
        let coarse = radial_eigen(&p, 0.0, 1, grid, &AU).unwrap().eigenvalues[0];
        let fine = radial_eigen(&p, 0.0, 1, grid.refined(), &AU)
            .unwrap()
            .eigenvalues[0];
        let ratio = (coarse - target) / (fine - target);
        c.check(
            (3.5..=4.5).contains(&ratio),
            format!("{} convergence ratio {ratio}", p.name()),
        );
        ratios.push(ratio);
    }

    // scaling laws
    let mut scale = 0.0f64;
    for (b, cc, m) in [(0.0, 0.0, 0), (1.0, 1.0, 1), (2.0, -0.5, 2)] {
        for n in 0..3 {
            let q = qn(n, 1, m);
            let e = |z| {
                energy_closed_form(&SystemParams::CoulombRing { z, b, c: cc }, q, &AU)
                    .unwrap()
                    .energy
                    / (z * z)
            };
            let a = |a| {
                energy_closed_form(&SystemParams::RingOscillator { a, b }, q, &AU)
                    .unwrap()
                    .energy
                    / a
            };
            scale = scale.max(rel(e(0.3), e(1.0))).max(rel(e(3.7), e(1.0)));
            scale = scale.max(rel(a(0.3), a(1.0))).max(rel(a(3.7), a(1.0)));
        }
    }
    c.check(scale < 1e-12, format!("Z²/A scaling deviation {scale:e}"));

    // mirror symmetry of the polar spectrum
    let mut mirror = 0.0f64;
    for (b, cc, m) in [(1.0, 1.0, 1), (0.3, -0.2, 0), (2.0, 3.5, 2), (0.0, 0.9, 1)] {
        let ev = |cc| {
            angular_eigen(
                &SystemParams::CoulombRing { z: 1.0, b, c: cc },
                m,
                4,
                GridSpec::points(2000),
                &AU,
            )
            .unwrap()
            .eigenvalues
        };
        for (x, y) in ev(cc).iter().zip(ev(-cc)) {
            mirror = mirror.max((x - y).abs());
        }
    }
    c.check(mirror < 1e-10, format!("C ↦ −C spectrum gap {mirror:e}"));
    c.note(format!(
        "Gram off-diag {off:.1e}, convergence ratios {:.3}/{:.3}, mirror gap {mirror:.1e}",
        ratios[0], ratios[1]
    ));
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn(&mut Checks));
    let criteria: [Criterion; 8] = [
        ("hydrogen limit", hydrogen_limit),
        ("isotropic oscillator limit", oscillator_limit),
        ("Hartmann ring potential", hartmann),
        ("generalized Coulomb angular sector", angular_sector),
        ("Aharonov-Bohm + monopole", ab_monopole),
        ("NU algebraic identity and quantize", nu_identity),
        ("branch-trace fidelity", branch_traces),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let mut checks = Checks::default();
        run(&mut checks);
        let verdict = if checks.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let detail = if checks.failures.is_empty() {
            checks.notes.join("; ")
        } else {
            checks.failures.join("; ")
        };
        println!("criterion {}: {verdict} {name} ({detail})", i + 1);
        if !checks.failures.is_empty() {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
