//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL line.

use std::io::Write;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lhsum::experiments::{fit_headline, HeadlineOptions};
use lhsum::exppair::{appendix_table, huxley_pair, lindelof_pair, long_sum_terms, theta_formula, ExponentPair};
use lhsum::lattice::{ball_sum, coeff_series, coefficient_bound_report, long_sum_physical, BoundMode};
use lhsum::modular::{
    gauss_sum_closed, gauss_sum_direct, quadratic_sum_s, sample_check, transformation_check, GammaElement, ThetaContext,
};
use lhsum::poly::{harmonic_quartic, octahedral_sextic};
use lhsum::scalar::{ratio, rational_to_f64};
use lhsum::specsum::{eval_radial_terms, freq_long_sum, g_hat, gp_fourier_terms, min_denominator_power};
use lhsum::{parse_poly, QPoly, Rational};

struct Outcome {
    id: u8,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn q(text: &str) -> QPoly {
    parse_poly(text).unwrap().to_real().unwrap()
}

fn pair(k: (i64, i64), l: (i64, i64)) -> ExponentPair<Rational> {
    ExponentPair::new(ratio(k.0, k.1), ratio(l.0, l.1), false).unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn exponent_pairs() -> Outcome {
    let huxley = huxley_pair();
    let (ba2, t1) = timed(|| huxley.apply_word("BA^2").unwrap());
    let (ab, t2) = timed(|| pair((0, 1), (1, 1)).apply_word("AB").unwrap());
    let (b, t3) = timed(|| pair((0, 1), (1, 1)).b().unwrap());
    let exact = (ba2.k.clone(), ba2.l.clone()) == (ratio(743, 2024), ratio(269, 506))
        && ab == pair((1, 6), (2, 3))
        && b == pair((1, 2), (1, 2));
    let slowest = t1.max(t2).max(t3);
    Outcome {
        id: 1,
        name: "exponent-pair calculus",
        pass: exact && slowest < Duration::from_millis(1),
        detail: format!("BA^2 Huxley = {ba2}, AB(0,1) = {ab}, B(0,1) = {b}, slowest {slowest:?}"),
    }
}

fn closed_form_exponent() -> Outcome {
    let half = theta_formula(&pair((1, 2), (1, 2)));
    let hux = theta_formula(&huxley_pair().apply_word("BA^2").unwrap());
    let lind = theta_formula(&lindelof_pair());
    let one = ratio(1, 1);
    let pass = half == ratio(83, 64) && hux == &one + ratio(35765, 121336) && lind == &one + ratio(7, 24);
    Outcome {
        id: 2,
        name: "closed-form exponent",
        pass,
        detail: format!("{half}, {hux}, {lind}"),
    }
}

/// The twelve `(theta, alpha)` cells as printed in the published table.
const LISTED_CELLS: [((i64, i64), (i64, i64)); 12] = [
    ((3, 2), (-1, 2)),
    ((4, 3), (-2, 3)),
    ((29, 22), (-7, 11)),
    ((21, 16), (-5, 8)),
    ((83, 64), (-37, 64)),
    ((157101, 121336), (-17601, 30334)),
    ((31, 24), (-7, 12)),
    ((23, 18), (-4, 9)),
    ((5, 4), (-1, 2)),
    ((5, 4), (-1, 4)),
    ((7199, 5710), (-743, 2895)),
    ((27, 22), (-3, 11)),
];

fn table_reproduction() -> (Outcome, Vec<String>) {
    let (rows, elapsed) = timed(appendix_table);
    let mut mismatches = Vec::new();
    for (i, (row, (theta, alpha))) in rows.iter().zip(LISTED_CELLS).enumerate() {
        if row.result.theta != ratio(theta.0, theta.1) {
            mismatches.push(format!(
                "row {} theta {} vs listed {}/{}",
                i + 1,
                row.result.theta,
                theta.0,
                theta.1
            ));
        }
        if row.result.alpha != ratio(alpha.0, alpha.1) {
            mismatches.push(format!(
                "row {} alpha {} vs listed {}/{}",
                i + 1,
                row.result.alpha,
                alpha.0,
                alpha.1
            ));
        }
    }
    let golden = lhsum::exppair::render_text(&rows) == include_str!("../../cli/tests/golden/table.txt");
    let matched = 24 - mismatches.len();
    let outcome = Outcome {
        id: 3,
        name: "table reproduction",
        pass: rows.len() == 12 && mismatches.is_empty() && golden && elapsed < Duration::from_secs(1),
        detail: format!(
            "{matched}/24 cells match, golden file {}, {elapsed:?}{}",
            if golden { "identical" } else { "differs" },
            if mismatches.is_empty() {
                String::new()
            } else {
                format!("; {}", mismatches.join("; "))
            }
        ),
    };
    (outcome, mismatches)
}

fn theorem_consistency() -> Outcome {
    let terms = long_sum_terms(&pair((1, 2), (1, 2)));
    let t = &terms[1];
    Outcome {
        id: 4,
        name: "long-sum specialisation",
        pass: t.r_exp == ratio(17, 14) && t.h_exp == ratio(-1, 7) && terms[0].r_exp == ratio(1, 1),
        detail: format!("second term {}", t.label),
    }
}

fn brute_shell(p: &QPoly, n: i64) -> Rational {
    let mut total = ratio(0, 1);
    for x in -2i64..=2 {
        for y in -2i64..=2 {
            for z in -2i64..=2 {
                if x * x + y * y + z * z == n {
                    total += p.eval_i64([x, y, z]);
                }
            }
        }
    }
    total
}

fn exact_lattice_sums() -> Outcome {
    let quartic = harmonic_quartic();
    let one = q("1");
    let mut ok = true;
    let mut detail = Vec::new();
    for (p, expected) in [(&quartic, [12, -24, -96]), (&one, [6, 12, 8])] {
        let s = coeff_series(p, 3).unwrap();
        let got: Vec<Rational> = (1..=3).map(|n| s.a(n).clone()).collect();
        let brute: Vec<Rational> = (1..=3).map(|n| brute_shell(p, n)).collect();
        let want: Vec<Rational> = expected.iter().map(|&v| ratio(v, 1)).collect();
        ok &= got == want && brute == want;
        detail.push(format!("({}, {}, {})", got[0], got[1], got[2]));
    }
    let ball = ball_sum(&quartic, 3).unwrap();
    let brute_ball: Rational = (0..=3).map(|n| brute_shell(&quartic, n)).sum();
    ok &= ball == ratio(-108, 1) && brute_ball == ball;
    Outcome {
        id: 5,
        name: "exact lattice sums",
        pass: ok,
        detail: format!(
            "quartic {}, constant {}, ball_sum(quartic, 3) = {ball}",
            detail[0], detail[1]
        ),
    }
}

fn coefficient_bounds() -> Outcome {
    let quartic = harmonic_quartic();
    let full = coeff_series(&quartic, 10_000).unwrap();
    let half = coeff_series(&quartic, 5_000).unwrap();
    let growth = coefficient_bound_report(&full, BoundMode::Sarnak)
        .unwrap()
        .growth
        .unwrap();
    let bh_full = coefficient_bound_report(&full, BoundMode::BlomerHarcos).unwrap();
    let bh_half = coefficient_bound_report(&half, BoundMode::BlomerHarcos).unwrap();
    let drift = (bh_full.max_ratio / bh_half.max_ratio - 1.0).abs();
    Outcome {
        id: 6,
        name: "coefficient-bound property",
        pass: growth.slope <= 2.65 && drift <= 0.2,
        detail: format!(
            "growth slope {:.4} (<= 2.65), Blomer-Harcos max ratio {:.4} (n <= 5000) vs {:.4} (n <= 10000), drift {:.1}%",
            growth.slope,
            bh_half.max_ratio,
            bh_full.max_ratio,
            100.0 * drift
        ),
    }
}

fn modular_transformation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, p) in [("degree 4", harmonic_quartic()), ("degree 6", octahedral_sextic())] {
        let ctx = ThetaContext::new(&p, 20_000).unwrap().with_y_min(1e-3);
        let reports = sample_check(&ctx, &mut rng, 50, 16, 1e-6).unwrap();
        let passed = reports.iter().filter(|r| r.pass).count();
        let worst = reports.iter().map(|r| r.rel_err).fold(0.0, f64::max);
        let valid = reports
            .iter()
            .all(|r| r.gamma[2] % 4 == 0 && r.gamma[2].abs() <= 16 && (0.1..=2.0).contains(&r.z.im));
        ok &= passed == 50 && valid;
        parts.push(format!("{label} {passed}/50 (max rel err {worst:.2e})"));
    }
    let ctx = ThetaContext::new(&harmonic_quartic(), 20_000).unwrap();
    let headline = transformation_check(
        &ctx,
        &GammaElement::new(1, 0, 4, 1).unwrap(),
        Complex64::new(0.0, 0.5),
        1e-8,
    )
    .unwrap();
    ok &= headline.pass;
    parts.push(format!("(1,0;4,1) at i/2 rel err {:.2e}", headline.rel_err));
    Outcome {
        id: 7,
        name: "modular transformation",
        pass: ok,
        detail: parts.join(", "),
    }
}

fn gauss_sums() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for c in (-64i64..=64).step_by(4).filter(|&c| c != 0) {
        for d in (-2 * c.abs() + 1..2 * c.abs()).filter(|d| d % 2 != 0 && c.gcd(d) == 1) {
            worst = worst.max((gauss_sum_closed(d, c).unwrap() - gauss_sum_direct(d, c)).norm());
            count += 1;
        }
    }
    let mut worst_s: f64 = 0.0;
    for c in [4i64, 8, 12, 16] {
        for d in (-2 * c + 1..2 * c).filter(|d| c.gcd(d) == 1) {
            for xi in (-2 * c - 1..=2 * c + 1).filter(|x| x % 2 != 0) {
                worst_s = worst_s.max(quadratic_sum_s(xi, d, c).unwrap().norm());
            }
        }
    }
    Outcome {
        id: 8,
        name: "Gauss-sum closed form",
        pass: worst < 1e-10 && worst_s < 1e-12,
        detail: format!("{count} (d, c) pairs, max |closed - direct| {worst:.2e}, max |S(odd)| {worst_s:.2e}"),
    }
}

/// `∂^order` of `f` along the axes in `axes`, by nested central differences with one Richardson step.
fn mixed_partial(f: &dyn Fn([f64; 3]) -> f64, x: [f64; 3], axes: &[usize], step: f64) -> f64 {
    fn nested(f: &dyn Fn([f64; 3]) -> f64, x: [f64; 3], axes: &[usize], h: f64) -> f64 {
        match axes.split_first() {
            None => f(x),
            Some((&axis, rest)) => {
                let (mut plus, mut minus) = (x, x);
                plus[axis] += h;
                minus[axis] -= h;
                (nested(f, plus, rest, h) - nested(f, minus, rest, h)) / (2.0 * h)
            }
        }
    }
    let coarse = nested(f, x, axes, step);
    let fine = nested(f, x, axes, step / 2.0);
    (4.0 * fine - coarse) / 3.0
}

/// `P(-∂/(2πi)) ĝ` at `xi`, with `x_j -> (i/2π) ∂_j` applied monomial by monomial.
fn finite_difference_gp(p: &QPoly, xi: [f64; 3], r: f64, h: f64) -> Complex64 {
    let g = move |x: [f64; 3]| g_hat(x, r, h);
    let unit = Complex64::new(0.0, 1.0 / (2.0 * std::f64::consts::PI));
    let mut total = Complex64::new(0.0, 0.0);
    for (e, c) in p.terms() {
        let axes: Vec<usize> = (0..3).flat_map(|a| std::iter::repeat_n(a, e[a] as usize)).collect();
        // Higher orders amplify rounding as step^-order, so the step grows with the order.
        let step = [1e-4, 1e-4, 1e-4, 1e-3][axes.len()];
        let d = if axes.is_empty() {
            g(xi)
        } else {
            mixed_partial(&g, xi, &axes, step)
        };
        total += unit.powi(axes.len() as i32) * rational_to_f64(c) * d;
    }
    total
}

fn fourier_term_algebra() -> Outcome {
    let polys = [
        "1",
        "x",
        "y - 2*z",
        "x*y",
        "x^2 - z^2",
        "x*y*z",
        "x^3 - 3*x*y^2",
        "x^2*z + y^3",
    ];
    let points = [[1i64, 2, 2], [3, 0, 4], [1, 1, 1]];
    let (r, h) = (3.0, 0.5);
    let mut worst: f64 = 0.0;
    let mut denominators_ok = true;
    for text in polys {
        let p = q(text);
        let terms = gp_fourier_terms(&p).unwrap();
        denominators_ok &= min_denominator_power(&terms) == Some(p.degree() + 3);
        for xi in points {
            let symbolic = eval_radial_terms(&terms, xi, r, h).unwrap();
            let numeric = finite_difference_gp(&p, xi.map(|c| c as f64), r, h);
            worst = worst.max((symbolic - numeric).norm() / numeric.norm().max(1e-3));
        }
    }
    Outcome {
        id: 9,
        name: "Fourier term algebra",
        pass: worst < 1e-6 && denominators_ok,
        detail: format!(
            "{} polynomials of degree <= 3 at 3 points, max rel err {worst:.2e}, minimum denominator power nu + 3: {denominators_ok}",
            polys.len()
        ),
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

fn poisson_trend() -> Outcome {
    let (r, h) = (10.0, 0.5);
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, p) in [("P = 1", q("1")), ("quartic", harmonic_quartic())] {
        let physical = long_sum_physical(&p, r, h).unwrap().value;
        let diffs: Vec<f64> = [64u64, 256, 1024, 4096]
            .iter()
            .map(|&n| (freq_long_sum(&p, r, h, n).unwrap() - physical).abs())
            .collect();
        let ratios: Vec<f64> = diffs.windows(2).map(|w| w[1] / w[0]).collect();
        let m = median(ratios);
        ok &= m < 1.0;
        let shown: Vec<String> = diffs.iter().map(|d| format!("{d:.3e}")).collect();
        parts.push(format!("{label}: [{}], median ratio {m:.3}", shown.join(", ")));
    }
    Outcome {
        id: 10,
        name: "Poisson consistency trend",
        pass: ok,
        detail: parts.join("; "),
    }
}

fn headline_scaling() -> Outcome {
    let res = fit_headline(
        &harmonic_quartic(),
        &HeadlineOptions {
            r_max: 512,
            ..Default::default()
        },
    )
    .unwrap();
    let ceiling = res.nu as f64 + 1.55;
    Outcome {
        id: 11,
        name: "headline-sum scaling",
        pass: res.fit.slope <= ceiling,
        detail: format!(
            "slope {:.4} (ceiling {ceiling}), r^2 {:.4}, {} windows; conjectured value nu + 1 = {}",
            res.fit.slope,
            res.fit.r_squared,
            res.fit.points_used,
            res.nu + 1
        ),
    }
}

#[test]
fn acceptance() {
    let (table, table_mismatches) = table_reproduction();
    let outcomes = vec![
        exponent_pairs(),
        closed_form_exponent(),
        table,
        theorem_consistency(),
        exact_lattice_sums(),
        coefficient_bounds(),
        modular_transformation(),
        gauss_sums(),
        fourier_term_algebra(),
        poisson_trend(),
        headline_scaling(),
    ];
    // Written to the raw stdout handle so the lines show even when the harness captures output.
    let mut out = std::io::stdout().lock();
    for o in &outcomes {
        writeln!(
            out,
            "{} [{}] {}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.detail
        )
        .unwrap();
    }
    // The listed theta for row 11 contradicts its own alpha: with R^{3/2}H active, theta = 3/2 + alpha = 7199/5790.
    // That single cell is reported as FAIL above but does not abort the run.
    let known = table_mismatches == ["row 11 theta 7199/5790 vs listed 7199/5710"];
    let unexpected: Vec<u8> = outcomes
        .iter()
        .filter(|o| !o.pass && !(o.id == 3 && known))
        .map(|o| o.id)
        .collect();
    assert!(unexpected.is_empty(), "failing criteria: {unexpected:?}");
}
