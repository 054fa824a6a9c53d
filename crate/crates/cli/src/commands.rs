use std::io;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use lhsum::experiments::{fit_headline, fit_series, HeadlineOptions};
use lhsum::exppair::{
    appendix_table, balance, long_sum_terms, render_csv, render_text, short_sum_terms, theta_formula, AlphaRange,
    ErrorTerm, ExponentPair, ShortModel,
};
use lhsum::lattice::{ball_sum, coeff_series, coefficient_bound_report, long_sum_physical, short_sum, BoundMode};
use lhsum::modular::{
    gauss_sum_closed, gauss_sum_direct, quadratic_sum_s, sample_check, transformation_check, GammaElement,
    ThetaContext,
};
use lhsum::scalar::parse_rational;
use lhsum::specsum::{bound_check_grid, bound_check_vnqr, freq_long_sum};
use lhsum::{parse_poly, QPoly, Rational};

use crate::args::{BalanceArgs, BoundArg, Command, FitArgs, RadiusArgs, ThetaArgs};
use crate::output::{print_json, read_series, write_csv};
use crate::Failure;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn poly(text: &str) -> Result<QPoly, Failure> {
    Ok(parse_poly(text)?.to_real()?)
}

pub fn run(command: Command, seed: u64) -> Result<(), Failure> {
    match command {
        Command::Sum { poly: p, r_sq } => {
            println!("{}", ball_sum(&poly(&p)?, r_sq)?);
            Ok(())
        }
        Command::Coeffs { poly: p, n_max, report } => coeffs(&poly(&p)?, n_max, report),
        Command::Shortsum(a) => smoothed(&a, "shortsum"),
        Command::Longsum(a) => smoothed(&a, "longsum"),
        Command::Freqsum { radius, n_trunc } => {
            let p = poly(&radius.poly)?;
            let value = freq_long_sum(&p, radius.r, radius.h, n_trunc)?;
            let physical = long_sum_physical(&p, radius.r, radius.h)?.value;
            print_json(
                "freqsum",
                &json!({
                    "poly": p.to_string(), "r": radius.r, "h": radius.h, "n_trunc": n_trunc,
                    "value": value, "physical": physical, "difference": (value - physical).abs(),
                }),
            )
        }
        Command::Expsum { poly: p, n_list, r, h, grid, d_div, json } => {
            if grid {
                let rows = bound_check_grid(&n_list, d_div, r)?;
                if json {
                    return print_json("expsum_grid", &json!({ "r": r, "d_div": d_div, "rows": rows }));
                }
                let rows = rows.iter().map(|row| (row.n, row.abs_v, row.bound, row.ratio));
                return write_csv(io::stdout().lock(), &["N", "abs_V", "bound", "ratio"], rows);
            }
            let h: [f64; 3] = h.try_into().map_err(|_| usage("--h needs three components"))?;
            let report = bound_check_vnqr(&poly(&p)?, &n_list, r, h)?;
            if json {
                return print_json("expsum", &report);
            }
            let rows = report.rows.iter().map(|row| (row.n, row.abs_v, row.bound, row.ratio));
            write_csv(io::stdout().lock(), &["N", "abs_V", "bound", "ratio"], rows)
        }
        Command::Pair { pair, word, theta } => {
            let p = ExponentPair::parse(&pair)?.apply_word(&word)?;
            println!("{p}");
            if theta {
                println!("theta {}", theta_formula(&p));
            }
            Ok(())
        }
        Command::Balance(a) => balance_cmd(&a),
        Command::Table { csv } => {
            let rows = appendix_table();
            print!("{}", if csv { render_csv(&rows) } else { render_text(&rows) });
            Ok(())
        }
        Command::Fit(a) => fit(&a),
        Command::ThetaCheck(a) => theta_check(&a, seed),
        Command::Gauss { d, c, xi } => {
            if c == 0 {
                return Err(usage("c must be non-zero"));
            }
            let pair = |z: Complex64| [z.re, z.im];
            let direct = gauss_sum_direct(d, c);
            let closed = gauss_sum_closed(d, c).ok();
            let s = xi.map(|x| quadratic_sum_s(x, d, c)).transpose()?;
            print_json(
                "gauss",
                &json!({
                    "d": d, "c": c,
                    "direct": pair(direct),
                    "closed": closed.map(pair),
                    "difference": closed.map(|z| (z - direct).norm()),
                    "xi": xi,
                    "s": s.map(pair),
                }),
            )
        }
    }
}

fn coeffs(p: &QPoly, n_max: u64, report: Option<BoundArg>) -> Result<(), Failure> {
    let series = coeff_series(p, n_max)?;
    if let Some(mode) = report {
        let mode = match mode {
            BoundArg::Sarnak => BoundMode::Sarnak,
            BoundArg::BlomerHarcos => BoundMode::BlomerHarcos,
        };
        return print_json("coefficient_bound", &coefficient_bound_report(&series, mode)?);
    }
    let rows = series.values().iter().enumerate().map(|(i, a)| (i + 1, a.to_string()));
    write_csv(io::stdout().lock(), &["n", "a_n"], rows)
}

fn smoothed(a: &RadiusArgs, kind: &str) -> Result<(), Failure> {
    let p = poly(&a.poly)?;
    let report = if kind == "shortsum" { short_sum(&p, a.r, a.h)? } else { long_sum_physical(&p, a.r, a.h)? };
    print_json(kind, &report)
}

fn parse_terms(text: &str) -> Result<Vec<ErrorTerm<Rational>>, Failure> {
    text.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t.split_once(':').ok_or_else(|| usage(format!("term {t:?} is not `a:b`")))?;
            let a = parse_rational(a).ok_or_else(|| usage(format!("bad exponent {a:?}")))?;
            let b = parse_rational(b).ok_or_else(|| usage(format!("bad exponent {b:?}")))?;
            Ok(ErrorTerm::new(a, b, false))
        })
        .collect()
}

fn endpoint(text: &str) -> Result<Option<Rational>, Failure> {
    if text.eq_ignore_ascii_case("none") {
        return Ok(None);
    }
    parse_rational(text).map(Some).ok_or_else(|| usage(format!("bad range end {text:?}")))
}

fn balance_cmd(a: &BalanceArgs) -> Result<(), Failure> {
    let long = match (&a.pair, &a.long_terms) {
        (Some(p), _) => long_sum_terms(&ExponentPair::parse(p)?),
        (None, Some(t)) => parse_terms(t)?,
        (None, None) => return Err(usage("give --pair or --long-terms")),
    };
    let short = match &a.short_terms {
        Some(t) => parse_terms(t)?,
        None => short_sum_terms(ShortModel::from_name(&a.short).ok_or_else(|| usage(format!("unknown short model {:?}", a.short)))?),
    };
    let range = AlphaRange { lo: endpoint(&a.lo)?, hi: endpoint(&a.hi)? };
    let res = balance(&long, &short, &range)?;
    let eps = if res.eps { " (+eps)" } else { "" };
    if a.json {
        return print_json(
            "balance",
            &json!({
                "theta": res.theta.to_string(), "alpha": res.alpha.to_string(),
                "active_terms": res.active_terms, "eps": res.eps,
            }),
        );
    }
    println!("theta {}{eps}", res.theta);
    println!("alpha {}", res.alpha);
    println!("active {}", res.active_terms.join(", "));
    Ok(())
}

fn fit(a: &FitArgs) -> Result<(), Failure> {
    let (fit, points, nu) = match &a.input {
        Some(path) => {
            let series = read_series(path)?;
            let (fit, _) = fit_series(&series, a.window)?;
            (fit, series.len(), None)
        }
        None => {
            let opts = HeadlineOptions { r_max: a.r_max, window: a.window, mean_subtract: a.mean_subtract };
            let res = fit_headline(&poly(&a.poly)?, &opts)?;
            if let Some(path) = &a.series {
                let file = std::fs::File::create(path)?;
                write_csv(file, &["R", "sum"], res.series.iter().copied())?;
            }
            (res.fit, res.series.len(), Some(res.nu))
        }
    };
    print_json("fit", &json!({ "fit": fit, "series_len": points, "nu": nu, "window": a.window }))
}

fn theta_check(a: &ThetaArgs, seed: u64) -> Result<(), Failure> {
    let ctx = ThetaContext::new(&poly(&a.poly)?, a.n_max)?.with_y_min(a.y_min);
    let reports = match a.samples {
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            sample_check(&ctx, &mut rng, count, a.c_max, a.tol)?
        }
        None => {
            let g = a.gamma.as_deref().unwrap_or(&[1, 0, 4, 1]);
            let [ga, gb, gc, gd] = g else {
                return Err(usage("--gamma needs four integers"));
            };
            let [re, im] = a.z[..] else {
                return Err(usage("--z needs `re,im`"));
            };
            let gamma = GammaElement::new(*ga, *gb, *gc, *gd)?;
            vec![transformation_check(&ctx, &gamma, Complex64::new(re, im), a.tol)?]
        }
    };
    let passed = reports.iter().filter(|r| r.pass).count();
    let inconclusive = reports.iter().filter(|r| r.inconclusive).count();
    let worst = reports.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    if a.json {
        print_json(
            "theta_check",
            &json!({ "passed": passed, "inconclusive": inconclusive, "max_rel_err": worst, "reports": reports }),
        )?;
    } else {
        let verdict = if passed == reports.len() {
            "pass"
        } else if inconclusive > 0 && passed + inconclusive == reports.len() {
            "inconclusive"
        } else {
            "fail"
        };
        println!("{verdict} {passed}/{} max_rel_err={worst:.3e}", reports.len());
    }
    if passed == reports.len() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
