//! Acceptance suite. Each check prints one `[PASS]` or `[FAIL]` line with its
//! runtime and budget; the test fails if any check fails.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use genera::arith::{int, rat};
use genera::genera::{
    ahat_genus, genus_both_routes, l_genus, ramanujan_scale, ramanujan_u, ramanujan_u_quasi,
    sign_flip_partitions, trace, verify_triple_product, verify_witten_identity, EisensteinBasis,
    Genus, QuasiPoly,
};
use genera::numeric::{verify_g2_limit, verify_raw_products, verify_tier_a, NumericConfig, C64};
use genera::partitions::{cycle_index, enumerate_partitions, exp_power_sum_series};
use genera::symfun::{Basis, SymPoly};
use genera::{PhiWeight, Rational};

type Check = std::result::Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p_poly(weight: u32, terms: &[(&[u32], i64)], denom: i64) -> SymPoly {
    let t: Vec<(&[u32], Rational)> = terms.iter().map(|(l, n)| (*l, rat(*n, denom))).collect();
    SymPoly::from_parts(Basis::Pontryagin, weight, &t)
}

fn e_poly(k: u32, terms: &[(&[u32], i64)], denom: i64) -> QuasiPoly {
    let t: Vec<(&[u32], Rational)> = terms.iter().map(|(l, n)| (*l, rat(*n, denom))).collect();
    QuasiPoly::from_parts(EisensteinBasis::E, k, &t)
}

fn golden_genus_tables() -> Check {
    let ahat = [
        SymPoly::one(Basis::Pontryagin),
        p_poly(1, &[(&[1], -1)], 24),
        p_poly(2, &[(&[2], -4), (&[1, 1], 7)], 5760),
        p_poly(3, &[(&[3], -16), (&[2, 1], 44), (&[1, 1, 1], -31)], 967680),
        p_poly(
            4,
            &[
                (&[4], -192),
                (&[3, 1], 512),
                (&[2, 2], 208),
                (&[2, 1, 1], -904),
                (&[1, 1, 1, 1], 381),
            ],
            464486400,
        ),
    ];
    let l = [
        SymPoly::one(Basis::Pontryagin),
        p_poly(1, &[(&[1], 1)], 3),
        p_poly(2, &[(&[2], 7), (&[1, 1], -1)], 45),
        p_poly(3, &[(&[3], 62), (&[2, 1], -13), (&[1, 1, 1], 2)], 945),
    ];
    for (k, want) in ahat.iter().enumerate() {
        let got = ahat_genus(k as u32).map_err(|e| e.to_string())?;
        ensure(&got == want, || {
            format!("A-hat_{k}: got {got}, want {want}")
        })?;
    }
    for (k, want) in l.iter().enumerate() {
        let got = l_genus(k as u32).map_err(|e| e.to_string())?;
        ensure(&got == want, || format!("L_{k}: got {got}, want {want}"))?;
    }
    Ok(())
}

fn double_route() -> Check {
    for genus in [Genus::AHat, Genus::L] {
        for k in 0..=10 {
            let (direct, traced) = genus_both_routes(genus, k).map_err(|e| e.to_string())?;
            ensure(direct == traced, || {
                format!("{} k={k}: {direct} vs {traced}", genus.name())
            })?;
        }
    }
    Ok(())
}

fn ramanujan_u_identity() -> Check {
    let order = 60;
    for k in 0..=6 {
        let lhs = ramanujan_u(k, order);
        let rhs = ramanujan_u_quasi(k).to_qseries(order);
        ensure(lhs == rhs, || {
            format!("U_{} differs through q^{order}", 2 * k)
        })?;
    }
    let golden = [
        QuasiPoly::one(EisensteinBasis::E),
        e_poly(1, &[(&[1], 1)], 1),
        e_poly(2, &[(&[1, 1], 5), (&[2], -2)], 3),
        e_poly(3, &[(&[1, 1, 1], 35), (&[2, 1], -42), (&[3], 16)], 9),
    ];
    for (k, want) in golden.iter().enumerate() {
        let got = ramanujan_u_quasi(k as u32);
        ensure(&got == want, || {
            format!(
                "U_{}: got {}, want {}",
                2 * k,
                got.to_text(),
                want.to_text()
            )
        })?;
    }
    ensure(ramanujan_scale(3) == int(322560), || "4^3 7! scale".into())
}

fn ahat_sign_structure() -> Check {
    for k in 1..=8 {
        let ahat = trace(&PhiWeight::AHat, k, EisensteinBasis::G).convert();
        let sign = if k % 2 == 0 { 1 } else { -1 };
        ensure(ahat.terms().len() == enumerate_partitions(k).len(), || {
            format!("k={k}: missing monomials")
        })?;
        for (lambda, c) in ahat.terms() {
            let s = if *c > int(0) { 1 } else { -1 };
            ensure(s == sign, || {
                format!("k={k}: coefficient of {lambda} is {c}")
            })?;
        }
        let abs_u = trace(&PhiWeight::AbsU, k, EisensteinBasis::E).scale(&int(sign));
        ensure(ahat == abs_u, || {
            format!("k={k}: E-basis A-hat is not (-1)^k Tr(|phi_U|)")
        })?;
        let flips = sign_flip_partitions(k);
        let odd: Vec<_> = enumerate_partitions(k)
            .into_iter()
            .filter(|l| l.length() % 2 == 1)
            .collect();
        ensure(flips == odd, || {
            format!("k={k}: flips {flips:?}, want {odd:?}")
        })?;
    }
    let a3 = e_poly(
        3,
        &[(&[3], -16), (&[2, 1], -42), (&[1, 1, 1], -35)],
        2903040,
    );
    let a5 = e_poly(
        5,
        &[
            (&[5], -768),
            (&[4, 1], -1584),
            (&[3, 2], -704),
            (&[3, 1, 1], -1760),
            (&[2, 2, 1], -924),
            (&[2, 1, 1, 1], -1540),
            (&[1, 1, 1, 1, 1], -385),
        ],
        367873228800,
    );
    for (k, want) in [(3, a3), (5, a5)] {
        let got = trace(&PhiWeight::AHat, k, EisensteinBasis::G).convert();
        ensure(got == want, || {
            format!("A-hat_{k}: got {}, want {}", got.to_text(), want.to_text())
        })?;
    }
    Ok(())
}

fn triple_product() -> Check {
    let r = verify_triple_product(40);
    ensure(r.passed(), || format!("{:?}", r.diff))
}

fn witten_identity() -> Check {
    let r = verify_witten_identity(10, 30);
    ensure(r.passed(), || format!("{:?}", r.diff))
}

fn numeric_tier_a() -> Check {
    let cfg = NumericConfig::default();
    ensure(
        cfg.zs == [0.05, 0.1, 0.2] && cfg.sigma_cutoff == 400 && cfg.tol == 1e-6,
        || "default grid or tolerance changed".into(),
    )?;
    ensure(
        cfg.taus == [C64::new(0.0, 1.0), C64::new(0.0, 2.0), C64::new(0.5, 1.0)],
        || "default tau grid changed".into(),
    )?;
    let reports = verify_tier_a(&cfg).map_err(|e| e.to_string())?;
    for r in &reports {
        ensure(r.passed(), || format!("{}: {:?}", r.claim, r.diff))?;
    }
    Ok(())
}

fn numeric_tier_b() -> Check {
    let cfg = NumericConfig::default();
    ensure(
        cfg.s_grid == [1.0, 0.5, 0.25, 0.1] && cfg.lattice_cutoff == 300,
        || "default s-grid or cutoff changed".into(),
    )?;
    ensure(cfg.tol_factorization == 1e-8, || {
        "factorisation tolerance changed".into()
    })?;
    let mut rows = Vec::new();
    let mut reports = verify_g2_limit(&cfg, &mut rows).map_err(|e| e.to_string())?;
    reports.extend(verify_raw_products(&cfg, &mut rows).map_err(|e| e.to_string())?);
    for r in &reports {
        ensure(r.passed(), || format!("{}: {:?}", r.claim, r.diff))?;
    }
    // independent of the report logic: residuals along each row group never increase
    let mut groups: Vec<(String, Vec<f64>)> = Vec::new();
    for row in &rows {
        match groups.last_mut() {
            Some((claim, rs)) if *claim == row.claim => rs.push(row.residual),
            _ => groups.push((row.claim.clone(), vec![row.residual])),
        }
    }
    ensure(groups.len() == 3 + 2 * 9, || {
        format!("{} convergence groups", groups.len())
    })?;
    for (claim, rs) in &groups {
        ensure(rs.len() == cfg.s_grid.len(), || {
            format!("{claim}: {} rows", rs.len())
        })?;
        ensure(rs.windows(2).all(|w| w[1] <= w[0] + 1e-12), || {
            format!("{claim}: residuals {rs:?}")
        })?;
    }
    Ok(())
}

fn cycle_index_generating_function() -> Check {
    let series = exp_power_sum_series(8);
    for n in 0..=8u32 {
        ensure(series[n as usize] == cycle_index(n), || {
            format!("t^{n} coefficient differs")
        })?;
    }
    Ok(())
}

fn full_suite_cli() -> Check {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_genera"))
            .args(["verify", "--suite", "all"])
            .output()
            .map_err(|e| e.to_string())
    };
    let first = run()?;
    ensure(first.status.code() == Some(0), || {
        format!(
            "exit {:?}: {}",
            first.status.code(),
            String::from_utf8_lossy(&first.stdout)
        )
    })?;
    let second = run()?;
    ensure(first.stdout == second.stdout, || {
        "output differs between runs".into()
    })?;
    let text = String::from_utf8_lossy(&first.stdout);
    ensure(
        text.lines().last().is_some_and(|l| l.contains(" 0 failed")),
        || text.to_string(),
    )
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            name: "golden A-hat_0..4 and L_0..3 in the Pontryagin basis",
            budget: secs(1),
            run: golden_genus_tables,
        },
        Criterion {
            name: "characteristic-series and trace routes agree for k <= 10",
            budget: secs(10),
            run: double_route,
        },
        Criterion {
            name: "U_2k equals the scaled phi_U trace through q^60, k <= 6",
            budget: secs(10),
            run: ramanujan_u_identity,
        },
        Criterion {
            name: "E-basis A-hat signs, sign flips at odd length, golden k = 3, 5",
            budget: secs(5),
            run: ahat_sign_structure,
        },
        Criterion {
            name: "cleared Jacobi triple product through q^40",
            budget: secs(5),
            run: triple_product,
        },
        Criterion {
            name: "Witten series times sigma/z is 1 (w-order 10, q-order 30)",
            budget: secs(30),
            run: witten_identity,
        },
        Criterion {
            name: "numeric tier A residuals below 1e-6 on the (z, tau) grid",
            budget: secs(60),
            run: numeric_tier_a,
        },
        Criterion {
            name: "numeric tier B monotone along the s-grid, regrouping to 1e-8",
            budget: secs(60),
            run: numeric_tier_b,
        },
        Criterion {
            name: "exp of power sums equals the cycle index through t^8",
            budget: secs(1),
            run: cycle_index_generating_function,
        },
        Criterion {
            name: "verify --suite all twice, identical output",
            budget: secs(180),
            run: full_suite_cli,
        },
    ];
    let mut failures = Vec::new();
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out);
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let within = elapsed <= c.budget;
        let ok = result.is_ok() && within;
        let detail = match (&result, within) {
            (Err(e), _) => format!(": {e}"),
            (Ok(()), false) => ": over budget".to_string(),
            _ => String::new(),
        };
        let _ = writeln!(
            out,
            "[{}] {} ({:.2} s, budget {} s){}",
            if ok { "PASS" } else { "FAIL" },
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            detail
        );
        if !ok {
            failures.push(c.name);
        }
    }
    let _ = out.flush();
    assert!(failures.is_empty(), "failed: {failures:?}");
}
