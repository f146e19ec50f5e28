//! Acceptance criteria. Run with `cargo test --test acceptance`; prints one
//! PASS/FAIL line per criterion and exits non-zero if any fails.

use std::time::{Duration, Instant};

use dimspec::feasibility::{bound_dims, excluded_dims_universal, scan_with_threads, ScanGrid};
use dimspec::oracle::{minimize_v_eff, radial_ground_state, KineticConvention};
use dimspec::potential::{alpha_coefficient, alpha_m1_closed_form};
use dimspec::report::{from_json, read_csv, table1_compare, to_json, write_csv};
use dimspec::spectrum::{
    e0_general, e0_scheme_m1, e0_scheme_m1_rederived, e0_scheme_mn, effective_quantum_number,
    m1_discrepancy_report, EnergyQuery,
};
use dimspec::{Scheme, SignedLogReal};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn alpha(d: u32, m: u32) -> SignedLogReal {
    alpha_coefficient(d, m).unwrap().alpha.unwrap()
}

fn ac1_normalization() -> Check {
    let a = alpha(3, 1).to_f64();
    ensure((a - 1.0).abs() <= 1e-14, format!("alpha(3,1) = {a}"))?;
    let mut worst = 0.0f64;
    for d in 3..=40 {
        let general = alpha(d, 1);
        let closed = alpha_m1_closed_form(d).map_err(|e| e.to_string())?;
        worst = worst.max((general.lnmag() - closed.lnmag()).exp_m1().abs());
    }
    ensure(worst <= 1e-12, format!("m=1 closed form deviates by {worst:e}"))?;
    Ok(format!("alpha(3,1)-1 = {:e}; max m=1 rel dev {worst:.1e}", a - 1.0))
}

fn ac2_anchor_row() -> Check {
    let e = e0_scheme_mn(3, 1).energy().ok_or("(3,1) not bound")?.to_f64();
    ensure((e + 1.0 / 9.0).abs() <= 1e-14, format!("E0(3,1) = {e}"))?;
    let rel = (e - -0.11).abs() / 0.11;
    ensure(rel <= 2e-2, format!("relative deviation from -0.11 is {rel}"))?;
    Ok(format!("E0(3,1) = {e:.6}, rel dev from -0.11 = {rel:.4}"))
}

fn ac3_oracle_equivalence() -> Check {
    let mut points = 0;
    let (mut worst_e, mut worst_r) = (0.0f64, 0.0f64);
    for scheme in [Scheme::MEqualsN, Scheme::MEqualsOne] {
        for n in [1u32, 3, 5] {
            for d in bound_dims(n, scheme).members.into_iter().filter(|&d| d <= 20) {
                let m = if scheme == Scheme::MEqualsN { n } else { 1 };
                let q = EnergyQuery::from_green_function(d, n, m).map_err(|e| e.to_string())?;
                let e0 = e0_general(&q).energy().ok_or(format!("({d},{n}) not bound"))?;
                let min = minimize_v_eff(&q).map_err(|e| e.to_string())?;
                let rel_ln = (min.e_min.lnmag() - e0.lnmag()).abs() / e0.lnmag().abs();
                worst_e = worst_e.max(rel_ln);
                worst_r = worst_r.max(min.r_star_rel_deviation());
                points += 1;
            }
        }
    }
    ensure(points >= 15, format!("only {points} points"))?;
    ensure(worst_e <= 1e-8, format!("energy lnmag rel dev {worst_e:e}"))?;
    ensure(worst_r <= 1e-9, format!("r* rel dev {worst_r:e}"))?;
    Ok(format!("{points} points; max lnmag rel dev {worst_e:.1e}; max r* rel dev {worst_r:.1e}"))
}

fn ac4_scheme_consistency() -> Check {
    let mut worst = 0.0f64;
    let mut points = 0;
    for n in [1u32, 3, 5, 7] {
        for d in bound_dims(n, Scheme::MEqualsN).members {
            let printed = e0_scheme_mn(d, n).energy().ok_or(format!("printed ({d},{n}) not bound"))?;
            let q = EnergyQuery::from_green_function(d, n, n).map_err(|e| e.to_string())?;
            let general = e0_general(&q).energy().ok_or(format!("general ({d},{n}) not bound"))?;
            worst = worst.max((printed.lnmag() - general.lnmag()).abs() / general.lnmag().abs());
            points += 1;
        }
    }
    ensure(worst <= 1e-10, format!("m=n printed vs general {worst:e}"))?;
    let p = e0_scheme_m1(3, 1).energy().ok_or("printed m=1 (3,1) not bound")?;
    let r = e0_scheme_m1_rederived(3, 1).energy().ok_or("rederived (3,1) not bound")?;
    ensure((p.lnmag() - r.lnmag()).abs() <= 1e-10, "m=1 forms disagree at (3,1)")?;
    let report = m1_discrepancy_report(9);
    ensure(!report.is_empty(), "m=1 discrepancy report is empty")?;
    ensure(report.iter().all(|r| r.n > 1), "discrepancy reported at n = 1")?;
    Ok(format!(
        "{points} m=n points, max rel dev {worst:.1e}; {} m=1 discrepancies for n>1",
        report.len()
    ))
}

fn ac5_feasibility() -> Check {
    ensure(bound_dims(1, Scheme::MEqualsN).members == [3], "n=1")?;
    ensure(bound_dims(3, Scheme::MEqualsN).members == [7, 8, 9, 10, 11], "n=3")?;
    for n in (2..=16).step_by(2) {
        ensure(bound_dims(n, Scheme::MEqualsN).members.is_empty(), format!("even n={n}"))?;
    }
    let ex = excluded_dims_universal();
    ensure(ex.dims == [4, 5, 6] && ex.verified_up_to_n >= 64, "universal exclusion")?;
    let w = bound_dims(3, Scheme::MEqualsOne);
    ensure(w.members == [3, 4, 5, 6, 7], "m=1 n=3 window")?;
    ensure(w.paper_omitted() == [4], "D=4 not flagged")?;
    Ok("windows {3}, {7..11}, even n empty, {4,5,6} excluded to n=64, m=1 n=3 {3..7} with D=4 flagged".into())
}

fn ac6_radial() -> Check {
    let full = radial_ground_state(3, 1.0, 1, KineticConvention::FullLaplacian, 0)
        .map_err(|e| e.to_string())?
        .energy;
    let half = radial_ground_state(3, 1.0, 1, KineticConvention::HalfLaplacian, 0)
        .map_err(|e| e.to_string())?
        .energy;
    let excited = radial_ground_state(3, 1.0, 1, KineticConvention::HalfLaplacian, 1)
        .map_err(|e| e.to_string())?
        .energy;
    ensure((full + 0.25).abs() <= 1e-4, format!("-Δ-1/r: {full}"))?;
    ensure((half + 0.5).abs() <= 1e-4, format!("-Δ/2-1/r: {half}"))?;
    ensure((excited + 0.125).abs() <= 1e-4, format!("first excited: {excited}"))?;
    Ok(format!("E(full) = {full:.8}, E(half) = {half:.8}, E1(half) = {excited:.8}"))
}

fn ac7_magnitude_stress() -> Check {
    let e = e0_scheme_mn(19, 5).energy().ok_or("(19,5) not bound")?;
    ensure(e.lnmag().is_finite(), "non-finite lnmag")?;
    let dec = e.to_decimal_string(3);
    let exp: i32 = dec.rsplit('e').next().unwrap().parse().map_err(|_| dec.clone())?;
    ensure(exp <= -90, format!("decimal {dec}"))?;
    let rows = table1_compare();
    let row = rows.iter().find(|r| r.d == 19 && r.n == 5).ok_or("row missing")?;
    let ratio = row.ratio_log10.ok_or("no ratio")?;
    ensure(ratio.is_finite(), "non-finite log10 ratio")?;
    Ok(format!("E0(19,5) = {dec}, log10(computed/published) = {ratio:.2}"))
}

fn ac8_monotonic_unique() -> Check {
    for n in [3u32, 5] {
        let mags: Vec<f64> = bound_dims(n, Scheme::MEqualsN)
            .members
            .iter()
            .map(|&d| {
                let q = EnergyQuery::from_green_function(d, n, n).unwrap();
                e0_general(&q).energy().unwrap().lnmag()
            })
            .collect();
        ensure(mags.windows(2).all(|w| w[1] < w[0]), format!("|E0| not decreasing for n={n}"))?;
    }
    let mut best = (f64::NEG_INFINITY, 0, 0);
    for n in 1..=9u32 {
        for d in bound_dims(n, Scheme::MEqualsN).members {
            let q = EnergyQuery::from_green_function(d, n, n).unwrap();
            let l = e0_general(&q).energy().unwrap().lnmag();
            if l > best.0 {
                best = (l, d, n);
            }
        }
        if n != 1 {
            ensure(!e0_scheme_mn(3, n).is_bound(), format!("bound at D=3, n={n}"))?;
            let q = alpha_coefficient(3, n);
            ensure(q.is_err() || q.unwrap().alpha.is_none(), format!("alpha defined at D=3 n={n}"))?;
        }
    }
    ensure((best.1, best.2) == (3, 1), format!("max |E0| at {:?}", (best.1, best.2)))?;
    Ok("monotone for n=3,5; max |E0| at (3,1); no D=3 bound state for n≠1".into())
}

fn ac9_rydberg() -> Check {
    let k = effective_quantum_number(SignedLogReal::from_f64(-0.00041)).map_err(|e| e.to_string())?;
    ensure(k.nearest == 35, format!("nearest = {}", k.nearest))?;
    let mut worst = 0.0f64;
    for k in 1..=100u32 {
        let e = SignedLogReal::from_f64(-1.0 / (2.0 * f64::from(k * k)));
        let got = effective_quantum_number(e).map_err(|e| e.to_string())?.k_star;
        worst = worst.max((got - f64::from(k)).abs());
    }
    ensure(worst <= 1e-12, format!("inversion error {worst:e}"))?;
    Ok(format!("k*(-0.00041) = {:.3} -> {}; max inversion error {worst:.1e}", k.k_star, k.nearest))
}

fn ac10_round_trip() -> Check {
    let grid = ScanGrid::new((2..=21).collect(), (1..=10).collect(), Scheme::MEqualsN);
    let one = scan_with_threads(&grid, Some(1)).map_err(|e| e.to_string())?;
    let eight = scan_with_threads(&grid, Some(8)).map_err(|e| e.to_string())?;
    ensure(one.len() == 200, format!("{} records", one.len()))?;
    ensure(one == eight, "thread count changes output")?;
    let sorted = one
        .windows(2)
        .all(|w| (w[0].params.n(), w[0].params.d()) < (w[1].params.n(), w[1].params.d()));
    ensure(sorted, "records not ordered by n then D")?;
    let mut csv = Vec::new();
    write_csv(&one, &mut csv).map_err(|e| e.to_string())?;
    let back = read_csv(csv.as_slice(), Scheme::MEqualsN).map_err(|e| e.to_string())?;
    ensure(back == one, "CSV round trip differs")?;
    let json = to_json(&one).map_err(|e| e.to_string())?;
    let back = from_json(&json, Scheme::MEqualsN).map_err(|e| e.to_string())?;
    ensure(back == one, "JSON round trip differs")?;
    Ok("200 records identical across threads {1, 8} and through CSV and JSON".into())
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Check); 10] = [
        ("AC1 normalization anchor", Duration::from_secs(1), ac1_normalization),
        ("AC2 (3,1) row", Duration::from_secs(1), ac2_anchor_row),
        ("AC3 oracle equivalence", Duration::from_secs(5), ac3_oracle_equivalence),
        ("AC4 scheme consistency", Duration::from_secs(5), ac4_scheme_consistency),
        ("AC5 feasibility lists", Duration::from_secs(1), ac5_feasibility),
        ("AC6 radial oracle", Duration::from_secs(10), ac6_radial),
        ("AC7 magnitude stress", Duration::from_secs(1), ac7_magnitude_stress),
        ("AC8 monotonicity & uniqueness", Duration::from_secs(5), ac8_monotonic_unique),
        ("AC9 Rydberg equivalence", Duration::from_secs(1), ac9_rydberg),
        ("AC10 serialization round trip", Duration::from_secs(5), ac10_round_trip),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|msg| {
            if elapsed <= budget {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {elapsed:.2?} > {budget:?}"))
            }
        });
        match result {
            Ok(msg) => println!("PASS {name} ({elapsed:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name} ({elapsed:.2?}): {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
