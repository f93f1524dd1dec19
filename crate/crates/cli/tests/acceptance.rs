//! Acceptance suite: one pass/fail line per criterion, each within its time
//! budget, printed by a plain `main` without the libtest harness.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Zero;
use witt_core::cone::{
    cone_vars, param, param_vars, rat_equal, tau_matrix, tau_point, ConePoly, ConeRat, ProjPoint1, ProjPoint3,
};
use witt_core::divisor::{base_locus, curve_intersection, fixed_points_p1, invariance_scalar, R_FORM, S_FORM};
use witt_core::exact::{ri, MultiPoly};
use witt_core::skew::{gk_slope, relation_as_rat, rho_relation5, rho_relation7, FTable, HilbertOptions, HilbertTable};
use witt_core::thick::{alpha_homomorphism_check, fg_report, nonfg_witness, restrict_ring_map_check, ThickSpaces};
use witt_core::witt::{
    env_dim, ideal_membership, rel5, rel7, straighten, verify_abelian_family, verify_dk_closed_form, words_of_degree,
    AbelianFamily,
};

type Check = Result<Vec<String>, String>;

fn ensure(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn core<T>(r: witt_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Compositions of `n` into parts 1 and 2.
fn compositions(n: u32) -> usize {
    match n {
        0 | 1 => 1,
        _ => compositions(n - 1) + compositions(n - 2),
    }
}

/// Partitions of `n` into parts of size at most `max`.
fn partitions(n: u32, max: u32) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n)).map(|k| partitions(n - k, k)).sum()
}

fn presentation() -> Check {
    ensure(straighten(&rel5()).is_zero(), "rel5 does not straighten to zero")?;
    ensure(straighten(&rel7()).is_zero(), "rel7 does not straighten to zero")?;
    let words = words_of_degree(7).len();
    ensure(words == 21 && words == compositions(7), "degree-7 word space is not 21-dimensional")?;
    ensure(!core(ideal_membership(&rel7(), &rel5(), 7))?, "rel7 lies in the ideal of rel5")?;
    Ok(vec![format!("word space dim {words}, rel7 outside (rel5)")])
}

fn rho_identities() -> Check {
    let ft = FTable::new(6);
    let zero = ConeRat::zero();
    let vanishes = |t: &[(i64, Vec<usize>)]| rat_equal(&relation_as_rat(&ft, t), &zero);
    ensure(vanishes(&rho_relation5(6)), "degree-5 identity fails")?;
    ensure(vanishes(&rho_relation7(40)), "degree-7 identity fails")?;
    for six in [5, 7, -6, 0] {
        ensure(!vanishes(&rho_relation5(six)), "perturbed degree-5 control vanishes")?;
    }
    for forty in [39, 41, -40, 0] {
        ensure(!vanishes(&rho_relation7(forty)), "perturbed degree-7 control vanishes")?;
    }
    Ok(vec!["both identities exact, 8 perturbed controls fail".into()])
}

fn geometry() -> Check {
    let q = core(MultiPoly::parse(&cone_vars(), "x*z - y^2"))?;
    ensure(core(q.compose_linear(&tau_matrix()))? == q, "xz - y^2 is not literally invariant")?;
    for form in [R_FORM, S_FORM] {
        ensure(invariance_scalar(&ConePoly::linear(form)) == Some(ri(1)), "curve not invariant with scalar 1")?;
    }
    let meet = core(curve_intersection(&ConePoly::linear(R_FORM), &ConePoly::linear(S_FORM)))?;
    let expected = core(ProjPoint3::from_i64([2, 1, -1, 1]))?;
    ensure(meet.len() == 1 && meet[0].0 == expected, "C_r and C_s do not meet only in [2:1:-1:1]")?;
    let sigma = witt_core::cone::sigma_matrix();
    let fixed = core(fixed_points_p1(&sigma))?;
    let minus_one = core(ProjPoint1::from_i64(-1, 1))?;
    ensure(fixed.len() == 1 && fixed[0].0 == minus_one, "sigma fixed set is not {[-1:1]}")?;
    ensure(core(minus_one.apply(&sigma))? == minus_one, "[-1:1] is not fixed")?;

    let r0 = core(ProjPoint3::from_i64([0, 1, -2, 4]))?;
    let s1 = core(ProjPoint3::from_i64([8, 0, 0, -1]))?;
    let mut seen = BTreeSet::new();
    for k in -50..=50 {
        ensure(seen.insert(tau_point(k, &r0)), "r0 orbit repeats")?;
    }
    for k in -50..=50 {
        ensure(seen.insert(tau_point(k, &s1)), "s1 orbit repeats or meets the r0 orbit")?;
    }

    let pv = param_vars();
    let u = MultiPoly::var(&pv, 1);
    let v = MultiPoly::var(&pv, 2);
    let lin = &(&u + &u) + &v;
    ensure(param(&ConePoly::linear([0, 4, 4, 1])).0 == &lin * &lin, "param(4x+4y+z) != (2u+v)^2")?;
    Ok(vec![format!("{} orbit points distinct", seen.len())])
}

fn base_loci() -> Check {
    let mut notes = Vec::new();
    let s1 = core(ProjPoint3::from_i64([8, 0, 0, -1]))?;
    for n in 1..=6usize {
        let b = core(base_locus(n))?;
        let r0 = core(ProjPoint3::from_i64([0, 1, -2, 4]))?;
        let s = tau_point(2 - 2 * n as i64, &s1);
        let want: BTreeSet<ProjPoint3> = [r0, s].into_iter().collect();
        let got: BTreeSet<ProjPoint3> = b.points.iter().cloned().collect();
        ensure(got == want && b.line_components.is_empty(), &format!("n={n}: base locus {:?}", b.points))?;
        ensure(b.certified(), &format!("n={n}: transversality not certified"))?;
        ensure(
            b.certificates.iter().all(|c| !(c.restriction[0].is_zero() && c.restriction[1].is_zero())),
            &format!("n={n}: restriction vanishes identically"),
        )?;
        notes.push(format!("n={n}: {{r0, s_{}}} certified ({} members)", 2 * n - 1, b.members));
    }
    Ok(notes)
}

fn hilbert_suite() -> Check {
    let table = core(HilbertTable::compute(&HilbertOptions {
        max_degree: 12,
        symbolic_max: 12,
        eval_check: true,
        certified: true,
        seed: 0,
    }))?;
    let dims = table.dims();
    ensure(dims[2] == 2, "dim V_2 != 2")?;
    for r in &table.rows {
        ensure(r.dim as u64 <= env_dim(r.n as u32), &format!("dim V_{} exceeds env_dim", r.n))?;
        ensure(r.eval_rank == Some(r.dim), &format!("evaluation rank differs at n={}", r.n))?;
    }
    for n in 0..=6 {
        ensure(dims[2 * n] <= (n + 1) * (n + 1), &format!("dim V_{} exceeds (n+1)^2", 2 * n))?;
    }
    for n in 0..=30 {
        ensure(env_dim(n) == partitions(n, n), &format!("env_dim({n}) disagrees with enumeration"))?;
    }
    Ok(vec![format!("dims V_0..V_12 = {dims:?}")])
}

/// Least squares slope of log cumulative dimension against log n.
fn oracle_slope(dims: &[usize], a: usize, b: usize) -> f64 {
    let cum: Vec<f64> = dims
        .iter()
        .scan(0usize, |s, d| {
            *s += d;
            Some(*s as f64)
        })
        .collect();
    let pts: Vec<(f64, f64)> = (a..=b).map(|n| ((n as f64).ln(), cum[n].ln())).collect();
    let k = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(x, y), p| (x + p.0, y + p.1));
    let (mx, my) = (sx / k, sy / k);
    let num: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    num / den
}

fn gk_shadow() -> Check {
    let table = core(HilbertTable::compute(&HilbertOptions {
        max_degree: 40,
        symbolic_max: 12,
        eval_check: false,
        certified: false,
        seed: 0,
    }))?;
    let est = core(gk_slope(&table, 8, 40))?;
    let oracle = oracle_slope(&table.dims(), 8, 40);
    ensure((est.slope - oracle).abs() < 1e-9, "slope disagrees with the oracle fit")?;
    ensure((2.5..=3.4).contains(&est.slope), &format!("slope {} outside [2.5, 3.4]", est.slope))?;
    Ok(vec![format!("slope {:.4} ~ {}", est.slope, est.rational)])
}

fn thick_suite(spaces: &ThickSpaces) -> Check {
    ensure(core(restrict_ring_map_check(100, 0))?, "restrict is not a ring map")?;
    let (pairs, ok) = core(alpha_homomorphism_check(12))?;
    ensure(ok, "alpha is not multiplicative")?;
    let w = core(nonfg_witness(spaces, 1, 8))?;
    ensure(w.containment, "T_n J_k not inside the r0-vanishing eps-multiples")?;
    for g in &w.gaps {
        ensure(g.gap() == 1, &format!("codimension gap {} at m={}", g.gap(), g.m))?;
    }
    Ok(vec![format!("{pairs} alpha pairs, gaps = 1 for m = 1..8")])
}

fn witness_suite(spaces: &ThickSpaces) -> Check {
    let w = core(nonfg_witness(spaces, 2, 8))?;
    let mut notes = vec!["m  dim J_m  dim (T J_<=2)_m  deficiency".to_string()];
    for r in &w.deficiencies {
        notes.push(format!("{:<2} {:>8} {:>16} {:>11}", r.m, r.dim_j, r.dim_generated, r.deficiency));
    }
    ensure(w.deficiencies.len() == 6, "deficiency table does not cover m = 3..8")?;
    ensure(w.deficiencies.iter().all(|r| r.dim_generated < r.dim_j), "some degree needs no new generator")?;
    Ok(notes)
}

fn fg_suite(spaces: &ThickSpaces) -> Check {
    let fg = core(fg_report(spaces))?;
    let n0 = fg.n0.ok_or("no N0 found")?;
    ensure(n0 <= 6, &format!("N0 = {n0} exceeds 6"))?;
    for r in fg.rows.iter().filter(|r| r.n >= n0) {
        ensure(r.equal, &format!("T_{} != R2 T + R4 T", r.n))?;
        ensure(r.dim_r2 + 1 == r.dim_t, &format!("dim R2 T_{} != dim T_{} - 1", r.n - 1, r.n))?;
    }
    Ok(vec![format!("N0 = {n0}")])
}

fn cartan_suite() -> Check {
    let mut count = 0;
    for m in 1..=2usize {
        for n in [2 * m, 2 * m + 1] {
            let family = AbelianFamily::SnLine { n, i: 1, j: 2 };
            ensure(core(verify_abelian_family(family, 6))?, &format!("{family:?} not abelian"))?;
            count += 1;
        }
        for j in 1..=m {
            for family in [AbelianFamily::H2mLine { m, j }, AbelianFamily::KContact { m, j }] {
                ensure(core(verify_abelian_family(family, 6))?, &format!("{family:?} not abelian"))?;
                count += 1;
            }
            ensure(core(verify_dk_closed_form(m, j, 6))?, &format!("D_K closed form fails for m={m}, j={j}"))?;
        }
    }
    Ok(vec![format!("{count} families abelian, closed form holds for r <= 6")])
}

fn determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_wittcheck");
    let run = || -> Result<Vec<u8>, String> {
        let out = Command::new(bin).arg("all").output().map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(0), &format!("wittcheck all exited with {:?}", out.status.code()))?;
        Ok(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    ensure(!a.is_empty() && a == b, "reports differ between runs")?;
    Ok(vec![format!("{} bytes identical", a.len())])
}

struct Outcome {
    id: u32,
    name: &'static str,
    passed: bool,
    elapsed: Duration,
    limit: Duration,
    notes: Vec<String>,
}

fn record(id: u32, name: &'static str, limit_s: u64, f: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit_s);
    let (mut passed, mut notes) = match result {
        Ok(n) => (true, n),
        Err(e) => (false, vec![e]),
    };
    if elapsed > limit {
        passed = false;
        notes.push(format!("exceeded the {limit_s} s budget"));
    }
    let o = Outcome { id, name, passed, elapsed, limit, notes };
    println!(
        "criterion {:>2} {:<28} {} ({:.2} s, limit {} s)",
        o.id,
        o.name,
        if o.passed { "PASS" } else { "FAIL" },
        o.elapsed.as_secs_f64(),
        o.limit.as_secs()
    );
    for n in &o.notes {
        println!("    {n}");
    }
    o
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut outcomes = vec![
        record(1, "presentation", 10, presentation),
        record(2, "rho identities", 10, rho_identities),
        record(3, "geometry", 30, geometry),
        record(4, "base locus", 60, base_loci),
        record(5, "hilbert", 300, hilbert_suite),
        record(6, "gk shadow", 600, gk_shadow),
    ];
    let start = Instant::now();
    let spaces = ThickSpaces::new(8);
    let build = start.elapsed();
    match spaces {
        Ok(spaces) => {
            let budget = 300 - build.as_secs();
            outcomes.push(record(7, "thick curve", budget, || thick_suite(&spaces)));
            outcomes.push(record(8, "non-noetherian witness", budget, || witness_suite(&spaces)));
            outcomes.push(record(9, "finite generation shadow", budget, || fg_suite(&spaces)));
        }
        Err(e) => {
            for (id, name) in [(7, "thick curve"), (8, "non-noetherian witness"), (9, "finite generation shadow")] {
                outcomes.push(record(id, name, 300, || Err(e.to_string())));
            }
        }
    }
    outcomes.push(record(10, "cartan", 10, cartan_suite));
    outcomes.push(record(11, "determinism", 600, determinism));

    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", outcomes.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
