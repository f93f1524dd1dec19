use serde_json::{json, Value};
use witt_core::cone::{cone_vars, rat_equal, tau_matrix, ConeRat};
use witt_core::divisor::{base_locus, orbit_geometry_report};
use witt_core::exact::{MultiPoly, Rational};
use witt_core::skew::{
    check_birational, generator_check, gk_slope, relation_as_rat, rho_relation5, rho_relation7, FTable, HilbertOptions,
    HilbertTable,
};
use witt_core::thick::{
    alpha_homomorphism_check, fg_report, h0m, nonfg_witness, restrict_equivariance_check, restrict_ring_map_check,
    ThickSpaces,
};
use witt_core::witt::{
    completeness_report, env_dim, ideal_membership, pbw_basis, rel5, rel7, straighten, verify_abelian_family,
    verify_dk_closed_form, words_of_degree, AbelianFamily,
};
use witt_core::Result;

use crate::json::{point1, point3, rational, Section};
use crate::RunConfig;

/// Degree of the presentation completeness table.
const COMPLETENESS_DEGREE: u32 = 10;
/// Hilbert rows up to this degree use exact symbolic ranks.
const SYMBOLIC_MAX: usize = 12;
const ENV_DIM_CHECK: u32 = 30;
const ALPHA_DEGREE: u32 = 12;
const RING_MAP_PAIRS: usize = 100;
const EQUIVARIANCE_FORMS: usize = 50;
const GK_RANGE: (f64, f64) = (2.5, 3.4);
const CARTAN_EXPONENT: u32 = 6;
const CARTAN_M: usize = 2;

pub fn presentation(_cfg: &RunConfig) -> Result<Section> {
    let mut s = Section::default();
    s.verdict("rel5_zero", straighten(&rel5()).is_zero());
    s.verdict("rel7_zero", straighten(&rel7()).is_zero());
    s.verdict("rel7_not_in_ideal", !ideal_membership(&rel7(), &rel5(), 7)?);
    s.value("degree7_words", words_of_degree(7).len());
    let rows = completeness_report(COMPLETENESS_DEGREE)?;
    s.table(
        "completeness",
        rows.iter()
            .map(|r| {
                json!({
                    "degree": r.degree,
                    "words": r.words,
                    "ideal_dim": r.ideal_dim,
                    "quotient_dim": r.quotient_dim,
                    "env_dim": r.env_dim,
                    "matches": r.matches(),
                })
            })
            .collect(),
    );
    Ok(s)
}

pub fn rho(_cfg: &RunConfig) -> Result<Section> {
    let mut s = Section::default();
    let ft = FTable::new(6);
    let vanishes = |terms: &[(i64, Vec<usize>)]| rat_equal(&relation_as_rat(&ft, terms), &ConeRat::zero());
    s.verdict("deg5_identity", vanishes(&rho_relation5(6)));
    s.verdict("deg7_identity", vanishes(&rho_relation7(40)));
    s.verdict("deg5_perturbed_fails", !vanishes(&rho_relation5(7)));
    s.verdict("deg7_perturbed_fails", !vanishes(&rho_relation7(41)));
    let g = generator_check();
    s.verdict("generator_y_over_z", g.first_ok);
    s.verdict("generator_second", g.second_ok);
    s.value("display_numerator_matches", g.alternative_ok);
    s.verdict("birational", check_birational().ok());
    Ok(s)
}

pub fn geometry(cfg: &RunConfig) -> Result<Section> {
    let mut s = Section::default();
    let q = MultiPoly::parse(&cone_vars(), "x*z - y^2")?;
    s.verdict("cone_equation_invariant", q.compose_linear(&tau_matrix())? == q);
    let r = orbit_geometry_report(cfg.orbit_n)?;
    let one = Rational::from_integer(1.into());
    s.verdict("cr_invariant", r.cr_scalar.as_ref() == Some(&one));
    s.verdict("cs_invariant", r.cs_scalar.as_ref() == Some(&one));
    s.verdict("cr_cs_single_point", r.cr_cs.len() == 1);
    s.verdict("sigma_single_fixed_point", r.sigma_fixed.len() == 1);
    s.verdict("r0_orbit_distinct", r.r0_orbit_distinct);
    s.verdict("s1_orbit_distinct", r.s1_orbit_distinct);
    s.verdict("orbits_disjoint", r.orbits_disjoint);
    s.verdict("r0_orbit_on_cr", r.r0_orbit_on_cr);
    s.verdict("s1_orbit_on_cs", r.s1_orbit_on_cs);
    s.verdict("infinite_order", r.infinite_order);
    s.verdict("double_line", r.double_line);
    s.verdict("report_ok", r.ok());
    s.value("orbit_n", r.orbit_n);
    s.table("cr_cs", r.cr_cs.iter().map(|(p, m)| json!({"point": point3(p), "multiplicity": m})).collect());
    s.table("sigma_fixed", r.sigma_fixed.iter().map(|(p, m)| json!({"point": point1(p), "multiplicity": m})).collect());
    Ok(s)
}

pub fn base_locus_section(cfg: &RunConfig) -> Result<Section> {
    let mut s = Section::default();
    let mut rows = Vec::new();
    for n in 1..=cfg.max_degree as usize {
        let b = base_locus(n)?;
        s.verdict(&format!("n{n}"), b.matches_expected() && b.certified() && b.all_effective && !b.contains_vertex());
        let certs: Vec<Value> = b
            .certificates
            .iter()
            .map(|c| {
                json!({
                    "point": point3(&c.point),
                    "line": c.line,
                    "line_multiplicity": c.line_multiplicity,
                    "prime": c.prime.to_string(),
                    "restriction": c.restriction.iter().map(rational).collect::<Vec<_>>(),
                    "order": c.order,
                    "simple": c.simple(),
                })
            })
            .collect();
        rows.push(json!({
            "n": n,
            "points": b.points.iter().map(point3).collect::<Vec<_>>(),
            "expected": witt_core::divisor::BaseLocus::expected(n).iter().map(point3).collect::<Vec<_>>(),
            "line_components": b.line_components,
            "members": b.members,
            "all_effective": b.all_effective,
            "certificates": certs,
        }));
    }
    s.table("base_locus", rows);
    Ok(s)
}

pub fn hilbert(cfg: &RunConfig) -> Result<Section> {
    let mut s = Section::default();
    let max = SYMBOLIC_MAX.max(cfg.max_degree as usize);
    let table = HilbertTable::compute(&HilbertOptions {
        max_degree: max,
        symbolic_max: SYMBOLIC_MAX,
        eval_check: true,
        certified: cfg.certified,
        seed: cfg.seed,
    })?;
    let dims = table.dims();
    s.verdict("dim_v2_is_2", dims.get(2) == Some(&2));
    s.verdict("below_env_dim", table.rows.iter().all(|r| r.dim as u64 <= r.env_dim));
    s.verdict("even_below_cone_bound", (0..=max / 2).all(|n| dims[2 * n] <= (n + 1) * (n + 1)));
    s.verdict(
        "symbolic_equals_evaluation",
        table.rows.iter().filter(|r| r.n <= SYMBOLIC_MAX).all(|r| r.eval_rank == Some(r.dim) && r.modp_rank == r.dim),
    );
    s.verdict("env_dim_matches_enumeration", (0..=ENV_DIM_CHECK).all(|n| pbw_basis(n).len() as u64 == env_dim(n)));
    s.table("dims", table.rows.iter().map(hilbert_row).collect());
    Ok(s)
}

fn hilbert_row(r: &witt_core::skew::HilbertRow) -> Value {
    json!({
        "n": r.n,
        "dim": r.dim,
        "cumulative": r.cumulative,
        "env_dim": r.env_dim,
        "upper_bound": r.upper_bound,
        "method": r.method.as_str(),
        "eval_rank": r.eval_rank,
        "modp_rank": r.modp_rank,
    })
}

pub fn gk(cfg: &RunConfig) -> Result<Section> {
    let mut s = Section::default();
    let (a, b) = cfg.gk_window;
    let table = HilbertTable::compute(&HilbertOptions {
        max_degree: b as usize,
        symbolic_max: SYMBOLIC_MAX.min(b as usize),
        eval_check: false,
        certified: cfg.certified,
        seed: cfg.seed,
    })?;
    let est = gk_slope(&table, a as usize, b as usize)?;
    s.verdict("slope_in_range", est.slope >= GK_RANGE.0 && est.slope <= GK_RANGE.1);
    s.value("slope", est.slope);
    s.value("slope_rational", rational(&est.rational));
    s.value("window", json!([a, b]));
    s.value("accepted_range", json!([GK_RANGE.0, GK_RANGE.1]));
    s.table("dims", table.rows.iter().map(hilbert_row).collect());
    Ok(s)
}

pub fn thick(cfg: &RunConfig) -> Result<Section> {
    let mut s = Section::default();
    let spaces = ThickSpaces::new(cfg.max_degree)?;
    s.verdict("restrict_ring_map", restrict_ring_map_check(RING_MAP_PAIRS, cfg.seed)?);
    s.verdict("restrict_equivariant", restrict_equivariance_check(EQUIVARIANCE_FORMS, cfg.seed)?);
    let (pairs, alpha_ok) = alpha_homomorphism_check(ALPHA_DEGREE)?;
    s.verdict("alpha_homomorphism", alpha_ok);
    s.value("alpha_pairs", pairs);
    s.verdict("u1_dim_2", spaces.u1.dim == 2);

    let mut dims = Vec::new();
    let mut counts_ok = true;
    for n in 1..=cfg.max_degree {
        let h = h0m(n)?.dim;
        let (t, j) = (spaces.t[n as usize].dim, spaces.j[n as usize].dim);
        counts_ok &= h == 4 * n as usize && t + 1 == h;
        dims.push(json!({"n": n, "h0m": h, "t": t, "j": j}));
    }
    s.verdict("section_counts", counts_ok);
    s.table("dims", dims);

    let w = nonfg_witness(&spaces, 1, cfg.max_degree)?;
    s.verdict("tj_containment", w.containment);
    s.verdict("left_ideal", w.left_ideal);
    s.verdict("r0_gap_one", w.gaps.iter().all(|g| g.gap() == 1));
    s.table(
        "r0_gaps",
        w.gaps.iter().map(|g| json!({"m": g.m, "dim_j": g.dim_j, "dim_j_r0": g.dim_j_r0, "gap": g.gap()})).collect(),
    );

    let fg = fg_report(&spaces)?;
    s.verdict("fg_claim2", fg.n0.is_some_and(|n0| n0 <= 6));
    s.value("n0", fg.n0);
    s.table(
        "fg_claim2",
        fg.rows
            .iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "dim_t": r.dim_t,
                    "dim_r2": r.dim_r2,
                    "dim_sum": r.dim_sum,
                    "equal": r.equal,
                    "ok": r.ok(),
                })
            })
            .collect(),
    );
    Ok(s)
}

pub fn witness(cfg: &RunConfig) -> Result<Section> {
    let mut s = Section::default();
    let spaces = ThickSpaces::new(cfg.witness_m.max(2))?;
    let w = nonfg_witness(&spaces, cfg.witness_k, cfg.witness_m)?;
    s.verdict("deficiency_every_degree", w.deficiencies.iter().all(|r| r.deficiency >= 1));
    s.verdict("tj_containment", w.containment);
    s.verdict("left_ideal", w.left_ideal);
    s.verdict("r0_gap_one", w.gaps.iter().all(|g| g.gap() == 1));
    s.value("k", w.k);
    s.value("m", w.m);
    s.table(
        "deficiencies",
        w.deficiencies
            .iter()
            .map(|r| json!({"m": r.m, "dim_j": r.dim_j, "dim_generated": r.dim_generated, "deficiency": r.deficiency}))
            .collect(),
    );
    Ok(s)
}

pub fn cartan(_cfg: &RunConfig) -> Result<Section> {
    let mut s = Section::default();
    let mut rows = Vec::new();
    let mut families = Vec::new();
    for n in 2..=2 * CARTAN_M + 1 {
        families.push(AbelianFamily::SnLine { n, i: 1, j: 2 });
        families.push(AbelianFamily::SnLine { n, i: n, j: 1 });
    }
    for m in 1..=CARTAN_M {
        for j in 1..=m {
            families.push(AbelianFamily::H2mLine { m, j });
            families.push(AbelianFamily::KContact { m, j });
        }
    }
    let mut all = true;
    for f in families {
        let ok = verify_abelian_family(f, CARTAN_EXPONENT)?;
        all &= ok;
        rows.push(json!({"family": f.name(), "params": format!("{f:?}"), "abelian": ok}));
    }
    s.verdict("abelian_families", all);
    let mut closed = true;
    let mut dk_rows = Vec::new();
    for m in 1..=CARTAN_M {
        for j in 1..=m {
            let ok = verify_dk_closed_form(m, j, CARTAN_EXPONENT)?;
            closed &= ok;
            dk_rows.push(json!({"m": m, "j": j, "matches": ok}));
        }
    }
    s.verdict("dk_closed_form", closed);
    s.table("families", rows);
    s.table("dk_closed_form", dk_rows);
    Ok(s)
}
