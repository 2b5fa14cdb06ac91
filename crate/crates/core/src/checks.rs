//! The acceptance checks, each returning a pass/fail verdict with details.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::imroots::{
    check_series_relation, classical_lambda, family_e, family_edot, family_edot_angle, family_edot_bracket,
    family_edot_bracket_psi, family_edot_from_e, family_ehat, generator, specialize_family, ClassicalPoly, ImPoly,
};
use crate::pairing::{
    check_delta_nonvanishing, closed_form_vanishes_at, delta_closed, delta_det, delta_sign, first_admissible,
    m_matrix_and_dual, pair_monomials,
};
use crate::pbw::{basis_toral, block_transition_roundtrip, toral_regularity_report, ExpEntry, ExpVec, Normalization, ToralIndexSet};
use crate::qlaurent::{LaurentPoly, RatFunc};
use crate::rootsys::{
    build_iota, enumerate_ordered_roots, validate_iota, CartanData, IotaWord, RootError, RootKind,
};
use crate::series::{oracle, phi_transform, psi_transform, SeriesVec};

/// The types checked: `A_1, …, A_4` and every other type at its minimal rank.
pub const TYPES: [&str; 12] = ["A1", "A2", "A3", "A4", "B3", "C2", "D4", "E6", "E7", "E8", "F4", "G2"];

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub summary: String,
    pub diagnostics: Vec<String>,
}

impl CheckResult {
    fn new(id: u32, name: &'static str, diagnostics: Vec<String>, summary: String) -> Self {
        CheckResult {
            id,
            name,
            passed: diagnostics.is_empty(),
            summary,
            diagnostics,
        }
    }
}

/// Parameters shared by the checks.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    /// Largest `d_i` for the imaginary families.
    pub d_max: u32,
    /// Largest `k`.
    pub k_max: u32,
    /// Truncation order of the families.
    pub order: usize,
    /// Largest δ-level for root enumeration and word validation.
    pub level: i64,
    /// How many admissible orders to sample per type.
    pub ell_sample: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            d_max: 3,
            k_max: 3,
            order: 6,
            level: 6,
            ell_sample: 3,
            seed: 0x5eed,
        }
    }
}

fn data(t: &str) -> CartanData {
    CartanData::new(t.parse().expect("known type")).expect("valid type")
}

pub fn delta_table(_: &CheckConfig) -> CheckResult {
    let mut diags = Vec::new();
    let mut signs = Vec::new();
    for t in TYPES {
        let c = data(t);
        let mut type_sign = None;
        for r in 1..=6 {
            match (delta_sign(&c, r), type_sign) {
                (None, _) => {
                    diags.push(format!(
                        "{t} r={r}: table gives {} but the determinant is {}",
                        delta_closed(&c, r),
                        delta_det(&c, r)
                    ));
                    break;
                }
                (Some(s), None) => type_sign = Some(s),
                (Some(s), Some(prev)) if s != prev => {
                    diags.push(format!("{t} r={r}: sign changes from {prev} to {s}"));
                    break;
                }
                _ => {}
            }
        }
        if let Some(s) = type_sign {
            signs.push(format!("{t}:{s:+}"));
        }
    }
    CheckResult::new(1, "delta table matches determinant", diags, format!("signs {}", signs.join(" ")))
}

pub fn root_of_unity(cfg: &CheckConfig) -> CheckResult {
    let mut diags = Vec::new();
    let mut checked = 0;
    for t in TYPES {
        let c = data(t);
        for ell in first_admissible(&c, cfg.ell_sample) {
            let rep = check_delta_nonvanishing(&c, ell, 2 * ell as u32);
            checked += 1;
            if let Some(r) = rep.counterexample_r {
                diags.push(format!("{t} ell={ell}: Delta_{r} vanishes at an admissible order"));
            }
        }
    }
    for t in ["A2", "G2"] {
        let c = data(t);
        let rep = check_delta_nonvanishing(&c, 3, 6);
        if rep.counterexample_r.is_none() {
            let closed = closed_form_vanishes_at(&c, 3, 6)
                .map_or("the closed form does not vanish either".to_string(), |r| {
                    format!("the closed form would vanish at r={r}")
                });
            diags.push(format!(
                "{t} ell=3 negative control: Delta_r(eps) != 0 for all r <= 6 (determinant {}); {closed}",
                delta_det(&c, 1)
            ));
        }
    }
    CheckResult::new(
        2,
        "delta nonvanishing at admissible roots of unity",
        diags,
        format!("{checked} (type, ell) pairs checked, 2 negative controls"),
    )
}

fn random_ratfunc(rng: &mut ChaCha8Rng) -> RatFunc {
    let dens = [
        LaurentPoly::one(),
        LaurentPoly::from_int_coeffs(0, &[1, 1]),
        LaurentPoly::from_int_coeffs(-1, &[1, 0, 1]),
        LaurentPoly::from_int_coeffs(0, &[2, 0, -1]),
    ];
    let low = rng.gen_range(-2..=1);
    let coeffs: Vec<i64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(-3..=3)).collect();
    let num = LaurentPoly::from_int_coeffs(low, &coeffs);
    RatFunc::new(&num, &dens[rng.gen_range(0..dens.len())]).expect("nonzero denominator")
}

pub fn bell_roundtrip(cfg: &CheckConfig) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut diags = Vec::new();
    let t = 12;
    for trial in 0..100 {
        let s = SeriesVec::with_unit_constant((0..t).map(|_| random_ratfunc(&mut rng)).collect());
        let ps = psi_transform(&s).expect("unit constant");
        if phi_transform(&ps).expect("unit constant") != s {
            diags.push(format!("trial {trial}: phi(psi(x)) != x"));
        }
        let ph = phi_transform(&s).expect("unit constant");
        if psi_transform(&ph).expect("unit constant") != s {
            diags.push(format!("trial {trial}: psi(phi(y)) != y"));
        }
        if trial < 10 && oracle::exp_composition(&s) != ps {
            diags.push(format!("trial {trial}: psi disagrees with the exp oracle"));
        }
    }
    CheckResult::new(3, "bell transform round trip", diags, format!("100 sequences over Q(q), T = {t}"))
}

/// `E` via the truncated logarithm instead of the recursion.
fn family_e_by_log(d: u32, t: usize) -> Vec<ImPoly> {
    let c = RatFunc::from_laurent(&(LaurentPoly::q_pow(d as i64) - LaurentPoly::q_pow(-(d as i64))));
    let y = SeriesVec::with_unit_constant((1..=t as u32).map(|s| generator(s).scale_by(&-c.clone())).collect());
    let inv = c.inv().expect("nonzero");
    let mut out = oracle::log_composition(&y).into_coeffs();
    for e in out.iter_mut().skip(1) {
        *e = e.scale_by(&inv);
    }
    out
}

pub fn double_definitions(cfg: &CheckConfig) -> CheckResult {
    let mut diags = Vec::new();
    let t = cfg.order;
    for d in 1..=cfg.d_max {
        if family_edot(d, t) != family_edot_from_e(d, t) {
            diags.push(format!("d={d}: Edot recursions disagree"));
        }
        if family_e(d, t) != family_e_by_log(d, t) {
            diags.push(format!("d={d}: E recursion disagrees with the log oracle"));
        }
        for k in 1..=cfg.k_max {
            if family_edot_bracket(d, k, t) != family_edot_bracket_psi(d, k, t) {
                diags.push(format!("d={d} k={k}: Edot^[k] recursion disagrees with the psi route"));
            }
        }
    }
    CheckResult::new(
        4,
        "double definitions agree",
        diags,
        format!("d <= {}, k <= {}, T = {t}", cfg.d_max, cfg.k_max),
    )
}

pub fn specialization(cfg: &CheckConfig) -> CheckResult {
    let mut diags = Vec::new();
    let t = cfg.order;
    let minus: Vec<ClassicalPoly> = (0..=t as u32)
        .map(|r| if r == 0 { ClassicalPoly::one() } else { -&ClassicalPoly::var(r) })
        .collect();
    for d in 1..=cfg.d_max {
        let check = |name: &str, fam: Vec<ImPoly>, expect: &[ClassicalPoly], diags: &mut Vec<String>| match specialize_family(&fam) {
            Ok(s) if s == expect => {}
            Ok(_) => diags.push(format!("d={d}: {name} specializes to the wrong value")),
            Err(e) => diags.push(format!("d={d}: {name} has a pole at q = 1: {e}")),
        };
        check("E", family_e(d, t), &minus, &mut diags);
        check("Ehat", family_ehat(d, t), &minus, &mut diags);
        for k in 1..=cfg.k_max {
            let lam = classical_lambda(k, t);
            check(&format!("Edot^[{k}]"), family_edot_bracket(d, k, t), &lam, &mut diags);
            check(&format!("Edot^<{k}>"), family_edot_angle(d, k, t), &lam, &mut diags);
        }
    }
    CheckResult::new(5, "q = 1 specialization square", diags, format!("d <= {}, k <= {}, T = {t}", cfg.d_max, cfg.k_max))
}

pub fn orthonormality(cfg: &CheckConfig) -> CheckResult {
    let mut diags = Vec::new();
    for t in TYPES {
        let c = data(t);
        let ells = first_admissible(&c, cfg.ell_sample);
        for r in 1..=4 {
            match m_matrix_and_dual(&c, r, &ells) {
                Err(e) => diags.push(format!("{t} r={r}: {e}")),
                Ok(rep) => {
                    if !rep.irregular_orders.is_empty() {
                        diags.push(format!("{t} r={r}: mu has poles at ell in {:?}", rep.irregular_orders));
                    }
                    if rep.det_sign.is_none() {
                        diags.push(format!("{t} r={r}: det M_r is not +-Delta_r"));
                    }
                    if !rep.denominators_divide_delta {
                        diags.push(format!("{t} r={r}: a denominator of mu has a factor not in Delta_r"));
                    }
                }
            }
        }
    }
    CheckResult::new(6, "dual basis orthonormality", diags, "all types, r <= 4".into())
}

pub fn monomial_pairing(cfg: &CheckConfig) -> CheckResult {
    let mut diags = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 7);
    let one = |_: i64, _: usize| RatFunc::one();
    for t in ["A1", "A2", "C2", "G2"] {
        let c = data(t);
        let iota = build_iota(&c, 2).expect("shipped word");
        let order = enumerate_ordered_roots(&c, &iota, 2);
        let roots: Vec<_> = order.roots().cloned().collect();
        for trial in 0..20 {
            let pick = |rng: &mut ChaCha8Rng, side_f: bool| {
                let mut entries = Vec::new();
                for root in &roots {
                    if rng.gen_bool(0.3) {
                        let normalization = if side_f {
                            match root.kind {
                                RootKind::Real => Normalization::Rescaled,
                                RootKind::Imaginary => Normalization::Bare,
                            }
                        } else {
                            Normalization::divided_for(root)
                        };
                        entries.push(ExpEntry {
                            root: root.clone(),
                            exp: rng.gen_range(1..=3),
                            normalization,
                        });
                    }
                }
                ExpVec::ordered(&order, entries).expect("enumerated roots")
            };
            let n = pick(&mut rng, false);
            let m = pick(&mut rng, false);
            let p_nm = pair_monomials(&c, &n, &m, &one);
            let p_mn = pair_monomials(&c, &m, &n, &one);
            if p_nm != p_mn {
                diags.push(format!("{t} trial {trial}: pairing not symmetric"));
            }
            let same = n.iter().map(|e| (&e.root, e.exp)).eq(m.iter().map(|e| (&e.root, e.exp)));
            if !same && !p_nm.is_zero() {
                diags.push(format!("{t} trial {trial}: off-diagonal pairing is {p_nm}"));
            }
            // E side divided, F side rescaled: expect ±q^{Σ d_α C(n_α, 2)}
            let f: Vec<ExpEntry> = n
                .iter()
                .map(|e| ExpEntry {
                    normalization: match e.root.kind {
                        RootKind::Real => Normalization::Rescaled,
                        RootKind::Imaginary => Normalization::Bare,
                    },
                    ..e.clone()
                })
                .collect();
            let f = ExpVec::ordered(&order, f).expect("same roots");
            let v = pair_monomials(&c, &n, &f, &one);
            let expect_exp: i64 = n
                .iter()
                .filter(|e| e.root.kind == RootKind::Real)
                .map(|e| c.d_alpha(&e.root.coords) * i64::from(e.exp) * (i64::from(e.exp) - 1) / 2)
                .sum();
            match v.as_monomial() {
                Some((coef, e)) if e == expect_exp && (coef == BigRational::from_integer(BigInt::from(1)) || coef == BigRational::from_integer(BigInt::from(-1))) => {}
                _ => diags.push(format!("{t} trial {trial}: normalized diagonal pairing is {v}, expected ±q^{expect_exp}")),
            }
        }
    }
    CheckResult::new(7, "monomial pairing", diags, "A1, A2, C2, G2; 20 random monomials each".into())
}

pub fn series_relation(cfg: &CheckConfig) -> CheckResult {
    let mut diags = Vec::new();
    for d in 1..=cfg.d_max {
        for k in 1..=cfg.k_max {
            let rep = check_series_relation(d, k, cfg.order);
            if let Some((r, _, _)) = rep.first_failure {
                diags.push(format!("d={d} k={k}: fails at zeta^{r}"));
            }
        }
    }
    CheckResult::new(8, "generating-series relation", diags, format!("d <= {}, k <= {}, T = {}", cfg.d_max, cfg.k_max, cfg.order))
}

pub fn iota_words(cfg: &CheckConfig) -> CheckResult {
    let mut diags = Vec::new();
    for t in ["A1", "A2", "C2", "G2"] {
        let c = data(t);
        match build_iota(&c, cfg.level) {
            Ok(w) => {
                let mut bad: IotaWord = w.clone();
                bad.period_pos[1] = bad.period_pos[0];
                match validate_iota(&c, &bad, cfg.level) {
                    Err(RootError::IotaValidation { k: 2, .. }) => {}
                    other => diags.push(format!("{t}: corrupted word gave {other:?}")),
                }
            }
            Err(e) => diags.push(format!("{t}: {e}")),
        }
    }
    CheckResult::new(9, "iota word validation", diags, format!("A1, A2, C2, G2 up to level {}", cfg.level))
}

pub fn toral_regularity(cfg: &CheckConfig) -> CheckResult {
    let mut diags = Vec::new();
    for t in TYPES {
        let c = data(t);
        let ells = first_admissible(&c, cfg.ell_sample);
        let mut seen = Vec::new();
        for (i, d) in ToralIndexSet::default().indices(&c) {
            if seen.contains(&d) {
                continue;
            }
            seen.push(d);
            let odd: Vec<u64> = ells.iter().copied().filter(|&l| l > 1).collect();
            for sample in [&ells, &odd] {
                let rep = toral_regularity_report(i, 6, d, sample);
                if let Some((tt, deg, ell)) = rep.first_pole {
                    let coeff = basis_toral(i, tt, d).terms[&deg].clone();
                    diags.push(format!(
                        "{t} i={i} (d={d}): coefficient of K^{deg} in the t={tt} element, {coeff}, has a pole at ell={ell}"
                    ));
                }
            }
        }
    }
    CheckResult::new(10, "toral basis coefficient regularity", diags, "t <= 6, index set I".into())
}

pub fn block_roundtrip(cfg: &CheckConfig) -> CheckResult {
    let mut diags = Vec::new();
    let mut blocks = 0;
    for d in 1..=cfg.d_max {
        for k in 1..=cfg.k_max {
            match block_transition_roundtrip(d, k, cfg.order as u32) {
                Err(e) => diags.push(format!("d={d} k={k}: {e}")),
                Ok(rep) => {
                    for b in &rep.blocks {
                        blocks += 1;
                        if !b.inverse_ok {
                            diags.push(format!("d={d} k={k} m={}: matrices are not inverse", b.m));
                        }
                        if !b.classical_ok {
                            diags.push(format!("d={d} k={k} m={}: q = 1 value differs from the classical transition", b.m));
                        }
                    }
                }
            }
        }
    }
    CheckResult::new(11, "block transition round trip", diags, format!("{blocks} blocks up to delta-degree {}", cfg.order))
}

type Check = fn(&CheckConfig) -> CheckResult;

pub const ALL: [Check; 11] = [
    delta_table,
    root_of_unity,
    bell_roundtrip,
    double_definitions,
    specialization,
    orthonormality,
    monomial_pairing,
    series_relation,
    iota_words,
    toral_regularity,
    block_roundtrip,
];

/// Runs every check on its own thread; results come back in order.
pub fn run_all(cfg: &CheckConfig) -> Vec<CheckResult> {
    std::thread::scope(|s| {
        let handles: Vec<_> = ALL.iter().map(|f| s.spawn(move || f(cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
    })
}
