//! Verification suites comparing the closed forms, the WDVV equations and
//! the recursive solvers.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::group::{group_table, GroupName};
use crate::potentials::{
    build_explicit, build_s4_section, build_theorem1, extract_table, specializations, trig_identities,
};
use crate::rational::int;
use crate::series::exponents_of_degree;
use crate::table::HurwitzTable;
use crate::wdvv::{
    auxiliary_residuals, corollary_symmetry_check, evaluate_identity, generate_identity, recover_cd, s4_pde_residual,
    solve_a4, solve_s4, solve_z2z2, SeedData, TableSource,
};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Theorem1,
    Wdvv,
    Specializations,
    Trig,
    Recursion,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Theorem1, Suite::Wdvv, Suite::Specializations, Suite::Trig, Suite::Recursion];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Wdvv => "wdvv",
            Suite::Specializations => "specializations",
            Suite::Trig => "trig",
            Suite::Recursion => "recursion",
        }
    }

    pub fn run(self, order: u32) -> Result<Vec<CheckResult>> {
        match self {
            Suite::Theorem1 => check_theorem1(order),
            Suite::Wdvv => check_wdvv(order),
            Suite::Specializations => check_specializations(order),
            Suite::Trig => check_trig(order),
            Suite::Recursion => check_recursion(order),
        }
    }
}

pub fn check_theorem1(order: u32) -> Result<Vec<CheckResult>> {
    [GroupName::Z2xZ2, GroupName::A4]
        .into_iter()
        .map(|g| {
            let root = build_theorem1(g, order)?;
            let explicit = build_explicit(g, order)?;
            let diff = root.differences(&explicit, order);
            Ok(CheckResult::new(
                format!("{g}: root-system sum equals explicit formula"),
                diff.is_empty(),
                format!("{} differing coefficients", diff.len()),
            ))
        })
        .collect()
}

/// Base exponents and quadruple of a generated identity.
pub type IdentityKey = (Vec<u32>, [usize; 4]);

/// Every identity with entries of length at most `table.order`, over all
/// quadruples of nontrivial classes.
pub fn all_identities_vanish(table: &HurwitzTable) -> Result<(usize, Vec<IdentityKey>)> {
    let g = group_table(table.group);
    let k = g.num_classes() - 1;
    let classes: Vec<usize> = g.nontrivial_classes().collect();
    let mut jobs = Vec::new();
    for len in 0..=table.order.saturating_sub(3) {
        for base in exponents_of_degree(k, len) {
            for &a in &classes {
                for &b in &classes {
                    for &c in &classes {
                        for &d in &classes {
                            jobs.push((base.clone(), [a, b, c, d]));
                        }
                    }
                }
            }
        }
    }
    let source = TableSource::new(table);
    let failures: Vec<Result<Option<IdentityKey>>> = jobs
        .par_iter()
        .map(|(base, q)| {
            let r = evaluate_identity(&generate_identity(table.group, base, *q), &source)?;
            Ok((!r.is_zero()).then(|| (base.clone(), *q)))
        })
        .collect();
    let failures: Vec<_> = failures.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    Ok((jobs.len(), failures))
}

pub fn check_wdvv(order: u32) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for g in [GroupName::Z2xZ2, GroupName::A4] {
        let f = build_explicit(g, order)?;
        let table = extract_table(&f, g)?;
        let (count, failures) = all_identities_vanish(&table)?;
        out.push(CheckResult::new(
            format!("{g}: WDVV identities on the closed form"),
            failures.is_empty(),
            format!("{count} identities, {} nonzero", failures.len()),
        ));
        let classes: Vec<usize> = group_table(g).nontrivial_classes().collect();
        let report = corollary_symmetry_check(&f.to_rational_series()?, g, &classes)?;
        out.push(CheckResult::new(
            format!("{g}: four-index symmetry of third derivatives"),
            report.holds,
            format!("through degree {}, {} failing index sets", report.checked_through, report.failures.len()),
        ));
    }
    let t = build_s4_section(order)?.to_rational_series()?;
    let report = corollary_symmetry_check(&t, GroupName::S4, &[2, 4])?;
    out.push(CheckResult::new(
        "s4: four-index symmetry on the (sigma, zeta) section",
        report.holds,
        format!("through degree {}", report.checked_through),
    ));
    let residual = s4_pde_residual(&t, int(-1))?;
    out.push(CheckResult::new(
        "s4: 3T_uuv^2 + 8T_uvv^2 - 3T_uuu T_uvv - 8T_uuv T_vvv = 1",
        residual.terms().is_empty(),
        format!("{} nonzero residual coefficients", residual.terms().len()),
    ));
    Ok(out)
}

pub fn check_specializations(order: u32) -> Result<Vec<CheckResult>> {
    specializations(order)?
        .into_iter()
        .map(|s| {
            let diff = s.lhs.differences(&s.rhs, order);
            let detail = match diff.first() {
                None => format!("equal through order {order}"),
                Some(e) => format!(
                    "{} differing coefficients, first integral at x^{}: {} vs {}",
                    diff.len(),
                    e[0],
                    s.lhs.integral_coefficient(e)?,
                    s.rhs.integral_coefficient(e)?
                ),
            };
            Ok(CheckResult::new(s.name, diff.is_empty(), detail))
        })
        .collect()
}

pub fn check_trig(order: u32) -> Result<Vec<CheckResult>> {
    let [triple, double] = trig_identities(order)?;
    Ok(vec![
        CheckResult::new(
            "h(3u)/9 = h(u) + h(u + 2pi/3) + h(u - 2pi/3)",
            triple.0 == triple.1,
            format!("through order {order}"),
        ),
        CheckResult::new("h(2u)/4 = h(u + pi/2) + h(u - pi/2)", double.0 == double.1, format!("through order {order}")),
    ])
}

fn route(name: &str, solved: &HurwitzTable, closed: &HurwitzTable) -> CheckResult {
    let bad = solved.mismatches(closed);
    CheckResult::new(name, bad.is_empty(), format!("{} entries, {} mismatches", closed.len(), bad.len()))
}

pub fn check_recursion(order: u32) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let seed = SeedData::base(order)?;
    let z = solve_z2z2(&seed, order)?;
    let closed = extract_table(&build_explicit(GroupName::Z2xZ2, order)?, GroupName::Z2xZ2)?;
    out.push(route("z2z2: recursion equals closed form", &z.table, &closed));

    let seed = seed.with_z2z2_table(&z.table)?;
    let mut s4 = solve_s4(&seed, order)?;
    let section = extract_table(&build_s4_section(order)?, GroupName::S4)?;
    let bad: Vec<_> = section.entries.iter().filter(|(k, v)| s4.table.get(k) != Some(*v)).collect();
    out.push(CheckResult::new(
        "s4: recursion equals closed form on the (sigma, zeta) section",
        bad.is_empty(),
        format!("{} entries, {} mismatches", section.len(), bad.len()),
    ));
    let cd = recover_cd(&mut s4)?;
    out.push(CheckResult::new(
        "s4: C and D recovered from their squares",
        cd.squares_consistent,
        format!("C(0)^2 = {}, D(0)^2 = {}", cd.c0_squared, cd.d0_squared),
    ));
    let aux = auxiliary_residuals(&s4.table)?;
    let nonzero = aux.iter().filter(|r| !r.2.is_zero()).count();
    out.push(CheckResult::new(
        "s4: transposition identities on the recovered families",
        nonzero == 0,
        format!("{} identities, {nonzero} nonzero", aux.len()),
    ));

    let seed = seed.with_s4_table(&s4.table)?;
    let a4 = solve_a4(&seed, order)?;
    let closed = extract_table(&build_explicit(GroupName::A4, order)?, GroupName::A4)?;
    out.push(route("a4: recursion equals closed form", &a4.table, &closed));
    Ok(out)
}
