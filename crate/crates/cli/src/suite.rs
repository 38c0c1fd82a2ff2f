//! The reference-value suite run by `theta verify --paper`.

use std::collections::BTreeSet;

use theta_core::abelian::{
    self, at_least_fixers, enumerate_aut, exact_fixers, fixed_set, is_fpf_shift,
    subgroups_order_p2, Rank2PGroup,
};
use theta_core::dihedral::{self, DihedralGroup};
use theta_core::formulas::{self, Check};
use theta_core::modarith::{count_double_units, gcd};
use theta_core::oracle;

use crate::Result;

/// Published images of every element of `D_8` (rows) under `f_{1,0}, f_{1,1},
/// f_{1,2}, f_{1,3}, f_{3,0}, f_{3,1}, f_{3,2}, f_{3,3}` (columns).
pub const D8_IMAGE_TABLE: [(&str, [&str; 8]); 8] = [
    ("1", ["1", "1", "1", "1", "1", "1", "1", "1"]),
    ("a", ["a", "a", "a", "a", "a^3", "a^3", "a^3", "a^3"]),
    (
        "a^2",
        ["a^2", "a^2", "a^2", "a^2", "a^2", "a^2", "a^2", "a^2"],
    ),
    ("a^3", ["a^3", "a^3", "a^3", "a^3", "a", "a", "a", "a"]),
    ("b", ["b", "ab", "a^2b", "a^3b", "b", "ab", "a^2b", "a^3b"]),
    ("ab", ["ab", "a^2b", "a^3b", "b", "a^3b", "b", "ab", "a^2b"]),
    (
        "a^2b",
        ["a^2b", "a^3b", "b", "ab", "a^2b", "a^3b", "b", "ab"],
    ),
    (
        "a^3b",
        ["a^3b", "b", "ab", "a^2b", "ab", "a^2b", "a^3b", "b"],
    ),
];

/// Closed-form vs enumerated spectrum of `Z_p ⊕ Z_{p^2}` at every divisor.
pub fn zp_zp2_spectrum_checks(p: u64) -> Result<Vec<Check>> {
    let report = formulas::verify_spectrum(p)?;
    Ok(report
        .checks
        .into_iter()
        .map(|c| Check {
            name: format!("zp+zp2 spectrum {}", c.name),
            ..c
        })
        .collect())
}

fn fpf_count_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (p, a, b) in [
        (2, 1, 2),
        (2, 1, 3),
        (3, 1, 2),
        (3, 1, 3),
        (2, 2, 3),
        (5, 1, 2),
    ] {
        let g = Rank2PGroup::new(p, a, b)?;
        let s = abelian::theta_spectrum(&g)?;
        out.push(Check::new(
            format!("fixed-point-free count {g}"),
            formulas::fpf_count_general(p, a, b)?,
            s.get(1).unwrap_or(0),
        ));
        out.push(Check::new(
            format!("spectrum mass {g}"),
            formulas::aut_order_general(p, a, b)?,
            s.mass(),
        ));
    }
    Ok(out)
}

fn order_p2_fixer_checks(p: u64) -> Result<Vec<Check>> {
    let g = Rank2PGroup::new(p, 1, 2)?;
    let counts = formulas::at_least_fixer_counts(p)?;
    let subs = subgroups_order_p2(&g)?;
    let mut out = Vec::new();
    let mut exact_total = 0u64;
    for (k, s) in subs.iter().enumerate() {
        let expected = match k as u64 {
            0 => counts.j0,
            k if k == p => counts.jp,
            _ => counts.jk_each,
        };
        out.push(Check::new(
            format!("at-least fixers {g} {}", s.label),
            expected,
            at_least_fixers(&g, &s.elements)?.len() as u64,
        ));
        exact_total += exact_fixers(&g, &s.elements)?.len() as u64;
    }
    out.push(Check::new(
        format!("exact fixers of order-p^2 subgroups {g}"),
        counts.exact_total(p),
        exact_total,
    ));
    Ok(out)
}

fn double_unit_checks() -> Result<Vec<Check>> {
    [(2u64, 1u32), (2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (5, 3)]
        .into_iter()
        .map(|(p, alpha)| {
            let q = p.pow(alpha);
            let scan = (1..q)
                .filter(|&x| gcd(x, q) == 1 && gcd(x - 1, q) == 1)
                .count() as u64;
            Ok(Check::new(
                format!("double units mod {p}^{alpha}"),
                count_double_units(p, alpha)?,
                scan,
            ))
        })
        .collect()
}

fn fpf_shift_checks() -> Result<Vec<Check>> {
    [(3, 1, 2), (2, 1, 3)]
        .into_iter()
        .map(|(p, a, b)| {
            let g = Rank2PGroup::new(p, a, b)?;
            let auts = enumerate_aut(&g);
            let agree = auts
                .iter()
                .filter(|m| is_fpf_shift(m) == (fixed_set(m).len() == 1))
                .count() as u64;
            Ok(Check::new(
                format!("fpf shift criterion {g}"),
                auts.len() as u64,
                agree,
            ))
        })
        .collect()
}

fn dihedral_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for p in [3u64, 5, 7, 11] {
        let g = DihedralGroup::new(p)?;
        let s = dihedral::dihedral_theta_spectrum(&g);
        for d in [1, 2, p, 2 * p] {
            out.push(Check::new(
                format!("dihedral prime spectrum {g} d={d}"),
                formulas::theta_dihedral_formula(p, d)?,
                s.get(d).unwrap_or(0),
            ));
        }
        out.push(Check::new(
            format!("spectrum mass {g}"),
            dihedral::dihedral_aut_order(&g),
            s.mass(),
        ));
    }
    for (n, expected) in [
        (5u64, [(1, 0), (2, 15), (5, 4), (10, 1)]),
        (4, [(1, 0), (2, 2), (4, 5), (8, 1)]),
    ] {
        let g = DihedralGroup::new(n)?;
        let s = dihedral::dihedral_theta_spectrum(&g);
        for (d, count) in expected {
            out.push(Check::new(
                format!("published spectrum {g} d={d}"),
                count,
                s.get(d).unwrap_or(0),
            ));
        }
    }
    Ok(out)
}

/// Number of the 64 cells of [`D8_IMAGE_TABLE`] reproduced by `f_{α,β}`.
pub fn d8_matching_cells() -> Result<u64> {
    let g = DihedralGroup::new(4)?;
    let auts = dihedral::enumerate_dihedral_aut(&g);
    let mut matching = 0;
    for (row, e) in D8_IMAGE_TABLE.iter().zip(g.elements()) {
        assert_eq!(row.0, e.to_string());
        for (f, &cell) in auts.iter().zip(row.1.iter()) {
            if dihedral::dihedral_apply(f, e)?.to_string() == cell {
                matching += 1;
            }
        }
    }
    Ok(matching)
}

fn oracle_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (p, a, b) in [(2, 1, 2), (3, 1, 2), (2, 1, 3)] {
        let g = Rank2PGroup::new(p, a, b)?;
        let ours: BTreeSet<Vec<usize>> = enumerate_aut(&g)
            .iter()
            .map(|m| m.as_permutation())
            .collect();
        let table = oracle::build_direct_sum(&[g.first_modulus(), g.second_modulus()])?;
        let theirs: BTreeSet<Vec<usize>> = oracle::brute_force_automorphisms(&table)?
            .into_iter()
            .map(|f| f.image)
            .collect();
        out.push(Check::with_status(
            format!("oracle agreement {g}"),
            ours.len() as u64,
            theirs.len() as u64,
            ours == theirs,
        ));
    }
    for n in [3u64, 4, 5, 7] {
        let g = DihedralGroup::new(n)?;
        let ours: BTreeSet<Vec<usize>> = dihedral::enumerate_dihedral_aut(&g)
            .iter()
            .map(|f| f.as_permutation())
            .collect();
        let table = oracle::build_dihedral(n as usize)?;
        let theirs: BTreeSet<Vec<usize>> = oracle::brute_force_automorphisms(&table)?
            .into_iter()
            .map(|f| f.image)
            .collect();
        out.push(Check::with_status(
            format!("oracle agreement {g}"),
            ours.len() as u64,
            theirs.len() as u64,
            ours == theirs,
        ));
    }
    Ok(out)
}

/// Every reference check, in a fixed order.
pub fn full_suite() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for p in [2, 3, 5] {
        checks.extend(zp_zp2_spectrum_checks(p)?);
    }
    checks.extend(fpf_count_checks()?);
    for p in [2, 3, 5] {
        checks.extend(order_p2_fixer_checks(p)?);
    }
    checks.extend(double_unit_checks()?);
    checks.extend(fpf_shift_checks()?);
    checks.extend(dihedral_checks()?);
    checks.push(Check::new(
        "D_8 image table cells",
        64,
        d8_matching_cells()?,
    ));
    checks.extend(oracle_checks()?);
    Ok(checks)
}
