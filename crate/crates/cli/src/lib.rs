//! Report builders behind the `theta` binary.
//!
//! Each `cmd_*` function returns a serializable report; [`Render`] turns it
//! into text, JSON, or CSV. Exit codes are 0 on success, 1 when a comparison
//! fails, and 2 for invalid input or an exceeded cap.

use std::fmt::Write as _;

use serde::Serialize;
use theta_core::abelian::{self, Rank2PGroup};
use theta_core::dihedral::{self, DihedralGroup};
use theta_core::formulas::{self, Check};
use theta_core::oracle;
use theta_core::Spectrum;

pub mod suite;

/// Default cap on the order of any group the CLI enumerates.
pub const DEFAULT_MAX_ORDER: u64 = 1024;
/// `--max-order` may not be raised above this.
pub const HARD_MAX_ORDER: u64 = abelian::SPECTRUM_ORDER_CAP;

pub const NO_CLOSED_FORM: &str = "no closed form in source";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] theta_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Enumerate,
    Oracle,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Formula => "formula",
            Method::Enumerate => "enumerate",
            Method::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub d: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub group: String,
    pub method: Method,
    pub aut_order: u64,
    pub spectrum: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coverage: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<Check>>,
}

impl SpectrumReport {
    fn from_spectrum(method: Method, aut_order: u64, s: &Spectrum) -> Self {
        SpectrumReport {
            group: s.group().to_string(),
            method,
            aut_order,
            spectrum: s.iter().map(|(d, count)| Entry { d, count }).collect(),
            coverage: None,
            checks: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().flatten().all(|c| c.pass)
    }

    pub fn count(&self, d: u64) -> Option<u64> {
        self.spectrum.iter().find(|e| e.d == d).map(|e| e.count)
    }

    /// Attaches one check per overlay entry, comparing against this report's counts.
    fn overlay(mut self, label: &str, expected: &[Entry]) -> Self {
        let checks = expected
            .iter()
            .map(|e| {
                Check::new(
                    format!("{label} {} d={}", self.group, e.d),
                    e.count,
                    self.count(e.d).unwrap_or(0),
                )
            })
            .collect();
        self.checks = Some(checks);
        self
    }
}

fn check_cap(order: u64, max_order: u64) -> Result<()> {
    if max_order > HARD_MAX_ORDER {
        return Err(CliError::Input(format!(
            "--max-order {max_order} exceeds the ceiling {HARD_MAX_ORDER}"
        )));
    }
    if order > max_order {
        return Err(CliError::Input(format!(
            "group order {order} exceeds --max-order {max_order}"
        )));
    }
    Ok(())
}

fn abelian_formula_entries(g: &Rank2PGroup) -> Result<Vec<Entry>> {
    let (p, a, b) = (g.p(), g.a(), g.b());
    if (a, b) == (1, 2) {
        formulas::zp_zp2_formula_spectrum(p)?
            .into_iter()
            .map(|r| {
                Ok(Entry {
                    d: r.d,
                    count: r.value,
                })
            })
            .collect()
    } else {
        Ok(vec![Entry {
            d: 1,
            count: formulas::fpf_count_general(p, a, b)?,
        }])
    }
}

/// Spectrum of `Z_{p^a} ⊕ Z_{p^b}` by the chosen method. Enumeration carries a
/// formula overlay for whichever divisors have a closed form.
pub fn cmd_abelian(
    p: u64,
    a: u32,
    b: u32,
    method: Method,
    max_order: u64,
) -> Result<SpectrumReport> {
    let g = Rank2PGroup::new(p, a, b)?;
    check_cap(g.order(), max_order)?;
    let aut_order = abelian::aut_order(&g);
    let formula = abelian_formula_entries(&g)?;
    let partial = (a, b) != (1, 2);
    Ok(match method {
        Method::Formula => SpectrumReport {
            group: g.to_string(),
            method,
            aut_order: formulas::aut_order_general(p, a, b)?,
            spectrum: formula,
            coverage: partial.then(|| format!("partial: {NO_CLOSED_FORM} for d > 1")),
            checks: None,
        },
        Method::Enumerate => {
            let s = abelian::theta_spectrum(&g)?;
            SpectrumReport::from_spectrum(method, aut_order, &s).overlay("formula", &formula)
        }
        Method::Oracle => {
            let table = oracle::build_direct_sum(&[g.first_modulus(), g.second_modulus()])?;
            let s = oracle::oracle_theta_spectrum(&table)?;
            SpectrumReport::from_spectrum(method, s.mass(), &s).overlay("formula", &formula)
        }
    })
}

fn dihedral_formula_entries(g: &DihedralGroup) -> Option<Vec<Entry>> {
    let n = g.n();
    formulas::theta_dihedral_formula(n, 1).ok()?;
    Some(
        [1, 2, n, 2 * n]
            .into_iter()
            .map(|d| Entry {
                d,
                count: formulas::theta_dihedral_formula(n, d).expect("d divides 2n"),
            })
            .collect(),
    )
}

/// Spectrum of `D_{2n}`. With an odd prime `n` the closed form is overlaid.
pub fn cmd_dihedral(n: u64, method: Method, max_order: u64) -> Result<SpectrumReport> {
    let g = DihedralGroup::new(n).map_err(|e| CliError::Input(e.to_string()))?;
    check_cap(g.order(), max_order)?;
    let formula = dihedral_formula_entries(&g);
    let with_overlay = |r: SpectrumReport| match &formula {
        Some(f) => r.overlay("formula", f),
        None => r,
    };
    Ok(match method {
        Method::Formula => SpectrumReport {
            group: g.to_string(),
            method,
            aut_order: dihedral::dihedral_aut_order(&g),
            coverage: formula
                .is_none()
                .then(|| format!("none: {NO_CLOSED_FORM} for composite n")),
            spectrum: formula.clone().unwrap_or_default(),
            checks: None,
        },
        Method::Enumerate => {
            let s = dihedral::dihedral_theta_spectrum(&g);
            with_overlay(SpectrumReport::from_spectrum(
                method,
                dihedral::dihedral_aut_order(&g),
                &s,
            ))
        }
        Method::Oracle => {
            let table = oracle::build_dihedral(n as usize)?;
            let s = oracle::oracle_theta_spectrum(&table)?;
            with_overlay(SpectrumReport::from_spectrum(method, s.mass(), &s))
        }
    })
}

/// A parsed oracle group: `zsum:m1,m2,...` (each `m` or `p^k`) or `dihedral:n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    DirectSum(Vec<u64>),
    Dihedral(u64),
}

impl std::str::FromStr for GroupSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| CliError::Input(format!("cannot parse group spec {s:?}: {why}"));
        let parse_int = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| bad("expected an integer"))
        };
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        match kind.trim() {
            "zsum" => {
                let moduli = rest
                    .split(',')
                    .map(|m| match m.split_once('^') {
                        Some((base, exp)) => {
                            let base = parse_int(base)?;
                            let exp = u32::try_from(parse_int(exp)?)
                                .map_err(|_| bad("exponent too large"))?;
                            base.checked_pow(exp).ok_or_else(|| bad("power overflows"))
                        }
                        None => parse_int(m),
                    })
                    .collect::<Result<Vec<u64>>>()?;
                Ok(GroupSpec::DirectSum(moduli))
            }
            "dihedral" => Ok(GroupSpec::Dihedral(parse_int(rest)?)),
            other => Err(bad(&format!("unknown group kind {other:?}"))),
        }
    }
}

/// Oracle spectrum for any in-scope group, including rank ≥ 3 and equal exponents.
pub fn cmd_oracle(spec: &GroupSpec, max_order: u64) -> Result<SpectrumReport> {
    let table = match spec {
        GroupSpec::DirectSum(moduli) => {
            let order = moduli.iter().try_fold(1u64, |acc, &m| acc.checked_mul(m));
            check_cap(order.unwrap_or(u64::MAX), max_order)?;
            oracle::build_direct_sum(moduli)
        }
        GroupSpec::Dihedral(n) => {
            check_cap(n.saturating_mul(2), max_order)?;
            oracle::build_dihedral(*n as usize)
        }
    }
    .map_err(|e| CliError::Input(e.to_string()))?;
    let s = oracle::oracle_theta_spectrum(&table).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(SpectrumReport::from_spectrum(Method::Oracle, s.mass(), &s))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub scope: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn new(scope: impl Into<String>, checks: Vec<Check>) -> Self {
        VerifyReport {
            scope: scope.into(),
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn exit_code(&self) -> u8 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

pub enum Scope {
    Paper,
    Primes(Vec<u64>),
}

pub fn cmd_verify(scope: &Scope) -> Result<VerifyReport> {
    match scope {
        Scope::Paper => Ok(VerifyReport::new("paper", suite::full_suite()?)),
        Scope::Primes(ps) => {
            let mut checks = Vec::new();
            for &p in ps {
                checks.extend(suite::zp_zp2_spectrum_checks(p)?);
            }
            let label = ps.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            Ok(VerifyReport::new(format!("primes:{label}"), checks))
        }
    }
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w).expect("writing CSV to memory");
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("CSV is UTF-8")
}

fn checks_table(out: &mut String, checks: &[Check]) {
    for c in checks {
        let _ = writeln!(
            out,
            "{}  {}  expected {}  actual {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.expected,
            c.actual
        );
    }
}

pub trait Render {
    fn render(&self, format: Format) -> String;
}

impl Render for SpectrumReport {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => csv_string(|w| {
                w.write_record(["d", "count"])?;
                for e in &self.spectrum {
                    w.write_record([e.d.to_string(), e.count.to_string()])?;
                }
                Ok(())
            }),
            Format::Table => {
                let mut out = String::new();
                let _ = writeln!(out, "group:     {}", self.group);
                let _ = writeln!(out, "method:    {}", self.method);
                let _ = writeln!(out, "|Aut G|:   {}", self.aut_order);
                if let Some(c) = &self.coverage {
                    let _ = writeln!(out, "coverage:  {c}");
                }
                let _ = writeln!(out, "{:>12}  {:>12}", "d", "theta(G,d)");
                for e in &self.spectrum {
                    let _ = writeln!(out, "{:>12}  {:>12}", e.d, e.count);
                }
                if let Some(checks) = &self.checks {
                    checks_table(&mut out, checks);
                }
                out
            }
        }
    }
}

impl Render for VerifyReport {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => csv_string(|w| {
                w.write_record(["name", "expected", "actual", "pass"])?;
                for c in &self.checks {
                    w.write_record([
                        c.name.clone(),
                        c.expected.to_string(),
                        c.actual.to_string(),
                        c.pass.to_string(),
                    ])?;
                }
                Ok(())
            }),
            Format::Table => {
                let mut out = String::new();
                checks_table(&mut out, &self.checks);
                let failed = self.checks.iter().filter(|c| !c.pass).count();
                let _ = writeln!(
                    out,
                    "{} checks, {} passed, {} failed",
                    self.checks.len(),
                    self.checks.len() - failed,
                    failed
                );
                if let Some(c) = self.first_failure() {
                    let _ = writeln!(out, "first failure: {}", c.name);
                }
                out
            }
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
