//! The `verify` cross-check suite.

use killp::gaps::enumerate_z2;
use killp::homology::{
    connes_length_check, hc_closed_form, hc_neg_truncation_probe, hc_oracle, hochschild, hochschild_oracle,
    hp_stabilization_check, kernel_generator_defaults, verify_kernel_generators, verify_ni_equivalence,
};
use killp::{Execution, Prime, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy)]
pub struct VerifyParams {
    pub hc_from: i64,
    pub hc_to: i64,
    pub hh_to: i64,
    /// How many of the smallest `Z2` elements above 1 to use for kernel generators.
    pub kernel_count: usize,
    /// Even generator span `J`.
    pub span: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A disagreement between two routes to the same group.
#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub what: String,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub prime: u64,
    pub checks: Vec<CheckLine>,
    pub mismatches: Vec<Mismatch>,
    pub passed: bool,
}

fn line(name: &str, passed: bool, detail: String) -> CheckLine {
    CheckLine { name: name.into(), passed, detail }
}

pub fn run(p: Prime, params: VerifyParams, exec: Execution) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    let mut mismatches = Vec::new();

    let (mut covered, mut skipped) = (0, 0);
    let start = params.hc_from.max(0) + params.hc_from.max(0) % 2;
    for i in (start..=params.hc_to).step_by(2) {
        let oracle = hc_oracle(p, i)?;
        match hc_closed_form(p, i)?.result() {
            Some(cf) => {
                covered += 1;
                if cf.shape != oracle.shape {
                    mismatches.push(Mismatch {
                        what: format!("HC_{i}"),
                        left: format!("oracle {}", oracle.shape),
                        right: format!("closed_form {}", cf.shape),
                    });
                }
            }
            None => skipped += 1,
        }
    }
    let hc_ok = mismatches.is_empty();
    checks.push(line(
        "HC oracle vs closed form",
        hc_ok,
        format!("even degrees {start}..={}: {covered} compared, {skipped} not covered", params.hc_to),
    ));

    let before = mismatches.len();
    for i in 0..=params.hh_to {
        let (cf, oracle) = (hochschild(p, i)?, hochschild_oracle(p, i)?);
        if cf.shape != oracle.shape {
            mismatches.push(Mismatch {
                what: format!("HH_{i}"),
                left: format!("oracle {}", oracle.shape),
                right: format!("closed_form {}", cf.shape),
            });
        }
    }
    checks.push(line("HH oracle vs closed form", mismatches.len() == before, format!("degrees 0..={}", params.hh_to)));

    let even_top = params.hc_to - params.hc_to.rem_euclid(2);
    let connes = connes_length_check(p, even_top.max(0), exec)?;
    checks.push(line(
        "length recursion",
        connes.passed,
        format!("len HC_i = i + 1 up to {}; failures {:?}", even_top.max(0), connes.failures),
    ));

    let before = mismatches.len();
    let mut ni_count = 0;
    for i in (1..params.hc_to.max(1)).step_by(2) {
        let r = verify_ni_equivalence(p, i)?;
        ni_count += 1;
        if !r.agree {
            mismatches.push(Mismatch {
                what: format!("N_{i} = HC_{}", i + 1),
                left: format!("colimit {}", r.colimit_shape),
                right: format!("oracle {}", r.oracle_shape),
            });
        }
    }
    checks.push(line("colimit presentation", mismatches.len() == before, format!("{ni_count} odd indices")));

    let stab = hp_stabilization_check(p, even_top.max(0) as u64, even_top, exec)?;
    checks.push(line(
        "stabilization towards HP",
        stab.passed,
        format!("{} degrees, heads {:?}", stab.tested_degrees.len(), stab.heads),
    ));

    let targets: Vec<u64> = {
        let mut max = 64;
        loop {
            let z2: Vec<u64> = enumerate_z2(p, max, exec)?.into_iter().filter(|&x| x > 1).collect();
            if z2.len() >= params.kernel_count || max > 1 << 20 {
                break z2.into_iter().take(params.kernel_count).collect();
            }
            max *= 2;
        }
    };
    let mut kernel_ok = true;
    let mut probe_ok = true;
    let mut probe_notes = Vec::new();
    for &i in &targets {
        let ok = verify_kernel_generators(p, i as i64, kernel_generator_defaults(p, i, params.span))?;
        if !ok {
            kernel_ok = false;
            mismatches.push(Mismatch {
                what: format!("kernel generators at {i}"),
                left: format!("psi_{i}..psi_{}", i + params.span),
                right: format!("A_{i} e_-1, e_{i}..e_{}", i + params.span),
            });
        }
        let m = i as i64 + 1;
        let probe = hc_neg_truncation_probe(p, m, (m + 4) as usize)?;
        probe_ok &= probe.passed;
        probe_notes.push(format!("HC^-_{m}: stable {:?}", probe.stabilized));
    }
    checks.push(line("kernel generators", kernel_ok, format!("indices {targets:?}, J = {}", params.span)));
    checks.push(line("negative cyclic truncations", probe_ok, probe_notes.join(", ")));

    let passed = mismatches.is_empty() && checks.iter().all(|c| c.passed);
    Ok(VerifyReport { prime: p.get(), checks, mismatches, passed })
}

pub fn render_table(r: &VerifyReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        out.push_str(&format!("{}  {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
    }
    if !r.mismatches.is_empty() {
        out.push_str("mismatches:\n");
        for m in &r.mismatches {
            out.push_str(&format!("  {}\n  - {}\n  + {}\n", m.what, m.left, m.right));
        }
    }
    out
}

pub fn render_csv(r: &VerifyReport) -> String {
    let mut out = String::from("check,passed,detail\n");
    for c in &r.checks {
        out.push_str(&format!("{},{},\"{}\"\n", c.name, c.passed, c.detail.replace('"', "\"\"")));
    }
    out
}
