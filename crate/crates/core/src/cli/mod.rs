//! Command dispatch and report documents for the `mubasis` binary.

mod parse;

use std::sync::mpsc;
use std::time::Duration;

use serde::Serialize;

use crate::arith::{homogenize, Poly, Scalar};
use crate::bounds::{evaluate_bounds, check_resolution_bounds, BoundsReport, Verdict, VerdictKind};
use crate::grobner::{free_resolution, resolution_invariants, FreeResolution};
use crate::mubasis::{compute_mu_basis, validate, verify_mu_basis, MuError, PipelineOptions};

pub use parse::{format_tuple, parse_basis, parse_parametrization, parse_poly, parse_tuple, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Compute,
    Resolve,
    Bounds,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Compute => "compute",
            Command::Resolve => "resolve",
            Command::Bounds => "bounds",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug)]
pub struct InputSpec {
    pub text: String,
    pub basis: Option<String>,
    pub seed: u64,
    pub max_degree: u32,
    pub timeout_secs: u64,
    pub timings: bool,
}

impl InputSpec {
    pub fn new(text: &str) -> Self {
        InputSpec { text: text.to_string(), basis: None, seed: 0, max_degree: 20, timeout_secs: 300, timings: false }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ErrorDoc {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VerdictDoc {
    pub name: String,
    pub bound: String,
    pub observed: String,
    pub pass: bool,
    pub proved: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BoundsDoc {
    pub d: u32,
    pub m: u32,
    pub case: Option<String>,
    pub reg_bound: i64,
    pub beta2_bound: String,
    pub beta2_equal_degree_bound: String,
    pub beta1_bound: Option<String>,
    pub height3_beta1_bound: u32,
    pub height3_beta2_bound: u32,
    pub lazard: u32,
    pub qs_bound: Option<String>,
    pub extraction_bound: Option<String>,
    pub case_values: Vec<(String, String)>,
    pub verdicts: Vec<VerdictDoc>,
    pub all_pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ResolutionDoc {
    pub homogenized: Vec<String>,
    pub ranks: [usize; 3],
    pub first_shifts: Vec<i64>,
    pub q: Vec<i64>,
    pub p: Vec<i64>,
    pub a: usize,
    pub gamma1: Option<u32>,
    pub gamma2: Option<u32>,
    pub d1: Vec<Vec<String>>,
    pub d2: Vec<Vec<String>>,
    pub minimal_q: Vec<i64>,
    pub minimal_p: Vec<i64>,
    pub regularity: i64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CompletionDoc {
    pub deg_m: u32,
    pub det: String,
    pub bound: String,
    pub within_bound: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Default)]
pub struct OutputDocument {
    pub command: String,
    pub input: Option<Vec<String>>,
    pub seed: u64,
    pub status: String,
    pub exit_code: i32,
    pub error: Option<ErrorDoc>,
    pub warnings: Vec<String>,
    pub d: Option<u32>,
    pub branch: Option<String>,
    pub basis: Option<Vec<Vec<String>>>,
    pub alpha: Option<String>,
    pub degrees: Option<Vec<u32>>,
    pub degree_sum: Option<u32>,
    pub mu: Option<Vec<i64>>,
    pub deg_d1: Option<u32>,
    pub deg_d2: Option<u32>,
    pub resolution: Option<ResolutionDoc>,
    pub completion: Option<CompletionDoc>,
    pub bounds: Option<BoundsDoc>,
    /// Wall-clock seconds per stage; only filled on request so that
    /// documents are reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<(String, f64)>>,
}

fn scalar_string(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn strings(v: &[Poly]) -> Vec<String> {
    v.iter().map(|p| p.to_string()).collect()
}

fn verdict_doc(v: &Verdict) -> VerdictDoc {
    VerdictDoc {
        name: v.name.clone(),
        bound: v.bound.to_string(),
        observed: v.observed.to_string(),
        pass: v.pass(),
        proved: v.kind == VerdictKind::Proved,
    }
}

pub fn bounds_doc(r: &BoundsReport) -> BoundsDoc {
    BoundsDoc {
        d: r.d,
        m: r.m,
        case: r.case.map(|c| c.label().to_string()),
        reg_bound: r.reg_bound,
        beta2_bound: r.beta2_bound.to_string(),
        beta2_equal_degree_bound: r.beta2_equal_degree_bound.to_string(),
        beta1_bound: r.beta1_bound.as_ref().map(|x| x.to_string()),
        height3_beta1_bound: r.height3_beta1_bound,
        height3_beta2_bound: r.height3_beta2_bound,
        lazard: r.lazard,
        qs_bound: r.qs_bound.as_ref().map(|x| x.to_string()),
        extraction_bound: r.extraction_bound.as_ref().map(|x| x.to_string()),
        case_values: crate::bounds::BasisCase::ALL
            .iter()
            .map(|c| (c.label().to_string(), r.case_value(*c).to_string()))
            .collect(),
        verdicts: r.verdicts.iter().map(verdict_doc).collect(),
        all_pass: r.all_pass(),
    }
}

fn resolution_doc(b: &[Poly], fixed: &FreeResolution, minimal: &FreeResolution) -> ResolutionDoc {
    let matrix = |m: &crate::arith::PolyMatrix| -> Vec<Vec<String>> { (0..m.rows()).map(|i| strings(&m.row(i))).collect() };
    let inv = resolution_invariants(fixed);
    let min_inv = resolution_invariants(minimal);
    let (r0, r1, r2) = fixed.ranks();
    ResolutionDoc {
        homogenized: strings(b),
        ranks: [r0, r1, r2],
        first_shifts: fixed.first_shifts.clone(),
        q: fixed.q.clone(),
        p: fixed.p.clone(),
        a: inv.a,
        gamma1: inv.gamma1,
        gamma2: inv.gamma2,
        d1: matrix(&fixed.d1),
        d2: matrix(&fixed.d2),
        minimal_q: minimal.q.clone(),
        minimal_p: minimal.p.clone(),
        regularity: min_inv.betti.regularity,
    }
}

fn error_kind(e: &MuError) -> (&'static str, i32) {
    match e {
        MuError::Arity(_) | MuError::WrongRing | MuError::AllZero | MuError::CommonFactor(_) => ("invalid_input", EXIT_INVALID),
        MuError::Verification(_) => ("verification_failure", EXIT_VERIFICATION),
        _ => ("internal_failure", EXIT_VERIFICATION),
    }
}

fn fail(doc: &mut OutputDocument, kind: &str, message: String, code: i32) {
    doc.status = "error".into();
    doc.exit_code = code;
    doc.error = Some(ErrorDoc { kind: kind.into(), message });
}

fn execute(cmd: Command, spec: &InputSpec, doc: &mut OutputDocument) {
    let a = match parse_parametrization(&spec.text) {
        Ok(a) => a,
        Err(e) => return fail(doc, "invalid_input", e.to_string(), EXIT_INVALID),
    };
    doc.input = Some(strings(&a));
    let p = match validate(&a) {
        Ok(p) => p,
        Err(e) => {
            let (kind, code) = error_kind(&e);
            return fail(doc, kind, e.to_string(), code);
        }
    };
    doc.warnings = p.warnings.clone();
    doc.d = Some(p.d);
    if p.d > spec.max_degree {
        return fail(doc, "resource_limit", format!("degree {} exceeds the limit {}", p.d, spec.max_degree), EXIT_RESOURCE);
    }
    match cmd {
        Command::Compute => match compute_mu_basis(&p, PipelineOptions { seed: spec.seed, inter_reduce: true }) {
            Ok((mb, rep)) => {
                doc.branch = Some(rep.branch.name().into());
                doc.basis = Some(mb.vectors().iter().map(|v| strings(v)).collect());
                doc.alpha = Some(scalar_string(&mb.alpha));
                doc.degrees = Some(mb.degrees.to_vec());
                doc.degree_sum = Some(mb.degree_sum);
                doc.mu = rep.mu.clone();
                doc.deg_d1 = rep.deg_d1;
                doc.deg_d2 = rep.deg_d2;
                let b: Vec<Poly> = rep.resolution.generators.clone();
                let nonzero: Vec<Poly> = b.iter().filter(|x| !x.is_zero()).cloned().collect();
                match free_resolution(&nonzero, false) {
                    Ok(min) => doc.resolution = Some(resolution_doc(&b, &rep.resolution, &min)),
                    Err(e) => return fail(doc, "internal_failure", e.to_string(), EXIT_VERIFICATION),
                }
                doc.completion = rep.completion.as_ref().map(|c| CompletionDoc {
                    deg_m: c.deg_m,
                    det: scalar_string(&c.det),
                    bound: c.bound.clone(),
                    within_bound: c.within_bound,
                });
                doc.bounds = Some(bounds_doc(&rep.bounds));
                if spec.timings {
                    doc.timings = Some(rep.timings.clone());
                }
                if !rep.bounds.all_pass() {
                    let names: Vec<String> = rep.bounds.failures().iter().map(|v| v.name.clone()).collect();
                    fail(doc, "bound_violation", format!("failed: {}", names.join(", ")), EXIT_VERIFICATION);
                }
            }
            Err(e) => {
                let (kind, code) = error_kind(&e);
                fail(doc, kind, e.to_string(), code);
            }
        },
        Command::Resolve | Command::Bounds => {
            let b: Vec<Poly> = match p.a.iter().map(|x| homogenize(x, p.d)).collect::<Result<_, _>>() {
                Ok(b) => b,
                Err(e) => return fail(doc, "internal_failure", e.to_string(), EXIT_VERIFICATION),
            };
            let nonzero: Vec<Poly> = b.iter().filter(|x| !x.is_zero()).cloned().collect();
            let (fixed, minimal) = match (free_resolution(&b, true), free_resolution(&nonzero, false)) {
                (Ok(f), Ok(m)) => (f, m),
                (Err(e), _) | (_, Err(e)) => return fail(doc, "internal_failure", e.to_string(), EXIT_VERIFICATION),
            };
            if cmd == Command::Resolve {
                doc.resolution = Some(resolution_doc(&b, &fixed, &minimal));
                return;
            }
            let m = nonzero.len() as u32;
            let a_rank = fixed.p.len() as u32;
            let g1 = crate::arith::dehomogenize_matrix(&fixed.d1).degree();
            let g2 = crate::arith::dehomogenize_matrix(&fixed.d2).degree();
            let data = (a_rank > 0).then(|| (a_rank, g1.unwrap_or(0), g2.unwrap_or(0)));
            let mut report = evaluate_bounds(p.d, m, data);
            let mut verdicts = Vec::new();
            for res in [&minimal, &fixed] {
                match check_resolution_bounds(res, p.d, m) {
                    Ok(v) => verdicts.extend(v),
                    Err(e) => return fail(doc, "internal_failure", e.to_string(), EXIT_VERIFICATION),
                }
            }
            match crate::bounds::classify_case(&fixed, &minimal, p.d) {
                Ok(c) => report.case = Some(c),
                Err(e) => return fail(doc, "internal_failure", e.to_string(), EXIT_VERIFICATION),
            }
            report.verdicts = verdicts;
            doc.bounds = Some(bounds_doc(&report));
            if !report.all_pass() {
                fail(doc, "bound_violation", "a proved bound failed".into(), EXIT_VERIFICATION);
            }
        }
        Command::Verify => {
            let Some(text) = &spec.basis else {
                return fail(doc, "invalid_input", "verify needs --basis".into(), EXIT_INVALID);
            };
            let basis = match parse_basis(text) {
                Ok(b) => b,
                Err(e) => return fail(doc, "invalid_input", e.to_string(), EXIT_INVALID),
            };
            doc.basis = Some(basis.iter().map(|v| strings(v)).collect());
            match verify_mu_basis(&basis, &p.a) {
                Ok(alpha) => doc.alpha = Some(scalar_string(&alpha)),
                Err(e) => fail(doc, "verification_failure", e.to_string(), EXIT_VERIFICATION),
            }
        }
    }
}

/// Runs one command under the time limit and returns the report and the
/// process exit code.
pub fn run(cmd: Command, spec: &InputSpec) -> (OutputDocument, i32) {
    let base = OutputDocument {
        command: cmd.name().into(),
        seed: spec.seed,
        status: "ok".into(),
        ..Default::default()
    };
    let (tx, rx) = mpsc::channel();
    let spec_clone = spec.clone();
    let mut doc = base.clone();
    std::thread::spawn(move || {
        execute(cmd, &spec_clone, &mut doc);
        let _ = tx.send(doc);
    });
    let doc = match rx.recv_timeout(Duration::from_secs(spec.timeout_secs)) {
        Ok(doc) => doc,
        Err(mpsc::RecvTimeoutError::Timeout) => {
            let mut doc = base;
            fail(&mut doc, "resource_limit", format!("timeout after {} s", spec.timeout_secs), EXIT_RESOURCE);
            doc
        }
        Err(mpsc::RecvTimeoutError::Disconnected) => {
            let mut doc = base;
            fail(&mut doc, "internal_failure", "computation panicked".into(), EXIT_VERIFICATION);
            doc
        }
    };
    let code = doc.exit_code;
    (doc, code)
}

pub fn to_json(doc: &OutputDocument) -> String {
    serde_json::to_string_pretty(doc).expect("serializable document")
}

/// Plain-text rendering of the same fields as the JSON document.
pub fn to_text(doc: &OutputDocument) -> String {
    let mut out = Vec::new();
    out.push(format!("command: {}", doc.command));
    out.push(format!("status: {}", doc.status));
    if let Some(e) = &doc.error {
        out.push(format!("error ({}): {}", e.kind, e.message));
    }
    if let Some(input) = &doc.input {
        out.push(format!("input: ({})", input.join(", ")));
    }
    out.push(format!("seed: {}", doc.seed));
    for w in &doc.warnings {
        out.push(format!("warning: {w}"));
    }
    if let Some(d) = doc.d {
        out.push(format!("d: {d}"));
    }
    if let Some(b) = &doc.branch {
        out.push(format!("branch: {b}"));
    }
    if let Some(basis) = &doc.basis {
        for (name, v) in ["p", "q", "r"].iter().zip(basis) {
            out.push(format!("{name}: ({})", v.join(", ")));
        }
    }
    if let Some(a) = &doc.alpha {
        out.push(format!("alpha: {a}"));
    }
    if let (Some(deg), Some(sum)) = (&doc.degrees, doc.degree_sum) {
        out.push(format!("degrees: {deg:?} (sum {sum})"));
    }
    if let Some(mu) = &doc.mu {
        out.push(format!("mu: {mu:?}"));
    }
    if let Some(r) = &doc.resolution {
        out.push(format!("homogenized: ({})", r.homogenized.join(", ")));
        out.push(format!("ranks: {:?}", r.ranks));
        out.push(format!("shifts: first {:?}, q {:?}, p {:?}", r.first_shifts, r.q, r.p));
        out.push(format!("a: {}, gamma1: {:?}, gamma2: {:?}", r.a, r.gamma1, r.gamma2));
        out.push(format!("minimal resolution: q {:?}, p {:?}, regularity {}", r.minimal_q, r.minimal_p, r.regularity));
    }
    if let (Some(x), Some(y)) = (doc.deg_d1, doc.deg_d2) {
        out.push(format!("degrees of the maps at u = 1: d1 {x}, d2 {y}"));
    }
    if let Some(c) = &doc.completion {
        out.push(format!("completion: deg M {}, det {}, bound {}, within bound {}", c.deg_m, c.det, c.bound, c.within_bound));
    }
    if let Some(b) = &doc.bounds {
        out.push(format!("bounds (d = {}, m = {}, case {}):", b.d, b.m, b.case.as_deref().unwrap_or("-")));
        for (c, v) in &b.case_values {
            out.push(format!("  case {c} value: {v}"));
        }
        for v in &b.verdicts {
            let tag = if v.proved { "" } else { " (informational)" };
            out.push(format!("  [{}] {}: observed {} <= {}{tag}", if v.pass { "pass" } else { "FAIL" }, v.name, v.observed, v.bound));
        }
    }
    if let Some(t) = &doc.timings {
        for (k, v) in t {
            out.push(format!("time {k}: {v:.3} s"));
        }
    }
    out.join("\n")
}
