use std::fs;
use std::path::Path;

use apo_core::families::FamilySpec;
use apo_core::moment::{
    generating_poly, generating_poly_raw, prony_solve, regularity_check, structure_checks,
    vandermonde_solve, Convention, Degeneracy, NodeSet, Regularity,
};
use apo_core::regularization::nonregular_generating_poly;
use apo_core::trig::{
    extract_harmonic_on_grid, power_spectrum, spectrum_report, SpectrumMask, DEFAULT_GRID_POINTS,
};
use apo_core::{apply_apo, Apo, Error, Family, MomentData, TrigPolynomial};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{complex, num, Report};
use crate::{ApplyArgs, FamilyArg, MomentArgs, RootsArgs, SolveArgs, SpectrumArgs, VerifyArgs};

#[derive(Debug)]
pub enum Failure {
    Unsupported(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::DegreeExceeded { .. } => Failure::Invalid(e.to_string()),
            _ => Failure::Unsupported(e.to_string()),
        }
    }
}

pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn pass(report: Report) -> Self {
        Outcome {
            text: report.finish(),
            passed: true,
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Invalid(format!("cannot parse {}: {e}", path.display())))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable value");
    fs::write(path, text + "\n")
        .map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::MuEqualsN => "mu-equals-n",
        Family::MuOne => "mu-one",
        Family::MuTwo => "mu-two",
        Family::General => "general",
    }
}

fn mask_name(mask: SpectrumMask) -> String {
    match mask {
        SpectrumMask::Periodic { n } => format!("periodic n={n}"),
        SpectrumMask::MuOne { n } => format!("mu-one n={n}"),
        SpectrumMask::Windowed { mu, n } => format!("windowed mu={mu} n={n}"),
    }
}

/// Smallest `s ≥ 2` with `s·mu − 2 ≥ degree`, i.e. valid degree `s·mu − 2`
/// for the general family and `2s − 1` for `mu = 2`.
fn s_for_degree(mu: usize, degree: usize, family: Family) -> usize {
    let valid = |s: usize| match family {
        Family::MuTwo => 2 * s - 1,
        _ => s * mu - 2,
    };
    (2..).find(|&s| valid(s) >= degree).unwrap()
}

fn select_family(a: &SolveArgs) -> Result<FamilySpec, Failure> {
    let mu = a.mu;
    if mu == 0 {
        return Err(Failure::Invalid("mu must be positive".into()));
    }
    if a.degree == Some(0) || a.s == Some(0) {
        return Err(Failure::Invalid("degree and s must be positive".into()));
    }
    let family = match a.family {
        Some(FamilyArg::MuEqualsN) => Family::MuEqualsN,
        Some(FamilyArg::MuOne) => Family::MuOne,
        Some(FamilyArg::MuTwo) => Family::MuTwo,
        Some(FamilyArg::General) => Family::General,
        None => match (mu, a.degree) {
            (_, Some(d)) if d == mu => Family::MuEqualsN,
            (1, _) => Family::MuOne,
            (2, _) => Family::MuTwo,
            _ => Family::General,
        },
    };
    let unsupported = |why: &str| Err(Failure::Unsupported(format!("{}: {why}", family_name(family))));
    let spec = match family {
        Family::MuEqualsN => {
            if a.degree.is_some_and(|d| d > mu) {
                return unsupported("degree must not exceed mu");
            }
            FamilySpec::mu_equals_n(mu)
        }
        Family::MuOne => {
            if mu != 1 {
                return unsupported("requires mu = 1");
            }
            let n = match (a.degree, a.s) {
                (Some(d), _) => d.max(2),
                (None, Some(s)) => s.saturating_sub(1),
                (None, None) => unreachable!("clap requires degree or s"),
            };
            FamilySpec::mu_one(n, a.alpha)
        }
        Family::MuTwo | Family::General => {
            if family == Family::MuTwo && mu != 2 {
                return unsupported("requires mu = 2");
            }
            if mu < 2 {
                return unsupported("requires mu >= 2");
            }
            let s = match (a.s, a.degree) {
                (Some(s), _) => s,
                (None, Some(d)) => s_for_degree(mu, d, family),
                (None, None) => unreachable!("clap requires degree or s"),
            };
            if family == Family::MuTwo {
                FamilySpec::mu_two(s, a.alpha)
            } else {
                FamilySpec::general(mu, s, a.alpha)
            }
        }
    };
    Ok(spec?)
}

pub fn solve(a: &SolveArgs) -> CmdResult {
    let spec = select_family(a)?;
    let op = spec.build()?;
    write_json(&a.out, &op)?;
    let mut r = Report::default();
    r.line("family", family_name(spec.family))
        .line("mu", spec.mu)
        .line("s", spec.s)
        .line("n", spec.n)
        .line("alpha", spec.alpha)
        .num("omega", op.omega())
        .line("terms", op.terms().len())
        .line("valid_degree", op.valid_degree());
    for (j, &(x, lambda)) in op.terms().iter().enumerate() {
        r.line(format!("term[{j}]"), format!("{} {}", num(x), num(lambda)));
    }
    r.line("out", a.out.display());
    Ok(Outcome::pass(r))
}

pub fn apply(a: &ApplyArgs) -> CmdResult {
    let op: Apo = read_json(&a.apo)?;
    let p: TrigPolynomial = read_json(&a.poly)?;
    let rep = extract_harmonic_on_grid(&op, &p, DEFAULT_GRID_POINTS)?;
    let mut r = Report::default();
    r.line("mu", op.mu())
        .line("degree", p.degree())
        .num("harmonic_a", rep.harmonic.a)
        .num("harmonic_b", rep.harmonic.b)
        .num("omega", rep.omega)
        .num("offset", rep.offset)
        .num("max_deviation", rep.max_deviation);
    for i in 0..a.points {
        let x = std::f64::consts::TAU * i as f64 / a.points as f64;
        r.line(
            format!("sample[{i}]"),
            format!("{} {}", num(x), num(apply_apo(&op, &p, x))),
        );
    }
    Ok(Outcome::pass(r))
}

/// Trial `i` draws its polynomial from a generator seeded with `seed + i`,
/// so a failing trial replays with `--seed <worst_seed> --trials 1`.
fn trial_poly(seed: u64, degree: usize) -> TrigPolynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a0 = rng.gen_range(-1.0..=1.0);
    let coeffs = (0..degree)
        .map(|_| (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
        .collect();
    TrigPolynomial::with_constant(a0, coeffs).expect("finite coefficients")
}

pub fn verify(a: &VerifyArgs) -> CmdResult {
    let op: Apo = read_json(&a.apo)?;
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(Failure::Invalid("tol must be positive".into()));
    }
    if a.grid < 2 * op.valid_degree() + 2 {
        return Err(Failure::Invalid(format!(
            "grid must have at least {} points",
            2 * op.valid_degree() + 2
        )));
    }
    let mut max_error: f64 = 0.0;
    let mut worst_seed = None;
    for i in 0..a.trials as u64 {
        let seed = a.seed.wrapping_add(i);
        let p = trial_poly(seed, op.valid_degree());
        let err = extract_harmonic_on_grid(&op, &p, a.grid)?.max_deviation;
        if worst_seed.is_none() || err > max_error {
            max_error = err;
            worst_seed = Some(seed);
        }
    }
    let mask = SpectrumMask::infer(&op);
    let beta_max = 4 * mask.period();
    let spec = spectrum_report(&op, mask, beta_max, a.tol);
    let passed = max_error < a.tol && spec.passed();

    let mut r = Report::default();
    r.line("mu", op.mu())
        .line("valid_degree", op.valid_degree())
        .line("terms", op.terms().len())
        .num("omega", op.omega())
        .line("trials", a.trials)
        .line("seed", a.seed)
        .num("tol", a.tol)
        .num("max_error", max_error)
        .line("worst_seed", worst_seed.map_or("none".into(), |s| s.to_string()))
        .line("spectrum_mask", mask_name(mask))
        .line("spectrum_beta_max", beta_max)
        .num("spectrum_max_masked", spec.max_masked)
        .line("spectrum_violations", index_list(&spec.violations))
        .line("status", if passed { "pass" } else { "fail" });
    Ok(Outcome {
        text: r.finish(),
        passed,
    })
}

fn index_list(ix: &[usize]) -> String {
    if ix.is_empty() {
        "none".into()
    } else {
        ix.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
    }
}

fn verdict(reg: &Regularity) -> &'static str {
    match reg {
        Regularity::Regular => "regular",
        Regularity::Degenerate(Degeneracy::ZeroPolynomial) => "zero_polynomial",
        Regularity::Degenerate(Degeneracy::DegreeDrop { .. }) => "degree_drop",
        Regularity::Degenerate(Degeneracy::RepeatedRoots { .. }) => "repeated_roots",
    }
}

fn delta_data(n: usize, mu: usize, omega: f64) -> Result<MomentData, Failure> {
    if !omega.is_finite() {
        return Err(Failure::Invalid("omega must be finite".into()));
    }
    Ok(MomentData::delta(n, mu, omega)?)
}

pub fn gpoly(a: &MomentArgs) -> CmdResult {
    let md = delta_data(a.n, a.mu, a.omega)?;
    let st = structure_checks(&md);
    if a.json {
        let text = serde_json::to_string_pretty(&st).expect("serializable report");
        return Ok(Outcome {
            text: text + "\n",
            passed: true,
        });
    }
    let g = generating_poly(&md);
    let scale = generating_poly_raw(&md).scale;
    let reg = regularity_check(&g, a.n);

    let mut r = Report::default();
    r.line("n", a.n).line("mu", a.mu).num("omega", a.omega);
    for (k, c) in st.coeffs.iter().enumerate() {
        r.num(format!("g[{k}]"), *c);
    }
    let zeros: Vec<usize> = g
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() <= 1e-10 * scale)
        .map(|(k, _)| k)
        .collect();
    r.num("imag_residue", st.imag_residue)
        .line("degree", g.degree().map_or("none".into(), |d| d.to_string()))
        .line("verdict", verdict(&reg))
        .line("zero_coefficients", index_list(&zeros));
    if let Some(s) = &st.symmetry {
        r.line("symmetry_sign", s.sign).num("symmetry_deviation", s.max_deviation);
    }
    if let Some(l) = &st.lattice {
        r.line("lattice_s", l.s)
            .num("lattice_off_max", l.off_lattice_max)
            .num("lattice_chain_max", l.chain_max)
            .num("lattice_base", l.g_mu_minus_1);
    }
    if let Some(l) = &st.low_coefficient {
        r.num("low_coefficient", l.actual)
            .num("low_coefficient_expected", l.expected)
            .num("low_coefficient_deviation", l.deviation);
    }
    if let Some(e) = &st.even_case {
        r.line("even_case_s", e.s)
            .num("even_case_u", e.u_value)
            .line("even_case_plus", e.plus)
            .line("even_case_minus", e.minus);
    }
    if let Some(l) = &st.leading {
        r.num("leading", l.actual)
            .num("leading_expected", l.expected)
            .num("leading_deviation", l.deviation);
    }
    r.line("identities_hold", st.holds(1e-8));
    Ok(Outcome::pass(r))
}

pub fn roots(a: &RootsArgs) -> CmdResult {
    let md = delta_data(a.n, a.mu, a.omega)?;
    let (method, s_aug, ns) = match prony_solve(&md) {
        Ok(ns) => ("prony", None, ns),
        Err(Error::Degenerate(Degeneracy::ZeroPolynomial)) => {
            let rep = nonregular_generating_poly(&md)?;
            let m = rep.roots.len();
            let weights = vandermonde_solve(&rep.roots, &md.moments()[..m])?;
            let ns = NodeSet {
                convention: Convention::Z,
                nodes: rep.roots,
                weights,
            };
            ("regularized", Some(rep.s_aug), ns)
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = &a.out {
        write_json(path, &ns)?;
    }
    let amps = ns.amplitudes(a.n);
    let mut r = Report::default();
    r.line("n", a.n)
        .line("mu", a.mu)
        .num("omega", a.omega)
        .line("method", method)
        .line("s_aug", s_aug.map_or("none".into(), |s| s.to_string()))
        .line("count", ns.nodes.len())
        .num("moment_residual", ns.moment_residual(&md));
    for (k, (z, x)) in ns.nodes.iter().zip(&amps).enumerate() {
        r.line(format!("node[{k}]"), complex(*z))
            .num(format!("phase[{k}]"), -z.arg())
            .line(format!("amplitude[{k}]"), complex(*x));
    }
    Ok(Outcome::pass(r))
}

pub fn spectrum(a: &SpectrumArgs) -> CmdResult {
    let op: Apo = read_json(&a.apo)?;
    let mask = SpectrumMask::infer(&op);
    let beta_max = a.beta_max.unwrap_or(4 * mask.period());
    let rep = spectrum_report(&op, mask, beta_max, a.tol);
    let sums: Vec<Complex64> = power_spectrum(&op, beta_max);
    let mut r = Report::default();
    r.line("mask", mask_name(mask)).line("beta_max", beta_max);
    for (beta, s) in sums.iter().enumerate() {
        let tag = if beta == 0 || mask.allows(beta) { "free" } else { "zero" };
        r.line(format!("sum[{beta}]"), format!("{} {tag}", complex(*s)));
    }
    r.num("max_masked", rep.max_masked)
        .line("violations", index_list(&rep.violations))
        .line("status", if rep.passed() { "pass" } else { "fail" });
    Ok(Outcome {
        text: r.finish(),
        passed: rep.passed(),
    })
}
