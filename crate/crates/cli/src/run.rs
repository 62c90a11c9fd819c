//! Dispatch of a parsed problem to the engines, with optional cross-checks.

use std::collections::BTreeMap;

use coincidence_core::abelian::{
    divisibility_report, ker_psi_order_by_enumeration, permute_system, reid_multi, reid_pair,
    stacked_difference, AbelianHom, AbelianSystem,
};
use coincidence_core::finite::{
    conjugacy_class_count, product_law, twisted_reidemeister, twisted_reidemeister_by_expansion,
    FiniteHom, DEFAULT_TUPLE_CAP,
};
use coincidence_core::linalg::{
    cokernel_elements, cokernel_order, determinant, elementary_divisors_via_minors, rank,
    smith_normal_form,
};
use coincidence_core::nilpotent::{
    diagonal_pair, recount_by_identification, reid_nilpotent_multi, validate_hom, NilpotentOutcome,
    NilpotentReport, PcHom,
};
use coincidence_core::{Cardinal, Error, IntMatrix};
use num_bigint::BigUint;
use serde_json::Value;

use crate::parse::{Kind, Problem, ProblemFile};

/// Largest cokernel listed by the brute-force oracles.
pub const ORACLE_CAP: u64 = 1_000_000;

/// Orderings are enumerated exhaustively up to this many maps.
pub const MAX_PERMUTED_MAPS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    pub oracle: bool,
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    UnsupportedReduction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleStatus {
    Absent,
    Agreed,
    Mismatch(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub kind: Kind,
    pub status: Status,
    /// `None` only for an unsupported reduction.
    pub value: Option<Cardinal>,
    /// Values are strings, lists of strings, or objects of strings.
    pub intermediates: BTreeMap<String, Value>,
    pub trace: Vec<String>,
    pub oracle_status: OracleStatus,
}

impl Report {
    fn new(kind: Kind, value: Cardinal) -> Self {
        Report {
            kind,
            status: Status::Ok,
            value: Some(value),
            intermediates: BTreeMap::new(),
            trace: vec![],
            oracle_status: OracleStatus::Absent,
        }
    }

    fn put(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.intermediates.insert(key.into(), value.into());
    }

    /// 0 on success, 2 on an oracle mismatch, 3 for an unsupported reduction.
    pub fn exit_code(&self) -> i32 {
        match (&self.oracle_status, self.status) {
            (OracleStatus::Mismatch(_), _) => 2,
            (_, Status::UnsupportedReduction) => 3,
            _ => 0,
        }
    }
}

/// A run that produced no report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Bad input, including inputs an engine rejects.
    Input(String),
    /// An internal consistency check failed.
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Internal(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<crate::parse::InputError> for Failure {
    fn from(e: crate::parse::InputError) -> Self {
        Failure::Input(e.0)
    }
}

pub fn card(c: &Cardinal) -> String {
    c.to_string()
}

fn divisibility(divisor: &Cardinal, value: &Cardinal) -> String {
    match divisor.divides(value) {
        Some(true) => format!("{divisor} divides {value}"),
        Some(false) => format!("{divisor} does not divide {value}"),
        None => format!("{divisor} vs {value}: undefined for infinite values"),
    }
}

fn strings<T: ToString>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

fn joined<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn record(report: &mut Report, checks: Vec<Result<String, String>>) {
    let mut failures = vec![];
    for c in checks {
        match c {
            Ok(line) => report.trace.push(format!("oracle: {line}")),
            Err(line) => {
                report.trace.push(format!("oracle mismatch: {line}"));
                failures.push(line);
            }
        }
    }
    report.oracle_status = if failures.is_empty() {
        OracleStatus::Agreed
    } else {
        OracleStatus::Mismatch(failures.join("; "))
    };
}

fn finish(mut report: Report, opts: &RunOptions) -> Report {
    if !opts.trace {
        report.trace.clear();
    }
    report
}

pub fn compute(file: &ProblemFile, opts: &RunOptions) -> Result<Report, Failure> {
    let report = match &file.problem {
        Problem::Snf(m) => snf_report(file.kind, m, opts),
        Problem::AbelianPair(phi, psi) => pair_report(file, phi, psi, opts)?,
        Problem::AbelianMulti(system) => multi_report(file, system, opts),
        Problem::Finite(homs) => finite_report(file, homs, opts)?,
        Problem::Nilpotent(homs) => nilpotent_report(file, homs, opts)?,
    };
    Ok(finish(report, opts))
}

/// Smith form of the matrix behind the problem: the matrix itself, the
/// difference, the stacked difference, or both differences of the
/// central extension.
pub fn snf(file: &ProblemFile, opts: &RunOptions) -> Result<Report, Failure> {
    let report = match &file.problem {
        Problem::Snf(m) => snf_report(file.kind, m, opts),
        Problem::AbelianPair(phi, psi) => snf_report(file.kind, &psi.checked_sub(phi)?, opts),
        Problem::AbelianMulti(system) => snf_report(file.kind, &stacked_difference(system), opts),
        Problem::Finite(_) => {
            return Err(Failure::Input(
                "finite problems have no integer matrix to reduce".into(),
            ))
        }
        Problem::Nilpotent(homs) => {
            let (f, g) = diagonal_pair(homs)?;
            let data = coincidence_core::nilpotent::central_extension_data(&f, &g)?;
            let bar = snf_report(file.kind, &data.bar_difference(), opts);
            let prime = snf_report(file.kind, &data.prime_difference(), opts);
            let mut report = nilpotent_report(file, homs, &RunOptions::default())?;
            report.intermediates.clear();
            for (prefix, part) in [("bar", bar), ("prime", prime)] {
                for (k, v) in part.intermediates {
                    report.put(format!("{prefix} {k}"), v);
                }
                report
                    .trace
                    .extend(part.trace.into_iter().map(|l| format!("{prefix}: {l}")));
                if let OracleStatus::Mismatch(m) = part.oracle_status {
                    report.oracle_status = OracleStatus::Mismatch(format!("{prefix}: {m}"));
                } else if report.oracle_status == OracleStatus::Absent {
                    report.oracle_status = part.oracle_status;
                }
            }
            report
        }
    };
    Ok(finish(report, opts))
}

fn snf_report(kind: Kind, m: &IntMatrix, opts: &RunOptions) -> Report {
    let r = smith_normal_form(m);
    let order = cokernel_order(m);
    let mut report = Report::new(kind, order.clone());
    report.put("shape", format!("{}x{}", m.rows(), m.cols()));
    report.put("matrix", m.to_string());
    report.put("divisors", strings(&r.divisors));
    report.put("rank", r.divisors.len().to_string());
    report.put("cokernel order", card(&order));
    report.trace = vec![
        format!("M = {m}"),
        format!("S = {}", r.s),
        format!("T = {}", r.t),
        format!("D = S*M*T = {}", r.d),
    ];
    if opts.oracle {
        let minors = elementary_divisors_via_minors(m);
        let check = if minors == r.divisors {
            Ok(format!(
                "gcd-of-minors divisors ({}) agree",
                joined(&minors)
            ))
        } else {
            Err(format!(
                "gcd-of-minors divisors ({}) differ from ({})",
                joined(&minors),
                joined(&r.divisors)
            ))
        };
        record(&mut report, vec![check]);
    }
    report
}

/// Counts the cokernel of `m` by listing it, when it is small enough.
fn enumeration_check(m: &IntMatrix, value: &Cardinal) -> Option<Result<String, String>> {
    match cokernel_elements(m, ORACLE_CAP) {
        Ok(None) if *value == Cardinal::Infinite => {
            Some(Ok("cokernel enumeration finds a free part".into()))
        }
        Ok(None) => Some(Err(format!(
            "cokernel enumeration finds a free part, engine says {value}"
        ))),
        Ok(Some(list)) => {
            let listed = Cardinal::from(list.len() as u64);
            Some(if listed == *value {
                Ok(format!("cokernel enumeration lists {listed} elements"))
            } else {
                Err(format!(
                    "cokernel enumeration lists {listed} elements, engine says {value}"
                ))
            })
        }
        Err(_) => None,
    }
}

fn pair_report(
    file: &ProblemFile,
    phi: &IntMatrix,
    psi: &IntMatrix,
    opts: &RunOptions,
) -> Result<Report, Failure> {
    let diff = psi.checked_sub(phi)?;
    let value = reid_pair(&AbelianHom::new(phi.clone()), &AbelianHom::new(psi.clone()))?;
    let (a, b) = (&file.names[0], &file.names[1]);
    let mut report = Report::new(file.kind, value.clone());
    report.put(format!("{b} - {a}"), diff.to_string());
    report.put("divisors", strings(&smith_normal_form(&diff).divisors));
    if diff.is_square() {
        report.put(
            format!("|det({b} - {a})|"),
            card(&Cardinal::from_abs(&determinant(&diff)?)),
        );
    }
    report
        .trace
        .push(format!("R({a}, {b}) = #coker({b} - {a}) = {value}"));
    if opts.oracle {
        let check = enumeration_check(&diff, &value);
        if check.is_none() {
            report
                .trace
                .push(format!("oracle skipped: cokernel larger than {ORACLE_CAP}"));
        }
        record(&mut report, check.into_iter().collect());
    }
    Ok(report)
}

fn multi_report(file: &ProblemFile, system: &AbelianSystem, opts: &RunOptions) -> Report {
    let names = &file.names;
    let r = reid_multi(system);
    let div = divisibility_report(system);
    let stacked = stacked_difference(system);
    let mut report = Report::new(file.kind, r.value.clone());
    report.put("stacked difference", stacked.to_string());
    report.put("divisors", strings(&smith_normal_form(&stacked).divisors));
    for (j, p) in r.pairwise.iter().enumerate() {
        report.put(format!("R({}, {})", names[0], names[j + 1]), card(p));
    }
    if let Some(law) = &div.product_law {
        report.put("pairwise product", card(&law.product));
        report.put(
            "pairwise divisibility",
            divisibility(&law.product, &r.value),
        );
        report.put("|ker Psi|", card(&law.ker_psi_order));
    }
    if let Some(loo) = &div.leave_one_out {
        for (i, v) in loo.values.iter().enumerate() {
            let kept: Vec<&str> = (0..system.k())
                .filter(|&x| x != i + 1)
                .map(|x| names[x].as_str())
                .collect();
            report.put(format!("R({})", kept.join(", ")), card(v));
        }
        report.put("sub-system product", card(&loo.product));
        report.put(
            "sub-system divisibility",
            divisibility(&loo.product, &r.value),
        );
    }
    report.trace = r.trace;
    if opts.oracle {
        let mut checks = vec![];
        match enumeration_check(&stacked, &r.value) {
            Some(c) => checks.push(c),
            None => report
                .trace
                .push(format!("oracle skipped: cokernel larger than {ORACLE_CAP}")),
        }
        if let Some(ker) = &r.ker_psi_order {
            match ker_psi_order_by_enumeration(system, ORACLE_CAP) {
                Ok(listed) if listed == *ker => {
                    checks.push(Ok(format!("|ker Psi| = {listed} by listing classes")))
                }
                Ok(listed) => checks.push(Err(format!(
                    "|ker Psi| = {listed} by listing classes, lattice index gives {ker}"
                ))),
                Err(_) => report
                    .trace
                    .push("oracle skipped: too many classes to list for |ker Psi|".into()),
            }
        }
        record(&mut report, checks);
    }
    report
}

fn class_sizes(sizes: &[u64]) -> Value {
    let mut hist: BTreeMap<u64, usize> = BTreeMap::new();
    for &s in sizes {
        *hist.entry(s).or_default() += 1;
    }
    strings(
        &hist
            .iter()
            .map(|(s, c)| format!("{c} of size {s}"))
            .collect::<Vec<_>>(),
    )
}

fn finite_report(
    file: &ProblemFile,
    homs: &[FiniteHom],
    opts: &RunOptions,
) -> Result<Report, Failure> {
    let names = &file.names;
    let part = twisted_reidemeister(homs, DEFAULT_TUPLE_CAP)?;
    let law = product_law(homs, DEFAULT_TUPLE_CAP)?;
    let value = Cardinal::from(part.class_count as u64);
    let codomain = homs[0].codomain();
    let mut report = Report::new(file.kind, value.clone());
    report.put("domain order", homs[0].domain().order().to_string());
    report.put("codomain order", codomain.order().to_string());
    report.put(
        "conjugacy classes of the codomain",
        conjugacy_class_count(codomain).to_string(),
    );
    report.put("tuples", part.class_of.len().to_string());
    report.put("class sizes", class_sizes(&part.class_sizes));
    for (j, p) in law.pairwise.iter().enumerate() {
        report.put(format!("R({}, {})", names[0], names[j + 1]), p.to_string());
    }
    let product = Cardinal::Finite(law.product.clone());
    report.put("pairwise product", card(&product));
    report.put("pairwise divisibility", divisibility(&product, &value));
    let gens: Vec<String> = homs[0]
        .domain()
        .generators()
        .iter()
        .map(|&g| homs[0].domain().label(g))
        .collect();
    report
        .trace
        .push(format!("domain generators: {}", gens.join(", ")));
    report.trace.push(format!(
        "{} tuples of length {} partitioned into {} classes",
        part.class_of.len(),
        homs.len() - 1,
        part.class_count
    ));
    if opts.oracle {
        let dual = twisted_reidemeister_by_expansion(homs, DEFAULT_TUPLE_CAP)?;
        let check = if dual == part {
            Ok(format!(
                "orbit expansion gives the same {} classes",
                dual.class_count
            ))
        } else {
            Err(format!(
                "orbit expansion gives {} classes, union-find {}",
                dual.class_count, part.class_count
            ))
        };
        record(&mut report, vec![check]);
    }
    Ok(report)
}

/// `value · |Im δ| = R′ · R̄`, checked on every nilpotent result.
pub fn consistency(n: &NilpotentReport) -> Result<(), Failure> {
    if let (Some(Cardinal::Finite(v)), Some(im)) = (n.value(), &n.im_delta) {
        if &Cardinal::Finite(v.clone()) * im != &n.r_prime * &n.r_bar {
            return Err(Failure::Internal(format!(
                "value {v} * |Im delta| {im} differs from R' {} * R_bar {}",
                n.r_prime, n.r_bar
            )));
        }
    }
    Ok(())
}

fn abs_det(m: &IntMatrix) -> Option<String> {
    m.is_square()
        .then(|| determinant(m).map(|d| card(&Cardinal::from_abs(&d))))
        .and_then(Result::ok)
}

fn nilpotent_report(
    file: &ProblemFile,
    homs: &[PcHom],
    opts: &RunOptions,
) -> Result<Report, Failure> {
    let n = reid_nilpotent_multi(homs)?;
    consistency(&n)?;
    let mut report = Report::new(file.kind, Cardinal::Infinite);
    report.value = n.value().cloned();
    let (bar, prime) = (n.data.bar_difference(), n.data.prime_difference());
    report.put("R_bar", card(&n.r_bar));
    report.put("R'", card(&n.r_prime));
    if let Some(im) = &n.im_delta {
        report.put("|Im delta|", card(im));
    }
    report.put("bar difference", bar.to_string());
    report.put("prime difference", prime.to_string());
    if let Some(d) = abs_det(&bar) {
        report.put("|det(bar difference)|", d);
    }
    if let Some(d) = abs_det(&prime) {
        report.put("|det(prime difference)|", d);
    }
    report.put("rk Coin(bar)", n.coin_bar_rank.to_string());
    report.put("homomorphisms checked", strings(&file.names));
    if let NilpotentOutcome::UnsupportedReduction(why) = &n.outcome {
        report.status = Status::UnsupportedReduction;
        report.put("unsupported reduction", why.clone());
    }
    report.trace = n.trace.clone();
    for (name, h) in file.names.iter().zip(homs) {
        let check = validate_hom(h);
        report.trace.push(format!(
            "{name}: {} relation checks passed",
            if check.valid { "all" } else { "not all" }
        ));
    }
    if opts.oracle {
        match n.value() {
            Some(v) => {
                let (f, g) = diagonal_pair(homs)?;
                match recount_by_identification(&f, &g, ORACLE_CAP) {
                    Ok(recount) => {
                        let check = if recount == *v {
                            Ok(format!("recount over coker(psi' - phi') gives {recount}"))
                        } else {
                            Err(format!(
                                "recount over coker(psi' - phi') gives {recount}, formula {v}"
                            ))
                        };
                        record(&mut report, vec![check]);
                    }
                    Err(e) => report.trace.push(format!("oracle skipped: {e}")),
                }
            }
            None => report
                .trace
                .push("oracle skipped: no value to compare".into()),
        }
    }
    Ok(report)
}

fn orderings(k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..k).permutations(k).collect()
}

/// Property report: invariance under reordering the maps and the
/// divisibility laws, alongside the computed value.
pub fn check(file: &ProblemFile, opts: &RunOptions) -> Result<Report, Failure> {
    let mut report = compute(
        file,
        &RunOptions {
            oracle: opts.oracle,
            trace: true,
        },
    )?;
    let k = match &file.problem {
        Problem::Snf(_) => 0,
        Problem::AbelianPair(..) => 2,
        Problem::AbelianMulti(s) => s.k(),
        Problem::Finite(h) => h.len(),
        Problem::Nilpotent(h) => h.len(),
    };
    let mut failures = vec![];
    if let OracleStatus::Mismatch(m) = &report.oracle_status {
        failures.push(m.clone());
    }
    match &file.problem {
        Problem::Snf(m) => {
            let r = smith_normal_form(m);
            let chain = r.divisors.windows(2).all(|w| (&w[1] % &w[0]) == 0u8.into());
            let rebuilt = r.s.checked_mul(m).and_then(|x| x.checked_mul(&r.t))? == r.d;
            report.put("divisor chain", if chain { "holds" } else { "fails" });
            report.put("S*M*T = D", if rebuilt { "holds" } else { "fails" });
            report.put("rank", rank(m).to_string());
            if !chain || !rebuilt {
                failures.push("smith form is not a valid diagonalization".into());
            }
        }
        Problem::AbelianPair(phi, psi) => {
            let (a, b) = (AbelianHom::new(phi.clone()), AbelianHom::new(psi.clone()));
            let same = reid_pair(&a, &b)? == reid_pair(&b, &a)?;
            report.put("symmetry", if same { "holds" } else { "fails" });
            if !same {
                failures.push("R(phi, psi) differs from R(psi, phi)".into());
            }
        }
        Problem::AbelianMulti(system) => {
            let div = divisibility_report(system);
            if let Some(law) = &div.product_law {
                let ok = law.divides && law.quotient_matches_kernel;
                report.put("pairwise product law", if ok { "holds" } else { "fails" });
                if !ok {
                    failures
                        .push("pairwise product does not divide with quotient |ker Psi|".into());
                }
            }
            if k <= MAX_PERMUTED_MAPS {
                let value = cokernel_order(&stacked_difference(system));
                let mut bad = vec![];
                for sigma in orderings(k) {
                    if cokernel_order(&stacked_difference(&permute_system(system, &sigma)?))
                        != value
                    {
                        bad.push(sigma);
                    }
                }
                invariance(&mut report, &mut failures, k, bad);
            }
        }
        Problem::Finite(homs) => {
            if k <= MAX_PERMUTED_MAPS {
                let value = twisted_reidemeister(homs, DEFAULT_TUPLE_CAP)?.class_count;
                let mut bad = vec![];
                for sigma in orderings(k) {
                    let permuted: Vec<FiniteHom> = sigma.iter().map(|&i| homs[i].clone()).collect();
                    if twisted_reidemeister(&permuted, DEFAULT_TUPLE_CAP)?.class_count != value {
                        bad.push(sigma);
                    }
                }
                invariance(&mut report, &mut failures, k, bad);
            }
        }
        Problem::Nilpotent(homs) => {
            if k <= MAX_PERMUTED_MAPS {
                let base = reid_nilpotent_multi(homs)?;
                let mut bad = vec![];
                for sigma in orderings(k) {
                    let permuted: Vec<PcHom> = sigma.iter().map(|&i| homs[i].clone()).collect();
                    let n = reid_nilpotent_multi(&permuted)?;
                    consistency(&n)?;
                    // an unsupported reduction in one ordering says nothing about the others
                    if let (Some(a), Some(b)) = (n.value(), base.value()) {
                        if a != b {
                            bad.push(sigma);
                        }
                    }
                }
                invariance(&mut report, &mut failures, k, bad);
            }
        }
    }
    if k > MAX_PERMUTED_MAPS {
        report.put(
            "permutation invariance",
            format!("not checked for more than {MAX_PERMUTED_MAPS} maps"),
        );
    }
    if !failures.is_empty() {
        report.oracle_status = OracleStatus::Mismatch(failures.join("; "));
    }
    Ok(finish(report, opts))
}

fn invariance(report: &mut Report, failures: &mut Vec<String>, k: usize, bad: Vec<Vec<usize>>) {
    let total: BigUint = (1..=k as u64).product();
    report.put("orderings checked", total.to_string());
    if bad.is_empty() {
        report.put("permutation invariance", "holds");
    } else {
        report.put(
            "permutation invariance",
            format!("fails for {} orderings", bad.len()),
        );
        failures.push(format!("value changes under the ordering {:?}", bad[0]));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_str, ParseOptions};

    fn run(text: &str, opts: RunOptions) -> Report {
        compute(&parse_str(text, &ParseOptions::default()).unwrap(), &opts).unwrap()
    }

    #[test]
    fn snf_of_worked_matrix() {
        let r = run(
            r#"{"kind": "snf", "matrix": [[2, 4, 1], [2, 6, 2]]}"#,
            RunOptions {
                oracle: true,
                trace: false,
            },
        );
        assert_eq!(r.value, Some(Cardinal::from(2)));
        assert_eq!(r.intermediates["divisors"], serde_json::json!(["1", "2"]));
        assert_eq!(r.oracle_status, OracleStatus::Agreed);
        assert!(r.trace.is_empty());
    }

    #[test]
    fn pair_with_infinite_value() {
        let r = run(
            r#"{"kind": "abelian-pair", "phi": [[1, 0], [0, 1]], "psi": [[2, 0], [0, 1]]}"#,
            RunOptions {
                oracle: true,
                trace: true,
            },
        );
        assert_eq!(r.value, Some(Cardinal::Infinite));
        assert_eq!(r.intermediates["|det(psi - phi)|"], "0");
        assert_eq!(r.oracle_status, OracleStatus::Agreed);
    }

    #[test]
    fn unsupported_reduction_exits_three() {
        // ψ inverts x and y: R̄ = |det(−2I)| = 4 while ψ′ = φ′ on the centre
        let text = r#"{
            "kind": "nilpotent",
            "domain": {"generators": ["x", "y", "z"], "central": ["z"], "commutators": [["x", "y", "z"]]},
            "codomain": {"generators": ["x", "y", "z"], "central": ["z"], "commutators": [["x", "y", "z"]]},
            "homs": [{"x": "x", "y": "y", "z": "z"}, {"x": [["x", -1]], "y": [["y", -1]], "z": "z"}]
        }"#;
        let r = run(text, RunOptions::default());
        assert_eq!(r.status, Status::UnsupportedReduction);
        assert_eq!(r.value, None);
        assert_eq!(r.exit_code(), 3);
    }

    #[test]
    fn failures_map_to_exit_codes() {
        assert_eq!(Failure::from(Error::Consistency("x".into())).exit_code(), 2);
        assert_eq!(Failure::from(Error::Shape("x".into())).exit_code(), 1);
    }
}
