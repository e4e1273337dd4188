//! The twelve acceptance criteria as [`Report`]s, shared by the `check`
//! command and the acceptance test target.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::bases::{det_identities_check, mono_product, mono_product_realized, unitriangularity_check};
use crate::coefficients::RatFunc;
use crate::inner::{duality_check, involution_check, kernel_check};
use crate::jack::{conjecture_checks, construction_check, norm_and_duality, tabulated_values_check, physical_orthogonality_check};
use crate::operators::{kernel_intertwining_check, operator_check, triangular_action_check};
use crate::report::Report;
use crate::superpartition::{conjugate_partition, count_series_check, enumerate, order_leq, BruhatPoset, OrderKind, SuperPartition};

/// Optional caps on the sizes used by every criterion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bounds {
    pub n_max: Option<u32>,
    pub m_max: Option<u32>,
}

impl Bounds {
    fn n(&self, default: u32) -> u32 {
        self.n_max.map_or(default, |cap| cap.min(default))
    }

    fn m(&self, default: u32) -> u32 {
        self.m_max.map_or(default, |cap| cap.min(default))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub number: u8,
    pub title: &'static str,
    pub report: Report,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        self.report.all_passed() && !self.report.is_empty()
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{mark}  [{:>2}] {}", self.number, self.title)?;
        for failure in self.report.failures() {
            write!(f, "\n        {}: {}", failure.name, failure.detail)?;
        }
        Ok(())
    }
}

pub const TITLES: [&str; 12] = [
    "enumeration and counting series",
    "conjugation",
    "Bruhat order anti-conjugacy",
    "monomial products",
    "recursions, determinants and the involution",
    "reproducing kernels",
    "duality pairings",
    "Dunkl operators and conserved charges",
    "Jack construction",
    "norms, limits, specials and duality",
    "physical orthogonality",
    "minimal coefficient, integrality and norm ratio",
];

fn from_result<E: fmt::Display>(report: &mut Report, name: &str, result: Result<Report, E>) {
    match result {
        Ok(r) => report.merge(r),
        Err(e) => report.record(name, false, e.to_string()),
    }
}

fn from_pair<E: fmt::Display>(report: &mut Report, name: &str, result: Result<(bool, String), E>) {
    match result {
        Ok((ok, detail)) => report.record(name, ok, detail),
        Err(e) => report.record(name, false, e.to_string()),
    }
}

fn sp(s: &str) -> SuperPartition {
    s.parse().expect("literal superpartition")
}

fn enumeration(bounds: &Bounds) -> Report {
    let mut report = Report::new();
    let got: Vec<String> = enumerate(3, 2, None).iter().map(|s| s.to_string()).collect();
    let expected = ["3,0;", "2,1;", "2,0;1", "1,0;2", "1,0;1,1"];
    report.record("SPar(3|2)", got == expected, got.join("  "));
    let (n, m) = (bounds.n(8), bounds.m(4));
    report.record(
        format!("counts n <= {n}, m <= {m}"),
        count_series_check(n, m, n + 1),
        String::new(),
    );
    report
}

fn conjugation(bounds: &Bounds) -> Report {
    let mut report = Report::new();
    let got = sp("3,1,0;4,3,2,1").conjugate();
    report.record("(3,1,0;4,3,2,1)'", got == sp("6,4,1;3"), got.to_string());
    let n_max = bounds.n(8);
    let mut count = 0;
    let mut bad = None;
    for n in 0..=n_max {
        for m in 0..=n + 1 {
            for lambda in enumerate(n, m, None) {
                let conj = lambda.conjugate();
                let star_ok = strip(conj.star()) == conjugate_partition(&strip(lambda.star()));
                if conj.conjugate() != lambda || !star_ok {
                    bad.get_or_insert(lambda.to_string());
                }
                count += 1;
            }
        }
    }
    report.record(
        format!("involution and star commutation, |Λ| <= {n_max}"),
        bad.is_none(),
        bad.map_or(format!("{count} superpartitions"), |b| format!("fails at {b}")),
    );
    report
}

fn strip(mut parts: Vec<u32>) -> Vec<u32> {
    parts.retain(|&p| p > 0);
    parts
}

fn orders(bounds: &Bounds) -> Report {
    let mut report = Report::new();
    let n_max = bounds.n(7);
    let mut pairs = 0u64;
    let mut bad = None;
    for n in 0..=n_max {
        for m in 0..=n + 1 {
            let poset = BruhatPoset::cached(n, m);
            let elements = poset.elements();
            let conj: Vec<usize> = elements
                .iter()
                .map(|e| poset.index_of(&e.conjugate()).expect("conjugation preserves the sector"))
                .collect();
            for i in 0..elements.len() {
                for j in 0..elements.len() {
                    if poset.leq(i, j) != poset.leq(conj[j], conj[i]) {
                        bad.get_or_insert(format!("{} vs {}", elements[i], elements[j]));
                    }
                    pairs += 1;
                }
            }
        }
    }
    report.record(
        format!("anti-conjugacy, n <= {n_max}"),
        bad.is_none(),
        bad.unwrap_or(format!("{pairs} pairs")),
    );
    let (big, small) = (sp("5,2,1;4,3,3"), sp("4,3,0;5,3,2,1"));
    let ok = order_leq(OrderKind::DominanceSuper, &small, &big)
        && !order_leq(OrderKind::Bruhat, &small, &big)
        && !order_leq(OrderKind::Bruhat, &big, &small);
    report.record("dominance-comparable, Bruhat-incomparable pair", ok, String::new());
    report
}

fn products(bounds: &Bounds) -> Report {
    let mut report = Report::new();
    let (lambda, omega) = (sp("1,0;1"), sp("0;2,1,1"));
    let fill = mono_product(&lambda, &omega);
    let expected = [(sp("2,1,0;1,1,1"), -3), (sp("3,1,0;1,1"), 1)];
    let mut ok = true;
    let mut detail = Vec::new();
    for (gamma, value) in &expected {
        let by_filling = fill.get(gamma).cloned().unwrap_or_default();
        let realized = mono_product_realized(&lambda, &omega)
            .map(|r| r.get(gamma).cloned().unwrap_or_else(RatFunc::zero))
            .unwrap_or_else(|_| RatFunc::zero());
        ok &= by_filling == BigInt::from(*value) && realized == RatFunc::from_int(*value);
        detail.push(format!("{gamma}: {by_filling}"));
    }
    report.record("m_(1,0;1) m_(0;2,1,1)", ok, detail.join(", "));
    let total = bounds.n(6);
    let mut count = 0;
    let mut bad = None;
    let all: Vec<SuperPartition> = (0..=total)
        .flat_map(|n| (0..=n + 1).flat_map(move |m| enumerate(n, m, None)))
        .collect();
    for a in &all {
        for b in &all {
            if a.n() + b.n() > total {
                continue;
            }
            let fill = mono_product(a, b);
            let realized = match mono_product_realized(a, b) {
                Ok(r) => r,
                Err(e) => {
                    bad.get_or_insert(format!("{a} x {b}: {e}"));
                    continue;
                }
            };
            let fill_as_rat: std::collections::BTreeMap<_, _> = fill
                .iter()
                .map(|(k, v)| (k.clone(), RatFunc::from_bigint(v.clone())))
                .collect();
            if fill_as_rat != realized {
                bad.get_or_insert(format!("{a} x {b}"));
            }
            count += 1;
        }
    }
    report.record(
        format!("fillings equal realization, |Λ|+|Ω| <= {total}"),
        bad.is_none(),
        bad.unwrap_or(format!("{count} pairs")),
    );
    report
}

fn identities(bounds: &Bounds) -> Report {
    let mut report = Report::new();
    let n = bounds.n(6);
    from_result(&mut report, "recursions and determinants", det_identities_check(n));
    from_result(&mut report, "involution", involution_check(n, bounds.m(2)));
    from_result(&mut report, "unitriangularity", unitriangularity_check(bounds.n(5), bounds.m(2)));
    report
}

fn kernels(bounds: &Bounds) -> Report {
    let mut report = Report::new();
    from_result(&mut report, "kernels", kernel_check(3, bounds.n(4), bounds.m(2)));
    report
}

fn dualities(bounds: &Bounds) -> Report {
    let mut report = Report::new();
    from_result(&mut report, "duality pairings", duality_check(bounds.n(5), bounds.m(2)));
    report
}

fn operators(bounds: &Bounds) -> Report {
    let mut report = operator_check(2024);
    from_pair(&mut report, "kernel intertwining, N = 2", kernel_intertwining_check(2, 3, 2));
    from_pair(
        &mut report,
        "triangular action on monomials",
        triangular_action_check(bounds.n(5), bounds.m(2)),
    );
    report
}

fn construction(bounds: &Bounds) -> Report {
    construction_check((bounds.n(5), bounds.m(2)), (bounds.n(4), bounds.m(2)))
}

fn numbers(bounds: &Bounds) -> Report {
    tabulated_values_check(bounds.n(4), bounds.m(3))
}

fn physical(bounds: &Bounds) -> Report {
    let mut report = Report::new();
    for (n, m, n_vars) in [(2, 1, 3), (3, 1, 3), (3, 2, 4)] {
        if n > bounds.n(n) || m > bounds.m(m) {
            continue;
        }
        for beta in [1, 2] {
            from_result(
                &mut report,
                &format!("physical ({n}|{m}), N = {n_vars}, b = {beta}"),
                physical_orthogonality_check(n, m, n_vars, beta),
            );
        }
    }
    report
}

fn conjectures(bounds: &Bounds) -> Report {
    let mut report = Report::new();
    let (n_max, m_max) = (bounds.n(6), bounds.m(3));
    match conjecture_checks(n_max, m_max) {
        Ok(r) => {
            let total = r.len();
            let failures: Vec<String> = r.failures().map(|f| format!("{} {}", f.name, f.detail)).collect();
            report.record(
                format!("c^min formula and integrality, n <= {n_max}, m <= {m_max}"),
                failures.is_empty(),
                if failures.is_empty() {
                    format!("{total} superpartitions")
                } else {
                    failures.join("; ")
                },
            );
        }
        Err(e) => report.record("c^min formula and integrality", false, e.to_string()),
    }
    if n_max >= 6 && m_max >= 3 {
        let example = sp("3,1,0;4,2,1");
        let ok = crate::jack::cmin_extracted(&example)
            .map(|c| c == crate::superpartition::cmin_conjecture_value(&example));
        from_pair(&mut report, "c^min of (3,1,0;4,2,1)", ok.map(|ok| (ok, String::new())));
    }
    let mut count = 0;
    let mut bad = None;
    for n in 0..=n_max {
        for m in 0..=m_max {
            for lambda in enumerate(n, m, None) {
                match norm_and_duality(&lambda) {
                    Ok(rec) if rec.ratio_ok => count += 1,
                    Ok(_) => {
                        bad.get_or_insert(lambda.to_string());
                    }
                    Err(e) => {
                        bad.get_or_insert(format!("{lambda}: {e}"));
                    }
                }
            }
        }
    }
    report.record(
        "norm ratio identity",
        bad.is_none(),
        bad.map_or(format!("{count} superpartitions"), |b| format!("fails at {b}")),
    );
    report
}

/// Runs criterion `number` (1 to 12).
pub fn run_criterion(number: u8, bounds: &Bounds) -> Criterion {
    let report = match number {
        1 => enumeration(bounds),
        2 => conjugation(bounds),
        3 => orders(bounds),
        4 => products(bounds),
        5 => identities(bounds),
        6 => kernels(bounds),
        7 => dualities(bounds),
        8 => operators(bounds),
        9 => construction(bounds),
        10 => numbers(bounds),
        11 => physical(bounds),
        12 => conjectures(bounds),
        _ => {
            let mut r = Report::new();
            r.record(format!("criterion {number}"), false, "no such criterion");
            r
        }
    };
    Criterion {
        number,
        title: TITLES.get(number as usize - 1).copied().unwrap_or("unknown"),
        report,
    }
}

pub fn run_all(bounds: &Bounds) -> Vec<Criterion> {
    (1..=12).map(|k| run_criterion(k, bounds)).collect()
}
