//! Scalar products, the `ω̂_α` homomorphisms and Cauchy kernels.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bases::{convert, power_sum_poly, transition, Basis, BasisExpansion};
use crate::coefficients::{falling_factorial, factorial, BigRat, RatFunc};
use crate::error::{InnerError, PolyError};
use crate::report::Report;
use crate::superpartition::{enumerate, SuperPartition};
use crate::superpoly::{reversal_sign, Monomial, SuperPoly};

/// How `b` enters the combinatorial scalar product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaMode {
    Symbolic,
    At(BigRat),
    One,
}

impl BetaMode {
    fn value(&self) -> Option<BigRat> {
        match self {
            BetaMode::Symbolic => None,
            BetaMode::At(v) => Some(v.clone()),
            BetaMode::One => Some(BigRat::one()),
        }
    }
}

/// `Σ_Λ f_Λ g_Λ z_Λ(b)` over power-sum coefficients. Homogeneous pieces of
/// different bidegrees are orthogonal.
pub fn form_beta(f: &BasisExpansion, g: &BasisExpansion, mode: &BetaMode) -> Result<RatFunc, InnerError> {
    if f.bidegree() != g.bidegree() {
        return Ok(RatFunc::zero());
    }
    let fp = convert(f, Basis::P)?;
    let gp = convert(g, Basis::P)?;
    let value = mode.value();
    let mut total = RatFunc::zero();
    for (sp, cf) in fp.coeffs() {
        let cg = match gp.coeffs().get(sp) {
            Some(c) => c,
            None => continue,
        };
        let term = match &value {
            None => &(cf * cg) * &sp.z_beta(),
            Some(v) => {
                if v.is_zero() {
                    return Err(crate::error::CoefficientError::Pole("0".into()).into());
                }
                let weight = RatFunc::from_rat(&(BigRat::from_integer(sp.z()) / v.pow(sp.length() as i32)));
                &(&cf.substitute(v)? * &cg.substitute(v)?) * &weight
            }
        };
        total = &total + &term;
    }
    Ok(total)
}

/// `p_Λ ↦ α^{ℓ(Λ)} (-1)^{|Λ|-m+ℓ(Λ)} p_Λ`, returned in `p`.
pub fn omega_alpha(f: &BasisExpansion, alpha: &RatFunc) -> Result<BasisExpansion, InnerError> {
    if alpha.is_zero() {
        return Err(InnerError::ZeroAlpha);
    }
    let fp = convert(f, Basis::P)?;
    Ok(fp.map_coeffs(|sp, c| c * &sp.omega_alpha(alpha)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelMode {
    PTensorP,
    MTensorG,
    Direct,
}

/// `∏(1 - x_i y_j - θ_i φ_j)^{-b}`, or its inverse `∏(1 + x_i y_j + θ_i φ_j)^{b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelKind {
    Cauchy,
    Inverse,
}

/// A truncated kernel. `poly` lives in `2N` variables: `x, θ` at indices
/// `0..N` and `y, φ` at `N..2N`. For the two basis presentations `symbolic`
/// lists the coefficient of `⃖u_Λ(x) ⃗v_Λ(y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelExpansion {
    pub mode: KernelMode,
    pub kind: KernelKind,
    pub n_vars: usize,
    pub max_degree: u32,
    pub max_fermions: u32,
    pub symbolic: Vec<(SuperPartition, RatFunc)>,
    pub poly: SuperPoly,
}

const DIRECT_MAX_VARS: usize = 4;
const DIRECT_MAX_DEGREE: u32 = 5;

/// Truncates to `x`-degree at most `max_degree` (the `y`-degree is equal)
/// and at most `max_fermions` anticommuting `x` variables.
pub fn kernel_expand(
    mode: KernelMode,
    kind: KernelKind,
    n_vars: usize,
    max_degree: u32,
    max_fermions: u32,
) -> Result<KernelExpansion, InnerError> {
    if 2 * n_vars > 32 {
        return Err(InnerError::CostGuard(format!("{n_vars} variables exceed the 16-variable limit")));
    }
    let mut symbolic = Vec::new();
    let poly = match mode {
        KernelMode::Direct => {
            if n_vars > DIRECT_MAX_VARS || max_degree > DIRECT_MAX_DEGREE {
                return Err(InnerError::CostGuard(format!(
                    "direct expansion needs N <= {DIRECT_MAX_VARS} and degree <= {DIRECT_MAX_DEGREE}"
                )));
            }
            direct_kernel(kind, n_vars, max_degree, max_fermions)
        }
        KernelMode::PTensorP => {
            let mut out = SuperPoly::zero(2 * n_vars);
            for (lambda, flip) in sectors(max_degree, max_fermions, None) {
                let mut c = lambda.z_beta().inv()?;
                if kind == KernelKind::Inverse {
                    c = &c * &RatFunc::from_int(lambda.omega() as i64);
                }
                let x = power_sum_poly(&lambda, n_vars).embed(2 * n_vars, 0);
                let y = power_sum_poly(&lambda, n_vars).embed(2 * n_vars, n_vars);
                out.add_assign(&x.mul(&y).scale(&(&c * &flip)));
                symbolic.push((lambda, c));
            }
            out
        }
        KernelMode::MTensorG => {
            if kind == KernelKind::Inverse {
                return Err(InnerError::CostGuard("the inverse kernel has no m⊗g form".into()));
            }
            let mut out = SuperPoly::zero(2 * n_vars);
            for (lambda, flip) in sectors(max_degree, max_fermions, None) {
                symbolic.push((lambda.clone(), RatFunc::one()));
                if lambda.length() > n_vars {
                    continue;
                }
                let x = SuperPoly::monomial(&lambda, n_vars)?.embed(2 * n_vars, 0);
                let g = BasisExpansion::single(Basis::G, lambda.clone()).to_superpoly(n_vars)?;
                let y = g.embed(2 * n_vars, n_vars);
                out.add_assign(&x.mul(&y).scale(&flip));
            }
            out
        }
    };
    Ok(KernelExpansion {
        mode,
        kind,
        n_vars,
        max_degree,
        max_fermions,
        symbolic,
        poly,
    })
}

/// Superpartitions up to the bounds, with the reversal sign that turns the
/// left-arrow product into the standard one.
fn sectors(max_degree: u32, max_fermions: u32, max_length: Option<usize>) -> Vec<(SuperPartition, RatFunc)> {
    let mut out = Vec::new();
    for n in 0..=max_degree {
        for m in 0..=max_fermions {
            for lambda in enumerate(n, m, max_length) {
                out.push((lambda, RatFunc::from_int(reversal_sign(m as usize))));
            }
        }
    }
    out
}

fn direct_kernel(kind: KernelKind, n_vars: usize, max_degree: u32, max_fermions: u32) -> SuperPoly {
    let total = 2 * n_vars;
    let x_mask: u32 = (1u32 << n_vars) - 1;
    let keep = |mono: &Monomial| {
        mono.exps[..n_vars].iter().sum::<i32>() <= max_degree as i32
            && (mono.theta & x_mask).count_ones() <= max_fermions
    };
    let series: Vec<RatFunc> = (0..=max_degree + 1)
        .map(|k| match kind {
            KernelKind::Cauchy => crate::coefficients::beta_binomial(k),
            KernelKind::Inverse => {
                &falling_factorial(&RatFunc::beta(), k) / &RatFunc::from_bigint(factorial(k))
            }
        })
        .collect();
    let mut out = SuperPoly::one(total);
    for i in 0..n_vars {
        for j in 0..n_vars {
            let mut factor = SuperPoly::zero(total);
            for k in 0..=max_degree + 1 {
                if k <= max_degree {
                    let mut exps = vec![0; total];
                    exps[i] = k as i32;
                    exps[n_vars + j] = k as i32;
                    factor.add_term(Monomial { theta: 0, exps }, series[k as usize].clone());
                }
                if k >= 1 && max_fermions >= 1 {
                    let mut exps = vec![0; total];
                    exps[i] = k as i32 - 1;
                    exps[n_vars + j] = k as i32 - 1;
                    let theta = (1u32 << i) | (1u32 << (n_vars + j));
                    let c = &series[k as usize] * &RatFunc::from_int(k as i64);
                    factor.add_term(Monomial { theta, exps }, c);
                }
            }
            out = out.mul_filtered(&factor, keep);
        }
    }
    out
}

/// Pairs a basis-presented kernel with `f` in the `x` variables, returning
/// the resulting function of `y` in `p`. A left-arrow factor `⃖u_Λ` pairs
/// with `f` as `u_Λ` does under the standard-order form.
pub fn reproduce(kernel: &KernelExpansion, f: &BasisExpansion) -> Result<BasisExpansion, InnerError> {
    let (n, m) = f.bidegree();
    let mut out = BasisExpansion::zero(Basis::P, n, m);
    for (lambda, c) in &kernel.symbolic {
        if lambda.bidegree() != (n, m) {
            continue;
        }
        let (left, right) = match kernel.mode {
            KernelMode::PTensorP => (Basis::P, Basis::P),
            KernelMode::MTensorG => (Basis::M, Basis::G),
            KernelMode::Direct => return Err(InnerError::CostGuard("direct kernels carry no basis pairing".into())),
        };
        let pairing = form_beta(&BasisExpansion::single(left, lambda.clone()), f, &BetaMode::Symbolic)?;
        let weight = c * &pairing;
        if weight.is_zero() {
            continue;
        }
        let y_part = convert(&BasisExpansion::single(right, lambda.clone()), Basis::P)?;
        out = out.add(&y_part.scale(&weight))?;
    }
    Ok(out)
}

type WeightCache = RwLock<HashMap<(usize, u32), Arc<SuperPoly>>>;

/// `∏_{j<k} (2 - x_j/x_k - x_k/x_j)^b`, the density of the physical product.
pub fn physical_weight(n_vars: usize, beta: u32) -> Arc<SuperPoly> {
    static CACHE: OnceLock<WeightCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.read().expect("weight cache poisoned").get(&(n_vars, beta)) {
        return hit.clone();
    }
    let mut w = SuperPoly::one(n_vars);
    for j in 0..n_vars {
        for k in j + 1..n_vars {
            let mut factor = SuperPoly::constant(n_vars, RatFunc::from_int(2));
            let mut up = vec![0; n_vars];
            up[j] = 1;
            up[k] = -1;
            let down: Vec<i32> = up.iter().map(|e| -e).collect();
            factor.add_term(Monomial { theta: 0, exps: up }, RatFunc::from_int(-1));
            factor.add_term(Monomial { theta: 0, exps: down }, RatFunc::from_int(-1));
            w = w.mul(&factor.pow(beta));
        }
    }
    let w = Arc::new(w);
    cache
        .write()
        .expect("weight cache poisoned")
        .insert((n_vars, beta), w.clone());
    w
}

/// Constant-term scalar product for a positive integer `b`. Components with
/// different anticommuting index sets are orthogonal.
pub fn physical_form(f: &SuperPoly, g: &SuperPoly, n_vars: usize, beta: &BigRat) -> Result<RatFunc, InnerError> {
    if !beta.is_integer() || !beta.is_positive() {
        return Err(InnerError::NonIntegerBeta);
    }
    let b: u32 = u32::try_from(beta.to_integer()).map_err(|_| InnerError::NonIntegerBeta)?;
    for p in [f, g] {
        if p.n_vars() != n_vars {
            return Err(PolyError::VariableMismatch(p.n_vars(), n_vars).into());
        }
        if !p.is_symmetric() {
            return Err(PolyError::NotSymmetric.into());
        }
    }
    let f = f.at_beta(beta)?;
    let g = g.at_beta(beta)?;
    let w = physical_weight(n_vars, b);
    let mut by_theta: HashMap<u32, Vec<(&Monomial, &RatFunc)>> = HashMap::new();
    for (k, c) in g.terms() {
        by_theta.entry(k.theta).or_default().push((k, c));
    }
    let mut total = BigRat::zero();
    for (kf, cf) in f.terms() {
        let Some(list) = by_theta.get(&kf.theta) else {
            continue;
        };
        let cf = cf.as_constant().expect("evaluated at a number");
        for (kg, cg) in list {
            let shift: Vec<i32> = kg.exps.iter().zip(&kf.exps).map(|(a, b)| a - b).collect();
            let wc = w.coeff(0, &shift);
            if wc.is_zero() {
                continue;
            }
            let wc = wc.as_constant().expect("integer weight");
            total += &cf * cg.as_constant().expect("evaluated at a number") * wc;
        }
    }
    Ok(RatFunc::from_rat(&total))
}

/// `⟨⟨g_Λ|m_Ω⟩⟩_b = δ` and `⟨⟨h_Λ|m_Ω⟩⟩ = δ` on every sector up to the bounds,
/// as Gram matrices `T(X→p) Z T(m→p)ᵀ`.
pub fn duality_check(n_max: u32, m_max: u32) -> Result<Report, InnerError> {
    let mut report = Report::new();
    for n in 0..=n_max {
        for m in 0..=m_max {
            let index = enumerate(n, m, None);
            if index.is_empty() {
                continue;
            }
            let mp = transition(Basis::M, Basis::P, n, m)?;
            for (basis, mode) in [(Basis::G, BetaMode::Symbolic), (Basis::H, BetaMode::One)] {
                let xp = transition(basis, Basis::P, n, m)?;
                let weights: Vec<RatFunc> = index
                    .iter()
                    .map(|sp| match mode {
                        BetaMode::Symbolic => sp.z_beta(),
                        _ => RatFunc::from_bigint(sp.z()),
                    })
                    .collect();
                let mut ok = true;
                for (i, row) in xp.entries().iter().enumerate() {
                    for (j, col) in mp.entries().iter().enumerate() {
                        let mut s = RatFunc::zero();
                        for k in 0..index.len() {
                            if !row[k].is_zero() && !col[k].is_zero() {
                                s = &s + &(&(&row[k] * &col[k]) * &weights[k]);
                            }
                        }
                        ok &= if i == j { s.is_one() } else { s.is_zero() };
                    }
                }
                let name = match basis {
                    Basis::G => "g dual to m under the deformed product",
                    _ => "h dual to m under the undeformed product",
                };
                report.record(format!("{name}, ({n}|{m})"), ok, "");
            }
        }
    }
    Ok(report)
}

fn rows_scaled(t: &[Vec<RatFunc>], diag: &[RatFunc]) -> Vec<Vec<RatFunc>> {
    t.iter()
        .map(|row| row.iter().zip(diag).map(|(a, d)| a * d).collect())
        .collect()
}

/// `ω̂` swaps `e` and `h`, acts by `ω_Λ` on `p`, and `ω̂_{1/b}` sends `g` to
/// `e`, all read off the transition matrices.
pub fn involution_check(n_max: u32, m_max: u32) -> Result<Report, InnerError> {
    let mut report = Report::new();
    let inv_beta = RatFunc::beta().inv()?;
    for n in 0..=n_max {
        for m in 0..=m_max {
            let index = enumerate(n, m, None);
            if index.is_empty() {
                continue;
            }
            let omega: Vec<RatFunc> = index.iter().map(|sp| RatFunc::from_int(sp.omega() as i64)).collect();
            let omega_dual: Vec<RatFunc> = index.iter().map(|sp| sp.omega_alpha(&inv_beta)).collect();
            let ep = transition(Basis::E, Basis::P, n, m)?;
            let hp = transition(Basis::H, Basis::P, n, m)?;
            let gp = transition(Basis::G, Basis::P, n, m)?;
            let pe = transition(Basis::P, Basis::E, n, m)?;
            report.record(
                format!("involution maps e to h, ({n}|{m})"),
                rows_scaled(ep.entries(), &omega) == hp.entries(),
                "",
            );
            report.record(
                format!("involution maps h to e, ({n}|{m})"),
                rows_scaled(hp.entries(), &omega) == ep.entries(),
                "",
            );
            let through_e = crate::bases::mat_mul(pe.entries(), hp.entries());
            let diagonal = through_e.iter().enumerate().all(|(i, row)| {
                row.iter()
                    .enumerate()
                    .all(|(j, c)| if i == j { *c == omega[i] } else { c.is_zero() })
            });
            report.record(format!("involution acts on p by its sign, ({n}|{m})"), diagonal, "");
            report.record(
                format!("deformed involution maps g to e, ({n}|{m})"),
                rows_scaled(gp.entries(), &omega_dual) == ep.entries(),
                "",
            );
        }
    }
    Ok(report)
}

/// All kernel presentations agree after realization, and the basis
/// presentations reproduce every `p` and `m` element of each sector.
pub fn kernel_check(n_vars: usize, max_degree: u32, max_fermions: u32) -> Result<Report, InnerError> {
    let mut report = Report::new();
    let pp = kernel_expand(KernelMode::PTensorP, KernelKind::Cauchy, n_vars, max_degree, max_fermions)?;
    let mg = kernel_expand(KernelMode::MTensorG, KernelKind::Cauchy, n_vars, max_degree, max_fermions)?;
    let direct = kernel_expand(KernelMode::Direct, KernelKind::Cauchy, n_vars, max_degree, max_fermions)?;
    let bounds = format!("N={n_vars}, degree {max_degree}, fermions {max_fermions}");
    report.record(format!("p⊗p kernel equals the direct product, {bounds}"), pp.poly == direct.poly, "");
    report.record(format!("m⊗g kernel equals the direct product, {bounds}"), mg.poly == direct.poly, "");
    let inv_pp = kernel_expand(KernelMode::PTensorP, KernelKind::Inverse, n_vars, max_degree, max_fermions)?;
    let inv_direct = kernel_expand(KernelMode::Direct, KernelKind::Inverse, n_vars, max_degree, max_fermions)?;
    report.record(
        format!("sign-twisted p⊗p sum equals the inverse kernel, {bounds}"),
        inv_pp.poly == inv_direct.poly,
        "",
    );
    for n in 0..=max_degree {
        for m in 0..=max_fermions {
            let mut ok = true;
            for lambda in enumerate(n, m, None) {
                for basis in [Basis::P, Basis::M] {
                    let f = BasisExpansion::single(basis, lambda.clone());
                    let target = convert(&f, Basis::P)?;
                    ok &= reproduce(&pp, &f)? == target;
                    ok &= reproduce(&mg, &f)? == target;
                }
            }
            report.record(format!("kernels reproduce p and m elements, ({n}|{m})"), ok, "");
        }
    }
    Ok(report)
}

/// Integer content helper for the physical weight tests.
pub fn weight_constant_term(n_vars: usize, beta: u32) -> BigInt {
    let w = physical_weight(n_vars, beta);
    let c = w.coeff(0, &vec![0; n_vars]);
    c.as_constant().map(|q| q.to_integer()).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SuperPartition {
        s.parse().unwrap()
    }

    fn rat(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn small_forms() {
        let p1 = BasisExpansion::single(Basis::P, sp(";1"));
        assert_eq!(form_beta(&p1, &p1, &BetaMode::Symbolic).unwrap(), rat("1/b"));
        let a = BasisExpansion::single(Basis::P, sp("0;"));
        let b = BasisExpansion::single(Basis::P, sp("2;"));
        assert!(form_beta(&a, &b, &BetaMode::Symbolic).unwrap().is_zero());
        let g1 = BasisExpansion::single(Basis::G, sp(";1"));
        let m1 = BasisExpansion::single(Basis::M, sp(";1"));
        assert_eq!(form_beta(&g1, &m1, &BetaMode::Symbolic).unwrap(), RatFunc::one());
        let two = BigRat::from_integer(2.into());
        assert_eq!(form_beta(&p1, &p1, &BetaMode::At(two)).unwrap(), rat("1/2"));
    }

    #[test]
    fn omega_examples() {
        let p0 = BasisExpansion::single(Basis::P, sp("0;"));
        assert_eq!(omega_alpha(&p0, &RatFunc::one()).unwrap(), p0);
        let e2 = BasisExpansion::single(Basis::E, sp(";2"));
        let h2 = convert(&BasisExpansion::single(Basis::H, sp(";2")), Basis::P).unwrap();
        assert_eq!(omega_alpha(&e2, &RatFunc::one()).unwrap(), h2);
        let inv = RatFunc::beta().inv().unwrap();
        let gt = BasisExpansion::single(Basis::G, sp("2;"));
        let et = convert(&BasisExpansion::single(Basis::E, sp("2;")), Basis::P).unwrap();
        assert_eq!(omega_alpha(&gt, &inv).unwrap(), et);
        assert_eq!(omega_alpha(&gt, &RatFunc::zero()), Err(InnerError::ZeroAlpha));
        let f = convert(&BasisExpansion::single(Basis::M, sp("1,0;2")), Basis::P).unwrap();
        let back = omega_alpha(&omega_alpha(&f, &RatFunc::beta()).unwrap(), &inv).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn low_degree_kernel_terms() {
        for mode in [KernelMode::PTensorP, KernelMode::MTensorG, KernelMode::Direct] {
            let k = kernel_expand(mode, KernelKind::Cauchy, 2, 1, 1).unwrap();
            assert_eq!(k.poly.coeff(0, &[0, 0, 0, 0]), RatFunc::one());
            assert_eq!(k.poly.coeff(0, &[1, 0, 0, 1]), RatFunc::beta());
            assert_eq!(k.poly.coeff(0b0101, &[0, 0, 0, 0]), RatFunc::beta());
        }
    }

    #[test]
    fn kernels_agree() {
        let report = kernel_check(2, 3, 2).unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn cost_guard() {
        assert!(matches!(
            kernel_expand(KernelMode::Direct, KernelKind::Cauchy, 5, 2, 1),
            Err(InnerError::CostGuard(_))
        ));
    }

    #[test]
    fn physical_examples() {
        let one = BigRat::one();
        let c = SuperPoly::one(2);
        assert_eq!(physical_form(&c, &c, 2, &one).unwrap(), rat("2"));
        let m1 = SuperPoly::monomial(&sp(";1"), 2).unwrap();
        assert_eq!(physical_form(&m1, &m1, 2, &one).unwrap(), rat("2"));
        let half = BigRat::new(1.into(), 2.into());
        assert_eq!(physical_form(&c, &c, 2, &half), Err(InnerError::NonIntegerBeta));
        let lopsided = SuperPoly::x(2, 0);
        assert!(physical_form(&lopsided, &c, 2, &one).is_err());
        assert_eq!(weight_constant_term(3, 1), BigInt::from(6));
    }

    #[test]
    fn mismatched_theta_sets_are_orthogonal() {
        let one = BigRat::one();
        let f = SuperPoly::monomial(&sp("1;"), 2).unwrap();
        let g = SuperPoly::monomial(&sp("1;"), 2).unwrap();
        let sym = physical_form(&f, &g, 2, &one).unwrap();
        assert!(!sym.is_zero());
        let a = SuperPoly::theta(2, 0).x_mul(0, 1);
        let b = SuperPoly::theta(2, 1).x_mul(1, 1);
        let w = physical_weight(2, 1);
        let mut cross = RatFunc::zero();
        for (ka, ca) in a.terms() {
            for (kb, cb) in b.terms() {
                if ka.theta == kb.theta {
                    let shift: Vec<i32> = kb.exps.iter().zip(&ka.exps).map(|(x, y)| x - y).collect();
                    cross = &cross + &(&(ca * cb) * &w.coeff(0, &shift));
                }
            }
        }
        assert!(cross.is_zero());
    }

    #[test]
    fn dualities_small() {
        let report = duality_check(3, 2).unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn involution_small() {
        let report = involution_check(4, 2).unwrap();
        assert!(report.all_passed(), "{report}");
    }
}
