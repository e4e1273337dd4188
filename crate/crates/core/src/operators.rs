//! Dunkl-Cherednik operators, the conserved charges `H_r` and `I_s`, the
//! supercharges, the power-sum forms of `H` and `I`, and their eigenvalues.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::bases::{convert, transition, Basis, BasisExpansion};
use crate::coefficients::{factorial, RatFunc};
use crate::error::{OperatorError, PolyError};
use crate::superpartition::{enumerate, SuperPartition};
use crate::superpoly::{Exchange, Monomial, SuperPoly};
use crate::inner::{form_beta, kernel_expand, BetaMode, KernelKind, KernelMode};
use crate::report::Report;
use crate::superpartition::{order_leq, OrderKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Variables `offset..offset + len` of a larger polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub offset: usize,
    pub len: usize,
}

impl Block {
    pub fn whole(n_vars: usize) -> Self {
        Block {
            offset: 0,
            len: n_vars,
        }
    }
}

/// The operators that preserve symmetric superpolynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conserved {
    Hr(usize),
    Is(usize),
    H,
    I,
    Q,
    Qdag,
}

impl fmt::Display for Conserved {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conserved::Hr(r) => write!(f, "Hr:{r}"),
            Conserved::Is(s) => write!(f, "Is:{s}"),
            Conserved::H => f.write_str("H"),
            Conserved::I => f.write_str("I"),
            Conserved::Q => f.write_str("Q"),
            Conserved::Qdag => f.write_str("Qdag"),
        }
    }
}

impl FromStr for Conserved {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let param = |rest: &str| rest.parse::<usize>().map_err(|e| format!("bad operator parameter {rest:?}: {e}"));
        match s {
            "H" => Ok(Conserved::H),
            "I" => Ok(Conserved::I),
            "Q" => Ok(Conserved::Q),
            "Qdag" => Ok(Conserved::Qdag),
            _ => {
                if let Some(rest) = s.strip_prefix("Hr:") {
                    Ok(Conserved::Hr(param(rest)?))
                } else if let Some(rest) = s.strip_prefix("Is:") {
                    Ok(Conserved::Is(param(rest)?))
                } else {
                    Err(format!("unknown operator {s:?}"))
                }
            }
        }
    }
}

fn check_block(f: &SuperPoly, block: Block) -> Result<(), OperatorError> {
    if block.offset + block.len > f.n_vars() {
        return Err(PolyError::IndexOutOfRange {
            index: block.offset + block.len,
            vars: f.n_vars(),
        }
        .into());
    }
    Ok(())
}

fn int(k: i64) -> RatFunc {
    RatFunc::from_int(k)
}

/// `𝒟_j f` for `j` in `1..=N`, with `K` exchanging commuting variables only.
pub fn dunkl_apply(j: usize, f: &SuperPoly) -> Result<SuperPoly, OperatorError> {
    dunkl_block(j, f, Block::whole(f.n_vars()))
}

/// `𝒟_j` acting on the variables of `block`.
pub fn dunkl_block(j: usize, f: &SuperPoly, block: Block) -> Result<SuperPoly, OperatorError> {
    check_block(f, block)?;
    if j == 0 || j > block.len {
        return Err(OperatorError::ParameterRange {
            name: "j",
            value: j,
            max: block.len,
        });
    }
    let local = j - 1;
    let jj = block.offset + local;
    let mut exchange_part = SuperPoly::zero(f.n_vars());
    for k in 0..block.len {
        if k == local {
            continue;
        }
        let kk = block.offset + k;
        let antisym = f.sub(&f.exchange(Exchange::X, jj, kk)?);
        if antisym.is_zero() {
            continue;
        }
        let quotient = antisym.div_difference(jj, kk)?;
        let lifted = if k < local {
            quotient.x_mul(jj, 1)
        } else {
            quotient.x_mul(kk, 1)
        };
        exchange_part.add_assign(&lifted);
    }
    let beta = RatFunc::beta();
    let mut out = f.euler(jj);
    out.add_assign(&exchange_part.scale(&beta));
    if local > 0 {
        out.add_assign(&f.scale(&(&beta * &int(-(local as i64)))));
    }
    Ok(out)
}

fn dunkl_power(j: usize, f: &SuperPoly, power: usize, block: Block) -> Result<SuperPoly, OperatorError> {
    let mut g = f.clone();
    for _ in 0..power {
        g = dunkl_block(j, &g, block)?;
    }
    Ok(g)
}

fn power_sum_of_dunkl(f: &SuperPoly, power: usize, block: Block) -> Result<SuperPoly, OperatorError> {
    let mut out = SuperPoly::zero(f.n_vars());
    for j in 1..=block.len {
        out.add_assign(&dunkl_power(j, f, power, block)?);
    }
    Ok(out)
}

fn fermionic_charge(f: &SuperPoly, power: usize, block: Block) -> Result<SuperPoly, OperatorError> {
    let first = block.offset;
    let g = dunkl_power(1, f, power, block)?.theta_derivative(first).theta_mul(first);
    let mut out = g.clone();
    for i in 1..block.len {
        out.add_assign(&g.exchange(Exchange::Both, first, first + i)?);
    }
    Ok(out)
}

fn require_symmetric(f: &SuperPoly) -> Result<(), OperatorError> {
    if f.is_symmetric() {
        Ok(())
    } else {
        Err(PolyError::NotSymmetric.into())
    }
}

/// Applies a conserved operator to a symmetric superpolynomial.
pub fn conserved_apply(op: Conserved, f: &SuperPoly) -> Result<SuperPoly, OperatorError> {
    require_symmetric(f)?;
    conserved_block(op, f, Block::whole(f.n_vars()))
}

/// Applies a conserved operator on the variables of `block`; `f` must be
/// symmetric in that block.
pub fn conserved_block(op: Conserved, f: &SuperPoly, block: Block) -> Result<SuperPoly, OperatorError> {
    check_block(f, block)?;
    let n = block.len;
    match op {
        Conserved::Hr(r) => {
            if r == 0 || r > n {
                return Err(OperatorError::ParameterRange {
                    name: "r",
                    value: r,
                    max: n,
                });
            }
            power_sum_of_dunkl(f, r, block)
        }
        Conserved::Is(s) => {
            if s >= n {
                return Err(OperatorError::ParameterRange {
                    name: "s",
                    value: s,
                    max: n.saturating_sub(1),
                });
            }
            fermionic_charge(f, s, block)
        }
        Conserved::H => {
            let beta = RatFunc::beta();
            let nn = n as i64;
            let h2 = power_sum_of_dunkl(f, 2, block)?;
            let h1 = power_sum_of_dunkl(f, 1, block)?;
            let shift = &beta * &int(nn - 1);
            let cst = &(&beta.pow(2) * &int(nn * (nn - 1) * (2 - nn))) / &int(6);
            let mut out = h2;
            out.add_assign(&h1.scale(&shift));
            out.add_assign(&f.scale(&-cst));
            Ok(out)
        }
        Conserved::I => fermionic_charge(f, 1, block),
        Conserved::Q => {
            let mut out = SuperPoly::zero(f.n_vars());
            for i in block.offset..block.offset + n {
                out.add_assign(&f.euler(i).theta_mul(i));
            }
            Ok(out)
        }
        Conserved::Qdag => {
            let mut out = SuperPoly::zero(f.n_vars());
            for i in block.offset..block.offset + n {
                out.add_assign(&f.euler(i).theta_derivative(i));
            }
            let mut pairs = SuperPoly::zero(f.n_vars());
            for i in block.offset..block.offset + n {
                for j in i + 1..block.offset + n {
                    let diff = f.theta_derivative(i).sub(&f.theta_derivative(j));
                    if diff.is_zero() {
                        continue;
                    }
                    let q = diff.div_difference(i, j)?;
                    pairs.add_assign(&q.x_mul(i, 1));
                    pairs.add_assign(&q.x_mul(j, 1));
                }
            }
            out.add_assign(&pairs.scale(&RatFunc::beta()));
            Ok(out)
        }
    }
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in all_permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

const LITERAL_MAX_VARS: usize = 6;

/// `I_s` as the literal average `(1/(N-1)!) Σ_σ 𝒦_σ (θ_1∂_{θ_1} 𝒟_1^s) 𝒦_σ^{-1}`.
pub fn literal_is_apply(s: usize, f: &SuperPoly) -> Result<SuperPoly, OperatorError> {
    let n = f.n_vars();
    if n > LITERAL_MAX_VARS {
        return Err(OperatorError::TooManyVariables(n));
    }
    if s >= n {
        return Err(OperatorError::ParameterRange {
            name: "s",
            value: s,
            max: n.saturating_sub(1),
        });
    }
    let mut out = SuperPoly::zero(n);
    for sigma in all_permutations(n) {
        let mut inverse = vec![0; n];
        for (i, &v) in sigma.iter().enumerate() {
            inverse[v] = i;
        }
        let pulled = f.permute(&inverse);
        let acted = dunkl_power(1, &pulled, s, Block::whole(n))?
            .theta_derivative(0)
            .theta_mul(0);
        out.add_assign(&acted.permute(&sigma));
    }
    let norm = RatFunc::from_bigint(factorial(n as u32 - 1)).inv().expect("factorial is nonzero");
    Ok(out.scale(&norm))
}

/// The power-sum forms of `H` and `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PSpaceOp {
    H,
    I,
}

/// A power-sum monomial: decreasing fermionic indices and a bosonic
/// multiset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct PWord {
    fermions: Vec<u32>,
    bosons: BTreeMap<u32, u32>,
}

impl PWord {
    fn from_sp(sp: &SuperPartition) -> Self {
        let mut bosons = BTreeMap::new();
        for &s in sp.sym() {
            *bosons.entry(s).or_insert(0) += 1;
        }
        PWord {
            fermions: sp.antisym().to_vec(),
            bosons,
        }
    }

    fn to_sp(&self) -> SuperPartition {
        let mut sym = Vec::new();
        for (&v, &c) in self.bosons.iter().rev() {
            sym.extend(std::iter::repeat(v).take(c as usize));
        }
        SuperPartition::new(self.fermions.clone(), sym).expect("fermions kept strictly decreasing")
    }

    /// `∂/∂p_k`, returning the multiplicity.
    fn d_boson(&self, k: u32) -> Option<(i64, PWord)> {
        let c = *self.bosons.get(&k)?;
        let mut w = self.clone();
        if c == 1 {
            w.bosons.remove(&k);
        } else {
            w.bosons.insert(k, c - 1);
        }
        Some((c as i64, w))
    }

    fn mul_boson(&self, k: u32) -> PWord {
        let mut w = self.clone();
        *w.bosons.entry(k).or_insert(0) += 1;
        w
    }

    /// Left derivative `∂/∂p̃_k`, returning the sign.
    fn d_fermion(&self, k: u32) -> Option<(i64, PWord)> {
        let pos = self.fermions.iter().position(|&a| a == k)?;
        let mut w = self.clone();
        w.fermions.remove(pos);
        Some((if pos % 2 == 0 { 1 } else { -1 }, w))
    }

    /// Left multiplication by `p̃_k`, returning the sign.
    fn mul_fermion(&self, k: u32) -> Option<(i64, PWord)> {
        if self.fermions.contains(&k) {
            return None;
        }
        let pos = self.fermions.iter().take_while(|&&a| a > k).count();
        let mut w = self.clone();
        w.fermions.insert(pos, k);
        Some((if pos % 2 == 0 { 1 } else { -1 }, w))
    }
}

fn add_into(out: &mut BTreeMap<PWord, RatFunc>, w: PWord, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    let slot = out.entry(w).or_insert_with(RatFunc::zero);
    *slot = &*slot + &c;
}

fn apply_h(word: &PWord, n_vars: i64, out: &mut BTreeMap<PWord, RatFunc>) {
    let beta = RatFunc::beta();
    let diag = |n: i64| &int(n * n) + &(&beta * &int(n * (n_vars - n)));
    let mut d = RatFunc::zero();
    for (&v, &c) in &word.bosons {
        d = &d + &(&diag(v as i64) * &int(c as i64));
    }
    for &a in &word.fermions {
        d = &d + &diag(a as i64);
    }
    add_into(out, word.clone(), d);
    for &k in word.bosons.keys() {
        let (c, rest) = word.d_boson(k).expect("present");
        for m in 1..k {
            let w = rest.mul_boson(k - m).mul_boson(m);
            add_into(out, w, &beta * &int(k as i64 * c));
        }
    }
    for &k in &word.fermions {
        let (s, rest) = word.d_fermion(k).expect("present");
        for m in 1..k {
            if let Some((t, w)) = rest.mul_fermion(m) {
                add_into(out, w.mul_boson(k - m), &beta * &int(2 * m as i64 * s * t));
            }
        }
    }
    for &m in word.bosons.keys() {
        let (cm, once) = word.d_boson(m).expect("present");
        for &n in once.bosons.keys() {
            let (cn, twice) = once.d_boson(n).expect("present");
            add_into(out, twice.mul_boson(m + n), int(m as i64 * n as i64 * cm * cn));
        }
    }
    for &n in word.bosons.keys() {
        let (c, once) = word.d_boson(n).expect("present");
        for &m in &once.fermions {
            if m == 0 {
                continue;
            }
            let (s, twice) = once.d_fermion(m).expect("present");
            if let Some((t, w)) = twice.mul_fermion(m + n) {
                add_into(out, w, int(2 * m as i64 * n as i64 * c * s * t));
            }
        }
    }
}

fn apply_i(word: &PWord, out: &mut BTreeMap<PWord, RatFunc>) {
    let beta = RatFunc::beta();
    let one_minus = &RatFunc::one() - &beta;
    let weight: i64 = word.fermions.iter().map(|&a| a as i64).sum();
    add_into(out, word.clone(), &one_minus * &int(weight));
    let half_beta = &beta / &int(2);
    for &n in &word.fermions {
        let (s1, once) = word.d_fermion(n).expect("present");
        for &m in &once.fermions {
            let (s2, twice) = once.d_fermion(m).expect("present");
            if let Some((t1, w1)) = twice.mul_fermion(n) {
                if let Some((t2, w2)) = w1.mul_fermion(m) {
                    add_into(out, w2, &half_beta * &int(s1 * s2 * t1 * t2));
                }
            }
        }
    }
    for &n in word.bosons.keys() {
        let (c, once) = word.d_boson(n).expect("present");
        for &m in &once.fermions {
            let (s, twice) = once.d_fermion(m).expect("present");
            if let Some((t, w)) = twice.mul_fermion(m + n) {
                add_into(out, w, int(n as i64 * c * s * t));
            }
        }
    }
    for &k in &word.fermions {
        let (s, rest) = word.d_fermion(k).expect("present");
        for m in 0..k {
            if let Some((t, w)) = rest.mul_fermion(m) {
                add_into(out, w.mul_boson(k - m), &beta * &int(s * t));
            }
        }
    }
}

/// Applies the power-sum form of `H` or `I` with `N` variables.
pub fn pspace_apply(op: PSpaceOp, f: &BasisExpansion, n_vars: usize) -> Result<BasisExpansion, OperatorError> {
    let fp = convert(f, Basis::P)?;
    let (n, m) = fp.bidegree();
    let mut out: BTreeMap<PWord, RatFunc> = BTreeMap::new();
    for (sp, c) in fp.coeffs() {
        if let Some(&big) = sp.sym().iter().find(|&&s| s as usize > n_vars) {
            return Err(OperatorError::Truncation(format!("p_{big} with N = {n_vars}")));
        }
        if let Some(&big) = sp.antisym().iter().find(|&&a| a as usize + 1 > n_vars) {
            return Err(OperatorError::Truncation(format!("fermionic p_{big} with N = {n_vars}")));
        }
        let mut local = BTreeMap::new();
        let word = PWord::from_sp(sp);
        match op {
            PSpaceOp::H => apply_h(&word, n_vars as i64, &mut local),
            PSpaceOp::I => apply_i(&word, &mut local),
        }
        for (w, v) in local {
            add_into(&mut out, w, c * &v);
        }
    }
    let terms = out.into_iter().map(|(w, c)| (w.to_sp(), c));
    Ok(BasisExpansion::from_terms(Basis::P, n, m, terms)?)
}

/// Matrix of a power-sum operator on the `m` basis of `SPar(n|m)`: row `Λ`
/// holds the `m` expansion of the image of `m_Λ`.
pub fn monomial_matrix(op: PSpaceOp, n: u32, m: u32, n_vars: usize) -> Result<Vec<Vec<RatFunc>>, OperatorError> {
    let index = enumerate(n, m, None);
    let to_p = transition(Basis::M, Basis::P, n, m)?;
    let from_p = transition(Basis::P, Basis::M, n, m)?;
    let mut in_p = Vec::with_capacity(index.len());
    for sp in &index {
        let image = pspace_apply(op, &BasisExpansion::single(Basis::P, sp.clone()), n_vars)?;
        in_p.push(index.iter().map(|o| image.coeff(o)).collect::<Vec<_>>());
    }
    let through = crate::bases::mat_mul(to_p.entries(), &in_p);
    Ok(crate::bases::mat_mul(&through, from_p.entries()))
}

/// The eigenvalues of `H` and `I` on `J_Λ` with `N` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalues {
    pub energy: RatFunc,
    pub fermionic: RatFunc,
}

pub fn eigenvalues(lambda: &SuperPartition, n_vars: usize) -> Result<Eigenvalues, OperatorError> {
    if lambda.length() > n_vars {
        return Err(OperatorError::TooFewVariables {
            length: lambda.length(),
            vars: n_vars,
        });
    }
    let beta = RatFunc::beta();
    let star = lambda.star();
    let nn = n_vars as i64;
    let mut energy = RatFunc::zero();
    for (idx, &part) in star.iter().enumerate() {
        let j = idx as i64 + 1;
        let part = part as i64;
        energy = &energy + &(&int(part * part) + &(&beta * &int((nn + 1 - 2 * j) * part)));
    }
    let m = lambda.m() as i64;
    let own: i64 = lambda.antisym().iter().map(|&a| a as i64).sum();
    let dual: i64 = lambda.conjugate().antisym().iter().map(|&a| a as i64).sum();
    let fermionic = &int(own) - &(&beta * &int(dual + m * (m - 1) / 2));
    Ok(Eigenvalues { energy, fermionic })
}

/// Random superpolynomial with small integer coefficients.
pub fn random_poly<R: Rng>(rng: &mut R, n_vars: usize, max_degree: i32, terms: usize) -> SuperPoly {
    let mut f = SuperPoly::zero(n_vars);
    for _ in 0..terms {
        let exps = (0..n_vars).map(|_| rng.gen_range(0..=max_degree)).collect();
        let theta = rng.gen_range(0..(1u32 << n_vars));
        let c = rng.gen_range(-4i64..=4);
        f.add_term(Monomial { theta, exps }, int(c));
    }
    f
}

/// Random combination of `m` basis elements of `SPar(n|m)`.
pub fn random_expansion<R: Rng>(rng: &mut R, basis: Basis, n: u32, m: u32) -> BasisExpansion {
    let terms = enumerate(n, m, None)
        .into_iter()
        .map(|sp| (sp, int(rng.gen_range(-3i64..=3))))
        .collect::<Vec<_>>();
    BasisExpansion::from_terms(basis, n, m, terms).expect("bidegree matches")
}

fn record_result(report: &mut Report, name: &str, result: Result<(bool, String), OperatorError>) {
    match result {
        Ok((ok, detail)) => report.record(name, ok, detail),
        Err(e) => report.record(name, false, e.to_string()),
    }
}

/// `[A, B] f = 0` for every pair drawn from `H_1..H_N` and `I_0..I_{N-1}`.
pub fn commuting_family_check(n_vars: usize, seed: u64) -> Result<(bool, String), OperatorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut family: Vec<Conserved> = (1..=n_vars).map(Conserved::Hr).collect();
    family.extend((0..n_vars).map(Conserved::Is));
    let mut inputs = Vec::new();
    for (n, m) in [(2, 1), (3, 0), (1, 2), (2, 2)] {
        let f = random_expansion(&mut rng, Basis::M, n, m);
        inputs.push(f.to_superpoly(n_vars)?);
    }
    let mut pairs = 0;
    for f in &inputs {
        let images = family
            .iter()
            .map(|&op| conserved_apply(op, f))
            .collect::<Result<Vec<_>, _>>()?;
        for (i, &a) in family.iter().enumerate() {
            for (j, &b) in family.iter().enumerate().skip(i + 1) {
                let ab = conserved_apply(a, &images[j])?;
                let ba = conserved_apply(b, &images[i])?;
                if ab != ba {
                    return Ok((false, format!("[{a}, {b}] nonzero")));
                }
                pairs += 1;
            }
        }
    }
    Ok((true, format!("{pairs} commutators at N = {n_vars}")))
}

/// The power-sum forms agree with the variable realizations.
pub fn pspace_realization_check(n_max: u32, m_max: u32, n_vars: usize) -> Result<(bool, String), OperatorError> {
    let mut count = 0;
    for n in 0..=n_max {
        for m in 0..=m_max {
            for lambda in enumerate(n, m, None) {
                if lambda.antisym().iter().any(|&a| a as usize >= n_vars)
                    || lambda.sym().iter().any(|&s| s as usize > n_vars)
                {
                    continue;
                }
                let f = BasisExpansion::single(Basis::P, lambda.clone());
                let poly = f.to_superpoly(n_vars)?;
                for (op, conserved) in [(PSpaceOp::H, Conserved::H), (PSpaceOp::I, Conserved::I)] {
                    let via_p = pspace_apply(op, &f, n_vars)?.to_superpoly(n_vars)?;
                    if via_p != conserved_apply(conserved, &poly)? {
                        return Ok((false, format!("{op:?} on p_{lambda}")));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok((true, format!("{count} power sums at N = {n_vars}")))
}

/// `⟨⟨A f|g⟩⟩ = ⟨⟨f|A g⟩⟩` for the power-sum forms on random pairs.
pub fn self_adjointness_check(n_max: u32, m_max: u32, seed: u64) -> Result<(bool, String), OperatorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mode = BetaMode::Symbolic;
    let mut count = 0;
    for n in 0..=n_max {
        for m in 0..=m_max {
            let n_vars = (n + m + 1) as usize;
            for _ in 0..3 {
                let f = random_expansion(&mut rng, Basis::P, n, m);
                let g = random_expansion(&mut rng, Basis::P, n, m);
                for op in [PSpaceOp::H, PSpaceOp::I] {
                    let left = form_beta(&pspace_apply(op, &f, n_vars)?, &g, &mode)?;
                    let right = form_beta(&f, &pspace_apply(op, &g, n_vars)?, &mode)?;
                    if left != right {
                        return Ok((false, format!("{op:?} at ({n}|{m})")));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok((true, format!("{count} random pairs")))
}

/// `𝒟_i K_{i,i+1} - K_{i,i+1} 𝒟_{i+1} = β` on random polynomials.
pub fn near_invariance_check(n_vars: usize, seed: u64) -> Result<(bool, String), OperatorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..4 {
        let f = random_poly(&mut rng, n_vars, 3, 6);
        for i in 1..n_vars {
            let swap = |g: &SuperPoly| g.exchange(Exchange::X, i - 1, i);
            let lhs = dunkl_apply(i, &swap(&f)?)?.sub(&swap(&dunkl_apply(i + 1, &f)?)?);
            if lhs != f.scale(&RatFunc::beta()) {
                return Ok((false, format!("i = {i}, trial {trial}")));
            }
        }
    }
    Ok((true, format!("N = {n_vars}")))
}

/// The commutators of Dunkl operators with multiplication by `x_k`, and
/// the mutual commutativity of the Dunkl operators.
pub fn dunkl_commutator_check(n_vars: usize, seed: u64) -> Result<(bool, String), OperatorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let beta = RatFunc::beta();
    for trial in 0..3 {
        let f = random_poly(&mut rng, n_vars, 2, 5);
        for i in 0..n_vars {
            let d = |g: &SuperPoly| dunkl_apply(i + 1, g);
            for k in 0..n_vars {
                let commutator = d(&f.x_mul(k, 1))?.sub(&d(&f)?.x_mul(k, 1));
                let expected = if i == k {
                    let mut e = f.x_mul(i, 1);
                    for j in 0..n_vars {
                        if j == i {
                            continue;
                        }
                        let swapped = f.exchange(Exchange::X, i, j)?;
                        e.add_assign(&swapped.x_mul(i.max(j), 1).scale(&beta));
                    }
                    e
                } else {
                    f.exchange(Exchange::X, i, k)?.x_mul(i.max(k), 1).scale(&-beta.clone())
                };
                if commutator != expected {
                    return Ok((false, format!("[D_{}, x_{}], trial {trial}", i + 1, k + 1)));
                }
            }
            for j in i + 1..n_vars {
                let a = dunkl_apply(i + 1, &dunkl_apply(j + 1, &f)?)?;
                let b = dunkl_apply(j + 1, &dunkl_apply(i + 1, &f)?)?;
                if a != b {
                    return Ok((false, format!("[D_{}, D_{}], trial {trial}", i + 1, j + 1)));
                }
            }
        }
    }
    Ok((true, format!("N = {n_vars}")))
}

/// `A^{(x)} K = A^{(y)} K` on the truncated kernel in `2N` variables.
pub fn kernel_intertwining_check(n_vars: usize, max_degree: u32, max_fermions: u32) -> Result<(bool, String), OperatorError> {
    let kernel = kernel_expand(KernelMode::Direct, KernelKind::Cauchy, n_vars, max_degree, max_fermions)
        ?;
    let x_block = Block { offset: 0, len: n_vars };
    let y_block = Block { offset: n_vars, len: n_vars };
    let mut ops: Vec<Conserved> = (1..=n_vars).map(Conserved::Hr).collect();
    ops.extend((0..n_vars).map(Conserved::Is));
    for op in &ops {
        let x_side = conserved_block(*op, &kernel.poly, x_block)?;
        let y_side = conserved_block(*op, &kernel.poly, y_block)?;
        if x_side != y_side {
            return Ok((false, format!("{op}")));
        }
    }
    Ok((true, format!("{} operators at N = {n_vars}", ops.len())))
}

/// `H` and `I` map `m_Λ` into the span of the Bruhat lower set of `Λ`.
pub fn triangular_action_check(n_max: u32, m_max: u32) -> Result<(bool, String), OperatorError> {
    let mut count = 0;
    for n in 0..=n_max {
        for m in 0..=m_max {
            let index = enumerate(n, m, None);
            let n_vars = (n + m) as usize;
            for op in [PSpaceOp::H, PSpaceOp::I] {
                let matrix = monomial_matrix(op, n, m, n_vars)?;
                for (r, row) in matrix.iter().enumerate() {
                    for (c, entry) in row.iter().enumerate() {
                        if !entry.is_zero() && !order_leq(OrderKind::Bruhat, &index[c], &index[r]) {
                            return Ok((false, format!("{op:?}: m_{} reaches m_{}", index[r], index[c])));
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    Ok((true, format!("{count} rows")))
}

/// All operator identities at the given sizes.
pub fn operator_check(seed: u64) -> Report {
    let mut report = Report::new();
    record_result(&mut report, "commuting family, N = 3", commuting_family_check(3, seed));
    record_result(&mut report, "power-sum forms match realizations", pspace_realization_check(4, 2, 3));
    record_result(&mut report, "self-adjointness up to (5|2)", self_adjointness_check(5, 2, seed));
    for n_vars in 2..=3 {
        record_result(&mut report, &format!("near-invariance, N = {n_vars}"), near_invariance_check(n_vars, seed));
        record_result(&mut report, &format!("Dunkl commutators, N = {n_vars}"), dunkl_commutator_check(n_vars, seed));
    }
    report
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

    fn realize(basis: Basis, s: &str, n_vars: usize) -> SuperPoly {
        BasisExpansion::single(basis, sp(s)).to_superpoly(n_vars).unwrap()
    }

    #[test]
    fn dunkl_on_constants() {
        let one = SuperPoly::one(2);
        assert!(dunkl_apply(1, &one).unwrap().is_zero());
        assert_eq!(dunkl_apply(2, &one).unwrap(), one.scale(&-RatFunc::beta()));
        assert!(matches!(dunkl_apply(3, &one), Err(OperatorError::ParameterRange { .. })));
    }

    #[test]
    fn dunkl_on_a_variable() {
        let x1 = SuperPoly::x(2, 0);
        let got = dunkl_apply(1, &x1).unwrap();
        let mut expected = x1.clone();
        expected.add_assign(&SuperPoly::x(2, 1).scale(&RatFunc::beta()));
        assert_eq!(got, expected);
    }

    #[test]
    fn dunkl_operators_commute() {
        let mut f = SuperPoly::zero(2);
        f.add_term(Monomial { theta: 0, exps: vec![3, 0] }, int(2));
        f.add_term(Monomial { theta: 0, exps: vec![1, 2] }, int(-1));
        f.add_term(Monomial { theta: 0b01, exps: vec![0, 2] }, int(5));
        let a = dunkl_apply(1, &dunkl_apply(2, &f).unwrap()).unwrap();
        let b = dunkl_apply(2, &dunkl_apply(1, &f).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn hamiltonian_on_p1() {
        for n in 2..=3usize {
            let p1 = realize(Basis::P, ";1", n);
            let expected = p1.scale(&(&RatFunc::one() + &(&RatFunc::beta() * &int(n as i64 - 1))));
            assert_eq!(conserved_apply(Conserved::H, &p1).unwrap(), expected);
        }
    }

    #[test]
    fn supercharges() {
        let one = SuperPoly::one(3);
        assert!(conserved_apply(Conserved::Q, &one).unwrap().is_zero());
        assert!(conserved_apply(Conserved::Qdag, &one).unwrap().is_zero());
        for s in ["0;1", "1;1", "2;", ";2,1", "1,0;1"] {
            let f = realize(Basis::M, s, 3);
            let q = |g: &SuperPoly| conserved_apply(Conserved::Q, g).unwrap();
            let qd = |g: &SuperPoly| conserved_apply(Conserved::Qdag, g).unwrap();
            let anti = q(&qd(&f)).add(&qd(&q(&f)));
            let h = conserved_apply(Conserved::H, &f).unwrap();
            let cst_free = h.sub(&anti);

            assert!(cst_free.is_zero(), "{s}");
            assert!(q(&q(&f)).is_zero());
            assert!(qd(&qd(&f)).is_zero());
        }
    }

    #[test]
    fn fermionic_charge_on_simple_monomial() {
        let f = realize(Basis::M, "0;", 3);
        assert!(conserved_apply(Conserved::I, &f).unwrap().is_zero());
    }

    #[test]
    fn coset_form_matches_literal() {
        for s in ["0;1", "1;1", "2,0;", "1,0;1", ";2"] {
            let f = realize(Basis::M, s, 3);
            for k in 0..3 {
                let coset = conserved_apply(Conserved::Is(k), &f).unwrap();
                let literal = literal_is_apply(k, &f).unwrap();
                assert_eq!(coset, literal, "{s}, s={k}");
            }
        }
    }

    #[test]
    fn pspace_examples() {
        let p1 = BasisExpansion::single(Basis::P, sp(";1"));
        let h = pspace_apply(PSpaceOp::H, &p1, 4).unwrap();
        assert_eq!(h, p1.scale(&rat("3*b+1")));
        let pt0 = BasisExpansion::single(Basis::P, sp("0;"));
        assert!(pspace_apply(PSpaceOp::I, &pt0, 3).unwrap().is_zero());
        let too_big = BasisExpansion::single(Basis::P, sp(";4"));
        assert!(matches!(pspace_apply(PSpaceOp::H, &too_big, 3), Err(OperatorError::Truncation(_))));
    }

    #[test]
    fn pspace_matches_realization() {
        let n_vars = 3;
        for (n, m) in [(1, 1), (2, 1), (2, 2), (3, 1), (1, 0), (3, 0)] {
            for lambda in enumerate(n, m, None) {
                let f = BasisExpansion::single(Basis::P, lambda.clone());
                if lambda.antisym().iter().any(|&a| a as usize >= n_vars) {
                    assert!(pspace_apply(PSpaceOp::H, &f, n_vars).is_err());
                    continue;
                }
                let poly = f.to_superpoly(n_vars).unwrap();
                for (op, conserved) in [(PSpaceOp::H, Conserved::H), (PSpaceOp::I, Conserved::I)] {
                    let via_p = pspace_apply(op, &f, n_vars).unwrap().to_superpoly(n_vars).unwrap();
                    let direct = conserved_apply(conserved, &poly).unwrap();
                    assert_eq!(via_p, direct, "{lambda} {op:?}");
                }
            }
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let e = eigenvalues(&sp("0;1"), 5).unwrap();
        assert_eq!(e.energy, rat("4*b+1"));
        assert_eq!(e.fermionic, rat("-b"));
        let e = eigenvalues(&sp("1,0;2"), 3).unwrap();
        assert_eq!(e.fermionic, rat("1-4*b"));
        let e = eigenvalues(&SuperPartition::bosonic(vec![2, 1]), 3).unwrap();
        assert_eq!(e.energy, rat("5+4*b"));
        assert!(eigenvalues(&sp("1,0;2"), 2).is_err());
    }

    #[test]
    fn eigenvalue_forms_agree() {
        let beta = RatFunc::beta();
        for n in 0..=6 {
            for m in 0..=3 {
                for lambda in enumerate(n, m, None) {
                    let nv = lambda.length() + 2;
                    let e = eigenvalues(&lambda, nv).unwrap();
                    let star = lambda.star();
                    let conj = crate::superpartition::conjugate_partition(&star);
                    let weighted = |parts: &[u32]| -> i64 {
                        parts.iter().enumerate().map(|(i, &c)| 2 * (i as i64 + 1) * c as i64).sum()
                    };
                    let nn = n as i64;
                    let alt = &(&int(weighted(&conj) - nn) - &(&beta * &int(weighted(&star))))
                        + &(&beta * &int(nn * (nv as i64 + 1)));
                    assert_eq!(e.energy, alt, "{lambda}");
                    let mm = m as i64;
                    let own: i64 = lambda.antisym().iter().map(|&a| a as i64).sum();
                    let counted = &int(own) - &(&beta * &int(mm * (mm - 1) + lambda.sharp() as i64));
                    assert_eq!(e.fermionic, counted, "{lambda}");
                }
            }
        }
    }

    #[test]
    fn near_invariance() {
        let mut f = SuperPoly::zero(3);
        f.add_term(Monomial { theta: 0, exps: vec![2, 0, 1] }, int(3));
        f.add_term(Monomial { theta: 0b010, exps: vec![0, 1, 1] }, int(-2));
        f.add_term(Monomial { theta: 0, exps: vec![0, 0, 0] }, int(1));
        for i in 1..3 {
            let k = |g: &SuperPoly| g.exchange(Exchange::X, i - 1, i).unwrap();
            let lhs = dunkl_apply(i, &k(&f)).unwrap().sub(&k(&dunkl_apply(i + 1, &f).unwrap()));
            assert_eq!(lhs, f.scale(&RatFunc::beta()), "i={i}");
        }
    }

    #[test]
    fn operator_identities() {
        let report = operator_check(7);
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn kernel_intertwining() {
        let (ok, detail) = kernel_intertwining_check(2, 3, 2).unwrap();
        assert!(ok, "{detail}");
    }

    #[test]
    fn triangular_action() {
        let (ok, detail) = triangular_action_check(4, 2).unwrap();
        assert!(ok, "{detail}");
    }
}
