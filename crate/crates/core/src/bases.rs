//! The bases `m`, `e`, `h`, `p`, `g`: generators, monomial products,
//! transition matrices and the determinantal and recursive identities.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coefficients::{beta_binomial, factorial, RatFunc};
use crate::error::BasisError;
use crate::report::Report;
use crate::superpartition::{enumerate, partitions, BruhatPoset, SuperPartition};
use crate::superpoly::{reversal_sign, sort_sign, SuperPoly};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "m")]
    M,
    #[serde(rename = "e")]
    E,
    #[serde(rename = "h")]
    H,
    #[serde(rename = "p")]
    P,
    #[serde(rename = "g")]
    G,
    #[serde(rename = "J")]
    J,
}

impl Basis {
    pub const CLASSICAL: [Basis; 5] = [Basis::M, Basis::E, Basis::H, Basis::P, Basis::G];
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::M => "m",
            Basis::E => "e",
            Basis::H => "h",
            Basis::P => "p",
            Basis::G => "g",
            Basis::J => "J",
        })
    }
}

impl FromStr for Basis {
    type Err = BasisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "m" => Ok(Basis::M),
            "e" => Ok(Basis::E),
            "h" => Ok(Basis::H),
            "p" => Ok(Basis::P),
            "g" => Ok(Basis::G),
            "J" | "j" => Ok(Basis::J),
            other => Err(BasisError::UnknownBasis(other.to_string())),
        }
    }
}

/// One-part generators. The `Tilde` variants are the fermionic ones.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    E,
    ETilde,
    H,
    HTilde,
    P,
    PTilde,
    G,
    GTilde,
}

impl Family {
    fn bosonic(basis: Basis) -> Option<Family> {
        match basis {
            Basis::E => Some(Family::E),
            Basis::H => Some(Family::H),
            Basis::P => Some(Family::P),
            Basis::G => Some(Family::G),
            _ => None,
        }
    }

    fn fermionic(self) -> Family {
        match self {
            Family::E | Family::ETilde => Family::ETilde,
            Family::H | Family::HTilde => Family::HTilde,
            Family::P | Family::PTilde => Family::PTilde,
            Family::G | Family::GTilde => Family::GTilde,
        }
    }

    pub fn is_fermionic(self) -> bool {
        matches!(
            self,
            Family::ETilde | Family::HTilde | Family::PTilde | Family::GTilde
        )
    }
}

impl FromStr for Family {
    type Err = BasisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "e" => Ok(Family::E),
            "et" | "e~" => Ok(Family::ETilde),
            "h" => Ok(Family::H),
            "ht" | "h~" => Ok(Family::HTilde),
            "p" => Ok(Family::P),
            "pt" | "p~" => Ok(Family::PTilde),
            "g" => Ok(Family::G),
            "gt" | "g~" => Ok(Family::GTilde),
            other => Err(BasisError::UnknownBasis(other.to_string())),
        }
    }
}

/// A homogeneous element `Σ c_Λ b_Λ` of bidegree `(n|m)` in one basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ExpansionJson", into = "ExpansionJson")]
pub struct BasisExpansion {
    basis: Basis,
    n: u32,
    m: u32,
    coeffs: BTreeMap<SuperPartition, RatFunc>,
}

#[derive(Serialize, Deserialize)]
struct ExpansionJson {
    basis: String,
    n: u32,
    m: u32,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    sp: String,
    coeff: String,
}

impl TryFrom<ExpansionJson> for BasisExpansion {
    type Error = BasisError;

    fn try_from(raw: ExpansionJson) -> Result<Self, Self::Error> {
        let basis: Basis = raw.basis.parse()?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let sp: SuperPartition = t.sp.parse()?;
            let c: RatFunc = t.coeff.parse()?;
            terms.push((sp, c));
        }
        BasisExpansion::from_terms(basis, raw.n, raw.m, terms)
    }
}

impl From<BasisExpansion> for ExpansionJson {
    fn from(e: BasisExpansion) -> Self {
        ExpansionJson {
            basis: e.basis.to_string(),
            n: e.n,
            m: e.m,
            terms: e
                .coeffs
                .iter()
                .map(|(sp, c)| TermJson {
                    sp: sp.to_string(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

impl BasisExpansion {
    pub fn zero(basis: Basis, n: u32, m: u32) -> Self {
        BasisExpansion {
            basis,
            n,
            m,
            coeffs: BTreeMap::new(),
        }
    }

    /// The single basis element `b_Λ`.
    pub fn single(basis: Basis, sp: SuperPartition) -> Self {
        let (n, m) = sp.bidegree();
        let mut coeffs = BTreeMap::new();
        coeffs.insert(sp, RatFunc::one());
        BasisExpansion {
            basis,
            n,
            m,
            coeffs,
        }
    }

    pub fn from_terms(
        basis: Basis,
        n: u32,
        m: u32,
        terms: impl IntoIterator<Item = (SuperPartition, RatFunc)>,
    ) -> Result<Self, BasisError> {
        let mut out = BasisExpansion::zero(basis, n, m);
        for (sp, c) in terms {
            let (a, b) = sp.bidegree();
            if (a, b) != (n, m) {
                return Err(BasisError::BidegreeMismatch(a, b, n, m));
            }
            out.add_term(sp, &c);
        }
        Ok(out)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.n, self.m)
    }

    pub fn coeffs(&self) -> &BTreeMap<SuperPartition, RatFunc> {
        &self.coeffs
    }

    pub fn coeff(&self, sp: &SuperPartition) -> RatFunc {
        self.coeffs.get(sp).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, sp: SuperPartition, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&sp) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.coeffs.remove(&sp);
                }
            }
            None => {
                self.coeffs.insert(sp, c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &BasisExpansion) -> Result<(), BasisError> {
        if self.basis != other.basis {
            return Err(BasisError::WrongBasis {
                expected: self.basis,
                found: other.basis,
            });
        }
        if self.bidegree() != other.bidegree() {
            return Err(BasisError::BidegreeMismatch(
                other.n, other.m, self.n, self.m,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &BasisExpansion) -> Result<BasisExpansion, BasisError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (sp, c) in &other.coeffs {
            out.add_term(sp.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BasisExpansion) -> Result<BasisExpansion, BasisError> {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> BasisExpansion {
        let mut out = BasisExpansion::zero(self.basis, self.n, self.m);
        if c.is_zero() {
            return out;
        }
        for (sp, v) in &self.coeffs {
            out.coeffs.insert(sp.clone(), v * c);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&SuperPartition, &RatFunc) -> RatFunc) -> BasisExpansion {
        let mut out = BasisExpansion::zero(self.basis, self.n, self.m);
        for (sp, v) in &self.coeffs {
            out.add_term(sp.clone(), &f(sp, v));
        }
        out
    }

    pub fn expect_basis(&self, basis: Basis) -> Result<(), BasisError> {
        if self.basis == basis {
            Ok(())
        } else {
            Err(BasisError::WrongBasis {
                expected: basis,
                found: self.basis,
            })
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("expansions always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, BasisError> {
        serde_json::from_str(text).map_err(|e| BasisError::Malformed(e.to_string()))
    }

    /// Realizes the expansion as a superpolynomial in `n_vars` variables.
    pub fn to_superpoly(&self, n_vars: usize) -> Result<SuperPoly, BasisError> {
        let in_m = convert(self, Basis::M)?;
        Ok(SuperPoly::from_monomial_coefficients(
            in_m.coeffs.iter(),
            n_vars,
        )?)
    }

    /// The `m` expansion of the `(n|m)` component of a symmetric
    /// superpolynomial. Exact when the variable count is at least `n + m`.
    pub fn from_superpoly(poly: &SuperPoly, n: u32, m: u32) -> Result<Self, BasisError> {
        let comp = poly.component(n, m);
        let coeffs = comp.monomial_coefficients()?;
        BasisExpansion::from_terms(Basis::M, n, m, coeffs)
    }
}

impl fmt::Display for BasisExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (sp, c) in &self.coeffs {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{}[{}]", self.basis, sp)?;
            } else {
                write!(f, "({}) {}[{}]", c, self.basis, sp)?;
            }
        }
        Ok(())
    }
}

/// The `m` expansion of a one-part generator.
pub fn gen_family(family: Family, n: u32) -> Result<BasisExpansion, BasisError> {
    let m = u32::from(family.is_fermionic());
    let terms: Vec<(SuperPartition, RatFunc)> = match family {
        Family::E => vec![(SuperPartition::bosonic(vec![1; n as usize]), RatFunc::one())],
        Family::ETilde => vec![(
            SuperPartition::new(vec![0], vec![1; n as usize])?,
            RatFunc::one(),
        )],
        Family::P => {
            if n == 0 {
                return Err(BasisError::ZeroPowerSum);
            }
            vec![(SuperPartition::bosonic(vec![n]), RatFunc::one())]
        }
        Family::PTilde => vec![(SuperPartition::new(vec![n], vec![])?, RatFunc::one())],
        Family::H => partitions(n, n)
            .into_iter()
            .map(|p| (SuperPartition::bosonic(p), RatFunc::one()))
            .collect(),
        Family::HTilde => enumerate(n, 1, None)
            .into_iter()
            .map(|sp| {
                let c = RatFunc::from_int(sp.antisym()[0] as i64 + 1);
                (sp, c)
            })
            .collect(),
        Family::G => partitions(n, n)
            .into_iter()
            .map(|p| {
                let c: RatFunc = p.iter().map(|&k| beta_binomial(k)).product();
                (SuperPartition::bosonic(p), c)
            })
            .collect(),
        Family::GTilde => enumerate(n, 1, None)
            .into_iter()
            .map(|sp| {
                let head = sp.antisym()[0];
                let lead = &RatFunc::beta() + &RatFunc::from_int(head as i64);
                let c: RatFunc = std::iter::once(lead)
                    .chain(sp.star().iter().map(|&k| beta_binomial(k)))
                    .product();
                (sp, c)
            })
            .collect(),
    };
    BasisExpansion::from_terms(Basis::M, n, m, terms)
}

type ProductCache = RwLock<HashMap<(SuperPartition, SuperPartition), Arc<BTreeMap<SuperPartition, BigInt>>>>;

/// Structure constants `m_Λ m_Ω = Σ_Γ N^Γ m_Γ`, counted as signed fillings
/// of the circled diagram of each `Γ`.
pub fn mono_product(
    lambda: &SuperPartition,
    omega: &SuperPartition,
) -> Arc<BTreeMap<SuperPartition, BigInt>> {
    static CACHE: OnceLock<ProductCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (lambda.clone(), omega.clone());
    if let Some(hit) = cache.read().expect("product cache poisoned").get(&key) {
        return hit.clone();
    }
    let (n, m) = (lambda.n() + omega.n(), lambda.m() + omega.m());
    let max_len = lambda.length() + omega.length();
    let mut out = BTreeMap::new();
    for gamma in enumerate(n, m, Some(max_len)) {
        let c = count_fillings(lambda, omega, &gamma);
        if !c.is_zero() {
            out.insert(gamma, c);
        }
    }
    let out = Arc::new(out);
    cache
        .write()
        .expect("product cache poisoned")
        .insert(key, out.clone());
    out
}

struct Filling<'a> {
    target: Vec<u32>,
    fermionic_rows: usize,
    left_fermions: &'a [u32],
    right_fermions: &'a [u32],
    left_used: Vec<bool>,
    right_used: Vec<bool>,
    left_bosons: BTreeMap<u32, usize>,
    right_bosons: BTreeMap<u32, usize>,
    labels: Vec<usize>,
    total: BigInt,
}

fn multiset(parts: &[u32]) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for &p in parts {
        *out.entry(p).or_insert(0) += 1;
    }
    out
}

fn take(bag: &mut BTreeMap<u32, usize>, v: u32) -> bool {
    match bag.get_mut(&v) {
        Some(k) if *k > 0 => {
            *k -= 1;
            true
        }
        _ => false,
    }
}

fn give(bag: &mut BTreeMap<u32, usize>, v: u32) {
    *bag.entry(v).or_insert(0) += 1;
}

impl Filling<'_> {
    fn finish(&mut self) {
        let done = self.left_used.iter().all(|&u| u)
            && self.right_used.iter().all(|&u| u)
            && self.left_bosons.values().all(|&k| k == 0)
            && self.right_bosons.values().all(|&k| k == 0);
        if done {
            let odd = sort_sign(&self.labels).expect("labels are distinct");
            if odd {
                self.total -= 1;
            } else {
                self.total += 1;
            }
        }
    }

    /// Places the right factor's share `rest` of a row.
    fn right_share(&mut self, row: usize, rest: u32, fermion: bool) {
        if fermion {
            let offset = self.left_fermions.len();
            for k in 0..self.right_fermions.len() {
                if !self.right_used[k] && self.right_fermions[k] == rest {
                    self.right_used[k] = true;
                    self.labels.push(offset + k);
                    self.walk(row + 1);
                    self.labels.pop();
                    self.right_used[k] = false;
                }
            }
        } else if rest == 0 {
            self.walk(row + 1);
        } else if take(&mut self.right_bosons, rest) {
            self.walk(row + 1);
            give(&mut self.right_bosons, rest);
        }
    }

    fn walk(&mut self, row: usize) {
        if row == self.target.len() {
            self.finish();
            return;
        }
        let value = self.target[row];
        let circled = row < self.fermionic_rows;
        if circled {
            for k in 0..self.left_fermions.len() {
                let part = self.left_fermions[k];
                if !self.left_used[k] && part <= value {
                    self.left_used[k] = true;
                    self.labels.push(k);
                    self.right_share(row, value - part, false);
                    self.labels.pop();
                    self.left_used[k] = false;
                }
            }
        }
        self.right_share(row, value, circled);
        let values: Vec<u32> = self
            .left_bosons
            .iter()
            .filter(|(&v, &k)| k > 0 && v <= value)
            .map(|(&v, _)| v)
            .collect();
        for v in values {
            take(&mut self.left_bosons, v);
            self.right_share(row, value - v, circled);
            give(&mut self.left_bosons, v);
        }
    }
}

fn count_fillings(lambda: &SuperPartition, omega: &SuperPartition, gamma: &SuperPartition) -> BigInt {
    let mut target = gamma.antisym().to_vec();
    target.extend_from_slice(gamma.sym());
    let mut state = Filling {
        target,
        fermionic_rows: gamma.m() as usize,
        left_fermions: lambda.antisym(),
        right_fermions: omega.antisym(),
        left_used: vec![false; lambda.m() as usize],
        right_used: vec![false; omega.m() as usize],
        left_bosons: multiset(lambda.sym()),
        right_bosons: multiset(omega.sym()),
        labels: Vec::new(),
        total: BigInt::zero(),
    };
    state.walk(0);
    state.total
}

/// The same structure constants by multiplying realizations in
/// `ℓ(Λ) + ℓ(Ω)` variables and extracting monomial coefficients.
pub fn mono_product_realized(
    lambda: &SuperPartition,
    omega: &SuperPartition,
) -> Result<BTreeMap<SuperPartition, RatFunc>, BasisError> {
    let vars = (lambda.length() + omega.length()).max(1);
    let product = SuperPoly::monomial(lambda, vars)?.mul(&SuperPoly::monomial(omega, vars)?);
    Ok(product.monomial_coefficients()?)
}

/// Product of two `m` expansions.
pub fn m_product(a: &BasisExpansion, b: &BasisExpansion) -> Result<BasisExpansion, BasisError> {
    a.expect_basis(Basis::M)?;
    b.expect_basis(Basis::M)?;
    let mut out = BasisExpansion::zero(Basis::M, a.n + b.n, a.m + b.m);
    for (l, cl) in &a.coeffs {
        for (o, co) in &b.coeffs {
            let c = cl * co;
            for (g, k) in mono_product(l, o).iter() {
                out.add_term(g.clone(), &(&c * &RatFunc::from_bigint(k.clone())));
            }
        }
    }
    Ok(out)
}

/// `b_Λ` for a multiplicative basis: fermionic generators in the order of
/// `Λ^a`, then bosonic ones, multiplied left to right in `m`.
pub fn multiplicative_to_m(basis: Basis, lambda: &SuperPartition) -> Result<BasisExpansion, BasisError> {
    let family = Family::bosonic(basis).ok_or(BasisError::UnknownBasis(basis.to_string()))?;
    let mut out = BasisExpansion::single(Basis::M, SuperPartition::empty());
    for &a in lambda.antisym() {
        out = m_product(&out, &gen_family(family.fermionic(), a)?)?;
    }
    for &s in lambda.sym() {
        out = m_product(&out, &gen_family(family, s)?)?;
    }
    Ok(out)
}

/// Change of basis at fixed bidegree. Row `Λ` holds the expansion of the
/// source element `A_Λ` in the target basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionMatrix {
    from: Basis,
    to: Basis,
    n: u32,
    m: u32,
    index: Vec<SuperPartition>,
    entries: Vec<Vec<RatFunc>>,
}

impl TransitionMatrix {
    pub fn from_basis(&self) -> Basis {
        self.from
    }

    pub fn to_basis(&self) -> Basis {
        self.to
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.n, self.m)
    }

    pub fn index(&self) -> &[SuperPartition] {
        &self.index
    }

    pub fn entries(&self) -> &[Vec<RatFunc>] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn entry(&self, row: &SuperPartition, col: &SuperPartition) -> RatFunc {
        match (self.position(row), self.position(col)) {
            (Some(i), Some(j)) => self.entries[i][j].clone(),
            _ => RatFunc::zero(),
        }
    }

    fn position(&self, sp: &SuperPartition) -> Option<usize> {
        self.index.binary_search(sp).ok()
    }

    /// Row `Λ` as an expansion in the target basis.
    pub fn row(&self, sp: &SuperPartition) -> Option<BasisExpansion> {
        let i = self.position(sp)?;
        let terms = self
            .index
            .iter()
            .cloned()
            .zip(self.entries[i].iter().cloned());
        Some(
            BasisExpansion::from_terms(self.to, self.n, self.m, terms)
                .expect("index shares the bidegree"),
        )
    }

    pub fn identity(basis: Basis, n: u32, m: u32) -> Self {
        let index = enumerate(n, m, None);
        let d = index.len();
        let entries = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() })
                    .collect()
            })
            .collect();
        TransitionMatrix {
            from: basis,
            to: basis,
            n,
            m,
            index,
            entries,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, c)| if i == j { c.is_one() } else { c.is_zero() })
        })
    }

    /// `self: A→B` followed by `other: B→C` gives `A→C`.
    pub fn compose(&self, other: &TransitionMatrix) -> Result<TransitionMatrix, BasisError> {
        if self.to != other.from {
            return Err(BasisError::WrongBasis {
                expected: self.to,
                found: other.from,
            });
        }
        if self.bidegree() != other.bidegree() {
            return Err(BasisError::BidegreeMismatch(other.n, other.m, self.n, self.m));
        }
        Ok(TransitionMatrix {
            from: self.from,
            to: other.to,
            n: self.n,
            m: self.m,
            index: self.index.clone(),
            entries: mat_mul(&self.entries, &other.entries),
        })
    }

    pub fn inverse(&self) -> Result<TransitionMatrix, BasisError> {
        Ok(TransitionMatrix {
            from: self.to,
            to: self.from,
            n: self.n,
            m: self.m,
            index: self.index.clone(),
            entries: mat_inverse(&self.entries)?,
        })
    }
}

pub(crate) fn mat_mul(a: &[Vec<RatFunc>], b: &[Vec<RatFunc>]) -> Vec<Vec<RatFunc>> {
    let d = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![RatFunc::zero(); d];
            for (k, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (j, v) in b[k].iter().enumerate() {
                    if !v.is_zero() {
                        out[j] = &out[j] + &(c * v);
                    }
                }
            }
            out
        })
        .collect()
}

/// Gauss-Jordan inversion over `Q(b)`.
pub(crate) fn mat_inverse(a: &[Vec<RatFunc>]) -> Result<Vec<Vec<RatFunc>>, BasisError> {
    let d = a.len();
    let mut work: Vec<Vec<RatFunc>> = a.to_vec();
    let mut inv: Vec<Vec<RatFunc>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() })
                .collect()
        })
        .collect();
    for col in 0..d {
        let pivot = (col..d)
            .find(|&r| !work[r][col].is_zero())
            .ok_or(BasisError::Singular)?;
        work.swap(col, pivot);
        inv.swap(col, pivot);
        let p = work[col][col].inv()?;
        if !p.is_one() {
            for j in 0..d {
                if !work[col][j].is_zero() {
                    work[col][j] = &work[col][j] * &p;
                }
                if !inv[col][j].is_zero() {
                    inv[col][j] = &inv[col][j] * &p;
                }
            }
        }
        for r in 0..d {
            if r == col || work[r][col].is_zero() {
                continue;
            }
            let f = work[r][col].clone();
            for j in 0..d {
                if !work[col][j].is_zero() {
                    work[r][j] = &work[r][j] - &(&f * &work[col][j]);
                }
                if !inv[col][j].is_zero() {
                    inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
                }
            }
        }
    }
    Ok(inv)
}

/// `p_Λ → m` by realizing `p_Λ` in `n_vars` variables and reading off the
/// coefficient of `θ_0⋯θ_{m-1} x^Ω`. Only `θ`s with index below `m` can
/// survive, so the fermionic factors are restricted to them.
pub fn power_sums_realized(n: u32, m: u32, n_vars: usize) -> Result<TransitionMatrix, BasisError> {
    let index = enumerate(n, m, None);
    if let Some(long) = index.iter().find(|sp| sp.length() > n_vars) {
        return Err(crate::error::PolyError::TooFewVariables {
            length: long.length(),
            vars: n_vars,
        }
        .into());
    }
    let mask: u32 = (1u32 << m) - 1;
    let entries: Vec<Vec<RatFunc>> = index
        .par_iter()
        .map(|lambda| {
            let mut poly = SuperPoly::one(n_vars);
            for &k in lambda.antisym() {
                let mut factor = SuperPoly::zero(n_vars);
                for i in 0..m as usize {
                    factor.add_assign(&SuperPoly::theta(n_vars, i).x_mul(i, k as i32));
                }
                poly = poly.mul_filtered(&factor, |mono| mono.theta & !mask == 0);
            }
            for &k in lambda.sym() {
                let mut factor = SuperPoly::zero(n_vars);
                for i in 0..n_vars {
                    factor.add_assign(&SuperPoly::x(n_vars, i).pow(k));
                }
                poly = poly.mul(&factor);
            }
            index
                .iter()
                .map(|omega| {
                    let mut exps: Vec<i32> = omega.antisym().iter().map(|&v| v as i32).collect();
                    exps.extend(omega.sym().iter().map(|&v| v as i32));
                    exps.resize(n_vars, 0);
                    poly.coeff(mask, &exps)
                })
                .collect()
        })
        .collect();
    Ok(TransitionMatrix {
        from: Basis::P,
        to: Basis::M,
        n,
        m,
        index,
        entries,
    })
}

/// `p_Λ` realized in `n_vars` variables, for any length of `Λ`.
pub fn power_sum_poly(lambda: &SuperPartition, n_vars: usize) -> SuperPoly {
    let mut poly = SuperPoly::one(n_vars);
    for &k in lambda.antisym() {
        let mut factor = SuperPoly::zero(n_vars);
        for i in 0..n_vars {
            factor.add_assign(&SuperPoly::theta(n_vars, i).x_mul(i, k as i32));
        }
        poly = poly.mul(&factor);
    }
    for &k in lambda.sym() {
        let mut factor = SuperPoly::zero(n_vars);
        for i in 0..n_vars {
            factor.add_assign(&SuperPoly::x(n_vars, i).pow(k));
        }
        poly = poly.mul(&factor);
    }
    poly
}

fn to_monomials(basis: Basis, n: u32, m: u32) -> Result<TransitionMatrix, BasisError> {
    match basis {
        Basis::M => Ok(TransitionMatrix::identity(Basis::M, n, m)),
        Basis::P => power_sums_realized(n, m, (n + m) as usize),
        Basis::J => Err(BasisError::NoJackTransition),
        Basis::E | Basis::H | Basis::G => {
            let index = enumerate(n, m, None);
            let entries = index
                .par_iter()
                .map(|lambda| {
                    let row = multiplicative_to_m(basis, lambda)?;
                    Ok(index.iter().map(|o| row.coeff(o)).collect())
                })
                .collect::<Result<Vec<Vec<RatFunc>>, BasisError>>()?;
            Ok(TransitionMatrix {
                from: basis,
                to: Basis::M,
                n,
                m,
                index,
                entries,
            })
        }
    }
}

type TransitionKey = (Basis, Basis, u32, u32);
type TransitionCache = RwLock<HashMap<TransitionKey, Arc<TransitionMatrix>>>;

fn transition_cache() -> &'static TransitionCache {
    static CACHE: OnceLock<TransitionCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cache_dir_slot() -> &'static RwLock<Option<PathBuf>> {
    static DIR: OnceLock<RwLock<Option<PathBuf>>> = OnceLock::new();
    DIR.get_or_init(Default::default)
}

/// Persists computed transition matrices as JSON under `dir`, and reads
/// them back on a cache miss.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *cache_dir_slot().write().expect("cache dir poisoned") = dir;
}

fn cache_file(dir: &Path, key: &TransitionKey) -> PathBuf {
    dir.join(format!("{}_{}_{}_{}.json", key.0, key.1, key.2, key.3))
}

fn load_persisted(key: &TransitionKey) -> Option<TransitionMatrix> {
    let dir = cache_dir_slot().read().ok()?.clone()?;
    let text = fs::read_to_string(cache_file(&dir, key)).ok()?;
    let t: TransitionMatrix = serde_json::from_str(&text).ok()?;
    ((t.from, t.to, t.n, t.m) == *key).then_some(t)
}

fn persist(key: &TransitionKey, t: &TransitionMatrix) {
    let dir = match cache_dir_slot().read().ok().and_then(|d| d.clone()) {
        Some(d) => d,
        None => return,
    };
    if fs::create_dir_all(&dir).is_ok() {
        if let Ok(text) = serde_json::to_string(t) {
            let _ = fs::write(cache_file(&dir, key), text);
        }
    }
}

/// The cached transition matrix `from → to` on `SPar(n|m)`.
pub fn transition(from: Basis, to: Basis, n: u32, m: u32) -> Result<Arc<TransitionMatrix>, BasisError> {
    if from == Basis::J || to == Basis::J {
        return Err(BasisError::NoJackTransition);
    }
    let key = (from, to, n, m);
    if let Some(hit) = transition_cache().read().expect("transition cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let t = match load_persisted(&key) {
        Some(t) => t,
        None => {
            let t = if from == to {
                TransitionMatrix::identity(from, n, m)
            } else if to == Basis::M {
                to_monomials(from, n, m)?
            } else if from == Basis::M {
                transition(to, Basis::M, n, m)?.inverse()?
            } else {
                transition(from, Basis::M, n, m)?.compose(&*transition(Basis::M, to, n, m)?)?
            };
            persist(&key, &t);
            t
        }
    };
    let t = Arc::new(t);
    transition_cache()
        .write()
        .expect("transition cache poisoned")
        .insert(key, t.clone());
    Ok(t)
}

/// Re-expresses an expansion in another classical basis.
pub fn convert(expansion: &BasisExpansion, to: Basis) -> Result<BasisExpansion, BasisError> {
    if expansion.basis == to {
        return Ok(expansion.clone());
    }
    let (n, m) = expansion.bidegree();
    let t = transition(expansion.basis, to, n, m)?;
    let mut out = BasisExpansion::zero(to, n, m);
    for (sp, c) in &expansion.coeffs {
        let i = t.position(sp).ok_or_else(|| {
            BasisError::Malformed(format!("{sp} is outside SPar({n}|{m})"))
        })?;
        for (j, v) in t.entries[i].iter().enumerate() {
            if !v.is_zero() {
                out.add_term(t.index[j].clone(), &(c * v));
            }
        }
    }
    Ok(out)
}

/// An element of the power-sum algebra, mixed degrees allowed. Key `Λ`
/// stands for `p̃_{Λ_1}⋯p̃_{Λ_m} p_{Λ_{m+1}}⋯`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymFunc {
    terms: BTreeMap<SuperPartition, RatFunc>,
}

impl SymFunc {
    pub fn zero() -> Self {
        SymFunc::default()
    }

    pub fn one() -> Self {
        SymFunc::constant(RatFunc::one())
    }

    pub fn constant(c: RatFunc) -> Self {
        let mut out = SymFunc::zero();
        out.add_term(SuperPartition::empty(), c);
        out
    }

    pub fn power_sum(sp: SuperPartition) -> Self {
        let mut out = SymFunc::zero();
        out.add_term(sp, RatFunc::one());
        out
    }

    pub fn from_expansion(e: &BasisExpansion) -> Result<Self, BasisError> {
        let in_p = convert(e, Basis::P)?;
        let mut out = SymFunc::zero();
        for (sp, c) in in_p.coeffs {
            out.add_term(sp, c);
        }
        Ok(out)
    }

    /// The `p` expansion of a one-part generator; `e_0 = h_0 = g_0 = 1`.
    pub fn generator(family: Family, k: u32) -> Result<Self, BasisError> {
        if k == 0 && !family.is_fermionic() && family != Family::P {
            return Ok(SymFunc::one());
        }
        SymFunc::from_expansion(&gen_family(family, k)?)
    }

    pub fn terms(&self) -> &BTreeMap<SuperPartition, RatFunc> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, sp: SuperPartition, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&sp) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&sp);
                }
            }
            None => {
                self.terms.insert(sp, c);
            }
        }
    }

    pub fn add(&self, other: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        for (sp, c) in &other.terms {
            out.add_term(sp.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymFunc) -> SymFunc {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> SymFunc {
        let mut out = SymFunc::zero();
        if c.is_zero() {
            return out;
        }
        for (sp, v) in &self.terms {
            out.terms.insert(sp.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &SymFunc) -> SymFunc {
        let mut out = SymFunc::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((sp, odd)) = power_sum_product(a, b) {
                    let c = ca * cb;
                    out.add_term(sp, if odd { -c } else { c });
                }
            }
        }
        out
    }

    /// The homogeneous component of bidegree `(n|m)` as an expansion in `p`.
    pub fn component(&self, n: u32, m: u32) -> BasisExpansion {
        let terms = self
            .terms
            .iter()
            .filter(|(sp, _)| sp.bidegree() == (n, m))
            .map(|(sp, c)| (sp.clone(), c.clone()));
        BasisExpansion::from_terms(Basis::P, n, m, terms).expect("filtered by bidegree")
    }
}

/// `p_Λ p_Ω = ± p_Γ`, or `None` when a fermionic part repeats.
fn power_sum_product(a: &SuperPartition, b: &SuperPartition) -> Option<(SuperPartition, bool)> {
    let mut fermions: Vec<u32> = a.antisym().to_vec();
    fermions.extend_from_slice(b.antisym());
    let keys: Vec<usize> = fermions.iter().map(|&v| u32::MAX as usize - v as usize).collect();
    let odd = sort_sign(&keys)?;
    fermions.sort_unstable_by(|x, y| y.cmp(x));
    let mut bosons = a.sym().to_vec();
    bosons.extend_from_slice(b.sym());
    let sp = SuperPartition::new(fermions, bosons).expect("distinct after the sign check");
    Some((sp, odd))
}

/// Determinant by Laplace expansion along the first row, memoized on the
/// set of remaining columns.
fn determinant(rows: &[Vec<SymFunc>]) -> SymFunc {
    fn minor(rows: &[Vec<SymFunc>], r: usize, cols: u32, memo: &mut HashMap<u32, SymFunc>) -> SymFunc {
        if r == rows.len() {
            return SymFunc::one();
        }
        if let Some(hit) = memo.get(&cols) {
            return hit.clone();
        }
        let mut out = SymFunc::zero();
        let mut position = 0;
        for j in 0..rows.len() {
            if cols & (1 << j) == 0 {
                continue;
            }
            let entry = &rows[r][j];
            if !entry.is_zero() {
                let rest = minor(rows, r + 1, cols & !(1 << j), memo);
                let term = entry.mul(&rest);
                out = if position % 2 == 0 {
                    out.add(&term)
                } else {
                    out.sub(&term)
                };
            }
            position += 1;
        }
        memo.insert(cols, out.clone());
        out
    }
    let full = (1u32 << rows.len()) - 1;
    minor(rows, 0, full, &mut HashMap::new())
}

struct Generators {
    e: Vec<SymFunc>,
    et: Vec<SymFunc>,
    h: Vec<SymFunc>,
    ht: Vec<SymFunc>,
    p: Vec<SymFunc>,
    pt: Vec<SymFunc>,
}

impl Generators {
    fn new(n_max: u32) -> Result<Self, BasisError> {
        let list = |family: Family| -> Result<Vec<SymFunc>, BasisError> {
            (0..=n_max)
                .map(|k| {
                    if family == Family::P && k == 0 {
                        Ok(SymFunc::zero())
                    } else {
                        SymFunc::generator(family, k)
                    }
                })
                .collect()
        };
        Ok(Generators {
            e: list(Family::E)?,
            et: list(Family::ETilde)?,
            h: list(Family::H)?,
            ht: list(Family::HTilde)?,
            p: list(Family::P)?,
            pt: list(Family::PTilde)?,
        })
    }
}

fn int(k: i64) -> RatFunc {
    RatFunc::from_int(k)
}

/// Entry `seq_{j-i+1}` of a Toeplitz-Hessenberg matrix, zero below the
/// subdiagonal.
fn shifted(seq: &[SymFunc], i: usize, j: usize) -> SymFunc {
    if j + 1 < i {
        SymFunc::zero()
    } else {
        seq[j + 1 - i].clone()
    }
}

/// Checks every determinant formula and recursion between the one-part
/// generators for `n ≤ n_max`, by symbolic expansion in `p`.
pub fn det_identities_check(n_max: u32) -> Result<Report, BasisError> {
    let g = Generators::new(n_max)?;
    let mut report = Report::new();
    let fact = |n: usize| RatFunc::from_bigint(factorial(n as u32));
    for n in 1..=n_max as usize {
        let m: Vec<Vec<SymFunc>> = (0..n)
            .map(|i| (0..n).map(|j| shifted(&g.h, i, j)).collect())
            .collect();
        report.record(format!("e_n as a determinant in h, n={n}"), determinant(&m) == g.e[n], "");

        let m: Vec<Vec<SymFunc>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == 0 {
                            g.e[j + 1].scale(&int(j as i64 + 1))
                        } else {
                            shifted(&g.e, i, j)
                        }
                    })
                    .collect()
            })
            .collect();
        report.record(format!("p_n as a determinant in e, n={n}"), determinant(&m) == g.p[n], "");

        let m: Vec<Vec<SymFunc>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i > 0 && j + 1 == i {
                            SymFunc::constant(int(i as i64))
                        } else if i > 0 && j < i {
                            SymFunc::zero()
                        } else {
                            g.p[j + 1 - i].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        report.record(
            format!("n! e_n as a determinant in p, n={n}"),
            determinant(&m) == g.e[n].scale(&fact(n)),
            "",
        );
    }
    for n in 0..=n_max as usize {
        let size = n + 1;
        let m: Vec<Vec<SymFunc>> = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        if i == 0 {
                            g.ht[j].clone()
                        } else if j + 1 < i {
                            SymFunc::zero()
                        } else {
                            let weight = (n + j + 2 - 2 * i) as i64;
                            g.h[j + 1 - i].scale(&int(weight))
                        }
                    })
                    .collect()
            })
            .collect();
        report.record(
            format!("n! e~_n as a determinant in h and h~, n={n}"),
            determinant(&m) == g.et[n].scale(&fact(n)),
            "",
        );

        let m: Vec<Vec<SymFunc>> = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| if i == 0 { g.et[j].clone() } else { shifted(&g.e, i, j) })
                    .collect()
            })
            .collect();
        report.record(format!("p~_n as a determinant in e and e~, n={n}"), determinant(&m) == g.pt[n], "");

        let m: Vec<Vec<SymFunc>> = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        if i == 0 {
                            g.pt[j].clone()
                        } else if j + 1 == i {
                            SymFunc::constant(int((n + 1 - i) as i64))
                        } else if j < i {
                            SymFunc::zero()
                        } else {
                            g.p[j + 1 - i].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        report.record(
            format!("n! e~_n as a determinant in p and p~, n={n}"),
            determinant(&m) == g.et[n].scale(&fact(n)),
            "",
        );
    }
    recursions(&g, n_max as usize, &mut report);
    Ok(report)
}

fn sign(r: usize) -> RatFunc {
    int(if r % 2 == 0 { 1 } else { -1 })
}

fn recursions(g: &Generators, n_max: usize, report: &mut Report) {
    for n in 0..=n_max {
        if n >= 1 {
            let sum = (0..=n).fold(SymFunc::zero(), |acc, r| {
                acc.add(&g.e[r].mul(&g.h[n - r]).scale(&sign(r)))
            });
            report.record(format!("alternating e-h convolution vanishes, n={n}"), sum.is_zero(), "");

            let sum = (1..=n).fold(SymFunc::zero(), |acc, r| acc.add(&g.p[r].mul(&g.h[n - r])));
            report.record(format!("n h_n from the p-h recursion, n={n}"), sum == g.h[n].scale(&int(n as i64)), "");

            let sum = (1..=n).fold(SymFunc::zero(), |acc, r| {
                acc.add(&g.p[r].mul(&g.e[n - r]).scale(&sign(r + 1)))
            });
            report.record(format!("n e_n from the p-e recursion, n={n}"), sum == g.e[n].scale(&int(n as i64)), "");
        }
        let sum = (0..=n).fold(SymFunc::zero(), |acc, r| {
            let term = g.e[r].mul(&g.ht[n - r]).sub(&g.et[r].mul(&g.h[n - r]));
            acc.add(&term.scale(&sign(r)))
        });
        report.record(format!("alternating fermionic e-h convolution vanishes, n={n}"), sum.is_zero(), "");

        let sum = (0..=n).fold(SymFunc::zero(), |acc, r| {
            let term = g.p[r]
                .mul(&g.ht[n - r])
                .add(&g.pt[r].mul(&g.h[n - r]).scale(&int(r as i64 + 1)));
            acc.add(&term)
        });
        report.record(
            format!("(n+1) h~_n from the p-h recursion, n={n}"),
            sum == g.ht[n].scale(&int(n as i64 + 1)),
            "",
        );

        let sum = (0..=n).fold(SymFunc::zero(), |acc, r| {
            let term = g.p[r]
                .mul(&g.et[n - r])
                .sub(&g.pt[r].mul(&g.e[n - r]).scale(&int(r as i64 + 1)));
            acc.add(&term.scale(&sign(r + 1)))
        });
        report.record(
            format!("(n+1) e~_n from the p-e recursion, n={n}"),
            sum == g.et[n].scale(&int(n as i64 + 1)),
            "",
        );
    }
}

/// Reversed-arrow `e_Λ` is `m_{Λ'}` plus integer multiples of Bruhat-lower
/// monomials. Negative coefficients are counted in the detail, not failed.
pub fn unitriangularity_check(n_max: u32, m_max: u32) -> Result<Report, BasisError> {
    let mut report = Report::new();
    for n in 0..=n_max {
        for m in 0..=m_max {
            let index = enumerate(n, m, None);
            if index.is_empty() {
                continue;
            }
            let poset = BruhatPoset::cached(n, m);
            let t = transition(Basis::E, Basis::M, n, m)?;
            let mut ok = true;
            let mut negative = 0usize;
            let flip = int(reversal_sign(m as usize));
            for lambda in &index {
                let row = t.row(lambda).expect("row of its own index").scale(&flip);
                let lead = lambda.conjugate();
                let top = poset.index_of(&lead).expect("conjugate stays in the sector");
                ok &= row.coeff(&lead).is_one();
                for (omega, c) in row.coeffs() {
                    let integral = c
                        .as_constant()
                        .map_or(false, |q| q.denom().is_one());
                    let below = poset.leq(poset.index_of(omega).expect("same sector"), top);
                    ok &= integral && below;
                    if c.as_constant().map_or(false, |q| q < num_rational::BigRational::zero()) {
                        negative += 1;
                    }
                }
            }
            report.record(
                format!("reversed e is unitriangular over m, ({n}|{m})"),
                ok,
                format!("{negative} negative coefficients"),
            );
        }
    }
    Ok(report)
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
    fn generators() {
        let ht1 = gen_family(Family::HTilde, 1).unwrap();
        assert_eq!(ht1.len(), 2);
        assert_eq!(ht1.coeff(&sp("1;")), rat("2"));
        assert_eq!(ht1.coeff(&sp("0;1")), rat("1"));
        let gt0 = gen_family(Family::GTilde, 0).unwrap();
        assert_eq!(gt0.coeff(&sp("0;")), RatFunc::beta());
        let et0 = gen_family(Family::ETilde, 0).unwrap();
        assert_eq!(et0.coeff(&sp("0;")), RatFunc::one());
        assert_eq!(gen_family(Family::P, 0), Err(BasisError::ZeroPowerSum));
    }

    #[test]
    fn generators_at_beta_one() {
        let one = num_rational::BigRational::one();
        for n in 0..5 {
            for (g, h) in [(Family::G, Family::H), (Family::GTilde, Family::HTilde)] {
                let g = gen_family(g, n).unwrap();
                let h = gen_family(h, n).unwrap();
                let g1 = g.map_coeffs(|_, c| RatFunc::from_rat(&c.eval(&one).unwrap()));
                assert_eq!(g1, h);
            }
        }
    }

    #[test]
    fn g_through_h() {
        for n in 0..5u32 {
            for (family, m) in [(Family::G, 0u32), (Family::GTilde, 1)] {
                let mut sum = BasisExpansion::zero(Basis::H, n, m);
                for lambda in enumerate(n, m, None) {
                    let fall = crate::coefficients::falling_factorial(
                        &RatFunc::beta(),
                        lambda.length() as u32,
                    );
                    let c = &fall / &RatFunc::from_bigint(lambda.n_factorial());
                    sum = sum
                        .add(&BasisExpansion::single(Basis::H, lambda).scale(&c))
                        .unwrap();
                }
                let direct = gen_family(family, n).unwrap();
                assert_eq!(convert(&sum, Basis::M).unwrap(), direct, "n={n}");
            }
        }
    }

    #[test]
    fn product_coefficient_examples() {
        let prod = mono_product(&sp("1,0;1"), &sp("0;2,1,1"));
        assert_eq!(prod[&sp("2,1,0;1,1,1")], BigInt::from(-3));
        assert_eq!(prod[&sp("3,1,0;1,1")], BigInt::from(1));
    }

    #[test]
    fn fillings_match_realization() {
        let mut pairs = Vec::new();
        for total in 0..=5u32 {
            for a in 0..=total {
                for ma in 0..=2 {
                    for mb in 0..=2 {
                        for l in enumerate(a, ma, None) {
                            for o in enumerate(total - a, mb, None) {
                                pairs.push((l.clone(), o));
                            }
                        }
                    }
                }
            }
        }
        for (l, o) in pairs {
            let fill = mono_product(&l, &o);
            let real = mono_product_realized(&l, &o).unwrap();
            let fill: BTreeMap<_, _> = fill
                .iter()
                .map(|(k, v)| (k.clone(), RatFunc::from_bigint(v.clone())))
                .collect();
            assert_eq!(fill, real, "{l} * {o}");
        }
    }

    #[test]
    fn super_skew_commutativity() {
        for l in enumerate(3, 2, None) {
            for o in enumerate(2, 1, None) {
                let lo = mono_product(&l, &o);
                let ol = mono_product(&o, &l);
                let flip = if (l.m() * o.m()) % 2 == 1 { -1 } else { 1 };
                for (g, c) in lo.iter() {
                    assert_eq!(c * flip, ol[g]);
                }
                assert_eq!(lo.len(), ol.len());
            }
        }
    }

    #[test]
    fn classical_square() {
        let prod = mono_product(&sp(";1"), &sp(";1"));
        assert_eq!(prod[&sp(";1,1")], BigInt::from(2));
        assert_eq!(prod[&sp(";2")], BigInt::from(1));
    }

    #[test]
    fn small_transitions() {
        let e = transition(Basis::E, Basis::M, 2, 0).unwrap();
        assert_eq!(e.entry(&sp(";2"), &sp(";1,1")), rat("1"));
        assert_eq!(e.entry(&sp(";2"), &sp(";2")), rat("0"));
        assert_eq!(e.entry(&sp(";1,1"), &sp(";2")), rat("1"));
        assert_eq!(e.entry(&sp(";1,1"), &sp(";1,1")), rat("2"));
        let p = transition(Basis::P, Basis::M, 2, 0).unwrap();
        assert_eq!(p.entry(&sp(";2"), &sp(";2")), rat("1"));
        assert_eq!(p.entry(&sp(";1,1"), &sp(";2")), rat("1"));
        assert_eq!(p.entry(&sp(";1,1"), &sp(";1,1")), rat("2"));
        let ep = transition(Basis::E, Basis::P, 2, 0).unwrap();
        assert_eq!(ep.entry(&sp(";2"), &sp(";1,1")), rat("1/2"));
        assert_eq!(ep.entry(&sp(";2"), &sp(";2")), rat("-1/2"));
    }

    #[test]
    fn newton_oracle_for_e2() {
        let p1 = SymFunc::power_sum(sp(";1"));
        let p2 = SymFunc::power_sum(sp(";2"));
        let newton = p1.mul(&p1).sub(&p2).scale(&rat("1/2"));
        assert_eq!(SymFunc::generator(Family::E, 2).unwrap(), newton);
    }

    #[test]
    fn ordered_products() {
        let e = multiplicative_to_m(Basis::E, &sp("3,0;4,1")).unwrap();
        let et3 = gen_family(Family::ETilde, 3).unwrap();
        let et0 = gen_family(Family::ETilde, 0).unwrap();
        let e4 = gen_family(Family::E, 4).unwrap();
        let e1 = gen_family(Family::E, 1).unwrap();
        let swapped = m_product(&m_product(&m_product(&et0, &et3).unwrap(), &e4).unwrap(), &e1).unwrap();
        assert_eq!(e, swapped.scale(&rat("-1")));
        let p = multiplicative_to_m(Basis::P, &sp("0;")).unwrap();
        assert_eq!(p, BasisExpansion::single(Basis::M, sp("0;")));
        let h = multiplicative_to_m(Basis::H, &sp(";2")).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h.coeff(&sp(";2")), rat("1"));
        assert_eq!(h.coeff(&sp(";1,1")), rat("1"));
    }

    #[test]
    fn round_trips() {
        for (n, m) in [(3, 1), (4, 2), (2, 2)] {
            for from in Basis::CLASSICAL {
                for to in Basis::CLASSICAL {
                    let ab = transition(from, to, n, m).unwrap();
                    let ba = transition(to, from, n, m).unwrap();
                    assert!(ab.compose(&ba).unwrap().is_identity(), "{from}->{to} at ({n}|{m})");
                }
            }
        }
    }

    #[test]
    fn realization_is_stable_in_extra_variable() {
        let at = power_sums_realized(4, 2, 6).unwrap();
        let above = power_sums_realized(4, 2, 7).unwrap();
        assert_eq!(at, above);
    }

    #[test]
    fn identities_small() {
        let report = det_identities_check(4).unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn unitriangular_small() {
        let report = unitriangularity_check(4, 2).unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"basis":"m","n":4,"m":1,"terms":[{"sp":"2;1,1","coeff":"3"}]}"#;
        let e = BasisExpansion::from_json(text).unwrap();
        assert_eq!(e.coeff(&sp("2;1,1")), rat("3"));
        assert_eq!(BasisExpansion::from_json(&e.to_json()).unwrap(), e);
        let bad = r#"{"basis":"m","n":3,"m":1,"terms":[{"sp":"2;1,1","coeff":"3"}]}"#;
        assert!(BasisExpansion::from_json(bad).is_err());
    }
}
