//! Concrete superpolynomials in `N` commuting variables `x_i` and `N`
//! anticommuting variables `θ_i`.
//!
//! Variables are indexed from 0. A term stores its anticommuting factor as a
//! bitmask read in increasing index order; the sign of any reordering is
//! folded into the coefficient, so every polynomial has a unique normal form.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rustc_hash::FxHashMap;

use crate::coefficients::{BigRat, RatFunc};
use crate::error::PolyError;
use crate::superpartition::SuperPartition;

/// Key of a term: an ordered product of `θ`s and a monomial in `x`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial {
    pub theta: u32,
    pub exps: Vec<i32>,
}

/// Sparse superpolynomial with [`RatFunc`] coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct SuperPoly {
    n_vars: usize,
    terms: FxHashMap<Monomial, RatFunc>,
}

/// Which variables an exchange acts on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Exchange {
    /// Swaps `x_i` and `x_j` only.
    X,
    /// Swaps `θ_i` and `θ_j` only.
    Theta,
    /// Swaps both.
    Both,
}

/// `(-1)^{k(k-1)/2}`, the sign of writing `k` distinct `θ`s back to front.
pub fn reversal_sign(k: usize) -> i64 {
    if (k * k.saturating_sub(1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of `θ_A θ_B` relative to the increasing product over `A ∪ B`, or
/// `None` when the sets overlap.
pub fn merge_sign(a: u32, b: u32) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut odd = false;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        if j < 31 && (a >> (j + 1)).count_ones() % 2 == 1 {
            odd = !odd;
        }
    }
    Some(odd)
}

/// Sign of sorting a sequence of distinct indices; `None` on repeats.
pub fn sort_sign(seq: &[usize]) -> Option<bool> {
    let mut odd = false;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            match seq[i].cmp(&seq[j]) {
                std::cmp::Ordering::Greater => odd = !odd,
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some(odd)
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let j = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(j)
    })
}

impl SuperPoly {
    pub fn zero(n_vars: usize) -> Self {
        assert!(n_vars <= 32, "at most 32 anticommuting variables");
        SuperPoly {
            n_vars,
            terms: FxHashMap::default(),
        }
    }

    pub fn constant(n_vars: usize, c: RatFunc) -> Self {
        SuperPoly::term(n_vars, 0, vec![0; n_vars], c)
    }

    pub fn one(n_vars: usize) -> Self {
        SuperPoly::constant(n_vars, RatFunc::one())
    }

    /// A single term with the `θ`s of `theta` in increasing order.
    pub fn term(n_vars: usize, theta: u32, exps: Vec<i32>, c: RatFunc) -> Self {
        assert_eq!(exps.len(), n_vars);
        let mut p = SuperPoly::zero(n_vars);
        p.add_term(Monomial { theta, exps }, c);
        p
    }

    /// The variable `x_i`.
    pub fn x(n_vars: usize, i: usize) -> Self {
        let mut exps = vec![0; n_vars];
        exps[i] = 1;
        SuperPoly::term(n_vars, 0, exps, RatFunc::one())
    }

    /// The variable `θ_i`.
    pub fn theta(n_vars: usize, i: usize) -> Self {
        SuperPoly::term(n_vars, 1 << i, vec![0; n_vars], RatFunc::one())
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RatFunc)> {
        self.terms.iter()
    }

    /// Terms in a deterministic order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &RatFunc)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn coeff(&self, theta: u32, exps: &[i32]) -> RatFunc {
        let key = Monomial {
            theta,
            exps: exps.to_vec(),
        };
        self.terms.get(&key).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add_term(&mut self, key: Monomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn add_signed(&mut self, key: Monomial, c: &RatFunc, negate: bool) {
        if negate {
            self.add_term(key, -c);
        } else {
            self.add_term(key, c.clone());
        }
    }

    fn check_vars(&self, other: &SuperPoly) -> Result<(), PolyError> {
        if self.n_vars != other.n_vars {
            return Err(PolyError::VariableMismatch(self.n_vars, other.n_vars));
        }
        Ok(())
    }

    pub fn add(&self, other: &SuperPoly) -> SuperPoly {
        self.check_vars(other).expect("same number of variables");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &SuperPoly) {
        self.check_vars(other).expect("same number of variables");
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &SuperPoly) -> SuperPoly {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> SuperPoly {
        if c.is_zero() {
            return SuperPoly::zero(self.n_vars);
        }
        SuperPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &SuperPoly) -> SuperPoly {
        self.mul_filtered(other, |_| true)
    }

    /// Product keeping only the terms whose key passes `keep`.
    pub fn mul_filtered(&self, other: &SuperPoly, keep: impl Fn(&Monomial) -> bool) -> SuperPoly {
        self.check_vars(other).expect("same number of variables");
        let mut out = SuperPoly::zero(self.n_vars);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let Some(odd) = merge_sign(ka.theta, kb.theta) else {
                    continue;
                };
                let key = Monomial {
                    theta: ka.theta | kb.theta,
                    exps: ka.exps.iter().zip(&kb.exps).map(|(a, b)| a + b).collect(),
                };
                if !keep(&key) {
                    continue;
                }
                let c = ca * cb;
                out.add_signed(key, &c, odd);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> SuperPoly {
        let mut acc = SuperPoly::one(self.n_vars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<E>(
        &self,
        f: impl Fn(&RatFunc) -> Result<RatFunc, E>,
    ) -> Result<SuperPoly, E> {
        let mut out = SuperPoly::zero(self.n_vars);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Substitutes a rational value for `b` in every coefficient.
    pub fn at_beta(&self, beta: &BigRat) -> Result<SuperPoly, PolyError> {
        self.map_coeffs(|c| c.substitute(beta).map_err(PolyError::from))
    }

    fn map_keys(&self, f: impl Fn(&Monomial) -> Option<(Monomial, bool)>) -> SuperPoly {
        let mut out = SuperPoly::zero(self.n_vars);
        for (k, c) in &self.terms {
            if let Some((key, odd)) = f(k) {
                out.add_signed(key, c, odd);
            }
        }
        out
    }

    fn check_index(&self, i: usize) -> Result<(), PolyError> {
        if i >= self.n_vars {
            return Err(PolyError::IndexOutOfRange {
                index: i,
                vars: self.n_vars,
            });
        }
        Ok(())
    }

    /// Exchange of variables `i` and `j`.
    pub fn exchange(&self, kind: Exchange, i: usize, j: usize) -> Result<SuperPoly, PolyError> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.map_keys(|k| {
            let mut key = k.clone();
            let mut odd = false;
            if kind != Exchange::Theta {
                key.exps.swap(i, j);
            }
            if kind != Exchange::X {
                let (bi, bj) = (k.theta >> i & 1, k.theta >> j & 1);
                if bi != bj {
                    key.theta ^= (1 << i) | (1 << j);
                    let (lo, hi) = (i.min(j), i.max(j));
                    let between = (k.theta >> (lo + 1)) & ((1u32 << (hi - lo - 1)) - 1);
                    odd = between.count_ones() % 2 == 1;
                } else if bi == 1 {
                    odd = true;
                }
            }
            Some((key, odd))
        }))
    }

    /// Diagonal action of a permutation: `x_i -> x_{σ(i)}`, `θ_i -> θ_{σ(i)}`.
    pub fn permute(&self, sigma: &[usize]) -> SuperPoly {
        assert_eq!(sigma.len(), self.n_vars);
        self.map_keys(|k| {
            let mut exps = vec![0; self.n_vars];
            for (i, &e) in k.exps.iter().enumerate() {
                exps[sigma[i]] = e;
            }
            let images: Vec<usize> = bits(k.theta).map(|i| sigma[i]).collect();
            let odd = sort_sign(&images).expect("permutation is injective");
            let theta = images.iter().fold(0u32, |acc, &i| acc | 1 << i);
            Some((Monomial { theta, exps }, odd))
        })
    }

    /// Invariance under every simultaneous adjacent exchange.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n_vars.saturating_sub(1)).all(|i| {
            self.exchange(Exchange::Both, i, i + 1)
                .is_ok_and(|g| g == *self)
        })
    }

    /// Left derivative with respect to `θ_i`.
    pub fn theta_derivative(&self, i: usize) -> SuperPoly {
        self.map_keys(|k| {
            if k.theta >> i & 1 == 0 {
                return None;
            }
            let below = (k.theta & ((1u32 << i) - 1)).count_ones();
            let mut key = k.clone();
            key.theta &= !(1 << i);
            Some((key, below % 2 == 1))
        })
    }

    /// Left multiplication by `θ_i`.
    pub fn theta_mul(&self, i: usize) -> SuperPoly {
        self.map_keys(|k| {
            if k.theta >> i & 1 == 1 {
                return None;
            }
            let below = (k.theta & ((1u32 << i) - 1)).count_ones();
            let mut key = k.clone();
            key.theta |= 1 << i;
            Some((key, below % 2 == 1))
        })
    }

    /// Multiplication by `x_i^e`.
    pub fn x_mul(&self, i: usize, e: i32) -> SuperPoly {
        self.map_keys(|k| {
            let mut key = k.clone();
            key.exps[i] += e;
            Some((key, false))
        })
    }

    /// `x_i ∂/∂x_i`.
    pub fn euler(&self, i: usize) -> SuperPoly {
        let mut out = SuperPoly::zero(self.n_vars);
        for (k, c) in &self.terms {
            let e = k.exps[i];
            if e != 0 {
                out.add_term(k.clone(), c * &RatFunc::from_int(e as i64));
            }
        }
        out
    }

    /// Exact quotient by `x_j - x_k`.
    pub fn div_difference(&self, j: usize, k: usize) -> Result<SuperPoly, PolyError> {
        self.check_index(j)?;
        self.check_index(k)?;
        let mut buckets: BTreeMap<i32, FxHashMap<Monomial, RatFunc>> = BTreeMap::new();
        for (key, c) in &self.terms {
            if key.exps.iter().any(|&e| e < 0) {
                return Err(PolyError::NegativeExponent);
            }
            buckets
                .entry(key.exps[j])
                .or_default()
                .insert(key.clone(), c.clone());
        }
        let mut quotient = SuperPoly::zero(self.n_vars);
        while let Some((d, bucket)) = buckets.pop_last() {
            if d == 0 {
                if bucket.values().any(|c| !c.is_zero()) {
                    return Err(PolyError::InexactDivision(j, k));
                }
                break;
            }
            let lower = buckets.entry(d - 1).or_default();
            for (key, c) in bucket {
                if c.is_zero() {
                    continue;
                }
                let mut q = key.clone();
                q.exps[j] -= 1;
                let mut carry = q.clone();
                carry.exps[k] += 1;
                quotient.add_term(q, c.clone());
                let slot = lower.entry(carry).or_insert_with(RatFunc::zero);
                *slot = &*slot + &c;
            }
        }
        Ok(quotient)
    }

    /// Inverse of `a + ν` with `a` a nonzero scalar and `ν` nilpotent and
    /// free of `x`.
    pub fn invert_even(&self) -> Result<SuperPoly, PolyError> {
        let zero = vec![0; self.n_vars];
        let mut a = RatFunc::zero();
        let mut nil = SuperPoly::zero(self.n_vars);
        for (k, c) in &self.terms {
            if k.exps != zero {
                return Err(PolyError::UnsupportedShape);
            }
            if k.theta == 0 {
                a = c.clone();
            } else {
                nil.add_term(k.clone(), c.clone());
            }
        }
        let inv_a = a.inv().map_err(|_| PolyError::NotInvertible)?;
        let step = nil.scale(&-&inv_a);
        let mut power = SuperPoly::one(self.n_vars);
        let mut sum = SuperPoly::zero(self.n_vars);
        while !power.is_zero() {
            sum.add_assign(&power);
            power = power.mul(&step);
        }
        Ok(sum.scale(&inv_a))
    }

    /// Coefficient of the all-zero exponent vector of a `θ`-free Laurent
    /// polynomial.
    pub fn constant_term(&self) -> Result<RatFunc, PolyError> {
        if self.terms.keys().any(|k| k.theta != 0) {
            return Err(PolyError::ThetaPresent);
        }
        Ok(self.coeff(0, &vec![0; self.n_vars]))
    }

    /// Components with fixed `θ` content, keyed by the bitmask.
    pub fn theta_components(&self) -> HashMap<u32, SuperPoly> {
        let mut out: HashMap<u32, SuperPoly> = HashMap::new();
        for (k, c) in &self.terms {
            out.entry(k.theta)
                .or_insert_with(|| SuperPoly::zero(self.n_vars))
                .add_term(
                    Monomial {
                        theta: 0,
                        exps: k.exps.clone(),
                    },
                    c.clone(),
                );
        }
        out
    }

    /// Part of bosonic degree `n` and fermionic degree `m`.
    pub fn component(&self, n: u32, m: u32) -> SuperPoly {
        let mut out = SuperPoly::zero(self.n_vars);
        for (k, c) in &self.terms {
            let deg: i32 = k.exps.iter().sum();
            if deg == n as i32 && k.theta.count_ones() == m {
                out.add_term(k.clone(), c.clone());
            }
        }
        out
    }

    /// Copies the polynomial into `total` variables, shifting every index by
    /// `offset`.
    pub fn embed(&self, total: usize, offset: usize) -> SuperPoly {
        assert!(offset + self.n_vars <= total && total <= 32);
        let mut out = SuperPoly::zero(total);
        for (k, c) in &self.terms {
            let mut exps = vec![0; total];
            exps[offset..offset + self.n_vars].copy_from_slice(&k.exps);
            out.add_term(
                Monomial {
                    theta: k.theta << offset,
                    exps,
                },
                c.clone(),
            );
        }
        out
    }

    /// The supermonomial `m_Λ` in `n_vars` variables.
    pub fn monomial(lambda: &SuperPartition, n_vars: usize) -> Result<SuperPoly, PolyError> {
        if lambda.length() > n_vars {
            return Err(PolyError::TooFewVariables {
                length: lambda.length(),
                vars: n_vars,
            });
        }
        let mut out = SuperPoly::zero(n_vars);
        let mut slots: Vec<Option<u32>> = vec![None; n_vars];
        let mut bosonic = lambda.sym().to_vec();
        bosonic.resize(n_vars - lambda.m() as usize, 0);
        place_fermions(lambda.antisym(), &mut Vec::new(), &mut slots, &bosonic, &mut out);
        Ok(out)
    }

    /// Coefficients of `m_Λ` in a symmetric polynomial: the coefficient of
    /// `θ_0⋯θ_{m-1} x^Λ` for every superpartition `Λ` of length at most `N`.
    pub fn monomial_coefficients(&self) -> Result<BTreeMap<SuperPartition, RatFunc>, PolyError> {
        if !self.is_symmetric() {
            return Err(PolyError::NotSymmetric);
        }
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            let m = k.theta.count_ones() as usize;
            if k.theta != (1u32 << m) - 1 {
                continue;
            }
            if k.exps.iter().any(|&e| e < 0) {
                return Err(PolyError::NegativeExponent);
            }
            let (a, s) = k.exps.split_at(m);
            if a.windows(2).any(|w| w[0] <= w[1]) || s.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            let sp = SuperPartition::new(
                a.iter().map(|&e| e as u32).collect(),
                s.iter().map(|&e| e as u32).collect(),
            )
            .expect("strictly decreasing by the check above");
            out.insert(sp, c.clone());
        }
        Ok(out)
    }

    /// Rebuilds `Σ c_Λ m_Λ` in `n_vars` variables.
    pub fn from_monomial_coefficients<'a>(
        coeffs: impl IntoIterator<Item = (&'a SuperPartition, &'a RatFunc)>,
        n_vars: usize,
    ) -> Result<SuperPoly, PolyError> {
        let mut out = SuperPoly::zero(n_vars);
        for (sp, c) in coeffs {
            if sp.length() > n_vars {
                continue;
            }
            out.add_assign(&SuperPoly::monomial(sp, n_vars)?.scale(c));
        }
        Ok(out)
    }
}

fn place_fermions(
    antisym: &[u32],
    positions: &mut Vec<usize>,
    slots: &mut [Option<u32>],
    bosonic: &[u32],
    out: &mut SuperPoly,
) {
    if positions.len() == antisym.len() {
        let odd = sort_sign(positions).expect("distinct positions");
        let theta = positions.iter().fold(0u32, |acc, &i| acc | 1 << i);
        let free: Vec<usize> = (0..slots.len()).filter(|&i| slots[i].is_none()).collect();
        let mut exps = vec![0i32; slots.len()];
        for (i, s) in slots.iter().enumerate() {
            if let Some(v) = s {
                exps[i] = *v as i32;
            }
        }
        let coeff = if odd { RatFunc::from_int(-1) } else { RatFunc::one() };
        for arrangement in multiset_permutations(bosonic) {
            let mut e = exps.clone();
            for (slot, v) in free.iter().zip(&arrangement) {
                e[*slot] = *v as i32;
            }
            out.add_term(Monomial { theta, exps: e }, coeff.clone());
        }
        return;
    }
    let part = antisym[positions.len()];
    for i in 0..slots.len() {
        if slots[i].is_none() {
            slots[i] = Some(part);
            positions.push(i);
            place_fermions(antisym, positions, slots, bosonic, out);
            positions.pop();
            slots[i] = None;
        }
    }
}

/// Distinct orderings of a multiset.
pub fn multiset_permutations(items: &[u32]) -> Vec<Vec<u32>> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &v in items {
        *counts.entry(v).or_default() += 1;
    }
    let mut values: Vec<(u32, usize)> = counts.into_iter().collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(items.len());
    fn go(values: &mut [(u32, usize)], cur: &mut Vec<u32>, len: usize, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 0..values.len() {
            if values[i].1 > 0 {
                values[i].1 -= 1;
                cur.push(values[i].0);
                go(values, cur, len, out);
                cur.pop();
                values[i].1 += 1;
            }
        }
    }
    go(&mut values, &mut cur, items.len(), &mut out);
    out
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(k, c)| {
                let mut s = format!("({c})");
                for i in bits(k.theta) {
                    s.push_str(&format!("*θ{}", i + 1));
                }
                for (i, &e) in k.exps.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!("*x{}", i + 1)),
                        _ => s.push_str(&format!("*x{}^{}", i + 1, e)),
                    }
                }
                s
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    fn sp(s: &str) -> SuperPartition {
        s.parse().unwrap()
    }

    fn x(n: usize, i: usize) -> SuperPoly {
        SuperPoly::x(n, i)
    }

    fn th(n: usize, i: usize) -> SuperPoly {
        SuperPoly::theta(n, i)
    }

    #[test]
    fn theta_products() {
        let (t1, t2) = (th(2, 0), th(2, 1));
        assert_eq!(t1.mul(&t2), SuperPoly::term(2, 0b11, vec![0, 0], c(1)));
        assert_eq!(t2.mul(&t1), SuperPoly::term(2, 0b11, vec![0, 0], c(-1)));
        assert!(t1.mul(&x(2, 0)).mul(&t1.mul(&x(2, 1))).is_zero());
        let s = t1.add(&t2);
        assert!(s.mul(&s).is_zero());
    }

    #[test]
    fn exchanges() {
        let f = x(2, 0).pow(2).mul(&x(2, 1));
        assert_eq!(
            f.exchange(Exchange::X, 0, 1).unwrap(),
            x(2, 0).mul(&x(2, 1).pow(2))
        );
        let t12 = th(2, 0).mul(&th(2, 1));
        assert_eq!(t12.exchange(Exchange::Theta, 0, 1).unwrap(), t12.scale(&c(-1)));
        let g = th(2, 0).mul(&x(2, 0).pow(4)).add(&th(2, 1).mul(&x(2, 1).pow(4)));
        assert_eq!(g.exchange(Exchange::Both, 0, 1).unwrap(), g);
        let t13 = SuperPoly::term(3, 0b011, vec![0; 3], c(1));
        assert_eq!(
            t13.exchange(Exchange::Theta, 0, 2).unwrap(),
            SuperPoly::term(3, 0b110, vec![0; 3], c(-1))
        );
    }

    #[test]
    fn symmetry_detection() {
        let a = th(2, 0).mul(&x(2, 1).pow(2)).add(&th(2, 1).mul(&x(2, 0).pow(2)));
        assert!(a.is_symmetric());
        assert!(!th(2, 0).mul(&x(2, 0)).is_symmetric());
        let d = x(2, 0).pow(3).mul(&x(2, 1)).sub(&x(2, 0).mul(&x(2, 1).pow(3)));
        assert!(th(2, 0).mul(&th(2, 1)).mul(&d).is_symmetric());
    }

    #[test]
    fn theta_derivatives() {
        let t12 = th(3, 0).mul(&th(3, 1));
        assert_eq!(t12.theta_derivative(0), th(3, 1));
        assert_eq!(t12.theta_derivative(1), th(3, 0).scale(&c(-1)));
        assert!(t12.theta_derivative(2).is_zero());
    }

    #[test]
    fn even_inverse() {
        let pair = |i: usize, j: usize| th(4, i).mul(&th(4, j));
        let f = SuperPoly::one(4).sub(&pair(0, 1)).sub(&pair(2, 3));
        let expected = SuperPoly::one(4)
            .add(&pair(0, 1))
            .add(&pair(2, 3))
            .add(&pair(0, 1).mul(&pair(2, 3)).scale(&c(2)));
        assert_eq!(f.invert_even().unwrap(), expected);
        assert_eq!(SuperPoly::one(4).invert_even().unwrap(), SuperPoly::one(4));
        let g = SuperPoly::constant(2, c(2)).add(&th(2, 0).mul(&th(2, 1)));
        let inv = g.invert_even().unwrap();
        assert_eq!(g.mul(&inv), SuperPoly::one(2));
        assert!(x(2, 0).invert_even().is_err());
        assert!(th(2, 0).invert_even().is_err());
    }

    #[test]
    fn realized_monomials() {
        assert_eq!(SuperPoly::monomial(&sp(";1"), 2).unwrap(), x(2, 0).add(&x(2, 1)));
        assert_eq!(SuperPoly::monomial(&sp("0;"), 2).unwrap(), th(2, 0).add(&th(2, 1)));
        let expected = th(2, 0).mul(&th(2, 1)).mul(&x(2, 0).sub(&x(2, 1)));
        assert_eq!(SuperPoly::monomial(&sp("1,0;"), 2).unwrap(), expected);
        assert!(SuperPoly::monomial(&sp(";1,1,1"), 2).is_err());
    }

    #[test]
    fn monomial_extraction() {
        let f = SuperPoly::monomial(&sp("1,0;1"), 4).unwrap();
        let got = f.monomial_coefficients().unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[&sp("1,0;1")], c(1));
        let s = (0..3).fold(SuperPoly::zero(3), |a, i| a.add(&th(3, i)));
        let p = (0..3).fold(SuperPoly::zero(3), |a, i| a.add(&x(3, i)));
        let got = s.mul(&p).monomial_coefficients().unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(got[&sp("1;")], c(1));
        assert_eq!(got[&sp("0;1")], c(1));
        assert!(SuperPoly::zero(3).monomial_coefficients().unwrap().is_empty());
        assert_eq!(
            th(2, 0).monomial_coefficients(),
            Err(PolyError::NotSymmetric)
        );
    }

    #[test]
    fn constant_terms() {
        let f = x(2, 0)
            .x_mul(1, -1)
            .add(&SuperPoly::constant(2, c(2)))
            .sub(&x(2, 1).x_mul(0, -1));
        assert_eq!(f.constant_term().unwrap(), c(2));
        assert_eq!(SuperPoly::one(2).constant_term().unwrap(), c(1));
        assert_eq!(x(2, 0).constant_term().unwrap(), c(0));
        assert!(th(2, 0).constant_term().is_err());
    }

    #[test]
    fn division_by_difference() {
        let f = x(2, 0).pow(3).sub(&x(2, 1).pow(3));
        let q = f.div_difference(0, 1).unwrap();
        let expected = x(2, 0).pow(2).add(&x(2, 0).mul(&x(2, 1))).add(&x(2, 1).pow(2));
        assert_eq!(q, expected);
        assert_eq!(
            x(2, 0).div_difference(0, 1),
            Err(PolyError::InexactDivision(0, 1))
        );
    }

    #[test]
    fn reversal_signs() {
        let signs: Vec<i64> = (0..6).map(reversal_sign).collect();
        assert_eq!(signs, [1, 1, -1, -1, 1, 1]);
        for k in 0..=6usize {
            let forward = (0..k).fold(SuperPoly::one(6), |a, i| a.mul(&th(6, i)));
            let backward = (0..k).rev().fold(SuperPoly::one(6), |a, i| a.mul(&th(6, i)));
            assert_eq!(backward, forward.scale(&c(reversal_sign(k))));
        }
    }
}
