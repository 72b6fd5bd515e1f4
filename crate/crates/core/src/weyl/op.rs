//! Normal-ordered differential operators x^X ∂^D with coefficients in a ring that
//! commutes with every x and ∂ (rationals, or endomorphisms of an inducing module).

use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::linalg::Matrix;
use crate::rat::{self, Rat};
use crate::rootsys::Root;

pub type Mono = Vec<u16>;

pub trait Coef: Clone + PartialEq + std::fmt::Debug {
    fn vanishes(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn scaled(&self, c: &Rat) -> Self;
    /// Image of the j-th basis vector of the coefficient space.
    fn column(&self, j: usize) -> Vec<(usize, Rat)>;
}

impl Coef for Rat {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn scaled(&self, c: &Rat) -> Self {
        self * c
    }
    fn column(&self, j: usize) -> Vec<(usize, Rat)> {
        vec![(j, self.clone())]
    }
}

impl Coef for Matrix {
    fn vanishes(&self) -> bool {
        Matrix::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        Matrix::add(self, o)
    }
    fn times(&self, o: &Self) -> Self {
        Matrix::mul(self, o)
    }
    fn scaled(&self, c: &Rat) -> Self {
        Matrix::scale(self, c)
    }
    fn column(&self, j: usize) -> Vec<(usize, Rat)> {
        (0..self.rows)
            .filter_map(|i| {
                let v = self.get(i, j);
                (!Zero::is_zero(v)).then(|| (i, v.clone()))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Op<C> {
    pub nvars: usize,
    /// (x-exponents, ∂-exponents) → coefficient.
    pub terms: BTreeMap<(Mono, Mono), C>,
}

/// Scalar operator in the Weyl algebra.
pub type WeylOperator = Op<Rat>;
/// Operator valued in End F for an inducing module F.
pub type MatrixOperator = Op<Matrix>;

impl<C: Coef> Op<C> {
    pub fn zero(nvars: usize) -> Self {
        Op {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(x: Mono, d: Mono, c: C) -> Self {
        let mut o = Self::zero(x.len());
        o.add_term((x, d), c);
        o
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: (Mono, Mono), c: C) {
        if c.vanishes() {
            return;
        }
        match self.terms.remove(&key) {
            Some(old) => {
                let s = old.plus(&c);
                if !s.vanishes() {
                    self.terms.insert(key, s);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.nvars);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.scaled(c));
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rat::one()))
    }

    /// Product with the right factor's x's moved past the left factor's ∂'s:
    /// ∂^B x^C = Σ_K C(B,K) C(C,K) K! x^{C−K} ∂^{B−K}, variable by variable.
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.nvars;
        let mut out = Self::zero(n);
        for ((x1, d1), c1) in &self.terms {
            for ((x2, d2), c2) in &o.terms {
                let c12 = c1.times(c2);
                if c12.vanishes() {
                    continue;
                }
                let top: Vec<u16> = (0..n).map(|i| d1[i].min(x2[i])).collect();
                let mut k = vec![0u16; n];
                loop {
                    let mut f = Rat::one();
                    let mut x = x1.clone();
                    let mut d = d2.clone();
                    for i in 0..n {
                        let ki = k[i] as u64;
                        if ki > 0 {
                            f *= rat::binom(d1[i] as u64, ki)
                                * rat::binom(x2[i] as u64, ki)
                                * rat::factorial(ki);
                        }
                        x[i] += x2[i] - k[i];
                        d[i] += d1[i] - k[i];
                    }
                    out.add_term((x, d), c12.scaled(&f));
                    let mut i = 0;
                    loop {
                        if i == n {
                            break;
                        }
                        if k[i] < top[i] {
                            k[i] += 1;
                            break;
                        }
                        k[i] = 0;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn pow(&self, k: usize, one: &Self) -> Self {
        let mut out = one.clone();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Q-degree with deg x_γ = γ and deg ∂_γ = −γ; None for zero or inhomogeneous operators.
    pub fn degree(&self, roots: &[Root]) -> Option<Vec<i64>> {
        let mut deg: Option<Vec<i64>> = None;
        for (x, d) in self.terms.keys() {
            let rank = roots.first().map_or(0, |r| r.len());
            let mut g = vec![0i64; rank];
            for (k, r) in roots.iter().enumerate() {
                let e = x[k] as i64 - d[k] as i64;
                for i in 0..rank {
                    g[i] += e * r[i];
                }
            }
            match &deg {
                None => deg = Some(g),
                Some(prev) if *prev != g => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn map<D: Coef>(&self, f: impl Fn(&C) -> D) -> Op<D> {
        let mut out = Op::zero(self.nvars);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }
}

impl Op<Rat> {
    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], vec![0; nvars], Rat::one())
    }

    pub fn x(nvars: usize, k: usize) -> Self {
        let mut x = vec![0; nvars];
        x[k] = 1;
        Self::monomial(x, vec![0; nvars], Rat::one())
    }

    pub fn d(nvars: usize, k: usize) -> Self {
        let mut d = vec![0; nvars];
        d[k] = 1;
        Self::monomial(vec![0; nvars], d, Rat::one())
    }

    /// The same operator acting diagonally on a dim-dimensional coefficient space.
    pub fn lift(&self, dim: usize) -> MatrixOperator {
        self.map(|c| Matrix::identity(dim).scale(c))
    }

    pub fn format(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for ((x, d), c) in &self.terms {
            let mut factors = Vec::new();
            for (k, &e) in x.iter().enumerate() {
                if e > 0 {
                    factors.push(power(&format!("x[{}]", labels[k]), e));
                }
            }
            for (k, &e) in d.iter().enumerate() {
                if e > 0 {
                    factors.push(power(&format!("d[{}]", labels[k]), e));
                }
            }
            let body = factors.join("*");
            parts.push(match (body.is_empty(), c.is_one()) {
                (true, _) => rat::fmt(c),
                (false, true) => body,
                (false, false) if *c == -Rat::one() => format!("-{body}"),
                (false, false) => format!("{}*{}", rat::fmt(c), body),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl Op<Matrix> {
    /// The scalar operator when every coefficient is a multiple of the identity.
    pub fn scalar_part(&self) -> Option<WeylOperator> {
        let mut out = Op::zero(self.nvars);
        for (k, m) in &self.terms {
            let c = m.get(0, 0).clone();
            if *m != Matrix::identity(m.rows).scale(&c) {
                return None;
            }
            out.add_term(k.clone(), c);
        }
        Some(out)
    }
}

fn power(s: &str, e: u16) -> String {
    if e == 1 {
        s.to_string()
    } else {
        format!("{s}^{e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_commutation() {
        let x = WeylOperator::x(2, 0);
        let d = WeylOperator::d(2, 0);
        assert_eq!(d.commutator(&x), WeylOperator::one(2));
        assert!(WeylOperator::d(2, 1).commutator(&x).is_zero());
    }

    #[test]
    fn reorder_square() {
        // ∂² x² = x²∂² + 4x∂ + 2
        let x2 = WeylOperator::monomial(vec![2], vec![0], Rat::one());
        let d2 = WeylOperator::monomial(vec![0], vec![2], Rat::one());
        let p = d2.mul(&x2);
        assert_eq!(p.terms.len(), 3);
        assert_eq!(p.terms[&(vec![1], vec![1])], rat::int(4));
        assert_eq!(p.terms[&(vec![0], vec![0])], rat::int(2));
    }
}
