//! Fock-type quotients of the Weyl algebra, tensored with an inducing module.
//!
//! Verma: C[∂_γ] (x_γ acts as −d/d∂_γ); negative exponents give the ∂_α-localization.
//! Gt(α): C[x_α, ∂_γ (γ≠α)] (∂_α acts as d/dx_α).

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::rat::{self, Rat};

use super::op::{Coef, Op};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FockMode {
    Verma,
    /// Variable position of α.
    Gt(usize),
}

pub type FockKey = (Vec<i32>, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockVector {
    pub mode: FockMode,
    pub nvars: usize,
    /// exponents (of ∂_γ, or of x_α in the α slot for Gt) and inducing index → coefficient.
    pub terms: BTreeMap<FockKey, Rat>,
}

/// e(e−1)…(e−k+1)
fn falling(e: i64, k: u16) -> Rat {
    let mut r = Rat::one();
    for t in 0..k as i64 {
        r *= rat::int(e - t);
    }
    r
}

impl FockVector {
    pub fn zero(mode: FockMode, nvars: usize) -> Self {
        FockVector {
            mode,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(mode: FockMode, exps: Vec<i32>, j: usize) -> Self {
        let mut v = Self::zero(mode, exps.len());
        v.terms.insert((exps, j), Rat::one());
        v
    }

    /// 1 ⊗ v_j
    pub fn vacuum(mode: FockMode, nvars: usize, j: usize) -> Self {
        Self::basis(mode, vec![0; nvars], j)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: FockKey, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn axpy(&mut self, c: &Rat, o: &FockVector) {
        for (k, v) in &o.terms {
            self.add_term(k.clone(), &(c * v));
        }
    }

    pub fn scale(&self, c: &Rat) -> FockVector {
        let mut out = Self::zero(self.mode, self.nvars);
        out.axpy(c, self);
        out
    }

    pub fn sub(&self, o: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.axpy(&-Rat::one(), o);
        out
    }

    /// ∂_k^s for any integer s (Verma mode, where ∂ multiplies).
    pub fn shift(&self, k: usize, s: i32) -> FockVector {
        assert_eq!(self.mode, FockMode::Verma);
        let mut out = Self::zero(self.mode, self.nvars);
        for ((e, j), c) in &self.terms {
            let mut e = e.clone();
            e[k] += s;
            out.terms.insert((e, *j), c.clone());
        }
        out
    }

    fn multiplies_by_d(&self, k: usize) -> bool {
        self.mode != FockMode::Gt(k)
    }

    /// Applies x^X ∂^D (∂ first) to one exponent vector; None when the result vanishes.
    fn apply_mono(&self, x: &[u16], d: &[u16], e: &[i32]) -> Option<(Vec<i32>, Rat)> {
        let mut e = e.to_vec();
        let mut c = Rat::one();
        for k in 0..self.nvars {
            if self.multiplies_by_d(k) {
                e[k] += d[k] as i32;
                if x[k] > 0 {
                    c *= falling(e[k] as i64, x[k]);
                    if x[k] % 2 == 1 {
                        c = -c;
                    }
                    e[k] -= x[k] as i32;
                }
            } else {
                if d[k] > 0 {
                    c *= falling(e[k] as i64, d[k]);
                    e[k] -= d[k] as i32;
                }
                e[k] += x[k] as i32;
            }
            if c.is_zero() {
                return None;
            }
        }
        Some((e, c))
    }

    /// Action of an operator whose coefficients act on the inducing index.
    pub fn apply<C: Coef>(&self, op: &Op<C>) -> FockVector {
        let mut out = Self::zero(self.mode, self.nvars);
        for ((x, d), m) in &op.terms {
            for ((e, j), c) in &self.terms {
                let Some((e2, f)) = self.apply_mono(x, d, e) else {
                    continue;
                };
                let cf = c * f;
                for (i, v) in m.column(*j) {
                    out.add_term((e2.clone(), i), &(&cf * v));
                }
            }
        }
        out
    }

    /// Verma-mode image in the Gt(α) module: ∂_α^{−n} ↦ x_α^{n−1}/(n−1)!, nonnegative powers ↦ 0.
    pub fn ses(&self, alpha: usize) -> FockVector {
        assert_eq!(self.mode, FockMode::Verma);
        let mut out = Self::zero(FockMode::Gt(alpha), self.nvars);
        for ((e, j), c) in &self.terms {
            if e[alpha] >= 0 {
                continue;
            }
            let m = -e[alpha] - 1;
            let mut e2 = e.clone();
            e2[alpha] = m;
            out.add_term((e2, *j), &(c / rat::factorial(m as u64)));
        }
        out
    }

    pub fn min_exponent(&self) -> i32 {
        self.terms
            .keys()
            .flat_map(|(e, _)| e.iter().copied())
            .min()
            .unwrap_or(0)
    }
}

/// Random vectors of the ∂_α-localized Verma module: a few terms with the α exponent in
/// [−3, 2], the others in [0, 2], and small rational coefficients.
pub fn random_localized(
    nvars: usize,
    alpha: usize,
    dim: usize,
    count: usize,
    rng: &mut impl Rng,
) -> Vec<FockVector> {
    (0..count)
        .map(|_| {
            let mut v = FockVector::zero(FockMode::Verma, nvars);
            for _ in 0..rng.gen_range(1..=3) {
                let e: Vec<i32> = (0..nvars)
                    .map(|k| if k == alpha { rng.gen_range(-3..=2) } else { rng.gen_range(0..=2) })
                    .collect();
                let c = rat::frac(rng.gen_range(-5..=5), rng.gen_range(1..=4));
                v.add_term((e, rng.gen_range(0..dim)), &c);
            }
            v
        })
        .collect()
}

/// The operator x_α^n ∏_{γ≠α} ∂_γ^{a_γ} whose image of the vacuum is the Gt monomial with exponents e.
pub fn gt_monomial_op(alpha: usize, e: &[i32]) -> Op<Rat> {
    let n = e.len();
    let mut x = vec![0u16; n];
    let mut d = vec![0u16; n];
    for k in 0..n {
        if k == alpha {
            x[k] = e[k] as u16;
        } else {
            d[k] = e[k] as u16;
        }
    }
    Op::monomial(x, d, Rat::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::op::WeylOperator;

    #[test]
    fn x_lowers_in_verma() {
        let v = FockVector::basis(FockMode::Verma, vec![3], 0);
        let w = v.apply(&WeylOperator::x(1, 0));
        assert_eq!(w.terms[&(vec![2], 0)], rat::int(-3));
        let v = FockVector::basis(FockMode::Verma, vec![-2], 0);
        let w = v.apply(&WeylOperator::x(1, 0));
        assert_eq!(w.terms[&(vec![-3], 0)], rat::int(2));
    }

    #[test]
    fn ses_intertwines_x() {
        let v = FockVector::basis(FockMode::Verma, vec![-3], 0);
        let x = WeylOperator::x(1, 0);
        let d = WeylOperator::d(1, 0);
        for op in [x, d] {
            assert_eq!(v.apply(&op).ses(0), v.ses(0).apply(&op));
        }
    }
}
