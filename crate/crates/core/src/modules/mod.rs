//! Generalized Verma modules M_p(λ) and their twists W_p(λ,α) on explicit bases,
//! with the Gelfand–Tsetlin analyses of the twisted ones.

pub mod analysis;
pub mod induced;
pub mod inducing;
pub mod twisted;
pub mod verma;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::pbw::{Uea, UEAElement};
use crate::rat::Rat;
use crate::rootsys::{ChevalleyBasis, ParabolicData, Weight};

pub use analysis::{CharacterEntry, CyclicityReport, GTReport};
pub use inducing::InducingModule;
pub use twisted::TwistedModule;
pub use verma::VermaModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Verma,
    Twisted,
}

/// A basis tensor: exponents over Δ⁺_u in root order and an index into F_λ.
pub type BasisKey = (Vec<i64>, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    pub mode: Mode,
    pub terms: BTreeMap<BasisKey, Rat>,
}

impl ModuleVector {
    pub fn zero(mode: Mode) -> Self {
        ModuleVector {
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(mode: Mode, a: Vec<i64>, j: usize) -> Self {
        let mut v = Self::zero(mode);
        v.terms.insert((a, j), Rat::from_integer(1.into()));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: BasisKey, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// self += c·o
    pub fn axpy(&mut self, c: &Rat, o: &ModuleVector) {
        debug_assert_eq!(self.mode, o.mode);
        for (k, v) in &o.terms {
            self.add_term(k.clone(), &(c * v));
        }
    }

    pub fn sub(&self, o: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.axpy(&-Rat::from_integer(1.into()), o);
        out
    }

    pub fn scale(&self, c: &Rat) -> ModuleVector {
        let mut out = Self::zero(self.mode);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        }
        out
    }

    /// Largest exponent occurring in the support.
    pub fn max_exponent(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|(a, _)| a.iter().copied())
            .max()
            .unwrap_or(0)
    }
}

/// Common interface of M_p(λ) and W_p(λ,α).
pub trait GModule {
    fn basis_data(&self) -> &Arc<ChevalleyBasis>;
    fn parabolic(&self) -> &ParabolicData;
    fn inducing(&self) -> &InducingModule;
    fn mode(&self) -> Mode;

    /// Action of a Chevalley basis element.
    fn act(&self, x: usize, v: &ModuleVector) -> ModuleVector;

    /// h-weight of a basis tensor.
    fn weight(&self, key: &BasisKey) -> Weight;

    /// Basis tensors of weight μ with all exponents ≤ cutoff, sorted.
    fn weight_space_basis(&self, mu: &Weight, cutoff: usize) -> Vec<BasisKey>;

    /// Action of an element of U(g) in global normal order.
    fn act_uea(&self, uea: &Uea, z: &UEAElement, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero(self.mode());
        for (m, c) in &z.terms {
            let ids = uea.engine.mono_ids(m);
            let mut w = v.clone();
            for &id in ids.iter().rev() {
                if w.is_zero() {
                    break;
                }
                w = self.act(id, &w);
            }
            out.axpy(c, &w);
        }
        out
    }

    /// Matrix of x from the span of `src` to the span of `dst` (columns = sources).
    /// Returns None when an image leaves `dst`.
    fn matrix_between(
        &self,
        x: &dyn Fn(&ModuleVector) -> ModuleVector,
        src: &[BasisKey],
        dst: &[BasisKey],
    ) -> Option<crate::linalg::Matrix> {
        let index: BTreeMap<&BasisKey, usize> = dst.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut m = crate::linalg::Matrix::zeros(dst.len(), src.len());
        for (c, key) in src.iter().enumerate() {
            let img = x(&ModuleVector::basis(self.mode(), key.0.clone(), key.1));
            for (k, v) in &img.terms {
                let r = *index.get(k)?;
                m.set(r, c, v.clone());
            }
        }
        Some(m)
    }
}

/// Solutions a ∈ [0,cutoff]^{Δ⁺_u} of Σ_γ s_γ a_γ γ = target, where s_γ = ±1.
/// Non-simple coordinates are enumerated and the simple ones are then forced.
pub(crate) fn solve_exponents(
    cb: &ChevalleyBasis,
    p: &ParabolicData,
    signs: &[i64],
    target: &Weight,
    cutoff: usize,
) -> Vec<Vec<i64>> {
    let rs = &cb.rs;
    if !target.is_integral() {
        return Vec::new();
    }
    let t: Vec<i64> = target.0.iter().map(|x| crate::rat::to_i64(x).unwrap()).collect();
    let u = &p.delta_u_plus;
    let free: Vec<usize> = (0..u.len()).filter(|&k| !rs.is_simple(u[k])).collect();
    let fixed: Vec<usize> = (0..u.len()).filter(|&k| rs.is_simple(u[k])).collect();
    let mut out = Vec::new();
    let mut digits = vec![0i64; free.len()];
    loop {
        let mut rest = t.clone();
        for (d, &k) in free.iter().enumerate() {
            let g = rs.root(u[k]);
            for i in 0..rs.rank {
                rest[i] -= signs[k] * digits[d] * g[i];
            }
        }
        let mut a = vec![0i64; u.len()];
        for (d, &k) in free.iter().enumerate() {
            a[k] = digits[d];
        }
        let mut ok = true;
        let mut used = vec![false; rs.rank];
        for &k in &fixed {
            let i = rs.simple_index(u[k]).unwrap();
            used[i] = true;
            let v = signs[k] * rest[i];
            if v < 0 || v > cutoff as i64 {
                ok = false;
                break;
            }
            a[k] = v;
        }
        if ok && (0..rs.rank).all(|i| used[i] || rest[i] == 0) {
            out.push(a);
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                out.sort();
                return out;
            }
            digits[i] += 1;
            if digits[i] <= cutoff as i64 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}
