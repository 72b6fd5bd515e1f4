//! M_p(λ) = U(g) ⊗_{U(p)} F_λ on the basis ∏ f_γ^{a_γ} ⊗ v_j (root order).

use std::sync::Arc;

use crate::error::Result;
use crate::rat;
use crate::rootsys::{height, ChevalleyBasis, ParabolicData, Weight};

use super::induced::InducedAction;
use super::inducing::InducingModule;
use super::{solve_exponents, BasisKey, GModule, Mode, ModuleVector};

#[derive(Debug)]
pub struct VermaModule {
    pub cb: Arc<ChevalleyBasis>,
    pub p: ParabolicData,
    pub fl: Arc<InducingModule>,
    induced: InducedAction,
}

impl VermaModule {
    pub fn new(cb: Arc<ChevalleyBasis>, p: &ParabolicData, lambda: &Weight) -> Result<Self> {
        let fl = Arc::new(InducingModule::build(&cb, p, lambda)?);
        Self::with_inducing(cb, p, fl)
    }

    pub fn with_inducing(
        cb: Arc<ChevalleyBasis>,
        p: &ParabolicData,
        fl: Arc<InducingModule>,
    ) -> Result<Self> {
        let order = p.delta_u_plus.iter().map(|&g| cb.f(g)).collect();
        let induced = InducedAction::new(cb.clone(), fl.clone(), order)?;
        Ok(VermaModule {
            cb,
            p: p.clone(),
            fl,
            induced,
        })
    }

    pub fn highest(&self) -> ModuleVector {
        ModuleVector::basis(Mode::Verma, vec![0; self.p.delta_u_plus.len()], 0)
    }

    /// The whole (finite) weight space, with no cutoff.
    pub fn weight_space(&self, mu: &Weight) -> Vec<BasisKey> {
        let bound = self
            .fl
            .weights
            .iter()
            .filter_map(|w| {
                let d = w.sub(mu);
                d.is_integral().then(|| {
                    let r: Vec<i64> = d.0.iter().map(|x| rat::to_i64(x).unwrap()).collect();
                    height(&r).max(0)
                })
            })
            .max()
            .unwrap_or(0);
        self.weight_space_basis(mu, bound as usize)
    }
}

impl GModule for VermaModule {
    fn basis_data(&self) -> &Arc<ChevalleyBasis> {
        &self.cb
    }

    fn parabolic(&self) -> &ParabolicData {
        &self.p
    }

    fn inducing(&self) -> &InducingModule {
        &self.fl
    }

    fn mode(&self) -> Mode {
        Mode::Verma
    }

    fn act(&self, x: usize, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero(Mode::Verma);
        for ((a, j), c) in &v.terms {
            let mono: Vec<u16> = a.iter().map(|&e| e as u16).collect();
            for ((m, jj), d) in self.induced.act(x, &mono, *j).iter() {
                let key = (m.iter().map(|&e| e as i64).collect(), *jj);
                out.add_term(key, &(c * d));
            }
        }
        out
    }

    fn weight(&self, key: &BasisKey) -> Weight {
        let mut w = self.fl.weights[key.1].clone();
        for (k, &g) in self.p.delta_u_plus.iter().enumerate() {
            w = w.add_root(self.cb.rs.root(g), -key.0[k]);
        }
        w
    }

    fn weight_space_basis(&self, mu: &Weight, cutoff: usize) -> Vec<BasisKey> {
        let signs = vec![1; self.p.delta_u_plus.len()];
        let mut out = Vec::new();
        for (j, w) in self.fl.weights.iter().enumerate() {
            for a in solve_exponents(&self.cb, &self.p, &signs, &w.sub(mu), cutoff) {
                out.push((a, j));
            }
        }
        out.sort();
        out
    }
}
