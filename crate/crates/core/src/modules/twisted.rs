//! W_p(λ,α) = T_α(M_p(λ)) on the basis u_{a,α} ⊗ v_j.
//!
//! u_{a,α} = f_α^{−a_α−1} ∏_{γ≠α} f_γ^{a_γ} with the product in root order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice;
use crate::rat::{self, Rat};
use crate::rootsys::{ChevalleyBasis, ParabolicData, Weight};

use super::induced::InducedAction;
use super::inducing::InducingModule;
use super::{solve_exponents, BasisKey, GModule, Mode, ModuleVector};

type Image = Arc<Vec<(BasisKey, Rat)>>;

pub struct TwistedModule {
    pub cb: Arc<ChevalleyBasis>,
    pub p: ParabolicData,
    pub fl: Arc<InducingModule>,
    /// Index of α among the positive roots.
    pub alpha: usize,
    /// Position of α inside Δ⁺_u.
    pub alpha_pos: usize,
    induced: InducedAction,
    /// ad(f_α)^k x for every basis id x.
    ad_powers: Vec<Vec<Vec<(usize, Rat)>>>,
    cache: Mutex<HashMap<(usize, BasisKey), Image>>,
}

impl std::fmt::Debug for TwistedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TwistedModule")
            .field("alpha", &self.alpha)
            .field("sigma", &self.p.sigma)
            .field("lambda", &self.fl.lambda)
            .finish()
    }
}

/// Rejects α outside the nilradical: there T_α kills the (locally f_α-finite) module.
pub fn check_alpha(rs_p: &ParabolicData, alpha: usize) -> Result<()> {
    if !rs_p.in_u(alpha) {
        return Err(Error::Config(
            "alpha lies in the Levi factor; f_alpha acts locally finitely on M_p(lambda), \
             so T_alpha(M) = 0 for such modules and there is nothing to twist"
                .into(),
        ));
    }
    Ok(())
}

impl TwistedModule {
    pub fn new(
        cb: Arc<ChevalleyBasis>,
        p: &ParabolicData,
        lambda: &Weight,
        alpha: usize,
    ) -> Result<Self> {
        check_alpha(p, alpha)?;
        let fl = Arc::new(InducingModule::build(&cb, p, lambda)?);
        Self::with_inducing(cb, p, fl, alpha)
    }

    pub fn with_inducing(
        cb: Arc<ChevalleyBasis>,
        p: &ParabolicData,
        fl: Arc<InducingModule>,
        alpha: usize,
    ) -> Result<Self> {
        check_alpha(p, alpha)?;
        let alpha_pos = p.delta_u_plus.iter().position(|&g| g == alpha).unwrap();
        let mut order = vec![cb.f(alpha)];
        order.extend(
            p.delta_u_plus
                .iter()
                .filter(|&&g| g != alpha)
                .map(|&g| cb.f(g)),
        );
        let induced = InducedAction::new(cb.clone(), fl.clone(), order)?;
        let fa = cb.f(alpha);
        let ad_powers = (0..cb.dim())
            .map(|x| {
                let mut cur = vec![(x, Rat::one())];
                let mut out = Vec::new();
                while !cur.is_empty() {
                    out.push(cur.clone());
                    let mut next: std::collections::BTreeMap<usize, Rat> = Default::default();
                    for (s, cs) in &cur {
                        for &(z, cz) in cb.bracket(fa, *s) {
                            *next.entry(z).or_insert_with(Rat::zero) += cs * rat::int(cz);
                        }
                    }
                    cur = next.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                }
                out
            })
            .collect();
        Ok(TwistedModule {
            cb,
            p: p.clone(),
            fl,
            alpha,
            alpha_pos,
            induced,
            ad_powers,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn nu(&self) -> usize {
        self.p.delta_u_plus.len()
    }

    /// u_{0,α} ⊗ v_j.
    pub fn generator(&self, j: usize) -> ModuleVector {
        ModuleVector::basis(Mode::Twisted, vec![0; self.nu()], j)
    }

    /// Splits a into (f_α exponent magnitude m, the rest as an α-first monomial).
    fn split(&self, a: &[i64]) -> (i64, Vec<u16>) {
        let mut mono = vec![0u16; self.nu()];
        let mut k = 1;
        for (i, &e) in a.iter().enumerate() {
            if i == self.alpha_pos {
                continue;
            }
            mono[k] = e as u16;
            k += 1;
        }
        (a[self.alpha_pos] + 1, mono)
    }

    fn join(&self, a_alpha: i64, mono: &[u16]) -> Vec<i64> {
        let mut a = Vec::with_capacity(self.nu());
        let mut k = 1;
        for i in 0..self.nu() {
            if i == self.alpha_pos {
                a.push(a_alpha);
            } else {
                a.push(mono[k] as i64);
                k += 1;
            }
        }
        a
    }

    fn act_basis(&self, x: usize, key: &BasisKey) -> Image {
        let ck = (x, key.clone());
        if let Some(hit) = self.cache.lock().unwrap().get(&ck) {
            return hit.clone();
        }
        let (m, q) = self.split(&key.0);
        let mut out = ModuleVector::zero(Mode::Twisted);
        // x f^{−m} = Σ_k C(m+k−1,k) f^{−m−k} ad(f)^k(x); nonnegative f-powers vanish
        for (k, yk) in self.ad_powers[x].iter().enumerate() {
            let b = rat::rising_binom(&rat::int(m), k as u64);
            for (s, cs) in yk {
                let coef = &b * cs;
                for ((mono, j), v) in self.induced.act(*s, &q, key.1).iter() {
                    let n = -m - k as i64 + mono[0] as i64;
                    if n >= 0 {
                        continue;
                    }
                    out.add_term((self.join(-n - 1, mono), *j), &(&coef * v));
                }
            }
        }
        let img: Image = Arc::new(out.terms.into_iter().collect());
        self.cache.lock().unwrap().insert(ck, img.clone());
        img
    }

    pub fn mu_weight(&self, a: &[i64]) -> Weight {
        let mut full = vec![0; self.cb.npos()];
        for (k, &g) in self.p.delta_u_plus.iter().enumerate() {
            full[g] = a[k];
        }
        lattice::mu_weight_full(&self.cb.rs, &full, self.alpha)
    }

    /// Signs s_γ with μ_{a,α} − α = Σ s_γ a_γ γ.
    fn signs(&self) -> Vec<i64> {
        self.p
            .delta_u_plus
            .iter()
            .map(|&g| if g == self.alpha { 1 } else { -1 })
            .collect()
    }

    /// a_α of a basis tensor.
    pub fn alpha_exponent(&self, key: &BasisKey) -> i64 {
        key.0[self.alpha_pos]
    }
}

impl GModule for TwistedModule {
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
        Mode::Twisted
    }

    fn act(&self, x: usize, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero(Mode::Twisted);
        for (key, c) in &v.terms {
            for (k2, d) in self.act_basis(x, key).iter() {
                out.add_term(k2.clone(), &(c * d));
            }
        }
        out
    }

    fn weight(&self, key: &BasisKey) -> Weight {
        self.fl.weights[key.1].add(&self.mu_weight(&key.0))
    }

    fn weight_space_basis(&self, mu: &Weight, cutoff: usize) -> Vec<BasisKey> {
        let signs = self.signs();
        let alpha_w = Weight::from_root(self.cb.rs.root(self.alpha));
        let mut out = Vec::new();
        for (j, w) in self.fl.weights.iter().enumerate() {
            let target = mu.sub(w).sub(&alpha_w);
            for a in solve_exponents(&self.cb, &self.p, &signs, &target, cutoff) {
                out.push((a, j));
            }
        }
        out.sort();
        out
    }
}
