//! Comparison of the basis realization of W_p(λ,α) with its free-field realization
//! on C[x_α, ∂_γ (γ≠α)] ⊗ F_{λ+2ρ_u} under π_{λ+ρ_u}.
//!
//! A basis tensor f_α^{−m} Q ⊗ v is sent to ses(φ_α^m(π(Q)(1 ⊗ v))).

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::Result;
use crate::modules::analysis::Span;
use crate::modules::{BasisKey, GModule, ModuleVector, TwistedModule, VermaModule};
use crate::rat::{self, Rat};

use super::fock::{FockMode, FockVector};
use super::freefield::FreeField;

pub const DEFAULT_GUARD: usize = 512;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonCounts {
    /// Basis tensors in the box.
    pub tensors: usize,
    /// (generator, tensor) pairs compared.
    pub checks: usize,
    pub mismatches: usize,
    /// Images that are a single Fock monomial.
    pub monomial_images: usize,
    /// Sum over weights of (tensors − rank of their images).
    pub rank_deficit: usize,
    pub weights: usize,
    pub character_mismatches: usize,
}

impl ComparisonCounts {
    pub fn ok(&self) -> bool {
        self.mismatches == 0 && self.rank_deficit == 0 && self.character_mismatches == 0
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RealizationReport {
    pub cutoff: usize,
    pub twisted: ComparisonCounts,
    pub verma: ComparisonCounts,
    pub agree: bool,
}

fn box_keys(nvars: usize, cutoff: usize, dim: usize) -> Vec<BasisKey> {
    let mut out = Vec::new();
    let mut a = vec![0i64; nvars];
    loop {
        for j in 0..dim {
            out.push((a.clone(), j));
        }
        let mut i = 0;
        loop {
            if i == nvars {
                return out;
            }
            a[i] += 1;
            if a[i] <= cutoff as i64 {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

fn as_row(v: &FockVector) -> BTreeMap<BasisKey, Rat> {
    v.terms
        .iter()
        .map(|((e, j), c)| ((e.iter().map(|&x| x as i64).collect(), *j), c.clone()))
        .collect()
}

/// Images of module basis tensors in a Fock module.
struct Embedding<'a> {
    ff: &'a FreeField,
    alpha: Option<usize>,
    guard: usize,
    cache: HashMap<BasisKey, FockVector>,
}

impl Embedding<'_> {
    fn image(&mut self, key: &BasisKey) -> Result<FockVector> {
        if let Some(v) = self.cache.get(key) {
            return Ok(v.clone());
        }
        let n = self.ff.nvars();
        let mut v = FockVector::vacuum(FockMode::Verma, n, key.1);
        let order: Vec<usize> = (0..n).filter(|&k| Some(k) != self.alpha).collect();
        for &k in order.iter().rev() {
            for _ in 0..key.0[k] {
                v = v.apply(self.ff.p_op(k));
            }
        }
        if let Some(al) = self.alpha {
            v = self.ff.phi_pow(al, &v, key.0[al] as usize + 1, self.guard)?;
            v = v.ses(al);
        }
        self.cache.insert(key.clone(), v.clone());
        Ok(v)
    }

    fn image_vec(&mut self, w: &ModuleVector, mode: FockMode) -> Result<FockVector> {
        let mut out = FockVector::zero(mode, self.ff.nvars());
        for (k, c) in &w.terms {
            let img = self.image(k)?;
            out.axpy(c, &img);
        }
        Ok(out)
    }
}

fn compare(
    m: &dyn GModule,
    ff: &FreeField,
    alpha: Option<usize>,
    cutoff: usize,
    guard: usize,
) -> Result<ComparisonCounts> {
    let cb = ff.cb.clone();
    let mode = match alpha {
        Some(a) => FockMode::Gt(a),
        None => FockMode::Verma,
    };
    let keys = box_keys(ff.nvars(), cutoff, ff.sigma.dim());
    let mut emb = Embedding {
        ff,
        alpha,
        guard,
        cache: HashMap::new(),
    };
    let mut counts = ComparisonCounts {
        tensors: keys.len(),
        ..Default::default()
    };
    let mut by_weight: BTreeMap<Vec<Rat>, Vec<FockVector>> = BTreeMap::new();
    for key in &keys {
        let img = emb.image(key)?;
        if img.terms.len() == 1 {
            counts.monomial_images += 1;
        }
        let wt: Vec<Rat> = (0..cb.rs.rank)
            .map(|i| cb.rs.simple_pairing(&m.weight(key), i))
            .collect();
        by_weight.entry(wt).or_default().push(img.clone());
        let basis = ModuleVector::basis(m.mode(), key.0.clone(), key.1);
        for x in 0..cb.dim() {
            counts.checks += 1;
            let lhs = img.apply(ff.pi(x));
            let rhs = emb.image_vec(&m.act(x, &basis), mode)?;
            if lhs != rhs {
                counts.mismatches += 1;
            }
        }
    }
    for imgs in by_weight.values() {
        let mut span = Span::default();
        for v in imgs {
            span.insert(&as_row(v));
        }
        counts.rank_deficit += imgs.len() - span.dim();
    }

    // h-character of the Fock monomials in the same box, read off from π(h_i)
    let mut fock_char: BTreeMap<Vec<Rat>, usize> = BTreeMap::new();
    for key in &keys {
        let e: Vec<i32> = key.0.iter().map(|&x| x as i32).collect();
        let v = FockVector::basis(mode, e.clone(), key.1);
        let mut wt = Vec::with_capacity(cb.rs.rank);
        for i in 0..cb.rs.rank {
            let hv = v.apply(ff.pi(cb.h(i)));
            match hv.terms.iter().next() {
                None => wt.push(rat::zero()),
                Some((k, c)) if hv.terms.len() == 1 && *k == (e.clone(), key.1) => {
                    wt.push(c.clone())
                }
                _ => {
                    counts.character_mismatches += 1;
                    wt.push(rat::zero());
                }
            }
        }
        *fock_char.entry(wt).or_default() += 1;
    }
    counts.weights = by_weight.len().max(fock_char.len());
    for (wt, imgs) in &by_weight {
        if fock_char.get(wt).copied().unwrap_or(0) != imgs.len() {
            counts.character_mismatches += 1;
        }
    }
    for wt in fock_char.keys() {
        if !by_weight.contains_key(wt) {
            counts.character_mismatches += 1;
        }
    }
    Ok(counts)
}

/// The free field π_{λ+ρ_u} acting on F_{λ+2ρ_u}, with the basis of F_λ carried over.
pub fn shifted_free_field(w: &TwistedModule) -> Result<FreeField> {
    let two_rho = w.p.rho_u.scale(&rat::int(2));
    let sigma = Arc::new(w.fl.shifted(&w.cb, &w.p, &two_rho)?);
    FreeField::new(w.cb.clone(), &w.p, sigma)
}

/// Checks π(x)Ψ(w) = Ψ(x·w) for every generator x and every basis tensor w with
/// exponents ≤ cutoff, for W_p(λ,α) against the Gt Fock module and for M_p(λ)
/// against the Verma Fock module, along with the h-characters of both boxes.
pub fn realize_and_compare(w: &TwistedModule, cutoff: usize, guard: usize) -> Result<RealizationReport> {
    let ff = shifted_free_field(w)?;
    let twisted = compare(w, &ff, Some(w.alpha_pos), cutoff, guard)?;
    let verma_mod = VermaModule::with_inducing(w.cb.clone(), &w.p, w.fl.clone())?;
    let verma = compare(&verma_mod, &ff, None, cutoff, guard)?;
    let agree = twisted.ok() && verma.ok();
    Ok(RealizationReport {
        cutoff,
        twisted,
        verma,
        agree,
    })
}
