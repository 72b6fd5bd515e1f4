//! Localization of U(g) at the powers of f_α.
//!
//! Elements are stored as Σ f_α^n · m with n ∈ ℤ and m a PBW monomial, in the
//! order that puts f_α first, with no f_α factor inside m. This form is unique.

use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::pbw::{self, Elem, Mono, PbwEngine, UEAElement};
use crate::rat::{self, Rat};
use crate::rootsys::ChevalleyBasis;

pub type LocalTerms = BTreeMap<(i64, Mono), Rat>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalElement {
    pub alpha: usize,
    pub terms: LocalTerms,
}

impl LocalElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &LocalElement) -> Result<LocalElement> {
        if self.alpha != o.alpha {
            return Err(Error::TagMismatch(self.alpha, o.alpha));
        }
        let mut t = self.terms.clone();
        for (k, v) in &o.terms {
            add_local(&mut t, k.0, k.1.clone(), v.clone());
        }
        Ok(LocalElement {
            alpha: self.alpha,
            terms: t,
        })
    }

    pub fn scale(&self, c: &Rat) -> LocalElement {
        LocalElement {
            alpha: self.alpha,
            terms: if c.is_zero() {
                LocalTerms::new()
            } else {
                self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect()
            },
        }
    }

    /// Lowest power of f_α that occurs.
    pub fn min_power(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).min()
    }
}

fn add_local(acc: &mut LocalTerms, n: i64, m: Mono, c: Rat) {
    if c.is_zero() {
        return;
    }
    let key = (n, m);
    let v = acc.entry(key.clone()).or_insert_with(Rat::zero);
    *v += c;
    if v.is_zero() {
        acc.remove(&key);
    }
}

/// U(g) localized at f_α.
pub struct Ore {
    pub cb: Arc<ChevalleyBasis>,
    pub alpha: usize,
    engine: PbwEngine,
    ad_cache: Mutex<HashMap<Mono, Arc<Vec<Elem>>>>,
}

impl std::fmt::Debug for Ore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ore").field("alpha", &self.alpha).finish()
    }
}

/// Basis ids with f_α moved to the front.
pub fn alpha_first_order(cb: &ChevalleyBasis, alpha: usize) -> Vec<usize> {
    let fa = cb.f(alpha);
    let mut order = vec![fa];
    order.extend((0..cb.dim()).filter(|&i| i != fa));
    order
}

impl Ore {
    pub fn new(cb: Arc<ChevalleyBasis>, alpha: usize) -> Result<Self> {
        if alpha >= cb.npos() {
            return Err(Error::NotARoot(format!("positive root index {alpha}")));
        }
        let order = alpha_first_order(&cb, alpha);
        let engine = PbwEngine::new(cb.clone(), order)?;
        Ok(Ore {
            cb,
            alpha,
            engine,
            ad_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn engine(&self) -> &PbwEngine {
        &self.engine
    }

    fn split_into(&self, acc: &mut LocalTerms, shift: i64, c: &Rat, e: &Elem) {
        for (m, v) in e {
            let mut m = m.clone();
            let j = m[0] as i64;
            m[0] = 0;
            add_local(acc, shift + j, m, c * v);
        }
    }

    pub fn zero(&self) -> LocalElement {
        LocalElement {
            alpha: self.alpha,
            terms: LocalTerms::new(),
        }
    }

    pub fn one(&self) -> LocalElement {
        self.f_pow(0)
    }

    /// f_α^n for any integer n.
    pub fn f_pow(&self, n: i64) -> LocalElement {
        let mut t = LocalTerms::new();
        t.insert((n, self.engine.unit_mono()), Rat::one());
        LocalElement {
            alpha: self.alpha,
            terms: t,
        }
    }

    /// Image of an element of U(g).
    pub fn lift(&self, a: &UEAElement) -> LocalElement {
        let mut t = LocalTerms::new();
        for (m, c) in &a.terms {
            // the global order is the identity on ids
            let mut ids = Vec::new();
            for (p, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    ids.push(p);
                }
            }
            let w = self.engine.word(&ids);
            self.split_into(&mut t, 0, c, &w);
        }
        LocalElement {
            alpha: self.alpha,
            terms: t,
        }
    }

    pub fn gen(&self, id: usize) -> LocalElement {
        let mut t = LocalTerms::new();
        self.split_into(&mut t, 0, &Rat::one(), &self.engine.gen(id));
        LocalElement {
            alpha: self.alpha,
            terms: t,
        }
    }

    /// Back to U(g) when no negative powers remain.
    pub fn to_uea(&self, x: &LocalElement, global: &PbwEngine) -> Option<UEAElement> {
        if x.min_power().is_some_and(|n| n < 0) {
            return None;
        }
        let mut out = Elem::new();
        for ((n, m), c) in &x.terms {
            let mut m = m.clone();
            m[0] = *n as u16;
            let w = global.word(&self.engine.mono_ids(&m));
            pbw::axpy(&mut out, c, &w);
        }
        Some(UEAElement { terms: out })
    }

    /// [m, ad(f)m, ad(f)²m, …] up to the last nonzero power.
    fn ad_powers(&self, m: &Mono) -> Arc<Vec<Elem>> {
        if let Some(hit) = self.ad_cache.lock().unwrap().get(m) {
            return hit.clone();
        }
        let mut cur = Elem::new();
        cur.insert(m.clone(), Rat::one());
        let mut out = Vec::new();
        while !cur.is_empty() {
            out.push(cur.clone());
            cur = self.engine.ad_gen(0, &cur);
        }
        let out = Arc::new(out);
        self.ad_cache.lock().unwrap().insert(m.clone(), out.clone());
        out
    }

    /// m · f_α^n = Σ_k C(−n+k−1,k) f_α^{n−k} ad(f_α)^k(m), valid for all integers n.
    fn mono_times_fpow(&self, acc: &mut LocalTerms, shift: i64, c: &Rat, m: &Mono, n: i64) {
        let powers = self.ad_powers(m);
        let nu = rat::int(-n);
        for (k, adk) in powers.iter().enumerate() {
            let b = rat::rising_binom(&nu, k as u64);
            if b.is_zero() {
                continue;
            }
            self.split_into(acc, shift + n - k as i64, &(c * &b), adk);
        }
    }

    /// a · f_α^{−n} in canonical form.
    pub fn left_commute(&self, a: &UEAElement, n: u32) -> LocalElement {
        let lifted = self.lift(a);
        let mut t = LocalTerms::new();
        for ((e, m), c) in &lifted.terms {
            self.mono_times_fpow(&mut t, *e, c, m, -(n as i64));
        }
        LocalElement {
            alpha: self.alpha,
            terms: t,
        }
    }

    pub fn multiply_local(&self, a: &LocalElement, b: &LocalElement) -> Result<LocalElement> {
        for x in [a, b] {
            if x.alpha != self.alpha {
                return Err(Error::TagMismatch(x.alpha, self.alpha));
            }
        }
        let mut out = LocalTerms::new();
        for ((e1, m1), c1) in &a.terms {
            for ((e2, m2), c2) in &b.terms {
                let mut mid = LocalTerms::new();
                self.mono_times_fpow(&mut mid, *e1, &(c1 * c2), m1, *e2);
                let mut rhs = Elem::new();
                rhs.insert(m2.clone(), Rat::one());
                for ((e3, m3), c3) in mid {
                    let prod = self.engine.mono_mul(&m3, &rhs);
                    self.split_into(&mut out, e3, &c3, &prod);
                }
            }
        }
        Ok(LocalElement {
            alpha: self.alpha,
            terms: out,
        })
    }

    /// θ^ν(r) = Σ_k C(ν+k−1,k) f_α^{−k} ad(f_α)^k(r).
    pub fn theta(&self, nu: &Rat, r: &LocalElement) -> LocalElement {
        let mut out = LocalTerms::new();
        for ((e, m), c) in &r.terms {
            let powers = self.ad_powers(m);
            for (k, adk) in powers.iter().enumerate() {
                let b = rat::rising_binom(nu, k as u64);
                if b.is_zero() {
                    continue;
                }
                self.split_into(&mut out, e - k as i64, &(c * &b), adk);
            }
        }
        LocalElement {
            alpha: self.alpha,
            terms: out,
        }
    }

    pub fn format(&self, x: &LocalElement) -> String {
        if x.terms.is_empty() {
            return "0".into();
        }
        let fa = self.cb.label(self.cb.f(self.alpha));
        let mut parts = Vec::new();
        for ((n, m), c) in &x.terms {
            let mut single = Elem::new();
            single.insert(m.clone(), Rat::one());
            let body = self.engine.format(&single);
            let fpart = match *n {
                0 => String::new(),
                1 => fa.clone(),
                k => format!("{fa}^{k}"),
            };
            let mono = match (fpart.is_empty(), body.as_str()) {
                (true, b) => b.to_string(),
                (false, "1") => fpart,
                (false, b) => format!("{fpart} {b}"),
            };
            let coef = rat::fmt(c);
            parts.push(match (mono.as_str(), coef.as_str()) {
                ("1", _) => coef,
                (_, "1") => mono,
                (_, "-1") => format!("-{mono}"),
                _ => format!("{coef} {mono}"),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}
