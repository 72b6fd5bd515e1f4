//! Action of g on U(ū) ⊗ F_λ for a chosen PBW order on ū.

use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::Result;
use crate::pbw::{Mono, PbwEngine};
use crate::rat::{self, Rat};
use crate::rootsys::ChevalleyBasis;

use super::inducing::InducingModule;

pub type Terms = BTreeMap<(Mono, usize), Rat>;

fn add(acc: &mut Terms, key: (Mono, usize), c: Rat) {
    if c.is_zero() {
        return;
    }
    let v = acc.entry(key.clone()).or_insert_with(Rat::zero);
    *v += c;
    if v.is_zero() {
        acc.remove(&key);
    }
}

pub struct InducedAction {
    pub cb: Arc<ChevalleyBasis>,
    pub fl: Arc<InducingModule>,
    pub engine: PbwEngine,
    cache: Mutex<HashMap<(usize, Mono, usize), Arc<Terms>>>,
}

impl std::fmt::Debug for InducedAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("InducedAction")
            .field("order", &self.engine.order())
            .finish()
    }
}

impl InducedAction {
    /// `order` lists the f-ids of Δ⁺_u in the PBW order to use.
    pub fn new(cb: Arc<ChevalleyBasis>, fl: Arc<InducingModule>, order: Vec<usize>) -> Result<Self> {
        let engine = PbwEngine::new(cb.clone(), order)?;
        Ok(InducedAction {
            cb,
            fl,
            engine,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn len(&self) -> usize {
        self.engine.len()
    }

    pub fn is_empty(&self) -> bool {
        self.engine.is_empty()
    }

    /// f_q applied on the left of every term, `times` times.
    fn left_f(&self, q: usize, terms: Terms, times: u64) -> Terms {
        let mut t = terms;
        for _ in 0..times {
            let mut next = Terms::new();
            for ((m, j), c) in &t {
                for (m2, c2) in self.engine.left_mul_gen(q, m) {
                    add(&mut next, (m2, *j), c * c2);
                }
            }
            t = next;
        }
        t
    }

    /// y · (m ⊗ v_j) for a Chevalley basis element y.
    pub fn act(&self, y: usize, m: &Mono, j: usize) -> Arc<Terms> {
        let key = (y, m.clone(), j);
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let out = Arc::new(self.act_uncached(y, m, j));
        self.cache.lock().unwrap().insert(key, out.clone());
        out
    }

    fn act_uncached(&self, y: usize, m: &Mono, j: usize) -> Terms {
        let mut out = Terms::new();
        let Some(q) = m.iter().position(|&e| e > 0) else {
            if let Some(p) = self.engine.pos(y) {
                let mut mm = self.engine.unit_mono();
                mm[p] = 1;
                out.insert((mm, j), Rat::one());
            } else {
                let s = self.fl.matrix(y).expect("generator of p");
                for i in 0..s.rows {
                    let c = s.get(i, j);
                    if !c.is_zero() {
                        out.insert((self.engine.unit_mono(), i), c.clone());
                    }
                }
            }
            return out;
        };
        if let Some(p) = self.engine.pos(y) {
            if p <= q {
                let mut mm = m.clone();
                mm[p] += 1;
                out.insert((mm, j), Rat::one());
                return out;
            }
        }
        let c = m[q] as u64;
        let mut rest = m.clone();
        rest[q] = 0;
        let fq = self.engine.id_at(q);
        // y f_q^c = Σ_k C(c,k) f_q^{c−k} ((−ad f_q)^k y)
        let mut ys: Vec<(usize, Rat)> = vec![(y, Rat::one())];
        for k in 0..=c {
            if ys.is_empty() {
                break;
            }
            let mut t = Terms::new();
            for (s, cs) in &ys {
                for (key, v) in self.act(*s, &rest, j).iter() {
                    add(&mut t, key.clone(), cs * v);
                }
            }
            let t = self.left_f(q, t, c - k);
            let b = rat::binom(c, k);
            for (key, v) in t {
                add(&mut out, key, &b * v);
            }
            let mut next: BTreeMap<usize, Rat> = BTreeMap::new();
            for (s, cs) in &ys {
                for &(z, cz) in self.cb.bracket(fq, *s) {
                    *next.entry(z).or_insert_with(Rat::zero) -= cs * rat::int(cz);
                }
            }
            ys = next.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }
}
