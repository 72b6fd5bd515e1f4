//! Enveloping-algebra arithmetic in PBW normal form.
//!
//! A [`PbwEngine`] fixes a total order on a bracket-closed set of basis elements
//! and normal-orders products with respect to it. Monomials are dense exponent
//! vectors indexed by position in that order.

use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::rootsys::{ChevalleyBasis, Gen, Weight};

pub type Mono = Vec<u16>;
pub type Elem = BTreeMap<Mono, Rat>;

pub fn add_term(acc: &mut Elem, m: Mono, c: Rat) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// acc += c·e
pub fn axpy(acc: &mut Elem, c: &Rat, e: &Elem) {
    if c.is_zero() {
        return;
    }
    for (m, v) in e {
        add_term(acc, m.clone(), c * v);
    }
}

pub fn scale(e: &Elem, c: &Rat) -> Elem {
    if c.is_zero() {
        return Elem::new();
    }
    e.iter().map(|(m, v)| (m.clone(), v * c)).collect()
}

pub struct PbwEngine {
    cb: Arc<ChevalleyBasis>,
    order: Vec<usize>,
    pos: Vec<Option<usize>>,
    brk: Vec<Vec<Vec<(usize, Rat)>>>,
    cache: Mutex<HashMap<(usize, Mono), Elem>>,
}

impl std::fmt::Debug for PbwEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PbwEngine").field("order", &self.order).finish()
    }
}

impl PbwEngine {
    /// `order` lists basis ids from first to last; the span must be a subalgebra.
    pub fn new(cb: Arc<ChevalleyBasis>, order: Vec<usize>) -> Result<Self> {
        let mut pos = vec![None; cb.dim()];
        for (p, &id) in order.iter().enumerate() {
            if pos[id].is_some() {
                return Err(Error::Config(format!("basis id {id} repeated in order")));
            }
            pos[id] = Some(p);
        }
        let mut brk = vec![vec![Vec::new(); order.len()]; order.len()];
        for (p, &x) in order.iter().enumerate() {
            for (q, &y) in order.iter().enumerate() {
                let mut v = Vec::new();
                for &(z, c) in cb.bracket(x, y) {
                    let zp = pos[z].ok_or_else(|| {
                        Error::Config("generator set is not closed under brackets".into())
                    })?;
                    v.push((zp, rat::int(c)));
                }
                brk[p][q] = v;
            }
        }
        Ok(PbwEngine {
            cb,
            order,
            pos,
            brk,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Normal order of all of g: f's, then h's, then e's.
    pub fn global(cb: Arc<ChevalleyBasis>) -> Self {
        let order = (0..cb.dim()).collect();
        Self::new(cb, order).expect("g is closed")
    }

    pub fn basis(&self) -> &Arc<ChevalleyBasis> {
        &self.cb
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn pos(&self, id: usize) -> Option<usize> {
        self.pos[id]
    }

    pub fn id_at(&self, p: usize) -> usize {
        self.order[p]
    }

    pub fn one(&self) -> Elem {
        let mut e = Elem::new();
        e.insert(vec![0; self.len()], Rat::one());
        e
    }

    pub fn unit_mono(&self) -> Mono {
        vec![0; self.len()]
    }

    pub fn gen_at(&self, p: usize) -> Elem {
        let mut m = self.unit_mono();
        m[p] = 1;
        let mut e = Elem::new();
        e.insert(m, Rat::one());
        e
    }

    pub fn gen(&self, id: usize) -> Elem {
        self.gen_at(self.pos[id].expect("id in engine"))
    }

    /// Bracket of two positions, as positions.
    pub fn bracket_pos(&self, p: usize, q: usize) -> &[(usize, Rat)] {
        &self.brk[p][q]
    }

    /// x_p · m in normal form.
    pub fn left_mul_gen(&self, p: usize, m: &Mono) -> Elem {
        let first = m.iter().position(|&e| e > 0);
        match first {
            None => return self.gen_at(p),
            Some(q) if p <= q => {
                let mut n = m.clone();
                n[p] += 1;
                let mut e = Elem::new();
                e.insert(n, Rat::one());
                return e;
            }
            _ => {}
        }
        let key = (p, m.clone());
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let q = first.unwrap();
        let c = m[q] as u64;
        let mut rest = m.clone();
        rest[q] = 0;
        // x_p x_q^c = Σ_k C(c,k) x_q^{c-k} ((-ad x_q)^k x_p)
        let mut y: Vec<(usize, Rat)> = vec![(p, Rat::one())];
        let mut result = Elem::new();
        for k in 0..=c {
            if y.is_empty() {
                break;
            }
            let coef = rat::binom(c, k);
            let mut t = Elem::new();
            for (s, cs) in &y {
                let r = self.left_mul_gen(*s, &rest);
                axpy(&mut t, cs, &r);
            }
            for _ in 0..(c - k) {
                t = self.left_mul_gen_elem(q, &t);
            }
            axpy(&mut result, &coef, &t);
            let mut next: BTreeMap<usize, Rat> = BTreeMap::new();
            for (s, cs) in &y {
                for (z, cz) in &self.brk[q][*s] {
                    *next.entry(*z).or_insert_with(Rat::zero) -= cs * cz;
                }
            }
            y = next.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        self.cache.lock().unwrap().insert(key, result.clone());
        result
    }

    pub fn left_mul_gen_elem(&self, p: usize, e: &Elem) -> Elem {
        let mut out = Elem::new();
        for (m, c) in e {
            let r = self.left_mul_gen(p, m);
            axpy(&mut out, c, &r);
        }
        out
    }

    /// m · b for a single monomial m.
    pub fn mono_mul(&self, m: &Mono, b: &Elem) -> Elem {
        let mut t = b.clone();
        for p in (0..m.len()).rev() {
            for _ in 0..m[p] {
                t = self.left_mul_gen_elem(p, &t);
            }
        }
        t
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = Elem::new();
        for (m, c) in a {
            let t = self.mono_mul(m, b);
            axpy(&mut out, c, &t);
        }
        out
    }

    pub fn commutator(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = self.mul(a, b);
        axpy(&mut out, &-Rat::one(), &self.mul(b, a));
        out
    }

    /// ad(x)(a) for the generator at position p.
    pub fn ad_gen(&self, p: usize, a: &Elem) -> Elem {
        let mut out = self.left_mul_gen_elem(p, a);
        let x = self.gen_at(p);
        axpy(&mut out, &-Rat::one(), &self.mul(a, &x));
        out
    }

    /// Product of generator ids, left to right.
    pub fn word(&self, ids: &[usize]) -> Elem {
        let mut t = self.one();
        for &id in ids.iter().rev() {
            t = self.left_mul_gen_elem(self.pos[id].expect("id in engine"), &t);
        }
        t
    }

    /// Ids of a monomial, left to right with multiplicity.
    pub fn mono_ids(&self, m: &Mono) -> Vec<usize> {
        let mut out = Vec::new();
        for (p, &e) in m.iter().enumerate() {
            for _ in 0..e {
                out.push(self.order[p]);
            }
        }
        out
    }

    /// Re-expresses an element of `from` in this engine's order.
    pub fn convert(&self, from: &PbwEngine, a: &Elem) -> Elem {
        let mut out = Elem::new();
        for (m, c) in a {
            let w = self.word(&from.mono_ids(m));
            axpy(&mut out, c, &w);
        }
        out
    }

    pub fn format(&self, a: &Elem) -> String {
        if a.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in a {
            let mut factors = Vec::new();
            for (p, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let l = self.cb.label(self.order[p]);
                factors.push(if e == 1 { l } else { format!("{l}^{e}") });
            }
            let body = factors.join(" ");
            let coef = rat::fmt(c);
            parts.push(match (body.is_empty(), coef.as_str()) {
                (true, _) => coef,
                (false, "1") => body,
                (false, "-1") => format!("-{body}"),
                _ => format!("{coef} {body}"),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Element of U(g) in the global normal order (f's, h's, e's).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UEAElement {
    pub terms: Elem,
}

impl UEAElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &UEAElement) -> UEAElement {
        let mut t = self.terms.clone();
        axpy(&mut t, &Rat::one(), &o.terms);
        UEAElement { terms: t }
    }

    pub fn sub(&self, o: &UEAElement) -> UEAElement {
        let mut t = self.terms.clone();
        axpy(&mut t, &-Rat::one(), &o.terms);
        UEAElement { terms: t }
    }

    pub fn scale(&self, c: &Rat) -> UEAElement {
        UEAElement {
            terms: scale(&self.terms, c),
        }
    }
}

/// Which quadratic Casimir.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Casimir {
    Alpha(usize),
    G,
}

/// U(g) with its global normal order.
#[derive(Debug)]
pub struct Uea {
    pub cb: Arc<ChevalleyBasis>,
    pub engine: PbwEngine,
}

impl Uea {
    pub fn new(cb: Arc<ChevalleyBasis>) -> Self {
        let engine = PbwEngine::global(cb.clone());
        Uea { cb, engine }
    }

    pub fn one(&self) -> UEAElement {
        UEAElement {
            terms: self.engine.one(),
        }
    }

    pub fn scalar(&self, c: Rat) -> UEAElement {
        self.one().scale(&c)
    }

    pub fn gen(&self, id: usize) -> UEAElement {
        UEAElement {
            terms: self.engine.gen(id),
        }
    }

    pub fn from_gen(&self, g: Gen) -> UEAElement {
        self.gen(self.cb.id(g))
    }

    pub fn multiply(&self, a: &UEAElement, b: &UEAElement) -> UEAElement {
        UEAElement {
            terms: self.engine.mul(&a.terms, &b.terms),
        }
    }

    pub fn commutator(&self, a: &UEAElement, b: &UEAElement) -> UEAElement {
        UEAElement {
            terms: self.engine.commutator(&a.terms, &b.terms),
        }
    }

    /// ad(x)^k(a) for a basis element x.
    pub fn adjoint_power(&self, x: usize, k: usize, a: &UEAElement) -> UEAElement {
        let p = self.engine.pos(x).expect("basis id");
        let mut t = a.terms.clone();
        for _ in 0..k {
            if t.is_empty() {
                break;
            }
            t = self.engine.ad_gen(p, &t);
        }
        UEAElement { terms: t }
    }

    /// h_γ for the positive root with index k.
    pub fn h_root(&self, k: usize) -> UEAElement {
        let coeffs = self.cb.rs.coroot_coeffs(self.cb.rs.root(k));
        let mut out = UEAElement::default();
        for (i, c) in coeffs.into_iter().enumerate() {
            if c != 0 {
                out = out.add(&self.gen(self.cb.h(i)).scale(&rat::int(c)));
            }
        }
        out
    }

    /// e_α f_α + f_α e_α + ½ h_α².
    pub fn casimir_alpha(&self, alpha: usize) -> UEAElement {
        let e = self.gen(self.cb.e(alpha));
        let f = self.gen(self.cb.f(alpha));
        let h = self.h_root(alpha);
        let ef = self.multiply(&e, &f);
        let fe = self.multiply(&f, &e);
        let hh = self.multiply(&h, &h).scale(&rat::frac(1, 2));
        ef.add(&fe).add(&hh)
    }

    /// Quadratic Casimir of g for the invariant form with long roots of length 2.
    pub fn casimir_g(&self) -> UEAElement {
        let rs = &self.cb.rs;
        let r = rs.rank;
        // Gram matrix of simple coroots
        let mut g = vec![vec![Rat::zero(); r]; r];
        for i in 0..r {
            for j in 0..r {
                g[i][j] = rat::int(4) * &rs.gram[i][j] / (&rs.gram[i][i] * &rs.gram[j][j]);
            }
        }
        let ginv = crate::linalg::Matrix::from_rows(g)
            .inverse()
            .expect("coroot Gram matrix is invertible");
        let mut out = UEAElement::default();
        for i in 0..r {
            for j in 0..r {
                let c = ginv.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let hij = self.multiply(&self.gen(self.cb.h(i)), &self.gen(self.cb.h(j)));
                out = out.add(&hij.scale(c));
            }
        }
        for k in 0..rs.num_positive() {
            let e = self.gen(self.cb.e(k));
            let f = self.gen(self.cb.f(k));
            let c = rs.norm2(rs.root(k)) / rat::int(2);
            let s = self.multiply(&e, &f).add(&self.multiply(&f, &e));
            out = out.add(&s.scale(&c));
        }
        out
    }

    pub fn casimir(&self, z: Casimir) -> UEAElement {
        match z {
            Casimir::Alpha(a) => self.casimir_alpha(a),
            Casimir::G => self.casimir_g(),
        }
    }

    /// Value of a Cartan monomial at a weight.
    pub fn eval_h(&self, m: &Mono, w: &Weight) -> Rat {
        let mut acc = Rat::one();
        for (p, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let Gen::H(i) = self.cb.gen(self.engine.id_at(p)) else {
                unreachable!("eval_h called on a non-Cartan monomial")
            };
            let v = self.cb.rs.simple_pairing(w, i);
            for _ in 0..e {
                acc *= &v;
            }
        }
        acc
    }

    /// Scalar by which `z` acts on the highest-weight vector of the Verma module
    /// with highest weight `w`. Errors if that vector is not an eigenvector.
    pub fn act_on_highest(&self, z: &UEAElement, w: &Weight) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (m, c) in &z.terms {
            let mut has_e = false;
            let mut has_f = false;
            for (p, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match self.cb.gen(self.engine.id_at(p)) {
                    Gen::E(_) => has_e = true,
                    Gen::F(_) => has_f = true,
                    Gen::H(_) => {}
                }
            }
            if has_e {
                continue;
            }
            if has_f {
                return Err(Error::Check(
                    "element does not act by a scalar on the highest-weight vector".into(),
                ));
            }
            acc += c * self.eval_h(m, w);
        }
        Ok(acc)
    }

    /// χ_μ(z), computed on the highest-weight vector of weight μ − ρ.
    pub fn central_character(&self, z: Casimir, mu: &Weight) -> Rat {
        let el = self.casimir(z);
        let lam = mu.sub(&self.cb.rs.rho);
        self.act_on_highest(&el, &lam)
            .expect("Casimir elements act by scalars on highest-weight vectors")
    }

    pub fn format(&self, a: &UEAElement) -> String {
        self.engine.format(&a.terms)
    }
}

/// ½(x² − 1) with x = μ(h_α).
pub fn casimir_alpha_value(mu_h_alpha: &Rat) -> Rat {
    (mu_h_alpha * mu_h_alpha - Rat::one()) / rat::int(2)
}
