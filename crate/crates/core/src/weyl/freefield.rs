//! The homomorphism π_λ from U(g) into the Weyl algebra of ū tensored with End F,
//! with u(x) = Σ x_γ f_γ over Δ⁺_u.

use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modules::InducingModule;
use crate::rat::{self, Rat};
use crate::rootsys::{ChevalleyBasis, ParabolicData, Weight};

use super::fock::{FockMode, FockVector};
use super::op::{MatrixOperator, Mono, WeylOperator};
use super::series::{coefficients, SeriesKind};

/// Σ_m x^m M_m: a matrix with polynomial entries in the x_γ.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    pub dim: usize,
    pub nvars: usize,
    pub parts: BTreeMap<Mono, Matrix>,
}

/// Σ_m x^m v_m: a vector with polynomial entries.
pub type PolyVec = BTreeMap<Mono, Vec<Rat>>;

fn mono_add(a: &[u16], b: &[u16]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl PolyMatrix {
    pub fn zero(dim: usize, nvars: usize) -> Self {
        PolyMatrix {
            dim,
            nvars,
            parts: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize, nvars: usize) -> Self {
        let mut m = Self::zero(dim, nvars);
        m.parts.insert(vec![0; nvars], Matrix::identity(dim));
        m
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    fn add_part(&mut self, m: Mono, a: Matrix) {
        if a.is_zero() {
            return;
        }
        let s = match self.parts.remove(&m) {
            Some(old) => old.add(&a),
            None => a,
        };
        if !s.is_zero() {
            self.parts.insert(m, s);
        }
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        let mut out = Self::zero(self.dim, self.nvars);
        for (m1, a) in &self.parts {
            for (m2, b) in &o.parts {
                out.add_part(mono_add(m1, m2), a.mul(b));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> PolyMatrix {
        let mut out = Self::zero(self.dim, self.nvars);
        for (m, a) in &self.parts {
            out.add_part(m.clone(), a.scale(c));
        }
        out
    }

    pub fn add(&self, o: &PolyMatrix) -> PolyMatrix {
        let mut out = self.clone();
        for (m, a) in &o.parts {
            out.add_part(m.clone(), a.clone());
        }
        out
    }

    /// Entry (i, j) as a polynomial.
    pub fn entry(&self, i: usize, j: usize) -> BTreeMap<Mono, Rat> {
        self.parts
            .iter()
            .filter(|(_, a)| !a.get(i, j).is_zero())
            .map(|(m, a)| (m.clone(), a.get(i, j).clone()))
            .collect()
    }

    pub fn column(&self, j: usize) -> PolyVec {
        self.parts
            .iter()
            .map(|(m, a)| (m.clone(), a.column(j)))
            .filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
            .collect()
    }

    pub fn apply(&self, v: &PolyVec) -> PolyVec {
        let mut out: PolyVec = BTreeMap::new();
        for (m1, a) in &self.parts {
            for (m2, w) in v {
                let aw = a.mul_vec(w);
                let slot = out
                    .entry(mono_add(m1, m2))
                    .or_insert_with(|| vec![Rat::zero(); self.dim]);
                for (s, x) in slot.iter_mut().zip(aw) {
                    *s += x;
                }
            }
        }
        out.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        out
    }

    /// Powers I, M, M², … up to the last nonzero one.
    pub fn powers(&self) -> Result<Vec<PolyMatrix>> {
        let mut out = vec![Self::identity(self.dim, self.nvars)];
        loop {
            let next = out.last().unwrap().mul(self);
            if next.is_zero() {
                return Ok(out);
            }
            if out.len() > self.dim {
                return Err(Error::NotNilpotent(self.dim + 1));
            }
            out.push(next);
        }
    }

    /// Smallest k with M^k = 0.
    pub fn nilpotency_order(&self) -> Result<usize> {
        Ok(self.powers()?.len())
    }

    pub fn series(&self, c: &[Rat]) -> Result<PolyMatrix> {
        let pw = self.powers()?;
        if pw.len() > c.len() {
            return Err(Error::GuardExceeded(c.len()));
        }
        let mut out = Self::zero(self.dim, self.nvars);
        for (k, p) in pw.iter().enumerate() {
            if !c[k].is_zero() {
                out = out.add(&p.scale(&c[k]));
            }
        }
        Ok(out)
    }
}

/// The matrix of ad(u(x)) on g in the Chevalley basis.
pub fn ad_u_matrix(cb: &ChevalleyBasis, p: &ParabolicData) -> PolyMatrix {
    let n = p.delta_u_plus.len();
    let dim = cb.dim();
    let mut out = PolyMatrix::zero(dim, n);
    for (k, &g) in p.delta_u_plus.iter().enumerate() {
        let f = cb.f(g);
        let mut a = Matrix::zeros(dim, dim);
        for y in 0..dim {
            for &(z, c) in cb.bracket(f, y) {
                a.add_at(z, y, &rat::int(c));
            }
        }
        let mut m = vec![0; n];
        m[k] = 1;
        out.add_part(m, a);
    }
    out
}

/// Poly-coefficient operator Σ −P_γ(x) ∂_γ from the f_γ components of v.
fn minus_vector_field(cb: &ChevalleyBasis, p: &ParabolicData, v: &PolyVec) -> WeylOperator {
    let n = p.delta_u_plus.len();
    let mut out = WeylOperator::zero(n);
    for (m, w) in v {
        for (k, &g) in p.delta_u_plus.iter().enumerate() {
            let c = &w[cb.f(g)];
            if c.is_zero() {
                continue;
            }
            let mut d = vec![0; n];
            d[k] = 1;
            out.add_term((m.clone(), d), -c);
        }
    }
    out
}

pub struct FreeField {
    pub cb: Arc<ChevalleyBasis>,
    pub p: ParabolicData,
    /// The module σ acts on; F_{λ+ρ_u} for π_λ.
    pub sigma: Arc<InducingModule>,
    pub ad_u: PolyMatrix,
    images: Vec<MatrixOperator>,
    p_ops: Vec<WeylOperator>,
    q_ops: Vec<WeylOperator>,
}

impl std::fmt::Debug for FreeField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FreeField")
            .field("sigma", &self.p.sigma)
            .field("top", &self.sigma.lambda)
            .finish()
    }
}

impl FreeField {
    /// π_λ, acting on F_{λ+ρ_u}.
    pub fn for_lambda(cb: Arc<ChevalleyBasis>, p: &ParabolicData, lambda: &Weight) -> Result<Self> {
        let top = lambda.add(&p.rho_u);
        let sigma = Arc::new(InducingModule::build(&cb, p, &top)?);
        Self::new(cb, p, sigma)
    }

    pub fn new(cb: Arc<ChevalleyBasis>, p: &ParabolicData, sigma: Arc<InducingModule>) -> Result<Self> {
        let n = p.delta_u_plus.len();
        let dim = cb.dim();
        let ad_u = ad_u_matrix(&cb, p);
        let depth = ad_u.powers()?.len() + 1;
        let exp_neg: Vec<Rat> = (0..=depth)
            .map(|k| {
                let c = rat::factorial(k as u64).recip();
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        let e_neg = ad_u.series(&exp_neg)?;
        let todd = ad_u.series(&coefficients(SeriesKind::Todd, depth))?;
        let todd_sh = ad_u.series(&coefficients(SeriesKind::ToddShifted, depth))?;
        let todd_m1 = ad_u.series(&coefficients(SeriesKind::ToddMinusOne, depth))?;
        let is_ubar: Vec<bool> = (0..dim)
            .map(|id| p.delta_u_plus.iter().any(|&g| cb.f(g) == id))
            .collect();
        let fd = sigma.dim();
        let mut images = Vec::with_capacity(dim);
        for a in 0..dim {
            let b = e_neg.column(a);
            let mut ub: PolyVec = BTreeMap::new();
            let mut op = MatrixOperator::zero(n);
            for (m, w) in &b {
                let mut uw = vec![Rat::zero(); dim];
                for y in 0..dim {
                    if w[y].is_zero() {
                        continue;
                    }
                    if is_ubar[y] {
                        uw[y] = w[y].clone();
                    } else {
                        let s = sigma.matrix(y).ok_or_else(|| {
                            Error::Check(format!("no inducing matrix for {}", cb.label(y)))
                        })?;
                        op.add_term((m.clone(), vec![0; n]), s.scale(&w[y]));
                    }
                }
                if uw.iter().any(|x| !x.is_zero()) {
                    ub.insert(m.clone(), uw);
                }
            }
            let vf = minus_vector_field(&cb, p, &todd_sh.apply(&ub));
            images.push(op.add(&vf.lift(fd)));
        }
        let mut p_ops = Vec::with_capacity(n);
        let mut q_ops = Vec::with_capacity(n);
        for &g in &p.delta_u_plus {
            let mut unit = vec![Rat::zero(); dim];
            unit[cb.f(g)] = Rat::one();
            let col: PolyVec = [(vec![0; n], unit)].into_iter().collect();
            p_ops.push(minus_vector_field(&cb, p, &todd.apply(&col)));
            q_ops.push(minus_vector_field(&cb, p, &todd_m1.apply(&col)));
        }
        Ok(FreeField {
            cb,
            p: p.clone(),
            sigma,
            ad_u,
            images,
            p_ops,
            q_ops,
        })
    }

    pub fn nvars(&self) -> usize {
        self.p.delta_u_plus.len()
    }

    /// Variable index of a positive root of the nilradical.
    pub fn var(&self, root: usize) -> Option<usize> {
        self.p.delta_u_plus.iter().position(|&g| g == root)
    }

    pub fn labels(&self) -> Vec<String> {
        self.p
            .delta_u_plus
            .iter()
            .map(|&g| self.cb.rs.root_label(self.cb.rs.root(g)))
            .collect()
    }

    /// π(x) for a Chevalley basis id.
    pub fn pi(&self, id: usize) -> &MatrixOperator {
        &self.images[id]
    }

    /// p_γ for the variable k.
    pub fn p_op(&self, k: usize) -> &WeylOperator {
        &self.p_ops[k]
    }

    pub fn q_op(&self, k: usize) -> &WeylOperator {
        &self.q_ops[k]
    }

    /// −Σ_γ ∂_γ P_γ(x): the same vector field with the derivatives written on the left.
    pub fn p_op_left(&self, k: usize) -> WeylOperator {
        let n = self.nvars();
        let mut out = WeylOperator::zero(n);
        for ((x, d), c) in &self.p_ops[k].terms {
            let g = d.iter().position(|&e| e == 1).unwrap();
            let poly = WeylOperator::monomial(x.clone(), vec![0; n], c.clone());
            out = out.add(&WeylOperator::d(n, g).mul(&poly));
        }
        out
    }

    /// Pairs (x, y) of basis ids where π([x,y]) ≠ [π(x), π(y)].
    pub fn homomorphism_defects(&self) -> Vec<(usize, usize)> {
        let dim = self.cb.dim();
        let mut bad = Vec::new();
        for x in 0..dim {
            for y in x + 1..dim {
                let lhs = self.images[x].commutator(&self.images[y]);
                let mut rhs = MatrixOperator::zero(self.nvars());
                for &(z, c) in self.cb.bracket(x, y) {
                    rhs = rhs.add(&self.images[z].scale(&rat::int(c)));
                }
                if lhs != rhs {
                    bad.push((x, y));
                }
            }
        }
        bad
    }

    /// Basis ids whose image is not homogeneous of the weight of the id, counting the
    /// weight change v_j ↦ v_i of each coefficient entry.
    pub fn degree_defects(&self) -> Vec<usize> {
        let roots: Vec<_> = self
            .p
            .delta_u_plus
            .iter()
            .map(|&g| self.cb.rs.root(g).clone())
            .collect();
        let wts = &self.sigma.weights;
        (0..self.cb.dim())
            .filter(|&id| {
                let want = Weight::from_root(&self.cb.weight_of(id));
                self.images[id].terms.iter().any(|(key, m)| {
                    let single = WeylOperator::monomial(key.0.clone(), key.1.clone(), Rat::one());
                    let d = Weight::from_root(&single.degree(&roots).unwrap());
                    (0..m.rows).any(|i| {
                        (0..m.cols).any(|j| {
                            !m.get(i, j).is_zero() && d.add(&wts[i]).sub(&wts[j]) != want
                        })
                    })
                })
            })
            .collect()
    }

    /// φ_α(a) = −∂_α^{−1} Σ_k (q_α ∂_α^{−1})^k a on the ∂_α-localized Verma Fock module.
    pub fn phi(&self, k: usize, a: &FockVector, guard: usize) -> Result<FockVector> {
        assert_eq!(a.mode, FockMode::Verma);
        let q = &self.q_ops[k];
        let mut sum = a.clone();
        let mut term = a.clone();
        let mut steps = 0;
        loop {
            term = term.shift(k, -1).apply(q);
            if term.is_zero() {
                break;
            }
            steps += 1;
            if steps > guard {
                return Err(Error::GuardExceeded(guard));
            }
            sum.axpy(&Rat::one(), &term);
        }
        Ok(sum.shift(k, -1).scale(&-Rat::one()))
    }

    pub fn phi_pow(&self, k: usize, a: &FockVector, n: usize, guard: usize) -> Result<FockVector> {
        let mut v = a.clone();
        for _ in 0..n {
            v = self.phi(k, &v, guard)?;
        }
        Ok(v)
    }

    /// Samples a with p_α φ_α(a) ≠ a or φ_α(p_α a) ≠ a.
    pub fn phi_inverse_defects(&self, k: usize, samples: &[FockVector], guard: usize) -> Result<usize> {
        let mut bad = 0;
        for a in samples {
            let right = self.phi(k, a, guard)?.apply(&self.p_ops[k]);
            let left = self.phi(k, &a.apply(&self.p_ops[k]), guard)?;
            if right != *a || left != *a {
                bad += 1;
            }
        }
        Ok(bad)
    }
}
