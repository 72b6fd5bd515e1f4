//! The simple finite-dimensional p-module F_λ on an explicit basis.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rat::{self, Rat};
use crate::rootsys::{is_p_dominant, ChevalleyBasis, Gen, ParabolicData, Weight};

const MAX_DIM: usize = 20_000;

#[derive(Clone, Debug)]
pub struct InducingModule {
    pub lambda: Weight,
    pub weights: Vec<Weight>,
    /// Matrix of each basis id of p; None for ids outside p.
    mats: Vec<Option<Matrix>>,
}

impl InducingModule {
    /// Builds F_λ degree by degree from the highest-weight vector. A vector below the top
    /// is zero exactly when every Levi raising operator kills it, which gives the relations.
    pub fn build(cb: &ChevalleyBasis, p: &ParabolicData, lambda: &Weight) -> Result<Self> {
        let rs = &cb.rs;
        if !is_p_dominant(rs, lambda, p) {
            return Err(Error::NotDominant(format!("{lambda}")));
        }
        let sig = &p.sigma;
        let ns = sig.len();
        let simple_idx: Vec<usize> = sig
            .iter()
            .map(|&i| rs.index_of(&rs.simple_roots[i]).unwrap())
            .collect();

        let mut weights = vec![lambda.clone()];
        // e_b[i][b], f_b[j][b]: images of basis vector b as sparse coordinates
        let mut e_img: Vec<Vec<Vec<(usize, Rat)>>> = vec![vec![Vec::new()]; ns];
        let mut f_img: Vec<Vec<Vec<(usize, Rat)>>> = vec![Vec::new(); ns];
        let mut start = 0;
        let mut end = 1;
        loop {
            let width = end - start;
            let mut cands = Vec::new();
            let mut cols: Vec<Vec<Rat>> = Vec::new();
            for b in start..end {
                for j in 0..ns {
                    let mut col = vec![Rat::zero(); ns * width];
                    for i in 0..ns {
                        // e_i f_j b = f_j e_i b + δ_ij h_i b
                        for (c, x) in &e_img[i][b] {
                            for (d, y) in &f_img[j][*c] {
                                col[i * width + d - start] += x * y;
                            }
                        }
                        if i == j {
                            let v = rs.simple_pairing(&weights[b], sig[i]);
                            col[i * width + b - start] += v;
                        }
                    }
                    cands.push((b, j));
                    cols.push(col);
                }
            }
            for j in 0..ns {
                f_img[j].resize(end, Vec::new());
            }
            if cands.is_empty() {
                break;
            }
            let m = Matrix::from_rows(cols.clone()).transpose();
            let (r, pivots) = m.rref();
            let new_start = end;
            for &pc in &pivots {
                let (b, j) = cands[pc];
                weights.push(weights[b].add_root(rs.root(simple_idx[j]), -1));
                for i in 0..ns {
                    let img: Vec<(usize, Rat)> = (0..width)
                        .filter(|&d| !cols[pc][i * width + d].is_zero())
                        .map(|d| (start + d, cols[pc][i * width + d].clone()))
                        .collect();
                    e_img[i].push(img);
                }
            }
            for (c, &(b, j)) in cands.iter().enumerate() {
                let img: Vec<(usize, Rat)> = (0..pivots.len())
                    .filter(|&k| !r.get(k, c).is_zero())
                    .map(|k| (new_start + k, r.get(k, c).clone()))
                    .collect();
                f_img[j][b] = img;
            }
            start = new_start;
            end = weights.len();
            if end == start {
                break;
            }
            if end > MAX_DIM {
                return Err(Error::Config("inducing module too large".into()));
            }
        }
        let dim = weights.len();
        let to_mat = |imgs: &Vec<Vec<(usize, Rat)>>| {
            let mut m = Matrix::zeros(dim, dim);
            for (b, img) in imgs.iter().enumerate() {
                for (c, v) in img {
                    m.set(*c, b, v.clone());
                }
            }
            m
        };
        let mut mats: Vec<Option<Matrix>> = vec![None; cb.dim()];
        for (k, &ri) in simple_idx.iter().enumerate() {
            mats[cb.e(ri)] = Some(to_mat(&e_img[k]));
            let mut fi = f_img[k].clone();
            fi.resize(dim, Vec::new());
            mats[cb.f(ri)] = Some(to_mat(&fi));
        }
        // non-simple Levi roots from brackets, in height order
        for &g in &p.delta_l_plus {
            if rs.is_simple(g) {
                continue;
            }
            let root = rs.root(g);
            let (i, beta) = simple_idx
                .iter()
                .filter_map(|&s| {
                    let b: Vec<i64> = root.iter().zip(rs.root(s)).map(|(x, y)| x - y).collect();
                    rs.index_of(&b).filter(|bi| p.in_levi(*bi)).map(|bi| (s, bi))
                })
                .next()
                .ok_or_else(|| Error::Check("Levi root without simple predecessor".into()))?;
            for (xi, xb, xg) in [
                (cb.e(i), cb.e(beta), cb.e(g)),
                (cb.f(i), cb.f(beta), cb.f(g)),
            ] {
                let n = cb
                    .bracket(xi, xb)
                    .iter()
                    .find(|(id, _)| *id == xg)
                    .map(|(_, c)| *c)
                    .ok_or_else(|| Error::Check("missing Levi bracket".into()))?;
                let a = mats[xi].as_ref().unwrap();
                let b = mats[xb].as_ref().unwrap();
                let c = a.mul(b).sub(&b.mul(a)).scale(&rat::frac(1, n));
                mats[xg] = Some(c);
            }
        }
        for &g in &p.delta_u_plus {
            mats[cb.e(g)] = Some(Matrix::zeros(dim, dim));
        }
        let mut fl = InducingModule {
            lambda: lambda.clone(),
            weights,
            mats,
        };
        fl.set_cartan(cb);
        Ok(fl)
    }

    fn set_cartan(&mut self, cb: &ChevalleyBasis) {
        let dim = self.dim();
        for i in 0..cb.rs.rank {
            let mut m = Matrix::zeros(dim, dim);
            for (b, w) in self.weights.iter().enumerate() {
                m.set(b, b, cb.rs.simple_pairing(w, i));
            }
            self.mats[cb.h(i)] = Some(m);
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Matrix of a basis element of p (None outside p).
    pub fn matrix(&self, id: usize) -> Option<&Matrix> {
        self.mats[id].as_ref()
    }

    /// The same Levi module with every weight moved by δ, which must vanish on the Levi coroots.
    pub fn shifted(&self, cb: &ChevalleyBasis, p: &ParabolicData, delta: &Weight) -> Result<Self> {
        for &i in &p.sigma {
            if !cb.rs.simple_pairing(delta, i).is_zero() {
                return Err(Error::Config("shift is not orthogonal to the Levi".into()));
            }
        }
        let mut out = self.clone();
        out.lambda = self.lambda.add(delta);
        out.weights = self.weights.iter().map(|w| w.add(delta)).collect();
        out.set_cartan(cb);
        Ok(out)
    }

    /// Number of pairs x, y in p with [σ(x),σ(y)] ≠ σ([x,y]).
    pub fn bracket_defects(&self, cb: &ChevalleyBasis) -> usize {
        let mut bad = 0;
        for x in 0..cb.dim() {
            for y in 0..cb.dim() {
                let (Some(a), Some(b)) = (self.matrix(x), self.matrix(y)) else {
                    continue;
                };
                let lhs = a.mul(b).sub(&b.mul(a));
                let mut rhs = Matrix::zeros(self.dim(), self.dim());
                let mut ok = true;
                for &(z, c) in cb.bracket(x, y) {
                    match self.matrix(z) {
                        Some(m) => rhs = rhs.add(&m.scale(&rat::int(c))),
                        None => ok = false,
                    }
                }
                if !ok || lhs != rhs {
                    bad += 1;
                }
            }
        }
        bad
    }

    /// True when the top vector is killed by all Levi raising operators.
    pub fn top_is_highest(&self, cb: &ChevalleyBasis) -> bool {
        (0..cb.npos()).all(|k| {
            let m = self.matrix(cb.e(k)).unwrap();
            m.column(0).iter().all(|x| x.is_zero())
        })
    }

    pub fn gen_matrix(&self, cb: &ChevalleyBasis, g: Gen) -> Option<&Matrix> {
        self.matrix(cb.id(g))
    }
}
