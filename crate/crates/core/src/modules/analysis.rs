//! Gelfand–Tsetlin analyses on truncations of W_p(λ,α).

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::linalg::{kernel_profile, Matrix};
use crate::pbw::{casimir_alpha_value, Casimir, Uea};
use crate::rat::{self, Rat};
use crate::rootsys::Weight;

use super::{BasisKey, GModule, ModuleVector, TwistedModule, VermaModule};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterEntry {
    /// Depth n with ν = μ(h_α) − 1 − 2n.
    pub depth: usize,
    /// The other depth giving the same value, when there is one.
    pub partner: Option<usize>,
    #[serde(with = "rat::serde_rat")]
    pub casimir_value: Rat,
    pub multiplicity: usize,
    pub eigenspace_rank: usize,
    pub jordan_size: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GTReport {
    pub weight: Weight,
    pub cutoff: usize,
    pub depth: usize,
    pub weight_space_dim: usize,
    /// dim F_1, …, dim F_depth.
    pub filtration: Vec<usize>,
    pub characters: Vec<CharacterEntry>,
    pub product_identity: bool,
    pub boundary_warning: bool,
}

impl GTReport {
    pub fn max_jordan(&self) -> usize {
        self.characters.iter().map(|c| c.jordan_size).max().unwrap_or(0)
    }
}

/// Matrix of an operator on the span of `keys`; errors if the span is not preserved.
fn operator_matrix(
    w: &dyn GModule,
    op: &dyn Fn(&ModuleVector) -> ModuleVector,
    src: &[BasisKey],
    dst: &[BasisKey],
    what: &str,
) -> Result<Matrix> {
    w.matrix_between(op, src, dst)
        .ok_or_else(|| Error::Check(format!("{what} leaves the truncation; raise the cutoff")))
}

/// dim F_n M_μ for n = 1..=depth, from kernels of f_α^n, and whether F_depth touches the cutoff.
pub fn f_filtration(
    w: &TwistedModule,
    mu: &Weight,
    cutoff: usize,
    depth: usize,
) -> Result<(Vec<usize>, bool)> {
    let src = w.weight_space_basis(mu, cutoff);
    let fa = w.cb.f(w.alpha);
    let alpha_w = Weight::from_root(w.cb.rs.root(w.alpha));
    let mut dims = Vec::new();
    for n in 1..=depth {
        let target = mu.sub(&alpha_w.scale(&rat::int(n as i64)));
        let dst = w.weight_space_basis(&target, cutoff);
        let op = |v: &ModuleVector| {
            let mut t = v.clone();
            for _ in 0..n {
                t = w.act(fa, &t);
            }
            t
        };
        let m = operator_matrix(w, &op, &src, &dst, "f_alpha")?;
        dims.push(src.len() - m.rank());
    }
    let boundary = src
        .iter()
        .filter(|k| w.alpha_exponent(k) < depth as i64)
        .any(|k| k.0.iter().any(|&e| e >= cutoff as i64));
    Ok((dims, boundary))
}

/// Γ_α decomposition of F_depth M_μ, with the filtration count and the Casimir
/// eigenspace count cross-checked.
pub fn gamma_decomposition(
    w: &TwistedModule,
    uea: &Uea,
    mu: &Weight,
    cutoff: usize,
    depth: usize,
) -> Result<GTReport> {
    let (filtration, boundary) = f_filtration(w, mu, cutoff, depth)?;
    let all = w.weight_space_basis(mu, cutoff);
    let fd: Vec<BasisKey> = all
        .iter()
        .filter(|k| w.alpha_exponent(k) < depth as i64)
        .cloned()
        .collect();
    if filtration.last().copied().unwrap_or(0) != fd.len() {
        return Err(Error::Check("f_alpha kernel differs from the exponent count".into()));
    }
    let cas = uea.casimir_alpha(w.alpha);
    let op = |v: &ModuleVector| w.act_uea(uea, &cas, v);
    let c = operator_matrix(w, &op, &fd, &fd, "Cas_alpha")?;

    let x = w.cb.rs.coroot_pairing(mu, w.alpha);
    let nu = |n: usize| &x - Rat::one() - rat::int(2 * n as i64);
    let value = |n: usize| casimir_alpha_value(&nu(n));
    let partner = |n: usize| -> Option<usize> {
        let k = &x - Rat::one() - rat::int(n as i64);
        rat::to_i64(&k).filter(|&k| k >= 0).map(|k| k as usize)
    };
    let graded: Vec<usize> = (0..depth)
        .map(|n| filtration[n] - if n == 0 { 0 } else { filtration[n - 1] })
        .collect();

    let mut characters = Vec::new();
    let mut accounted = 0;
    for n in 0..depth {
        let pn = partner(n).filter(|&p| p != n);
        if pn.is_some_and(|p| p < n) {
            continue;
        }
        let inside = pn.filter(|&p| p < depth);
        let mult = graded[n] + inside.map_or(0, |p| graded[p]);
        let chi = value(n);
        let profile = kernel_profile(&c, &chi);
        let rank = *profile.last().unwrap_or(&0);
        if rank != mult {
            return Err(Error::Check(format!(
                "weight {mu}: filtration multiplicity {mult} but Casimir eigenspace rank {rank} at {}",
                rat::fmt(&chi)
            )));
        }
        accounted += rank;
        if mult == 0 || pn.is_some_and(|p| p >= depth) {
            continue;
        }
        characters.push(CharacterEntry {
            depth: n,
            partner: pn,
            casimir_value: chi,
            multiplicity: mult,
            eigenspace_rank: rank,
            jordan_size: profile.len(),
        });
    }
    if accounted != fd.len() {
        return Err(Error::Check(format!(
            "weight {mu}: Casimir eigenspaces cover {accounted} of {} dimensions",
            fd.len()
        )));
    }

    // ∏_{k<n} (Cas − χ_k) kills F_n
    let mut product_identity = true;
    let mut prod = Matrix::identity(fd.len());
    for n in 1..=depth {
        prod = prod.mul(&c.shift(&value(n - 1)));
        for (col, k) in fd.iter().enumerate() {
            if w.alpha_exponent(k) < n as i64 && prod.column(col).iter().any(|v| !v.is_zero()) {
                product_identity = false;
            }
        }
    }

    Ok(GTReport {
        weight: mu.clone(),
        cutoff,
        depth,
        weight_space_dim: all.len(),
        filtration,
        characters,
        product_identity,
        boundary_warning: boundary,
    })
}

/// Sparse row-reduced span of vectors.
#[derive(Default, Debug, Clone)]
pub struct Span {
    rows: Vec<(BasisKey, BTreeMap<BasisKey, Rat>)>,
}

impl Span {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &BTreeMap<BasisKey, Rat>) -> BTreeMap<BasisKey, Rat> {
        let mut v = v.clone();
        for (piv, row) in &self.rows {
            let Some(c) = v.get(piv).cloned() else { continue };
            for (k, x) in row {
                let e = v.entry(k.clone()).or_insert_with(Rat::zero);
                *e -= &c * x;
                if e.is_zero() {
                    v.remove(k);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &BTreeMap<BasisKey, Rat>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds v; returns false if it was already in the span.
    pub fn insert(&mut self, v: &BTreeMap<BasisKey, Rat>) -> bool {
        let r = self.reduce(v);
        let Some((piv, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.recip();
        let r: BTreeMap<BasisKey, Rat> = r.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        for (_, row) in self.rows.iter_mut() {
            let Some(c) = row.get(&piv).cloned() else { continue };
            for (k, x) in &r {
                let e = row.entry(k.clone()).or_insert_with(Rat::zero);
                *e -= &c * x;
                if e.is_zero() {
                    row.remove(k);
                }
            }
        }
        self.rows.push((piv, r));
        true
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CyclicityReport {
    pub cutoff: usize,
    pub margin: usize,
    /// Dimension of the generated subspace inside the box.
    pub generated_dim: usize,
    pub interior_total: usize,
    pub interior_covered: usize,
    pub complete: bool,
}

fn in_box(v: &ModuleVector, cutoff: usize) -> bool {
    v.terms.keys().all(|(a, _)| a.iter().all(|&e| e <= cutoff as i64))
}

/// Breadth-first span of the given start vectors under all root vectors, keeping only
/// vectors supported in the box [0,cutoff]; then checks that every basis tensor with
/// exponents ≤ cutoff − margin lies in the span.
pub fn check_cyclicity(
    w: &dyn GModule,
    start: &[ModuleVector],
    cutoff: usize,
    margin: usize,
) -> CyclicityReport {
    let cb = w.basis_data().clone();
    let gens: Vec<usize> = (0..cb.npos()).flat_map(|k| [cb.e(k), cb.f(k)]).collect();
    let mut spans: HashMap<Weight, Span> = HashMap::new();
    let mut queue = std::collections::VecDeque::new();
    for v in start {
        if v.is_zero() || !in_box(v, cutoff) {
            continue;
        }
        let wt = w.weight(v.terms.keys().next().unwrap());
        if spans.entry(wt).or_default().insert(&v.terms) {
            queue.push_back(v.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        for &x in &gens {
            let img = w.act(x, &v);
            if img.is_zero() || !in_box(&img, cutoff) {
                continue;
            }
            let wt = w.weight(img.terms.keys().next().unwrap());
            if spans.entry(wt).or_default().insert(&img.terms) {
                queue.push_back(img);
            }
        }
    }
    let generated_dim = spans.values().map(|s| s.dim()).sum();
    let nu = w.parabolic().delta_u_plus.len();
    let top = cutoff.saturating_sub(margin) as i64;
    let mut total = 0;
    let mut covered = 0;
    let mut a = vec![0i64; nu];
    loop {
        for j in 0..w.inducing().dim() {
            total += 1;
            let key = (a.clone(), j);
            let wt = w.weight(&key);
            let mut e = BTreeMap::new();
            e.insert(key, Rat::one());
            if spans.get(&wt).is_some_and(|s| s.contains(&e)) {
                covered += 1;
            }
        }
        let mut i = 0;
        loop {
            if i == nu {
                return CyclicityReport {
                    cutoff,
                    margin,
                    generated_dim,
                    interior_total: total,
                    interior_covered: covered,
                    complete: total == covered,
                };
            }
            a[i] += 1;
            if a[i] <= top {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// Ids of the root vectors spanning t_α^−: f_α and e_γ (or f_γ) for γ ∈ Φ_α.
pub fn t_alpha_minus_ids(w: &TwistedModule) -> Vec<usize> {
    let cb = &w.cb;
    let n = cb.npos();
    let mut ids = vec![cb.f(w.alpha)];
    for s in cb.rs.phi_alpha(w.alpha) {
        ids.push(if s < n { cb.e(s) } else { cb.f(s - n) });
    }
    ids
}

/// Sample of basis tensors with exponents ≤ top, drawn with a seeded generator.
pub fn sample_keys(w: &dyn GModule, top: usize, count: usize, seed: u64) -> Vec<BasisKey> {
    let nu = w.parabolic().delta_u_plus.len();
    let dim = w.inducing().dim();
    let mut all = Vec::new();
    let mut a = vec![0i64; nu];
    'outer: loop {
        for j in 0..dim {
            all.push((a.clone(), j));
        }
        let mut i = 0;
        loop {
            if i == nu {
                break 'outer;
            }
            a[i] += 1;
            if a[i] <= top as i64 {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    all.shuffle(&mut rng);
    all.truncate(count);
    all
}

/// For each (root vector, sample) pair, the number of applications needed to reach 0,
/// or None if `bound` applications do not suffice.
pub fn local_nilpotence(
    w: &dyn GModule,
    ids: &[usize],
    samples: &[BasisKey],
    bound: usize,
) -> Vec<(usize, BasisKey, Option<usize>)> {
    let mut out = Vec::new();
    for &x in ids {
        for key in samples {
            let mut v = ModuleVector::basis(w.mode(), key.0.clone(), key.1);
            let mut steps = None;
            for s in 1..=bound {
                v = w.act(x, &v);
                if v.is_zero() {
                    steps = Some(s);
                    break;
                }
            }
            out.push((x, key.clone(), steps));
        }
    }
    out
}

/// χ_{λ+ρ}(Cas_g) from the Verma highest-weight action, and the samples on which Cas_g
/// fails to act by it.
pub fn check_central_character(
    w: &dyn GModule,
    uea: &Uea,
    samples: &[BasisKey],
) -> (Rat, Vec<BasisKey>) {
    let lam_rho = w.inducing().lambda.add(&uea.cb.rs.rho);
    let chi = uea.central_character(Casimir::G, &lam_rho);
    let cas = uea.casimir_g();
    let mut bad = Vec::new();
    for key in samples {
        let v = ModuleVector::basis(w.mode(), key.0.clone(), key.1);
        let img = w.act_uea(uea, &cas, &v);
        if img != v.scale(&chi) {
            bad.push(key.clone());
        }
    }
    (chi, bad)
}

/// dim ker f_α on W_μ and dim (M/f_αM)_{μ−α}; errors if they differ.
pub fn h0_kernel(
    w: &TwistedModule,
    m: &VermaModule,
    mu: &Weight,
    cutoff: usize,
) -> Result<(usize, usize)> {
    let fa = w.cb.f(w.alpha);
    let alpha_w = Weight::from_root(w.cb.rs.root(w.alpha));
    let src = w.weight_space_basis(mu, cutoff);
    let dst = w.weight_space_basis(&mu.sub(&alpha_w), cutoff);
    let op = |v: &ModuleVector| w.act(fa, v);
    let tw = src.len() - operator_matrix(w, &op, &src, &dst, "f_alpha")?.rank();

    let low = mu.sub(&alpha_w);
    let m_low = m.weight_space(&low);
    let m_mid = m.weight_space(mu);
    let op = |v: &ModuleVector| m.act(fa, v);
    let img = operator_matrix(m, &op, &m_mid, &m_low, "f_alpha")?.rank();
    let ve = m_low.len() - img;
    if tw != ve {
        return Err(Error::Check(format!(
            "weight {mu}: ker f_alpha has dim {tw} but the Verma quotient has dim {ve}"
        )));
    }
    Ok((tw, ve))
}

/// Number of (x, y, w) triples with act(x,act(y,w)) − act(y,act(x,w)) ≠ act([x,y],w).
pub fn commutator_defects(
    w: &dyn GModule,
    triples: &[(usize, usize, BasisKey)],
) -> usize {
    let cb = w.basis_data().clone();
    triples
        .iter()
        .filter(|(x, y, key)| {
            let v = ModuleVector::basis(w.mode(), key.0.clone(), key.1);
            let lhs = w.act(*x, &w.act(*y, &v)).sub(&w.act(*y, &w.act(*x, &v)));
            let mut rhs = ModuleVector::zero(w.mode());
            for &(z, c) in cb.bracket(*x, *y) {
                rhs.axpy(&rat::int(c), &w.act(z, &v));
            }
            lhs != rhs
        })
        .count()
}

/// Number of basis tensors on which some h_i fails to act by the stated weight.
pub fn weight_defects(w: &dyn GModule, keys: &[BasisKey]) -> usize {
    let cb = w.basis_data().clone();
    keys.iter()
        .filter(|key| {
            let v = ModuleVector::basis(w.mode(), key.0.clone(), key.1);
            let wt = w.weight(key);
            (0..cb.rs.rank).any(|i| w.act(cb.h(i), &v) != v.scale(&cb.rs.simple_pairing(&wt, i)))
        })
        .count()
}
