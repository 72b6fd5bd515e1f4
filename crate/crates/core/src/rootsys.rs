//! Root systems, Chevalley bases and parabolic decompositions.
//!
//! Roots are integer vectors in the basis of simple roots. Positive roots are
//! ordered by height, ties broken so that larger leading coordinates come first
//! (this puts α₁ before α₂).

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rat::{self, Rat};

pub type Root = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    G,
    F,
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "G" | "G2" => Ok(Series::G),
            "F" | "F4" => Ok(Series::F),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::G => "G",
            Series::F => "F",
        };
        write!(f, "{c}")
    }
}

/// A weight in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(#[serde(with = "rat::serde_rat_vec")] pub Vec<Rat>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Rat::zero(); rank])
    }

    pub fn from_root(r: &[i64]) -> Self {
        Weight(r.iter().map(|&x| rat::int(x)).collect())
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rat) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    pub fn add_root(&self, r: &[i64], times: i64) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(r)
                .map(|(a, &b)| a + rat::int(b * times))
                .collect(),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", rat::fmt_vec(&self.0))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSystemData {
    pub series: Series,
    pub rank: usize,
    /// `cartan_matrix[i][j] = ⟨α_j, α_i^∨⟩`.
    pub cartan_matrix: Vec<Vec<i64>>,
    pub simple_roots: Vec<Root>,
    pub positive_roots: Vec<Root>,
    /// Symmetric form on simple roots, long roots of squared length 2.
    #[serde(with = "rat::serde_rat_mat")]
    pub gram: Vec<Vec<Rat>>,
    pub rho: Weight,
    #[serde(skip)]
    index: HashMap<Root, usize>,
}

fn supported(series: Series, rank: usize) -> bool {
    match series {
        Series::A => (1..=8).contains(&rank),
        Series::B | Series::C => (2..=8).contains(&rank),
        Series::D => (3..=8).contains(&rank),
        Series::G => rank == 2,
        Series::F => rank == 4,
    }
}

fn gram_matrix(series: Series, n: usize) -> Vec<Vec<Rat>> {
    let mut g = vec![vec![Rat::zero(); n]; n];
    let link = |g: &mut Vec<Vec<Rat>>, i: usize, j: usize, v: Rat| {
        g[i][j] = v.clone();
        g[j][i] = v;
    };
    match series {
        Series::A => {
            for i in 0..n {
                g[i][i] = rat::int(2);
                if i + 1 < n {
                    link(&mut g, i, i + 1, rat::int(-1));
                }
            }
        }
        Series::B => {
            for i in 0..n {
                g[i][i] = rat::int(if i + 1 == n { 1 } else { 2 });
                if i + 1 < n {
                    link(&mut g, i, i + 1, rat::int(-1));
                }
            }
        }
        Series::C => {
            for i in 0..n {
                g[i][i] = rat::int(if i + 1 == n { 2 } else { 1 });
                if i + 1 < n {
                    let v = if i + 2 == n {
                        rat::int(-1)
                    } else {
                        rat::frac(-1, 2)
                    };
                    link(&mut g, i, i + 1, v);
                }
            }
        }
        Series::D => {
            for i in 0..n {
                g[i][i] = rat::int(2);
            }
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, rat::int(-1));
            }
            link(&mut g, n - 3, n - 1, rat::int(-1));
        }
        Series::G => {
            g[0][0] = rat::frac(2, 3);
            g[1][1] = rat::int(2);
            link(&mut g, 0, 1, rat::int(-1));
        }
        Series::F => {
            g[0][0] = rat::int(2);
            g[1][1] = rat::int(2);
            g[2][2] = rat::int(1);
            g[3][3] = rat::int(1);
            link(&mut g, 0, 1, rat::int(-1));
            link(&mut g, 1, 2, rat::int(-1));
            link(&mut g, 2, 3, rat::frac(-1, 2));
        }
    }
    g
}

pub fn height(r: &[i64]) -> i64 {
    r.iter().sum()
}

fn root_order(a: &Root, b: &Root) -> std::cmp::Ordering {
    height(a).cmp(&height(b)).then_with(|| b.cmp(a))
}

impl RootSystemData {
    pub fn build(series: Series, rank: usize) -> Result<Self> {
        if !supported(series, rank) {
            return Err(Error::UnsupportedType(format!("{series}{rank}")));
        }
        let gram = gram_matrix(series, rank);
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let v = rat::int(2) * &gram[i][j] / &gram[i][i];
                        rat::to_i64(&v).expect("integral Cartan entry")
                    })
                    .collect()
            })
            .collect();
        let simple: Vec<Root> = (0..rank)
            .map(|i| {
                let mut r = vec![0; rank];
                r[i] = 1;
                r
            })
            .collect();
        // p–q strings, level by level in height
        let mut set: BTreeSet<Root> = simple.iter().cloned().collect();
        let mut layer: Vec<Root> = simple.clone();
        while !layer.is_empty() {
            let mut next = BTreeSet::new();
            for beta in &layer {
                for i in 0..rank {
                    if *beta == simple[i] {
                        continue;
                    }
                    let mut p = 0;
                    loop {
                        let mut r = beta.clone();
                        r[i] -= p + 1;
                        if set.contains(&r) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pair: i64 = (0..rank).map(|j| beta[j] * cartan[i][j]).sum();
                    let q = p - pair;
                    if q > 0 {
                        let mut r = beta.clone();
                        r[i] += 1;
                        next.insert(r);
                    }
                }
            }
            layer = next.into_iter().filter(|r| !set.contains(r)).collect();
            for r in &layer {
                set.insert(r.clone());
            }
        }
        let mut positive: Vec<Root> = set.into_iter().collect();
        positive.sort_by(root_order);
        let index = positive
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();
        let mut rs = RootSystemData {
            series,
            rank,
            cartan_matrix: cartan,
            simple_roots: simple,
            positive_roots: positive,
            gram,
            rho: Weight::zero(rank),
            index,
        };
        let mut rho = Weight::zero(rank);
        for r in &rs.positive_roots {
            rho = rho.add_root(r, 1);
        }
        rs.rho = rho.scale(&rat::frac(1, 2));
        Ok(rs)
    }

    /// Rebuilds lookup tables after deserialization.
    pub fn reindex(&mut self) {
        self.index = self
            .positive_roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn root(&self, k: usize) -> &Root {
        &self.positive_roots[k]
    }

    pub fn index_of(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    /// Index of ±r as a signed root: `k` for the positive root k, `N + k` for its negative.
    pub fn signed_index(&self, r: &[i64]) -> Option<usize> {
        if let Some(k) = self.index_of(r) {
            return Some(k);
        }
        let neg: Root = r.iter().map(|x| -x).collect();
        self.index_of(&neg).map(|k| k + self.num_positive())
    }

    pub fn signed_root(&self, s: usize) -> Root {
        let n = self.num_positive();
        if s < n {
            self.positive_roots[s].clone()
        } else {
            self.positive_roots[s - n].iter().map(|x| -x).collect()
        }
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        self.signed_index(r).is_some()
    }

    pub fn is_simple(&self, k: usize) -> bool {
        height(&self.positive_roots[k]) == 1
    }

    pub fn simple_index(&self, k: usize) -> Option<usize> {
        if self.is_simple(k) {
            self.positive_roots[k].iter().position(|&x| x == 1)
        } else {
            None
        }
    }

    pub fn highest_root(&self) -> usize {
        self.num_positive() - 1
    }

    /// Table m_{γ,α_i} for all positive γ.
    pub fn simple_decomposition(&self) -> Vec<Vec<i64>> {
        self.positive_roots.clone()
    }

    pub fn inner(&self, a: &[Rat], b: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if !b[j].is_zero() && !self.gram[i][j].is_zero() {
                    acc += &a[i] * &b[j] * &self.gram[i][j];
                }
            }
        }
        acc
    }

    pub fn inner_roots(&self, a: &[i64], b: &[i64]) -> Rat {
        let a: Vec<Rat> = a.iter().map(|&x| rat::int(x)).collect();
        let b: Vec<Rat> = b.iter().map(|&x| rat::int(x)).collect();
        self.inner(&a, &b)
    }

    pub fn norm2(&self, r: &[i64]) -> Rat {
        self.inner_roots(r, r)
    }

    /// ⟨λ, α_i^∨⟩ for a simple root α_i.
    pub fn simple_pairing(&self, w: &Weight, i: usize) -> Rat {
        let mut acc = Rat::zero();
        for j in 0..self.rank {
            if self.cartan_matrix[i][j] != 0 {
                acc += &w.0[j] * rat::int(self.cartan_matrix[i][j]);
            }
        }
        acc
    }

    /// λ(h_γ) = 2(λ,γ)/(γ,γ) for the positive root with index k.
    pub fn coroot_pairing(&self, w: &Weight, k: usize) -> Rat {
        let g = Weight::from_root(&self.positive_roots[k]);
        rat::int(2) * self.inner(&w.0, &g.0) / self.norm2(&self.positive_roots[k])
    }

    /// Coefficients of h_γ over the simple coroots h_i.
    pub fn coroot_coeffs(&self, r: &[i64]) -> Vec<i64> {
        let n = self.norm2(r);
        (0..self.rank)
            .map(|i| {
                let c = rat::int(r[i]) * &self.gram[i][i] / &n;
                rat::to_i64(&c).expect("coroot coefficients are integers")
            })
            .collect()
    }

    /// Converts fundamental-weight coordinates to simple-root coordinates.
    pub fn fundamental_to_simple(&self, coords: &[Rat]) -> Result<Weight> {
        if coords.len() != self.rank {
            return Err(Error::Config(format!(
                "expected {} weight coordinates, got {}",
                self.rank,
                coords.len()
            )));
        }
        let a = Matrix::from_i64(&self.cartan_matrix);
        let x = a
            .solve(coords)
            .ok_or_else(|| Error::Config("singular Cartan matrix".into()))?;
        Ok(Weight(x))
    }

    pub fn simple_to_fundamental(&self, w: &Weight) -> Vec<Rat> {
        (0..self.rank).map(|i| self.simple_pairing(w, i)).collect()
    }

    pub fn root_label(&self, r: &[i64]) -> String {
        let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        parts.join("")
    }

    /// Resolves `highest`, `simple:<i>` (1-based), or comma/space separated coordinates.
    pub fn parse_root(&self, spec: &str) -> Result<usize> {
        let s = spec.trim();
        if s.eq_ignore_ascii_case("highest") || s.eq_ignore_ascii_case("theta") {
            return Ok(self.highest_root());
        }
        if let Some(i) = s.strip_prefix("simple:") {
            let i: usize = i
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad simple root index {i}")))?;
            if i == 0 || i > self.rank {
                return Err(Error::Config(format!("simple root index {i} out of range")));
            }
            let mut r = vec![0; self.rank];
            r[i - 1] = 1;
            return self.index_of(&r).ok_or_else(|| Error::NotARoot(spec.into()));
        }
        let coords: std::result::Result<Vec<i64>, _> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>())
            .collect();
        let coords = coords.map_err(|_| Error::Parse(format!("bad root {spec}")))?;
        if coords.len() != self.rank {
            return Err(Error::NotARoot(spec.into()));
        }
        self.index_of(&coords)
            .ok_or_else(|| Error::NotARoot(spec.into()))
    }

    /// Φ_α: roots γ ≠ ±α whose whole α-string lies in the positive roots.
    pub fn phi_alpha(&self, alpha: usize) -> Vec<usize> {
        let a = &self.positive_roots[alpha];
        let n = self.num_positive();
        let mut out = Vec::new();
        for s in 0..2 * n {
            let g = self.signed_root(s);
            if s % n == alpha {
                continue;
            }
            let mut ok = true;
            for dir in [1i64, -1] {
                let mut j = if dir == 1 { 0 } else { -1 };
                loop {
                    let r: Root = g.iter().zip(a).map(|(x, y)| x + j * y).collect();
                    match self.signed_index(&r) {
                        Some(t) if t < n => {}
                        Some(_) => {
                            ok = false;
                            break;
                        }
                        None => break,
                    }
                    j += dir;
                }
            }
            if ok {
                // negative roots cannot satisfy the condition, but keep the data honest
                out.push(s);
            }
        }
        out
    }
}

/// Identifies a basis element of g.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    F(usize),
    H(usize),
    E(usize),
}

/// Chevalley basis: ids `f_k = k`, `h_i = N + i`, `e_k = N + rank + k`.
#[derive(Clone, Debug)]
pub struct ChevalleyBasis {
    pub rs: RootSystemData,
    /// N_{r,s} on signed roots.
    nconst: Vec<Vec<i64>>,
    table: Vec<Vec<Vec<(usize, i64)>>>,
}

/// Flat JSON image of a Chevalley basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChevalleyJson {
    pub root_system: RootSystemData,
    pub labels: Vec<String>,
    /// Entries `[x, y, z, c]` meaning that `[x, y]` has coefficient `c` on `z`.
    pub brackets: Vec<[i64; 4]>,
}

impl ChevalleyBasis {
    pub fn build(rs: &RootSystemData) -> Result<Self> {
        let n = rs.num_positive();
        let nconst = structure_constants(rs)?;
        let mut cb = ChevalleyBasis {
            rs: rs.clone(),
            nconst,
            table: Vec::new(),
        };
        let dim = cb.dim();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for x in 0..dim {
            for y in 0..dim {
                table[x][y] = cb.compute_bracket(x, y);
            }
        }
        cb.table = table;
        debug_assert_eq!(cb.dim(), 2 * n + rs.rank);
        Ok(cb)
    }

    pub fn from_type(series: Series, rank: usize) -> Result<Self> {
        Self::build(&RootSystemData::build(series, rank)?)
    }

    pub fn dim(&self) -> usize {
        2 * self.rs.num_positive() + self.rs.rank
    }

    pub fn npos(&self) -> usize {
        self.rs.num_positive()
    }

    pub fn id(&self, g: Gen) -> usize {
        let n = self.npos();
        match g {
            Gen::F(k) => k,
            Gen::H(i) => n + i,
            Gen::E(k) => n + self.rs.rank + k,
        }
    }

    pub fn gen(&self, id: usize) -> Gen {
        let n = self.npos();
        let r = self.rs.rank;
        if id < n {
            Gen::F(id)
        } else if id < n + r {
            Gen::H(id - n)
        } else {
            Gen::E(id - n - r)
        }
    }

    pub fn f(&self, k: usize) -> usize {
        self.id(Gen::F(k))
    }

    pub fn h(&self, i: usize) -> usize {
        self.id(Gen::H(i))
    }

    pub fn e(&self, k: usize) -> usize {
        self.id(Gen::E(k))
    }

    pub fn label(&self, id: usize) -> String {
        match self.gen(id) {
            Gen::F(k) => format!("f{}", self.rs.root_label(self.rs.root(k))),
            Gen::H(i) => format!("h{}", i + 1),
            Gen::E(k) => format!("e{}", self.rs.root_label(self.rs.root(k))),
        }
    }

    /// Root of a root vector as a signed root index, None for h's.
    pub fn signed_of(&self, id: usize) -> Option<usize> {
        match self.gen(id) {
            Gen::E(k) => Some(k),
            Gen::F(k) => Some(k + self.npos()),
            Gen::H(_) => None,
        }
    }

    fn id_of_signed(&self, s: usize) -> usize {
        let n = self.npos();
        if s < n {
            self.e(s)
        } else {
            self.f(s - n)
        }
    }

    /// h-weight of a basis element in simple-root coordinates.
    pub fn weight_of(&self, id: usize) -> Root {
        match self.signed_of(id) {
            Some(s) => self.rs.signed_root(s),
            None => vec![0; self.rs.rank],
        }
    }

    pub fn structure_constant(&self, r: usize, s: usize) -> i64 {
        self.nconst[r][s]
    }

    fn compute_bracket(&self, x: usize, y: usize) -> Vec<(usize, i64)> {
        let rs = &self.rs;
        let n = self.npos();
        match (self.signed_of(x), self.signed_of(y)) {
            (None, None) => Vec::new(),
            (None, Some(s)) => {
                let Gen::H(i) = self.gen(x) else { unreachable!() };
                let root = rs.signed_root(s);
                let c: i64 = (0..rs.rank).map(|j| root[j] * rs.cartan_matrix[i][j]).sum();
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(y, c)]
                }
            }
            (Some(_), None) => self
                .compute_bracket(y, x)
                .into_iter()
                .map(|(z, c)| (z, -c))
                .collect(),
            (Some(r), Some(s)) => {
                let a = rs.signed_root(r);
                let b = rs.signed_root(s);
                let sum: Root = a.iter().zip(&b).map(|(p, q)| p + q).collect();
                if sum.iter().all(|&v| v == 0) {
                    // [X_r, X_{-r}] = h_r, with h_{-r} = -h_r
                    let (pos, sign) = if r < n { (r, 1) } else { (r - n, -1) };
                    let coeffs = rs.coroot_coeffs(rs.root(pos));
                    coeffs
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c != 0)
                        .map(|(i, c)| (self.h(i), sign * c))
                        .collect()
                } else if let Some(t) = rs.signed_index(&sum) {
                    let c = self.nconst[r][s];
                    if c == 0 {
                        Vec::new()
                    } else {
                        vec![(self.id_of_signed(t), c)]
                    }
                } else {
                    Vec::new()
                }
            }
        }
    }

    /// [x, y] as a sparse integer combination of basis ids.
    pub fn bracket(&self, x: usize, y: usize) -> &[(usize, i64)] {
        &self.table[x][y]
    }

    /// Bracket of two sparse combinations.
    pub fn bracket_vec(&self, a: &[(usize, Rat)], b: &[(usize, Rat)]) -> Vec<(usize, Rat)> {
        let mut acc: Vec<Rat> = vec![Rat::zero(); self.dim()];
        for (x, ca) in a {
            for (y, cb) in b {
                for &(z, c) in self.bracket(*x, *y) {
                    acc[z] += ca * cb * rat::int(c);
                }
            }
        }
        acc.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Largest |residual| of the Jacobi identity over all basis triples (0 when it holds).
    pub fn jacobi_residual(&self) -> i64 {
        let dim = self.dim();
        let mut worst = 0;
        for x in 0..dim {
            for y in 0..dim {
                for z in 0..dim {
                    let mut acc = vec![0i64; dim];
                    for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                        for &(w, k) in self.bracket(b, c) {
                            for &(v, l) in self.bracket(a, w) {
                                acc[v] += k * l;
                            }
                        }
                    }
                    for v in acc {
                        worst = worst.max(v.abs());
                    }
                }
            }
        }
        worst
    }

    /// Checks |N_{r,s}| = p+1 for every pair of roots with r+s a root.
    pub fn check_structure_constants(&self) -> Result<()> {
        let rs = &self.rs;
        let n = self.npos();
        for r in 0..2 * n {
            for s in 0..2 * n {
                let a = rs.signed_root(r);
                let b = rs.signed_root(s);
                let sum: Root = a.iter().zip(&b).map(|(p, q)| p + q).collect();
                if !rs.is_root(&sum) {
                    continue;
                }
                let mut p = 0;
                loop {
                    let t: Root = b.iter().zip(&a).map(|(q, x)| q - (p + 1) * x).collect();
                    if rs.is_root(&t) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if self.nconst[r][s].abs() != p + 1 {
                    return Err(Error::Check(format!(
                        "|N| != p+1 for roots {:?}, {:?}",
                        a, b
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> ChevalleyJson {
        let dim = self.dim();
        let mut brackets = Vec::new();
        for x in 0..dim {
            for y in 0..dim {
                for &(z, c) in self.bracket(x, y) {
                    brackets.push([x as i64, y as i64, z as i64, c]);
                }
            }
        }
        ChevalleyJson {
            root_system: self.rs.clone(),
            labels: (0..dim).map(|i| self.label(i)).collect(),
            brackets,
        }
    }
}

/// Structure constants from extraspecial pairs, extended by the standard relations.
fn structure_constants(rs: &RootSystemData) -> Result<Vec<Vec<i64>>> {
    let n = rs.num_positive();
    let mut special: HashMap<(usize, usize), Rat> = HashMap::new();
    let add = |a: &Root, b: &Root| -> Root { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let neg = |s: usize| if s < n { s + n } else { s - n };

    fn lookup(
        rs: &RootSystemData,
        special: &HashMap<(usize, usize), Rat>,
        r: usize,
        s: usize,
    ) -> Rat {
        let n = rs.num_positive();
        let neg = |s: usize| if s < n { s + n } else { s - n };
        let a = rs.signed_root(r);
        let b = rs.signed_root(s);
        let sum: Root = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let Some(rs_sum) = rs.signed_index(&sum) else {
            return Rat::zero();
        };
        let pos_r = r < n;
        let pos_s = s < n;
        if pos_r && pos_s {
            return if r < s {
                special.get(&(r, s)).cloned().expect("special pair known")
            } else {
                -special.get(&(s, r)).cloned().expect("special pair known")
            };
        }
        if !pos_r && !pos_s {
            return -lookup(rs, special, neg(r), neg(s));
        }
        // r + s + t = 0
        let t = neg(rs_sum);
        let nt = rs.norm2(&rs.signed_root(t));
        let nr = rs.norm2(&a);
        let ns = rs.norm2(&b);
        let pos_t = t < n;
        if pos_r {
            if pos_t {
                nt / ns * lookup(rs, special, t, r)
            } else {
                nt / nr * lookup(rs, special, s, t)
            }
        } else if pos_t {
            nt / nr * lookup(rs, special, s, t)
        } else {
            nt / ns * lookup(rs, special, t, r)
        }
    }

    for xi in 0..n {
        if rs.is_simple(xi) {
            continue;
        }
        let target = rs.root(xi).clone();
        let mut pairs = Vec::new();
        for r in 0..n {
            for s in r + 1..n {
                if add(rs.root(r), rs.root(s)) == target {
                    pairs.push((r, s));
                }
            }
        }
        let (al, be) = pairs[0];
        let a = rs.root(al).clone();
        let b = rs.root(be).clone();
        let mut p = 0;
        loop {
            let t: Root = b.iter().zip(&a).map(|(y, x)| y - (p + 1) * x).collect();
            if rs.is_root(&t) {
                p += 1;
            } else {
                break;
            }
        }
        let nab = rat::int(p + 1);
        special.insert((al, be), nab.clone());
        let nxi = rs.norm2(&target);
        for &(g, d) in &pairs[1..] {
            let gr = rs.root(g).clone();
            let dr = rs.root(d).clone();
            let mut acc = Rat::zero();
            let d_minus_a: Root = dr.iter().zip(&a).map(|(x, y)| x - y).collect();
            if rs.is_root(&d_minus_a) {
                let t1 = lookup(rs, &special, d, neg(al)) * lookup(rs, &special, g, neg(be));
                acc += t1 / rs.norm2(&d_minus_a);
            }
            let g_minus_a: Root = gr.iter().zip(&a).map(|(x, y)| x - y).collect();
            if rs.is_root(&g_minus_a) {
                let t2 = lookup(rs, &special, neg(al), g) * lookup(rs, &special, d, neg(be));
                acc += t2 / rs.norm2(&g_minus_a);
            }
            let v = &nxi / &nab * acc;
            special.insert((g, d), v);
        }
    }
    let mut out = vec![vec![0i64; 2 * n]; 2 * n];
    for r in 0..2 * n {
        for s in 0..2 * n {
            let v = lookup(rs, &special, r, s);
            if v.is_zero() {
                continue;
            }
            let k = rat::to_i64(&v).ok_or_else(|| {
                Error::Check(format!("non-integral structure constant {}", rat::fmt(&v)))
            })?;
            out[r][s] = k;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParabolicData {
    /// Simple-root indices (0-based) spanning the Levi factor.
    pub sigma: Vec<usize>,
    /// Positive roots of the nilradical, as indices into the positive roots.
    pub delta_u_plus: Vec<usize>,
    pub delta_l_plus: Vec<usize>,
    pub rho_u: Weight,
}

impl ParabolicData {
    pub fn new(rs: &RootSystemData, sigma: &[usize]) -> Result<Self> {
        let mut sigma: Vec<usize> = sigma.to_vec();
        sigma.sort_unstable();
        sigma.dedup();
        if let Some(&i) = sigma.iter().find(|&&i| i >= rs.rank) {
            return Err(Error::Config(format!("simple root index {} out of range", i + 1)));
        }
        let mut u = Vec::new();
        let mut l = Vec::new();
        for (k, r) in rs.positive_roots.iter().enumerate() {
            let in_levi = r
                .iter()
                .enumerate()
                .all(|(i, &c)| c == 0 || sigma.contains(&i));
            if in_levi {
                l.push(k);
            } else {
                u.push(k);
            }
        }
        let mut rho_u = Weight::zero(rs.rank);
        for &k in &u {
            rho_u = rho_u.add_root(rs.root(k), 1);
        }
        let rho_u = rho_u.scale(&rat::frac(1, 2));
        Ok(ParabolicData {
            sigma,
            delta_u_plus: u,
            delta_l_plus: l,
            rho_u,
        })
    }

    pub fn borel(rs: &RootSystemData) -> Self {
        Self::new(rs, &[]).expect("empty sigma is valid")
    }

    pub fn is_borel(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn in_u(&self, k: usize) -> bool {
        self.delta_u_plus.contains(&k)
    }

    pub fn in_levi(&self, k: usize) -> bool {
        self.delta_l_plus.contains(&k)
    }
}

/// λ(h_i) ∈ ℕ₀ for every i ∈ Σ.
pub fn is_p_dominant(rs: &RootSystemData, lambda: &Weight, p: &ParabolicData) -> bool {
    p.sigma.iter().all(|&i| {
        let v = rs.simple_pairing(lambda, i);
        v.is_integer() && !v.is_negative()
    })
}

impl RootSystemData {
    /// Invariant checks on the constructed data.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.rank {
            if self.cartan_matrix[i][i] != 2 {
                return Err(Error::Check("Cartan diagonal".into()));
            }
            for j in 0..self.rank {
                if i != j && self.cartan_matrix[i][j] > 0 {
                    return Err(Error::Check("Cartan off-diagonal sign".into()));
                }
            }
            if !self.simple_pairing(&self.rho, i).is_one() {
                return Err(Error::Check("rho(h_i) != 1".into()));
            }
        }
        Ok(())
    }
}
