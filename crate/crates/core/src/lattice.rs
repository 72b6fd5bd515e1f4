//! Root-lattice combinatorics of the twisted basis: the vectors t_γ^α, the weight
//! map a ↦ μ_{a,α}, weight classes and their sizes.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::rootsys::{ParabolicData, RootSystemData, Weight};

/// Exponents over Δ⁺_u, in root order.
pub type ExponentVector = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Finite,
    Infinite,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Multiplicity {
    pub count: usize,
    pub cutoff: usize,
    pub probe_cutoff: usize,
    pub probe_count: usize,
    pub verdict: Verdict,
}

fn sign(alpha: usize, gamma: usize) -> i64 {
    if alpha == gamma {
        -1
    } else {
        1
    }
}

/// t_γ^α over all of Δ⁺ (γ must not be simple).
pub fn t_gamma_alpha(rs: &RootSystemData, gamma: usize, alpha: usize) -> Result<Vec<i64>> {
    if rs.is_simple(gamma) {
        return Err(Error::Config("t_γ^α needs a non-simple γ".into()));
    }
    let mut t = vec![0; rs.num_positive()];
    let m = rs.root(gamma);
    for (i, &mi) in m.iter().enumerate() {
        let si = rs.index_of(&rs.simple_roots[i]).unwrap();
        t[si] = -sign(alpha, si) * mi;
    }
    t[gamma] = sign(alpha, gamma);
    Ok(t)
}

/// μ_{a,α} for exponents indexed by all of Δ⁺.
pub fn mu_weight_full(rs: &RootSystemData, a: &[i64], alpha: usize) -> Weight {
    let mut w = Weight::from_root(rs.root(alpha));
    for (g, &ag) in a.iter().enumerate() {
        if ag != 0 {
            w = w.add_root(rs.root(g), -sign(alpha, g) * ag);
        }
    }
    w
}

/// Weight bookkeeping for one (root system, parabolic, α).
#[derive(Clone, Debug)]
pub struct Lattice {
    pub rs: RootSystemData,
    pub p: ParabolicData,
    pub alpha: usize,
}

impl Lattice {
    pub fn new(rs: &RootSystemData, p: &ParabolicData, alpha: usize) -> Result<Self> {
        if !p.in_u(alpha) {
            return Err(Error::Config(format!(
                "root {:?} is not in the nilradical",
                rs.root(alpha)
            )));
        }
        Ok(Lattice {
            rs: rs.clone(),
            p: p.clone(),
            alpha,
        })
    }

    pub fn nu(&self) -> usize {
        self.p.delta_u_plus.len()
    }

    pub fn embed(&self, a: &[i64]) -> Vec<i64> {
        let mut full = vec![0; self.rs.num_positive()];
        for (k, &g) in self.p.delta_u_plus.iter().enumerate() {
            full[g] = a[k];
        }
        full
    }

    pub fn mu_weight(&self, a: &[i64]) -> Weight {
        mu_weight_full(&self.rs, &self.embed(a), self.alpha)
    }

    fn free_roots(&self) -> Vec<usize> {
        self.p
            .delta_u_plus
            .iter()
            .copied()
            .filter(|&g| !self.rs.is_simple(g))
            .collect()
    }

    /// Whether b − a lies in the ℤ-span of t_γ^α, γ ∈ Δ⁺_u non-simple.
    pub fn same_class(&self, a: &[i64], b: &[i64]) -> bool {
        let fa = self.embed(a);
        let fb = self.embed(b);
        let mut resid: Vec<i64> = fb.iter().zip(&fa).map(|(x, y)| x - y).collect();
        for g in self.free_roots() {
            // t_γ has entry ±1 at γ and nowhere else off the simple roots
            let n = sign(self.alpha, g) * resid[g];
            let t = t_gamma_alpha(&self.rs, g, self.alpha).unwrap();
            for (r, tv) in resid.iter_mut().zip(&t) {
                *r -= n * tv;
            }
        }
        resid.iter().all(|&x| x == 0)
    }

    /// Members b of the class of a with 0 ≤ b ≤ cutoff; with `cone` only ℕ₀-combinations.
    pub fn class_members(&self, a: &[i64], cutoff: usize, cone: bool) -> Vec<ExponentVector> {
        let free = self.free_roots();
        let fa = self.embed(a);
        let ts: Vec<Vec<i64>> = free
            .iter()
            .map(|&g| t_gamma_alpha(&self.rs, g, self.alpha).unwrap())
            .collect();
        let mut out = Vec::new();
        let mut digits = vec![0i64; free.len()];
        loop {
            let mut b = fa.clone();
            let mut ok = true;
            for (k, &g) in free.iter().enumerate() {
                let n = sign(self.alpha, g) * (digits[k] - fa[g]);
                if cone && n < 0 {
                    ok = false;
                    break;
                }
                for (x, tv) in b.iter_mut().zip(&ts[k]) {
                    *x += n * tv;
                }
            }
            if ok {
                let inside = b.iter().enumerate().all(|(g, &x)| {
                    if self.p.in_u(g) {
                        x >= 0 && x <= cutoff as i64
                    } else {
                        x == 0
                    }
                });
                if inside {
                    out.push(self.p.delta_u_plus.iter().map(|&g| b[g]).collect());
                }
            }
            // next digit vector
            let mut i = 0;
            loop {
                if i == digits.len() {
                    out.sort();
                    return out;
                }
                digits[i] += 1;
                if digits[i] <= cutoff as i64 {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    /// Theoretical verdict: finite for simple α; otherwise infinite exactly when the
    /// class has a nonzero nonnegative recession direction (searched with entries ≤ 3).
    pub fn predicted_verdict(&self) -> Verdict {
        if self.rs.is_simple(self.alpha) {
            return Verdict::Finite;
        }
        let free = self.free_roots();
        if free.len() > 8 {
            return Verdict::Infinite;
        }
        let ts: Vec<Vec<i64>> = free
            .iter()
            .map(|&g| t_gamma_alpha(&self.rs, g, self.alpha).unwrap())
            .collect();
        let mut w = vec![0i64; free.len()];
        loop {
            let mut i = 0;
            loop {
                if i == w.len() {
                    return Verdict::Finite;
                }
                w[i] += 1;
                if w[i] <= 3 {
                    break;
                }
                w[i] = 0;
                i += 1;
            }
            let mut v = vec![0i64; self.rs.num_positive()];
            for (k, &g) in free.iter().enumerate() {
                let n = sign(self.alpha, g) * w[k];
                for (x, tv) in v.iter_mut().zip(&ts[k]) {
                    *x += n * tv;
                }
            }
            let ok = v.iter().enumerate().all(|(g, &x)| {
                if self.p.in_u(g) {
                    x >= 0
                } else {
                    x == 0
                }
            });
            if ok {
                return Verdict::Infinite;
            }
        }
    }

    /// For simple α, a bound on every exponent in the class of a. Pairing with
    /// s_α ρ = ρ − α is negative on α and positive on the other positive roots, so
    /// Σ_γ a_γ |(ρ − α, γ)| is constant on a class.
    pub fn exponent_bound(&self, a: &[i64]) -> Option<usize> {
        if !self.rs.is_simple(self.alpha) {
            return None;
        }
        let ell = self.rs.rho.add_root(self.rs.root(self.alpha), -1);
        let w: Vec<Rat> = self
            .p
            .delta_u_plus
            .iter()
            .map(|&g| self.rs.inner(&ell.0, &Weight::from_root(self.rs.root(g)).0).abs())
            .collect();
        let total = a.iter().zip(&w).fold(Rat::zero(), |s, (&x, c)| s + c * rat::int(x));
        let least = w.iter().min()?.clone();
        rat::to_i64(&(total / least).floor()).map(|b| b as usize)
    }

    /// Class size at `cutoff`. For simple α the probe is the exact class size; otherwise
    /// the probe is taken at `cutoff + 3` and the verdict is checked by whether the class
    /// still grows up to `cutoff + 6`.
    pub fn weight_multiplicity(&self, a: &[i64], cutoff: usize) -> Result<Multiplicity> {
        if a.len() != self.nu() || a.iter().any(|&x| x < 0 || x > cutoff as i64) {
            return Err(Error::Config(format!(
                "exponent vector must have {} entries in 0..={cutoff}",
                self.nu()
            )));
        }
        let count = self.class_members(a, cutoff, false).len();
        let verdict = self.predicted_verdict();
        let probe_cutoff = match self.exponent_bound(a) {
            Some(b) => b.max(cutoff),
            None => cutoff + 3,
        };
        let probe_count = self.class_members(a, probe_cutoff, false).len();
        let far = self.class_members(a, probe_cutoff + 3, false).len();
        let empirical = if far > probe_count {
            Verdict::Infinite
        } else {
            Verdict::Finite
        };
        if verdict != empirical {
            return Err(Error::Check(format!(
                "class of {a:?}: predicted {verdict:?} but counts {count} -> {probe_count} -> {far}"
            )));
        }
        Ok(Multiplicity {
            count,
            cutoff,
            probe_cutoff,
            probe_count,
            verdict,
        })
    }

    /// Diagnostic: class size using only nonnegative combinations of the t_γ^α.
    pub fn cone_multiplicity(&self, a: &[i64], cutoff: usize) -> usize {
        self.class_members(a, cutoff, true).len()
    }

    pub fn format_exponents(a: &[i64]) -> String {
        let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

/// μ_{a,α} weights as rationals, for display.
pub fn weight_string(w: &Weight) -> String {
    rat::fmt_vec(&w.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Series;

    #[test]
    fn a2_theta_t_vector() {
        let rs = RootSystemData::build(Series::A, 2).unwrap();
        let th = rs.highest_root();
        assert_eq!(t_gamma_alpha(&rs, th, th).unwrap(), vec![-1, -1, -1]);
        assert!(t_gamma_alpha(&rs, 0, th).is_err());
    }
}
