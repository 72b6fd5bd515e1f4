//! Batch jobs: configuration, the five commands, and JSON/CSV rendering.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Lattice, Verdict};
use crate::modules::analysis::{
    check_central_character, check_cyclicity, commutator_defects, gamma_decomposition,
    h0_kernel, local_nilpotence, sample_keys, t_alpha_minus_ids, weight_defects,
};
use crate::modules::twisted::check_alpha;
use crate::modules::{BasisKey, GModule, GTReport, ModuleVector, TwistedModule, VermaModule};
use crate::pbw::Uea;
use crate::rat::{self, Rat};
use crate::rootsys::{height, is_p_dominant, ChevalleyBasis, ParabolicData, Series, Weight};
use crate::weyl::fock::random_localized;
use crate::weyl::realize::{realize_and_compare, RealizationReport, DEFAULT_GUARD};
use crate::weyl::FreeField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Weights,
    Gt,
    Verify,
    Realize,
    Lattice,
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weights" => Ok(Command::Weights),
            "gt" => Ok(Command::Gt),
            "verify" => Ok(Command::Verify),
            "realize" => Ok(Command::Realize),
            "lattice" => Ok(Command::Lattice),
            _ => Err(Error::Parse(format!("unknown command {s}"))),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).unwrap();
        write!(f, "{}", s.as_str().unwrap())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format {s}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    Twisted,
    Verma,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JobConfig {
    pub command: Command,
    pub series: Series,
    pub rank: usize,
    /// Simple roots of the Levi factor, 1-based.
    pub sigma: Vec<usize>,
    /// Fundamental-weight coordinates; empty means zero.
    #[serde(with = "rat::serde_rat_vec")]
    pub lambda: Vec<Rat>,
    /// `highest`, `simple:<i>`, or simple-root coordinates.
    pub alpha: String,
    pub cutoff: usize,
    /// Filtration depth for `gt`; defaults to cutoff − 2.
    pub depth: Option<usize>,
    pub seed: u64,
    pub module: ModuleKind,
    pub format: Format,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            command: Command::Verify,
            series: Series::A,
            rank: 1,
            sigma: Vec::new(),
            lambda: Vec::new(),
            alpha: "highest".into(),
            cutoff: 4,
            depth: None,
            seed: 0,
            module: ModuleKind::Twisted,
            format: Format::Json,
        }
    }
}

/// Resolved data for a configuration.
pub struct Setup {
    pub cb: Arc<ChevalleyBasis>,
    pub p: ParabolicData,
    /// λ in simple-root coordinates.
    pub lambda: Weight,
    pub alpha: usize,
}

impl Setup {
    pub fn new(cfg: &JobConfig) -> Result<Self> {
        let cb = Arc::new(ChevalleyBasis::from_type(cfg.series, cfg.rank)?);
        let rs = &cb.rs;
        let mut sigma = Vec::new();
        for &i in &cfg.sigma {
            if i == 0 || i > rs.rank {
                return Err(Error::Config(format!("sigma index {i} outside 1..={}", rs.rank)));
            }
            sigma.push(i - 1);
        }
        let p = ParabolicData::new(rs, &sigma)?;
        let coords = if cfg.lambda.is_empty() {
            vec![rat::zero(); rs.rank]
        } else {
            cfg.lambda.clone()
        };
        if coords.len() != rs.rank {
            return Err(Error::Config(format!(
                "lambda has {} coordinates, rank is {}",
                coords.len(),
                rs.rank
            )));
        }
        let lambda = rs.fundamental_to_simple(&coords)?;
        if !is_p_dominant(rs, &lambda, &p) {
            return Err(Error::NotDominant(rat::fmt_vec(&coords)));
        }
        let alpha = rs.parse_root(&cfg.alpha)?;
        Ok(Setup {
            cb,
            p,
            lambda,
            alpha,
        })
    }

    pub fn twisted(&self) -> Result<TwistedModule> {
        check_alpha(&self.p, self.alpha)?;
        TwistedModule::new(self.cb.clone(), &self.p, &self.lambda, self.alpha)
    }

    pub fn verma(&self) -> Result<VermaModule> {
        VermaModule::new(self.cb.clone(), &self.p, &self.lambda)
    }

    /// Largest height change of one generator: the height of the highest root.
    pub fn reach(&self) -> usize {
        height(self.cb.rs.root(self.cb.rs.highest_root())) as usize
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightRow {
    pub weight: Weight,
    /// μ(h_i) for the simple coroots.
    #[serde(with = "rat::serde_rat_vec")]
    pub fundamental: Vec<Rat>,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightsReport {
    pub module: ModuleKind,
    pub cutoff: usize,
    pub rows: Vec<WeightRow>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GtJobReport {
    pub cutoff: usize,
    pub depth: usize,
    pub max_jordan: usize,
    pub weights: Vec<GTReport>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RealizeReport {
    pub homomorphism_defects: usize,
    pub degree_defects: usize,
    pub p_alpha_matches: bool,
    pub realization: RealizationReport,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeRow {
    pub exponents: Vec<i64>,
    pub weight: Weight,
    pub count: usize,
    pub probe_count: usize,
    pub cone_count: usize,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeReport {
    pub cutoff: usize,
    pub probe_cutoff: usize,
    pub predicted: Verdict,
    pub rows: Vec<LatticeRow>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportBody {
    Weights(WeightsReport),
    Gt(GtJobReport),
    Verify(VerifyReport),
    Realize(RealizeReport),
    Lattice(LatticeReport),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JobReport {
    pub config: JobConfig,
    pub passed: bool,
    pub result: ReportBody,
}

/// Exponent vectors of [0,top]^n ordered by total degree, then lexicographically.
fn small_exponents(n: usize, top: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut a = vec![0i64; n];
    loop {
        out.push(a.clone());
        let mut i = 0;
        loop {
            if i == n {
                out.sort_by_key(|a| (a.iter().sum::<i64>(), a.clone()));
                return out;
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

/// Up to `count` distinct weights of u_{a,α} ⊗ v_0 for small a.
pub fn tracked_weights(w: &TwistedModule, count: usize) -> Vec<Weight> {
    let mut out: Vec<Weight> = Vec::new();
    for a in small_exponents(w.nu(), 2) {
        let wt = w.weight(&(a, 0));
        if !out.contains(&wt) {
            out.push(wt);
        }
        if out.len() == count {
            break;
        }
    }
    out
}

fn weights_job(s: &Setup, cfg: &JobConfig) -> Result<WeightsReport> {
    let module: Box<dyn GModule> = match cfg.module {
        ModuleKind::Twisted => Box::new(s.twisted()?),
        ModuleKind::Verma => Box::new(s.verma()?),
    };
    let nu = s.p.delta_u_plus.len();
    let mut counts: BTreeMap<Weight, usize> = BTreeMap::new();
    for a in small_exponents(nu, cfg.cutoff as i64) {
        for j in 0..module.inducing().dim() {
            *counts.entry(module.weight(&(a.clone(), j))).or_default() += 1;
        }
    }
    let rows = counts
        .into_iter()
        .map(|(weight, dim)| WeightRow {
            fundamental: s.cb.rs.simple_to_fundamental(&weight),
            weight,
            dim,
        })
        .collect();
    Ok(WeightsReport {
        module: cfg.module,
        cutoff: cfg.cutoff,
        rows,
    })
}

fn gt_job(s: &Setup, cfg: &JobConfig) -> Result<GtJobReport> {
    let w = s.twisted()?;
    let uea = Uea::new(s.cb.clone());
    let depth = cfg.depth.unwrap_or(cfg.cutoff.saturating_sub(2)).max(1);
    let mut weights = Vec::new();
    for mu in tracked_weights(&w, 10) {
        weights.push(gamma_decomposition(&w, &uea, &mu, cfg.cutoff, depth)?);
    }
    let max_jordan = weights.iter().map(|r| r.max_jordan()).max().unwrap_or(0);
    Ok(GtJobReport {
        cutoff: cfg.cutoff,
        depth,
        max_jordan,
        weights,
    })
}

fn lattice_job(s: &Setup, cfg: &JobConfig) -> Result<LatticeReport> {
    let lat = Lattice::new(&s.cb.rs, &s.p, s.alpha)?;
    let mut rows: Vec<LatticeRow> = Vec::new();
    let top = (cfg.cutoff as i64).min(2);
    for a in small_exponents(lat.nu(), top) {
        if rows.iter().any(|r| lat.same_class(&r.exponents, &a)) {
            continue;
        }
        let m = lat.weight_multiplicity(&a, cfg.cutoff)?;
        rows.push(LatticeRow {
            weight: lat.mu_weight(&a),
            cone_count: lat.cone_multiplicity(&a, cfg.cutoff),
            exponents: a,
            count: m.count,
            probe_count: m.probe_count,
            verdict: m.verdict,
        });
        if rows.len() == 20 {
            break;
        }
    }
    Ok(LatticeReport {
        cutoff: cfg.cutoff,
        probe_cutoff: cfg.cutoff + 3,
        predicted: lat.predicted_verdict(),
        rows,
    })
}

fn realize_job(s: &Setup, cfg: &JobConfig) -> Result<RealizeReport> {
    let w = s.twisted()?;
    let ff = FreeField::for_lambda(s.cb.clone(), &s.p, &s.lambda)?;
    let k = ff.var(s.alpha).unwrap();
    let pf = ff.pi(s.cb.f(s.alpha)).scalar_part();
    Ok(RealizeReport {
        homomorphism_defects: ff.homomorphism_defects().len(),
        degree_defects: ff.degree_defects().len(),
        p_alpha_matches: pf.as_ref() == Some(ff.p_op(k)),
        realization: realize_and_compare(&w, cfg.cutoff, DEFAULT_GUARD)?,
    })
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// Runs a fallible check, recording an error as a failure.
fn check_with(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    match f() {
        Ok((ok, d)) => check(name, ok, d),
        Err(e) => check(name, false, e.to_string()),
    }
}

fn verify_job(s: &Setup, cfg: &JobConfig) -> Result<VerifyReport> {
    let w = s.twisted()?;
    let cb = s.cb.clone();
    let uea = Uea::new(cb.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let reach = s.reach();
    let top = cfg.cutoff.saturating_sub(reach);
    let mut checks = Vec::new();

    let j = cb.jacobi_residual();
    checks.push(check("jacobi", j == 0, format!("residual {j}")));
    let bad = w.fl.bracket_defects(&cb);
    checks.push(check(
        "inducing_module",
        bad == 0 && w.fl.top_is_highest(&cb),
        format!("dim {}, bracket defects {bad}", w.fl.dim()),
    ));

    let keys = sample_keys(&w, top, 200, rng.gen());
    let triples: Vec<(usize, usize, BasisKey)> = (0..500)
        .map(|i| {
            (
                rng.gen_range(0..cb.dim()),
                rng.gen_range(0..cb.dim()),
                keys[i % keys.len()].clone(),
            )
        })
        .collect();
    let bad = commutator_defects(&w, &triples);
    checks.push(check(
        "representation",
        bad == 0,
        format!("{} triples, {bad} defects", triples.len()),
    ));
    let bad = weight_defects(&w, &keys);
    checks.push(check("weights", bad == 0, format!("{} tensors, {bad} defects", keys.len())));

    if cb.rs.rank == 1 {
        let c = s.cb.rs.simple_pairing(&s.lambda, 0);
        let mut bad = 0;
        for n in 1..=10i64 {
            let v = ModuleVector::basis(w.mode(), vec![n - 1], 0);
            let h = w.act(cb.h(0), &v);
            let e = w.act(cb.e(0), &v);
            let want_e = ModuleVector::basis(w.mode(), vec![n], 0)
                .scale(&(-rat::int(n) * (&c + rat::int(n + 1))));
            if h != v.scale(&(&c + rat::int(2 * n))) || e != want_e {
                bad += 1;
            }
        }
        checks.push(check("sl2_closed_form", bad == 0, format!("n = 1..10, {bad} defects")));
    }

    checks.push(check_with("weight_dichotomy", || {
        let lat = Lattice::new(&cb.rs, &s.p, s.alpha)?;
        let zero = vec![0; lat.nu()];
        let m = lat.weight_multiplicity(&zero, cfg.cutoff)?;
        Ok((
            true,
            format!("{:?}: {} at {} and {} at {}", m.verdict, m.count, m.cutoff, m.probe_count, m.probe_cutoff),
        ))
    }));

    checks.push(check_with("gamma_decomposition", || {
        let depth = cfg.depth.unwrap_or(cfg.cutoff.saturating_sub(2)).max(1);
        let mut jordan = 0;
        let mut products = true;
        let tracked = tracked_weights(&w, 4);
        for mu in &tracked {
            let r = gamma_decomposition(&w, &uea, mu, cfg.cutoff, depth)?;
            jordan = jordan.max(r.max_jordan());
            products &= r.product_identity;
        }
        Ok((
            jordan <= 2 && products,
            format!("{} weights, max Jordan size {jordan}", tracked.len()),
        ))
    }));

    let (chi, bad) = check_central_character(&w, &uea, &keys);
    checks.push(check(
        "central_character",
        bad.is_empty(),
        format!("scalar {}, {} of {} samples differ", rat::fmt(&chi), bad.len(), keys.len()),
    ));

    let start: Vec<ModuleVector> = (0..w.fl.dim()).map(|j| w.generator(j)).collect();
    let cyc = check_cyclicity(&w, &start, cfg.cutoff, reach);
    checks.push(check(
        "cyclicity",
        cyc.complete,
        format!("{} of {} interior tensors", cyc.interior_covered, cyc.interior_total),
    ));

    let ids = t_alpha_minus_ids(&w);
    let samples = sample_keys(&w, top, 50, rng.gen());
    let res = local_nilpotence(&w, &ids, &samples, cfg.cutoff + 2);
    let bad = res.iter().filter(|r| r.2.is_none()).count();
    let most = res.iter().filter_map(|r| r.2).max().unwrap_or(0);
    checks.push(check(
        "local_finiteness",
        bad == 0,
        format!(
            "{} root vectors x {} samples, {bad} not killed, at most {most} steps",
            ids.len(),
            samples.len()
        ),
    ));

    checks.push(check_with("h0_kernel", || {
        let m = s.verma()?;
        let mut dims = Vec::new();
        for mu in tracked_weights(&w, 3) {
            dims.push(h0_kernel(&w, &m, &mu, cfg.cutoff)?.0);
        }
        Ok((true, format!("dims {dims:?}")))
    }));

    checks.push(check_with("free_field", || {
        let ff = FreeField::for_lambda(cb.clone(), &s.p, &s.lambda)?;
        let hom = ff.homomorphism_defects().len();
        let deg = ff.degree_defects().len();
        let k = ff.var(s.alpha).unwrap();
        let pf = ff.pi(cb.f(s.alpha)).scalar_part();
        let vecs = random_localized(ff.nvars(), k, ff.sigma.dim(), 100, &mut rng);
        let phi = ff.phi_inverse_defects(k, &vecs, DEFAULT_GUARD)?;
        Ok((
            hom == 0 && deg == 0 && pf.as_ref() == Some(ff.p_op(k)) && phi == 0,
            format!("bracket defects {hom}, degree defects {deg}, phi defects {phi} of 100"),
        ))
    }));

    checks.push(check_with("realization", || {
        let box_cutoff = if w.nu() <= 3 { cfg.cutoff.min(4) } else { cfg.cutoff.min(2) };
        let r = realize_and_compare(&w, box_cutoff, DEFAULT_GUARD)?;
        Ok((
            r.agree,
            format!(
                "cutoff {box_cutoff}: {} twisted and {} Verma checks, {} + {} mismatches",
                r.twisted.checks, r.verma.checks, r.twisted.mismatches, r.verma.mismatches
            ),
        ))
    }));

    Ok(VerifyReport { checks })
}

impl ReportBody {
    pub fn passed(&self) -> bool {
        match self {
            ReportBody::Weights(_) | ReportBody::Lattice(_) => true,
            ReportBody::Gt(r) => {
                r.max_jordan <= 2 && r.weights.iter().all(|g| g.product_identity)
            }
            ReportBody::Verify(r) => r.checks.iter().all(|c| c.passed),
            ReportBody::Realize(r) => {
                r.homomorphism_defects == 0
                    && r.degree_defects == 0
                    && r.p_alpha_matches
                    && r.realization.agree
            }
        }
    }
}

pub fn run(cfg: &JobConfig) -> Result<JobReport> {
    let s = Setup::new(cfg)?;
    let result = match cfg.command {
        Command::Weights => ReportBody::Weights(weights_job(&s, cfg)?),
        Command::Gt => ReportBody::Gt(gt_job(&s, cfg)?),
        Command::Verify => ReportBody::Verify(verify_job(&s, cfg)?),
        Command::Realize => ReportBody::Realize(realize_job(&s, cfg)?),
        Command::Lattice => ReportBody::Lattice(lattice_job(&s, cfg)?),
    };
    Ok(JobReport {
        config: cfg.clone(),
        passed: result.passed(),
        result,
    })
}

/// Process exit code for a job outcome: 0 success, 1 failed check, 2 bad configuration.
pub fn exit_code(outcome: &Result<JobReport>) -> i32 {
    match outcome {
        Ok(r) if r.passed => 0,
        Ok(_) => 1,
        Err(e) if e.is_config() => 2,
        Err(_) => 1,
    }
}

type CsvRow = (Vec<String>, String, String);

fn weight_cells(w: &Weight) -> Vec<String> {
    w.0.iter().map(rat::fmt).collect()
}

impl JobReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    fn csv_rows(&self) -> Vec<CsvRow> {
        let mut rows = Vec::new();
        match &self.result {
            ReportBody::Weights(r) => {
                for row in &r.rows {
                    rows.push((weight_cells(&row.weight), "dim".into(), row.dim.to_string()));
                }
            }
            ReportBody::Gt(r) => {
                for g in &r.weights {
                    let wc = weight_cells(&g.weight);
                    rows.push((wc.clone(), "weight_space_dim".into(), g.weight_space_dim.to_string()));
                    for (n, d) in g.filtration.iter().enumerate() {
                        rows.push((wc.clone(), format!("filtration_{}", n + 1), d.to_string()));
                    }
                    for c in &g.characters {
                        let tag = format!("casimir_{}", rat::fmt(&c.casimir_value));
                        rows.push((wc.clone(), format!("{tag}_multiplicity"), c.multiplicity.to_string()));
                        rows.push((wc.clone(), format!("{tag}_jordan"), c.jordan_size.to_string()));
                    }
                }
            }
            ReportBody::Verify(r) => {
                for c in &r.checks {
                    rows.push((Vec::new(), c.name.clone(), c.passed.to_string()));
                }
            }
            ReportBody::Realize(r) => {
                let t = &r.realization.twisted;
                let v = &r.realization.verma;
                for (q, val) in [
                    ("homomorphism_defects", r.homomorphism_defects),
                    ("degree_defects", r.degree_defects),
                    ("twisted_checks", t.checks),
                    ("twisted_mismatches", t.mismatches),
                    ("twisted_monomial_images", t.monomial_images),
                    ("twisted_character_mismatches", t.character_mismatches),
                    ("verma_checks", v.checks),
                    ("verma_mismatches", v.mismatches),
                    ("verma_character_mismatches", v.character_mismatches),
                ] {
                    rows.push((Vec::new(), q.into(), val.to_string()));
                }
            }
            ReportBody::Lattice(r) => {
                for row in &r.rows {
                    let wc = weight_cells(&row.weight);
                    rows.push((wc.clone(), "count".into(), row.count.to_string()));
                    rows.push((wc.clone(), "probe_count".into(), row.probe_count.to_string()));
                    rows.push((wc.clone(), "cone_count".into(), row.cone_count.to_string()));
                    let v = serde_json::to_value(row.verdict).unwrap();
                    rows.push((wc, "verdict".into(), v.as_str().unwrap().to_string()));
                }
            }
        }
        rows
    }

    /// Columns w1..w_rank (simple-root coordinates), quantity, value.
    pub fn to_csv(&self) -> String {
        let rank = self.config.rank;
        let mut out = String::new();
        let mut head: Vec<String> = (1..=rank).map(|i| format!("w{i}")).collect();
        head.push("quantity".into());
        head.push("value".into());
        out.push_str(&head.join(","));
        out.push('\n');
        for (mut cells, q, v) in self.csv_rows() {
            cells.resize(rank, String::new());
            cells.push(q);
            cells.push(v);
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn render(&self) -> Result<String> {
        match self.config.format {
            Format::Json => self.to_json(),
            Format::Csv => Ok(self.to_csv()),
        }
    }
}
