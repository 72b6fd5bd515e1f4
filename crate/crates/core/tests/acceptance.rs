//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twistgt_core::jobs::{self, tracked_weights, Command, JobConfig, Setup};
use twistgt_core::modules::analysis::{
    check_central_character, check_cyclicity, commutator_defects, gamma_decomposition,
    local_nilpotence, sample_keys, t_alpha_minus_ids,
};
use twistgt_core::modules::{GModule, ModuleVector, TwistedModule};
use twistgt_core::pbw::Uea;
use twistgt_core::rat::{self, Rat};
use twistgt_core::rootsys::{ChevalleyBasis, Series, Weight};
use twistgt_core::weyl::fock::random_localized;
use twistgt_core::weyl::realize::{realize_and_compare, DEFAULT_GUARD};
use twistgt_core::weyl::FreeField;
use twistgt_core::Result;

struct Case {
    name: &'static str,
    series: Series,
    rank: usize,
    sigma: Vec<usize>,
    lambda: Vec<Rat>,
    alpha: &'static str,
}

impl Case {
    fn config(&self, cutoff: usize) -> JobConfig {
        JobConfig {
            series: self.series,
            rank: self.rank,
            sigma: self.sigma.clone(),
            lambda: self.lambda.clone(),
            alpha: self.alpha.into(),
            cutoff,
            ..JobConfig::default()
        }
    }

    fn setup(&self) -> Result<Setup> {
        Setup::new(&self.config(4))
    }
}

fn q(p: i64, d: i64) -> Rat {
    rat::frac(p, d)
}

fn cases() -> Vec<Case> {
    vec![
        Case {
            name: "A2 Borel theta",
            series: Series::A,
            rank: 2,
            sigma: vec![],
            lambda: vec![q(1, 3), q(2, 7)],
            alpha: "highest",
        },
        Case {
            name: "A2 Borel alpha1",
            series: Series::A,
            rank: 2,
            sigma: vec![],
            lambda: vec![q(1, 3), q(2, 7)],
            alpha: "simple:1",
        },
        Case {
            name: "A2 maximal parabolic",
            series: Series::A,
            rank: 2,
            sigma: vec![1],
            lambda: vec![q(1, 1), q(2, 7)],
            alpha: "highest",
        },
        Case {
            name: "A3 Borel theta",
            series: Series::A,
            rank: 3,
            sigma: vec![],
            lambda: vec![q(1, 3), q(2, 7), q(1, 5)],
            alpha: "highest",
        },
        Case {
            name: "C2 Borel theta",
            series: Series::C,
            rank: 2,
            sigma: vec![],
            lambda: vec![q(1, 3), q(2, 7)],
            alpha: "highest",
        },
    ]
}

type Outcome = Result<(bool, String)>;

fn interior(s: &Setup, cutoff: usize) -> usize {
    cutoff.saturating_sub(s.reach())
}

fn jacobi() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (s, r) in [
        (Series::A, 1),
        (Series::A, 2),
        (Series::A, 3),
        (Series::B, 2),
        (Series::C, 2),
        (Series::G, 2),
    ] {
        let cb = ChevalleyBasis::from_type(s, r)?;
        let res = cb.jacobi_residual();
        ok &= res == 0;
        parts.push(format!("{s}{r}:{res}"));
    }
    Ok((ok, parts.join(" ")))
}

fn sl2_closed_form() -> Outcome {
    let mut bad = 0;
    let mut total = 0;
    for c in [q(0, 1), q(1, 3), q(-5, 2), q(4, 1)] {
        let case = Case {
            name: "A1",
            series: Series::A,
            rank: 1,
            sigma: vec![],
            // λ(h) = c is the single fundamental coordinate
            lambda: vec![c.clone()],
            alpha: "highest",
        };
        let w = case.setup()?.twisted()?;
        let cb = &w.cb;
        for n in 1..=10i64 {
            total += 1;
            // u_{n-1} is f^{-n} ⊗ v
            let v = ModuleVector::basis(w.mode(), vec![n - 1], 0);
            let up = ModuleVector::basis(w.mode(), vec![n], 0);
            let h_ok = w.act(cb.h(0), &v) == v.scale(&(&c + rat::int(2 * n)));
            let e_ok = w.act(cb.e(0), &v) == up.scale(&(-rat::int(n) * (&c + rat::int(n + 1))));
            if !(h_ok && e_ok) {
                bad += 1;
            }
        }
    }
    Ok((bad == 0, format!("{total} (c, n) pairs, {bad} defects")))
}

fn representation() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for case in cases() {
        let s = case.setup()?;
        let w = s.twisted()?;
        let keys = sample_keys(&w, interior(&s, 4), 200, 11);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let dim = s.cb.dim();
        let triples: Vec<_> = (0..500)
            .map(|i| (rng.gen_range(0..dim), rng.gen_range(0..dim), keys[i % keys.len()].clone()))
            .collect();
        let bad = commutator_defects(&w, &triples);
        ok &= bad == 0;
        parts.push(format!("{}: {bad}/500", case.name));
    }
    Ok((ok, parts.join("; ")))
}

fn multiplicity(w: &TwistedModule, mu: &Weight, cutoff: usize) -> usize {
    w.weight_space_basis(mu, cutoff).len()
}

fn weight_dichotomy() -> Outcome {
    let base = cases();
    let w = base[1].setup()?.twisted()?;
    let tracked = tracked_weights(&w, 10);
    let six: Vec<usize> = tracked.iter().map(|m| multiplicity(&w, m, 6)).collect();
    let eight: Vec<usize> = tracked.iter().map(|m| multiplicity(&w, m, 8)).collect();
    let finite = six == eight;

    let zero = Case {
        lambda: vec![],
        ..cases().remove(0)
    };
    let w = zero.setup()?.twisted()?;
    let theta = Weight(vec![rat::int(1), rat::int(1)]);
    let counts: Vec<usize> = [4, 6, 8].iter().map(|&n| multiplicity(&w, &theta, n)).collect();
    let growing = counts == vec![5, 7, 9];
    Ok((
        finite && growing,
        format!("alpha1 {six:?} vs {eight:?}; theta weight counts {counts:?}"),
    ))
}

fn gamma_agreement() -> Outcome {
    let s = cases()[0].setup()?;
    let w = s.twisted()?;
    let uea = Uea::new(s.cb.clone());
    let depth = 3;
    let mut stable = 0;
    let tracked = tracked_weights(&w, 10);
    for mu in &tracked {
        // gamma_decomposition errors when the filtration count and the eigenspace rank differ
        let a = gamma_decomposition(&w, &uea, mu, 5, depth)?;
        let b = gamma_decomposition(&w, &uea, mu, 7, depth)?;
        let key = |r: &twistgt_core::modules::GTReport| {
            r.characters
                .iter()
                .map(|c| (rat::fmt(&c.casimir_value), c.multiplicity, c.eigenspace_rank))
                .collect::<Vec<_>>()
        };
        if key(&a) == key(&b) && a.filtration == b.filtration {
            stable += 1;
        }
    }
    Ok((
        stable == tracked.len() && tracked.len() == 10,
        format!("{stable} of {} weights agree and are stable (depth {depth})", tracked.len()),
    ))
}

fn jordan_bound() -> Outcome {
    let mut worst = 0;
    let mut parts = Vec::new();
    let mut all = cases();
    all.push(Case {
        name: "A2 Borel theta, lambda (0,2)",
        lambda: vec![q(0, 1), q(2, 1)],
        ..cases().remove(0)
    });
    let mut size_two = false;
    for case in &all {
        let s = case.setup()?;
        let w = s.twisted()?;
        let uea = Uea::new(s.cb.clone());
        let (cutoff, count) = if w.nu() <= 3 { (6, 6) } else { (4, 3) };
        let mut m = 0;
        for mu in tracked_weights(&w, count) {
            let r = gamma_decomposition(&w, &uea, &mu, cutoff, cutoff - 2)?;
            m = m.max(r.max_jordan());
        }
        worst = worst.max(m);
        size_two |= m == 2;
        parts.push(format!("{}: {m}", case.name));
    }
    Ok((worst <= 2 && size_two, parts.join("; ")))
}

fn central_character() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for case in cases() {
        let s = case.setup()?;
        let w = s.twisted()?;
        let uea = Uea::new(s.cb.clone());
        // scalar read off the highest weight vector of M_p(λ)
        let m = s.verma()?;
        let top = m.highest();
        let img = m.act_uea(&uea, &uea.casimir_g(), &top);
        let oracle = img.terms.get(top.terms.keys().next().unwrap()).cloned().unwrap_or_default();
        // the action of an element of U(g) needs no truncation, so widen the box to 100 tensors
        let mut top = 1;
        let mut keys = sample_keys(&w, top, 100, 3);
        while keys.len() < 100 {
            top += 1;
            keys = sample_keys(&w, top, 100, 3);
        }
        let (chi, bad) = check_central_character(&w, &uea, &keys);
        let good = chi == oracle && bad.is_empty() && img.terms.len() == 1 && keys.len() >= 100;
        ok &= good;
        parts.push(format!("{}: {} on {} samples, {} off", case.name, rat::fmt(&chi), keys.len(), bad.len()));
    }
    Ok((ok, parts.join("; ")))
}

fn cyclicity() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for case in cases() {
        let s = case.setup()?;
        let w = s.twisted()?;
        let start: Vec<ModuleVector> = (0..w.fl.dim()).map(|j| w.generator(j)).collect();
        let r = check_cyclicity(&w, &start, 4, s.reach());
        ok &= r.complete && r.interior_total > 0;
        parts.push(format!("{}: {}/{}", case.name, r.interior_covered, r.interior_total));
    }
    Ok((ok, parts.join("; ")))
}

fn local_finiteness() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for case in cases() {
        let s = case.setup()?;
        let w = s.twisted()?;
        let ids = t_alpha_minus_ids(&w);
        // smallest cutoff from 4 whose interior holds 50 tensors
        let mut cutoff = 4;
        let mut samples = sample_keys(&w, interior(&s, cutoff), 50, 9);
        while samples.len() < 50 {
            cutoff += 1;
            samples = sample_keys(&w, interior(&s, cutoff), 50, 9);
        }
        let res = local_nilpotence(&w, &ids, &samples, cutoff + 2);
        let bad = res.iter().filter(|r| r.2.is_none()).count();
        let most = res.iter().filter_map(|r| r.2).max().unwrap_or(0);
        ok &= bad == 0 && !ids.is_empty();
        parts.push(format!(
            "{} (cutoff {cutoff}): {} vectors x {} samples, max {most} steps, {bad} survive",
            case.name,
            ids.len(),
            samples.len()
        ));
    }
    Ok((ok, parts.join("; ")))
}

/// Random p-dominant λ: nonnegative integers on the Levi roots, rationals elsewhere.
fn random_lambda(rank: usize, sigma: &[usize], rng: &mut ChaCha8Rng) -> Vec<Rat> {
    (1..=rank)
        .map(|i| {
            if sigma.contains(&i) {
                rat::int(rng.gen_range(0..=2))
            } else {
                q(rng.gen_range(-7..=7), rng.gen_range(2..=9))
            }
        })
        .collect()
}

fn free_field_homomorphism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut ok = true;
    let mut runs = 0;
    let mut defects = 0;
    for (series, rank, parabolics) in [
        (Series::A, 1, vec![vec![]]),
        (Series::A, 2, vec![vec![], vec![1]]),
        (Series::A, 3, vec![vec![], vec![1, 2]]),
        (Series::C, 2, vec![vec![], vec![1]]),
    ] {
        for sigma in parabolics {
            for _ in 0..3 {
                let cfg = JobConfig {
                    series,
                    rank,
                    lambda: random_lambda(rank, &sigma, &mut rng),
                    sigma: sigma.clone(),
                    ..JobConfig::default()
                };
                let s = Setup::new(&cfg)?;
                let ff = FreeField::for_lambda(s.cb.clone(), &s.p, &s.lambda)?;
                let d = ff.homomorphism_defects().len();
                let p_match = s.p.delta_u_plus.iter().all(|&a| {
                    let k = ff.var(a).unwrap();
                    ff.pi(s.cb.f(a)).scalar_part().as_ref() == Some(ff.p_op(k))
                });
                ok &= d == 0 && p_match;
                defects += d;
                runs += 1;
            }
        }
    }
    Ok((ok, format!("{runs} realizations, {defects} bracket defects")))
}

fn phi_inverse() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for case in cases() {
        let s = case.setup()?;
        let ff = FreeField::for_lambda(s.cb.clone(), &s.p, &s.lambda)?;
        let k = ff.var(s.alpha).unwrap();
        let vecs = random_localized(ff.nvars(), k, ff.sigma.dim(), 100, &mut rng);
        let bad = ff.phi_inverse_defects(k, &vecs, DEFAULT_GUARD)?;
        ok &= bad == 0;
        parts.push(format!("{}: {bad}/100", case.name));
    }
    Ok((ok, parts.join("; ")))
}

fn cross_realization() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let lambdas = [vec![q(2, 3)], vec![q(1, 3), q(2, 7)]];
    for (rank, alphas) in [(1usize, vec!["simple:1"]), (2, vec!["simple:1", "simple:2", "highest"])] {
        for alpha in alphas {
            let cfg = JobConfig {
                rank,
                lambda: lambdas[rank - 1].clone(),
                alpha: alpha.into(),
                ..JobConfig::default()
            };
            let w = Setup::new(&cfg)?.twisted()?;
            let r = realize_and_compare(&w, 4, DEFAULT_GUARD)?;
            ok &= r.agree && r.twisted.checks > 0;
            parts.push(format!(
                "A{rank} {alpha}: {} checks, {} mismatches",
                r.twisted.checks, r.twisted.mismatches
            ));
        }
    }
    Ok((ok, parts.join("; ")))
}

fn determinism() -> Outcome {
    let cfg = JobConfig {
        command: Command::Verify,
        seed: 42,
        ..cases()[0].config(4)
    };
    let a = jobs::run(&cfg)?.to_json()?;
    let b = jobs::run(&cfg)?.to_json()?;
    Ok((a == b, format!("{} bytes", a.len())))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("structure constants", jacobi),
        ("sl2 closed form", sl2_closed_form),
        ("representation property", representation),
        ("weight dichotomy", weight_dichotomy),
        ("Gamma multiplicities", gamma_agreement),
        ("Jordan bound", jordan_bound),
        ("central character", central_character),
        ("cyclicity", cyclicity),
        ("local finiteness", local_finiteness),
        ("free-field homomorphism", free_field_homomorphism),
        ("phi inverse", phi_inverse),
        ("cross-realization", cross_realization),
        ("determinism", determinism),
    ];
    let mut failed = BTreeSet::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let status = if ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {name} ({:.1}s): {detail}",
            i + 1,
            t.elapsed().as_secs_f64()
        );
        if !ok {
            failed.insert(i + 1);
        }
    }
    if !failed.is_empty() {
        println!("failed: {failed:?}");
        std::process::exit(1);
    }
}
