//! One function per subcommand. Each returns whether every check passed;
//! errors carry their own exit codes.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use hlslab_core::hls::{
    check_certificate, certificate_from_folner, folner_from_certificate, infinity_norm, quasi_regular_norm,
    tau_spectral_gap, LevelNorm, NormProfile, ProfileOptions, TauReport,
};
use hlslab_core::hls::fiber_operator;
use hlslab_core::quotients::{check_nesting, separation_radius};
use hlslab_core::{
    AmenabilityCertificate, ApproximatedGroup, ExactComplex, Family, FiberLevel, FiberedFunction, FiniteQuotient,
    GroupAlgebraElement, GroupoidElement, HlsGroupoid, NormOptions, Rational, Word,
};
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use crate::cache::QuotientCache;
use crate::cli::{AmenArgs, CommonArgs, ConvolveArgs, GapArgs, QuotientsArgs, TauArgs};
use crate::config::{Defaults, ExperimentConfig, FileConfig, Overrides};
use crate::error::{AppError, Result};
use crate::report::{fixed, provenance, wall_ms, Report};
use crate::snapshot::{snapshot_path, Snapshot, SnapshotStatus};
use crate::source::{load_element, load_fibered, require_real};

/// Monotonicity slack for per-level spectral values.
const MONOTONE_TOLERANCE: f64 = 1e-8;

fn resolve(common: &CommonArgs, mut flags: Overrides, defaults: Defaults) -> Result<ExperimentConfig> {
    let base = common.overrides();
    flags.family = base.family;
    flags.n_max = base.n_max;
    flags.jobs = base.jobs;
    flags.cache_dir = base.cache_dir;
    flags.out = base.out;
    flags.fiber_cap = base.fiber_cap;
    flags.ball_cap = base.ball_cap;
    flags.hom_cap = base.hom_cap;
    let file = common.config.as_deref().map(FileConfig::load).transpose()?;
    ExperimentConfig::resolve(flags, file, defaults)
}

/// Runs `f` on a pool with `jobs` threads (0: rayon's default).
fn with_pool<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| AppError::Input(format!("cannot start {jobs} worker threads: {e}")))?;
    Ok(pool.install(f))
}

fn norm_options(cfg: &ExperimentConfig) -> NormOptions {
    NormOptions {
        radius: cfg.radius,
        ball_cap: cfg.caps.ball_size,
        ..NormOptions::default()
    }
}

fn timed<R>(f: impl FnOnce() -> R) -> (R, Duration) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed())
}

/// Levels `1..=depth` from the cache, with the time each took.
fn build_levels(cache: &QuotientCache, cfg: &ExperimentConfig, family: Family) -> Result<(ApproximatedGroup, Vec<Duration>)> {
    let timed_levels = (1..=cfg.n_max)
        .into_par_iter()
        .map(|n| {
            let (q, t) = timed(|| cache.get_or_build(family, n, &cfg.caps));
            q.map(|q| (q, t))
        })
        .collect::<Result<Vec<_>>>()?;
    let (levels, times): (Vec<FiniteQuotient>, Vec<Duration>) = timed_levels.into_iter().unzip();
    Ok((ApproximatedGroup::from_levels(family, levels)?, times))
}

fn groupoid(cfg: &ExperimentConfig, family: Family) -> Result<HlsGroupoid> {
    let cache = QuotientCache::new(&cfg.cache_dir);
    Ok(HlsGroupoid::new(build_levels(&cache, cfg, family)?.0))
}

pub fn quotients(args: &QuotientsArgs, timings: bool) -> Result<bool> {
    let flags = Overrides {
        radius: args.radius,
        ..Overrides::default()
    };
    let cfg = resolve(&args.common, flags, Defaults {
        family: Some(Family::Fd),
        n_max: 4,
        radius: 4,
    })?;
    let family = cfg.family_or_err()?;
    with_pool(cfg.jobs, || {
        let cache = QuotientCache::new(&cfg.cache_dir);
        let (group, times) = build_levels(&cache, &cfg, family)?;
        let nesting = check_nesting(&group, cfg.n_max)?;
        let radii = (1..=cfg.n_max)
            .into_par_iter()
            .map(|n| separation_radius(&group, cfg.radius, n))
            .collect::<hlslab_core::Result<Vec<_>>>()?;

        let mut report = Report::new(&["level", "order", "degree", "nesting", "separation_radius", "wall_ms"]);
        cfg.echo(&mut report, "quotients");
        for (i, q) in group.levels().iter().enumerate() {
            let nest = match nesting.steps.get(i) {
                Some(s) if s.divides && s.refines => "ok",
                Some(_) => "FAIL",
                None => "NA",
            };
            report.row(vec![
                (i + 1).to_string(),
                q.order().to_string(),
                q.degree().to_string(),
                nest.into(),
                radii[i].to_string(),
                wall_ms(times[i], timings),
            ]);
        }
        report.summary("nesting", if nesting.passed() { "ok" } else { "FAIL" });
        if let Some(n) = nesting.first_failure {
            report.summary("first-failing-level", n);
            eprintln!("nesting fails between level {n} and level {}", n + 1);
        }
        report.emit(cfg.out.as_deref())?;
        Ok(nesting.passed())
    })?
}

pub fn gap(args: &GapArgs, timings: bool) -> Result<bool> {
    let flags = Overrides {
        radius: args.radius,
        margin: args.margin,
        element: args.element.clone(),
        ..Overrides::default()
    };
    let cfg = resolve(&args.common, flags, Defaults {
        family: Some(Family::Fd),
        n_max: 4,
        radius: 12,
    })?;
    let family = cfg.family_or_err()?;
    let x = load_element(cfg.element.as_deref(), family.rank(), cfg.caps.ball_size)?;
    if !x.is_self_adjoint() {
        return Err(AppError::Input("the element must be self-adjoint".into()));
    }
    let opts = ProfileOptions {
        norm: norm_options(&cfg),
        margin: cfg.margin,
        ..ProfileOptions::default()
    };
    with_pool(cfg.jobs, || {
        let g = groupoid(&cfg, family)?;
        let (levels, infinity) = rayon::join(
            || {
                (1..=cfg.n_max)
                    .into_par_iter()
                    .map(|n| {
                        let (b, t) = timed(|| quasi_regular_norm(&x, FiberLevel::Finite(n), &g, &opts.norm));
                        Ok((LevelNorm { level: n, order: g.fiber(n)?.order(), bracket: b? }, t))
                    })
                    .collect::<Result<Vec<_>>>()
            },
            || timed(|| infinity_norm(&x, &opts.norm)),
        );
        let (levels, times): (Vec<LevelNorm>, Vec<Duration>) = levels?.into_iter().unzip();
        let (infinity, inf_time) = infinity;
        let profile = NormProfile::assemble(&x, levels, infinity?, &opts);

        let mut report = Report::new(&["level", "order", "lower", "upper", "provenance", "wall_ms"]);
        cfg.echo(&mut report, "gap");
        for (l, t) in profile.levels.iter().zip(&times) {
            report.row(vec![
                l.level.to_string(),
                l.order.to_string(),
                fixed(l.bracket.lower),
                fixed(l.bracket.upper),
                provenance(&l.bracket),
                wall_ms(*t, timings),
            ]);
        }
        report.row(vec![
            "inf".into(),
            "inf".into(),
            fixed(profile.infinity.lower),
            fixed(profile.infinity.upper),
            provenance(&profile.infinity),
            wall_ms(inf_time, timings),
        ]);
        report.summary("finite-sup", format!("[{}, {}]", fixed(profile.finite_sup.lower), fixed(profile.finite_sup.upper)));
        report.summary("infinity", format!("[{}, {}]", fixed(profile.infinity.lower), fixed(profile.infinity.upper)));
        report.summary("trivial-representation", fixed(profile.trivial));
        report.summary("l1", fixed(profile.l1));
        report.summary("margin", profile.margin);
        report.summary("monotone", if profile.monotone() { "ok" } else { "FAIL" });
        for (n, m) in &profile.monotonicity_violations {
            report.summary("violation", format!("level {n} below level {m}"));
        }
        report.summary("gap", if profile.gap { "GAP" } else { "NO GAP" });
        report.emit(cfg.out.as_deref())?;
        Ok(profile.monotone())
    })?
}

fn parse_k(arg: &str, g: &HlsGroupoid) -> Result<GroupoidElement> {
    match arg.split_once(':') {
        None => Ok(GroupoidElement::Infinity(Word::parse(g.rank(), arg)?)),
        Some((n, w)) => {
            let level: usize = n
                .parse()
                .map_err(|_| AppError::Input(format!("K element {arg:?}: level must be an integer")))?;
            let q = g.fiber(level)?;
            Ok(GroupoidElement::Finite {
                level,
                element: q.evaluate(&Word::parse(g.rank(), w)?),
            })
        }
    }
}

fn describe(e: &GroupoidElement, g: &HlsGroupoid) -> Result<String> {
    Ok(match e {
        GroupoidElement::Infinity(w) => format!("inf:{}", w.to_text()?),
        GroupoidElement::Finite { level, element } => {
            format!("{level}:{}", g.fiber(*level)?.element_word(*element).to_text()?)
        }
    })
}

fn real_fibered(f: &FiberedFunction<ExactComplex>) -> Result<FiberedFunction<Rational>> {
    let tail = require_real(f.tail(), "eta")?;
    let mut overrides = BTreeMap::new();
    for (n, v) in f.overrides() {
        if v.iter().any(|c| !c.im.is_zero()) {
            return Err(AppError::Input("eta must have real values".into()));
        }
        overrides.insert(*n, v.iter().map(|c| c.re.clone()).collect());
    }
    Ok(FiberedFunction::new(tail, f.threshold(), overrides)?)
}

fn rational_text(r: &Rational) -> String {
    if r.denom() == &1.into() {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}

pub fn amen(args: &AmenArgs, _timings: bool) -> Result<bool> {
    let flags = Overrides {
        element: args.element.clone(),
        epsilon: args.epsilon,
        ..Overrides::default()
    };
    let cfg = resolve(&args.common, flags, Defaults {
        family: Some(Family::Fd),
        n_max: 4,
        radius: 6,
    })?;
    let family = cfg.family_or_err()?;
    with_pool(cfg.jobs, || {
        let g = groupoid(&cfg, family)?;
        let k = if args.k.is_empty() {
            (0..g.rank())
                .map(|i| Ok(GroupoidElement::Infinity(Word::generator(g.rank(), i)?)))
                .collect::<Result<Vec<_>>>()?
        } else {
            args.k.iter().map(|s| parse_k(s, &g)).collect::<Result<Vec<_>>>()?
        };
        let (cert, xi) = match &args.eta {
            Some(src) => {
                let eta = real_fibered(&load_fibered(src, g.rank())?)?;
                (AmenabilityCertificate::new(eta, k, cfg.epsilon)?, None)
            }
            None => {
                let xi = require_real(&load_element(cfg.element.as_deref(), g.rank(), cfg.caps.ball_size)?, "xi")?;
                (certificate_from_folner(&xi, k, cfg.epsilon)?, Some(xi))
            }
        };
        let checked = check_certificate(&cert, &g)?;
        let recovered = folner_from_certificate(&cert)?;

        let mut report = Report::new(&["element", "normalization", "translation", "normalization_f64", "translation_f64"]);
        cfg.echo(&mut report, "amen");
        if args.eta.is_some() {
            report.header("eta", "given");
        }
        for e in &checked.elements {
            report.row(vec![
                describe(&e.element, &g)?,
                rational_text(&e.normalization),
                rational_text(&e.translation),
                fixed(num_traits::ToPrimitive::to_f64(&e.normalization).unwrap_or(f64::NAN)),
                fixed(num_traits::ToPrimitive::to_f64(&e.translation).unwrap_or(f64::NAN)),
            ]);
        }
        report.summary("worst-normalization", rational_text(&checked.worst_normalization));
        report.summary("worst-translation", rational_text(&checked.worst_translation));
        report.summary("epsilon", checked.epsilon);
        report.summary("values-in-unit-interval", if checked.range_ok { "ok" } else { "FAIL" });
        report.summary("infinity-mass", rational_text(&cert.eta().tail().coefficient_sum()));
        if let Some(xi) = &xi {
            let normalized = xi.scale(&(Rational::from_integer(1.into()) / xi.coefficient_sum()));
            report.summary("folner-round-trip", if recovered == normalized { "exact" } else { "differs" });
        }
        report.summary("result", if checked.passed { "PASS" } else { "FAIL" });
        report.emit(cfg.out.as_deref())?;
        Ok(checked.passed)
    })?
}

fn tau_rows(group: &ApproximatedGroup, opts: &NormOptions) -> Result<Vec<(TauReport, Duration)>> {
    (1..=group.depth())
        .into_par_iter()
        .map(|n| {
            let (r, t) = timed(|| tau_spectral_gap(group, n, opts));
            Ok((r?, t))
        })
        .collect()
}

/// Pairs `(n, m)`, `n > m`, where level `n` sits below level `m`.
fn tau_violations(rows: &[(TauReport, Duration)]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, (hi, _)) in rows.iter().enumerate() {
        for (lo, _) in &rows[..i] {
            if let (Some((_, hi_up)), Some((lo_low, _))) = (hi.second, lo.second) {
                if hi_up + MONOTONE_TOLERANCE < lo_low {
                    out.push((hi.level, lo.level));
                }
            }
        }
    }
    out
}

pub fn tau(args: &TauArgs, timings: bool) -> Result<bool> {
    let cfg = resolve(&args.common, Overrides::default(), Defaults {
        family: None,
        n_max: 4,
        radius: 6,
    })?;
    let families = match cfg.family {
        Some(f) if f.rank() != 2 => {
            return Err(AppError::Input(format!("tau needs a rank-2 family, {f} has rank {}", f.rank())));
        }
        Some(f) => vec![f],
        None => vec![Family::Fd, Family::Congruence],
    };
    let opts = norm_options(&cfg);
    with_pool(cfg.jobs, || {
        let cache = QuotientCache::new(&cfg.cache_dir);
        let mut report = Report::new(&["family", "level", "order", "lower", "upper", "provenance", "snapshot", "wall_ms"]);
        cfg.echo(&mut report, "tau");
        let mut passed = true;
        for family in families {
            let (group, _) = build_levels(&cache, &cfg, family)?;
            let rows = tau_rows(&group, &opts)?;
            let snap = (family == Family::Congruence).then(|| {
                let path = snapshot_path(&cfg.cache_dir, "tau-congruence");
                Snapshot::load(&path, family.as_str()).map(|s| (path, s))
            });
            let mut snap = snap.transpose()?;
            let mut dirty = false;
            for (r, t) in &rows {
                let (lower, upper, prov) = match r.second {
                    Some((lo, hi)) => (fixed(lo), fixed(hi), "fiber-representation/fiber-representation"),
                    None => ("NA".into(), "NA".into(), "NA"),
                };
                let status = match (&mut snap, r.midpoint()) {
                    (Some((_, s)), Some(v)) => {
                        let st = s.check(r.level, v, args.update_snapshots);
                        dirty |= st == SnapshotStatus::Recorded;
                        if !st.ok() {
                            passed = false;
                            if let SnapshotStatus::Mismatched { stored } = st {
                                eprintln!("{family} level {}: {v} differs from snapshot {stored}", r.level);
                            }
                        }
                        st.label()
                    }
                    _ => "NA",
                };
                report.row(vec![
                    family.to_string(),
                    r.level.to_string(),
                    r.order.to_string(),
                    lower,
                    upper,
                    prov.into(),
                    status.into(),
                    wall_ms(*t, timings),
                ]);
            }
            if let (Some((path, s)), true) = (&snap, dirty) {
                s.store(path)?;
            }
            let violations = tau_violations(&rows);
            report.summary(&format!("{family}-monotone"), if violations.is_empty() { "ok" } else { "FAIL" });
            passed &= violations.is_empty();
        }
        report.summary("result", if passed { "PASS" } else { "FAIL" });
        report.emit(cfg.out.as_deref())?;
        Ok(passed)
    })?
}

struct Sampler(ChaCha8Rng);

impl Sampler {
    fn below(&mut self, m: u64) -> u64 {
        self.0.next_u64() % m
    }

    fn rational(&mut self) -> Rational {
        let num = self.below(7) as i64 - 3;
        let den = self.below(3) as i64 + 1;
        Rational::new(num.into(), den.into())
    }

    fn complex(&mut self) -> ExactComplex {
        let im = if self.below(3) == 0 { self.rational() } else { Rational::zero() };
        ExactComplex::new(self.rational(), im)
    }

    fn word(&mut self, rank: usize, max_len: usize) -> Word {
        let len = self.below(max_len as u64 + 1) as usize;
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let g = self.below(rank as u64) as i32 + 1;
                if self.below(2) == 0 { g } else { -g }
            })
            .collect();
        Word::from_signed(rank, &letters).expect("indices within rank")
    }

    fn fibered(&mut self, g: &HlsGroupoid, max_order: usize) -> Result<FiberedFunction<ExactComplex>> {
        let rank = g.rank();
        let terms: Vec<(Word, ExactComplex)> = (0..self.below(4) + 1)
            .map(|_| (self.word(rank, 2), self.complex()))
            .collect();
        let tail = GroupAlgebraElement::from_terms(rank, terms)?;
        let small = (1..=g.depth())
            .take_while(|&n| g.fiber(n).is_ok_and(|q| q.order() <= max_order))
            .count();
        let threshold = self.below(small as u64 + 1) as usize + 1;
        let mut overrides = BTreeMap::new();
        for n in 1..threshold {
            if self.below(2) == 0 {
                let order = g.fiber(n)?.order();
                let dense = (0..order)
                    .map(|_| if self.below(3) == 0 { self.complex() } else { ExactComplex::zero() })
                    .collect();
                overrides.insert(n, dense);
            }
        }
        Ok(FiberedFunction::new(tail, threshold, overrides)?)
    }
}

fn same_operator(
    fg: &[(usize, ExactComplex)],
    f: &[(usize, ExactComplex)],
    h: &[(usize, ExactComplex)],
    q: &FiniteQuotient,
) -> bool {
    let lhs = fiber_operator(fg, q);
    let rhs = fiber_operator(f, q).matmul(&fiber_operator(h, q));
    (0..q.order()).all(|r| (0..q.order()).all(|c| lhs.get(r, c) == rhs.get(r, c)))
}

pub fn convolve_check(args: &ConvolveArgs, _timings: bool) -> Result<bool> {
    let cfg = resolve(&args.common, Overrides::default(), Defaults {
        family: Some(Family::Fd),
        n_max: 4,
        radius: 6,
    })?;
    let family = cfg.family_or_err()?;
    with_pool(cfg.jobs, || {
        let g = groupoid(&cfg, family)?;
        let mut s = Sampler(ChaCha8Rng::seed_from_u64(args.seed));
        let instances = (0..args.cases)
            .map(|_| Ok([s.fibered(&g, args.max_order)?, s.fibered(&g, args.max_order)?, s.fibered(&g, args.max_order)?]))
            .collect::<Result<Vec<_>>>()?;
        let small: Vec<usize> = (1..=g.depth()).filter(|&n| g.fiber(n).is_ok_and(|q| q.order() <= args.max_order)).collect();

        let outcomes = instances
            .par_iter()
            .map(|[f, h, k]| -> Result<[bool; 4]> {
                let fh = f.convolve(h, &g)?;
                let assoc = fh.convolve(k, &g)? == f.convolve(&h.convolve(k, &g)?, &g)?;
                let anti = fh.adjoint(&g)? == h.adjoint(&g)?.convolve(&f.adjoint(&g)?, &g)?;
                let invol = f.adjoint(&g)?.adjoint(&g)? == *f;
                let mut rep = true;
                for &n in &small {
                    let q = g.fiber(n)?;
                    rep &= same_operator(&fh.fiber_values(n, &g)?, &f.fiber_values(n, &g)?, &h.fiber_values(n, &g)?, q);
                }
                Ok([assoc, anti, invol, rep])
            })
            .collect::<Result<Vec<_>>>()?;

        let names = ["associativity", "adjoint-of-product", "involution", "representation"];
        let mut report = Report::new(&["identity", "cases", "failures"]);
        cfg.echo(&mut report, "convolve-check");
        report.header("cases", args.cases);
        report.header("seed", args.seed);
        report.header("max-order", args.max_order);
        let mut passed = true;
        for (i, name) in names.iter().enumerate() {
            let failures = outcomes.iter().filter(|o| !o[i]).count();
            passed &= failures == 0;
            report.row(vec![name.to_string(), args.cases.to_string(), failures.to_string()]);
        }
        report.summary(
            "representation-levels",
            small.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
        );
        report.summary("result", if passed { "PASS" } else { "FAIL" });
        report.emit(cfg.out.as_deref())?;
        Ok(passed)
    })?
}
