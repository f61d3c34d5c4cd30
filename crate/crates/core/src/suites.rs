//! Verification suites run by `curvelab verify`.
//!
//! Each suite checks one family of claims on a census and reports counts,
//! a verdict and up to [`MAX_COUNTEREXAMPLES`] counterexamples. Bound-limited
//! existence searches that find nothing are counted as inconclusive and
//! never fail a suite.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{curve_type, CurveType};
use crate::cover::DoubleCover;
use crate::curves::{Census, Engine, NormalCurve};
use crate::duality::DualityContext;
use crate::error::{Error, Result};
use crate::maps::{deepen_witnesses, find_squares, verify_adjacency_lemma, SubcomplexSnapshot};
use crate::pants::{maximal_disjoint_sets, verify_linear_or_cyclic};
use crate::search::{Escalation, SearchOutcome, Universe};
use crate::surface::{IdealTriangulation, SurfaceKind};

pub const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Adjacency,
    Squares,
    LinearOrCyclic,
    Duality,
    N3Separation,
    Cover,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Adjacency, Suite::Squares, Suite::LinearOrCyclic, Suite::Duality, Suite::N3Separation, Suite::Cover];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Adjacency => "adjacency",
            Suite::Squares => "squares",
            Suite::LinearOrCyclic => "linear-or-cyclic",
            Suite::Duality => "duality",
            Suite::N3Separation => "n3-separation",
            Suite::Cover => "cover",
        }
    }

    /// Surfaces used when none is given.
    pub fn default_surfaces(self) -> Vec<SurfaceKind> {
        let k = |g, n| SurfaceKind::new(g, n).expect("valid kind");
        match self {
            Suite::Squares => vec![k(0, 5), k(1, 2)],
            Suite::Adjacency | Suite::Duality | Suite::N3Separation => vec![k(1, 3)],
            Suite::Cover => vec![k(0, 5)],
            Suite::LinearOrCyclic => Vec::new(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let known: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            Error::Usage(format!("unknown suite {s:?}; known: {}", known.join(", ")))
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Overrides the suite's default surfaces.
    pub surface: Option<SurfaceKind>,
    pub bound: u32,
    pub escalation: Escalation,
    /// Puncture counts for the linear-or-cyclic suite.
    pub n_range: RangeInclusive<u32>,
    pub engine: Engine,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { surface: None, bound: 12, escalation: Escalation::default(), n_range: 4..=7, engine: Engine::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub status: Status,
    pub summary: String,
    pub inconclusive: usize,
    pub counterexamples: Vec<Value>,
    pub details: Value,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let surfaces = match cfg.surface {
        Some(k) => vec![k],
        None => suite.default_surfaces(),
    };
    match suite {
        Suite::Squares => squares(&surfaces, cfg),
        Suite::Adjacency => adjacency(single(suite, &surfaces, |k| k.genus == 1 && k.punctures >= 2)?, cfg),
        Suite::LinearOrCyclic => linear_or_cyclic(cfg),
        Suite::Duality => duality(single(suite, &surfaces, |k| k.genus == 1 && k.punctures >= 3)?, cfg),
        Suite::N3Separation => n3_separation(single(suite, &surfaces, |k| k.genus == 1 && k.punctures == 3)?, cfg),
        Suite::Cover => cover(single(suite, &surfaces, |k| k.genus == 0 && k.punctures == 5)?, cfg),
    }
}

fn single(suite: Suite, surfaces: &[SurfaceKind], ok: impl Fn(SurfaceKind) -> bool) -> Result<SurfaceKind> {
    match surfaces {
        [k] if ok(*k) => Ok(*k),
        _ => Err(Error::Usage(format!("suite {suite} does not run on {surfaces:?}"))),
    }
}

fn standard(kind: SurfaceKind) -> Result<Arc<IdealTriangulation>> {
    Ok(Arc::new(IdealTriangulation::standard(kind)?))
}

fn weights(c: &NormalCurve) -> Value {
    json!(c.weights())
}

/// Histogram key for a curve type.
pub fn type_label(t: &CurveType) -> String {
    match t {
        CurveType::Separating { k: None, .. } => {
            let (a, b) = t.puncture_split().expect("separating");
            format!("separating {a}|{b}")
        }
        _ => t.to_string(),
    }
}

fn finish(suite: Suite, fail: bool, summary: String, inconclusive: usize, counterexamples: Vec<Value>, details: Value) -> SuiteReport {
    SuiteReport {
        suite: suite.name().into(),
        status: if fail { Status::Fail } else { Status::Pass },
        summary,
        inconclusive,
        counterexamples,
        details,
    }
}

fn squares(surfaces: &[SurfaceKind], cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rows = Vec::new();
    let mut counterexamples = Vec::new();
    let mut fail = false;
    let mut parts = Vec::new();
    for &kind in surfaces {
        let census = Census::enumerate(standard(kind)?, cfg.bound);
        let snap = SubcomplexSnapshot::build(&census, cfg.engine);
        let sq = find_squares(&snap);
        // squares are forbidden exactly on the two complexity-two surfaces
        let forbidden = matches!((kind.genus, kind.punctures), (0, 5) | (1, 2));
        if forbidden && !sq.is_empty() {
            fail = true;
            for t in sq.iter().take(MAX_COUNTEREXAMPLES) {
                counterexamples.push(json!({
                    "surface": kind.to_string(),
                    "square": t.iter().map(|&i| weights(&snap.curves()[i])).collect::<Vec<_>>(),
                }));
            }
        }
        parts.push(format!("{kind}: {} squares", sq.len()));
        rows.push(json!({
            "surface": kind.to_string(),
            "bound": cfg.bound,
            "curves": snap.len(),
            "disjoint_pairs": snap.edge_count(),
            "squares": sq.len(),
        }));
    }
    Ok(finish(Suite::Squares, fail, parts.join("; "), 0, counterexamples, json!(rows)))
}

fn adjacency(kind: SurfaceKind, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let u = Universe::new(standard(kind)?, cfg.bound, cfg.escalation, cfg.engine);
    let sets = maximal_disjoint_sets(kind, &u.table().disjointness(u.objects().len()));
    let mut report = verify_adjacency_lemma(&u, &sets.decompositions)?;
    let deep_bound = 2 * cfg.bound + 2;
    let deepened = if report.inconclusive > 0 {
        let deep = Census::enumerate(u.census().triangulation().clone(), deep_bound);
        deepen_witnesses(&mut report, &u, &sets.decompositions, &deep, cfg.engine)?
    } else {
        0
    };
    let counterexamples: Vec<Value> = report
        .checks
        .iter()
        .filter(|c| c.agrees == Some(false))
        .take(MAX_COUNTEREXAMPLES)
        .map(|c| {
            json!({
                "decomposition": sets.decompositions[c.decomposition].iter().map(|&i| weights(&u.curves()[i])).collect::<Vec<_>>(),
                "a": weights(&u.curves()[c.a]),
                "b": weights(&u.curves()[c.b]),
                "adjacent_by_cut": c.adjacent_by_cut,
                "witness": c.witness.witness().map(|&w| weights(&u.curves()[w])),
                "square": c.square.witness().map(|s| s.map(|w| weights(&u.curves()[w]))),
            })
        })
        .collect();
    let summary = format!(
        "{kind}: {} decompositions, {} pairs agree, {} disagree, {} inconclusive",
        sets.decompositions.len(),
        report.agreements,
        report.disagreements,
        report.inconclusive
    );
    let details = json!({
        "surface": kind.to_string(),
        "object_bound": u.object_bound(),
        "top_bound": u.top_bound(),
        "decompositions": sets.decompositions.len(),
        "truncated_sets": sets.truncated.len(),
        "deep_bound": deep_bound,
        "resolved_by_deep_search": deepened,
        "agreements": report.agreements,
        "disagreements": report.disagreements,
        "inconclusive": report.inconclusive,
    });
    Ok(finish(Suite::Adjacency, report.disagreements > 0, summary, report.inconclusive, counterexamples, details))
}

fn linear_or_cyclic(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rows = Vec::new();
    let mut counterexamples = Vec::new();
    let mut parts = Vec::new();
    let mut fail = false;
    for n in cfg.n_range.clone() {
        let kind = SurfaceKind::new(1, n)?;
        let r = verify_linear_or_cyclic(kind).map_err(|e| Error::Usage(e.to_string()))?;
        let shapes_missing = r.linear == 0 || r.cyclic == 0;
        fail |= !r.holds() || shapes_missing;
        for v in r.violations.iter().take(MAX_COUNTEREXAMPLES) {
            counterexamples.push(json!({ "surface": kind.to_string(), "decomposition": v }));
        }
        parts.push(format!("{kind}: {} classes, {} linear, {} cyclic", r.classes.len(), r.linear, r.cyclic));
        rows.push(json!({
            "surface": kind.to_string(),
            "classes": r.classes.len(),
            "triangle_free": r.triangle_free,
            "linear": r.linear,
            "cyclic": r.cyclic,
            "violations": r.violations.len(),
        }));
    }
    Ok(finish(Suite::LinearOrCyclic, fail, parts.join("; "), 0, counterexamples, json!(rows)))
}

fn duality(kind: SurfaceKind, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let u = Universe::new(standard(kind)?, cfg.bound, cfg.escalation, cfg.engine);
    let ctx = DualityContext::new(&u)?;
    let n = ctx.class_sets().n;
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    let mut counterexamples = Vec::new();
    let mut inconclusive = 0;
    for &a in &n {
        for &b in &n {
            if a == b {
                continue;
            }
            let dual = ctx.is_dual(a, b);
            let found = ctx.duality_witness(a, b)?;
            let key = match (dual, &found) {
                (Some(_), SearchOutcome::Found { .. }) => "dual-witnessed",
                (Some(_), SearchOutcome::Inconclusive { .. }) => {
                    inconclusive += 1;
                    "dual-inconclusive"
                }
                (None, SearchOutcome::Inconclusive { .. }) => "non-dual-no-witness",
                (None, SearchOutcome::Found { witness, .. }) => {
                    if counterexamples.len() < MAX_COUNTEREXAMPLES {
                        counterexamples.push(json!({
                            "a": weights(&u.curves()[a]),
                            "b": weights(&u.curves()[b]),
                            "i": u.i(a, b),
                            "types": [ctx.curve_type(a).to_string(), ctx.curve_type(b).to_string()],
                            "z": weights(&u.curves()[witness.z]),
                            "x": weights(&u.curves()[witness.x]),
                            "y": weights(&u.curves()[witness.y]),
                        }));
                    }
                    "non-dual-witnessed"
                }
            };
            *tally.entry(key).or_default() += 1;
        }
    }
    let bad = tally.get("non-dual-witnessed").copied().unwrap_or(0);
    let summary = format!(
        "{kind}: {} curves in N, {} witnessed non-dual pairs, {} inconclusive dual pairs",
        n.len(),
        bad,
        inconclusive
    );
    let details = json!({
        "surface": kind.to_string(),
        "object_bound": u.object_bound(),
        "top_bound": u.top_bound(),
        "pairs": tally,
    });
    Ok(finish(Suite::Duality, bad > 0, summary, inconclusive, counterexamples, details))
}

fn n3_separation(kind: SurfaceKind, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let u = Universe::new(standard(kind)?, cfg.bound, cfg.escalation, cfg.engine);
    let ctx = DualityContext::new(&u)?;
    let mut nonsep = Vec::new();
    let mut two = Vec::new();
    for c in ctx.class_sets().n {
        let count = ctx.disjoint_dual_count(c)?;
        if ctx.curve_type(c).is_k_curve(2) {
            two.push((count, c));
        } else {
            nonsep.push((count, c));
        }
    }
    let min_nonsep = nonsep.iter().min().copied();
    let max_two = two.iter().max().copied();
    let mut counterexamples = Vec::new();
    if let Some((m, c)) = min_nonsep.filter(|(m, _)| *m < 3) {
        counterexamples.push(json!({ "curve": weights(&u.curves()[c]), "type": "nonseparating", "disjoint_duals": m }));
    }
    if let Some((m, c)) = max_two.filter(|(m, _)| *m > 2) {
        counterexamples.push(json!({ "curve": weights(&u.curves()[c]), "type": "2-curve", "disjoint_duals": m }));
    }
    let fail = !counterexamples.is_empty() || nonsep.is_empty() || two.is_empty();
    let (lo, hi) = (min_nonsep.map(|x| x.0), max_two.map(|x| x.0));
    let summary = format!("{kind}: min over nonseparating = {lo:?}, max over 2-curves = {hi:?}");
    let details = json!({
        "surface": kind.to_string(),
        "object_bound": u.object_bound(),
        "top_bound": u.top_bound(),
        "nonseparating": nonsep.len(),
        "two_curves": two.len(),
        "min_nonseparating": lo,
        "max_two_curve": hi,
    });
    Ok(finish(Suite::N3Separation, fail, summary, 0, counterexamples, details))
}

fn cover(kind: SurfaceKind, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let base = standard(kind)?;
    let census = Census::enumerate(base.clone(), cfg.bound);
    let mut counterexamples = Vec::new();
    let mut rows = Vec::new();
    let mut failures = 0usize;
    let mut note = |failures: &mut usize, v: Value| {
        *failures += 1;
        if counterexamples.len() < MAX_COUNTEREXAMPLES {
            counterexamples.push(v);
        }
    };
    let types: Vec<CurveType> = census.curves().iter().map(curve_type).collect();
    for (c, t) in census.curves().iter().zip(&types) {
        if t.puncture_split() != Some((2, 3)) {
            note(&mut failures, json!({ "curve": weights(c), "split": t.puncture_split() }));
        }
    }
    for special in 0..kind.punctures as usize {
        let cv = DoubleCover::build(base.clone(), special)?;
        let lifts = census.curves().iter().map(|c| cv.lift_curve(c)).collect::<Result<Vec<_>>>()?;
        let mut table: BTreeMap<String, usize> = BTreeMap::new();
        for (l, t) in lifts.iter().zip(&types) {
            let up = cv.type_in_s12(l)?;
            let special_on_two = match t {
                CurveType::Separating { sides, .. } => {
                    sides.iter().any(|s| s.punctures.len() == 2 && s.punctures.contains(&special))
                }
                CurveType::Nonseparating => false,
            };
            if up.is_separating() != special_on_two || l.components.len() != 2 - l.holonomy as usize {
                note(&mut failures, json!({ "special": special, "curve": weights(&l.base), "type_in_s12": up.to_string() }));
            }
            let side = if special_on_two { "special on 2-side" } else { "special on 3-side" };
            *table.entry(format!("{side} -> {}", type_label(&up))).or_default() += 1;
        }
        let mut disjoint_pairs = 0usize;
        for i in 0..lifts.len() {
            for j in 0..i {
                if cfg.engine.intersection(&lifts[i].base, &lifts[j].base) == 0 {
                    disjoint_pairs += 1;
                    if !cv.lifts_disjoint(&lifts[i], &lifts[j], cfg.engine) {
                        note(
                            &mut failures,
                            json!({ "special": special, "a": weights(&lifts[i].base), "b": weights(&lifts[j].base) }),
                        );
                    }
                }
            }
        }
        rows.push(json!({
            "special": special,
            "triangle_condition": cv.triangle_condition(),
            "correspondence": table,
            "disjoint_base_pairs": disjoint_pairs,
        }));
    }
    let summary = format!("{kind}: {} curves, {} special punctures, {failures} exceptions", census.len(), kind.punctures);
    Ok(finish(Suite::Cover, failures > 0, summary, 0, counterexamples, json!({ "bound": cfg.bound, "covers": rows })))
}
