//! The four batch commands behind the `curvelab` binary.
//!
//! Every JSON file is `{"header": .., "report": ..}`. Only the header carries
//! a timestamp, so reports from identical configurations are identical.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::json;

use crate::classify::curve_type;
use crate::curves::{Census, Engine};
use crate::error::{Error, Result};
use crate::pants::{classify_shape, enumerate_abstract, maximal_disjoint_sets, PantsDecomposition, Shape};
use crate::search::{Escalation, IntersectionTable};
use crate::suites::{run_suite, type_label, Suite, SuiteConfig, SuiteReport};
use crate::surface::{IdealTriangulation, SurfaceKind};

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub surface: Option<SurfaceKind>,
    pub bound: u32,
    pub escalation: Escalation,
    pub suites: Vec<Suite>,
    pub n_range: std::ops::RangeInclusive<u32>,
    pub out: PathBuf,
    pub engine: Engine,
}

impl RunConfig {
    pub fn check(&self) -> Result<()> {
        if self.escalation.limit > 2 {
            return Err(Error::Usage(format!("escalation limit {} exceeds 2", self.escalation.limit)));
        }
        if self.n_range.is_empty() {
            return Err(Error::Usage("empty --n-range".into()));
        }
        Ok(())
    }

    fn surface(&self) -> Result<SurfaceKind> {
        self.surface.ok_or_else(|| Error::Usage("--surface is required".into()))
    }

    fn suite_config(&self) -> SuiteConfig {
        SuiteConfig {
            surface: self.surface,
            bound: self.bound,
            escalation: self.escalation,
            n_range: self.n_range.clone(),
            engine: self.engine,
        }
    }
}

/// What a command printed and wrote.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub lines: Vec<String>,
    pub files: Vec<PathBuf>,
    /// A checked claim was contradicted.
    pub hard_failure: bool,
}

#[derive(Serialize)]
struct Header {
    tool: &'static str,
    version: &'static str,
    generated_at_unix: u64,
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    header: Header,
    report: &'a T,
}

pub fn write_report<T: Serialize>(dir: &Path, name: &str, report: &T) -> Result<PathBuf> {
    let generated_at_unix = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    let doc = Document {
        header: Header { tool: "curvelab", version: env!("CARGO_PKG_VERSION"), generated_at_unix },
        report,
    };
    let path = dir.join(name);
    let text = serde_json::to_string_pretty(&doc).map_err(|source| Error::Json { path: path.clone(), source })?;
    write_text(&path, &(text + "\n"))?;
    Ok(path)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|source| Error::Io { path: parent.to_path_buf(), source })?;
    }
    fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn standard(kind: SurfaceKind) -> Result<Arc<IdealTriangulation>> {
    Ok(Arc::new(IdealTriangulation::standard(kind)?))
}

fn slug(kind: SurfaceKind) -> String {
    format!("s{}-{}", kind.genus, kind.punctures)
}

/// Census, intersection table and type histogram.
pub fn census(cfg: &RunConfig) -> Result<Outcome> {
    let kind = cfg.surface()?;
    let census = Census::enumerate(standard(kind)?, cfg.bound);
    let table = IntersectionTable::compute(census.curves(), cfg.engine);
    let types: Vec<String> = census.curves().iter().map(|c| type_label(&curve_type(c))).collect();
    let mut histogram: BTreeMap<&str, usize> = BTreeMap::new();
    for t in &types {
        *histogram.entry(t).or_default() += 1;
    }
    let curves: Vec<_> = census
        .curves()
        .iter()
        .zip(&types)
        .map(|(c, t)| json!({ "weights": c.weights(), "total_weight": c.total_weight(), "type": t }))
        .collect();
    let rows: Vec<&[u32]> = (0..table.len()).map(|i| table.row(i)).collect();
    let base = format!("{}-b{}", slug(kind), cfg.bound);
    let mut out = Outcome::default();
    out.files.push(write_report(
        &cfg.out,
        &format!("{base}-census.json"),
        &json!({ "surface": kind.to_string(), "bound": cfg.bound, "curves": curves }),
    )?);
    out.files.push(write_report(
        &cfg.out,
        &format!("{base}-intersections.json"),
        &json!({ "surface": kind.to_string(), "bound": cfg.bound, "table": rows }),
    )?);
    out.files.push(write_report(
        &cfg.out,
        &format!("{base}-histogram.json"),
        &json!({ "surface": kind.to_string(), "bound": cfg.bound, "histogram": histogram }),
    )?);
    out.lines.push(format!("{kind} {}", census.summary()));
    for (t, n) in &histogram {
        out.lines.push(format!("  {t:<24} {n}"));
    }
    Ok(out)
}

/// Runs the selected suites; any failed suite is a hard failure.
pub fn verify(cfg: &RunConfig) -> Result<Outcome> {
    let suites = if cfg.suites.is_empty() { Suite::ALL.to_vec() } else { cfg.suites.clone() };
    let sc = cfg.suite_config();
    let mut out = Outcome::default();
    let mut reports: Vec<SuiteReport> = Vec::new();
    for s in suites {
        let r = run_suite(s, &sc)?;
        let status = if r.passed() { "PASS" } else { "FAIL" };
        out.lines.push(format!("{status} {}: {}", r.suite, r.summary));
        if r.inconclusive > 0 {
            out.lines.push(format!("  {} inconclusive (bound-limited)", r.inconclusive));
        }
        for c in &r.counterexamples {
            out.lines.push(format!("  counterexample {c}"));
        }
        out.hard_failure |= !r.passed();
        reports.push(r);
    }
    out.files.push(write_report(&cfg.out, "verify.json", &reports)?);
    Ok(out)
}

/// Concrete decompositions found in the census, plus abstract class counts.
pub fn pants(cfg: &RunConfig) -> Result<Outcome> {
    let kind = cfg.surface()?;
    let census = Census::enumerate(standard(kind)?, cfg.bound);
    let table = IntersectionTable::compute(census.curves(), cfg.engine);
    let sets = maximal_disjoint_sets(kind, &table.disjointness(census.len()));
    let mut shapes: BTreeMap<String, usize> = BTreeMap::new();
    let mut decompositions = Vec::new();
    for p in &sets.decompositions {
        let pd = PantsDecomposition::new(p.iter().map(|&i| census.get(i).clone()).collect())?;
        let abs = pd.to_abstract();
        let shape = shape_label(&abs)?;
        *shapes.entry(shape.clone()).or_default() += 1;
        decompositions.push(json!({
            "curves": p.iter().map(|&i| census.get(i).weights()).collect::<Vec<_>>(),
            "pants": pd.pants(),
            "adjacency": pd.adjacency_graph(),
            "shape": shape,
        }));
    }
    let classes = enumerate_abstract(kind)?.len();
    let mut out = Outcome::default();
    out.files.push(write_report(
        &cfg.out,
        &format!("{}-b{}-pants.json", slug(kind), cfg.bound),
        &json!({
            "surface": kind.to_string(),
            "bound": cfg.bound,
            "abstract_classes": classes,
            "decompositions": decompositions,
            "truncated_sets": sets.truncated.len(),
            "shapes": shapes,
        }),
    )?);
    out.lines.push(format!(
        "{kind} bound={}: {} decompositions ({} truncated maximal sets), {classes} abstract classes",
        cfg.bound,
        sets.decompositions.len(),
        sets.truncated.len()
    ));
    for (s, n) in &shapes {
        out.lines.push(format!("  {s:<10} {n}"));
    }
    Ok(out)
}

fn shape_label(a: &crate::pants::AbstractPants) -> Result<String> {
    if a.genus() != 1 {
        return Ok("n/a".into());
    }
    Ok(match classify_shape(a)? {
        Shape::Linear => "linear",
        Shape::Cyclic => "cyclic",
        Shape::Other => "other",
    }
    .into())
}

/// One DOT file per adjacency graph: abstract classes, or census
/// decompositions when `from_census` is set.
pub fn export(cfg: &RunConfig, from_census: bool) -> Result<Outcome> {
    let kind = cfg.surface()?;
    let mut graphs = Vec::new();
    if from_census {
        let census = Census::enumerate(standard(kind)?, cfg.bound);
        let table = IntersectionTable::compute(census.curves(), cfg.engine);
        for p in maximal_disjoint_sets(kind, &table.disjointness(census.len())).decompositions {
            let pd = PantsDecomposition::new(p.iter().map(|&i| census.get(i).clone()).collect())?;
            let labels: Vec<String> = p.iter().map(|&i| format!("{:?}", census.get(i).weights())).collect();
            graphs.push((shape_label(&pd.to_abstract())?, pd.adjacency_graph(), Some(labels)));
        }
    } else {
        for a in enumerate_abstract(kind)? {
            graphs.push((shape_label(&a)?, a.adjacency_graph(), None));
        }
    }
    let mut out = Outcome::default();
    let prefix = if from_census { format!("{}-b{}", slug(kind), cfg.bound) } else { format!("{}-class", slug(kind)) };
    for (i, (shape, g, labels)) in graphs.iter().enumerate() {
        let name = format!("{prefix}-{i:03}-{shape}");
        let path = cfg.out.join(format!("{name}.dot"));
        write_text(&path, &g.to_dot(&name, labels.as_deref()))?;
        out.files.push(path);
    }
    out.lines.push(format!("{kind}: wrote {} DOT files", out.files.len()));
    Ok(out)
}
