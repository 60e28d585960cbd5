//! The combined realizability verdict.

use serde::{Deserialize, Serialize};

use crate::cohomology::{
    z_freeness_with_table, BettiNumbers, CohomologyTable, DegreeSummary, FreenessReport,
    FreenessStatus, PoincareDuality,
};
use crate::connection::{connection_paths, loop_holonomy, transition, Connection, ConnectionSpace};
use crate::error::{GkmError, Result};
use crate::graph::{DirectedEdge, GkmGraph};
use crate::linalg::small;
use crate::orientation::{is_orientable, OrientabilityVerdict};
use crate::surface::{build_surface, classify_surface, SurfaceClass};
use crate::validate::{connected_isotropy_check, validate, IsotropyReport, ValidationReport};
use crate::ConnectionPath;

pub const REPORT_SCHEMA: &str = "gkm-report/1";

/// Connections beyond this many are not cross-checked for orientability.
pub const CROSS_CHECK_LIMIT: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    Invalid,
    NotGkm,
    NotRealizable,
    RationalGkmRealizable,
    IntegerGkmRealizable,
    RigidClass,
}

impl Tier {
    pub fn as_str(self) -> &'static str {
        match self {
            Tier::Invalid => "invalid",
            Tier::NotGkm => "not-gkm",
            Tier::NotRealizable => "not-realizable",
            Tier::RationalGkmRealizable => "rational-gkm-realizable",
            Tier::IntegerGkmRealizable => "integer-gkm-realizable",
            Tier::RigidClass => "rigid-class",
        }
    }
}

impl std::fmt::Display for Tier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportOptions {
    /// Index into the enumeration; `None` uses the file's connection if any,
    /// else the first enumerated one.
    pub connection: Option<u64>,
    /// Largest cohomological degree computed.
    pub degree_cap: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { connection: None, degree_cap: 20 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConnectionSource {
    File,
    Enumeration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionsBlock {
    /// Number of compatible connections (saturating).
    pub count: u64,
    pub choices_per_edge: Vec<usize>,
    pub source: Option<ConnectionSource>,
    /// Position of the selected connection in the enumeration.
    pub index: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientabilityBlock {
    #[serde(flatten)]
    pub verdict: OrientabilityVerdict,
    /// Connections whose verdict was compared with the selected one.
    pub cross_checked: u64,
    /// Enumeration indices whose verdict differs from the selected one.
    pub disagreements: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyBlock {
    pub betti: BettiNumbers,
    pub degrees: Vec<DegreeSummary>,
    pub free_prediction_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceBlock {
    pub paths: Vec<ConnectionPath>,
    pub path_lengths: Vec<usize>,
    pub vertices: usize,
    pub edges: usize,
    pub polygons: usize,
    pub class: SurfaceClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizabilityReport {
    pub schema: String,
    pub name: Option<String>,
    pub vertices: Vec<String>,
    pub options: ReportOptions,
    pub validity: ValidationReport,
    pub connections: Option<ConnectionsBlock>,
    pub orientability: Option<OrientabilityBlock>,
    pub cohomology: Option<CohomologyBlock>,
    pub poincare_duality: Option<PoincareDuality>,
    pub freeness: Option<FreenessReport>,
    pub isotropy: Option<IsotropyReport>,
    pub surface: Option<SurfaceBlock>,
    /// Whether every connection path has identity holonomy.
    pub holonomy_identity: Option<bool>,
    /// Failed internal cross-checks; empty on a consistent run.
    pub findings: Vec<String>,
    pub warnings: Vec<String>,
    pub tier: Tier,
}

/// Resolves the connection requested by `options`.
pub fn select_connection(
    g: &GkmGraph,
    file_connection: Option<&Connection>,
    index: Option<u64>,
) -> Result<Option<(Connection, ConnectionSource, Option<u64>)>> {
    let space = ConnectionSpace::new(g);
    if let Some(i) = index {
        let conn = space.get(i as u128).ok_or_else(|| {
            GkmError::Precondition(format!("connection index {i} out of range (have {})", space.len()))
        })?;
        return Ok(Some((conn, ConnectionSource::Enumeration, Some(i))));
    }
    if let Some(c) = file_connection {
        let idx = space.index_of(c).map(|i| i as u64);
        return Ok(Some((c.clone(), ConnectionSource::File, idx)));
    }
    Ok(space.get(0).map(|c| (c, ConnectionSource::Enumeration, Some(0))))
}

fn sign_formula_findings(g: &GkmGraph, conn: &Connection, findings: &mut Vec<String>) -> Result<()> {
    for e in 0..g.edge_count() {
        for d in [DirectedEdge::forward(e), DirectedEdge::backward(e)] {
            let t = transition(g, conn, d)?;
            let det = t.determinant();
            if det.abs() != 1 {
                findings.push(format!("transition along edge {e} has determinant {det}"));
            }
            if t.eta() != -t.permutation_sign() * det {
                findings.push(format!("sign formula fails along edge {e}"));
            }
            let at = |v| g.weights_at(v).iter().map(|w| vec![w.a, w.b]).collect::<Vec<_>>();
            if small::mul(&t.matrix, &at(t.source)) != at(t.target) {
                findings.push(format!("transition along edge {e} does not carry the weights"));
            }
        }
    }
    Ok(())
}

pub fn realizability_report(g: &GkmGraph, options: ReportOptions) -> Result<RealizabilityReport> {
    realizability_report_with(g, None, options)
}

/// Full pipeline; `file_connection` is used when no index is requested.
pub fn realizability_report_with(
    g: &GkmGraph,
    file_connection: Option<&Connection>,
    options: ReportOptions,
) -> Result<RealizabilityReport> {
    if options.degree_cap < 6 || options.degree_cap % 2 == 1 {
        return Err(GkmError::Precondition(format!(
            "degree cap must be an even number of at least 6, got {}",
            options.degree_cap
        )));
    }
    let validity = validate(g);
    let mut report = RealizabilityReport {
        schema: REPORT_SCHEMA.to_string(),
        name: g.name().map(str::to_string),
        vertices: g.vertex_names().to_vec(),
        options,
        validity,
        connections: None,
        orientability: None,
        cohomology: None,
        poincare_duality: None,
        freeness: None,
        isotropy: None,
        surface: None,
        holonomy_identity: None,
        findings: Vec::new(),
        warnings: Vec::new(),
        tier: Tier::Invalid,
    };
    if !report.validity.ok || g.valence() != Some(3) {
        if report.validity.ok {
            report.warnings.push("the verdict needs a 3-valent graph".into());
        }
        return Ok(report);
    }

    let space = ConnectionSpace::new(g);
    let selected = select_connection(g, file_connection, options.connection)?;
    report.connections = Some(ConnectionsBlock {
        count: u64::try_from(space.len()).unwrap_or(u64::MAX),
        choices_per_edge: space.choices_per_edge(),
        source: selected.as_ref().map(|s| s.1),
        index: selected.as_ref().and_then(|s| s.2),
    });
    let Some((conn, _, _)) = selected else {
        report.tier = Tier::NotGkm;
        return Ok(report);
    };

    let verdict = is_orientable(g, &conn)?;
    if !verdict.verify(g) {
        report.findings.push("orientability witness does not verify".into());
    }
    let mut disagreements = Vec::new();
    let mut cross_checked = 0;
    if space.len() <= CROSS_CHECK_LIMIT as u128 {
        for (i, other) in space.iter().enumerate() {
            cross_checked += 1;
            if is_orientable(g, &other)?.orientable != verdict.orientable {
                disagreements.push(i as u64);
            }
        }
    }
    if !disagreements.is_empty() {
        report
            .findings
            .push(format!("orientability differs under {} connection(s)", disagreements.len()));
    }
    sign_formula_findings(g, &conn, &mut report.findings)?;
    let orientable = verdict.orientable;
    report.orientability = Some(OrientabilityBlock { verdict, cross_checked, disagreements });

    let mut table = CohomologyTable::compute(g, options.degree_cap);
    let pd = PoincareDuality::from_table(g, &mut table)?;
    report.cohomology = Some(CohomologyBlock {
        betti: table.betti(),
        degrees: table.degrees.clone(),
        free_prediction_holds: table.free_prediction_holds(),
    });
    if !table.free_prediction_holds() {
        report.findings.push("rational dimensions differ from the free-module prediction".into());
    }
    let pd_holds = pd.pd == Some(true);
    report.poincare_duality = Some(pd);
    if pd_holds && !orientable {
        return Err(GkmError::Internal(
            "Poincaré duality holds but the graph is not orientable".into(),
        ));
    }

    let freeness = z_freeness_with_table(g, &table)?;
    let isotropy = connected_isotropy_check(g);

    let complex = build_surface(g, &conn)?;
    let class = classify_surface(&complex);
    report.surface = Some(SurfaceBlock {
        path_lengths: complex.polygons.iter().map(ConnectionPath::len).collect(),
        vertices: complex.vertices,
        edges: complex.edges,
        polygons: complex.polygons.len(),
        paths: complex.polygons,
        class,
    });
    let mut identity = true;
    for path in connection_paths(g, &conn) {
        if loop_holonomy(g, &conn, &path)? != small::identity(3) {
            identity = false;
        }
    }
    report.holonomy_identity = Some(identity);
    if orientable && !identity {
        report.findings.push("a connection path of an orientable graph has nontrivial holonomy".into());
    }

    report.tier = if !pd_holds {
        Tier::NotRealizable
    } else {
        match (&freeness.status, freeness.partial) {
            (FreenessStatus::NotFree { .. }, _) => Tier::RationalGkmRealizable,
            (FreenessStatus::Certified { .. }, true) => {
                report.warnings.push(format!(
                    "integer tier undetermined (certified only to cap {})",
                    options.degree_cap
                ));
                Tier::RationalGkmRealizable
            }
            (FreenessStatus::Certified { .. }, false) if isotropy.ok => Tier::RigidClass,
            (FreenessStatus::Certified { .. }, false) => {
                report.warnings.push(format!(
                    "realization not unique: isotropy is disconnected (determinants {:?})",
                    isotropy.failing_determinants()
                ));
                Tier::IntegerGkmRealizable
            }
        }
    };
    if matches!(freeness.status, FreenessStatus::Certified { .. }) {
        report.warnings.push(format!(
            "integral freeness certified through degree {} only",
            options.degree_cap
        ));
    }
    report.freeness = Some(freeness);
    report.isotropy = Some(isotropy);
    Ok(report)
}
