//! Output documents of each subcommand and their text rendering. Every text
//! rendering is a function of the document alone, so it can be reproduced
//! from the JSON output.

use std::collections::BTreeMap;
use std::fmt::Write;

use gkm_core::cohomology::{BettiNumbers, FreenessReport, FreenessStatus, PoincareDuality, Ring};
use gkm_core::connection::TransitionData;
use gkm_core::linalg::small::IntMatrix;
use gkm_core::orientation::OrientationWitness;
use gkm_core::validate::{Finding, IsotropyReport, ValidationReport};
use gkm_core::verdict::{
    ConnectionSource, OrientabilityBlock, RealizabilityReport, SurfaceBlock,
};
use gkm_core::DirectedEdge;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateOutput {
    pub name: Option<String>,
    pub vertices: Vec<String>,
    pub edges: usize,
    pub validation: ValidationReport,
    pub elementary_divisors: Vec<Vec<i64>>,
    pub isotropy: IsotropyReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionListing {
    pub index: u64,
    /// Per edge, the forward map without the edge itself.
    pub forward: Vec<BTreeMap<String, usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathInfo {
    pub edges: Vec<DirectedEdge>,
    pub vertices: Vec<String>,
    pub holonomy: IntMatrix,
    pub identity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectedConnection {
    pub source: ConnectionSource,
    pub index: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transitions: Vec<TransitionData>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub paths: Vec<PathInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionsOutput {
    pub name: Option<String>,
    pub vertices: Vec<String>,
    pub count: u64,
    pub choices_per_edge: Vec<usize>,
    pub listed: Vec<ConnectionListing>,
    pub selected: Option<SelectedConnection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientabilityOutput {
    pub name: Option<String>,
    pub vertices: Vec<String>,
    pub connection: Option<SelectedConnection>,
    pub orientability: Option<OrientabilityBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyDegree {
    pub degree: usize,
    /// Dimension over `Q`, or lattice rank over `Z`.
    pub dim: usize,
    /// Rank of the degree in the quotient ring, when computed.
    pub betti: Option<usize>,
    #[serde(with = "gkm_core::numeric::vec", default, skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<BigInt>,
    #[serde(
        with = "option_matrix",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub basis: Option<Vec<Vec<BigInt>>>,
}

mod option_matrix {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "gkm_core::numeric::matrix")] Vec<Vec<BigInt>>);

    pub fn serialize<S: Serializer>(m: &Option<Vec<Vec<BigInt>>>, s: S) -> Result<S::Ok, S::Error> {
        m.as_ref().map(|m| Wrap(m.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Vec<BigInt>>>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyOutput {
    pub name: Option<String>,
    pub ring: Ring,
    pub degree_cap: usize,
    pub degrees: Vec<CohomologyDegree>,
    pub betti: BettiNumbers,
    pub free_prediction_holds: bool,
    pub generator_degrees: Vec<usize>,
    pub poincare_duality: PoincareDuality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessOutput {
    pub name: Option<String>,
    pub freeness: FreenessReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceOutput {
    pub name: Option<String>,
    pub vertices: Vec<String>,
    pub connection: Option<SelectedConnection>,
    pub surface: Option<SurfaceBlock>,
    pub emitted: Option<String>,
}

fn title(name: &Option<String>) -> String {
    format!("graph: {}\n", name.as_deref().unwrap_or("(unnamed)"))
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn letter(d: &DirectedEdge) -> String {
    format!("{}{}", d.edge, if d.forward { "+" } else { "-" })
}

fn finding_text(f: &Finding, vertices: &[String]) -> String {
    let name = |v: usize| vertices.get(v).cloned().unwrap_or_else(|| v.to_string());
    match f {
        Finding::Valence { degrees } => format!("vertex degrees differ: {}", join(degrees, " ")),
        Finding::Loop { edge, vertex } => format!("edge {edge} is a loop at {}", name(*vertex)),
        Finding::DependenceAtVertex { vertex, edges } => format!(
            "edges {} and {} have dependent weights at {}",
            edges[0],
            edges[1],
            name(*vertex)
        ),
        Finding::Disconnected { components, unreachable } => format!(
            "{components} components; unreachable from {}: {}",
            name(0),
            unreachable.iter().map(|&v| name(v)).collect::<Vec<_>>().join(" ")
        ),
        Finding::Ineffective { vertex, divisors } => format!(
            "weights at {} generate a sublattice (elementary divisors {})",
            name(*vertex),
            join(divisors, ", ")
        ),
    }
}

fn isotropy_text(iso: &IsotropyReport) -> String {
    if iso.ok {
        return "connected isotropy: ok\n".to_string();
    }
    let mut s = String::from("connected isotropy: fails");
    let dets = iso.failing_determinants();
    if !dets.is_empty() {
        let _ = write!(s, " (determinants {})", join(&dets, ", "));
    }
    if !iso.imprimitive_edges.is_empty() {
        let _ = write!(s, " (imprimitive edges {})", join(&iso.imprimitive_edges, " "));
    }
    s + "\n"
}

pub fn validate_text(o: &ValidateOutput) -> String {
    let mut s = title(&o.name);
    let _ = writeln!(s, "vertices: {}, edges: {}", o.vertices.len(), o.edges);
    match o.validation.valence {
        Some(n) => {
            let _ = writeln!(s, "valence: {n}");
        }
        None => s.push_str("valence: not constant\n"),
    }
    if o.validation.ok {
        s.push_str("valid: yes\n");
    } else {
        s.push_str("valid: no\n");
        for f in &o.validation.failures {
            let _ = writeln!(s, "  - {}", finding_text(f, &o.vertices));
        }
    }
    s + &isotropy_text(&o.isotropy)
}

fn source_text(c: &SelectedConnection) -> String {
    match (c.source, c.index) {
        (ConnectionSource::File, Some(i)) => format!("from file (enumeration #{i})"),
        (ConnectionSource::File, None) => "from file".to_string(),
        (ConnectionSource::Enumeration, Some(i)) => format!("enumeration #{i}"),
        (ConnectionSource::Enumeration, None) => "enumeration".to_string(),
    }
}

fn matrix_text(m: &IntMatrix) -> String {
    m.iter().map(|r| format!("[{}]", join(r, " "))).collect::<Vec<_>>().join(" ")
}

pub fn connections_text(o: &ConnectionsOutput) -> String {
    let mut s = title(&o.name);
    let _ = writeln!(s, "compatible connections: {}", o.count);
    let _ = writeln!(s, "choices per edge: {}", join(&o.choices_per_edge, " "));
    for l in &o.listed {
        let maps: Vec<String> = l
            .forward
            .iter()
            .enumerate()
            .map(|(e, m)| {
                let pairs: Vec<String> = m.iter().map(|(f, g)| format!("{f}->{g}")).collect();
                format!("{e}:{{{}}}", pairs.join(","))
            })
            .collect();
        let _ = writeln!(s, "  #{}: {}", l.index, maps.join(" "));
    }
    if (o.listed.len() as u64) < o.count {
        let _ = writeln!(s, "  ... {} more", o.count - o.listed.len() as u64);
    }
    if let Some(c) = &o.selected {
        let _ = writeln!(s, "selected: {}", source_text(c));
        for t in &c.transitions {
            let coeffs: Vec<String> = t.coefficients.iter().map(|c| format!("({},{})", c.sign, c.shift)).collect();
            let _ = writeln!(
                s,
                "  {} {}->{}: sigma [{}] (eps,k) {} phi {} det {} eta {}",
                letter(&t.edge),
                o.vertices[t.source],
                o.vertices[t.target],
                join(&t.permutation, " "),
                coeffs.join(" "),
                matrix_text(&t.matrix),
                gkm_core::linalg::small::det(&t.matrix),
                t.eta()
            );
        }
        let _ = writeln!(s, "connection paths: {}", c.paths.len());
        for p in &c.paths {
            let _ = writeln!(
                s,
                "  [{}] {} holonomy {}",
                p.edges.iter().map(letter).collect::<Vec<_>>().join(" "),
                p.vertices.join(" -> "),
                if p.identity { "identity".to_string() } else { matrix_text(&p.holonomy) }
            );
        }
    }
    s
}

fn orientability_lines(block: &OrientabilityBlock, vertices: &[String]) -> String {
    let v = &block.verdict;
    let mut s = String::new();
    match &v.witness {
        OrientationWitness::Potential { tau } => {
            let pot: Vec<String> = tau
                .iter()
                .enumerate()
                .map(|(i, t)| format!("{}:{}", vertices[i], if *t > 0 { "+" } else { "-" }))
                .collect();
            let _ = writeln!(s, "orientable: yes (potential {})", pot.join(" "));
        }
        OrientationWitness::ViolatingCycle { edges, vertices: cyc } => {
            let mut names: Vec<&str> = cyc.iter().map(|&i| vertices[i].as_str()).collect();
            if let Some(&first) = names.first() {
                names.push(first);
            }
            let _ = writeln!(
                s,
                "orientable: no (cycle {} of length {} with eta product -1)",
                names.join(" -> "),
                edges.len()
            );
        }
    }
    let _ = writeln!(s, "eta: {}", join(&v.eta, " "));
    if block.disagreements.is_empty() {
        let _ = writeln!(s, "same verdict under all {} checked connections", block.cross_checked);
    } else {
        let _ = writeln!(
            s,
            "verdict differs under connections {}",
            join(&block.disagreements, " ")
        );
    }
    s
}

pub fn orientability_text(o: &OrientabilityOutput) -> String {
    let mut s = title(&o.name);
    match (&o.connection, &o.orientability) {
        (Some(c), Some(block)) => {
            let _ = writeln!(s, "connection: {}", source_text(c));
            s += &orientability_lines(block, &o.vertices);
        }
        _ => s.push_str("no compatible connection\n"),
    }
    s
}

fn betti_text(b: &BettiNumbers) -> String {
    let state = if b.stabilized {
        "stabilized".to_string()
    } else {
        format!("not stabilized within degree {}", b.degree_cap)
    };
    format!(
        "betti: {} (sum {} of {} vertices, {state})\n",
        join(&b.trimmed(), " "),
        b.total,
        b.vertices
    )
}

fn pd_text(pd: &PoincareDuality) -> String {
    match pd.pd {
        None => format!(
            "poincare duality: undecided ({})\n",
            pd.reason.as_deref().unwrap_or("")
        ),
        Some(true) => format!(
            "poincare duality: yes (pairing rank {} on {}x{})\n",
            pd.pairing_rank, pd.pairing_shape[0], pd.pairing_shape[1]
        ),
        Some(false) => format!("poincare duality: no ({})\n", pd.reason.as_deref().unwrap_or("")),
    }
}

fn top_class_text(pd: &PoincareDuality, vertices: Option<&[String]>) -> String {
    if pd.top_class.is_empty() {
        return String::new();
    }
    let parts: Vec<String> = pd
        .top_class
        .iter()
        .map(|t| {
            let name = vertices.map_or_else(|| t.vertex.to_string(), |v| v[t.vertex].clone());
            let coords = if t.coordinates.is_empty() { "0".to_string() } else { t.coordinates.join(",") };
            format!("{name}:{coords}")
        })
        .collect();
    format!("vertex Thom classes in H^6: {}\n", parts.join(" "))
}

pub fn cohomology_text(o: &CohomologyOutput) -> String {
    let mut s = title(&o.name);
    let ring = match o.ring {
        Ring::Q => "Q",
        Ring::Z => "Z",
    };
    let _ = writeln!(s, "ring: {ring}, degree cap: {}", o.degree_cap);
    for d in &o.degrees {
        let _ = write!(s, "  H^{}_T: {} {}", d.degree, if o.ring == Ring::Q { "dim" } else { "rank" }, d.dim);
        if let Some(b) = d.betti {
            let _ = write!(s, ", quotient rank {b}");
        }
        if !d.torsion.is_empty() {
            let _ = write!(s, ", torsion {}", join(&d.torsion, " "));
        }
        s.push('\n');
        if let Some(rows) = &d.basis {
            for r in rows {
                let _ = writeln!(s, "    [{}]", join(r, " "));
            }
        }
    }
    s += &betti_text(&o.betti);
    let _ = writeln!(
        s,
        "generator degrees: {}{}",
        join(&o.generator_degrees, " "),
        if o.free_prediction_holds { "" } else { " (dimensions disagree with a free module)" }
    );
    s += &pd_text(&o.poincare_duality);
    s + &top_class_text(&o.poincare_duality, None)
}

fn freeness_lines(f: &FreenessReport) -> String {
    let mut s = match &f.status {
        FreenessStatus::Certified { through_degree } => {
            format!("integral freeness: certified through degree {through_degree}\n")
        }
        FreenessStatus::NotFree { degree, order, witness } => {
            let support: Vec<String> = witness
                .values
                .iter()
                .enumerate()
                .filter(|(_, p)| p.iter().any(|c| c != &BigInt::from(0)))
                .map(|(v, p)| format!("{v}:[{}]", join(p, " ")))
                .collect();
            format!(
                "integral freeness: fails; class of order {order} in degree {degree} ({})\n",
                support.join(" ")
            )
        }
    };
    if f.partial {
        s.push_str("  rational Betti numbers did not stabilize within the cap\n");
    }
    s
}

pub fn freeness_text(o: &FreenessOutput) -> String {
    let mut s = title(&o.name);
    for d in &o.freeness.degrees {
        let _ = write!(s, "  H^{}: rank {}, free rank {}", d.degree, d.rank, d.free_rank);
        if !d.torsion.is_empty() {
            let _ = write!(s, ", torsion {}", join(&d.torsion, " "));
        }
        s.push('\n');
    }
    s + &freeness_lines(&o.freeness)
}

fn surface_lines(b: &SurfaceBlock) -> String {
    format!(
        "surface: {}, chi = {} ({} vertices, {} edges, {} polygons; perimeters {})\n",
        display_surface(b),
        b.class.chi,
        b.vertices,
        b.edges,
        b.polygons,
        join(&b.path_lengths, " ")
    )
}

fn display_surface(b: &SurfaceBlock) -> String {
    if !b.class.orientable && b.class.parameter == 1 {
        format!("{} (RP²)", b.class.name)
    } else {
        b.class.name.clone()
    }
}

pub fn surface_text(o: &SurfaceOutput) -> String {
    let mut s = title(&o.name);
    match (&o.connection, &o.surface) {
        (Some(c), Some(b)) => {
            let _ = writeln!(s, "connection: {}", source_text(c));
            let _ = writeln!(s, "connection paths: {}", b.paths.len());
            for p in &b.paths {
                let _ = writeln!(s, "  [{}]", p.edges.iter().map(letter).collect::<Vec<_>>().join(" "));
            }
            s += &surface_lines(b);
            if let Some(path) = &o.emitted {
                let _ = writeln!(s, "complex written to {path}");
            }
        }
        _ => s.push_str("no compatible connection\n"),
    }
    s
}

pub fn verdict_text(r: &RealizabilityReport) -> String {
    let mut s = title(&r.name);
    let _ = writeln!(s, "tier: {}", r.tier);
    if r.validity.ok {
        s.push_str("valid: yes\n");
    } else {
        s.push_str("valid: no\n");
        for f in &r.validity.failures {
            let _ = writeln!(s, "  - {}", finding_text(f, &r.vertices));
        }
    }
    if let Some(c) = &r.connections {
        let sel = match (c.source, c.index) {
            (Some(src), index) => source_text(&SelectedConnection {
                source: src,
                index,
                transitions: Vec::new(),
                paths: Vec::new(),
            }),
            (None, _) => "none".to_string(),
        };
        let _ = writeln!(s, "compatible connections: {} (selected: {sel})", c.count);
    }
    if let Some(o) = &r.orientability {
        s += &orientability_lines(o, &r.vertices);
    }
    if let Some(c) = &r.cohomology {
        s += &betti_text(&c.betti);
    }
    if let Some(pd) = &r.poincare_duality {
        s += &pd_text(pd);
        s += &top_class_text(pd, Some(&r.vertices));
    }
    if let Some(f) = &r.freeness {
        s += &freeness_lines(f);
    }
    if let Some(iso) = &r.isotropy {
        s += &isotropy_text(iso);
    }
    if let Some(b) = &r.surface {
        s += &surface_lines(b);
    }
    if let Some(h) = r.holonomy_identity {
        let _ = writeln!(s, "holonomy: {}", if h { "identity on every path" } else { "nontrivial on some path" });
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    for f in &r.findings {
        let _ = writeln!(s, "finding: {f}");
    }
    s
}
