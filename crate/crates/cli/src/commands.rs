use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use gkm_core::cohomology::{
    ht_basis, z_freeness_with_table, CohomologyTable, PoincareDuality, Ring,
};
use gkm_core::connection::{connection_paths, loop_holonomy, transition, ConnectionSpace};
use gkm_core::format::GraphFile;
use gkm_core::linalg::small;
use gkm_core::orientation::is_orientable;
use gkm_core::surface::{build_surface, classify_surface};
use gkm_core::validate::{connected_isotropy_check, elementary_divisors_at, validate as check};
use gkm_core::verdict::{
    realizability_report_with, select_connection, OrientabilityBlock, ReportOptions, SurfaceBlock,
    Tier,
};
use gkm_core::{Connection, ConnectionPath, DirectedEdge, GkmGraph};

use crate::render::{
    self, CohomologyDegree, CohomologyOutput, ConnectionListing, ConnectionsOutput,
    FreenessOutput, OrientabilityOutput, PathInfo, SelectedConnection, SurfaceOutput,
    ValidateOutput,
};
use crate::{load, Output, RingArg, Settings};

type Outcome = Result<Output, String>;

fn output<T: serde::Serialize>(value: &T, text: String, negative: bool) -> Outcome {
    Ok(Output {
        json: serde_json::to_value(value).map_err(|e| e.to_string())?,
        text,
        negative,
    })
}

fn load_valid(settings: &Settings, path: &Path, err: &mut dyn Write) -> Result<GraphFile, String> {
    let file = load(path, settings.strict, err)?;
    let report = check(&file.graph);
    if !report.ok {
        let kinds: Vec<String> = report
            .failures
            .iter()
            .map(|f| serde_json::to_value(f).map(|v| v["kind"].to_string()).unwrap_or_default())
            .collect();
        return Err(format!(
            "{}: graph is not valid ({}); run `gkm validate` for details",
            path.display(),
            kinds.join(", ")
        ));
    }
    Ok(file)
}

fn selected(settings: &Settings, file: &GraphFile) -> Result<Option<(Connection, SelectedConnection)>, String> {
    let choice = select_connection(&file.graph, file.connection.as_ref(), settings.connection)
        .map_err(|e| e.to_string())?;
    Ok(choice.map(|(conn, source, index)| {
        (
            conn,
            SelectedConnection { source, index, transitions: Vec::new(), paths: Vec::new() },
        )
    }))
}

pub fn connection_maps(g: &GkmGraph, conn: &Connection) -> Vec<BTreeMap<String, usize>> {
    (0..g.edge_count())
        .map(|e| {
            conn.edge_map(g, DirectedEdge::forward(e))
                .into_iter()
                .filter(|&(f, _)| f != e)
                .map(|(f, img)| (f.to_string(), img))
                .collect()
        })
        .collect()
}

pub fn validate(settings: &Settings, path: &Path, err: &mut dyn Write) -> Outcome {
    let file = load(path, settings.strict, err)?;
    let g = &file.graph;
    let out = ValidateOutput {
        name: g.name().map(str::to_string),
        vertices: g.vertex_names().to_vec(),
        edges: g.edge_count(),
        validation: check(g),
        elementary_divisors: (0..g.vertex_count()).map(|v| elementary_divisors_at(g, v)).collect(),
        isotropy: connected_isotropy_check(g),
    };
    output(&out, render::validate_text(&out), !out.validation.ok)
}

pub fn connections(settings: &Settings, path: &Path, limit: usize, err: &mut dyn Write) -> Outcome {
    let file = load_valid(settings, path, err)?;
    let g = &file.graph;
    let space = ConnectionSpace::new(g);
    let listed = space
        .iter()
        .take(limit)
        .enumerate()
        .map(|(i, c)| ConnectionListing { index: i as u64, forward: connection_maps(g, &c) })
        .collect();
    let mut sel = None;
    if let Some((conn, mut info)) = selected(settings, &file)? {
        for e in 0..g.edge_count() {
            for d in [DirectedEdge::forward(e), DirectedEdge::backward(e)] {
                info.transitions.push(transition(g, &conn, d).map_err(|e| e.to_string())?);
            }
        }
        info.paths = path_infos(g, &conn)?;
        sel = Some(info);
    }
    let out = ConnectionsOutput {
        name: g.name().map(str::to_string),
        vertices: g.vertex_names().to_vec(),
        count: u64::try_from(space.len()).unwrap_or(u64::MAX),
        choices_per_edge: space.choices_per_edge(),
        listed,
        selected: sel,
    };
    let negative = out.count == 0;
    output(&out, render::connections_text(&out), negative)
}

fn path_infos(g: &GkmGraph, conn: &Connection) -> Result<Vec<PathInfo>, String> {
    connection_paths(g, conn)
        .into_iter()
        .map(|p: ConnectionPath| {
            let holonomy = loop_holonomy(g, conn, &p).map_err(|e| e.to_string())?;
            let n = holonomy.len();
            Ok(PathInfo {
                vertices: p.vertices(g).iter().map(|&v| g.vertex_name(v).to_string()).collect(),
                identity: holonomy == small::identity(n),
                holonomy,
                edges: p.edges,
            })
        })
        .collect()
}

pub fn orientability(settings: &Settings, path: &Path, err: &mut dyn Write) -> Outcome {
    let file = load_valid(settings, path, err)?;
    let g = &file.graph;
    let mut out = OrientabilityOutput {
        name: g.name().map(str::to_string),
        vertices: g.vertex_names().to_vec(),
        connection: None,
        orientability: None,
    };
    if let Some((conn, info)) = selected(settings, &file)? {
        let verdict = is_orientable(g, &conn).map_err(|e| e.to_string())?;
        let space = ConnectionSpace::new(g);
        let mut disagreements = Vec::new();
        let mut cross_checked = 0;
        if space.len() <= gkm_core::verdict::CROSS_CHECK_LIMIT as u128 {
            for (i, other) in space.iter().enumerate() {
                cross_checked += 1;
                let o = is_orientable(g, &other).map_err(|e| e.to_string())?;
                if o.orientable != verdict.orientable {
                    disagreements.push(i as u64);
                }
            }
        }
        out.connection = Some(info);
        out.orientability = Some(OrientabilityBlock { verdict, cross_checked, disagreements });
    }
    let negative = !out.orientability.as_ref().is_some_and(|o| o.verdict.orientable);
    output(&out, render::orientability_text(&out), negative)
}

pub fn cohomology(
    settings: &Settings,
    path: &Path,
    ring: RingArg,
    bases: bool,
    err: &mut dyn Write,
) -> Outcome {
    let file = load_valid(settings, path, err)?;
    let g = &file.graph;
    let mut table = CohomologyTable::compute(g, settings.degree_cap);
    let pd = PoincareDuality::from_table(g, &mut table).map_err(|e| e.to_string())?;
    let ring = match ring {
        RingArg::Q => Ring::Q,
        RingArg::Z => Ring::Z,
    };
    let mut degrees = Vec::new();
    match ring {
        Ring::Q => {
            for (d, s) in table.degrees.iter().enumerate() {
                degrees.push(CohomologyDegree {
                    degree: s.degree,
                    dim: s.dim,
                    betti: Some(s.betti),
                    torsion: Vec::new(),
                    basis: bases.then(|| table.pieces[d].rows.clone()),
                });
            }
        }
        Ring::Z => {
            let free = z_freeness_with_table(g, &table).map_err(|e| e.to_string())?;
            for d in 0..=settings.degree_cap / 2 {
                let piece = ht_basis(g, 2 * d, Ring::Z);
                let integral = free.degrees.get(d);
                degrees.push(CohomologyDegree {
                    degree: 2 * d,
                    dim: piece.dim(),
                    betti: integral.map(|i| i.free_rank),
                    torsion: integral.map(|i| i.torsion.clone()).unwrap_or_default(),
                    basis: bases.then_some(piece.rows),
                });
            }
        }
    }
    let out = CohomologyOutput {
        name: g.name().map(str::to_string),
        ring,
        degree_cap: settings.degree_cap,
        degrees,
        betti: table.betti(),
        free_prediction_holds: table.free_prediction_holds(),
        generator_degrees: table.generator_degrees().iter().map(|d| 2 * d).collect(),
        poincare_duality: pd,
    };
    let negative = out.poincare_duality.pd != Some(true);
    output(&out, render::cohomology_text(&out), negative)
}

pub fn freeness(settings: &Settings, path: &Path, err: &mut dyn Write) -> Outcome {
    let file = load_valid(settings, path, err)?;
    let g = &file.graph;
    let table = CohomologyTable::compute(g, settings.degree_cap);
    let out = FreenessOutput {
        name: g.name().map(str::to_string),
        freeness: z_freeness_with_table(g, &table).map_err(|e| e.to_string())?,
    };
    let negative = !out.freeness.is_free();
    output(&out, render::freeness_text(&out), negative)
}

pub fn surface(settings: &Settings, path: &Path, emit: Option<&Path>, err: &mut dyn Write) -> Outcome {
    let file = load_valid(settings, path, err)?;
    let g = &file.graph;
    let mut out = SurfaceOutput {
        name: g.name().map(str::to_string),
        vertices: g.vertex_names().to_vec(),
        connection: None,
        surface: None,
        emitted: None,
    };
    if let Some((conn, info)) = selected(settings, &file)? {
        let complex = build_surface(g, &conn).map_err(|e| e.to_string())?;
        if let Some(target) = emit {
            let text = serde_json::to_string_pretty(&complex.presentation(g)).expect("json") + "\n";
            std::fs::write(target, text).map_err(|e| format!("{}: {e}", target.display()))?;
            out.emitted = Some(target.display().to_string());
        }
        let class = classify_surface(&complex);
        out.connection = Some(info);
        out.surface = Some(SurfaceBlock {
            path_lengths: complex.polygons.iter().map(ConnectionPath::len).collect(),
            vertices: complex.vertices,
            edges: complex.edges,
            polygons: complex.polygons.len(),
            paths: complex.polygons,
            class,
        });
    }
    let negative = out.surface.is_none();
    output(&out, render::surface_text(&out), negative)
}

pub fn verdict(settings: &Settings, path: &Path, err: &mut dyn Write) -> Outcome {
    let file = load(path, settings.strict, err)?;
    let options = ReportOptions { connection: settings.connection, degree_cap: settings.degree_cap };
    let report = realizability_report_with(&file.graph, file.connection.as_ref(), options)
        .map_err(|e| e.to_string())?;
    let negative = report.tier < Tier::RationalGkmRealizable;
    output(&report, render::verdict_text(&report), negative)
}
