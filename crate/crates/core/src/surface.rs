//! The closed surface obtained from the graph by attaching one disk along
//! every connection path.
//!
//! The complex has the vertices and edges of the graph as 0- and 1-cells and
//! one polygon per connection path, glued along the path's directed-edge
//! word.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::connection::{connection_paths, Connection, ConnectionPath};
use crate::error::{GkmError, Result};
use crate::graph::{DirectedEdge, GkmGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceComplex {
    pub vertices: usize,
    pub edges: usize,
    /// Boundary words, one per 2-cell.
    pub polygons: Vec<ConnectionPath>,
}

impl SurfaceComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.polygons.len() as i64
    }

    pub fn perimeter_total(&self) -> usize {
        self.polygons.iter().map(ConnectionPath::len).sum()
    }

    /// For every edge, its occurrences as `(polygon, direction)` with
    /// direction `+1` for forward traversal.
    pub fn occurrences(&self) -> Vec<Vec<(usize, i64)>> {
        let mut occ = vec![Vec::new(); self.edges];
        for (p, poly) in self.polygons.iter().enumerate() {
            for d in &poly.edges {
                occ[d.edge].push((p, if d.forward { 1 } else { -1 }));
            }
        }
        occ
    }

    /// Checks that every edge occurs exactly twice in the boundary words.
    pub fn check_closed(&self) -> Result<()> {
        for (e, occ) in self.occurrences().iter().enumerate() {
            if occ.len() != 2 {
                return Err(GkmError::Internal(format!(
                    "edge {e} occurs {} times in the polygon boundaries",
                    occ.len()
                )));
            }
        }
        Ok(())
    }

    /// Polygon-gluing presentation with vertex names, for external tools.
    pub fn presentation(&self, g: &GkmGraph) -> serde_json::Value {
        let letter = |d: &DirectedEdge| format!("{}{}", d.edge, if d.forward { "+" } else { "-" });
        serde_json::json!({
            "vertices": g.vertex_names(),
            "edges": g.edges().iter().enumerate().map(|(i, e)| serde_json::json!({
                "id": i,
                "from": g.vertex_name(e.from),
                "to": g.vertex_name(e.to),
            })).collect::<Vec<_>>(),
            "polygons": self.polygons.iter().map(|p| p.edges.iter().map(letter).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Assembles the complex from the connection paths of `conn`.
pub fn build_surface(g: &GkmGraph, conn: &Connection) -> Result<SurfaceComplex> {
    if g.valence() != Some(3) {
        return Err(GkmError::Precondition("surface needs a 3-valent graph".into()));
    }
    let complex = SurfaceComplex {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        polygons: connection_paths(g, conn),
    };
    complex.check_closed()?;
    Ok(complex)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceClass {
    pub chi: i64,
    pub orientable: bool,
    /// `"sphere"`, `"genus-g surface"` or `"crosscap-k surface"`.
    pub name: String,
    /// Genus `g` (orientable) or number of crosscaps `k`.
    pub parameter: i64,
}

impl SurfaceClass {
    fn from_parts(chi: i64, orientable: bool) -> Self {
        if orientable {
            let genus = (2 - chi) / 2;
            let name = if genus == 0 { "sphere".to_string() } else { format!("genus-{genus} surface") };
            SurfaceClass { chi, orientable, name, parameter: genus }
        } else {
            let k = 2 - chi;
            SurfaceClass { chi, orientable, name: format!("crosscap-{k} surface"), parameter: k }
        }
    }

    /// The name, with the usual symbol for the crosscap-1 surface.
    pub fn display_name(&self) -> String {
        if !self.orientable && self.parameter == 1 {
            format!("{} (RP²)", self.name)
        } else {
            self.name.clone()
        }
    }
}

/// Coherent orientation search: each polygon gets a sign, and the two
/// occurrences of an edge must then be traversed in opposite directions.
fn is_orientable(complex: &SurfaceComplex) -> bool {
    let occ = complex.occurrences();
    let mut adjacency = vec![Vec::new(); complex.polygons.len()];
    for pair in &occ {
        let [(p, dp), (q, dq)] = pair[..] else { continue };
        if p == q {
            if dp == dq {
                return false;
            }
            continue;
        }
        // s_q = -s_p * dp * dq
        adjacency[p].push((q, -dp * dq));
        adjacency[q].push((p, -dp * dq));
    }
    let mut sign = vec![0i64; complex.polygons.len()];
    for start in 0..sign.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for &(q, rel) in &adjacency[p] {
                let want = sign[p] * rel;
                if sign[q] == 0 {
                    sign[q] = want;
                    queue.push_back(q);
                } else if sign[q] != want {
                    return false;
                }
            }
        }
    }
    true
}

pub fn classify_surface(complex: &SurfaceComplex) -> SurfaceClass {
    SurfaceClass::from_parts(complex.euler_characteristic(), is_orientable(complex))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(letters: &[(usize, bool)]) -> ConnectionPath {
        ConnectionPath {
            edges: letters.iter().map(|&(edge, forward)| DirectedEdge { edge, forward }).collect(),
        }
    }

    #[test]
    fn projective_plane_from_one_digon() {
        // One vertex-free model: a single edge word a a.
        let c = SurfaceComplex {
            vertices: 1,
            edges: 1,
            polygons: vec![word(&[(0, true), (0, true)])],
        };
        let s = classify_surface(&c);
        assert_eq!((s.chi, s.orientable), (1, false));
        assert_eq!(s.display_name(), "crosscap-1 surface (RP²)");
    }

    #[test]
    fn sphere_from_two_digons() {
        let c = SurfaceComplex {
            vertices: 2,
            edges: 2,
            polygons: vec![word(&[(0, true), (1, false)]), word(&[(1, true), (0, false)])],
        };
        assert_eq!(classify_surface(&c).name, "sphere");
    }

    #[test]
    fn torus_and_klein_bottle() {
        let torus = SurfaceComplex {
            vertices: 1,
            edges: 2,
            polygons: vec![word(&[(0, true), (1, true), (0, false), (1, false)])],
        };
        assert_eq!(classify_surface(&torus).name, "genus-1 surface");
        let klein = SurfaceComplex {
            vertices: 1,
            edges: 2,
            polygons: vec![word(&[(0, true), (1, true), (0, false), (1, true)])],
        };
        assert_eq!(classify_surface(&klein).name, "crosscap-2 surface");
    }
}
