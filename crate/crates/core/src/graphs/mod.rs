//! Finite balls of infinite transitive and quasi-transitive graphs.
//!
//! A [`GraphSlice`] is the graph-metric ball of a given radius around a
//! base vertex, built breadth-first so vertex numbering is deterministic
//! and the ball of radius `r` is a prefix of the ball of radius `r + 1`
//! (vertices and edge list alike). Vertices at maximal distance form the
//! boundary; [`GraphSlice::contract_boundary`] identifies them into a
//! single hub, which is how wired quantities are computed.
//!
//! Supported families: hypercubic lattices, regular trees, biregular
//! trees (the one quasi-transitive family built in, with two vertex
//! orbits), free-group Cayley graphs with arbitrary finite generating
//! sets of reduced words, and surface-group Cayley graphs for the
//! standard genus-`g` presentation, explored with Dehn reduction.

pub mod words;

use std::collections::HashMap;
use std::io::Write;

use crate::error::{Error, Result};
use words::{format_word, letter, parse_word, DehnRewriter, Word};

/// Default cap on slice sizes. Trees grow exponentially, so radii are
/// limited by this budget rather than by a fixed cap on the radius.
pub const DEFAULT_VERTEX_BUDGET: usize = 2_000_000;

/// One of the built-in infinite graph families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    /// The integers with nearest-neighbor edges.
    Line,
    /// The hypercubic lattice `Z^d`.
    Lattice { dimension: usize },
    /// The infinite tree in which every vertex has the same degree.
    RegularTree { degree: usize },
    /// The bipartite tree with valencies `r` and `s`; two vertex orbits.
    BiregularTree { r: usize, s: usize },
    /// Cayley graph of the free group of the given rank with respect to
    /// an arbitrary finite set of reduced words.
    FreeGroupCayley { rank: usize, generators: Vec<Word> },
    /// Cayley graph of the genus-`g` surface group with the standard
    /// one-relator presentation; degree `4g`.
    SurfaceGroup { genus: usize },
}

impl GraphFamily {
    pub fn lattice(dimension: usize) -> Result<Self> {
        let f = GraphFamily::Lattice { dimension };
        f.validate()?;
        Ok(f)
    }

    pub fn regular_tree(degree: usize) -> Result<Self> {
        let f = GraphFamily::RegularTree { degree };
        f.validate()?;
        Ok(f)
    }

    pub fn biregular_tree(r: usize, s: usize) -> Result<Self> {
        let f = GraphFamily::BiregularTree { r, s };
        f.validate()?;
        Ok(f)
    }

    /// `generators` are words over `a..` (uppercase for inverses), e.g.
    /// `["a", "b", "ab"]`.
    pub fn free_group(rank: usize, generators: &[&str]) -> Result<Self> {
        let words = generators
            .iter()
            .map(|g| parse_word(g, rank).map_err(Error::InvalidInput))
            .collect::<Result<Vec<_>>>()?;
        let f = GraphFamily::FreeGroupCayley {
            rank,
            generators: words,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn surface_group(genus: usize) -> Result<Self> {
        let f = GraphFamily::SurfaceGroup { genus };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GraphFamily::Line => Ok(()),
            GraphFamily::Lattice { dimension } => {
                if *dimension < 1 {
                    return Err(Error::invalid("lattice dimension must be >= 1"));
                }
                Ok(())
            }
            GraphFamily::RegularTree { degree } => {
                if *degree < 2 {
                    return Err(Error::invalid("tree degree must be >= 2"));
                }
                Ok(())
            }
            GraphFamily::BiregularTree { r, s } => {
                if *r < 2 || *s < 2 {
                    return Err(Error::invalid("biregular valencies must be >= 2"));
                }
                Ok(())
            }
            GraphFamily::FreeGroupCayley { rank, generators } => {
                if *rank < 1 || *rank > 26 {
                    return Err(Error::invalid("free-group rank must be in 1..=26"));
                }
                if generators.is_empty() {
                    return Err(Error::invalid("free-group generating set is empty"));
                }
                let reduced: Vec<Word> =
                    generators.iter().map(|w| words::free_reduce(w)).collect();
                for (i, w) in reduced.iter().enumerate() {
                    if w.is_empty() {
                        return Err(Error::invalid("a generating word reduces to the identity"));
                    }
                    for v in &reduced[..i] {
                        if *v == *w || *v == words::invert_word(w) {
                            return Err(Error::invalid(format!(
                                "generating words {} and {} coincide up to inversion",
                                format_word(v),
                                format_word(w)
                            )));
                        }
                    }
                }
                Ok(())
            }
            GraphFamily::SurfaceGroup { genus } => {
                if *genus < 2 {
                    return Err(Error::invalid("surface genus must be >= 2"));
                }
                if *genus > 13 {
                    return Err(Error::invalid("surface genus limited to <= 13"));
                }
                Ok(())
            }
        }
    }

    /// Number of vertex orbits (1 for every built-in family except the
    /// biregular tree, which has 2, alternating along every edge).
    pub fn orbit_count(&self) -> usize {
        match self {
            GraphFamily::BiregularTree { .. } => 2,
            _ => 1,
        }
    }

    /// Degree of a vertex in the given orbit of the infinite graph.
    pub fn orbit_degree(&self, orbit: usize) -> usize {
        match self {
            GraphFamily::Line => 2,
            GraphFamily::Lattice { dimension } => 2 * dimension,
            GraphFamily::RegularTree { degree } => *degree,
            GraphFamily::BiregularTree { r, s } => {
                if orbit == 0 {
                    *r
                } else {
                    *s
                }
            }
            GraphFamily::FreeGroupCayley { generators, .. } => 2 * generators.len(),
            GraphFamily::SurfaceGroup { genus } => 4 * genus,
        }
    }

    /// Whether the infinite graph is a tree.
    pub fn is_tree(&self) -> bool {
        matches!(
            self,
            GraphFamily::Line
                | GraphFamily::Lattice { dimension: 1 }
                | GraphFamily::RegularTree { .. }
                | GraphFamily::BiregularTree { .. }
        ) || matches!(self, GraphFamily::FreeGroupCayley { rank, generators }
                if generators.len() == *rank
                    && generators.iter().all(|w| words::free_reduce(w).len() == 1))
    }

    pub fn describe(&self) -> String {
        match self {
            GraphFamily::Line => "line".into(),
            GraphFamily::Lattice { dimension } => format!("lattice({dimension})"),
            GraphFamily::RegularTree { degree } => format!("tree({degree})"),
            GraphFamily::BiregularTree { r, s } => format!("biregular({r},{s})"),
            GraphFamily::FreeGroupCayley { rank, generators } => {
                let gens: Vec<String> = generators.iter().map(|w| format_word(w)).collect();
                format!("free({rank};{})", gens.join(","))
            }
            GraphFamily::SurfaceGroup { genus } => format!("surface({genus})"),
        }
    }

    /// Orbit weights of the stabilizers. Transitive families get a single
    /// weight 1; the biregular tree gets `(r, s)`, the sizes of the two
    /// cyclic stabilizers in its canonical quasi-transitive group.
    pub fn default_orbit_weights(&self) -> OrbitWeights {
        match self {
            GraphFamily::BiregularTree { r, s } => {
                OrbitWeights::new(vec![*r as f64, *s as f64]).expect("valid weights")
            }
            _ => OrbitWeights::new(vec![1.0]).expect("valid weights"),
        }
    }

    /// Orbit-weighted mean degree `(1/T) * sum_i deg(o_i) / w_i`; equals
    /// the plain degree for transitive families.
    pub fn weighted_degree(&self, weights: &OrbitWeights) -> f64 {
        let t = weights.normalizer();
        (0..self.orbit_count())
            .map(|i| self.orbit_degree(i) as f64 / weights.stabilizer_weight[i])
            .sum::<f64>()
            / t
    }

    pub fn build_slice(&self, radius: usize) -> Result<GraphSlice> {
        self.build_slice_with_budget(radius, DEFAULT_VERTEX_BUDGET)
    }

    pub fn build_slice_with_budget(&self, radius: usize, budget: usize) -> Result<GraphSlice> {
        self.validate()?;
        match self {
            GraphFamily::Line => build_lattice(1, radius, budget),
            GraphFamily::Lattice { dimension } => build_lattice(*dimension, radius, budget),
            GraphFamily::RegularTree { degree } => build_tree(&[*degree], radius, budget),
            GraphFamily::BiregularTree { r, s } => build_tree(&[*r, *s], radius, budget),
            GraphFamily::FreeGroupCayley { generators, .. } => {
                build_cayley(generators, None, radius, budget)
            }
            GraphFamily::SurfaceGroup { genus } => {
                let dehn = DehnRewriter::surface(*genus);
                let gens: Vec<Word> = (0..2 * genus).map(|i| vec![letter(i, false)]).collect();
                build_cayley(&gens, Some(&dehn), radius, budget)
            }
        }
    }
}

/// Per-orbit stabilizer weights and their normalizer `T = sum 1/w_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitWeights {
    pub stabilizer_weight: Vec<f64>,
}

impl OrbitWeights {
    pub fn new(stabilizer_weight: Vec<f64>) -> Result<Self> {
        if stabilizer_weight.is_empty() {
            return Err(Error::invalid("orbit weights must be nonempty"));
        }
        if stabilizer_weight.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::invalid("orbit weights must be positive"));
        }
        Ok(OrbitWeights { stabilizer_weight })
    }

    pub fn orbit_count(&self) -> usize {
        self.stabilizer_weight.len()
    }

    /// `T = sum_i 1 / w_i`.
    pub fn normalizer(&self) -> f64 {
        self.stabilizer_weight.iter().map(|w| 1.0 / w).sum()
    }
}

/// A finite ball (or a derived finite graph: a contracted ball, a
/// percolation cluster) with base vertex, boundary marking and orbit
/// labels.
///
/// Balls produced by [`GraphFamily::build_slice`] store every edge with
/// `tail < head` (tail = smaller breadth-first id); derived graphs keep
/// the orientation of the edges they came from, so stored current values
/// never need a sign fix.
#[derive(Clone, Debug)]
pub struct GraphSlice {
    pub vertex_count: usize,
    /// `(tail, head)` per edge. Parallel edges and self-loops can occur
    /// after boundary contraction and are kept as distinct entries.
    pub edges: Vec<(u32, u32)>,
    pub base_vertex: u32,
    /// Vertex ids at maximal radius (or, for derived graphs, inherited
    /// from the ambient slice). Sorted ascending.
    pub boundary: Vec<u32>,
    pub vertex_orbit: Vec<u32>,
    pub edge_orbit: Vec<u32>,
    pub radius: usize,
    /// Graph distance from the base vertex at construction time.
    pub distance: Vec<u32>,
}

/// Compressed adjacency built from an edge list; self-loops are skipped
/// (they never carry current and never change connectivity).
pub struct Adjacency {
    offsets: Vec<usize>,
    /// `(neighbor, edge index)` pairs.
    entries: Vec<(u32, u32)>,
}

impl Adjacency {
    pub fn neighbors(&self, v: usize) -> &[(u32, u32)] {
        &self.entries[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }
}

impl GraphSlice {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_boundary(&self, v: u32) -> bool {
        self.boundary.binary_search(&v).is_ok()
    }

    pub fn boundary_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.vertex_count];
        for &b in &self.boundary {
            mask[b as usize] = true;
        }
        mask
    }

    pub fn adjacency(&self) -> Adjacency {
        let mut deg = vec![0usize; self.vertex_count];
        for &(t, h) in &self.edges {
            if t != h {
                deg[t as usize] += 1;
                deg[h as usize] += 1;
            }
        }
        let mut offsets = vec![0usize; self.vertex_count + 1];
        for v in 0..self.vertex_count {
            offsets[v + 1] = offsets[v] + deg[v];
        }
        let mut entries = vec![(0u32, 0u32); offsets[self.vertex_count]];
        let mut cursor = offsets.clone();
        for (i, &(t, h)) in self.edges.iter().enumerate() {
            if t == h {
                continue;
            }
            entries[cursor[t as usize]] = (h, i as u32);
            cursor[t as usize] += 1;
            entries[cursor[h as usize]] = (t, i as u32);
            cursor[h as usize] += 1;
        }
        Adjacency { offsets, entries }
    }

    /// Ascending indices of non-loop edges incident to `v`.
    pub fn edges_at(&self, v: u32) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(t, h))| (t == v || h == v) && t != h)
            .map(|(i, _)| i)
            .collect()
    }

    /// Lowest vertex id in the given orbit; orbit 0 is the base vertex.
    pub fn orbit_representative(&self, orbit: u32) -> Option<u32> {
        if orbit == 0 {
            return Some(self.base_vertex);
        }
        self.vertex_orbit
            .iter()
            .position(|&o| o == orbit)
            .map(|v| v as u32)
    }

    /// Identify all boundary vertices into a single hub vertex.
    ///
    /// Edge indices are preserved one-to-one (so cochain values pull back
    /// by identity); parallel edges created by the contraction are kept
    /// as distinct edges, and boundary-boundary edges become self-loops
    /// on the hub. Interior vertices are renumbered order-preservingly;
    /// the hub gets the last id.
    pub fn contract_boundary(&self) -> Result<GraphSlice> {
        if self.boundary.is_empty() {
            return Err(Error::invalid("contract_boundary: slice has no boundary"));
        }
        if self.is_boundary(self.base_vertex) {
            return Err(Error::invalid(
                "contract_boundary: base vertex lies on the boundary",
            ));
        }
        let mask = self.boundary_mask();
        let interior_count = self.vertex_count - self.boundary.len();
        let hub = interior_count as u32;
        let mut map = vec![0u32; self.vertex_count];
        let mut next = 0u32;
        for v in 0..self.vertex_count {
            if mask[v] {
                map[v] = hub;
            } else {
                map[v] = next;
                next += 1;
            }
        }
        let edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .map(|&(t, h)| (map[t as usize], map[h as usize]))
            .collect();
        let mut vertex_orbit = vec![0u32; interior_count + 1];
        let mut distance = vec![0u32; interior_count + 1];
        for v in 0..self.vertex_count {
            if !mask[v] {
                vertex_orbit[map[v] as usize] = self.vertex_orbit[v];
                distance[map[v] as usize] = self.distance[v];
            }
        }
        distance[hub as usize] = self.radius as u32;
        Ok(GraphSlice {
            vertex_count: interior_count + 1,
            edges,
            base_vertex: map[self.base_vertex as usize],
            boundary: vec![hub],
            vertex_orbit,
            edge_orbit: self.edge_orbit.clone(),
            radius: self.radius,
            distance,
        })
    }

    /// Plain-text export: a header line, one `tail head orbit` triple per
    /// edge, then the boundary ids. Byte-identical across runs for a
    /// fixed family and radius.
    pub fn write_edge_list<W: Write>(&self, out: &mut W) -> Result<()> {
        writeln!(
            out,
            "#vertices {} #edges {} base {} radius {}",
            self.vertex_count,
            self.edges.len(),
            self.base_vertex,
            self.radius
        )?;
        for (i, &(t, h)) in self.edges.iter().enumerate() {
            writeln!(out, "{} {} {}", t, h, self.edge_orbit[i])?;
        }
        write!(out, "#boundary")?;
        for &b in &self.boundary {
            write!(out, " {b}")?;
        }
        writeln!(out)?;
        Ok(())
    }
}

fn check_budget(count: usize, budget: usize, what: &str) -> Result<()> {
    if count > budget {
        return Err(Error::Resource {
            budget,
            what: what.to_owned(),
        });
    }
    Ok(())
}

/// Trees, generated layer by layer with no hashing. `valencies` has one
/// entry per orbit; layers alternate orbits.
fn build_tree(valencies: &[usize], radius: usize, budget: usize) -> Result<GraphSlice> {
    let orbits = valencies.len();
    let mut distance: Vec<u32> = vec![0];
    let mut vertex_orbit: Vec<u32> = vec![0];
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut edge_orbit: Vec<u32> = Vec::new();
    let mut layer_start = 0usize;
    let mut layer_end = 1usize;
    for depth in 1..=radius {
        let mut next_end = layer_end;
        for parent in layer_start..layer_end {
            let orbit = vertex_orbit[parent] as usize;
            let children = if depth == 1 {
                valencies[orbit]
            } else {
                valencies[orbit] - 1
            };
            for _ in 0..children {
                let child = next_end;
                check_budget(child + 1, budget, "tree slice")?;
                distance.push(depth as u32);
                vertex_orbit.push((depth % orbits) as u32);
                edges.push((parent as u32, child as u32));
                edge_orbit.push(0);
                next_end += 1;
            }
        }
        layer_start = layer_end;
        layer_end = next_end;
    }
    let boundary: Vec<u32> = if radius == 0 {
        Vec::new()
    } else {
        (layer_start as u32..layer_end as u32).collect()
    };
    Ok(GraphSlice {
        vertex_count: layer_end,
        edges,
        base_vertex: 0,
        boundary,
        vertex_orbit,
        edge_orbit,
        radius,
        distance,
    })
}

/// The L1 ball of `Z^d`, breadth-first from the origin; edge orbit =
/// coordinate direction.
fn build_lattice(dimension: usize, radius: usize, budget: usize) -> Result<GraphSlice> {
    let mut ids: HashMap<Vec<i32>, u32> = HashMap::new();
    let mut coords: Vec<Vec<i32>> = Vec::new();
    let mut distance: Vec<u32> = Vec::new();
    let origin = vec![0i32; dimension];
    ids.insert(origin.clone(), 0);
    coords.push(origin);
    distance.push(0);
    let mut layer_start = 0usize;
    let mut layer_end = 1usize;
    for depth in 1..=radius {
        for v in layer_start..layer_end {
            let here = coords[v].clone();
            for dir in 0..dimension {
                for step in [1i32, -1i32] {
                    let mut n = here.clone();
                    n[dir] += step;
                    if n.iter().map(|x| x.unsigned_abs() as usize).sum::<usize>() == depth
                        && !ids.contains_key(&n)
                    {
                        let id = coords.len() as u32;
                        check_budget(coords.len() + 1, budget, "lattice slice")?;
                        ids.insert(n.clone(), id);
                        coords.push(n);
                        distance.push(depth as u32);
                    }
                }
            }
        }
        layer_start = layer_end;
        layer_end = coords.len();
    }
    let n = coords.len();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut edge_orbit: Vec<u32> = Vec::new();
    for v in 0..n {
        let mut incoming: Vec<(u32, u32)> = Vec::new();
        for dir in 0..dimension {
            for step in [1i32, -1i32] {
                let mut nb = coords[v].clone();
                nb[dir] += step;
                if let Some(&u) = ids.get(&nb) {
                    if (u as usize) < v {
                        incoming.push((u, dir as u32));
                    }
                }
            }
        }
        incoming.sort_unstable();
        for (u, dir) in incoming {
            edges.push((u, v as u32));
            edge_orbit.push(dir);
        }
    }
    let boundary: Vec<u32> = if radius == 0 {
        Vec::new()
    } else {
        (layer_start as u32..layer_end as u32).collect()
    };
    Ok(GraphSlice {
        vertex_count: n,
        edges,
        base_vertex: 0,
        boundary,
        vertex_orbit: vec![0; n],
        edge_orbit,
        radius,
        distance,
    })
}

/// Cayley-graph ball via breadth-first search over canonical word forms.
/// With `dehn` set, words are canonicalized with Dehn reduction (surface
/// groups); otherwise plain free reduction (free groups).
fn build_cayley(
    generators: &[Word],
    dehn: Option<&DehnRewriter>,
    radius: usize,
    budget: usize,
) -> Result<GraphSlice> {
    let canonical = |w: &[words::Letter]| -> Word {
        match dehn {
            Some(d) => d.canonical(w),
            None => words::free_reduce(w),
        }
    };
    // Steps: generator words and their inverses, in generator order.
    let steps: Vec<(Word, u32)> = generators
        .iter()
        .enumerate()
        .flat_map(|(i, g)| {
            [
                (words::free_reduce(g), i as u32),
                (words::invert_word(&words::free_reduce(g)), i as u32),
            ]
        })
        .collect();
    let mut ids: HashMap<Word, u32> = HashMap::new();
    let mut elements: Vec<Word> = Vec::new();
    let mut distance: Vec<u32> = Vec::new();
    ids.insert(Word::new(), 0);
    elements.push(Word::new());
    distance.push(0);
    let mut layer_start = 0usize;
    let mut layer_end = 1usize;
    for depth in 1..=radius {
        for v in layer_start..layer_end {
            let here = elements[v].clone();
            for (step, _) in &steps {
                let mut w = here.clone();
                w.extend_from_slice(step);
                let w = canonical(&w);
                if !ids.contains_key(&w) {
                    let id = elements.len() as u32;
                    check_budget(elements.len() + 1, budget, "Cayley slice")?;
                    ids.insert(w.clone(), id);
                    elements.push(w);
                    distance.push(depth as u32);
                }
            }
        }
        layer_start = layer_end;
        layer_end = elements.len();
    }
    let n = elements.len();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut edge_orbit: Vec<u32> = Vec::new();
    for v in 0..n {
        let mut incoming: Vec<(u32, u32)> = Vec::new();
        for (step, orbit) in &steps {
            let mut w = elements[v].clone();
            w.extend_from_slice(step);
            let w = canonical(&w);
            if let Some(&u) = ids.get(&w) {
                if (u as usize) < v {
                    incoming.push((u, *orbit));
                }
            }
        }
        incoming.sort_unstable();
        incoming.dedup();
        for (u, orbit) in incoming {
            edges.push((u, v as u32));
            edge_orbit.push(orbit);
        }
    }
    let boundary: Vec<u32> = if radius == 0 {
        Vec::new()
    } else {
        (layer_start as u32..layer_end as u32).collect()
    };
    Ok(GraphSlice {
        vertex_count: n,
        edges,
        base_vertex: 0,
        boundary,
        vertex_orbit: vec![0; n],
        edge_orbit,
        radius,
        distance,
    })
}
