//! Finite simplicial complexes given by their facets.
//!
//! Faces are bitmasks over at most [`MAX_VERTICES`] vertices. The empty face
//! is a face of every complex, with dimension −1. All listings use the
//! graded-lexicographic order: first by size, then lexicographically by the
//! increasing vertex sequence.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ambient vertex count a [`Face`] can address.
pub const MAX_VERTICES: usize = 32;

/// Default cap for [`enumerate_all_complexes`].
pub const DEFAULT_ENUMERATION_CAP: usize = 5;

/// Hard ceiling for exhaustive enumeration; membership is tracked in a `u128`.
const ENUMERATION_HARD_CAP: usize = 7;

/// Largest ambient vertex count accepted by [`random_complex`].
pub const RANDOM_MAX_VERTICES: usize = 16;

/// A set of vertices, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u32);

impl Face {
    pub const EMPTY: Face = Face(0);

    /// Builds a face from vertex indices in any order; duplicates collapse.
    ///
    /// Panics if a vertex is `>= MAX_VERTICES`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Face {
        let mut bits = 0u32;
        for v in vertices {
            assert!(
                v < MAX_VERTICES,
                "vertex {v} exceeds the {MAX_VERTICES}-vertex limit"
            );
            bits |= 1 << v;
        }
        Face(bits)
    }

    pub fn singleton(v: usize) -> Face {
        Face::from_vertices([v])
    }

    /// The face on vertices `0..n`.
    pub fn full(n: usize) -> Face {
        assert!(n <= MAX_VERTICES);
        if n == 32 {
            Face(u32::MAX)
        } else {
            Face((1u32 << n) - 1)
        }
    }

    pub const fn from_bits(bits: u32) -> Face {
        Face(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `|σ| − 1`, so the empty face has dimension −1.
    pub const fn dim(self) -> isize {
        self.len() as isize - 1
    }

    pub const fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    pub const fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub const fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub const fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub const fn is_disjoint(self, other: Face) -> bool {
        self.0 & other.0 == 0
    }

    pub fn with(self, v: usize) -> Face {
        self.union(Face::singleton(v))
    }

    pub fn without(self, v: usize) -> Face {
        self.difference(Face::singleton(v))
    }

    /// Largest vertex index plus one; zero for the empty face.
    pub const fn span(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    /// Position of `v` in the increasing vertex sequence, if present.
    pub fn position(self, v: usize) -> Option<usize> {
        self.contains(v)
            .then(|| (self.0 & ((1u32 << v) - 1)).count_ones() as usize)
    }

    /// All subsets of this face, in no particular order.
    pub fn subsets(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 {
                None
            } else {
                Some((cur - 1) & full)
            };
            Some(Face(cur))
        })
    }

    /// The faces obtained by deleting a single vertex.
    pub fn boundary(self) -> impl Iterator<Item = Face> {
        self.vertices().map(move |v| self.without(v))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }
}

pub struct Vertices(u32);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // The lowest differing vertex belongs to `self`.
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.vertices())
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let vertices = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&v) = vertices.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(serde::de::Error::custom(
                "face vertices must be strictly increasing",
            ));
        }
        Ok(Face::from_vertices(vertices))
    }
}

/// Face counts by dimension, starting at dimension −1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    /// Number of faces of dimension `dim` (−1 ≤ dim).
    pub fn get(&self, dim: isize) -> usize {
        usize::try_from(dim + 1)
            .ok()
            .and_then(|i| self.0.get(i).copied())
            .unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// A simplicial complex on the vertex set `0..n`, stored by its facets.
///
/// Every vertex is a face unless the complex was built with
/// [`SimplicialComplex::from_facets_with_ghosts`]. The irrelevant complex
/// `{∅}` has `n = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    pub fn from_facets<I: IntoIterator<Item = Face>>(n: usize, facets: I) -> Result<Self> {
        Self::build(n, facets, false)
    }

    /// Like [`from_facets`](Self::from_facets) but allows vertices of `0..n`
    /// that lie in no face. Only meaningful for ideal-level experiments.
    pub fn from_facets_with_ghosts<I: IntoIterator<Item = Face>>(
        n: usize,
        facets: I,
    ) -> Result<Self> {
        Self::build(n, facets, true)
    }

    pub fn from_vertex_lists(n: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut faces = Vec::with_capacity(facets.len());
        for facet in facets {
            if let Some(&v) = facet.iter().find(|&&v| v >= n.min(MAX_VERTICES)) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            faces.push(Face::from_vertices(facet.iter().copied()));
        }
        Self::from_facets(n, faces)
    }

    fn build<I: IntoIterator<Item = Face>>(
        n: usize,
        facets: I,
        allow_ghosts: bool,
    ) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        let ambient = Face::full(n);
        let mut candidates: Vec<Face> = Vec::new();
        for f in facets {
            if !f.is_subset(ambient) {
                let vertex = f.difference(ambient).vertices().next().unwrap_or(0);
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            candidates.push(f);
        }
        let facets = maximal_elements(candidates);
        if !allow_ghosts {
            let covered = facets.iter().fold(Face::EMPTY, |acc, f| acc.union(*f));
            if let Some(v) = ambient.difference(covered).vertices().next() {
                return Err(Error::UncoveredVertex(v));
            }
        }
        Ok(SimplicialComplex { n, facets })
    }

    /// The full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Self {
        Self::from_facets(n, [Face::full(n)]).expect("the full simplex is valid")
    }

    /// The boundary of the simplex on `n ≥ 1` vertices.
    pub fn simplex_boundary(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_facets(n, Face::full(n).boundary()).expect("the simplex boundary is valid")
    }

    /// `{∅}`, the complex with no vertices.
    pub fn irrelevant() -> Self {
        SimplicialComplex {
            n: 0,
            facets: vec![Face::EMPTY],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_set(&self) -> Face {
        Face::full(self.n)
    }

    /// Facets in graded-lex order.
    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn contains(&self, face: Face) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    /// All faces, ∅ included, in graded-lex order.
    pub fn faces(&self) -> Vec<Face> {
        let mut all = BTreeSet::new();
        for f in &self.facets {
            all.extend(f.subsets());
        }
        all.into_iter().collect()
    }

    /// Faces of a fixed dimension, graded-lex.
    pub fn faces_of_dim(&self, dim: isize) -> Vec<Face> {
        let mut all = BTreeSet::new();
        for f in &self.facets {
            all.extend(f.subsets().filter(|s| s.dim() == dim));
        }
        all.into_iter().collect()
    }

    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn f_vector(&self) -> FVector {
        let mut counts = vec![0usize; (self.dim() + 2) as usize];
        for f in self.faces() {
            counts[(f.dim() + 1) as usize] += 1;
        }
        FVector(counts)
    }

    fn require(&self, face: Face) -> Result<()> {
        if self.contains(face) {
            Ok(())
        } else {
            Err(Error::NotAFace(face))
        }
    }

    /// `lk σ = {τ ∈ Σ : τ ∩ σ = ∅, τ ∪ σ ∈ Σ}` on its own vertex set.
    pub fn link(&self, sigma: Face) -> Result<LabeledComplex> {
        self.require(sigma)?;
        let facets = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset(**f))
            .map(|f| f.difference(sigma));
        Ok(LabeledComplex::from_ambient_facets(maximal_elements(
            facets.collect(),
        )))
    }

    /// `st σ = {τ ∈ Σ : σ ⊆ τ}`, graded-lex.
    pub fn star(&self, sigma: Face) -> Result<Vec<Face>> {
        self.require(sigma)?;
        let mut faces = BTreeSet::new();
        for f in self.facets.iter().filter(|f| sigma.is_subset(**f)) {
            faces.extend(f.difference(sigma).subsets().map(|s| s.union(sigma)));
        }
        Ok(faces.into_iter().collect())
    }

    /// The smallest subcomplex containing `st σ`, on its own vertex set.
    pub fn closed_star(&self, sigma: Face) -> Result<LabeledComplex> {
        self.require(sigma)?;
        let facets: Vec<Face> = self
            .facets
            .iter()
            .copied()
            .filter(|f| sigma.is_subset(*f))
            .collect();
        Ok(LabeledComplex::from_ambient_facets(facets))
    }

    /// The subcomplex induced on a vertex subset, kept on the ambient labels.
    pub fn induced(&self, vertices: Face) -> SimplicialComplex {
        let facets = maximal_elements(
            self.facets
                .iter()
                .map(|f| f.intersection(vertices))
                .collect(),
        );
        SimplicialComplex { n: self.n, facets }
    }

    /// Inclusion-minimal subsets of `0..n` that are not faces, graded-lex.
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        let ambient = self.vertex_set();
        let mut found = BTreeSet::new();
        for f in self.faces() {
            for v in ambient.difference(f).vertices() {
                let candidate = f.with(v);
                if !self.contains(candidate) && candidate.boundary().all(|b| self.contains(b)) {
                    found.insert(candidate);
                }
            }
        }
        found.into_iter().collect()
    }

    /// Adds a new vertex `n` joined to every facet.
    pub fn cone(&self) -> SimplicialComplex {
        let apex = self.n;
        let facets = self.facets.iter().map(|f| f.with(apex));
        SimplicialComplex::from_facets(self.n + 1, facets).expect("cone over a valid complex")
    }

    /// A compact, canonical text form such as `4:01|23`.
    pub fn encoding(&self) -> String {
        let facets: Vec<String> = self
            .facets
            .iter()
            .map(|f| {
                f.vertices()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(".")
            })
            .collect();
        format!("{}:{}", self.n, facets.join("|"))
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SimplicialComplex(n={}, facets={:?})",
            self.n, self.facets
        )
    }
}

impl PartialOrd for SimplicialComplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SimplicialComplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.facets.cmp(&other.facets))
    }
}

/// A complex living on a subset of some ambient vertex set: the re-indexed
/// complex plus the map from its vertices back to ambient labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledComplex {
    pub complex: SimplicialComplex,
    /// `labels[i]` is the ambient vertex behind local vertex `i`; increasing.
    pub labels: Vec<usize>,
}

impl LabeledComplex {
    fn from_ambient_facets(facets: Vec<Face>) -> Self {
        let mask = facets.iter().fold(Face::EMPTY, |acc, f| acc.union(*f));
        let labels = mask.to_vec();
        let local: Vec<Face> = facets.iter().map(|f| reindex(*f, &labels)).collect();
        let complex = SimplicialComplex::from_facets(labels.len(), local)
            .expect("facets cover their own vertex set");
        LabeledComplex { complex, labels }
    }

    /// Ambient vertices occurring in some face.
    pub fn mask(&self) -> Face {
        Face::from_vertices(self.labels.iter().copied())
    }

    pub fn to_ambient(&self, local: Face) -> Face {
        Face::from_vertices(local.vertices().map(|v| self.labels[v]))
    }

    /// Local face for an ambient face, if all its vertices are labels.
    pub fn from_ambient(&self, ambient: Face) -> Option<Face> {
        ambient
            .is_subset(self.mask())
            .then(|| reindex(ambient, &self.labels))
    }

    pub fn ambient_faces(&self) -> Vec<Face> {
        let mut faces: Vec<Face> = self
            .complex
            .faces()
            .into_iter()
            .map(|f| self.to_ambient(f))
            .collect();
        faces.sort();
        faces
    }

    pub fn ambient_facets(&self) -> Vec<Face> {
        let mut facets: Vec<Face> = self
            .complex
            .facets()
            .iter()
            .map(|f| self.to_ambient(*f))
            .collect();
        facets.sort();
        facets
    }
}

fn reindex(face: Face, labels: &[usize]) -> Face {
    Face::from_vertices(face.vertices().map(|v| {
        labels
            .binary_search(&v)
            .expect("vertex is among the labels")
    }))
}

/// Drops faces contained in others and sorts the rest graded-lex.
pub(crate) fn maximal_elements(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|k| f.is_subset(*k)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

/// Drops faces containing others and sorts the rest graded-lex.
pub(crate) fn minimal_elements(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort();
    faces.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|k| k.is_subset(f)) {
            kept.push(f);
        }
    }
    kept
}

/// Every simplicial complex on exactly the vertex set `0..n`, with the
/// default cap of [`DEFAULT_ENUMERATION_CAP`] vertices.
pub fn enumerate_all_complexes(n: usize) -> Result<ComplexEnumerator> {
    enumerate_all_complexes_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_all_complexes_capped(n: usize, cap: usize) -> Result<ComplexEnumerator> {
    let cap = cap.min(ENUMERATION_HARD_CAP);
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    let mut candidates: Vec<Face> = Face::full(n).subsets().filter(|f| f.len() >= 2).collect();
    candidates.sort();
    // Every vertex and ∅ are always present.
    let base = Face::full(n)
        .subsets()
        .filter(|f| f.len() <= 1)
        .fold(0u128, |acc, f| acc | (1u128 << f.bits()));
    Ok(ComplexEnumerator {
        n,
        candidates,
        stack: vec![(0, base)],
    })
}

/// Depth-first enumeration of downward-closed families, deciding each
/// candidate face of size ≥ 2 in graded-lex order (exclusion first).
pub struct ComplexEnumerator {
    n: usize,
    candidates: Vec<Face>,
    stack: Vec<(usize, u128)>,
}

impl Iterator for ComplexEnumerator {
    type Item = SimplicialComplex;

    fn next(&mut self) -> Option<SimplicialComplex> {
        let (mut k, mut members) = self.stack.pop()?;
        loop {
            let Some(&face) = self.candidates.get(k) else {
                let faces: Vec<Face> = (0..1u32 << self.n)
                    .filter(|b| members & (1u128 << b) != 0)
                    .map(Face::from_bits)
                    .collect();
                let complex = if self.n == 0 {
                    SimplicialComplex::irrelevant()
                } else {
                    SimplicialComplex::from_facets(self.n, maximal_elements(faces))
                        .expect("enumerated family covers every vertex")
                };
                return Some(complex);
            };
            let closed = face.boundary().all(|b| members & (1u128 << b.bits()) != 0);
            if closed {
                self.stack.push((k + 1, members | (1u128 << face.bits())));
            }
            k += 1;
            members &= !(1u128 << face.bits());
        }
    }
}

/// A seeded random complex on `0..n`: each nonempty subset is a candidate
/// facet with probability `density`; the result is minimalized and any
/// uncovered vertex is added as a facet of its own.
pub fn random_complex(n: usize, density: f64, seed: u64) -> Result<SimplicialComplex> {
    if n > RANDOM_MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: RANDOM_MAX_VERTICES,
        });
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Input(format!("density {density} is not in [0, 1]")));
    }
    if n == 0 {
        return Ok(SimplicialComplex::irrelevant());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut subsets: Vec<Face> = Face::full(n).subsets().filter(|f| !f.is_empty()).collect();
    subsets.sort();
    let mut chosen: Vec<Face> = subsets
        .into_iter()
        .filter(|_| rng.gen_bool(density))
        .collect();
    let covered = chosen.iter().fold(Face::EMPTY, |acc, f| acc.union(*f));
    chosen.extend(
        Face::full(n)
            .difference(covered)
            .vertices()
            .map(Face::singleton),
    );
    SimplicialComplex::from_facets(n, chosen)
}

/// A seeded random pure complex on `0..n` of dimension `dim`: each
/// `(dim + 1)`-subset is a facet with probability `density`, and every
/// uncovered vertex gets a random facet through it.
pub fn random_pure_complex(
    n: usize,
    dim: usize,
    density: f64,
    seed: u64,
) -> Result<SimplicialComplex> {
    if n > RANDOM_MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: RANDOM_MAX_VERTICES,
        });
    }
    if dim >= n {
        return Err(Error::Input(format!(
            "a {dim}-dimensional complex needs more than {n} vertices"
        )));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Input(format!("density {density} is not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<Face> = Face::full(n)
        .subsets()
        .filter(|f| f.len() == dim + 1)
        .collect();
    candidates.sort();
    let mut chosen: Vec<Face> = candidates
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(density))
        .collect();
    for v in 0..n {
        if !chosen.iter().any(|f| f.contains(v)) {
            let through: Vec<Face> = candidates
                .iter()
                .copied()
                .filter(|f| f.contains(v))
                .collect();
            chosen.push(through[rng.gen_range(0..through.len())]);
        }
    }
    SimplicialComplex::from_facets(n, chosen)
}

/// Small named complexes used throughout tests and examples.
pub mod catalog {
    use super::{Face, SimplicialComplex};

    fn build(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(
            n,
            facets
                .iter()
                .map(|f| Face::from_vertices(f.iter().copied())),
        )
        .expect("catalog complexes are valid")
    }

    pub fn two_points() -> SimplicialComplex {
        build(2, &[&[0], &[1]])
    }

    pub fn full_triangle() -> SimplicialComplex {
        SimplicialComplex::simplex(3)
    }

    pub fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::simplex_boundary(3)
    }

    pub fn two_disjoint_edges() -> SimplicialComplex {
        build(4, &[&[0, 1], &[2, 3]])
    }

    pub fn tetrahedron_boundary() -> SimplicialComplex {
        SimplicialComplex::simplex_boundary(4)
    }

    /// The six-vertex real projective plane.
    pub fn rp2_six() -> SimplicialComplex {
        build(
            6,
            &[
                &[0, 1, 4],
                &[0, 1, 5],
                &[0, 2, 3],
                &[0, 2, 5],
                &[0, 3, 4],
                &[1, 2, 3],
                &[1, 2, 4],
                &[1, 3, 5],
                &[2, 4, 5],
                &[3, 4, 5],
            ],
        )
    }
}
