//! Sheaves of finite-dimensional vector spaces on the face poset of a
//! simplicial complex.
//!
//! The open sets are the subcomplexes, so a sheaf is a stalk `F_σ` per face
//! together with restrictions `F_σ → F_τ` for `τ ⊆ σ`. Only restrictions
//! along covering pairs (`|σ ∖ τ| = 1`) are stored; longer ones are
//! composites, which is well defined once the squares commute.
//!
//! Cohomology is computed from the cochain complex of strictly decreasing
//! chains `σ_0 ⊋ ⋯ ⊋ σ_k` with coefficients in `F_{σ_k}`. Its degree-0
//! cohomology is the module of global sections.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::complex::{maximal_elements, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::face_ring::MultiDegree;
use crate::homology::{
    homology_dims, reduced_cohomology, BettiVector, Direction, FiniteChainComplex,
};
use crate::linalg::{ExactMatrix, FieldSpec};

/// The faces of a complex as a poset, with or without the empty face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePoset {
    complex: SimplicialComplex,
    include_empty: bool,
    points: Vec<Face>,
}

impl FacePoset {
    /// All faces, ∅ included.
    pub fn full(complex: &SimplicialComplex) -> Self {
        FacePoset {
            complex: complex.clone(),
            include_empty: true,
            points: complex.faces(),
        }
    }

    /// The subspace `Σ ∖ {∅}`.
    pub fn punctured(complex: &SimplicialComplex) -> Self {
        let points = complex
            .faces()
            .into_iter()
            .filter(|f| !f.is_empty())
            .collect();
        FacePoset {
            complex: complex.clone(),
            include_empty: false,
            points,
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn includes_empty(&self) -> bool {
        self.include_empty
    }

    /// Included faces, graded-lex.
    pub fn points(&self) -> &[Face] {
        &self.points
    }

    pub fn index_of(&self, face: Face) -> Option<usize> {
        self.points.binary_search(&face).ok()
    }

    pub fn contains(&self, face: Face) -> bool {
        self.index_of(face).is_some()
    }

    /// `(σ, τ)` index pairs with `τ ⋖ σ`, both included.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for (i, sigma) in self.points.iter().enumerate() {
            for tau in sigma.boundary() {
                if let Some(j) = self.index_of(tau) {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }

    /// Every strictly decreasing chain of included faces, grouped by
    /// length: `chains[k]` holds the chains `σ_0 ⊋ ⋯ ⊋ σ_k`.
    fn chains(&self) -> Vec<Vec<Vec<usize>>> {
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); self.points.len()];
        for (i, sigma) in self.points.iter().enumerate() {
            for (j, tau) in self.points.iter().enumerate() {
                if tau.len() < sigma.len() && tau.is_subset(*sigma) {
                    below[i].push(j);
                }
            }
        }
        let mut chains: Vec<Vec<Vec<usize>>> =
            vec![(0..self.points.len()).map(|i| vec![i]).collect()];
        loop {
            let next: Vec<Vec<usize>> = chains
                .last()
                .expect("at least one level")
                .iter()
                .flat_map(|c| {
                    let last = *c.last().expect("chains are nonempty");
                    below[last].iter().map(move |&j| {
                        let mut longer = c.clone();
                        longer.push(j);
                        longer
                    })
                })
                .collect();
            if next.is_empty() {
                break;
            }
            chains.push(next);
        }
        chains
    }
}

/// A sheaf given by stalk dimensions and covering restrictions.
#[derive(Clone, Debug)]
pub struct PosetSheaf {
    field: FieldSpec,
    poset: Arc<FacePoset>,
    stalks: Vec<usize>,
    /// Keyed by `(σ, τ)` point indices, `τ ⋖ σ`; shape `F_τ × F_σ`.
    restrictions: BTreeMap<(usize, usize), ExactMatrix>,
}

impl PosetSheaf {
    /// Validates shapes and commutativity.
    pub fn new(
        field: FieldSpec,
        poset: Arc<FacePoset>,
        stalks: Vec<usize>,
        restrictions: BTreeMap<(usize, usize), ExactMatrix>,
    ) -> Result<Self> {
        if stalks.len() != poset.points.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} stalks for {} points",
                stalks.len(),
                poset.points.len()
            )));
        }
        for pair in poset.covering_pairs() {
            let m = restrictions.get(&pair).ok_or_else(|| {
                Error::Invariant(format!("missing restriction for covering pair {pair:?}"))
            })?;
            if m.field() != field || m.rows() != stalks[pair.1] || m.cols() != stalks[pair.0] {
                return Err(Error::ShapeMismatch(format!(
                    "restriction {} -> {} is {}x{}, stalks are {} and {}",
                    poset.points[pair.0],
                    poset.points[pair.1],
                    m.rows(),
                    m.cols(),
                    stalks[pair.0],
                    stalks[pair.1]
                )));
            }
        }
        let sheaf = PosetSheaf {
            field,
            poset,
            stalks,
            restrictions,
        };
        sheaf.check_commutativity()?;
        Ok(sheaf)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn poset(&self) -> &Arc<FacePoset> {
        &self.poset
    }

    pub fn stalk_dim(&self, face: Face) -> Option<usize> {
        self.poset.index_of(face).map(|i| self.stalks[i])
    }

    pub fn stalks(&self) -> &[usize] {
        &self.stalks
    }

    fn covering(&self, sigma: usize, tau: usize) -> &ExactMatrix {
        &self.restrictions[&(sigma, tau)]
    }

    /// `F_σ → F_τ` for included faces `τ ⊆ σ`, composed by deleting the
    /// vertices of `σ ∖ τ` in increasing order.
    pub fn restriction(&self, sigma: Face, tau: Face) -> Result<ExactMatrix> {
        let mut from = self.poset.index_of(sigma).ok_or(Error::NotAFace(sigma))?;
        if self.poset.index_of(tau).is_none() || !tau.is_subset(sigma) {
            return Err(Error::NotAFace(tau));
        }
        let mut map = ExactMatrix::identity(self.field, self.stalks[from]);
        let mut current = sigma;
        for v in sigma.difference(tau).vertices() {
            current = current.without(v);
            let to = self
                .poset
                .index_of(current)
                .expect("intermediate faces lie between τ and σ");
            map = self.covering(from, to).multiply(&map)?;
            from = to;
        }
        Ok(map)
    }

    /// For each `τ ⊂ σ` with `|σ ∖ τ| = 2`, both paths of covering
    /// restrictions agree.
    pub fn check_commutativity(&self) -> Result<()> {
        for (i, sigma) in self.poset.points.iter().enumerate() {
            let vertices = sigma.to_vec();
            for (a, &u) in vertices.iter().enumerate() {
                for &v in &vertices[a + 1..] {
                    let Some(bottom) = self.poset.index_of(sigma.without(u).without(v)) else {
                        continue;
                    };
                    let mid_u = self
                        .poset
                        .index_of(sigma.without(u))
                        .expect("faces between included faces are included");
                    let mid_v = self
                        .poset
                        .index_of(sigma.without(v))
                        .expect("faces between included faces are included");
                    let via_u = self
                        .covering(mid_u, bottom)
                        .multiply(self.covering(i, mid_u))?;
                    let via_v = self
                        .covering(mid_v, bottom)
                        .multiply(self.covering(i, mid_v))?;
                    if via_u != via_v {
                        return Err(Error::Invariant(format!(
                            "restrictions from {sigma} to {} do not commute",
                            self.poset.points[bottom]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `G(σ)`: stalk `k^g` at σ, zero elsewhere, all restrictions zero.
pub fn simple_sheaf(
    poset: &Arc<FacePoset>,
    sigma: Face,
    g: usize,
    field: FieldSpec,
) -> Result<PosetSheaf> {
    let at = poset.index_of(sigma).ok_or(Error::NotAFace(sigma))?;
    let stalks: Vec<usize> = (0..poset.points.len())
        .map(|i| if i == at { g } else { 0 })
        .collect();
    let restrictions = poset
        .covering_pairs()
        .into_iter()
        .map(|(s, t)| ((s, t), ExactMatrix::zeros(field, stalks[t], stalks[s])))
        .collect();
    PosetSheaf::new(field, poset.clone(), stalks, restrictions)
}

/// The constant sheaf `k^g` with identity restrictions.
pub fn constant_sheaf(poset: &Arc<FacePoset>, g: usize, field: FieldSpec) -> PosetSheaf {
    let stalks = vec![g; poset.points.len()];
    let restrictions = poset
        .covering_pairs()
        .into_iter()
        .map(|pair| (pair, ExactMatrix::identity(field, g)))
        .collect();
    PosetSheaf::new(field, poset.clone(), stalks, restrictions)
        .expect("identity restrictions commute")
}

/// Sections over the subcomplex generated by `faces`: families on its
/// maximal faces that agree on pairwise intersections.
pub fn global_sections(sheaf: &PosetSheaf, faces: &[Face]) -> Result<usize> {
    let complex = sheaf.poset.complex();
    if let Some(bad) = faces.iter().find(|f| !complex.contains(**f)) {
        return Err(Error::NotSubcomplex(*bad));
    }
    let maximal: Vec<Face> = maximal_elements(faces.to_vec())
        .into_iter()
        .filter(|f| sheaf.poset.contains(*f))
        .collect();
    let mut offsets = Vec::with_capacity(maximal.len());
    let mut total = 0;
    for f in &maximal {
        offsets.push(total);
        total += sheaf.stalk_dim(*f).expect("filtered to included faces");
    }
    let mut blocks: Vec<(usize, usize, ExactMatrix, ExactMatrix)> = Vec::new();
    for a in 0..maximal.len() {
        for b in a + 1..maximal.len() {
            let meet = maximal[a].intersection(maximal[b]);
            if !sheaf.poset.contains(meet) {
                continue;
            }
            blocks.push((
                a,
                b,
                sheaf.restriction(maximal[a], meet)?,
                sheaf.restriction(maximal[b], meet)?,
            ));
        }
    }
    let rows: usize = blocks.iter().map(|(_, _, ra, _)| ra.rows()).sum();
    let mut difference = ExactMatrix::zeros(sheaf.field, rows, total);
    let mut r0 = 0;
    for (a, b, ra, rb) in blocks {
        difference.set_block(r0, offsets[a], &ra);
        difference.set_block(r0, offsets[b], &rb.scaled(-1));
        r0 += ra.rows();
    }
    Ok(difference.kernel_dim())
}

/// Chains of a poset plus a lookup from chain to position.
struct ChainIndex {
    chains: Vec<Vec<Vec<usize>>>,
    position: Vec<HashMap<Vec<usize>, usize>>,
}

impl ChainIndex {
    fn new(poset: &FacePoset) -> Self {
        let chains = poset.chains();
        let position = chains
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (c.clone(), i))
                    .collect()
            })
            .collect();
        ChainIndex { chains, position }
    }

    fn levels(&self) -> usize {
        self.chains.len()
    }

    /// Offsets of each chain's coefficient block at level `k`, plus the total.
    fn layout(&self, k: usize, stalks: &[usize]) -> (Vec<usize>, usize) {
        let mut offsets = Vec::with_capacity(self.chains[k].len());
        let mut total = 0;
        for c in &self.chains[k] {
            offsets.push(total);
            total += stalks[*c.last().expect("chains are nonempty")];
        }
        (offsets, total)
    }

    /// `(dφ)(σ_0⊋⋯⊋σ_{k+1}) = Σ_{j≤k} (−1)^j φ(…σ̂_j…) + (−1)^{k+1} ρ(φ(σ_0⊋⋯⊋σ_k))`.
    fn differential(&self, sheaf: &PosetSheaf, k: usize) -> Result<ExactMatrix> {
        let (src_offsets, src_total) = self.layout(k, &sheaf.stalks);
        if k + 1 >= self.levels() {
            return Ok(ExactMatrix::zeros(sheaf.field, 0, src_total));
        }
        let (dst_offsets, dst_total) = self.layout(k + 1, &sheaf.stalks);
        let mut d = ExactMatrix::zeros(sheaf.field, dst_total, src_total);
        for (row_chain, longer) in self.chains[k + 1].iter().enumerate() {
            let last = longer[k + 1];
            let g = sheaf.stalks[last];
            let r0 = dst_offsets[row_chain];
            for j in 0..=k + 1 {
                let mut shorter = longer.clone();
                shorter.remove(j);
                let col_chain = self.position[k][&shorter];
                let c0 = src_offsets[col_chain];
                let sign = if j % 2 == 0 { 1 } else { -1 };
                if j <= k {
                    for t in 0..g {
                        d.add_integer(r0 + t, c0 + t, sign);
                    }
                } else {
                    let rho = sheaf.covering_or_composite(longer[k], last)?;
                    d.set_block(r0, c0, &rho.scaled(sign));
                }
            }
        }
        Ok(d)
    }
}

impl PosetSheaf {
    fn covering_or_composite(&self, from: usize, to: usize) -> Result<ExactMatrix> {
        match self.restrictions.get(&(from, to)) {
            Some(m) => Ok(m.clone()),
            None => self.restriction(self.poset.points[from], self.poset.points[to]),
        }
    }
}

fn derived_limit_complex(sheaf: &PosetSheaf, index: &ChainIndex) -> Result<FiniteChainComplex> {
    let levels = index.levels();
    let dims = (0..levels)
        .map(|k| index.layout(k, &sheaf.stalks).1)
        .collect();
    let differentials = (0..levels)
        .map(|k| index.differential(sheaf, k))
        .collect::<Result<_>>()?;
    FiniteChainComplex::new(
        sheaf.field,
        Direction::Cohomological,
        0,
        dims,
        differentials,
    )
}

/// The cochain complex computing `H^*(P, F)`.
pub fn sheaf_cochain_complex(sheaf: &PosetSheaf) -> Result<FiniteChainComplex> {
    derived_limit_complex(sheaf, &ChainIndex::new(&sheaf.poset))
}

pub fn sheaf_cohomology(sheaf: &PosetSheaf) -> Result<BettiVector> {
    sheaf.check_commutativity()?;
    let complex = sheaf_cochain_complex(sheaf)?;
    homology_dims(&complex).map_err(|e| Error::Invariant(format!("sheaf cochain complex: {e}")))
}

/// The global-section complex of the resolution of the constant sheaf by
/// the closed cover `{st v}` of `Σ ∖ {∅}`.
///
/// The summand for a vertex tuple `i_0 < ⋯ < i_p` is the sections of the
/// constant sheaf over `st v_{i_0} ∩ ⋯ ∩ st v_{i_p}`. When `augmented`, the
/// empty tuple contributes `k^g` in degree −1 (sections over all of Σ) and
/// the cohomology is reduced.
pub fn closed_cover_complex(
    complex: &SimplicialComplex,
    g: usize,
    field: FieldSpec,
    augmented: bool,
) -> Result<FiniteChainComplex> {
    let n = complex.n();
    if n == 0 {
        return Err(Error::Input(
            "the closed cover needs at least one vertex".into(),
        ));
    }
    let faces = complex.faces();
    let stars: Vec<Vec<Face>> = (0..n)
        .map(|v| faces.iter().copied().filter(|f| f.contains(v)).collect())
        .collect();

    // Tuples with a nonempty intersection, by degree p = |tuple| − 1.
    let mut tuples: Vec<Vec<Face>> = vec![Vec::new(); n + 1];
    let mut tuple_list: Vec<Face> = Face::full(n).subsets().collect();
    tuple_list.sort();
    for tuple in tuple_list {
        let members: Vec<Face> = if tuple.is_empty() {
            if !augmented {
                continue;
            }
            faces.clone()
        } else {
            let mut it = tuple.vertices();
            let first = it.next().expect("nonempty tuple");
            let mut inter = stars[first].clone();
            for v in it {
                inter.retain(|f| stars[v].binary_search(f).is_ok());
            }
            inter
        };
        match components(&members) {
            0 => {}
            1 => tuples[tuple.len()].push(tuple),
            c => {
                return Err(Error::Invariant(format!(
                    "intersection of stars over {tuple} has {c} components"
                )))
            }
        }
    }

    let lo = if augmented { -1 } else { 0 };
    let first = if augmented { 0 } else { 1 };
    let levels: Vec<&Vec<Face>> = tuples[first..].iter().collect();
    let dims: Vec<usize> = levels.iter().map(|l| l.len() * g).collect();
    let differentials = (0..levels.len())
        .map(|k| {
            let src = levels[k];
            let Some(dst) = levels.get(k + 1) else {
                return ExactMatrix::zeros(field, 0, src.len() * g);
            };
            let mut d = ExactMatrix::zeros(field, dst.len(), src.len());
            for (r, longer) in dst.iter().enumerate() {
                for (h, v) in longer.vertices().enumerate() {
                    if let Ok(c) = src.binary_search(&longer.without(v)) {
                        d.set_integer(r, c, if h % 2 == 0 { 1 } else { -1 });
                    }
                }
            }
            d.kronecker_identity(g)
        })
        .collect();
    FiniteChainComplex::new(field, Direction::Cohomological, lo, dims, differentials)
}

/// Connected components of a face set under inclusion.
fn components(faces: &[Face]) -> usize {
    let mut parent: Vec<usize> = (0..faces.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            if faces[i].is_subset(faces[j]) || faces[j].is_subset(faces[i]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..faces.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count()
}

/// Reduced cohomology of Σ with coefficients `k^g`, via the augmented
/// closed-cover complex.
pub fn closed_cover_cohomology(
    complex: &SimplicialComplex,
    g: usize,
    field: FieldSpec,
) -> Result<BettiVector> {
    homology_dims(&closed_cover_complex(complex, g, field, true)?)
}

/// Checks `H^*(Σ, G(σ))` against the links: `H^0 = g` exactly when σ is a
/// facet, and `H^i = g · dim H̃^{i−1}(lk σ)` for `i ≥ 1`.
pub fn simple_sheaf_cohomology_check(
    complex: &SimplicialComplex,
    sigma: Face,
    g: usize,
    field: FieldSpec,
) -> Result<bool> {
    let poset = Arc::new(FacePoset::full(complex));
    let h = sheaf_cohomology(&simple_sheaf(&poset, sigma, g, field)?)?;
    let is_facet = complex.facets().contains(&sigma);
    let expected_h0 = if is_facet { g } else { 0 };
    let link = reduced_cohomology(&complex.link(sigma)?.complex, field);
    let top = h.hi().max(link.hi() + 1);
    Ok(h.get(0) == expected_h0 && (1..=top).all(|i| h.get(i) == g * link.get(i - 1)))
}

/// A bounded cohomological complex of sheaves on one poset.
#[derive(Clone, Debug)]
pub struct SheafComplex {
    field: FieldSpec,
    poset: Arc<FacePoset>,
    lo: i64,
    terms: Vec<PosetSheaf>,
    /// `maps[p][σ]`: stalk map at point σ from term `p` to term `p + 1`.
    maps: Vec<Vec<ExactMatrix>>,
}

impl SheafComplex {
    /// Validates that differentials commute with restrictions and square to
    /// zero stalk-wise.
    pub fn new(lo: i64, terms: Vec<PosetSheaf>, maps: Vec<Vec<ExactMatrix>>) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::Input("a sheaf complex needs a term".into()))?;
        let (field, poset) = (first.field, first.poset.clone());
        if terms.iter().any(|t| t.field != field || t.poset != poset) {
            return Err(Error::ShapeMismatch(
                "terms live on different posets or fields".into(),
            ));
        }
        if maps.len() + 1 != terms.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} terms need {} maps",
                terms.len(),
                terms.len() - 1
            )));
        }
        let complex = SheafComplex {
            field,
            poset,
            lo,
            terms,
            maps,
        };
        complex.check()?;
        Ok(complex)
    }

    fn check(&self) -> Result<()> {
        let points = self.poset.points.len();
        for (p, stalk_maps) in self.maps.iter().enumerate() {
            if stalk_maps.len() != points {
                return Err(Error::ShapeMismatch(format!(
                    "map {p} has {} stalk components",
                    stalk_maps.len()
                )));
            }
            let (src, dst) = (&self.terms[p], &self.terms[p + 1]);
            for (i, m) in stalk_maps.iter().enumerate() {
                if m.rows() != dst.stalks[i] || m.cols() != src.stalks[i] {
                    return Err(Error::ShapeMismatch(format!(
                        "stalk map {p} at {}",
                        self.poset.points[i]
                    )));
                }
            }
            for (s, t) in self.poset.covering_pairs() {
                let down_then_across = stalk_maps[t].multiply(src.covering(s, t))?;
                let across_then_down = dst.covering(s, t).multiply(&stalk_maps[s])?;
                if down_then_across != across_then_down {
                    return Err(Error::Invariant(format!(
                        "differential {p} does not commute with restriction {} -> {}",
                        self.poset.points[s], self.poset.points[t]
                    )));
                }
            }
            if let Some(next) = self.maps.get(p + 1) {
                for i in 0..points {
                    if !next[i].multiply(&stalk_maps[i])?.is_zero() {
                        return Err(Error::Invariant(format!(
                            "differentials {p}, {} do not compose to zero at {}",
                            p + 1,
                            self.poset.points[i]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, degree: i64) -> Option<&PosetSheaf> {
        usize::try_from(degree - self.lo)
            .ok()
            .and_then(|j| self.terms.get(j))
    }

    pub fn poset(&self) -> &Arc<FacePoset> {
        &self.poset
    }

    /// The complex of global sections over the whole poset.
    pub fn global_section_dims(&self) -> Result<BettiVector> {
        let all = self.poset.complex().facets().to_vec();
        let dims = self
            .terms
            .iter()
            .map(|t| global_sections(t, &all))
            .collect::<Result<_>>()?;
        Ok(BettiVector::new(self.lo, dims))
    }
}

/// The squarefree strand of the Koszul complex tensored with the structure
/// sheaf, on the full face poset.
///
/// In degree −i the stalk at σ has basis `{S ⊆ supp a : |S| = i,
/// supp a ∖ S ⊆ σ}`; restrictions keep the basis elements that survive on
/// the smaller face and kill the rest.
pub fn koszul_sheaf_strand(
    complex: &SimplicialComplex,
    degree: &MultiDegree,
    field: FieldSpec,
) -> Result<SheafComplex> {
    if degree.0.len() != complex.n() {
        return Err(Error::DegreeLength {
            got: degree.0.len(),
            n: complex.n(),
        });
    }
    if !degree.is_squarefree() {
        return Err(Error::NotSquarefree(degree.0.clone()));
    }
    let support = degree.support();
    let m = support.len();
    let poset = Arc::new(FacePoset::full(complex));
    let points = poset.points.clone();

    // bases[i][σ]: basis of the degree −i stalk at σ, graded-lex.
    let bases: Vec<Vec<Vec<Face>>> = (0..=m)
        .map(|i| {
            points
                .iter()
                .map(|sigma| {
                    let mut b: Vec<Face> = support
                        .subsets()
                        .filter(|s| s.len() == i && support.difference(*s).is_subset(*sigma))
                        .collect();
                    b.sort();
                    b
                })
                .collect()
        })
        .collect();

    let pairs = poset.covering_pairs();
    // Terms ordered by cohomological degree −m, …, 0.
    let mut terms = Vec::with_capacity(m + 1);
    for i in (0..=m).rev() {
        let stalks = bases[i].iter().map(Vec::len).collect();
        let restrictions = pairs
            .iter()
            .map(|&(s, t)| {
                let (from, to) = (&bases[i][s], &bases[i][t]);
                let mut rho = ExactMatrix::zeros(field, to.len(), from.len());
                for (c, b) in from.iter().enumerate() {
                    if let Ok(r) = to.binary_search(b) {
                        rho.set_integer(r, c, 1);
                    }
                }
                ((s, t), rho)
            })
            .collect();
        terms.push(PosetSheaf::new(field, poset.clone(), stalks, restrictions)?);
    }
    let maps = (1..=m)
        .rev()
        .map(|i| {
            (0..points.len())
                .map(|p| {
                    let (from, to) = (&bases[i][p], &bases[i - 1][p]);
                    let mut d = ExactMatrix::zeros(field, to.len(), from.len());
                    for (c, s) in from.iter().enumerate() {
                        for (pos, t) in s.vertices().enumerate() {
                            if let Ok(r) = to.binary_search(&s.without(t)) {
                                d.set_integer(r, c, if pos % 2 == 0 { 1 } else { -1 });
                            }
                        }
                    }
                    d
                })
                .collect()
        })
        .collect();
    SheafComplex::new(-(m as i64), terms, maps)
}

/// Cohomology of the total complex of the double complex obtained by
/// applying the chain cochain construction to every term.
pub fn hypercohomology(complex: &SheafComplex) -> Result<BettiVector> {
    let total = hypercohomology_total_complex(complex)?;
    homology_dims(&total)
        .map_err(|e| Error::Invariant(format!("hypercohomology total complex: {e}")))
}

/// Total complex with `D = d_sheaf + (−1)^p d_chain` on the `(p, k)` piece.
pub fn hypercohomology_total_complex(complex: &SheafComplex) -> Result<FiniteChainComplex> {
    let field = complex.field;
    let index = ChainIndex::new(&complex.poset);
    let levels = index.levels();
    let terms = complex.terms.len();

    // Vertical differentials and layouts of every (p, k) piece.
    let mut vertical: Vec<Vec<ExactMatrix>> = Vec::with_capacity(terms);
    let mut layouts: Vec<Vec<(Vec<usize>, usize)>> = Vec::with_capacity(terms);
    for term in &complex.terms {
        vertical.push(
            (0..levels)
                .map(|k| index.differential(term, k))
                .collect::<Result<_>>()?,
        );
        layouts.push((0..levels).map(|k| index.layout(k, &term.stalks)).collect());
    }

    let lo = complex.lo;
    let hi = complex.hi() + levels as i64 - 1;
    // Offsets of piece (p, k) inside total degree p + k.
    let mut offsets: HashMap<(usize, usize), usize> = HashMap::new();
    let mut dims = Vec::new();
    for t in lo..=hi {
        let mut size = 0;
        for (p, layout) in layouts.iter().enumerate() {
            let k = t - (lo + p as i64);
            if (0..levels as i64).contains(&k) {
                offsets.insert((p, k as usize), size);
                size += layout[k as usize].1;
            }
        }
        dims.push(size);
    }

    let mut differentials = Vec::with_capacity(dims.len());
    for (j, t) in (lo..=hi).enumerate() {
        let target_dim = dims.get(j + 1).copied().unwrap_or(0);
        let mut d = ExactMatrix::zeros(field, target_dim, dims[j]);
        for p in 0..terms {
            let k = t - (lo + p as i64);
            if !(0..levels as i64).contains(&k) {
                continue;
            }
            let k = k as usize;
            let c0 = offsets[&(p, k)];
            let degree = lo + p as i64;
            if k + 1 < levels {
                let sign: i64 = if degree.rem_euclid(2) == 0 { 1 } else { -1 };
                let r0 = offsets[&(p, k + 1)];
                d.set_block(r0, c0, &vertical[p][k].scaled(sign));
            }
            if p + 1 < terms {
                let r0 = offsets[&(p + 1, k)];
                let (src_offsets, _) = &layouts[p][k];
                let (dst_offsets, _) = &layouts[p + 1][k];
                for (ci, chain) in index.chains[k].iter().enumerate() {
                    let last = *chain.last().expect("chains are nonempty");
                    let stalk_map = &complex.maps[p][last];
                    d.set_block(r0 + dst_offsets[ci], c0 + src_offsets[ci], stalk_map);
                }
            }
        }
        differentials.push(d);
    }
    FiniteChainComplex::new(field, Direction::Cohomological, lo, dims, differentials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::catalog::*;
    use crate::face_ring::koszul_strand;

    fn face(v: &[usize]) -> Face {
        Face::from_vertices(v.iter().copied())
    }

    #[test]
    fn simple_sheaf_stalks() {
        let poset = Arc::new(FacePoset::full(&two_points()));
        let g = simple_sheaf(&poset, Face::EMPTY, 1, FieldSpec::Q).unwrap();
        assert_eq!(g.stalks(), &[1, 0, 0]);
        g.check_commutativity().unwrap();
        let facet = simple_sheaf(&poset, face(&[1]), 2, FieldSpec::Q).unwrap();
        assert_eq!(facet.stalks(), &[0, 0, 2]);
        assert!(matches!(
            simple_sheaf(&poset, face(&[0, 1]), 1, FieldSpec::Q),
            Err(Error::NotAFace(_))
        ));
    }

    #[test]
    fn constant_sheaf_sections() {
        let h = hollow_triangle();
        let full = Arc::new(FacePoset::full(&h));
        let k = constant_sheaf(&full, 1, FieldSpec::Q);
        assert_eq!(global_sections(&k, h.facets()).unwrap(), 1);
        let c = sheaf_cohomology(&k).unwrap();
        assert_eq!(c, BettiVector::new(0, vec![1]));
        assert_eq!(
            k.restriction(face(&[0, 1]), Face::EMPTY).unwrap(),
            ExactMatrix::identity(FieldSpec::Q, 1)
        );
    }

    #[test]
    fn sections_of_simple_sheaves() {
        let e = two_disjoint_edges();
        let poset = Arc::new(FacePoset::full(&e));
        let at_empty = simple_sheaf(&poset, Face::EMPTY, 1, FieldSpec::Q).unwrap();
        assert_eq!(global_sections(&at_empty, e.facets()).unwrap(), 0);
        let at_facet = simple_sheaf(&poset, face(&[2, 3]), 3, FieldSpec::Q).unwrap();
        assert_eq!(global_sections(&at_facet, e.facets()).unwrap(), 3);
        assert!(matches!(
            global_sections(&at_facet, &[face(&[0, 2])]),
            Err(Error::NotSubcomplex(_))
        ));
    }

    #[test]
    fn simple_sheaf_at_empty_on_two_points() {
        let poset = Arc::new(FacePoset::full(&two_points()));
        let g = simple_sheaf(&poset, Face::EMPTY, 1, FieldSpec::Q).unwrap();
        assert_eq!(
            sheaf_cohomology(&g).unwrap(),
            BettiVector::new(0, vec![0, 1])
        );
    }

    #[test]
    fn punctured_constant_sheaf_on_hollow_triangle() {
        let poset = Arc::new(FacePoset::punctured(&hollow_triangle()));
        let k = constant_sheaf(&poset, 1, FieldSpec::Q);
        assert_eq!(
            sheaf_cohomology(&k).unwrap(),
            BettiVector::new(0, vec![1, 1])
        );
    }

    #[test]
    fn closed_cover_examples() {
        assert_eq!(
            closed_cover_cohomology(&two_points(), 1, FieldSpec::Q).unwrap(),
            BettiVector::new(0, vec![1])
        );
        assert_eq!(
            closed_cover_cohomology(&hollow_triangle(), 1, FieldSpec::Q).unwrap(),
            BettiVector::new(1, vec![1])
        );
        assert!(
            closed_cover_cohomology(&SimplicialComplex::simplex(4), 2, FieldSpec::GF2)
                .unwrap()
                .is_zero()
        );
        assert_eq!(
            closed_cover_cohomology(&hollow_triangle(), 3, FieldSpec::GF3).unwrap(),
            BettiVector::new(1, vec![3])
        );
        let unreduced =
            homology_dims(&closed_cover_complex(&two_points(), 1, FieldSpec::Q, false).unwrap())
                .unwrap();
        assert_eq!(unreduced, BettiVector::new(0, vec![2]));
        assert!(
            closed_cover_cohomology(&SimplicialComplex::irrelevant(), 1, FieldSpec::Q).is_err()
        );
    }

    #[test]
    fn simple_sheaf_lemma_examples() {
        let e = two_disjoint_edges();
        assert!(simple_sheaf_cohomology_check(&e, face(&[0, 1]), 2, FieldSpec::Q).unwrap());
        assert!(
            simple_sheaf_cohomology_check(&two_points(), Face::EMPTY, 1, FieldSpec::Q).unwrap()
        );
        for sigma in rp2_six().faces() {
            assert!(simple_sheaf_cohomology_check(&rp2_six(), sigma, 1, FieldSpec::GF2).unwrap());
        }
    }

    #[test]
    fn koszul_sheaf_strand_examples() {
        let c = koszul_sheaf_strand(&two_points(), &MultiDegree(vec![0, 0]), FieldSpec::Q).unwrap();
        assert_eq!((c.lo(), c.hi()), (0, 0));
        assert_eq!(c.term(0).unwrap().stalks(), &[1, 1, 1]);

        let c = koszul_sheaf_strand(&two_points(), &MultiDegree(vec![1, 1]), FieldSpec::Q).unwrap();
        assert_eq!((c.lo(), c.hi()), (-2, 0));
        assert_eq!(c.term(-2).unwrap().stalk_dim(Face::EMPTY), Some(1));
        assert_eq!(c.term(-1).unwrap().stalk_dim(Face::EMPTY), Some(0));
        assert_eq!(c.term(0).unwrap().stalk_dim(Face::EMPTY), Some(0));
        assert_eq!(
            c.global_section_dims().unwrap(),
            BettiVector::new(-2, vec![1, 2, 0])
        );
        assert_eq!(hypercohomology(&c).unwrap(), BettiVector::new(-1, vec![1]));
    }

    #[test]
    fn hypercohomology_of_degree_zero_is_constant() {
        let c = koszul_sheaf_strand(
            &hollow_triangle(),
            &MultiDegree(vec![0, 0, 0]),
            FieldSpec::GF2,
        )
        .unwrap();
        assert_eq!(hypercohomology(&c).unwrap(), BettiVector::new(0, vec![1]));
    }

    #[test]
    fn hypercohomology_matches_strands_on_the_hollow_triangle() {
        let h = hollow_triangle();
        for a in Face::full(3).subsets() {
            let degree = MultiDegree::squarefree(3, a);
            let hyper =
                hypercohomology(&koszul_sheaf_strand(&h, &degree, FieldSpec::Q).unwrap()).unwrap();
            let strand = homology_dims(&koszul_strand(&h, &degree, FieldSpec::Q).unwrap()).unwrap();
            for i in 0..=3i64 {
                assert_eq!(hyper.get(-i), strand.get(i), "degree {a}, i = {i}");
            }
        }
    }

    #[test]
    fn non_commuting_sheaf_is_rejected() {
        let poset = Arc::new(FacePoset::full(&SimplicialComplex::simplex(2)));
        let mut restrictions: BTreeMap<(usize, usize), ExactMatrix> = poset
            .covering_pairs()
            .into_iter()
            .map(|pair| (pair, ExactMatrix::identity(FieldSpec::Q, 1)))
            .collect();
        let top = poset.index_of(face(&[0, 1])).unwrap();
        let left = poset.index_of(face(&[0])).unwrap();
        restrictions.insert(
            (top, left),
            ExactMatrix::from_integers(FieldSpec::Q, 1, 1, &[2]).unwrap(),
        );
        let err =
            PosetSheaf::new(FieldSpec::Q, poset.clone(), vec![1; 4], restrictions).unwrap_err();
        assert!(matches!(err, Error::Invariant(_)));
    }
}
