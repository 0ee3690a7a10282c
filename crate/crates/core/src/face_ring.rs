//! Stanley-Reisner ideals and the algebraic side of Cohen-Macaulayness.
//!
//! `Tor_i^R(k[Σ], k)` is computed one multidegree at a time: the degree-`a`
//! piece of the Koszul complex `K(X_1..X_n) ⊗ k[Σ]` is a small complex with
//! basis `e_S ⊗ x^{a−χ_S}`, and a basis element survives exactly when the
//! support of `a − χ_S` is a face. Only squarefree degrees are summed into
//! the Betti table; [`nonsquarefree_vanishing_check`] samples the others.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{minimal_elements, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{homology_dims, Direction, FiniteChainComplex};
use crate::linalg::{ExactMatrix, FieldSpec};

/// A squarefree monomial ideal in `k[X_0, …, X_{n−1}]`, stored by the
/// supports of its minimal generators.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Face>,
}

impl MonomialIdeal {
    pub fn new<I: IntoIterator<Item = Face>>(n: usize, generators: I) -> Result<Self> {
        let ambient = Face::full(n);
        let generators: Vec<Face> = generators.into_iter().collect();
        if let Some(g) = generators.iter().find(|g| !g.is_subset(ambient)) {
            let vertex = g.difference(ambient).vertices().next().unwrap_or(0);
            return Err(Error::VertexOutOfRange { vertex, n });
        }
        Ok(MonomialIdeal {
            n,
            generators: minimal_elements(generators),
        })
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal {
            n,
            generators: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Minimal generator supports, graded-lex.
    pub fn generators(&self) -> &[Face] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether the squarefree monomial `X_F` lies in the ideal.
    pub fn contains_monomial(&self, support: Face) -> bool {
        self.generators.iter().any(|g| g.is_subset(support))
    }

    /// `I : X_σ^∞`, which for a squarefree monomial ideal deletes σ's
    /// variables from every generator.
    pub fn saturate(&self, sigma: Face) -> MonomialIdeal {
        MonomialIdeal {
            n: self.n,
            generators: minimal_elements(
                self.generators
                    .iter()
                    .map(|g| g.difference(sigma))
                    .collect(),
            ),
        }
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let n = self.n.max(other.n);
        let gens = self
            .generators
            .iter()
            .chain(&other.generators)
            .copied()
            .collect();
        MonomialIdeal {
            n,
            generators: minimal_elements(gens),
        }
    }

    /// `I ∩ k[X_v : v ∈ vars]`, generated by the generators in those variables.
    pub fn restrict_to(&self, vars: Face) -> MonomialIdeal {
        MonomialIdeal {
            n: self.n,
            generators: self
                .generators
                .iter()
                .copied()
                .filter(|g| g.is_subset(vars))
                .collect(),
        }
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialIdeal(n={}, {:?})", self.n, self.generators)
    }
}

/// An exponent vector in `ℕⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn zero(n: usize) -> Self {
        MultiDegree(vec![0; n])
    }

    /// The squarefree degree with the given support.
    pub fn squarefree(n: usize, support: Face) -> Self {
        MultiDegree((0..n).map(|v| u32::from(support.contains(v))).collect())
    }

    pub fn support(&self) -> Face {
        Face::from_vertices(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(v, _)| v),
        )
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|e| *e <= 1)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Support of `a − χ_S`; requires `S ⊆ supp(a)`.
    fn support_after_removing(&self, s: Face) -> Face {
        Face::from_vertices(
            self.0
                .iter()
                .enumerate()
                .filter(|(v, e)| **e > u32::from(s.contains(*v)))
                .map(|(v, _)| v),
        )
    }
}

/// Betti numbers `β_i = dim Tor_i^R(k[Σ], k)` for `i = 0..=n`, optionally
/// broken down by squarefree multidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub field: FieldSpec,
    pub n: usize,
    pub totals: Vec<usize>,
    /// Nonzero strands only, in graded-lex order of their support.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub breakdown: Option<Vec<StrandBetti>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrandBetti {
    pub degree: Face,
    /// `betti[i] = β_{i,a}`.
    pub betti: Vec<usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize) -> usize {
        self.totals.get(i).copied().unwrap_or(0)
    }

    /// `β_{i,a}` for the squarefree degree with support `a`.
    pub fn graded(&self, i: usize, a: Face) -> Option<usize> {
        let breakdown = self.breakdown.as_ref()?;
        Some(
            breakdown
                .binary_search_by(|s| s.degree.cmp(&a))
                .map_or(0, |k| breakdown[k].betti.get(i).copied().unwrap_or(0)),
        )
    }

    pub fn without_breakdown(mut self) -> Self {
        self.breakdown = None;
        self
    }
}

pub fn stanley_reisner_ideal(complex: &SimplicialComplex) -> MonomialIdeal {
    MonomialIdeal {
        n: complex.n(),
        generators: complex.minimal_nonfaces(),
    }
}

/// The link ideal computed directly from the link, and from the closed-star
/// ideal intersected with the link's variables. Both use ambient labels.
pub fn link_ideal_two_ways(
    complex: &SimplicialComplex,
    sigma: Face,
) -> Result<(MonomialIdeal, MonomialIdeal)> {
    let n = complex.n();
    let link = complex.link(sigma)?;
    let direct = MonomialIdeal::new(
        n,
        link.complex
            .minimal_nonfaces()
            .into_iter()
            .map(|g| link.to_ambient(g)),
    )?;

    let star = complex.closed_star(sigma)?;
    let star_ideal = MonomialIdeal::new(
        n,
        star.complex
            .minimal_nonfaces()
            .into_iter()
            .map(|g| star.to_ambient(g)),
    )?;
    let link_vars = star.mask().difference(sigma);
    Ok((direct, star_ideal.restrict_to(link_vars)))
}

/// Compares `I_Σ : X_σ^∞` with `(I_{st̄σ} + (X_j : σ ∪ {j} ∉ Σ)) : X_σ^∞`.
pub fn localization_identity_check(complex: &SimplicialComplex, sigma: Face) -> Result<bool> {
    let n = complex.n();
    let star = complex.closed_star(sigma)?;
    let lhs = stanley_reisner_ideal(complex).saturate(sigma);

    let extended = MonomialIdeal::new(
        n,
        star.complex
            .minimal_nonfaces()
            .into_iter()
            .map(|g| star.to_ambient(g)),
    )?;
    let vanishing = MonomialIdeal::new(
        n,
        (0..n)
            .filter(|&v| !complex.contains(sigma.with(v)))
            .map(Face::singleton),
    )?;
    let rhs = extended.sum(&vanishing).saturate(sigma);
    Ok(lhs == rhs)
}

fn check_degree(complex: &SimplicialComplex, degree: &MultiDegree) -> Result<()> {
    if degree.0.len() != complex.n() {
        return Err(Error::DegreeLength {
            got: degree.0.len(),
            n: complex.n(),
        });
    }
    Ok(())
}

/// The degree-`a` strand of `K ⊗ k[Σ]` for any `a ∈ ℕⁿ`, homologically
/// graded from 0 to `|supp a|`.
pub fn multidegree_strand(
    complex: &SimplicialComplex,
    degree: &MultiDegree,
    field: FieldSpec,
) -> Result<FiniteChainComplex> {
    check_degree(complex, degree)?;
    let support = degree.support();
    let m = support.len();
    let mut bases: Vec<Vec<Face>> = vec![Vec::new(); m + 1];
    for s in support.subsets() {
        if complex.contains(degree.support_after_removing(s)) {
            bases[s.len()].push(s);
        }
    }
    for basis in &mut bases {
        basis.sort();
    }
    let differentials = (0..=m)
        .map(|i| {
            if i == 0 {
                return ExactMatrix::zeros(field, 0, bases[0].len());
            }
            let (rows, cols) = (&bases[i - 1], &bases[i]);
            let mut d = ExactMatrix::zeros(field, rows.len(), cols.len());
            for (c, s) in cols.iter().enumerate() {
                for (pos, t) in s.vertices().enumerate() {
                    let smaller = s.without(t);
                    if let Ok(r) = rows.binary_search(&smaller) {
                        d.set_integer(r, c, if pos % 2 == 0 { 1 } else { -1 });
                    }
                }
            }
            d
        })
        .collect();
    let dims = bases.iter().map(Vec::len).collect();
    let strand = FiniteChainComplex::new(field, Direction::Homological, 0, dims, differentials)?;
    strand
        .check_composite_zero()
        .map_err(|e| Error::Invariant(format!("Koszul strand in degree {:?}: {e}", degree.0)))?;
    Ok(strand)
}

/// The squarefree Koszul strand: degree `i` has basis
/// `{S ⊆ supp a : |S| = i, supp a ∖ S ∈ Σ}`.
pub fn koszul_strand(
    complex: &SimplicialComplex,
    degree: &MultiDegree,
    field: FieldSpec,
) -> Result<FiniteChainComplex> {
    if !degree.is_squarefree() {
        return Err(Error::NotSquarefree(degree.0.clone()));
    }
    multidegree_strand(complex, degree, field)
}

fn strand_betti(
    complex: &SimplicialComplex,
    support: Face,
    field: FieldSpec,
) -> Result<Vec<usize>> {
    let strand = koszul_strand(
        complex,
        &MultiDegree::squarefree(complex.n(), support),
        field,
    )?;
    Ok(homology_dims(&strand)?.dims)
}

/// `β_i = Σ_a dim H_i(strand_a)` over all squarefree `a`.
pub fn betti_numbers(complex: &SimplicialComplex, field: FieldSpec) -> Result<BettiTable> {
    let n = complex.n();
    let mut supports: Vec<Face> = Face::full(n).subsets().collect();
    supports.sort();
    let strands: Vec<(Face, Vec<usize>)> = supports
        .par_iter()
        .map(|&a| strand_betti(complex, a, field).map(|b| (a, b)))
        .collect::<Result<_>>()?;
    let mut totals = vec![0usize; n + 1];
    let mut breakdown = Vec::new();
    for (degree, betti) in strands {
        for (i, b) in betti.iter().enumerate() {
            totals[i] += b;
        }
        if betti.iter().any(|b| *b != 0) {
            breakdown.push(StrandBetti { degree, betti });
        }
    }
    Ok(BettiTable {
        field,
        n,
        totals,
        breakdown: Some(breakdown),
    })
}

/// Random non-squarefree degrees: entries in {0, 1, 2}, at least one 2,
/// total at most `n + 2`.
pub fn sample_nonsquarefree_degrees(n: usize, samples: usize, seed: u64) -> Vec<MultiDegree> {
    if n == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let mut a: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        a[rng.gen_range(0..n)] = 2;
        if a.iter().sum::<u32>() as usize <= n + 2 {
            out.push(MultiDegree(a));
        }
    }
    out
}

/// True iff every sampled non-squarefree strand is exact.
pub fn nonsquarefree_vanishing_check(
    complex: &SimplicialComplex,
    field: FieldSpec,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    for degree in sample_nonsquarefree_degrees(complex.n(), samples, seed) {
        let strand = multidegree_strand(complex, &degree, field)?;
        if !homology_dims(&strand)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `max{i : β_i ≠ 0}`.
pub fn projective_dimension(table: &BettiTable) -> usize {
    table.totals.iter().rposition(|b| *b != 0).unwrap_or(0)
}

/// Auslander-Buchsbaum: `depth = n − projdim`.
pub fn depth(table: &BettiTable, n: usize) -> usize {
    n - projective_dimension(table)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorWitness {
    pub degree: usize,
    pub beta: usize,
}

/// The Tor-vanishing verdict on `k[Σ]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraicVerdict {
    pub field: FieldSpec,
    pub is_cm: bool,
    pub depth: usize,
    /// `dim Σ + 1`.
    pub krull_dim: usize,
    pub projdim: usize,
    /// Largest `i > n − d − 1` with `β_i ≠ 0`, when not Cohen-Macaulay.
    pub witness: Option<TorWitness>,
    /// The equivalence with the topological criterion is only exercised on
    /// pure complexes; false flags a non-pure input.
    pub theorem_tested: bool,
}

pub fn algebraic_verdict(complex: &SimplicialComplex, table: &BettiTable) -> AlgebraicVerdict {
    let n = complex.n();
    let krull_dim = (complex.dim() + 1) as usize;
    let projdim = projective_dimension(table);
    // β_i must vanish for i > n − d − 1 = n − krull_dim.
    let bound = n - krull_dim;
    let witness = (projdim > bound).then(|| TorWitness {
        degree: projdim,
        beta: table.get(projdim),
    });
    AlgebraicVerdict {
        field: table.field,
        is_cm: witness.is_none(),
        depth: n - projdim,
        krull_dim,
        projdim,
        witness,
        theorem_tested: complex.is_pure(),
    }
}

pub fn is_cm_algebraic(complex: &SimplicialComplex, field: FieldSpec) -> Result<AlgebraicVerdict> {
    Ok(algebraic_verdict(complex, &betti_numbers(complex, field)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::catalog::*;
    use crate::homology::BettiVector;

    fn face(v: &[usize]) -> Face {
        Face::from_vertices(v.iter().copied())
    }

    #[test]
    fn ideal_examples() {
        assert!(stanley_reisner_ideal(&SimplicialComplex::simplex(3)).is_zero());
        assert_eq!(
            stanley_reisner_ideal(&two_disjoint_edges()).generators(),
            &[face(&[0, 2]), face(&[0, 3]), face(&[1, 2]), face(&[1, 3])]
        );
        assert_eq!(
            stanley_reisner_ideal(&hollow_triangle()).generators(),
            &[face(&[0, 1, 2])]
        );
    }

    #[test]
    fn ideal_operations() {
        let i = MonomialIdeal::new(
            4,
            [face(&[0, 2]), face(&[0, 3]), face(&[1, 2]), face(&[1, 3])],
        )
        .unwrap();
        assert_eq!(
            i.saturate(face(&[0])).generators(),
            &[face(&[2]), face(&[3])]
        );
        assert!(i.contains_monomial(face(&[0, 1, 2])));
        assert!(!i.contains_monomial(face(&[0, 1])));
        assert_eq!(i.restrict_to(face(&[0, 2])).generators(), &[face(&[0, 2])]);
        let j = MonomialIdeal::new(4, [face(&[0])]).unwrap();
        assert_eq!(
            i.sum(&j).generators(),
            &[face(&[0]), face(&[1, 2]), face(&[1, 3])]
        );
        assert!(MonomialIdeal::new(2, [face(&[3])]).is_err());
    }

    #[test]
    fn link_ideals() {
        let (a, b) = link_ideal_two_ways(&hollow_triangle(), face(&[0])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.generators(), &[face(&[1, 2])]);

        let full = SimplicialComplex::simplex(4);
        for sigma in full.faces() {
            let (a, b) = link_ideal_two_ways(&full, sigma).unwrap();
            assert!(a.is_zero() && b.is_zero());
        }

        let (a, b) = link_ideal_two_ways(&two_disjoint_edges(), face(&[0])).unwrap();
        assert!(a.is_zero() && b.is_zero());
        assert!(link_ideal_two_ways(&two_disjoint_edges(), face(&[0, 2])).is_err());
    }

    #[test]
    fn localization_examples() {
        let e = two_disjoint_edges();
        assert!(localization_identity_check(&e, Face::EMPTY).unwrap());
        assert!(localization_identity_check(&e, face(&[0])).unwrap());
        assert_eq!(
            stanley_reisner_ideal(&e).saturate(face(&[0])).generators(),
            &[face(&[2]), face(&[3])]
        );
    }

    #[test]
    fn strand_of_two_points() {
        let s = koszul_strand(&two_points(), &MultiDegree(vec![1, 1]), FieldSpec::Q).unwrap();
        assert_eq!(s.dims(), &[0, 2, 1]);
        assert_eq!(
            homology_dims(&s).unwrap(),
            BettiVector::new(0, vec![0, 1, 0])
        );
    }

    #[test]
    fn zero_degree_strand_is_the_residue_field() {
        for c in [two_points(), rp2_six(), SimplicialComplex::irrelevant()] {
            let s = koszul_strand(&c, &MultiDegree::zero(c.n()), FieldSpec::GF2).unwrap();
            assert_eq!(s.dims(), &[1]);
            assert_eq!(homology_dims(&s).unwrap().get(0), 1);
        }
    }

    #[test]
    fn full_simplex_strands_are_exact() {
        let full = SimplicialComplex::simplex(4);
        for a in Face::full(4).subsets().filter(|a| !a.is_empty()) {
            let s = koszul_strand(&full, &MultiDegree::squarefree(4, a), FieldSpec::Q).unwrap();
            assert!(homology_dims(&s).unwrap().is_zero());
        }
    }

    #[test]
    fn strand_errors() {
        assert!(matches!(
            koszul_strand(&two_points(), &MultiDegree(vec![2, 0]), FieldSpec::Q),
            Err(Error::NotSquarefree(_))
        ));
        assert!(matches!(
            koszul_strand(&two_points(), &MultiDegree(vec![1]), FieldSpec::Q),
            Err(Error::DegreeLength { got: 1, n: 2 })
        ));
    }

    #[test]
    fn betti_examples() {
        let full = betti_numbers(&SimplicialComplex::simplex(3), FieldSpec::Q).unwrap();
        assert_eq!(full.totals, vec![1, 0, 0, 0]);
        assert_eq!((projective_dimension(&full), depth(&full, 3)), (0, 3));

        let pts = betti_numbers(&two_points(), FieldSpec::Q).unwrap();
        assert_eq!(pts.totals, vec![1, 1, 0]);
        assert_eq!((projective_dimension(&pts), depth(&pts, 2)), (1, 1));

        let edges = betti_numbers(&two_disjoint_edges(), FieldSpec::GF2).unwrap();
        assert_eq!(edges.totals, vec![1, 4, 4, 1, 0]);
        assert_eq!((projective_dimension(&edges), depth(&edges, 4)), (3, 1));
        assert_eq!(edges.graded(1, face(&[0, 2])), Some(1));
        assert_eq!(edges.graded(1, face(&[0, 1])), Some(0));
    }

    #[test]
    fn nonsquarefree_strands_vanish() {
        let two =
            multidegree_strand(&two_points(), &MultiDegree(vec![2, 0]), FieldSpec::Q).unwrap();
        assert_eq!(two.dims(), &[1, 1]);
        assert!(homology_dims(&two).unwrap().is_zero());
        let e = multidegree_strand(
            &two_disjoint_edges(),
            &MultiDegree(vec![2, 1, 0, 0]),
            FieldSpec::Q,
        )
        .unwrap();
        assert!(homology_dims(&e).unwrap().is_zero());
        assert!(nonsquarefree_vanishing_check(&rp2_six(), FieldSpec::GF2, 50, 3).unwrap());
    }

    #[test]
    fn nonsquarefree_samples_respect_bounds() {
        let samples = sample_nonsquarefree_degrees(5, 200, 9);
        assert_eq!(samples.len(), 200);
        for a in samples {
            assert!(!a.is_squarefree());
            assert!(a.0.iter().all(|e| *e <= 2));
            assert!(a.total() <= 7);
        }
        assert!(sample_nonsquarefree_degrees(0, 10, 1).is_empty());
    }

    #[test]
    fn verdict_examples() {
        for field in [FieldSpec::Q, FieldSpec::GF2, FieldSpec::GF3] {
            let v = is_cm_algebraic(&hollow_triangle(), field).unwrap();
            assert!(v.is_cm);
            assert_eq!((v.depth, v.krull_dim), (2, 2));
        }
        let v = is_cm_algebraic(&two_disjoint_edges(), FieldSpec::Q).unwrap();
        assert!(!v.is_cm);
        assert_eq!((v.depth, v.krull_dim), (1, 2));
        assert_eq!(v.witness, Some(TorWitness { degree: 3, beta: 1 }));

        assert!(is_cm_algebraic(&rp2_six(), FieldSpec::Q).unwrap().is_cm);
        let v = is_cm_algebraic(&rp2_six(), FieldSpec::GF2).unwrap();
        assert!(!v.is_cm);
        assert_eq!((v.depth, v.krull_dim), (2, 3));

        let irr = is_cm_algebraic(&SimplicialComplex::irrelevant(), FieldSpec::Q).unwrap();
        assert!(irr.is_cm);
        assert_eq!((irr.depth, irr.krull_dim), (0, 0));
    }
}
