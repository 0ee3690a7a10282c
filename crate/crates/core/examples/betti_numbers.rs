// Betti numbers of face rings from squarefree Koszul strands.

use facering::catalog;
use facering::face_ring::{betti_numbers, depth, koszul_strand, projective_dimension};
use facering::harness::betti_csv;
use facering::homology::homology_dims;
use facering::{Face, FieldSpec, MultiDegree, Result};

pub fn run_example() -> Result<()> {
    let edges = catalog::two_disjoint_edges();
    let table = betti_numbers(&edges, FieldSpec::Q)?;
    println!("two disjoint edges: beta = {:?}", table.totals);
    println!(
        "  projdim {}, depth {}",
        projective_dimension(&table),
        depth(&table, edges.n())
    );
    for strand in table.breakdown.iter().flatten() {
        println!("  degree {}: {:?}", strand.degree, strand.betti);
    }

    let degree = MultiDegree::squarefree(4, Face::full(4));
    let strand = koszul_strand(&edges, &degree, FieldSpec::GF2)?;
    println!(
        "top strand dims {:?}, homology {:?}",
        strand.dims(),
        homology_dims(&strand)?.dims
    );

    let rp2 = catalog::rp2_six();
    let tables = [
        betti_numbers(&rp2, FieldSpec::Q)?,
        betti_numbers(&rp2, FieldSpec::GF2)?,
    ];
    print!("{}", betti_csv(&tables, false));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
