// Building complexes, reading off faces, links and stars, and the JSON
// input format.

use facering::catalog;
use facering::complex::{enumerate_all_complexes, random_pure_complex};
use facering::harness::{parse_complex, ComplexFile};
use facering::{Face, Result, SimplicialComplex};

pub fn run_example() -> Result<()> {
    let edges = SimplicialComplex::from_vertex_lists(4, &[vec![0, 1], vec![2, 3]])?;
    println!("two disjoint edges: {}", edges.encoding());
    println!("  f-vector from dim -1: {:?}", edges.f_vector().0);
    println!("  minimal non-faces: {:?}", edges.minimal_nonfaces());

    let rp2 = catalog::rp2_six();
    let v0 = Face::singleton(0);
    let link = rp2.link(v0)?;
    println!(
        "RP2 on six vertices, dim {}, pure {}",
        rp2.dim(),
        rp2.is_pure()
    );
    println!(
        "  link of vertex 0: facets {:?} on ambient vertices {:?}",
        link.ambient_facets(),
        link.labels
    );
    println!("  open star of vertex 0 has {} faces", rp2.star(v0)?.len());

    let parsed = parse_complex(r#"{"n": 3, "facets": [[0, 1], [0, 2], [1, 2]]}"#)?;
    assert_eq!(parsed, catalog::hollow_triangle());
    println!(
        "round trip: {}",
        serde_json::to_string(&ComplexFile::from_complex(&parsed))?
    );

    let counts: Vec<usize> = (0..=4)
        .map(|n| enumerate_all_complexes(n).map(Iterator::count))
        .collect::<Result<_>>()?;
    println!("complexes on exactly n labeled vertices, n = 0..4: {counts:?}");

    let random = random_pure_complex(7, 2, 0.2, 42)?;
    println!("a seeded pure 2-dimensional complex: {}", random.encoding());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
