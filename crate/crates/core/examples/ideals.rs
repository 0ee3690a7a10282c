// Stanley-Reisner ideals, saturation, and the two descriptions of a link
// ideal.

use facering::catalog;
use facering::face_ring::{
    link_ideal_two_ways, localization_identity_check, stanley_reisner_ideal,
};
use facering::{Face, Result};

pub fn run_example() -> Result<()> {
    let edges = catalog::two_disjoint_edges();
    let ideal = stanley_reisner_ideal(&edges);
    println!("I for two disjoint edges: {:?}", ideal.generators());
    println!(
        "saturated by x0: {:?}",
        ideal.saturate(Face::singleton(0)).generators()
    );

    let rp2 = catalog::rp2_six();
    for sigma in [Face::EMPTY, Face::singleton(0), Face::from_vertices([0, 1])] {
        let (direct, via_star) = link_ideal_two_ways(&rp2, sigma)?;
        println!(
            "RP2, link of {sigma}: {} generators, descriptions agree: {}, localization identity: {}",
            direct.generators().len(),
            direct == via_star,
            localization_identity_check(&rp2, sigma)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
