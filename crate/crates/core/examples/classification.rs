//! Equivalence and similarity classes of nets for N = 3, 4, 5.

use wignerff::classify::{are_equivalent, discriminant_d, gamma_00, similarity_orbits};
use wignerff::geometry::PhasePoint;
use wignerff::gf::make_field;
use wignerff::net::{build_net, translate_net, RayChoice};
use wignerff::presets;
use wignerff::weylops::BasisPair;

fn main() -> wignerff::Result<()> {
    let f3 = make_field(3, 1)?;
    let pair3 = BasisPair::standard(f3);
    let a = build_net(&pair3, RayChoice::zeros(f3))?;
    let b = translate_net(&a, PhasePoint::new(f3.one(), f3.from_int(2)));
    println!("net and its translate equivalent: {}", are_equivalent(&a, &b)?);
    let c = build_net(&pair3, RayChoice::parse(f3, &["0", "0", "2", "1"])?)?;
    println!("zero net vs (0,0,2,1) equivalent: {}", are_equivalent(&a, &c)?);
    for (name, net) in [("zero", &a), ("(0,0,2,1)", &c)] {
        println!("3 Gamma_00g for {name}:");
        for row in gamma_00(net).iter().rev() {
            println!("  {:?}", row.iter().map(|z| (3.0 * z.re).round() + 0.0).collect::<Vec<_>>());
        }
    }

    println!();
    print!("{}", similarity_orbits(&pair3)?.table());
    let rep4 = similarity_orbits(&presets::paper_n4_pair())?;
    print!("{}", rep4.table());
    for o in &rep4.orbits {
        println!("  orbit of size {} has D = {}", o.size, discriminant_d(&o.members[0])?);
    }
    for c in &rep4.burnside.classes {
        println!("  class of {:>2} elements fixes {:>2} classes", c.size, c.fixed);
    }
    print!("{}", similarity_orbits(&BasisPair::standard(make_field(5, 1)?))?.table());
    Ok(())
}
