//! Lines and striations of the 3 x 3 phase space, and SL(2) acting on them.

use wignerff::geometry::{sl2_group, striations, translate_line, PhasePoint};
use wignerff::gf::make_field;

fn main() -> wignerff::Result<()> {
    let f = make_field(3, 1)?;
    for s in striations(f) {
        println!("striation {} (direction {}):", s.index, s.direction);
        for l in &s.lines {
            let pts: Vec<String> = l.points().iter().map(|p| p.to_string()).collect();
            println!("  {:?} -> {}", (l.a().to_string(), l.b().to_string(), l.c().to_string()), pts.join(" "));
        }
    }

    let ray = striations(f)[2].ray();
    let alpha = PhasePoint::new(f.one(), f.zero());
    println!("\nray {:?} shifted by {alpha} has offset {}", ray.points(), translate_line(ray, alpha).offset());

    let group = sl2_group(f);
    println!("|SL(2, F_3)| = {}", group.len());
    let l = group[5];
    println!("{l:?} permutes striations as {:?}", l.striation_permutation()?);
    Ok(())
}
