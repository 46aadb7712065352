//! Translation operators of two qubits for the pair E = F = (w, 1).

use wignerff::geometry::PhasePoint;
use wignerff::gf::make_field;
use wignerff::presets;
use wignerff::weylops::{commutation_phase, translation_operator, validate_basis_pair, BasisPair};

fn main() -> wignerff::Result<()> {
    let pair = presets::paper_n4_pair();
    let f = pair.field();
    println!("E = {}, F = {}, w = {}", pair.e(), pair.f(), pair.w().unwrap());

    let w = f.parse("w")?;
    for alpha in [PhasePoint::new(f.one(), f.zero()), PhasePoint::new(f.zero(), w), PhasePoint::new(w, w)] {
        let t = translation_operator(alpha, &pair);
        println!("T{alpha}: targets {:?}, phases i^{:?}", t.target(), t.phase_exponents());
    }

    let a = PhasePoint::new(f.one(), f.zero());
    let b = PhasePoint::new(f.zero(), f.one());
    println!("T_a T_b = {} T_b T_a", commutation_phase(a, b, &pair));

    // F must be w times the dual of E. The dual of (1, w) is (wbar, 1), so
    // (1, w) pairs with itself but not with (w, 1).
    let e = wignerff::FieldBasis::new(vec![f.one(), w])?;
    let g = wignerff::FieldBasis::new(vec![w, f.one()])?;
    println!("dual of {e} is {}", e.dual());
    println!("(1,w)/(1,w): w = {}", validate_basis_pair(&e, &e)?);
    println!("(1,w)/(w,1): {:?}", validate_basis_pair(&e, &g).err());
    let std = BasisPair::standard(make_field(3, 1)?);
    println!("standard N=3 pair has w = {}", std.w().unwrap());
    Ok(())
}
