//! Rebasing E -> G with F -> w dual(G) keeps the translations unitarily
//! equivalent; changing w gives new nets.

use wignerff::classify::{basis_change_residual, basis_change_unitary, census_basis, w_variant_census};
use wignerff::gf::{make_field, FieldBasis};
use wignerff::weylops::BasisPair;

fn main() -> wignerff::Result<()> {
    let f = make_field(2, 2)?;
    let w = f.parse("w")?;
    let from = BasisPair::from_w(census_basis(f), w)?;
    let to = BasisPair::from_w(FieldBasis::new(vec![f.one(), f.parse("wbar")?])?, w)?;
    let v = basis_change_unitary(&from, &to)?;
    println!("E = {} -> {}: residual {:.1e}", from.e(), to.e(), basis_change_residual(&v, &from, &to));

    let other = BasisPair::from_w(census_basis(f), f.one())?;
    println!("w = w -> w = 1: {:?}", basis_change_unitary(&from, &other).err());

    for (r, n) in [(2, 1), (3, 1), (2, 2)] {
        print!("{}", w_variant_census(make_field(r, n)?)?.table());
    }
    Ok(())
}
