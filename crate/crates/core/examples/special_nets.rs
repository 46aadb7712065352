//! The odd-prime net whose Γ is fixed by all of SL(2), and the two N = 4
//! nets whose phase-point operators are products of one-qubit operators.

use wignerff::classify::{
    gamma, gamma_sl2_invariance, is_tensor_product, special_gamma_deviation, special_net_odd_prime,
    tensor_product_nets_n4, discriminant_d,
};
use wignerff::gf::make_field;
use wignerff::wigner::phase_point_operators;

fn main() -> wignerff::Result<()> {
    for r in [3, 5, 7] {
        let net = special_net_odd_prime(make_field(r, 1)?)?;
        let g = gamma(&net);
        println!(
            "N = {r}: choice {:?}, |Γ - formula| = {:.1e}, SL(2) deviation {:.1e}",
            net.choice().indices(),
            special_gamma_deviation(&g),
            gamma_sl2_invariance(&g)
        );
    }

    let (a, b) = tensor_product_nets_n4()?;
    for net in [&a, &b] {
        let ops = phase_point_operators(net);
        let products = ops.ops().iter().filter(|m| is_tensor_product(m, 1e-9)).count();
        println!(
            "N = 4 net {:?}: D = {}, {products}/16 product operators",
            wignerff::io::element_strings(net.choice().labels()),
            discriminant_d(net.choice())?
        );
    }
    Ok(())
}
