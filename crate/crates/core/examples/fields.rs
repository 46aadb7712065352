//! Arithmetic in F_4 and F_9, traces and dual bases.

use wignerff::gf::{make_field, operation_tables, FieldBasis};

fn main() -> wignerff::Result<()> {
    let f4 = make_field(2, 2)?;
    println!("F_4 = F_2[x]/({})\n{}", f4.modulus_string(), operation_tables(f4));

    let w = f4.parse("w")?;
    println!("w^2 = {}, w^3 = {}, tr(w) = {}", w * w, w.pow(3), w.trace());

    let e = FieldBasis::new(vec![w, f4.one()])?;
    println!("basis {e} has dual {}", e.dual());
    for x in f4.elements() {
        println!("  {:<4} = {:?} in {e}", x.to_string(), e.expand(x));
    }

    let f9 = make_field(3, 2)?;
    let g = f9.primitive_element();
    println!("\nF_9 = F_3[x]/({}), primitive element {g} of order {}", f9.modulus_string(), g.multiplicative_order());
    let inverses: Vec<String> = f9.nonzero().map(|x| format!("{x}->{}", x.inv().unwrap())).collect();
    println!("inverses: {}", inverses.join(" "));
    Ok(())
}
