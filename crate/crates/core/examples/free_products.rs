//! Normal forms in free products of cyclic groups and the Kurosh rewriting of
//! a kernel element.
//!
//! `cargo run --example free_products`

use sigma_artin::free_product::{letters_reduced, parse_word, Ambient, Signature, SpokeFactor};

fn main() -> sigma_artin::Result<()> {
    let sig = Signature::new(3, vec![SpokeFactor { spoke: 2, order: 3, width: 2 }])?;

    let w = parse_word(&sig, Ambient::Mi(2), "y[0]^2 y[0]^2 x[1,2] x[1,2]^-1 y[3]")?;
    println!("normal form  {}", sig.normal_form(&w)?);

    let a = parse_word(&sig, Ambient::Mi(2), "x[0,2] y[1]")?;
    let b = parse_word(&sig, Ambient::Mi(2), "x[1,2]^-1")?;
    println!("a^3          {}", sig.power(&a, 3));
    println!("a^b          {}", sig.conjugate(&a, &b)?);

    // y[1] conjugated by x[0,2] x[1,2] lies in the kernel of M_2 -> K_2.
    let k = parse_word(&sig, Ambient::Mi(2), "x[1,2]^-1 x[0,2]^-1 y[1] x[0,2] x[1,2] y[5]^2")?;
    let letters = sig.kurosh_letters(&k)?;
    for l in &letters {
        println!("letter       y[{}]^{} by {}", l.index, l.exponent, l.conjugator(&sig));
    }
    println!("reduced      {}", letters_reduced(&letters));
    println!("round trip   {}", sig.assemble_letters(2, &letters) == k);
    Ok(())
}
