//! Arithmetic in Z_4 = Z_2[w]/(w^2 + w + 1) at precision 2^8, and in its
//! residue field F_4.

use padic_dynamo::padic::PAdicContext;

fn main() -> padic_dynamo::Result<()> {
    let ctx = PAdicContext::new(2, 2, 8)?;
    println!("context: {}", ctx.descriptor());

    let w = ctx.generator();
    let three = ctx.from_int(3);
    println!("w * w     = {}", &w * &w);
    println!("w^3       = {}", w.pow(3));
    println!("3 + w     = {}", &three + &w);
    println!("1/(3 + w) = {}", (&three + &w).invert()?);

    let eight = ctx.from_int(8);
    println!("val(8) = {}, val(0) = {} (zero at precision)", eight.val(), ctx.zero().val());
    println!("8 is a unit: {}", eight.is_unit());

    let r = w.reduce();
    println!("in F_4: w^2 = {}, Frobenius(w) = {}, pth_root(w) = {}", r.pow(2), r.frobenius(), r.pth_root());
    let all: Vec<String> = ctx.residue_elements().map(|e| e.to_string()).collect();
    println!("F_4 = {{{}}}", all.join(", "));

    // Z_4 sits inside Z_16 through a Hensel-lifted root of w^2 + w + 1
    let big = PAdicContext::new(2, 4, 8)?;
    let emb = ctx.embedding_into(&big)?;
    let image = emb.apply(&w)?;
    println!("w in Z_16: {image}, and its cube is {}", image.pow(3));
    Ok(())
}
