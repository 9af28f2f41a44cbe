//! Soft clipping: a smooth, invertible version of min(1, max(0, x)).
//!
//! sc_c is the distribution function of the logistic-mollified uniform.
//! As c shrinks it approaches the clipped ReLU, while staying strictly
//! increasing with an exact closed-form inverse.

use mollified::{crelu, SoftClip};

fn main() -> mollified::Result<()> {
    for c in [0.2, 0.05, 0.01] {
        let clip = SoftClip::new(c)?;
        println!("c = {c}");
        for x in [-0.5, 0.0, 0.25, 0.5, 1.0, 1.5] {
            let q = clip.sc(x);
            println!(
                "  sc({x:>5}) = {q:<22} crelu = {:<4} slope = {}",
                crelu(x),
                clip.derivative(x)
            );
        }
        println!();
    }

    let clip = SoftClip::new(0.1)?;
    let x = 0.8;
    let q = clip.sc(x);
    let back = clip.sc_inv(q)?;
    println!("round trip at c=0.1: sc({x}) = {q}, sc_inv back = {back}");

    // the inverse rejects the endpoints; sc never reaches them exactly
    // until the value saturates in double precision
    println!("sc_inv(1.0) -> {:?}", clip.sc_inv(1.0).err());
    Ok(())
}
