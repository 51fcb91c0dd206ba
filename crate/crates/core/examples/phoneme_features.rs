//! Feature vectors of a few phonemes and the distances between them.

use phonalpha::features::{encode_symbol, FEATURE_LAYOUT};
use phonalpha::Inventory;

fn main() -> phonalpha::Result<()> {
    let inv = Inventory::standard();
    let names: Vec<String> = FEATURE_LAYOUT
        .iter()
        .map(|(f, w)| format!("{f:?}/{w}"))
        .collect();
    println!("layout: {}", names.join(" "));

    let symbols = [
        "P", "B", "T", "D", "K", "G", "S", "Z", "N", "L", "R", "IY", "AA", "UW",
    ];
    for s in symbols {
        println!("{s:>3}  {}", encode_symbol(inv, s)?);
    }

    println!();
    print!("    ");
    for s in symbols {
        print!("{s:>4}");
    }
    println!();
    for a in symbols {
        print!("{a:>4}");
        let va = encode_symbol(inv, a)?;
        for b in symbols {
            print!("{:>4}", va.distance(encode_symbol(inv, b)?));
        }
        println!();
    }
    Ok(())
}
