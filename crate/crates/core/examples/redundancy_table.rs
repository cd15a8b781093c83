//! Parity lengths of function-correcting codes next to classical error correction.
//!
//! Entries marked `*` are estimates of what a standard code would need.

use fcc::table::{render_rows, table_row, RowFunction, DEFAULT_K};

fn main() -> fcc::Result<()> {
    let k = DEFAULT_K;
    let functions = [
        RowFunction::Binary { k },
        RowFunction::LocallyBinary { k, e: 256 },
        RowFunction::Wt { k },
        RowFunction::Delta { k, threshold: 9 },
        RowFunction::MinMax { w: 4, l: 256 },
        RowFunction::Generic { name: "ml:sigmoid,eps=1".into(), k: 5 },
    ];
    let mut rows = Vec::new();
    for f in &functions {
        for t in 1..=3 {
            rows.push(table_row(f, t)?);
        }
    }
    print!("{}", render_rows(&rows));
    Ok(())
}
