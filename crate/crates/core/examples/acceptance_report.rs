//! Run a single acceptance criterion by number, or all of them.
//!
//! cargo run --release --example acceptance_report [ID]

use mobius_lab::acceptance::{run_all, run_one, Context};

fn main() -> mobius_lab::Result<()> {
    let ctx = Context::new()?;
    let outcomes = match std::env::args().nth(1).and_then(|s| s.parse::<u8>().ok()) {
        Some(id) => run_one(&ctx, id)
            .map(|o| vec![o])
            .ok_or_else(|| mobius_lab::Error::InvalidParameter(format!("no criterion {id}")))?,
        None => run_all(&ctx),
    };
    for o in outcomes {
        println!("{}", o.line());
    }
    Ok(())
}
