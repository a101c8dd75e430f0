//! Writing and reading the JSON state format.
//!
//! cargo run --example state_io

use geoent::haar_random_state;
use geoent::io::{parse_state, state_to_json};

fn main() -> geoent::Result<()> {
    let s = haar_random_state(2, 3)?;
    let text = state_to_json(&s);
    println!("{text}");
    let back = parse_state(&text, false)?;
    println!("round trip fidelity {:.16}", back.state.fidelity(&s)?);

    // Slightly off-norm input is rescaled with a warning; far-off input is refused.
    let loose = r#"{"n_qubits": 1, "amplitudes": [[0.6, 0], [0, 0.8000001]]}"#;
    println!("{:?}", parse_state(loose, false)?.warning);
    match parse_state(r#"{"n_qubits": 1, "amplitudes": [[1, 0], [1, 0]]}"#, false) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    match parse_state(r#"{"n_qubits": 2, "amplitudes": [[1, 0]]}"#, false) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
