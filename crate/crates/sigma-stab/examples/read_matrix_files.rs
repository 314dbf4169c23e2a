//! Loads matrices from the two supported on-disk formats — bare CSV rows and
//! JSON with explicit dimension — and shows the validation errors malformed
//! inputs produce. Format detection runs off the file extension.

use sigma_stab::matcore::Matrix;

fn main() {
    let csv = "-1,2\n2,-1\n";
    let m = Matrix::from_csv_str(csv).unwrap();
    println!("CSV input:\n{csv}\nparsed {0}x{0} matrix: {1:?}", m.n(), m.rows());

    let json = r#"{"n": 2, "entries": [[-1.0, -2.0], [2.0, -1.0]]}"#;
    let m = Matrix::from_json_str(json).unwrap();
    println!("\nJSON input:\n{json}\nparsed {0}x{0} matrix: {1:?}", m.n(), m.rows());
    println!("\nround-tripped back to JSON:\n{}", m.to_json_string());

    // Validation failures carry 1-based positions for error messages.
    println!("\nrejected inputs:");
    for bad in ["-1,2\n2\n", "-1,x\n2,-1\n", ""] {
        match Matrix::from_csv_str(bad) {
            Ok(_) => unreachable!(),
            Err(e) => println!("  {bad:?}: {e}"),
        }
    }
    let bad_json = r#"{"n": 3, "entries": [[-1.0, -2.0], [2.0, -1.0]]}"#;
    if let Err(e) = Matrix::from_json_str(bad_json) {
        println!("  mismatched n: {e}");
    }
    let nonfinite = r#"{"n": 1, "entries": [[null]]}"#;
    if let Err(e) = Matrix::from_json_str(nonfinite) {
        println!("  null entry: {e}");
    }
}
