//! Prints the generated datasets for a seed as JSON.

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let sets = bwtex_study::generate_datasets(seed);
    println!("{}", serde_json::to_string_pretty(&sets).unwrap());
}
