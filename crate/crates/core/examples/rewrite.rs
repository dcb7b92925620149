//! Show how the preprocessing pipeline rewrites requirements given on the
//! command line, with the tagged form and every rule that fired.
//!
//!     cargo run -p reqclass --example rewrite -- "Only registered users shall access the system."

use reqclass::corpus::read_corpus_file;
use reqclass::preprocess::{PipelineConfig, Preprocessor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sample = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("assets/sample_corpus.csv");
    let corpus = read_corpus_file(&sample, None)?;
    let pre = Preprocessor::fit(&PipelineConfig::default(), &corpus)?;
    for (i, text) in std::env::args().skip(1).enumerate() {
        let r = pre.process(&format!("arg{i}"), &text)?;
        println!("{}", r.text);
        let tagged: Vec<String> = r
            .tagged
            .tokens
            .iter()
            .map(|t| format!("{}/{}", t.surface, t.pos))
            .collect();
        println!("  {}", tagged.join(" "));
        for f in &r.fired {
            println!("  [{} {}] {} -> {}", f.stage, f.rule, f.before, f.after);
        }
    }
    Ok(())
}
