//! Corpus to tf-idf vectors to files and back, then a quick audit.

use erasure_audit::datagen::{read_corpus, write_corpus};
use erasure_audit::prelude::*;
use erasure_audit::removal::mean_projection;
use erasure_audit::rng::Seed;

fn main() -> erasure_audit::Result<()> {
    let dir = std::env::temp_dir().join("erasure-audit-tfidf-example");
    let corpus_path = dir.join("corpus.jsonl");

    let docs = synthetic_corpus(&CorpusSpec::new(300, Seed(8)))?;
    write_corpus(&corpus_path, &docs)?;
    let docs = read_corpus(&corpus_path)?;

    let model = fit_tfidf(&docs, 1024)?;
    let out = transform_tfidf(&model, &docs)?;
    println!(
        "{} documents, vocabulary {} terms, {} empty rows; top terms {:?}",
        docs.len(),
        model.width(),
        out.empty_rows.len(),
        &model.vocabulary[..5]
    );

    let csv = dir.join("tfidf.csv");
    out.dataset.write_csv(&csv)?;
    let ds = load_embeddings(&csv, EmbeddingFormat::Csv)?;
    let cfg = RegularizationConfig::default();
    println!("cv accuracy before removal {:.3}", cross_val_accuracy(&ds, 32, &cfg, Seed(0))?);
    let projected = l2_normalize_rows(&mean_projection(&ds)?.output);
    println!("cv accuracy after mean projection {:.3}", cross_val_accuracy(&projected, 32, &cfg, Seed(0))?);
    println!("files in {}", dir.display());
    Ok(())
}
