//! Data provisioning: synthetic Gaussian data, tf-idf bag-of-words
//! vectors, and ingestion of precomputed embeddings.

mod corpus;
mod embeddings;
mod gaussian;
mod tfidf;

pub use corpus::{read_corpus, synthetic_corpus, write_corpus, CorpusSpec, Document};
pub use embeddings::{load_embeddings, EmbeddingFormat};
pub use gaussian::{generate_gaussian, SyntheticSpec};
pub use tfidf::{fit_tfidf, tokenize, transform_tfidf, TfidfOutput, VectorizerModel, DEFAULT_DIMENSION};
