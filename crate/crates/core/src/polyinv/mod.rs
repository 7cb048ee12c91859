//! Polynomial invariants of 2-bridge knots.

pub mod bracket;
pub mod diagram;
pub mod laurent;
pub mod seifert;
pub mod vassiliev;

pub use bracket::{bracket_pair, jones, jones_of_sequence, BracketPair};
pub use laurent::LaurentPoly;
pub use seifert::{alexander_conway, genus_rational, seifert_matrix, signature};
pub use vassiliev::{certify_n_similar_to_unknot, vassiliev_extract, SimilarityReport, VassilievData};
