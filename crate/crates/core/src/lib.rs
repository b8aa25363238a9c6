//! Sprague-Grundy analysis of partition games, where a move splits one heap
//! into `c + 1` non-empty heaps for some cut-number `c` of the ruleset.
//!
//! ```
//! use cutkit::engine::compute_table;
//! use cutkit::regularity::certify;
//!
//! let spec = "1,2,7".parse().unwrap();
//! let table = compute_table(&spec, 224, 1).unwrap();
//! let (h, _) = certify(&spec, &table).unwrap().unwrap();
//! assert_eq!((h.p, h.s), (28, 16));
//! ```

pub mod closedform;
pub mod engine;
pub mod export;
pub mod notation;
pub mod play;
pub mod regularity;
pub mod ruleset;
pub mod tables;
