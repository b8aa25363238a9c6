// mdbook cannot run listings that depend on a workspace crate, so each
// chapter is pulled in as a module doc comment and `cargo test --doc` runs
// its listings. One module per chapter keeps failures traceable.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("src/rulesets.md")]
pub mod rulesets {}
#[doc = include_str!("src/grundy.md")]
pub mod grundy {}
#[doc = include_str!("src/closed_forms.md")]
pub mod closed_forms {}
#[doc = include_str!("src/regularity.md")]
pub mod regularity {}
#[doc = include_str!("src/play.md")]
pub mod play {}
#[doc = include_str!("src/cli.md")]
pub mod cli {}
