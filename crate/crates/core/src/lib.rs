pub mod fixtures;
pub mod kasch;
pub mod module;
pub mod oracle;
mod par;
pub mod presentation;
pub mod ring;
pub mod workspace;
pub mod zmod;
