//! Controlled natural language for human-monitoring requirements.
//!
//! A `.hmreq` document declares stakeholders and actors and then lists
//! requirements of the form
//!
//! ```text
//! req R1: While a Shop_Floor_Worker "is working in dangerous areas", the System shall
//!     track "the location" of the Shop_Floor_Worker by means of "a GPS sensor".
//!     Relevant-Stakeholders: Shop_Floor_Worker, Manager, Product_Owner.
//! ```
//!
//! The verb after the modal selects a rule frame from the [`Lexicon`], which
//! fixes the rest of the sentence. Parsed requirements can be exported to
//! JSON, bound to stakeholder values in a [`Project`], and scored for
//! potential value conflicts with [`ValueSpace`].

pub mod ast;
pub mod diagnostic;
pub mod export;
pub mod lexer;
pub mod lexicon;
pub mod parser;
pub mod project;
pub mod render;
mod resolve;
pub mod source;
pub mod validate;
pub mod values;

pub use ast::RequirementDocument;
pub use diagnostic::{Code, Diagnostic, Severity};
pub use export::{export, from_json, to_json, ExportBlocked, ImportError};
pub use lexicon::{Lexicon, LexiconError, RuleFrame};
pub use parser::{parse_document, Parsed};
pub use project::{load_project, save_project, Project, ProjectError, UpsertError, ValueAssignment};
pub use render::{render_document, render_requirement};
pub use source::{SourceDocument, Span};
pub use validate::{check, validate};
pub use values::{
    requirement_conflicts, ConflictReport, ConflictScore, Quartile, SchwartzValue, ValueError,
    ValueGroup, ValueSpace,
};
