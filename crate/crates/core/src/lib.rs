pub mod battery;
pub mod catalog;
pub mod cli;
pub mod embedding;
pub mod group;
pub mod gset;
pub mod io;
pub mod oracle;
pub mod pile;
pub mod presentation;
pub mod verify;
