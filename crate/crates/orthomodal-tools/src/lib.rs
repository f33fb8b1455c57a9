//! IO companion for the `orthomodal` crate: file formats, exports, and
//! the machinery behind the `orthomodal` command-line binary.
