//! Library surface of the spinlab CLI.
