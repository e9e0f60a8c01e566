//! Placeholder; fleshed out next.
