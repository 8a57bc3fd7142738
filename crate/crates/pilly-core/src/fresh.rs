use std::sync::atomic::{AtomicUsize, Ordering};

static COUNTER: AtomicUsize = AtomicUsize::new(0);

/// Marker separating a surface name from its uniquifying suffix. It cannot
/// appear in source text, so generated names never collide with user names.
pub const SEPARATOR: char = '%';

/// A name that no other call has returned in this process.
pub fn fresh(base: &str) -> String {
    let n = COUNTER.fetch_add(1, Ordering::Relaxed);
    format!("{}{}{}", surface(base), SEPARATOR, n)
}

/// The user-facing part of a possibly generated name.
pub fn surface(name: &str) -> &str {
    match name.find(SEPARATOR) {
        Some(i) => &name[..i],
        None => name,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_names_are_distinct_and_keep_their_base() {
        let a = fresh("x");
        let b = fresh("x%12");
        assert_ne!(a, b);
        assert_eq!(surface(&a), "x");
        assert_eq!(surface(&b), "x");
    }
}
