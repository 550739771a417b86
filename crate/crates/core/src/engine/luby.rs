//! The Luby restart sequence: 1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8, ...

/// Returns the `i`-th element of the Luby sequence, 1-based.
///
/// Restart intervals are this value times the configured base unit, so the
/// schedule revisits short intervals forever while occasionally doubling.
pub fn luby(i: u64) -> u64 {
    assert!(i > 0, "the Luby sequence is 1-based");
    // Walk down the smallest complete binary subsequence containing i.
    let mut x = i - 1;
    let (mut size, mut level) = (1u64, 0u32);
    while size < x + 1 {
        level += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        level -= 1;
        x %= size;
    }
    1 << level
}
