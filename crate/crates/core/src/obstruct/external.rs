//! Exclusions that rest on results outside this engine. They are quoted from
//! a fixed table and attached as notes; nothing here is computed.

/// Dimensions in which a stably parallelizable closed manifold can have `w_n != 0`.
pub const TOP_CLASS_DIMS: [usize; 3] = [2, 4, 8];

/// Codimensions `n - k` for which a fold map into a stably parallelizable
/// target does not force null-cobordance once only `w_n` can survive.
pub const SURVIVING_TARGET_DIMS: [usize; 3] = [1, 3, 7];

/// Note for the codimension `-1` power-of-two case.
pub fn top_class_note(n: usize) -> Option<String> {
    (n.is_power_of_two() && n >= 4 && !TOP_CLASS_DIMS.contains(&n)).then(|| {
        format!("external: the w{n} != 0 branch is excluded by a known result unless n is 2, 4 or 8")
    })
}

/// Note for a residual spanned by `w_n` alone.
pub fn top_number_note(n: usize, k: usize) -> Option<String> {
    let d = n - k;
    (!SURVIVING_TARGET_DIMS.contains(&d))
        .then(|| format!("external: with target dimension {d} not 1, 3 or 7 the source is null-cobordant"))
}
