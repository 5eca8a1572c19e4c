//! Reference values that the table and check commands compare against.

/// `(f, log2 |G|, class, derived length)` for `A_{2,3}` under graded-lex.
pub const A23_ROWS: [(&str, u32, usize, usize); 4] =
    [("()", 10, 3, 2), ("(6,7)", 10, 3, 2), ("(6,7,8)", 8, 2, 2), ("(5,6,7,8)", 8, 2, 2)];

/// The five maximal-order rows for `A_{2,4}`.
pub const A24_ROWS: [(&str, u32, usize, usize); 5] = [
    ("()", 19, 4, 2),
    ("(15,16)", 19, 3, 3),
    ("(11,14)(15,16)", 19, 5, 3),
    ("(9,11)(10,13)(12,14)", 19, 5, 3),
    ("(9,12)(10,13)(11,14)", 19, 4, 2),
];

/// Double-coset counts `(p, k, count)` of the automorphism group acting on
/// `A#` (p = 2) or on the cyclic subgroups (p odd).
pub const DOUBLE_COSET_COUNTS: [(u32, usize, u128); 3] = [(2, 3, 4), (3, 3, 252), (2, 4, 3374)];

/// Orders `3^e` occurring over the `A_{3,3}` line-class representatives.
pub const A33_ORDER_EXPONENTS: [u32; 4] = [6, 7, 8, 9];

/// Field-inverse groups: `(q, order, Some(class))`, or `None` for abelian.
pub const FIELD_INVERSE: [(u32, u64, Option<usize>); 6] =
    [(8, 1 << 8, Some(2)), (16, 1 << 11, Some(2)), (27, 729, None), (5, 25, None), (7, 49, None), (11, 121, None)];

pub fn field_inverse(q: u32) -> Option<(u64, Option<usize>)> {
    FIELD_INVERSE.iter().find(|r| r.0 == q).map(|r| (r.1, r.2))
}

pub fn double_coset_count(p: u32, k: usize) -> Option<u128> {
    DOUBLE_COSET_COUNTS.iter().find(|r| r.0 == p && r.1 == k).map(|r| r.2)
}
