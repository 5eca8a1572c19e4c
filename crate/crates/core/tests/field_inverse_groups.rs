use wkc_core::enumerator::EnumerationOptions;
use wkc_core::field::FiniteField;
use wkc_core::fieldlab::inversion_presentation;
use wkc_core::regular::RegularGroup;
use wkc_core::structure::{analyze, GroupAnalysis};

fn inverse_group(p: u32, k: usize) -> GroupAnalysis {
    let f = FiniteField::new(p, k).unwrap();
    let pres = inversion_presentation(&f).unwrap();
    analyze(&RegularGroup::from_presentation(&pres, EnumerationOptions::default()).unwrap())
}

#[test]
fn gf8_inverse_group() {
    let g = inverse_group(2, 3);
    assert_eq!(g.order, 1 << 8);
    assert_eq!(g.nilpotency_class, Some(2));
}

#[test]
fn gf16_inverse_group() {
    let g = inverse_group(2, 4);
    assert_eq!(g.order, 1 << 11);
    assert_eq!(g.nilpotency_class, Some(2));
}

// The listed value for GF(27) is abelian of order 3^6. Any x (x) y -> Tr(cxy)
// with Tr(c) = 0 kills every a (x) a^{-1}, so for k >= 2 the commutator
// relations never span F (x) F and the group cannot be abelian.
#[test]
fn gf27_inverse_group_is_not_abelian() {
    let g = inverse_group(3, 3);
    assert_eq!(g.order, 3usize.pow(8));
    assert_eq!(g.nilpotency_class, Some(2));
}

fn rank_mod(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = (1..p).find(|t| t * rows[rank][c] % p == 1).unwrap();
        let pivot: Vec<u32> = rows[rank].iter().map(|x| x * inv % p).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let m = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p * p - m * y) % p;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

// In a class-2 quotient [a, b'] is bilinear, so the commutator subgroup is
// F (x) F modulo the span of a (x) a^{-1}. All these groups have class 2.
#[test]
fn order_matches_tensor_quotient() {
    for (p, k) in [(2u32, 3usize), (2, 4), (3, 2), (3, 3), (5, 2)] {
        let f = FiniteField::new(p, k).unwrap();
        let rows: Vec<Vec<u32>> = f
            .elements()
            .skip(1)
            .map(|a| {
                let (u, v) = (f.coefficients(a), f.coefficients(f.inv(a)));
                u.iter().flat_map(|x| v.iter().map(move |y| x * y % p)).collect()
            })
            .collect();
        let span = rank_mod(rows, p);
        let expected = (p as usize).pow((2 * k + k * k - span) as u32);
        let g = inverse_group(p, k);
        assert_eq!(g.order, expected, "GF({p}^{k})");
        assert!(g.nilpotency_class.unwrap() <= 2);
    }
}

#[test]
fn prime_fields_give_direct_products() {
    for p in [5u32, 7, 11] {
        let g = inverse_group(p, 1);
        assert_eq!(g.order, (p * p) as usize, "p = {p}");
        assert!(g.is_abelian());
        assert_eq!(g.abelian_invariants, vec![p as u64, p as u64]);
    }
}
