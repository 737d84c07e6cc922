//! Rank bookkeeping behind the bound: binary expansion of a matrix over
//! F2[x]/(p^r) keeps at least deg(p) times the rank of its reduction mod p,
//! and an r-circulant's rank over an extension field falls out of one gcd.

use seqlc::extfield::ExtensionFieldContext;
use seqlc::gf2linalg::{
    block_rank_check, build_r_circulant_ext, ext_matrix_gf2_expansion, ext_matrix_rank,
    r_circulant_rank_ext,
};
use seqlc::extfield::ExtensionPolynomial;
use seqlc::gf2poly::BinaryPolynomial;

fn main() {
    // A 2x2 matrix over F2[x]/(p^2) with p = x^2 + x + 1.
    let p = BinaryPolynomial::parse("x^2 + x + 1").unwrap();
    let entries = vec![
        vec![
            BinaryPolynomial::parse("1").unwrap(),
            BinaryPolynomial::parse("x^3 + x").unwrap(),
        ],
        vec![
            BinaryPolynomial::parse("x^2 + x + 1").unwrap(),
            BinaryPolynomial::parse("x").unwrap(),
        ],
    ];
    let (full, quotient) = block_rank_check(&entries, &p, 2).unwrap();
    println!("binary rank {full}, rank mod p {quotient}, deg p = 2");
    assert!(full >= 2 * quotient);

    // An alpha-circulant over F16 = F2[x]/(x^4 + x + 1), three ways.
    let ctx = ExtensionFieldContext::new(BinaryPolynomial::parse("x^4 + x + 1").unwrap()).unwrap();
    let a = ctx.alpha();
    let row = vec![
        a.pow(3).unwrap(),
        a.pow(7).unwrap(),
        ctx.one(),
        a.pow(11).unwrap(),
    ];
    let r = a.pow(-1).unwrap();

    let mat = build_r_circulant_ext(&row, &r).unwrap();
    let by_elimination = ext_matrix_rank(&mat).unwrap();
    let by_expansion = ext_matrix_gf2_expansion(&mat).unwrap().rank();
    let w = ExtensionPolynomial::from_elements(&ctx, row).unwrap();
    let by_gcd = r_circulant_rank_ext(&w, 4, &r).unwrap();

    println!("field elimination {by_elimination}");
    println!("binary expansion  {by_expansion} = 4 * {by_elimination}");
    println!("gcd shortcut      {by_gcd}");
    assert_eq!(by_elimination, by_gcd);
    assert_eq!(by_expansion, 4 * by_elimination);
}
