//! Three independent routes to the linear complexity of a periodic sequence:
//! the iterative recurrence solver, the circulant matrix rank, and the degree
//! of the connection polynomial. They agree bit for bit, and the complexity
//! survives decimation by any stride coprime to the period.

use seqlc::analysis::{
    berlekamp_massey, connection_polynomial_of_cycle, decimate_cycle, lc_of_cycle,
    lc_via_circulant_rank,
};

fn main() {
    let cycle: Vec<u8> = vec![1, 1, 1, 0, 1, 0, 0, 0, 1, 0];
    let mut doubled = cycle.clone();
    doubled.extend_from_slice(&cycle);

    let bm = berlekamp_massey(&doubled).unwrap();
    let rank = lc_via_circulant_rank(&cycle).unwrap();
    let conn = connection_polynomial_of_cycle(&cycle).unwrap();

    println!("cycle                 {cycle:?}");
    println!("recurrence solver     {}", bm.complexity);
    println!("circulant rank        {rank}");
    println!(
        "connection polynomial {} (degree {})",
        conn.sparse_string(),
        conn.degree().unwrap()
    );
    assert_eq!(bm.complexity, rank);
    assert_eq!(bm.complexity, conn.degree().unwrap());

    // Stride 3 is coprime to the period 10; stride 5 is not.
    let dec = decimate_cycle(&cycle, 4, 3, cycle.len());
    println!(
        "decimated by 3        {dec:?} -> lc {}",
        lc_of_cycle(&dec).unwrap()
    );
    assert_eq!(lc_of_cycle(&dec).unwrap(), bm.complexity);

    let bad = decimate_cycle(&cycle, 1, 5, cycle.len());
    println!(
        "decimated by 5        {bad:?} -> lc {} (stride shares a factor, complexity drops)",
        lc_of_cycle(&bad).unwrap()
    );
}
