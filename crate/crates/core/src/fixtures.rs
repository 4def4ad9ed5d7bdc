//! Small worked instances shared by tests, the bundled instance files and
//! the documentation.

use crate::matroid::Matroid;
use crate::set::ElementSet;

/// The two seven-element matroids of the worked exchange-graph example,
/// on ground set `0..8` with element `0` a loop in both so that ids match
/// the example's labels `1..=7`.
pub fn worked_example() -> (Matroid, Matroid) {
    let (b1, b2) = worked_example_bases();
    (
        Matroid::from_bases(8, b1).expect("valid bases"),
        Matroid::from_bases(8, b2).expect("valid bases"),
    )
}

pub fn worked_example_bases() -> (Vec<ElementSet>, Vec<ElementSet>) {
    let sets = |lists: &[[usize; 4]]| lists.iter().map(|l| ElementSet::from(*l)).collect();
    (
        sets(&[[1, 2, 3, 4], [1, 2, 3, 5], [1, 3, 5, 6], [1, 2, 5, 6], [1, 2, 5, 7]]),
        sets(&[
            [1, 2, 3, 6],
            [1, 2, 3, 7],
            [1, 2, 5, 6],
            [1, 3, 5, 6],
            [1, 2, 5, 7],
            [2, 3, 4, 6],
        ]),
    )
}
