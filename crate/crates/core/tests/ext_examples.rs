use tableau_orders::embedding::{hom_leq_over_family, picket_family, Embedding};
use tableau_orders::linalg::PrimeField;
use tableau_orders::orders::{box_leq_lr, dom_leq_lr, increase_moves_lr, MoveRecord};
use tableau_orders::ses::{ext_witness_increase, SesCase};
use tableau_orders::{LrTableau, Partition};

fn staircase(entries: &[usize]) -> LrTableau {
    let n = entries.len();
    let outer = Partition::new((1..=n).rev().collect()).unwrap();
    let inner = Partition::new((1..n).rev().collect()).unwrap();
    let cells: Vec<_> = entries
        .iter()
        .enumerate()
        .map(|(i, &e)| (n - i, i + 1, e))
        .collect();
    LrTableau::from_cells(&outer, &inner, &cells).unwrap()
}

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

#[test]
fn two_step_chain_in_seven_staircase() {
    let gamma = staircase(&[3, 2, 1, 1, 2, 1, 1]);
    let hat = staircase(&[3, 2, 3, 1, 2, 1, 1]);
    let delta = staircase(&[4, 2, 3, 1, 2, 1, 1]);
    assert!(box_leq_lr(&delta, &hat) && box_leq_lr(&hat, &gamma));
    assert!(dom_leq_lr(&delta, &gamma).unwrap());

    let first = MoveRecord::LrIncrease { column: 3, old: 1, new: 3 };
    assert!(increase_moves_lr(&gamma).contains(&(hat.clone(), first.clone())));
    let w = ext_witness_increase(f2(), &gamma, &first).unwrap();
    assert_eq!(w.delta, hat);
    assert_eq!(w.case, SesCase::Gap);
    assert_eq!((w.m.clone(), w.n.clone()), (vec![1, 2, 4], vec![]));
    assert_eq!(w.core.left, Embedding::pole(f2(), &[4]).unwrap());
    assert_eq!(w.core.right, Embedding::pole(f2(), &[1, 2]).unwrap());
    assert!(w.sequence.is_exact());
    assert_eq!(w.end_sum().unwrap().lr_tableau().unwrap(), gamma);

    let second = MoveRecord::LrIncrease { column: 1, old: 3, new: 4 };
    let w = ext_witness_increase(f2(), &hat, &second).unwrap();
    assert_eq!(w.delta, delta);
    assert_eq!(w.case, SesCase::NoGap2);
    assert_eq!((w.m.clone(), w.n.clone()), (vec![1, 2, 4, 6], vec![3, 5]));
    assert_eq!(
        w.core.middle,
        Embedding::d_embedding(f2(), &[1, 2, 4, 6], &[3, 5]).unwrap()
    );
    assert_eq!(w.sequence.middle.lr_tableau().unwrap(), delta);
    let ends = w.end_sum().unwrap();
    assert_eq!(ends.lr_tableau().unwrap(), hat);
    let family = picket_family(f2(), 7, 7);
    assert!(hom_leq_over_family(&w.sequence.middle, &ends, &family).unwrap());
}

#[test]
fn witness_rejects_non_increase_moves() {
    let gamma = staircase(&[3, 2, 1, 1, 2, 1, 1]);
    let swap = MoveRecord::LrSwap { smaller: 1, larger: 2 };
    assert!(ext_witness_increase(f2(), &gamma, &swap).is_err());
    let bogus = MoveRecord::LrIncrease { column: 3, old: 2, new: 3 };
    assert!(ext_witness_increase(f2(), &gamma, &bogus).is_err());
}

#[test]
fn witnesses_over_other_fields() {
    let gamma = staircase(&[3, 2, 1, 1, 2, 1, 1]);
    let mv = MoveRecord::LrIncrease { column: 3, old: 1, new: 3 };
    let a = ext_witness_increase(f2(), &gamma, &mv).unwrap();
    for p in [3, 5, 7] {
        let w = ext_witness_increase(PrimeField::new(p).unwrap(), &gamma, &mv).unwrap();
        assert!(w.sequence.is_exact());
        assert_eq!((w.case, &w.m, &w.n), (a.case, &a.m, &a.n));
        assert_eq!(w.sequence.middle.lr_tableau().unwrap(), a.delta);
    }
}
