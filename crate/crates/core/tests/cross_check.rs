use edgering::characterize::{cross_check, sweep, Agreement};
use edgering::multipartite::Partition;
use edgering::polytope::Budget;

#[test]
fn spot_checks_at_d10() {
    let b = Budget::default();
    let spots: [&[usize]; 9] = [
        &[5, 5],
        &[2, 8],
        &[1, 1, 8],
        &[2, 4, 4],
        &[3, 3, 4],
        &[2, 2, 3, 3],
        &[1, 1, 4, 4],
        &[1, 1, 1, 1, 1, 5],
        &[2, 2, 2, 2, 2],
    ];
    for parts in spots {
        let p = Partition::new(parts).unwrap();
        let c = cross_check(&p, &b).unwrap();
        assert_eq!(c.status(), Agreement::Agree, "{p}: {c:?}");
    }
}

#[test]
fn complete_graph_on_ten_vertices() {
    let p = Partition::new(&[1; 10]).unwrap();
    let c = cross_check(&p, &Budget::default()).unwrap();
    assert_eq!(c.status(), Agreement::Agree);
    let a = c.direct.unwrap();
    assert!(a.almost_gorenstein && !a.level && !a.gorenstein);
}

#[test]
fn sweep_rows_for_named_partitions() {
    let rows = sweep(7, &Budget::default()).unwrap();
    let row = |s: &str| rows.iter().find(|r| r.parts == s).unwrap();
    assert!(row("2,2,2").gorenstein);
    assert!(row("2,2,3").level);
    assert!(!row("2,2,3").almost_gorenstein);
    let k6 = row("1,1,1,1,1,1");
    assert!(k6.almost_gorenstein && !k6.level);
    assert_eq!(k6.mu_of_c, Some(6));
    assert_eq!(k6.e_of_c.as_deref(), Some("6"));
    assert!(rows.iter().all(|r| r.verified == Agreement::Agree));
}
