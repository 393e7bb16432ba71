mod common;

use common::{all_subsets, master_lp_value, naive_best_selection, naive_objective, random_instance, rng};
use multihit::data::{GeneCombination, Label, MutationMatrix};
use multihit::master::{build_master, BinaryStatus};
use multihit::metrics::objective_value;
use multihit::pricing::reduced_cost;
use rand::seq::SliceRandom;
use rand::Rng;

fn combos(m: &MutationMatrix, genes: &[Vec<usize>]) -> Vec<GeneCombination> {
    genes.iter().map(|g| GeneCombination::new(g.clone(), m).unwrap()).collect()
}

#[test]
fn full_pool_relaxation_matches_oracle() {
    let mut r = rng(3);
    for _ in 0..25 {
        let m = random_instance(&mut r, 6, 8);
        let pool = all_subsets(m.n_genes(), 2, 3);
        let beta = r.random_range(1..=3);
        let model = build_master(&m, combos(&m, &pool), beta).unwrap();
        let s = model.solve_relaxation(None).unwrap();
        let oracle = master_lp_value(&m, &pool, beta);
        assert!((s.objective - oracle).abs() <= 1e-6, "{} vs {oracle}", s.objective);
        // bounds of the relaxation solution
        assert!(s.x.iter().all(|&v| (-1e-9..=1.0 + 1e-9).contains(&v)));
        assert!(s.y.iter().all(|&v| v >= -1e-9));
        assert!(s.z.iter().sum::<f64>() <= beta as f64 + 1e-9);
        // every pool column prices out at an optimum
        for c in model.columns() {
            assert!(reduced_cost(c, &s.duals) <= 1e-6);
        }
    }
}

#[test]
fn binary_matches_subset_enumeration() {
    let mut r = rng(8);
    for case in 0..40 {
        let m = random_instance(&mut r, 8, 12);
        let mut all = all_subsets(m.n_genes(), 2, 3);
        all.shuffle(&mut r);
        all.truncate(10);
        let beta = 3;
        let model = build_master(&m, combos(&m, &all), beta).unwrap();
        let b = model.solve_binary(None, None).unwrap();
        assert_eq!(b.status, BinaryStatus::Optimal);
        let oracle = naive_best_selection(&m, &all, beta);
        assert_eq!(b.objective, oracle, "case {case}");
        assert!(b.selection.len() <= beta);
        let sel: Vec<&[usize]> = b.selection.iter().map(|&i| all[i].as_slice()).collect();
        assert_eq!(naive_objective(&m, &sel), b.objective);
        let relax = model.solve_relaxation(None).unwrap();
        assert!(b.objective as f64 <= relax.objective + 1e-6);
        assert!((b.bound - b.objective as f64).abs() < 1e-9);
    }
}

#[test]
fn figure_one_relaxation_is_integral() {
    // t1={g1,g2}, t2={g1..g4}, t3={g5,g6,g7}, n1={g1,g2}, n2={g5,g6,g7}
    let genes: Vec<String> = (1..=7).map(|i| format!("g{i}")).collect();
    let row = |on: &[usize]| (1..=7).map(|g| on.contains(&g)).collect::<Vec<_>>();
    let m = MutationMatrix::from_rows(
        genes,
        vec![
            ("t1", Label::Tumor, row(&[1, 2])),
            ("t2", Label::Tumor, row(&[1, 2, 3, 4])),
            ("t3", Label::Tumor, row(&[5, 6, 7])),
            ("n1", Label::Normal, row(&[1, 2])),
            ("n2", Label::Normal, row(&[5, 6, 7])),
        ],
    )
    .unwrap();
    let pool = vec![vec![0, 1], vec![2, 3]];
    // enumerate z in {0,1}^2 by hand: {}:0, {c1}:2-1=1, {c2}:1, {c1,c2}:2-1=1
    let model = build_master(&m, combos(&m, &pool), 10).unwrap();
    let s = model.solve_relaxation(None).unwrap();
    assert!((s.objective - 1.0).abs() < 1e-9);
    assert_eq!(naive_best_selection(&m, &pool, 10), 1);
    let b = model.solve_binary(None, None).unwrap();
    assert_eq!(b.objective, 1);
}

#[test]
fn tumor_only_columns_reach_union_bound() {
    let mut r = rng(17);
    for _ in 0..20 {
        let n_genes = 8;
        let n_tumor = 10;
        let genes = (0..n_genes).map(|g| format!("g{g}")).collect();
        let mut rows: Vec<(String, Label, Vec<bool>)> = (0..n_tumor)
            .map(|t| (format!("t{t}"), Label::Tumor, (0..n_genes).map(|_| r.random_bool(0.5)).collect()))
            .collect();
        rows.push(("n0".into(), Label::Normal, vec![false; n_genes]));
        let m = MutationMatrix::from_rows(genes, rows).unwrap();
        let mut pool = all_subsets(n_genes, 2, 2);
        pool.shuffle(&mut r);
        pool.truncate(6);
        let cols = combos(&m, &pool);
        let union = {
            let mut u = fixedbitset::FixedBitSet::with_capacity(m.tumor_count());
            for c in &cols {
                u.union_with(c.tumor_cover());
            }
            u.count_ones(..) as i64
        };
        let model = build_master(&m, cols, pool.len()).unwrap();
        let b = model.solve_binary(None, None).unwrap();
        assert_eq!(b.objective, union);
    }
}

#[test]
fn adding_positive_column_never_lowers_relaxation() {
    let mut r = rng(29);
    for _ in 0..30 {
        let m = random_instance(&mut r, 7, 10);
        let mut all = all_subsets(m.n_genes(), 2, 3);
        all.shuffle(&mut r);
        let mut model = build_master(&m, combos(&m, &all[..3]), 2).unwrap();
        let mut prev = model.solve_relaxation(None).unwrap();
        for g in &all[3..] {
            let c = GeneCombination::new(g.clone(), &m).unwrap();
            if reduced_cost(&c, &prev.duals) > 1e-6 {
                model.add_column(c).unwrap().unwrap();
                let next = model.solve_relaxation(prev.basis.as_ref()).unwrap();
                assert!(next.objective >= prev.objective - 1e-9);
                let cold = model.solve_relaxation(None).unwrap();
                assert!((cold.objective - next.objective).abs() < 1e-6);
                prev = next;
            }
        }
    }
}

#[test]
fn incumbent_callback_sees_verified_improvements() {
    let mut r = rng(41);
    let m = random_instance(&mut r, 8, 14);
    let pool = all_subsets(m.n_genes(), 2, 2);
    let model = build_master(&m, combos(&m, &pool), 3).unwrap();
    let mut seen = Vec::new();
    let mut cb = |sel: &[usize], obj: i64| {
        let chosen: Vec<GeneCombination> = sel.iter().map(|&i| model.columns()[i].clone()).collect();
        assert_eq!(objective_value(&chosen, &m).unwrap(), obj);
        seen.push(obj);
    };
    let b = model.solve_binary(None, Some(&mut cb)).unwrap();
    assert!(seen.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(seen.last().copied().unwrap_or(0), b.objective);
}

#[test]
fn column_shape_mismatch_is_rejected() {
    let mut r = rng(2);
    let a = random_instance(&mut r, 6, 8);
    let b = MutationMatrix::from_rows(
        a.gene_ids().to_vec(),
        vec![("t", Label::Tumor, vec![true; a.n_genes()])],
    )
    .unwrap();
    let c = GeneCombination::new(vec![0, 1], &b).unwrap();
    assert!(build_master(&a, vec![c], 2).is_err());
}
