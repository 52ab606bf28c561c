use mcluster::decomposition::{decompose, expected_component_count, predict, verify_decomposition};
use mcluster::export::{from_dot, quiver_document, to_dot};
use mcluster::homological::{cone, hom_dim_c};
use mcluster::polygon::enumerate_diagonals;
use mcluster::tquiver::{build_gamma_m, iso_translation_quivers};
use mcluster::PolygonConfig;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn components_partition_all_diagonals(n in 2u32..6, m in 1u32..7) {
        let cfg = PolygonConfig::new(n, m).unwrap();
        let reports = decompose(&cfg).unwrap();
        let total: usize = reports.iter().map(|r| r.size).sum();
        prop_assert_eq!(total, enumerate_diagonals(cfg.sides()).len());
        prop_assert_eq!(reports.len(), expected_component_count(m));
        prop_assert_eq!(reports.len(), predict(&cfg).component_count());
        prop_assert!(verify_decomposition(&cfg).is_ok());
    }

    #[test]
    fn gamma_m_component_is_the_m_diagonal_quiver(n in 2u32..6, m in 1u32..7) {
        let cfg = PolygonConfig::new(n, m).unwrap();
        let reports = decompose(&cfg).unwrap();
        let gm = reports.iter().find(|r| r.is_gamma_m).unwrap();
        prop_assert!(iso_translation_quivers(&gm.component, &build_gamma_m(&cfg)).is_some());
    }

    #[test]
    fn dot_is_lossless(n in 2u32..7, m in 1u32..6) {
        let cfg = PolygonConfig::new(n, m).unwrap();
        let doc = quiver_document(&cfg, &build_gamma_m(&cfg));
        let back = from_dot(&to_dot(&doc)).unwrap();
        prop_assert_eq!(back.vertices, doc.vertices);
        prop_assert_eq!(back.arrows, doc.arrows);
        prop_assert_eq!(back.tau, doc.tau);
    }

    #[test]
    fn cones_commute_with_rotation(sides in 5u32..11, a in 0usize..64, b in 0usize..64, step in 1i64..12) {
        let cfg = PolygonConfig::with_sides(sides).unwrap();
        let all = enumerate_diagonals(sides);
        let (d1, d2) = (all[a % all.len()], all[b % all.len()]);
        let (r1, r2) = (d1.rotate(step, sides), d2.rotate(step, sides));
        prop_assert_eq!(hom_dim_c(&d1, &d2, &cfg), hom_dim_c(&r1, &r2, &cfg));
        match (cone(&d1, &d2, &cfg), cone(&r1, &r2, &cfg)) {
            (Ok(c), Ok(rc)) => {
                let mut rotated: Vec<_> = c.summands.iter().map(|d| d.rotate(step, sides)).collect();
                rotated.sort();
                prop_assert_eq!(rotated, rc.summands);
            }
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "rotation changed whether Hom vanishes"),
        }
    }
}
