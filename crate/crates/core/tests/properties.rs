use pentasphere::avc3::enumerate_avc3;
use pentasphere::combo::{permutations, Combo, Perm};
use pentasphere::linalg::forces_equal;
use pentasphere::sphertrig::{
    diagonal_quadratic, interior_angles, isosceles_base, lemma7_filter, quad_diagonal_cos, realize_pentagon, spherical_area,
};
use pentasphere::tiling::{all_tilings, CombTiling, NamedTiling, Tile};
use pentasphere::vec3::Vec3;
use proptest::prelude::*;
use std::f64::consts::PI;
use std::sync::OnceLock;

fn tilings() -> &'static [NamedTiling] {
    static T: OnceLock<Vec<NamedTiling>> = OnceLock::new();
    T.get_or_init(all_tilings)
}

/// Renumbers tiles by `perm`, starts tile `t` at corner `rot[t]` and, when
/// `mirror` is set, reverses every tile.
fn relabel(t: &CombTiling, perm: &[usize], rot: &[usize], mirror: bool) -> CombTiling {
    let n = t.f();
    // Old slot (u, i) becomes new slot (perm[u], j).
    let new_slot = |s: usize| {
        let (u, i) = (s / 5, s % 5);
        let i = if mirror { 4 - i } else { i };
        5 * perm[u] + (i + 5 - rot[u]) % 5
    };
    let mut tiles = vec![Tile { labels: [0; 5], orientation: 1 }; n];
    for (u, tile) in t.tiles.iter().enumerate() {
        let corner = |j: usize| if mirror { (5 - j) % 5 } else { j };
        let labels = std::array::from_fn(|k| tile.labels[corner((k + rot[u]) % 5)]);
        tiles[perm[u]] = Tile { labels, orientation: if mirror { -tile.orientation } else { tile.orientation } };
    }
    let mut matching = vec![0u32; 5 * n];
    for (s, &p) in t.matching.iter().enumerate() {
        matching[new_slot(s)] = new_slot(p as usize) as u32;
    }
    CombTiling { pentagon: t.pentagon.clone(), arrangement: t.arrangement.clone(), tiles, matching }
}

fn reindexing(n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>, bool)> {
    (Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), prop::collection::vec(0..5usize, n), any::<bool>())
}

/// Random counterclockwise pentagon inscribed in a circle about the north
/// pole, hence convex.
fn convex_pentagon() -> impl Strategy<Value = Vec<Vec3>> {
    (prop::array::uniform5(0.2f64..1.0), 0.05f64..1.2).prop_map(|(gaps, r)| {
        let total: f64 = gaps.iter().sum();
        let mut phi = 0.0;
        gaps.iter()
            .map(|g| {
                phi += 2.0 * PI * g / total;
                Vec3::new(r.sin() * phi.cos(), r.sin() * phi.sin(), r.cos())
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn isosceles_minus_quadrilateral_factors(
        a in 0.01f64..PI - 0.01,
        apex in 0.0f64..2.0 * PI,
        g in 0.0f64..2.0 * PI,
        d in 0.0f64..2.0 * PI,
    ) {
        let t = a.cos();
        let (l, m, n) = diagonal_quadratic(apex, g, d);
        let iso = t * t + (1.0 - t * t) * apex.cos();
        let lhs = quad_diagonal_cos(a, g, d) - iso;
        let rhs = (t - 1.0) * (l * t * t + m * t + n);
        prop_assert!((lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");
    }

    #[test]
    fn isosceles_base_grows_with_apex(a in 0.01f64..PI / 2.0 - 0.01, x in 0.01f64..PI - 0.02, dx in 1e-3f64..0.5) {
        let y = (x + dx).min(PI - 1e-3);
        prop_assume!(y > x);
        prop_assert!(isosceles_base(a, y) > isosceles_base(a, x));
    }

    #[test]
    fn area_is_angle_excess(v in convex_pentagon()) {
        // Independent area: sum of the five triangles from the pole.
        let pole = Vec3::new(0.0, 0.0, 1.0);
        let fan: f64 = (0..5)
            .map(|i| {
                let (p, q) = (v[i], v[(i + 1) % 5]);
                let num = pole.dot(p.cross(q));
                let den = 1.0 + pole.dot(p) + p.dot(q) + q.dot(pole);
                2.0 * num.atan2(den)
            })
            .sum();
        let excess = interior_angles(&v).iter().sum::<f64>() - 3.0 * PI;
        prop_assert!((spherical_area(&v) - fan).abs() < 1e-9);
        prop_assert!((excess - fan).abs() < 1e-9);
    }

    #[test]
    fn lemma7_ignores_rotation_and_reflection(angles in prop::array::uniform5(0.01f64..2.0 * PI), r in 0..5usize) {
        let rotated: [f64; 5] = std::array::from_fn(|i| angles[(i + r) % 5]);
        let mut reflected = angles;
        reflected.reverse();
        let base = lemma7_filter(&angles);
        prop_assert_eq!(lemma7_filter(&rotated), base);
        prop_assert_eq!(lemma7_filter(&reflected), base);
    }

    #[test]
    fn combo_display_round_trips(counts in prop::array::uniform5(0u8..5)) {
        prop_assume!(counts.iter().any(|&c| c > 0));
        let c = Combo::from_counts(counts);
        prop_assert_eq!(c.to_string().parse::<Combo>().unwrap(), c);
        prop_assert_eq!(c.ascii().parse::<Combo>().unwrap(), c);
    }

    #[test]
    fn avc3_rows_are_canonical(n in 1usize..=5, k in 0usize..120) {
        let perms: Vec<Perm> = permutations(n);
        let p = perms[k % perms.len()];
        for row in enumerate_avc3(n) {
            prop_assert_eq!(row.relabel(&p).canonical(), row.clone());
        }
    }

    #[test]
    fn canonical_form_ignores_presentation((which, (perm, rot, mirror)) in presented()) {
        let t = &tilings()[which].tiling;
        let u = relabel(t, &perm, &rot, mirror);
        prop_assert!(u.check_structure().is_ok());
        prop_assert_eq!(u.canonical_form(), t.canonical_form());
        prop_assert_eq!(u.degree_histogram(), t.degree_histogram());
    }

    #[test]
    fn text_round_trips((which, (perm, rot, mirror)) in presented()) {
        let u = relabel(&tilings()[which].tiling, &perm, &rot, mirror);
        let back = CombTiling::parse(&u.to_text()).unwrap();
        prop_assert_eq!(&back, &u);
    }
}

fn presented() -> impl Strategy<Value = (usize, (Vec<usize>, Vec<usize>, bool))> {
    (0..tilings().len()).prop_flat_map(|w| (Just(w), reindexing(tilings()[w].tiling.f())))
}

#[test]
fn avc3_optional_vertices_do_not_force() {
    for n in 1..=5 {
        for row in enumerate_avc3(n) {
            assert!(!forces_equal(&row.necessary, n), "{row}");
            for o in &row.optional {
                let mut with = row.necessary.clone();
                with.push(*o);
                assert!(!forces_equal(&with, n), "{row} with {o}");
            }
        }
    }
}

#[test]
fn tile_shapes_have_area_excess() {
    for t in tilings() {
        let p = realize_pentagon(&t.shape.boundary_angles(), t.shape.edge());
        assert!(p.closure_residual < 1e-9, "{}: {}", t.name, p.closure_residual);
        let excess = t.shape.angles.iter().sum::<f64>() - 3.0 * PI;
        assert!((p.area() - excess).abs() < 1e-9, "{}", t.name);
        assert!((p.area() * t.tiling.f() as f64 - 4.0 * PI).abs() < 1e-6, "{}", t.name);
    }
}

#[test]
fn histograms_satisfy_vertex_count() {
    for t in tilings() {
        let extra: i64 = t.tiling.degree_histogram().iter().map(|(&k, &v)| (k as i64 - 3) * v as i64).sum();
        assert_eq!(2 * extra, t.tiling.f() as i64 - 12, "{}", t.name);
    }
}
