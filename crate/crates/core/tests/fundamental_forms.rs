use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rigidity_core::algebra::CompAlgebra;
use rigidity_core::forms::{extract, GraphChart, Poly};
use rigidity_core::models::{algebra_plane_real_quadrics, Model};

const MODELS: [&str; 5] = ["G(2,5)", "S10", "SEG_P2xP2", "G(2,6)_AP2", "OP2"];

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn prod(a: u32, b: u32) -> Poly {
    Poly::var(a).mul(&Poly::var(b))
}

/// Second fundamental form of the chart as one polynomial per normal.
fn second_form(m: &Model) -> Vec<Poly> {
    extract(&m.chart, 2)
        .quadric_matrices()
        .iter()
        .map(Poly::from_quadric)
        .collect()
}

#[test]
fn stored_quadrics_are_the_second_form() {
    for name in MODELS {
        let m = Model::by_name(name).unwrap();
        let f2 = extract(&m.chart, 2).quadric_matrices();
        assert_eq!(f2, m.quadrics, "{}", name);
    }
}

#[test]
fn higher_forms_vanish() {
    for name in MODELS {
        let m = Model::by_name(name).unwrap();
        assert!(extract(&m.chart, 3).is_zero(), "{} F3", name);
        assert!(extract(&m.chart, 4).is_zero(), "{} F4", name);
    }
}

#[test]
fn grassmannian_plucker_minors() {
    for mm in [5usize, 6, 7] {
        let m = Model::by_name(&format!("G(2,{})", mm)).unwrap();
        let f2 = second_form(&m);
        let x = |r: usize, j: usize| m.tangent_index(&format!("({}{})", r, j)).unwrap() as u32;
        let mut seen = 0;
        for i in 3..=mm {
            for j in i + 1..=mm {
                let minor = prod(x(1, i), x(2, j)).add(&prod(x(1, j), x(2, i)).scale(&int(-1)));
                let mu = m.normal_index(&format!("({}{})", i, j)).unwrap();
                assert_eq!(f2[mu], minor, "G(2,{}) minor ({}{})", mm, i, j);
                seen += 1;
            }
        }
        assert_eq!(seen, m.a);
    }
}

#[test]
fn spinor_sub_pfaffians() {
    let m = Model::by_name("S10").unwrap();
    let f2 = second_form(&m);
    let x = |i: usize, j: usize| m.tangent_index(&format!("({}{})", i.min(j), i.max(j))).unwrap() as u32;
    for j in 1..=5 {
        let r: Vec<usize> = (1..=5).filter(|&k| k != j).collect();
        let pf = prod(x(r[0], r[1]), x(r[2], r[3]))
            .add(&prod(x(r[0], r[2]), x(r[1], r[3])).scale(&int(-1)))
            .add(&prod(x(r[0], r[3]), x(r[1], r[2])));
        let mu = m.normal_index(&j.to_string()).unwrap();
        assert_eq!(f2[mu], pf, "Pfaffian without {}", j);
    }
}

/// `{aā, bb̄, ab̄}` evaluated through the algebra product, then polarized
/// on unit vectors and compared with the real quadrics.
#[test]
fn algebra_plane_real_quadrics_from_products() {
    for d in [2usize, 4, 8] {
        let alg = CompAlgebra::new(d).unwrap();
        let n = 2 * d;
        let forms = |x: &[BigRational]| -> Vec<BigRational> {
            let (a, b) = x.split_at(d);
            let aa = alg.mul(a, &alg.conj(a))[0].clone();
            let bb = alg.mul(b, &alg.conj(b))[0].clone();
            let mut out = vec![aa, bb];
            out.extend(alg.mul(a, &alg.conj(b)));
            out
        };
        let unit = |i: usize| {
            let mut v = vec![BigRational::zero(); n];
            v[i] = BigRational::one();
            v
        };
        let qs = algebra_plane_real_quadrics(d);
        assert_eq!(qs.len(), 2 + d);
        let two = int(2);
        for i in 0..n {
            let fi = forms(&unit(i));
            for j in 0..n {
                let fj = forms(&unit(j));
                let mut s = unit(i);
                s[j] += BigRational::one();
                let fs = forms(&s);
                for (k, q) in qs.iter().enumerate() {
                    let want = if i == j {
                        fi[k].clone()
                    } else {
                        (&fs[k] - &fi[k] - &fj[k]) / &two
                    };
                    assert_eq!(q[i][j], want, "d={} form {} entry ({},{})", d, k, i, j);
                }
            }
        }
        // the chart built from these quadrics returns them unchanged
        let chart = GraphChart::from_quadrics(n, &qs);
        assert_eq!(extract(&chart, 2).quadric_matrices(), qs);
        assert!(extract(&chart, 3).is_zero());
    }
}

/// The complex model quadrics and the real ones cut out the same system up
/// to a change of frame, so they share dimension and maximal rank.
#[test]
fn algebra_plane_models_have_expected_shape() {
    for (name, d) in [("SEG_P2xP2", 2usize), ("G(2,6)_AP2", 4), ("OP2", 8)] {
        let m = Model::by_name(name).unwrap();
        assert_eq!((m.n, m.a), (2 * d, 2 + d), "{}", name);
        assert_eq!(m.real_quadrics.as_deref(), Some(algebra_plane_real_quadrics(d).as_slice()));
        for q in &m.quadrics {
            for (i, row) in q.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    assert_eq!(v, &q[j][i]);
                }
            }
        }
    }
}
