use std::collections::BTreeMap;

use gkm_core::algebra::linear::{hermite, same_lattice};
use gkm_core::algebra::{IntPoly, LaurentPoly, Monomial, MuRing};
use gkm_core::builtins::{make_complete_gkm, make_fig3_complex, make_weighted_projective_line};
use gkm_core::cohomology::{
    build_system, compute_basis, decompose, graded_rank, is_member, member_lattice_rank, reconstruct, BasisClass,
    CongruenceSystem,
};
use gkm_core::graphs::{filter_complex, Vertex};
use gkm_core::{CoefficientElement, CohomologyError, GkmComplex, Theory};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn builtins() -> Vec<(&'static str, GkmComplex)> {
    vec![
        ("fig3 8,4,2,2", make_fig3_complex([8, 4, 2, 2]).unwrap()),
        ("fig3 1,1,1,1", make_fig3_complex([1, 1, 1, 1]).unwrap()),
        ("wp 1,1", make_weighted_projective_line(1, 1).unwrap()),
        ("K2", make_complete_gkm(2).unwrap()),
        ("K3", make_complete_gkm(3).unwrap()),
        ("K4", make_complete_gkm(4).unwrap()),
    ]
}

fn system(gc: &GkmComplex, theory: Theory) -> CongruenceSystem {
    let filt = filter_complex(gc.complex(), &Vertex::new("v0").unwrap()).unwrap();
    build_system(gc, &filt, theory).unwrap()
}

fn random_coefficient(rng: &mut ChaCha8Rng, theory: Theory, rank: usize) -> CoefficientElement {
    let nterms = rng.gen_range(0..3);
    match theory {
        Theory::H => CoefficientElement::Int(IntPoly::from_terms(
            rank,
            (0..nterms).map(|_| {
                let d = rng.gen_range(0..2);
                let m = if d == 0 {
                    Monomial::one(rank)
                } else {
                    Monomial::variable(rank, rng.gen_range(0..rank))
                };
                (m, BigInt::from(rng.gen_range(-3..=3)))
            }),
        )),
        Theory::K => CoefficientElement::Laurent(LaurentPoly::from_terms(
            rank,
            (0..nterms).map(|_| {
                let e = (0..rank).map(|_| rng.gen_range(-1..=1)).collect();
                (e, BigInt::from(rng.gen_range(-3..=3)))
            }),
        )),
        Theory::MU { truncation } => {
            let ring = MuRing::new(rank, truncation).unwrap();
            let monos = ring.monomials_of_degree(rng.gen_range(-1..=1));
            let p = IntPoly::from_terms(
                ring.nvars(),
                (0..nterms.min(monos.len())).map(|_| {
                    (
                        monos[rng.gen_range(0..monos.len())].clone(),
                        BigInt::from(rng.gen_range(-3..=3)),
                    )
                }),
            );
            CoefficientElement::Series(ring.series(p))
        }
        Theory::RationalH => unreachable!(),
    }
}

fn random_member(rng: &mut ChaCha8Rng, sys: &CongruenceSystem, basis: &[BasisClass]) -> Vec<CoefficientElement> {
    (0..basis.len())
        .map(|_| random_coefficient(rng, sys.theory(), sys.rank()))
        .collect()
}

#[test]
fn basis_classes_are_triangular_members() {
    for (name, gc) in builtins() {
        for theory in [Theory::H, Theory::K, Theory::MU { truncation: 3 }] {
            let sys = system(&gc, theory);
            let basis = compute_basis(&sys, 6).unwrap();
            for (j, b) in basis.iter().enumerate() {
                assert_eq!(is_member(&sys, &b.class).unwrap(), None, "{name} {theory} phi_{j}");
                for (s, vx) in sys.ordering().iter().enumerate() {
                    let val = b.class.value(vx).unwrap();
                    if s < j {
                        assert!(val.is_zero());
                    } else if s == j {
                        assert_eq!(val, sys.top(j));
                    }
                }
            }
        }
    }
}

#[test]
fn sums_and_products_of_members_are_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, gc) in builtins() {
        for theory in [Theory::H, Theory::K, Theory::MU { truncation: 3 }] {
            let sys = system(&gc, theory);
            let basis = compute_basis(&sys, 6).unwrap();
            for _ in 0..20 {
                let p = random_member(&mut rng, &sys, &basis);
                let q = random_member(&mut rng, &sys, &basis);
                let x = reconstruct(&sys, &basis, &p).unwrap();
                let y = reconstruct(&sys, &basis, &q).unwrap();
                assert_eq!(is_member(&sys, &x.add(&y).unwrap()).unwrap(), None, "{name} {theory}");
                assert_eq!(is_member(&sys, &x.mul(&y).unwrap()).unwrap(), None, "{name} {theory}");
            }
        }
    }
}

#[test]
fn decomposition_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, gc) in builtins() {
        for theory in [Theory::H, Theory::K, Theory::MU { truncation: 3 }] {
            let sys = system(&gc, theory);
            let basis = compute_basis(&sys, 6).unwrap();
            for _ in 0..10 {
                let p = random_member(&mut rng, &sys, &basis);
                let x = reconstruct(&sys, &basis, &p).unwrap();
                let back = decompose(&sys, &basis, &x).unwrap();
                assert_eq!(reconstruct(&sys, &basis, &back).unwrap(), x, "{name} {theory}");
                if !matches!(theory, Theory::MU { .. }) {
                    assert_eq!(back, p, "{name} {theory}");
                }
            }
            for (i, b) in basis.iter().enumerate() {
                let p = decompose(&sys, &basis, &b.class).unwrap();
                for (j, c) in p.iter().enumerate() {
                    assert_eq!(c.is_zero(), i != j);
                }
            }
        }
    }
}

#[test]
fn non_members_are_rejected() {
    let sys = system(&make_complete_gkm(3).unwrap(), Theory::H);
    let basis = compute_basis(&sys, 4).unwrap();
    let one = Theory::H.one(3).unwrap();
    let zero = Theory::H.zero(3).unwrap();
    let x = sys.class_from(vec![zero.clone(), one, zero]);
    assert!(matches!(
        decompose(&sys, &basis, &x),
        Err(CohomologyError::NotAMember { .. })
    ));
}

/// Coefficient vectors of the degree-`d` member tuples, computed from the
/// edges alone: unknowns are every `x_v` and one quotient per edge.
fn member_lattice_oracle(gc: &GkmComplex, d: u32) -> Vec<Vec<BigInt>> {
    let n = gc.torus_rank();
    let verts: Vec<Vertex> = gc.complex().union().vertices().iter().cloned().collect();
    let edges: Vec<_> = gc.complex().union().edges().iter().cloned().collect();
    let xs = Monomial::all_of_degree(n, d);
    let qs = if d == 0 {
        vec![]
    } else {
        Monomial::all_of_degree(n, d - 1)
    };
    let ncols = verts.len() * xs.len() + edges.len() * qs.len();
    let vi = |v: &Vertex| verts.iter().position(|w| w == v).unwrap();
    let mut rows = Vec::new();
    for (k, e) in edges.iter().enumerate() {
        let [oe, _] = e.orientations();
        let alpha = gc.alpha(&oe);
        let chi = alpha
            .scale(&num_rational::BigRational::from_integer(alpha.denominator_lcm()))
            .to_integers()
            .unwrap();
        let mut eqs: BTreeMap<Monomial, Vec<BigInt>> = BTreeMap::new();
        for (i, m) in xs.iter().enumerate() {
            let r = eqs.entry(m.clone()).or_insert_with(|| vec![BigInt::zero(); ncols]);
            r[vi(&oe.source) * xs.len() + i] += 1;
            r[vi(&oe.target) * xs.len() + i] -= 1;
        }
        for (i, mu) in qs.iter().enumerate() {
            for (t, c) in chi.iter().enumerate() {
                let m = mu.mul(&Monomial::variable(n, t));
                let r = eqs.entry(m).or_insert_with(|| vec![BigInt::zero(); ncols]);
                r[verts.len() * xs.len() + k * qs.len() + i] -= c;
            }
        }
        rows.extend(eqs.into_values());
    }
    // Kernel of A: rows of U with U·Aᵀ = H beyond the rank.
    let at: Vec<Vec<BigInt>> = (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect();
    let h = hermite(&at, true);
    h.u[h.rank()..]
        .iter()
        .map(|k| k[..verts.len() * xs.len()].to_vec())
        .collect()
}

/// Coefficient vectors of `μ·φ_j` for all monomials `μ` of the right degree.
fn basis_span(sys: &CongruenceSystem, basis: &[BasisClass], d: u32) -> Vec<Vec<BigInt>> {
    let n = sys.rank();
    let xs = Monomial::all_of_degree(n, d);
    let mut verts: Vec<&Vertex> = sys.ordering().iter().collect();
    verts.sort();
    let mut out = Vec::new();
    for (j, b) in basis.iter().enumerate() {
        let Some(e) = d.checked_sub(sys.degree(j) as u32) else {
            continue;
        };
        for mu in Monomial::all_of_degree(n, e) {
            let mut vec = Vec::new();
            for v in &verts {
                let val = b
                    .class
                    .value(v)
                    .unwrap()
                    .as_int()
                    .unwrap()
                    .mul_monomial(&mu, &BigInt::one());
                vec.extend(xs.iter().map(|m| val.coeff(m)));
            }
            out.push(vec);
        }
    }
    out
}

#[test]
fn member_lattice_equals_basis_span_on_small_graphs() {
    for (name, gc) in builtins() {
        let sys = system(&gc, Theory::H);
        let basis = compute_basis(&sys, 6).unwrap();
        for d in 0..=3 {
            let oracle = member_lattice_oracle(&gc, d);
            let span = basis_span(&sys, &basis, d);
            assert!(same_lattice(&oracle, &span), "{name} degree {d}");
            assert_eq!(member_lattice_rank(&sys, d).unwrap(), oracle.len(), "{name} degree {d}");
        }
    }
}

#[test]
fn graded_ranks() {
    let sys = system(&make_complete_gkm(2).unwrap(), Theory::H);
    assert_eq!(graded_rank(&sys, 2).unwrap(), vec![1, 3, 5]);
    let sys = system(&make_complete_gkm(3).unwrap(), Theory::H);
    assert_eq!((0..3).map(|j| sys.degree(j)).collect::<Vec<_>>(), vec![0, 1, 2]);
    assert!(matches!(
        graded_rank(&system(&make_complete_gkm(2).unwrap(), Theory::K), 2),
        Err(CohomologyError::Unsupported(_))
    ));
}

#[test]
fn mu_basis_projects_to_h_basis() {
    for (name, gc) in [
        ("K2", make_complete_gkm(2).unwrap()),
        ("fig3 1,1,1,1", make_fig3_complex([1, 1, 1, 1]).unwrap()),
    ] {
        let h = compute_basis(&system(&gc, Theory::H), 4).unwrap();
        let mu = compute_basis(&system(&gc, Theory::MU { truncation: 3 }), 4).unwrap();
        for (a, b) in h.iter().zip(&mu) {
            for (v, x) in a.class.values() {
                let y = b.class.value(v).unwrap().as_series().unwrap().additive_specialization();
                assert_eq!(&y, x.as_int().unwrap(), "{name} at {v}");
            }
        }
    }
}

#[test]
fn example_systems() {
    let gc = make_fig3_complex([8, 4, 2, 2]).unwrap();
    let sys = system(&gc, Theory::H);
    assert_eq!(sys.len(), 4);
    let pairs: Vec<(usize, usize)> = (0..4)
        .flat_map(|j| sys.divisors(j).iter().map(move |d| (d.source, j)))
        .collect();
    assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]);
    let sys = system(&make_complete_gkm(2).unwrap(), Theory::H);
    assert_eq!(sys.divisors(1).len(), 1);
    let sys = system(&make_complete_gkm(3).unwrap(), Theory::H);
    assert_eq!((sys.divisors(1).len(), sys.divisors(2).len()), (1, 2));
    let basis = compute_basis(&sys, 4).unwrap();
    let top = basis[2].class.value(&sys.ordering()[2]).unwrap();
    let want = Theory::H.parse(3, "y1*y2 - y1*y3 - y2*y3 + y3^2").unwrap();
    assert!(top == &want || top == &want.neg());
}
