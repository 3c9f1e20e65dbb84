//! Built-in catalog of exact test representations: cyclic rotations,
//! dihedral groups, symmetric groups and their deleted permutation modules,
//! the GL₃(2) action on the nonzero vectors of F₂³, and the icosahedral
//! degree-3 representation of A5 over ℚ(√5).

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactla::Matrix;
use crate::numfield::{FieldDescriptor, FieldElement, Rational};
use crate::repkit::{AutomorphismData, GroupWord, RepKitError, Representation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Rep(#[from] RepKitError),
}

pub fn names() -> Vec<&'static str> {
    vec![
        "trivial1",
        "c3-rot",
        "c4-rot",
        "c6-rot",
        "c7-companion6",
        "dihedral3-deg2",
        "dihedral4-deg2",
        "dihedral5-deg2",
        "dihedral6-deg2",
        "sym2-perm",
        "sym3-perm",
        "sym4-perm",
        "sym5-perm",
        "sym6-perm",
        "sym7-perm",
        "sym2-deleted",
        "sym3-deleted",
        "sym4-deleted",
        "sym5-deleted",
        "sym6-deleted",
        "sym7-deleted",
        "gl32-perm7",
        "gl32-deleted6",
        "a5-deg3",
    ]
}

/// Build a catalog representation; "double:<name>" doubles any entry.
pub fn build(name: &str) -> Result<Representation, CatalogError> {
    if let Some(inner) = name.strip_prefix("double:") {
        return Ok(build(inner)?.doubled());
    }
    let q = FieldDescriptor::rational();
    match name {
        "trivial1" => Ok(Representation::new(
            name,
            q,
            vec![Matrix::identity(1, q)],
        )?),
        "c3-rot" => Ok(rotation_rep(name, -1)?),
        "c4-rot" => Ok(rotation_rep(name, 0)?),
        "c6-rot" => Ok(rotation_rep(name, 1)?),
        "c7-companion6" => {
            // companion matrix of 1 + X + ... + X⁶
            let gen = Matrix::from_fn(6, 6, q, |i, j| {
                if j == 5 {
                    FieldElement::integer(-1, q)
                } else if i == j + 1 {
                    FieldElement::one(q)
                } else {
                    FieldElement::zero(q)
                }
            });
            Ok(Representation::new(name, q, vec![gen])?)
        }
        "dihedral3-deg2" => Ok(dihedral_rep(name, q, FieldElement::integer(-1, q))?),
        "dihedral4-deg2" => Ok(dihedral_rep(name, q, FieldElement::zero(q))?),
        "dihedral6-deg2" => Ok(dihedral_rep(name, q, FieldElement::one(q))?),
        "dihedral5-deg2" => {
            let f5 = FieldDescriptor::quadratic(5).expect("5 is squarefree");
            // 2·cos(2π/5) = (√5 − 1)/2
            let c = FieldElement::new(
                Rational::new(BigInt::from(-1), BigInt::from(2)),
                Rational::new(BigInt::from(1), BigInt::from(2)),
                f5,
            );
            Ok(dihedral_rep(name, f5, c)?)
        }
        "gl32-perm7" => Ok(permutation_rep(name, &gl32_generators())?),
        "gl32-deleted6" => Ok(deleted_module_rep(name, &gl32_generators())?),
        "a5-deg3" => Ok(a5_deg3()?),
        _ => {
            if let Some(n) = name
                .strip_prefix("sym")
                .and_then(|r| r.strip_suffix("-perm"))
                .and_then(|n| n.parse::<usize>().ok())
            {
                if (2..=7).contains(&n) {
                    return Ok(permutation_rep(name, &sym_generators(n))?);
                }
            }
            if let Some(n) = name
                .strip_prefix("sym")
                .and_then(|r| r.strip_suffix("-deleted"))
                .and_then(|n| n.parse::<usize>().ok())
            {
                if (2..=7).contains(&n) {
                    return Ok(deleted_module_rep(name, &sym_generators(n))?);
                }
            }
            Err(CatalogError::Unknown(name.to_string()))
        }
    }
}

/// Degree-2 rotation: companion matrix of X² − c·X + 1.
fn rotation_rep(name: &str, c: i64) -> Result<Representation, RepKitError> {
    let q = FieldDescriptor::rational();
    Representation::new(
        name,
        q,
        vec![rotation_matrix(q, &FieldElement::integer(c, q))],
    )
}

fn rotation_matrix(field: FieldDescriptor, c: &FieldElement) -> Matrix {
    let mut m = Matrix::zero(2, 2, field);
    m.set(0, 1, -&FieldElement::one(field));
    m.set(1, 0, FieldElement::one(field));
    m.set(1, 1, c.clone());
    m
}

/// Rotation plus the coordinate swap reflection; s·r·s = r⁻¹ holds for the
/// companion form of X² − c·X + 1.
fn dihedral_rep(
    name: &str,
    field: FieldDescriptor,
    c: FieldElement,
) -> Result<Representation, RepKitError> {
    let r = rotation_matrix(field, &c);
    let mut s = Matrix::zero(2, 2, field);
    s.set(0, 1, FieldElement::one(field));
    s.set(1, 0, FieldElement::one(field));
    Representation::new(name, field, vec![r, s])
}

/// Permutations as images: point i maps to perm[i] (0-based).
fn permutation_rep(name: &str, perms: &[Vec<usize>]) -> Result<Representation, RepKitError> {
    let q = FieldDescriptor::rational();
    let m = perms[0].len();
    let gens = perms
        .iter()
        .map(|p| {
            Matrix::from_fn(m, m, q, |i, j| {
                if p[j] == i {
                    FieldElement::one(q)
                } else {
                    FieldElement::zero(q)
                }
            })
        })
        .collect();
    Representation::new(name, q, gens)
}

/// Action on the sum-zero complement of the all-ones vector, in the basis
/// vᵢ = eᵢ − eᵢ₊₁.
fn deleted_module_rep(name: &str, perms: &[Vec<usize>]) -> Result<Representation, RepKitError> {
    let q = FieldDescriptor::rational();
    let m = perms[0].len();
    let gens = perms
        .iter()
        .map(|p| {
            let mut g = Matrix::zero(m - 1, m - 1, q);
            for i in 0..m - 1 {
                // σ(vᵢ) = e_{σ(i)} − e_{σ(i+1)}, a telescoping ±sum of vⱼ
                let (a, b) = (p[i], p[i + 1]);
                let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
                for j in lo..hi {
                    g.set(j, i, FieldElement::integer(sign, q));
                }
            }
            g
        })
        .collect();
    Representation::new(name, q, gens)
}

/// Transposition (0 1) and the n-cycle, as permutations of n points.
fn sym_generators(n: usize) -> Vec<Vec<usize>> {
    let mut t: Vec<usize> = (0..n).collect();
    t.swap(0, 1);
    let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    vec![t, c]
}

/// GL₃(2) acting on the 7 nonzero vectors of F₂³, encoded as bitmasks
/// 1..=7; generated by a transvection and the coordinate 3-cycle.
fn gl32_generators() -> Vec<Vec<usize>> {
    let a = [[1u8, 1, 0], [0, 1, 0], [0, 0, 1]];
    let b = [[0u8, 0, 1], [1, 0, 0], [0, 1, 0]];
    [a, b]
        .iter()
        .map(|m| {
            (1usize..8)
                .map(|v| {
                    let bits = [v & 1, (v >> 1) & 1, (v >> 2) & 1];
                    let mut w = 0usize;
                    for i in 0..3 {
                        let wi = (0..3).map(|j| m[i][j] as usize * bits[j]).sum::<usize>() % 2;
                        w |= wi << i;
                    }
                    w - 1
                })
                .collect()
        })
        .collect()
}

/// The icosahedral rotation representation: an order-5 rotation with trace
/// (1+√5)/2 and the coordinate 3-cycle; their product has order 2, so the
/// pair realizes the (2,3,5) presentation of A5.
fn a5_deg3() -> Result<Representation, RepKitError> {
    let f5 = FieldDescriptor::quadratic(5).expect("5 is squarefree");
    let quarter = |p: i64, q: i64| {
        FieldElement::new(
            Rational::new(BigInt::from(p), BigInt::from(4)),
            Rational::new(BigInt::from(q), BigInt::from(4)),
            f5,
        )
    };
    // half of [[φ−1, −φ, 1], [φ, 1, φ−1], [−1, φ−1, φ]] with φ = (1+√5)/2
    let m5 = Matrix::from_rows(
        vec![
            vec![quarter(-1, 1), quarter(-1, -1), quarter(2, 0)],
            vec![quarter(1, 1), quarter(2, 0), quarter(-1, 1)],
            vec![quarter(-2, 0), quarter(-1, 1), quarter(1, 1)],
        ],
        f5,
    );
    let c = Matrix::from_fn(3, 3, f5, |i, j| {
        if (i + 2) % 3 == j {
            FieldElement::one(f5)
        } else {
            FieldElement::zero(f5)
        }
    });
    Representation::new("a5-deg3", f5, vec![m5, c])
}

/// An order-2 outer automorphism of A5 on the icosahedral generators,
/// discovered by exhaustive search over (5,3,2)-pairs and verified by
/// `verify_automorphism_order_two`. It swaps the two classes of order-5
/// elements, so the character field drops from ℚ(√5) to ℚ in the split
/// extension (which is S5).
pub fn a5_outer_automorphism() -> AutomorphismData {
    AutomorphismData {
        images: vec![
            GroupWord::parse("g1 g0 g0 g1 g1").expect("valid word"),
            GroupWord::parse("g1 g0 g0 g0 g1 g1 g0 g1").expect("valid word"),
        ],
    }
}
