use serde::{Deserialize, Serialize};

use super::hom::{combine, hom_space, is_intertwiner, lattice_search, Intertwiner};
use super::tensor::{tensor_over, Composite};
use super::{from_actions, regular_over, CondensationBimodule};
use crate::check::{compare, Check};
use crate::error::{Error, Result};
use crate::exactlin::{solve, Matrix, Scalar};

/// A right dual `mR` of `m` with unit `regular(B) → mR⊗m` and counit `m⊗mR → regular(A)`.
#[derive(Clone, Debug)]
pub struct Dual {
    pub dual: CondensationBimodule,
    pub unit: Intertwiner,
    pub counit: Intertwiner,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigzagReport {
    pub unit_intertwines: bool,
    pub counit_intertwines: bool,
    pub first: Check,
    pub second: Check,
}

impl ZigzagReport {
    pub fn passed(&self) -> bool {
        self.unit_intertwines && self.counit_intertwines && self.first.passed && self.second.passed
    }
}

/// The linear dual `M*` with the transposed actions: `(b·ξ)(x) = ξ(x·b)`,
/// `(ξ·a)(x) = ξ(a·x)`.
fn dual_actions(m: &CondensationBimodule) -> (Matrix, Matrix) {
    let (a, b, d) = (m.left.dim(), m.right.dim(), m.dim);
    let lact = Matrix::from_fn(d, b * d, |y, c| m.ract[(c % d, y * b + c / d)].clone());
    let ract = Matrix::from_fn(d, d * a, |y, c| m.lact[(c / a, (c % a) * d + y)].clone());
    (lact, ract)
}

/// Both triangle composites as plain matrices: `(m → m, mR → mR)`.
fn triangles(
    m: &CondensationBimodule,
    mr: &CondensationBimodule,
    t1: &Composite,
    t2: &Composite,
    unit: &Matrix,
    counit: &Matrix,
) -> (Matrix, Matrix) {
    let (im, imr) = (Matrix::identity(m.dim), Matrix::identity(mr.dim));
    let cf = counit * &t1.split.f;
    let gu = &t2.split.g * unit;
    // m → m⊗B → m⊗(mR⊗m) → A⊗m → m
    let z1 = &(&(&m.lact * &cf.kron(&im)) * &im.kron(&gu)) * &m.rcoact;
    // mR → B⊗mR → (mR⊗m)⊗mR → mR⊗A → mR
    let z2 = &(&(&mr.ract * &imr.kron(&cf)) * &gu.kron(&imr)) * &mr.lcoact;
    (z1, z2)
}

/// Verifies the two triangle identities, composing through the splittings of
/// `m ⊗ mR` and `mR ⊗ m`.
pub fn zigzag_check(
    m: &CondensationBimodule,
    mr: &CondensationBimodule,
    unit: &Intertwiner,
    counit: &Intertwiner,
) -> Result<ZigzagReport> {
    if !(mr.left.same_structure(&m.right) && mr.right.same_structure(&m.left)) {
        return Err(Error::input(
            "zigzag_check: dual is over the wrong algebra pair",
        ));
    }
    let t1 = tensor_over(m, mr)?;
    let t2 = tensor_over(mr, m)?;
    let reg_a = regular_over(m.left.clone());
    let reg_b = regular_over(m.right.clone());
    let shapes_ok = unit.map.rows() == t2.module.dim
        && unit.map.cols() == reg_b.dim
        && counit.map.rows() == reg_a.dim
        && counit.map.cols() == t1.module.dim;
    if !shapes_ok {
        return Err(Error::input(
            "zigzag_check: unit/counit shapes do not match the composites",
        ));
    }
    let unit_intertwines = is_intertwiner(&reg_b, &t2.module, &unit.map);
    let counit_intertwines = is_intertwiner(&t1.module, &reg_a, &counit.map);
    let (z1, z2) = triangles(m, mr, &t1, &t2, &unit.map, &counit.map);
    let first = compare(
        "zigzag(m)",
        "id",
        &z1,
        &Matrix::identity(m.dim),
        &[m.dim],
        &[m.dim],
    );
    let second = compare(
        "zigzag(mR)",
        "id",
        &z2,
        &Matrix::identity(mr.dim),
        &[mr.dim],
        &[mr.dim],
    );
    Ok(ZigzagReport {
        unit_intertwines,
        counit_intertwines,
        first,
        second,
    })
}

/// Builds the right dual of `m` and a unit/counit pair satisfying the
/// triangle identities exactly.
pub fn dual_bimodule(m: &CondensationBimodule) -> Result<Dual> {
    let (lact, ract) = dual_actions(m);
    let (a, b) = (m.left.clone(), m.right.clone());
    let mr = from_actions(b.clone(), a.clone(), lact, ract)?;
    let t1 = tensor_over(m, &mr)?;
    let t2 = tensor_over(&mr, m)?;
    let reg_a = regular_over(a);
    let reg_b = regular_over(b);
    let counits = hom_space(&t1.module, &reg_a)?;
    let units = hom_space(&reg_b, &t2.module)?;

    let (dm, dr) = (m.dim, mr.dim);
    let target = {
        let mut v = Matrix::identity(dm).entries().to_vec();
        v.extend_from_slice(Matrix::identity(dr).entries());
        Matrix::column_vector(v)
    };
    let try_counit = |c: &Matrix| -> Option<Matrix> {
        if units.is_empty() {
            return (dm == 0 && dr == 0).then(|| Matrix::zeros(t2.module.dim, reg_b.dim));
        }
        // Both triangles are linear in the unit; solve for its coordinates.
        let mut system = Matrix::zeros(dm * dm + dr * dr, units.len());
        for (k, u) in units.iter().enumerate() {
            let (z1, z2) = triangles(m, &mr, &t1, &t2, u, c);
            for (r, x) in z1.entries().iter().chain(z2.entries()).enumerate() {
                system[(r, k)] = x.clone();
            }
        }
        let coeffs = solve(&system, &target).ok()??;
        let mut unit = Matrix::zeros(t2.module.dim, reg_b.dim);
        for (k, u) in units.iter().enumerate() {
            let x = &coeffs[(k, 0)];
            if !x.is_zero() {
                unit = &unit + &u.scale(x);
            }
        }
        Some(unit)
    };

    // Try each basis counit on its own first, then the coefficient lattice.
    let mut found = None;
    if counits.is_empty() {
        found = try_counit(&Matrix::zeros(reg_a.dim, t1.module.dim))
            .map(|u| (Matrix::zeros(reg_a.dim, t1.module.dim), u));
    }
    for c in &counits {
        if found.is_some() {
            break;
        }
        found = try_counit(c).map(|u| (c.clone(), u));
    }
    if found.is_none() {
        found = lattice_search(counits.len(), |coeffs| {
            let c = combine(&counits, coeffs);
            try_counit(&c).map(|u| (c, u))
        });
    }
    let (counit, unit) = found
        .ok_or_else(|| Error::internal("no unit/counit pair satisfies the triangle identities"))?;
    let unit = Intertwiner {
        source: reg_b,
        target: t2.module,
        map: unit,
    };
    let counit = Intertwiner {
        source: t1.module,
        target: reg_a,
        map: counit,
    };
    let report = zigzag_check(m, &mr, &unit, &counit)?;
    if !report.passed() {
        return Err(Error::internal(
            "dual_bimodule produced a pair failing zigzag_check",
        ));
    }
    Ok(Dual {
        dual: mr,
        unit,
        counit,
    })
}

/// `counit` multiplied by `s`; negative fixture for the triangle check.
pub fn scale_intertwiner(t: &Intertwiner, s: &Scalar) -> Intertwiner {
    Intertwiner {
        map: t.map.scale(s),
        ..t.clone()
    }
}
