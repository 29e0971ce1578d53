use crate::geometry::{lie_bracket, tangent_structure, VectorField};

use super::ConnectionData;

/// The field `Y` with `JY = V` and no vertical part. Panics unless `V` is
/// vertical.
pub fn vertical_preimage(v: &VectorField) -> VectorField {
    assert!(v.is_vertical(), "preimage under J of a non-vertical field");
    let n = v.dim();
    VectorField::from_parts(v.y_part().to_vec(), vec![crate::expr::RatExpr::zero(n); n])
}

/// `D_{hX} V = [h, V] X = [hX, V] + h[V, X]` for vertical `V`.
pub fn covariant_horizontal(c: &ConnectionData, x: &VectorField, v: &VectorField) -> VectorField {
    let h = c.horizontal();
    &lie_bracket(&h.apply(x), v) + &h.apply(&lie_bracket(v, x))
}

/// `D_{JX} V = [J, V] X = [JX, V] + J[V, X]` for vertical `W = JX`, `V`.
pub fn covariant_vertical(w: &VectorField, v: &VectorField) -> VectorField {
    let x = vertical_preimage(w);
    let j = tangent_structure(w.dim());
    &lie_bracket(w, v) + &j.apply(&lie_bracket(v, &x))
}

/// `ℛ(X,Y)Z = D_{hX}D_{hY}JZ − D_{hY}D_{hX}JZ − D_{[hX,hY]}JZ`, where the
/// last derivative splits into its horizontal and vertical directions.
pub fn cartan_curvature(
    c: &ConnectionData,
    x: &VectorField,
    y: &VectorField,
    z: &VectorField,
) -> VectorField {
    let jz = tangent_structure(c.dim()).apply(z);
    let h = c.horizontal();
    let first = covariant_horizontal(c, x, &covariant_horizontal(c, y, &jz));
    let second = covariant_horizontal(c, y, &covariant_horizontal(c, x, &jz));
    let br = lie_bracket(&h.apply(x), &h.apply(y));
    let along_h = covariant_horizontal(c, &br, &jz);
    let along_v = covariant_vertical(&c.vertical().apply(&br), &jz);
    &(&(&first - &second) - &along_h) - &along_v
}
