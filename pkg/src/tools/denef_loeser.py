"""Signed weight vectors of compactly supported cohomology from face volumes (dimensions 2 and 3)."""

from fractions import Fraction
from typing import Dict

from src.errors import InvalidFaceData
from src.schemas import FaceVolumes, LatticePolytope, SignedWeightVector
from src.tools.polytope_core import face_volumes


def _integral(value: Fraction, name: str) -> int:
    if value.denominator != 1:
        raise InvalidFaceData(f"{name} = {value} is not an integer")
    return value.numerator


def curve_signed_weights(U2: Fraction, U1: int) -> SignedWeightVector:
    """
    Signed weights of a nondegenerate curve: f_2 = -1, f_1 = 2U_2 - U_1 + 2, f_0 = U_1 - 1.

    Raises:
        InvalidFaceData: if U2 <= 0, U1 < 3 or f_1 < 0
    """
    U2 = Fraction(U2)
    if U2 <= 0 or U1 < 3:
        raise InvalidFaceData(f"need U_2 > 0 and U_1 >= 3, got U_2 = {U2}, U_1 = {U1}")
    f1 = _integral(2 * U2 - U1 + 2, "f_1")
    if f1 < 0:
        raise InvalidFaceData(f"f_1 = {f1} < 0; area and boundary are inconsistent (Pick)")
    return SignedWeightVector(n=2, mult={0: U1 - 1, 1: f1, 2: -1}, leading_sign=-1)


def curve_signed_weights_for(P: LatticePolytope) -> SignedWeightVector:
    fv = face_volumes(P)
    return curve_signed_weights(fv.U[2], _integral(fv.U[1], "U_1"))


def _surface_terms(fv: FaceVolumes) -> Dict[str, int]:
    if fv.n != 3:
        raise InvalidFaceData(f"surface formulas need face volumes of a 3-polytope, got n = {fv.n}")
    U0, U1, U2, U3 = fv.U
    six_u3 = _integral(6 * U3, "6U_3")
    two_u2 = _integral(2 * U2, "2U_2")
    return {"6U3": six_u3, "2U2": two_u2, "U1": _integral(U1, "U_1"), "U0": _integral(U0, "U_0")}


def surface_signed_weights_dl(fv: FaceVolumes) -> SignedWeightVector:
    """
    Codim-0 signed weights of a surface in the 3-torus.

    Negative entries are legal here; only assembled totals must be genuine weight vectors.
    """
    t = _surface_terms(fv)
    F, E, W1 = fv.F, fv.E, fv.W1
    f2 = t["6U3"] - t["2U2"] + t["U1"] + 2 * t["U0"] + F - W1 - 6
    f1 = t["2U2"] - 2 * t["U1"] - 3 * t["U0"] - F - E + 2 * W1 + 6
    f0 = t["U1"] + t["U0"] + E - W1 - 1
    return SignedWeightVector(n=3, mult={0: f0, 1: f1, 2: f2, 3: 0, 4: 1}, leading_sign=1)


def e_vector_gm4(fv: FaceVolumes) -> Dict[int, int]:
    """e_4..e_0 of the substituted e-polynomial in G_m^4 (e_1 = 0 and e_0 = 1)."""
    t = _surface_terms(fv)
    F, E, W1 = fv.F, fv.E, fv.W1
    return {
        4: t["6U3"] - t["2U2"] + t["U1"] + 2 * t["U0"] + F - W1 - 3,
        3: t["2U2"] - 2 * t["U1"] - 3 * t["U0"] - E - F + 2 * W1 + 6,
        2: t["U1"] + t["U0"] + E - W1 - 4,
        1: 0,
        0: 1,
    }


def signed_weights_for(P: LatticePolytope) -> SignedWeightVector:
    """Curve or codim-0 surface signed weights of a full-dimensional 2- or 3-polytope."""
    if P.dim == 2:
        return curve_signed_weights_for(P)
    if P.dim == 3:
        return surface_signed_weights_dl(face_volumes(P))
    raise InvalidFaceData(f"signed weights are implemented for n = 2 and n = 3, got n = {P.dim}")
