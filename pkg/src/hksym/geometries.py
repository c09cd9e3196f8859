"""Closed-form invariants of three model geometries and checks of the DT4/GV relations.

* ``K3 x K3``: curve classes from the first factor, cohomology insertions given by
  their Kunneth components (:class:`KunnethData`).
* ``T*P^2``: degree-``d`` classes with fixed GW and DT4 values.
* an embedded family of rational curves over a holomorphic symplectic surface
  (:class:`ERCFData`), where everything reduces to intersection numbers.

DT4 values are formula evaluations with a fixed orientation choice; the checks
compare them against GV invariants produced by :mod:`hksym.transforms`.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional

from hksym.enumerative import n_generating_series
from hksym.errors import ImprimitiveGenusTwo, OutOfRange, UnsupportedInsertion
from hksym.series import fmt_rat
from hksym.transforms import (
    DivisorIndexed,
    divisors,
    gv0_from_gw,
    gv1_imprimitive,
    gv1_primitive,
    gv2_primitive,
    n0_psi,
    nodal_from_parts,
    tau1_reduce,
    tau3_reduce,
)

EULER_K3 = 24


@dataclass(frozen=True)
class Check:
    geometry: str
    identity: str
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self):
        return self.lhs == self.rhs

    def to_json_obj(self):
        return {"geometry": self.geometry, "identity": self.identity,
                "lhs": fmt_rat(self.lhs), "pass": self.passed, "rhs": fmt_rat(self.rhs)}


# --------------------------------------------------------------------------- K3 x K3


@lru_cache(maxsize=None)
def _n_series_cached(which, trunc):
    return n_generating_series(which, trunc)


def n_value(which: str, l: int) -> Fraction:
    """``N(l)`` for any integer ``l``; zero below ``l = -1``."""
    if l < -1:
        return Fraction(0)
    trunc = 64
    while trunc <= l:
        trunc *= 2
    return _n_series_cached(which, trunc).coeff(l, 0)


@dataclass(frozen=True)
class KunnethData:
    """Kunneth components of insertions on ``S x T``.

    ``gamma = a_point_T * (1 x pt) + D1 x D2 + a_point_S * (pt x 1)`` and likewise
    ``gamma'`` with ``a_point_T2``, ``a_point_S2``; ``alpha = theta1 x pt + pt x theta2``.
    Degrees are against the curve class ``beta`` itself.
    """

    a_point_T: Fraction = Fraction(0)
    a_point_S: Fraction = Fraction(0)
    a_point_T2: Fraction = Fraction(0)
    a_point_S2: Fraction = Fraction(0)
    d1_dot_beta: Fraction = Fraction(0)
    d1p_dot_beta: Fraction = Fraction(0)
    d2_d2p_on_T: Fraction = Fraction(0)
    theta1_dot_beta: Fraction = Fraction(0)
    d2_theta2_on_T: Fraction = Fraction(0)

    def __post_init__(self):
        for k, v in asdict(self).items():
            object.__setattr__(self, k, Fraction(v))

    def c2(self):
        """The insertion ``c2(S x T) = 24 (pt x 1) + 24 (1 x pt)``."""
        return replace(self, a_point_T=EULER_K3, a_point_S=EULER_K3, d1_dot_beta=0)


@dataclass(frozen=True)
class K3Class:
    """``beta = m * beta0`` with ``beta0`` primitive of square ``2 l``."""

    prim_half_square: int
    m: int = 1

    def __post_init__(self):
        if self.prim_half_square < -1:
            raise OutOfRange("a primitive effective class has square at least -2")
        if self.m < 1:
            raise OutOfRange("divisibility must be positive")

    def half_square(self, c=1):
        """``(beta/c)^2 / 2``."""
        return (self.m // c) ** 2 * self.prim_half_square

    @property
    def primitive(self):
        return self.m == 1


def _cover_sum(cls: K3Class, c: int, which: str, weight) -> Fraction:
    """``sum_{k | m/c} weight(k) N((beta/(c k))^2 / 2)``."""
    return sum((weight(k) * n_value(which, cls.half_square(c * k)) for k in divisors(cls.m // c)), Fraction(0))


def _inv_cube(k):
    return Fraction(1, k**3)


def _k3xk3_gw_at(genus, cls, data, insertion, c):
    if genus == 0:
        deg = _cover_sum(cls, c, "N0", _inv_cube)
        if insertion == "two_point":
            return (data.d1_dot_beta / c) * (data.d1p_dot_beta / c) * data.d2_d2p_on_T * deg
        if insertion == "curve":
            return (data.theta1_dot_beta / c) * deg
        if insertion == "tau1":
            return -2 * data.a_point_T * deg
    elif genus == 1 and insertion == "point":
        return data.a_point_S * EULER_K3 * _cover_sum(cls, c, "N1", Fraction)
    raise UnsupportedInsertion(f"genus {genus} with insertion {insertion!r}")


def k3xk3_gw(genus: int, cls: K3Class, data: KunnethData, insertion: str) -> Fraction:
    """GW invariant in class ``beta``.

    Insertions: genus 0 ``two_point`` (gamma, gamma'), ``curve`` (alpha), ``tau1``
    (``tau_1(gamma)``); genus 1 ``point`` (``tau_0(gamma)``).
    """
    return _k3xk3_gw_at(genus, cls, data, insertion, 1)


def k3xk3_gw_lattice(genus, cls, data, insertion) -> DivisorIndexed:
    return DivisorIndexed.from_function(cls.m, lambda c: _k3xk3_gw_at(genus, cls, data, insertion, c))


@dataclass(frozen=True)
class K3xK3GV:
    cls: K3Class
    data: KunnethData
    n0_twopoint: Fraction
    n0_curve: Fraction

    @property
    def n1(self) -> Fraction:
        if not self.cls.primitive:
            raise ImprimitiveGenusTwo("genus 1 GV with a c2 correction is defined for primitive classes")
        return gv1_primitive(k3xk3_gw(1, self.cls, self.data, "point"), 0)

    @property
    def n2(self) -> Fraction:
        if not self.cls.primitive:
            raise ImprimitiveGenusTwo("genus 2 GV is defined for primitive classes only")
        l = self.cls.prim_half_square
        n0 = n_value("N0", l)
        n1_c2 = gv1_primitive(k3xk3_gw(1, self.cls, self.data.c2(), "point"), 0)
        nodal = nodal_from_parts(EULER_K3 * 2 * l * n0, 0, 0, k3xk3_gw(0, self.cls, self.data.c2(), "tau1"))
        return gv2_primitive(0, n1_c2, 0, nodal)


def k3xk3_gv(cls: K3Class, data: KunnethData) -> K3xK3GV:
    n0_two = gv0_from_gw(k3xk3_gw_lattice(0, cls, data, "two_point"), 2).top
    n0_curve = gv0_from_gw(k3xk3_gw_lattice(0, cls, data, "curve"), 1).top
    return K3xK3GV(cls, data, n0_two, n0_curve)


DT4_ITEMS = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")


def k3xk3_dt4(cls: K3Class, data: KunnethData, which: str) -> Fraction:
    """DT4 invariants in class ``beta``.

    ``i`` tau0(alpha), ``ii`` tau1(gamma), ``iii`` tau2(theta), ``iv`` tau3(1),
    ``v`` tau0(gamma) tau0(gamma'), ``vi`` tau0(gamma) tau1(theta),
    ``vii`` tau0(gamma) tau2(1), ``viii`` tau1(theta) tau2(1).
    """
    l = cls.half_square()
    n0, n1, ndp = n_value("N0", l), n_value("N1", l), n_value("Ndprime", l)
    d = data
    table = {
        "i": d.theta1_dot_beta * n0,
        "ii": d.a_point_T * n0 - d.a_point_S * EULER_K3 * n1,
        "iii": d.theta1_dot_beta * ndp,
        "iv": ndp,
        "v": d.d1_dot_beta * d.d1p_dot_beta * d.d2_d2p_on_T * n0,
        "vi": d.d1_dot_beta * d.d2_theta2_on_T * n0 - 24 * d.a_point_S * d.theta1_dot_beta * n1,
        "vii": Fraction(0),
        "viii": 48 * d.theta1_dot_beta * n1,
    }
    try:
        return table[which]
    except KeyError:
        raise UnsupportedInsertion(f"unknown DT4 item {which!r}") from None


def k3xk3_verify(cls: K3Class, data: KunnethData) -> List[Check]:
    geo = f"K3xK3(l={cls.prim_half_square},m={cls.m})"
    gv = k3xk3_gv(cls, data)
    out = [
        Check(geo, "dt4_two_point=n0", k3xk3_dt4(cls, data, "v"), gv.n0_twopoint),
        Check(geo, "dt4_curve=n0", k3xk3_dt4(cls, data, "i"), gv.n0_curve),
    ]
    n0_psi_top = n0_psi(k3xk3_gw_lattice(0, cls, data, "tau1")).top
    n1_sum = gv1_imprimitive(k3xk3_gw_lattice(1, cls, data, "point")).total()
    out.append(Check(geo, "dt4_tau1=-n0psi/2-sum_n1", k3xk3_dt4(cls, data, "ii"), -n0_psi_top / 2 - n1_sum))
    if cls.primitive:
        gw_tau1 = k3xk3_gw(0, cls, data, "tau1")
        out.append(Check(geo, "dt4_tau1=-gw_tau1/2-n1", k3xk3_dt4(cls, data, "ii"), -gw_tau1 / 2 - gv.n1))
        lhs = -k3xk3_dt4(cls, data, "iv") - k3xk3_dt4(cls, data.c2(), "ii") / 12
        out.append(Check(geo, "-dt4_tau3-dt4_tau1(c2)/12=n2", lhs, gv.n2))
    return out


# --------------------------------------------------------------------------- T*P^2


def tstarp2(genus: int, d: int) -> Fraction:
    """GW invariants in degree ``d``: genus 0 two-point ``H^2, H^2``; genus 1 ``tau0(H^2)``; genus 2."""
    if d < 1:
        raise OutOfRange("degree must be positive")
    sign = 1 if d % 2 else -1
    if genus == 0:
        return Fraction(sign, d)
    if genus == 1:
        return Fraction(sign * d, 8)
    if genus == 2:
        return Fraction(sign * d**3, 128)
    raise OutOfRange("genus must be 0, 1 or 2")


TSTARP2_DT4 = {
    "tau0_tau0": (Fraction(1), Fraction(-1), Fraction(0)),
    "tau1": (Fraction(-1, 2), Fraction(1, 2), Fraction(0)),
    "tau2": (Fraction(-1, 4), Fraction(-1, 4), Fraction(0)),
    "tau3": (Fraction(-1, 8), Fraction(1, 8), Fraction(0)),
}

C2_ON_ZERO_SECTION = -3  # c2(T_X) restricted to P^2 is -3 H^2
DIAGONAL_ON_ZERO_SECTION = 3


def tstarp2_dt4(d: int, insertion: str) -> Fraction:
    """DT4 values: ``tau0_tau0`` (H^2, H^2), ``tau1`` (H^2), ``tau2`` (H), ``tau3`` (1)."""
    if insertion not in TSTARP2_DT4:
        raise UnsupportedInsertion(f"unknown insertion {insertion!r}")
    if not 1 <= d <= 3:
        raise OutOfRange("DT4 values are available for degrees 1, 2, 3")
    return TSTARP2_DT4[insertion][d - 1]


def tstarp2_gv(d: int):
    """``(n0, n1, n2)`` in degree ``d``; ``n1``, ``n2`` only for ``d = 1``."""
    gw = DivisorIndexed.from_function(d, lambda c: tstarp2(0, d // c))
    n0 = gv0_from_gw(gw, 2).top
    if d != 1:
        return n0, None, None
    two_point = tstarp2(0, 1)
    n1 = gv1_primitive(tstarp2(1, 1), C2_ON_ZERO_SECTION * two_point)
    n1_c2 = gv1_primitive(C2_ON_ZERO_SECTION * tstarp2(1, 1), C2_ON_ZERO_SECTION**2 * two_point)
    tau1_h2 = tau1_reduce(two_point, 0, 1)
    psi3 = tau3_reduce(0, two_point, 1)
    nodal = nodal_from_parts(DIAGONAL_ON_ZERO_SECTION * two_point, 0, psi3, C2_ON_ZERO_SECTION * tau1_h2)
    n2 = gv2_primitive(tstarp2(2, 1), n1_c2, C2_ON_ZERO_SECTION**2 * two_point, nodal)
    return n0, n1, n2


def tstarp2_verify(d: int) -> List[Check]:
    geo = f"T*P2(d={d})"
    n0, n1, n2 = tstarp2_gv(d)
    out = [Check(geo, "dt4_two_point=n0", tstarp2_dt4(d, "tau0_tau0"), n0)]
    if d == 1:
        gw_tau1 = tau1_reduce(tstarp2(0, 1), 0, 1)
        out.append(Check(geo, "dt4_tau1=-gw_tau1/2-n1", tstarp2_dt4(1, "tau1"), -gw_tau1 / 2 - n1))
        lhs = -tstarp2_dt4(1, "tau3") - C2_ON_ZERO_SECTION * tstarp2_dt4(1, "tau1") / 12
        out.append(Check(geo, "-dt4_tau3-dt4_tau1(c2)/12=n2", lhs, n2))
    return out


# --------------------------------------------------------------------------- rational curve family


@dataclass(frozen=True)
class ERCFData:
    """Intersection numbers of a family ``p: C -> S`` of rational curves embedded by ``j``.

    ``gamma_omega`` is ``int_C j*(gamma) c1(omega_p)``; ``theta_omega2`` and ``c2_theta``
    are ``int_C j*(theta) c1(omega_p)^2`` and ``int_C j*(c2 theta)``; ``c2_omega`` is
    ``int_C j*(c2) c1(omega_p)``; ``base_integral`` is ``int_S prod p_* j*(gamma_i)``
    for ``n_markings`` insertions; ``fiber_tangent_cubed`` is ``int_C c1(T_p)^3``.
    """

    euler_base: Fraction = Fraction(0)
    gamma_omega: Fraction = Fraction(0)
    theta_omega2: Fraction = Fraction(0)
    c2_theta: Fraction = Fraction(0)
    c2_omega: Fraction = Fraction(0)
    base_integral: Fraction = Fraction(0)
    n_markings: int = 2
    fiber_tangent_cubed: Fraction = Fraction(0)

    def __post_init__(self):
        for k, v in asdict(self).items():
            if k != "n_markings":
                object.__setattr__(self, k, Fraction(v))


@dataclass(frozen=True)
class ERCFRecord:
    gw0: Fraction
    gw1: Fraction
    gw2: Fraction
    tau1: Fraction
    n0: Fraction
    n0_psi: Fraction
    gv1: Fraction
    gv2: Optional[Fraction]
    nodal: Optional[Fraction]
    dt4_tau0: Fraction
    dt4_tau1: Fraction
    dt4_tau2: Fraction
    dt4_tau3: Fraction


def _ercf_gw0(data, d):
    return Fraction(d) ** (data.n_markings - 3) * data.base_integral


def _ercf_tau1(data, d):
    # D = [C] has degree -2 on the fiber class; <tau0(gamma) tau0(D^2)> vanishes
    return tau1_reduce(0, data.gamma_omega / d**2, -2 * d)


def ercf_nodal(data: ERCFData) -> Fraction:
    e, t = data.euler_base, data.fiber_tangent_cubed
    diag = -2 * e
    psi3 = -t
    psi1_c2 = -2 * e + t
    return nodal_from_parts(diag, 0, psi3, psi1_c2)


def ercf(data: ERCFData, d: int) -> ERCFRecord:
    if d < 1:
        raise OutOfRange("degree must be positive")
    gw0 = DivisorIndexed.from_function(d, lambda c: _ercf_gw0(data, d // c))
    tau1 = DivisorIndexed.from_function(d, lambda c: _ercf_tau1(data, d // c))
    zero = DivisorIndexed.from_function(d, lambda c: 0)
    n0 = gv0_from_gw(gw0, data.n_markings).top
    npsi = n0_psi(tau1).top
    gv1 = gv1_imprimitive(zero).top
    if d == 1:
        nodal = ercf_nodal(data)
        gv2 = gv2_primitive(0, 0, 0, nodal)
    else:
        nodal = gv2 = None
    first = d == 1
    return ERCFRecord(
        gw0=gw0.top,
        gw1=Fraction(0),
        gw2=Fraction(0),
        tau1=tau1.top,
        n0=n0,
        n0_psi=npsi,
        gv1=gv1,
        gv2=gv2,
        nodal=nodal,
        dt4_tau0=data.base_integral if first else Fraction(0),
        dt4_tau1=-data.gamma_omega / 2 if first else Fraction(0),
        dt4_tau2=(data.theta_omega2 - data.c2_theta) / 12 if first else Fraction(0),
        dt4_tau3=data.c2_omega / 24 if first else Fraction(0),
    )


def ercf_verify(data: ERCFData, max_d: int = 4) -> List[Check]:
    out = []
    for d in range(1, max_d + 1):
        geo = f"ERCF(d={d})"
        rec = ercf(data, d)
        out.append(Check(geo, "dt4_tau0=n0", rec.dt4_tau0, rec.n0))
        n1_sum = gv1_imprimitive(DivisorIndexed.from_function(d, lambda c: 0)).total()
        out.append(Check(geo, "dt4_tau1=-n0psi/2-sum_n1", rec.dt4_tau1, -rec.n0_psi / 2 - n1_sum))
        if d == 1:
            out.append(Check(geo, "dt4_tau1=-gw_tau1/2-n1", rec.dt4_tau1, -rec.tau1 / 2 - rec.gv1))
            tau1_c2 = -data.c2_omega / 2
            out.append(Check(geo, "-dt4_tau3-dt4_tau1(c2)/12=n2", -rec.dt4_tau3 - tau1_c2 / 12, rec.gv2))
            out.append(Check(geo, "nodal=0", rec.nodal, Fraction(0)))
    return out
