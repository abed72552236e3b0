"""Pencils of foliations and the flat structures they define.

A foliation germ is given by a 1-form P dx + Q dy (not both vanishing
at the origin); a pencil is the family omega_0 + z*omega_inf over
z in P^1, with the two generators independent at the origin.  A
structure is *flat* when its geodesics are exactly the leaves of the
members of such a pencil; :func:`structure_from_pencil` produces the
unique cubic equation with that property, and the z-value of a
geodesic (:func:`member_value_along`) is its first integral.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateWedge, VerticalAtOrigin
from .jets import Jet2
from .slopes import SlopePoly
from .structures import ProjectiveStructure, eval_along, swap_axes


class _Infinity:
    """Sentinel for the z = infinity member of a pencil."""

    _only = None

    def __new__(cls):
        if cls._only is None:
            cls._only = super().__new__(cls)
        return cls._only

    def __repr__(self):
        return "inf"


INF = _Infinity()


def _is_unit(c):
    u = getattr(c, "is_unit", None)
    if u is not None:
        return u
    return c != 0


@dataclass(frozen=True)
class Foliation:
    """The foliation with tangent 1-form P dx + Q dy."""

    P: Jet2
    Q: Jet2

    def __post_init__(self):
        if self.P.order != self.Q.order:
            raise ValueError("form components must share one order")
        if not (_is_unit(self.P.constant_term) or _is_unit(self.Q.constant_term)):
            raise ValueError("form vanishes at the origin")

    @property
    def order(self):
        return self.P.order

    def agree(self, other):
        return self.P.agree(other.P) and self.Q.agree(other.Q)

    def is_vertical_at_origin(self):
        return not _is_unit(self.Q.constant_term)

    def swapped(self):
        """The same foliation in coordinates with x and y exchanged."""
        return Foliation(self.Q.swap_vars(), self.P.swap_vars())


def slope(fol):
    """Leaf slope field -P/Q; the origin must not be vertical."""
    if fol.is_vertical_at_origin():
        raise VerticalAtOrigin("leaf through the origin is vertical")
    return -fol.P / fol.Q


def foliation_residual(fol, st):
    """Second-order residual of the leaves against a structure.

    Zero iff every leaf of the foliation is a geodesic of ``st``.
    Computed for the slope field s = -P/Q as s_x + s s_y - f(x, y, s).
    """
    s = slope(fol)
    rhs = st.A + st.B * s + st.C * s ** 2 + st.D * s ** 3
    return s.d_dx() + s * s.d_dy() - rhs


def is_geodesic(fol, st):
    """Are all leaves of the foliation geodesics of the structure?

    Vertical-at-origin foliations are handled by exchanging the two
    coordinate axes, which maps geodesics to geodesics.
    """
    if fol.is_vertical_at_origin():
        return is_geodesic(fol.swapped(), swap_axes(st))
    return foliation_residual(fol, st).is_zero()


@dataclass(frozen=True)
class Pencil:
    omega0: Foliation
    omega_inf: Foliation

    def __post_init__(self):
        if self.omega0.order != self.omega_inf.order:
            raise ValueError("pencil generators must share one order")
        if not _is_unit(self.wedge().constant_term):
            raise DegenerateWedge("generators proportional at the origin")

    @property
    def order(self):
        return self.omega0.order

    def wedge(self):
        """Coefficient of dx ^ dy in omega0 ^ omega_inf."""
        return (self.omega0.P * self.omega_inf.Q
                - self.omega0.Q * self.omega_inf.P)

    @classmethod
    def from_jets(cls, p0, q0, p_inf, q_inf):
        return cls(Foliation(p0, q0), Foliation(p_inf, q_inf))


def member(pencil, z):
    """The foliation omega_0 + z*omega_inf (z rational or INF)."""
    if z is INF:
        return pencil.omega_inf
    z = Fraction(z)
    return Foliation(pencil.omega0.P + pencil.omega_inf.P.scale(z),
                     pencil.omega0.Q + pencil.omega_inf.Q.scale(z))


def structure_from_pencil(pencil):
    """The unique structure whose geodesics are the leaves of the pencil.

    Along a curve with slope p, the member containing it has
    z = -(P0 + Q0 p)/(Pinf + Qinf p); requiring z' = 0 along solutions
    and eliminating z yields a right-hand side that is automatically
    cubic in p, divided by the pencil wedge.
    """
    p0, q0 = pencil.omega0.P, pencil.omega0.Q
    pi, qi = pencil.omega_inf.P, pencil.omega_inf.Q
    r = SlopePoly([p0, q0])
    s = SlopePoly([pi, qi])
    # total x-derivative of R(x, y, p) holding the f-term apart:
    # R_x + R_y p with R = P + Q p
    dr = SlopePoly([p0.d_dx(), q0.d_dx() + p0.d_dy(), q0.d_dy()])
    ds = SlopePoly([pi.d_dx(), qi.d_dx() + pi.d_dy(), qi.d_dy()])
    top = dr * s - r * ds
    winv = pencil.wedge().inverse()
    return ProjectiveStructure(*(top.coeff(k) * winv for k in range(4)))


def member_value_along(pencil, curve):
    """The z-value of the pencil member tangent to an x-graph curve.

    For a geodesic of ``structure_from_pencil`` this jet is constant.
    The curve must pass through the origin with a slope at which the
    omega_inf pairing does not vanish.
    """
    yp = curve.d_dx()
    r = (eval_along(pencil.omega0.P, curve)
         + eval_along(pencil.omega0.Q, curve) * yp)
    s = (eval_along(pencil.omega_inf.P, curve)
         + eval_along(pencil.omega_inf.Q, curve) * yp)
    return -r / s


def lie_derivative_form(field, fol):
    """Lie derivative of the 1-form along the field, as a (dx, dy) pair.

    For v = a d/dx + b d/dy and omega = P dx + Q dy:
    L_v omega = (v(P) + P a_x + Q b_x) dx + (v(Q) + P a_y + Q b_y) dy.
    The result is returned as a plain pair of jets (it need not define a
    foliation: it can vanish).
    """
    p, q = fol.P, fol.Q
    a, b = field.a, field.b
    return (field.apply(p) + p * a.d_dx() + q * b.d_dx(),
            field.apply(q) + p * a.d_dy() + q * b.d_dy())
