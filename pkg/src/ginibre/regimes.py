"""Tags selecting which kernel a correlation is computed from."""

from dataclasses import dataclass

from .special import MAX_ORDER

__all__ = [
    "FiniteN",
    "OriginBulk",
    "RealEdge",
    "ComplexBulk",
    "ComplexEdge",
    "ComplexGinibreFinite",
    "ComplexGinibreBulk",
    "ComplexGinibreEdge",
    "PFAFFIAN_REGIMES",
    "DETERMINANTAL_REGIMES",
    "make_regime",
    "regime_name",
    "regime_label",
]

UNIT_TOL = 1e-12


@dataclass(frozen=True)
class FiniteN:
    """Real Ginibre matrices of size N = 2M."""

    M: int

    def __post_init__(self):
        if int(self.M) != self.M or not 1 <= self.M <= MAX_ORDER:
            raise ValueError("FiniteN needs 1 <= M <= %d" % MAX_ORDER)


@dataclass(frozen=True)
class OriginBulk:
    pass


@dataclass(frozen=True)
class RealEdge:
    u: int

    def __post_init__(self):
        if self.u not in (1, -1):
            raise ValueError("RealEdge needs u = +1 or -1")


@dataclass(frozen=True)
class ComplexBulk:
    pass


def _check_unit_upper(u, name):
    u = complex(u)
    if abs(abs(u) - 1.0) > UNIT_TOL:
        raise ValueError("%s needs |u| = 1" % name)
    return u


@dataclass(frozen=True)
class ComplexEdge:
    u: complex

    def __post_init__(self):
        u = _check_unit_upper(self.u, "ComplexEdge")
        if not u.imag > 0:
            raise ValueError("ComplexEdge needs Im u > 0")
        object.__setattr__(self, "u", u)


@dataclass(frozen=True)
class ComplexGinibreFinite:
    N: int

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError("ComplexGinibreFinite needs N >= 1")


@dataclass(frozen=True)
class ComplexGinibreBulk:
    pass


@dataclass(frozen=True)
class ComplexGinibreEdge:
    u: complex

    def __post_init__(self):
        object.__setattr__(self, "u", _check_unit_upper(self.u, "ComplexGinibreEdge"))


PFAFFIAN_REGIMES = (FiniteN, OriginBulk, RealEdge)
DETERMINANTAL_REGIMES = (ComplexBulk, ComplexEdge, ComplexGinibreFinite, ComplexGinibreBulk, ComplexGinibreEdge)

_NAMES = {
    "finite": FiniteN,
    "origin": OriginBulk,
    "real-edge": RealEdge,
    "complex-bulk": ComplexBulk,
    "complex-edge": ComplexEdge,
    "ginue-finite": ComplexGinibreFinite,
    "ginue-bulk": ComplexGinibreBulk,
    "ginue-edge": ComplexGinibreEdge,
}


def make_regime(name, M=None, u=None):
    """Build a regime from its command-line name."""
    try:
        cls = _NAMES[name]
    except KeyError:
        raise ValueError("unknown regime %r (choose from %s)" % (name, ", ".join(_NAMES))) from None
    if cls is FiniteN:
        if M is None:
            raise ValueError("regime 'finite' needs M")
        return FiniteN(int(M))
    if cls is ComplexGinibreFinite:
        if M is None:
            raise ValueError("regime 'ginue-finite' needs M (matrix size N = 2M)")
        return ComplexGinibreFinite(2 * int(M))
    if cls is RealEdge:
        if u is None:
            u = 1
        u = complex(u)
        if u.imag != 0 or abs(u.real) != 1:
            raise ValueError("real-edge needs u = 1 or -1")
        return RealEdge(int(u.real))
    if cls in (ComplexEdge, ComplexGinibreEdge):
        if u is None:
            raise ValueError("regime %r needs u" % name)
        u = complex(u)
        if abs(u) > 0:
            # accept a direction given to a few digits on the command line
            if abs(abs(u) - 1.0) < 1e-6:
                u = u / abs(u)
        return cls(u)
    return cls()


def regime_name(regime):
    for name, cls in _NAMES.items():
        if type(regime) is cls:
            return name
    raise ValueError("not a regime: %r" % (regime,))


def regime_label(regime):
    """Short human-readable description, e.g. ``finite(M=4)``."""
    name = regime_name(regime)
    fields = {k: v for k, v in vars(regime).items()}
    if not fields:
        return name
    return "%s(%s)" % (name, ", ".join("%s=%s" % (k, v) for k, v in fields.items()))
