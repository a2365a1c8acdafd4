"""The five families of almost Sylow-cyclic groups: parameters, validation,
table construction, counting formulas and the stated representatives."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

import numpy as np

from .analysis import (is_indecomposable, is_sylow_cyclic_or_dihedral, mult_order, p_part,
                       prime_divisors, radical, tau_order, totient)
from .errors import InvalidParameter, RelationFailure
from .generators import DEFAULT_OPTIONS, EnumOptions, is_reversing_triple, is_rotary_pair
from .groups import DEFAULT_ORDER_CAP, ActionHom, GroupTable, direct_product, make_cyclic, \
    make_dihedral, semidirect_product

FAMILIES = ("I", "II", "III", "IV", "V")
KINDS = ("rotary", "reversing")
NOT_COVERED = "not-covered"

# exponent fields and the order of the cyclic factor each one acts on
_EXPONENTS = {
    "I": (("r", "g"),),
    "II": (("r", "g"), ("r_v", "g_v")),
    "III": (("r", "g"), ("r_u", "g_u"), ("r_v", "g_v")),
    "IV": (("r", "g"),),
    "V": (("s", "g"),),
}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    g: int = 1
    g_u: int = 1
    g_v: int = 1
    h: int = 1
    c: int = 1
    e: int = 2
    r: int = 1
    r_u: int = 1
    r_v: int = 1
    s: int = 1

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, doc: dict) -> "FamilySpec":
        known = {f for f in cls.__dataclass_fields__}
        extra = set(doc) - known
        if extra:
            raise InvalidParameter(f"unknown family fields: {sorted(extra)}")
        return cls(**doc)

    def params(self) -> dict:
        """The fields that matter for this family, for reports."""
        keys = {
            "I": ("g", "h", "r"),
            "II": ("g", "g_v", "h", "e", "r", "r_v"),
            "III": ("g_u", "g_v", "g", "h", "e", "r_u", "r_v", "r"),
            "IV": ("g", "h", "r"),
            "V": ("g", "h", "c", "s"),
        }[self.family]
        return {k: getattr(self, k) for k in keys}

    def expected_order(self) -> int:
        f = self.family
        if f == "I":
            return self.g * self.h
        if f == "II":
            return self.g * self.g_v * 2 ** self.e * self.h
        if f == "III":
            return self.g_u * self.g_v * self.g * 2 ** self.e * self.h
        if f == "IV":
            return self.g * 4 * self.h
        return self.g * 8 * self.h * self.c


class Diagnostic(NamedTuple):
    condition: str
    detail: str

    def __str__(self) -> str:
        return f"{self.condition}: {self.detail}"


# ---------------------------------------------------------------------------
# validation


def _coprime(*ns: int) -> bool:
    return all(math.gcd(a, b) == 1 for a, b in itertools.combinations(ns, 2))


def _exponent_ok(out: list, name: str, r: int, modulus: int, period: int) -> bool:
    """r must be a unit mod `modulus` with r^period = 1."""
    if modulus == 1:
        return True
    if math.gcd(r, modulus) != 1:
        out.append(Diagnostic(f"{name} is a unit", f"gcd({r}, {modulus}) != 1"))
        return False
    if pow(r, period, modulus) != 1:
        out.append(Diagnostic(f"{name}^|h| = 1", f"{r}^{period} mod {modulus} = {pow(r, period, modulus)}"))
        return False
    return True


def _centralizer_ok(out: list, label: str, period: int, action_order: int) -> None:
    # C_<x>(y) <= Phi(<x>) iff every prime of |x| divides the order of the action
    if action_order % radical(period):
        out.append(Diagnostic(f"C_<{label}> inside Phi(<{label}>)",
                              f"rad({period}) = {radical(period)} does not divide the action order {action_order}"))


def validate_family_spec(spec: FamilySpec) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    if spec.family not in FAMILIES:
        return [Diagnostic("family", f"unknown family {spec.family!r}")]
    for name in ("g", "g_u", "g_v", "h", "c", "e"):
        if not isinstance(getattr(spec, name), int) or getattr(spec, name) < 1:
            out.append(Diagnostic(f"{name} >= 1", f"got {getattr(spec, name)!r}"))
    if out:
        return out
    f = spec.family
    g, gu, gv, h, c = spec.g, spec.g_u, spec.g_v, spec.h, spec.c

    if f == "I":
        if h % 2:
            out.append(Diagnostic("|h| even", f"|h| = {h}"))
            return out
        if not _exponent_ok(out, "r", spec.r, g, h):
            return out
        if pow(spec.r, h // 2, g) != (g - 1) % g:
            out.append(Diagnostic("g^(h^m) = g^-1", f"{spec.r}^{h // 2} mod {g} = {pow(spec.r, h // 2, g)}, not -1"))
        _centralizer_ok(out, "h", h, mult_order(spec.r, g))
        shared = [p for p in prime_divisors(math.gcd(g, h)) if p != 2]
        if shared:
            out.append(Diagnostic("odd Sylow subgroups cyclic", f"primes {shared} divide both |g| and |h|"))
        if g % 2 == 0 and p_part(h, 2) != 2:
            out.append(Diagnostic("Sylow 2-subgroup dihedral", f"|g| even needs |h|_2 = 2, got {p_part(h, 2)}"))

    elif f in ("II", "III"):
        odd = (g, gv, h) if f == "II" else (gu, gv, g, h)
        if not _coprime(*odd):
            out.append(Diagnostic("orders pairwise coprime", f"{odd}"))
        if any(n % 2 == 0 for n in odd):
            out.append(Diagnostic("odd orders", f"{odd}"))
        if f == "II" and gv == 1:
            out.append(Diagnostic("g_v ≠ 1", "type II needs g_v ≠ 1"))
        if f == "III" and gu == 1 and (gv == 1 or g == 1):
            out.append(Diagnostic("g_u = 1 ⟹ g_v ≠ 1 and g ≠ 1", f"g_v = {gv}, g = {g}"))
        if spec.e < 2:
            out.append(Diagnostic("e >= 2", f"e = {spec.e}"))
        oks = [_exponent_ok(out, name, getattr(spec, name), getattr(spec, mod), h)
               for name, mod in _EXPONENTS[f]]
        if all(oks) and not out:
            orders = [mult_order(getattr(spec, name), getattr(spec, mod)) for name, mod in _EXPONENTS[f]]
            _centralizer_ok(out, "h", h, math.lcm(*orders))

    elif f == "IV":
        if h % 3:
            out.append(Diagnostic("3 | |h|", f"|h| = {h}"))
        if h % 2 == 0:
            out.append(Diagnostic("|h| odd", f"|h| = {h}"))
        if math.gcd(g, 6) != 1:
            out.append(Diagnostic("gcd(|g|, 6) = 1", f"|g| = {g}"))
        if math.gcd(g, h) != 1:
            out.append(Diagnostic("gcd(|g|, |h|) = 1", f"{g}, {h}"))
        if not out and _exponent_ok(out, "r", spec.r, g, h):
            _centralizer_ok(out, "h^3", h // 3, mult_order(pow(spec.r, 3, g), g))

    else:  # V
        if h < 3 or 3 ** (len(str(np.base_repr(h, 3))) - 1) != h:
            out.append(Diagnostic("<h> a Sylow 3-subgroup", f"|h| = {h} is not a power of 3"))
        if not _coprime(g, h, c):
            out.append(Diagnostic("orders pairwise coprime", f"{(g, h, c)}"))
        if math.gcd(g, 6) != 1 or math.gcd(c, 6) != 1:
            out.append(Diagnostic("|g|, |c| coprime to 6", f"|g| = {g}, |c| = {c}"))
        if not out and _exponent_ok(out, "s", spec.s, g, c):
            _centralizer_ok(out, "c", c, mult_order(spec.s, g))
    return out


def auto_exponents(spec: FamilySpec, only: Iterable[str] | None = None) -> FamilySpec | None:
    """The spec with its action exponents replaced by the least admissible
    choice (lexicographic in the exponent fields), or None.  With `only`,
    the other exponents are kept as given."""
    fields = _EXPONENTS.get(spec.family, ())
    if only is not None:
        only = set(only)
        fields = tuple(f for f in fields if f[0] in only)
    ranges = [range(1, max(getattr(spec, mod), 2)) for _, mod in fields]
    for combo in itertools.product(*ranges):
        cand = replace(spec, **{name: val for (name, _), val in zip(fields, combo)})
        if not validate_family_spec(cand):
            return cand
    return None


# ---------------------------------------------------------------------------
# construction


@dataclass(eq=False)
class GroupRealization:
    group: GroupTable
    named: dict[str, int]
    spec: FamilySpec
    relations: list[str] = field(default_factory=list)

    def __getitem__(self, name: str) -> int:
        return self.named[name]

    def indecomposable(self):
        return is_indecomposable(self.group)


def _cyclic_product(*orders: int) -> GroupTable:
    G = make_cyclic(orders[0])
    for n in orders[1:]:
        G = direct_product(G, make_cyclic(n))
    return G


def _label_map(N: GroupTable, fn: Callable[[tuple], tuple]) -> np.ndarray:
    return np.array([N.element(fn(lbl)) for lbl in N.labels], dtype=np.int64)


def _semidirect(N: GroupTable, K: GroupTable, conj: dict[int, Callable[[tuple], tuple]],
                cap: int) -> GroupTable:
    """N : K where k in K conjugates n to conj[k](n), i.e. n^k = conj[k](n)."""
    images = {}
    for k, fn in conj.items():
        if k == K.identity:
            continue
        perm = _label_map(N, fn)
        images[k] = np.argsort(perm)  # the product takes k n k^-1, the inverse map
    return semidirect_product(N, K, ActionHom(images), cap=cap)


class _Checker:
    def __init__(self, G: GroupTable):
        self.G = G
        self.passed: list[str] = []

    def eq(self, name: str, lhs: int, rhs: int) -> None:
        if lhs != rhs:
            raise RelationFailure(f"relation {name} fails in the constructed table")
        self.passed.append(name)

    def order(self, name: str, x: int, n: int) -> None:
        self.eq(f"|{name}| = {n}", self.G.element_orders[x], n)


def build_family(spec: FamilySpec, *, cap: int = DEFAULT_ORDER_CAP) -> GroupRealization:
    diags = validate_family_spec(spec)
    if diags:
        raise InvalidParameter("; ".join(map(str, diags)))
    builder = {"I": _build_I, "II": _build_II, "III": _build_III, "IV": _build_IV, "V": _build_V}
    G, named, chk = builder[spec.family](spec, cap)
    if G.order != spec.expected_order():
        raise RelationFailure(f"table order {G.order} != {spec.expected_order()}")
    verdict = is_sylow_cyclic_or_dihedral(G)
    if not verdict.ok:
        raise RelationFailure(f"Sylow {verdict.witness['prime']}-subgroup is neither cyclic nor dihedral")
    chk.passed.append("Sylow subgroups cyclic or dihedral")
    return GroupRealization(G.with_names(named), named, spec, chk.passed)


def _embedders(N: GroupTable, K: GroupTable):
    nk = K.order
    return (lambda n: n * nk + K.identity), (lambda k: N.identity * nk + k)


def _build_I(spec: FamilySpec, cap: int):
    g, h, r = spec.g, spec.h, spec.r
    N, K = make_cyclic(g), make_cyclic(h)
    G = _semidirect(N, K, {K.named["g"]: lambda l: ((l[0] * r) % g,)}, cap)
    en, ek = _embedders(N, K)
    named = {"g": en(N.named["g"]), "h": ek(K.named["g"])}
    x, y = named["g"], named["h"]
    chk = _Checker(G)
    chk.order("g", x, g)
    chk.order("h", y, h)
    chk.eq("g^h = g^r", G.conj(x, y), G.power(x, r))
    chk.eq("g^(h^m) = g^-1", G.conj(x, G.power(y, h // 2)), G.inv[x])
    return G, named, chk


def _dihedral_part(e: int):
    """D_{2^e} as <u, v> with w = uv the rotation."""
    D = make_dihedral(2 ** (e - 1))
    u = D.named["s"]
    v = D.prod(u, D.named["r"])
    return D, u, v


def _build_II(spec: FamilySpec, cap: int):
    g, gv, h, e = spec.g, spec.g_v, spec.h, spec.e
    r, rv = spec.r, spec.r_v
    N = _cyclic_product(g, gv)
    D, du, dv = _dihedral_part(e)
    K = direct_product(D, make_cyclic(h))
    kd = lambda d: d * h
    hk = D.identity * h + 1 % h
    conj = {
        kd(du): lambda l: l,
        kd(dv): lambda l: (l[0], -l[1] % gv),
        hk: lambda l: (l[0] * r % g, l[1] * rv % gv),
    }
    G = _semidirect(N, K, conj, cap)
    en, ek = _embedders(N, K)
    named = {
        "g": en(N.element((1 % g, 0))), "g_v": en(N.element((0, 1 % gv))),
        "u": ek(kd(du)), "v": ek(kd(dv)), "h": ek(hk),
    }
    named["w"] = G.prod(named["u"], named["v"])
    x, xv, u, v, w, y = (named[k] for k in ("g", "g_v", "u", "v", "w", "h"))
    chk = _Checker(G)
    chk.order("u", u, 2)
    chk.order("v", v, 2)
    chk.order("w", w, 2 ** (e - 1))
    chk.order("g", x, g)
    chk.order("g_v", xv, gv)
    chk.order("h", y, h)
    chk.eq("g^u = g", G.conj(x, u), x)
    chk.eq("g_v^u = g_v", G.conj(xv, u), xv)
    chk.eq("g^v = g", G.conj(x, v), x)
    chk.eq("g_v^v = g_v^-1", G.conj(xv, v), G.inv[xv])
    chk.eq("g^h = g^r", G.conj(x, y), G.power(x, r))
    chk.eq("g_v^h = g_v^r_v", G.conj(xv, y), G.power(xv, rv))
    chk.eq("[u, h] = 1", G.prod(u, y), G.prod(y, u))
    chk.eq("[v, h] = 1", G.prod(v, y), G.prod(y, v))
    return G, named, chk


def _build_III(spec: FamilySpec, cap: int):
    gu, gv, g, h, e = spec.g_u, spec.g_v, spec.g, spec.h, spec.e
    ru, rv, r = spec.r_u, spec.r_v, spec.r
    N = _cyclic_product(gu, gv, g)
    D, du, dv = _dihedral_part(e)
    K = direct_product(D, make_cyclic(h))
    kd = lambda d: d * h
    hk = D.identity * h + 1 % h
    conj = {
        kd(du): lambda l: (-l[0] % gu, l[1], -l[2] % g),
        kd(dv): lambda l: (l[0], -l[1] % gv, -l[2] % g),
        hk: lambda l: (l[0] * ru % gu, l[1] * rv % gv, l[2] * r % g),
    }
    G = _semidirect(N, K, conj, cap)
    en, ek = _embedders(N, K)
    named = {
        "g_u": en(N.element((1 % gu, 0, 0))), "g_v": en(N.element((0, 1 % gv, 0))),
        "g": en(N.element((0, 0, 1 % g))),
        "u": ek(kd(du)), "v": ek(kd(dv)), "h": ek(hk),
    }
    named["w"] = G.prod(named["u"], named["v"])
    xu, xv, x, u, v, w, y = (named[k] for k in ("g_u", "g_v", "g", "u", "v", "w", "h"))
    chk = _Checker(G)
    chk.order("u", u, 2)
    chk.order("v", v, 2)
    chk.order("w", w, 2 ** (e - 1))
    for name, el, n in (("g_u", xu, gu), ("g_v", xv, gv), ("g", x, g), ("h", y, h)):
        chk.order(name, el, n)
    chk.eq("g_u^u = g_u^-1", G.conj(xu, u), G.inv[xu])
    chk.eq("g_v^u = g_v", G.conj(xv, u), xv)
    chk.eq("g^u = g^-1", G.conj(x, u), G.inv[x])
    chk.eq("g_u^v = g_u", G.conj(xu, v), xu)
    chk.eq("g_v^v = g_v^-1", G.conj(xv, v), G.inv[xv])
    chk.eq("g^v = g^-1", G.conj(x, v), G.inv[x])
    chk.eq("g_u^h = g_u^r_u", G.conj(xu, y), G.power(xu, ru))
    chk.eq("g_v^h = g_v^r_v", G.conj(xv, y), G.power(xv, rv))
    chk.eq("g^h = g^r", G.conj(x, y), G.power(x, r))
    chk.eq("[u, h] = 1", G.prod(u, y), G.prod(y, u))
    chk.eq("[v, h] = 1", G.prod(v, y), G.prod(y, v))
    return G, named, chk


def _build_IV(spec: FamilySpec, cap: int):
    g, h, r = spec.g, spec.h, spec.r
    N = _cyclic_product(g, 2, 2)
    K = make_cyclic(h)
    # h: g -> g^r and u -> v -> uv -> u on the Klein part
    G = _semidirect(N, K, {K.named["g"]: lambda l: (l[0] * r % g, l[2], (l[1] + l[2]) % 2)}, cap)
    en, ek = _embedders(N, K)
    named = {
        "g": en(N.element((1 % g, 0, 0))), "u": en(N.element((0, 1, 0))),
        "v": en(N.element((0, 0, 1))), "h": ek(K.named["g"]),
    }
    named["w"] = G.prod(named["u"], named["v"])
    x, u, v, w, y = (named[k] for k in ("g", "u", "v", "w", "h"))
    chk = _Checker(G)
    chk.order("u", u, 2)
    chk.order("v", v, 2)
    chk.order("w", w, 2)
    chk.order("g", x, g)
    chk.order("h", y, h)
    chk.eq("u^h = v", G.conj(u, y), v)
    chk.eq("v^h = w", G.conj(v, y), w)
    chk.eq("w^h = u", G.conj(w, y), u)
    chk.eq("g^h = g^r", G.conj(x, y), G.power(x, r))
    chk.eq("[g, u] = 1", G.prod(x, u), G.prod(u, x))
    chk.eq("[g, v] = 1", G.prod(x, v), G.prod(v, x))
    return G, named, chk


def _build_V(spec: FamilySpec, cap: int):
    g, h, c, s = spec.g, spec.h, spec.c, spec.s
    # Klein part with k1 = w^2 and k2 = v
    N = _cyclic_product(g, 2, 2)
    Dh = make_dihedral(h)  # <h> : <u> with h^u = h^-1
    K = direct_product(Dh, make_cyclic(c))
    kd = lambda d: d * c
    hk, uk = kd(Dh.named["r"]), kd(Dh.named["s"])
    ck = Dh.identity * c + 1 % c
    conj = {
        hk: lambda l: (l[0], (l[1] + l[2]) % 2, l[1]),
        uk: lambda l: (-l[0] % g, (l[1] + l[2]) % 2, l[2]),
        ck: lambda l: (l[0] * s % g, l[1], l[2]),
    }
    G = _semidirect(N, K, conj, cap)
    en, ek = _embedders(N, K)
    named = {
        "g": en(N.element((1 % g, 0, 0))), "v": en(N.element((0, 0, 1))),
        "w2": en(N.element((0, 1, 0))),
        "h": ek(hk), "u": ek(uk), "c": ek(ck),
    }
    named["w"] = G.prod(named["u"], named["v"])
    x, v, w2, y, u, z, w = (named[k] for k in ("g", "v", "w2", "h", "u", "c", "w"))
    w2v = G.prod(w2, v)
    chk = _Checker(G)
    chk.order("u", u, 2)
    chk.order("v", v, 2)
    chk.order("w", w, 4)
    chk.eq("w^2 = k1", G.power(w, 2), w2)
    chk.order("g", x, g)
    chk.order("h", y, h)
    chk.order("c", z, c)
    chk.eq("(w^2 v)^h = v", G.conj(w2v, y), v)
    chk.eq("v^h = w^2", G.conj(v, y), w2)
    chk.eq("(w^2)^h = w^2 v", G.conj(w2, y), w2v)
    chk.eq("h^u = h^-1", G.conj(y, u), G.inv[y])
    chk.eq("[g, h] = 1", G.prod(x, y), G.prod(y, x))
    chk.eq("g^u = g^-1", G.conj(x, u), G.inv[x])
    chk.eq("g^c = g^s", G.conj(x, z), G.power(x, s))
    chk.eq("[c, h] = 1", G.prod(z, y), G.prod(y, z))
    chk.eq("[c, u] = 1", G.prod(z, u), G.prod(u, z))
    return G, named, chk


# ---------------------------------------------------------------------------
# counting formulas


def _sylow2_dihedral_8plus(spec: FamilySpec) -> bool:
    return spec.g % 2 == 0 and p_part(spec.g, 2) >= 4 and p_part(spec.h, 2) == 2


def _h0_tau(spec: FamilySpec) -> int:
    """|tau_{h0}| where <h0> is the centralizer in <h> of the normal cyclic part."""
    orders = [mult_order(getattr(spec, name), getattr(spec, mod)) for name, mod in _EXPONENTS[spec.family]]
    h0 = spec.h // math.lcm(*orders)
    return tau_order(spec.h, h0)


def formula_label(spec: FamilySpec, kind: str) -> str:
    f = spec.family
    if kind == "rotary":
        if f == "I":
            return "2φ(|h|)/|τ_{h₀}|" if _sylow2_dihedral_8plus(spec) else "φ(|h|)/|τ_{h₀}|"
        if f == "II":
            return "2φ(|h|)/|τ_{h₀}|"
        if f == "III":
            return "none (g_u, g_v ≠ 1)" if spec.g_u != 1 and spec.g_v != 1 else "2φ(|h|)/|τ_{h₀}|"
        if f == "IV":
            return "none (g ≠ 1)" if spec.g != 1 else NOT_COVERED
        return "φ(|h|)φ(|c|)/2|τ_{h³}||τ_{c₀}|"
    if f == "I":
        return "none (|h| ≥ 3)" if spec.h >= 3 else NOT_COVERED
    if f == "II":
        return "6·2^{e-2}" if spec.g == 1 and spec.h == 1 else "none (g or h ≠ 1)"
    if f == "III":
        if spec.g_u != 1 and spec.g_v != 1:
            return "none (g_u, g_v ≠ 1)"
        return "none (h ≠ 1)" if spec.h != 1 else NOT_COVERED
    if f == "IV":
        return "none (vertex-rotary only)"
    return "none (c ≠ 1)" if spec.c != 1 else NOT_COVERED


def predicted_class_count(spec: FamilySpec, kind: str):
    """Closed-form number of inequivalent pairs/triples, or NOT_COVERED."""
    if kind not in KINDS:
        raise InvalidParameter(f"kind must be one of {KINDS}")
    diags = validate_family_spec(spec)
    if diags:
        raise InvalidParameter("; ".join(map(str, diags)))
    label = formula_label(spec, kind)
    if label == NOT_COVERED:
        return NOT_COVERED
    if label.startswith("none"):
        return 0
    f = spec.family
    if kind == "reversing":  # type II, g = h = 1
        return 6 * 2 ** (spec.e - 2)
    if f in ("I", "II", "III"):
        factor = 2 if label.startswith("2") else 1
        return factor * totient(spec.h) // _h0_tau(spec)
    # type V
    c0 = spec.c // mult_order(spec.s, spec.g)
    value = Fraction(totient(spec.h) * totient(spec.c),
                     2 * tau_order(spec.h, spec.h // 3) * tau_order(spec.c, c0))
    return int(value) if value.denominator == 1 else value


def alternative_count(spec: FamilySpec, kind: str):
    """A competing closed form for type II reversing triples, 2^{e-1}."""
    if spec.family == "II" and kind == "reversing" and spec.g == 1 and spec.h == 1:
        return 2 ** (spec.e - 1), "2^{e-1}"
    return None


# ---------------------------------------------------------------------------
# stated representatives


class Representative(NamedTuple):
    item: tuple
    form: str
    params: dict


def _units(n: int) -> list[int]:
    return [i for i in range(n) if math.gcd(i, n) == 1] if n > 1 else [0]


def canonical_representatives(real: GroupRealization, kind: str,
                              opts: EnumOptions = DEFAULT_OPTIONS) -> list[Representative]:
    """The explicit tuples named for this family, keeping those that are
    valid generating pairs/triples.  Order follows the forms as listed."""
    if kind not in KINDS:
        raise InvalidParameter(f"kind must be one of {KINDS}")
    spec = real.spec
    gen = {
        ("I", "rotary"): _reps_I_rotary, ("I", "reversing"): _reps_I_reversing,
        ("II", "rotary"): _reps_II_rotary, ("II", "reversing"): _reps_II_reversing,
        ("III", "rotary"): _reps_III_rotary, ("III", "reversing"): _reps_III_reversing,
        ("IV", "rotary"): _reps_IV_rotary, ("IV", "reversing"): lambda r: [],
        ("V", "rotary"): _reps_V_rotary, ("V", "reversing"): _reps_V_reversing,
    }[(spec.family, kind)]
    G = real.group
    check = (lambda it: is_rotary_pair(G, *it, opts)) if kind == "rotary" \
        else (lambda it: is_reversing_triple(G, *it, opts))
    out, seen = [], set()
    for item, form, params in gen(real):
        item = tuple(int(t) for t in item)
        if item in seen:
            continue
        seen.add(item)
        if check(item):
            out.append(Representative(item, form, params))
    return out


def _reps_I_rotary(real):
    G, n = real.group, real.named
    g, h = n["g"], n["h"]
    m, hh = real.spec.g, real.spec.h
    P = G.power
    if hh == 2:
        for j in range(m):
            yield (g, G.prod(P(g, j), h)), "(g, g^j h)", {"j": j}
        yield (h, G.prod(g, h)), "(h, gh)", {}
        return
    z = P(h, hh // 2)
    for i in _units(hh):
        yield (G.prod(g, P(h, i)), z), "(g h^i, h^m)", {"i": i}
    for i in _units(hh):
        yield (G.prod(g, P(h, 2 * i)), z), "(g h^2i, h^m)", {"i": i}


def _reps_I_reversing(real):
    G, n = real.group, real.named
    g, h = n["g"], n["h"]
    m, hh = real.spec.g, real.spec.h
    if hh != 2:
        return
    P = G.power
    base = [h, G.prod(g, h)]
    for i in range(m):
        for perm in itertools.permutations(base + [G.prod(P(g, i), h)]):
            yield perm, "{h, gh, g^i h}", {"i": i}
    if m % 2 == 0:
        for perm in itertools.permutations(base + [P(g, m // 2)]):
            yield perm, "{h, gh, g^(m/2)}", {}


def _reps_II_reversing(real):
    G, n = real.group, real.named
    u, v, w, gv = n["u"], n["v"], n["w"], n["g_v"]
    order_w = 2 ** (real.spec.e - 1)
    for j in range(order_w):
        yield (u, G.prod(gv, G.power(w, 2 * j), v), v), "(u, g_v w^2j v, v)", {"j": j}
    if order_w == 2:
        yield (v, G.prod(gv, w), u), "(v, g_v w, u)", {}


def _reps_II_rotary(real):
    G, n = real.group, real.named
    g, gv, v, w, h = n["g"], n["g_v"], n["v"], n["w"], n["h"]
    for j in _units(real.spec.h):
        hj = G.power(h, j)
        yield (G.prod(g, gv, w, hj), v), "(g g_v w h^j, v)", {"j": j}
        yield (G.prod(g, gv, v, hj), v), "(g g_v v h^j, v)", {"j": j}


def _reps_III_reversing(real):
    G, n, spec = real.group, real.named, real.spec
    gu, gv, g, u, v, w = (n[k] for k in ("g_u", "g_v", "g", "u", "v", "w"))
    order_w = 2 ** (spec.e - 1)
    P = G.power
    pairs = [(k1, k2) for k1 in range(spec.g) for k2 in range(spec.g)
             if math.gcd(math.gcd(k1, k2), spec.g) == 1]
    for k1, k2 in pairs:
        for l1 in range(order_w):
            p = {"k1": k1, "k2": k2, "l1": l1}
            wl = P(w, l1)
            yield ((G.prod(gu, P(g, k1), wl, u), G.prod(P(g, k2), v), u),
                   "(g_u g^k1 w^l1 u, g^k2 v, u)", p)
            yield ((G.prod(P(g, k1), wl, u), G.prod(gv, P(g, k2), v), v),
                   "(g^k1 w^l1 u, g_v g^k2 v, v)", p)


def _reps_III_rotary(real):
    G, n = real.group, real.named
    gu, gv, g, u, v, w, h = (n[k] for k in ("g_u", "g_v", "g", "u", "v", "w", "h"))
    w2 = G.power(w, 2)
    for l in _units(real.spec.h):
        hl = G.power(h, l)
        p = {"l": l}
        yield (G.prod(gu, g, w, hl), u), "(g_u g w h^l, u)", p
        yield (G.prod(gu, g, w2, v, hl), u), "(g_u g w^2 v h^l, u)", p
        yield (G.prod(gu, g, w, hl), v), "(g_u g w h^l, v)", p
        yield (G.prod(gu, g, w2, u, hl), v), "(g_u g w^2 u h^l, v)", p
        yield (G.prod(gv, g, w, hl), v), "(g_v g w h^l, v)", p
        yield (G.prod(gv, g, w2, u, hl), v), "(g_v g w^2 u h^l, v)", p
        yield (G.prod(gv, g, w, hl), u), "(g_v g w h^l, u)", p
        yield (G.prod(gv, g, w2, v, hl), u), "(g_v g w^2 v h^l, u)", p


def _reps_IV_rotary(real):
    G, n = real.group, real.named
    for i in _units(real.spec.h):
        for zname in ("u", "v", "w"):
            yield (G.power(n["h"], i), n[zname]), f"(h^i, {zname})", {"i": i}


def _reps_V_rotary(real):
    G, n, spec = real.group, real.named, real.spec
    g, h, u, c = n["g"], n["h"], n["u"], n["c"]
    for tname in ("v", "w2"):
        t = n[tname]
        for j in range(spec.h):
            if j % 3 == 0:
                continue
            for k in _units(spec.c):
                hj, ck = G.power(h, j), G.power(c, k)
                p = {"t": tname, "j": j, "k": k}
                yield (G.prod(g, t, hj, ck), u), "(g t h^j c^k, u)", p
                yield (G.prod(g, t, hj, u, ck), u), "(g t h^j u c^k, u)", p


def _reps_V_reversing(real):
    G, n, spec = real.group, real.named, real.spec
    if spec.c != 1:
        return
    g, h, u, v, w2 = n["g"], n["h"], n["u"], n["v"], n["w2"]
    P = G.power
    klein = {"1": G.identity, "v": v, "w2": w2, "w2v": G.prod(w2, v)}
    gh = G.prod(g, h)
    for tname, t in klein.items():
        for i in _units(spec.g * spec.h):
            x = G.prod(t, P(gh, i), u)
            for t2name, t2 in klein.items():
                if t2name != "1":
                    yield (x, t2, u), "(t (gh)^i u, t', u)", {"t": tname, "i": i, "t'": t2name}
            for i2 in range(spec.g):
                for j0 in range(spec.h // 3):
                    y = G.prod(P(g, i2), P(h, 3 * j0), w2, u)
                    yield ((x, y, u), "(t (gh)^i u, g^i' h^3j0 w^2 u, u)",
                           {"t": tname, "i": i, "i'": i2, "j0": j0})
                for t2name, t2 in klein.items():
                    if tname == "1" and t2name == "1":
                        continue
                    for j2 in range(spec.h):
                        y = G.prod(P(g, i2), t2, P(h, j2), u)
                        yield ((x, y, u), "(t (gh)^i u, g^i' t' h^j' u, u)",
                               {"t": tname, "i": i, "i'": i2, "t'": t2name, "j'": j2})
