"""Finite crossed modules as table-driven values.

A crossed module here is a finite base group G, a finite fiber group E, a
boundary map E -> G, and a left action of G on E, subject to:

  * boundary is a group homomorphism,
  * the action is by automorphisms (unital, multiplicative in G, and a
    group homomorphism of E for each base element),
  * equivariance: boundary(g |> e) = g boundary(e) g^-1,
  * the conjugation identity: boundary(e) |> f = e f e^-1.

``validate_crossed_module`` checks all of this exhaustively and reports every
violating witness instead of raising.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import FormatError, XmodError
from .groups import FiniteGroup, find_identity, group_violations


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of an exhaustive axiom check; ``ok`` iff no violations."""

    violations: tuple[tuple[str, tuple], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class FiniteCrossedModule:
    base: FiniteGroup
    fiber: FiniteGroup
    boundary: tuple[int, ...]
    action: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        nG, nE = self.base.order, self.fiber.order
        if len(self.boundary) != nE:
            raise ValueError("boundary table length does not match fiber order")
        for value in self.boundary:
            if not 0 <= value < nG:
                raise ValueError(f"boundary entry {value} out of range 0..{nG - 1}")
        if len(self.action) != nG or any(len(row) != nE for row in self.action):
            raise ValueError("action table shape does not match base x fiber")
        for row in self.action:
            for value in row:
                if not 0 <= value < nE:
                    raise ValueError(f"action entry {value} out of range 0..{nE - 1}")

    def act(self, g: int, e: int) -> int:
        return self.action[g][e]

    def bdy(self, e: int) -> int:
        return self.boundary[e]


def validate_crossed_module(cm: FiniteCrossedModule) -> ValidationReport:
    """Exhaustive axiom check; never raises, collects every witness.

    Group axioms of base and fiber are checked first; if either table fails
    to be a group the dependent checks are skipped, since they have no
    meaning without identities and inverses.
    """
    out: list[tuple[str, tuple]] = []
    out.extend(group_violations(cm.base, "base."))
    out.extend(group_violations(cm.fiber, "fiber."))
    if out:
        return ValidationReport(tuple(out))

    base, fiber = cm.base, cm.fiber
    nG, nE = base.order, fiber.order
    bdy, act = cm.boundary, cm.action
    eG = base.identity

    for e in range(nE):
        for f in range(nE):
            if bdy[fiber.mul(e, f)] != base.mul(bdy[e], bdy[f]):
                out.append(("boundary.morphism", (e, f)))
    for e in range(nE):
        if act[eG][e] != e:
            out.append(("action.identity", (e,)))
    for g in range(nG):
        for h in range(nG):
            gh = base.mul(g, h)
            for e in range(nE):
                if act[gh][e] != act[g][act[h][e]]:
                    out.append(("action.composition", (g, h, e)))
    for g in range(nG):
        for e in range(nE):
            for f in range(nE):
                if act[g][fiber.mul(e, f)] != fiber.mul(act[g][e], act[g][f]):
                    out.append(("action.morphism", (g, e, f)))
    for g in range(nG):
        for e in range(nE):
            if bdy[act[g][e]] != base.mul(g, base.mul(bdy[e], base.inv(g))):
                out.append(("equivariance", (g, e)))
    for e in range(nE):
        for f in range(nE):
            lhs = act[bdy[e]][f]
            rhs = fiber.mul(e, fiber.mul(f, fiber.inv(e)))
            if lhs != rhs:
                out.append(("conjugation", (e, f)))
    return ValidationReport(tuple(out))


def boundary_fibers(cm: FiniteCrossedModule) -> tuple[tuple[int, ...], ...]:
    """For each base element g, the fiber elements whose boundary is g.

    The returned tuple is indexed by g; the per-g tuples partition the fiber.
    """
    out: list[list[int]] = [[] for _ in range(cm.base.order)]
    for e in range(cm.fiber.order):
        out[cm.boundary[e]].append(e)
    return tuple(tuple(block) for block in out)


def _checked(cm: FiniteCrossedModule, context: str) -> FiniteCrossedModule:
    report = validate_crossed_module(cm)
    if not report.ok:
        raise XmodError(f"{context} produced an invalid crossed module: "
                        f"{report.violations[0]}")
    return cm


def build_conjugation_crossed_module(group: FiniteGroup) -> FiniteCrossedModule:
    """G acting on itself by conjugation, with the identity map as boundary."""
    n = group.order
    boundary = tuple(range(n))
    action = tuple(
        tuple(group.mul(g, group.mul(e, group.inv(g))) for e in range(n))
        for g in range(n)
    )
    cm = FiniteCrossedModule(group, group, boundary, action)
    return _checked(cm, "build_conjugation_crossed_module")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def ga_index(coords: tuple[int, ...], p: int) -> int:
    """Index of a fiber element of a group-algebra module from its coordinates."""
    out = 0
    for i in reversed(range(len(coords))):
        out = out * p + coords[i]
    return out


def ga_coords(index: int, n: int, p: int) -> tuple[int, ...]:
    """Coordinates (one per base element, base-element order) of a fiber element."""
    out = []
    for _ in range(n):
        out.append(index % p)
        index //= p
    return tuple(out)


def build_group_algebra_crossed_module(
    group: FiniteGroup, p: int, max_fiber_order: int = 4096
) -> FiniteCrossedModule:
    """The group algebra of ``group`` over the p-element field, as a crossed module.

    The fiber is the additive group of functions group -> F_p (order p^|G|),
    the boundary is constant at the base identity, and the base acts by
    permuting coordinates through left translation.  Coordinate i of a fiber
    element is the coefficient of base element i; fiber element indices pack
    the coordinates in base p, least significant coordinate first, so the
    basis vector at base element k has index p**k.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    n = group.order
    q = p**n
    if q > max_fiber_order:
        raise ValueError(
            f"fiber order {p}^{n} exceeds the configured bound {max_fiber_order}"
        )
    coords_of = [ga_coords(i, n, p) for i in range(q)]
    fiber_product = tuple(
        tuple(
            ga_index(tuple((a + b) % p for a, b in zip(coords_of[i], coords_of[j])), p)
            for j in range(q)
        )
        for i in range(q)
    )
    fiber_names = tuple("".join(str(c) for c in coords_of[i]) for i in range(q))
    fiber = FiniteGroup(q, fiber_product, fiber_names)
    boundary = (group.identity,) * q
    action = []
    for g in range(n):
        row = []
        for e in range(q):
            coords = coords_of[e]
            moved = [0] * n
            for y in range(n):
                moved[group.mul(g, y)] = coords[y]
            row.append(ga_index(tuple(moved), p))
        action.append(tuple(row))
    cm = FiniteCrossedModule(group, fiber, boundary, tuple(action))
    return _checked(cm, "build_group_algebra_crossed_module")


# ---------------------------------------------------------------------------
# Text format
#
#   xmod v1
#   base <order>       followed by <order> rows of <order> indices
#   fiber <order>      followed by <order> rows of <order> indices
#   boundary           followed by one row of <fiber order> base indices
#   action             followed by <base order> rows of <fiber order> indices
#
# '#' starts a comment; blank lines are ignored.  Any shape mismatch is an
# error naming the line and the field.
# ---------------------------------------------------------------------------


class _Lines:
    def __init__(self, text: str):
        self.items: list[tuple[int, str]] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            content = raw.split("#", 1)[0].strip()
            if content:
                self.items.append((lineno, content))
        self.pos = 0
        self.last_line = len(text.splitlines())

    def next(self, field: str) -> tuple[int, str]:
        if self.pos >= len(self.items):
            raise FormatError("unexpected end of input", line=self.last_line, field=field)
        item = self.items[self.pos]
        self.pos += 1
        return item

    @property
    def exhausted(self) -> bool:
        return self.pos >= len(self.items)


def _parse_row(line: str, lineno: int, field: str, width: int, bound: int) -> tuple[int, ...]:
    tokens = line.split()
    values = []
    for token in tokens:
        try:
            values.append(int(token))
        except ValueError:
            raise FormatError(f"expected an integer, got {token!r}",
                              line=lineno, field=field) from None
    if len(values) != width:
        raise FormatError(f"expected {width} entries, got {len(values)}",
                          line=lineno, field=field)
    for value in values:
        if not 0 <= value < bound:
            raise FormatError(f"index {value} out of range 0..{bound - 1}",
                              line=lineno, field=field)
    return tuple(values)


def _parse_table(lines: _Lines, field: str, rows: int, width: int, bound: int):
    out = []
    for _ in range(rows):
        lineno, content = lines.next(field)
        out.append(_parse_row(content, lineno, field, width, bound))
    return tuple(out)


def parse_crossed_module_text(text: str) -> FiniteCrossedModule:
    """Parse the crossed-module text format.  Strict; does not check axioms."""
    lines = _Lines(text)

    lineno, header = lines.next("header")
    if header != "xmod v1":
        raise FormatError(f"expected 'xmod v1' header, got {header!r}",
                          line=lineno, field="header")

    def section(keyword: str, with_order: bool) -> int:
        lineno, content = lines.next(keyword)
        tokens = content.split()
        if not tokens or tokens[0] != keyword:
            raise FormatError(f"expected '{keyword}' section, got {content!r}",
                              line=lineno, field=keyword)
        if with_order:
            if len(tokens) != 2:
                raise FormatError(f"expected '{keyword} <order>'",
                                  line=lineno, field=keyword)
            try:
                order = int(tokens[1])
            except ValueError:
                raise FormatError(f"bad order {tokens[1]!r}",
                                  line=lineno, field=keyword) from None
            if order < 1:
                raise FormatError("order must be positive", line=lineno, field=keyword)
            return order
        if len(tokens) != 1:
            raise FormatError(f"'{keyword}' takes no arguments",
                              line=lineno, field=keyword)
        return 0

    base_order = section("base", with_order=True)
    base = FiniteGroup(base_order, _parse_table(lines, "base", base_order,
                                                base_order, base_order))
    fiber_order = section("fiber", with_order=True)
    fiber = FiniteGroup(fiber_order, _parse_table(lines, "fiber", fiber_order,
                                                  fiber_order, fiber_order))
    section("boundary", with_order=False)
    (boundary,) = _parse_table(lines, "boundary", 1, fiber_order, base_order)
    section("action", with_order=False)
    action = _parse_table(lines, "action", base_order, fiber_order, fiber_order)
    if not lines.exhausted:
        lineno, content = lines.next("trailer")
        raise FormatError(f"unexpected trailing content {content!r}",
                          line=lineno, field="trailer")
    return FiniteCrossedModule(base, fiber, boundary, action)


def format_crossed_module_text(cm: FiniteCrossedModule) -> str:
    out = ["xmod v1"]
    out.append(f"base {cm.base.order}")
    out.extend(" ".join(str(v) for v in row) for row in cm.base.product)
    out.append(f"fiber {cm.fiber.order}")
    out.extend(" ".join(str(v) for v in row) for row in cm.fiber.product)
    out.append("boundary")
    out.append(" ".join(str(v) for v in cm.boundary))
    out.append("action")
    out.extend(" ".join(str(v) for v in row) for row in cm.action)
    return "\n".join(out) + "\n"
