"""Counting crossed-module homomorphisms and the resulting invariant.

A homomorphism from a presented free crossed module into a finite crossed
module is determined by a base assignment phi (generator -> base element)
and a cell assignment psi (cell -> fiber element) such that

  * the boundary of psi(cell) equals phi evaluated on the cell's boundary
    word, and
  * every relation, evaluated as a product of (phi(conjugator) acting on
    psi(cell)) to its sign, is the fiber identity.

The invariant of a complement with b1 one-handles is the exact rational
count / (#fiber)**b1.  Three engines are provided: a pruned backtracking
search (the default), a naive full-product oracle, and a linear-algebra
fast path for targets with identity boundary and elementary abelian fiber.
All arithmetic is exact; counts are arbitrary-precision integers.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .crossed import FiniteCrossedModule, boundary_fibers
from .errors import (
    EvaluationError,
    FastPathUnavailable,
    InvalidPresentationError,
    NaiveCapExceeded,
    WorkCapExceeded,
)
from .presentations import (
    CrossedPresentation,
    CrossedWord,
    validate_presentation,
)
from .words import FreeWord

DEFAULT_WORK_CAP = 10**9

METHOD_BACKTRACKING = "backtracking"
METHOD_NAIVE = "naive"
METHOD_LINEAR = "linear"
METHODS = (METHOD_BACKTRACKING, METHOD_NAIVE, METHOD_LINEAR)


@dataclass(frozen=True)
class Assignment:
    """A (partial) homomorphism candidate: phi on generators, psi on cells."""

    phi: dict[str, int]
    psi: dict[str, int]


@dataclass(frozen=True)
class CountReport:
    count: int
    one_handles: int
    invariant: Fraction
    method: str


def evaluate_free_word(
    word: FreeWord, assignment: Assignment, cm: FiniteCrossedModule
) -> int:
    """Evaluate a base word under phi; returns a base element index."""
    base = cm.base
    out = base.identity
    for gen, sign in word.letters:
        try:
            value = assignment.phi[gen]
        except KeyError:
            raise EvaluationError(f"generator {gen!r} is unassigned") from None
        out = base.mul(out, value if sign > 0 else base.inv(value))
    return out


def evaluate_crossed_word(
    crossed: CrossedWord, assignment: Assignment, cm: FiniteCrossedModule
) -> int:
    """Evaluate a crossed word under (phi, psi); returns a fiber element index."""
    fiber = cm.fiber
    out = fiber.identity
    for conjugator, cell, sign in crossed.terms:
        try:
            value = assignment.psi[cell]
        except KeyError:
            raise EvaluationError(f"cell {cell!r} is unassigned") from None
        moved = cm.act(evaluate_free_word(conjugator, assignment, cm), value)
        out = fiber.mul(out, moved if sign > 0 else fiber.inv(moved))
    return out


class _Budget:
    """Mutable elementary-step counter shared across one counting run."""

    __slots__ = ("steps", "cap")

    def __init__(self, cap: int):
        self.steps = 0
        self.cap = cap

    def spend(self, amount: int = 1) -> None:
        self.steps += amount
        if self.steps > self.cap:
            raise WorkCapExceeded(
                f"work cap of {self.cap} elementary steps exceeded"
            )


def _require_valid(pres: CrossedPresentation) -> None:
    report = validate_presentation(pres)
    if not report.ok:
        raise InvalidPresentationError(
            f"presentation is invalid: {report.violations[0]}"
        )


def _compile_word(word: FreeWord, position: dict[str, int]) -> tuple[tuple[int, int], ...]:
    return tuple((position[gen], sign) for gen, sign in word.letters)


def _eval_compiled(compiled, phi_tuple, base) -> int:
    out = base.identity
    for pos, sign in compiled:
        value = phi_tuple[pos]
        out = base.mul(out, value if sign > 0 else base.inv(value))
    return out


def count_homomorphisms(
    pres: CrossedPresentation,
    cm: FiniteCrossedModule,
    *,
    work_cap: int = DEFAULT_WORK_CAP,
    partition: int | None = None,
) -> int:
    """Count homomorphisms by backtracking over cells within each phi.

    Base generators are assigned in declaration order, then cells in
    declaration order; each cell's candidates are the fiber elements over
    phi of its boundary word, and a relation is checked as soon as its last
    cell is assigned.  ``partition`` fixes the value of the first base
    generator, so summing over all partitions reproduces the full count.
    """
    _require_valid(pres)
    base, fiber = cm.base, cm.fiber
    gens, cells = pres.generators, pres.cells
    gen_pos = {g: i for i, g in enumerate(gens)}
    cell_pos = {c: i for i, c in enumerate(cells)}
    fibers = boundary_fibers(cm)
    budget = _Budget(work_cap)

    bnd_words = [_compile_word(pres.cell_boundary[c], gen_pos) for c in cells]
    # Relation r becomes (terms, depth): terms are (compiled conjugator,
    # cell position, sign); depth is the last cell position it mentions.
    relations = []
    for relation in pres.relations:
        if not relation.terms:
            continue
        terms = tuple(
            (_compile_word(w, gen_pos), cell_pos[cell], sign)
            for w, cell, sign in relation.terms
        )
        depth = max(pos for _, pos, _ in terms)
        relations.append((terms, depth))
    by_depth: list[list[tuple]] = [[] for _ in cells]
    for terms, depth in relations:
        by_depth[depth].append(terms)
    # First depth at or beyond which no relation can still fire; unconstrained
    # suffixes contribute a plain product of candidate counts.
    free_tail = 0
    for depth in range(len(cells)):
        if by_depth[depth]:
            free_tail = depth + 1

    if partition is not None:
        if not gens:
            raise ValueError("cannot partition a presentation with no generators")
        if not 0 <= partition < base.order:
            raise ValueError(f"partition value {partition} out of range")
        phi_space = (
            (partition,) + rest
            for rest in product(base.elements, repeat=len(gens) - 1)
        )
    else:
        phi_space = product(base.elements, repeat=len(gens))

    total = 0
    psi = [0] * len(cells)
    for phi_tuple in phi_space:
        budget.spend(1 + len(gens))
        candidates = []
        empty = False
        for compiled in bnd_words:
            target = _eval_compiled(compiled, phi_tuple, base)
            block = fibers[target]
            if not block:
                empty = True
                break
            candidates.append(block)
        if empty:
            continue
        # Evaluate each relation's conjugators and action rows once per phi.
        checks: list[list[tuple]] = [[] for _ in cells]
        for depth, terms_list in enumerate(by_depth):
            for terms in terms_list:
                prepared = tuple(
                    (cm.action[_eval_compiled(w, phi_tuple, base)], pos, sign)
                    for w, pos, sign in terms
                )
                checks[depth].append(prepared)

        def descend(depth: int) -> int:
            if depth >= free_tail:
                out = 1
                for block in candidates[depth:]:
                    out *= len(block)
                return out
            subtotal = 0
            for value in candidates[depth]:
                budget.spend()
                psi[depth] = value
                ok = True
                for prepared in checks[depth]:
                    budget.spend(len(prepared))
                    acc = fiber.identity
                    for action_row, pos, sign in prepared:
                        moved = action_row[psi[pos]]
                        acc = fiber.mul(acc, moved if sign > 0 else fiber.inv(moved))
                    if acc != fiber.identity:
                        ok = False
                        break
                if ok:
                    subtotal += descend(depth + 1)
            return subtotal

        total += descend(0)
    return total


def count_homomorphisms_naive(
    pres: CrossedPresentation,
    cm: FiniteCrossedModule,
    *,
    work_cap: int = DEFAULT_WORK_CAP,
) -> int:
    """Reference oracle: enumerate every (phi, psi) pair with no pruning.

    The full product space must fit under the cap, otherwise a
    ``NaiveCapExceeded`` is raised up front.
    """
    _require_valid(pres)
    base, fiber = cm.base, cm.fiber
    gens, cells = pres.generators, pres.cells
    space = base.order ** len(gens) * fiber.order ** len(cells)
    if space > work_cap:
        raise NaiveCapExceeded(
            f"naive enumeration space {space} exceeds the cap {work_cap}"
        )
    total = 0
    for phi_tuple in product(base.elements, repeat=len(gens)):
        phi = dict(zip(gens, phi_tuple))
        for psi_tuple in product(fiber.elements, repeat=len(cells)):
            assignment = Assignment(phi, dict(zip(cells, psi_tuple)))
            ok = True
            for cell, value in zip(cells, psi_tuple):
                want = evaluate_free_word(pres.cell_boundary[cell], assignment, cm)
                if cm.boundary[value] != want:
                    ok = False
                    break
            if not ok:
                continue
            for relation in pres.relations:
                if evaluate_crossed_word(relation, assignment, cm) != fiber.identity:
                    ok = False
                    break
            if ok:
                total += 1
    return total


def _elementary_abelian_shape(
    cm: FiniteCrossedModule,
) -> tuple[int, list[int], dict[int, tuple[int, ...]]]:
    """Return (p, basis, coordinates) for an elementary abelian fiber, or raise."""
    fiber = cm.fiber
    n = fiber.order
    if n == 1:
        return 2, [], {fiber.identity: ()}
    for e in range(n):
        for f in range(e + 1, n):
            if fiber.mul(e, f) != fiber.mul(f, e):
                raise FastPathUnavailable("fiber is not abelian")
    orders = []
    for e in range(n):
        k, x = 1, e
        while x != fiber.identity:
            x = fiber.mul(x, e)
            k += 1
        orders.append(k)
    nontrivial = sorted(set(orders) - {1})
    if len(nontrivial) != 1 or not _is_prime_int(nontrivial[0]):
        raise FastPathUnavailable("fiber is not elementary abelian")
    p = nontrivial[0]

    basis: list[int] = []
    coords: dict[int, tuple[int, ...]] = {fiber.identity: ()}
    for e in range(n):
        if e in coords:
            continue
        # e is outside the current span; extend every known element by powers
        # of the new basis vector.
        basis.append(e)
        extended = {}
        for known, vec in coords.items():
            x = known
            for j in range(p):
                extended[x] = vec + (j,)
                x = fiber.mul(x, e)
        coords = extended
    d = len(basis)
    if p**d != n:
        raise FastPathUnavailable("fiber span does not exhaust the fiber")
    # Pad early coordinates so every vector has full length d.
    full = {e: vec + (0,) * (d - len(vec)) for e, vec in coords.items()}
    return p, basis, full


def _is_prime_int(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def fastpath_applicable(cm: FiniteCrossedModule) -> bool:
    """True iff the linear fast path's preconditions hold for this target."""
    identity = cm.base.identity
    if any(value != identity for value in cm.boundary):
        return False
    try:
        _elementary_abelian_shape(cm)
    except FastPathUnavailable:
        return False
    return True


def count_linear_fastpath(
    pres: CrossedPresentation,
    cm: FiniteCrossedModule,
    *,
    work_cap: int = DEFAULT_WORK_CAP,
) -> int:
    """Linear-algebra count for identity boundary and elementary abelian fiber.

    For each phi, cells whose boundary word evaluates away from the base
    identity contribute nothing; otherwise each relation is one block of
    F_p-linear equations in the cell coordinates (column order: cell in
    declaration order, then basis vector), and the phi contributes
    p**(unknowns - rank) by Gaussian elimination.
    """
    _require_valid(pres)
    base = cm.base
    identity = base.identity
    if any(value != identity for value in cm.boundary):
        raise FastPathUnavailable("boundary is not constantly the base identity")
    p, basis, coords = _elementary_abelian_shape(cm)
    d = len(basis)
    budget = _Budget(work_cap)

    gens, cells = pres.generators, pres.cells
    gen_pos = {g: i for i, g in enumerate(gens)}
    cell_pos = {c: i for i, c in enumerate(cells)}
    bnd_words = [_compile_word(pres.cell_boundary[c], gen_pos) for c in cells]
    relations = [
        tuple(
            (_compile_word(w, gen_pos), cell_pos[cell], sign)
            for w, cell, sign in relation.terms
        )
        for relation in pres.relations
    ]

    # Action of g as a d x d matrix over F_p, columns indexed by basis vectors.
    matrices = []
    for g in base.elements:
        cols = [coords[cm.act(g, b)] for b in basis]
        matrices.append([[cols[j][i] for j in range(d)] for i in range(d)])

    unknowns = len(cells) * d
    total = 0
    for phi_tuple in product(base.elements, repeat=len(gens)):
        budget.spend(1 + len(gens))
        if any(
            _eval_compiled(compiled, phi_tuple, base) != identity
            for compiled in bnd_words
        ):
            continue
        rows: list[list[int]] = []
        for terms in relations:
            block = [[0] * unknowns for _ in range(d)]
            for w, pos, sign in terms:
                g = _eval_compiled(w, phi_tuple, base)
                matrix = matrices[g]
                offset = pos * d
                scale = 1 if sign > 0 else p - 1
                for i in range(d):
                    row = block[i]
                    source = matrix[i]
                    for j in range(d):
                        row[offset + j] = (row[offset + j] + scale * source[j]) % p
            rows.extend(block)
            budget.spend(d * max(1, len(terms)))
        rank = _rank_mod_p(rows, p, budget)
        total += p ** (unknowns - rank)
    return total


def _rank_mod_p(rows: list[list[int]], p: int, budget: _Budget) -> int:
    if not rows:
        return 0
    width = len(rows[0])
    rank = 0
    col = 0
    while col < width and rank < len(rows):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(value * inv) % p for value in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [
                    (a - factor * b) % p for a, b in zip(rows[r], rows[rank])
                ]
        budget.spend(len(rows))
        rank += 1
        col += 1
    return rank


def select_method(
    pres: CrossedPresentation, cm: FiniteCrossedModule, requested: str = "auto"
) -> str:
    """Resolve 'auto' to the linear fast path when applicable, else backtracking."""
    if requested == "auto":
        return METHOD_LINEAR if fastpath_applicable(cm) else METHOD_BACKTRACKING
    if requested not in METHODS:
        raise ValueError(f"unknown method {requested!r}")
    return requested


def count_with_method(
    pres: CrossedPresentation,
    cm: FiniteCrossedModule,
    method: str = "auto",
    *,
    work_cap: int = DEFAULT_WORK_CAP,
) -> tuple[int, str]:
    resolved = select_method(pres, cm, method)
    if resolved == METHOD_NAIVE:
        return count_homomorphisms_naive(pres, cm, work_cap=work_cap), resolved
    if resolved == METHOD_LINEAR:
        return count_linear_fastpath(pres, cm, work_cap=work_cap), resolved
    return count_homomorphisms(pres, cm, work_cap=work_cap), resolved


def invariant(
    pres: CrossedPresentation,
    cm: FiniteCrossedModule,
    one_handles: int,
    *,
    method: str = "auto",
    work_cap: int = DEFAULT_WORK_CAP,
) -> Fraction:
    """The exact rational count / (#fiber)**one_handles."""
    if one_handles < 0:
        raise ValueError("one_handles must be nonnegative")
    count, _ = count_with_method(pres, cm, method, work_cap=work_cap)
    return Fraction(count, cm.fiber.order**one_handles)


def count_report(
    pres: CrossedPresentation,
    cm: FiniteCrossedModule,
    one_handles: int,
    method: str = "auto",
    *,
    work_cap: int = DEFAULT_WORK_CAP,
) -> CountReport:
    if one_handles < 0:
        raise ValueError("one_handles must be nonnegative")
    count, resolved = count_with_method(pres, cm, method, work_cap=work_cap)
    value = Fraction(count, cm.fiber.order**one_handles)
    return CountReport(count, one_handles, value, resolved)


def format_count_report(report: CountReport, elapsed_ms: int) -> str:
    return (
        f"count {report.count}\n"
        f"one_handles {report.one_handles}\n"
        f"invariant {report.invariant.numerator}/{report.invariant.denominator}\n"
        f"method {report.method}\n"
        f"elapsed_ms {elapsed_ms}\n"
    )


def timed_count_report(
    pres: CrossedPresentation,
    cm: FiniteCrossedModule,
    one_handles: int,
    method: str = "auto",
    *,
    work_cap: int = DEFAULT_WORK_CAP,
) -> tuple[CountReport, int]:
    start = time.perf_counter()
    report = count_report(pres, cm, one_handles, method, work_cap=work_cap)
    elapsed_ms = round((time.perf_counter() - start) * 1000)
    return report, elapsed_ms
