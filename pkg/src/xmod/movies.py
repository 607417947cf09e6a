"""Movie scripts for knotted surfaces and their compilation to presentations.

A movie is replayed as a sequence of labelled-diagram events:

  * ``birth`` introduces a circle (one arc) and a fresh base generator
    named after the arc,
  * ``cross`` relabels across a strand/strand crossing (Wirtinger rule),
  * ``sb`` and ``bb`` apply the strand/band and band/band crossing rules,
  * ``saddle`` attaches a 2-handle: it consumes two arc ends, emits a cell
    whose boundary word is read off the two labels, and leaves a band
    labelled by that cell,
  * ``death`` caps a circle with a disk: it removes the listed arcs and
    emits one relation, the signed product of the conjugated labels of the
    bands its spanning disk meets,
  * ``end`` closes the script.

Replay tracks labels only.  It checks id liveness and that every emitted
relation has trivial boundary, but it does not verify that a script is
geometrically realizable; the script is trusted as a description of a
surface.

Crossing rule ids for ``sb`` and ``bb`` (the strand or band moving below
is relabelled; x is the strand label, b the band's boundary word, F the
fixed band's label, M the mover's):

  1  strand under band, positive:   x -> b x b^-1      (sb, needs out=)
  2  band under band, positive:     M -> F M F^-1      (bb)
  3  strand under band, negative:   x -> b^-1 x b      (sb, needs out=)
  4  band under strand, negative:   M -> x^-1 |> M     (sb)
  5  band under band, negative:     M -> F^-1 M F      (bb)
  6  band under strand, positive:   M -> x |> M        (sb)
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from .errors import MovieParseError, ReplayError, XmodError
from .presentations import (
    CrossedPresentation,
    CrossedWord,
    boundary_of_crossed_word,
    validate_presentation,
)
from .words import EMPTY_WORD, FreeWord, parse_word, valid_name

ArcRef = tuple[str, int]  # (arc id, +1 or -1 for a reversed reading)
SpannerTerm = tuple[str, FreeWord, int]  # (band id, conjugator, sign)


@dataclass(frozen=True)
class Birth:
    arc: str
    line: int


@dataclass(frozen=True)
class WirtingerCross:
    sign: int
    over: str
    under_in: str
    under_out: str
    line: int


@dataclass(frozen=True)
class StrandBandCross:
    rule: int
    band: str
    strand: str
    out: str | None
    line: int


@dataclass(frozen=True)
class BandBandCross:
    rule: int
    mover: str
    fixed: str
    line: int


@dataclass(frozen=True)
class SaddleEvent:
    cell: str
    u: ArcRef
    v: ArcRef
    band: str
    merged: tuple[str, ...]
    line: int


@dataclass(frozen=True)
class DeathEvent:
    circle: tuple[str, ...]
    spanner: tuple[SpannerTerm, ...]
    line: int


@dataclass(frozen=True)
class EndEvent:
    line: int


Event = Birth | WirtingerCross | StrandBandCross | BandBandCross | SaddleEvent | DeathEvent | EndEvent


@dataclass(frozen=True)
class MovieScript:
    name: str
    events: tuple[Event, ...]


@dataclass(frozen=True)
class DiagramState:
    """Labels of the current diagram plus everything emitted so far."""

    arcs: dict[str, FreeWord] = field(default_factory=dict)
    bands: dict[str, tuple[CrossedWord, str]] = field(default_factory=dict)
    births: int = 0
    generators: tuple[str, ...] = ()
    cells: tuple[str, ...] = ()
    cell_boundary: dict[str, FreeWord] = field(default_factory=dict)
    relations: tuple[CrossedWord, ...] = ()
    finished: bool = False

    def __post_init__(self):
        object.__setattr__(self, "arcs", dict(self.arcs))
        object.__setattr__(self, "bands", dict(self.bands))
        object.__setattr__(self, "cell_boundary", dict(self.cell_boundary))


@dataclass(frozen=True)
class CompiledComplement:
    presentation: CrossedPresentation
    one_handles: int


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_SPANNER_RE = re.compile(r"spanner=\[(.*)\]\Z")


def _parse_sign(token: str, line: int) -> int:
    if token in ("+", "+1"):
        return 1
    if token in ("-", "-1"):
        return -1
    raise MovieParseError(f"bad sign {token!r}", line=line)


def _parse_name(token: str, line: int, what: str) -> str:
    if not valid_name(token):
        raise MovieParseError(f"bad {what} id {token!r}", line=line)
    return token


def _parse_arc_ref(token: str, line: int) -> ArcRef:
    base, caret, exp = token.partition("^")
    name = _parse_name(base, line, "arc")
    if not caret:
        return (name, 1)
    if exp != "-1":
        raise MovieParseError(
            f"arc reference exponent must be -1, got {token!r}", line=line
        )
    return (name, -1)


def _keyed(tokens: list[str], line: int, required: tuple[str, ...],
           optional: tuple[str, ...] = ()) -> dict[str, str]:
    out: dict[str, str] = {}
    for token in tokens:
        key, eq, value = token.partition("=")
        if not eq or key not in required + optional:
            raise MovieParseError(f"unexpected argument {token!r}", line=line)
        if key in out:
            raise MovieParseError(f"duplicate argument {key!r}", line=line)
        out[key] = value
    for key in required:
        if key not in out:
            raise MovieParseError(f"missing argument {key}=", line=line)
    return out


def _parse_spanner(text: str, line: int) -> tuple[SpannerTerm, ...]:
    body = text.strip()
    if not body:
        return ()
    terms = []
    for chunk in body.split(";"):
        chunk = chunk.strip()
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise MovieParseError(
                f"spanner term must be (band,word,sign), got {chunk!r}", line=line
            )
        parts = chunk[1:-1].split(",")
        if len(parts) != 3:
            raise MovieParseError(
                f"spanner term must have 3 fields, got {chunk!r}", line=line
            )
        band = _parse_name(parts[0].strip(), line, "band")
        word = parse_word(parts[1], line=line, field="spanner")
        sign = _parse_sign(parts[2].strip(), line)
        terms.append((band, word, sign))
    return tuple(terms)


def parse_movie_script(text: str, name: str = "movie") -> MovieScript:
    """Parse the movie DSL.  Syntax only; ids are resolved during replay."""
    events: list[Event] = []
    saw_end = False
    for line, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        if saw_end:
            raise MovieParseError("content after 'end'", line=line)
        tokens = content.split()
        keyword = tokens[0]
        if keyword == "birth":
            if len(tokens) != 2:
                raise MovieParseError("birth takes exactly one arc id", line=line)
            events.append(Birth(_parse_name(tokens[1], line, "arc"), line))
        elif keyword == "cross":
            if len(tokens) != 5:
                raise MovieParseError(
                    "cross takes a sign and over=, in=, out=", line=line
                )
            sign = _parse_sign(tokens[1], line)
            args = _keyed(tokens[2:], line, ("over", "in", "out"))
            events.append(
                WirtingerCross(
                    sign,
                    _parse_name(args["over"], line, "arc"),
                    _parse_name(args["in"], line, "arc"),
                    _parse_name(args["out"], line, "arc"),
                    line,
                )
            )
        elif keyword == "sb":
            if len(tokens) < 2:
                raise MovieParseError("sb takes a rule id", line=line)
            try:
                rule = int(tokens[1])
            except ValueError:
                raise MovieParseError(f"bad rule id {tokens[1]!r}", line=line) from None
            if rule in (1, 3):
                args = _keyed(tokens[2:], line, ("band", "strand", "out"))
                out = _parse_name(args["out"], line, "arc")
            elif rule in (4, 6):
                args = _keyed(tokens[2:], line, ("band", "strand"))
                out = None
            elif rule in (2, 5):
                raise MovieParseError(
                    f"rule {rule} is a band/band rule; use bb", line=line
                )
            else:
                raise MovieParseError(f"unknown sb rule {rule}", line=line)
            events.append(
                StrandBandCross(
                    rule,
                    _parse_name(args["band"], line, "band"),
                    _parse_name(args["strand"], line, "arc"),
                    out,
                    line,
                )
            )
        elif keyword == "bb":
            if len(tokens) < 2:
                raise MovieParseError("bb takes a rule id", line=line)
            try:
                rule = int(tokens[1])
            except ValueError:
                raise MovieParseError(f"bad rule id {tokens[1]!r}", line=line) from None
            if rule in (1, 3, 4, 6):
                raise MovieParseError(
                    f"rule {rule} is a strand/band rule; use sb", line=line
                )
            if rule not in (2, 5):
                raise MovieParseError(f"unknown bb rule {rule}", line=line)
            args = _keyed(tokens[2:], line, ("mover", "fixed"))
            events.append(
                BandBandCross(
                    rule,
                    _parse_name(args["mover"], line, "band"),
                    _parse_name(args["fixed"], line, "band"),
                    line,
                )
            )
        elif keyword == "saddle":
            args = _keyed(tokens[1:], line, ("cell", "u", "v", "band", "merged"))
            merged = tuple(
                _parse_name(part, line, "arc")
                for part in args["merged"].split(",")
                if part
            )
            if not 1 <= len(merged) <= 2:
                raise MovieParseError(
                    "merged= must list one or two fresh arcs", line=line
                )
            events.append(
                SaddleEvent(
                    _parse_name(args["cell"], line, "cell"),
                    _parse_arc_ref(args["u"], line),
                    _parse_arc_ref(args["v"], line),
                    _parse_name(args["band"], line, "band"),
                    merged,
                    line,
                )
            )
        elif keyword == "death":
            match = _SPANNER_RE.search(content)
            if match is None:
                raise MovieParseError("death needs spanner=[...]", line=line)
            spanner = _parse_spanner(match.group(1), line)
            head = content[: match.start()].strip()
            head_tokens = head.split()
            if len(head_tokens) != 2 or head_tokens[0] != "death":
                raise MovieParseError(
                    "death takes circle=<arcs> and spanner=[...]", line=line
                )
            key, eq, value = head_tokens[1].partition("=")
            if key != "circle" or not eq or not value:
                raise MovieParseError("death needs circle=<arc,...>", line=line)
            circle = tuple(
                _parse_name(part, line, "arc") for part in value.split(",") if part
            )
            if not circle:
                raise MovieParseError("death circle is empty", line=line)
            events.append(DeathEvent(circle, spanner, line))
        elif keyword == "end":
            if len(tokens) != 1:
                raise MovieParseError("end takes no arguments", line=line)
            events.append(EndEvent(line))
            saw_end = True
        else:
            raise MovieParseError(f"unknown event {keyword!r}", line=line)
    if not saw_end:
        last = len(text.splitlines())
        raise MovieParseError("missing 'end' event", line=max(last, 1))
    return MovieScript(name, tuple(events))


# ---------------------------------------------------------------------------
# Replay
# ---------------------------------------------------------------------------


def _live_arc(state: DiagramState, arc: str) -> FreeWord:
    try:
        return state.arcs[arc]
    except KeyError:
        raise XmodError(f"arc {arc!r} is not live") from None


def _live_band(state: DiagramState, band: str) -> tuple[CrossedWord, str]:
    try:
        return state.bands[band]
    except KeyError:
        raise XmodError(f"band {band!r} is not live") from None


def _band_boundary(state: DiagramState, label: CrossedWord) -> FreeWord:
    helper = CrossedPresentation(
        state.generators, state.cells, state.cell_boundary
    )
    return boundary_of_crossed_word(helper, label)


def apply_event(state: DiagramState, event: Event) -> DiagramState:
    """Apply one event to a diagram state; pure, returns a new state."""
    if state.finished:
        raise XmodError("script already ended")
    if isinstance(event, Birth):
        if event.arc in state.generators:
            raise XmodError(f"generator {event.arc!r} already exists")
        if event.arc in state.arcs:
            raise XmodError(f"arc {event.arc!r} is already live")
        arcs = dict(state.arcs)
        arcs[event.arc] = FreeWord(((event.arc, 1),))
        return replace(
            state,
            arcs=arcs,
            births=state.births + 1,
            generators=state.generators + (event.arc,),
        )
    if isinstance(event, WirtingerCross):
        over = _live_arc(state, event.over)
        into = _live_arc(state, event.under_in)
        if event.under_out in state.arcs:
            raise XmodError(f"arc {event.under_out!r} is already live")
        if event.sign > 0:
            label = over.inverse() * into * over
        else:
            label = over * into * over.inverse()
        arcs = dict(state.arcs)
        arcs[event.under_out] = label
        return replace(state, arcs=arcs)
    if isinstance(event, StrandBandCross):
        band_label, owner = _live_band(state, event.band)
        strand = _live_arc(state, event.strand)
        if event.rule in (1, 3):
            if event.out in state.arcs:
                raise XmodError(f"arc {event.out!r} is already live")
            b = _band_boundary(state, band_label)
            if event.rule == 1:
                label = b * strand * b.inverse()
            else:
                label = b.inverse() * strand * b
            arcs = dict(state.arcs)
            arcs[event.out] = label
            return replace(state, arcs=arcs)
        mover = strand if event.rule == 6 else strand.inverse()
        bands = dict(state.bands)
        bands[event.band] = (band_label.act(mover), owner)
        return replace(state, bands=bands)
    if isinstance(event, BandBandCross):
        mover_label, owner = _live_band(state, event.mover)
        fixed_label, _ = _live_band(state, event.fixed)
        if event.mover == event.fixed:
            raise XmodError("a band cannot cross itself")
        if event.rule == 2:
            moved = fixed_label * mover_label * fixed_label.inverse()
        else:
            moved = fixed_label.inverse() * mover_label * fixed_label
        bands = dict(state.bands)
        bands[event.mover] = (moved, owner)
        return replace(state, bands=bands)
    if isinstance(event, SaddleEvent):
        u_label = _live_arc(state, event.u[0])
        v_label = _live_arc(state, event.v[0])
        if event.cell in state.cells:
            raise XmodError(f"cell {event.cell!r} already exists")
        if event.cell in state.generators:
            raise XmodError(f"cell id {event.cell!r} collides with a generator")
        if event.band in state.bands:
            raise XmodError(f"band {event.band!r} is already live")
        wu = u_label if event.u[1] > 0 else u_label.inverse()
        wv = v_label if event.v[1] > 0 else v_label.inverse()
        if len(set(event.merged)) != len(event.merged):
            raise XmodError("merged arc ids must be distinct")
        arcs = dict(state.arcs)
        del arcs[event.u[0]]
        arcs.pop(event.v[0], None)
        inherited = (u_label, v_label)
        for index, arc in enumerate(event.merged):
            if arc in arcs:
                raise XmodError(f"arc {arc!r} is already live")
            arcs[arc] = inherited[index]
        bands = dict(state.bands)
        bands[event.band] = (CrossedWord(((EMPTY_WORD, event.cell, 1),)), event.cell)
        cell_boundary = dict(state.cell_boundary)
        cell_boundary[event.cell] = wu * wv.inverse()
        return replace(
            state,
            arcs=arcs,
            bands=bands,
            cells=state.cells + (event.cell,),
            cell_boundary=cell_boundary,
        )
    if isinstance(event, DeathEvent):
        if len(set(event.circle)) != len(event.circle):
            raise XmodError("death circle lists an arc twice")
        arcs = dict(state.arcs)
        for arc in event.circle:
            if arc not in arcs:
                raise XmodError(f"arc {arc!r} is not live")
            del arcs[arc]
        # A disk meeting no bands yields the empty relation, which is omitted.
        if not event.spanner:
            return replace(state, arcs=arcs)
        relation = CrossedWord()
        known = set(state.generators)
        for band, conjugator, sign in event.spanner:
            label, _ = _live_band(state, band)
            unknown = sorted(conjugator.generators() - known)
            if unknown:
                raise XmodError(
                    f"spanner conjugator uses unknown generator {unknown[0]!r}"
                )
            moved = label.act(conjugator)
            relation = relation * (moved if sign > 0 else moved.inverse())
        boundary = _band_boundary(state, relation)
        if not boundary.is_empty:
            raise XmodError(
                f"death relation has nontrivial boundary {boundary}"
            )
        return replace(state, arcs=arcs, relations=state.relations + (relation,))
    if isinstance(event, EndEvent):
        return replace(state, finished=True)
    raise XmodError(f"unknown event type {type(event).__name__}")


def compile_movie(script: MovieScript) -> CompiledComplement:
    """Replay a movie and return its presentation and one-handle count."""
    state = DiagramState()
    for index, event in enumerate(script.events):
        try:
            state = apply_event(state, event)
        except ReplayError:
            raise
        except XmodError as exc:
            raise ReplayError(str(exc), event_index=index,
                              line=getattr(event, "line", None)) from exc
    if not state.finished:
        raise ReplayError("script has no 'end' event", event_index=len(script.events))
    presentation = CrossedPresentation(
        state.generators, state.cells, dict(state.cell_boundary), state.relations
    )
    report = validate_presentation(presentation)
    if not report.ok:
        raise ReplayError(
            f"compiled presentation is invalid: {report.violations[0]}",
            event_index=len(script.events) - 1,
        )
    return CompiledComplement(presentation, state.births)
