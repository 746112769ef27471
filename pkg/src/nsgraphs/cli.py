"""Command-line front end.

Loads a family file, runs one decided query under ``--anchor`` and prints the
exact symbolic answer next to a few concrete samples.

Exit codes: 0 decided true or value produced, 1 decided false, 2 usage or
validation error, 3 inconclusive sampling.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import graph_families as gf
from .errors import FamilyFileError, InvalidSelector, NoPath, NSGraphError
from .graph_core import Criterion, read_graph
from .graph_families import (
    CompleteFamily,
    ConstantFamily,
    CycleFamily,
    ExplicitPeriodicFamily,
    GraphFamily,
    InfinitePathFamily,
    PathFamily,
    StarFamily,
    VertexSelector,
)
from .nsg_core import (
    NSVertex,
    StrongColoring,
    colors_differ,
    identify_standard_vertex,
    limitedly_distant,
    mk_ns_edge,
    ns_degree,
    ns_distance,
    ns_eulerian,
    ns_coloring,
    ns_hamiltonian,
    ns_summary,
    ns_vertex_eq,
    vertex_eq_set,
)
from .transfer_dsl import Mode, decide_ae, parse_sentence, to_text
from .up_algebra import AnchoredUltrafilter, Hypernatural, UPPSeq, hn_is_limited

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2, 3
SAMPLE_COUNT = 5

_INDEXED = {"path": PathFamily, "cycle": CycleFamily, "complete": CompleteFamily,
            "star": StarFamily}
_HEADER = re.compile(r"\[\s*(family|vertex)(?:\s+([A-Za-z_][A-Za-z0-9_]*))?\s*\]")
_KEY = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)=")
_BARE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*(?=\s|$)")  # kind=cycle


# ---------------------------------------------------------------------------
# family files


def _fields(text: str, lineno: int) -> dict:
    dec = json.JSONDecoder()
    out = {}
    pos = 0
    while text[pos:].strip():
        m = _KEY.match(text, pos)
        if not m:
            raise FamilyFileError(f"expected key=value near {text[pos:].strip()[:20]!r}", lineno)
        key = m.group(1)
        if key in out:
            raise FamilyFileError(f"duplicate key {key!r}", lineno)
        try:
            out[key], pos = dec.raw_decode(text, m.end())
        except json.JSONDecodeError as e:
            bare = _BARE.match(text, m.end())
            if not bare:
                raise FamilyFileError(f"bad value for {key!r}: {e.msg}", lineno) from None
            out[key], pos = bare.group(0), bare.end()
    return out


def _check_keys(got: dict, allowed: set, lineno: int) -> None:
    extra = sorted(set(got) - allowed)
    if extra:
        raise FamilyFileError(f"unknown key(s) {', '.join(extra)}", lineno)


def _seq_value(value, what: str, lineno: int) -> UPPSeq:
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        raise FamilyFileError(f"{what} must be a string or integer", lineno)
    try:
        return UPPSeq.of(value)
    except (ValueError, NSGraphError) as e:
        raise FamilyFileError(f"{what}: {e}", lineno) from None


def _build_family(spec: dict, lineno: int, base: Path) -> GraphFamily:
    kind = spec.get("kind")

    def graph(name):
        if not isinstance(name, str):
            raise FamilyFileError("graph references must be file names", lineno)
        try:
            return read_graph(base / name)
        except OSError as e:
            raise FamilyFileError(f"cannot read graph {name!r}: {e.strerror}", lineno) from None
        except NSGraphError as e:
            raise FamilyFileError(f"graph {name!r}: {e}", lineno) from None

    if kind in _INDEXED:
        cls = _INDEXED[kind]
        pname = "leaves" if kind == "star" else "size"
        _check_keys(spec, {"kind", pname, "floor"}, lineno)
        if pname not in spec:
            raise FamilyFileError(f"{kind} family needs {pname}=", lineno)
        seq = _seq_value(spec[pname], pname, lineno)
        try:
            return cls.with_floor(seq) if spec.get("floor") else cls(seq)
        except NSGraphError as e:
            raise FamilyFileError(str(e), lineno) from None
    if kind == "constant":
        _check_keys(spec, {"kind", "graph"}, lineno)
        if "graph" not in spec:
            raise FamilyFileError("constant family needs graph=", lineno)
        return ConstantFamily(graph(spec["graph"]))
    if kind == "explicit":
        _check_keys(spec, {"kind", "prefix", "cycle"}, lineno)
        prefix, cycle = spec.get("prefix", []), spec.get("cycle", [])
        if not isinstance(prefix, list) or not isinstance(cycle, list) or not cycle:
            raise FamilyFileError("explicit family needs prefix=[..] and a nonempty cycle=[..]",
                                  lineno)
        return ExplicitPeriodicFamily(tuple(graph(g) for g in prefix),
                                      tuple(graph(g) for g in cycle))
    if kind == "infinite_path":
        _check_keys(spec, {"kind"}, lineno)
        return InfinitePathFamily()
    raise FamilyFileError(f"unknown family kind {kind!r}", lineno)


def _build_selector(fam: GraphFamily, name: str, spec: dict, lineno: int) -> VertexSelector:
    _check_keys(spec, {"terms", "threshold", "prefix"}, lineno)
    terms, prefix = spec.get("terms"), spec.get("prefix", [])
    if not isinstance(terms, list) or not terms:
        raise FamilyFileError(f"vertex {name!r} needs a nonempty terms=[..]", lineno)
    if not isinstance(prefix, list) or not all(isinstance(v, int) for v in prefix):
        raise FamilyFileError(f"vertex {name!r}: prefix must list integers", lineno)
    threshold = spec.get("threshold", len(prefix))
    if not isinstance(threshold, int) or threshold < 0:
        raise FamilyFileError(f"vertex {name!r}: threshold must be a natural number", lineno)
    try:
        seq = UPPSeq(threshold, tuple(terms), tuple(prefix))
        return VertexSelector(fam, seq, name)
    except InvalidSelector as e:
        raise InvalidSelector(f"line {lineno}: {e}") from None
    except NSGraphError as e:
        raise FamilyFileError(str(e), lineno) from None
    except ValueError as e:
        raise FamilyFileError(f"vertex {name!r}: {e}", lineno) from None


def parse_family_text(text: str, base: Path = Path(".")) -> tuple[GraphFamily, dict]:
    fam = None
    selectors: dict[str, VertexSelector] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _HEADER.match(line)
        if not m:
            raise FamilyFileError("expected a [family] or [vertex name] header", lineno)
        spec = _fields(line[m.end():], lineno)
        if m.group(1) == "family":
            if m.group(2) or fam is not None:
                raise FamilyFileError("exactly one unnamed [family] line is allowed", lineno)
            fam = _build_family(spec, lineno, base)
        else:
            if fam is None:
                raise FamilyFileError("[vertex] lines must follow the [family] line", lineno)
            name = m.group(2)
            if not name or name in selectors:
                raise FamilyFileError(f"vertex needs a fresh name, got {name!r}", lineno)
            selectors[name] = _build_selector(fam, name, spec, lineno)
    if fam is None:
        raise FamilyFileError("no [family] line found")
    return fam, selectors


def load_family(path) -> tuple[GraphFamily, dict]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise FamilyFileError(f"cannot read {path}: {e.strerror}") from None
    return parse_family_text(text, path.parent)


# ---------------------------------------------------------------------------
# queries


@dataclass
class QueryConfig:
    family: str
    command: str
    args: list = field(default_factory=list)
    anchor: int = 0
    samples: int = 12
    criterion: str = "dirac"


class _Report:
    def __init__(self, F: AnchoredUltrafilter):
        self.F = F
        self.lines: list[str] = []

    def add(self, line: str = "") -> None:
        self.lines.append(line)

    def value(self, label: str, hn) -> None:
        seq = hn.rep if isinstance(hn, Hypernatural) else hn
        self.add(f"{label} = {seq}")
        idx = self.F.samples_for(seq, SAMPLE_COUNT)
        shown = ", ".join(f"n={n}: {seq[n]}" for n in idx)
        self.add(f"  illustrative samples: {shown}")

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _flag(b: bool) -> str:
    return "true" if b else "false"


def _vertex(fam, table, arg: str) -> NSVertex:
    if arg in table:
        return NSVertex(table[arg])
    return NSVertex(VertexSelector(fam, UPPSeq.of(arg), arg))


def _arity(cfg: QueryConfig, k: int) -> None:
    if len(cfg.args) != k:
        raise _Usage(f"{cfg.command} takes {k} argument(s), got {len(cfg.args)}")


class _Usage(Exception):
    pass


def run(cfg: QueryConfig) -> tuple[int, str]:
    """Execute one query; returns (exit code, report text)."""
    if cfg.anchor < 0 or cfg.samples < 1:
        return EXIT_ERROR, "error: anchor must be >= 0 and samples >= 1\n"
    F = AnchoredUltrafilter(cfg.anchor)
    rep = _Report(F)
    try:
        fam, table = load_family(cfg.family)
        rep.add(f"family: {fam.kind}; anchor: {cfg.anchor}")
        code = _dispatch(cfg, fam, table, F, rep)
    except _Usage as e:
        return EXIT_ERROR, f"usage error: {e}\n"
    except (NSGraphError, ValueError) as e:
        return EXIT_ERROR, f"error: {type(e).__name__}: {e}\n"
    return code, rep.text()


def _dispatch(cfg, fam, table, F, rep) -> int:
    cmd, a = cfg.command, cfg.args
    v = lambda s: _vertex(fam, table, s)  # noqa: E731

    if cmd == "eq":
        _arity(cfg, 2)
        x, y = v(a[0]), v(a[1])
        same = ns_vertex_eq(x, y, F)
        rep.add(f"{{n : x_n = y_n}} = {vertex_eq_set(x, y).canonical()}")
        rep.add("EQUAL" if same else "NOT EQUAL")
        return EXIT_TRUE if same else EXIT_FALSE
    if cmd == "edge":
        _arity(cfg, 2)
        x, y = v(a[0]), v(a[1])
        rep.add(f"N_xy = {gf.edge_set(fam, x.selector, y.selector).canonical()}")
        e = mk_ns_edge(x, y, F)
        rep.add("EDGE" if e else "NOT AN EDGE")
        return EXIT_TRUE if e else EXIT_FALSE
    if cmd == "distance":
        _arity(cfg, 2)
        try:
            d = ns_distance(v(a[0]), v(a[1]), F)
        except NoPath as e:
            rep.add(f"NO PATH ({e})")
            return EXIT_FALSE
        rep.value("d", d)
        rep.add(f"limited: {_flag(hn_is_limited(d, F))}")
        return EXIT_TRUE
    if cmd == "degree":
        _arity(cfg, 1)
        d = ns_degree(v(a[0]), F)
        rep.value("deg", d)
        rep.add(f"limited: {_flag(hn_is_limited(d, F))}")
        return EXIT_TRUE
    if cmd == "galaxy":
        _arity(cfg, 2)
        x, y = v(a[0]), v(a[1])
        try:
            same = limitedly_distant(x, y, F)
        except NoPath:
            same = False
        else:
            rep.value("d", ns_distance(x, y, F))
        rep.add("SAME GALAXY" if same else "DIFFERENT GALAXIES")
        return EXIT_TRUE if same else EXIT_FALSE
    if cmd == "summary":
        _arity(cfg, 0)
        s = ns_summary(fam, F)
        rep.value("p", s.p)
        rep.value("q", s.q)
        rep.value("r", s.r)
        if s.radius.rep == s.diameter.rep:
            rep.value("R = D", s.radius)
        else:
            rep.value("R", s.radius)
            rep.value("D", s.diameter)
        rep.add(f"r=q-p+1: {_flag(s.cyclomatic_identity)}")
        rep.add(f"p-1<=q<=p(p-1)/2: {_flag(s.edge_bounds)}")
        rep.add(f"R<=D<=2R: {_flag(s.radius_bounds)}")
        for name in ("connected", "eulerian", "dirac", "ore", "posa"):
            rep.add(f"{name}: {_flag(getattr(s, name))}")
        return EXIT_TRUE
    if cmd == "eulerian":
        _arity(cfg, 0)
        rep.add(f"N = {gf.property_set(fam, Criterion.EULERIAN).canonical()}")
        ok = ns_eulerian(fam, F)
        rep.add(f"EULERIAN: {_flag(ok)}")
        return EXIT_TRUE if ok else EXIT_FALSE
    if cmd == "hamiltonian":
        _arity(cfg, 0)
        ok = ns_hamiltonian(fam, cfg.criterion, F)
        rep.add(f"{cfg.criterion}: {_flag(ok)}")
        rep.add("HAMILTONIAN" if ok else "criterion fails; Hamiltonicity not decided")
        return EXIT_TRUE if ok else EXIT_FALSE
    if cmd == "color":
        _arity(cfg, 0)
        col = ns_coloring(fam, F)
        p = fam.vertex_count()
        if isinstance(col, StrongColoring):
            rep.add(f"STRONG coloring: k = {col.k}, palette 1..{col.palette_size}")
        else:
            rep.add("WEAK coloring: max degree unlimited")
            rep.value("palette size", col.palette)
        for n in F.samples_for(p, SAMPLE_COUNT):
            rep.add(f"  illustrative coloring n={n}: {col.at(n)}")
        bad = [f"{a}-{b}" for a, b in _edge_pairs(table, fam, F) if not colors_differ(
            col, NSVertex(table[a]), NSVertex(table[b]), F)]
        if bad:
            rep.add(f"adjacent selectors sharing a color: {', '.join(bad)}")
            return EXIT_FALSE
        return EXIT_TRUE
    if cmd == "check":
        _arity(cfg, 1)
        phi = parse_sentence(a[0])
        verdict = decide_ae(phi, fam, F, cfg.samples)
        rep.add(f"sentence: {to_text(phi)}")
        if verdict.mode is Mode.DECIDED:
            rep.add(f"N = {verdict.truth_set}")
            rep.add(f"DECIDED: {_flag(verdict.decision)}")
        else:
            shown = ", ".join(f"n={n}: {_flag(t)}" for n, t in verdict.samples)
            rep.add(f"samples ({verdict.sample_summary}): {shown}")
            if verdict.inconclusive:
                rep.add("SAMPLED: inconclusive")
                return EXIT_INCONCLUSIVE
            rep.add(f"SAMPLED (heuristic): {_flag(verdict.decision)}")
        return EXIT_TRUE if verdict.decision else EXIT_FALSE
    if cmd == "identify":
        _arity(cfg, 1)
        got = identify_standard_vertex(v(a[0]), F)
        if got is None:
            rep.add("NOT STANDARD")
            return EXIT_FALSE
        rep.add(f"STANDARD vertex {got}")
        return EXIT_TRUE
    raise _Usage(f"unknown command {cmd!r}")


def _edge_pairs(table, fam, F):
    names = sorted(table)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if mk_ns_edge(NSVertex(table[a]), NSVertex(table[b]), F):
                yield a, b


# ---------------------------------------------------------------------------
# argument parsing


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a natural number") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text!r} is negative")
    return value


def _positive(text: str) -> int:
    value = _natural(text)
    if value < 1:
        raise argparse.ArgumentTypeError("need at least one sample")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--family", help="family specification file")
    common.add_argument("--anchor", type=_natural, help="ultrafilter anchor (default 0)")
    common.add_argument("--samples", type=_positive,
                        help="indices probed in sampled mode (default 12)")

    parser = argparse.ArgumentParser(prog="nsgraphs", parents=[common],
                                     description="Decided queries on nonstandard graphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    two = ("x", "y")
    for name, args, helptext in [
        ("eq", two, "a.e. equality of two vertices"),
        ("edge", two, "is {x, y} a nonstandard edge"),
        ("distance", two, "hypernatural distance"),
        ("degree", ("x",), "hypernatural degree"),
        ("summary", (), "counts, cyclomatic number, radius, diameter"),
        ("galaxy", two, "are x and y limitedly distant"),
        ("eulerian", (), "decided Euler property"),
        ("hamiltonian", (), "decided Hamilton criterion"),
        ("color", (), "strong or weak coloring"),
        ("check", ("sentence",), "decide a sentence almost everywhere"),
        ("identify", ("x",), "standard vertex of an enlargement"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=helptext)
        for arg in args:
            sp.add_argument(arg)
        if name == "hamiltonian":
            sp.add_argument("--criterion", choices=["dirac", "ore", "posa"], default="dirac")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    family = getattr(ns, "family", None)
    if family is None:
        parser.print_usage(sys.stderr)
        print("nsgraphs: error: --family is required", file=sys.stderr)
        return EXIT_ERROR
    positional = [getattr(ns, k) for k in ("x", "y", "sentence") if hasattr(ns, k)]
    cfg = QueryConfig(family=family, command=ns.command, args=positional,
                      anchor=getattr(ns, "anchor", 0), samples=getattr(ns, "samples", 12),
                      criterion=getattr(ns, "criterion", "dirac"))
    code, text = run(cfg)
    (sys.stderr if code == EXIT_ERROR else sys.stdout).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
