"""Extremal and random instance generators plus the text file formats.

Instance files are DIMACS-flavoured: `c` comment lines, one
`p tpb <a> <b> <m>` header, then `e <i> <j> [mult]` lines with 1-based
vertex indices (repeated lines accumulate).  Edge ids are assigned in
file order, expanding multiplicities in line order.  The canonical form
sorts edge lines by (i, j) with multiplicities merged, which makes the
serialize/parse round trip the identity.  Resolution files carry an
`s SOLVED|UNSOLVED|UNKNOWN` line and one `r` record per route.
"""
from __future__ import annotations

import random
from collections import Counter

from .demand import A, B, SIDE_A, DemandGraph, Path, Resolution, V
from .errors import FormatError, PreconditionError

SOLVED = "SOLVED"
UNSOLVED = "UNSOLVED"
UNKNOWN_STATUS = "UNKNOWN"


# -- sharp unresolvable families -----------------------------------------------


def gen_sharp_conjecture(n: int) -> DemandGraph:
    """n disjoint terminal pairs, each demanding ceil(n/3)+1 parallel paths.

    Unresolvable in K_{n,n} for every n: one demand per pair can route
    directly, the rest need length >= 3, and n + 3n*ceil(n/3) > n^2.
    """
    if n < 1:
        raise PreconditionError("n must be at least 1")
    mult = -(-n // 3) + 1
    pairs = [(A(i), B(i)) for i in range(n) for _ in range(mult)]
    return DemandGraph.from_pairs(n, n, pairs)


def gen_sharp_edge(n: int) -> DemandGraph:
    """One pair joined n times, another n-1 times: 2n-1 edges, unresolvable."""
    if n < 4:
        raise PreconditionError("n must be at least 4")
    pairs = [(A(0), B(0))] * n + [(A(1), B(1))] * (n - 1)
    return DemandGraph.from_pairs(n, n, pairs)


def gen_chain(n: int) -> DemandGraph:
    """n-1 doubled pairs plus one isolated pair: 2n-2 edges with Δ = 2."""
    if n < 4:
        raise PreconditionError("n must be at least 4")
    pairs = [(A(i), B(i)) for i in range(n - 1) for _ in range(2)]
    return DemandGraph.from_pairs(n, n, pairs)


# -- seeded random families ---------------------------------------------------


def gen_random_edge(
    n: int, seed: int, max_edges: int | None = None, max_degree: int | None = None
) -> DemandGraph:
    """Random instance within the edge-version hypotheses (|E| <= 2n-2, Δ <= n)."""
    me = 2 * n - 2 if max_edges is None else max_edges
    md = n if max_degree is None else max_degree
    rng = random.Random(seed)
    target = rng.randint(0, me)
    deg_a = [0] * n
    deg_b = [0] * n
    pairs: list[tuple[V, V]] = []
    attempts = 0
    while len(pairs) < target and attempts < 200 * (n + target):
        attempts += 1
        i = rng.randrange(n)
        j = rng.randrange(n)
        if deg_a[i] < md and deg_b[j] < md:
            pairs.append((A(i), B(j)))
            deg_a[i] += 1
            deg_b[j] += 1
    D = DemandGraph.from_pairs(n, n, pairs)
    assert D.m <= me and D.max_degree() <= md
    return D


def gen_random_blocked(n: int, sizes: tuple[int, int, int], seed: int) -> DemandGraph:
    """Random block-respecting instance with Δ <= floor(n/3)."""
    if sum(sizes) != n:
        raise PreconditionError("block sizes must sum to n")
    t = n // 3
    if any(s < t for s in sizes):
        raise PreconditionError("every block needs at least floor(n/3) vertices")
    rng = random.Random(seed)
    starts = [0, sizes[0], sizes[0] + sizes[1]]
    deg_a = [0] * n
    deg_b = [0] * n
    pairs: list[tuple[V, V]] = []
    for blk in range(3):
        lo, s = starts[blk], sizes[blk]
        target = rng.randint(0, t * s)
        attempts = 0
        while target > 0 and attempts < 500 * (s + 1):
            attempts += 1
            i = lo + rng.randrange(s)
            j = lo + rng.randrange(s)
            if deg_a[i] < t and deg_b[j] < t:
                pairs.append((A(i), B(j)))
                deg_a[i] += 1
                deg_b[j] += 1
                target -= 1
    D = DemandGraph.from_pairs(n, n, pairs)
    assert D.max_degree() <= t
    return D


def gen_random_semiregular(a: int, b: int, delta_a: int, seed: int) -> DemandGraph:
    """Random semiregular instance: every A-degree delta_a, every B-degree a*delta_a/b."""
    total = a * delta_a
    if total % b != 0:
        raise PreconditionError("a*delta_a must be divisible by b")
    delta_b = total // b
    rng = random.Random(seed)
    stubs = [j for j in range(b) for _ in range(delta_b)]
    rng.shuffle(stubs)
    pairs = []
    k = 0
    for i in range(a):
        for _ in range(delta_a):
            pairs.append((A(i), B(stubs[k])))
            k += 1
    D = DemandGraph.from_pairs(a, b, pairs)
    degs = D.degree_map()
    assert all(degs[A(i)] == delta_a for i in range(a))
    assert all(degs[B(j)] == delta_b for j in range(b))
    return D


def gen_random(profile: str, **kw) -> DemandGraph:
    """Dispatch by profile name: edge_version, blocked or semiregular."""
    if profile == "edge_version":
        return gen_random_edge(
            kw["n"], kw.get("seed", 0), kw.get("max_edges"), kw.get("max_degree")
        )
    if profile == "blocked":
        return gen_random_blocked(kw["n"], kw["sizes"], kw.get("seed", 0))
    if profile == "semiregular":
        return gen_random_semiregular(
            kw["a"], kw["b"], kw["delta_a"], kw.get("seed", 0)
        )
    raise PreconditionError(f"unknown profile {profile!r}")


# -- instance files -----------------------------------------------------------


def serialize_instance(D: DemandGraph) -> str:
    """Canonical text form: header, then merged edge lines sorted by (i, j)."""
    if not D.is_bipartite_demand():
        raise FormatError("only class-crossing demand graphs are serializable")
    mult = Counter()
    for e in D.edges.values():
        i = e.u.index if e.u.side == SIDE_A else e.v.index
        j = e.v.index if e.u.side == SIDE_A else e.u.index
        mult[(i, j)] += 1
    lines = [f"p tpb {D.a} {D.b} {D.m}"]
    for (i, j) in sorted(mult):
        lines.append(f"e {i + 1} {j + 1} {mult[(i, j)]}")
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> DemandGraph:
    a = b = m = None
    pairs: list[tuple[V, V]] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        if toks[0] == "p":
            if a is not None:
                raise FormatError(f"line {ln}: duplicate header")
            if len(toks) != 5 or toks[1] != "tpb":
                raise FormatError(f"line {ln}: header must read 'p tpb <a> <b> <m>'")
            try:
                a, b, m = int(toks[2]), int(toks[3]), int(toks[4])
            except ValueError:
                raise FormatError(f"line {ln}: non-integer header field")
            if a < 1 or b < 1 or m < 0:
                raise FormatError(f"line {ln}: header values out of range")
        elif toks[0] == "e":
            if a is None:
                raise FormatError(f"line {ln}: edge record before header")
            if len(toks) not in (3, 4):
                raise FormatError(f"line {ln}: edge record must read 'e <i> <j> [mult]'")
            try:
                i = int(toks[1])
                j = int(toks[2])
                mult = int(toks[3]) if len(toks) == 4 else 1
            except ValueError:
                raise FormatError(f"line {ln}: non-integer edge field")
            if not 1 <= i <= a:
                raise FormatError(f"line {ln}: class-A index {i} out of range 1..{a}")
            if not 1 <= j <= b:
                raise FormatError(f"line {ln}: class-B index {j} out of range 1..{b}")
            if mult < 1:
                raise FormatError(f"line {ln}: multiplicity must be positive")
            pairs.extend((A(i - 1), B(j - 1)) for _ in range(mult))
        else:
            raise FormatError(f"line {ln}: unrecognized record {toks[0]!r}")
    if a is None:
        raise FormatError("missing 'p tpb' header")
    if len(pairs) != m:
        raise FormatError(
            f"header declares {m} edges but the edge lines supply {len(pairs)}"
        )
    return DemandGraph.from_pairs(a, b, pairs)


# -- resolution files ----------------------------------------------------------


def _vertex_token(v: V) -> str:
    return f"{'a' if v.side == SIDE_A else 'b'}{v.index + 1}"


def serialize_resolution(res: Resolution | None, status: str = SOLVED) -> str:
    """Resolution text; routes are oriented to start at the class-A terminal."""
    if status not in (SOLVED, UNSOLVED, UNKNOWN_STATUS):
        raise FormatError(f"unknown status {status!r}")
    if status != SOLVED:
        return f"s {status}\n"
    if res is None:
        raise FormatError("a SOLVED file needs a resolution")
    lines = ["s SOLVED"]
    for eid in sorted(res.routes):
        vs = res.routes[eid].vertices
        if vs and vs[0].side != SIDE_A:
            vs = tuple(reversed(vs))
        toks = " ".join(_vertex_token(v) for v in vs)
        lines.append(f"r {eid} {len(vs) - 1} {toks}")
    return "\n".join(lines) + "\n"


def parse_resolution(text: str) -> tuple[str, Resolution | None]:
    status = None
    routes: dict[int, Path] = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        if toks[0] == "s":
            if status is not None:
                raise FormatError(f"line {ln}: duplicate status line")
            if len(toks) != 2 or toks[1] not in (SOLVED, UNSOLVED, UNKNOWN_STATUS):
                raise FormatError(f"line {ln}: bad status line")
            status = toks[1]
        elif toks[0] == "r":
            if status != SOLVED:
                raise FormatError(f"line {ln}: route record without a SOLVED status")
            if len(toks) < 4:
                raise FormatError(f"line {ln}: truncated route record")
            try:
                eid = int(toks[1])
                k = int(toks[2])
            except ValueError:
                raise FormatError(f"line {ln}: non-integer route field")
            verts = toks[3:]
            if len(verts) != k + 1:
                raise FormatError(
                    f"line {ln}: route declares {k} edges but lists {len(verts)} vertices"
                )
            path = []
            for pos, tok in enumerate(verts):
                if len(tok) < 2 or tok[0] not in "ab" or not tok[1:].isdigit():
                    raise FormatError(f"line {ln}: bad vertex token {tok!r}")
                want = "a" if pos % 2 == 0 else "b"
                if tok[0] != want:
                    raise FormatError(
                        f"line {ln}: route vertices must alternate starting at class A"
                    )
                idx = int(tok[1:]) - 1
                path.append(A(idx) if tok[0] == "a" else B(idx))
            if eid in routes:
                raise FormatError(f"line {ln}: duplicate route for edge {eid}")
            routes[eid] = Path(tuple(path))
        else:
            raise FormatError(f"line {ln}: unrecognized record {toks[0]!r}")
    if status is None:
        raise FormatError("missing 's' status line")
    if status != SOLVED:
        return status, None
    return status, Resolution(routes)
