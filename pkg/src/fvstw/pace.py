"""PACE 2017 .gr and .td text formats (1-based vertices and bag ids)."""

from __future__ import annotations

from .decomposition import TreeDecomposition, validate, width
from .graph import Graph, members, vset


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("c"):
            yield number, line.split()


def _int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line, f"expected an integer, got {token!r}") from None


def parse_gr(text: str) -> Graph:
    n = m = None
    header_line = 0
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for number, tokens in _content_lines(text):
        if n is None:
            if len(tokens) != 4 or tokens[0] != "p" or tokens[1] != "tw":
                raise ParseError(number, "expected header 'p tw <n> <m>'")
            n, m = _int(tokens[2], number), _int(tokens[3], number)
            if n < 0 or m < 0:
                raise ParseError(number, "negative count in header")
            header_line = number
            continue
        if len(tokens) != 2:
            raise ParseError(number, "expected an edge line 'u v'")
        u, v = _int(tokens[0], number), _int(tokens[1], number)
        for x in (u, v):
            if not 1 <= x <= n:
                raise ParseError(number, f"vertex {x} out of range 1..{n}")
        if u == v:
            raise ParseError(number, f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(number, f"duplicate edge {u} {v}")
        seen.add(key)
        edges.append((u - 1, v - 1))
    if n is None:
        raise ParseError(1, "missing header 'p tw <n> <m>'")
    if len(edges) != m:
        raise ParseError(header_line, f"header announces {m} edges, found {len(edges)}")
    return Graph(n, edges)


def emit_gr(g: Graph) -> str:
    lines = [f"p tw {g.n} {g.m}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_td(text: str) -> tuple[TreeDecomposition, int]:
    """Decomposition and the vertex count announced in the header."""
    header = None
    bags: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    header_line = 0
    for number, tokens in _content_lines(text):
        if header is None:
            if len(tokens) != 5 or tokens[0] != "s" or tokens[1] != "td":
                raise ParseError(number, "expected header 's td <bags> <max bag size> <n>'")
            header = tuple(_int(t, number) for t in tokens[2:])
            header_line = number
            continue
        num_bags, _, n = header
        if tokens[0] == "b":
            if len(tokens) < 2:
                raise ParseError(number, "bag line without an id")
            index = _int(tokens[1], number)
            if not 1 <= index <= num_bags:
                raise ParseError(number, f"bag id {index} out of range 1..{num_bags}")
            if index in bags:
                raise ParseError(number, f"bag {index} listed twice")
            verts = [_int(t, number) for t in tokens[2:]]
            for x in verts:
                if not 1 <= x <= n:
                    raise ParseError(number, f"vertex {x} out of range 1..{n}")
            bags[index] = vset(x - 1 for x in verts)
            continue
        if len(tokens) != 2:
            raise ParseError(number, "expected a tree edge line 'i j'")
        a, b = _int(tokens[0], number), _int(tokens[1], number)
        for x in (a, b):
            if not 1 <= x <= num_bags:
                raise ParseError(number, f"bag id {x} out of range 1..{num_bags}")
        edges.append((a - 1, b - 1))
    if header is None:
        raise ParseError(1, "missing header 's td <bags> <max bag size> <n>'")
    num_bags, max_bag, n = header
    if len(bags) != num_bags:
        raise ParseError(header_line, f"header announces {num_bags} bags, found {len(bags)}")
    largest = max((b.bit_count() for b in bags.values()), default=0)
    if largest != max_bag:
        raise ParseError(header_line, f"header announces largest bag {max_bag}, found {largest}")
    td = TreeDecomposition([bags[i] for i in range(1, num_bags + 1)], edges, 0 if num_bags else None)
    return td, n


def emit_td(td: TreeDecomposition, g: Graph) -> str:
    """PACE .td text; refuses decompositions that fail validation."""
    report = validate(td, g)
    if not report.ok:
        raise ValueError("invalid tree decomposition: " + "; ".join(report.messages(base=1)))
    lines = [f"s td {td.num_nodes} {width(td) + 1} {g.n}"]
    for i, bag in enumerate(td.bags, start=1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in members(bag)]))
    for a, b in sorted(tuple(sorted(e)) for e in td.edges):
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"
