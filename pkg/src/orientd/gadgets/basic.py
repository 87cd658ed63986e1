"""Incremental instance builder and the OR, clause and block gadgets."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ValidationError
from ..graph import CapacitatedInstance, Graph


@dataclass(frozen=True)
class GadgetHandle:
    """An instance together with named vertex roles (0-based ids)."""

    instance: CapacitatedInstance
    roles: dict = field(default_factory=dict)

    def __getitem__(self, name):
        return self.roles[name]

    def role_table(self) -> str:
        return format_roles(self.roles)


def format_roles(roles: dict) -> str:
    lines = []
    for name, ids in roles.items():
        if isinstance(ids, int):
            ids = (ids,)
        lines.append(f"role {name} " + " ".join(str(v + 1) for v in ids))
    return "\n".join(lines) + ("\n" if lines else "")


class InstanceBuilder:
    """Collects vertices (with capacities), edges and roles."""

    def __init__(self, d: int):
        self.d = d
        self.caps: list[int] = []
        self.edges: set = set()
        self.roles: dict = {}
        self.or_internal: list[int] = []

    @property
    def n(self) -> int:
        return len(self.caps)

    def vertex(self, cap: int, role: str | None = None) -> int:
        if not 0 <= cap <= self.d:
            raise ValidationError(f"capacity {cap} outside [0, {self.d}]")
        self.caps.append(cap)
        v = len(self.caps) - 1
        if role is not None:
            self.roles[role] = v
        return v

    def vertices(self, count: int, cap: int, role: str | None = None) -> list[int]:
        vs = [self.vertex(cap) for _ in range(count)]
        if role is not None:
            self.roles[role] = tuple(vs)
        return vs

    def edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValidationError(f"self-loop at {u}")
        e = (u, v) if u < v else (v, u)
        if e in self.edges:
            raise ValidationError(f"duplicate edge {e}")
        self.edges.add(e)

    def clique(self, vs) -> None:
        vs = list(vs)
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                self.edge(u, v)

    def biclique(self, left, right) -> None:
        for u in left:
            for v in right:
                self.edge(u, v)

    def or_gadget(self, u: int, v: int) -> list[int]:
        """2d+2 capacity-1 vertices adjacent to both ``u`` and ``v``."""
        inner = [self.vertex(min(1, self.d)) for _ in range(2 * self.d + 2)]
        for x in inner:
            self.edge(u, x)
            self.edge(v, x)
        self.or_internal.extend(inner)
        return inner

    def build(self, budget: int | None = None) -> CapacitatedInstance:
        return CapacitatedInstance(Graph(self.n, frozenset(self.edges)), self.d, tuple(self.caps), budget)


def or_gadget(d: int, endpoint_capacity: int = 0) -> GadgetHandle:
    """Two endpoints joined by an OR gadget; endpoints get ``endpoint_capacity``."""
    if d < 1:
        raise ValidationError("OR gadgets need d >= 1")
    b = InstanceBuilder(d)
    u = b.vertex(endpoint_capacity, "endpoint_u")
    v = b.vertex(endpoint_capacity, "endpoint_v")
    inner = b.or_gadget(u, v)
    b.roles["internal"] = tuple(inner)
    return GadgetHandle(b.build(), b.roles)


# ---------------------------------------------------------------------------
# clause gadget


@dataclass(frozen=True)
class ClauseParts:
    inputs: tuple
    left: tuple
    right: tuple
    pendant_first: int
    pendant_last: int

    def keep_set(self, chosen: int) -> set:
        """Independent set of size N+2 that keeps input ``chosen`` (0-based)."""
        keep = {self.pendant_first, self.pendant_last, self.inputs[chosen]}
        keep.update(self.right[:chosen])
        keep.update(self.left[chosen + 1:])
        return keep

    def all_vertices(self) -> list:
        return list(self.inputs) + list(self.left) + list(self.right) + [self.pendant_first, self.pendant_last]


def add_clause_gadget(b: InstanceBuilder, size: int) -> ClauseParts:
    """Chain of triangles (input_i, l_i, r_i), consecutive ones linked by
    r_i-l_{i+1} and l_i-r_{i+1}, with pendants on l_1 and r_N. All capacities 0."""
    if size < 1:
        raise ValidationError("clause gadget needs at least one input")
    inputs, left, right = [], [], []
    for _ in range(size):
        x, lv, rv = b.vertex(0), b.vertex(0), b.vertex(0)
        b.clique((x, lv, rv))
        inputs.append(x)
        left.append(lv)
        right.append(rv)
    for i in range(size - 1):
        b.edge(right[i], left[i + 1])
        b.edge(left[i], right[i + 1])
    pf = b.vertex(0)
    pl = b.vertex(0)
    b.edge(pf, left[0])
    b.edge(pl, right[-1])
    return ClauseParts(tuple(inputs), tuple(left), tuple(right), pf, pl)


def clause_gadget(size: int, d: int = 0) -> GadgetHandle:
    b = InstanceBuilder(d)
    parts = add_clause_gadget(b, size)
    roles = {f"input_{i + 1}": v for i, v in enumerate(parts.inputs)}
    roles["left"] = parts.left
    roles["right"] = parts.right
    roles["pendant_first"] = parts.pendant_first
    roles["pendant_last"] = parts.pendant_last
    return GadgetHandle(b.build(), roles)


# ---------------------------------------------------------------------------
# block gadget


@dataclass(frozen=True)
class BlockParts:
    a: int
    a_prime: int
    b: int
    x: tuple
    y: tuple
    q: tuple
    w: tuple  # w_0..w_{d+1}
    z: tuple

    def roles(self, prefix: str = "") -> dict:
        r = {f"{prefix}a": self.a, f"{prefix}a_prime": self.a_prime, f"{prefix}b": self.b}
        for name, group, start in (("x", self.x, 1), ("y", self.y, 1), ("q", self.q, 1), ("w", self.w, 0), ("z", self.z, 0)):
            for i, v in enumerate(group):
                r[f"{prefix}{name}_{i + start}"] = v
        return r

    def deletions(self, option: int, d: int) -> set:
        """Vertices deleted when the block takes ``option`` in [0, d+1].

        Option i <= d keeps x_1..x_i, y_1..y_{d-i}, w_i, z_i and deletes b.
        Option d+1 deletes a and a' and keeps b, w_{d+1}, z_{d+1}, and Y.
        """
        if not 0 <= option <= d + 1:
            raise ValidationError(f"block option {option} outside [0, {d + 1}]")
        out = {v for j, v in enumerate(self.w) if j != option}
        out |= {v for j, v in enumerate(self.z) if j != option}
        if option <= d:
            out.add(self.b)
            out |= set(self.x[option:])
            out |= set(self.y[d - option:])
        else:
            out |= {self.a, self.a_prime}
            out |= set(self.x)
        return out


def add_block_gadget(bld: InstanceBuilder, a: int | None = None) -> BlockParts:
    """Block gadget; pass ``a`` to chain it after a previous block's a'."""
    d = bld.d
    if d < 1:
        raise ValidationError("block gadgets need d >= 1")
    if a is None:
        a = bld.vertex(d)
    a_prime = bld.vertex(d)
    b = bld.vertex(0)
    x = bld.vertices(d, 0)
    y = bld.vertices(d, 0)
    q = bld.vertices(2 * d + 1, d)
    w = [bld.vertex(i) for i in range(d + 1)] + [bld.vertex(0)]
    z = [bld.vertex(d - i) for i in range(d + 1)] + [bld.vertex(0)]
    for xv in x:
        bld.edge(xv, a)
        for qv in q:
            bld.edge(xv, qv)
    for yv in y:
        bld.edge(yv, a_prime)
        for qv in q:
            bld.edge(yv, qv)
    for wv in w[:-1]:
        bld.edge(wv, b)
        for xv in x:
            bld.edge(wv, xv)
    for zv in z[:-1]:
        bld.edge(zv, b)
        for yv in y:
            bld.edge(zv, yv)
    bld.or_gadget(a, b)
    bld.or_gadget(b, a_prime)
    bld.or_gadget(a, w[-1])
    bld.or_gadget(a_prime, z[-1])
    wz = w + z
    for i, u in enumerate(wz):
        for v in wz[i + 1:]:
            iu, iv = wz.index(u) % (d + 2), wz.index(v) % (d + 2)
            if (u in w) != (v in w) and iu == iv:
                continue  # matched pair w_i, z_i
            bld.or_gadget(u, v)
    return BlockParts(a, a_prime, b, tuple(x), tuple(y), tuple(q), tuple(w), tuple(z))


def block_gadget(d: int) -> GadgetHandle:
    bld = InstanceBuilder(d)
    parts = add_block_gadget(bld)
    roles = parts.roles()
    roles["or_internal"] = tuple(bld.or_internal)
    return GadgetHandle(bld.build(), roles)


def block_parts(handle: GadgetHandle, d: int) -> BlockParts:
    r = handle.roles
    return BlockParts(
        r["a"], r["a_prime"], r["b"],
        tuple(r[f"x_{i}"] for i in range(1, d + 1)),
        tuple(r[f"y_{i}"] for i in range(1, d + 1)),
        tuple(r[f"q_{i}"] for i in range(1, 2 * d + 2)),
        tuple(r[f"w_{i}"] for i in range(d + 2)),
        tuple(r[f"z_{i}"] for i in range(d + 2)),
    )
