"""Builders for the bundled example instances.

Each builder returns an instance payload in the layout read by
``data.instance_io.load_instance``. Hopf blocks come from finite groups and
from groupoids given by objects and arrows; the instances are the trivial
representation of a weak Hopf algebra on H^L and smash products A # H.
"""

import logging
from itertools import product
from typing import Iterable, List, Optional, Sequence, Tuple

from data.instance_io import dump_instance, parse_hopf
from tools.hopf_homology.resolution import hl_coordinates
from tools.linalg.scalars import Field, field_from_descriptor

logger = logging.getLogger(__name__)


def _ser(F: Field, data):
    if isinstance(data, (list, tuple)):
        return [_ser(F, x) for x in data]
    return F.serialize(F(data))


def _basis_tensor(n: int, entries) -> list:
    """n×n×n tensor with a 1 at every (i, j, k) yielded by ``entries``."""
    t = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i, j, k in entries:
        t[i][j][k] = 1
    return t


def _grouplike_block(F: Field, name: str, dim: int, mult: list, unit: list, inverse: Sequence[int]) -> dict:
    """Δ(e_i) = e_i ⊗ e_i, ε(e_i) = 1, S(e_i) = e_{inverse[i]}."""
    antipode = [[1 if i == inverse[j] else 0 for j in range(dim)] for i in range(dim)]
    return {
        "name": name,
        "dim": dim,
        "mult": _ser(F, mult),
        "unit": _ser(F, unit),
        "comult": _ser(F, _basis_tensor(dim, ((i, i, i) for i in range(dim)))),
        "counit": _ser(F, [1] * dim),
        "antipode": _ser(F, antipode),
    }


def group_algebra(n: Optional[int] = None, table: Optional[List[List[int]]] = None, field="Q") -> dict:
    """H block of k[G] for the cyclic group C_n or for the group with multiplication ``table``.

    table[i][j] is the index of g_i g_j.
    """
    F = field_from_descriptor(field)
    if table is None:
        if n is None or n < 1:
            raise ValueError("group_algebra needs n >= 1 or a multiplication table")
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        name = f"{F.name}[C_{n}]"
    else:
        name = f"{F.name}[G]"
    size = len(table)
    if any(len(row) != size or any(not 0 <= x < size for x in row) for row in table):
        raise ValueError("invalid group table: rows must be permutations of range(n)")
    units = [e for e in range(size) if all(table[e][j] == j and table[j][e] == j for j in range(size))]
    if not units:
        raise ValueError("invalid group table: no identity element")
    e = units[0]
    for i, j, k in product(range(size), repeat=3):
        if table[table[i][j]][k] != table[i][table[j][k]]:
            raise ValueError(f"invalid group table: not associative at {(i, j, k)}")
    inverse = []
    for i in range(size):
        inv = [j for j in range(size) if table[i][j] == e]
        if not inv:
            raise ValueError(f"invalid group table: element {i} has no inverse")
        inverse.append(inv[0])
    mult = _basis_tensor(size, ((i, j, table[i][j]) for i, j in product(range(size), repeat=2)))
    unit = [1 if i == e else 0 for i in range(size)]
    return _grouplike_block(F, name, size, mult, unit, inverse)


def _components(objects: Sequence, arrows: Iterable[Tuple]) -> List[List]:
    parent = {x: x for x in objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in arrows:
        if s not in parent or t not in parent:
            raise ValueError(f"invalid groupoid data: arrow {(s, t)} leaves the object set")
        parent[find(s)] = find(t)
    groups = {}
    for x in objects:
        groups.setdefault(find(x), []).append(x)
    return list(groups.values())


def groupoid_algebra(objects: Sequence, arrows: Iterable[Tuple], field="Q", name: str = None) -> dict:
    """H block of the algebra of the groupoid generated by ``arrows`` (pairs source → target).

    The groupoid is the closure under identities, inverses and composition:
    one arrow x → y for every pair of objects in the same component. Basis
    elements are the arrows (x, y) in lexicographic order of object positions,
    with e_τ e_σ = e_{τ∘σ} when σ ends where τ starts and 0 otherwise.
    """
    F = field_from_descriptor(field)
    objects = list(objects)
    if len(set(objects)) != len(objects) or not objects:
        raise ValueError("invalid groupoid data: objects must be distinct and non-empty")
    pos = {x: i for i, x in enumerate(objects)}
    comp = {}
    for c, members in enumerate(_components(objects, arrows)):
        for x in members:
            comp[x] = c
    basis = sorted((pos[x], pos[y]) for x in objects for y in objects if comp[x] == comp[y])
    index = {a: i for i, a in enumerate(basis)}
    dim = len(basis)
    entries = []
    for (i, tau), (j, sigma) in product(enumerate(basis), repeat=2):
        if tau[0] == sigma[1]:
            entries.append((i, j, index[(sigma[0], tau[1])]))
    unit = [1 if a[0] == a[1] else 0 for a in basis]
    inverse = [index[(a[1], a[0])] for a in basis]
    name = name or f"{F.name}[groupoid on {len(objects)} objects]"
    logger.info(f"groupoid algebra: {len(objects)} objects, {dim} arrows")
    return _grouplike_block(F, name, dim, _basis_tensor(dim, entries), unit, inverse)


def pair_groupoid(n: int, field="Q") -> dict:
    """H block of the pair groupoid on n objects: one arrow between any two objects."""
    return groupoid_algebra(range(n), [(i, j) for i in range(n) for j in range(n)], field, f"pair groupoid {n}")


def product_algebra(n: int, field="Q") -> dict:
    """H block of k × … × k (n factors): the groupoid with n objects and only identities."""
    return groupoid_algebra(range(n), [], field, "×".join([field_from_descriptor(field).name] * n))


def truncated_polynomial(n: int, field="Q") -> dict:
    """A block of k[x]/(x^n) on 1, x, …, x^{n−1}."""
    F = field_from_descriptor(field)
    mult = _basis_tensor(n, ((i, j, i + j) for i, j in product(range(n), repeat=2) if i + j < n))
    return {"name": f"{F.name}[x]/(x^{n})", "dim": n, "mult": _ser(F, mult), "unit": _ser(F, [1] + [0] * (n - 1))}


def quadratic_algebra(d, field="Q") -> dict:
    """A block of k[t]/(t² − d) on 1, t."""
    F = field_from_descriptor(field)
    mult = [[[1, 0], [0, 1]], [[0, 1], [F(d), 0]]]
    return {"name": f"{F.name}[t]/(t^2-{d})", "dim": 2, "mult": _ser(F, mult), "unit": _ser(F, [1, 0])}


def trivial_representation(H_block: dict, field="Q", name: str = None) -> dict:
    """E = H^L ×_ρ H with h·a = Π^L(ha) and the trivial cocycle; K is all of H^L and M = E."""
    F = field_from_descriptor(field)
    H = parse_hopf(F, H_block)
    basis = H.hl_basis
    r = len(basis)

    def coords(x: dict) -> list:
        c = hl_coordinates(H, x)
        return [c.get(i, F.zero) for i in range(r)]

    mult = [[coords(H.mul(basis[a], basis[b])) for b in range(r)] for a in range(r)]
    rho = [[coords(H.pi_L(H.mul(H.e(h), basis[a]))) for a in range(r)] for h in range(H.dim)]
    return {
        "name": name or f"trivial representation of {H.name}",
        "field": F.descriptor(),
        "H": H_block,
        "A": {"name": "H^L", "dim": r, "mult": _ser(F, mult), "unit": _ser(F, coords(H.one()))},
        "rho": _ser(F, rho),
        "f": "trivial",
        "K": "minimal",
        "M": "M=E",
    }


def smash_product(A_block: dict, H_block: dict, action, field="Q", name: str = None, K="minimal") -> dict:
    """A # H with action[h][a] the coordinates of e_h·e_a, the trivial cocycle and M = E."""
    F = field_from_descriptor(field)
    return {
        "name": name or f"{A_block.get('name', 'A')} # {H_block.get('name', 'H')}",
        "field": F.descriptor(),
        "H": H_block,
        "A": A_block,
        "rho": _ser(F, action),
        "f": "trivial",
        "K": K if K == "minimal" else _ser(F, K),
        "M": "M=E",
    }


def crossed_product(A_block: dict, H_block: dict, action, f, f_inv=None, field="Q", name: str = None,
                    K="minimal") -> dict:
    """A ×_ρ^f H with an explicit cocycle; f_inv is solved for at load time when omitted."""
    payload = smash_product(A_block, H_block, action, field, name, K)
    F = field_from_descriptor(field)
    payload["f"] = _ser(F, f)
    if f_inv is not None:
        payload["f_inv"] = _ser(F, f_inv)
    return payload


# bundled fixtures

def sign_action(n: int = 2) -> list:
    """C_2 on k[x]/(x^n): g·x^i = (−1)^i x^i."""
    one = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    sign = [[(-1) ** i if i == j else 0 for j in range(n)] for i in range(n)]
    return [one, sign]


def fixture_payloads() -> dict:
    """Every bundled fixture by file stem."""
    qc2 = group_algebra(2)
    trivial_c2 = [[[1, 0], [0, 1]], [[1, 0], [0, 1]]]
    out = {
        "qc2": trivial_representation(qc2, name="qc2"),
        "f2c2": trivial_representation(group_algebra(2, field={"Fp": 2}), field={"Fp": 2}, name="f2c2"),
        "qxq": trivial_representation(product_algebra(2), name="qxq"),
        "pair_groupoid2": trivial_representation(pair_groupoid(2), name="pair_groupoid2"),
        "qc2_smash": smash_product(truncated_polynomial(2), qc2, sign_action(2), name="qc2_smash"),
        "twisted_c2": crossed_product(
            quadratic_algebra(2), qc2, trivial_c2,
            f=[[[1, 0], [1, 0]], [[1, 0], [0, 1]]],
            f_inv=[[[1, 0], [1, 0]], [[1, 0], [0, "1/2"]]],
            name="twisted_c2",
        ),
    }
    broken = trivial_representation(qc2, name="broken_eps")
    broken["H"] = dict(broken["H"], counit=["1", "0"])
    out["broken_eps"] = broken
    out["noninvertible_f"] = crossed_product(
        {"name": "Q", "dim": 1, "mult": [[["1"]]], "unit": ["1"]}, qc2, [[["1"]], [["1"]]],
        f=[[[1], [1]], [[1], [0]]], name="noninvertible_f",
    )
    q3 = product_algebra(3)
    swap = [[[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[0, 1, 0], [1, 0, 0], [0, 0, 1]]]
    out["unstable_K"] = smash_product({"name": "Q^3", "dim": 3, "mult": q3["mult"], "unit": q3["unit"]}, qc2, swap,
                                      name="unstable_K", K=[[1, 1, 1], [1, 0, 0]])
    return out


def write_fixtures(folder) -> list:
    return [dump_instance(payload, f"{folder}/{stem}.json") for stem, payload in fixture_payloads().items()]


if __name__ == "__main__":
    from tools.set_runtime import resolve_path

    logging.basicConfig(level=logging.INFO)
    for path in write_fixtures(resolve_path("data/fixtures")):
        print(path)
