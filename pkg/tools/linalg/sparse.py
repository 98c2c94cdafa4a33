"""Sparse vectors as plain dicts mapping basis keys to nonzero scalars."""

from itertools import product
from typing import Dict, Hashable, Iterable, List, Sequence

Vector = Dict[Hashable, object]


def axpy(acc: Vector, vec: Vector, coef=1) -> Vector:
    """acc += coef * vec, in place. Zero entries are dropped."""
    if not coef:
        return acc
    for k, v in vec.items():
        c = acc.get(k)
        c = coef * v if c is None else c + coef * v
        if c:
            acc[k] = c
        else:
            acc.pop(k, None)
    return acc


def add_term(acc: Vector, key, coef) -> Vector:
    if not coef:
        return acc
    c = acc.get(key)
    c = coef if c is None else c + coef
    if c:
        acc[key] = c
    else:
        acc.pop(key, None)
    return acc


def scaled(vec: Vector, coef) -> Vector:
    if not coef:
        return {}
    out = {}
    for k, v in vec.items():
        c = coef * v
        if c:
            out[k] = c
    return out


def combine(terms: Iterable) -> Vector:
    """Sum of coef * vec over (coef, vec) pairs."""
    acc = {}
    for coef, vec in terms:
        axpy(acc, vec, coef)
    return acc


def sub(a: Vector, b: Vector) -> Vector:
    return axpy(dict(a), b, -1)


def tensor(vectors: Sequence[Vector], one=1) -> Vector:
    """Tensor product of vectors; keys of the result are tuples."""
    out = {(): one}
    for vec in vectors:
        nxt = {}
        for key, c in out.items():
            for k, v in vec.items():
                cv = c * v
                if cv:
                    nk = key + (k,)
                    prev = nxt.get(nk)
                    cv = cv if prev is None else prev + cv
                    if cv:
                        nxt[nk] = cv
                    else:
                        nxt.pop(nk, None)
        out = nxt
        if not out:
            return {}
    return out


def flatten_tensor(vec: Vector) -> Vector:
    """Concatenate tuple keys of a tensor whose factors are tuple-keyed."""
    out = {}
    for key, c in vec.items():
        add_term(out, tuple(x for part in key for x in part), c)
    return out


def apply_linear(vec: Vector, image_of) -> Vector:
    """Extend ``image_of(key) -> Vector`` linearly to ``vec``."""
    acc = {}
    for k, c in vec.items():
        axpy(acc, image_of(k), c)
    return acc


def multilinear(vectors: Sequence[Vector], image_of, one=1) -> Vector:
    """Extend ``image_of(*keys) -> Vector`` multilinearly."""
    acc = {}
    keyed = [list(v.items()) for v in vectors]
    for combo in product(*keyed):
        coef = one
        for _, c in combo:
            coef = coef * c
        if coef:
            axpy(acc, image_of(*(k for k, _ in combo)), coef)
    return acc


def dense(vec: Vector, keys: List, zero) -> list:
    return [vec.get(k, zero) for k in keys]
