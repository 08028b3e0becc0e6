"""Deliberate operator corruptions, used to show the checks are not vacuous.

A mutation is switched on for the current context only::

    with mutated("T1-reflection-sign"):
        report = daha_relations_check(p, 4)

Operators consult :func:`active`; the state lives in a ContextVar, so
threads and asyncio tasks never see each other's mutations.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar

MUTATIONS = {
    "T1-reflection-sign": "sign of the f[1/z] term of T1 flipped",
    "Y12-dropped-factor": "factor ab dropped from the multiplication term of the matrix entry Y12",
    "L-backward-sign": "sign of the A[1/z] f[z/q] term of the Askey-Wilson operator L flipped",
    "bessel-odd-sign": "sign of the odd part of the nonsymmetric Bessel function flipped",
    "jacobi-reflection-sign": "sign of the reflection term of the Jacobi Dunkl-Cherednik operator flipped",
}

_active: ContextVar[frozenset] = ContextVar("nsaw_mutations", default=frozenset())


def active(name: str) -> bool:
    return name in _active.get()


@contextmanager
def mutated(*names: str):
    unknown = set(names) - set(MUTATIONS)
    if unknown:
        raise KeyError(f"unknown mutation(s): {sorted(unknown)}")
    token = _active.set(_active.get() | frozenset(names))
    try:
        yield
    finally:
        _active.reset(token)
