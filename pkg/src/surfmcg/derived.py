"""Curves obtained as images of chain curves under twist products.

* B_k = (Dbar_k Delta_{2g-k})(A_{2g+1-k}) for k = 0..g, where
  Delta_k = t_{A_1} ... t_{A_k} and Dbar_k = t_{A_k} ... t_{A_1}.
* c'_r = (Delta_{2g+1} ... Delta_1)(c_r) for g = 2r; it bounds the chain
  A_{g+2}, ..., A_{2g+1}.
* D_0..D_{2h} is the genus-2h B-family of the chain A_1..A_{4h+1}, sheared by
  psi = t_gamma t_u^-1 with u = b_{h+1} ... b_{2h} and gamma = (u a'_{2h+1})^-1,
  which moves it off A_{4h+2}, ..., A_{2g}, a_g while keeping E = c_h a_{2h+1}
  in the required position.
* B'_k (genus 2n) is the B-family of Sigma_{2n}^1, included in any larger surface
  through the first 2n handles.
"""
from __future__ import annotations

from functools import lru_cache

from . import atlas, mcg
from .atlas import SurfaceSpec
from .words import Letters, cyclic_reduce, free_reduce, inverse


def _A(spec: SurfaceSpec, k: int) -> mcg.MappingClass:
    return mcg.word_twist(spec, atlas.curve_word(atlas.AtlasName("A", k), spec))


def delta(spec: SurfaceSpec, k: int) -> mcg.MappingClass:
    """Delta_k = t_{A_1} t_{A_2} ... t_{A_k}."""
    return mcg.product([_A(spec, j) for j in range(1, k + 1)], spec)


def delta_bar(spec: SurfaceSpec, k: int) -> mcg.MappingClass:
    """Dbar_k = t_{A_k} ... t_{A_1}."""
    return mcg.product([_A(spec, j) for j in range(k, 0, -1)], spec)


def _b_family_on(spec: SurfaceSpec, gp: int) -> list[Letters]:
    out = []
    for k in range(gp + 1):
        phi = mcg.compose(delta_bar(spec, k), delta(spec, 2 * gp - k))
        out.append(cyclic_reduce(phi.apply(atlas.curve_word(atlas.AtlasName("A", 2 * gp + 1 - k), spec))))
    return out


@lru_cache(maxsize=None)
def b_family(spec: SurfaceSpec, g: int) -> tuple:
    return tuple(_b_family_on(spec, g))


@lru_cache(maxsize=None)
def c_prime(spec: SurfaceSpec) -> Letters:
    g = spec.genus
    r = g // 2
    phi = mcg.product([delta(spec, k) for k in range(2 * g + 1, 0, -1)], spec)
    return cyclic_reduce(phi.apply(atlas.curve_word(atlas.AtlasName("c", r), spec)))


def d_shear(spec: SurfaceSpec, h1: int) -> mcg.MappingClass:
    u = tuple(atlas.B(i) for i in range(h1 + 1, 2 * h1 + 1))
    ap = atlas.curve_word(atlas.AtlasName("a'", 2 * h1 + 1), spec)
    gamma = cyclic_reduce(inverse(free_reduce(u + ap)))
    return mcg.compose(mcg.word_twist(spec, gamma, 1), mcg.word_twist(spec, u, -1))


@lru_cache(maxsize=None)
def d_family(spec: SurfaceSpec, h1: int) -> tuple:
    psi = d_shear(spec, h1)
    return tuple(cyclic_reduce(psi.apply(w)) for w in _b_family_on(spec, 2 * h1))


@lru_cache(maxsize=None)
def b_prime_family(n2: int) -> tuple:
    """B'_0..B'_{n2} as words in a_1..b_{n2}; valid on every surface of genus >= n2."""
    return b_family(SurfaceSpec(n2, 1), n2)
