"""Datum files: JSON schema for the torus/group/cocycle input, the optional
graded Hecke section, validation, and canonical serialization.

Rationals are serialized as "p/q" strings so exactness survives round trips.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .finite_group import (AffineLatticeMap, Cocycle, CocycleError,
                           FiniteActionGroup, GroupError, generate_group,
                           trivial_group)
from .graded_hecke import GradedHeckeAlgebra, HeckeError, RootDatum
from .homology import BernsteinDatum
from .scalars import format_rat, parse_rat


class DatumError(ValueError):
    pass


@dataclass
class DatumFile:
    """A validated input datum plus its canonical serialized form."""

    rank: int
    group: FiniteActionGroup
    cocycle: Cocycle
    variant: str
    hecke: RootDatum | None
    raw: dict

    def bernstein(self) -> BernsteinDatum:
        return BernsteinDatum(self.group, self.cocycle, self.variant)

    def hecke_algebra(self) -> GradedHeckeAlgebra:
        if self.hecke is None:
            raise DatumError("datum has no hecke section")
        return GradedHeckeAlgebra(self.hecke)

    def canonical_json(self) -> str:
        return json.dumps(self.raw, sort_keys=True, indent=2) + "\n"


def _parse_map(entry: dict) -> AffineLatticeMap:
    try:
        matrix = entry["matrix"]
        translation = [parse_rat(str(t)) for t in entry.get(
            "translation", ["0"] * len(matrix))]
        return AffineLatticeMap(matrix, translation)
    except (KeyError, ValueError, GroupError) as exc:
        raise DatumError(f"bad generator: {exc}") from exc


def _build_cocycle(group: FiniteActionGroup, spec: dict | None,
                   generator_indices: list[int], strict: bool = True) -> Cocycle:
    if spec is None or spec.get("type", "trivial") == "trivial":
        return Cocycle.trivial(group)
    kind = spec.get("type")
    try:
        if kind == "table":
            entries = [(int(i), int(j), parse_rat(str(v)))
                       for i, j, v in spec["entries"]]
            return Cocycle.from_entries(group, entries, strict=strict)
        if kind == "bilinear":
            return Cocycle.bilinear(group, generator_indices,
                                    spec["matrix"], int(spec["mod"]))
    except CocycleError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise DatumError(f"bad cocycle spec: {exc}") from exc
    raise DatumError(f"unknown cocycle type {kind!r}")


def load_datum(data: dict, max_group_order: int = 10000,
               strict_cocycle: bool = True,
               k_override: str | None = None) -> DatumFile:
    """Validate a datum dictionary; raises DatumError / CocycleError on bad
    input (the CLI maps these to exit code 2)."""
    if "rank" not in data:
        raise DatumError("datum needs a rank")
    rank = int(data["rank"])
    gen_entries = data.get("generators", [])
    generators = [_parse_map(e) for e in gen_entries]
    if any(g.rank != rank for g in generators):
        raise DatumError("generator rank mismatch")
    try:
        group = (generate_group(generators, max_group_order) if generators
                 else trivial_group(rank))
    except GroupError as exc:
        raise DatumError(str(exc)) from exc
    gen_indices = [group.element_index(g) for g in generators]
    cocycle = _build_cocycle(group, data.get("cocycle"), gen_indices,
                             strict_cocycle)
    variant = data.get("variant", "algebraic")
    if variant not in ("algebraic", "smooth-compact"):
        raise DatumError(f"unknown variant {variant!r}")

    hecke = None
    if "hecke" in data:
        hecke = _load_hecke(data["hecke"], max_group_order, k_override)
    return DatumFile(rank, group, cocycle, variant, hecke, data)


def _load_hecke(section: dict, max_group_order: int,
                k_override: str | None) -> RootDatum:
    try:
        simple_roots = [tuple(parse_rat(str(v)) for v in a)
                        for a in section["simple_roots"]]
        coroots = [tuple(parse_rat(str(v)) for v in a)
                   for a in section["coroots"]]
        rank = len(simple_roots[0])
        k_spec = section.get("k", ["1"] * len(simple_roots))
        if k_override is not None:
            k_spec = ("formal" if k_override == "formal"
                      else [k_override] * len(simple_roots))
        k_values = (None if k_spec == "formal"
                    else tuple(parse_rat(str(v)) for v in k_spec))
        gens = [_parse_map(e) for e in section.get("gamma_generators", [])]
        gamma = (generate_group(gens, max_group_order) if gens
                 else trivial_group(rank))
        gamma_indices = [gamma.element_index(g) for g in gens]
        gamma_cocycle = _build_cocycle(gamma, section.get("gamma_cocycle"),
                                       gamma_indices)
        return RootDatum(rank, simple_roots, coroots, k_values, gamma,
                         gamma_cocycle)
    except (KeyError, ValueError, IndexError) as exc:
        raise DatumError(f"bad hecke section: {exc}") from exc
    except HeckeError as exc:
        raise DatumError(f"bad hecke section: {exc}") from exc


def load_datum_file(path: str, **kwargs) -> DatumFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DatumError(f"cannot read datum file {path}: {exc}") from exc
    return load_datum(data, **kwargs)


def parse_orbit(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(parse_rat(part) for part in text.split(","))
    except ValueError as exc:
        raise DatumError(f"bad orbit point {text!r}: {exc}") from exc


def format_point(point) -> list[str]:
    return [format_rat(Fraction(c) % 1) for c in point]
