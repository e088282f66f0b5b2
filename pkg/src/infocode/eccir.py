"""Collections of component codes for informed receivers and their distance profiles."""

from __future__ import annotations

import csv
import io
import json
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .code import (
    DistanceConfig,
    DistanceResult,
    GeneratorMatrix,
    KnownDistanceEntry,
    LinearCode,
    apply_permutation,
    known_distance,
    min_distance,
    rank,
    row_space_equal,
    singleton_bound,
    stack,
)

_INT_LIST = re.compile(r"\[(?:\s*-?\d+\s*,)*\s*-?\d+\s*\]")


def compact_dumps(obj) -> str:
    """Indented JSON with flat integer lists kept on one line."""
    return _INT_LIST.sub(lambda m: json.dumps(json.loads(m.group(0))), json.dumps(obj, indent=1))


class InvalidEccir(ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UndecidableError(ValueError):
    """Raised when a question needs exact distances the profile does not have."""


@dataclass(frozen=True, eq=False)
class Eccir:
    """L component generator matrices of shape (k, n) over F_q.

    ``provenance`` is a JSON-friendly dict. Keys understood by the library:
    ``construction``, ``params``, ``nonzeroes`` (per-component cyclic nonzero
    sets), ``equivalences`` (list of ``{"source", "target", "multiplier" |
    "permutation"}``) and ``product`` (``{"subset", "inner"}``).
    """

    components: tuple[GeneratorMatrix, ...]
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise InvalidEccir("an ECCIR needs at least one component")
        shapes = {(c.k, c.n, c.q) for c in comps}
        if len(shapes) != 1:
            raise InvalidEccir(f"components disagree on (k, n, q): {sorted(shapes)}")

    @property
    def L(self) -> int:
        return len(self.components)

    @property
    def k(self) -> int:
        return self.components[0].k

    @property
    def n(self) -> int:
        return self.components[0].n

    @property
    def q(self) -> int:
        return self.components[0].q

    def __repr__(self):
        name = self.provenance.get("construction", "eccir")
        return f"Eccir({name}: L={self.L}, k={self.k}, n={self.n}, q={self.q})"

    def generator(self) -> GeneratorMatrix:
        """G = (G_1; ...; G_L)."""
        return stack(self.components)

    def select(self, indices) -> Eccir:
        """Sub-collection with the given 1-based component indices, renumbered from 1."""
        indices = list(indices)
        prov = {k: v for k, v in self.provenance.items() if k not in ("equivalences", "product", "nonzeroes")}
        prov["selected_from"] = {"construction": self.provenance.get("construction"), "indices": indices}
        if "nonzeroes" in self.provenance:
            prov["nonzeroes"] = [self.provenance["nonzeroes"][i - 1] for i in indices]
        return Eccir(tuple(self.components[i - 1] for i in indices), prov)

    def to_json(self) -> dict:
        return {
            "L": self.L,
            "k": self.k,
            "n": self.n,
            "q": self.q,
            "components": [c.rows.tolist() for c in self.components],
            "provenance": self.provenance,
        }

    def dumps(self) -> str:
        return compact_dumps(self.to_json())

    @classmethod
    def from_json(cls, obj) -> Eccir:
        if isinstance(obj, str):
            obj = json.loads(obj)
        q = int(obj["q"])
        comps = tuple(GeneratorMatrix(rows, q) for rows in obj["components"])
        e = cls(comps, dict(obj.get("provenance", {})))
        if (e.L, e.k, e.n) != (obj["L"], obj["k"], obj["n"]):
            raise InvalidEccir("header does not match the component matrices")
        return e


def all_subsets(L: int) -> list[tuple[int, ...]]:
    """Nonempty subsets of {1..L}, by size then lexicographically."""
    return [s for size in range(1, L + 1) for s in combinations(range(1, L + 1), size)]


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    full_rank: tuple[bool, ...]
    independent: bool
    offending_subset: tuple[int, ...] | None
    nonzeroes_disjoint: bool | None  # cyclic cross-check, None when not cyclic
    kl_fits: bool


def eccir_validate(e: Eccir, strict: bool = False) -> ValidationReport:
    """Full-rank components, linear independence, and kL <= n.

    For cyclic constructions the rank verdict is cross-checked against
    disjointness of the nonzero sets.
    """
    full = tuple(rank(c) == e.k for c in e.components)
    offending = None
    for s in all_subsets(e.L):
        if rank(stack([e.components[i - 1] for i in s])) < e.k * len(s):
            offending = s
            break
    independent = offending is None
    disjoint = None
    nz = e.provenance.get("nonzeroes")
    if nz is not None:
        sets = [set(t) for t in nz]
        disjoint = sum(len(t) for t in sets) == len(set().union(*sets))
        if disjoint != independent:
            raise AssertionError("rank test and nonzero-set disjointness disagree")
    report = ValidationReport(all(full) and independent and e.k * e.L <= e.n, full, independent,
                              offending, disjoint, e.k * e.L <= e.n)
    if strict and not report.valid:
        why = f"dependent subset {offending}" if offending else "rank-deficient component or kL > n"
        raise InvalidEccir(f"invalid ECCIR: {why}", report)
    return report


def _cyclic_spec(e: Eccir, subset):
    nz = e.provenance.get("nonzeroes")
    if nz is None:
        return None
    from .cyclic import CyclicCodeSpec

    return CyclicCodeSpec(e.n, e.q, tuple(i for s in subset for i in nz[s - 1]))


def subcode(e: Eccir, subset) -> LinearCode:
    """C_S-bar: the sum of the components indexed by ``subset`` (1-based)."""
    subset = tuple(sorted(set(subset)))
    if not subset:
        raise ValueError("subset must be nonempty")
    if subset[0] < 1 or subset[-1] > e.L:
        raise ValueError(f"subset {subset} out of range 1..{e.L}")
    gen = stack([e.components[i - 1] for i in subset])
    product = e.provenance.get("product")
    inner = None
    if product is not None and tuple(product["subset"]) == subset:
        from .cyclic import CyclicCodeSpec, generator_matrix_of

        spec = CyclicCodeSpec.from_json(product["inner"])
        inner = LinearCode(generator_matrix_of(spec), cyclic=spec)
    return LinearCode(gen, cyclic=_cyclic_spec(e, subset), product_inner=inner)


@dataclass(frozen=True)
class ProfileEntry:
    subset: tuple[int, ...]
    dim: int
    distance: DistanceResult
    singleton: int
    d_star: KnownDistanceEntry | None
    reused_from: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        d = {
            "subset": list(self.subset),
            "dim": self.dim,
            "distance": self.distance.to_json(),
            "singleton": self.singleton,
            "d_star": None if self.d_star is None else {"low": self.d_star.low, "high": self.d_star.high},
        }
        if self.reused_from is not None:
            d["reused_from"] = list(self.reused_from)
        return d


@dataclass(frozen=True)
class DistanceProfile:
    L: int
    n: int
    q: int
    entries: tuple[ProfileEntry, ...]

    def __getitem__(self, subset) -> ProfileEntry:
        subset = tuple(sorted(subset))
        for e in self.entries:
            if e.subset == subset:
                return e
        raise KeyError(subset)

    def by_size(self) -> dict[int, tuple[int, int]]:
        """For each |S-bar|: (min lower bound, min upper bound) over subsets of that size."""
        out = {}
        for e in self.entries:
            s = len(e.subset)
            lo, hi = out.get(s, (e.distance.lower, e.distance.upper))
            out[s] = (min(lo, e.distance.lower), min(hi, e.distance.upper))
        return out

    def to_json(self) -> list:
        return [e.to_json() for e in self.entries]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["side_info_size", "decoded_subset", "code", "distance", "method", "singleton", "d_star"])
        for e in self.entries:
            w.writerow([
                self.L - len(e.subset),
                " ".join(map(str, e.subset)),
                f"[{self.n},{e.dim},{e.distance}]",
                str(e.distance),
                e.distance.method,
                e.singleton,
                "" if e.d_star is None else str(e.d_star),
            ])
        return buf.getvalue()


def _equivalence_perm(eq, n):
    if "multiplier" in eq:
        from .cyclic import multiplier_permutation

        return multiplier_permutation(n, int(eq["multiplier"]))
    return np.asarray(eq["permutation"])


def distance_profile(e: Eccir, config: DistanceConfig | None = None,
                     use_equivalences: bool = False) -> DistanceProfile:
    """Distance of every subcode C_S-bar, S-bar nonempty.

    With ``use_equivalences`` the permutation equivalences recorded in the
    provenance are re-verified and each class is computed once.
    """
    config = config or DistanceConfig()
    subsets = all_subsets(e.L)
    codes = {s: subcode(e, s) for s in subsets}
    reuse: dict[tuple, tuple] = {}
    if use_equivalences:
        for eq in e.provenance.get("equivalences", []):
            src, tgt = tuple(sorted(eq["source"])), tuple(sorted(eq["target"]))
            if tgt in reuse or src == tgt:
                continue
            root = reuse.get(src, src)
            moved = apply_permutation(codes[src].gen, _equivalence_perm(eq, e.n))
            if row_space_equal(moved, codes[tgt].gen):
                reuse[tgt] = root
    todo = [s for s in subsets if s not in reuse]

    def job(s):
        return min_distance(codes[s], config)

    if config.threads > 1 and len(todo) > 1:
        inner = DistanceConfig(config.exhaustive_dim_limit, config.sample_trials, config.seed, 1)
        with ThreadPoolExecutor(config.threads) as ex:
            results = dict(zip(todo, ex.map(lambda s: min_distance(codes[s], inner), todo)))
    else:
        results = {s: job(s) for s in todo}
    entries = []
    for s in subsets:
        dim = e.k * len(s)
        src = reuse.get(s)
        dist = results[src if src else s]
        entries.append(ProfileEntry(s, dim, dist, singleton_bound(e.n, dim),
                                    known_distance(e.n, dim) if e.q == 2 else None, src))
    return DistanceProfile(e.L, e.n, e.q, tuple(entries))


def is_mdsir(e: Eccir, profile: DistanceProfile | None = None) -> bool:
    """Every subcode meets the Singleton bound n - k|S-bar| + 1 with equality."""
    profile = profile or distance_profile(e)
    if not all(x.distance.is_exact for x in profile.entries):
        raise UndecidableError("profile has non-exact distances")
    return all(x.distance.value == x.singleton for x in profile.entries)


def group_messages(e: Eccir, k0: int) -> Eccir:
    """Merge consecutive blocks of k0 components into one (L0 = L / k0)."""
    if k0 < 1 or e.L % k0:
        raise ValueError(f"k0 = {k0} does not divide L = {e.L}")
    comps = tuple(stack(e.components[m * k0:(m + 1) * k0]) for m in range(e.L // k0))
    prov = {"construction": "grouped", "params": {"k0": k0}, "base": e.provenance}
    nz = e.provenance.get("nonzeroes")
    if nz is not None:
        prov["nonzeroes"] = [sorted(i for t in nz[m * k0:(m + 1) * k0] for i in t) for m in range(e.L // k0)]
    return Eccir(comps, prov)


def dbt_guaranteed_bounds(d: int, k: int, L: int) -> dict[int, int]:
    """Guaranteed distance max(d - k|S-bar|, 0) for |S-bar| = 1..L of the generator-split baseline."""
    return {s: max(d - k * s, 0) for s in range(1, L + 1)}


def dbt_baseline_split(A: GeneratorMatrix, k: int, L: int, d: int | None = None,
                       config: DistanceConfig | None = None) -> tuple[Eccir, dict[int, int]]:
    """Split the parity part of a systematic [n + kL, kL, d] generator A = [I | G] into L blocks.

    ``d`` is computed from A when not given.
    """
    kl = k * L
    if A.k != kl:
        raise ValueError(f"A has {A.k} rows, expected kL = {kl}")
    if not np.array_equal(A.rows[:, :kl], np.eye(kl, dtype=np.int64)):
        raise ValueError("A is not systematic: leading block is not the identity")
    G = A.rows[:, kl:]
    if d is None:
        d = min_distance(LinearCode(A), config).lower
    comps = tuple(GeneratorMatrix(G[i * k:(i + 1) * k], A.q) for i in range(L))
    e = Eccir(comps, {"construction": "dbt-split", "params": {"k": k, "L": L, "d": d}})
    return e, dbt_guaranteed_bounds(d, k, L)
