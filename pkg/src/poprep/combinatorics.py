"""Exact finite combinatorics on identifier sets.

Set partitions in canonical form, the permutation subgroup that respects a
partition (permuting individuals within blocks only), and the bijections
between two partitioned sets that carry blocks onto blocks.  Everything is
enumerated exactly and deterministically; configured bounds turn runaway
enumerations into explicit errors instead of silent truncation.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from functools import lru_cache
from typing import Iterable

from .errors import DomainMismatchError, SizeLimitError

MAX_PARTITION_GROUND = 6
MAX_GROUP_ORDER = 100_000
MAX_BIJECTION_COUNT = 100_000


def ident_key(x):
    """Deterministic sort key for opaque identifiers of possibly mixed type."""
    return (type(x).__name__, x)


class Partition:
    """A partition of a finite identifier set into disjoint nonempty blocks.

    Canonical storage: each block is sorted, and blocks are ordered by their
    least element, so structurally equal partitions compare and hash equal.
    """

    __slots__ = ("blocks", "ground_set", "_block_index")

    def __init__(self, blocks: Iterable[Iterable]):
        canon = []
        seen: set = set()
        for block in blocks:
            block = tuple(sorted(set(block), key=ident_key))
            if not block:
                raise ValueError("partition blocks must be nonempty")
            overlap = seen.intersection(block)
            if overlap:
                raise ValueError(f"partition blocks overlap on {sorted(overlap, key=ident_key)!r}")
            seen.update(block)
            canon.append(block)
        canon.sort(key=lambda b: ident_key(b[0]))
        self.blocks = tuple(canon)
        self.ground_set = frozenset(seen)
        self._block_index = {x: i for i, b in enumerate(canon) for x in b}

    @classmethod
    def singletons(cls, ground_set) -> "Partition":
        """The finest partition: every identifier alone in its block."""
        return cls([[x] for x in ground_set])

    @classmethod
    def single_block(cls, ground_set) -> "Partition":
        """The coarsest partition: one block holding every identifier."""
        ground_set = tuple(ground_set)
        return cls([ground_set] if ground_set else [])

    def block_of(self, x):
        return self.blocks[self._block_index[x]]

    def same_block(self, x, y) -> bool:
        return self._block_index[x] == self._block_index[y]

    def block_sizes(self) -> tuple[int, ...]:
        """Multiset of block sizes, as a sorted tuple."""
        return tuple(sorted(len(b) for b in self.blocks))

    def is_finest(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def is_coarsest(self) -> bool:
        return len(self.blocks) <= 1

    def __eq__(self, other):
        return isinstance(other, Partition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        inner = ", ".join("{" + ", ".join(map(repr, b)) + "}" for b in self.blocks)
        return f"Partition({inner})"


class Bijection:
    """A bijection between two finite identifier sets."""

    __slots__ = ("mapping", "domain", "codomain", "_pairs")

    def __init__(self, mapping: dict):
        mapping = dict(mapping)
        domain = frozenset(mapping)
        codomain = frozenset(mapping.values())
        if len(codomain) != len(domain):
            raise ValueError("mapping is not injective")
        self.mapping = mapping
        self.domain = domain
        self.codomain = codomain
        self._pairs = tuple(sorted(mapping.items(), key=lambda kv: ident_key(kv[0])))

    def __call__(self, x):
        return self.mapping[x]

    def inverse(self) -> "Bijection":
        return type(self)({v: k for k, v in self.mapping.items()})

    def preserves_blocks(self, p: Partition, q: Partition) -> bool:
        """True iff this bijection maps every block of p onto a block of q."""
        if self.domain != p.ground_set or self.codomain != q.ground_set:
            return False
        for block in p.blocks:
            image = frozenset(self.mapping[x] for x in block)
            if image != frozenset(q.block_of(next(iter(image)))):
                return False
        return True

    def __eq__(self, other):
        return isinstance(other, Bijection) and self._pairs == other._pairs

    def __hash__(self):
        return hash(self._pairs)

    def __repr__(self):
        inner = ", ".join(f"{k!r}->{v!r}" for k, v in self._pairs)
        return f"{type(self).__name__}({inner})"


class Permutation(Bijection):
    """A bijection of a finite identifier set onto itself."""

    def __init__(self, mapping: dict):
        super().__init__(mapping)
        if self.domain != self.codomain:
            raise ValueError("permutation must map its domain onto itself")

    @classmethod
    def identity(cls, domain) -> "Permutation":
        return cls({x: x for x in domain})

    def compose(self, other: "Permutation") -> "Permutation":
        """(self . other)(x) = self(other(x))."""
        if self.domain != other.domain:
            raise DomainMismatchError("cannot compose permutations of different sets")
        return Permutation({x: self.mapping[other.mapping[x]] for x in self.domain})

    def inverse(self) -> "Permutation":
        return Permutation({v: k for k, v in self.mapping.items()})


def all_partitions(ground_set, max_size: int = MAX_PARTITION_GROUND) -> tuple[Partition, ...]:
    """Enumerate every set partition of ground_set, in canonical form.

    The result has exactly Bell(|ground_set|) entries and a deterministic
    order.  Raises SizeLimitError beyond max_size elements.
    """
    items = tuple(sorted(set(ground_set), key=ident_key))
    if len(items) > max_size:
        raise SizeLimitError(
            f"refusing to enumerate partitions of {len(items)} elements (bound {max_size})"
        )
    return _all_partitions_cached(items)


@lru_cache(maxsize=None)
def _all_partitions_cached(items: tuple) -> tuple[Partition, ...]:
    results: list[Partition] = []

    def extend(i: int, blocks: list[list]):
        if i == len(items):
            results.append(Partition(blocks))
            return
        x = items[i]
        for b in blocks:
            b.append(x)
            extend(i + 1, blocks)
            b.pop()
        blocks.append([x])
        extend(i + 1, blocks)
        blocks.pop()

    extend(0, [])
    return tuple(results)


def sym_group(tau: Partition, max_order: int = MAX_GROUP_ORDER) -> tuple[Permutation, ...]:
    """All permutations of tau's ground set that move individuals within their
    own block only.  The group order is the product of block-size factorials.
    """
    order = math.prod(math.factorial(len(b)) for b in tau.blocks)
    if order > max_order:
        raise SizeLimitError(f"group order {order} exceeds bound {max_order}")
    return _sym_group_cached(tau)


@lru_cache(maxsize=None)
def _sym_group_cached(tau: Partition) -> tuple[Permutation, ...]:
    per_block = [list(itertools.permutations(b)) for b in tau.blocks]
    perms = []
    for images in itertools.product(*per_block):
        mapping = {}
        for block, image in zip(tau.blocks, images):
            mapping.update(zip(block, image))
        perms.append(Permutation(mapping))
    return tuple(perms)


def count_block_bijections(p: Partition, q: Partition) -> int:
    """Number of block-preserving bijections between two partitioned sets."""
    if p.block_sizes() != q.block_sizes():
        return 0
    sizes = defaultdict(int)
    for b in p.blocks:
        sizes[len(b)] += 1
    return math.prod(
        math.factorial(k) * math.factorial(s) ** k for s, k in sizes.items()
    )


def relation_preserving_bijections(
    p: Partition, q: Partition, max_count: int = MAX_BIJECTION_COUNT
) -> tuple[Bijection, ...]:
    """All bijections between the ground sets of p and q carrying each block of
    p onto a block of q.  Empty iff the block-size multisets differ.
    """
    total = count_block_bijections(p, q)
    if total == 0:
        return ()
    if total > max_count:
        raise SizeLimitError(f"{total} block-preserving bijections exceed bound {max_count}")
    return _block_bijections_cached(p, q)


@lru_cache(maxsize=None)
def _block_bijections_cached(p: Partition, q: Partition) -> tuple[Bijection, ...]:
    by_size_p: dict[int, list] = defaultdict(list)
    by_size_q: dict[int, list] = defaultdict(list)
    for b in p.blocks:
        by_size_p[len(b)].append(b)
    for b in q.blocks:
        by_size_q[len(b)].append(b)

    per_size: list[list[dict]] = []
    for size in sorted(by_size_p):
        sources = by_size_p[size]
        maps_for_size: list[dict] = []
        for targets in itertools.permutations(by_size_q[size]):
            image_choices = [list(itertools.permutations(t)) for t in targets]
            for images in itertools.product(*image_choices):
                m: dict = {}
                for src, img in zip(sources, images):
                    m.update(zip(src, img))
                maps_for_size.append(m)
        per_size.append(maps_for_size)

    result = []
    for parts in itertools.product(*per_size):
        mapping: dict = {}
        for m in parts:
            mapping.update(m)
        result.append(Bijection(mapping))
    return tuple(result)


def partition_refines(p: Partition, q: Partition) -> bool:
    """True iff every block of p is contained in some block of q."""
    if p.ground_set != q.ground_set:
        raise DomainMismatchError("partitions compare only over the same ground set")
    for block in p.blocks:
        first = q._block_index[block[0]]
        if any(q._block_index[x] != first for x in block[1:]):
            return False
    return True


def partition_join(partitions: Iterable[Partition]) -> Partition:
    """Least partition coarser than every input (transitive closure of the
    union of the block relations)."""
    partitions = list(partitions)
    if not partitions:
        raise ValueError("join of no partitions is undefined")
    ground = partitions[0].ground_set
    for p in partitions[1:]:
        if p.ground_set != ground:
            raise DomainMismatchError("join requires a common ground set")

    parent = {x: x for x in ground}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in partitions:
        for block in p.blocks:
            root = find(block[0])
            for x in block[1:]:
                parent[find(x)] = root

    groups: dict = defaultdict(list)
    for x in ground:
        groups[find(x)].append(x)
    return Partition(groups.values())
