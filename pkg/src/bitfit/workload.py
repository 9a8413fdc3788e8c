"""Linked-list lifecycle and churn workloads plus address-geometry metrics.

The lifecycle run builds a list of random-valued nodes, traverses it,
sorts it by value, frees every node in sorted order, rebuilds the list,
and traverses again.  Under a free-list allocator the rebuild inherits the
scrambled free order; under the bitmap tree it comes back in address
order.  Locality is measured on the traversal offset sequence with three
proxies: the fraction of steps that advance by exactly one slot, the
number of distinct cache lines touched, and the mean absolute gap.
"""

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .pool import Pool

GENERATOR_NAME = "mt19937"  # random.Random; identity recorded in reports

DEFAULT_LINE_SIZE = 64


@dataclass
class ListNode:
    offset: int
    value: int
    next: Optional["ListNode"] = None


@dataclass(frozen=True)
class LocalityReport:
    sequential_fraction: float
    distinct_lines: int
    mean_abs_gap: float
    traversal_len: int


@dataclass(frozen=True)
class LifecycleReport:
    policy_kind: str
    node_count: int
    slot_size: int
    seed: int
    generator: str
    first_traversal: LocalityReport
    second_traversal: LocalityReport


def sequential_fraction(offsets: Sequence[int], slot_size: int) -> float:
    """Fraction of consecutive pairs that advance by exactly one slot."""
    if len(offsets) < 2:
        return 1.0
    hits = sum(
        1 for a, b in zip(offsets, offsets[1:]) if b - a == slot_size
    )
    return hits / (len(offsets) - 1)


def distinct_lines(offsets: Sequence[int], line_size: int = DEFAULT_LINE_SIZE) -> int:
    """Number of distinct cache lines the offsets fall into."""
    if line_size < 1:
        raise ValueError("line_size must be >= 1")
    return len({off // line_size for off in offsets})


def mean_abs_gap(offsets: Sequence[int]) -> float:
    """Mean absolute byte distance between consecutive offsets."""
    if len(offsets) < 2:
        return 0.0
    total = sum(abs(b - a) for a, b in zip(offsets, offsets[1:]))
    return total / (len(offsets) - 1)


def measure(offsets: Sequence[int], slot_size: int,
            line_size: int = DEFAULT_LINE_SIZE) -> LocalityReport:
    return LocalityReport(
        sequential_fraction=sequential_fraction(offsets, slot_size),
        distinct_lines=distinct_lines(offsets, line_size),
        mean_abs_gap=mean_abs_gap(offsets),
        traversal_len=len(offsets),
    )


def _build_list(pool: Pool, count: int, rng: random.Random):
    """Append ``count`` nodes with values in [0, 100]; returns (head, nodes)."""
    head = None
    tail = None
    nodes = []
    for _ in range(count):
        node = ListNode(offset=pool.acquire(), value=rng.randint(0, 100))
        if tail is None:
            head = node
        else:
            tail.next = node
        tail = node
        nodes.append(node)
    return head, nodes


def _traversal_offsets(head: Optional[ListNode]):
    offsets = []
    node = head
    while node is not None:
        offsets.append(node.offset)
        node = node.next
    return offsets


def run_list_lifecycle(policy_kind: str, node_count: int, slot_size: int,
                       seed: int, line_size: int = DEFAULT_LINE_SIZE) -> LifecycleReport:
    """Populate / traverse / sort / clear / repopulate / traverse."""
    if node_count < 1:
        raise ValueError("node_count must be >= 1")
    rng = random.Random(seed)
    pool = Pool(slot_size, node_count, policy_kind)

    head, nodes = _build_list(pool, node_count, rng)
    first = measure(_traversal_offsets(head), slot_size, line_size)

    # stable sort by value keeps insertion order among equal values,
    # making the free order fully deterministic
    nodes.sort(key=lambda n: n.value)
    for node in nodes:
        pool.release(node.offset)

    head, _ = _build_list(pool, node_count, rng)
    second = measure(_traversal_offsets(head), slot_size, line_size)

    return LifecycleReport(
        policy_kind=policy_kind,
        node_count=node_count,
        slot_size=slot_size,
        seed=seed,
        generator=GENERATOR_NAME,
        first_traversal=first,
        second_traversal=second,
    )


def run_random_churn(policy_kind: str, capacity: int, target_fill: float,
                     ops: int, seed: int, slot_size: int = 32,
                     line_size: int = DEFAULT_LINE_SIZE) -> LocalityReport:
    """Churn the pool around ``target_fill`` and report on a fresh acquire batch.

    First fills to round(capacity * target_fill), then runs ``ops`` steps:
    below target acquire, at or above target release a uniformly random
    live slot.  The report covers the offsets of a final batch that
    acquires all remaining free slots; with ops == 0 it covers the initial
    fill instead.
    """
    if not 0.0 <= target_fill < 1.0:
        raise ValueError("target_fill must be in [0, 1)")
    if capacity < 1:
        raise ValueError("capacity must be >= 1")
    rng = random.Random(seed)
    pool = Pool(slot_size, capacity, policy_kind)

    target = round(capacity * target_fill)
    live = [pool.acquire() for _ in range(target)]
    if ops == 0:
        return measure(live, slot_size, line_size)

    for _ in range(ops):
        if len(live) < target or not live:
            live.append(pool.acquire())
        else:
            victim = rng.randrange(len(live))
            live[victim], live[-1] = live[-1], live[victim]
            pool.release(live.pop())

    batch = [pool.acquire() for _ in range(capacity - len(live))]
    return measure(batch, slot_size, line_size)
