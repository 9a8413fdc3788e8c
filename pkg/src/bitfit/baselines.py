"""Baseline allocator policies: LIFO/FIFO free lists and a linear-scan bitmap.

The free lists model the bucketed-arena behavior that randomizes addresses
over time; the linear bitmap is the brute-force first-fit scan used as the
correctness oracle for the tree allocator.
"""

from collections import deque

from .errors import DoubleFree, OutOfRange, PoolExhausted


class FreeListPolicy:
    """Fixed-size free-list allocator, LIFO or FIFO reuse order.

    Fresh pools allocate by bumping ``next_fresh`` so first use hands out
    slots in address order; once slots have been returned, the free list
    takes priority and reuse order depends only on free order.
    """

    def __init__(self, capacity: int, order: str = "lifo"):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        if order not in ("lifo", "fifo"):
            raise ValueError(f"unknown order {order!r}")
        self.capacity = capacity
        self.order = order
        self.free_sequence = deque()
        self._free_set = set()
        self.next_fresh = 0

    @property
    def free_count(self) -> int:
        return self.capacity - self.next_fresh + len(self.free_sequence)

    def allocate(self) -> int:
        if self.free_sequence:
            if self.order == "lifo":
                slot = self.free_sequence.pop()
            else:
                slot = self.free_sequence.popleft()
            self._free_set.discard(slot)
            return slot
        if self.next_fresh < self.capacity:
            slot = self.next_fresh
            self.next_fresh += 1
            return slot
        raise PoolExhausted("all slots are in use")

    def allocate_with_hint(self, hint: int) -> int:
        # free lists have no notion of locality; the hint is ignored
        if not 0 <= hint < self.capacity:
            raise OutOfRange(f"hint {hint} not in [0, {self.capacity})")
        return self.allocate()

    def release(self, slot: int) -> None:
        if not 0 <= slot < self.capacity:
            raise OutOfRange(f"slot {slot} not in [0, {self.capacity})")
        if slot >= self.next_fresh or slot in self._free_set:
            raise DoubleFree(f"slot {slot} is not currently allocated")
        self.free_sequence.append(slot)
        self._free_set.add(slot)

    def is_slot_free(self, slot: int) -> bool:
        if not 0 <= slot < self.capacity:
            raise OutOfRange(f"slot {slot} not in [0, {self.capacity})")
        return slot >= self.next_fresh or slot in self._free_set


class LinearBitmapPolicy:
    """First-fit over a flat occupancy byte array, scanned left to right.

    Worst-case linear per allocation; exists as the independent oracle the
    tree allocator must agree with slot-for-slot.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self.leaf_bits = bytearray(capacity)
        self.free_count = capacity

    def allocate(self) -> int:
        slot = self.leaf_bits.find(0)
        if slot < 0:
            raise PoolExhausted("all slots are in use")
        self.leaf_bits[slot] = 1
        self.free_count -= 1
        return slot

    def allocate_with_hint(self, hint: int) -> int:
        # no locality structure to exploit; behaves as plain allocate
        if not 0 <= hint < self.capacity:
            raise OutOfRange(f"hint {hint} not in [0, {self.capacity})")
        return self.allocate()

    def release(self, slot: int) -> None:
        if not 0 <= slot < self.capacity:
            raise OutOfRange(f"slot {slot} not in [0, {self.capacity})")
        if self.leaf_bits[slot] == 0:
            raise DoubleFree(f"slot {slot} is already free")
        self.leaf_bits[slot] = 0
        self.free_count += 1

    def is_slot_free(self, slot: int) -> bool:
        if not 0 <= slot < self.capacity:
            raise OutOfRange(f"slot {slot} not in [0, {self.capacity})")
        return self.leaf_bits[slot] == 0
