"""Hierarchical occupancy bitmap with logarithmic allocate, free, and
hint-directed allocate.

The structure is a complete binary tree packed level-order into a flat
array of bits.  Leaves carry one occupancy bit per slot (0 free, 1 used);
every internal bit is the logical AND of its two children, so a subtree
whose root bit is 0 is guaranteed to contain at least one free slot, and
the root bit alone answers "is the pool full?" in O(1).  Children of node
``i`` live at ``2*i + 1`` and ``2*i + 2``.
"""

from .errors import DoubleFree, OutOfRange, PoolExhausted


def _next_pow2(n: int) -> int:
    p = 1
    while p < n:
        p <<= 1
    return p


class BitTree:
    """Occupancy tree over ``capacity`` slots.

    Capacities that are not powers of two are padded with phantom leaves
    that are permanently marked used, so the complete-tree index
    arithmetic never needs a bounds branch.

    ``op_steps`` counts every tree-bit read and write performed by
    ``allocate``, ``release``, and ``allocate_with_hint``; tests use the
    per-operation delta to verify the logarithmic step bound.  The
    read-only observers (``is_slot_free``, ``check_integrity``) do not
    count.
    """

    __slots__ = ("capacity", "n_leaves", "bits", "free_count", "op_steps")

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self.n_leaves = _next_pow2(capacity)
        self.bits = bytearray(2 * self.n_leaves - 1)
        self.free_count = capacity
        self.op_steps = 0
        base = self.n_leaves - 1
        for s in range(capacity, self.n_leaves):
            self.bits[base + s] = 1
        for i in range(base - 1, -1, -1):
            self.bits[i] = self.bits[2 * i + 1] & self.bits[2 * i + 2]

    # -- counted bit access -------------------------------------------

    def _read(self, idx: int) -> int:
        self.op_steps += 1
        return self.bits[idx]

    def _write(self, idx: int, value: int) -> None:
        self.op_steps += 1
        self.bits[idx] = value

    def _check_slot(self, slot: int, what: str = "slot") -> None:
        if not 0 <= slot < self.capacity:
            raise OutOfRange(f"{what} {slot} not in [0, {self.capacity})")

    # -- operations ----------------------------------------------------

    def allocate(self) -> int:
        """Mark the lowest-index free slot used and return it."""
        if self._read(0):
            raise PoolExhausted("all slots are in use")
        idx = 0
        base = self.n_leaves - 1
        while idx < base:
            left = 2 * idx + 1
            # parent bit is 0, so if the left child is full the right is free
            idx = left if self._read(left) == 0 else left + 1
        self._write(idx, 1)
        self.free_count -= 1
        self._propagate_up(idx)
        return idx - base

    def release(self, slot: int) -> None:
        """Mark ``slot`` free and clear ancestor bits until one is already 0."""
        self._check_slot(slot)
        idx = self.n_leaves - 1 + slot
        if self._read(idx) == 0:
            raise DoubleFree(f"slot {slot} is already free")
        self._write(idx, 0)
        self.free_count += 1
        while idx:
            idx = (idx - 1) >> 1
            if self._read(idx) == 0:
                break
            self._write(idx, 0)

    def allocate_with_hint(self, hint: int) -> int:
        """Allocate a free slot near ``hint`` by greedy descent.

        At each level the descent follows the child whose subtree holds
        the hint leaf when that child has a free slot; the first time it
        is forced onto the other side it steers back toward the hint at
        every remaining level.  The result is the hint itself when free,
        and otherwise always falls inside the smallest free subtree on
        the root-to-hint path.  Greedy, not globally nearest.
        """
        self._check_slot(hint, "hint")
        if self._read(0):
            raise PoolExhausted("all slots are in use")
        base = self.n_leaves - 1
        idx, lo, hi = 0, 0, self.n_leaves
        on_path = True
        prefer_right = False
        while idx < base:
            mid = (lo + hi) >> 1
            left = 2 * idx + 1
            right = left + 1
            if on_path:
                toward = left if hint < mid else right
                if self._read(toward) == 0:
                    idx = toward
                else:
                    # forced off the hint path: steer back toward it from now on
                    idx = right if toward is left else left
                    on_path = False
                    prefer_right = hint >= mid
            else:
                first, second = (right, left) if prefer_right else (left, right)
                idx = first if self._read(first) == 0 else second
            if idx == left:
                hi = mid
            else:
                lo = mid
        self._write(idx, 1)
        self.free_count -= 1
        self._propagate_up(idx)
        return idx - base

    def is_slot_free(self, slot: int) -> bool:
        self._check_slot(slot)
        return self.bits[self.n_leaves - 1 + slot] == 0

    def check_integrity(self) -> bool:
        """Verify the AND invariant, phantom padding, and the free count."""
        base = self.n_leaves - 1
        for i in range(base):
            if self.bits[i] != (self.bits[2 * i + 1] & self.bits[2 * i + 2]):
                return False
        for s in range(self.capacity, self.n_leaves):
            if self.bits[base + s] != 1:
                return False
        zeros = sum(1 for s in range(self.capacity) if self.bits[base + s] == 0)
        return zeros == self.free_count

    # -- internals -----------------------------------------------------

    def _propagate_up(self, idx: int) -> None:
        # AND siblings upward, stopping at the first parent whose bit is unchanged
        while idx:
            parent = (idx - 1) >> 1
            value = self._read(2 * parent + 1) & self._read(2 * parent + 2)
            if self._read(parent) == value:
                break
            self._write(parent, value)
            idx = parent
