"""Concatenable queue: an ordered sequence in a leaf-based 2-3 tree.

Supports insert, delete, split and concatenate in O(log n); element handles
(the leaves) stay valid across every operation, and a handle can recover
the queue currently holding it by walking to the root.
"""

from __future__ import annotations

from typing import Iterator, Optional

_next_qid = 0


def _fresh_qid() -> int:
    global _next_qid
    _next_qid += 1
    return _next_qid


class Handle:
    """A leaf; owns one element."""

    __slots__ = ("parent", "value", "tree")

    def __init__(self, value):
        self.parent: Optional[_Node] = None
        self.value = value
        self.tree: Optional[ConcatQueue] = None  # set only while root

    def queue(self) -> Optional["ConcatQueue"]:
        """The queue currently containing this handle (root walk)."""
        node = self
        while node.parent is not None:
            node = node.parent
        return node.tree

    def __repr__(self):
        return f"Handle({self.value!r})"


class _Node:
    __slots__ = ("parent", "kids", "height", "tree")

    def __init__(self, kids, height):
        self.parent: Optional[_Node] = None
        self.kids = kids
        self.height = height
        self.tree: Optional[ConcatQueue] = None
        for k in kids:
            k.parent = self


def _height(node) -> int:
    return 0 if isinstance(node, Handle) else node.height


def _set_root(tree: "ConcatQueue", root) -> None:
    tree.root = root
    if root is not None:
        root.parent = None
        root.tree = tree


def _clear_root_mark(root) -> None:
    if root is not None:
        root.tree = None


class ConcatQueue:
    def __init__(self, qid: Optional[int] = None):
        self.qid = qid if qid is not None else _fresh_qid()
        self.root = None
        self.size = 0

    # -- construction -------------------------------------------------

    @classmethod
    def from_values(cls, values) -> "ConcatQueue":
        q = cls()
        handles = [Handle(v) for v in values]
        q.size = len(handles)
        _set_root(q, _build(handles))
        return q

    # -- queries ------------------------------------------------------

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator:
        for h in self.handles():
            yield h.value

    def handles(self) -> Iterator[Handle]:
        stack = [self.root] if self.root is not None else []
        out = []
        node = self.root
        if node is None:
            return iter(())

        def walk(n):
            if isinstance(n, Handle):
                out.append(n)
            else:
                for k in n.kids:
                    walk(k)

        del stack
        walk(node)
        return iter(out)

    def first(self) -> Optional[Handle]:
        node = self.root
        if node is None:
            return None
        while not isinstance(node, Handle):
            node = node.kids[0]
        return node

    def last(self) -> Optional[Handle]:
        node = self.root
        if node is None:
            return None
        while not isinstance(node, Handle):
            node = node.kids[-1]
        return node

    def owns(self, h: Handle) -> bool:
        return h.queue() is self

    # -- updates ------------------------------------------------------

    def push_back(self, value) -> Handle:
        h = Handle(value)
        if self.root is None:
            _set_root(self, h)
        else:
            self._insert_beside(self.last(), h, after=True)
        self.size += 1
        return h

    def insert_after(self, at: Handle, value) -> Handle:
        h = Handle(value)
        self._insert_beside(at, h, after=True)
        self.size += 1
        return h

    def insert_before(self, at: Handle, value) -> Handle:
        h = Handle(value)
        self._insert_beside(at, h, after=False)
        self.size += 1
        return h

    def _insert_beside(self, at: Handle, h: Handle, after: bool) -> None:
        p = at.parent
        if p is None:
            kids = [at, h] if after else [h, at]
            _clear_root_mark(self.root)
            _set_root(self, _Node(kids, 1))
            return
        i = p.kids.index(at)
        p.kids.insert(i + 1 if after else i, h)
        h.parent = p
        self._fix_overflow(p)

    def _fix_overflow(self, node: _Node) -> None:
        while len(node.kids) > 3:
            mid = len(node.kids) // 2
            right = _Node(node.kids[mid:], node.height)
            node.kids = node.kids[:mid]
            p = node.parent
            if p is None:
                _clear_root_mark(node)
                _set_root(self, _Node([node, right], node.height + 1))
                return
            p.kids.insert(p.kids.index(node) + 1, right)
            right.parent = p
            node = p

    def delete(self, h: Handle) -> None:
        if h.queue() is not self:
            raise ValueError("handle does not belong to this queue")
        self.size -= 1
        p = h.parent
        if p is None:
            _clear_root_mark(h)
            self.root = None
            return
        p.kids.remove(h)
        h.parent = None
        self._fix_underflow(p)

    def _fix_underflow(self, node: _Node) -> None:
        while len(node.kids) < 2:
            p = node.parent
            if p is None:
                # Root with a single child collapses.
                kid = node.kids[0] if node.kids else None
                _clear_root_mark(node)
                _set_root(self, kid)
                return
            i = p.kids.index(node)
            sib = p.kids[i - 1] if i > 0 else p.kids[1]
            if len(sib.kids) == 3:
                if i > 0:
                    moved = sib.kids.pop()
                    node.kids.insert(0, moved)
                else:
                    moved = sib.kids.pop(0)
                    node.kids.append(moved)
                moved.parent = node
                return
            # Merge with the 2-kid sibling.
            if i > 0:
                sib.kids.extend(node.kids)
                for k in node.kids:
                    k.parent = sib
            else:
                sib.kids[:0] = node.kids
                for k in node.kids:
                    k.parent = sib
            p.kids.remove(node)
            node = p

    # -- split / concat ----------------------------------------------

    def split_after(self, at: Handle) -> "ConcatQueue":
        """Split; self keeps the prefix up to and including `at`, the suffix
        is returned as a fresh queue (fresh qid)."""
        if at.queue() is not self:
            raise ValueError("stale handle: not in this queue")
        left_parts: list = [at]  # bottom-up subtree roots, heights ascending
        right_parts: list = []
        child = at
        p = at.parent
        while p is not None:
            i = next(j for j, k in enumerate(p.kids) if k is child)
            for sib in reversed(p.kids[:i]):
                sib.parent = None
                left_parts.append(sib)
            for sib in p.kids[i + 1:]:
                sib.parent = None
                right_parts.append(sib)
            child = p
            p = p.parent
        at.parent = None
        # Reassemble.  left_parts holds subtrees in increasing height whose
        # sequences come *before* what is already accumulated.
        _clear_root_mark(self.root)
        lroot = None
        for part in left_parts:
            lroot = _join(part, lroot)
        rroot = None
        for part in right_parts:
            rroot = _join(rroot, part)
        lsize = _count(lroot)
        out = ConcatQueue()
        _set_root(self, lroot)
        self.size = lsize
        _set_root(out, rroot)
        out.size = _count(rroot)
        return out

    def concat(self, other: "ConcatQueue") -> "ConcatQueue":
        """Append other to self; self's qid survives, other is emptied."""
        if other is self:
            raise ValueError("cannot concatenate a queue with itself")
        _clear_root_mark(self.root)
        _clear_root_mark(other.root)
        root = _join(self.root, other.root)
        _set_root(self, root)
        self.size += other.size
        other.root = None
        other.size = 0
        return self

    # -- checks -------------------------------------------------------

    def check(self) -> None:
        """Structural invariants: leaf depths equal, fan-out within 2..3."""
        if self.root is None:
            assert self.size == 0
            return
        depths = set()

        def walk(n, d):
            if isinstance(n, Handle):
                depths.add(d)
                return 1
            assert 2 <= len(n.kids) <= 3, "fan-out violation"
            total = 0
            for k in n.kids:
                assert k.parent is n
                assert _height(k) == n.height - 1
                total += walk(k, d + 1)
            return total

        total = walk(self.root, 0)
        assert len(depths) == 1, "leaves at unequal depth"
        assert total == self.size


def _build(handles):
    if not handles:
        return None
    level = handles
    height = 0
    while len(level) > 1:
        nxt = []
        i = 0
        n = len(level)
        while i < n:
            take = 3 if (n - i) % 2 == 1 else 2
            nxt.append(_Node(level[i:i + take], height + 1))
            i += take
        level = nxt
        height += 1
    return level[0]


def _count(root) -> int:
    if root is None:
        return 0
    if isinstance(root, Handle):
        return 1
    return sum(_count(k) for k in root.kids)


def _join(left, right):
    """Join two parentless subtrees into one; heights may differ."""
    if left is None:
        return right
    if right is None:
        return left
    hl, hr = _height(left), _height(right)
    if hl == hr:
        return _Node([left, right], hl + 1)
    if hl > hr:
        # descend the right spine of `left`
        spine = left
        while _height(spine) > hr + 1:
            spine = spine.kids[-1]
        spine.kids.append(right)
        right.parent = spine
        node = spine
    else:
        spine = right
        while _height(spine) > hl + 1:
            spine = spine.kids[0]
        spine.kids.insert(0, left)
        left.parent = spine
        node = spine
    # fix overflow up the spine without a tree object
    root = left if hl > hr else right
    while node is not None and len(node.kids) > 3:
        mid = len(node.kids) // 2
        sibling = _Node(node.kids[mid:], node.height)
        node.kids = node.kids[:mid]
        p = node.parent
        if p is None:
            root = _Node([node, sibling], node.height + 1)
            break
        p.kids.insert(p.kids.index(node) + 1, sibling)
        sibling.parent = p
        node = p
    while root.parent is not None:
        root = root.parent
    return root
