"""Weight-balanced multiway search tree over a growing key sequence.

Keys live at the leaves, all at equal depth, and every non-root node keeps
f^h/2 <= n(v) <= f^h (h = height, n = leaf count).  An overflowing node is
split by evenly redistributing its leaves into two fresh balanced subtrees;
the registered hook runs once per split, bottom-up along the insertion
path, so clients can rebuild whatever they hang off the affected nodes.

Clients attach their per-node payloads via the `data` slot.
"""

from __future__ import annotations

from typing import Callable, List, Optional


class WbbNode:
    __slots__ = ("parent", "children", "height", "count", "min_key",
                 "max_key", "key", "data")

    def __init__(self, height: int):
        self.parent: Optional[WbbNode] = None
        self.children: List[WbbNode] = []
        self.height = height
        self.count = 1 if height == 0 else 0
        self.min_key = None
        self.max_key = None
        self.key = None  # leaf key
        self.data = None

    @property
    def is_leaf(self) -> bool:
        return self.height == 0

    def child_for(self, key) -> "WbbNode":
        """The child whose region contains `key`.

        Regions partition the key line: child i owns [i.min_key, next.min_key),
        the first child also owns everything below it."""
        kids = self.children
        prev = kids[0]
        for c in kids[1:]:
            if key < c.min_key:
                return prev
            prev = c
        return prev

    def __repr__(self):
        return f"<wbb h={self.height} n={self.count} [{self.min_key}..{self.max_key}]>"


def _make_leaf(key) -> WbbNode:
    n = WbbNode(0)
    n.key = key
    n.min_key = key
    n.max_key = key
    return n


def _refresh(node: WbbNode) -> None:
    node.count = sum(c.count for c in node.children)
    node.min_key = node.children[0].min_key
    node.max_key = node.children[-1].max_key


def build_balanced(leaves: List[WbbNode], height: int, f: int) -> WbbNode:
    """A fresh subtree of exactly `height` over `leaves`, every internal
    node inside the weight bounds."""
    if height == 0:
        assert len(leaves) == 1
        return leaves[0]
    n = len(leaves)
    unit = f ** (height - 1)
    c = max(1 if height == 1 else 1, -(-n // unit))  # ceil division
    c = max(c, 1)
    node = WbbNode(height)
    bounds = [round(i * n / c) for i in range(c + 1)]
    for i in range(c):
        part = leaves[bounds[i]:bounds[i + 1]]
        child = build_balanced(part, height - 1, f)
        child.parent = node
        node.children.append(child)
    _refresh(node)
    return node


class WeightBalancedBase:
    """The shared base tree: ordered leaf keys, weight-balanced rebuilds."""

    def __init__(self, fanout: int = 8,
                 split_hook: Optional[Callable] = None,
                 insert_hook: Optional[Callable] = None):
        if fanout < 2:
            raise ValueError("fan-out must be at least 2")
        self.f = fanout
        self.root: Optional[WbbNode] = None
        self.split_hook = split_hook
        self.insert_hook = insert_hook  # (height1_node, leaf, prev_or_None)
        self.split_count = 0
        self._leaves = {}  # key -> leaf node

    def __len__(self) -> int:
        return self.root.count if self.root else 0

    def leaf(self, key) -> Optional[WbbNode]:
        return self._leaves.get(key)

    def collect_leaves(self, node: WbbNode) -> List[WbbNode]:
        if node.is_leaf:
            return [node]
        out = []
        for c in node.children:
            out.extend(self.collect_leaves(c))
        return out

    def insert(self, key, split_hook: Optional[Callable] = None) -> WbbNode:
        """Insert a key (idempotent); rebalance with the split hook."""
        got = self._leaves.get(key)
        if got is not None:
            return got
        hook = split_hook or self.split_hook
        leaf = _make_leaf(key)
        self._leaves[key] = leaf
        if self.root is None:
            self.root = leaf
            return leaf
        if self.root.is_leaf:
            old = self.root
            node = WbbNode(1)
            kids = [old, leaf] if old.key < key else [leaf, old]
            for k in kids:
                k.parent = node
            node.children = kids
            _refresh(node)
            self.root = node
            return leaf
        # descend to the height-1 node that should hold the new leaf
        node = self.root
        path = []
        while node.height > 1:
            path.append(node)
            node = node.child_for(key)
        path.append(node)
        pos = 0
        while pos < len(node.children) and node.children[pos].key < key:
            pos += 1
        node.children.insert(pos, leaf)
        leaf.parent = node
        for p in reversed(path):
            _refresh(p)
        if self.insert_hook is not None:
            prev = node.children[pos - 1] if pos > 0 else None
            self.insert_hook(node, leaf, prev)
        # split overflowing nodes bottom-up along the path
        for p in reversed(path):
            if p.count > self.f ** p.height:
                self._split(p, hook)
        return leaf

    def _split(self, node: WbbNode, hook) -> None:
        self.split_count += 1
        parent = node.parent
        if parent is None:
            parent = WbbNode(node.height + 1)
            parent.children = [node]
            node.parent = parent
            self.root = parent
        leaves = self.collect_leaves(node)
        half = len(leaves) // 2
        n1 = build_balanced(leaves[:half], node.height, self.f)
        n2 = build_balanced(leaves[half:], node.height, self.f)
        i = parent.children.index(node)
        parent.children[i:i + 1] = [n1, n2]
        n1.parent = parent
        n2.parent = parent
        node.parent = None
        p = parent
        while p is not None:
            _refresh(p)
            p = p.parent
        if hook is not None:
            hook(node, n1, n2, parent)

    # -- searching ------------------------------------------------------

    def path_nodes(self, key) -> List[WbbNode]:
        """Root-to-leaf search path of `key` (regions as in child_for)."""
        out = []
        node = self.root
        if node is None:
            return out
        while not node.is_leaf:
            out.append(node)
            node = node.child_for(key)
        out.append(node)
        return out

    def home_of(self, lo_key, hi_key) -> WbbNode:
        """Deepest node whose leaf-key range contains [lo_key, hi_key];
        both keys must already be leaves."""
        node = self.root
        while not node.is_leaf:
            nxt = None
            for c in node.children:
                if c.min_key <= lo_key and hi_key <= c.max_key:
                    nxt = c
                    break
            if nxt is None:
                return node
            node = nxt
        return node

    # -- invariants -----------------------------------------------------

    def check(self) -> None:
        if self.root is None:
            return
        f = self.f

        def walk(node, is_root):
            if node.is_leaf:
                assert node.count == 1
                return 1, 0
            total = 0
            depths = set()
            for c in node.children:
                assert c.parent is node
                assert c.height == node.height - 1
                cnt, d = walk(c, False)
                total += cnt
                depths.add(d)
            assert len(depths) == 1
            assert total == node.count
            bound = f ** node.height
            assert node.count <= bound, "weight upper bound violated"
            if not is_root:
                assert 2 * node.count >= bound, "weight lower bound violated"
            assert node.min_key == node.children[0].min_key
            assert node.max_key == node.children[-1].max_key
            return total, depths.pop() + 1

        walk(self.root, True)
        for key, leaf in self._leaves.items():
            assert leaf.key == key
