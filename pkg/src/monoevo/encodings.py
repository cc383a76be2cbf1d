"""The three genome encodings and their variation operators.

TT:  plain bitstring of length 2**n (a truth table), explored freely.
TTw: bitstring kept at Hamming weight 2**(n-1) by every operator, so the
     decoded function is always balanced.
GP:  expression tree over OR/XOR/AND/IF/NOT with variable leaves, decoded by
     bit-sliced evaluation over all 2**n assignments.

TT and TTw genomes are bare uint8 numpy arrays; operators never modify their
inputs. All randomness comes through an explicit numpy Generator argument.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .boolfunc import TruthTable

GP_FUNCTIONS = ("OR", "XOR", "AND", "IF", "NOT")
GP_ARITY = {"OR": 2, "XOR": 2, "AND": 2, "IF": 3, "NOT": 1}
GP_INIT_DEPTH_MIN = 2
GP_INIT_DEPTH_MAX = 6
GP_DEFAULT_MAX_DEPTH = 8
GP_CROSSOVER_RETRIES = 10


# ---------------------------------------------------------------------------
# TT: free truth table bitstring

def _coin_mask(size: int, rng: np.random.Generator) -> np.ndarray:
    """size independent fair bits (cheap: one byte of generator output each)."""
    return np.frombuffer(rng.bytes(size), np.uint8) & 1


def tt_random(n: int, rng: np.random.Generator) -> np.ndarray:
    return _coin_mask(1 << n, rng)


def tt_mutate(genome: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Flip one uniformly chosen bit, or shuffle the segment between two
    uniformly chosen positions (inclusive); the two operators are picked with
    equal probability."""
    out = genome.copy()
    size = out.shape[0]
    if rng.random() < 0.5:
        out[rng.integers(0, size)] ^= 1
    else:
        i = int(rng.integers(0, size))
        j = int(rng.integers(0, size))
        if i > j:
            i, j = j, i
        out[i:j + 1] = rng.permutation(out[i:j + 1])
    return out


def tt_crossover(a: np.ndarray, b: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """One-point or uniform crossover, picked with equal probability."""
    if a.shape != b.shape:
        raise ValueError("parents must have equal length")
    size = a.shape[0]
    if rng.random() < 0.5:
        p = int(rng.integers(0, size + 1))
        child = np.concatenate([a[:p], b[p:]])
    else:
        take_a = _coin_mask(size, rng)
        child = np.where(take_a, a, b)
    return child


# ---------------------------------------------------------------------------
# TTw: weight-preserving truth table bitstring

def _check_balanced(genome: np.ndarray, who: str) -> int:
    half = genome.shape[0] >> 1
    w = int(genome.sum())
    if w != half:
        raise ValueError(f"{who} must have weight {half}, got {w}")
    return half


def ttw_random(n: int, rng: np.random.Generator) -> np.ndarray:
    half = 1 << (n - 1)
    genome = np.repeat(np.array([0, 1], dtype=np.uint8), half)
    return rng.permutation(genome)


def ttw_mutate(genome: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Two-bit inversion (flip one set and one clear bit) or a mixing shuffle of
    the segment between two random positions; both keep the weight fixed."""
    out = genome.copy()
    size = out.shape[0]
    if rng.random() < 0.5:
        ones = np.flatnonzero(out)
        zeros = np.flatnonzero(out == 0)
        out[ones[rng.integers(0, ones.size)]] = 0
        out[zeros[rng.integers(0, zeros.size)]] = 1
    else:
        i = int(rng.integers(0, size))
        j = int(rng.integers(0, size))
        if i > j:
            i, j = j, i
        out[i:j + 1] = rng.permutation(out[i:j + 1])
    return out


def ttw_crossover(a: np.ndarray, b: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Balanced crossover: copy each position from a random parent, but once the
    child has used up its quota of ones (or zeros) the remaining positions are
    forced to the other value, so the child is always balanced."""
    if a.shape != b.shape:
        raise ValueError("parents must have equal length")
    half = _check_balanced(a, "first parent")
    _check_balanced(b, "second parent")
    take_a = _coin_mask(a.shape[0], rng)
    child = np.where(take_a, a, b)
    ones_cum = np.cumsum(child)
    zeros_cum = np.arange(1, child.shape[0] + 1) - ones_cum
    hit_ones = np.flatnonzero(ones_cum == half)
    hit_zeros = np.flatnonzero(zeros_cum == half)
    t_ones = hit_ones[0] if hit_ones.size else child.shape[0]
    t_zeros = hit_zeros[0] if hit_zeros.size else child.shape[0]
    if t_ones < t_zeros:
        child[t_ones + 1:] = 0
    elif t_zeros < t_ones:
        child[t_zeros + 1:] = 1
    return child


# ---------------------------------------------------------------------------
# GP: expression trees

class GpNode:
    """Tree node: either an operator with children, or a variable leaf (0-based)."""

    __slots__ = ("op", "var", "children")

    def __init__(self, op: str | None = None, var: int = -1, children: tuple = ()):
        self.op = op
        self.var = var
        self.children = children

    @property
    def is_leaf(self) -> bool:
        return self.op is None

    @property
    def arity(self) -> int:
        return 0 if self.op is None else GP_ARITY[self.op]


@dataclass(frozen=True)
class GpGenome:
    root: GpNode
    n: int
    max_depth: int = GP_DEFAULT_MAX_DEPTH


def tree_depth(node: GpNode) -> int:
    """Number of node levels; a lone leaf has depth 1."""
    if node.is_leaf:
        return 1
    return 1 + max(tree_depth(c) for c in node.children)


def tree_size(node: GpNode) -> int:
    if node.is_leaf:
        return 1
    return 1 + sum(tree_size(c) for c in node.children)


def copy_tree(node: GpNode) -> GpNode:
    if node.is_leaf:
        return GpNode(var=node.var)
    return GpNode(op=node.op, children=tuple(copy_tree(c) for c in node.children))


def _collect(node: GpNode, path=(), out=None):
    """All (node, path) pairs in preorder; path is the tuple of child slots."""
    if out is None:
        out = []
    out.append((node, path))
    for k, c in enumerate(node.children):
        _collect(c, path + (k,), out)
    return out


def _subtree_at(node: GpNode, path) -> GpNode:
    for k in path:
        node = node.children[k]
    return node


def _replace_at(node: GpNode, path, new: GpNode) -> GpNode:
    """Copy of the tree with the subtree at path replaced by new (not copied)."""
    if not path:
        return new
    k = path[0]
    children = list(node.children)
    children[k] = _replace_at(children[k], path[1:], new)
    out = GpNode(op=node.op, var=node.var, children=tuple(children))
    return out


def random_tree(n: int, depth: int, method: str, rng: np.random.Generator) -> GpNode:
    """Grow or full construction down to the given depth (>= 1)."""
    if depth <= 1:
        return GpNode(var=int(rng.integers(0, n)))
    if method == "grow":
        # uniform over the whole primitive set until the depth budget runs out
        pick = int(rng.integers(0, len(GP_FUNCTIONS) + n))
        if pick >= len(GP_FUNCTIONS):
            return GpNode(var=pick - len(GP_FUNCTIONS))
        op = GP_FUNCTIONS[pick]
    else:
        op = GP_FUNCTIONS[int(rng.integers(0, len(GP_FUNCTIONS)))]
    children = tuple(random_tree(n, depth - 1, method, rng) for _ in range(GP_ARITY[op]))
    return GpNode(op=op, children=children)


def gp_random(n: int, rng: np.random.Generator,
              max_depth: int = GP_DEFAULT_MAX_DEPTH) -> GpGenome:
    """Ramped half-and-half initialization with depths 2..6."""
    depth = int(rng.integers(GP_INIT_DEPTH_MIN, min(GP_INIT_DEPTH_MAX, max_depth) + 1))
    method = "grow" if rng.integers(0, 2) == 0 else "full"
    return GpGenome(random_tree(n, depth, method, rng), n, max_depth)


def gp_mutate(genome: GpGenome, rng: np.random.Generator) -> GpGenome:
    """Subtree mutation: replace a uniformly chosen node by a freshly grown
    subtree that fits under the depth cap."""
    nodes = _collect(genome.root)
    _, path = nodes[int(rng.integers(0, len(nodes)))]
    allowance = genome.max_depth - len(path)
    depth = int(rng.integers(1, min(allowance, GP_INIT_DEPTH_MAX) + 1))
    fresh = random_tree(genome.n, depth, "grow", rng)
    return replace(genome, root=_replace_at(genome.root, path, fresh))


def _cx_subtree(a: GpNode, b: GpNode, rng) -> GpNode:
    nodes_a = _collect(a)
    nodes_b = _collect(b)
    _, path_a = nodes_a[int(rng.integers(0, len(nodes_a)))]
    sub_b, _ = nodes_b[int(rng.integers(0, len(nodes_b)))]
    return _replace_at(a, path_a, copy_tree(sub_b))


def _cx_size_fair(a: GpNode, b: GpNode, rng) -> GpNode:
    """Like subtree crossover but the donor subtree may be at most twice the
    size (plus one) of the removed one."""
    nodes_a = _collect(a)
    _, path_a = nodes_a[int(rng.integers(0, len(nodes_a)))]
    limit = 2 * tree_size(_subtree_at(a, path_a)) + 1
    candidates = [nd for nd, _ in _collect(b) if tree_size(nd) <= limit]
    donor = candidates[int(rng.integers(0, len(candidates)))]
    return _replace_at(a, path_a, copy_tree(donor))


def _common_region(a: GpNode, b: GpNode):
    """Paths where both trees have a node and all ancestors match in arity."""
    pairs = [(a, b, ())]
    out = []
    while pairs:
        u, v, path = pairs.pop()
        out.append(path)
        if u.arity == v.arity:
            for k in range(u.arity):
                pairs.append((u.children[k], v.children[k], path + (k,)))
    return out


def _cx_one_point(a: GpNode, b: GpNode, rng) -> GpNode:
    region = _common_region(a, b)
    path = region[int(rng.integers(0, len(region)))]
    return _replace_at(a, path, copy_tree(_subtree_at(b, path)))


def _cx_uniform(a: GpNode, b: GpNode, rng) -> GpNode:
    """Node-by-node mix over the common region; whole subtrees are taken from a
    random parent where the shapes diverge."""
    if a.arity != b.arity:
        return copy_tree(a if rng.integers(0, 2) == 0 else b)
    src = a if rng.integers(0, 2) == 0 else b
    if a.arity == 0:
        return GpNode(var=src.var)
    children = tuple(_cx_uniform(ca, cb, rng) for ca, cb in zip(a.children, b.children))
    return GpNode(op=src.op, children=children)


def _cx_context_preserving(a: GpNode, b: GpNode, rng) -> GpNode:
    """Swap subtrees only at a coordinate that exists in both trees."""
    paths_b = {path for _, path in _collect(b)}
    shared = [path for _, path in _collect(a) if path in paths_b]
    path = shared[int(rng.integers(0, len(shared)))]
    return _replace_at(a, path, copy_tree(_subtree_at(b, path)))


_GP_CROSSOVERS = (_cx_subtree, _cx_uniform, _cx_size_fair, _cx_one_point,
                  _cx_context_preserving)


def gp_crossover(a: GpGenome, b: GpGenome, rng: np.random.Generator) -> GpGenome:
    """One of the five tree crossovers, picked uniformly. Offspring deeper than
    the cap are rejected and the operator retried; after the retry budget the
    child is a copy of the first parent."""
    op = _GP_CROSSOVERS[int(rng.integers(0, len(_GP_CROSSOVERS)))]
    for _ in range(GP_CROSSOVER_RETRIES):
        child = op(a.root, b.root, rng)
        if tree_depth(child) <= a.max_depth:
            return replace(a, root=child)
    return replace(a, root=copy_tree(a.root))


# ---------------------------------------------------------------------------
# GP decoding: bit-sliced evaluation over all assignments

@lru_cache(maxsize=None)
def _variable_masks(n: int) -> tuple:
    """masks[j] has bit i set exactly when bit j of i is set, for i < 2**n."""
    size = 1 << n
    masks = []
    for j in range(n):
        block = (1 << (1 << j)) - 1
        m = 0
        for start in range(1 << j, size, 1 << (j + 1)):
            m |= block << start
        masks.append(m)
    return tuple(masks)


def _eval_sliced(node: GpNode, masks, full: int) -> int:
    if node.is_leaf:
        return masks[node.var]
    op = node.op
    if op == "NOT":
        return full ^ _eval_sliced(node.children[0], masks, full)
    a = _eval_sliced(node.children[0], masks, full)
    b = _eval_sliced(node.children[1], masks, full)
    if op == "AND":
        return a & b
    if op == "OR":
        return a | b
    if op == "XOR":
        return a ^ b
    # IF: second argument where the condition holds, third elsewhere
    c = _eval_sliced(node.children[2], masks, full)
    return (a & b) | ((full ^ a) & c)


def gp_decode_bits(genome: GpGenome) -> np.ndarray:
    size = 1 << genome.n
    full = (1 << size) - 1
    value = _eval_sliced(genome.root, _variable_masks(genome.n), full)
    raw = value.to_bytes((size + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, np.uint8), bitorder="little")[:size]


def gp_decode(genome: GpGenome) -> TruthTable:
    """Evaluate the tree over all 2**n assignments (word-parallel)."""
    return TruthTable(genome.n, gp_decode_bits(genome))


# ---------------------------------------------------------------------------
# GP prefix text form, e.g. "IF(x1, AND(x2, x3), x4)"

def to_prefix(node: GpNode) -> str:
    if node.is_leaf:
        return f"x{node.var + 1}"
    return f"{node.op}({', '.join(to_prefix(c) for c in node.children)})"


def parse_prefix(text: str) -> GpNode:
    pos = 0
    s = text.strip()

    def error(msg):
        return ValueError(f"bad expression at position {pos}: {msg}")

    def skip_ws():
        nonlocal pos
        while pos < len(s) and s[pos] in " \t\r\n":
            pos += 1

    def parse_node() -> GpNode:
        nonlocal pos
        skip_ws()
        start = pos
        while pos < len(s) and (s[pos].isalnum() or s[pos] == "_"):
            pos += 1
        token = s[start:pos]
        if not token:
            raise error("expected an operator or variable")
        upper = token.upper()
        if upper in GP_ARITY:
            skip_ws()
            if pos >= len(s) or s[pos] != "(":
                raise error(f"expected '(' after {token}")
            pos += 1
            children = []
            for k in range(GP_ARITY[upper]):
                if k:
                    skip_ws()
                    if pos >= len(s) or s[pos] != ",":
                        raise error(f"expected ',' inside {token}")
                    pos += 1
                children.append(parse_node())
            skip_ws()
            if pos >= len(s) or s[pos] != ")":
                raise error(f"expected ')' closing {token}")
            pos += 1
            return GpNode(op=upper, children=tuple(children))
        if token[0] in "xX" and token[1:].isdigit() and int(token[1:]) >= 1:
            return GpNode(var=int(token[1:]) - 1)
        raise error(f"unknown token {token!r}")

    root = parse_node()
    skip_ws()
    if pos != len(s):
        raise error("trailing characters")
    return root


def max_variable(node: GpNode) -> int:
    """Largest 0-based variable index appearing in the tree."""
    if node.is_leaf:
        return node.var
    return max(max_variable(c) for c in node.children)


def parse_gp_genome(text: str, n: int | None = None,
                    max_depth: int = GP_DEFAULT_MAX_DEPTH) -> GpGenome:
    root = parse_prefix(text)
    needed = max_variable(root) + 1
    if n is None:
        n = needed
    elif needed > n:
        raise ValueError(f"expression uses x{needed} but n = {n}")
    return GpGenome(root, n, max(max_depth, tree_depth(root)))


# ---------------------------------------------------------------------------
# Uniform facade used by the evolutionary engine

class EncodingOps:
    """Per-encoding bundle of initialization, variation, decoding, serialization."""

    def __init__(self, encoding: str, n: int, max_tree_depth: int = GP_DEFAULT_MAX_DEPTH):
        canonical = {"tt": "TT", "ttw": "TTw", "gp": "GP"}.get(encoding.lower())
        if canonical is None:
            raise ValueError(f"unknown encoding {encoding!r}; expected TT, TTw, or GP")
        self.encoding = canonical
        self.n = n
        self.max_tree_depth = max_tree_depth

    @property
    def genome_format(self) -> str:
        return "gp-prefix" if self.encoding == "GP" else "truth-table"

    def random(self, rng):
        if self.encoding == "TT":
            return tt_random(self.n, rng)
        if self.encoding == "TTw":
            return ttw_random(self.n, rng)
        return gp_random(self.n, rng, self.max_tree_depth)

    def mutate(self, genome, rng):
        if self.encoding == "TT":
            return tt_mutate(genome, rng)
        if self.encoding == "TTw":
            return ttw_mutate(genome, rng)
        return gp_mutate(genome, rng)

    def crossover(self, a, b, rng):
        if self.encoding == "TT":
            return tt_crossover(a, b, rng)
        if self.encoding == "TTw":
            return ttw_crossover(a, b, rng)
        return gp_crossover(a, b, rng)

    def decode_bits(self, genome) -> np.ndarray:
        if self.encoding == "GP":
            return gp_decode_bits(genome)
        return genome

    def decode(self, genome) -> TruthTable:
        return TruthTable(self.n, self.decode_bits(genome))

    def serialize(self, genome) -> str:
        if self.encoding == "GP":
            return to_prefix(genome.root)
        return self.decode(genome).to_text()
