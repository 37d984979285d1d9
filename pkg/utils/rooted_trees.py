import functools
import itertools
import logging
from dataclasses import dataclass

from utils.coefficients import INTEGER
from utils.words import Element, ParseError, Phrase, Word

logger = logging.getLogger(__name__)

POINT_TEXT = '.'
TREE_RESERVED = set('(),.|~ \t\r\n')


@dataclass(frozen=True)
class PlanarTree:
    """
    Edge-decorated planar rooted tree.

    ``children`` is the ordered tuple of root edges, each a pair
    ``(letter, subtree)``; the one-vertex tree has no children.
    """
    children: tuple = ()

    @property
    def is_point(self):
        return not self.children

    @property
    def edge_count(self):
        return sum(1 + sub.edge_count for _, sub in self.children)

    def decorations(self):
        """Edge letters in preorder."""
        found = []
        for letter, sub in self.children:
            found.append(letter)
            found.extend(sub.decorations())
        return found

    def validate(self):
        letters = self.decorations()
        if len(set(letters)) != len(letters):
            duplicates = sorted({x for x in letters if letters.count(x) > 1})
            raise ValueError(f"Edge decorations must be distinct, repeated: {', '.join(duplicates)}")
        return self

    def sort_key(self):
        return tuple((letter, sub.sort_key()) for letter, sub in self.children)

    def render(self):
        if self.is_point:
            return POINT_TEXT
        return ','.join(_render_edges(self))

    def __str__(self):
        return self.render()


POINT = PlanarTree()


def _render_edges(tree):
    parts = []
    for letter, sub in tree.children:
        if sub.is_point:
            parts.append(letter)
        else:
            parts.append(f"{letter}({','.join(_render_edges(sub))})")
    return parts


class Forest(tuple):
    """An ordered sequence of planar trees; the empty forest is the unit."""
    __slots__ = ()

    def __new__(cls, trees=()):
        return super().__new__(cls, trees)

    def __add__(self, other):
        return Forest(tuple.__add__(self, other))

    def sort_key(self):
        return (len(self), tuple(t.sort_key() for t in self))

    def __str__(self):
        if not self:
            return '1'
        return '[' + '; '.join(t.render() for t in self) + ']'


def parse_tree(text):
    """
    Parse tree text such as ``A(B,C)``; ``.`` is the one-vertex tree.

    Root-level edges are separated by commas, ``A,B`` being the tree
    with two edges at the root.

    Raises:
        ParseError: on malformed text, with a 1-based position
        ValueError: if decorations repeat
    """
    if text.strip() == POINT_TEXT:
        return POINT
    pos = 0

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def edge_list():
        edges = [edge()]
        skip()
        while pos < len(text) and text[pos] == ',':
            advance()
            edges.append(edge())
            skip()
        return tuple(edges)

    def advance():
        nonlocal pos
        pos += 1

    def edge():
        nonlocal pos
        skip()
        start = pos
        while pos < len(text) and text[pos] not in TREE_RESERVED:
            pos += 1
        if pos == start:
            found = repr(text[pos]) if pos < len(text) else 'end of input'
            raise ParseError(f"Expected an edge letter, found {found}", pos + 1)
        letter = text[start:pos]
        skip()
        if pos < len(text) and text[pos] == '(':
            advance()
            children = edge_list()
            skip()
            if pos >= len(text) or text[pos] != ')':
                raise ParseError("Missing closing parenthesis", pos + 1)
            advance()
            return letter, PlanarTree(children)
        return letter, POINT

    tree = PlanarTree(edge_list())
    skip()
    if pos != len(text):
        raise ParseError(f"Unexpected trailing text {text[pos:]!r}", pos + 1)
    return tree.validate()


def tree_to_word(tree):
    """
    Boundary word read counterclockwise from the root: e_1 w(t_1) e_1 ... e_r w(t_r) e_r.

    Raises:
        ValueError: if decorations repeat
    """
    tree.validate()
    return Word(_boundary(tree))


def _boundary(tree):
    letters = []
    for letter, sub in tree.children:
        letters.append(letter)
        letters.extend(_boundary(sub))
        letters.append(letter)
    return letters


def unlaced_violation(word):
    """
    Scan a word with a stack of open letters.

    Returns:
        tuple: (1-based position, reason) of the first violation, or None
    """
    stack = []
    opened = {}
    closed = set()
    for position, letter in enumerate(word, 1):
        if letter in closed:
            return position, f"letter {letter} occurs more than twice"
        if letter in opened:
            if stack[-1] != letter:
                return position, f"letters {stack[-1]} and {letter} interleave"
            stack.pop()
            closed.add(letter)
        else:
            opened[letter] = position
            stack.append(letter)
    if stack:
        return opened[stack[0]], f"letter {stack[0]} occurs only once"
    return None


def is_unlaced(word):
    """Every letter occurs 0 or 2 times and no pattern ABAB occurs as a subword."""
    return unlaced_violation(word) is None


def word_to_tree(word):
    """
    Inverse of tree_to_word by a matched-pair stack parse.

    Raises:
        ValueError: if the word is not unlaced, naming the first bad position
    """
    word = Word(word)
    violation = unlaced_violation(word)
    if violation is not None:
        position, reason = violation
        raise ValueError(f"Word {word} is not unlaced: {reason} (at position {position})")
    frames = [(None, [])]
    for letter in word:
        if frames[-1][0] == letter:
            opened, children = frames.pop()
            frames[-1][1].append((opened, PlanarTree(tuple(children))))
        else:
            frames.append((letter, []))
    return PlanarTree(tuple(frames[0][1]))


@functools.lru_cache(maxsize=None)
def tree_shapes(edges):
    """Undecorated planar rooted trees with ``edges`` edges, as nested tuples of child shapes."""
    if edges == 0:
        return ((),)
    shapes = []
    # the first root edge carries a subtree of k edges, the rest of the root keeps edges-1-k
    for k in range(edges):
        for first in tree_shapes(k):
            for rest in tree_shapes(edges - 1 - k):
                shapes.append((first,) + rest)
    return tuple(shapes)


def label_shape(shape, letters):
    """Decorate a shape in preorder with the given letters."""
    letters = iter(letters)

    def build(node):
        children = []
        for child in node:
            letter = next(letters)
            children.append((letter, build(child)))
        return PlanarTree(tuple(children))

    return build(shape)


def planar_trees(edges, alphabet=None):
    """
    Decorated planar trees with ``edges`` edges.

    Without an alphabet every shape is decorated A, B, C, ... in preorder;
    with one, every injective decoration from the alphabet is produced.
    """
    if alphabet is None:
        letters = [chr(ord('A') + k) for k in range(edges)]
        for shape in tree_shapes(edges):
            yield label_shape(shape, letters)
        return
    for shape in tree_shapes(edges):
        for letters in itertools.permutations(alphabet, edges):
            yield label_shape(shape, letters)


def forests(max_edges, max_trees):
    """Planar forests of up to ``max_trees`` trees and ``max_edges`` edges in total, unit first."""
    yield Forest()
    for count in range(1, max_trees + 1):
        for sizes in itertools.product(range(max_edges + 1), repeat=count):
            if sum(sizes) > max_edges:
                continue
            for trees in itertools.product(*(planar_trees(n) for n in sizes)):
                yield Forest(trees)


def forest_to_phrase(forest):
    """Encode a forest as the phrase of boundary words; the point becomes φ."""
    return Phrase(tree_to_word(tree) for tree in forest)


def phrase_to_forest(phrase):
    return Forest(word_to_tree(word) for word in phrase)


def _admissible_cuts(tree):
    """
    Pairs (pruned trees in planar order, trunk) over every antichain of edges.

    The empty antichain yields ((), tree).
    """
    per_edge = []
    for letter, sub in tree.children:
        options = [((sub,), None)]
        for pruned, trunk in _admissible_cuts(sub):
            options.append((pruned, (letter, trunk)))
        per_edge.append(options)
    results = []
    for choice in itertools.product(*per_edge):
        pruned = tuple(t for part, _ in choice for t in part)
        kept = tuple(edge for _, edge in choice if edge is not None)
        results.append((pruned, PlanarTree(kept)))
    return results


def ck_tree(tree, ring=INTEGER):
    """Admissible-cut coproduct of one tree: T⊗1 + Σ_C pruned_C ⊗ trunk_C."""
    result = Element.basis((Forest((tree,)), Forest()), ring, arity=2)
    for pruned, trunk in _admissible_cuts(tree):
        result.add_term((Forest(pruned), Forest((trunk,))), 1)
    return result


def ck_coproduct(forest, ring=INTEGER):
    """
    Non-commutative admissible-cut coproduct on planar forests, multiplicative on forests.

    Args:
        forest (Forest | PlanarTree): input forest

    Returns:
        Element: Forest⊗Forest element
    """
    if isinstance(forest, PlanarTree):
        forest = Forest((forest,))
    result = Element.basis((Forest(), Forest()), ring, arity=2)
    for tree in forest:
        tree.validate()
        result = result.multiply(ck_tree(tree, ring))
    return result


def encode_forests(element):
    """Map a Forest⊗Forest element to phrases of boundary words."""
    return element.map_keys(lambda key: tuple(forest_to_phrase(f) for f in key))
