import itertools
import logging
import random
import time
from dataclasses import dataclass, field

from utils.coefficients import INTEGER
from utils.inscription_coalgebra import Pairing
from utils.rooted_trees import ck_coproduct, encode_forests, forest_to_phrase, planar_trees, tree_to_word
from utils.words import Element, Phrase, UNIT_PHRASE, Word, iter_words, map_letters

logger = logging.getLogger(__name__)


@dataclass
class LawReport:
    """Outcome of one law check; a failure always carries the first counterexample."""
    law: str
    sample: str
    passed: bool = True
    checked: int = 0
    seed: int | None = None
    elapsed: float = 0.0
    counterexample: dict | None = field(default=None)

    def fail(self, item, lhs, rhs):
        self.passed = False
        self.counterexample = {
            'input': _render(item),
            'lhs': _render(lhs),
            'rhs': _render(rhs),
        }
        logger.info(f"{self.law} fails on {self.counterexample['input']}")
        return self

    def to_dict(self):
        return {
            'law': self.law,
            'sample': self.sample,
            'passed': self.passed,
            'checked': self.checked,
            'seed': self.seed,
            'elapsed': round(self.elapsed, 3),
            'counterexample': self.counterexample,
        }


def _render(x):
    if isinstance(x, Element):
        return x.render()
    if isinstance(x, tuple) and not isinstance(x, (Word, Phrase)) and x and not hasattr(x, 'sort_key'):
        return ' ; '.join(_render(part) for part in x)
    return str(x)


def _run(law, sample, items, check, seed=None):
    """Feed every sample to ``check(item)``, which returns None or (lhs, rhs)."""
    report = LawReport(law, sample, seed=seed)
    started = time.perf_counter()
    for item in items:
        report.checked += 1
        outcome = check(item)
        if outcome is not None:
            report.fail(item, *outcome)
            break
    report.elapsed = time.perf_counter() - started
    logger.info(f"{law} on {sample}: {'pass' if report.passed else 'FAIL'} after {report.checked} samples")
    return report


def _unit_element(ring):
    return Element.basis(UNIT_PHRASE, ring)


def check_pre_lie(rho, samples, description='words'):
    """P^{1,2}-invariance of the associator (id⊗ρ)ρ - (ρ⊗id)ρ on each sample word."""
    def check(word):
        image = rho(word)
        associator = image.apply_at(1, rho) - image.apply_at(0, rho)
        swapped = associator.permute((1, 0, 2))
        if swapped != associator:
            return swapped, associator
        return None
    return _run('pre-lie', description, samples, check)


def check_coassoc(delta, samples, description='samples'):
    """(id⊗Δ)Δ = (Δ⊗id)Δ."""
    def check(item):
        image = delta(item)
        lhs = image.apply_at(1, delta)
        rhs = image.apply_at(0, delta)
        if lhs != rhs:
            return lhs, rhs
        return None
    return _run('coassoc', description, samples, check)


def check_bialgebra(delta, pairs, mult=None, description='pairs'):
    """Δ(pq) = Δ(p)Δ(q) on pairs of basis elements."""
    mult = mult or (lambda p, q: p + q)

    def check(pair):
        p, q = pair
        lhs = delta(mult(p, q))
        rhs = delta(p).multiply(delta(q))
        if lhs != rhs:
            return lhs, rhs
        return None
    return _run('bialgebra', description, pairs, check)


def _counit_value(ring, basis):
    return ring.one if len(basis) == 0 else ring.zero


def check_counit(delta, samples, ring=INTEGER, description='phrases'):
    """(ε⊗id)Δ = id = (id⊗ε)Δ with ε the coefficient of the unit."""
    def check(item):
        image = delta(item)
        expected = Element.basis(item, ring)
        left = Element.zero(ring)
        right = Element.zero(ring)
        for (a, b), c in image.items():
            if len(a) == 0:
                left.add_term(b, c)
            if len(b) == 0:
                right.add_term(a, c)
        if left != expected:
            return left, expected
        if right != expected:
            return right, expected
        return None
    return _run('counit', description, samples, check)


def check_antipode(delta, antipode, samples, ring=INTEGER, description='phrases'):
    """μ(id⊗s)Δ = ε·1 = μ(s⊗id)Δ."""
    def check(item):
        image = delta(item)
        expected = _unit_element(ring).scale(_counit_value(ring, item))
        right_side = Element.zero(ring)
        left_side = Element.zero(ring)
        for (a, b), c in image.items():
            right_side = right_side + Element.basis(a, ring).multiply(antipode(b)).scale(c)
            left_side = left_side + antipode(a).multiply(Element.basis(b, ring)).scale(c)
        if right_side != expected:
            return right_side, expected
        if left_side != expected:
            return left_side, expected
        return None
    return _run('antipode', description, samples, check)


def check_comodule(theta, delta, samples, description='words'):
    """(Δ⊗id)Θ = (id⊗Θ)Θ, and Θ(u) - 1⊗u has non-unit left factors only."""
    def check(word):
        image = theta(word)
        unit_part = image.project(lambda key: len(key[0]) == 0)
        expected = Element.basis((UNIT_PHRASE, word), image.ring, arity=2)
        if unit_part != expected:
            return unit_part, expected
        lhs = image.apply_at(0, delta)
        rhs = image.apply_at(1, theta)
        if lhs != rhs:
            return lhs, rhs
        return None
    return _run('comodule', description, samples, check)


def cobracket(rho):
    """ρ̂ = ρ - P^{1,2}ρ."""
    def evaluate(word):
        image = rho(word)
        return image - image.permute((1, 0))
    return evaluate


def check_cojacobi(rho, samples, description='words'):
    """Co-antisymmetry of ρ̂ and vanishing of the cyclic sum of (ρ̂⊗id)ρ̂."""
    hat = cobracket(rho)

    def check(word):
        image = hat(word)
        if image.permute((1, 0)) != -image:
            return image.permute((1, 0)), -image
        twice = image.apply_at(0, hat)
        cyclic = twice + twice.permute((1, 2, 0)) + twice.permute((2, 0, 1))
        if cyclic:
            return cyclic, 0
        return None
    return _run('cojacobi', description, samples, check)


def check_leading_term(delta, rho, samples, ring=INTEGER, description='words'):
    """Projecting Δ(w) onto one-word ⊗ one-word phrases recovers ρ(w)."""
    def check(word):
        projected = Element.zero(ring, 2)
        for (a, b), c in delta(Phrase((word,))).items():
            if len(a) == 1 and len(b) == 1:
                projected.add_term((a[0], b[0]), c)
        expected = rho(word)
        if projected != expected:
            return projected, expected
        return None
    return _run('leading-term', description, samples, check)


def check_left_handed(delta, samples, description='words'):
    """Δ(w) - w⊗1 - 1⊗w lies in (non-unit phrases) ⊗ (one-word phrases)."""
    def check(word):
        phrase = Phrase((word,))
        image = delta(phrase)
        for (a, b), c in image.items():
            if (a, b) in ((phrase, UNIT_PHRASE), (UNIT_PHRASE, phrase)):
                continue
            if len(a) == 0 or len(b) != 1:
                return image, f"offending term {a} ⊗ {b}"
        return None
    return _run('left-handed', description, samples, check)


def check_duality(delta, product, r_samples, pq_pairs, description='phrases'):
    """⟨Δ(r), δ_p⊗δ_q⟩ = ⟨r, p∘q⟩ for every sample r and pair (p, q)."""
    products = [(p, q, product(p, q)) for p, q in pq_pairs]

    def check(r):
        image = delta(r)
        for p, q, pq in products:
            lhs = image[(p, q)]
            rhs = pq[r]
            if lhs != rhs:
                return f"<Δ({r}), {p} ⊗ {q}> = {lhs}", f"<{r}, {p} ∘ {q}> = {rhs}"
        return None
    return _run('duality', description, r_samples, check)


def check_associativity(product, triples, description='triples'):
    """(p∘q)∘r = p∘(q∘r), with ∘ extended bilinearly."""
    def check(triple):
        p, q, r = triple
        lhs = product(p, q).apply(lambda x: product(x, r))
        rhs = product(q, r).apply(lambda y: product(p, y))
        if lhs != rhs:
            return lhs, rhs
        return None
    return _run('associativity', description, triples, check)


def check_closure(delta, predicate, samples, description='samples'):
    """Every tensor factor of Δ(x) satisfies ``predicate`` (sub-coalgebra closure)."""
    def check(item):
        image = delta(item)
        for key in image:
            for factor in image.factors(key):
                if not predicate(factor):
                    return image, f"factor {factor} outside the subspace"
        return None
    return _run('closure', description, samples, check)


def check_intertwines(alpha, source, target, samples, description='words'):
    """map_letters(α) ∘ source = target ∘ map_letters(α)."""
    def check(item):
        lhs = map_letters(alpha, source(item))
        rhs = target(map_letters(alpha, item))
        if lhs != rhs:
            return lhs, rhs
        return None
    return _run('functoriality', description, samples, check)


def drop_term(fn, at, key=None):
    """
    Corrupt a comultiplication at one basis input by deleting one term.

    Args:
        fn (callable): basis -> Element
        at: the basis element whose image is corrupted
        key: the term to drop; defaults to the first term in canonical order
    """
    def corrupted(basis):
        image = fn(basis)
        if basis != at or type(basis) is not type(at):
            return image
        if not image:
            return image
        victim = key if key is not None else image.sorted_items()[0][0]
        return image.project(lambda k: k != victim)
    return corrupted


def words(alphabet, max_length, min_length=0):
    return list(iter_words(alphabet, max_length, min_length))


def _compositions(n):
    """Ordered tuples of positive integers summing to n."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def strict_phrases(alphabet, max_letters, min_letters=0):
    """All phrases of non-empty words with total letter count in range, unit first."""
    found = []
    for n in range(min_letters, max_letters + 1):
        for sizes in _compositions(n):
            pools = [list(iter_words(alphabet, size, size)) for size in sizes]
            for chosen in itertools.product(*pools):
                found.append(Phrase(chosen))
    return found


def phrases(alphabet, max_letters, max_words=3):
    """All phrases (empty words allowed) with at most ``max_words`` words and ``max_letters`` letters."""
    found = [UNIT_PHRASE]
    for count in range(1, max_words + 1):
        for sizes in itertools.product(range(max_letters + 1), repeat=count):
            if sum(sizes) > max_letters:
                continue
            pools = [list(iter_words(alphabet, size, size)) for size in sizes]
            for chosen in itertools.product(*pools):
                found.append(Phrase(chosen))
    return found


def random_words(alphabet, count, min_length, max_length, seed):
    rng = random.Random(seed)
    alphabet = list(alphabet)
    return [Word(rng.choice(alphabet) for _ in range(rng.randint(min_length, max_length))) for _ in range(count)]


def random_phrases(alphabet, count, max_letters, seed, strict=True, max_words=3):
    """Seeded random phrases; strict phrases contain no empty word."""
    rng = random.Random(seed)
    alphabet = list(alphabet)
    found = []
    for _ in range(count):
        k = rng.randint(0, max_words)
        budget = rng.randint(0, max_letters)
        words_ = []
        for _ in range(k):
            low = 1 if strict else 0
            if strict and budget < 1:
                break
            size = rng.randint(low, max(low, budget)) if budget >= low else low
            budget -= size
            words_.append(Word(rng.choice(alphabet) for _ in range(size)))
        found.append(Phrase(words_))
    return found


def random_pairing(alphabet, seed, values=range(-2, 3), ring=INTEGER):
    """A finitely supported pairing with seeded random values on alphabet × alphabet."""
    rng = random.Random(seed)
    values = list(values)
    return Pairing({(a, b): rng.choice(values) for a in alphabet for b in alphabet}, ring)


def unlaced_words(max_edges, alphabet=None):
    """Boundary words of all decorated planar trees up to ``max_edges`` edges."""
    found = []
    for n in range(max_edges + 1):
        for tree in planar_trees(n, alphabet):
            found.append(tree_to_word(tree))
    return found


def check_tree_oracle(delta, samples, ring=INTEGER, description='forests'):
    """The boundary-word encoding of the admissible-cut coproduct agrees with ``delta`` on every forest."""
    def check(forest):
        lhs = encode_forests(ck_coproduct(forest, ring))
        rhs = delta(forest_to_phrase(forest))
        if lhs != rhs:
            return lhs, rhs
        return None
    return _run('tree-oracle', description, samples, check)
