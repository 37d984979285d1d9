import functools
import itertools
import logging
import os
import sys
from dataclasses import dataclass

import click

from utils import axiom_suite
from utils.coefficients import Ring
from utils.cut_coalgebra import MAX_CUT_LENGTH, cut_bialgebra, delta_S, rho_L
from utils.indicators import (
    act_L, act_mu, bracket_L, bracket_mu, deconcat, dual_product_L, dual_product_mu,
    exp_action, exp_action_mu, gerstenhaber_circ, parse_indicator, star_L, star_mu,
)
from utils.inscription_coalgebra import MAX_INSCRIPTION_LENGTH, Pairing, inscription_bialgebra, parse_pairing, rho_mu
from utils.output_formatter import format_output
from utils.rooted_trees import forests, is_unlaced, parse_tree, tree_to_word, word_to_tree
from utils.stable_sets import parse_stable, parse_strong, verify_stability, verify_strong_stability
from utils.words import needs_separator, parse_phrase, parse_word

logger = logging.getLogger(__name__)

LAWS = (
    'pre-lie', 'coassoc', 'bialgebra', 'counit', 'antipode', 'comodule', 'cojacobi',
    'leading-term', 'left-handed', 'duality', 'associativity', 'closure',
)


class InputError(click.ClickException):
    """Malformed input, cap exceeded or any other domain error."""
    exit_code = 2


@dataclass
class Settings:
    ring: Ring
    letters: list | None
    format_type: str
    seed: int
    max_cut_length: int
    max_inscription_length: int

    def word(self, text):
        return parse_word(text, self.letters)

    def phrase(self, text):
        return parse_phrase(text, self.letters)

    @property
    def separated(self):
        return needs_separator(self.letters)

    def alphabet(self, text):
        if self.letters:
            return list(self.letters)
        return list(text)

    def emit(self, result, title=None):
        click.echo(format_output(result, self.format_type, title, self.separated))


def _configure_logging(verbose):
    level = 'DEBUG' if verbose else os.environ.get('PHRASEHOPF_LOG_LEVEL', 'WARNING').upper()
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')
    logging.getLogger().setLevel(level)


def common_options(f):
    """Options shared by every subcommand, collected into a Settings object."""
    @click.option('--ring', default='int', show_default=True, help='Coefficient ring: int, rat or mod:N')
    @click.option('--letters', default=None, help='Comma-separated multi-character alphabet')
    @click.option('--json', 'as_json', is_flag=True, help='Emit JSON instead of text')
    @click.option('--format', 'format_type', default='text', show_default=True,
                  type=click.Choice(['text', 'json', 'markdown', 'html']), help='Output format')
    @click.option('--seed', default=0, show_default=True, type=int, help='Seed for randomized samples')
    @click.option('--max-cut-length', default=MAX_CUT_LENGTH, show_default=True, type=int,
                  help='Longest word the cut enumeration accepts')
    @click.option('--max-inscription-length', default=MAX_INSCRIPTION_LENGTH, show_default=True, type=int,
                  help='Longest word the inscription enumeration accepts')
    @click.option('--verbose', is_flag=True, help='Debug logging')
    @functools.wraps(f)
    def wrapper(ring, letters, as_json, format_type, seed, max_cut_length, max_inscription_length,
                verbose, **kwargs):
        _configure_logging(verbose)
        try:
            settings = Settings(
                ring=Ring.from_label(ring),
                letters=[x for x in letters.split(',') if x] if letters else None,
                format_type='json' if as_json else format_type,
                seed=seed,
                max_cut_length=max_cut_length,
                max_inscription_length=max_inscription_length,
            )
            return f(settings, **kwargs)
        except ValueError as e:
            logger.debug(f"Input error: {str(e)}")
            raise InputError(str(e))
    return wrapper


@click.group()
def cli():
    """Exact cut and inscription coproducts on words and phrases."""


def _pairing(settings, text, alphabet=None):
    letters = settings.alphabet(alphabet) if alphabet else None
    return parse_pairing(text, settings.ring, letters)


@cli.command('coprod-L')
@click.argument('phrase')
@click.option('--stable', default='all', show_default=True, help='Stable-set descriptor')
@common_options
def coprod_L(settings, phrase, stable):
    """Cut comultiplication Δ_L of a phrase."""
    bialgebra = cut_bialgebra(parse_stable(stable), settings.ring, settings.max_cut_length)
    settings.emit(bialgebra.coproduct(settings.phrase(phrase)), f"Δ_L {phrase}")


@cli.command('antipode-L')
@click.argument('phrase')
@click.option('--stable', default='all', show_default=True, help='Stable-set descriptor')
@common_options
def antipode_L(settings, phrase, stable):
    bialgebra = cut_bialgebra(parse_stable(stable), settings.ring, settings.max_cut_length)
    settings.emit(bialgebra.antipode(settings.phrase(phrase)), f"s_L {phrase}")


@cli.command('rho-L')
@click.argument('word')
@click.option('--stable', default='all', show_default=True, help='Stable-set descriptor')
@common_options
def rho_L_command(settings, word, stable):
    """Pre-Lie comultiplication ρ_L of a non-empty word."""
    settings.emit(rho_L(settings.word(word), parse_stable(stable), settings.ring), f"ρ_L {word}")


@cli.command('shuffle-S')
@click.argument('word')
@click.option('--strong', default='all', show_default=True, help='Strongly stable descriptor')
@common_options
def shuffle_S(settings, word, strong):
    """Subword comultiplication Δ_S; ``--strong all`` is the shuffle coproduct."""
    result = delta_S(settings.word(word), parse_strong(strong), settings.ring, settings.max_inscription_length)
    settings.emit(result, f"Δ_S {word}")


@cli.command('coprod-mu')
@click.argument('phrase')
@click.option('--pairing', default='delta', show_default=True, help="'delta' or a JSON file of {a, b, coeff}")
@common_options
def coprod_mu(settings, phrase, pairing):
    """Inscription comultiplication Δ_μ of a phrase."""
    bialgebra = inscription_bialgebra(_pairing(settings, pairing), settings.max_inscription_length)
    settings.emit(bialgebra.coproduct(settings.phrase(phrase)), f"Δ_μ {phrase}")


@cli.command('antipode-mu')
@click.argument('phrase')
@click.option('--pairing', default='delta', show_default=True, help="'delta' or a JSON file of {a, b, coeff}")
@common_options
def antipode_mu(settings, phrase, pairing):
    bialgebra = inscription_bialgebra(_pairing(settings, pairing), settings.max_inscription_length)
    settings.emit(bialgebra.antipode(settings.phrase(phrase)), f"s_μ {phrase}")


@cli.command('rho-mu')
@click.argument('word')
@click.option('--pairing', default='delta', show_default=True, help="'delta' or a JSON file of {a, b, coeff}")
@common_options
def rho_mu_command(settings, word, pairing):
    settings.emit(rho_mu(settings.word(word), _pairing(settings, pairing)), f"ρ_μ {word}")


def _family(settings, stable, pairing):
    """The stable set, or the pairing when one was given."""
    if pairing:
        return None, _pairing(settings, pairing)
    return parse_stable(stable or 'all'), None


@cli.command('act')
@click.argument('word')
@click.option('--indicator', 'indicator_spec', required=True, help='fA, len, delta:<word> or a JSON table')
@click.option('--stable', default=None, help='Act through ρ_L (default when no pairing is given)')
@click.option('--pairing', default=None, help='Act through ρ_μ')
@common_options
def act(settings, word, indicator_spec, stable, pairing):
    """Left action f w = -w f of a word indicator."""
    f = parse_indicator(indicator_spec, settings.ring, settings.letters)
    stable_set, mu = _family(settings, stable, pairing)
    w = settings.word(word)
    result = act_mu(f, w, mu) if mu else act_L(f, w, stable_set, settings.ring)
    settings.emit(result, f"{indicator_spec} · {word}")


@cli.command('exp-act')
@click.argument('word')
@click.option('--indicator', 'indicator_spec', required=True, help='fA, len, delta:<word> or a JSON table')
@click.option('--stable', default=None, help='Act through ρ_L (default when no pairing is given)')
@click.option('--pairing', default=None, help='Act through ρ_μ')
@common_options
def exp_act(settings, word, indicator_spec, stable, pairing):
    """Exponential action, rational mode only."""
    f = parse_indicator(indicator_spec, settings.ring, settings.letters)
    stable_set, mu = _family(settings, stable, pairing)
    w = settings.word(word)
    result = exp_action_mu(f, w, mu) if mu else exp_action(f, w, stable_set, settings.ring)
    settings.emit(result, f"exp({indicator_spec}) · {word}")


@cli.command('star')
@click.argument('f_spec')
@click.argument('g_spec')
@click.argument('word')
@click.option('--stable', default=None, help='Use ⋆_L (default when no pairing is given)')
@click.option('--pairing', default=None, help='Use ⋆_μ')
@click.option('--bracket', is_flag=True, help='Evaluate [f, g] instead of f ⋆ g')
@common_options
def star(settings, f_spec, g_spec, word, stable, pairing, bracket):
    """Evaluate ⟨w, f ⋆ g⟩ or ⟨w, [f, g]⟩."""
    f = parse_indicator(f_spec, settings.ring, settings.letters)
    g = parse_indicator(g_spec, settings.ring, settings.letters)
    stable_set, mu = _family(settings, stable, pairing)
    w = settings.word(word)
    if mu:
        value = bracket_mu(f, g, mu, w) if bracket else star_mu(f, g, mu, w)
    else:
        value = bracket_L(f, g, stable_set, w) if bracket else star_L(f, g, stable_set, w)
    settings.emit(settings.ring.render(value))


@cli.command('gerstenhaber')
@click.argument('w')
@click.argument('x')
@click.option('--stable', default='all', show_default=True, help='Stable-set descriptor')
@common_options
def gerstenhaber(settings, w, x, stable):
    """Insertion product w ∘_L x."""
    settings.emit(gerstenhaber_circ(settings.word(w), settings.word(x), parse_stable(stable), settings.ring))


@cli.command('dual-L')
@click.argument('p')
@click.argument('q')
@click.option('--stable', default='all', show_default=True, help='Stable-set descriptor')
@common_options
def dual_L(settings, p, q, stable):
    """Product p ∘_L q dual to Δ_L."""
    settings.emit(dual_product_L(settings.phrase(p), settings.phrase(q), parse_stable(stable), settings.ring))


@cli.command('dual-mu')
@click.argument('p')
@click.argument('q')
@click.option('--pairing', default='delta', show_default=True, help="'delta' or a JSON file of {a, b, coeff}")
@click.option('--alphabet', default=None, help='Alphabet supporting the delta pairing; defaults to the letters of p and q')
@common_options
def dual_mu(settings, p, q, pairing, alphabet):
    """Product p ∘_μ q dual to Δ_μ; μ must have finite support."""
    p, q = settings.phrase(p), settings.phrase(q)
    if pairing != 'delta':
        mu = _pairing(settings, pairing)
    else:
        used = sorted({letter for phrase in (p, q) for word in phrase for letter in word})
        letters = settings.alphabet(alphabet) if alphabet or settings.letters else used
        if not letters:
            raise ValueError("The delta pairing needs an alphabet for these inputs; pass --alphabet")
        outside = [letter for letter in used if letter not in letters]
        if outside:
            raise ValueError(f"Letters {', '.join(outside)} are outside the alphabet {', '.join(letters)}")
        mu = Pairing.delta(letters, settings.ring)
    settings.emit(dual_product_mu(p, q, mu))


@cli.command('deconcat')
@click.argument('phrase')
@common_options
def deconcat_command(settings, phrase):
    settings.emit(deconcat(settings.phrase(phrase), settings.ring))


@cli.command('tree2word')
@click.argument('tree')
@common_options
def tree2word(settings, tree):
    """Boundary word of a decorated planar tree such as A(B,C)."""
    settings.emit(tree_to_word(parse_tree(tree)))


@cli.command('word2tree')
@click.argument('word')
@common_options
def word2tree(settings, word):
    """Decorated planar tree of an unlaced word."""
    settings.emit(word_to_tree(settings.word(word)))


@cli.command('ck-check')
@click.option('--max-edges', default=4, show_default=True, type=int)
@click.option('--max-trees', default=2, show_default=True, type=int)
@common_options
def ck_check(settings, max_edges, max_trees):
    """Compare the admissible-cut coproduct with Δ_μ (μ = delta) on all small forests."""
    bialgebra = inscription_bialgebra(Pairing.delta(ring=settings.ring), settings.max_inscription_length)
    samples = forests(max_edges, max_trees)
    report = axiom_suite.check_tree_oracle(
        bialgebra.coproduct, samples, settings.ring,
        description=f"forests <= {max_edges} edges, <= {max_trees} trees",
    )
    settings.emit(report, 'tree oracle')
    if not report.passed:
        click.get_current_context().exit(1)


@cli.command('verify-stable')
@click.option('--stable', default=None, help='Stable-set descriptor')
@click.option('--strong', default=None, help='Strongly stable descriptor')
@click.option('--alphabet', default='AB', show_default=True)
@click.option('--max-len', default=6, show_default=True, type=int)
@common_options
def verify_stable(settings, stable, strong, alphabet, max_len):
    """Exhaustively test the deletion/insertion condition up to a length bound."""
    letters = settings.alphabet(alphabet)
    if strong:
        report = verify_strong_stability(parse_strong(strong), letters, max_len)
    else:
        report = verify_stability(parse_stable(stable or 'all'), letters, max_len)
    settings.emit(report, 'stability')
    if not report.passed:
        click.get_current_context().exit(1)


def _pairs(items, limit, size_of):
    return [(p, q) for p, q in itertools.product(items, repeat=2) if size_of(p) + size_of(q) <= limit]


def build_check(law, coprod, settings, stable=None, strong=None, pairing='delta', alphabet='AB',
                max_len=4, max_pair_len=3, random_count=0):
    """
    Resolve a law name and a comultiplication family into a runnable check.

    Returns:
        callable: no-argument function producing a LawReport

    Raises:
        ValueError: for an unsupported law/family combination
    """
    letters = settings.alphabet(alphabet)
    ring = settings.ring
    seed = settings.seed if random_count else None

    if coprod == 'S':
        strong_set = parse_strong(strong or 'all')
        delta = lambda w: delta_S(w, strong_set, ring, settings.max_inscription_length)
        words = (axiom_suite.random_words(letters, random_count, 0, max_len, settings.seed) if random_count
                 else axiom_suite.words(letters, max_len))
        if law == 'coassoc':
            return lambda: axiom_suite.check_coassoc(delta, words, f"words <= {max_len} over {''.join(letters)}")
        raise ValueError(f"Law '{law}' is not available for Δ_S")

    if coprod == 'L':
        stable_set = parse_stable(stable or 'all')
        bialgebra = cut_bialgebra(stable_set, ring, settings.max_cut_length)
        min_word = 1

        def phrase_samples(limit):
            return axiom_suite.strict_phrases(letters, limit)
        in_family = lambda phrase: all(stable_set.contains(w) for w in phrase)
    elif coprod == 'mu':
        mu = parse_pairing(pairing, ring, letters)
        bialgebra = inscription_bialgebra(mu, settings.max_inscription_length)
        min_word = 0

        def phrase_samples(limit):
            return axiom_suite.phrases(letters, limit)
        in_family = lambda phrase: all(is_unlaced(w) for w in phrase)
    else:
        raise ValueError(f"Unknown comultiplication family: {coprod}")

    scope = f"<= {max_len} letters over {''.join(letters)}"
    if random_count:
        words = axiom_suite.random_words(letters, random_count, max(min_word, 1), max_len, settings.seed)
        if coprod == 'L':
            phrase_list = axiom_suite.random_phrases(letters, random_count, max_len, settings.seed)
        else:
            phrase_list = axiom_suite.random_phrases(letters, random_count, max_len, settings.seed, strict=False)
        scope = f"{random_count} random samples, " + scope
    else:
        words = axiom_suite.words(letters, max_len, min_word)
        phrase_list = phrase_samples(max_len)

    def with_seed(check):
        def run_check():
            report = check()
            report.seed = seed
            return report
        return run_check

    if law == 'pre-lie':
        return with_seed(lambda: axiom_suite.check_pre_lie(bialgebra.rho_word, words, f"words {scope}"))
    if law == 'cojacobi':
        return with_seed(lambda: axiom_suite.check_cojacobi(bialgebra.rho_word, words, f"words {scope}"))
    if law == 'comodule':
        nonempty = [w for w in words if len(w) >= min_word]
        return with_seed(lambda: axiom_suite.check_comodule(bialgebra.theta_word, bialgebra.coproduct, nonempty, f"words {scope}"))
    if law == 'leading-term':
        return with_seed(lambda: axiom_suite.check_leading_term(bialgebra.coproduct, bialgebra.rho_word, words, ring, f"words {scope}"))
    if law == 'left-handed':
        return with_seed(lambda: axiom_suite.check_left_handed(bialgebra.coproduct, words, f"words {scope}"))
    if law == 'coassoc':
        return with_seed(lambda: axiom_suite.check_coassoc(bialgebra.coproduct, phrase_list, f"phrases {scope}"))
    if law == 'counit':
        return with_seed(lambda: axiom_suite.check_counit(bialgebra.coproduct, phrase_list, ring, f"phrases {scope}"))
    if law == 'antipode':
        return with_seed(lambda: axiom_suite.check_antipode(bialgebra.coproduct, bialgebra.antipode, phrase_list, ring, f"phrases {scope}"))
    if law == 'bialgebra':
        pairs = _pairs(phrase_samples(max_len), max_len, lambda p: p.letter_count)
        return lambda: axiom_suite.check_bialgebra(bialgebra.coproduct, pairs, description=f"phrase pairs {scope}")
    if law == 'closure':
        members = [p for p in phrase_list if in_family(p)]
        return with_seed(lambda: axiom_suite.check_closure(bialgebra.coproduct, in_family, members, f"family phrases {scope}"))
    if law in ('duality', 'associativity'):
        if coprod == 'L':
            product = lambda p, q: dual_product_L(p, q, stable_set, ring)
        else:
            product = lambda p, q: dual_product_mu(p, q, mu)
        small = phrase_samples(max_pair_len)
        if law == 'duality':
            pairs = _pairs(small, max_pair_len, lambda p: p.letter_count)
            return lambda: axiom_suite.check_duality(
                bialgebra.coproduct, product, phrase_samples(max_len), pairs,
                f"r {scope}, p⊗q <= {max_pair_len} letters")
        triples = [t for t in itertools.product(small, repeat=3) if sum(p.letter_count for p in t) <= max_pair_len]
        return lambda: axiom_suite.check_associativity(product, triples, f"triples <= {max_pair_len} letters")
    raise ValueError(f"Unknown law: {law}")


@cli.command('check')
@click.option('--law', required=True, type=click.Choice(LAWS))
@click.option('--coprod', default='L', show_default=True, type=click.Choice(['L', 'mu', 'S']))
@click.option('--stable', default=None, help='Stable-set descriptor for --coprod L')
@click.option('--strong', default=None, help='Strongly stable descriptor for --coprod S')
@click.option('--pairing', default='delta', show_default=True, help='Pairing for --coprod mu')
@click.option('--alphabet', default='AB', show_default=True)
@click.option('--max-len', default=4, show_default=True, type=int, help='Largest word length or phrase letter count')
@click.option('--max-pair-len', default=3, show_default=True, type=int, help='Letter bound for p, q in duality')
@click.option('--random', 'random_count', default=0, type=int, help='Use this many seeded random samples')
@common_options
def check(settings, law, coprod, stable, strong, pairing, alphabet, max_len, max_pair_len, random_count):
    """Run one law check; exits 1 when the law fails."""
    ctx = click.get_current_context()
    if coprod == 'L':
        stable_set = parse_stable(stable or 'all')
        if not stable_set.verified:
            stability = verify_stability(stable_set, settings.alphabet(alphabet), max_len)
            if not stability.passed:
                settings.emit(stability, 'stability')
                ctx.exit(1)
    run_check = build_check(law, coprod, settings, stable, strong, pairing, alphabet,
                            max_len, max_pair_len, random_count)
    report = run_check()
    settings.emit(report, law)
    if not report.passed:
        ctx.exit(1)


def run(argv):
    """
    Run the command line on ``argv``.

    Returns:
        int: 0 on success, 1 on law failure, 2 on malformed input
    """
    try:
        result = cli.main(args=list(argv), prog_name='phrasehopf', standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        click.echo('Aborted!', err=True)
        return 1
    return result if isinstance(result, int) else 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
