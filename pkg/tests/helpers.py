from utils.coefficients import INTEGER
from utils.words import Element, parse_basis


def terms(spec, kinds=('word', 'word'), ring=INTEGER):
    """Build an element from {'A ⊗ BA': 1, ...}; '1' is the empty phrase, '~' the empty word."""
    result = Element.zero(ring, len(kinds))
    for text, coeff in spec.items():
        parts = [part.strip() for part in text.split('⊗')]
        assert len(parts) == len(kinds), text
        key = Element.make_key(tuple(parse_basis(part, kind) for part, kind in zip(parts, kinds)))
        result.add_term(key, coeff)
    return result


def phrase_terms(spec, ring=INTEGER):
    return terms(spec, ('phrase', 'phrase'), ring)
