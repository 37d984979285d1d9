import json

import pytest

from utils.axiom_suite import LawReport
from utils.output_formatter import format_output, get_supported_formats
from utils.words import Element, Word

from helpers import terms


def test_text_and_json():
    element = terms({'A ⊗ B': 2})
    assert format_output(element) == '2 · A ⊗ B'
    assert json.loads(format_output(element, 'json')) == [{'left': 'A', 'right': 'B', 'coeff': '2'}]
    assert format_output(Word('AB')) == 'AB'
    assert format_output(Element.zero()) == '0'


def test_failed_report_lists_the_counterexample():
    report = LawReport('coassoc', 'phrases').fail('(AB)', 'x', 'y')
    text = format_output(report)
    assert text.startswith('FAIL coassoc on phrases')
    assert '  input: (AB)' in text
    assert json.loads(format_output(report, 'json'))['counterexample']['lhs'] == 'x'


def test_markdown_and_html():
    element = terms({'A ⊗ B': 1})
    markdown_text = format_output(element, 'markdown', title='ρ AB')
    assert markdown_text.startswith('## ρ AB')
    assert '```\nA ⊗ B\n```' in markdown_text
    html = format_output(element, 'html', title='ρ AB')
    assert '<h2>' in html
    assert '<code>' in html


def test_unknown_format():
    with pytest.raises(ValueError):
        format_output(Word('A'), 'pdf')
    assert 'html' in get_supported_formats()
