import json
import logging

import markdown

from utils.words import Element, Phrase, Word, render_basis

logger = logging.getLogger(__name__)


def _is_report(result):
    return hasattr(result, 'to_dict') and hasattr(result, 'passed')


def format_report_text(report):
    """One summary line, plus the counterexample when the check failed."""
    data = report.to_dict()
    name = data.get('law') or data.get('descriptor')
    scope = data.get('sample') or f"alphabet {''.join(data.get('alphabet', []))}, length <= {data.get('max_length')}"
    status = 'PASS' if data['passed'] else 'FAIL'
    output = f"{status} {name} on {scope} ({data['checked']} checked)"
    if data.get('seed') is not None:
        output += f" seed={data['seed']}"
    counterexample = data.get('counterexample')
    if counterexample:
        for key, value in counterexample.items():
            output += f"\n  {key}: {value}"
    return output


def format_as_text(result, separated=False):
    """
    Format a computation result as plain text.

    Args:
        result: an Element, a law/stability report, or a scalar value
        separated (bool): comma-separate letters, for alphabets with multi-character letters

    Returns:
        str: canonical text, terms in basis order
    """
    if isinstance(result, Element):
        return result.render(separated)
    if _is_report(result):
        return format_report_text(result)
    if isinstance(result, (Word, Phrase)):
        return render_basis(result, separated)
    if isinstance(result, list):
        return "\n".join(format_as_text(item, separated) for item in result)
    return str(result)


def to_json_data(result, separated=False):
    if isinstance(result, Element):
        return result.to_json(separated)
    if _is_report(result):
        return result.to_dict()
    if isinstance(result, list):
        return [to_json_data(item, separated) for item in result]
    return {'value': str(result)}


def format_as_json(result, separated=False):
    return json.dumps(to_json_data(result, separated), indent=2, ensure_ascii=False)


def format_as_markdown(result, title=None, separated=False):
    """A heading per result followed by the text rendering in a fenced block."""
    output = ""
    if title:
        output += f"## {title}\n\n"
    output += "```\n" + format_as_text(result, separated) + "\n```\n"
    return output


def format_as_html(result, title=None, separated=False):
    return markdown.markdown(format_as_markdown(result, title, separated), extensions=['fenced_code'])


def format_output(result, format_type='text', title=None, separated=False):
    """
    Render a result in one of the supported formats.

    Raises:
        ValueError: for an unknown format
    """
    format_type = format_type.lower()
    if format_type == 'text':
        return format_as_text(result, separated)
    elif format_type == 'json':
        return format_as_json(result, separated)
    elif format_type == 'markdown':
        return format_as_markdown(result, title, separated)
    elif format_type == 'html':
        return format_as_html(result, title, separated)
    else:
        raise ValueError(f"Unsupported output format: {format_type}")


def get_supported_formats():
    """
    Get list of supported output formats

    Returns:
        dict: Dictionary of supported formats with descriptions
    """
    return {
        'text': {
            'name': 'Plain Text',
            'description': 'Canonical term order, "c · basis" terms joined by " + "'
        },
        'json': {
            'name': 'JSON',
            'description': 'Arrays of {basis|left|right, coeff} rows, coefficients as strings'
        },
        'markdown': {
            'name': 'Markdown',
            'description': 'A heading per result with a fenced block'
        },
        'html': {
            'name': 'HTML',
            'description': 'The markdown rendering converted to HTML'
        },
    }
