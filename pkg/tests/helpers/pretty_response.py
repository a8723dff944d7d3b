from pygments import highlight
from pygments.formatters.terminal import TerminalFormatter
from pygments.lexers import JsonLexer


def handle_response(response):
    """Prints a pydantic result as highlighted JSON."""
    json_data = response.model_dump_json(indent=2)
    print(highlight(json_data, JsonLexer(), TerminalFormatter()))
