"""Session language, command dispatch and the ``brim`` CLI."""
from .ast import SessionAst, pretty
from .parser import ParseError, parse_session
from .session import OutputRecord, SessionResult, run_command, run_session

__all__ = [
    "OutputRecord",
    "ParseError",
    "SessionAst",
    "SessionResult",
    "parse_session",
    "pretty",
    "run_command",
    "run_session",
]
