from pydantic import BaseModel

from mengercurv.core.schemes import CommandResult


class RenderedReport(BaseModel):
    """A saved result and its aligned-column text."""

    result: CommandResult
    text: str
