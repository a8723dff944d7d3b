from abc import ABC, abstractmethod
from typing import Any

from pydantic import ValidationError

from mengercurv.actions.report.schemes import RenderedReport
from mengercurv.cli.schemes import RunConfig
from mengercurv.core.exceptions import ConfigError
from mengercurv.helpers.report import load_result
from mengercurv.verify.render import render_result


class ReportActionInterface(ABC):
    """
    Interface for rendering saved results.
    """

    @abstractmethod
    def run(self, config: RunConfig) -> RenderedReport:
        pass


class AbstractReportAction(ReportActionInterface):
    def __init__(self, client: Any):
        self.client = client

    def _load(self, config: RunConfig):
        if not config.path.is_file():
            raise ConfigError(f"no such file: {config.path}", "path")
        try:
            return load_result(config.path)
        except ValidationError as e:
            raise ConfigError(f"not a saved result: {e.errors()[0]['msg']}", "path") from e


class ReportAction(AbstractReportAction):
    def run(self, config: RunConfig) -> RenderedReport:
        """
        Loads a JSON result written by an earlier run and renders it as text.
        """
        result = self._load(config)
        return RenderedReport(result=result, text=render_result(result))
