"""
Report emitters
JSON for every report, flat CSV for verify tables; always to standard output
"""
import csv
import json
import sys
from typing import TextIO

from pydantic import BaseModel

from app.core.exceptions import ValidationError
from app.schemas.models import CheckResult, OutputFormat, SuiteReport

CSV_COLUMNS = list(CheckResult.model_fields)


def render_json(report: BaseModel) -> str:
    return json.dumps(report.model_dump(by_alias=True, mode="json"), indent=2, sort_keys=False)


def write_csv(report: SuiteReport, stream: TextIO) -> None:
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in report.results:
        writer.writerow(row.model_dump(mode="json"))


def emit(report: BaseModel, output_format: OutputFormat, stream: TextIO = None) -> None:
    stream = stream or sys.stdout
    if output_format == OutputFormat.CSV:
        if not isinstance(report, SuiteReport):
            raise ValidationError("csv output is available for verify reports only")
        write_csv(report, stream)
        return
    stream.write(render_json(report) + "\n")
