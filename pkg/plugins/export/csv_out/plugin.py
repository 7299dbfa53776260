"""CSV export plugin"""

import csv
import io
import json
from typing import Any

from src.core.plugin import ExportPlugin, Payload, TabularPayload


class CsvExportPlugin(ExportPlugin):
    """Export plugin for CSV tables"""

    name = "csv"
    description = "CSV table; field,value pairs for non-tabular results"

    async def export(self, payload: Payload, metadata: dict[str, Any]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if isinstance(payload, TabularPayload):
            writer.writerow(payload.csv_header)
            writer.writerows(payload.csv_rows())
        else:
            writer.writerow(["field", "value"])
            for key, value in payload.to_dict().items():
                writer.writerow([key, self._cell(value)])
        return buffer.getvalue()

    def _cell(self, value: Any) -> str:
        if isinstance(value, (list, tuple, dict)):
            return json.dumps(value, ensure_ascii=False, separators=(",", ":"))
        if isinstance(value, bool) or value is None:
            return json.dumps(value)
        return str(value)
