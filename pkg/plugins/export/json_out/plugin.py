"""JSON export plugin"""

import json
from typing import Any

from src.core.plugin import ExportPlugin, Payload


class JsonExportPlugin(ExportPlugin):
    """Export plugin for machine-readable JSON"""

    name = "json"
    description = "Indented JSON object"

    async def export(self, payload: Payload, metadata: dict[str, Any]) -> str:
        # key order comes from to_dict, so output is byte-stable
        return json.dumps(payload.to_dict(), indent=2, ensure_ascii=False) + "\n"
