"""Plugin system for toric-weyl - output format plugins"""

from abc import ABC, abstractmethod
from typing import Any, Iterable, Optional, Protocol, runtime_checkable


@runtime_checkable
class Payload(Protocol):
    """Anything a command produces: a result kind plus a flat dict view"""

    kind: str

    def to_dict(self) -> dict: ...


@runtime_checkable
class TabularPayload(Payload, Protocol):
    csv_header: tuple[str, ...]

    def csv_rows(self) -> Iterable[list[str]]: ...


class Plugin(ABC):
    """Base class for all plugins"""

    name: str
    description: str
    plugin_type: str

    @abstractmethod
    async def initialize(self, config: dict[str, Any]) -> None:
        """Initialize the plugin with configuration"""
        pass

    @abstractmethod
    async def execute(self, *args, **kwargs) -> Any:
        """Execute the plugin's main functionality"""
        pass


class ExportPlugin(Plugin):
    """Base class for export plugins"""

    plugin_type = "export"

    async def initialize(self, config: dict[str, Any]) -> None:
        pass

    @abstractmethod
    async def export(self, payload: Payload, metadata: dict[str, Any]) -> str:
        """
        Render a result.

        Args:
            payload: Result object exposing ``kind`` and ``to_dict()``
            metadata: Extra context (title, source description)

        Returns:
            Formatted text, newline terminated
        """
        pass

    async def execute(self, payload: Payload, **kwargs) -> str:
        return await self.export(payload, kwargs.get("metadata", {}))


class PluginManager:
    """Manages registration and execution of plugins"""

    def __init__(self):
        self._export_plugins: dict[str, ExportPlugin] = {}

    def register(self, plugin: Plugin) -> None:
        """Register a plugin instance"""
        if isinstance(plugin, ExportPlugin):
            self._export_plugins[plugin.name] = plugin

    def get_export_plugin(self, name: str) -> Optional[ExportPlugin]:
        return self._export_plugins.get(name)

    def list_export_plugins(self) -> list[str]:
        return list(self._export_plugins.keys())

    async def export(
        self,
        payload: Payload,
        format_name: str,
        metadata: Optional[dict[str, Any]] = None
    ) -> str:
        """Export a result using the specified format"""
        plugin = self.get_export_plugin(format_name)
        if not plugin:
            raise ValueError(f"Export plugin '{format_name}' not found")
        return await plugin.export(payload, metadata or {})


async def register_default_plugins(manager: PluginManager) -> None:
    """Register the bundled text, json and csv exporters"""
    from plugins.export.csv_out.plugin import CsvExportPlugin
    from plugins.export.json_out.plugin import JsonExportPlugin
    from plugins.export.text.plugin import TextExportPlugin

    for plugin_cls in [TextExportPlugin, JsonExportPlugin, CsvExportPlugin]:
        plugin = plugin_cls()
        await plugin.initialize({})
        manager.register(plugin)


# Global plugin manager instance
_plugin_manager: Optional[PluginManager] = None


def get_plugin_manager() -> PluginManager:
    """Get global plugin manager instance, with the default exporters registered"""
    global _plugin_manager
    if _plugin_manager is None:
        import asyncio

        _plugin_manager = PluginManager()
        asyncio.run(register_default_plugins(_plugin_manager))
    return _plugin_manager
