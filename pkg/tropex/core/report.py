"""
Tropex Report Generator

Wraps command results in a versioned envelope, validates it against the
packaged schemas/report.schema.json and writes it as JSON together with a
plain-text summary rendered from the packaged templates/summary.txt.j2.

Reports carry no timestamps: identical inputs give byte-identical files.

Author: tropex developers
License: MIT
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional

try:
    import jsonschema
    HAS_JSONSCHEMA = True
except ImportError:
    HAS_JSONSCHEMA = False

try:
    from jinja2 import Environment, FileSystemLoader, StrictUndefined
    HAS_JINJA2 = True
except ImportError:
    HAS_JINJA2 = False

from .config import get_config
from .errors import InputError
from .logging import get_logger

logger = get_logger(__name__)

PACKAGE_DIR = Path(__file__).parent.parent
SCHEMA_ID = "https://tropex.invalid/schemas/report.schema.json"
TOOL = "tropex"


class ReportGenerator:
    """
    Builds, validates and saves command reports.
    """

    def __init__(self, config=None):
        self.config = config or get_config()
        self.schema_dir = self.config.schema_dir or PACKAGE_DIR / "schemas"
        self.template_dir = self.config.template_dir or PACKAGE_DIR / "templates"
        self.schema = self.load_schema("report.schema.json")

    def load_schema(self, name: str) -> Optional[Dict]:
        """Load a JSON schema from the schema directory (None when unavailable)."""
        schema_path = Path(self.schema_dir) / name

        if not schema_path.exists():
            logger.warning(f"Schema file not found: {schema_path}")
            return None

        try:
            with schema_path.open('r', encoding='utf-8') as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            logger.error(f"Invalid JSON schema {schema_path}: {e}")
            return None

    def create_report(
        self,
        command: str,
        result: Dict[str, Any],
        summary: Dict[str, Any],
        status: str = "ok",
    ) -> Dict[str, Any]:
        """
        Create the report envelope.

        Args:
            command: Subcommand name
            result: Command-specific JSON data
            summary: Flat key/value facts shown in the text summary
            status: "ok" or "invalid"

        Returns:
            Report dictionary conforming to the report schema
        """
        return {
            '$schema': SCHEMA_ID,
            'tool': TOOL,
            'version': self.config.version,
            'command': command,
            'status': status,
            'result': result,
            'summary': summary,
        }

    def validate_report(self, report: Dict[str, Any]) -> bool:
        """
        Validate a report against the report schema.

        Returns:
            True if valid (or validation is unavailable), False otherwise
        """
        if not HAS_JSONSCHEMA:
            logger.warning("jsonschema not installed, skipping validation")
            return True

        if not self.schema:
            logger.warning("Schema not loaded, skipping validation")
            return True

        try:
            jsonschema.validate(instance=report, schema=self.schema)
            logger.debug("Report validated successfully against schema")
            return True
        except jsonschema.ValidationError as e:
            logger.error(f"Report validation failed: {e.message}")
            logger.debug(f"Validation path: {list(e.absolute_path)}")
            return False

    def validate_input(self, data: Any, schema_name: str, label: str):
        """
        Validate input data against one of the input schemas.

        Raises:
            InputError: the data does not match the schema
        """
        schema = self.load_schema(schema_name)
        if schema is None or not HAS_JSONSCHEMA:
            return
        try:
            jsonschema.validate(instance=data, schema=schema)
        except jsonschema.ValidationError as e:
            path = "/".join(str(p) for p in e.absolute_path)
            raise InputError(f"{label} does not match {schema_name} at '{path}': {e.message}") from e

    def to_json(self, report: Dict[str, Any]) -> str:
        return json.dumps(report, indent=self.config.json_indent, sort_keys=True, ensure_ascii=False) + "\n"

    def save_json(self, report: Dict[str, Any], output_path: Path) -> Path:
        """
        Save a report as JSON with sorted keys.

        Returns:
            Path to the saved file
        """
        if not self.validate_report(report):
            logger.warning("Saving invalid report (schema validation failed)")

        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with output_path.open('w', encoding='utf-8') as f:
            f.write(self.to_json(report))

        logger.info(f"JSON report saved: {output_path}")
        return output_path

    def render_summary(self, report: Dict[str, Any]) -> str:
        """Render the plain-text summary of a report."""
        if not HAS_JINJA2:
            raise ImportError("Jinja2 required for text summaries: pip install Jinja2")

        if not Path(self.template_dir).exists():
            raise FileNotFoundError(f"Templates directory not found: {self.template_dir}")

        env = Environment(
            loader=FileSystemLoader(str(self.template_dir)),
            undefined=StrictUndefined,
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )
        template = env.get_template('summary.txt.j2')
        return template.render(
            tool=report['tool'],
            version=report['version'],
            command=report['command'],
            status=report['status'],
            summary=sorted(report['summary'].items()),
        )

    def save_summary(self, report: Dict[str, Any], json_path: Path) -> Path:
        """Write <json_path>.txt next to the JSON report."""
        output_path = Path(str(json_path) + ".txt")
        text = self.render_summary(report)
        with output_path.open('w', encoding='utf-8') as f:
            f.write(text)
        logger.info(f"Summary saved: {output_path}")
        return output_path
