"""
Tropex Configuration Loader

Handles configuration from multiple sources with priority:
1. Command-line arguments (highest priority)
2. User config file (--config PATH)
3. Default config (tropex/config/defaults.yaml)

Environment variables are never read: identical command lines must give
identical outputs on every machine.

Author: tropex developers
License: MIT
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import yaml


@dataclass
class Config:
    """
    Configuration container for tropex.

    All settings are accessible as attributes with dot notation.
    """

    # General
    version: str = "0.1.0"

    # Paths
    log_file: Optional[Path] = None
    schema_dir: Optional[Path] = None
    template_dir: Optional[Path] = None

    # Computation
    max_workers: int = 4
    arrangement_budget: int = 10000
    secondary_budget: int = 10000
    closure_rounds: int = 8
    dual_plane_grid: int = 2

    # Reporting
    json_indent: int = 2
    write_summary: bool = True

    # Logging
    log_level: str = "WARNING"
    log_json_format: bool = False
    log_colors: bool = True

    @classmethod
    def load(
        cls,
        config_file: Optional[Path] = None,
        cli_overrides: Optional[Dict[str, Any]] = None
    ) -> "Config":
        """
        Load configuration from multiple sources.

        Args:
            config_file: Path to a user YAML file (optional)
            cli_overrides: Nested dictionary of CLI argument overrides

        Returns:
            Configured Config instance

        Raises:
            ValueError: The user file is missing or not valid YAML
        """
        config_dict = cls._load_defaults()

        if config_file is not None:
            if not config_file.exists():
                raise ValueError(f"Config file not found: {config_file}")
            config_dict = cls._deep_merge(config_dict, cls._load_yaml(config_file))

        if cli_overrides:
            config_dict = cls._deep_merge(config_dict, cli_overrides)

        return cls._dict_to_config(config_dict)

    @staticmethod
    def _load_defaults() -> Dict[str, Any]:
        """Load default configuration from tropex/config/defaults.yaml."""
        defaults_path = Path(__file__).parent.parent / "config" / "defaults.yaml"

        if not defaults_path.exists():
            return {
                "general": {"version": "0.1.0"},
                "paths": {},
                "computation": {},
                "reporting": {},
                "logging": {},
            }

        return Config._load_yaml(defaults_path)

    @staticmethod
    def _load_yaml(path: Path) -> Dict[str, Any]:
        """Load YAML file safely."""
        try:
            with path.open('r', encoding='utf-8') as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ValueError(f"Invalid YAML in {path}: {e}")
        if not isinstance(data, dict):
            raise ValueError(f"Invalid YAML in {path}: top level must be a mapping")
        return data

    @staticmethod
    def _deep_merge(base: Dict, update: Dict) -> Dict:
        """Deep merge two dictionaries."""
        result = base.copy()

        for key, value in update.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = Config._deep_merge(result[key], value)
            else:
                result[key] = value

        return result

    @classmethod
    def _dict_to_config(cls, config_dict: Dict[str, Any]) -> "Config":
        """Convert nested dict to flat Config instance."""
        flat: Dict[str, Any] = {}

        if 'general' in config_dict:
            gen = config_dict['general'] or {}
            flat['version'] = str(gen.get('version', cls.version))

        if 'paths' in config_dict:
            paths = config_dict['paths'] or {}
            for key in ('log_file', 'schema_dir', 'template_dir'):
                value = paths.get(key)
                flat[key] = Path(value).expanduser() if value else None

        if 'computation' in config_dict:
            comp = config_dict['computation'] or {}
            flat['max_workers'] = int(comp.get('threads', cls.max_workers))
            flat['arrangement_budget'] = int(comp.get('arrangement_budget', cls.arrangement_budget))
            flat['secondary_budget'] = int(comp.get('secondary_budget', cls.secondary_budget))
            flat['closure_rounds'] = int(comp.get('closure_rounds', cls.closure_rounds))
            flat['dual_plane_grid'] = int(comp.get('dual_plane_grid', cls.dual_plane_grid))

        if 'reporting' in config_dict:
            reporting = config_dict['reporting'] or {}
            flat['json_indent'] = int(reporting.get('json_indent', cls.json_indent))
            flat['write_summary'] = bool(reporting.get('write_summary', cls.write_summary))

        if 'logging' in config_dict:
            logging_cfg = config_dict['logging'] or {}
            flat['log_level'] = str(logging_cfg.get('level', cls.log_level)).upper()
            flat['log_json_format'] = bool(logging_cfg.get('json_format', cls.log_json_format))
            flat['log_colors'] = bool(logging_cfg.get('colors', cls.log_colors))

        config = cls(**flat)
        config.validate()
        return config

    def validate(self):
        """Reject values no computation can run with."""
        if self.max_workers <= 0:
            raise ValueError(f"computation.threads must be positive (got {self.max_workers})")
        for name in ('arrangement_budget', 'secondary_budget', 'closure_rounds'):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive (got {getattr(self, name)})")
        if self.dual_plane_grid < 1:
            raise ValueError(f"dual_plane_grid must be at least 1 (got {self.dual_plane_grid})")
        if self.json_indent < 0:
            raise ValueError(f"json_indent must be non-negative (got {self.json_indent})")


# Global config instance (loaded on first use)
_global_config: Optional[Config] = None


def get_config() -> Config:
    """Get the global configuration instance."""
    global _global_config
    if _global_config is None:
        _global_config = Config.load()
    return _global_config


def set_config(config: Optional[Config]):
    """Set (or with None, reset) the global configuration instance."""
    global _global_config
    _global_config = config
