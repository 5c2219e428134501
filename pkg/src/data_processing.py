"""
data_processing.py: Schema validation for campaign configuration and verification reports.
"""

import json
import logging
import os

from jsonschema import ValidationError, validate

logger = logging.getLogger(__name__)

ROOT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIG_SCHEMA = os.path.join(ROOT_DIR, 'campaign-config.schema.json')
REPORT_SCHEMA = os.path.join(ROOT_DIR, 'verification-report.schema.json')


class ConfigError(ValueError):
    """Raised when a configuration or report fails validation."""


def load_schema(schema_path):
    try:
        with open(schema_path, 'r') as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Cannot load schema {schema_path}: {e}")
        raise ConfigError(f"Cannot load schema {schema_path}: {e}") from e


def _validate(instance, schema_path, what):
    try:
        validate(instance=instance, schema=load_schema(schema_path))
    except ValidationError as e:
        location = '/'.join(str(p) for p in e.absolute_path) or '<root>'
        logger.error(f"{what} validation failed at {location}: {e.message}")
        raise ConfigError(f"{what} invalid at {location}: {e.message}") from e


def validate_config(config):
    """
    Validate a configuration dict against campaign-config.schema.json.

    Raises:
        ConfigError: On any schema violation.
    """
    _validate(config, CONFIG_SCHEMA, 'Configuration')
    return config


def validate_reports(reports):
    _validate(reports, REPORT_SCHEMA, 'Report')
    return reports


def parse_campaign_config(file_path):
    """
    Read and validate a configuration file without applying defaults.

    Raises:
        ConfigError: If the file is missing, not JSON, or fails the schema.
    """
    try:
        with open(file_path, 'r') as f:
            config = json.load(f)
    except FileNotFoundError as e:
        logger.error(f"Config file {file_path} not found")
        raise ConfigError(f"Config file {file_path} not found") from e
    except json.JSONDecodeError as e:
        logger.error(f"Invalid JSON in {file_path}: {e}")
        raise ConfigError(f"Invalid JSON in {file_path}: {e}") from e
    return validate_config(config)


def enabled_checks(config, only=None):
    """Enabled campaign checks in file order, optionally restricted to the claims in only."""
    checks = [c for c in config.get('campaign', {}).get('checks', []) if c.get('enabled', True)]
    if only:
        unknown = set(only) - {c['claim'] for c in config.get('campaign', {}).get('checks', [])}
        if unknown:
            raise ConfigError(f"--only names claims missing from the configuration: {sorted(unknown)}")
        checks = [c for c in checks if c['claim'] in only]
    return checks
