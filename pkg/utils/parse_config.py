"""
utils/parse_config.py: Loads config.json with defaults and answers dotted-key lookups for setup.sh.
"""

import copy
import json
import os
import sys

from src.data_ingestion import download_corpora
from src.data_processing import ConfigError, parse_campaign_config, validate_config

DEFAULT_CONFIG = {
    'output': {'directory': 'output', 'prefix': 'hamiltonicity_report', 'append_timestamp': False},
    'logging': {'directory': 'logs', 'retention_days': 30, 'max_log_files': 10},
    'sources': [],
    'hamilton': {
        'engine': 'auto',
        'dp_max_n': 24,
        'prunes': {'degree': True, 'connectivity': True, 'dead_ends': True, 'articulation': True},
    },
    'enumeration': {'envelope': {'2': 16, '3': 14, '4': 12, '5': 14}, 'workers': 1},
    'campaign': {'workers': 1, 'checks': []},
}


def _merge(defaults, overrides):
    merged = copy.deepcopy(defaults)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_file='config.json'):
    """
    Load configuration, filling every missing section and key from DEFAULT_CONFIG.

    Args:
        config_file (str): Path to the configuration file. Defaults to 'config.json'.

    Returns:
        dict: Validated configuration.

    Raises:
        ConfigError: If the file is not valid JSON or violates the schema.
    """
    if not os.path.isfile(config_file):
        print(f"Warning: {config_file} not found. Using default settings.", file=sys.stderr)
        return copy.deepcopy(DEFAULT_CONFIG)
    return validate_config(_merge(DEFAULT_CONFIG, parse_campaign_config(config_file)))


def get_config_value(key, default, config_file='config.json'):
    """
    Retrieve a value from config.json using a dot-separated key path.

    Args:
        key (str): Dot-separated key path (e.g., 'logging.retention_days').
        default: Default value if the key is not found or an error occurs.
        config_file (str): Configuration file to read.

    Returns:
        The value at the specified key path or the default value.
    """
    try:
        value = load_config(config_file)
        for part in key.split('.'):
            value = value.get(part) if isinstance(value, dict) else None
        if value is None:
            print(f"Warning: Key {key} not found in {config_file}. Using default ({default}).", file=sys.stderr)
            return default
        return value
    except ConfigError as e:
        print(f"Warning: {e}. Using default for {key} ({default}).", file=sys.stderr)
        return default


def download_sources(config_file='config.json', data_dir='data'):
    try:
        config = load_config(config_file)
    except ConfigError as e:
        print(f"Error: {e}. Cannot download corpora.", file=sys.stderr)
        return False
    return download_corpora(config.get('sources', []), data_dir)


if __name__ == '__main__':
    if len(sys.argv) < 2:
        print("Error: Usage: python3 utils/parse_config.py <command> [args]", file=sys.stderr)
        sys.exit(1)

    command = sys.argv[1]
    if command == 'get':
        if len(sys.argv) != 4:
            print("Error: Usage: python3 utils/parse_config.py get <key> <default>", file=sys.stderr)
            sys.exit(1)
        print(get_config_value(sys.argv[2], sys.argv[3]))
    elif command == 'download':
        sys.exit(0 if download_sources() else 1)
    else:
        print(f"Error: Unknown command {command}", file=sys.stderr)
        sys.exit(1)
