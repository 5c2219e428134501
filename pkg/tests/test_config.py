import json
import os

import pytest

from src.data_processing import (
    ROOT_DIR, ConfigError, enabled_checks, parse_campaign_config, validate_config, validate_reports,
)
from utils.parse_config import DEFAULT_CONFIG, get_config_value, load_config


def write(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    return str(path)


def test_shipped_config_is_valid():
    config = load_config(os.path.join(ROOT_DIR, "config.json"))
    claims = [check['claim'] for check in config['campaign']['checks']]
    assert 'characterization-odd' in claims
    assert {'claim': 'jackson-spot', 'k': 4} in config['campaign']['checks']
    assert config['hamilton']['engine'] == 'auto'


def test_load_config_fills_defaults(tmp_path):
    path = write(tmp_path, {'hamilton': {'engine': 'backtrack'}})
    config = load_config(path)
    assert config['hamilton']['engine'] == 'backtrack'
    assert config['hamilton']['dp_max_n'] == 24
    assert config['hamilton']['prunes']['articulation'] is True
    assert config['output'] == DEFAULT_CONFIG['output']


def test_missing_config_uses_defaults(tmp_path):
    assert load_config(str(tmp_path / "absent.json")) == DEFAULT_CONFIG


@pytest.mark.parametrize("payload", [
    {'hamilton': {'engine': 'sat'}},
    {'hamilton': {'dp_max_n': 40}},
    {'campaign': {'checks': [{'claim': 'no-such-claim'}]}},
    {'campaign': {'checks': [{'claim': 'hilbig-spot', 'exceptions': ['heawood']}]}},
    {'enumeration': {'envelope': {'three': 10}}},
    {'output': {'directory': ''}},
])
def test_schema_violations_raise_config_error(tmp_path, payload):
    with pytest.raises(ConfigError):
        load_config(write(tmp_path, payload))


def test_invalid_json_raises_config_error(tmp_path):
    with pytest.raises(ConfigError):
        parse_campaign_config(write(tmp_path, "{not json"))


def test_get_config_value(tmp_path):
    path = write(tmp_path, {'logging': {'retention_days': 7}})
    assert get_config_value('logging.retention_days', 30, path) == 7
    assert get_config_value('logging.max_log_files', 10, path) == 10
    assert get_config_value('logging.nothing', 'x', path) == 'x'
    assert get_config_value('logging.retention_days', 30, write(tmp_path, "[]", "bad.json")) == 30


def test_enabled_checks_respects_flags_and_only():
    config = validate_config({'campaign': {'checks': [
        {'claim': 'hamiltonicity-threshold', 'k': 3},
        {'claim': 'jackson-spot', 'k': 3, 'enabled': False},
        {'claim': 'hilbig-spot'},
    ]}})
    assert [c['claim'] for c in enabled_checks(config)] == ['hamiltonicity-threshold', 'hilbig-spot']
    assert [c['claim'] for c in enabled_checks(config, ['hilbig-spot'])] == ['hilbig-spot']
    assert enabled_checks(config, ['jackson-spot']) == []
    with pytest.raises(ConfigError):
        enabled_checks(config, ['engine-agreement'])


def test_report_schema():
    report = {'claim': 'x', 'parameters': {}, 'instances': 0, 'counterexamples': [], 'exceptions_matched': [],
              'wall_time': 0.0, 'verdict': 'verified', 'details': {}}
    assert validate_reports([report]) == [report]
    with pytest.raises(ConfigError):
        validate_reports([dict(report, verdict='maybe')])
    with pytest.raises(ConfigError):
        validate_reports([dict(report, extra=1)])
