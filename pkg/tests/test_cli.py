import io
import json

import pandas as pd
import pytest

from run import main, parse_shape
from src.construct import ComplementShape, FamilyParamsError, family_f, family_h, petersen
from src.graph_core import are_isomorphic, complete_graph, cycle_graph, graph6_decode, graph6_encode


@pytest.fixture
def stdin(monkeypatch):
    def feed(text):
        monkeypatch.setattr('sys.stdin', io.StringIO(text))
    return feed


def output_lines(capsys):
    return capsys.readouterr().out.splitlines()


def test_parse_shape():
    assert parse_shape('P3+P2+C3') == ComplementShape(paths=(3, 2), cycles=(3,))
    assert parse_shape('P2 + P5') == ComplementShape(paths=(5, 2))
    with pytest.raises(FamilyParamsError):
        parse_shape('Q4')


def test_construct(work_dir, capsys):
    assert main(['construct', '--family', 'FamilyF', '--r', '2', '--t', '2']) == 0
    assert output_lines(capsys) == [graph6_encode(family_f(2, 2))]


def test_construct_variant(work_dir, capsys):
    assert main(['construct', '--family', 'FamilyH', '--r', '2', '--t', '2', '--variant', 'P4+P3']) == 0
    line, = output_lines(capsys)
    assert graph6_decode(line) == family_h(2, 2, ComplementShape(paths=(4, 3)))


def test_construct_circulant(work_dir, capsys):
    assert main(['construct', '--family', 'Circulant', '--n', '5', '--connection-set', '1']) == 0
    assert are_isomorphic(graph6_decode(output_lines(capsys)[0]), cycle_graph(5))


def test_construct_invalid_parameters_exit_two(work_dir, capsys):
    assert main(['construct', '--family', 'FamilyF', '--r', '1', '--t', '2']) == 2
    assert main(['construct', '--family', 'NoPathH']) == 2
    assert output_lines(capsys) == []


def test_construct_unknown_family_is_rejected_by_parser(work_dir):
    with pytest.raises(SystemExit):
        main(['construct', '--family', 'Heawood'])


def test_check_single_graph(work_dir, capsys):
    assert main(['check', '--graph6', graph6_encode(petersen())]) == 0
    report = json.loads(output_lines(capsys)[0])
    assert report['n'] == 10 and report['edges'] == 15
    assert report['regular'] and report['two_connected']
    assert report['cut_vertices'] == []
    assert report['hamiltonian_cycle'] is None
    assert len(report['hamiltonian_path']) == 10
    assert report['family_h'] is None


def test_check_reads_stdin(work_dir, capsys, stdin):
    stdin(f"{graph6_encode(family_h(1, 2))}\n\nC~\n")
    assert main(['check', '--engine', 'backtrack']) == 0
    first, second = (json.loads(line) for line in output_lines(capsys))
    assert first['family_h'] == [1, 2]
    assert first['cut_vertices'] == [4, 6]
    assert second['hamiltonian_cycle'] is not None


def test_check_malformed_graph6_exit_two(work_dir, stdin):
    stdin("C~~\n")
    assert main(['check']) == 2


def test_encode_decode(work_dir, capsys, stdin):
    stdin("4\n0 1\n1 2\n2 3\n3 0\n")
    assert main(['encode']) == 0
    line, = output_lines(capsys)
    assert line == graph6_encode(cycle_graph(4))

    stdin(graph6_encode(complete_graph(4)) + "\n")
    assert main(['decode']) == 0
    lines = output_lines(capsys)
    assert lines[0] == '4 6'
    assert len(lines) == 7


def test_encode_rejects_bad_edges(work_dir, stdin):
    stdin("3\n0 3\n")
    assert main(['encode']) == 2
    stdin("")
    assert main(['encode']) == 2


def test_enumerate(work_dir, capsys):
    assert main(['enumerate', '--k', '3', '--n', '8']) == 0
    assert len(output_lines(capsys)) == 5
    assert main(['enumerate', '--k', '3', '--n', '10', '--filter', 'non-hamiltonian']) == 0
    graphs = [graph6_decode(line) for line in output_lines(capsys)]
    assert len(graphs) == 2
    assert any(are_isomorphic(G, petersen()) for G in graphs)
    assert main(['enumerate', '--k', '3', '--n', '10', '--filter', 'non-hamiltonian', '--filter',
                 'two-connected']) == 0
    assert len(output_lines(capsys)) == 1
    assert main(['enumerate', '--k', '4', '--n', '9', '--limit', '3']) == 0
    assert len(output_lines(capsys)) == 3


def test_enumerate_naive(work_dir, capsys):
    assert main(['enumerate', '--k', '3', '--n', '8', '--naive']) == 0
    assert len(output_lines(capsys)) == 5


def test_enumerate_outside_envelope_exit_two(work_dir, capsys):
    assert main(['enumerate', '--k', '3', '--n', '16']) == 2
    assert output_lines(capsys) == []


def write_config(work_dir, payload):
    (work_dir / 'config.json').write_text(json.dumps(payload))


def test_verify(work_dir, capsys):
    write_config(work_dir, {'campaign': {'checks': [{'claim': 'jackson-spot', 'k': 3}]}})
    assert main(['verify', '--output-dir', 'out']) == 0
    assert output_lines(capsys) == ['jackson-spot: verified (8 instances, 0 counterexamples)']
    assert (work_dir / 'out' / 'hamiltonicity_report.json').is_file()
    assert (work_dir / 'logs' / 'run.log').is_file()


def test_verify_no_exception_exit_one(work_dir, capsys):
    write_config(work_dir, {'campaign': {'checks': [{'claim': 'hilbig-spot', 'n_max': 10}]}})
    assert main(['verify', '--output-dir', 'out']) == 0
    assert main(['verify', '--output-dir', 'out', '--no-exception']) == 1
    assert output_lines(capsys)[-1] == 'hilbig-spot: refuted (26 instances, 1 counterexamples)'


def test_verify_bad_config_exit_two(work_dir, capsys):
    (work_dir / 'config.json').write_text('{"hamilton": {"engine": "sat"}}')
    assert main(['verify']) == 2
    (work_dir / 'broken.json').write_text('{')
    assert main(['--config', 'broken.json', 'verify']) == 2


def test_catalog(work_dir, capsys):
    assert main(['catalog', '--max-r', '2', '--output', 'catalog.csv']) == 0
    df = pd.read_csv(work_dir / 'catalog.csv')
    assert set(df['family']) == {'FamilyF', 'FamilyH'}
    assert (df['family'] == 'FamilyF').sum() == 1
    assert 'r=2,t=2,variant=P2+P2+C3' in set(df['parameters'])
    assert output_lines(capsys) == [f"Catalog of {len(df)} graphs written to catalog.csv"]


def test_verify_missing_config_exit_two(work_dir, capsys):
    assert main(['--config', 'no-such-config.json', 'verify', '--output-dir', 'out']) == 2
    assert output_lines(capsys) == []
    assert not (work_dir / 'out').exists()


def test_verify_without_enabled_checks_exit_two(work_dir, capsys):
    write_config(work_dir, {'campaign': {'checks': []}})
    assert main(['verify', '--output-dir', 'out']) == 2
    write_config(work_dir, {'campaign': {'checks': [{'claim': 'jackson-spot', 'k': 3, 'enabled': False}]}})
    assert main(['verify', '--output-dir', 'out']) == 2
    assert output_lines(capsys) == []


def test_unexpected_errors_exit_two(work_dir, monkeypatch):
    assert main(['catalog', '--max-r', '1', '--output', 'missing_dir/catalog.csv']) == 2

    def broken(*args, **kwargs):
        raise RuntimeError("solver crashed")

    monkeypatch.setattr('run.hamiltonian_cycle', broken)
    assert main(['check', '--graph6', graph6_encode(petersen())]) == 2
