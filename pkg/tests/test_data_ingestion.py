import os

import pytest
import requests

from src.data_ingestion import download_corpora, ingest_graph6
from src.graph_core import Graph6Error, complete_graph, graph6_encode
from src.construct import petersen


@pytest.fixture
def corpus(tmp_path):
    path = tmp_path / "corpus.g6"
    path.write_text(f">>graph6<<{graph6_encode(petersen())}\n\n{graph6_encode(complete_graph(4))}\nC~~\n")
    return path


def test_ingest_skips_blank_and_malformed_lines(corpus):
    diagnostics = []
    graphs = list(ingest_graph6(str(corpus), diagnostics=diagnostics))
    assert graphs == [petersen(), complete_graph(4)]
    assert len(diagnostics) == 1
    assert diagnostics[0].line_number == 4
    assert diagnostics[0].text == "C~~"


def test_ingest_strict_raises(corpus):
    with pytest.raises(Graph6Error):
        list(ingest_graph6(str(corpus), strict=True))


def test_ingest_missing_file():
    with pytest.raises(OSError):
        list(ingest_graph6("does-not-exist.g6"))


def test_download_copies_local_sources(tmp_path):
    source = tmp_path / "k4.g6"
    source.write_text("C~\n")
    data_dir = tmp_path / "data"
    sources = [
        {'name': 'k4', 'url': str(source), 'output': 'k4.g6', 'enabled': True},
        {'name': 'off', 'url': 'https://example.invalid/x.g6', 'output': 'off.g6', 'enabled': False},
    ]
    assert download_corpora(sources, str(data_dir), retry_delay=0)
    assert (data_dir / "k4.g6").read_text() == "C~\n"
    assert not (data_dir / "off.g6").exists()


def test_download_rejects_invalid_graph6(tmp_path):
    source = tmp_path / "bad.g6"
    source.write_text("not graph6 at all\n")
    data_dir = tmp_path / "data"
    sources = [{'name': 'bad', 'url': f"file://{source}", 'output': 'bad.g6', 'enabled': True}]
    assert not download_corpora(sources, str(data_dir), retry_delay=0)
    assert not (data_dir / "bad.g6").exists()


def test_download_reports_incomplete_source(tmp_path):
    assert not download_corpora([{'name': 'broken', 'enabled': True}], str(tmp_path), retry_delay=0)


class FakeResponse:
    def __init__(self, status, content=b""):
        self.status_code = status
        self.content = content

    def raise_for_status(self):
        if self.status_code >= 400:
            raise requests.HTTPError(f"{self.status_code} error", response=self)


def test_download_over_http(tmp_path, monkeypatch):
    calls = []

    def fake_get(url, timeout):
        calls.append(url)
        return FakeResponse(200, b"C~\n")

    monkeypatch.setattr(requests, "get", fake_get)
    sources = [{'name': 'k4', 'url': 'https://example.org/k4.g6', 'output': 'k4.g6', 'enabled': True}]
    assert download_corpora(sources, str(tmp_path), retry_delay=0)
    assert calls == ['https://example.org/k4.g6']
    assert os.path.isfile(tmp_path / "k4.g6")


def test_download_retries_then_gives_up(tmp_path, monkeypatch):
    calls = []

    def fake_get(url, timeout):
        calls.append(url)
        return FakeResponse(503)

    monkeypatch.setattr(requests, "get", fake_get)
    sources = [{'name': 'k4', 'url': 'https://example.org/k4.g6', 'output': 'k4.g6', 'enabled': True}]
    assert not download_corpora(sources, str(tmp_path), max_retries=2, retry_delay=0)
    assert len(calls) == 2
