"""
data_ingestion.py: Reads graph6 corpora and fetches the corpora listed in config.json.
Downloaded or copied files land in the data directory and are validated line by line.
"""

import logging
import os
import shutil
import time
from dataclasses import dataclass
from typing import Iterator, Optional

import requests

from src.graph_core import Graph, Graph6Error, graph6_decode

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Graph6Diagnostic:
    line_number: int
    text: str
    message: str

    def __str__(self):
        return f"line {self.line_number}: {self.message} ({self.text!r})"


def ingest_graph6(path: str, strict: bool = False,
                  diagnostics: Optional[list] = None) -> Iterator[Graph]:
    """
    Stream the graphs of a graph6 file in file order.

    Args:
        path (str): File with one graph6 string per line; blank lines are ignored.
        strict (bool): Raise on the first malformed line instead of skipping it.
        diagnostics (list, optional): Receives a Graph6Diagnostic per malformed line.

    Yields:
        Graph: Decoded graphs.

    Raises:
        OSError: If the file cannot be read.
        Graph6Error: On a malformed line when strict is set.
    """
    with open(path, 'r', encoding='ascii', errors='replace') as f:
        for line_number, raw in enumerate(f, start=1):
            text = raw.strip()
            if not text:
                continue
            try:
                yield graph6_decode(text)
            except Graph6Error as e:
                diagnostic = Graph6Diagnostic(line_number, text, str(e))
                if strict:
                    logger.error(f"Malformed graph6 in {path}, {diagnostic}")
                    raise Graph6Error(f"{path}: {diagnostic}") from e
                logger.warning(f"Skipping malformed graph6 in {path}, {diagnostic}")
                if diagnostics is not None:
                    diagnostics.append(diagnostic)


def _validate_graph6_file(path: str) -> int:
    """Number of graphs in the file; raises Graph6Error on the first bad line."""
    return sum(1 for _ in ingest_graph6(path, strict=True))


def _fetch(url: str, output: str) -> None:
    if url.startswith(('http://', 'https://')):
        response = requests.get(url, timeout=30)
        response.raise_for_status()
        with open(output, 'wb') as f:
            f.write(response.content)
    else:
        local = url[len('file://'):] if url.startswith('file://') else url
        shutil.copyfile(local, output)


def download_corpora(sources: list, data_dir: str = 'data', max_retries: int = 3, retry_delay: float = 5) -> bool:
    """
    Fetch every enabled graph6 corpus and validate it.

    Args:
        sources (list): Source dicts with name, url, output and enabled; url is http(s),
            file:// or a plain local path.
        data_dir (str): Destination directory.
        max_retries (int): Attempts per source for network failures.
        retry_delay (float): Seconds between attempts.

    Returns:
        bool: True if every enabled source was fetched and validated, False otherwise.
    """
    success = True
    try:
        os.makedirs(data_dir, exist_ok=True)
        logger.debug(f"Data directory {data_dir} ensured")
    except OSError as e:
        logger.error(f"Failed to create data directory {data_dir}: {e}")
        return False

    for source in sources:
        if not source.get('enabled', False):
            logger.info(f"Skipping disabled source: {source.get('name', 'Unknown')}")
            continue
        if not all(key in source for key in ['name', 'url', 'output']):
            logger.error(f"Invalid source configuration: {source}. Missing required fields (name, url, output).")
            success = False
            continue
        url = source['url']
        output = os.path.join(data_dir, source['output'])
        for attempt in range(1, max_retries + 1):
            try:
                _fetch(url, output)
                count = _validate_graph6_file(output)
                logger.info(f"Fetched and validated {source['name']} ({count} graphs) to {output}")
                break
            except Graph6Error as e:
                logger.error(f"Invalid graph6 in fetched file {output}: {e}")
                os.remove(output)
                success = False
                break
            except requests.HTTPError as e:
                logger.error(f"HTTP error fetching {source['name']} from {url}: {e} (Status: {e.response.status_code})")
            except requests.RequestException as e:
                logger.error(f"Attempt {attempt}/{max_retries} failed for {source['name']} from {url}: {e}")
            except OSError as e:
                logger.error(f"Failed to copy or write {source['name']} to {output}: {e}")
                success = False
                break
            if attempt == max_retries:
                logger.warning(f"Giving up on {source['name']} after {max_retries} attempts")
                success = False
            else:
                time.sleep(retry_delay)
    return success
