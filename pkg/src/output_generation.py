"""
output_generation.py: Writes verification reports as JSON, CSV, HTML and graph6 side files.
Reports arrive as plain dicts (VerificationReport.to_dict()).
"""

import json
import logging
import os
import sys
from datetime import datetime

import pandas as pd
import plotly.express as px
from jinja2 import Template

from src.data_processing import validate_reports

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(log_dir='logs', level=logging.INFO):
    """
    Set up logging to write to run.log in the specified directory.

    Args:
        log_dir (str): Directory for log files. Defaults to 'logs'.
        level (int): Level for the file handler and the root logger.

    Returns:
        str | None: Path of the log file, or None if only console logging is available.
    """
    try:
        if not log_dir:
            raise ValueError("Log directory cannot be empty")
        os.makedirs(log_dir, exist_ok=True)
        log_file = os.path.join(log_dir, 'run.log')
        root = logging.getLogger()
        # Remove earlier run.log handlers to avoid duplicate lines
        root.handlers = [h for h in root.handlers if not isinstance(h, logging.FileHandler)]
        handler = logging.FileHandler(log_file, mode='a')
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler.setLevel(level)
        root.addHandler(handler)
        root.setLevel(min(root.level or level, level))
        return log_file
    except Exception as e:
        print(f"Warning: Failed to set up logging to {log_dir}/run.log: {e}. Using console output.", file=sys.stderr)
        logging.basicConfig(level=level, format=LOG_FORMAT)
        return None


def ensure_output_directory(output_dir):
    """
    Ensure the output directory exists, creating it if necessary.

    Raises:
        Exception: If the directory cannot be created.
    """
    try:
        if not output_dir:
            raise ValueError("Output directory cannot be empty")
        os.makedirs(output_dir, exist_ok=True)
        logger.debug(f"Output directory {output_dir} ensured")
    except Exception as e:
        logger.error(f"Failed to create output directory {output_dir}: {e}")
        raise


def get_output_filename(base_dir, prefix, extension, append_timestamp):
    """
    Generate the output filename with optional timestamp.

    Args:
        base_dir (str): Output directory.
        prefix (str): Filename prefix.
        extension (str): File extension (e.g., 'json', 'csv', 'html', 'g6').
        append_timestamp (bool): Whether to append a timestamp to the filename.

    Returns:
        str: Full path to the output file.
    """
    timestamp = datetime.now().strftime("%Y%m%d_%H%M") if append_timestamp else ""
    filename = f"{prefix}{f'_{timestamp}' if timestamp else ''}.{extension}"
    return os.path.join(base_dir, filename)


def generate_json(reports, output_file):
    """
    Write the reports as a JSON list after validating them against the report schema.

    Raises:
        ConfigError: If a report does not match the schema.
        OSError: If the file cannot be written.
    """
    validate_reports(reports)
    try:
        with open(output_file, 'w') as f:
            json.dump(reports, f, indent=2)
        logger.info(f"JSON output written to {output_file}")
    except OSError as e:
        logger.error(f"Failed to write JSON to {output_file}: {e}")
        raise


def report_records(reports):
    """One flat row per claim."""
    return [{
        'claim': report['claim'],
        'verdict': report['verdict'],
        'instances': report['instances'],
        'counterexamples': len(report['counterexamples']),
        'exceptions_matched': ', '.join(e['name'] for e in report['exceptions_matched']),
        'wall_time': round(report['wall_time'], 3),
        'parameters': json.dumps(report['parameters'], sort_keys=True),
    } for report in reports]


def generate_csv(reports, output_file):
    if not reports:
        logger.warning("No reports produced. CSV output will be empty.")
        pd.DataFrame().to_csv(output_file, index=False)
        return
    df = pd.DataFrame(report_records(reports))
    try:
        df.to_csv(output_file, index=False)
        logger.info(f"CSV output written to {output_file}")
    except Exception as e:
        logger.error(f"Failed to write CSV to {output_file}: {e}")
        raise


def instances_per_n(reports):
    """Long-format table of (claim, n, instances) from each report's per_n details."""
    rows = []
    for report in reports:
        for n, count in sorted(report['details'].get('per_n', {}).items(), key=lambda item: int(item[0])):
            rows.append({'claim': report['claim'], 'n': int(n), 'instances': count})
    return pd.DataFrame(rows, columns=['claim', 'n', 'instances'])


HTML_TEMPLATE = Template("""
<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <title>Regular Graph Hamiltonicity Verification Report</title>
    <style>
        body { font-family: Arial, sans-serif; margin: 20px; color: #333; }
        table { width: 100%; border-collapse: collapse; margin: 20px 0; }
        th, td { border: 1px solid #ddd; padding: 8px; text-align: left; vertical-align: top; }
        th { background-color: #3498db; color: white; }
        tr:nth-child(even) { background-color: #f2f2f2; }
        .verified { color: #27ae60; font-weight: bold; }
        .verified-with-known-exceptions { color: #f39c12; font-weight: bold; }
        .refuted { color: #e74c3c; font-weight: bold; }
        code { font-size: 0.9em; }
    </style>
</head>
<body>
    <h1>Regular Graph Hamiltonicity Verification Report</h1>
    <p>Generated on {{ generated }}</p>
    <table>
        <tr><th>Claim</th><th>Verdict</th><th>Instances</th><th>Parameters</th><th>Exceptions</th><th>Counterexamples</th><th>Wall time (s)</th></tr>
        {% for report in reports %}
        <tr>
            <td>{{ report.claim }}</td>
            <td class="{{ report.verdict }}">{{ report.verdict }}</td>
            <td>{{ report.instances }}</td>
            <td><code>{{ report.parameters | tojson }}</code></td>
            <td>{% for e in report.exceptions_matched %}{{ e.name }} <code>{{ e.graph6 }}</code><br>{% endfor %}</td>
            <td>{% for c in report.counterexamples %}<code>{{ c.graph6 }}</code>: {{ c.reason }}<br>{% endfor %}</td>
            <td>{{ '%.3f' | format(report.wall_time) }}</td>
        </tr>
        {% endfor %}
    </table>
    {{ chart }}
</body>
</html>
""")


def generate_html(reports, output_file):
    """HTML summary with a bar chart of instances examined per order for each claim."""
    table = instances_per_n(reports)
    chart = ''
    if not table.empty:
        fig = px.bar(table, x='n', y='instances', color='claim', barmode='group',
                     title='Graphs examined per order')
        chart = fig.to_html(full_html=False, include_plotlyjs='cdn')
    html = HTML_TEMPLATE.render(reports=reports, chart=chart, generated=datetime.now().strftime('%Y-%m-%d %H:%M'))
    try:
        with open(output_file, 'w') as f:
            f.write(html)
        logger.info(f"HTML output written to {output_file}")
    except OSError as e:
        logger.error(f"Failed to write HTML to {output_file}: {e}")
        raise


def write_graph6_side_files(reports, output_dir, prefix):
    """
    Write <prefix>_<claim>_counterexamples.g6 and <prefix>_<claim>_exceptions.g6 where non-empty.

    Returns:
        list: Paths written.
    """
    written = []
    for report in reports:
        for kind, entries in (('counterexamples', report['counterexamples']),
                              ('exceptions', report['exceptions_matched'])):
            if not entries:
                continue
            path = os.path.join(output_dir, f"{prefix}_{report['claim']}_{kind}.g6")
            with open(path, 'w') as f:
                f.writelines(entry['graph6'] + '\n' for entry in entries)
            logger.info(f"Wrote {len(entries)} {kind} to {path}")
            written.append(path)
    return written


def write_catalog(rows, output_file):
    """Manifest of constructed graphs: family, parameters, graph6 and degree profile."""
    df = pd.DataFrame(rows, columns=['family', 'parameters', 'n', 'graph6', 'degree_profile'])
    df.to_csv(output_file, index=False)
    logger.info(f"Catalog with {len(df)} graphs written to {output_file}")
