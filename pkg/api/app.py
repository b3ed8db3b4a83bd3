#!/usr/bin/env python3
"""
Flask API for the tiling-code verifier
"""

from flask import Flask, request, jsonify, send_file
from flask_cors import CORS
from dotenv import load_dotenv
from fractions import Fraction
import os
import sys
import json
from datetime import datetime
from typing import Optional

# Add parent directory to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from execution.exactreal import QLin
from execution.rendering import FORMATS, build_patches, to_pdf, to_svg, to_text
from execution.report_pdf import generate_report_pdf
from execution.symbolic import BoundaryHit, genericity_check
from execution.tiling_examples import EXAMPLE_IDS, build_example
from execution.verification import (
    DEFAULT_MAX_RADIUS, DEFAULT_SAMPLES, DEFAULT_SEED, VerificationSuite,
    lengths_report, witness_report,
)

load_dotenv()

app = Flask(__name__)
CORS(app)  # Enable CORS for frontend

# Configuration
TMP_DIR = os.environ.get('SUSPFACTOR_TMP_DIR') or os.path.join(os.path.dirname(os.path.dirname(__file__)), '.tmp')
SERVICE = 'Tiling Code Verifier'
VERSION = '1.0'
MIMETYPES = {
    '.json': 'application/json',
    '.svg': 'image/svg+xml',
    '.pdf': 'application/pdf',
    '.txt': 'text/plain',
}

os.makedirs(TMP_DIR, exist_ok=True)


class BadRequest(ValueError):
    pass


def _example(data):
    try:
        example = int(data.get('example'))
    except (TypeError, ValueError):
        raise BadRequest(f"example must be one of {list(EXAMPLE_IDS)}")
    if example not in EXAMPLE_IDS:
        raise BadRequest(f"example must be one of {list(EXAMPLE_IDS)}")
    return example


def _int(data, key, default, minimum: Optional[int] = 0):
    try:
        value = int(data.get(key, default))
    except (TypeError, ValueError):
        raise BadRequest(f"{key} must be an integer")
    if minimum is not None and value < minimum:
        raise BadRequest(f"{key} must be at least {minimum}")
    return value


def _rational(data, key, default=None):
    raw = data.get(key, default)
    if raw is None:
        raise BadRequest(f"{key} is required")
    try:
        return Fraction(str(raw))
    except (ValueError, ZeroDivisionError):
        raise BadRequest(f"{key} must be a rational number such as 1/7")


def _save(filename, text):
    path = os.path.join(TMP_DIR, filename)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
    return path


def _timestamp():
    return datetime.now().strftime('%Y%m%d_%H%M%S_%f')


def _error_response(e):
    if isinstance(e, BoundaryHit):
        return jsonify({'error': str(e)}), 422
    if isinstance(e, ValueError):
        return jsonify({'error': str(e)}), 400
    print(f'Error: {e}', flush=True)
    import traceback
    traceback.print_exc()
    return jsonify({'error': str(e)}), 500


@app.route('/api/health', methods=['GET'])
def health_check():
    """Health check endpoint"""
    return jsonify({'status': 'healthy', 'service': SERVICE, 'version': VERSION})


@app.route('/api/verify', methods=['POST'])
def verify():
    """Run an example's verification suite and keep the report in .tmp/"""
    try:
        data = request.get_json(silent=True) or {}
        example = _example(data)
        samples = _int(data, 'samples', DEFAULT_SAMPLES, minimum=1)
        seed = _int(data, 'seed', DEFAULT_SEED, minimum=None)
        max_radius = _int(data, 'max_radius', DEFAULT_MAX_RADIUS)

        print(f"Verifying example {example} ({samples} samples, seed {seed})...", flush=True)
        report = VerificationSuite(build_example(example), samples, seed, max_radius).run()
        print(f"{'✓' if report.status == 'pass' else '✗'} Example {example}: {report.status}", flush=True)

        stamp = _timestamp()
        json_name = f'verify_{example}_{stamp}.json'
        pdf_name = f'verify_{example}_{stamp}.pdf'
        _save(json_name, report.dumps())
        generate_report_pdf(report, os.path.join(TMP_DIR, pdf_name))

        result = report.to_json()
        result['downloads'] = {
            'json': f'/api/download/{json_name}',
            'pdf': f'/api/download/{pdf_name}',
        }
        return jsonify(result)

    except Exception as e:
        return _error_response(e)


@app.route('/api/witness', methods=['POST'])
def witness():
    """Search a non-locality witness at one radius"""
    try:
        data = request.get_json(silent=True) or {}
        example = _example(data)
        radius = _int(data, 'radius', 0)
        probes = _int(data, 'probes', 200, minimum=1)
        seed = _int(data, 'seed', DEFAULT_SEED, minimum=None)
        report = witness_report(build_example(example), radius, probes, seed)
        return jsonify(report.to_json())

    except Exception as e:
        return _error_response(e)


@app.route('/api/lengths', methods=['POST'])
def lengths():
    """Scan coincidences between source and target tile-length sums"""
    try:
        data = request.get_json(silent=True) or {}
        example = _example(data)
        bound = _int(data, 'bound', 50, minimum=1)
        report = lengths_report(build_example(example), bound)
        return jsonify(report.to_json())

    except Exception as e:
        return _error_response(e)


@app.route('/api/render', methods=['POST'])
def render():
    """Render a source patch and its image into .tmp/"""
    try:
        data = request.get_json(silent=True) or {}
        example = _example(data)
        rho = _rational(data, 'rho')
        s = _rational(data, 's', 0)
        L = _rational(data, 'L', 3)
        fmt = data.get('format', 'svg')
        if fmt not in FORMATS:
            raise BadRequest(f"format must be one of {list(FORMATS)}")
        if L <= 0:
            raise BadRequest("L must be positive")

        bundle = build_example(example)
        conflict = genericity_check(QLin.rational(rho), bundle.source)
        if conflict is not None:
            raise BoundaryHit(QLin.rational(rho), conflict.n, conflict.boundary)
        pair = build_patches(bundle, rho, s, L)

        stamp = _timestamp()
        extension = {'svg': '.svg', 'pdf': '.pdf', 'json': '.json', 'text': '.txt'}[fmt]
        filename = f'render_{example}_{stamp}{extension}'
        if fmt == 'pdf':
            to_pdf(pair, os.path.join(TMP_DIR, filename))
        elif fmt == 'svg':
            _save(filename, to_svg(pair))
        elif fmt == 'json':
            _save(filename, json.dumps(pair.to_json(), indent=2, sort_keys=True))
        else:
            _save(filename, to_text(pair))
        print(f"✓ Rendered example {example}: {filename}", flush=True)

        return jsonify({
            'example': example,
            'format': fmt,
            'filename': filename,
            'download_url': f'/api/download/{filename}',
            'patches': pair.to_json(),
        })

    except Exception as e:
        return _error_response(e)


@app.route('/api/fixtures/<int:example>', methods=['GET'])
def fixtures(example):
    """Expected value sets and behaviour of one example"""
    try:
        if example not in EXAMPLE_IDS:
            raise BadRequest(f"example must be one of {list(EXAMPLE_IDS)}")
        return jsonify(build_example(example).fixtures.to_json())

    except Exception as e:
        return _error_response(e)


@app.route('/api/download/<filename>', methods=['GET'])
def download_file(filename):
    """Download generated reports and drawings"""
    try:
        extension = os.path.splitext(filename)[1]
        # Security: only files directly inside TMP_DIR with a known extension
        if extension not in MIMETYPES or os.path.basename(filename) != filename:
            return jsonify({'error': 'Invalid file type'}), 400

        file_path = os.path.join(TMP_DIR, filename)

        if not os.path.exists(file_path):
            return jsonify({'error': 'File not found'}), 404

        return send_file(
            file_path,
            mimetype=MIMETYPES[extension],
            as_attachment=True,
            download_name=filename
        )

    except Exception as e:
        print(f'Download error: {e}')
        return jsonify({'error': str(e)}), 500


if __name__ == '__main__':
    port = int(os.environ.get('PORT', 5000))
    app.run(host='0.0.0.0', port=port, debug=True)
