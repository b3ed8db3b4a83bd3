"""Tests for the suspfactor command-line tool"""

import json

import pytest

from execution.suspfactor import EXIT_BOUNDARY, EXIT_PASS, EXIT_USAGE, main


def test_fixtures(capsys):
    assert main(['--quiet', 'fixtures', '--example', '3']) == EXIT_PASS
    data = json.loads(capsys.readouterr().out)
    assert data['coincidences'] == 'empty'
    assert len(data['g_values']) == 2


def test_invalid_example_is_a_usage_error():
    with pytest.raises(SystemExit) as e:
        main(['verify', '--example', '9'])
    assert e.value.code == EXIT_USAGE


def test_negative_radius_is_a_usage_error():
    with pytest.raises(SystemExit) as e:
        main(['witness', '--example', '1', '--radius', '-1'])
    assert e.value.code == EXIT_USAGE


def test_verify_writes_report(tmp_path, capsys):
    out = tmp_path / 'report.json'
    code = main(['verify', '--example', '1', '--samples', '10', '--max-radius', '1', '--out', str(out)])
    assert code == EXIT_PASS
    report = json.loads(out.read_text())
    assert report['status'] == 'pass'
    assert report['seed'] == 7
    assert 'duration_seconds' not in report
    err = capsys.readouterr().err
    assert '✓ Example 1: pass' in err


def test_verify_is_byte_identical(tmp_path):
    paths = [tmp_path / 'a.json', tmp_path / 'b.json']
    for path in paths:
        main(['--quiet', 'verify', '--example', '4', '--samples', '10', '--max-radius', '1',
              '--out', str(path)])
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_verify_timing(capsys):
    assert main(['--quiet', 'verify', '--example', '3', '--samples', '5', '--max-radius', '0',
                 '--timing']) == EXIT_PASS
    assert 'duration_seconds' in json.loads(capsys.readouterr().out)


def test_verify_pdf(tmp_path):
    pdf = tmp_path / 'report.pdf'
    assert main(['--quiet', 'verify', '--example', '2', '--samples', '5', '--max-radius', '0',
                 '--out', str(tmp_path / 'r.json'), '--pdf', str(pdf)]) == EXIT_PASS
    assert pdf.read_bytes().startswith(b'%PDF')


def test_witness_none_for_split_code(capsys):
    assert main(['witness', '--example', '4', '--radius', '1', '--probes', '10']) == EXIT_PASS
    captured = capsys.readouterr()
    assert json.loads(captured.out)['results']['witness'] is None
    assert 'none' in captured.err


def test_witness_found_for_identity_code(capsys):
    assert main(['--quiet', 'witness', '--example', '1', '--radius', '0']) == EXIT_PASS
    witness = json.loads(capsys.readouterr().out)['results']['witness']
    assert witness['radius'] == 0 and len(witness['word']) == 1


def test_lengths(capsys):
    assert main(['--quiet', 'lengths', '--example', '3', '--bound', '1']) == EXIT_PASS
    assert json.loads(capsys.readouterr().out)['results']['coincidences'] == []


def test_render_text(capsys):
    assert main(['--quiet', 'render', '--example', '4', '--rho', '1/7', '--s', '0',
                 '--L', '3', '--format', 'text']) == EXIT_PASS
    text = capsys.readouterr().out
    assert 'source:' in text and 'image:' in text
    assert '*' in text


def test_render_json(capsys):
    assert main(['--quiet', 'render', '--example', '1', '--rho', '1/7', '--format', 'json']) == EXIT_PASS
    data = json.loads(capsys.readouterr().out)
    assert all(len(t['length']) == 4 for t in data['source']['tiles'])


def test_render_svg(tmp_path):
    out = tmp_path / 'patch.svg'
    assert main(['--quiet', 'render', '--example', '4', '--rho', '1/7', '--format', 'svg',
                 '--out', str(out)]) == EXIT_PASS
    assert '<svg' in out.read_text()


def test_render_boundary_orbit():
    assert main(['--quiet', 'render', '--example', '1', '--rho', '0']) == EXIT_BOUNDARY


def test_render_pdf_needs_out():
    assert main(['--quiet', 'render', '--example', '4', '--rho', '1/7', '--format', 'pdf']) == EXIT_USAGE


def test_bad_precision_setting(monkeypatch):
    monkeypatch.setenv('SUSPFACTOR_PRECISION', 'coarse')
    assert main(['--quiet', 'fixtures', '--example', '1']) == EXIT_USAGE


def test_quiet_keeps_stderr_empty(capsys):
    main(['--quiet', 'lengths', '--example', '3', '--bound', '1'])
    assert capsys.readouterr().err == ''
