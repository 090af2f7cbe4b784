import json

import pytest

from cli import build_parser, main, render_text


def run_json(capsys, *argv):
    code = main(list(argv) + ['--format', 'json'])
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestParser:

    def test_verb_required(self):
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args([])
        assert exc.value.code == 2

    def test_algebra_required(self):
        with pytest.raises(SystemExit) as exc:
            main(['roots'])
        assert exc.value.code == 2

    def test_x_accepts_lists(self):
        args = build_parser().parse_args(
            ['mx-dims', '--algebra', 'gl(2|2)', '--lambda', 'e1=0', '--X', 'a+b+c,b'])
        assert args.X == ['a+b+c,b']
        assert args.weight == 'e1=0'


class TestVerbs:

    def test_roots(self, capsys):
        code, payload = run_json(capsys, 'roots', '--algebra', 'sl(2|1)')
        assert code == 0
        assert payload['schema'] == 1
        assert payload['verb'] == 'roots'
        assert payload['isotropic_count'] == 2

    def test_verify(self, capsys):
        code, payload = run_json(capsys, 'verify', '--algebra', 'sl(3)', '--gamma', 'a+b', '--both-methods')
        assert code == 0
        assert payload['verified'] is True
        assert payload['methods_agree'] is True

    def test_square(self, capsys):
        code, payload = run_json(capsys, 'square', '--algebra', 'sl(2|1)', '--gamma', 'a+b')
        assert code == 0
        assert payload['vanishes'] is True

    def test_man(self, capsys):
        code, payload = run_json(capsys, 'man', '--algebra', 'sl(2|1)', '--gamma', 'a+b', '--alpha', 'a',
                                 '--p', '1', '--lambda', 'pairings:a=1,b=0', '--side', 'pin')
        assert code == 0
        assert payload['holds'] is True

    def test_jantzen_sum(self, capsys):
        code, payload = run_json(capsys, 'jantzen-sum', '--algebra', 'sl(2)',
                                 '--lambda', 'pairings:a=2', '--depth', '3')
        assert code == 0
        assert payload['verdict'] == 'pass'
        assert [row['lhs'] for row in payload['rows']] == [0, 0, 1, 1]

    def test_mx_dims(self, capsys):
        code, payload = run_json(capsys, 'mx-dims', '--algebra', 'sl(2|1)',
                                 '--lambda', 'pairings:a=1/3,b=0', '--X', 'b', '--depth', '2')
        assert code == 0
        assert payload['X'] == ['b']

    def test_text_output(self, capsys):
        assert main(['layers', '--algebra', 'sl(2)', '--lambda', 'pairings:a=2', '--depth', '2']) == 0
        out = capsys.readouterr().out
        assert 'verb: layers' in out
        assert 'eta' in out.splitlines()[-4]

    def test_deterministic_json(self, capsys):
        argv = ['layers', '--algebra', 'sl(2)', '--lambda', 'pairings:a=2', '--depth', '3', '--format', 'json']
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        assert capsys.readouterr().out == first


class TestErrors:

    def test_unsupported_algebra(self, capsys):
        code = main(['roots', '--algebra', 'so(5)', '--format', 'json'])
        captured = capsys.readouterr()
        assert code == 2
        assert captured.out == ''
        assert json.loads(captured.err)['error'] == 'UnsupportedFamily'

    def test_precondition(self, capsys):
        code = main(['man', '--algebra', 'sl(2|1)', '--gamma', 'a+b', '--alpha', 'a', '--p', '2',
                     '--lambda', 'pairings:a=1,b=0', '--side', 'pin'])
        assert code == 2
        assert 'PreconditionViolated' in capsys.readouterr().err

    def test_non_generic_sample(self, capsys):
        code = main(['pig', '--algebra', 'gl(2|2)', '--lambda', 'pairings:a=1,b=0,c=1,a+b+c=0',
                     '--gamma', 'a+b+c', '--gamma-prime', 'b', '--depth', '1'])
        assert code == 2


class TestRenderText:

    def test_table_alignment(self):
        text = render_text({'verdict': 'pass', 'rows': [{'eta': [0], 'dim': 1}, {'eta': [10], 'dim': 12}]})
        lines = text.splitlines()
        assert lines[0] == 'verdict: pass'
        assert lines[1] == 'eta   dim'
        assert lines[2] == '[0]   1'
        assert lines[3] == '[10]  12'
