import json

import pytest
from click.testing import CliRunner

from cli import cli, run


@pytest.fixture
def runner():
    return CliRunner()


def test_cut_coproduct_text(runner):
    result = runner.invoke(cli, ['coprod-L', '(AB)'])
    assert result.exit_code == 0
    assert result.output.strip() == '1 ⊗ (AB) + (A) ⊗ (B) + (B) ⊗ (A) + (AB) ⊗ 1'


def test_cut_coproduct_of_a_phrase(runner):
    result = runner.invoke(cli, ['coprod-L', '--stable', 'all', '(AB|C)'])
    assert result.exit_code == 0
    assert '(B|C) ⊗ (A)' in result.output


def test_json_output(runner):
    result = runner.invoke(cli, ['rho-L', 'ABA', '--json'])
    assert result.exit_code == 0
    rows = json.loads(result.output)
    assert {'left': 'B', 'right': 'AA', 'coeff': '1'} in rows
    assert len(rows) == 5


def test_subword_coproduct(runner):
    result = runner.invoke(cli, ['shuffle-S', 'AA'])
    assert result.output.strip() == '~ ⊗ AA + 2 · A ⊗ A + AA ⊗ ~'


def test_inscription_commands(runner):
    result = runner.invoke(cli, ['rho-mu', 'ABACBA'])
    assert result.exit_code == 0
    assert result.output.strip() == 'B ⊗ CBA + AC ⊗ AA + CB ⊗ AB + BACB ⊗ ~'
    result = runner.invoke(cli, ['antipode-mu', '(AA)'])
    assert result.output.strip() == '-(AA) + (~|~)'


def test_action_commands(runner):
    result = runner.invoke(cli, ['act', 'ABACBA', '--indicator', 'fA', '--pairing', 'delta'])
    assert result.output.strip() == '-~ + -AA'
    result = runner.invoke(cli, ['exp-act', 'AB', '--indicator', 'delta:A', '--ring', 'rat'])
    assert result.output.strip() == '-B + AB'
    result = runner.invoke(cli, ['exp-act', 'AB', '--indicator', 'delta:A'])
    assert result.exit_code == 2


def test_star_command(runner):
    result = runner.invoke(cli, ['star', 'fA', 'len', 'ABA'])
    assert result.output.strip() == '6'
    result = runner.invoke(cli, ['star', 'fA', 'len', 'ABA', '--bracket'])
    assert result.output.strip() == '-2'


def test_dual_products(runner):
    result = runner.invoke(cli, ['dual-L', '(A)', '(B)'])
    assert result.output.strip() == '(AB) + (BA) + (A|B) + (B|A)'
    result = runner.invoke(cli, ['dual-mu', '(~)', '(~)', '--alphabet', 'A'])
    assert result.output.strip() == '(AA) + 2 · (~|~)'


def test_dual_mu_alphabet_covers_the_inputs(runner):
    inferred = runner.invoke(cli, ['dual-mu', '(A)', '(B)'])
    declared = runner.invoke(cli, ['dual-mu', '(A)', '(B)', '--alphabet', 'AB'])
    assert inferred.exit_code == 0
    assert inferred.output == declared.output
    result = runner.invoke(cli, ['dual-mu', '(C)', '(~)', '--alphabet', 'AB'])
    assert result.exit_code == 2
    assert 'outside the alphabet' in result.output
    assert runner.invoke(cli, ['dual-mu', '(~)', '(~)']).exit_code == 2


def test_tree_commands(runner):
    result = runner.invoke(cli, ['tree2word', 'A(B,C)'])
    assert result.exit_code == 0
    assert result.output.strip() == 'ABBCCA'
    result = runner.invoke(cli, ['word2tree', 'ABBCCA'])
    assert result.output.strip() == 'A(B,C)'


@pytest.mark.parametrize('args', [
    ['word2tree', 'ABAB'],
    ['coprod-L', '(A|B'],
    ['coprod-L', '(A|~)'],
    ['coprod-L', '(AB)', '--ring', 'mod:1'],
    ['coprod-L', '(ABCDE)', '--max-cut-length', '4'],
    ['rho-L', 'AB', '--stable', 'bogus'],
])
def test_malformed_input_exits_with_two(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == 2


def test_passing_check(runner):
    result = runner.invoke(cli, ['check', '--law', 'coassoc', '--coprod', 'mu', '--max-len', '3'])
    assert result.exit_code == 0
    assert result.output.startswith('PASS coassoc')


def test_randomized_check_records_seed(runner):
    result = runner.invoke(cli, ['check', '--law', 'pre-lie', '--random', '20', '--seed', '5', '--json'])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report['passed'] is True
    assert report['seed'] == 5
    assert report['checked'] == 20


def test_unstable_set_fails_check(runner):
    result = runner.invoke(cli, ['check', '--law', 'pre-lie', '--stable', 'union:divisible:A:2&divisible:B:2'])
    assert result.exit_code == 1
    assert 'FAIL' in result.output


def test_verify_stable(runner):
    assert runner.invoke(cli, ['verify-stable', '--stable', 'divisible:A:2']).exit_code == 0
    result = runner.invoke(cli, ['verify-stable', '--stable', 'union:zero:A&zero:B', '--json'])
    assert result.exit_code == 1
    assert json.loads(result.output)['passed'] is False


def test_tree_oracle_command(runner):
    result = runner.invoke(cli, ['ck-check', '--max-edges', '3', '--max-trees', '2'])
    assert result.exit_code == 0
    assert result.output.startswith('PASS tree-oracle')


def test_run_returns_exit_codes(capsys):
    assert run(['tree2word', 'A(B,C)']) == 0
    assert capsys.readouterr().out.strip() == 'ABBCCA'
    assert run(['word2tree', 'AB']) == 2
    assert run(['no-such-command']) == 2
    assert run(['check', '--law', 'coassoc', '--stable', 'union:zero:A&zero:B']) == 1


def test_multi_character_letters(runner):
    result = runner.invoke(cli, ['rho-L', 'x,yy,x', '--letters', 'x,yy'])
    assert result.exit_code == 0
    assert 'yy ⊗ x,x' in result.output


def test_overlapping_letters_render_unambiguously(runner):
    result = runner.invoke(cli, ['coprod-L', '(A,B)', '--letters', 'A,B,AB'])
    assert result.exit_code == 0
    assert result.output.strip() == '1 ⊗ (A,B) + (A) ⊗ (B) + (B) ⊗ (A) + (A,B) ⊗ 1'
    result = runner.invoke(cli, ['coprod-L', '(AB)', '--letters', 'A,B,AB'])
    assert result.output.strip() == '1 ⊗ (AB) + (AB) ⊗ 1'
