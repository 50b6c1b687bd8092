"""
Tests for the command-line entry point.
"""

import json
import os
from unittest.mock import patch

from src.analysis.classical_cost import describe_seconds
from src.ladder.card import appendix_card, plant_secret, save_card
from src.main import main, EXIT_OK, EXIT_FAILURE, EXIT_USAGE, EXIT_BUDGET
from src.solvers.result import SolveResult
from src.utils.errors import LadderError

DATASET_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'src', 'data', 'datasets')


class TestGenerateAndVerify:
    """Test suite for the generate and verify subcommands."""

    def test_generate(self, tmp_path):
        """Test the 6-bit card."""
        out = tmp_path / "card6.json"
        assert main(["generate", "--k", "6", "--out", str(out)]) == EXIT_OK
        card = json.loads(out.read_text())
        assert card['p'] == '2B'
        assert card['n'] == '1F'

    def test_generate_out_of_range(self):
        """Test a bit-length below the ladder."""
        assert main(["generate", "--k", "5"]) == EXIT_USAGE

    def test_generate_beyond_cap(self):
        """Test a bit-length beyond the counting cap."""
        assert main(["generate", "--k", "96"]) == EXIT_USAGE

    def test_generate_deterministic(self, tmp_path):
        """Test that the same seed writes identical files."""
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        main(["generate", "--k", "6", "--seed", "1", "--out", str(first)])
        main(["generate", "--k", "6", "--seed", "1", "--out", str(second)])
        assert first.read_bytes() == second.read_bytes()

    def test_generate_exhausted_search(self):
        """Test that an exhausted prime or generator search exits with the usage code."""
        with patch('src.main.generate_card', side_effect=LadderError("no generator abscissa found")):
            assert main(["generate", "--k", "6"]) == EXIT_USAGE

    def test_verify_all_appendix(self, capsys):
        """Test every published card."""
        assert main(["verify", "--all-appendix"]) == EXIT_OK
        assert "20/20 cards passed" in capsys.readouterr().out

    def test_verify_json(self, capsys):
        """Test the JSON report."""
        assert main(["verify", "--all-appendix", "--format", "json"]) == EXIT_OK
        reports = json.loads(capsys.readouterr().out)
        assert len(reports) == 20 and all(report['passed'] for report in reports)

    def test_verify_corrupted(self, tmp_path):
        """Test a card whose public key is off the curve."""
        data = appendix_card(6).to_dict()
        data['Qy'] = '08'
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        assert main(["verify", str(path)]) == EXIT_FAILURE

    def test_verify_missing_file(self, tmp_path):
        """Test a path that does not exist."""
        assert main(["verify", str(tmp_path / "missing.json")]) == EXIT_USAGE

    def test_verify_malformed(self, tmp_path):
        """Test a file that is not a card."""
        path = tmp_path / "junk.json"
        path.write_text('{"k": 6}')
        assert main(["verify", str(path)]) == EXIT_USAGE


class TestSolve:
    """Test suite for the solve subcommand."""

    def setup_method(self):
        """Set up the 6-bit published card."""
        self.card = appendix_card(6)

    def _write(self, tmp_path, card):
        path = tmp_path / f"card{card.k}.json"
        save_card(card, str(path))
        return str(path)

    def test_rho(self, tmp_path, capsys):
        """Test rho on the 6-bit card; d and the stats go to stdout."""
        assert main(["solve", self._write(tmp_path, self.card), "--seed", "1"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        stats = json.loads(lines[1])
        assert lines[0] == stats['d']
        assert set(stats) == {'ops', 'dps', 'restarts', 'wall_ms', 'd'}

    def test_brute(self, tmp_path, capsys):
        """Test the brute-force oracle on a planted card."""
        path = self._write(tmp_path, plant_secret(self.card, 7))
        assert main(["solve", path, "--method", "brute"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == '7'

    def test_kangaroo(self, tmp_path, capsys):
        """Test the kangaroo with an interval."""
        path = self._write(tmp_path, plant_secret(appendix_card(16), 0x1234))
        assert main(["solve", path, "--method", "kangaroo", "--lo", "0x1000", "--width", "0x1000"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == '1234'

    def test_methods_agree(self, tmp_path, capsys):
        """Test that brute force and rho return the same secret for the 6-bit card."""
        path = self._write(tmp_path, self.card)
        assert main(["solve", path, "--method", "brute"]) == EXIT_OK
        brute_d = capsys.readouterr().out.splitlines()[0]
        assert main(["solve", path, "--method", "rho", "--seed", "9"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == brute_d

    def test_unverified_result(self, tmp_path):
        """Test that a solver answer failing [d]G = Q is rejected."""
        wrong = SolveResult(d=2, ops=1, dps=0, restarts=0, wall_ms=0)
        with patch('src.main.solve', return_value=wrong):
            path = self._write(tmp_path, plant_secret(self.card, 5))
            assert main(["solve", path]) == EXIT_FAILURE

    def test_kangaroo_needs_interval(self, tmp_path):
        """Test missing interval flags."""
        assert main(["solve", self._write(tmp_path, self.card), "--method", "kangaroo"]) == EXIT_USAGE

    def test_brute_refused(self, tmp_path):
        """Test the brute-force bit limit."""
        assert main(["solve", self._write(tmp_path, appendix_card(48)), "--method", "brute"]) == EXIT_USAGE

    def test_budget_exceeded(self, tmp_path):
        """Test the budget exit code."""
        path = self._write(tmp_path, appendix_card(32))
        assert main(["solve", path, "--seed", "1", "--budget-multiple", "0.0001"]) == EXIT_BUDGET

    def test_unverified_card(self, tmp_path):
        """Test that a card failing verification is not solved."""
        data = self.card.to_dict()
        data['n'] = '25'
        path = tmp_path / "wrong.json"
        path.write_text(json.dumps(data))
        assert main(["solve", str(path)]) == EXIT_FAILURE


class TestShorSample:
    """Test suite for the shor-sample subcommand."""

    def test_sample_to_stdout(self, capsys):
        """Test CSV rows on stdout with the summary on stderr."""
        assert main(["shor-sample", "--n", "31", "--d", "3", "--samples", "10", "--check"]) == EXIT_OK
        captured = capsys.readouterr()
        lines = captured.out.splitlines()
        assert lines[0] == "a,b"
        assert len(lines) == 11
        for line in lines[1:]:
            a, b = map(int, line.split(","))
            assert b == 3 * a % 31
        summary = json.loads(captured.err.strip().splitlines()[-1])
        assert summary['recovered_d'] == '3'
        assert summary['dense_max_deviation'] < 1e-12

    def test_sample_to_file(self, tmp_path, capsys):
        """Test the CSV file with the summary on stdout."""
        out = tmp_path / "samples.csv"
        card = tmp_path / "card.json"
        save_card(appendix_card(6), str(card))
        args = ["shor-sample", "--card", str(card), "--d", "5", "--samples", "4", "--out", str(out)]
        assert main(args) == EXIT_OK
        assert out.read_text().startswith("a,b\n")
        assert json.loads(capsys.readouterr().out)['recovered_d'] == '5'

    def test_invalid_requests(self):
        """Test non-positive sample counts and missing inputs."""
        assert main(["shor-sample", "--n", "31", "--d", "3", "--samples", "0"]) == EXIT_USAGE
        assert main(["shor-sample", "--samples", "5"]) == EXIT_USAGE
        assert main(["shor-sample", "--n", "32", "--d", "3", "--samples", "5"]) == EXIT_USAGE


class TestEstimate:
    """Test suite for the estimate and emit-datasets subcommands."""

    def test_from_dataset(self, capsys):
        """Test published repetition-cat values."""
        assert main(["estimate", "--from-dataset", "--code", "repcat", "--bits", "256"]) == EXIT_OK
        record = json.loads(capsys.readouterr().out)
        assert record['N_phys'] == 126260
        assert record['t'] == '7 h'
        assert record['t_seconds'] == 7 * 3600.0

    def test_surface_dataset(self, capsys):
        """Test a published surface-code row."""
        args = ["estimate", "--from-dataset", "--bits", "6", "--schedule", "low-depth",
                "--hardware", "aggressive"]
        assert main(args) == EXIT_OK
        assert json.loads(capsys.readouterr().out)['time_s'] == 2.73

    def test_model_estimate(self, capsys):
        """Test the cost model on one rung."""
        assert main(["estimate", "--bits", "6", "--schedule", "low-t"]) == EXIT_OK
        record = json.loads(capsys.readouterr().out)
        assert record['N_log'] == 83
        assert record['d_data'] >= 3 and record['d_data'] % 2 == 1
        assert record['time_label'] == describe_seconds(record['t_seconds'])

    def test_invalid_parameters(self):
        """Test p above the threshold and an unknown rung."""
        assert main(["estimate", "--bits", "6", "--p", "0.02"]) == EXIT_USAGE
        assert main(["estimate", "--bits", "7"]) == EXIT_USAGE

    def test_emit(self, tmp_path):
        """Test the estimator series file."""
        out = tmp_path / "estimator.csv"
        assert main(["estimate", "--emit", str(out)]) == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0] == "b,N_phys,t"
        assert len(lines) == 21

    def test_emit_datasets(self, tmp_path):
        """Test that re-emitted tables match the bundled files."""
        assert main(["emit-datasets", "--out", str(tmp_path)]) == EXIT_OK
        for name in os.listdir(DATASET_DIR):
            if name.endswith('.csv'):
                with open(os.path.join(DATASET_DIR, name), 'rb') as file:
                    assert (tmp_path / name).read_bytes() == file.read(), name
        assert (tmp_path / 'classical_curve.csv').exists()
