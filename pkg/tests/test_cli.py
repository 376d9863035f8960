import subprocess
import sys

import pytest

from degpart.cli import main
from degpart.degeneracy import parse_partition, validate_partition
from degpart.graph import complete_graph, named_graph, parse_graph, serialize_graph
from degpart.sat import parse_assignment, parse_cnf


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    write("petersen.col", serialize_graph(named_graph("petersen")))
    write("k4.col", serialize_graph(complete_graph(4)))
    write("bowtie.col", serialize_graph(named_graph("bowtie")))
    write("two.cnf", "p cnf 2 1\n1 2 0\n")
    write("four.cnf", "p cnf 4 2\n1 2 3 4 0\n-1 2 -3 4 0\n")
    write("a.txt", "v 1 1\nv 2 0\n")
    write("bad.col", "p edge 2 1\ne 1 1\n")
    write.dir = tmp_path
    return write


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestPartition:
    def test_petersen(self, files, capsys):
        d = files.dir
        code, out, _ = run(["partition", "--graph", str(d / "petersen.col"), "--spec", "1,0", "--counters"], capsys)
        assert code == 0
        assert out.splitlines()[-1].startswith("c ops ")
        part = parse_partition(out, 10)
        assert validate_partition(named_graph("petersen"), part)

    def test_k4(self, files, capsys):
        code, _, err = run(["partition", "--graph", str(files.dir / "k4.col"), "--spec", "1,0"], capsys)
        assert code == 2 and "graph is K_{k+1}" in err

    def test_bound(self, files, capsys):
        code, _, err = run(["partition", "--graph", str(files.dir / "petersen.col"), "--spec", "0,0"], capsys)
        assert code == 2 and "bound violated" in err

    def test_bad_spec(self, files, capsys):
        code, _, _ = run(["partition", "--graph", str(files.dir / "petersen.col"), "--spec", "x"], capsys)
        assert code == 2

    def test_bad_graph_and_missing_file(self, files, capsys):
        assert run(["partition", "--graph", str(files.dir / "bad.col"), "--spec", "1,0"], capsys)[0] == 2
        assert run(["partition", "--graph", str(files.dir / "none.col"), "--spec", "1,0"], capsys)[0] == 2

    def test_usage(self, capsys):
        assert run([], capsys)[0] == 2
        assert run(["partition"], capsys)[0] == 2

    def test_deterministic(self, files, capsys):
        argv = ["partition", "--graph", str(files.dir / "petersen.col"), "--spec", "0,0,0"]
        assert run(argv, capsys)[1] == run(argv, capsys)[1]


class TestValidate:
    def test_pipeline(self, files, capsys):
        d = files.dir
        out = str(d / "p.part")
        assert run(["partition", "--graph", str(d / "petersen.col"), "--spec", "1,0", "--out", out], capsys)[0] == 0
        code, text, _ = run(["validate", "--graph", str(d / "petersen.col"), "--partition", out], capsys)
        assert code == 0 and text.strip() == "valid"

    def test_corrupted(self, files, capsys):
        # bowtie triangle {1, 2, 3} put in the independent-set class
        lines = ["p partition 2 1 0"] + [f"v {v} {2 if v <= 3 else 1}" for v in range(1, 6)]
        path = files("bad.part", "\n".join(lines) + "\n")
        code, out, _ = run(["validate", "--graph", str(files.dir / "bowtie.col"), "--partition", path], capsys)
        assert code == 1 and out.strip() == "class 2 core 1 2 3"


class TestQueries:
    def test_degeneracy(self, files, capsys):
        code, out, _ = run(["degeneracy", "--graph", str(files.dir / "petersen.col")], capsys)
        assert code == 0 and out.splitlines()[0] == "degeneracy 3"
        assert sorted(map(int, out.splitlines()[1].split()[1:])) == list(range(1, 11))

    def test_blocks(self, files, capsys):
        code, out, _ = run(["blocks", "--graph", str(files.dir / "bowtie.col")], capsys)
        lines = out.splitlines()
        assert code == 0 and len(lines[0].split()) == 2 and len(lines) == 3

    def test_eligible_pair(self, files, capsys):
        code, out, _ = run(["eligible-pair", "--graph", str(files.dir / "petersen.col")], capsys)
        x, y = map(int, out.split())
        g = named_graph("petersen")
        assert code == 0 and not g.has_edge(x - 1, y - 1)
        assert run(["eligible-pair", "--graph", str(files.dir / "k4.col")], capsys)[0] == 2


class TestHardness:
    def test_reduce(self, files, capsys):
        out = str(files.dir / "r.cnf")
        assert run(["reduce", "--cnf", str(files.dir / "four.cnf"), "--out", out], capsys)[0] == 0
        f = parse_cnf(open(out).read())
        assert f.num_vars == 8 and sum(1 for c in f.clauses if len(c) == 2) == 8

    def test_reduce_arity(self, files, capsys):
        assert run(["reduce", "--cnf", str(files.dir / "two.cnf")], capsys)[0] == 2

    def test_gadget(self, files, capsys):
        prefix = str(files.dir / "inst")
        code, out, _ = run(["gadget", "--cnf", str(files.dir / "two.cnf"), "--k", "5", "--target", "H",
                            "--out", prefix], capsys)
        assert code == 0 and out.strip() == "n 72 m 166"
        assert parse_graph(open(prefix + ".col").read()).n == 72
        assert open(prefix + ".map").readline().strip() == "p gadgetmap 5 H"

    def test_extend_decode_roundtrip(self, files, capsys):
        d = files.dir
        prefix = str(d / "inst")
        part = str(d / "inst.part")
        assert run(["gadget", "--cnf", str(d / "two.cnf"), "--k", "5", "--target", "H", "--out", prefix], capsys)[0] == 0
        assert run(["extend", "--cnf", str(d / "two.cnf"), "--assignment", str(d / "a.txt"), "--k", "5",
                    "--case", "2", "--out", part], capsys)[0] == 0
        assert run(["validate", "--graph", prefix + ".col", "--partition", part], capsys)[0] == 0
        code, out, _ = run(["decode", "--map", prefix + ".map", "--partition", part, "--case", "2"], capsys)
        assert code == 0 and parse_assignment(out) == {1: True, 2: False}

    def test_extend_unsatisfying(self, files, capsys):
        bad = files("bad.txt", "v 1 1\nv 2 1\n")
        assert run(["extend", "--cnf", str(files.dir / "two.cnf"), "--assignment", bad, "--k", "5",
                    "--case", "2"], capsys)[0] == 2

    def test_extend_bad_case_params(self, files, capsys):
        assert run(["extend", "--cnf", str(files.dir / "two.cnf"), "--assignment", str(files.dir / "a.txt"),
                    "--k", "5", "--case", "3"], capsys)[0] == 2


class TestOracleGenBench:
    def test_oracle(self, files, capsys):
        d = files.dir
        assert run(["oracle", "--graph", str(d / "petersen.col"), "--spec", "1,0"], capsys)[0] == 0
        code, out, _ = run(["oracle", "--graph", str(d / "k4.col"), "--spec", "1,0"], capsys)
        assert code == 1 and "no partition" in out

    def test_oracle_budget(self, files, capsys):
        path = files("p.col", serialize_graph(named_graph("P300")))
        assert run(["oracle", "--graph", path, "--spec", "0,0", "--budget", "50"], capsys)[0] == 3

    def test_gen(self, capsys):
        code, out, _ = run(["gen", "--n", "10", "--k", "3", "--seed", "7"], capsys)
        assert code == 0 and parse_graph(out).degrees() == [3] * 10
        assert run(["gen", "--n", "10", "--k", "3", "--seed", "7"], capsys)[1] == out
        assert parse_graph(run(["gen", "--name", "petersen"], capsys)[1]).m == 15
        assert run(["gen", "--n", "5", "--k", "3"], capsys)[0] == 2
        assert run(["gen"], capsys)[0] == 2

    def test_bench(self, capsys):
        code, out, _ = run(["bench", "--sizes", "64,128,256", "--seed", "1"], capsys)
        rows = out.splitlines()
        assert code == 0 and rows[0] == "n,m,ops,wall_ms" and len(rows) == 4
        ops = [int(r.split(",")[2]) for r in rows[1:]]
        assert ops == sorted(ops)

    @pytest.mark.parametrize("sizes", ["", "128,64", "a"])
    def test_bench_bad_sizes(self, sizes, capsys):
        assert run(["bench", "--sizes", sizes], capsys)[0] == 2


def test_console_script_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "degpart.cli", "degeneracy", "--graph",
                           str(files.dir / "k4.col")], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("degeneracy 3")
