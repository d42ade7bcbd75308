"""A fixed list of CLI invocations over the test data, used for golden and
determinism checks."""

from __future__ import annotations

from pathlib import Path

from bandbrick.cli import run

DATA = Path(__file__).parent / "data"


def suite(out_dir: Path) -> list[list[str]]:
    d = lambda name: str(DATA / name)  # noqa: E731
    cmds = [
        ["check", d("stacked_kronecker.quiver")],
        ["check", d("kronecker3.quiver"), "--format", "table"],
        ["bands", d("stacked_kronecker.quiver"), "--max-len", "6", "--bricks"],
        ["bands", d("local_gentle.quiver"), "--max-len", "8"],
        ["brick", d("stacked_kronecker.quiver"), "--band", "c d-", "--oracle"],
        ["brick", d("stacked_kronecker.quiver"), "--band", "a c d- c d- b-", "--oracle", "--format", "table"],
        ["brick", d("local_gentle.quiver"), "--band", "x y-", "--oracle"],
        ["brick", d("kronecker.quiver"), "--string", "a b- a", "--oracle"],
        ["brick", d("stacked_kronecker.quiver"), "--band", "c c"],
        ["hom", d("stacked_kronecker.quiver"), "--source", "c", "--target", "@2", "--oracle"],
        ["hom", d("stacked_kronecker.quiver"), "--source", "band:a c d- c d- b-", "--target", "band:c d-", "--oracle"],
        ["hom", d("stacked_kronecker.quiver"), "--source", "band:c d-:1:2", "--target", "band:c d-:1:3"],
        ["hom", d("kronecker.quiver"), "--source", "band:a b-:2", "--target", "a b- a", "--oracle"],
        ["tau-finite", d("kronecker.quiver"), "--oracle"],
        ["tau-finite", d("stacked_kronecker.quiver"), "--oracle"],
        ["tau-finite", d("local_gentle.quiver"), "--max-band-len", "8", "--oracle"],
        ["tau-finite", d("linear_a2.quiver")],
        ["tau-finite", d("kronecker3.quiver")],
        ["tau-finite", d("kronecker3.quiver"), "--advisory", "--max-band-len", "2"],
        ["evidence", d("kronecker.quiver"), "--band", "a b-", "--bt1", "3", "--bt2", "1,2,3", "--oracle"],
        ["evidence", d("stacked_kronecker.quiver"), "--band", "c d-", "--bt1", "2", "--bt2", "1,2", "--torsion"],
        ["evidence", d("local_gentle.quiver"), "--band", "x y-", "--torsion"],
        ["evidence", d("kronecker.quiver"), "--band", "a b-", "--bt2", "1,0"],
        ["frob", d("stacked_kronecker.quiver")],
    ]
    for g in ("tree", "triangle", "double_edge", "square", "two_loops", "two_loops_nested", "two_triangles"):
        cmds.append(["brauer", d(f"{g}.bg"), "--cross-check"])
    cmds.append(["brauer", d("double_edge.bg"), "--emit-presentation", str(out_dir / "double_edge.quiver")])
    return cmds


def run_suite(out_dir: Path) -> list[tuple[list[str], int, str, str]]:
    results = []
    for argv in suite(out_dir):
        r = run(argv)
        results.append((argv, r.exit_code, r.stdout, r.stderr))
    for f in sorted(out_dir.iterdir()):
        results.append(([f"file:{f.name}"], 0, f.read_text(), ""))
    return results
