import csv
import io
import json
import textwrap
from fractions import Fraction as F

import pytest

from rscpolar.channel import make_bec, make_bsc, mix
from rscpolar.cli import EXIT_OK, EXIT_PARSE, EXIT_RESOURCE, EXIT_USAGE, main
from rscpolar.errors import AsymmetricChannelError, ParseError, UsageError
from rscpolar.specfile import load_spec, load_spec_text
from rscpolar.verify import SUITES, counting_identity, run_suite


def spec(text):
    return textwrap.dedent(text).lstrip()


# -- spec files --------------------------------------------------------------

def test_bsc_and_bec_specs():
    s = load_spec_text("kind: bsc\neps: 1/10\n")
    assert s.mode == "exact" and s.channel == make_bsc(F(1, 10)) and s.bec_q is None
    s = load_spec_text("kind: bec\nq: 0.5\n")
    assert s.mode == "float" and s.bec_q == 0.5
    assert load_spec_text("kind: bsc\neps: 0\n").mode == "exact"


def test_mixture_spec_nests():
    s = load_spec_text(spec("""
        kind: mixture
        parts:
          - {weight: 1/2, channel: {kind: bsc, eps: 1/8}}
          - weight: 1/2
            channel:
              kind: mixture
              parts:
                - {weight: 1, channel: {kind: bec, q: 1/2}}
    """))
    expected = mix([(F(1, 2), make_bsc(F(1, 8))), (F(1, 2), make_bec(F(1, 2)))])
    assert s.channel == expected and s.bec_q is None


def test_table_spec_symmetric_and_not():
    s = load_spec_text(spec("""
        kind: table
        outputs: [a, b, e]
        p0: [1/2, 0, 1/2]
        p1: [0, 1/2, 1/2]
    """))
    assert s.symmetric and s.channel == make_bec(F(1, 2))
    assert s.table.size == 3
    z = load_spec_text("kind: table\np0: [1, 0]\np1: [1/4, 3/4]\n")
    assert not z.symmetric and z.channel is None
    with pytest.raises(AsymmetricChannelError):
        z.require_symmetric()


@pytest.mark.parametrize("text,line,field", [
    ("kind: bsc\neps: 3/2\n", 2, "spec.eps"),
    ("kind: bsc\nepsilon: 1/2\n", 1, "spec"),
    ("kind: bsd\neps: 1/2\n", 1, "spec.kind"),
    ("kind: bec\nq: abc\n", 2, "spec.q"),
    ("kind: mixture\nparts:\n  - {weight: 1/2, channel: {kind: bsc, eps: 1/8}}\n", 1, "spec.parts"),
    ("kind: table\np0: [1/2, 1/2]\np1: [1]\n", 1, "spec"),
    ("kind: table\np0: [1/2, 1/4]\np1: [1/2, 1/2]\n", 1, "spec.p0"),
    ("kind: mixture\nparts:\n  - weight: 1\n    channel: [1, 2]\n", 4, "spec.parts[0].channel"),
])
def test_parse_errors_carry_line_and_field(text, line, field):
    with pytest.raises(ParseError) as info:
        load_spec_text(text)
    assert info.value.line == line
    assert info.value.field == field


def test_malformed_yaml_reports_a_line():
    with pytest.raises(ParseError) as info:
        load_spec_text("kind: bsc\neps: [1/2\n")
    assert info.value.line is not None
    with pytest.raises(ParseError):
        load_spec_text("")


def test_mixed_number_styles_need_a_forced_mode():
    text = "kind: mixture\nparts:\n  - {weight: 1/2, channel: {kind: bsc, eps: 0.125}}\n" \
           "  - {weight: 1/2, channel: {kind: bsc, eps: 3/8}}\n"
    with pytest.raises(ParseError, match="--exact or --float"):
        load_spec_text(text)
    assert load_spec_text(text, "exact").channel == mix([(F(1, 2), make_bsc(F(1, 8))),
                                                         (F(1, 2), make_bsc(F(3, 8)))])
    assert load_spec_text(text, "float").mode == "float"
    with pytest.raises(UsageError):
        load_spec_text(text, "double")


def test_inline_and_file_sources(tmp_path):
    assert load_spec("bsc:1/10").channel == make_bsc(F(1, 10))
    assert load_spec("bec:0.25").bec_q == 0.25
    path = tmp_path / "w.yaml"
    path.write_text("kind: bsc\neps: 1/4\n")
    assert load_spec(str(path)).channel == make_bsc(F(1, 4))
    with pytest.raises(ParseError):
        load_spec("awgn:1")


# -- command line ------------------------------------------------------------

def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", "bsc:1/10")
    assert code == EXIT_OK
    assert "p_error: 1/10" in out and "components: 1" in out


def test_analyze_table_file(capsys, tmp_path):
    path = tmp_path / "z.yaml"
    path.write_text("kind: table\np0: [1, 0]\np1: [1/4, 3/4]\n")
    code, out, _ = run(capsys, "analyze", str(path))
    assert code == EXIT_OK
    assert "symmetric: no" in out and "outputs: 2" in out


def test_transform_erasure_fast_path(capsys):
    code, out, _ = run(capsys, "transform", "bec:1/2", "0110")
    assert code == EXIT_OK
    assert "erasure channel: E(34911/65536)" in out


def test_transform_bsc(capsys):
    code, out, _ = run(capsys, "transform", "bsc:1/10", "0")
    assert code == EXIT_OK and "1 * B(9/50)" in out


def test_transform_writes_to_file(capsys, tmp_path):
    target = tmp_path / "out.txt"
    code, out, _ = run(capsys, "transform", "bsc:1/10", "1", "--out", str(target))
    assert code == EXIT_OK and out == ""
    assert "B(1/82)" in target.read_text()


def test_construct_frozen_mask(capsys):
    code, out, _ = run(capsys, "construct", "bec:1/2", "--k", "2", "--info", "1")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out.split("\n", 1)[1])))
    assert "".join(r["frozen"] for r in rows) == "1110"


def test_construct_rate_rounds_down_and_json(capsys):
    code, out, _ = run(capsys, "construct", "bsc:0.11", "--k", "3", "--rate", "0.4",
                       "--cap", "16", "--format", "json", "--metric", "z")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert sum(not r["frozen"] for r in doc["records"]) == 3
    assert doc["mode"] == "float"


def test_polarize_noiseless(capsys):
    code, out, _ = run(capsys, "polarize", "bsc:0", "--k", "3")
    assert code == EXIT_OK
    lines = out.strip().split("\n")
    assert lines[1] == "index,capacity,sorted_capacity"
    assert all(float(line.split(",")[1]) == 1.0 for line in lines[2:])
    assert len(lines) == 2 + 8


def test_verify_phi_bounds(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "phi-bounds")
    assert code == EXIT_OK and "checks passed" in out


@pytest.mark.parametrize("argv,code", [
    (("transform", "-", "0"), EXIT_PARSE),
    (("transform", "bsc:2", "0"), EXIT_PARSE),
    (("transform", "bsc:1/10", "012"), EXIT_USAGE),
    (("construct", "bsc:1/10", "--k", "0"), EXIT_USAGE),
    (("construct", "bsc:1/10", "--k", "2", "--info", "9"), EXIT_USAGE),
    (("construct", "bsc:1/10", "--k", "2", "--rate", "3/2"), EXIT_USAGE),
    (("transform", "bsc:1/10", "1111", "--budget", "4"), EXIT_RESOURCE),
])
def test_exit_codes(capsys, monkeypatch, argv, code):
    monkeypatch.setattr("sys.stdin", io.StringIO("kind: [\n"))
    assert run(capsys, *argv)[0] == code


def test_asymmetric_table_cannot_be_transformed(capsys, tmp_path):
    path = tmp_path / "z.yaml"
    path.write_text("kind: table\np0: [1, 0]\np1: [1/4, 3/4]\n")
    code, _, err = run(capsys, "transform", str(path), "0")
    assert code == EXIT_USAGE and "P(eps) == P(1 - eps)" in err


def test_usage_errors_from_argparse(capsys):
    with pytest.raises(SystemExit) as info:
        main(["construct", "bsc:1/10"])
    assert info.value.code == EXIT_USAGE


# -- self-check suites -------------------------------------------------------

@pytest.mark.parametrize("name", [s for s in SUITES if s != "oracle"])
def test_suites_pass(name):
    checks = run_suite(name)
    assert checks and all(c.passed for c in checks), [c.line() for c in checks if not c.passed]


def test_oracle_suite_at_depth_two():
    assert all(c.passed for c in run_suite("oracle", depth=2))


def test_counting_identity_helper():
    assert all(counting_identity(k, a) for k in range(4) for a in range(2**k + 1))
