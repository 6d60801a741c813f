import copy
import json

import pytest

from vcdcycle import certs
from vcdcycle import cli
from vcdcycle import cycle as cy
from vcdcycle import serialize as ser
from vcdcycle.cosharbly import mu_sign_certificate


@pytest.fixture(scope="module")
def z2_cert():
    z = cy.build_zG(2)
    cert = cy.verify_boundary_zero(z)
    payload = ser.boundary_certificate_to_json(cert, z)
    return certs.make_certificate("boundary", payload, ser.cycle_to_json(z))


def test_boundary_certificate_checks(z2_cert):
    ok, msg = certs.check_certificate(z2_cert)
    assert ok, msg


def test_certificate_schema_fields(z2_cert):
    assert z2_cert["schema_version"] == 1
    assert z2_cert["kind"] == "boundary"
    assert len(z2_cert["input_hash"]) == 64


@pytest.mark.parametrize(
    "mutate",
    [
        lambda c: c["payload"]["terms"][0].__setitem__("coeff", "1/5"),
        lambda c: c["payload"]["accounts"][0]["members"][0]["to_rep"][0].__setitem__(0, 9),
        lambda c: c["payload"]["accounts"][0]["members"][1]["self_witness"][1].__setitem__(1, 7),
        lambda c: c["payload"]["accounts"][0]["members"][0].__setitem__("sign", -1),
        lambda c: c["payload"].__setitem__("residual", [{"rep": [[1, 0]], "total": "1"}]),
        lambda c: c.__setitem__("kind", "unknown"),
        lambda c: c.__setitem__("schema_version", 2),
    ],
)
def test_boundary_certificate_tampering(z2_cert, mutate):
    bad = copy.deepcopy(z2_cert)
    mutate(bad)
    ok, _ = certs.check_certificate(bad)
    assert not ok


def test_positivity_certificate_and_tampering():
    z = cy.build_zG(2)
    cert = mu_sign_certificate(z)
    payload = ser.positivity_certificate_to_json(cert)
    doc = certs.make_certificate("positivity", payload, ser.cycle_to_json(z))
    ok, _ = certs.check_certificate(doc)
    assert ok
    bad = copy.deepcopy(doc)
    bad["payload"]["verdicts"][0]["coeff"] = "-1/6"
    ok, _ = certs.check_certificate(bad)
    assert not ok


def test_cycle_json_roundtrip():
    z = cy.build_zG(3)
    doc = ser.cycle_to_json(z)
    z2 = ser.cycle_from_json(json.loads(json.dumps(doc)))
    assert z2.raw == z.raw
    assert ser.cycle_to_json(z2)["chain"] == doc["chain"]


def test_chain_json_roundtrip():
    from vcdcycle.sharbly import SharblyChain

    c = SharblyChain()
    c.add_symbol([(2, 0), (0, 1)], 3)
    c.add_symbol([(1, 1), (0, 1)], "-2/3")
    doc = ser.chain_to_json(c)
    c2 = ser.chain_from_json(json.loads(json.dumps(doc)))
    assert c2 == c


def test_cli_end_to_end(tmp_path):
    z = tmp_path / "z.json"
    cert = tmp_path / "cert.json"
    mu = tmp_path / "mu.json"
    assert cli.main(["cycle", "build", "--n", "2", "--out", str(z)]) == 0
    assert cli.main(["cycle", "verify", "--in", str(z), "--cert", str(cert)]) == 0
    assert cli.main(["cert", "check", str(cert)]) == 0
    assert cli.main(["cocycle", "certify", "--in", str(z), "--cert", str(mu)]) == 0
    assert cli.main(["cert", "check", str(mu)]) == 0


def test_cli_tamper_detection(tmp_path):
    z = tmp_path / "z.json"
    cert = tmp_path / "cert.json"
    cli.main(["cycle", "build", "--n", "2", "--out", str(z)])
    cli.main(["cycle", "verify", "--in", str(z), "--cert", str(cert)])
    doc = json.loads(cert.read_text())
    doc["payload"]["accounts"][0]["witness"][0][0] += 1
    cert.write_text(json.dumps(doc))
    assert cli.main(["cert", "check", str(cert)]) == 1


def test_cli_forms_and_stabilizer(capsys):
    assert cli.main(["forms", "list", "--n", "4"]) == 0
    out = capsys.readouterr().out
    assert "A4" in out and "D4" in out
    assert cli.main(["tile", "stabilizer", "--form", "A2"]) == 0
    out = capsys.readouterr().out
    assert "order 6" in out


def test_cli_tile_facets_census(capsys, tmp_path):
    cert = tmp_path / "census.json"
    assert cli.main(["tile", "facets", "--form", "A3", "--cert", str(cert)]) == 0
    out = capsys.readouterr().out
    assert "6 facets" in out
    assert cli.main(["cert", "check", str(cert)]) == 0


def test_cli_remark(capsys):
    assert cli.main(["cycle", "remark-an", "--n", "3"]) == 0
    out = capsys.readouterr().out
    assert "vanishes" in out


def test_cli_sharbly_roundtrip(tmp_path, capsys):
    chain = tmp_path / "chain.json"
    chain.write_text(json.dumps([{"vectors": [[2, 0], [0, 1]], "coeff": "2"}]))
    assert cli.main(["sharbly", "canon", "--in", str(chain)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == [{"vectors": [[0, 1], [1, 0]], "coeff": "-2"}]
    deg1 = tmp_path / "deg1.json"
    deg1.write_text(
        json.dumps([{"vectors": [[1, 0], [0, 1], [1, -1]], "coeff": "1"}])
    )
    assert cli.main(["sharbly", "boundary", "--in", str(deg1)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out) == 3
    # boundary of a degree-0 chain is an input error
    assert cli.main(["sharbly", "boundary", "--in", str(chain)]) == 2


def test_cli_bad_input(tmp_path):
    missing = tmp_path / "nope.json"
    assert cli.main(["cycle", "verify", "--in", str(missing), "--cert", "/dev/null"]) == 2
    assert cli.main(["cycle", "build", "--n", "9"]) == 2


def test_cli_budget_exceeded(tmp_path):
    pair = tmp_path / "unused.json"
    del pair
    rc = cli.main(
        [
            "triangulations",
            "enumerate",
            "--form",
            "D5",
            "--facet",
            "0,1,3,4,5,6,7,8,9,11,12,13,14,15,18,19",
            "--budget-nodes",
            "1",
        ]
    )
    assert rc == 3


def test_cli_repro_subset(capsys):
    assert cli.main(["repro", "all", "--skip", "3,5,6,7"]) == 0
    out = capsys.readouterr().out
    assert out.count("pass") >= 4 and "all criteria pass" in out


def test_cli_triangulate_and_enumerate(tmp_path):
    facet = "0,1,2,3,4"
    assert (
        cli.main(
            [
                "triangulate",
                "--form",
                "A3",
                "--facet",
                facet,
                "--out",
                str(tmp_path / "t.json"),
                "--cert",
                str(tmp_path / "tc.json"),
            ]
        )
        == 0
    )
    assert cli.main(["cert", "check", str(tmp_path / "tc.json")]) == 0
    assert (
        cli.main(
            ["triangulations", "enumerate", "--form", "A3", "--facet", facet]
        )
        == 0
    )
