import asyncio

from topology_server import classify, closure, read_report_resource, run_suite, z_classify, z_closure


def test_closure_tool():
    result = asyncio.run(closure("Z(4)", "gens=[2]", "dual:gens=[2]"))
    assert result == {"closure": "gens=[2]", "closed": True}


def test_classify_tools():
    assert asyncio.run(classify("Z(2)", "gens=[1]"))["verdicts"]["simple"] is True
    assert asyncio.run(z_classify("tors=all,free=0"))["sc"] is True


def test_z_closure_tool():
    assert asyncio.run(z_closure("tors=2^inf,free=0", 12)) == "4Z"


def test_suite_reports_are_readable_as_resources():
    text = asyncio.run(run_suite("bohr_all_closed", 4))
    assert text.startswith("SUITE bohr_all_closed CHECKED ")
    assert asyncio.run(read_report_resource("bohr_all_closed", "4")) == text
    assert asyncio.run(read_report_resource("bohr_all_closed", "1234")) == "no stored report"
