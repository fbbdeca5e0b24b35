from database import read_log, read_report, write_log, write_report


def test_logs_come_back_oldest_first():
    for i in range(3):
        write_log("Tester", "info", f"message {i}")
    entries = read_log("tester", last_n=2)
    assert [message for _, _, message in entries] == ["message 1", "message 2"]
    assert all(kind == "info" for _, kind, _ in entries)


def test_reports_are_upserted():
    write_report("closure_formula", 2, {"instances_checked": 1})
    write_report("closure_formula", 2, {"instances_checked": 7})
    assert read_report("closure_formula", 2) == {"instances_checked": 7}
    assert read_report("closure_formula", 5) is None
