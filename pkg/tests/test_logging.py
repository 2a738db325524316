"""Log records are stamped with the running subcommand."""

import json
import logging

from tropex.core.logging import CommandFilter, JSONFormatter, setup_logging


def make_record(msg="12 cells"):
    return logging.LogRecord("tropex.tropical.moduli", logging.INFO, __file__, 1, msg, None, None)


def test_json_lines_carry_the_command():
    record = make_record()
    CommandFilter("modspace").filter(record)
    entry = json.loads(JSONFormatter().format(record))
    assert entry["command"] == "modspace"
    assert entry["message"] == "12 cells"
    assert entry["level"] == "INFO"
    assert "thread" in entry


def test_filter_keeps_an_existing_command():
    record = make_record()
    record.command = "secondary"
    CommandFilter("limit").filter(record)
    assert record.command == "secondary"


def test_log_file_gets_text_lines(tmp_path):
    path = tmp_path / "logs" / "run.log"
    root = setup_logging("INFO", log_file=path, use_colors=False, command="xg")
    logging.getLogger("tropex.test").info("realization cone of dimension 2")
    for handler in root.handlers:
        handler.flush()
    text = path.read_text(encoding="utf-8")
    assert "[INFO] xg tropex.test: realization cone of dimension 2" in text
    for handler in list(root.handlers):
        handler.close()
        root.removeHandler(handler)
