"""CSV artifacts.

Column order is fixed, floats are written with 17 significant digits (exact
round trip), lines end in LF, and files appear atomically via a temp file
in the target directory followed by ``os.replace``.
"""
import io
import os
import tempfile

RUN_COLUMNS = ("t", "i1", "i2", "i3", "l2", "cn_iters", "cn_residual")
CONVERGE_COLUMNS = ("param", "error", "observed_order")
SOLITON_COLUMNS = ("t", "l2_error", "crest_position")


def fmt(x):
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    return format(float(x), ".17g")


def atomic_write_text(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(columns, rows):
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def run_rows(record):
    for j in range(len(record.times)):
        yield (record.times[j], record.i1[j], record.i2[j], record.i3[j], record.l2[j],
               int(record.cn_iters[j]), record.cn_residual[j])


def converge_rows(report):
    for p, e, o in zip(report.params, report.errors, report.observed_orders):
        yield (int(p) if report.axis == "spatial" else float(p), e, o)


def soliton_rows(report):
    return zip(report.times, report.l2_errors, report.crest_positions)


def write_run_csv(record, path):
    atomic_write_text(path, csv_text(RUN_COLUMNS, run_rows(record)))


def write_converge_csv(report, path):
    atomic_write_text(path, csv_text(CONVERGE_COLUMNS, converge_rows(report)))


def write_soliton_csv(report, path):
    atomic_write_text(path, csv_text(SOLITON_COLUMNS, soliton_rows(report)))
