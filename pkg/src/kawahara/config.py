"""INI-style run configuration (``key = value`` grouped in sections).

Recognised sections and keys::

    [scheme]    scheme, n_modes, dt, t_final, domain_scale, record_every, nonlinearity
    [initial]   profile, amplitude, width, center, path
    [cn]        tol, max_iter
    [converge]  axis, dts, ns, n_ref, reference
    [output]    dir, formats

Values are flattened to ``"section.key"`` so command-line flags can
override them one by one.
"""
import configparser

KEYS = {
    "scheme": ("scheme", "n_modes", "dt", "t_final", "domain_scale", "record_every", "nonlinearity"),
    "initial": ("profile", "amplitude", "width", "center", "path"),
    "cn": ("tol", "max_iter"),
    "converge": ("axis", "dts", "ns", "n_ref", "reference"),
    "output": ("dir", "formats"),
}


class ConfigError(ValueError):
    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")


def load(path):
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
    except configparser.Error as exc:
        raise ConfigError("config", f"malformed file {path}: {exc.message.splitlines()[0]}") from None
    out = {}
    for section in parser.sections():
        if section not in KEYS:
            raise ConfigError(section, "unknown section")
        for key, value in parser.items(section):
            if key not in KEYS[section]:
                raise ConfigError(f"{section}.{key}", "unknown key")
            out[f"{section}.{key}"] = value.strip()
    return out


def as_float(key, value):
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(key, f"expected a number, got {value!r}") from None


def as_int(key, value):
    try:
        f = float(value)
    except (TypeError, ValueError):
        raise ConfigError(key, f"expected an integer, got {value!r}") from None
    if f != int(f):
        raise ConfigError(key, f"expected an integer, got {value!r}")
    return int(f)


def as_switch(key, value):
    v = str(value).strip().lower()
    if v in ("on", "true", "yes", "1"):
        return True
    if v in ("off", "false", "no", "0"):
        return False
    raise ConfigError(key, f"expected on/off, got {value!r}")


def as_list(key, value, conv):
    items = [s for s in str(value).replace(" ", "").split(",") if s]
    if not items:
        raise ConfigError(key, "expected a comma-separated list")
    return [conv(key, s) for s in items]
