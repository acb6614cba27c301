"""On-demand bridge generation, compilation, caching and loading.

A dispatch miss lands in instantiate(name, signature). The pair is turned
into a deterministic little source module, compiled out of process into a
hash-checked bytecode file, atomically installed under the plugin root, and
loaded; the module's dynwfa_register(host) entry point then fills the
registries.

Cache layout (root from DYNWFA_PLUGINS, default ~/.dynwfa/plugins):

    <root>/algos/<algorithm>/<encoded signature>.{py,pyc,log}
    <root>/contexts/<encoded context sname>.{py,pyc,log}

A cached .pyc is reused iff its magic number matches this interpreter and
its embedded source hash matches the freshly regenerated source, which
itself embeds a fingerprint of interpreter and compiler configuration; so
toolchain or configuration changes invalidate stale artifacts by content.

Compiler command: DYNWFA_CC (shlex split; default: this interpreter running
dynwfa._plugin_compile) plus DYNWFA_CCFLAGS, then source and output paths.
"""

from __future__ import annotations

import hashlib
import importlib.machinery
import importlib.util
import os
import shlex
import shutil
import subprocess
import sys
import threading

from . import dyn
from .errors import InstantiationError

_STATS = {"compiles": 0, "cache_hits": 0}
_STATS_LOCK = threading.Lock()
_KEY_LOCKS = {}
_KEY_LOCKS_GUARD = threading.Lock()
_FAILED = {}
_LOAD_LOCK = threading.Lock()

_MARKER = "static assertion failed: "


def plugin_root():
    root = os.environ.get("DYNWFA_PLUGINS")
    if root:
        return root
    return os.path.join(os.path.expanduser("~"), ".dynwfa", "plugins")


def compiler_command():
    cc = os.environ.get("DYNWFA_CC")
    if cc:
        cmd = shlex.split(cc)
    else:
        cmd = [sys.executable, "-m", "dynwfa._plugin_compile"]
    flags = os.environ.get("DYNWFA_CCFLAGS")
    if flags:
        cmd.extend(shlex.split(flags))
    return cmd


def host_fingerprint():
    """Identifies interpreter and compiler configuration, for embedding in
    generated sources so configuration changes force recompilation."""
    payload = "\n".join(
        [
            sys.version,
            sys.implementation.name,
            repr(tuple(sys.version_info)),
            importlib.util.MAGIC_NUMBER.hex(),
            shlex.join(compiler_command()),
        ]
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def encode_component(text):
    """Injective mapping to a filesystem-safe name."""
    out = []
    for ch in text:
        if ch.isalnum() or ch in "_-":
            out.append(ch)
        else:
            out.append("%%%02X" % ord(ch))
    return "".join(out)


_ALGO_TEMPLATE = '''"""Generated bridge: {name} for <{sig}>."""

# host-fingerprint: {fingerprint}

from dynwfa import codegen

ALGORITHM = {name_r}
SIGNATURE = (
{sig_lines}
)

codegen.check_preconditions(ALGORITHM, SIGNATURE)
BRIDGE = codegen.monomorphize(ALGORITHM, SIGNATURE)


def dynwfa_register(host):
    host.set(ALGORITHM, SIGNATURE, BRIDGE)
'''

_CONTEXT_TEMPLATE = '''"""Generated context bundle: {sname}."""

# host-fingerprint: {fingerprint}

from dynwfa import codegen

CONTEXT = {sname_r}

codegen.check_context(CONTEXT)


def dynwfa_register(host):
    codegen.register_context_bridges(host, CONTEXT)
'''


def generate_algo_source(name, sig_strings):
    sig_lines = "\n".join("    %r," % s for s in sig_strings)
    return _ALGO_TEMPLATE.format(
        name=name,
        sig=", ".join(sig_strings),
        fingerprint=host_fingerprint(),
        name_r=repr(name),
        sig_lines=sig_lines,
    )


def generate_context_source(sname):
    return _CONTEXT_TEMPLATE.format(
        sname=sname,
        fingerprint=host_fingerprint(),
        sname_r=repr(sname),
    )


class HostServices:
    """What a plugin's dynwfa_register(host) may call back into."""

    @staticmethod
    def intern(text):
        return dyn.intern(text)

    @staticmethod
    def set(name, sig_strings, fn):
        dyn.registry(name).set(dyn.Signature(sig_strings), fn)

    @staticmethod
    def report(report):
        from . import bridges

        bridges.REGISTRATION_REPORTS[report["context"]] = report


def enrich_error(name, sig_strings, cmd, log_text):
    """The uniform failure block: cause, signature, known versions, command."""
    first = "%s: instantiation failed" % name
    for line in (log_text or "").splitlines():
        at = line.find(_MARKER)
        if at >= 0:
            first = "%s: %s" % (name, line[at + len(_MARKER) :])
            break
    lines = [first]
    lines.append("  failed signature:")
    lines.append("    %s" % ", ".join(sig_strings))
    lines.append("  available versions:")
    for known in dyn.registry(name).known():
        lines.append("    %s" % known)
    lines.append("  failed command:")
    lines.append("    %s" % shlex.join(cmd))
    return InstantiationError("\n".join(lines), log=log_text, command=cmd)


def _valid_symbol(text):
    if text.startswith("integral_constant<unsigned, ") and text.endswith(">"):
        return text[len("integral_constant<unsigned, ") : -1].isdigit()
    inner = text
    for prefix in ("mutable_automaton", "expressionset"):
        if text.startswith(prefix + "<") and text.endswith(">"):
            inner = text[len(prefix) + 1 : -1]
            break
    from .algebra import make_valueset
    from .errors import ParseError

    try:
        make_valueset(inner)
    except ParseError:
        return False
    return True


def _key_lock(key):
    with _KEY_LOCKS_GUARD:
        lock = _KEY_LOCKS.get(key)
        if lock is None:
            lock = threading.Lock()
            _KEY_LOCKS[key] = lock
        return lock


def instantiate(name, signature):
    """Make (algorithm, signature) available, compiling it if needed."""
    if isinstance(signature, dyn.Signature):
        sig_strings = [s.text for s in signature]
    else:
        sig_strings = [str(s) for s in signature]
    key = (name, tuple(sig_strings))
    with _key_lock(key):
        cached = _FAILED.get(key)
        if cached is not None:
            raise cached
        try:
            _instantiate_locked(name, sig_strings)
        except InstantiationError as exc:
            _FAILED[key] = exc
            raise


def _instantiate_locked(name, sig_strings):
    from . import bridges

    cmd = compiler_command()
    if name == "make_context":
        sname = sig_strings[0]
        base = os.path.join(
            plugin_root(), "contexts", encode_component(sname)
        )
        source = generate_context_source(sname)
    else:
        if name not in bridges.ALGO_TABLE:
            raise enrich_error(
                name,
                sig_strings,
                cmd,
                _MARKER + "unknown algorithm: %s" % name,
            )
        base = os.path.join(
            plugin_root(),
            "algos",
            encode_component(name),
            encode_component(", ".join(sig_strings)),
        )
        source = generate_algo_source(name, sig_strings)
    for symbol in sig_strings:
        if not _valid_symbol(symbol):
            raise enrich_error(
                name,
                sig_strings,
                cmd,
                _MARKER + "invalid signature component: %s" % symbol,
            )

    src_path = base + ".py"
    pyc_path = base + ".pyc"
    log_path = base + ".log"
    source_bytes = source.encode()

    if _pyc_valid(pyc_path, source_bytes):
        with _STATS_LOCK:
            _STATS["cache_hits"] += 1
        _load(name, base, pyc_path, sig_strings, cmd)
        return

    os.makedirs(os.path.dirname(base), exist_ok=True)
    tmp_src = "%s.%d.py" % (base, os.getpid())
    with open(tmp_src, "w") as f:
        f.write(source)
    os.replace(tmp_src, src_path)

    tmp_pyc = "%s.%d.pyc" % (base, os.getpid())
    full_cmd = cmd + [src_path, tmp_pyc]
    try:
        proc = subprocess.run(
            full_cmd,
            stdout=subprocess.PIPE,
            stderr=subprocess.STDOUT,
            text=True,
            timeout=120,
        )
        output = proc.stdout or ""
        returncode = proc.returncode
    except (OSError, subprocess.SubprocessError) as exc:
        output = str(exc)
        returncode = -1
    _write_log(log_path, output)
    if returncode != 0 or not os.path.exists(tmp_pyc):
        if os.path.exists(tmp_pyc):
            os.unlink(tmp_pyc)
        raise enrich_error(name, sig_strings, full_cmd, output)
    os.replace(tmp_pyc, pyc_path)
    with _STATS_LOCK:
        _STATS["compiles"] += 1
    _load(name, base, pyc_path, sig_strings, cmd)


def _write_log(log_path, output):
    tmp = "%s.%d" % (log_path, os.getpid())
    with open(tmp, "w") as f:
        f.write(output)
    os.replace(tmp, log_path)


def _pyc_valid(pyc_path, source_bytes):
    """A cached artifact is valid iff it was produced by this interpreter
    (magic number) from exactly this source (embedded checked hash)."""
    try:
        with open(pyc_path, "rb") as f:
            header = f.read(16)
    except OSError:
        return False
    if len(header) < 16:
        return False
    if header[:4] != importlib.util.MAGIC_NUMBER:
        return False
    flags = int.from_bytes(header[4:8], "little")
    if not flags & 0x1:
        return False
    return header[8:16] == importlib.util.source_hash(source_bytes)


def _load(name, base, pyc_path, sig_strings, cmd):
    modname = "dynwfa_plugins.%s" % encode_component(os.path.basename(base))
    with _LOAD_LOCK:
        loader = importlib.machinery.SourcelessFileLoader(modname, pyc_path)
        spec = importlib.util.spec_from_loader(modname, loader)
        module = importlib.util.module_from_spec(spec)
        try:
            loader.exec_module(module)
            module.dynwfa_register(HostServices())
        except Exception as exc:
            raise enrich_error(
                name, sig_strings, cmd, "%s%s" % (_MARKER, exc)
            ) from exc


# ---------- cache control ----------


def cache_clear():
    """Remove every generated artifact and forget failure memos."""
    shutil.rmtree(plugin_root(), ignore_errors=True)
    with _KEY_LOCKS_GUARD:
        _FAILED.clear()


def cache_stats():
    root = plugin_root()
    entries = 0
    for dirpath, _, filenames in os.walk(root):
        entries += sum(1 for f in filenames if f.endswith(".pyc"))
    with _STATS_LOCK:
        stats = dict(_STATS)
    stats["entries"] = entries
    stats["root"] = root
    return stats


def reset_stats():
    with _STATS_LOCK:
        _STATS["compiles"] = 0
        _STATS["cache_hits"] = 0
