"""Command line entry points: lint, checksum, run, replay, serve."""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import barcode as bc
from . import documents, sim, transcript
from .lint import lint
from .model import select_instruction_set
from .session import SessionHost

EXIT_OK = 0
EXIT_LINT_ERRORS = 1
EXIT_PARSE_FAILED = 2
EXIT_SCRIPT_PRECONDITION = 3


@click.group()
def main():
    """Community appliance toolkit."""


@main.command("lint")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def cmd_lint(path: str, fmt: str):
    """Parse and lint a resource document."""
    try:
        resource = documents.parse_resource(Path(path).read_bytes())
    except documents.DocumentError as exc:
        if fmt == "json":
            click.echo(json.dumps({"parseError": {"path": exc.path, "message": exc.message}}))
        else:
            click.echo(f"parse error at {exc.path}: {exc.message}", err=True)
        sys.exit(EXIT_PARSE_FAILED)
    report = lint(resource)
    if fmt == "json":
        click.echo(json.dumps(report.to_json(), ensure_ascii=False, indent=2))
    else:
        for d in report.diagnostics:
            click.echo(f"{d.severity} {d.rule} {d.path}: {d.message}")
    sys.exit(EXIT_OK if report.clean else EXIT_LINT_ERRORS)


@main.command("checksum")
@click.argument("digits")
def cmd_checksum(digits: str):
    """Validate an EAN-13 code, or compute the check digit for 12 digits."""
    if len(digits) == 12 and digits.isdigit():
        click.echo(f"check digit: {bc.compute_check_digit(digits)}")
        sys.exit(EXIT_OK)
    try:
        bc.validate_barcode(digits)
    except bc.BarcodeError as exc:
        click.echo(f"INVALID ({exc})")
        sys.exit(1)
    click.echo("VALID")
    sys.exit(EXIT_OK)


def _pick_set(resource, set_id, ability):
    if set_id is not None:
        for s in resource.instruction_sets:
            if s.id == set_id:
                return s
        raise click.ClickException(f"no instruction set with id {set_id!r}")
    return select_instruction_set(resource, ability)


def _render(host: SessionHost) -> str:
    snap = host.snapshot()
    parts = [
        f"[{snap.phase}]",
        f"instr {snap.instruction_index + 1}/{snap.instruction_count}",
        f"door={'open' if snap.door_open else 'closed'}",
        f"load={snap.load_grams}g",
        f"temp={snap.food_temp_c:.1f}C",
    ]
    if snap.phase in ("Heating", "HeatingPaused"):
        parts.append(f"remaining={snap.remaining_millis / 1000:.0f}s")
    line = " ".join(parts)
    if snap.instruction_text:
        line += f"\n  > {snap.instruction_text}"
    if snap.alerts:
        line += f"\n  ! {snap.alerts[-1]}"
    return line


@main.command("run")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--set", "set_id", default=None, help="instruction set id")
@click.option("--ability", type=int, default=1, help="requested ability level")
@click.option("--script", "script_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--transcript", "transcript_path", type=click.Path(dir_okay=False))
@click.option("--interactive", is_flag=True, default=False)
def cmd_run(path, set_id, ability, script_path, transcript_path, interactive):
    """Execute an instruction set against the simulated appliance."""
    resource = documents.parse_resource(Path(path).read_bytes())
    report = lint(resource)
    if not report.clean:
        for d in report.errors:
            click.echo(f"error {d.rule} {d.path}: {d.message}", err=True)
        sys.exit(EXIT_LINT_ERRORS)
    iset = _pick_set(resource, set_id, ability)
    rec = transcript.Recorder(resource, iset)

    if script_path:
        entries = transcript.parse_script(Path(script_path).read_text("utf-8"))
        try:
            rec.run(entries)
        except sim.PreconditionViolated as exc:
            click.echo(f"precondition violated: {exc}", err=True)
            sys.exit(EXIT_SCRIPT_PRECONDITION)
    elif interactive:
        _interactive_loop(rec)
    else:
        raise click.ClickException("pass --script or --interactive")

    if transcript_path:
        Path(transcript_path).write_text(rec.text(), "utf-8")
    click.echo(f"final phase: {rec.host.state.phase.value}")
    sys.exit(EXIT_OK)


_KEYMAP = {
    "o": {"action": "openDoor"},
    "c": {"action": "closeDoor"},
    "r": {"action": "removeLoad"},
    "y": {"action": "confirm"},
    "a": {"action": "abort"},
}


def _interactive_loop(rec: transcript.Recorder):
    click.echo("keys: o=open c=close p=place r=remove y=confirm a=abort t=+1s q=quit")
    click.echo(_render(rec.host))
    while not rec.host.snapshot().terminal:
        key = click.prompt("", default="", show_default=False).strip().lower()
        if key == "q":
            break
        try:
            if key == "t":
                rec.apply_entry(transcript.ScriptEntry(rec.clock + 1000, None))
            elif key == "p":
                grams = click.prompt("grams", type=int, default=400)
                rec.apply_entry(
                    transcript.ScriptEntry(
                        rec.clock,
                        {"action": "placeLoad", "grams": grams, "initialTempC": 20},
                    )
                )
            elif key in _KEYMAP:
                rec.apply_entry(transcript.ScriptEntry(rec.clock, _KEYMAP[key]))
            else:
                continue
        except sim.PreconditionViolated as exc:
            click.echo(f"cannot do that: {exc}")
            continue
        click.echo(_render(rec.host))


@main.command("replay")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def cmd_replay(path: str):
    """Re-execute a transcript and verify it byte-matches."""
    text = Path(path).read_text("utf-8")
    divergence = transcript.replay(text)
    if divergence is None:
        click.echo("replay ok")
        sys.exit(EXIT_OK)
    click.echo(f"divergence at line {divergence.lineno}:", err=True)
    click.echo(f"  recorded: {divergence.expected}", err=True)
    click.echo(f"  replayed: {divergence.actual}", err=True)
    sys.exit(1)


@main.command("serve")
@click.option("--port", type=int, default=8000, envvar="CSA_PORT")
@click.option("--host", default="127.0.0.1", envvar="CSA_HOST")
@click.option("--data", default="./data", envvar="CSA_DATA_DIR")
@click.option("--time-scale", type=float, default=0.0, envvar="CSA_TIME_SCALE",
              help="wall-clock to virtual-clock ratio; 0 disables the pump")
@click.option("--session-cap", type=int, default=32, envvar="CSA_SESSION_CAP")
@click.option("--idle-expiry", type=float, default=1800.0, envvar="CSA_IDLE_EXPIRY")
def cmd_serve(port, host, data, time_scale, session_cap, idle_expiry):
    """Serve the repository and session API."""
    import uvicorn

    from .service import ServiceConfig, create_app

    config = ServiceConfig(
        data_dir=data,
        session_cap=session_cap,
        idle_expiry_seconds=idle_expiry,
        time_scale=time_scale,
    )
    try:
        app = create_app(config)
        uvicorn.run(app, host=host, port=port, log_level="warning")
    except (OSError, SystemExit) as exc:
        click.echo(f"serve failed: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
