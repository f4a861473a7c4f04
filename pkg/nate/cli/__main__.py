from __future__ import annotations

import importlib
import sys
import threading
import types
import typing as t
from pathlib import Path

import pydantic as p

import nate
import nate.lib.cli as click
from nate.core import NateContainer
from nate.core.container import boot_configuration
from nate.model import DeploymentEnvironment

_NateRoot = Path(nate.__file__).resolve().parents[1]

# command modules resolved for this invocation, wired at boot
_wiring: list[types.ModuleType] = []


class NateMultiCommand(click.Group):
    def list_commands(self, ctx: click.Context) -> t.List[str]:
        return ["blame", "check", "diff", "eval", "explain", "extract", "gen", "parse", "slice", "train"]

    def get_command(self, ctx: click.Context, cmd_name: str) -> click.Command | None:
        if cmd_name not in self.list_commands(ctx):
            return None
        mod = importlib.import_module(f"nate.cli.{cmd_name}")
        _wiring.append(mod)
        return getattr(mod, cmd_name)


@click.group(cls=NateMultiCommand)
@click.option("-E", "--env", default=DeploymentEnvironment.Local, type=click.EnumType(DeploymentEnvironment))
@click.option("-c", "--config-root", default=_NateRoot / "config", type=click.URIParamType(dir_ok=True))
@click.option(
    "-o",
    "--override",
    multiple=True,
    help="configuration path parameter-value pairs to override config with, e.g., -o train.epochs=8",
)
@click.option("-D", "--debug", is_flag=True, default=False)
@click.pass_obj
def main(
    ct: NateContainer,
    env: DeploymentEnvironment,
    config_root: p.FileUrl,
    override: tuple[str, ...],
    debug: bool,
):
    """Learn to localize type errors from (ill-typed, fixed) program pairs."""
    NateContainer.boot(
        ct,
        debug=debug,
        env=env,
        config_root=config_root,
        override=override,
        wiring=tuple(_wiring),
    )


def _debugging(ct: NateContainer, args: t.Sequence[str]) -> bool:
    try:
        return boot_configuration(ct).debug
    except RuntimeError:
        # failed before boot finished
        return "-D" in args or "--debug" in args


def execute_command(*_args: str) -> None:
    threading.current_thread().name = "nate-0"
    args = list(_args or sys.argv)

    # Strip away full path to fix program name in help message
    args[0] = Path(args[0]).name
    container = NateContainer()

    try:
        with main.make_context(args[0], args=args[1:]) as ctx:
            ctx.obj = container
            rs = t.cast(int | None, main.invoke(ctx))
            sys.exit(rs or 0)
    except (EOFError, KeyboardInterrupt, click.Abort):
        click.echo("Aborted!", file=sys.stderr)
        sys.exit(1)
    except click.exceptions.Exit as ex:
        sys.exit(ex.exit_code)
    except click.UsageError as ex:
        ex.show(file=sys.stderr)
        sys.exit(ex.exit_code)
    except Exception as ex:
        click.echo(click.style("ERROR ", fg="red"), nl=False, file=sys.stderr)
        click.echo(str(ex), file=sys.stderr)

        if _debugging(container, args[1:]):
            import traceback

            traceback.print_exc()
        if isinstance(ex, click.ClickException):
            sys.exit(ex.exit_code)
        sys.exit(-1)
    finally:
        _wiring.clear()
        container.shutdown_resources()


if __name__ == "__main__":
    execute_command(*sys.argv)
