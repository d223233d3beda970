"""Thin command-line client for the computation service.

Every subcommand builds a JSON request and sends it over HTTP: to a remote
server when --server (or QPBW_SERVER) is set, otherwise to an in-process
instance of the same application through an ASGI transport.  Exit codes:
0 success, 1 verification failures, 2 usage errors.
"""

from __future__ import annotations

import asyncio
import json
import sys

import click
import httpx

SERVER_ENVVAR = "QPBW_SERVER"


def _post(server: str | None, path: str, payload: dict) -> tuple[int, dict]:
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            response = client.post(path, json=payload)
            return response.status_code, response.json()

    async def in_process():
        from .service import create_app

        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://qpbw.internal", timeout=600.0
        ) as client:
            response = await client.post(path, json=payload)
            return response.status_code, response.json()

    return asyncio.run(in_process())


def _fail_usage(body: dict) -> None:
    detail = body.get("detail", body)
    if isinstance(detail, list):  # request validation report
        detail = "; ".join(
            f"{'.'.join(str(p) for p in item.get('loc', []))}: {item.get('msg', '')}"
            for item in detail
        )
    elif isinstance(detail, dict):
        detail = detail.get("error", detail)
    click.echo(f"error: {detail}", err=True)
    sys.exit(2)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _render_report_text(report: dict) -> str:
    header = f"suite {report['suite']}  n={report['n']} flavor={report['flavor']}"
    if report.get("ell") is not None:
        header += f" ell={report['ell']}"
    lines = [header]
    for record in report["checks"]:
        line = f"  [{record['status']}] {record['name']} ({record['paper_ref']})"
        if record["status"] == "fail" and record.get("witness"):
            line += f"\n         witness: {record['witness']}"
        lines.append(line)
    summary = report["summary"]
    lines.append(f"  {summary['pass']} passed, {summary['fail']} failed")
    return "\n".join(lines) + "\n"


server_option = click.option(
    "--server",
    envvar=SERVER_ENVVAR,
    default=None,
    help="Remote service URL; defaults to an in-process instance.",
)
format_option = click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text"
)
output_option = click.option("--output", "-o", default=None, help="Write to a file.")


@click.group()
def main() -> None:
    """Exact normal forms and identity verification for the triangular
    matrix presentations of quantum gl_n / sl_n."""


@main.command()
@click.option("--n", required=True, type=int)
@click.option("--flavor", type=click.Choice(["gl", "sl", "qmatrix"]), default="gl")
@server_option
@format_option
@output_option
def present(n, flavor, server, fmt, output):
    """Emit the presentation document (generators, relations, rules)."""
    status, body = _post(server, "/present", {"n": n, "flavor": flavor})
    if status != 200:
        _fail_usage(body)
    if fmt == "json":
        _emit(json.dumps(body, indent=2) + "\n", output)
    else:
        lines = [f"{flavor} presentation, n={n}"]
        lines.append("generators: " + " ".join(body["generators"]))
        lines.append(f"rules ({len(body['rules'])}):")
        lines += [f"  {r['lhs']} -> {r['rhs']}" for r in body["rules"]]
        _emit("\n".join(lines) + "\n", output)


@main.command()
@click.option("--n", required=True, type=int)
@click.option("--flavor", type=click.Choice(["gl", "sl"]), default="gl")
@click.option("--input-file", default=None, help="Read the expression from a file.")
@click.argument("expression", required=False)
@server_option
@format_option
@output_option
def nf(n, flavor, input_file, expression, server, fmt, output):
    """Reduce an expression to its normal form."""
    if (expression is None) == (input_file is None):
        click.echo("error: provide exactly one of EXPRESSION or --input-file", err=True)
        sys.exit(2)
    if input_file:
        with open(input_file, encoding="utf-8") as fh:
            expression = fh.read().strip()
    status, body = _post(
        server, "/nf", {"n": n, "flavor": flavor, "expression": expression}
    )
    if status != 200:
        _fail_usage(body)
    if fmt == "json":
        _emit(json.dumps(body, indent=2) + "\n", output)
    else:
        _emit(body["normal_form"] + "\n", output)


def _run_verify(suite, n, flavor, ell, deterministic, server, fmt, output):
    payload = {
        "suite": suite,
        "n": n,
        "flavor": flavor,
        "ell": ell,
        "deterministic": deterministic,
    }
    status, body = _post(server, "/verify", payload)
    if status != 200:
        _fail_usage(body)
    if fmt == "json":
        _emit(json.dumps(body, indent=2) + "\n", output)
    else:
        _emit(_render_report_text(body), output)
    sys.exit(0 if body["summary"]["fail"] == 0 else 1)


@main.command()
@click.option("--suite", required=True)
@click.option("--n", required=True, type=int)
@click.option("--flavor", type=click.Choice(["gl", "sl"]), default="gl")
@click.option("--ell", type=int, default=None)
@click.option("--deterministic", is_flag=True, default=False)
@server_option
@format_option
@output_option
def verify(suite, n, flavor, ell, deterministic, server, fmt, output):
    """Run a verification suite; exit 0 only if every check passes."""
    _run_verify(suite, n, flavor, ell, deterministic, server, fmt, output)


@main.command()
@click.option("--n", required=True, type=int)
@click.option("--flavor", type=click.Choice(["gl", "sl"]), default="gl")
@click.option("--deterministic", is_flag=True, default=False)
@server_option
@format_option
@output_option
def poisson(n, flavor, deterministic, server, fmt, output):
    """Verify the semiclassical bracket tables (alias for verify --suite poisson)."""
    _run_verify("poisson", n, flavor, None, deterministic, server, fmt, output)


@main.command()
@click.option("--n", required=True, type=int)
@click.option("--ell", required=True, type=int)
@click.option("--flavor", type=click.Choice(["gl", "sl"]), default="gl")
@click.option("--deterministic", is_flag=True, default=False)
@server_option
@format_option
@output_option
def frobenius(n, ell, flavor, deterministic, server, fmt, output):
    """Verify the ell-th power embedding at a root of unity."""
    _run_verify("frobenius", n, flavor, ell, deterministic, server, fmt, output)


@main.command()
@click.option("--n", required=True, type=int)
@click.option(
    "--what",
    type=click.Choice(["derived", "rootvectors", "loperators"]),
    default="derived",
)
@server_option
@output_option
def export(n, what, server, output):
    """Export derived-element tables as JSON."""
    status, body = _post(server, "/export", {"n": n, "what": what})
    if status != 200:
        _fail_usage(body)
    _emit(json.dumps(body, indent=2) + "\n", output)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
def serve(host, port):
    """Run the computation service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
