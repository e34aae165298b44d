"""Command-line front end: a thin client over the service layer.

Subcommands mirror the HTTP endpoints (`hom-scan`, `mz`, `invert`,
`sagnac`, plus `serve` to run the HTTP service).  By default requests are
executed in-process through the same handlers the service routes use;
``--server URL`` sends them to a running instance instead.

Options resolve as: command-line flag, then config file (``--config``,
flat ``key = value`` lines keyed by the long flag name), then built-in
default.  CSV output is deterministic, full-precision scientific
notation.  Exit codes: 2 usage, 3 numerical (quadrature), 4 inversion or
calibration failure, 5 geometry.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, TextIO, TypeVar

import httpx
from pydantic import BaseModel, ValidationError

from .service import handlers, schemas
from .service.handlers import ServiceError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_INVERSION = 4
EXIT_GEOMETRY = 5

_CODE_EXITS = {
    "usage": EXIT_USAGE,
    "numerical": EXIT_NUMERICAL,
    "inversion": EXIT_INVERSION,
    "calibration": EXIT_INVERSION,
    "geometry": EXIT_GEOMETRY,
}


class UsageError(Exception):
    pass


def _csv_num(x: float) -> str:
    return f"{x:.17e}"


# --- backends ---------------------------------------------------------------


class LocalBackend:
    """Runs requests in-process through the service handlers."""

    def hom_scan(self, req: schemas.HomScanRequest) -> schemas.HomScanResponse:
        return handlers.run_hom_scan(req)

    def mz(self, req: schemas.MzRequest) -> schemas.MzResponse:
        return handlers.run_mz(req)

    def calibrate(self, req: schemas.CalibrateRequest) -> schemas.CalibrationModel:
        return handlers.run_calibrate(req)

    def invert(self, req: schemas.InvertRequest) -> schemas.InvertResponse:
        return handlers.run_invert(req)

    def sagnac_forward(
        self, req: schemas.SagnacForwardRequest
    ) -> schemas.SagnacForwardResponse:
        return handlers.run_sagnac_forward(req)

    def sagnac_reconstruct(
        self, req: schemas.SagnacReconstructRequest
    ) -> schemas.SagnacReconstructResponse:
        return handlers.run_sagnac_reconstruct(req)


M = TypeVar("M", bound=BaseModel)


class HttpBackend:
    """Sends requests to a running service instance."""

    def __init__(self, base_url: str):
        self.base_url = base_url.rstrip("/")

    def _post(self, path: str, req: BaseModel, response_type: type[M]) -> M:
        reply = httpx.post(
            f"{self.base_url}{path}", json=req.model_dump(mode="json"), timeout=300.0
        )
        if reply.status_code != 200:
            try:
                body = reply.json()
            except ValueError:
                body = {}
            code = body.get("code", "usage")
            message = body.get("message") or str(body.get("detail", reply.text))
            raise ServiceError(code, message)
        return response_type.model_validate(reply.json())

    def hom_scan(self, req: schemas.HomScanRequest) -> schemas.HomScanResponse:
        return self._post("/hom-scan", req, schemas.HomScanResponse)

    def mz(self, req: schemas.MzRequest) -> schemas.MzResponse:
        return self._post("/mz", req, schemas.MzResponse)

    def calibrate(self, req: schemas.CalibrateRequest) -> schemas.CalibrationModel:
        return self._post("/calibrate", req, schemas.CalibrationModel)

    def invert(self, req: schemas.InvertRequest) -> schemas.InvertResponse:
        return self._post("/invert", req, schemas.InvertResponse)

    def sagnac_forward(
        self, req: schemas.SagnacForwardRequest
    ) -> schemas.SagnacForwardResponse:
        return self._post("/sagnac/forward", req, schemas.SagnacForwardResponse)

    def sagnac_reconstruct(
        self, req: schemas.SagnacReconstructRequest
    ) -> schemas.SagnacReconstructResponse:
        return self._post("/sagnac/reconstruct", req, schemas.SagnacReconstructResponse)


# --- config / option resolution ---------------------------------------------


def load_config(path: str) -> dict[str, str]:
    """Flat key = value file; blank lines and # comments ignored."""
    config: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected 'key = value'")
                key, _, value = line.partition("=")
                config[key.strip()] = value.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    return config


class Options:
    """Flag-beats-config-beats-default resolution for one subcommand."""

    def __init__(self, args: argparse.Namespace, config: dict[str, str]):
        self.args = args
        self.config = config

    def get(self, name: str, cast: Callable[[str], object], default=None):
        value = getattr(self.args, name.replace("-", "_"), None)
        source = "flag"
        if value is None:
            if name not in self.config:
                return default
            value = self.config[name]
            source = "config"
        if isinstance(value, str) and cast is not str:
            try:
                return cast(value)
            except UsageError:
                raise
            except (TypeError, ValueError) as exc:
                raise UsageError(f"{source} value {name} = {value!r}: {exc}") from exc
        return value

    def require(self, name: str, cast: Callable[[str], object]):
        value = self.get(name, cast)
        if value is None:
            raise UsageError(f"missing required option --{name}")
        return value

    def flag(self, name: str) -> bool:
        if getattr(self.args, name.replace("-", "_"), False):
            return True
        raw = self.config.get(name, "")
        return raw.lower() in ("1", "true", "yes", "on")


def _floats(text: str, n: int, label: str) -> tuple[float, ...]:
    parts = [p for p in text.split(",") if p.strip() != ""]
    if len(parts) != n:
        raise UsageError(f"{label} needs {n} comma-separated numbers, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"{label}: {exc}") from exc


def _range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"range must be min:max:step, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"range: {exc}") from exc
    if not lo < hi or not step > 0:
        raise UsageError(f"range needs min < max and step > 0, got {text!r}")
    return lo, hi, step


def _load_calibration(path: str) -> schemas.CalibrationModel:
    try:
        with open(path, encoding="utf-8") as fh:
            return schemas.CalibrationModel.model_validate_json(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read calibration file {path}: {exc}") from exc
    except ValidationError as exc:
        raise UsageError(f"bad calibration file {path}: {exc}") from exc


def _write_output(text: str, path: str | None, stdout: TextIO) -> None:
    if path is None:
        stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# --- subcommands --------------------------------------------------------------


def cmd_hom_scan(opts: Options, backend, stdout: TextIO) -> int:
    physical = opts.flag("physical-units")
    bandwidth = opts.get("bandwidth", float)
    if bandwidth is not None and not physical:
        raise UsageError(
            "--bandwidth is only meaningful with --physical-units; in the "
            "default mode delays are in units of the inverse bandwidth"
        )
    spectrum = schemas.SpectrumModel(
        kind=opts.get("spectrum", str, "sinc"),
        center=opts.get("center", float, 0.0),
        bandwidth=bandwidth if physical and bandwidth is not None else 1.0,
    )
    lo, hi, step = opts.require("range", _range)
    try:
        req = schemas.HomScanRequest(
            phi=opts.require("phi", float),
            scan=opts.get("scan", str, "tau0"),
            fixed=opts.get("fixed", float, 0.0),
            start=lo, stop=hi, step=step,
            spectrum=spectrum,
            grid=schemas.GridModel(
                points=opts.get("grid-points", int, 513),
                window=opts.get("window", float, 8.0),
                tolerance=opts.get("quad-tolerance", float, 1e-4),
            ),
        )
    except ValidationError as exc:
        raise UsageError(str(exc)) from exc
    resp = backend.hom_scan(req)
    fmt = opts.get("format", str, "csv")
    if fmt == "csv":
        lines = ["delay,probability,phi,scan_var"]
        for row in resp.rows:
            lines.append(
                f"{_csv_num(row.delay)},{_csv_num(row.probability)},"
                f"{_csv_num(resp.phi)},{resp.scan_var}"
            )
        _write_output("\n".join(lines) + "\n", opts.get("output", str), stdout)
    else:
        lines = [f"scan over {resp.scan_var} at phi = {resp.phi:.12g}"]
        for row in resp.rows:
            lines.append(f"  {row.delay: .6e}  p = {row.probability:.12g}")
        _write_output("\n".join(lines) + "\n", opts.get("output", str), stdout)
    return EXIT_OK


def cmd_mz(opts: Options, backend, stdout: TextIO) -> int:
    p0, p1, p2 = opts.require("phi", lambda s: _floats(s, 3, "--phi"))
    try:
        req = schemas.MzRequest(
            phases=schemas.PhasesModel(phi0=p0, phi1=p1, phi2=p2),
            r0=opts.get("r0", float, 1.0),
            mode=opts.get("mode", str, "closed-form"),
        )
    except ValidationError as exc:
        raise UsageError(str(exc)) from exc
    resp = backend.mz(req)
    fmt = opts.get("format", str, "pretty")
    r = resp.rates
    if fmt == "csv":
        if resp.doubles is None:
            lines = ["r_ac,r_ad,r_ab,r_cd",
                     ",".join(_csv_num(v) for v in (r.r_ac, r.r_ad, r.r_ab, r.r_cd))]
        else:
            d = resp.doubles
            lines = [
                "r_ac,r_ad,r_ab,r_cd,r_aa,r_bb,r_cc,r_dd",
                ",".join(_csv_num(v) for v in (
                    r.r_ac, r.r_ad, r.r_ab, r.r_cd, d.r_aa, d.r_bb, d.r_cc, d.r_dd)),
            ]
    else:
        lines = [
            f"mode = {resp.mode}, r0 = {resp.r0:.12g}",
            f"R_AC = {r.r_ac:.12g}   (= R_BD)",
            f"R_AD = {r.r_ad:.12g}   (= R_BC)",
            f"R_AB = {r.r_ab:.12g}",
            f"R_CD = {r.r_cd:.12g}",
        ]
        if resp.doubles is not None:
            d = resp.doubles
            lines.append(
                f"doubles: R_AA = {d.r_aa:.12g}, R_BB = {d.r_bb:.12g}, "
                f"R_CC = {d.r_cc:.12g}, R_DD = {d.r_dd:.12g}"
            )
    _write_output("\n".join(lines) + "\n", opts.get("output", str), stdout)
    return EXIT_OK


def _parse_rates(opts: Options) -> schemas.RatesModel:
    ac, ad, ab, cd = opts.require(
        "rates", lambda s: _floats(s, 4, "--rates (R_AC,R_AD,R_AB,R_CD)")
    )
    try:
        return schemas.RatesModel(r_ac=ac, r_ad=ad, r_ab=ab, r_cd=cd)
    except ValidationError as exc:
        raise UsageError(str(exc)) from exc


def cmd_invert(opts: Options, backend, stdout: TextIO) -> int:
    rates = _parse_rates(opts)
    calibrate_out = opts.get("calibrate", str)
    if calibrate_out is not None:
        record = backend.calibrate(
            schemas.CalibrateRequest(
                rates=rates, tolerance=opts.get("cal-tolerance", float, 0.01)
            )
        )
        with open(calibrate_out, "w", encoding="utf-8") as fh:
            fh.write(record.model_dump_json(indent=2) + "\n")
        stdout.write(
            f"calibration written to {calibrate_out}: "
            f"r0 = {record.r0_estimate:.12g}, branch = {record.branch}\n"
        )
        return EXIT_OK

    calibration = None
    cal_path = opts.get("calibration", str)
    if cal_path is not None:
        calibration = _load_calibration(cal_path)
    seed = opts.get("seed", lambda s: _floats(s, 3, "--seed"))
    try:
        req = schemas.InvertRequest(
            rates=rates,
            calibration=calibration,
            r0=opts.get("r0", float),
            solve_r0=opts.flag("solve-r0"),
            special_case=opts.flag("special-case"),
            brute_force_check=opts.flag("brute-force-check"),
            grid_step=opts.get("grid-step", float, 0.05),
            seed=(
                schemas.PhasesModel(phi0=seed[0], phi1=seed[1], phi2=seed[2])
                if seed is not None else None
            ),
            residual_tolerance=opts.get("tolerance", float),
        )
    except ValidationError as exc:
        raise UsageError(str(exc)) from exc
    resp = backend.invert(req)

    fmt = opts.get("format", str, "pretty")
    if fmt == "csv":
        lines = [
            "phi0,phi1,phi2,r0,residual,converged",
            ",".join(_csv_num(v) for v in (resp.phi0, resp.phi1, resp.phi2,
                                           resp.r0, resp.residual))
            + f",{str(resp.converged).lower()}",
        ]
    else:
        flag = ["", " (sign ambiguous)"]
        lines = [
            f"phi0 = {resp.phi0: .12g}{flag[resp.sign_ambiguous[0]]}",
            f"phi1 = {resp.phi1: .12g}{flag[resp.sign_ambiguous[1]]}",
            f"phi2 = {resp.phi2: .12g}{flag[resp.sign_ambiguous[2]]}",
            f"r0 = {resp.r0:.12g}",
            f"residual (rms rate mismatch) = {resp.residual:.6g}",
            f"converged = {resp.converged}",
            f"equivalent candidates: {len(resp.candidates)}",
        ]
        if resp.special_case is not None:
            sc = resp.special_case
            lines += [
                "special case (equal within-branch phases):",
                f"  L1 = {sc.lambda1:.12g}, L2 = {sc.lambda2:.12g}",
                f"  phi0 = {sc.phi0:.12g}, phi1 = {sc.phi1:.12g}, "
                f"residual = {sc.residual:.6g}",
            ]
        if resp.brute_force is not None:
            bf = resp.brute_force
            lines += [
                "grid-search check:",
                f"  phi = ({bf.phi0:.9g}, {bf.phi1:.9g}, {bf.phi2:.9g}), "
                f"residual = {bf.residual:.6g}, "
                f"agrees with solver = {bf.agrees_with_solver}",
            ]
    _write_output("\n".join(lines) + "\n", opts.get("output", str), stdout)
    return EXIT_OK if resp.converged else EXIT_INVERSION


def cmd_sagnac(opts: Options, backend, stdout: TextIO) -> int:
    ax, ay, az = opts.require("areas", lambda s: _floats(s, 3, "--areas"))
    try:
        geometry = schemas.GeometryModel(
            area_x=ax, area_y=ay, area_z=az,
            wavelength=opts.require("wavelength", float),
            loop_radius=opts.get("loop-radius", float, 0.0),
        )
    except ValidationError as exc:
        raise UsageError(str(exc)) from exc

    omega = opts.get("omega", lambda s: _floats(s, 3, "--omega"))
    has_rates = (
        getattr(opts.args, "rates", None) is not None or "rates" in opts.config
    )
    if omega is not None and has_rates:
        raise UsageError("give either --omega (forward) or --rates (inverse), not both")
    fmt = opts.get("format", str, "pretty")

    if omega is not None:
        try:
            req = schemas.SagnacForwardRequest(
                geometry=geometry,
                omega=schemas.OmegaModel(
                    omega_x=omega[0], omega_y=omega[1], omega_z=omega[2]
                ),
                r0=opts.get("r0", float, 1.0),
            )
        except ValidationError as exc:
            raise UsageError(str(exc)) from exc
        resp = backend.sagnac_forward(req)
        r = resp.rates
        if fmt == "csv":
            lines = [
                "phi0,phi1,phi2,r_ac,r_ad,r_ab,r_cd",
                ",".join(_csv_num(v) for v in (
                    resp.phases.phi0, resp.phases.phi1, resp.phases.phi2,
                    r.r_ac, r.r_ad, r.r_ab, r.r_cd)),
            ]
        else:
            lines = [
                f"phases: phi0 = {resp.phases.phi0:.12g}, "
                f"phi1 = {resp.phases.phi1:.12g}, phi2 = {resp.phases.phi2:.12g}",
                f"axis phases: x = {resp.axis_phases.omega_x:.12g}, "
                f"y = {resp.axis_phases.omega_y:.12g}, "
                f"z = {resp.axis_phases.omega_z:.12g}",
                f"predicted rates (r0 = {resp.r0:.12g}): "
                f"R_AC = {r.r_ac:.12g}, R_AD = {r.r_ad:.12g}, "
                f"R_AB = {r.r_ab:.12g}, R_CD = {r.r_cd:.12g}",
            ]
        _write_output("\n".join(lines) + "\n", opts.get("output", str), stdout)
        return EXIT_OK

    if not has_rates:
        raise UsageError("sagnac needs --omega (forward) or --rates (inverse)")
    rates = _parse_rates(opts)
    calibration = None
    cal_path = opts.get("calibration", str)
    if cal_path is not None:
        calibration = _load_calibration(cal_path)
    try:
        req = schemas.SagnacReconstructRequest(
            geometry=geometry, rates=rates, calibration=calibration,
            r0=opts.get("r0", float),
            residual_tolerance=opts.get("tolerance", float),
        )
    except ValidationError as exc:
        raise UsageError(str(exc)) from exc
    resp = backend.sagnac_reconstruct(req)
    m = resp.magnitudes
    if fmt == "csv":
        lines = [
            "omega_x,omega_y,omega_z,residual,converged",
            ",".join(_csv_num(v) for v in (
                resp.omega.omega_x, resp.omega.omega_y, resp.omega.omega_z,
                resp.residual))
            + f",{str(resp.converged).lower()}",
        ]
    else:
        def axis_note(i: int) -> str:
            if resp.magnitude_ambiguous[i]:
                return " (magnitude ambiguous between candidates)"
            if resp.direction_ambiguous[i]:
                return " (direction ambiguous)"
            return ""

        lines = [
            f"|omega_x| = {m.omega_x:.12g} rad/s{axis_note(0)}",
            f"|omega_y| = {m.omega_y:.12g} rad/s{axis_note(1)}",
            f"|omega_z| = {m.omega_z:.12g} rad/s{axis_note(2)}",
            f"phases: ({resp.phases.phi0:.12g}, {resp.phases.phi1:.12g}, "
            f"{resp.phases.phi2:.12g})",
            f"residual = {resp.residual:.6g}, converged = {resp.converged}",
            f"consistent rotation candidates: {len(resp.candidates)}",
        ]
        for c in resp.candidates:
            lines.append(
                f"  ({c.omega_x: .9g}, {c.omega_y: .9g}, {c.omega_z: .9g})"
            )
    _write_output("\n".join(lines) + "\n", opts.get("output", str), stdout)
    return EXIT_OK if resp.converged else EXIT_INVERSION


def cmd_serve(opts: Options, stdout: TextIO) -> int:
    import uvicorn

    from .service import create_app

    host = opts.get("host", str, "127.0.0.1")
    port = opts.get("port", int, 8000)
    stdout.write(f"serving on http://{host}:{port}\n")
    uvicorn.run(create_app(), host=host, port=port, log_level="warning")
    return EXIT_OK


# --- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groversim",
        description="Two-photon Grover-four-port interferometry: scans, "
        "coincidence rates, phase retrieval, rotation sensing.",
    )
    parser.add_argument("--config", help="flat key = value config file")
    parser.add_argument("--server", help="base URL of a running service "
                        "(default: run in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hom-scan", help="delay scan of the tunable HOM setup")
    p.add_argument("--phi", type=float, help="interference-tuning phase (rad)")
    p.add_argument("--scan", choices=["tau0", "dtau"], help="swept delay")
    p.add_argument("--fixed", type=float, help="the held delay (default 0)")
    p.add_argument("--range", help="min:max:step for the swept delay")
    p.add_argument("--spectrum", choices=["sinc", "gaussian", "rectangular"])
    p.add_argument("--center", type=float, help="spectrum center frequency")
    p.add_argument("--bandwidth", type=float,
                   help="physical bandwidth (needs --physical-units)")
    p.add_argument("--physical-units", action="store_true",
                   help="delays in seconds, frequencies in rad/s "
                   "(default: units of the inverse bandwidth)")
    p.add_argument("--grid-points", type=int, help="quadrature points (odd)")
    p.add_argument("--window", type=float, help="window half-width in bandwidths")
    p.add_argument("--quad-tolerance", type=float, help="refinement tolerance")
    p.add_argument("--format", choices=["csv", "pretty"])
    p.add_argument("--output", help="write to file instead of stdout")

    p = sub.add_parser("mz", help="coincidence rates of the two-four-port setup")
    p.add_argument("--phi", help="phi0,phi1,phi2 in radians")
    p.add_argument("--r0", type=float, help="source rate scale (default 1)")
    p.add_argument("--mode", choices=["closed-form", "simulate"])
    p.add_argument("--format", choices=["csv", "pretty"])
    p.add_argument("--output")

    p = sub.add_parser("invert", help="recover phases from measured rates")
    p.add_argument("--rates", help="R_AC,R_AD,R_AB,R_CD")
    p.add_argument("--calibration", help="calibration record (JSON file)")
    p.add_argument("--r0", type=float, help="known source scale")
    p.add_argument("--solve-r0", action="store_true",
                   help="treat the source scale as a fourth unknown")
    p.add_argument("--special-case", action="store_true",
                   help="also apply the equal-within-branch-phases solution")
    p.add_argument("--brute-force-check", action="store_true",
                   help="validate the branch against a full grid search")
    p.add_argument("--grid-step", type=float, help="grid step for the check (rad)")
    p.add_argument("--seed", help="phi0,phi1,phi2 starting point (continuity)")
    p.add_argument("--tolerance", type=float, help="residual tolerance")
    p.add_argument("--calibrate", metavar="OUT",
                   help="treat --rates as a zero-phase measurement, write a "
                   "calibration record to OUT, and skip inversion")
    p.add_argument("--cal-tolerance", type=float,
                   help="zero-phase consistency tolerance for --calibrate")
    p.add_argument("--format", choices=["csv", "pretty"])
    p.add_argument("--output")

    p = sub.add_parser("sagnac", help="three-axis rotation sensing")
    p.add_argument("--areas", help="projected loop areas Ax,Ay,Az (m^2)")
    p.add_argument("--wavelength", type=float, help="wavelength (m)")
    p.add_argument("--loop-radius", type=float, help="loop radius (m), optional")
    p.add_argument("--omega", help="rotation rates wx,wy,wz (rad/s): forward mode")
    p.add_argument("--rates", help="measured R_AC,R_AD,R_AB,R_CD: inverse mode")
    p.add_argument("--calibration", help="calibration record (JSON file)")
    p.add_argument("--r0", type=float, help="source scale for rates")
    p.add_argument("--tolerance", type=float, help="residual tolerance")
    p.add_argument("--format", choices=["csv", "pretty"])
    p.add_argument("--output")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host")
    p.add_argument("--port", type=int)

    return parser


def main(argv: list[str] | None = None, stdout: TextIO | None = None) -> int:
    out = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config) if args.config else {}
        opts = Options(args, config)
        backend = HttpBackend(args.server) if args.server else LocalBackend()
        if args.command == "hom-scan":
            return cmd_hom_scan(opts, backend, out)
        if args.command == "mz":
            return cmd_mz(opts, backend, out)
        if args.command == "invert":
            return cmd_invert(opts, backend, out)
        if args.command == "sagnac":
            return cmd_sagnac(opts, backend, out)
        if args.command == "serve":
            return cmd_serve(opts, out)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ServiceError as exc:
        print(f"error ({exc.code}): {exc.message}", file=sys.stderr)
        return _CODE_EXITS.get(exc.code, EXIT_USAGE)
    except httpx.HTTPError as exc:
        print(f"error: cannot reach server: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
