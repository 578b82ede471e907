"""Validate service responses and CLI JSON output against api/schema.

usage: validate_api.py GRADEQ_BINARY REPO_ROOT
Starts `gradeq serve` on a free port, drives a scripted session over HTTP
and checks every body against its schema.
"""

import json
import pathlib
import socket
import subprocess
import sys
import tempfile
import time
import urllib.error
import urllib.request

import jsonschema
from referencing import Registry, Resource

GRADEQ = sys.argv[1]
ROOT = pathlib.Path(sys.argv[2])
SCHEMAS = ROOT / "api" / "schema"

registry = Registry()
for path in sorted(SCHEMAS.glob("*.json")):
    doc = json.loads(path.read_text())
    jsonschema.Draft202012Validator.check_schema(doc)
    registry = registry.with_resource(doc["$id"], Resource.from_contents(doc))

failures = []
checked = 0


def validate(instance, name, where):
    global checked
    uri = "urn:gradeq:schema:" + name
    validator = jsonschema.Draft202012Validator({"$ref": uri}, registry=registry)
    errors = sorted(validator.iter_errors(instance), key=lambda e: list(e.path))
    checked += 1
    if errors:
        failures.append(f"{where}: {errors[0].message} at {list(errors[0].path)}")


def expect(cond, what):
    if not cond:
        failures.append(what)


def free_port():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


PORT = free_port()
BASE = f"http://127.0.0.1:{PORT}"


def call(method, path, body=None, request_schema=None):
    if body is not None and request_schema:
        validate(body, request_schema, f"request {method} {path}")
    data = None if body is None else json.dumps(body).encode()
    req = urllib.request.Request(BASE + path, data=data, method=method)
    req.add_header("Content-Type", "application/json")
    try:
        with urllib.request.urlopen(req, timeout=30) as r:
            status, headers, raw = r.status, r.headers, r.read()
    except urllib.error.HTTPError as e:
        status, headers, raw = e.code, e.headers, e.read()
    expect(headers.get("Access-Control-Allow-Origin") == "*", f"{method} {path}: missing CORS header")
    text = raw.decode()
    payload = json.loads(text) if text and "json" in headers.get("Content-Type", "") else text
    if status >= 400:
        validate(payload, "error", f"{method} {path} -> {status}")
    return status, payload


def cli(*args, stdin=None):
    r = subprocess.run([GRADEQ, *args], input=stdin, capture_output=True, text=True, timeout=60)
    return r.returncode, r.stdout


server = subprocess.Popen([GRADEQ, "serve", "--port", str(PORT)], stdout=subprocess.DEVNULL,
                          stderr=subprocess.DEVNULL)
try:
    for _ in range(100):
        try:
            socket.create_connection(("127.0.0.1", PORT), timeout=0.2).close()
            break
        except OSError:
            time.sleep(0.05)

    fx = ROOT / "fixtures"
    # systems
    status, sys1 = call("POST", "/systems", {"kind": "aut", "text": (fx / "sys1.aut").read_text()}, "system_request")
    expect(status == 201, f"POST /systems sys1 -> {status}")
    validate(sys1, "system", "POST /systems sys1")
    status, sys4 = call("POST", "/systems", {"kind": "pts", "text": (fx / "sys4.pts").read_text()}, "system_request")
    validate(sys4, "system", "POST /systems sys4")
    status, sys3 = call("POST", "/systems", {"kind": "aut", "text": (fx / "sys3.aut").read_text()}, "system_request")
    status, sys2 = call("POST", "/systems",
                        {"kind": "aut", "text": (fx / "sys2.aut").read_text(), "alphabet": ["a", "b", "c"]},
                        "system_request")
    status, got = call("GET", f"/systems/{sys1['system_id']}")
    expect(status == 200 and got == {k: v for k, v in sys1.items() if k != "warnings"},
           "GET /systems/{id} differs from POST response")
    call("POST", "/systems", {"kind": "aut", "text": "nonsense"}, "system_request")

    # determinization
    status, g = call("GET", f"/systems/{sys1['system_id']}/determinization?semantics=trace&seeds=%7B0,2%7D;%7B2,5%7D")
    validate(g, "determinization", "determinization sys1 trace")
    expect(len(g["states"]) == 7, "sys1 trace determinization should have 7 states")
    status, g = call("GET", f"/systems/{sys2['system_id']}/determinization?semantics=failure&seeds=0;1")
    validate(g, "determinization", "determinization sys2 failure")
    status, g = call("GET", f"/systems/{sys4['system_id']}/determinization?semantics=probabilistic-trace&seeds=0;4&max_depth=2")
    validate(g, "determinization", "determinization sys4 partial")
    status, dot = call("GET", f"/systems/{sys1['system_id']}/determinization?semantics=trace&seeds=0&format=dot")
    expect(status == 200 and dot.startswith("digraph"), "dot export")

    # checks: every witness kind
    checks = [
        (sys1, "trace", "{0,2}", "{2,5}", "limit"),
        (sys1, "bisimilarity", 0, 5, "limit"),
        (sys1, "trace", 0, 5, "limit"),
        (sys3, "trace", 0, 4, "limit"),
        (sys3, "failure", 0, 4, "limit"),
        (sys3, "simulation", 0, 4, "limit"),
        (sys3, "bisimilarity", 0, 4, 2),
        (sys4, "probabilistic-trace", 0, 4, 3),
        (sys4, "probabilistic-trace", 0, 1, "limit"),
        (sys1, "trace", 0, 2, "infinite"),
        (sys1, "bisimilarity", 2, 2, "infinite"),
    ]
    kinds = set()
    for system, semantics, left, right, depth in checks:
        body = {"system_id": system["system_id"], "semantics": semantics, "left": left, "right": right,
                "depth": depth}
        status, v = call("POST", "/check", body, "check_request")
        expect(status == 200, f"check {semantics} {left} {right} -> {status}")
        validate(v, "verdict", f"check {semantics} {left} vs {right} at {depth}")
        if isinstance(v, dict) and v.get("witness"):
            kinds.add(v["witness"]["kind"])
    expect({"word", "failure_pair", "move_tree", "simulation_chain", "word_probability"} <= kinds,
           f"witness kinds covered: {sorted(kinds)}")
    call("POST", "/check", {"system_id": sys1["system_id"], "semantics": "trace", "left": 0, "right": 5,
                            "budget": 1}, "check_request")

    # a full trace session played by hand
    start = {"system_id": sys1["system_id"], "semantics": "trace", "left": "{0,2}", "right": "{2,5}", "rounds": 3,
             "human_role": "duplicator"}
    status, snap = call("POST", "/sessions", start, "session_request")
    expect(status == 201, f"POST /sessions -> {status}")
    validate(snap, "session", "new session")
    sid = snap["session_id"]
    moves = [
        {"version": 0, "kind": "duplicator_relation", "payload": "{1} = {3}"},
        {"version": 1, "kind": "duplicator_relation",
         "payload": [{"left": "{1,3}", "right": "{3}", "direction": "="},
                     {"left": "{4,6}", "right": "{4}", "direction": "="}]},
        {"version": 2, "kind": "spoiler_pick", "payload": {"index": 0}},
        {"version": 2, "kind": "request_engine_move", "payload": None},
        {"version": 3, "kind": "request_engine_move", "payload": {"until_finished": True}},
        {"version": 4, "kind": "request_engine_move"},
    ]
    for m in moves:
        status, body = call("POST", f"/sessions/{sid}/move", m, "move_request")
        if status == 200:
            validate(body, "session", f"move {m['kind']} v{m['version']}")
    status, snap = call("GET", f"/sessions/{sid}")
    validate(snap, "session", "finished session")
    expect(snap["phase"] == "finished" and snap["outcome"]["winner"] == "duplicator", "hand session outcome")

    # replay the session transcript
    replay = {"system_id": sys1["system_id"], "semantics": "trace", "left": "{0,2}", "right": "{2,5}", "rounds": 3,
              "human_role": "duplicator", "transcript": snap["transcript"]}
    validate(replay, "replay#/$defs/request", "replay request")
    status, r = call("POST", "/replay", replay)
    validate(r, "replay#/$defs/response", "replay response")
    expect(r.get("identical") is True, "replay of the session transcript is identical")
    tampered = dict(replay, transcript=snap["transcript"][:1] + snap["transcript"][2:])
    status, _ = call("POST", "/replay", tampered)
    expect(status == 422, f"tampered replay -> {status}")

    # engine-only infinite session and a spoiler-role session
    for body in (
        {"system_id": sys3["system_id"], "semantics": "bisimilarity", "left": 0, "right": 4, "rounds": "infinite",
         "human_role": "none"},
        {"system_id": sys4["system_id"], "semantics": "probabilistic-trace", "left": 0, "right": 4, "rounds": None,
         "human_role": "none"},
        {"system_id": sys3["system_id"], "semantics": "simulation", "left": 0, "right": 4, "rounds": 2,
         "human_role": "spoiler"},
    ):
        status, snap = call("POST", "/sessions", body, "session_request")
        validate(snap, "session", f"session {body['semantics']}")
        status, snap = call("POST", f"/sessions/{snap['session_id']}/move",
                            {"version": 0, "kind": "request_engine_move", "payload": {"until_finished": True}},
                            "move_request")
        validate(snap, "session", f"engine-played session {body['semantics']}")

    # error routes
    call("GET", "/sessions/nope")
    call("DELETE", "/systems")
    call("POST", "/check", None)
    status, _ = call("OPTIONS", "/check")
    expect(status == 204, f"OPTIONS -> {status}")

    # CLI --format json
    for semantics, args in [
        ("trace", ["--set", "{0,2}", "--set", "{2,5}"]),
        ("bisimilarity", ["--states", "0", "5"]),
        ("trace", ["--states", "0", "2", "-d", "infinite"]),
    ]:
        code, out = cli("check", str(fx / "sys1.aut"), "-s", semantics, *args, "--format", "json")
        validate(json.loads(out), "verdict", f"cli check sys1 {semantics} {args}")
    for semantics in ["failure", "simulation", "bisimilarity"]:
        code, out = cli("check", str(fx / "sys3.aut"), "-s", semantics, "--states", "0", "4", "--format", "json",
                        "--oracle")
        validate(json.loads(out), "verdict", f"cli check sys3 {semantics}")
    code, out = cli("check", str(fx / "sys4.pts"), "-s", "probabilistic-trace", "--states", "0", "4", "-d", "3",
                    "--format", "json")
    validate(json.loads(out), "verdict", "cli check sys4")
    code, out = cli("determinize", str(fx / "sys2.aut"), "-s", "failure", "--alphabet", "a,b,c", "--states", "0",
                    "1", "--format", "json")
    validate(json.loads(out), "determinization", "cli determinize sys2")
    code, out = cli("oracle", str(fx / "sys4.pts"), "-s", "probabilistic-trace", "--states", "0", "4", "--format",
                    "json")
    validate(json.loads(out), "oracle_report", "cli oracle sys4")

    # a CLI-saved transcript is accepted by the service replay byte-identically
    with tempfile.TemporaryDirectory() as tmp:
        saved_path = pathlib.Path(tmp) / "game.json"
        cli("play", str(fx / "sys1.aut"), "-s", "trace", "--set", "{0,2}", "--set", "{2,5}", "--transcript",
            str(saved_path), stdin=(fx / "play" / "sys1_trace_duplicator.txt").read_text())
        saved = json.loads(saved_path.read_text())
        validate(saved, "replay#/$defs/saved_game", "cli saved transcript")
        status, r = call("POST", "/replay", dict(saved, system_id=sys1["system_id"]))
        expect(status == 200 and r.get("identical") is True, "CLI transcript replays identically over the API")
finally:
    server.terminate()
    server.wait(timeout=10)

for f in failures:
    print("FAIL", f)
print(f"{checked} documents validated, {len(failures)} failures")
sys.exit(1 if failures else 0)
