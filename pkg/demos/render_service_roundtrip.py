"""Start the render service on an ephemeral port and drive it as a client.

This is the same protocol the interactive viewer speaks: POST /render with
a surface, viewpoint, grid, and device; get back segments, stats, and the
observer's region.
"""

import json
import threading
import urllib.request

from horizonplot.service import make_server

server = make_server("127.0.0.1", 0)
threading.Thread(target=server.serve_forever, daemon=True).start()
host, port = server.server_address[:2]
base = f"http://{host}:{port}"
print("service on", base)

with urllib.request.urlopen(f"{base}/surfaces") as resp:
    catalog = json.load(resp)
print("builtins:", ", ".join(s["name"] for s in catalog["surfaces"]))

request = {
    "surface": {"kind": "saddle"},
    "view": [-6, -5, 4],
    "grid": [60, 60],
    "device": [800, 600],
}
req = urllib.request.Request(f"{base}/render", data=json.dumps(request).encode(),
                             headers={"Content-Type": "application/json"})
with urllib.request.urlopen(req) as resp:
    body = json.load(resp)
print(f"region {body['region']}, {body['stats']['segments']} segments "
      f"in {body['stats']['elapsedMs']:.1f} ms")

server.shutdown()
server.server_close()
