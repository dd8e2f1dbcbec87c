#!/usr/bin/env python3
"""Regenerate the vegetable glyph artwork under crates/core/assets/glyphs.

Every glyph lives in the unit box (y down) and is a list of closed polygons
filled with the nonzero rule: positive-area contours add ink, negative-area
contours cut holes. Each vegetable is described once as convex parts plus
detail marks; the four styles are derived from that description.
"""

import math
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "assets", "glyphs")
RING = 0.045


def ellipse(cx, cy, rx, ry, n, rot=0.0, start=0.0, end=2 * math.pi):
    pts = []
    full = abs(end - start - 2 * math.pi) < 1e-9
    count = n if full else n + 1
    for i in range(count):
        t = start + (end - start) * i / n
        x, y = rx * math.cos(t), ry * math.sin(t)
        c, s = math.cos(rot), math.sin(rot)
        pts.append((cx + x * c - y * s, cy + x * s + y * c))
    return pts


def rect(x0, y0, x1, y1):
    return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]


def area(poly):
    a = 0.0
    for i in range(len(poly)):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % len(poly)]
        a += x0 * y1 - x1 * y0
    return a / 2


def oriented(poly, positive):
    if (area(poly) > 0) != positive:
        return list(reversed(poly))
    return poly


def inside_convex(poly, p):
    sign = 0
    for i in range(len(poly)):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % len(poly)]
        cross = (x1 - x0) * (p[1] - y0) - (y1 - y0) * (p[0] - x0)
        if abs(cross) < 1e-12:
            continue
        s = 1 if cross > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return False
    return True


def inset_convex(poly, t):
    poly = oriented(poly, True)
    n = len(poly)
    lines = []
    for i in range(n):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % n]
        dx, dy = x1 - x0, y1 - y0
        length = math.hypot(dx, dy)
        if length < 1e-12:
            continue
        # positive area with y down means the interior lies to the left of (dx, dy)
        nx, ny = -dy / length, dx / length
        lines.append(((x0 + nx * t, y0 + ny * t), (dx, dy)))
    out = []
    for i in range(len(lines)):
        (p, d) = lines[i - 1]
        (q, e) = lines[i]
        den = d[0] * e[1] - d[1] * e[0]
        if abs(den) < 1e-12:
            out.append(q)
            continue
        s = ((q[0] - p[0]) * e[1] - (q[1] - p[1]) * e[0]) / den
        out.append((p[0] + d[0] * s, p[1] + d[1] * s))
    if area(out) <= 1e-4 or not all(inside_convex(poly, v) for v in out):
        return None
    return out


def vegetables(fine):
    n = 32 if fine else 12
    v = {}
    v["carrot"] = dict(
        parts=[
            [(0.36, 0.32), (0.64, 0.32), (0.53, 0.93), (0.47, 0.93)],
            [(0.47, 0.33), (0.53, 0.33), (0.52, 0.05), (0.48, 0.05)],
            [(0.43, 0.33), (0.47, 0.31), (0.33, 0.08), (0.29, 0.10)],
            [(0.53, 0.31), (0.57, 0.33), (0.71, 0.10), (0.67, 0.08)],
        ],
        details=[rect(0.42, 0.44, 0.52, 0.465), rect(0.48, 0.58, 0.56, 0.605), rect(0.46, 0.73, 0.52, 0.755)],
    )
    v["celery"] = dict(
        parts=[
            [(0.42, 0.34), (0.58, 0.34), (0.56, 0.95), (0.44, 0.95)],
            ellipse(0.50, 0.18, 0.11, 0.12, n),
            ellipse(0.35, 0.27, 0.10, 0.09, n),
            ellipse(0.65, 0.27, 0.10, 0.09, n),
        ],
        details=[rect(0.468, 0.45, 0.484, 0.90), rect(0.516, 0.45, 0.532, 0.90)],
    )
    kernels = []
    for row in range(6):
        y = 0.24 + row * 0.085
        for col in range(2):
            x = 0.43 + col * 0.1
            kernels.append(rect(x, y, x + 0.04, y + 0.04))
    v["corn"] = dict(
        parts=[
            ellipse(0.50, 0.45, 0.16, 0.34, n),
            [(0.50, 0.95), (0.29, 0.56), (0.36, 0.53), (0.53, 0.86)],
            [(0.50, 0.95), (0.47, 0.86), (0.64, 0.53), (0.71, 0.56)],
        ],
        details=kernels,
    )
    v["eggplant"] = dict(
        parts=[
            ellipse(0.50, 0.60, 0.22, 0.32, n),
            [(0.36, 0.34), (0.50, 0.20), (0.64, 0.34), (0.50, 0.40)],
            rect(0.48, 0.07, 0.52, 0.24),
        ],
        details=[ellipse(0.41, 0.60, 0.03, 0.12, n)],
    )
    v["mushroom"] = dict(
        parts=[
            ellipse(0.50, 0.48, 0.40, 0.34, n, start=math.pi, end=2 * math.pi),
            [(0.40, 0.46), (0.60, 0.46), (0.62, 0.92), (0.38, 0.92)],
        ],
        details=[ellipse(0.35, 0.36, 0.045, 0.04, n), ellipse(0.55, 0.27, 0.05, 0.045, n), ellipse(0.68, 0.40, 0.04, 0.035, n)],
    )
    v["olive"] = dict(
        parts=[
            ellipse(0.48, 0.60, 0.26, 0.31, n),
            ellipse(0.66, 0.22, 0.15, 0.06, n, rot=-0.5),
            rect(0.47, 0.16, 0.51, 0.31),
        ],
        details=[ellipse(0.48, 0.55, 0.08, 0.07, n), ellipse(0.36, 0.72, 0.025, 0.06, n, rot=0.4)],
    )
    calyx = []
    for k in range(5):
        a = -math.pi / 2 + k * 2 * math.pi / 5
        tip = (0.5 + 0.17 * math.cos(a), 0.29 + 0.09 * math.sin(a))
        l = (0.5 + 0.03 * math.cos(a + math.pi / 2), 0.29 + 0.03 * math.sin(a + math.pi / 2))
        r = (0.5 + 0.03 * math.cos(a - math.pi / 2), 0.29 + 0.03 * math.sin(a - math.pi / 2))
        calyx.append([l, tip, r])
    v["tomato"] = dict(
        parts=[ellipse(0.50, 0.59, 0.39, 0.33, n), rect(0.485, 0.10, 0.515, 0.29)] + calyx,
        details=[rect(0.28, 0.50, 0.31, 0.66), rect(0.34, 0.44, 0.37, 0.52)],
    )
    return v


def contours(spec, weight, detailed):
    out = []
    for part in spec["parts"]:
        outer = oriented(part, True)
        out.append(outer)
        if weight == "outline":
            hole = inset_convex(part, RING)
            if hole is not None:
                out.append(oriented(hole, False))
    if detailed:
        for d in spec["details"]:
            # filled artwork cuts details out of the body; outline artwork inks them
            out.append(oriented(d, weight == "outline"))
    return out


def path_data(polys):
    segs = []
    for poly in polys:
        head, *rest = poly
        s = "M%.4f %.4f" % head
        s += "".join(" L%.4f %.4f" % p for p in rest)
        segs.append(s + " Z")
    return " ".join(segs)


def main():
    os.makedirs(OUT, exist_ok=True)
    for detail in ("detailed", "simplified"):
        vegs = vegetables(detail == "detailed")
        for weight in ("outline", "filled"):
            for name, spec in vegs.items():
                d = path_data(contours(spec, weight, detail == "detailed"))
                svg = (
                    '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1 1">'
                    '<path fill-rule="nonzero" d="%s"/></svg>\n' % d
                )
                with open(os.path.join(OUT, "%s-%s-%s.svg" % (name, detail, weight)), "w") as f:
                    f.write(svg)


if __name__ == "__main__":
    main()
