#!/usr/bin/env python3
"""Writes the texture sets, chart templates and map fixture under crates/core/assets."""
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "assets"

VEG = [("carrots", "carrot"), ("celery", "celery"), ("corn", "corn"), ("eggplant", "eggplant"),
       ("mushrooms", "mushroom"), ("olives", "olive"), ("tomatoes", "tomato")]


def tex(kind, density, size, orientation=0.0, background="white", **extra):
    prim = {"kind": kind}
    prim.update(extra)
    return {"primitive": prim, "density": density, "size": size, "orientation_deg": orientation,
            "primitive_rotation_deg": 0.0, "background": background, "randomness": 0.0,
            "phase": [0.0, 0.0], "seed": 0}


def plain(background):
    return tex("plain", 1.0, 1.0, background=background)


def line(o, d, s):
    return tex("line", d, s, o)


def dot(d, s, o=0.0, filled=True):
    return tex("dot", d, s, o, filled=filled)


def grid(d, s, o=0.0, crossing=90.0):
    return tex("grid", d, s, o, crossing_angle_deg=crossing)


def icon(glyph, detail, weight, d, s):
    return tex("icon", d, s, glyph_id=glyph, style={"detail": detail, "weight": weight})


BERTIN = {
    1: ("Hatching by orientation", [line(0, 8, 3), line(45, 8, 3), line(90, 8, 3), line(135, 8, 3),
                                    line(0, 20, 2), line(90, 20, 2), plain("black")]),
    2: ("Value ramp", [plain("white"), dot(5, 1.5), dot(10, 1.5), line(45, 6, 1.5), line(45, 12, 3),
                       grid(6, 1.5), plain("black")]),
    3: ("Mixed primitives", [dot(8, 2), dot(8, 2.5, 45, filled=False), line(0, 8, 2.5), line(90, 8, 2.5),
                             grid(6, 1.5), grid(6, 1.5, 45, 60), plain("black")]),
    4: ("Diagonal spacing", [line(45, 4, 2.5), line(45, 8, 2.5), line(45, 16, 2.5), line(135, 4, 2.5),
                             line(135, 8, 2.5), line(135, 16, 2.5), plain("black")]),
    5: ("Dot grain", [plain("white"), dot(4, 3), dot(8, 2), dot(16, 1), dot(5, 2.5, 45), grid(10, 1),
                      plain("black")]),
}

STYLES = [("detailed", "outline"), ("detailed", "filled"), ("simplified", "outline"), ("simplified", "filled")]


def iconic(detail, weight, d=6.0, s=12.0):
    return [icon(g, detail, weight, d, s) for _, g in VEG]


def write(path, obj):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2) + "\n")


for i, (name, textures) in BERTIN.items():
    write(ROOT / "presets" / f"bertin-{i}.json",
          {"id": f"bertin-{i}", "name": name, "kind": "geometric", "textures": textures})

for detail, weight in STYLES:
    pid = f"icons-{detail}-{weight}"
    write(ROOT / "presets" / f"{pid}.json",
          {"id": pid, "name": f"{detail.capitalize()} {weight} icons", "kind": "iconic",
           "textures": iconic(detail, weight)})


def chart(kind, textures, outline, halo, glyph_ids=None):
    return {
        "kind": kind,
        "categories": [{"name": c, "glyph_id": g, "fill": {"type": "texture", "spec": t}}
                       for (c, g), t in zip(VEG, textures)],
        "outline_width": outline,
        "halo_width": halo,
        "legend": "right",
        "canvas": [600, 400],
    }


TEMPLATES = {
    "BG2-like": ("bar", "geometric",
                 [dot(6, 2), line(45, 6, 2), line(135, 6, 2), grid(5, 1.5), line(0, 12, 4), line(90, 12, 4),
                  plain("black")], 1.0, 0.0),
    "BI1-like": ("bar", "iconic", iconic("simplified", "filled", 7.0, 10.0), 1.0, 0.0),
    "PG1-like": ("pie", "geometric",
                 [line(0, 8, 2.5), line(45, 8, 2.5), line(90, 8, 2.5), line(135, 8, 2.5), dot(8, 2),
                  grid(6, 1.5, 45), plain("black")], 1.0, 2.0),
    "PI1-like": ("pie", "iconic", iconic("detailed", "outline", 6.0, 12.0), 1.0, 2.0),
}

for tid, (kind, fill, textures, outline, halo) in TEMPLATES.items():
    write(ROOT / "templates" / f"{tid}.json",
          {"id": tid, "chart_kind": kind, "fill": fill, "chart": chart(kind, textures, outline, halo)})

MAP = [
    ("carrots", [[0, 0], [110, 0], [95, 70], [0, 80]]),
    ("celery", [[110, 0], [210, 0], [190, 60], [95, 70]]),
    ("corn", [[210, 0], [300, 0], [300, 90], [190, 60]]),
    ("eggplant", [[0, 80], [95, 70], [120, 140], [0, 150]]),
    ("mushrooms", [[95, 70], [190, 60], [200, 130], [120, 140]]),
    ("olives", [[190, 60], [300, 90], [300, 200], [200, 130]]),
    ("tomatoes", [[0, 150], [120, 140], [200, 130], [300, 200], [0, 200]]),
]
write(ROOT / "maps" / "vegetables.json",
      {"regions": [{"category": c, "polygons": [[[float(x), float(y)] for x, y in p]]} for c, p in MAP]})
